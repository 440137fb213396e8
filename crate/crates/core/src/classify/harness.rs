//! Randomized checks of the monomial-count lemmas on instances built to
//! satisfy each lemma's hypotheses.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactnum::{rat, Rational};
use crate::poly::{ExponentVector, Polynomial, SignatureLinearForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lemma {
    /// `n((b.x)^m A) >= sum_i n_i(A)`.
    L3_1,
    /// `n((b.x)^m Q) >= 2k - 1` for `m >= 2`, `Q` with nonnegative coefficients.
    L3_2,
    /// `n(L Q) >= 3r - 1` and `>= 9` at `r = 3`, `Q` nonnegative with `n(Q) >= 2`.
    L3_3,
    /// `n((b.x)^m (a.x)) >= 2k - 1` for `m >= 2`, `>= 2k - 2` for `m = 1`, `n(a.x) >= 2`.
    L3_5,
}

impl Lemma {
    pub fn all() -> [Lemma; 4] {
        [Lemma::L3_1, Lemma::L3_2, Lemma::L3_3, Lemma::L3_5]
    }

    pub fn name(&self) -> &'static str {
        match self {
            Lemma::L3_1 => "3.1",
            Lemma::L3_2 => "3.2",
            Lemma::L3_3 => "3.3",
            Lemma::L3_5 => "3.5",
        }
    }

    pub fn from_name(name: &str) -> Option<Lemma> {
        Lemma::all().into_iter().find(|l| l.name() == name || format!("L{}", l.name().replace('.', "_")) == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HarnessBounds {
    /// Variables `k` range over `2..=max_vars`; for Lemma 3.3, `r` over `2..=max_half`.
    pub max_vars: usize,
    pub max_half: usize,
    pub max_degree: u32,
    pub max_power: u32,
    pub max_terms: usize,
}

impl Default for HarnessBounds {
    fn default() -> Self {
        HarnessBounds {
            max_vars: 4,
            max_half: 3,
            max_degree: 4,
            max_power: 3,
            max_terms: 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub trial: usize,
    pub instance: String,
    pub monomials: usize,
    pub bound: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarnessReport {
    pub lemma: Lemma,
    pub trials: usize,
    pub seed: u64,
    pub violations: Vec<Violation>,
    /// Smallest `n(P) - bound` seen; zero means some instance was tight.
    pub min_slack: Option<usize>,
    /// Lemma 3.3 only: instances at `r = 3` and the least `n(P)` among them.
    pub r3_instances: usize,
    pub r3_min_monomials: Option<usize>,
    /// Instances per lemma clause, e.g. `m = 1` and `m >= 2`.
    pub clause_counts: BTreeMap<&'static str, usize>,
}

impl HarnessReport {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "lemma": self.lemma.name(),
            "trials": self.trials,
            "seed": self.seed,
            "violations": self.violations.iter().map(|v| serde_json::json!({
                "trial": v.trial,
                "instance": v.instance,
                "monomials": v.monomials,
                "bound": v.bound,
            })).collect::<Vec<_>>(),
            "min_slack": self.min_slack,
            "r3_instances": self.r3_instances,
            "r3_min_monomials": self.r3_min_monomials,
            "clause_counts": self.clause_counts,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "Lemma {}: {} trials, seed {}, {} violations",
            self.lemma.name(),
            self.trials,
            self.seed,
            self.violations.len()
        );
        if let Some(slack) = self.min_slack {
            out += &format!(", min slack {slack}");
        }
        for (clause, n) in &self.clause_counts {
            out += &format!("\n  {clause}: {n} instances");
        }
        if self.r3_instances > 0 {
            out += &format!("\n  r = 3: {} instances, least n(P) {:?}", self.r3_instances, self.r3_min_monomials);
        }
        for v in &self.violations {
            out += &format!("\n  trial {}: n = {} < {} for {}", v.trial, v.monomials, v.bound, v.instance);
        }
        out
    }
}

type P = Polynomial<Rational>;

/// `{1..9}/{1..4}`, negated with probability 1/2 when `signed`.
fn coeff(rng: &mut ChaCha8Rng, signed: bool) -> Rational {
    let q = rat(rng.random_range(1..=9), rng.random_range(1..=4));
    if signed && rng.random_bool(0.5) {
        -q
    } else {
        q
    }
}

fn linear(rng: &mut ChaCha8Rng, k: usize, signed: bool) -> P {
    P::from_terms(k, (0..k).map(|i| (ExponentVector::unit(k, i), coeff(rng, signed))))
}

/// Random polynomial with at least two terms; homogeneous of a random degree
/// when `homogeneous`, otherwise of mixed degrees up to `max_degree`.
fn random_poly(rng: &mut ChaCha8Rng, k: usize, b: &HarnessBounds, signed: bool, homogeneous: bool) -> P {
    let degree = rng.random_range(1..=b.max_degree);
    let pool: Vec<ExponentVector> = if homogeneous {
        ExponentVector::all_of_degree(k, degree)
    } else {
        (0..=degree).flat_map(|d| ExponentVector::all_of_degree(k, d)).collect()
    };
    let want = rng.random_range(2..=b.max_terms).min(pool.len());
    loop {
        let mut terms = Vec::new();
        for _ in 0..want {
            let e = pool[rng.random_range(0..pool.len())].clone();
            terms.push((e, coeff(rng, signed)));
        }
        let p = P::from_terms(k, terms);
        if p.count_monomials() >= 2.min(pool.len()) {
            return p;
        }
    }
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Runs `trials` seeded instances; each trial uses its own RNG stream so
/// results do not depend on execution order.
pub fn lemma_harness(lemma: Lemma, trials: usize, seed: u64, bounds: &HarnessBounds) -> HarnessReport {
    let mut report = HarnessReport {
        lemma,
        trials,
        seed,
        violations: Vec::new(),
        min_slack: None,
        r3_instances: 0,
        r3_min_monomials: None,
        clause_counts: BTreeMap::new(),
    };
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let checks = run_trial(lemma, &mut rng, bounds, &mut report);
        for (instance, n, bound) in checks {
            if n < bound {
                report.violations.push(Violation {
                    trial,
                    instance,
                    monomials: n,
                    bound,
                });
            } else {
                let slack = n - bound;
                report.min_slack = Some(report.min_slack.map_or(slack, |s| s.min(slack)));
            }
        }
    }
    report
}

fn run_trial(
    lemma: Lemma,
    rng: &mut ChaCha8Rng,
    b: &HarnessBounds,
    report: &mut HarnessReport,
) -> Vec<(String, usize, usize)> {
    match lemma {
        Lemma::L3_1 => {
            let k = rng.random_range(2..=b.max_vars);
            let m = rng.random_range(1..=b.max_power);
            let bx = linear(rng, k, true);
            let a = random_poly(rng, k, b, true, false);
            let p = &bx.pow(m) * &a;
            let bound: usize = (0..k).map(|i| a.count_max_degree_monomials(i).unwrap()).sum();
            vec![(format!("({bx})^{m} * ({a})"), p.count_monomials(), bound)]
        }
        Lemma::L3_2 => {
            let k = rng.random_range(2..=b.max_vars);
            let m = rng.random_range(2..=b.max_power.max(2));
            let bx = linear(rng, k, true);
            let q = random_poly(rng, k, b, false, true);
            let p = &bx.pow(m) * &q;
            vec![(format!("({bx})^{m} * ({q})"), p.count_monomials(), 2 * k - 1)]
        }
        Lemma::L3_3 => {
            let r = rng.random_range(2..=b.max_half);
            let l = SignatureLinearForm::new(r, r).unwrap().polynomial::<Rational>();
            let q = random_poly(rng, 2 * r, b, false, true);
            let p = &l * &q;
            let n = p.count_monomials();
            let mut checks = vec![(format!("L({r},{r}) * ({q})"), n, 3 * r - 1)];
            if r == 3 {
                report.r3_instances += 1;
                report.r3_min_monomials = Some(report.r3_min_monomials.map_or(n, |x| x.min(n)));
                checks.push((format!("L(3,3) * ({q}) [r = 3]"), n, 9));
            }
            checks
        }
        Lemma::L3_5 => {
            let k = rng.random_range(2..=b.max_vars);
            let m = if rng.random_bool(0.5) { 1 } else { rng.random_range(2..=b.max_power.max(2)) };
            let bx = linear(rng, k, true);
            let ax = linear_factor(rng, k, &bx, m == 1);
            let p = &bx.pow(m) * &ax;
            let bound = if m >= 2 { 2 * k - 1 } else { 2 * k - 2 };
            *report.clause_counts.entry(if m >= 2 { "m >= 2" } else { "m = 1" }).or_default() += 1;
            vec![(format!("({bx})^{m} * ({ax})"), p.count_monomials(), bound)]
        }
    }
}

/// Nonzero `a.x`; with `at_least_two` it has two or more terms. Half of the
/// instances copy coefficients of `b` on a random subset to provoke cancellation.
fn linear_factor(rng: &mut ChaCha8Rng, k: usize, bx: &P, at_least_two: bool) -> P {
    let min_terms = if at_least_two { 2 } else { 1 };
    loop {
        let copy = rng.random_bool(0.5);
        let factor = coeff(rng, true);
        let terms: Vec<(ExponentVector, Rational)> = (0..k)
            .filter_map(|i| {
                let e = ExponentVector::unit(k, i);
                if rng.random_bool(0.3) {
                    return None;
                }
                let c = if copy && rng.random_bool(0.7) {
                    bx.coeff(&e).cloned().unwrap() * &factor
                } else {
                    coeff(rng, true)
                };
                Some((e, c))
            })
            .collect();
        let a = P::from_terms(k, terms);
        if a.count_monomials() >= min_terms {
            return a;
        }
    }
}
