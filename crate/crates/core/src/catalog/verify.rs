use std::collections::BTreeMap;

use super::{get_at, CatalogEntry, CatalogError};
use crate::exactnum::Rational;
use crate::induce::{residual_check, solve_induced, SolveStatus, SymbolicMatrixMap};
use crate::poly::{PolyError, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaperTypo {
    /// e.g. `g slot 4` or `f(2,3)`, 1-based.
    pub location: String,
    pub printed: String,
    pub corrected: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryMismatch {
    pub row: usize,
    pub col: usize,
    pub printed: String,
    pub solver: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub label: String,
    pub status: SolveStatus,
    pub free_entries: Vec<(usize, usize)>,
    /// Solver output with free entries taken from the printed matrix.
    pub solver_f: Option<SymbolicMatrixMap>,
    pub printed_f: SymbolicMatrixMap,
    pub solver_residual_zero: bool,
    pub printed_residual_zero: bool,
    pub mismatches: Vec<EntryMismatch>,
    pub typos: Vec<PaperTypo>,
    /// `L * Q_P` when the printed `P` was found inconsistent.
    pub corrected_p: Option<String>,
}

impl VerifyReport {
    /// Solver and printed matrix agree and both satisfy the identity.
    pub fn matches(&self) -> bool {
        self.solver_f.is_some() && self.solver_residual_zero && self.printed_residual_zero && self.mismatches.is_empty()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let typos: Vec<_> = self
            .typos
            .iter()
            .map(|t| serde_json::json!({"location": t.location, "printed": t.printed, "corrected": t.corrected}))
            .collect();
        serde_json::json!({
            "name": self.label,
            "status": self.status.name(),
            "matches": self.matches(),
            "free_entries": self.free_entries,
            "solver_residual_zero": self.solver_residual_zero,
            "printed_residual_zero": self.printed_residual_zero,
            "solver_f": self.solver_f.as_ref().map(SymbolicMatrixMap::to_json_value),
            "printed_f": self.printed_f.to_json_value(),
            "typos": typos,
            "corrected_p": self.corrected_p,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}: {}", self.label, self.status.name());
        if !self.free_entries.is_empty() {
            let rows: Vec<String> = self
                .free_entries
                .iter()
                .map(|&(i, _)| (i + 1).to_string())
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            out += &format!(" (free rows {})", rows.join(", "));
        }
        out += &format!(
            "\n  solver residual zero: {}\n  printed residual zero: {}\n  match: {}",
            self.solver_residual_zero,
            self.printed_residual_zero,
            self.matches()
        );
        if let Some(f) = &self.solver_f {
            out += "\n  solver f:";
            for row in f.texts() {
                out += &format!("\n    [{}]", row.join(", "));
            }
        }
        for t in &self.typos {
            out += &format!("\n  PaperTypo at {}: printed {:?}, corrected {:?}", t.location, t.printed, t.corrected);
        }
        if let Some(p) = &self.corrected_p {
            out += &format!("\n  corrected P = L*Q_P = {p}");
        }
        out
    }
}

/// LaTeX-style monomial text (`x_1^2 x_4`) to the parser grammar (`x1^2*x4`).
pub fn latex_to_text(latex: &str) -> String {
    let mut out = String::new();
    let mut factor_end = false;
    for ch in latex.chars() {
        match ch {
            '_' | '{' | '}' | ' ' => {}
            'x' | '(' => {
                if factor_end {
                    out.push('*');
                }
                out.push(ch);
                factor_end = false;
            }
            _ => {
                out.push(ch);
                factor_end = ch.is_ascii_digit() || ch == ')';
            }
        }
    }
    out
}

fn parse_printed(latex: &str, arity: usize) -> Result<Polynomial<Rational>, PolyError> {
    Polynomial::parse_with(&latex_to_text(latex), arity, "x")
}

/// Expected degree (most common, larger on ties) and the indices of the
/// printed components that are not homogeneous of that degree.
pub fn homogeneity_check(printed: &[&str], arity: usize) -> Result<(u32, Vec<usize>), PolyError> {
    let polys = printed.iter().map(|t| parse_printed(t, arity)).collect::<Result<Vec<_>, _>>()?;
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for p in &polys {
        if let (Some(d), true) = (p.degree(), p.is_homogeneous()) {
            *counts.entry(d).or_default() += 1;
        }
    }
    let degree = counts.iter().max_by_key(|&(d, c)| (*c, *d)).map_or(0, |(d, _)| *d);
    let flagged = polys
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero() && (!p.is_homogeneous() || p.degree() != Some(degree)))
        .map(|(i, _)| i)
        .collect();
    Ok((degree, flagged))
}

fn all_zero(polys: &[Polynomial<crate::exactnum::SurdSum>]) -> bool {
    polys.iter().all(Polynomial::is_zero)
}

pub fn verify(entry: &CatalogEntry) -> Result<VerifyReport, CatalogError> {
    let g = &entry.g;
    let outcome = solve_induced(g)?;
    let printed_f = entry.f_expected.clone();
    let printed_residual_zero = all_zero(&residual_check(g, &printed_f)?);
    let solver_f = match outcome.status {
        SolveStatus::Inconsistent => None,
        _ => {
            let fixed: Vec<_> = outcome
                .free_entries
                .iter()
                .map(|&(i, j)| ((i, j), printed_f.entry(i, j).clone()))
                .collect();
            Some(outcome.specialize(&fixed)?)
        }
    };
    let solver_residual_zero = match &solver_f {
        Some(f) => all_zero(&residual_check(g, f)?),
        None => false,
    };
    let mut mismatches = Vec::new();
    if let Some(f) = &solver_f {
        for i in 0..f.rows() {
            for j in 0..f.cols() {
                if f.entry(i, j) != printed_f.entry(i, j) {
                    mismatches.push(EntryMismatch {
                        row: i,
                        col: j,
                        printed: printed_f.entry(i, j).to_text_with("z"),
                        solver: f.entry(i, j).to_text_with("z"),
                    });
                }
            }
        }
    }
    let mut typos = Vec::new();
    let mut corrected_p = None;
    if let Some(printed) = &entry.printed {
        let n = g.signature().source_arity();
        let (pos, neg) = g.component_texts();
        let actual: Vec<String> = pos.into_iter().chain(neg).map(|t| t.replace('z', "x")).collect();
        let (_, flagged) = homogeneity_check(&printed.g, n).map_err(crate::induce::InduceError::from)?;
        for k in flagged {
            typos.push(PaperTypo {
                location: format!("g slot {}", k + 1),
                printed: printed.g[k].to_string(),
                corrected: actual[k].clone(),
            });
        }
        let p = parse_printed(printed.p, n).map_err(crate::induce::InduceError::from)?;
        let l = g.signature().form().polynomial::<Rational>();
        let lq = &l * &entry.q_p;
        if p != lq {
            corrected_p = Some(lq.to_string());
            typos.push(PaperTypo {
                location: "P".into(),
                printed: printed.p.to_string(),
                corrected: lq.to_string(),
            });
        }
    }
    for m in &mismatches {
        typos.push(PaperTypo {
            location: format!("f({},{})", m.row + 1, m.col + 1),
            printed: m.printed.clone(),
            corrected: m.solver.clone(),
        });
    }
    Ok(VerifyReport {
        label: entry.label(),
        status: outcome.status,
        free_entries: outcome.free_entries,
        solver_f,
        printed_f,
        solver_residual_zero,
        printed_residual_zero,
        mismatches,
        typos,
        corrected_p,
    })
}

pub fn verify_entry(name: &str, t: Option<&Rational>) -> Result<VerifyReport, CatalogError> {
    verify(&get_at(name, t)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn latex_monomials() {
        assert_eq!(latex_to_text("x_2x_3^3"), "x2*x3^3");
        assert_eq!(latex_to_text("x_1^2 x_4"), "x1^2*x4");
        assert_eq!(latex_to_text("x_1^3 + x_1^2 x_2 -x_3^2"), "x1^3+x1^2*x2-x3^2");
        assert_eq!(latex_to_text("x_{12}x_3"), "x12*x3");
    }

    #[test]
    fn flags_off_degree_slots() {
        let (d, flagged) = homogeneity_check(&["x_1^3", "x_2x_3^3", "x_3^2", "x_1x_3x_4", "0"], 4).unwrap();
        assert_eq!((d, flagged), (3, vec![1, 2]));
    }
}
