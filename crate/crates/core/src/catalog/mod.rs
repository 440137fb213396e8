//! Named map pairs `(g, f)` with exact data, cross-checked against the solver.

mod entries;
mod export;
mod verify;

use std::fmt;

use thiserror::Error;

use crate::ballmap::{BallMapError, MonomialBallMap};
use crate::exactnum::{parse_rational, rat, Rational};
use crate::induce::{InduceError, SymbolicMatrixMap};
use crate::poly::Polynomial;

pub use export::{catalog_json, catalog_markdown, entry_json};
pub use verify::{homogeneity_check, latex_to_text, verify, verify_entry, EntryMismatch, PaperTypo, VerifyReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("no catalog entry named {0:?}")]
    NotFound(String),
    #[error("{name}: {issue}")]
    ParamError { name: String, issue: ParamIssue },
    #[error(transparent)]
    Induce(#[from] InduceError),
    #[error(transparent)]
    Map(#[from] BallMapError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamIssue {
    OutOfRange { t: String, range: String },
    IndeterminateEntry { t: String, entry: (usize, usize), reason: String },
    NoParameter,
    Missing,
    Shape(String),
}

impl fmt::Display for ParamIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamIssue::OutOfRange { t, range } => write!(f, "t = {t} outside {range}"),
            ParamIssue::IndeterminateEntry { t, entry, reason } => {
                write!(f, "indeterminate entry ({},{}) at t = {t}: {reason}", entry.0 + 1, entry.1 + 1)
            }
            ParamIssue::NoParameter => write!(f, "entry takes no parameter t"),
            ParamIssue::Missing => write!(f, "entry needs a parameter t"),
            ParamIssue::Shape(msg) => write!(f, "{msg}"),
        }
    }
}

/// `lower <= t <= upper` (or `< upper`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamRange {
    pub lower: Rational,
    pub upper: Rational,
    pub upper_inclusive: bool,
}

impl ParamRange {
    pub fn new(lower: Rational, upper: Rational, upper_inclusive: bool) -> Self {
        ParamRange {
            lower,
            upper,
            upper_inclusive,
        }
    }

    pub fn contains(&self, t: &Rational) -> bool {
        *t >= self.lower && (*t < self.upper || (self.upper_inclusive && *t == self.upper))
    }
}

impl fmt::Display for ParamRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let close = if self.upper_inclusive { ']' } else { ')' };
        write!(f, "[{}, {}{close}", self.lower, self.upper)
    }
}

/// Verbatim printed text kept where the printed data cannot be encoded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrintedForms {
    pub g: Vec<&'static str>,
    pub p: &'static str,
    pub rp: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub g: MonomialBallMap,
    /// `P = L * Q_P` with `m = 1`.
    pub q_p: Polynomial<Rational>,
    /// Printed `f`, with printed values in any free entries.
    pub f_expected: SymbolicMatrixMap,
    pub t: Option<Rational>,
    pub param_range: Option<ParamRange>,
    pub printed: Option<PrintedForms>,
    pub notes: Vec<String>,
}

/// Representative parameter used by `get` for the families.
pub fn default_t() -> Rational {
    rat(1, 2)
}

const FIXED: [&str; 4] = ["standard", "whitney_2x2", "square_2x2", "degree3_2244"];
const FAMILIES: [&str; 2] = ["family_t_2244", "family_t_2234"];
const GENERAL: [&str; 2] = ["generalized_whitney", "symmetric_square"];

/// Catalog names; the two general constructions are listed with their
/// argument placeholders.
pub fn list() -> Vec<String> {
    let mut names: Vec<String> = vec![
        FIXED[0].into(),
        FIXED[1].into(),
        FIXED[2].into(),
        FAMILIES[0].into(),
        FIXED[3].into(),
        FAMILIES[1].into(),
    ];
    names.extend(GENERAL.iter().map(|g| format!("{g}(r,s)")));
    names
}

/// Concrete instances shipped in the data file.
pub fn shipped_names() -> Vec<String> {
    let mut names: Vec<String> = list().into_iter().filter(|n| !n.ends_with("(r,s)")).collect();
    for r in 2..=4 {
        for s in 2..=4 {
            names.push(format!("generalized_whitney({r},{s})"));
        }
    }
    for r in 2..=3 {
        for s in 2..=3 {
            names.push(format!("symmetric_square({r},{s})"));
        }
    }
    names
}

fn parse_shape(args: &str) -> Option<(usize, usize)> {
    let inner = args.strip_prefix('(')?.strip_suffix(')')?;
    let (r, s) = inner.split_once(',')?;
    Some((r.trim().parse().ok()?, s.trim().parse().ok()?))
}

/// Entry by name; families are returned at `default_t()`.
pub fn get(name: &str) -> Result<CatalogEntry, CatalogError> {
    get_at(name, None)
}

pub fn get_at(name: &str, t: Option<&Rational>) -> Result<CatalogEntry, CatalogError> {
    let name = name.trim();
    let no_param = |entry: CatalogEntry| match t {
        Some(_) => Err(CatalogError::ParamError {
            name: entry.name.clone(),
            issue: ParamIssue::NoParameter,
        }),
        None => Ok(entry),
    };
    match name {
        "standard" => no_param(entries::standard()),
        "whitney_2x2" => no_param(entries::whitney_2x2()),
        "square_2x2" => no_param(entries::square_2x2()),
        "degree3_2244" => no_param(entries::degree3_2244()),
        "family_t_2244" => entries::family_t_2244(t.unwrap_or(&default_t())),
        "family_t_2234" => entries::family_t_2234(t.unwrap_or(&default_t())),
        _ => {
            let (base, args) = name.split_at(name.find('(').unwrap_or(name.len()));
            let builder = match base {
                "generalized_whitney" => entries::generalized_whitney,
                "symmetric_square" => entries::symmetric_square,
                _ => return Err(CatalogError::NotFound(name.to_string())),
            };
            let (r, s) = parse_shape(args).ok_or_else(|| CatalogError::NotFound(name.to_string()))?;
            no_param(builder(r, s)?)
        }
    }
}

/// Parses `t` from text such as `"3/4"`.
pub fn parse_t(name: &str, text: &str) -> Result<Rational, CatalogError> {
    parse_rational(text).map_err(|e| CatalogError::ParamError {
        name: name.to_string(),
        issue: ParamIssue::OutOfRange {
            t: text.to_string(),
            range: e.to_string(),
        },
    })
}

impl CatalogEntry {
    pub fn is_family(&self) -> bool {
        self.param_range.is_some()
    }

    /// The same family at another parameter value.
    pub fn family_at(&self, t: &Rational) -> Result<CatalogEntry, CatalogError> {
        if !self.is_family() {
            return Err(CatalogError::ParamError {
                name: self.name.clone(),
                issue: ParamIssue::NoParameter,
            });
        }
        get_at(&self.name, Some(t))
    }

    /// Name with the parameter value, e.g. `family_t_2244[t=1/2]`.
    pub fn label(&self) -> String {
        match &self.t {
            Some(t) => format!("{}[t={t}]", self.name),
            None => self.name.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ballmap::properness_certificate;
    use crate::exactnum::int;

    #[test]
    fn names_resolve() {
        for name in shipped_names() {
            let e = get(&name).unwrap();
            assert_eq!(e.f_expected.rows(), e.g.signature().rp, "{name}");
            assert_eq!(e.f_expected.cols(), e.g.signature().sp, "{name}");
        }
        assert_eq!(get("nope"), Err(CatalogError::NotFound("nope".into())));
        assert!(matches!(get("generalized_whitney(1,2)"), Err(CatalogError::ParamError { .. })));
        assert!(matches!(get("generalized_whitney"), Err(CatalogError::NotFound(_))));
    }

    #[test]
    fn square_entry() {
        let e = get("square_2x2").unwrap();
        assert_eq!(e.f_expected.entry(1, 1).to_text_with("z"), "z1*z4 + z2*z3");
        let w = get("generalized_whitney(2,2)").unwrap();
        let v = get("whitney_2x2").unwrap();
        assert_eq!((w.g, w.f_expected), (v.g, v.f_expected));
    }

    #[test]
    fn family_parameters() {
        let e = get("family_t_2244").unwrap();
        let squares: Vec<String> = e.g.positive().iter().flatten().map(|c| c.coeff_square().to_string()).collect();
        assert_eq!(squares, vec!["1", "3/2", "1/2", "1/2"]);
        let zero = e.family_at(&int(0)).unwrap();
        let texts = zero.g.component_texts().0;
        assert_eq!(texts, vec!["z1^2", "sqrt(2)*z1*z2", "z2^2", "0"]);
        assert!(matches!(
            e.family_at(&int(1)),
            Err(CatalogError::ParamError { issue: ParamIssue::IndeterminateEntry { .. }, .. })
        ));
        assert!(matches!(
            e.family_at(&rat(3, 2)),
            Err(CatalogError::ParamError { issue: ParamIssue::OutOfRange { .. }, .. })
        ));
        let g0 = get_at("family_t_2234", Some(&int(0))).unwrap().g;
        assert_eq!(
            g0.component_texts(),
            (
                vec!["z1^2".to_string(), "z1*z2".into(), "0".into()],
                vec!["0".to_string(), "0".into(), "z1*z3".into(), "z1*z4".into()]
            )
        );
        assert!(get("whitney_2x2").unwrap().family_at(&int(0)).is_err());
    }

    #[test]
    fn stated_q_p() {
        for name in shipped_names() {
            let e = get(&name).unwrap();
            let cert = properness_certificate(&e.g, 500, 0).unwrap();
            assert_eq!(cert.m, 1, "{name}");
            assert_eq!(cert.q_p, e.q_p, "{name}");
            assert!(cert.is_proper(), "{name}");
        }
        for t in [int(0), rat(1, 4), rat(3, 4)] {
            for name in FAMILIES {
                let e = get_at(name, Some(&t)).unwrap();
                let cert = properness_certificate(&e.g, 500, 0).unwrap();
                assert_eq!((cert.m, cert.q_p), (1, e.q_p), "{name} {t}");
            }
        }
    }
}
