//! Fraction-free Gauss-Jordan elimination over `SurdSum[z]`.
//!
//! Every step replaces each non-pivot row by `(p * row - a * pivot_row) / p_prev`,
//! which stays exact because all entries remain minors of the augmented matrix.
//! After the sweep every pivot row carries the same diagonal `d`.

use super::{build_system, InduceError, SymbolicMatrixMap};
use crate::ballmap::MonomialBallMap;
use crate::exactnum::SurdSum;
use crate::poly::Polynomial;

type Poly = Polynomial<SurdSum>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolveStatus {
    Unique,
    Underdetermined,
    Inconsistent,
}

impl SolveStatus {
    pub fn name(self) -> &'static str {
        match self {
            SolveStatus::Unique => "Unique",
            SolveStatus::Underdetermined => "Underdetermined",
            SolveStatus::Inconsistent => "Inconsistent",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    /// Free entries set to zero. For `Inconsistent` this is the zero map.
    pub particular: SymbolicMatrixMap,
    /// `(row, col)` of `f`, 0-based.
    pub free_entries: Vec<(usize, usize)>,
    /// Rows of `f` left undetermined by the system.
    pub free_slots: Vec<usize>,
    /// Free slots whose system column vanishes, so any value works.
    pub unconstrained_slots: Vec<usize>,
    reduced: Vec<Vec<Poly>>,
    pivots: Vec<(usize, usize)>,
    diagonal: Poly,
    dims: (usize, usize),
}

fn eliminate(rows: &mut [Vec<Poly>], unknowns: usize, arity: usize) -> Result<(Vec<(usize, usize)>, Poly), InduceError> {
    let mut prev = Poly::one(arity);
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for c in 0..unknowns {
        let pr = (0..rows.len())
            .filter(|i| !pivots.iter().any(|&(p, _)| p == *i) && !rows[*i][c].is_zero())
            .min_by_key(|&i| (rows[i][c].degree().unwrap_or(0), rows[i][c].count_monomials(), i));
        let Some(pr) = pr else { continue };
        let p = rows[pr][c].clone();
        let pivot_row = rows[pr].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == pr {
                continue;
            }
            let a = row[c].clone();
            for (k, entry) in row.iter_mut().enumerate() {
                let next = if a.is_zero() {
                    &p * &*entry
                } else {
                    &(&p * &*entry) - &(&a * &pivot_row[k])
                };
                *entry = next.div_exact(&prev)?;
            }
        }
        pivots.push((pr, c));
        prev = p;
    }
    Ok((pivots, prev))
}

pub fn solve_induced(g: &MonomialBallMap) -> Result<SolveOutcome, InduceError> {
    let sig = g.signature();
    let sys = build_system(g);
    let arity = sig.r * sig.s;
    let (n, sp) = (sig.rp, sig.sp);
    let mut rows: Vec<Vec<Poly>> = sys
        .matrix
        .iter()
        .enumerate()
        .map(|(i, row)| row.iter().cloned().chain((0..sp).map(|j| sys.rhs[j][i].clone())).collect())
        .collect();
    let (pivots, diagonal) = eliminate(&mut rows, n, arity)?;

    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let free_slots: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    let zero_columns = sys.zero_columns();
    let unconstrained_slots = free_slots.iter().copied().filter(|c| zero_columns.contains(c)).collect();
    let consistent = rows
        .iter()
        .enumerate()
        .filter(|(i, _)| !pivots.iter().any(|&(p, _)| p == *i))
        .all(|(_, row)| row[n..].iter().all(Poly::is_zero));
    let mut outcome = SolveOutcome {
        status: SolveStatus::Inconsistent,
        particular: SymbolicMatrixMap::zero(sig.r, sig.s, n, sp),
        free_entries: free_slots.iter().flat_map(|&k| (0..sp).map(move |j| (k, j))).collect(),
        free_slots,
        unconstrained_slots,
        reduced: rows,
        pivots,
        diagonal,
        dims: (sig.r, sig.s),
    };
    if !consistent {
        return Ok(outcome);
    }
    outcome.status = if outcome.free_slots.is_empty() {
        SolveStatus::Unique
    } else {
        SolveStatus::Underdetermined
    };
    outcome.particular = outcome.specialize(&[])?;
    Ok(outcome)
}

impl SolveOutcome {
    pub fn is_unique(&self) -> bool {
        self.status == SolveStatus::Unique
    }

    /// Solves for the pivot entries after fixing free entries; unlisted free
    /// entries are zero.
    pub fn specialize(&self, values: &[((usize, usize), Poly)]) -> Result<SymbolicMatrixMap, InduceError> {
        if self.status == SolveStatus::Inconsistent {
            return Err(InduceError::Specialize("system is inconsistent".into()));
        }
        let (r, s) = self.dims;
        let n = self.free_slots.len() + self.pivots.len();
        let sp = self.reduced.first().map_or(0, |row| row.len() - n);
        let mut f = SymbolicMatrixMap::zero(r, s, n, sp);
        for ((k, j), value) in values {
            if !self.free_entries.contains(&(*k, *j)) {
                return Err(InduceError::Specialize(format!("entry ({k},{j}) is not free")));
            }
            if value.arity() != r * s {
                return Err(InduceError::Specialize(format!("entry ({k},{j}) has arity {}", value.arity())));
            }
            f.set_entry(*k, *j, value.clone());
        }
        for &(pr, c) in &self.pivots {
            let row = &self.reduced[pr];
            for j in 0..sp {
                let mut num = row[n + j].clone();
                for &k in &self.free_slots {
                    if !row[k].is_zero() && !f.entry(k, j).is_zero() {
                        num = &num - &(&row[k] * f.entry(k, j));
                    }
                }
                let x = num
                    .div_exact(&self.diagonal)
                    .map_err(|_| InduceError::NonPolynomialSolution { row: c, col: j })?;
                f.set_entry(c, j, x);
            }
        }
        Ok(f)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "status": self.status.name(),
            "particular": self.particular.to_json_value(),
            "free_entries": self.free_entries,
        })
    }
}
