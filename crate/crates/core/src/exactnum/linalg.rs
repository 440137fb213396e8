//! Dense Gauss-Jordan elimination over an exact field.

use super::Field;

/// Row-reduces `rows` in place and returns the pivot columns.
pub fn row_reduce<F: Field>(rows: &mut [Vec<F>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..ncols {
        let Some(found) = (next..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let inv = rows[next][col]
            .recip()
            .expect("pivot is nonzero by selection");
        for entry in rows[next].iter_mut() {
            *entry = entry.times(&inv);
        }
        for i in 0..rows.len() {
            if i == next || rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col].clone();
            for c in 0..ncols {
                let delta = factor.times(&rows[next][c]);
                rows[i][c] = rows[i][c].minus(&delta);
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut work = rows.to_vec();
    row_reduce(&mut work, ncols).len()
}

/// Basis of `{v : rows * v = 0}`.
pub fn nullspace<F: Field>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut work = rows.to_vec();
    let pivots = row_reduce(&mut work, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); ncols];
            v[f] = F::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = work[i][f].negate();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, Rational};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 1);
        for row in &a {
            let dot: Rational = row.iter().zip(&ns[0]).map(|(x, y)| x * y).sum();
            assert_eq!(dot, int(0));
        }
    }

    #[test]
    fn empty_system_has_full_nullspace() {
        let ns = nullspace::<Rational>(&[], 2);
        assert_eq!(ns.len(), 2);
    }
}
