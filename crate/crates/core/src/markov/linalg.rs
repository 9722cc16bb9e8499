//! Row reduction and power iteration over any [`Scalar`].
//!
//! Exact scalars pivot on the first nonzero entry; floating scalars use
//! partial pivoting and flush [`Scalar::negligible`] entries to zero.

use crate::scalar::{l1_distance, Scalar};

/// Reduced row echelon form of a dense matrix.
#[derive(Clone, Debug)]
pub struct Echelon<S> {
    rows: Vec<Vec<S>>,
    /// Pivot column of each of the first `rank` rows.
    pivots: Vec<usize>,
    ncols: usize,
}

impl<S: Scalar> Echelon<S> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nullity(&self) -> usize {
        self.ncols - self.rank()
    }

    /// One basis vector per free column: that column set to 1, other free
    /// columns 0.
    pub fn nullspace_basis(&self) -> Vec<Vec<S>> {
        let free: Vec<usize> = (0..self.ncols).filter(|c| !self.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![S::zero(); self.ncols];
                v[f] = S::one();
                for (r, &pc) in self.pivots.iter().enumerate() {
                    v[pc] = -self.rows[r][f].clone();
                }
                v
            })
            .collect()
    }
}

/// Gauss-Jordan elimination. Row operations only touch the nonzero columns
/// of the pivot row, which keeps the sparse transition matrices cheap.
pub fn row_reduce<S: Scalar>(mut rows: Vec<Vec<S>>) -> Echelon<S> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    for col in 0..ncols {
        let rank = pivots.len();
        if rank == rows.len() {
            break;
        }
        let candidate = if S::EXACT {
            (rank..rows.len()).find(|&r| !rows[r][col].is_zero())
        } else {
            (rank..rows.len())
                .filter(|&r| !rows[r][col].negligible())
                .max_by(|&a, &b| rows[a][col].abs().partial_cmp(&rows[b][col].abs()).expect("finite entries"))
        };
        let Some(pr) = candidate else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = S::one() / rows[rank][col].clone();
        for x in rows[rank].iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        let support: Vec<usize> = (0..ncols).filter(|&c| !rows[rank][c].is_zero()).collect();
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for &c in &support {
                let updated = row[c].clone() - factor.clone() * pivot_row[c].clone();
                row[c] = if !S::EXACT && updated.negligible() { S::zero() } else { updated };
            }
            row[col] = S::zero();
        }
        pivots.push(col);
    }
    Echelon { rows, pivots, ncols }
}

/// Result of iterating `v -> M v` towards a target vector.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerIteration<S> {
    pub vector: Vec<S>,
    pub steps: usize,
    pub distance: S,
    pub converged: bool,
}

/// Iterate `v -> apply(v)` from `start` until the L1 distance to `target`
/// is at most `tolerance`, for at most `max_steps` steps.
pub fn power_iterate<S: Scalar>(
    apply: impl Fn(&[S]) -> Vec<S>,
    start: Vec<S>,
    target: &[S],
    tolerance: &S,
    max_steps: usize,
) -> PowerIteration<S> {
    let mut v = start;
    let mut distance = l1_distance(&v, target);
    let mut steps = 0;
    while &distance > tolerance && steps < max_steps {
        v = apply(&v);
        steps += 1;
        distance = l1_distance(&v, target);
    }
    let converged = &distance <= tolerance;
    PowerIteration { vector: v, steps, distance, converged }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::ratio(n, 1)
    }

    #[test]
    fn rank_and_nullspace_exact() {
        // Rows (1 2 3), (2 4 6), (1 0 1): rank 2, nullspace spanned by (-1, -1, 1).
        let m = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(1), q(0), q(1)]];
        let e = row_reduce(m.clone());
        assert_eq!(e.rank(), 2);
        let basis = e.nullspace_basis();
        assert_eq!(basis, vec![vec![q(-1), q(-1), q(1)]]);
        for row in &m {
            let dot = row.iter().zip(&basis[0]).fold(q(0), |acc, (a, b)| acc + a * b);
            assert_eq!(dot, q(0));
        }
    }

    #[test]
    fn float_path_agrees() {
        let m: Vec<Vec<f64>> = vec![vec![1.0, 2.0, 3.0], vec![2.0, 4.0, 6.0], vec![1.0, 0.0, 1.0]];
        let e = row_reduce(m);
        assert_eq!(e.rank(), 2);
        let v = &e.nullspace_basis()[0];
        assert!((v[0] + 1.0).abs() < 1e-12 && (v[1] + 1.0).abs() < 1e-12 && v[2] == 1.0);
    }

    #[test]
    fn power_iteration_on_two_state_chain() {
        // Column-stochastic [[0.5, 1], [0.5, 0]] has stationary (2/3, 1/3).
        let apply = |v: &[f64]| vec![0.5 * v[0] + v[1], 0.5 * v[0]];
        let run = power_iterate(apply, vec![0.5, 0.5], &[2.0 / 3.0, 1.0 / 3.0], &1e-12, 1000);
        assert!(run.converged && run.steps < 100);
    }
}
