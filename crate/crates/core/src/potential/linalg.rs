//! Dense linear solving over a field.

use num_traits::Num;

/// Solves `a x = b` by Gaussian elimination with the first non-zero pivot.
/// Returns `None` when the matrix is singular. Zero entries are skipped, which
/// keeps the work close to linear in the fill for graph Laplacians.
pub fn solve<T: Clone + Num>(mut a: Vec<Vec<T>>, mut b: Vec<T>) -> Option<Vec<T>> {
    let n = b.len();
    assert!(
        a.len() == n && a.iter().all(|row| row.len() == n),
        "square system expected"
    );
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let p = a[col][col].clone();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone() / p.clone();
            let pivot_row = a[col].clone();
            for (c, x) in pivot_row.iter().enumerate().skip(col) {
                if x.is_zero() {
                    continue;
                }
                let delta = factor.clone() * x.clone();
                a[r][c] = a[r][c].clone() - delta;
            }
            let delta = factor * b[col].clone();
            b[r] = b[r].clone() - delta;
        }
    }
    Some((0..n).map(|i| b[i].clone() / a[i][i].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use crate::Rational as Q;

    #[test]
    fn exact_rational_system() {
        let q = |n: i64, d: i64| Q::frac(n, d);
        let a = vec![
            vec![q(2, 1), q(1, 1), q(0, 1)],
            vec![q(1, 1), q(3, 1), q(1, 1)],
            vec![q(0, 1), q(1, 1), q(4, 1)],
        ];
        let x = vec![q(1, 3), q(-2, 5), q(7, 1)];
        let b: Vec<Q> = a
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&x)
                    .fold(q(0, 1), |s, (r, v)| s + r.clone() * v.clone())
            })
            .collect();
        assert_eq!(solve(a, b).unwrap(), x);
    }

    #[test]
    fn needs_row_swaps() {
        let a = vec![vec![0.0, 1.0], vec![2.0, 0.0]];
        let x = solve(a, vec![3.0, 4.0]).unwrap();
        assert!((x[0] - 2.0f64).abs() < 1e-12 && (x[1] - 3.0f64).abs() < 1e-12);
    }

    #[test]
    fn singular_matrix() {
        let a = vec![vec![1.0, 2.0], vec![2.0, 4.0]];
        assert!(solve(a, vec![1.0, 2.0]).is_none());
    }
}
