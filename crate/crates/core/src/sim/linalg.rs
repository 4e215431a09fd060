//! Small dense linear algebra on top of nalgebra's SVD.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};

/// Relative residual above which a target is not in the span of the rows.
pub(crate) const SPAN_RESIDUAL_TOL: f64 = 1e-6;

const REFINEMENT_STEPS: usize = 4;

/// Row-major slices to a matrix with `cols` columns.
pub(crate) fn from_rows(rows: &[&[f64]], cols: usize) -> DMatrix<f64> {
    DMatrix::from_fn(rows.len(), cols, |r, c| rows[r][c])
}

/// Singular values in decreasing order.
pub(crate) fn singular_values(m: &DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m
        .clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub(crate) fn rank(m: &DMatrix<f64>, threshold: f64) -> usize {
    singular_values(m)
        .into_iter()
        .filter(|&s| s > threshold)
        .count()
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    num_traits::Float::sqrt(v.iter().map(|x| x * x).sum::<f64>())
}

/// Weights `w` with `Σ w_i rows_i = target`, or `None` when `target` is not
/// in the row span (relative residual above [`SPAN_RESIDUAL_TOL`]).
pub(crate) fn solve_in_span(rows: &[&[f64]], target: &[f64], rel_tol: f64) -> Option<Vec<f64>> {
    let n = target.len();
    let t_norm = norm(target);
    if t_norm == 0.0 {
        return Some(alloc::vec![0.0; rows.len()]);
    }
    if rows.is_empty() {
        return None;
    }
    // Columns of `a` are the rows.
    let a = DMatrix::from_fn(n, rows.len(), |r, c| rows[c][r]);
    let t = DVector::from_column_slice(target);
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let eps = rel_tol * smax;
    let mut w = svd.solve(&t, eps).ok()?;
    let mut residual = (&a * &w - &t).norm();
    // The SVD's vectors are only accurate to about 1e-6 on mildly
    // ill-conditioned systems; refine against the true residual.
    for _ in 0..REFINEMENT_STEPS {
        if residual <= 1e-13 * t_norm {
            break;
        }
        let r = &t - &a * &w;
        w += svd.solve(&r, eps).ok()?;
        residual = (&a * &w - &t).norm();
    }
    if residual <= SPAN_RESIDUAL_TOL * t_norm {
        Some(w.iter().copied().collect())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_membership() {
        let r1 = [1.0, 2.0, 0.0];
        let r2 = [0.0, 1.0, 1.0];
        let rows: [&[f64]; 2] = [&r1, &r2];
        let w = solve_in_span(&rows, &[2.0, 5.0, 1.0], 1e-8).unwrap();
        assert!((w[0] - 2.0).abs() < 1e-12 && (w[1] - 1.0).abs() < 1e-12);
        assert!(solve_in_span(&rows, &[0.0, 0.0, 1.0], 1e-8).is_none());
        assert!(solve_in_span(&[], &[1.0], 1e-8).is_none());
        assert_eq!(solve_in_span(&[], &[0.0], 1e-8), Some(alloc::vec![]));
    }

    #[test]
    fn refinement_reaches_full_precision() {
        // Received rows of a deep relay; cond ≈ 5e3.
        let rows: [&[f64]; 7] = [
            &[
                0.24928220121479114,
                -1.1910311903375574,
                -4.494990754027692,
                -1.4831042560023755,
                0.643096773426657,
                0.673691276300417,
            ],
            &[3.3940918935417903, 0.4903943737997156, 0.0, 0.0, 0.0, 0.0],
            &[
                0.0023092584558039734,
                0.0,
                -0.01362385942184339,
                0.0,
                0.0,
                0.0,
            ],
            &[
                0.0006371043465257617,
                0.0,
                0.0,
                -0.005024454290030275,
                0.0,
                0.0,
            ],
            &[
                0.03635682625352344,
                0.0,
                0.0,
                0.0,
                0.000886848595320112,
                0.0,
            ],
            &[-0.658796408428055, 0.0, 0.0, 0.0, 0.0, -0.3679156998997537],
            &[0.0; 6],
        ];
        let target = [0.0, 0.0, 0.0, 1.0, 0.0, 0.0];
        let w = solve_in_span(&rows, &target, 1e-8).unwrap();
        for c in 0..6 {
            let x: f64 = w.iter().zip(&rows).map(|(wi, r)| wi * r[c]).sum();
            assert!((x - target[c]).abs() < 1e-10);
        }
    }

    #[test]
    fn rank_with_threshold() {
        let m = from_rows(&[&[1.0, 0.0], &[2.0, 0.0]], 2);
        assert_eq!(rank(&m, 1e-8), 1);
        assert_eq!(rank(&DMatrix::zeros(0, 3), 1e-8), 0);
        assert_eq!(rank(&DMatrix::zeros(2, 2), 1e-8), 0);
    }
}
