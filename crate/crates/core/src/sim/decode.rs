use alloc::vec::Vec;

use nalgebra::DMatrix;

use super::linalg::{from_rows, rank, singular_values};
use super::{Mode, SignalLedger};
use crate::network::Flow;

struct Split {
    /// All receptions, symbol part.
    m: DMatrix<f64>,
    /// Columns of the destination's own symbols.
    own: Vec<usize>,
    /// Columns of the other flow's symbols.
    other: Vec<usize>,
    /// Noise part of the receptions.
    noise: DMatrix<f64>,
}

fn split(ledger: &SignalLedger, dest: Flow) -> Split {
    let rx = ledger.receptions(ledger.destination(dest));
    let n_sym = (ledger.symbols().0 + ledger.symbols().1) as usize;
    let rows: Vec<&[f64]> = rx.iter().map(|s| s.symbols.as_slice()).collect();
    let noise_rows: Vec<&[f64]> = rx.iter().map(|s| s.noise.as_slice()).collect();
    let n_noise = rx.first().map_or(0, |s| s.noise.len());
    let (k1, k2) = ledger.symbols();
    let first: Vec<usize> = (0..k1 as usize).collect();
    let second: Vec<usize> = (k1 as usize..(k1 + k2) as usize).collect();
    let (own, other) = match dest {
        Flow::One => (first, second),
        Flow::Two => (second, first),
    };
    Split {
        m: from_rows(&rows, n_sym),
        own,
        other,
        noise: from_rows(&noise_rows, n_noise),
    }
}

fn columns(m: &DMatrix<f64>, cols: &[usize]) -> DMatrix<f64> {
    DMatrix::from_fn(m.nrows(), cols.len(), |r, c| m[(r, cols[c])])
}

/// Whether the destination of `dest` can recover all of its flow's symbols
/// from its receptions while treating the other flow as interference:
/// `rank([A | B]) - rank(B) = k_own`.
///
/// Both ranks count singular values above `tol · σ_max([A | B])`.
pub fn decodable(ledger: &SignalLedger, dest: Flow, tol: f64) -> bool {
    let k_own = ledger.symbol_count(dest) as usize;
    if k_own == 0 {
        return true;
    }
    let s = split(ledger, dest);
    let smax = singular_values(&s.m).first().copied().unwrap_or(0.0);
    let thr = tol * smax;
    let b = columns(&s.m, &s.other);
    rank(&s.m, thr).saturating_sub(rank(&b, thr)) == k_own
}

/// `σ_k(A_eff) / σ_max([A | B])`, where `A_eff` is the own-symbol block
/// projected onto the orthogonal complement of the interference columns and
/// `k` is the number of own symbols. Zero when not decodable at all, `None`
/// when the flow carries no symbols.
pub fn decoding_margin(ledger: &SignalLedger, dest: Flow, tol: f64) -> Option<f64> {
    let k_own = ledger.symbol_count(dest) as usize;
    if k_own == 0 {
        return None;
    }
    let s = split(ledger, dest);
    let smax = singular_values(&s.m).first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return Some(0.0);
    }
    let a = columns(&s.m, &s.own);
    let b = columns(&s.m, &s.other);
    let a_eff = if b.ncols() == 0 || b.nrows() == 0 {
        a
    } else {
        let svd = b.clone().svd(true, false);
        let u = svd.u.expect("requested");
        let thr = tol * smax;
        let mut proj = DMatrix::<f64>::identity(b.nrows(), b.nrows());
        for (i, &sv) in svd.singular_values.iter().enumerate() {
            if sv > thr {
                let col = u.column(i);
                proj -= col * col.transpose();
            }
        }
        proj * a
    };
    let sv = singular_values(&a_eff);
    Some(sv.get(k_own - 1).copied().unwrap_or(0.0) / smax)
}

/// Mean squared error of the zero-forcing estimate `M⁺ y` of the own symbols,
/// per symbol and in units of the noise variance. `None` outside noisy mode,
/// for an empty flow, or when the flow is not decodable.
pub fn zero_forcing_mse(ledger: &SignalLedger, dest: Flow, tol: f64) -> Option<f64> {
    if !matches!(ledger.mode(), Mode::Noisy { .. }) {
        return None;
    }
    let k_own = ledger.symbol_count(dest) as usize;
    if k_own == 0 || !decodable(ledger, dest, tol) {
        return None;
    }
    let s = split(ledger, dest);
    let smax = singular_values(&s.m).first().copied().unwrap_or(0.0);
    let pinv = s.m.clone().pseudo_inverse(tol * smax).ok()?;
    let mut total = 0.0;
    for &j in &s.own {
        let w = pinv.row(j);
        let e = w * &s.noise;
        total += e.norm_squared();
    }
    Some(total / k_own as f64)
}
