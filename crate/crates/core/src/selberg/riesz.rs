//! Riesz-mean test of an eigenvalue list and the Weyl-law check.

use serde::{Deserialize, Serialize};

use super::{weyl_density, SelbergError};

/// `F(t) = (1/t)·Σ_{√λ ≤ t}(t − √λ) − Vol/(12π)·(t² − 1)` over the listed
/// eigenvalues (with multiplicity, `λ₀ = 0` included). It stays bounded when the
/// list is complete up to `t²` and drifts once an eigenvalue is missing.
pub fn riesz_test(vol: f64, eigenvalues: &[(f64, usize)], ts: &[f64]) -> Result<Vec<(f64, f64)>, SelbergError> {
    if !(vol > 0.0) {
        return Err(SelbergError::InvalidInput("volume must be positive".into()));
    }
    if eigenvalues.iter().any(|e| !(e.0 >= 0.0)) {
        return Err(SelbergError::InvalidInput("eigenvalues must be non-negative".into()));
    }
    let roots: Vec<(f64, f64)> = eigenvalues.iter().map(|&(l, m)| (l.sqrt(), m as f64)).collect();
    ts.iter()
        .map(|&t| {
            if !(t > 0.0) {
                return Err(SelbergError::InvalidInput("t must be positive".into()));
            }
            let s: f64 = roots
                .iter()
                .filter(|r| r.0 <= t)
                .map(|&(r, m)| m * (t - r))
                .sum();
            Ok((t, s / t - vol / (12.0 * std::f64::consts::PI) * (t * t - 1.0)))
        })
        .collect()
}

/// Least-squares fit of `N(λ)` against `λ` over the upper half of the list.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeylFit {
    pub slope: f64,
    /// `Vol/(4π)`.
    pub expected: f64,
    pub relative_error: f64,
}

pub fn weyl_check(vol: f64, eigenvalues: &[(f64, usize)]) -> Result<WeylFit, SelbergError> {
    let mut count = 0usize;
    let mut pts = Vec::with_capacity(eigenvalues.len());
    for &(l, m) in eigenvalues {
        count += m;
        pts.push((l, count as f64));
    }
    let upper = &pts[pts.len() / 2..];
    if upper.len() < 2 {
        return Err(SelbergError::InvalidInput("need at least four eigenvalues".into()));
    }
    let n = upper.len() as f64;
    let mx = upper.iter().map(|p| p.0).sum::<f64>() / n;
    let my = upper.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = upper.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = upper.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if !(sxx > 0.0) {
        return Err(SelbergError::InvalidInput("eigenvalues must be distinct".into()));
    }
    let slope = sxy / sxx;
    let expected = weyl_density(vol);
    Ok(WeylFit {
        slope,
        expected,
        relative_error: (slope - expected).abs() / expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn riesz_of_single_eigenvalue() {
        let v = riesz_test(12.0 * std::f64::consts::PI, &[(0.0, 1)], &[1.0, 2.0]).unwrap();
        assert!((v[0].1 - 1.0).abs() < 1e-15);
        assert!((v[1].1 - (1.0 - 3.0)).abs() < 1e-15);
    }

    #[test]
    fn weyl_slope_of_linear_counting() {
        let vol = 4.0 * std::f64::consts::PI;
        let list: Vec<(f64, usize)> = (0..100).map(|i| (i as f64, 1)).collect();
        let fit = weyl_check(vol, &list).unwrap();
        assert!(fit.relative_error < 1e-12);
    }
}
