//! Heat trace from the geometric side, heat coefficients, `R_N(t)` and the
//! heat-kernel completeness certificate.

use serde::{Deserialize, Serialize};

use super::{par_sum, SelbergError, SpectralInput};
use crate::geometry::LengthSpectrum;
use crate::specfun::{heat_moment, identity_term_integral, Estimate, QuadratureSpec};

/// `Vol e^{−t/4}/(4πt) ∫₀^∞ π e^{−r²t} sech²(πr) dr`.
pub fn identity_heat_term(vol: f64, t: f64, q: &QuadratureSpec<f64>) -> Result<Estimate<f64>, SelbergError> {
    let i = identity_term_integral(t, q)?;
    let f = vol * (-0.25 * t).exp() / (4.0 * std::f64::consts::PI * t);
    Ok(Estimate {
        value: f * i.value,
        error: f * i.error,
    })
}

/// `Σ_n ℓ e^{−n²ℓ²/(4t)} / (2 sinh(nℓ/2))` over all windings of one primitive length.
fn winding_sum(l: f64, t: f64) -> f64 {
    let mut acc = 0.0;
    for n in 1..10_000 {
        let nl = n as f64 * l;
        let e = -nl * nl / (4.0 * t);
        // ℓ e^{e} / (2 sinh(nℓ/2)) without overflow
        let term = l * (e - 0.5 * nl).exp() / (1.0 - (-nl).exp());
        acc += term;
        if term <= 1e-18 * acc || term == 0.0 {
            break;
        }
    }
    acc
}

/// Geodesic part of the heat trace and a bound for primitive lengths beyond `l_max`.
pub fn geodesic_heat_term(lengths: &LengthSpectrum, t: f64) -> (f64, f64) {
    let pre = (-0.25 * t).exp() / (4.0 * std::f64::consts::PI * t).sqrt();
    let value = pre * par_sum(&lengths.entries, |&(l, m)| m as f64 * winding_sum(l, t));
    // windings at least double the single-winding term only by a tiny margin
    let tail = pre * lengths.tail_bound(|x| 2.0 * x * (-x * x / (4.0 * t) - 0.5 * x).exp() / (1.0 - (-x).exp()));
    (value, tail)
}

/// Geometric side of the heat trace `tr e^{tΔ}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeatTrace {
    pub t: f64,
    pub value: f64,
    pub identity: f64,
    pub geodesic: f64,
    pub quadrature_error: f64,
    pub length_tail: f64,
}

impl HeatTrace {
    pub fn error(&self) -> f64 {
        self.quadrature_error + self.length_tail
    }
}

pub fn heat_trace_geometric(
    t: f64,
    input: &SpectralInput,
    q: &QuadratureSpec<f64>,
) -> Result<HeatTrace, SelbergError> {
    if !(t > 0.0) {
        return Err(SelbergError::InvalidInput("t must be positive".into()));
    }
    let id = identity_heat_term(input.vol, t, q)?;
    let (geo, tail) = geodesic_heat_term(&input.lengths, t);
    Ok(HeatTrace {
        t,
        value: id.value + geo,
        identity: id.value,
        geodesic: geo,
        quadrature_error: id.error,
        length_tail: tail,
    })
}

/// `a_k = Vol/(4π)·(−1)^k/k!·m_k − δ_{1k}` for `k = 0..=k_max`.
pub fn heat_coefficients(
    vol: f64,
    k_max: usize,
    q: &QuadratureSpec<f64>,
) -> Result<Vec<Estimate<f64>>, SelbergError> {
    let c = vol / (4.0 * std::f64::consts::PI);
    let mut fact = 1.0;
    let mut out = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        if k > 0 {
            fact *= k as f64;
        }
        let m = heat_moment(k, q)?;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let delta = if k == 1 { 1.0 } else { 0.0 };
        out.push(Estimate {
            value: c * sign * m.value / fact - delta,
            error: c * m.error / fact,
        });
    }
    Ok(out)
}

/// Samples of `R_N(t) = Σ_{j≤N} e^{−λ_j t} − identity term`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RnCurve {
    pub n: usize,
    pub samples: Vec<(f64, f64)>,
    /// Sample with the smallest `|R_N|`.
    pub crossover: f64,
}

impl RnCurve {
    /// Number of sign changes between consecutive samples.
    pub fn sign_changes(&self) -> usize {
        self.samples
            .windows(2)
            .filter(|w| (w[0].1 < 0.0) != (w[1].1 < 0.0))
            .count()
    }
}

/// `R̃_N(t)` for a list `μ_0 … μ_N` counted with multiplicity.
fn r_tilde(mu: &[f64], vol: f64, t: f64, q: &QuadratureSpec<f64>) -> Result<f64, SelbergError> {
    let spectral = par_sum(mu, |&l| (-l * t).exp());
    Ok(spectral - identity_heat_term(vol, t, q)?.value)
}

pub fn r_n_curve(
    input: &SpectralInput,
    n: usize,
    ts: &[f64],
    q: &QuadratureSpec<f64>,
) -> Result<RnCurve, SelbergError> {
    let mu = input.truncated(n)?;
    let mut samples = Vec::with_capacity(ts.len());
    for &t in ts {
        if !(t > 0.0) {
            return Err(SelbergError::InvalidInput("t must be positive".into()));
        }
        samples.push((t, r_tilde(&mu, input.vol, t, q)?));
    }
    let crossover = samples
        .iter()
        .min_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .map(|s| s.0)
        .unwrap_or(f64::NAN);
    Ok(RnCurve {
        n,
        samples,
        crossover,
    })
}

/// First positive root of `cos ν cosh ν = 1` (Newton from 4.73).
pub fn nu() -> f64 {
    let mut x: f64 = 4.73;
    for _ in 0..50 {
        let f = x.cos() * x.cosh() - 1.0;
        let df = x.cos() * x.sinh() - x.sin() * x.cosh();
        let dx = f / df;
        x -= dx;
        if dx.abs() < 1e-16 * x {
            break;
        }
    }
    x
}

/// Heat-kernel completeness certificate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub t: f64,
    pub big_t: f64,
    pub nu: f64,
    /// Explicit upper bound for the geodesic part at `t`.
    pub f_bound: f64,
    /// `√(T/t)·tr(e^{TΔ})·e^{T/4+ℓ₀²/4T−ℓ₀²/4t}` with the trace from the geometric side.
    pub f_trace: Option<f64>,
    pub r_tilde: f64,
    /// No eigenvalue is missing from the list below this value.
    pub lambda_max: f64,
}

/// Certify that `mu` (counted with multiplicity, `μ_0 = 0`) contains every
/// eigenvalue below the returned `λ_max`.
pub fn completeness_certificate(
    mu: &[f64],
    vol: f64,
    systole: f64,
    lengths: Option<&LengthSpectrum>,
    t: f64,
    big_t: f64,
    q: &QuadratureSpec<f64>,
) -> Result<Certificate, SelbergError> {
    let l0 = systole;
    if !(t > 0.0 && t < big_t && big_t < (l0 * l0 + 1.0).sqrt() - 1.0) {
        return Err(SelbergError::CertificateParameters);
    }
    let nu = nu();
    let pi = std::f64::consts::PI;
    let expo = (0.25 * big_t + l0 * l0 / (4.0 * big_t) - l0 * l0 / (4.0 * t)).exp();
    let bracket = 1.0 / big_t.sqrt()
        + (2.0 * nu * nu + nu * pi) / (pi.sqrt() * l0)
        + big_t.sqrt() * (4.0 * nu.powi(3) + 2.0 * nu * nu * pi) / (pi * l0 * l0);
    let f_bound = vol / (4.0 * pi) / t.sqrt() * expo * bracket;
    let f_trace = match lengths {
        Some(ls) => {
            let input = SpectralInput {
                vol,
                eigenvalues: vec![(0.0, 1)],
                uncertainties: vec![0.0],
                lengths: ls.clone(),
            };
            let tr = heat_trace_geometric(big_t, &input, q)?.value;
            Some((big_t / t).sqrt() * tr * expo)
        }
        None => None,
    };
    let r = r_tilde(mu, vol, t, q)?;
    let gap = f_bound - r;
    let base = Certificate {
        t,
        big_t,
        nu,
        f_bound,
        f_trace,
        r_tilde: r,
        lambda_max: f64::NAN,
    };
    if !(gap > 0.0) {
        return Err(SelbergError::NoCertificate(gap));
    }
    Ok(Certificate {
        lambda_max: -gap.ln() / t,
        ..base
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nu_solves_equation() {
        let v = nu();
        assert!((v.cos() * v.cosh() - 1.0).abs() < 1e-9);
        assert!((v - 4.73).abs() < 1e-2);
    }

    #[test]
    fn bolza_heat_coefficients() {
        let q = QuadratureSpec::default();
        let a = heat_coefficients(4.0 * std::f64::consts::PI, 2, &q).unwrap();
        assert!((a[0].value - 1.0).abs() < 1e-12);
        assert!((a[1].value + 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn winding_sum_matches_direct_terms() {
        let (l, t) = (3.0, 2.0);
        let direct: f64 = (1..60)
            .map(|n| {
                let nl = n as f64 * l;
                l * (-nl * nl / (4.0 * t)).exp() / (2.0 * (0.5 * nl).sinh())
            })
            .sum();
        assert!((winding_sum(l, t) - direct).abs() < 1e-15);
    }
}
