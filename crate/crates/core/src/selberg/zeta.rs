//! Spectral zeta function and determinant of the Laplacian.
//!
//! The Mellin integral of the heat trace (without `λ₀ = 0`) is split at `ε`:
//! above `ε` the spectral side is used, below `ε` the geometric side with
//! the identity term expanded to order `N` and its remainder integrated
//! against `π sech²(πr)`.

use serde::{Deserialize, Serialize};

use super::heat::heat_coefficients;
use super::{par_sum, weyl_density, SelbergError, SpectralInput};
use crate::specfun::{
    quadrature::adaptive_gk15, exp_integral_e1, exp_integral_e2, moment_tail_bound, pi_sech2,
    recip_gamma, upper_gamma, Estimate, GaussLegendre, QuadratureSpec, EULER_GAMMA,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ZetaOptions {
    /// Split point of the Mellin integral.
    pub epsilon: f64,
    /// Order of the small-t expansion of the identity term.
    pub n_heat: usize,
    pub quadrature: QuadratureSpec<f64>,
}

impl Default for ZetaOptions {
    fn default() -> Self {
        Self {
            epsilon: 0.1,
            n_heat: 8,
            quadrature: QuadratureSpec::default(),
        }
    }
}

impl ZetaOptions {
    fn validate(&self) -> Result<(), SelbergError> {
        if !(self.epsilon > 0.0 && self.epsilon <= 1.0) {
            return Err(SelbergError::InvalidInput("epsilon must lie in (0, 1]".into()));
        }
        if self.n_heat == 0 || self.n_heat > 30 {
            return Err(SelbergError::InvalidInput("n_heat must lie in 1..=30".into()));
        }
        self.quadrature.validate()?;
        Ok(())
    }
}

/// Error budget, one line per source.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Budget {
    /// Eigenvalues above the list (twice the Weyl estimate) and the
    /// propagated eigenvalue uncertainties.
    pub spectral_tail: f64,
    /// Primitive lengths above `l_max`.
    pub length_tail: f64,
    pub quadrature: f64,
    /// `r > r_max` part of the remainder integral.
    pub heat_truncation: f64,
    pub total: f64,
}

impl Budget {
    fn new(spectral_tail: f64, length_tail: f64, quadrature: f64, heat_truncation: f64) -> Self {
        Self {
            spectral_tail,
            length_tail,
            quadrature,
            heat_truncation,
            total: spectral_tail + length_tail + quadrature + heat_truncation,
        }
    }

    fn scaled(self, f: f64) -> Self {
        let f = f.abs();
        Self::new(
            f * self.spectral_tail,
            f * self.length_tail,
            f * self.quadrature,
            f * self.heat_truncation,
        )
    }
}

/// Parameters an evaluation was computed with.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaParameters {
    pub epsilon: f64,
    /// Eigenvalues counted with multiplicity, `λ₀` included.
    pub n_eigen: usize,
    pub n_heat: usize,
    pub l_max: f64,
}

impl ZetaParameters {
    fn new(input: &SpectralInput, opts: &ZetaOptions) -> Self {
        Self {
            epsilon: opts.epsilon,
            n_eigen: input.eigenvalues.iter().map(|e| e.1).sum(),
            n_heat: opts.n_heat,
            l_max: input.lengths.l_max,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaEvaluation {
    pub s: f64,
    pub value: f64,
    pub budget: Budget,
    pub parameters: ZetaParameters,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetEvaluation {
    /// `ζ′(0)`.
    pub zeta_prime: f64,
    /// `log det Δ = −ζ′(0)`.
    pub log_det: f64,
    pub det: f64,
    /// Budget on `ζ′(0)`.
    pub budget: Budget,
    /// Central difference `(ζ(h) − ζ(−h))/2h` with `h = 1e-4`.
    pub zeta_prime_fd: f64,
    pub parameters: ZetaParameters,
}

/// Non-positive integer `s = −m`, if `s` is one.
fn non_positive_integer(s: f64) -> Option<usize> {
    (s <= 0.0 && s == s.round() && s > -1e6).then(|| (-s) as usize)
}

/// `∫_0^ε t^{s−2}(e^{−xt} − Σ_{k≤N}(−xt)^k/k!) dt`.
fn remainder_integral(s: f64, x: f64, eps: f64, n: usize, gl: &GaussLegendre<f64>) -> f64 {
    let y = x * eps;
    // Σ_{k>N} (−1)^k c^k/(k!(s+k−1)) with c = y or 1
    let series = |c: f64| {
        let mut term = 1.0;
        for k in 1..=n {
            term *= -c / k as f64;
        }
        let mut acc = 0.0;
        for k in n + 1..n + 400 {
            term *= -c / k as f64;
            let d = term / (s + k as f64 - 1.0);
            acc += d;
            if d.abs() <= 1e-17 * acc.abs() {
                break;
            }
        }
        acc
    };
    if y < 1.0 {
        return eps.powf(s - 1.0) * series(y);
    }
    let integrand = |u: f64| {
        let mut p = 1.0;
        let mut term = 1.0;
        for k in 1..=n {
            term *= -u / k as f64;
            p += term;
        }
        u.powf(s - 2.0) * ((-u).exp() - p)
    };
    let panels = y.ceil() as usize;
    x.powf(1.0 - s) * (series(1.0) + gl.composite(integrand, 1.0, y, panels))
}

/// `Σ_n ∫_0^ε t^{s−1} e^{−t/4}/√(4πt) · ℓ e^{−n²ℓ²/4t}/(2 sinh(nℓ/2)) dt` for one
/// primitive length.
fn geodesic_mellin(s: f64, l: f64, eps: f64, tol: f64) -> Result<Estimate<f64>, SelbergError> {
    let f = |t: f64| {
        if t <= 0.0 {
            return 0.0;
        }
        let pre = t.powf(s - 1.5) * (-0.25 * t).exp() / (4.0 * std::f64::consts::PI).sqrt();
        let mut acc = 0.0;
        for n in 1..1000 {
            let nl = n as f64 * l;
            let term = l * (-nl * nl / (4.0 * t) - 0.5 * nl).exp() / (1.0 - (-nl).exp());
            acc += term;
            if term <= 1e-18 * acc || term == 0.0 {
                break;
            }
        }
        pre * acc
    };
    Ok(adaptive_gk15(&f, 0.0, eps, tol)?)
}

/// Upper bound of the single-winding integrand over `(0, ε]`, doubled for windings.
fn geodesic_bound(s: f64, x: f64, eps: f64) -> f64 {
    let pre = eps * eps.powf(s - 1.5) / (4.0 * std::f64::consts::PI).sqrt();
    2.0 * pre * x * (-x * x / (4.0 * eps) - 0.5 * x).exp() / (1.0 - (-x).exp())
}

/// Geodesic part and its length-tail and quadrature errors.
fn geodesic_part(input: &SpectralInput, s: f64, eps: f64, tol: f64) -> Result<(f64, f64, f64), SelbergError> {
    let mut value = 0.0;
    let mut quad = 0.0;
    for &(l, m) in &input.lengths.entries {
        if geodesic_bound(s, l, eps) < 1e-300 {
            break;
        }
        let e = geodesic_mellin(s, l, eps, tol)?;
        value += m as f64 * e.value;
        quad += m as f64 * e.error;
    }
    let tail = input.lengths.tail_bound(|x| geodesic_bound(s, x, eps));
    Ok((value, tail, quad))
}

/// Spectral tail beyond the list: `2·Vol/(4π)∫_Λ^∞ g(λ) dλ` plus `Σ m|g′(λ)|δλ`.
fn spectral_tail<G, D>(input: &SpectralInput, eps: f64, g: G, dg: D, tol: f64) -> Result<f64, SelbergError>
where
    G: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let lam = input.lambda_max().max(1e-3);
    let w = adaptive_gk15(&|l: f64| g(l), lam, lam + 80.0 / eps, tol)?;
    let weyl = 2.0 * weyl_density(input.vol) * (w.value.abs() + w.error);
    let propagated: f64 = input
        .eigenvalues
        .iter()
        .zip(&input.uncertainties)
        .skip(1)
        .map(|(&(l, m), &d)| m as f64 * dg(l).abs() * d)
        .sum();
    Ok(weyl + propagated)
}

/// Spectral zeta function `ζ(s) = Σ_{λ>0} λ^{−s}` continued to all real
/// `s ≠ 1` with `s > −n_heat` or `s` a non-positive integer.
pub fn zeta(input: &SpectralInput, s: f64, opts: &ZetaOptions) -> Result<ZetaEvaluation, SelbergError> {
    opts.validate()?;
    if !s.is_finite() {
        return Err(SelbergError::InvalidInput("s must be finite".into()));
    }
    if s == 1.0 {
        return Err(SelbergError::Pole(s));
    }
    let q = &opts.quadrature;
    if let Some(m) = non_positive_integer(s) {
        let a = heat_coefficients(input.vol, m + 1, q)?;
        let mut fact = 1.0;
        for k in 1..=m {
            fact *= k as f64;
        }
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(ZetaEvaluation {
            s,
            value: sign * fact * a[m + 1].value,
            budget: Budget::new(0.0, 0.0, fact * a[m + 1].error, 0.0),
            parameters: ZetaParameters::new(input, opts),
        });
    }
    let n = opts.n_heat;
    if s <= -(n as f64) {
        return Err(SelbergError::InvalidInput(format!(
            "s = {s} needs n_heat > {}",
            -s.floor()
        )));
    }
    let eps = opts.epsilon;

    // T1: spectral side above ε
    let spectral: Vec<(f64, usize)> = input.eigenvalues[1..].to_vec();
    let terms = spectral
        .iter()
        .map(|&(l, m)| Ok(m as f64 * l.powf(-s) * upper_gamma(s, eps * l)?))
        .collect::<Result<Vec<_>, SelbergError>>()?;
    let t1 = par_sum(&terms, |&v| v);

    // T2: expanded identity term below ε
    let a = heat_coefficients(input.vol, n, q)?;
    let mut t2 = 0.0;
    let mut t2_err = 0.0;
    for (k, ak) in a.iter().enumerate() {
        let e = s + k as f64 - 1.0;
        t2 += ak.value * eps.powf(e) / e;
        t2_err += ak.error * (eps.powf(e) / e).abs();
    }

    // T3: remainder of the identity term
    let gl = GaussLegendre::new(20);
    let t3i = adaptive_gk15(
        &|r: f64| pi_sech2(r) * remainder_integral(s, r * r + 0.25, eps, n, &gl),
        0.0,
        q.r_max,
        q.abs_tol,
    )?;
    let c = weyl_density(input.vol);
    let t3 = c * t3i.value;
    let trunc_denom = s + n as f64;
    let mut fact = 1.0;
    for k in 1..=n + 1 {
        fact *= k as f64;
    }
    let heat_trunc = c * eps.powf(trunc_denom) / (fact * trunc_denom) * moment_tail_bound(n + 1, q.r_max);

    // T4: geodesic part below ε
    let (t4, length_tail, t4_err) = geodesic_part(input, s, eps, q.abs_tol)?;

    let g = |l: f64| l.powf(-s) * upper_gamma(s, eps * l).unwrap_or(f64::INFINITY);
    let dg = |l: f64| {
        s * l.powf(-s - 1.0) * upper_gamma(s, eps * l).unwrap_or(f64::INFINITY)
            + eps.powf(s) * (-eps * l).exp() / l
    };
    let spec_tail = spectral_tail(input, eps, g, dg, q.abs_tol)?;

    let rg = recip_gamma(s);
    let value = rg * (t1 + t2 + t3 + t4);
    let budget = Budget::new(spec_tail, length_tail, t2_err + c * t3i.error + t4_err, heat_trunc).scaled(rg);
    Ok(ZetaEvaluation {
        s,
        value,
        budget,
        parameters: ZetaParameters::new(input, opts),
    })
}

/// `J(x) = ∫_0^ε t^{−2}(e^{−xt} − 1 + xt) dt`.
fn j_integral(x: f64, eps: f64) -> Result<f64, SelbergError> {
    let y = x * eps;
    if y < 2.0 {
        let mut term = -y;
        let mut acc = 0.0;
        for k in 2..200 {
            term *= -y / k as f64;
            let d = term / (k as f64 - 1.0);
            acc += d;
            if d.abs() <= 1e-17 * acc.abs() {
                break;
            }
        }
        return Ok(acc / eps);
    }
    Ok((1.0 - exp_integral_e2(y)?) / eps + x * (EULER_GAMMA - 1.0 + y.ln()))
}

/// `ζ′(0)` and `det Δ = exp(−ζ′(0))`.
pub fn log_det(input: &SpectralInput, opts: &ZetaOptions) -> Result<DetEvaluation, SelbergError> {
    opts.validate()?;
    let q = &opts.quadrature;
    let eps = opts.epsilon;
    let c = weyl_density(input.vol);

    let terms = input.eigenvalues[1..]
        .iter()
        .map(|&(l, m)| Ok(m as f64 * exp_integral_e1(eps * l)?))
        .collect::<Result<Vec<_>, SelbergError>>()?;
    let l1 = par_sum(&terms, |&v| v);

    let m1 = 1.0 / 3.0;
    let a1 = -c * m1 - 1.0;
    let ji = adaptive_gk15(
        &|r: f64| pi_sech2(r) * j_integral(r * r + 0.25, eps).unwrap_or(f64::NAN),
        0.0,
        q.r_max,
        q.abs_tol,
    )?;
    if !ji.value.is_finite() {
        return Err(SelbergError::InvalidInput("exponential integral failed".into()));
    }
    let l2 = -c / eps + a1 * (EULER_GAMMA + eps.ln()) + c * ji.value;
    let heat_trunc = c * eps / 2.0 * moment_tail_bound(2, q.r_max);

    let (l3, length_tail, l3_err) = geodesic_part(input, 0.0, eps, q.abs_tol)?;

    let g = |l: f64| exp_integral_e1(eps * l).unwrap_or(f64::INFINITY);
    let dg = |l: f64| (-eps * l).exp() / l;
    let spec_tail = spectral_tail(input, eps, g, dg, q.abs_tol)?;

    let zp = l1 + l2 + l3;
    let h = 1e-4;
    let fd = (zeta(input, h, opts)?.value - zeta(input, -h, opts)?.value) / (2.0 * h);
    Ok(DetEvaluation {
        zeta_prime: zp,
        log_det: -zp,
        det: (-zp).exp(),
        budget: Budget::new(spec_tail, length_tail, c * ji.error + l3_err, heat_trunc),
        zeta_prime_fd: fd,
        parameters: ZetaParameters::new(input, opts),
    })
}
