//! Separated solutions of the Helmholtz equation on a hyperbolic cylinder.
//!
//! In Fermi coordinates `(ρ, t)` around a closed geodesic of length ℓ (metric
//! `dρ² + cosh²ρ dt²`) the ansatz `Φ_k(ρ)·trig(2πk t/ℓ)` reduces `(−Δ − λ)Φ = 0` to
//!
//! ```text
//! Φ'' + tanh(ρ) Φ' + (λ − κ sech²ρ) Φ = 0,   κ = 4π²k²/ℓ²
//! ```
//!
//! which is integrated from `ρ = 0` with initial data `(1, 0)` (even) or `(0, 1)` (odd).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::ode::{self, LinearOde, OdeError, TaylorOptions};
use crate::TaylorSolution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Angular {
    Cos,
    Sin,
}

/// Index of a separated mode: Fourier number, radial parity, angular factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModeIndex {
    k: usize,
    parity: Parity,
    angular: Angular,
}

impl ModeIndex {
    pub fn new(k: usize, parity: Parity, angular: Angular) -> Result<Self, ModeError> {
        if k == 0 && angular == Angular::Sin {
            return Err(ModeError::InvalidMode);
        }
        Ok(Self { k, parity, angular })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn angular(&self) -> Angular {
        self.angular
    }

    /// All modes with Fourier number ≤ n: `2(2n+1)` of them, ordered by k, parity, angular.
    pub fn all_up_to(n: usize) -> Vec<ModeIndex> {
        let mut out = Vec::with_capacity(2 * (2 * n + 1));
        for k in 0..=n {
            for parity in [Parity::Even, Parity::Odd] {
                out.push(ModeIndex { k, parity, angular: Angular::Cos });
                if k > 0 {
                    out.push(ModeIndex { k, parity, angular: Angular::Sin });
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModeError {
    #[error("k = 0 admits only the cos angular part")]
    InvalidMode,
    #[error("core length and rho_max must be positive")]
    InvalidGeometry,
    #[error("radial integration failed: {0}")]
    Integrator(#[from] OdeError),
    #[error("rho = {rho} outside the solved range [-{rho_max}, {rho_max}]")]
    OutOfRange { rho: f64, rho_max: f64 },
    #[error("normal is not unit length in the Fermi metric (norm² = {norm2})")]
    NotUnitNormal { norm2: f64 },
}

struct RadialOde {
    lambda: f64,
    kappa: f64,
}

impl LinearOde<f64> for RadialOde {
    fn expand(&self, x0: f64, p: &mut [f64], q: &mut [f64]) {
        let n = p.len();
        // tanh' = 1 − tanh², so (m+1) T_{m+1} = δ_{m0} − Σ T_i T_{m−i}
        let mut tanh = vec![0.0; n + 1];
        tanh[0] = x0.tanh();
        for m in 0..n {
            let mut conv = 0.0;
            for i in 0..=m {
                conv += tanh[i] * tanh[m - i];
            }
            let rhs = if m == 0 { 1.0 - conv } else { -conv };
            tanh[m + 1] = rhs / (m + 1) as f64;
        }
        for m in 0..n {
            p[m] = tanh[m];
            // sech² = tanh'
            q[m] = -self.kappa * (m + 1) as f64 * tanh[m + 1];
        }
        q[0] += self.lambda;
    }

    fn rate(&self, x0: f64) -> f64 {
        let sech = 1.0 / x0.cosh();
        (self.lambda.abs() + self.kappa * sech * sech).sqrt() + 1.0
    }
}

/// Initial-value normalized radial solution with dense output on `[−ρ_max, ρ_max]`.
#[derive(Debug, Clone)]
pub struct RadialSolution {
    core_length: f64,
    mode: ModeIndex,
    lambda: f64,
    rho_max: f64,
    sol: TaylorSolution,
}

/// Integrate the radial equation for `mode` on a cylinder with core length `ell`.
pub fn solve_radial(
    ell: f64,
    mode: ModeIndex,
    lambda: f64,
    rho_max: f64,
) -> Result<RadialSolution, ModeError> {
    solve_radial_with(ell, mode, lambda, rho_max, &TaylorOptions::default())
}

pub fn solve_radial_with(
    ell: f64,
    mode: ModeIndex,
    lambda: f64,
    rho_max: f64,
    opts: &TaylorOptions<f64>,
) -> Result<RadialSolution, ModeError> {
    if !(ell > 0.0 && rho_max > 0.0) {
        return Err(ModeError::InvalidGeometry);
    }
    let kf = mode.k as f64;
    let ode = RadialOde {
        lambda,
        kappa: 4.0 * PI * PI * kf * kf / (ell * ell),
    };
    let (y0, dy0) = match mode.parity {
        Parity::Even => (1.0, 0.0),
        Parity::Odd => (0.0, 1.0),
    };
    let sol = ode::integrate(&ode, 0.0, y0, dy0, rho_max, opts)?;
    Ok(RadialSolution {
        core_length: ell,
        mode,
        lambda,
        rho_max,
        sol,
    })
}

impl RadialSolution {
    pub fn mode(&self) -> ModeIndex {
        self.mode
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn core_length(&self) -> f64 {
        self.core_length
    }

    pub fn rho_max(&self) -> f64 {
        self.rho_max
    }

    /// `(Φ(ρ), Φ'(ρ))`; negative ρ by parity.
    pub fn radial(&self, rho: f64) -> Result<(f64, f64), ModeError> {
        let out = || ModeError::OutOfRange {
            rho,
            rho_max: self.rho_max,
        };
        if !(rho.abs() <= self.rho_max) {
            return Err(out());
        }
        let (v, d) = self.sol.eval(rho.abs()).ok_or_else(out)?;
        Ok(match (rho < 0.0, self.mode.parity) {
            (false, _) => (v, d),
            (true, Parity::Even) => (v, -d),
            (true, Parity::Odd) => (-v, d),
        })
    }

    /// Value and coordinate partials `(f, ∂_ρ f, ∂_t f)` of `Φ(ρ)·trig(2πk t/ℓ)`
    /// with the angular factor of this solution's mode.
    pub fn mode_value_and_gradient(&self, rho: f64, t: f64) -> Result<(f64, f64, f64), ModeError> {
        self.value_and_gradient_as(self.mode.angular, rho, t)
    }

    /// As [`Self::mode_value_and_gradient`] with an explicit angular factor; the
    /// radial part does not depend on it.
    pub fn value_and_gradient_as(
        &self,
        angular: Angular,
        rho: f64,
        t: f64,
    ) -> Result<(f64, f64, f64), ModeError> {
        let (phi, dphi) = self.radial(rho)?;
        let omega = 2.0 * PI * self.mode.k as f64 / self.core_length;
        let (s, c) = (omega * t).sin_cos();
        let (trig, dtrig) = match angular {
            Angular::Cos => (c, -omega * s),
            Angular::Sin => (s, omega * c),
        };
        Ok((phi * trig, dphi * trig, phi * dtrig))
    }

    /// Directional derivative along a Fermi-unit vector `(n_ρ, n_t)` at `(ρ, t)`.
    pub fn directional_normal_derivative(
        &self,
        point: (f64, f64),
        normal: (f64, f64),
    ) -> Result<f64, ModeError> {
        let (rho, t) = point;
        let ch = rho.cosh();
        let norm2 = normal.0 * normal.0 + ch * ch * normal.1 * normal.1;
        if (norm2 - 1.0).abs() > 1e-10 {
            return Err(ModeError::NotUnitNormal { norm2 });
        }
        let (_, dr, dt) = self.mode_value_and_gradient(rho, t)?;
        Ok(normal.0 * dr + normal.1 * dt)
    }
}

/// The closed-form fundamental system in terms of ₂F₁ (complex parameters),
/// already normalized to the same initial data as [`solve_radial`]. Used as a
/// cross-check for moderate ρ.
pub fn hypergeometric_mode(
    ell: f64,
    k: usize,
    parity: Parity,
    lambda: f64,
    rho: f64,
) -> Result<num_complex::Complex64, crate::specfun::SpecfunError> {
    use num_complex::Complex64 as C;
    // λ = s(1 − s)
    let disc = C::new(0.25 - lambda, 0.0).sqrt();
    let s = C::new(0.5, 0.0) + disc;
    let ik = C::new(0.0, PI * k as f64 / ell);
    let z = -rho.sinh().powi(2);
    let ch_pow = (C::new(0.0, 2.0 * PI * k as f64 / ell) * rho.cosh().ln()).exp();
    Ok(match parity {
        Parity::Even => {
            let f = crate::specfun::hyp2f1(s / 2.0 + ik, (C::new(1.0, 0.0) - s) / 2.0 + ik, 0.5, z)?;
            ch_pow * f.value
        }
        Parity::Odd => {
            let f = crate::specfun::hyp2f1(
                (C::new(1.0, 0.0) + s) / 2.0 + ik,
                (C::new(2.0, 0.0) - s) / 2.0 + ik,
                1.5,
                z,
            )?;
            ch_pow * f.value * rho.sinh()
        }
    })
}
