//! Dirichlet eigenvalues of `−u″ + V u = λ u` on `[−L, L]` by shooting.
//!
//! The initial value problem `u(−L) = 0, u′(−L) = 1` is integrated with the
//! Taylor series integrator of [`crate::ode`]; eigenvalues are the zeros of
//! `λ ↦ u_λ(L)`, bracketed on a grid and refined by a safeguarded secant
//! iteration.

use serde::{Deserialize, Serialize};

use crate::ode::{integrate, LinearOde, OdeError, TaylorOptions, TaylorSolution};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Solver1dError {
    #[error("invalid problem: {0}")]
    InvalidProblem(&'static str),
    #[error("integrator failed at lambda = {lambda}: {source}")]
    Integrator { lambda: f64, source: OdeError },
    #[error("root refinement did not converge near lambda = {lambda}")]
    NoConvergence { lambda: f64 },
}

/// Polynomial potential `V(x) = Σ cᵢ xⁱ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Potential {
    pub coefficients: Vec<f64>,
}

impl Potential {
    pub fn zero() -> Self {
        Self {
            coefficients: vec![],
        }
    }

    /// `5(1 − x²)`.
    pub fn parabolic5() -> Self {
        Self {
            coefficients: vec![5.0, 0.0, -5.0],
        }
    }

    pub fn polynomial(coefficients: Vec<f64>) -> Self {
        Self { coefficients }
    }

    /// Built-in potentials by name.
    pub fn named(name: &str) -> Option<Self> {
        match name {
            "zero" => Some(Self::zero()),
            "parabolic5" => Some(Self::parabolic5()),
            _ => None,
        }
    }

    /// `V + c`.
    pub fn shifted(&self, c: f64) -> Self {
        let mut coefficients = self.coefficients.clone();
        if coefficients.is_empty() {
            coefficients.push(0.0);
        }
        coefficients[0] += c;
        Self { coefficients }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    /// Taylor coefficients at `x0` (Horner shifts).
    fn expand_at(&self, x0: f64, out: &mut [f64]) {
        out.iter_mut().for_each(|v| *v = 0.0);
        let mut c = self.coefficients.clone();
        let n = c.len();
        for k in 0..n {
            for j in (k..n - 1).rev() {
                c[j] += x0 * c[j + 1];
            }
            if k < out.len() {
                out[k] = c[k];
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Problem1D {
    pub half_length: f64,
    pub potential: Potential,
    /// Local truncation tolerance of the integrator.
    pub tol: f64,
}

impl Problem1D {
    pub fn new(half_length: f64, potential: Potential) -> Self {
        Self {
            half_length,
            potential,
            tol: 1e-15,
        }
    }

    fn validate(&self) -> Result<(), Solver1dError> {
        if !(self.half_length > 0.0 && self.half_length.is_finite()) {
            return Err(Solver1dError::InvalidProblem("L must be positive"));
        }
        if !(self.tol > 0.0) {
            return Err(Solver1dError::InvalidProblem("tolerance must be positive"));
        }
        if self.potential.coefficients.iter().any(|c| !c.is_finite()) {
            return Err(Solver1dError::InvalidProblem("non-finite potential coefficient"));
        }
        Ok(())
    }
}

struct Schrodinger<'a> {
    potential: &'a Potential,
    lambda: f64,
}

impl LinearOde<f64> for Schrodinger<'_> {
    fn expand(&self, x0: f64, p: &mut [f64], q: &mut [f64]) {
        p.iter_mut().for_each(|v| *v = 0.0);
        self.potential.expand_at(x0, q);
        for v in q.iter_mut() {
            *v = -*v;
        }
        q[0] += self.lambda;
    }

    fn rate(&self, x0: f64) -> f64 {
        (self.lambda - self.potential.eval(x0)).abs().sqrt() + 1.0
    }
}

/// Solution of the initial value problem on `[−L, L]` as a dense interpolant.
pub fn shooting_solution(p: &Problem1D, lambda: f64) -> Result<TaylorSolution<f64>, Solver1dError> {
    p.validate()?;
    let ode = Schrodinger {
        potential: &p.potential,
        lambda,
    };
    let opts = TaylorOptions {
        tol: p.tol,
        ..TaylorOptions::default()
    };
    integrate(&ode, -p.half_length, 0.0, 1.0, p.half_length, &opts)
        .map_err(|source| Solver1dError::Integrator { lambda, source })
}

/// `(u(L), u′(L))` for `u(−L) = 0, u′(−L) = 1`.
pub fn shoot(p: &Problem1D, lambda: f64) -> Result<(f64, f64), Solver1dError> {
    Ok(shooting_solution(p, lambda)?.end_state())
}

/// A refined eigenvalue and the shooting residual there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue1D {
    pub lambda: f64,
    pub residual: f64,
}

/// Zeros of `λ ↦ u_λ(L)` in `[lo, hi]`, ascending.
pub fn eigenvalues_1d(
    p: &Problem1D,
    lo: f64,
    hi: f64,
    step: f64,
) -> Result<Vec<Eigenvalue1D>, Solver1dError> {
    use rayon::prelude::*;
    p.validate()?;
    if !(lo < hi) || !(step > 0.0) {
        return Err(Solver1dError::InvalidProblem("need lo < hi and step > 0"));
    }
    let n = ((hi - lo) / step).ceil() as usize;
    let grid: Vec<f64> = (0..=n).map(|i| (lo + i as f64 * step).min(hi)).collect();
    let values = grid
        .par_iter()
        .map(|&l| shoot(p, l).map(|v| v.0))
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = Vec::new();
    for i in 0..n {
        let (a, b) = (grid[i], grid[i + 1]);
        let (fa, fb) = (values[i], values[i + 1]);
        if fa == 0.0 {
            out.push(Eigenvalue1D {
                lambda: a,
                residual: 0.0,
            });
        } else if fa * fb < 0.0 {
            out.push(refine_root(p, a, b, fa, fb)?);
        }
    }
    if values[n] == 0.0 {
        out.push(Eigenvalue1D {
            lambda: grid[n],
            residual: 0.0,
        });
    }
    Ok(out)
}

/// Secant iteration kept inside the sign-change bracket (bisection fallback).
fn refine_root(
    p: &Problem1D,
    mut a: f64,
    mut b: f64,
    mut fa: f64,
    mut fb: f64,
) -> Result<Eigenvalue1D, Solver1dError> {
    let scale = fa.abs().max(fb.abs());
    let (mut x0, mut f0, mut x1, mut f1) = (a, fa, b, fb);
    for _ in 0..200 {
        let mut x = x1 - f1 * (x1 - x0) / (f1 - f0);
        if !(x > a && x < b) {
            x = 0.5 * (a + b);
        }
        let fx = shoot(p, x)?.0;
        if fx.abs() <= 1e-12 * scale || (b - a) <= 4.0 * f64::EPSILON * x.abs().max(1.0) {
            return Ok(Eigenvalue1D {
                lambda: x,
                residual: fx,
            });
        }
        if fa * fx < 0.0 {
            b = x;
            fb = fx;
        } else {
            a = x;
            fa = fx;
        }
        x0 = x1;
        f0 = f1;
        x1 = x;
        f1 = fx;
        // stalled secant: take a bisection step
        if (x1 - x0).abs() > 0.5 * (b - a) {
            let m = 0.5 * (a + b);
            let fm = shoot(p, m)?.0;
            if fa * fm < 0.0 {
                b = m;
                fb = fm;
            } else {
                a = m;
                fa = fm;
            }
            x0 = a;
            f0 = fa;
            x1 = b;
            f1 = fb;
        }
    }
    Err(Solver1dError::NoConvergence {
        lambda: 0.5 * (a + b),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn free_shot_matches_closed_form() {
        let p = Problem1D::new(1.0, Potential::zero());
        let (u, du) = shoot(&p, 1.0).unwrap();
        assert!((u - 2f64.sin()).abs() < 1e-13);
        assert!((du - 2f64.cos()).abs() < 1e-13);
        let (u, _) = shoot(&p, PI * PI / 4.0).unwrap();
        assert!(u.abs() < 1e-13);
    }

    #[test]
    fn taylor_shift_of_potential() {
        let v = Potential::polynomial(vec![1.0, -2.0, 0.5, 3.0]);
        let mut c = [0.0; 6];
        v.expand_at(0.7, &mut c);
        let s: f64 = 0.3;
        let approx: f64 = c.iter().enumerate().map(|(i, ci)| ci * s.powi(i as i32)).sum();
        assert!((approx - v.eval(1.0)).abs() < 1e-13);
    }

    #[test]
    fn free_spectrum() {
        let p = Problem1D::new(1.0, Potential::zero());
        let ev = eigenvalues_1d(&p, 1.0, 25.0, 0.5).unwrap();
        assert_eq!(ev.len(), 3);
        for (n, e) in ev.iter().enumerate() {
            let exact = ((n + 1) as f64 * PI / 2.0).powi(2);
            assert!((e.lambda - exact).abs() < 1e-10);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let p = Problem1D::new(-1.0, Potential::zero());
        assert!(shoot(&p, 1.0).is_err());
        let p = Problem1D::new(1.0, Potential::zero());
        assert!(eigenvalues_1d(&p, 2.0, 1.0, 0.1).is_err());
    }
}
