//! High-order Taylor series integrator for linear second order ODEs
//!
//! ```text
//! y'' + p(x) y' + q(x) y = 0
//! ```
//!
//! with analytic coefficients supplied as local Taylor expansions. Each accepted
//! step stores its Taylor polynomial, so the solution carries an exact dense
//! interpolant (value and derivative) over the whole integration range.

use crate::real::Real;

/// Coefficient functions of `y'' + p y' + q y = 0`.
pub trait LinearOde<T: Real> {
    /// Fill `p[n]`, `q[n]` with the Taylor coefficients of p and q at `x0`.
    fn expand(&self, x0: T, p: &mut [T], q: &mut [T]);

    /// Local oscillation/growth rate used to pick the initial step size.
    fn rate(&self, x0: T) -> T;
}

#[derive(Debug, Clone, Copy)]
pub struct TaylorOptions<T> {
    /// Truncation order of the local Taylor polynomials.
    pub order: usize,
    /// Relative local truncation tolerance.
    pub tol: T,
    pub max_step: T,
    pub max_steps: usize,
}

impl<T: Real> Default for TaylorOptions<T> {
    fn default() -> Self {
        Self {
            order: 30,
            tol: T::lit(1e-15),
            max_step: T::lit(0.4),
            max_steps: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OdeError {
    #[error("step size underflow at x = {x}")]
    StepUnderflow { x: f64 },
    #[error("too many steps (stopped at x = {x})")]
    TooManySteps { x: f64 },
    #[error("non-finite solution at x = {x}")]
    NonFinite { x: f64 },
    #[error("invalid integration interval")]
    InvalidInterval,
}

#[derive(Debug, Clone)]
struct Segment<T> {
    x0: T,
    h: T,
    coeffs: Vec<T>,
}

/// Piecewise Taylor polynomial solution on `[start, end]`.
#[derive(Debug, Clone)]
pub struct TaylorSolution<T> {
    start: T,
    end: T,
    segments: Vec<Segment<T>>,
}

impl<T: Real> TaylorSolution<T> {
    pub fn start(&self) -> T {
        self.start
    }

    pub fn end(&self) -> T {
        self.end
    }

    pub fn steps(&self) -> usize {
        self.segments.len()
    }

    fn segment(&self, x: T) -> Option<&Segment<T>> {
        if x < self.start || x > self.end {
            return None;
        }
        let idx = self.segments.partition_point(|s| s.x0 <= x);
        Some(&self.segments[idx.saturating_sub(1)])
    }

    /// `(y(x), y'(x))`, or `None` outside the integration range.
    pub fn eval(&self, x: T) -> Option<(T, T)> {
        let seg = self.segment(x)?;
        let s = x - seg.x0;
        let c = &seg.coeffs;
        let mut y = T::zero();
        let mut dy = T::zero();
        for n in (0..c.len()).rev() {
            y = y * s + c[n];
            if n > 0 {
                dy = dy * s + T::count(n) * c[n];
            }
        }
        Some((y, dy))
    }

    /// Value and derivative at the right end point.
    pub fn end_state(&self) -> (T, T) {
        let seg = self.segments.last().expect("non-empty solution");
        let c = &seg.coeffs;
        let mut y = T::zero();
        let mut dy = T::zero();
        for n in (0..c.len()).rev() {
            y = y * seg.h + c[n];
            if n > 0 {
                dy = dy * seg.h + T::count(n) * c[n];
            }
        }
        (y, dy)
    }
}

/// Integrate `y'' + p y' + q y = 0` from `x0` (with `y = y0`, `y' = dy0`) to `x_end > x0`.
pub fn integrate<T: Real, O: LinearOde<T>>(
    ode: &O,
    x0: T,
    y0: T,
    dy0: T,
    x_end: T,
    opts: &TaylorOptions<T>,
) -> Result<TaylorSolution<T>, OdeError> {
    if !(x_end > x0) {
        return Err(OdeError::InvalidInterval);
    }
    let k = opts.order.max(4);
    let mut p = vec![T::zero(); k + 1];
    let mut q = vec![T::zero(); k + 1];
    let mut segments = Vec::new();
    let (mut x, mut y, mut dy) = (x0, y0, dy0);
    let three = T::lit(3.0);
    let min_step = (x_end - x0) * T::epsilon() * T::lit(16.0);

    while x < x_end {
        if segments.len() >= opts.max_steps {
            return Err(OdeError::TooManySteps {
                x: x.to_f64().unwrap_or(f64::NAN),
            });
        }
        ode.expand(x, &mut p, &mut q);
        let mut h = (three / (ode.rate(x) + T::epsilon())).min(opts.max_step);
        let remaining = x_end - x;
        if h >= remaining {
            h = remaining;
        }
        let mut c = vec![T::zero(); k + 1];
        c[0] = y;
        c[1] = dy;
        for n in 0..=(k - 2) {
            let mut acc = T::zero();
            for i in 0..=n {
                acc = acc + p[i] * T::count(n - i + 1) * c[n - i + 1] + q[i] * c[n - i];
            }
            c[n + 2] = -acc / (T::count(n + 1) * T::count(n + 2));
        }
        loop {
            // tail of the local series relative to its size
            let mut scale = T::zero();
            let mut hp = T::one();
            for cn in &c {
                scale = scale.max(cn.abs() * hp);
                hp = hp * h;
            }
            let tail = c[k].abs() * h.powi(k as i32) + c[k - 1].abs() * h.powi(k as i32 - 1);
            if tail <= opts.tol * scale || h <= min_step {
                break;
            }
            h = h * T::lit(0.5);
            if h <= min_step {
                return Err(OdeError::StepUnderflow {
                    x: x.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        let seg = Segment { x0: x, h, coeffs: c };
        let last = h >= x_end - x;
        segments.push(seg);
        let sol_tail = segments.last().unwrap();
        let tmp = TaylorSolution {
            start: sol_tail.x0,
            end: sol_tail.x0 + sol_tail.h,
            segments: vec![sol_tail.clone()],
        };
        let (ny, ndy) = tmp.end_state();
        if !(ny.is_finite() && ndy.is_finite()) {
            return Err(OdeError::NonFinite {
                x: x.to_f64().unwrap_or(f64::NAN),
            });
        }
        y = ny;
        dy = ndy;
        x = if last { x_end } else { x + h };
    }
    Ok(TaylorSolution {
        start: x0,
        end: x_end,
        segments,
    })
}
