//! Upper half-plane model, Fermi charts and geodesic arcs.
//!
//! A Fermi chart around the imaginary axis is
//! `z = e^t (tanh ρ + i sech ρ)`; it is holomorphic in `t + i·gd(ρ)`-like
//! coordinates, so `dz/z = dt − i sech ρ dρ`.

use num_complex::Complex64 as C;

/// Point in Fermi coordinates around the imaginary axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fermi {
    pub rho: f64,
    pub t: f64,
}

impl Fermi {
    pub fn new(rho: f64, t: f64) -> Self {
        Self { rho, t }
    }

    pub fn to_half_plane(self) -> C {
        let e = self.t.exp();
        C::new(e * self.rho.tanh(), e / self.rho.cosh())
    }

    pub fn from_half_plane(z: C) -> Self {
        let r = z.norm();
        Self {
            rho: (z.re / r).atanh(),
            t: r.ln(),
        }
    }

    /// Reflection across the geodesic `t = 0`.
    pub fn mirror(self) -> Self {
        Self {
            rho: self.rho,
            t: -self.t,
        }
    }
}

/// Half-plane tangent vector `w` at `z` to Fermi components `(dρ, dt)`.
pub fn tangent_to_fermi(z: C, w: C) -> (f64, f64) {
    let q = w / z;
    let rho = Fermi::from_half_plane(z).rho;
    (-q.im * rho.cosh(), q.re)
}

/// Fermi components `(dρ, dt)` at `p` to a half-plane tangent vector.
pub fn fermi_to_tangent(p: Fermi, drho: f64, dt: f64) -> C {
    p.to_half_plane() * C::new(dt, -drho / p.rho.cosh())
}

/// Hyperbolic length of a tangent vector.
pub fn tangent_norm(z: C, w: C) -> f64 {
    w.norm() / z.im
}

pub fn distance(z: C, w: C) -> f64 {
    let d = (z - w).norm_sqr();
    (1.0 + d / (2.0 * z.im * w.im)).acosh()
}

/// Element of PSL(2, ℝ) acting by `z ↦ (az + b)/(cz + d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mobius {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mobius {
    pub const IDENTITY: Mobius = Mobius {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    /// Elliptic rotation about `i` turning tangent directions by `2α`.
    pub fn rotation(alpha: f64) -> Self {
        let (s, c) = alpha.sin_cos();
        Self {
            a: c,
            b: s,
            c: -s,
            d: c,
        }
    }

    /// `z ↦ x + y z`, sending `i` to `x + iy`.
    pub fn affine_to(z: C) -> Self {
        Self {
            a: z.im,
            b: z.re,
            c: 0.0,
            d: 1.0,
        }
    }

    pub fn apply(&self, z: C) -> C {
        (z * self.a + self.b) / (z * self.c + self.d)
    }

    pub fn derivative(&self, z: C) -> C {
        let den = z * self.c + self.d;
        (self.a * self.d - self.b * self.c) / (den * den)
    }

    pub fn compose(&self, o: &Mobius) -> Mobius {
        Mobius {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> Mobius {
        let det = self.a * self.d - self.b * self.c;
        Mobius {
            a: self.d / det,
            b: -self.b / det,
            c: -self.c / det,
            d: self.a / det,
        }
    }
}

/// Unit-speed geodesic `s ↦ M(i e^s)` for `s ∈ [s0, s1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicArc {
    pub map: Mobius,
    pub s0: f64,
    pub s1: f64,
}

impl GeodesicArc {
    /// Geodesic starting at `z` with initial tangent direction `w` (any length).
    pub fn shoot(z: C, w: C, length: f64) -> Self {
        let a = Mobius::affine_to(z);
        // direction at i after pulling back by the affine map is w itself (scaled)
        let theta = w.arg();
        let k = Mobius::rotation(0.5 * (theta - std::f64::consts::FRAC_PI_2));
        Self {
            map: a.compose(&k),
            s0: 0.0,
            s1: length,
        }
    }

    /// Geodesic segment from `z1` to `z2`.
    pub fn between(z1: C, z2: C) -> Self {
        let a = Mobius::affine_to(z1);
        let p = a.inverse().apply(z2);
        // disk image of p seen from i; tangent at i is proportional to i·φ(p)
        let disk = (p - C::i()) / (p + C::i());
        let dir = C::i() * disk;
        let w = dir * z1.im;
        Self::shoot(z1, w, distance(z1, z2))
    }

    pub fn length(&self) -> f64 {
        self.s1 - self.s0
    }

    /// Point at arclength `s` (absolute parameter, not offset from `s0`).
    pub fn point(&self, s: f64) -> C {
        self.map.apply(C::new(0.0, s.exp()))
    }

    /// Unit tangent at arclength `s`.
    pub fn tangent(&self, s: f64) -> C {
        let u = C::new(0.0, s.exp());
        self.map.derivative(u) * u
    }

    pub fn start(&self) -> C {
        self.point(self.s0)
    }

    pub fn end(&self) -> C {
        self.point(self.s1)
    }

    /// Center and radius of the supporting circle (`None` for vertical lines).
    pub fn circle(&self) -> Option<(f64, f64)> {
        let m = &self.map;
        // end points at infinity: M(0) = b/d, M(∞) = a/c
        if m.c.abs() < 1e-300 || m.d.abs() < 1e-300 {
            return None;
        }
        let x0 = m.b / m.d;
        let x1 = m.a / m.c;
        Some((0.5 * (x0 + x1), 0.5 * (x1 - x0).abs()))
    }
}

/// Euclidean inner product of two tangent vectors at the same point, normalized.
pub fn angle_cos(w1: C, w2: C) -> f64 {
    (w1 * w2.conj()).re / (w1.norm() * w2.norm())
}
