//! Gauss–Legendre and adaptive Gauss–Kronrod quadrature.

use serde::{Deserialize, Serialize};

use super::SpecfunError;
use crate::real::Real;

/// Integration rule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleKind {
    /// Globally adaptive 7/15-point Gauss–Kronrod bisection.
    Adaptive,
    /// Fixed composite Gauss–Legendre with the given panel count (20 nodes per panel).
    Composite { panels: usize },
}

/// Integration contract for the semi-infinite r-integrals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec<T> {
    pub rule: RuleKind,
    pub abs_tol: T,
    /// Truncation radius for integrals over [0, ∞).
    pub r_max: T,
}

impl<T: Real> Default for QuadratureSpec<T> {
    fn default() -> Self {
        Self {
            rule: RuleKind::Adaptive,
            abs_tol: T::lit(1e-13),
            r_max: T::lit(16.0),
        }
    }
}

impl<T: Real> QuadratureSpec<T> {
    pub fn validate(&self) -> Result<(), SpecfunError> {
        if !(self.abs_tol > T::zero()) {
            return Err(SpecfunError::InvalidParameter("abs_tol must be > 0"));
        }
        if !(self.r_max > T::zero()) {
            return Err(SpecfunError::InvalidParameter("r_max must be > 0"));
        }
        if let RuleKind::Composite { panels: 0 } = self.rule {
            return Err(SpecfunError::InvalidParameter("composite rule needs panels"));
        }
        Ok(())
    }

    /// Copy with every tolerance knob scaled by `factor`.
    pub fn scaled(&self, factor: T) -> Self {
        Self {
            abs_tol: self.abs_tol * factor,
            ..*self
        }
    }

    /// Integrate `f` over `[a, b]` with this rule.
    pub fn integrate<F: Fn(T) -> T>(&self, f: F, a: T, b: T) -> Result<Estimate<T>, SpecfunError> {
        match self.rule {
            RuleKind::Adaptive => adaptive_gk15(&f, a, b, self.abs_tol),
            RuleKind::Composite { panels } => {
                let rule = GaussLegendre::<T>::new(20);
                let coarse = rule.composite(&f, a, b, panels);
                let fine = rule.composite(&f, a, b, 2 * panels);
                Ok(Estimate {
                    value: fine,
                    error: (fine - coarse).abs(),
                })
            }
        }
    }
}

/// A quadrature value with its absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub error: T,
}

/// Gauss–Legendre nodes and weights on [−1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    /// Nodes by Newton iteration on P_n; computed in f64 and cast.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![T::zero(); n];
        let mut weights = vec![T::zero(); n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0_f64, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                let pn = if n == 1 { x } else { p1 };
                let pnm1 = if n == 1 { 1.0 } else { p0 };
                dp = nf * (x * pn - pnm1) / (x * x - 1.0);
                let dx = pn / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = T::lit(-x);
            nodes[n - 1 - i] = T::lit(x);
            weights[i] = T::lit(w);
            weights[n - 1 - i] = T::lit(w);
        }
        Self { nodes, weights }
    }

    pub fn integrate<F: Fn(T) -> T>(&self, f: F, a: T, b: T) -> T {
        let half = T::lit(0.5) * (b - a);
        let mid = T::lit(0.5) * (a + b);
        let mut acc = T::zero();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + *w * f(mid + half * *x);
        }
        acc * half
    }

    pub fn composite<F: Fn(T) -> T>(&self, f: F, a: T, b: T, panels: usize) -> T {
        let h = (b - a) / T::count(panels);
        let mut acc = T::zero();
        for p in 0..panels {
            let lo = a + h * T::count(p);
            acc = acc + self.integrate(&f, lo, lo + h);
        }
        acc
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn gk15<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> (T, T) {
    let half = T::lit(0.5) * (b - a);
    let mid = T::lit(0.5) * (a + b);
    let fc = f(mid);
    let mut kron = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    for j in 0..7 {
        let dx = half * T::lit(XGK[j]);
        let s = f(mid - dx) + f(mid + dx);
        kron = kron + T::lit(WGK[j]) * s;
        if j % 2 == 1 {
            gauss = gauss + T::lit(WG[j / 2]) * s;
        }
    }
    (kron * half, ((kron - gauss) * half).abs())
}

/// Globally adaptive Gauss–Kronrod: bisect the worst interval until the summed
/// error estimate falls below `tol`.
pub fn adaptive_gk15<T: Real, F: Fn(T) -> T>(
    f: &F,
    a: T,
    b: T,
    tol: T,
) -> Result<Estimate<T>, SpecfunError> {
    const MAX_INTERVALS: usize = 4000;
    let (v, e) = gk15(f, a, b);
    let mut intervals = vec![(a, b, v, e)];
    loop {
        let (total, err) = intervals
            .iter()
            .fold((T::zero(), T::zero()), |(s, r), iv| (s + iv.2, r + iv.3));
        if err <= tol {
            return Ok(Estimate {
                value: total,
                error: err,
            });
        }
        if intervals.len() >= MAX_INTERVALS {
            return Err(SpecfunError::ToleranceNotMet {
                achieved: err.to_f64().unwrap_or(f64::NAN),
                requested: tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        let (worst, _) = intervals
            .iter()
            .enumerate()
            .fold((0, T::neg_infinity()), |(bi, be), (i, iv)| {
                if iv.3 > be {
                    (i, iv.3)
                } else {
                    (bi, be)
                }
            });
        let (lo, hi, _, _) = intervals.swap_remove(worst);
        let m = T::lit(0.5) * (lo + hi);
        if !(m > lo && m < hi) {
            return Err(SpecfunError::ToleranceNotMet {
                achieved: err.to_f64().unwrap_or(f64::NAN),
                requested: tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        let (v1, e1) = gk15(f, lo, m);
        let (v2, e2) = gk15(f, m, hi);
        intervals.push((lo, m, v1, e1));
        intervals.push((m, hi, v2, e2));
    }
}
