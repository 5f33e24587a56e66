//! Right-angled hexagons placed in the Fermi chart of the `a1` side.

use num_complex::Complex64 as C;

use super::hyperbolic::{angle_cos, distance, Fermi, GeodesicArc};
use super::GeometryError;

/// Right-angled hexagon with alternate sides `a1, a2, a3` and opposite sides
/// `c1, c2, c3` (`c_i` is opposite `a_i`).
///
/// Vertices in cyclic order `V1 … V6` with sides
/// `V1V2 = c3`, `V2V3 = a2`, `V3V4 = c1`, `V4V5 = a3`, `V5V6 = c2`, `V6V1 = a1`.
/// The side `a1` lies on the imaginary axis (`V1 = i`, `V6 = i e^{a1}`), `c3` on
/// the Fermi line `t = 0` and `c2` on `t = a1`, with the hexagon at `ρ ≥ 0`.
#[derive(Debug, Clone)]
pub struct Hexagon {
    pub a: [f64; 3],
    pub c: [f64; 3],
    pub vertices: [C; 6],
}

/// Tolerance of the mandatory closure check.
pub const CLOSURE_TOL: f64 = 1e-10;

fn opposite(ai: f64, aj: f64, ak: f64) -> f64 {
    ((ai.cosh() + aj.cosh() * ak.cosh()) / (aj.sinh() * ak.sinh())).acosh()
}

/// Build and verify the right-angled hexagon with alternate sides `a1, a2, a3`.
pub fn right_angled_hexagon(a1: f64, a2: f64, a3: f64) -> Result<Hexagon, GeometryError> {
    if !(a1 > 0.0 && a2 > 0.0 && a3 > 0.0) || !(a1 + a2 + a3).is_finite() {
        return Err(GeometryError::InvalidLength);
    }
    let c1 = opposite(a1, a2, a3);
    let c2 = opposite(a2, a3, a1);
    let c3 = opposite(a3, a1, a2);

    let v1 = Fermi::new(0.0, 0.0).to_half_plane();
    let v6 = Fermi::new(0.0, a1).to_half_plane();
    let p2 = Fermi::new(c3, 0.0);
    let p5 = Fermi::new(c2, a1);
    let v2 = p2.to_half_plane();
    let v5 = p5.to_half_plane();
    // unit t-direction at (ρ, t) is z·sech ρ
    let side_a2 = GeodesicArc::shoot(v2, v2, a2);
    let side_a3 = GeodesicArc::shoot(v5, -v5, a3);
    let v3 = side_a2.end();
    let v4 = side_a3.end();

    let hex = Hexagon {
        a: [a1, a2, a3],
        c: [c1, c2, c3],
        vertices: [v1, v2, v3, v4, v5, v6],
    };
    hex.verify()?;
    Ok(hex)
}

impl Hexagon {
    /// Side lengths in cyclic order starting at `V1V2`.
    pub fn sides(&self) -> [f64; 6] {
        let [a1, a2, a3] = self.a;
        let [c1, c2, c3] = self.c;
        [c3, a2, c1, a3, c2, a1]
    }

    /// Interior angles at `V1 … V6` (radians), measured from the placed vertices.
    pub fn angles(&self) -> [f64; 6] {
        let v = &self.vertices;
        let mut out = [0.0; 6];
        for i in 0..6 {
            let prev = v[(i + 5) % 6];
            let next = v[(i + 1) % 6];
            let w1 = GeodesicArc::between(v[i], prev).tangent(0.0);
            let w2 = GeodesicArc::between(v[i], next).tangent(0.0);
            out[i] = angle_cos(w1, w2).clamp(-1.0, 1.0).acos();
        }
        out
    }

    /// Check measured side lengths and right angles against the trigonometric data.
    pub fn verify(&self) -> Result<(), GeometryError> {
        let v = &self.vertices;
        let sides = self.sides();
        for i in 0..6 {
            let d = distance(v[i], v[(i + 1) % 6]);
            if (d - sides[i]).abs() > CLOSURE_TOL * (1.0 + sides[i]) {
                return Err(GeometryError::HexagonClosure {
                    residual: (d - sides[i]).abs(),
                });
            }
        }
        for ang in self.angles() {
            let r = (ang - std::f64::consts::FRAC_PI_2).abs();
            if r > CLOSURE_TOL {
                return Err(GeometryError::HexagonClosure { residual: r });
            }
        }
        Ok(())
    }
}
