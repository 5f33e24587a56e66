//! Pairs of pants and the cylinder pieces obtained by cutting them open.

use num_complex::Complex64 as C;

use super::hexagon::{right_angled_hexagon, Hexagon};
use super::hyperbolic::{tangent_to_fermi, Fermi, GeodesicArc};
use super::GeometryError;
use crate::specfun::GaussLegendre;

/// Pair of pants with boundary lengths `ℓ₁, ℓ₂, ℓ₃` built from two copies of the
/// right-angled hexagon with alternate sides `ℓᵢ/2`.
#[derive(Debug, Clone)]
pub struct Pants {
    pub lengths: [f64; 3],
    pub hexagon: Hexagon,
}

pub fn pants_from_lengths(l1: f64, l2: f64, l3: f64) -> Result<Pants, GeometryError> {
    Ok(Pants {
        lengths: [l1, l2, l3],
        hexagon: right_angled_hexagon(0.5 * l1, 0.5 * l2, 0.5 * l3)?,
    })
}

impl Pants {
    /// Area by Green's formula on the cut piece.
    pub fn area(&self) -> f64 {
        CylinderPiece::from_pants(0, self).area()
    }
}

/// The boundary pieces of a cut pants, in the Fermi chart of the core.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArcKind {
    /// The core geodesic `ρ = 0`, first boundary curve.
    Core,
    /// Second boundary curve (through the foot of `c3`).
    CuffNext,
    /// Third boundary curve (through the foot of `c2`).
    CuffPrev,
    /// The cut seam `c1` in the first hexagon.
    Seam,
    /// Its mirror image in the second hexagon.
    SeamMirror,
}

impl ArcKind {
    pub const ALL: [ArcKind; 5] = [
        ArcKind::Core,
        ArcKind::CuffNext,
        ArcKind::CuffPrev,
        ArcKind::Seam,
        ArcKind::SeamMirror,
    ];

    /// Boundary arc carrying cuff `slot` (0 = core).
    pub fn cuff(slot: usize) -> ArcKind {
        match slot {
            0 => ArcKind::Core,
            1 => ArcKind::CuffNext,
            _ => ArcKind::CuffPrev,
        }
    }
}

/// A point on a piece boundary with its outward unit normal in Fermi components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    pub fermi: Fermi,
    pub normal: (f64, f64),
}

impl BoundaryPoint {
    pub fn half_plane(&self) -> C {
        self.fermi.to_half_plane()
    }
}

/// Pants cut along the seam `c1` into a subset of the hyperbolic cylinder
/// around its first boundary curve.
///
/// The region is `H ∪ H'` where `H` is the hexagon of [`Hexagon`] (in
/// `0 ≤ t ≤ a1`) and `H'` its mirror image under `t ↦ −t`; the seams `c2`, `c3`
/// are interior and `c1`, `c1'` are the two sides of the cut.
#[derive(Debug, Clone)]
pub struct CylinderPiece {
    pub id: usize,
    pub core_length: f64,
    pub lengths: [f64; 3],
    pub hexagon: Hexagon,
    pub rho_max: f64,
    next: GeodesicArc,
    prev: GeodesicArc,
    seam: GeodesicArc,
}

fn outward(z: C, tangent: C) -> (f64, f64) {
    // clockwise rotation of the positively oriented tangent
    tangent_to_fermi(z, tangent * C::new(0.0, -1.0))
}

impl CylinderPiece {
    pub fn from_pants(id: usize, pants: &Pants) -> Self {
        let hex = pants.hexagon.clone();
        let [_, v2, v3, v4, v5, _] = hex.vertices;
        let next = GeodesicArc::shoot(v2, v2, hex.a[1]);
        let prev = GeodesicArc::shoot(v5, v5, hex.a[2]);
        let seam = GeodesicArc::between(v3, v4);
        let mut piece = Self {
            id,
            core_length: pants.lengths[0],
            lengths: pants.lengths,
            hexagon: hex,
            rho_max: 0.0,
            next,
            prev,
            seam,
        };
        let mut rmax: f64 = 0.0;
        for kind in [ArcKind::CuffNext, ArcKind::CuffPrev, ArcKind::Seam] {
            let len = piece.arc_length(kind);
            for i in 0..=64 {
                let p = piece.point(kind, len * i as f64 / 64.0);
                rmax = rmax.max(p.fermi.rho.abs());
            }
        }
        piece.rho_max = rmax + 0.1;
        piece
    }

    pub fn arc_length(&self, kind: ArcKind) -> f64 {
        match kind {
            ArcKind::Core => self.lengths[0],
            ArcKind::CuffNext => self.lengths[1],
            ArcKind::CuffPrev => self.lengths[2],
            ArcKind::Seam | ArcKind::SeamMirror => self.hexagon.c[0],
        }
    }

    /// Corner parameters of an arc (excluding seam end points).
    pub fn corners(&self, kind: ArcKind) -> Vec<f64> {
        match kind {
            ArcKind::Core => vec![],
            ArcKind::CuffNext => vec![0.0],
            ArcKind::CuffPrev => vec![0.5 * self.lengths[2]],
            ArcKind::Seam | ArcKind::SeamMirror => vec![0.0, self.hexagon.c[0]],
        }
    }

    /// Point and outward normal at parameter `s`.
    ///
    /// Cuffs are parameterized by arclength along the induced boundary
    /// orientation, starting at the foot of the seam towards the cyclically next
    /// cuff (`V1`, `V3`, `V5` for the three cuffs); `s` is taken modulo the cuff
    /// length. The seam is parameterized from `V3` to `V4` and the mirror seam at
    /// the mirror image of the same parameter.
    pub fn point(&self, kind: ArcKind, s: f64) -> BoundaryPoint {
        match kind {
            ArcKind::Core => BoundaryPoint {
                fermi: Fermi::new(0.0, -s),
                normal: (-1.0, 0.0),
            },
            ArcKind::CuffNext => {
                let l = self.lengths[1];
                let sigma = s.rem_euclid(l) - 0.5 * l;
                self.on_arc(&self.next, sigma)
            }
            ArcKind::CuffPrev => {
                let l = self.lengths[2];
                let mut sigma = s.rem_euclid(l);
                if sigma > 0.5 * l {
                    sigma -= l;
                }
                self.on_arc(&self.prev, sigma)
            }
            ArcKind::Seam => self.on_arc(&self.seam, s),
            ArcKind::SeamMirror => {
                let p = self.on_arc(&self.seam, s);
                BoundaryPoint {
                    fermi: p.fermi.mirror(),
                    normal: (p.normal.0, -p.normal.1),
                }
            }
        }
    }

    fn on_arc(&self, arc: &GeodesicArc, sigma: f64) -> BoundaryPoint {
        let z = arc.point(sigma);
        let w = arc.tangent(sigma);
        let fermi = Fermi::from_half_plane(z);
        let n = outward(z, w);
        // remove rounding drift from the unit normal
        let norm = (n.0 * n.0 + (fermi.rho.cosh() * n.1).powi(2)).sqrt();
        BoundaryPoint {
            fermi,
            normal: (n.0 / norm, n.1 / norm),
        }
    }

    /// Geodesic arc of a boundary piece as an image of the imaginary axis (the
    /// mirror seam is reported through its reflection).
    pub fn geodesic(&self, kind: ArcKind) -> Option<GeodesicArc> {
        match kind {
            ArcKind::Core => None,
            ArcKind::CuffNext => Some(self.next),
            ArcKind::CuffPrev => Some(self.prev),
            ArcKind::Seam | ArcKind::SeamMirror => Some(self.seam),
        }
    }

    /// Hyperbolic area by Green's formula `∮ sinh ρ dt` over the positively
    /// oriented boundary.
    pub fn area(&self) -> f64 {
        let gl = GaussLegendre::<f64>::new(24);
        let line = |arc: &GeodesicArc, a: f64, b: f64| {
            gl.composite(
                |s| {
                    let z = arc.point(s);
                    let (_, dt) = tangent_to_fermi(z, arc.tangent(s));
                    Fermi::from_half_plane(z).rho.sinh() * dt
                },
                a,
                b,
                16,
            )
        };
        let a2 = self.hexagon.a[1];
        let a3 = self.hexagon.a[2];
        let c1 = self.hexagon.c[0];
        // the mirror seam is traversed backwards, so it contributes like the seam
        line(&self.next, -a2, a2) + line(&self.prev, -a3, a3) + 2.0 * line(&self.seam, 0.0, c1)
    }
}
