//! Isometries of the Poincaré disk as Möbius coefficient quadruples.
//!
//! A transform is `z ↦ (a·σ(z) + b)/(c·σ(z) + d)` with `σ` either the
//! identity (orientation-preserving) or conjugation (reversing, as every
//! reflection is).  Coefficients are renormalized after composition to keep
//! magnitudes from drifting.

use num_complex::Complex64;

/// A geodesic of the disk: a diameter, or a circle orthogonal to the unit
/// circle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Geodesic {
    /// Through the origin, along direction `angle`.
    Diameter { angle: f64 },
    /// Supporting circle with `|center|² = 1 + radius²`.
    Arc { center: Complex64, radius: f64 },
}

/// Distance from the origin at which a chord is considered to lie on a
/// diameter.
pub const DIAMETER_TOLERANCE: f64 = 1e-9;

/// The geodesic through two distinct points of the open disk.
pub fn geodesic_through(z1: Complex64, z2: Complex64) -> Geodesic {
    let chord = z2 - z1;
    let chord_len = chord.norm();
    assert!(chord_len > 1e-14, "geodesic endpoints must be distinct");
    // Perpendicular distance from the origin to the chord's line.
    let cross = z1.re * z2.im - z1.im * z2.re;
    if (cross / chord_len).abs() < DIAMETER_TOLERANCE {
        return Geodesic::Diameter {
            angle: chord.im.atan2(chord.re),
        };
    }
    // Orthogonality to the unit circle pins the supporting circle's center:
    // 2·(z·center) = |z|² + 1 for both endpoints (real dot product).
    let r1 = z1.norm_sqr() + 1.0;
    let r2 = z2.norm_sqr() + 1.0;
    let det = 2.0 * cross;
    let cx = (r1 * z2.im - r2 * z1.im) / det;
    let cy = (r2 * z1.re - r1 * z2.re) / det;
    let center = Complex64::new(cx, cy);
    let radius = (center.norm_sqr() - 1.0).sqrt();
    Geodesic::Arc { center, radius }
}

/// A disk isometry in coefficient form.
#[derive(Clone, Copy, Debug)]
pub struct Mobius {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
    /// Conjugate the argument first (orientation-reversing maps).
    anti: bool,
}

impl Mobius {
    pub fn identity() -> Self {
        Mobius {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
            anti: false,
        }
    }

    /// Reflection (hyperbolic) across a geodesic: a Euclidean reflection for
    /// diameters, the inversion in the supporting circle otherwise.
    pub fn reflection(geodesic: &Geodesic) -> Self {
        match *geodesic {
            Geodesic::Diameter { angle } => Mobius {
                a: Complex64::from_polar(1.0, 2.0 * angle),
                b: Complex64::new(0.0, 0.0),
                c: Complex64::new(0.0, 0.0),
                d: Complex64::new(1.0, 0.0),
                anti: true,
            },
            Geodesic::Arc { center, radius } => Mobius {
                a: center,
                b: Complex64::new(radius * radius - center.norm_sqr(), 0.0),
                c: Complex64::new(1.0, 0.0),
                d: -center.conj(),
                anti: true,
            }
            .renormalized(),
        }
    }

    pub fn is_reversing(&self) -> bool {
        self.anti
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        let w = if self.anti { z.conj() } else { z };
        (self.a * w + self.b) / (self.c * w + self.d)
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Mobius) -> Mobius {
        let (oa, ob, oc, od) = if self.anti {
            (other.a.conj(), other.b.conj(), other.c.conj(), other.d.conj())
        } else {
            (other.a, other.b, other.c, other.d)
        };
        Mobius {
            a: self.a * oa + self.b * oc,
            b: self.a * ob + self.b * od,
            c: self.c * oa + self.d * oc,
            d: self.c * ob + self.d * od,
            anti: self.anti != other.anti,
        }
        .renormalized()
    }

    /// Scales the quadruple to unit Frobenius norm; projectively the same
    /// map, numerically bounded.
    pub fn renormalized(self) -> Mobius {
        let scale = (self.a.norm_sqr() + self.b.norm_sqr() + self.c.norm_sqr() + self.d.norm_sqr())
            .sqrt();
        if scale == 0.0 {
            return self;
        }
        Mobius {
            a: self.a / scale,
            b: self.b / scale,
            c: self.c / scale,
            d: self.d / scale,
            anti: self.anti,
        }
    }

    /// Largest coefficient-wise deviation from the identity map, up to the
    /// projective phase.  Orientation-reversing maps are never the identity.
    pub fn deviation_from_identity(&self) -> f64 {
        if self.anti {
            return f64::INFINITY;
        }
        let m = self.renormalized();
        let pivot = if m.a.norm() >= m.d.norm() { m.a } else { m.d };
        if pivot.norm() < 1e-300 {
            return f64::INFINITY;
        }
        let phase = pivot.conj() / pivot.norm();
        // The renormalized identity has a = d = 1/√2 and b = c = 0.
        let diag = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        [
            (m.a * phase - diag).norm(),
            (m.d * phase - diag).norm(),
            (m.b * phase).norm(),
            (m.c * phase).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}
