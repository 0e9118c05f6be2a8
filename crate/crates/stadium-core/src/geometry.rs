//! Domain geometry: the stadium (rectangle with two semicircular end caps)
//! and the plain rectangle, both of half-height 1, centered at the origin.
//!
//! The boundary is four arcs indexed 0..=3, each parameterized over
//! t in [-1, 1] and traversed counterclockwise:
//!
//! * arc 0: bottom side, `L*t - i`
//! * arc 1: right end (semicircle `L + sin(theta) + i*cos(theta)` with
//!   `t = cos(theta)` for the stadium, vertical segment `L + i*t` for the
//!   rectangle)
//! * arc 2: top side, `-arc0(t)`
//! * arc 3: left end, `-arc1(t)`
//!
//! Arc k ends where arc k+1 (mod 4) begins: `arc_point(k, 1) ==
//! arc_point(k+1, -1)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// Domain shape selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DomainKind {
    Stadium,
    Rectangle,
}

/// Whether an arc is a straight segment or a semicircular cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcKind {
    Straight,
    Curved,
}

/// Which part of the boundary absorbed a random walk.
///
/// `Dome` means one of the two end arcs (1 or 3); for the rectangle these
/// are the vertical ends. `Side` means the flat top or bottom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HitClass {
    Dome,
    Side,
}

/// A stadium or rectangle of half-length `L` and half-height 1.
///
/// For the stadium, `L` is the half-length of the straight section; the
/// caps extend to `|x| = L + 1`. Construction enforces `L > 0` and finite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGeometry", into = "RawGeometry")]
pub struct DomainGeometry {
    kind: DomainKind,
    half_length: f64,
}

/// Serialized form: `{"kind": "Stadium", "L": 1.0}`.
#[derive(Serialize, Deserialize)]
struct RawGeometry {
    kind: DomainKind,
    #[serde(rename = "L")]
    half_length: f64,
}

impl TryFrom<RawGeometry> for DomainGeometry {
    type Error = Error;
    fn try_from(raw: RawGeometry) -> Result<Self> {
        DomainGeometry::new(raw.kind, raw.half_length)
    }
}

impl From<DomainGeometry> for RawGeometry {
    fn from(g: DomainGeometry) -> Self {
        RawGeometry {
            kind: g.kind,
            half_length: g.half_length,
        }
    }
}

impl DomainGeometry {
    pub fn new(kind: DomainKind, half_length: f64) -> Result<Self> {
        if !(half_length.is_finite() && half_length > 0.0) {
            return Err(Error::Domain(format!(
                "half-length must be positive and finite, got {half_length}"
            )));
        }
        Ok(DomainGeometry { kind, half_length })
    }

    pub fn stadium(half_length: f64) -> Result<Self> {
        Self::new(DomainKind::Stadium, half_length)
    }

    pub fn rectangle(half_length: f64) -> Result<Self> {
        Self::new(DomainKind::Rectangle, half_length)
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    /// Half-length of the straight section (`L`).
    pub fn half_length(&self) -> f64 {
        self.half_length
    }

    pub fn arc_kind(&self, arc: usize) -> ArcKind {
        match (self.kind, arc % 2) {
            (DomainKind::Stadium, 1) => ArcKind::Curved,
            _ => ArcKind::Straight,
        }
    }

    /// Boundary point of arc `arc` at parameter `t in [-1, 1]`.
    pub fn arc_point(&self, arc: usize, t: f64) -> Result<Complex64> {
        if arc > 3 {
            return Err(Error::Domain(format!("arc index {arc} out of range 0..=3")));
        }
        if !(t.is_finite() && (-1.0..=1.0).contains(&t)) {
            return Err(Error::Domain(format!("arc parameter {t} outside [-1, 1]")));
        }
        Ok(self.arc_point_unchecked(arc, t))
    }

    /// `arc_point` without range checks, for quadrature loops.
    #[inline]
    pub(crate) fn arc_point_unchecked(&self, arc: usize, t: f64) -> Complex64 {
        let l = self.half_length;
        let base = match arc % 2 {
            0 => Complex64::new(l * t, -1.0),
            _ => match self.kind {
                DomainKind::Stadium => Complex64::new(l + (1.0 - t * t).sqrt(), t),
                DomainKind::Rectangle => Complex64::new(l, t),
            },
        };
        if arc < 2 {
            base
        } else {
            -base
        }
    }

    /// Radius of the largest disk centered at `p` that fits inside the
    /// domain. Zero or negative means `p` is on or outside the boundary.
    pub fn inscribed_radius(&self, p: Complex64) -> f64 {
        let (x, y) = (p.re.abs(), p.im.abs());
        let l = self.half_length;
        match self.kind {
            // Distance 1 - d(p, spine), where the spine is the segment
            // [-L, L] on the real axis.
            DomainKind::Stadium => 1.0 - ((x - l).max(0.0).powi(2) + y * y).sqrt(),
            DomainKind::Rectangle => (l - x).min(1.0 - y),
        }
    }

    pub fn is_interior(&self, p: Complex64) -> bool {
        self.inscribed_radius(p) > 0.0
    }

    /// Classify a boundary (absorption) point: end caps vs flat sides.
    ///
    /// Stadium: `|Re p| > L` iff the nearest boundary component is a cap
    /// (exact except within O(h) of the four junction points); ties count
    /// as `Side`. Rectangle: interior points always have `|Re p| < L`, so
    /// the ends are identified by the nearest-component comparison
    /// instead, with the same tie rule.
    pub fn classify_hit(&self, p: Complex64) -> HitClass {
        let dome = match self.kind {
            DomainKind::Stadium => p.re.abs() > self.half_length,
            DomainKind::Rectangle => {
                self.half_length - p.re.abs() < 1.0 - p.im.abs()
            }
        };
        if dome {
            HitClass::Dome
        } else {
            HitClass::Side
        }
    }

    /// Distance from the origin to the boundary along direction
    /// `exp(i*psi)`.
    pub fn radial_extent(&self, psi: f64) -> f64 {
        let (s, c) = (psi.sin().abs(), psi.cos().abs());
        let l = self.half_length;
        match self.kind {
            DomainKind::Stadium => {
                // Exits through a flat side iff the crossing with y = +-1
                // happens at |x| <= L.
                if c <= l * s {
                    1.0 / s
                } else {
                    l * c + (l * c * l * c - l * l + 1.0).sqrt()
                }
            }
            DomainKind::Rectangle => {
                let through_end = if c > 0.0 { l / c } else { f64::INFINITY };
                let through_side = if s > 0.0 { 1.0 / s } else { f64::INFINITY };
                through_end.min(through_side)
            }
        }
    }
}
