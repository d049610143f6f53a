//! Exact-predicate geometric primitives over points and closed disks.
//!
//! All intersection and containment decisions in the crate go through this
//! module. Predicates compare squared distances, so for coordinates that are
//! exactly representable in `f64` the answers are free of square-root noise,
//! and tangency consistently counts as intersection (closed-disk semantics).

use std::fmt;
use thiserror::Error;

pub type VertexId = u32;

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("coordinate is not finite: {0}")]
    NonFinite(f64),
    #[error("radius must be positive and finite, got {0}")]
    BadRadius(f64),
    #[error("duplicate disk id {0}")]
    DuplicateId(VertexId),
    #[error("disk ids must be exactly 0..n-1, missing id {0}")]
    NonContiguousIds(VertexId),
    #[error("median of an empty list")]
    EmptyMedian,
    #[error("unit instance requires radius 1/2, disk {id} has radius {radius}")]
    NotUnitRadius { id: VertexId, radius: f64 },
    #[error("disk {id} violates the delta-disk constraints")]
    NotDeltaDisk { id: VertexId },
    #[error("expected a {expected} instance, got {got}")]
    KindMismatch { expected: Kind, got: Kind },
}

/// A point of the Euclidean plane with finite coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Result<Self, GeometryError> {
        if !x.is_finite() {
            return Err(GeometryError::NonFinite(x));
        }
        if !y.is_finite() {
            return Err(GeometryError::NonFinite(y));
        }
        Ok(Point { x, y })
    }

    pub fn dist_sq(&self, other: &Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A closed disk with a vertex identifier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub id: VertexId,
    pub center: Point,
    pub radius: f64,
}

impl Disk {
    pub fn new(id: VertexId, center: Point, radius: f64) -> Result<Self, GeometryError> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(GeometryError::BadRadius(radius));
        }
        Ok(Disk { id, center, radius })
    }
}

/// True iff the closed disks have a common point (tangency included).
pub fn disks_intersect(a: &Disk, b: &Disk) -> bool {
    let r = a.radius + b.radius;
    a.center.dist_sq(&b.center) <= r * r
}

/// True iff `p` lies in the closed disk `d` (boundary included).
pub fn point_in_disk(p: &Point, d: &Disk) -> bool {
    p.dist_sq(&d.center) <= d.radius * d.radius
}

/// Lower median: the element of rank `ceil(n/2)` of the sorted list.
///
/// For even-length input this is the smaller of the two middle elements,
/// which is what the separator balance arguments need: at least `ceil(n/2)`
/// of the values are `<=` the returned one.
pub fn median_coordinate(values: &[f64]) -> Result<f64, GeometryError> {
    if values.is_empty() {
        return Err(GeometryError::EmptyMedian);
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(sorted[(sorted.len() - 1) / 2])
}

/// Class of a disk instance: plain disks, unit disks (all radii 1/2), or a
/// delta-disk representation (every disk meets both positive axes and misses
/// the origin).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    General,
    Unit,
    Delta,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::General => write!(f, "general"),
            Kind::Unit => write!(f, "unit"),
            Kind::Delta => write!(f, "delta"),
        }
    }
}

/// Per-disk check of the delta-disk representation constraints:
/// `x > 0`, `y > 0`, `max(x, y) <= r` and `r^2 < x^2 + y^2`.
pub fn is_delta_disk(d: &Disk) -> bool {
    let (x, y, r) = (d.center.x, d.center.y, d.radius);
    x > 0.0 && y > 0.0 && x.max(y) <= r && r * r < x * x + y * y
}

/// A finite set of closed disks with ids `0..n-1`, tagged with its kind.
///
/// The kind tag is validated at construction: `Unit` requires every radius to
/// be exactly `1/2`, `Delta` requires every disk to pass [`is_delta_disk`].
/// Disks are stored sorted by id, so id and list position coincide.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskInstance {
    kind: Kind,
    disks: Vec<Disk>,
}

impl DiskInstance {
    pub fn new(kind: Kind, mut disks: Vec<Disk>) -> Result<Self, GeometryError> {
        disks.sort_by_key(|d| d.id);
        if let Some(w) = disks.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(GeometryError::DuplicateId(w[0].id));
        }
        for (i, d) in disks.iter().enumerate() {
            if d.id != i as VertexId {
                return Err(GeometryError::NonContiguousIds(i as VertexId));
            }
        }
        match kind {
            Kind::Unit => {
                for d in &disks {
                    if d.radius != 0.5 {
                        return Err(GeometryError::NotUnitRadius {
                            id: d.id,
                            radius: d.radius,
                        });
                    }
                }
            }
            Kind::Delta => {
                for d in &disks {
                    if !is_delta_disk(d) {
                        return Err(GeometryError::NotDeltaDisk { id: d.id });
                    }
                }
            }
            Kind::General => {}
        }
        Ok(DiskInstance { kind, disks })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.disks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.disks.is_empty()
    }

    pub fn disks(&self) -> &[Disk] {
        &self.disks
    }

    pub fn disk(&self, id: VertexId) -> &Disk {
        &self.disks[id as usize]
    }
}
