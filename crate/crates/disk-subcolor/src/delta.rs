//! Delta-disk representations: validation, the co-comparability order, the
//! two-clique balanced separator, the logarithmic coloring and the
//! constant-factor approximation.
//!
//! A delta-disk representation places every disk so that it meets both
//! positive coordinate axes but misses the origin. Such graphs admit a
//! balanced separator made of two cliques (disks around the points X and X'
//! on the diagonal), which yields a 2-colors-per-halving recursion, and a
//! layer/MIS/sector structure that colors each layer with at most 54 colors
//! while the layer count is itself a lower bound on the subchromatic number.

use thiserror::Error;

use crate::geometry::{
    disks_intersect, is_delta_disk, median_coordinate, point_in_disk, Disk, DiskInstance,
    GeometryError, Kind, Point, VertexId,
};
use crate::graph::{validate_subcoloring, BitRow, Coloring, GraphError, IntersectionGraph};

#[derive(Debug, Error)]
pub enum DeltaError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("separator invariant violated: {0}")]
    SeparatorInvariant(&'static str),
    #[error("sector {sector} of the clique partition is not a clique")]
    SectorNotClique { sector: usize },
    #[error("non-empty residual graph without an external vertex (internal defect)")]
    LayerStall,
    #[error("algorithm produced an invalid subcoloring (internal defect)")]
    InvalidOutput,
}

/// A disk instance of kind `delta` with the origin distance of every center
/// cached.
#[derive(Debug, Clone)]
pub struct DeltaRepresentation {
    instance: DiskInstance,
    origin_dist: Vec<f64>,
}

impl DeltaRepresentation {
    pub fn new(instance: DiskInstance) -> Result<Self, DeltaError> {
        if instance.kind() != Kind::Delta {
            return Err(DeltaError::Geometry(GeometryError::KindMismatch {
                expected: Kind::Delta,
                got: instance.kind(),
            }));
        }
        let origin_dist = instance
            .disks()
            .iter()
            .map(|d| (d.center.x * d.center.x + d.center.y * d.center.y).sqrt())
            .collect();
        Ok(DeltaRepresentation {
            instance,
            origin_dist,
        })
    }

    pub fn instance(&self) -> &DiskInstance {
        &self.instance
    }

    pub fn len(&self) -> usize {
        self.instance.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instance.is_empty()
    }

    pub fn disk(&self, v: VertexId) -> &Disk {
        self.instance.disk(v)
    }

    /// Distance of the center of `v` from the origin.
    pub fn origin_dist(&self, v: VertexId) -> f64 {
        self.origin_dist[v as usize]
    }

    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        u != v && disks_intersect(self.disk(u), self.disk(v))
    }
}

/// First disk violating the delta constraints, if any.
pub fn delta_violation(instance: &DiskInstance) -> Option<VertexId> {
    instance
        .disks()
        .iter()
        .find(|d| !is_delta_disk(d))
        .map(|d| d.id)
}

/// True iff every disk satisfies the delta constraints.
pub fn validate_delta(instance: &DiskInstance) -> bool {
    delta_violation(instance).is_none()
}

/// The co-comparability order: `u` precedes `v` iff both coordinates grow
/// strictly and the disks are disjoint.
pub fn cocomp_precedes(rep: &DeltaRepresentation, u: VertexId, v: VertexId) -> bool {
    let du = rep.disk(u);
    let dv = rep.disk(v);
    du.center.x < dv.center.x && du.center.y < dv.center.y && !disks_intersect(du, dv)
}

/// The two-clique balanced separator of a delta representation.
///
/// `alpha` is the (lower) median abscissa; X = (alpha, alpha) and
/// X' = (alpha/2, alpha/2). V3 collects the disks around X', V4 those around
/// X; V1 and V2 are the leftover near and far sides, which have no edges
/// between them and at most floor(n/2) vertices each.
#[derive(Debug, Clone)]
pub struct SeparatorParts {
    pub v1: Vec<VertexId>,
    pub v2: Vec<VertexId>,
    pub v3: Vec<VertexId>,
    pub v4: Vec<VertexId>,
    pub alpha: f64,
    pub x: Point,
    pub x_prime: Point,
}

pub fn delta_separator(rep: &DeltaRepresentation) -> Result<SeparatorParts, DeltaError> {
    let all: Vec<VertexId> = (0..rep.len() as VertexId).collect();
    delta_separator_of(rep, &all)
}

/// Separator of the sub-representation induced by `subset`.
pub fn delta_separator_of(
    rep: &DeltaRepresentation,
    subset: &[VertexId],
) -> Result<SeparatorParts, DeltaError> {
    let abscissas: Vec<f64> = subset.iter().map(|&v| rep.disk(v).center.x).collect();
    let alpha = median_coordinate(&abscissas)?;
    let x = Point::new(alpha, alpha)?;
    let x_prime = Point::new(alpha / 2.0, alpha / 2.0)?;

    let (mut v1, mut v2, mut v3, mut v4) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for &v in subset {
        let d = rep.disk(v);
        let (cx, cy) = (d.center.x, d.center.y);
        // Region boundaries belong to the middle band, so the open square
        // and the open quadrant below are exactly Delta_1 and Delta_2.
        if cx < alpha / 2.0 && cy < alpha / 2.0 {
            if point_in_disk(&x_prime, d) {
                v3.push(v);
            } else {
                v1.push(v);
            }
        } else if cx > alpha && cy > alpha {
            if point_in_disk(&x, d) {
                v4.push(v);
            } else {
                v2.push(v);
            }
        } else {
            v3.push(v);
        }
    }
    v1.sort_unstable();
    v2.sort_unstable();
    v3.sort_unstable();
    v4.sort_unstable();

    let parts = SeparatorParts {
        v1,
        v2,
        v3,
        v4,
        alpha,
        x,
        x_prime,
    };
    check_separator(rep, subset, &parts)?;
    Ok(parts)
}

fn check_separator(
    rep: &DeltaRepresentation,
    subset: &[VertexId],
    parts: &SeparatorParts,
) -> Result<(), DeltaError> {
    let n = subset.len();
    let total = parts.v1.len() + parts.v2.len() + parts.v3.len() + parts.v4.len();
    if total != n {
        return Err(DeltaError::SeparatorInvariant("parts do not partition the subset"));
    }
    if n >= 2 && (parts.v1.len() > n / 2 || parts.v2.len() > n / 2) {
        return Err(DeltaError::SeparatorInvariant("side exceeds half the vertices"));
    }
    for part in [&parts.v3, &parts.v4] {
        for (i, &u) in part.iter().enumerate() {
            for &w in &part[i + 1..] {
                if !rep.adjacent(u, w) {
                    return Err(DeltaError::SeparatorInvariant("clique part has a non-edge"));
                }
            }
        }
    }
    for &u in &parts.v1 {
        for &w in &parts.v2 {
            if rep.adjacent(u, w) {
                return Err(DeltaError::SeparatorInvariant("edge between V1 and V2"));
            }
        }
    }
    Ok(())
}

/// Subcolor a delta representation with at most `2 ceil(log2 n) + 1` colors:
/// two fresh colors for the separator cliques, shared palette on the sides.
pub fn delta_color_log(rep: &DeltaRepresentation) -> Result<Coloring, DeltaError> {
    let mut colors = vec![0u32; rep.len()];
    let all: Vec<VertexId> = (0..rep.len() as VertexId).collect();
    color_log_rec(rep, &all, 0, &mut colors)?;
    let coloring = Coloring::new(colors).canonicalize();
    if !rep.is_empty() {
        let g = IntersectionGraph::from_disks(rep.instance());
        if validate_subcoloring(&g, &coloring)?.is_some() {
            return Err(DeltaError::InvalidOutput);
        }
    }
    Ok(coloring)
}

fn color_log_rec(
    rep: &DeltaRepresentation,
    subset: &[VertexId],
    base: u32,
    colors: &mut [u32],
) -> Result<u32, DeltaError> {
    if subset.is_empty() {
        return Ok(0);
    }
    let parts = delta_separator_of(rep, subset)?;
    let mut used = 0;
    for clique in [&parts.v3, &parts.v4] {
        if !clique.is_empty() {
            for &v in clique {
                colors[v as usize] = base + used;
            }
            used += 1;
        }
    }
    let left = color_log_rec(rep, &parts.v1, base + used, colors)?;
    let right = color_log_rec(rep, &parts.v2, base + used, colors)?;
    Ok(used + left.max(right))
}

/// `container` contains `containee` iff N[containee] is a subset of
/// N[container] (closed neighborhoods).
pub fn contains_vertex(g: &IntersectionGraph, container: VertexId, containee: VertexId) -> bool {
    let rows = g.closed_neighborhood_rows();
    rows[containee as usize].is_subset_of(&rows[container as usize])
}

/// The layer partition: repeatedly extract the external vertices (those not
/// containing two non-adjacent vertices) of the residual graph.
#[derive(Debug, Clone)]
pub struct LayerPartition {
    pub layers: Vec<Vec<VertexId>>,
}

impl LayerPartition {
    pub fn k(&self) -> usize {
        self.layers.len()
    }
}

pub fn external_layers(g: &IntersectionGraph) -> Result<LayerPartition, DeltaError> {
    let mut residual: Vec<VertexId> = (0..g.n() as VertexId).collect();
    let mut layers = Vec::new();
    while !residual.is_empty() {
        let h = g.induced(&residual);
        let rows = h.closed_neighborhood_rows();
        let mut external = Vec::new();
        for v in 0..h.n() as VertexId {
            // Vertices contained by v, as a bitset; v is internal iff this
            // set is not a clique of the residual graph.
            let mut contained = BitRow::new(h.n());
            let mut members = Vec::new();
            for u in 0..h.n() as VertexId {
                if rows[u as usize].is_subset_of(&rows[v as usize]) {
                    contained.set(u);
                    members.push(u);
                }
            }
            let is_clique = members
                .iter()
                .all(|&u| contained.is_subset_of(&rows[u as usize]));
            if is_clique {
                external.push(residual[v as usize]);
            }
        }
        if external.is_empty() {
            return Err(DeltaError::LayerStall);
        }
        let keep: Vec<VertexId> = residual
            .iter()
            .copied()
            .filter(|v| external.binary_search(v).is_err())
            .collect();
        layers.push(external);
        residual = keep;
    }
    Ok(LayerPartition { layers })
}

/// Maximal independent set built by repeatedly taking the minimum-radius
/// remaining vertex (ties by id) and deleting its closed neighborhood.
/// Returned in increasing radius order, which on an independent set of a
/// delta representation coincides with the co-comparability order.
pub fn greedy_mis_by_radius(rep: &DeltaRepresentation, subset: &[VertexId]) -> Vec<VertexId> {
    let mut remaining: Vec<VertexId> = subset.to_vec();
    remaining.sort_by(|&a, &b| {
        rep.disk(a)
            .radius
            .total_cmp(&rep.disk(b).radius)
            .then(a.cmp(&b))
    });
    let mut selected = Vec::new();
    let mut removed = vec![false; remaining.len()];
    for i in 0..remaining.len() {
        if removed[i] {
            continue;
        }
        let v = remaining[i];
        selected.push(v);
        for (j, &u) in remaining.iter().enumerate().skip(i + 1) {
            if !removed[j] && rep.adjacent(v, u) {
                removed[j] = true;
            }
        }
    }
    debug_assert!(selected
        .windows(2)
        .all(|w| rep.disk(w[0]).radius <= rep.disk(w[1]).radius));
    selected
}

/// Partition `members` (every one adjacent to `base` or equal to it, with
/// radius at least `base`'s) into at most six cliques by the angle of the
/// center offset from `base`, in half-open 60-degree sectors starting at the
/// positive x direction. Each sector is verified to induce a clique.
pub fn sector_clique_partition(
    rep: &DeltaRepresentation,
    members: &[VertexId],
    base: VertexId,
) -> Result<[Vec<VertexId>; 6], DeltaError> {
    debug_assert!(members.iter().all(|&v| {
        (v == base || rep.adjacent(v, base))
            && rep.disk(v).radius >= rep.disk(base).radius
    }));
    let bc = rep.disk(base).center;
    let mut sectors: [Vec<VertexId>; 6] = Default::default();
    for &v in members {
        let sector = if v == base {
            0
        } else {
            let c = rep.disk(v).center;
            let angle = (c.y - bc.y).atan2(c.x - bc.x);
            let norm = if angle < 0.0 {
                angle + std::f64::consts::TAU
            } else {
                angle
            };
            ((norm / (std::f64::consts::TAU / 6.0)) as usize).min(5)
        };
        sectors[sector].push(v);
    }
    for (s, sector) in sectors.iter().enumerate() {
        for (i, &u) in sector.iter().enumerate() {
            for &w in &sector[i + 1..] {
                if !rep.adjacent(u, w) {
                    return Err(DeltaError::SectorNotClique { sector: s });
                }
            }
        }
    }
    Ok(sectors)
}

/// Result of [`delta_color_approx`]: a valid subcoloring of at most
/// `54 * lower_bound` colors, with `lower_bound <= chi_s`.
#[derive(Debug, Clone)]
pub struct DeltaApproxResult {
    pub coloring: Coloring,
    pub lower_bound: u32,
    /// Number of layers of the external-vertex partition.
    pub layers: usize,
}

/// Constant-factor approximation for delta representations: split the graph
/// into layers of external vertices (the layer count forces an induced
/// BC(k), hence bounds chi_s from below), then color each layer by greedy
/// MIS bucket mod 9 and 60-degree sector, at most 54 colors per layer.
pub fn delta_color_approx(rep: &DeltaRepresentation) -> Result<DeltaApproxResult, DeltaError> {
    let g = IntersectionGraph::from_disks(rep.instance());
    let partition = external_layers(&g)?;
    let k = partition.k();

    // Structured color per vertex: (layer, bucket mod 9, sector), flattened
    // in sorted key order before canonicalization.
    let mut key_of = vec![(0usize, 0usize, 0usize); rep.len()];
    for (layer_idx, layer) in partition.layers.iter().enumerate() {
        let mis = greedy_mis_by_radius(rep, layer);
        let mut buckets: Vec<Vec<VertexId>> = vec![Vec::new(); mis.len()];
        for &v in layer {
            let bucket = mis
                .iter()
                .position(|&s| s == v || rep.adjacent(v, s))
                .expect("greedy MIS is maximal, every layer vertex meets it");
            buckets[bucket].push(v);
        }
        for (i, bucket) in buckets.iter().enumerate() {
            if bucket.is_empty() {
                continue;
            }
            let sectors = sector_clique_partition(rep, bucket, mis[i])?;
            for (j, sector) in sectors.iter().enumerate() {
                for &v in sector {
                    key_of[v as usize] = (layer_idx, i % 9, j);
                }
            }
        }
    }

    let mut keys: Vec<(usize, usize, usize)> = key_of.clone();
    keys.sort_unstable();
    keys.dedup();
    let colors: Vec<u32> = key_of
        .iter()
        .map(|k| keys.binary_search(k).expect("key present") as u32)
        .collect();
    let coloring = Coloring::new(colors);
    if !rep.is_empty() && validate_subcoloring(&g, &coloring)?.is_some() {
        return Err(DeltaError::InvalidOutput);
    }
    Ok(DeltaApproxResult {
        coloring: coloring.canonicalize(),
        lower_bound: (k as u32).max(1),
        layers: k,
    })
}
