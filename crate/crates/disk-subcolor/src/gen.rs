//! Instance generators: the BC(k) family with its proper-disk
//! representation, the interval-to-delta embedding, the gadget graphs used
//! as a solver test corpus, and seeded random instances.
//!
//! Every generator is a pure function of its parameters and seed.

use thiserror::Error;

use crate::delta::{DeltaError, DeltaRepresentation};
use crate::geometry::{Disk, DiskInstance, GeometryError, Kind, Point, VertexId};
use crate::graph::IntersectionGraph;
use crate::rng::Rng;
use crate::unitdisk::hex_margin;

#[derive(Debug, Error)]
pub enum GenError {
    #[error("parameter out of range: {0}")]
    ParamRange(&'static str),
    #[error("interval must satisfy left < right")]
    InvalidInterval,
    #[error("could not make interval endpoints pairwise distinct")]
    EndpointCollision,
    #[error("delta embedding failed to reproduce the interval graph after bounded nudging")]
    EmbeddingFailed,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Delta(#[from] DeltaError),
}

const INV_GAP: f64 = 0.292_893_218_813_452_5; // 1 - 1/sqrt(2)
const SQRT2: f64 = std::f64::consts::SQRT_2;

// ---------------------------------------------------------------------------
// Interval sets
// ---------------------------------------------------------------------------

/// A set of open intervals with pairwise distinct endpoints, ids by position.
#[derive(Debug, Clone)]
pub struct IntervalSet {
    intervals: Vec<(f64, f64)>,
}

impl IntervalSet {
    /// Endpoints that collide are separated by a deterministic nudge of
    /// relative size 1e-9 before the distinctness invariant is enforced.
    pub fn new(intervals: Vec<(f64, f64)>) -> Result<Self, GenError> {
        for &(l, r) in &intervals {
            if !(l.is_finite() && r.is_finite() && l < r) {
                return Err(GenError::InvalidInterval);
            }
        }
        let mut endpoints: Vec<(f64, usize, u8)> = Vec::with_capacity(intervals.len() * 2);
        for (i, &(l, r)) in intervals.iter().enumerate() {
            endpoints.push((l, i, 0));
            endpoints.push((r, i, 1));
        }
        endpoints.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        let span = endpoints
            .last()
            .map(|e| e.0)
            .unwrap_or(0.0)
            .max(1.0)
            .abs();
        let eps = span * 1e-9;
        let mut fixed = intervals.clone();
        let mut prev = f64::NEG_INFINITY;
        for &(value, id, side) in &endpoints {
            let v = if value <= prev { prev + eps } else { value };
            prev = v;
            if side == 0 {
                fixed[id].0 = v;
            } else {
                fixed[id].1 = v;
            }
        }
        for &(l, r) in &fixed {
            if l >= r {
                return Err(GenError::EndpointCollision);
            }
        }
        Ok(IntervalSet { intervals: fixed })
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    /// Intersection graph of the intervals.
    pub fn intersection_graph(&self) -> IntersectionGraph {
        let n = self.len();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let (li, ri) = self.intervals[i];
                let (lj, rj) = self.intervals[j];
                if li < rj && lj < ri {
                    edges.push((i as VertexId, j as VertexId));
                }
            }
        }
        IntersectionGraph::from_edges(n, &edges)
    }
}

/// Seeded random interval set: 2n distinct endpoints paired at random.
pub fn gen_random_intervals(n: usize, seed: u64) -> Result<IntervalSet, GenError> {
    let mut rng = Rng::new(seed);
    let span = (n as f64).max(1.0);
    let mut values: Vec<f64> = (0..2 * n).map(|_| rng.uniform(0.0, span)).collect();
    values.sort_by(f64::total_cmp);
    let mut slots: Vec<usize> = (0..2 * n).collect();
    rng.shuffle(&mut slots);
    let intervals = (0..n)
        .map(|i| {
            let a = values[slots[2 * i]];
            let b = values[slots[2 * i + 1]];
            (a.min(b), a.max(b))
        })
        .collect();
    IntervalSet::new(intervals)
}

// ---------------------------------------------------------------------------
// BC(k): universal vertex over two copies, with a proper disk representation
// ---------------------------------------------------------------------------

/// The BC(k) graph (2^k - 1 vertices) and a proper disk representation of it
/// in which no disk contains another.
///
/// Ids: the first copy of BC(k-1) comes first, then the second copy, then
/// the universal vertex; the disk list uses the same order. Every disk of
/// the representation crosses both horizontal lines y = 0 and y = -1; the
/// construction scales the two copies to span y = 0 .. -2 and covers their
/// middle-line traces with one large shallow disk.
pub fn gen_bc(k: u32) -> Result<(IntersectionGraph, DiskInstance), GenError> {
    if k < 1 {
        return Err(GenError::ParamRange("bc requires k >= 1"));
    }
    let (n, edges) = bc_abstract(k);
    let raw = bc_disks(k);
    debug_assert_eq!(raw.len(), n);
    let disks = raw
        .iter()
        .enumerate()
        .map(|(i, &(x, y, r))| Disk::new(i as VertexId, Point::new(x, y)?, r))
        .collect::<Result<Vec<_>, _>>()?;
    let instance = DiskInstance::new(Kind::General, disks)?;
    Ok((IntersectionGraph::from_edges(n, &edges), instance))
}

fn bc_abstract(k: u32) -> (usize, Vec<(VertexId, VertexId)>) {
    if k == 1 {
        return (1, Vec::new());
    }
    let (m, sub) = bc_abstract(k - 1);
    let mut edges = sub.clone();
    edges.extend(sub.iter().map(|&(u, v)| (u + m as VertexId, v + m as VertexId)));
    let universal = (2 * m) as VertexId;
    edges.extend((0..2 * m as VertexId).map(|v| (universal, v)));
    (2 * m + 1, edges)
}

fn bc_disks(k: u32) -> Vec<(f64, f64, f64)> {
    if k == 1 {
        return vec![(0.0, -0.5, 1.0)];
    }
    let sub = bc_disks(k - 1);
    // Scale by 2 about the origin: disks crossing y = 0 and y = -1 now
    // cross y = 0 and y = -2.
    let g1: Vec<(f64, f64, f64)> = sub.iter().map(|&(x, y, r)| (2.0 * x, 2.0 * y, 2.0 * r)).collect();
    // Second copy reflected about the strip axis y = -1. The per-level
    // covering disks of the two copies then bulge in opposite directions,
    // which keeps the horizontal shift needed for disjointness (computed
    // pairwise below) proportional to the strip-trace width instead of the
    // covering disks' full extent; coordinates stay small enough that the
    // exact f64 predicates keep real margins through k = 6 and beyond.
    let g2: Vec<(f64, f64, f64)> = g1.iter().map(|&(x, y, r)| (x, -2.0 - y, r)).collect();
    let mut shift = 0.0f64;
    for a in &g1 {
        for b in &g2 {
            let dy = a.1 - b.1;
            let s = a.2 + b.2;
            if dy * dy < s * s {
                shift = shift.max(a.0 - b.0 + (s * s - dy * dy).sqrt());
            }
        }
    }
    let shift = shift + 1.0;

    let mut disks: Vec<(f64, f64, f64)> = Vec::with_capacity(2 * g1.len() + 1);
    disks.extend(&g1);
    disks.extend(g2.iter().map(|&(x, y, r)| (x + shift, y, r)));

    // Chord of each copy disk on the middle line y = -1; the covering disk
    // only needs to span these traces, not the copies' full extent.
    let mut trace_lo = f64::INFINITY;
    let mut trace_hi = f64::NEG_INFINITY;
    let mut ymax = f64::NEG_INFINITY;
    for &(x, y, r) in &disks {
        let h = (r * r - (y + 1.0) * (y + 1.0)).max(0.0).sqrt();
        trace_lo = trace_lo.min(x - h);
        trace_hi = trace_hi.max(x + h);
        ymax = ymax.max(y + r);
    }
    let mid = (trace_lo + trace_hi) / 2.0;
    let half = (trace_hi - trace_lo) / 2.0 + 1.0;
    // Reaching down to y = -1.5 the disk crosses y = 0 and y = -1 but not
    // y = -2; its chord on y = -1 has half-width sqrt(cy + 1.25) > half.
    let cy = (half * half).max(ymax + 1.0);
    disks.push((mid, cy, cy + 1.5));
    disks
}

// ---------------------------------------------------------------------------
// Gadgets
// ---------------------------------------------------------------------------

/// Abstract gadget graphs used to cross-check the exact solver against the
/// rigidity claims they were designed for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadgetSpec {
    /// Path of k rungs times an edge: vertices `2i` and `2i+1` form rung
    /// `i+1`.
    Ladder { k: usize },
    /// Ladder of k rungs plus the chord between the last rail vertex and the
    /// one 24 rungs earlier; its ports (rung 1) must differ in every
    /// 2-subcoloring.
    Forbidding { k: usize },
    /// A C5 (ids 0..4 cyclic) with forbidding gadgets F27 attached on edges
    /// (3,4) and (4,0); exactly one of the edges (0,1), (1,2), (2,3) is
    /// monochromatic in any 2-subcoloring.
    Clause,
    /// Two n-cliques joined by a perfect matching (ids 0..n-1 and n..2n-1).
    MatchedCliques { n: usize },
    /// Complete tripartite graph with parts of size 4.
    K444,
    C5,
    C4,
}

pub fn gen_gadget(spec: GadgetSpec) -> Result<IntersectionGraph, GenError> {
    match spec {
        GadgetSpec::Ladder { k } => {
            if k < 1 {
                return Err(GenError::ParamRange("ladder requires k >= 1"));
            }
            let mut edges = Vec::new();
            ladder_edges(&mut edges, 0, k);
            Ok(IntersectionGraph::from_edges(2 * k, &edges))
        }
        GadgetSpec::Forbidding { k } => {
            if k < 25 {
                return Err(GenError::ParamRange("forbidding gadget requires k >= 25"));
            }
            let mut edges = Vec::new();
            ladder_edges(&mut edges, 0, k);
            edges.push((b_of(0, k), b_of(0, k - 24)));
            Ok(IntersectionGraph::from_edges(2 * k, &edges))
        }
        GadgetSpec::Clause => {
            let mut edges = vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
            let mut next = 5;
            attach_forbidding(&mut edges, &mut next, 3, 4, 27);
            attach_forbidding(&mut edges, &mut next, 4, 0, 27);
            Ok(IntersectionGraph::from_edges(next as usize, &edges))
        }
        GadgetSpec::MatchedCliques { n } => {
            if n < 3 {
                return Err(GenError::ParamRange("matched cliques require n >= 3"));
            }
            let mut edges = Vec::new();
            for i in 0..n as VertexId {
                for j in (i + 1)..n as VertexId {
                    edges.push((i, j));
                    edges.push((n as VertexId + i, n as VertexId + j));
                }
                edges.push((i, n as VertexId + i));
            }
            Ok(IntersectionGraph::from_edges(2 * n, &edges))
        }
        GadgetSpec::K444 => {
            let mut edges = Vec::new();
            for part_a in 0..3u32 {
                for part_b in (part_a + 1)..3 {
                    for i in 0..4 {
                        for j in 0..4 {
                            edges.push((4 * part_a + i, 4 * part_b + j));
                        }
                    }
                }
            }
            Ok(IntersectionGraph::from_edges(12, &edges))
        }
        GadgetSpec::C5 => Ok(IntersectionGraph::from_edges(
            5,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)],
        )),
        GadgetSpec::C4 => Ok(IntersectionGraph::from_edges(
            4,
            &[(0, 1), (1, 2), (2, 3), (3, 0)],
        )),
    }
}

/// Rung i (1-based) of the ladder starting at id `base` is
/// (base + 2(i-1), base + 2(i-1) + 1).
fn ladder_edges(edges: &mut Vec<(VertexId, VertexId)>, base: VertexId, k: usize) {
    for i in 0..k as VertexId {
        edges.push((base + 2 * i, base + 2 * i + 1));
        if i + 1 < k as VertexId {
            edges.push((base + 2 * i, base + 2 * i + 2));
            edges.push((base + 2 * i + 1, base + 2 * i + 3));
        }
    }
}

fn b_of(base: VertexId, rung: usize) -> VertexId {
    base + 2 * (rung as VertexId - 1) + 1
}

/// Attach a forbidding gadget F_k whose first rung is the existing edge
/// (port_a, port_b); rungs 2..k get fresh ids starting at `*next`.
fn attach_forbidding(
    edges: &mut Vec<(VertexId, VertexId)>,
    next: &mut VertexId,
    port_a: VertexId,
    port_b: VertexId,
    k: usize,
) {
    let mut prev_a = port_a;
    let mut prev_b = port_b;
    let mut rails_b = vec![port_b];
    for _ in 2..=k {
        let a = *next;
        let b = *next + 1;
        *next += 2;
        edges.push((a, b));
        edges.push((prev_a, a));
        edges.push((prev_b, b));
        prev_a = a;
        prev_b = b;
        rails_b.push(b);
    }
    edges.push((rails_b[k - 1], rails_b[k - 25]));
}

// ---------------------------------------------------------------------------
// Interval graphs as delta representations
// ---------------------------------------------------------------------------

/// Placement fractions tried for the free left-endpoint choice; the first
/// failure to reproduce the interval graph moves to the next one.
const NUDGE_FRACTIONS: [f64; 8] = [0.5, 0.382, 0.618, 0.25, 0.75, 0.146, 0.854, 0.09];

/// Embed an interval graph as a delta representation: disks centered on the
/// diagonal whose diagonal chords reproduce the interval order. The realized
/// intersection graph is checked against the interval graph; on a mismatch
/// (floating-point near-miss) the free endpoint placements are re-nudged.
pub fn gen_interval_to_delta(intervals: &IntervalSet) -> Result<DeltaRepresentation, GenError> {
    if intervals.is_empty() {
        let inst = DiskInstance::new(Kind::Delta, Vec::new())?;
        return Ok(DeltaRepresentation::new(inst)?);
    }
    let expected = intervals.intersection_graph();
    let mut order: Vec<usize> = (0..intervals.len()).collect();
    order.sort_by(|&a, &b| intervals.intervals()[a].1.total_cmp(&intervals.intervals()[b].1));

    for &frac in &NUDGE_FRACTIONS {
        if let Ok(instance) = build_diagonal_disks(intervals, &order, frac) {
            if IntersectionGraph::from_disks(&instance) == expected {
                return Ok(DeltaRepresentation::new(instance)?);
            }
        }
    }
    Err(GenError::EmbeddingFailed)
}

fn build_diagonal_disks(
    intervals: &IntervalSet,
    order: &[usize],
    frac: f64,
) -> Result<DiskInstance, GenError> {
    // Events processed so far: (original endpoint, realized endpoint).
    let mut events: Vec<(f64, f64)> = Vec::new();
    let mut disks: Vec<Option<Disk>> = vec![None; intervals.len()];
    let mut prev_right_orig = f64::NEG_INFINITY;
    let mut prev_right_real = 0.0f64;

    for (step, &orig) in order.iter().enumerate() {
        let (l, r) = intervals.intervals()[orig];
        let (t, radius) = if step == 0 {
            (1.0, 1.0)
        } else if l > prev_right_orig {
            // Disjoint from everything so far: fresh chord one unit past the
            // previous right endpoint, radius equal to the center offset.
            let l_real = prev_right_real + 1.0;
            let t = l_real / INV_GAP;
            (t, t)
        } else {
            // Starts inside the processed arrangement: place the realized
            // left endpoint inside the realized gap around it.
            let e1 = events
                .iter()
                .filter(|e| e.0 < l)
                .max_by(|a, b| a.0.total_cmp(&b.0))
                .map(|e| e.1)
                .unwrap_or(0.0);
            let e2 = events
                .iter()
                .filter(|e| e.0 > l)
                .min_by(|a, b| a.0.total_cmp(&b.0))
                .map(|e| e.1)
                .expect("some processed right endpoint exceeds l");
            let l_real = e1 + (e2 - e1) * frac;
            // Any center with 2t - l_real above the previous right endpoint
            // and t >= l_real / (1 - 1/sqrt(2)) works; taking the smallest
            // such t (up to relative safety margins) keeps the coordinate
            // growth of overlap steps near 1, so the whole arrangement's
            // dynamic range stays within what exact f64 predicates resolve.
            let t = (l_real / INV_GAP * (1.0 + 1e-12))
                .max((prev_right_real * (1.0 + 1e-9) + l_real) / 2.0);
            let radius = SQRT2 * (t - l_real);
            (t, radius)
        };
        // Keep the disk inside the delta constraints against rounding: the
        // construction guarantees t <= radius < sqrt(2) t in exact reals.
        let radius = radius.max(t).min(SQRT2 * t * (1.0 - 4e-16));
        let disk = Disk::new(orig as VertexId, Point::new(t, t)?, radius)?;
        let chord_half = radius / SQRT2;
        events.push((l, t - chord_half));
        events.push((r, t + chord_half));
        prev_right_orig = r;
        prev_right_real = t + chord_half;
        disks[orig] = Some(disk);
    }
    let disks: Vec<Disk> = disks.into_iter().map(|d| d.expect("all placed")).collect();
    Ok(DiskInstance::new(Kind::Delta, disks)?)
}

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

/// Margin keeping generated centers away from the integer grid and from
/// hexagon-cell boundaries, so every downstream predicate is decision-stable.
const BOUNDARY_MARGIN: f64 = 1e-6;

fn stable_center(rng: &mut Rng, width: f64) -> Point {
    let mut candidate = (0.0, 0.0);
    for _ in 0..64 {
        let x = rng.uniform(0.0, width);
        let y = rng.uniform(0.0, width);
        candidate = (x, y);
        let grid_ok = (x - x.round()).abs() > BOUNDARY_MARGIN
            && (y - y.round()).abs() > BOUNDARY_MARGIN;
        let p = Point::new(x, y).expect("finite sample");
        if grid_ok && hex_margin(&p) > BOUNDARY_MARGIN {
            return p;
        }
    }
    Point::new(candidate.0, candidate.1).expect("finite sample")
}

/// n unit disks with centers uniform in a `width x width` box, perturbed
/// away from region and hexagon boundaries. Deterministic given the seed.
pub fn gen_random_unit(n: usize, width: f64, seed: u64) -> Result<DiskInstance, GenError> {
    if !width.is_finite() || width <= 0.0 {
        return Err(GenError::ParamRange("box width must be positive"));
    }
    let mut rng = Rng::new(seed);
    let disks = (0..n)
        .map(|i| Disk::new(i as VertexId, stable_center(&mut rng, width), 0.5))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DiskInstance::new(Kind::Unit, disks)?)
}

/// n delta disks: center distance from the origin log-uniform over
/// `[d_lo, d_hi]`, direction bounded away from the axes, radius uniform in
/// the admissible band `[max(x, y), d)`.
pub fn gen_random_delta(
    n: usize,
    d_lo: f64,
    d_hi: f64,
    seed: u64,
) -> Result<DeltaRepresentation, GenError> {
    if !(d_lo.is_finite() && d_hi.is_finite() && 0.0 < d_lo && d_lo <= d_hi) {
        return Err(GenError::ParamRange("delta scale span must satisfy 0 < lo <= hi"));
    }
    let mut rng = Rng::new(seed);
    let angle_margin = 0.01;
    let disks = (0..n)
        .map(|i| {
            let d = (rng.uniform(d_lo.ln(), d_hi.ln())).exp();
            let theta = rng.uniform(angle_margin, std::f64::consts::FRAC_PI_2 - angle_margin);
            let x = d * theta.cos();
            let y = d * theta.sin();
            let r = rng.uniform(x.max(y), d * (1.0 - 1e-6));
            Disk::new(i as VertexId, Point::new(x, y)?, r)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DeltaRepresentation::new(DiskInstance::new(Kind::Delta, disks)?)?)
}

/// n disks with centers uniform in a `width x width` box and log-uniform
/// radii in `[r_lo, r_hi]`.
pub fn gen_random_disks(
    n: usize,
    r_lo: f64,
    r_hi: f64,
    width: f64,
    seed: u64,
) -> Result<DiskInstance, GenError> {
    if !(r_lo.is_finite() && r_hi.is_finite() && 0.0 < r_lo && r_lo <= r_hi) {
        return Err(GenError::ParamRange("radius range must satisfy 0 < lo <= hi"));
    }
    if !width.is_finite() || width <= 0.0 {
        return Err(GenError::ParamRange("box width must be positive"));
    }
    let mut rng = Rng::new(seed);
    let disks = (0..n)
        .map(|i| {
            let center = stable_center(&mut rng, width);
            let r = (rng.uniform(r_lo.ln(), r_hi.ln())).exp();
            Disk::new(i as VertexId, center, r)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DiskInstance::new(Kind::General, disks)?)
}
