//! Decomposition of general disk graphs: a horizontal median line splits off
//! a linear-disk-graph separator, a vertical median line splits that into
//! four delta pieces plus one clique, and recursion on the untouched sides
//! yields the polylogarithmic coloring and the piecewise approximation.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::delta::{delta_color_approx, delta_color_log, DeltaError, DeltaRepresentation};
use crate::geometry::{
    disks_intersect, median_coordinate, point_in_disk, Disk, DiskInstance, GeometryError, Kind,
    Point, VertexId,
};
use crate::graph::{validate_subcoloring, Coloring, GraphError, IntersectionGraph};

#[derive(Debug, Error)]
pub enum DecomposeError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Delta(#[from] DeltaError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("transform precondition violated: {0}")]
    TransformPrecondition(&'static str),
    #[error("decomposition invariant violated: {0}")]
    Invariant(&'static str),
    #[error("algorithm produced an invalid subcoloring (internal defect)")]
    InvalidOutput,
}

/// Which of the five separator buckets a vertex landed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PieceTag {
    Q1,
    Q2,
    Q3,
    Q4,
    V5,
}

impl PieceTag {
    pub fn label(&self) -> &'static str {
        match self {
            PieceTag::Q1 => "q1",
            PieceTag::Q2 => "q2",
            PieceTag::Q3 => "q3",
            PieceTag::Q4 => "q4",
            PieceTag::V5 => "v5",
        }
    }
}

/// One quadrant bucket of a linear node, re-rooted as a delta representation.
/// Local vertex `i` of `rep` is original vertex `vertices[i]`.
#[derive(Debug, Clone)]
pub struct DeltaPiece {
    pub vertices: Vec<VertexId>,
    pub rep: DeltaRepresentation,
}

/// A node of the linear-level recursion: every disk of `subset` crosses the
/// horizontal line `y_line`; the vertical line `x = x_med` cuts off the
/// five-way split, and the sides recurse.
#[derive(Debug)]
pub struct LinearNode {
    pub depth: usize,
    pub subset: Vec<VertexId>,
    pub y_line: f64,
    pub x_med: f64,
    pub crossing: Point,
    pub v5: Vec<VertexId>,
    pub quads: [Option<DeltaPiece>; 4],
    pub left: Option<Box<LinearNode>>,
    pub right: Option<Box<LinearNode>>,
}

/// A node of the disk-level recursion: the disks crossing the median
/// ordinate line form the separator (a linear disk graph by construction),
/// the strictly-below and strictly-above remainders recurse.
#[derive(Debug)]
pub struct DiskNode {
    pub depth: usize,
    pub subset: Vec<VertexId>,
    pub y_med: f64,
    pub separator: LinearNode,
    pub below: Option<Box<DiskNode>>,
    pub above: Option<Box<DiskNode>>,
}

#[derive(Debug)]
pub struct DecompositionTree {
    pub root: Option<DiskNode>,
    pub n: usize,
}

/// (median ordinate, separator S, below side A, above side B).
pub type MedianSplit = (f64, Vec<VertexId>, Vec<VertexId>, Vec<VertexId>);

/// Split `subset` by the median ordinate: S crosses the line (closed:
/// tangency counts), A lies strictly below it, B strictly above.
pub fn horizontal_median_separator(
    instance: &DiskInstance,
    subset: &[VertexId],
) -> Result<MedianSplit, DecomposeError> {
    let ordinates: Vec<f64> = subset.iter().map(|&v| instance.disk(v).center.y).collect();
    let y_med = median_coordinate(&ordinates)?;
    let (mut s, mut a, mut b) = (Vec::new(), Vec::new(), Vec::new());
    for &v in subset {
        let d = instance.disk(v);
        if (d.center.y - y_med).abs() <= d.radius {
            s.push(v);
        } else if d.center.y < y_med {
            a.push(v);
        } else {
            b.push(v);
        }
    }
    if s.is_empty() {
        return Err(DecomposeError::Invariant(
            "median-line separator is empty on a non-empty subset",
        ));
    }
    debug_assert!(a.len() <= subset.len().div_ceil(2));
    debug_assert!(b.len() <= subset.len().div_ceil(2));
    Ok((y_med, s, a, b))
}

/// The five-way split of a linear node, before the delta transform.
#[derive(Debug)]
pub struct LinearSplit {
    pub x_med: f64,
    pub crossing: Point,
    pub v5: Vec<VertexId>,
    pub quads: [Vec<VertexId>; 4],
    pub left: Vec<VertexId>,
    pub right: Vec<VertexId>,
}

/// Split disks that all cross the horizontal line `y_line` by the vertical
/// line through the median abscissa. Disks containing the crossing point
/// make the clique bucket V5; the other crossing disks fall into the four
/// open quadrants around it.
pub fn vertical_split_linear(
    instance: &DiskInstance,
    subset: &[VertexId],
    y_line: f64,
) -> Result<LinearSplit, DecomposeError> {
    let abscissas: Vec<f64> = subset.iter().map(|&v| instance.disk(v).center.x).collect();
    let x_med = median_coordinate(&abscissas)?;
    let crossing = Point::new(x_med, y_line)?;
    let mut split = LinearSplit {
        x_med,
        crossing,
        v5: Vec::new(),
        quads: Default::default(),
        left: Vec::new(),
        right: Vec::new(),
    };
    for &v in subset {
        let d = instance.disk(v);
        debug_assert!(
            (d.center.y - y_line).abs() <= d.radius,
            "linear split fed a disk that misses the base line"
        );
        if (d.center.x - x_med).abs() > d.radius {
            if d.center.x < x_med {
                split.left.push(v);
            } else {
                split.right.push(v);
            }
            continue;
        }
        if point_in_disk(&crossing, d) {
            split.v5.push(v);
            continue;
        }
        // A crossing disk centered on either line contains the crossing
        // point, so the strict quadrant test below is exhaustive.
        if d.center.x == x_med || d.center.y == y_line {
            return Err(DecomposeError::Invariant(
                "disk centered on a split line does not contain the crossing point",
            ));
        }
        let east = d.center.x > x_med;
        let north = d.center.y > y_line;
        let quadrant = match (east, north) {
            (true, true) => 0,
            (false, true) => 1,
            (false, false) => 2,
            (true, false) => 3,
        };
        split.quads[quadrant].push(v);
    }
    // V5 disks share the crossing point, so they are pairwise adjacent.
    for (i, &u) in split.v5.iter().enumerate() {
        for &w in &split.v5[i + 1..] {
            if !disks_intersect(instance.disk(u), instance.disk(w)) {
                return Err(DecomposeError::Invariant("V5 bucket is not a clique"));
            }
        }
    }
    if split.v5.is_empty() && split.quads.iter().all(Vec::is_empty) {
        return Err(DecomposeError::Invariant(
            "vertical separator is empty on a non-empty subset",
        ));
    }
    Ok(split)
}

/// Re-root a disk around the crossing point `p` of its two split lines:
/// translate `p` to the origin and reflect into the positive quadrant.
/// Distances are preserved, and crossing both lines while missing `p` is
/// exactly the delta-disk constraint set.
pub fn transform_to_delta(
    disk: &Disk,
    p: &Point,
    quadrant: usize,
) -> Result<Disk, DecomposeError> {
    let dx = disk.center.x - p.x;
    let dy = disk.center.y - p.y;
    if dx.abs() > disk.radius || dy.abs() > disk.radius {
        return Err(DecomposeError::TransformPrecondition(
            "disk does not cross both lines through p",
        ));
    }
    if point_in_disk(p, disk) {
        return Err(DecomposeError::TransformPrecondition("disk contains p"));
    }
    let expected = match quadrant {
        0 => (dx > 0.0, dy > 0.0),
        1 => (dx < 0.0, dy > 0.0),
        2 => (dx < 0.0, dy < 0.0),
        3 => (dx > 0.0, dy < 0.0),
        _ => return Err(DecomposeError::TransformPrecondition("quadrant out of range")),
    };
    if !(expected.0 && expected.1) {
        return Err(DecomposeError::TransformPrecondition(
            "center is not strictly inside the stated quadrant",
        ));
    }
    Ok(Disk::new(disk.id, Point::new(dx.abs(), dy.abs())?, disk.radius)?)
}

fn build_piece(
    instance: &DiskInstance,
    members: &[VertexId],
    p: &Point,
    quadrant: usize,
) -> Result<Option<DeltaPiece>, DecomposeError> {
    if members.is_empty() {
        return Ok(None);
    }
    let mut vertices = members.to_vec();
    vertices.sort_unstable();
    let disks = vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let moved = transform_to_delta(instance.disk(v), p, quadrant)?;
            Ok(Disk::new(i as VertexId, moved.center, moved.radius)?)
        })
        .collect::<Result<Vec<_>, DecomposeError>>()?;
    let rep = DeltaRepresentation::new(DiskInstance::new(Kind::Delta, disks)?)?;
    Ok(Some(DeltaPiece { vertices, rep }))
}

fn build_linear_node(
    instance: &DiskInstance,
    subset: Vec<VertexId>,
    y_line: f64,
    depth: usize,
) -> Result<LinearNode, DecomposeError> {
    let split = vertical_split_linear(instance, &subset, y_line)?;
    let quads = [
        build_piece(instance, &split.quads[0], &split.crossing, 0)?,
        build_piece(instance, &split.quads[1], &split.crossing, 1)?,
        build_piece(instance, &split.quads[2], &split.crossing, 2)?,
        build_piece(instance, &split.quads[3], &split.crossing, 3)?,
    ];
    let left = if split.left.is_empty() {
        None
    } else {
        Some(Box::new(build_linear_node(instance, split.left, y_line, depth + 1)?))
    };
    let right = if split.right.is_empty() {
        None
    } else {
        Some(Box::new(build_linear_node(instance, split.right, y_line, depth + 1)?))
    };
    let mut v5 = split.v5;
    v5.sort_unstable();
    Ok(LinearNode {
        depth,
        subset,
        y_line,
        x_med: split.x_med,
        crossing: split.crossing,
        v5,
        quads,
        left,
        right,
    })
}

fn build_disk_node(
    instance: &DiskInstance,
    subset: Vec<VertexId>,
    depth: usize,
) -> Result<DiskNode, DecomposeError> {
    let (y_med, s, a, b) = horizontal_median_separator(instance, &subset)?;
    let separator = build_linear_node(instance, s, y_med, 0)?;
    let below = if a.is_empty() {
        None
    } else {
        Some(Box::new(build_disk_node(instance, a, depth + 1)?))
    };
    let above = if b.is_empty() {
        None
    } else {
        Some(Box::new(build_disk_node(instance, b, depth + 1)?))
    };
    Ok(DiskNode {
        depth,
        subset,
        y_med,
        separator,
        below,
        above,
    })
}

/// Build the full decomposition tree of an instance.
pub fn decompose(instance: &DiskInstance) -> Result<DecompositionTree, DecomposeError> {
    let n = instance.len();
    let root = if n == 0 {
        None
    } else {
        let all: Vec<VertexId> = (0..n as VertexId).collect();
        Some(build_disk_node(instance, all, 0)?)
    };
    Ok(DecompositionTree { root, n })
}

impl DecompositionTree {
    /// Vertex -> (disk depth, linear depth, piece tag); total on non-empty
    /// trees.
    pub fn piece_assignment(&self) -> Vec<(usize, usize, PieceTag)> {
        let mut out = vec![(0, 0, PieceTag::V5); self.n];
        if let Some(root) = &self.root {
            assign_disk(root, &mut out);
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "decomposition n {}", self.n);
        if let Some(root) = &self.root {
            write_disk_node(root, &mut s, 0);
        }
        s
    }
}

fn assign_disk(node: &DiskNode, out: &mut [(usize, usize, PieceTag)]) {
    assign_linear(&node.separator, node.depth, out);
    if let Some(b) = &node.below {
        assign_disk(b, out);
    }
    if let Some(a) = &node.above {
        assign_disk(a, out);
    }
}

fn assign_linear(node: &LinearNode, disk_depth: usize, out: &mut [(usize, usize, PieceTag)]) {
    for &v in &node.v5 {
        out[v as usize] = (disk_depth, node.depth, PieceTag::V5);
    }
    let tags = [PieceTag::Q1, PieceTag::Q2, PieceTag::Q3, PieceTag::Q4];
    for (piece, tag) in node.quads.iter().zip(tags) {
        if let Some(piece) = piece {
            for &v in &piece.vertices {
                out[v as usize] = (disk_depth, node.depth, tag);
            }
        }
    }
    if let Some(l) = &node.left {
        assign_linear(l, disk_depth, out);
    }
    if let Some(r) = &node.right {
        assign_linear(r, disk_depth, out);
    }
}

fn write_vertices(s: &mut String, vs: &[VertexId]) {
    let _ = write!(s, "[");
    for (i, v) in vs.iter().enumerate() {
        if i > 0 {
            let _ = write!(s, ",");
        }
        let _ = write!(s, "{v}");
    }
    let _ = write!(s, "]");
}

fn write_disk_node(node: &DiskNode, s: &mut String, indent: usize) {
    let pad = "  ".repeat(indent);
    let _ = writeln!(
        s,
        "{pad}disk-node depth {} n {} y-line {}",
        node.depth,
        node.subset.len(),
        node.y_med
    );
    write_linear_node(&node.separator, s, indent + 1);
    if let Some(b) = &node.below {
        let _ = writeln!(s, "{pad}below:");
        write_disk_node(b, s, indent + 1);
    }
    if let Some(a) = &node.above {
        let _ = writeln!(s, "{pad}above:");
        write_disk_node(a, s, indent + 1);
    }
}

fn write_linear_node(node: &LinearNode, s: &mut String, indent: usize) {
    let pad = "  ".repeat(indent);
    let _ = write!(
        s,
        "{pad}linear-node depth {} n {} x-line {} crossing ({}, {}) v5 ",
        node.depth,
        node.subset.len(),
        node.x_med,
        node.crossing.x,
        node.crossing.y
    );
    write_vertices(s, &node.v5);
    let tags = ["q1", "q2", "q3", "q4"];
    for (piece, tag) in node.quads.iter().zip(tags) {
        let _ = write!(s, " {tag} ");
        match piece {
            Some(p) => write_vertices(s, &p.vertices),
            None => write_vertices(s, &[]),
        }
    }
    let _ = writeln!(s);
    if let Some(l) = &node.left {
        let _ = writeln!(s, "{pad}left:");
        write_linear_node(l, s, indent + 1);
    }
    if let Some(r) = &node.right {
        let _ = writeln!(s, "{pad}right:");
        write_linear_node(r, s, indent + 1);
    }
}

/// Exhaustive structural verification of a tree against its instance:
/// side balance, separator non-emptiness, no edge across any split, delta
/// validity of the pieces and adjacency preservation under the transform.
pub fn verify_tree(
    tree: &DecompositionTree,
    instance: &DiskInstance,
) -> Result<(), DecomposeError> {
    let g = IntersectionGraph::from_disks(instance);
    if let Some(root) = &tree.root {
        verify_disk_node(root, instance, &g)?;
    }
    Ok(())
}

fn no_cross_edges(g: &IntersectionGraph, a: &[VertexId], b: &[VertexId]) -> bool {
    let mut in_b = vec![false; g.n()];
    for &v in b {
        in_b[v as usize] = true;
    }
    a.iter()
        .all(|&u| g.neighbors(u).iter().all(|&w| !in_b[w as usize]))
}

fn verify_disk_node(
    node: &DiskNode,
    instance: &DiskInstance,
    g: &IntersectionGraph,
) -> Result<(), DecomposeError> {
    let n = node.subset.len();
    let a: &[VertexId] = node.below.as_ref().map(|b| b.subset.as_slice()).unwrap_or(&[]);
    let b: &[VertexId] = node.above.as_ref().map(|b| b.subset.as_slice()).unwrap_or(&[]);
    if a.len() > n.div_ceil(2) || b.len() > n.div_ceil(2) {
        return Err(DecomposeError::Invariant("disk-node side too large"));
    }
    if node.separator.subset.is_empty() {
        return Err(DecomposeError::Invariant("empty separator"));
    }
    if a.len() + b.len() + node.separator.subset.len() != n {
        return Err(DecomposeError::Invariant("disk-node parts do not partition"));
    }
    if !no_cross_edges(g, a, b) {
        return Err(DecomposeError::Invariant("edge across a horizontal split"));
    }
    verify_linear_node(&node.separator, instance, g)?;
    if let Some(below) = &node.below {
        verify_disk_node(below, instance, g)?;
    }
    if let Some(above) = &node.above {
        verify_disk_node(above, instance, g)?;
    }
    Ok(())
}

fn verify_linear_node(
    node: &LinearNode,
    instance: &DiskInstance,
    g: &IntersectionGraph,
) -> Result<(), DecomposeError> {
    let n = node.subset.len();
    let left: &[VertexId] = node.left.as_ref().map(|b| b.subset.as_slice()).unwrap_or(&[]);
    let right: &[VertexId] = node.right.as_ref().map(|b| b.subset.as_slice()).unwrap_or(&[]);
    if left.len() > n.div_ceil(2) || right.len() > n.div_ceil(2) {
        return Err(DecomposeError::Invariant("linear-node side too large"));
    }
    if !no_cross_edges(g, left, right) {
        return Err(DecomposeError::Invariant("edge across a vertical split"));
    }
    let sep_len = node.v5.len()
        + node
            .quads
            .iter()
            .map(|q| q.as_ref().map_or(0, |p| p.vertices.len()))
            .sum::<usize>();
    if sep_len + left.len() + right.len() != n {
        return Err(DecomposeError::Invariant("linear-node parts do not partition"));
    }
    if sep_len == 0 {
        return Err(DecomposeError::Invariant("empty vertical separator"));
    }
    for (i, &u) in node.v5.iter().enumerate() {
        for &w in &node.v5[i + 1..] {
            if !disks_intersect(instance.disk(u), instance.disk(w)) {
                return Err(DecomposeError::Invariant("V5 bucket is not a clique"));
            }
        }
    }
    for piece in node.quads.iter().flatten() {
        if crate::delta::delta_violation(piece.rep.instance()).is_some() {
            return Err(DecomposeError::Invariant("piece fails delta validation"));
        }
        // Adjacency is preserved by the isometric transform.
        let local = IntersectionGraph::from_disks(piece.rep.instance());
        for i in 0..piece.vertices.len() {
            for j in (i + 1)..piece.vertices.len() {
                let orig = g.has_edge(piece.vertices[i], piece.vertices[j]);
                if orig != local.has_edge(i as VertexId, j as VertexId) {
                    return Err(DecomposeError::Invariant(
                        "piece adjacency differs from the induced subgraph",
                    ));
                }
            }
        }
    }
    if let Some(l) = &node.left {
        verify_linear_node(l, instance, g)?;
    }
    if let Some(r) = &node.right {
        verify_linear_node(r, instance, g)?;
    }
    Ok(())
}

pub fn ceil_log2(n: usize) -> u32 {
    if n <= 1 {
        0
    } else {
        n.next_power_of_two().trailing_zeros()
    }
}

/// Closed-form color bound of [`color_disk_log3`] for an n-vertex instance.
pub fn log3_color_bound(n: usize) -> u64 {
    if n == 0 {
        return 0;
    }
    let l = ceil_log2(n) as u64;
    (l + 1) * ((l + 1) * (4 * (2 * l + 1) + 1))
}

/// Upper bound on the number of (disk depth, linear depth, tag) groups.
pub fn group_count_bound(n: usize) -> u64 {
    if n == 0 {
        return 0;
    }
    let l = ceil_log2(n) as u64;
    5 * (l + 1) * (l + 1)
}

/// Color a disk instance with O(log^3 n) colors along the decomposition:
/// each separator is colored by the linear-level recursion with fresh
/// colors, the two sides share a palette; inside a separator the four delta
/// pieces get disjoint logarithmic palettes and V5 one color.
pub fn color_disk_log3(instance: &DiskInstance) -> Result<Coloring, DecomposeError> {
    let tree = decompose(instance)?;
    color_tree_log3(&tree, instance)
}

/// Same as [`color_disk_log3`] but reusing an already-built tree.
pub fn color_tree_log3(
    tree: &DecompositionTree,
    instance: &DiskInstance,
) -> Result<Coloring, DecomposeError> {
    let mut colors = vec![0u32; tree.n];
    if let Some(root) = &tree.root {
        log3_disk(root, 0, &mut colors)?;
    }
    let coloring = Coloring::new(colors).canonicalize();
    if tree.n > 0 {
        let g = IntersectionGraph::from_disks(instance);
        if validate_subcoloring(&g, &coloring)?.is_some() {
            return Err(DecomposeError::InvalidOutput);
        }
    }
    Ok(coloring)
}

fn log3_disk(node: &DiskNode, base: u32, colors: &mut [u32]) -> Result<u32, DecomposeError> {
    let sep_used = log3_linear(&node.separator, base, colors)?;
    let child_base = base + sep_used;
    let below = match &node.below {
        Some(b) => log3_disk(b, child_base, colors)?,
        None => 0,
    };
    let above = match &node.above {
        Some(a) => log3_disk(a, child_base, colors)?,
        None => 0,
    };
    Ok(sep_used + below.max(above))
}

fn log3_linear(node: &LinearNode, base: u32, colors: &mut [u32]) -> Result<u32, DecomposeError> {
    let mut used = 0u32;
    for piece in node.quads.iter().flatten() {
        let local = delta_color_log(&piece.rep)?;
        for (i, &v) in piece.vertices.iter().enumerate() {
            colors[v as usize] = base + used + local.color(i as VertexId);
        }
        used += local.num_colors();
    }
    if !node.v5.is_empty() {
        for &v in &node.v5 {
            colors[v as usize] = base + used;
        }
        used += 1;
    }
    let child_base = base + used;
    let left = match &node.left {
        Some(l) => log3_linear(l, child_base, colors)?,
        None => 0,
    };
    let right = match &node.right {
        Some(r) => log3_linear(r, child_base, colors)?,
        None => 0,
    };
    Ok(used + left.max(right))
}

/// Result of [`color_disk_approx`].
#[derive(Debug, Clone)]
pub struct DiskApproxResult {
    pub coloring: Coloring,
    /// Maximum layer count over all delta pieces; a lower bound on chi_s.
    pub lower_bound: u32,
    /// Number of non-empty (disk depth, linear depth, tag) groups.
    pub groups: usize,
}

/// The piecewise approximation: vertices are grouped by their coordinates
/// in the decomposition tree; groups collect vertex-disjoint pieces with no
/// cross edges, so delta pieces of one group share a palette and each V5
/// group takes a single color. The largest per-piece layer count is an
/// induced-subgraph lower bound on the subchromatic number of the whole
/// instance.
pub fn color_disk_approx(instance: &DiskInstance) -> Result<DiskApproxResult, DecomposeError> {
    let tree = decompose(instance)?;
    color_tree_approx(&tree, instance)
}

pub fn color_tree_approx(
    tree: &DecompositionTree,
    instance: &DiskInstance,
) -> Result<DiskApproxResult, DecomposeError> {
    // Gather pieces per group key.
    let mut quad_groups: BTreeMap<(usize, usize, PieceTag), Vec<&DeltaPiece>> = BTreeMap::new();
    let mut v5_groups: BTreeMap<(usize, usize, PieceTag), Vec<&[VertexId]>> = BTreeMap::new();
    if let Some(root) = &tree.root {
        collect_groups(root, &mut quad_groups, &mut v5_groups);
    }

    let mut colors = vec![0u32; tree.n];
    let mut base = 0u32;
    let mut lower_bound = 1u32;
    let mut groups = 0usize;
    // BTreeMap order makes palette assignment deterministic; merge the two
    // group maps in key order.
    let mut keys: Vec<(usize, usize, PieceTag)> = quad_groups
        .keys()
        .chain(v5_groups.keys())
        .copied()
        .collect();
    keys.sort_unstable();
    for key in keys {
        groups += 1;
        if let Some(pieces) = quad_groups.get(&key) {
            let mut width = 0u32;
            for piece in pieces {
                let res = delta_color_approx(&piece.rep)?;
                lower_bound = lower_bound.max(res.layers as u32);
                for (i, &v) in piece.vertices.iter().enumerate() {
                    colors[v as usize] = base + res.coloring.color(i as VertexId);
                }
                width = width.max(res.coloring.num_colors());
            }
            base += width;
        } else if let Some(buckets) = v5_groups.get(&key) {
            for bucket in buckets {
                for &v in *bucket {
                    colors[v as usize] = base;
                }
            }
            base += 1;
        }
    }

    let coloring = Coloring::new(colors).canonicalize();
    if tree.n > 0 {
        let g = IntersectionGraph::from_disks(instance);
        if validate_subcoloring(&g, &coloring)?.is_some() {
            return Err(DecomposeError::InvalidOutput);
        }
    }
    Ok(DiskApproxResult {
        coloring,
        lower_bound,
        groups,
    })
}

fn collect_groups<'t>(
    node: &'t DiskNode,
    quads: &mut BTreeMap<(usize, usize, PieceTag), Vec<&'t DeltaPiece>>,
    v5s: &mut BTreeMap<(usize, usize, PieceTag), Vec<&'t [VertexId]>>,
) {
    collect_linear_groups(&node.separator, node.depth, quads, v5s);
    if let Some(b) = &node.below {
        collect_groups(b, quads, v5s);
    }
    if let Some(a) = &node.above {
        collect_groups(a, quads, v5s);
    }
}

fn collect_linear_groups<'t>(
    node: &'t LinearNode,
    disk_depth: usize,
    quads: &mut BTreeMap<(usize, usize, PieceTag), Vec<&'t DeltaPiece>>,
    v5s: &mut BTreeMap<(usize, usize, PieceTag), Vec<&'t [VertexId]>>,
) {
    let tags = [PieceTag::Q1, PieceTag::Q2, PieceTag::Q3, PieceTag::Q4];
    for (piece, tag) in node.quads.iter().zip(tags) {
        if let Some(piece) = piece {
            quads
                .entry((disk_depth, node.depth, tag))
                .or_default()
                .push(piece);
        }
    }
    if !node.v5.is_empty() {
        v5s.entry((disk_depth, node.depth, PieceTag::V5))
            .or_default()
            .push(&node.v5);
    }
    if let Some(l) = &node.left {
        collect_linear_groups(l, disk_depth, quads, v5s);
    }
    if let Some(r) = &node.right {
        collect_linear_groups(r, disk_depth, quads, v5s);
    }
}
