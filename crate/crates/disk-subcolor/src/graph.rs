//! Intersection-graph construction, abstract graph storage, cluster-graph
//! detection and subcoloring validation.
//!
//! This is the verification backbone: every coloring an algorithm produces is
//! checked against [`validate_subcoloring`], whose P3 witnesses make failures
//! diagnosable.

use std::collections::VecDeque;

use thiserror::Error;

use crate::geometry::{disks_intersect, DiskInstance, VertexId};

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("coloring covers {got} vertices but the graph has {expected}")]
    ColoringNotTotal { expected: usize, got: usize },
}

/// An induced path on three vertices: `ends.0 - mid - ends.1` with the ends
/// non-adjacent. Returned as the witness of a cluster-graph violation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct P3Witness {
    pub mid: VertexId,
    pub ends: (VertexId, VertexId),
}

/// Simple undirected graph with vertices `0..n-1` and sorted neighbor lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionGraph {
    n: usize,
    m: usize,
    adj: Vec<Vec<VertexId>>,
}

impl IntersectionGraph {
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for &(u, v) in edges {
            assert!(u != v, "self-loop {u}");
            assert!((u as usize) < n && (v as usize) < n, "edge out of range");
            adj[u as usize].push(v);
            adj[v as usize].push(u);
            m += 1;
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let m_dedup: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
        debug_assert_eq!(m, m_dedup, "duplicate edges in input");
        IntersectionGraph { n, m: m_dedup, adj }
    }

    /// The intersection graph of a disk instance: an edge per pair of
    /// intersecting disks (tangency included).
    pub fn from_disks(instance: &DiskInstance) -> Self {
        let disks = instance.disks();
        let n = disks.len();
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                if disks_intersect(&disks[i], &disks[j]) {
                    adj[i].push(j as VertexId);
                    adj[j].push(i as VertexId);
                    m += 1;
                }
            }
        }
        IntersectionGraph { n, m, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v as usize].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        0..self.n as VertexId
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let u = u as VertexId;
            list.iter().copied().filter(move |&v| u < v).map(move |v| (u, v))
        })
    }

    /// The subgraph induced by `verts`, with vertex `i` of the result being
    /// `verts[i]`. `verts` must be sorted and duplicate-free.
    pub fn induced(&self, verts: &[VertexId]) -> IntersectionGraph {
        debug_assert!(verts.windows(2).all(|w| w[0] < w[1]));
        let index_of = |v: VertexId| verts.binary_search(&v).ok();
        let mut edges = Vec::new();
        for (i, &v) in verts.iter().enumerate() {
            for &w in self.neighbors(v) {
                if w > v {
                    if let Some(j) = index_of(w) {
                        edges.push((i as VertexId, j as VertexId));
                    }
                }
            }
        }
        IntersectionGraph::from_edges(verts.len(), &edges)
    }

    /// Closed neighborhoods as bitsets, one row per vertex.
    pub fn closed_neighborhood_rows(&self) -> Vec<BitRow> {
        (0..self.n as VertexId)
            .map(|v| {
                let mut row = BitRow::new(self.n);
                row.set(v);
                for &u in self.neighbors(v) {
                    row.set(u);
                }
                row
            })
            .collect()
    }
}

/// Fixed-width bitset used for neighborhood containment tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    pub fn new(n: usize) -> Self {
        BitRow {
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn set(&mut self, i: VertexId) {
        self.words[i as usize / 64] |= 1 << (i as usize % 64);
    }

    pub fn clear(&mut self, i: VertexId) {
        self.words[i as usize / 64] &= !(1 << (i as usize % 64));
    }

    pub fn get(&self, i: VertexId) -> bool {
        self.words[i as usize / 64] >> (i as usize % 64) & 1 == 1
    }

    pub fn is_subset_of(&self, other: &BitRow) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }
}

/// A total assignment of color indices to the vertices of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<u32>,
    num_colors: u32,
}

impl Coloring {
    pub fn new(colors: Vec<u32>) -> Self {
        let num_colors = colors.iter().max().map_or(0, |&c| c + 1);
        Coloring { colors, num_colors }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, v: VertexId) -> u32 {
        self.colors[v as usize]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// `1 + max color used`, 0 for an empty coloring.
    pub fn num_colors(&self) -> u32 {
        self.num_colors
    }

    /// Renumber colors densely in order of first appearance over vertex ids.
    /// The canonical form is what gets serialized and compared in tests.
    pub fn canonicalize(&self) -> Coloring {
        let mut map: Vec<Option<u32>> = vec![None; self.num_colors as usize];
        let mut next = 0u32;
        let colors = self
            .colors
            .iter()
            .map(|&c| {
                *map[c as usize].get_or_insert_with(|| {
                    let id = next;
                    next += 1;
                    id
                })
            })
            .collect();
        Coloring {
            colors,
            num_colors: next,
        }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonicalize()
    }
}

/// Maximal connected vertex sets, each sorted, ordered by minimum element.
pub fn connected_components(g: &IntersectionGraph) -> Vec<Vec<VertexId>> {
    let mut seen = vec![false; g.n()];
    let mut comps = Vec::new();
    for start in 0..g.n() as VertexId {
        if seen[start as usize] {
            continue;
        }
        let mut comp = vec![start];
        seen[start as usize] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Find an induced P3 among the vertices selected by `in_class`, or `None`
/// if that induced subgraph is a disjoint union of cliques.
///
/// Degree criterion, O(n + m): a connected component is a clique iff every
/// member's degree inside the component equals the component size - 1.
fn find_p3_in_class(
    g: &IntersectionGraph,
    in_class: impl Fn(VertexId) -> bool,
) -> Option<P3Witness> {
    let mut seen = vec![false; g.n()];
    for start in 0..g.n() as VertexId {
        if !in_class(start) || seen[start as usize] {
            continue;
        }
        // Collect the component of `start` inside the class.
        let mut comp = vec![start];
        seen[start as usize] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if in_class(w) && !seen[w as usize] {
                    seen[w as usize] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        let size = comp.len();
        let class_degree = |v: VertexId| {
            g.neighbors(v).iter().filter(|&&w| in_class(w)).count()
        };
        if let Some(&deficient) = comp.iter().find(|&&v| class_degree(v) < size - 1) {
            return Some(p3_from_deficient_component(g, &comp, deficient, &in_class));
        }
    }
    None
}

/// `deficient` has a non-neighbor in its class component; walk a BFS tree
/// from it until some vertex sees a non-neighbor of `deficient`, which pins
/// an induced P3 on a shortest path.
fn p3_from_deficient_component(
    g: &IntersectionGraph,
    comp: &[VertexId],
    deficient: VertexId,
    in_class: &impl Fn(VertexId) -> bool,
) -> P3Witness {
    let in_comp = |v: VertexId| comp.binary_search(&v).is_ok();
    debug_assert!(comp.windows(2).all(|w| w[0] < w[1]));
    let mut parent = vec![None; g.n()];
    let mut dist = vec![usize::MAX; g.n()];
    dist[deficient as usize] = 0;
    let mut queue = VecDeque::from([deficient]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if in_class(w) && in_comp(w) && dist[w as usize] == usize::MAX {
                dist[w as usize] = dist[v as usize] + 1;
                parent[w as usize] = Some(v);
                queue.push_back(w);
            }
        }
    }
    // The component is connected, so some vertex is at distance exactly 2;
    // its grandparent is `deficient` and the triple is induced.
    let far = comp
        .iter()
        .copied()
        .find(|&v| dist[v as usize] == 2)
        .expect("deficient vertex must have a distance-2 vertex in its component");
    let mid = parent[far as usize].expect("distance-2 vertex has a parent");
    debug_assert!(g.has_edge(deficient, mid) && g.has_edge(mid, far));
    debug_assert!(!g.has_edge(deficient, far));
    P3Witness {
        mid,
        ends: (deficient, far),
    }
}

/// True iff every connected component of `g` is a clique.
pub fn is_cluster_graph(g: &IntersectionGraph) -> bool {
    find_induced_p3(g).is_none()
}

/// Witness variant of [`is_cluster_graph`].
pub fn find_induced_p3(g: &IntersectionGraph) -> Option<P3Witness> {
    find_p3_in_class(g, |_| true)
}

/// True iff every color class of `c` induces a disjoint union of cliques in
/// `g`; on failure the offending monochromatic P3 is returned.
pub fn validate_subcoloring(
    g: &IntersectionGraph,
    c: &Coloring,
) -> Result<Option<P3Witness>, GraphError> {
    if c.len() != g.n() {
        return Err(GraphError::ColoringNotTotal {
            expected: g.n(),
            got: c.len(),
        });
    }
    for class in 0..c.num_colors() {
        if let Some(w) = find_p3_in_class(g, |v| c.color(v) == class) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Convenience wrapper: validity as a plain boolean.
pub fn is_valid_subcoloring(g: &IntersectionGraph, c: &Coloring) -> Result<bool, GraphError> {
    validate_subcoloring(g, c).map(|w| w.is_none())
}
