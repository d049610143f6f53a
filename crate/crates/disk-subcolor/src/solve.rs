//! Exact decision and optimization for k-subcoloring on small graphs.
//!
//! Exhaustive backtracking over vertices in descending-degree order. A color
//! class is maintained as a disjoint union of cliques; a vertex may join a
//! class only if its neighborhood inside the class is exactly one whole
//! clique or nothing. The check is exactly the monochromatic-P3 closure: a
//! vertex adjacent to part of a same-colored clique, or to two different
//! same-colored cliques, would create an induced P3 in the class. Pruning is
//! therefore sound, and an exhausted search is a proof of UNSAT.
//!
//! Search effort is bounded two ways: a vertex-count guard (refuse instances
//! the oracle was never meant for) and an optional node budget that turns a
//! runaway search into a hard error instead of an open-ended run.

use thiserror::Error;

use crate::geometry::VertexId;
use crate::graph::{Coloring, IntersectionGraph};

#[derive(Debug, Error, PartialEq)]
pub enum SolveError {
    #[error("instance has {n} vertices, solver guard is {limit}")]
    SizeGuard { n: usize, limit: usize },
    #[error("search exceeded the node budget of {budget}")]
    NodeBudget { budget: u64 },
    #[error("fixed color {color} for vertex {vertex} is not below k = {k}")]
    FixedColorOutOfRange { vertex: VertexId, color: u32, k: u32 },
    #[error("fixed vertex {vertex} is not a vertex of the graph (n = {n})")]
    FixedVertexOutOfRange { vertex: VertexId, n: usize },
    #[error("k must be at least 1")]
    ZeroColors,
}

/// A set of pinned vertex colors, used by the gadget tests to pin port
/// colors before solving.
#[derive(Debug, Clone, Default)]
pub struct PartialAssignment {
    entries: Vec<(VertexId, u32)>,
}

impl PartialAssignment {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(mut entries: Vec<(VertexId, u32)>) -> Self {
        entries.sort_by_key(|&(v, _)| v);
        entries.dedup_by_key(|&mut (v, _)| v);
        PartialAssignment { entries }
    }

    pub fn entries(&self) -> &[(VertexId, u32)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    /// Refuse graphs with more vertices than this.
    pub max_vertices: Option<usize>,
    /// Abort with an error after this many search nodes.
    pub node_budget: Option<u64>,
}

impl SolverOptions {
    /// Defaults for one-shot decisions.
    pub fn decision() -> Self {
        SolverOptions {
            max_vertices: Some(64),
            node_budget: None,
        }
    }

    /// Defaults for the optimization loop, which multiplies the decision cost
    /// by the answer and therefore gets a tighter guard.
    pub fn optimization() -> Self {
        SolverOptions {
            max_vertices: Some(20),
            node_budget: None,
        }
    }

    /// Defaults for exhaustive model enumeration.
    pub fn enumeration() -> Self {
        SolverOptions {
            max_vertices: Some(16),
            node_budget: None,
        }
    }
}

/// How an assigned vertex entered its color class, for undo.
#[derive(Clone, Copy)]
enum Placement {
    Joined(u32),
    NewClique,
}

struct Search<'a> {
    g: &'a IntersectionGraph,
    k: u32,
    color: Vec<Option<u32>>,
    /// Clique id per assigned vertex.
    clique_of: Vec<u32>,
    clique_size: Vec<u32>,
    nodes: u64,
    budget: Option<u64>,
}

impl<'a> Search<'a> {
    fn new(g: &'a IntersectionGraph, k: u32, budget: Option<u64>) -> Self {
        Search {
            g,
            k,
            color: vec![None; g.n()],
            clique_of: vec![0; g.n()],
            clique_size: Vec::new(),
            nodes: 0,
            budget,
        }
    }

    fn charge_node(&mut self) -> Result<(), SolveError> {
        self.nodes += 1;
        match self.budget {
            Some(b) if self.nodes > b => Err(SolveError::NodeBudget { budget: b }),
            _ => Ok(()),
        }
    }

    /// Try to give `v` color `c` while keeping the class a disjoint union of
    /// cliques. Fails if `v` is adjacent to a proper part of some same-color
    /// clique, or to two distinct same-color cliques.
    fn try_assign(&mut self, v: VertexId, c: u32) -> Option<Placement> {
        let mut clique: Option<u32> = None;
        let mut hits = 0u32;
        for &u in self.g.neighbors(v) {
            if self.color[u as usize] != Some(c) {
                continue;
            }
            let q = self.clique_of[u as usize];
            match clique {
                None => {
                    clique = Some(q);
                    hits = 1;
                }
                Some(q0) if q0 == q => hits += 1,
                Some(_) => return None,
            }
        }
        let placement = match clique {
            Some(q) if hits == self.clique_size[q as usize] => {
                self.clique_size[q as usize] += 1;
                self.clique_of[v as usize] = q;
                Placement::Joined(q)
            }
            Some(_) => return None,
            None => {
                self.clique_size.push(1);
                self.clique_of[v as usize] = self.clique_size.len() as u32 - 1;
                Placement::NewClique
            }
        };
        self.color[v as usize] = Some(c);
        Some(placement)
    }

    fn unassign(&mut self, v: VertexId, placement: Placement) {
        self.color[v as usize] = None;
        match placement {
            Placement::Joined(q) => self.clique_size[q as usize] -= 1,
            Placement::NewClique => {
                self.clique_size.pop();
            }
        }
    }

    fn seed_fixed(&mut self, fixed: &PartialAssignment) -> Result<bool, SolveError> {
        for &(v, c) in fixed.entries() {
            if v as usize >= self.g.n() {
                return Err(SolveError::FixedVertexOutOfRange { vertex: v, n: self.g.n() });
            }
            if c >= self.k {
                return Err(SolveError::FixedColorOutOfRange { vertex: v, color: c, k: self.k });
            }
            if self.try_assign(v, c).is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Depth-first search over `order[pos..]`. When `symmetry_break` is set,
    /// a vertex may only use colors up to one past the maximum used so far
    /// (unused colors are interchangeable, so higher ones are redundant).
    fn dfs(
        &mut self,
        order: &[VertexId],
        pos: usize,
        max_used: i64,
        symmetry_break: bool,
        on_solution: &mut dyn FnMut(&[Option<u32>]) -> bool,
    ) -> Result<bool, SolveError> {
        if pos == order.len() {
            return Ok(on_solution(&self.color));
        }
        self.charge_node()?;
        let v = order[pos];
        let limit = if symmetry_break {
            (max_used + 1).min(self.k as i64 - 1)
        } else {
            self.k as i64 - 1
        };
        for c in 0..=limit as u32 {
            if let Some(placement) = self.try_assign(v, c) {
                let next_max = max_used.max(c as i64);
                let done =
                    self.dfs(order, pos + 1, next_max, symmetry_break, on_solution)?;
                if done {
                    return Ok(true);
                }
                self.unassign(v, placement);
            }
        }
        Ok(false)
    }
}

/// Branch order: descending degree, ties by ascending id, skipping vertices
/// pinned by `fixed`. Static order keeps witnesses deterministic.
fn branch_order(g: &IntersectionGraph, fixed: &PartialAssignment) -> Vec<VertexId> {
    let mut pinned = vec![false; g.n()];
    for &(v, _) in fixed.entries() {
        if (v as usize) < g.n() {
            pinned[v as usize] = true;
        }
    }
    let mut order: Vec<VertexId> = (0..g.n() as VertexId)
        .filter(|&v| !pinned[v as usize])
        .collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

fn check_guard(n: usize, opts: &SolverOptions) -> Result<(), SolveError> {
    if let Some(limit) = opts.max_vertices {
        if n > limit {
            return Err(SolveError::SizeGuard { n, limit });
        }
    }
    Ok(())
}

/// Decide whether `g` has a subcoloring with at most `k` colors extending
/// `fixed`. Returns a witness on SAT; `None` is an exhaustive-search UNSAT.
pub fn decide_k_subcoloring(
    g: &IntersectionGraph,
    k: u32,
    fixed: &PartialAssignment,
    opts: SolverOptions,
) -> Result<Option<Coloring>, SolveError> {
    if k == 0 {
        return Err(SolveError::ZeroColors);
    }
    check_guard(g.n(), &opts)?;
    let mut search = Search::new(g, k, opts.node_budget);
    if !search.seed_fixed(fixed)? {
        return Ok(None);
    }
    let max_used = fixed
        .entries()
        .iter()
        .map(|&(_, c)| c as i64)
        .max()
        .unwrap_or(-1);
    let order = branch_order(g, fixed);
    let mut witness = None;
    search.dfs(&order, 0, max_used, true, &mut |colors| {
        witness = Some(Coloring::new(
            colors.iter().map(|c| c.expect("total assignment")).collect(),
        ));
        true
    })?;
    if let Some(w) = &witness {
        debug_assert_eq!(
            crate::graph::validate_subcoloring(g, w).expect("total"),
            None,
            "solver produced an invalid witness"
        );
        debug_assert!(w.num_colors() <= k);
    }
    Ok(witness)
}

/// Enumerate every k-subcoloring extending `fixed` (no symmetry breaking:
/// colorings differing only by a color permutation are all reported).
/// Exponential in the vertex count; guarded accordingly.
pub fn enumerate_k_subcolorings(
    g: &IntersectionGraph,
    k: u32,
    fixed: &PartialAssignment,
    opts: SolverOptions,
) -> Result<Vec<Coloring>, SolveError> {
    if k == 0 {
        return Err(SolveError::ZeroColors);
    }
    check_guard(g.n(), &opts)?;
    let mut search = Search::new(g, k, opts.node_budget);
    if !search.seed_fixed(fixed)? {
        return Ok(Vec::new());
    }
    let order = branch_order(g, fixed);
    let mut models = Vec::new();
    search.dfs(&order, 0, 0, false, &mut |colors| {
        models.push(Coloring::new(
            colors.iter().map(|c| c.expect("total assignment")).collect(),
        ));
        false
    })?;
    Ok(models)
}

/// The subchromatic number with a witness, by iterating the decision solver
/// for k = 1, 2, ... The witness uses exactly the returned number of colors.
pub fn exact_subchromatic(
    g: &IntersectionGraph,
    opts: SolverOptions,
) -> Result<(u32, Coloring), SolveError> {
    check_guard(g.n(), &opts)?;
    let decision = SolverOptions {
        max_vertices: None,
        node_budget: opts.node_budget,
    };
    for k in 1.. {
        if let Some(witness) =
            decide_k_subcoloring(g, k, &PartialAssignment::empty(), decision)?
        {
            return Ok((k, witness));
        }
    }
    unreachable!("k = n always admits the all-distinct coloring")
}
