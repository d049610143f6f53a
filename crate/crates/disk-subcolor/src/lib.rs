//! Subcolorings of disk intersection graphs.
//!
//! A subcoloring partitions the vertices of a graph so that every class
//! induces a disjoint union of cliques; the subchromatic number is the
//! minimum class count. This crate computes, approximates and verifies
//! subcolorings for graphs given by disk representations:
//!
//! - [`geometry`] / [`graph`]: exact closed-disk predicates, intersection
//!   graphs, cluster-graph detection and subcoloring validation.
//! - [`solve`]: an exhaustive decision/optimization solver, the ground
//!   truth the approximations are measured against.
//! - [`unitdisk`]: the hexagonal 7-coloring of unit-disk graphs and a
//!   3-approximation of their subchromatic number.
//! - [`delta`]: delta-disk representations (every disk meets both positive
//!   axes, none covers the origin): two-clique balanced separators, a
//!   2 log2(n) coloring and a 54-colors-per-layer constant-factor
//!   approximation.
//! - [`decompose`]: median-line decomposition of arbitrary disk instances
//!   into linear and delta pieces, giving an O(log^3 n) coloring and an
//!   O(log^2 n)-approximation.
//! - [`gen`]: instance generators (BC(k) with a proper disk representation,
//!   interval-to-delta embedding, solver gadgets, seeded random families).
//! - [`io`] / [`cli`]: text formats, SVG rendering and the command-line
//!   front end.

pub mod cli;
pub mod decompose;
pub mod delta;
pub mod gen;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod rng;
pub mod solve;
pub mod unitdisk;
