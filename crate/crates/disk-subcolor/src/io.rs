//! Text formats, SVG rendering and run reports.
//!
//! Instances are line-oriented UTF-8: a `kind` header then one
//! `disk <id> <x> <y> <r>` line per disk. Floats print with Rust's shortest
//! round-trip formatting, so parse(serialize(x)) is bit-exact. Abstract
//! graphs (for the gadget corpus) use a `graph <n>` header with
//! `edge <u> <v>` lines. Colorings are `<vertex> <color>` lines, densified
//! before writing.

use std::fmt::Write as _;

use thiserror::Error;

use crate::geometry::{Disk, DiskInstance, GeometryError, Kind, Point, VertexId};
use crate::graph::{Coloring, IntersectionGraph};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError::Line {
        line,
        message: message.into(),
    })
}

fn parse_f64(token: &str, line: usize) -> Result<f64, ParseError> {
    match token.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        Ok(v) => err(line, format!("non-finite number {v}")),
        Err(_) => err(line, format!("bad number '{token}'")),
    }
}

fn parse_id(token: &str, line: usize) -> Result<VertexId, ParseError> {
    token
        .parse::<VertexId>()
        .or_else(|_| err(line, format!("bad vertex id '{token}'")))
}

// ---------------------------------------------------------------------------
// Disk instances
// ---------------------------------------------------------------------------

pub fn serialize_instance(instance: &DiskInstance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "kind {}", instance.kind());
    for d in instance.disks() {
        let _ = writeln!(out, "disk {} {} {} {}", d.id, d.center.x, d.center.y, d.radius);
    }
    out
}

pub fn parse_instance(text: &str) -> Result<DiskInstance, ParseError> {
    let mut kind = None;
    let mut disks: Vec<Disk> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        match tokens[0] {
            "kind" => {
                if tokens.len() != 2 {
                    return err(line, "kind line takes exactly one value");
                }
                if kind.is_some() {
                    return err(line, "duplicate kind header");
                }
                kind = Some(match tokens[1] {
                    "general" => Kind::General,
                    "unit" => Kind::Unit,
                    "delta" => Kind::Delta,
                    other => return err(line, format!("unknown kind '{other}'")),
                });
            }
            "disk" => {
                if kind.is_none() {
                    return err(line, "disk line before kind header");
                }
                if tokens.len() != 5 {
                    return err(line, format!("disk line has {} fields, expected 5", tokens.len()));
                }
                let id = parse_id(tokens[1], line)?;
                if disks.iter().any(|d| d.id == id) {
                    return err(line, format!("duplicate disk id {id}"));
                }
                let x = parse_f64(tokens[2], line)?;
                let y = parse_f64(tokens[3], line)?;
                let r = parse_f64(tokens[4], line)?;
                match Disk::new(id, Point::new(x, y)?, r) {
                    Ok(d) => disks.push(d),
                    Err(e) => return err(line, e.to_string()),
                }
            }
            other => return err(line, format!("unknown directive '{other}'")),
        }
    }
    let Some(kind) = kind else {
        return err(0, "missing kind header");
    };
    Ok(DiskInstance::new(kind, disks)?)
}

// ---------------------------------------------------------------------------
// Abstract graphs
// ---------------------------------------------------------------------------

pub fn serialize_graph(g: &IntersectionGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph {}", g.n());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "edge {u} {v}");
    }
    out
}

pub fn parse_graph(text: &str) -> Result<IntersectionGraph, ParseError> {
    let mut n = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        match tokens[0] {
            "graph" => {
                if tokens.len() != 2 || n.is_some() {
                    return err(line, "graph header takes exactly one count");
                }
                n = Some(
                    tokens[1]
                        .parse::<usize>()
                        .or_else(|_| err::<usize>(line, "bad vertex count"))?,
                );
            }
            "edge" => {
                let Some(count) = n else {
                    return err(line, "edge line before graph header");
                };
                if tokens.len() != 3 {
                    return err(line, "edge line takes exactly two endpoints");
                }
                let u = parse_id(tokens[1], line)?;
                let v = parse_id(tokens[2], line)?;
                if u == v {
                    return err(line, "self-loop");
                }
                if u as usize >= count || v as usize >= count {
                    return err(line, "edge endpoint out of range");
                }
                edges.push((u, v));
            }
            other => return err(line, format!("unknown directive '{other}'")),
        }
    }
    let Some(n) = n else {
        return err(0, "missing graph header");
    };
    edges.sort_unstable();
    edges.dedup();
    Ok(IntersectionGraph::from_edges(n, &edges))
}

/// Either input the CLI accepts: a geometric instance or an abstract graph.
#[derive(Debug)]
pub enum LoadedInput {
    Disks(DiskInstance),
    Graph(IntersectionGraph),
}

impl LoadedInput {
    pub fn graph(&self) -> IntersectionGraph {
        match self {
            LoadedInput::Disks(inst) => IntersectionGraph::from_disks(inst),
            LoadedInput::Graph(g) => g.clone(),
        }
    }

    pub fn kind(&self) -> Option<Kind> {
        match self {
            LoadedInput::Disks(inst) => Some(inst.kind()),
            LoadedInput::Graph(_) => None,
        }
    }
}

pub fn parse_input(text: &str) -> Result<LoadedInput, ParseError> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    if first.starts_with("graph") {
        Ok(LoadedInput::Graph(parse_graph(text)?))
    } else {
        Ok(LoadedInput::Disks(parse_instance(text)?))
    }
}

// ---------------------------------------------------------------------------
// Colorings
// ---------------------------------------------------------------------------

/// One `vertex color` line per vertex, colors densified first.
pub fn serialize_coloring(coloring: &Coloring) -> String {
    let canonical = coloring.canonicalize();
    let mut out = String::new();
    for (v, &c) in canonical.colors().iter().enumerate() {
        let _ = writeln!(out, "{v} {c}");
    }
    out
}

/// Parse a coloring against a known vertex count; every vertex must appear
/// exactly once.
pub fn parse_coloring(text: &str, n: usize) -> Result<Coloring, ParseError> {
    let mut colors: Vec<Option<u32>> = vec![None; n];
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return err(line, "coloring line takes exactly two fields");
        }
        let v = parse_id(tokens[0], line)?;
        let c = tokens[1]
            .parse::<u32>()
            .or_else(|_| err::<u32>(line, format!("bad color '{}'", tokens[1])))?;
        if v as usize >= n {
            return err(line, format!("vertex {v} out of range (n = {n})"));
        }
        if colors[v as usize].is_some() {
            return err(line, format!("duplicate vertex {v}"));
        }
        colors[v as usize] = Some(c);
    }
    if let Some(missing) = colors.iter().position(Option::is_none) {
        return err(0, format!("vertex {missing} has no color"));
    }
    Ok(Coloring::new(colors.into_iter().map(Option::unwrap).collect()))
}

// ---------------------------------------------------------------------------
// SVG rendering
// ---------------------------------------------------------------------------

const PALETTE: [&str; 7] = [
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1", "#edc948", "#76b7b2",
];

/// Render the disks as SVG circles, fill keyed by color class (7-color
/// palette cycling). Delta instances also get the two coordinate axes.
/// Output is a pure function of the inputs.
pub fn render_svg(instance: &DiskInstance, coloring: Option<&Coloring>) -> String {
    let mut min_x = f64::INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    for d in instance.disks() {
        min_x = min_x.min(d.center.x - d.radius);
        max_x = max_x.max(d.center.x + d.radius);
        min_y = min_y.min(d.center.y - d.radius);
        max_y = max_y.max(d.center.y + d.radius);
    }
    if instance.is_empty() {
        min_x = 0.0;
        min_y = 0.0;
        max_x = 1.0;
        max_y = 1.0;
    }
    if instance.kind() == Kind::Delta {
        min_x = min_x.min(0.0);
        min_y = min_y.min(0.0);
    }
    let pad = 0.05 * (max_x - min_x).max(max_y - min_y).max(1.0);
    let (x0, y0) = (min_x - pad, min_y - pad);
    let (w, h) = (max_x - min_x + 2.0 * pad, max_y - min_y + 2.0 * pad);
    // SVG y grows downward; mirror the plane so the picture matches the
    // mathematical orientation.
    let flip = |y: f64| (min_y + max_y) - y;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{x0} {} {w} {h}\">",
        flip(max_y) - pad,
    );
    if instance.kind() == Kind::Delta {
        let _ = writeln!(
            out,
            "  <line x1=\"0\" y1=\"{}\" x2=\"0\" y2=\"{}\" stroke=\"#999\" stroke-width=\"{}\"/>",
            flip(y0),
            flip(y0 + h),
            w.max(h) / 400.0
        );
        let _ = writeln!(
            out,
            "  <line x1=\"{x0}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#999\" stroke-width=\"{}\"/>",
            flip(0.0),
            x0 + w,
            flip(0.0),
            w.max(h) / 400.0
        );
    }
    for d in instance.disks() {
        let fill = match coloring {
            Some(c) => PALETTE[(c.color(d.id) as usize) % PALETTE.len()],
            None => "#b0b0b0",
        };
        let _ = writeln!(
            out,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\" fill-opacity=\"0.55\" stroke=\"#333\" stroke-width=\"{}\"/>",
            d.center.x,
            flip(d.center.y),
            d.radius,
            fill,
            d.radius / 50.0,
        );
    }
    let _ = writeln!(out, "</svg>");
    out
}

// ---------------------------------------------------------------------------
// Run reports
// ---------------------------------------------------------------------------

/// Flat key-value summary of a coloring run. The verdict line must read
/// `valid` for the CLI to exit 0. Wall time is deliberately not part of the
/// report: reports are byte-reproducible functions of the inputs.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub algorithm: String,
    pub kind: Option<Kind>,
    pub n: usize,
    pub m: usize,
    pub colors: u32,
    pub lower_bound: Option<u32>,
    pub valid: bool,
}

impl RunReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "algorithm {}", self.algorithm);
        match self.kind {
            Some(kind) => {
                let _ = writeln!(out, "kind {kind}");
            }
            None => {
                let _ = writeln!(out, "kind abstract");
            }
        }
        let _ = writeln!(out, "n {}", self.n);
        let _ = writeln!(out, "m {}", self.m);
        let _ = writeln!(out, "colors {}", self.colors);
        if let Some(lb) = self.lower_bound {
            let _ = writeln!(out, "lower_bound {lb}");
        }
        let _ = writeln!(out, "verdict {}", if self.valid { "valid" } else { "invalid" });
        out
    }
}
