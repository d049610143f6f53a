//! Unit-disk subcoloring: the hexagonal 7-coloring and the 3-approximation.
//!
//! The plane is tiled by regular hexagons of diameter 1; centers sharing a
//! cell form a clique, and the 7-color scheme keeps equal-colored cells more
//! than distance 1 apart, so each color class is a disjoint union of cliques.
//! The 3-approximation refines this: it first tests for a single cluster, then
//! tries to 2-subcolor each piece of a 3-way plane partition whose pieces have
//! bounded independence number, and falls back to the 7-coloring.

use thiserror::Error;

use crate::geometry::{DiskInstance, GeometryError, Kind, Point};
use crate::graph::{
    connected_components, is_cluster_graph, validate_subcoloring, Coloring, GraphError,
    IntersectionGraph,
};
use crate::solve::{decide_k_subcoloring, PartialAssignment, SolveError, SolverOptions};

/// Horizontal spacing between hexagon centers in one row.
pub const HEX_COL_PITCH: f64 = 0.866_025_403_784_438_6; // sqrt(3)/2
/// Vertical spacing between rows.
pub const HEX_ROW_PITCH: f64 = 0.75;
/// Horizontal offset of odd rows.
pub const HEX_ODD_ROW_OFFSET: f64 = HEX_COL_PITCH / 2.0;

/// Node budget for the per-component 2-subcoloring decisions of the
/// 3-approximation. Components have independence number at most 12, which
/// keeps the search shallow; the budget converts a pathological blowup into
/// a hard error rather than a wrong answer.
pub const APPROX3_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error)]
pub enum UnitDiskError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("algorithm produced an invalid subcoloring (internal defect)")]
    InvalidOutput,
}

/// A cell of the hexagonal tiling, addressed by (row, column).
///
/// Row `i` sits at ordinate `0.75 * i`; odd rows are shifted right by half a
/// column pitch. Cell (0, 0) is centered at the origin. Every cell is a
/// regular hexagon of circumradius 1/2, hence of diameter exactly 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HexCell {
    pub row: i64,
    pub col: i64,
}

impl HexCell {
    pub fn center(&self) -> Point {
        let offset = if self.row.rem_euclid(2) == 1 {
            HEX_ODD_ROW_OFFSET
        } else {
            0.0
        };
        Point::new(
            self.col as f64 * HEX_COL_PITCH + offset,
            self.row as f64 * HEX_ROW_PITCH,
        )
        .expect("cell centers are finite")
    }

    /// The six corners, counterclockwise from the rightmost upper one.
    pub fn polygon(&self) -> [Point; 6] {
        let c = self.center();
        let w = HEX_COL_PITCH / 2.0; // apothem, sqrt(3)/4
        let r = 0.5; // circumradius
        let mk = |dx: f64, dy: f64| Point::new(c.x + dx, c.y + dy).expect("finite");
        [
            mk(w, r / 2.0),
            mk(0.0, r),
            mk(-w, r / 2.0),
            mk(-w, -r / 2.0),
            mk(0.0, -r),
            mk(w, -r / 2.0),
        ]
    }
}

/// The unique cell containing `p`: nearest center, ties broken by smaller
/// row, then smaller column.
pub fn hex_cell_of(p: &Point) -> HexCell {
    let row_guess = (p.y / HEX_ROW_PITCH).round() as i64;
    let mut best: Option<(f64, HexCell)> = None;
    for row in (row_guess - 2)..=(row_guess + 2) {
        let offset = if row.rem_euclid(2) == 1 {
            HEX_ODD_ROW_OFFSET
        } else {
            0.0
        };
        let col_guess = ((p.x - offset) / HEX_COL_PITCH).round() as i64;
        for col in (col_guess - 2)..=(col_guess + 2) {
            let cell = HexCell { row, col };
            let d = p.dist_sq(&cell.center());
            let better = match best {
                None => true,
                Some((bd, bc)) => {
                    d < bd || (d == bd && (cell.row, cell.col) < (bc.row, bc.col))
                }
            };
            if better {
                best = Some((d, cell));
            }
        }
    }
    best.expect("candidate set is nonempty").1
}

/// Gap between the distances from `p` to its two nearest hexagon centers.
/// Near zero means `p` sits close to a cell boundary; the generators keep
/// sampled centers above a fixed margin so cell assignment is stable.
pub fn hex_margin(p: &Point) -> f64 {
    let row_guess = (p.y / HEX_ROW_PITCH).round() as i64;
    let mut best = f64::INFINITY;
    let mut second = f64::INFINITY;
    for row in (row_guess - 2)..=(row_guess + 2) {
        let offset = if row.rem_euclid(2) == 1 {
            HEX_ODD_ROW_OFFSET
        } else {
            0.0
        };
        let col_guess = ((p.x - offset) / HEX_COL_PITCH).round() as i64;
        for col in (col_guess - 2)..=(col_guess + 2) {
            let d = p.dist_sq(&HexCell { row, col }.center()).sqrt();
            if d < best {
                second = best;
                best = d;
            } else if d < second {
                second = d;
            }
        }
    }
    second - best
}

/// The 7-coloring of the tiling: the right neighbor of a cell gets color +1
/// (mod 7), its below-left neighbor +4 and its below-right neighbor +5, with
/// cell (0, 0) colored 0.
pub fn isbell_color(cell: &HexCell) -> u32 {
    // Solving the two downward recurrences gives a per-row offset of -i,
    // plus 4 on odd rows.
    let parity_shift = if cell.row.rem_euclid(2) == 1 { 4 } else { 0 };
    (cell.col - cell.row + parity_shift).rem_euclid(7) as u32
}

/// Subcolor a unit-disk instance with at most 7 colors via the hexagon
/// tiling. Linear in the number of disks.
pub fn color_unit7(instance: &DiskInstance) -> Result<Coloring, UnitDiskError> {
    expect_unit(instance)?;
    let colors = instance
        .disks()
        .iter()
        .map(|d| isbell_color(&hex_cell_of(&d.center)))
        .collect();
    Ok(Coloring::new(colors).canonicalize())
}

/// The three classes of the plane partition used by the 3-approximation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    R0,
    R1,
    R2,
}

/// Classify a center: R0 holds points with even floor(y) whose floor(x) is
/// not 0 mod 4, R1 those with odd floor(y) whose floor(x) is not 2 mod 4,
/// and R2 the rest. Floors and mods are Euclidean, so the pattern extends
/// periodically to negative coordinates.
///
/// The excluded columns of consecutive rows are offset by two, which is what
/// makes every class a union of rectangles pairwise at distance at least 1
/// (the leftover R2 squares of adjacent rows would otherwise touch at a
/// corner and monochromatic components could leak across rectangles).
pub fn region_of(center: &Point) -> Region {
    let fx = center.x.floor() as i64;
    let fy = center.y.floor() as i64;
    let ymod = fy.rem_euclid(2);
    let xmod = fx.rem_euclid(4);
    if ymod == 0 && xmod != 0 {
        Region::R0
    } else if ymod == 1 && xmod != 2 {
        Region::R1
    } else {
        Region::R2
    }
}

impl Region {
    pub fn index(&self) -> u32 {
        match self {
            Region::R0 => 0,
            Region::R1 => 1,
            Region::R2 => 2,
        }
    }

    /// Identifier of the axis-aligned rectangle of this region containing a
    /// point of it: rectangles of one region are pairwise at distance > 1,
    /// so monochromatic components never span two of them.
    pub fn rectangle_id(&self, center: &Point) -> (i64, i64) {
        let fx = center.x.floor() as i64;
        let fy = center.y.floor() as i64;
        match self {
            // R0 rows keep columns 1..3 (mod 4), R1 rows keep 3..5 (mod 4).
            Region::R0 => (fy, (fx - 1).div_euclid(4)),
            Region::R1 => (fy, (fx - 3).div_euclid(4)),
            Region::R2 => (fy, fx),
        }
    }
}

/// Result of [`approx3_unit`]: a valid subcoloring together with a certified
/// lower bound on the subchromatic number.
#[derive(Debug, Clone)]
pub struct Approx3Result {
    pub coloring: Coloring,
    pub lower_bound: u32,
}

/// 3-approximation of the subchromatic number of a unit-disk instance.
///
/// 1. A disjoint union of cliques gets 1 color.
/// 2. Otherwise split the vertices by [`region_of`] and decide
///    2-subcolorability of every monochromatic connected component exactly;
///    if all succeed, region class r uses colors 2r and 2r+1 and the bound
///    chi_s >= 2 is certified by step 1's failure.
/// 3. Otherwise some induced subgraph is not 2-subcolorable, so chi_s >= 3
///    and the 7-coloring is within ratio 3.
pub fn approx3_unit(instance: &DiskInstance) -> Result<Approx3Result, UnitDiskError> {
    expect_unit(instance)?;
    let g = IntersectionGraph::from_disks(instance);

    if is_cluster_graph(&g) {
        return Ok(Approx3Result {
            coloring: Coloring::new(vec![0; g.n()]),
            lower_bound: 1,
        });
    }

    let solver = SolverOptions {
        max_vertices: None,
        node_budget: Some(APPROX3_NODE_BUDGET),
    };
    let mut colors = vec![0u32; g.n()];
    let mut all_two_colorable = true;
    'regions: for region in [Region::R0, Region::R1, Region::R2] {
        let members: Vec<u32> = (0..g.n() as u32)
            .filter(|&v| region_of(&instance.disk(v).center) == region)
            .collect();
        let class_graph = g.induced(&members);
        for comp in connected_components(&class_graph) {
            let comp_graph = class_graph.induced(&comp);
            match decide_k_subcoloring(&comp_graph, 2, &PartialAssignment::empty(), solver)? {
                Some(w) => {
                    for (i, &local) in comp.iter().enumerate() {
                        let v = members[local as usize];
                        colors[v as usize] = 2 * region.index() + w.color(i as u32);
                    }
                }
                None => {
                    all_two_colorable = false;
                    break 'regions;
                }
            }
        }
    }

    let (coloring, lower_bound) = if all_two_colorable {
        (Coloring::new(colors).canonicalize(), 2)
    } else {
        (color_unit7(instance)?, 3)
    };
    if validate_subcoloring(&g, &coloring)?.is_some() {
        return Err(UnitDiskError::InvalidOutput);
    }
    Ok(Approx3Result {
        coloring,
        lower_bound,
    })
}

fn expect_unit(instance: &DiskInstance) -> Result<(), UnitDiskError> {
    if instance.kind() != Kind::Unit {
        return Err(UnitDiskError::Geometry(GeometryError::KindMismatch {
            expected: Kind::Unit,
            got: instance.kind(),
        }));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Disk, VertexId};

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y).unwrap()
    }

    fn unit_instance(centers: &[(f64, f64)]) -> DiskInstance {
        let disks = centers
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| Disk::new(i as VertexId, pt(x, y), 0.5).unwrap())
            .collect();
        DiskInstance::new(Kind::Unit, disks).unwrap()
    }

    #[test]
    fn cells_are_regular_hexagons_of_diameter_one() {
        for cell in [
            HexCell { row: 0, col: 0 },
            HexCell { row: -3, col: 2 },
            HexCell { row: 5, col: -7 },
        ] {
            let center = cell.center();
            let corners = cell.polygon();
            for (i, corner) in corners.iter().enumerate() {
                assert!((corner.dist_sq(&center).sqrt() - 0.5).abs() < 1e-12);
                let next = &corners[(i + 1) % 6];
                assert!((corner.dist_sq(next).sqrt() - 0.5).abs() < 1e-12);
                // Diameter: the opposite corner is at distance exactly 1.
                let opposite = &corners[(i + 3) % 6];
                assert!((corner.dist_sq(opposite).sqrt() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn anchor_cells() {
        assert_eq!(hex_cell_of(&pt(0.0, 0.0)), HexCell { row: 0, col: 0 });
        assert_eq!(
            hex_cell_of(&pt(HEX_COL_PITCH, 0.0)),
            HexCell { row: 0, col: 1 }
        );
        // One row down, shifted by the odd-row offset: exact center hit.
        assert_eq!(
            hex_cell_of(&pt(HEX_ODD_ROW_OFFSET, -0.75)),
            HexCell { row: -1, col: 0 }
        );
    }

    #[test]
    fn isbell_recurrences() {
        // Right neighbor rule and anchor.
        assert_eq!(isbell_color(&HexCell { row: 0, col: 0 }), 0);
        assert_eq!(isbell_color(&HexCell { row: 0, col: 1 }), 1);
        for row in -10i64..10 {
            for col in -10i64..10 {
                let c = isbell_color(&HexCell { row, col });
                let right = isbell_color(&HexCell { row, col: col + 1 });
                assert_eq!(right, (c + 1) % 7);
                // Below-left / below-right depend on the row parity.
                let (bl, br) = if row.rem_euclid(2) == 0 {
                    (HexCell { row: row - 1, col: col - 1 }, HexCell { row: row - 1, col })
                } else {
                    (HexCell { row: row - 1, col }, HexCell { row: row - 1, col: col + 1 })
                };
                assert_eq!(isbell_color(&bl), (c + 4) % 7);
                assert_eq!(isbell_color(&br), (c + 5) % 7);
            }
        }
    }

    #[test]
    fn figure_row_pattern() {
        // Three consecutive rows read 3,4,5 / 0,1,2 / 5,6,0.
        let read = |row: i64| -> Vec<u32> {
            (0..3).map(|col| isbell_color(&HexCell { row, col })).collect()
        };
        assert_eq!(read(1), vec![3, 4, 5]);
        assert_eq!(read(0), vec![0, 1, 2]);
        assert_eq!(read(-1), vec![5, 6, 0]);
    }

    #[test]
    fn two_rows_down_same_column_stack() {
        // One below-right step then one below-left step returns to the same
        // abscissa two rows down and adds 4 + 5 = 2 (mod 7).
        let c = isbell_color(&HexCell { row: -2, col: 0 });
        assert_eq!(c, 2);
        let center0 = HexCell { row: 0, col: 0 }.center();
        let center2 = HexCell { row: -2, col: 0 }.center();
        assert_eq!(center0.x, center2.x);
    }

    #[test]
    fn single_disk_one_color() {
        let c = color_unit7(&unit_instance(&[(0.3, 0.4)])).unwrap();
        assert_eq!(c.num_colors(), 1);
    }

    #[test]
    fn same_cell_same_color() {
        let inst = unit_instance(&[(0.05, 0.03), (-0.05, -0.08)]);
        let c = color_unit7(&inst).unwrap();
        assert_eq!(c.color(0), c.color(1));
        let g = IntersectionGraph::from_disks(&inst);
        assert!(g.has_edge(0, 1), "same-cell centers are within distance 1");
    }

    #[test]
    fn kind_mismatch_rejected() {
        let d = Disk::new(0, pt(0.0, 0.0), 1.0).unwrap();
        let general = DiskInstance::new(Kind::General, vec![d]).unwrap();
        assert!(color_unit7(&general).is_err());
        assert!(approx3_unit(&general).is_err());
    }

    #[test]
    fn region_examples() {
        assert_eq!(region_of(&pt(1.5, 0.5)), Region::R0);
        assert_eq!(region_of(&pt(0.5, 0.5)), Region::R2);
        assert_eq!(region_of(&pt(1.5, 1.5)), Region::R1);
        // Euclidean mod on negatives: floor(-1.5) = -2 and -2 mod 4 = 2.
        assert_eq!(region_of(&pt(-1.5, 1.5)), Region::R2);
        assert_eq!(region_of(&pt(-0.5, 0.5)), Region::R0);
    }

    #[test]
    fn approx3_cluster_case() {
        // Three mutually intersecting unit disks: one clique.
        let inst = unit_instance(&[(0.0, 0.0), (0.5, 0.0), (0.25, 0.4)]);
        let res = approx3_unit(&inst).unwrap();
        assert_eq!(res.lower_bound, 1);
        assert_eq!(res.coloring.num_colors(), 1);
    }

    #[test]
    fn approx3_empty_instance() {
        let res = approx3_unit(&unit_instance(&[])).unwrap();
        assert_eq!(res.lower_bound, 1);
        assert_eq!(res.coloring.num_colors(), 0);
    }

    #[test]
    fn approx3_c5_uses_step_two() {
        // Regular pentagon with circumradius 0.6 realizes C5 as unit disks:
        // side 0.705 <= 1 < diagonal 1.141.
        let centers: Vec<(f64, f64)> = (0..5)
            .map(|k| {
                let a = std::f64::consts::TAU * k as f64 / 5.0 + 0.1;
                (0.6 * a.cos() + 3.2, 0.6 * a.sin() + 2.7)
            })
            .collect();
        let inst = unit_instance(&centers);
        let g = IntersectionGraph::from_disks(&inst);
        assert_eq!(g.m(), 5, "pentagon should realize exactly the C5 edges");
        let res = approx3_unit(&inst).unwrap();
        assert_eq!(res.lower_bound, 2);
        assert!(res.coloring.num_colors() <= 6);
        assert_eq!(validate_subcoloring(&g, &res.coloring).unwrap(), None);
    }

    #[test]
    fn assigned_cell_is_nearest_among_neighbors() {
        // The assigned cell's center is no farther than any surrounding
        // cell's, i.e., the point lies in the assigned cell.
        let mut rng = crate::rng::Rng::new(31);
        for _ in 0..5000 {
            let p = pt(rng.uniform(-12.0, 12.0), rng.uniform(-12.0, 12.0));
            let cell = hex_cell_of(&p);
            let d = p.dist_sq(&cell.center());
            for dr in -1..=1i64 {
                for dc in -1..=1i64 {
                    let other = HexCell {
                        row: cell.row + dr,
                        col: cell.col + dc,
                    };
                    assert!(
                        d <= p.dist_sq(&other.center()),
                        "{p} assigned to {cell:?} but {other:?} is closer"
                    );
                }
            }
        }
    }

    #[test]
    fn region_rectangles_are_separated() {
        // Sampled pairs in distinct rectangles of one region are > 1 apart.
        let mut rng = crate::rng::Rng::new(99);
        for _ in 0..4000 {
            let a = pt(rng.uniform(-8.0, 8.0), rng.uniform(-8.0, 8.0));
            let b = pt(rng.uniform(-8.0, 8.0), rng.uniform(-8.0, 8.0));
            let (ra, rb) = (region_of(&a), region_of(&b));
            if ra == rb && ra.rectangle_id(&a) != rb.rectangle_id(&b) {
                assert!(
                    a.dist_sq(&b) > 1.0,
                    "centers {a} and {b} in distinct {ra:?} rectangles are within distance 1"
                );
            }
        }
    }
}
