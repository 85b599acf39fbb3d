//! Building rep-tiles from arc diagrams.
//!
//! An arc diagram encodes a system of disjoint proper arcs in a cube: the
//! cube `[0,m]^3` is refined into `m^3` unit cells and each arc is a taut
//! face-connected cell path running from the bottom face to the top face.
//! Thickening each path gives a tube (a 3-ball regular neighbourhood), and
//! removing the tubes from the cube leaves a solid homeomorphic to the
//! exterior of the arcs.
//!
//! [`construct_reptile`] then pads that exterior with three more cubes and
//! re-attaches a rotated copy of the tubes, producing a polycube `X` of
//! `4 m^3` cells with the key property that `X` and `r(X)` together tile
//! the box `[-m,m) x [-m,m) x [0,2m)` — a cube of side `2m`. Scaling `X`
//! by `2m` and splitting every cell's `2m`-box into such a pair yields an
//! `8 m^3`-piece self-similar decomposition, certified by
//! [`construction_certificate`].

use std::fmt;

use thiserror::Error;

use crate::certify::{brick_certificate, TilingCertificate};
use crate::lattice::{Cell, Isometry, Polycube};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("invalid arc diagram: {}", format_violations(.0))]
    InvalidDiagram(Vec<Violation>),
    #[error("diagram has no arcs to thicken")]
    NoArcs,
}

fn format_violations(vs: &[Violation]) -> String {
    let lines: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
    lines.join("; ")
}

/// A violated arc-diagram condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// Arcs require `m >= 3` (or `m >= 1` with no arcs).
    RefinementTooSmall,
    /// Consecutive path cells must share a face.
    NonAdjacentStep,
    /// A path touches itself away from its own course.
    SelfContact,
    /// Two different arcs touch.
    CrossArcContact,
    /// Endpoint cells must be exactly the first (bottom) and last (top)
    /// cells of the path.
    BadEndpoint,
    /// Path cells must keep one cell of clearance from the side faces.
    SideFaceContact,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ViolationKind::RefinementTooSmall => "RefinementTooSmall",
            ViolationKind::NonAdjacentStep => "NonAdjacentStep",
            ViolationKind::SelfContact => "SelfContact",
            ViolationKind::CrossArcContact => "CrossArcContact",
            ViolationKind::BadEndpoint => "BadEndpoint",
            ViolationKind::SideFaceContact => "SideFaceContact",
        };
        f.write_str(s)
    }
}

/// One violation with the offending cells (empty when the condition is
/// global, e.g. the refinement bound).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Index of the arc involved, when the condition is per-arc.
    pub arc: Option<usize>,
    pub cells: Vec<Cell>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if let Some(a) = self.arc {
            write!(f, " arc {}", a)?;
        }
        for c in &self.cells {
            write!(f, " {}", c)?;
        }
        Ok(())
    }
}

/// Combinatorial proper arcs in the `m`-refined cube.
///
/// Each arc is a sequence of cells inside `[0,m)^3`; the first cell sits
/// on the bottom face (`z = 0`), the last on the top face (`z = m-1`),
/// and the whole path stays clear of the four side faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcDiagram {
    m: i32,
    arcs: Vec<Vec<Cell>>,
}

impl ArcDiagram {
    pub fn new<I, J, C>(m: i32, arcs: I) -> Self
    where
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = C>,
        C: Into<Cell>,
    {
        ArcDiagram {
            m,
            arcs: arcs
                .into_iter()
                .map(|a| a.into_iter().map(Into::into).collect())
                .collect(),
        }
    }

    /// Refinement parameter: the cube is `[0,m)^3` in cell units.
    pub fn m(&self) -> i32 {
        self.m
    }

    pub fn arcs(&self) -> &[Vec<Cell>] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }
}

/// Checks every arc-diagram condition, returning all violations found.
///
/// Tautness: two cells of the diagram may share a vertex only when they
/// are consecutive in the same path, with one exception — the two cells
/// around a 90-degree bend (path distance two) necessarily share an edge
/// and are allowed. Any other contact would let the thickened tubes touch
/// themselves or each other, so it is rejected.
pub fn validate_arc_diagram(d: &ArcDiagram) -> Result<(), Vec<Violation>> {
    let mut violations = Vec::new();
    let m = d.m;

    if m < 1 || (!d.arcs.is_empty() && m < 3) {
        violations.push(Violation {
            kind: ViolationKind::RefinementTooSmall,
            arc: None,
            cells: vec![],
        });
    }

    for (ai, arc) in d.arcs.iter().enumerate() {
        if arc.is_empty() {
            violations.push(Violation {
                kind: ViolationKind::BadEndpoint,
                arc: Some(ai),
                cells: vec![],
            });
            continue;
        }

        for w in arc.windows(2) {
            if !w[0].is_face_adjacent(w[1]) {
                violations.push(Violation {
                    kind: ViolationKind::NonAdjacentStep,
                    arc: Some(ai),
                    cells: vec![w[0], w[1]],
                });
            }
        }

        for (i, &c) in arc.iter().enumerate() {
            let z_ok = if i == 0 {
                c.z == 0
            } else if i == arc.len() - 1 {
                c.z == m - 1
            } else {
                c.z >= 1 && c.z <= m - 2
            };
            if !z_ok {
                violations.push(Violation {
                    kind: ViolationKind::BadEndpoint,
                    arc: Some(ai),
                    cells: vec![c],
                });
            }
            if c.x < 1 || c.x > m - 2 || c.y < 1 || c.y > m - 2 {
                violations.push(Violation {
                    kind: ViolationKind::SideFaceContact,
                    arc: Some(ai),
                    cells: vec![c],
                });
            }
        }

        // Single-cell arcs need z = 0 and z = m-1 at once; with m >= 3
        // the first-cell rule above already flags them, so no extra case.

        for i in 0..arc.len() {
            for j in i + 2..arc.len() {
                if !arc[i].touches(arc[j]) {
                    continue;
                }
                // Two cells at path distance two around a bend share one
                // edge; that contact is unavoidable and harmless.
                let bend = j == i + 2 && arc[i].is_face_adjacent(arc[i + 1]);
                if !bend || arc[i] == arc[j] {
                    violations.push(Violation {
                        kind: ViolationKind::SelfContact,
                        arc: Some(ai),
                        cells: vec![arc[i], arc[j]],
                    });
                }
            }
        }
    }

    for ai in 0..d.arcs.len() {
        for bi in ai + 1..d.arcs.len() {
            for &ca in &d.arcs[ai] {
                for &cb in &d.arcs[bi] {
                    if ca.touches(cb) {
                        violations.push(Violation {
                            kind: ViolationKind::CrossArcContact,
                            arc: Some(ai),
                            cells: vec![ca, cb],
                        });
                    }
                }
            }
        }
    }

    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// The union of all path cells: a disjoint set of tubes, one 3-ball per
/// arc. Requires a valid diagram with at least one arc.
pub fn thicken_arcs(d: &ArcDiagram) -> Result<Polycube, ConstructError> {
    validate_arc_diagram(d).map_err(ConstructError::InvalidDiagram)?;
    if d.arcs.is_empty() {
        return Err(ConstructError::NoArcs);
    }
    Ok(Polycube::new(d.arcs.iter().flatten().copied())
        .expect("validated diagram has at least one arc cell"))
}

/// Output of [`construct_reptile`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionResult {
    /// The rep-tile: `4 m^3` cells.
    pub x: Polycube,
    /// The tube set removed from the cube (`None` when there are no arcs).
    pub tubes: Option<Polycube>,
    /// The half-turn `(x,y,z) -> (x, -1-y, 2m-1-z)` in cell coordinates;
    /// `x` and `rotation(x)` tile the `2m`-cube `[-m,m)^2 x [0,2m)`.
    pub rotation: Isometry,
    pub m: i32,
    pub arc_count: usize,
}

fn box_cells(x0: i32, x1: i32, y0: i32, y1: i32, z0: i32, z1: i32) -> Vec<Cell> {
    let mut cells = Vec::with_capacity(((x1 - x0) * (y1 - y0) * (z1 - z0)) as usize);
    for x in x0..x1 {
        for y in y0..y1 {
            for z in z0..z1 {
                cells.push(Cell::new(x, y, z));
            }
        }
    }
    cells
}

/// Builds the rep-tile of an arc diagram.
///
/// With `C = [0,m)^3`, tube set `A`, pads `C1 = [0,m) x [-m,0) x [0,m)`,
/// `C2 = [-m,0)^2 x [0,m)`, `C3 = [-m,0) x [0,m) x [0,m)` and the
/// half-turn `r`, the result is `X = (C \ A) u C1 u C2 u C3 u r(A)`.
/// `X` has `4 m^3` cells and `X u r(X)` is exactly the box
/// `[-m,m)^2 x [0,2m)`.
pub fn construct_reptile(d: &ArcDiagram) -> Result<ConstructionResult, ConstructError> {
    validate_arc_diagram(d).map_err(ConstructError::InvalidDiagram)?;
    let m = d.m;

    // Half-turn about the line y = 0, z = m: as a point map
    // (x,y,z) -> (x,-y,2m-z), i.e. cells (x,y,z) -> (x,-1-y,2m-1-z).
    let rotation = Isometry::new([[1, 0, 0], [0, -1, 0], [0, 0, -1]], [0, 0, 2 * m])
        .expect("fixed half-turn matrix");

    let tube_cells: Vec<Cell> = d.arcs.iter().flatten().copied().collect();
    let tubes = if tube_cells.is_empty() {
        None
    } else {
        Some(Polycube::new(tube_cells.iter().copied()).unwrap())
    };

    let mut cells = Vec::with_capacity(4 * (m as usize).pow(3));
    let in_tubes = |c: &Cell| tube_cells.contains(c);
    for c in box_cells(0, m, 0, m, 0, m) {
        if !in_tubes(&c) {
            cells.push(c);
        }
    }
    cells.extend(box_cells(0, m, -m, 0, 0, m)); // C1
    cells.extend(box_cells(-m, 0, -m, 0, 0, m)); // C2
    cells.extend(box_cells(-m, 0, 0, m, 0, m)); // C3
    cells.extend(tube_cells.iter().map(|&c| rotation.apply_cell(c)));

    let x = Polycube::new(cells).expect("construction is non-empty");
    debug_assert_eq!(x.len(), 4 * (m as usize).pow(3));

    Ok(ConstructionResult {
        x,
        tubes,
        rotation,
        m,
        arc_count: d.arcs.len(),
    })
}

/// The self-similar decomposition witnessed by the construction: the
/// piece `X`, scale factor `2m`, and `8 m^3` placements, two per cell of
/// `X` (each cell's `2m`-box in the scaled copy is a translate of
/// `X u r(X)`).
pub fn construction_certificate(r: &ConstructionResult) -> TilingCertificate {
    brick_certificate(&r.x, &r.rotation, 2 * r.m)
        .expect("x and r(x) tile the 2m-cube by construction")
}
