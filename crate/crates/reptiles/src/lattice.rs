//! Polycubes and the isometries of the cubic lattice.
//!
//! A cell is a unit cube keyed by its minimum integer corner; a polycube is
//! a finite non-empty set of cells. Lattice isometries are signed
//! permutation matrices plus integer translations, so congruence, canonical
//! forms and scaling are all decided with exact integer arithmetic.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

/// Errors from polycube and isometry construction.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    /// A polycube must contain at least one cell.
    #[error("a polycube must contain at least one cell")]
    EmptyPolycube,
    /// Scale factors must be positive.
    #[error("scale factor must be at least 1, got {0}")]
    BadScale(i32),
    /// The rotation part of an isometry must be a signed permutation matrix.
    #[error("matrix is not a signed permutation: {0:?}")]
    NotSignedPermutation([[i32; 3]; 3]),
}

/// A unit lattice cube, identified by its minimum integer corner.
///
/// The cell `(x, y, z)` is the closed cube `[x,x+1] x [y,y+1] x [z,z+1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub x: i32,
    pub y: i32,
    pub z: i32,
}

impl Cell {
    pub const fn new(x: i32, y: i32, z: i32) -> Self {
        Cell { x, y, z }
    }

    /// The six face-neighbouring cells.
    pub fn face_neighbors(self) -> [Cell; 6] {
        let Cell { x, y, z } = self;
        [
            Cell::new(x - 1, y, z),
            Cell::new(x + 1, y, z),
            Cell::new(x, y - 1, z),
            Cell::new(x, y + 1, z),
            Cell::new(x, y, z - 1),
            Cell::new(x, y, z + 1),
        ]
    }

    /// True when the two closed cubes intersect, i.e. they differ by at
    /// most one in every coordinate (face, edge, or corner contact).
    pub fn touches(self, other: Cell) -> bool {
        (self.x - other.x).abs() <= 1
            && (self.y - other.y).abs() <= 1
            && (self.z - other.z).abs() <= 1
    }

    /// True when the cells share a full face.
    pub fn is_face_adjacent(self, other: Cell) -> bool {
        let d = (self.x - other.x).abs() + (self.y - other.y).abs() + (self.z - other.z).abs();
        d == 1
    }

    fn to_array(self) -> [i32; 3] {
        [self.x, self.y, self.z]
    }
}

impl From<(i32, i32, i32)> for Cell {
    fn from((x, y, z): (i32, i32, i32)) -> Self {
        Cell::new(x, y, z)
    }
}

impl From<[i32; 3]> for Cell {
    fn from([x, y, z]: [i32; 3]) -> Self {
        Cell::new(x, y, z)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.z)
    }
}

/// A finite, non-empty set of unit lattice cells.
///
/// Cells are stored sorted and deduplicated, so two polycubes are equal as
/// values exactly when they are equal as sets, and the derived ordering is
/// the lexicographic ordering of sorted cell lists.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polycube {
    cells: Vec<Cell>,
}

impl Polycube {
    /// Builds a polycube from any collection of cells. Duplicates are
    /// silently removed; an empty collection is rejected.
    pub fn new<I, C>(cells: I) -> Result<Self, LatticeError>
    where
        I: IntoIterator<Item = C>,
        C: Into<Cell>,
    {
        let mut cells: Vec<Cell> = cells.into_iter().map(Into::into).collect();
        if cells.is_empty() {
            return Err(LatticeError::EmptyPolycube);
        }
        cells.sort_unstable();
        cells.dedup();
        Ok(Polycube { cells })
    }

    /// The cells in sorted order.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Number of cells.
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        false // non-empty by construction
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.cells.binary_search(&cell).is_ok()
    }

    /// Componentwise minimum corner over all cells.
    pub fn min_corner(&self) -> [i32; 3] {
        let mut m = self.cells[0].to_array();
        for c in &self.cells[1..] {
            m[0] = m[0].min(c.x);
            m[1] = m[1].min(c.y);
            m[2] = m[2].min(c.z);
        }
        m
    }

    /// Componentwise maximum corner (exclusive) over all cells.
    pub fn max_corner_exclusive(&self) -> [i32; 3] {
        let mut m = self.cells[0].to_array();
        for c in &self.cells[1..] {
            m[0] = m[0].max(c.x);
            m[1] = m[1].max(c.y);
            m[2] = m[2].max(c.z);
        }
        [m[0] + 1, m[1] + 1, m[2] + 1]
    }

    /// The polycube translated by `v`.
    pub fn translate(&self, v: [i32; 3]) -> Polycube {
        let cells = self
            .cells
            .iter()
            .map(|c| Cell::new(c.x + v[0], c.y + v[1], c.z + v[2]))
            .collect();
        // Translation preserves the sorted order.
        Polycube { cells }
    }

    /// Translates the minimum corner to the origin.
    pub fn normalized(&self) -> Polycube {
        let m = self.min_corner();
        self.translate([-m[0], -m[1], -m[2]])
    }

    /// True iff the graph on cells with edges between face-adjacent cells
    /// is connected.
    pub fn is_face_connected(&self) -> bool {
        let set: HashSet<Cell> = self.cells.iter().copied().collect();
        let mut seen = HashSet::with_capacity(set.len());
        let mut queue = VecDeque::new();
        queue.push_back(self.cells[0]);
        seen.insert(self.cells[0]);
        while let Some(c) = queue.pop_front() {
            for n in c.face_neighbors() {
                if set.contains(&n) && seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        seen.len() == self.cells.len()
    }

    /// True iff the union of closed cells is a 3-manifold with boundary.
    ///
    /// Operationally: every edge of the boundary quad complex lies on
    /// exactly two boundary quads, and the link of every boundary vertex
    /// in that complex is a single cycle. The first condition rules out
    /// two cells pinched along an edge, the second two cells pinched at a
    /// corner.
    pub fn is_manifold(&self) -> bool {
        use std::collections::HashMap;

        let set: HashSet<Cell> = self.cells.iter().copied().collect();
        // Boundary quads as (vertex list) per face of each exposed cell.
        // Edge key: ordered pair of lattice points.
        type Point = [i32; 3];
        type Edge = (Point, Point);
        let mut edge_quads: HashMap<Edge, u32> = HashMap::new();
        // For each vertex, the boundary edges at that vertex paired up by
        // the quads that join them: vertex -> list of (edge, edge).
        let mut vertex_links: HashMap<Point, Vec<(Edge, Edge)>> = HashMap::new();

        let edge_key = |a: Point, b: Point| -> Edge {
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        };

        for &cell in &self.cells {
            for dir in crate::topology::FaceDir::ALL {
                let n = dir.neighbor(cell);
                if set.contains(&n) {
                    continue;
                }
                let vs = dir.quad_corners(cell);
                for i in 0..4 {
                    let a = vs[i];
                    let b = vs[(i + 1) % 4];
                    let e = edge_key(a, b);
                    *edge_quads.entry(e).or_insert(0) += 1;
                }
                // The two quad edges meeting at each corner of this quad
                // contribute one link arc at that corner.
                for i in 0..4 {
                    let prev = edge_key(vs[(i + 3) % 4], vs[i]);
                    let next = edge_key(vs[i], vs[(i + 1) % 4]);
                    vertex_links.entry(vs[i]).or_default().push((prev, next));
                }
            }
        }

        if edge_quads.values().any(|&n| n != 2) {
            return false;
        }

        // Each boundary vertex: the graph whose nodes are boundary edges at
        // the vertex and whose arcs are the quads joining them must be one
        // cycle. All nodes have degree 2 here (each edge lies on 2 quads),
        // so it suffices to check connectivity.
        for arcs in vertex_links.values() {
            let mut adj: HashMap<Edge, Vec<Edge>> = HashMap::new();
            for &(a, b) in arcs {
                adj.entry(a).or_default().push(b);
                adj.entry(b).or_default().push(a);
            }
            let start = arcs[0].0;
            let mut seen: HashSet<Edge> = HashSet::new();
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(e) = stack.pop() {
                for &n in adj.get(&e).into_iter().flatten() {
                    if seen.insert(n) {
                        stack.push(n);
                    }
                }
            }
            if seen.len() != adj.len() {
                return false;
            }
        }
        true
    }

    /// Replaces each cell by the `s^3` cells of its `s`-fold subdivision,
    /// i.e. the polycube scaled by the integer factor `s`.
    pub fn scale(&self, s: i32) -> Result<Polycube, LatticeError> {
        if s < 1 {
            return Err(LatticeError::BadScale(s));
        }
        let mut cells = Vec::with_capacity(self.cells.len() * (s as usize).pow(3));
        for c in &self.cells {
            for dx in 0..s {
                for dy in 0..s {
                    for dz in 0..s {
                        cells.push(Cell::new(c.x * s + dx, c.y * s + dy, c.z * s + dz));
                    }
                }
            }
        }
        cells.sort_unstable();
        Ok(Polycube { cells })
    }

    /// The lexicographically least translated-to-origin image over all
    /// group elements of `mode`, plus one isometry realizing it.
    ///
    /// Two polycubes are congruent in the given mode iff their canonical
    /// forms are equal, and `canonical_form` is idempotent.
    pub fn canonical_form(&self, mode: SymmetryMode) -> (Polycube, Isometry) {
        let mut best: Option<(Polycube, Isometry)> = None;
        for g in symmetry_group(mode) {
            let image = g.apply(self);
            let m = image.min_corner();
            let t = [-m[0], -m[1], -m[2]];
            let candidate = image.translate(t);
            let better = match &best {
                None => true,
                Some((b, _)) => candidate < *b,
            };
            if better {
                let witness = Isometry {
                    rot: g.rot,
                    trans: [g.trans[0] + t[0], g.trans[1] + t[1], g.trans[2] + t[2]],
                };
                best = Some((candidate, witness));
            }
        }
        best.unwrap()
    }
}

/// Which congruences are admitted: rotations only, or rotations and
/// reflections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymmetryMode {
    /// The 24 rotations of the cube.
    Proper,
    /// All 48 signed permutations, including reflections.
    Full,
}

/// A lattice-preserving rigid motion: a signed permutation matrix plus an
/// integer translation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Isometry {
    rot: [[i32; 3]; 3],
    trans: [i32; 3],
}

impl Isometry {
    /// Validates that `rot` is a signed permutation matrix (each row and
    /// column has exactly one nonzero entry, equal to +-1).
    pub fn new(rot: [[i32; 3]; 3], trans: [i32; 3]) -> Result<Self, LatticeError> {
        let mut col_used = [false; 3];
        for row in &rot {
            let mut nonzero = 0;
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 | -1 => {
                        nonzero += 1;
                        if col_used[j] {
                            return Err(LatticeError::NotSignedPermutation(rot));
                        }
                        col_used[j] = true;
                    }
                    _ => return Err(LatticeError::NotSignedPermutation(rot)),
                }
            }
            if nonzero != 1 {
                return Err(LatticeError::NotSignedPermutation(rot));
            }
        }
        Ok(Isometry { rot, trans })
    }

    pub const fn identity() -> Self {
        Isometry {
            rot: [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            trans: [0, 0, 0],
        }
    }

    /// The pure translation by `v`.
    pub const fn translation(v: [i32; 3]) -> Self {
        Isometry {
            rot: [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            trans: v,
        }
    }

    pub fn rotation_matrix(&self) -> [[i32; 3]; 3] {
        self.rot
    }

    pub fn translation_vector(&self) -> [i32; 3] {
        self.trans
    }

    pub fn determinant(&self) -> i32 {
        let r = &self.rot;
        r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
            - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
    }

    /// True when the motion is orientation-preserving.
    pub fn is_proper(&self) -> bool {
        self.determinant() == 1
    }

    /// Image of a lattice point.
    pub fn apply_point(&self, p: [i32; 3]) -> [i32; 3] {
        let r = &self.rot;
        [
            r[0][0] * p[0] + r[0][1] * p[1] + r[0][2] * p[2] + self.trans[0],
            r[1][0] * p[0] + r[1][1] * p[1] + r[1][2] * p[2] + self.trans[1],
            r[2][0] * p[0] + r[2][1] * p[1] + r[2][2] * p[2] + self.trans[2],
        ]
    }

    /// Image of a cell: the cube's corners are mapped and the minimum
    /// corner of the image cube is taken. Because each output axis depends
    /// on a single input axis, the componentwise minimum of the images of
    /// two opposite corners suffices.
    pub fn apply_cell(&self, c: Cell) -> Cell {
        let a = self.apply_point([c.x, c.y, c.z]);
        let b = self.apply_point([c.x + 1, c.y + 1, c.z + 1]);
        Cell::new(a[0].min(b[0]), a[1].min(b[1]), a[2].min(b[2]))
    }

    /// Image of a polycube.
    pub fn apply(&self, p: &Polycube) -> Polycube {
        let mut cells: Vec<Cell> = p.cells.iter().map(|&c| self.apply_cell(c)).collect();
        cells.sort_unstable();
        Polycube { cells }
    }

    /// Composition `self . other` (apply `other` first).
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let mut rot = [[0i32; 3]; 3];
        for (i, row) in rot.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = (0..3).map(|k| self.rot[i][k] * other.rot[k][j]).sum();
            }
        }
        let t = self.apply_point(other.trans);
        Isometry { rot, trans: t }
    }

    /// The inverse motion. For signed permutations the inverse rotation is
    /// the transpose.
    pub fn inverse(&self) -> Isometry {
        let mut rot = [[0i32; 3]; 3];
        for (i, row) in rot.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = self.rot[j][i];
            }
        }
        let r = Isometry {
            rot,
            trans: [0, 0, 0],
        };
        let t = r.apply_point(self.trans);
        Isometry {
            rot,
            trans: [-t[0], -t[1], -t[2]],
        }
    }

    /// `self` followed by the translation `v`.
    pub fn then_translate(&self, v: [i32; 3]) -> Isometry {
        Isometry {
            rot: self.rot,
            trans: [
                self.trans[0] + v[0],
                self.trans[1] + v[1],
                self.trans[2] + v[2],
            ],
        }
    }
}

impl fmt::Display for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{} {} {}; {} {} {}; {} {} {}] + ({},{},{})",
            self.rot[0][0],
            self.rot[0][1],
            self.rot[0][2],
            self.rot[1][0],
            self.rot[1][1],
            self.rot[1][2],
            self.rot[2][0],
            self.rot[2][1],
            self.rot[2][2],
            self.trans[0],
            self.trans[1],
            self.trans[2]
        )
    }
}

fn generate_group(full: bool) -> Vec<Isometry> {
    // Axis permutations in lexicographic order, sign patterns with +1
    // before -1, so the identity comes first in both modes.
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut out = Vec::with_capacity(if full { 48 } else { 24 });
    for perm in PERMS {
        for signs in 0..8u32 {
            let mut rot = [[0i32; 3]; 3];
            for i in 0..3 {
                let s = if signs & (4 >> i) == 0 { 1 } else { -1 };
                rot[i][perm[i]] = s;
            }
            let iso = Isometry {
                rot,
                trans: [0, 0, 0],
            };
            if full || iso.is_proper() {
                out.push(iso);
            }
        }
    }
    out
}

/// The symmetry group of the lattice fixing the origin: exactly 24
/// rotations in [`SymmetryMode::Proper`], 48 signed permutations in
/// [`SymmetryMode::Full`]. The identity is the first element and the order
/// is fixed, which fixes every tie-break in this crate.
pub fn symmetry_group(mode: SymmetryMode) -> &'static [Isometry] {
    static PROPER: OnceLock<Vec<Isometry>> = OnceLock::new();
    static FULL: OnceLock<Vec<Isometry>> = OnceLock::new();
    match mode {
        SymmetryMode::Proper => PROPER.get_or_init(|| generate_group(false)),
        SymmetryMode::Full => FULL.get_or_init(|| generate_group(true)),
    }
}

/// Finds an isometry carrying `a` onto `b`, if one exists.
///
/// Group elements are tried in the fixed group order (identity first); for
/// each element the translation is forced by aligning minimum corners, so
/// the witness returned is deterministic.
pub fn congruent(a: &Polycube, b: &Polycube, mode: SymmetryMode) -> Option<Isometry> {
    if a.len() != b.len() {
        return None;
    }
    let mb = b.min_corner();
    for g in symmetry_group(mode) {
        let image = g.apply(a);
        let mi = image.min_corner();
        let t = [mb[0] - mi[0], mb[1] - mi[1], mb[2] - mi[2]];
        if image.translate(t) == *b {
            return Some(g.then_translate(t));
        }
    }
    None
}
