//! Topological invariants of polycubes.
//!
//! The boundary of a manifold polycube is a closed surface built from unit
//! quads; this module extracts it, splits it into connected components,
//! and computes Euler characteristic and genus per component. It also
//! computes mod-2 Betti numbers of the full cubical complex (vertices,
//! edges, squares, cubes) from boundary-matrix ranks, giving the
//! homeomorphism-type fingerprint `(b0, b1, b2)` plus component genera.
//!
//! Homology is over the two-element field. For compact complements of
//! graphs in the 3-sphere — everything this crate builds — homology is
//! torsion-free in the relevant degrees, so the mod-2 ranks agree with the
//! rational ones.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::lattice::{Cell, Polycube};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TopologyError {
    /// Boundary extraction requires a manifold polycube.
    #[error("polycube is not a 3-manifold with boundary")]
    NotManifold,
}

/// Outward face direction of a boundary quad.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FaceDir {
    XNeg,
    XPos,
    YNeg,
    YPos,
    ZNeg,
    ZPos,
}

impl FaceDir {
    pub const ALL: [FaceDir; 6] = [
        FaceDir::XNeg,
        FaceDir::XPos,
        FaceDir::YNeg,
        FaceDir::YPos,
        FaceDir::ZNeg,
        FaceDir::ZPos,
    ];

    /// The neighbouring cell across this face.
    pub fn neighbor(self, c: Cell) -> Cell {
        match self {
            FaceDir::XNeg => Cell::new(c.x - 1, c.y, c.z),
            FaceDir::XPos => Cell::new(c.x + 1, c.y, c.z),
            FaceDir::YNeg => Cell::new(c.x, c.y - 1, c.z),
            FaceDir::YPos => Cell::new(c.x, c.y + 1, c.z),
            FaceDir::ZNeg => Cell::new(c.x, c.y, c.z - 1),
            FaceDir::ZPos => Cell::new(c.x, c.y, c.z + 1),
        }
    }

    /// The four lattice-point corners of the face of `c` in this
    /// direction, ordered counterclockwise as seen from outside (so that
    /// the induced normal points away from the cell).
    pub fn quad_corners(self, c: Cell) -> [[i32; 3]; 4] {
        let (x, y, z) = (c.x, c.y, c.z);
        match self {
            FaceDir::XPos => [
                [x + 1, y, z],
                [x + 1, y + 1, z],
                [x + 1, y + 1, z + 1],
                [x + 1, y, z + 1],
            ],
            FaceDir::XNeg => [[x, y, z], [x, y, z + 1], [x, y + 1, z + 1], [x, y + 1, z]],
            FaceDir::YPos => [
                [x, y + 1, z],
                [x, y + 1, z + 1],
                [x + 1, y + 1, z + 1],
                [x + 1, y + 1, z],
            ],
            FaceDir::YNeg => [[x, y, z], [x + 1, y, z], [x + 1, y, z + 1], [x, y, z + 1]],
            FaceDir::ZPos => [
                [x, y, z + 1],
                [x + 1, y, z + 1],
                [x + 1, y + 1, z + 1],
                [x, y + 1, z + 1],
            ],
            FaceDir::ZNeg => [[x, y, z], [x, y + 1, z], [x + 1, y + 1, z], [x + 1, y, z]],
        }
    }
}

/// One unit square of the boundary: a cell plus the exposed face.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Quad {
    pub cell: Cell,
    pub dir: FaceDir,
}

/// The boundary 2-complex of a manifold polycube.
///
/// A quad is present exactly when the cell is in the polycube and its
/// face-neighbour is not; quads are stored in sorted order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadSurface {
    quads: Vec<Quad>,
}

impl QuadSurface {
    pub fn quads(&self) -> &[Quad] {
        &self.quads
    }

    pub fn quad_count(&self) -> usize {
        self.quads.len()
    }
}

/// A connected component of the boundary surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceComponent {
    pub quad_count: usize,
    pub euler_characteristic: i64,
    pub genus: usize,
}

/// Mod-2 Betti numbers of the cubical complex of a polycube.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BettiTriple {
    pub b0: usize,
    pub b1: usize,
    pub b2: usize,
}

impl std::fmt::Display for BettiTriple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.b0, self.b1, self.b2)
    }
}

/// Extracts the boundary quad complex of a manifold polycube.
///
/// The quad count equals `6|P| - 2 * (number of face-adjacent cell pairs)`.
pub fn boundary_surface(p: &Polycube) -> Result<QuadSurface, TopologyError> {
    if !p.is_manifold() {
        return Err(TopologyError::NotManifold);
    }
    let mut quads = Vec::new();
    for &cell in p.cells() {
        for dir in FaceDir::ALL {
            if !p.contains(dir.neighbor(cell)) {
                quads.push(Quad { cell, dir });
            }
        }
    }
    quads.sort_unstable();
    Ok(QuadSurface { quads })
}

type Point = [i32; 3];
type EdgeKey = (Point, Point);

fn edge_key(a: Point, b: Point) -> EdgeKey {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Splits the surface into connected components (quads adjacent when they
/// share an edge) and computes Euler characteristic and genus of each.
///
/// Components are listed in order of their least quad.
pub fn surface_components(surface: &QuadSurface) -> Vec<SurfaceComponent> {
    let quads = &surface.quads;
    let mut edge_to_quads: HashMap<EdgeKey, Vec<usize>> = HashMap::new();
    for (qi, q) in quads.iter().enumerate() {
        let vs = q.dir.quad_corners(q.cell);
        for i in 0..4 {
            edge_to_quads
                .entry(edge_key(vs[i], vs[(i + 1) % 4]))
                .or_default()
                .push(qi);
        }
    }

    let mut component = vec![usize::MAX; quads.len()];
    let mut components = Vec::new();
    for start in 0..quads.len() {
        if component[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = Vec::new();
        let mut stack = vec![start];
        component[start] = id;
        while let Some(qi) = stack.pop() {
            members.push(qi);
            let q = &quads[qi];
            let vs = q.dir.quad_corners(q.cell);
            for i in 0..4 {
                let e = edge_key(vs[i], vs[(i + 1) % 4]);
                for &other in &edge_to_quads[&e] {
                    if component[other] == usize::MAX {
                        component[other] = id;
                        stack.push(other);
                    }
                }
            }
        }

        let mut vertices: HashSet<Point> = HashSet::new();
        let mut edges: HashSet<EdgeKey> = HashSet::new();
        for &qi in &members {
            let q = &quads[qi];
            let vs = q.dir.quad_corners(q.cell);
            for i in 0..4 {
                vertices.insert(vs[i]);
                edges.insert(edge_key(vs[i], vs[(i + 1) % 4]));
            }
        }
        let chi = vertices.len() as i64 - edges.len() as i64 + members.len() as i64;
        let genus = ((2 - chi) / 2).max(0) as usize;
        components.push(SurfaceComponent {
            quad_count: members.len(),
            euler_characteristic: chi,
            genus,
        });
    }
    components
}

/// True iff the boundary surface has exactly one connected component.
pub fn is_boundary_connected(p: &Polycube) -> Result<bool, TopologyError> {
    Ok(surface_components(&boundary_surface(p)?).len() == 1)
}

/// The full cubical complex of a polycube: all vertices, edges, squares
/// and cubes of its cells, each list sorted for reproducibility.
pub(crate) struct CubicalComplex {
    pub vertices: Vec<Point>,
    /// Edge = (min endpoint, axis).
    pub edges: Vec<(Point, usize)>,
    /// Square = (min corner, normal axis).
    pub squares: Vec<(Point, usize)>,
    pub cubes: Vec<Cell>,
}

impl CubicalComplex {
    pub fn of(p: &Polycube) -> Self {
        let mut vertices: HashSet<Point> = HashSet::new();
        let mut edges: HashSet<(Point, usize)> = HashSet::new();
        let mut squares: HashSet<(Point, usize)> = HashSet::new();
        for c in p.cells() {
            for dx in 0..2 {
                for dy in 0..2 {
                    for dz in 0..2 {
                        vertices.insert([c.x + dx, c.y + dy, c.z + dz]);
                    }
                }
            }
            // Four edges parallel to each axis.
            for axis in 0..3 {
                let (u, v) = ((axis + 1) % 3, (axis + 2) % 3);
                for du in 0..2 {
                    for dv in 0..2 {
                        let mut p0 = [c.x, c.y, c.z];
                        p0[u] += du;
                        p0[v] += dv;
                        edges.insert((p0, axis));
                    }
                }
            }
            // Two squares normal to each axis.
            for axis in 0..3 {
                for d in 0..2 {
                    let mut p0 = [c.x, c.y, c.z];
                    p0[axis] += d;
                    squares.insert((p0, axis));
                }
            }
        }
        let mut vertices: Vec<Point> = vertices.into_iter().collect();
        vertices.sort_unstable();
        let mut edges: Vec<(Point, usize)> = edges.into_iter().collect();
        edges.sort_unstable();
        let mut squares: Vec<(Point, usize)> = squares.into_iter().collect();
        squares.sort_unstable();
        CubicalComplex {
            vertices,
            edges,
            squares,
            cubes: p.cells().to_vec(),
        }
    }

    pub fn counts(&self) -> (usize, usize, usize, usize) {
        (
            self.vertices.len(),
            self.edges.len(),
            self.squares.len(),
            self.cubes.len(),
        )
    }
}

/// Bit-packed row-reduction rank over the two-element field.
struct Gf2Rank {
    /// Reduced pivot rows, each with its pivot column.
    pivots: Vec<(usize, Vec<u64>)>,
    words: usize,
}

impl Gf2Rank {
    fn new(cols: usize) -> Self {
        Gf2Rank {
            pivots: Vec::new(),
            words: cols.div_ceil(64),
        }
    }

    /// Reduces `row` against the pivots collected so far; if a nonzero
    /// remainder survives it becomes a new pivot. Returns whether the row
    /// was independent.
    fn add_row(&mut self, mut row: Vec<u64>) -> bool {
        debug_assert_eq!(row.len(), self.words);
        for (pivot_col, pivot_row) in &self.pivots {
            let w = pivot_col / 64;
            if row[w] & (1 << (pivot_col % 64)) != 0 {
                for (r, p) in row.iter_mut().zip(pivot_row) {
                    *r ^= p;
                }
            }
        }
        if let Some(col) = first_set_bit(&row) {
            self.pivots.push((col, row));
            true
        } else {
            false
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn first_set_bit(row: &[u64]) -> Option<usize> {
    for (w, &bits) in row.iter().enumerate() {
        if bits != 0 {
            return Some(w * 64 + bits.trailing_zeros() as usize);
        }
    }
    None
}

fn rank_of_boundary<I>(rows: I, cols: usize) -> usize
where
    I: Iterator<Item = Vec<u64>>,
{
    let mut elim = Gf2Rank::new(cols);
    for row in rows {
        elim.add_row(row);
    }
    elim.rank()
}

/// Mod-2 Betti numbers `(b0, b1, b2)` of the cubical complex of `p`,
/// computed from boundary-matrix ranks: `b_i = dim ker d_i - rank d_{i+1}`.
///
/// Manifoldness is not required. For any polycube complex the top boundary
/// map is injective, so `b3 = 0` and is not reported.
pub fn betti_numbers(p: &Polycube) -> BettiTriple {
    let cx = CubicalComplex::of(p);
    let (nv, ne, nf, nc) = cx.counts();

    let vertex_index: HashMap<Point, usize> = cx
        .vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let edge_index: HashMap<(Point, usize), usize> =
        cx.edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let square_index: HashMap<(Point, usize), usize> = cx
        .squares
        .iter()
        .enumerate()
        .map(|(i, &s)| (s, i))
        .collect();

    // d1: edges -> vertices.
    let vwords = nv.div_ceil(64);
    let rank1 = rank_of_boundary(
        cx.edges.iter().map(|&(p0, axis)| {
            let mut row = vec![0u64; vwords];
            let mut p1 = p0;
            p1[axis] += 1;
            for q in [p0, p1] {
                let i = vertex_index[&q];
                row[i / 64] ^= 1 << (i % 64);
            }
            row
        }),
        nv,
    );

    // d2: squares -> edges. A square with min corner p0 normal to `axis`
    // has four sides: two parallel to each tangent axis.
    let ewords = ne.div_ceil(64);
    let rank2 = rank_of_boundary(
        cx.squares.iter().map(|&(p0, axis)| {
            let mut row = vec![0u64; ewords];
            let (u, v) = ((axis + 1) % 3, (axis + 2) % 3);
            for (dir, step) in [(u, v), (v, u)] {
                for d in 0..2 {
                    let mut e0 = p0;
                    e0[step] += d;
                    let i = edge_index[&(e0, dir)];
                    row[i / 64] ^= 1 << (i % 64);
                }
            }
            row
        }),
        ne,
    );

    // d3: cubes -> squares.
    let fwords = nf.div_ceil(64);
    let rank3 = rank_of_boundary(
        cx.cubes.iter().map(|c| {
            let mut row = vec![0u64; fwords];
            for axis in 0..3 {
                for d in 0..2 {
                    let mut s0 = [c.x, c.y, c.z];
                    s0[axis] += d;
                    let i = square_index[&(s0, axis)];
                    row[i / 64] ^= 1 << (i % 64);
                }
            }
            row
        }),
        nf,
    );

    debug_assert_eq!(rank3, nc, "top boundary map is injective");

    BettiTriple {
        b0: nv - rank1,
        b1: ne - rank1 - rank2,
        b2: nf - rank2 - rank3,
    }
}

/// Alternating sum `V - E + F - C` of the cubical 3-complex.
pub fn euler_characteristic_3d(p: &Polycube) -> i64 {
    let (nv, ne, nf, nc) = CubicalComplex::of(p).counts();
    nv as i64 - ne as i64 + nf as i64 - nc as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Polycube;

    fn poly(cells: &[(i32, i32, i32)]) -> Polycube {
        Polycube::new(cells.iter().copied()).unwrap()
    }

    fn block_minus_center() -> Polycube {
        let mut cells = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    if (x, y, z) != (1, 1, 1) {
                        cells.push((x, y, z));
                    }
                }
            }
        }
        poly(&cells)
    }

    #[test]
    fn quad_corners_wind_outward() {
        // (v1-v0) x (v2-v1) must equal the outward normal for every face.
        let c = Cell::new(2, -3, 5);
        for (dir, normal) in FaceDir::ALL.iter().zip([
            [-1, 0, 0],
            [1, 0, 0],
            [0, -1, 0],
            [0, 1, 0],
            [0, 0, -1],
            [0, 0, 1],
        ]) {
            let v = dir.quad_corners(c);
            let a = [v[1][0] - v[0][0], v[1][1] - v[0][1], v[1][2] - v[0][2]];
            let b = [v[2][0] - v[1][0], v[2][1] - v[1][1], v[2][2] - v[1][2]];
            let cross = [
                a[1] * b[2] - a[2] * b[1],
                a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0],
            ];
            assert_eq!(cross, normal, "winding of {dir:?}");
        }
    }

    #[test]
    fn unit_cube_surface() {
        let s = boundary_surface(&poly(&[(0, 0, 0)])).unwrap();
        assert_eq!(s.quad_count(), 6);
        let comps = surface_components(&s);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].euler_characteristic, 2);
        assert_eq!(comps[0].genus, 0);
    }

    #[test]
    fn bar_surface() {
        let s = boundary_surface(&poly(&[(0, 0, 0), (0, 0, 1)])).unwrap();
        assert_eq!(s.quad_count(), 10);
    }

    #[test]
    fn quad_count_formula_figure1() {
        let p = crate::fixtures::figure1();
        let cells = p.cells();
        let mut pairs = 0;
        for (i, a) in cells.iter().enumerate() {
            for b in &cells[i + 1..] {
                if a.is_face_adjacent(*b) {
                    pairs += 1;
                }
            }
        }
        let s = boundary_surface(&p).unwrap();
        assert_eq!(s.quad_count(), 6 * p.len() - 2 * pairs);
    }

    #[test]
    fn boundary_requires_manifold() {
        assert_eq!(
            boundary_surface(&poly(&[(0, 0, 0), (1, 1, 0)])),
            Err(TopologyError::NotManifold)
        );
    }

    #[test]
    fn hollow_block_components() {
        let p = block_minus_center();
        let comps = surface_components(&boundary_surface(&p).unwrap());
        assert_eq!(comps.len(), 2);
        let mut sizes: Vec<usize> = comps.iter().map(|c| c.quad_count).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![6, 54]);
        assert!(comps.iter().all(|c| c.genus == 0));
        assert_eq!(is_boundary_connected(&p), Ok(false));
    }

    #[test]
    fn figure1_topology() {
        let p = crate::fixtures::figure1();
        assert!(p.is_manifold());
        let comps = surface_components(&boundary_surface(&p).unwrap());
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].genus, 1);
        assert_eq!(comps[0].euler_characteristic, 0);
        assert_eq!(is_boundary_connected(&p), Ok(true));
        assert_eq!(
            betti_numbers(&p),
            BettiTriple {
                b0: 1,
                b1: 1,
                b2: 0
            }
        );
    }

    #[test]
    fn betti_basics() {
        assert_eq!(
            betti_numbers(&poly(&[(0, 0, 0)])),
            BettiTriple {
                b0: 1,
                b1: 0,
                b2: 0
            }
        );
        assert_eq!(
            betti_numbers(&block_minus_center()),
            BettiTriple {
                b0: 1,
                b1: 0,
                b2: 1
            }
        );
        // Two separated cubes.
        assert_eq!(
            betti_numbers(&poly(&[(0, 0, 0), (3, 0, 0)])),
            BettiTriple {
                b0: 2,
                b1: 0,
                b2: 0
            }
        );
    }

    #[test]
    fn euler_poincare_identity() {
        for p in [
            poly(&[(0, 0, 0)]),
            poly(&[(0, 0, 0), (1, 0, 0), (1, 1, 0)]),
            block_minus_center(),
            crate::fixtures::figure1(),
        ] {
            let b = betti_numbers(&p);
            assert_eq!(
                euler_characteristic_3d(&p),
                b.b0 as i64 - b.b1 as i64 + b.b2 as i64
            );
        }
    }
}
