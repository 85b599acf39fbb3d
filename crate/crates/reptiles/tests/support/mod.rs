//! Independent oracles for the test suites. Everything here is written
//! against the raw definitions — separate enumeration of the rotation
//! group, bitmask exact cover, and duality-based Betti numbers — so that
//! agreement with the crate is a genuine cross-check, not a tautology.

// Each integration-test target compiles this module separately and uses
// a different subset of it.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use reptiles::lattice::{Cell, Polycube, SymmetryMode};

pub type RawCell = [i32; 3];
/// A translation-normalized shape: sorted cells, minimum corner at origin.
pub type Shape = Vec<RawCell>;

/// All signed 3x3 permutation matrices with determinant +1 (24) or any
/// determinant (48), enumerated from scratch.
pub fn oracle_rotations(mode: SymmetryMode) -> Vec<[[i32; 3]; 3]> {
    let perms = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut out = Vec::new();
    for perm in perms {
        for bits in 0..8 {
            let mut m = [[0i32; 3]; 3];
            for i in 0..3 {
                m[i][perm[i]] = if bits & (1 << i) == 0 { 1 } else { -1 };
            }
            let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
            if mode == SymmetryMode::Full || det == 1 {
                out.push(m);
            }
        }
    }
    out
}

fn rotate_cell(m: &[[i32; 3]; 3], c: RawCell) -> RawCell {
    // Map the cube's two opposite corners and keep the componentwise min.
    let apply = |p: [i32; 3]| {
        [
            m[0][0] * p[0] + m[0][1] * p[1] + m[0][2] * p[2],
            m[1][0] * p[0] + m[1][1] * p[1] + m[1][2] * p[2],
            m[2][0] * p[0] + m[2][1] * p[1] + m[2][2] * p[2],
        ]
    };
    let a = apply(c);
    let b = apply([c[0] + 1, c[1] + 1, c[2] + 1]);
    [a[0].min(b[0]), a[1].min(b[1]), a[2].min(b[2])]
}

pub fn normalize(mut cells: Vec<RawCell>) -> Shape {
    let mut min = cells[0];
    for c in &cells {
        for i in 0..3 {
            min[i] = min[i].min(c[i]);
        }
    }
    for c in &mut cells {
        for i in 0..3 {
            c[i] -= min[i];
        }
    }
    cells.sort_unstable();
    cells
}

/// All fixed (translation-only) face-connected polycubes with `n` cells,
/// by growth with translation-normalized deduplication.
pub fn fixed_polycubes(n: usize) -> BTreeSet<Shape> {
    let mut level: BTreeSet<Shape> = BTreeSet::new();
    level.insert(vec![[0, 0, 0]]);
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for shape in &level {
            let set: HashSet<RawCell> = shape.iter().copied().collect();
            for &[x, y, z] in shape {
                for d in [
                    [1, 0, 0],
                    [-1, 0, 0],
                    [0, 1, 0],
                    [0, -1, 0],
                    [0, 0, 1],
                    [0, 0, -1],
                ] {
                    let c = [x + d[0], y + d[1], z + d[2]];
                    if set.contains(&c) {
                        continue;
                    }
                    let mut grown = shape.clone();
                    grown.push(c);
                    next.insert(normalize(grown));
                }
            }
        }
        level = next;
    }
    level
}

/// Number of congruence classes of `n`-cell polycubes: group the fixed
/// polycubes into orbits under the rotation (or full) group.
pub fn orbit_count(n: usize, mode: SymmetryMode) -> usize {
    let rotations = oracle_rotations(mode);
    let mut remaining = fixed_polycubes(n);
    let mut classes = 0;
    while let Some(shape) = remaining.iter().next().cloned() {
        classes += 1;
        for m in &rotations {
            let image = normalize(shape.iter().map(|&c| rotate_cell(m, c)).collect());
            remaining.remove(&image);
        }
    }
    classes
}

/// Exact-cover existence by memoized bitmask dynamic programming over
/// targets of at most 64 cells: at every state, cover the lowest
/// uncovered bit by any placement mask containing it.
pub fn tiling_exists_bitmask(target: &Polycube, piece: &Polycube, mode: SymmetryMode) -> bool {
    assert!(
        target.len() <= 64,
        "bitmask oracle needs <= 64 target cells"
    );
    if !target.len().is_multiple_of(piece.len()) {
        return false;
    }

    let index: HashMap<RawCell, usize> = target
        .cells()
        .iter()
        .enumerate()
        .map(|(i, c)| ([c.x, c.y, c.z], i))
        .collect();

    // Distinct orientations of the piece.
    let mut orientations: BTreeSet<Shape> = BTreeSet::new();
    for m in oracle_rotations(mode) {
        orientations.insert(normalize(
            piece
                .cells()
                .iter()
                .map(|c| rotate_cell(&m, [c.x, c.y, c.z]))
                .collect(),
        ));
    }

    // All placements as bit masks, grouped by their lowest set bit.
    let mut by_lowest: Vec<Vec<u64>> = vec![Vec::new(); target.len()];
    let bbox_min = target.min_corner();
    let bbox_max = target.max_corner_exclusive();
    for shape in &orientations {
        let extent = shape.last().map(|_| {
            let mut e = [0; 3];
            for c in shape {
                for i in 0..3 {
                    e[i] = e[i].max(c[i]);
                }
            }
            e
        });
        let e = extent.unwrap();
        for ox in bbox_min[0]..bbox_max[0] - e[0] {
            for oy in bbox_min[1]..bbox_max[1] - e[1] {
                for oz in bbox_min[2]..bbox_max[2] - e[2] {
                    let mut mask = 0u64;
                    let mut ok = true;
                    for c in shape {
                        match index.get(&[c[0] + ox, c[1] + oy, c[2] + oz]) {
                            Some(&i) => mask |= 1 << i,
                            None => {
                                ok = false;
                                break;
                            }
                        }
                    }
                    if ok {
                        by_lowest[mask.trailing_zeros() as usize].push(mask);
                    }
                }
            }
        }
    }

    let full: u64 = if target.len() == 64 {
        u64::MAX
    } else {
        (1u64 << target.len()) - 1
    };
    let mut memo: HashMap<u64, bool> = HashMap::new();
    fn solve(
        covered: u64,
        full: u64,
        by_lowest: &[Vec<u64>],
        memo: &mut HashMap<u64, bool>,
    ) -> bool {
        if covered == full {
            return true;
        }
        if let Some(&known) = memo.get(&covered) {
            return known;
        }
        let lowest = (!covered).trailing_zeros() as usize;
        let mut found = false;
        for &mask in &by_lowest[lowest] {
            if mask & covered == 0 && solve(covered | mask, full, by_lowest, memo) {
                found = true;
                break;
            }
        }
        memo.insert(covered, found);
        found
    }
    solve(0, full, &by_lowest, &mut memo)
}

/// Betti numbers by a route that never touches a boundary matrix:
/// components of the complex for `b0`, bounded complement regions for
/// `b2` (duality), and the Euler characteristic for `b1`.
pub fn betti_oracle(p: &Polycube) -> (usize, usize, usize) {
    let cells: Vec<RawCell> = p.cells().iter().map(|c| [c.x, c.y, c.z]).collect();
    let set: HashSet<RawCell> = cells.iter().copied().collect();

    // b0: cells sharing any vertex lie in one component of the complex.
    let mut component: HashMap<RawCell, usize> = HashMap::new();
    let mut b0 = 0;
    for &start in &cells {
        if component.contains_key(&start) {
            continue;
        }
        let id = b0;
        b0 += 1;
        let mut queue = VecDeque::from([start]);
        component.insert(start, id);
        while let Some([x, y, z]) = queue.pop_front() {
            for dx in -1..=1 {
                for dy in -1..=1 {
                    for dz in -1..=1 {
                        let n = [x + dx, y + dy, z + dz];
                        if set.contains(&n) && !component.contains_key(&n) {
                            component.insert(n, id);
                            queue.push_back(n);
                        }
                    }
                }
            }
        }
    }

    // b2: bounded face-connected regions of the complement inside an
    // inflated bounding box.
    let min = p.min_corner();
    let max = p.max_corner_exclusive();
    let lo = [min[0] - 1, min[1] - 1, min[2] - 1];
    let hi = [max[0] + 1, max[1] + 1, max[2] + 1];
    let in_box = |c: RawCell| (0..3).all(|i| c[i] >= lo[i] && c[i] < hi[i]);
    let mut outside: HashSet<RawCell> = HashSet::new();
    let corner = lo;
    let mut queue = VecDeque::from([corner]);
    outside.insert(corner);
    while let Some([x, y, z]) = queue.pop_front() {
        for d in [
            [1, 0, 0],
            [-1, 0, 0],
            [0, 1, 0],
            [0, -1, 0],
            [0, 0, 1],
            [0, 0, -1],
        ] {
            let n = [x + d[0], y + d[1], z + d[2]];
            if in_box(n) && !set.contains(&n) && outside.insert(n) {
                queue.push_back(n);
            }
        }
    }
    let mut voids: HashSet<RawCell> = HashSet::new();
    let mut b2 = 0;
    for x in lo[0]..hi[0] {
        for y in lo[1]..hi[1] {
            for z in lo[2]..hi[2] {
                let c = [x, y, z];
                if set.contains(&c) || outside.contains(&c) || voids.contains(&c) {
                    continue;
                }
                b2 += 1;
                let mut queue = VecDeque::from([c]);
                voids.insert(c);
                while let Some([x, y, z]) = queue.pop_front() {
                    for d in [
                        [1, 0, 0],
                        [-1, 0, 0],
                        [0, 1, 0],
                        [0, -1, 0],
                        [0, 0, 1],
                        [0, 0, -1],
                    ] {
                        let n = [x + d[0], y + d[1], z + d[2]];
                        if in_box(n)
                            && !set.contains(&n)
                            && !outside.contains(&n)
                            && voids.insert(n)
                        {
                            queue.push_back(n);
                        }
                    }
                }
            }
        }
    }

    // b1 from the Euler characteristic of the 3-complex (b3 = 0).
    let mut vertices: HashSet<RawCell> = HashSet::new();
    let mut edges: HashSet<(RawCell, usize)> = HashSet::new();
    let mut squares: HashSet<(RawCell, usize)> = HashSet::new();
    for &[x, y, z] in &cells {
        for dx in 0..2 {
            for dy in 0..2 {
                for dz in 0..2 {
                    vertices.insert([x + dx, y + dy, z + dz]);
                }
            }
        }
        for axis in 0..3 {
            let (u, v) = ((axis + 1) % 3, (axis + 2) % 3);
            for du in 0..2 {
                for dv in 0..2 {
                    let mut e = [x, y, z];
                    e[u] += du;
                    e[v] += dv;
                    edges.insert((e, axis));
                }
            }
            for d in 0..2 {
                let mut s = [x, y, z];
                s[axis] += d;
                squares.insert((s, axis));
            }
        }
    }
    let chi =
        vertices.len() as i64 - edges.len() as i64 + squares.len() as i64 - cells.len() as i64;
    let b1 = b0 as i64 + b2 as i64 - chi;
    assert!(b1 >= 0, "Euler identity would give negative b1");
    (b0, b1 as usize, b2)
}

/// Deterministic pseudo-random polycube growth from a decision tape:
/// always face-connected, between 1 and `steps.len() + 1` cells.
pub fn grow_polycube(steps: &[(u8, u8)]) -> Polycube {
    let mut cells: Vec<Cell> = vec![Cell::new(0, 0, 0)];
    let mut set: HashSet<Cell> = cells.iter().copied().collect();
    for &(pick, dir) in steps {
        let base = cells[pick as usize % cells.len()];
        let neighbor = base.face_neighbors()[dir as usize % 6];
        if set.insert(neighbor) {
            cells.push(neighbor);
        }
    }
    Polycube::new(cells).unwrap()
}
