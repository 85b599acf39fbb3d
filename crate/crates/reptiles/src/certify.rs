//! Tiling certificates and rep-tile discovery.
//!
//! A [`TilingCertificate`] records a piece, a target, and the placement
//! isometries whose images partition the target; when the target is a
//! scaled copy of the piece it witnesses the rep-tile property.
//! [`verify_certificate`] checks the cell-set equations exactly.
//!
//! [`find_tiling`] is a deterministic backtracking exact-cover solver:
//! it always branches on the lexicographically least uncovered cell, over
//! piece orientations in a fixed group order, so results are replayable.
//! On top of it sit [`certify_reptile`] (search for an `s^3`-piece
//! self-decomposition), [`brick_certificate`] (the two-copies-make-a-cube
//! mechanism), [`enumerate_polycubes`], and [`search_reptiles`].

use std::collections::HashMap;
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::lattice::{symmetry_group, Cell, Isometry, Polycube, SymmetryMode};
use crate::topology::{betti_numbers, BettiTriple};

/// A piece, a target, and placements whose images partition the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilingCertificate {
    pub piece: Polycube,
    pub target: Polycube,
    pub placements: Vec<Isometry>,
    pub mode: SymmetryMode,
    /// `Some(s)` marks a rep-tile certificate: the target must be a
    /// translated `s`-scaling of the piece (which forces `s^3` placements).
    pub scale: Option<i32>,
}

/// First failed check of a certificate, in the order overlap, gap,
/// scaling, mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateViolation {
    /// Two placement images share a cell.
    Overlap { first: usize, second: usize },
    /// The union of images does not equal the target.
    Gap,
    /// The rep-tile flag is set but the target is not a translated
    /// scaling of the piece.
    NotScaled,
    /// A placement uses a reflection under proper mode.
    BadMode { placement: usize },
}

impl fmt::Display for CertificateViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateViolation::Overlap { first, second } => {
                write!(f, "Overlap between placements {} and {}", first, second)
            }
            CertificateViolation::Gap => write!(f, "Gap: union of images is not the target"),
            CertificateViolation::NotScaled => {
                write!(
                    f,
                    "NotScaled: target is not a translated scaling of the piece"
                )
            }
            CertificateViolation::BadMode { placement } => {
                write!(
                    f,
                    "BadMode: placement {} reflects under proper mode",
                    placement
                )
            }
        }
    }
}

/// Checks every certificate invariant exactly; reports the first failure.
pub fn verify_certificate(cert: &TilingCertificate) -> Result<(), CertificateViolation> {
    // Overlap: each target cell may be covered at most once.
    let mut covered_by: HashMap<Cell, usize> = HashMap::new();
    for (i, g) in cert.placements.iter().enumerate() {
        for &c in cert.piece.cells() {
            let image = g.apply_cell(c);
            if let Some(&first) = covered_by.get(&image) {
                return Err(CertificateViolation::Overlap { first, second: i });
            }
            covered_by.insert(image, i);
        }
    }

    // Gap: the union of images must equal the target exactly.
    if covered_by.len() != cert.target.len()
        || !cert
            .target
            .cells()
            .iter()
            .all(|c| covered_by.contains_key(c))
    {
        return Err(CertificateViolation::Gap);
    }

    if let Some(s) = cert.scale {
        let scaled = match cert.piece.scale(s) {
            Ok(p) => p,
            Err(_) => return Err(CertificateViolation::NotScaled),
        };
        if scaled.normalized() != cert.target.normalized() {
            return Err(CertificateViolation::NotScaled);
        }
    }

    if cert.mode == SymmetryMode::Proper {
        for (i, g) in cert.placements.iter().enumerate() {
            if !g.is_proper() {
                return Err(CertificateViolation::BadMode { placement: i });
            }
        }
    }

    Ok(())
}

/// Node and wall-clock budgets for the backtracking search. `None` means
/// unlimited.
#[derive(Debug, Clone, Copy, Default)]
pub struct SearchLimits {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl SearchLimits {
    pub const UNLIMITED: SearchLimits = SearchLimits {
        max_nodes: None,
        max_time: None,
    };
}

/// Which budget stopped the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitKind {
    Nodes,
    WallClock,
}

#[derive(Debug, Clone, Copy)]
pub struct SearchStats {
    /// Search-tree nodes entered (placements applied).
    pub nodes: u64,
    pub elapsed: Duration,
}

/// Outcome of [`find_tiling`]: a full tiling, proof of exhaustion, or an
/// explicit budget stop. Exhausted and Timeout are never conflated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TilingOutcome {
    Found(Vec<Isometry>),
    Exhausted,
    Timeout(LimitKind),
}

#[derive(Debug, Clone)]
pub struct TilingResult {
    pub outcome: TilingOutcome,
    pub stats: SearchStats,
}

/// One orientation of the piece: normalized cells plus the group element
/// and normalizing shift needed to reconstruct a placement isometry.
struct Orientation {
    /// Cells translated so the minimum corner is the origin, sorted.
    cells: Vec<Cell>,
    /// Lexicographically least cell of `cells`.
    anchor: Cell,
    rotation: Isometry,
    /// Minimum corner of `rotation(piece)`.
    min_corner: [i32; 3],
}

fn distinct_orientations(piece: &Polycube, mode: SymmetryMode) -> Vec<Orientation> {
    let mut seen: HashSet<Vec<Cell>> = HashSet::new();
    let mut out = Vec::new();
    for g in symmetry_group(mode) {
        let image = g.apply(piece);
        let mc = image.min_corner();
        let normalized = image.translate([-mc[0], -mc[1], -mc[2]]);
        let cells = normalized.cells().to_vec();
        if seen.insert(cells.clone()) {
            out.push(Orientation {
                anchor: cells[0],
                cells,
                rotation: *g,
                min_corner: mc,
            });
        }
    }
    out
}

struct TilingSearch<'a> {
    orientations: &'a [Orientation],
    target_cells: &'a [Cell],
    index_of: &'a HashMap<Cell, usize>,
    covered: Vec<bool>,
    placed: Vec<Isometry>,
    nodes: u64,
    started: Instant,
    limits: SearchLimits,
}

enum Control {
    Solved,
    Exhausted,
    Stopped(LimitKind),
}

impl TilingSearch<'_> {
    fn over_budget(&self) -> Option<LimitKind> {
        if let Some(max) = self.limits.max_nodes {
            if self.nodes >= max {
                return Some(LimitKind::Nodes);
            }
        }
        if let Some(max) = self.limits.max_time {
            // Clock checks are amortized over node expansions.
            if self.nodes.is_multiple_of(1024) && self.started.elapsed() >= max {
                return Some(LimitKind::WallClock);
            }
        }
        None
    }

    fn solve(&mut self, from: usize) -> Control {
        let u = match self.covered[from..].iter().position(|c| !c) {
            Some(offset) => from + offset,
            None => return Control::Solved,
        };
        let u_cell = self.target_cells[u];

        for orientation in self.orientations {
            // The placement's least cell must be the least uncovered cell,
            // which pins the translation for this orientation.
            let t = [
                u_cell.x - orientation.anchor.x,
                u_cell.y - orientation.anchor.y,
                u_cell.z - orientation.anchor.z,
            ];
            let mut indices = Vec::with_capacity(orientation.cells.len());
            let mut fits = true;
            for c in &orientation.cells {
                let placed = Cell::new(c.x + t[0], c.y + t[1], c.z + t[2]);
                match self.index_of.get(&placed) {
                    Some(&i) if !self.covered[i] => indices.push(i),
                    _ => {
                        fits = false;
                        break;
                    }
                }
            }
            if !fits {
                continue;
            }

            self.nodes += 1;
            if let Some(kind) = self.over_budget() {
                return Control::Stopped(kind);
            }

            for &i in &indices {
                self.covered[i] = true;
            }
            let mc = orientation.min_corner;
            self.placed.push(orientation.rotation.then_translate([
                t[0] - mc[0],
                t[1] - mc[1],
                t[2] - mc[2],
            ]));

            match self.solve(u + 1) {
                Control::Exhausted => {
                    self.placed.pop();
                    for &i in &indices {
                        self.covered[i] = false;
                    }
                }
                done => return done,
            }
        }
        Control::Exhausted
    }
}

/// Deterministic exact-cover search for a tiling of `target` by congruent
/// copies of `piece`.
///
/// Branches on the least uncovered cell over the fixed orientation order,
/// returning the first complete tiling in that canonical order. Returns
/// immediately when `|piece|` does not divide `|target|`.
pub fn find_tiling(
    target: &Polycube,
    piece: &Polycube,
    mode: SymmetryMode,
    limits: SearchLimits,
) -> TilingResult {
    let started = Instant::now();
    if !target.len().is_multiple_of(piece.len()) {
        return TilingResult {
            outcome: TilingOutcome::Exhausted,
            stats: SearchStats {
                nodes: 0,
                elapsed: started.elapsed(),
            },
        };
    }

    let orientations = distinct_orientations(piece, mode);
    let index_of: HashMap<Cell, usize> = target
        .cells()
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, i))
        .collect();

    let mut search = TilingSearch {
        orientations: &orientations,
        target_cells: target.cells(),
        index_of: &index_of,
        covered: vec![false; target.len()],
        placed: Vec::with_capacity(target.len() / piece.len()),
        nodes: 0,
        started,
        limits,
    };

    let outcome = match search.solve(0) {
        Control::Solved => TilingOutcome::Found(std::mem::take(&mut search.placed)),
        Control::Exhausted => TilingOutcome::Exhausted,
        Control::Stopped(kind) => TilingOutcome::Timeout(kind),
    };
    TilingResult {
        outcome,
        stats: SearchStats {
            nodes: search.nodes,
            elapsed: started.elapsed(),
        },
    }
}

/// Outcome of [`certify_reptile`].
#[derive(Debug, Clone)]
pub enum CertifyOutcome {
    Certified(TilingCertificate),
    /// The whole placement tree was explored: no lattice-aligned tiling.
    Exhausted,
    Timeout(LimitKind),
}

#[derive(Debug, Clone)]
pub struct CertifyResult {
    pub outcome: CertifyOutcome,
    pub stats: SearchStats,
}

/// Searches for a decomposition of `scale(piece, s)` into `s^3` congruent
/// copies of `piece`, wrapping a success as a rep-tile certificate.
pub fn certify_reptile(
    piece: &Polycube,
    s: i32,
    mode: SymmetryMode,
    limits: SearchLimits,
) -> CertifyResult {
    assert!(s >= 2, "a rep-tile decomposition needs scale factor >= 2");
    let target = piece.scale(s).expect("scale factor is positive");
    let result = find_tiling(&target, piece, mode, limits);
    let outcome = match result.outcome {
        TilingOutcome::Found(placements) => CertifyOutcome::Certified(TilingCertificate {
            piece: piece.clone(),
            target,
            placements,
            mode,
            scale: Some(s),
        }),
        TilingOutcome::Exhausted => CertifyOutcome::Exhausted,
        TilingOutcome::Timeout(kind) => CertifyOutcome::Timeout(kind),
    };
    CertifyResult {
        outcome,
        stats: result.stats,
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BrickError {
    /// `piece` and `pairing(piece)` must partition a cube of side `s`.
    #[error("piece and its image do not form an s-cube brick pair")]
    NotABrickPair,
}

/// Builds the certificate of the cube-pair mechanism: if `piece` and
/// `pairing(piece)` partition a cube of side `s`, then `scale(piece, s)`
/// splits into one such cube per cell, so `2 |piece|` placements tile it.
pub fn brick_certificate(
    piece: &Polycube,
    pairing: &Isometry,
    s: i32,
) -> Result<TilingCertificate, BrickError> {
    let image = pairing.apply(piece);
    let mut union: Vec<Cell> = piece.cells().to_vec();
    union.extend(image.cells().iter().copied());
    union.sort_unstable();
    union.dedup();
    if union.len() != 2 * piece.len() {
        return Err(BrickError::NotABrickPair);
    }
    let brick = Polycube::new(union).unwrap();
    let mn = brick.min_corner();
    let mx = brick.max_corner_exclusive();
    let sides = [mx[0] - mn[0], mx[1] - mn[1], mx[2] - mn[2]];
    if sides != [s, s, s] || brick.len() != (s as usize).pow(3) {
        return Err(BrickError::NotABrickPair);
    }

    let target = piece.scale(s).expect("side of a brick pair is positive");
    let mut placements = Vec::with_capacity(2 * piece.len());
    for c in piece.cells() {
        // The s-box of this cell inside the scaled piece, as a translate
        // of the brick pair.
        let t = [s * c.x - mn[0], s * c.y - mn[1], s * c.z - mn[2]];
        placements.push(Isometry::translation(t));
        placements.push(pairing.then_translate(t));
    }

    let mode = if pairing.is_proper() {
        SymmetryMode::Proper
    } else {
        SymmetryMode::Full
    };
    Ok(TilingCertificate {
        piece: piece.clone(),
        target,
        placements,
        mode,
        scale: Some(s),
    })
}

/// Enumerates one canonical representative of every congruence class of
/// face-connected polycubes with `n` cells, in increasing canonical order.
///
/// Growth-based: each class of size `k+1` arises by adding one
/// face-neighbour to a class of size `k` and canonicalizing.
pub fn enumerate_polycubes(n: usize, mode: SymmetryMode) -> impl Iterator<Item = Polycube> {
    assert!(n >= 1, "polycubes have at least one cell");
    let mut level: BTreeSet<Polycube> = BTreeSet::new();
    level.insert(Polycube::new([(0, 0, 0)]).unwrap());
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for p in &level {
            let cells: HashSet<Cell> = p.cells().iter().copied().collect();
            for &c in p.cells() {
                for neighbor in c.face_neighbors() {
                    if cells.contains(&neighbor) {
                        continue;
                    }
                    let grown = Polycube::new(p.cells().iter().copied().chain([neighbor])).unwrap();
                    next.insert(grown.canonical_form(mode).0);
                }
            }
        }
        level = next;
    }
    level.into_iter()
}

/// One certified piece from [`search_reptiles`] with its topological
/// fingerprint.
#[derive(Debug, Clone)]
pub struct ReptileHit {
    pub piece: Polycube,
    pub certificate: TilingCertificate,
    pub betti: BettiTriple,
    /// Genus of each boundary component.
    pub genera: Vec<usize>,
}

/// Report of a search over all small polycubes. Budget stops are recorded
/// per piece, never dropped.
#[derive(Debug, Clone, Default)]
pub struct ReptileSearchReport {
    pub hits: Vec<ReptileHit>,
    pub timeouts: Vec<(Polycube, LimitKind)>,
    pub pieces_examined: usize,
    /// Non-manifold pieces are skipped: they cannot be rep-tiles.
    pub pieces_skipped: usize,
}

/// Tries to certify every enumerated polycube with at most `n_max` cells
/// as an `s^3`-index rep-tile. Deterministic order; per-piece budgets.
pub fn search_reptiles(
    n_max: usize,
    s: i32,
    mode: SymmetryMode,
    limits: SearchLimits,
) -> ReptileSearchReport {
    let mut report = ReptileSearchReport::default();
    for n in 1..=n_max {
        for piece in enumerate_polycubes(n, mode) {
            if !piece.is_face_connected() || !piece.is_manifold() {
                report.pieces_skipped += 1;
                continue;
            }
            report.pieces_examined += 1;
            match certify_reptile(&piece, s, mode, limits).outcome {
                CertifyOutcome::Certified(certificate) => {
                    let betti = betti_numbers(&piece);
                    let surface = crate::topology::boundary_surface(&piece)
                        .expect("piece passed the manifold check");
                    let genera = crate::topology::surface_components(&surface)
                        .iter()
                        .map(|c| c.genus)
                        .collect();
                    report.hits.push(ReptileHit {
                        piece,
                        certificate,
                        betti,
                        genera,
                    });
                }
                CertifyOutcome::Exhausted => {}
                CertifyOutcome::Timeout(kind) => report.timeouts.push((piece, kind)),
            }
        }
    }
    report
}
