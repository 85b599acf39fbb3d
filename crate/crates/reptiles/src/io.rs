//! File formats and mesh export.
//!
//! Three formats, all designed to round-trip bit-stably after one
//! canonicalization pass:
//!
//! * polycube text (`poly v1`): one cell per line as three integers,
//! * arc-diagram text (`arcs v1`): the refinement `m` plus `arc` blocks,
//! * tiling-certificate JSON: piece, optional scale, mode, placements as
//!   explicit 9-integer rotation matrices plus translations, and a target
//!   that is either a cell list or the keyword `"scaled-piece"`.
//!
//! [`export_obj`] writes the boundary of a manifold polycube as a
//! Wavefront OBJ with quad faces oriented outward.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certify::TilingCertificate;
use crate::construct::ArcDiagram;
use crate::lattice::{Cell, Isometry, LatticeError, Polycube, SymmetryMode};
use crate::topology::{boundary_surface, TopologyError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("bad header: expected {expected:?}, found {found:?}")]
    BadHeader {
        expected: &'static str,
        found: String,
    },
    #[error("malformed line {0}")]
    MalformedLine(usize),
    #[error("file contains no cells")]
    EmptyPolycube,
    #[error("missing refinement line `m <int>`")]
    MissingRefinement,
    #[error("certificate JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("placement {0} is not a lattice isometry")]
    InvalidIsometry(usize),
    #[error("unknown symmetry mode {0:?}")]
    UnknownMode(String),
    #[error("target is \"scaled-piece\" but no scale is given")]
    MissingScale,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A non-fatal parse note, e.g. a deduplicated cell line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseWarning {
    pub line: usize,
    pub message: String,
}

const POLY_HEADER: &str = "poly v1";
const ARCS_HEADER: &str = "arcs v1";

fn check_header(text: &str, expected: &'static str) -> Result<(), FormatError> {
    let first = text.lines().next().unwrap_or("").trim();
    if first != expected {
        return Err(FormatError::BadHeader {
            expected,
            found: first.to_string(),
        });
    }
    Ok(())
}

fn parse_cell_line(line: &str, lineno: usize) -> Result<Cell, FormatError> {
    let mut parts = line.split_whitespace();
    let mut next = || -> Result<i32, FormatError> {
        parts
            .next()
            .ok_or(FormatError::MalformedLine(lineno))?
            .parse()
            .map_err(|_| FormatError::MalformedLine(lineno))
    };
    let cell = Cell::new(next()?, next()?, next()?);
    if parts.next().is_some() {
        return Err(FormatError::MalformedLine(lineno));
    }
    Ok(cell)
}

/// Parses the `poly v1` text format. Duplicate cell lines are
/// deduplicated and reported as warnings.
pub fn parse_polycube(text: &str) -> Result<(Polycube, Vec<ParseWarning>), FormatError> {
    check_header(text, POLY_HEADER)?;
    let mut cells = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut warnings = Vec::new();
    for (i, line) in text.lines().enumerate().skip(1) {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cell = parse_cell_line(line, i + 1)?;
        if !seen.insert(cell) {
            warnings.push(ParseWarning {
                line: i + 1,
                message: format!("duplicate cell {}", cell),
            });
            continue;
        }
        cells.push(cell);
    }
    if cells.is_empty() {
        return Err(FormatError::EmptyPolycube);
    }
    Ok((Polycube::new(cells)?, warnings))
}

/// Emits the `poly v1` text format, cells sorted.
pub fn emit_polycube(p: &Polycube) -> String {
    let mut out = String::from(POLY_HEADER);
    out.push('\n');
    for c in p.cells() {
        out.push_str(&format!("{} {} {}\n", c.x, c.y, c.z));
    }
    out
}

/// Parses the `arcs v1` text format. The diagram is returned as data;
/// run [`crate::construct::validate_arc_diagram`] before using it.
pub fn parse_arc_diagram(text: &str) -> Result<ArcDiagram, FormatError> {
    check_header(text, ARCS_HEADER)?;
    let mut m: Option<i32> = None;
    let mut arcs: Vec<Vec<Cell>> = Vec::new();
    for (i, line) in text.lines().enumerate().skip(1) {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("m ") {
            m = Some(
                rest.trim()
                    .parse()
                    .map_err(|_| FormatError::MalformedLine(i + 1))?,
            );
        } else if line == "arc" {
            arcs.push(Vec::new());
        } else {
            let cell = parse_cell_line(line, i + 1)?;
            match arcs.last_mut() {
                Some(arc) => arc.push(cell),
                None => return Err(FormatError::MalformedLine(i + 1)),
            }
        }
    }
    let m = m.ok_or(FormatError::MissingRefinement)?;
    Ok(ArcDiagram::new(m, arcs))
}

/// Emits the `arcs v1` text format.
pub fn emit_arc_diagram(d: &ArcDiagram) -> String {
    let mut out = String::from(ARCS_HEADER);
    out.push('\n');
    out.push_str(&format!("m {}\n", d.m()));
    for arc in d.arcs() {
        out.push_str("arc\n");
        for c in arc {
            out.push_str(&format!("{} {} {}\n", c.x, c.y, c.z));
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct PlacementFile {
    rot: [i32; 9],
    trans: [i32; 3],
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum TargetFile {
    Keyword(String),
    Cells(Vec<[i32; 3]>),
}

#[derive(Serialize, Deserialize)]
struct CertificateFile {
    piece: Vec<[i32; 3]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    scale: Option<i32>,
    mode: String,
    placements: Vec<PlacementFile>,
    target: TargetFile,
}

const SCALED_PIECE: &str = "scaled-piece";

fn cells_to_arrays(p: &Polycube) -> Vec<[i32; 3]> {
    p.cells().iter().map(|c| [c.x, c.y, c.z]).collect()
}

/// Serializes a certificate to JSON. Rotations are stored as explicit
/// row-major 9-integer matrices so files are self-describing; when the
/// target is exactly the scaled piece it is written as `"scaled-piece"`.
pub fn emit_certificate(cert: &TilingCertificate) -> String {
    let target = match cert.scale {
        Some(s) if cert.piece.scale(s).as_ref() == Ok(&cert.target) => {
            TargetFile::Keyword(SCALED_PIECE.to_string())
        }
        _ => TargetFile::Cells(cells_to_arrays(&cert.target)),
    };
    let file = CertificateFile {
        piece: cells_to_arrays(&cert.piece),
        scale: cert.scale,
        mode: match cert.mode {
            SymmetryMode::Proper => "proper".to_string(),
            SymmetryMode::Full => "full".to_string(),
        },
        placements: cert
            .placements
            .iter()
            .map(|g| {
                let r = g.rotation_matrix();
                PlacementFile {
                    rot: [
                        r[0][0], r[0][1], r[0][2], r[1][0], r[1][1], r[1][2], r[2][0], r[2][1],
                        r[2][2],
                    ],
                    trans: g.translation_vector(),
                }
            })
            .collect(),
        target,
    };
    serde_json::to_string_pretty(&file).expect("certificate serialization cannot fail")
}

/// Deserializes a certificate from JSON, validating every placement
/// matrix. Verification is separate: see
/// [`crate::certify::verify_certificate`].
pub fn parse_certificate(text: &str) -> Result<TilingCertificate, FormatError> {
    let file: CertificateFile = serde_json::from_str(text)?;
    let piece = Polycube::new(file.piece)?;
    let mode = match file.mode.as_str() {
        "proper" => SymmetryMode::Proper,
        "full" => SymmetryMode::Full,
        other => return Err(FormatError::UnknownMode(other.to_string())),
    };
    let mut placements = Vec::with_capacity(file.placements.len());
    for (i, p) in file.placements.iter().enumerate() {
        let r = p.rot;
        let rot = [[r[0], r[1], r[2]], [r[3], r[4], r[5]], [r[6], r[7], r[8]]];
        let iso = Isometry::new(rot, p.trans).map_err(|_| FormatError::InvalidIsometry(i))?;
        placements.push(iso);
    }
    let target = match file.target {
        TargetFile::Keyword(kw) if kw == SCALED_PIECE => {
            let s = file.scale.ok_or(FormatError::MissingScale)?;
            piece.scale(s)?
        }
        TargetFile::Keyword(kw) => {
            return Err(FormatError::BadHeader {
                expected: SCALED_PIECE,
                found: kw,
            })
        }
        TargetFile::Cells(cells) => Polycube::new(cells)?,
    };
    Ok(TilingCertificate {
        piece,
        target,
        placements,
        mode,
        scale: file.scale,
    })
}

/// Renders the boundary of a manifold polycube as Wavefront OBJ text:
/// one `v` line per boundary lattice point, one quad `f` per boundary
/// square, wound counterclockwise viewed from outside.
pub fn export_obj(p: &Polycube) -> Result<String, TopologyError> {
    let surface = boundary_surface(p)?;
    let mut vertices: Vec<[i32; 3]> = Vec::new();
    for q in surface.quads() {
        vertices.extend(q.dir.quad_corners(q.cell));
    }
    vertices.sort_unstable();
    vertices.dedup();
    let index: std::collections::HashMap<[i32; 3], usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i + 1)) // OBJ indices are 1-based
        .collect();

    let mut out = String::new();
    for v in &vertices {
        out.push_str(&format!("v {} {} {}\n", v[0], v[1], v[2]));
    }
    for q in surface.quads() {
        let vs = q.dir.quad_corners(q.cell);
        out.push_str(&format!(
            "f {} {} {} {}\n",
            index[&vs[0]], index[&vs[1]], index[&vs[2]], index[&vs[3]]
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::{brick_certificate, verify_certificate};
    use crate::construct::validate_arc_diagram;

    #[test]
    fn poly_roundtrip() {
        let text = "poly v1\n0 0 0\n";
        let (p, warnings) = parse_polycube(text).unwrap();
        assert_eq!(p.len(), 1);
        assert!(warnings.is_empty());
        assert_eq!(emit_polycube(&p), text);
    }

    #[test]
    fn poly_errors_and_warnings() {
        assert!(matches!(
            parse_polycube("poly v2\n0 0 0\n"),
            Err(FormatError::BadHeader { .. })
        ));
        assert!(matches!(
            parse_polycube("poly v1\n0 0\n"),
            Err(FormatError::MalformedLine(2))
        ));
        assert!(matches!(
            parse_polycube("poly v1\n0 0 0 0\n"),
            Err(FormatError::MalformedLine(2))
        ));
        assert!(matches!(
            parse_polycube("poly v1\n# nothing\n"),
            Err(FormatError::EmptyPolycube)
        ));
        let (p, warnings) = parse_polycube("poly v1\n0 0 0\n0 0 0\n").unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(warnings.len(), 1);
        assert_eq!(warnings[0].line, 3);
    }

    #[test]
    fn fig1_fixture_roundtrip() {
        let text = crate::fixtures::FIG1_POLY;
        let (p, warnings) = parse_polycube(text).unwrap();
        assert!(warnings.is_empty());
        assert_eq!(p.len(), 32);
        // One canonicalization pass, then bit-stable.
        let emitted = emit_polycube(&p);
        let (p2, _) = parse_polycube(&emitted).unwrap();
        assert_eq!(p, p2);
        assert_eq!(emit_polycube(&p2), emitted);
    }

    #[test]
    fn arcs_roundtrip() {
        for text in [
            crate::fixtures::EMPTY_M1_ARCS,
            crate::fixtures::COLUMN_M3_ARCS,
            crate::fixtures::FIGURE4_ARCS,
        ] {
            let d = parse_arc_diagram(text).unwrap();
            assert_eq!(validate_arc_diagram(&d), Ok(()));
            let emitted = emit_arc_diagram(&d);
            let d2 = parse_arc_diagram(&emitted).unwrap();
            assert_eq!(d, d2);
            assert_eq!(emit_arc_diagram(&d2), emitted);
        }
    }

    #[test]
    fn arcs_errors() {
        assert!(matches!(
            parse_arc_diagram("arcs v1\narc\n1 1 0\n"),
            Err(FormatError::MissingRefinement)
        ));
        assert!(matches!(
            parse_arc_diagram("arcs v1\nm 3\n1 1 0\n"),
            Err(FormatError::MalformedLine(3))
        ));
    }

    #[test]
    fn certificate_roundtrip() {
        let d = crate::fixtures::builtin_diagram("empty-m1").unwrap();
        let r = crate::construct::construct_reptile(&d).unwrap();
        let cert = crate::construct::construction_certificate(&r);
        let json = emit_certificate(&cert);
        assert!(json.contains("scaled-piece"));
        let back = parse_certificate(&json).unwrap();
        assert_eq!(back, cert);
        assert_eq!(verify_certificate(&back), Ok(()));
    }

    #[test]
    fn certificate_with_explicit_target() {
        let piece = Polycube::new([(0, 0, 0), (0, 0, 1)]).unwrap();
        let cert = TilingCertificate {
            piece: piece.clone(),
            target: Polycube::new([(0, 0, 0), (0, 0, 1), (0, 0, 2), (0, 0, 3)]).unwrap(),
            placements: vec![Isometry::identity(), Isometry::translation([0, 0, 2])],
            mode: SymmetryMode::Proper,
            scale: None,
        };
        let json = emit_certificate(&cert);
        assert!(!json.contains("scaled-piece"));
        let back = parse_certificate(&json).unwrap();
        assert_eq!(back, cert);
    }

    #[test]
    fn certificate_rejects_bad_matrix() {
        let json = r#"{
            "piece": [[0,0,0]],
            "mode": "proper",
            "placements": [{"rot": [1,0,0,1,0,0,0,0,1], "trans": [0,0,0]}],
            "target": [[0,0,0]]
        }"#;
        assert!(matches!(
            parse_certificate(json),
            Err(FormatError::InvalidIsometry(0))
        ));
    }

    #[test]
    fn obj_counts() {
        let unit = Polycube::new([(0, 0, 0)]).unwrap();
        let obj = export_obj(&unit).unwrap();
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 8);
        assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 6);

        let bar = Polycube::new([(0, 0, 0), (0, 0, 1)]).unwrap();
        let obj = export_obj(&bar).unwrap();
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 12);
        assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 10);

        let fig1 = crate::fixtures::figure1();
        let quads = boundary_surface(&fig1).unwrap().quad_count();
        let obj = export_obj(&fig1).unwrap();
        assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), quads);
    }

    #[test]
    fn obj_requires_manifold() {
        let pinched = Polycube::new([(0, 0, 0), (1, 1, 0)]).unwrap();
        assert_eq!(export_obj(&pinched), Err(TopologyError::NotManifold));
    }

    #[test]
    fn figure1_brick_certificate_roundtrip() {
        let piece = crate::fixtures::figure1();
        let g = Isometry::new([[1, 0, 0], [0, -1, 0], [0, 0, -1]], [0, 0, 4]).unwrap();
        let cert = brick_certificate(&piece, &g, 4).unwrap();
        let back = parse_certificate(&emit_certificate(&cert)).unwrap();
        assert_eq!(back, cert);
    }
}
