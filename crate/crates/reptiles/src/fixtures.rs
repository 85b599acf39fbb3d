//! Shipped example data: the 32-cell solid-torus tile and the built-in
//! arc diagrams. Fixtures are data files embedded at compile time and
//! parsed through the public formats.

use crate::construct::ArcDiagram;
use crate::lattice::Polycube;

/// The 32-cell solid-torus rep-tile: a 4x4x2 slab with a 1x1x2
/// through-hole, plus a 1x1x2 chimney stacked where the removed column's
/// half-turn image lands. Two copies tile a cube of side 4.
pub const FIG1_POLY: &str = include_str!("../fixtures/fig1.poly");

/// No arcs, refinement 1: the construction degenerates to a 2x2x1 slab.
pub const EMPTY_M1_ARCS: &str = include_str!("../fixtures/empty-m1.arcs");

/// One straight arc in the 3-refined cube: the resulting tile is a solid
/// torus of 108 cells.
pub const COLUMN_M3_ARCS: &str = include_str!("../fixtures/column-m3.arcs");

/// Two clasped arcs in the 7-refined cube: the resulting tile has the
/// fingerprint of a genus-2 graph exterior.
pub const FIGURE4_ARCS: &str = include_str!("../fixtures/figure-4.arcs");

/// The 32-cell solid-torus tile.
pub fn figure1() -> Polycube {
    crate::io::parse_polycube(FIG1_POLY)
        .expect("embedded fixture parses")
        .0
}

/// Built-in arc diagrams by name: `empty-m1`, `column-m3`, `figure-4`.
pub fn builtin_diagram(name: &str) -> Option<ArcDiagram> {
    let text = match name {
        "empty-m1" => EMPTY_M1_ARCS,
        "column-m3" => COLUMN_M3_ARCS,
        "figure-4" => FIGURE4_ARCS,
        _ => return None,
    };
    Some(crate::io::parse_arc_diagram(text).expect("embedded fixture parses"))
}

/// Raw fixture file contents by name, for writing to disk: `fig1` plus
/// the built-in diagram names.
pub fn fixture_file(name: &str) -> Option<&'static str> {
    match name {
        "fig1" => Some(FIG1_POLY),
        "empty-m1" => Some(EMPTY_M1_ARCS),
        "column-m3" => Some(COLUMN_M3_ARCS),
        "figure-4" => Some(FIGURE4_ARCS),
        _ => None,
    }
}

/// All fixture names accepted by [`fixture_file`].
pub const FIXTURE_NAMES: [&str; 4] = ["fig1", "empty-m1", "column-m3", "figure-4"];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::validate_arc_diagram;

    #[test]
    fn figure1_cell_layout() {
        let p = figure1();
        assert_eq!(p.len(), 32);
        assert_eq!(p.min_corner(), [-2, -2, 0]);
        assert_eq!(p.max_corner_exclusive(), [2, 2, 4]);
        // The through-hole column is absent, the chimney present.
        assert!(!p.contains((-1, 0, 0).into()));
        assert!(!p.contains((-1, 0, 1).into()));
        assert!(p.contains((-1, -1, 2).into()));
        assert!(p.contains((-1, -1, 3).into()));
    }

    #[test]
    fn builtin_diagrams_validate() {
        for name in ["empty-m1", "column-m3", "figure-4"] {
            let d = builtin_diagram(name).unwrap();
            assert_eq!(validate_arc_diagram(&d), Ok(()), "{name}");
        }
        assert!(builtin_diagram("nope").is_none());
        assert_eq!(builtin_diagram("figure-4").unwrap().arc_count(), 2);
    }
}
