//! Exact integer-lattice toolkit for polycube rep-tiles.
//!
//! A rep-tile is a solid that decomposes into finitely many mutually
//! congruent pieces, each similar to the whole. This crate works with the
//! polycube incarnation of that idea on the unit cubic lattice:
//!
//! * [`lattice`] — polycubes, the 24/48-element cubic symmetry group,
//!   congruence testing, canonical forms, and integer scaling,
//! * [`topology`] — boundary surfaces, Euler characteristic and genus per
//!   boundary component, and mod-2 Betti numbers of the cubical complex,
//! * [`construct`] — building a rep-tile homeomorphic to the exterior of
//!   any system of arcs in a cube, from a combinatorial arc diagram,
//! * [`certify`] — tiling certificates, an exact-cover tiling solver,
//!   brick-pair certificates, polycube enumeration, and a desk-scale
//!   rep-tile search,
//! * [`io`] — text file formats, certificate JSON, and OBJ mesh export,
//! * [`fixtures`] — shipped example polycubes and arc diagrams.
//!
//! All geometry is exact integer arithmetic; there is no floating point
//! anywhere in the crate.

pub mod certify;
pub mod construct;
pub mod fixtures;
pub mod io;
pub mod lattice;
pub mod topology;

pub use certify::{
    brick_certificate, certify_reptile, enumerate_polycubes, find_tiling, search_reptiles,
    verify_certificate, CertificateViolation, SearchLimits, TilingCertificate,
};
pub use construct::{
    construct_reptile, construction_certificate, thicken_arcs, validate_arc_diagram, ArcDiagram,
    ConstructionResult,
};
pub use lattice::{congruent, symmetry_group, Cell, Isometry, Polycube, SymmetryMode};
pub use topology::{
    betti_numbers, boundary_surface, is_boundary_connected, surface_components, BettiTriple,
    QuadSurface, SurfaceComponent,
};
