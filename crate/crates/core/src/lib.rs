//! Gauss diagrams of planar knotoids and the index-type invariant
//! `H(t, y, z)`, with Reidemeister moves, the Vassiliev skein extension and
//! Gordian-distance lower bounds.
//!
//! ```
//! use knotoid::{compute_h, parse_gauss_code, ReductionPolicy};
//!
//! let d = parse_gauss_code("O1+ O2- U1 U2").unwrap();
//! assert!(compute_h(&d, ReductionPolicy::Quotient).unwrap().is_zero());
//! ```

pub mod error;
pub mod fixtures;
pub mod gauss;
pub mod gko;
pub mod gordian;
pub mod invariant;
pub mod moves;
pub mod selftest;
pub mod vassiliev;
pub mod zpoly;

pub use error::{Error, ParseError, Result};
pub use gauss::{
    parse_gauss_code, random_diagram, serialize, ChordId, ChordView, Crossing, EndpointEvent,
    EndpointKind, GaussDiagram, Sign,
};
pub use gko::{parse_collection, write_collection, GkoEntry};
pub use gordian::{
    crossing_change_delta, decompose, gordian_decomposition, gordian_lower_bound, reconstruct,
    GordianDecomposition, GordianPair, GordianReport,
};
pub use invariant::{
    compute_h, compute_h_with, crossing_partition, degree, degrees, index_function,
    index_functions, n_partition, nonzero_height_certificate, HOptions, Invariant, Partition,
    RenderFormat, TermKey,
};
pub use moves::{
    detect_r3, plant_r3, r1_delete, r1_insert, r2_delete, r2_insert, r3_apply, random_walk,
    random_walk_traced, Direction, Move, MoveKind, R3Config, R3Variant, SignAssignment,
};
pub use selftest::{run_selftest, PropertyResult, SelftestConfig, SelftestReport};
pub use vassiliev::{resolutions, singular_h, singular_h_with, verify_order_one, OrderOneReport};
pub use zpoly::{reduce_exponent, reduce_poly, ReductionPolicy, ZPoly};
