//! Reference diagrams shipped with the crate.

use crate::gauss::GaussDiagram;
use crate::gko::{parse_collection, GkoEntry};

pub const SOURCE: &str = include_str!("../fixtures/paper_fixtures.gko");

pub const TRIVIAL: &str = "trivial";
pub const TWO_TWO: &str = "2_2";
pub const FIVE_1_28: &str = "5.1.28";
pub const FIVE_1_28_REVERSE: &str = "5.1.28_reverse";
pub const SINGULAR_WITNESS: &str = "singular_witness";

pub fn all() -> Vec<GkoEntry> {
    parse_collection(SOURCE).expect("bundled fixtures parse")
}

/// # Panics
/// If `name` is not a bundled fixture.
pub fn get(name: &str) -> GaussDiagram {
    all()
        .into_iter()
        .find(|e| e.name == name)
        .map(|e| e.diagram)
        .unwrap_or_else(|| panic!("no fixture named {name}"))
}
