pub mod cli;
pub mod constructions;
pub mod deciders;
pub mod error;
pub mod grading;
pub mod harness;
pub mod group;
pub mod ideal;
pub mod ring;
pub mod spec;

pub use error::{Error, GradingViolation, Result};
pub use grading::{GradedMap, GradedRing, HomogeneousIdeal};
pub use group::FiniteGroup;
pub use ideal::Side;
pub use ring::{ElementSet, FiniteRing};

/// Size limits for exhaustive work. Exceeding one is an error, never a silent
/// truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Caps {
    /// Largest ring order any construction or classifier accepts.
    pub order: usize,
    /// Largest ring order for ideal-lattice enumeration.
    pub ideal_order: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self { order: 4096, ideal_order: 512 }
    }
}
