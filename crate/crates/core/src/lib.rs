//! Nested matroids, tennis-ball flag matroids and exact lattice-path
//! enumeration.
//!
//! Ground sets are `1..=m` throughout; axis indices of lattice steps are
//! `1..=k`. Subsets of small ground sets are `u64` bitmasks with bit `i - 1`
//! standing for element `i`.

pub mod cli;
pub mod diagram;
pub mod enumeration;
pub mod error;
pub mod flag;
pub mod lattice;
pub mod limits;
pub mod matroid;
pub mod selfcheck;

pub use diagram::{diagram_matrix, diagram_matrix_ramped, DiagramMatrix, Point3};
pub use enumeration::{bounds, count_configurations, tbp_count, BoundsReport};
pub use error::{Error, Result};
pub use flag::{
    is_flag_matroid, reachable_configurations, realize, simulate, tbp_flag, FlagBasisFamily,
    FlagMatroid, FlagVerdict, MoveSchedule, OrderedPartition,
};
pub use lattice::{is_configuration_path, BinSpec, StepSequence};
pub use matroid::{tbp_matroid, ExplicitMatroid, Matroid, NestedMatroid};
