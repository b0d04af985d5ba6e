//! Finite heaps, semiheaps, trusses, near-trusses and J-rings as explicit
//! operation tables, with exhaustive validators for their axioms and the
//! derived objects built on top of them: retract and translation groups,
//! normal subheaps and congruences, Smith and Huq commutators, ideals,
//! semidirect decompositions and derivations.
//!
//! Carriers are index sets `{0, 1, .., n-1}`; operations are lookup tables.
//! Everything is immutable after construction and all checks are pure scans,
//! parallelized over the leading index when the `parallel` feature (on by
//! default) is enabled. Results never depend on the feature choice.

pub mod commutator;
pub mod corpus;
pub mod derivation;
pub mod error;
pub mod group;
pub mod heap;
pub mod ideal;
pub mod report;
pub mod scan;
pub mod semidirect;
pub mod subobject;
pub mod table;
pub mod truss;

pub use error::{Error, Result};
pub use group::GroupView;
pub use heap::{Heap, Level, Semiheap};
pub use report::{Limits, ValidationReport, Violation};
pub use subobject::{Partition, Subset};
pub use table::{BinaryTable, Elem, Endomap, TernaryTable};
pub use truss::NearTruss;
