//! Exact symbolic computation with Lie bialgebras: coboundary cocommutators,
//! dualization, coisotropy / coreductivity / cosymmetry of a splitting, and the
//! canonical geometry of the complementary dual homogeneous space.
//!
//! All coefficients are rational functions over ℚ in named parameters.

pub mod bialgebra;
pub mod catalog;
pub mod duality;
pub mod geometry;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod scalar;
pub mod tensor;

pub use bialgebra::{BialgebraError, Cocommutator, LieBialgebra};
pub use catalog::CatalogEntry;
pub use duality::{Condition, ConditionVerdict, DualSplitting, DualityError, GenericRSystem};
pub use geometry::{GeometryError, GeometryReport, MetricSolutionSpace, MetricVerdict};
pub use io::{Diagnostic, Problem, ProblemDocument};
pub use lie::{Basis, LieAlgebra, LieError, SparseVec, SubalgebraSplitting};
pub use scalar::{Bindings, Context, Rational, Scalar, ScalarError};
pub use tensor::{Bivector, Block, BlockProfile, Trivector};
