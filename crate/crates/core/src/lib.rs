//! Exact engine for Poincaré-duality algebras and the hard Lefschetz property.
//!
//! Rings are presented by an explicit graded basis and structure constants
//! over Q or over the rational function field Q(ε). On top of that sit the
//! Lefschetz analyzer, the construction of the cohomology ring of a
//! `CP^n`-bundle over a 4-dimensional base (Leray–Hirsch with the relation
//! `u^{n+1} = β₄u^{n−1} + β₂u^n`), and a sampling probe for the zero level of
//! the standard unitary moment map.

pub mod algebra;
pub mod fibration;
pub mod fixtures;
pub mod lefschetz;
pub mod linalg;
pub mod moment;
pub mod report;
pub mod ringfile;
pub mod scalars;

pub use algebra::{AlgebraBuilder, AlgebraError, Element, GradedBasis, PDAlgebra};
pub use linalg::{KernelBasis, LinalgError, Matrix, RankDrop, RankKernel};
pub use scalars::{EpsFraction, EpsPoly, Field, PiEpsScalar, Rational, ScalarError, ScalarMode};
pub use lefschetz::{classify, lefschetz_matrix, surj_inj_consistency, Classification, LefschetzReport};
pub use fibration::{
    case_analysis_oracle, derive_betas, fiber_volume, kernels_agree, moment_sphere_integral, BuildError, EpsChoice,
    FibrationSpec, TotalSpaceRing,
};
pub use moment::{moment_value, zero_level_probe, GaussianRational, LieAlgebraBasis, LieGroup, MomentValue, ProbeReport};
pub use ringfile::{emit_ring, parse_element, parse_ring, parse_ring_as, parse_ring_unchecked, Ring, RingFileError};
pub use report::{PerK, Report, Verdict};
