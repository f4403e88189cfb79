//! Exact analysis of fractions of multilevel factorial designs with
//! qualitative factors.
//!
//! The crate evaluates interaction terms over the roots-of-unity coding in
//! pure integer arithmetic, derives indicator-function coefficients from
//! level counts, and computes aberrations, permutation-invariant mean
//! aberrations and the Generalized Word Length Pattern (GWLP) by two
//! independent routes. Count families of whole fractions can be checked
//! against the convolution identities they must satisfy, and admissible
//! count configurations can be enumerated for small symmetric prime cases.
//!
//! Everything that can be exact is exact: mean aberrations, variances and
//! prime-level GWLPs are rational numbers, not floats. All types are
//! immutable after construction and all operations are pure functions, so
//! callers are free to parallelize scans over the exponent lattice.

pub mod aberration;
pub mod counts;
pub mod design;
pub mod error;

pub use aberration::{
    aberration, aberration_distribution, check_coefficient_convolution, coefficient_direct,
    coefficient_from_counts, counts_variance, gma_compare, gwlp_classic, gwlp_mean,
    mean_aberration, mean_aberration_oracle, AberrationDistribution, AberrationValue, Coefficient,
    GmaOrdering, GwlpVector, MeanAberrationValue, Rat,
};
pub use counts::{
    balanced_counts, enumerate_admissible, family_from_fraction, is_admissible, residuals,
    AdmissibilityReport, CountFamily, ResidualVector, DEFAULT_ENUM_BUDGET,
};
pub use design::{DesignSpec, Exponent, Fraction, LevelCounts, Point};
pub use error::{Error, Result};
