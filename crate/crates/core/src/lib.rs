//! Moment-map ideals of the classical Lie algebras: closed-form invariants
//! and an exact homological oracle that recomputes them.

pub mod betti;
pub mod catalan;
pub mod closed;
pub mod combinatorics;
pub mod error;
pub mod families;
pub mod field;
pub mod ideal;
pub mod koszul;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod quotient;
pub mod series;

pub use betti::{BettiTable, Source};
pub use error::{Error, Result};
pub use families::{lookup, registry, FamilyKind, MomentFamily, RepFamily};
pub use field::{Field, FieldSpec, PrimeField, Rational, RationalField};
pub use poly::{Ambient, BiDegree, Monomial, Polynomial};
pub use series::TruncatedSeries;
