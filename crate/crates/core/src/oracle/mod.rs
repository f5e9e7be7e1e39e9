//! Brute-force recomputation of the closed forms.

pub mod exterior;
pub mod hilbert;
pub mod resolution;
pub mod socle;
pub mod symmetric;
pub mod tor;

pub use exterior::{exterior_ideal_series, exterior_mult_rank, ProductIdeal};
pub use hilbert::hilbert_oracle;
pub use resolution::{resolve_k_over_quotient, ResidueResolution};
pub use socle::{depth_zero_witness, socle, SocleWitness};
pub use symmetric::symmetric_identity_check;
pub use tor::{tor_over_s, SupportBound};
