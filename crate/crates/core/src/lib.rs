//! Exact q-series arithmetic for Dedekind eta-products and a valence-formula
//! prover for identities among them on the congruence subgroups Gamma0(N).
//!
//! The coefficient ring of every series is generic over [`Scalar`]; the
//! aliases at the crate root fix it to arbitrary-precision rationals, which is
//! what the provers use by default.

pub mod arith;
pub mod cusps;
pub mod eta;
pub mod error;
pub mod modularity;
pub mod prover;
pub mod scalar;
pub mod series;
pub mod up;

pub use cusps::{
    cusp_ord, cusp_ord_gamma0, cusp_ords_gamma0, cusp_set, cusps_excluding_infinity, fan_width, Cusp, OrdVector,
};
pub use error::{Error, Result};
pub use eta::{combo_expand, eta_factorize, expand, expand_no_prefactor, EtaCombo, EtaProduct};
pub use modularity::{form_check, gamma_check, kronecker, FormVerdict, ModularityVerdict};
pub use prover::{
    analyze_gamma0_identity, min_total_ords, normalize_identity, prove_gamma0_identity, prove_gamma0_sum,
    BoundAnalysis, Normalized, OrdMatrix, OrdTable, ProofReport, Verdict, DEFAULT_MARGIN,
};
pub use scalar::Scalar;
pub use series::{eta_series, Exponent, LeadingTerm, Series};
pub use up::{analyze_up_identity, prove_up_identity, up_lower_bound, up_lower_bounds, up_series, UpBoundVector};

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;
/// Truncated q-series with rational coefficients.
pub type QSeries = Series<Rational>;
/// Eta-combination with rational coefficients.
pub type RationalCombo = EtaCombo<Rational>;
