//! Computer algebra and sampled verification for a class of bi-univalent
//! functions defined by subordination of the operator
//!
//! `L[f] = (1 - lambda) (f/z)^mu + lambda f' (f/z)^(mu - 1) + xi delta z f''`.
//!
//! * [`series`]: truncated power series over exact rationals or `f64` complexes.
//! * [`faber`]: Faber coefficients `K_n^p`, partial Bell sums and the inverse map.
//! * [`operator`]: the operator, its published coefficient functionals and an audit.
//! * [`bounds`]: closed-form coefficient bounds and the coefficient audit.
//! * [`membership`]: sampled real-part and subordination membership tests.
//! * [`corpus`]: built-in candidate functions.

pub mod bounds;
pub mod corpus;
pub mod error;
pub mod faber;
pub mod membership;
pub mod operator;
pub mod sample;
pub mod scalar;
pub mod series;

pub use bounds::{bound_a2, bound_a3, bound_an_gap, bound_report, BoundReport, BoundValue};
pub use error::{BoundError, FaberError, MembershipError, OperatorError, ParamError, SeriesError};
pub use faber::{bell_d, check_expansion_terms, faber_k, inverse_coeffs, BellQuery, FaberQuery};
pub use membership::{
    caratheodory_check, halfplane_membership, schwarz_extract, subordination_membership, MembershipReport, PhiSpec,
    SamplingGrid, Verdict,
};
pub use operator::{compare_f, expand_l, published_f, xi_of, ClassParams, OperatorExpansion};
pub use scalar::{Backend, Exponent, Rational, Scalar};
pub use series::{ExactSeries, FloatSeries, Series, DEFAULT_ORDER};
