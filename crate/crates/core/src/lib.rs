//! Exact algebra for 0-dimensional subschemes of projective space.
//!
//! Polynomials live in `K[X_0, ..., X_n]` over `Q` or a prime field, with the
//! degree-reverse-lexicographic order in which `X_0` is the smallest variable.
//! Every scheme is assumed to avoid the hyperplane `X_0 = 0`, so `x_0` is a
//! non-zerodivisor on its coordinate ring.

#![no_std]

extern crate alloc;

pub mod canonical;
pub mod cbp;
pub mod dedekind;
pub mod error;
pub mod gbasis;
pub mod idealops;
pub mod liaison;
pub mod linalg;
pub mod local;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod random;
pub mod scalar;
pub mod scheme;

pub use cbp::{cbp_check, cbp_profile, is_cayley_bacharach, CbpMethod, CbpVerdict, Verdict};
pub use error::{Error, Result};
pub use gbasis::{HilbertData, HomogIdeal};
pub use liaison::{ci_envelope, linkage_report, residual, LinkageTriple};
pub use monomial::{graded_basis, Monomial};
pub use parse::{parse_form, parse_poly};
pub use poly::{AffinePoint, Poly, Ring};
pub use scalar::{Field, Scalar};
pub use scheme::{scheme_from_components, scheme_from_ideal, Scheme, SchemeComponent, SchemeMode};
