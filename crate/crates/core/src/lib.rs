//! Frobenius roots, generalized test ideals, F-thresholds and F-jumping
//! exponents of ideals in `F_p[x_1, ..., x_n]`.
//!
//! Everything is exact: coefficients live in `F_p`, exponents `c` are
//! nonnegative rationals, and ideal comparisons go through reduced Gröbner
//! bases.
//!
//! ```
//! use fjump_core::{frobenius_root, Ideal, Ring};
//!
//! let r = Ring::new(2, &["x", "y"]).unwrap();
//! let b = Ideal::parse(&r, "x^3*y^2").unwrap();
//! let root = frobenius_root(&b, 1).unwrap();
//! assert_eq!(root.to_string(), "(x*y)");
//! ```

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod field;
pub mod frobenius;
pub mod groebner;
pub mod ideal;
pub mod monomial;
pub mod oracle;
pub mod parse;
pub mod poly;
pub mod rat;
pub mod ring;
pub mod testideal;
pub mod thresholds;

pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use field::{ArithOp, FieldElem, PrimeField};
pub use frobenius::{bracket_power, frobenius_root, root_scaled};
pub use groebner::GroebnerBasis;
pub use ideal::Ideal;
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_poly, parse_poly_list};
pub use poly::Poly;
pub use rat::Rat;
pub use ring::{Limits, Ring};
pub use testideal::{degree_bound_check, skoda_reduce, tau, tau_mixed, TauParams, TauResult};
pub use thresholds::{
    denom_bound, fpt, fthreshold, jumping_exponents, nu, DenomBound, JumpList, NuRecord,
    ThresholdEstimate,
};
