//! Exact scalars: rationals and rational functions in the formal parameters.

mod gcd;
mod parse;
mod poly;
mod scalar;

pub use gcd::{content_in, gcd};
pub use parse::parse_scalar;
pub use poly::{grlex, mono_add, mono_degree, mono_sub, render_mono, Mono, Poly, Var, NVARS, ONE_MONO};
pub use scalar::{RatFunc, Scalar};

/// `reduce_ratfunc`: cancel common factors; the full gcd step is opt-in.
pub fn reduce_ratfunc(s: &Scalar, full_gcd: bool) -> Scalar {
    s.reduce(full_gcd)
}
