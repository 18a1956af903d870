//! Monomial expansions of Heckman-Opdam and Macdonald polynomials for the
//! classical root systems, computed from a lower Hessenberg determinant.

pub mod error;
pub mod exact_arith;
pub mod exec;
pub mod heckman_opdam;
pub mod hessenberg;
pub mod macdonald;
pub mod oracles;
pub mod root_data;

pub use error::{Error, Result};
pub use exact_arith::{parse_scalar, Scalar, Var};
pub use exec::Execution;
pub use hessenberg::{MonomialExpansion, SolveOptions, TriangularData};
pub use macdonald::{DChoice, MacParams, MinusculeChoice};
pub use root_data::{Family, RootSystemSpec, Weight};
