//! Independent reference computations: operators applied term by term,
//! weight functions, Weyl characters and brute-force orbits.

mod inner;
mod lattice;
mod operators;

pub use inner::{
    constant_term_inner_product, integer_bindings, orbit_stabilizer_bruteforce, weight_function_expand, weyl_character, GramOracle,
    WeightFunctionKind,
};
pub use lattice::{LatticeElement, ZKey, ZLattice, MAX_DIM};
pub use operators::{
    apply_hypergeometric_operator, apply_macdonald_operator, check_eigen_ho, check_eigen_macdonald, ho_on_monomial, macdonald_on_monomial,
    macdonald_on_monomial_lattice, EigenCheck,
};
