//! Weights, classical root systems, Weyl group orbits and stabilizers.

mod classical;
mod generic;
mod group;
pub mod multiset;
mod weight;

pub use classical::{Dominantized, Family, Root, RootSystemSpec, Slot};
pub use generic::{from_q, slot_of_var, to_q, GenericRoot, QVec, RootData};
pub use group::{distinct_permutations, SignedPerm};
pub use weight::{render_half, Weight};
