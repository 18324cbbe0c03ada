//! Finite groups, product sets, equation counting, quasirandomness degrees
//! and Ramsey-type colorings, with an experiment harness on top.

pub mod bitset;
pub mod error;
pub mod group;
pub mod lab;
pub mod ramsey;
pub mod rng;
pub mod counting;
pub mod sets;
pub mod spectral;

pub use error::{Error, Result};
pub use num_rational::Ratio;
pub use group::{build_group, ConjugacyClasses, Elem, FiniteGroup, GroupSpec};
pub use sets::{make_set, GroupSubset, SetKind};
