pub mod arith;
pub mod congruence;
pub mod error;
pub mod fields;
pub mod group;
pub mod linalg;
pub mod nilpotency;
pub mod splitting;
pub mod structure;
pub mod testkit;
pub mod verify;
pub mod witness;

pub use error::{Error, Result};
pub use fields::{Elem, Field, Poly};
pub use group::{GroupSpec, Program, Slp, Step, Word};
pub use linalg::{Matrix, Subspace};
pub use nilpotency::{is_finite_nilpotent, is_nilpotent, is_nilpotent_adjoint, Options, Verdict};
pub use witness::{Domain, InfiniteWitness, Witness};
