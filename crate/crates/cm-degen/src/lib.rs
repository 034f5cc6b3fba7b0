//! Exact computation of the stable hom order, Grothendieck-group classes and
//! stable degenerations of Cohen-Macaulay modules over simple singularities of
//! type A_n, i.e. rings `k[[x_0,...,x_d]]/(x_0^{n+1} + x_1^2 + ... + x_d^2)`.
//!
//! The stable category of such a ring is equivalent, via Knoerrer periodicity,
//! to the one of the reduced ring in dimension `d mod 2`.  All arithmetic is
//! exact: stable-Hom dimensions are ground truth computed from matrix
//! factorizations over Q(i) (dimension one) or from finite-dimensional linear
//! algebra over `k[x]/(x^{n+1})` (dimension zero).

pub mod ar_quiver;
pub mod catalog;
pub mod cli;
pub mod degen;
pub mod error;
pub mod field;
pub mod homtab;
pub mod k0;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod snf;
pub mod verify;

pub use catalog::{IndecId, SingularitySpec, StableModule};
pub use error::Error;
pub use homtab::HomTable;
