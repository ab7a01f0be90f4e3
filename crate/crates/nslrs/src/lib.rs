//! Workbench for F_q-linear maps that fix a roots-of-unity group set-wise.
//!
//! Given a pair (n, q) with gcd(n, q) = 1, the group of n-th roots of unity
//! U lives in F_{q^m} with m the order of q mod n. The crate computes the
//! full group of F_q-linear maps permuting U, decides whether it is larger
//! than the n·m maps x ↦ c x^{q^j} that always exist, recognizes the known
//! families of larger groups, and exposes the companion objects (linear
//! recurring sequences, irreducible cyclic codes and their permutation
//! automorphisms) used to certify the results.

pub mod error;
pub(crate) mod linalg;
pub mod num;

pub mod code;
pub mod context;
pub mod field;
pub mod lrs;
pub mod nonstd;
pub mod perm;
pub mod poly;
pub mod qlin;

pub use error::{Error, Result};
