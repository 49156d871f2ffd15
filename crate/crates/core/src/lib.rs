//! Exact arithmetic for self-similar groups acting on rooted trees and for
//! their Röver–Nekrashevych groups.
//!
//! The crate covers the wreath-recursion calculus ([`ssgroup`]), complete
//! antichains of the `d`-ary tree ([`tree`]), abelianizations through Smith
//! normal form ([`abelian`]), element arithmetic in `V_d(G)` ([`rovernek`]),
//! the embeddings of a finitely presented self-similar group into the
//! commutator subgroup of a suitable `V_{d'}(G)` ([`embed`]), and self-similar
//! affine actions of `R^n ⋊ GL_n(R)` for `R = ℤ[1/m]` ([`virtend`]).

pub mod abelian;
pub mod embed;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod perm;
pub mod rovernek;
pub mod ssgroup;
pub mod tree;
pub mod virtend;
pub mod word;

pub use error::{Error, Result};
