//! Exact enumeration of the weighted lattice polynomials `L(i, j)(x)` together
//! with two bijective models of them:
//!
//! * lattice paths ↔ 12312-avoiding partial matchings in the class `Q`, where
//!   the weight exponent of a path becomes the (generalized) crossing number;
//! * lattice paths to `(2n, n)` ↔ even plane trees with `2n` edges, where the
//!   weight exponent becomes the r-index.
//!
//! Every identity is also checkable by brute force; see [`verify`].

pub mod cli;
pub mod error;
pub mod eventree;
pub mod lattice;
pub mod matching;
pub mod poly;
pub mod verify;

pub use error::{Error, Result};
pub use eventree::{EvenTree, TreeNode};
pub use lattice::{GridPosition, LatticePath, Step};
pub use matching::{PartialMatching, Pattern, SequentialForm};
pub use poly::Poly;
