//! Exact analysis and construction of multivariate generalized Hermite
//! subdivision schemes.
//!
//! Masks are finitely supported maps `Z^d → Q^{r×r}` acting by
//! `(S_a v)(j) = 2^d Σ_k v(k) a(j − 2k)`. All algebra is exact over the
//! rationals; only the smoothness estimator works in floating point
//! (binary64, or double-double for ill-conditioned masks).

pub mod analysis;
pub mod construct;
pub mod error;
pub mod expr;
pub mod io;
pub mod jets;
pub mod lattice;
pub mod mask;
pub mod matrix;
pub mod normalform;
pub mod poly;
pub mod polysub;
pub mod rational;
pub mod registry;
pub mod seq;
pub mod smoothness;
pub mod splines;
pub mod symmetry;
pub mod verify;

pub use error::{Error, Result};
pub use lattice::{MultiIndex, Point};
pub use mask::{HermiteType, Mask, VectorData};
pub use matrix::QMatrix;
pub use rational::Q;
pub use seq::MatSeq;
