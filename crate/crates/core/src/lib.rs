//! Cluster characters of tame quivers.
//!
//! The crate computes the Caldero-Chapoton map of acyclic affine quivers in two
//! independent ways (a brute-force finite-field oracle and an AR-knitting and
//! tube recursion), checks tube and multiplication identities, and builds
//! integral bases of the cluster algebra inside a box of dimension vectors.

pub mod basis;
pub mod cluster;
pub mod error;
pub mod gf;
pub mod grassmannian;
pub mod laurent;
pub mod oracle;
pub mod par;
pub mod quiver;
pub mod report;
pub mod tube;
pub mod verify;

pub use error::*;
pub use laurent::LaurentPolynomial;
pub use quiver::{builtin, AffineClass, DimVector, Quiver, TubeShape};
pub use cluster::{ClusterObject, Context, Indec};
