//! Exterior-square geometry of Minkowski 4-space and the SO(3,1) action on
//! its light cone.
//!
//! The crate is organised bottom-up:
//!
//! * [`minkowski`] — the metric of signature (3,1), proper Lorentz matrices,
//!   the six one-parameter generators and seeded sampling of group words.
//! * [`wedge`] — bivectors, the induced (3,3) metric, the null `E±` basis,
//!   the pushforward action and the Pfaffian invariant.
//! * [`orbit`] — canonical forms `r(cos φ ω12 + sin φ ω23 + ω34)`, orbit
//!   classification, tangent frames and the two-parameter surface through a
//!   canonical point.
//! * [`stabilizer`] — stabilizer generators at the canonical points and the
//!   invariant-subspace classifier.
//! * [`slice`] — the minimal slice radius and slice topology certificates.
//! * [`verify`] — named invariant suites shared by the CLI and the tests.
//! * [`cli`] — the batch command-line front end.

pub mod cli;
pub mod error;
pub mod linalg;
pub mod minkowski;
pub mod orbit;
pub mod slice;
pub mod stabilizer;
pub mod tolerance;
pub mod verify;
pub mod wedge;

pub use error::{Error, Result};
pub use minkowski::{Family, Generator, GeneratorKind, LorentzMatrix, Vec4};
pub use orbit::{CanonicalForm, OrbitClass, OrbitKind, TangentFrame};
pub use slice::SliceTopology;
pub use stabilizer::{StabilizerElement, StabilizerFamily, SubspaceLabel};
pub use tolerance::ToleranceConfig;
pub use wedge::{Bivector, EBivector};
