//! Coral-like crochet surfaces.
//!
//! The crate covers the whole pipeline for the `n`-coral family
//! `r(u, v) = (u cos v, u sin v, -u² cos nv)` and its two relatives (the
//! lettuce strip and the hyperbolic paraboloid):
//!
//! * [`surface`] evaluates positions and exact first/second partials,
//! * [`diffgeo`] builds the fundamental forms, the Weingarten matrix and
//!   every curvature quantity,
//! * [`oracle`] re-derives the same quantities numerically and runs the
//!   cross-check suite,
//! * [`crochet`] plans rows of a hyperbolic crochet piece and emits the
//!   stitch multipliers,
//! * [`mesh`] tessellates a surface with per-vertex curvature colors and
//!   writes OBJ/PLY,
//! * [`cli`] is the command-line front end used by the `knitcoral` binary.

pub mod cli;
pub mod crochet;
pub mod diffgeo;
mod error;
pub mod mesh;
pub mod oracle;
pub mod surface;

pub use error::{Error, Result};
pub use surface::{DomainPoint, Jet2, SurfaceFamily, SurfaceKind, Vec3};
