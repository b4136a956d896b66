//! Simulation and planning toolkit for improving 60 GHz non-line-of-sight
//! coverage in an L-shaped corridor with a passive metal reflector.
//!
//! - [`geometry`]: corridor frame, planar primitives, reflector orientation solver
//! - [`raytrace`]: image-method path enumeration with visibility checks
//! - [`propagation`]: free-space loss, materials, antenna patterns
//! - [`channel`]: swept frequency responses, path loss, delay profiles
//! - [`calibration`]: measurement composition, back-to-back de-embedding, sweep CSV
//! - [`campaign`]: the stepped-transmitter experiment with and without the panel

pub mod calibration;
pub mod campaign;
pub mod channel;
pub mod error;
pub mod geometry;
pub mod propagation;
pub mod raytrace;

pub use error::{Error, Result};
