//! Effective optical geometries of Euler-Heisenberg electrodynamics.
//!
//! Weak disturbances of a strong background field travel along null curves
//! of an effective metric built from the field's stress. This crate builds
//! those metrics for plane waves, cylindrical waves and an exact static
//! solution, and locates their optical horizons.

pub mod cylindrical;
pub mod effective_metric;
pub mod error;
pub mod lfg;
pub mod numerics;
pub mod plane_wave;
pub mod static_field;
pub mod tensor4;

pub use error::{Error, Result};
