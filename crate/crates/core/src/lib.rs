//! Exact and numeric machinery for deciding almost-positive curvature of the
//! cohomogeneity-two Eschenburg spaces `E_{p,q1,q2}`.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod exactpoly;
pub mod boxsign;
pub mod eschenburg;
pub mod topology;
pub mod torus;
pub mod geomcheck;
