//! Tricomplex numbers, their Mandelbrot set and its 3D slices.
//!
//! * [`multicomplex`]: arithmetic, conjugates, idempotent decompositions, parsing.
//! * [`dynamics`]: escape-time iteration.
//! * [`slices`]: principal and idempotent 3D slices, characterizations, closed forms.
//! * [`polytope`]: halfspace systems, Fourier–Motzkin elimination, vertex enumeration.
//! * [`render`]: rasters, voxel grids, meshes and file output.
//! * [`cli`]: the `tribrot` command-line front end.

// `!(a < b)` is used on purpose so NaN lands on the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dynamics;
pub mod multicomplex;
pub mod polytope;
pub mod render;
pub mod slices;
