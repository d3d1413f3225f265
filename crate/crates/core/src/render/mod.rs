//! Sampling of 2D sets and 3D slices on regular grids, cuberille surface
//! extraction and the PGM / OBJ / TBVX writers.

mod io;
mod mesh;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dynamics::{complex_escape, EscapeResult, IterationConfig};
use crate::multicomplex::Complex;
use crate::slices::{
    hyperbrot_escape, set_a_escape, slice_membership, starbrot_escape, Point3, PrincipalSlice,
    SliceSpec,
};

pub use io::{
    obj_string, pgm_bytes, pgm_level, read_obj, tbvx_bytes, write_obj, write_obj_layers, write_pgm,
    write_tbvx,
};
pub use mesh::{extract_surface, Face, Mesh};

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("invalid box: {0}")]
    InvalidBox(String),
    #[error("iteration count {0} does not fit the 16-bit voxel format")]
    CountOverflow(u32),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// The planar sets that can be rasterized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Set2D {
    /// `u + v i1`.
    Mandelbrot,
    /// `u + v j1`.
    Hyperbrot,
    /// `u i1 + v i2`.
    SetA,
}

impl std::str::FromStr for Set2D {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "mandelbrot" => Ok(Set2D::Mandelbrot),
            "hyperbrot" => Ok(Set2D::Hyperbrot),
            "seta" => Ok(Set2D::SetA),
            _ => Err(format!("unknown 2D set `{s}`")),
        }
    }
}

impl Set2D {
    pub fn escape(self, u: f64, v: f64, cfg: &IterationConfig) -> EscapeResult {
        match self {
            Set2D::Mandelbrot => complex_escape(Complex::new(u, v), cfg),
            Set2D::Hyperbrot => hyperbrot_escape(u, v, cfg),
            Set2D::SetA => set_a_escape(u, v, cfg),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Window2 {
    pub umin: f64,
    pub umax: f64,
    pub vmin: f64,
    pub vmax: f64,
    pub width: usize,
    pub height: usize,
}

impl Window2 {
    pub fn new(
        umin: f64,
        umax: f64,
        vmin: f64,
        vmax: f64,
        width: usize,
        height: usize,
    ) -> Result<Self, RenderError> {
        if !(umin < umax && vmin < vmax) {
            return Err(RenderError::InvalidWindow("min must be below max".into()));
        }
        if width == 0 || height == 0 {
            return Err(RenderError::InvalidWindow(
                "resolution must be at least 1".into(),
            ));
        }
        Ok(Window2 {
            umin,
            umax,
            vmin,
            vmax,
            width,
            height,
        })
    }

    /// Center of cell `(col, row)`; row 0 is the top edge (`v = vmax`).
    pub fn center(&self, col: usize, row: usize) -> (f64, f64) {
        let du = (self.umax - self.umin) / self.width as f64;
        let dv = (self.vmax - self.vmin) / self.height as f64;
        (
            self.umin + (col as f64 + 0.5) * du,
            self.vmax - (row as f64 + 0.5) * dv,
        )
    }

    pub fn pixel_diagonal(&self) -> f64 {
        let du = (self.umax - self.umin) / self.width as f64;
        let dv = (self.vmax - self.vmin) / self.height as f64;
        du.hypot(dv)
    }
}

/// Escape counts on a 2D grid, row-major; `0` marks a bounded cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid2D {
    pub width: usize,
    pub height: usize,
    pub max_iter: u32,
    pub cells: Vec<u32>,
}

impl Grid2D {
    pub fn get(&self, col: usize, row: usize) -> u32 {
        self.cells[row * self.width + col]
    }

    pub fn bounded_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c == 0).count()
    }
}

pub fn raster2d(set: Set2D, win: &Window2, cfg: &IterationConfig) -> Grid2D {
    let cells = (0..win.width * win.height)
        .into_par_iter()
        .map(|idx| {
            let (u, v) = win.center(idx % win.width, idx / win.width);
            set.escape(u, v, cfg).count()
        })
        .collect();
    Grid2D {
        width: win.width,
        height: win.height,
        max_iter: cfg.max_iter,
        cells,
    }
}

/// An axis-aligned box sampled with `n` voxels per axis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Box3 {
    pub min: [f64; 3],
    pub max: [f64; 3],
    pub n: usize,
}

impl Box3 {
    pub fn new(min: [f64; 3], max: [f64; 3], n: usize) -> Result<Self, RenderError> {
        if n < 2 {
            return Err(RenderError::InvalidBox(
                "resolution must be at least 2".into(),
            ));
        }
        if (0..3).any(|k| !(min[k] < max[k])) {
            return Err(RenderError::InvalidBox(
                "min must be below max on every axis".into(),
            ));
        }
        Ok(Box3 { min, max, n })
    }

    pub fn cube(lo: f64, hi: f64, n: usize) -> Result<Self, RenderError> {
        Box3::new([lo; 3], [hi; 3], n)
    }

    pub fn pitch(&self) -> [f64; 3] {
        std::array::from_fn(|k| (self.max[k] - self.min[k]) / self.n as f64)
    }

    pub fn center(&self, i: usize, j: usize, k: usize) -> [f64; 3] {
        let h = self.pitch();
        [
            self.min[0] + (i as f64 + 0.5) * h[0],
            self.min[1] + (j as f64 + 0.5) * h[1],
            self.min[2] + (k as f64 + 0.5) * h[2],
        ]
    }

    /// Corner `(i, j, k)` of the voxel lattice, `0..=n` per axis.
    pub fn corner(&self, i: usize, j: usize, k: usize) -> [f64; 3] {
        let h = self.pitch();
        [
            self.min[0] + i as f64 * h[0],
            self.min[1] + j as f64 * h[1],
            self.min[2] + k as f64 * h[2],
        ]
    }
}

/// Escape counts on an `n³` grid, x fastest; `0` marks a bounded voxel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VoxelGrid {
    pub bounds: Box3Key,
    pub n: usize,
    pub max_iter: u32,
    pub counts: Vec<u32>,
}

/// Bit pattern of a [`Box3`], so that grids compare with `Eq`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Box3Key {
    min: [u64; 3],
    max: [u64; 3],
}

impl From<Box3> for Box3Key {
    fn from(b: Box3) -> Self {
        Box3Key {
            min: b.min.map(f64::to_bits),
            max: b.max.map(f64::to_bits),
        }
    }
}

impl VoxelGrid {
    pub fn bounds(&self) -> Box3 {
        Box3 {
            min: self.bounds.min.map(f64::from_bits),
            max: self.bounds.max.map(f64::from_bits),
            n: self.n,
        }
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (k * self.n + j) * self.n + i
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> u32 {
        self.counts[self.index(i, j, k)]
    }

    /// Inside test for a divergence layer: bounded voxels, plus voxels that
    /// escaped no earlier than `threshold` when one is given.
    #[inline]
    pub fn inside(&self, i: usize, j: usize, k: usize, threshold: Option<u32>) -> bool {
        let c = self.get(i, j, k);
        c == 0 || threshold.is_some_and(|t| c >= t)
    }

    pub fn bounded_count(&self) -> usize {
        self.counts.iter().filter(|&&c| c == 0).count()
    }
}

/// What to voxelize.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VoxelTarget {
    Principal(PrincipalSlice),
    Spec(SliceSpec),
    /// Firebrot together with its dual.
    Starbrot,
}

impl VoxelTarget {
    pub fn escape(&self, p: Point3, cfg: &IterationConfig) -> EscapeResult {
        match self {
            VoxelTarget::Principal(s) => slice_membership(&s.spec(), p, cfg),
            VoxelTarget::Spec(spec) => slice_membership(spec, p, cfg),
            VoxelTarget::Starbrot => starbrot_escape(p, cfg),
        }
    }

    /// Sampling box covering the known extent of the target.
    pub fn default_bounds(&self) -> ([f64; 3], [f64; 3]) {
        match self {
            VoxelTarget::Principal(PrincipalSlice::Firebrot) | VoxelTarget::Starbrot => {
                ([-0.75; 3], [0.75; 3])
            }
            VoxelTarget::Principal(PrincipalSlice::Airbrot) => {
                ([-2.2, -1.2, -1.2], [0.5, 1.2, 1.2])
            }
            VoxelTarget::Principal(s) => per_axis_bounds(&s.spec()),
            VoxelTarget::Spec(spec) => per_axis_bounds(spec),
        }
    }
}

// Real axis spans M1 ∩ R = [-2, 1/4] with margin; every other axis is bounded
// by the vertical extent of M1 or by 9/8 on hyperbolic axes.
fn per_axis_bounds(spec: &SliceSpec) -> ([f64; 3], [f64; 3]) {
    match spec {
        SliceSpec::Principal(units) => {
            let mut lo = [0.0; 3];
            let mut hi = [0.0; 3];
            for (k, u) in units.iter().enumerate() {
                if *u == crate::multicomplex::BasisUnit::One {
                    lo[k] = -2.2;
                    hi[k] = 0.5;
                } else {
                    lo[k] = -1.3;
                    hi[k] = 1.3;
                }
            }
            (lo, hi)
        }
        SliceSpec::Idempotent(axes) => {
            let mut lo = [0.0; 3];
            let mut hi = [0.0; 3];
            for (k, e) in axes.iter().enumerate() {
                if e.imaginary {
                    lo[k] = -1.3;
                    hi[k] = 1.3;
                } else {
                    lo[k] = -2.2;
                    hi[k] = 0.5;
                }
            }
            (lo, hi)
        }
    }
}

/// Classify every voxel center. Evaluation is split across the rayon pool;
/// the result does not depend on the number of threads.
pub fn voxelize(target: &VoxelTarget, bounds: &Box3, cfg: &IterationConfig) -> VoxelGrid {
    let n = bounds.n;
    let counts = (0..n * n * n)
        .into_par_iter()
        .map(|idx| {
            let (i, j, k) = (idx % n, (idx / n) % n, idx / (n * n));
            target
                .escape(Point3::from(bounds.center(i, j, k)), cfg)
                .count()
        })
        .collect();
    VoxelGrid {
        bounds: Box3Key::from(*bounds),
        n,
        max_iter: cfg.max_iter,
        counts,
    }
}

/// Evaluate `f` on every voxel center, for closed-form comparisons.
pub fn sample_voxels<F>(bounds: &Box3, f: F) -> Vec<bool>
where
    F: Fn([f64; 3]) -> bool + Sync,
{
    let n = bounds.n;
    (0..n * n * n)
        .into_par_iter()
        .map(|idx| f(bounds.center(idx % n, (idx / n) % n, idx / (n * n))))
        .collect()
}
