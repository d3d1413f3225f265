//! Escape-time iteration of `z² + c` over the complex, bicomplex and
//! tricomplex numbers.
//!
//! A tricomplex orbit splits into four independent complex orbits through
//! the idempotent decomposition, so membership in the tricomplex Mandelbrot
//! set is decided by four ordinary escape-time loops run in lockstep.

use serde::{Deserialize, Serialize};

use crate::multicomplex::{idem4_decompose, Complex, Idem4, Tricomplex};

/// Outcome of an escape-time test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EscapeResult {
    /// First iteration (1-based) at which the orbit left the escape disk, or
    /// `None` if it stayed inside for all iterations.
    pub escape_iter: Option<u32>,
}

impl EscapeResult {
    pub const BOUNDED: EscapeResult = EscapeResult { escape_iter: None };

    pub fn escaped_at(n: u32) -> Self {
        EscapeResult {
            escape_iter: Some(n),
        }
    }

    #[inline]
    pub fn bounded(&self) -> bool {
        self.escape_iter.is_none()
    }

    /// Grid encoding: `0` for bounded, otherwise the escape iteration.
    #[inline]
    pub fn count(&self) -> u32 {
        self.escape_iter.unwrap_or(0)
    }

    /// Membership in a union of two sets: bounded if either is, otherwise the
    /// later escape.
    pub fn union(self, other: EscapeResult) -> EscapeResult {
        match (self.escape_iter, other.escape_iter) {
            (Some(a), Some(b)) => EscapeResult::escaped_at(a.max(b)),
            _ => EscapeResult::BOUNDED,
        }
    }

    /// Membership in an intersection: escapes as soon as either does.
    pub fn intersect(self, other: EscapeResult) -> EscapeResult {
        match (self.escape_iter, other.escape_iter) {
            (Some(a), Some(b)) => EscapeResult::escaped_at(a.min(b)),
            (Some(a), None) | (None, Some(a)) => EscapeResult::escaped_at(a),
            (None, None) => EscapeResult::BOUNDED,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterationConfig {
    pub max_iter: u32,
    pub escape_radius: f64,
}

impl Default for IterationConfig {
    fn default() -> Self {
        IterationConfig {
            max_iter: 1000,
            escape_radius: 2.0,
        }
    }
}

impl IterationConfig {
    pub fn with_max_iter(max_iter: u32) -> Self {
        IterationConfig {
            max_iter,
            ..Default::default()
        }
    }

    /// Checks `max_iter >= 1` and `escape_radius >= 2`.
    pub fn validate(&self) -> Result<(), String> {
        if self.max_iter < 1 {
            return Err("max_iter must be at least 1".into());
        }
        if !(self.escape_radius >= 2.0) {
            return Err("escape radius must be at least 2".into());
        }
        Ok(())
    }

    #[inline]
    fn radius_sq(&self) -> f64 {
        self.escape_radius * self.escape_radius
    }
}

#[inline]
fn step(z: Complex, c: Complex) -> Complex {
    Complex::new(z.re * z.re - z.im * z.im + c.re, 2.0 * z.re * z.im + c.im)
}

/// Escape-time test for `z ← z² + c` from `z = 0`.
pub fn complex_escape(c: Complex, cfg: &IterationConfig) -> EscapeResult {
    let r2 = cfg.radius_sq();
    let mut z = Complex::new(0.0, 0.0);
    for n in 1..=cfg.max_iter {
        z = step(z, c);
        if z.norm_sqr() > r2 {
            return EscapeResult::escaped_at(n);
        }
    }
    EscapeResult::BOUNDED
}

/// Escape test on several complex parameters at once; the result escapes at
/// the first iteration where any of the orbits does.
pub fn joint_escape<const K: usize>(cs: &[Complex; K], cfg: &IterationConfig) -> EscapeResult {
    let r2 = cfg.radius_sq();
    let mut zs = [Complex::new(0.0, 0.0); K];
    for n in 1..=cfg.max_iter {
        let mut out = false;
        for (z, c) in zs.iter_mut().zip(cs) {
            *z = step(*z, *c);
            out |= z.norm_sqr() > r2;
        }
        if out {
            return EscapeResult::escaped_at(n);
        }
    }
    EscapeResult::BOUNDED
}

/// Escape test in idempotent coordinates.
pub fn idem4_escape(e: &Idem4, cfg: &IterationConfig) -> EscapeResult {
    joint_escape(e.components(), cfg)
}

/// Escape test for a tricomplex parameter through its four idempotent
/// components.
pub fn tc_escape(c: &Tricomplex, cfg: &IterationConfig) -> EscapeResult {
    idem4_escape(&idem4_decompose(c), cfg)
}

/// `n` iterations of `η ← η² + c` from zero using full tricomplex
/// multiplication.
pub fn direct_orbit(c: &Tricomplex, n: usize) -> Tricomplex {
    let mut eta = Tricomplex::ZERO;
    for _ in 0..n {
        eta = eta * eta + *c;
    }
    eta
}

/// The first `n` iterates of each idempotent component of `c`.
pub fn component_orbits(c: &Tricomplex, n: usize) -> Idem4 {
    let cs = idem4_decompose(c);
    let mut zs = [Complex::new(0.0, 0.0); 4];
    for _ in 0..n {
        for (z, c) in zs.iter_mut().zip(cs.components()) {
            *z = step(*z, *c);
        }
    }
    Idem4(zs)
}

/// Grid estimate of `sup { q : p + q i1 ∈ M1 for some p }`.
///
/// The grid has `samples` points per unit length over `[-2, 0.5] × [0, 1.5]`,
/// so `p = 0` and `q = 1` are always grid points and refining from `s` to `2s`
/// only adds points. Rows are scanned from the top down.
pub fn m_sup_estimate(samples: u32, cfg: &IterationConfig) -> f64 {
    let s = f64::from(samples.max(1));
    let p_steps = (2.5 * s).round() as i64;
    let q_steps = (1.5 * s).round() as i64;
    for j in (0..=q_steps).rev() {
        let q = j as f64 / s;
        let hit = (0..=p_steps).any(|i| {
            let p = -2.0 + i as f64 / s;
            complex_escape(Complex::new(p, q), cfg).bounded()
        });
        if hit {
            return q;
        }
    }
    0.0
}
