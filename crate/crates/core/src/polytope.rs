//! Small halfspace systems in at most three variables: Fourier–Motzkin
//! elimination, brute-force vertex enumeration, redundancy tests and edge
//! graphs with regularity checks.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const TAU_FEAS: f64 = 1e-9;
pub const TAU_DEDUP: f64 = 1e-9;
pub const TAU_REGULAR: f64 = 1e-9;

/// Half-width of the bounding box used to detect unbounded systems.
const BOUNDING_BOX: f64 = 1e6;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum PolytopeError {
    #[error("system is unbounded")]
    Unbounded,
    #[error("system is infeasible")]
    Infeasible,
    #[error("variable index {var} out of range for dimension {dim}")]
    BadVariable { var: usize, dim: usize },
    #[error("vertex enumeration needs a 3-dimensional system, got {0}")]
    NotThreeDimensional(usize),
    #[error("unknown builtin system `{0}`")]
    UnknownSystem(String),
    #[error("halfspace normal is zero")]
    ZeroNormal,
}

/// `normal · x ≤ offset`. Unused trailing coordinates are zero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Halfspace {
    pub normal: [f64; 3],
    pub offset: f64,
}

impl Halfspace {
    pub fn new(normal: [f64; 3], offset: f64) -> Result<Self, PolytopeError> {
        if normal.iter().all(|&a| a == 0.0) {
            return Err(PolytopeError::ZeroNormal);
        }
        Ok(Halfspace { normal, offset })
    }

    #[inline]
    pub fn eval(&self, x: &[f64; 3]) -> f64 {
        dot(&self.normal, x)
    }

    #[inline]
    pub fn slack(&self, x: &[f64; 3]) -> f64 {
        self.offset - self.eval(x)
    }

    pub fn contains(&self, x: &[f64; 3], tol: f64) -> bool {
        self.slack(x) >= -tol
    }

    /// Scaled so the largest absolute coefficient is 1.
    fn normalized(&self) -> Halfspace {
        let m = self.normal.iter().fold(0.0f64, |m, a| m.max(a.abs()));
        Halfspace {
            normal: self.normal.map(|a| a / m),
            offset: self.offset / m,
        }
    }

    fn same_plane(&self, other: &Halfspace) -> bool {
        let a = self.normalized();
        let b = other.normalized();
        a.normal
            .iter()
            .zip(&b.normal)
            .all(|(x, y)| (x - y).abs() <= TAU_DEDUP)
            && (a.offset - b.offset).abs() <= TAU_DEDUP
    }
}

impl fmt::Display for Halfspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (a, n) in self.normal.iter().zip(["x", "y", "z"]) {
            if *a == 0.0 {
                continue;
            }
            match (first, *a < 0.0) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if a.abs() != 1.0 {
                write!(f, "{}", a.abs())?;
            }
            f.write_str(n)?;
            first = false;
        }
        write!(f, " <= {}", self.offset)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct HalfspaceSystem {
    pub dim: usize,
    pub rows: Vec<Halfspace>,
}

impl HalfspaceSystem {
    pub fn new(dim: usize, rows: Vec<Halfspace>) -> Self {
        assert!(dim == 2 || dim == 3, "systems have 2 or 3 variables");
        HalfspaceSystem { dim, rows }
    }

    /// Build from `(normal, offset)` pairs; zero normals are rejected.
    pub fn from_rows(dim: usize, rows: &[([f64; 3], f64)]) -> Result<Self, PolytopeError> {
        let rows = rows
            .iter()
            .map(|&(n, b)| Halfspace::new(n, b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(HalfspaceSystem::new(dim, rows))
    }

    pub fn contains(&self, x: &[f64; 3], tol: f64) -> bool {
        self.rows.iter().all(|r| r.contains(x, tol))
    }

    pub fn without(&self, index: usize) -> HalfspaceSystem {
        let mut rows = self.rows.clone();
        rows.remove(index);
        HalfspaceSystem {
            dim: self.dim,
            rows,
        }
    }

    /// Tightest bounds `lo ≤ x[var] ≤ hi` implied by rows that involve only
    /// `var`.
    pub fn single_variable_bounds(&self, var: usize) -> (f64, f64) {
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        for r in &self.rows {
            let only = r
                .normal
                .iter()
                .enumerate()
                .all(|(k, a)| k == var || *a == 0.0);
            if !only {
                continue;
            }
            let a = r.normal[var];
            if a > 0.0 {
                hi = hi.min(r.offset / a);
            } else if a < 0.0 {
                lo = lo.max(r.offset / a);
            }
        }
        (lo, hi)
    }
}

/// Fourier–Motzkin elimination of one variable.
///
/// Rows with a zero coefficient pass through; every (positive, negative)
/// pair is combined so the variable cancels. Resulting rows are scaled to a
/// unit max-coefficient and exact duplicates are dropped. Rows reducing to
/// `0 ≤ b` are dropped when `b ≥ 0` and reported as infeasibility otherwise.
/// The output keeps the coordinate layout with a zero column at `var`.
pub fn fm_eliminate(sys: &HalfspaceSystem, var: usize) -> Result<HalfspaceSystem, PolytopeError> {
    if var >= sys.dim {
        return Err(PolytopeError::BadVariable { var, dim: sys.dim });
    }
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut out: Vec<Halfspace> = Vec::new();
    let push = |out: &mut Vec<Halfspace>, h: Halfspace| -> Result<(), PolytopeError> {
        if h.normal.iter().all(|&a| a.abs() <= 1e-15) {
            if h.offset < -TAU_FEAS {
                return Err(PolytopeError::Infeasible);
            }
            return Ok(());
        }
        let h = h.normalized();
        if !out.iter().any(|o| o.same_plane(&h)) {
            out.push(h);
        }
        Ok(())
    };
    for r in &sys.rows {
        let a = r.normal[var];
        if a > 0.0 {
            pos.push(*r);
        } else if a < 0.0 {
            neg.push(*r);
        } else {
            push(&mut out, *r)?;
        }
    }
    for p in &pos {
        for n in &neg {
            let ap = p.normal[var];
            let an = -n.normal[var];
            let mut normal = [0.0; 3];
            for (k, slot) in normal.iter_mut().enumerate() {
                *slot = if k == var {
                    0.0
                } else {
                    an * p.normal[k] + ap * n.normal[k]
                };
            }
            let offset = an * p.offset + ap * n.offset;
            push(&mut out, Halfspace { normal, offset })?;
        }
    }
    Ok(HalfspaceSystem {
        dim: sys.dim,
        rows: out,
    })
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Solve a 3×3 system by Gaussian elimination with partial pivoting.
fn solve3(m: [[f64; 3]; 3], rhs: [f64; 3]) -> Option<[f64; 3]> {
    let scale = m.iter().flatten().fold(0.0f64, |s, a| s.max(a.abs()));
    if scale == 0.0 {
        return None;
    }
    let mut a = [[0.0; 4]; 3];
    for i in 0..3 {
        a[i][..3].copy_from_slice(&m[i]);
        a[i][3] = rhs[i];
    }
    for col in 0..3 {
        let piv = (col..3)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .expect("non-empty range");
        if a[piv][col].abs() <= 1e-12 * scale {
            return None;
        }
        a.swap(col, piv);
        for i in 0..3 {
            if i == col {
                continue;
            }
            let f = a[i][col] / a[col][col];
            let pivot = a[col];
            for (x, p) in a[i][col..].iter_mut().zip(&pivot[col..]) {
                *x -= f * p;
            }
        }
    }
    Some([a[0][3] / a[0][0], a[1][3] / a[1][1], a[2][3] / a[2][2]])
}

/// A vertex with the indices of the rows that are tight at it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vertex {
    pub point: [f64; 3],
    pub tight: Vec<usize>,
}

fn raw_vertices(sys: &HalfspaceSystem) -> Vec<[f64; 3]> {
    let rows = &sys.rows;
    let n = rows.len();
    let mut out: Vec<[f64; 3]> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let m = [rows[i].normal, rows[j].normal, rows[k].normal];
                let Some(x) = solve3(m, [rows[i].offset, rows[j].offset, rows[k].offset]) else {
                    continue;
                };
                if !sys.contains(&x, TAU_FEAS) {
                    continue;
                }
                let dup = out
                    .iter()
                    .any(|v| v.iter().zip(&x).all(|(a, b)| (a - b).abs() <= TAU_DEDUP));
                if !dup {
                    out.push(x);
                }
            }
        }
    }
    out
}

fn with_bounding_box(sys: &HalfspaceSystem) -> HalfspaceSystem {
    let mut rows = sys.rows.clone();
    for k in 0..3 {
        let mut n = [0.0; 3];
        n[k] = 1.0;
        rows.push(Halfspace {
            normal: n,
            offset: BOUNDING_BOX,
        });
        n[k] = -1.0;
        rows.push(Halfspace {
            normal: n,
            offset: BOUNDING_BOX,
        });
    }
    HalfspaceSystem { dim: sys.dim, rows }
}

/// Vertices of a bounded 3D system, found by solving every 3-row subsystem
/// and keeping the feasible, distinct solutions.
///
/// Returns an empty list for an infeasible system and
/// [`PolytopeError::Unbounded`] if the feasible set is unbounded.
pub fn enumerate_vertices(sys: &HalfspaceSystem) -> Result<Vec<[f64; 3]>, PolytopeError> {
    if sys.dim != 3 {
        return Err(PolytopeError::NotThreeDimensional(sys.dim));
    }
    let boxed = with_bounding_box(sys);
    let verts = raw_vertices(&boxed);
    if verts
        .iter()
        .any(|v| v.iter().any(|x| x.abs() >= BOUNDING_BOX * (1.0 - 1e-9)))
    {
        return Err(PolytopeError::Unbounded);
    }
    Ok(verts)
}

/// Whether dropping `row` leaves the feasible set of `sys` unchanged.
///
/// `row` is redundant when the maximum of its left-hand side over the
/// vertices of the remaining system does not exceed its offset.
pub fn is_redundant(row: &Halfspace, sys: &HalfspaceSystem) -> Result<bool, PolytopeError> {
    let rest = HalfspaceSystem {
        dim: sys.dim,
        rows: sys.rows.iter().filter(|r| *r != row).copied().collect(),
    };
    let verts = enumerate_vertices(&rest)?;
    Ok(verts.iter().all(|v| row.eval(v) <= row.offset + TAU_FEAS))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolytopeReport {
    pub vertices: Vec<[f64; 3]>,
    pub edges: Vec<(usize, usize)>,
    pub edge_lengths: Vec<f64>,
    pub is_regular: bool,
    pub tolerance: f64,
}

impl PolytopeReport {
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices.len()];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    pub fn max_edge_deviation(&self, expected: f64) -> f64 {
        self.edge_lengths
            .iter()
            .fold(0.0, |m, l| m.max((l - expected).abs()))
    }
}

/// Connect vertices that share at least two tight facets, measure the edges
/// and decide regularity (equal lengths and equal vertex degrees).
pub fn edge_graph(sys: &HalfspaceSystem, vertices: &[[f64; 3]]) -> PolytopeReport {
    // coincident planes count once
    let mut planes: Vec<Halfspace> = Vec::new();
    for r in &sys.rows {
        if !planes.iter().any(|p| p.same_plane(r)) {
            planes.push(*r);
        }
    }
    let tight: Vec<Vec<usize>> = vertices
        .iter()
        .map(|v| {
            planes
                .iter()
                .enumerate()
                .filter(|(_, r)| r.slack(v).abs() <= TAU_FEAS)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let mut edges = Vec::new();
    let mut lengths = Vec::new();
    for a in 0..vertices.len() {
        for b in a + 1..vertices.len() {
            let shared = tight[a].iter().filter(|i| tight[b].contains(i)).count();
            if shared >= 2 {
                edges.push((a, b));
                let d: f64 = (0..3)
                    .map(|k| (vertices[a][k] - vertices[b][k]).powi(2))
                    .sum::<f64>()
                    .sqrt();
                lengths.push(d);
            }
        }
    }
    let mut report = PolytopeReport {
        vertices: vertices.to_vec(),
        edges,
        edge_lengths: lengths,
        is_regular: false,
        tolerance: TAU_REGULAR,
    };
    let degrees = report.degrees();
    let equal_len = match report.edge_lengths.first() {
        Some(&l0) => report
            .edge_lengths
            .iter()
            .all(|l| (l - l0).abs() <= TAU_REGULAR),
        None => false,
    };
    let equal_deg = degrees.windows(2).all(|w| w[0] == w[1]);
    report.is_regular = equal_len && equal_deg;
    report
}

/// Vertex enumeration followed by [`edge_graph`].
pub fn analyze(sys: &HalfspaceSystem) -> Result<PolytopeReport, PolytopeError> {
    let v = enumerate_vertices(sys)?;
    Ok(edge_graph(sys, &v))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BuiltinSystem {
    Firebrot4,
    Firebrot8,
    Airbrot,
    Earthbrot,
}

impl BuiltinSystem {
    pub const ALL: [BuiltinSystem; 4] = [
        BuiltinSystem::Firebrot4,
        BuiltinSystem::Firebrot8,
        BuiltinSystem::Airbrot,
        BuiltinSystem::Earthbrot,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinSystem::Firebrot4 => "firebrot4",
            BuiltinSystem::Firebrot8 => "firebrot8",
            BuiltinSystem::Airbrot => "airbrot",
            BuiltinSystem::Earthbrot => "earthbrot",
        }
    }
}

impl std::str::FromStr for BuiltinSystem {
    type Err = PolytopeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BuiltinSystem::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| PolytopeError::UnknownSystem(s.to_string()))
    }
}

/// The literal inequality systems of the polyhedral slices.
///
/// Firebrot systems use coordinates `(c4, c6, c7)`; `firebrot8` is the full
/// system before the redundant `≤ 2` rows are dropped. Airbrot uses
/// `(c1, c4, c6)`; Earthbrot the idempotent coordinates.
pub fn builtin_system(which: BuiltinSystem) -> HalfspaceSystem {
    let q = 0.25;
    let rows: Vec<([f64; 3], f64)> = match which {
        BuiltinSystem::Firebrot4 => vec![
            ([1.0, -1.0, 1.0], q),
            ([-1.0, 1.0, 1.0], q),
            ([1.0, 1.0, -1.0], q),
            ([-1.0, -1.0, -1.0], q),
        ],
        BuiltinSystem::Firebrot8 => vec![
            ([1.0, -1.0, 1.0], q),
            ([-1.0, 1.0, -1.0], 2.0),
            ([-1.0, 1.0, 1.0], q),
            ([1.0, -1.0, -1.0], 2.0),
            ([1.0, 1.0, -1.0], q),
            ([-1.0, -1.0, 1.0], 2.0),
            ([-1.0, -1.0, -1.0], q),
            ([1.0, 1.0, 1.0], 2.0),
        ],
        BuiltinSystem::Airbrot => {
            let mut rows = Vec::with_capacity(8);
            for s1 in [1.0, -1.0] {
                for s2 in [1.0, -1.0] {
                    for s3 in [1.0, -1.0] {
                        // s1 (c1 + 7/8) + s2 c4 + s3 c6 ≤ 9/8
                        rows.push(([s1, s2, s3], 1.125 - s1 * 0.875));
                    }
                }
            }
            rows
        }
        BuiltinSystem::Earthbrot => {
            let mut rows = Vec::with_capacity(6);
            for k in 0..3 {
                let mut n = [0.0; 3];
                n[k] = 1.0;
                rows.push((n, q));
                n[k] = -1.0;
                rows.push((n, 2.0));
            }
            rows
        }
    };
    HalfspaceSystem::from_rows(3, &rows).expect("builtin rows have non-zero normals")
}
