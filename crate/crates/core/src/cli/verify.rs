//! Invariant checks behind `tribrot verify`. Every check is a pure function
//! of its parameters and seed, so reports are reproducible byte for byte.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::dynamics::{complex_escape, component_orbits, direct_orbit, IterationConfig};
use crate::multicomplex::{
    format_tc, idem4_compose, idempotent_elements, parse_tc, BasisUnit, Complex, Tricomplex,
};
use crate::polytope::{
    analyze, builtin_system, enumerate_vertices, fm_eliminate, BuiltinSystem, PolytopeReport,
};
use crate::render::{raster2d, sample_voxels, voxelize, Box3, Set2D, VoxelTarget, Window2};
use crate::slices::{
    airbrot_closed, char_membership, earthbrot_closed, firebrot_closed, hyperbrot_closed,
    slice_membership, PrincipalSlice, SliceSpec,
};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Algebra,
    Idempotents,
    CharEquivalence,
    ClosedForms,
    Polyhedra,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [
        Suite::Algebra,
        Suite::Idempotents,
        Suite::CharEquivalence,
        Suite::ClosedForms,
        Suite::Polyhedra,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Idempotents => "idempotents",
            Suite::CharEquivalence => "char-equivalence",
            Suite::ClosedForms => "closed-forms",
            Suite::Polyhedra => "polyhedra",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown check `{s}`"))
    }
}

/// Result of one invariant check.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub metrics: Value,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, metrics: Value) -> Self {
        Check {
            name: name.into(),
            passed,
            metrics,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyParams {
    pub samples: usize,
    pub seed: u64,
    pub max_iter: u32,
    pub hyperbrot_grid: usize,
    pub voxel_grid: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub check: String,
    pub params: VerifyParams,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

impl VerifyParams {
    pub fn new(samples: usize, seed: u64, max_iter: u32) -> Self {
        VerifyParams {
            samples,
            seed,
            max_iter,
            hyperbrot_grid: 512,
            voxel_grid: 64,
        }
    }

    fn cfg(&self) -> IterationConfig {
        IterationConfig::with_max_iter(self.max_iter)
    }
}

// Independent streams per check, all derived from the user seed.
fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn random_tc(r: &mut ChaCha8Rng, bound: f64) -> Tricomplex {
    Tricomplex::new(std::array::from_fn(|_| r.gen_range(-bound..=bound)))
}

fn max_of(xs: impl IntoIterator<Item = f64>) -> f64 {
    xs.into_iter().fold(0.0, f64::max)
}

pub fn run(suite: Suite, params: &VerifyParams) -> VerifyReport {
    let suites: Vec<SuiteReport> = match suite {
        Suite::All => Suite::EACH.iter().map(|s| run_suite(*s, params)).collect(),
        s => vec![run_suite(s, params)],
    };
    VerifyReport {
        schema: SCHEMA,
        check: suite.name().to_string(),
        params: params.clone(),
        passed: suites.iter().all(|s| s.passed),
        suites,
    }
}

pub fn run_suite(suite: Suite, p: &VerifyParams) -> SuiteReport {
    let cfg = p.cfg();
    let checks = match suite {
        Suite::Algebra => vec![
            unit_table_check(),
            ring_axioms_check(p.samples.min(10_000), p.seed),
            conjugate_group_check(p.seed),
            conj_product_check(p.samples, p.seed),
            dynamics_oracle_check(p.samples.min(1000), p.seed),
        ],
        Suite::Idempotents => vec![idempotent_census(), biduplex_grid_census()],
        Suite::CharEquivalence => PrincipalSlice::CHARACTERIZED
            .iter()
            .map(|s| char_equivalence_check(*s, p.samples, p.seed, &cfg))
            .collect(),
        Suite::ClosedForms => vec![
            real_interval_check(&cfg),
            hyperbrot_grid_check(p.hyperbrot_grid, &cfg),
            voxel_closed_form_check(PrincipalSolid::Firebrot, p.voxel_grid, &cfg),
            voxel_closed_form_check(PrincipalSolid::Earthbrot, p.voxel_grid, &cfg),
            voxel_closed_form_check(PrincipalSolid::Airbrot, p.voxel_grid, &cfg),
        ],
        Suite::Polyhedra => vec![
            polytope_check(BuiltinSystem::Firebrot4),
            polytope_check(BuiltinSystem::Firebrot8),
            firebrot_fm_check(),
            polytope_check(BuiltinSystem::Airbrot),
            polytope_check(BuiltinSystem::Earthbrot),
        ],
        Suite::All => unreachable!("expanded by run"),
    };
    SuiteReport {
        name: suite.name().to_string(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

// ---- algebra --------------------------------------------------------------

pub fn unit_table_check() -> Check {
    let cases = [
        ("j1", "j2", "-j3"),
        ("i1", "i2", "j1"),
        ("j3", "j3", "1"),
        ("i4", "i4", "-1"),
        ("i1", "j3", "i4"),
    ];
    let mut bad = Vec::new();
    for (a, b, want) in cases {
        let got = parse_tc(a).unwrap() * parse_tc(b).unwrap();
        if got != parse_tc(want).unwrap() {
            bad.push(format!("{a}*{b} = {}", format_tc(&got)));
        }
    }
    let mut commutative = true;
    for a in BasisUnit::ALL {
        for b in BasisUnit::ALL {
            commutative &= Tricomplex::unit(a) * Tricomplex::unit(b)
                == Tricomplex::unit(b) * Tricomplex::unit(a);
        }
    }
    Check::new(
        "unit-table",
        bad.is_empty() && commutative,
        json!({ "mismatches": bad, "commutative": commutative }),
    )
}

pub fn ring_axioms_check(samples: usize, seed: u64) -> Check {
    let mut r = rng(seed, 1);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let (a, b, c) = (
            random_tc(&mut r, 2.0),
            random_tc(&mut r, 2.0),
            random_tc(&mut r, 2.0),
        );
        let scale = (1.0 + a.max_abs()) * (1.0 + b.max_abs()) * (1.0 + c.max_abs());
        let assoc = ((a * b) * c - a * (b * c)).max_abs();
        let comm = (a * b - b * a).max_abs();
        let dist = (a * (b + c) - (a * b + a * c)).max_abs();
        worst = worst.max(max_of([assoc, comm, dist]) / scale);
    }
    Check::new(
        "ring-axioms",
        worst <= 1e-12,
        json!({ "samples": samples, "max_relative_residual": worst, "tolerance": 1e-12 }),
    )
}

/// `‡k ∘ ‡k = id`, and the eight conjugations are closed under composition
/// with every non-identity element of order two (so the group is `Z2³`).
pub fn conjugate_group_check(seed: u64) -> Check {
    let mut r = rng(seed, 2);
    let eta = random_tc(&mut r, 2.0);
    let apply = |k: u8, x: Tricomplex| if k == 0 { x } else { x.conjugate(k).unwrap() };
    let images: Vec<Tricomplex> = (0..=7).map(|k| apply(k, eta)).collect();
    let distinct = (0..8).all(|a| (a + 1..8).all(|b| images[a] != images[b]));
    let involutive = (1..=7).all(|k| apply(k, apply(k, eta)) == eta);
    let mut table = vec![vec![0u8; 8]; 8];
    let mut closed = true;
    for a in 0..=7u8 {
        for b in 0..=7u8 {
            let img = apply(a, apply(b, eta));
            match images.iter().position(|x| *x == img) {
                Some(k) => table[a as usize][b as usize] = k as u8,
                None => closed = false,
            }
        }
    }
    let commutative = (0..8).all(|a| (0..8).all(|b| table[a][b] == table[b][a]));
    Check::new(
        "conjugate-group",
        distinct && involutive && closed && commutative,
        json!({
            "distinct_images": distinct,
            "involutive": involutive,
            "closed": closed,
            "commutative": commutative,
            "table": table,
        }),
    )
}

/// Positivity of `η ∏ η‡ᵏ` and accuracy of the conjugate-product inverse.
pub fn conj_product_check(samples: usize, seed: u64) -> Check {
    let mut r = rng(seed, 3);
    let etas: Vec<Tricomplex> = (0..samples).map(|_| random_tc(&mut r, 2.0)).collect();
    let rows: Vec<(f64, f64, Option<f64>)> = etas
        .par_iter()
        .map(|eta| {
            let full = eta.conj_product_full();
            let scale = 1.0 + eta.norm().powi(8);
            let imag = max_of(full.0[1..].iter().map(|x| x.abs())) / scale;
            let real = full.0[0] / scale;
            let inv_err = (full.0[0] > 1e-6).then(|| match eta.inverse() {
                Ok(inv) => (*eta * inv - Tricomplex::ONE).max_abs(),
                Err(_) => f64::INFINITY,
            });
            (imag, real, inv_err)
        })
        .collect();
    let max_imag = max_of(rows.iter().map(|r| r.0));
    let min_real = rows.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let inv_errs: Vec<f64> = rows.iter().filter_map(|r| r.2).collect();
    let max_inv = max_of(inv_errs.iter().copied());
    let passed = max_imag <= 1e-9 && min_real >= -1e-9 && max_inv <= 1e-8;
    Check::new(
        "conj-product",
        passed,
        json!({
            "samples": samples,
            "max_imag_relative": max_imag,
            "min_real_relative": min_real,
            "inverse_checked": inv_errs.len(),
            "max_inverse_error": max_inv,
            "tolerances": { "residual": 1e-9, "inverse": 1e-8 },
        }),
    )
}

/// Direct tricomplex orbit against the composed component orbits. Orbits
/// are cut at the last iterate below `1e100` so escaping points compare
/// finite values.
pub fn dynamics_oracle_check(samples: usize, seed: u64) -> Check {
    let mut r = rng(seed, 4);
    let mut worst = 0.0f64;
    let mut truncated = 0usize;
    for _ in 0..samples {
        let c = random_tc(&mut r, 2.0);
        let want = r.gen_range(0..=20usize);
        let mut n = 0;
        let mut eta = Tricomplex::ZERO;
        while n < want {
            let next = eta * eta + c;
            if !(next.max_abs() < 1e100) {
                truncated += 1;
                break;
            }
            eta = next;
            n += 1;
        }
        let direct = direct_orbit(&c, n);
        let via = idem4_compose(&component_orbits(&c, n));
        worst = worst.max((direct - via).max_abs() / (1.0 + direct.max_abs()));
    }
    Check::new(
        "dynamics-oracle",
        worst <= 1e-8,
        json!({
            "samples": samples,
            "max_relative_error": worst,
            "truncated_orbits": truncated,
            "tolerance": 1e-8,
        }),
    )
}

// ---- idempotents ----------------------------------------------------------

pub fn idempotent_census() -> Check {
    let list = idempotent_elements();
    let exact = list.iter().all(|e| *e * *e == *e);
    let distinct = (0..list.len()).all(|a| (a + 1..list.len()).all(|b| list[a] != list[b]));
    Check::new(
        "idempotent-census",
        list.len() == 16 && exact && distinct,
        json!({
            "count": list.len(),
            "exact_square": exact,
            "distinct": distinct,
            "elements": list.iter().map(format_tc).collect::<Vec<_>>(),
        }),
    )
}

/// Exhaustive search for `e² = e` among biduplex numbers whose coordinates
/// are multiples of ¼ in `[-1, 1]`.
pub fn biduplex_grid_census() -> Check {
    let units = [BasisUnit::One, BasisUnit::J1, BasisUnit::J2, BasisUnit::J3];
    let steps: Vec<f64> = (-4..=4).map(|k| k as f64 / 4.0).collect();
    let mut found = Vec::new();
    for &a in &steps {
        for &b in &steps {
            for &c in &steps {
                for &d in &steps {
                    let mut e = Tricomplex::ZERO;
                    for (u, x) in units.iter().zip([a, b, c, d]) {
                        e[*u] = x;
                    }
                    if e * e == e {
                        found.push(e);
                    }
                }
            }
        }
    }
    let known = idempotent_elements();
    let same = found.len() == known.len() && found.iter().all(|e| known.contains(e));
    Check::new(
        "biduplex-grid-census",
        found.len() == 16 && same,
        json!({ "grid_points": steps.len().pow(4), "count": found.len(), "matches_list": same }),
    )
}

// ---- characterizations ----------------------------------------------------

pub fn char_equivalence_check(
    slice: PrincipalSlice,
    samples: usize,
    seed: u64,
    cfg: &IterationConfig,
) -> Check {
    let mut r = rng(seed, 100 + slice as u64);
    let (lo, hi) = VoxelTarget::Principal(slice).default_bounds();
    let points: Vec<[f64; 3]> = (0..samples)
        .map(|_| std::array::from_fn(|k| r.gen_range(lo[k]..=hi[k])))
        .collect();
    let spec = slice.spec();
    let results: Vec<(bool, bool)> = points
        .par_iter()
        .map(|p| {
            let p = (*p).into();
            (
                char_membership(slice, p, cfg),
                slice_membership(&spec, p, cfg).bounded(),
            )
        })
        .collect();
    let mismatches = results.iter().filter(|(a, b)| a != b).count();
    let bounded = results.iter().filter(|(_, b)| *b).count();
    Check::new(
        format!("char-equivalence/{}", slice.name()),
        mismatches == 0,
        json!({
            "samples": samples,
            "bounded": bounded,
            "mismatches": mismatches,
            "box": { "min": lo, "max": hi },
        }),
    )
}

// ---- closed forms ---------------------------------------------------------

/// `M1 ∩ R = [-2, 1/4]` on 4501 points of `[-2.25, 0.5]`, ignoring two
/// sample steps around each endpoint.
pub fn real_interval_check(cfg: &IterationConfig) -> Check {
    let count = 4501usize;
    let (a, b) = (-2.25, 0.5);
    let step = (b - a) / (count - 1) as f64;
    let mut mismatches = Vec::new();
    let mut bounded = 0usize;
    for i in 0..count {
        let x = a + i as f64 * step;
        let inside = complex_escape(Complex::new(x, 0.0), cfg).bounded();
        bounded += inside as usize;
        if (x + 2.0).abs() <= 2.0 * step || (x - 0.25).abs() <= 2.0 * step {
            continue;
        }
        if inside != (-2.0..=0.25).contains(&x) {
            mismatches.push(x);
        }
    }
    Check::new(
        "real-interval",
        mismatches.is_empty(),
        json!({ "points": count, "bounded": bounded, "mismatches": mismatches }),
    )
}

pub fn hyperbrot_grid_check(res: usize, cfg: &IterationConfig) -> Check {
    let win = Window2::new(-2.5, 1.0, -1.5, 1.5, res, res).expect("valid window");
    let g = raster2d(Set2D::Hyperbrot, &win, cfg);
    let mut violations = 0usize;
    let mut extra = 0usize;
    for row in 0..res {
        for col in 0..res {
            let (u, v) = win.center(col, row);
            let closed = hyperbrot_closed(u, v);
            let bounded = g.get(col, row) == 0;
            violations += (closed && !bounded) as usize;
            extra += (!closed && bounded) as usize;
        }
    }
    let extra_fraction = extra as f64 / (res * res) as f64;
    Check::new(
        "hyperbrot-grid",
        violations == 0 && extra_fraction <= 0.01,
        json!({
            "grid": [res, res],
            "window": [-2.5, 1.0, -1.5, 1.5],
            "violations": violations,
            "extra": extra,
            "extra_fraction": extra_fraction,
        }),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrincipalSolid {
    Firebrot,
    Earthbrot,
    Airbrot,
}

impl PrincipalSolid {
    pub fn name(self) -> &'static str {
        match self {
            PrincipalSolid::Firebrot => "firebrot",
            PrincipalSolid::Earthbrot => "earthbrot",
            PrincipalSolid::Airbrot => "airbrot",
        }
    }

    pub fn target(self) -> VoxelTarget {
        match self {
            PrincipalSolid::Firebrot => VoxelTarget::Principal(PrincipalSlice::Firebrot),
            PrincipalSolid::Earthbrot => VoxelTarget::Spec(SliceSpec::earthbrot()),
            PrincipalSolid::Airbrot => VoxelTarget::Principal(PrincipalSlice::Airbrot),
        }
    }

    pub fn closed(self, p: [f64; 3]) -> bool {
        match self {
            PrincipalSolid::Firebrot => firebrot_closed(p[0], p[1], p[2]),
            PrincipalSolid::Earthbrot => earthbrot_closed(p[0], p[1], p[2]),
            PrincipalSolid::Airbrot => airbrot_closed(p[0], p[1], p[2]),
        }
    }
}

pub fn voxel_closed_form_check(solid: PrincipalSolid, n: usize, cfg: &IterationConfig) -> Check {
    let target = solid.target();
    let (lo, hi) = target.default_bounds();
    let b = Box3::new(lo, hi, n).expect("valid box");
    let vox = voxelize(&target, &b, cfg);
    let closed = sample_voxels(&b, |p| solid.closed(p));
    let mut escaped_inside = 0usize;
    let mut symdiff = 0usize;
    for (count, inside) in vox.counts.iter().zip(&closed) {
        let bounded = *count == 0;
        escaped_inside += (*inside && !bounded) as usize;
        symdiff += (*inside != bounded) as usize;
    }
    let fraction = symdiff as f64 / vox.counts.len() as f64;
    Check::new(
        format!("voxels/{}", solid.name()),
        escaped_inside == 0 && fraction <= 0.02,
        json!({
            "grid": n,
            "box": { "min": lo, "max": hi },
            "closed_inside": closed.iter().filter(|x| **x).count(),
            "bounded": vox.bounded_count(),
            "closed_inside_escaped": escaped_inside,
            "symmetric_difference": symdiff,
            "symmetric_difference_fraction": fraction,
        }),
    )
}

// ---- polyhedra ------------------------------------------------------------

pub fn expected_polytope(which: BuiltinSystem) -> (usize, usize, f64) {
    match which {
        BuiltinSystem::Firebrot4 | BuiltinSystem::Firebrot8 => {
            (4, 6, std::f64::consts::FRAC_1_SQRT_2)
        }
        BuiltinSystem::Airbrot => (6, 12, 1.125 * std::f64::consts::SQRT_2),
        BuiltinSystem::Earthbrot => (8, 12, 2.25),
    }
}

fn sorted(mut v: Vec<[f64; 3]>) -> Vec<[f64; 3]> {
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite vertices"));
    v
}

pub fn polytope_check(which: BuiltinSystem) -> Check {
    let (nv, ne, len) = expected_polytope(which);
    let sys = builtin_system(which);
    let report: PolytopeReport = match analyze(&sys) {
        Ok(r) => r,
        Err(e) => {
            return Check::new(
                format!("polytope/{}", which.name()),
                false,
                json!({ "error": e.to_string() }),
            )
        }
    };
    let deviation = report.max_edge_deviation(len);
    let mut passed = report.vertices.len() == nv && report.edges.len() == ne && deviation <= 1e-12;
    let mut metrics = json!({
        "rows": sys.rows.len(),
        "vertices": sorted(report.vertices.clone()),
        "edges": report.edges,
        "edge_lengths": report.edge_lengths,
        "edge_length": report.edge_lengths.first().copied(),
        "expected_edge_length": len,
        "max_edge_deviation": deviation,
        "regular": report.is_regular,
    });
    if which == BuiltinSystem::Firebrot8 {
        let four = enumerate_vertices(&builtin_system(BuiltinSystem::Firebrot4)).map(sorted);
        let same = four
            .as_ref()
            .map(|f| *f == sorted(report.vertices.clone()))
            .unwrap_or(false);
        metrics["same_as_firebrot4"] = json!(same);
        passed &= same;
    }
    Check::new(format!("polytope/{}", which.name()), passed, metrics)
}

/// Eliminating `c4` and `c7` from the Firebrot system leaves `|c6| ≤ 1/4`.
pub fn firebrot_fm_check() -> Check {
    let sys = builtin_system(BuiltinSystem::Firebrot8);
    let projected = fm_eliminate(&sys, 0).and_then(|s| fm_eliminate(&s, 2));
    match projected {
        Ok(s) => {
            let (lo, hi) = s.single_variable_bounds(1);
            let pure = s
                .rows
                .iter()
                .all(|r| r.normal[0] == 0.0 && r.normal[2] == 0.0);
            Check::new(
                "fourier-motzkin/firebrot",
                pure && lo == -0.25 && hi == 0.25,
                json!({
                    "rows": s.rows.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                    "c6_bounds": [lo, hi],
                }),
            )
        }
        Err(e) => Check::new(
            "fourier-motzkin/firebrot",
            false,
            json!({ "error": e.to_string() }),
        ),
    }
}
