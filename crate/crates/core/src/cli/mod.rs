//! The `tribrot` command-line front end.
//!
//! Exit codes: 0 success, 1 runtime failure (I/O, failed check, zero
//! divisor), 2 usage error.

pub mod verify;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::dynamics::IterationConfig;
use crate::multicomplex::{format_tc, idem4_decompose, parse_tc, Complex, Tricomplex};
use crate::render::{
    extract_surface, raster2d, voxelize, write_obj_layers, write_pgm, write_tbvx, Box3, Set2D,
    VoxelTarget, Window2,
};
use crate::slices::{PrincipalSlice, SliceSpec};

use verify::{Suite, VerifyParams};

#[derive(Debug, Parser)]
#[command(
    name = "tribrot",
    version,
    about = "Tricomplex Mandelbrot slices: rendering, verification and algebra"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rasterize a planar set to a PGM image.
    Render2d(Render2dArgs),
    /// Voxelize a 3D slice and write an OBJ mesh or a raw TBVX grid.
    Render3d(Render3dArgs),
    /// Run invariant checks and write a JSON report.
    Verify(VerifyArgs),
    /// Tricomplex arithmetic.
    Algebra {
        #[command(subcommand)]
        op: AlgebraOp,
    },
}

#[derive(Debug, Args)]
pub struct Render2dArgs {
    #[arg(long, value_parser = parse_set)]
    pub set: Set2D,
    /// umin,umax,vmin,vmax
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    pub window: Option<[f64; 4]>,
    /// WxH
    #[arg(long, value_parser = parse_res, default_value = "256x256")]
    pub res: (usize, usize),
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_iter: u32,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SliceArg {
    Principal(PrincipalSlice),
    Starbrot,
    Earthbrot,
}

#[derive(Debug, Args)]
pub struct Render3dArgs {
    /// One of the eight principal slices, starbrot or earthbrot.
    #[arg(long, value_parser = parse_slice, conflicts_with = "units", required_unless_present = "units")]
    pub slice: Option<SliceArg>,
    /// Three distinct units, e.g. j1,j2,j3 or p1,p2,p3.
    #[arg(long, value_parser = parse_units)]
    pub units: Option<SliceSpec>,
    /// lo,hi for a cube or x0,x1,y0,y1,z0,z1.
    #[arg(long = "box", value_parser = parse_box, allow_hyphen_values = true)]
    pub bounds: Option<([f64; 3], [f64; 3])>,
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u32).range(2..=1024))]
    pub res: u32,
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_iter: u32,
    /// Divergence thresholds; one mesh object per value.
    #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u32).range(1..))]
    pub layers: Vec<u32>,
    /// Output file, `.obj` mesh or `.tbvx` raw grid.
    #[arg(long, value_parser = parse_out3d)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all", value_parser = parse_suite)]
    pub check: Suite,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_iter: u32,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum AlgebraOp {
    /// Product of two tricomplex numbers.
    Mul {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Inverse via the seven conjugates.
    Inverse {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Conjugate number k (1..=7).
    Conj {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(value_parser = clap::value_parser!(u8).range(1..=7))]
        k: u8,
    },
    /// The four idempotent components.
    Decompose {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
}

fn parse_set(s: &str) -> Result<Set2D, String> {
    s.parse()
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

fn parse_floats(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|x| {
            let v: f64 = x
                .trim()
                .parse()
                .map_err(|_| format!("`{x}` is not a number"))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(format!("`{x}` is not finite"))
            }
        })
        .collect()
}

fn parse_window(s: &str) -> Result<[f64; 4], String> {
    let v = parse_floats(s)?;
    let w: [f64; 4] = v
        .try_into()
        .map_err(|_| "expected umin,umax,vmin,vmax".to_string())?;
    if w[0] < w[1] && w[2] < w[3] {
        Ok(w)
    } else {
        Err("window minimum must be below maximum".into())
    }
}

fn parse_res(s: &str) -> Result<(usize, usize), String> {
    let (w, h) = s.split_once(['x', 'X']).ok_or("expected WxH")?;
    let w: usize = w.parse().map_err(|_| "bad width")?;
    let h: usize = h.parse().map_err(|_| "bad height")?;
    if w == 0 || h == 0 || w > 1 << 15 || h > 1 << 15 {
        return Err("resolution must be between 1 and 32768".into());
    }
    Ok((w, h))
}

fn parse_slice(s: &str) -> Result<SliceArg, String> {
    match s.to_ascii_lowercase().as_str() {
        "starbrot" => Ok(SliceArg::Starbrot),
        "earthbrot" => Ok(SliceArg::Earthbrot),
        other => other
            .parse()
            .map(SliceArg::Principal)
            .map_err(|e: crate::slices::SliceError| e.to_string()),
    }
}

fn parse_units(s: &str) -> Result<SliceSpec, String> {
    SliceSpec::parse_units(s).map_err(|e| e.to_string())
}

fn parse_box(s: &str) -> Result<([f64; 3], [f64; 3]), String> {
    let v = parse_floats(s)?;
    let (lo, hi) = match v.len() {
        2 => ([v[0]; 3], [v[1]; 3]),
        6 => ([v[0], v[2], v[4]], [v[1], v[3], v[5]]),
        _ => return Err("expected lo,hi or x0,x1,y0,y1,z0,z1".into()),
    };
    if (0..3).all(|k| lo[k] < hi[k]) {
        Ok((lo, hi))
    } else {
        Err("box minimum must be below maximum on every axis".into())
    }
}

fn parse_out3d(s: &str) -> Result<PathBuf, String> {
    match Path::new(s).extension().and_then(|e| e.to_str()) {
        Some("obj") | Some("tbvx") => Ok(PathBuf::from(s)),
        _ => Err("output must end in .obj or .tbvx".into()),
    }
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Runtime(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Runtime(_) => 1,
        }
    }
}

fn runtime<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Runtime(e.to_string())
}

/// Size the global rayon pool from `TRIBROT_THREADS` (unset or 0 = auto).
pub fn init_threads() -> Result<(), Failure> {
    let n = match std::env::var("TRIBROT_THREADS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| Failure::Usage(format!("TRIBROT_THREADS must be a number, got `{v}`")))?,
        Err(_) => 0,
    };
    // Fails only if a pool already exists, which is harmless.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}

/// Entry point for the binary; returns the process exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let mut stdout = std::io::stdout().lock();
    match init_threads().and_then(|_| run(cli, &mut stdout)) {
        Ok(code) => code,
        Err(f) => {
            match &f {
                Failure::Usage(m) => eprintln!("error: {m}"),
                Failure::Runtime(m) => eprintln!("error: {m}"),
            }
            f.exit_code()
        }
    }
}

/// Run a parsed command, writing user output to `out`. `Ok` carries the exit
/// code for commands that finish but report failure.
pub fn run(cli: Cli, out: &mut dyn std::io::Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Render2d(a) => render2d(a).map(|_| 0),
        Command::Render3d(a) => render3d(a).map(|_| 0),
        Command::Verify(a) => verify_cmd(a, out),
        Command::Algebra { op } => algebra(op, out).map(|_| 0),
    }
}

fn default_window(set: Set2D) -> [f64; 4] {
    match set {
        Set2D::Mandelbrot | Set2D::Hyperbrot => [-2.5, 1.0, -1.5, 1.5],
        Set2D::SetA => [-1.5, 1.5, -1.5, 1.5],
    }
}

fn render2d(a: Render2dArgs) -> Result<(), Failure> {
    let [umin, umax, vmin, vmax] = a.window.unwrap_or_else(|| default_window(a.set));
    let win = Window2::new(umin, umax, vmin, vmax, a.res.0, a.res.1)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let grid = raster2d(a.set, &win, &IterationConfig::with_max_iter(a.max_iter));
    write_pgm(&grid, &a.out).map_err(runtime)
}

fn render3d(a: Render3dArgs) -> Result<(), Failure> {
    let (target, label) = match (a.slice, a.units) {
        (Some(SliceArg::Principal(s)), _) => (VoxelTarget::Principal(s), s.name().to_string()),
        (Some(SliceArg::Starbrot), _) => (VoxelTarget::Starbrot, "starbrot".to_string()),
        (Some(SliceArg::Earthbrot), _) => (
            VoxelTarget::Spec(SliceSpec::earthbrot()),
            "earthbrot".to_string(),
        ),
        (None, Some(spec)) => (VoxelTarget::Spec(spec), spec.unit_names().join(",")),
        (None, None) => {
            return Err(Failure::Usage(
                "one of --slice or --units is required".into(),
            ))
        }
    };
    let raw = a.out.extension().and_then(|e| e.to_str()) == Some("tbvx");
    if raw && a.max_iter > u32::from(u16::MAX) {
        return Err(Failure::Usage(
            "--max-iter above 65535 does not fit a .tbvx file".into(),
        ));
    }
    let (lo, hi) = a.bounds.unwrap_or_else(|| target.default_bounds());
    let b = Box3::new(lo, hi, a.res as usize).map_err(|e| Failure::Usage(e.to_string()))?;
    let cfg = IterationConfig::with_max_iter(a.max_iter);
    let vox = voxelize(&target, &b, &cfg);

    if raw {
        return write_tbvx(&vox, &a.out).map_err(runtime);
    }
    let layers: Vec<(String, _)> = if a.layers.is_empty() {
        vec![("bounded".to_string(), extract_surface(&vox, None))]
    } else {
        a.layers
            .iter()
            .map(|&t| (format!("layer_{t}"), extract_surface(&vox, Some(t))))
            .collect()
    };
    let header = vec![
        "tribrot render3d".to_string(),
        format!("slice {label}"),
        format!("box {:?} {:?}", lo, hi),
        format!("res {} max_iter {}", a.res, a.max_iter),
    ];
    write_obj_layers(&layers, &header, &a.out).map_err(runtime)
}

fn verify_cmd(a: VerifyArgs, out: &mut dyn std::io::Write) -> Result<i32, Failure> {
    let params = VerifyParams::new(a.samples, a.seed, a.max_iter);
    let report = verify::run(a.check, &params);
    for suite in &report.suites {
        for c in &suite.checks {
            writeln!(out, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name)
                .map_err(runtime)?;
        }
    }
    if let Some(path) = &a.report {
        let mut text = serde_json::to_string_pretty(&report).map_err(runtime)?;
        text.push('\n');
        std::fs::write(path, text).map_err(runtime)?;
    }
    Ok(if report.passed { 0 } else { 1 })
}

fn parse_operand(s: &str) -> Result<Tricomplex, Failure> {
    parse_tc(s).map_err(|e| Failure::Usage(format!("cannot parse `{s}`: {e}")))
}

fn format_complex(z: Complex) -> String {
    format_tc(&Tricomplex::from_complex(z))
}

fn algebra(op: AlgebraOp, out: &mut dyn std::io::Write) -> Result<(), Failure> {
    let text = match op {
        AlgebraOp::Mul { a, b } => format_tc(&(parse_operand(&a)? * parse_operand(&b)?)),
        AlgebraOp::Inverse { a } => format_tc(&parse_operand(&a)?.inverse().map_err(runtime)?),
        AlgebraOp::Conj { a, k } => format_tc(&parse_operand(&a)?.conjugate(k).map_err(runtime)?),
        AlgebraOp::Decompose { a } => {
            let e = idem4_decompose(&parse_operand(&a)?);
            e.components()
                .iter()
                .enumerate()
                .map(|(k, z)| format!("e{}: {}", k + 1, format_complex(*z)))
                .collect::<Vec<_>>()
                .join("\n")
        }
    };
    writeln!(out, "{text}").map_err(runtime)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (Result<i32, Failure>, String) {
        let cli =
            Cli::try_parse_from(std::iter::once("tribrot").chain(args.iter().copied())).unwrap();
        let mut buf = Vec::new();
        let r = run(cli, &mut buf);
        (r, String::from_utf8(buf).unwrap())
    }

    fn parse_code(args: &[&str]) -> i32 {
        match Cli::try_parse_from(std::iter::once("tribrot").chain(args.iter().copied())) {
            Ok(_) => 0,
            Err(e) => e.exit_code(),
        }
    }

    #[test]
    fn algebra_outputs() {
        assert_eq!(run_args(&["algebra", "inverse", "2"]).1, "0.5\n");
        assert_eq!(run_args(&["algebra", "mul", "j1", "j2"]).1, "-j3\n");
        assert_eq!(run_args(&["algebra", "conj", "i2", "3"]).1, "-i2\n");
        let (r, _) = run_args(&["algebra", "inverse", "0.5 + 0.5j3"]);
        match r {
            Err(Failure::Runtime(m)) => assert!(m.contains("zero divisor")),
            other => panic!("{other:?}"),
        }
        let (r, _) = run_args(&["algebra", "mul", "2k1", "1"]);
        assert_eq!(r.unwrap_err().exit_code(), 2);
        let d = run_args(&["algebra", "decompose", "1 + j3"]).1;
        assert_eq!(d.lines().count(), 4);
        assert!(d.starts_with("e1: 2\n"));
    }

    #[test]
    fn negative_operands_accepted() {
        assert_eq!(run_args(&["algebra", "mul", "-i1", "i1"]).1, "1\n");
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(parse_code(&["render2d", "--set", "mandelbrot"]), 2);
        assert_eq!(
            parse_code(&["render3d", "--units", "j1,j1,j2", "--out", "x.obj"]),
            2
        );
        assert_eq!(
            parse_code(&["render3d", "--slice", "firebrot", "--out", "x.png"]),
            2
        );
        assert_eq!(
            parse_code(&["render3d", "--slice", "firebrot", "--box", "1,0", "--out", "x.obj"]),
            2
        );
        assert_eq!(
            parse_code(&["render3d", "--slice", "nope", "--out", "x.obj"]),
            2
        );
        assert_eq!(parse_code(&["algebra", "conj", "1", "8"]), 2);
        assert_eq!(parse_code(&["verify", "--check", "bogus"]), 2);
        assert_eq!(
            parse_code(&[
                "render3d",
                "--slice",
                "firebrot",
                "--box",
                "-0.75,0.75",
                "--out",
                "x.obj"
            ]),
            0
        );
        assert_eq!(
            parse_code(&["render3d", "--units", "p1,p2,p3", "--out", "x.tbvx"]),
            0
        );
    }

    #[test]
    fn box_forms() {
        assert_eq!(parse_box("-1,1").unwrap(), ([-1.0; 3], [1.0; 3]));
        assert_eq!(
            parse_box("0,1,2,3,4,5").unwrap(),
            ([0.0, 2.0, 4.0], [1.0, 3.0, 5.0])
        );
        assert!(parse_box("0,1,2").is_err());
        assert!(parse_res("0x3").is_err());
        assert_eq!(parse_res("512x256").unwrap(), (512, 256));
    }

    #[test]
    fn render_commands_write_files() {
        let dir = tempfile::tempdir().unwrap();
        let pgm = dir.path().join("a.pgm");
        let (r, _) = run_args(&[
            "render2d",
            "--set",
            "setA",
            "--res",
            "16x8",
            "--out",
            pgm.to_str().unwrap(),
        ]);
        assert_eq!(r.unwrap(), 0);
        let bytes = std::fs::read(&pgm).unwrap();
        assert!(bytes.starts_with(b"P5\n16 8\n255\n"));
        assert_eq!(bytes.len(), 12 + 128);

        let obj = dir.path().join("s.obj");
        let (r, _) = run_args(&[
            "render3d",
            "--slice",
            "starbrot",
            "--res",
            "12",
            "--max-iter",
            "200",
            "--layers",
            "5,50",
            "--out",
            obj.to_str().unwrap(),
        ]);
        assert_eq!(r.unwrap(), 0);
        let text = std::fs::read_to_string(&obj).unwrap();
        assert_eq!(text.lines().filter(|l| l.starts_with("o ")).count(), 2);

        let raw = dir.path().join("e.tbvx");
        let (r, _) = run_args(&[
            "render3d",
            "--slice",
            "earthbrot",
            "--res",
            "4",
            "--out",
            raw.to_str().unwrap(),
        ]);
        assert_eq!(r.unwrap(), 0);
        assert_eq!(std::fs::read(&raw).unwrap().len(), 16 + 2 * 64);
    }

    #[test]
    fn io_failure_is_runtime() {
        let (r, _) = run_args(&[
            "render2d",
            "--set",
            "mandelbrot",
            "--res",
            "2x2",
            "--out",
            "/nonexistent/dir/x.pgm",
        ]);
        assert_eq!(r.unwrap_err().exit_code(), 1);
    }
}
