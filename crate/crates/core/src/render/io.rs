//! PGM, OBJ and raw voxel writers. All output is assembled in memory and
//! written in one call.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{Face, Grid2D, Mesh, RenderError, VoxelGrid};

/// Gray level of one cell: black when bounded, otherwise 55..=255.
pub fn pgm_level(count: u32, max_iter: u32) -> u8 {
    if count == 0 {
        return 0;
    }
    let t = count as f64 / max_iter.max(1) as f64;
    (55.0 + 200.0 * t).round().clamp(0.0, 255.0) as u8
}

pub fn pgm_bytes(g: &Grid2D) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", g.width, g.height).into_bytes();
    out.extend(g.cells.iter().map(|&c| pgm_level(c, g.max_iter)));
    out
}

pub fn write_pgm(g: &Grid2D, path: &Path) -> Result<(), RenderError> {
    fs::write(path, pgm_bytes(g))?;
    Ok(())
}

// 9 significant digits, trailing zeros dropped.
fn fmt_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() {
            "0".into()
        } else {
            x.to_string()
        };
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (8 - mag).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

/// OBJ text with one `o` object per named layer. Face indices are global
/// and 1-based, as the format requires.
pub fn obj_string(header: &[String], layers: &[(String, Mesh)]) -> String {
    let mut s = String::new();
    for line in header {
        let _ = writeln!(s, "# {line}");
    }
    let mut base = 1usize;
    for (name, mesh) in layers {
        if layers.len() > 1 || !name.is_empty() {
            let _ = writeln!(s, "o {name}");
        }
        for v in &mesh.vertices {
            let _ = writeln!(s, "v {} {} {}", fmt_sig(v[0]), fmt_sig(v[1]), fmt_sig(v[2]));
        }
        for f in &mesh.faces {
            s.push('f');
            for &i in f.indices() {
                let _ = write!(s, " {}", i as usize + base);
            }
            s.push('\n');
        }
        base += mesh.vertices.len();
    }
    s
}

pub fn write_obj(mesh: &Mesh, header: &[String], path: &Path) -> Result<(), RenderError> {
    fs::write(path, obj_string(header, &[(String::new(), mesh.clone())]))?;
    Ok(())
}

pub fn write_obj_layers(
    layers: &[(String, Mesh)],
    header: &[String],
    path: &Path,
) -> Result<(), RenderError> {
    fs::write(path, obj_string(header, layers))?;
    Ok(())
}

/// Parse the `v` and `f` lines of an OBJ file into a single mesh.
pub fn read_obj(text: &str) -> Result<Mesh, String> {
    let mut mesh = Mesh::default();
    for (lineno, line) in text.lines().enumerate() {
        let mut parts = line.split_whitespace();
        let bad = || format!("line {}: malformed `{line}`", lineno + 1);
        match parts.next() {
            Some("v") => {
                let xs: Vec<f64> = parts
                    .map(|p| p.parse::<f64>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| bad())?;
                if xs.len() != 3 {
                    return Err(bad());
                }
                mesh.vertices.push([xs[0], xs[1], xs[2]]);
            }
            Some("f") => {
                let idx: Vec<u32> = parts
                    .map(|p| p.split('/').next().unwrap_or("").parse::<u32>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| bad())?;
                if idx.contains(&0) {
                    return Err(bad());
                }
                let idx: Vec<u32> = idx.into_iter().map(|i| i - 1).collect();
                mesh.faces.push(match idx.len() {
                    3 => Face::Tri([idx[0], idx[1], idx[2]]),
                    4 => Face::Quad([idx[0], idx[1], idx[2], idx[3]]),
                    _ => return Err(bad()),
                });
            }
            _ => {}
        }
    }
    Ok(mesh)
}

/// Raw dump: `TBVX`, u32 n, u32 max_iter, u32 reserved, then n³ u16 counts.
pub fn tbvx_bytes(vox: &VoxelGrid) -> Result<Vec<u8>, RenderError> {
    if vox.max_iter > u16::MAX as u32 {
        return Err(RenderError::CountOverflow(vox.max_iter));
    }
    let mut out = Vec::with_capacity(16 + 2 * vox.counts.len());
    out.extend_from_slice(b"TBVX");
    out.extend_from_slice(&(vox.n as u32).to_le_bytes());
    out.extend_from_slice(&vox.max_iter.to_le_bytes());
    out.extend_from_slice(&0u32.to_le_bytes());
    for &c in &vox.counts {
        out.extend_from_slice(&(c as u16).to_le_bytes());
    }
    Ok(out)
}

pub fn write_tbvx(vox: &VoxelGrid, path: &Path) -> Result<(), RenderError> {
    fs::write(path, tbvx_bytes(vox)?)?;
    Ok(())
}
