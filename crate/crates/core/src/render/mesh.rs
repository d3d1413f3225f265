//! Cuberille surface extraction.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::VoxelGrid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Face {
    Tri([u32; 3]),
    Quad([u32; 4]),
}

impl Face {
    pub fn indices(&self) -> &[u32] {
        match self {
            Face::Tri(v) => v,
            Face::Quad(v) => v,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Mesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<Face>,
}

impl Mesh {
    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Every directed edge is matched by its reverse, so the surface is
    /// closed and consistently oriented.
    pub fn is_watertight(&self) -> bool {
        let mut balance: HashMap<(u32, u32), i64> = HashMap::new();
        for f in &self.faces {
            let idx = f.indices();
            for k in 0..idx.len() {
                let (a, b) = (idx[k], idx[(k + 1) % idx.len()]);
                let (key, d) = if a < b { ((a, b), 1) } else { ((b, a), -1) };
                *balance.entry(key).or_insert(0) += d;
            }
        }
        balance.values().all(|&v| v == 0)
    }

    /// Indices are in range and no face repeats a vertex.
    pub fn is_valid(&self) -> bool {
        let n = self.vertices.len() as u32;
        self.faces.iter().all(|f| {
            let idx = f.indices();
            idx.iter().all(|&i| i < n)
                && (0..idx.len()).all(|a| (a + 1..idx.len()).all(|b| idx[a] != idx[b]))
        })
    }

    pub fn farthest_vertex(&self) -> Option<[f64; 3]> {
        self.vertices
            .iter()
            .copied()
            .max_by(|a, b| norm2(a).total_cmp(&norm2(b)))
    }

    /// Split quads along their first diagonal.
    pub fn triangulated(&self) -> Mesh {
        let faces = self
            .faces
            .iter()
            .flat_map(|f| match *f {
                Face::Tri(t) => vec![Face::Tri(t)],
                Face::Quad([a, b, c, d]) => vec![Face::Tri([a, b, c]), Face::Tri([a, c, d])],
            })
            .collect();
        Mesh {
            vertices: self.vertices.clone(),
            faces,
        }
    }
}

fn norm2(p: &[f64; 3]) -> f64 {
    p[0] * p[0] + p[1] * p[1] + p[2] * p[2]
}

// Corner offsets of the face on side `+axis` (or `-axis`), counterclockwise
// seen from outside.
const FACES: [[[usize; 3]; 4]; 6] = [
    [[1, 0, 0], [1, 1, 0], [1, 1, 1], [1, 0, 1]], // +x
    [[0, 0, 0], [0, 0, 1], [0, 1, 1], [0, 1, 0]], // -x
    [[0, 1, 0], [0, 1, 1], [1, 1, 1], [1, 1, 0]], // +y
    [[0, 0, 0], [1, 0, 0], [1, 0, 1], [0, 0, 1]], // -y
    [[0, 0, 1], [1, 0, 1], [1, 1, 1], [0, 1, 1]], // +z
    [[0, 0, 0], [0, 1, 0], [1, 1, 0], [1, 0, 0]], // -z
];

const NEIGHBORS: [[isize; 3]; 6] = [
    [1, 0, 0],
    [-1, 0, 0],
    [0, 1, 0],
    [0, -1, 0],
    [0, 0, 1],
    [0, 0, -1],
];

/// Blocky boundary of the inside voxels: one quad per exposed voxel face.
/// Voxels outside the grid count as outside. Vertex order follows first use
/// in an x-fastest scan, so output is deterministic.
pub fn extract_surface(vox: &VoxelGrid, threshold: Option<u32>) -> Mesh {
    let n = vox.n;
    let bounds = vox.bounds();
    let inside = |i: isize, j: isize, k: isize| {
        let r = 0..n as isize;
        r.contains(&i)
            && r.contains(&j)
            && r.contains(&k)
            && vox.inside(i as usize, j as usize, k as usize, threshold)
    };

    let mut mesh = Mesh::default();
    let mut ids: HashMap<[usize; 3], u32> = HashMap::new();
    for k in 0..n {
        for j in 0..n {
            for i in 0..n {
                if !vox.inside(i, j, k, threshold) {
                    continue;
                }
                for (face, d) in FACES.iter().zip(NEIGHBORS) {
                    if inside(i as isize + d[0], j as isize + d[1], k as isize + d[2]) {
                        continue;
                    }
                    let quad = face.map(|o| {
                        let c = [i + o[0], j + o[1], k + o[2]];
                        *ids.entry(c).or_insert_with(|| {
                            mesh.vertices.push(bounds.corner(c[0], c[1], c[2]));
                            (mesh.vertices.len() - 1) as u32
                        })
                    });
                    mesh.faces.push(Face::Quad(quad));
                }
            }
        }
    }
    mesh
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::IterationConfig;
    use crate::render::{voxelize, Box3, Box3Key, VoxelTarget};
    use crate::slices::PrincipalSlice;

    fn grid(n: usize, counts: Vec<u32>) -> VoxelGrid {
        let b = Box3::cube(0.0, n as f64, n).unwrap();
        VoxelGrid {
            bounds: Box3Key::from(b),
            n,
            max_iter: 10,
            counts,
        }
    }

    #[test]
    fn single_voxel_is_a_cube() {
        let mut counts = vec![5; 27];
        counts[13] = 0;
        let m = extract_surface(&grid(3, counts), None);
        assert_eq!(m.vertices.len(), 8);
        assert_eq!(m.faces.len(), 6);
        assert!(m.is_watertight());
        assert!(m.is_valid());
        for v in &m.vertices {
            assert!(v.iter().all(|&x| x == 1.0 || x == 2.0));
        }
    }

    #[test]
    fn full_grid_gives_hull() {
        let n = 4;
        let m = extract_surface(&grid(n, vec![0; n * n * n]), None);
        assert_eq!(m.faces.len(), 6 * n * n);
        assert_eq!(m.vertices.len(), (n + 1).pow(3) - (n - 1).pow(3));
        assert!(m.is_watertight());
    }

    #[test]
    fn empty_grid_gives_empty_mesh() {
        let m = extract_surface(&grid(3, vec![1; 27]), None);
        assert!(m.is_empty());
        assert!(m.vertices.is_empty());
    }

    #[test]
    fn threshold_adds_late_escapers() {
        let mut counts = vec![1; 27];
        counts[13] = 0;
        counts[14] = 8;
        assert_eq!(
            extract_surface(&grid(3, counts.clone()), None).faces.len(),
            6
        );
        let m = extract_surface(&grid(3, counts), Some(8));
        assert_eq!(m.faces.len(), 10);
        assert!(m.is_watertight());
    }

    #[test]
    fn diagonal_voxels_stay_balanced() {
        let mut counts = vec![1; 8];
        counts[0] = 0;
        counts[7] = 0;
        let m = extract_surface(&grid(2, counts), None);
        assert_eq!(m.faces.len(), 12);
        assert_eq!(m.vertices.len(), 15);
        assert!(m.is_watertight());
    }

    #[test]
    fn quads_face_outward() {
        let mut counts = vec![5; 27];
        counts[13] = 0;
        let m = extract_surface(&grid(3, counts), None);
        for f in &m.faces {
            let q = f.indices();
            let p: Vec<[f64; 3]> = q.iter().map(|&i| m.vertices[i as usize]).collect();
            let a = [p[1][0] - p[0][0], p[1][1] - p[0][1], p[1][2] - p[0][2]];
            let b = [p[2][0] - p[0][0], p[2][1] - p[0][1], p[2][2] - p[0][2]];
            let nrm = [
                a[1] * b[2] - a[2] * b[1],
                a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0],
            ];
            let mid: Vec<f64> = (0..3)
                .map(|k| p.iter().map(|v| v[k]).sum::<f64>() / 4.0 - 1.5)
                .collect();
            let dot: f64 = (0..3).map(|k| nrm[k] * mid[k]).sum();
            assert!(dot > 0.0);
        }
    }

    #[test]
    fn triangulation_keeps_watertightness() {
        let mut counts = vec![1; 27];
        counts[13] = 0;
        counts[4] = 0;
        let m = extract_surface(&grid(3, counts), None).triangulated();
        assert!(m.faces.iter().all(|f| matches!(f, Face::Tri(_))));
        assert!(m.is_watertight());
    }

    #[test]
    fn firebrot_mesh_reaches_tetrahedron_vertices() {
        let n = 64;
        let b = Box3::cube(-0.75, 0.75, n).unwrap();
        let vox = voxelize(
            &VoxelTarget::Principal(PrincipalSlice::Firebrot),
            &b,
            &IterationConfig::default(),
        );
        let m = extract_surface(&vox, None);
        assert!(m.is_watertight());
        let far = m.farthest_vertex().unwrap();
        let pitch = b.pitch()[0];
        let r = 0.25 * 3f64.sqrt();
        let dist_to_vertex = |s: [f64; 3]| {
            let d: f64 = (0..3).map(|k| (far[k] - s[k]).powi(2)).sum();
            d.sqrt()
        };
        let best = [
            [0.25, 0.25, 0.25],
            [0.25, -0.25, -0.25],
            [-0.25, 0.25, -0.25],
            [-0.25, -0.25, 0.25],
            [-0.25, -0.25, -0.25],
            [-0.25, 0.25, 0.25],
            [0.25, -0.25, 0.25],
            [0.25, 0.25, -0.25],
        ]
        .into_iter()
        .map(dist_to_vertex)
        .fold(f64::INFINITY, f64::min);
        assert!(best <= 2.0 * pitch * 3f64.sqrt(), "far={far:?} best={best}");
        assert!((norm2(&far).sqrt() - r).abs() <= 2.0 * pitch * 3f64.sqrt());
    }
}
