//! Grid tessellation with per-vertex Gaussian curvature, plus OBJ and
//! ASCII PLY writers.
//!
//! Vertices are laid out ring by ring: ring `i` holds the samples at
//! `u_i`, and index `i * cols + j` is the `j`-th angle on that ring. With
//! `wrap_v` the last column is welded to the first, so an `nu × nv` grid
//! has `(nu + 1) · nv` vertices; otherwise `(nu + 1) · (nv + 1)`.
//!
//! On the coral axis `u = 0` every vertex of the first ring sits at the
//! origin. Those vertices carry the limit of `K_forms` along their own ray
//! and are flagged singular; the triangles they span with the next ring
//! include one zero-area triangle per quad.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::diffgeo::{coral_axis_limit, gaussian_curvature};
use crate::surface::{DomainPoint, SurfaceFamily, Vec3};
use crate::{Error, Result};

/// Colour of the most negative curvature; zero curvature maps to white.
pub const DEEP_BLUE: [f64; 3] = [0.0, 0.15, 0.55];
pub const WHITE: [f64; 3] = [1.0, 1.0, 1.0];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VertexAttr {
    pub k: f64,
    pub color: [f64; 3],
    pub singular: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Mesh {
    pub vertices: Vec<Vec3>,
    pub attrs: Vec<VertexAttr>,
    pub triangles: Vec<[u32; 3]>,
    pub wrap_v: bool,
    pub nu: usize,
    pub nv: usize,
    /// `u` of each ring, `nu + 1` entries.
    pub ring_u: Vec<f64>,
}

impl Mesh {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn columns(&self) -> usize {
        if self.wrap_v {
            self.nv
        } else {
            self.nv + 1
        }
    }

    pub fn singular_count(&self) -> usize {
        self.attrs.iter().filter(|a| a.singular).count()
    }

    pub fn k_range(&self) -> (f64, f64) {
        self.attrs
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), a| {
                (lo.min(a.k), hi.max(a.k))
            })
    }
}

/// Where `k` sits between zero (0) and `k_min` (1), clamped.
pub fn color_coordinate(k: f64, k_min: f64) -> f64 {
    if k_min >= 0.0 {
        return 0.0;
    }
    (k / k_min).clamp(0.0, 1.0)
}

/// Linear blend from white at `K = 0` to deep blue at `K = k_min`.
pub fn curvature_color(k: f64, k_min: f64) -> [f64; 3] {
    let t = color_coordinate(k, k_min);
    std::array::from_fn(|c| (1.0 - t) * WHITE[c] + t * DEEP_BLUE[c])
}

fn vertex_curvature(s: &SurfaceFamily, q: DomainPoint) -> (f64, bool) {
    match gaussian_curvature(s, q) {
        Ok(k) => (k, false),
        Err(_) if s.is_radial() => (coral_axis_limit(s.n(), q.v), true),
        Err(_) => (0.0, true),
    }
}

pub fn tessellate(
    s: &SurfaceFamily,
    u_range: (f64, f64),
    v_range: (f64, f64),
    nu: usize,
    nv: usize,
    wrap_v: bool,
) -> Result<Mesh> {
    if nu < 2 || nv < 2 {
        return Err(Error::invalid(format!(
            "tessellation needs nu >= 2 and nv >= 2, got {nu} x {nv}"
        )));
    }
    for (name, (lo, hi)) in [("u", u_range), ("v", v_range)] {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::invalid(format!("{name} range must be finite")));
        }
        if lo >= hi {
            return Err(Error::invalid(format!(
                "{name} range is empty or inverted: [{lo}, {hi}]"
            )));
        }
    }
    let cols = if wrap_v { nv } else { nv + 1 };
    let count = (nu + 1) * cols;
    if u32::try_from(count).is_err() {
        return Err(Error::invalid("mesh too large for 32-bit indices"));
    }

    let ring_u: Vec<f64> = (0..=nu)
        .map(|i| u_range.0 + (u_range.1 - u_range.0) * i as f64 / nu as f64)
        .collect();
    let mut vertices = Vec::with_capacity(count);
    let mut raw = Vec::with_capacity(count);
    for &u in &ring_u {
        for j in 0..cols {
            let v = v_range.0 + (v_range.1 - v_range.0) * j as f64 / nv as f64;
            let q = DomainPoint::new(u, v);
            vertices.push(s.position(q));
            raw.push(vertex_curvature(s, q));
        }
    }
    let k_min = raw.iter().map(|&(k, _)| k).fold(0.0, f64::min);
    let attrs = raw
        .into_iter()
        .map(|(k, singular)| VertexAttr {
            k,
            color: curvature_color(k, k_min),
            singular,
        })
        .collect();

    let idx = |i: usize, j: usize| (i * cols + j % cols) as u32;
    let mut triangles = Vec::with_capacity(2 * nu * nv);
    for i in 0..nu {
        for j in 0..nv {
            let (a, b, c, d) = (idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1));
            triangles.push([a, b, c]);
            triangles.push([a, c, d]);
        }
    }

    Ok(Mesh {
        vertices,
        attrs,
        triangles,
        wrap_v,
        nu,
        nv,
        ring_u,
    })
}

fn to_byte(c: f64) -> u8 {
    (c.clamp(0.0, 1.0) * 255.0).round() as u8
}

/// OBJ with the `v x y z r g b` vertex-colour extension and 1-based faces.
pub fn write_obj_to<W: Write>(mesh: &Mesh, mut w: W) -> std::io::Result<()> {
    writeln!(w, "# knitcoral mesh")?;
    writeln!(
        w,
        "# {} vertices, {} triangles",
        mesh.vertex_count(),
        mesh.triangle_count()
    )?;
    if mesh.singular_count() > 0 {
        writeln!(
            w,
            "# {} singular vertices on the axis carry limiting curvature",
            mesh.singular_count()
        )?;
    }
    for (p, a) in mesh.vertices.iter().zip(&mesh.attrs) {
        writeln!(
            w,
            "v {} {} {} {:.6} {:.6} {:.6}",
            p.x, p.y, p.z, a.color[0], a.color[1], a.color[2]
        )?;
    }
    for t in &mesh.triangles {
        writeln!(w, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1)?;
    }
    w.flush()
}

/// ASCII PLY with `uchar` colours and the curvature in a `quality` float.
pub fn write_ply_to<W: Write>(mesh: &Mesh, mut w: W) -> std::io::Result<()> {
    writeln!(w, "ply")?;
    writeln!(w, "format ascii 1.0")?;
    writeln!(w, "comment knitcoral mesh, quality = Gaussian curvature")?;
    if mesh.singular_count() > 0 {
        writeln!(
            w,
            "comment singular: {} vertices on the axis carry limiting curvature",
            mesh.singular_count()
        )?;
    }
    writeln!(w, "element vertex {}", mesh.vertex_count())?;
    for prop in [
        "float x",
        "float y",
        "float z",
        "uchar red",
        "uchar green",
        "uchar blue",
        "float quality",
    ] {
        writeln!(w, "property {prop}")?;
    }
    writeln!(w, "element face {}", mesh.triangle_count())?;
    writeln!(w, "property list uchar int vertex_indices")?;
    writeln!(w, "end_header")?;
    for (p, a) in mesh.vertices.iter().zip(&mesh.attrs) {
        writeln!(
            w,
            "{} {} {} {} {} {} {}",
            p.x as f32,
            p.y as f32,
            p.z as f32,
            to_byte(a.color[0]),
            to_byte(a.color[1]),
            to_byte(a.color[2]),
            a.k as f32
        )?;
    }
    for t in &mesh.triangles {
        writeln!(w, "3 {} {} {}", t[0], t[1], t[2])?;
    }
    w.flush()
}

fn write_file(
    path: &Path,
    mesh: &Mesh,
    f: impl FnOnce(&Mesh, BufWriter<File>) -> std::io::Result<()>,
) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    f(mesh, BufWriter::new(file)).map_err(|e| Error::io(path, e))
}

pub fn write_obj(mesh: &Mesh, path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), mesh, write_obj_to)
}

pub fn write_ply(mesh: &Mesh, path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), mesh, write_ply_to)
}

/// Declared `(vertices, faces)` from a PLY header.
pub fn read_ply_counts(text: &str) -> Result<(usize, usize)> {
    let (mut verts, mut faces) = (None, None);
    for line in text.lines() {
        let line = line.trim();
        if line == "end_header" {
            break;
        }
        let mut parts = line.split_whitespace();
        if parts.next() == Some("element") {
            let name = parts.next();
            let n = parts
                .next()
                .and_then(|c| c.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad element line '{line}'")))?;
            match name {
                Some("vertex") => verts = Some(n),
                Some("face") => faces = Some(n),
                _ => {}
            }
        }
    }
    match (verts, faces) {
        (Some(v), Some(f)) => Ok((v, f)),
        _ => Err(Error::Parse(
            "PLY header lacks vertex or face element".into(),
        )),
    }
}

/// `(v lines, f lines)` in an OBJ document.
pub fn read_obj_counts(text: &str) -> (usize, usize) {
    text.lines().fold((0, 0), |(v, f), line| {
        if line.starts_with("v ") {
            (v + 1, f)
        } else if line.starts_with("f ") {
            (v, f + 1)
        } else {
            (v, f)
        }
    })
}
