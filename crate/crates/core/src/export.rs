//! Plain-text exports: sample grids as CSV, meshes as OBJ, a_k tables as CSV.
//!
//! Floats are written with Rust's shortest round-trip formatting so that
//! files parse back to the same binary64 values; NaN marks undefined entries.

use std::io::{self, Write};

use rayon::prelude::*;

use crate::approx::AkTable;
use crate::curves::BjorlingPatch;
use crate::geometry::{classify_point, CausalSample, GraphSurface, SampleBox};

fn num(x: f64) -> String {
    format!("{x:?}")
}

fn csv_err(e: csv::Error) -> io::Error {
    io::Error::other(e)
}

/// Columns `x, y, f, B, A, H, K, tag`.
pub fn write_grid_csv<W: Write>(w: W, samples: &[CausalSample]) -> io::Result<()> {
    let rows: Vec<GridRow> = samples.iter().map(|s| (s.x, s.y, Some(*s))).collect();
    write_grid_rows_csv(w, &rows)
}

/// A grid node and its sample, `None` where the surface could not be evaluated.
pub type GridRow = (f64, f64, Option<CausalSample>);

/// Sample every node of the box in parallel, keeping failures as `None`.
pub fn sample_rows(f: &GraphSurface, grid: &SampleBox) -> Vec<GridRow> {
    grid.points()
        .into_par_iter()
        .map(|(x, y)| (x, y, classify_point(f, x, y).ok()))
        .collect()
}

/// Like [`write_grid_csv`]; failed nodes get NaN fields and tag `undefined`.
pub fn write_grid_rows_csv<W: Write>(w: W, rows: &[GridRow]) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["x", "y", "f", "B", "A", "H", "K", "tag"]).map_err(csv_err)?;
    for &(x, y, s) in rows {
        let rec = match s {
            Some(s) => [
                num(x),
                num(y),
                num(s.f),
                num(s.b),
                num(s.a),
                num(s.h.unwrap_or(f64::NAN)),
                num(s.k.unwrap_or(f64::NAN)),
                s.tag.as_str().to_string(),
            ],
            None => {
                let nan = num(f64::NAN);
                [num(x), num(y), nan.clone(), nan.clone(), nan.clone(), nan.clone(), nan, "undefined".into()]
            }
        };
        out.write_record(rec).map_err(csv_err)?;
    }
    out.flush()
}

/// Vertices in row-major order and quad faces between neighbours.
/// Faces touching a non-finite vertex are skipped; the vertex itself stays so
/// that indices line up with the flag CSV.
pub fn write_obj<W: Write>(mut w: W, nx: usize, ny: usize, vertices: &[[f64; 3]]) -> io::Result<()> {
    assert_eq!(vertices.len(), nx * ny, "vertex count must be nx * ny");
    writeln!(w, "# {nx} x {ny} grid, coordinates (t, x, y)")?;
    for v in vertices {
        writeln!(w, "v {} {} {}", num(v[0]), num(v[1]), num(v[2]))?;
    }
    let finite = |i: usize| vertices[i].iter().all(|c| c.is_finite());
    for j in 0..ny.saturating_sub(1) {
        for i in 0..nx.saturating_sub(1) {
            let a = j * nx + i;
            let quad = [a, a + 1, a + nx + 1, a + nx];
            if quad.iter().all(|&q| finite(q)) {
                writeln!(w, "f {} {} {} {}", quad[0] + 1, quad[1] + 1, quad[2] + 1, quad[3] + 1)?;
            }
        }
    }
    w.flush()
}

/// Graph samples `(f, x, y)` as a mesh.
pub fn grid_vertices(rows: &[GridRow]) -> Vec<[f64; 3]> {
    rows.iter().map(|&(x, y, s)| [s.map_or(f64::NAN, |s| s.f), x, y]).collect()
}

/// Per-vertex companion of [`write_obj`] for a graph grid.
pub fn write_grid_flags_csv<W: Write>(w: W, rows: &[GridRow]) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["vertex", "x", "y", "B", "tag"]).map_err(csv_err)?;
    for (i, &(x, y, s)) in rows.iter().enumerate() {
        let (b, tag) = s.map_or((f64::NAN, "undefined"), |s| (s.b, s.tag.as_str()));
        out.write_record([(i + 1).to_string(), num(x), num(y), num(b), tag.to_string()]).map_err(csv_err)?;
    }
    out.flush()
}

pub fn write_bjorling_obj<W: Write>(w: W, patch: &BjorlingPatch) -> io::Result<()> {
    let v: Vec<[f64; 3]> = patch.samples.iter().map(|s| s.point).collect();
    write_obj(w, patch.nu, patch.nv, &v)
}

/// Columns `vertex, u, v, metric_det, imag_residual, tag, flag`.
pub fn write_bjorling_csv<W: Write>(w: W, patch: &BjorlingPatch) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["vertex", "u", "v", "metric_det", "imag_residual", "tag", "flag"]).map_err(csv_err)?;
    for (i, s) in patch.samples.iter().enumerate() {
        let flag = serde_json::to_value(s.flag).map_err(io::Error::other)?;
        out.write_record([
            (i + 1).to_string(),
            num(s.u),
            num(s.v),
            num(s.metric_det),
            num(s.imag_residual),
            s.tag.as_str().to_string(),
            flag.as_str().unwrap_or_default().to_string(),
        ])
        .map_err(csv_err)?;
    }
    out.flush()
}

/// Columns `y, a, da, dda` of one a_k table.
pub fn write_ak_csv<W: Write>(w: W, table: &AkTable) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["y", "a", "da", "dda"]).map_err(csv_err)?;
    for i in 0..table.y.len() {
        out.write_record([num(table.y[i]), num(table.value[i]), num(table.d1[i]), num(table.d2[i])])
            .map_err(csv_err)?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{classify_grid, ClosedForm};

    #[test]
    fn grid_csv_round_trips_floats() {
        let f = GraphSurface::from_fn(ClosedForm::new("p", |x, y| Ok(y + &(&(x * x) * 0.5))));
        let s = classify_grid(&f, &SampleBox::symmetric(0.3, 3)).unwrap();
        let mut buf = Vec::new();
        write_grid_csv(&mut buf, &s).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("x,y,f,B,A,H,K,tag"));
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(first[0].parse::<f64>().unwrap(), s[0].x);
        assert_eq!(first[2].parse::<f64>().unwrap(), s[0].f);
        assert_eq!(first[7], "timelike");
        // center is light-like, curvatures undefined
        let center: Vec<&str> = text.lines().nth(5).unwrap().split(',').collect();
        assert_eq!((center[5], center[6], center[7]), ("NaN", "NaN", "lightlike"));
    }

    #[test]
    fn obj_faces_skip_missing_vertices() {
        let mut v = vec![[0.0, 0.0, 0.0]; 9];
        v[8] = [f64::NAN; 3];
        let mut buf = Vec::new();
        write_obj(&mut buf, 3, 3, &v).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 9);
        let faces: Vec<&str> = text.lines().filter(|l| l.starts_with("f ")).collect();
        assert_eq!(faces, vec!["f 1 2 5 4", "f 2 3 6 5", "f 4 5 8 7"]);
    }
}
