use std::f64::consts::PI;
use std::io::{self, Write};

use crate::surface::{coefficients, covering_degree, immersion_with, Triple};

fn grid(t: &Triple, nx: usize, ny: usize) -> Vec<(f64, f64, [f64; 6])> {
    let co = coefficients(t);
    let (hx, hy) = (2.0 * PI / nx as f64, 2.0 * PI / ny as f64);
    (0..nx * ny)
        .map(|k| {
            let (x, y) = ((k / ny) as f64 * hx, (k % ny) as f64 * hy);
            (x, y, immersion_with(t, &co, x, y))
        })
        .collect()
}

/// Header `x,y,F1..F6`, one row per node of `[0, 2π)²`, `x` outer.
pub fn write_csv<W: Write>(out: W, t: &Triple, nx: usize, ny: usize) -> io::Result<usize> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "y", "F1", "F2", "F3", "F4", "F5", "F6"])?;
    let points = grid(t, nx, ny);
    for (x, y, f) in &points {
        let mut row = vec![x.to_string(), y.to_string()];
        row.extend(f.iter().map(f64::to_string));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(points.len())
}

/// Orthogonal projection onto the coordinates `axes` (1-based) with one quad
/// per grid cell, wrapping in both directions. Returns `(vertices, faces)`.
pub fn write_obj<W: Write>(mut out: W, t: &Triple, nx: usize, ny: usize, axes: [usize; 3]) -> io::Result<(usize, usize)> {
    let [i, j, k] = axes;
    writeln!(out, "# {t}")?;
    writeln!(out, "# grid {nx} x {ny} over [0, 2pi)^2")?;
    writeln!(out, "# axes F{i}, F{j}, F{k}")?;
    if covering_degree(t) > 1 {
        writeln!(
            out,
            "# covering degree {}: the parameter torus is exported as-is, every surface point appears twice",
            covering_degree(t)
        )?;
    } else {
        writeln!(out, "# covering degree 1")?;
    }
    let points = grid(t, nx, ny);
    for (_, _, f) in &points {
        writeln!(out, "v {} {} {}", f[i - 1], f[j - 1], f[k - 1])?;
    }
    let id = |a: usize, b: usize| (a % nx) * ny + (b % ny) + 1;
    for a in 0..nx {
        for b in 0..ny {
            writeln!(out, "f {} {} {} {}", id(a, b), id(a + 1, b), id(a + 1, b + 1), id(a, b + 1))?;
        }
    }
    out.flush()?;
    Ok((points.len(), nx * ny))
}
