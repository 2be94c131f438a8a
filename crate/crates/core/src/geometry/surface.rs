use rayon::prelude::*;

use super::height::{HeightField, TangentField};
use crate::spectral::{self, Grid};

/// Pointwise geometry of the graph `y = h(x)`.
///
/// Symmetric 2x2 tensors are stored as `[t11, t12, t22]`. The unit normal points
/// toward `y > 0` and the mean curvature is the full trace of the Weingarten map,
/// so a cap bulging toward `+y` has `H > 0`.
#[derive(Debug, Clone)]
pub struct SurfaceGeometry {
    grid: Grid,
    pub slope: Vec<[f64; 2]>,
    pub metric: Vec<[f64; 3]>,
    pub metric_inv: Vec<[f64; 3]>,
    pub area_element: Vec<f64>,
    pub second_form: Vec<[f64; 3]>,
    pub mean_curvature: Vec<f64>,
    pub gauss_curvature: Vec<f64>,
    pub normal: Vec<[f64; 3]>,
}

impl SurfaceGeometry {
    pub fn grid(&self) -> &Grid {
        &self.grid
    }
}

/// Evaluates the fundamental forms and curvatures of the graph of `h` spectrally.
pub fn graph_geometry(h: &HeightField) -> SurfaceGeometry {
    let grid = *h.grid();
    let c = h.coeffs();
    let d = |a, b| spectral::derivative(&grid, c, a, b);
    let (h1, h2) = (d(1, 0), d(0, 1));
    let (h11, h12, h22) = (d(2, 0), d(1, 1), d(0, 2));

    let points: Vec<_> = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let (p1, p2) = (h1[i], h2[i]);
            let w2 = 1.0 + p1 * p1 + p2 * p2;
            let w = w2.sqrt();
            let g = [1.0 + p1 * p1, p1 * p2, 1.0 + p2 * p2];
            let gi = [1.0 - p1 * p1 / w2, -p1 * p2 / w2, 1.0 - p2 * p2 / w2];
            let k = [-h11[i] / w, -h12[i] / w, -h22[i] / w];
            let mean = gi[0] * k[0] + 2.0 * gi[1] * k[1] + gi[2] * k[2];
            let gauss = (k[0] * k[2] - k[1] * k[1]) / w2;
            let nu = [-p1 / w, -p2 / w, 1.0 / w];
            ([p1, p2], g, gi, w, k, mean, gauss, nu)
        })
        .collect();

    let mut geom = SurfaceGeometry {
        grid,
        slope: Vec::with_capacity(grid.len()),
        metric: Vec::with_capacity(grid.len()),
        metric_inv: Vec::with_capacity(grid.len()),
        area_element: Vec::with_capacity(grid.len()),
        second_form: Vec::with_capacity(grid.len()),
        mean_curvature: Vec::with_capacity(grid.len()),
        gauss_curvature: Vec::with_capacity(grid.len()),
        normal: Vec::with_capacity(grid.len()),
    };
    for (p, g, gi, w, k, mean, gauss, nu) in points {
        geom.slope.push(p);
        geom.metric.push(g);
        geom.metric_inv.push(gi);
        geom.area_element.push(w);
        geom.second_form.push(k);
        geom.mean_curvature.push(mean);
        geom.gauss_curvature.push(gauss);
        geom.normal.push(nu);
    }
    geom
}

/// `(1/sqrt g) d_a (sqrt g g^{ab} v_b)` for covariant components `v_b`.
fn metric_divergence(geom: &SurfaceGeometry, v1: &[f64], v2: &[f64]) -> Vec<f64> {
    let grid = geom.grid;
    let (mut f1, mut f2) = (vec![0.0; grid.len()], vec![0.0; grid.len()]);
    for i in 0..grid.len() {
        let gi = geom.metric_inv[i];
        let s = geom.area_element[i];
        f1[i] = s * (gi[0] * v1[i] + gi[1] * v2[i]);
        f2[i] = s * (gi[1] * v1[i] + gi[2] * v2[i]);
    }
    let d1 = spectral::derivative(&grid, &spectral::forward_dealiased(&grid, &f1), 1, 0);
    let d2 = spectral::derivative(&grid, &spectral::forward_dealiased(&grid, &f2), 0, 1);
    d1.iter()
        .zip(&d2)
        .zip(&geom.area_element)
        .map(|((a, b), s)| (a + b) / s)
        .collect()
}

/// Laplace-Beltrami operator of the graph metric applied to grid values `f`.
pub fn laplace_beltrami(geom: &SurfaceGeometry, f: &[f64]) -> Vec<f64> {
    let grid = geom.grid;
    let c = spectral::forward_dealiased(&grid, f);
    let f1 = spectral::derivative(&grid, &c, 1, 0);
    let f2 = spectral::derivative(&grid, &c, 0, 1);
    metric_divergence(geom, &f1, &f2)
}

/// Surface divergence `div_g v - w H` of the field `v + w nu`.
pub fn surface_divergence(v: &TangentField, w: &[f64], geom: &SurfaceGeometry) -> Vec<f64> {
    let (v1, v2) = v.components();
    metric_divergence(geom, v1, v2)
        .iter()
        .zip(w)
        .zip(&geom.mean_curvature)
        .map(|((d, w), h)| d - w * h)
        .collect()
}
