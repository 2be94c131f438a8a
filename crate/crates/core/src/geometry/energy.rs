use num_complex::Complex64;

use super::height::{HeightField, ScalarField};
use super::surface::{graph_geometry, laplace_beltrami, SurfaceGeometry};
use crate::error::Result;
use crate::params::MaterialParams;
use crate::spectral;

/// Bending energy `kappa/2 sum (H - C0)^2 sqrt(g) dx`.
pub fn helfrich_energy(geom: &SurfaceGeometry, params: &MaterialParams) -> f64 {
    let c0 = params.c0();
    let sum: f64 = geom
        .mean_curvature
        .iter()
        .zip(&geom.area_element)
        .map(|(h, s)| (h - c0).powi(2) * s)
        .sum();
    0.5 * params.kappa() * sum * geom.grid().cell_area()
}

/// Surface area `sum sqrt(g) dx`.
pub fn surface_area(geom: &SurfaceGeometry) -> f64 {
    geom.area_element.iter().sum::<f64>() * geom.grid().cell_area()
}

/// `kappa (lapH + H (H^2/2 - 2K) + C0 (2K - H C0 / 2))`.
///
/// With the curvature convention of [`graph_geometry`] this is the force the
/// membrane exerts along its normal, i.e. minus the energy variation.
pub fn grad_f_pointwise(h: f64, k: f64, lap_h: f64, params: &MaterialParams) -> f64 {
    let c0 = params.c0();
    params.kappa() * (lap_h + h * (0.5 * h * h - 2.0 * k) + c0 * (2.0 * k - 0.5 * h * c0))
}

/// Variational derivative of the bending energy for vertical variations,
/// `dF = sum grad * dh * dx`, truncated by the 2/3 rule.
pub fn helfrich_gradient(geom: &SurfaceGeometry, params: &MaterialParams) -> ScalarField {
    let grid = *geom.grid();
    let lap = laplace_beltrami(geom, &geom.mean_curvature);
    let values: Vec<f64> = (0..grid.len())
        .map(|i| {
            -grad_f_pointwise(
                geom.mean_curvature[i],
                geom.gauss_curvature[i],
                lap[i],
                params,
            )
        })
        .collect();
    let coeffs = spectral::forward_dealiased(&grid, &values);
    HeightField::from_coeffs(grid, coeffs).expect("grid-sized coefficients")
}

/// Fourier symbol of the flat linearization: `kappa (|xi|^4 + C0^2 |xi|^2 / 2)`.
pub fn linearized_symbol(xi_norm: f64, params: &MaterialParams) -> f64 {
    let q = xi_norm * xi_norm;
    params.kappa() * (q * q + 0.5 * params.c0() * params.c0() * q)
}

/// The linearized bending operator at the flat reference.
pub fn linearized_a_apply(h: &HeightField, params: &MaterialParams) -> HeightField {
    let grid = *h.grid();
    h.map_modes(|i| linearized_symbol(grid.xi_norm(i), params))
}

/// Superlinear part of the bending force: `helfrich_gradient(h) - A h`, with
/// modes beyond the 2/3 cut set to zero.
pub fn nonlinear_remainder_q(h: &HeightField, params: &MaterialParams) -> Result<ScalarField> {
    h.ensure_tubular(params.gamma())?;
    let grid = *h.grid();
    let grad = helfrich_gradient(&graph_geometry(h), params);
    let coeffs: Vec<Complex64> = (0..grid.len())
        .map(|i| {
            if grid.retained(i) {
                grad.coeffs()[i] - h.coeffs()[i] * linearized_symbol(grid.xi_norm(i), params)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    HeightField::from_coeffs(grid, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::spectral::Grid;
    use std::f64::consts::PI;

    fn grid() -> Grid {
        Grid::new(32, 2.0 * PI).unwrap()
    }

    fn params(c0: f64) -> MaterialParams {
        MaterialParams::default().with_c0(c0).unwrap()
    }

    #[test]
    fn flat_energy_values() {
        let g = graph_geometry(&HeightField::zeros(grid()));
        assert_eq!(helfrich_energy(&g, &params(0.0)), 0.0);
        let l = 2.0 * PI;
        let e = helfrich_energy(&g, &params(0.7));
        assert!((e - 0.5 * 0.49 * l * l).abs() < 1e-12);
        let grad = helfrich_gradient(&g, &params(0.7));
        assert!(grad.values().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn single_mode_energy_matches_expansion() {
        let eps = 1e-4;
        let l = 2.0 * PI;
        let h = HeightField::from_fn(grid(), |[x, _]| eps * (2.0 * PI * x / l).cos());
        let e = helfrich_energy(&graph_geometry(&h), &params(0.0));
        let expected = 0.5 * eps * eps * (2.0 * PI / l).powi(4) * l * l / 2.0;
        assert!((e - expected).abs() < 1e-6 * expected);
    }

    #[test]
    fn pointwise_formula_examples() {
        let p = MaterialParams::new(1.0, 1.0, 2.0, 0.0, 0.0, 1.0).unwrap();
        assert_eq!(grad_f_pointwise(0.0, 0.0, 1.0, &p), 2.0);
        let r = 1.7;
        assert!(grad_f_pointwise(2.0 / r, 1.0 / (r * r), 0.0, &p).abs() < 1e-15);
    }

    #[test]
    fn linear_operator_examples() {
        let gr = grid();
        let h = HeightField::from_fn(gr, |[x, y]| (2.0 * x - y).cos());
        let a = linearized_a_apply(&h, &params(0.0));
        let b = linearized_a_apply(&h, &params(1.5));
        for i in 0..gr.len() {
            assert!((a.values()[i] - 25.0 * h.values()[i]).abs() < 1e-9);
            assert!((b.values()[i] - (25.0 + 1.125 * 5.0) * h.values()[i]).abs() < 1e-9);
        }
        let c = linearized_a_apply(&HeightField::from_fn(gr, |_| 0.3), &params(1.0));
        assert!(c.max_abs() < 1e-15);
    }

    #[test]
    fn remainder_is_superlinear() {
        let gr = grid();
        let h0 = HeightField::from_fn(gr, |[x, y]| x.sin() * (2.0 * y).cos() + 0.5 * (x - y).cos());
        for c0 in [0.0, 0.8] {
            let p = params(c0);
            assert_eq!(nonlinear_remainder_q(&HeightField::zeros(gr), &p).unwrap().max_abs(), 0.0);
            let norms: Vec<f64> = [1e-2, 1e-3, 1e-4]
                .iter()
                .map(|&e| nonlinear_remainder_q(&h0.scaled(e), &p).unwrap().l2_norm())
                .collect();
            let order = (norms[0] / norms[2]).log10() / 2.0;
            assert!(order >= 1.9, "c0 = {c0}: observed order {order}");
        }
    }

    #[test]
    fn remainder_guards_the_tube() {
        let p = params(0.0);
        let h = HeightField::from_fn(grid(), |[x, _]| x.cos()).scaled(p.gamma() / 1.0);
        assert!(matches!(
            nonlinear_remainder_q(&h, &p),
            Err(Error::TubularViolation { .. })
        ));
    }

    #[test]
    fn translation_equivariance() {
        let gr = grid();
        let p = params(0.4);
        let h = HeightField::from_fn(gr, |[x, y]| 0.1 * x.sin() * y.cos() + 0.05 * (2.0 * y).sin());
        let shifted = h.translated(3, 5);
        let f0 = helfrich_energy(&graph_geometry(&h), &p);
        let f1 = helfrich_energy(&graph_geometry(&shifted), &p);
        assert!((f0 - f1).abs() < 1e-12 * f0);
        let g0 = helfrich_gradient(&graph_geometry(&h), &p).translated(3, 5);
        let g1 = helfrich_gradient(&graph_geometry(&shifted), &p);
        for (a, b) in g0.values().iter().zip(g1.values()) {
            assert!((a - b).abs() < 1e-11);
        }
    }
}
