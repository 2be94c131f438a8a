use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::HeightField;
use crate::params::MaterialParams;

/// Free decay rate of one mode written out directly:
/// `eta + kappa |xi|^5 / (2 varpi (varpi + sqrt(mu_b) |xi|))`.
fn decay_rate(k: f64, params: &MaterialParams) -> f64 {
    if k == 0.0 {
        return params.eta();
    }
    let varpi = (params.eta() + params.mu_b() * k * k).sqrt();
    params.eta()
        + params.kappa() * k.powi(5) / (2.0 * varpi * (varpi + params.mu_b().sqrt() * k))
}

/// Classical RK4 on the per-mode decay equations `d/dt h = -s h` over `[0, T]`.
///
/// Returns the `steps + 1` states including the initial one. Raises
/// [`Error::Stability`] unless `dt * max s < 2`.
pub fn dense_evolution_oracle(
    h0: &HeightField,
    t_end: f64,
    steps: usize,
    params: &MaterialParams,
) -> Result<Vec<HeightField>> {
    if steps == 0 || t_end.is_nan() || t_end <= 0.0 {
        return Err(Error::InvalidParameter("need T > 0 and at least one step".into()));
    }
    let grid = *h0.grid();
    let dt = t_end / steps as f64;
    let rates: Vec<f64> = (0..grid.len())
        .map(|i| decay_rate(grid.xi_norm(i), params))
        .collect();
    let product = dt * rates.iter().fold(0.0f64, |m, &s| m.max(s));
    if product >= 2.0 {
        return Err(Error::Stability { product });
    }
    let mut c: Vec<Complex64> = h0.coeffs().to_vec();
    let mut out = Vec::with_capacity(steps + 1);
    out.push(h0.clone());
    for _ in 0..steps {
        for (x, &s) in c.iter_mut().zip(&rates) {
            let f = |y: Complex64| -s * y;
            let k1 = f(*x);
            let k2 = f(*x + 0.5 * dt * k1);
            let k3 = f(*x + 0.5 * dt * k2);
            let k4 = f(*x + dt * k3);
            *x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        out.push(HeightField::from_coeffs(grid, c.clone())?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Grid;
    use std::f64::consts::PI;

    #[test]
    fn zero_data_stays_zero() {
        let g = Grid::new(8, 2.0 * PI).unwrap();
        let traj = dense_evolution_oracle(&HeightField::zeros(g), 1.0, 1000, &MaterialParams::default()).unwrap();
        assert!(traj.iter().all(|h| h.max_abs() == 0.0));
    }

    #[test]
    fn stability_guard() {
        let g = Grid::new(16, 2.0 * PI).unwrap();
        let h = HeightField::from_fn(g, |x| 1e-3 * x[0].sin());
        assert!(matches!(
            dense_evolution_oracle(&h, 10.0, 1, &MaterialParams::default()),
            Err(Error::Stability { .. })
        ));
    }

    #[test]
    fn single_mode_decay_matches_exponential() {
        let g = Grid::new(8, 2.0 * PI).unwrap();
        let p = MaterialParams::default();
        let h = HeightField::from_fn(g, |x| 1e-3 * (2.0 * x[0]).cos());
        let s = decay_rate(2.0, &p);
        let traj = dense_evolution_oracle(&h, 1.0 / s, 1000, &p).unwrap();
        let exact = h.scaled((-1.0f64).exp());
        let end = traj.last().unwrap();
        let err = end.axpy(-1.0, &exact).max_abs();
        assert!(err <= 1e-10 * h.max_abs(), "error {err}");
    }
}
