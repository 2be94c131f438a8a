use num_complex::Complex64;
use vesiflow_core::oracle::manufactured::{
    forced_dirichlet_error, homogeneous_mode, manufacture, pressure_trace_error, wholespace_error,
};
use vesiflow_core::oracle::{dirichlet_halfline_oracle, BvpConfig, OracleProfile};
use vesiflow_core::stokes::{
    halfspace_dirichlet_solve, wholespace_solve, Bulk, BulkField, YAxis, YGrid,
};
use vesiflow_core::{Error, Grid, MaterialParams};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn gauss(y: f64) -> [f64; 2] {
    let g = (-y * y).exp();
    [g, -2.0 * y * g]
}

/// Lattice with `L = 2 pi` so integer wavenumbers are the wavevectors.
fn lattice() -> Grid {
    Grid::new(4, 2.0 * std::f64::consts::PI).unwrap()
}

fn max_err(a: &BulkField, exact: impl Fn(usize, f64) -> ([Complex64; 3], Complex64)) -> f64 {
    let ys = a.u.axis().values();
    let mut err = 0.0f64;
    for k in 0..a.u.lattice().len() {
        for (j, &y) in ys.iter().enumerate() {
            let (u, pi) = exact(k, y);
            let got = a.u.at(k, j);
            for comp in 0..3 {
                err = err.max((got[comp] - u[comp]).norm());
            }
            err = err.max((a.pi.at(k, j) - pi).norm());
        }
    }
    err
}

fn params(eta: f64, mu_b: f64) -> MaterialParams {
    MaterialParams::new(mu_b, 0.7, 1.0, 0.0, eta, 0.5).unwrap()
}

#[test]
fn wholespace_recovers_manufactured_solution() {
    let err = wholespace_error(&params(1.3, 0.8)).unwrap();
    assert!(err < 1e-8, "whole-space error {err}");
}

#[test]
fn wholespace_gradient_forcing_is_absorbed_by_pressure() {
    let lat = lattice();
    let p = params(0.9, 1.4);
    let grid = YGrid::new(256, 10.0).unwrap();
    let axis = YAxis::Periodic(grid);
    let f = Bulk::from_fn(lat, axis.clone(), |k, y| {
        let xi = lat.wavevector(k);
        let q = gauss(y);
        let a = c(0.3, 0.1 * k as f64);
        [I * xi[0] * a * q[0], I * xi[1] * a * q[0], a * q[1]]
    });
    let g = Bulk::zeros(lat, axis);
    let sol = wholespace_solve(&f, &g, &p).unwrap();
    // The zero mode pressure is gauged to zero mean over the period.
    let mean = std::f64::consts::PI.sqrt() / (2.0 * grid.extent());
    let err = max_err(&sol, |k, y| {
        let a = c(0.3, 0.1 * k as f64);
        let shift = if k == 0 { mean } else { 0.0 };
        ([c(0.0, 0.0); 3], a * (gauss(y)[0] - shift))
    });
    assert!(err < 1e-8, "gradient forcing error {err}");
}

#[test]
fn wholespace_rejects_incompatible_divergence() {
    let lat = lattice();
    let p = params(1.0, 1.0);
    let axis = YAxis::Periodic(YGrid::new(64, 8.0).unwrap());
    let f = Bulk::zeros(lat, axis.clone());
    let g = Bulk::from_fn(lat, axis, |k, y| {
        if k == 0 {
            c(gauss(y)[0], 0.0)
        } else {
            c(0.0, 0.0)
        }
    });
    assert!(matches!(
        wholespace_solve(&f, &g, &p),
        Err(Error::Compatibility { .. })
    ));
}

#[test]
fn solvers_require_positive_shift() {
    let lat = lattice();
    let p = params(1.0, 1.0).with_eta(0.0).unwrap();
    let axis = YAxis::Periodic(YGrid::new(64, 8.0).unwrap());
    let f = Bulk::zeros(lat, axis.clone());
    let g = Bulk::zeros(lat, axis);
    assert!(matches!(wholespace_solve(&f, &g, &p), Err(Error::Shift { .. })));
    let zero = vec![[c(0.0, 0.0); 2]; lat.len()];
    let nu = vec![c(0.0, 0.0); lat.len()];
    assert!(matches!(
        halfspace_dirichlet_solve(&lat, &zero, &nu, &[0.0, 1.0], &p),
        Err(Error::Shift { .. })
    ));
}

#[test]
fn dirichlet_rejects_normal_flux_in_zero_mode() {
    let lat = lattice();
    let p = params(1.0, 1.0);
    let tau = vec![[c(0.0, 0.0); 2]; lat.len()];
    let mut nu = vec![c(0.0, 0.0); lat.len()];
    nu[0] = c(1.0, 0.0);
    assert_eq!(
        halfspace_dirichlet_solve(&lat, &tau, &nu, &[0.0], &p),
        Err(Error::ZeroMode)
    );
}

#[test]
fn homogeneous_modes_solve_the_unforced_equations() {
    let p = params(0.7, 1.9);
    let xi = [1.0, -2.0];
    for &y in &[0.0, 0.3, 1.7] {
        let (u, pi) = homogeneous_mode(xi, [c(0.2, 0.1), c(-0.4, 0.3)], c(0.5, -0.6), y, &p);
        let m = manufacture(xi, u, pi, &p);
        for v in m.f.iter().chain(std::iter::once(&m.g)) {
            assert!(v.norm() < 1e-12, "residual {v}");
        }
    }
}

#[test]
fn dirichlet_matches_trace_and_finite_difference_oracle() {
    let lat = lattice();
    let p = params(1.1, 0.9);
    let mut tau = vec![[c(0.0, 0.0); 2]; lat.len()];
    let mut nu = vec![c(0.0, 0.0); lat.len()];
    let k = lat.mode_index(1, 1).unwrap();
    tau[k] = [c(0.3, -0.2), c(0.1, 0.4)];
    nu[k] = c(-0.5, 0.2);
    tau[0] = [c(0.2, 0.0), c(0.0, -0.1)];
    let xi = lat.wavevector(k);
    let cfg = BvpConfig::for_mode(xi, &p, 2000).unwrap();
    let coarse = dirichlet_halfline_oracle(xi, tau[k], nu[k], &cfg, &p).unwrap();
    let fine = dirichlet_halfline_oracle(xi, tau[k], nu[k], &cfg.refined(2), &p).unwrap();
    let oracle = OracleProfile::richardson(&coarse, &fine);
    let ys: Vec<f64> = oracle.y.iter().copied().step_by(50).take(20).collect();
    let sol = halfspace_dirichlet_solve(&lat, &tau, &nu, &ys, &p).unwrap();

    let u0 = sol.u.at(k, 0);
    assert!((u0[0] - tau[k][0]).norm() < 1e-13);
    assert!((u0[1] - tau[k][1]).norm() < 1e-13);
    assert!((u0[2] - nu[k]).norm() < 1e-13);

    let scale = 1.0 + sol.pi.at(k, 0).norm();
    for (j, n) in (0..ys.len()).map(|j| (j, j * 50)) {
        let u = sol.u.at(k, j);
        let errs = [
            u[0] - oracle.v[n][0],
            u[1] - oracle.v[n][1],
            u[2] - oracle.w[n],
            sol.pi.at(k, j) - oracle.pi[n],
        ];
        for e in errs {
            assert!(e.norm() / scale < 1e-6, "oracle mismatch {e} at y = {}", ys[j]);
        }
    }

    let rate = (p.eta() / p.mu_b()).sqrt();
    for (j, &y) in ys.iter().enumerate() {
        let u = sol.u.at(0, j);
        assert!((u[0] - tau[0][0] * (-rate * y).exp()).norm() < 1e-14);
        assert_eq!(u[2], c(0.0, 0.0));
    }
}

#[test]
fn pressure_trace_problem_recovers_manufactured_solution() {
    let err = pressure_trace_error(&params(1.2, 0.8)).unwrap();
    assert!(err < 1e-8, "pressure-trace error {err}");
}

#[test]
fn forced_dirichlet_problem_recovers_manufactured_solution() {
    let err = forced_dirichlet_error(&params(0.8, 1.3)).unwrap();
    assert!(err < 1e-8, "forced Dirichlet error {err}");
}
