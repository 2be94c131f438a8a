use std::f64::consts::PI;

use num_complex::Complex64;
use vesiflow_core::evolution::{
    diagnostics_record, equilibrium_check, linear_step, picard_step, picard_step_with_remainder,
    relaxational_step_imex, snapshot_fields, transmission_residual, SimState,
};
use vesiflow_core::oracle::dense_evolution_oracle;
use vesiflow_core::symbols::relaxation_rate;
use vesiflow_core::{Error, Grid, HeightField, MaterialParams};

fn grid(n: usize) -> Grid {
    Grid::new(n, 2.0 * PI).unwrap()
}

fn mode(g: Grid, k: [f64; 2], amp: f64) -> HeightField {
    HeightField::from_fn(g, |x| amp * (k[0] * x[0] + k[1] * x[1]).cos())
}

fn smooth(g: Grid, amp: f64) -> HeightField {
    let h = HeightField::from_fn(g, |x| {
        x[0].sin() + 0.5 * (x[0] + x[1]).cos() + 0.3 * (2.0 * x[1] + 0.4).sin()
            + 0.2 * (x[0] - 2.0 * x[1]).cos()
    });
    h.scaled(amp / h.max_abs())
}

fn coeff(h: &HeightField, k: [i64; 2]) -> Complex64 {
    h.coeffs()[h.grid().mode_index(k[0], k[1]).unwrap()]
}

fn sup_diff(a: &HeightField, b: &HeightField) -> f64 {
    a.axpy(-1.0, b).max_abs()
}

#[test]
fn linear_step_decays_each_mode_exponentially() {
    let g = grid(16);
    let p = MaterialParams::default().with_eta(0.3).unwrap();
    let h = smooth(g, 1e-2);
    let dt = 0.05;
    let mut s = SimState::new(h.clone());
    for _ in 0..10 {
        s = linear_step(&s, dt, None, &p).unwrap();
    }
    for k in [[1, 0], [1, 1], [0, 2], [1, -2]] {
        let rate = relaxation_rate(g.xi_norm(g.mode_index(k[0], k[1]).unwrap()), &p);
        let measured = -(coeff(&s.h, k).norm() / coeff(&h, k).norm()).ln() / (10.0 * dt);
        assert!((measured - rate).abs() <= 1e-12 * rate.max(1.0), "{k:?}: {measured} vs {rate}");
    }
}

#[test]
fn linear_step_forcing_fixed_point() {
    let g = grid(16);
    let p = MaterialParams::default().with_eta(0.5).unwrap();
    let h = smooth(g, 1e-2);
    let f: Vec<Complex64> = (0..g.len())
        .map(|i| {
            let s = if i == 0 { p.eta() } else { relaxation_rate(g.xi_norm(i), &p) };
            h.coeffs()[i] * s
        })
        .collect();
    let mut s = SimState::new(h.clone());
    for _ in 0..20 {
        s = linear_step(&s, 0.1, Some(&f), &p).unwrap();
    }
    assert!(sup_diff(&s.h, &h) < 1e-15);
}

#[test]
fn linear_step_without_shift_keeps_the_mean() {
    let g = grid(16);
    let p = MaterialParams::default();
    let h = smooth(g, 1e-2).axpy(1.0, &HeightField::from_fn(g, |_| 0.01));
    let mut s = SimState::new(h.clone());
    for _ in 0..50 {
        s = linear_step(&s, 0.1, None, &p).unwrap();
        assert_eq!(s.h.mean(), h.mean());
    }
}

#[test]
fn linear_step_matches_rk4_oracle() {
    let g = grid(8);
    let p = MaterialParams::default();
    let h = mode(g, [2.0, 0.0], 1e-3);
    let rate = relaxation_rate(2.0, &p);
    let t_end = 1.0 / rate;
    let traj = dense_evolution_oracle(&h, t_end, 1000, &p).unwrap();
    let mut s = SimState::new(h.clone());
    for want in traj.iter().skip(1) {
        s = linear_step(&s, t_end / 1000.0, None, &p).unwrap();
        assert!(sup_diff(&s.h, want) <= 1e-10 * h.max_abs());
    }
}

#[test]
fn imex_in_linear_regime_tracks_the_exact_step() {
    let g = grid(16);
    let p = MaterialParams::default();
    let h = smooth(g, 1e-8);
    let dt = 1e-3;
    let (mut a, mut b) = (SimState::new(h.clone()), SimState::new(h));
    for _ in 0..20 {
        let a1 = relaxational_step_imex(&a, dt, &p).unwrap();
        let b1 = linear_step(&a, dt, None, &p).unwrap();
        assert!(sup_diff(&a1.h, &b1.h) < 1e-10);
        a = a1;
        b = linear_step(&b, dt, None, &p).unwrap();
    }
    assert!(sup_diff(&a.h, &b.h) < 1e-10);
}

#[test]
fn imex_decay_rate_approaches_the_cubic_law() {
    let g = grid(16);
    let p = MaterialParams::new(1.7, 0.4, 1.3, 0.0, 0.0, 0.5).unwrap();
    for k in [[1.0f64, 0.0], [1.0, 1.0], [2.0, 1.0]] {
        let xi = (k[0] * k[0] + k[1] * k[1]).sqrt();
        let target = p.kappa() * xi.powi(3) / (4.0 * p.mu_b());
        let dt = 1e-4 / target;
        let h = mode(g, k, 1e-6);
        let mut s = SimState::new(h.clone());
        for _ in 0..100 {
            s = relaxational_step_imex(&s, dt, &p).unwrap();
        }
        let measured = -(s.h.max_abs() / h.max_abs()).ln() / s.t;
        assert!((measured / target - 1.0).abs() < 1e-3, "{k:?}: {measured} vs {target}");
    }
}

#[test]
fn surface_viscosity_does_not_enter_the_dynamics() {
    let g = grid(16);
    let p1 = MaterialParams::default();
    let p2 = p1.with_mu(37.0).unwrap();
    let h = smooth(g, 1e-3);
    let (mut a, mut b) = (SimState::new(h.clone()), SimState::new(h.clone()));
    let (mut c, mut d) = (SimState::new(h.clone()), SimState::new(h));
    for _ in 0..10 {
        a = relaxational_step_imex(&a, 0.01, &p1).unwrap();
        b = relaxational_step_imex(&b, 0.01, &p2).unwrap();
        c = linear_step(&c, 0.01, None, &p1).unwrap();
        d = linear_step(&d, 0.01, None, &p2).unwrap();
    }
    assert_eq!(a.h.values(), b.h.values());
    assert_eq!(c.h.values(), d.h.values());
}

#[test]
fn energy_decreases_along_resolved_nonlinear_runs() {
    let g = grid(32);
    let p = MaterialParams::default().with_c0(0.2).unwrap();
    let mut s = SimState::new(smooth(g, 0.12));
    let f0 = diagnostics_record(&s, &p).unwrap().energy;
    let mut prev = f0;
    for _ in 0..50 {
        s = relaxational_step_imex(&s, 0.05, &p).unwrap();
        let f = diagnostics_record(&s, &p).unwrap().energy;
        assert!(f <= prev + 1e-12 * f0, "energy rose from {prev} to {f}");
        prev = f;
    }
}

#[test]
fn imex_is_first_order_under_step_halving() {
    let g = grid(32);
    let p = MaterialParams::default();
    let h = smooth(g, 0.1);
    let run = |dt: f64| {
        let mut s = SimState::new(h.clone());
        let steps = (0.4 / dt).round() as usize;
        for _ in 0..steps {
            s = relaxational_step_imex(&s, dt, &p).unwrap();
        }
        s.h
    };
    let (a, b, c) = (run(0.04), run(0.02), run(0.01));
    let slope = (sup_diff(&a, &b) / sup_diff(&b, &c)).log2();
    assert!(slope >= 0.9, "slope {slope}");
}

#[test]
fn imex_rejects_states_outside_the_neighbourhood() {
    let g = grid(16);
    let p = MaterialParams::default();
    let s = SimState::new(mode(g, [1.0, 0.0], 0.6));
    assert!(matches!(
        relaxational_step_imex(&s, 0.1, &p),
        Err(Error::TubularViolation { .. })
    ));
    assert!(matches!(
        picard_step(&s, 0.1, 1e-12, 20, &p),
        Err(Error::TubularViolation { .. })
    ));
}

#[test]
fn picard_without_remainder_needs_one_sweep() {
    let g = grid(16);
    let p = MaterialParams::default();
    let s = SimState::new(smooth(g, 1e-2));
    let (out, report) =
        picard_step_with_remainder(&s, 0.1, 1e-14, 10, &p, |h| Ok(HeightField::zeros(*h.grid())))
            .unwrap();
    assert_eq!(report.iterations, 1);
    assert_eq!(out.picard_iterations, 1);
}

#[test]
fn picard_contraction_shrinks_with_amplitude() {
    let g = grid(32);
    let p = MaterialParams::default().with_c0(0.5).unwrap();
    let factor = |eps: f64| {
        let s = SimState::new(smooth(g, eps));
        picard_step(&s, 0.05, 0.0, 50, &p).unwrap().1.contraction().unwrap()
    };
    let (big, small) = (factor(1e-2), factor(1e-3));
    assert!(big < 0.5 && small < big, "{big} {small}");
    let slope = (big / small).log10();
    assert!(slope > 0.8, "contraction slope {slope}");
}

#[test]
fn picard_agrees_with_imex_to_second_order() {
    let g = grid(32);
    let p = MaterialParams::default().with_c0(0.3).unwrap();
    let h = smooth(g, 0.1);
    let gap = |dt: f64| {
        let s = SimState::new(h.clone());
        let a = relaxational_step_imex(&s, dt, &p).unwrap();
        let (b, _) = picard_step(&s, dt, 0.0, 50, &p).unwrap();
        sup_diff(&a.h, &b.h)
    };
    let (e1, e2) = (gap(0.02), gap(0.01));
    assert!((e1 / e2).log2() > 1.8, "{e1} {e2}");
}

#[test]
fn diagnostics_of_flat_state() {
    let p = MaterialParams::default();
    let s = SimState::new(HeightField::zeros(grid(16)));
    let row = diagnostics_record(&s, &p).unwrap();
    assert_eq!(row.energy, 0.0);
    assert_eq!(row.dissipation, 0.0);
    assert_eq!(row.area, (2.0 * PI).powi(2));
}

#[test]
fn dissipation_matches_energy_decay_for_one_mode() {
    let g = grid(16);
    let p = MaterialParams::default();
    let dt = 1e-3;
    let mut s = SimState::new(mode(g, [1.0, 1.0], 1e-4));
    let r0 = diagnostics_record(&s, &p).unwrap();
    s = linear_step(&s, dt, None, &p).unwrap();
    let r1 = diagnostics_record(&s, &p).unwrap();
    s = linear_step(&s, dt, None, &p).unwrap();
    let r2 = diagnostics_record(&s, &p).unwrap();
    let rate = -(r2.energy - r0.energy) / (2.0 * dt);
    assert!((rate / r1.dissipation - 1.0).abs() < 1e-4, "{rate} {}", r1.dissipation);
}

#[test]
fn equilibrium_checks() {
    let g = grid(16);
    let p = MaterialParams::default();
    let flat = equilibrium_check(&SimState::new(HeightField::zeros(g)), &p, 0.0);
    assert!(flat.at_rest && flat.residual == 0.0);

    let amp = 1e-6;
    let tiny = equilibrium_check(&SimState::new(mode(g, [2.0, 0.0], amp)), &p, 1e-8);
    assert!(!tiny.at_rest);
    assert!((tiny.residual / (16.0 * amp) - 1.0).abs() < 1e-6);

    let mut s = SimState::new(smooth(g, 0.05));
    for _ in 0..200 {
        s = relaxational_step_imex(&s, 0.5, &p).unwrap();
    }
    let tol = 1e-8 * p.kappa() / (2.0 * PI).powi(3);
    assert!(equilibrium_check(&s, &p, tol).at_rest);
}

#[test]
fn snapshot_fields_flat_and_far_field() {
    let g = grid(16);
    let p = MaterialParams::default();
    let flat = snapshot_fields(&HeightField::zeros(g), 0.0, &p).unwrap();
    assert!(flat.pi.iter().chain(&flat.w).chain(&flat.v1).all(|&v| v == 0.0));

    let h = smooth(g, 1e-4);
    let near = snapshot_fields(&h, 0.0, &p).unwrap();
    let far = snapshot_fields(&h, 40.0, &p).unwrap();
    let sup = |v: &[f64]| v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    for (a, b) in [(&far.w, &near.w), (&far.v1, &near.pi), (&far.pi, &near.pi)] {
        assert!(sup(a) < 1e-10 * sup(b));
    }
}

#[test]
fn snapshot_pressure_jump_is_the_bending_force() {
    let g = grid(16);
    let p = MaterialParams::default();
    let h = smooth(g, 1e-4);
    let res = transmission_residual(&h, &p).unwrap();
    assert!(res.pressure_jump <= 1e-8 && res.tangential_jump <= 1e-8 && res.normal_jump <= 1e-8);

    let up = snapshot_fields(&h, 0.0, &p).unwrap();
    let down = snapshot_fields(&h, -0.0, &p).unwrap();
    let bilap = h.map_modes(|i| g.xi_norm(i).powi(4) * p.kappa());
    for i in 0..g.len() {
        let jump = up.pi[i] - down.pi[i];
        assert!((jump + bilap.values()[i]).abs() <= 1e-8);
    }
}
