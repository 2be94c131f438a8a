use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vesiflow_core::evolution::{
    diagnostics_record, linear_step, picard_step, relaxational_step_imex, DiagnosticsRow,
    SimDiagnostics, SimState,
};
use vesiflow_core::oracle::dense_evolution_oracle;
use vesiflow_core::symbols::relaxation_rate;
use vesiflow_core::{Grid, HeightField};

use crate::config::{InitialCondition, Integrator, RunConfig};
use crate::error::{CliError, CliResult};
use crate::io::{read_snapshot, write_snapshot, FORMAT_VERSION};

/// Modeling and numerical conventions recorded in every run manifest.
pub const DECISIONS: &[(&str, &str)] = &[
    ("volume_gauge", "zero Fourier mode of h copied unchanged by every step"),
    ("pressure_gauge", "zero-mean bulk pressures; the zero mode carries only the jump g_nu/2 on each side"),
    ("hydrodynamics", "flat-reference normal-trace multiplier 1/(4 mu_b |xi|) at zero shift"),
    ("bending_force", "full graph geometry, flat measure dx, 2/3-rule dealiasing of products"),
    ("dissipation", "linearized surrogate L^2 sum M(xi) A(xi)^2 |h(xi)|^2"),
    ("step_control", "on tubular violation the step is covered by 2^k substeps, k <= 8"),
    ("picard_stop", "sup-norm update <= max(tol, 64 eps |h|_inf); sweeps counted after the IMEX predictor"),
    ("tail_fraction", "spectral mass share of modes with max|k_i| > N/4; >= 0.1 flags under-resolution"),
];

/// Outcome of a completed run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub output: PathBuf,
    pub steps: usize,
    pub rows: usize,
    pub final_time: f64,
    pub resolution_warning: bool,
    pub dense_oracle_deviation: Option<f64>,
}

/// Builds the initial height field of a run.
pub fn initial_height(cfg: &RunConfig) -> CliResult<HeightField> {
    let grid = cfg.grid;
    let h = match &cfg.initial {
        InitialCondition::SingleMode { k, amplitude } => {
            let idx = grid
                .mode_index(k[0], k[1])
                .filter(|&i| grid.retained(i))
                .ok_or_else(|| {
                    CliError::Config(format!(
                        "[initial] mode ({}, {}) lies outside the dealiased band |k_i| <= N/3",
                        k[0], k[1]
                    ))
                })?;
            let xi = grid.wavevector(idx);
            HeightField::from_fn(grid, |x| amplitude * (xi[0] * x[0] + xi[1] * x[1]).cos())
        }
        InitialCondition::RandomSmooth {
            seed,
            decay,
            amplitude,
        } => random_smooth(grid, *seed, *decay, *amplitude)?,
        InitialCondition::File(path) => {
            let h = read_snapshot(path)?;
            if h.grid() != &grid {
                return Err(CliError::Config(format!(
                    "snapshot grid (N = {}, L = {}) differs from [grid]",
                    h.grid().n(),
                    h.grid().period()
                )));
            }
            h
        }
    };
    let half = 0.5 * cfg.params.gamma();
    if h.max_abs() >= half {
        return Err(CliError::Config(format!(
            "initial height max |h0| = {} violates the small-data bound |h0| < gamma/2 = {half}",
            h.max_abs()
        )));
    }
    Ok(h)
}

fn random_smooth(grid: Grid, seed: u64, decay: f64, amplitude: f64) -> CliResult<HeightField> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<Complex64> = (0..grid.len())
        .map(|i| {
            let (re, im): (f64, f64) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            if i == 0 || !grid.retained(i) {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(re, im) * grid.xi_norm(i).powf(-decay)
            }
        })
        .collect();
    let h = HeightField::from_coeffs(grid, coeffs)?;
    let max = h.max_abs();
    Ok(if max > 0.0 {
        h.scaled(amplitude / max)
    } else {
        h
    })
}

fn fmt_f64(v: f64) -> String {
    format!("{v:e}")
}

fn write_diagnostics(path: &Path, rows: &[DiagnosticsRow]) -> CliResult<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record([
        "t",
        "F",
        "D",
        "mean_h",
        "area",
        "max_h",
        "tail_fraction",
        "picard_iters",
        "contraction",
    ])?;
    for r in rows {
        w.write_record([
            fmt_f64(r.t),
            fmt_f64(r.energy),
            fmt_f64(r.dissipation),
            fmt_f64(r.mean_h),
            fmt_f64(r.area),
            fmt_f64(r.max_h),
            fmt_f64(r.tail_fraction),
            r.picard_iters.to_string(),
            r.contraction.map(fmt_f64).unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn snapshot_name(t: f64) -> String {
    format!("height_{t:.6}.bin")
}

fn write_manifest(
    cfg: &RunConfig,
    path: &Path,
    status: &str,
    state: &SimState,
    diags: &SimDiagnostics,
    dense: Option<f64>,
) -> CliResult<()> {
    let mut text = String::from("# vesiflow run manifest\n\n");
    text += &cfg.echo();
    text += &format!(
        "\n[build]\nversion = {}\nsnapshot_format = {FORMAT_VERSION}\n\n[decisions]\n",
        env!("CARGO_PKG_VERSION")
    );
    for (k, v) in DECISIONS {
        text += &format!("{k} = {v}\n");
    }
    text += &format!(
        "\n[result]\nstatus = {status}\nsteps = {}\nfinal_t = {}\nrows = {}\nresolution_warning = {}\n",
        state.step,
        state.t,
        diags.len(),
        diags.resolution_warning()
    );
    if let Some(d) = dense {
        text += &format!("dense_oracle_max_deviation = {d:e}\n");
    }
    fs::write(path, text)?;
    Ok(())
}

/// Runs the configured integrator and writes diagnostics, snapshots and manifest.
pub fn simulate(cfg: &RunConfig) -> CliResult<RunSummary> {
    let h0 = initial_height(cfg)?;
    fs::create_dir_all(&cfg.output)?;
    let steps = cfg.steps();
    let mut state = SimState::new(h0.clone());
    let mut diags = SimDiagnostics::new();
    write_snapshot(&cfg.output.join(snapshot_name(0.0)), &state.h)?;
    diags.push(diagnostics_record(&state, &cfg.params)?)?;

    let mut run = || -> CliResult<()> {
        for k in 1..=steps {
            let dt = if k == steps {
                cfg.t_end - state.t
            } else {
                cfg.dt
            };
            state = match cfg.integrator {
                Integrator::Linear => linear_step(&state, dt, None, &cfg.params)?,
                Integrator::Imex => relaxational_step_imex(&state, dt, &cfg.params)?,
                Integrator::Picard => {
                    picard_step(&state, dt, cfg.picard_tol, cfg.picard_max_iter, &cfg.params)?.0
                }
            };
            if k % cfg.cadence == 0 || k == steps {
                diags.push(diagnostics_record(&state, &cfg.params)?)?;
            }
            let snap = cfg.snapshot_cadence > 0 && k % cfg.snapshot_cadence == 0;
            if snap || k == steps {
                write_snapshot(&cfg.output.join(snapshot_name(state.t)), &state.h)?;
            }
        }
        Ok(())
    };
    let outcome = run();

    let dense = if cfg.dense_oracle && outcome.is_ok() {
        // RK4 substeps keep dt * max rate <= 1/4 on the retained spectrum
        let grid = h0.grid();
        let max_rate = (0..grid.len())
            .map(|i| relaxation_rate(grid.xi_norm(i), &cfg.params))
            .fold(0.0f64, f64::max);
        let substeps = steps.max((4.0 * cfg.t_end * max_rate).ceil() as usize);
        let traj = dense_evolution_oracle(&h0, cfg.t_end, substeps, &cfg.params)?;
        let end = traj.last().expect("initial state present");
        Some(end.axpy(-1.0, &state.h).max_abs())
    } else {
        None
    };
    write_diagnostics(&cfg.output.join("diagnostics.csv"), diags.rows())?;
    let status = match &outcome {
        Ok(()) => "completed".to_string(),
        Err(e) => format!("aborted: {e}"),
    };
    write_manifest(cfg, &cfg.output.join("run_manifest.ini"), &status, &state, &diags, dense)?;
    outcome?;
    Ok(RunSummary {
        output: cfg.output.clone(),
        steps,
        rows: diags.len(),
        final_time: state.t,
        resolution_warning: diags.resolution_warning(),
        dense_oracle_deviation: dense,
    })
}

pub fn cmd_simulate(config: &Path) -> CliResult<RunSummary> {
    simulate(&RunConfig::load(config)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Document;

    fn config(initial: &str) -> RunConfig {
        let text = format!(
            "[grid]\nn = 16\n\n[initial]\n{initial}\n\n[run]\ndt = 0.01\nt_end = 0.1\noutput = out\n"
        );
        RunConfig::from_document(&Document::parse(&text, Path::new(".")).unwrap()).unwrap()
    }

    #[test]
    fn single_mode_has_requested_amplitude() {
        let h = initial_height(&config("preset = single-mode\nk1 = 2\nk2 = -1\namplitude = 0.03")).unwrap();
        assert!((h.max_abs() - 0.03).abs() < 1e-15);
        assert!(h.mean().abs() < 1e-18);
        let aliased = config("preset = single-mode\nk1 = 7\namplitude = 0.03");
        assert!(matches!(initial_height(&aliased), Err(CliError::Config(_))));
    }

    #[test]
    fn random_smooth_is_seeded_and_band_limited() {
        let c = config("preset = random-smooth\nseed = 3\ndecay = 2\namplitude = 0.1");
        let a = initial_height(&c).unwrap();
        let b = initial_height(&c).unwrap();
        assert_eq!(a.values(), b.values());
        assert!((a.max_abs() - 0.1).abs() < 1e-15);
        let g = a.grid();
        assert!((0..g.len()).all(|i| g.retained(i) || a.coeffs()[i].norm() == 0.0));
        let other = initial_height(&config("preset = random-smooth\nseed = 4\namplitude = 0.1")).unwrap();
        assert_ne!(a.values(), other.values());
    }
}
