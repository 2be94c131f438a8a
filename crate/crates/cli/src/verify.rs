use std::f64::consts::PI;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vesiflow_core::evolution::{relaxational_step_imex, transmission_residual, SimState};
use vesiflow_core::geometry::linearized_symbol;
use vesiflow_core::oracle::manufactured::{
    forced_dirichlet_error, pressure_trace_error, wholespace_error,
};
use vesiflow_core::oracle::{
    dirichlet_halfline_oracle, fd_energy_gradient, ode_transmission_oracle, BvpConfig,
    OracleProfile,
};
use vesiflow_core::stokes::halfspace_dirichlet_solve;
use vesiflow_core::symbols::{
    ntd_multiplier, relaxation_rate, sector_check, solve_transmission, ModeData, SectorSampling,
};
use vesiflow_core::{Grid, HeightField, MaterialParams};

use crate::config::VerifyConfig;
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Symbols,
    Stokes,
    Gradient,
    Dispersion,
    Sector,
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "symbols" => Ok(Self::Symbols),
            "stokes" => Ok(Self::Stokes),
            "gradient" => Ok(Self::Gradient),
            "dispersion" => Ok(Self::Dispersion),
            "sector" => Ok(Self::Sector),
            other => Err(format!(
                "unknown suite {other:?} (symbols, stokes, gradient, dispersion, sector)"
            )),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Symbols => "symbols",
            Self::Stokes => "stokes",
            Self::Gradient => "gradient",
            Self::Dispersion => "dispersion",
            Self::Sector => "sector",
        })
    }
}

/// How a row's `computed` value is judged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Criterion {
    /// `rel_error <= tol`.
    RelError(f64),
    /// `computed >= bound`.
    AtLeast(f64),
    /// `computed > bound`.
    Above(f64),
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::RelError(t) => write!(f, "rel_error<={t:e}"),
            Self::AtLeast(b) => write!(f, "computed>={b}"),
            Self::Above(b) => write!(f, "computed>{b}"),
        }
    }
}

/// One line of `report.csv`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub case: String,
    pub computed: f64,
    pub reference: f64,
    pub rel_error: f64,
    pub criterion: Criterion,
    pub pass: bool,
}

impl ReportRow {
    fn new(case: impl Into<String>, computed: f64, reference: f64, criterion: Criterion) -> Self {
        let rel_error = if reference == 0.0 {
            computed.abs()
        } else {
            (computed - reference).abs() / reference.abs()
        };
        let pass = match criterion {
            Criterion::RelError(t) => rel_error <= t,
            Criterion::AtLeast(b) => computed >= b,
            Criterion::Above(b) => computed > b,
        };
        Self {
            case: case.into(),
            computed,
            reference,
            rel_error,
            criterion,
            pass,
        }
    }
}

fn rand_c(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Transmission traces against the finite-difference oracle, and the boundary
/// symbol against the product of the trace multiplier and the bending symbol.
fn symbols(cfg: &VerifyConfig) -> CliResult<Vec<ReportRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rows = Vec::new();
    for t in 0..12 {
        let mu_b = rng.gen_range(0.3..3.0);
        let mu = rng.gen_range(0.0..3.0);
        let kappa = rng.gen_range(0.5..2.0);
        let k: f64 = rng.gen_range(0.8..2.5);
        let eta = mu_b * k * k * rng.gen_range(0.1..0.5);
        let angle: f64 = rng.gen_range(0.0..2.0 * PI);
        let xi = [k * angle.cos(), k * angle.sin()];
        let p = MaterialParams::new(mu_b, mu, kappa, 0.0, eta, 0.5)?
            .with_alpha_scaled(cfg.alpha_scale);
        let (g_tau, g_nu) = ([rand_c(&mut rng), rand_c(&mut rng)], rand_c(&mut rng));
        let mode = ModeData::from_params(xi, &p);
        let exact = solve_transmission(&mode, g_tau, g_nu, &p)?;
        let bvp = BvpConfig::for_mode(xi, &p, 2000)?;
        let o = ode_transmission_oracle(xi, g_tau, g_nu, &bvp, &p)?;
        let pairs = [
            ("trace_v1", o.trace_v[0], exact.trace_v[0]),
            ("trace_v2", o.trace_v[1], exact.trace_v[1]),
            ("trace_w", o.trace_w, exact.trace_w),
            ("trace_pi_plus", o.trace_pi_plus, exact.trace_pi_plus),
        ];
        let scale_v = exact.trace_v[0].norm().hypot(exact.trace_v[1].norm());
        for (i, (name, a, b)) in pairs.into_iter().enumerate() {
            let scale = if i < 2 { scale_v } else { b.norm() };
            let err = (a - b).norm() / scale;
            let mut row = ReportRow::new(format!("tuple{t:02}:{name}"), a.re, b.re, Criterion::RelError(1e-4));
            row.rel_error = err;
            row.pass = err <= 1e-4;
            rows.push(row);
        }
        let rate = relaxation_rate(k, &p) - p.eta();
        let product = ntd_multiplier(&mode)? * linearized_symbol(k, &p);
        rows.push(ReportRow::new(
            format!("tuple{t:02}:boundary_rate"),
            rate,
            product,
            Criterion::RelError(1e-12),
        ));
    }
    Ok(rows)
}

fn stokes(cfg: &VerifyConfig) -> CliResult<Vec<ReportRow>> {
    let base = &cfg.params;
    let p = if base.eta() > 0.0 {
        *base
    } else {
        base.with_eta(1.0)?
    };
    let mut rows = vec![
        ReportRow::new("wholespace_manufactured", wholespace_error(&p)?, 0.0, Criterion::RelError(1e-8)),
        ReportRow::new(
            "pressure_trace_manufactured",
            pressure_trace_error(&p)?,
            0.0,
            Criterion::RelError(1e-8),
        ),
        ReportRow::new(
            "forced_dirichlet_manufactured",
            forced_dirichlet_error(&p)?,
            0.0,
            Criterion::RelError(1e-8),
        ),
    ];

    let lattice = Grid::new(4, 2.0 * PI)?;
    let k = lattice.mode_index(1, 1).expect("mode on lattice");
    let xi = lattice.wavevector(k);
    let mut tau = vec![[Complex64::new(0.0, 0.0); 2]; lattice.len()];
    let mut nu = vec![Complex64::new(0.0, 0.0); lattice.len()];
    tau[k] = [Complex64::new(0.3, -0.2), Complex64::new(0.1, 0.4)];
    nu[k] = Complex64::new(-0.5, 0.2);
    let bvp = BvpConfig::for_mode(xi, &p, 2000)?;
    let coarse = dirichlet_halfline_oracle(xi, tau[k], nu[k], &bvp, &p)?;
    let fine = dirichlet_halfline_oracle(xi, tau[k], nu[k], &bvp.refined(2), &p)?;
    let oracle = OracleProfile::richardson(&coarse, &fine);
    let ys: Vec<f64> = oracle.y.iter().copied().step_by(100).take(10).collect();
    let sol = halfspace_dirichlet_solve(&lattice, &tau, &nu, &ys, &p)?;
    let scale = sol.pi.at(k, 0).norm().max(1.0);
    let mut worst = 0.0f64;
    for j in 0..ys.len() {
        let n = 100 * j;
        let u = sol.u.at(k, j);
        for e in [
            u[0] - oracle.v[n][0],
            u[1] - oracle.v[n][1],
            u[2] - oracle.w[n],
            sol.pi.at(k, j) - oracle.pi[n],
        ] {
            worst = worst.max(e.norm() / scale);
        }
    }
    rows.push(ReportRow::new("dirichlet_vs_fd_oracle", worst, 0.0, Criterion::RelError(1e-6)));

    let grid = Grid::new(32, 2.0 * PI)?;
    let h = HeightField::from_fn(grid, |x| 1e-4 * (x[0].sin() + 0.5 * (x[0] + 2.0 * x[1]).cos()));
    let r = transmission_residual(&h, base)?;
    rows.push(ReportRow::new("snapshot_pressure_jump", r.pressure_jump, 0.0, Criterion::RelError(1e-8)));
    rows.push(ReportRow::new("snapshot_tangential_jump", r.tangential_jump, 0.0, Criterion::RelError(1e-8)));
    rows.push(ReportRow::new("snapshot_normal_jump", r.normal_jump, 0.0, Criterion::RelError(1e-8)));
    Ok(rows)
}

fn smooth_field(grid: Grid, rng: &mut ChaCha8Rng, amp: f64) -> CliResult<HeightField> {
    let mut coeffs = vec![Complex64::new(0.0, 0.0); grid.len()];
    for k1 in -3i64..=3 {
        for k2 in -3i64..=3 {
            if (k1, k2) != (0, 0) {
                let w = 1.0 / ((k1 * k1 + k2 * k2) as f64);
                coeffs[grid.mode_index(k1, k2).expect("mode on grid")] = rand_c(rng) * w;
            }
        }
    }
    let h = HeightField::from_coeffs(grid, coeffs)?;
    Ok(h.scaled(amp / h.max_abs()))
}

fn gradient(cfg: &VerifyConfig) -> CliResult<Vec<ReportRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let grid = Grid::new(32, 2.0 * PI)?;
    let p = cfg.params;
    (0..5)
        .map(|i| {
            let h = smooth_field(grid, &mut rng, p.gamma() / 4.0)?;
            let dh = smooth_field(grid, &mut rng, 1.0)?;
            let eps = [0.16, 0.08, 0.04, 0.02, 0.01].map(|e| e * p.gamma() / 0.5);
            let r = fd_energy_gradient(&h, &dh, &eps, &p)?;
            Ok(ReportRow::new(
                format!("field{i}:slope"),
                r.slope.unwrap_or(f64::NAN),
                2.0,
                Criterion::AtLeast(1.9),
            ))
        })
        .collect()
}

fn dispersion(cfg: &VerifyConfig) -> CliResult<Vec<ReportRow>> {
    let p = cfg.params.with_eta(0.0)?.with_c0(0.0)?;
    let grid = Grid::new(16, 2.0 * PI)?;
    let modes = [[1, 0], [0, 1], [1, 1], [2, 0], [2, 1], [2, 2], [3, 0], [3, 1]];
    modes
        .iter()
        .map(|k| {
            let idx = grid.mode_index(k[0], k[1]).expect("mode on grid");
            let xi = grid.wavevector(idx);
            let target = p.kappa() * grid.xi_norm(idx).powi(3) / (4.0 * p.mu_b());
            let dt = 1e-4 / target;
            let amp = 1e-6 * p.gamma();
            let h0 = HeightField::from_fn(grid, |x| amp * (xi[0] * x[0] + xi[1] * x[1]).cos());
            let mut s = SimState::new(h0.clone());
            for _ in 0..100 {
                s = relaxational_step_imex(&s, dt, &p)?;
            }
            let rate = -(s.h.max_abs() / h0.max_abs()).ln() / s.t;
            Ok(ReportRow::new(
                format!("mode({},{}):decay_rate", k[0], k[1]),
                rate,
                target,
                Criterion::RelError(1e-3),
            ))
        })
        .collect()
}

fn sector(cfg: &VerifyConfig) -> CliResult<Vec<ReportRow>> {
    let p = cfg.params.with_alpha_scaled(cfg.alpha_scale);
    let r = sector_check(cfg.theta, cfg.vartheta, &SectorSampling::default(), &p)?;
    Ok(vec![
        ReportRow::new("min_abs_s", r.min_abs_s, 0.0, Criterion::Above(0.0)),
        ReportRow::new("ratio_constant", r.ratio_constant, 0.0, Criterion::Above(0.0)),
        ReportRow::new("zero_free_samples", r.samples as f64, 0.0, Criterion::Above(0.0)),
    ])
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> CliResult<Vec<ReportRow>> {
    match suite {
        Suite::Symbols => symbols(cfg),
        Suite::Stokes => stokes(cfg),
        Suite::Gradient => gradient(cfg),
        Suite::Dispersion => dispersion(cfg),
        Suite::Sector => sector(cfg),
    }
}

pub fn write_report(path: &Path, rows: &[ReportRow]) -> CliResult<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["case", "computed", "reference", "rel_error", "criterion", "pass"])?;
    for r in rows {
        w.write_record([
            r.case.clone(),
            format!("{:e}", r.computed),
            format!("{:e}", r.reference),
            format!("{:e}", r.rel_error),
            r.criterion.to_string(),
            r.pass.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Runs a suite, writes the report and fails with exit code 4 if any row fails.
pub fn cmd_verify(suite: Suite, config: Option<&Path>, report: &Path) -> CliResult<Vec<ReportRow>> {
    let cfg = VerifyConfig::load(config)?;
    let rows = run_suite(suite, &cfg)?;
    write_report(report, &rows)?;
    let failed = rows.iter().filter(|r| !r.pass).count();
    if failed > 0 {
        return Err(CliError::VerifyFailed {
            failed,
            total: rows.len(),
        });
    }
    Ok(rows)
}
