use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use ini::Ini;
use vesiflow_core::{Grid, MaterialParams};

use crate::error::{CliError, CliResult};

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

/// Parsed `key = value` document with sections; every key must be consumed.
pub struct Document {
    ini: Ini,
    base: PathBuf,
    seen: std::cell::RefCell<BTreeSet<(String, String)>>,
}

impl Document {
    pub fn parse(text: &str, base: &Path) -> CliResult<Self> {
        let ini = Ini::load_from_str(text).map_err(|e| config_err(e.to_string()))?;
        Ok(Self {
            ini,
            base: base.to_path_buf(),
            seen: Default::default(),
        })
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| config_err(format!("cannot read {}: {e}", path.display())))?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Self::parse(&text, &base)
    }

    fn raw(&self, section: &str, key: &str) -> Option<&str> {
        self.seen
            .borrow_mut()
            .insert((section.to_string(), key.to_string()));
        self.ini.section(Some(section)).and_then(|s| s.get(key))
    }

    pub fn get<T: FromStr>(&self, section: &str, key: &str) -> CliResult<Option<T>>
    where
        T::Err: Display,
    {
        self.raw(section, key)
            .map(|v| {
                v.trim()
                    .parse()
                    .map_err(|e| config_err(format!("[{section}] {key} = {v}: {e}")))
            })
            .transpose()
    }

    pub fn get_or<T: FromStr>(&self, section: &str, key: &str, default: T) -> CliResult<T>
    where
        T::Err: Display,
    {
        Ok(self.get(section, key)?.unwrap_or(default))
    }

    pub fn require<T: FromStr>(&self, section: &str, key: &str) -> CliResult<T>
    where
        T::Err: Display,
    {
        self.get(section, key)?
            .ok_or_else(|| config_err(format!("missing [{section}] {key}")))
    }

    /// Path relative to the directory of the configuration file.
    pub fn path(&self, section: &str, key: &str) -> CliResult<Option<PathBuf>> {
        Ok(self
            .get::<String>(section, key)?
            .map(|p| self.base.join(p.trim())))
    }

    /// Rejects keys in `sections` that were never read.
    pub fn reject_unknown(&self, sections: &[&str]) -> CliResult<()> {
        let seen = self.seen.borrow();
        for (name, props) in self.ini.iter() {
            let Some(name) = name else {
                if let Some((k, _)) = props.iter().next() {
                    return Err(config_err(format!("key {k} outside any section")));
                }
                continue;
            };
            if !sections.contains(&name) {
                return Err(config_err(format!("unknown section [{name}]")));
            }
            for (k, _) in props.iter() {
                if !seen.contains(&(name.to_string(), k.to_string())) {
                    return Err(config_err(format!("unknown key [{name}] {k}")));
                }
            }
        }
        Ok(())
    }

    /// `[material]` section on top of the defaults.
    pub fn material(&self) -> CliResult<MaterialParams> {
        let d = MaterialParams::default();
        let s = "material";
        MaterialParams::new(
            self.get_or(s, "mu_b", d.mu_b())?,
            self.get_or(s, "mu", d.mu())?,
            self.get_or(s, "kappa", d.kappa())?,
            self.get_or(s, "c0", d.c0())?,
            self.get_or(s, "eta", d.eta())?,
            self.get_or(s, "gamma", d.gamma())?,
        )
        .map_err(|e| config_err(e.to_string()))
    }
}

/// Initial height presets.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialCondition {
    /// `amplitude cos(xi . x)` with `xi = 2 pi k / L`.
    SingleMode { k: [i64; 2], amplitude: f64 },
    /// Random retained modes with weights `|xi|^-decay`, scaled to sup norm `amplitude`.
    RandomSmooth { seed: u64, decay: f64, amplitude: f64 },
    /// Height snapshot in the binary layout of [`crate::io`].
    File(PathBuf),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Integrator {
    Linear,
    Imex,
    Picard,
}

impl FromStr for Integrator {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "linear" => Ok(Self::Linear),
            "imex" => Ok(Self::Imex),
            "picard" => Ok(Self::Picard),
            other => Err(format!("unknown integrator {other:?} (linear, imex, picard)")),
        }
    }
}

impl Display for Integrator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Linear => "linear",
            Self::Imex => "imex",
            Self::Picard => "picard",
        })
    }
}

/// Everything a `simulate` run needs.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub grid: Grid,
    pub params: MaterialParams,
    pub initial: InitialCondition,
    pub integrator: Integrator,
    pub dt: f64,
    pub t_end: f64,
    pub output: PathBuf,
    /// Steps between diagnostics rows.
    pub cadence: usize,
    /// Steps between height snapshots; 0 writes only the first and last state.
    pub snapshot_cadence: usize,
    pub picard_tol: f64,
    pub picard_max_iter: usize,
    /// Compare a linear run against the RK4 reference integrator.
    pub dense_oracle: bool,
}

impl RunConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        Self::from_document(&Document::load(path)?)
    }

    pub fn from_document(doc: &Document) -> CliResult<Self> {
        let n: usize = doc.require("grid", "n")?;
        if !n.is_power_of_two() || n < 4 {
            return Err(config_err(format!(
                "[grid] n = {n} violates: N must be a power of two >= 4"
            )));
        }
        let l = doc.get_or("grid", "length", 2.0 * PI)?;
        let grid = Grid::new(n, l).map_err(|e| config_err(e.to_string()))?;
        let params = doc.material()?;

        let preset: String = doc.require("initial", "preset")?;
        let initial = match preset.as_str() {
            "single-mode" => InitialCondition::SingleMode {
                k: [doc.require("initial", "k1")?, doc.get_or("initial", "k2", 0)?],
                amplitude: doc.require("initial", "amplitude")?,
            },
            "random-smooth" => InitialCondition::RandomSmooth {
                seed: doc.require("initial", "seed")?,
                decay: doc.get_or("initial", "decay", 2.0)?,
                amplitude: doc.require("initial", "amplitude")?,
            },
            "file" => InitialCondition::File(
                doc.path("initial", "path")?
                    .ok_or_else(|| config_err("missing [initial] path"))?,
            ),
            other => {
                return Err(config_err(format!(
                    "unknown preset {other:?} (single-mode, random-smooth, file)"
                )))
            }
        };
        let half = 0.5 * params.gamma();
        match initial {
            InitialCondition::SingleMode { amplitude, .. }
            | InitialCondition::RandomSmooth { amplitude, .. }
                if amplitude.is_nan() || amplitude.abs() >= half =>
            {
                return Err(config_err(format!(
                    "[initial] amplitude = {amplitude} violates the small-data bound |h0| < gamma/2 = {half}"
                )));
            }
            _ => {}
        }

        let dt: f64 = doc.require("run", "dt")?;
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(config_err(format!("[run] dt = {dt} violates: dt > 0")));
        }
        let t_end: f64 = doc.require("run", "t_end")?;
        if !(t_end > 0.0 && t_end.is_finite()) {
            return Err(config_err(format!("[run] t_end = {t_end} must be positive")));
        }
        let cadence: usize = doc.get_or("run", "cadence", 1)?;
        if cadence == 0 {
            return Err(config_err("[run] cadence must be at least 1"));
        }
        let integrator = doc.get_or("run", "integrator", Integrator::Imex)?;
        let dense_oracle = doc.get_or("oracle", "dense", false)?;
        if dense_oracle && integrator != Integrator::Linear {
            return Err(config_err("[oracle] dense = true requires integrator = linear"));
        }
        let cfg = Self {
            grid,
            params,
            initial,
            integrator,
            dt,
            t_end,
            output: doc
                .path("run", "output")?
                .ok_or_else(|| config_err("missing [run] output"))?,
            cadence,
            snapshot_cadence: doc.get_or("run", "snapshot_cadence", 0)?,
            picard_tol: doc.get_or("run", "picard_tol", 1e-12)?,
            picard_max_iter: doc.get_or("run", "picard_max_iter", 50)?,
            dense_oracle,
        };
        doc.reject_unknown(&["grid", "material", "initial", "run", "oracle"])?;
        Ok(cfg)
    }

    /// Number of steps covering `[0, t_end]`.
    pub fn steps(&self) -> usize {
        ((self.t_end / self.dt) * (1.0 - 1e-12)).ceil().max(1.0) as usize
    }

    /// Normalized `key = value` echo of the configuration.
    pub fn echo(&self) -> String {
        let p = &self.params;
        let initial = match &self.initial {
            InitialCondition::SingleMode { k, amplitude } => format!(
                "preset = single-mode\nk1 = {}\nk2 = {}\namplitude = {amplitude}",
                k[0], k[1]
            ),
            InitialCondition::RandomSmooth {
                seed,
                decay,
                amplitude,
            } => format!("preset = random-smooth\nseed = {seed}\ndecay = {decay}\namplitude = {amplitude}"),
            InitialCondition::File(path) => format!("preset = file\npath = {}", path.display()),
        };
        format!(
            "[grid]\nn = {}\nlength = {}\n\n[material]\nmu_b = {}\nmu = {}\nkappa = {}\nc0 = {}\neta = {}\ngamma = {}\n\n[initial]\n{initial}\n\n[run]\nintegrator = {}\ndt = {}\nt_end = {}\ncadence = {}\nsnapshot_cadence = {}\npicard_tol = {}\npicard_max_iter = {}\n\n[oracle]\ndense = {}\n",
            self.grid.n(),
            self.grid.period(),
            p.mu_b(),
            p.mu(),
            p.kappa(),
            p.c0(),
            p.eta(),
            p.gamma(),
            self.integrator,
            self.dt,
            self.t_end,
            self.cadence,
            self.snapshot_cadence,
            self.picard_tol,
            self.picard_max_iter,
            self.dense_oracle,
        )
    }
}

/// Settings read by `verify`; sections other than these are ignored.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub params: MaterialParams,
    pub seed: u64,
    pub theta: f64,
    pub vartheta: f64,
    /// Multiplies the cached `alpha`; any value other than 1 is a mutation check.
    pub alpha_scale: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        let theta = 3.0 * PI / 5.0;
        Self {
            params: MaterialParams::default(),
            seed: 11,
            theta,
            vartheta: (PI - theta) / 10.0,
            alpha_scale: 1.0,
        }
    }
}

impl VerifyConfig {
    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let doc = Document::load(path)?;
        let d = Self::default();
        let theta = doc.get_or("sector", "theta", d.theta)?;
        Ok(Self {
            params: doc.material()?,
            seed: doc.get_or("verify", "seed", d.seed)?,
            theta,
            vartheta: doc.get_or("sector", "vartheta", (PI - theta) / 10.0)?,
            alpha_scale: doc.get_or("verify", "alpha_scale", 1.0)?,
        })
    }
}
