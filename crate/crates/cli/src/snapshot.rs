use std::path::{Path, PathBuf};

use vesiflow_core::evolution::snapshot_fields;
use vesiflow_core::MaterialParams;

use crate::config::Document;
use crate::error::{CliError, CliResult};
use crate::io::read_snapshot;

/// One requested plane: `0+` and `0-` select the two sides of the interface.
#[derive(Debug, Clone, PartialEq)]
pub struct Plane {
    pub label: String,
    pub y: f64,
}

pub fn parse_planes(list: &str) -> CliResult<Vec<Plane>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let y = match s {
                "0+" => 0.0,
                "0-" => -0.0,
                other => other
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| CliError::Config(format!("invalid y value {other:?}")))?,
            };
            Ok(Plane {
                label: s.to_string(),
                y,
            })
        })
        .collect::<CliResult<Vec<_>>>()
        .and_then(|v| {
            if v.is_empty() {
                Err(CliError::Config("empty y list".into()))
            } else {
                Ok(v)
            }
        })
}

/// Writes `fields_<y>.csv` for every plane and returns the written paths.
pub fn cmd_snapshot_fields(
    file: &Path,
    planes: &[Plane],
    config: Option<&Path>,
    out: &Path,
) -> CliResult<Vec<PathBuf>> {
    let h = read_snapshot(file)?;
    let params = match config {
        Some(c) => Document::load(c)?.material()?,
        None => MaterialParams::default(),
    };
    if h.max_abs() >= params.gamma() {
        return Err(CliError::Config(format!(
            "snapshot max |h| = {} lies outside the tubular neighbourhood gamma = {}",
            h.max_abs(),
            params.gamma()
        )));
    }
    std::fs::create_dir_all(out)?;
    let grid = *h.grid();
    let mut written = Vec::new();
    for plane in planes {
        let f = snapshot_fields(&h, plane.y, &params)?;
        let path = out.join(format!("fields_{}.csv", plane.label));
        let mut w = csv::Writer::from_path(&path)?;
        let pressure = if plane.y.is_sign_negative() { "pi_minus" } else { "pi_plus" };
        w.write_record(["x1", "x2", "v1", "v2", "w", pressure])?;
        for i in 0..grid.len() {
            let x = grid.point(i);
            w.write_record(
                [x[0], x[1], f.v1[i], f.v2[i], f.w[i], f.pi[i]].map(|v| format!("{v:e}")),
            )?;
        }
        w.flush()?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planes_distinguish_interface_sides() {
        let p = parse_planes("0+, 0-,2.5,-1e-3").unwrap();
        assert_eq!(p.len(), 4);
        assert!(p[0].y == 0.0 && p[0].y.is_sign_positive());
        assert!(p[1].y == 0.0 && p[1].y.is_sign_negative());
        assert_eq!((p[2].y, p[3].y), (2.5, -1e-3));
        assert_eq!(p[1].label, "0-");
        assert!(parse_planes("").is_err());
        assert!(parse_planes("0+,x").is_err());
        assert!(parse_planes("inf").is_err());
    }
}
