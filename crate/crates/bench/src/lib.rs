//! Benchmark fixtures shared by the criterion targets.

use std::f64::consts::PI;

use vesiflow_core::{Grid, HeightField};

/// Smooth two-mode height field of amplitude `a` on an `n x n` lattice of period `2 pi`.
pub fn smooth_field(n: usize, a: f64) -> HeightField {
    let grid = Grid::new(n, 2.0 * PI).expect("valid lattice");
    HeightField::from_fn(grid, |x| a * (x[0].sin() + 0.5 * (2.0 * x[0] - x[1]).cos()))
}
