use crate::geometry::HeightField;

/// Height field at time `t` together with stepping statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct SimState {
    pub t: f64,
    pub h: HeightField,
    pub step: usize,
    /// Correction sweeps of the most recent Picard step (0 for other steppers).
    pub picard_iterations: usize,
    /// Largest measured contraction ratio of the most recent Picard step.
    pub last_contraction: Option<f64>,
}

impl SimState {
    pub fn new(h: HeightField) -> Self {
        Self {
            t: 0.0,
            h,
            step: 0,
            picard_iterations: 0,
            last_contraction: None,
        }
    }

    pub(crate) fn advanced(&self, h: HeightField, dt: f64) -> Self {
        Self {
            t: self.t + dt,
            h,
            step: self.step + 1,
            picard_iterations: 0,
            last_contraction: None,
        }
    }
}
