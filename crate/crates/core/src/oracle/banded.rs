//! Gaussian elimination with partial pivoting for complex banded systems.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Square complex matrix with `kl` sub- and `ku` super-diagonals, stored row-wise
/// with room for the `kl` extra super-diagonals created by row interchanges.
#[derive(Debug, Clone)]
pub struct BandMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    data: Vec<Complex64>,
}

impl BandMatrix {
    pub fn new(n: usize, kl: usize, ku: usize) -> Self {
        let width = 2 * kl + ku + 1;
        Self {
            n,
            kl,
            ku,
            width,
            data: vec![Complex64::new(0.0, 0.0); n * width],
        }
    }

    /// Builds a matrix from `(row, col, value)` entries, summing duplicates.
    pub fn from_entries(n: usize, entries: &[(usize, usize, Complex64)]) -> Self {
        let kl = entries.iter().map(|&(i, j, _)| i.saturating_sub(j)).max().unwrap_or(0);
        let ku = entries.iter().map(|&(i, j, _)| j.saturating_sub(i)).max().unwrap_or(0);
        let mut m = Self::new(n, kl, ku);
        for &(i, j, v) in entries {
            *m.at_mut(i, j) += v;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn bandwidths(&self) -> (usize, usize) {
        (self.kl, self.ku)
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        debug_assert!(j + self.kl >= i && j <= i + self.ku + self.kl);
        i * self.width + (j + self.kl - i)
    }

    fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[self.slot(i, j)]
    }

    fn at_mut(&mut self, i: usize, j: usize) -> &mut Complex64 {
        let s = self.slot(i, j);
        &mut self.data[s]
    }

    fn swap_rows(&mut self, a: usize, b: usize, from: usize, to: usize) {
        for j in from..to {
            let (sa, sb) = (self.slot(a, j), self.slot(b, j));
            self.data.swap(sa, sb);
        }
    }

    /// Solves `A x = rhs`, consuming the matrix.
    pub fn solve(mut self, mut rhs: Vec<Complex64>) -> Result<Vec<Complex64>> {
        let n = self.n;
        assert_eq!(rhs.len(), n, "right-hand side length");
        let reach = self.ku + self.kl;
        let scale = self.data.iter().fold(0.0f64, |m, v| m.max(v.norm()));
        let tiny = scale * 1e-18;
        for k in 0..n {
            let last_row = (k + self.kl).min(n - 1);
            let (mut p, mut best) = (k, self.at(k, k).norm());
            for i in (k + 1)..=last_row {
                let v = self.at(i, k).norm();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best <= tiny || best.is_nan() {
                return Err(Error::SingularSystem { column: k });
            }
            let last_col = (k + reach).min(n - 1);
            if p != k {
                self.swap_rows(k, p, k, last_col + 1);
                rhs.swap(k, p);
            }
            let pivot = self.at(k, k);
            for i in (k + 1)..=last_row {
                let f = self.at(i, k) / pivot;
                if f == Complex64::new(0.0, 0.0) {
                    continue;
                }
                *self.at_mut(i, k) = Complex64::new(0.0, 0.0);
                for j in (k + 1)..=last_col {
                    let u = self.at(k, j);
                    *self.at_mut(i, j) -= f * u;
                }
                let r = rhs[k];
                rhs[i] -= f * r;
            }
        }
        for k in (0..n).rev() {
            let last_col = (k + reach).min(n - 1);
            let mut acc = rhs[k];
            for (j, r) in rhs.iter().enumerate().take(last_col + 1).skip(k + 1) {
                acc -= self.at(k, j) * r;
            }
            rhs[k] = acc / self.at(k, k);
        }
        Ok(rhs)
    }
}
