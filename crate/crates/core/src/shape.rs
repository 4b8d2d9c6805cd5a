//! Boundary perturbation f(w) = sum_{n>=1} a_n w^{-n} with real
//! coefficients, the unknown of the patch problem.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Default admissibility radius for sum n |a_n| (must stay below 1 for the
/// conformal map to be bilipschitz).
pub const SIGMA_DEFAULT: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct FourierShape {
    coeffs: Vec<f64>,
}

impl FourierShape {
    pub fn zero(modes: usize) -> Self {
        Self {
            coeffs: vec![0.0; modes],
        }
    }

    /// coeffs[i] holds a_{i+1}.
    pub fn from_coeffs(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    /// Single mode a_n = amplitude.
    pub fn single_mode(n: usize, amplitude: f64) -> Self {
        assert!(n >= 1);
        let mut coeffs = vec![0.0; n];
        coeffs[n - 1] = amplitude;
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn modes(&self) -> usize {
        self.coeffs.len()
    }

    /// a_n (1-based); zero beyond the truncation.
    pub fn coeff(&self, n: usize) -> f64 {
        if n >= 1 && n <= self.coeffs.len() {
            self.coeffs[n - 1]
        } else {
            0.0
        }
    }

    /// (f(z), f'(z)). For |z| = 1 the inverse power z^{-1} is conj(z).
    pub fn eval(&self, z: Complex64) -> (Complex64, Complex64) {
        let zinv = 1.0 / z;
        let mut value = Complex64::new(0.0, 0.0);
        let mut deriv = Complex64::new(0.0, 0.0);
        let mut p = zinv; // z^{-n}
        for (i, &a) in self.coeffs.iter().enumerate() {
            let n = (i + 1) as f64;
            value += a * p;
            deriv -= n * a * p * zinv;
            p *= zinv;
        }
        (value, deriv)
    }

    /// (f, f') at every node.
    pub fn sample(&self, nodes: &[Complex64]) -> (Vec<Complex64>, Vec<Complex64>) {
        let mut vals = Vec::with_capacity(nodes.len());
        let mut ders = Vec::with_capacity(nodes.len());
        for &z in nodes {
            let (v, d) = self.eval(z);
            vals.push(v);
            ders.push(d);
        }
        (vals, ders)
    }

    /// sum n |a_n|, the bilipschitz control quantity.
    pub fn weighted_norm(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| (i + 1) as f64 * a.abs())
            .sum()
    }

    pub fn check_admissible(&self, sigma: f64) -> Result<()> {
        let norm = self.weighted_norm();
        if norm > sigma {
            return Err(Error::Admissibility { norm, sigma });
        }
        Ok(())
    }
}
