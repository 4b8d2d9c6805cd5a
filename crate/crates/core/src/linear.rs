//! Closed-form linearized operators at the trivial solution and their
//! spectral coefficients: the circle-kernel constant kappa_beta, the
//! gamma coefficient families and the diagonal mode maps of both equations.
//!
//! The linearization of the Euler functional at the trivial root sends the
//! mode a_n w^{-n} to (n/(2 pi)) a_n sin((n+1) theta); the gSQG one sends it
//! to prefactor(beta) gamma_n a_n sin((n+1) theta). Nonvanishing of the
//! diagonal entries is what invertibility means after truncation, and the
//! gamma_n stay bounded below by a positive multiple of n.

use crate::error::Result;
use crate::shape::FourierShape;
use crate::special::{gamma, pochhammer, CBetaVariant};
use serde::Serialize;
use std::f64::consts::PI;

/// kappa_beta = 2 pi beta Gamma(1-beta) / ((2-beta) Gamma^2(1-beta/2)),
/// the constant in  oint d(xi)/|w-xi|^beta = i kappa_beta w.
pub fn circle_kernel_integral(beta: f64) -> Result<f64> {
    let g1 = gamma(1.0 - beta)?;
    let gh = gamma(1.0 - beta / 2.0)?;
    if !(beta > 0.0 && beta < 1.0) {
        return Err(crate::error::Error::BetaRange(beta));
    }
    Ok(2.0 * PI * beta * g1 / ((2.0 - beta) * gh * gh))
}

/// (gamma_{1,n}, gamma_{2,n}): coefficients of the self-interaction kernel
/// acting on the mode w^{-n}, producing gamma_1 w^{n+2} + gamma_2 conj(w)^n.
pub fn gamma_coeffs(beta: f64, n: u32) -> Result<(f64, f64)> {
    gamma_coeffs_with(beta, n, CBetaVariant::Printed)
}

pub fn gamma_coeffs_with(beta: f64, n: u32, variant: CBetaVariant) -> Result<(f64, f64)> {
    let c = variant.value(beta)?;
    let g1 = gamma(1.0 - beta)?;
    let gh = gamma(1.0 - beta / 2.0)?;
    let gh2 = gh * gh;
    // (x)_0 = 1 makes both parenthesized factors vanish at n = 0
    let ratio1 = pochhammer(2.0 + beta / 2.0, n) / pochhammer(2.0 - beta / 2.0, n);
    let ratio2 = pochhammer(beta / 2.0, n) / pochhammer(-beta / 2.0, n);
    let gamma1 = beta * (1.0 + beta / 2.0) * c * g1 / (2.0 * (2.0 - beta) * gh2) * (1.0 - ratio1);
    let gamma2 = -beta * c * g1 / (4.0 * gh2) * (1.0 - ratio2);
    Ok((gamma1, gamma2))
}

/// gamma_n = 2(1+n)/(1-beta/2) - (1+beta/2)_n/(1-beta/2)_n
///           - (1+beta/2)_{n+1}/(1-beta/2)_{n+1}.
pub fn gamma_n(beta: f64, n: u32) -> Result<f64> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(crate::error::Error::BetaRange(beta));
    }
    let half = beta / 2.0;
    Ok(2.0 * (1.0 + n as f64) / (1.0 - half)
        - pochhammer(1.0 + half, n) / pochhammer(1.0 - half, n)
        - pochhammer(1.0 + half, n + 1) / pochhammer(1.0 - half, n + 1))
}

/// C_beta beta Gamma(1-beta) / (2 Gamma^2(1-beta/2)), the scalar in front of
/// gamma_n in the gSQG diagonal.
pub fn sqg_diagonal_prefactor(beta: f64) -> Result<f64> {
    sqg_diagonal_prefactor_with(beta, CBetaVariant::Printed)
}

pub fn sqg_diagonal_prefactor_with(beta: f64, variant: CBetaVariant) -> Result<f64> {
    let c = variant.value(beta)?;
    let g1 = gamma(1.0 - beta)?;
    let gh = gamma(1.0 - beta / 2.0)?;
    Ok(c * beta * g1 / (2.0 * gh * gh))
}

/// Sine coefficients of the Euler linearization (1/(2 pi)) Im[h']:
/// entry k-1 holds the sin(k theta) coefficient, k = 1 .. modes+1.
pub fn linearized_euler(h: &FourierShape) -> Vec<f64> {
    let mut out = vec![0.0; h.modes() + 1];
    for n in 1..=h.modes() {
        out[n] = n as f64 * h.coeff(n) / (2.0 * PI); // sin((n+1) theta)
    }
    out
}

/// Sine coefficients of the gSQG linearization: a_n maps to
/// prefactor gamma_n a_n on sin((n+1) theta).
pub fn linearized_sqg(beta: f64, h: &FourierShape) -> Result<Vec<f64>> {
    linearized_sqg_with(beta, h, CBetaVariant::Printed)
}

pub fn linearized_sqg_with(
    beta: f64,
    h: &FourierShape,
    variant: CBetaVariant,
) -> Result<Vec<f64>> {
    let pref = sqg_diagonal_prefactor_with(beta, variant)?;
    let mut out = vec![0.0; h.modes() + 1];
    for n in 1..=h.modes() {
        out[n] = pref * gamma_n(beta, n as u32)? * h.coeff(n);
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumRow {
    pub n: u32,
    pub gamma1: f64,
    pub gamma2: f64,
    pub gamma_n: f64,
    /// Diagonal multiplier of sin((n+1) theta) in the linearized operator.
    pub diagonal: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumTable {
    pub beta: f64,
    pub rows: Vec<SpectrumRow>,
}

impl SpectrumTable {
    /// Empirical lower-bound constant min_n gamma_n / n over the table.
    pub fn empirical_c0(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.gamma_n / r.n as f64)
            .fold(f64::INFINITY, f64::min)
    }
}

pub fn spectrum_table(beta: f64, n_max: u32) -> Result<SpectrumTable> {
    spectrum_table_with(beta, n_max, CBetaVariant::Printed)
}

pub fn spectrum_table_with(beta: f64, n_max: u32, variant: CBetaVariant) -> Result<SpectrumTable> {
    let pref = sqg_diagonal_prefactor_with(beta, variant)?;
    let mut rows = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let (gamma1, gamma2) = gamma_coeffs_with(beta, n, variant)?;
        let gn = gamma_n(beta, n)?;
        rows.push(SpectrumRow {
            n,
            gamma1,
            gamma2,
            gamma_n: gn,
            diagonal: pref * gn,
        });
    }
    Ok(SpectrumTable { beta, rows })
}
