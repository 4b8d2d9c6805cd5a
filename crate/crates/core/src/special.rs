//! Special functions: Gamma, Pochhammer symbols and the kernel constants
//! C_beta and mu_beta used by the generalized SQG functional.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Lanczos coefficients (g = 10.900511), accurate to ~16 digits.
/// From Pugh, "An Analysis of the Lanczos Gamma Approximation" (2004), p. 116.
const LANCZOS_G: f64 = 10.900511;
const LANCZOS_COEFFS: [f64; 11] = [
    2.485_740_891_387_535_5e-5,
    1.051_423_785_817_219_7,
    -3.456_870_972_220_162_5,
    4.512_277_094_668_948,
    -2.982_852_253_235_766_4,
    1.056_397_115_771_267,
    -1.954_287_731_916_458_7e-1,
    1.709_705_434_044_412e-2,
    -5.719_261_174_043_057e-4,
    4.633_994_733_599_057e-6,
    -2.719_949_084_886_077_2e-9,
];
const TWO_SQRT_E_OVER_PI: f64 = 1.860_382_734_205_265_7;

/// Gamma function without pole checking. Reflection formula for x < 0.5.
pub(crate) fn gamma_raw(x: f64) -> f64 {
    if x < 0.5 {
        let s = LANCZOS_COEFFS
            .iter()
            .enumerate()
            .skip(1)
            .fold(LANCZOS_COEFFS[0], |s, (k, c)| s + c / (k as f64 - x));
        std::f64::consts::PI
            / ((std::f64::consts::PI * x).sin()
                * s
                * TWO_SQRT_E_OVER_PI
                * ((0.5 - x + LANCZOS_G) / std::f64::consts::E).powf(0.5 - x))
    } else {
        let s = LANCZOS_COEFFS
            .iter()
            .enumerate()
            .skip(1)
            .fold(LANCZOS_COEFFS[0], |s, (k, c)| s + c / (x + k as f64 - 1.0));
        s * TWO_SQRT_E_OVER_PI * ((x - 0.5 + LANCZOS_G) / std::f64::consts::E).powf(x - 0.5)
    }
}

/// Gamma function. Rejects the poles at x = 0, -1, -2, ...
pub fn gamma(x: f64) -> Result<f64> {
    if x <= 0.0 && x == x.floor() {
        return Err(Error::GammaPole(x));
    }
    Ok(gamma_raw(x))
}

/// Rising factorial (x)_n = x (x+1) ... (x+n-1), with (x)_0 = 1.
pub fn pochhammer(x: f64, n: u32) -> f64 {
    let mut p = 1.0;
    for k in 0..n {
        p *= x + k as f64;
    }
    p
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::BetaRange(beta));
    }
    Ok(())
}

/// Which normalization of C_beta to use.
///
/// The kernel constant is quoted in two forms in the literature:
/// `Printed` keeps Gamma((1-beta)/2) in the denominator, `Standard` uses
/// Gamma(1-beta/2) (the form matching the Gamma(1-beta/2) factors of the
/// spectral formulas). They agree at beta = 1/2. All internal-consistency
/// checks hold under either choice; `Printed` is the default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CBetaVariant {
    #[default]
    Printed,
    Standard,
}

impl CBetaVariant {
    pub fn value(self, beta: f64) -> Result<f64> {
        match self {
            CBetaVariant::Printed => c_beta_printed(beta),
            CBetaVariant::Standard => c_beta_standard(beta),
        }
    }
}

/// C_beta = Gamma(beta/2) / (2^{1-beta} Gamma((1-beta)/2)).
pub fn c_beta_printed(beta: f64) -> Result<f64> {
    check_beta(beta)?;
    Ok(gamma_raw(beta / 2.0) / (2f64.powf(1.0 - beta) * gamma_raw((1.0 - beta) / 2.0)))
}

/// C_beta with Gamma(1 - beta/2) in the denominator.
pub fn c_beta_standard(beta: f64) -> Result<f64> {
    check_beta(beta)?;
    Ok(gamma_raw(beta / 2.0) / (2f64.powf(1.0 - beta) * gamma_raw(1.0 - beta / 2.0)))
}

/// Default C_beta (printed normalization).
pub fn c_beta(beta: f64) -> Result<f64> {
    c_beta_printed(beta)
}

/// mu_beta = C_beta 2 beta Gamma(1-beta) / ((2-beta) Gamma^2(1-beta/2)).
///
/// Coefficient of Im[f'] in the gSQG residual; equals C_beta kappa_beta / pi
/// with kappa_beta the circle-kernel constant.
pub fn mu_beta(beta: f64) -> Result<f64> {
    mu_beta_with(beta, CBetaVariant::Printed)
}

pub fn mu_beta_with(beta: f64, variant: CBetaVariant) -> Result<f64> {
    let c = variant.value(beta)?;
    let g1 = gamma_raw(1.0 - beta);
    let gh = gamma_raw(1.0 - beta / 2.0);
    Ok(c * 2.0 * beta * g1 / ((2.0 - beta) * gh * gh))
}
