//! Thomson polygon point-vortex system: closed-form angular velocities for
//! Newtonian, general-G and (SQG)_beta interactions, pairwise velocities and
//! an RK4 integrator that verifies the rigid-rotation choreography.
//!
//! Complex-plane conventions used throughout the crate:
//! the perpendicular gradient acts as multiplication by i on the radial
//! direction, so a point interaction with radial derivative G' induces
//!     z_m' = i sum_{k != m} (z_m - z_k)/|z_m - z_k| G'(|z_m - z_k|).
//! Newtonian flow has G'(r) = 1/(2 pi r). For (SQG)_beta we take
//! G'(r) = + beta C_beta r^{-1-beta} (minus the naive derivative of
//! C_beta r^{-beta}); this is the sign for which the polygon rotates
//! counterclockwise at the omega_sqg rate, consistent with the patch
//! functional's trivial root.

use crate::error::{Error, Result};
use crate::special::{c_beta, CBetaVariant};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "interaction", rename_all = "lowercase")]
pub enum Interaction {
    Newtonian,
    Sqg { beta: f64 },
}

impl Interaction {
    /// Radial derivative of the interaction potential.
    pub fn g_prime(&self, r: f64) -> f64 {
        match self {
            Interaction::Newtonian => 1.0 / (2.0 * PI * r),
            Interaction::Sqg { beta } => {
                beta * c_beta(*beta).expect("validated beta") * r.powf(-1.0 - beta)
            }
        }
    }

    /// Interaction potential, used only by the energy monitor.
    pub fn g(&self, r: f64) -> f64 {
        match self {
            Interaction::Newtonian => r.ln() / (2.0 * PI),
            Interaction::Sqg { beta } => {
                -c_beta(*beta).expect("validated beta") * r.powf(-beta)
            }
        }
    }

    fn validate(&self) -> Result<()> {
        if let Interaction::Sqg { beta } = self {
            if !(*beta > 0.0 && *beta < 1.0) {
                return Err(Error::BetaRange(*beta));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointConfig {
    pub positions: Vec<Complex64>,
    pub interaction: Interaction,
}

impl PointConfig {
    pub fn new(positions: Vec<Complex64>, interaction: Interaction) -> Result<Self> {
        interaction.validate()?;
        for (m, zm) in positions.iter().enumerate() {
            for zk in positions.iter().skip(m + 1) {
                if (zm - zk).norm() == 0.0 {
                    return Err(Error::InvalidParameter(
                        "point positions must be pairwise distinct".into(),
                    ));
                }
            }
        }
        Ok(Self {
            positions,
            interaction,
        })
    }
}

/// Vertices z_m = l e^{i 2 pi m / N} of the regular N-gon.
pub fn thomson_polygon(n: u32, l: f64, interaction: Interaction) -> Result<PointConfig> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "polygon needs at least 2 vertices, got {n}"
        )));
    }
    if l == 0.0 || !l.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "polygon radius must be nonzero, got {l}"
        )));
    }
    let positions = (0..n)
        .map(|m| Complex64::from_polar(l.abs(), 2.0 * PI * m as f64 / n as f64) * l.signum())
        .collect();
    PointConfig::new(positions, interaction)
}

/// Roots of unity e^{i 2 pi k / N}, k = 1..N-1.
fn unity_roots(n: u32) -> impl Iterator<Item = Complex64> {
    (1..n).map(move |k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64))
}

fn assert_real(sum: Complex64, scale: f64, what: &'static str) -> Result<f64> {
    let tol = 1e-13 * scale.max(1.0);
    if sum.im.abs() > tol {
        return Err(Error::OmegaNotReal {
            imag: sum.im,
            tol,
        });
    }
    Ok(sum.re)
}

/// Omega = (1/(2 pi l^2)) Re sum_k 1/(1 - e^{i 2 pi k/N}).
pub fn omega_newtonian(n: u32, l: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    if l == 0.0 {
        return Err(Error::InvalidParameter("l must be nonzero".into()));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for a in unity_roots(n) {
        sum += 1.0 / (Complex64::new(1.0, 0.0) - a);
    }
    let s = assert_real(sum, n as f64, "newtonian sum")?;
    Ok(s / (2.0 * PI * l * l))
}

/// Omega = (1/l) Re sum_k (1-e^{i2pik/N})/|1-e^{i2pik/N}| G'(l|1-e^{i2pik/N}|).
pub fn omega_general(n: u32, l: f64, g_prime: impl Fn(f64) -> f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    if l == 0.0 {
        return Err(Error::InvalidParameter("l must be nonzero".into()));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for a in unity_roots(n) {
        let chord = Complex64::new(1.0, 0.0) - a;
        let gp = g_prime(l.abs() * chord.norm());
        if !gp.is_finite() {
            return Err(Error::BadInteraction(l.abs() * chord.norm()));
        }
        sum += chord / chord.norm() * gp;
    }
    let s = assert_real(sum, n as f64, "general sum")?;
    Ok(s / l)
}

/// Omega = (beta C_beta / l^{2+beta}) Re sum_k (1-e^{i2pik/N})/|1-e^{i2pik/N}|^{2+beta}.
pub fn omega_sqg(n: u32, l: f64, beta: f64) -> Result<f64> {
    omega_sqg_with(n, l, beta, CBetaVariant::Printed)
}

pub fn omega_sqg_with(n: u32, l: f64, beta: f64, variant: CBetaVariant) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    if l == 0.0 {
        return Err(Error::InvalidParameter("l must be nonzero".into()));
    }
    let c = variant.value(beta)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for a in unity_roots(n) {
        let chord = Complex64::new(1.0, 0.0) - a;
        sum += chord / chord.norm().powf(2.0 + beta);
    }
    let s = assert_real(sum, n as f64, "sqg sum")?;
    Ok(beta * c / l.abs().powf(2.0 + beta) * s)
}

/// Velocities z_m' = i sum_{k != m} (z_m - z_k)/|z_m - z_k| G'(|z_m - z_k|)
/// for an arbitrary interaction derivative.
pub fn velocity_points_general(
    positions: &[Complex64],
    g_prime: impl Fn(f64) -> f64,
) -> Result<Vec<Complex64>> {
    let n = positions.len();
    let mut vel = vec![Complex64::new(0.0, 0.0); n];
    for m in 0..n {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..n {
            if k == m {
                continue;
            }
            let d = positions[m] - positions[k];
            let r = d.norm();
            if r == 0.0 {
                return Err(Error::InvalidParameter(
                    "coincident points in velocity evaluation".into(),
                ));
            }
            let gp = g_prime(r);
            if !gp.is_finite() {
                return Err(Error::BadInteraction(r));
            }
            acc += d / r * gp;
        }
        vel[m] = Complex64::new(0.0, 1.0) * acc;
    }
    Ok(vel)
}

pub fn velocity_points(config: &PointConfig) -> Result<Vec<Complex64>> {
    velocity_points_general(&config.positions, |r| config.interaction.g_prime(r))
}

/// One trajectory sample per step (step 0 = initial data).
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    /// positions[s] holds the N vortex positions after s steps.
    pub positions: Vec<Vec<Complex64>>,
    /// Pairwise interaction energy sum_{m<k} G(|z_m - z_k|) per sample.
    pub energy: Vec<f64>,
}

impl Trajectory {
    pub fn final_positions(&self) -> &[Complex64] {
        self.positions.last().expect("nonempty trajectory")
    }

    pub fn energy_drift(&self) -> f64 {
        let e0 = self.energy[0];
        self.energy
            .iter()
            .map(|e| (e - e0).abs())
            .fold(0.0, f64::max)
    }
}

fn pair_energy(positions: &[Complex64], g: impl Fn(f64) -> f64) -> f64 {
    let n = positions.len();
    let mut acc = 0.0;
    for m in 0..n {
        for k in (m + 1)..n {
            acc += g((positions[m] - positions[k]).norm());
        }
    }
    acc
}

/// Classic fixed-step RK4 on the point system. Aborts with a diagnostic on
/// blow-up (non-finite positions).
pub fn integrate_points(config: &PointConfig, dt: f64, steps: usize) -> Result<Trajectory> {
    if !dt.is_finite() || !(dt * steps as f64).is_finite() {
        return Err(Error::InvalidParameter("dt * steps must be finite".into()));
    }
    let gp = |r: f64| config.interaction.g_prime(r);
    let g = |r: f64| config.interaction.g(r);
    let n = config.positions.len();
    let mut z = config.positions.clone();
    let mut times = Vec::with_capacity(steps + 1);
    let mut positions = Vec::with_capacity(steps + 1);
    let mut energy = Vec::with_capacity(steps + 1);
    times.push(0.0);
    positions.push(z.clone());
    energy.push(pair_energy(&z, g));
    let mut scratch = vec![Complex64::new(0.0, 0.0); n];
    for s in 0..steps {
        let k1 = velocity_points_general(&z, gp)?;
        for i in 0..n {
            scratch[i] = z[i] + 0.5 * dt * k1[i];
        }
        let k2 = velocity_points_general(&scratch, gp)?;
        for i in 0..n {
            scratch[i] = z[i] + 0.5 * dt * k2[i];
        }
        let k3 = velocity_points_general(&scratch, gp)?;
        for i in 0..n {
            scratch[i] = z[i] + dt * k3[i];
        }
        let k4 = velocity_points_general(&scratch, gp)?;
        for i in 0..n {
            z[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            if !z[i].re.is_finite() || !z[i].im.is_finite() {
                return Err(Error::NonFinite("point trajectory (blow-up)"));
            }
        }
        times.push(dt * (s + 1) as f64);
        positions.push(z.clone());
        energy.push(pair_energy(&z, g));
    }
    Ok(Trajectory {
        times,
        positions,
        energy,
    })
}
