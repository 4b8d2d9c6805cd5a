//! Physical configuration: fold count, polygon radius, equation kind.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum EquationKind {
    Euler,
    Sqg { beta: f64 },
}

impl EquationKind {
    pub fn beta(&self) -> Option<f64> {
        match self {
            EquationKind::Euler => None,
            EquationKind::Sqg { beta } => Some(*beta),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            EquationKind::Euler => "euler",
            EquationKind::Sqg { .. } => "sqg",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolygonModel {
    pub n_fold: u32,
    pub radius: f64,
    pub kind: EquationKind,
}

impl PolygonModel {
    pub fn new(n_fold: u32, radius: f64, kind: EquationKind) -> Result<Self> {
        if n_fold < 2 {
            return Err(Error::InvalidParameter(format!(
                "fold count must be at least 2, got {n_fold}"
            )));
        }
        if radius == 0.0 || !radius.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "polygon radius must be nonzero and finite, got {radius}"
            )));
        }
        if let EquationKind::Sqg { beta } = kind {
            if !(beta > 0.0 && beta < 1.0) {
                return Err(Error::BetaRange(beta));
            }
        }
        Ok(Self {
            n_fold,
            radius,
            kind,
        })
    }

    pub fn euler(n_fold: u32, radius: f64) -> Result<Self> {
        Self::new(n_fold, radius, EquationKind::Euler)
    }

    pub fn sqg(n_fold: u32, radius: f64, beta: f64) -> Result<Self> {
        Self::new(n_fold, radius, EquationKind::Sqg { beta })
    }

    /// Largest patch size for which the N patches stay safely disjoint:
    /// eps (1 + sigma) must not exceed 45% of the vertex gap
    /// |l| |1 - e^{i 2 pi / N}|.
    pub fn max_epsilon(&self, sigma: f64) -> f64 {
        let gap = self.radius.abs()
            * (num_complex::Complex64::new(1.0, 0.0)
                - num_complex::Complex64::from_polar(
                    1.0,
                    2.0 * std::f64::consts::PI / self.n_fold as f64,
                ))
            .norm();
        0.45 * gap / (1.0 + sigma)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(PolygonModel::euler(2, 1.0).is_ok());
        assert!(PolygonModel::euler(1, 1.0).is_err());
        assert!(PolygonModel::euler(3, 0.0).is_err());
        assert!(PolygonModel::sqg(3, 1.0, 0.5).is_ok());
        assert!(PolygonModel::sqg(3, 1.0, 0.0).is_err());
        assert!(PolygonModel::sqg(3, 1.0, 1.0).is_err());
    }
}
