//! Unit-circle collocation grids, contour quadrature and sine-mode
//! projection.
//!
//! Evaluation nodes w_j = e^{i theta_j} sit on the uniform grid
//! theta_j = 2 pi j / M; quadrature nodes xi_k are offset by half a step so
//! no kernel is ever evaluated on the diagonal xi = w. Contour integrals use
//! the trapezoid rule in arclength including the complex line element
//! d(xi) = i xi d(phi), with a fixed left-to-right summation order.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone)]
pub struct CircleGrid {
    m_nodes: usize,
    theta: Vec<f64>,
    w: Vec<Complex64>,
    xi: Vec<Complex64>,
}

impl CircleGrid {
    /// Build an M-node grid. M must be even and at least 8.
    pub fn new(m_nodes: usize) -> Result<Self> {
        if m_nodes < 8 || m_nodes % 2 != 0 {
            return Err(Error::GridSize(m_nodes));
        }
        let h = 2.0 * PI / m_nodes as f64;
        let theta: Vec<f64> = (0..m_nodes).map(|j| h * j as f64).collect();
        let w: Vec<Complex64> = theta.iter().map(|&t| Complex64::from_polar(1.0, t)).collect();
        let xi: Vec<Complex64> = theta
            .iter()
            .map(|&t| Complex64::from_polar(1.0, t + 0.5 * h))
            .collect();
        Ok(Self {
            m_nodes,
            theta,
            w,
            xi,
        })
    }

    pub fn len(&self) -> usize {
        self.m_nodes
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    /// Evaluation nodes w_j.
    pub fn eval_nodes(&self) -> &[Complex64] {
        &self.w
    }

    /// Half-offset quadrature nodes xi_k.
    pub fn quad_nodes(&self) -> &[Complex64] {
        &self.xi
    }

    /// Uniform angular step 2 pi / M.
    pub fn step(&self) -> f64 {
        2.0 * PI / self.m_nodes as f64
    }

    /// Contour integral of samples given at the xi nodes:
    /// (2 pi / M) sum_k g(xi_k) i xi_k.
    pub fn integrate_xi(&self, samples: &[Complex64]) -> Complex64 {
        debug_assert_eq!(samples.len(), self.m_nodes);
        let mut acc = Complex64::new(0.0, 0.0);
        for (g, &xi) in samples.iter().zip(&self.xi) {
            acc += g * Complex64::new(0.0, 1.0) * xi;
        }
        acc * self.step()
    }

    /// Contour integral of samples given at the w nodes (used by the
    /// angular-velocity closure, which re-uses evaluation nodes).
    pub fn integrate_w(&self, samples: &[Complex64]) -> Complex64 {
        debug_assert_eq!(samples.len(), self.m_nodes);
        let mut acc = Complex64::new(0.0, 0.0);
        for (g, &w) in samples.iter().zip(&self.w) {
            acc += g * Complex64::new(0.0, 1.0) * w;
        }
        acc * self.step()
    }

    /// Sine coefficients f_n = (2/M) sum_j samples_j sin(n theta_j) for
    /// n = 1 .. M/2 - 1.
    pub fn project_sin(&self, samples: &[f64]) -> Vec<f64> {
        debug_assert_eq!(samples.len(), self.m_nodes);
        let m = self.m_nodes;
        let mut coeffs = Vec::with_capacity(m / 2 - 1);
        for n in 1..m / 2 {
            let mut acc = 0.0;
            for (j, &s) in samples.iter().enumerate() {
                acc += s * (n as f64 * self.theta[j]).sin();
            }
            coeffs.push(2.0 * acc / m as f64);
        }
        coeffs
    }

    /// Evaluate sum_n coeffs[n-1] sin(n theta_j) on the grid.
    pub fn synthesize_sin(&self, coeffs: &[f64]) -> Vec<f64> {
        self.theta
            .iter()
            .map(|&t| {
                coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c * ((i + 1) as f64 * t).sin())
                    .sum()
            })
            .collect()
    }
}

/// Gauss-Legendre rule mapped to [0, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes and weights by Newton iteration on P_n; order up to a few
    /// hundred is fine at double precision.
    pub fn new(order: usize) -> Self {
        assert!(order >= 1);
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..(n + 1) / 2 {
            // initial guess on [-1, 1]
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            let (_, dp) = legendre(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            // map [-1,1] -> [0,1]
            nodes[i] = 0.5 * (1.0 - x);
            nodes[n - 1 - i] = 0.5 * (1.0 + x);
            weights[i] = 0.5 * w;
            weights[n - 1 - i] = 0.5 * w;
        }
        Self { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Integrate f over [0, 1].
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        let mut acc = 0.0;
        for (&t, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(t);
        }
        acc
    }
}

/// (P_n(x), P_n'(x)) by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    #[test]
    fn grid_geometry() {
        let g = CircleGrid::new(8).unwrap();
        assert_eq!(g.theta()[0], 0.0);
        // xi offset pi/8; min |w_j - xi_k| = 2 sin(pi/16)
        assert_abs_diff_eq!(g.quad_nodes()[0].arg(), PI / 8.0, epsilon = 1e-15);
        let min = g
            .eval_nodes()
            .iter()
            .flat_map(|w| g.quad_nodes().iter().map(move |xi| (w - xi).norm()))
            .fold(f64::INFINITY, f64::min);
        assert_abs_diff_eq!(min, 2.0 * (PI / 16.0).sin(), epsilon = 1e-14);
    }

    #[test]
    fn grid_rejects_bad_sizes() {
        assert!(CircleGrid::new(7).is_err());
        assert!(CircleGrid::new(6).is_err());
        assert!(CircleGrid::new(0).is_err());
    }

    #[test]
    fn grid_unit_modulus() {
        let g = CircleGrid::new(256).unwrap();
        assert_eq!(g.len(), 256);
        for z in g.eval_nodes().iter().chain(g.quad_nodes()) {
            assert!((z.norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn quadrature_laurent_monomials() {
        // exact for xi^p, |p| <= M/2 - 1: 2 pi i at p = -1, zero otherwise
        let g = CircleGrid::new(64).unwrap();
        for p in -31i32..=31 {
            let samples: Vec<Complex64> = g.quad_nodes().iter().map(|xi| xi.powi(p)).collect();
            let v = g.integrate_xi(&samples);
            let expect = if p == -1 {
                Complex64::new(0.0, 2.0 * PI)
            } else {
                Complex64::new(0.0, 0.0)
            };
            assert!(
                (v - expect).norm() < 1e-13,
                "p = {p}: got {v}, expected {expect}"
            );
        }
    }

    #[test]
    fn project_sin_orthogonality() {
        let g = CircleGrid::new(64).unwrap();
        let s: Vec<f64> = g.theta().iter().map(|&t| (3.0 * t).sin()).collect();
        let c = g.project_sin(&s);
        assert_abs_diff_eq!(c[2], 1.0, epsilon = 1e-14);
        for (i, v) in c.iter().enumerate() {
            if i != 2 {
                assert!(v.abs() < 1e-14);
            }
        }

        let even: Vec<f64> = g.theta().iter().map(|&t| (2.0 * t).cos()).collect();
        for v in g.project_sin(&even) {
            assert!(v.abs() < 1e-14);
        }

        let mix: Vec<f64> = g
            .theta()
            .iter()
            .map(|&t| 2.0 * t.sin() + 0.5 * (5.0 * t).sin())
            .collect();
        let c = g.project_sin(&mix);
        assert_abs_diff_eq!(c[0], 2.0, epsilon = 1e-13);
        assert_abs_diff_eq!(c[4], 0.5, epsilon = 1e-13);
    }

    proptest! {
        #[test]
        fn project_synthesize_identity(coeffs in proptest::collection::vec(-1.0f64..1.0, 1..15)) {
            let g = CircleGrid::new(64).unwrap();
            let samples = g.synthesize_sin(&coeffs);
            let back = g.project_sin(&samples);
            for (i, c) in coeffs.iter().enumerate() {
                prop_assert!((back[i] - c).abs() < 1e-12);
            }
            for v in back.iter().skip(coeffs.len()) {
                prop_assert!(v.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn gauss_legendre_rule() {
        let gl = GaussLegendre::new(16);
        let sum: f64 = gl.weights().iter().sum();
        assert_relative_eq!(sum, 1.0, max_relative = 1e-14);
        // exact for degree <= 31 on [0,1]
        for k in [1usize, 5, 17, 31] {
            let v = gl.integrate(|t| t.powi(k as i32));
            assert_relative_eq!(v, 1.0 / (k as f64 + 1.0), max_relative = 1e-12);
        }
    }
}
