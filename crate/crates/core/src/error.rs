//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("grid size must be even and at least 8, got {0}")]
    GridSize(usize),

    #[error("beta must lie in (0,1), got {0}")]
    BetaRange(f64),

    #[error("gamma function pole at {0} (nonpositive integer)")]
    GammaPole(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("shape not admissible: sum n|a_n| = {norm} exceeds sigma = {sigma}")]
    Admissibility { norm: f64, sigma: f64 },

    #[error("patch overlap: inter-patch denominator {denom} below threshold at node pair ({node_w}, {node_xi})")]
    PatchOverlap {
        denom: f64,
        node_w: usize,
        node_xi: usize,
    },

    #[error("Taylor radius violated at node pair ({node_w}, {node_xi}): |B| = {b_abs} >= |A| = {a_abs}")]
    TaylorRadius {
        node_w: usize,
        node_xi: usize,
        a_abs: f64,
        b_abs: f64,
    },

    #[error("closure degenerate: denominator integral {0} too close to zero")]
    ClosureDegenerate(f64),

    #[error("angular velocity not real: imaginary part {imag} exceeds tolerance {tol}")]
    OmegaNotReal { imag: f64, tol: f64 },

    #[error("epsilon {eps} exceeds the patch-disjointness radius {eps_max} for this configuration")]
    EpsilonTooLarge { eps: f64, eps_max: f64 },

    #[error("Newton solver diverged after {iterations} iterations; residual history {history:?}")]
    NewtonDiverged {
        iterations: usize,
        history: Vec<f64>,
    },

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    #[error("interaction derivative returned a non-finite value at r = {0}")]
    BadInteraction(f64),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("failed to parse {path}: {message}")]
    Parse { path: String, message: String },
}
