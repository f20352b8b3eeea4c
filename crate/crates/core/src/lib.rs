//! Analytic cost and error model for a shuttling-based distributed
//! quantum computer (SDQC) built from trapped-ion unit cells, evaluated
//! against two baselines: a monolithic QCCD grid and a photonically
//! networked DQC.
//!
//! The model is organised as a pipeline:
//!
//! * [`config`] — operation timings, base error rates, improvement
//!   factors, and scenario construction from JSON config files.
//! * [`layout`] — superdense color-code qubit counts and the ion-to-chain
//!   placement used by the distributed architectures.
//! * [`schedule`] — critical-path latency of remote two-qubit gates and
//!   syndrome-extraction rounds, the logical clock, and entanglement
//!   throughput feasibility.
//! * [`error_model`] — transversal-gate error budgets, ion-loss and spare
//!   sizing, and the fitted logical-error-rate model with uncertainty
//!   propagation.
//! * [`apps`] — end-to-end evaluation of application workloads: space
//!   cost, execution time, success probability, parameter sweeps, and the
//!   minimum improvement factor needed to reach a target success rate.
//! * [`validate`] — the built-in validation suite that re-derives the
//!   reference values this model is expected to reproduce.
//! * [`cli`] — the `sdqc-eval` command-line front end.

pub mod apps;
pub mod cli;
pub mod config;
pub mod error_model;
pub mod layout;
pub mod schedule;
pub mod validate;

use config::ArchKind;

/// Crate-wide error type.
///
/// Domain violations carry enough context to identify the offending input
/// without re-running the computation.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Code distance outside the supported odd range.
    #[error("code distance {d} is unsupported; expected an odd value in {min}..={max}")]
    UnsupportedDistance { d: u32, min: u32, max: u32 },

    /// Chain placement is only tabulated for the distributed architectures
    /// at the supported distances.
    #[error("no chain placement tabulated for {arch} at code distance {d}")]
    MappingNotTabulated { arch: ArchKind, d: u32 },

    /// A chain would hold more ions than the trap supports during a
    /// syndrome round.
    #[error(
        "chain {chain} holds {occupancy} ions during syndrome extraction, \
         exceeding the chain capacity {capacity}"
    )]
    CapacityExceeded {
        chain: usize,
        occupancy: u32,
        capacity: u32,
    },

    /// No fitted logical-error parameters for this architecture/distance.
    #[error("no fitted logical-error model for {arch} at code distance {d}")]
    FitMissing { arch: ArchKind, d: u32 },

    /// An operation was called with an argument outside its domain.
    #[error("{op}: {msg}")]
    InvalidArgument { op: &'static str, msg: String },

    /// A configuration value failed validation.
    #[error("configuration error in `{field}`: {msg}")]
    Config { field: String, msg: String },

    /// Success rate failed its monotonicity precondition in lambda.
    #[error(
        "success rate is not monotone in lambda: success({lambda_lo}) = {success_lo} \
         exceeds success({lambda_hi}) = {success_hi}"
    )]
    NotMonotone {
        lambda_lo: f64,
        lambda_hi: f64,
        success_lo: f64,
        success_hi: f64,
    },

    /// Malformed entry in the embedded fitted-parameter dataset.
    #[error("malformed fitted-value literal {literal:?}: {msg}")]
    BadFitLiteral { literal: String, msg: String },

    #[error("config file {path}: {source}")]
    ConfigRead {
        path: String,
        source: std::io::Error,
    },

    #[error("config parse error: {0}")]
    ConfigParse(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(op: &'static str, msg: impl Into<String>) -> Self {
        Error::InvalidArgument {
            op,
            msg: msg.into(),
        }
    }
}
