//! End-to-end application evaluation: space cost, execution time, success
//! probability, parameter sweeps, and the minimum hardware improvement
//! needed to reach a target success rate.

use serde::Serialize;

use crate::config::{ArchKind, ImprovementFactors, Scenario};
use crate::error_model::{
    gate_loss_probability, logical_error, pair_loss_probability, size_spares,
    transversal_gate_error, LogicalErrorEstimate, TransversalErrorBreakdown,
};
use crate::layout::code_qubit_counts;
use crate::schedule::{routing_metrics, schedule};
use crate::{Error, Result};

/// Workload of one benchmark application.
///
/// Gate and idle counts are totals over the whole computation (all shots
/// for the sampling workload). `gates_per_layer` is the peak number of
/// simultaneous transversal two-qubit gates, which sizes the gate
/// teleportation hardware.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApplicationSpec {
    pub name: &'static str,
    pub n_logical: u64,
    pub layers_per_shot: f64,
    pub logical_gates: f64,
    pub logical_idles: f64,
    pub shots: f64,
    pub gates_per_layer: u64,
}

/// Fermi-Hubbard dynamics simulation: a sampling workload of ten
/// thousand shots on 132 logical qubits.
pub fn fermi_hubbard() -> ApplicationSpec {
    ApplicationSpec {
        name: "fermi-hubbard",
        n_logical: 132,
        layers_per_shot: 8787.0,
        logical_gates: 331024.0,
        logical_idles: 828860.0,
        shots: 10000.0,
        gates_per_layer: 42,
    }
}

/// Elliptic curve discrete logarithm over a 256-bit curve: one long shot
/// on 2871 logical qubits.
pub fn ecdlp() -> ApplicationSpec {
    ApplicationSpec {
        name: "ecdlp",
        n_logical: 2871,
        layers_per_shot: 1.4 * (1u64 << 27) as f64,
        logical_gates: 1.4 * (1u64 << 34) as f64,
        logical_idles: 4.91e11,
        shots: 1.0,
        gates_per_layer: 343,
    }
}

pub fn by_name(name: &str) -> Result<ApplicationSpec> {
    match name.to_ascii_lowercase().as_str() {
        "fermi-hubbard" | "fermi_hubbard" | "fermi" => Ok(fermi_hubbard()),
        "ecdlp" => Ok(ecdlp()),
        other => Err(Error::invalid(
            "application",
            format!("unknown application {other:?}; expected fermi-hubbard or ecdlp"),
        )),
    }
}

pub fn all_applications() -> Vec<ApplicationSpec> {
    vec![fermi_hubbard(), ecdlp()]
}

/// Physical qubit counts of a full machine, by function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpaceCost {
    /// Data qubits across all logical qubits.
    pub data: u64,
    /// Syndrome extraction overhead: the syndrome qubits plus their Bell
    /// partners (and, with photonic links, a second set covering the
    /// segmented readout).
    pub syndrome_extraction: u64,
    /// Bell pairs reserved for the peak layer of transversal gates,
    /// including spares.
    pub gate_teleportation: u64,
    pub total: u64,
}

/// Physical qubit count of a machine running `gates_per_layer`
/// simultaneous transversal gates on `n_logical` logical qubits.
pub fn space_cost(
    kind: ArchKind,
    d: u32,
    n_logical: u64,
    gates_per_layer: u64,
    n_spare: u32,
) -> Result<SpaceCost> {
    let counts = code_qubit_counts(d)?;
    let data = counts.n_data * n_logical;
    let syndrome_extraction = match kind {
        ArchKind::PhotonicDqc => (2 * counts.n_syndrome + 2 * counts.n_segmented) * n_logical,
        ArchKind::Sdqc | ArchKind::Qccd => 2 * counts.n_syndrome * n_logical,
    };
    let gate_teleportation = match kind {
        ArchKind::Sdqc => 2 * (counts.n_data + u64::from(n_spare)) * gates_per_layer,
        ArchKind::Qccd => 0,
        ArchKind::PhotonicDqc => 2 * counts.n_data * gates_per_layer,
    };
    Ok(SpaceCost {
        data,
        syndrome_extraction,
        gate_teleportation,
        total: data + syndrome_extraction + gate_teleportation,
    })
}

/// Success probability of the whole computation, with fit bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SuccessRate {
    pub central: f64,
    pub lower: f64,
    pub upper: f64,
    /// The central logical error rate has saturated; the computation
    /// cannot succeed at this operating point.
    pub saturated: bool,
}

/// Probability that every logical gate and idle step of the workload
/// succeeds. The lower bound pairs the upper error bounds, and vice
/// versa.
pub fn success_rate(
    app: &ApplicationSpec,
    p_logical: &LogicalErrorEstimate,
    p_idle: &LogicalErrorEstimate,
) -> SuccessRate {
    let one = |p: f64, q: f64| {
        if 2.0 * p >= 1.0 || q >= 1.0 {
            0.0
        } else {
            (app.logical_gates * f64::ln_1p(-2.0 * p)
                + app.logical_idles * f64::ln_1p(-q))
            .exp()
        }
    };
    SuccessRate {
        central: one(p_logical.central, p_idle.central),
        lower: one(p_logical.upper, p_idle.upper),
        upper: one(p_logical.lower, p_idle.lower),
        saturated: 2.0 * p_logical.central >= 1.0 || p_idle.central >= 1.0,
    }
}

/// Wall-clock execution time of the workload.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExecutionTime {
    pub seconds: f64,
    pub days: f64,
}

pub fn execution_time(app: &ApplicationSpec, t_logical_clock_us: f64) -> ExecutionTime {
    let us = app.layers_per_shot * t_logical_clock_us * app.shots;
    let seconds = us / 1.0e6;
    ExecutionTime {
        seconds,
        days: seconds / 86400.0,
    }
}

/// Full evaluation of one application at one operating point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalResult {
    pub application: &'static str,
    pub architecture: ArchKind,
    pub code_distance: u32,
    pub lambda: f64,
    pub lambda_se: f64,
    pub n_logical: u64,
    pub n_spare: u32,
    pub space: SpaceCost,
    pub transversal: TransversalErrorBreakdown,
    /// Probability a distributed Bell pair is lost in transit.
    pub pair_loss: f64,
    /// Residual gate-failure probability after spares absorb losses.
    pub gate_loss: f64,
    pub p_logical: LogicalErrorEstimate,
    pub p_idle: LogicalErrorEstimate,
    pub success: SuccessRate,
    pub t_logical_clock_us: f64,
    pub execution: ExecutionTime,
}

/// Evaluate an application on a scenario.
///
/// The application dictates the machine size, so the scenario's
/// `n_logical` is replaced by the application's. Spares are sized only
/// for the shuttling architecture, holding the loss-induced gate failure
/// below one percent of the transversal error budget.
pub fn evaluate(app: &ApplicationSpec, scenario: &Scenario) -> Result<EvalResult> {
    let mut scn = scenario.clone();
    scn.n_logical = app.n_logical;
    scn.validate()?;

    let kind = scn.architecture.kind;
    let d = scn.code_distance;
    let lambda_se = scn.improvements.lambda_se;
    let sched = schedule(&scn, true)?;
    let transversal = transversal_gate_error(&scn)?;
    let rates = scn.effective_rates()?;

    let (pair_loss, gate_loss, n_spare) = match kind {
        ArchKind::Sdqc => {
            let routing = routing_metrics(kind, d, scn.n_logical)?;
            let counts = code_qubit_counts(d)?;
            let n_data = u32::try_from(counts.n_data)
                .expect("data qubit counts fit in u32 for supported distances");
            let p_pair = pair_loss_probability(rates.shuttling, routing.junctions_loss)?;
            let n_spare = size_spares(p_pair, n_data, 0.01 * transversal.p_total)?;
            let residual = gate_loss_probability(p_pair, n_data, n_spare)?;
            (p_pair, residual, n_spare)
        }
        ArchKind::Qccd | ArchKind::PhotonicDqc => (0.0, 0.0, 0),
    };

    let p_logical = logical_error(kind, d, transversal.p_total, lambda_se)?;
    let p_idle = logical_error(kind, d, 0.0, lambda_se)?;
    let success = success_rate(app, &p_logical, &p_idle);
    let space = space_cost(kind, d, app.n_logical, app.gates_per_layer, n_spare)?;
    let execution = execution_time(app, sched.t_logical_clock_us);

    Ok(EvalResult {
        application: app.name,
        architecture: kind,
        code_distance: d,
        lambda: scn.improvements.lambda,
        lambda_se,
        n_logical: app.n_logical,
        n_spare,
        space,
        transversal,
        pair_loss,
        gate_loss,
        p_logical,
        p_idle,
        success,
        t_logical_clock_us: sched.t_logical_clock_us,
        execution,
    })
}

/// One row of a sweep: the scenario plus its result, with failures
/// captured per row so one bad point does not abort the sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub scenario: Scenario,
    pub outcome: std::result::Result<EvalResult, String>,
}

/// Evaluate an application over every scenario in order.
pub fn sweep(app: &ApplicationSpec, scenarios: &[Scenario]) -> Vec<SweepRow> {
    scenarios
        .iter()
        .map(|scenario| SweepRow {
            scenario: scenario.clone(),
            outcome: evaluate(app, scenario).map_err(|e| e.to_string()),
        })
        .collect()
}

/// Result of searching for the minimum improvement factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum FrontierOutcome {
    /// Smallest improvement factor reaching the target, rounded to three
    /// significant figures.
    Reachable(f64),
    /// The target stays out of reach across the whole search range.
    Unreachable,
}

const LAMBDA_SEARCH_LO: f64 = 0.1;
const LAMBDA_SEARCH_HI: f64 = 1000.0;

fn round_to_3_significant(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let exponent = x.abs().log10().floor() as i32;
    let scale = 10f64.powi(exponent - 2);
    (x / scale).round() * scale
}

/// Smallest uniform improvement factor at which the application's
/// central success probability reaches `target`.
///
/// Searches lambda in [0.1, 1000] with both improvement factors moving
/// together, by bisection on a log scale. Success must be monotone in
/// lambda over the range; that is checked by sampling first. A target at
/// or below zero is trivially satisfied at the bottom of the range.
pub fn min_improvement_for_target(
    app: &ApplicationSpec,
    base: &Scenario,
    target: f64,
) -> Result<FrontierOutcome> {
    if !target.is_finite() || target > 1.0 {
        return Err(Error::invalid(
            "min_improvement_for_target",
            format!("target must be a probability no greater than 1, got {target}"),
        ));
    }
    if target <= 0.0 {
        return Ok(FrontierOutcome::Reachable(LAMBDA_SEARCH_LO));
    }

    let success_at = |lambda: f64| -> Result<f64> {
        let mut scn = base.clone();
        scn.improvements = ImprovementFactors {
            lambda,
            lambda_se: lambda,
        };
        Ok(evaluate(app, &scn)?.success.central)
    };

    let samples = 9;
    let ratio = LAMBDA_SEARCH_HI / LAMBDA_SEARCH_LO;
    let mut previous: Option<(f64, f64)> = None;
    for i in 0..samples {
        let lambda = LAMBDA_SEARCH_LO * ratio.powf(i as f64 / (samples - 1) as f64);
        let success = success_at(lambda)?;
        if let Some((prev_lambda, prev_success)) = previous {
            if prev_success > success + 1e-12 {
                return Err(Error::NotMonotone {
                    lambda_lo: prev_lambda,
                    lambda_hi: lambda,
                    success_lo: prev_success,
                    success_hi: success,
                });
            }
        }
        previous = Some((lambda, success));
    }

    if success_at(LAMBDA_SEARCH_HI)? < target {
        return Ok(FrontierOutcome::Unreachable);
    }
    if success_at(LAMBDA_SEARCH_LO)? >= target {
        return Ok(FrontierOutcome::Reachable(LAMBDA_SEARCH_LO));
    }

    let (mut lo, mut hi) = (LAMBDA_SEARCH_LO, LAMBDA_SEARCH_HI);
    for _ in 0..100 {
        let mid = (lo * hi).sqrt();
        if mid <= lo || mid >= hi {
            break;
        }
        if success_at(mid)? >= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(FrontierOutcome::Reachable(round_to_3_significant(hi)))
}
