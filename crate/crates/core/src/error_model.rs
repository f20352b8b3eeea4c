//! Error budgets: the physical error accumulated by one transversal
//! gate, ion-loss handling with spare qubits, and the fitted
//! logical-error-rate model with uncertainty propagation.
//!
//! The transversal gate error has three parts: the gate, measurement,
//! and entangling operations themselves; shuttling-junction traversals
//! whose errors reach live data; and decoherence over the wall-clock
//! exposure of the gate. Ion loss is handled separately because lost
//! pairs are discarded and replaced from spares rather than corrected,
//! so loss enters as a small failure probability per transversal gate
//! once spares are sized.
//!
//! Logical error rates come from a two-term fit per architecture and
//! distance: `A * p^(alpha d)` for the transversal contribution plus
//! `B * (1 / lambda_se)^(beta d)` for the syndrome-extraction floor.
//! Each fitted parameter carries a one-sigma uncertainty; bounds are
//! propagated by evaluating the fit at the worst-case corners.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::Serialize;

use crate::config::{ArchKind, Scenario};
use crate::schedule::{routing_metrics, schedule};
use crate::{Error, Result};

/// Fitted logical-error-model parameters with one-sigma uncertainties.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitParams {
    pub a: f64,
    pub a_sigma: f64,
    pub b: f64,
    pub b_sigma: f64,
    pub alpha: f64,
    pub alpha_sigma: f64,
    pub beta: f64,
    pub beta_sigma: f64,
}

/// Fitted values in compact `value(uncertainty)` notation, per
/// architecture and code distance: amplitude and exponent of the
/// transversal term, then of the syndrome-extraction term.
const FIT_ROWS: [(ArchKind, u32, &str, &str, &str, &str); 18] = [
    (ArchKind::Sdqc, 3, "5.29(16)", "5.48(20)e-5", "0.624(2)", "0.674(9)"),
    (ArchKind::Sdqc, 5, "3.40(15)e1", "3.10(7)e-5", "0.557(2)", "0.436(4)"),
    (ArchKind::Sdqc, 7, "1.80(16)e2", "5.29(17)e-6", "0.511(3)", "0.412(4)"),
    (ArchKind::Sdqc, 9, "6.56(123)e2", "5.94(36)e-7", "0.460(6)", "0.453(6)"),
    (ArchKind::Sdqc, 11, "3.98(89)e3", "7.02(51)e-8", "0.449(7)", "0.454(6)"),
    (ArchKind::Sdqc, 13, "2.08(51)e4", "7.33(61)e-9", "0.437(6)", "0.464(6)"),
    (ArchKind::Qccd, 3, "5.31(20)", "6.07(24)e-5", "0.624(3)", "0.677(10)"),
    (ArchKind::Qccd, 5, "3.27(32)e1", "3.52(11)e-5", "0.553(6)", "0.438(7)"),
    (ArchKind::Qccd, 7, "1.76(17)e2", "6.06(20)e-6", "0.510(4)", "0.412(4)"),
    (ArchKind::Qccd, 9, "6.00(116)e2", "6.47(39)e-7", "0.456(7)", "0.456(7)"),
    (ArchKind::Qccd, 11, "2.51(57)e3", "6.95(61)e-8", "0.430(7)", "0.465(7)"),
    (ArchKind::Qccd, 13, "1.67(41)e4", "7.37(68)e-9", "0.428(6)", "0.472(6)"),
    (ArchKind::PhotonicDqc, 3, "5.44(20)", "5.63(25)e-5", "0.627(3)", "0.673(11)"),
    (ArchKind::PhotonicDqc, 5, "3.40(34)e1", "3.07(10)e-5", "0.556(6)", "0.447(7)"),
    (ArchKind::PhotonicDqc, 7, "1.22(24)e2", "9.81(101)e-3", "0.483(9)", "0.401(4)"),
    (ArchKind::PhotonicDqc, 9, "2.44(85)e2", "1.43(11)e-2", "0.409(13)", "0.427(7)"),
    (ArchKind::PhotonicDqc, 11, "7.16(233)e2", "3.03(16)e-2", "0.372(10)", "0.426(5)"),
    (ArchKind::PhotonicDqc, 13, "1.63(74)e3", "7.62(35)e-2", "0.339(14)", "0.391(4)"),
];

/// Parse a `value(uncertainty)` literal like `"2.08(51)e4"` into
/// `(value, sigma)`.
///
/// A bare integer in parentheses scales like the last digits of the
/// mantissa: `"5.29(16)"` is `5.29 +- 0.16`. A parenthesised value with
/// its own decimal point is taken at the mantissa's scale:
/// `"5.3(1.2)"` is `5.3 +- 1.2`. A trailing exponent applies to both.
pub fn parse_measured(literal: &str) -> Result<(f64, f64)> {
    let bad = |msg: &str| Error::BadFitLiteral {
        literal: literal.to_string(),
        msg: msg.to_string(),
    };
    let (mantissa, rest) = literal
        .split_once('(')
        .ok_or_else(|| bad("missing uncertainty parentheses"))?;
    let (paren, tail) = rest
        .split_once(')')
        .ok_or_else(|| bad("unclosed uncertainty parentheses"))?;
    let exponent: i32 = match tail {
        "" => 0,
        t if t.starts_with(['e', 'E']) => t[1..]
            .parse()
            .map_err(|_| bad("malformed exponent"))?,
        _ => return Err(bad("unexpected trailing characters")),
    };
    if mantissa.is_empty() || mantissa.parse::<f64>().is_err() {
        return Err(bad("malformed mantissa"));
    }
    if paren.is_empty() || !paren.bytes().all(|b| b.is_ascii_digit() || b == b'.') {
        return Err(bad("uncertainty must be an unsigned number"));
    }
    let decimals = mantissa
        .split_once('.')
        .map(|(_, frac)| frac.len() as i32)
        .unwrap_or(0);
    let sigma_exponent = if paren.contains('.') {
        exponent
    } else {
        exponent - decimals
    };
    let value: f64 = format!("{mantissa}e{exponent}")
        .parse()
        .map_err(|_| bad("malformed mantissa"))?;
    let sigma: f64 = format!("{paren}e{sigma_exponent}")
        .parse()
        .map_err(|_| bad("malformed uncertainty"))?;
    Ok((value, sigma))
}

fn fit_table() -> &'static BTreeMap<(ArchKind, u32), FitParams> {
    static TABLE: OnceLock<BTreeMap<(ArchKind, u32), FitParams>> = OnceLock::new();
    TABLE.get_or_init(|| {
        FIT_ROWS
            .iter()
            .map(|&(arch, d, a, b, alpha, beta)| {
                let (a, a_sigma) = parse_measured(a).expect("embedded fit literal");
                let (b, b_sigma) = parse_measured(b).expect("embedded fit literal");
                let (alpha, alpha_sigma) =
                    parse_measured(alpha).expect("embedded fit literal");
                let (beta, beta_sigma) =
                    parse_measured(beta).expect("embedded fit literal");
                (
                    (arch, d),
                    FitParams {
                        a,
                        a_sigma,
                        b,
                        b_sigma,
                        alpha,
                        alpha_sigma,
                        beta,
                        beta_sigma,
                    },
                )
            })
            .collect()
    })
}

/// Fitted parameters for one architecture and distance.
pub fn fit_params(kind: ArchKind, d: u32) -> Result<&'static FitParams> {
    fit_table()
        .get(&(kind, d))
        .ok_or(Error::FitMissing { arch: kind, d })
}

/// Physical error of one transversal two-qubit gate, by source.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransversalErrorBreakdown {
    /// Gates, measurements, and entangling operations of the teleported
    /// gate itself.
    pub p_operations: f64,
    /// Shuttling-junction traversals whose errors reach live data.
    pub p_junctions: f64,
    /// Idle decoherence over the gate's wall-clock exposure.
    pub p_decoherence: f64,
    pub p_total: f64,
    /// Set when the budget reaches certainty and `p_total` is clamped
    /// to one.
    pub saturated: bool,
}

/// Physical error budget of one transversal two-qubit gate.
///
/// Distributed gates consume a Bell pair: the teleportation circuit
/// costs two-qubit gates, Bell measurements, and corrections, and the
/// data qubits decohere while the pair is distributed and consumed.
/// Purified pairs arrive cleaner, dropping one gate and one correction
/// from the budget. The monolithic grid pays only its local gate plus
/// the junction errors of physically routing the qubits together.
pub fn transversal_gate_error(scenario: &Scenario) -> Result<TransversalErrorBreakdown> {
    let rates = scenario.effective_rates()?;
    let kind = scenario.architecture.kind;
    let sched = schedule(scenario, true)?;
    let routing = routing_metrics(kind, scenario.code_distance, scenario.n_logical)?;

    let p_operations = match kind {
        ArchKind::Sdqc => {
            let gates = if scenario.architecture.purification {
                2.0
            } else {
                3.0
            };
            gates * rates.two_qubit + 2.0 * rates.measurement + gates * rates.single_qubit
        }
        ArchKind::Qccd => rates.two_qubit,
        ArchKind::PhotonicDqc => {
            rates.photonic_entangling
                + 2.0 * rates.two_qubit
                + 2.0 * rates.measurement
                + 3.0 * rates.single_qubit
        }
    };
    let p_junctions = routing.junctions_error * rates.shuttling;
    let exposure_us = match kind {
        ArchKind::Qccd => 2.0 * sched.t_remote_tq_us,
        ArchKind::Sdqc | ArchKind::PhotonicDqc => {
            2.0 * sched.t_ed_us + 4.0 * sched.t_remote_tq_us
        }
    };
    let p_decoherence = exposure_us / 1000.0 * rates.idle_per_ms;

    let raw_total = p_operations + p_junctions + p_decoherence;
    let saturated = raw_total >= 1.0;
    Ok(TransversalErrorBreakdown {
        p_operations,
        p_junctions,
        p_decoherence,
        p_total: if saturated { 1.0 } else { raw_total },
        saturated,
    })
}

/// Probability that a Bell pair loses an ion somewhere along its
/// junction traversals.
pub fn pair_loss_probability(loss_per_junction: f64, junctions: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&loss_per_junction) {
        return Err(Error::invalid(
            "pair_loss_probability",
            format!("loss per junction must be in [0, 1), got {loss_per_junction}"),
        ));
    }
    if !(junctions >= 0.0) || !junctions.is_finite() {
        return Err(Error::invalid(
            "pair_loss_probability",
            format!("junction count must be nonnegative and finite, got {junctions}"),
        ));
    }
    Ok(-f64::exp_m1(junctions * f64::ln_1p(-loss_per_junction)))
}

/// Cumulative log-factorials `ln(0!) ..= ln(n!)`.
fn ln_factorials(n: u32) -> Vec<f64> {
    let mut lf = Vec::with_capacity(n as usize + 1);
    lf.push(0.0);
    let mut acc = 0.0;
    for k in 1..=n {
        acc += f64::from(k).ln();
        lf.push(acc);
    }
    lf
}

/// Probability that a transversal gate fails for lack of Bell pairs:
/// more than `n_spare` of its `n_required + n_spare` pairs are lost.
///
/// Exact binomial tail, evaluated in log space and summed from the
/// smaller side so tiny tails keep full relative precision.
pub fn gate_loss_probability(p_pair: f64, n_required: u32, n_spare: u32) -> Result<f64> {
    if !(0.0..=1.0).contains(&p_pair) {
        return Err(Error::invalid(
            "gate_loss_probability",
            format!("pair loss probability must be in [0, 1], got {p_pair}"),
        ));
    }
    let n = n_required + n_spare;
    let s = n_spare;
    if p_pair <= 0.0 || s >= n {
        return Ok(0.0);
    }
    if p_pair >= 1.0 {
        return Ok(1.0);
    }
    let lf = ln_factorials(n);
    let ln_p = p_pair.ln();
    let ln_q = f64::ln_1p(-p_pair);
    let ln_term = |k: u32| {
        lf[n as usize] - lf[k as usize] - lf[(n - k) as usize]
            + f64::from(k) * ln_p
            + f64::from(n - k) * ln_q
    };
    let mean = f64::from(n) * p_pair;
    if f64::from(s) + 1.0 > mean {
        Ok((s + 1..=n).map(|k| ln_term(k).exp()).sum())
    } else {
        let lower: f64 = (0..=s).map(|k| ln_term(k).exp()).sum();
        Ok(-f64::exp_m1(lower.ln()))
    }
}

/// Smallest spare count holding the loss-induced gate failure below
/// `threshold`.
pub fn size_spares(p_pair: f64, n_required: u32, threshold: f64) -> Result<u32> {
    if !(threshold > 0.0) || !threshold.is_finite() {
        return Err(Error::invalid(
            "size_spares",
            format!("threshold must be positive and finite, got {threshold}"),
        ));
    }
    let cap = 10 * n_required + 64;
    let mut n_spare = 0;
    while gate_loss_probability(p_pair, n_required, n_spare)? >= threshold {
        n_spare += 1;
        if n_spare > cap {
            return Err(Error::invalid(
                "size_spares",
                format!(
                    "no spare count up to {cap} brings the loss rate below {threshold:e}"
                ),
            ));
        }
    }
    Ok(n_spare)
}

/// Monte Carlo estimate of the loss-induced gate failure rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonteCarloEstimate {
    pub trials: u64,
    pub exceedances: u64,
    pub fraction: f64,
}

/// Sample the gate-failure rate directly: draw the number of lost pairs
/// per gate and count trials exceeding the spare budget.
///
/// Deterministic for a given seed and trial count. Trials are processed
/// in fixed-size chunks, each on its own counter-mode substream, so the
/// result does not depend on how the chunks are scheduled.
pub fn monte_carlo_gate_loss(
    p_pair: f64,
    n_required: u32,
    n_spare: u32,
    trials: u64,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    if !(0.0..=1.0).contains(&p_pair) {
        return Err(Error::invalid(
            "monte_carlo_gate_loss",
            format!("pair loss probability must be in [0, 1], got {p_pair}"),
        ));
    }
    if trials == 0 {
        return Err(Error::invalid(
            "monte_carlo_gate_loss",
            "at least one trial is required",
        ));
    }
    let n = u64::from(n_required) + u64::from(n_spare);
    let dist = Binomial::new(n, p_pair)
        .map_err(|e| Error::invalid("monte_carlo_gate_loss", e.to_string()))?;

    const CHUNK: u64 = 1_000_000;
    let mut exceedances = 0u64;
    let mut done = 0u64;
    let mut chunk_index = 0u64;
    while done < trials {
        let len = CHUNK.min(trials - done);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(chunk_index);
        for _ in 0..len {
            if dist.sample(&mut rng) > u64::from(n_spare) {
                exceedances += 1;
            }
        }
        done += len;
        chunk_index += 1;
    }
    Ok(MonteCarloEstimate {
        trials,
        exceedances,
        fraction: exceedances as f64 / trials as f64,
    })
}

/// Which term of the fitted model dominates at an operating point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// Transversal-gate errors dominate; improving physical gates helps.
    TransversalDominated,
    /// The syndrome-extraction floor dominates; only cleaner extraction
    /// rounds help.
    SyndromeDominated,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::TransversalDominated => "transversal_dominated",
            Regime::SyndromeDominated => "syndrome_dominated",
        }
    }
}

/// Logical error rate per logical qubit and logical clock cycle, with
/// one-sigma fit bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogicalErrorEstimate {
    pub central: f64,
    pub lower: f64,
    pub upper: f64,
    pub regime: Regime,
}

fn check_logical_inputs(p_trans: f64, lambda_se: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p_trans) {
        return Err(Error::invalid(
            "logical_error",
            format!("transversal error must be in [0, 1], got {p_trans}"),
        ));
    }
    if !(lambda_se > 0.0) || !lambda_se.is_finite() {
        return Err(Error::invalid(
            "logical_error",
            format!("lambda_se must be positive and finite, got {lambda_se}"),
        ));
    }
    Ok(())
}

/// Evaluate the fitted logical error model.
///
/// Bounds come from the fit corners: the upper bound takes both
/// amplitudes high and both exponents in the direction that raises the
/// value, which flips for the extraction term when `lambda_se` drops
/// below one (its base `1 / lambda_se` then exceeds one).
pub fn logical_error(
    kind: ArchKind,
    d: u32,
    p_trans: f64,
    lambda_se: f64,
) -> Result<LogicalErrorEstimate> {
    check_logical_inputs(p_trans, lambda_se)?;
    let fit = fit_params(kind, d)?;
    let dd = f64::from(d);
    let trans_term = |a: f64, alpha: f64| {
        if p_trans <= 0.0 {
            0.0
        } else {
            a * p_trans.powf(alpha * dd)
        }
    };
    let se_base = 1.0 / lambda_se;
    let se_term = |b: f64, beta: f64| b * se_base.powf(beta * dd);

    let central = trans_term(fit.a, fit.alpha) + se_term(fit.b, fit.beta);
    let (beta_up, beta_down) = if lambda_se >= 1.0 {
        (fit.beta - fit.beta_sigma, fit.beta + fit.beta_sigma)
    } else {
        (fit.beta + fit.beta_sigma, fit.beta - fit.beta_sigma)
    };
    let upper = trans_term(fit.a + fit.a_sigma, fit.alpha - fit.alpha_sigma)
        + se_term(fit.b + fit.b_sigma, beta_up);
    let lower = trans_term(fit.a - fit.a_sigma, fit.alpha + fit.alpha_sigma)
        + se_term(fit.b - fit.b_sigma, beta_down);

    let regime = if p_trans > crossover(kind, d, lambda_se)? {
        Regime::TransversalDominated
    } else {
        Regime::SyndromeDominated
    };
    Ok(LogicalErrorEstimate {
        central,
        lower,
        upper,
        regime,
    })
}

/// Transversal error at which the two fitted terms contribute equally.
/// Below it the extraction floor dominates the logical error rate.
pub fn crossover(kind: ArchKind, d: u32, lambda_se: f64) -> Result<f64> {
    if !(lambda_se > 0.0) || !lambda_se.is_finite() {
        return Err(Error::invalid(
            "crossover",
            format!("lambda_se must be positive and finite, got {lambda_se}"),
        ));
    }
    let fit = fit_params(kind, d)?;
    let dd = f64::from(d);
    Ok((fit.b / (fit.a * lambda_se.powf(fit.beta * dd))).powf(1.0 / (fit.alpha * dd)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{ArchitectureSpec, ImprovementFactors, Scenario};

    fn close_rel(actual: f64, expected: f64, rel: f64) {
        let tol = rel * expected.abs();
        assert!(
            (actual - expected).abs() <= tol,
            "expected {expected:e}, got {actual:e}"
        );
    }

    fn scenario(kind: ArchKind, n_logical: u64, lambda: f64) -> Scenario {
        Scenario {
            architecture: ArchitectureSpec {
                kind,
                ..ArchitectureSpec::default()
            },
            code_distance: 13,
            n_logical,
            improvements: ImprovementFactors {
                lambda,
                lambda_se: lambda,
            },
            ..Scenario::default()
        }
    }

    #[test]
    fn measured_literals_parse_to_value_and_sigma() {
        assert_eq!(parse_measured("5.29(16)").unwrap(), (5.29, 0.16));
        assert_eq!(parse_measured("2.08(51)e4").unwrap(), (20800.0, 5100.0));
        assert_eq!(parse_measured("0.674(9)").unwrap(), (0.674, 0.009));
        assert_eq!(parse_measured("6.00(116)e2").unwrap(), (600.0, 116.0));
        assert_eq!(parse_measured("1.43(11)e-2").unwrap(), (0.0143, 0.0011));
        assert_eq!(parse_measured("5.3(1.2)").unwrap(), (5.3, 1.2));
    }

    #[test]
    fn malformed_literals_are_rejected() {
        for bad in ["5.29", "5.29(16", "5.29(ab)", "(16)", "5.29(16)x3", "5.29(-1)"] {
            assert!(
                matches!(parse_measured(bad), Err(Error::BadFitLiteral { .. })),
                "{bad:?} should fail"
            );
        }
    }

    #[test]
    fn fit_table_covers_all_architectures_and_distances() {
        for kind in ArchKind::ALL {
            for d in crate::layout::TABULATED_DISTANCES {
                fit_params(kind, d).unwrap();
            }
        }
        assert!(matches!(
            fit_params(ArchKind::Sdqc, 15),
            Err(Error::FitMissing { .. })
        ));
        let fit = fit_params(ArchKind::Sdqc, 13).unwrap();
        assert_eq!(fit.a, 2.08e4);
        assert_eq!(fit.a_sigma, 0.51e4);
        assert_eq!(fit.b, 7.33e-9);
        assert_eq!(fit.alpha, 0.437);
        assert_eq!(fit.beta_sigma, 0.006);
    }

    #[test]
    fn transversal_error_at_reference_points() {
        let cases = [
            (ArchKind::Sdqc, 132, 1.0, 0.00131802702),
            (ArchKind::Qccd, 132, 1.0, 0.002030239360689437),
            (ArchKind::PhotonicDqc, 132, 1.0, 0.02935648798),
            (ArchKind::Sdqc, 2871, 10.0, 0.0005120416380000001),
            (ArchKind::Qccd, 2871, 10.0, 0.0008208127767233872),
            (ArchKind::PhotonicDqc, 2871, 10.0, 0.002935648798),
        ];
        for (kind, nl, lambda, expected) in cases {
            let b = transversal_gate_error(&scenario(kind, nl, lambda)).unwrap();
            close_rel(b.p_total, expected, 1e-12);
            assert!(!b.saturated);
            close_rel(
                b.p_operations + b.p_junctions + b.p_decoherence,
                b.p_total,
                1e-15,
            );
        }
    }

    #[test]
    fn purification_shrinks_the_budget_by_the_expected_factor() {
        for (nl, expected) in [(132, 1.2948784520157453), (2, 1.3584283663087031)] {
            let plain = transversal_gate_error(&scenario(ArchKind::Sdqc, nl, 1.0))
                .unwrap()
                .p_total;
            let mut s = scenario(ArchKind::Sdqc, nl, 1.0);
            s.architecture.purification = true;
            let purified = transversal_gate_error(&s).unwrap().p_total;
            close_rel(plain / purified, expected, 1e-12);
        }
    }

    #[test]
    fn logical_error_bands_at_the_large_operating_point() {
        let cases = [
            (
                ArchKind::Sdqc,
                0.0005120416380000001,
                (
                    6.973449352711457e-15,
                    1.1012974305551116e-14,
                    1.8279444274959628e-14,
                ),
            ),
            (
                ArchKind::Qccd,
                0.0008208127767233872,
                (
                    5.3125546906314314e-14,
                    1.1851664584737005e-13,
                    2.52292205094171e-13,
                ),
            ),
            (
                ArchKind::PhotonicDqc,
                0.002935648798,
                (
                    5.348949295855418e-7,
                    6.407222284001064e-7,
                    7.89495139906279e-7,
                ),
            ),
        ];
        for (kind, p_trans, (lo, c, hi)) in cases {
            let est = logical_error(kind, 13, p_trans, 10.0).unwrap();
            close_rel(est.lower, lo, 1e-12);
            close_rel(est.central, c, 1e-12);
            close_rel(est.upper, hi, 1e-12);
            assert!(est.lower <= est.central && est.central <= est.upper);
        }
    }

    #[test]
    fn idle_floor_comes_from_the_extraction_term_alone() {
        let est = logical_error(ArchKind::Sdqc, 13, 0.0, 10.0).unwrap();
        close_rel(est.lower, 5.216380623744807e-15, 1e-12);
        close_rel(est.central, 6.809323615096935e-15, 1e-12);
        close_rel(est.upper, 8.827149914615825e-15, 1e-12);
        assert_eq!(est.regime, Regime::SyndromeDominated);

        let qccd = logical_error(ArchKind::Qccd, 13, 0.0, 10.0).unwrap();
        close_rel(qccd.central, 5.3884950452727976e-15, 1e-12);
        let ph = logical_error(ArchKind::PhotonicDqc, 13, 0.0, 10.0).unwrap();
        close_rel(ph.central, 6.294409175778101e-7, 1e-12);
    }

    #[test]
    fn crossover_reference_points() {
        close_rel(
            crossover(ArchKind::Sdqc, 13, 1.0).unwrap(),
            0.00642633704316097,
            1e-12,
        );
        close_rel(
            crossover(ArchKind::Sdqc, 13, 10.0).unwrap(),
            0.0005574149370219813,
            1e-12,
        );
    }

    #[test]
    fn regime_tracks_the_crossover() {
        let syn = logical_error(ArchKind::Sdqc, 13, 1.318e-3, 1.0).unwrap();
        assert_eq!(syn.regime, Regime::SyndromeDominated);
        let trans = logical_error(ArchKind::Qccd, 13, 0.0008208127767233872, 10.0).unwrap();
        assert_eq!(trans.regime, Regime::TransversalDominated);
    }

    #[test]
    fn bound_direction_flips_when_extraction_degrades() {
        // With lambda_se below one the base 1/lambda_se exceeds one, so a
        // larger exponent must now raise the upper bound, not lower it.
        for lambda_se in [0.25, 0.5, 1.0, 2.0, 10.0] {
            let est = logical_error(ArchKind::Qccd, 9, 1e-3, lambda_se).unwrap();
            assert!(
                est.lower <= est.central && est.central <= est.upper,
                "bounds disordered at lambda_se = {lambda_se}"
            );
        }
    }

    #[test]
    fn pair_loss_reference_points() {
        close_rel(
            pair_loss_probability(1e-5, 538.0).unwrap(),
            0.005365580474453383,
            1e-12,
        );
        close_rel(
            pair_loss_probability(1e-6, 11494.0).unwrap(),
            0.011428202020385204,
            1e-12,
        );
        assert_eq!(pair_loss_probability(0.5, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn gate_loss_reference_points() {
        close_rel(
            gate_loss_probability(5.366e-3, 127, 0).unwrap(),
            0.4950606639203027,
            1e-10,
        );
        close_rel(
            gate_loss_probability(5.366e-3, 127, 9).unwrap(),
            4.550683244003026e-9,
            1e-10,
        );
        let p_pair = pair_loss_probability(1e-6, 11494.0).unwrap();
        close_rel(
            gate_loss_probability(p_pair, 127, 8).unwrap(),
            2.850754974084309e-5,
            1e-10,
        );
        close_rel(
            gate_loss_probability(p_pair, 127, 9).unwrap(),
            4.366071458117192e-6,
            1e-10,
        );
    }

    #[test]
    fn gate_loss_matches_exhaustive_enumeration() {
        // Frozen values from summing all 2^n loss patterns directly.
        close_rel(gate_loss_probability(0.1, 5, 2).unwrap(), 0.0256915, 1e-10);
        close_rel(
            gate_loss_probability(0.5, 8, 4).unwrap(),
            0.80615234375,
            1e-12,
        );
        close_rel(
            gate_loss_probability(1e-5, 10, 2).unwrap(),
            2.1998515047519e-13,
            1e-10,
        );
    }

    #[test]
    fn gate_loss_edge_cases() {
        assert_eq!(gate_loss_probability(0.0, 10, 0).unwrap(), 0.0);
        assert_eq!(gate_loss_probability(1.0, 10, 2).unwrap(), 1.0);
        assert_eq!(gate_loss_probability(0.3, 0, 5).unwrap(), 0.0);
        assert!(gate_loss_probability(1.5, 10, 2).is_err());
    }

    #[test]
    fn spare_sizing_reference_points() {
        let p_fh = pair_loss_probability(1e-5, 538.0).unwrap();
        let threshold_fh = 0.01 * 0.00131802702;
        assert_eq!(size_spares(p_fh, 127, threshold_fh).unwrap(), 6);

        let p_ec = pair_loss_probability(1e-6, 11494.0).unwrap();
        let threshold_ec = 0.01 * 0.0005120416380000001;
        assert_eq!(size_spares(p_ec, 127, threshold_ec).unwrap(), 9);
    }

    #[test]
    fn spare_sizing_rejects_a_nonpositive_threshold() {
        assert!(size_spares(0.01, 127, 0.0).is_err());
    }

    #[test]
    fn monte_carlo_agrees_with_the_exact_tail() {
        let exact = gate_loss_probability(0.1, 5, 2).unwrap();
        let trials = 200_000;
        let mc = monte_carlo_gate_loss(0.1, 5, 2, trials, 7).unwrap();
        let standard_error = (exact * (1.0 - exact) / trials as f64).sqrt();
        assert!(
            (mc.fraction - exact).abs() <= 3.0 * standard_error,
            "fraction {} vs exact {exact} (3 sigma = {})",
            mc.fraction,
            3.0 * standard_error
        );
    }

    #[test]
    fn monte_carlo_is_deterministic_across_chunk_boundaries() {
        let a = monte_carlo_gate_loss(0.05, 20, 2, 1_500_000, 42).unwrap();
        let b = monte_carlo_gate_loss(0.05, 20, 2, 1_500_000, 42).unwrap();
        assert_eq!(a, b);
        let c = monte_carlo_gate_loss(0.05, 20, 2, 1_500_000, 43).unwrap();
        assert_ne!(a.exceedances, c.exceedances);
    }
}
