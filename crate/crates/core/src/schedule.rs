//! Latency model: operation sequences for remote gates, syndrome
//! extraction, and Bell pair distribution, plus the logical clock built
//! from them.
//!
//! Two-qubit gates slow down with chain length, so every gate entry
//! records the occupancy of the chain it runs in. Distributed
//! architectures overlap Bell pair preparation and the syndrome readout
//! with data-qubit operations of the surrounding rounds; entries hidden
//! that way are flagged `pipelined` and drop off the critical path unless
//! the schedule is evaluated with pipelining disabled. The monolithic
//! grid has no such overlap and always pays its full sequence.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::config::{ArchKind, ArchitectureSpec, OperationTimes, Scenario};
use crate::layout::{chain_mapping, code_qubit_counts, max_gate_chain_size};
use crate::{Error, Result};

/// Primitive operation classes with distinct durations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum OpKind {
    TwoQubitGate,
    SingleQubitGate,
    Measurement,
    Cooling,
    PhotonicEntangling,
    StableTransport,
    FastTransport,
    Split,
    Merge,
    PhysicalSwap,
}

impl OpKind {
    pub fn name(self) -> &'static str {
        match self {
            OpKind::TwoQubitGate => "two_qubit_gate",
            OpKind::SingleQubitGate => "single_qubit_gate",
            OpKind::Measurement => "measurement",
            OpKind::Cooling => "cooling",
            OpKind::PhotonicEntangling => "photonic_entangling",
            OpKind::StableTransport => "stable_transport",
            OpKind::FastTransport => "fast_transport",
            OpKind::Split => "split",
            OpKind::Merge => "merge",
            OpKind::PhysicalSwap => "physical_swap",
        }
    }
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Multiplicity of an operation in a sequence. Routing-dependent counts
/// stay symbolic until resolved against the layout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Count {
    Fixed(f64),
    /// Mean chain-to-chain routing distance, in unit hops.
    MeanHops,
    /// Mean routing distance plus a fixed local detour.
    MeanHopsPlus(f64),
    /// Mean number of in-place swaps needed along a route.
    MeanSwaps,
}

impl Count {
    pub fn resolve(self, routing: &RoutingMetrics) -> f64 {
        match self {
            Count::Fixed(n) => n,
            Count::MeanHops => routing.mean_hops,
            Count::MeanHopsPlus(extra) => routing.mean_hops + extra,
            Count::MeanSwaps => routing.mean_swaps,
        }
    }
}

/// One step of an operation sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpEntry {
    pub kind: OpKind,
    pub count: Count,
    /// Ions resident in the chain while a two-qubit gate runs. `None` for
    /// operations whose duration is chain-independent.
    pub chain_size: Option<u32>,
    /// Hidden behind data-qubit operations of neighbouring rounds, hence
    /// off the critical path when pipelining is active.
    pub pipelined: bool,
}

impl OpEntry {
    fn new(kind: OpKind, count: Count) -> OpEntry {
        OpEntry {
            kind,
            count,
            chain_size: None,
            pipelined: false,
        }
    }

    fn gate(count: Count, chain_size: u32) -> OpEntry {
        OpEntry {
            kind: OpKind::TwoQubitGate,
            count,
            chain_size: Some(chain_size),
            pipelined: false,
        }
    }

    fn hidden(mut self) -> OpEntry {
        self.pipelined = true;
        self
    }
}

/// The three recurring latency blocks of the logical clock.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Role {
    RemoteGate,
    SeRound,
    EntanglementDistribution,
}

impl Role {
    pub fn name(self) -> &'static str {
        match self {
            Role::RemoteGate => "remote_gate",
            Role::SeRound => "se_round",
            Role::EntanglementDistribution => "ed",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Mean routing quantities for a machine of `n_logical` logical qubits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RoutingMetrics {
    /// Mean transport distance between interacting logical qubits, in
    /// unit hops.
    pub mean_hops: f64,
    /// Mean ion swaps a route requires (monolithic grid only).
    pub mean_swaps: f64,
    /// Junction traversals whose error reaches the data block of a
    /// transversal gate.
    pub junctions_error: f64,
    /// Junction traversals a distributed Bell pair is exposed to for ion
    /// loss, including distribution and detection transport.
    pub junctions_loss: f64,
}

/// Routing metrics for one architecture at a given size.
///
/// Remote operations connect two logical qubits, so at least two must
/// exist. In the shuttling network, pair distribution crosses the whole
/// route but its transport errors are absorbed by discarding damaged
/// pairs; only the two detection-side junction traversals touch live
/// data. The monolithic grid moves the data qubits themselves, so every
/// junction on the route counts.
pub fn routing_metrics(kind: ArchKind, d: u32, n_logical: u64) -> Result<RoutingMetrics> {
    if n_logical < 2 {
        return Err(Error::invalid(
            "routing_metrics",
            format!("remote operations need at least 2 logical qubits, got {n_logical}"),
        ));
    }
    let counts = code_qubit_counts(d)?;
    let nl = n_logical as f64;
    Ok(match kind {
        ArchKind::Sdqc => {
            let chains = chain_mapping(kind, d)?.chains.len() as f64;
            let mean_hops = 2.0 * chains * (nl + 1.0) / 3.0;
            RoutingMetrics {
                mean_hops,
                mean_swaps: 0.0,
                junctions_error: 2.0,
                junctions_loss: (4.0 + mean_hops) + 2.0,
            }
        }
        ArchKind::Qccd => {
            let scale = (counts.n_physical as f64 * nl).sqrt();
            RoutingMetrics {
                mean_hops: 1.3 * scale + 2.0,
                mean_swaps: 0.23 * scale + 0.1,
                junctions_error: 2.0 * (0.4 * scale + 2.0),
                junctions_loss: 0.0,
            }
        }
        ArchKind::PhotonicDqc => RoutingMetrics {
            mean_hops: 3.0,
            mean_swaps: 0.0,
            junctions_error: 2.0,
            junctions_loss: 4.0 + 2.0,
        },
    })
}

/// Duration of a two-qubit gate in a chain of `n` ions: linear in the
/// chain length with a floor for short chains.
pub fn tq_gate_time(times: &OperationTimes, n: u32) -> f64 {
    let scaled = times.two_qubit_slope_us * f64::from(n) - times.two_qubit_offset_us;
    scaled.max(times.two_qubit_floor_us)
}

fn op_duration(times: &OperationTimes, entry: &OpEntry) -> f64 {
    match entry.kind {
        OpKind::TwoQubitGate => {
            let n = entry
                .chain_size
                .expect("two-qubit gate entries always carry a chain size");
            tq_gate_time(times, n)
        }
        OpKind::SingleQubitGate => times.single_qubit_us,
        OpKind::Measurement => times.measurement_us,
        OpKind::Cooling => times.cooling_us,
        OpKind::PhotonicEntangling => times.photonic_entangling_us,
        OpKind::StableTransport => times.stable_transport_us,
        OpKind::FastTransport => times.fast_transport_us,
        OpKind::Split => times.split_us,
        OpKind::Merge => times.merge_us,
        OpKind::PhysicalSwap => times.physical_swap_us,
    }
}

/// Operation sequence of one latency block.
///
/// Distributed remote gate: merge the distributed Bell half into the data
/// chain, teleport the gate (one two-qubit gate, one single-qubit
/// correction), recool, split, then ship the measured ion to the detector
/// over two fast hops. Pair distribution runs concurrently and appears
/// under its own role. The monolithic grid instead routes the qubits
/// together with swaps and gates locally.
///
/// Syndrome extraction is the superdense readout: seven two-qubit gates
/// in the resident chain, one basis change, recooling and a merge/split
/// per segment (segmented layouts pay one extra of each). Distributed
/// architectures read the syndrome out through Bell measurements that are
/// themselves pipelined; the grid measures in place and pays detection
/// plus a fixed shuttle overhead every round.
pub fn operation_sequence(
    arch: &ArchitectureSpec,
    d: u32,
    role: Role,
) -> Result<Vec<OpEntry>> {
    use Count::{Fixed, MeanHops, MeanHopsPlus, MeanSwaps};
    use OpKind::*;

    let seq = match (arch.kind, role) {
        (ArchKind::Sdqc | ArchKind::PhotonicDqc, Role::RemoteGate) => vec![
            OpEntry::new(Merge, Fixed(1.0)),
            OpEntry::gate(Fixed(1.0), arch.chain_capacity),
            OpEntry::new(SingleQubitGate, Fixed(1.0)),
            OpEntry::new(Cooling, Fixed(1.0)),
            OpEntry::new(Split, Fixed(1.0)),
            OpEntry::new(FastTransport, Fixed(2.0)),
            OpEntry::new(Measurement, Fixed(1.0)),
        ],
        (ArchKind::Sdqc, Role::EntanglementDistribution) => vec![
            OpEntry::gate(Fixed(1.0), arch.chain_capacity).hidden(),
            OpEntry::new(SingleQubitGate, Fixed(1.0)).hidden(),
            OpEntry::new(Split, Fixed(1.0)).hidden(),
            OpEntry::new(StableTransport, MeanHopsPlus(3.0)).hidden(),
        ],
        (ArchKind::PhotonicDqc, Role::EntanglementDistribution) => vec![
            OpEntry::new(PhotonicEntangling, Fixed(1.0)).hidden(),
            OpEntry::new(StableTransport, Fixed(3.0)).hidden(),
        ],
        (ArchKind::Sdqc | ArchKind::PhotonicDqc, Role::SeRound) => {
            let counts = code_qubit_counts(d)?;
            let segments = if counts.n_segmented > 0 { 2.0 } else { 1.0 };
            vec![
                OpEntry::gate(Fixed(7.0), max_gate_chain_size(arch.kind, d)?),
                OpEntry::new(SingleQubitGate, Fixed(1.0)),
                OpEntry::new(Cooling, Fixed(segments)),
                OpEntry::new(Merge, Fixed(1.0)),
                OpEntry::new(Split, Fixed(segments)),
                OpEntry::new(Measurement, Fixed(1.0)).hidden(),
                OpEntry::new(FastTransport, Fixed(2.0)).hidden(),
            ]
        }
        (ArchKind::Qccd, Role::RemoteGate) => vec![
            OpEntry::gate(Fixed(1.0), 2),
            OpEntry::new(Cooling, Fixed(1.0)),
            OpEntry::new(StableTransport, MeanHops),
            OpEntry::new(Merge, MeanSwaps),
            OpEntry::new(Split, MeanSwaps),
            OpEntry::new(PhysicalSwap, MeanSwaps),
        ],
        (ArchKind::Qccd, Role::EntanglementDistribution) => vec![],
        (ArchKind::Qccd, Role::SeRound) => vec![
            OpEntry::gate(Fixed(7.0), 2),
            OpEntry::new(SingleQubitGate, Fixed(1.0)),
            OpEntry::new(Cooling, Fixed(7.0)),
            OpEntry::new(Merge, Fixed(7.0)),
            OpEntry::new(Split, Fixed(6.0)),
            OpEntry::new(Measurement, Fixed(1.0)),
            OpEntry::new(StableTransport, Fixed(20.0)),
        ],
    };
    Ok(seq)
}

/// Resolved latencies of one scenario, in microseconds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScheduleResult {
    pub architecture: ArchKind,
    pub code_distance: u32,
    pub n_logical: u64,
    pub pipelined: bool,
    /// Latency of one transversal remote two-qubit gate. Includes pair
    /// distribution when pipelining is disabled.
    pub t_remote_tq_us: f64,
    /// Latency of distributing one Bell pair end to end, whether or not
    /// it sits on the critical path.
    pub t_ed_us: f64,
    /// One round of syndrome extraction.
    pub t_se_round_us: f64,
    /// One logical clock cycle: a remote gate plus `d` rounds of
    /// syndrome extraction.
    pub t_logical_clock_us: f64,
    /// Critical-path time per `role.operation` key. Sums reproduce the
    /// role totals above.
    pub breakdown: BTreeMap<String, f64>,
}

/// Resolve the schedule of a scenario.
///
/// With `pipelined` set, entries flagged as hidden are excluded from the
/// critical path (they still appear in `t_ed_us`); without it, pair
/// distribution extends the remote gate and the hidden readout steps
/// extend the extraction round.
pub fn schedule(scenario: &Scenario, pipelined: bool) -> Result<ScheduleResult> {
    scenario.validate()?;
    let arch = &scenario.architecture;
    let d = scenario.code_distance;
    chain_mapping(arch.kind, d)?.check_capacity(arch.chain_capacity)?;
    let routing = routing_metrics(arch.kind, d, scenario.n_logical)?;
    let times = &scenario.times;

    fn role_total(
        breakdown: &mut BTreeMap<String, f64>,
        arch: &ArchitectureSpec,
        d: u32,
        routing: &RoutingMetrics,
        times: &OperationTimes,
        role: Role,
        include_hidden: bool,
    ) -> Result<f64> {
        let mut total = 0.0;
        for entry in operation_sequence(arch, d, role)? {
            if entry.pipelined && !include_hidden {
                continue;
            }
            let contribution = entry.count.resolve(routing) * op_duration(times, &entry);
            if contribution == 0.0 {
                continue;
            }
            *breakdown
                .entry(format!("{role}.{}", entry.kind))
                .or_insert(0.0) += contribution;
            total += contribution;
        }
        Ok(total)
    }

    let mut breakdown = BTreeMap::new();
    let t_ed_us = role_total(
        &mut breakdown,
        arch,
        d,
        &routing,
        times,
        Role::EntanglementDistribution,
        true,
    )?;
    if pipelined {
        // Distribution is off every critical path; keep it out of the
        // per-role accounting too.
        breakdown.retain(|key, _| !key.starts_with("ed."));
    }
    let t_remote_gate =
        role_total(&mut breakdown, arch, d, &routing, times, Role::RemoteGate, false)?;
    let t_se_round_us =
        role_total(&mut breakdown, arch, d, &routing, times, Role::SeRound, !pipelined)?;

    let t_remote_tq_us = if pipelined {
        t_remote_gate
    } else {
        t_remote_gate + t_ed_us
    };
    let t_logical_clock_us = t_remote_tq_us + f64::from(d) * t_se_round_us;

    Ok(ScheduleResult {
        architecture: arch.kind,
        code_distance: d,
        n_logical: scenario.n_logical,
        pipelined,
        t_remote_tq_us,
        t_ed_us,
        t_se_round_us,
        t_logical_clock_us,
        breakdown,
    })
}

/// Bell pairs one factory must supply per logical clock cycle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairsPerFactory {
    pub total: f64,
    /// Pairs that must cross the photonic interface rather than being
    /// produced locally.
    pub photonic_only: Option<f64>,
    /// True when the value comes from the packing-based estimate instead
    /// of a published count.
    pub approximate: bool,
}

/// Bell pair demand per factory and logical clock cycle.
///
/// The distance-13 operating point uses published counts. Other
/// distances fall back to an estimate from the chain packing: the
/// busiest chain consumes one pair per two syndrome qubits per round
/// plus one per two data qubits for the transversal gate.
pub fn pairs_per_factory(kind: ArchKind, d: u32) -> Result<PairsPerFactory> {
    match kind {
        ArchKind::Qccd => Ok(PairsPerFactory {
            total: 0.0,
            photonic_only: None,
            approximate: false,
        }),
        ArchKind::Sdqc if d == 13 => Ok(PairsPerFactory {
            total: 198.0,
            photonic_only: None,
            approximate: false,
        }),
        ArchKind::PhotonicDqc if d == 13 => Ok(PairsPerFactory {
            total: 276.0,
            photonic_only: Some(185.0),
            approximate: false,
        }),
        ArchKind::Sdqc | ArchKind::PhotonicDqc => {
            let layout = chain_mapping(kind, d)?;
            let pair_load = |c: &crate::layout::ChainAssignment| {
                f64::from(d) * f64::from(c.nonsegmented + c.segmented) / 2.0
                    + f64::from(c.data) / 2.0
            };
            let busiest = layout
                .chains
                .iter()
                .max_by(|a, b| pair_load(a).total_cmp(&pair_load(b)))
                .expect("tabulated layouts are nonempty");
            let total = pair_load(busiest);
            let photonic_only = match kind {
                ArchKind::PhotonicDqc => {
                    let local = f64::from(d) * f64::from(busiest.nonsegmented) / 2.0;
                    Some((total - local).max(0.0))
                }
                _ => None,
            };
            Ok(PairsPerFactory {
                total,
                photonic_only,
                approximate: true,
            })
        }
    }
}

/// Supply versus demand of Bell pairs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThroughputReport {
    pub architecture: ArchKind,
    pub code_distance: u32,
    /// Pairs per second one factory produces, preparing capacity/2 pairs
    /// per gate-plus-rotation cycle.
    pub factory_throughput_hz: f64,
    pub pairs_per_cycle: PairsPerFactory,
    /// Pairs per second the busiest factory must deliver.
    pub demand_hz: f64,
    /// Demand that must cross the photonic interface.
    pub photonic_only_demand_hz: Option<f64>,
    /// Heralded pair rate of one photonic interface.
    pub interface_rate_hz: Option<f64>,
    /// Cycle time the demand was evaluated against, microseconds.
    pub cycle_us: f64,
    pub feasible: bool,
}

/// Compare factory supply against per-cycle demand.
///
/// Demand defaults to the scenario's own logical clock; pass
/// `cycle_us_override` to evaluate against a different cycle time.
pub fn throughput_check(
    scenario: &Scenario,
    cycle_us_override: Option<f64>,
) -> Result<ThroughputReport> {
    let arch = &scenario.architecture;
    if arch.chain_capacity % 2 != 0 {
        return Err(Error::invalid(
            "throughput_check",
            format!(
                "factory chains pair up ions, so capacity must be even, got {}",
                arch.chain_capacity
            ),
        ));
    }
    let cycle_us = match cycle_us_override {
        Some(v) if v > 0.0 && v.is_finite() => v,
        Some(v) => {
            return Err(Error::invalid(
                "throughput_check",
                format!("cycle override must be a positive duration, got {v}"),
            ))
        }
        None => schedule(scenario, true)?.t_logical_clock_us,
    };

    let pairs = pairs_per_factory(arch.kind, scenario.code_distance)?;
    let prep_cycle_us = tq_gate_time(&scenario.times, arch.chain_capacity)
        + scenario.times.single_qubit_us;
    let factory_throughput_hz =
        (f64::from(arch.chain_capacity) / 2.0) / prep_cycle_us * 1.0e6;

    let demand_hz = pairs.total / cycle_us * 1.0e6;
    let photonic_only_demand_hz = pairs.photonic_only.map(|p| p / cycle_us * 1.0e6);
    let interface_rate_hz = match arch.kind {
        ArchKind::PhotonicDqc => Some(1.0e6 / scenario.times.photonic_entangling_us),
        _ => None,
    };

    let feasible = factory_throughput_hz >= demand_hz
        && match (interface_rate_hz, photonic_only_demand_hz) {
            (Some(rate), Some(need)) => rate >= need,
            _ => true,
        };

    Ok(ThroughputReport {
        architecture: arch.kind,
        code_distance: scenario.code_distance,
        factory_throughput_hz,
        pairs_per_cycle: pairs,
        demand_hz,
        photonic_only_demand_hz,
        interface_rate_hz,
        cycle_us,
        feasible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{ImprovementFactors, Scenario};

    fn close(actual: f64, expected: f64) {
        let tol = 1e-9 * expected.abs().max(1.0);
        assert!(
            (actual - expected).abs() <= tol,
            "expected {expected}, got {actual}"
        );
    }

    fn scenario(kind: ArchKind, d: u32, n_logical: u64) -> Scenario {
        Scenario {
            architecture: ArchitectureSpec {
                kind,
                ..ArchitectureSpec::default()
            },
            code_distance: d,
            n_logical,
            improvements: ImprovementFactors::default(),
            ..Scenario::default()
        }
    }

    #[test]
    fn gate_time_has_a_floor() {
        let t = OperationTimes::default();
        close(tq_gate_time(&t, 2), 100.0);
        close(tq_gate_time(&t, 11), 100.0);
        close(tq_gate_time(&t, 12), 105.96);
        close(tq_gate_time(&t, 13), 119.29);
        close(tq_gate_time(&t, 58), 719.14);
        close(tq_gate_time(&t, 60), 745.8);
    }

    #[test]
    fn shuttled_routing_distance_grows_linearly() {
        let r = routing_metrics(ArchKind::Sdqc, 13, 132).unwrap();
        close(r.mean_hops, 532.0);
        close(r.junctions_loss, 538.0);
        close(r.junctions_error, 2.0);
        let r = routing_metrics(ArchKind::Sdqc, 13, 2871).unwrap();
        close(r.mean_hops, 11488.0);
        close(r.junctions_loss, 11494.0);
    }

    #[test]
    fn grid_routing_follows_square_root_fits() {
        let r = routing_metrics(ArchKind::Qccd, 13, 2871).unwrap();
        close(r.mean_hops, 1109.9501207184373);
        close(r.mean_swaps, 196.12194443480047);
        assert_eq!(r.junctions_loss, 0.0);
    }

    #[test]
    fn routing_requires_two_logical_qubits() {
        assert!(routing_metrics(ArchKind::Sdqc, 13, 1).is_err());
    }

    #[test]
    fn shuttled_remote_gate_latency() {
        let s = scenario(ArchKind::Sdqc, 13, 132);
        let sched = schedule(&s, true).unwrap();
        close(sched.t_remote_tq_us, 1716.0);
        close(sched.t_se_round_us, 6022.98);
        close(sched.t_logical_clock_us, 80014.74);
    }

    #[test]
    fn extraction_round_shrinks_without_segmented_chains() {
        let s = scenario(ArchKind::Sdqc, 3, 132);
        let sched = schedule(&s, true).unwrap();
        close(sched.t_se_round_us, 1396.03);
    }

    #[test]
    fn grid_latencies_at_the_large_operating_point() {
        let s = scenario(ArchKind::Qccd, 13, 2871);
        let sched = schedule(&s, true).unwrap();
        close(sched.t_se_round_us, 5807.0);
        close(sched.t_remote_tq_us, 141888.26732396372);
        close(sched.t_logical_clock_us, 217379.26732396372);
        assert_eq!(sched.t_ed_us, 0.0);
    }

    #[test]
    fn distribution_latencies() {
        let s = scenario(ArchKind::Sdqc, 13, 2871);
        close(schedule(&s, true).unwrap().t_ed_us, 539806.7000000001);
        let s = scenario(ArchKind::PhotonicDqc, 13, 132);
        close(schedule(&s, true).unwrap().t_ed_us, 4140.7);
    }

    #[test]
    fn disabling_pipelining_moves_hidden_work_onto_the_clock() {
        let s = scenario(ArchKind::Sdqc, 13, 132);
        let with = schedule(&s, true).unwrap();
        let without = schedule(&s, false).unwrap();
        close(without.t_remote_tq_us - with.t_remote_tq_us, with.t_ed_us);
        close(
            without.t_se_round_us - with.t_se_round_us,
            s.times.measurement_us + 2.0 * s.times.fast_transport_us,
        );
        assert!(without.t_logical_clock_us > with.t_logical_clock_us);
    }

    #[test]
    fn pipelining_does_not_change_the_grid() {
        let s = scenario(ArchKind::Qccd, 13, 2871);
        let with = schedule(&s, true).unwrap();
        let without = schedule(&s, false).unwrap();
        assert_eq!(with.t_logical_clock_us, without.t_logical_clock_us);
    }

    #[test]
    fn breakdown_sums_reproduce_role_totals() {
        for kind in ArchKind::ALL {
            for pipelined in [true, false] {
                let s = scenario(kind, 13, 132);
                let sched = schedule(&s, pipelined).unwrap();
                let sum_for = |prefix: &str| -> f64 {
                    sched
                        .breakdown
                        .iter()
                        .filter(|(k, _)| k.starts_with(prefix))
                        .map(|(_, v)| v)
                        .sum()
                };
                let remote_expected = if pipelined {
                    sched.t_remote_tq_us
                } else {
                    sched.t_remote_tq_us - sched.t_ed_us
                };
                close(sum_for("remote_gate."), remote_expected);
                close(sum_for("se_round."), sched.t_se_round_us);
                if pipelined {
                    assert_eq!(sum_for("ed."), 0.0, "{kind} leaks hidden work");
                } else {
                    close(sum_for("ed."), sched.t_ed_us);
                }
            }
        }
    }

    #[test]
    fn capacity_is_enforced_before_scheduling() {
        let mut s = scenario(ArchKind::Sdqc, 13, 132);
        s.architecture.chain_capacity = 50;
        assert!(matches!(
            schedule(&s, true),
            Err(Error::CapacityExceeded { .. })
        ));
    }

    #[test]
    fn factory_throughput_and_demand() {
        let s = scenario(ArchKind::Sdqc, 13, 132);
        let report = throughput_check(&s, Some(77100.0)).unwrap();
        close(report.factory_throughput_hz, 39957.37879595099);
        close(report.demand_hz, 2568.093385214008);
        assert!(report.feasible);
        assert!(!report.pairs_per_cycle.approximate);

        let s = scenario(ArchKind::PhotonicDqc, 13, 132);
        let report = throughput_check(&s, Some(77100.0)).unwrap();
        close(report.demand_hz, 3579.7665369649803);
        close(report.photonic_only_demand_hz.unwrap(), 2399.481193255512);
        close(report.interface_rate_hz.unwrap(), 250.0);
        assert!(!report.feasible);
    }

    #[test]
    fn estimated_pair_demand_flags_itself() {
        let pairs = pairs_per_factory(ArchKind::Sdqc, 9).unwrap();
        assert!(pairs.approximate);
        assert!(pairs.total > 0.0);
        let published = pairs_per_factory(ArchKind::Sdqc, 13).unwrap();
        assert_eq!(published.total, 198.0);
        assert!(!published.approximate);
    }

    #[test]
    fn odd_capacity_factories_are_rejected() {
        let mut s = scenario(ArchKind::Sdqc, 13, 132);
        s.architecture.chain_capacity = 59;
        assert!(throughput_check(&s, Some(77100.0)).is_err());
    }
}
