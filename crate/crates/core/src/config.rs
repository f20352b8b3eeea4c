//! Run configuration: operation timings, base error rates, architecture
//! selection, and sweep grids.
//!
//! Config files are JSON with four optional sections (`times`, `errors`,
//! `architecture`, `sweep`). Every omitted field falls back to the built-in
//! hardware defaults; unknown keys are rejected so a typo fails loudly
//! instead of silently running with defaults. `--set a.b=v` overrides are
//! applied to the raw JSON before it is parsed, so they obey the same
//! schema checks.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Environment variable consulted for a config path when `--config` is absent.
pub const CONFIG_ENV_VAR: &str = "SDQC_EVAL_CONFIG";

/// Architecture family being evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ArchKind {
    /// Shuttling-based DQC: unit cells joined by a deterministic ion
    /// shuttling network.
    #[serde(rename = "sdqc")]
    Sdqc,
    /// Monolithic QCCD grid baseline.
    #[serde(rename = "qccd")]
    Qccd,
    /// DQC baseline with probabilistic photonic interconnects.
    #[serde(rename = "photonic")]
    PhotonicDqc,
}

impl ArchKind {
    pub const ALL: [ArchKind; 3] = [ArchKind::Sdqc, ArchKind::Qccd, ArchKind::PhotonicDqc];

    /// The two architectures that distribute a logical qubit over
    /// networked nodes (everything except the monolithic grid).
    pub fn is_distributed(self) -> bool {
        !matches!(self, ArchKind::Qccd)
    }

    pub fn parse(s: &str) -> Result<ArchKind> {
        match s.to_ascii_lowercase().as_str() {
            "sdqc" => Ok(ArchKind::Sdqc),
            "qccd" => Ok(ArchKind::Qccd),
            "photonic" | "photonic-dqc" | "photonic_dqc" => Ok(ArchKind::PhotonicDqc),
            other => Err(Error::invalid(
                "arch",
                format!("unknown architecture {other:?}; expected sdqc, qccd, or photonic"),
            )),
        }
    }
}

impl fmt::Display for ArchKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArchKind::Sdqc => "sdqc",
            ArchKind::Qccd => "qccd",
            ArchKind::PhotonicDqc => "photonic",
        })
    }
}

/// Durations of the primitive operations, in microseconds unless noted.
///
/// The two-qubit gate cost depends on the length of the chain it runs in:
/// `max(slope * n - offset, floor)` for `n` resident ions. All other
/// operations are flat per-invocation costs. None of these durations are
/// scaled by improvement factors; lambda models error rates only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OperationTimes {
    pub single_qubit_us: f64,
    pub two_qubit_slope_us: f64,
    pub two_qubit_offset_us: f64,
    pub two_qubit_floor_us: f64,
    pub measurement_us: f64,
    pub cooling_us: f64,
    /// Mean latency of one heralded photonic entangling attempt, treated
    /// as a deterministic per-pair cost.
    pub photonic_entangling_us: f64,
    /// Per hop of one unit distance through the shuttling network.
    pub stable_transport_us: f64,
    pub fast_transport_us: f64,
    pub split_us: f64,
    pub merge_us: f64,
    pub physical_swap_us: f64,
    /// Center-to-center junction spacing in micrometers. Transport costs
    /// above are quoted per hop of this distance.
    pub unit_distance_um: f64,
}

impl Default for OperationTimes {
    fn default() -> Self {
        OperationTimes {
            single_qubit_us: 5.0,
            two_qubit_slope_us: 13.33,
            two_qubit_offset_us: 54.0,
            two_qubit_floor_us: 100.0,
            measurement_us: 400.0,
            cooling_us: 300.0,
            photonic_entangling_us: 4000.0,
            stable_transport_us: 46.9,
            fast_transport_us: 4.6,
            split_us: 128.0,
            merge_us: 128.0,
            physical_swap_us: 200.0,
            unit_distance_um: 375.0,
        }
    }
}

impl OperationTimes {
    fn validate(&self) -> Result<()> {
        let positive = [
            ("times.single_qubit_us", self.single_qubit_us),
            ("times.two_qubit_slope_us", self.two_qubit_slope_us),
            ("times.two_qubit_floor_us", self.two_qubit_floor_us),
            ("times.measurement_us", self.measurement_us),
            ("times.cooling_us", self.cooling_us),
            ("times.photonic_entangling_us", self.photonic_entangling_us),
            ("times.stable_transport_us", self.stable_transport_us),
            ("times.fast_transport_us", self.fast_transport_us),
            ("times.split_us", self.split_us),
            ("times.merge_us", self.merge_us),
            ("times.physical_swap_us", self.physical_swap_us),
            ("times.unit_distance_um", self.unit_distance_um),
        ];
        for (field, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Config {
                    field: field.into(),
                    msg: format!("must be a positive finite duration, got {v}"),
                });
            }
        }
        if !(self.two_qubit_offset_us >= 0.0) {
            return Err(Error::Config {
                field: "times.two_qubit_offset_us".into(),
                msg: format!("must be nonnegative, got {}", self.two_qubit_offset_us),
            });
        }
        Ok(())
    }
}

/// Base error rates of the primitive operations.
///
/// All six are per-invocation probabilities except `idle_per_ms`, which is
/// a decoherence probability per millisecond of exposure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ErrorRates {
    pub single_qubit: f64,
    pub two_qubit: f64,
    pub measurement: f64,
    pub photonic_entangling: f64,
    /// Ion loss probability per shuttling junction traversal.
    pub shuttling: f64,
    pub idle_per_ms: f64,
}

impl Default for ErrorRates {
    fn default() -> Self {
        ErrorRates {
            single_qubit: 1.5e-7,
            two_qubit: 3.0e-4,
            measurement: 9.0e-5,
            photonic_entangling: 2.85e-2,
            shuttling: 1.0e-5,
            idle_per_ms: 3.7e-6,
        }
    }
}

impl ErrorRates {
    fn validate(&self) -> Result<()> {
        let fields = [
            ("errors.single_qubit", self.single_qubit),
            ("errors.two_qubit", self.two_qubit),
            ("errors.measurement", self.measurement),
            ("errors.photonic_entangling", self.photonic_entangling),
            ("errors.shuttling", self.shuttling),
            ("errors.idle_per_ms", self.idle_per_ms),
        ];
        for (field, v) in fields {
            if !(0.0..1.0).contains(&v) {
                return Err(Error::Config {
                    field: field.into(),
                    msg: format!("must be a probability in [0, 1), got {v}"),
                });
            }
        }
        Ok(())
    }
}

/// Uniformly divide all base error rates by `lambda`.
///
/// The operation is linear: applying `a` then `b` equals applying `a * b`
/// once. Durations are untouched; hardware gets cleaner, not faster.
pub fn apply_improvement(rates: &ErrorRates, lambda: f64) -> Result<ErrorRates> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::invalid(
            "apply_improvement",
            format!("lambda must be positive and finite, got {lambda}"),
        ));
    }
    Ok(ErrorRates {
        single_qubit: rates.single_qubit / lambda,
        two_qubit: rates.two_qubit / lambda,
        measurement: rates.measurement / lambda,
        photonic_entangling: rates.photonic_entangling / lambda,
        shuttling: rates.shuttling / lambda,
        idle_per_ms: rates.idle_per_ms / lambda,
    })
}

/// Improvement factors applied on top of the base error rates.
///
/// `lambda` divides every base rate uniformly. `lambda_se` additionally
/// suppresses the syndrome-extraction contribution inside the fitted
/// logical-error model and nothing else.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ImprovementFactors {
    pub lambda: f64,
    pub lambda_se: f64,
}

impl Default for ImprovementFactors {
    fn default() -> Self {
        ImprovementFactors {
            lambda: 1.0,
            lambda_se: 1.0,
        }
    }
}

/// Architecture under evaluation plus its per-architecture knobs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ArchitectureSpec {
    pub kind: ArchKind,
    /// Entanglement purification of distributed Bell pairs. Only the
    /// shuttling-based architecture budgets for it.
    pub purification: bool,
    /// Maximum ions a single trap chain may hold.
    pub chain_capacity: u32,
}

impl Default for ArchitectureSpec {
    fn default() -> Self {
        ArchitectureSpec {
            kind: ArchKind::Sdqc,
            purification: false,
            chain_capacity: 60,
        }
    }
}

impl ArchitectureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.purification && self.kind != ArchKind::Sdqc {
            return Err(Error::Config {
                field: "architecture.purification".into(),
                msg: format!("purification is only modelled for sdqc, not {}", self.kind),
            });
        }
        if self.chain_capacity < 2 {
            return Err(Error::Config {
                field: "architecture.chain_capacity".into(),
                msg: format!("must be at least 2, got {}", self.chain_capacity),
            });
        }
        Ok(())
    }
}

/// Everything needed to evaluate one operating point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub architecture: ArchitectureSpec,
    pub code_distance: u32,
    pub n_logical: u64,
    pub improvements: ImprovementFactors,
    pub times: OperationTimes,
    pub errors: ErrorRates,
}

impl Default for Scenario {
    fn default() -> Self {
        Scenario {
            architecture: ArchitectureSpec::default(),
            code_distance: 13,
            n_logical: 132,
            improvements: ImprovementFactors::default(),
            times: OperationTimes::default(),
            errors: ErrorRates::default(),
        }
    }
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        self.architecture.validate()?;
        self.times.validate()?;
        self.errors.validate()?;
        if self.code_distance % 2 == 0 || !(3..=13).contains(&self.code_distance) {
            return Err(Error::Config {
                field: "code_distance".into(),
                msg: format!(
                    "must be an odd value in 3..=13, got {}",
                    self.code_distance
                ),
            });
        }
        if self.n_logical < 1 {
            return Err(Error::Config {
                field: "n_logical".into(),
                msg: "must be at least 1".into(),
            });
        }
        for (field, v) in [
            ("improvements.lambda", self.improvements.lambda),
            ("improvements.lambda_se", self.improvements.lambda_se),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Config {
                    field: field.into(),
                    msg: format!("must be positive and finite, got {v}"),
                });
            }
        }
        Ok(())
    }

    /// Base rates after the uniform improvement factor.
    pub fn effective_rates(&self) -> Result<ErrorRates> {
        apply_improvement(&self.errors, self.improvements.lambda)
    }
}

/// Sweep grids. Omitted axes collapse to a single default point; the
/// expansion is the full cross product, outermost axis first in the order
/// the fields are declared here.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub code_distance: Option<Vec<u32>>,
    pub n_logical: Option<Vec<u64>>,
    pub lambda: Option<Vec<f64>>,
    /// Defaults to tracking `lambda` pointwise when absent.
    pub lambda_se: Option<Vec<f64>>,
}

/// On-disk config schema.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub times: Option<OperationTimes>,
    pub errors: Option<ErrorRates>,
    pub architecture: Option<ArchitectureSpec>,
    pub sweep: Option<SweepSection>,
}

impl ConfigFile {
    /// Expand into concrete validated scenarios. An empty config yields
    /// exactly one scenario built entirely from defaults.
    pub fn expand(&self) -> Result<Vec<Scenario>> {
        let times = self.times.clone().unwrap_or_default();
        let errors = self.errors.clone().unwrap_or_default();
        let architecture = self.architecture.clone().unwrap_or_default();
        let sweep = self.sweep.clone().unwrap_or_default();

        let ds = sweep.code_distance.unwrap_or_else(|| vec![13]);
        let nls = sweep.n_logical.unwrap_or_else(|| vec![132]);
        let lambdas = sweep.lambda.unwrap_or_else(|| vec![1.0]);

        let mut out = Vec::new();
        for &d in &ds {
            for &nl in &nls {
                for &lambda in &lambdas {
                    let lambda_ses: Vec<f64> = match &sweep.lambda_se {
                        Some(list) => list.clone(),
                        None => vec![lambda],
                    };
                    for lambda_se in lambda_ses {
                        let s = Scenario {
                            architecture: architecture.clone(),
                            code_distance: d,
                            n_logical: nl,
                            improvements: ImprovementFactors { lambda, lambda_se },
                            times: times.clone(),
                            errors: errors.clone(),
                        };
                        s.validate()?;
                        out.push(s);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Resolve the config path: explicit flag first, then the environment
/// variable, then none (pure defaults).
pub fn resolve_config_path(flag: Option<PathBuf>) -> Option<PathBuf> {
    flag.or_else(|| std::env::var_os(CONFIG_ENV_VAR).map(PathBuf::from))
}

/// Parse a raw `--set key=value` override and apply it to the JSON tree.
///
/// The value is parsed as JSON if possible; a bare comma-separated list
/// becomes an array, and anything else is kept as a string. Intermediate
/// objects are created on demand so `--set sweep.lambda=1,10` works on an
/// empty config.
pub fn apply_set(tree: &mut serde_json::Value, assignment: &str) -> Result<()> {
    let (path, raw) = assignment.split_once('=').ok_or_else(|| {
        Error::invalid(
            "--set",
            format!("expected key.path=value, got {assignment:?}"),
        )
    })?;
    if path.is_empty() {
        return Err(Error::invalid("--set", "empty key path"));
    }
    let value = parse_override_value(raw);
    let mut node = tree;
    let segments: Vec<&str> = path.split('.').collect();
    for (i, seg) in segments.iter().enumerate() {
        if seg.is_empty() {
            return Err(Error::invalid(
                "--set",
                format!("empty path segment in {path:?}"),
            ));
        }
        let obj = node.as_object_mut().ok_or_else(|| {
            Error::invalid(
                "--set",
                format!("{path:?} descends through a non-object value"),
            )
        })?;
        if i + 1 == segments.len() {
            obj.insert((*seg).to_string(), value);
            return Ok(());
        }
        node = obj
            .entry((*seg).to_string())
            .or_insert_with(|| serde_json::Value::Object(Default::default()));
    }
    unreachable!("loop always returns on the last segment");
}

fn parse_override_value(raw: &str) -> serde_json::Value {
    if let Ok(v) = serde_json::from_str(raw) {
        return v;
    }
    if raw.contains(',') {
        let items: Vec<serde_json::Value> = raw
            .split(',')
            .map(|item| {
                serde_json::from_str(item.trim())
                    .unwrap_or_else(|_| serde_json::Value::String(item.trim().to_string()))
            })
            .collect();
        return serde_json::Value::Array(items);
    }
    serde_json::Value::String(raw.to_string())
}

/// Load the raw config document from an optional file plus `--set`
/// overrides, without expanding the sweep section.
pub fn load_config_file(path: Option<&Path>, sets: &[String]) -> Result<ConfigFile> {
    let mut tree: serde_json::Value = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|source| Error::ConfigRead {
                path: p.display().to_string(),
                source,
            })?;
            serde_json::from_str(&text)?
        }
        None => serde_json::Value::Object(Default::default()),
    };
    for assignment in sets {
        apply_set(&mut tree, assignment)?;
    }
    Ok(serde_json::from_value(tree)?)
}

/// Load scenarios from an optional config file plus `--set` overrides.
pub fn load_config_with_overrides(
    path: Option<&Path>,
    sets: &[String],
) -> Result<Vec<Scenario>> {
    load_config_file(path, sets)?.expand()
}

/// Load scenarios from a config file with no overrides.
pub fn load_config(path: &Path) -> Result<Vec<Scenario>> {
    load_config_with_overrides(Some(path), &[])
}
