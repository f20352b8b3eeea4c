//! Superdense color code qubit counts and the assignment of code qubits to
//! trap chains.
//!
//! One logical qubit of distance `d` uses `(3d^2 - 1) / 2` physical qubits:
//! `(3d^2 + 1) / 4` data qubits plus `3(d^2 - 1) / 4` syndrome qubits. The
//! syndrome qubits split into a nonsegmented set, measured with their data
//! chain intact, and a segmented set that requires the chain to be split
//! first. Distributed architectures pack each logical qubit into a few long
//! chains using a fixed tabulated assignment; the monolithic grid keeps one
//! qubit per zone.

use serde::Serialize;

use crate::config::ArchKind;
use crate::{Error, Result};

/// Code distances with a tabulated chain assignment.
pub const TABULATED_DISTANCES: [u32; 6] = [3, 5, 7, 9, 11, 13];

/// Physical qubit budget of one logical qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CodeCounts {
    pub code_distance: u32,
    pub n_physical: u64,
    pub n_data: u64,
    pub n_syndrome: u64,
    pub n_segmented: u64,
    pub n_nonsegmented: u64,
    /// Chains per logical qubit in the distributed packing.
    pub n_chains: u64,
}

/// Qubits hosted by one trap chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChainAssignment {
    pub data: u32,
    pub nonsegmented: u32,
    pub segmented: u32,
}

impl ChainAssignment {
    /// Ions resident in the chain when fully loaded.
    pub fn occupancy(&self) -> u32 {
        self.data + self.nonsegmented + self.segmented
    }
}

/// Chain assignment of one logical qubit under a given architecture.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainLayout {
    pub architecture: ArchKind,
    pub code_distance: u32,
    pub chains: Vec<ChainAssignment>,
}

/// Tabulated packing of one logical qubit into chains, per distance.
/// Each row is (data, nonsegmented syndrome, segmented syndrome).
const CHAIN_TABLE: [(u32, &[(u32, u32, u32)]); 6] = [
    (3, &[(7, 6, 0)]),
    (5, &[(19, 18, 0)]),
    (7, &[(15, 10, 5), (22, 16, 5)]),
    (9, &[(15, 10, 5), (24, 12, 11), (22, 16, 6)]),
    (11, &[(15, 10, 5), (25, 12, 13), (29, 14, 14), (22, 16, 6)]),
    (
        13,
        &[
            (15, 10, 5),
            (25, 12, 13),
            (17, 0, 17),
            (19, 0, 18),
            (29, 14, 15),
            (22, 16, 6),
        ],
    ),
];

fn chain_table(d: u32) -> Option<&'static [(u32, u32, u32)]> {
    CHAIN_TABLE
        .iter()
        .find(|(dist, _)| *dist == d)
        .map(|(_, rows)| *rows)
}

/// Qubit counts for one logical qubit at odd distance `d <= 13`.
///
/// `d = 1` is the degenerate unencoded case: a single data qubit, no
/// syndrome qubits, one chain.
pub fn code_qubit_counts(d: u32) -> Result<CodeCounts> {
    if d == 0 || d % 2 == 0 || d > 13 {
        return Err(Error::UnsupportedDistance { d, min: 1, max: 13 });
    }
    let d2 = u64::from(d) * u64::from(d);
    let n_physical = (3 * d2 - 1) / 2;
    let n_data = (3 * d2 + 1) / 4;
    let n_syndrome = 3 * (d2 - 1) / 4;
    let (n_segmented, n_nonsegmented, n_chains) = match chain_table(d) {
        Some(rows) => {
            let seg: u64 = rows.iter().map(|r| u64::from(r.2)).sum();
            let nonseg: u64 = rows.iter().map(|r| u64::from(r.1)).sum();
            (seg, nonseg, rows.len() as u64)
        }
        None => (0, 0, 1),
    };
    debug_assert_eq!(n_segmented + n_nonsegmented, n_syndrome);
    debug_assert_eq!(n_data + n_syndrome, n_physical);
    Ok(CodeCounts {
        code_distance: d,
        n_physical,
        n_data,
        n_syndrome,
        n_segmented,
        n_nonsegmented,
        n_chains,
    })
}

/// Chain assignment of one logical qubit.
///
/// Distributed architectures use the tabulated multi-qubit chains and only
/// support the tabulated distances. The monolithic grid holds one qubit
/// per zone, so its "chains" are singletons and any supported distance
/// works.
pub fn chain_mapping(arch: ArchKind, d: u32) -> Result<ChainLayout> {
    let chains = match arch {
        ArchKind::Sdqc | ArchKind::PhotonicDqc => match chain_table(d) {
            Some(rows) => rows
                .iter()
                .map(|&(data, nonsegmented, segmented)| ChainAssignment {
                    data,
                    nonsegmented,
                    segmented,
                })
                .collect(),
            None => return Err(Error::MappingNotTabulated { arch, d }),
        },
        ArchKind::Qccd => {
            let counts = code_qubit_counts(d)?;
            let singleton = |data, nonsegmented, segmented| ChainAssignment {
                data,
                nonsegmented,
                segmented,
            };
            let mut chains =
                Vec::with_capacity(counts.n_physical as usize);
            chains.extend((0..counts.n_data).map(|_| singleton(1, 0, 0)));
            chains.extend((0..counts.n_nonsegmented).map(|_| singleton(0, 1, 0)));
            chains.extend((0..counts.n_segmented).map(|_| singleton(0, 0, 1)));
            chains
        }
    };
    Ok(ChainLayout {
        architecture: arch,
        code_distance: d,
        chains,
    })
}

impl ChainLayout {
    /// Largest chain occupancy in the layout.
    pub fn max_occupancy(&self) -> u32 {
        self.chains.iter().map(ChainAssignment::occupancy).max().unwrap_or(0)
    }

    /// Error if any chain exceeds the trap capacity.
    pub fn check_capacity(&self, capacity: u32) -> Result<()> {
        for (i, chain) in self.chains.iter().enumerate() {
            let occupancy = chain.occupancy();
            if occupancy > capacity {
                return Err(Error::CapacityExceeded {
                    chain: i,
                    occupancy,
                    capacity,
                });
            }
        }
        Ok(())
    }
}

/// Ions resident in the longest chain while two-qubit gates run, which
/// sets the slowest gate time of a syndrome extraction round.
///
/// In the monolithic grid every gate runs in a freshly merged two-ion
/// chain regardless of distance.
pub fn max_gate_chain_size(arch: ArchKind, d: u32) -> Result<u32> {
    match arch {
        ArchKind::Qccd => Ok(2),
        ArchKind::Sdqc | ArchKind::PhotonicDqc => {
            Ok(chain_mapping(arch, d)?.max_occupancy())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_follow_closed_forms() {
        for d in TABULATED_DISTANCES {
            let c = code_qubit_counts(d).unwrap();
            let d2 = u64::from(d) * u64::from(d);
            assert_eq!(c.n_physical, (3 * d2 - 1) / 2);
            assert_eq!(c.n_data, (3 * d2 + 1) / 4);
            assert_eq!(c.n_syndrome, 3 * (d2 - 1) / 4);
            assert_eq!(c.n_data + c.n_syndrome, c.n_physical);
            assert_eq!(c.n_segmented + c.n_nonsegmented, c.n_syndrome);
        }
    }

    #[test]
    fn distance_thirteen_counts() {
        let c = code_qubit_counts(13).unwrap();
        assert_eq!(c.n_physical, 253);
        assert_eq!(c.n_data, 127);
        assert_eq!(c.n_syndrome, 126);
        assert_eq!(c.n_nonsegmented, 52);
        assert_eq!(c.n_segmented, 74);
        assert_eq!(c.n_chains, 6);
    }

    #[test]
    fn degenerate_distance_one() {
        let c = code_qubit_counts(1).unwrap();
        assert_eq!(c.n_physical, 1);
        assert_eq!(c.n_data, 1);
        assert_eq!(c.n_syndrome, 0);
        assert_eq!(c.n_chains, 1);
    }

    #[test]
    fn unsupported_distances_error() {
        for d in [0, 2, 4, 15, 17] {
            assert!(code_qubit_counts(d).is_err(), "d = {d} should fail");
        }
    }

    #[test]
    fn chain_rows_sum_to_code_counts() {
        for d in TABULATED_DISTANCES {
            let c = code_qubit_counts(d).unwrap();
            let layout = chain_mapping(ArchKind::Sdqc, d).unwrap();
            let data: u64 = layout.chains.iter().map(|r| u64::from(r.data)).sum();
            let nonseg: u64 =
                layout.chains.iter().map(|r| u64::from(r.nonsegmented)).sum();
            let seg: u64 = layout.chains.iter().map(|r| u64::from(r.segmented)).sum();
            assert_eq!(data, c.n_data, "data sum at d = {d}");
            assert_eq!(nonseg, c.n_nonsegmented, "nonsegmented sum at d = {d}");
            assert_eq!(seg, c.n_segmented, "segmented sum at d = {d}");
            assert_eq!(layout.chains.len() as u64, c.n_chains);
        }
    }

    #[test]
    fn max_gate_chain_sizes_match_packing() {
        let expected = [(3, 13), (5, 37), (7, 43), (9, 47), (11, 57), (13, 58)];
        for (d, size) in expected {
            assert_eq!(max_gate_chain_size(ArchKind::Sdqc, d).unwrap(), size);
            assert_eq!(max_gate_chain_size(ArchKind::PhotonicDqc, d).unwrap(), size);
            assert_eq!(max_gate_chain_size(ArchKind::Qccd, d).unwrap(), 2);
        }
    }

    #[test]
    fn all_tabulated_chains_fit_the_default_capacity() {
        for d in TABULATED_DISTANCES {
            let layout = chain_mapping(ArchKind::Sdqc, d).unwrap();
            layout.check_capacity(60).unwrap();
            assert!(layout.check_capacity(50).is_err() || layout.max_occupancy() <= 50);
        }
    }

    #[test]
    fn capacity_violation_names_the_chain() {
        let layout = chain_mapping(ArchKind::Sdqc, 13).unwrap();
        match layout.check_capacity(50) {
            Err(Error::CapacityExceeded {
                chain,
                occupancy,
                capacity,
            }) => {
                assert_eq!(capacity, 50);
                assert_eq!(occupancy, layout.chains[chain].occupancy());
                assert!(occupancy > 50);
            }
            other => panic!("expected capacity error, got {other:?}"),
        }
    }

    #[test]
    fn grid_mapping_is_one_qubit_per_zone() {
        let layout = chain_mapping(ArchKind::Qccd, 9).unwrap();
        let counts = code_qubit_counts(9).unwrap();
        assert_eq!(layout.chains.len() as u64, counts.n_physical);
        assert!(layout.chains.iter().all(|c| c.occupancy() == 1));
        let seg: u64 = layout.chains.iter().map(|c| u64::from(c.segmented)).sum();
        assert_eq!(seg, counts.n_segmented);
    }

    #[test]
    fn distributed_mapping_requires_tabulated_distance() {
        assert!(matches!(
            chain_mapping(ArchKind::Sdqc, 1),
            Err(Error::MappingNotTabulated { .. })
        ));
    }
}
