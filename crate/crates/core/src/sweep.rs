//! Desk-scale sweeps over occupations: the dense-oracle equivalence check
//! and the certification sweep.

use crate::dicke::{bipartite_operator, partial_transpose, reduced_state, EmbedDense};
use crate::error::Result;
use crate::multiindex::{enumerate_full, enumerate_restricted, OccupationIndex};
use crate::oracle::{
    dense_dicke, dense_partial_trace, dense_partial_transpose, dense_spectrum, schmidt_values, verify_schmidt_identity,
    DenseLimits,
};
use crate::par::Execution;
use crate::witness::{certify_with, pt_spectrum, CertificationReport};

/// Entrywise tolerance between embedded and dense reduced states.
pub const ENTRY_TOLERANCE: f64 = 1e-12;
/// Tolerance between sorted spectra and between singular values and weights.
pub const SPECTRUM_TOLERANCE: f64 = 1e-10;
/// Singular values above this count towards the Schmidt rank.
pub const RANK_THRESHOLD: f64 = 1e-10;

/// Every occupation with `d` in `dims` and `n` in `norms`, in (d, n, index-set) order.
pub fn occupations(
    dims: impl IntoIterator<Item = usize>,
    norms: impl IntoIterator<Item = usize> + Clone,
) -> Vec<OccupationIndex> {
    let mut out = Vec::new();
    for d in dims {
        for n in norms.clone() {
            out.extend(enumerate_full(d, n).expect("d >= 1").into_members());
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub enum OracleMismatch {
    SchmidtIdentity {
        parent: OccupationIndex,
        m: usize,
    },
    SchmidtRank {
        parent: OccupationIndex,
        m: usize,
        dense: usize,
        symmetric: usize,
    },
    SchmidtWeights {
        parent: OccupationIndex,
        m: usize,
        deviation: f64,
    },
    ReducedState {
        parent: OccupationIndex,
        m: usize,
        deviation: f64,
    },
    Operator {
        parent: OccupationIndex,
        m: usize,
        k: usize,
        deviation: f64,
    },
    PtSpectrum {
        parent: OccupationIndex,
        m: usize,
        k: usize,
        deviation: f64,
    },
}

/// Results of [`oracle_sweep`] for one parent occupation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OracleSummary {
    pub parents: usize,
    pub checks: usize,
    pub max_entry_deviation: f64,
    pub max_spectrum_deviation: f64,
    pub mismatches: Vec<OracleMismatch>,
}

impl OracleSummary {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn merge(mut self, other: Self) -> Self {
        self.parents += other.parents;
        self.checks += other.checks;
        self.max_entry_deviation = self.max_entry_deviation.max(other.max_entry_deviation);
        self.max_spectrum_deviation = self.max_spectrum_deviation.max(other.max_spectrum_deviation);
        self.mismatches.extend(other.mismatches);
        self
    }
}

/// Largest elementwise gap between two ascending spectra, the shorter one zero-padded.
pub fn padded_spectrum_gap(short: &[f64], long: &[f64]) -> f64 {
    let mut padded = short.to_vec();
    padded.resize(long.len().max(short.len()), 0.0);
    padded.sort_by(f64::total_cmp);
    padded.iter().zip(long).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

/// Cross-checks every symmetric-basis construction for one parent against the dense oracle.
pub fn oracle_check_parent(parent: &OccupationIndex, limits: &DenseLimits) -> Result<OracleSummary> {
    let n = parent.norm();
    let mut s = OracleSummary {
        parents: 1,
        ..Default::default()
    };
    let psi = dense_dicke(parent, limits)?;

    for m in 1..n {
        s.checks += 1;
        if !verify_schmidt_identity(parent, m, limits)?.holds() {
            s.mismatches.push(OracleMismatch::SchmidtIdentity {
                parent: parent.clone(),
                m,
            });
        }

        s.checks += 1;
        let sv = schmidt_values(&psi, m)?;
        let dense_rank = sv.iter().filter(|&&x| x > RANK_THRESHOLD).count();
        let sym_rank = enumerate_restricted(m, parent)?.len();
        if dense_rank != sym_rank {
            s.mismatches.push(OracleMismatch::SchmidtRank {
                parent: parent.clone(),
                m,
                dense: dense_rank,
                symmetric: sym_rank,
            });
        }
        let mut weights: Vec<f64> = reduced_state(parent, m)?
            .weights()
            .iter()
            .map(|(_, w)| w.to_f64())
            .collect();
        weights.sort_by(|a, b| b.total_cmp(a));
        let dev = sv
            .iter()
            .map(|x| x * x)
            .zip(weights.iter().copied().chain(std::iter::repeat(0.0)))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        s.max_entry_deviation = s.max_entry_deviation.max(dev);
        if dev > ENTRY_TOLERANCE {
            s.mismatches.push(OracleMismatch::SchmidtWeights {
                parent: parent.clone(),
                m,
                deviation: dev,
            });
        }
    }

    for m in 1..=n {
        let rho = dense_partial_trace(&psi, m, limits)?;
        s.checks += 1;
        let dev = reduced_state(parent, m)?.embed_dense(limits)?.max_abs_diff(&rho);
        s.max_entry_deviation = s.max_entry_deviation.max(dev);
        if dev > ENTRY_TOLERANCE {
            s.mismatches.push(OracleMismatch::ReducedState {
                parent: parent.clone(),
                m,
                deviation: dev,
            });
        }
        if m < 2 {
            continue;
        }
        for k in 1..m {
            let op = bipartite_operator(parent, m, k)?;
            s.checks += 1;
            let dev = op.embed_dense(limits)?.max_abs_diff(&rho);
            s.max_entry_deviation = s.max_entry_deviation.max(dev);
            if dev > ENTRY_TOLERANCE {
                s.mismatches.push(OracleMismatch::Operator {
                    parent: parent.clone(),
                    m,
                    k,
                    deviation: dev,
                });
            }

            s.checks += 1;
            let dense = dense_spectrum(&dense_partial_transpose(&rho, k)?)?;
            let sym = pt_spectrum(parent, m, k)?;
            let dev = padded_spectrum_gap(&sym, &dense);
            s.max_spectrum_deviation = s.max_spectrum_deviation.max(dev);
            if dev > SPECTRUM_TOLERANCE {
                s.mismatches.push(OracleMismatch::PtSpectrum {
                    parent: parent.clone(),
                    m,
                    k,
                    deviation: dev,
                });
            }
            debug_assert!(partial_transpose(&op).is_hermitian());
        }
    }
    Ok(s)
}

/// Oracle check over every occupation with `1 <= d <= max_d`, `1 <= n <= max_n`.
pub fn oracle_sweep(max_d: usize, max_n: usize, limits: &DenseLimits, exec: Execution) -> Result<OracleSummary> {
    let parents = occupations(1..=max_d, 1..=max_n);
    exec.map(parents, |p| oracle_check_parent(&p, limits))
        .into_iter()
        .try_fold(OracleSummary::default(), |acc, r| Ok(acc.merge(r?)))
}

/// Certifies every occupation in the range, in input order.
pub fn certification_sweep(parents: Vec<OccupationIndex>, exec: Execution) -> Result<Vec<CertificationReport>> {
    // The outer map fans out; each report runs its own grid sequentially.
    exec.map(parents, |p| certify_with(&p, Execution::Sequential))
        .into_iter()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn occupation_counts() {
        // C(n+1, 1) summed over n = 2..=4 for qubits.
        assert_eq!(occupations(2..=2, 2..=4).len(), 3 + 4 + 5);
    }

    #[test]
    fn padded_gap() {
        assert_eq!(padded_spectrum_gap(&[-0.5, 1.0], &[-0.5, 0.0, 0.0, 1.0]), 0.0);
        assert!(padded_spectrum_gap(&[-0.4], &[-0.5, 0.0]) > 0.09);
    }

    #[test]
    fn small_oracle_sweep_passes() {
        let s = oracle_sweep(2, 4, &DenseLimits::default(), Execution::Parallel).unwrap();
        assert!(s.passed(), "{:?}", s.mismatches);
        assert_eq!(s.parents, 4 + (2 + 3 + 4 + 5));
    }
}
