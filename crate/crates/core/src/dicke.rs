//! Exact Schmidt coefficients of Dicke states, their reduced states, and the
//! operator form of a reduced state over pairs of subsystem occupations.
//!
//! The Schmidt coefficient of `|D_n>` across an `(m, n-m)` site split at
//! subsystem occupation `m` is
//!
//! ```text
//! eta(n, m) = multinomial(m) * multinomial(n - m) / multinomial(n)
//! ```
//!
//! and the reduced state on `m` sites is diagonal in the Dicke basis with
//! these weights. Splitting the `m` sites further into `k` and `m - k`
//! gives an operator on `Sym_k (x) Sym_{m-k}` whose entries are
//! `eta(n, m) * sqrt(eta(m, k) * eta(m, k'))`; those are kept as exact
//! [`Radical`]s.

use std::collections::{BTreeMap, HashMap};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{DickeError, Result};
use crate::multiindex::{enumerate_full, enumerate_restricted, multinomial, IndexSet, OccupationIndex};
use crate::oracle::{DenseHermitian, DenseLimits};
use crate::radical::Radical;

/// Exact Schmidt weight `eta(parent, part)`, in `(0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SchmidtCoefficient(BigRational);

impl SchmidtCoefficient {
    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn into_value(self) -> BigRational {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

fn check_part(parent: &OccupationIndex, part: &OccupationIndex) -> Result<()> {
    if parent.dim() != part.dim() {
        return Err(DickeError::DimensionMismatch {
            expected: parent.dim(),
            found: part.dim(),
        });
    }
    if !part.le(parent) {
        return Err(DickeError::NotBounded {
            part: part.to_string(),
            parent: parent.to_string(),
        });
    }
    Ok(())
}

// Caller guarantees part <= parent.
fn eta(parent: &OccupationIndex, part: &OccupationIndex) -> BigRational {
    let rest = parent.checked_sub(part).expect("part bounded by parent");
    let num = multinomial(part) * multinomial(&rest);
    BigRational::new(BigInt::from(num), BigInt::from(multinomial(parent)))
}

pub fn schmidt_coefficient(parent: &OccupationIndex, part: &OccupationIndex) -> Result<SchmidtCoefficient> {
    check_part(parent, part)?;
    Ok(SchmidtCoefficient(eta(parent, part)))
}

/// Schmidt decomposition of `|D_parent>` across the first `m` sites, one
/// term per member of `I^d_{m, parent}` in index-set order.
pub fn schmidt_decomposition(parent: &OccupationIndex, m: usize) -> Result<Vec<(OccupationIndex, SchmidtCoefficient)>> {
    let n = parent.norm();
    if m == 0 || m >= n {
        return Err(DickeError::SubsystemOutOfRange {
            m,
            min: 1,
            max: n.saturating_sub(1),
        });
    }
    weights(parent, m)
}

fn weights(parent: &OccupationIndex, m: usize) -> Result<Vec<(OccupationIndex, SchmidtCoefficient)>> {
    Ok(enumerate_restricted(m, parent)?
        .into_members()
        .into_iter()
        .map(|part| {
            let w = SchmidtCoefficient(eta(parent, &part));
            (part, w)
        })
        .collect())
}

/// `Tr_{n-m} |D_n><D_n| = sum_m eta(n, m) |D_m><D_m|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedDickeState {
    parent: OccupationIndex,
    m: usize,
    weights: Vec<(OccupationIndex, SchmidtCoefficient)>,
}

impl ReducedDickeState {
    pub fn parent(&self) -> &OccupationIndex {
        &self.parent
    }

    pub fn subsystem_size(&self) -> usize {
        self.m
    }

    pub fn weights(&self) -> &[(OccupationIndex, SchmidtCoefficient)] {
        &self.weights
    }

    pub fn weight(&self, part: &OccupationIndex) -> Option<&SchmidtCoefficient> {
        self.weights.iter().find(|(p, _)| p == part).map(|(_, w)| w)
    }

    pub fn trace(&self) -> BigRational {
        self.weights.iter().map(|(_, w)| w.value()).sum()
    }
}

pub fn reduced_state(parent: &OccupationIndex, m: usize) -> Result<ReducedDickeState> {
    let n = parent.norm();
    if m == 0 || m > n {
        return Err(DickeError::SubsystemOutOfRange { m, min: 1, max: n });
    }
    Ok(ReducedDickeState {
        parent: parent.clone(),
        m,
        weights: weights(parent, m)?,
    })
}

/// Operator on `span{|D_kappa> (x) |D_mu>}` with `kappa in I^d_k`, `mu in I^d_{m-k}`.
///
/// Rows and columns run over the full Cartesian product in index-set order;
/// pair `(kappa, mu)` sits at `pos(kappa) * |I^d_{m-k}| + pos(mu)`. Entries
/// are exact and stored sparsely.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteSymmetricOperator {
    parent: OccupationIndex,
    m: usize,
    k: usize,
    left: IndexSet,
    right: IndexSet,
    left_pos: HashMap<OccupationIndex, usize>,
    right_pos: HashMap<OccupationIndex, usize>,
    entries: BTreeMap<(usize, usize), Radical>,
    transposed: bool,
}

impl BipartiteSymmetricOperator {
    pub fn parent(&self) -> &OccupationIndex {
        &self.parent
    }

    pub fn subsystem_size(&self) -> usize {
        self.m
    }

    pub fn split(&self) -> usize {
        self.k
    }

    /// Whether the first slot has been partially transposed (an odd number of times).
    pub fn is_transposed(&self) -> bool {
        self.transposed
    }

    pub fn left_basis(&self) -> &IndexSet {
        &self.left
    }

    pub fn right_basis(&self) -> &IndexSet {
        &self.right
    }

    pub fn dim(&self) -> usize {
        self.left.len() * self.right.len()
    }

    pub fn pair(&self, index: usize) -> (&OccupationIndex, &OccupationIndex) {
        let r = self.right.len();
        (&self.left.members()[index / r], &self.right.members()[index % r])
    }

    pub fn index_of(&self, kappa: &OccupationIndex, mu: &OccupationIndex) -> Option<usize> {
        let a = self.left_pos.get(kappa)?;
        let b = self.right_pos.get(mu)?;
        Some(a * self.right.len() + b)
    }

    pub fn entry(&self, row: usize, col: usize) -> Radical {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(Radical::zero)
    }

    /// Nonzero entries keyed by `(row, col)`.
    pub fn entries(&self) -> &BTreeMap<(usize, usize), Radical> {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Exact trace; diagonal entries are always rational.
    pub fn trace(&self) -> BigRational {
        self.entries
            .iter()
            .filter(|((r, c), _)| r == c)
            .map(|(_, v)| v.as_rational().cloned().expect("diagonal entries are rational"))
            .sum()
    }

    /// Exact check `X_rc == X_cr` (entries are real).
    pub fn is_hermitian(&self) -> bool {
        self.entries
            .iter()
            .all(|(&(r, c), v)| self.entries.get(&(c, r)) == Some(v))
    }

    /// Traces out the second slot, giving weights on `I^d_k`.
    pub fn trace_right(&self) -> BTreeMap<OccupationIndex, BigRational> {
        let r = self.right.len();
        self.slot_trace(
            |row, col| (row % r == col % r).then_some((row / r, col / r)),
            &self.left,
        )
    }

    /// Traces out the first slot, giving weights on `I^d_{m-k}`.
    pub fn trace_left(&self) -> BTreeMap<OccupationIndex, BigRational> {
        let r = self.right.len();
        self.slot_trace(
            |row, col| (row / r == col / r).then_some((row % r, col % r)),
            &self.right,
        )
    }

    // Only diagonal reduced entries are collected; off-diagonal ones vanish
    // for every operator built here and are asserted to.
    fn slot_trace(
        &self,
        project: impl Fn(usize, usize) -> Option<(usize, usize)>,
        basis: &IndexSet,
    ) -> BTreeMap<OccupationIndex, BigRational> {
        let mut out = BTreeMap::new();
        for (&(row, col), v) in &self.entries {
            if let Some((a, b)) = project(row, col) {
                assert_eq!(a, b, "reduced operator is diagonal in the Dicke basis");
                let val = v.as_rational().cloned().expect("diagonal entries are rational");
                *out.entry(basis.members()[a].clone()).or_insert_with(BigRational::zero) += val;
            }
        }
        out
    }

    /// Double-precision matrix over the pair basis.
    pub fn to_dense_f64(&self) -> DMatrix<f64> {
        let dim = self.dim();
        let mut mat = DMatrix::zeros(dim, dim);
        for (&(r, c), v) in &self.entries {
            mat[(r, c)] = v.to_f64();
        }
        mat
    }
}

/// Builds the `(k, m - k)` operator form of the reduced state `rho_{parent, m}`.
pub fn bipartite_operator(parent: &OccupationIndex, m: usize, k: usize) -> Result<BipartiteSymmetricOperator> {
    let n = parent.norm();
    if m < 2 || m > n {
        return Err(DickeError::SubsystemOutOfRange { m, min: 2, max: n });
    }
    if k == 0 || k >= m {
        return Err(DickeError::SplitOutOfRange { k, max: m - 1 });
    }
    let d = parent.dim();
    let left = enumerate_full(d, k)?;
    let right = enumerate_full(d, m - k)?;
    let left_pos = positions(&left);
    let right_pos = positions(&right);
    let r = right.len();
    let at = |kappa: &OccupationIndex, mu: &OccupationIndex| left_pos[kappa] * r + right_pos[mu];

    let mut entries = BTreeMap::new();
    for m_part in enumerate_restricted(m, parent)?.iter() {
        let outer = eta(parent, m_part);
        let splits: Vec<(OccupationIndex, OccupationIndex, BigRational)> = enumerate_restricted(k, m_part)?
            .into_members()
            .into_iter()
            .map(|kappa| {
                let w = eta(m_part, &kappa);
                let mu = m_part.checked_sub(&kappa).expect("kappa bounded by m_part");
                (kappa, mu, w)
            })
            .collect();
        for (k1, mu1, w1) in &splits {
            for (k2, mu2, w2) in &splits {
                let value = Radical::new(outer.clone(), w1 * w2);
                entries.insert((at(k1, mu1), at(k2, mu2)), value);
            }
        }
    }

    Ok(BipartiteSymmetricOperator {
        parent: parent.clone(),
        m,
        k,
        left,
        right,
        left_pos,
        right_pos,
        entries,
        transposed: false,
    })
}

fn positions(set: &IndexSet) -> HashMap<OccupationIndex, usize> {
    set.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect()
}

/// Partial transpose on the first slot: `out[(k,mu),(k',mu')] = in[(k',mu),(k,mu')]`.
pub fn partial_transpose(op: &BipartiteSymmetricOperator) -> BipartiteSymmetricOperator {
    let r = op.right.len();
    let entries = op
        .entries
        .iter()
        .map(|(&(row, col), v)| {
            let (k1, mu1) = (row / r, row % r);
            let (k2, mu2) = (col / r, col % r);
            ((k2 * r + mu1, k1 * r + mu2), v.clone())
        })
        .collect();
    BipartiteSymmetricOperator {
        entries,
        transposed: !op.transposed,
        ..op.clone()
    }
}

/// Basis-word indices of the words of type `x` on `x.norm()` sites, ascending.
pub fn words_of_type(x: &OccupationIndex) -> Vec<usize> {
    fn go(remaining: &mut [usize], left: usize, acc: usize, d: usize, out: &mut Vec<usize>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for level in 0..d {
            if remaining[level] > 0 {
                remaining[level] -= 1;
                go(remaining, left - 1, acc * d + level, d, out);
                remaining[level] += 1;
            }
        }
    }
    let mut counts = x.entries().to_vec();
    let mut out = Vec::new();
    go(&mut counts, x.norm(), 0, x.dim(), &mut out);
    out
}

/// Expansion of a symmetric-basis object into the `d^m` computational basis.
pub trait EmbedDense {
    fn embed_dense(&self, limits: &DenseLimits) -> Result<DenseHermitian>;
}

// |D_a> (x) |D_b> as (index, amplitude) pairs.
fn product_ket(a: &OccupationIndex, b: &OccupationIndex) -> Vec<(usize, f64)> {
    let tail = a.dim().pow(b.norm() as u32);
    let amp = 1.0
        / (multinomial(a).to_f64().unwrap_or(f64::INFINITY) * multinomial(b).to_f64().unwrap_or(f64::INFINITY)).sqrt();
    let wb = words_of_type(b);
    words_of_type(a)
        .into_iter()
        .flat_map(|x| wb.iter().map(move |&y| (x * tail + y, amp)))
        .collect()
}

impl EmbedDense for ReducedDickeState {
    fn embed_dense(&self, limits: &DenseLimits) -> Result<DenseHermitian> {
        let d = self.parent.dim();
        let dim = limits.check_matrix(d, self.m)?;
        let empty = OccupationIndex::zeros(d)?;
        let mut matrix = DMatrix::<Complex64>::zeros(dim, dim);
        for (part, w) in &self.weights {
            let ket = product_ket(part, &empty);
            let w = w.to_f64();
            for &(r, ar) in &ket {
                for &(c, ac) in &ket {
                    matrix[(r, c)] += Complex64::new(w * ar * ac, 0.0);
                }
            }
        }
        Ok(DenseHermitian {
            d,
            sites: self.m,
            matrix,
        })
    }
}

impl EmbedDense for BipartiteSymmetricOperator {
    fn embed_dense(&self, limits: &DenseLimits) -> Result<DenseHermitian> {
        let d = self.parent.dim();
        let dim = limits.check_matrix(d, self.m)?;
        let mut kets: HashMap<usize, Vec<(usize, f64)>> = HashMap::new();
        let mut matrix = DMatrix::<Complex64>::zeros(dim, dim);
        for (&(row, col), v) in &self.entries {
            for idx in [row, col] {
                kets.entry(idx).or_insert_with(|| {
                    let (a, b) = self.pair(idx);
                    product_ket(a, b)
                });
            }
            let value = v.to_f64();
            for &(r, ar) in &kets[&row] {
                for &(c, ac) in &kets[&col] {
                    matrix[(r, c)] += Complex64::new(value * ar * ac, 0.0);
                }
            }
        }
        Ok(DenseHermitian {
            d,
            sites: self.m,
            matrix,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::symmetric_spectrum;
    use crate::oracle::{dense_dicke, dense_partial_trace, word_type};
    use num_traits::One;
    use proptest::prelude::*;

    fn occ(v: &[usize]) -> OccupationIndex {
        OccupationIndex::new(v.to_vec()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn coefficient_examples() {
        let w = occ(&[1, 2]);
        assert_eq!(schmidt_coefficient(&w, &occ(&[1, 1])).unwrap().value(), &q(2, 3));
        assert_eq!(schmidt_coefficient(&w, &occ(&[0, 2])).unwrap().value(), &q(1, 3));
        assert_eq!(schmidt_coefficient(&w, &w).unwrap().value(), &q(1, 1));
    }

    #[test]
    fn coefficient_errors() {
        let w = occ(&[1, 2]);
        assert!(matches!(
            schmidt_coefficient(&w, &occ(&[2, 0])),
            Err(DickeError::NotBounded { .. })
        ));
        assert!(matches!(
            schmidt_coefficient(&w, &occ(&[1, 2, 0])),
            Err(DickeError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn decomposition_examples() {
        let dec = schmidt_decomposition(&occ(&[1, 2]), 2).unwrap();
        assert_eq!(
            dec,
            vec![
                (occ(&[1, 1]), SchmidtCoefficient(q(2, 3))),
                (occ(&[0, 2]), SchmidtCoefficient(q(1, 3))),
            ]
        );
        for m in 1..4 {
            let dec = schmidt_decomposition(&occ(&[4, 0, 0]), m).unwrap();
            assert_eq!(dec.len(), 1);
            assert!(dec[0].1.value().is_one());
        }
        let dec = schmidt_decomposition(&occ(&[2, 2]), 2).unwrap();
        let vals: Vec<_> = dec.iter().map(|(_, w)| w.value().clone()).collect();
        assert_eq!(vals, vec![q(1, 6), q(4, 6), q(1, 6)]);
        assert!(schmidt_decomposition(&occ(&[2, 2]), 0).is_err());
        assert!(schmidt_decomposition(&occ(&[2, 2]), 4).is_err());
    }

    #[test]
    fn reduced_state_examples() {
        let r = reduced_state(&occ(&[1, 2]), 2).unwrap();
        assert_eq!(r.weight(&occ(&[1, 1])).unwrap().value(), &q(2, 3));
        assert_eq!(r.weight(&occ(&[0, 2])).unwrap().value(), &q(1, 3));

        let pure = reduced_state(&occ(&[1, 2]), 3).unwrap();
        assert_eq!(pure.weights(), &[(occ(&[1, 2]), SchmidtCoefficient(q(1, 1)))]);

        let qutrit = reduced_state(&occ(&[1, 1, 1]), 1).unwrap();
        for e in [[1, 0, 0], [0, 1, 0], [0, 0, 1]] {
            assert_eq!(qutrit.weight(&occ(&e)).unwrap().value(), &q(1, 3));
        }
        // The same weights from the dense oracle's diagonal.
        let rho = dense_partial_trace(
            &dense_dicke(&occ(&[1, 1, 1]), &DenseLimits::default()).unwrap(),
            1,
            &DenseLimits::default(),
        )
        .unwrap();
        for i in 0..3 {
            assert!((rho.matrix[(i, i)].re - 1.0 / 3.0).abs() < 1e-15);
        }

        assert!(reduced_state(&occ(&[1, 2]), 0).is_err());
        assert!(reduced_state(&occ(&[1, 2]), 4).is_err());
    }

    #[test]
    fn w_operator_structure() {
        let op = bipartite_operator(&occ(&[1, 2]), 2, 1).unwrap();
        assert_eq!(op.dim(), 4);
        assert_eq!(op.trace(), q(1, 1));
        assert!(op.is_hermitian());
        // Nonzero block lives on pairs (1,0)(0,1), (0,1)(1,0), (0,1)(0,1).
        let support: std::collections::BTreeSet<usize> = op.entries().keys().flat_map(|&(r, c)| [r, c]).collect();
        assert_eq!(support.len(), 3);
        let spec = symmetric_spectrum(&op.to_dense_f64()).unwrap();
        let rank = spec.iter().filter(|x| x.abs() > 1e-12).count();
        assert_eq!(rank, 2);
    }

    #[test]
    fn operator_trace_exact() {
        let op = bipartite_operator(&occ(&[2, 2]), 3, 1).unwrap();
        assert_eq!(op.trace(), q(1, 1));
    }

    #[test]
    fn product_state_operator_is_rank_one_projector() {
        let op = bipartite_operator(&occ(&[0, 4, 0]), 3, 2).unwrap();
        assert_eq!(op.nnz(), 1);
        let (&(r, c), v) = op.entries().iter().next().unwrap();
        assert_eq!(r, c);
        assert_eq!(v.as_rational(), Some(&q(1, 1)));
    }

    #[test]
    fn operator_range_errors() {
        let w = occ(&[1, 2]);
        assert!(matches!(
            bipartite_operator(&w, 1, 1),
            Err(DickeError::SubsystemOutOfRange { .. })
        ));
        assert!(matches!(
            bipartite_operator(&w, 4, 1),
            Err(DickeError::SubsystemOutOfRange { .. })
        ));
        assert!(matches!(
            bipartite_operator(&w, 3, 0),
            Err(DickeError::SplitOutOfRange { .. })
        ));
        assert!(matches!(
            bipartite_operator(&w, 3, 3),
            Err(DickeError::SplitOutOfRange { .. })
        ));
    }

    #[test]
    fn partial_transpose_examples() {
        let op = bipartite_operator(&occ(&[2, 1, 1]), 3, 1).unwrap();
        let pt = partial_transpose(&op);
        assert!(pt.is_transposed());
        assert_eq!(partial_transpose(&pt), op);
        assert_eq!(pt.trace(), op.trace());
        assert!(pt.is_hermitian());

        let w = bipartite_operator(&occ(&[1, 2]), 2, 1).unwrap();
        let spec = symmetric_spectrum(&partial_transpose(&w).to_dense_f64()).unwrap();
        assert!((spec[0] - (1.0 - 5f64.sqrt()) / 6.0).abs() < 1e-12);
    }

    #[test]
    fn diagonal_operator_is_transpose_invariant() {
        // Single-occupation parents give a diagonal operator.
        let op = bipartite_operator(&occ(&[0, 0, 5]), 4, 2).unwrap();
        assert_eq!(partial_transpose(&op).entries(), op.entries());
    }

    #[test]
    fn words_of_type_matches_brute_scan() {
        for x in [&[1, 2][..], &[2, 0, 1], &[1, 1, 1], &[0, 0], &[3, 2, 1]] {
            let x = occ(x);
            let d = x.dim();
            let n = x.norm();
            let brute: Vec<usize> = (0..d.pow(n as u32)).filter(|&i| word_type(i, d, n) == x).collect();
            assert_eq!(words_of_type(&x), brute, "{x}");
        }
    }

    #[test]
    fn dicke_11_embeds_as_symmetric_pair() {
        // |D_(1,1)> = (|12> + |21>) / sqrt(2).
        let ket = product_ket(&occ(&[1, 1]), &occ(&[0, 0]));
        let h = 1.0 / 2f64.sqrt();
        assert_eq!(ket.iter().map(|&(i, _)| i).collect::<Vec<_>>(), vec![1, 2]);
        assert!(ket.iter().all(|&(_, a)| (a - h).abs() < 1e-15));

        let single = reduced_state(&occ(&[0, 3]), 2).unwrap();
        let dense = single.embed_dense(&DenseLimits::default()).unwrap();
        assert_eq!(dense.matrix[(3, 3)], Complex64::new(1.0, 0.0));
        assert_eq!(dense.matrix.iter().filter(|z| z.norm() > 0.0).count(), 1);
    }

    #[test]
    fn embedded_w_matches_oracle() {
        let limits = DenseLimits::default();
        let w = occ(&[1, 2]);
        let oracle = dense_partial_trace(&dense_dicke(&w, &limits).unwrap(), 2, &limits).unwrap();
        let from_state = reduced_state(&w, 2).unwrap().embed_dense(&limits).unwrap();
        let from_op = bipartite_operator(&w, 2, 1).unwrap().embed_dense(&limits).unwrap();
        assert!(from_state.max_abs_diff(&oracle) <= 1e-12);
        assert!(from_op.max_abs_diff(&oracle) <= 1e-12);
    }

    #[test]
    fn slot_traces_reproduce_reduced_states() {
        for (x, m, k) in [
            (&[1, 2][..], 2, 1),
            (&[2, 2], 3, 1),
            (&[2, 1, 1], 4, 2),
            (&[3, 1, 2], 5, 2),
        ] {
            let parent = occ(x);
            let op = bipartite_operator(&parent, m, k).unwrap();
            let expect = |size: usize| -> BTreeMap<OccupationIndex, BigRational> {
                reduced_state(&parent, size)
                    .unwrap()
                    .weights()
                    .iter()
                    .map(|(p, w)| (p.clone(), w.value().clone()))
                    .collect()
            };
            assert_eq!(op.trace_right(), expect(k));
            assert_eq!(op.trace_left(), expect(m - k));
        }
    }

    fn parent_strategy() -> impl Strategy<Value = OccupationIndex> {
        proptest::collection::vec(0usize..4, 1..=4)
            .prop_filter("needs n >= 1", |v| v.iter().sum::<usize>() >= 1)
            .prop_map(|v| OccupationIndex::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn weights_sum_to_one_and_are_symmetric(parent in parent_strategy(), frac in 0.0f64..=1.0) {
            let n = parent.norm();
            let m = 1 + (frac * (n - 1) as f64).round() as usize;
            let state = reduced_state(&parent, m).unwrap();
            prop_assert!(state.trace().is_one());
            for (part, w) in state.weights() {
                let zero = BigRational::zero();
                prop_assert!(w.value() > &zero && w.value() <= &BigRational::one());
                let rest = parent.checked_sub(part).unwrap();
                prop_assert_eq!(schmidt_coefficient(&parent, &rest).unwrap(), w.clone());
            }
        }

        #[test]
        fn operator_is_hermitian_trace_one_and_pt_involutive(parent in parent_strategy(), a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
            let n = parent.norm();
            prop_assume!(n >= 2);
            let m = 2 + (a * (n - 2) as f64).round() as usize;
            let k = 1 + (b * (m - 2) as f64).round() as usize;
            let op = bipartite_operator(&parent, m, k).unwrap();
            prop_assert!(op.is_hermitian());
            prop_assert!(op.trace().is_one());
            for &(r, c) in op.entries().keys() {
                let (k1, mu1) = op.pair(r);
                let (k2, mu2) = op.pair(c);
                let s1 = k1.checked_add(mu1).unwrap();
                prop_assert_eq!(&s1, &k2.checked_add(mu2).unwrap());
                prop_assert!(s1.is_member_of(m, &parent));
            }
            let pt = partial_transpose(&op);
            prop_assert!(pt.is_hermitian());
            prop_assert_eq!(pt.trace(), op.trace());
            prop_assert_eq!(partial_transpose(&pt), op);
        }
    }
}
