//! Occupation-number multiindices and the index sets they range over.
//!
//! An [`OccupationIndex`] `(n_1, ..., n_d)` counts how many sites carry each
//! local basis label. The full index set holds every occupation of a fixed
//! norm; the restricted set additionally caps each entry by a bound, which
//! is the summation domain of the Dicke Schmidt decomposition.
//!
//! Every set is materialized in lexicographically descending order. Matrix
//! indexing elsewhere in the crate relies on this order.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{DickeError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OccupationIndex(Vec<usize>);

impl OccupationIndex {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() {
            return Err(DickeError::ZeroDimension);
        }
        Ok(Self(entries))
    }

    /// All-zero index of dimension `d`.
    pub fn zeros(d: usize) -> Result<Self> {
        Self::new(vec![0; d])
    }

    /// `n` particles all in local level `i`.
    pub fn single(d: usize, i: usize, n: usize) -> Result<Self> {
        let mut entries = vec![0; d];
        *entries.get_mut(i).ok_or(DickeError::DimensionMismatch {
            expected: d,
            found: i + 1,
        })? = n;
        Self::new(entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm(&self) -> usize {
        self.0.iter().sum()
    }

    /// Elementwise `self <= other`. Indices of different dimension are incomparable.
    pub fn le(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn nonzero_count(&self) -> usize {
        self.0.iter().filter(|&&x| x > 0).count()
    }

    /// Positions of the nonzero entries, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter_map(|(i, &x)| (x > 0).then_some(i))
            .collect()
    }

    /// `self - other`, or `None` if some entry would go negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        if self.dim() != other.dim() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        if self.dim() != other.dim() {
            return None;
        }
        Some(Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    /// `self + shift` for a signed shift, or `None` if some entry would go negative.
    pub fn shifted(&self, shift: &[i64]) -> Option<Self> {
        if self.dim() != shift.len() {
            return None;
        }
        self.0
            .iter()
            .zip(shift)
            .map(|(&a, &s)| {
                let v = a as i64 + s;
                (v >= 0).then_some(v as usize)
            })
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    /// Signed difference `self - other`.
    pub fn signed_diff(&self, other: &Self) -> Vec<i64> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a as i64 - b as i64)
            .collect()
    }

    /// Membership in the restricted index set `I^d_{m, bound}`.
    pub fn is_member_of(&self, m: usize, bound: &Self) -> bool {
        self.norm() == m && self.le(bound)
    }
}

impl fmt::Display for OccupationIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Parses `"1,2"` or `"(1,2)"`; whitespace around entries is ignored.
impl FromStr for OccupationIndex {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        if trimmed.trim().is_empty() {
            return Err("empty occupation".into());
        }
        let entries = trimmed
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| format!("bad occupation entry {:?}: {e}", t.trim()))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Self::new(entries).map_err(|e| e.to_string())
    }
}

/// Multinomial coefficient `|x|! / prod x_i!`, the number of distinct words of type `x`.
pub fn multinomial(x: &OccupationIndex) -> BigUint {
    // Running product of binomials C(t, j); every partial result is an integer.
    let mut acc = BigUint::one();
    let mut total = 0usize;
    for &xi in x.entries() {
        for j in 1..=xi {
            total += 1;
            acc *= total;
            acc /= j;
        }
    }
    acc
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 1..=k {
        acc *= n - k + j;
        acc /= j;
    }
    acc
}

/// A materialized, ordered index set: either `I^d_n` or `I^d_{m, bound}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSet {
    dim: usize,
    norm: usize,
    bound: Option<OccupationIndex>,
    members: Vec<OccupationIndex>,
}

impl IndexSet {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn norm(&self) -> usize {
        self.norm
    }

    pub fn bound(&self) -> Option<&OccupationIndex> {
        self.bound.as_ref()
    }

    pub fn members(&self) -> &[OccupationIndex] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, OccupationIndex> {
        self.members.iter()
    }

    pub fn contains(&self, x: &OccupationIndex) -> bool {
        x.dim() == self.dim && x.norm() == self.norm && self.bound.as_ref().is_none_or(|b| x.le(b))
    }

    pub fn into_members(self) -> Vec<OccupationIndex> {
        self.members
    }
}

impl<'a> IntoIterator for &'a IndexSet {
    type Item = &'a OccupationIndex;
    type IntoIter = std::slice::Iter<'a, OccupationIndex>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// `I^d_n`: all occupations of `d` levels with norm `n`, lexicographically descending.
pub fn enumerate_full(d: usize, n: usize) -> Result<IndexSet> {
    if d == 0 {
        return Err(DickeError::ZeroDimension);
    }
    let caps = vec![n; d];
    let mut members = Vec::new();
    descend(&caps, n, &mut Vec::with_capacity(d), &mut members);
    Ok(IndexSet {
        dim: d,
        norm: n,
        bound: None,
        members,
    })
}

/// `I^d_{m, bound}`: occupations of norm `m` bounded elementwise by `bound`.
///
/// Walks the hypercuboid slice directly with per-coordinate caps instead of
/// filtering `I^d_m`. An `m` above the bound's norm is rejected rather than
/// returning an empty set.
pub fn enumerate_restricted(m: usize, bound: &OccupationIndex) -> Result<IndexSet> {
    let bound_norm = bound.norm();
    if m > bound_norm {
        return Err(DickeError::NormExceedsBound { m, bound_norm });
    }
    let mut members = Vec::new();
    descend(bound.entries(), m, &mut Vec::with_capacity(bound.dim()), &mut members);
    Ok(IndexSet {
        dim: bound.dim(),
        norm: m,
        bound: Some(bound.clone()),
        members,
    })
}

fn descend(caps: &[usize], remaining: usize, prefix: &mut Vec<usize>, out: &mut Vec<OccupationIndex>) {
    let pos = prefix.len();
    if pos + 1 == caps.len() {
        if remaining <= caps[pos] {
            prefix.push(remaining);
            out.push(OccupationIndex(prefix.clone()));
            prefix.pop();
        }
        return;
    }
    let tail_capacity: usize = caps[pos + 1..].iter().sum();
    let hi = caps[pos].min(remaining);
    let lo = remaining.saturating_sub(tail_capacity);
    if lo > hi {
        return;
    }
    for x in (lo..=hi).rev() {
        prefix.push(x);
        descend(caps, remaining - x, prefix, out);
        prefix.pop();
    }
}

/// Range `(l_min, l_max)` of the second component `l` of `(m - l, l)` in
/// `I^2_{m, (n - e, e)}`.
pub fn qubit_bounds(n: usize, e: usize, m: usize) -> Result<(usize, usize)> {
    if e > n {
        return Err(DickeError::ExcitationsExceedParticles { e, n });
    }
    if m > n {
        return Err(DickeError::SubsystemOutOfRange { m, min: 0, max: n });
    }
    let l_min = e.saturating_sub(n - m);
    let l_max = m.min(e);
    Ok((l_min, l_max))
}

/// Qubit fast path: `I^2_{m, (n - e, e)}` from [`qubit_bounds`], in the same
/// descending order as [`enumerate_restricted`].
pub fn enumerate_qubit(n: usize, e: usize, m: usize) -> Result<Vec<OccupationIndex>> {
    let (l_min, l_max) = qubit_bounds(n, e, m)?;
    Ok((l_min..=l_max).map(|l| OccupationIndex(vec![m - l, l])).collect())
}
