//! Dense full-Hilbert-space reference computations.
//!
//! Everything here works on explicit `d^n` amplitude vectors and `d^m x d^m`
//! matrices in the computational product basis. A basis word `i_1 i_2 ... i_n`
//! (levels `0..d`) maps to the integer `sum_s i_s * d^(n-1-s)`: base-`d`
//! digits with site 1 most significant. Nothing in this module uses the
//! symmetric-basis algebra of [`crate::dicke`]; it is the independent side of
//! every cross-check.

use nalgebra::{DMatrix, DVector, SVD};
use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::error::{DickeError, Result};
use crate::linalg;
use crate::multiindex::{enumerate_restricted, multinomial, OccupationIndex};

/// Defaults: `d^n <= 2^20` amplitudes, `d^m <= 4096` matrix dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DenseLimits {
    pub max_amplitudes: usize,
    pub max_matrix_dim: usize,
}

impl Default for DenseLimits {
    fn default() -> Self {
        Self {
            max_amplitudes: 1 << 20,
            max_matrix_dim: 4096,
        }
    }
}

impl DenseLimits {
    /// Caps the vector length at `limit`; the matrix cap never exceeds it.
    pub fn with_amplitude_limit(limit: usize) -> Self {
        let base = Self::default();
        Self {
            max_amplitudes: limit,
            max_matrix_dim: base.max_matrix_dim.min(limit),
        }
    }

    pub fn check_vector(&self, d: usize, sites: usize) -> Result<usize> {
        checked_len(d, sites, self.max_amplitudes)
    }

    pub fn check_matrix(&self, d: usize, sites: usize) -> Result<usize> {
        checked_len(d, sites, self.max_matrix_dim)
    }
}

fn checked_len(d: usize, sites: usize, limit: usize) -> Result<usize> {
    match d.checked_pow(sites as u32) {
        Some(dim) if dim <= limit => Ok(dim),
        Some(dim) => Err(DickeError::DenseLimitExceeded { dim, limit }),
        None => Err(DickeError::DenseLimitExceeded { dim: usize::MAX, limit }),
    }
}

/// Amplitudes over the `d^sites` computational basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseVector {
    pub d: usize,
    pub sites: usize,
    pub amplitudes: DVector<Complex64>,
}

impl DenseVector {
    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }
}

/// A `d^sites x d^sites` Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseHermitian {
    pub d: usize,
    pub sites: usize,
    pub matrix: DMatrix<Complex64>,
}

impl DenseHermitian {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.matrix.shape(), other.matrix.shape());
        self.matrix
            .iter()
            .zip(other.matrix.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Occupation type of basis word `index` on `sites` sites.
pub fn word_type(index: usize, d: usize, sites: usize) -> OccupationIndex {
    let mut counts = vec![0usize; d];
    let mut rest = index;
    for _ in 0..sites {
        counts[rest % d] += 1;
        rest /= d;
    }
    OccupationIndex::new(counts).expect("d >= 1")
}

/// Integer amplitudes of the unnormalized Dicke vector: 1 on every word of type `parent`.
pub fn dense_dicke_unnormalized(parent: &OccupationIndex, limits: &DenseLimits) -> Result<Vec<i64>> {
    let d = parent.dim();
    let n = parent.norm();
    let len = limits.check_vector(d, n)?;
    Ok((0..len).map(|idx| i64::from(word_type(idx, d, n) == *parent)).collect())
}

/// Normalized Dicke vector: amplitude `multinomial(parent)^(-1/2)` on every word of type `parent`.
pub fn dense_dicke(parent: &OccupationIndex, limits: &DenseLimits) -> Result<DenseVector> {
    let raw = dense_dicke_unnormalized(parent, limits)?;
    let amp = 1.0 / multinomial(parent).to_f64().unwrap_or(f64::INFINITY).sqrt();
    let amplitudes = DVector::from_iterator(raw.len(), raw.iter().map(|&c| Complex64::new(c as f64 * amp, 0.0)));
    Ok(DenseVector {
        d: parent.dim(),
        sites: parent.norm(),
        amplitudes,
    })
}

fn check_keep(vec: &DenseVector, keep: usize) -> Result<()> {
    if keep == 0 || keep > vec.sites {
        return Err(DickeError::SubsystemOutOfRange {
            m: keep,
            min: 1,
            max: vec.sites,
        });
    }
    Ok(())
}

/// Reduced state on the first `keep` sites (the last `sites - keep` are traced out).
pub fn dense_partial_trace(vec: &DenseVector, keep: usize, limits: &DenseLimits) -> Result<DenseHermitian> {
    check_keep(vec, keep)?;
    let dim = limits.check_matrix(vec.d, keep)?;
    let env = vec.d.pow((vec.sites - keep) as u32);
    let psi = &vec.amplitudes;
    let matrix = DMatrix::from_fn(dim, dim, |a, b| {
        (0..env).map(|e| psi[a * env + e] * psi[b * env + e].conj()).sum()
    });
    Ok(DenseHermitian {
        d: vec.d,
        sites: keep,
        matrix,
    })
}

/// Reduced state on the last `keep` sites (the first `sites - keep` are traced out).
pub fn dense_partial_trace_leading(vec: &DenseVector, keep: usize, limits: &DenseLimits) -> Result<DenseHermitian> {
    check_keep(vec, keep)?;
    let dim = limits.check_matrix(vec.d, keep)?;
    let env = vec.d.pow((vec.sites - keep) as u32);
    let psi = &vec.amplitudes;
    let matrix = DMatrix::from_fn(dim, dim, |a, b| {
        (0..env).map(|e| psi[e * dim + a] * psi[e * dim + b].conj()).sum()
    });
    Ok(DenseHermitian {
        d: vec.d,
        sites: keep,
        matrix,
    })
}

/// Transposes the first `k` sites: `out[(a,b),(a',b')] = in[(a',b),(a,b')]`.
pub fn dense_partial_transpose(mat: &DenseHermitian, k: usize) -> Result<DenseHermitian> {
    if k == 0 || k >= mat.sites {
        return Err(DickeError::SplitOutOfRange {
            k,
            max: mat.sites.saturating_sub(1),
        });
    }
    let inner = mat.d.pow((mat.sites - k) as u32);
    let dim = mat.dim();
    let src = &mat.matrix;
    let matrix = DMatrix::from_fn(dim, dim, |r, c| {
        let (a, b) = (r / inner, r % inner);
        let (a2, b2) = (c / inner, c % inner);
        src[(a2 * inner + b, a * inner + b2)]
    });
    Ok(DenseHermitian {
        d: mat.d,
        sites: mat.sites,
        matrix,
    })
}

const HERMITIAN_TOLERANCE: f64 = 1e-9;

/// Full spectrum, ascending. Rejects inputs with Hermitian defect above `1e-9`.
pub fn dense_spectrum(mat: &DenseHermitian) -> Result<Vec<f64>> {
    let defect = linalg::hermitian_defect(&mat.matrix);
    if defect > HERMITIAN_TOLERANCE {
        return Err(DickeError::NotHermitian { defect });
    }
    linalg::hermitian_spectrum(&mat.matrix)
}

pub fn dense_min_eigenvalue(mat: &DenseHermitian) -> Result<f64> {
    Ok(dense_spectrum(mat)?.first().copied().unwrap_or(0.0))
}

/// Singular values (descending) of the vector reshaped as a
/// `d^m x d^(sites-m)` matrix, first `m` sites on the rows.
pub fn schmidt_values(vec: &DenseVector, m: usize) -> Result<Vec<f64>> {
    if m > vec.sites {
        return Err(DickeError::SubsystemOutOfRange {
            m,
            min: 0,
            max: vec.sites,
        });
    }
    let rows = vec.d.pow(m as u32);
    let cols = vec.d.pow((vec.sites - m) as u32);
    let reshaped = DMatrix::from_fn(rows, cols, |a, b| vec.amplitudes[a * cols + b]);
    let svd = SVD::try_new(reshaped, false, false, f64::EPSILON, 100_000).ok_or(DickeError::EigenFailure)?;
    let mut values: Vec<f64> = svd.singular_values.iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

/// Outcome of checking the unnormalized decomposition
/// `D~_n = sum_{m in I_{m,n}} D~_m (x) D~_{n-m}` on explicit integer vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchmidtIdentityCheck {
    pub terms: usize,
    /// Every product vector has only +1 coefficients.
    pub unit_coefficients: bool,
    /// Distinct terms share no basis word.
    pub disjoint_supports: bool,
    /// Every word of `D~_n` appears in some term.
    pub covers_parent: bool,
    /// Every word of every term appears in `D~_n`.
    pub contained_in_parent: bool,
    /// The integer sum equals `D~_n` entrywise.
    pub sum_matches: bool,
}

impl SchmidtIdentityCheck {
    pub fn holds(&self) -> bool {
        self.unit_coefficients
            && self.disjoint_supports
            && self.covers_parent
            && self.contained_in_parent
            && self.sum_matches
    }
}

/// Checks the split of `D~_parent` into the first `m` and last `n - m` sites.
pub fn verify_schmidt_identity(
    parent: &OccupationIndex,
    m: usize,
    limits: &DenseLimits,
) -> Result<SchmidtIdentityCheck> {
    let d = parent.dim();
    let n = parent.norm();
    let whole = dense_dicke_unnormalized(parent, limits)?;
    let tail_len = d.pow((n - m.min(n)) as u32);
    let parts = enumerate_restricted(m, parent)?;

    let mut unit_coefficients = true;
    let mut contained_in_parent = true;
    let mut owner: Vec<Option<usize>> = vec![None; whole.len()];
    let mut disjoint_supports = true;
    let mut sum = vec![0i64; whole.len()];

    for (t, part) in parts.iter().enumerate() {
        let rest = parent.checked_sub(part).expect("member is bounded by parent");
        let left = dense_dicke_unnormalized(part, limits)?;
        let right = dense_dicke_unnormalized(&rest, limits)?;
        for (a, &x) in left.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (b, &y) in right.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let coeff = x * y;
                let idx = a * tail_len + b;
                unit_coefficients &= coeff == 1;
                contained_in_parent &= whole[idx] != 0;
                match owner[idx] {
                    Some(prev) if prev != t => disjoint_supports = false,
                    _ => owner[idx] = Some(t),
                }
                sum[idx] += coeff;
            }
        }
    }
    let covers_parent = whole.iter().zip(&owner).all(|(&w, o)| w == 0 || o.is_some());

    Ok(SchmidtIdentityCheck {
        terms: parts.len(),
        unit_coefficients,
        disjoint_supports,
        covers_parent,
        contained_in_parent,
        sum_matches: sum == whole,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn occ(v: &[usize]) -> OccupationIndex {
        OccupationIndex::new(v.to_vec()).unwrap()
    }

    fn limits() -> DenseLimits {
        DenseLimits::default()
    }

    // Word "i_1 i_2 ..." with 1-based labels as in ket notation.
    fn ket(word: &str, d: usize) -> usize {
        word.bytes().fold(0, |acc, b| acc * d + (b - b'1') as usize)
    }

    #[test]
    fn w_state_vector() {
        let v = dense_dicke(&occ(&[1, 2]), &limits()).unwrap();
        let amp = 1.0 / 3f64.sqrt();
        for idx in 0..8 {
            let expected = if [ket("122", 2), ket("212", 2), ket("221", 2)].contains(&idx) {
                amp
            } else {
                0.0
            };
            assert!((v.amplitudes[idx].re - expected).abs() < 1e-15, "idx {idx}");
        }
    }

    #[test]
    fn single_site_is_basis_vector() {
        let v = dense_dicke(&occ(&[1, 0]), &limits()).unwrap();
        assert_eq!(v.amplitudes.len(), 2);
        assert_eq!(v.amplitudes[0], Complex64::new(1.0, 0.0));
        assert_eq!(v.amplitudes[1], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn dicke_vectors_are_normalized() {
        for d in 1..=3 {
            for n in 0..=6 {
                for x in crate::multiindex::enumerate_full(d, n).unwrap().iter() {
                    let v = dense_dicke(x, &limits()).unwrap();
                    assert!((v.norm() - 1.0).abs() < 1e-12, "{x}");
                }
            }
        }
    }

    #[test]
    fn w_partial_trace_entries() {
        let v = dense_dicke(&occ(&[1, 2]), &limits()).unwrap();
        let rho = dense_partial_trace(&v, 2, &limits()).unwrap();
        let third = 1.0 / 3.0;
        let nonzero = [
            (ket("12", 2), ket("12", 2)),
            (ket("12", 2), ket("21", 2)),
            (ket("21", 2), ket("12", 2)),
            (ket("21", 2), ket("21", 2)),
            (ket("22", 2), ket("22", 2)),
        ];
        for r in 0..4 {
            for c in 0..4 {
                let want = if nonzero.contains(&(r, c)) { third } else { 0.0 };
                assert!((rho.matrix[(r, c)].re - want).abs() < 1e-15);
            }
        }
        assert!((rho.trace().re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn full_keep_is_projector() {
        let v = dense_dicke(&occ(&[1, 1, 1]), &limits()).unwrap();
        let rho = dense_partial_trace(&v, 3, &limits()).unwrap();
        let proj = &v.amplitudes * v.amplitudes.adjoint();
        assert!((rho.matrix - proj).iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn leading_and_trailing_traces_agree() {
        for x in [&[1, 2][..], &[2, 1, 1], &[3, 3], &[1, 1, 1, 1]] {
            let v = dense_dicke(&occ(x), &limits()).unwrap();
            for m in 1..=v.sites {
                let a = dense_partial_trace(&v, m, &limits()).unwrap();
                let b = dense_partial_trace_leading(&v, m, &limits()).unwrap();
                assert!(a.max_abs_diff(&b) < 1e-15);
            }
        }
    }

    #[test]
    fn reduced_spectrum_is_schmidt_weights() {
        // (2,2), m=2: weights 1/6, 4/6, 1/6.
        let v = dense_dicke(&occ(&[2, 2]), &limits()).unwrap();
        let rho = dense_partial_trace(&v, 2, &limits()).unwrap();
        let spec = dense_spectrum(&rho).unwrap();
        let want = [0.0, 1.0 / 6.0, 1.0 / 6.0, 4.0 / 6.0];
        for (a, b) in spec.iter().zip(want) {
            assert!((a - b).abs() < 1e-12);
        }
        let sv = schmidt_values(&v, 2).unwrap();
        let sq: Vec<f64> = sv.iter().map(|s| s * s).collect();
        for (a, b) in sq.iter().zip([4.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0, 0.0]) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn partial_transpose_basics() {
        let v = dense_dicke(&occ(&[1, 2]), &limits()).unwrap();
        let rho = dense_partial_trace(&v, 2, &limits()).unwrap();
        let pt = dense_partial_transpose(&rho, 1).unwrap();
        assert_eq!(dense_partial_transpose(&pt, 1).unwrap(), rho);
        assert!((pt.trace() - rho.trace()).norm() < 1e-15);
        let min = dense_min_eigenvalue(&pt).unwrap();
        assert!((min - (1.0 - 5f64.sqrt()) / 6.0).abs() < 1e-12);

        // Product projector |1 2><1 2| stays a projector.
        let mut prod = DMatrix::zeros(4, 4);
        prod[(ket("12", 2), ket("12", 2))] = Complex64::new(1.0, 0.0);
        let prod = DenseHermitian {
            d: 2,
            sites: 2,
            matrix: prod,
        };
        let spec = dense_spectrum(&dense_partial_transpose(&prod, 1).unwrap()).unwrap();
        assert_eq!(spec, dense_spectrum(&prod).unwrap());
        assert!(spec[0] >= -1e-12);
        assert!(dense_partial_transpose(&prod, 2).is_err());
    }

    #[test]
    fn bell_like_dicke_pt_minimum() {
        let v = dense_dicke(&occ(&[1, 1]), &limits()).unwrap();
        let rho = dense_partial_trace(&v, 2, &limits()).unwrap();
        let min = dense_min_eigenvalue(&dense_partial_transpose(&rho, 1).unwrap()).unwrap();
        assert!((min + 0.5).abs() < 1e-12);
    }

    #[test]
    fn min_eigenvalue_contract() {
        let id = DenseHermitian {
            d: 2,
            sites: 2,
            matrix: DMatrix::identity(4, 4) * Complex64::new(0.25, 0.0),
        };
        assert!((dense_min_eigenvalue(&id).unwrap() - 0.25).abs() < 1e-15);
        let mut skew = id.clone();
        skew.matrix[(0, 1)] = Complex64::new(1.0, 0.0);
        assert!(matches!(
            dense_min_eigenvalue(&skew),
            Err(DickeError::NotHermitian { .. })
        ));
    }

    #[test]
    fn limits_are_enforced() {
        let tight = DenseLimits {
            max_amplitudes: 8,
            max_matrix_dim: 4,
        };
        assert!(dense_dicke(&occ(&[1, 2]), &tight).is_ok());
        assert_eq!(
            dense_dicke(&occ(&[2, 2]), &tight),
            Err(DickeError::DenseLimitExceeded { dim: 16, limit: 8 })
        );
        let v = dense_dicke(&occ(&[1, 2]), &tight).unwrap();
        assert!(matches!(
            dense_partial_trace(&v, 3, &tight),
            Err(DickeError::DenseLimitExceeded { dim: 8, limit: 4 })
        ));
        assert_eq!(DenseLimits::with_amplitude_limit(100).max_matrix_dim, 100);
    }

    #[test]
    fn schmidt_identity_w_state() {
        let check = verify_schmidt_identity(&occ(&[1, 2]), 2, &limits()).unwrap();
        assert!(check.holds());
        assert_eq!(check.terms, 2);
        // The term for (1,1) covers 122 and 212; the term for (0,2) covers 221.
        let left = dense_dicke_unnormalized(&occ(&[1, 1]), &limits()).unwrap();
        assert_eq!(left, vec![0, 1, 1, 0]);
        let single = verify_schmidt_identity(&occ(&[4, 0, 0]), 2, &limits()).unwrap();
        assert!(single.holds());
        assert_eq!(single.terms, 1);
    }
}
