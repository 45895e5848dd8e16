//! Two-term witness vectors for the partial transpose of reduced Dicke states,
//! and certification of NPT genuine multipartite entanglement.
//!
//! For a split of `m` sites into `k` and `m - k`, the witness is
//!
//! ```text
//! |psi> = alpha |D_k^> (x) |D_{m^ - k^'}> + beta |D_k^'> (x) |D_{m^ - k^}>
//! ```
//!
//! with `delta = k^' - k^`. Sandwiching the partial transpose gives a 2x2
//! Hermitian form `A|alpha|^2 + B|beta|^2 + 2 Re(conj(alpha) beta) C`, which
//! takes negative values iff `A*B < C^2`. All three coefficients are exact
//! rationals (`C` only through its square).

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::dicke::{bipartite_operator, partial_transpose, schmidt_coefficient};
use crate::error::{DickeError, Result};
use crate::linalg::symmetric_spectrum;
use crate::multiindex::{multinomial, OccupationIndex};
use crate::par::Execution;

/// Spectral eigenvalues below this count as negative.
pub const SPECTRAL_NPT_THRESHOLD: f64 = -1e-10;

/// Parameters `(m^, k^, k^')` of the two-term witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessChoice {
    pub m_hat: OccupationIndex,
    pub k_hat: OccupationIndex,
    pub k_hat_prime: OccupationIndex,
    /// `k^' - k^`.
    pub delta: Vec<i64>,
    /// `(i, j)` when `delta = e_i - e_j`.
    pub positions: Option<(usize, usize)>,
}

impl WitnessChoice {
    pub fn new(m_hat: OccupationIndex, k_hat: OccupationIndex, k_hat_prime: OccupationIndex) -> Result<Self> {
        let d = m_hat.dim();
        for x in [&k_hat, &k_hat_prime] {
            if x.dim() != d {
                return Err(DickeError::DimensionMismatch {
                    expected: d,
                    found: x.dim(),
                });
            }
        }
        let delta = k_hat_prime.signed_diff(&k_hat);
        let positions = unit_pair(&delta);
        Ok(Self {
            m_hat,
            k_hat,
            k_hat_prime,
            delta,
            positions,
        })
    }

    /// Checks `m^ in I_{m,parent}`, `k^, k^' in I_{k,m^}` and `k^ != k^'`.
    pub fn validate(&self, parent: &OccupationIndex, m: usize, k: usize) -> Result<()> {
        if self.m_hat.dim() != parent.dim() {
            return Err(DickeError::DimensionMismatch {
                expected: parent.dim(),
                found: self.m_hat.dim(),
            });
        }
        if !self.m_hat.is_member_of(m, parent) {
            return Err(DickeError::InvalidWitness(format!(
                "{} is not in I_{{{m},{parent}}}",
                self.m_hat
            )));
        }
        for x in [&self.k_hat, &self.k_hat_prime] {
            if !x.is_member_of(k, &self.m_hat) {
                return Err(DickeError::InvalidWitness(format!(
                    "{x} is not in I_{{{k},{}}}",
                    self.m_hat
                )));
            }
        }
        if self.k_hat == self.k_hat_prime {
            return Err(DickeError::InvalidWitness("k^ and k^' coincide".into()));
        }
        Ok(())
    }
}

fn unit_pair(delta: &[i64]) -> Option<(usize, usize)> {
    let mut plus = None;
    let mut minus = None;
    for (idx, &v) in delta.iter().enumerate() {
        match v {
            0 => {}
            1 if plus.is_none() => plus = Some(idx),
            -1 if minus.is_none() => minus = Some(idx),
            _ => return None,
        }
    }
    plus.zip(minus)
}

/// Canonical witness: `i, j` are the first two occupied levels of `parent`,
/// `delta = e_i - e_j`, and `m^`, `k^` are filled greedily in level order
/// around the seeds `m^_i, m^_j >= 1`, `k^_j >= 1`, `k^_i <= m^_i - 1`.
pub fn choose_witness(parent: &OccupationIndex, m: usize, k: usize) -> Result<WitnessChoice> {
    let support = parent.support();
    if support.len() < 2 {
        return Err(DickeError::FullySeparable(parent.to_string()));
    }
    let n = parent.norm();
    if m < 2 || m > n {
        return Err(DickeError::SubsystemOutOfRange { m, min: 2, max: n });
    }
    if k == 0 || k >= m {
        return Err(DickeError::SplitOutOfRange { k, max: m - 1 });
    }
    let (i, j) = (support[0], support[1]);
    let d = parent.dim();

    let mut m_hat = vec![0; d];
    m_hat[i] = 1;
    m_hat[j] = 1;
    greedy_fill(&mut m_hat, parent.entries(), m - 2);

    let mut caps = m_hat.clone();
    caps[i] -= 1;
    let mut k_hat = vec![0; d];
    k_hat[j] = 1;
    greedy_fill(&mut k_hat, &caps, k - 1);

    let mut k_hat_prime = k_hat.clone();
    k_hat_prime[i] += 1;
    k_hat_prime[j] -= 1;

    let choice = WitnessChoice::new(
        OccupationIndex::new(m_hat)?,
        OccupationIndex::new(k_hat)?,
        OccupationIndex::new(k_hat_prime)?,
    )?;
    debug_assert_eq!(choice.positions, Some((i, j)));
    choice.validate(parent, m, k)?;
    Ok(choice)
}

// Adds `amount` units to `x` in level order without exceeding `caps`.
fn greedy_fill(x: &mut [usize], caps: &[usize], mut amount: usize) {
    for (slot, &cap) in x.iter_mut().zip(caps) {
        if amount == 0 {
            break;
        }
        let add = cap.saturating_sub(*slot).min(amount);
        *slot += add;
        amount -= add;
    }
    debug_assert_eq!(amount, 0, "capacity covers the requested norm");
}

/// `A|alpha|^2 + B|beta|^2 + 2 Re(conj(alpha) beta) sqrt(C^2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermitianForm2 {
    pub a: BigRational,
    pub b: BigRational,
    pub c_squared: BigRational,
    /// `m^ - delta in I_{m,n}`.
    pub lower_in_range: bool,
    /// `k^ in I_{k, m^ - delta}`.
    pub lower_split_in_range: bool,
    /// `m^ + delta in I_{m,n}`.
    pub upper_in_range: bool,
    /// `k^' in I_{k, m^ + delta}`.
    pub upper_split_in_range: bool,
}

impl HermitianForm2 {
    pub fn discriminant(&self) -> BigRational {
        &self.a * &self.b - &self.c_squared
    }

    pub fn evaluate(&self, alpha: Complex64, beta: Complex64) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let c = self.c_squared.to_f64().unwrap_or(f64::NAN).sqrt();
        a * alpha.norm_sqr() + b * beta.norm_sqr() + 2.0 * (alpha.conj() * beta).re * c
    }
}

pub fn discriminant(form: &HermitianForm2) -> BigRational {
    form.discriminant()
}

fn eta_or_zero(parent: &OccupationIndex, part: &OccupationIndex) -> BigRational {
    schmidt_coefficient(parent, part)
        .map(|c| c.into_value())
        .unwrap_or_else(|_| BigRational::zero())
}

/// Coefficients of the witness sandwich, exactly.
pub fn hermitian_form(parent: &OccupationIndex, m: usize, k: usize, choice: &WitnessChoice) -> Result<HermitianForm2> {
    choice.validate(parent, m, k)?;
    let neg: Vec<i64> = choice.delta.iter().map(|x| -x).collect();

    let shifted_term = |shift: &[i64], split: &OccupationIndex| -> (BigRational, bool, bool) {
        match choice.m_hat.shifted(shift) {
            Some(centre) if centre.is_member_of(m, parent) => {
                let split_ok = split.is_member_of(k, &centre);
                let value = if split_ok {
                    eta_or_zero(parent, &centre) * eta_or_zero(&centre, split)
                } else {
                    BigRational::zero()
                };
                (value, true, split_ok)
            }
            _ => (BigRational::zero(), false, false),
        }
    };

    let (a, lower_in_range, lower_split_in_range) = shifted_term(&neg, &choice.k_hat);
    let (b, upper_in_range, upper_split_in_range) = shifted_term(&choice.delta, &choice.k_hat_prime);

    let outer = eta_or_zero(parent, &choice.m_hat);
    let c_squared =
        &outer * &outer * eta_or_zero(&choice.m_hat, &choice.k_hat) * eta_or_zero(&choice.m_hat, &choice.k_hat_prime);

    Ok(HermitianForm2 {
        a,
        b,
        c_squared,
        lower_in_range,
        lower_split_in_range,
        upper_in_range,
        upper_split_in_range,
    })
}

/// The discriminant condition after substituting multinomials:
/// `M(n - m^ + delta) M(n - m^ - delta) [both shifts in range] < M(n - m^)^2`.
pub fn binomial_form_holds(parent: &OccupationIndex, m: usize, choice: &WitnessChoice) -> bool {
    let neg: Vec<i64> = choice.delta.iter().map(|x| -x).collect();
    let rest = |shift: &[i64]| -> Option<OccupationIndex> {
        let centre = choice.m_hat.shifted(shift)?;
        if !centre.is_member_of(m, parent) {
            return None;
        }
        parent.checked_sub(&centre)
    };
    let Some(base) = parent.checked_sub(&choice.m_hat) else {
        return false;
    };
    let rhs = {
        let b = multinomial(&base);
        &b * &b
    };
    let lhs = match (rest(&neg), rest(&choice.delta)) {
        (Some(lo), Some(hi)) => multinomial(&lo) * multinomial(&hi),
        _ => Default::default(),
    };
    lhs < rhs
}

/// `(n_i - m^_i)/(n_i - m^_i + 1) * (n_j - m^_j)/(n_j - m^_j + 1) < 1` for
/// the positions of a canonical `delta = e_i - e_j`.
pub fn two_factor_check(parent: &OccupationIndex, choice: &WitnessChoice) -> Result<bool> {
    let (i, j) = choice.positions.ok_or(DickeError::NonCanonicalShift)?;
    two_factor_holds(parent, &choice.m_hat, i, j)
}

pub fn two_factor_holds(parent: &OccupationIndex, m_hat: &OccupationIndex, i: usize, j: usize) -> Result<bool> {
    if !m_hat.le(parent) {
        return Err(DickeError::NotBounded {
            part: m_hat.to_string(),
            parent: parent.to_string(),
        });
    }
    let factor = |pos: usize| {
        let gap = (parent.entries()[pos] - m_hat.entries()[pos]) as i64;
        BigRational::new(BigInt::from(gap), BigInt::from(gap + 1))
    };
    Ok(factor(i) * factor(j) < BigRational::from_integer(1.into()))
}

/// Unit-norm minimizer of the form and the minimum value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalAmplitudes {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub value: f64,
}

/// Lowest eigenpair of `[[A, C], [C, B]]`.
pub fn optimal_amplitudes(form: &HermitianForm2) -> OptimalAmplitudes {
    let two = BigRational::from_integer(2.into());
    let mean = (&form.a + &form.b) / &two;
    let half_gap = (&form.a - &form.b) / &two;
    let radicand = &half_gap * &half_gap + &form.c_squared;
    let value = mean.to_f64().unwrap_or(f64::NAN) - radicand.to_f64().unwrap_or(f64::NAN).sqrt();

    let a = form.a.to_f64().unwrap_or(f64::NAN);
    let b = form.b.to_f64().unwrap_or(f64::NAN);
    let c = form.c_squared.to_f64().unwrap_or(f64::NAN).sqrt();
    // Two equivalent eigenvector forms; take the better-conditioned one.
    let v1 = (c, value - a);
    let v2 = (value - b, c);
    let (x, y) = if v1.0.hypot(v1.1) >= v2.0.hypot(v2.1) { v1 } else { v2 };
    let norm = x.hypot(y);
    let (alpha, beta) = if norm > 0.0 {
        (Complex64::new(x / norm, 0.0), Complex64::new(y / norm, 0.0))
    } else {
        // C = 0 and A = B: every unit vector is optimal.
        (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
    };
    OptimalAmplitudes { alpha, beta, value }
}

/// `<psi| rho^{T_k} |psi>` from the closed-form coefficients.
pub fn witness_sandwich(
    parent: &OccupationIndex,
    m: usize,
    k: usize,
    choice: &WitnessChoice,
    alpha: Complex64,
    beta: Complex64,
) -> Result<f64> {
    Ok(hermitian_form(parent, m, k, choice)?.evaluate(alpha, beta))
}

/// `<psi| rho^{T_k} |psi>` by building `|psi>` on the pair basis and
/// applying the partially transposed operator matrix.
pub fn witness_sandwich_matrix(
    parent: &OccupationIndex,
    m: usize,
    k: usize,
    choice: &WitnessChoice,
    alpha: Complex64,
    beta: Complex64,
) -> Result<f64> {
    choice.validate(parent, m, k)?;
    let pt = partial_transpose(&bipartite_operator(parent, m, k)?);
    let rest = |x: &OccupationIndex| choice.m_hat.checked_sub(x).expect("validated split");
    let first = pt
        .index_of(&choice.k_hat, &rest(&choice.k_hat_prime))
        .expect("pair lies in the operator basis");
    let second = pt
        .index_of(&choice.k_hat_prime, &rest(&choice.k_hat))
        .expect("pair lies in the operator basis");
    let mut psi = vec![Complex64::new(0.0, 0.0); pt.dim()];
    psi[first] += alpha;
    psi[second] += beta;

    let mut acc = Complex64::new(0.0, 0.0);
    for (&(r, c), v) in pt.entries() {
        acc += psi[r].conj() * v.to_f64() * psi[c];
    }
    Ok(acc.re)
}

/// Ascending spectrum of the partially transposed pair-basis operator.
pub fn pt_spectrum(parent: &OccupationIndex, m: usize, k: usize) -> Result<Vec<f64>> {
    let pt = partial_transpose(&bipartite_operator(parent, m, k)?);
    symmetric_spectrum(&pt.to_dense_f64())
}

pub fn spectral_min(parent: &OccupationIndex, m: usize, k: usize) -> Result<f64> {
    Ok(pt_spectrum(parent, m, k)?.first().copied().unwrap_or(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// NPT across every split of every subsystem, hence genuinely multipartite entangled.
    NptGme,
    FullySeparable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::NptGme => "NPT-GME",
            Verdict::FullySeparable => "fully separable",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertificationRecord {
    pub m: usize,
    pub k: usize,
    pub witness: WitnessChoice,
    pub form: HermitianForm2,
    pub discriminant: BigRational,
    pub optimal: OptimalAmplitudes,
    pub spectral_min: f64,
    /// From the exact discriminant sign.
    pub is_npt: bool,
    /// From the spectrum, against [`SPECTRAL_NPT_THRESHOLD`].
    pub spectral_npt: bool,
    pub elapsed_ms: f64,
}

impl CertificationRecord {
    pub fn optimal_witness_value(&self) -> f64 {
        self.optimal.value
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertificationReport {
    pub parent: OccupationIndex,
    /// Ascending `m`, then ascending `k`.
    pub records: Vec<CertificationRecord>,
    pub verdict: Verdict,
}

/// All `(m, k)` with `2 <= m <= n`, `1 <= k <= m - 1`, in report order.
pub fn split_grid(n: usize) -> Vec<(usize, usize)> {
    (2..=n).flat_map(|m| (1..m).map(move |k| (m, k))).collect()
}

pub fn certify_split(parent: &OccupationIndex, m: usize, k: usize) -> Result<CertificationRecord> {
    let start = Instant::now();
    let witness = choose_witness(parent, m, k)?;
    let form = hermitian_form(parent, m, k, &witness)?;
    let disc = form.discriminant();
    let optimal = optimal_amplitudes(&form);
    let spectral_min = spectral_min(parent, m, k)?;
    Ok(CertificationRecord {
        m,
        k,
        witness,
        is_npt: disc.is_negative(),
        discriminant: disc,
        form,
        optimal,
        spectral_npt: spectral_min < SPECTRAL_NPT_THRESHOLD,
        spectral_min,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

pub fn certify(parent: &OccupationIndex) -> Result<CertificationReport> {
    certify_with(parent, Execution::default())
}

/// Runs the witness and spectral checks over the whole `(m, k)` grid.
pub fn certify_with(parent: &OccupationIndex, exec: Execution) -> Result<CertificationReport> {
    let n = parent.norm();
    if n < 2 {
        return Err(DickeError::TooFewParticles { n });
    }
    if parent.nonzero_count() < 2 {
        return Ok(CertificationReport {
            parent: parent.clone(),
            records: Vec::new(),
            verdict: Verdict::FullySeparable,
        });
    }
    let records = exec
        .map(split_grid(n), |(m, k)| certify_split(parent, m, k))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    // Unreachable for Dicke states; kept so a failing witness cannot be reported as NPT-GME.
    if let Some(bad) = records.iter().find(|r| !r.is_npt) {
        return Err(DickeError::InvalidWitness(format!(
            "witness failed for m={}, k={}: discriminant {}",
            bad.m, bad.k, bad.discriminant
        )));
    }
    Ok(CertificationReport {
        parent: parent.clone(),
        records,
        verdict: Verdict::NptGme,
    })
}
