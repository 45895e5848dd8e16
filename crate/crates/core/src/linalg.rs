//! Thin wrappers over nalgebra's symmetric eigensolver.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{DickeError, Result};

const MAX_SWEEPS: usize = 100_000;

/// Full spectrum of a real symmetric matrix, ascending.
pub fn symmetric_spectrum(mat: &DMatrix<f64>) -> Result<Vec<f64>> {
    blockwise_spectrum(mat, |x| *x == 0.0)
}

/// Full spectrum of a Hermitian matrix, ascending. Falls back to the real
/// solver when every imaginary part is exactly zero.
pub fn hermitian_spectrum(mat: &DMatrix<Complex64>) -> Result<Vec<f64>> {
    if mat.iter().all(|z| z.im == 0.0) {
        return symmetric_spectrum(&mat.map(|z| z.re));
    }
    blockwise_spectrum(mat, |z| *z == Complex64::new(0.0, 0.0))
}

// Sparse, highly degenerate inputs can make the QR iteration emit NaNs, so
// each connected block of the sparsity graph is solved on its own.
fn blockwise_spectrum<T>(mat: &DMatrix<T>, is_zero: impl Fn(&T) -> bool) -> Result<Vec<f64>>
where
    T: nalgebra::ComplexField<RealField = f64>,
{
    let n = mat.nrows();
    let mut values = Vec::with_capacity(n);
    for block in connected_blocks(n, |i, j| !is_zero(&mat[(i, j)]) || !is_zero(&mat[(j, i)])) {
        if block.len() == 1 {
            values.push(mat[(block[0], block[0])].clone().real());
            continue;
        }
        let sub = DMatrix::from_fn(block.len(), block.len(), |a, b| mat[(block[a], block[b])].clone());
        let eig = SymmetricEigen::try_new(sub, f64::EPSILON, MAX_SWEEPS).ok_or(DickeError::EigenFailure)?;
        values.extend(eig.eigenvalues.iter().copied());
    }
    if values.iter().any(|x| !x.is_finite()) {
        return Err(DickeError::EigenFailure);
    }
    values.sort_by(f64::total_cmp);
    Ok(values)
}

fn connected_blocks(n: usize, linked: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut label = vec![usize::MAX; n];
    let mut blocks = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let id = blocks.len();
        label[start] = id;
        let mut block = vec![start];
        let mut next = 0;
        while next < block.len() {
            let i = block[next];
            next += 1;
            for (j, slot) in label.iter_mut().enumerate() {
                if *slot == usize::MAX && linked(i, j) {
                    *slot = id;
                    block.push(j);
                }
            }
        }
        block.sort_unstable();
        blocks.push(block);
    }
    blocks
}

/// Largest `|A_ij - conj(A_ji)|`.
pub fn hermitian_defect(mat: &DMatrix<Complex64>) -> f64 {
    let n = mat.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((mat[(i, j)] - mat[(j, i)].conj()).norm());
        }
    }
    worst
}
