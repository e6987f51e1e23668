use super::{c, hermitian_eigenvalues, ComplexMatrix};
use crate::{Error, Result, DIM, QUBIT_DIM, QUTRIT_DIM};

/// Eigenvalues in `[-CLAMP_TOLERANCE, 0)` count as zero for entropies and
/// positivity checks.
pub const CLAMP_TOLERANCE: f64 = 1e-10;
/// Allowed deviation of a state's trace from one.
pub const TRACE_TOLERANCE: f64 = 1e-10;

/// Which factor of the qutrit⊗qubit space to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    /// The spin-1 particle (3×3 result).
    Qutrit,
    /// The spin-1/2 particle (2×2 result).
    Qubit,
}

/// Kronecker product: `out[(i·p + k, j·q + l)] = A[i][j]·B[k][l]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (m, n) = a.shape();
    let (p, q) = b.shape();
    let mut out = ComplexMatrix::zeros(m * p, n * q);
    for i in 0..m {
        for j in 0..n {
            let aij = a[(i, j)];
            for k in 0..p {
                for l in 0..q {
                    out[(i * p + k, j * q + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Transpose of the qutrit indices of a 6×6 operator on 3⊗2:
/// `out[(a,i)][(b,j)] = M[(b,i)][(a,j)]`.
pub fn partial_transpose_first(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    m.ensure_shape(DIM, DIM)?;
    let (da, db) = (QUTRIT_DIM, QUBIT_DIM);
    let mut out = ComplexMatrix::zeros(DIM, DIM);
    for a in 0..da {
        for b in 0..da {
            for i in 0..db {
                for j in 0..db {
                    out[(a * db + i, b * db + j)] = m[(b * db + i, a * db + j)];
                }
            }
        }
    }
    Ok(out)
}

/// Reduced operator on `keep`, tracing out the other factor.
pub fn partial_trace(m: &ComplexMatrix, keep: Subsystem) -> Result<ComplexMatrix> {
    m.ensure_shape(DIM, DIM)?;
    let (da, db) = (QUTRIT_DIM, QUBIT_DIM);
    Ok(match keep {
        Subsystem::Qutrit => {
            let mut out = ComplexMatrix::zeros(da, da);
            for a in 0..da {
                for b in 0..da {
                    let mut s = c(0.0, 0.0);
                    for i in 0..db {
                        s += m[(a * db + i, b * db + i)];
                    }
                    out[(a, b)] = s;
                }
            }
            out
        }
        Subsystem::Qubit => {
            let mut out = ComplexMatrix::zeros(db, db);
            for i in 0..db {
                for j in 0..db {
                    let mut s = c(0.0, 0.0);
                    for a in 0..da {
                        s += m[(a * db + i, a * db + j)];
                    }
                    out[(i, j)] = s;
                }
            }
            out
        }
    })
}

/// Checks the density-matrix preconditions and returns the clamped
/// spectrum (ascending).
pub(crate) fn density_spectrum(rho: &ComplexMatrix) -> Result<alloc::vec::Vec<f64>> {
    let values = hermitian_eigenvalues(rho)?;
    let trace = rho.trace().re;
    let min = values.first().copied().unwrap_or(0.0);
    if min < -CLAMP_TOLERANCE || (trace - 1.0).abs() > TRACE_TOLERANCE {
        return Err(Error::NotDensityMatrix {
            min_eigenvalue: min,
            trace,
        });
    }
    Ok(values.into_iter().map(|x| x.max(0.0)).collect())
}

/// Shannon entropy in bits of a probability vector (zeros contribute 0).
pub(crate) fn shannon_bits(probs: &[f64]) -> f64 {
    -probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * libm::log2(p))
        .sum::<f64>()
}

/// `S(ρ) = −tr ρ log₂ ρ`, in bits.
pub fn von_neumann_entropy(rho: &ComplexMatrix) -> Result<f64> {
    let spectrum = density_spectrum(rho)?;
    let s = shannon_bits(&spectrum);
    // Round-off can push a pure state a hair below zero.
    Ok(s.max(0.0))
}

/// Sum of the absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(m)?.iter().map(|x| x.abs()).sum())
}
