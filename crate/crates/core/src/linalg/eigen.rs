//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a
//! diagonal unitary and then applies the classic real Jacobi rotation,
//! so every step is a similarity transform `A ← G† A G` with
//!
//! ```text
//! G_pp = c,   G_pq = s·e^{iφ},
//! G_qp = −s·e^{−iφ},   G_qq = c,      a_pq = |a_pq|·e^{iφ}.
//! ```

use alloc::vec::Vec;

use super::{c, cabs, ComplexMatrix, HERMITIAN_TOLERANCE};
use crate::{Error, Result};

/// Sweep cap; a 6×6 Hermitian matrix converges in well under ten.
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with orthonormal eigenvectors stored as
/// the columns of `vectors` (column `k` pairs with `values[k]`).
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl EigenSystem {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Eigenvector `k` as a column matrix.
    pub fn vector(&self, k: usize) -> ComplexMatrix {
        self.vectors.column_at(k)
    }

    /// `V · diag(λ) · V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut scaled = self.vectors.clone();
        for i in 0..n {
            for k in 0..n {
                scaled[(i, k)] *= self.values[k];
            }
        }
        &scaled * &self.vectors.adjoint()
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    libm::sqrt(s)
}

fn frobenius_norm(a: &ComplexMatrix) -> f64 {
    libm::sqrt(a.as_slice().iter().map(|z| z.norm_sqr()).sum())
}

/// Full eigendecomposition of a Hermitian matrix.
///
/// Output is deterministic: values ascending (ties keep solver order) and
/// each eigenvector's first non-negligible component is made real positive.
pub fn hermitian_eigensystem(m: &ComplexMatrix) -> Result<EigenSystem> {
    if !m.is_square() {
        return Err(Error::BadShape {
            expected: (m.rows(), m.rows()),
            found: m.shape(),
        });
    }
    if !m.is_finite() {
        return Err(Error::NumericalFailure {
            what: "eigensolver input",
            value: f64::NAN,
        });
    }
    if !m.is_hermitian(HERMITIAN_TOLERANCE) {
        return Err(Error::NotHermitian {
            max_deviation: m.hermitian_deviation(),
        });
    }
    let n = m.rows();
    // Symmetrize so tiny anti-Hermitian noise cannot bias the rotations.
    let mut a = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        a[(i, i)] = c(m[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let z = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            a[(i, j)] = z;
            a[(j, i)] = z.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let scale = frobenius_norm(&a);
    let target = 2.0 * f64::EPSILON * scale;

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= target || off == 0.0 {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let col: Vec<_> = (0..n).map(|i| v[(i, src)]).collect();
        let largest = col.iter().map(|&z| cabs(z)).fold(0.0, f64::max);
        let phase = col
            .iter()
            .find(|&&z| cabs(z) > 1e-12 * largest.max(f64::MIN_POSITIVE))
            .map(|&z| z.conj() / cabs(z))
            .unwrap_or(c(1.0, 0.0));
        for (i, z) in col.into_iter().enumerate() {
            vectors[(i, dst)] = z * phase;
        }
    }
    Ok(EigenSystem { values, vectors })
}

/// Eigenvalues only, ascending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    hermitian_eigensystem(m).map(|es| es.values)
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = cabs(apq);
    if mag == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Pivot negligible next to both diagonals: drop it outright.
    if mag < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = c(0.0, 0.0);
        a[(q, p)] = c(0.0, 0.0);
        return;
    }
    let phase = apq / mag;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.is_finite() {
        let t = 1.0 / (theta.abs() + libm::sqrt(theta * theta + 1.0));
        if theta < 0.0 {
            -t
        } else {
            t
        }
    } else {
        0.0
    };
    let cs = 1.0 / libm::sqrt(t * t + 1.0);
    let sn = t * cs;
    let n = a.rows();
    let g_pq = phase * sn;
    let g_qp = -phase.conj() * sn;

    // A ← A·G
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * cs + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * cs;
    }
    // A ← G†·A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * cs + aqk * g_qp.conj();
        a[(q, k)] = apk * g_pq.conj() + aqk * cs;
    }
    a[(p, q)] = c(0.0, 0.0);
    a[(q, p)] = c(0.0, 0.0);
    a[(p, p)] = c(a[(p, p)].re, 0.0);
    a[(q, q)] = c(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * cs + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * cs;
    }
}
