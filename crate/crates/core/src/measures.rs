//! Negativity, mutual information and measurement-induced disturbance.
//!
//! Negativity is computed two ways: numerically from the eigenvalues of the
//! partially transposed Gibbs state, and from the analytic entries of
//! `ρ^{T₁}` (see [`ClosedFormEntries`]). MID is `Q(ρ) = I(ρ) − I(Π(ρ))`
//! where `Π` is a complete local projective measurement that leaves both
//! marginals unchanged.

use alloc::vec::Vec;

use crate::linalg::{
    c, hermitian_eigensystem, kron, partial_trace, partial_transpose_first, trace_norm,
    von_neumann_entropy, ComplexMatrix, Subsystem, CLAMP_TOLERANCE,
};
use crate::model::{thermal_state, ClosedForm, ModelParams, ThermalMode};
use crate::{Error, Result, DIM, QUBIT_DIM, QUTRIT_DIM};

/// Eigenvalues of `ρ^{T₁}` with `|μ|` below this count as zero.
pub const NEGATIVITY_THRESHOLD: f64 = 1e-12;
/// Marginal eigenvalues closer than this are treated as degenerate.
pub const MARGINAL_DEGENERACY_TOLERANCE: f64 = 1e-9;

fn ensure_state(rho: &ComplexMatrix) -> Result<()> {
    rho.ensure_shape(DIM, DIM)?;
    let es = hermitian_eigensystem(rho)?;
    let trace = rho.trace().re;
    if es.values[0] < -CLAMP_TOLERANCE || (trace - 1.0).abs() > crate::linalg::TRACE_TOLERANCE {
        return Err(Error::NotDensityMatrix {
            min_eigenvalue: es.values[0],
            trace,
        });
    }
    Ok(())
}

/// Negativity of a state together with the two unthresholded forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegativityDetail {
    /// `Σ|μ|` over eigenvalues `μ < −NEGATIVITY_THRESHOLD` of `ρ^{T₁}`.
    pub value: f64,
    /// `Σ|μ|` over every negative eigenvalue.
    pub raw: f64,
    /// `(‖ρ^{T₁}‖₁ − 1)/2`.
    pub from_trace_norm: f64,
    /// Smallest eigenvalue of `ρ^{T₁}`.
    pub min_eigenvalue: f64,
}

pub fn negativity_detail(rho: &ComplexMatrix) -> Result<NegativityDetail> {
    ensure_state(rho)?;
    let pt = partial_transpose_first(rho)?;
    let values = hermitian_eigensystem(&pt)?.values;
    // Empty float sums are -0.0; adding +0.0 keeps the output sign clean.
    let raw = values.iter().filter(|&&x| x < 0.0).map(|x| -x).sum::<f64>() + 0.0;
    let value = values
        .iter()
        .filter(|&&x| x < -NEGATIVITY_THRESHOLD)
        .map(|x| -x)
        .sum::<f64>()
        + 0.0;
    let from_trace_norm = (trace_norm(&pt)? - 1.0) / 2.0;
    Ok(NegativityDetail {
        value,
        raw,
        from_trace_norm,
        min_eigenvalue: values[0],
    })
}

/// `N(ρ) = Σ|μ_i|` over the negative eigenvalues of `ρ^{T₁}`.
pub fn negativity(rho: &ComplexMatrix) -> Result<f64> {
    negativity_detail(rho).map(|d| d.value)
}

/// Analytic entries of the Gibbs state for `J ≠ 0`, `T > 0`.
///
/// All Boltzmann factors are taken relative to the ground energy `E₀`, so
/// the stored entries are `Z·e^{E₀/T}` times the matrix elements; divide by
/// [`ClosedFormEntries::shifted_z`] to normalize. In the product basis the
/// nonzero elements of `ρ` are the diagonal
/// `(corner_low, ρ₂₂, ρ₃₃, ρ₄₄, ρ₅₅, corner_high)` plus the couplings
/// `⟨1,0|ρ|0,1⟩ = ρ₂₃` and `⟨0,0|ρ|−1,1⟩ = ρ₄₅`. Under the partial
/// transpose those couplings move to positions (1,4) and (3,6).
///
/// `ρ₂₃` is linear in both mixing coefficients,
/// `−d₋e^{b₋/2T}/(1+d₋²) − d₊e^{b₊/2T}/(1+d₊²)`; a variant with `d₊²` in
/// the second term disagrees with the numeric Gibbs state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormEntries {
    /// `e^{(−B−J)/T}`, population of `|1,1⟩`.
    pub corner_low: f64,
    pub rho22: f64,
    pub rho33: f64,
    pub rho44: f64,
    pub rho55: f64,
    /// `e^{(B−J)/T}`, population of `|−1,0⟩`.
    pub corner_high: f64,
    pub rho23: f64,
    pub rho45: f64,
    /// Sum of the shifted Boltzmann factors.
    pub shifted_z: f64,
    /// Energy shift `E₀` applied to every exponent.
    pub energy_shift: f64,
    /// The partition function itself, `e^{−E₀/T}·shifted_z`.
    pub z: f64,
}

pub fn closed_form_entries(p: &ModelParams) -> Result<ClosedFormEntries> {
    p.validate(ThermalMode::FiniteTemperature)?;
    let cf = ClosedForm::new(p.j, p.b)?;
    let (j, b, t) = (p.j, p.b, p.t);
    let e_low = j + b;
    let e_high = j - b;
    let e_a_plus = -cf.a_plus / 2.0;
    let e_a_minus = -cf.a_minus / 2.0;
    let e_b_plus = -cf.b_plus / 2.0;
    let e_b_minus = -cf.b_minus / 2.0;
    let e0 = [e_low, e_high, e_a_plus, e_a_minus, e_b_plus, e_b_minus]
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    let w = |e: f64| libm::exp(-(e - e0) / t);
    let (wa_p, wa_m, wb_p, wb_m) = (w(e_a_plus), w(e_a_minus), w(e_b_plus), w(e_b_minus));

    let nc_m = 1.0 + cf.c_minus * cf.c_minus;
    let nc_p = 1.0 + cf.c_plus * cf.c_plus;
    let nd_m = 1.0 + cf.d_minus * cf.d_minus;
    let nd_p = 1.0 + cf.d_plus * cf.d_plus;

    let corner_low = w(e_low);
    let corner_high = w(e_high);
    let rho22 = cf.d_minus * cf.d_minus * wb_m / nd_m + cf.d_plus * cf.d_plus * wb_p / nd_p;
    let rho33 = wb_m / nd_m + wb_p / nd_p;
    let rho44 = cf.c_minus * cf.c_minus * wa_p / nc_m + cf.c_plus * cf.c_plus * wa_m / nc_p;
    let rho55 = wa_p / nc_m + wa_m / nc_p;
    let rho23 = -cf.d_minus * wb_m / nd_m - cf.d_plus * wb_p / nd_p;
    let rho45 = cf.c_minus * wa_p / nc_m + cf.c_plus * wa_m / nc_p;
    let shifted_z = corner_low + corner_high + wa_p + wa_m + wb_p + wb_m;
    let z = libm::exp(-e0 / t) * shifted_z;
    if !z.is_finite() {
        return Err(Error::NumericalFailure {
            what: "closed-form partition function",
            value: z,
        });
    }
    Ok(ClosedFormEntries {
        corner_low,
        rho22,
        rho33,
        rho44,
        rho55,
        corner_high,
        rho23,
        rho45,
        shifted_z,
        energy_shift: e0,
        z,
    })
}

impl ClosedFormEntries {
    fn normalized_diagonal(&self) -> [f64; DIM] {
        let n = self.shifted_z;
        [
            self.corner_low / n,
            self.rho22 / n,
            self.rho33 / n,
            self.rho44 / n,
            self.rho55 / n,
            self.corner_high / n,
        ]
    }

    /// The Gibbs state `ρ(T)`.
    pub fn density_matrix(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::from_real_diagonal(&self.normalized_diagonal());
        let (c23, c45) = (self.rho23 / self.shifted_z, self.rho45 / self.shifted_z);
        m[(1, 2)] = c(c23, 0.0);
        m[(2, 1)] = c(c23, 0.0);
        m[(3, 4)] = c(c45, 0.0);
        m[(4, 3)] = c(c45, 0.0);
        m
    }

    /// `ρ^{T₁}`: same diagonal, couplings at (1,4)/(4,1) and (3,6)/(6,3).
    pub fn partial_transpose(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::from_real_diagonal(&self.normalized_diagonal());
        let (c23, c45) = (self.rho23 / self.shifted_z, self.rho45 / self.shifted_z);
        m[(0, 3)] = c(c23, 0.0);
        m[(3, 0)] = c(c23, 0.0);
        m[(2, 5)] = c(c45, 0.0);
        m[(5, 2)] = c(c45, 0.0);
        m
    }

    /// `Π(ρ)` in the product basis: the diagonal of `ρ`.
    pub fn dephased(&self) -> ComplexMatrix {
        ComplexMatrix::from_real_diagonal(&self.normalized_diagonal())
    }

    /// Diagonal of the qutrit marginal.
    pub fn qutrit_marginal(&self) -> [f64; QUTRIT_DIM] {
        let d = self.normalized_diagonal();
        [d[0] + d[1], d[2] + d[3], d[4] + d[5]]
    }

    /// Diagonal of the qubit marginal.
    pub fn qubit_marginal(&self) -> [f64; QUBIT_DIM] {
        let d = self.normalized_diagonal();
        [d[0] + d[2] + d[4], d[1] + d[3] + d[5]]
    }
}

/// Lower eigenvalue of `[[a, x], [x, b]]` without cancellation when
/// `ab ≈ x²`.
fn lower_root(a: f64, b: f64, x: f64) -> f64 {
    let half_sum = 0.5 * (a + b);
    let half_diff = 0.5 * (a - b);
    let radius = libm::hypot(half_diff, x);
    if half_sum > 0.0 {
        (a * b - x * x) / (half_sum + radius)
    } else {
        half_sum - radius
    }
}

/// Negativity from the analytic `ρ^{T₁}`: two decoupled 2×2 blocks plus
/// two nonnegative diagonal entries.
pub fn negativity_closed_form(p: &ModelParams) -> Result<f64> {
    let e = closed_form_entries(p)?;
    let n = e.shifted_z;
    let lows = [
        lower_root(e.corner_low / n, e.rho44 / n, e.rho23 / n),
        lower_root(e.rho33 / n, e.corner_high / n, e.rho45 / n),
    ];
    Ok(lows
        .iter()
        .filter(|&&x| x < -NEGATIVITY_THRESHOLD)
        .map(|x| -x)
        .sum::<f64>()
        + 0.0)
}

/// `Π(ρ) = Σ_ij (|i⟩⟨i|⊗|j⟩⟨j|) ρ (|i⟩⟨i|⊗|j⟩⟨j|)` in the product basis,
/// i.e. the diagonal part of `ρ`.
pub fn local_dephase(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    ensure_state(rho)?;
    Ok(rho.diagonal_part())
}

/// Dephasing with arbitrary rank-one local projectors.
pub fn local_dephase_in(
    rho: &ComplexMatrix,
    qutrit_projectors: &[ComplexMatrix],
    qubit_projectors: &[ComplexMatrix],
) -> Result<ComplexMatrix> {
    ensure_state(rho)?;
    let mut out = ComplexMatrix::zeros(DIM, DIM);
    for pa in qutrit_projectors {
        pa.ensure_shape(QUTRIT_DIM, QUTRIT_DIM)?;
        for pb in qubit_projectors {
            pb.ensure_shape(QUBIT_DIM, QUBIT_DIM)?;
            let proj = kron(pa, pb);
            out = &out + &(&(&proj * rho) * &proj);
        }
    }
    Ok(out)
}

/// `I(ρ) = S(ρ¹) + S(ρ²) − S(ρ)` in bits.
pub fn mutual_information(rho: &ComplexMatrix) -> Result<f64> {
    Ok(entropies(rho)?.mutual_information())
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Entropies {
    joint: f64,
    qutrit: f64,
    qubit: f64,
}

impl Entropies {
    fn mutual_information(&self) -> f64 {
        self.qutrit + self.qubit - self.joint
    }
}

fn entropies(rho: &ComplexMatrix) -> Result<Entropies> {
    rho.ensure_shape(DIM, DIM)?;
    Ok(Entropies {
        joint: von_neumann_entropy(rho)?,
        qutrit: von_neumann_entropy(&partial_trace(rho, Subsystem::Qutrit)?)?,
        qubit: von_neumann_entropy(&partial_trace(rho, Subsystem::Qubit)?)?,
    })
}

/// Spectral projectors of a marginal. Returns the projectors and whether
/// the spectrum is degenerate (which makes the induced measurement, and so
/// MID, basis-dependent).
///
/// A marginal that is already diagonal uses the computational basis, which
/// fixes the choice inside degenerate blocks; otherwise eigenvectors follow
/// the eigensolver's ascending-eigenvalue order and phase convention.
pub fn spectral_projectors(marginal: &ComplexMatrix) -> Result<(Vec<ComplexMatrix>, bool)> {
    let es = hermitian_eigensystem(marginal)?;
    let degenerate = es
        .values
        .windows(2)
        .any(|w| w[1] - w[0] < MARGINAL_DEGENERACY_TOLERANCE);
    let n = marginal.rows();
    let projectors = if marginal.max_off_diagonal() == 0.0 {
        (0..n)
            .map(|k| {
                let mut p = ComplexMatrix::zeros(n, n);
                p[(k, k)] = c(1.0, 0.0);
                p
            })
            .collect()
    } else {
        (0..n)
            .map(|k| ComplexMatrix::projector(&es.vector(k)))
            .collect()
    };
    Ok((projectors, degenerate))
}

/// MID of an arbitrary 3⊗2 state.
#[derive(Debug, Clone, PartialEq)]
pub struct MidBreakdown {
    pub mutual_information: f64,
    pub classical_correlation: f64,
    /// `mutual_information − classical_correlation`, unclamped.
    pub mid: f64,
    pub dephased: ComplexMatrix,
    /// At least one marginal has a degenerate spectrum.
    pub basis_ambiguous: bool,
}

/// `Q(ρ)` using the measurement induced by the spectral resolutions of
/// both marginals.
pub fn measurement_induced_disturbance(rho: &ComplexMatrix) -> Result<MidBreakdown> {
    ensure_state(rho)?;
    let (pa, amb_a) = spectral_projectors(&partial_trace(rho, Subsystem::Qutrit)?)?;
    let (pb, amb_b) = spectral_projectors(&partial_trace(rho, Subsystem::Qubit)?)?;
    let dephased = local_dephase_in(rho, &pa, &pb)?;
    let total = mutual_information(rho)?;
    let classical = mutual_information(&dephased)?;
    Ok(MidBreakdown {
        mutual_information: total,
        classical_correlation: classical,
        mid: total - classical,
        dephased,
        basis_ambiguous: amb_a || amb_b,
    })
}

/// Per-point results for one parameter set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationReport {
    pub params: ModelParams,
    pub mode: ThermalMode,
    /// Partition function (ground degeneracy in the zero-temperature limit).
    pub z: f64,
    pub negativity: f64,
    /// Sum over every negative eigenvalue of `ρ^{T₁}`, no threshold.
    pub negativity_raw: f64,
    /// `(‖ρ^{T₁}‖₁ − 1)/2`.
    pub negativity_trace_norm: f64,
    /// `Q = I(ρ) − I(Π(ρ))`, bits.
    pub mid: f64,
    pub mid_raw: f64,
    pub mutual_information: f64,
    pub mutual_information_raw: f64,
    /// `I(Π(ρ))`, bits.
    pub classical_correlation: f64,
    pub classical_correlation_raw: f64,
    pub entropy_joint: f64,
    pub entropy_qutrit: f64,
    pub entropy_qubit: f64,
    pub entropy_dephased: f64,
}

fn clamp_nonnegative(what: &'static str, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::NumericalFailure { what, value: x });
    }
    if x < -CLAMP_TOLERANCE {
        return Err(Error::NumericalFailure { what, value: x });
    }
    Ok(x.max(0.0))
}

/// Negativity, MID and the underlying entropies of the thermal state at
/// `p`. The measurement is the product-basis one; the marginals of the
/// Gibbs state are diagonal there, so it is their spectral resolution.
pub fn mid(p: &ModelParams, mode: ThermalMode) -> Result<CorrelationReport> {
    let state = thermal_state(p, mode)?;
    let rho = &state.rho;
    let neg = negativity_detail(rho)?;
    let ent = entropies(rho)?;
    let dephased = rho.diagonal_part();
    let ent_d = entropies(&dephased)?;

    let mi_raw = ent.mutual_information();
    let cc_raw = ent_d.mutual_information();
    let mid_raw = mi_raw - cc_raw;
    let mutual_information = clamp_nonnegative("mutual information", mi_raw)?;
    let classical_correlation = clamp_nonnegative("classical correlation", cc_raw)?;
    let mid = clamp_nonnegative("measurement-induced disturbance", mid_raw)?;
    let negativity = neg.value;
    if !(negativity.is_finite() && negativity <= 0.5 + 1e-12) {
        return Err(Error::NumericalFailure {
            what: "negativity",
            value: negativity,
        });
    }
    Ok(CorrelationReport {
        params: *p,
        mode,
        z: state.z,
        negativity,
        negativity_raw: neg.raw,
        negativity_trace_norm: neg.from_trace_norm,
        mid,
        mid_raw,
        mutual_information,
        mutual_information_raw: mi_raw,
        classical_correlation,
        classical_correlation_raw: cc_raw,
        entropy_joint: ent.joint,
        entropy_qutrit: ent.qutrit,
        entropy_qubit: ent.qubit,
        entropy_dephased: ent_d.joint,
    })
}
