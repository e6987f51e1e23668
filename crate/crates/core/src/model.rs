//! Spin operators, Hamiltonian, spectrum and Gibbs state of the
//! spin-(1, 1/2) dimer.
//!
//! The qubit couples through the full Pauli matrices (eigenvalues ±1), not
//! `σ/2`. With that convention `|1,1⟩` and `|−1,0⟩` are eigenstates with
//! energies `J + B` and `J − B`.
//!
//! Two independent routes to the spectrum exist: [`closed_form_spectrum`]
//! evaluates the analytic eigenpairs, [`numeric_spectrum`] diagonalizes the
//! assembled matrix. The numeric route is primary (it is defined at `J = 0`)
//! and the closed form serves as a cross-check.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, SQRT_2};
use core::fmt;

use crate::linalg::{c, hermitian_eigensystem, kron, ComplexMatrix, EigenSystem};
use crate::{Error, Result, DIM};

/// Below this `|J|` the closed forms lose accuracy and only the numeric
/// path is used.
pub const MIN_CLOSED_FORM_COUPLING: f64 = 1e-3;
/// Levels within this distance of the minimum form the ground manifold.
pub const GROUND_DEGENERACY_TOLERANCE: f64 = 1e-9;
/// Relative tolerance for the closed-form cross-check inside
/// [`thermal_state`].
pub const CROSS_CHECK_TOLERANCE: f64 = 1e-9;

/// One physical configuration: coupling `J`, field `B` on the qubit and
/// temperature `T` (all dimensionless, `k_B = 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub j: f64,
    pub b: f64,
    pub t: f64,
    /// Accept `B < 0`. Off by default since the model is studied for `B ≥ 0`.
    pub allow_negative_field: bool,
}

impl ModelParams {
    pub fn new(j: f64, b: f64, t: f64) -> Self {
        Self {
            j,
            b,
            t,
            allow_negative_field: false,
        }
    }

    pub fn with_negative_field(mut self, allow: bool) -> Self {
        self.allow_negative_field = allow;
        self
    }

    pub fn with_temperature(mut self, t: f64) -> Self {
        self.t = t;
        self
    }

    /// Checks `J` and `B`; the temperature is checked by the operations
    /// that need it.
    pub fn validate_couplings(&self) -> Result<()> {
        if !self.j.is_finite() {
            return Err(Error::NonFiniteParameter("J"));
        }
        if !self.b.is_finite() {
            return Err(Error::NonFiniteParameter("B"));
        }
        if self.b < 0.0 && !self.allow_negative_field {
            return Err(Error::NegativeField(self.b));
        }
        Ok(())
    }

    pub fn validate(&self, mode: ThermalMode) -> Result<()> {
        self.validate_couplings()?;
        if mode == ThermalMode::FiniteTemperature {
            if self.t.is_nan() || self.t.is_infinite() {
                return Err(Error::NonFiniteParameter("T"));
            }
            if self.t <= 0.0 {
                return Err(Error::NonPositiveTemperature(self.t));
            }
        }
        Ok(())
    }
}

/// How the thermal state is formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThermalMode {
    /// `e^{−H/T}/Z` at the given `T > 0`.
    FiniteTemperature,
    /// `T → 0⁺`: uniform mixture over the ground manifold; `T` is ignored.
    ZeroTemperatureLimit,
}

/// The spin-1 operators `S₁ˣ, S₁ʸ, S₁ᶻ` and the Pauli matrices.
#[derive(Debug, Clone)]
pub struct SpinOperators {
    pub sx: ComplexMatrix,
    pub sy: ComplexMatrix,
    pub sz: ComplexMatrix,
    pub pauli_x: ComplexMatrix,
    pub pauli_y: ComplexMatrix,
    pub pauli_z: ComplexMatrix,
}

pub fn spin_operators() -> SpinOperators {
    let r = FRAC_1_SQRT_2;
    let z = c(0.0, 0.0);
    let sy = ComplexMatrix::from_row_major(
        3,
        3,
        alloc::vec![z, c(0.0, -r), z, c(0.0, r), z, c(0.0, -r), z, c(0.0, r), z],
    );
    SpinOperators {
        sx: ComplexMatrix::from_real_rows(&[[0.0, r, 0.0], [r, 0.0, r], [0.0, r, 0.0]]),
        sy,
        sz: ComplexMatrix::from_real_diagonal(&[1.0, 0.0, -1.0]),
        pauli_x: ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]),
        pauli_y: ComplexMatrix::from_row_major(2, 2, alloc::vec![z, c(0.0, -1.0), c(0.0, 1.0), z]),
        pauli_z: ComplexMatrix::from_real_diagonal(&[1.0, -1.0]),
    }
}

/// `H = J·Σ_α S₁^α⊗σ^α + B·(I₃⊗σᶻ)`.
pub fn build_hamiltonian(p: &ModelParams) -> ComplexMatrix {
    let ops = spin_operators();
    let exchange = &(&kron(&ops.sx, &ops.pauli_x) + &kron(&ops.sy, &ops.pauli_y))
        + &kron(&ops.sz, &ops.pauli_z);
    let zeeman = kron(&ComplexMatrix::identity(3), &ops.pauli_z);
    &exchange.scale(p.j) + &zeeman.scale(p.b)
}

/// Row index of `|x, y⟩` with `x ∈ {1, 0, −1}` and `y ∈ {1, 0}`.
pub const fn basis_index(x: i8, y: u8) -> usize {
    (2 * (1 - x as i32) + (1 - y as i32)) as usize
}

/// Scalars of the analytic eigensystem for given `(J, B)`.
///
/// `a± = J ± Λ₋`, `b± = J ± Λ₊` with `Λ± = √(4B² ± 4BJ + 9J²)`, and the
/// mixing coefficients `c± = (a± − 2B)/(2√2 J)`, `d± = (b± + 2B)/(2√2 J)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForm {
    pub j: f64,
    pub b: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub a_plus: f64,
    pub a_minus: f64,
    pub b_plus: f64,
    pub b_minus: f64,
    pub c_plus: f64,
    pub c_minus: f64,
    pub d_plus: f64,
    pub d_minus: f64,
}

impl ClosedForm {
    pub fn new(j: f64, b: f64) -> Result<Self> {
        if j == 0.0 {
            return Err(Error::DegenerateCoupling);
        }
        let lambda_plus = libm::sqrt(4.0 * b * b + 4.0 * b * j + 9.0 * j * j);
        let lambda_minus = libm::sqrt(4.0 * b * b - 4.0 * b * j + 9.0 * j * j);
        let a_plus = j + lambda_minus;
        let a_minus = j - lambda_minus;
        let b_plus = j + lambda_plus;
        let b_minus = j - lambda_plus;
        let denom = 2.0 * SQRT_2 * j;
        Ok(Self {
            j,
            b,
            lambda_plus,
            lambda_minus,
            a_plus,
            a_minus,
            b_plus,
            b_minus,
            c_plus: (a_plus - 2.0 * b) / denom,
            c_minus: (a_minus - 2.0 * b) / denom,
            d_plus: (b_plus + 2.0 * b) / denom,
            d_minus: (b_minus + 2.0 * b) / denom,
        })
    }
}

/// Labels of the six analytic eigenstates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelLabel {
    Psi1,
    Psi2,
    Psi3Plus,
    Psi3Minus,
    Psi4Plus,
    Psi4Minus,
}

impl LevelLabel {
    pub const ALL: [LevelLabel; 6] = [
        LevelLabel::Psi1,
        LevelLabel::Psi2,
        LevelLabel::Psi3Plus,
        LevelLabel::Psi3Minus,
        LevelLabel::Psi4Plus,
        LevelLabel::Psi4Minus,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LevelLabel::Psi1 => "psi1",
            LevelLabel::Psi2 => "psi2",
            LevelLabel::Psi3Plus => "psi3+",
            LevelLabel::Psi3Minus => "psi3-",
            LevelLabel::Psi4Plus => "psi4+",
            LevelLabel::Psi4Minus => "psi4-",
        }
    }
}

impl fmt::Display for LevelLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Level {
    pub label: LevelLabel,
    pub energy: f64,
    /// Normalized 6×1 column.
    pub vector: ComplexMatrix,
}

/// The six analytic eigenpairs, in [`LevelLabel::ALL`] order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub levels: Vec<Level>,
}

impl Spectrum {
    pub fn level(&self, label: LevelLabel) -> &Level {
        self.levels
            .iter()
            .find(|l| l.label == label)
            .expect("spectrum holds every label")
    }

    /// Energies sorted ascending.
    pub fn sorted_energies(&self) -> Vec<f64> {
        let mut e: Vec<f64> = self.levels.iter().map(|l| l.energy).collect();
        e.sort_by(f64::total_cmp);
        e
    }
}

fn two_level_state(i: usize, amp_i: f64, k: usize, amp_k: f64) -> ComplexMatrix {
    let norm = libm::sqrt(amp_i * amp_i + amp_k * amp_k);
    let mut v = ComplexMatrix::zeros(DIM, 1);
    v[(i, 0)] = c(amp_i / norm, 0.0);
    v[(k, 0)] = c(amp_k / norm, 0.0);
    v
}

/// Analytic eigenpairs.
///
/// `ψ₃±` carries the coefficient `c∓` (energy `−a±/2`) and `ψ₄±` carries
/// `d±` (energy `−b±/2`); both pairings were confirmed by substitution
/// into `H`.
pub fn closed_form_spectrum(p: &ModelParams) -> Result<Spectrum> {
    p.validate_couplings()?;
    let cf = ClosedForm::new(p.j, p.b)?;
    let (j, b) = (p.j, p.b);
    let m1_0 = basis_index(-1, 0);
    let p1_1 = basis_index(1, 1);
    let m1_1 = basis_index(-1, 1);
    let z0_0 = basis_index(0, 0);
    let z0_1 = basis_index(0, 1);
    let p1_0 = basis_index(1, 0);

    let mut psi1 = ComplexMatrix::zeros(DIM, 1);
    psi1[(m1_0, 0)] = c(1.0, 0.0);
    let mut psi2 = ComplexMatrix::zeros(DIM, 1);
    psi2[(p1_1, 0)] = c(1.0, 0.0);

    let levels = alloc::vec![
        Level {
            label: LevelLabel::Psi1,
            energy: j - b,
            vector: psi1,
        },
        Level {
            label: LevelLabel::Psi2,
            energy: j + b,
            vector: psi2,
        },
        Level {
            label: LevelLabel::Psi3Plus,
            energy: -cf.a_plus / 2.0,
            vector: two_level_state(m1_1, 1.0, z0_0, cf.c_minus),
        },
        Level {
            label: LevelLabel::Psi3Minus,
            energy: -cf.a_minus / 2.0,
            vector: two_level_state(m1_1, 1.0, z0_0, cf.c_plus),
        },
        Level {
            label: LevelLabel::Psi4Plus,
            energy: -cf.b_plus / 2.0,
            vector: two_level_state(z0_1, 1.0, p1_0, -cf.d_plus),
        },
        Level {
            label: LevelLabel::Psi4Minus,
            energy: -cf.b_minus / 2.0,
            vector: two_level_state(z0_1, 1.0, p1_0, -cf.d_minus),
        },
    ];
    Ok(Spectrum { levels })
}

/// Eigensystem of the assembled Hamiltonian.
pub fn numeric_spectrum(p: &ModelParams) -> Result<EigenSystem> {
    p.validate_couplings()?;
    hermitian_eigensystem(&build_hamiltonian(p))
}

/// Closed-form partition function
/// `Z = 2e^{−J/T}[cosh(B/T) + e^{3J/(2T)}(cosh(Λ₊/2T) + cosh(Λ₋/2T))]`.
pub fn partition_function(p: &ModelParams) -> Result<f64> {
    p.validate(ThermalMode::FiniteTemperature)?;
    let (j, b, t) = (p.j, p.b, p.t);
    let lp = libm::sqrt(4.0 * b * b + 4.0 * b * j + 9.0 * j * j);
    let lm = libm::sqrt(4.0 * b * b - 4.0 * b * j + 9.0 * j * j);
    let z = 2.0
        * libm::exp(-j / t)
        * (libm::cosh(b / t)
            + libm::exp(1.5 * j / t) * (libm::cosh(lp / (2.0 * t)) + libm::cosh(lm / (2.0 * t))));
    if !z.is_finite() {
        return Err(Error::NumericalFailure {
            what: "partition function",
            value: z,
        });
    }
    Ok(z)
}

/// Boltzmann sum `Σ_k e^{−E_k/T}` over a list of energies.
pub fn boltzmann_sum(energies: &[f64], t: f64) -> f64 {
    let e0 = energies.iter().copied().fold(f64::INFINITY, f64::min);
    let shifted: f64 = energies.iter().map(|&e| libm::exp(-(e - e0) / t)).sum();
    libm::exp(-e0 / t) * shifted
}

/// A Gibbs state (or its `T → 0⁺` limit).
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalState {
    pub params: ModelParams,
    pub mode: ThermalMode,
    pub rho: ComplexMatrix,
    /// Partition function. In the zero-temperature limit this is the
    /// ground-state degeneracy, i.e. `lim Z·e^{E₀/T}`. Overflows to `+inf`
    /// at very low `T`; `log_z` stays finite.
    pub z: f64,
    /// Natural logarithm of `z`.
    pub log_z: f64,
    pub ground_energy: f64,
    /// Size of the ground manifold (within [`GROUND_DEGENERACY_TOLERANCE`]).
    pub ground_degeneracy: usize,
}

impl ThermalState {
    /// `tr(ρH)`.
    pub fn mean_energy(&self) -> f64 {
        (&self.rho * &build_hamiltonian(&self.params)).trace().re
    }
}

/// Builds `ρ = Σ_l e^{−E_l/T}|ψ_l⟩⟨ψ_l| / Z` from the numeric eigensystem.
///
/// For `|J| ≥ MIN_CLOSED_FORM_COUPLING` the numeric energies and `Z` are
/// checked against the closed forms; a mismatch is reported as
/// [`Error::CrossCheck`].
pub fn thermal_state(p: &ModelParams, mode: ThermalMode) -> Result<ThermalState> {
    p.validate(mode)?;
    let es = numeric_spectrum(p)?;
    let e0 = es.values[0];
    let ground_degeneracy = es
        .values
        .iter()
        .take_while(|&&e| e - e0 <= GROUND_DEGENERACY_TOLERANCE)
        .count();

    let weights: Vec<f64> = match mode {
        ThermalMode::FiniteTemperature => es
            .values
            .iter()
            .map(|&e| libm::exp(-(e - e0) / p.t))
            .collect(),
        ThermalMode::ZeroTemperatureLimit => (0..DIM)
            .map(|k| if k < ground_degeneracy { 1.0 } else { 0.0 })
            .collect(),
    };
    let total: f64 = weights.iter().sum();
    let mut scaled = es.vectors.clone();
    for i in 0..DIM {
        for (k, w) in weights.iter().enumerate() {
            scaled[(i, k)] *= w / total;
        }
    }
    let rho = &scaled * &es.vectors.adjoint();

    let log_z = match mode {
        ThermalMode::FiniteTemperature => -e0 / p.t + libm::log(total),
        ThermalMode::ZeroTemperatureLimit => libm::log(total),
    };
    let z = libm::exp(log_z);
    if log_z.is_nan() || !rho.is_finite() {
        return Err(Error::NumericalFailure {
            what: "thermal state",
            value: log_z,
        });
    }

    if p.j.abs() >= MIN_CLOSED_FORM_COUPLING {
        let analytic = closed_form_spectrum(p)?.sorted_energies();
        let scale = 1.0 + p.j.abs() + p.b.abs();
        let dev = analytic
            .iter()
            .zip(&es.values)
            .map(|(a, n)| (a - n).abs())
            .fold(0.0, f64::max);
        if dev > CROSS_CHECK_TOLERANCE * scale {
            return Err(Error::CrossCheck {
                what: "energies",
                deviation: dev,
            });
        }
        if mode == ThermalMode::FiniteTemperature && z.is_finite() {
            let zc = partition_function(p)?;
            let rel = (zc - z).abs() / z;
            if rel > CROSS_CHECK_TOLERANCE {
                return Err(Error::CrossCheck {
                    what: "partition function",
                    deviation: rel,
                });
            }
        }
    }

    Ok(ThermalState {
        params: *p,
        mode,
        rho,
        z,
        log_z,
        ground_energy: e0,
        ground_degeneracy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitian_eigenvalues;

    fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
        &(a * b) - &(b * a)
    }

    #[test]
    fn spin_one_algebra() {
        let o = spin_operators();
        assert_eq!(o.sz, ComplexMatrix::from_real_diagonal(&[1.0, 0.0, -1.0]));
        let i_sz = o.sz.scale_complex(c(0.0, 1.0));
        assert!(commutator(&o.sx, &o.sy).max_abs_diff(&i_sz) < 1e-15);
        assert!(commutator(&o.sy, &o.sz).max_abs_diff(&o.sx.scale_complex(c(0.0, 1.0))) < 1e-15);
        assert!(commutator(&o.sz, &o.sx).max_abs_diff(&o.sy.scale_complex(c(0.0, 1.0))) < 1e-15);
        let casimir = &(&(&o.sx * &o.sx) + &(&o.sy * &o.sy)) + &(&o.sz * &o.sz);
        assert!(casimir.max_abs_diff(&ComplexMatrix::identity(3).scale(2.0)) < 1e-15);
        for m in [&o.sx, &o.sy, &o.sz, &o.pauli_x, &o.pauli_y, &o.pauli_z] {
            assert!(m.is_hermitian(1e-15));
        }
    }

    #[test]
    fn pauli_algebra() {
        let o = spin_operators();
        let two_i_z = o.pauli_z.scale_complex(c(0.0, 2.0));
        assert!(commutator(&o.pauli_x, &o.pauli_y).max_abs_diff(&two_i_z) < 1e-15);
        assert_eq!(
            hermitian_eigenvalues(&o.pauli_z).unwrap(),
            alloc::vec![-1.0, 1.0]
        );
    }

    #[test]
    fn hamiltonian_special_cases() {
        let h0 = build_hamiltonian(&ModelParams::new(0.0, 0.0, 1.0));
        assert_eq!(h0.max_abs(), 0.0);
        let hb = build_hamiltonian(&ModelParams::new(0.0, 2.0, 1.0));
        assert!(
            hb.max_abs_diff(&ComplexMatrix::from_real_diagonal(&[
                2.0, -2.0, 2.0, -2.0, 2.0, -2.0
            ])) == 0.0
        );
        let h = build_hamiltonian(&ModelParams::new(1.0, 0.0, 1.0));
        assert!(h.hermitian_deviation() < 1e-14);
        let e = hermitian_eigenvalues(&h).unwrap();
        let expected = [-2.0, -2.0, 1.0, 1.0, 1.0, 1.0];
        for (x, y) in e.iter().zip(expected) {
            assert!((x - y).abs() < 1e-12, "{e:?}");
        }
    }

    #[test]
    fn basis_order() {
        assert_eq!(basis_index(1, 1), 0);
        assert_eq!(basis_index(1, 0), 1);
        assert_eq!(basis_index(0, 1), 2);
        assert_eq!(basis_index(0, 0), 3);
        assert_eq!(basis_index(-1, 1), 4);
        assert_eq!(basis_index(-1, 0), 5);
        // |1,1⟩ and |−1,0⟩ sit on the diagonal with J ± B.
        let p = ModelParams::new(0.7, 0.3, 1.0);
        let h = build_hamiltonian(&p);
        assert!((h[(0, 0)].re - 1.0).abs() < 1e-15);
        assert!((h[(5, 5)].re - 0.4).abs() < 1e-15);
    }

    #[test]
    fn closed_form_energies_at_zero_field() {
        let s = closed_form_spectrum(&ModelParams::new(1.0, 0.0, 1.0)).unwrap();
        let want = [
            (LevelLabel::Psi1, 1.0),
            (LevelLabel::Psi2, 1.0),
            (LevelLabel::Psi3Plus, -2.0),
            (LevelLabel::Psi3Minus, 1.0),
            (LevelLabel::Psi4Plus, -2.0),
            (LevelLabel::Psi4Minus, 1.0),
        ];
        for (label, e) in want {
            assert!((s.level(label).energy - e).abs() < 1e-15, "{label}");
        }
    }

    #[test]
    fn unique_ground_state_at_unit_field() {
        let p = ModelParams::new(1.0, 1.0, 1.0);
        let s = closed_form_spectrum(&p).unwrap();
        let g = s.level(LevelLabel::Psi4Plus).energy;
        assert!((g + (1.0 + libm::sqrt(17.0)) / 2.0).abs() < 1e-14);
        assert!((g + 2.5615528128088303).abs() < 1e-12);
        for l in &s.levels {
            if l.label != LevelLabel::Psi4Plus {
                assert!(l.energy > g + 0.1);
            }
        }
        let num = numeric_spectrum(&p).unwrap();
        assert!((num.values[0] - g).abs() < 1e-12);
        assert!(num.values[1] - num.values[0] > 0.1);
    }

    #[test]
    fn closed_form_eigenvectors_satisfy_h() {
        for &(j, b) in &[(1.0, 0.0), (1.0, 1.0), (-1.3, 0.4), (0.01, 2.5), (2.0, 3.0)] {
            let p = ModelParams::new(j, b, 1.0);
            let h = build_hamiltonian(&p);
            for l in closed_form_spectrum(&p).unwrap().levels {
                let r = &(&h * &l.vector) - &l.vector.scale(l.energy);
                assert!(
                    r.max_abs() < 1e-12,
                    "{} at ({j},{b}): {}",
                    l.label,
                    r.max_abs()
                );
                assert!((l.vector.inner(&l.vector).re - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn swapped_coefficient_pairing_is_wrong() {
        // Attaching c± (rather than c∓) to ψ₃± does not give eigenvectors.
        let p = ModelParams::new(1.0, 0.5, 1.0);
        let cf = ClosedForm::new(1.0, 0.5).unwrap();
        let h = build_hamiltonian(&p);
        let v = two_level_state(basis_index(-1, 1), 1.0, basis_index(0, 0), cf.c_plus);
        let r = &(&h * &v) - &v.scale(-cf.a_plus / 2.0);
        assert!(r.max_abs() > 1e-3);
    }

    #[test]
    fn closed_form_rejects_zero_coupling() {
        assert_eq!(
            closed_form_spectrum(&ModelParams::new(0.0, 1.0, 1.0)),
            Err(Error::DegenerateCoupling)
        );
    }

    #[test]
    fn partition_function_values() {
        for t in [0.1, 1.0, 7.0] {
            let z = partition_function(&ModelParams::new(0.0, 0.0, t)).unwrap();
            assert!((z - 6.0).abs() < 1e-14);
        }
        // Spectrum {1,1,1,1,−2,−2}: 4e^{−1} + 2e^{2}.
        let z = partition_function(&ModelParams::new(1.0, 0.0, 1.0)).unwrap();
        let oracle = 4.0 * libm::exp(-1.0) + 2.0 * libm::exp(2.0);
        assert!((z - oracle).abs() < 1e-12 * oracle);
        assert!((z - 16.2497).abs() < 1e-4);
        assert!(matches!(
            partition_function(&ModelParams::new(1.0, 0.0, 0.0)),
            Err(Error::NonPositiveTemperature(_))
        ));
    }

    #[test]
    fn negative_field_needs_override() {
        let p = ModelParams::new(1.0, -0.5, 1.0);
        assert!(matches!(
            thermal_state(&p, ThermalMode::FiniteTemperature),
            Err(Error::NegativeField(_))
        ));
        let st =
            thermal_state(&p.with_negative_field(true), ThermalMode::FiniteTemperature).unwrap();
        assert!((st.rho.trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn trivial_thermal_state() {
        let st = thermal_state(
            &ModelParams::new(0.0, 0.0, 0.3),
            ThermalMode::FiniteTemperature,
        )
        .unwrap();
        assert!(
            st.rho
                .max_abs_diff(&ComplexMatrix::identity(6).scale(1.0 / 6.0))
                < 1e-15
        );
        assert!((st.z - 6.0).abs() < 1e-14);
    }

    #[test]
    fn ground_limit_unique_state() {
        let p = ModelParams::new(1.0, 1.0, 0.0);
        let st = thermal_state(&p, ThermalMode::ZeroTemperatureLimit).unwrap();
        let psi = closed_form_spectrum(&p)
            .unwrap()
            .level(LevelLabel::Psi4Plus)
            .vector
            .clone();
        assert_eq!(st.ground_degeneracy, 1);
        assert!(st.rho.max_abs_diff(&ComplexMatrix::projector(&psi)) < 1e-12);
        assert!(matches!(
            thermal_state(&p, ThermalMode::FiniteTemperature),
            Err(Error::NonPositiveTemperature(_))
        ));
    }

    #[test]
    fn ground_limit_degenerate_mixture() {
        let p = ModelParams::new(1.0, 0.0, 0.0);
        let st = thermal_state(&p, ThermalMode::ZeroTemperatureLimit).unwrap();
        let s = closed_form_spectrum(&p).unwrap();
        let mix = &ComplexMatrix::projector(&s.level(LevelLabel::Psi3Plus).vector)
            + &ComplexMatrix::projector(&s.level(LevelLabel::Psi4Plus).vector);
        assert_eq!(st.ground_degeneracy, 2);
        assert!(st.rho.max_abs_diff(&mix.scale(0.5)) < 1e-12);
    }

    #[test]
    fn ground_limit_matches_low_temperature() {
        for &(j, b) in &[(1.0, 1.0), (1.0, 0.2), (-1.0, 0.5), (0.5, 2.0)] {
            let lim = thermal_state(
                &ModelParams::new(j, b, 0.0),
                ThermalMode::ZeroTemperatureLimit,
            )
            .unwrap();
            assert_eq!(lim.ground_degeneracy, 1, "({j},{b})");
            let cold = thermal_state(
                &ModelParams::new(j, b, 1e-4),
                ThermalMode::FiniteTemperature,
            )
            .unwrap();
            assert!(lim.rho.max_abs_diff(&cold.rho) < 1e-3);
        }
    }

    #[test]
    fn gibbs_state_commutes_with_h() {
        for &(j, b, t) in &[(1.0, 0.0, 1.0), (-1.5, 0.7, 0.2), (0.3, 2.5, 3.0)] {
            let p = ModelParams::new(j, b, t);
            let st = thermal_state(&p, ThermalMode::FiniteTemperature).unwrap();
            let h = build_hamiltonian(&p);
            assert!(commutator(&h, &st.rho).max_abs() < 1e-10);
            assert!(st.rho.is_hermitian(1e-12));
            assert!((st.rho.trace().re - 1.0).abs() < 1e-12);
            assert!(hermitian_eigenvalues(&st.rho).unwrap()[0] >= -1e-10);
        }
    }

    #[test]
    fn mean_energy_rises_with_temperature() {
        for &(j, b) in &[(1.0, 0.0), (-1.0, 0.0), (1.0, 0.5), (2.0, 3.0)] {
            let mut prev = f64::NEG_INFINITY;
            for k in 1..=60 {
                let t = 0.05 * k as f64;
                let e = thermal_state(&ModelParams::new(j, b, t), ThermalMode::FiniteTemperature)
                    .unwrap()
                    .mean_energy();
                assert!(e >= prev - 1e-12, "({j},{b}) T={t}");
                prev = e;
            }
        }
    }
}
