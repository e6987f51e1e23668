//! Grid-level cross-checks between the closed forms and brute force.

use mixspin_core::linalg::{
    hermitian_eigensystem, partial_trace, partial_transpose_first, trace_norm, von_neumann_entropy,
    ComplexMatrix, Subsystem,
};
use mixspin_core::measures::{
    local_dephase, mid, negativity, negativity_closed_form, negativity_detail,
};
use mixspin_core::model::{
    build_hamiltonian, closed_form_spectrum, partition_function, thermal_state, ModelParams,
    ThermalMode,
};
use mixspin_core::sweep::find_critical_temperature;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

fn gibbs(j: f64, b: f64, t: f64) -> ComplexMatrix {
    thermal_state(&ModelParams::new(j, b, t), ThermalMode::FiniteTemperature)
        .unwrap()
        .rho
}

/// Brute-force `tr e^{−H/T}` from the eigenvalues of the assembled matrix.
fn boltzmann_trace(p: &ModelParams) -> f64 {
    let es = hermitian_eigensystem(&build_hamiltonian(p)).unwrap();
    es.values.iter().map(|e| (-e / p.t).exp()).sum()
}

#[test]
fn spectrum_matches_diagonalization_on_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut n = 0;
    while n < 1000 {
        let j: f64 = rng.gen_range(-2.0..2.0);
        if j.abs() < 1e-3 {
            continue;
        }
        let b: f64 = rng.gen_range(0.0..3.0);
        let p = ModelParams::new(j, b, 1.0);
        let h = build_hamiltonian(&p);
        let numeric = hermitian_eigensystem(&h).unwrap().values;
        let spectrum = closed_form_spectrum(&p).unwrap();
        for (a, e) in spectrum.sorted_energies().iter().zip(&numeric) {
            assert!((a - e).abs() <= 1e-10, "({j},{b}): {a} vs {e}");
        }
        for level in &spectrum.levels {
            let r = &(&h * &level.vector) - &level.vector.scale(level.energy);
            assert!(r.max_abs() <= 1e-10, "{} at ({j},{b})", level.label);
        }
        n += 1;
    }
}

#[test]
fn partition_function_matches_boltzmann_trace() {
    for b in [0.0, 1.0] {
        for j in linspace(-2.0, 2.0, 50) {
            for t in linspace(0.05, 5.0, 50) {
                let p = ModelParams::new(j, b, t);
                let z = partition_function(&p).unwrap();
                let oracle = boltzmann_trace(&p);
                assert!((z - oracle).abs() <= 1e-12 * oracle, "({j},{b},{t})");
                let st = thermal_state(&p, ThermalMode::FiniteTemperature).unwrap();
                assert!((st.z - oracle).abs() <= 1e-12 * oracle);
            }
        }
    }
}

#[test]
fn entropy_matches_thermodynamic_identity() {
    // S = log₂Z + ⟨H⟩/(T ln 2) with Z and ⟨H⟩ from the closed-form levels.
    for &(j, b, t) in &[(1.0, 0.0, 1.0), (1.0, 0.5, 0.3), (-0.7, 2.0, 2.0)] {
        let p = ModelParams::new(j, b, t);
        let energies = closed_form_spectrum(&p).unwrap().sorted_energies();
        let z: f64 = energies.iter().map(|e| (-e / t).exp()).sum();
        let mean: f64 = energies.iter().map(|e| e * (-e / t).exp()).sum::<f64>() / z;
        let oracle = z.log2() + mean / (t * std::f64::consts::LN_2);
        let s = von_neumann_entropy(&gibbs(j, b, t)).unwrap();
        assert!((s - oracle).abs() < 1e-10, "({j},{b},{t}): {s} vs {oracle}");
    }
}

#[test]
fn closed_form_negativity_agrees_on_grid() {
    for b in [0.0, 0.2, 0.5, 1.0, 2.0] {
        for j in linspace(0.1, 2.0, 40)
            .into_iter()
            .chain(linspace(-2.0, -0.1, 40))
        {
            for t in linspace(0.05, 5.0, 40) {
                let p = ModelParams::new(j, b, t);
                let rho = gibbs(j, b, t);
                let numeric = negativity(&rho).unwrap();
                let analytic = negativity_closed_form(&p).unwrap();
                assert!((numeric - analytic).abs() <= 1e-10, "({j},{b},{t})");
                assert!((0.0..=0.5).contains(&numeric));
            }
        }
    }
}

#[test]
fn trace_norm_identity_for_thermal_states() {
    for j in linspace(-2.0, 2.0, 21) {
        for t in linspace(0.05, 3.0, 21) {
            let rho = gibbs(j, 0.3, t);
            let d = negativity_detail(&rho).unwrap();
            let tn = trace_norm(&partial_transpose_first(&rho).unwrap()).unwrap();
            assert!((tn - (1.0 + 2.0 * d.raw)).abs() <= 1e-12);
        }
    }
}

#[test]
fn dephasing_preserves_marginals_and_raises_entropy() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..200 {
        let j = rng.gen_range(-2.0..2.0);
        let b = rng.gen_range(0.0..3.0);
        let t = rng.gen_range(0.05..5.0);
        let rho = gibbs(j, b, t);
        let d = local_dephase(&rho).unwrap();
        for keep in [Subsystem::Qutrit, Subsystem::Qubit] {
            let a = partial_trace(&rho, keep).unwrap();
            let b = partial_trace(&d, keep).unwrap();
            assert!(a.max_abs_diff(&b) <= 1e-14);
        }
        let s = von_neumann_entropy(&rho).unwrap();
        let sd = von_neumann_entropy(&d).unwrap();
        assert!(sd >= s - 1e-12);
    }
}

#[test]
fn mid_is_bounded_by_mutual_information() {
    for j in linspace(-2.0, 2.0, 17) {
        for t in linspace(0.05, 5.0, 17) {
            for b in [0.0, 1.0, 2.5] {
                let r = mid(&ModelParams::new(j, b, t), ThermalMode::FiniteTemperature).unwrap();
                assert!(r.mid_raw >= -1e-10);
                assert!(r.classical_correlation_raw >= -1e-10);
                assert!(r.mid <= r.mutual_information + 1e-12);
                assert!((r.mid - (r.mutual_information - r.classical_correlation)).abs() <= 1e-12);
            }
        }
    }
}

#[test]
fn mid_is_continuous_in_temperature() {
    for &(j, b) in &[(1.0, 0.0), (-1.0, 0.0), (1.0, 0.2), (1.0, 1.0), (2.0, 3.0)] {
        let q = |t: f64| {
            mid(&ModelParams::new(j, b, t), ThermalMode::FiniteTemperature)
                .unwrap()
                .mid
        };
        // Coarse slope estimate, then the fine finite-difference bound.
        let coarse = linspace(0.05, 5.0, 100);
        let slope = coarse
            .windows(2)
            .map(|w| (q(w[1]) - q(w[0])).abs() / (w[1] - w[0]))
            .fold(0.0, f64::max);
        let bound = 10.0 * slope.max(1e-6);
        let delta = 1e-4;
        for t in linspace(0.05, 5.0, 400) {
            let diff = (q(t) - q(t + delta)).abs();
            assert!(diff <= bound * delta, "({j},{b}) T={t}: {diff}");
        }
    }
}

#[test]
fn critical_temperature_grows_with_coupling() {
    let tc1 = find_critical_temperature(1.0, 0.0, 0.05, 5.0, 1e-6)
        .unwrap()
        .unwrap();
    let tc2 = find_critical_temperature(2.0, 0.0, 0.05, 5.0, 1e-6)
        .unwrap()
        .unwrap();
    assert!(tc2 > tc1);
    // At B = 0 the Hamiltonian is J times a fixed matrix, so T_c ∝ J.
    assert!((tc2 - 2.0 * tc1).abs() < 1e-5);
    // Entangled below, separable above.
    for t in linspace(0.05, tc1 - 1e-4, 30) {
        assert!(negativity(&gibbs(1.0, 0.0, t)).unwrap() > 0.0, "T={t}");
    }
    for t in linspace(tc1 + 1e-4, 5.0, 30) {
        assert_eq!(negativity(&gibbs(1.0, 0.0, t)).unwrap(), 0.0, "T={t}");
    }
}

#[test]
fn ferromagnetic_coupling_is_separable_but_correlated() {
    for j in linspace(-2.0, -0.05, 30) {
        for t in linspace(0.05, 5.0, 30) {
            assert_eq!(negativity(&gibbs(j, 0.0, t)).unwrap(), 0.0, "({j},{t})");
        }
    }
    let r = mid(
        &ModelParams::new(-1.0, 0.0, 0.5),
        ThermalMode::FiniteTemperature,
    )
    .unwrap();
    assert!(r.mid > 1e-4);
    assert_eq!(r.negativity, 0.0);
}

#[test]
fn ground_limit_agrees_with_cold_gibbs_state() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 50 {
        let j = rng.gen_range(-2.0..2.0);
        let b = rng.gen_range(0.0..3.0);
        let lim = thermal_state(
            &ModelParams::new(j, b, 0.0),
            ThermalMode::ZeroTemperatureLimit,
        )
        .unwrap();
        let es = hermitian_eigensystem(&build_hamiltonian(&ModelParams::new(j, b, 0.0))).unwrap();
        // Nondegenerate with a gap wide enough for T = 1e-4 to resolve.
        if es.values[1] - es.values[0] < 1e-2 {
            continue;
        }
        let cold = gibbs(j, b, 1e-4);
        assert!(lim.rho.max_abs_diff(&cold) <= 1e-3);
        checked += 1;
    }
}

#[test]
fn identity_state_entropy() {
    let m = ComplexMatrix::identity(6).scale(1.0 / 6.0);
    assert!((von_neumann_entropy(&m).unwrap() - 6f64.log2()).abs() < 1e-14);
    assert!((6f64.log2() - 2.585).abs() < 1e-3);
}
