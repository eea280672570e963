use kvn_core::algebra::{gen, real, rational, Algebra, GeneratorId, OperatorPoly};
use kvn_core::representation::*;
use ndarray::Array3;
use num_complex::Complex64;
use proptest::prelude::*;

use GeneratorId::*;

const N: usize = 64;
const L: f64 = 8.0;

fn classical(n: usize, l: f64) -> ClassicalGrid {
    build_classical_rep(GridSpec { n_a: n, n_b: n, l_a: l, l_b: l }).unwrap()
}

fn coords(n: usize, l: f64) -> Vec<f64> {
    let d = 2.0 * l / n as f64;
    (0..n).map(|j| -l + j as f64 * d).collect()
}

fn state(rep: &Representation, a0: f64, b0: f64, sa: f64, sb: f64, quantum: Option<QuantumInit>) -> HybridState {
    gaussian_state(rep, &GaussianSpec { a0, b0, sigma_a: sa, sigma_b: sb, quantum }).unwrap()
}

fn distance(x: &Array3<Complex64>, y: &Array3<Complex64>, measure: f64) -> f64 {
    ((x - y).iter().map(|z| z.norm_sqr()).sum::<f64>() * measure).sqrt()
}

fn apply(poly: &OperatorPoly, rep: &Representation, s: &HybridState) -> HybridState {
    assemble(poly, rep).unwrap().apply(s).unwrap()
}

#[test]
fn gaussian_is_normalized_in_grid_measure() {
    let rep = Representation::new(classical(N, L), QuantumSector::Trivial);
    let s = state(&rep, 0.5, -1.0, 1.2, 0.8, None);
    let total: f64 = s.amplitudes().iter().map(|z| z.norm_sqr()).sum::<f64>() * (2.0 * L / N as f64).powi(2);
    assert!((total - 1.0).abs() < 1e-12);
}

#[test]
fn tilde_generators_are_analytic_derivatives() {
    let (a0, b0, sa, sb) = (0.4, -0.7, 1.1, 0.9);
    let rep = Representation::new(classical(N, L), QuantumSector::Trivial);
    let s = state(&rep, a0, b0, sa, sb, None);
    let x = coords(N, L);
    let psi = s.amplitudes();
    let i = Complex64::new(0.0, 1.0);
    // bt = i d/da, at = -i d/db
    let want_bt = Array3::from_shape_fn(psi.dim(), |(j, k, q)| i * (-(x[j] - a0) / (sa * sa)) * psi[[j, k, q]]);
    let want_at = Array3::from_shape_fn(psi.dim(), |(j, k, q)| -i * (-(x[k] - b0) / (sb * sb)) * psi[[j, k, q]]);
    let want_a = Array3::from_shape_fn(psi.dim(), |(j, k, q)| x[j] * psi[[j, k, q]]);
    let m = s.measure();
    assert!(distance(apply(&gen(BTilde), &rep, &s).amplitudes(), &want_bt, m) < 1e-9);
    assert!(distance(apply(&gen(ATilde), &rep, &s).amplitudes(), &want_at, m) < 1e-9);
    assert!(distance(apply(&gen(A), &rep, &s).amplitudes(), &want_a, m) < 1e-14);
}

#[test]
fn second_derivative_matches_analytic() {
    let (a0, sa) = (0.2, 1.0);
    let rep = Representation::new(classical(N, L), QuantumSector::Trivial);
    let s = state(&rep, a0, 0.0, sa, 1.0, None);
    let x = coords(N, L);
    let psi = s.amplitudes();
    // bt^2 = -d²/da², and d²/da² g = ((a-a0)²/σ⁴ - 1/σ²) g
    let want = Array3::from_shape_fn(psi.dim(), |(j, k, q)| {
        let u = x[j] - a0;
        -(u * u / sa.powi(4) - 1.0 / (sa * sa)) * psi[[j, k, q]]
    });
    let got = apply(&(gen(BTilde) * gen(BTilde)), &rep, &s);
    assert!(distance(got.amplitudes(), &want, s.measure()) < 1e-8);
}

fn faithfulness_defect(rep: &Representation, s: &HybridState) -> f64 {
    let gens: Vec<GeneratorId> = GeneratorId::ALL.iter().copied().filter(|&g| rep.supports(g)).collect();
    let mut worst: f64 = 0.0;
    for &x in &gens {
        for &y in &gens {
            let xy = MatrixOperator::apply_word(&[x, y], rep, s).unwrap();
            let yx = MatrixOperator::apply_word(&[y, x], rep, s).unwrap();
            let table = apply(&Algebra::standard().table().entry(x, y), rep, s);
            let realized = xy.amplitudes() - yx.amplitudes();
            let scale = xy.norm_sqr().sqrt().max(1.0);
            worst = worst.max(distance(&realized, table.amplitudes(), s.measure()) / scale);
        }
    }
    worst
}

#[test]
fn commutators_are_faithful_on_interior_gaussians() {
    let fock = build_quantum_fock(FockSpec { n_levels: 24, mu: 1.0, omega: 1.0, ..Default::default() }).unwrap();
    let sectors = [
        (QuantumSector::Trivial, None),
        (fock, Some(QuantumInit::Coherent { q0: 0.4, p0: -0.3 })),
        (build_spin(), Some(QuantumInit::Spin { theta: 0.9, phi: 2.0 })),
    ];
    for (sector, init) in sectors {
        let rep = Representation::new(classical(N, L), sector);
        let s = state(&rep, -0.5, 0.6, 1.0, 0.9, init);
        let d = faithfulness_defect(&rep, &s);
        assert!(d < 1e-6, "defect {d}");
    }
}

#[test]
fn faithfulness_degrades_near_the_boundary() {
    // a packet touching the periodic edge breaks [bt, a] = i: the check must notice
    let rep = Representation::new(classical(16, 4.0), QuantumSector::Trivial);
    let amps = Array3::from_shape_fn((16, 16, 1), |(j, k, _)| {
        let x = coords(16, 4.0);
        Complex64::new((-(x[j] + 4.0).powi(2)).exp() * (-(x[k]).powi(2)).exp(), 0.0)
    });
    let mut s = HybridState::from_amplitudes(amps, rep.classical.spec).unwrap();
    s.normalize();
    assert!(faithfulness_defect(&rep, &s) > 1e-3);
}

#[test]
fn oscillator_sector_matches_ladder_formulas() {
    let (mu, omega) = (2.0, 0.5);
    let sector = build_quantum_fock(FockSpec { n_levels: 10, mu, omega, ..Default::default() }).unwrap();
    let q = sector.matrix(QHat).unwrap();
    let p = sector.matrix(PHat).unwrap();
    for n in 0..9 {
        let x = ((n + 1) as f64 / (2.0 * mu * omega)).sqrt();
        assert!((q[[n, n + 1]] - Complex64::new(x, 0.0)).norm() < 1e-14);
        let y = ((n + 1) as f64 * mu * omega / 2.0).sqrt();
        assert!((p[[n + 1, n]] - Complex64::new(0.0, y)).norm() < 1e-14);
    }
}

#[test]
fn q_grid_sector_when_frequency_vanishes() {
    let sector = build_quantum_fock(FockSpec { n_levels: 32, mu: 1.0, omega: 0.0, grid_half_width: 8.0 }).unwrap();
    assert!(matches!(sector, QuantumSector::Grid { .. }));
    assert_eq!(sector.dim(), 32);
}

#[test]
fn dimension_limit_and_sizes_are_enforced() {
    assert!(build_classical_rep(GridSpec { n_a: 48, n_b: 64, l_a: 8.0, l_b: 8.0 }).is_err());
    let big = build_classical_rep(GridSpec { n_a: 128, n_b: 64, l_a: 8.0, l_b: 8.0 }).unwrap();
    assert!(build_classical_rep(GridSpec { n_a: 4, n_b: 64, l_a: 8.0, l_b: 8.0 }).is_err());
    let rep = Representation::new(big, QuantumSector::Trivial);
    assert!(assemble(&gen(A), &rep).unwrap().materialize().is_err());
    assert_eq!(DENSE_LIMIT, 4096);
}

#[test]
fn initial_state_support_must_be_interior() {
    let rep = Representation::new(classical(N, L), QuantumSector::Trivial);
    assert!(gaussian_state(&rep, &GaussianSpec { a0: 6.0, b0: 0.0, sigma_a: 1.0, sigma_b: 1.0, quantum: None }).is_err());
}

fn small_rep() -> Representation {
    let fock = build_quantum_fock(FockSpec { n_levels: 4, mu: 1.0, omega: 1.0, ..Default::default() }).unwrap();
    Representation::new(classical(16, 6.0), fock)
}

const WORDS: [&[GeneratorId]; 6] =
    [&[A], &[B, ATilde], &[QHat, BTilde], &[PHat, PHat, A], &[ATilde, ATilde, QHat], &[B, B, BTilde, PHat]];

fn arb_poly() -> impl Strategy<Value = OperatorPoly> {
    prop::collection::vec((0usize..WORDS.len(), -4i64..5), 1..4).prop_map(|terms| {
        let mut out = OperatorPoly::zero();
        for (w, k) in terms {
            out = out + kvn_core::algebra::normal_order(WORDS[w]) * real(rational(k, 2));
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn assembled_operators_are_linear(
        poly in arb_poly(),
        (a1, b1, a2, b2) in (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0),
        (re, im) in (-2.0f64..2.0, -2.0f64..2.0),
    ) {
        let rep = small_rep();
        let x = state(&rep, a1, b1, 0.8, 0.8, Some(QuantumInit::Coherent { q0: 0.1, p0: 0.0 }));
        let y = state(&rep, a2, b2, 0.8, 0.8, Some(QuantumInit::Number { n: 1 }));
        let k = Complex64::new(re, im);
        let op = assemble(&poly, &rep).unwrap();
        let combo = HybridState::from_amplitudes(x.amplitudes() * k + y.amplitudes(), *x.grid()).unwrap();
        let lhs = op.apply(&combo).unwrap();
        let rhs = op.apply(&x).unwrap().amplitudes() * k + op.apply(&y).unwrap().amplitudes();
        let scale = rhs.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(1.0);
        prop_assert!(distance(lhs.amplitudes(), &rhs, 1.0) / scale < 1e-12);
    }

    #[test]
    fn dense_matches_composed(poly in arb_poly(), a0 in -1.0f64..1.0) {
        let rep = small_rep();
        let s = state(&rep, a0, 0.3, 0.8, 0.8, Some(QuantumInit::Coherent { q0: 0.2, p0: 0.1 }));
        let op = assemble(&poly, &rep).unwrap();
        let dense = op.materialize().unwrap().dot(&s.to_vector());
        let composed = op.apply(&s).unwrap().to_vector();
        let scale = composed.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(1.0);
        let err = (&dense - &composed).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() / scale;
        prop_assert!(err < 1e-10, "err {}", err);
    }

    #[test]
    fn expectation_of_hermitian_is_real(a0 in -1.0f64..1.0, b0 in -1.0f64..1.0) {
        let rep = small_rep();
        let s = state(&rep, a0, b0, 0.8, 0.8, Some(QuantumInit::Coherent { q0: 0.3, p0: -0.2 }));
        let h = gen(A) * gen(ATilde) + gen(ATilde) * gen(A) + gen(QHat) * gen(BTilde);
        let v = expectation(&s, &assemble(&h, &rep).unwrap()).unwrap();
        prop_assert!(v.im.abs() < 1e-10);
        let b = expectation(&s, &assemble(&gen(B), &rep).unwrap()).unwrap();
        let x = coords(16, 6.0);
        let direct: f64 = s.amplitudes().indexed_iter().map(|((_, k, _), z)| x[k] * z.norm_sqr()).sum::<f64>() * s.measure();
        prop_assert!((b.re - direct).abs() < 1e-12);
        prop_assert!(b.im.abs() < 1e-14);
    }
}
