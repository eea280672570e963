use kvn_core::algebra::*;
use kvn_core::cli::{algebra_suite, verify, Level, EXIT_VERIFY};
use proptest::prelude::*;

use GeneratorId::*;

fn i() -> Scalar {
    imag_unit()
}

fn c(re: i64, im: i64) -> Scalar {
    scalar(int(re), int(im))
}

fn constant(s: Scalar) -> OperatorPoly {
    OperatorPoly::constant(s)
}

#[test]
fn defining_relations_hold_exactly() {
    let cases = [
        (BTilde, ATilde, OperatorPoly::zero()),
        (BTilde, A, constant(i())),
        (ATilde, B, constant(-i())),
        (ATilde, A, OperatorPoly::zero()),
        (BTilde, B, OperatorPoly::zero()),
        (A, B, OperatorPoly::zero()),
        (QHat, PHat, constant(i())),
        (S1, S2, gen(S3) * i()),
        (S2, S3, gen(S1) * i()),
        (S3, S1, gen(S2) * i()),
    ];
    for (x, y, want) in cases {
        assert_eq!(commutator(&gen(x), &gen(y)), want, "[{x},{y}]");
        assert_eq!(commutator(&gen(y), &gen(x)), -&want, "[{y},{x}]");
    }
    assert!(relation_failures(Algebra::standard()).is_empty());
}

#[test]
fn sectors_commute() {
    for q in [QHat, PHat, S1, S2, S3] {
        for k in [A, B, ATilde, BTilde] {
            assert!(commutator(&gen(q), &gen(k)).is_zero(), "[{q},{k}]");
        }
    }
}

#[test]
fn jacobi_vanishes_on_all_triples() {
    let triples = generator_triples();
    assert_eq!(triples.len(), 84);
    for (x, y, z) in triples {
        assert!(check_jacobi(x, y, z).is_zero(), "({x},{y},{z})");
    }
}

#[test]
fn ladder_relation_from_generators() {
    // N = (q^2 + p^2)/2 - 1/2 and a_- = (q + ip)/sqrt2 satisfy [N, a_-] = -a_-;
    // dropping the sqrt2 leaves the linear relation intact.
    let half = real(rational(1, 2));
    let n = (gen(QHat) * gen(QHat) + gen(PHat) * gen(PHat)) * half.clone() + constant(-half);
    let lower = gen(QHat) + gen(PHat) * i();
    assert_eq!(commutator(&n, &lower), -&lower);
}

#[test]
fn normal_order_moves_tilde_past_coordinate() {
    // bt a = a bt + [bt, a] = a bt + i
    let got = normal_order(&[BTilde, A]);
    let want = gen(A) * gen(BTilde) + constant(i());
    assert_eq!(got, want);
    assert_eq!(normal_order(&[PHat, QHat]), gen(QHat) * gen(PHat) + constant(-i()));
}

#[test]
fn text_form_is_stable() {
    let x = gen(A) * real(rational(1, 2)) + gen(PHat) * gen(ATilde) * real(rational(-3, 4));
    assert_eq!(x.to_string(), "(1/2,0)*a + (-3/4,0)*p*at");
    assert_eq!(OperatorPoly::zero().to_string(), "0");
}

#[test]
fn observability_is_absence_of_tilde() {
    assert!((gen(A) * gen(B) + gen(QHat)).is_observable());
    assert!(!(gen(PHat) * gen(ATilde)).is_observable());
    assert!(!gen(BTilde).is_observable());
}

fn monomials(max: u32) -> Vec<ClassicalPoly> {
    (0..=max).flat_map(|d| (0..=d).map(move |ap| ClassicalPoly::monomial(rational(1, 1), ap, d - ap))).collect()
}

#[test]
fn lift_is_a_homomorphism_up_to_degree_three() {
    let ms = monomials(3);
    assert_eq!(ms.len(), 10);
    for f in &ms {
        for g in &ms {
            let lhs = tilde_lift(&poisson_bracket(f, g));
            let rhs = commutator(&tilde_lift(f), &tilde_lift(g)) * (-i());
            assert_eq!(lhs, rhs, "f = {}, g = {}", f.to_operator(), g.to_operator());
        }
    }
}

#[test]
fn poisson_bracket_convention() {
    let pb = poisson_bracket(&ClassicalPoly::b(), &ClassicalPoly::a());
    assert_eq!(pb, ClassicalPoly::constant(rational(1, 1)));
    // [b^2, a^3] = 2b * 3a^2
    let pb = poisson_bracket(&ClassicalPoly::monomial(rational(1, 1), 0, 2), &ClassicalPoly::monomial(rational(1, 1), 3, 0));
    assert_eq!(pb, ClassicalPoly::monomial(rational(6, 1), 2, 1));
}

#[test]
fn mutated_table_fails_the_algebra_suite() {
    let broken = Algebra::new(StructureTable::standard().with_entry(BTilde, A, constant(-i())));
    let suite = algebra_suite(&broken);
    assert!(!suite.passed);
    let failed: Vec<&str> = suite.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    assert!(failed.contains(&"relations"), "{failed:?}");
    assert!(algebra_suite(Algebra::standard()).passed);
}

#[test]
fn mutated_table_makes_verify_exit_5() {
    let broken = Algebra::new(StructureTable::standard().with_entry(BTilde, A, constant(-i())));
    let mut out = Vec::new();
    assert_eq!(verify(Level::Fast, &broken, &mut out), EXIT_VERIFY);
    let report: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(report["report"]["passed"], false);
    assert_eq!(report["report"]["suites"][0]["name"], "algebra");
    assert_eq!(report["report"]["suites"][0]["passed"], false);
}

const GENS: [GeneratorId; 9] = GeneratorId::ALL;

fn arb_poly() -> impl Strategy<Value = OperatorPoly> {
    let term = (prop::collection::vec(0usize..GENS.len(), 0..4), -3i64..4, -3i64..4);
    prop::collection::vec(term, 1..4).prop_map(|terms| {
        let mut out = OperatorPoly::zero();
        for (word, re, im) in terms {
            let word: Vec<GeneratorId> = word.into_iter().map(|k| GENS[k]).collect();
            out = out + normal_order(&word) * c(re, im);
        }
        out
    })
}

fn arb_classical() -> impl Strategy<Value = ClassicalPoly> {
    prop::collection::vec((0u32..4, 0u32..4, -4i64..5), 1..4).prop_map(|terms| {
        let mut out = ClassicalPoly::zero();
        for (ap, bp, k) in terms {
            out = &out + &ClassicalPoly::monomial(rational(k, 1), ap, bp);
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn commutator_antisymmetric(x in arb_poly(), y in arb_poly()) {
        prop_assert_eq!(commutator(&x, &y), -&commutator(&y, &x));
    }

    #[test]
    fn commutator_bilinear(x in arb_poly(), y in arb_poly(), z in arb_poly(), re in -3i64..4, im in -3i64..4) {
        let k = c(re, im);
        let lhs = commutator(&(x.clone() * k.clone() + y.clone()), &z);
        let rhs = commutator(&x, &z) * k + commutator(&y, &z);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normal_order_idempotent(word in prop::collection::vec(0usize..GENS.len(), 0..6)) {
        let word: Vec<GeneratorId> = word.into_iter().map(|k| GENS[k]).collect();
        let once = normal_order(&word);
        let mut twice = OperatorPoly::zero();
        for (w, s) in once.terms() {
            twice = twice + normal_order(&w.expand()) * s.clone();
        }
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn jacobi_for_polynomials(x in arb_poly(), y in arb_poly(), z in arb_poly()) {
        let j = commutator(&x, &commutator(&y, &z))
            + commutator(&y, &commutator(&z, &x))
            + commutator(&z, &commutator(&x, &y));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn lift_homomorphism_random(f in arb_classical(), g in arb_classical()) {
        let lhs = tilde_lift(&poisson_bracket(&f, &g));
        let rhs = commutator(&tilde_lift(&f), &tilde_lift(&g)) * (-i());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn liouvillian_generates_hamilton_equations(h in arb_classical()) {
        let lh = tilde_lift(&h);
        prop_assert_eq!(heisenberg_rhs(&gen(B), &lh), h.d_da().to_operator());
        prop_assert_eq!(heisenberg_rhs(&gen(A), &lh), -&h.d_db().to_operator());
    }
}
