use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ribet_core::borel::{adjoint_quadruple_check, apply_tau, invariant_mod, TauAction};
use ribet_core::exactpoly::{Ring, Role, VariableTable, PolyRing, CoefficientRing, MonomialOrder};
use ribet_core::genmat::{Mat2, Word};
use ribet_core::groebner::IdealSpec;
use ribet_core::properties::random_poly;

fn ring() -> Ring {
    let mut t = VariableTable::new();
    for i in 1..=2 {
        t.push(&format!("a{i}"), Role::A, Some(i)).unwrap();
        t.push(&format!("b{i}"), Role::B, Some(i)).unwrap();
        t.push(&format!("c{i}"), Role::C, Some(i)).unwrap();
        t.push(&format!("d{i}"), Role::D, Some(i)).unwrap();
    }
    t.push("s", Role::Param, None).unwrap();
    PolyRing::new(CoefficientRing::Rationals, t, MonomialOrder::DegRevLex)
}

fn product(r: &Ring, w: &Word) -> Mat2 {
    w.letters.iter().fold(Mat2::identity(r), |acc, &l| acc.mul(&Mat2::generic(r, l)))
}

#[test]
fn generator_images() {
    let r = ring();
    let tau = TauAction::new(&r);
    let e = tau.ring();
    let x = e.vars.name(e.nvars() - 1).to_string();
    let img = |v: &str| apply_tau(&tau, &r.var(v)).unwrap();
    assert_eq!(img("a1"), e.parse(&format!("a1 + b1*{x}")).unwrap());
    assert_eq!(img("b2"), e.var("b2"));
    assert_eq!(img("c1"), e.parse(&format!("c1 + (d1 - a1)*{x} - b1*{x}^2")).unwrap());
    assert_eq!(img("d2"), e.parse(&format!("d2 - b2*{x}")).unwrap());
    assert_eq!(img("s"), e.var("s"));
}

#[test]
fn generic_quadruples_pass_and_broken_fail() {
    let r = ring();
    let tau = TauAction::new(&r);
    let g = Mat2::generic(&r, 1);
    assert!(adjoint_quadruple_check(&tau, [&g.a, &g.b, &g.c, &g.d]).unwrap());
    let p = product(&r, &"X1.X2.X1".parse().unwrap());
    assert!(adjoint_quadruple_check(&tau, [&p.a, &p.b, &p.c, &p.d]).unwrap());
    let zero = r.zero();
    assert!(!adjoint_quadruple_check(&tau, [&g.a, &g.b, &g.c, &zero]).unwrap());
    assert!(!adjoint_quadruple_check(&tau, [&g.a, &g.c, &g.b, &g.d]).unwrap());
}

#[test]
fn traces_and_determinants_are_invariant() {
    let r = ring();
    let tau = TauAction::new(&r);
    let none = IdealSpec::new(&r, vec![]);
    for w in Word::all_up_to(2, 3) {
        let m = product(&r, &w);
        assert!(invariant_mod(&tau, &m.trace(), &none).unwrap(), "tr {w}");
        assert!(invariant_mod(&tau, &m.det(), &none).unwrap(), "det {w}");
    }
}

#[test]
fn invariance_modulo_an_ideal() {
    let r = ring();
    let tau = TauAction::new(&r);
    let none = IdealSpec::new(&r, vec![]);
    let b = IdealSpec::new(&r, vec![r.var("b1")]);
    assert!(!invariant_mod(&tau, &r.var("d1"), &none).unwrap());
    assert!(invariant_mod(&tau, &r.var("d1"), &b).unwrap());
    assert!(!invariant_mod(&tau, &r.var("b1"), &none).unwrap());
    assert!(tau.stabilizes(&b).unwrap());
    assert!(!tau.stabilizes(&IdealSpec::new(&r, vec![r.var("c1")])).unwrap());
}

#[test]
fn one_parameter_law_on_generators() {
    let r = ring();
    let tx = TauAction::with_param(&r, "x");
    let ty = TauAction::with_param(tx.ring(), "y");
    let xy = ty.ring();
    let sum = &xy.var("x") + &xy.var("y");
    for name in ["a1", "b1", "c1", "d1", "c2"] {
        let once = tx.apply(&r.var(name)).unwrap();
        let twice = ty.apply(&once).unwrap();
        let direct = once.to_ring(xy).unwrap().subs(&[("x", sum.clone())]);
        assert_eq!(twice, direct, "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn tau_is_a_ring_homomorphism(seed in any::<u64>()) {
        let r = ring();
        let tau = TauAction::new(&r);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_poly(&mut rng, &r, 4, 3);
        let g = random_poly(&mut rng, &r, 4, 3);
        let (tf, tg) = (tau.apply(&f).unwrap(), tau.apply(&g).unwrap());
        prop_assert_eq!(tau.apply(&(&f + &g)).unwrap(), &tf + &tg);
        prop_assert_eq!(tau.apply(&(&f * &g)).unwrap(), &tf * &tg);
    }

    #[test]
    fn zero_parameter_fixes_everything(seed in any::<u64>()) {
        let r = ring();
        let tau = TauAction::with_param(&r, "x");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_poly(&mut rng, &r, 5, 3);
        let at_zero = tau.apply(&f).unwrap().subs(&[("x", tau.ring().zero())]);
        prop_assert_eq!(at_zero, tau.lift(&f).unwrap());
    }
}
