use std::collections::HashMap;

use proptest::prelude::*;
use ribet_core::exactpoly::{
    Coeff, CoefficientRing, Monomial, MonomialOrder, PolyRing, Polynomial, Ring, Role, VariableTable, Weight,
};

fn ring_with(coeffs: CoefficientRing, names: &[&str]) -> Ring {
    PolyRing::new(coeffs, VariableTable::plain(names), MonomialOrder::DegRevLex)
}

fn q(names: &[&str]) -> Ring {
    ring_with(CoefficientRing::Rationals, names)
}

#[test]
fn difference_of_squares() {
    let r = q(&["x", "y"]);
    let (x, y) = (r.var("x"), r.var("y"));
    assert_eq!(&(&x + &y) * &(&x - &y), r.parse("x^2 - y^2").unwrap());
}

#[test]
fn reduced_polynomial_expands() {
    let r = q(&["x", "chi", "psi"]);
    let (x, chi, psi) = (r.var("x"), r.var("chi"), r.var("psi"));
    let lhs = &(&x - &chi) * &(&x - &psi);
    let rhs = &(&(&x * &x) - &(&(&chi + &psi) * &x)) + &(&chi * &psi);
    assert_eq!(lhs, rhs);
}

#[test]
fn prime_field_arithmetic_wraps() {
    let r = ring_with(CoefficientRing::prime_field(5).unwrap(), &["x"]);
    let x = r.var("x");
    assert_eq!(&x.scale_int(2) * &x.scale_int(3), &x * &x);
    assert!(CoefficientRing::prime_field(6).is_err());
}

#[test]
fn mismatched_rings_are_rejected() {
    let a = q(&["x"]);
    let b = q(&["x", "y"]);
    assert!(a.var("x").arith(&q(&["x"]).var("x"), ribet_core::exactpoly::ArithOp::Add).is_ok());
    assert!(a.var("x").arith(&b.var("x"), ribet_core::exactpoly::ArithOp::Add).is_err());
}

#[test]
fn unipotent_substitution_of_c() {
    let mut t = VariableTable::new();
    for (n, role) in [("a", Role::A), ("b", Role::B), ("c", Role::C), ("d", Role::D), ("x", Role::Param)] {
        t.push(n, role, Some(1)).unwrap();
    }
    let r = PolyRing::new(CoefficientRing::Rationals, t, MonomialOrder::DegRevLex);
    let img = r.parse("c + (d - a)*x - b*x^2").unwrap();
    let c = r.var("c");
    assert_eq!(c.subs(&[("c", img.clone())]), img);
    let f = r.parse("a*d - 3*b*c + x").unwrap();
    assert_eq!(f.subs(&[]), f);
}

#[test]
fn quotient_substitution_kills_product() {
    let r = q(&["a", "d", "nu"]);
    let ad = &r.var("a") * &r.var("d");
    assert!(ad.subs(&[("a", -&r.var("nu")), ("d", r.zero())]).is_zero());
}

#[test]
fn substitution_into_a_different_ring_requires_shared_images() {
    let src = q(&["x", "y"]);
    let dst = q(&["x", "y", "z"]);
    let f = src.parse("x*y + y").unwrap();
    let map: HashMap<usize, Polynomial> = [(0, dst.var("z"))].into_iter().collect();
    assert_eq!(f.substitute(&map, &dst).unwrap(), dst.parse("z*y + y").unwrap());
    let bad: HashMap<usize, Polynomial> = [(0, src.var("y"))].into_iter().collect();
    assert!(f.substitute(&bad, &dst).is_err());
}

#[test]
fn evaluation_examples() {
    let r = q(&["x", "y", "a", "b", "c", "d"]);
    let pt = |v: &[i64]| -> HashMap<usize, Coeff> {
        v.iter().enumerate().map(|(i, &x)| (i, r.coeffs.from_i64(x))).collect()
    };
    let k = &r.coeffs;
    assert_eq!(r.parse("x^2 + y").unwrap().evaluate(&pt(&[2, 3])).unwrap(), k.from_i64(7));
    assert_eq!(r.parse("(x + y)^2").unwrap().evaluate(&pt(&[1, 2])).unwrap(), k.from_i64(9));
    let det = r.parse("a*d - b*c").unwrap();
    assert_eq!(det.evaluate(&pt(&[0, 0, 1, 0, 0, 1])).unwrap(), k.one());
    assert!(det.evaluate(&pt(&[0, 0, 1])).is_err());
    let z = ring_with(CoefficientRing::Integers, &["x"]);
    assert!(z.var("x").evaluate(&HashMap::new()).is_err());
}

fn weighted() -> Ring {
    let mut t = VariableTable::new();
    for (n, role, slot) in [
        ("a1", Role::A, 1),
        ("b1", Role::B, 1),
        ("c1", Role::C, 1),
        ("c2", Role::C, 2),
        ("b2", Role::B, 2),
        ("x2", Role::Param, 2),
        ("x1", Role::Param, 1),
    ] {
        t.push(n, role, Some(slot)).unwrap();
    }
    PolyRing::new(CoefficientRing::Rationals, t, MonomialOrder::DegRevLex)
}

#[test]
fn torus_weights() {
    let r = weighted();
    assert_eq!(r.parse("b1*c2").unwrap().torus_weight(), Weight::Isobaric(0));
    // B(σ,τ) with weight-0 factors x_σ − a_σ
    let b = r.parse("b1*(x2 - a1) - b2*(x1 - a1)").unwrap();
    assert_eq!(b.torus_weight(), Weight::Isobaric(1));
    assert_eq!(r.parse("a1 + b1").unwrap().torus_weight(), Weight::NotIsobaric);
    assert_eq!(r.zero().torus_weight(), Weight::Isobaric(0));
}

#[test]
fn text_round_trip_and_order() {
    let r = q(&["x", "y", "z"]);
    let f = r.parse("3*x^2*y - 1/2*z + 7 - x*y*z").unwrap();
    let text = f.to_string();
    assert_eq!(r.parse(&text).unwrap(), f);
    assert_eq!(text, "3 * x^2 * y - x * y * z - 1/2 * z + 7");
    assert!(r.parse("x +* y").is_err());
    assert!(r.parse("w").is_err());
}

#[test]
fn canonical_zero() {
    let r = q(&["x", "y"]);
    let f = r.parse("x^3 - 2*x*y + 5").unwrap();
    let z = &f - &f;
    assert!(z.is_zero());
    assert!(z.terms().is_empty());
    assert_eq!(z.total_degree(), None);
}

#[test]
fn monomial_orders_agree_on_total_order_axioms() {
    let lex = MonomialOrder::Lex;
    let m = |e: &[u16]| Monomial::from_exps(e.to_vec());
    assert_eq!(lex.cmp(&m(&[1, 0]), &m(&[0, 5])), std::cmp::Ordering::Greater);
    let drl = MonomialOrder::DegRevLex;
    assert_eq!(drl.cmp(&m(&[1, 0]), &m(&[0, 5])), std::cmp::Ordering::Less);
    assert_eq!(drl.cmp(&m(&[0, 0]), &m(&[0, 1])), std::cmp::Ordering::Less);
}

type Terms = Vec<((u16, u16, u16), i64)>;

fn terms() -> impl Strategy<Value = Terms> {
    prop::collection::vec(((0u16..4, 0u16..4, 0u16..4), -20i64..20), 0..6)
}

fn build(r: &Ring, t: &Terms) -> Polynomial {
    Polynomial::from_terms(
        r,
        t.iter()
            .map(|((a, b, c), k)| (Monomial::from_exps(vec![*a, *b, *c]), r.coeffs.from_i64(*k)))
            .collect(),
    )
}

fn xyz(prime: bool) -> Ring {
    let k = if prime { CoefficientRing::PrimeField(101) } else { CoefficientRing::Rationals };
    PolyRing::new(k, VariableTable::plain(&["x", "y", "z"]), MonomialOrder::Lex)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(f in terms(), g in terms(), h in terms(), prime in any::<bool>()) {
        let r = xyz(prime);
        let (f, g, h) = (build(&r, &f), build(&r, &g), build(&r, &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(f in terms(), g in terms(), pt in prop::collection::vec(0u64..101, 3)) {
        let r = xyz(true);
        let (f, g) = (build(&r, &f), build(&r, &g));
        let p: Vec<Coeff> = pt.into_iter().map(Coeff::P).collect();
        let k = &r.coeffs;
        prop_assert_eq!((&f * &g).evaluate_dense(&p), k.mul(&f.evaluate_dense(&p), &g.evaluate_dense(&p)));
        prop_assert_eq!((&f + &g).evaluate_dense(&p), k.add(&f.evaluate_dense(&p), &g.evaluate_dense(&p)));
    }

    #[test]
    fn substitution_is_a_homomorphism(f in terms(), g in terms(), a in terms(), b in terms()) {
        let r = xyz(false);
        let (f, g) = (build(&r, &f), build(&r, &g));
        let pairs = [("x", build(&r, &a)), ("z", build(&r, &b))];
        prop_assert_eq!((&f * &g).subs(&pairs), &f.subs(&pairs) * &g.subs(&pairs));
        prop_assert_eq!((&f + &g).subs(&pairs), &f.subs(&pairs) + &g.subs(&pairs));
    }

    #[test]
    fn text_round_trips(f in terms(), prime in any::<bool>()) {
        let r = xyz(prime);
        let f = build(&r, &f);
        prop_assert_eq!(r.parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn weights_add_under_products(i in 0usize..7, j in 0usize..7, k in 0usize..7) {
        let r = weighted();
        let v = |n: usize| Polynomial::var(&r, n);
        let (f, g) = (&v(i) * &v(j), v(k));
        if let (Weight::Isobaric(a), Weight::Isobaric(b)) = (f.torus_weight(), g.torus_weight()) {
            prop_assert_eq!((&f * &g).torus_weight(), Weight::Isobaric(a + b));
        }
    }
}
