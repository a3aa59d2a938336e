use std::collections::HashMap;

use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ribet_core::exactpoly::{CoefficientRing, MonomialOrder};
use ribet_core::genmat::{
    det_congruence_check, invariants_of, trace_congruence_check, v_map, word_eval, CongruenceModel, Mat2, Word,
};
use ribet_core::properties::{random_poly, small_ring};

fn assignment(model: &CongruenceModel) -> (HashMap<usize, Mat2>, HashMap<usize, ribet_core::exactpoly::Polynomial>) {
    let rho = (1..=model.r).map(|i| (i, model.rho(i))).collect();
    let nu = (1..=model.r).map(|i| (i, model.nu(i))).collect();
    (rho, nu)
}

#[test]
fn word_eval_product_entries() {
    let m = CongruenceModel::new(2, &[]);
    let (rho, shifts) = assignment(&m);
    let p = word_eval(&"X1.X2".parse().unwrap(), &m.ring, &rho, &shifts).unwrap();
    assert_eq!(p.a, m.ring.parse("a1*a2 + b1*c2").unwrap());
    assert_eq!(p.b, m.ring.parse("a1*b2 + b1*d2").unwrap());
    assert_eq!(p.c, m.ring.parse("c1*a2 + d1*c2").unwrap());
    assert_eq!(p.d, m.ring.parse("c1*b2 + d1*d2").unwrap());
}

#[test]
fn empty_word_is_identity() {
    let m = CongruenceModel::new(2, &[]);
    let (rho, shifts) = assignment(&m);
    let p = word_eval(&Word::new(vec![]), &m.ring, &rho, &shifts).unwrap();
    assert_eq!(p, Mat2::identity(&m.ring));
}

#[test]
fn shifted_letter_adds_scalar() {
    let m = CongruenceModel::new(2, &[]);
    let (rho, shifts) = assignment(&m);
    let w = Word::with_shifts(vec![1, 2], vec![true, false]);
    let p = word_eval(&w, &m.ring, &rho, &shifts).unwrap();
    let expect = m.ring.parse("(a1 + psi1 - chi1)*a2 + b1*c2").unwrap();
    assert_eq!(p.a, expect);
}

#[test]
fn unassigned_letter_is_an_error() {
    let m = CongruenceModel::new(2, &[]);
    let (rho, shifts) = assignment(&m);
    assert!(word_eval(&"X3".parse().unwrap(), &m.ring, &rho, &shifts).is_err());
}

#[test]
fn invariants_of_product_and_identity() {
    let m = CongruenceModel::new(2, &[]);
    let inv = invariants_of(&m.rho(1).mul(&m.rho(2)));
    assert_eq!(inv.trace, m.ring.parse("a1*a2 + b1*c2 + c1*b2 + d1*d2").unwrap());
    let inv1 = invariants_of(&m.rho(1));
    assert_eq!(inv1.det, m.ring.parse("a1*d1 - b1*c1").unwrap());
    let id = invariants_of(&Mat2::identity(&m.ring));
    let x = id.charpoly.ring().vars.len() - 1;
    let name = id.charpoly.ring().vars.name(x).to_string();
    let expect = id.charpoly.ring().parse(&format!("{name}^2 - 2*{name} + 1")).unwrap();
    assert_eq!(id.charpoly, expect);
}

#[test]
fn v_map_values() {
    let m = CongruenceModel::new(2, &[]);
    let (_, nu) = assignment(&m);
    assert_eq!(v_map(&"X1".parse().unwrap(), &m.ring, &nu).unwrap(), -&m.nu(1));
    assert_eq!(v_map(&"X1.X2".parse().unwrap(), &m.ring, &nu).unwrap(), &m.nu(1) * &m.nu(2));
    assert!(v_map(&Word::new(vec![]), &m.ring, &nu).is_err());
}

#[test]
fn trace_congruence_up_to_three_letters() {
    for w in ["X1", "X1.X2", "X1.X2.X3", "X3.X1.X1"] {
        assert!(trace_congruence_check(&w.parse().unwrap(), 3).unwrap(), "{w}");
    }
}

#[test]
fn trace_congruence_rejects_bad_letters() {
    assert!(trace_congruence_check(&"X4".parse().unwrap(), 3).is_err());
    assert!(trace_congruence_check(&Word::new(vec![]), 3).is_err());
}

#[test]
fn det_congruence_cases() {
    assert!(det_congruence_check(&[1], 2, 2).unwrap());
    assert!(det_congruence_check(&[], 2, 2).unwrap());
    assert!(det_congruence_check(&[1, 2], 2, 2).unwrap());
    assert!(det_congruence_check(&[3], 2, 2).is_err());
}

#[test]
fn word_text_round_trip() {
    let w: Word = "X1.X2.X1".parse().unwrap();
    assert_eq!(w.letters, vec![1, 2, 1]);
    assert_eq!(w.to_string(), "X1.X2.X1");
    assert!("X1..X2".parse::<Word>().is_err());
    assert!("Y1".parse::<Word>().is_err());
}

#[test]
fn all_words_count() {
    // 2 + 4 + 8 words of length 1..=3 over two letters
    assert_eq!(Word::all_up_to(2, 3).len(), 14);
}

fn random_mat(seed: u64) -> (Mat2, Mat2) {
    let ring = small_ring(CoefficientRing::Rationals, 3, MonomialOrder::DegRevLex);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = || random_poly(&mut rng, &ring, 3, 2);
    let m = Mat2::new(p(), p(), p(), p());
    let n = Mat2::new(p(), p(), p(), p());
    (m, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn trace_is_cyclic(seed in any::<u64>()) {
        let (m, n) = random_mat(seed);
        prop_assert_eq!(m.mul(&n).trace(), n.mul(&m).trace());
    }

    #[test]
    fn det_is_multiplicative(seed in any::<u64>()) {
        let (m, n) = random_mat(seed);
        prop_assert_eq!(m.mul(&n).det(), &m.det() * &n.det());
    }

    #[test]
    fn cayley_hamilton(seed in any::<u64>()) {
        let (m, _) = random_mat(seed);
        let z = m.mul(&m).sub(&m.scale(&m.trace())).add(&Mat2::scalar(&m.det()));
        prop_assert!(z.is_zero());
    }
}
