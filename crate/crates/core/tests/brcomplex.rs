use ribet_core::brcomplex::regular::{block_with_linear_relation, generic_2xn, inhomogeneous_linear_forms, minor};
use ribet_core::brcomplex::{
    br_complexes, build_cd_morphism, check_d2, d_ijk, homology_at_point, homology_at_random_points,
    koszul, regular_sequence_check, regularity_check, symbolic_h1, tensor, FreeComplex,
};
use ribet_core::exactpoly::{CoefficientRing, MonomialOrder, PolyRing, Polynomial, Ring, Role, VariableTable};
use ribet_core::groebner::{ideals_equal, FreeModuleMatrix, IdealSpec};
use ribet_core::ribet::shape::corpus;

const P: u64 = 10007;

fn ring(names: &[&str]) -> Ring {
    let mut t = VariableTable::new();
    for n in names {
        t.push(n, Role::Other, None).unwrap();
    }
    PolyRing::new(CoefficientRing::Rationals, t, MonomialOrder::DegRevLex)
}

fn vars(r: &Ring, names: &[&str]) -> Vec<Polynomial> {
    names.iter().map(|n| r.var(n)).collect()
}

#[test]
fn koszul_on_two_variables() {
    let r = ring(&["b1", "b2"]);
    let k = koszul(&vars(&r, &["b1", "b2"])).unwrap();
    assert_eq!(k.ranks(), &[1, 2, 1]);
    assert_eq!(k.d(1).row(0), vars(&r, &["b1", "b2"]));
    assert_eq!(k.d(2).column(0), vec![-&r.var("b2"), r.var("b1")]);
    assert_eq!(k.twist(2), Some(2));
    assert!(check_d2(&k));

    let single = koszul(&[r.var("b1")]).unwrap();
    assert_eq!(single.ranks(), &[1, 1]);
}

#[test]
fn koszul_d2_vanishes_up_to_four() {
    let r = ring(&["x1", "x2", "x3", "x4"]);
    let xs = vars(&r, &["x1", "x2", "x3", "x4"]);
    for n in 1..=4 {
        let k = koszul(&xs[..n]).unwrap();
        assert!(check_d2(&k), "n={n}");
        let binom: Vec<usize> = (0..=n).map(|j| (0..j).fold(1, |a, i| a * (n - i) / (i + 1))).collect();
        assert_eq!(k.ranks(), binom.as_slice());
    }
}

#[test]
fn br_ranks_and_d2() {
    let expected = [(2, vec![2, 2], vec![1, 1]), (3, vec![2, 3, 1], vec![1, 3, 2]), (4, vec![2, 4, 4, 2], vec![1, 6, 9, 4])];
    for (n, rf, rdet) in expected {
        let (_, f) = generic_2xn(CoefficientRing::Rationals, n);
        let br = br_complexes(&f).unwrap();
        assert_eq!(br.rf.ranks(), rf.as_slice(), "R(f) n={n}");
        assert_eq!(br.rdetf.ranks(), rdet.as_slice(), "R(det f) n={n}");
        assert!(check_d2(&br.rf), "R(f) n={n}");
        assert!(check_d2(&br.rdetf), "R(det f) n={n}");
        assert_eq!(br.rf.d(1), &f);
    }
}

#[test]
fn det_image_is_the_minor_ideal() {
    let (ring, f) = generic_2xn(CoefficientRing::Rationals, 4);
    let br = br_complexes(&f).unwrap();
    let mut minors = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            minors.push(minor(&f, i, j));
        }
    }
    let image = br.rdetf.d(1).row(0);
    assert!(ideals_equal(&IdealSpec::new(&ring, image), &IdealSpec::new(&ring, minors)).unwrap());
}

#[test]
fn rf_second_differential_hits_d_ijk() {
    let (_, f) = generic_2xn(CoefficientRing::Rationals, 3);
    let br = br_complexes(&f).unwrap();
    let col = br.rf.d(2).column(0);
    let d = d_ijk(&f, 0, 1, 2);
    let neg: Vec<Polynomial> = d.iter().map(|p| -p).collect();
    assert!(col == d || col == neg, "{col:?}");
}

#[test]
fn corrupted_entry_breaks_d2() {
    let (ring, f) = generic_2xn(CoefficientRing::Rationals, 3);
    let br = br_complexes(&f).unwrap();
    let bad = br.rdetf.with_entry(2, 0, 0, ring.var("b1"));
    assert!(!check_d2(&bad));
    let r = ring_k2();
    let k = koszul(&vars(&r, &["b1", "b2"])).unwrap().with_entry(1, 0, 0, r.one());
    assert!(!check_d2(&k));
}

fn ring_k2() -> Ring {
    ring(&["b1", "b2"])
}

#[test]
fn tensor_of_koszul_factors() {
    let r = ring_k2();
    let k1 = koszul(&[r.var("b1")]).unwrap();
    let k2 = koszul(&[r.var("b2")]).unwrap();
    let t = tensor(&k1, &k2).unwrap();
    let k = koszul(&vars(&r, &["b1", "b2"])).unwrap();
    assert_eq!(t.ranks(), k.ranks());
    assert!(check_d2(&t));
    assert_eq!(t.twists(1), &[1, 1]);
    assert_eq!(t.twist(2), Some(2));
    let h0 = |c: &FreeComplex| IdealSpec::new(&r, c.d(1).row(0));
    assert!(ideals_equal(&h0(&t), &h0(&k)).unwrap());
    assert!(symbolic_h1(&t).unwrap().is_exact_at_1);
}

#[test]
fn tensor_unit_and_rank_convolution() {
    let (ring, f) = generic_2xn(CoefficientRing::Rationals, 3);
    let br = br_complexes(&f).unwrap();
    let unit = FreeComplex::new(&ring, vec![1], vec![], vec![vec![0]], vec![vec!["1".into()]]).unwrap();
    let t = tensor(&br.rdetf, &unit).unwrap();
    assert_eq!(t.ranks(), br.rdetf.ranks());
    for k in 1..=t.top() {
        assert_eq!(t.d(k), br.rdetf.d(k));
    }

    let t = tensor(&br.rdetf, &br.rf).unwrap();
    let (a, b) = (br.rdetf.ranks(), br.rf.ranks());
    let conv: Vec<usize> = (0..a.len() + b.len() - 1)
        .map(|k| (0..=k).filter(|&i| i < a.len() && k - i < b.len()).map(|i| a[i] * b[k - i]).sum())
        .collect();
    assert_eq!(t.ranks(), conv.as_slice());
    assert!(check_d2(&t));

    let shifted = tensor(&br.rdetf.twisted(-1), &br.rf.twisted(2)).unwrap();
    for k in 0..=t.top() {
        let want: Vec<i64> = t.twists(k).iter().map(|x| x + 1).collect();
        assert_eq!(shifted.twists(k), want.as_slice());
    }
}

#[test]
fn complex_record_round_trip() {
    let (ring, f) = generic_2xn(CoefficientRing::Rationals, 3);
    let c = br_complexes(&f).unwrap().rf;
    let rec = c.record();
    let back = FreeComplex::from_record(&ring, &rec).unwrap();
    assert_eq!(back.ranks(), c.ranks());
    for k in 1..=c.top() {
        assert_eq!(back.d(k), c.d(k));
    }
}

#[test]
fn symbolic_exactness_at_degree_one() {
    let r = ring_k2();
    let k = koszul(&vars(&r, &["b1", "b2"])).unwrap();
    assert!(symbolic_h1(&k).unwrap().is_exact_at_1);

    let (_, f) = generic_2xn(CoefficientRing::Rationals, 3);
    let rf = br_complexes(&f).unwrap().rf;
    let rep = symbolic_h1(&rf).unwrap();
    assert!(rep.is_exact_at_1);
    assert!(!rep.kernel_generators.is_empty());

    let cut = rf.truncated(1);
    let rep = symbolic_h1(&cut).unwrap();
    assert!(!rep.is_exact_at_1);
    assert!(!rep.h1_generators.is_empty());
}

#[test]
fn homology_at_special_points() {
    let r = ring_k2();
    let k = koszul(&vars(&r, &["b1", "b2"])).unwrap();
    assert_eq!(homology_at_point(&k, P, &[3, 0]).unwrap(), vec![0, 0, 0]);
    assert_eq!(homology_at_point(&k, P, &[0, 0]).unwrap(), vec![1, 2, 1]);
    assert!(homology_at_point(&k, P, &[1]).is_err());
}

#[test]
fn koszul_on_variables_is_exact_at_random_points() {
    let r = ring(&["x1", "x2", "x3"]);
    let k = koszul(&vars(&r, &["x1", "x2", "x3"])).unwrap();
    for h in homology_at_random_points(&k, P, 50, 11).unwrap() {
        assert!(h[1..].iter().all(|&x| x == 0), "{h:?}");
    }
    assert!(symbolic_h1(&k).unwrap().is_exact_at_1);
}

#[test]
fn smallest_tensor_resolution_is_exact() {
    let c = block_with_linear_relation(CoefficientRing::Rationals).unwrap();
    assert!(check_d2(&c));
    for h in homology_at_random_points(&c, P, 20, 5).unwrap() {
        assert!(h[1..].iter().all(|&x| x == 0), "{h:?}");
    }
    assert!(symbolic_h1(&c).unwrap().is_exact_at_1);
}

#[test]
fn regularity_of_generic_maps() {
    for n in [2, 3] {
        let (_, f) = generic_2xn(CoefficientRing::Rationals, n);
        assert!(regularity_check(&f).unwrap(), "n={n}");
    }
}

#[test]
fn regularity_fails_for_repeated_column() {
    let (ring, _) = generic_2xn(CoefficientRing::Rationals, 3);
    let f = FreeModuleMatrix::from_rows(
        &ring,
        vec![vars(&ring, &["b1", "b1", "b3"]), vars(&ring, &["bp1", "bp1", "bp3"])],
    )
    .unwrap();
    assert!(!regularity_check(&f).unwrap());
}

#[test]
fn regularity_rejects_bad_input() {
    let (ring, _) = generic_2xn(CoefficientRing::Rationals, 2);
    let f = FreeModuleMatrix::from_rows(&ring, vec![vars(&ring, &["b1", "b2"])]).unwrap();
    assert!(regularity_check(&f).is_err());
    let (_, f) = generic_2xn(CoefficientRing::Integers, 2);
    assert!(regularity_check(&f).is_err());
}

#[test]
fn inhomogeneous_linear_forms_are_regular() {
    let (_, ls) = inhomogeneous_linear_forms(CoefficientRing::Rationals, 2, 2);
    assert!(regular_sequence_check(&ls).unwrap());
    let repeated = vec![ls[0].clone(), ls[0].clone()];
    assert!(!regular_sequence_check(&repeated).unwrap());
}

#[test]
fn cd_morphism_on_corpus() {
    for shape in corpus::all() {
        let m = build_cd_morphism(&shape, 2).unwrap();
        assert!(m.squares.iter().all(|&b| b), "{}: squares {:?}", shape.name(), m.squares);
        assert!(m.c_image_is_j_prime, "{}", shape.name());
        assert!(m.d_image_is_j, "{}", shape.name());
        assert!(m.quads_adjoint.iter().all(|(_, b)| *b), "{}", shape.name());
        assert!(check_d2(&m.morphism.source) && check_d2(&m.morphism.target), "{}", shape.name());
    }
}

#[test]
fn cd_morphism_rejects_zero_cap() {
    assert!(build_cd_morphism(&corpus::all()[0], 0).is_err());
}

#[test]
fn corrupted_inclusion_breaks_commutativity() {
    let m = build_cd_morphism(&corpus::all()[1], 2).unwrap();
    let mut bad = m.morphism.clone();
    let r = bad.source.ring().clone();
    bad.maps[1].set(0, 0, r.var(r.vars.name(0)));
    assert!(!bad.commutes());
}
