use super::*;
use crate::exactpoly::{CoefficientRing, MonomialOrder, PolyRing, VariableTable};

fn ring(names: &[&str], order: MonomialOrder) -> Ring {
    PolyRing::new(CoefficientRing::Rationals, VariableTable::plain(names), order)
}

#[test]
fn lex_basis_of_two_quadrics() {
    let r = ring(&["x", "y"], MonomialOrder::Lex);
    let f = r.parse("x^2 - 1").unwrap();
    let g = r.parse("x*y - 1").unwrap();
    let gb = buchberger(&IdealSpec::new(&r, vec![f, g])).unwrap();
    let got: Vec<String> = gb.basis().iter().map(|p| p.to_string()).collect();
    assert_eq!(got, vec!["x - y", "y^2 - 1"]);
    let x2 = r.parse("x^2").unwrap();
    assert_eq!(gb.normal_form(&x2).unwrap().to_string(), "1");
    assert!(gb.normal_form(&r.zero()).unwrap().is_zero());
}

#[test]
fn single_generator_is_made_monic() {
    let r = ring(&["x", "y"], MonomialOrder::DegRevLex);
    let f = r.parse("3*x*y + 6*y").unwrap();
    let gb = buchberger(&IdealSpec::new(&r, vec![f])).unwrap();
    assert_eq!(gb.basis().len(), 1);
    assert_eq!(gb.basis()[0].to_string(), "x * y + 2 * y");
}

#[test]
fn variables_are_already_a_basis() {
    let r = ring(&["x", "y"], MonomialOrder::DegRevLex);
    let gb = buchberger(&IdealSpec::new(&r, vec![r.var("x"), r.var("y")])).unwrap();
    let got: Vec<String> = gb.basis().iter().map(|p| p.to_string()).collect();
    assert_eq!(got, vec!["x", "y"]);
}

#[test]
fn membership_of_multiples() {
    let r = ring(&["x", "y", "z"], MonomialOrder::DegRevLex);
    let g1 = r.parse("x^2 - y*z").unwrap();
    let g2 = r.parse("y^2 - x*z + 1").unwrap();
    let gb = buchberger(&IdealSpec::new(&r, vec![g1.clone(), g2.clone()])).unwrap();
    let h = r.parse("x*y + 3*z^2 - 7").unwrap();
    assert!(gb.contains(&(&g1 * &h)).unwrap());
    assert!(gb.contains(&(&(&g2 * &h) + &g1)).unwrap());
    let nf = gb.normal_form(&h).unwrap();
    assert_eq!(gb.normal_form(&nf).unwrap(), nf);
}

#[test]
fn quotient_examples() {
    let r = ring(&["x", "y"], MonomialOrder::DegRevLex);
    let spec = IdealSpec::new(&r, vec![r.parse("x*y").unwrap()]);
    let q = ideal_quotient(&spec, &r.var("x")).unwrap();
    assert!(ideals_equal(&q, &IdealSpec::new(&r, vec![r.var("y")])).unwrap());
    let q1 = ideal_quotient(&spec, &r.one()).unwrap();
    assert!(ideals_equal(&q1, &spec).unwrap());
    let q0 = ideal_quotient(&spec, &r.zero()).unwrap();
    assert!(buchberger(&q0).unwrap().is_unit());
}

#[test]
fn quotient_of_principal_minor_ideal() {
    let r = ring(&["b1", "b2", "b3", "bp1", "bp2", "bp3"], MonomialOrder::DegRevLex);
    let r12 = r.parse("b1*bp2 - b2*bp1").unwrap();
    let r13 = r.parse("b1*bp3 - b3*bp1").unwrap();
    let spec = IdealSpec::new(&r, vec![r12.clone()]);
    let q = ideal_quotient(&spec, &r13).unwrap();
    for g in &q.generators {
        assert!(ideal_member(&spec, &(g * &r13)).unwrap());
    }
    assert!(ideals_equal(&q, &spec).unwrap());
}

#[test]
fn koszul_syzygy_of_a_row() {
    let r = ring(&["b1", "b2"], MonomialOrder::DegRevLex);
    let m = FreeModuleMatrix::from_rows(&r, vec![vec![r.var("b1"), r.var("b2")]]).unwrap();
    let syz = syzygies(&m).unwrap();
    assert_eq!(syz.len(), 1);
    let v = &syz[0];
    let expect = [-r.var("b2"), r.var("b1")];
    assert!(v[0] == expect[0] && v[1] == expect[1] || v[0] == -&expect[0] && v[1] == -&expect[1]);
}

#[test]
fn zero_matrix_has_full_kernel() {
    let r = ring(&["x"], MonomialOrder::DegRevLex);
    let m = FreeModuleMatrix::zeros(&r, 1, 1);
    let syz = syzygies(&m).unwrap();
    assert_eq!(syz, vec![vec![r.one()]]);
}

#[test]
fn two_by_three_kernel_is_generated_by_minors() {
    let r = ring(&["b1", "b2", "b3", "bp1", "bp2", "bp3"], MonomialOrder::DegRevLex);
    let m = FreeModuleMatrix::from_rows(
        &r,
        vec![
            vec![r.var("b1"), r.var("b2"), r.var("b3")],
            vec![r.var("bp1"), r.var("bp2"), r.var("bp3")],
        ],
    )
    .unwrap();
    let syz = syzygies(&m).unwrap();
    let rij = |i: usize, j: usize| {
        r.parse(&format!("b{i}*bp{j} - b{j}*bp{i}")).unwrap()
    };
    let d123 = vec![rij(2, 3), rij(3, 1), rij(1, 2)];
    let gen = ModuleBasis::new(&r, 3, std::slice::from_ref(&d123)).unwrap();
    for v in &syz {
        assert!(gen.contains(v).unwrap());
    }
    let all = ModuleBasis::new(&r, 3, &syz).unwrap();
    assert!(all.contains(&d123).unwrap());
}

#[test]
fn determinant_by_expansion() {
    let r = ring(&["a", "b", "c", "d"], MonomialOrder::DegRevLex);
    let m = FreeModuleMatrix::from_rows(
        &r,
        vec![vec![r.var("a"), r.var("b")], vec![r.var("c"), r.var("d")]],
    )
    .unwrap();
    assert_eq!(m.det(), r.parse("a*d - b*c").unwrap());
    let id = FreeModuleMatrix::identity(&r, 5);
    assert_eq!(id.det(), r.one());
}

#[test]
fn budget_exhaustion_is_a_timeout() {
    let r = ring(&["x", "y", "z"], MonomialOrder::DegRevLex);
    let gens = vec![
        r.parse("x^2*y - z^2 + 1").unwrap(),
        r.parse("x*y^2 - x*z - 2").unwrap(),
        r.parse("x*y*z - y^2 + 3").unwrap(),
    ];
    let cfg = GroebnerConfig {
        max_steps: 5,
        ..GroebnerConfig::default()
    };
    let res = buchberger_with(&IdealSpec::new(&r, gens), cfg);
    assert!(matches!(res, Err(GroebnerError::Timeout(_))));
}
