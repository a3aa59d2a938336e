use proptest::prelude::*;
use ribet_core::exactpoly::{Coeff, CoefficientRing, Monomial, MonomialOrder, PolyRing, Polynomial, Ring, VariableTable};
use ribet_core::fp::Fp;
use ribet_core::groebner::{
    buchberger, buchberger_with, ideal_member, ideal_quotient, ideals_equal, normal_form, syzygies,
    FreeModuleMatrix, GroebnerConfig, GroebnerError, IdealSpec, ModuleBasis,
};

const P: u64 = 101;

fn ring(k: CoefficientRing, names: &[&str], order: MonomialOrder) -> Ring {
    PolyRing::new(k, VariableTable::plain(names), order)
}

fn fp3() -> Ring {
    ring(CoefficientRing::PrimeField(P), &["x", "y", "z"], MonomialOrder::DegRevLex)
}

#[test]
fn normal_form_examples() {
    let r = ring(CoefficientRing::Rationals, &["x", "y"], MonomialOrder::Lex);
    let gb = buchberger(&IdealSpec::new(&r, vec![r.parse("x^2 - 1").unwrap(), r.parse("x*y - 1").unwrap()])).unwrap();
    assert_eq!(gb.basis(), &[r.parse("x - y").unwrap(), r.parse("y^2 - 1").unwrap()]);
    assert_eq!(normal_form(&r.parse("x^2").unwrap(), &gb).unwrap(), r.one());
    assert!(normal_form(&r.zero(), &gb).unwrap().is_zero());
    let multiple = &r.parse("x*y - 1").unwrap() * &r.parse("3*x + y^5").unwrap();
    assert!(gb.contains(&multiple).unwrap());
}

#[test]
fn integer_inputs_are_lifted() {
    let r = ring(CoefficientRing::Integers, &["x", "y"], MonomialOrder::DegRevLex);
    let spec = IdealSpec::new(&r, vec![r.parse("2*x - 4*y").unwrap()]);
    assert!(ideal_member(&spec, &r.parse("x - 2*y").unwrap()).unwrap());
}

#[test]
fn quotient_by_one_and_by_zero() {
    let r = fp3();
    let spec = IdealSpec::new(&r, vec![r.parse("x*y").unwrap(), r.parse("z^2").unwrap()]);
    let same = ideal_quotient(&spec, &r.one()).unwrap();
    assert!(ideals_equal(&same, &spec).unwrap());
    let unit = ideal_quotient(&spec, &r.zero()).unwrap();
    assert!(ideal_member(&unit, &r.one()).unwrap());
}

#[test]
fn step_budget_reports_timeout() {
    let r = fp3();
    // pairwise coprime leading terms would need no reductions at all
    let gens = vec![r.parse("x^2*y - z + 1").unwrap(), r.parse("x*y^2 - x*z").unwrap(), r.parse("y*z^2 - x*y - 2").unwrap()];
    let cfg = GroebnerConfig { max_steps: 2, ..GroebnerConfig::default() };
    assert!(matches!(buchberger_with(&IdealSpec::new(&r, gens.clone()), cfg), Err(GroebnerError::Timeout(_))));
    assert!(buchberger(&IdealSpec::new(&r, gens)).is_ok());
}

type Terms = Vec<((u16, u16, u16), u64)>;

fn terms(max_deg: u16) -> impl Strategy<Value = Terms> {
    prop::collection::vec(((0..=max_deg, 0..=max_deg, 0..=max_deg), 1u64..P), 1..4)
}

fn build(r: &Ring, t: &Terms) -> Polynomial {
    Polynomial::from_terms(
        r,
        t.iter().map(|((a, b, c), k)| (Monomial::from_exps(vec![*a, *b, *c]), Coeff::P(*k))).collect(),
    )
}

/// Monomials of total degree at most `d` in three variables.
fn monomials(d: u16) -> Vec<Monomial> {
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            for c in 0..=d - a - b {
                out.push(Monomial::from_exps(vec![a, b, c]));
            }
        }
    }
    out
}

/// Basis of the degree-≤`d` part of the kernel of a 1×k row, by linear
/// algebra on coefficient vectors over 𝔽_p.
fn bounded_kernel(r: &Ring, row: &[Polynomial], d: u16) -> Vec<Vec<Polynomial>> {
    let f = Fp::new(P).unwrap();
    let unknowns = monomials(d);
    let mut image_monomials: Vec<Monomial> = Vec::new();
    let mut columns: Vec<Vec<(usize, u64)>> = Vec::new();
    for entry in row {
        for m in &unknowns {
            let prod = entry.mul_term(m, &Coeff::P(1));
            let mut col = Vec::new();
            for (mon, c) in prod.terms() {
                let idx = match image_monomials.iter().position(|x| x == mon) {
                    Some(i) => i,
                    None => {
                        image_monomials.push(mon.clone());
                        image_monomials.len() - 1
                    }
                };
                col.push((idx, c.as_residue().unwrap()));
            }
            columns.push(col);
        }
    }
    let mut m = vec![vec![0u64; columns.len()]; image_monomials.len().max(1)];
    for (j, col) in columns.iter().enumerate() {
        for &(i, c) in col {
            m[i][j] = c;
        }
    }
    f.nullspace(&m, columns.len())
        .into_iter()
        .map(|v| {
            (0..row.len())
                .map(|e| {
                    let terms = unknowns
                        .iter()
                        .enumerate()
                        .map(|(k, mon)| (mon.clone(), Coeff::P(v[e * unknowns.len() + k])))
                        .collect();
                    Polynomial::from_terms(r, terms)
                })
                .collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_idempotent_and_kills_multiples(g in terms(2), h in terms(2), f in terms(3)) {
        let r = fp3();
        let (g, h, f) = (build(&r, &g), build(&r, &h), build(&r, &f));
        let gb = buchberger(&IdealSpec::new(&r, vec![g.clone(), h.clone()])).unwrap();
        let nf = gb.normal_form(&f).unwrap();
        prop_assert_eq!(gb.normal_form(&nf).unwrap(), nf.clone());
        prop_assert!(gb.contains(&(&g * &f)).unwrap());
        prop_assert!(gb.contains(&(&f - &nf)).unwrap());
    }

    #[test]
    fn quotient_generators_multiply_into_the_ideal(g in terms(2), h in terms(2), f in terms(1)) {
        let r = fp3();
        let spec = IdealSpec::new(&r, vec![build(&r, &g), build(&r, &h)]);
        let f = build(&r, &f);
        let quot = ideal_quotient(&spec, &f).unwrap();
        let gb = buchberger(&spec).unwrap();
        for q in &quot.generators {
            prop_assert!(gb.contains(&(q * &f)).unwrap());
        }
        for g in &spec.generators {
            prop_assert!(ideal_member(&quot, g).unwrap());
        }
    }

    #[test]
    fn syzygies_are_sound_and_complete_in_low_degree(
        row in prop::collection::vec(terms(1), 2..=3),
    ) {
        let r = fp3();
        let row: Vec<Polynomial> = row.iter().map(|t| build(&r, t)).collect();
        let m = FreeModuleMatrix::from_rows(&r, vec![row.clone()]).unwrap();
        let syz = syzygies(&m).unwrap();
        for v in &syz {
            prop_assert!(m.apply(v).iter().all(Polynomial::is_zero));
        }
        let span = ModuleBasis::new(&r, row.len(), &syz).unwrap();
        for v in bounded_kernel(&r, &row, 2) {
            prop_assert!(m.apply(&v).iter().all(Polynomial::is_zero));
            prop_assert!(span.contains(&v).unwrap(), "missing {:?}", v);
        }
    }
}
