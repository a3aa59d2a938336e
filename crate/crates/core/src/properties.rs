//! Seeded randomized checks of the algebra kernel: ring axioms, evaluation
//! as a ring homomorphism, S-pair reduction of computed Gröbner bases and
//! Cayley–Hamilton for 2×2 polynomial matrices.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactpoly::{Coeff, CoefficientRing, Monomial, MonomialOrder, PolyRing, Polynomial, Ring, Role, VariableTable};
use crate::genmat::Mat2;
use crate::groebner::{buchberger, IdealSpec};

/// Prime used for finite-field cases.
pub const PROPERTY_PRIME: u64 = 10007;

/// Failures of one property over a batch of cases; each failure records the
/// case number and the offending inputs.
#[derive(Clone, Debug)]
pub struct PropertyReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn small_ring(coeffs: CoefficientRing, nvars: usize, order: MonomialOrder) -> Ring {
    let mut t = VariableTable::new();
    for i in 1..=nvars {
        t.push(&format!("x{i}"), Role::Other, None).expect("fresh");
    }
    PolyRing::new(coeffs, t, order)
}

fn random_coeff(rng: &mut ChaCha8Rng, k: &CoefficientRing) -> Coeff {
    match k {
        CoefficientRing::PrimeField(p) => Coeff::P(rng.gen_range(0..*p)),
        _ => k.from_i64(rng.gen_range(-9..=9)),
    }
}

/// Up to `max_terms` terms of total degree at most `max_deg`.
pub fn random_poly(rng: &mut ChaCha8Rng, ring: &Ring, max_terms: usize, max_deg: u16) -> Polynomial {
    let n = ring.nvars();
    let count = rng.gen_range(0..=max_terms);
    let terms = (0..count)
        .map(|_| {
            let mut exps = vec![0u16; n];
            let mut budget = rng.gen_range(0..=max_deg);
            while budget > 0 {
                exps[rng.gen_range(0..n)] += 1;
                budget -= 1;
            }
            (Monomial::from_exps(exps), random_coeff(rng, &ring.coeffs))
        })
        .collect();
    Polynomial::from_terms(ring, terms)
}

fn rings() -> [Ring; 2] {
    [
        small_ring(CoefficientRing::Rationals, 3, MonomialOrder::DegRevLex),
        small_ring(CoefficientRing::PrimeField(PROPERTY_PRIME), 3, MonomialOrder::Lex),
    ]
}

pub fn ring_axioms(cases: usize, seed: u64) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rings = rings();
    let mut failures = Vec::new();
    for case in 0..cases {
        let ring = &rings[case % 2];
        let [f, g, h] = [0, 1, 2].map(|_| random_poly(&mut rng, ring, 5, 3));
        let zero = ring.zero();
        let one = ring.one();
        let laws = [
            ("add commutes", &f + &g == &g + &f),
            ("mul commutes", &f * &g == &g * &f),
            ("add associates", &(&f + &g) + &h == &f + &(&g + &h)),
            ("mul associates", &(&f * &g) * &h == &f * &(&g * &h)),
            ("distributes", &f * &(&g + &h) == &(&f * &g) + &(&f * &h)),
            ("additive identity", &f + &zero == f),
            ("multiplicative identity", &f * &one == f),
            ("additive inverse", (&f + &-&f).is_zero()),
            ("subtraction", &(&f - &g) + &g == f),
        ];
        for (law, ok) in laws {
            if !ok {
                failures.push(format!("case {case}: {law} fails for f={f}, g={g}, h={h}"));
            }
        }
    }
    PropertyReport { name: "ring axioms", cases, failures }
}

pub fn evaluation_homomorphism(cases: usize, seed: u64) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rings = rings();
    let mut failures = Vec::new();
    for case in 0..cases {
        let ring = &rings[case % 2];
        let k = &ring.coeffs;
        let f = random_poly(&mut rng, ring, 6, 4);
        let g = random_poly(&mut rng, ring, 6, 4);
        let pt: Vec<Coeff> = (0..ring.nvars()).map(|_| random_coeff(&mut rng, k)).collect();
        let (ef, eg) = (f.evaluate_dense(&pt), g.evaluate_dense(&pt));
        let sum = (&f + &g).evaluate_dense(&pt) == k.add(&ef, &eg);
        let prod = (&f * &g).evaluate_dense(&pt) == k.mul(&ef, &eg);
        let unit = ring.one().evaluate_dense(&pt) == k.one();
        if !(sum && prod && unit) {
            failures.push(format!("case {case}: f={f}, g={g}, point={pt:?}"));
        }
    }
    PropertyReport { name: "evaluation homomorphism", cases, failures }
}

/// `S(f, g) = (L/lt f)·f − (L/lt g)·g` with `L = lcm(lm f, lm g)`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let k = &f.ring().coeffs;
    let (mf, mg) = (f.lm().expect("nonzero"), g.lm().expect("nonzero"));
    let l = mf.lcm(mg);
    let left = f.mul_term(&mf.quotient_of(&l), &k.inv(f.lc().expect("nonzero")));
    let right = g.mul_term(&mg.quotient_of(&l), &k.inv(g.lc().expect("nonzero")));
    &left - &right
}

/// Random ideals over 𝔽_p and ℚ: every S-polynomial of the computed basis
/// and every input generator reduces to zero.
pub fn groebner_spair_reduction(cases: usize, seed: u64) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rings = [
        small_ring(CoefficientRing::PrimeField(PROPERTY_PRIME), 3, MonomialOrder::DegRevLex),
        small_ring(CoefficientRing::Rationals, 3, MonomialOrder::Lex),
    ];
    let mut failures = Vec::new();
    for case in 0..cases {
        let ring = &rings[case % 2];
        let ngens = rng.gen_range(1..=3);
        let gens: Vec<Polynomial> = (0..ngens)
            .map(|_| random_poly(&mut rng, ring, 3, 2))
            .filter(|p| !p.is_zero())
            .collect();
        let gb = match buchberger(&IdealSpec::new(ring, gens.clone())) {
            Ok(gb) => gb,
            Err(e) => {
                failures.push(format!("case {case}: {e} for {gens:?}"));
                continue;
            }
        };
        let basis = gb.basis();
        let mut ok = gb.contains_all(&gens).unwrap_or(false);
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let s = s_polynomial(&basis[i], &basis[j]);
                ok &= gb.normal_form(&s).map(|r| r.is_zero()).unwrap_or(false);
            }
        }
        if !ok {
            failures.push(format!("case {case}: generators {gens:?}"));
        }
    }
    PropertyReport { name: "Groebner S-pair reduction", cases, failures }
}

/// `M² − tr(M)·M + det(M)·I = 0` for random polynomial matrices.
pub fn cayley_hamilton(cases: usize, seed: u64) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rings = rings();
    let mut failures = Vec::new();
    for case in 0..cases {
        let ring = &rings[case % 2];
        let [a, b, c, d] = [0, 1, 2, 3].map(|_| random_poly(&mut rng, ring, 4, 2));
        let m = Mat2::new(a, b, c, d);
        let lhs = m
            .mul(&m)
            .sub(&m.scale(&m.trace()))
            .add(&Mat2::scalar(&m.det()));
        if !lhs.is_zero() {
            failures.push(format!("case {case}: {m}"));
        }
    }
    PropertyReport { name: "Cayley-Hamilton", cases, failures }
}

/// All four properties with `cases` each.
pub fn all_properties(cases: usize, seed: u64) -> Vec<PropertyReport> {
    vec![
        ring_axioms(cases, seed),
        evaluation_homomorphism(cases, seed.wrapping_add(1)),
        groebner_spair_reduction(cases, seed.wrapping_add(2)),
        cayley_hamilton(cases, seed.wrapping_add(3)),
    ]
}
