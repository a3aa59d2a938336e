//! The formal ring `R`, the boldface matrices `E`, `E′`, `D`, the ideals `J`,
//! `J′`, `I_R` and the symbolic identity checks built on them.

use std::collections::BTreeSet;

use crate::borel::{adjoint_quadruple_check, invariant_mod, TauAction};
use crate::exactpoly::{
    CoefficientRing, MonomialOrder, PolyRing, Polynomial, Ring, Role, VariableTable,
};
use crate::genmat::{Mat2, Word};
use crate::groebner::{buchberger, FreeModuleMatrix, GroebnerError, IdealSpec};

use super::shape::{Column, RibetShape, RowSpec};
use super::RibetError;

/// Polynomial ring of a shape: `ν_i`, `ε`, `δ`, `x_σ`, then the matrix
/// entries `a_i, b_i, c_i, d_i`, with `b_σ` absent for type III labels.
#[derive(Clone, Debug)]
pub struct FormalRing {
    pub shape: RibetShape,
    pub ring: Ring,
}

impl FormalRing {
    pub fn new(shape: &RibetShape) -> Self {
        FormalRing::with_coeffs(shape, CoefficientRing::Rationals)
    }

    pub fn with_coeffs(shape: &RibetShape, coeffs: CoefficientRing) -> Self {
        let r = shape.r();
        let mut t = VariableTable::new();
        for i in 1..=r {
            t.push(&format!("nu{i}"), Role::Nu, Some(i)).unwrap();
        }
        for (k, row) in shape.rows().iter().enumerate() {
            match row {
                RowSpec::I => {
                    let q = shape.type_i_ordinal(k);
                    for m in 1..=r {
                        t.push(&eps_name(q, m), Role::Eps, None).unwrap();
                    }
                }
                RowSpec::II { i, j } => {
                    for m in 1..=r {
                        t.push(&delta_name(*i, *j, m), Role::Delta, None).unwrap();
                    }
                }
                _ => {}
            }
        }
        for i in shape.x_generators() {
            let label = &shape.generators[i - 1].label;
            t.push(&format!("x_{label}"), Role::XSigma, Some(i)).unwrap();
        }
        let deleted = shape.b_v0();
        for i in 1..=r {
            t.push(&format!("a{i}"), Role::A, Some(i)).unwrap();
            if !deleted.contains(&i) {
                t.push(&format!("b{i}"), Role::B, Some(i)).unwrap();
            }
            t.push(&format!("c{i}"), Role::C, Some(i)).unwrap();
            t.push(&format!("d{i}"), Role::D, Some(i)).unwrap();
        }
        FormalRing {
            shape: shape.clone(),
            ring: PolyRing::new(coeffs, t, MonomialOrder::DegRevLex),
        }
    }

    pub fn nu(&self, i: usize) -> Polynomial {
        self.ring.var(&format!("nu{i}"))
    }

    pub fn eps(&self, q: usize, k: usize) -> Polynomial {
        self.ring.var(&eps_name(q, k))
    }

    pub fn delta(&self, i: usize, j: usize, k: usize) -> Polynomial {
        self.ring.var(&delta_name(i, j, k))
    }

    pub fn x(&self, i: usize) -> Polynomial {
        let label = &self.shape.generators[i - 1].label;
        self.ring.var(&format!("x_{label}"))
    }

    pub fn rho(&self, i: usize) -> Mat2 {
        Mat2::generic(&self.ring, i)
    }

    /// `b′_σ = x_σ − a_σ`.
    pub fn b_prime(&self, i: usize) -> Polynomial {
        &self.x(i) - &self.rho(i).a
    }

    /// `c′_σ = x_σ − d_σ`.
    pub fn c_prime(&self, i: usize) -> Polynomial {
        &self.x(i) - &self.rho(i).d
    }
}

pub fn eps_name(q: usize, k: usize) -> String {
    format!("eps{q}_{k}")
}

pub fn delta_name(i: usize, j: usize, k: usize) -> String {
    format!("delta_{i}_{j}_{k}")
}

#[derive(Clone, Debug)]
pub struct RelationMatrices {
    pub e: FreeModuleMatrix,
    pub e_prime: FreeModuleMatrix,
    /// Lower-right `(r+s)×(r+s)` block of `E`.
    pub d: FreeModuleMatrix,
}

/// Builds `E` and `E′` over the formal ring. Rows are the `t` place rows
/// followed by the rows of `D`; columns are places, generators, `y`.
pub fn build_matrices(fr: &FormalRing) -> RelationMatrices {
    let shape = &fr.shape;
    let ring = &fr.ring;
    let n = shape.size();
    let (t, r) = (shape.t(), shape.r());
    let mut e = FreeModuleMatrix::zeros(ring, n, n);
    let mut ep = FreeModuleMatrix::zeros(ring, n, n);
    let mut set_both = |row: usize, col: usize, p: Polynomial| {
        e.set(row, col, p.clone());
        ep.set(row, col, p);
    };
    // entries that are altered are written to `e` and `ep` separately below
    let mut altered: Vec<(usize, usize, Polynomial, Polynomial)> = Vec::new();
    for k in 0..t {
        let g = shape.place_sigma(k);
        set_both(k, shape.column(Column::Gen(g)), ring.one());
        altered.push((
            k,
            shape.column(Column::Place(k)),
            &fr.x(g) + &fr.nu(g),
            fr.b_prime(g),
        ));
    }
    for (m, row) in shape.rows().iter().enumerate() {
        let ri = t + m;
        match row {
            RowSpec::I => {
                let q = shape.type_i_ordinal(m);
                for k in 1..=r {
                    set_both(ri, shape.column(Column::Gen(k)), fr.eps(q, k));
                }
            }
            RowSpec::II { i, j } => {
                let (i, j) = (*i, *j);
                for k in 1..=r {
                    let plain = fr.delta(i, j, k);
                    let mut alt = plain.clone();
                    if k == j {
                        alt = &(&alt - &fr.rho(i).a) - &fr.nu(i);
                    }
                    if k == i {
                        alt = &alt - &fr.rho(j).d;
                    }
                    altered.push((ri, shape.column(Column::Gen(k)), plain, alt));
                }
            }
            RowSpec::III { sigma } => {
                set_both(ri, shape.column(Column::Gen(shape.index_of(sigma))), ring.one());
            }
            RowSpec::IV { place, sigma } => {
                let g = shape.index_of(sigma);
                let v = shape.place_index(place).expect("validated");
                set_both(ri, shape.column(Column::Gen(g)), ring.one());
                altered.push((
                    ri,
                    shape.column(Column::Place(v)),
                    &fr.x(g) + &fr.nu(g),
                    fr.b_prime(g),
                ));
            }
            RowSpec::V { place, sigma } => {
                let g = shape.index_of(sigma);
                let w = shape.sigma_place_index(place).expect("validated");
                set_both(ri, shape.column(Column::Gen(g)), ring.one());
                altered.push((
                    ri,
                    shape.column(Column::Y(w)),
                    &fr.x(g) + &fr.nu(g),
                    fr.b_prime(g),
                ));
            }
        }
    }
    for (row, col, plain, alt) in altered {
        e.set(row, col, plain);
        ep.set(row, col, alt);
    }
    let m = n - t;
    let mut d = FreeModuleMatrix::zeros(ring, m, m);
    for i in 0..m {
        for j in 0..m {
            d.set(i, j, e.get(t + i, t + j).clone());
        }
    }
    RelationMatrices { e, e_prime: ep, d }
}

/// Origin of a quadruple of `J` generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuadSource {
    /// Coefficients of `Σ ε_k ρ_k` for the given row of `D`.
    Linear { row: usize },
    /// Coefficients of `(ρ_i + ν_i)ρ_j − Σ δ_ijk ρ_k` for the given row.
    Product { row: usize, i: usize, j: usize },
    /// `A, B, C, D(σ, τ)` for two generators of the same local set.
    Local { place: String, sigma: usize, tau: usize },
}

#[derive(Clone, Debug)]
pub struct RelationQuad {
    pub source: QuadSource,
    /// Entries in the layout `[[A, B], [C, D]]`.
    pub entries: Mat2,
}

impl RelationQuad {
    pub fn label(&self) -> String {
        match &self.source {
            QuadSource::Linear { row } => format!("linear row {row}"),
            QuadSource::Product { row, i, j } => format!("product row {row} ({i},{j})"),
            QuadSource::Local { place, sigma, tau } => format!("local {place} ({sigma},{tau})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RibetIdeals {
    pub quads: Vec<RelationQuad>,
    pub j: IdealSpec,
    pub j_prime: IdealSpec,
    pub i_r: IdealSpec,
}

/// The local quadruple `A, B, C, D(σ, τ)`.
pub fn local_quad(fr: &FormalRing, sigma: usize, tau: usize) -> Mat2 {
    let (rs, rt) = (fr.rho(sigma), fr.rho(tau));
    let (bps, bpt) = (fr.b_prime(sigma), fr.b_prime(tau));
    let (cps, cpt) = (fr.c_prime(sigma), fr.c_prime(tau));
    Mat2::new(
        &(&rs.b * &rt.c) - &(&cpt * &bps),
        &(&rs.b * &bpt) - &(&rt.b * &bps),
        &(&rs.c * &cpt) - &(&rt.c * &cps),
        &(&rt.b * &rs.c) - &(&cps * &bpt),
    )
}

pub fn relation_quads(fr: &FormalRing) -> Vec<RelationQuad> {
    let shape = &fr.shape;
    let r = shape.r();
    let mut out = Vec::new();
    for (m, row) in shape.rows().iter().enumerate() {
        match row {
            RowSpec::I => {
                let q = shape.type_i_ordinal(m);
                let mut acc = Mat2::zero(&fr.ring);
                for k in 1..=r {
                    acc = acc.add(&fr.rho(k).scale(&fr.eps(q, k)));
                }
                out.push(RelationQuad {
                    source: QuadSource::Linear { row: m },
                    entries: acc,
                });
            }
            RowSpec::II { i, j } => {
                let (i, j) = (*i, *j);
                let mut acc = fr.rho(i).shift(&fr.nu(i)).mul(&fr.rho(j));
                for k in 1..=r {
                    acc = acc.sub(&fr.rho(k).scale(&fr.delta(i, j, k)));
                }
                out.push(RelationQuad {
                    source: QuadSource::Product { row: m, i, j },
                    entries: acc,
                });
            }
            _ => {}
        }
    }
    for (place, set) in shape.local_sets() {
        for (a, &sigma) in set.iter().enumerate() {
            for &tau in &set[a + 1..] {
                out.push(RelationQuad {
                    source: QuadSource::Local {
                        place: place.clone(),
                        sigma,
                        tau,
                    },
                    entries: local_quad(fr, sigma, tau),
                });
            }
        }
    }
    out
}

pub fn build_ideals(fr: &FormalRing) -> RibetIdeals {
    let quads = relation_quads(fr);
    let mut j = Vec::new();
    let mut jp = Vec::new();
    for q in &quads {
        j.extend(q.entries.entries().iter().map(|p| (*p).clone()));
        jp.push(q.entries.b.clone());
    }
    let mut ir = Vec::new();
    for i in 1..=fr.shape.r() {
        let rho = fr.rho(i);
        ir.push(&rho.a + &fr.nu(i));
        ir.push(rho.b);
        ir.push(rho.c);
        ir.push(rho.d);
    }
    RibetIdeals {
        quads,
        j: IdealSpec::new(&fr.ring, j),
        j_prime: IdealSpec::new(&fr.ring, jp),
        i_r: IdealSpec::new(&fr.ring, ir),
    }
}

/// `det(E′) − det(E)`, after confirming that it lies in `I_R`.
pub fn element_e(fr: &FormalRing) -> Result<Polynomial, RibetError> {
    let m = build_matrices(fr);
    let e = &m.e_prime.det() - &m.e.det();
    let ideals = build_ideals(fr);
    let gb = buchberger(&ideals.i_r)?;
    if !gb.contains(&e)? {
        return Err(RibetError::Invariant("det(E′) − det(E) is not in I_R".into()));
    }
    Ok(e)
}

/// Every entry of `E′ − E` lies in `I_R`.
pub fn entry_differences_in_i_r(fr: &FormalRing) -> Result<bool, GroebnerError> {
    let m = build_matrices(fr);
    let gb = buchberger(&build_ideals(fr).i_r)?;
    for (a, b) in m.e_prime.entries().iter().zip(m.e.entries()) {
        if !gb.contains(&(a - b))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The right-hand side `(t₁+ν₁)δ₂₁₁ + (t₂+ν₂)δ₁₂₂ − (t₁₂ + t₁ν₂ + t₂ν₁ + ν₁ν₂)`.
pub fn example_r2_target(fr: &FormalRing) -> Polynomial {
    let (r1, r2) = (fr.rho(1), fr.rho(2));
    let (t1, t2) = (r1.trace(), r2.trace());
    let t12 = r1.mul(&r2).trace();
    let (n1, n2) = (fr.nu(1), fr.nu(2));
    let inner = &(&(&t12 + &(&t1 * &n2)) + &(&t2 * &n1)) + &(&n1 * &n2);
    &(&(&(&t1 + &n1) * &fr.delta(2, 1, 1)) + &(&(&t2 + &n2) * &fr.delta(1, 2, 2))) - &inner
}

/// `e` minus the closed form reduces to 0 modulo the eight product-relation
/// coefficients. `omit` drops one of those generators (0..8), which should
/// make the check fail.
pub fn check_example_r2_with(coeffs: CoefficientRing, omit: Option<usize>) -> Result<bool, RibetError> {
    let shape = super::shape::corpus::two_product_rows();
    let fr = FormalRing::with_coeffs(&shape, coeffs);
    let e = element_e(&fr)?;
    let diff = &e - &example_r2_target(&fr);
    let mut gens: Vec<Polynomial> = build_ideals(&fr).j.generators;
    if let Some(k) = omit {
        gens.remove(k);
    }
    let gb = buchberger(&IdealSpec::new(&fr.ring, gens))?;
    Ok(gb.normal_form(&diff)?.is_zero())
}

pub fn check_example_r2() -> Result<bool, RibetError> {
    check_example_r2_with(CoefficientRing::Rationals, None)
}

/// `τ_x(det E′) − det E′ ∈ J′·R[x]`, with `J′` restricted to the generators
/// selected by `keep` (indexed like the relation quadruples).
pub fn check_e_tau_invariance_with(
    fr: &FormalRing,
    keep: impl Fn(usize, &RelationQuad) -> bool,
) -> Result<bool, RibetError> {
    let ideals = build_ideals(fr);
    let gens: Vec<Polynomial> = ideals
        .quads
        .iter()
        .enumerate()
        .filter(|(k, q)| keep(*k, q))
        .map(|(_, q)| q.entries.b.clone())
        .collect();
    let jp = IdealSpec::new(&fr.ring, gens);
    let det = build_matrices(fr).e_prime.det();
    let tau = TauAction::new(&fr.ring);
    let diff = &tau.apply(&det)? - &tau.lift(&det)?;
    if diff.is_zero() {
        return Ok(true);
    }
    let gb = buchberger(&tau.extended_ideal(&jp)?)?;
    Ok(gb.contains(&diff)?)
}

pub fn check_e_tau_invariance(fr: &FormalRing) -> Result<bool, RibetError> {
    check_e_tau_invariance_with(fr, |_, _| true)
}

/// Outcome of the `R/(I_R, J)` presentation check.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    pub holds: bool,
    pub computed: Vec<Polynomial>,
    pub expected: Vec<Polynomial>,
}

/// Sends `a_i ↦ −ν_i` and `b, c, d ↦ 0` in each `J` generator and compares
/// the result, up to sign and repetition, with the listed `R₀` generators.
pub fn quotient_presentation(fr: &FormalRing) -> QuotientPresentation {
    let shape = &fr.shape;
    let r = shape.r();
    let mut subs = Vec::new();
    for i in 1..=r {
        let rho = fr.rho(i);
        for (p, img) in [
            (&rho.a, -&fr.nu(i)),
            (&rho.b, fr.ring.zero()),
            (&rho.c, fr.ring.zero()),
            (&rho.d, fr.ring.zero()),
        ] {
            if let Some(id) = p.variables().into_iter().next() {
                subs.push((fr.ring.vars.name(id).to_string(), img));
            }
        }
    }
    let pairs: Vec<(&str, Polynomial)> = subs.iter().map(|(n, p)| (n.as_str(), p.clone())).collect();
    let normalize = |set: &mut Vec<Polynomial>| {
        let mut seen = BTreeSet::new();
        set.retain(|p| !p.is_zero() && seen.insert(p.to_string()));
        set.sort_by_key(|p| p.to_string());
    };
    let mut computed: Vec<Polynomial> = build_ideals(fr)
        .j
        .generators
        .iter()
        .map(|g| g.subs(&pairs).sign_normalized())
        .collect();
    normalize(&mut computed);
    let mut expected = Vec::new();
    for (m, row) in shape.rows().iter().enumerate() {
        match row {
            RowSpec::I => {
                let q = shape.type_i_ordinal(m);
                let s = (1..=r).fold(fr.ring.zero(), |acc, k| &acc + &(&fr.eps(q, k) * &fr.nu(k)));
                expected.push(s.sign_normalized());
            }
            RowSpec::II { i, j } => {
                let s = (1..=r).fold(fr.ring.zero(), |acc, k| {
                    &acc + &(&fr.delta(*i, *j, k) * &fr.nu(k))
                });
                expected.push(s.sign_normalized());
            }
            _ => {}
        }
    }
    for (_, set) in shape.local_sets() {
        for &s in &set {
            for &t in &set {
                if s != t {
                    expected.push((&(&fr.x(s) + &fr.nu(s)) * &fr.x(t)).sign_normalized());
                }
            }
        }
    }
    normalize(&mut expected);
    let holds = computed.len() == expected.len()
        && computed.iter().zip(&expected).all(|(a, b)| a == b);
    QuotientPresentation {
        holds,
        computed,
        expected,
    }
}

pub fn check_quotient_presentation(fr: &FormalRing) -> bool {
    quotient_presentation(fr).holds
}

/// Traces and determinants of all words of length `1..=maxlen`, the
/// normalized traces `tr(w) − V(w)`, and `d_σ` for the type III labels.
pub fn build_a_generators(fr: &FormalRing, maxlen: usize) -> Vec<Polynomial> {
    let r = fr.shape.r();
    let mut out: Vec<Polynomial> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut push = |p: Polynomial, out: &mut Vec<Polynomial>| {
        if !p.is_zero() && seen.insert(p.to_string()) {
            out.push(p);
        }
    };
    for w in Word::all_up_to(r, maxlen.max(1)) {
        let m = w
            .letters
            .iter()
            .fold(Mat2::identity(&fr.ring), |acc, &l| acc.mul(&fr.rho(l)));
        let v = w
            .letters
            .iter()
            .fold(fr.ring.one(), |acc, &l| &acc * &(-&fr.nu(l)));
        let tr = m.trace();
        push(tr.clone(), &mut out);
        push(m.det(), &mut out);
        push(&tr - &v, &mut out);
    }
    for i in fr.shape.b_v0() {
        push(fr.rho(i).d, &mut out);
    }
    out
}

/// Every `A` generator is Borel-invariant in `R`.
pub fn check_a_generators_invariant(fr: &FormalRing, maxlen: usize) -> Result<bool, GroebnerError> {
    let tau = TauAction::new(&fr.ring);
    let zero = IdealSpec::new(&fr.ring, vec![]);
    for g in build_a_generators(fr, maxlen) {
        if !invariant_mod(&tau, &g, &zero)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Each relation quadruple transforms like the adjoint representation.
pub fn check_quads_adjoint(fr: &FormalRing) -> Result<Vec<(String, bool)>, RibetError> {
    let tau = TauAction::new(&fr.ring);
    let mut out = Vec::new();
    for q in relation_quads(fr) {
        let m = &q.entries;
        out.push((q.label(), adjoint_quadruple_check(&tau, [&m.a, &m.b, &m.c, &m.d])?));
    }
    Ok(out)
}

/// `τ_x` maps each generator of `J` and of `J′` back into the ideal.
///
/// A quadruple obeying the adjoint law certifies its own entries: each image
/// is an explicit `R[x]`-combination of the quadruple, and `τ_x(B) = B`
/// covers `J′`. Only uncertified generators go through Gröbner membership.
pub fn check_ideals_stable(fr: &FormalRing) -> Result<bool, RibetError> {
    let ideals = build_ideals(fr);
    let tau = TauAction::new(&fr.ring);
    let mut pending_j = Vec::new();
    let mut pending_jp = Vec::new();
    for q in &ideals.quads {
        let m = &q.entries;
        if adjoint_quadruple_check(&tau, [&m.a, &m.b, &m.c, &m.d])? {
            continue;
        }
        pending_j.extend(m.entries().iter().map(|p| (*p).clone()));
        if !tau.fixes(&m.b)? {
            pending_jp.push(m.b.clone());
        }
    }
    for (ideal, pending) in [(&ideals.j, pending_j), (&ideals.j_prime, pending_jp)] {
        if pending.is_empty() {
            continue;
        }
        let gb = buchberger(&tau.extended_ideal(ideal)?)?;
        for g in &pending {
            if !gb.contains(&tau.apply(g)?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
