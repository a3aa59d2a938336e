//! 2×2 matrices over polynomial rings, words in generic matrices, and the
//! trace/determinant congruence checks.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::exactpoly::{
    BlockSpec, CoefficientRing, MonomialOrder, PolyError, PolyRing, Polynomial, Ring, Role,
    VariableTable,
};
use crate::groebner::{buchberger, GroebnerError, IdealSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2 {
    pub a: Polynomial,
    pub b: Polynomial,
    pub c: Polynomial,
    pub d: Polynomial,
}

impl Mat2 {
    pub fn new(a: Polynomial, b: Polynomial, c: Polynomial, d: Polynomial) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity(ring: &Ring) -> Self {
        Mat2::scalar(&ring.one())
    }

    pub fn zero(ring: &Ring) -> Self {
        Mat2::scalar(&ring.zero())
    }

    pub fn scalar(s: &Polynomial) -> Self {
        let z = Polynomial::zero(s.ring());
        Mat2::new(s.clone(), z.clone(), z, s.clone())
    }

    /// The matrix `[[a_i, b_i], [c_i, d_i]]` read from the ring's table by role
    /// and slot. A missing entry (a deleted `b_σ`) reads as zero.
    pub fn generic(ring: &Ring, slot: usize) -> Self {
        let get = |role: Role| {
            ring.vars
                .find(role, slot)
                .map(|id| Polynomial::var(ring, id))
                .unwrap_or_else(|| ring.zero())
        };
        Mat2::new(get(Role::A), get(Role::B), get(Role::C), get(Role::D))
    }

    pub fn ring(&self) -> &Ring {
        self.a.ring()
    }

    pub fn entries(&self) -> [&Polynomial; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn add(&self, o: &Mat2) -> Mat2 {
        Mat2::new(&self.a + &o.a, &self.b + &o.b, &self.c + &o.c, &self.d + &o.d)
    }

    pub fn sub(&self, o: &Mat2) -> Mat2 {
        Mat2::new(&self.a - &o.a, &self.b - &o.b, &self.c - &o.c, &self.d - &o.d)
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2::new(
            &(&self.a * &o.a) + &(&self.b * &o.c),
            &(&self.a * &o.b) + &(&self.b * &o.d),
            &(&self.c * &o.a) + &(&self.d * &o.c),
            &(&self.c * &o.b) + &(&self.d * &o.d),
        )
    }

    pub fn scale(&self, s: &Polynomial) -> Mat2 {
        Mat2::new(&self.a * s, &self.b * s, &self.c * s, &self.d * s)
    }

    /// `self + s·Id`.
    pub fn shift(&self, s: &Polynomial) -> Mat2 {
        Mat2::new(&self.a + s, self.b.clone(), self.c.clone(), &self.d + s)
    }

    pub fn trace(&self) -> Polynomial {
        &self.a + &self.d
    }

    pub fn det(&self) -> Polynomial {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn is_zero(&self) -> bool {
        self.entries().iter().all(|p| p.is_zero())
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Mat2 {
        Mat2::new(f(&self.a), f(&self.b), f(&self.c), f(&self.d))
    }

    pub fn to_ring(&self, ring: &Ring) -> Result<Mat2, PolyError> {
        Ok(Mat2::new(
            self.a.to_ring(ring)?,
            self.b.to_ring(ring)?,
            self.c.to_ring(ring)?,
            self.d.to_ring(ring)?,
        ))
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{a: {}, b: {}, c: {}, d: {}}}", self.a, self.b, self.c, self.d)
    }
}

/// A noncommutative monomial in the generators `X1, X2, …`. A shifted letter
/// stands for `X_i + s_i` with the scalar supplied at evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    pub letters: Vec<usize>,
    pub shifted: Vec<bool>,
}

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        let n = letters.len();
        Word {
            letters,
            shifted: vec![false; n],
        }
    }

    pub fn with_shifts(letters: Vec<usize>, shifted: Vec<bool>) -> Self {
        assert_eq!(letters.len(), shifted.len());
        Word { letters, shifted }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// All words of length `1..=maxlen` over generators `1..=r`.
    pub fn all_up_to(r: usize, maxlen: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut layer: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..maxlen {
            let mut next = Vec::new();
            for w in &layer {
                for g in 1..=r {
                    let mut v = w.clone();
                    v.push(g);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned().map(Word::new));
            layer = next;
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .zip(&self.shifted)
            .map(|(l, s)| if *s { format!("X{l}+") } else { format!("X{l}") })
            .collect();
        f.write_str(&parts.join("."))
    }
}

impl FromStr for Word {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, PolyError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word::new(vec![]));
        }
        let mut letters = Vec::new();
        let mut shifted = Vec::new();
        for part in s.split('.') {
            let (body, sh) = match part.strip_suffix('+') {
                Some(b) => (b, true),
                None => (part, false),
            };
            let idx = body
                .strip_prefix('X')
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&n| n >= 1)
                .ok_or_else(|| PolyError::Parse(format!("bad letter '{part}'")))?;
            letters.push(idx);
            shifted.push(sh);
        }
        Ok(Word::with_shifts(letters, shifted))
    }
}

/// Left-to-right product of the assigned matrices; shifted letters add their
/// scalar. The empty word evaluates to the identity of `ring`.
pub fn word_eval(
    w: &Word,
    ring: &Ring,
    assign: &HashMap<usize, Mat2>,
    shifts: &HashMap<usize, Polynomial>,
) -> Result<Mat2, PolyError> {
    let mut acc = Mat2::identity(ring);
    for (l, sh) in w.letters.iter().zip(&w.shifted) {
        let m = assign
            .get(l)
            .ok_or_else(|| PolyError::Structural(format!("letter X{l} unassigned")))?;
        let m = if *sh {
            let s = shifts
                .get(l)
                .ok_or_else(|| PolyError::Structural(format!("no shift for X{l}")))?;
            m.shift(s)
        } else {
            m.clone()
        };
        acc = acc.mul(&m);
    }
    Ok(acc)
}

#[derive(Clone, Debug)]
pub struct Invariants {
    pub trace: Polynomial,
    pub det: Polynomial,
    /// `x² − trace·x + det` in the table extended by a fresh `x`.
    pub charpoly: Polynomial,
}

pub fn invariants_of(m: &Mat2) -> Invariants {
    let ring = m.ring();
    let mut table: VariableTable = (*ring.vars).clone();
    let x = table.fresh_name("x");
    table.push(&x, Role::Param, None).expect("fresh name");
    let ext = ring.extended(table);
    let trace = m.trace();
    let det = m.det();
    let xv = ext.var(&x);
    let t = trace.to_ring(&ext).expect("prefix table");
    let d = det.to_ring(&ext).expect("prefix table");
    let charpoly = &(&(&xv * &xv) - &(&t * &xv)) + &d;
    Invariants { trace, det, charpoly }
}

/// `V(w) = ∏ (−ν_letter)`. The empty word has no value.
pub fn v_map(w: &Word, ring: &Ring, nu: &HashMap<usize, Polynomial>) -> Result<Polynomial, PolyError> {
    if w.is_empty() {
        return Err(PolyError::Structural(
            "V is only defined on words of positive length".into(),
        ));
    }
    let mut acc = ring.one();
    for l in &w.letters {
        let n = nu
            .get(l)
            .ok_or_else(|| PolyError::Structural(format!("no ν for X{l}")))?;
        acc = &acc * &(-n);
    }
    Ok(acc)
}

/// Ring for the congruence checks: `chi_i, psi_i` for each generator, then the
/// generic entries `a_i, b_i, c_i, d_i`, then any extra parameters. The `chi`
/// block is eliminated first.
pub struct CongruenceModel {
    pub ring: Ring,
    pub r: usize,
}

impl CongruenceModel {
    pub fn new(r: usize, extra: &[&str]) -> Self {
        let mut t = VariableTable::new();
        for i in 1..=r {
            t.push(&format!("chi{i}"), Role::Param, Some(i)).unwrap();
        }
        for i in 1..=r {
            t.push(&format!("psi{i}"), Role::Param, Some(i)).unwrap();
        }
        for i in 1..=r {
            t.push(&format!("a{i}"), Role::A, Some(i)).unwrap();
            t.push(&format!("b{i}"), Role::B, Some(i)).unwrap();
            t.push(&format!("c{i}"), Role::C, Some(i)).unwrap();
            t.push(&format!("d{i}"), Role::D, Some(i)).unwrap();
        }
        for e in extra {
            t.push(e, Role::Param, None).unwrap();
        }
        let n = t.len();
        let order = MonomialOrder::WeightedBlock(BlockSpec::new(vec![(0..r).collect()], n));
        CongruenceModel {
            ring: PolyRing::new(CoefficientRing::Rationals, t, order),
            r,
        }
    }

    pub fn chi(&self, i: usize) -> Polynomial {
        self.ring.var(&format!("chi{i}"))
    }

    pub fn psi(&self, i: usize) -> Polynomial {
        self.ring.var(&format!("psi{i}"))
    }

    pub fn nu(&self, i: usize) -> Polynomial {
        &self.psi(i) - &self.chi(i)
    }

    /// Generic `ρ_i`.
    pub fn rho(&self, i: usize) -> Mat2 {
        Mat2::generic(&self.ring, i)
    }

    /// Shifted `ρ̂_i = ρ_i + ψ_i`.
    pub fn rho_hat(&self, i: usize) -> Mat2 {
        self.rho(i).shift(&self.psi(i))
    }

    fn product(&self, letters: &[usize], f: impl Fn(usize) -> Polynomial) -> Polynomial {
        letters.iter().fold(self.ring.one(), |acc, &l| &acc * &f(l))
    }

    fn hat_product(&self, letters: &[usize]) -> Mat2 {
        letters
            .iter()
            .fold(Mat2::identity(&self.ring), |acc, &l| acc.mul(&self.rho_hat(l)))
    }
}

fn check_letters(w: &Word, r: usize) -> Result<(), GroebnerError> {
    if w.is_empty() || w.letters.iter().any(|&l| l == 0 || l > r) {
        return Err(GroebnerError::Poly(PolyError::Structural(format!(
            "word {w} is not a nonempty word over {r} generators"
        ))));
    }
    Ok(())
}

/// `tr(∏(ρ̂_j − ψ_j)) − ∏(χ_j − ψ_j)` lies in the ideal generated by
/// `tr(∏_T ρ̂) − ∏_T χ − ∏_T ψ` over nonempty subsequences `T` of `w`.
pub fn trace_congruence_check(w: &Word, r: usize) -> Result<bool, GroebnerError> {
    check_letters(w, r)?;
    let model = CongruenceModel::new(r, &[]);
    let (gens, target) = trace_congruence_data(&model, w);
    let gb = buchberger(&IdealSpec::new(&model.ring, gens))?;
    gb.contains(&target)
}

/// Ideal generators and target polynomial of the trace congruence for `w`.
pub fn trace_congruence_data(model: &CongruenceModel, w: &Word) -> (Vec<Polynomial>, Polynomial) {
    let k = w.len();
    let mut gens: Vec<Polynomial> = Vec::new();
    for mask in 1u32..(1 << k) {
        let sub: Vec<usize> = (0..k)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| w.letters[i])
            .collect();
        let g = &(&model.hat_product(&sub).trace() - &model.product(&sub, |l| model.chi(l)))
            - &model.product(&sub, |l| model.psi(l));
        if !gens.contains(&g) {
            gens.push(g);
        }
    }
    let plain = w
        .letters
        .iter()
        .fold(Mat2::identity(&model.ring), |acc, &l| acc.mul(&model.rho(l)));
    let target = &plain.trace()
        - &model.product(&w.letters, |l| &model.chi(l) - &model.psi(l));
    (gens, target)
}

/// `det(Σ c_i (ρ̂_i − ψ_i))` lies in the ideal of characteristic-polynomial
/// defects `tr(m) − χ(m) − ψ(m)`, `det(m) − χ(m)ψ(m)` over words `m` of
/// length `≤ cap` in the generators used. `terms` lists generator indices;
/// each gets a fresh scalar `c_i`.
pub fn det_congruence_check(terms: &[usize], r: usize, cap: usize) -> Result<bool, GroebnerError> {
    if terms.is_empty() {
        return Ok(true);
    }
    if terms.iter().any(|&l| l == 0 || l > r) {
        return Err(GroebnerError::Poly(PolyError::Structural(
            "generator index out of range".into(),
        )));
    }
    let names: Vec<String> = (1..=terms.len()).map(|i| format!("coef{i}")).collect();
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let model = CongruenceModel::new(r, &name_refs);
    let mut elem = Mat2::zero(&model.ring);
    for (i, &g) in terms.iter().enumerate() {
        let c = model.ring.var(&names[i]);
        elem = elem.add(&model.rho_hat(g).shift(&-&model.psi(g)).scale(&c));
    }
    let mut used: Vec<usize> = terms.to_vec();
    used.sort();
    used.dedup();
    let mut gens = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..cap.max(1) {
        let mut next = Vec::new();
        for w in &layer {
            for &g in &used {
                let mut v = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        for w in &next {
            let m = model.hat_product(w);
            let chi = model.product(w, |l| model.chi(l));
            let psi = model.product(w, |l| model.psi(l));
            gens.push(&(&m.trace() - &chi) - &psi);
            gens.push(&m.det() - &(&chi * &psi));
        }
        layer = next;
    }
    let gb = buchberger(&IdealSpec::new(&model.ring, gens))?;
    gb.contains(&elem.det())
}
