use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{Coeff, CoefficientRing, Monomial, MonomialOrder, PolyError, VariableTable};

/// Coefficient ring, variable table and monomial order shared by a family of
/// polynomials.
#[derive(Debug, PartialEq, Eq)]
pub struct PolyRing {
    pub coeffs: CoefficientRing,
    pub vars: Arc<VariableTable>,
    pub order: MonomialOrder,
}

pub type Ring = Arc<PolyRing>;

impl PolyRing {
    pub fn new(coeffs: CoefficientRing, vars: VariableTable, order: MonomialOrder) -> Ring {
        Arc::new(PolyRing {
            coeffs,
            vars: Arc::new(vars),
            order,
        })
    }

    pub fn with_table(coeffs: CoefficientRing, vars: Arc<VariableTable>, order: MonomialOrder) -> Ring {
        Arc::new(PolyRing { coeffs, vars, order })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn with_order(self: &Arc<Self>, order: MonomialOrder) -> Ring {
        Arc::new(PolyRing {
            coeffs: self.coeffs,
            vars: self.vars.clone(),
            order,
        })
    }

    pub fn with_coeffs(self: &Arc<Self>, coeffs: CoefficientRing) -> Ring {
        Arc::new(PolyRing {
            coeffs,
            vars: self.vars.clone(),
            order: self.order.clone(),
        })
    }

    /// Same ring over a table with extra variables appended.
    pub fn extended(self: &Arc<Self>, vars: VariableTable) -> Ring {
        debug_assert!(self.vars.is_prefix_of(&vars));
        let order = self.order.extended_to(vars.len());
        Arc::new(PolyRing {
            coeffs: self.coeffs,
            vars: Arc::new(vars),
            order,
        })
    }

    pub fn same(a: &Ring, b: &Ring) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }

    pub fn zero(self: &Arc<Self>) -> Polynomial {
        Polynomial::zero(self)
    }

    pub fn one(self: &Arc<Self>) -> Polynomial {
        Polynomial::constant(self, self.coeffs.one())
    }

    pub fn int(self: &Arc<Self>, v: i64) -> Polynomial {
        Polynomial::constant(self, self.coeffs.from_i64(v))
    }

    pub fn var(self: &Arc<Self>, name: &str) -> Polynomial {
        let id = self
            .vars
            .id(name)
            .unwrap_or_else(|| panic!("unknown variable '{name}'"));
        Polynomial::var(self, id)
    }

    pub fn try_var(self: &Arc<Self>, name: &str) -> Option<Polynomial> {
        self.vars.id(name).map(|id| Polynomial::var(self, id))
    }

    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Polynomial, PolyError> {
        super::text::parse(self, text)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weight {
    Isobaric(i64),
    NotIsobaric,
}

/// Sparse polynomial; terms are kept sorted descending in the ring's order
/// with nonzero coefficients, so equal polynomials have equal term lists.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, Coeff)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        PolyRing::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}
impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring, c: Coeff) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn var(ring: &Ring, id: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), id, 1), ring.coeffs.one())
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Coeff) -> Self {
        let mut terms = Vec::new();
        if !ring.coeffs.is_zero(&c) {
            terms.push((m, c));
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(ring: &Ring, terms: Vec<(Monomial, Coeff)>) -> Self {
        let mut p = Polynomial {
            ring: ring.clone(),
            terms,
        };
        p.normalize();
        p
    }

    /// Trusted constructor: terms already sorted, distinct and nonzero.
    pub(crate) fn from_sorted(ring: &Ring, terms: Vec<(Monomial, Coeff)>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    fn normalize(&mut self) {
        let order = &self.ring.order;
        self.terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let k = &self.ring.coeffs;
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms.drain(..) {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = k.add(&last.1, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !k.is_zero(c));
        self.terms = out;
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Coeff)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lc(&self) -> Option<&Coeff> {
        self.terms.first().map(|t| &t.1)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(var)).max().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<usize> {
        let mut s = BTreeSet::new();
        for (m, _) in &self.terms {
            for (v, _) in m.support() {
                s.insert(v);
            }
        }
        s
    }

    /// Coefficient of the given monomial.
    pub fn coeff_of(&self, m: &Monomial) -> Coeff {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.coeffs.zero())
    }

    pub fn constant_term(&self) -> Coeff {
        self.coeff_of(&Monomial::one(self.ring.nvars()))
    }

    fn check_same(&self, other: &Polynomial) -> Result<(), PolyError> {
        if PolyRing::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(PolyError::Structural(
                "polynomials live in different rings".into(),
            ))
        }
    }

    pub fn arith(&self, other: &Polynomial, op: ArithOp) -> Result<Polynomial, PolyError> {
        self.check_same(other)?;
        Ok(match op {
            ArithOp::Add => self.add_impl(other, false),
            ArithOp::Sub => self.add_impl(other, true),
            ArithOp::Mul => self.mul_impl(other),
        })
    }

    fn add_impl(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let k = &self.ring.coeffs;
        let order = &self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match order.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { k.neg(cb) } else { cb.clone() };
                    out.push((mb.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { k.sub(ca, cb) } else { k.add(ca, cb) };
                    if !k.is_zero(&c) {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        for (m, c) in &other.terms[j..] {
            let c = if negate { k.neg(c) } else { c.clone() };
            out.push((m.clone(), c));
        }
        Polynomial::from_sorted(&self.ring, out)
    }

    fn mul_impl(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let k = &self.ring.coeffs;
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: HashMap<Monomial, Coeff> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = k.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(e) => *e = k.add(e, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, Coeff)> =
            acc.into_iter().filter(|(_, c)| !k.is_zero(c)).collect();
        let order = &self.ring.order;
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial::from_sorted(&self.ring, terms)
    }

    /// Multiplies by `c * m`; the order is preserved so no re-sort is needed.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        let k = &self.ring.coeffs;
        if k.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .filter_map(|(t, d)| {
                let e = k.mul(d, c);
                (!k.is_zero(&e)).then(|| (t.mul(m), e))
            })
            .collect();
        Polynomial::from_sorted(&self.ring, terms)
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        self.mul_term(&Monomial::one(self.ring.nvars()), c)
    }

    pub fn scale_int(&self, v: i64) -> Polynomial {
        self.scale(&self.ring.coeffs.from_i64(v))
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides by the leading coefficient (fields only).
    pub fn monic(&self) -> Polynomial {
        match self.lc() {
            None => self.clone(),
            Some(c) => {
                let inv = self.ring.coeffs.inv(c);
                self.scale(&inv)
            }
        }
    }

    /// Sign normalisation: negates when the leading coefficient is negative.
    pub fn sign_normalized(&self) -> Polynomial {
        match self.lc() {
            Some(c) if self.ring.coeffs.is_negative(c) => -self,
            _ => self.clone(),
        }
    }

    /// Re-expresses the polynomial in another ring whose table contains all of
    /// this polynomial's variables (matched by name). Coefficients are converted
    /// (ℤ→ℚ lift, ℚ→𝔽_p reduction) and terms re-sorted in the target order.
    pub fn to_ring(&self, target: &Ring) -> Result<Polynomial, PolyError> {
        if PolyRing::same(&self.ring, target) {
            return Ok(self.clone());
        }
        let src = &self.ring.vars;
        let dst = &target.vars;
        let map: Vec<Option<usize>> = if Arc::ptr_eq(src, dst) || src.is_prefix_of(dst) {
            (0..src.len()).map(Some).collect()
        } else {
            (0..src.len()).map(|i| dst.id(src.name(i))).collect()
        };
        let n = target.nvars();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0u16; n];
            for (v, x) in m.support() {
                let t = map[v].ok_or_else(|| {
                    PolyError::Structural(format!(
                        "variable '{}' missing from target table",
                        src.name(v)
                    ))
                })?;
                e[t] = x;
            }
            terms.push((Monomial::from_exps(e), target.coeffs.convert(c)?));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Simultaneous substitution `var ↦ image`. Images must live in `target`,
    /// whose table must contain every unmapped variable of `self`.
    pub fn substitute(
        &self,
        map: &HashMap<usize, Polynomial>,
        target: &Ring,
    ) -> Result<Polynomial, PolyError> {
        for img in map.values() {
            if !PolyRing::same(img.ring(), target) {
                return Err(PolyError::Structural(
                    "substitution image lives in a different ring".into(),
                ));
            }
        }
        let src = &self.ring.vars;
        let mut fixed: HashMap<usize, Polynomial> = HashMap::new();
        for v in self.variables() {
            if !map.contains_key(&v) {
                let id = target.vars.id(src.name(v)).ok_or_else(|| {
                    PolyError::Structural(format!(
                        "variable '{}' missing from target table",
                        src.name(v)
                    ))
                })?;
                fixed.insert(v, Polynomial::var(target, id));
            }
        }
        // cache powers of each image
        let mut powers: HashMap<(usize, u16), Polynomial> = HashMap::new();
        let mut acc = Polynomial::zero(target);
        let k = &target.coeffs;
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, k.convert(c)?);
            for (v, e) in m.support() {
                let p = match powers.get(&(v, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let base = map.get(&v).or_else(|| fixed.get(&v)).expect("covered");
                        let p = base.pow(e as u32);
                        powers.insert((v, e), p.clone());
                        p
                    }
                };
                t = &t * &p;
                if t.is_zero() {
                    break;
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Substitution by variable names, staying in the same ring.
    pub fn subs(&self, pairs: &[(&str, Polynomial)]) -> Polynomial {
        let map: HashMap<usize, Polynomial> = pairs
            .iter()
            .map(|(n, p)| {
                let id = self
                    .ring
                    .vars
                    .id(n)
                    .unwrap_or_else(|| panic!("unknown variable '{n}'"));
                (id, p.clone())
            })
            .collect();
        self.substitute(&map, &self.ring.clone())
            .expect("same-ring substitution")
    }

    /// Evaluates at a point given per variable id. Requires a field.
    pub fn evaluate(&self, point: &HashMap<usize, Coeff>) -> Result<Coeff, PolyError> {
        let k = &self.ring.coeffs;
        if !k.is_field() {
            return Err(PolyError::Structural("evaluation needs a field".into()));
        }
        let mut acc = k.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.support() {
                let x = point.get(&v).ok_or_else(|| {
                    PolyError::Structural(format!(
                        "no value for variable '{}'",
                        self.ring.vars.name(v)
                    ))
                })?;
                t = k.mul(&t, &k.pow(x, e as u32));
            }
            acc = k.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Evaluates with a dense point vector indexed by variable id.
    pub fn evaluate_dense(&self, point: &[Coeff]) -> Coeff {
        let k = &self.ring.coeffs;
        let mut acc = k.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.support() {
                t = k.mul(&t, &k.pow(&point[v], e as u32));
            }
            acc = k.add(&acc, &t);
        }
        acc
    }

    /// Torus weight from the table's weights. The zero polynomial has weight 0.
    pub fn torus_weight(&self) -> Weight {
        let vars = &self.ring.vars;
        let mut w: Option<i64> = None;
        for (m, _) in &self.terms {
            let tw: i64 = m
                .support()
                .map(|(v, e)| vars.info(v).weight as i64 * e as i64)
                .sum();
            match w {
                None => w = Some(tw),
                Some(x) if x != tw => return Weight::NotIsobaric,
                _ => {}
            }
        }
        Weight::Isobaric(w.unwrap_or(0))
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        let k = &self.ring.coeffs;
        let (lm, lc) = d.terms.first()?;
        let mut rem = self.clone();
        let mut q = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            if !lm.divides(m) {
                return None;
            }
            let qm = lm.quotient_of(m);
            let qc = match (c, lc) {
                (Coeff::Q(a), Coeff::Q(b)) if !k.is_field() => {
                    let r = a / b;
                    if !r.is_integer() {
                        return None;
                    }
                    Coeff::Q(r)
                }
                _ => k.div(c, lc),
            };
            rem = &rem - &d.mul_term(&qm, &qc);
            q.push((qm, qc));
        }
        Some(Polynomial::from_sorted(&self.ring, q))
    }

    /// Coefficient of `var^e` when `self` is read as a polynomial in `var`.
    pub fn coeff_in(&self, var: usize, e: u16) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(var) == e)
            .map(|(m, c)| {
                let mut x = m.exps().to_vec();
                x[var] = 0;
                (Monomial::from_exps(x), c.clone())
            })
            .collect();
        Polynomial::from_terms(&self.ring, terms)
    }
}

impl<'a> Add for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.arith(rhs, ArithOp::Add).expect("ring mismatch")
    }
}

impl<'a> Sub for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.arith(rhs, ArithOp::Sub).expect("ring mismatch")
    }
}

impl<'a> Mul for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.arith(rhs, ArithOp::Mul).expect("ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let k = &self.ring.coeffs;
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), k.neg(c))).collect();
        Polynomial::from_sorted(&self.ring, terms)
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::format(self))
    }
}

/// Sum of a sequence of polynomials in `ring`.
pub fn sum<'a>(ring: &Ring, it: impl IntoIterator<Item = &'a Polynomial>) -> Polynomial {
    it.into_iter().fold(ring.zero(), |acc, p| &acc + p)
}

/// Product of a sequence of polynomials in `ring`.
pub fn product<'a>(ring: &Ring, it: impl IntoIterator<Item = &'a Polynomial>) -> Polynomial {
    it.into_iter().fold(ring.one(), |acc, p| &acc * p)
}
