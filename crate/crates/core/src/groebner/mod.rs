//! Gröbner bases, normal forms, ideal quotients and syzygies.

mod engine;
mod matrix;

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

pub use matrix::FreeModuleMatrix;

use crate::exactpoly::{
    CoefficientRing, Monomial, MonomialOrder, PolyError, PolyRing, Polynomial, Ring, Role,
    VariableTable,
};
use engine::{Engine, MTerm, MVec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroebnerError {
    #[error("timeout: {0}")]
    Timeout(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub const DEFAULT_MAX_STEPS: u64 = 1_000_000;
pub const DEFAULT_MAX_DEGREE: u32 = 40;

/// Resource limits for one Gröbner computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerConfig {
    pub max_steps: u64,
    pub max_degree: u32,
    /// Re-reduce every S-pair of the final basis.
    pub verify: bool,
}

static ENV_STEPS: OnceLock<Option<u64>> = OnceLock::new();
static CONFIGURED_STEPS: AtomicU64 = AtomicU64::new(0);

/// Process-wide step budget used when `VERIFY_BUDGET_STEPS` is unset.
/// Zero restores [`DEFAULT_MAX_STEPS`].
pub fn set_default_step_budget(steps: u64) {
    CONFIGURED_STEPS.store(steps, Ordering::Relaxed);
}

/// The budget [`GroebnerConfig::default`] uses: environment, then the
/// configured value, then [`DEFAULT_MAX_STEPS`].
pub fn default_step_budget() -> u64 {
    env_step_budget().unwrap_or_else(|| match CONFIGURED_STEPS.load(Ordering::Relaxed) {
        0 => DEFAULT_MAX_STEPS,
        n => n,
    })
}

/// Step budget from `VERIFY_BUDGET_STEPS`, if set to a valid integer.
pub fn env_step_budget() -> Option<u64> {
    *ENV_STEPS.get_or_init(|| {
        std::env::var("VERIFY_BUDGET_STEPS")
            .ok()
            .and_then(|s| s.trim().parse().ok())
    })
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig {
            max_steps: default_step_budget(),
            max_degree: DEFAULT_MAX_DEGREE,
            verify: true,
        }
    }
}

/// Generators of an ideal together with the order used to compute with it.
#[derive(Clone, Debug)]
pub struct IdealSpec {
    pub ring: Ring,
    pub generators: Vec<Polynomial>,
    pub order: MonomialOrder,
}

impl IdealSpec {
    /// Zero generators are dropped; the order defaults to the ring's.
    pub fn new(ring: &Ring, generators: Vec<Polynomial>) -> Self {
        IdealSpec {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            order: ring.order.clone(),
        }
    }

    pub fn with_order(mut self, order: MonomialOrder) -> Self {
        self.order = order;
        self
    }

    pub fn unit(ring: &Ring) -> Self {
        IdealSpec::new(ring, vec![ring.one()])
    }

    /// Ring used for computation: field coefficients (ℤ lifted to ℚ) and the
    /// spec's order.
    pub fn work_ring(&self) -> Ring {
        let coeffs = match self.ring.coeffs {
            CoefficientRing::Integers => CoefficientRing::Rationals,
            k => k,
        };
        PolyRing::with_table(coeffs, self.ring.vars.clone(), self.order.clone())
    }
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    basis: Vec<Polynomial>,
    ring: Ring,
    source: IdealSpec,
    config: GroebnerConfig,
}

fn to_mvec(p: &Polynomial) -> MVec {
    p.terms()
        .iter()
        .map(|(m, c)| MTerm {
            pos: 0,
            mon: m.clone(),
            c: c.clone(),
        })
        .collect()
}

fn from_mvec(ring: &Ring, v: MVec) -> Polynomial {
    Polynomial::from_terms(ring, v.into_iter().map(|t| (t.mon, t.c)).collect())
}

impl GroebnerBasis {
    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.ring.order
    }

    pub fn source(&self) -> &IdealSpec {
        &self.source
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    /// Remainder of `f` modulo the basis, returned in the basis' ring.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial, GroebnerError> {
        let f = f.to_ring(&self.ring)?;
        let mut eng = Engine::new(self.ring.coeffs, &self.ring.order, false, self.config);
        let gs: Vec<MVec> = self.basis.iter().map(to_mvec).collect();
        let refs: Vec<&MVec> = gs.iter().collect();
        let r = eng.reduce(to_mvec(&f), &refs)?;
        Ok(from_mvec(&self.ring, r))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, GroebnerError> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_all(&self, fs: &[Polynomial]) -> Result<bool, GroebnerError> {
        for f in fs {
            if !self.contains(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn buchberger(spec: &IdealSpec) -> Result<GroebnerBasis, GroebnerError> {
    buchberger_with(spec, GroebnerConfig::default())
}

pub fn buchberger_with(spec: &IdealSpec, config: GroebnerConfig) -> Result<GroebnerBasis, GroebnerError> {
    let ring = spec.work_ring();
    let gens: Vec<Polynomial> = spec
        .generators
        .iter()
        .map(|g| g.to_ring(&ring))
        .collect::<Result<_, _>>()?;
    let mut eng = Engine::new(ring.coeffs, &ring.order, false, config);
    let basis = eng.groebner(gens.iter().map(to_mvec).collect())?;
    let basis: Vec<Polynomial> = basis.into_iter().map(|v| from_mvec(&ring, v)).collect();
    let gb = GroebnerBasis {
        basis,
        ring: ring.clone(),
        source: spec.clone(),
        config,
    };
    // every input generator must reduce to zero
    for g in &gens {
        if !gb.contains(g)? {
            return Err(GroebnerError::Internal(format!(
                "generator {g} not in computed basis"
            )));
        }
    }
    Ok(gb)
}

pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial, GroebnerError> {
    gb.normal_form(f)
}

/// `f ∈ I` via a fresh Gröbner basis of `spec`.
pub fn ideal_member(spec: &IdealSpec, f: &Polynomial) -> Result<bool, GroebnerError> {
    buchberger(spec)?.contains(f)
}

/// Two-way containment of generator sets.
pub fn ideals_equal(a: &IdealSpec, b: &IdealSpec) -> Result<bool, GroebnerError> {
    let ga = buchberger(a)?;
    if !ga.contains_all(&b.generators)? {
        return Ok(false);
    }
    let gb = buchberger(b)?;
    gb.contains_all(&a.generators)
}

/// Generators of `(I : f)`. Intersects `I` with `(f)` by eliminating a tag
/// variable `t` from `t·I + (1−t)·f`, then divides by `f`.
pub fn ideal_quotient(spec: &IdealSpec, f: &Polynomial) -> Result<IdealSpec, GroebnerError> {
    let base = spec.work_ring();
    if f.is_zero() {
        return Ok(IdealSpec::unit(&spec.ring).with_order(spec.order.clone()));
    }
    if spec.generators.is_empty() {
        return Ok(IdealSpec::new(&spec.ring, vec![]).with_order(spec.order.clone()));
    }
    let mut table: VariableTable = (*base.vars).clone();
    let tname = table.fresh_name("tag");
    let t = table.push(&tname, Role::Param, None)?;
    let n = table.len();
    let elim = PolyRing::new(base.coeffs, table, MonomialOrder::eliminating(vec![t], n));
    let tv = Polynomial::var(&elim, t);
    let one_minus_t = &elim.one() - &tv;
    let mut gens = Vec::new();
    for g in &spec.generators {
        gens.push(&tv * &g.to_ring(&elim)?);
    }
    let fe = f.to_ring(&elim)?;
    gens.push(&one_minus_t * &fe);
    let gb = buchberger(&IdealSpec::new(&elim, gens))?;
    let mut out = Vec::new();
    for g in gb.basis() {
        if g.degree_in(t) == 0 {
            let q = g.div_exact(&fe).ok_or_else(|| {
                GroebnerError::Internal("intersection element not divisible by f".into())
            })?;
            out.push(q.to_ring(&base)?);
        }
    }
    Ok(IdealSpec::new(&base, out).with_order(spec.order.clone()))
}

/// Module Gröbner basis of the submodule of `R^rank` spanned by `vectors`,
/// position-over-term.
pub(crate) fn module_gb(
    ring: &Ring,
    rank: usize,
    vectors: &[Vec<Polynomial>],
    config: GroebnerConfig,
) -> Result<Vec<MVec>, GroebnerError> {
    let mut eng = Engine::new(ring.coeffs, &ring.order, rank > 1, config);
    let mut gens = Vec::new();
    for v in vectors {
        assert_eq!(v.len(), rank);
        let mut mv: MVec = Vec::new();
        for (pos, p) in v.iter().enumerate() {
            for (m, c) in p.terms() {
                mv.push(MTerm {
                    pos: pos as u32,
                    mon: m.clone(),
                    c: c.clone(),
                });
            }
        }
        eng.sort(&mut mv);
        gens.push(mv);
    }
    eng.groebner(gens)
}

fn field_ring(ring: &Ring) -> Ring {
    match ring.coeffs {
        CoefficientRing::Integers => ring.with_coeffs(CoefficientRing::Rationals),
        _ => ring.clone(),
    }
}

fn mvec_to_vector(ring: &Ring, v: &MVec, offset: usize, len: usize) -> Vec<Polynomial> {
    let mut comps: Vec<Vec<(Monomial, crate::exactpoly::Coeff)>> = vec![Vec::new(); len];
    for t in v {
        let p = t.pos as usize;
        if p >= offset && p < offset + len {
            comps[p - offset].push((t.mon.clone(), t.c.clone()));
        }
    }
    comps
        .into_iter()
        .map(|terms| Polynomial::from_terms(ring, terms))
        .collect()
}

/// Generators of the kernel `{v : M v = 0}` as column vectors.
pub fn syzygies(m: &FreeModuleMatrix) -> Result<Vec<Vec<Polynomial>>, GroebnerError> {
    syzygies_with(m, GroebnerConfig::default())
}

pub fn syzygies_with(
    m: &FreeModuleMatrix,
    config: GroebnerConfig,
) -> Result<Vec<Vec<Polynomial>>, GroebnerError> {
    let ring = field_ring(m.ring());
    let (rows, cols) = (m.rows(), m.cols());
    // column j of M stacked over the unit vector e_j
    let mut vectors = Vec::with_capacity(cols);
    for j in 0..cols {
        let mut v = Vec::with_capacity(rows + cols);
        for i in 0..rows {
            v.push(m.get(i, j).to_ring(&ring)?);
        }
        for l in 0..cols {
            v.push(if l == j { ring.one() } else { ring.zero() });
        }
        vectors.push(v);
    }
    let gb = module_gb(&ring, rows + cols, &vectors, config)?;
    let mut out = Vec::new();
    for g in &gb {
        if g[0].pos as usize >= rows {
            let v = mvec_to_vector(&ring, g, rows, cols);
            out.push(v);
        }
    }
    // soundness: M v = 0 exactly
    let mf = m.to_ring(&ring)?;
    for v in &out {
        if mf.apply(v).iter().any(|p| !p.is_zero()) {
            return Err(GroebnerError::Internal("syzygy fails M v = 0".into()));
        }
    }
    Ok(out)
}

/// Submodule of `R^rank` with a Gröbner basis, for membership tests.
pub struct ModuleBasis {
    ring: Ring,
    rank: usize,
    basis: Vec<MVec>,
    config: GroebnerConfig,
}

impl ModuleBasis {
    pub fn new(ring: &Ring, rank: usize, vectors: &[Vec<Polynomial>]) -> Result<Self, GroebnerError> {
        let ring = field_ring(ring);
        let vs: Vec<Vec<Polynomial>> = vectors
            .iter()
            .map(|v| v.iter().map(|p| p.to_ring(&ring)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<_, _>>()?;
        let config = GroebnerConfig::default();
        let basis = module_gb(&ring, rank, &vs, config)?;
        Ok(ModuleBasis {
            ring,
            rank,
            basis,
            config,
        })
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &[Polynomial]) -> Result<bool, GroebnerError> {
        assert_eq!(v.len(), self.rank);
        let mut eng = Engine::new(self.ring.coeffs, &self.ring.order, self.rank > 1, self.config);
        let mut mv: MVec = Vec::new();
        for (pos, p) in v.iter().enumerate() {
            let p = p.to_ring(&self.ring)?;
            for (m, c) in p.terms() {
                mv.push(MTerm {
                    pos: pos as u32,
                    mon: m.clone(),
                    c: c.clone(),
                });
            }
        }
        eng.sort(&mut mv);
        let refs: Vec<&MVec> = self.basis.iter().collect();
        Ok(eng.reduce(mv, &refs)?.is_empty())
    }
}

#[cfg(test)]
mod tests;
