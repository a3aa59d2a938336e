//! Finite-field specializations: a representation of a free group on the
//! shape's generator labels, with local data at each place, from which the
//! numeric matrices `E`, `E′` and the relation coefficients are assembled.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exactpoly::{Coeff, CoefficientRing};

use super::formal::{build_ideals, delta_name, eps_name, FormalRing};
use crate::fp::{Fp, Matrix, M2};
use super::shape::{Column, GenKind, RibetShape, RowSpec};
use super::RibetError;

pub const MAX_REROLLS: u32 = 100;

/// Where a local generator lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Locality {
    Global,
    /// Place of `P`, by position.
    P(usize),
    /// Place of `Σ∖{v₀}`, by position.
    Sigma(usize),
    V0,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecializedInstance {
    pub shape: RibetShape,
    pub seed: u64,
    pub p: u64,
    /// Number of draws needed to satisfy irreducibility and spanning.
    pub attempts: u32,
    /// `ρ(g_i)` per generator, row-major.
    pub rho: Vec<M2>,
    pub chi: Vec<u64>,
    pub psi: Vec<u64>,
    pub locality: Vec<Locality>,
    /// `ξ_v(σ)` and `η_v(σ)` for local generators, 0 for global ones.
    pub xi: Vec<u64>,
    pub eta: Vec<u64>,
    /// Change of basis `M_v` for the places of `P`, then of `Σ∖{v₀}`.
    pub change_of_basis: Vec<M2>,
    /// One coefficient vector per type I row, in row order.
    pub eps: Vec<Vec<u64>>,
    /// One coefficient vector per type II row, in row order.
    pub delta: Vec<Vec<u64>>,
    /// `α_{σ_v}` per place of `P`: `ρ_{σ_v} = Σ α_i ρ_i`.
    pub alpha: Vec<Vec<u64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecializedChecks {
    pub det_e_factorization: bool,
    pub det_eprime_zero: bool,
    pub cocycle: bool,
    pub j_vanishes: bool,
}

impl SpecializedChecks {
    pub fn all(&self) -> bool {
        self.det_e_factorization && self.det_eprime_zero && self.cocycle && self.j_vanishes
    }
}

fn locality(shape: &RibetShape) -> Vec<Locality> {
    shape
        .generators
        .iter()
        .map(|g| match &g.kind {
            GenKind::Generic => Locality::Global,
            GenKind::PlaceSigma(k) => Locality::P(*k),
            GenKind::Row(k) => match &shape.rows()[*k] {
                RowSpec::III { .. } => Locality::V0,
                RowSpec::IV { place, .. } => Locality::P(shape.place_index(place).expect("validated")),
                RowSpec::V { place, .. } => {
                    Locality::Sigma(shape.sigma_place_index(place).expect("validated"))
                }
                _ => unreachable!("rows I and II have no generator"),
            },
        })
        .collect()
}

fn nonzero(rng: &mut ChaCha8Rng, f: &Fp) -> u64 {
    rng.gen_range(1..f.p)
}

fn random_gl2(rng: &mut ChaCha8Rng, f: &Fp) -> M2 {
    loop {
        let m = [
            rng.gen_range(0..f.p),
            rng.gen_range(0..f.p),
            rng.gen_range(0..f.p),
            rng.gen_range(0..f.p),
        ];
        if f.m2_det(&m) != 0 {
            return m;
        }
    }
}

/// `4 × r` matrix whose columns are the flattened `ρ_i = ρ(g_i) − ψ(g_i)`.
fn span_matrix(shifted: &[M2]) -> Matrix {
    (0..4)
        .map(|e| shifted.iter().map(|m| m[e]).collect())
        .collect()
}

impl SpecializedInstance {
    pub fn fp(&self) -> Fp {
        Fp { p: self.p }
    }

    pub fn r(&self) -> usize {
        self.rho.len()
    }

    /// `ρ_i = ρ(g_i) − ψ(g_i)`.
    pub fn shifted(&self, i: usize) -> M2 {
        let f = self.fp();
        f.m2_shift(&self.rho[i - 1], f.neg(self.psi[i - 1]))
    }

    /// `ν_i = ψ(g_i) − χ(g_i)`.
    pub fn nu(&self, i: usize) -> u64 {
        self.fp().sub(self.psi[i - 1], self.chi[i - 1])
    }

    /// `x_σ = ξ_v(σ) − ψ(σ)`.
    pub fn x(&self, i: usize) -> u64 {
        self.fp().sub(self.xi[i - 1], self.psi[i - 1])
    }

    /// `z_σ = ξ_v(σ) − χ(σ)`.
    pub fn z(&self, i: usize) -> u64 {
        self.fp().sub(self.xi[i - 1], self.chi[i - 1])
    }

    /// Numeric `E` and `E′`.
    pub fn matrices(&self) -> (Matrix, Matrix) {
        let f = self.fp();
        let shape = &self.shape;
        let n = shape.size();
        let r = shape.r();
        let mut e = vec![vec![0u64; n]; n];
        let mut ep = vec![vec![0u64; n]; n];
        let a_of = |coef: &[u64]| -> u64 {
            (1..=r).fold(0, |acc, j| f.add(acc, f.mul(coef[j - 1], self.shifted(j)[0])))
        };
        for k in 0..shape.t() {
            let g = shape.place_sigma(k);
            for j in 1..=r {
                let c = shape.column(Column::Gen(j));
                e[k][c] = self.alpha[k][j - 1];
                ep[k][c] = self.alpha[k][j - 1];
            }
            e[k][k] = self.z(g);
            ep[k][k] = f.sub(self.x(g), a_of(&self.alpha[k]));
        }
        let mut iq = 0;
        let mut iiq = 0;
        for (m, row) in shape.rows().iter().enumerate() {
            let ri = shape.t() + m;
            match row {
                RowSpec::I => {
                    for j in 1..=r {
                        let c = shape.column(Column::Gen(j));
                        e[ri][c] = self.eps[iq][j - 1];
                        ep[ri][c] = self.eps[iq][j - 1];
                    }
                    iq += 1;
                }
                RowSpec::II { i, j } => {
                    let (i, j) = (*i, *j);
                    for k in 1..=r {
                        let c = shape.column(Column::Gen(k));
                        let d = self.delta[iiq][k - 1];
                        e[ri][c] = d;
                        let mut alt = d;
                        if k == j {
                            alt = f.sub(f.sub(alt, self.shifted(i)[0]), self.nu(i));
                        }
                        if k == i {
                            alt = f.sub(alt, self.shifted(j)[3]);
                        }
                        ep[ri][c] = alt;
                    }
                    iiq += 1;
                }
                RowSpec::III { sigma } => {
                    let c = shape.column(Column::Gen(shape.index_of(sigma)));
                    e[ri][c] = 1;
                    ep[ri][c] = 1;
                }
                RowSpec::IV { place, sigma } => {
                    let g = shape.index_of(sigma);
                    let c = shape.column(Column::Gen(g));
                    e[ri][c] = 1;
                    ep[ri][c] = 1;
                    let v = shape.column(Column::Place(shape.place_index(place).expect("validated")));
                    ep[ri][v] = f.sub(self.x(g), self.shifted(g)[0]);
                }
                RowSpec::V { place, sigma } => {
                    let g = shape.index_of(sigma);
                    let c = shape.column(Column::Gen(g));
                    e[ri][c] = 1;
                    ep[ri][c] = 1;
                    let y = shape.column(Column::Y(
                        shape.sigma_place_index(place).expect("validated"),
                    ));
                    e[ri][y] = self.nu(g);
                    ep[ri][y] = f.sub(self.x(g), self.shifted(g)[0]);
                }
            }
        }
        (e, ep)
    }

    /// `(−B_v/D_v …, b_1 … b_r, −B_w/D_w …)`, which `E′` annihilates. `None`
    /// when some `D_v` vanishes.
    pub fn kernel_vector(&self) -> Option<Vec<u64>> {
        let f = self.fp();
        let mut w = Vec::new();
        let t = self.shape.t();
        let ratio = |m: &M2| -> Option<u64> {
            (m[3] != 0).then(|| f.neg(f.mul(m[1], f.inv(m[3]))))
        };
        for m in &self.change_of_basis[..t] {
            w.push(ratio(m)?);
        }
        for i in 1..=self.r() {
            w.push(self.shifted(i)[1]);
        }
        for m in &self.change_of_basis[t..] {
            w.push(ratio(m)?);
        }
        Some(w)
    }

    /// Value of every formal-ring variable under this instance, indexed by
    /// variable id of `fr`.
    pub fn point(&self, fr: &FormalRing) -> Vec<Coeff> {
        let k = fr.ring.coeffs;
        let mut vals: HashMap<String, u64> = HashMap::new();
        let r = self.r();
        for i in 1..=r {
            vals.insert(format!("nu{i}"), self.nu(i));
            let m = self.shifted(i);
            for (e, name) in ["a", "b", "c", "d"].iter().enumerate() {
                vals.insert(format!("{name}{i}"), m[e]);
            }
        }
        for i in self.shape.x_generators() {
            let label = &self.shape.generators[i - 1].label;
            vals.insert(format!("x_{label}"), self.x(i));
        }
        let (mut iq, mut iiq) = (0, 0);
        for (m, row) in self.shape.rows().iter().enumerate() {
            match row {
                RowSpec::I => {
                    let q = self.shape.type_i_ordinal(m);
                    for j in 1..=r {
                        vals.insert(eps_name(q, j), self.eps[iq][j - 1]);
                    }
                    iq += 1;
                }
                RowSpec::II { i, j } => {
                    for l in 1..=r {
                        vals.insert(delta_name(*i, *j, l), self.delta[iiq][l - 1]);
                    }
                    iiq += 1;
                }
                _ => {}
            }
        }
        fr.ring
            .vars
            .vars()
            .iter()
            .map(|v| k.from_i64(*vals.get(&v.name).expect("every variable assigned") as i64))
            .collect()
    }

    /// A copy with one relation coefficient changed: the first `α` entry when
    /// the shape has places in `P`, otherwise the first `δ` entry.
    pub fn perturbed(&self) -> SpecializedInstance {
        let f = self.fp();
        let mut out = self.clone();
        if let Some(a) = out.alpha.first_mut() {
            a[0] = f.add(a[0], 1);
        } else if let Some(d) = out.delta.first_mut() {
            d[0] = f.add(d[0], 1);
        } else if let Some(e) = out.eps.first_mut() {
            e[0] = f.add(e[0], 1);
        }
        out
    }
}

/// Draws a consistent instance for `shape` over `𝔽_p`, rerolling up to
/// [`MAX_REROLLS`] times until the generators act irreducibly and the `ρ_i`
/// span `M₂(𝔽_p)`.
pub fn generate_specialization(shape: &RibetShape, seed: u64, p: u64) -> Result<SpecializedInstance, RibetError> {
    generate_specialization_with(shape, seed, p, MAX_REROLLS)
}

/// As [`generate_specialization`] with an explicit reroll budget.
pub fn generate_specialization_with(
    shape: &RibetShape,
    seed: u64,
    p: u64,
    max_rerolls: u32,
) -> Result<SpecializedInstance, RibetError> {
    let f = Fp::new(p)?;
    let generic = shape
        .generators
        .iter()
        .filter(|g| g.kind == GenKind::Generic)
        .count();
    if generic < 4 {
        return Err(RibetError::Shape(format!(
            "specialization needs at least 4 generators not tied to a place, found {generic}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let loc = locality(shape);
    let r = shape.r();
    let nplaces = shape.t() + shape.s();
    for attempt in 1..=max_rerolls {
        let change_of_basis: Vec<M2> = (0..nplaces).map(|_| random_gl2(&mut rng, &f)).collect();
        if change_of_basis.iter().any(|m| m[3] == 0) {
            continue;
        }
        let mut rho = Vec::with_capacity(r);
        let mut xi = vec![0; r];
        let mut eta = vec![0; r];
        let chi: Vec<u64> = (0..r).map(|_| nonzero(&mut rng, &f)).collect();
        let psi: Vec<u64> = (0..r).map(|_| nonzero(&mut rng, &f)).collect();
        for (i, l) in loc.iter().enumerate() {
            let m = match l {
                Locality::Global => {
                    rho.push(random_gl2(&mut rng, &f));
                    continue;
                }
                Locality::P(k) => change_of_basis[*k],
                Locality::Sigma(k) => change_of_basis[shape.t() + *k],
                Locality::V0 => [1, 0, 0, 1],
            };
            xi[i] = nonzero(&mut rng, &f);
            eta[i] = nonzero(&mut rng, &f);
            let low: M2 = [eta[i], 0, rng.gen_range(0..p), xi[i]];
            let minv = f.m2_inv(&m).expect("invertible");
            rho.push(f.m2_mul(&f.m2_mul(&m, &low), &minv));
        }
        if !f.irreducible(&rho) {
            continue;
        }
        let shifted: Vec<M2> = (0..r).map(|i| f.m2_shift(&rho[i], f.neg(psi[i]))).collect();
        let span = span_matrix(&shifted);
        if f.rank(&span) != 4 {
            continue;
        }
        let kernel = f.nullspace(&span, r);
        let mut eps = Vec::new();
        let mut delta = Vec::new();
        for row in shape.rows() {
            match row {
                RowSpec::I => {
                    let mut v = vec![0; r];
                    for b in &kernel {
                        let c = rng.gen_range(0..p);
                        for (x, y) in v.iter_mut().zip(b) {
                            *x = f.add(*x, f.mul(c, *y));
                        }
                    }
                    eps.push(v);
                }
                RowSpec::II { i, j } => {
                    let nu_i = f.sub(psi[i - 1], chi[i - 1]);
                    let lhs = f.m2_mul(&f.m2_shift(&shifted[i - 1], nu_i), &shifted[j - 1]);
                    let sol = f.solve(&span, &lhs).ok_or_else(|| {
                        RibetError::Invariant("product not in the span of the generators".into())
                    })?;
                    delta.push(sol);
                }
                _ => {}
            }
        }
        let mut alpha = Vec::new();
        for k in 0..shape.t() {
            let g = shape.place_sigma(k);
            let sol = f
                .solve(&span, &shifted[g - 1])
                .ok_or_else(|| RibetError::Invariant("generator not in its own span".into()))?;
            alpha.push(sol);
        }
        return Ok(SpecializedInstance {
            shape: shape.clone(),
            seed,
            p,
            attempts: attempt,
            rho,
            chi,
            psi,
            locality: loc,
            xi,
            eta,
            change_of_basis,
            eps,
            delta,
            alpha,
        });
    }
    Err(RibetError::GenerationFailure {
        seed,
        attempts: max_rerolls,
    })
}

/// Free-group word in generator indices with its images.
struct WordImage {
    rho: M2,
    chi: u64,
    psi: u64,
}

fn word_image(inst: &SpecializedInstance, w: &[usize]) -> WordImage {
    let f = inst.fp();
    w.iter().fold(
        WordImage {
            rho: [1, 0, 0, 1],
            chi: 1,
            psi: 1,
        },
        |acc, &i| WordImage {
            rho: f.m2_mul(&acc.rho, &inst.rho[i - 1]),
            chi: f.mul(acc.chi, inst.chi[i - 1]),
            psi: f.mul(acc.psi, inst.psi[i - 1]),
        },
    )
}

/// `κ(g) = ψ(g)⁻¹(ρ(g) − ψ(g))`.
fn kappa(f: &Fp, w: &WordImage) -> M2 {
    f.m2_scale(&f.m2_shift(&w.rho, f.neg(w.psi)), f.inv(w.psi))
}

/// Cocycle defect of `κ` on sampled word pairs equals the product witness
/// `ψ(g₁g₂)⁻¹(ρ(g₁) − χ(g₁))(ρ(g₂) − ψ(g₂))`, and the witness lies in the span
/// of generator-level products `(ρ(h) − χ(h))(ρ(h′) − ψ(h′))`.
pub fn check_cocycle(inst: &SpecializedInstance, pairs: usize) -> bool {
    let f = inst.fp();
    let r = inst.r();
    let mut rng = ChaCha8Rng::seed_from_u64(inst.seed ^ 0x0063_6f63_7963_6c65);
    let mut products: Vec<M2> = Vec::new();
    for h in 1..=r {
        for h2 in 1..=r {
            let a = word_image(inst, &[h]);
            let b = word_image(inst, &[h2]);
            products.push(f.m2_mul(&f.m2_shift(&a.rho, f.neg(a.chi)), &f.m2_shift(&b.rho, f.neg(b.psi))));
        }
    }
    let base_rank = f.rank(&span_matrix(&products));
    for _ in 0..pairs {
        let draw = |rng: &mut ChaCha8Rng| -> Vec<usize> {
            let len = rng.gen_range(1..=3);
            (0..len).map(|_| rng.gen_range(1..=r)).collect()
        };
        let w1 = draw(&mut rng);
        let w2 = draw(&mut rng);
        let g1 = word_image(inst, &w1);
        let g2 = word_image(inst, &w2);
        let both: Vec<usize> = w1.iter().chain(&w2).copied().collect();
        let g12 = word_image(inst, &both);
        let twist = f.mul(g1.chi, f.inv(g1.psi));
        let defect = f.m2_sub(
            &f.m2_sub(&kappa(&f, &g12), &kappa(&f, &g1)),
            &f.m2_scale(&kappa(&f, &g2), twist),
        );
        let witness = f.m2_scale(
            &f.m2_mul(&f.m2_shift(&g1.rho, f.neg(g1.chi)), &f.m2_shift(&g2.rho, f.neg(g2.psi))),
            f.inv(g12.psi),
        );
        if defect != witness {
            return false;
        }
        let mut with = products.clone();
        with.push(witness);
        if f.rank(&span_matrix(&with)) != base_rank {
            return false;
        }
    }
    true
}

pub fn check_specialized(inst: &SpecializedInstance) -> Result<SpecializedChecks, RibetError> {
    let f = inst.fp();
    let (e, ep) = inst.matrices();
    let t = inst.shape.t();
    let n = e.len();
    let d: Matrix = e[t..].iter().map(|row| row[t..].to_vec()).collect();
    let zprod = (0..t).fold(1, |acc, k| f.mul(acc, inst.z(inst.shape.place_sigma(k))));
    let det_e_factorization = f.det(&e) == f.mul(zprod, f.det(&d)) && d.len() + t == n;
    let det_eprime_zero = f.det(&ep) == 0;
    let cocycle = check_cocycle(inst, 10);
    let fr = FormalRing::with_coeffs(&inst.shape, CoefficientRing::prime_field(inst.p)?);
    let point = inst.point(&fr);
    let j_vanishes = build_ideals(&fr)
        .j
        .generators
        .iter()
        .all(|g| fr.ring.coeffs.is_zero(&g.evaluate_dense(&point)));
    Ok(SpecializedChecks {
        det_e_factorization,
        det_eprime_zero,
        cocycle,
        j_vanishes,
    })
}
