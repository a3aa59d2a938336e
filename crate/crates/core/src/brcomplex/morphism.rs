//! The chain map from the complex resolving `R/J′` to the complex whose
//! degree-1 image is `J`.
//!
//! `C` is the tensor product of `[R --L_i--> R]` over the linear and
//! product rows (a Koszul complex) with `R(det f_v)(−1)` for every place
//! other than `v₀` with at least two local generators, where
//! `f_v(e_σ) = (b_σ, b′_σ)`. `D` replaces each `[R → R]` by
//! `[R⁴ --(A,B,C,D)--> R]` and `f_v` by `f̃_v` on `⊕_σ (Ae_σ ⊕ Be_σ)`,
//! `f̃_v(Ae_σ) = (c′_σ, c_σ)`, `f̃_v(Be_σ) = (b_σ, b′_σ)`, keeping only
//! wedges with distinct `σ`. The map sends `e_i ↦ Be_i` and `e_σ ↦ Be_σ`.

use std::collections::BTreeSet;

use crate::exactpoly::Polynomial;
use crate::groebner::{ideals_equal, FreeModuleMatrix, IdealSpec};
use crate::ribet::formal::{check_quads_adjoint, QuadSource};
use crate::ribet::{build_ideals, FormalRing, RibetShape};

use super::br::det_inclusion;
use super::complex::{tensor_morphism, ComplexMorphism, FreeComplex};
use super::ComplexError;

pub const DEFAULT_CAP: usize = 2;

#[derive(Clone, Debug)]
pub struct CdMorphism {
    pub morphism: ComplexMorphism,
    /// Commutativity of the square ending in degree `k − 1`, for `k = 1..=cap`.
    pub squares: Vec<bool>,
    pub c_image_is_j_prime: bool,
    pub d_image_is_j: bool,
    pub quads_adjoint: Vec<(String, bool)>,
}

impl CdMorphism {
    pub fn holds(&self) -> bool {
        self.squares.iter().all(|&b| b)
            && self.c_image_is_j_prime
            && self.d_image_is_j
            && self.quads_adjoint.iter().all(|(_, b)| *b)
    }
}

impl ComplexMorphism {
    pub fn truncated(&self, top: usize) -> ComplexMorphism {
        let keep = top.min(self.top());
        ComplexMorphism {
            source: self.source.truncated(keep),
            target: self.target.truncated(keep),
            maps: self.maps[..=keep].to_vec(),
        }
    }
}

fn unit_morphism(fr: &FormalRing) -> Result<ComplexMorphism, ComplexError> {
    let ring = &fr.ring;
    let unit = FreeComplex::new(ring, vec![1], vec![], vec![vec![0]], vec![vec!["1".into()]])?;
    ComplexMorphism::new(unit.clone(), unit, vec![FreeModuleMatrix::identity(ring, 1)])
}

/// Generator sets span the same ideal. Equal sets up to sign and zeros are
/// accepted directly; anything else goes through two-way Gröbner membership.
pub fn same_ideal(image: &[Polynomial], gens: &[Polynomial]) -> Result<bool, ComplexError> {
    let norm = |v: &[Polynomial]| -> BTreeSet<String> {
        v.iter()
            .filter(|p| !p.is_zero())
            .map(|p| p.sign_normalized().to_string())
            .collect()
    };
    if norm(image) == norm(gens) {
        return Ok(true);
    }
    let Some(ring) = image.iter().chain(gens).next().map(|p| p.ring().clone()) else {
        return Ok(true);
    };
    Ok(ideals_equal(
        &IdealSpec::new(&ring, image.to_vec()),
        &IdealSpec::new(&ring, gens.to_vec()),
    )?)
}

pub fn build_cd_morphism(shape: &RibetShape, cap: usize) -> Result<CdMorphism, ComplexError> {
    build_cd_morphism_for(&FormalRing::new(shape), cap)
}

pub fn build_cd_morphism_for(fr: &FormalRing, cap: usize) -> Result<CdMorphism, ComplexError> {
    if cap == 0 {
        return Err(ComplexError::Invariant("degree cap must be at least 1".into()));
    }
    let ring = &fr.ring;
    let ideals = build_ideals(fr);
    let mut acc = unit_morphism(fr)?;
    for q in &ideals.quads {
        let i = match q.source {
            QuadSource::Linear { row } | QuadSource::Product { row, .. } => row + 1,
            QuadSource::Local { .. } => continue,
        };
        let m = &q.entries;
        let c = FreeComplex::two_term(ring, vec![m.b.clone()], vec![format!("e{i}")])?;
        let d = FreeComplex::two_term(
            ring,
            vec![m.a.clone(), m.b.clone(), m.c.clone(), m.d.clone()],
            ["A", "B", "C", "D"].iter().map(|x| format!("{x}e{i}")).collect(),
        )?;
        let mut inc = FreeModuleMatrix::zeros(ring, 4, 1);
        inc.set(1, 0, ring.one());
        let phi = ComplexMorphism::new(c, d, vec![FreeModuleMatrix::identity(ring, 1), inc])?;
        acc = tensor_morphism(&acc, &phi)?.truncated(cap);
    }
    for (_, set) in fr.shape.local_sets() {
        if set.len() < 2 {
            continue;
        }
        let mut f = FreeModuleMatrix::zeros(ring, 2, set.len());
        let mut ft = FreeModuleMatrix::zeros(ring, 2, 2 * set.len());
        for (k, &s) in set.iter().enumerate() {
            let rho = fr.rho(s);
            f.set(0, k, rho.b.clone());
            f.set(1, k, fr.b_prime(s));
            ft.set(0, 2 * k, fr.c_prime(s));
            ft.set(1, 2 * k, rho.c.clone());
            ft.set(0, 2 * k + 1, rho.b.clone());
            ft.set(1, 2 * k + 1, fr.b_prime(s));
        }
        let distinct = |w: &[usize]| {
            let places: BTreeSet<usize> = w.iter().map(|i| i / 2).collect();
            places.len() == w.len()
        };
        let mut phi = det_inclusion(&f, &ft, &|k| 2 * k + 1, &distinct, cap)?;
        phi.source = phi.source.twisted(-1);
        phi.target = phi.target.twisted(-1);
        acc = tensor_morphism(&acc, &phi)?.truncated(cap);
    }
    let squares = acc.squares();
    let c_image = if acc.source.top() >= 1 { acc.source.d(1).row(0) } else { vec![] };
    let d_image = if acc.target.top() >= 1 { acc.target.d(1).row(0) } else { vec![] };
    Ok(CdMorphism {
        c_image_is_j_prime: same_ideal(&c_image, &ideals.j_prime.generators)?,
        d_image_is_j: same_ideal(&d_image, &ideals.j.generators)?,
        quads_adjoint: check_quads_adjoint(fr)?,
        squares,
        morphism: acc,
    })
}
