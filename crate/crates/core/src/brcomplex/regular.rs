//! Regularity criteria for maps `R^n → R²` and for sequences of linear
//! polynomials, decided by ideal quotients.

use crate::exactpoly::{CoefficientRing, MonomialOrder, PolyRing, Polynomial, Ring, Role, VariableTable};
use crate::groebner::{buchberger, ideal_quotient, FreeModuleMatrix, IdealSpec};

use super::br::br_complexes;
use super::complex::{koszul, tensor, FreeComplex};
use super::ComplexError;

/// `r_ij = b_i b′_j − b_j b′_i` for the columns of a `2 × n` matrix.
pub fn minor(f: &FreeModuleMatrix, i: usize, j: usize) -> Polynomial {
    &(f.get(0, i) * f.get(1, j)) - &(f.get(0, j) * f.get(1, i))
}

/// Ring `K[b₁…b_n, b′₁…b′_n]` and the matrix with columns `(b_i, b′_i)`.
pub fn generic_2xn(coeffs: CoefficientRing, n: usize) -> (Ring, FreeModuleMatrix) {
    let mut t = VariableTable::new();
    for i in 1..=n {
        t.push(&format!("b{i}"), Role::B, Some(i)).expect("fresh");
    }
    for i in 1..=n {
        t.push(&format!("bp{i}"), Role::Param, Some(i)).expect("fresh");
    }
    let ring = PolyRing::new(coeffs, t, MonomialOrder::DegRevLex);
    let rows = vec![
        (1..=n).map(|i| ring.var(&format!("b{i}"))).collect(),
        (1..=n).map(|i| ring.var(&format!("bp{i}"))).collect(),
    ];
    let f = FreeModuleMatrix::from_rows(&ring, rows).expect("same ring");
    (ring, f)
}

/// `I : g ⊆ target`, every quotient generator reducing to zero.
fn quotient_inside(base: Vec<Polynomial>, g: &Polynomial, target: Vec<Polynomial>, ring: &Ring) -> Result<bool, ComplexError> {
    let q = ideal_quotient(&IdealSpec::new(ring, base), g)?;
    let nonzero: Vec<&Polynomial> = q.generators.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return Ok(true);
    }
    let target: Vec<Polynomial> = target.into_iter().filter(|p| !p.is_zero()).collect();
    if target.is_empty() {
        return Ok(false);
    }
    let gb = buchberger(&IdealSpec::new(ring, target))?;
    for p in nonzero {
        if !gb.contains(p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For each `k = 2..n`: `((r₁₂,…,r₁₍ₖ₋₁₎) : r₁ₖ) ⊆ (r_ij : i, j < k)`.
/// Indices are 1-based in this description.
pub fn regularity_check(f: &FreeModuleMatrix) -> Result<bool, ComplexError> {
    if f.rows() != 2 {
        return Err(ComplexError::Invariant("regularity criterion needs a 2-row matrix".into()));
    }
    let ring = f.ring().clone();
    if !ring.coeffs.is_field() {
        return Err(ComplexError::Invariant("regularity criterion needs field coefficients".into()));
    }
    let n = f.cols();
    for k in 1..n {
        let base: Vec<Polynomial> = (1..k).map(|j| minor(f, 0, j)).collect();
        let mut target = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                target.push(minor(f, i, j));
            }
        }
        if !quotient_inside(base, &minor(f, 0, k), target, &ring)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `((L₁,…,L_{i−1}) : L_i) = (L₁,…,L_{i−1})` for every `i`; the containment
/// `⊇` always holds, so only `⊆` is tested.
pub fn regular_sequence_check(ls: &[Polynomial]) -> Result<bool, ComplexError> {
    let Some(first) = ls.first() else {
        return Ok(true);
    };
    let ring = first.ring().clone();
    for i in 0..ls.len() {
        let prev: Vec<Polynomial> = ls[..i].to_vec();
        if !quotient_inside(prev.clone(), &ls[i], prev, &ring)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Ring with `A_ij` (`m × n`), `X_j` and `c_i`, and the polynomials
/// `L_i = Σ_j A_ij X_j − c_i`.
pub fn inhomogeneous_linear_forms(coeffs: CoefficientRing, m: usize, n: usize) -> (Ring, Vec<Polynomial>) {
    let mut t = VariableTable::new();
    for i in 1..=m {
        for j in 1..=n {
            t.push(&format!("A{i}_{j}"), Role::Param, None).expect("fresh");
        }
    }
    for j in 1..=n {
        t.push(&format!("X{j}"), Role::Param, None).expect("fresh");
    }
    for i in 1..=m {
        t.push(&format!("c{i}"), Role::Param, None).expect("fresh");
    }
    let ring = PolyRing::new(coeffs, t, MonomialOrder::DegRevLex);
    let ls = (1..=m)
        .map(|i| {
            let mut l = -&ring.var(&format!("c{i}"));
            for j in 1..=n {
                l = &l + &(&ring.var(&format!("A{i}_{j}")) * &ring.var(&format!("X{j}")));
            }
            l
        })
        .collect();
    (ring, ls)
}

/// Smallest tensor resolution with one generic linear relation: `R(det f₁)`
/// for the block `f₁(e_j) = (b_j, b′_j)`, `j = 1, 2`, tensored with the
/// Koszul complex on `V₁₁b₁ + V₁₂b₂ + V₁₃b₃`.
pub fn block_with_linear_relation(coeffs: CoefficientRing) -> Result<FreeComplex, ComplexError> {
    let mut t = VariableTable::new();
    for name in ["bp1", "bp2", "b1", "b2", "b3", "V11", "V12", "V13"] {
        t.push(name, Role::Other, None).expect("fresh");
    }
    let ring = PolyRing::new(coeffs, t, MonomialOrder::DegRevLex);
    let v = |n: &str| ring.var(n);
    let f1 = FreeModuleMatrix::from_rows(&ring, vec![vec![v("b1"), v("b2")], vec![v("bp1"), v("bp2")]])?;
    let l = (1..=3).fold(ring.zero(), |acc, j| &acc + &(&v(&format!("V1{j}")) * &v(&format!("b{j}"))));
    tensor(&br_complexes(&f1)?.rdetf, &koszul(&[l])?)
}
