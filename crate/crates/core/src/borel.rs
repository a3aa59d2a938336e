//! Action of the lower-triangular Borel subgroup on generic-matrix variables.
//!
//! The unipotent part acts by the substitution τ_x, the torus part by the
//! weight grading stored in the variable table (b has weight 1, c weight −1).

use std::collections::HashMap;

use crate::exactpoly::{PolyError, Polynomial, Ring, Role, VariableTable, Weight};
use crate::groebner::{buchberger, GroebnerError, IdealSpec};

/// τ_x on a ring whose table tags matrix entries by role and slot:
/// `a ↦ a + b·x`, `b ↦ b`, `c ↦ c + (d − a)·x − b·x²`, `d ↦ d − b·x`.
/// A deleted `b` entry reads as zero. Other variables are fixed.
#[derive(Clone, Debug)]
pub struct TauAction {
    base: Ring,
    ring: Ring,
    param: usize,
    map: HashMap<usize, Polynomial>,
}

impl TauAction {
    pub fn new(base: &Ring) -> Self {
        TauAction::with_param(base, "x")
    }

    /// Uses a fresh variable derived from `name` as the parameter; it is
    /// appended last to the table.
    pub fn with_param(base: &Ring, name: &str) -> Self {
        let mut table: VariableTable = (*base.vars).clone();
        let pname = table.fresh_name(name);
        let param = table.push(&pname, Role::Param, None).expect("fresh name");
        let ring = base.extended(table);
        let x = Polynomial::var(&ring, param);
        let entry = |role: Role, slot: usize| {
            base.vars
                .find(role, slot)
                .map(|id| Polynomial::var(&ring, id))
                .unwrap_or_else(|| ring.zero())
        };
        let mut map = HashMap::new();
        for (id, info) in base.vars.vars().iter().enumerate() {
            let Some(slot) = info.slot else { continue };
            let (a, b, c, d) = (
                entry(Role::A, slot),
                entry(Role::B, slot),
                entry(Role::C, slot),
                entry(Role::D, slot),
            );
            let img = match info.role {
                Role::A => &a + &(&b * &x),
                Role::C => &(&c + &(&(&d - &a) * &x)) - &(&b * &(&x * &x)),
                Role::D => &d - &(&b * &x),
                _ => continue,
            };
            map.insert(id, img);
        }
        TauAction {
            base: base.clone(),
            ring,
            param,
            map,
        }
    }

    /// Ring the images live in: the base table plus the parameter.
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn param(&self) -> Polynomial {
        Polynomial::var(&self.ring, self.param)
    }

    /// Lifts a base-ring polynomial into the extended ring unchanged.
    pub fn lift(&self, f: &Polynomial) -> Result<Polynomial, PolyError> {
        f.to_ring(&self.ring)
    }

    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial, PolyError> {
        let f = f.to_ring(&self.base)?;
        f.substitute(&self.map, &self.ring)
    }

    /// The image is fixed by τ_x exactly.
    pub fn fixes(&self, f: &Polynomial) -> Result<bool, PolyError> {
        Ok(self.apply(f)? == self.lift(f)?)
    }

    /// `τ_x(g) ∈ I·R[x]` for every generator `g` of `I`.
    pub fn stabilizes(&self, ideal: &IdealSpec) -> Result<bool, GroebnerError> {
        let ext = self.extended_ideal(ideal)?;
        let gb = buchberger(&ext)?;
        for g in &ideal.generators {
            if !gb.contains(&self.apply(g)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `I·R[x]` with the ideal's order extended by a final block for `x`.
    pub fn extended_ideal(&self, ideal: &IdealSpec) -> Result<IdealSpec, PolyError> {
        let gens = ideal
            .generators
            .iter()
            .map(|g| g.to_ring(&self.ring))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IdealSpec::new(&self.ring, gens).with_order(ideal.order.extended_to(self.ring.nvars())))
    }
}

pub fn apply_tau(tau: &TauAction, f: &Polynomial) -> Result<Polynomial, PolyError> {
    tau.apply(f)
}

/// `(A′, B′, C′, D′)` transforms like the generic matrix under τ_x and has
/// torus weights `(0, 1, −1, 0)`.
pub fn adjoint_quadruple_check(tau: &TauAction, q: [&Polynomial; 4]) -> Result<bool, PolyError> {
    let [a, b, c, d] = q;
    let x = tau.param();
    let (la, lb, lc, ld) = (tau.lift(a)?, tau.lift(b)?, tau.lift(c)?, tau.lift(d)?);
    let expect = [
        &la + &(&lb * &x),
        lb.clone(),
        &(&lc + &(&(&ld - &la) * &x)) - &(&lb * &(&x * &x)),
        &ld - &(&lb * &x),
    ];
    for (p, e) in q.iter().zip(expect.iter()) {
        if tau.apply(p)? != *e {
            return Ok(false);
        }
    }
    let weights_ok = [(a, 0), (b, 1), (c, -1), (d, 0)]
        .iter()
        .all(|(p, w)| p.is_zero() || p.torus_weight() == Weight::Isobaric(*w));
    Ok(weights_ok)
}

/// `τ_x(f) − f ∈ I·R[x]` and the normal form of `f` modulo `I` is isobaric
/// of weight 0.
pub fn invariant_mod(tau: &TauAction, f: &Polynomial, ideal: &IdealSpec) -> Result<bool, GroebnerError> {
    let diff = &tau.apply(f)? - &tau.lift(f)?;
    let nf = if ideal.generators.is_empty() {
        if !diff.is_zero() {
            return Ok(false);
        }
        f.clone()
    } else {
        let ext = buchberger(&tau.extended_ideal(ideal)?)?;
        if !ext.contains(&diff)? {
            return Ok(false);
        }
        buchberger(ideal)?.normal_form(f)?
    };
    Ok(matches!(nf.torus_weight(), Weight::Isobaric(0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genmat::{CongruenceModel, Mat2};

    fn ring() -> Ring {
        CongruenceModel::new(2, &[]).ring
    }

    #[test]
    fn generator_images() {
        let r = ring();
        let tau = TauAction::new(&r);
        let e = tau.ring();
        assert_eq!(tau.apply(&r.var("a1")).unwrap(), e.parse("a1 + b1*x").unwrap());
        assert_eq!(tau.apply(&r.var("b1")).unwrap(), e.parse("b1").unwrap());
        assert_eq!(
            tau.apply(&r.var("c1")).unwrap(),
            e.parse("c1 + (d1 - a1)*x - b1*x^2").unwrap()
        );
        assert_eq!(tau.apply(&r.var("d1")).unwrap(), e.parse("d1 - b1*x").unwrap());
        assert_eq!(tau.apply(&r.var("psi1")).unwrap(), e.var("psi1"));
    }

    #[test]
    fn zero_parameter_is_identity() {
        let r = ring();
        let tau = TauAction::new(&r);
        let f = r.parse("a1*c2 - b1^2*d2 + chi1").unwrap();
        let img = tau.apply(&f).unwrap().subs(&[("x", tau.ring().zero())]);
        assert_eq!(img, tau.lift(&f).unwrap());
    }

    #[test]
    fn quadruples() {
        let r = ring();
        let tau = TauAction::new(&r);
        let g = Mat2::generic(&r, 1);
        assert!(adjoint_quadruple_check(&tau, [&g.a, &g.b, &g.c, &g.d]).unwrap());
        let z = r.zero();
        assert!(!adjoint_quadruple_check(&tau, [&g.a, &g.b, &g.c, &z]).unwrap());
        // a product of generic matrices is again an adjoint quadruple
        let p = g.mul(&Mat2::generic(&r, 2));
        assert!(adjoint_quadruple_check(&tau, [&p.a, &p.b, &p.c, &p.d]).unwrap());
    }

    #[test]
    fn invariance() {
        let r = ring();
        let tau = TauAction::new(&r);
        let zero = IdealSpec::new(&r, vec![]);
        let w = Mat2::generic(&r, 1).mul(&Mat2::generic(&r, 2)).mul(&Mat2::generic(&r, 1));
        assert!(invariant_mod(&tau, &w.trace(), &zero).unwrap());
        assert!(invariant_mod(&tau, &w.det(), &zero).unwrap());
        assert!(!invariant_mod(&tau, &r.var("b1"), &zero).unwrap());
        assert!(!invariant_mod(&tau, &r.var("d1"), &zero).unwrap());
        let bideal = IdealSpec::new(&r, vec![r.var("b1")]);
        assert!(invariant_mod(&tau, &r.var("d1"), &bideal).unwrap());
        assert!(invariant_mod(&tau, &r.var("a1"), &bideal).unwrap());
        assert!(tau.stabilizes(&bideal).unwrap());
        let cideal = IdealSpec::new(&r, vec![r.var("c1")]);
        assert!(!tau.stabilizes(&cideal).unwrap());
    }

    #[test]
    fn one_parameter_law() {
        let r = ring();
        let tx = TauAction::with_param(&r, "x");
        let ty = TauAction::with_param(tx.ring(), "y");
        let xy = ty.ring();
        let sum = &xy.var("x") + &xy.var("y");
        for name in ["a1", "b1", "c1", "d1", "a2", "c2"] {
            let v = r.var(name);
            let once = tx.apply(&v).unwrap();
            let twice = ty.apply(&once).unwrap();
            let direct = tx.apply(&v).unwrap().to_ring(xy).unwrap().subs(&[("x", sum.clone())]);
            assert_eq!(twice, direct, "{name}");
        }
    }
}
