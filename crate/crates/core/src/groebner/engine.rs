//! Buchberger's algorithm over free-module vectors. An ideal is the rank-one
//! case with every term at position 0.

use std::cmp::Ordering;

use crate::exactpoly::{Coeff, CoefficientRing, Monomial, MonomialOrder};

use super::{GroebnerConfig, GroebnerError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct MTerm {
    pub pos: u32,
    pub mon: Monomial,
    pub c: Coeff,
}

pub(crate) type MVec = Vec<MTerm>;

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    pos: u32,
    lcm: Monomial,
}

pub(crate) struct Engine<'a> {
    pub k: CoefficientRing,
    pub order: &'a MonomialOrder,
    /// Rank > 1: the product criterion does not apply to module elements.
    pub module: bool,
    pub config: GroebnerConfig,
    pub steps: u64,
}

impl<'a> Engine<'a> {
    pub fn new(k: CoefficientRing, order: &'a MonomialOrder, module: bool, config: GroebnerConfig) -> Self {
        Engine {
            k,
            order,
            module,
            config,
            steps: 0,
        }
    }

    /// Position-over-term comparison; position 0 is the largest.
    pub fn cmp(&self, a: (u32, &Monomial), b: (u32, &Monomial)) -> Ordering {
        match b.0.cmp(&a.0) {
            Ordering::Equal => self.order.cmp(a.1, b.1),
            o => o,
        }
    }

    pub fn sort(&self, v: &mut MVec) {
        v.sort_by(|x, y| self.cmp((y.pos, &y.mon), (x.pos, &x.mon)));
        let mut out: MVec = Vec::with_capacity(v.len());
        for t in v.drain(..) {
            match out.last_mut() {
                Some(l) if l.pos == t.pos && l.mon == t.mon => l.c = self.k.add(&l.c, &t.c),
                _ => out.push(t),
            }
        }
        out.retain(|t| !self.k.is_zero(&t.c));
        *v = out;
    }

    fn tick(&mut self) -> Result<(), GroebnerError> {
        self.steps += 1;
        if self.steps > self.config.max_steps {
            Err(GroebnerError::Timeout(format!(
                "step budget of {} reductions exhausted",
                self.config.max_steps
            )))
        } else {
            Ok(())
        }
    }

    /// `p - c * m * g`, all operands sorted.
    fn sub_mul(&self, p: MVec, c: &Coeff, m: &Monomial, g: &[MTerm]) -> MVec {
        let k = &self.k;
        let mut out = Vec::with_capacity(p.len() + g.len());
        let mut pi = p.into_iter().peekable();
        let mut gi = g.iter().peekable();
        loop {
            match (pi.peek(), gi.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(pi.next().unwrap()),
                (None, Some(_)) => {
                    let t = gi.next().unwrap();
                    out.push(MTerm {
                        pos: t.pos,
                        mon: t.mon.mul(m),
                        c: k.neg(&k.mul(&t.c, c)),
                    });
                }
                (Some(a), Some(b)) => {
                    let bm = b.mon.mul(m);
                    match self.cmp((a.pos, &a.mon), (b.pos, &bm)) {
                        Ordering::Greater => out.push(pi.next().unwrap()),
                        Ordering::Less => {
                            let t = gi.next().unwrap();
                            out.push(MTerm {
                                pos: t.pos,
                                mon: bm,
                                c: k.neg(&k.mul(&t.c, c)),
                            });
                        }
                        Ordering::Equal => {
                            let a = pi.next().unwrap();
                            let t = gi.next().unwrap();
                            let nc = k.sub(&a.c, &k.mul(&t.c, c));
                            if !k.is_zero(&nc) {
                                out.push(MTerm {
                                    pos: a.pos,
                                    mon: a.mon,
                                    c: nc,
                                });
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn monic(&self, mut v: MVec) -> MVec {
        if let Some(first) = v.first() {
            if !self.k.is_one(&first.c) {
                let inv = self.k.inv(&first.c);
                for t in v.iter_mut() {
                    t.c = self.k.mul(&t.c, &inv);
                }
            }
        }
        v
    }

    fn find_reducer<'b>(&self, t: &MTerm, basis: &'b [&'b MVec]) -> Option<&'b MVec> {
        basis
            .iter()
            .find(|g| g[0].pos == t.pos && g[0].mon.divides(&t.mon))
            .copied()
    }

    /// Full reduction of `f` by monic `basis`.
    pub fn reduce(&mut self, f: MVec, basis: &[&MVec]) -> Result<MVec, GroebnerError> {
        let mut p = f;
        let mut rem: MVec = Vec::new();
        while !p.is_empty() {
            match self.find_reducer(&p[0], basis) {
                Some(g) => {
                    self.tick()?;
                    let q = g[0].mon.quotient_of(&p[0].mon);
                    let c = p[0].c.clone();
                    p = self.sub_mul(p, &c, &q, g);
                }
                None => {
                    // move the irreducible leading term aside
                    let mut it = p.into_iter();
                    rem.push(it.next().unwrap());
                    p = it.collect();
                }
            }
        }
        Ok(rem)
    }

    fn spoly(&self, f: &MVec, g: &MVec, lcm: &Monomial) -> MVec {
        let mf = f[0].mon.quotient_of(lcm);
        let mg = g[0].mon.quotient_of(lcm);
        let one = self.k.one();
        let mut a: MVec = f
            .iter()
            .skip(1)
            .map(|t| MTerm {
                pos: t.pos,
                mon: t.mon.mul(&mf),
                c: t.c.clone(),
            })
            .collect();
        // both monic: S = mf*f - mg*g with leading terms cancelled
        let gt: MVec = g[1..].to_vec();
        a = self.sub_mul(a, &one, &mg, &gt);
        a
    }

    /// Reduced Gröbner basis of the given vectors (sorted, arbitrary scaling).
    pub fn groebner(&mut self, gens: Vec<MVec>) -> Result<Vec<MVec>, GroebnerError> {
        let mut polys: Vec<MVec> = Vec::new();
        let mut active: Vec<bool> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();

        let mut gens: Vec<MVec> = gens.into_iter().filter(|g| !g.is_empty()).collect();
        gens.sort_by(|a, b| self.cmp((a[0].pos, &a[0].mon), (b[0].pos, &b[0].mon)));
        for g in gens {
            let basis: Vec<&MVec> = polys
                .iter()
                .zip(&active)
                .filter(|(_, &a)| a)
                .map(|(p, _)| p)
                .collect();
            let h = self.reduce(g, &basis)?;
            if h.is_empty() {
                continue;
            }
            let h = self.monic(h);
            self.insert(h, &mut polys, &mut active, &mut pairs)?;
        }

        while !pairs.is_empty() {
            let mut best = 0;
            for (idx, p) in pairs.iter().enumerate().skip(1) {
                let b = &pairs[best];
                let ord = p
                    .lcm
                    .degree()
                    .cmp(&b.lcm.degree())
                    .then_with(|| self.cmp((p.pos, &p.lcm), (b.pos, &b.lcm)));
                if ord == Ordering::Less {
                    best = idx;
                }
            }
            let pair = pairs.swap_remove(best);
            if pair.lcm.degree() > self.config.max_degree {
                return Err(GroebnerError::Timeout(format!(
                    "degree cap {} exceeded",
                    self.config.max_degree
                )));
            }
            let s = self.spoly(&polys[pair.i], &polys[pair.j], &pair.lcm);
            let basis: Vec<&MVec> = polys
                .iter()
                .zip(&active)
                .filter(|(_, &a)| a)
                .map(|(p, _)| p)
                .collect();
            let h = self.reduce(s, &basis)?;
            if h.is_empty() {
                continue;
            }
            let h = self.monic(h);
            self.insert(h, &mut polys, &mut active, &mut pairs)?;
        }

        let mut basis: Vec<MVec> = polys
            .into_iter()
            .zip(active)
            .filter(|(_, a)| *a)
            .map(|(p, _)| p)
            .collect();
        self.interreduce(&mut basis)?;
        if self.config.verify {
            self.verify(&basis)?;
        }
        Ok(basis)
    }

    /// Gebauer–Möller pair update followed by insertion of `h`.
    fn insert(
        &mut self,
        h: MVec,
        polys: &mut Vec<MVec>,
        active: &mut Vec<bool>,
        pairs: &mut Vec<Pair>,
    ) -> Result<(), GroebnerError> {
        let hi = polys.len();
        let hpos = h[0].pos;
        let hlm = h[0].mon.clone();

        let mut cand: Vec<(Pair, bool)> = Vec::new();
        for (gi, g) in polys.iter().enumerate() {
            if !active[gi] || g[0].pos != hpos {
                continue;
            }
            let coprime = !self.module && g[0].mon.coprime(&hlm);
            cand.push((
                Pair {
                    i: gi,
                    j: hi,
                    pos: hpos,
                    lcm: g[0].mon.lcm(&hlm),
                },
                coprime,
            ));
        }

        // chain criterion among the new pairs
        let mut kept: Vec<(Pair, bool)> = Vec::new();
        let mut rest = cand;
        while let Some((p, cop)) = rest.pop() {
            let dominated = rest
                .iter()
                .chain(kept.iter())
                .any(|(q, _)| q.lcm.divides(&p.lcm));
            if cop || !dominated {
                kept.push((p, cop));
            }
        }
        let new_pairs: Vec<Pair> = kept.into_iter().filter(|(_, c)| !c).map(|(p, _)| p).collect();

        // old pairs made redundant by h
        pairs.retain(|p| {
            if p.pos != hpos || !hlm.divides(&p.lcm) {
                return true;
            }
            let l1 = polys[p.i][0].mon.lcm(&hlm);
            let l2 = polys[p.j][0].mon.lcm(&hlm);
            l1 == p.lcm || l2 == p.lcm
        });
        pairs.extend(new_pairs);

        for (gi, g) in polys.iter().enumerate() {
            if active[gi] && g[0].pos == hpos && hlm.divides(&g[0].mon) {
                active[gi] = false;
            }
        }
        polys.push(h);
        active.push(true);
        Ok(())
    }

    fn interreduce(&mut self, basis: &mut Vec<MVec>) -> Result<(), GroebnerError> {
        // drop elements whose leading term is divisible by another's
        let mut keep = vec![true; basis.len()];
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i != j
                    && keep[j]
                    && basis[j][0].pos == basis[i][0].pos
                    && basis[j][0].mon.divides(&basis[i][0].mon)
                    && (basis[j][0].mon != basis[i][0].mon || j < i)
                {
                    keep[i] = false;
                    break;
                }
            }
        }
        let mut b: Vec<MVec> = basis
            .drain(..)
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|(p, _)| p)
            .collect();
        for i in 0..b.len() {
            let head = b[i][0].clone();
            let tail: MVec = b[i][1..].to_vec();
            let others: Vec<&MVec> = b
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, p)| p)
                .collect();
            let red = self.reduce(tail, &others)?;
            let mut v = vec![head];
            v.extend(red);
            b[i] = self.monic(v);
        }
        b.sort_by(|x, y| self.cmp((y[0].pos, &y[0].mon), (x[0].pos, &x[0].mon)));
        *basis = b;
        Ok(())
    }

    /// Every S-pair of the final basis reduces to zero.
    fn verify(&mut self, basis: &[MVec]) -> Result<(), GroebnerError> {
        let refs: Vec<&MVec> = basis.iter().collect();
        for i in 0..basis.len() {
            for j in (i + 1)..basis.len() {
                if basis[i][0].pos != basis[j][0].pos {
                    continue;
                }
                if !self.module && basis[i][0].mon.coprime(&basis[j][0].mon) {
                    continue;
                }
                let l = basis[i][0].mon.lcm(&basis[j][0].mon);
                let s = self.spoly(&basis[i], &basis[j], &l);
                let r = self.reduce(s, &refs)?;
                if !r.is_empty() {
                    return Err(GroebnerError::Internal(format!(
                        "S-pair ({i},{j}) does not reduce to zero"
                    )));
                }
            }
        }
        Ok(())
    }
}
