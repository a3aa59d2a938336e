//! Buchsbaum–Rim complexes of a map `f : V = R^n → W = R^m`, `m ≤ 2`.
//!
//! For `m = 2` both complexes are built from the bar construction of the
//! exterior algebra `⋀W*` acting on `⋀V`: a functional `φ ∈ W*` acts by
//! contraction with `f*φ`, and `w₁*∧w₂*` acts as `w₁*·(w₂*·−)`. A degree-`k`
//! basis element of `R(det f)` is a word `a₁ ⊗ … ⊗ a_{k−1}` in the nonzero
//! basis elements of `⋀W*` together with a wedge `e_S`, `|S| = 2 + Σ deg aᵢ`,
//! and the differential is the bar differential
//!
//! `d(a₁…a_j; m) = Σ_{i<j} (−1)^i (…, aᵢa_{i+1}, …; m) + (−1)^j (a₁…a_{j−1}; a_j·m)`,
//!
//! closed off by `det f : ⋀²V → ⋀²W ≅ R`, `e_i∧e_j ↦ r_ij`. `R(f)` has `W`
//! and `V` in degrees 0 and 1, `d₂ = −(w₁*∧w₂*)· : ⋀³V → V`, and the same
//! bar terms above that with `|S| = 3 + Σ deg aᵢ`.
//!
//! Twists: `e_i` carries 1, `w₁*, w₂*` carry 0, `w₁*∧w₂*` carries −1 and
//! `⋀²W` carries 1.

use std::collections::HashMap;

use crate::exactpoly::{Polynomial, Ring};
use crate::groebner::FreeModuleMatrix;

use super::complex::{koszul, wedge_label, ComplexMorphism, FreeComplex};
use super::ComplexError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Dual {
    W1,
    W2,
    Top,
}

impl Dual {
    const ALL: [Dual; 3] = [Dual::W1, Dual::W2, Dual::Top];

    fn degree(self) -> usize {
        match self {
            Dual::Top => 2,
            _ => 1,
        }
    }

    fn twist(self) -> i64 {
        match self {
            Dual::Top => -1,
            _ => 0,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Dual::W1 => "w1*",
            Dual::W2 => "w2*",
            Dual::Top => "w12*",
        }
    }

    /// `a ∧ b` as `(sign, basis element)`, or `None` when it vanishes.
    fn product(a: Dual, b: Dual) -> Option<(i64, Dual)> {
        match (a, b) {
            (Dual::W1, Dual::W2) => Some((1, Dual::Top)),
            (Dual::W2, Dual::W1) => Some((-1, Dual::Top)),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct BarElem {
    duals: Vec<Dual>,
    wedge: Vec<usize>,
}

type Chain = Vec<(Vec<usize>, Polynomial)>;

/// `ι_β(e_S) = Σ_t (−1)^t β(e_{s_t}) e_{S∖s_t}`.
fn contract(beta: &[Polynomial], s: &[usize]) -> Chain {
    let mut out = Vec::new();
    for t in 0..s.len() {
        let c = &beta[s[t]];
        if c.is_zero() {
            continue;
        }
        let mut rest = s.to_vec();
        rest.remove(t);
        out.push((rest, if t % 2 == 0 { c.clone() } else { -c }));
    }
    out
}

struct Action<'a> {
    rows: [&'a [Polynomial]; 2],
}

impl Action<'_> {
    fn act(&self, a: Dual, s: &[usize]) -> Chain {
        match a {
            Dual::W1 => contract(self.rows[0], s),
            Dual::W2 => contract(self.rows[1], s),
            Dual::Top => {
                let mut acc: HashMap<Vec<usize>, Polynomial> = HashMap::new();
                for (s2, c2) in contract(self.rows[1], s) {
                    for (s1, c1) in contract(self.rows[0], &s2) {
                        let v = &c1 * &c2;
                        acc.entry(s1)
                            .and_modify(|x| *x = &*x + &v)
                            .or_insert(v);
                    }
                }
                acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
            }
        }
    }

    fn boundary(&self, e: &BarElem) -> Vec<(BarElem, Polynomial)> {
        let ring = self.rows[0][0].ring();
        let j = e.duals.len();
        let mut out = Vec::new();
        for i in 1..j {
            if let Some((sg, prod)) = Dual::product(e.duals[i - 1], e.duals[i]) {
                let mut duals = e.duals.clone();
                duals.splice(i - 1..=i, [prod]);
                let sign = if i % 2 == 0 { sg } else { -sg };
                out.push((
                    BarElem {
                        duals,
                        wedge: e.wedge.clone(),
                    },
                    ring.int(sign),
                ));
            }
        }
        if j > 0 {
            let last = e.duals[j - 1];
            let head = e.duals[..j - 1].to_vec();
            for (s, c) in self.act(last, &e.wedge) {
                let c = if j.is_multiple_of(2) { c } else { -&c };
                out.push((
                    BarElem {
                        duals: head.clone(),
                        wedge: s,
                    },
                    c,
                ));
            }
        }
        out
    }
}

fn subsets_where(n: usize, k: usize, allowed: &dyn Fn(&[usize]) -> bool) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out.retain(|s| allowed(s));
    out
}

fn words(j: usize) -> Vec<Vec<Dual>> {
    let mut out = vec![Vec::new()];
    for _ in 0..j {
        out = out
            .into_iter()
            .flat_map(|w| {
                Dual::ALL.iter().map(move |&a| {
                    let mut w = w.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

/// Bar terms with `j` dual factors and wedges of size `base + Σ deg`.
fn bar_basis(n: usize, j: usize, base: usize, allowed: &dyn Fn(&[usize]) -> bool) -> Vec<BarElem> {
    let mut out = Vec::new();
    for w in words(j) {
        let size = base + w.iter().map(|a| a.degree()).sum::<usize>();
        for s in subsets_where(n, size, allowed) {
            out.push(BarElem {
                duals: w.clone(),
                wedge: s,
            });
        }
    }
    out
}

fn bar_label(e: &BarElem) -> String {
    let mut parts: Vec<String> = e.duals.iter().map(|a| a.label().to_string()).collect();
    parts.push(wedge_label(&e.wedge));
    parts.join("⊗")
}

fn bar_twist(e: &BarElem) -> i64 {
    e.wedge.len() as i64 + e.duals.iter().map(|a| a.twist()).sum::<i64>()
}

fn bar_matrix(
    ring: &Ring,
    act: &Action,
    src: &[BarElem],
    dst: &[BarElem],
) -> Result<FreeModuleMatrix, ComplexError> {
    let index: HashMap<&BarElem, usize> = dst.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut d = FreeModuleMatrix::zeros(ring, dst.len(), src.len());
    for (col, e) in src.iter().enumerate() {
        for (t, c) in act.boundary(e) {
            if c.is_zero() {
                continue;
            }
            let Some(&row) = index.get(&t) else {
                return Err(ComplexError::Invariant(format!(
                    "boundary of {} leaves the chosen basis",
                    bar_label(e)
                )));
            };
            d.add_to(row, col, &c);
        }
    }
    Ok(d)
}

fn rows_of(f: &FreeModuleMatrix) -> [Vec<Polynomial>; 2] {
    [f.row(0), f.row(1)]
}

/// Default top degree: the full complex for `n ≤ 5`, otherwise 3.
fn default_top(n: usize) -> usize {
    if n <= 5 {
        n.saturating_sub(1).max(1)
    } else {
        3
    }
}

/// `R(det f)` for a `2 × n` matrix, with the wedge basis restricted to
/// subsets accepted by `allowed` (which must be closed under removing
/// elements).
pub(crate) fn det_complex(
    f: &FreeModuleMatrix,
    allowed: &dyn Fn(&[usize]) -> bool,
    top: usize,
) -> Result<FreeComplex, ComplexError> {
    let ring = f.ring().clone();
    let n = f.cols();
    let rows = rows_of(f);
    let act = Action {
        rows: [&rows[0], &rows[1]],
    };
    let mut bases: Vec<Vec<BarElem>> = vec![Vec::new()];
    for k in 1..=top {
        let b = bar_basis(n, k - 1, 2, allowed);
        if b.is_empty() {
            break;
        }
        bases.push(b);
    }
    let mut ranks = vec![1];
    let mut twists = vec![vec![1]];
    let mut labels = vec![vec!["w1^w2".to_string()]];
    let mut diffs = Vec::new();
    for (k, b) in bases.iter().enumerate().skip(1) {
        ranks.push(b.len());
        twists.push(b.iter().map(bar_twist).collect());
        labels.push(b.iter().map(bar_label).collect());
        if k == 1 {
            let mut d = FreeModuleMatrix::zeros(&ring, 1, b.len());
            for (col, e) in b.iter().enumerate() {
                let (i, j) = (e.wedge[0], e.wedge[1]);
                d.set(0, col, &(&rows[0][i] * &rows[1][j]) - &(&rows[0][j] * &rows[1][i]));
            }
            diffs.push(d);
        } else {
            diffs.push(bar_matrix(&ring, &act, b, &bases[k - 1])?);
        }
    }
    FreeComplex::new(&ring, ranks, diffs, twists, labels)
}

/// The chain map `R(det f) → R(det f̃)` induced by `g : V → Ṽ`,
/// `e_i ↦ ẽ_{inject(i)}` with `inject` increasing and `f̃ ∘ g = f`: identity
/// on the `⋀W*` factors and `⋀g` on wedges. The target wedge basis is
/// restricted by `allowed`.
pub(crate) fn det_inclusion(
    f: &FreeModuleMatrix,
    ftilde: &FreeModuleMatrix,
    inject: &dyn Fn(usize) -> usize,
    allowed: &dyn Fn(&[usize]) -> bool,
    top: usize,
) -> Result<ComplexMorphism, ComplexError> {
    for i in 0..f.cols() {
        for r in 0..2 {
            if f.get(r, i) != ftilde.get(r, inject(i)) {
                return Err(ComplexError::Invariant("f̃ does not extend f".into()));
            }
        }
    }
    let all = |_: &[usize]| true;
    let source = det_complex(f, &all, top)?;
    let target = det_complex(ftilde, allowed, top)?;
    let ring = f.ring().clone();
    let top = source.top().min(target.top());
    let mut maps = vec![FreeModuleMatrix::identity(&ring, 1)];
    for k in 1..=top {
        let src = bar_basis(f.cols(), k - 1, 2, &all);
        let dst = bar_basis(ftilde.cols(), k - 1, 2, allowed);
        let index: HashMap<&BarElem, usize> = dst.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut m = FreeModuleMatrix::zeros(&ring, dst.len(), src.len());
        for (col, e) in src.iter().enumerate() {
            let image = BarElem {
                duals: e.duals.clone(),
                wedge: e.wedge.iter().map(|&i| inject(i)).collect(),
            };
            let row = *index.get(&image).ok_or_else(|| {
                ComplexError::Invariant(format!("{} has no image in the target basis", bar_label(e)))
            })?;
            m.set(row, col, ring.one());
        }
        maps.push(m);
    }
    ComplexMorphism::new(source.truncated(top), target.truncated(top), maps)
}

fn map_complex(f: &FreeModuleMatrix, top: usize) -> Result<FreeComplex, ComplexError> {
    let ring = f.ring().clone();
    let n = f.cols();
    let rows = rows_of(f);
    let act = Action {
        rows: [&rows[0], &rows[1]],
    };
    let all = |_: &[usize]| true;
    let mut ranks = vec![2, n];
    let mut twists = vec![vec![0, 0], vec![1; n]];
    let mut labels = vec![
        vec!["w1".to_string(), "w2".to_string()],
        (0..n).map(|i| format!("e{}", i + 1)).collect(),
    ];
    let mut diffs = vec![f.clone()];
    let mut prev: Option<Vec<BarElem>> = None;
    for k in 2..=top {
        let b = bar_basis(n, k - 2, 3, &all);
        if b.is_empty() {
            break;
        }
        let d = match &prev {
            None => {
                // −(w₁*∧w₂*)· : ⋀³V → V
                let mut d = FreeModuleMatrix::zeros(&ring, n, b.len());
                for (col, e) in b.iter().enumerate() {
                    for (s, c) in act.act(Dual::Top, &e.wedge) {
                        d.add_to(s[0], col, &(-&c));
                    }
                }
                d
            }
            Some(p) => bar_matrix(&ring, &act, &b, p)?,
        };
        ranks.push(b.len());
        twists.push(b.iter().map(|e| bar_twist(e) - 1).collect());
        labels.push(b.iter().map(|e| format!("w12*⊗{}", bar_label(e))).collect());
        diffs.push(d);
        prev = Some(b);
    }
    FreeComplex::new(&ring, ranks, diffs, twists, labels)
}

/// `R(f)` and `R(det f)` for a map with one or two rows.
#[derive(Clone, Debug)]
pub struct BrComplexes {
    pub rf: FreeComplex,
    pub rdetf: FreeComplex,
}

pub fn br_complexes(f: &FreeModuleMatrix) -> Result<BrComplexes, ComplexError> {
    br_complexes_with(f, default_top(f.cols()))
}

/// As [`br_complexes`], truncated at degree `top`.
pub fn br_complexes_with(f: &FreeModuleMatrix, top: usize) -> Result<BrComplexes, ComplexError> {
    match f.rows() {
        1 => {
            let k = koszul(&f.row(0))?.truncated(top);
            Ok(BrComplexes { rf: k.clone(), rdetf: k })
        }
        2 => {
            if f.cols() < 2 {
                return Err(ComplexError::Invariant("need at least two columns".into()));
            }
            Ok(BrComplexes {
                rf: map_complex(f, top)?,
                rdetf: det_complex(f, &|_| true, top)?,
            })
        }
        m => Err(ComplexError::Invariant(format!("maps into R^{m} are not supported"))),
    }
}

/// `d_{ijk} = r_ij e_k + r_jk e_i + r_ki e_j` for `i < j < k` (0-based).
pub fn d_ijk(f: &FreeModuleMatrix, i: usize, j: usize, k: usize) -> Vec<Polynomial> {
    let r = |a: usize, b: usize| &(f.get(0, a) * f.get(1, b)) - &(f.get(0, b) * f.get(1, a));
    let mut v = vec![f.ring().zero(); f.cols()];
    v[k] = r(i, j);
    v[i] = r(j, k);
    v[j] = r(k, i);
    v
}
