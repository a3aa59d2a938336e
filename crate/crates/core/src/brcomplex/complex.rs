use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactpoly::{Coeff, CoefficientRing, PolyRing, Polynomial, Ring};
use crate::fp::Fp;
use crate::groebner::{syzygies, FreeModuleMatrix, ModuleBasis};

use super::ComplexError;

/// Largest rank a single term may have.
pub const MAX_RANK: usize = 4096;

/// Bounded complex of finite free modules `C_top → … → C_1 → C_0`.
///
/// `d(k)` is the matrix of `C_k → C_{k−1}` acting on column vectors, so it
/// has `rank(k−1)` rows and `rank(k)` columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    ring: Ring,
    ranks: Vec<usize>,
    diffs: Vec<FreeModuleMatrix>,
    twists: Vec<Vec<i64>>,
    labels: Vec<Vec<String>>,
}

/// Serializable form: ranks, twists, labels and differentials in the
/// polynomial text syntax.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexRecord {
    pub ranks: Vec<usize>,
    pub twists: Vec<Vec<i64>>,
    pub labels: Vec<Vec<String>>,
    /// `differentials[k − 1]` is `d(k)`, row-major.
    pub differentials: Vec<Vec<Vec<String>>>,
}

impl FreeComplex {
    pub fn new(
        ring: &Ring,
        ranks: Vec<usize>,
        diffs: Vec<FreeModuleMatrix>,
        twists: Vec<Vec<i64>>,
        labels: Vec<Vec<String>>,
    ) -> Result<Self, ComplexError> {
        let bad = |m: String| Err(ComplexError::Invariant(m));
        if ranks.is_empty() {
            return bad("a complex needs a degree-0 term".into());
        }
        if diffs.len() + 1 != ranks.len() {
            return bad(format!("{} terms need {} differentials", ranks.len(), ranks.len() - 1));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.rows() != ranks[k] || d.cols() != ranks[k + 1] {
                return bad(format!(
                    "d{} is {}×{}, expected {}×{}",
                    k + 1,
                    d.rows(),
                    d.cols(),
                    ranks[k],
                    ranks[k + 1]
                ));
            }
            if !PolyRing::same(d.ring(), ring) {
                return bad(format!("d{} lives in a different ring", k + 1));
            }
        }
        for (name, v) in [("twist", twists.iter().map(Vec::len).collect::<Vec<_>>()), ("label", labels.iter().map(Vec::len).collect())] {
            if v != ranks {
                return bad(format!("{name} lists do not match the ranks"));
            }
        }
        if let Some(&r) = ranks.iter().find(|&&r| r > MAX_RANK) {
            return Err(ComplexError::Timeout(format!("term of rank {r} exceeds {MAX_RANK}")));
        }
        Ok(FreeComplex {
            ring: ring.clone(),
            ranks,
            diffs,
            twists,
            labels,
        })
    }

    /// `R^m → R` given by one row; twist `1` on the degree-1 basis.
    pub fn two_term(ring: &Ring, row: Vec<Polynomial>, labels: Vec<String>) -> Result<Self, ComplexError> {
        let m = row.len();
        let d = FreeModuleMatrix::from_rows(ring, vec![row])?;
        FreeComplex::new(
            ring,
            vec![1, m],
            vec![d],
            vec![vec![0], vec![1; m]],
            vec![vec!["1".into()], labels],
        )
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, k: usize) -> usize {
        self.ranks.get(k).copied().unwrap_or(0)
    }

    /// Highest degree with a term.
    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    /// `d_k : C_k → C_{k−1}` for `1 ≤ k ≤ top`.
    pub fn d(&self, k: usize) -> &FreeModuleMatrix {
        &self.diffs[k - 1]
    }

    pub fn twists(&self, k: usize) -> &[i64] {
        &self.twists[k]
    }

    /// The twist of degree `k` when every basis element shares it.
    pub fn twist(&self, k: usize) -> Option<i64> {
        let t = self.twists.get(k)?;
        let first = *t.first()?;
        t.iter().all(|&x| x == first).then_some(first)
    }

    pub fn labels(&self, k: usize) -> &[String] {
        &self.labels[k]
    }

    /// Drops every term above `top`.
    pub fn truncated(&self, top: usize) -> FreeComplex {
        let keep = top.min(self.top());
        FreeComplex {
            ring: self.ring.clone(),
            ranks: self.ranks[..=keep].to_vec(),
            diffs: self.diffs[..keep].to_vec(),
            twists: self.twists[..=keep].to_vec(),
            labels: self.labels[..=keep].to_vec(),
        }
    }

    /// `C(n)`: every twist shifted by `n`.
    pub fn twisted(&self, n: i64) -> FreeComplex {
        let mut out = self.clone();
        for t in out.twists.iter_mut().flatten() {
            *t += n;
        }
        out
    }

    /// Copy with one differential entry replaced; used for negative controls.
    pub fn with_entry(&self, k: usize, i: usize, j: usize, p: Polynomial) -> FreeComplex {
        let mut out = self.clone();
        out.diffs[k - 1].set(i, j, p);
        out
    }

    pub fn record(&self) -> ComplexRecord {
        ComplexRecord {
            ranks: self.ranks.clone(),
            twists: self.twists.clone(),
            labels: self.labels.clone(),
            differentials: self
                .diffs
                .iter()
                .map(|d| {
                    (0..d.rows())
                        .map(|i| d.row(i).iter().map(|p| p.to_string()).collect())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_record(ring: &Ring, rec: &ComplexRecord) -> Result<FreeComplex, ComplexError> {
        let mut diffs = Vec::new();
        for (k, rows) in rec.differentials.iter().enumerate() {
            let parsed = rows
                .iter()
                .map(|row| row.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            let mut d = FreeModuleMatrix::from_rows(ring, parsed)?;
            if d.rows() == 0 {
                d = FreeModuleMatrix::zeros(ring, rec.ranks[k], rec.ranks[k + 1]);
            }
            diffs.push(d);
        }
        FreeComplex::new(ring, rec.ranks.clone(), diffs, rec.twists.clone(), rec.labels.clone())
    }
}

/// Chain map between two complexes over the same ring, degree by degree up
/// to the smaller top degree.
#[derive(Clone, Debug)]
pub struct ComplexMorphism {
    pub source: FreeComplex,
    pub target: FreeComplex,
    /// `maps[k]` is `C_k → D_k`, with `rank_D(k)` rows.
    pub maps: Vec<FreeModuleMatrix>,
}

impl ComplexMorphism {
    pub fn new(source: FreeComplex, target: FreeComplex, maps: Vec<FreeModuleMatrix>) -> Result<Self, ComplexError> {
        let top = source.top().min(target.top());
        if maps.len() != top + 1 {
            return Err(ComplexError::Invariant(format!("expected {} component maps", top + 1)));
        }
        for (k, m) in maps.iter().enumerate() {
            if m.rows() != target.rank(k) || m.cols() != source.rank(k) {
                return Err(ComplexError::Invariant(format!("component {k} has the wrong size")));
            }
        }
        Ok(ComplexMorphism { source, target, maps })
    }

    pub fn top(&self) -> usize {
        self.maps.len() - 1
    }

    /// `d^D_k ∘ φ_k = φ_{k−1} ∘ d^C_k` for each `k` in `1..=top`.
    pub fn squares(&self) -> Vec<bool> {
        (1..=self.top())
            .map(|k| {
                let left = self.target.d(k).mul(&self.maps[k]);
                let right = self.maps[k - 1].mul(self.source.d(k));
                left == right
            })
            .collect()
    }

    pub fn commutes(&self) -> bool {
        self.squares().into_iter().all(|b| b)
    }
}

/// `d_{k−1} d_k = 0` for every `k`, as exact matrix products.
pub fn check_d2(c: &FreeComplex) -> bool {
    (2..=c.top()).all(|k| c.d(k - 1).mul(c.d(k)).is_zero())
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
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
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn wedge_label(s: &[usize]) -> String {
    if s.is_empty() {
        return "1".into();
    }
    s.iter().map(|i| format!("e{}", i + 1)).collect::<Vec<_>>().join("^")
}

/// Koszul complex on `elems`: `⋀^k R^n` in degree `k`, basis `e_S` in
/// lexicographic order of subsets, `d(e_S) = Σ_t (−1)^t f_{s_t} e_{S∖s_t}`.
pub fn koszul(elems: &[Polynomial]) -> Result<FreeComplex, ComplexError> {
    let Some(first) = elems.first() else {
        return Err(ComplexError::Invariant("Koszul complex on no elements".into()));
    };
    let ring = first.ring().clone();
    let n = elems.len();
    let bases: Vec<Vec<Vec<usize>>> = (0..=n).map(|k| subsets(n, k)).collect();
    let mut diffs = Vec::new();
    for k in 1..=n {
        let index: HashMap<&Vec<usize>, usize> = bases[k - 1].iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut d = FreeModuleMatrix::zeros(&ring, bases[k - 1].len(), bases[k].len());
        for (col, s) in bases[k].iter().enumerate() {
            for t in 0..s.len() {
                let mut rest = s.clone();
                let i = rest.remove(t);
                let e = elems[i].to_ring(&ring)?;
                let term = if t % 2 == 0 { e } else { -&e };
                d.add_to(index[&rest], col, &term);
            }
        }
        diffs.push(d);
    }
    FreeComplex::new(
        &ring,
        bases.iter().map(Vec::len).collect(),
        diffs,
        bases.iter().enumerate().map(|(k, b)| vec![k as i64; b.len()]).collect(),
        bases.iter().map(|b| b.iter().map(|s| wedge_label(s)).collect()).collect(),
    )
}

/// Block layout of `(C ⊗ D)_k`: blocks `(i, k − i)` with `i` ascending, each
/// ordered with the `C` index major.
fn blocks(r1: &[usize], r2: &[usize], k: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    let mut off = 0;
    for i in 0..=k {
        let j = k - i;
        if i < r1.len() && j < r2.len() {
            out.push((i, j, off));
            off += r1[i] * r2[j];
        }
    }
    out
}

fn block_offset(layout: &[(usize, usize, usize)], i: usize, j: usize) -> usize {
    layout.iter().find(|b| b.0 == i && b.1 == j).expect("block present").2
}

/// Total complex of `C ⊗ D` with `d(a⊗b) = da⊗b + (−1)^{deg a} a⊗db`.
pub fn tensor(c1: &FreeComplex, c2: &FreeComplex) -> Result<FreeComplex, ComplexError> {
    if !PolyRing::same(c1.ring(), c2.ring()) {
        return Err(ComplexError::Invariant("tensor factors live in different rings".into()));
    }
    let ring = c1.ring().clone();
    let (r1, r2) = (c1.ranks(), c2.ranks());
    let top = c1.top() + c2.top();
    let mut ranks = Vec::new();
    let mut twists = Vec::new();
    let mut labels = Vec::new();
    for k in 0..=top {
        let layout = blocks(r1, r2, k);
        let mut rank = 0;
        let (mut tw, mut lb) = (Vec::new(), Vec::new());
        for &(i, j, _) in &layout {
            rank += r1[i] * r2[j];
            for p in 0..r1[i] {
                for q in 0..r2[j] {
                    tw.push(c1.twists(i)[p] + c2.twists(j)[q]);
                    lb.push(format!("{}|{}", c1.labels(i)[p], c2.labels(j)[q]));
                }
            }
        }
        if rank > MAX_RANK {
            return Err(ComplexError::Timeout(format!("tensor term of rank {rank} exceeds {MAX_RANK}")));
        }
        ranks.push(rank);
        twists.push(tw);
        labels.push(lb);
    }
    let mut diffs = Vec::new();
    for k in 1..=top {
        let src = blocks(r1, r2, k);
        let dst = blocks(r1, r2, k - 1);
        let mut d = FreeModuleMatrix::zeros(&ring, ranks[k - 1], ranks[k]);
        for &(i, j, off) in &src {
            if i >= 1 {
                let toff = block_offset(&dst, i - 1, j);
                let m = c1.d(i);
                for p in 0..r1[i] {
                    for a in 0..r1[i - 1] {
                        let e = m.get(a, p);
                        if e.is_zero() {
                            continue;
                        }
                        for q in 0..r2[j] {
                            d.set(toff + a * r2[j] + q, off + p * r2[j] + q, e.clone());
                        }
                    }
                }
            }
            if j >= 1 {
                let toff = block_offset(&dst, i, j - 1);
                let m = c2.d(j);
                for q in 0..r2[j] {
                    for b in 0..r2[j - 1] {
                        let e = m.get(b, q);
                        if e.is_zero() {
                            continue;
                        }
                        let e = if i % 2 == 0 { e.clone() } else { -e };
                        for p in 0..r1[i] {
                            d.set(toff + p * r2[j - 1] + b, off + p * r2[j] + q, e.clone());
                        }
                    }
                }
            }
        }
        diffs.push(d);
    }
    FreeComplex::new(&ring, ranks, diffs, twists, labels)
}

/// `φ ⊗ ψ` between the tensor products of the sources and of the targets.
pub fn tensor_morphism(f: &ComplexMorphism, g: &ComplexMorphism) -> Result<ComplexMorphism, ComplexError> {
    let source = tensor(&f.source, &g.source)?;
    let target = tensor(&f.target, &g.target)?;
    let ring = source.ring().clone();
    let top = source.top().min(target.top());
    let (s1, s2) = (f.source.ranks(), g.source.ranks());
    let (t1, t2) = (f.target.ranks(), g.target.ranks());
    let mut maps = Vec::new();
    for k in 0..=top {
        let sl = blocks(s1, s2, k);
        let tl = blocks(t1, t2, k);
        let mut m = FreeModuleMatrix::zeros(&ring, target.rank(k), source.rank(k));
        for &(i, j, soff) in &sl {
            if i > f.top() || j > g.top() {
                continue;
            }
            let toff = block_offset(&tl, i, j);
            let (a, b) = (&f.maps[i], &g.maps[j]);
            for p in 0..s1[i] {
                for q in 0..s2[j] {
                    for x in 0..t1[i] {
                        let e1 = a.get(x, p);
                        if e1.is_zero() {
                            continue;
                        }
                        for y in 0..t2[j] {
                            let e2 = b.get(y, q);
                            if e2.is_zero() {
                                continue;
                            }
                            m.set(toff + x * t2[j] + y, soff + p * s2[j] + q, e1 * e2);
                        }
                    }
                }
            }
        }
        maps.push(m);
    }
    ComplexMorphism::new(source, target, maps)
}

fn eval_matrix(m: &FreeModuleMatrix, fp_ring: &Ring, point: &[Coeff]) -> Result<Vec<Vec<u64>>, ComplexError> {
    let mut out = vec![vec![0u64; m.cols()]; m.rows()];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            let e = m.get(i, j);
            if e.is_zero() {
                continue;
            }
            let v = e.to_ring(fp_ring)?.evaluate_dense(point);
            *x = v.as_residue().expect("prime-field value");
        }
    }
    Ok(out)
}

/// Dimensions of `H_k` of the complex of `𝔽_p`-vector spaces obtained by
/// evaluating every differential at `point` (one residue per variable).
pub fn homology_at_point(c: &FreeComplex, p: u64, point: &[u64]) -> Result<Vec<usize>, ComplexError> {
    let f = Fp::new(p)?;
    let fp_ring = c.ring().with_coeffs(CoefficientRing::prime_field(p)?);
    if point.len() != fp_ring.nvars() {
        return Err(ComplexError::Invariant(format!(
            "point has {} coordinates, ring has {} variables",
            point.len(),
            fp_ring.nvars()
        )));
    }
    let pt: Vec<Coeff> = point.iter().map(|&x| Coeff::P(x % p)).collect();
    let mut ranks = vec![0usize; c.top() + 2];
    for (k, rank) in ranks.iter_mut().enumerate().take(c.top() + 1).skip(1) {
        *rank = f.rank(&eval_matrix(c.d(k), &fp_ring, &pt)?);
    }
    Ok((0..=c.top())
        .map(|k| c.rank(k) - ranks[k] - ranks[k + 1])
        .collect())
}

/// Homology dimensions at `count` random points drawn from `seed`, computed
/// in parallel.
pub fn homology_at_random_points(
    c: &FreeComplex,
    p: u64,
    count: usize,
    seed: u64,
) -> Result<Vec<Vec<usize>>, ComplexError> {
    let n = c.ring().nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Vec<u64>> = (0..count)
        .map(|_| (0..n).map(|_| rng.gen_range(0..p)).collect())
        .collect();
    points.par_iter().map(|pt| homology_at_point(c, p, pt)).collect()
}

/// Kernel generators of `d_1` and the ones outside the image of `d_2`.
#[derive(Clone, Debug)]
pub struct H1Report {
    pub kernel_generators: Vec<Vec<Polynomial>>,
    pub h1_generators: Vec<Vec<Polynomial>>,
    pub is_exact_at_1: bool,
}

/// Exactness at degree 1 by syzygies of `d_1` and module membership in the
/// column space of `d_2`.
pub fn symbolic_h1(c: &FreeComplex) -> Result<H1Report, ComplexError> {
    if c.top() < 1 {
        return Err(ComplexError::Invariant("complex has no degree-1 term".into()));
    }
    let kernel = syzygies(c.d(1))?;
    let rank1 = c.rank(1);
    let image: Vec<Vec<Polynomial>> = if c.top() >= 2 {
        let d2 = c.d(2);
        (0..d2.cols())
            .map(|j| d2.column(j))
            .filter(|v| v.iter().any(|p| !p.is_zero()))
            .collect()
    } else {
        Vec::new()
    };
    let mut outside = Vec::new();
    if image.is_empty() {
        outside = kernel.iter().filter(|v| v.iter().any(|p| !p.is_zero())).cloned().collect();
    } else {
        let basis = ModuleBasis::new(c.ring(), rank1, &image)?;
        for v in &kernel {
            if !basis.contains(v)? {
                outside.push(v.clone());
            }
        }
    }
    Ok(H1Report {
        is_exact_at_1: outside.is_empty(),
        kernel_generators: kernel,
        h1_generators: outside,
    })
}
