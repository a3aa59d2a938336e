//! Dense linear algebra over a prime field `𝔽_p`, `p < 2³¹`.

use crate::exactpoly::{is_prime, PolyError, MAX_PRIME};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

pub type Matrix = Vec<Vec<u64>>;

/// 2×2 matrix stored row-major as `[a, b, c, d]`.
pub type M2 = [u64; 4];

impl Fp {
    pub fn new(p: u64) -> Result<Self, PolyError> {
        if p == 2 || !is_prime(p) || p >= MAX_PRIME {
            return Err(PolyError::Structural(format!(
                "{p} is not an odd prime below 2^31"
            )));
        }
        Ok(Fp { p })
    }

    pub fn reduce(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero");
        self.pow(a, self.p - 2)
    }

    /// A square root of `a`, if one exists (Tonelli–Shanks).
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let p = self.p;
        let a = a % p;
        if a == 0 {
            return Some(0);
        }
        if self.pow(a, (p - 1) / 2) != 1 {
            return None;
        }
        let (mut q, mut s) = (p - 1, 0);
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let mut z = 2;
        while self.pow(z, (p - 1) / 2) != p - 1 {
            z += 1;
        }
        let mut m = s;
        let mut c = self.pow(z, q);
        let mut t = self.pow(a, q);
        let mut r = self.pow(a, q.div_ceil(2));
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = self.mul(tt, tt);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.mul(b, b);
            }
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r)
    }

    /// `row −= f·pivot`.
    fn axpy(&self, row: &mut [u64], f: u64, pivot: &[u64]) {
        for (x, &p) in row.iter_mut().zip(pivot) {
            *x = self.sub(*x, self.mul(f, p));
        }
    }

    /// Row-reduced echelon form and pivot columns.
    pub fn rref(&self, m: &Matrix) -> (Matrix, Vec<usize>) {
        let mut a = m.clone();
        let rows = a.len();
        let cols = a.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..cols {
            if pr == rows {
                break;
            }
            let Some(k) = (pr..rows).find(|&i| a[i][c] != 0) else {
                continue;
            };
            a.swap(pr, k);
            let inv = self.inv(a[pr][c]);
            for x in a[pr].iter_mut() {
                *x = self.mul(*x, inv);
            }
            let pivot = a[pr].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != pr && row[c] != 0 {
                    let f = row[c];
                    self.axpy(row, f, &pivot);
                }
            }
            pivots.push(c);
            pr += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self, m: &Matrix) -> usize {
        self.rref(m).1.len()
    }

    /// Basis of `{x : m x = 0}`, one vector per free column.
    pub fn nullspace(&self, m: &Matrix, cols: usize) -> Vec<Vec<u64>> {
        let (a, pivots) = self.rref(m);
        let mut out = Vec::new();
        for f in (0..cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0; cols];
            v[f] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = self.neg(a[row][f]);
            }
            out.push(v);
        }
        out
    }

    /// A solution of `m x = b` with every free variable set to zero.
    pub fn solve(&self, m: &Matrix, b: &[u64]) -> Option<Vec<u64>> {
        let cols = m.first().map_or(0, |r| r.len());
        let aug: Matrix = m
            .iter()
            .zip(b)
            .map(|(row, &bi)| {
                let mut r = row.clone();
                r.push(bi);
                r
            })
            .collect();
        let (a, pivots) = self.rref(&aug);
        if pivots.contains(&cols) {
            return None;
        }
        let mut x = vec![0; cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = a[row][cols];
        }
        Some(x)
    }

    pub fn det(&self, m: &Matrix) -> u64 {
        let n = m.len();
        let mut a = m.clone();
        let mut det = 1;
        for c in 0..n {
            let Some(k) = (c..n).find(|&i| a[i][c] != 0) else {
                return 0;
            };
            if k != c {
                a.swap(k, c);
                det = self.neg(det);
            }
            det = self.mul(det, a[c][c]);
            let inv = self.inv(a[c][c]);
            let pivot = a[c].clone();
            for row in a.iter_mut().skip(c + 1) {
                if row[c] != 0 {
                    let f = self.mul(row[c], inv);
                    self.axpy(row, f, &pivot);
                }
            }
        }
        det
    }

    pub fn mat_vec(&self, m: &Matrix, v: &[u64]) -> Vec<u64> {
        m.iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| self.add(acc, self.mul(a, b)))
            })
            .collect()
    }

    pub fn m2_mul(&self, x: &M2, y: &M2) -> M2 {
        [
            self.add(self.mul(x[0], y[0]), self.mul(x[1], y[2])),
            self.add(self.mul(x[0], y[1]), self.mul(x[1], y[3])),
            self.add(self.mul(x[2], y[0]), self.mul(x[3], y[2])),
            self.add(self.mul(x[2], y[1]), self.mul(x[3], y[3])),
        ]
    }

    pub fn m2_det(&self, x: &M2) -> u64 {
        self.sub(self.mul(x[0], x[3]), self.mul(x[1], x[2]))
    }

    pub fn m2_inv(&self, x: &M2) -> Option<M2> {
        let d = self.m2_det(x);
        if d == 0 {
            return None;
        }
        let i = self.inv(d);
        Some([
            self.mul(x[3], i),
            self.mul(self.neg(x[1]), i),
            self.mul(self.neg(x[2]), i),
            self.mul(x[0], i),
        ])
    }

    /// `x + s·Id`.
    pub fn m2_shift(&self, x: &M2, s: u64) -> M2 {
        [self.add(x[0], s), x[1], x[2], self.add(x[3], s)]
    }

    pub fn m2_scale(&self, x: &M2, s: u64) -> M2 {
        [
            self.mul(x[0], s),
            self.mul(x[1], s),
            self.mul(x[2], s),
            self.mul(x[3], s),
        ]
    }

    pub fn m2_sub(&self, x: &M2, y: &M2) -> M2 {
        [
            self.sub(x[0], y[0]),
            self.sub(x[1], y[1]),
            self.sub(x[2], y[2]),
            self.sub(x[3], y[3]),
        ]
    }

    /// Eigenlines of `x` defined over `𝔽_p`, as direction vectors. A scalar
    /// matrix returns `None` (every line is an eigenline).
    pub fn eigenlines(&self, x: &M2) -> Option<Vec<[u64; 2]>> {
        if x[1] == 0 && x[2] == 0 && x[0] == x[3] {
            return None;
        }
        let tr = self.add(x[0], x[3]);
        let disc = self.sub(self.mul(tr, tr), self.mul(4, self.m2_det(x)));
        let Some(sq) = self.sqrt(disc) else {
            return Some(vec![]);
        };
        let half = self.inv(2);
        let mut roots = vec![self.mul(self.add(tr, sq), half)];
        if sq != 0 {
            roots.push(self.mul(self.sub(tr, sq), half));
        }
        let mut lines = Vec::new();
        for l in roots {
            // (x − l) v = 0; x − l has rank 1 since x is not scalar
            let (a, b, c, d) = (self.sub(x[0], l), x[1], x[2], self.sub(x[3], l));
            let v = if a != 0 || b != 0 {
                [b, self.neg(a)]
            } else {
                [d, self.neg(c)]
            };
            lines.push(v);
        }
        Some(lines)
    }

    /// `v` is an eigenvector of `x`.
    pub fn fixes_line(&self, x: &M2, v: &[u64; 2]) -> bool {
        let w0 = self.add(self.mul(x[0], v[0]), self.mul(x[1], v[1]));
        let w1 = self.add(self.mul(x[2], v[0]), self.mul(x[3], v[1]));
        self.sub(self.mul(w0, v[1]), self.mul(w1, v[0])) == 0
    }

    /// No line of `𝔽_p²` is stable under every matrix in `mats`.
    pub fn irreducible(&self, mats: &[M2]) -> bool {
        let Some(lines) = mats.iter().find_map(|m| self.eigenlines(m)) else {
            return false;
        };
        !lines
            .iter()
            .any(|v| mats.iter().all(|m| self.fixes_line(m, v)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_roots() {
        let f = Fp::new(10007).unwrap();
        for a in [1u64, 4, 9, 10006, 1234] {
            if let Some(r) = f.sqrt(a) {
                assert_eq!(f.mul(r, r), a % f.p);
            }
        }
        let f = Fp::new(17).unwrap();
        let squares: Vec<u64> = (1..17).map(|x| x * x % 17).collect();
        for a in 1..17 {
            assert_eq!(f.sqrt(a).is_some(), squares.contains(&a), "{a}");
        }
    }

    #[test]
    fn solve_and_nullspace() {
        let f = Fp::new(7).unwrap();
        let m = vec![vec![1, 2, 3], vec![2, 4, 6]];
        assert_eq!(f.rank(&m), 1);
        let ns = f.nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(f.mat_vec(&m, v).iter().all(|&x| x == 0));
        }
        let x = f.solve(&m, &[1, 2]).unwrap();
        assert_eq!(f.mat_vec(&m, &x), vec![1, 2]);
        assert!(f.solve(&m, &[1, 1]).is_none());
        assert_eq!(f.det(&vec![vec![1, 2], vec![3, 4]]), f.reduce(-2));
    }

    #[test]
    fn irreducibility() {
        let f = Fp::new(101).unwrap();
        let lower: M2 = [2, 0, 5, 3];
        let lower2: M2 = [7, 0, 1, 9];
        assert!(!f.irreducible(&[lower, lower2]));
        let upper: M2 = [2, 1, 0, 3];
        assert!(f.irreducible(&[lower, upper]));
        // rotation-like matrix with no eigenvalues in F_103 (−1 is not a square mod 103)
        let g = Fp::new(103).unwrap();
        assert!(g.irreducible(&[[0, 1, 102, 0]]));
        assert!(!f.irreducible(&[[3, 0, 0, 3]]));
    }
}
