use std::fmt;

use crate::exactpoly::{PolyError, PolyRing, Polynomial, Ring};

/// Dense matrix of polynomials; row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct FreeModuleMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl FreeModuleMatrix {
    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        FreeModuleMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Polynomial>>) -> Result<Self, PolyError> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(PolyError::Structural("ragged matrix rows".into()));
            }
            for p in row {
                if !PolyRing::same(p.ring(), ring) {
                    return Err(PolyError::Structural("matrix entry in a different ring".into()));
                }
                entries.push(p);
            }
        }
        Ok(FreeModuleMatrix {
            ring: ring.clone(),
            rows: r,
            cols: c,
            entries,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn add_to(&mut self, i: usize, j: usize, p: &Polynomial) {
        let k = i * self.cols + j;
        self.entries[k] = &self.entries[k] + p;
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Polynomial> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    /// `self * other`; an empty inner dimension gives the zero matrix.
    pub fn mul(&self, other: &FreeModuleMatrix) -> FreeModuleMatrix {
        assert_eq!(self.cols, other.rows, "matrix size mismatch");
        let mut out = Self::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        out.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.ring.zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn to_ring(&self, ring: &Ring) -> Result<FreeModuleMatrix, PolyError> {
        Ok(FreeModuleMatrix {
            ring: ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|p| p.to_ring(ring))
                .collect::<Result<_, _>>()?,
        })
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial, ring: &Ring) -> FreeModuleMatrix {
        FreeModuleMatrix {
            ring: ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Determinant by Laplace expansion along rows, memoised on column sets.
    /// Division-free, so it works over any coefficient ring.
    pub fn det(&self) -> Polynomial {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return self.ring.one();
        }
        assert!(n <= 20, "matrix too large for subset expansion");
        // minors[S] = det of rows (n-|S|..n) restricted to columns S
        let mut minors: std::collections::HashMap<u32, Polynomial> = std::collections::HashMap::new();
        minors.insert(0, self.ring.one());
        for size in 1..=n {
            let row = n - size;
            let mut next = std::collections::HashMap::new();
            for (&set, _) in minors.iter().filter(|(s, _)| s.count_ones() as usize == size - 1) {
                for col in 0..n {
                    if set & (1 << col) != 0 {
                        continue;
                    }
                    let ns = set | (1 << col);
                    if next.contains_key(&ns) {
                        continue;
                    }
                    // expand rows row.. over columns ns along the first row
                    let mut acc = self.ring.zero();
                    let mut sign_pos = 0;
                    for c in 0..n {
                        if ns & (1 << c) == 0 {
                            continue;
                        }
                        let a = self.get(row, c);
                        if !a.is_zero() {
                            if let Some(sub) = minors.get(&(ns & !(1 << c))) {
                                if !sub.is_zero() {
                                    let t = a * sub;
                                    acc = if sign_pos % 2 == 0 { &acc + &t } else { &acc - &t };
                                }
                            }
                        }
                        sign_pos += 1;
                    }
                    next.insert(ns, acc);
                }
            }
            minors = next;
        }
        minors.remove(&((1u32 << n) - 1)).unwrap_or_else(|| self.ring.zero())
    }
}

impl fmt::Debug for FreeModuleMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
