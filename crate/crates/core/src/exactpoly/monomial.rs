use std::cmp::Ordering;

/// Dense exponent vector indexed by variable id, with cached total degree.
/// Missing trailing variables read as exponent zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u16]>,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars].into_boxed_slice(),
            deg: 0,
        }
    }

    pub fn from_exps(exps: Vec<u16>) -> Self {
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial {
            exps: exps.into_boxed_slice(),
            deg,
        }
    }

    pub fn var(nvars: usize, id: usize, e: u16) -> Self {
        let mut v = vec![0; nvars];
        v[id] = e;
        Self::from_exps(v)
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn exp(&self, id: usize) -> u16 {
        self.exps.get(id).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Nonzero (variable, exponent) pairs.
    pub fn support(&self) -> impl Iterator<Item = (usize, u16)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i, e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps: Box<[u16]> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial {
            exps,
            deg: self.deg + other.deg,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let exps: Box<[u16]> = other
            .exps
            .iter()
            .zip(self.exps.iter())
            .map(|(a, b)| a - b)
            .collect();
        Monomial {
            exps,
            deg: other.deg - self.deg,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u16> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial::from_exps(exps)
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Copy padded with zeros up to `nvars` variables.
    pub fn padded(&self, nvars: usize) -> Monomial {
        let mut v = self.exps.to_vec();
        v.resize(nvars, 0);
        Monomial {
            exps: v.into_boxed_slice(),
            deg: self.deg,
        }
    }
}

/// How the variables of a block order are grouped. Blocks are compared in
/// sequence; inside a block monomials compare by weighted degree, then
/// reverse-lexicographically. Variables not listed form a trailing block.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockSpec {
    blocks: Vec<Vec<usize>>,
    weights: Option<Vec<u32>>,
}

impl BlockSpec {
    pub fn new(mut blocks: Vec<Vec<usize>>, nvars: usize) -> Self {
        let mut seen = vec![false; nvars];
        for b in &blocks {
            for &v in b {
                if v < nvars {
                    seen[v] = true;
                }
            }
        }
        let rest: Vec<usize> = (0..nvars).filter(|&v| !seen[v]).collect();
        if !rest.is_empty() {
            blocks.push(rest);
        }
        BlockSpec {
            blocks,
            weights: None,
        }
    }

    pub fn with_weights(mut self, weights: Vec<u32>) -> Self {
        self.weights = Some(weights);
        self
    }

    /// Covers variables `old..nvars` (appended to a table) with one new final
    /// block, so they rank below everything already ordered.
    pub fn extended_to(&self, nvars: usize) -> BlockSpec {
        let covered: usize = self.blocks.iter().map(|b| b.len()).sum();
        let mut blocks = self.blocks.clone();
        if nvars > covered {
            blocks.push((covered..nvars).collect());
        }
        BlockSpec {
            blocks,
            weights: self.weights.clone(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    fn weight(&self, v: usize) -> u64 {
        self.weights
            .as_ref()
            .and_then(|ws| ws.get(v).copied())
            .unwrap_or(1) as u64
    }

    fn cmp_block(&self, vars: &[usize], a: &Monomial, b: &Monomial) -> Ordering {
        let (mut da, mut db) = (0u64, 0u64);
        for &v in vars {
            da += a.exp(v) as u64 * self.weight(v);
            db += b.exp(v) as u64 * self.weight(v);
        }
        match da.cmp(&db) {
            Ordering::Equal => {}
            o => return o,
        }
        for &v in vars.iter().rev() {
            match a.exp(v).cmp(&b.exp(v)) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    DegRevLex,
    WeightedBlock(BlockSpec),
}

impl MonomialOrder {
    /// Elimination order: the variables in `first` dominate everything else.
    pub fn eliminating(first: Vec<usize>, nvars: usize) -> MonomialOrder {
        MonomialOrder::WeightedBlock(BlockSpec::new(vec![first], nvars))
    }

    /// The same order on a table with variables appended; block orders put
    /// the new variables in a final block.
    pub fn extended_to(&self, nvars: usize) -> MonomialOrder {
        match self {
            MonomialOrder::WeightedBlock(spec) => MonomialOrder::WeightedBlock(spec.extended_to(nvars)),
            o => o.clone(),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => {
                for (x, y) in a.exps.iter().zip(b.exps.iter()) {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::DegRevLex => {
                match a.deg.cmp(&b.deg) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for (x, y) in a.exps.iter().zip(b.exps.iter()).rev() {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::WeightedBlock(spec) => {
                for blk in &spec.blocks {
                    match spec.cmp_block(blk, a, b) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
                Ordering::Equal
            }
        }
    }
}
