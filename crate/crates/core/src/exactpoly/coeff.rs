use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::PolyError;

/// Largest modulus accepted for prime fields; products of two residues fit in a u64.
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientRing {
    Integers,
    Rationals,
    PrimeField(u64),
}

/// A coefficient value. Integers and rationals share the `Q` representation
/// (integers always have denominator one); prime-field residues live in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Q(BigRational),
    P(u64),
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl CoefficientRing {
    pub fn prime_field(p: u64) -> Result<Self, PolyError> {
        if !is_prime(p) {
            return Err(PolyError::Structural(format!("{p} is not prime")));
        }
        if p >= MAX_PRIME {
            return Err(PolyError::Structural(format!("prime {p} exceeds 2^31")));
        }
        Ok(CoefficientRing::PrimeField(p))
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoefficientRing::Integers)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoefficientRing::PrimeField(p) => *p,
            _ => 0,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            CoefficientRing::PrimeField(_) => Coeff::P(0),
            _ => Coeff::Q(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            CoefficientRing::PrimeField(_) => Coeff::P(1),
            _ => Coeff::Q(BigRational::one()),
        }
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match self {
            CoefficientRing::PrimeField(p) => {
                let r = v.rem_euclid(*p as i64);
                Coeff::P(r as u64)
            }
            _ => Coeff::Q(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coeff {
        match self {
            CoefficientRing::PrimeField(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                Coeff::P(r.to_u64().expect("residue fits"))
            }
            _ => Coeff::Q(BigRational::from_integer(v.clone())),
        }
    }

    /// Maps a rational into this ring. Fails for non-integral values over the
    /// integers and for denominators divisible by p.
    pub fn from_rational(&self, v: &BigRational) -> Result<Coeff, PolyError> {
        match self {
            CoefficientRing::Integers => {
                if v.is_integer() {
                    Ok(Coeff::Q(v.clone()))
                } else {
                    Err(PolyError::Structural(format!("{v} is not an integer")))
                }
            }
            CoefficientRing::Rationals => Ok(Coeff::Q(v.clone())),
            CoefficientRing::PrimeField(p) => {
                let n = self.from_bigint(v.numer());
                let d = self.from_bigint(v.denom());
                if self.is_zero(&d) {
                    return Err(PolyError::Structural(format!(
                        "denominator of {v} vanishes mod {p}"
                    )));
                }
                Ok(self.mul(&n, &self.inv(&d)))
            }
        }
    }

    /// Re-expresses a coefficient of `from` in `self` (ℤ→ℚ lift, ℚ→𝔽_p reduction).
    pub fn convert(&self, c: &Coeff) -> Result<Coeff, PolyError> {
        match c {
            Coeff::Q(q) => self.from_rational(q),
            Coeff::P(v) => match self {
                CoefficientRing::PrimeField(_) => Ok(Coeff::P(*v)),
                _ => Err(PolyError::Structural(
                    "cannot lift a prime-field residue to characteristic zero".into(),
                )),
            },
        }
    }

    pub fn is_zero(&self, c: &Coeff) -> bool {
        match c {
            Coeff::Q(q) => q.is_zero(),
            Coeff::P(v) => *v == 0,
        }
    }

    pub fn is_one(&self, c: &Coeff) -> bool {
        match c {
            Coeff::Q(q) => q.is_one(),
            Coeff::P(v) => *v == 1,
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b, self) {
            (Coeff::Q(x), Coeff::Q(y), _) => Coeff::Q(x + y),
            (Coeff::P(x), Coeff::P(y), CoefficientRing::PrimeField(p)) => Coeff::P((x + y) % p),
            _ => panic!("coefficient kind mismatch"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b, self) {
            (Coeff::Q(x), Coeff::Q(y), _) => Coeff::Q(x - y),
            (Coeff::P(x), Coeff::P(y), CoefficientRing::PrimeField(p)) => {
                Coeff::P((x + p - y) % p)
            }
            _ => panic!("coefficient kind mismatch"),
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b, self) {
            (Coeff::Q(x), Coeff::Q(y), _) => Coeff::Q(x * y),
            (Coeff::P(x), Coeff::P(y), CoefficientRing::PrimeField(p)) => Coeff::P(x * y % p),
            _ => panic!("coefficient kind mismatch"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (a, self) {
            (Coeff::Q(x), _) => Coeff::Q(-x),
            (Coeff::P(x), CoefficientRing::PrimeField(p)) => Coeff::P((p - x) % p),
            _ => panic!("coefficient kind mismatch"),
        }
    }

    /// Multiplicative inverse. Panics on zero or when called over the integers
    /// with a non-unit.
    pub fn inv(&self, a: &Coeff) -> Coeff {
        match (a, self) {
            (Coeff::Q(x), CoefficientRing::Rationals) => Coeff::Q(x.recip()),
            (Coeff::Q(x), CoefficientRing::Integers) => {
                assert!(x.abs().is_one(), "non-unit inverse over the integers");
                Coeff::Q(x.clone())
            }
            (Coeff::P(x), CoefficientRing::PrimeField(p)) => {
                assert!(*x != 0, "inverse of zero");
                Coeff::P(mod_pow(*x, p - 2, *p))
            }
            _ => panic!("coefficient kind mismatch"),
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.mul(a, &self.inv(b))
    }

    pub fn pow(&self, a: &Coeff, e: u32) -> Coeff {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// True when the coefficient is "negative" for sign normalisation purposes.
    /// Residues are never negative.
    pub fn is_negative(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Q(q) => q.is_negative(),
            Coeff::P(_) => false,
        }
    }

    pub fn parse(&self, s: &str) -> Result<Coeff, PolyError> {
        let q = parse_rational(s)?;
        self.from_rational(&q)
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational, PolyError> {
    let bad = || PolyError::Parse(format!("bad number '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Coeff::P(v) => write!(f, "{v}"),
        }
    }
}

impl Coeff {
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Coeff::Q(q) => Some(q),
            Coeff::P(_) => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match self {
            Coeff::P(v) => Some(*v),
            Coeff::Q(_) => None,
        }
    }
}
