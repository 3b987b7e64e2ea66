use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::LinalgError;

/// Exact field element. Over a prime field the value is always an integer in `[0, p)`.
pub type Scalar = BigRational;

/// Largest supported prime; products of two residues must fit in a `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// The ground field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// Checked constructor for `𝔽_p`.
    pub fn prime(p: u64) -> Result<Field, LinalgError> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.reduce(&Scalar::from_integer(BigInt::from(v)))
    }

    /// Canonical representative. Panics if a denominator vanishes mod p, which
    /// cannot happen for values produced inside the field.
    pub fn reduce(&self, x: &Scalar) -> Scalar {
        match self {
            Field::Rationals => x.clone(),
            Field::Prime(p) => {
                let p_big = BigInt::from(*p);
                let num = x.numer().mod_floor(&p_big).to_u64().unwrap();
                let den = x.denom().mod_floor(&p_big).to_u64().unwrap();
                assert!(den != 0, "denominator divisible by {p}");
                let v = num * mod_inverse(den, *p) % p;
                Scalar::from_integer(BigInt::from(v))
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a + b,
            Field::Prime(p) => residue(residue_of(a) + residue_of(b), *p),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a - b,
            Field::Prime(p) => residue(residue_of(a) + p - residue_of(b), *p),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a * b,
            Field::Prime(p) => residue(residue_of(a) * residue_of(b), *p),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match self {
            Field::Rationals => -a,
            Field::Prime(p) => residue(p - residue_of(a), *p),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match self {
            Field::Rationals => Some(a.recip()),
            Field::Prime(p) => Some(residue(mod_inverse(residue_of(a), *p), *p)),
        }
    }

    /// Parses `"3/4"`, `"-2"` or `"5"`; over `𝔽_p` the value is reduced mod p.
    pub fn parse(&self, s: &str) -> Result<Scalar, LinalgError> {
        let t = s.trim();
        let bad = || LinalgError::BadScalar(s.to_string());
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<BigInt>().map_err(|_| bad())?,
                d.trim().parse::<BigInt>().map_err(|_| bad())?,
            ),
            None => (t.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(bad());
        }
        if let Field::Prime(p) = self {
            if den.mod_floor(&BigInt::from(*p)).is_zero() {
                return Err(bad());
            }
        }
        Ok(self.reduce(&BigRational::new(num, den)))
    }

    /// Inverse of [`Field::parse`] on canonical values.
    pub fn format(&self, x: &Scalar) -> String {
        if x.is_integer() {
            x.numer().to_string()
        } else {
            format!("{}/{}", x.numer(), x.denom())
        }
    }

    /// Pivot cost used by elimination: bit size of numerator and denominator.
    pub(crate) fn cost(&self, x: &Scalar) -> u64 {
        match self {
            Field::Rationals => x.numer().abs().bits() + x.denom().bits(),
            Field::Prime(_) => 0,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl std::str::FromStr for Field {
    type Err = LinalgError;

    /// Accepts `Q` or `GF(p)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "Q" {
            return Ok(Field::Rationals);
        }
        if let Some(inner) = t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
            let p: u64 = inner
                .trim()
                .parse()
                .map_err(|_| LinalgError::BadField(s.to_string()))?;
            return Field::prime(p);
        }
        Err(LinalgError::BadField(s.to_string()))
    }
}

fn residue_of(x: &Scalar) -> u64 {
    x.numer().to_u64().expect("prime field element out of range")
}

fn residue(v: u64, p: u64) -> Scalar {
    Scalar::from_integer(BigInt::from(v % p))
}

pub(crate) fn mod_inverse(a: u64, p: u64) -> u64 {
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_rationals() {
        let q = Field::Rationals;
        let x = q.parse("6/8").unwrap();
        assert_eq!(q.format(&x), "3/4");
        assert_eq!(q.format(&q.parse("-2").unwrap()), "-2");
        assert!(q.parse("1/0").is_err());
        assert!(q.parse("x").is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let three = f.from_i64(3);
        let inv = f.inv(&three).unwrap();
        assert_eq!(f.mul(&three, &inv), f.one());
        assert_eq!(f.from_i64(-1), f.from_i64(6));
        assert_eq!(f.parse("1/2").unwrap(), f.from_i64(4));
        assert!(f.parse("1/7").is_err());
        assert_eq!(f.neg(&f.zero()), f.zero());
    }

    #[test]
    fn field_strings() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rationals);
        assert_eq!("GF(5)".parse::<Field>().unwrap(), Field::Prime(5));
        assert!("GF(6)".parse::<Field>().is_err());
        assert_eq!(Field::Prime(5).to_string(), "GF(5)");
    }
}
