//! Exact scalar arithmetic.
//!
//! Three kinds of scalars are supported: rationals, the small cyclotomic
//! fields `Q(ζ_n)` for `n ∈ {1, 2, 3, 4, 6}` and prime fields `F_q`. A
//! computation fixes one [`Field`] up front and every scalar it produces
//! belongs to that field. Combining scalars of different kinds through the
//! arithmetic operators panics; the `checked_*` methods report the mismatch
//! as [`Error::KindMismatch`] instead.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// The cyclotomic orders for which `Q(ζ_n)` is implemented.
pub const CYCLOTOMIC_ORDERS: [u8; 5] = [1, 2, 3, 4, 6];

/// Scalar field selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    /// `Q(ζ_n)`; `n` is one of [`CYCLOTOMIC_ORDERS`].
    Cyclotomic(u8),
    /// `F_q` for a prime `q`.
    Prime(u64),
}

/// `a + b·ζ` in `Q(ζ_n)`, reduced modulo the `n`-th cyclotomic polynomial.
///
/// For `n ≤ 2` the polynomial is linear and `b` is always zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    order: u8,
    a: BigRational,
    b: BigRational,
}

/// Residue class modulo a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeFieldElem {
    modulus: u64,
    residue: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Cyclotomic(Cyclotomic),
    Prime(PrimeFieldElem),
}

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Cyclotomic {
    /// `ζ² = m0 + m1·ζ` for the quadratic cases.
    fn square_rule(order: u8) -> (i64, i64) {
        match order {
            3 => (-1, -1),
            4 => (-1, 0),
            6 => (-1, 1),
            _ => (0, 0),
        }
    }

    fn degree(order: u8) -> usize {
        if order <= 2 {
            1
        } else {
            2
        }
    }

    pub fn new(order: u8, a: BigRational, b: BigRational) -> Result<Self> {
        if !CYCLOTOMIC_ORDERS.contains(&order) {
            return Err(Error::InvalidParameters(format!(
                "cyclotomic order {order} not supported"
            )));
        }
        if Self::degree(order) == 1 && !b.is_zero() {
            // ζ_1 = 1 and ζ_2 = -1 are rational.
            let z = if order == 1 { rat(1) } else { rat(-1) };
            return Ok(Cyclotomic {
                order,
                a: a + b * z,
                b: BigRational::zero(),
            });
        }
        Ok(Cyclotomic { order, a, b })
    }

    pub fn order(&self) -> u8 {
        self.order
    }

    /// Coefficients `(a, b)` of `a + b·ζ`.
    pub fn coefficients(&self) -> (&BigRational, &BigRational) {
        (&self.a, &self.b)
    }

    fn mul(&self, other: &Self) -> Self {
        let (m0, m1) = Self::square_rule(self.order);
        let bd = &self.b * &other.b;
        let a = &self.a * &other.a + &bd * rat(m0);
        let b = &self.a * &other.b + &self.b * &other.a + &bd * rat(m1);
        Cyclotomic {
            order: self.order,
            a,
            b,
        }
    }

    fn inv(&self) -> Result<Self> {
        if self.a.is_zero() && self.b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // Multiplication by a + bζ has matrix [[a, m0 b], [b, a + m1 b]] in
        // the basis (1, ζ); invert it and read off the image of 1.
        let (m0, m1) = Self::square_rule(self.order);
        let p = self.a.clone();
        let q = &self.b * rat(m0);
        let r = self.b.clone();
        let s = &self.a + &self.b * rat(m1);
        let det = &p * &s - &q * &r;
        Ok(Cyclotomic {
            order: self.order,
            a: &s / &det,
            b: -(&r / &det),
        })
    }
}

impl PrimeFieldElem {
    pub fn new(value: i64, modulus: u64) -> Result<Self> {
        if !is_prime(modulus) {
            return Err(Error::InvalidParameters(format!(
                "modulus {modulus} is not prime"
            )));
        }
        let m = modulus as i128;
        let residue = (((value as i128) % m + m) % m) as u64;
        Ok(PrimeFieldElem { modulus, residue })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    fn mul(&self, o: &Self) -> Self {
        let r = (self.residue as u128 * o.residue as u128) % self.modulus as u128;
        PrimeFieldElem {
            modulus: self.modulus,
            residue: r as u64,
        }
    }

    fn inv(&self) -> Result<Self> {
        if self.residue == 0 {
            return Err(Error::DivisionByZero);
        }
        let g = (self.residue as i128).extended_gcd(&(self.modulus as i128));
        PrimeFieldElem::new(g.x as i64, self.modulus).map(|mut e| {
            e.residue %= self.modulus;
            e
        })
    }
}

impl Field {
    pub fn cyclotomic(order: u8) -> Result<Field> {
        if CYCLOTOMIC_ORDERS.contains(&order) {
            Ok(Field::Cyclotomic(order))
        } else {
            Err(Error::InvalidParameters(format!(
                "cyclotomic order {order} not supported"
            )))
        }
    }

    pub fn prime(q: u64) -> Result<Field> {
        if is_prime(q) {
            Ok(Field::Prime(q))
        } else {
            Err(Error::InvalidParameters(format!("{q} is not prime")))
        }
    }

    /// Parses `rational`, `cyclotomic:n` or `prime:q`.
    pub fn parse(text: &str) -> Result<Field> {
        let text = text.trim();
        if text == "rational" || text == "Q" {
            return Ok(Field::Rational);
        }
        if let Some(n) = text.strip_prefix("cyclotomic:") {
            let n: u8 = n
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad cyclotomic order in `{text}`")))?;
            return Field::cyclotomic(n);
        }
        if let Some(q) = text.strip_prefix("prime:") {
            let q: u64 = q
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad modulus in `{text}`")))?;
            return Field::prime(q);
        }
        Err(Error::Parse(format!("unknown field `{text}`")))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(q) => *q,
            _ => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(rat(n)),
            Field::Cyclotomic(o) => Scalar::Cyclotomic(Cyclotomic {
                order: o,
                a: rat(n),
                b: BigRational::zero(),
            }),
            Field::Prime(q) => Scalar::Prime(PrimeFieldElem::new(n, q).expect("prime checked")),
        }
    }

    /// Image of a rational number; fails in `F_q` when `q` divides the
    /// denominator.
    pub fn from_rational(&self, r: &BigRational) -> Result<Scalar> {
        match *self {
            Field::Rational => Ok(Scalar::Rational(r.clone())),
            Field::Cyclotomic(o) => Ok(Scalar::Cyclotomic(Cyclotomic {
                order: o,
                a: r.clone(),
                b: BigRational::zero(),
            })),
            Field::Prime(q) => {
                let m = BigInt::from(q);
                let num = r.numer().mod_floor(&m);
                let den = r.denom().mod_floor(&m);
                let num: i64 = num.try_into().expect("reduced below modulus");
                let den: i64 = den.try_into().expect("reduced below modulus");
                let n = PrimeFieldElem::new(num, q)?;
                let d = PrimeFieldElem::new(den, q)?.inv()?;
                Ok(Scalar::Prime(n.mul(&d)))
            }
        }
    }

    /// The distinguished generator `z` of the field: `ζ_n` for `Q(ζ_n)`,
    /// the least primitive root for `F_q`, and `1` for `Q`.
    pub fn distinguished_root(&self) -> Scalar {
        match *self {
            Field::Rational => self.one(),
            Field::Cyclotomic(o) => {
                Scalar::Cyclotomic(Cyclotomic::new(o, rat(0), rat(1)).expect("valid order"))
            }
            Field::Prime(q) => {
                if q == 2 {
                    return self.one();
                }
                let full = q - 1;
                (2..q)
                    .map(|g| self.from_i64(g as i64))
                    .find(|g| multiplicative_order(g, full) == Some(full))
                    .expect("multiplicative group of a prime field is cyclic")
            }
        }
    }

    /// Whether the field contains a primitive `p`-th root of unity.
    pub fn supports_order(&self, p: u64) -> bool {
        self.primitive_root(p).is_ok()
    }

    /// A primitive `p`-th root of unity.
    ///
    /// Over `Q(ζ_n)` this is the first power `±ζ^k` of exact order `p`; over
    /// `F_q` it is `g^((q-1)/p)` for the least primitive root `g`.
    pub fn primitive_root(&self, p: u64) -> Result<Scalar> {
        if p == 0 {
            return Err(Error::NoSuchRoot(p, self.to_string()));
        }
        if p == 1 {
            return Ok(self.one());
        }
        match *self {
            Field::Rational => {
                if p == 2 {
                    Ok(self.from_i64(-1))
                } else {
                    Err(Error::NoSuchRoot(p, self.to_string()))
                }
            }
            Field::Cyclotomic(o) => {
                let z = self.distinguished_root();
                let mut candidates = Vec::new();
                let mut power = self.one();
                for _ in 0..o.max(1) {
                    candidates.push(power.clone());
                    candidates.push(-&power);
                    power = &power * &z;
                }
                candidates
                    .into_iter()
                    .find(|c| multiplicative_order(c, 12) == Some(p))
                    .ok_or_else(|| Error::NoSuchRoot(p, self.to_string()))
            }
            Field::Prime(q) => {
                if (q - 1) % p != 0 {
                    return Err(Error::NoSuchRoot(p, self.to_string()));
                }
                let g = self.distinguished_root();
                Ok(g.pow((q - 1) / p))
            }
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (Field::Rational, Scalar::Rational(_)) => true,
            (Field::Cyclotomic(o), Scalar::Cyclotomic(c)) => *o == c.order,
            (Field::Prime(q), Scalar::Prime(e)) => *q == e.modulus,
            _ => false,
        }
    }

    /// Parses the textual scalar syntax: `3/4`, `-2`, `z`, `2+3z`, `1/2-z`,
    /// `5 mod 11`. `z` denotes [`Field::distinguished_root`].
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        if let Some((value, modulus)) = text.split_once("mod") {
            let q: u64 = modulus
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad modulus in `{text}`")))?;
            if *self != Field::Prime(q) {
                return Err(Error::KindMismatch(format!("F_{q}"), self.to_string()));
            }
            let v: i64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad residue in `{text}`")))?;
            return Ok(Scalar::Prime(PrimeFieldElem::new(v, q)?));
        }
        if text.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        // Split into signed terms at top-level '+'/'-' (not the leading sign).
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = text.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'/' {
                terms.push(&text[start..i]);
                start = i;
            }
        }
        terms.push(&text[start..]);
        let mut total = self.zero();
        for term in terms {
            let term: String = term.chars().filter(|c| !c.is_whitespace()).collect();
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-1, rest.to_string()),
                None => (1, term.trim_start_matches('+').to_string()),
            };
            let (coef_text, has_root) = match body.strip_suffix('z') {
                Some(c) => (c.trim_end_matches('*').to_string(), true),
                None => (body.clone(), false),
            };
            let coef = if coef_text.is_empty() {
                if has_root {
                    rat(1)
                } else {
                    return Err(Error::Parse(format!("empty term in `{text}`")));
                }
            } else {
                parse_rational(&coef_text)?
            };
            let mut value = self.from_rational(&(coef * rat(sign)))?;
            if has_root {
                value = &value * &self.distinguished_root();
            }
            total = &total + &value;
        }
        Ok(total)
    }

    /// A uniformly chosen small scalar, used by randomized checks.
    pub fn random<R: Rng>(&self, rng: &mut R, bound: i64) -> Scalar {
        let a = rng.gen_range(-bound..=bound);
        match *self {
            Field::Cyclotomic(o) if o > 2 => {
                let b = rng.gen_range(-bound..=bound);
                Scalar::Cyclotomic(Cyclotomic {
                    order: o,
                    a: rat(a),
                    b: rat(b),
                })
            }
            Field::Rational => {
                let d = rng.gen_range(1..=bound.max(1));
                Scalar::Rational(BigRational::new(BigInt::from(a), BigInt::from(d)))
            }
            _ => self.from_i64(a),
        }
    }

    pub fn random_nonzero<R: Rng>(&self, rng: &mut R, bound: i64) -> Scalar {
        loop {
            let s = self.random(rng, bound);
            if !s.is_zero() {
                return s;
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Cyclotomic(o) => write!(f, "cyclotomic:{o}"),
            Field::Prime(q) => write!(f, "prime:{q}"),
        }
    }
}

pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let parse_int = |s: &str| -> Result<BigInt> {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad number `{text}`")))
    };
    match text.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse_int(text)?)),
    }
}

/// Least `k ≤ bound` with `s^k = 1`.
fn multiplicative_order(s: &Scalar, bound: u64) -> Option<u64> {
    if s.is_zero() {
        return None;
    }
    let mut power = s.clone();
    for k in 1..=bound {
        if power.is_one() {
            return Some(k);
        }
        power = &power * s;
    }
    None
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Cyclotomic(c) => Field::Cyclotomic(c.order),
            Scalar::Prime(e) => Field::Prime(e.modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Cyclotomic(c) => c.a.is_zero() && c.b.is_zero(),
            Scalar::Prime(e) => e.residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Cyclotomic(c) => c.a.is_one() && c.b.is_zero(),
            Scalar::Prime(e) => e.residue == 1,
        }
    }

    fn mismatch(&self, other: &Scalar) -> Error {
        Error::KindMismatch(self.field().to_string(), other.field().to_string())
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) if a.order == b.order => {
                Ok(Scalar::Cyclotomic(Cyclotomic {
                    order: a.order,
                    a: &a.a + &b.a,
                    b: &a.b + &b.b,
                }))
            }
            (Scalar::Prime(a), Scalar::Prime(b)) if a.modulus == b.modulus => {
                Ok(Scalar::Prime(PrimeFieldElem {
                    modulus: a.modulus,
                    residue: ((a.residue as u128 + b.residue as u128) % a.modulus as u128) as u64,
                }))
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) if a.order == b.order => {
                Ok(Scalar::Cyclotomic(a.mul(b)))
            }
            (Scalar::Prime(a), Scalar::Prime(b)) if a.modulus == b.modulus => {
                Ok(Scalar::Prime(a.mul(b)))
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(r.recip()))
                }
            }
            Scalar::Cyclotomic(c) => c.inv().map(Scalar::Cyclotomic),
            Scalar::Prime(e) => e.inv().map(Scalar::Prime),
        }
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Integer power; negative exponents invert first.
    pub fn powi(&self, e: i64) -> Result<Scalar> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }
}

/// Sum of two scalars of the same field.
pub fn field_add(a: &Scalar, b: &Scalar) -> Result<Scalar> {
    a.checked_add(b)
}

/// Product of two scalars of the same field.
pub fn field_mul(a: &Scalar, b: &Scalar) -> Result<Scalar> {
    a.checked_mul(b)
}

pub fn field_inv(a: &Scalar) -> Result<Scalar> {
    a.inv()
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(Cyclotomic {
                order: c.order,
                a: -&c.a,
                b: -&c.b,
            }),
            Scalar::Prime(e) => Scalar::Prime(PrimeFieldElem {
                modulus: e.modulus,
                residue: (e.modulus - e.residue) % e.modulus,
            }),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", fmt_rational(r)),
            Scalar::Cyclotomic(c) => {
                if c.b.is_zero() {
                    return write!(f, "{}", fmt_rational(&c.a));
                }
                let b = if c.b.is_one() {
                    "z".to_string()
                } else if (-&c.b).is_one() {
                    "-z".to_string()
                } else {
                    format!("{}z", fmt_rational(&c.b))
                };
                if c.a.is_zero() {
                    write!(f, "{b}")
                } else if c.b.is_negative() {
                    write!(f, "{}{b}", fmt_rational(&c.a))
                } else {
                    write!(f, "{}+{b}", fmt_rational(&c.a))
                }
            }
            Scalar::Prime(e) => write!(f, "{} mod {}", e.residue, e.modulus),
        }
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::Rational(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn rational_sum() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
    }

    #[test]
    fn cyclotomic_squares() {
        let f4 = Field::Cyclotomic(4);
        let z = f4.distinguished_root();
        assert_eq!(&z * &z, f4.from_i64(-1));

        let f6 = Field::Cyclotomic(6);
        let z = f6.distinguished_root();
        assert_eq!(&z * &z, &z - &f6.one());
    }

    #[test]
    fn inverse_of_zero_fails() {
        for f in [Field::Rational, Field::Cyclotomic(3), Field::Prime(7)] {
            assert_eq!(field_inv(&f.zero()), Err(Error::DivisionByZero));
        }
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(Field::Rational.primitive_root(2).unwrap(), q(-1, 1));
        assert!(Field::Rational.primitive_root(1).unwrap().is_one());
        assert!(matches!(
            Field::Rational.primitive_root(3),
            Err(Error::NoSuchRoot(3, _))
        ));
        let f7 = Field::Prime(7);
        let w = f7.primitive_root(3).unwrap();
        // exhaustive: the elements of order 3 in F_7 are 2 and 4
        let order3: Vec<u64> = (1..7u64)
            .filter(|&a| {
                let s = f7.from_i64(a as i64);
                !s.is_one() && !s.pow(2).is_one() && s.pow(3).is_one()
            })
            .collect();
        assert_eq!(order3, vec![2, 4]);
        match w {
            Scalar::Prime(e) => assert!(order3.contains(&e.residue())),
            _ => unreachable!(),
        }
        assert!(f7.primitive_root(4).is_err());
    }

    #[test]
    fn roots_in_every_supported_cyclotomic_field() {
        for &n in &CYCLOTOMIC_ORDERS {
            let f = Field::Cyclotomic(n);
            let w = f.primitive_root(n as u64).unwrap();
            assert!(w.pow(n as u64).is_one());
            for d in 1..n as u64 {
                assert!(!w.pow(d).is_one(), "order {n} root has order {d}");
            }
        }
        // Q(ζ_3) = Q(ζ_6)
        assert!(Field::Cyclotomic(3).supports_order(6));
        assert!(!Field::Cyclotomic(4).supports_order(3));
    }

    #[test]
    fn parse_scalars() {
        let f = Field::Cyclotomic(6);
        let z = f.distinguished_root();
        assert_eq!(
            f.parse_scalar("2+3z").unwrap(),
            &f.from_i64(2) + &(&f.from_i64(3) * &z)
        );
        assert_eq!(f.parse_scalar("z").unwrap(), z);
        assert_eq!(
            Field::Rational.parse_scalar("3/4").unwrap(),
            q(3, 4)
        );
        assert_eq!(
            Field::Rational.parse_scalar("-1/2").unwrap(),
            q(-1, 2)
        );
        assert_eq!(
            Field::Prime(11).parse_scalar("5 mod 11").unwrap(),
            Field::Prime(11).from_i64(5)
        );
        assert!(Field::Rational.parse_scalar("5 mod 11").is_err());
        assert_eq!(
            Field::Prime(7).parse_scalar("1/2").unwrap(),
            Field::Prime(7).from_i64(4)
        );
    }

    #[test]
    fn mixing_kinds_is_an_error() {
        let a = Field::Rational.one();
        let b = Field::Prime(5).one();
        assert!(matches!(field_add(&a, &b), Err(Error::KindMismatch(..))));
        let c = Field::Cyclotomic(3).one();
        let d = Field::Cyclotomic(4).one();
        assert!(field_mul(&c, &d).is_err());
    }

    #[test]
    fn display_round_trips_through_parse() {
        let f = Field::Cyclotomic(3);
        for s in ["1/2-z", "z", "-3z", "7", "2+5/3z"] {
            let v = f.parse_scalar(s).unwrap();
            assert_eq!(f.parse_scalar(&v.to_string()).unwrap(), v);
        }
    }

    fn arb_field() -> impl Strategy<Value = Field> {
        prop_oneof![
            Just(Field::Rational),
            Just(Field::Cyclotomic(3)),
            Just(Field::Cyclotomic(4)),
            Just(Field::Cyclotomic(6)),
            Just(Field::Prime(13)),
        ]
    }

    proptest! {
        #[test]
        fn field_axioms(f in arb_field(), seed in any::<u64>()) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let a = f.random(&mut rng, 9);
            let b = f.random(&mut rng, 9);
            let c = f.random(&mut rng, 9);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn rationals_are_canonical(n in -50i64..50, d in 1i64..50, k in 1i64..20) {
            let a = Field::Rational.from_rational(&BigRational::new(n.into(), d.into())).unwrap();
            let b = Field::Rational.from_rational(&BigRational::new((n * k).into(), (d * k).into())).unwrap();
            prop_assert_eq!(a.to_string(), b.to_string());
        }
    }
}
