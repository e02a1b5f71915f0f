//! Exact arithmetic in the integral domains `Z` and `Z[i]`, their
//! multiplicative semigroups, unit groups and fraction fields.
//!
//! Representatives of `R^x / R_u` are fixed as follows: positive integers
//! for `Z`, and for `Z[i]` the associate with `re > 0, im >= 0`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Domain {
    #[serde(rename = "Z")]
    Integers,
    #[serde(rename = "Zi")]
    GaussianIntegers,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Integers => f.write_str("Z"),
            Domain::GaussianIntegers => f.write_str("Z[i]"),
        }
    }
}

/// An element of `Z` or `Z[i]`. For `Z` the imaginary part is always zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DomainElem {
    domain: Domain,
    re: BigInt,
    im: BigInt,
}

impl DomainElem {
    pub fn int(n: impl Into<BigInt>) -> Self {
        DomainElem { domain: Domain::Integers, re: n.into(), im: BigInt::zero() }
    }

    pub fn gaussian(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        DomainElem { domain: Domain::GaussianIntegers, re: re.into(), im: im.into() }
    }

    /// Builds an element of `domain`; fails for a nonzero imaginary part over `Z`.
    pub fn new(domain: Domain, re: BigInt, im: BigInt) -> Result<Self> {
        if domain == Domain::Integers && !im.is_zero() {
            return Err(Error::UnsupportedDomain("Z (imaginary part given)".into()));
        }
        Ok(DomainElem { domain, re, im })
    }

    pub fn zero(domain: Domain) -> Self {
        DomainElem { domain, re: BigInt::zero(), im: BigInt::zero() }
    }

    pub fn one(domain: Domain) -> Self {
        DomainElem { domain, re: BigInt::one(), im: BigInt::zero() }
    }

    /// `i` itself; only exists in `Z[i]`.
    pub fn imaginary_unit() -> Self {
        DomainElem::gaussian(0, 1)
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn re(&self) -> &BigInt {
        &self.re
    }

    pub fn im(&self) -> &BigInt {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// `a^2 + b^2` for `a + bi`; `|n|^2` would be wrong for `Z`, so `Z` uses `|n|`.
    pub fn norm(&self) -> BigInt {
        match self.domain {
            Domain::Integers => self.re.abs(),
            Domain::GaussianIntegers => &self.re * &self.re + &self.im * &self.im,
        }
    }

    pub fn conj(&self) -> Self {
        DomainElem { domain: self.domain, re: self.re.clone(), im: -&self.im }
    }

    /// The unit group: `{1, -1}` or `{1, i, -1, -i}` in that order.
    pub fn units(domain: Domain) -> Vec<DomainElem> {
        match domain {
            Domain::Integers => vec![DomainElem::int(1), DomainElem::int(-1)],
            Domain::GaussianIntegers => {
                vec![DomainElem::gaussian(1, 0), DomainElem::gaussian(0, 1), DomainElem::gaussian(-1, 0), DomainElem::gaussian(0, -1)]
            }
        }
    }

    /// Re-tags the element in another domain (`Z` embeds in `Z[i]`).
    pub fn to_domain(&self, domain: Domain) -> Result<Self> {
        DomainElem::new(domain, self.re.clone(), self.im.clone())
    }

    pub fn as_i64_pair(&self) -> Option<(i64, i64)> {
        Some((self.re.to_i64()?, self.im.to_i64()?))
    }

    fn lift_pair(a: &Self, b: &Self) -> Domain {
        if a.domain == Domain::GaussianIntegers || b.domain == Domain::GaussianIntegers {
            Domain::GaussianIntegers
        } else {
            Domain::Integers
        }
    }

    /// Euclidean division `self = q * other + rem` with `N(rem) < N(other)`.
    ///
    /// Over `Z` this is floor division. Over `Z[i]` each coordinate of the
    /// exact quotient is rounded to the nearest integer, halves rounding down.
    pub fn div_rem(&self, other: &Self) -> Result<(Self, Self)> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let domain = Self::lift_pair(self, other);
        match domain {
            Domain::Integers => {
                let (q, r) = self.re.div_mod_floor(&other.re);
                Ok((DomainElem::int(q), DomainElem::int(r)))
            }
            Domain::GaussianIntegers => {
                let n = other.norm();
                let num = self * &other.conj();
                let q = DomainElem::gaussian(round_half_down(&num.re, &n), round_half_down(&num.im, &n));
                let r = self - &(&q * other);
                Ok((q, r))
            }
        }
    }

    /// Exact quotient `self / other` when it exists in the ring.
    pub fn exact_div(&self, other: &Self) -> Result<Option<Self>> {
        if other.is_zero() {
            return Err(Error::ZeroElement);
        }
        let domain = Self::lift_pair(self, other);
        match domain {
            Domain::Integers => {
                let (q, r) = self.re.div_rem(&other.re);
                Ok(r.is_zero().then(|| DomainElem::int(q)))
            }
            Domain::GaussianIntegers => {
                let n = other.norm();
                let num = self * &other.conj();
                let (qa, ra) = num.re.div_rem(&n);
                let (qb, rb) = num.im.div_rem(&n);
                Ok((ra.is_zero() && rb.is_zero()).then(|| DomainElem::gaussian(qa, qb)))
            }
        }
    }

    /// A greatest common divisor, normalised to its canonical associate
    /// (zero when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let domain = Self::lift_pair(self, other);
        let mut a = self.to_domain(domain).expect("lift to wider domain");
        let mut b = other.to_domain(domain).expect("lift to wider domain");
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        canonical_associate(&a).expect("nonzero").positive_part
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = DomainElem::one(self.domain);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }
}

/// Nearest integer to `n / d` (`d > 0`), ties toward negative infinity.
fn round_half_down(n: &BigInt, d: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    let num = &two * n - d;
    let den = &two * d;
    Integer::div_ceil(&num, &den)
}

impl Ord for DomainElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.domain.cmp(&other.domain).then_with(|| self.re.cmp(&other.re)).then_with(|| self.im.cmp(&other.im))
    }
}

impl PartialOrd for DomainElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &DomainElem {
    type Output = DomainElem;
    fn add(self, rhs: &DomainElem) -> DomainElem {
        DomainElem { domain: DomainElem::lift_pair(self, rhs), re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &DomainElem {
    type Output = DomainElem;
    fn sub(self, rhs: &DomainElem) -> DomainElem {
        DomainElem { domain: DomainElem::lift_pair(self, rhs), re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &DomainElem {
    type Output = DomainElem;
    fn mul(self, rhs: &DomainElem) -> DomainElem {
        DomainElem {
            domain: DomainElem::lift_pair(self, rhs),
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &DomainElem {
    type Output = DomainElem;
    fn neg(self) -> DomainElem {
        DomainElem { domain: self.domain, re: -&self.re, im: -&self.im }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for DomainElem {
            type Output = DomainElem;
            fn $m(self, rhs: DomainElem) -> DomainElem {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for DomainElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.domain {
            Domain::Integers => write!(f, "{}", self.re),
            Domain::GaussianIntegers => {
                if self.im.is_zero() {
                    write!(f, "{}", self.re)
                } else if self.re.is_zero() {
                    write!(f, "{}i", self.im)
                } else if self.im.is_negative() {
                    write!(f, "{}-{}i", self.re, -&self.im)
                } else {
                    write!(f, "{}+{}i", self.re, self.im)
                }
            }
        }
    }
}

/// Accepts `"-6"` or `"[2,-1]"`.
impl FromStr for DomainElem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(inner) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let parts: Vec<&str> = inner.split(',').collect();
            if parts.len() != 2 {
                return Err(Error::Parse(format!("gaussian pair expected, got {s:?}")));
            }
            let a = parts[0].trim().parse::<BigInt>().map_err(|e| Error::Parse(e.to_string()))?;
            let b = parts[1].trim().parse::<BigInt>().map_err(|e| Error::Parse(e.to_string()))?;
            return Ok(DomainElem::gaussian(a, b));
        }
        t.parse::<BigInt>().map(DomainElem::int).map_err(|e| Error::Parse(format!("bad domain element {s:?}: {e}")))
    }
}

impl Serialize for DomainElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.domain {
            Domain::Integers => crate::wire::BigIntJson(self.re.clone()).serialize(s),
            Domain::GaussianIntegers => [crate::wire::BigIntJson(self.re.clone()), crate::wire::BigIntJson(self.im.clone())].serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for DomainElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Pair([crate::wire::BigIntJson; 2]),
            Scalar(crate::wire::BigIntJson),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Pair([a, b]) => Ok(DomainElem::gaussian(a.0, b.0)),
            Repr::Scalar(n) => Ok(DomainElem::int(n.0)),
            Repr::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// `element = unit * positive_part`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitsDecomposition {
    pub unit: DomainElem,
    pub positive_part: DomainElem,
}

pub fn canonical_associate(r: &DomainElem) -> Result<UnitsDecomposition> {
    if r.is_zero() {
        return Err(Error::ZeroElement);
    }
    for u in DomainElem::units(r.domain()) {
        // u^{-1} = conj(u) for units of Z and Z[i]
        let p = r * &u.conj();
        let canonical = match r.domain() {
            Domain::Integers => p.re.is_positive(),
            Domain::GaussianIntegers => p.re.is_positive() && !p.im.is_negative(),
        };
        if canonical {
            return Ok(UnitsDecomposition { unit: u, positive_part: p });
        }
    }
    unreachable!("every nonzero element has a canonical associate")
}

/// The quotient `q` with `s = q * r`, if `r` divides `s`.
pub fn divides(r: &DomainElem, s: &DomainElem) -> Result<Option<DomainElem>> {
    s.exact_div(r)
}

/// Prime factorisation of a positive integer, ascending.
pub fn factor_positive(n: &DomainElem) -> Result<Vec<DomainElem>> {
    if n.domain() != Domain::Integers {
        return Err(Error::UnsupportedDomain("Z[i] factorisation".into()));
    }
    if n.re() < &BigInt::one() {
        return Err(Error::InvalidInput(format!("factor_positive needs n >= 1, got {n}")));
    }
    let mut rest = n.re().clone();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        while (&rest % &p).is_zero() {
            out.push(DomainElem::int(p.clone()));
            rest /= &p;
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if rest > BigInt::one() {
        out.push(DomainElem::int(rest));
    }
    Ok(out)
}

/// Every divisor of a nonzero `r`, including all unit multiples, sorted.
pub fn divisors(r: &DomainElem) -> Result<Vec<DomainElem>> {
    if r.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut out = Vec::new();
    match r.domain() {
        Domain::Integers => {
            let primes = factor_positive(&DomainElem::int(r.re().abs()))?;
            let mut positive = vec![BigInt::one()];
            let mut i = 0;
            while i < primes.len() {
                let p = primes[i].re().clone();
                let mut mult = 0;
                while i < primes.len() && primes[i].re() == &p {
                    mult += 1;
                    i += 1;
                }
                let mut next = Vec::new();
                for d in &positive {
                    let mut pk = BigInt::one();
                    for _ in 0..=mult {
                        next.push(d * &pk);
                        pk *= &p;
                    }
                }
                positive = next;
            }
            for d in positive {
                out.push(DomainElem::int(d.clone()));
                out.push(DomainElem::int(-d));
            }
        }
        Domain::GaussianIntegers => {
            let n = r.norm();
            let bound = n.sqrt();
            let mut a = -bound.clone();
            while a <= bound {
                let mut b = -bound.clone();
                while b <= bound {
                    let d = DomainElem::gaussian(a.clone(), b.clone());
                    if !d.is_zero() && d.norm() <= n && divides(&d, r)?.is_some() {
                        out.push(d);
                    }
                    b += 1;
                }
                a += 1;
            }
        }
    }
    out.sort();
    Ok(out)
}

/// An element of the fraction field `Q(R)` in lowest terms with a
/// canonical-associate denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: DomainElem,
    den: DomainElem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FractionOp {
    Add,
    Mul,
    Inv,
}

impl Fraction {
    pub fn new(num: DomainElem, den: DomainElem) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let domain = DomainElem::lift_pair(&num, &den);
        let num = num.to_domain(domain)?;
        let den = den.to_domain(domain)?;
        if num.is_zero() {
            return Ok(Fraction { num, den: DomainElem::one(domain) });
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g)?.expect("gcd divides numerator");
        let den = den.exact_div(&g)?.expect("gcd divides denominator");
        let UnitsDecomposition { unit, positive_part } = canonical_associate(&den)?;
        let num = &num * &unit.conj();
        Ok(Fraction { num, den: positive_part })
    }

    pub fn from_elem(x: DomainElem) -> Self {
        let d = x.domain();
        Fraction { num: x, den: DomainElem::one(d) }
    }

    pub fn numerator(&self) -> &DomainElem {
        &self.num
    }

    pub fn denominator(&self) -> &DomainElem {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Fraction::new(&(&self.num * &other.den) + &(&other.num * &self.den), &self.den * &other.den).expect("nonzero denominators")
    }

    pub fn neg(&self) -> Self {
        Fraction { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Fraction::new(&self.num * &other.num, &self.den * &other.den).expect("nonzero denominators")
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Fraction::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Field arithmetic in `Q(R)`. `b` is ignored for [`FractionOp::Inv`].
pub fn fraction_arithmetic(a: &Fraction, b: &Fraction, op: FractionOp) -> Result<Fraction> {
    match op {
        FractionOp::Add => Ok(a.add(b)),
        FractionOp::Mul => Ok(a.mul(b)),
        FractionOp::Inv => a.inv(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> DomainElem {
        DomainElem::int(n)
    }

    fn g(a: i64, b: i64) -> DomainElem {
        DomainElem::gaussian(a, b)
    }

    fn frac(a: DomainElem, b: DomainElem) -> Fraction {
        Fraction::new(a, b).unwrap()
    }

    #[test]
    fn canonical_associate_examples() {
        let d = canonical_associate(&z(-6)).unwrap();
        assert_eq!((d.unit, d.positive_part), (z(-1), z(6)));
        let d = canonical_associate(&z(6)).unwrap();
        assert_eq!((d.unit, d.positive_part), (z(1), z(6)));
        // unit multiples of -2i: -2i, 2, 2i, -2; only 2 is first-quadrant and -2i = (-i) * 2
        let d = canonical_associate(&g(0, -2)).unwrap();
        assert_eq!((d.unit, d.positive_part), (g(0, -1), g(2, 0)));
        assert_eq!(canonical_associate(&z(0)), Err(Error::ZeroElement));
    }

    #[test]
    fn divides_examples() {
        assert_eq!(divides(&z(2), &z(6)).unwrap(), Some(z(3)));
        assert_eq!(divides(&z(4), &z(6)).unwrap(), None);
        assert_eq!(divides(&g(1, 1), &g(2, 0)).unwrap(), Some(g(1, -1)));
        assert_eq!(&g(1, 1) * &g(1, -1), g(2, 0));
        assert_eq!(divides(&z(0), &z(3)), Err(Error::ZeroElement));
    }

    #[test]
    fn factor_examples() {
        assert_eq!(factor_positive(&z(12)).unwrap(), vec![z(2), z(2), z(3)]);
        assert!(factor_positive(&z(1)).unwrap().is_empty());
        assert_eq!(factor_positive(&z(97)).unwrap(), vec![z(97)]);
        assert!(matches!(factor_positive(&g(1, 1)), Err(Error::UnsupportedDomain(_))));
        assert!(matches!(factor_positive(&z(0)), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn factor_products_up_to_ten_thousand() {
        for n in 1..=10_000i64 {
            let fs = factor_positive(&z(n)).unwrap();
            let prod = fs.iter().fold(z(1), |acc, p| &acc * p);
            assert_eq!(prod, z(n));
            assert!(fs.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn fraction_examples() {
        let half = frac(z(1), z(2));
        let third = frac(z(1), z(3));
        assert_eq!(fraction_arithmetic(&half, &third, FractionOp::Add).unwrap(), frac(z(5), z(6)));
        let tq = frac(z(3), z(4));
        assert_eq!(fraction_arithmetic(&tq, &tq, FractionOp::Inv).unwrap(), frac(z(4), z(3)));
        let a = frac(g(1, 0), g(1, 1));
        let b = Fraction::from_elem(g(1, 1));
        assert_eq!(a.mul(&b), Fraction::from_elem(g(1, 0)));
        let zero = Fraction::from_elem(z(0));
        assert_eq!(fraction_arithmetic(&zero, &zero, FractionOp::Inv), Err(Error::DivisionByZero));
    }

    #[test]
    fn fraction_normal_form() {
        let f = frac(z(4), z(-6));
        assert_eq!((f.numerator(), f.denominator()), (&z(-2), &z(3)));
        let f = frac(g(2, 2), g(0, 2));
        // (2+2i)/(2i) = 1 - i
        assert_eq!((f.numerator(), f.denominator()), (&g(1, -1), &g(1, 0)));
    }

    #[test]
    fn gaussian_rounding_half_down() {
        // 5/2 = 2.5 rounds to 2, -5/2 rounds to -3
        assert_eq!(round_half_down(&BigInt::from(5), &BigInt::from(2)), BigInt::from(2));
        assert_eq!(round_half_down(&BigInt::from(-5), &BigInt::from(2)), BigInt::from(-3));
        assert_eq!(round_half_down(&BigInt::from(7), &BigInt::from(2)), BigInt::from(3));
        let (q, r) = g(5, 5).div_rem(&g(2, 0)).unwrap();
        assert_eq!(q, g(2, 2));
        assert_eq!(r, g(1, 1));
    }

    #[test]
    fn divisors_of_six() {
        let ds: Vec<i64> = divisors(&z(6)).unwrap().iter().map(|d| d.re().to_i64().unwrap()).collect();
        assert_eq!(ds, vec![-6, -3, -2, -1, 1, 2, 3, 6]);
        // 1+i has norm 2: divisors are the 4 units and the 4 associates of 1+i
        assert_eq!(divisors(&g(1, 1)).unwrap().len(), 8);
    }

    #[test]
    fn parse_and_serialise() {
        assert_eq!("-6".parse::<DomainElem>().unwrap(), z(-6));
        assert_eq!("[2,-1]".parse::<DomainElem>().unwrap(), g(2, -1));
        let v: Vec<DomainElem> = serde_json::from_str(r#"[-6, "4", [2,-1]]"#).unwrap();
        assert_eq!(v, vec![z(-6), z(4), g(2, -1)]);
        assert_eq!(serde_json::to_string(&v).unwrap(), "[-6,4,[2,-1]]");
    }
}
