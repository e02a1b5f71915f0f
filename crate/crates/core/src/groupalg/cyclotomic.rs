//! The cyclotomic field `Q(zeta_L)` as polynomials reduced modulo `Phi_L`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coeff::{ratio_to_f64, Coeff};

/// `Q(zeta_L)` with a fixed primitive `L`-th root `zeta = exp(2 pi i / L)`.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    order: u64,
    /// `Phi_L`, monic, low degree first.
    modulus: Vec<BigInt>,
}

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // den is monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut out = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..out.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= &c * d;
        }
        out[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    out
}

/// `Phi_n` by dividing `x^n - 1` by `Phi_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_div_exact(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

impl CyclotomicField {
    pub fn new(order: u64) -> Arc<Self> {
        assert!(order >= 1);
        Arc::new(CyclotomicField { order, modulus: cyclotomic_polynomial(order) })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Degree over `Q`, i.e. `phi(L)`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn reduce(&self, mut p: Vec<BigRational>) -> Vec<BigRational> {
        let deg = self.degree();
        for k in (deg..p.len()).rev() {
            let c = std::mem::replace(&mut p[k], BigRational::zero());
            if c.is_zero() {
                continue;
            }
            for j in 0..deg {
                p[k - deg + j] -= &c * BigRational::from_integer(self.modulus[j].clone());
            }
        }
        p.resize(deg, BigRational::zero());
        p
    }
}

/// An element of a [`CyclotomicField`].
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl Cyclotomic {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Cyclotomic { field: field.clone(), coeffs: vec![BigRational::zero(); field.degree()] }
    }

    pub fn rational(field: &Arc<CyclotomicField>, q: BigRational) -> Self {
        let mut z = Cyclotomic::zero(field);
        z.coeffs[0] = q;
        z
    }

    /// `zeta^k` for any integer `k`.
    pub fn root_power(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let l = field.order as i64;
        let e = k.mod_floor(&l) as usize;
        let mut p = vec![BigRational::zero(); e.max(field.degree()) + 1];
        p[e] = BigRational::one();
        Cyclotomic { field: field.clone(), coeffs: field.reduce(p) }
    }

    /// `exp(2 pi i p / q)`; `q` must divide the field order.
    pub fn rotation(field: &Arc<CyclotomicField>, p: &BigInt, q: &BigInt) -> Option<Self> {
        let l = BigInt::from(field.order);
        if !l.is_multiple_of(q) {
            return None;
        }
        let k = (p * (&l / q)).mod_floor(&l);
        Some(Cyclotomic::root_power(field, i64::try_from(k).ok()?))
    }

    /// Embeds a Gaussian rational; needs `4 | L`.
    pub fn from_coeff(field: &Arc<CyclotomicField>, c: &Coeff) -> Self {
        assert!(field.order.is_multiple_of(4), "i is not in Q(zeta_L) for 4 not dividing L");
        let i = Cyclotomic::root_power(field, (field.order / 4) as i64);
        Cyclotomic::rational(field, c.re.clone()).add(&i.scale(&c.im))
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field);
        Cyclotomic { field: self.field.clone(), coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Cyclotomic { field: self.field.clone(), coeffs: self.coeffs.iter().map(|a| a * q).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field);
        let n = self.coeffs.len();
        let mut p = vec![BigRational::zero(); (2 * n).max(1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    p[i + j] += a * b;
                }
            }
        }
        Cyclotomic { field: self.field.clone(), coeffs: self.field.reduce(p) }
    }

    /// Complex conjugation, `zeta^j -> zeta^{-j}`.
    pub fn conj(&self) -> Self {
        let mut acc = Cyclotomic::zero(&self.field);
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&Cyclotomic::root_power(&self.field, -(j as i64)).scale(c));
            }
        }
        acc
    }

    /// The value as a Gaussian rational, when it lies in `Q(i)`.
    pub fn as_gaussian(&self) -> Option<Coeff> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            return Some(Coeff::new(self.coeffs[0].clone(), BigRational::zero()));
        }
        if !self.field.order.is_multiple_of(4) {
            return None;
        }
        let i = Cyclotomic::root_power(&self.field, (self.field.order / 4) as i64);
        let k = (1..i.coeffs.len()).find(|&k| !i.coeffs[k].is_zero())?;
        let b = &self.coeffs[k] / &i.coeffs[k];
        let a = &self.coeffs[0] - &b * &i.coeffs[0];
        let candidate = Coeff::new(a, b);
        (Cyclotomic::from_coeff(&self.field, &candidate) == *self).then_some(candidate)
    }

    pub fn to_complex(&self) -> Complex64 {
        let l = self.field.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| Complex64::from_polar(ratio_to_f64(c), 2.0 * std::f64::consts::PI * j as f64 / l))
            .sum()
    }
}
