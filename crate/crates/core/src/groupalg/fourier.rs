//! Discrete Fourier transform on a finite module.
//!
//! The dual of `Z/d_1 + ... + Z/d_k` is identified with the module itself:
//! `k` indexes `chi_k(m) = exp(2 pi i sum_j k_j m_j / d_j)`. Values are
//! computed in floating point always, and exactly in `Q(zeta_L)` with
//! `L = lcm(exponent, 4)` whenever `L` is at most [`EXACT_ORDER_LIMIT`].

use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use super::cyclotomic::{Cyclotomic, CyclotomicField};
use super::GroupAlgElem;
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::modules::{ModuleElem, ModulePresentation};

/// Largest root-of-unity order handled exactly.
pub const EXACT_ORDER_LIMIT: u64 = 360;

#[derive(Clone, Debug)]
pub struct FourierTransform {
    ambient: ModulePresentation,
    /// Characters in the module's element order.
    characters: Vec<ModuleElem>,
    approx: Vec<Complex64>,
    exact: Option<Vec<Cyclotomic>>,
}

/// `sum_j k_j m_j / d_j` reduced mod 1, as `(numerator, L)`.
fn pairing(ambient: &ModulePresentation, l: i64, k: &ModuleElem, m: &ModuleElem) -> i64 {
    let mut acc: i128 = 0;
    for (i, (&a, &b)) in k.coords().iter().zip(m.coords()).enumerate() {
        let d = ambient.modulus(i) as i128;
        acc += (a as i128 * b as i128 % d) * (l as i128 / d);
    }
    acc.rem_euclid(l as i128) as i64
}

fn field_order(ambient: &ModulePresentation) -> i64 {
    let e = ambient.exponent().unwrap_or(1);
    e.lcm(&4)
}

pub fn fourier_transform(a: &GroupAlgElem) -> Result<FourierTransform> {
    let ambient = a.ambient().clone();
    let characters = ambient.elements()?;
    let l = field_order(&ambient);
    let tau = 2.0 * std::f64::consts::PI / l as f64;
    let terms: Vec<(&ModuleElem, Complex64)> = a.terms().iter().map(|(m, c)| (m, c.to_complex())).collect();
    let approx: Vec<Complex64> = characters
        .par_iter()
        .map(|k| terms.iter().map(|(m, c)| c * Complex64::from_polar(1.0, tau * pairing(&ambient, l, k, m) as f64)).sum())
        .collect();
    let exact = (l as u64 <= EXACT_ORDER_LIMIT).then(|| {
        let field = CyclotomicField::new(l as u64);
        let embedded: Vec<(&ModuleElem, Cyclotomic)> = a.terms().iter().map(|(m, c)| (m, Cyclotomic::from_coeff(&field, c))).collect();
        characters
            .par_iter()
            .map(|k| {
                embedded.iter().fold(Cyclotomic::zero(&field), |acc, (m, c)| {
                    acc.add(&Cyclotomic::root_power(&field, pairing(&ambient, l, k, m)).mul(c))
                })
            })
            .collect()
    });
    Ok(FourierTransform { ambient, characters, approx, exact })
}

impl FourierTransform {
    pub fn ambient(&self) -> &ModulePresentation {
        &self.ambient
    }

    pub fn characters(&self) -> &[ModuleElem] {
        &self.characters
    }

    pub fn approx(&self) -> &[Complex64] {
        &self.approx
    }

    pub fn exact(&self) -> Option<&[Cyclotomic]> {
        self.exact.as_deref()
    }

    pub fn value_field(&self) -> Option<&Arc<CyclotomicField>> {
        self.exact.as_ref().and_then(|v| v.first()).map(Cyclotomic::field)
    }

    fn order(&self) -> f64 {
        self.characters.len() as f64
    }

    /// Pointwise product, i.e. the transform of the convolution.
    pub fn pointwise(&self, other: &FourierTransform) -> Result<FourierTransform> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        let approx = self.approx.iter().zip(&other.approx).map(|(a, b)| a * b).collect();
        let exact = match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => Some(a.iter().zip(b).map(|(x, y)| x.mul(y)).collect()),
            _ => None,
        };
        Ok(FourierTransform { ambient: self.ambient.clone(), characters: self.characters.clone(), approx, exact })
    }

    /// `a(m) = |M|^{-1} sum_k a_hat(k) conj(chi_k(m))`, in the module's
    /// element order.
    pub fn inverse_approx(&self) -> Vec<Complex64> {
        let l = field_order(&self.ambient);
        let tau = 2.0 * std::f64::consts::PI / l as f64;
        let n = self.order();
        self.characters
            .par_iter()
            .map(|m| {
                self.characters
                    .iter()
                    .zip(&self.approx)
                    .map(|(k, v)| v * Complex64::from_polar(1.0, -tau * pairing(&self.ambient, l, k, m) as f64))
                    .sum::<Complex64>()
                    / n
            })
            .collect()
    }

    /// Exact inverse, available on the root-of-unity path.
    pub fn inverse_exact(&self) -> Option<Result<GroupAlgElem>> {
        let exact = self.exact.as_ref()?;
        let field = exact.first()?.field().clone();
        let l = field.order() as i64;
        let inv_n = BigRational::new(1.into(), BigInt::from(self.characters.len()));
        let mut out = GroupAlgElem::zero(&self.ambient);
        for m in &self.characters {
            let mut acc = Cyclotomic::zero(&field);
            for (k, v) in self.characters.iter().zip(exact) {
                acc = acc.add(&v.mul(&Cyclotomic::root_power(&field, -pairing(&self.ambient, l, k, m))));
            }
            let Some(c) = acc.scale(&inv_n).as_gaussian() else {
                return Some(Err(Error::InvalidInput("inverse transform left Q(i)".into())));
            };
            if let Err(e) = out.add_term(m.clone(), c) {
                return Some(Err(e));
            }
        }
        Some(Ok(out))
    }

    /// `|M|^{-1} sum |a_hat|^2`, to compare with `sum |a(m)|^2`.
    pub fn parseval_energy(&self) -> f64 {
        self.approx.iter().map(|v| v.norm_sqr()).sum::<f64>() / self.order()
    }

    /// Exact `|M|^{-1} sum |a_hat|^2`, when available.
    pub fn parseval_energy_exact(&self) -> Option<Coeff> {
        let exact = self.exact.as_ref()?;
        let field = exact.first()?.field().clone();
        let total = exact.iter().fold(Cyclotomic::zero(&field), |acc, v| acc.add(&v.mul(&v.conj())));
        let inv_n = BigRational::new(1.into(), BigInt::from(self.characters.len()));
        total.scale(&inv_n).as_gaussian()
    }
}

/// `sum |a(m)|^2`, exactly.
pub fn l2_energy(a: &GroupAlgElem) -> BigRational {
    a.terms().values().fold(BigRational::zero(), |acc, c| acc + c.norm_sqr())
}
