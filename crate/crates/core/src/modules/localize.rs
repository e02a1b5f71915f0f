//! Localization at all nonzero scalars: `M -> Q(R) (x) M`.
//!
//! Torsion dies and the free part becomes a vector space over the fraction
//! field. For `Z[i]` the space is `Q^a` with the free block of the
//! `i`-matrix acting on it, so `Q(i)` scalars act as `s + tJ`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{torsion_decomposition, ModuleElem, ModulePresentation, SubmoduleDesc};
use crate::domain::{DomainElem, Fraction};
use crate::error::{Error, Result};
use crate::field::EchelonSpan;

#[derive(Clone, Debug)]
pub struct Localization {
    source: ModulePresentation,
    /// `J` restricted to free coordinates (empty over `Z`).
    i_block: Option<Vec<Vec<BigRational>>>,
    kernel: SubmoduleDesc,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn qb(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

impl Localization {
    pub fn source(&self) -> &ModulePresentation {
        &self.source
    }

    /// Dimension of the localized module as a rational vector space.
    pub fn rational_dim(&self) -> usize {
        self.source.free_rank()
    }

    /// Dimension over the fraction field `Q(R)`.
    pub fn field_dim(&self) -> usize {
        match self.i_block {
            Some(_) => self.source.free_rank() / 2,
            None => self.source.free_rank(),
        }
    }

    /// Kernel of `M -> N`, always the torsion submodule.
    pub fn kernel(&self) -> &SubmoduleDesc {
        &self.kernel
    }

    pub fn is_injective(&self) -> bool {
        !self.source.has_torsion()
    }

    pub fn embed(&self, m: &ModuleElem) -> Result<Vec<BigRational>> {
        self.source.check(m)?;
        Ok(m.coords()[..self.source.free_rank()].iter().map(|&c| q(c)).collect())
    }

    fn apply_i(&self, v: &[BigRational]) -> Vec<BigRational> {
        let j = self.i_block.as_ref().expect("Z[i] localization");
        j.iter().map(|row| row.iter().zip(v).fold(BigRational::zero(), |acc, (a, x)| acc + a * x)).collect()
    }

    /// `r . v` for a ring element `r = s + ti`.
    fn act_elem(&self, r: &DomainElem, v: &[BigRational]) -> Result<Vec<BigRational>> {
        if r.im().is_zero() {
            let s = qb(r.re());
            return Ok(v.iter().map(|x| x * &s).collect());
        }
        if self.i_block.is_none() {
            return Err(Error::UnsupportedDomain(format!("scalar {r} on a Z-module")));
        }
        let s = qb(r.re());
        let t = qb(r.im());
        let jv = self.apply_i(v);
        Ok(v.iter().zip(&jv).map(|(x, y)| x * &s + y * &t).collect())
    }

    fn check_vec(&self, v: &[BigRational]) -> Result<()> {
        if v.len() != self.rational_dim() {
            return Err(Error::DimensionMismatch { expected: self.rational_dim(), got: v.len() });
        }
        Ok(())
    }

    /// Multiplication by a nonzero fraction `p / q`.
    pub fn act(&self, f: &Fraction, v: &[BigRational]) -> Result<Vec<BigRational>> {
        self.check_vec(v)?;
        if f.is_zero() {
            return Err(Error::ZeroScalar);
        }
        let num = self.act_elem(f.numerator(), v)?;
        // (s + ti)^{-1} = (s - ti) / (s^2 + t^2)
        let den = f.denominator();
        let conj = self.act_elem(&den.conj(), &num)?;
        let n = qb(&(den.re() * den.re() + den.im() * den.im()));
        Ok(conj.into_iter().map(|x| x / &n).collect())
    }

    /// The unique `x` with `r . x = v`.
    pub fn solve_action(&self, r: &DomainElem, v: &[BigRational]) -> Result<Vec<BigRational>> {
        if r.is_zero() {
            return Err(Error::ZeroScalar);
        }
        let inv = Fraction::new(DomainElem::one(r.domain()), r.clone())?;
        let x = self.act(&inv, v)?;
        debug_assert_eq!(self.act_elem(r, &x)?, v);
        Ok(x)
    }

    /// Bijectivity of `v -> r . v`, decided by the rank of its matrix.
    pub fn action_is_bijective(&self, r: &DomainElem) -> Result<bool> {
        if r.is_zero() {
            return Err(Error::ZeroScalar);
        }
        let n = self.rational_dim();
        let mut span = EchelonSpan::<BigRational>::new(n);
        for c in 0..n {
            let mut e = vec![BigRational::zero(); n];
            e[c] = BigRational::one();
            span.insert(&self.act_elem(r, &e)?);
        }
        Ok(span.dim() == n)
    }

    /// Whether `m1 / r1` and `m2 / r2` define the same element of the direct
    /// limit: some nonzero `t` kills `r2 m1 - r1 m2`.
    pub fn equivalent(&self, m1: &ModuleElem, r1: &DomainElem, m2: &ModuleElem, r2: &DomainElem) -> Result<bool> {
        let a = self.source.scalar_action(r2, m1)?;
        let b = self.source.scalar_action(r1, m2)?;
        let diff = self.source.sub(&a, &b)?;
        // an element is killed by a nonzero scalar iff it is torsion
        Ok(diff.coords()[..self.source.free_rank()].iter().all(|&c| c == 0))
    }

    /// The image of `m / r` in the localized module.
    pub fn fraction_image(&self, m: &ModuleElem, r: &DomainElem) -> Result<Vec<BigRational>> {
        let v = self.embed(m)?;
        let inv = Fraction::new(DomainElem::one(r.domain()), r.clone())?;
        self.act(&inv, &v)
    }
}

/// Localization of any module; the kernel is its torsion submodule.
pub fn localize(m: &ModulePresentation) -> Localization {
    let a = m.free_rank();
    let i_block = m
        .i_action()
        .filter(|_| m.domain() == crate::domain::Domain::GaussianIntegers)
        .map(|j| (0..a).map(|r| (0..a).map(|c| q(j[r][c])).collect()).collect());
    Localization { source: m.clone(), i_block, kernel: torsion_decomposition(m).torsion }
}

/// The module the envelope is built over: an injective localization.
pub fn envelope_module(m: &ModulePresentation) -> Result<Localization> {
    if m.has_torsion() {
        return Err(Error::TorsionPresent);
    }
    Ok(localize(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn localization_examples() {
        let m = ModulePresentation::z_module(1, vec![6]).unwrap();
        let l = localize(&m);
        assert_eq!(l.rational_dim(), 1);
        assert!(l.kernel().contains(&m.elem(vec![0, 1]).unwrap()).unwrap());
        assert!(!l.kernel().contains(&m.elem(vec![1, 0]).unwrap()).unwrap());
        let l = localize(&ModulePresentation::cyclic(4).unwrap());
        assert_eq!(l.rational_dim(), 0);
        assert!(!l.is_injective());
        assert!(localize(&ModulePresentation::free(2)).is_injective());
    }

    #[test]
    fn envelope_examples() {
        let l = envelope_module(&ModulePresentation::free(1)).unwrap();
        let v = l.solve_action(&DomainElem::int(7), &[q(1)]).unwrap();
        assert_eq!(v, vec![BigRational::new(1.into(), 7.into())]);
        assert!(l.action_is_bijective(&DomainElem::int(-4)).unwrap());
        assert_eq!(envelope_module(&ModulePresentation::free(3)).unwrap().field_dim(), 3);
        let m = ModulePresentation::z_module(1, vec![2]).unwrap();
        assert_eq!(envelope_module(&m).unwrap_err(), Error::TorsionPresent);
    }

    #[test]
    fn gaussian_envelope_inverts_scalars() {
        let zi = ModulePresentation::gaussian_integers();
        let l = envelope_module(&zi).unwrap();
        assert_eq!(l.field_dim(), 1);
        let r = DomainElem::gaussian(1, 1);
        let x = l.solve_action(&r, &[q(1), q(0)]).unwrap();
        // 1 / (1+i) = (1 - i) / 2
        assert_eq!(x, vec![BigRational::new(1.into(), 2.into()), BigRational::new((-1).into(), 2.into())]);
    }

    #[test]
    fn direct_limit_equivalence() {
        let m = ModulePresentation::z_module(1, vec![6]).unwrap();
        let l = localize(&m);
        let a = m.elem(vec![2, 1]).unwrap();
        let b = m.elem(vec![4, 5]).unwrap();
        // 2/3 ~ 4/6 even though the torsion parts differ
        assert!(l.equivalent(&a, &DomainElem::int(3), &b, &DomainElem::int(6)).unwrap());
        assert!(!l.equivalent(&a, &DomainElem::int(3), &b, &DomainElem::int(5)).unwrap());
    }
}
