//! Polynomials on `[-1, 1]` under `sigma(t) = t^2`, where pullback is the
//! substitution `t -> t^2`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::EchelonSpan;

/// Rational coefficients, lowest degree first, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFunc {
    coeffs: Vec<BigRational>,
    cap: usize,
}

impl PolyFunc {
    pub fn new(mut coeffs: Vec<BigRational>, cap: usize) -> Result<Self> {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let deg = coeffs.len().saturating_sub(1);
        if deg > cap {
            return Err(Error::DegreeOverflow { degree: deg, cap });
        }
        Ok(PolyFunc { coeffs, cap })
    }

    pub fn from_ints(coeffs: &[i64], cap: usize) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect(), cap)
    }

    pub fn monomial(k: usize, cap: usize) -> Result<Self> {
        let mut c = vec![BigRational::zero(); k + 1];
        c[k] = BigRational::from_integer(1.into());
        Self::new(c, cap)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    /// `f(t^2)`.
    pub fn compose_square(&self) -> Result<Self> {
        if let Some(d) = self.degree() {
            if 2 * d > self.cap {
                return Err(Error::DegreeOverflow { degree: 2 * d, cap: self.cap });
            }
        }
        let mut c = vec![BigRational::zero(); 2 * self.coeffs.len().saturating_sub(1) + 1];
        for (k, a) in self.coeffs.iter().enumerate() {
            c[2 * k] = a.clone();
        }
        Self::new(c, self.cap)
    }

    /// Product, subject to the same cap.
    pub fn mul(&self, other: &PolyFunc) -> Result<Self> {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(Vec::new(), self.cap);
        }
        let deg = self.coeffs.len() + other.coeffs.len() - 2;
        if deg > self.cap {
            return Err(Error::DegreeOverflow { degree: deg, cap: self.cap });
        }
        let mut c = vec![BigRational::zero(); deg + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c, self.cap)
    }

    fn padded(&self) -> Vec<BigRational> {
        let mut v = self.coeffs.clone();
        v.resize(self.cap + 1, BigRational::zero());
        v
    }
}

/// Span of `{1, f, f o sigma, ..., f o sigma^depth}` in monomial coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySpan {
    span: EchelonSpan<BigRational>,
    cap: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolySpanWire {
    pub dimension: usize,
    /// Rows as coefficient vectors, lowest degree first.
    pub basis: Vec<Vec<String>>,
    /// Set when every basis row is a single monomial.
    pub monomials: Option<Vec<usize>>,
}

impl PolySpan {
    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn basis(&self) -> Vec<PolyFunc> {
        self.span.rows().iter().map(|r| PolyFunc::new(r.clone(), self.cap).expect("row within cap")).collect()
    }

    /// Exponents of the basis rows when each row is a monomial.
    pub fn monomial_exponents(&self) -> Option<Vec<usize>> {
        self.span
            .rows()
            .iter()
            .map(|r| {
                let mut nz = r.iter().enumerate().filter(|(_, c)| !c.is_zero());
                let (k, _) = nz.next()?;
                nz.next().is_none().then_some(k)
            })
            .collect()
    }

    /// Always `false` for polynomials above the cap, which cannot lie in
    /// the span.
    pub fn contains(&self, g: &PolyFunc) -> bool {
        match g.degree() {
            Some(d) if d > self.cap => false,
            _ => {
                let mut v = g.coeffs.clone();
                v.resize(self.cap + 1, BigRational::zero());
                self.span.contains(&v)
            }
        }
    }

    pub fn to_wire(&self) -> PolySpanWire {
        PolySpanWire {
            dimension: self.dim(),
            basis: self.span.rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
            monomials: self.monomial_exponents(),
        }
    }
}

pub fn poly_cyclic_subspace(f: &PolyFunc, depth: usize) -> Result<PolySpan> {
    let cap = f.cap;
    let mut span = EchelonSpan::new(cap + 1);
    span.insert(&PolyFunc::from_ints(&[1], cap)?.padded());
    let mut g = f.clone();
    for n in 0..=depth {
        span.insert(&g.padded());
        if n < depth {
            g = g.compose_square()?;
        }
    }
    Ok(PolySpan { span, cap })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_map_example() {
        let t = PolyFunc::monomial(1, 8).unwrap();
        let span = poly_cyclic_subspace(&t, 3).unwrap();
        assert_eq!(span.monomial_exponents(), Some(vec![0, 1, 2, 4, 8]));
        let t3 = t.mul(&t).unwrap().mul(&t).unwrap();
        assert!(!span.contains(&t3));
        assert!(span.contains(&PolyFunc::monomial(4, 8).unwrap()));
        // t * t^2 are both in the span, their product is not
        assert!(!span.contains(&t.mul(&PolyFunc::monomial(2, 8).unwrap()).unwrap()));
    }

    #[test]
    fn overflow_and_trim() {
        let t = PolyFunc::monomial(1, 8).unwrap();
        assert_eq!(poly_cyclic_subspace(&t, 4).unwrap_err(), Error::DegreeOverflow { degree: 16, cap: 8 });
        assert_eq!(PolyFunc::from_ints(&[1, 0, 0], 0).unwrap().degree(), Some(0));
        assert!(PolyFunc::from_ints(&[0, 0, 1], 1).is_err());
        assert!(PolyFunc::from_ints(&[3, 0, 1], 2).unwrap().is_even());
    }
}
