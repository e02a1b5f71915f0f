//! Group algebras `C[M]`: finitely supported Gaussian-rational functions on
//! a module, with convolution, involution, the endomorphisms induced by
//! scalars, conditional expectations and quotient pushforwards.

mod character;
pub mod cyclotomic;
mod fourier;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeff::Coeff;
use crate::domain::DomainElem;
use crate::error::{Error, Result};
use crate::modules::{quotient_module, ModuleElem, ModulePresentation, Quotient, SubmoduleDesc};

pub use character::{intersect_kernel_groups, Character, Representation};
pub use cyclotomic::{Cyclotomic, CyclotomicField};
pub use fourier::{fourier_transform, l2_energy, FourierTransform, EXACT_ORDER_LIMIT};

/// `sum c_m U^m` with no zero coefficients stored.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupAlgElem {
    ambient: ModulePresentation,
    terms: BTreeMap<ModuleElem, Coeff>,
}

/// One term of the wire form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermWire {
    pub element: Vec<i64>,
    pub coeff: Coeff,
}

impl GroupAlgElem {
    pub fn zero(ambient: &ModulePresentation) -> Self {
        GroupAlgElem { ambient: ambient.clone(), terms: BTreeMap::new() }
    }

    /// `U^0`.
    pub fn unit(ambient: &ModulePresentation) -> Self {
        GroupAlgElem::monomial(ambient, ambient.zero(), Coeff::one()).expect("zero is in every module")
    }

    pub fn monomial(ambient: &ModulePresentation, m: ModuleElem, c: Coeff) -> Result<Self> {
        let mut a = GroupAlgElem::zero(ambient);
        a.add_term(m, c)?;
        Ok(a)
    }

    /// Builds from `(coordinates, coefficient)` pairs, reducing and merging.
    pub fn from_terms(ambient: &ModulePresentation, terms: impl IntoIterator<Item = (Vec<i64>, Coeff)>) -> Result<Self> {
        let mut a = GroupAlgElem::zero(ambient);
        for (m, c) in terms {
            let m = ambient.elem(m)?;
            a.add_term(m, c)?;
        }
        Ok(a)
    }

    pub fn from_wire(ambient: &ModulePresentation, terms: &[TermWire]) -> Result<Self> {
        GroupAlgElem::from_terms(ambient, terms.iter().map(|t| (t.element.clone(), t.coeff.clone())))
    }

    pub fn to_wire(&self) -> Vec<TermWire> {
        self.terms.iter().map(|(m, c)| TermWire { element: m.coords().to_vec(), coeff: c.clone() }).collect()
    }

    pub fn ambient(&self) -> &ModulePresentation {
        &self.ambient
    }

    pub fn terms(&self) -> &BTreeMap<ModuleElem, Coeff> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &ModuleElem) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn add_term(&mut self, m: ModuleElem, c: Coeff) -> Result<()> {
        self.ambient.check(&m)?;
        if c.is_zero() {
            return Ok(());
        }
        let slot = self.terms.entry(m).or_insert_with(Coeff::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    fn same_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale(&Coeff::int(-1))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return GroupAlgElem::zero(&self.ambient);
        }
        GroupAlgElem { ambient: self.ambient.clone(), terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    /// `(a b)(g) = sum_{m + n = g} a(m) b(n)`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        let mut out = GroupAlgElem::zero(&self.ambient);
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                out.add_term(self.ambient.add(m, n)?, a * b)?;
            }
        }
        Ok(out)
    }

    /// `a*(g) = conj(a(-g))`.
    pub fn involution(&self) -> Result<Self> {
        let mut out = GroupAlgElem::zero(&self.ambient);
        for (m, c) in &self.terms {
            out.add_term(self.ambient.neg(m)?, c.conj())?;
        }
        Ok(out)
    }

    /// `sum c_m U^m -> sum c_m U^{r m}`; colliding images add.
    pub fn alpha_endo(&self, r: &DomainElem) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::ZeroScalar);
        }
        let mut out = GroupAlgElem::zero(&self.ambient);
        for (m, c) in &self.terms {
            out.add_term(self.ambient.scalar_action(r, m)?, c.clone())?;
        }
        Ok(out)
    }

    /// Keeps the coefficients supported on `N`.
    pub fn conditional_expectation(&self, n: &SubmoduleDesc) -> Result<Self> {
        if n.ambient() != &self.ambient {
            return Err(Error::AmbientMismatch);
        }
        let mut out = GroupAlgElem::zero(&self.ambient);
        for (m, c) in &self.terms {
            if n.contains(m)? {
                out.add_term(m.clone(), c.clone())?;
            }
        }
        Ok(out)
    }

    /// Pushes `U^m` to `U^{m + N}` in `C[M/N]`.
    pub fn quotient_push(&self, q: &Quotient) -> Result<Self> {
        if q.source() != &self.ambient {
            return Err(Error::NotSubgroup);
        }
        let mut out = GroupAlgElem::zero(q.target());
        for (m, c) in &self.terms {
            out.add_term(q.project(m)?, c.clone())?;
        }
        Ok(out)
    }

    /// As [`quotient_push`](Self::quotient_push), building the group-level
    /// quotient by `N` first.
    pub fn quotient_push_by(&self, n: &SubmoduleDesc) -> Result<(Quotient, Self)> {
        if n.ambient() != &self.ambient {
            return Err(Error::NotSubgroup);
        }
        let q = quotient_module(&self.ambient, n, false)?;
        let pushed = self.quotient_push(&q)?;
        Ok((q, pushed))
    }

    /// Moves the element to another ambient by an element-level map.
    pub fn map_support(&self, target: &ModulePresentation, f: impl Fn(&ModuleElem) -> Result<ModuleElem>) -> Result<Self> {
        let mut out = GroupAlgElem::zero(target);
        for (m, c) in &self.terms {
            out.add_term(f(m)?, c.clone())?;
        }
        Ok(out)
    }
}

impl fmt::Display for GroupAlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})U^{m}")?;
        }
        Ok(())
    }
}
