//! Normal forms `sum S_r a_r` in the semicrossed product `C[M] x R^x`.
//!
//! Multiplication uses the covariance rule `a S_s = S_s alpha_s(a)`, so
//! `(S_r a)(S_s b) = S_{rs} alpha_s(a) b`.

mod product;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::domain::{canonical_associate, Domain, DomainElem};
use crate::error::{Error, Result};
use crate::groupalg::{GroupAlgElem, TermWire};
use crate::modules::{quotient_module, ModulePresentation, Quotient, SubgroupPresentation, SubmoduleDesc};

pub use product::{product_decomposition_check, IteratedElem, ProductReport, SemigroupFactor, Split};

#[derive(Clone, Debug, PartialEq)]
pub struct SemicrossedElem {
    index_domain: Domain,
    ambient: ModulePresentation,
    terms: BTreeMap<DomainElem, GroupAlgElem>,
}

/// One term of the wire form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SemicrossedTermWire {
    pub index: DomainElem,
    pub coeff_poly: Vec<TermWire>,
}

impl SemicrossedElem {
    pub fn zero(ambient: &ModulePresentation) -> Self {
        SemicrossedElem::zero_with_indices(ambient, ambient.domain())
    }

    /// Zero element whose indices live in `index_domain`; used when the
    /// coefficient module is presented over `Z` but the scalars are Gaussian.
    pub fn zero_with_indices(ambient: &ModulePresentation, index_domain: Domain) -> Self {
        SemicrossedElem { index_domain, ambient: ambient.clone(), terms: BTreeMap::new() }
    }

    /// `S_1 U^0`.
    pub fn one(ambient: &ModulePresentation) -> Self {
        SemicrossedElem::monomial(ambient, DomainElem::int(1), GroupAlgElem::unit(ambient)).expect("valid")
    }

    pub fn monomial(ambient: &ModulePresentation, r: DomainElem, a: GroupAlgElem) -> Result<Self> {
        let mut x = SemicrossedElem::zero(ambient);
        x.add_term(r, a)?;
        Ok(x)
    }

    pub fn from_wire(ambient: &ModulePresentation, terms: &[SemicrossedTermWire]) -> Result<Self> {
        let mut x = SemicrossedElem::zero(ambient);
        for t in terms {
            x.add_term(t.index.clone(), GroupAlgElem::from_wire(ambient, &t.coeff_poly)?)?;
        }
        Ok(x)
    }

    pub fn to_wire(&self) -> Vec<SemicrossedTermWire> {
        self.terms.iter().map(|(r, a)| SemicrossedTermWire { index: r.clone(), coeff_poly: a.to_wire() }).collect()
    }

    pub fn ambient(&self) -> &ModulePresentation {
        &self.ambient
    }

    pub fn index_domain(&self) -> Domain {
        self.index_domain
    }

    pub fn terms(&self) -> &BTreeMap<DomainElem, GroupAlgElem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn normalize_index(&self, r: DomainElem) -> Result<DomainElem> {
        if r.is_zero() {
            return Err(Error::ZeroScalar);
        }
        r.to_domain(self.index_domain)
    }

    pub fn add_term(&mut self, r: DomainElem, a: GroupAlgElem) -> Result<()> {
        if a.ambient() != &self.ambient {
            return Err(Error::AmbientMismatch);
        }
        let r = self.normalize_index(r)?;
        if a.is_zero() {
            return Ok(());
        }
        let sum = match self.terms.get(&r) {
            Some(b) => b.add(&a)?,
            None => a,
        };
        if sum.is_zero() {
            self.terms.remove(&r);
        } else {
            self.terms.insert(r, sum);
        }
        Ok(())
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient || self.index_domain != other.index_domain {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (r, a) in &other.terms {
            out.add_term(r.clone(), a.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (r, a) in &other.terms {
            out.add_term(r.clone(), a.neg())?;
        }
        Ok(out)
    }

    /// Product with a caller-supplied coefficient action `alpha`.
    pub fn multiply_with(&self, other: &Self, alpha: impl Fn(&DomainElem, &GroupAlgElem) -> Result<GroupAlgElem>) -> Result<Self> {
        self.compatible(other)?;
        let mut out = SemicrossedElem::zero_with_indices(&self.ambient, self.index_domain);
        for (r, a) in &self.terms {
            for (s, b) in &other.terms {
                out.add_term(r * s, alpha(s, a)?.convolve(b)?)?;
            }
        }
        Ok(out)
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.multiply_with(other, |s, a| a.alpha_endo(s))
    }

    /// Applies `alpha_t` to every coefficient, keeping the indices.
    pub fn alpha_all(&self, t: &DomainElem) -> Result<Self> {
        let mut out = SemicrossedElem::zero_with_indices(&self.ambient, self.index_domain);
        for (r, a) in &self.terms {
            out.add_term(r.clone(), a.alpha_endo(t)?)?;
        }
        Ok(out)
    }

    /// Terms whose index is a unit.
    pub fn diagonal_part(&self) -> Self {
        SemicrossedElem {
            index_domain: self.index_domain,
            ambient: self.ambient.clone(),
            terms: self.terms.iter().filter(|(r, _)| r.is_unit()).map(|(r, a)| (r.clone(), a.clone())).collect(),
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.terms.keys().all(|r| canonical_associate(r).map(|d| d.positive_part.is_one()).unwrap_or(false))
    }

    /// Image under the quotient map, with `S_s -> T_s`.
    pub fn push_through(&self, q: &Quotient) -> Result<Self> {
        let mut out = SemicrossedElem::zero_with_indices(q.target(), self.index_domain);
        for (r, a) in &self.terms {
            out.add_term(r.clone(), a.quotient_push(q)?)?;
        }
        Ok(out)
    }
}

impl fmt::Display for SemicrossedElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (r, a)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "S_{r}[{a}]")?;
        }
        Ok(())
    }
}

/// `S_r^* a S_r = alpha_r(a)`.
pub fn sc_compress(r: &DomainElem, a: &GroupAlgElem) -> Result<GroupAlgElem> {
    a.alpha_endo(r)
}

/// The map `C[M] x R^x -> C[M/N] x R^x`; needs `N` to be a submodule so that
/// the actions intertwine.
pub fn induced_quotient_map(n: &SubmoduleDesc, x: &SemicrossedElem) -> Result<(Quotient, SemicrossedElem)> {
    if n.ambient() != x.ambient() {
        return Err(Error::AmbientMismatch);
    }
    let q = quotient_module(x.ambient(), n, true)?;
    let image = x.push_through(&q)?;
    Ok((q, image))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantReport {
    pub invariant: bool,
    /// First scalar moving a generator of `N` outside `N`.
    pub witness: Option<DomainElem>,
    pub pairs_checked: usize,
    pub products_agree: bool,
}

impl InvariantReport {
    pub fn pass(&self) -> bool {
        self.invariant && self.products_agree
    }
}

/// Checks `alpha_r(C[N]) in C[N]` for the sampled scalars (and every index
/// used by the samples), then multiplies each pair inside `C[N] x R^x`
/// using the restricted action and compares with the product in
/// `C[M] x R^x`.
pub fn invariant_subalgebra_check(
    n: &SubmoduleDesc,
    r_sample: &[DomainElem],
    pairs: &[(SemicrossedElem, SemicrossedElem)],
) -> Result<InvariantReport> {
    let m = n.ambient();
    let mut scalars: Vec<DomainElem> = r_sample.to_vec();
    for (x, y) in pairs {
        scalars.extend(x.terms.keys().cloned());
        scalars.extend(y.terms.keys().cloned());
    }
    for r in &scalars {
        for g in n.generators() {
            if !n.contains(&m.scalar_action(r, g)?)? {
                return Ok(InvariantReport { invariant: false, witness: Some(r.clone()), pairs_checked: 0, products_agree: false });
            }
        }
    }
    let sub = SubgroupPresentation::new(n)?;
    let small = sub.presentation().clone();
    let restrict = |x: &SemicrossedElem| -> Result<SemicrossedElem> {
        let mut out = SemicrossedElem::zero_with_indices(&small, x.index_domain);
        for (r, a) in &x.terms {
            let b = a.map_support(&small, |g| sub.restrict(g)?.ok_or(Error::NotSubgroup))?;
            out.add_term(r.clone(), b)?;
        }
        Ok(out)
    };
    let include = |x: &SemicrossedElem| -> Result<SemicrossedElem> {
        let mut out = SemicrossedElem::zero_with_indices(m, x.index_domain);
        for (r, a) in &x.terms {
            out.add_term(r.clone(), a.map_support(m, |g| sub.include(g))?)?;
        }
        Ok(out)
    };
    let restricted_alpha = |s: &DomainElem, a: &GroupAlgElem| -> Result<GroupAlgElem> {
        a.map_support(&small, |g| {
            let moved = m.scalar_action(s, &sub.include(g)?)?;
            sub.restrict(&moved)?.ok_or(Error::NotSubgroup)
        })
    };
    let mut agree = true;
    for (x, y) in pairs {
        let big = x.multiply(y)?;
        let inside = restrict(x)?.multiply_with(&restrict(y)?, restricted_alpha)?;
        if include(&inside)? != big {
            agree = false;
            break;
        }
    }
    Ok(InvariantReport { invariant: true, witness: None, pairs_checked: pairs.len(), products_agree: agree })
}
