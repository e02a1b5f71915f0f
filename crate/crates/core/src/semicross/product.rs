//! Iterated semicrossed products over a factorization `S = S1 x S2` of the
//! index semigroup, and the structure-constant check comparing them with
//! the single product.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::SemicrossedElem;
use crate::domain::{canonical_associate, divisors, Domain, DomainElem};
use crate::error::{Error, Result};
use crate::modules::ModulePresentation;
use crate::sample;

/// A subsemigroup of `R^x` used as a factor of a split.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SemigroupFactor {
    Units,
    /// Canonical associates.
    Positives,
    Whole,
}

impl SemigroupFactor {
    pub fn contains(&self, r: &DomainElem) -> bool {
        match self {
            SemigroupFactor::Units => r.is_unit(),
            SemigroupFactor::Positives => canonical_associate(r).map(|d| &d.positive_part == r).unwrap_or(false),
            SemigroupFactor::Whole => !r.is_zero(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Split {
    pub first: SemigroupFactor,
    pub second: SemigroupFactor,
}

impl Split {
    pub fn units_positives() -> Self {
        Split { first: SemigroupFactor::Units, second: SemigroupFactor::Positives }
    }

    /// The unique `(s1, s2)` with `s1 s2 = r`, `s1` in the first factor and
    /// `s2` in the second.
    pub fn decompose(&self, r: &DomainElem) -> Result<(DomainElem, DomainElem)> {
        let mut found = Vec::new();
        for d in divisors(r)? {
            if !self.first.contains(&d) {
                continue;
            }
            let q = r.exact_div(&d)?.expect("d divides r");
            if self.second.contains(&q) {
                found.push((d, q));
            }
        }
        match found.len() {
            1 => Ok(found.pop().expect("one element")),
            0 => Err(Error::NotADirectProduct(format!("{r} (no factorization)"))),
            _ => Err(Error::NotADirectProduct(format!("{r} ({} factorizations)", found.len()))),
        }
    }
}

/// Which factor sits inside: `(A x S_inner) x S_outer`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bracketing {
    FirstInside,
    SecondInside,
}

/// `sum_t T_t X_t` with `X_t` in the inner semicrossed product.
#[derive(Clone, Debug, PartialEq)]
pub struct IteratedElem {
    ambient: ModulePresentation,
    index_domain: Domain,
    outer: BTreeMap<DomainElem, SemicrossedElem>,
}

impl IteratedElem {
    pub fn zero(ambient: &ModulePresentation, index_domain: Domain) -> Self {
        IteratedElem { ambient: ambient.clone(), index_domain, outer: BTreeMap::new() }
    }

    pub fn outer_terms(&self) -> &BTreeMap<DomainElem, SemicrossedElem> {
        &self.outer
    }

    fn add_term(&mut self, t: DomainElem, x: SemicrossedElem) -> Result<()> {
        if x.is_zero() {
            return Ok(());
        }
        let sum = match self.outer.get(&t) {
            Some(y) => y.add(&x)?,
            None => x,
        };
        if sum.is_zero() {
            self.outer.remove(&t);
        } else {
            self.outer.insert(t, sum);
        }
        Ok(())
    }

    /// Splits every index of `x` and files `S_{s1 s2} a` as
    /// `T_outer (S_inner a)`.
    pub fn from_single(x: &SemicrossedElem, split: &Split, bracketing: Bracketing) -> Result<Self> {
        let mut out = IteratedElem::zero(x.ambient(), x.index_domain());
        for (r, a) in x.terms() {
            let (s1, s2) = split.decompose(r)?;
            let (inner, outer) = match bracketing {
                Bracketing::FirstInside => (s1, s2),
                Bracketing::SecondInside => (s2, s1),
            };
            let mut inner_elem = SemicrossedElem::zero_with_indices(x.ambient(), x.index_domain());
            inner_elem.add_term(inner, a.clone())?;
            out.add_term(outer, inner_elem)?;
        }
        Ok(out)
    }

    /// `(T_t X)(T_u Y) = T_{tu} beta_u(X) Y` where `beta_u` applies
    /// `alpha_u` to the coefficients of `X`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.ambient != other.ambient || self.index_domain != other.index_domain {
            return Err(Error::AmbientMismatch);
        }
        let mut out = IteratedElem::zero(&self.ambient, self.index_domain);
        for (t, x) in &self.outer {
            for (u, y) in &other.outer {
                out.add_term(t * u, x.alpha_all(u)?.multiply(y)?)?;
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProductReport {
    pub samples: usize,
    pub agree_first_inside: usize,
    pub agree_second_inside: usize,
    pub pass: bool,
}

/// Compares `phi(x y)` with `phi(x) phi(y)` for random monomials `x, y`
/// with indices from `pool`, in both bracketings.
pub fn product_decomposition_check(
    m: &ModulePresentation,
    split: &Split,
    samples: usize,
    pool: &[DomainElem],
    seed: u64,
) -> Result<ProductReport> {
    if pool.is_empty() {
        return Err(Error::EmptyList);
    }
    for r in pool {
        split.decompose(r)?;
    }
    let support = m.box_elements(2);
    let mut rng = sample::rng(seed);
    let mut agree = [0usize; 2];
    for _ in 0..samples {
        let x = sample::semicrossed(&mut rng, m, pool, &support, 1, 1);
        let y = sample::semicrossed(&mut rng, m, pool, &support, 1, 1);
        let xy = x.multiply(&y)?;
        for (slot, b) in [Bracketing::FirstInside, Bracketing::SecondInside].into_iter().enumerate() {
            let lhs = IteratedElem::from_single(&xy, split, b)?;
            let rhs = IteratedElem::from_single(&x, split, b)?.multiply(&IteratedElem::from_single(&y, split, b)?)?;
            if lhs == rhs {
                agree[slot] += 1;
            }
        }
    }
    Ok(ProductReport {
        samples,
        agree_first_inside: agree[0],
        agree_second_inside: agree[1],
        pass: agree[0] == samples && agree[1] == samples,
    })
}
