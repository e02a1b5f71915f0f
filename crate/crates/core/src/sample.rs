//! Seeded random inputs for the sampled checks.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::Coeff;
use crate::domain::DomainElem;
use crate::groupalg::GroupAlgElem;
use crate::modules::{ModuleElem, ModulePresentation};
use crate::semicross::SemicrossedElem;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A Gaussian integer coefficient with parts in `[-3, 3]`, never zero.
pub fn coeff(rng: &mut SampleRng) -> Coeff {
    loop {
        let c = Coeff::gaussian(rng.random_range(-3..=3), rng.random_range(-3..=3));
        if !c.is_zero() {
            return c;
        }
    }
}

/// Up to `max_terms` terms drawn from `support`.
pub fn group_elem(rng: &mut SampleRng, ambient: &ModulePresentation, support: &[ModuleElem], max_terms: usize) -> GroupAlgElem {
    let mut a = GroupAlgElem::zero(ambient);
    let n = rng.random_range(1..=max_terms.max(1));
    for _ in 0..n {
        let m = support.choose(rng).expect("nonempty support").clone();
        a.add_term(m, coeff(rng)).expect("support lies in the ambient");
    }
    a
}

/// `sum S_r a_r` with up to `max_indices` indices and `max_terms` terms per
/// coefficient.
pub fn semicrossed(
    rng: &mut SampleRng,
    ambient: &ModulePresentation,
    indices: &[DomainElem],
    support: &[ModuleElem],
    max_indices: usize,
    max_terms: usize,
) -> SemicrossedElem {
    let mut x = SemicrossedElem::zero(ambient);
    let n = rng.random_range(1..=max_indices.max(1));
    for _ in 0..n {
        let r = indices.choose(rng).expect("nonempty index pool").clone();
        let a = group_elem(rng, ambient, support, max_terms);
        x = x.add(&SemicrossedElem::monomial(ambient, r, a).expect("valid index")).expect("same ambient");
    }
    x
}

pub fn pick<'a, T>(rng: &mut SampleRng, items: &'a [T]) -> &'a T {
    items.choose(rng).expect("nonempty")
}
