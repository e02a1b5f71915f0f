//! Operator identities on interior vectors, and agreement of the matrix
//! representation with symbolic semicrossed multiplication.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::sparse::{basis_vector, distance, SparseMatrix, SparseVec};
use super::{FockOp, FockRep, OpData, Target};
use crate::domain::DomainElem;
use crate::error::{Error, Result};
use crate::modules::ModuleElem;
use crate::semicross::SemicrossedElem;

/// One factor of an operator word: the exact index map that decides
/// interiority, and the matrix actually applied.
#[derive(Clone)]
pub(crate) struct Factor {
    ideal: Arc<OpData>,
    matrix: Arc<SparseMatrix>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub interior_count: usize,
    pub max_residual: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropositionReport {
    pub basis_size: usize,
    pub identities: Vec<IdentityReport>,
    pub pass: bool,
}

impl FockRep {
    pub(crate) fn factor(&self, op: &FockOp) -> Result<Factor> {
        let d = self.op(op)?;
        Ok(Factor { matrix: d.matrix().clone(), ideal: d })
    }

    /// The adjoint matrix of `U(m)` or `S(r)`, with interiority taken from
    /// the exact adjoint `U(-m)` or `T_r`.
    pub(crate) fn adjoint_factor(&self, op: &FockOp) -> Result<Factor> {
        let ideal_op = match op {
            FockOp::U(m) => FockOp::UStar(m.clone()),
            FockOp::S(r) => FockOp::SStar(r.clone()),
            _ => return Err(Error::InvalidInput("adjoint of a generator only".into())),
        };
        Ok(Factor { matrix: self.op(op)?.adjoint().clone(), ideal: self.op(&ideal_op)? })
    }
}

/// Whether the exact chain of the word (applied right to left) stays in
/// the window from basis vector `j`. Returns the final index, if nonzero.
fn chain(word: &[Factor], j: usize) -> Option<Option<usize>> {
    let mut cur = j;
    for f in word.iter().rev() {
        match f.ideal.targets()[cur] {
            Target::Row(k) => cur = k,
            Target::Zero => return Some(None),
            Target::Outside => return None,
        }
    }
    Some(Some(cur))
}

fn apply_word(word: &[Factor], v: SparseVec) -> SparseVec {
    word.iter().rev().fold(v, |acc, f| {
        if let [(j, x)] = acc.as_slice() {
            // partial permutations keep single-entry vectors single-entry
            let col = f.matrix.column(*j);
            if col.len() <= 1 {
                return col.iter().map(|&(i, a)| (i, a * x)).filter(|(_, y)| *y != Complex64::new(0.0, 0.0)).collect();
            }
        }
        f.matrix.apply(&acc)
    })
}

/// `(interior count, max residual)` of `lhs = rhs` over all basis vectors.
fn word_residual(dim: usize, lhs: &[Factor], rhs: &[Factor]) -> (usize, f64) {
    (0..dim)
        .into_par_iter()
        .filter(|&j| chain(lhs, j).is_some() && chain(rhs, j).is_some())
        .map(|j| {
            let a = apply_word(lhs, basis_vector(j));
            let b = apply_word(rhs, basis_vector(j));
            (1usize, distance(&a, &b))
        })
        .reduce(|| (0, 0.0), |x, y| (x.0 + y.0, x.1.max(y.1)))
}

struct Tally {
    name: &'static str,
    count: usize,
    max: f64,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, count: 0, max: 0.0 }
    }

    fn add(&mut self, (c, r): (usize, f64)) {
        self.count += c;
        self.max = self.max.max(r);
    }
}

/// Skips combinations whose derived operators leave the declared window.
fn derived<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(x) => Ok(Some(x)),
        Err(Error::OutOfWindow(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Checks the eight operator identities of the Fock representation:
/// unitarity of `U(m)` with `U(m)^* = U(-m)`, isometry of `S(r)` with
/// `S(r)^* = T_r`, `U(m)U(n) = U(m+n)`, `S(r)S(s) = S(rs)`,
/// `U(m)S(r) = S(r)U(rm)`, `U(m)S(r+s) = S(r+s)U(rm)U(sm)` for `r+s != 0`,
/// `U(m+n)S(r) = S(r)U(rm)U(rn)`, and `S(1) = U(0) = 1`.
pub fn verify_proposition(rep: &FockRep, m_sample: &[ModuleElem], r_sample: &[DomainElem], tol: f64) -> Result<PropositionReport> {
    let dim = rep.basis_size();
    let m_ring = rep.source();
    let u = |m: &ModuleElem| rep.factor(&FockOp::U(m.clone()));
    let s = |r: &DomainElem| rep.factor(&FockOp::S(r.clone()));

    let mut unitary = Tally::new("unitary");
    for m in m_sample {
        let um = u(m)?;
        let um_adj = rep.adjoint_factor(&FockOp::U(m.clone()))?;
        unitary.add(word_residual(dim, &[um_adj.clone(), um.clone()], &[]));
        unitary.add(word_residual(dim, &[um.clone(), um_adj.clone()], &[]));
        if let Some(neg) = derived(u(&m_ring.neg(m)?))? {
            unitary.add(word_residual(dim, &[um_adj], &[neg]));
        }
    }

    let mut isometry = Tally::new("isometry");
    for r in r_sample {
        let sr = s(r)?;
        let sr_adj = rep.adjoint_factor(&FockOp::S(r.clone()))?;
        isometry.add(word_residual(dim, &[sr_adj.clone(), sr], &[]));
        isometry.add(word_residual(dim, &[sr_adj], &[rep.factor(&FockOp::SStar(r.clone()))?]));
    }

    let mut group = Tally::new("group_representation");
    for m in m_sample {
        for n in m_sample {
            if let Some(sum) = derived(u(&m_ring.add(m, n)?))? {
                group.add(word_residual(dim, &[u(m)?, u(n)?], &[sum]));
            }
        }
    }

    let mut semigroup = Tally::new("semigroup_representation");
    for r in r_sample {
        for t in r_sample {
            if let Some(prod) = derived(s(&(r * t)))? {
                semigroup.add(word_residual(dim, &[s(r)?, s(t)?], &[prod]));
            }
        }
    }

    let mut covariance = Tally::new("covariance");
    for m in m_sample {
        for r in r_sample {
            if let Some(urm) = derived(u(&m_ring.scalar_action(r, m)?))? {
                covariance.add(word_residual(dim, &[u(m)?, s(r)?], &[s(r)?, urm]));
            }
        }
    }

    let mut covariance_sum = Tally::new("covariance_sum");
    for m in m_sample {
        for r in r_sample {
            for t in r_sample {
                let rt = r + t;
                if rt.is_zero() {
                    continue;
                }
                let parts = (|| -> Result<(Factor, Factor, Factor)> {
                    Ok((s(&rt)?, u(&m_ring.scalar_action(r, m)?)?, u(&m_ring.scalar_action(t, m)?)?))
                })();
                if let Some((srt, urm, utm)) = derived(parts)? {
                    covariance_sum.add(word_residual(dim, &[u(m)?, srt.clone()], &[srt, urm, utm]));
                }
            }
        }
    }

    let mut module_sum = Tally::new("covariance_module_sum");
    for m in m_sample {
        for n in m_sample {
            for r in r_sample {
                let parts = (|| -> Result<(Factor, Factor, Factor)> {
                    Ok((u(&m_ring.add(m, n)?)?, u(&m_ring.scalar_action(r, m)?)?, u(&m_ring.scalar_action(r, n)?)?))
                })();
                if let Some((umn, urm, urn)) = derived(parts)? {
                    module_sum.add(word_residual(dim, &[umn, s(r)?], &[s(r)?, urm, urn]));
                }
            }
        }
    }

    let mut unit = Tally::new("unit");
    unit.add(word_residual(dim, &[s(&DomainElem::int(1))?], &[]));
    unit.add(word_residual(dim, &[u(&m_ring.zero())?], &[]));

    let tallies = [unitary, isometry, group, semigroup, covariance, covariance_sum, module_sum, unit];
    if let Some(t) = tallies.iter().find(|t| t.count == 0) {
        return Err(Error::EmptyInterior(t.name.into()));
    }
    let identities: Vec<IdentityReport> = tallies
        .iter()
        .map(|t| IdentityReport { name: t.name.into(), interior_count: t.count, max_residual: t.max, pass: t.max <= tol })
        .collect();
    let pass = identities.iter().all(|i| i.pass);
    Ok(PropositionReport { basis_size: dim, identities, pass })
}

/// Words `S(r) U(m)` for each term of `x`, with coefficients.
fn term_words(rep: &FockRep, x: &SemicrossedElem) -> Result<Vec<(Vec<Factor>, Complex64)>> {
    let mut out = Vec::new();
    for (r, a) in x.terms() {
        let sr = rep.factor(&FockOp::S(r.clone()))?;
        for (m, c) in a.terms() {
            out.push((vec![sr.clone(), rep.factor(&FockOp::U(m.clone()))?], c.to_complex()));
        }
    }
    Ok(out)
}

/// `sum_r S(r) (sum_m a_r(m) U(m))` as a matrix.
pub fn represent_semicrossed(rep: &FockRep, x: &SemicrossedElem) -> Result<SparseMatrix> {
    if x.ambient() != rep.source() {
        return Err(Error::AmbientMismatch);
    }
    let mut acc = SparseMatrix::zeros(rep.basis_size());
    for (word, c) in term_words(rep, x)? {
        let prod = word.iter().rev().fold(SparseMatrix::identity(rep.basis_size()), |p, f| f.matrix.mul(&p));
        acc = acc.add(&prod.scale(c));
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MultiplicativityReport {
    pub interior_count: usize,
    pub max_residual: f64,
}

/// Compares `rep(x) rep(y)` with `rep(x y)` on vectors where every term
/// word involved stays inside the window.
pub fn semicrossed_multiplicativity(rep: &FockRep, x: &SemicrossedElem, y: &SemicrossedElem) -> Result<MultiplicativityReport> {
    let xy = x.multiply(y)?;
    let (wx, wy, wxy) = (term_words(rep, x)?, term_words(rep, y)?, term_words(rep, &xy)?);
    let (mx, my, mxy) = (represent_semicrossed(rep, x)?, represent_semicrossed(rep, y)?, represent_semicrossed(rep, &xy)?);
    let interior = |j: usize| -> bool {
        wxy.iter().all(|(w, _)| chain(w, j).is_some())
            && wy.iter().all(|(w, _)| match chain(w, j) {
                None => false,
                Some(None) => true,
                Some(Some(k)) => wx.iter().all(|(w2, _)| chain(w2, k).is_some()),
            })
    };
    let (count, max) = (0..rep.basis_size())
        .into_par_iter()
        .filter(|&j| interior(j))
        .map(|j| {
            let e = basis_vector(j);
            (1usize, distance(&mx.apply(&my.apply(&e)), &mxy.apply(&e)))
        })
        .reduce(|| (0, 0.0), |a, b| (a.0 + b.0, a.1.max(b.1)));
    Ok(MultiplicativityReport { interior_count: count, max_residual: max })
}

pub(crate) fn word_residual_on(rep: &FockRep, lhs: &[Factor], rhs: &[Factor]) -> (usize, f64) {
    word_residual(rep.basis_size(), lhs, rhs)
}
