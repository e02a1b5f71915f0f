//! Truncated Fock representation on `l2(M) (x) l2(R^x)`.
//!
//! The basis is a finite window of pairs `(n, r)`. Every generator maps a
//! basis vector to a basis vector or to zero, so each operator is computed
//! first as an exact index map (recording which images left the window)
//! and only then assembled into a sparse matrix. Identities are asserted
//! on interior vectors: those whose whole image chain stays in the window.

mod quotient;
pub mod sparse;
mod verify;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::domain::{Domain, DomainElem};
use crate::error::{Error, Result};
use crate::modules::{quotient_module, ModuleElem, ModulePresentation, Quotient, SubmoduleDesc};
pub use quotient::{quotient_covariance_test, QuotientReport};
pub use sparse::SparseMatrix;
pub use verify::{
    represent_semicrossed, semicrossed_multiplicativity, verify_proposition, IdentityReport, MultiplicativityReport, PropositionReport,
};

/// Truncation bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FockWindow {
    /// Radius of the box on free coordinates; torsion coordinates are
    /// always complete. Required when the module has free rank.
    pub module_box: Option<i64>,
    /// `0 < |r| <= B` over `Z`, `0 < N(r) <= B` over `Z[i]`.
    pub semigroup_bound: i64,
}

impl FockWindow {
    pub fn new(module_box: i64, semigroup_bound: i64) -> Self {
        FockWindow { module_box: Some(module_box), semigroup_bound }
    }
}

/// A generator of the Fock algebra or an adjoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FockOp {
    U(ModuleElem),
    /// `U(m)^* = U(-m)`.
    UStar(ModuleElem),
    S(DomainElem),
    /// `T_r(v_n (x) u_{rt}) = v_n (x) u_t`, zero off the range of `S_r`.
    SStar(DomainElem),
}

/// Where a basis vector goes under an exact (untruncated) operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Row(usize),
    /// The operator kills the vector.
    Zero,
    /// The image exists but lies outside the window.
    Outside,
}

#[derive(Debug)]
pub struct OpData {
    targets: Vec<Target>,
    matrix: Arc<SparseMatrix>,
    adjoint: OnceLock<Arc<SparseMatrix>>,
}

impl OpData {
    fn new(targets: Vec<Target>) -> Self {
        let dim = targets.len();
        let matrix = SparseMatrix::from_column_targets(
            targets.iter().map(|t| match t {
                Target::Row(i) => Some(*i),
                _ => None,
            }),
            dim,
        );
        OpData { targets, matrix: Arc::new(matrix), adjoint: OnceLock::new() }
    }

    pub fn targets(&self) -> &[Target] {
        &self.targets
    }

    pub fn matrix(&self) -> &Arc<SparseMatrix> {
        &self.matrix
    }

    pub fn adjoint(&self) -> &Arc<SparseMatrix> {
        self.adjoint.get_or_init(|| Arc::new(self.matrix.adjoint()))
    }
}

/// Windowed Fock space for `M` or for a quotient `M / N`.
pub struct FockRep {
    source: ModulePresentation,
    quotient: Option<Quotient>,
    space: ModulePresentation,
    window: FockWindow,
    index_domain: Domain,
    module_elems: Vec<ModuleElem>,
    module_index: HashMap<ModuleElem, usize>,
    semigroup: Vec<DomainElem>,
    semigroup_index: HashMap<DomainElem, usize>,
    cache: Mutex<HashMap<FockOp, Arc<OpData>>>,
}

impl std::fmt::Debug for FockRep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FockRep")
            .field("source", &self.source)
            .field("window", &self.window)
            .field("basis_size", &self.basis_size())
            .finish()
    }
}

fn semigroup_window(domain: Domain, bound: i64) -> Vec<DomainElem> {
    let mut out = Vec::new();
    match domain {
        Domain::Integers => {
            for r in -bound..=bound {
                if r != 0 {
                    out.push(DomainElem::int(r));
                }
            }
        }
        Domain::GaussianIntegers => {
            let side = (bound as f64).sqrt().floor() as i64 + 1;
            for a in -side..=side {
                for b in -side..=side {
                    let n = a * a + b * b;
                    if n > 0 && n <= bound {
                        out.push(DomainElem::gaussian(a, b));
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Basis of the window for the given module and bounds.
pub fn build_fock(m: &ModulePresentation, window: FockWindow) -> Result<FockRep> {
    FockRep::new(m, None, window)
}

/// Fock space over the cosets of a subgroup `N` (a submodule is not
/// required): `U(m)(v_{g+N} (x) u_r) = v_{(r m + g) + N} (x) u_r`.
pub fn build_quotient_fock(m: &ModulePresentation, n: &SubmoduleDesc, window: FockWindow) -> Result<FockRep> {
    let q = quotient_module(m, n, false)?;
    if !q.target().is_finite() && window.module_box.is_none() {
        return Err(Error::InfiniteQuotient);
    }
    FockRep::new(m, Some(q), window)
}

impl FockRep {
    fn new(source: &ModulePresentation, quotient: Option<Quotient>, window: FockWindow) -> Result<Self> {
        if window.semigroup_bound < 1 {
            return Err(Error::WindowTooSmall("the semigroup window must contain 1".into()));
        }
        let space = quotient.as_ref().map(|q| q.target().clone()).unwrap_or_else(|| source.clone());
        let radius = match window.module_box {
            Some(b) if b >= 0 => b,
            Some(_) => return Err(Error::WindowTooSmall("negative module box".into())),
            None if space.is_finite() => 0,
            None => return Err(Error::WindowTooSmall("module has free rank; a module box is required".into())),
        };
        let module_elems = space.box_elements(radius);
        let module_index = module_elems.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let index_domain = source.domain();
        let semigroup = semigroup_window(index_domain, window.semigroup_bound);
        let semigroup_index = semigroup.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        Ok(FockRep {
            source: source.clone(),
            quotient,
            space,
            window,
            index_domain,
            module_elems,
            module_index,
            semigroup,
            semigroup_index,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn source(&self) -> &ModulePresentation {
        &self.source
    }

    /// The module indexing the `v_*` factor (`M`, or `M / N`).
    pub fn space(&self) -> &ModulePresentation {
        &self.space
    }

    pub fn quotient(&self) -> Option<&Quotient> {
        self.quotient.as_ref()
    }

    pub fn window(&self) -> FockWindow {
        self.window
    }

    pub fn module_window(&self) -> &[ModuleElem] {
        &self.module_elems
    }

    pub fn semigroup_window(&self) -> &[DomainElem] {
        &self.semigroup
    }

    pub fn basis_size(&self) -> usize {
        self.module_elems.len() * self.semigroup.len()
    }

    pub fn basis_label(&self, j: usize) -> (&ModuleElem, &DomainElem) {
        let s = self.semigroup.len();
        (&self.module_elems[j / s], &self.semigroup[j % s])
    }

    pub fn index_of(&self, n: &ModuleElem, r: &DomainElem) -> Option<usize> {
        let r = r.to_domain(self.index_domain).ok()?;
        Some(self.module_index.get(n)? * self.semigroup.len() + self.semigroup_index.get(&r)?)
    }

    fn normalize_scalar(&self, r: &DomainElem) -> Result<DomainElem> {
        if r.is_zero() {
            return Err(Error::ZeroScalar);
        }
        let r = r.to_domain(self.index_domain)?;
        if !self.semigroup_index.contains_key(&r) {
            return Err(Error::OutOfWindow(format!("scalar {r}")));
        }
        Ok(r)
    }

    fn check_shift(&self, m: &ModuleElem) -> Result<()> {
        self.source.check(m)?;
        if self.quotient.is_none() {
            let b = self.window.module_box.unwrap_or(0);
            if m.coords()[..self.source.free_rank()].iter().any(|c| c.abs() > b) {
                return Err(Error::OutOfWindow(format!("module element {m}")));
            }
        }
        Ok(())
    }

    fn normalize_op(&self, op: &FockOp) -> Result<FockOp> {
        Ok(match op {
            FockOp::U(m) => {
                self.check_shift(m)?;
                FockOp::U(m.clone())
            }
            FockOp::UStar(m) => {
                self.check_shift(m)?;
                FockOp::U(self.source.neg(m)?)
            }
            FockOp::S(r) => FockOp::S(self.normalize_scalar(r)?),
            FockOp::SStar(r) => FockOp::SStar(self.normalize_scalar(r)?),
        })
    }

    /// `r . m` read in the space (projected when working over a quotient).
    fn shift(&self, r: &DomainElem, m: &ModuleElem) -> Result<ModuleElem> {
        let x = self.source.scalar_action(r, m)?;
        match &self.quotient {
            Some(q) => q.project(&x),
            None => Ok(x),
        }
    }

    fn compute(&self, op: &FockOp) -> Result<OpData> {
        let s_len = self.semigroup.len();
        let mut targets = vec![Target::Zero; self.basis_size()];
        match op {
            FockOp::U(m) => {
                for (si, s) in self.semigroup.iter().enumerate() {
                    let delta = self.shift(s, m)?;
                    for (mi, n) in self.module_elems.iter().enumerate() {
                        let image = self.space.add(n, &delta)?;
                        targets[mi * s_len + si] = match self.module_index.get(&image) {
                            Some(&k) => Target::Row(k * s_len + si),
                            None => Target::Outside,
                        };
                    }
                }
            }
            FockOp::S(r) => {
                for (si, s) in self.semigroup.iter().enumerate() {
                    let t = self.semigroup_index.get(&(r * s)).copied();
                    for mi in 0..self.module_elems.len() {
                        targets[mi * s_len + si] = match t {
                            Some(k) => Target::Row(mi * s_len + k),
                            None => Target::Outside,
                        };
                    }
                }
            }
            FockOp::SStar(r) => {
                for (si, s) in self.semigroup.iter().enumerate() {
                    let t = match s.exact_div(r)? {
                        Some(t) => match self.semigroup_index.get(&t) {
                            Some(&k) => Target::Row(k),
                            None => Target::Outside,
                        },
                        None => Target::Zero,
                    };
                    for mi in 0..self.module_elems.len() {
                        targets[mi * s_len + si] = match t {
                            Target::Row(k) => Target::Row(mi * s_len + k),
                            other => other,
                        };
                    }
                }
            }
            FockOp::UStar(_) => unreachable!("normalized to U"),
        }
        Ok(OpData::new(targets))
    }

    /// Index map and matrix of a generator, cached.
    pub fn op(&self, op: &FockOp) -> Result<Arc<OpData>> {
        let key = self.normalize_op(op)?;
        if let Some(d) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(d.clone());
        }
        let data = Arc::new(self.compute(&key)?);
        self.cache.lock().expect("cache lock").entry(key).or_insert(data.clone());
        Ok(data)
    }

    pub fn op_matrix(&self, op: &FockOp) -> Result<SparseMatrix> {
        Ok(self.op(op)?.matrix().as_ref().clone())
    }

    /// Columns whose exact image left the window.
    pub fn truncated_columns(&self, op: &FockOp) -> Result<Vec<usize>> {
        Ok(self.op(op)?.targets().iter().enumerate().filter(|(_, t)| **t == Target::Outside).map(|(j, _)| j).collect())
    }

    /// Exact image of `(n, r)` as a labelled basis vector, `None` for zero.
    pub fn apply_to_label(&self, op: &FockOp, n: &ModuleElem, r: &DomainElem) -> Result<Option<(ModuleElem, DomainElem)>> {
        let j = self.index_of(n, r).ok_or_else(|| Error::OutOfWindow(format!("basis vector ({n}, {r})")))?;
        match self.op(op)?.targets()[j] {
            Target::Row(k) => {
                let (a, b) = self.basis_label(k);
                Ok(Some((a.clone(), b.clone())))
            }
            Target::Zero => Ok(None),
            Target::Outside => Err(Error::OutOfWindow(format!("image of ({n}, {r})"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_sizes() {
        let z = ModulePresentation::free(1);
        assert_eq!(build_fock(&z, FockWindow::new(8, 6)).unwrap().basis_size(), 204);
        let z4 = ModulePresentation::cyclic(4).unwrap();
        let rep = build_fock(&z4, FockWindow { module_box: None, semigroup_bound: 3 }).unwrap();
        assert_eq!(rep.basis_size(), 24);
        assert!(matches!(build_fock(&z4, FockWindow { module_box: None, semigroup_bound: 0 }), Err(Error::WindowTooSmall(_))));
        assert!(matches!(build_fock(&z, FockWindow { module_box: None, semigroup_bound: 3 }), Err(Error::WindowTooSmall(_))));
    }

    #[test]
    fn generator_actions() {
        let z = ModulePresentation::free(1);
        let rep = build_fock(&z, FockWindow::new(8, 6)).unwrap();
        let e = |x: i64| z.elem(vec![x]).unwrap();
        let r = DomainElem::int;
        let out = rep.apply_to_label(&FockOp::U(e(2)), &e(1), &r(3)).unwrap();
        assert_eq!(out, Some((e(7), r(3))));
        let out = rep.apply_to_label(&FockOp::S(r(2)), &e(1), &r(3)).unwrap();
        assert_eq!(out, Some((e(1), r(6))));
        assert_eq!(rep.apply_to_label(&FockOp::SStar(r(2)), &e(1), &r(3)).unwrap(), None);
        assert_eq!(rep.apply_to_label(&FockOp::SStar(r(2)), &e(1), &r(6)).unwrap(), Some((e(1), r(3))));
        assert!(matches!(rep.op(&FockOp::U(e(9))), Err(Error::OutOfWindow(_))));
        assert!(matches!(rep.op(&FockOp::S(r(7))), Err(Error::OutOfWindow(_))));
        for op in [FockOp::U(e(2)), FockOp::S(r(-3)), FockOp::SStar(r(2)), FockOp::UStar(e(1))] {
            assert!(rep.op_matrix(&op).unwrap().is_partial_permutation());
        }
        assert!(!rep.truncated_columns(&FockOp::U(e(2))).unwrap().is_empty());
    }

    #[test]
    fn quotient_basis() {
        let z = ModulePresentation::free(1);
        let n = SubmoduleDesc::from_coords(&z, &[vec![6]]).unwrap();
        let rep = build_quotient_fock(&z, &n, FockWindow { module_box: None, semigroup_bound: 3 }).unwrap();
        assert_eq!(rep.module_window().len(), 6);
        let q = rep.quotient().unwrap();
        let coset = |x: i64| q.project(&z.elem(vec![x]).unwrap()).unwrap();
        let out = rep.apply_to_label(&FockOp::U(z.elem(vec![1]).unwrap()), &coset(5), &DomainElem::int(2)).unwrap();
        assert_eq!(out, Some((coset(1), DomainElem::int(2))));
        let zi = ModulePresentation::gaussian_integers();
        let ints = SubmoduleDesc::from_coords(&zi, &[vec![1, 0]]).unwrap();
        assert_eq!(
            build_quotient_fock(&zi, &ints, FockWindow { module_box: None, semigroup_bound: 2 }).unwrap_err(),
            Error::InfiniteQuotient
        );
        let rep = build_quotient_fock(&zi, &ints, FockWindow::new(3, 2)).unwrap();
        assert_eq!(rep.module_window().len(), 7);
    }
}
