//! Quotient Fock operators for a pair `(M, N)`: they form a covariant
//! representation trivializing `C[N]` exactly when `N` is a submodule.

use serde::Serialize;

use super::verify::word_residual_on;
use super::{build_quotient_fock, FockOp, FockWindow};
use crate::domain::DomainElem;
use crate::error::{Error, Result};
use crate::modules::{is_submodule, ModulePresentation, SubmoduleDesc};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuotientReport {
    pub is_submodule: bool,
    /// `U(r n)` acts as the identity for every generator `n` and sampled `r`.
    pub trivializes: bool,
    /// `U(m) S(r) = S(r) U(rm)` on the quotient space.
    pub covariance: bool,
    pub verdict: bool,
    pub agree: bool,
    pub basis_size: usize,
    pub interior_count: usize,
    pub max_residual: f64,
}

pub fn quotient_covariance_test(
    m: &ModulePresentation,
    n: &SubmoduleDesc,
    r_sample: &[DomainElem],
    window: FockWindow,
    tol: f64,
) -> Result<QuotientReport> {
    let rep = build_quotient_fock(m, n, window)?;
    let submodule = is_submodule(n)?;

    let mut triv_count = 0;
    let mut triv_max: f64 = 0.0;
    let mut needs_check = false;
    for g in n.generators() {
        for r in r_sample {
            let rg = m.scalar_action(r, g)?;
            if rg.is_zero() {
                continue;
            }
            needs_check = true;
            let (c, res) = word_residual_on(&rep, &[rep.factor(&FockOp::U(rg))?], &[]);
            triv_count += c;
            triv_max = triv_max.max(res);
        }
    }
    if needs_check && triv_count == 0 {
        return Err(Error::EmptyInterior("quotient trivialization".into()));
    }

    let mut cov_count = 0;
    let mut cov_max: f64 = 0.0;
    let mut shifts = m.basis();
    shifts.extend(n.generators().iter().cloned());
    for x in &shifts {
        for r in r_sample {
            let lhs = [rep.factor(&FockOp::U(x.clone()))?, rep.factor(&FockOp::S(r.clone()))?];
            let rhs = [rep.factor(&FockOp::S(r.clone()))?, rep.factor(&FockOp::U(m.scalar_action(r, x)?))?];
            let (c, res) = word_residual_on(&rep, &lhs, &rhs);
            cov_count += c;
            cov_max = cov_max.max(res);
        }
    }
    if !shifts.is_empty() && !r_sample.is_empty() && cov_count == 0 {
        return Err(Error::EmptyInterior("quotient covariance".into()));
    }

    let trivializes = triv_max <= tol;
    let covariance = cov_max <= tol;
    let verdict = trivializes && covariance;
    Ok(QuotientReport {
        is_submodule: submodule,
        trivializes,
        covariance,
        verdict,
        agree: verdict == submodule,
        basis_size: rep.basis_size(),
        interior_count: triv_count + cov_count,
        max_residual: triv_max.max(cov_max),
    })
}
