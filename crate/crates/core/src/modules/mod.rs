//! Finitely generated modules over `Z` and `Z[i]`.
//!
//! A module is stored as the abelian group `Z^a + Z/d_1 + ... + Z/d_k` in
//! invariant-factor coordinates. A `Z[i]`-module additionally carries an
//! integer matrix `J` for multiplication by `i` on the coordinate lattice.
//! Every lattice question (kernels, membership, quotients, intersections)
//! is answered exactly through Smith normal form.

mod localize;
pub mod snf;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::domain::{Domain, DomainElem};
use crate::error::{Error, Result};
pub use localize::{envelope_module, localize, Localization};
pub use snf::{integer_kernel, smith_normal_form, solve_integer, IntMatrix, SmithForm};

/// Coordinates of a module element; torsion coordinates lie in `[0, d_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ModuleElem(Vec<i64>);

impl ModuleElem {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    fn big(&self) -> Vec<BigInt> {
        self.0.iter().map(|&c| BigInt::from(c)).collect()
    }
}

impl fmt::Display for ModuleElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, PartialEq, Eq)]
struct Inner {
    domain: Domain,
    free_rank: usize,
    torsion: Vec<i64>,
    i_action: Option<Vec<Vec<i64>>>,
}

/// A finitely generated module in invariant-factor form. Cheap to clone.
#[derive(Clone, Debug)]
pub struct ModulePresentation(Arc<Inner>);

impl PartialEq for ModulePresentation {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for ModulePresentation {}

/// Scenario-file form of a module description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub domain: Domain,
    #[serde(default)]
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i_action: Option<Vec<Vec<i64>>>,
}

impl TryFrom<&ModuleSpec> for ModulePresentation {
    type Error = Error;
    fn try_from(s: &ModuleSpec) -> Result<Self> {
        ModulePresentation::new(s.domain, s.free_rank, s.torsion.clone(), s.i_action.clone())
    }
}

impl ModulePresentation {
    /// Validates the divisibility chain and, over `Z[i]`, that `J` is well
    /// defined modulo the relations and squares to `-1`.
    pub fn new(domain: Domain, free_rank: usize, torsion: Vec<i64>, i_action: Option<Vec<Vec<i64>>>) -> Result<Self> {
        for (k, &d) in torsion.iter().enumerate() {
            if d < 2 {
                return Err(Error::InvalidInput(format!("invariant factor {d} must be >= 2")));
            }
            if k > 0 && d % torsion[k - 1] != 0 {
                return Err(Error::InvalidInput(format!(
                    "invariant factors must form a divisibility chain: {} does not divide {d}",
                    torsion[k - 1]
                )));
            }
        }
        let n = free_rank + torsion.len();
        let i_action = match (domain, i_action) {
            (Domain::Integers, None) => None,
            (Domain::Integers, Some(_)) => return Err(Error::InvalidInput("a Z-module takes no i-action matrix".into())),
            (Domain::GaussianIntegers, None) if n == 0 => Some(Vec::new()),
            (Domain::GaussianIntegers, None) => return Err(Error::InvalidInput("a Z[i]-module needs an i-action matrix".into())),
            (Domain::GaussianIntegers, Some(j)) => {
                if j.len() != n || j.iter().any(|r| r.len() != n) {
                    return Err(Error::DimensionMismatch { expected: n, got: j.len() });
                }
                Some(j)
            }
        };
        let p = ModulePresentation(Arc::new(Inner { domain, free_rank, torsion, i_action }));
        p.check_i_action()?;
        Ok(p)
    }

    /// `Z^a` as a `Z`-module.
    pub fn free(a: usize) -> Self {
        ModulePresentation::new(Domain::Integers, a, Vec::new(), None).expect("valid")
    }

    /// `Z/d` as a `Z`-module.
    pub fn cyclic(d: i64) -> Result<Self> {
        ModulePresentation::new(Domain::Integers, 0, vec![d], None)
    }

    pub fn z_module(free_rank: usize, torsion: Vec<i64>) -> Result<Self> {
        ModulePresentation::new(Domain::Integers, free_rank, torsion, None)
    }

    /// `Z[i]` as a module over itself: coordinates `(a, b)` mean `a + bi`.
    pub fn gaussian_integers() -> Self {
        ModulePresentation::new(Domain::GaussianIntegers, 2, Vec::new(), Some(vec![vec![0, -1], vec![1, 0]])).expect("valid")
    }

    pub fn spec(&self) -> ModuleSpec {
        ModuleSpec {
            domain: self.domain(),
            free_rank: self.free_rank(),
            torsion: self.torsion().to_vec(),
            i_action: match self.domain() {
                Domain::Integers => None,
                Domain::GaussianIntegers => self.0.i_action.clone(),
            },
        }
    }

    fn check_i_action(&self) -> Result<()> {
        let Some(j) = &self.0.i_action else { return Ok(()) };
        let a = self.free_rank();
        let n = self.dim();
        for (t, &d) in self.torsion().iter().enumerate() {
            let col = a + t;
            for (row, j_row) in j.iter().enumerate().take(n) {
                let entry = j_row[col] as i128 * d as i128;
                let ok = if row < a { entry == 0 } else { entry % self.torsion()[row - a] as i128 == 0 };
                if !ok {
                    return Err(Error::InvalidInput("i-action does not preserve the relations".into()));
                }
            }
        }
        for c in 0..n {
            let mut e = vec![0i64; n];
            e[c] = 1;
            let once = self.apply_matrix_raw(j, &e)?;
            let twice = self.apply_matrix_raw(j, &once)?;
            let sum: Vec<i64> = twice.iter().zip(&e).map(|(x, y)| x + y).collect();
            if !self.reduce(sum)?.is_zero() {
                return Err(Error::InvalidInput("i-action must square to -1".into()));
            }
        }
        Ok(())
    }

    pub fn domain(&self) -> Domain {
        self.0.domain
    }

    pub fn free_rank(&self) -> usize {
        self.0.free_rank
    }

    pub fn torsion(&self) -> &[i64] {
        &self.0.torsion
    }

    /// Number of coordinates, `a + k`.
    pub fn dim(&self) -> usize {
        self.0.free_rank + self.0.torsion.len()
    }

    pub fn i_action(&self) -> Option<&[Vec<i64>]> {
        self.0.i_action.as_deref()
    }

    pub fn has_torsion(&self) -> bool {
        !self.0.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.0.free_rank == 0
    }

    /// Largest invariant factor, if any torsion exists.
    pub fn exponent(&self) -> Option<i64> {
        self.0.torsion.last().copied()
    }

    pub fn order(&self) -> Option<u128> {
        if !self.is_finite() {
            return None;
        }
        Some(self.0.torsion.iter().map(|&d| d as u128).product())
    }

    /// Modulus of coordinate `i` (0 for a free coordinate).
    pub fn modulus(&self, i: usize) -> i64 {
        if i < self.0.free_rank {
            0
        } else {
            self.0.torsion[i - self.0.free_rank]
        }
    }

    pub fn moduli(&self) -> Vec<BigInt> {
        (0..self.dim()).map(|i| BigInt::from(self.modulus(i))).collect()
    }

    pub fn zero(&self) -> ModuleElem {
        ModuleElem(vec![0; self.dim()])
    }

    /// The standard generators `e_1, ..., e_n`.
    pub fn basis(&self) -> Vec<ModuleElem> {
        (0..self.dim())
            .map(|c| {
                let mut e = vec![0; self.dim()];
                e[c] = 1;
                ModuleElem(e)
            })
            .collect()
    }

    pub fn elem(&self, coords: Vec<i64>) -> Result<ModuleElem> {
        self.reduce(coords)
    }

    fn reduce(&self, mut coords: Vec<i64>) -> Result<ModuleElem> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: coords.len() });
        }
        for (i, c) in coords.iter_mut().enumerate().skip(self.0.free_rank) {
            *c = c.rem_euclid(self.modulus(i));
        }
        Ok(ModuleElem(coords))
    }

    pub fn reduce_big(&self, coords: &[BigInt]) -> Result<ModuleElem> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: coords.len() });
        }
        let mut out = Vec::with_capacity(coords.len());
        for (i, c) in coords.iter().enumerate() {
            let d = self.modulus(i);
            let v = if d == 0 { c.clone() } else { c.mod_floor(&BigInt::from(d)) };
            out.push(v.to_i64().ok_or(Error::Overflow)?);
        }
        Ok(ModuleElem(out))
    }

    pub fn check(&self, m: &ModuleElem) -> Result<()> {
        if m.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: m.len() });
        }
        Ok(())
    }

    fn reduce_i128(&self, coords: Vec<i128>) -> Result<ModuleElem> {
        let mut out = Vec::with_capacity(coords.len());
        for (i, c) in coords.into_iter().enumerate() {
            let d = self.modulus(i) as i128;
            let v = if d == 0 { c } else { c.rem_euclid(d) };
            out.push(i64::try_from(v).map_err(|_| Error::Overflow)?);
        }
        Ok(ModuleElem(out))
    }

    pub fn add(&self, a: &ModuleElem, b: &ModuleElem) -> Result<ModuleElem> {
        self.check(a)?;
        self.check(b)?;
        self.reduce_i128(a.0.iter().zip(&b.0).map(|(&x, &y)| x as i128 + y as i128).collect())
    }

    pub fn neg(&self, a: &ModuleElem) -> Result<ModuleElem> {
        self.check(a)?;
        self.reduce_i128(a.0.iter().map(|&x| -(x as i128)).collect())
    }

    pub fn sub(&self, a: &ModuleElem, b: &ModuleElem) -> Result<ModuleElem> {
        self.check(a)?;
        self.check(b)?;
        self.reduce_i128(a.0.iter().zip(&b.0).map(|(&x, &y)| x as i128 - y as i128).collect())
    }

    /// `k * m` for an integer `k` (the underlying abelian group action).
    pub fn mul_int(&self, k: i64, m: &ModuleElem) -> Result<ModuleElem> {
        self.check(m)?;
        let coords: Option<Vec<i128>> = m.0.iter().map(|&x| (x as i128).checked_mul(k as i128)).collect();
        self.reduce_i128(coords.ok_or(Error::Overflow)?)
    }

    fn apply_matrix_raw(&self, j: &[Vec<i64>], m: &[i64]) -> Result<Vec<i64>> {
        let mut out = Vec::with_capacity(m.len());
        for row in j {
            let mut acc: i128 = 0;
            for (&a, &x) in row.iter().zip(m) {
                acc = acc.checked_add((a as i128).checked_mul(x as i128).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
            }
            out.push(i64::try_from(acc).map_err(|_| Error::Overflow)?);
        }
        Ok(out)
    }

    /// Multiplication by `i`; only for `Z[i]`-modules.
    pub fn apply_i(&self, m: &ModuleElem) -> Result<ModuleElem> {
        self.check(m)?;
        let j = self
            .0
            .i_action
            .as_ref()
            .filter(|_| self.domain() == Domain::GaussianIntegers)
            .ok_or_else(|| Error::UnsupportedDomain("i acting on a Z-module".into()))?;
        let raw = self.apply_matrix_raw(j, &m.0)?;
        self.reduce(raw)
    }

    /// Integer coefficients `(a, b)` of a scalar `a + bi`, reduced modulo the
    /// exponent when the module is finite.
    fn scalar_parts(&self, r: &DomainElem) -> Result<(i64, i64)> {
        if r.is_zero() {
            return Err(Error::ZeroScalar);
        }
        if r.domain() == Domain::GaussianIntegers && self.domain() == Domain::Integers {
            return Err(Error::UnsupportedDomain(format!("scalar {r} acting on a Z-module")));
        }
        let (mut a, mut b) = (r.re().clone(), r.im().clone());
        if let (true, Some(e)) = (self.is_finite(), self.exponent()) {
            a = a.mod_floor(&BigInt::from(e));
            b = b.mod_floor(&BigInt::from(e));
        }
        Ok((a.to_i64().ok_or(Error::Overflow)?, b.to_i64().ok_or(Error::Overflow)?))
    }

    /// `r . m`, reduced.
    pub fn scalar_action(&self, r: &DomainElem, m: &ModuleElem) -> Result<ModuleElem> {
        self.check(m)?;
        let (a, b) = self.scalar_parts(r)?;
        let mut out: Vec<i128> = Vec::with_capacity(m.len());
        for &x in &m.0 {
            out.push((a as i128).checked_mul(x as i128).ok_or(Error::Overflow)?);
        }
        if b != 0 {
            let im = self.apply_i(m)?;
            for (o, &y) in out.iter_mut().zip(&im.0) {
                *o = o.checked_add((b as i128).checked_mul(y as i128).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
            }
        }
        self.reduce_i128(out)
    }

    /// Integer matrix of `m -> r . m` on the coordinate lattice.
    pub fn action_matrix(&self, r: &DomainElem) -> Result<IntMatrix> {
        let (a, b) = self.scalar_parts(r)?;
        let n = self.dim();
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::from(a);
        }
        if b != 0 {
            let j = self.0.i_action.as_ref().expect("checked by scalar_parts");
            for (i, row) in j.iter().enumerate() {
                for (k, &x) in row.iter().enumerate() {
                    m[(i, k)] += BigInt::from(b) * BigInt::from(x);
                }
            }
        }
        Ok(m)
    }

    /// Columns `d_j e_{a+j}` spanning the relation lattice.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.dim();
        let a = self.free_rank();
        let cols: Vec<Vec<BigInt>> = self
            .torsion()
            .iter()
            .enumerate()
            .map(|(t, &d)| {
                let mut c = vec![BigInt::zero(); n];
                c[a + t] = BigInt::from(d);
                c
            })
            .collect();
        IntMatrix::from_columns(n, &cols)
    }

    /// All elements of a finite module, lexicographically.
    pub fn elements(&self) -> Result<Vec<ModuleElem>> {
        if !self.is_finite() {
            return Err(Error::InfiniteGroup);
        }
        let mut out = vec![Vec::new()];
        for &d in self.torsion() {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<i64>| {
                    (0..d).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        Ok(out.into_iter().map(ModuleElem).collect())
    }

    /// Elements with free coordinates in `[-radius, radius]` and all torsion
    /// coordinates, lexicographically.
    pub fn box_elements(&self, radius: i64) -> Vec<ModuleElem> {
        let mut out = vec![Vec::new()];
        for i in 0..self.dim() {
            let d = self.modulus(i);
            let range: Vec<i64> = if d == 0 { (-radius..=radius).collect() } else { (0..d).collect() };
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<i64>| {
                    range.iter().map(move |&x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(ModuleElem).collect()
    }
}

/// The subgroup generated by a list of elements of an ambient module.
#[derive(Clone, Debug)]
pub struct SubmoduleDesc {
    ambient: ModulePresentation,
    generators: Vec<ModuleElem>,
}

impl SubmoduleDesc {
    pub fn new(ambient: &ModulePresentation, generators: Vec<ModuleElem>) -> Result<Self> {
        let gens = generators.into_iter().map(|g| ambient.reduce(g.0)).collect::<Result<Vec<_>>>()?;
        Ok(SubmoduleDesc { ambient: ambient.clone(), generators: gens })
    }

    pub fn from_coords(ambient: &ModulePresentation, generators: &[Vec<i64>]) -> Result<Self> {
        SubmoduleDesc::new(ambient, generators.iter().map(|g| ModuleElem(g.clone())).collect())
    }

    pub fn zero(ambient: &ModulePresentation) -> Self {
        SubmoduleDesc { ambient: ambient.clone(), generators: Vec::new() }
    }

    pub fn whole(ambient: &ModulePresentation) -> Self {
        SubmoduleDesc { ambient: ambient.clone(), generators: ambient.basis() }
    }

    pub fn ambient(&self) -> &ModulePresentation {
        &self.ambient
    }

    pub fn generators(&self) -> &[ModuleElem] {
        &self.generators
    }

    /// `[G | R]`: generator columns followed by the ambient relations.
    fn lattice(&self) -> IntMatrix {
        let n = self.ambient.dim();
        let cols: Vec<Vec<BigInt>> = self.generators.iter().map(ModuleElem::big).collect();
        IntMatrix::from_columns(n, &cols).hcat(&self.ambient.relation_matrix())
    }

    /// Integer coefficients `c` with `m = sum c_j g_j` in the ambient module.
    pub fn solve(&self, m: &ModuleElem) -> Result<Option<Vec<BigInt>>> {
        self.ambient.check(m)?;
        let sol = solve_integer(&self.lattice(), &m.big());
        Ok(sol.map(|mut c| {
            c.truncate(self.generators.len());
            c
        }))
    }

    pub fn contains(&self, m: &ModuleElem) -> Result<bool> {
        Ok(self.solve(m)?.is_some())
    }

    pub fn contains_subgroup(&self, other: &SubmoduleDesc) -> Result<bool> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_subgroup(&self, other: &SubmoduleDesc) -> Result<bool> {
        Ok(self.contains_subgroup(other)? && other.contains_subgroup(self)?)
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(ModuleElem::is_zero)
    }

    /// Elements of the subgroup of a finite ambient module, sorted.
    pub fn elements(&self) -> Result<Vec<ModuleElem>> {
        let all = self.ambient.elements()?;
        let mut out = Vec::new();
        for m in all {
            if self.contains(&m)? {
                out.push(m);
            }
        }
        Ok(out)
    }
}

impl PartialEq for SubmoduleDesc {
    /// Equality of the generated subgroups, not of the generator lists.
    fn eq(&self, other: &Self) -> bool {
        self.same_subgroup(other).unwrap_or(false)
    }
}

pub fn submodule_membership(n: &SubmoduleDesc, m: &ModuleElem) -> Result<bool> {
    n.contains(m)
}

/// Whether the subgroup is closed under the ring action. Over `Z` every
/// subgroup is; over `Z[i]` it suffices to check `i . g` for each generator.
pub fn is_submodule(n: &SubmoduleDesc) -> Result<bool> {
    match n.ambient.domain() {
        Domain::Integers => Ok(true),
        Domain::GaussianIntegers => {
            for g in &n.generators {
                if !n.contains(&n.ambient.apply_i(g)?)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// The submodule generated by `gens`: the subgroup generated by the
/// generators together with their `i`-images.
pub fn generated_submodule(ambient: &ModulePresentation, gens: Vec<ModuleElem>) -> Result<SubmoduleDesc> {
    let mut all = gens.clone();
    if ambient.domain() == Domain::GaussianIntegers {
        for g in &gens {
            all.push(ambient.apply_i(g)?);
        }
    }
    SubmoduleDesc::new(ambient, all)
}

/// Kernel of the homomorphism `x -> P x` from `source` into a product of
/// cyclic groups `Z/moduli_i` (modulus 0 meaning `Z`).
pub fn hom_kernel(source: &ModulePresentation, p: &IntMatrix, moduli: &[BigInt]) -> Result<SubmoduleDesc> {
    let n = source.dim();
    if p.cols() != n || p.rows() != moduli.len() {
        return Err(Error::DimensionMismatch { expected: n, got: p.cols() });
    }
    let t = p.rows();
    let mut dmod = IntMatrix::zeros(t, t);
    for (i, m) in moduli.iter().enumerate() {
        dmod[(i, i)] = -m;
    }
    let kernel = integer_kernel(&p.hcat(&dmod));
    let mut seen = BTreeSet::new();
    for v in kernel {
        let x = source.reduce_big(&v[..n])?;
        if !x.is_zero() {
            seen.insert(x);
        }
    }
    Ok(SubmoduleDesc { ambient: source.clone(), generators: seen.into_iter().collect() })
}

/// Generators of `{m : r . m = 0}`.
pub fn action_kernel(r: &DomainElem, m: &ModulePresentation) -> Result<SubmoduleDesc> {
    let a = m.action_matrix(r)?;
    hom_kernel(m, &a, &m.moduli())
}

pub fn action_is_injective(r: &DomainElem, m: &ModulePresentation) -> Result<bool> {
    Ok(action_kernel(r, m)?.is_trivial())
}

/// Exact bijectivity of `m -> r . m`: trivial kernel and every standard
/// generator in the image.
pub fn action_is_bijective(r: &DomainElem, m: &ModulePresentation) -> Result<bool> {
    if !action_is_injective(r, m)? {
        return Ok(false);
    }
    let image = m.action_matrix(r)?.hcat(&m.relation_matrix());
    for e in m.basis() {
        if solve_integer(&image, &e.big()).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Intersection of two subgroups of the same ambient module.
pub fn intersect_subgroups(a: &SubmoduleDesc, b: &SubmoduleDesc) -> Result<SubmoduleDesc> {
    if a.ambient != b.ambient {
        return Err(Error::AmbientMismatch);
    }
    let la = a.lattice();
    let lb = b.lattice();
    let kernel = integer_kernel(&la.hcat(&lb.neg()));
    let mut seen = BTreeSet::new();
    for v in kernel {
        let x = la.mul_vec(&v[..la.cols()]);
        let x = a.ambient.reduce_big(&x)?;
        if !x.is_zero() {
            seen.insert(x);
        }
    }
    Ok(SubmoduleDesc { ambient: a.ambient.clone(), generators: seen.into_iter().collect() })
}

/// `M / N` with its projection and a section on coordinates.
#[derive(Clone, Debug)]
pub struct Quotient {
    source: ModulePresentation,
    target: ModulePresentation,
    subgroup: SubmoduleDesc,
    projection: IntMatrix,
    lift: IntMatrix,
    module_level: bool,
}

impl Quotient {
    pub fn source(&self) -> &ModulePresentation {
        &self.source
    }

    pub fn target(&self) -> &ModulePresentation {
        &self.target
    }

    pub fn subgroup(&self) -> &SubmoduleDesc {
        &self.subgroup
    }

    /// False when `N` is only a subgroup; the target is then presented as
    /// an abelian group (over `Z`).
    pub fn is_module_level(&self) -> bool {
        self.module_level
    }

    pub fn projection_matrix(&self) -> &IntMatrix {
        &self.projection
    }

    pub fn project(&self, m: &ModuleElem) -> Result<ModuleElem> {
        self.source.check(m)?;
        self.target.reduce_big(&self.projection.mul_vec(&m.big()))
    }

    /// A representative in `M` of a coset.
    pub fn lift(&self, q: &ModuleElem) -> Result<ModuleElem> {
        self.target.check(q)?;
        self.source.reduce_big(&self.lift.mul_vec(&q.big()))
    }
}

/// Presentation of `M / N`. With `require_module`, `N` must be closed under
/// the ring action; otherwise a group-level quotient is returned and
/// flagged via [`Quotient::is_module_level`].
pub fn quotient_module(m: &ModulePresentation, n: &SubmoduleDesc, require_module: bool) -> Result<Quotient> {
    if &n.ambient != m {
        return Err(Error::AmbientMismatch);
    }
    let closed = is_submodule(n)?;
    if require_module && !closed {
        return Err(Error::NotSubmodule);
    }
    let rel = n.lattice();
    let s = smith_normal_form(&rel);
    let dim = m.dim();
    let mut free_rows = Vec::new();
    let mut torsion_rows = Vec::new();
    let mut torsion = Vec::new();
    for i in 0..dim {
        if i >= s.rank {
            free_rows.push(i);
        } else {
            let d = &s.d[(i, i)];
            if !d.is_one() {
                torsion_rows.push(i);
                torsion.push(d.to_i64().ok_or(Error::Overflow)?);
            }
        }
    }
    let rows: Vec<usize> = free_rows.iter().chain(&torsion_rows).copied().collect();
    let projection = s.u.select_rows(&rows);
    let lift = s.u_inv.select_cols(&rows);
    let group = ModulePresentation::new(Domain::Integers, free_rows.len(), torsion.clone(), None)?;
    let mut q = Quotient { source: m.clone(), target: group, subgroup: n.clone(), projection, lift, module_level: closed };
    if closed && m.domain() == Domain::GaussianIntegers {
        let t = q.target.dim();
        let mut j = vec![vec![0i64; t]; t];
        for (col, e) in q.target.basis().iter().enumerate() {
            let x = q.lift(e)?;
            let y = q.project(&m.apply_i(&x)?)?;
            for (row, &c) in y.coords().iter().enumerate() {
                j[row][col] = c;
            }
        }
        q.target = ModulePresentation::new(Domain::GaussianIntegers, free_rows.len(), torsion, Some(j))?;
    }
    Ok(q)
}

/// A subgroup `N` presented on its own coordinates, with the inclusion
/// into the ambient module and the inverse on `N`.
#[derive(Clone, Debug)]
pub struct SubgroupPresentation {
    sub: SubmoduleDesc,
    /// `Z^g / K` where `K` is the relation module of the generators.
    coords: Quotient,
}

impl SubgroupPresentation {
    pub fn new(sub: &SubmoduleDesc) -> Result<Self> {
        let g = sub.generators.len();
        let free = ModulePresentation::free(g);
        let n = sub.ambient.dim();
        let cols: Vec<Vec<BigInt>> = sub.generators.iter().map(ModuleElem::big).collect();
        let gmat = IntMatrix::from_columns(n, &cols);
        let relations = hom_kernel(&free, &gmat, &sub.ambient.moduli())?;
        let coords = quotient_module(&free, &relations, false)?;
        Ok(SubgroupPresentation { sub: sub.clone(), coords })
    }

    /// `N` as an abelian group (domain `Z`).
    pub fn presentation(&self) -> &ModulePresentation {
        self.coords.target()
    }

    pub fn subgroup(&self) -> &SubmoduleDesc {
        &self.sub
    }

    pub fn include(&self, x: &ModuleElem) -> Result<ModuleElem> {
        let c = self.coords.lift(x)?;
        let mut acc = self.sub.ambient.zero();
        for (k, g) in c.coords().iter().zip(&self.sub.generators) {
            acc = self.sub.ambient.add(&acc, &self.sub.ambient.mul_int(*k, g)?)?;
        }
        Ok(acc)
    }

    /// Coordinates in `N` of an ambient element, or `None` when outside `N`.
    pub fn restrict(&self, m: &ModuleElem) -> Result<Option<ModuleElem>> {
        let Some(c) = self.sub.solve(m)? else { return Ok(None) };
        let c = self.coords.source().reduce_big(&c)?;
        Ok(Some(self.coords.project(&c)?))
    }
}

#[derive(Clone, Debug)]
pub struct TorsionDecomposition {
    pub free_rank: usize,
    pub invariant_factors: Vec<i64>,
    pub torsion: SubmoduleDesc,
    pub exponent: Option<i64>,
}

impl TorsionDecomposition {
    pub fn has_torsion(&self) -> bool {
        !self.invariant_factors.is_empty()
    }
}

pub fn torsion_decomposition(m: &ModulePresentation) -> TorsionDecomposition {
    let gens = m.basis().into_iter().skip(m.free_rank()).collect();
    TorsionDecomposition {
        free_rank: m.free_rank(),
        invariant_factors: m.torsion().to_vec(),
        torsion: SubmoduleDesc { ambient: m.clone(), generators: gens },
        exponent: m.exponent(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> DomainElem {
        DomainElem::int(n)
    }

    #[test]
    fn presentation_validation() {
        assert!(ModulePresentation::z_module(1, vec![4, 12]).is_ok());
        assert!(ModulePresentation::z_module(0, vec![4, 6]).is_err());
        assert!(ModulePresentation::z_module(0, vec![1]).is_err());
        assert!(ModulePresentation::new(Domain::GaussianIntegers, 2, vec![], None).is_err());
        // i acting as the identity does not square to -1
        assert!(ModulePresentation::new(Domain::GaussianIntegers, 2, vec![], Some(vec![vec![1, 0], vec![0, 1]])).is_err());
        // Z[i]/(2) = (Z/2)^2 with i swapping coordinates (up to sign)
        assert!(ModulePresentation::new(Domain::GaussianIntegers, 0, vec![2, 2], Some(vec![vec![0, 1], vec![1, 0]])).is_ok());
    }

    #[test]
    fn scalar_action_examples() {
        let m = ModulePresentation::z_module(1, vec![4]).unwrap();
        let x = m.elem(vec![1, 3]).unwrap();
        assert_eq!(m.scalar_action(&z(3), &x).unwrap().coords(), &[3, 1]);
        let m6 = ModulePresentation::cyclic(6).unwrap();
        assert_eq!(m6.scalar_action(&z(5), &m6.elem(vec![2]).unwrap()).unwrap().coords(), &[4]);
        let zi = ModulePresentation::gaussian_integers();
        let one = zi.elem(vec![1, 0]).unwrap();
        assert_eq!(zi.scalar_action(&DomainElem::gaussian(1, 1), &one).unwrap().coords(), &[1, 1]);
        assert_eq!(m6.scalar_action(&z(0), &m6.zero()), Err(Error::ZeroScalar));
    }

    #[test]
    fn action_kernel_examples() {
        let m6 = ModulePresentation::cyclic(6).unwrap();
        let k = action_kernel(&z(2), &m6).unwrap();
        let elems: Vec<i64> = k.elements().unwrap().iter().map(|e| e.coords()[0]).collect();
        assert_eq!(elems, vec![0, 3]);
        assert!(action_kernel(&z(7), &ModulePresentation::free(1)).unwrap().is_trivial());
        let m5 = ModulePresentation::cyclic(5).unwrap();
        assert!(action_kernel(&z(2), &m5).unwrap().is_trivial());
        assert!(action_is_bijective(&z(2), &m5).unwrap());
        assert!(!action_is_bijective(&z(2), &ModulePresentation::free(1)).unwrap());
        assert_eq!(action_kernel(&z(0), &m5).unwrap_err(), Error::ZeroScalar);
    }

    #[test]
    fn membership_examples() {
        let z2 = ModulePresentation::free(2);
        let n = SubmoduleDesc::from_coords(&z2, &[vec![2, 0], vec![0, 3]]).unwrap();
        assert!(submodule_membership(&n, &z2.elem(vec![4, 3]).unwrap()).unwrap());
        assert!(!submodule_membership(&n, &z2.elem(vec![1, 0]).unwrap()).unwrap());
        let m12 = ModulePresentation::cyclic(12).unwrap();
        let n = SubmoduleDesc::from_coords(&m12, &[vec![4]]).unwrap();
        assert!(submodule_membership(&n, &m12.elem(vec![8]).unwrap()).unwrap());
        let bad = ModuleElem(vec![1, 2, 3]);
        assert!(matches!(submodule_membership(&n, &bad), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn is_submodule_examples() {
        let zi = ModulePresentation::gaussian_integers();
        let integers = SubmoduleDesc::from_coords(&zi, &[vec![1, 0]]).unwrap();
        assert!(!is_submodule(&integers).unwrap());
        let two = SubmoduleDesc::from_coords(&zi, &[vec![2, 0], vec![0, 2]]).unwrap();
        assert!(is_submodule(&two).unwrap());
        let m = ModulePresentation::z_module(1, vec![4]).unwrap();
        let any = SubmoduleDesc::from_coords(&m, &[vec![3, 1]]).unwrap();
        assert!(is_submodule(&any).unwrap());
        assert!(is_submodule(&generated_submodule(&zi, vec![zi.elem(vec![1, 0]).unwrap()]).unwrap()).unwrap());
    }

    #[test]
    fn quotient_examples() {
        let z1 = ModulePresentation::free(1);
        let q = quotient_module(&z1, &SubmoduleDesc::from_coords(&z1, &[vec![6]]).unwrap(), true).unwrap();
        assert_eq!((q.target().free_rank(), q.target().torsion()), (0, &[6][..]));

        let z2 = ModulePresentation::free(2);
        let q = quotient_module(&z2, &SubmoduleDesc::from_coords(&z2, &[vec![2, 0], vec![0, 3]]).unwrap(), true).unwrap();
        // invariant-factor form of Z/2 + Z/3 is Z/6
        assert_eq!(q.target().torsion(), &[6]);

        let m = ModulePresentation::z_module(1, vec![4]).unwrap();
        let q = quotient_module(&m, &SubmoduleDesc::from_coords(&m, &[vec![0, 2]]).unwrap(), true).unwrap();
        assert_eq!((q.target().free_rank(), q.target().torsion()), (1, &[2][..]));

        let q = quotient_module(&z2, &SubmoduleDesc::from_coords(&z2, &[vec![2, 4]]).unwrap(), true).unwrap();
        let t = torsion_decomposition(q.target());
        assert_eq!((t.free_rank, t.invariant_factors.clone()), (1, vec![2]));

        let zi = ModulePresentation::gaussian_integers();
        let integers = SubmoduleDesc::from_coords(&zi, &[vec![1, 0]]).unwrap();
        assert_eq!(quotient_module(&zi, &integers, true).unwrap_err(), Error::NotSubmodule);
        let q = quotient_module(&zi, &integers, false).unwrap();
        assert!(!q.is_module_level());
        assert_eq!(q.target().free_rank(), 1);
    }

    #[test]
    fn quotient_of_gaussian_submodule_keeps_i_action() {
        let zi = ModulePresentation::gaussian_integers();
        // (1+i) Z[i] has index 2
        let n = generated_submodule(&zi, vec![zi.elem(vec![1, 1]).unwrap()]).unwrap();
        let q = quotient_module(&zi, &n, true).unwrap();
        assert_eq!(q.target().torsion(), &[2]);
        assert_eq!(q.target().domain(), Domain::GaussianIntegers);
        for x in zi.box_elements(2) {
            let lhs = q.project(&zi.apply_i(&x).unwrap()).unwrap();
            let rhs = q.target().apply_i(&q.project(&x).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn torsion_examples() {
        let t = torsion_decomposition(&ModulePresentation::free(2));
        assert!(!t.has_torsion());
        assert_eq!(t.free_rank, 2);
        let t = torsion_decomposition(&ModulePresentation::z_module(1, vec![4, 12]).unwrap());
        assert_eq!(t.invariant_factors, vec![4, 12]);
        assert_eq!(t.exponent, Some(12));
    }

    #[test]
    fn intersection_examples() {
        let z1 = ModulePresentation::free(1);
        let a = SubmoduleDesc::from_coords(&z1, &[vec![4]]).unwrap();
        let b = SubmoduleDesc::from_coords(&z1, &[vec![6]]).unwrap();
        let c = intersect_subgroups(&a, &b).unwrap();
        assert_eq!(c, SubmoduleDesc::from_coords(&z1, &[vec![12]]).unwrap());
        let m12 = ModulePresentation::cyclic(12).unwrap();
        let a = SubmoduleDesc::from_coords(&m12, &[vec![2]]).unwrap();
        let b = SubmoduleDesc::from_coords(&m12, &[vec![3]]).unwrap();
        let elems: Vec<i64> = intersect_subgroups(&a, &b).unwrap().elements().unwrap().iter().map(|e| e.coords()[0]).collect();
        assert_eq!(elems, vec![0, 6]);
    }

    #[test]
    fn subgroup_presentation_roundtrip() {
        let m = ModulePresentation::z_module(1, vec![12]).unwrap();
        let n = SubmoduleDesc::from_coords(&m, &[vec![2, 3], vec![0, 4]]).unwrap();
        let sp = SubgroupPresentation::new(&n).unwrap();
        for x in m.box_elements(3) {
            match sp.restrict(&x).unwrap() {
                Some(y) => assert_eq!(sp.include(&y).unwrap(), x),
                None => assert!(!n.contains(&x).unwrap()),
            }
        }
    }

    #[test]
    fn degenerate_inputs() {
        let zero_mod = ModulePresentation::free(0);
        assert_eq!(zero_mod.elements().unwrap().len(), 1);
        let n = SubmoduleDesc::zero(&zero_mod);
        let q = quotient_module(&zero_mod, &n, true).unwrap();
        assert_eq!(q.target().dim(), 0);
        let z1 = ModulePresentation::free(1);
        let q = quotient_module(&z1, &SubmoduleDesc::zero(&z1), true).unwrap();
        assert_eq!(q.target().free_rank(), 1);
        assert!(action_kernel(&z(3), &zero_mod).unwrap().is_trivial());
    }
}
