//! Finite dynamical systems `(X, sigma)` and spans generated by the
//! pullbacks `f o sigma^n`.
//!
//! The semigroup acts by pullback: compressing `f` by `S_n` gives
//! `f o sigma^n`. All spans are exact.

mod poly;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::field::EchelonSpan;

pub use poly::{poly_cyclic_subspace, PolyFunc, PolySpan};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SystemSpec", into = "SystemSpec")]
pub struct FiniteDynSystem {
    sigma: Vec<usize>,
}

/// File form: `{"size": n, "sigma": [images]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SystemSpec {
    pub size: usize,
    pub sigma: Vec<usize>,
}

impl TryFrom<SystemSpec> for FiniteDynSystem {
    type Error = Error;
    fn try_from(spec: SystemSpec) -> Result<Self> {
        if spec.size != spec.sigma.len() {
            return Err(Error::DimensionMismatch { expected: spec.size, got: spec.sigma.len() });
        }
        FiniteDynSystem::new(spec.sigma)
    }
}

impl From<FiniteDynSystem> for SystemSpec {
    fn from(sys: FiniteDynSystem) -> Self {
        SystemSpec { size: sys.sigma.len(), sigma: sys.sigma }
    }
}

impl FiniteDynSystem {
    pub fn new(sigma: Vec<usize>) -> Result<Self> {
        let n = sigma.len();
        if let Some(&bad) = sigma.iter().find(|&&x| x >= n) {
            return Err(Error::InvalidInput(format!("sigma maps into {bad}, outside 0..{n}")));
        }
        Ok(FiniteDynSystem { sigma })
    }

    pub fn identity(n: usize) -> Self {
        FiniteDynSystem { sigma: (0..n).collect() }
    }

    /// `x -> x + 1 mod n`.
    pub fn shift(n: usize) -> Self {
        FiniteDynSystem { sigma: (0..n).map(|x| (x + 1) % n).collect() }
    }

    pub fn size(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn apply(&self, x: usize) -> usize {
        self.sigma[x]
    }

    /// `{sigma^k(z) : k >= 0}`.
    pub fn forward_orbit(&self, z: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::new();
        let mut x = z;
        while seen.insert(x) {
            x = self.sigma[x];
        }
        seen
    }

    pub fn pullback(&self, f: &FuncOnX) -> FuncOnX {
        FuncOnX(self.sigma.iter().map(|&y| f.0[y].clone()).collect())
    }
}

/// A function `X -> Q(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FuncOnX(pub Vec<Coeff>);

impl FuncOnX {
    pub fn constant(n: usize, c: Coeff) -> Self {
        FuncOnX(vec![c; n])
    }

    pub fn characteristic(n: usize, x: usize) -> Self {
        let mut v = vec![Coeff::zero(); n];
        v[x] = Coeff::one();
        FuncOnX(v)
    }

    pub fn from_ints(v: &[i64]) -> Self {
        FuncOnX(v.iter().map(|&x| Coeff::int(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &FuncOnX) -> FuncOnX {
        FuncOnX(self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect())
    }
}

/// An exact span of functions on `X` in reduced echelon form.
#[derive(Clone, Debug, PartialEq)]
pub struct SpanBasis {
    span: EchelonSpan<Coeff>,
}

impl SpanBasis {
    fn new(n: usize) -> Self {
        SpanBasis { span: EchelonSpan::new(n) }
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn basis(&self) -> Vec<FuncOnX> {
        self.span.rows().iter().map(|r| FuncOnX(r.clone())).collect()
    }

    pub fn contains(&self, f: &FuncOnX) -> bool {
        f.len() == self.span.width() && self.span.contains(&f.0)
    }

    pub fn contains_span(&self, other: &SpanBasis) -> bool {
        self.span.contains_span(&other.span)
    }

    fn insert(&mut self, f: &FuncOnX) -> bool {
        self.span.insert(&f.0)
    }
}

fn check_len(sys: &FiniteDynSystem, f: &FuncOnX) -> Result<()> {
    if f.len() != sys.size() {
        return Err(Error::DimensionMismatch { expected: sys.size(), got: f.len() });
    }
    Ok(())
}

/// Weakly connected components of the functional graph, each sorted,
/// ordered by least element.
pub fn orbit_components(sys: &FiniteDynSystem) -> Vec<Vec<usize>> {
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut root = x;
        while parent[root] != root {
            root = parent[root];
        }
        let mut y = x;
        while parent[y] != root {
            let next = parent[y];
            parent[y] = root;
            y = next;
        }
        root
    }
    let n = sys.size();
    let mut parent: Vec<usize> = (0..n).collect();
    for x in 0..n {
        let (a, b) = (find(&mut parent, x), find(&mut parent, sys.apply(x)));
        if a != b {
            // keep the smaller root so roots are least elements
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            parent[hi] = lo;
        }
    }
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for x in 0..n {
        let r = find(&mut parent, x);
        if slot[r] == usize::MAX {
            slot[r] = comps.len();
            comps.push(Vec::new());
        }
        comps[slot[r]].push(x);
    }
    comps
}

/// `span{1, f, f o sigma, f o sigma^2, ...}`, stopping at the first
/// pullback already in the span (the span is then invariant).
pub fn cyclic_subspace(sys: &FiniteDynSystem, f: &FuncOnX) -> Result<SpanBasis> {
    check_len(sys, f)?;
    let n = sys.size();
    let mut span = SpanBasis::new(n);
    if n == 0 {
        return Ok(span);
    }
    span.insert(&FuncOnX::constant(n, Coeff::one()));
    let mut g = f.clone();
    while span.insert(&g) {
        g = sys.pullback(&g);
    }
    Ok(span)
}

/// Dimensions of `span{1, f, ..., f o sigma^k}` for `k = 0..=depth`.
pub fn cyclic_dimensions(sys: &FiniteDynSystem, f: &FuncOnX, depth: usize) -> Result<Vec<usize>> {
    check_len(sys, f)?;
    let n = sys.size();
    let mut span = SpanBasis::new(n);
    span.insert(&FuncOnX::constant(n, Coeff::one()));
    let mut g = f.clone();
    let mut out = Vec::with_capacity(depth + 1);
    for _ in 0..=depth {
        span.insert(&g);
        out.push(span.dim());
        g = sys.pullback(&g);
    }
    Ok(out)
}

const SMALL_PRIMES: [i64; 25] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

/// Point characteristic functions, then one function with distinct values.
pub fn default_candidates(n: usize) -> Vec<FuncOnX> {
    let mut out: Vec<FuncOnX> = (0..n).map(|x| FuncOnX::characteristic(n, x)).collect();
    let distinct = (0..n)
        .map(|x| match SMALL_PRIMES.get(x) {
            Some(&p) => Coeff::int(p),
            None => Coeff::new(BigRational::from_integer(BigInt::from(x as i64 + 100)), BigRational::from_integer(0.into())),
        })
        .collect();
    out.push(FuncOnX(distinct));
    out
}

/// First candidate whose cyclic subspace is all of `C(X)`. `None` only
/// means none of the candidates works.
pub fn is_cyclic_witness(sys: &FiniteDynSystem, candidates: Option<&[FuncOnX]>) -> Result<Option<FuncOnX>> {
    let n = sys.size();
    let defaults;
    let list = match candidates {
        Some(c) => c,
        None => {
            defaults = default_candidates(n);
            &defaults
        }
    };
    for f in list {
        if cyclic_subspace(sys, f)?.dim() == n {
            return Ok(Some(f.clone()));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DenseOrbitWitness {
    pub point: usize,
    pub function: FuncOnX,
    pub dimension: usize,
}

/// Looks for `z` whose forward orbit misses at most one point and checks
/// directly that `chi_z` is cyclic.
pub fn dense_orbit_generation(sys: &FiniteDynSystem) -> Result<Option<DenseOrbitWitness>> {
    let n = sys.size();
    for z in 0..n {
        if sys.forward_orbit(z).len() + 1 < n {
            continue;
        }
        let f = FuncOnX::characteristic(n, z);
        let dim = cyclic_subspace(sys, &f)?.dim();
        if dim == n {
            return Ok(Some(DenseOrbitWitness { point: z, function: f, dimension: dim }));
        }
    }
    Ok(None)
}

/// Span of all products `g_1 ... g_n` with `g_i` in the cyclic subspace of
/// `f_i`.
pub fn multi_span(sys: &FiniteDynSystem, fs: &[FuncOnX]) -> Result<SpanBasis> {
    if fs.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let n = sys.size();
    let mut acc = SpanBasis::new(n);
    if n == 0 {
        return Ok(acc);
    }
    acc.insert(&FuncOnX::constant(n, Coeff::one()));
    for f in fs {
        let factor = cyclic_subspace(sys, f)?.basis();
        let current = acc.basis();
        let mut next = SpanBasis::new(n);
        'outer: for p in &current {
            for g in &factor {
                next.insert(&p.mul(g));
                if next.dim() == n {
                    break 'outer;
                }
            }
        }
        acc = next;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneratorReport {
    pub generators: Vec<FuncOnX>,
    pub components: usize,
    pub dimension: usize,
    pub certified: bool,
    /// Components whose single generator did not suffice and were replaced
    /// by all their point characteristic functions.
    pub expanded_components: Vec<usize>,
}

/// One characteristic function per orbit component, certified by rank;
/// components that fail get one characteristic function per point.
pub fn generators_from_orbits(sys: &FiniteDynSystem) -> Result<GeneratorReport> {
    let n = sys.size();
    let comps = orbit_components(sys);
    if n == 0 {
        return Ok(GeneratorReport { generators: vec![], components: 0, dimension: 0, certified: true, expanded_components: vec![] });
    }
    let first: Vec<FuncOnX> = comps.iter().map(|c| FuncOnX::characteristic(n, c[0])).collect();
    let span = multi_span(sys, &first)?;
    if span.dim() == n {
        return Ok(GeneratorReport {
            generators: first,
            components: comps.len(),
            dimension: n,
            certified: true,
            expanded_components: vec![],
        });
    }
    let mut gens = Vec::new();
    let mut expanded = Vec::new();
    for (k, c) in comps.iter().enumerate() {
        if c.iter().all(|&x| span.contains(&FuncOnX::characteristic(n, x))) {
            gens.push(FuncOnX::characteristic(n, c[0]));
        } else {
            expanded.push(k);
            gens.extend(c.iter().map(|&x| FuncOnX::characteristic(n, x)));
        }
    }
    let dim = multi_span(sys, &gens)?.dim();
    Ok(GeneratorReport { generators: gens, components: comps.len(), dimension: dim, certified: dim == n, expanded_components: expanded })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PushforwardReport {
    pub generators: Vec<FuncOnX>,
    pub dimension: usize,
    pub certified: bool,
    /// Some generator was not constant on a fiber and was averaged.
    pub fiber_averaged: bool,
}

/// Transfers generators along an equivariant surjection `pi: X -> Y`.
/// A function constant on fibers descends directly; otherwise its fiber
/// averages are used and the report says so.
pub fn pushforward_generators(
    source: &FiniteDynSystem,
    target: &FiniteDynSystem,
    pi: &[usize],
    fs: &[FuncOnX],
) -> Result<PushforwardReport> {
    if pi.len() != source.size() {
        return Err(Error::DimensionMismatch { expected: source.size(), got: pi.len() });
    }
    let m = target.size();
    if pi.iter().any(|&y| y >= m) {
        return Err(Error::InvalidInput("map leaves the target".into()));
    }
    let hit: BTreeSet<usize> = pi.iter().copied().collect();
    if hit.len() != m {
        return Err(Error::NotSurjective);
    }
    for x in 0..source.size() {
        if pi[source.apply(x)] != target.apply(pi[x]) {
            return Err(Error::NotEquivariant);
        }
    }
    let mut averaged = false;
    let mut out = Vec::with_capacity(fs.len());
    for f in fs {
        check_len(source, f)?;
        let mut sums = vec![Coeff::zero(); m];
        let mut counts = vec![0i64; m];
        let mut first: Vec<Option<&Coeff>> = vec![None; m];
        for (x, v) in f.0.iter().enumerate() {
            let y = pi[x];
            sums[y] = &sums[y] + v;
            counts[y] += 1;
            match first[y] {
                None => first[y] = Some(v),
                Some(w) if w != v => averaged = true,
                _ => {}
            }
        }
        out.push(FuncOnX(sums.iter().zip(&counts).map(|(s, &c)| s.scale(&BigRational::new(1.into(), BigInt::from(c)))).collect()));
    }
    let dim = if out.is_empty() { 0 } else { multi_span(target, &out)?.dim() };
    Ok(PushforwardReport { generators: out, dimension: dim, certified: dim == m, fiber_averaged: averaged })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_cycles() -> FiniteDynSystem {
        FiniteDynSystem::new(vec![1, 0, 3, 2]).unwrap()
    }

    #[test]
    fn components() {
        assert_eq!(orbit_components(&two_cycles()).len(), 2);
        assert_eq!(orbit_components(&FiniteDynSystem::identity(5)).len(), 5);
        assert_eq!(orbit_components(&FiniteDynSystem::shift(4)), vec![vec![0, 1, 2, 3]]);
        let tail = FiniteDynSystem::new(vec![2, 2, 2, 3]).unwrap();
        assert_eq!(orbit_components(&tail), vec![vec![0, 1, 2], vec![3]]);
    }

    #[test]
    fn cyclic_examples() {
        let id = FiniteDynSystem::identity(3);
        assert_eq!(cyclic_subspace(&id, &FuncOnX::from_ints(&[1, 2, 5])).unwrap().dim(), 2);
        let sh = FiniteDynSystem::shift(4);
        assert_eq!(cyclic_subspace(&sh, &FuncOnX::characteristic(4, 1)).unwrap().dim(), 4);
        assert_eq!(cyclic_subspace(&sh, &FuncOnX::from_ints(&[0, 0, 0, 0])).unwrap().dim(), 1);
        let dims = cyclic_dimensions(&sh, &FuncOnX::characteristic(4, 1), 6).unwrap();
        assert!(dims.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(*dims.last().unwrap(), 4);
    }

    #[test]
    fn witnesses() {
        assert_eq!(is_cyclic_witness(&FiniteDynSystem::identity(3), None).unwrap(), None);
        assert_eq!(is_cyclic_witness(&FiniteDynSystem::shift(4), None).unwrap(), Some(FuncOnX::characteristic(4, 0)));
        let chi1 = [FuncOnX::characteristic(4, 1)];
        assert_eq!(is_cyclic_witness(&FiniteDynSystem::shift(4), Some(&chi1)).unwrap(), Some(chi1[0].clone()));
        assert!(is_cyclic_witness(&FiniteDynSystem::identity(1), None).unwrap().is_some());
    }

    #[test]
    fn dense_orbits() {
        let w = dense_orbit_generation(&FiniteDynSystem::shift(5)).unwrap().unwrap();
        assert_eq!(w.point, 0);
        assert!(dense_orbit_generation(&two_cycles()).unwrap().is_none());
        assert!(dense_orbit_generation(&FiniteDynSystem::identity(1)).unwrap().is_some());
    }

    #[test]
    fn multi_spans() {
        let sys = two_cycles();
        let all: Vec<_> = (0..4).map(|x| FuncOnX::characteristic(4, x)).collect();
        assert_eq!(multi_span(&sys, &all).unwrap().dim(), 4);
        let f = FuncOnX::from_ints(&[1, 2, 0, 0]);
        assert_eq!(multi_span(&sys, std::slice::from_ref(&f)).unwrap(), cyclic_subspace(&sys, &f).unwrap());
        let pair = [FuncOnX::characteristic(4, 0), FuncOnX::characteristic(4, 2)];
        assert_eq!(multi_span(&sys, &pair).unwrap().dim(), 4);
        assert_eq!(multi_span(&sys, &[]).unwrap_err(), Error::EmptyFamily);
    }

    #[test]
    fn orbit_generators() {
        let r = generators_from_orbits(&two_cycles()).unwrap();
        assert_eq!((r.generators.len(), r.certified), (2, true));
        let r = generators_from_orbits(&FiniteDynSystem::shift(6)).unwrap();
        assert_eq!((r.generators.len(), r.certified), (1, true));
        let r = generators_from_orbits(&FiniteDynSystem::identity(4)).unwrap();
        assert_eq!((r.generators.len(), r.certified), (4, true));
        // chi_0 pulls back to zero here, so the single generator fails
        let tail = FiniteDynSystem::new(vec![2, 2, 2]).unwrap();
        let r = generators_from_orbits(&tail).unwrap();
        assert_eq!((r.generators.len(), r.certified, r.expanded_components.clone()), (3, true, vec![0]));
    }

    #[test]
    fn pushforward() {
        let x = FiniteDynSystem::shift(6);
        let y = FiniteDynSystem::shift(3);
        let pi: Vec<usize> = (0..6).map(|i| i % 3).collect();
        let r = pushforward_generators(&x, &y, &pi, &[FuncOnX::characteristic(6, 1)]).unwrap();
        assert!(r.certified && r.fiber_averaged);
        assert_eq!(r.dimension, 3);
        let ident: Vec<usize> = (0..6).collect();
        let f = FuncOnX::characteristic(6, 1);
        let r = pushforward_generators(&x, &x, &ident, std::slice::from_ref(&f)).unwrap();
        assert_eq!(r.generators, vec![f.clone()]);
        assert!(!r.fiber_averaged);
        let bad: Vec<usize> = vec![0, 2, 1, 0, 2, 1];
        assert_eq!(pushforward_generators(&x, &y, &bad, std::slice::from_ref(&f)).unwrap_err(), Error::NotEquivariant);
        assert_eq!(pushforward_generators(&x, &y, &[0; 6], &[f]).unwrap_err(), Error::NotSurjective);
    }
}
