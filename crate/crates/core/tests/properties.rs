//! Algebraic invariants checked on generated inputs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use semicross::domain::{canonical_associate, divides, factor_positive};
use semicross::dynamics::{cyclic_dimensions, cyclic_subspace, multi_span, poly_cyclic_subspace, FiniteDynSystem, FuncOnX, PolyFunc};
use semicross::fock::{build_fock, FockOp, FockWindow};
use semicross::groupalg::{fourier_transform, l2_energy, GroupAlgElem};
use semicross::modules::{
    action_is_injective, action_kernel, localize, quotient_module, smith_normal_form, torsion_decomposition, IntMatrix, ModuleElem,
    ModulePresentation, SubmoduleDesc,
};
use semicross::semicross::{sc_compress, SemicrossedElem};
use semicross::{Coeff, Domain, DomainElem, Fraction};

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig { cases: n, ..ProptestConfig::default() }
}

fn int_elem() -> impl Strategy<Value = DomainElem> {
    (-60i64..=60).prop_filter("nonzero", |x| *x != 0).prop_map(DomainElem::int)
}

fn gauss_elem() -> impl Strategy<Value = DomainElem> {
    (-12i64..=12, -12i64..=12).prop_filter("nonzero", |(a, b)| *a != 0 || *b != 0).prop_map(|(a, b)| DomainElem::gaussian(a, b))
}

fn any_elem() -> impl Strategy<Value = DomainElem> {
    prop_oneof![int_elem(), gauss_elem()]
}

fn fraction() -> impl Strategy<Value = Fraction> {
    (gauss_elem(), gauss_elem()).prop_map(|(a, b)| Fraction::new(a, b).unwrap())
}

fn coeff() -> impl Strategy<Value = Coeff> {
    (-3i64..=3, -3i64..=3).prop_map(|(a, b)| Coeff::gaussian(a, b))
}

fn small_z_module() -> impl Strategy<Value = ModulePresentation> {
    prop_oneof![
        Just(ModulePresentation::free(1)),
        Just(ModulePresentation::free(2)),
        Just(ModulePresentation::cyclic(6).unwrap()),
        Just(ModulePresentation::cyclic(12).unwrap()),
        Just(ModulePresentation::z_module(0, vec![2, 4]).unwrap()),
        Just(ModulePresentation::z_module(1, vec![4]).unwrap()),
        Just(ModulePresentation::z_module(1, vec![6]).unwrap()),
        Just(ModulePresentation::z_module(2, vec![3, 9]).unwrap()),
    ]
}

/// Coefficient data over `Z/6`.
fn z6_elem() -> impl Strategy<Value = Vec<(i64, Coeff)>> {
    prop::collection::vec((0i64..6, coeff()), 0..4)
}

fn ga(m: &ModulePresentation, terms: Vec<(i64, Coeff)>) -> GroupAlgElem {
    GroupAlgElem::from_terms(m, terms.into_iter().map(|(e, c)| (vec![e], c))).unwrap()
}

fn sc_z6() -> impl Strategy<Value = Vec<(i64, Vec<(i64, Coeff)>)>> {
    prop::collection::vec((prop::sample::select(vec![1i64, -1, 2, -2, 3, -3]), z6_elem()), 0..3)
}

fn sc(m: &ModulePresentation, data: Vec<(i64, Vec<(i64, Coeff)>)>) -> SemicrossedElem {
    let mut x = SemicrossedElem::zero(m);
    for (r, a) in data {
        let a = ga(m, a);
        if !a.is_zero() {
            x = x.add(&SemicrossedElem::monomial(m, DomainElem::int(r), a).unwrap()).unwrap();
        }
    }
    x
}

// ---- domains

proptest! {
    #![proptest_config(cases(500))]

    #[test]
    fn associate_recombines(r in any_elem()) {
        let d = canonical_associate(&r).unwrap();
        prop_assert_eq!(&d.unit * &d.positive_part, r);
        prop_assert!(d.unit.is_unit());
    }

    #[test]
    fn divides_matches_multiplication(r in any_elem(), s in any_elem(), k in any_elem()) {
        let s = s.to_domain(Domain::GaussianIntegers).unwrap();
        let r = r.to_domain(Domain::GaussianIntegers).unwrap();
        let k = k.to_domain(Domain::GaussianIntegers).unwrap();
        match divides(&r, &s).unwrap() {
            Some(q) => prop_assert_eq!(&q * &r, s.clone()),
            None => prop_assert!(!(s.div_rem(&r).unwrap().1.is_zero())),
        }
        let multiple = &r * &k;
        prop_assert_eq!(divides(&r, &multiple).unwrap(), Some(k));
    }

    #[test]
    fn division_remainder_is_small(a in any_elem(), b in any_elem()) {
        let (a, b) = (a.to_domain(Domain::GaussianIntegers).unwrap(), b.to_domain(Domain::GaussianIntegers).unwrap());
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.norm() < b.norm());
    }

    #[test]
    fn fraction_field_axioms(a in fraction(), b in fraction(), c in fraction()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        if !a.is_zero() {
            let one = Fraction::from_elem(DomainElem::one(Domain::GaussianIntegers));
            prop_assert_eq!(a.mul(&a.inv().unwrap()), one);
        }
    }
}

#[test]
fn factorizations_multiply_back() {
    for n in 1..10000i64 {
        let f = factor_positive(&DomainElem::int(n)).unwrap();
        let prod = f.iter().fold(DomainElem::int(1), |acc, p| &acc * p);
        assert_eq!(prod, DomainElem::int(n));
    }
}

// ---- modules

fn det(m: &IntMatrix) -> BigInt {
    // fraction-free elimination
    let n = m.rows();
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| m.row(i)).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-20i64..=20, c), r))
}

proptest! {
    #![proptest_config(cases(500))]

    #[test]
    fn smith_form_certificate(rows in matrix()) {
        let a = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        prop_assert!(s.d.is_diagonal());
        prop_assert_eq!(det(&s.u).abs(), BigInt::one());
        prop_assert_eq!(det(&s.v).abs(), BigInt::one());
        prop_assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(a.rows()));
        let diag = s.diagonal();
        for w in diag.windows(2) {
            if !w[1].is_zero() {
                prop_assert!(!w[0].is_zero() && (&w[1] % &w[0]).is_zero());
            }
            prop_assert!(!w[0].is_negative());
        }
    }
}

fn coords(m: &ModulePresentation) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-30i64..=30, m.dim())
}

proptest! {
    #![proptest_config(cases(200))]

    #[test]
    fn scalar_action_is_a_module_action(
        (m, a, b) in small_z_module().prop_flat_map(|m| (Just(m.clone()), coords(&m), coords(&m))),
        r in int_elem(),
        s in int_elem(),
    ) {
        let x = m.elem(a).unwrap();
        let y = m.elem(b).unwrap();
        let rs = &r * &s;
        prop_assert_eq!(m.scalar_action(&r, &m.scalar_action(&s, &x).unwrap()).unwrap(), m.scalar_action(&rs, &x).unwrap());
        prop_assert_eq!(
            m.scalar_action(&r, &m.add(&x, &y).unwrap()).unwrap(),
            m.add(&m.scalar_action(&r, &x).unwrap(), &m.scalar_action(&r, &y).unwrap()).unwrap()
        );
    }

    #[test]
    fn localization_is_equivariant(
        (m, a) in small_z_module().prop_flat_map(|m| (Just(m.clone()), coords(&m))),
        r in int_elem(),
    ) {
        let loc = localize(&m);
        let x = m.elem(a).unwrap();
        let rx = m.scalar_action(&r, &x).unwrap();
        let lhs = loc.embed(&rx).unwrap();
        let rhs = loc.act(&Fraction::from_elem(r.clone()), &loc.embed(&x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(loc.kernel(), &torsion_decomposition(&m).torsion);
    }

    #[test]
    fn torsion_detected_by_scalars(m in small_z_module()) {
        let sample: Vec<DomainElem> = (1..=12).map(DomainElem::int).collect();
        let all_injective = sample.iter().all(|r| action_is_injective(r, &m).unwrap());
        prop_assert_eq!(all_injective, !m.has_torsion());
        if let Some(e) = m.exponent().filter(|_| m.has_torsion()) {
            let k = action_kernel(&DomainElem::int(e), &m).unwrap();
            prop_assert!(k.contains_subgroup(&torsion_decomposition(&m).torsion).unwrap());
        }
    }
}

#[test]
fn scalar_action_exhaustive_on_small_groups() {
    for m in [
        ModulePresentation::cyclic(12).unwrap(),
        ModulePresentation::z_module(0, vec![2, 4]).unwrap(),
        ModulePresentation::z_module(0, vec![12, 12]).unwrap(),
    ] {
        let elems = m.elements().unwrap();
        assert!(elems.len() <= 144);
        let scalars: Vec<DomainElem> = [-5, -1, 2, 3, 7].into_iter().map(DomainElem::int).collect();
        for x in &elems {
            for r in &scalars {
                for s in &scalars {
                    let lhs = m.scalar_action(r, &m.scalar_action(s, x).unwrap()).unwrap();
                    assert_eq!(lhs, m.scalar_action(&(r * s), x).unwrap());
                }
            }
        }
        for x in &elems {
            for y in elems.iter().step_by(5) {
                let r = &scalars[2];
                assert_eq!(
                    m.scalar_action(r, &m.add(x, y).unwrap()).unwrap(),
                    m.add(&m.scalar_action(r, x).unwrap(), &m.scalar_action(r, y).unwrap()).unwrap()
                );
            }
        }
    }
}

/// Subgroups generated by single elements and pairs, checked against
/// closure by enumeration.
#[test]
fn membership_matches_enumeration() {
    for m in [ModulePresentation::cyclic(12).unwrap(), ModulePresentation::z_module(0, vec![2, 4]).unwrap()] {
        let elems = m.elements().unwrap();
        for g in &elems {
            for h in &elems {
                let n = SubmoduleDesc::new(&m, vec![g.clone(), h.clone()]).unwrap();
                let mut closure = vec![m.zero()];
                let mut i = 0;
                while i < closure.len() {
                    for gen in [g, h] {
                        let next = m.add(&closure[i], gen).unwrap();
                        if !closure.contains(&next) {
                            closure.push(next);
                        }
                    }
                    i += 1;
                }
                for x in &elems {
                    assert_eq!(n.contains(x).unwrap(), closure.contains(x), "{x} in <{g}, {h}>");
                }
                // Lagrange
                let q = quotient_module(&m, &n, false).unwrap();
                assert_eq!(q.target().order().unwrap() * closure.len() as u128, elems.len() as u128);
                for x in &closure {
                    assert!(q.project(x).unwrap().is_zero());
                }
            }
        }
    }
}

// ---- group algebra

proptest! {
    #![proptest_config(cases(200))]

    #[test]
    fn convolution_laws(a in z6_elem(), b in z6_elem(), c in z6_elem()) {
        let m = ModulePresentation::cyclic(6).unwrap();
        let (a, b, c) = (ga(&m, a), ga(&m, b), ga(&m, c));
        let one = GroupAlgElem::unit(&m);
        prop_assert_eq!(a.convolve(&b).unwrap().convolve(&c).unwrap(), a.convolve(&b.convolve(&c).unwrap()).unwrap());
        prop_assert_eq!(a.convolve(&b).unwrap(), b.convolve(&a).unwrap());
        prop_assert_eq!(a.convolve(&one).unwrap(), a.clone());
        prop_assert_eq!(a.involution().unwrap().involution().unwrap(), a.clone());
        prop_assert_eq!(
            a.convolve(&b).unwrap().involution().unwrap(),
            b.involution().unwrap().convolve(&a.involution().unwrap()).unwrap()
        );
    }

    #[test]
    fn alpha_is_unital_star_endomorphism(a in z6_elem(), b in z6_elem(), r in int_elem()) {
        let m = ModulePresentation::cyclic(6).unwrap();
        let (a, b) = (ga(&m, a), ga(&m, b));
        let ab = a.convolve(&b).unwrap();
        prop_assert_eq!(ab.alpha_endo(&r).unwrap(), a.alpha_endo(&r).unwrap().convolve(&b.alpha_endo(&r).unwrap()).unwrap());
        prop_assert_eq!(a.involution().unwrap().alpha_endo(&r).unwrap(), a.alpha_endo(&r).unwrap().involution().unwrap());
        let one = GroupAlgElem::unit(&m);
        prop_assert_eq!(one.alpha_endo(&r).unwrap(), one);
    }

    #[test]
    fn expectation_laws(a in prop::collection::vec((0i64..12, coeff()), 0..5), b in prop::collection::vec((0i64..12, coeff()), 0..5), g in prop::sample::select(vec![0i64, 2, 3, 4, 6])) {
        let m = ModulePresentation::cyclic(12).unwrap();
        let n = SubmoduleDesc::from_coords(&m, &[vec![g]]).unwrap();
        let a = ga(&m, a);
        let nb = ga(&m, b).conditional_expectation(&n).unwrap();
        let e = a.conditional_expectation(&n).unwrap();
        prop_assert_eq!(e.conditional_expectation(&n).unwrap(), e.clone());
        let one = GroupAlgElem::unit(&m);
        prop_assert_eq!(one.conditional_expectation(&n).unwrap(), one);
        prop_assert_eq!(nb.convolve(&a).unwrap().conditional_expectation(&n).unwrap(), nb.convolve(&e).unwrap());
        let aa = a.involution().unwrap().convolve(&a).unwrap().conditional_expectation(&n).unwrap();
        let c0 = aa.coeff(&m.zero());
        prop_assert!(!c0.re.is_negative() && c0.im.is_zero());
    }

    #[test]
    fn fourier_parseval(a in z6_elem()) {
        let m = ModulePresentation::cyclic(6).unwrap();
        let a = ga(&m, a);
        let f = fourier_transform(&a).unwrap();
        let energy = l2_energy(&a);
        let exact = f.parseval_energy_exact().unwrap();
        prop_assert_eq!(exact, Coeff::new(energy.clone(), BigRational::zero()));
        let approx = semicross::coeff::Coeff::new(energy, BigRational::zero()).to_complex().re;
        prop_assert!((f.parseval_energy() - approx).abs() <= 1e-9);
    }
}

#[test]
fn convolution_exhaustive_on_z4() {
    let m = ModulePresentation::cyclic(4).unwrap();
    let vals = [Coeff::zero(), Coeff::one(), Coeff::gaussian(-1, 1)];
    let mut elems = Vec::new();
    for i in 0..81 {
        let mut k = i;
        let mut terms = Vec::new();
        for e in 0..4 {
            terms.push((e, vals[k % 3].clone()));
            k /= 3;
        }
        elems.push(ga(&m, terms));
    }
    let one = GroupAlgElem::unit(&m);
    for a in &elems {
        assert_eq!(a.convolve(&one).unwrap(), *a);
        for b in elems.iter().step_by(7) {
            let ab = a.convolve(b).unwrap();
            assert_eq!(ab, b.convolve(a).unwrap());
            for c in elems.iter().step_by(20) {
                assert_eq!(ab.convolve(c).unwrap(), a.convolve(&b.convolve(c).unwrap()).unwrap());
            }
        }
    }
}

#[test]
fn alpha_injectivity_matches_module_action() {
    for m in [
        ModulePresentation::cyclic(6).unwrap(),
        ModulePresentation::cyclic(5).unwrap(),
        ModulePresentation::z_module(0, vec![2, 4]).unwrap(),
    ] {
        let elems = m.elements().unwrap();
        for r in 1..=8 {
            let r = DomainElem::int(r);
            // alpha_r is injective on C[M] iff it is injective on the basis U^m
            let mut images: Vec<ModuleElem> = elems.iter().map(|x| m.scalar_action(&r, x).unwrap()).collect();
            images.sort();
            images.dedup();
            let alg_injective = images.len() == elems.len();
            assert_eq!(alg_injective, action_is_injective(&r, &m).unwrap());
            // a kernel witness kills a difference of monomials
            if !alg_injective {
                let k = action_kernel(&r, &m).unwrap();
                let g = k.generators().iter().find(|g| !g.is_zero()).unwrap().clone();
                let x = GroupAlgElem::monomial(&m, g, Coeff::one()).unwrap().sub(&GroupAlgElem::unit(&m)).unwrap();
                assert!(x.alpha_endo(&r).unwrap().is_zero());
            }
        }
    }
}

// ---- semicrossed products

proptest! {
    #![proptest_config(cases(200))]

    #[test]
    fn semicrossed_associative(x in sc_z6(), y in sc_z6(), z in sc_z6()) {
        let m = ModulePresentation::cyclic(6).unwrap();
        let (x, y, z) = (sc(&m, x), sc(&m, y), sc(&m, z));
        prop_assert_eq!(x.multiply(&y).unwrap().multiply(&z).unwrap(), x.multiply(&y.multiply(&z).unwrap()).unwrap());
    }

    #[test]
    fn covariance_normal_forms(e in 0i64..6, r in prop::sample::select(vec![1i64, -1, 2, -2, 3, -3])) {
        let m = ModulePresentation::cyclic(6).unwrap();
        let u = |k: i64| SemicrossedElem::monomial(&m, DomainElem::int(1), ga(&m, vec![(k, Coeff::one())])).unwrap();
        let s = SemicrossedElem::monomial(&m, DomainElem::int(r), GroupAlgElem::unit(&m)).unwrap();
        prop_assert_eq!(u(e).multiply(&s).unwrap(), s.multiply(&u(r * e)).unwrap());
    }

    #[test]
    fn compression_composes(a in z6_elem(), r in int_elem(), s in int_elem()) {
        let m = ModulePresentation::cyclic(6).unwrap();
        let a = ga(&m, a);
        let rs = &r * &s;
        prop_assert_eq!(sc_compress(&r, &sc_compress(&s, &a).unwrap()).unwrap(), sc_compress(&rs, &a).unwrap());
    }

    #[test]
    fn induced_quotient_is_multiplicative(x in sc_z6(), y in sc_z6(), g in prop::sample::select(vec![0i64, 2, 3])) {
        let m = ModulePresentation::cyclic(6).unwrap();
        let n = SubmoduleDesc::from_coords(&m, &[vec![g]]).unwrap();
        let (x, y) = (sc(&m, x), sc(&m, y));
        let (q, px) = semicross::semicross::induced_quotient_map(&n, &x).unwrap();
        let py = y.push_through(&q).unwrap();
        let pxy = x.multiply(&y).unwrap().push_through(&q).unwrap();
        prop_assert_eq!(pxy, px.multiply(&py).unwrap());
        prop_assert_eq!(SemicrossedElem::one(&m).push_through(&q).unwrap(), SemicrossedElem::one(q.target()));
    }
}

// ---- fock

#[test]
fn generators_are_partial_permutations() {
    for (m, w) in [
        (ModulePresentation::free(1), FockWindow::new(10, 6)),
        (ModulePresentation::cyclic(6).unwrap(), FockWindow { module_box: None, semigroup_bound: 6 }),
        (ModulePresentation::gaussian_integers(), FockWindow::new(3, 5)),
    ] {
        let rep = build_fock(&m, w).unwrap();
        let r_sample: Vec<DomainElem> = match m.domain() {
            Domain::Integers => [1, -1, 2, 3].into_iter().map(DomainElem::int).collect(),
            Domain::GaussianIntegers => vec![DomainElem::gaussian(1, 1), DomainElem::imaginary_unit(), DomainElem::gaussian(2, 0)],
        };
        for x in m.box_elements(1) {
            let mat = rep.op_matrix(&FockOp::U(x)).unwrap();
            assert!(mat.is_partial_permutation());
            assert!(mat.adjoint().is_partial_permutation());
        }
        for r in r_sample {
            assert!(rep.op_matrix(&FockOp::S(r.clone())).unwrap().is_partial_permutation());
            assert!(rep.op_matrix(&FockOp::SStar(r)).unwrap().is_partial_permutation());
        }
    }
}

// ---- dynamics

fn system() -> impl Strategy<Value = FiniteDynSystem> {
    (1usize..=7).prop_flat_map(|n| prop::collection::vec(0..n, n)).prop_map(|s| FiniteDynSystem::new(s).unwrap())
}

fn func(n: usize) -> impl Strategy<Value = FuncOnX> {
    prop::collection::vec(-3i64..=3, n).prop_map(|v| FuncOnX::from_ints(&v))
}

proptest! {
    #![proptest_config(cases(200))]

    #[test]
    fn cyclic_dimensions_monotone((sys, f) in system().prop_flat_map(|s| { let n = s.size(); (Just(s), func(n)) })) {
        let n = sys.size();
        let dims = cyclic_dimensions(&sys, &f, 2 * n + 2).unwrap();
        prop_assert!(dims.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(*dims.last().unwrap() <= n);
        prop_assert_eq!(*dims.last().unwrap(), cyclic_subspace(&sys, &f).unwrap().dim());
    }

    #[test]
    fn multi_span_contains_parts((sys, f, g) in system().prop_flat_map(|s| { let n = s.size(); (Just(s), func(n), func(n)) })) {
        let n = sys.size();
        let span = multi_span(&sys, &[f.clone(), g.clone()]).unwrap();
        prop_assert!(span.contains(&FuncOnX::constant(n, Coeff::one())));
        prop_assert!(span.contains_span(&cyclic_subspace(&sys, &f).unwrap()));
        prop_assert!(span.contains_span(&cyclic_subspace(&sys, &g).unwrap()));
    }

    #[test]
    fn identity_bound(n in 1usize..=5, v in prop::collection::vec(-4i64..=4, 5)) {
        let sys = FiniteDynSystem::identity(n);
        let f = FuncOnX::from_ints(&v[..n]);
        prop_assert!(cyclic_subspace(&sys, &f).unwrap().dim() <= 2);
    }

    #[test]
    fn poly_pullbacks_are_even(c in prop::collection::vec(-5i64..=5, 1..3)) {
        let f = PolyFunc::from_ints(&c, 16).unwrap();
        let mut g = f.clone();
        for _ in 0..3 {
            g = g.compose_square().unwrap();
            prop_assert!(g.is_even());
        }
        let span = poly_cyclic_subspace(&f, 3).unwrap();
        prop_assert!(span.contains(&f));
    }
}

#[test]
fn identity_suite_exhaustive() {
    for n in 1..=5 {
        let sys = FiniteDynSystem::identity(n);
        let best = semicross::dynamics::default_candidates(n).iter().map(|f| cyclic_subspace(&sys, f).unwrap().dim()).max().unwrap();
        assert!(best <= 2);
        assert_eq!(best == n, n <= 2);
    }
}

#[test]
fn shift_characteristic_is_cyclic() {
    for n in 2..=8 {
        let sys = FiniteDynSystem::shift(n);
        assert_eq!(cyclic_subspace(&sys, &FuncOnX::characteristic(n, 1)).unwrap().dim(), n);
    }
}
