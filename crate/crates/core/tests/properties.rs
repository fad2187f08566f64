use std::sync::Arc;

use crlab_core::groebner::{is_groebner_basis, krull_dim_of_monomials, reduce_by};
use crlab_core::*;
use proptest::prelude::*;

fn table3() -> Arc<VarTable> {
    VarTable::holomorphic(&["x", "y", "z"]).unwrap()
}

fn coeff() -> impl Strategy<Value = GaussRat> {
    (-4i64..=4, 1i64..=3, -2i64..=2).prop_map(|(a, b, c)| GaussRat::from_parts((a, b), (c, 1)))
}

fn real_coeff() -> impl Strategy<Value = GaussRat> {
    (-5i64..=5, 1i64..=3).prop_map(|(a, b)| GaussRat::from_ratio(a, b))
}

type Terms = Vec<(Vec<u32>, GaussRat)>;

fn terms(
    nvars: usize,
    max_deg: u32,
    max_terms: usize,
    c: BoxedStrategy<GaussRat>,
) -> impl Strategy<Value = Terms> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_deg, nvars), c),
        1..=max_terms,
    )
    .prop_map(move |ts| {
        ts.into_iter()
            .map(|(mut e, c)| {
                // keep total degree within max_deg
                while e.iter().sum::<u32>() > max_deg {
                    let k = e.iter().position(|&x| x > 0).unwrap();
                    e[k] -= 1;
                }
                (e, c)
            })
            .collect()
    })
}

fn build(t: &Arc<VarTable>, ts: &Terms) -> Poly {
    Poly::from_terms(
        t,
        ts.iter()
            .map(|(e, c)| (Monomial::from_exponents(e.clone()), c.clone())),
    )
}

/// Independent S-polynomial check: every pair reduces to zero.
fn spolys_reduce(basis: &[Poly], order: &MonomialOrder) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let (mi, ci) = basis[i].leading_term(order).unwrap();
            let (mj, cj) = basis[j].leading_term(order).unwrap();
            let l = mi.lcm(mj);
            let a = basis[i].mul_term(&mi.quotient_of(&l), &cj.clone()).unwrap();
            let b = basis[j].mul_term(&mj.quotient_of(&l), &ci.clone()).unwrap();
            let s = a.checked_sub(&b).unwrap();
            if !reduce_by(&s, basis, order).unwrap().is_zero() {
                return false;
            }
        }
    }
    true
}

/// `n − τ` where `τ` is the size of a smallest set of variables meeting the
/// support of every generator; `-1` for the unit ideal.
fn hitting_set_dim(gens: &[Vec<u32>], n: usize) -> i64 {
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return -1;
    }
    let mut best = n;
    for mask in 0u32..(1 << n) {
        let hits = gens
            .iter()
            .all(|g| (0..n).any(|k| mask & (1 << k) != 0 && g[k] > 0));
        if hits {
            best = best.min(mask.count_ones() as usize);
        }
    }
    (n - best) as i64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gaussian_rationals_form_a_field(a in coeff(), b in coeff(), c in coeff()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!(a.conj().conj(), a.clone());
        if let Some(inv) = a.inv() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn polynomial_ring_axioms(
        a in terms(3, 3, 4, coeff().boxed()),
        b in terms(3, 3, 4, coeff().boxed()),
        c in terms(3, 3, 4, coeff().boxed()),
    ) {
        let t = table3();
        let (a, b, c) = (build(&t, &a), build(&t, &b), build(&t, &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn reality_involution_is_a_conjugate_linear_automorphism(
        a in terms(4, 3, 4, coeff().boxed()),
        b in terms(4, 3, 4, coeff().boxed()),
    ) {
        let t = VarTable::paired(&["z", "w"]).unwrap();
        let (a, b) = (build(&t, &a), build(&t, &b));
        prop_assert_eq!((&a + &b).conj().unwrap(), &a.conj().unwrap() + &b.conj().unwrap());
        prop_assert_eq!((&a * &b).conj().unwrap(), &a.conj().unwrap() * &b.conj().unwrap());
        prop_assert_eq!(a.conj().unwrap().conj().unwrap(), a.clone());
    }

    #[test]
    fn substitution_composes(
        f in terms(3, 2, 3, coeff().boxed()),
        g in prop::collection::vec(terms(3, 2, 2, real_coeff().boxed()), 3),
        h in prop::collection::vec(terms(3, 1, 2, real_coeff().boxed()), 3),
    ) {
        let t = table3();
        let f = build(&t, &f);
        let g: Vec<Poly> = g.iter().map(|x| build(&t, x)).collect();
        let h: Vec<Poly> = h.iter().map(|x| build(&t, x)).collect();
        let gh: Vec<Poly> = g.iter().map(|x| x.subst(&h).unwrap()).collect();
        prop_assert_eq!(f.subst(&g).unwrap().subst(&h).unwrap(), f.subst(&gh).unwrap());
    }

    #[test]
    fn buchberger_output_is_a_fixpoint(
        gens in prop::collection::vec(terms(3, 3, 3, real_coeff().boxed()), 1..=3),
        lex in any::<bool>(),
    ) {
        let t = table3();
        let gens: Vec<Poly> = gens.iter().map(|x| build(&t, x)).collect();
        let order = if lex { MonomialOrder::Lex } else { MonomialOrder::DegRevLex };
        let gb = buchberger(&gens, &order).unwrap();
        prop_assert!(spolys_reduce(&gb, &order));
        prop_assert!(is_groebner_basis(&gb, &order).unwrap());
        prop_assert_eq!(buchberger(&gb, &order).unwrap(), gb.clone());
        for g in &gens {
            prop_assert!(reduce_by(g, &gb, &order).unwrap().is_zero());
        }
    }

    #[test]
    fn normal_form_is_linear_and_idempotent(
        gens in prop::collection::vec(terms(3, 3, 3, real_coeff().boxed()), 1..=3),
        f in terms(3, 4, 5, coeff().boxed()),
        g in terms(3, 4, 5, coeff().boxed()),
        c in coeff(),
    ) {
        let t = table3();
        let ideal = Ideal::with_generators(&t, gens.iter().map(|x| build(&t, x)).collect()).unwrap();
        let (f, g) = (build(&t, &f), build(&t, &g));
        let nf = ideal.normal_form(&f).unwrap();
        prop_assert_eq!(ideal.normal_form(&nf).unwrap(), nf.clone());
        let combo = f.checked_add(&g.scale(&c)).unwrap();
        let expected = nf.checked_add(&ideal.normal_form(&g).unwrap().scale(&c)).unwrap();
        prop_assert_eq!(ideal.normal_form(&combo).unwrap(), expected);
        prop_assert!(ideal.contains(&f.checked_sub(&nf).unwrap()).unwrap());
    }

    #[test]
    fn monomial_dimension_matches_hitting_sets(
        n in 1usize..=4,
        raw in prop::collection::vec(prop::collection::vec(0u32..=3, 4), 1..=5),
    ) {
        let gens: Vec<Vec<u32>> = raw.into_iter().map(|mut e| {
            e.truncate(n);
            while e.iter().sum::<u32>() > 3 {
                let k = e.iter().position(|&x| x > 0).unwrap();
                e[k] -= 1;
            }
            e
        }).collect();
        let monos: Vec<Monomial> = gens.iter().cloned().map(Monomial::from_exponents).collect();
        prop_assert_eq!(krull_dim_of_monomials(&monos, n).unwrap(), hitting_set_dim(&gens, n));
    }

    #[test]
    fn local_and_global_colength_agree_at_an_isolated_origin(
        a in 1u32..=4, b in 1u32..=4, mixed in prop::collection::vec((0u32..=3, 0u32..=3), 0..=2),
    ) {
        // every zero of ⟨x^a, y^b, …⟩ is the origin
        let t = VarTable::holomorphic(&["x", "y"]).unwrap();
        let mut gens = vec![
            Poly::monomial(&t, Monomial::from_exponents(vec![a, 0]), GaussRat::one()),
            Poly::monomial(&t, Monomial::from_exponents(vec![0, b]), GaussRat::one()),
        ];
        for (p, q) in mixed.into_iter().filter(|&(p, q)| p + q > 0) {
            gens.push(Poly::monomial(&t, Monomial::from_exponents(vec![p, q]), GaussRat::one()));
        }
        let ideal = Ideal::with_generators(&t, gens).unwrap();
        let global = ideal.dimension().unwrap().colength.unwrap();
        prop_assert_eq!(ideal.local_colength(10).unwrap(), LocalColength::Finite(global));
    }

    #[test]
    fn preimages_are_sound_and_keep_dimension(
        gens in prop::collection::vec(terms(2, 2, 2, real_coeff().boxed()), 1..=2),
        a in 1u32..=3,
        b in 1u32..=2,
        swap in any::<bool>(),
    ) {
        let src = VarTable::holomorphic(&["z", "w"]).unwrap();
        let tgt = VarTable::holomorphic(&["u", "v"]).unwrap();
        let gens: Vec<Poly> = gens.iter().map(|x| build(&src, x)).collect();
        let ideal = Ideal::with_generators(&src, gens).unwrap();
        let p0 = Poly::var(&src, 0).pow(a).unwrap();
        let p1 = Poly::var(&src, 1).pow(b).unwrap();
        let map = if swap { vec![p1, p0] } else { vec![p0, p1] };
        let pre = preimage_under_map(&ideal, &map, &tgt).unwrap();
        for f in pre.basis().unwrap() {
            prop_assert!(ideal.contains(&f.subst(&map).unwrap()).unwrap());
        }
        // a finite surjective map preserves dimension
        prop_assert_eq!(pre.dimension().unwrap().krull_dim, ideal.dimension().unwrap().krull_dim);
    }
}

fn rigid(p: &str) -> GenericSubmanifold {
    GenericSubmanifold::parse(&["z", "w"], &[&format!("w + ~w - 2*({p})")]).unwrap()
}

/// Hermitian-symmetric polynomials `Σ c_{jk} z^j ~z^k` with `c_{kj} = conj(c_{jk})`
/// and no pure terms, giving rigid hypersurfaces.
fn hermitian_form() -> impl Strategy<Value = String> {
    prop::collection::vec((1u32..=3, 1u32..=3, -2i64..=2, -2i64..=2), 1..=3).prop_map(|ts| {
        let mut parts = Vec::new();
        for (j, k, re, im) in ts {
            if j == k {
                parts.push(format!("({re})*z^{j}*~z^{k}"));
            } else {
                parts.push(format!(
                    "({re} + ({im})*i)*z^{j}*~z^{k} + ({re} - ({im})*i)*z^{k}*~z^{j}"
                ));
            }
        }
        parts.join(" + ")
    })
}

fn vector_field() -> impl Strategy<Value = Vec<Terms>> {
    prop::collection::vec(terms(4, 2, 2, coeff().boxed()), 4)
}

fn field(t: &Arc<VarTable>, c: &[Terms]) -> VectorField {
    VectorField::new(t, c.iter().map(|x| build(t, x)).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn essential_variety_is_order_independent(form in hermitian_form()) {
        let m = rigid(&form);
        let a = m.essential_variety(BaseOrder::Lex).unwrap();
        let b = m.essential_variety(BaseOrder::DegRevLex).unwrap();
        prop_assert!(a.ideal.same_ideal(&b.ideal).unwrap());
        prop_assert_eq!(a.essentially_finite, b.essentially_finite);
    }

    #[test]
    fn lie_bracket_is_antisymmetric_and_satisfies_jacobi(
        a in vector_field(), b in vector_field(), c in vector_field(),
    ) {
        let t = VarTable::paired(&["z", "w"]).unwrap();
        let (x, y, z) = (field(&t, &a), field(&t, &b), field(&t, &c));
        prop_assert!(x.bracket(&y).unwrap().add(&y.bracket(&x).unwrap()).unwrap().is_zero());
        let jacobi = x.bracket(&y.bracket(&z).unwrap()).unwrap()
            .add(&y.bracket(&z.bracket(&x).unwrap()).unwrap()).unwrap()
            .add(&z.bracket(&x.bracket(&y).unwrap()).unwrap()).unwrap();
        prop_assert!(jacobi.is_zero());
    }

    #[test]
    fn finite_type_is_invariant_under_scaling(k in 1u32..=3, re in 1i64..=3, im in -2i64..=2) {
        // z ↦ λz turns |z|^{2k} into |λ|^{2k}|z|^{2k}
        let factor = (re * re + im * im).pow(k);
        let base = rigid(&format!("z^{k}*~z^{k}"));
        let moved = rigid(&format!("{factor}*z^{k}*~z^{k}"));
        let a = finite_type_order(&base, 8).unwrap();
        let b = finite_type_order(&moved, 8).unwrap();
        prop_assert_eq!(a.status, TypeStatus::FiniteType(2 * k));
        prop_assert_eq!(a.status, b.status);
        prop_assert_eq!(a.span_dims, b.span_dims);
    }

    #[test]
    fn essential_finiteness_agrees_along_finite_maps(form in hermitian_form(), a in 1u32..=3) {
        let target = rigid(&form);
        let (source, h) = pull_back(&target, a);
        prop_assert!(h.maps_into(&source, &target).unwrap());
        let es = source.essential_variety(BaseOrder::DegRevLex).unwrap();
        let et = target.essential_variety(BaseOrder::DegRevLex).unwrap();
        prop_assert_eq!(es.essentially_finite, et.essentially_finite);
    }

    #[test]
    fn criterion_is_zero_dimensional_when_target_is_essentially_finite(
        form in hermitian_form(), a in 1u32..=3,
    ) {
        let target = rigid(&form);
        let (source, h) = pull_back(&target, a);
        let ess = target.essential_variety(BaseOrder::DegRevLex).unwrap();
        let c = h.criterion_variety(&source, &target, BaseOrder::DegRevLex).unwrap();
        if ess.essentially_finite {
            prop_assert!(c.satisfied());
        }
    }

    #[test]
    fn degrading_caps_never_changes_a_definite_verdict(
        form in hermitian_form(), a in 1u32..=2, bracket in 1u32..=8, colength in 1u32..=8,
    ) {
        let target = rigid(&form);
        let (source, h) = pull_back(&target, a);
        let full = analyticity_verdict(&source, &target, &h, Caps::default()).unwrap().verdict;
        let caps = Caps { bracket_cap: bracket, colength_cap: colength, ..Caps::default() };
        let low = analyticity_verdict(&source, &target, &h, caps).unwrap().verdict;
        if full != Verdict::CriterionSatisfied {
            prop_assert_ne!(low, Verdict::CriterionSatisfied);
        } else if low != full {
            prop_assert!(matches!(low, Verdict::Inconclusive(_)));
        }
    }
}

/// Source `σ(H(Z), H̄(ζ)) = 0` for `H = (z^a, w)`, so `H` maps it into the target.
fn pull_back(target: &GenericSubmanifold, a: u32) -> (GenericSubmanifold, FormalMapJet) {
    let t = target.table();
    let z = Poly::var(t, 0).pow(a).unwrap();
    let zeta = Poly::var(t, t.zeta(0)).pow(a).unwrap();
    let images = [z, Poly::var(t, 1), zeta, Poly::var(t, t.zeta(1))];
    let sigma = target.defining()[0].subst(&images).unwrap();
    let source = GenericSubmanifold::new(RealVariety::new(t, vec![sigma], None).unwrap()).unwrap();
    let h = FormalMapJet::parse(source.holo_table(), &[&format!("z^{a}"), "w"]).unwrap();
    (source, h)
}

/// Every bracket tree with at most three leaves, not only the left-nested ones.
fn all_brackets_rank(gens: &[VectorField], n: usize) -> usize {
    let mut space = crlab_core::linalg::RowSpace::new(n);
    let mut pairs = Vec::new();
    for x in gens {
        space.insert(x.value_at_origin());
        for y in gens {
            let b = x.bracket(y).unwrap();
            space.insert(b.value_at_origin());
            pairs.push(b);
        }
    }
    for x in gens {
        for p in &pairs {
            space.insert(x.bracket(p).unwrap().value_at_origin());
            space.insert(p.bracket(x).unwrap().value_at_origin());
        }
    }
    space.rank()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn left_nested_brackets_span_like_all_brackets(form in hermitian_form()) {
        let m = rigid(&form);
        let gens = cr_fields(&m).unwrap();
        let r = finite_type_order(&m, 3).unwrap();
        prop_assert_eq!(*r.span_dims.last().unwrap(), all_brackets_rank(&gens, 4));
    }
}
