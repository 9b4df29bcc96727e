use super::*;
use crate::groupoid::Caps;
use crate::presets::preset;
use crate::scalars::qnum;
use proptest::prelude::*;

fn alg(name: &str) -> Algebra {
    Algebra::new(preset(name).unwrap(), &Caps::default())
}

fn rsd(a: &Algebra) -> RootSystemData {
    a.roots().cloned().unwrap()
}

fn w(c: &[i32]) -> Weight {
    Weight::from_coords(c)
}

fn field(a: &Algebra) -> Field {
    a.chi().field()
}

#[test]
fn e_lowers_f_powers_in_rank_one() {
    for name in ["A1-generic", "A1-zeta3"] {
        let a = alg(name);
        let q = a.chi().q(0, 0).clone();
        let mut s = CharacterSampler::new(field(&a), 7);
        for _ in 0..3 {
            let lam = s.draw(1);
            let (k, l) = (lam.kvals[0].clone(), lam.lvals[0].clone());
            let mut v = VermaVector::highest(1);
            for t in 1..=4u64 {
                let prev = v.clone();
                v = act(&a, &lam, &a.f(0), &v).unwrap();
                let lowered = act(&a, &lam, &a.e(0), &v).unwrap();
                let c = qnum(t, &q) * (-(q.pow(-(t as i64 - 1))) * &k + &l);
                assert_eq!(lowered, prev.scale(&c), "{name}, t = {t}");
            }
        }
    }
}

#[test]
fn simple_degree_determinant() {
    let a = alg("A2-generic");
    for i in 0..2 {
        let ai = Weight::simple(2, i);
        let d = shapovalov_matrix(&a, &ai).unwrap().det().unwrap();
        let z = Weight::zero(2);
        let mut expect = U0Elem::kl(z, ai);
        expect.add_term(KL::new(ai, z), -Scalar::one());
        assert_eq!(d, expect);
    }
}

#[test]
fn rank_one_second_degree_determinant() {
    for name in ["A1-generic", "A1-zeta3"] {
        let a = alg(name);
        let q = a.chi().q(0, 0).clone();
        let d = shapovalov_matrix(&a, &w(&[2])).unwrap().det().unwrap();
        let z = Scalar::one() + &q;
        let mut f1 = U0Elem::kl(w(&[0]), w(&[1]));
        f1.add_term(KL::new(w(&[1]), w(&[0])), -Scalar::one());
        let mut f2 = U0Elem::kl(w(&[0]), w(&[1]));
        f2.add_term(KL::new(w(&[1]), w(&[0])), -q.pow(-1));
        assert_eq!(d, f1.mul(&f2).scale(&z), "{name}");
    }
}

#[test]
fn evaluated_matrix_matches_the_action() {
    let a = alg("A2-generic");
    let mut s = CharacterSampler::new(field(&a), 11);
    let lam = s.draw(2);
    for beta in [w(&[1, 1]), w(&[2, 1])] {
        let m = shapovalov_matrix(&a, &beta).unwrap().evaluate(&lam);
        let n = a.dim(&beta).unwrap();
        for y in 0..n {
            let v = act(&a, &lam, &a.f_basis(beta, y), &VermaVector::highest(2)).unwrap();
            for x in 0..n {
                let top = act(&a, &lam, &a.e_basis(beta, x), &v).unwrap();
                assert_eq!(&top.coeff(&BasisId::empty(2)), m.get(x, y));
            }
        }
    }
}

fn check_product(name: &str, max_height: u32) {
    let a = alg(name);
    let r = rsd(&a);
    for h in 1..=max_height {
        for beta in Weight::of_height(a.rank(), h) {
            let rep = shapovalov_det_verify(&a, &r, &beta).unwrap();
            assert!(
                rep.holds,
                "{name} at {:?}: {:?} vs {:?}",
                beta.coords(),
                rep.det,
                rep.product
            );
        }
    }
}

#[test]
fn determinant_matches_product_a1() {
    check_product("A1-generic", 4);
    check_product("A1-zeta3", 4);
}

#[test]
fn determinant_matches_product_a2() {
    check_product("A2-generic", 3);
    check_product("A2-zeta3", 4);
}

#[test]
fn determinant_needs_nontrivial_root_values() {
    let chi = crate::lattice::Bicharacter::new(Field::RationalFunction, vec![vec![Scalar::one()]])
        .unwrap();
    let a = Algebra::new(chi, &Caps::default());
    let rs = rsd(&a);
    assert!(matches!(
        shapovalov_det_verify(&a, &rs, &w(&[1])),
        Err(VermaError::HypothesisViolated { .. })
    ));
}

#[test]
fn radical_on_a_simple_hyperplane() {
    let a = alg("A1-generic");
    let mut s = CharacterSampler::new(field(&a), 3);
    let lam = s.draw_on_hyperplane(&a, &w(&[1]), 1).unwrap();
    let rad = verma_radical(&a, &lam, &w(&[1])).unwrap();
    assert_eq!(rad.len(), 1);
    let fv = act(&a, &lam, &a.f(0), &VermaVector::highest(1)).unwrap();
    assert!(act(&a, &lam, &a.e(0), &fv).unwrap().is_zero());
    // degree 2: F·(Fv) spans the radical as well
    assert_eq!(verma_radical(&a, &lam, &w(&[2])).unwrap().len(), 1);
    let generic = s.draw_generic(&a, &rsd(&a), &w(&[2])).unwrap();
    assert!(verma_radical(&a, &generic, &w(&[2])).unwrap().is_empty());
}

/// Λ on the (β̇_m, t) hyperplane and off the earlier ones.
fn singular_point(a: &Algebra, r: &RootSystemData, m: usize, t: u64, seed: u64) -> CharacterU0 {
    let mut s = CharacterSampler::new(field(a), seed);
    loop {
        let lam = s
            .draw_on_hyperplane(a, &r.positive_roots[m - 1], t as i64)
            .unwrap();
        let ok = (0..m - 1).all(|mp| {
            (1..r.kappa_root(mp))
                .all(|tp| !hyperplane_value(a, &lam, &r.positive_roots[mp], tp as i64).is_zero())
        });
        if ok {
            return lam;
        }
    }
}

#[test]
fn singular_vectors_in_a2_at_zeta3() {
    let a = alg("A2-zeta3");
    let r = rsd(&a);
    assert_eq!(r.theta, 3);
    for m in 1..=3 {
        for t in 1..r.kappa_root(m - 1) {
            let lam = singular_point(&a, &r, m, t, 100 + m as u64 * 10 + t);
            let v = singular_vector(&a, &r, m, t, &lam).unwrap();
            for gamma in [w(&[0, 0]), w(&[1, 0]), w(&[0, 1]), w(&[1, 1]), w(&[2, 1])] {
                let expect = singular_submodule_count(&r, m, t, &gamma).unwrap();
                assert_eq!(
                    orbit_dimension(&a, &lam, &v, &gamma).unwrap(),
                    expect,
                    "m {m} t {t} γ {:?}",
                    gamma.coords()
                );
            }
        }
    }
}

#[test]
fn singular_vector_hypotheses() {
    let g = alg("A1-generic");
    let lam = CharacterSampler::new(field(&g), 1).draw(1);
    assert!(matches!(
        singular_vector(&g, &rsd(&g), 1, 1, &lam),
        Err(VermaError::HypothesisViolated { .. })
    ));

    let a = alg("A1-zeta3");
    let r = rsd(&a);
    let mut s = CharacterSampler::new(field(&a), 5);
    let off = s.draw_generic(&a, &r, &w(&[2])).unwrap();
    assert!(matches!(
        singular_vector(&a, &r, 1, 1, &off),
        Err(VermaError::HypothesisViolated { .. })
    ));
    assert!(matches!(
        singular_vector(&a, &r, 1, 3, &off),
        Err(VermaError::HypothesisViolated { .. })
    ));
    let on = s.draw_on_hyperplane(&a, &w(&[1]), 2).unwrap();
    let v = singular_vector(&a, &r, 1, 2, &on).unwrap();
    assert_eq!(
        v,
        act(
            &a,
            &on,
            &a.f_word(&[0, 0]).unwrap(),
            &VermaVector::highest(1)
        )
        .unwrap()
    );
}

fn lusztig_is_a_module_map(name: &str, i: usize, seed: u64) {
    let a = alg(name);
    let mut s = CharacterSampler::new(field(&a), seed);
    let lam = loop {
        let lam = s.draw(a.rank());
        if let Ok(t) = lusztig_verma(&a, i, &lam) {
            break (lam, t);
        }
    };
    let (lam, tv) = lam;
    let src = &tv.source;
    let n = a.rank();
    let mut gens = Vec::new();
    for j in 0..n {
        gens.push(src.e(j));
        gens.push(src.f(j));
        gens.push(src.group_like(Weight::simple(n, j), Weight::zero(n)));
        gens.push(src.group_like(Weight::zero(n), Weight::simple(n, j)));
    }
    for deg in [
        w(&vec![0; n]),
        Weight::simple(n, 0),
        Weight::simple(n, n - 1),
    ] {
        for y in 0..src.dim(&deg).unwrap() {
            let v = VermaVector::from_coords(&deg, &unit(src.dim(&deg).unwrap(), y));
            let image = tv.apply(&a, &lam, &v).unwrap();
            for g in &gens {
                let lhs = tv
                    .apply(&a, &lam, &act(src, &tv.source_character, g, &v).unwrap())
                    .unwrap();
                let tg = tv.map.apply(src, &a, g).unwrap();
                let rhs = act(&a, &lam, &tg, &image).unwrap();
                assert_eq!(lhs, rhs, "{name}, i = {i}");
            }
        }
        tv.assert_injective(&a, &lam, &deg).unwrap();
    }
}

#[test]
fn lusztig_map_on_verma_modules() {
    lusztig_is_a_module_map("A1-zeta3", 0, 21);
    lusztig_is_a_module_map("A2-zeta3", 0, 22);
    lusztig_is_a_module_map("A2-zeta3", 1, 23);
}

#[test]
fn lusztig_map_hypothesis() {
    let a = alg("A1-zeta3");
    let lam = CharacterU0::new(vec![Scalar::from_int(2)], vec![Scalar::from_int(2)]).unwrap();
    assert!(matches!(
        lusztig_verma(&a, 0, &lam),
        Err(VermaError::HypothesisViolated { .. })
    ));
}

#[test]
fn rank_bound_on_hyperplanes() {
    let a = alg("A2-generic");
    let r = rsd(&a);
    let beta = w(&[2, 1]);
    for root in 0..r.theta {
        for t in 1..=2u32 {
            if root_multisets_filtered(&r, a.chi(), &beta, Some((root, t))).is_empty() {
                continue;
            }
            let mut s = CharacterSampler::new(field(&a), 40 + root as u64 * 3 + t as u64);
            let samples: Vec<_> = (0..4)
                .map(|_| s.draw_generic_on(&a, &r, &beta, root, t as i64).unwrap())
                .collect();
            let rep = rank_bound_check(&a, &r, &beta, root, t, &samples).unwrap();
            assert!(rep.bound_holds(), "{rep:?}");
            assert!(rep.equality_reached(), "{rep:?}");
            assert!(!rep.radical_checked.is_empty());
        }
    }
}

#[test]
fn sampler_is_deterministic() {
    let mut a = CharacterSampler::new(Field::Cyclotomic(3), 9);
    let mut b = CharacterSampler::new(Field::Cyclotomic(3), 9);
    assert_eq!(a.draw(2), b.draw(2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn radical_dimension_is_corank(seed in 0u64..1000) {
        let a = alg("A2-zeta3");
        let r = rsd(&a);
        let mut s = CharacterSampler::new(field(&a), seed);
        let lam = s.draw_on_hyperplane(&a, &r.positive_roots[(seed % 3) as usize], 1).unwrap();
        let beta = w(&[1, 1]);
        let m = shapovalov_matrix(&a, &beta).unwrap().evaluate(&lam);
        let rad = verma_radical(&a, &lam, &beta).unwrap();
        prop_assert_eq!(rad.len() + m.rank(), a.dim(&beta).unwrap());
        for v in &rad {
            for x in 0..a.dim(&beta).unwrap() {
                let top = act(&a, &lam, &a.e_basis(beta, x), v).unwrap();
                prop_assert!(top.is_zero());
            }
        }
    }

    #[test]
    fn determinant_vanishes_exactly_on_factor_hyperplanes(seed in 0u64..1000) {
        let a = alg("A1-zeta3");
        let r = rsd(&a);
        let beta = w(&[2]);
        let s_mat = shapovalov_matrix(&a, &beta).unwrap();
        let mut s = CharacterSampler::new(field(&a), seed);
        let lam = s.draw(1);
        let on_factor = shapovalov_factors(&a, &r, &beta).iter().any(|f| f.poly.eval(&lam).is_zero());
        prop_assert_eq!(s_mat.evaluate(&lam).det().is_zero(), on_factor);
    }
}
