use super::*;
use crate::presets::preset;
use crate::rank1::RankOneCtx;
use crate::scalars::Field;
use crate::verma::CharacterSampler;
use proptest::prelude::*;
use std::sync::Arc;

fn alg(name: &str) -> Algebra {
    Algebra::new(preset(name).unwrap(), &Caps::default())
}

fn roots(a: &Algebra) -> RootSystemData {
    a.roots().cloned().unwrap()
}

fn w(c: &[i32]) -> Weight {
    Weight::from_coords(c)
}

fn trivial(n: usize) -> EtaHom {
    EtaHom::trivial(n)
}

fn pair(l: &[i32], m: &[i32]) -> Pair {
    (w(l), w(m))
}

fn window(pairs: &[Pair]) -> HCWindow {
    HCWindow {
        pairs: pairs.iter().cloned().collect(),
        radius: None,
        truncated: false,
    }
}

fn c1(q: &Scalar) -> U0Elem {
    let mut p = U0Elem::kl(w(&[1]), w(&[0])).scale(q);
    p.add_term(KL::new(w(&[0]), w(&[1])), Scalar::one());
    p
}

#[test]
fn rank_one_single_ladder_constraint() {
    let a = alg("A1-generic");
    let r = roots(&a);
    let win = window(&[pair(&[1], &[0]), pair(&[0], &[1])]);
    let cons = hc_constraints(&a, &r, &trivial(1), &win).unwrap();
    assert!(!cons.is_empty());
    assert!(cons.iter().all(|c| c.rule == Rule::E1));
    let sol = solve_b_eta(&a, &r, &trivial(1), &win).unwrap();
    assert_eq!(sol.basis.len(), 1);
    let q = a.chi().q(0, 0).clone();
    let p = &sol.basis[0];
    assert_eq!(
        p.scale(&p.coeff(&KL::new(w(&[0]), w(&[1]))).inv().unwrap()),
        c1(&q)
    );
}

#[test]
fn unit_window_gives_constants() {
    for name in ["A1-generic", "A1-zeta3", "A2-generic", "A2-zeta3"] {
        let a = alg(name);
        let n = a.rank();
        let win = window(&[(Weight::zero(n), Weight::zero(n))]);
        let sol = solve_b_eta(&a, &roots(&a), &trivial(n), &win).unwrap();
        assert_eq!(sol.basis.len(), 1, "{name}");
        assert_eq!(sol.basis[0], U0Elem::one(n));
    }
}

#[test]
fn off_ladder_generic_values_vanish() {
    let a = alg("A1-generic");
    let r = roots(&a);
    let eta = EtaHom::new(vec![Scalar::from_int(2)]).unwrap();
    let win = HCWindow::closure(&r, &[pair(&[0], &[0]), pair(&[0], &[1])], 3);
    let cons = hc_constraints(&a, &r, &eta, &win).unwrap();
    assert!(cons.iter().all(|c| c.rule == Rule::E2));
    assert_eq!(cons.len(), win.len());
    assert!(solve_b_eta(&a, &r, &eta, &win).unwrap().basis.is_empty());
}

#[test]
fn root_of_unity_ladder_gives_one_orbit_sum() {
    let a = alg("A1-zeta3");
    let r = roots(&a);
    // η_{0,α} = q: t = 1 on the base residue; the other residues give t = 2 and t = 0
    let win = window(&[pair(&[0], &[1]), pair(&[1], &[0]), pair(&[3], &[-2])]);
    let cons = hc_constraints(&a, &r, &trivial(1), &win).unwrap();
    assert!(cons.iter().all(|c| c.rule == Rule::E3));
    assert_eq!(cons.len(), 2);
    let q = a.chi().q(0, 0).clone();
    assert!(in_b_eta(&a, &r, &trivial(1), &c1(&q)).unwrap());
}

#[test]
fn reconstructs_the_rank_one_central_element() {
    for name in ["A1-generic", "A1-zeta3"] {
        let a = alg(name);
        let r = roots(&a);
        let q = a.chi().q(0, 0).clone();
        let s = reconstruct_center(&a, &r, &trivial(1), &c1(&q)).unwrap();
        let fe = a.multiply(&a.f(0), &a.e(0)).unwrap();
        let expect = UElement::from_u0(&c1(&q)).add(&fe.scale(&(Scalar::one() - &q)));
        assert_eq!(s.v, expect, "{name}");
        assert_eq!(s.height_bound, 1);
        assert_eq!(hc_image(&a, &r, &trivial(1), &s.v).unwrap(), c1(&q));
    }
}

#[test]
fn unit_reconstructs_to_unit() {
    let a = alg("A2-zeta3");
    let s = reconstruct_center(&a, &roots(&a), &trivial(2), &U0Elem::one(2)).unwrap();
    assert_eq!(s.v, a.one());
    assert_eq!(s.height_bound, 0);
}

#[test]
fn elements_outside_b_are_rejected() {
    let a = alg("A1-generic");
    let p = U0Elem::kl(w(&[1]), w(&[0]));
    assert!(matches!(
        reconstruct_center(&a, &roots(&a), &trivial(1), &p),
        Err(HcError::NotInB(_))
    ));
}

#[test]
fn group_likes_fail_skew_centrality() {
    let a = alg("A2-generic");
    assert!(verify_skew_central(&a, &a.one(), &trivial(2)).unwrap());
    assert!(!verify_skew_central(&a, &a.group_like(w(&[1, 0]), w(&[0, 0])), &trivial(2)).unwrap());
}

/// Main-theorem round trip on a closed window; returns the dimension of 𝔅_η there.
fn round_trip(name: &str, eta: &EtaHom, seeds: &[Pair], radius: i32) -> usize {
    let a = Arc::new(alg(name));
    let r = roots(&a);
    let win = HCWindow::closure(&r, seeds, radius);
    let sol = solve_b_eta(&a, &r, eta, &win).unwrap();
    let mut images = crate::linalg::EchelonBasis::new();
    let vars: Vec<KL> = win.pairs.iter().map(|(l, m)| KL::new(*l, *m)).collect();
    for p in &sol.basis {
        let s = reconstruct_center(&a, &r, eta, p).unwrap();
        let img = hc_image(&a, &r, eta, &s.v).unwrap();
        assert_eq!(&img, p);
        assert!(images.insert(&vars.iter().map(|kl| img.coeff(kl)).collect::<Vec<_>>()));
        for i in 0..a.rank() {
            let ctx =
                RankOneCtx::embedded(a.clone(), i, eta.eval(&Weight::simple(a.rank(), i))).unwrap();
            assert!(
                ctx.hc_relations_hold(p, &win.pairs.iter().cloned().collect::<Vec<_>>()),
                "{name}, i = {i}"
            );
        }
    }
    sol.basis.len()
}

#[test]
fn main_theorem_rank_one() {
    let s = [pair(&[0], &[0]), pair(&[0], &[1])];
    assert!(round_trip("A1-generic", &trivial(1), &s, 2) > 1);
    assert!(round_trip("A1-zeta3", &trivial(1), &s, 2) > 1);
    let q = preset("A1-generic").unwrap().q(0, 0).clone();
    assert!(round_trip("A1-generic", &EtaHom::new(vec![q]).unwrap(), &s, 2) > 0);
    let z = Scalar::zeta(3, 1);
    assert!(round_trip("A1-zeta3", &EtaHom::new(vec![z]).unwrap(), &s, 2) > 0);
}

#[test]
fn main_theorem_a2_at_zeta3() {
    let s = [
        pair(&[0, 0], &[0, 0]),
        pair(&[0, 0], &[1, 0]),
        pair(&[0, 0], &[0, 1]),
    ];
    assert!(round_trip("A2-zeta3", &trivial(2), &s, 1) > 1);
    let z = Scalar::zeta(3, 1);
    let eta = EtaHom::new(vec![z.clone(), z]).unwrap();
    assert!(round_trip("A2-zeta3", &eta, &s, 1) > 0);
}

#[test]
fn shift_conjugation_in_a2() {
    let a = alg("A2-zeta3");
    let eta = trivial(2);
    for i in 0..2 {
        let refl = reflected(&a, i, &eta, &Caps::default()).unwrap();
        let win = HCWindow::closure(
            &refl.roots,
            &[pair(&[0, 0], &[0, 0]), pair(&[0, 0], &[1, 1])],
            1,
        );
        let sol = solve_b_eta(&refl.algebra, &refl.roots, &refl.eta, &win).unwrap();
        assert!(!sol.basis.is_empty());
        for p in &sol.basis {
            let v = reconstruct_center(&refl.algebra, &refl.roots, &refl.eta, p).unwrap();
            assert!(shift_conjugation_check(&a, &refl, &eta, &v.v).unwrap());
        }
    }
}

#[test]
fn smsc_p_on_rank_one_example() {
    let a = alg("A1-generic");
    let q = a.chi().q(0, 0).clone();
    // Λ(K_αL_{−α}) = q/ρ̂(α) = 1
    let lam = CharacterU0::new(vec![Scalar::one()], vec![Scalar::one()]).unwrap();
    assert!(smsc_p_check(&a, &trivial(1), &c1(&q), &w(&[1]), 1, &lam).unwrap());
    let off = CharacterU0::new(vec![Scalar::from_int(2)], vec![Scalar::one()]).unwrap();
    assert!(matches!(
        smsc_p_check(&a, &trivial(1), &c1(&q), &w(&[1]), 1, &off),
        Err(HcError::HypothesisViolated { .. })
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn smsc_p_holds_on_solutions(seed in 0u64..10_000, root in 0usize..3, t in 1i64..3) {
        let a = alg("A2-zeta3");
        let r = roots(&a);
        let z = Scalar::zeta(3, 1);
        let eta = if seed % 2 == 0 { trivial(2) } else { EtaHom::new(vec![z.clone(), z]).unwrap() };
        let win = HCWindow::closure(&r, &[pair(&[0, 0], &[0, 0]), pair(&[0, 0], &[1, 0])], 1);
        let sol = solve_b_eta(&a, &r, &eta, &win).unwrap();
        let beta = r.positive_roots[root];
        let mut s = CharacterSampler::new(Field::Cyclotomic(3), seed);
        let mut lam = s.draw(2);
        // solve Λ(K_βL_{−β}) = q_β^t/ρ̂(β) in the L-value of a unit coordinate of β
        let j = beta.coords().iter().position(|&c| c == 1).unwrap();
        lam.lvals[j] = Scalar::one();
        let chi = a.chi();
        let have = lam.eval(&beta, &-beta) * chi.rho_hat(&beta);
        lam.lvals[j] = have * chi.q_of(&beta).pow(t).inv().unwrap();
        for p in &sol.basis {
            prop_assert!(smsc_p_check(&a, &eta, p, &beta, t, &lam).unwrap());
        }
    }
}
