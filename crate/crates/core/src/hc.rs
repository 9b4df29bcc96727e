//! The Harish-Chandra layer: the defining equations of 𝔅_η, their solution space,
//! the ℋ𝒞 map and reconstruction of skew-central elements from their images.

use crate::algebra::{lusztig_map, Algebra, AlgebraError, BasisId, LusztigMap, Monomial, UElement};
use crate::groupoid::{Caps, RootSystemData};
use crate::lattice::{eta_shift, CharacterU0, EtaHom, LatticeError, Weight, KL};
use crate::laurent::U0Elem;
use crate::linalg::Matrix;
use crate::scalars::{discrete_log, kappa, kappa_prime, Scalar, ScalarError};
use crate::verma::{shapovalov_matrix, u0_det, VermaError};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HcError {
    #[error("hypothesis {which} violated: {detail}")]
    HypothesisViolated { which: String, detail: String },
    #[error("the element is not in 𝔅_η: {0}")]
    NotInB(String),
    #[error("𝒞·𝒮⁻¹ is not integral in degree {0:?}")]
    IntegralityFailed(Vec<i32>),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("no root data: the root system is not finite within the caps")]
    NoRootData,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Verma(#[from] VermaError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

type Result<T> = std::result::Result<T, HcError>;

/// Bound for discrete logarithms in the κ = 0 case; larger exponents send every
/// (e1) target outside any window we build.
const LOG_BOUND: u64 = 256;

pub type Pair = (Weight, Weight);

/// A finite set of (λ, μ) supporting candidate elements of 𝔅_η.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HCWindow {
    pub pairs: BTreeSet<Pair>,
    pub radius: Option<i32>,
    /// Some closure step left the box.
    pub truncated: bool,
}

fn in_box(p: &Pair, r: i32) -> bool {
    p.0.coords()
        .iter()
        .chain(p.1.coords())
        .all(|c| c.abs() <= r)
}

impl HCWindow {
    /// Seeds closed under (λ+tβ, μ−tβ) for β ∈ R⁺ and |t| ≤ R, inside the box of radius R.
    pub fn closure(rsd: &RootSystemData, seeds: &[Pair], radius: i32) -> Self {
        let mut pairs: BTreeSet<Pair> = seeds.iter().cloned().collect();
        let mut queue: Vec<Pair> = seeds.to_vec();
        let mut truncated = false;
        while let Some((l, m)) = queue.pop() {
            for b in &rsd.positive_roots {
                for t in -radius..=radius {
                    let p = (l + *b * t, m - *b * t);
                    if !in_box(&p, radius) {
                        truncated = true;
                        continue;
                    }
                    if pairs.insert(p) {
                        queue.push(p);
                    }
                }
            }
        }
        HCWindow {
            pairs,
            radius: Some(radius),
            truncated,
        }
    }

    pub fn from_support(p: &U0Elem) -> Self {
        HCWindow {
            pairs: p.terms().map(|(kl, _)| (kl.k, kl.l)).collect(),
            radius: None,
            truncated: false,
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// β-ladders: base pair and the offsets x of its members (λ₀+xβ, μ₀−xβ).
    pub fn ladders(&self, beta: &Weight) -> Vec<(Pair, Vec<(i64, Pair)>)> {
        let j = beta
            .coords()
            .iter()
            .position(|&c| c != 0)
            .expect("roots are nonzero");
        let bj = beta.coords()[j];
        let mut out: BTreeMap<Pair, Vec<(i64, Pair)>> = BTreeMap::new();
        for p in &self.pairs {
            let x = p.0.coords()[j].div_euclid(bj);
            let base = (p.0 - *beta * x, p.1 + *beta * x);
            out.entry(base).or_default().push((x as i64, *p));
        }
        out.into_iter().collect()
    }
}

/// One instantiated equation Σ c·a_(λ,μ) = 0 and the rule it comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub rule: Rule,
    pub root: usize,
    pub terms: Vec<(Pair, Scalar)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rule {
    E1,
    E2,
    E3,
    E4,
}

fn require_generic(alg: &Algebra, rsd: &RootSystemData) -> Result<()> {
    for r in &rsd.positive_roots {
        if alg.chi().q_of(r).is_one() {
            return Err(HcError::HypothesisViolated {
                which: "q_α ≠ 1".into(),
                detail: format!("α = {:?}", r.coords()),
            });
        }
    }
    Ok(())
}

/// The equation instances touching the window; absent pairs count as zero.
pub fn hc_constraints(
    alg: &Algebra,
    rsd: &RootSystemData,
    eta: &EtaHom,
    window: &HCWindow,
) -> Result<Vec<Constraint>> {
    require_generic(alg, rsd)?;
    let chi = alg.chi();
    let mut out = Vec::new();
    for (ri, beta) in rsd.positive_roots.iter().enumerate() {
        let qb = chi.q_of(beta);
        let k = kappa(&qb)? as i64;
        let rho = chi.rho_hat(beta);
        for ((l0, m0), members) in window.ladders(beta) {
            let s0 = eta_shift(eta, chi, &l0, &m0, beta);
            let at: BTreeMap<i64, Pair> = members.iter().cloned().collect();
            let t0 = discrete_log(&qb, &s0, LOG_BOUND);
            if k == 0 {
                for (&x, p) in &at {
                    match t0 {
                        None => out.push(Constraint {
                            rule: Rule::E2,
                            root: ri,
                            terms: vec![(*p, Scalar::one())],
                        }),
                        Some(t0) => {
                            let tx = t0 - 2 * x;
                            if tx == 0 {
                                continue;
                            }
                            let mut terms = vec![(*p, -rho.pow(tx))];
                            if let Some(q) = at.get(&(x + tx)) {
                                terms.push((*q, Scalar::one()));
                            }
                            out.push(Constraint {
                                rule: Rule::E1,
                                root: ri,
                                terms,
                            });
                        }
                    }
                }
            } else {
                // Σ_{j ≡ b+t} ρ̂^{−(j−b)} a_j = Σ_{j ≡ b} ρ̂^{−(j−b)} a_j
                let residue_eq = |b: i64, t: i64, rule: Rule| {
                    let mut terms = Vec::new();
                    for (&j, p) in &at {
                        let w = rho.pow(-(j - b));
                        if (j - b - t).rem_euclid(k) == 0 {
                            terms.push((*p, w.clone()));
                        }
                        if (j - b).rem_euclid(k) == 0 {
                            terms.push((*p, -w));
                        }
                    }
                    Constraint {
                        rule,
                        root: ri,
                        terms,
                    }
                };
                for b in 0..k {
                    match t0 {
                        Some(t0) => {
                            let t = (t0 - 2 * b).rem_euclid(k);
                            if t != 0 {
                                out.push(residue_eq(b, t, Rule::E3));
                            }
                        }
                        None => {
                            for t in 1..k {
                                out.push(residue_eq(b, t, Rule::E4));
                            }
                        }
                    }
                }
            }
        }
    }
    out.retain(|c| !c.terms.is_empty());
    Ok(out)
}

/// A basis of 𝔅_η restricted to the window.
#[derive(Clone, Debug)]
pub struct HCSolution {
    pub window: HCWindow,
    pub eta: EtaHom,
    pub constraints: usize,
    pub basis: Vec<U0Elem>,
}

pub fn solve_b_eta(
    alg: &Algebra,
    rsd: &RootSystemData,
    eta: &EtaHom,
    window: &HCWindow,
) -> Result<HCSolution> {
    let cons = hc_constraints(alg, rsd, eta, window)?;
    let vars: Vec<Pair> = window.pairs.iter().cloned().collect();
    let index: BTreeMap<Pair, usize> = vars.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let rows: Vec<Vec<Scalar>> = cons
        .iter()
        .map(|c| {
            let mut row = vec![Scalar::zero(); vars.len()];
            for (p, s) in &c.terms {
                row[index[p]] += s;
            }
            row
        })
        .collect();
    let kernel = if rows.is_empty() {
        (0..vars.len())
            .map(|i| {
                (0..vars.len())
                    .map(|j| {
                        if i == j {
                            Scalar::one()
                        } else {
                            Scalar::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    } else {
        Matrix::from_rows(rows, vars.len()).nullspace()
    };
    let basis = kernel
        .into_iter()
        .map(|v| {
            let mut p = U0Elem::zero();
            for (c, (l, m)) in v.into_iter().zip(&vars) {
                p.add_term(KL::new(*l, *m), c);
            }
            p
        })
        .collect();
    Ok(HCSolution {
        window: window.clone(),
        eta: eta.clone(),
        constraints: cons.len(),
        basis,
    })
}

/// Violated equation instances for P, checked on its own support.
pub fn b_eta_violations(
    alg: &Algebra,
    rsd: &RootSystemData,
    eta: &EtaHom,
    p: &U0Elem,
) -> Result<Vec<Constraint>> {
    let cons = hc_constraints(alg, rsd, eta, &HCWindow::from_support(p))?;
    Ok(cons
        .into_iter()
        .filter(|c| {
            let mut acc = Scalar::zero();
            for ((l, m), s) in &c.terms {
                acc += &(p.coeff(&KL::new(*l, *m)) * s);
            }
            !acc.is_zero()
        })
        .collect())
}

pub fn in_b_eta(alg: &Algebra, rsd: &RootSystemData, eta: &EtaHom, p: &U0Elem) -> Result<bool> {
    Ok(b_eta_violations(alg, rsd, eta, p)?.is_empty())
}

/// Λ′(P) = η(β)^{−t} Λ(P) for Λ on Λ(K_βL_{−β}) = q_β^t/ρ̂(β).
pub fn smsc_p_check(
    alg: &Algebra,
    eta: &EtaHom,
    p: &U0Elem,
    beta: &Weight,
    t: i64,
    lambda: &CharacterU0,
) -> Result<bool> {
    let chi = alg.chi();
    let qb = chi.q_of(beta);
    if qb.is_one() {
        return Err(HcError::HypothesisViolated {
            which: "q_β ≠ 1".into(),
            detail: String::new(),
        });
    }
    let kp = kappa_prime(&qb)?;
    if t < 1 || kp.is_some_and(|k| t as u64 + 1 > k) {
        return Err(HcError::HypothesisViolated {
            which: "1 ≤ t ≤ κ′ − 1".into(),
            detail: format!("t = {t}, κ′ = {kp:?}"),
        });
    }
    if lambda.eval(beta, &-*beta) * chi.rho_hat(beta) != qb.pow(t) {
        return Err(HcError::HypothesisViolated {
            which: "Λ(K_βL_{−β}) = q_β^t/ρ̂(β)".into(),
            detail: format!("t = {t}"),
        });
    }
    let n = alg.rank();
    let prime = CharacterU0::new(
        (0..n)
            .map(|j| chi.eval(&Weight::simple(n, j), beta).pow(-t) * &lambda.kvals[j])
            .collect(),
        (0..n)
            .map(|j| chi.eval(beta, &Weight::simple(n, j)).pow(t) * &lambda.lvals[j])
            .collect(),
    )?;
    Ok(p.eval(&prime) == eta.eval(beta).pow(-t) * p.eval(lambda))
}

/// V with Sh(V) = P and the transcript of the degree-by-degree solve.
#[derive(Clone, Debug)]
pub struct SkewCentralElement {
    pub v: UElement,
    pub eta: EtaHom,
    pub source: U0Elem,
    /// degp bound k: Z vanishes above height k.
    pub height_bound: u32,
    pub steps: Vec<DegreeStep>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeStep {
    pub degree: Vec<i32>,
    pub size: usize,
    pub nonzero_entries: usize,
}

fn minor(m: &[Vec<U0Elem>], r: usize, c: usize) -> Vec<Vec<U0Elem>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != r)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(j, _)| *j != c)
                .map(|(_, z)| z.clone())
                .collect()
        })
        .collect()
}

/// 𝒵 = 𝒞·adj(𝒮)/det 𝒮, with every division checked exact.
fn solve_z(
    rank: usize,
    c: &[Vec<U0Elem>],
    s: &[Vec<U0Elem>],
    deg: &Weight,
) -> Result<Vec<Vec<U0Elem>>> {
    let m = s.len();
    let det = u0_det(rank, s)?;
    if det.is_zero() {
        return Err(HcError::VerificationFailed(format!(
            "det 𝒮 vanishes in degree {:?}",
            deg.coords()
        )));
    }
    let mut adj = vec![vec![U0Elem::zero(); m]; m];
    for (i, row) in adj.iter_mut().enumerate() {
        for (j, a) in row.iter_mut().enumerate() {
            let d = u0_det(rank, &minor(s, j, i))?;
            *a = if (i + j) % 2 == 0 { d } else { d.neg() };
        }
    }
    let mut z = vec![vec![U0Elem::zero(); m]; m];
    for x in 0..m {
        for y in 0..m {
            let mut acc = U0Elem::zero();
            for k in 0..m {
                if !c[x][k].is_zero() && !adj[k][y].is_zero() {
                    acc = acc.add(&c[x][k].mul(&adj[k][y]));
                }
            }
            z[x][y] = acc
                .exact_div(&det)
                .ok_or_else(|| HcError::IntegralityFailed(deg.coords().to_vec()))?;
        }
    }
    Ok(z)
}

/// π(X): drop every term with a nontrivial E-part.
pub fn pi_minus(x: &UElement) -> UElement {
    let mut r = UElement::zero();
    for (m, c) in x.terms() {
        if m.e.is_empty() {
            r.add_term(*m, c.clone());
        }
    }
    r
}

/// η(−β) Y P
fn shifted_target(alg: &Algebra, eta: &EtaHom, p: &U0Elem, deg: &Weight, y: usize) -> UElement {
    let s = eta.eval(&-*deg);
    let mut r = UElement::zero();
    for (kl, c) in p.terms() {
        r.add_term(
            Monomial::new(BasisId::new(*deg, y), *kl, BasisId::empty(alg.rank())),
            c * &s,
        );
    }
    r
}

/// The unique V ∈ 𝒵_η with Sh(V) = P.
pub fn reconstruct_center(
    alg: &Algebra,
    rsd: &RootSystemData,
    eta: &EtaHom,
    p: &U0Elem,
) -> Result<SkewCentralElement> {
    require_generic(alg, rsd)?;
    let bad = b_eta_violations(alg, rsd, eta, p)?;
    if let Some(c) = bad.first() {
        return Err(HcError::NotInB(format!(
            "{:?} for root {:?}",
            c.rule,
            rsd.positive_roots[c.root].coords()
        )));
    }
    let n = alg.rank();
    let k = p.degp();
    let mut v = UElement::from_u0(p);
    let mut steps = Vec::new();
    for h in 1..=k + 1 {
        let mut layer = UElement::zero();
        for deg in Weight::of_height(n, h) {
            let m = alg.dim(&deg)?;
            if m == 0 {
                continue;
            }
            // Σ_x Y_x C_{x,y} = η(−β)Y_yP − π(V_{<β}Y_y)
            let mut c = vec![vec![U0Elem::zero(); m]; m];
            for y in 0..m {
                let rest = shifted_target(alg, eta, p, &deg, y)
                    .sub(&pi_minus(&alg.multiply(&v, &alg.f_basis(deg, y))?));
                for (mono, coef) in rest.terms() {
                    if mono.f.deg != deg || !mono.e.is_empty() {
                        return Err(HcError::VerificationFailed(format!(
                            "π(V·Y) left U⁻_{{−β}}U⁰ in degree {:?}",
                            deg.coords()
                        )));
                    }
                    c[mono.f.idx as usize][y].add_term(mono.kl, coef.clone());
                }
            }
            let s = shapovalov_matrix(alg, &deg)?.entries;
            let z = solve_z(n, &c, &s, &deg)?;
            let mut nonzero = 0;
            for (y, row) in z.iter().enumerate() {
                for (x, zyx) in row.iter().enumerate() {
                    if zyx.is_zero() {
                        continue;
                    }
                    nonzero += 1;
                    for (kl, coef) in zyx.terms() {
                        layer.add_term(
                            Monomial::new(BasisId::new(deg, y), *kl, BasisId::new(deg, x)),
                            coef.clone(),
                        );
                    }
                }
            }
            if h == k + 1 && nonzero > 0 {
                return Err(HcError::VerificationFailed(format!(
                    "𝒵 ≠ 0 in degree {:?} above the bound {k}",
                    deg.coords()
                )));
            }
            steps.push(DegreeStep {
                degree: deg.coords().to_vec(),
                size: m,
                nonzero_entries: nonzero,
            });
        }
        v = v.add(&layer);
    }
    let out = SkewCentralElement {
        v,
        eta: eta.clone(),
        source: p.clone(),
        height_bound: k,
        steps,
    };
    if !verify_skew_central(alg, &out.v, eta)? {
        return Err(HcError::VerificationFailed("V is not skew-central".into()));
    }
    if out.v.shapovalov_project() != *p {
        return Err(HcError::VerificationFailed("Sh(V) ≠ P".into()));
    }
    check_lower_degrees(alg, eta, &out, k)?;
    Ok(out)
}

/// π(V·Y) = η(−β)Y·P for every F-basis element Y of height ≤ `max_height`.
fn check_lower_degrees(
    alg: &Algebra,
    eta: &EtaHom,
    s: &SkewCentralElement,
    max_height: u32,
) -> Result<()> {
    for h in 0..=max_height {
        for deg in Weight::of_height(alg.rank(), h) {
            for y in 0..alg.dim(&deg)? {
                let lhs = pi_minus(&alg.multiply(&s.v, &alg.f_basis(deg, y))?);
                if lhs != shifted_target(alg, eta, &s.source, &deg, y) {
                    return Err(HcError::VerificationFailed(format!(
                        "π(V·Y) ≠ η(−β)Y·P in degree {:?}",
                        deg.coords()
                    )));
                }
            }
        }
    }
    Ok(())
}

/// V E_i = η(α_i) E_i V, V F_i = η(−α_i) F_i V, and V commutes with U⁰.
pub fn verify_skew_central(alg: &Algebra, v: &UElement, eta: &EtaHom) -> Result<bool> {
    let n = alg.rank();
    for i in 0..n {
        let ai = Weight::simple(n, i);
        let checks = [
            (alg.e(i), eta.eval(&ai)),
            (alg.f(i), eta.eval(&-ai)),
            (alg.group_like(ai, Weight::zero(n)), Scalar::one()),
            (alg.group_like(Weight::zero(n), ai), Scalar::one()),
        ];
        for (g, s) in checks {
            let lhs = alg.multiply(v, &g)?;
            let rhs = alg.multiply(&g, v)?.scale(&s);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// ℋ𝒞_η(V) = Sh(V), checked to lie in 𝔅_η.
pub fn hc_image(alg: &Algebra, rsd: &RootSystemData, eta: &EtaHom, v: &UElement) -> Result<U0Elem> {
    if !verify_skew_central(alg, v, eta)? {
        return Err(HcError::VerificationFailed("V is not skew-central".into()));
    }
    let p = v.shapovalov_project();
    let bad = b_eta_violations(alg, rsd, eta, &p)?;
    if let Some(c) = bad.first() {
        return Err(HcError::VerificationFailed(format!(
            "Sh(V) violates {:?} for root {:?}",
            c.rule,
            rsd.positive_roots[c.root].coords()
        )));
    }
    Ok(p)
}

/// The reflected presentation U(χ, Π^{χ,i}) with its root data and η in its coordinates.
pub struct Reflected {
    pub map: LusztigMap,
    pub algebra: Algebra,
    pub roots: RootSystemData,
    pub eta: EtaHom,
}

pub fn reflected(alg: &Algebra, i: usize, eta: &EtaHom, caps: &Caps) -> Result<Reflected> {
    let map = lusztig_map(alg, i)?;
    let algebra = Algebra::new(map.source.clone(), caps);
    let roots = algebra.roots().cloned().ok_or(HcError::NoRootData)?;
    let eta = eta.pullback(&map.basis_map);
    Ok(Reflected {
        map,
        algebra,
        roots,
        eta,
    })
}

/// γ_{η;i}: source U⁰ to target U⁰.
pub fn gamma_shift(alg: &Algebra, r: &Reflected, eta: &EtaHom, x: &U0Elem) -> Result<U0Elem> {
    let chi = alg.chi();
    let i = r.map.index;
    let ai = Weight::simple(alg.rank(), i);
    let k = kappa(chi.q(i, i))? as i64 - 1;
    let mut out = U0Elem::zero();
    for (kl, c) in x.terms() {
        let t = r.map.images.kl.apply(kl);
        let f = eta.eval(&ai).pow(k) * chi.eval(&ai, &t.l).pow(k) * chi.eval(&t.k, &ai).pow(-k);
        out.add_term(t, c * &f);
    }
    Ok(out)
}

/// ℋ𝒞(T_i V) = γ_{η;i}(ℋ𝒞(V)) for V skew-central in the reflected presentation.
pub fn shift_conjugation_check(
    alg: &Algebra,
    r: &Reflected,
    eta: &EtaHom,
    v: &UElement,
) -> Result<bool> {
    if !verify_skew_central(&r.algebra, v, &r.eta)? {
        return Err(HcError::HypothesisViolated {
            which: "V skew-central".into(),
            detail: "reflected side".into(),
        });
    }
    let tv = r.map.apply(&r.algebra, alg, v)?;
    if !verify_skew_central(alg, &tv, eta)? {
        return Ok(false);
    }
    Ok(tv.shapovalov_project() == gamma_shift(alg, r, eta, &v.shapovalov_project())?)
}

#[cfg(test)]
mod tests;
