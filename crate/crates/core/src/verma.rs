//! Verma modules M(Λ), Shapovalov matrices and their determinant, radicals,
//! singular vectors and rank bounds.

use crate::algebra::{
    lusztig_map, root_vectors, Algebra, AlgebraError, BasisId, LusztigMap, Monomial, UElement,
};
use crate::groupoid::{root_multisets, root_multisets_filtered, GroupoidError, RootSystemData};
use crate::lattice::{CharacterU0, LatticeError, Weight, KL};
use crate::laurent::U0Elem;
use crate::linalg::{EchelonBasis, Matrix};
use crate::scalars::{kappa, Field, Scalar, ScalarError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VermaError {
    #[error("hypothesis {which} violated: {detail}")]
    HypothesisViolated { which: String, detail: String },
    #[error("assertion failed: {0}")]
    AssertionFailed(String),
    #[error("verification failed: {lhs} ≠ {rhs}")]
    VerificationFailed { lhs: String, rhs: String },
    #[error("no root data: the root system is not finite within the caps")]
    NoRootData,
    #[error("sampling failed: {0}")]
    Sampling(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

type Result<T> = std::result::Result<T, VermaError>;

fn violated(which: &str, detail: impl Into<String>) -> VermaError {
    VermaError::HypothesisViolated {
        which: which.into(),
        detail: detail.into(),
    }
}

/// Σ c_y Y_y v_Λ over registered F-basis elements.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VermaVector {
    terms: BTreeMap<BasisId, Scalar>,
}

impl VermaVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// v_Λ
    pub fn highest(rank: usize) -> Self {
        let mut v = Self::zero();
        v.add_term(BasisId::empty(rank), Scalar::one());
        v
    }

    pub fn add_term(&mut self, id: BasisId, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(id).or_insert_with(Scalar::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&id);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisId, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, id: &BasisId) -> Scalar {
        self.terms.get(id).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (id, c) in &o.terms {
            r.add_term(*id, c.clone());
        }
        r
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut r = Self::zero();
        for (id, c) in &self.terms {
            r.add_term(*id, c * s);
        }
        r
    }

    /// Coordinates in the F-basis of degree `deg`.
    pub fn coords(&self, alg: &Algebra, deg: &Weight) -> Result<Vec<Scalar>> {
        let n = alg.dim(deg)?;
        Ok((0..n).map(|i| self.coeff(&BasisId::new(*deg, i))).collect())
    }

    pub fn from_coords(deg: &Weight, c: &[Scalar]) -> Self {
        let mut v = Self::zero();
        for (i, x) in c.iter().enumerate() {
            v.add_term(BasisId::new(*deg, i), x.clone());
        }
        v
    }

    /// The element Σ c_y Y_y of U⁻.
    pub fn to_element(&self) -> UElement {
        let mut r = UElement::zero();
        for (id, c) in &self.terms {
            let rank = id.deg.rank();
            r.add_term(
                Monomial::new(*id, KL::one(rank), BasisId::empty(rank)),
                c.clone(),
            );
        }
        r
    }
}

/// u · v in M(Λ).
pub fn act(
    alg: &Algebra,
    lambda: &CharacterU0,
    u: &UElement,
    v: &VermaVector,
) -> Result<VermaVector> {
    let y = v.to_element();
    let prod = alg.multiply(u, &y)?;
    let mut out = VermaVector::zero();
    for (m, c) in prod.terms() {
        if m.e.is_empty() {
            out.add_term(m.f, c * &lambda.eval_kl(&m.kl));
        }
    }
    Ok(out)
}

/// 𝒮 = [Sh(X_x Y_y)] over U⁰.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapovalovMatrix {
    pub degree: Weight,
    pub entries: Vec<Vec<U0Elem>>,
}

impl ShapovalovMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn evaluate(&self, lambda: &CharacterU0) -> Matrix {
        let n = self.size();
        Matrix::from_rows(
            self.entries
                .iter()
                .map(|r| r.iter().map(|z| z.eval(lambda)).collect())
                .collect(),
            n,
        )
    }

    pub fn det(&self) -> Result<U0Elem> {
        u0_det(self.degree.rank(), &self.entries)
    }
}

/// Fraction-free (Bareiss) determinant over the Laurent ring U⁰.
pub fn u0_det(rank: usize, m: &[Vec<U0Elem>]) -> Result<U0Elem> {
    let n = m.len();
    if n == 0 {
        return Ok(U0Elem::one(rank));
    }
    let mut a: Vec<Vec<U0Elem>> = m.to_vec();
    let mut sign = Scalar::one();
    let mut prev: Option<U0Elem> = None;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Ok(U0Elem::zero());
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = match &prev {
                    None => num,
                    Some(d) => num.exact_div(d).ok_or_else(|| {
                        VermaError::AssertionFailed("Bareiss division is not exact".into())
                    })?,
                };
            }
        }
        prev = Some(a[k][k].clone());
    }
    Ok(a[n - 1][n - 1].scale(&sign))
}

pub fn shapovalov_matrix(alg: &Algebra, beta: &Weight) -> Result<ShapovalovMatrix> {
    let n = alg.dim(beta)?;
    let mut entries = vec![vec![U0Elem::zero(); n]; n];
    for (x, row) in entries.iter_mut().enumerate() {
        for (y, e) in row.iter_mut().enumerate() {
            let p = alg.multiply(&alg.e_basis(*beta, x), &alg.f_basis(*beta, y))?;
            *e = p.shapovalov_project();
        }
    }
    Ok(ShapovalovMatrix {
        degree: *beta,
        entries,
    })
}

/// −ρ̂(α) q_α^{−t} K_α + L_α with its multiplicity r(α, t) in degree β.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapovalovFactor {
    pub root: usize,
    pub t: u32,
    pub multiplicity: usize,
    pub poly: U0Elem,
}

pub fn factor_poly(alg: &Algebra, root: &Weight, t: i64) -> U0Elem {
    let chi = alg.chi();
    let zero = Weight::zero(alg.rank());
    let mut f = U0Elem::monomial(KL::new(zero, *root), Scalar::one());
    f.add_term(
        KL::new(*root, zero),
        -(chi.rho_hat(root) * chi.q_of(root).pow(-t)),
    );
    f
}

fn require_generic_roots(alg: &Algebra, rsd: &RootSystemData) -> Result<()> {
    for r in &rsd.positive_roots {
        if alg.chi().q_of(r).is_one() {
            return Err(violated(
                "q_α ≠ 1",
                format!("q_α = 1 for α = {:?}", r.coords()),
            ));
        }
    }
    Ok(())
}

/// Factors with r(α, t) ≥ 1 in degree β.
pub fn shapovalov_factors(
    alg: &Algebra,
    rsd: &RootSystemData,
    beta: &Weight,
) -> Vec<ShapovalovFactor> {
    let mut out = Vec::new();
    for (idx, root) in rsd.positive_roots.iter().enumerate() {
        for t in 1.. {
            let r = root_multisets_filtered(rsd, alg.chi(), beta, Some((idx, t))).len();
            if r == 0 {
                break;
            }
            out.push(ShapovalovFactor {
                root: idx,
                t,
                multiplicity: r,
                poly: factor_poly(alg, root, t as i64),
            });
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct ShapovalovReport {
    pub degree: Weight,
    pub size: usize,
    pub det: U0Elem,
    pub gram_det: Scalar,
    pub factors: Vec<ShapovalovFactor>,
    pub product: U0Elem,
    pub holds: bool,
}

/// det 𝒮 against z · ∏ (−ρ̂(α)q_α^{−t}K_α + L_α)^{r(α,t)}.
pub fn shapovalov_det_verify(
    alg: &Algebra,
    rsd: &RootSystemData,
    beta: &Weight,
) -> Result<ShapovalovReport> {
    require_generic_roots(alg, rsd)?;
    let s = shapovalov_matrix(alg, beta)?;
    let expected = root_multisets(rsd, alg.chi(), beta).len();
    if s.size() != expected {
        return Err(VermaError::AssertionFailed(format!(
            "degree {:?}: basis size {} but {} root multisets",
            beta.coords(),
            s.size(),
            expected
        )));
    }
    let det = s.det()?;
    let z = alg.degree(beta)?.gram.det();
    let factors = shapovalov_factors(alg, rsd, beta);
    let mut product = U0Elem::constant(alg.rank(), z.clone());
    for f in &factors {
        product = product.mul(&f.poly.pow(f.multiplicity as u32));
    }
    let holds = det == product;
    Ok(ShapovalovReport {
        degree: *beta,
        size: s.size(),
        det,
        gram_det: z,
        factors,
        product,
        holds,
    })
}

/// Basis of N(Λ)_{−β}: the kernel of Λ(𝒮) on coordinate vectors.
pub fn verma_radical(
    alg: &Algebra,
    lambda: &CharacterU0,
    beta: &Weight,
) -> Result<Vec<VermaVector>> {
    let m = shapovalov_matrix(alg, beta)?.evaluate(lambda);
    Ok(m.nullspace()
        .iter()
        .map(|c| VermaVector::from_coords(beta, c))
        .collect())
}

/// Λ(ρ̂(β) K_β − q_β^t L_β)
pub fn hyperplane_value(alg: &Algebra, lambda: &CharacterU0, beta: &Weight, t: i64) -> Scalar {
    let chi = alg.chi();
    let zero = Weight::zero(alg.rank());
    chi.rho_hat(beta) * lambda.eval(beta, &zero) - chi.q_of(beta).pow(t) * lambda.eval(&zero, beta)
}

fn require_finite_kappas(rsd: &RootSystemData) -> Result<Vec<u64>> {
    let ks: Vec<u64> = (0..rsd.theta).map(|t| rsd.kappa_root(t)).collect();
    for (t, &k) in ks.iter().enumerate() {
        if rsd.q_root(t).is_one() || k < 2 {
            return Err(violated(
                "κ(q_α) ≥ 2 for every positive root",
                format!("root {:?} has κ = {k}", rsd.positive_roots[t].coords()),
            ));
        }
    }
    Ok(ks)
}

fn act_power(
    alg: &Algebra,
    lambda: &CharacterU0,
    u: &UElement,
    n: u64,
    v: VermaVector,
) -> Result<VermaVector> {
    let mut v = v;
    for _ in 0..n {
        v = act(alg, lambda, u, &v)?;
    }
    Ok(v)
}

/// Ė_1^{κ_1−1}⋯Ė_{m−1}^{κ_{m−1}−1} Ḟ_m^t Ḟ_{m−1}^{κ_{m−1}−1}⋯Ḟ_1^{κ_1−1} v_Λ, with `m` one-based.
pub fn singular_vector(
    alg: &Algebra,
    rsd: &RootSystemData,
    m: usize,
    t: u64,
    lambda: &CharacterU0,
) -> Result<VermaVector> {
    let ks = require_finite_kappas(rsd)?;
    if m == 0 || m > rsd.theta {
        return Err(violated("1 ≤ m ≤ θ", format!("m = {m}, θ = {}", rsd.theta)));
    }
    if t == 0 || t >= ks[m - 1] {
        return Err(violated(
            "1 ≤ t ≤ κ − 1",
            format!("t = {t}, κ = {}", ks[m - 1]),
        ));
    }
    let beta = rsd.positive_roots[m - 1];
    if !hyperplane_value(alg, lambda, &beta, t as i64).is_zero() {
        return Err(violated(
            "(i)",
            format!("Λ is not on the hyperplane of ({:?}, {t})", beta.coords()),
        ));
    }
    for mp in 0..m - 1 {
        for tp in 1..ks[mp] {
            if hyperplane_value(alg, lambda, &rsd.positive_roots[mp], tp as i64).is_zero() {
                return Err(violated(
                    "(ii)",
                    format!(
                        "Λ lies on the hyperplane of ({:?}, {tp})",
                        rsd.positive_roots[mp].coords()
                    ),
                ));
            }
        }
    }
    let rv = root_vectors(alg, rsd)?;
    let mut v = VermaVector::highest(alg.rank());
    for x in 0..m - 1 {
        v = act_power(alg, lambda, &rv.f[x], ks[x] - 1, v)?;
    }
    v = act_power(alg, lambda, &rv.f[m - 1], t, v)?;
    for x in (0..m - 1).rev() {
        v = act_power(alg, lambda, &rv.e[x], ks[x] - 1, v)?;
    }
    if v.is_zero() {
        return Err(VermaError::AssertionFailed(
            "the singular vector vanishes".into(),
        ));
    }
    for j in 0..alg.rank() {
        if !act(alg, lambda, &alg.e(j), &v)?.is_zero() {
            return Err(VermaError::AssertionFailed(format!(
                "E_{} does not kill the singular vector",
                j + 1
            )));
        }
    }
    Ok(v)
}

/// Number of SVth(2) basis elements of U⁻_{−γ}·v′: exponent vectors s with Σ s_x β̇_x = γ,
/// s_x ≤ κ_x − 1 and s_m ≤ κ_m − 1 − t.
pub fn singular_submodule_count(
    rsd: &RootSystemData,
    m: usize,
    t: u64,
    gamma: &Weight,
) -> Result<usize> {
    let ks = require_finite_kappas(rsd)?;
    let bounds: Vec<u64> = ks
        .iter()
        .enumerate()
        .map(|(x, &k)| if x + 1 == m { k - 1 - t } else { k - 1 })
        .collect();
    fn rec(x: usize, left: Weight, roots: &[Weight], bounds: &[u64]) -> usize {
        if x == roots.len() {
            return usize::from(left.is_zero());
        }
        let mut n = 0;
        let mut rest = left;
        for _ in 0..=bounds[x] {
            if !rest.is_nonneg() {
                break;
            }
            n += rec(x + 1, rest, roots, bounds);
            rest = rest - roots[x];
        }
        n
    }
    Ok(rec(0, *gamma, &rsd.positive_roots, &bounds))
}

/// dim U⁻_{−γ} · v
pub fn orbit_dimension(
    alg: &Algebra,
    lambda: &CharacterU0,
    v: &VermaVector,
    gamma: &Weight,
) -> Result<usize> {
    Ok(orbit_span(alg, lambda, v, gamma)?.len())
}

fn orbit_span(
    alg: &Algebra,
    lambda: &CharacterU0,
    v: &VermaVector,
    gamma: &Weight,
) -> Result<EchelonBasis> {
    let target = *gamma
        + v.terms()
            .next()
            .map(|(id, _)| id.deg)
            .unwrap_or(Weight::zero(alg.rank()));
    let mut span = EchelonBasis::new();
    for y in 0..alg.dim(gamma)? {
        let w = act(alg, lambda, &alg.f_basis(*gamma, y), v)?;
        span.insert(&w.coords(alg, &target)?);
    }
    Ok(span)
}

/// 𝒯_i: M(Λ^{⟨i⟩}) → M(Λ), X v ↦ T_i(X) F_i^{κ−1} v_Λ.
pub struct LusztigVerma {
    pub map: LusztigMap,
    pub source: Algebra,
    /// Λ^{⟨i⟩} in the coordinates of the source algebra.
    pub source_character: CharacterU0,
    pub kappa: u64,
    base: VermaVector,
}

impl std::fmt::Debug for LusztigVerma {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "LusztigVerma(i = {}, κ = {})",
            self.map.index + 1,
            self.kappa
        )
    }
}

/// Λ^{⟨i⟩}(K_λL_μ) = χ(α_i,μ)^{κ−1}/χ(λ,α_i)^{κ−1} Λ(K_λL_μ)
pub fn shifted_character_value(alg: &Algebra, i: usize, lambda: &CharacterU0, kl: &KL) -> Scalar {
    let chi = alg.chi();
    let ai = Weight::simple(alg.rank(), i);
    let k = kappa(chi.q(i, i)).expect("nonzero") as i64 - 1;
    chi.eval(&ai, &kl.l).pow(k) * chi.eval(&kl.k, &ai).pow(-k) * lambda.eval_kl(kl)
}

pub fn lusztig_verma(alg: &Algebra, i: usize, lambda: &CharacterU0) -> Result<LusztigVerma> {
    let chi = alg.chi();
    if i >= alg.rank() {
        return Err(AlgebraError::BadLetter(i).into());
    }
    let qii = chi.q(i, i).clone();
    let k = kappa(&qii)?;
    if k < 2 {
        return Err(violated("κ(q_ii) ≥ 2", format!("κ = {k}")));
    }
    let ai = Weight::simple(alg.rank(), i);
    let zero = Weight::zero(alg.rank());
    for t in 0..=k as i64 - 2 {
        let v = -lambda.eval(&ai, &zero) + qii.pow(t) * lambda.eval(&zero, &ai);
        if v.is_zero() {
            return Err(violated(
                "Λ(−K_{α_i} + q^t L_{α_i}) ≠ 0",
                format!("vanishes at t = {t}"),
            ));
        }
    }
    let map = lusztig_map(alg, i)?;
    let source = Algebra::with_roots(map.source.clone(), None, alg.height_cap());
    let img = |w: Weight, is_k: bool| {
        let kl = if is_k {
            KL::new(w, zero)
        } else {
            KL::new(zero, w)
        };
        shifted_character_value(alg, i, lambda, &map.images.kl.apply(&kl))
    };
    let n = alg.rank();
    let source_character = CharacterU0::new(
        (0..n).map(|j| img(Weight::simple(n, j), true)).collect(),
        (0..n).map(|j| img(Weight::simple(n, j), false)).collect(),
    )?;
    let base = act_power(alg, lambda, &alg.f(i), k - 1, VermaVector::highest(n))?;
    Ok(LusztigVerma {
        map,
        source,
        source_character,
        kappa: k,
        base,
    })
}

impl LusztigVerma {
    pub fn apply(
        &self,
        target: &Algebra,
        lambda: &CharacterU0,
        v: &VermaVector,
    ) -> Result<VermaVector> {
        let mut out = VermaVector::zero();
        for (id, c) in v.terms() {
            let y = self.source.f_basis(id.deg, id.idx as usize);
            let ty = self.map.apply(&self.source, target, &y)?;
            out = out.add(&act(target, lambda, &ty, &self.base)?.scale(c));
        }
        Ok(out)
    }

    /// Rank of 𝒯_i on the source degree `deg`; equals the dimension when injective there.
    pub fn rank_on(&self, target: &Algebra, lambda: &CharacterU0, deg: &Weight) -> Result<usize> {
        let n = self.source.dim(deg)?;
        let mut span = EchelonBasis::new();
        let tdeg = deg.apply(&self.map.basis_map)
            + Weight::simple(target.rank(), self.map.index) * (self.kappa as i32 - 1);
        for y in 0..n {
            let w = self.apply(target, lambda, &VermaVector::from_coords(deg, &unit(n, y)))?;
            span.insert(&w.coords(target, &tdeg)?);
        }
        Ok(span.len())
    }

    pub fn assert_injective(
        &self,
        target: &Algebra,
        lambda: &CharacterU0,
        deg: &Weight,
    ) -> Result<()> {
        let n = self.source.dim(deg)?;
        let r = self.rank_on(target, lambda, deg)?;
        if r != n {
            return Err(VermaError::AssertionFailed(format!(
                "𝒯_i has rank {r} < {n} on {:?}",
                deg.coords()
            )));
        }
        Ok(())
    }
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    (0..n)
        .map(|j| {
            if i == j {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
        .collect()
}

/// Seeded sampler of characters c·g^e with g the field generator.
pub struct CharacterSampler {
    rng: ChaCha8Rng,
    field: Field,
}

impl CharacterSampler {
    pub fn new(field: Field, seed: u64) -> Self {
        CharacterSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            field,
        }
    }

    pub fn value(&mut self) -> Scalar {
        let c = self.rng.gen_range(2..=9i64) * if self.rng.gen_bool(0.5) { 1 } else { -1 };
        let e = self.rng.gen_range(-3..=3i64);
        Scalar::from_int(c) * Scalar::generator_pow(self.field, e)
    }

    pub fn draw(&mut self, rank: usize) -> CharacterU0 {
        let k = (0..rank).map(|_| self.value()).collect();
        let l = (0..rank).map(|_| self.value()).collect();
        CharacterU0::new(k, l).expect("sampled values are nonzero")
    }

    /// A draw on ρ̂(α)Λ(K_α) = q_α^t Λ(L_α), solving for Λ(L_{α_j}) with α's j-th coordinate 1.
    pub fn draw_on_hyperplane(
        &mut self,
        alg: &Algebra,
        root: &Weight,
        t: i64,
    ) -> Result<CharacterU0> {
        let n = alg.rank();
        let j = root.coords().iter().position(|&c| c == 1).ok_or_else(|| {
            VermaError::Sampling(format!("root {:?} has no unit coordinate", root.coords()))
        })?;
        let mut lam = self.draw(n);
        lam.lvals[j] = Scalar::one();
        let zero = Weight::zero(n);
        let chi = alg.chi();
        // Λ(L_α) is linear in the unknown Λ(L_{α_j})
        let rest = lam.eval(&zero, root);
        let need =
            chi.rho_hat(root) * lam.eval(root, &zero) * (chi.q_of(root).pow(t) * rest).inv()?;
        lam.lvals[j] = need;
        debug_assert!(hyperplane_value(alg, &lam, root, t).is_zero());
        Ok(lam)
    }

    /// Draws on the (α, t) hyperplane avoiding every other factor of degree β.
    pub fn draw_generic_on(
        &mut self,
        alg: &Algebra,
        rsd: &RootSystemData,
        beta: &Weight,
        root: usize,
        t: i64,
    ) -> Result<CharacterU0> {
        let own = factor_poly(alg, &rsd.positive_roots[root], t);
        let others: Vec<U0Elem> = shapovalov_factors(alg, rsd, beta)
            .into_iter()
            .map(|f| f.poly)
            .filter(|p| *p != own)
            .collect();
        for _ in 0..256 {
            let lam = self.draw_on_hyperplane(alg, &rsd.positive_roots[root], t)?;
            if others.iter().all(|p| !p.eval(&lam).is_zero()) {
                return Ok(lam);
            }
        }
        Err(VermaError::Sampling(
            "no generic point found in 256 draws".into(),
        ))
    }

    /// Draws avoiding every factor of degree β.
    pub fn draw_generic(
        &mut self,
        alg: &Algebra,
        rsd: &RootSystemData,
        beta: &Weight,
    ) -> Result<CharacterU0> {
        let factors: Vec<U0Elem> = shapovalov_factors(alg, rsd, beta)
            .into_iter()
            .map(|f| f.poly)
            .collect();
        for _ in 0..256 {
            let lam = self.draw(alg.rank());
            if factors.iter().all(|p| !p.eval(&lam).is_zero()) {
                return Ok(lam);
            }
        }
        Err(VermaError::Sampling(
            "no generic point found in 256 draws".into(),
        ))
    }
}

#[derive(Clone, Debug)]
pub struct RankBoundReport {
    pub degree: Weight,
    pub m: usize,
    pub r: usize,
    pub ranks: Vec<usize>,
    /// Indices of samples where rank = m − r and the radical equals U⁻_{−β+tα}·v.
    pub radical_checked: Vec<usize>,
}

impl RankBoundReport {
    pub fn bound_holds(&self) -> bool {
        self.ranks.iter().all(|&k| k <= self.m - self.r)
    }

    pub fn equality_reached(&self) -> bool {
        self.ranks.contains(&(self.m - self.r))
    }
}

/// Nonzero v ∈ M(Λ)_{−γ} with E_j v = 0 for all j, if any.
pub fn highest_weight_vectors(
    alg: &Algebra,
    lambda: &CharacterU0,
    gamma: &Weight,
) -> Result<Vec<VermaVector>> {
    let n = alg.dim(gamma)?;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut cols: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); alg.rank()];
    for y in 0..n {
        let v = VermaVector::from_coords(gamma, &unit(n, y));
        for (j, col) in cols.iter_mut().enumerate() {
            let aj = Weight::simple(alg.rank(), j);
            let lower = *gamma - aj;
            let w = act(alg, lambda, &alg.e(j), &v)?;
            col.push(if lower.is_nonneg() {
                w.coords(alg, &lower)?
            } else {
                vec![]
            });
        }
    }
    for col in &cols {
        let len = col.first().map_or(0, Vec::len);
        for r in 0..len {
            rows.push(col.iter().map(|c| c[r].clone()).collect());
        }
    }
    let ker = if rows.is_empty() {
        (0..n).map(|y| unit(n, y)).collect()
    } else {
        Matrix::from_rows(rows, n).nullspace()
    };
    Ok(ker
        .iter()
        .map(|c| VermaVector::from_coords(gamma, c))
        .collect())
}

/// rank Λ(𝒮_β) ≤ m − r on every sample; where equality holds, N(Λ)_{−β} = U⁻_{−β+tα}·v.
pub fn rank_bound_check(
    alg: &Algebra,
    rsd: &RootSystemData,
    beta: &Weight,
    root: usize,
    t: u32,
    samples: &[CharacterU0],
) -> Result<RankBoundReport> {
    let alpha = rsd.positive_roots[root];
    let r = root_multisets_filtered(rsd, alg.chi(), beta, Some((root, t))).len();
    if r == 0 {
        return Err(violated(
            "r ≥ 1",
            format!(
                "no multiset of {:?} uses {:?} at least {t} times",
                beta.coords(),
                alpha.coords()
            ),
        ));
    }
    let s = shapovalov_matrix(alg, beta)?;
    let m = s.size();
    let mut report = RankBoundReport {
        degree: *beta,
        m,
        r,
        ranks: vec![],
        radical_checked: vec![],
    };
    for (k, lam) in samples.iter().enumerate() {
        if !hyperplane_value(alg, lam, &alpha, t as i64).is_zero() {
            return Err(violated("Λ on the hyperplane", format!("sample {k}")));
        }
        let rank = s.evaluate(lam).rank();
        report.ranks.push(rank);
        if rank == m - r {
            let tal = alpha * t as i32;
            let hw = highest_weight_vectors(alg, lam, &tal)?;
            let Some(v) = hw.first() else { continue };
            let span = orbit_span(alg, lam, v, &(*beta - tal))?;
            let radical = verma_radical(alg, lam, beta)?;
            let mut rad = EchelonBasis::new();
            for w in &radical {
                rad.insert(&w.coords(alg, beta)?);
            }
            let equal = span.len() == r && rad.len() == r && {
                let mut ok = true;
                for w in &radical {
                    ok &= span.contains(&w.coords(alg, beta)?);
                }
                ok
            };
            if !equal {
                return Err(VermaError::VerificationFailed {
                    lhs: format!("dim U⁻·v = {}", span.len()),
                    rhs: format!("dim N(Λ) = {}, r = {r}", rad.len()),
                });
            }
            report.radical_checked.push(k);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests;
