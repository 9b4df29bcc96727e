use super::{Algebra, AlgebraError, BasisId, Monomial, UElement};
use crate::groupoid::{cartan_entry, reflection_images, RootSystemData};
use crate::lattice::{Bicharacter, Weight, KL};
use crate::scalars::{qbinom, qfact, qshift_fact, Scalar};
use std::collections::HashMap;

/// Linear action on (λ, μ): K_λL_μ ↦ K_{λ·kk + μ·lk} L_{λ·kl + μ·ll}.
#[derive(Clone, Debug)]
pub struct KlMap {
    pub kk: Vec<Weight>,
    pub lk: Vec<Weight>,
    pub kl: Vec<Weight>,
    pub ll: Vec<Weight>,
}

impl KlMap {
    fn diagonal(k: Vec<Weight>, l: Vec<Weight>) -> Self {
        let z = vec![Weight::zero(k.len()); k.len()];
        KlMap {
            kk: k,
            lk: z.clone(),
            kl: z,
            ll: l,
        }
    }

    pub fn linear(images: &[Weight]) -> Self {
        Self::diagonal(images.to_vec(), images.to_vec())
    }

    pub fn negate(rank: usize) -> Self {
        let neg: Vec<Weight> = (0..rank).map(|j| -Weight::simple(rank, j)).collect();
        Self::diagonal(neg.clone(), neg)
    }

    pub fn swap(rank: usize) -> Self {
        let id: Vec<Weight> = (0..rank).map(|j| Weight::simple(rank, j)).collect();
        let z = vec![Weight::zero(rank); rank];
        KlMap {
            kk: z.clone(),
            lk: id.clone(),
            kl: id,
            ll: z,
        }
    }

    pub fn apply(&self, g: &KL) -> KL {
        KL::new(
            g.k.apply(&self.kk) + g.l.apply(&self.lk),
            g.k.apply(&self.kl) + g.l.apply(&self.ll),
        )
    }
}

/// Images of the generators under an algebra (anti)homomorphism.
#[derive(Clone, Debug)]
pub struct GeneratorImages {
    pub e: Vec<UElement>,
    pub f: Vec<UElement>,
    pub kl: KlMap,
    pub anti: bool,
}

impl Algebra {
    /// Applies the (anti)homomorphism `source → self` determined by `images`.
    pub fn apply_hom(
        &self,
        source: &Algebra,
        images: &GeneratorImages,
        a: &UElement,
    ) -> Result<UElement, AlgebraError> {
        let mut memo: HashMap<(bool, BasisId), UElement> = HashMap::new();
        let mut word_image = |is_e: bool, id: &BasisId| -> Result<UElement, AlgebraError> {
            if let Some(v) = memo.get(&(is_e, *id)) {
                return Ok(v.clone());
            }
            let w = if is_e {
                source.e_word_of(id)?
            } else {
                source.f_word_of(id)?
            };
            let mut acc = self.one();
            for &i in &w {
                let g = if is_e {
                    &images.e[i as usize]
                } else {
                    &images.f[i as usize]
                };
                acc = if images.anti {
                    self.multiply(g, &acc)?
                } else {
                    self.multiply(&acc, g)?
                };
            }
            memo.insert((is_e, *id), acc.clone());
            Ok(acc)
        };
        let mut out = UElement::zero();
        for (m, c) in a.terms() {
            let y = word_image(false, &m.f)?;
            let x = word_image(true, &m.e)?;
            let g = UElement::group_like(images.kl.apply(&m.kl));
            let t = if images.anti {
                self.product(&[x, g, y])?
            } else {
                self.product(&[y, g, x])?
            };
            out = out.add(&t.scale(c));
        }
        Ok(out)
    }

    fn f_l(&self, i: usize, sign: i32) -> UElement {
        let r = self.rank();
        UElement::monomial(
            Monomial::new(
                BasisId::new(Weight::simple(r, i), 0),
                KL::l_only(Weight::simple(r, i) * sign),
                BasisId::empty(r),
            ),
            Scalar::one(),
        )
    }

    fn k_e(&self, i: usize, sign: i32) -> UElement {
        let r = self.rank();
        UElement::monomial(
            Monomial::new(
                BasisId::empty(r),
                KL::k_only(Weight::simple(r, i) * sign),
                BasisId::new(Weight::simple(r, i), 0),
            ),
            Scalar::one(),
        )
    }

    /// S on U⁻U⁰: S(F_i) = −F_iL_{−α_i}, S(K_λL_μ) = K_{−λ}L_{−μ}, antimultiplicative.
    pub fn antipode_minus(&self, y: &UElement) -> Result<UElement, AlgebraError> {
        if !y.in_minus_part() {
            return Err(AlgebraError::NotInMinusPart);
        }
        let n = self.rank();
        let images = GeneratorImages {
            e: vec![UElement::zero(); n],
            f: (0..n).map(|i| self.f_l(i, -1).neg()).collect(),
            kl: KlMap::negate(n),
            anti: true,
        };
        self.apply_hom(self, &images, y)
    }

    pub fn omega_images(&self) -> GeneratorImages {
        let n = self.rank();
        GeneratorImages {
            e: (0..n).map(|i| self.f_l(i, -1)).collect(),
            f: (0..n).map(|i| self.k_e(i, -1)).collect(),
            kl: KlMap::negate(n),
            anti: false,
        }
    }

    /// Ω: K_λ ↦ K_{−λ}, L_λ ↦ L_{−λ}, E_i ↦ F_iL_{−α_i}, F_i ↦ K_{−α_i}E_i.
    pub fn omega(&self, a: &UElement) -> Result<UElement, AlgebraError> {
        self.apply_hom(self, &self.omega_images(), a)
    }

    /// Ξ: U(χ^op) → U(χ), K_λ ↦ L_λ, L_λ ↦ K_λ, E_i ↦ F_i, F_i ↦ E_i.
    pub fn xi(&self, op: &Algebra, a: &UElement) -> Result<UElement, AlgebraError> {
        let n = self.rank();
        let images = GeneratorImages {
            e: (0..n).map(|i| self.f(i)).collect(),
            f: (0..n).map(|i| self.e(i)).collect(),
            kl: KlMap::swap(n),
            anti: false,
        };
        self.apply_hom(op, &images, a)
    }
}

/// T_i: U(τ_i χ) → U(χ), with τ_i χ read in the reflected basis.
#[derive(Clone, Debug)]
pub struct LusztigMap {
    pub index: usize,
    pub source: Bicharacter,
    pub target: Bicharacter,
    /// Images s_i(α_j) of the source simple roots in target coordinates.
    pub basis_map: Vec<Weight>,
    pub images: GeneratorImages,
}

/// Builds T_i with generator images computed in `target`.
pub fn lusztig_map(target: &Algebra, i: usize) -> Result<LusztigMap, AlgebraError> {
    let chi = target.chi();
    let n = chi.rank();
    if i >= n {
        return Err(AlgebraError::BadLetter(i));
    }
    let cap = 64;
    let row: Vec<i32> = (0..n)
        .map(|j| cartan_entry(chi, i, j, cap))
        .collect::<Result<_, _>>()
        .map_err(AlgebraError::from)?;
    let basis_map = reflection_images(n, i, &row);
    let qii = chi.q(i, i).clone();
    let mut e = Vec::with_capacity(n);
    let mut f = Vec::with_capacity(n);
    for j in 0..n {
        if j == i {
            e.push(target.f_l(i, -1));
            f.push(target.k_e(i, -1));
            continue;
        }
        let nij = row[j] as u64;
        let (qij, qji) = (chi.q(i, j).clone(), chi.q(j, i).clone());
        let denom = qfact(nij, &qii) * qshift_fact(nij, &qii, &(&qij * &qji));
        let denom_inv = denom.inv().map_err(|_| {
            AlgebraError::Lusztig(format!("vanishing normalization for j = {}", j + 1))
        })?;
        let mut ej = UElement::zero();
        let mut fj = UElement::zero();
        for k in 0..=nij {
            let tri = qii.pow((k * k.saturating_sub(1) / 2) as i64) * qbinom(nij, k as i64, &qii);
            let word: Vec<u8> = std::iter::repeat(i as u8)
                .take((nij - k) as usize)
                .chain(std::iter::once(j as u8))
                .chain(std::iter::repeat(i as u8).take(k as usize))
                .collect();
            let ce = (-&qij).pow(k as i64) * &tri;
            let cf = (-&qji).pow(k as i64) * &tri * &denom_inv;
            ej = ej.add(&target.e_word(&word)?.scale(&ce));
            fj = fj.add(&target.f_word(&word)?.scale(&cf));
        }
        e.push(ej);
        f.push(fj);
    }
    Ok(LusztigMap {
        index: i,
        source: chi.pullback(&basis_map),
        target: chi.clone(),
        images: GeneratorImages {
            e,
            f,
            kl: KlMap::linear(&basis_map),
            anti: false,
        },
        basis_map,
    })
}

impl LusztigMap {
    pub fn apply(
        &self,
        source: &Algebra,
        target: &Algebra,
        a: &UElement,
    ) -> Result<UElement, AlgebraError> {
        if source.chi() != &self.source || target.chi() != &self.target {
            return Err(AlgebraError::Lusztig(
                "algebras do not match the map".into(),
            ));
        }
        target.apply_hom(source, &self.images, a)
    }
}

/// Ė_t and Ḟ_t along the longest word, expressed in the starting algebra.
#[derive(Clone, Debug)]
pub struct RootVectors {
    pub degrees: Vec<Weight>,
    pub e: Vec<UElement>,
    pub f: Vec<UElement>,
}

/// Composes T_{f(1)} ∘ ⋯ ∘ T_{f(t−1)} on E_{f(t)} and F_{f(t)}.
pub fn root_vectors(alg: &Algebra, rsd: &RootSystemData) -> Result<RootVectors, AlgebraError> {
    if rsd.chi != *alg.chi() {
        return Err(AlgebraError::Lusztig(
            "root data belongs to another bicharacter".into(),
        ));
    }
    let theta = rsd.theta;
    let chain: Vec<Algebra> = (1..theta.max(1))
        .map(|s| Algebra::with_roots(rsd.step_bichars[s].clone(), None, alg.height_cap()))
        .collect();
    let at = |s: usize| -> &Algebra {
        if s == 0 {
            alg
        } else {
            &chain[s - 1]
        }
    };
    let maps: Vec<LusztigMap> = (1..theta.max(1))
        .map(|s| lusztig_map(at(s - 1), rsd.longest_word[s - 1]))
        .collect::<Result<_, _>>()?;
    let mut out = RootVectors {
        degrees: rsd.positive_roots.clone(),
        e: vec![],
        f: vec![],
    };
    for t in 1..=theta {
        let letter = rsd.longest_word[t - 1];
        let mut e = at(t - 1).e(letter);
        let mut f = at(t - 1).f(letter);
        for s in (1..t).rev() {
            e = maps[s - 1].apply(at(s), at(s - 1), &e)?;
            f = maps[s - 1].apply(at(s), at(s - 1), &f)?;
        }
        out.e.push(e);
        out.f.push(f);
    }
    Ok(out)
}
