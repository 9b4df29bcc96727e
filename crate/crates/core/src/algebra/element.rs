use crate::lattice::{Weight, KL};
use crate::laurent::U0Elem;
use crate::scalars::Scalar;
use std::collections::BTreeMap;

/// Index of a registered basis word: U⁺_deg (E side) or U⁻_{−deg} (F side).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisId {
    pub deg: Weight,
    pub idx: u32,
}

impl BasisId {
    pub fn empty(rank: usize) -> Self {
        BasisId {
            deg: Weight::zero(rank),
            idx: 0,
        }
    }

    pub fn new(deg: Weight, idx: usize) -> Self {
        BasisId {
            deg,
            idx: idx as u32,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.deg.is_zero()
    }
}

/// F-word · K_λ L_μ · E-word
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub f: BasisId,
    pub kl: KL,
    pub e: BasisId,
}

impl Monomial {
    pub fn new(f: BasisId, kl: KL, e: BasisId) -> Self {
        Monomial { f, kl, e }
    }

    pub fn group_like(kl: KL) -> Self {
        let r = kl.k.rank();
        Monomial {
            f: BasisId::empty(r),
            kl,
            e: BasisId::empty(r),
        }
    }

    /// deg(E-part) − deg(F-part)
    pub fn grade(&self) -> Weight {
        self.e.deg - self.f.deg
    }
}

/// A linear combination of triangular monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UElement {
    terms: BTreeMap<Monomial, Scalar>,
}

impl UElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn group_like(kl: KL) -> Self {
        Self::monomial(Monomial::group_like(kl), Scalar::one())
    }

    pub fn one(rank: usize) -> Self {
        Self::group_like(KL::one(rank))
    }

    pub fn from_u0(x: &U0Elem) -> Self {
        let mut e = Self::zero();
        for (kl, c) in x.terms() {
            e.add_term(Monomial::group_like(*kl), c.clone());
        }
        e
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &UElement) -> UElement {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &UElement) -> UElement {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, -c);
        }
        r
    }

    pub fn scale(&self, s: &Scalar) -> UElement {
        if s.is_zero() {
            return UElement::zero();
        }
        UElement {
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    pub fn neg(&self) -> UElement {
        UElement {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    /// The common grade, if every term has the same one.
    pub fn grade(&self) -> Option<Weight> {
        let mut it = self.terms.keys().map(Monomial::grade);
        let g = it.next()?;
        it.all(|h| h == g).then_some(g)
    }

    /// Sh: keeps the terms with empty E- and F-words.
    pub fn shapovalov_project(&self) -> U0Elem {
        let mut r = U0Elem::zero();
        for (m, c) in &self.terms {
            if m.f.is_empty() && m.e.is_empty() {
                r.add_term(m.kl, c.clone());
            }
        }
        r
    }

    /// Whether no term carries an E-word.
    pub fn in_minus_part(&self) -> bool {
        self.terms.keys().all(|m| m.e.is_empty())
    }
}

/// Sh(a) for the triangular decomposition U = U⁰ ⊕ (U⁻_{<0}U + UU⁺_{>0}).
pub fn shapovalov_project(a: &UElement) -> U0Elem {
    a.shapovalov_project()
}
