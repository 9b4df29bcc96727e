//! Elements of U⁰: Laurent polynomials in the 2n commuting variables K_{α_i}, L_{α_i}.

use crate::lattice::{CharacterU0, Weight, KL};
use crate::scalars::Scalar;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Default, Hash, PartialOrd, Ord)]
pub struct U0Elem {
    terms: BTreeMap<KL, Scalar>,
}

impl fmt::Debug for U0Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(kl, c)| format!("({c}){kl:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl U0Elem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(KL::one(rank), Scalar::one())
    }

    pub fn constant(rank: usize, c: Scalar) -> Self {
        Self::monomial(KL::one(rank), c)
    }

    pub fn monomial(kl: KL, c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(kl, c);
        e
    }

    /// K_λ L_μ with coefficient 1.
    pub fn kl(k: Weight, l: Weight) -> Self {
        Self::monomial(KL::new(k, l), Scalar::one())
    }

    pub fn add_term(&mut self, kl: KL, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&kl) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&kl);
                }
            }
            None => {
                self.terms.insert(kl, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&KL, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, kl: &KL) -> Scalar {
        self.terms.get(kl).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The scalar c when the element is c·K₀L₀.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (kl, c) = self.terms.iter().next().unwrap();
                kl.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add(&self, o: &U0Elem) -> U0Elem {
        let mut r = self.clone();
        for (kl, c) in &o.terms {
            r.add_term(*kl, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &U0Elem) -> U0Elem {
        let mut r = self.clone();
        for (kl, c) in &o.terms {
            r.add_term(*kl, -c);
        }
        r
    }

    pub fn scale(&self, s: &Scalar) -> U0Elem {
        if s.is_zero() {
            return U0Elem::zero();
        }
        U0Elem {
            terms: self.terms.iter().map(|(kl, c)| (*kl, c * s)).collect(),
        }
    }

    pub fn neg(&self) -> U0Elem {
        U0Elem {
            terms: self.terms.iter().map(|(kl, c)| (*kl, -c)).collect(),
        }
    }

    pub fn mul(&self, o: &U0Elem) -> U0Elem {
        let mut r = U0Elem::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                r.add_term(*a + *b, x * y);
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> U0Elem {
        let rank = self.terms.keys().next().map(|k| k.k.rank()).unwrap_or(1);
        (0..e).fold(U0Elem::one(rank), |acc, _| acc.mul(self))
    }

    /// Multiplies by the monomial K_λ L_μ.
    pub fn shift(&self, by: KL) -> U0Elem {
        U0Elem {
            terms: self
                .terms
                .iter()
                .map(|(kl, c)| (*kl + by, c.clone()))
                .collect(),
        }
    }

    /// Σ f(λ,μ)·c·K_λL_μ
    pub fn map_diag(&self, f: impl Fn(&KL) -> Scalar) -> U0Elem {
        let mut r = U0Elem::zero();
        for (kl, c) in &self.terms {
            r.add_term(*kl, c * &f(kl));
        }
        r
    }

    /// Relabels monomials by a map on (λ, μ).
    pub fn map_support(&self, f: impl Fn(&KL) -> KL) -> U0Elem {
        let mut r = U0Elem::zero();
        for (kl, c) in &self.terms {
            r.add_term(f(kl), c.clone());
        }
        r
    }

    pub fn eval(&self, chr: &CharacterU0) -> Scalar {
        self.terms.iter().map(|(kl, c)| c * &chr.eval_kl(kl)).sum()
    }

    pub fn support(&self) -> Vec<KL> {
        self.terms.keys().copied().collect()
    }

    /// Componentwise minimal (λ, μ) over the support.
    pub fn min_shift(&self) -> Option<KL> {
        let mut it = self.terms.keys();
        let first = *it.next()?;
        Some(it.fold(first, |acc, kl| {
            KL::new(acc.k.meet(&kl.k), acc.l.meet(&kl.l))
        }))
    }

    /// Total degree in the 2n variables after clearing the minimal shift.
    pub fn degp(&self) -> u32 {
        let Some(m) = self.min_shift() else { return 0 };
        self.terms
            .keys()
            .map(|kl| ((kl.k - m.k).height() + (kl.l - m.l).height()) as u32)
            .max()
            .unwrap_or(0)
    }

    /// Exact quotient in the Laurent ring, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &U0Elem) -> Option<U0Elem> {
        assert!(!d.is_zero(), "division by the zero Laurent polynomial");
        if self.is_zero() {
            return Some(U0Elem::zero());
        }
        let sn = self.min_shift().unwrap();
        let sd = d.min_shift().unwrap();
        let neg = |kl: KL| KL::new(-kl.k, -kl.l);
        let mut rem = self.shift(neg(sn));
        let dd = d.shift(neg(sd));
        let (dlt, dlc) = dd
            .terms
            .iter()
            .next_back()
            .map(|(k, c)| (*k, c.clone()))
            .unwrap();
        let dlc_inv = dlc.inv().ok()?;
        let mut quot = U0Elem::zero();
        while let Some((lt, lc)) = rem.terms.iter().next_back().map(|(k, c)| (*k, c.clone())) {
            let diff = KL::new(lt.k - dlt.k, lt.l - dlt.l);
            if !diff.k.is_nonneg() || !diff.l.is_nonneg() {
                return None;
            }
            let c = &lc * &dlc_inv;
            rem = rem.sub(&dd.shift(diff).scale(&c));
            quot.add_term(diff, c);
        }
        Some(quot.shift(KL::new(sn.k - sd.k, sn.l - sd.l)))
    }
}
