//! The weight lattice ℤⁿ, bicharacters, skew parameters η, ρ̂ and characters of U⁰.

use crate::scalars::{Field, Scalar, ScalarError};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};
use thiserror::Error;

/// Largest supported rank.
pub const MAX_RANK: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("rank {0} is outside 1..={MAX_RANK}")]
    UnsupportedRank(usize),
    #[error("matrix is not square")]
    NotSquare,
    #[error("entry ({0},{1}) is zero")]
    ZeroEntry(usize, usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// λ = Σ λ_i α_i in coordinates of the fixed basis Π.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    rank: u8,
    c: [i32; MAX_RANK],
}

impl Weight {
    pub fn zero(rank: usize) -> Self {
        assert!(rank <= MAX_RANK, "rank too large");
        Weight {
            rank: rank as u8,
            c: [0; MAX_RANK],
        }
    }

    /// The simple root α_i.
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut w = Self::zero(rank);
        w.c[i] = 1;
        w
    }

    pub fn from_coords(c: &[i32]) -> Self {
        let mut w = Self::zero(c.len());
        w.c[..c.len()].copy_from_slice(c);
        w
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn coords(&self) -> &[i32] {
        &self.c[..self.rank as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn is_nonneg(&self) -> bool {
        self.coords().iter().all(|&x| x >= 0)
    }

    pub fn is_positive(&self) -> bool {
        self.is_nonneg() && !self.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        (-*self).is_positive()
    }

    /// Σ coordinates (the height when nonnegative).
    pub fn height(&self) -> i64 {
        self.coords().iter().map(|&x| x as i64).sum()
    }

    /// All nonnegative weights of the given height, in lexicographically decreasing order.
    pub fn of_height(rank: usize, h: u32) -> Vec<Weight> {
        fn rec(rank: usize, i: usize, left: u32, cur: &mut Weight, out: &mut Vec<Weight>) {
            if i + 1 == rank {
                cur.c[i] = left as i32;
                out.push(*cur);
                return;
            }
            for v in (0..=left).rev() {
                cur.c[i] = v as i32;
                rec(rank, i + 1, left - v, cur, out);
            }
        }
        let mut out = Vec::new();
        let mut cur = Weight::zero(rank);
        rec(rank, 0, h, &mut cur, &mut out);
        out
    }

    /// Every weight with all |coords| ≤ r.
    pub fn box_around(rank: usize, r: i32) -> Vec<Weight> {
        let mut out = vec![Weight::zero(rank)];
        for i in 0..rank {
            let mut next = Vec::new();
            for w in &out {
                for v in -r..=r {
                    let mut x = *w;
                    x.c[i] = v;
                    next.push(x);
                }
            }
            out = next;
        }
        out
    }

    /// Componentwise minimum.
    pub fn meet(&self, o: &Weight) -> Weight {
        let mut w = *self;
        for i in 0..MAX_RANK {
            w.c[i] = w.c[i].min(o.c[i]);
        }
        w
    }

    /// The linear image under an integer matrix given by columns: α_j ↦ cols[j].
    pub fn apply(&self, cols: &[Weight]) -> Weight {
        let mut w = Weight::zero(self.rank());
        for (j, &x) in self.coords().iter().enumerate() {
            if x != 0 {
                w = w + cols[j] * x;
            }
        }
        w
    }
}

impl Index<usize> for Weight {
    type Output = i32;
    fn index(&self, i: usize) -> &i32 {
        &self.coords()[i]
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        debug_assert_eq!(self.rank, o.rank);
        let mut w = self;
        for i in 0..MAX_RANK {
            w.c[i] += o.c[i];
        }
        w
    }
}

impl AddAssign for Weight {
    fn add_assign(&mut self, o: Weight) {
        *self = *self + o;
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        self + (-o)
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        let mut w = self;
        for x in w.c.iter_mut() {
            *x = -*x;
        }
        w
    }
}

impl Mul<i32> for Weight {
    type Output = Weight;
    fn mul(self, k: i32) -> Weight {
        let mut w = self;
        for x in w.c.iter_mut() {
            *x *= k;
        }
        w
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords())
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coords().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<i32>::deserialize(d)?;
        if v.is_empty() || v.len() > MAX_RANK {
            return Err(serde::de::Error::custom("weight rank out of range"));
        }
        Ok(Weight::from_coords(&v))
    }
}

/// The group-like K_λ L_μ, identified with the pair (λ, μ).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KL {
    pub k: Weight,
    pub l: Weight,
}

impl KL {
    pub fn new(k: Weight, l: Weight) -> Self {
        KL { k, l }
    }

    pub fn one(rank: usize) -> Self {
        KL {
            k: Weight::zero(rank),
            l: Weight::zero(rank),
        }
    }

    pub fn k_only(k: Weight) -> Self {
        KL {
            k,
            l: Weight::zero(k.rank()),
        }
    }

    pub fn l_only(l: Weight) -> Self {
        KL {
            k: Weight::zero(l.rank()),
            l,
        }
    }

    pub fn is_one(&self) -> bool {
        self.k.is_zero() && self.l.is_zero()
    }
}

impl Add for KL {
    type Output = KL;
    fn add(self, o: KL) -> KL {
        KL {
            k: self.k + o.k,
            l: self.l + o.l,
        }
    }
}

impl fmt::Debug for KL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K{:?}L{:?}", self.k.coords(), self.l.coords())
    }
}

/// χ given by q_ij = χ(α_i, α_j).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bicharacter {
    field: Field,
    q: Vec<Vec<Scalar>>,
}

impl fmt::Debug for Bicharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.q)
    }
}

impl Bicharacter {
    pub fn new(field: Field, q: Vec<Vec<Scalar>>) -> Result<Self, LatticeError> {
        let n = q.len();
        if n == 0 || n > MAX_RANK {
            return Err(LatticeError::UnsupportedRank(n));
        }
        for (i, row) in q.iter().enumerate() {
            if row.len() != n {
                return Err(LatticeError::NotSquare);
            }
            for (j, v) in row.iter().enumerate() {
                if v.is_zero() {
                    return Err(LatticeError::ZeroEntry(i, j));
                }
                v.check_field(field)?;
            }
        }
        Ok(Bicharacter { field, q })
    }

    pub fn rank(&self) -> usize {
        self.q.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn q(&self, i: usize, j: usize) -> &Scalar {
        &self.q[i][j]
    }

    pub fn matrix(&self) -> &[Vec<Scalar>] {
        &self.q
    }

    /// χ(λ, μ) = ∏ q_ij^{λ_i μ_j}
    pub fn eval(&self, l: &Weight, m: &Weight) -> Scalar {
        debug_assert_eq!(l.rank(), self.rank());
        let mut acc = Scalar::one();
        for (i, &a) in l.coords().iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in m.coords().iter().enumerate() {
                let e = a as i64 * b as i64;
                if e != 0 {
                    acc = &acc * &self.q[i][j].pow(e);
                }
            }
        }
        acc
    }

    /// χ(λ, μ) with rank checks.
    pub fn try_eval(&self, l: &Weight, m: &Weight) -> Result<Scalar, LatticeError> {
        for w in [l, m] {
            if w.rank() != self.rank() {
                return Err(LatticeError::RankMismatch {
                    expected: self.rank(),
                    got: w.rank(),
                });
            }
        }
        Ok(self.eval(l, m))
    }

    /// q_λ = χ(λ, λ)
    pub fn q_of(&self, l: &Weight) -> Scalar {
        self.eval(l, l)
    }

    /// χ^op(λ, μ) = χ(μ, λ)
    pub fn opposite(&self) -> Bicharacter {
        let n = self.rank();
        let q = (0..n)
            .map(|i| (0..n).map(|j| self.q[j][i].clone()).collect())
            .collect();
        Bicharacter {
            field: self.field,
            q,
        }
    }

    /// The bicharacter (λ, μ) ↦ χ(sλ, sμ) for a linear map given by images of the α_j.
    pub fn pullback(&self, images: &[Weight]) -> Bicharacter {
        let n = self.rank();
        let q = (0..n)
            .map(|i| (0..n).map(|j| self.eval(&images[i], &images[j])).collect())
            .collect();
        Bicharacter {
            field: self.field,
            q,
        }
    }

    /// ρ̂(β) = ∏ q_jj^{β_j}
    pub fn rho_hat(&self, b: &Weight) -> Scalar {
        let mut acc = Scalar::one();
        for (j, &x) in b.coords().iter().enumerate() {
            if x != 0 {
                acc = &acc * &self.q[j][j].pow(x as i64);
            }
        }
        acc
    }
}

/// A homomorphism η: ℤⁿ → K^×, stored by its values on the α_i.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EtaHom {
    pub values: Vec<Scalar>,
}

impl EtaHom {
    pub fn new(values: Vec<Scalar>) -> Result<Self, LatticeError> {
        if let Some(i) = values.iter().position(|v| v.is_zero()) {
            return Err(LatticeError::ZeroEntry(i, 0));
        }
        Ok(EtaHom { values })
    }

    pub fn trivial(rank: usize) -> Self {
        EtaHom {
            values: vec![Scalar::one(); rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }

    pub fn eval(&self, l: &Weight) -> Scalar {
        let mut acc = Scalar::one();
        for (v, &x) in self.values.iter().zip(l.coords()) {
            if x != 0 {
                acc = &acc * &v.pow(x as i64);
            }
        }
        acc
    }

    pub fn inverse(&self) -> EtaHom {
        EtaHom {
            values: self
                .values
                .iter()
                .map(|v| v.inv().expect("nonzero"))
                .collect(),
        }
    }

    /// η ∘ s for a linear map given by images of the α_j.
    pub fn pullback(&self, images: &[Weight]) -> EtaHom {
        EtaHom {
            values: images.iter().map(|w| self.eval(w)).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| v.is_one())
    }
}

/// η(β) χ(β, μ) / χ(λ, β)
pub fn eta_shift(eta: &EtaHom, chi: &Bicharacter, l: &Weight, m: &Weight, b: &Weight) -> Scalar {
    eta.eval(b) * chi.eval(b, m) / chi.eval(l, b)
}

/// A character Λ of U⁰, given by Λ(K_{α_i}) and Λ(L_{α_i}).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharacterU0 {
    pub kvals: Vec<Scalar>,
    pub lvals: Vec<Scalar>,
}

impl CharacterU0 {
    pub fn new(kvals: Vec<Scalar>, lvals: Vec<Scalar>) -> Result<Self, LatticeError> {
        if kvals.len() != lvals.len() {
            return Err(LatticeError::RankMismatch {
                expected: kvals.len(),
                got: lvals.len(),
            });
        }
        for (i, v) in kvals.iter().chain(&lvals).enumerate() {
            if v.is_zero() {
                return Err(LatticeError::ZeroEntry(i, 0));
            }
        }
        Ok(CharacterU0 { kvals, lvals })
    }

    pub fn rank(&self) -> usize {
        self.kvals.len()
    }

    /// Λ(K_λ L_μ)
    pub fn eval(&self, l: &Weight, m: &Weight) -> Scalar {
        let mut acc = Scalar::one();
        for (v, &x) in self.kvals.iter().zip(l.coords()) {
            if x != 0 {
                acc = &acc * &v.pow(x as i64);
            }
        }
        for (v, &x) in self.lvals.iter().zip(m.coords()) {
            if x != 0 {
                acc = &acc * &v.pow(x as i64);
            }
        }
        acc
    }

    pub fn eval_kl(&self, kl: &KL) -> Scalar {
        self.eval(&kl.k, &kl.l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Bicharacter {
        let t = Scalar::t_pow;
        Bicharacter::new(
            Field::RationalFunction,
            vec![vec![t(2), t(-1)], vec![t(-1), t(2)]],
        )
        .unwrap()
    }

    #[test]
    fn bichar_examples() {
        let chi = a2();
        let a1 = Weight::simple(2, 0);
        let a2w = Weight::simple(2, 1);
        assert!(chi.eval(&Weight::zero(2), &a1).is_one());
        assert_eq!(chi.eval(&a1, &a2w), Scalar::t_pow(-1));
        assert_eq!(chi.q_of(&(a1 + a2w)), Scalar::t_pow(2));
        assert_eq!(chi.rho_hat(&(a1 + a2w)), Scalar::t_pow(4));
        assert!(chi.rho_hat(&Weight::zero(2)).is_one());
    }

    #[test]
    fn opposite_transposes() {
        let s = |k| Scalar::zeta(5, k);
        let chi = Bicharacter::new(
            Field::Cyclotomic(5),
            vec![vec![s(1), s(2)], vec![s(3), s(4)]],
        )
        .unwrap();
        let op = chi.opposite();
        assert_eq!(op.q(0, 1), &s(3));
        assert_eq!(op.opposite(), chi);
        assert_eq!(a2().opposite(), a2());
    }

    #[test]
    fn eta_shift_examples() {
        let chi = Bicharacter::new(Field::RationalFunction, vec![vec![Scalar::t_pow(1)]]).unwrap();
        let eta = EtaHom::trivial(1);
        let a = Weight::simple(1, 0);
        let z = Weight::zero(1);
        assert_eq!(eta_shift(&eta, &chi, &z, &a, &a), Scalar::t_pow(1));
        assert_eq!(eta_shift(&eta, &chi, &a, &z, &a), Scalar::t_pow(-1));
    }

    #[test]
    fn constructor_validates() {
        assert!(Bicharacter::new(Field::Cyclotomic(3), vec![vec![Scalar::zero()]]).is_err());
        assert!(Bicharacter::new(Field::Cyclotomic(3), vec![vec![Scalar::t_pow(1)]]).is_err());
        assert!(Bicharacter::new(
            Field::Cyclotomic(3),
            vec![vec![Scalar::one(), Scalar::one()]]
        )
        .is_err());
    }

    #[test]
    fn heights_enumerate() {
        let w = Weight::of_height(2, 3);
        assert_eq!(w.len(), 4);
        assert!(w.iter().all(|x| x.height() == 3 && x.is_nonneg()));
        assert_eq!(Weight::box_around(2, 1).len(), 9);
    }
}
