//! Dense univariate polynomials with rational coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial `c[0] + c[1] x + ...` with no trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    c: Vec<BigRational>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        Self::from_coeffs(v)
    }

    pub fn x() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn from_coeffs(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        QPoly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::from_coeffs(
            c.iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.c.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigRational> {
        self.c.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|v| !v.is_zero())
    }

    /// True when exactly one coefficient is nonzero.
    pub fn is_monomial(&self) -> bool {
        self.c.iter().filter(|v| !v.is_zero()).count() == 1
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        QPoly {
            c: self.c.iter().map(|v| v * s).collect(),
        }
    }

    /// Divides by `x^k`; the caller guarantees `k <= valuation`.
    pub fn shift_down(&self, k: usize) -> Self {
        QPoly {
            c: self.c[k.min(self.c.len())..].to_vec(),
        }
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigRational::zero(); k];
        c.extend(self.c.iter().cloned());
        QPoly { c }
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let dd = d.degree().expect("polynomial division by zero");
        let lead_inv = d.c[dd].recip();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = &r[k + dd] * &lead_inv;
            if coef.is_zero() {
                continue;
            }
            for (j, dc) in d.c.iter().enumerate() {
                if !dc.is_zero() {
                    r[k + j] = &r[k + j] - &coef * dc;
                }
            }
            q[k] = coef;
        }
        r.truncate(dd);
        (QPoly::from_coeffs(q), QPoly::from_coeffs(r))
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
        match (a.degree(), b.degree()) {
            (None, _) => b.monic(),
            (_, None) => a.monic(),
            (Some(0), _) | (_, Some(0)) => QPoly::one(),
            _ => super::modgcd::gcd(a, b),
        }
    }

    /// Monic gcd by the Euclidean algorithm over ℚ.
    pub fn gcd_euclid(a: &QPoly, b: &QPoly) -> QPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Inverse of `self` modulo `m`, if it exists.
    pub fn inverse_mod(&self, m: &QPoly) -> Option<QPoly> {
        let (mut r0, mut r1) = (m.clone(), self.divrem(m).1);
        let (mut s0, mut s1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = &s0 - &(&q * &s1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let inv = r0.c[0].recip();
        Some(s0.scale(&inv).divrem(m).1)
    }

    /// Integer coefficients and a common denominator d with self = (Σ c_k x^k)/d.
    fn integral(&self) -> (Vec<BigInt>, BigInt) {
        let d = self.c.iter().fold(BigInt::one(), |acc, c| {
            if c.denom().is_one() {
                acc
            } else {
                acc.lcm(c.denom())
            }
        });
        let ints = if d.is_one() {
            self.c.iter().map(|c| c.numer().clone()).collect()
        } else {
            self.c
                .iter()
                .map(|c| c.numer() * (&d / c.denom()))
                .collect()
        };
        (ints, d)
    }

    pub fn pow(&self, e: u32) -> QPoly {
        let (mut base, mut acc, mut e) = (self.clone(), QPoly::one(), e);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, o: &QPoly) -> QPoly {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for k in 0..n {
            c.push(match (self.c.get(k), o.c.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        QPoly::from_coeffs(c)
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, o: &QPoly) -> QPoly {
        self + &(-o)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            c: self.c.iter().map(|v| -v).collect(),
        }
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        // integer convolution over a common denominator, one reduction per coefficient
        let (ia, da) = self.integral();
        let (ib, db) = o.integral();
        let mut c = vec![BigInt::zero(); ia.len() + ib.len() - 1];
        for (i, a) in ia.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in ib.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        let d = da * db;
        QPoly::from_coeffs(
            c.into_iter()
                .map(|x| BigRational::new(x, d.clone()))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_recovers_dividend() {
        let a = QPoly::from_ints(&[1, 0, 3, 2, -5]);
        let b = QPoly::from_ints(&[2, 1, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn modular_gcd_agrees_with_euclid() {
        let f = QPoly::from_coeffs(vec![
            BigRational::new(3.into(), 7.into()),
            BigRational::from_integer((-2).into()),
            BigRational::one(),
        ]);
        let cases = [
            (
                &f * &QPoly::from_ints(&[3, 0, 1, 4]),
                &(&f * &f) * &QPoly::from_ints(&[-2, 5]),
            ),
            (
                QPoly::from_ints(&[1, 2, 3, 4, 5]),
                QPoly::from_ints(&[5, 4, 3, 2, 1]),
            ),
            (
                &QPoly::from_ints(&[0, 0, 1]) * &f,
                QPoly::from_ints(&[0, 1, 1]),
            ),
            (
                QPoly::from_ints(&[-1, 0, 0, 0, 0, 0, 1]),
                QPoly::from_ints(&[-1, 0, 0, 0, 1]),
            ),
            (
                QPoly::from_ints(&[123_456_789, 987_654_321]).pow(6),
                QPoly::from_ints(&[123_456_789, 987_654_321]).pow(4),
            ),
        ];
        for (a, b) in cases {
            assert_eq!(QPoly::gcd(&a, &b), QPoly::gcd_euclid(&a, &b));
        }
    }

    #[test]
    fn gcd_of_shared_factor() {
        let f = QPoly::from_ints(&[1, 1]);
        let a = &f * &QPoly::from_ints(&[3, 0, 1]);
        let b = &f * &QPoly::from_ints(&[-2, 5]);
        assert_eq!(QPoly::gcd(&a, &b), f);
    }

    #[test]
    fn inverse_mod_cyclotomic() {
        let m = QPoly::from_ints(&[1, 1, 1]);
        let a = QPoly::from_ints(&[1, 1]);
        let inv = a.inverse_mod(&m).unwrap();
        assert!((&a * &inv).divrem(&m).1.is_one());
    }
}
