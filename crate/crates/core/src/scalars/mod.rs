//! Exact scalars over ℚ(ζ_N) or ℚ(t), and the q-combinatorics built on them.
//!
//! Rational constants are stored backend-free so that `0`, `1`, `-1` and friends
//! mix with either backend. Every other value belongs to exactly one backend;
//! combining values from different backends panics, since inputs are validated
//! for a single backend before any arithmetic happens.

mod cyclo;
mod modgcd;
mod parse;
pub mod poly;
mod qcomb;

pub use parse::{parse_scalar, Variable};
pub use qcomb::{
    discrete_log, kappa, kappa_prime, mul_order, qbinom, qbinom_alt, qfact, qnum, qshift,
    qshift_fact,
};

use cyclo::CycloTable;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use poly::QPoly;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;
use thiserror::Error;

/// The exact field a computation runs in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Field {
    /// ℚ(ζ_N)
    Cyclotomic(u32),
    /// ℚ(t)
    RationalFunction,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Cyclotomic(n) => write!(f, "Q(zeta_{n})"),
            Field::RationalFunction => write!(f, "Q(t)"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("zero input where a nonzero scalar is required")]
    ZeroInput,
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalar {value} does not belong to {field}")]
    BackendMismatch { value: String, field: Field },
    #[error("cannot parse scalar literal {literal:?}: {reason}")]
    Parse { literal: String, reason: String },
}

#[derive(Clone)]
pub struct Scalar(Repr);

#[derive(Clone)]
enum Repr {
    Rational(BigRational),
    Cyclo {
        table: Arc<CycloTable>,
        coeffs: Vec<BigRational>,
    },
    RatFn {
        num: QPoly,
        den: QPoly,
    },
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Repr::Rational(BigRational::zero()))
    }

    pub fn one() -> Self {
        Scalar(Repr::Rational(BigRational::one()))
    }

    pub fn from_int(v: i64) -> Self {
        Scalar(Repr::Rational(rat(v)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Scalar(Repr::Rational(BigRational::new(
            BigInt::from(n),
            BigInt::from(d),
        )))
    }

    pub fn from_rational(v: BigRational) -> Self {
        Scalar(Repr::Rational(v))
    }

    /// ζ_N^k
    pub fn zeta(order: u32, k: i64) -> Self {
        let table = Arc::new(CycloTable::new(order));
        Self::zeta_in(&table, k)
    }

    fn zeta_in(table: &Arc<CycloTable>, k: i64) -> Self {
        let k = k.rem_euclid(table.order as i64) as usize;
        let coeffs = table.powers[k].clone();
        Self::cyclo(table.clone(), coeffs)
    }

    /// t^k in ℚ(t); negative exponents allowed.
    pub fn t_pow(k: i64) -> Self {
        let mono = QPoly::monomial(BigRational::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Self::ratfn(mono, QPoly::one())
        } else {
            Self::ratfn(QPoly::one(), mono)
        }
    }

    /// Builds an element of ℚ(t) from numerator and denominator polynomials.
    pub fn from_polys(num: QPoly, den: QPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::ratfn(num, den))
    }

    /// A generator-power of the given field: ζ_N^k or t^k.
    pub fn generator_pow(field: Field, k: i64) -> Self {
        match field {
            Field::Cyclotomic(n) => Self::zeta(n, k),
            Field::RationalFunction => Self::t_pow(k),
        }
    }

    fn cyclo(table: Arc<CycloTable>, coeffs: Vec<BigRational>) -> Self {
        if coeffs.iter().skip(1).all(|c| c.is_zero()) {
            let c0 = coeffs.into_iter().next().unwrap_or_else(BigRational::zero);
            return Scalar(Repr::Rational(c0));
        }
        Scalar(Repr::Cyclo { table, coeffs })
    }

    /// `num/den` with the two already coprime; only normalizes the leading coefficient.
    fn ratfn_coprime(num: QPoly, den: QPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (mut num, mut den) = (num, den);
        let lead = den.lead().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        if den.is_one() && num.is_constant() {
            return Scalar(Repr::Rational(num.coeff(0)));
        }
        Scalar(Repr::RatFn { num, den })
    }

    fn ratfn(num: QPoly, den: QPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (mut num, mut den) = (num, den);
        let s = num.valuation().unwrap().min(den.valuation().unwrap());
        if s > 0 {
            num = num.shift_down(s);
            den = den.shift_down(s);
        }
        // after clearing powers of t, a monomial side leaves nothing to cancel
        if !num.is_monomial() && !den.is_monomial() {
            let g = QPoly::gcd(&num, &den);
            if !g.is_one() {
                num = num.divrem(&g).0;
                den = den.divrem(&g).0;
            }
        }
        let lead = den.lead().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        if den.is_one() && num.is_constant() {
            return Scalar(Repr::Rational(num.coeff(0)));
        }
        Scalar(Repr::RatFn { num, den })
    }

    /// The backend this value is tied to; `None` for rational constants.
    pub fn field(&self) -> Option<Field> {
        match &self.0 {
            Repr::Rational(_) => None,
            Repr::Cyclo { table, .. } => Some(Field::Cyclotomic(table.order)),
            Repr::RatFn { .. } => Some(Field::RationalFunction),
        }
    }

    /// Checks that the value lives in `field`.
    pub fn check_field(&self, field: Field) -> Result<(), ScalarError> {
        match self.field() {
            None => Ok(()),
            Some(f) if f == field => Ok(()),
            Some(_) => Err(ScalarError::BackendMismatch {
                value: self.to_string(),
                field,
            }),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// Numerator and denominator in ℚ(t); constants give (c, 1).
    pub fn as_ratfn(&self) -> Option<(QPoly, QPoly)> {
        match &self.0 {
            Repr::Rational(r) => Some((QPoly::constant(r.clone()), QPoly::one())),
            Repr::RatFn { num, den } => Some((num.clone(), den.clone())),
            Repr::Cyclo { .. } => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Rational(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.0, Repr::Rational(r) if r.is_one())
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        match &self.0 {
            Repr::Rational(r) => {
                if r.is_zero() {
                    Err(ScalarError::DivisionByZero)
                } else {
                    Ok(Scalar(Repr::Rational(r.recip())))
                }
            }
            Repr::Cyclo { table, coeffs } => {
                let p = QPoly::from_coeffs(coeffs.clone());
                let inv = p
                    .inverse_mod(&table.modulus)
                    .ok_or(ScalarError::DivisionByZero)?;
                let mut c = inv.coeffs().to_vec();
                c.resize(table.phi, BigRational::zero());
                Ok(Self::cyclo(table.clone(), c))
            }
            Repr::RatFn { num, den } => Ok(Self::ratfn(den.clone(), num.clone())),
        }
    }

    /// Integer power; negative exponents invert. Panics on `0^e` with `e < 0`.
    pub fn pow(&self, e: i64) -> Scalar {
        if e < 0 {
            return self.inv().expect("negative power of zero").pow(-e);
        }
        // powers of a reduced fraction stay reduced
        if let Repr::RatFn { num, den } = &self.0 {
            return Self::ratfn_coprime(num.pow(e as u32), den.pow(e as u32));
        }
        let mut base = self.clone();
        let mut acc = Scalar::one();
        let mut e = e as u64;
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

    fn add_impl(&self, o: &Scalar) -> Scalar {
        use Repr::*;
        match (&self.0, &o.0) {
            (Rational(a), Rational(b)) => Scalar(Rational(a + b)),
            (Cyclo { table, coeffs }, Rational(b)) | (Rational(b), Cyclo { table, coeffs }) => {
                let mut c = coeffs.clone();
                c[0] += b;
                Self::cyclo(table.clone(), c)
            }
            (
                Cyclo {
                    table: ta,
                    coeffs: a,
                },
                Cyclo {
                    table: tb,
                    coeffs: b,
                },
            ) => {
                assert_eq!(ta.order, tb.order, "mixed cyclotomic orders");
                Self::cyclo(ta.clone(), a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (RatFn { num, den }, Rational(b)) | (Rational(b), RatFn { num, den }) => {
                Scalar(RatFn {
                    num: num + &den.scale(b),
                    den: den.clone(),
                })
                .renorm_const()
            }
            (RatFn { num: na, den: da }, RatFn { num: nb, den: db }) => {
                if da == db {
                    return Self::ratfn(na + nb, da.clone());
                }
                // only factors of gcd(da, db) can cancel against the new numerator
                let g = QPoly::gcd(da, db);
                if g.is_one() {
                    return Self::ratfn_coprime(&(na * db) + &(nb * da), da * db);
                }
                let (da_g, db_g) = (da.divrem(&g).0, db.divrem(&g).0);
                let num = &(na * &db_g) + &(nb * &da_g);
                let h = QPoly::gcd(&num, &g);
                if h.is_one() {
                    Self::ratfn_coprime(num, da * &db_g)
                } else {
                    Self::ratfn_coprime(num.divrem(&h).0, (da * &db_g).divrem(&h).0)
                }
            }
            _ => panic!("mixed scalar backends: {self} and {o}"),
        }
    }

    fn renorm_const(self) -> Scalar {
        match &self.0 {
            Repr::RatFn { num, den } if den.is_one() && num.is_constant() => {
                Scalar(Repr::Rational(num.coeff(0)))
            }
            _ => self,
        }
    }

    fn mul_impl(&self, o: &Scalar) -> Scalar {
        use Repr::*;
        match (&self.0, &o.0) {
            (Rational(a), Rational(b)) => Scalar(Rational(a * b)),
            (Cyclo { table, coeffs }, Rational(b)) | (Rational(b), Cyclo { table, coeffs }) => {
                if b.is_zero() {
                    return Scalar::zero();
                }
                Scalar(Cyclo {
                    table: table.clone(),
                    coeffs: coeffs.iter().map(|c| c * b).collect(),
                })
            }
            (
                Cyclo {
                    table: ta,
                    coeffs: a,
                },
                Cyclo {
                    table: tb,
                    coeffs: b,
                },
            ) => {
                assert_eq!(ta.order, tb.order, "mixed cyclotomic orders");
                let mut raw = vec![BigRational::zero(); a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        if !y.is_zero() {
                            raw[i + j] += x * y;
                        }
                    }
                }
                Self::cyclo(ta.clone(), ta.reduce(&raw))
            }
            (RatFn { num, den }, Rational(b)) | (Rational(b), RatFn { num, den }) => {
                if b.is_zero() {
                    return Scalar::zero();
                }
                Scalar(RatFn {
                    num: num.scale(b),
                    den: den.clone(),
                })
            }
            (RatFn { num: na, den: da }, RatFn { num: nb, den: db }) => {
                // cancel across before multiplying; both inputs are reduced
                let (g1, g2) = (QPoly::gcd(na, db), QPoly::gcd(nb, da));
                let cut = |p: &QPoly, g: &QPoly| if g.is_one() { p.clone() } else { p.divrem(g).0 };
                Self::ratfn_coprime(&cut(na, &g1) * &cut(nb, &g2), &cut(da, &g2) * &cut(db, &g1))
            }
            _ => panic!("mixed scalar backends: {self} and {o}"),
        }
    }

    fn variant_rank(&self) -> u8 {
        match &self.0 {
            Repr::Rational(_) => 0,
            Repr::Cyclo { .. } => 1,
            Repr::RatFn { .. } => 2,
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, o: &Scalar) -> bool {
        use Repr::*;
        match (&self.0, &o.0) {
            (Rational(a), Rational(b)) => a == b,
            (
                Cyclo {
                    table: ta,
                    coeffs: a,
                },
                Cyclo {
                    table: tb,
                    coeffs: b,
                },
            ) => ta.order == tb.order && a == b,
            (RatFn { num: na, den: da }, RatFn { num: nb, den: db }) => na == nb && da == db,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.variant_rank().hash(h);
        match &self.0 {
            Repr::Rational(a) => a.hash(h),
            Repr::Cyclo { table, coeffs } => {
                table.order.hash(h);
                coeffs.hash(h);
            }
            Repr::RatFn { num, den } => {
                num.hash(h);
                den.hash(h);
            }
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, o: &Scalar) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// An arbitrary but fixed total order, used only for deterministic containers.
impl Ord for Scalar {
    fn cmp(&self, o: &Scalar) -> Ordering {
        use Repr::*;
        match (&self.0, &o.0) {
            (Rational(a), Rational(b)) => a.cmp(b),
            (
                Cyclo {
                    table: ta,
                    coeffs: a,
                },
                Cyclo {
                    table: tb,
                    coeffs: b,
                },
            ) => ta.order.cmp(&tb.order).then_with(|| a.cmp(b)),
            (RatFn { num: na, den: da }, RatFn { num: nb, den: db }) => na
                .coeffs()
                .cmp(nb.coeffs())
                .then_with(|| da.coeffs().cmp(db.coeffs())),
            _ => self.variant_rank().cmp(&o.variant_rank()),
        }
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Writes `Σ c_k var^k` over the given (exponent, coefficient) pairs.
fn fmt_sum(terms: &[(i64, BigRational)], var: char) -> String {
    let mut out = String::new();
    for (k, c) in terms {
        if c.is_zero() {
            continue;
        }
        let mono = match *k {
            0 => String::new(),
            1 => var.to_string(),
            k => format!("{var}^{k}"),
        };
        let body = if mono.is_empty() {
            fmt_rational(c)
        } else if c.is_one() {
            mono
        } else if *c == -BigRational::one() {
            format!("-{mono}")
        } else {
            format!("{}*{mono}", fmt_rational(c))
        };
        if !out.is_empty() && !body.starts_with('-') {
            out.push('+');
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(r) => write!(f, "{}", fmt_rational(r)),
            Repr::Cyclo { coeffs, .. } => {
                let terms: Vec<_> = coeffs
                    .iter()
                    .cloned()
                    .enumerate()
                    .map(|(k, c)| (k as i64, c))
                    .collect();
                write!(f, "{}", fmt_sum(&terms, 'z'))
            }
            Repr::RatFn { num, den } => {
                if den.is_monomial() {
                    let shift = den.degree().unwrap() as i64;
                    let terms: Vec<_> = num
                        .coeffs()
                        .iter()
                        .cloned()
                        .enumerate()
                        .map(|(k, c)| (k as i64 - shift, c))
                        .collect();
                    write!(f, "{}", fmt_sum(&terms, 't'))
                } else {
                    let n: Vec<_> = num
                        .coeffs()
                        .iter()
                        .cloned()
                        .enumerate()
                        .map(|(k, c)| (k as i64, c))
                        .collect();
                    let d: Vec<_> = den
                        .coeffs()
                        .iter()
                        .cloned()
                        .enumerate()
                        .map(|(k, c)| (k as i64, c))
                        .collect();
                    write!(f, "({})/({})", fmt_sum(&n, 't'), fmt_sum(&d, 't'))
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.add_impl(o)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.add_impl(&-o)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.mul_impl(o)
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self.mul_impl(&o.inv().expect("scalar division by zero"))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Rational(r) => Scalar(Repr::Rational(-r)),
            Repr::Cyclo { table, coeffs } => Scalar(Repr::Cyclo {
                table: table.clone(),
                coeffs: coeffs.iter().map(|c| -c).collect(),
            }),
            Repr::RatFn { num, den } => Scalar(Repr::RatFn {
                num: -num,
                den: den.clone(),
            }),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, o: Scalar) {
        *self = &*self + &o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |a, b| a * b)
    }
}

/// Height of a rational constant, max(|num|, |den|); used to bound discrete logs.
pub(crate) fn rational_height(r: &BigRational) -> BigInt {
    let (n, d) = (r.numer().abs(), r.denom().abs());
    if n > d {
        n
    } else {
        d
    }
}
