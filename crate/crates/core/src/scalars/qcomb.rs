//! q-numbers, q-factorials, q-binomials, shifted factorials and quantum characteristics.

use super::cyclo::divisors;
use super::{rational_height, Field, Scalar, ScalarError};
use num_integer::Integer;
use num_traits::One;

/// (n)_x = 1 + x + … + x^{n−1}
pub fn qnum(n: u64, x: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    let mut p = Scalar::one();
    for _ in 0..n {
        acc += &p;
        p = &p * x;
    }
    acc
}

/// (n)_x! = ∏_{r=1}^{n} (r)_x
pub fn qfact(n: u64, x: &Scalar) -> Scalar {
    let mut acc = Scalar::one();
    let mut num = Scalar::zero();
    let mut p = Scalar::one();
    for _ in 0..n {
        num += &p;
        p = &p * x;
        acc = &acc * &num;
        if acc.is_zero() {
            break;
        }
    }
    acc
}

fn binom_table(n: u64, x: &Scalar, alt: bool) -> Vec<Scalar> {
    let n = n as usize;
    let powers: Vec<Scalar> = {
        let mut v = vec![Scalar::one()];
        for k in 1..=n {
            v.push(&v[k - 1] * x);
        }
        v
    };
    let mut row = vec![Scalar::one()];
    for r in 1..=n {
        let mut next = vec![Scalar::zero(); r + 1];
        next[0] = Scalar::one();
        next[r] = Scalar::one();
        for m in 1..r {
            next[m] = if alt {
                &powers[m] * &row[m] + &row[m - 1]
            } else {
                &row[m] + &powers[r - m] * &row[m - 1]
            };
        }
        row = next;
    }
    row
}

/// Gaussian binomial via C(n,m) = C(n−1,m) + x^{n−m} C(n−1,m−1); zero outside 0 ≤ m ≤ n.
pub fn qbinom(n: u64, m: i64, x: &Scalar) -> Scalar {
    if m < 0 || m as u64 > n {
        return Scalar::zero();
    }
    binom_table(n, x, false).swap_remove(m as usize)
}

/// Gaussian binomial via the mirrored recursion C(n,m) = x^m C(n−1,m) + C(n−1,m−1).
pub fn qbinom_alt(n: u64, m: i64, x: &Scalar) -> Scalar {
    if m < 0 || m as u64 > n {
        return Scalar::zero();
    }
    binom_table(n, x, true).swap_remove(m as usize)
}

/// (n; x, y) = 1 − x^{n−1} y, for n ≥ 1.
pub fn qshift(n: u64, x: &Scalar, y: &Scalar) -> Scalar {
    assert!(n >= 1, "(n;x,y) needs n >= 1");
    Scalar::one() - x.pow(n as i64 - 1) * y
}

/// (n; x, y)! = ∏_{m=1}^{n} (1 − x^{m−1} y)
pub fn qshift_fact(n: u64, x: &Scalar, y: &Scalar) -> Scalar {
    let mut acc = Scalar::one();
    let mut p = y.clone();
    for _ in 0..n {
        acc = &acc * &(Scalar::one() - &p);
        p = &p * x;
    }
    acc
}

/// Least m ≥ 1 with x^m = 1, or `None` when the order is infinite.
pub fn mul_order(x: &Scalar) -> Result<Option<u64>, ScalarError> {
    if x.is_zero() {
        return Err(ScalarError::ZeroInput);
    }
    match x.field() {
        None => {
            let r = x.as_rational().unwrap();
            if r.is_one() {
                Ok(Some(1))
            } else if *r == -num_rational::BigRational::one() {
                Ok(Some(2))
            } else {
                Ok(None)
            }
        }
        Some(Field::RationalFunction) => Ok(None),
        Some(Field::Cyclotomic(n)) => {
            let l = (n as u64).lcm(&2);
            for d in divisors(l) {
                if x.pow(d as i64).is_one() {
                    return Ok(Some(d));
                }
            }
            Ok(None)
        }
    }
}

/// κ(x): the multiplicative order when it is finite and at least 2, otherwise 0.
pub fn kappa(x: &Scalar) -> Result<u64, ScalarError> {
    Ok(match mul_order(x)? {
        Some(r) if r >= 2 => r,
        _ => 0,
    })
}

/// κ′(x): κ(x) when κ(x) ≥ 2, otherwise infinity (`None`).
pub fn kappa_prime(x: &Scalar) -> Result<Option<u64>, ScalarError> {
    let k = kappa(x)?;
    Ok(if k >= 2 { Some(k) } else { None })
}

fn verify(q: &Scalar, x: &Scalar, s: i64) -> Option<i64> {
    if q.pow(s) == *x {
        Some(s)
    } else {
        None
    }
}

/// Some s with q^s = x. For q of finite order r the answer lies in [0, r).
/// For ℚ(t) and rational q the search is exact; for cyclotomic q of infinite order
/// exponents with |s| > `bound` are not found.
pub fn discrete_log(q: &Scalar, x: &Scalar, bound: u64) -> Option<i64> {
    if q.is_zero() || x.is_zero() {
        return None;
    }
    if let Ok(Some(r)) = mul_order(q) {
        return (0..r as i64).find(|&s| q.pow(s) == *x);
    }
    if x.is_one() {
        return Some(0);
    }
    match (q.field(), q.as_ratfn()) {
        (Some(Field::RationalFunction), Some((qn, qd))) => {
            let (xn, xd) = x.as_ratfn()?;
            let deg = |n: &super::poly::QPoly, d: &super::poly::QPoly| {
                n.degree().unwrap() as i64 - d.degree().unwrap() as i64
            };
            let val = |n: &super::poly::QPoly, d: &super::poly::QPoly| {
                n.valuation().unwrap() as i64 - d.valuation().unwrap() as i64
            };
            let mut cands = Vec::new();
            for (a, b) in [
                (deg(&xn, &xd), deg(&qn, &qd)),
                (val(&xn, &xd), val(&qn, &qd)),
            ] {
                if b != 0 && a % b == 0 {
                    cands.push(a / b);
                }
            }
            let (qnd, qdd) = (qn.degree().unwrap() as i64, qd.degree().unwrap() as i64);
            let (xnd, xdd) = (xn.degree().unwrap() as i64, xd.degree().unwrap() as i64);
            if qnd > 0 && xnd % qnd == 0 {
                cands.push(xnd / qnd);
            }
            if qdd > 0 && xnd % qdd == 0 {
                cands.push(-(xnd / qdd));
            }
            if qdd > 0 && xdd % qdd == 0 {
                cands.push(xdd / qdd);
            }
            cands.into_iter().find_map(|s| verify(q, x, s))
        }
        (None, _) => {
            let hx = rational_height(x.as_rational()?);
            let hq = rational_height(q.as_rational().unwrap());
            let mut p = hq.clone();
            let mut s = 1i64;
            while p <= hx {
                if let Some(v) = verify(q, x, s).or_else(|| verify(q, x, -s)) {
                    return Some(v);
                }
                p *= &hq;
                s += 1;
            }
            None
        }
        _ => (1..=bound as i64).find_map(|s| verify(q, x, s).or_else(|| verify(q, x, -s))),
    }
}
