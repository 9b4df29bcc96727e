//! Modular gcd in ℚ[x]: gcds modulo word-size primes, combined by CRT and confirmed by trial division.

use super::poly::QPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::OnceLock;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let small = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &small {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &small {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The largest primes below 2^62, enough for coefficients of about 15000 bits.
fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        ((1u64 << 61)..(1u64 << 62))
            .rev()
            .step_by(2)
            .filter(|&n| is_prime(n))
            .take(256)
            .collect()
    })
}

/// Primitive integer polynomial proportional to `p`.
fn primitive(p: &QPoly) -> Vec<BigInt> {
    let l = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&l / c.denom()))
        .collect();
    content_free(ints)
}

fn content_free(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in &mut v {
            *c /= &g;
        }
    }
    if v.last().is_some_and(|c| c.is_negative()) {
        for c in &mut v {
            *c = -&*c;
        }
    }
    v
}

fn reduce(v: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut out: Vec<u64> = v
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().unwrap())
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Monic gcd over 𝔽_p; inputs have no trailing zeros.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        let inv = pow_mod(*b.last().unwrap(), p - 2, p);
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let f = mul_mod(*a.last().unwrap(), inv, p);
            for (j, &bc) in b.iter().enumerate() {
                a[shift + j] = (a[shift + j] + p - mul_mod(f, bc, p)) % p;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    let inv = pow_mod(*a.last().unwrap(), p - 2, p);
    a.iter().map(|&c| mul_mod(c, inv, p)).collect()
}

fn divides(d: &QPoly, x: &QPoly) -> bool {
    x.divrem(d).1.is_zero()
}

/// Monic gcd of two nonzero polynomials of positive degree.
pub(super) fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let (ia, ib) = (primitive(a), primitive(b));
    let lead_gcd = ia.last().unwrap().gcd(ib.last().unwrap());
    let bound = ia.len().min(ib.len());
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = Vec::new();
    let mut deg = usize::MAX;
    for &p in primes() {
        let pb = BigInt::from(p);
        if (ia.last().unwrap() % &pb).is_zero() || (ib.last().unwrap() % &pb).is_zero() {
            continue;
        }
        let g = gcd_mod(reduce(&ia, p), reduce(&ib, p), p);
        if g.len() == 1 {
            return QPoly::one();
        }
        if g.len() > deg || g.len() > bound {
            continue;
        }
        let scale = lead_gcd.mod_floor(&pb).to_u64().unwrap();
        let g: Vec<u64> = g.iter().map(|&c| mul_mod(c, scale, p)).collect();
        if g.len() < deg {
            deg = g.len();
            modulus = BigInt::one();
            acc = vec![BigInt::zero(); deg];
        }
        // CRT: acc ≡ old (mod modulus), acc ≡ g (mod p), symmetric range
        let m_inv = pow_mod(modulus.mod_floor(&pb).to_u64().unwrap(), p - 2, p);
        let next = &modulus * &pb;
        let half = &next >> 1;
        let mut changed = false;
        for (c, &gp) in acc.iter_mut().zip(&g) {
            let cur = c.mod_floor(&pb).to_u64().unwrap();
            let t = mul_mod((gp + p - cur) % p, m_inv, p);
            if t != 0 {
                changed = true;
                let mut v = &*c + &modulus * BigInt::from(t);
                if v > half {
                    v -= &next;
                } else if v < -&half {
                    v += &next;
                }
                *c = v;
            }
        }
        modulus = next;
        if !changed {
            let cand = content_free(acc.clone());
            let q = QPoly::from_coeffs(cand.into_iter().map(BigRational::from_integer).collect())
                .monic();
            if divides(&q, a) && divides(&q, b) {
                return q;
            }
        }
    }
    QPoly::gcd_euclid(a, b)
}
