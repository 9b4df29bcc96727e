//! Reduction data for ℚ(ζ_N): the cyclotomic polynomial and reduced powers of ζ.

use super::poly::QPoly;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug)]
pub struct CycloTable {
    pub order: u32,
    pub phi: usize,
    pub modulus: QPoly,
    /// `powers[k]` holds ζ^k in the basis 1, ζ, …, ζ^{φ−1}, for 0 ≤ k < N.
    pub powers: Vec<Vec<BigRational>>,
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut d: Vec<u64> = (1..=n).filter(|k| n % k == 0).collect();
    d.sort_unstable();
    d
}

/// Φ_n as a rational polynomial, by dividing x^n − 1 by Φ_d for proper divisors d.
pub fn cyclotomic_poly(n: u32) -> QPoly {
    let mut num = QPoly::monomial(BigRational::one(), n as usize);
    num = &num - &QPoly::one();
    for d in divisors(n as u64) {
        if d < n as u64 {
            let (q, r) = num.divrem(&cyclotomic_poly(d as u32));
            debug_assert!(r.is_zero());
            num = q;
        }
    }
    num
}

impl CycloTable {
    pub fn new(order: u32) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let modulus = cyclotomic_poly(order);
        let phi = modulus.degree().unwrap_or(0);
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = QPoly::one();
        let x = QPoly::x();
        for _ in 0..order {
            let mut v = vec![BigRational::zero(); phi];
            for (k, c) in cur.coeffs().iter().enumerate() {
                v[k] = c.clone();
            }
            powers.push(v);
            cur = (&cur * &x).divrem(&modulus).1;
        }
        CycloTable {
            order,
            phi,
            modulus,
            powers,
        }
    }

    /// Reduces an unreduced coefficient list (index = power of ζ).
    pub fn reduce(&self, raw: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.phi];
        for (k, c) in raw.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < self.phi {
                out[k] += c;
            } else {
                for (slot, p) in out.iter_mut().zip(&self.powers[k % self.order as usize]) {
                    if !p.is_zero() {
                        *slot += c * p;
                    }
                }
            }
        }
        out
    }
}
