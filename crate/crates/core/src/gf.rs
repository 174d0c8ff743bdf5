//! Tiny finite fields GF(p) and GF(p^2) for Paley graph construction.
//!
//! Elements of GF(p^2) are a + b*x with x^2 = r for the least quadratic
//! non-residue r mod p; the element (a, b) is indexed as a + b*p.

use crate::error::{Error, Result};

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

fn least_non_residue(p: u64) -> u64 {
    (2..p)
        .find(|&r| pow_mod(r, (p - 1) / 2, p) != 1)
        .expect("odd prime has a non-residue")
}

pub struct SmallField {
    q: usize,
    p: u64,
    ext: bool,
    nonres: u64,
}

impl SmallField {
    /// Supports q prime and q = p^2 for odd primes p, up to desk scale.
    pub fn new(q: usize) -> Result<Self> {
        if q > 100_000 {
            return Err(Error::InvalidParameter(format!("field order {q} too large")));
        }
        if is_prime(q) {
            return Ok(SmallField {
                q,
                p: q as u64,
                ext: false,
                nonres: 0,
            });
        }
        let root = (q as f64).sqrt().round() as usize;
        if root * root == q && is_prime(root) && root % 2 == 1 {
            return Ok(SmallField {
                q,
                p: root as u64,
                ext: true,
                nonres: least_non_residue(root as u64),
            });
        }
        Err(Error::InvalidParameter(format!(
            "unsupported field order {q} (need a prime or the square of an odd prime)"
        )))
    }

    pub fn order(&self) -> usize {
        self.q
    }

    fn split(&self, x: usize) -> (u64, u64) {
        ((x as u64) % self.p, (x as u64) / self.p)
    }

    fn join(&self, a: u64, b: u64) -> usize {
        (a + b * self.p) as usize
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        if self.ext {
            let (xa, xb) = self.split(x);
            let (ya, yb) = self.split(y);
            self.join((xa + self.p - ya) % self.p, (xb + self.p - yb) % self.p)
        } else {
            ((x as u64 + self.p - y as u64) % self.p) as usize
        }
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        if self.ext {
            let (xa, xb) = self.split(x);
            let (ya, yb) = self.split(y);
            // (xa + xb t)(ya + yb t) with t^2 = nonres
            let a = (xa * ya + xb * yb % self.p * self.nonres) % self.p;
            let b = (xa * yb + xb * ya) % self.p;
            self.join(a, b)
        } else {
            (x as u64 * y as u64 % self.p) as usize
        }
    }

    /// Membership table of the nonzero squares.
    pub fn nonzero_squares(&self) -> Vec<bool> {
        let mut sq = vec![false; self.q];
        for c in 1..self.q {
            sq[self.mul(c, c)] = true;
        }
        sq
    }
}
