//! Arithmetic in `Z/pZ` for primes below `2^63`.
//!
//! Elements are plain `u64` values in `0..p`; products go through `u128`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The Mersenne prime `2^61 - 1`.
pub const DEFAULT_MODULUS: u64 = (1 << 61) - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeField {
    p: u64,
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_MODULUS }
    }
}

impl TryFrom<u64> for PrimeField {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u64 {
    fn from(f: PrimeField) -> u64 {
        f.p
    }
}

impl PrimeField {
    /// Checks primality (deterministic Miller-Rabin) and the `2^63` bound.
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 63 {
            return Err(Error::InvalidArgument(format!("modulus {p} exceeds 2^63")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("modulus {p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u64) -> Option<u64> {
        (!a.is_multiple_of(self.p)).then(|| self.pow(a, self.p - 2))
    }

    /// Reduces a signed integer into the field.
    pub fn from_i64(&self, x: i64) -> u64 {
        let r = x.rem_euclid(self.p as i64);
        r as u64
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }

    /// `n` independent uniform elements.
    pub fn random_vector<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<u64> {
        (0..n).map(|_| self.random_element(rng)).collect()
    }

    pub fn dot(&self, a: &[u64], b: &[u64]) -> u64 {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the first twelve prime bases are exact for
/// every 64-bit input.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
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

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            small,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(DEFAULT_MODULUS));
        assert!(is_prime(1_000_000_007));
        // strong pseudoprime to bases 2..=37 would be above 2^64; Carmichael check
        assert!(!is_prime(561));
        assert!(!is_prime(3_215_031_751));
        assert!(!is_prime(DEFAULT_MODULUS - 2));
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(PrimeField::new(15).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(9_223_372_036_854_775_837).is_err());
        assert_eq!(PrimeField::new(101).unwrap().modulus(), 101);
    }

    #[test]
    fn field_axioms_small_prime() {
        let f = PrimeField::new(13).unwrap();
        for a in 0..13 {
            assert_eq!(f.add(a, f.neg(a)), 0);
            assert_eq!(f.sub(a, a), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            for b in 0..13 {
                assert_eq!(f.add(a, b), (a + b) % 13);
                assert_eq!(f.mul(a, b), (a * b) % 13);
            }
        }
        assert_eq!(f.inv(0), None);
        assert_eq!(f.from_i64(-1), 12);
    }

    #[test]
    fn large_modulus_inverse() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let a = f.random_element(&mut rng);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn random_vectors_are_seeded() {
        let f = PrimeField::default();
        let a = f.random_vector(10, &mut ChaCha8Rng::seed_from_u64(3));
        let b = f.random_vector(10, &mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(a, b);
        assert!(a.iter().all(|&x| x < f.modulus()));
        assert!(f.random_vector(0, &mut ChaCha8Rng::seed_from_u64(3)).is_empty());
        let distinct = (0..100u64)
            .filter(|&s| {
                f.random_vector(4, &mut ChaCha8Rng::seed_from_u64(s))
                    != f.random_vector(4, &mut ChaCha8Rng::seed_from_u64(s + 1000))
            })
            .count();
        assert_eq!(distinct, 100);
    }
}
