//! Prime generation and arithmetic in `Z/pZ`.
//!
//! Residues are plain `u64` values in `[0, p)`; every product goes through a
//! `u128` intermediate, so any prime below `2^32` is safe. The supported range
//! is `p <= 10^7`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest prime bound accepted by [`primes_in_range`].
pub const PRIME_BOUND: u64 = 10_000_000;

/// An element of `Z/pZ` tagged with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Residue {
    value: u64,
    prime: u64,
}

impl Residue {
    /// Reduces `value` modulo `prime`.
    pub fn new(value: i64, prime: u64) -> Self {
        Residue {
            value: value.rem_euclid(prime as i64) as u64,
            prime,
        }
    }

    pub(crate) fn from_reduced(value: u64, prime: u64) -> Self {
        debug_assert!(value < prime);
        Residue { value, prime }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn prime(self) -> u64 {
        self.prime
    }

    /// The representative in `(-p/2, p/2]`.
    pub fn symmetric(self) -> i64 {
        if self.value > self.prime / 2 {
            self.value as i64 - self.prime as i64
        } else {
            self.value as i64
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Arithmetic context for a fixed odd prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    p: u64,
}

impl Fp {
    /// Creates a context for `p`, which must be an odd prime.
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        Ok(Fp { p })
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    /// `a * sign` with `sign` in `{1, -1}`.
    #[inline]
    pub fn signed(self, a: u64, sign: i8) -> u64 {
        if sign < 0 {
            self.neg(a)
        } else {
            a
        }
    }

    pub fn pow(self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.p)
    }

    pub fn inv(self, a: u64) -> Result<u64> {
        inv_mod((a % self.p) as i64, self.p).map(Residue::value)
    }

    pub fn residue(self, a: u64) -> Residue {
        Residue::from_reduced(a % self.p, self.p)
    }
}

/// All primes in `[lo, hi]`, ascending.
pub fn primes_in_range(lo: u64, hi: u64) -> Result<Vec<u64>> {
    if lo < 2 {
        return Err(Error::InvalidRange {
            lo,
            hi,
            reason: "lower bound below 2",
        });
    }
    if lo > hi {
        return Err(Error::InvalidRange {
            lo,
            hi,
            reason: "range is inverted",
        });
    }
    if hi > PRIME_BOUND {
        return Err(Error::InvalidRange {
            lo,
            hi,
            reason: "upper bound above 10^7",
        });
    }
    let n = hi as usize;
    let mut composite = vec![false; n + 1];
    let mut i = 2;
    while i * i <= n {
        if !composite[i] {
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    Ok((lo as usize..=n)
        .filter(|&k| !composite[k])
        .map(|k| k as u64)
        .collect())
}

/// Odd primes in `[lo, hi]`.
pub fn odd_primes_in_range(lo: u64, hi: u64) -> Result<Vec<u64>> {
    Ok(primes_in_range(lo.max(2), hi)?
        .into_iter()
        .filter(|&p| p != 2)
        .collect())
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `a^e mod p` by square-and-multiply.
pub fn pow_mod(a: u64, mut e: u64, p: u64) -> u64 {
    let m = p as u128;
    let mut base = a as u128 % m;
    let mut acc = 1 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `p` by the extended Euclidean algorithm.
pub fn inv_mod(a: i64, p: u64) -> Result<Residue> {
    let a = a.rem_euclid(p as i64);
    let (mut r0, mut r1) = (p as i64, a);
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return Err(Error::NotInvertible {
            value: a as u64,
            prime: p,
        });
    }
    Ok(Residue::new(s0, p))
}

/// Inverts every element of `values` with a single modular inversion
/// (Montgomery's prefix-product trick).
pub fn batch_inverse(values: &[u64], fp: Fp) -> Result<Vec<u64>> {
    let mut prefix = Vec::with_capacity(values.len());
    let mut acc = 1u64;
    for &v in values {
        let v = v % fp.modulus();
        if v == 0 {
            return Err(Error::NotInvertible {
                value: 0,
                prime: fp.modulus(),
            });
        }
        prefix.push(acc);
        acc = fp.mul(acc, v);
    }
    let mut inv_acc = fp.inv(acc)?;
    let mut out = vec![0; values.len()];
    for i in (0..values.len()).rev() {
        out[i] = fp.mul(inv_acc, prefix[i]);
        inv_acc = fp.mul(inv_acc, values[i] % fp.modulus());
    }
    Ok(out)
}

/// Table `t` with `t[m] = m^{-1} mod p` for `1 <= m < p`; `t[0]` is unused (0).
pub fn inverse_table(fp: Fp) -> Vec<u64> {
    let values: Vec<u64> = (1..fp.modulus()).collect();
    let mut table = Vec::with_capacity(fp.modulus() as usize);
    table.push(0);
    table.extend(batch_inverse(&values, fp).expect("1..p are units"));
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn primes_examples() {
        assert_eq!(primes_in_range(2, 11).unwrap(), vec![2, 3, 5, 7, 11]);
        assert!(primes_in_range(14, 16).unwrap().is_empty());
        assert_eq!(primes_in_range(90, 100).unwrap(), vec![97]);
        assert!(primes_in_range(10, 5).is_err());
        assert!(primes_in_range(2, PRIME_BOUND + 1).is_err());
        assert!(primes_in_range(0, 5).is_err());
    }

    #[test]
    fn primes_have_no_composites() {
        let ps = primes_in_range(2, 10_000).unwrap();
        assert!(ps.iter().all(|&p| is_prime(p)));
        let count = (2..=10_000).filter(|&n| is_prime(n)).count();
        assert_eq!(ps.len(), count);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inv_mod(3, 7).unwrap().value(), 5);
        assert_eq!(inv_mod(1, 101).unwrap().value(), 1);
        assert_eq!(inv_mod(4, 5).unwrap().value(), 4);
        assert_eq!(inv_mod(-1, 7).unwrap().value(), 6);
        assert_eq!(
            inv_mod(14, 7),
            Err(Error::NotInvertible { value: 0, prime: 7 })
        );
    }

    #[test]
    fn pow_examples() {
        assert_eq!(pow_mod(2, 10, 1_000_003), 1024);
        assert_eq!(pow_mod(12345, 0, 7), 1);
        assert_eq!(pow_mod(5, 6, 7), 1);
    }

    #[test]
    fn fermat_small_primes() {
        for p in odd_primes_in_range(3, 100).unwrap() {
            for a in 1..p {
                assert_eq!(pow_mod(a, p - 1, p), 1);
                let inv = inv_mod(a as i64, p).unwrap().value();
                assert_eq!(a * inv % p, 1);
            }
        }
    }

    #[test]
    fn batch_agrees_with_scalar() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let fp = Fp::new(1_000_003).unwrap();
        let values: Vec<u64> = (0..1000).map(|_| rng.gen_range(1..fp.modulus())).collect();
        let batch = batch_inverse(&values, fp).unwrap();
        for (v, b) in values.iter().zip(&batch) {
            assert_eq!(*b, inv_mod(*v as i64, fp.modulus()).unwrap().value());
        }
        assert!(batch_inverse(&[3, 14], Fp::new(7).unwrap()).is_err());
    }

    #[test]
    fn inverse_table_matches() {
        let fp = Fp::new(97).unwrap();
        let t = inverse_table(fp);
        assert_eq!(t.len(), 97);
        for m in 1..97 {
            assert_eq!(fp.mul(m, t[m as usize]), 1);
        }
    }

    #[test]
    fn fp_rejects_non_odd_primes() {
        assert!(Fp::new(2).is_err());
        assert!(Fp::new(9).is_err());
        assert!(Fp::new(13).is_ok());
    }

    #[test]
    fn residue_symmetric() {
        assert_eq!(Residue::new(-1, 7).value(), 6);
        assert_eq!(Residue::new(-1, 7).symmetric(), -1);
        assert_eq!(Residue::new(3, 7).symmetric(), 3);
    }
}
