use num_modular::{ModularCoreOps, ModularPow, ModularUnaryOps};

use super::kernels::is_prime;
use crate::{Error, Result};

/// Largest `K` with `p^K < 2^127`.
pub fn max_digits(p: u64) -> u32 {
    let limit = 1u128 << 127;
    let mut acc: u128 = 1;
    let mut k = 0;
    while let Some(next) = acc.checked_mul(p as u128) {
        if next >= limit {
            break;
        }
        acc = next;
        k += 1;
    }
    k
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse_u128(a: u128, m: u128) -> Option<u128> {
    if m == 1 {
        return Some(0);
    }
    (a % m).invm(&m)
}

/// A prime `p`, a precision exponent `K`, the modulus `p^K` and the inverses
/// of `1..p` modulo `p^K`.
///
/// Built once per `(p, K)` and shared read-only.
#[derive(Debug, Clone)]
pub struct ModContext {
    p: u64,
    k: u32,
    modulus: u128,
    powers: Vec<u128>,
    inv_table: Vec<u128>,
}

impl ModContext {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if k == 0 {
            return Err(Error::ZeroPrecision);
        }
        if k > max_digits(p) {
            return Err(Error::CapacityExceeded { p, digits: k });
        }
        let powers: Vec<u128> = (0..=k).map(|i| (p as u128).pow(i)).collect();
        let modulus = powers[k as usize];
        let inv_table = batch_inverses(p, modulus);
        Ok(ModContext {
            p,
            k,
            modulus,
            powers,
            inv_table,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u128 {
        self.modulus
    }

    /// `p^i` for `0 ≤ i ≤ K`.
    pub fn pow_p(&self, i: u32) -> u128 {
        self.powers[i as usize]
    }

    /// Inverse of `k` modulo `p^K` for `1 ≤ k < p`, from the precomputed table.
    pub fn inv(&self, k: u64) -> u128 {
        debug_assert!(k >= 1 && k < self.p);
        self.inv_table[k as usize]
    }

    pub fn reduce_i128(&self, a: i128) -> u128 {
        let m = self.modulus as i128;
        a.rem_euclid(m) as u128
    }

    pub fn add(&self, a: u128, b: u128) -> u128 {
        a.addm(b, &self.modulus)
    }

    pub fn sub(&self, a: u128, b: u128) -> u128 {
        a.subm(b, &self.modulus)
    }

    pub fn mul(&self, a: u128, b: u128) -> u128 {
        a.mulm(b, &self.modulus)
    }

    pub fn neg(&self, a: u128) -> u128 {
        0u128.subm(a, &self.modulus)
    }

    pub fn pow(&self, a: u128, e: u64) -> u128 {
        (a % self.modulus).powm(e as u128, &self.modulus)
    }

    /// Inverse of an arbitrary integer coprime to `p`.
    pub fn mod_inverse(&self, a: i128) -> Result<u128> {
        let r = self.reduce_i128(a);
        if r.is_multiple_of(self.p as u128) {
            return Err(Error::NotInvertible(a.to_string()));
        }
        if r < self.p as u128 {
            return Ok(self.inv(r as u64));
        }
        mod_inverse_u128(r, self.modulus).ok_or_else(|| Error::NotInvertible(a.to_string()))
    }
}

/// Inverses of `1..p` modulo `m` with one modular inversion and `3(p-2)`
/// multiplications (prefix products). Index 0 is unused.
fn batch_inverses(p: u64, m: u128) -> Vec<u128> {
    let n = p as usize;
    let mut prefix = vec![1u128; n];
    for k in 1..n {
        prefix[k] = prefix[k - 1].mulm(k as u128, &m);
    }
    let mut inv = vec![0u128; n];
    let mut acc = mod_inverse_u128(prefix[n - 1], m).expect("(p-1)! is a unit");
    for k in (1..n).rev() {
        inv[k] = acc.mulm(prefix[k - 1], &m);
        acc = acc.mulm(k as u128, &m);
    }
    inv
}
