//! Finite fields GF(p^m) backed by exponent/logarithm tables.
//!
//! Elements are stored as integers in `[0, q)`: the base-`p` digits of the
//! value are the coefficients of the polynomial representative, least
//! significant digit first. Construction is deterministic: the modulus is the
//! smallest monic irreducible polynomial of degree `m` (comparing coefficient
//! vectors from the highest degree down) and `alpha` is the smallest element
//! of multiplicative order `q - 1`.

use crate::error::{Error, Result};
use serde::Serialize;

/// Largest field size for which tables are built unless a cap is given.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FieldElem(pub u64);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug, Clone)]
pub struct FieldCtx {
    p: u64,
    m: u32,
    q: u64,
    modulus: Vec<u64>,
    alpha: FieldElem,
    exp_table: Vec<u32>,
    log_table: Vec<u32>,
}

/// Summary of a field as printed by the CLI.
#[derive(Debug, Clone, Serialize)]
pub struct FieldInfo {
    pub p: u64,
    pub m: u32,
    pub q: u64,
    /// Coefficients of the modulus, constant term first.
    pub modulus: Vec<u64>,
    pub alpha: u64,
}

impl FieldCtx {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        Self::with_cap(p, m, DEFAULT_FIELD_CAP)
    }

    pub fn with_cap(p: u64, m: u32, cap: u64) -> Result<Self> {
        let q = checked_field_size(p, m, cap)?;
        let modulus = smallest_irreducible(p, m as usize);
        Self::from_parts(p, m, q, modulus)
    }

    /// Builds the field from a caller-supplied modulus (constant term first).
    /// The polynomial must be monic and irreducible over GF(p).
    pub fn with_modulus(p: u64, modulus: &[u64], cap: u64) -> Result<Self> {
        if modulus.len() < 2 {
            return Err(Error::InvalidModulus("degree must be at least 1".into()));
        }
        let m = (modulus.len() - 1) as u32;
        let q = checked_field_size(p, m, cap)?;
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidModulus(
                "coefficient not reduced mod p".into(),
            ));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidModulus("modulus must be monic".into()));
        }
        if !is_irreducible(modulus, p) {
            return Err(Error::InvalidModulus(format!(
                "{modulus:?} is reducible over GF({p})"
            )));
        }
        Self::from_parts(p, m, q, modulus.to_vec())
    }

    fn from_parts(p: u64, m: u32, q: u64, modulus: Vec<u64>) -> Result<Self> {
        let order = q - 1;
        let factors = prime_factors(order);
        let mut alpha = None;
        for cand in 1..q {
            let ok = factors
                .iter()
                .all(|&r| slow_pow(cand, order / r, p, &modulus) != 1);
            if ok {
                alpha = Some(cand);
                break;
            }
        }
        let alpha = alpha.ok_or_else(|| Error::Internal("no primitive element found".into()))?;

        let mut exp_table = vec![0u32; order as usize];
        let mut log_table = vec![0u32; q as usize];
        let mut cur = 1u64;
        for k in 0..order {
            exp_table[k as usize] = cur as u32;
            log_table[cur as usize] = k as u32;
            cur = slow_mul(cur, alpha, p, &modulus);
        }
        if cur != 1 {
            return Err(Error::Internal("alpha does not have full order".into()));
        }
        Ok(FieldCtx {
            p,
            m,
            q,
            modulus,
            alpha: FieldElem(alpha),
            exp_table,
            log_table,
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn size(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn alpha(&self) -> FieldElem {
        self.alpha
    }

    pub fn info(&self) -> FieldInfo {
        FieldInfo {
            p: self.p,
            m: self.m,
            q: self.q,
            modulus: self.modulus.clone(),
            alpha: self.alpha.0,
        }
    }

    pub fn elem(&self, value: u64) -> Result<FieldElem> {
        if value < self.q {
            Ok(FieldElem(value))
        } else {
            Err(Error::ElementOutOfRange { value, q: self.q })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.m == 1 {
            return FieldElem((a.0 + b.0) % self.p);
        }
        self.digitwise(a.0, b.0, |x, y| (x + y) % self.p)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.m == 1 {
            return FieldElem((a.0 + self.p - b.0) % self.p);
        }
        self.digitwise(a.0, b.0, |x, y| (x + self.p - y) % self.p)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        self.sub(FieldElem::ZERO, a)
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        let order = self.q - 1;
        let k = (self.log_table[a.0 as usize] as u64 + self.log_table[b.0 as usize] as u64) % order;
        FieldElem(self.exp_table[k as usize] as u64)
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let order = self.q - 1;
        let k = (order - self.log_table[a.0 as usize] as u64) % order;
        Ok(FieldElem(self.exp_table[k as usize] as u64))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return FieldElem::ONE;
        }
        if a.0 == 0 {
            return FieldElem::ZERO;
        }
        let order = self.q - 1;
        let k = (self.log_table[a.0 as usize] as u128 * e as u128 % order as u128) as u64;
        FieldElem(self.exp_table[k as usize] as u64)
    }

    /// `alpha^k`, with `k` reduced modulo `q - 1`.
    pub fn exp(&self, k: u64) -> FieldElem {
        FieldElem(self.exp_table[(k % (self.q - 1)) as usize] as u64)
    }

    /// The unique `k` in `[0, q - 2]` with `alpha^k = x`.
    pub fn discrete_log(&self, x: FieldElem) -> Result<u64> {
        if x.0 == 0 {
            return Err(Error::LogOfZero);
        }
        Ok(self.log_table[x.0 as usize] as u64)
    }

    fn digitwise(&self, mut a: u64, mut b: u64, f: impl Fn(u64, u64) -> u64) -> FieldElem {
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.m {
            out += f(a % self.p, b % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        FieldElem(out)
    }
}

fn checked_field_size(p: u64, m: u32, cap: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 {
        return Err(Error::InvalidArgument(
            "extension degree must be positive".into(),
        ));
    }
    let size = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
    if size > cap as u128 || size > u32::MAX as u128 {
        return Err(Error::FieldTooLarge { size, cap });
    }
    Ok(size as u64)
}

fn to_digits(mut v: u64, p: u64, m: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        out.push(v % p);
        v /= p;
    }
    out
}

fn from_digits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut r = 1u128 % m;
    let mut base = b as u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    r as u64
}

/// Remainder of `a` modulo the monic-or-not polynomial `b` over GF(p).
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while r.len() > db {
        let top = *r.last().unwrap();
        if top != 0 {
            let f = top * lead_inv % p;
            let shift = r.len() - 1 - db;
            for (i, &c) in b.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p - f * c % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn slow_mul(a: u64, b: u64, p: u64, modulus: &[u64]) -> u64 {
    let m = modulus.len() - 1;
    let da = to_digits(a, p, m);
    let db = to_digits(b, p, m);
    let mut prod = vec![0u64; 2 * m - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = poly_rem(&prod, modulus, p);
    r.resize(m, 0);
    from_digits(&r, p)
}

fn slow_pow(a: u64, mut e: u64, p: u64, modulus: &[u64]) -> u64 {
    let mut result = 1;
    let mut base = a;
    while e > 0 {
        if e & 1 == 1 {
            result = slow_mul(result, base, p, modulus);
        }
        base = slow_mul(base, base, p, modulus);
        e >>= 1;
    }
    result
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for low in 0..count {
            let mut divisor = to_digits(low, p, d);
            divisor.push(1);
            if poly_rem(poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u64, m: usize) -> Vec<u64> {
    let count = p.pow(m as u32);
    for low in 0..count {
        let mut poly = to_digits(low, p, m);
        poly.push(1);
        if is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Distinct prime factors in ascending order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
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
            x = (x as u128 * x as u128 % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn integer_root(n: u64, k: u32) -> u64 {
    let mut r = (n as f64).powf(1.0 / k as f64).round() as u64;
    while r > 0 && (r as u128).checked_pow(k).is_none_or(|v| v > n as u128) {
        r -= 1;
    }
    while (r as u128 + 1).pow(k) <= n as u128 {
        r += 1;
    }
    r
}

/// Returns `(p, m)` with `n = p^m` and `p` prime, if such a pair exists.
pub fn is_prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    for k in (1..=63u32).rev() {
        let r = integer_root(n, k);
        if r >= 2 && (r as u128).pow(k) == n as u128 && is_prime(r) {
            return Some((r, k));
        }
    }
    None
}
