//! Arithmetic in `GF(q)` for prime powers `2 <= q <= 16`.
//!
//! Elements are encoded as integers `0..q`, read as the base-`p` digit vector of
//! a polynomial over `GF(p)` (least significant digit = constant term). Each
//! order has one fixed modulus, so encodings are identical on every run.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_Q: u32 = 16;

/// Fixed moduli for the non-prime orders, as coefficient lists `c0, c1, .., ce`.
///
/// | q  | modulus          |
/// |----|------------------|
/// | 4  | x^2 + x + 1      |
/// | 8  | x^3 + x + 1      |
/// | 9  | x^2 + 2x + 2     |
/// | 16 | x^4 + x + 1      |
pub const MODULI: [(u8, &[u8]); 4] = [
    (4, &[1, 1, 1]),
    (8, &[1, 1, 0, 1]),
    (9, &[2, 2, 1]),
    (16, &[1, 1, 0, 0, 1]),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    q: u8,
    p: u8,
    e: u8,
    modulus: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    log: Vec<u8>,
    antilog: Vec<u8>,
}

fn factor_prime_power(q: u32) -> Option<(u8, u8)> {
    if !(2..=MAX_Q).contains(&q) {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p as u8, e as u8))
}

fn digits(x: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    let mut x = x;
    for d in out.iter_mut() {
        *d = x % p;
        x /= p;
    }
    out
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Remainder of `a` modulo the monic polynomial `m`, coefficients low-to-high.
fn poly_rem(a: &mut Vec<u32>, m: &[u32], p: u32) {
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = a.pop().unwrap() % p;
        if lead != 0 {
            let shift = a.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                a[shift + i] = (a[shift + i] + (p - c) * lead) % p;
            }
        }
    }
}

/// Product of two encoded elements by schoolbook polynomial multiplication
/// followed by reduction modulo `modulus`. Used to build the tables and as
/// the reference they are checked against.
pub(crate) fn poly_mul_direct(p: u8, e: u8, modulus: &[u8], a: u8, b: u8) -> u8 {
    let (p32, e) = (p as u32, e as usize);
    let da = digits(a as u32, p32, e);
    let db = digits(b as u32, p32, e);
    let mut prod = vec![0u32; 2 * e - 1];
    for (i, x) in da.iter().enumerate() {
        for (j, y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p32;
        }
    }
    let m: Vec<u32> = modulus.iter().map(|&c| c as u32).collect();
    poly_rem(&mut prod, &m, p32);
    prod.resize(e, 0);
    undigits(&prod, p32) as u8
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub(crate) fn is_irreducible(p: u8, modulus: &[u8]) -> bool {
    let p32 = p as u32;
    let deg = modulus.len() - 1;
    if deg == 1 {
        return true;
    }
    let m: Vec<u32> = modulus.iter().map(|&c| c as u32).collect();
    for d in 1..=deg / 2 {
        for low in 0..p32.pow(d as u32) {
            let mut divisor = digits(low, p32, d);
            divisor.push(1);
            let mut r = m.clone();
            poly_rem(&mut r, &divisor, p32);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// Builds `GF(q)` with the fixed modulus for `q`.
    pub fn new(q: u32) -> Result<Self> {
        let (p, e) = factor_prime_power(q).ok_or(Error::NotAPrimePower(q))?;
        let q = q as u8;
        let modulus: Vec<u8> = if e == 1 {
            vec![0, 1]
        } else {
            MODULI
                .iter()
                .find(|(mq, _)| *mq == q)
                .map(|(_, m)| m.to_vec())
                .ok_or(Error::NotAPrimePower(q as u32))?
        };
        debug_assert!(is_irreducible(p, &modulus));
        if !is_irreducible(p, &modulus) {
            return Err(Error::NotAPrimePower(q as u32));
        }

        let qs = q as usize;
        let p32 = p as u32;
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..qs {
            let da = digits(a as u32, p32, e as usize);
            for b in 0..qs {
                let db = digits(b as u32, p32, e as usize);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p32).collect();
                add[a * qs + b] = undigits(&sum, p32) as u8;
                mul[a * qs + b] = if e == 1 {
                    ((a * b) % qs) as u8
                } else {
                    poly_mul_direct(p, e, &modulus, a as u8, b as u8)
                };
            }
        }
        let mut neg = vec![0u8; qs];
        let mut inv = vec![0u8; qs];
        for a in 0..qs {
            neg[a] = (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u8;
            if a != 0 {
                inv[a] = (1..qs).find(|&b| mul[a * qs + b] == 1).unwrap() as u8;
            }
        }

        // log/antilog over a primitive element found by search
        let order_of = |g: usize| {
            let mut x = g;
            let mut k = 1;
            while x != 1 {
                x = mul[x * qs + g] as usize;
                k += 1;
            }
            k
        };
        let gen = (1..qs).find(|&g| order_of(g) == qs - 1).unwrap_or(1);
        let mut antilog = vec![0u8; qs];
        let mut log = vec![0u8; qs];
        let mut x = 1usize;
        for (i, slot) in antilog.iter_mut().take(qs - 1).enumerate() {
            *slot = x as u8;
            log[x] = i as u8;
            x = mul[x * qs + gen] as usize;
        }

        Ok(FieldSpec { q, p, e, modulus, add, mul, neg, inv, log, antilog })
    }

    /// Shared instance for order `q`, built once per process.
    pub fn get(q: u32) -> Result<&'static FieldSpec> {
        static FIELDS: [OnceLock<Option<FieldSpec>>; (MAX_Q + 1) as usize] =
            [const { OnceLock::new() }; (MAX_Q + 1) as usize];
        if q > MAX_Q {
            return Err(Error::NotAPrimePower(q));
        }
        FIELDS[q as usize]
            .get_or_init(|| FieldSpec::new(q).ok())
            .as_ref()
            .ok_or(Error::NotAPrimePower(q))
    }

    #[inline]
    pub fn q(&self) -> u8 {
        self.q
    }

    #[inline]
    pub fn characteristic(&self) -> u8 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u8 {
        self.e
    }

    #[inline]
    pub fn is_prime(&self) -> bool {
        self.e == 1
    }

    /// Modulus coefficients `c0..ce` (monic). For prime fields this is `x`.
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    /// Compact key naming the modulus, used in cache file names.
    pub fn modulus_key(&self) -> String {
        self.modulus.iter().map(|c| char::from_digit(*c as u32, 36).unwrap()).collect()
    }

    pub fn log_table(&self) -> &[u8] {
        &self.log
    }

    pub fn antilog_table(&self) -> &[u8] {
        &self.antilog
    }

    pub fn check(&self, a: u8) -> Result<u8> {
        if a < self.q {
            Ok(a)
        } else {
            Err(Error::InvalidElement { q: self.q, value: a })
        }
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    pub fn inv(&self, a: u8) -> Result<u8> {
        if a == 0 {
            Err(Error::DivisionByZero(self.q))
        } else {
            Ok(self.inv[a as usize])
        }
    }

    /// Inverse of a nonzero element; callers guarantee `a != 0`.
    #[inline]
    pub(crate) fn inv_nonzero(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    pub fn div(&self, a: u8, b: u8) -> Result<u8> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a + c*b`, the row-operation primitive.
    #[inline]
    pub fn mul_add(&self, a: u8, c: u8, b: u8) -> u8 {
        self.add(a, self.mul(c, b))
    }

    /// Standard bilinear form `sum a_i b_i`.
    #[inline]
    pub fn dot(&self, a: &[u8], b: &[u8]) -> u8 {
        if self.e == 1 {
            let s: u32 = a.iter().zip(b).map(|(&x, &y)| x as u32 * y as u32).sum();
            (s % self.q as u32) as u8
        } else {
            a.iter().zip(b).fold(0, |acc, (&x, &y)| self.mul_add(acc, x, y))
        }
    }
}
