use std::fmt;
use std::sync::Arc;

use super::{is_prime, prime_factors, Extension, Field, Ring};
use crate::error::{Error, Result};
use crate::poly::UniPoly;

/// Largest field order accepted by [`Fq::new`].
pub const MAX_ORDER: u64 = 1 << 31;
const TABLE_LIMIT: u64 = 1 << 20;

/// The field `F_{p^k} = F_p[x]/(modulus)`.
///
/// Elements are `u32` encodings `Σ c_i p^i` of the residue `Σ c_i x^i`.
#[derive(Clone)]
pub struct Fq(Arc<Inner>);

struct Inner {
    p: u32,
    k: usize,
    q: u32,
    modulus: Vec<u32>,
    tables: Option<Tables>,
    prime: Option<Fq>,
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl Fq {
    /// Builds `F_{p^k}`. When `modulus` is absent the lexicographically
    /// smallest monic irreducible of degree `k` is used (coefficients of
    /// `x^0..x^{k-1}` read as base-`p` digits, counting upward).
    pub fn new(p: u64, k: usize, modulus: Option<Vec<u64>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let q = (p as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
        if q > MAX_ORDER as u128 {
            return Err(Error::FieldTooLarge(q.min(u64::MAX as u128) as u64));
        }
        let prime = if k == 1 {
            None
        } else {
            Some(Fq::new(p, 1, None)?)
        };
        let modulus = match modulus {
            Some(m) => {
                if m.len() != k + 1 || m[k] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(Error::NonMonicModulus(k));
                }
                let m: Vec<u32> = m.iter().map(|&c| c as u32).collect();
                if let Some(pf) = &prime {
                    let f = UniPoly::new(pf, m.clone());
                    if !f.is_irreducible()? {
                        return Err(Error::ReducibleModulus);
                    }
                }
                m
            }
            None => match &prime {
                None => vec![0, 1],
                Some(pf) => default_modulus(pf, k),
            },
        };
        let mut inner = Inner {
            p: p as u32,
            k,
            q: q as u32,
            modulus,
            tables: None,
            prime,
        };
        if k > 1 && q <= TABLE_LIMIT as u128 {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(Fq(Arc::new(inner)))
    }

    /// The field of order `q`, with the default modulus.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, k) = super::prime_power(q)
            .ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        Fq::new(p, k, None)
    }

    pub fn p(&self) -> u64 {
        self.0.p as u64
    }

    pub fn k(&self) -> usize {
        self.0.k
    }

    pub fn q(&self) -> u64 {
        self.0.q as u64
    }

    /// Monic modulus, lowest coefficient first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn prime_field(&self) -> Fq {
        self.0.prime.clone().unwrap_or_else(|| self.clone())
    }

    /// Validates an integer encoding.
    pub fn elem(&self, v: u64) -> Result<u32> {
        if v < self.q() {
            Ok(v as u32)
        } else {
            Err(Error::Format(format!("{v} is not an element of {}", self.name())))
        }
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let p = self.0.p;
        (0..self.0.k)
            .map(|_| {
                let d = a % p;
                a /= p;
                d
            })
            .collect()
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.0.p + c)
    }
}

fn mul_slow(inner: &Inner, a: u32, b: u32) -> u32 {
    let p = inner.p as u64;
    let k = inner.k;
    if k == 1 {
        return ((a as u64 * b as u64) % p) as u32;
    }
    let digits = |mut v: u32| -> Vec<u64> {
        (0..k)
            .map(|_| {
                let d = v % inner.p;
                v /= inner.p;
                d as u64
            })
            .collect()
    };
    let (da, db) = (digits(a), digits(b));
    let mut prod = vec![0u64; 2 * k - 1];
    for (i, x) in da.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for deg in (k..2 * k - 1).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for i in 0..k {
            let m = inner.modulus[i] as u64;
            prod[deg - k + i] = (prod[deg - k + i] + (p - c) * m) % p;
        }
    }
    prod[..k]
        .iter()
        .rev()
        .fold(0u64, |acc, &c| acc * p + c) as u32
}

fn build_tables(inner: &Inner) -> Tables {
    let q = inner.q as u64;
    let order = q - 1;
    let factors = prime_factors(order);
    let pow = |mut b: u32, mut e: u64| {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_slow(inner, acc, b);
            }
            b = mul_slow(inner, b, b);
            e >>= 1;
        }
        acc
    };
    let g = (2..q as u32)
        .find(|&g| factors.iter().all(|&l| pow(g, order / l) != 1))
        .expect("multiplicative group is cyclic");
    let mut exp = vec![0u32; 2 * order as usize];
    let mut log = vec![0u32; q as usize];
    let mut x = 1u32;
    for i in 0..order as usize {
        exp[i] = x;
        exp[i + order as usize] = x;
        log[x as usize] = i as u32;
        x = mul_slow(inner, x, g);
    }
    Tables { exp, log }
}

fn default_modulus(prime: &Fq, k: usize) -> Vec<u32> {
    let p = prime.q();
    let total = p.pow(k as u32);
    for c in 0..total {
        let mut coeffs: Vec<u32> = Vec::with_capacity(k + 1);
        let mut v = c;
        for _ in 0..k {
            coeffs.push((v % p) as u32);
            v /= p;
        }
        coeffs.push(1);
        let f = UniPoly::new(prime, coeffs.clone());
        if f.is_irreducible().unwrap_or(false) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Fq {}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}(p={}, k={}, modulus={:?})", self.0.q, self.0.p, self.0.k, self.0.modulus)
    }
}

impl Ring for Fq {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        let inner = &*self.0;
        if inner.k == 1 {
            let s = *a as u64 + *b as u64;
            return (s % inner.p as u64) as u32;
        }
        if inner.p == 2 {
            return a ^ b;
        }
        let (mut x, mut y) = (*a, *b);
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..inner.k {
            let d = (x % inner.p + y % inner.p) % inner.p;
            out += d * place;
            place *= inner.p;
            x /= inner.p;
            y /= inner.p;
        }
        out
    }

    fn neg(&self, a: &u32) -> u32 {
        let inner = &*self.0;
        if inner.p == 2 {
            return *a;
        }
        if inner.k == 1 {
            return if *a == 0 { 0 } else { inner.p - a };
        }
        let d: Vec<u32> = self
            .digits(*a)
            .into_iter()
            .map(|c| if c == 0 { 0 } else { inner.p - c })
            .collect();
        self.undigits(&d)
    }

    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        match &self.0.tables {
            Some(t) => t.exp[(t.log[*a as usize] + t.log[*b as usize]) as usize],
            None => mul_slow(&self.0, *a, *b),
        }
    }

    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }
}

impl Field for Fq {
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        if let Some(t) = &self.0.tables {
            let order = self.0.q - 1;
            return Some(t.exp[((order - t.log[*a as usize]) % order) as usize]);
        }
        if self.0.k == 1 {
            let (mut r0, mut r1) = (self.0.p as i64, *a as i64);
            let (mut s0, mut s1) = (0i64, 1i64);
            while r1 != 0 {
                let t = r0 / r1;
                (r0, r1) = (r1, r0 - t * r1);
                (s0, s1) = (s1, s0 - t * s1);
            }
            return Some(s0.rem_euclid(self.0.p as i64) as u32);
        }
        Some(self.pow(a, self.q() - 2))
    }

    fn order(&self) -> u64 {
        self.q()
    }

    fn characteristic(&self) -> u64 {
        self.p()
    }

    fn element(&self, index: u64) -> u32 {
        debug_assert!(index < self.q());
        index as u32
    }

    fn index_of(&self, a: &u32) -> u64 {
        *a as u64
    }

    fn name(&self) -> String {
        format!("F_{}", self.0.q)
    }
}

/// `F_{p^k}` as a degree-`k` extension of its prime field.
impl Extension for Fq {
    type Base = Fq;

    fn base(&self) -> &Fq {
        self.0.prime.as_ref().unwrap_or(self)
    }

    fn degree(&self) -> usize {
        self.0.k
    }

    fn embed(&self, b: &u32) -> u32 {
        *b
    }

    fn coords(&self, x: &u32) -> Vec<u32> {
        self.digits(*x)
    }

    fn from_coords(&self, c: &[u32]) -> u32 {
        self.undigits(c)
    }

    fn generator(&self) -> u32 {
        if self.0.k > 1 {
            self.0.p
        } else {
            self.neg(&self.0.modulus[0])
        }
    }
}
