use std::fmt;
use std::sync::Arc;

use super::{Extension, Field, Ring};
use crate::error::{Error, Result};
use crate::poly::UniPoly;

/// `F_{q^s}` as `F_q[y]/(ext_modulus)`, kept as a tower over the working
/// field `F_q` rather than flattened to a prime-power field.
#[derive(Clone)]
pub struct ExtField<F: Field>(Arc<Inner<F>>);

struct Inner<F: Field> {
    base: F,
    s: usize,
    modulus: Vec<F::Elem>,
    /// `y^{s+j} mod ext_modulus` for `j = 0..s-1`.
    reductions: Vec<Vec<F::Elem>>,
    order: u64,
}

impl<F: Field> ExtField<F> {
    /// Extension of degree `s ≥ 2` with the lexicographically smallest monic
    /// irreducible modulus (coefficients counted by their field encodings).
    pub fn new(base: &F, s: usize) -> Result<Self> {
        if s < 2 {
            return Err(Error::InvalidField("extension degree must be at least 2".into()));
        }
        let q = base.order();
        let total = (q as u128).checked_pow(s as u32).unwrap_or(u128::MAX);
        if total > super::fq::MAX_ORDER as u128 {
            return Err(Error::FieldTooLarge(total.min(u64::MAX as u128) as u64));
        }
        for c in 0..total as u64 {
            let mut coeffs = Vec::with_capacity(s + 1);
            let mut v = c;
            for _ in 0..s {
                coeffs.push(base.element(v % q));
                v /= q;
            }
            coeffs.push(base.one());
            if UniPoly::new(base, coeffs.clone()).is_irreducible()? {
                return Ok(Self::build(base, s, coeffs));
            }
        }
        Err(Error::Internal(format!(
            "no irreducible polynomial of degree {s} found over {}",
            base.name()
        )))
    }

    /// Extension with an explicit monic modulus of degree `s`.
    pub fn with_modulus(base: &F, modulus: Vec<F::Elem>) -> Result<Self> {
        let f = UniPoly::new(base, modulus.clone());
        let s = f.degree().ok_or(Error::NonMonicModulus(0))?;
        if s < 2 || modulus.len() != s + 1 || !base.is_one(&modulus[s]) {
            return Err(Error::NonMonicModulus(s));
        }
        if !f.is_irreducible()? {
            return Err(Error::ReducibleModulus);
        }
        Ok(Self::build(base, s, modulus))
    }

    fn build(base: &F, s: usize, modulus: Vec<F::Elem>) -> Self {
        // y^s = -(m_0 + ... + m_{s-1} y^{s-1})
        let mut cur: Vec<F::Elem> = modulus[..s].iter().map(|c| base.neg(c)).collect();
        let mut reductions = Vec::with_capacity(s - 1);
        for _ in 0..s.saturating_sub(1) {
            reductions.push(cur.clone());
            // multiply by y
            let top = cur[s - 1].clone();
            let mut next = vec![base.zero(); s];
            for i in 1..s {
                next[i] = cur[i - 1].clone();
            }
            for i in 0..s {
                let t = base.mul(&top, &base.neg(&modulus[i]));
                next[i] = base.add(&next[i], &t);
            }
            cur = next;
        }
        let order = base.order().pow(s as u32);
        ExtField(Arc::new(Inner {
            base: base.clone(),
            s,
            modulus,
            reductions,
            order,
        }))
    }

    /// Monic modulus over the base, lowest coefficient first.
    pub fn modulus(&self) -> &[F::Elem] {
        &self.0.modulus
    }
}

impl<F: Field> PartialEq for ExtField<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.base == other.0.base && self.0.modulus == other.0.modulus)
    }
}

impl<F: Field> fmt::Debug for ExtField<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}(modulus={:?})", self.0.base.name(), self.0.s, self.0.modulus)
    }
}

impl<F: Field> Ring for ExtField<F> {
    type Elem = Vec<F::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.0.base.zero(); self.0.s]
    }

    fn one(&self) -> Self::Elem {
        let mut v = self.zero();
        v[0] = self.0.base.one();
        v
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.0.base.add(x, y)).collect()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.0.base.sub(x, y)).collect()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.0.base.neg(x)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let base = &self.0.base;
        let s = self.0.s;
        let mut prod = vec![base.zero(); 2 * s - 1];
        for (i, x) in a.iter().enumerate() {
            if base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = base.add(&prod[i + j], &base.mul(x, y));
            }
        }
        let mut out: Vec<F::Elem> = prod[..s].to_vec();
        for (j, c) in prod[s..].iter().enumerate() {
            if base.is_zero(c) {
                continue;
            }
            for (i, r) in self.0.reductions[j].iter().enumerate() {
                out[i] = base.add(&out[i], &base.mul(c, r));
            }
        }
        out
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|x| self.0.base.is_zero(x))
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        let mut v = self.zero();
        v[0] = self.0.base.from_int(n);
        v
    }
}

impl<F: Field> Field for ExtField<F> {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(a) {
            None
        } else {
            Some(self.pow(a, self.0.order - 2))
        }
    }

    fn order(&self) -> u64 {
        self.0.order
    }

    fn characteristic(&self) -> u64 {
        self.0.base.characteristic()
    }

    fn element(&self, mut index: u64) -> Self::Elem {
        let q = self.0.base.order();
        (0..self.0.s)
            .map(|_| {
                let e = self.0.base.element(index % q);
                index /= q;
                e
            })
            .collect()
    }

    fn index_of(&self, a: &Self::Elem) -> u64 {
        let q = self.0.base.order();
        a.iter()
            .rev()
            .fold(0, |acc, c| acc * q + self.0.base.index_of(c))
    }

    fn name(&self) -> String {
        format!("{}^{}", self.0.base.name(), self.0.s)
    }
}

impl<F: Field> Extension for ExtField<F> {
    type Base = F;

    fn base(&self) -> &F {
        &self.0.base
    }

    fn degree(&self) -> usize {
        self.0.s
    }

    fn embed(&self, b: &F::Elem) -> Self::Elem {
        let mut v = self.zero();
        v[0] = b.clone();
        v
    }

    fn coords(&self, x: &Self::Elem) -> Vec<F::Elem> {
        x.clone()
    }

    fn from_coords(&self, c: &[F::Elem]) -> Self::Elem {
        c.to_vec()
    }

    fn generator(&self) -> Self::Elem {
        let mut v = self.zero();
        v[1] = self.0.base.one();
        v
    }
}
