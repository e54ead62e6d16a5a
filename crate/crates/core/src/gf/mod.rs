//! Finite fields: prime and prime-power fields (`Fq`), towers over a working
//! field (`ExtField`), and the ring/field traits the rest of the crate is
//! generic over.

mod element;
mod ext;
mod fq;

pub use element::FieldElement;
pub use ext::ExtField;
pub use fq::Fq;

use std::fmt::Debug;
use std::hash::Hash;

/// A commutative ring with an explicit context object.
///
/// Elements are plain values; all arithmetic goes through the context so that
/// field parameters (modulus, tables) live in one place.
pub trait Ring: Clone + Send + Sync {
    type Elem: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Image of an integer under the canonical map from Z.
    fn from_int(&self, n: i64) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// A finite field.
pub trait Field: Ring + PartialEq + Debug {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Number of elements.
    fn order(&self) -> u64;
    fn characteristic(&self) -> u64;
    /// Element with the given integer encoding, `index < order()`.
    fn element(&self, index: u64) -> Self::Elem;
    /// Integer encoding of an element (inverse of [`Field::element`]).
    fn index_of(&self, a: &Self::Elem) -> u64;
    /// Short human-readable name such as `F_4` or `F_4^3`.
    fn name(&self) -> String;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn elements(&self) -> impl Iterator<Item = Self::Elem> + '_ {
        (0..self.order()).map(move |i| self.element(i))
    }

    fn is_square(&self, a: &Self::Elem) -> bool {
        if self.is_zero(a) || self.characteristic() == 2 {
            return true;
        }
        self.is_one(&self.pow(a, (self.order() - 1) / 2))
    }

    /// A square root of `a`, if one exists in this field.
    ///
    /// Characteristic 2 returns the unique root `a^(q/2)`. Odd characteristic
    /// uses Tonelli-Shanks with the smallest-index non-residue and returns the
    /// root with the smaller encoding.
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        let q = self.order();
        if self.characteristic() == 2 {
            return Some(self.pow(a, q / 2));
        }
        if !self.is_square(a) {
            return None;
        }
        let mut s = 0u32;
        let mut t = q - 1;
        while t % 2 == 0 {
            t /= 2;
            s += 1;
        }
        let z = (1..q)
            .map(|i| self.element(i))
            .find(|e| !self.is_square(e))
            .expect("odd field has a non-residue");
        let mut m = s;
        let mut c = self.pow(&z, t);
        let mut tt = self.pow(a, t);
        let mut r = self.pow(a, t.div_ceil(2));
        while !self.is_one(&tt) {
            let mut i = 0;
            let mut probe = tt.clone();
            while !self.is_one(&probe) {
                probe = self.mul(&probe, &probe);
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = self.mul(&b, &b);
            }
            m = i;
            c = self.mul(&b, &b);
            tt = self.mul(&tt, &c);
            r = self.mul(&r, &b);
        }
        let other = self.neg(&r);
        if self.index_of(&other) < self.index_of(&r) {
            Some(other)
        } else {
            Some(r)
        }
    }
}

/// A field presented as a finite-dimensional extension of a base field with a
/// power basis `1, α, …, α^{s-1}`.
pub trait Extension: Field {
    type Base: Field;

    fn base(&self) -> &Self::Base;
    fn degree(&self) -> usize;
    fn embed(&self, b: &<Self::Base as Ring>::Elem) -> Self::Elem;
    /// Coordinates on the power basis.
    fn coords(&self, x: &Self::Elem) -> Vec<<Self::Base as Ring>::Elem>;
    fn from_coords(&self, c: &[<Self::Base as Ring>::Elem]) -> Self::Elem;
    /// The power-basis generator α.
    fn generator(&self) -> Self::Elem;

    /// `x^(|base|^i)`.
    fn frobenius(&self, x: &Self::Elem, i: usize) -> Self::Elem {
        let q = self.base().order();
        let mut y = x.clone();
        for _ in 0..(i % self.degree()) {
            y = self.pow(&y, q);
        }
        y
    }

    /// Base-field value of `x` when `x` lies in the embedded base.
    fn to_base(&self, x: &Self::Elem) -> Option<<Self::Base as Ring>::Elem> {
        let c = self.coords(x);
        if c[1..].iter().all(|v| self.base().is_zero(v)) {
            Some(c[0].clone())
        } else {
            None
        }
    }

    fn norm(&self, x: &Self::Elem) -> <Self::Base as Ring>::Elem {
        let mut acc = self.one();
        let mut y = x.clone();
        for _ in 0..self.degree() {
            acc = self.mul(&acc, &y);
            y = self.frobenius(&y, 1);
        }
        self.to_base(&acc).expect("norm lies in the base field")
    }

    fn trace(&self, x: &Self::Elem) -> <Self::Base as Ring>::Elem {
        let mut acc = self.zero();
        let mut y = x.clone();
        for _ in 0..self.degree() {
            acc = self.add(&acc, &y);
            y = self.frobenius(&y, 1);
        }
        self.to_base(&acc).expect("trace lies in the base field")
    }

    /// A base-field basis of the trace-zero hyperplane.
    fn trace_zero_basis(&self) -> Vec<Self::Elem> {
        let base = self.base();
        let s = self.degree();
        let traces: Vec<_> = (0..s)
            .map(|j| {
                let mut c = vec![base.zero(); s];
                c[j] = base.one();
                self.trace(&self.from_coords(&c))
            })
            .collect();
        // Kernel of the functional c -> sum traces[j] * c[j].
        let pivot = traces
            .iter()
            .position(|t| !base.is_zero(t))
            .expect("trace is surjective");
        let pinv = base.inv(&traces[pivot]).unwrap();
        (0..s)
            .filter(|&j| j != pivot)
            .map(|j| {
                let mut c = vec![base.zero(); s];
                c[j] = base.one();
                c[pivot] = base.neg(&base.mul(&traces[j], &pinv));
                self.from_coords(&c)
            })
            .collect()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

/// Splits a prime power `q = p^k` into `(p, k)`.
pub fn prime_power(q: u64) -> Option<(u64, usize)> {
    let f = prime_factors(q);
    if f.len() != 1 {
        return None;
    }
    let p = f[0];
    let mut k = 0;
    let mut m = q;
    while m > 1 {
        m /= p;
        k += 1;
    }
    Some((p, k))
}

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_factors(360), vec![2, 3, 5]);
    }
}
