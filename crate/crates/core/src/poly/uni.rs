use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{prime_factors, Extension, Field};

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone)]
pub struct UniPoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> PartialEq for UniPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<F: Field> Eq for UniPoly<F> {}

impl<F: Field> UniPoly<F> {
    pub fn new(field: &F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &F) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &F) -> Self {
        Self::new(field, vec![field.one()])
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// The polynomial `x`.
    pub fn x(field: &F) -> Self {
        Self::new(field, vec![field.zero(), field.one()])
    }

    /// `x - r`.
    pub fn linear_root(field: &F, r: &F::Elem) -> Self {
        Self::new(field, vec![field.neg(r), field.one()])
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.field.is_one(c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| f.add(&self.coeff(i), &other.coeff(i))).collect();
        Self::new(f, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| f.sub(&self.coeff(i), &other.coeff(i))).collect();
        Self::new(f, c)
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|c| self.field.neg(c)).collect())
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|c| self.field.mul(c, s)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Self::new(f, out)
    }

    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        let f = &self.field;
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(d.leading().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = f.mul(&rem[i], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            quot[i - dd] = c.clone();
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i - dd + j] = f.sub(&rem[i - dd + j], &f.mul(&c, dc));
            }
        }
        rem.truncate(dd);
        Ok((Self::new(f, quot), Self::new(f, rem)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.divrem(d)?.1)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&self.field.inv(l).unwrap()),
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).unwrap();
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn mulmod(&self, other: &Self, m: &Self) -> Result<Self> {
        self.mul(other).rem(m)
    }

    pub fn powmod(&self, mut e: u64, m: &Self) -> Result<Self> {
        let mut base = self.rem(m)?;
        let mut acc = Self::one(&self.field).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mulmod(&base, m)?;
            }
        }
        Ok(acc)
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(&f.from_int(i as i64), c))
            .collect();
        Self::new(f, c)
    }

    /// Coefficients pushed into an extension field.
    pub fn lift<E: Extension<Base = F>>(&self, ext: &E) -> UniPoly<E> {
        UniPoly::new(ext, self.coeffs.iter().map(|c| ext.embed(c)).collect())
    }

    /// Irreducibility over the coefficient field. `f` of degree `m` is
    /// irreducible iff `x^{q^m} ≡ x (mod f)` and `gcd(x^{q^{m/l}} - x, f) = 1`
    /// for every prime `l | m`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let m = match self.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(m) => m,
        };
        if m == 1 {
            return Ok(true);
        }
        let f = self.monic();
        let q = self.field.order();
        let x = Self::x(&self.field).rem(&f)?;
        // frob[k] = x^{q^k} mod f
        let mut frob = vec![x.clone()];
        for k in 1..=m {
            let next = frob[k - 1].powmod(q, &f)?;
            frob.push(next);
        }
        if frob[m] != x {
            return Ok(false);
        }
        for l in prime_factors(m as u64) {
            let h = frob[m / l as usize].sub(&x);
            if h.gcd(&f).degree() != Some(0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Monic `g` with `g^2 = self`, when `self` is monic of even degree and
    /// such a `g` exists.
    pub fn sqrt_monic(&self) -> Option<Self> {
        let f = &self.field;
        let n = self.degree()?;
        if n % 2 != 0 || !self.is_monic() {
            return None;
        }
        let m = n / 2;
        if f.characteristic() == 2 {
            let mut g = Vec::with_capacity(m + 1);
            for (i, c) in self.coeffs.iter().enumerate() {
                if i % 2 == 1 {
                    if !f.is_zero(c) {
                        return None;
                    }
                } else {
                    g.push(f.sqrt(c)?);
                }
            }
            return Some(Self::new(f, g));
        }
        // Solve for the coefficients of g from the top down.
        let two_inv = f.inv(&f.from_int(2))?;
        let mut g = vec![f.zero(); m + 1];
        g[m] = f.one();
        for k in (0..m).rev() {
            // coefficient of x^{m+k} in g^2 equals 2 g_k + Σ_{i+j=m+k, i,j>k} g_i g_j
            let mut s = f.zero();
            for i in (k + 1)..=m {
                let j = m + k - i;
                if j > k && j <= m {
                    s = f.add(&s, &f.mul(&g[i], &g[j]));
                }
            }
            g[k] = f.mul(&f.sub(&self.coeff(m + k), &s), &two_inv);
        }
        let g = Self::new(f, g);
        (g.mul(&g) == *self).then_some(g)
    }

    /// Text form using the given variable name, highest degree first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let idx = f.index_of(c);
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            parts.push(match (idx, mono.is_empty()) {
                (_, true) => idx.to_string(),
                (1, false) => mono,
                (_, false) => format!("{idx}*{mono}"),
            });
        }
        parts.join(" + ")
    }
}

impl<F: Field> fmt::Debug for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("y"))
    }
}

impl<F: Field> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("y"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{Fq, Ring};

    fn poly(f: &Fq, c: &[i64]) -> UniPoly<Fq> {
        UniPoly::new(f, c.iter().map(|&v| f.from_int(v)).collect())
    }

    #[test]
    fn irreducibility_examples() {
        let f2 = Fq::new(2, 1, None).unwrap();
        let f3 = Fq::new(3, 1, None).unwrap();
        assert!(poly(&f2, &[1, 1, 1]).is_irreducible().unwrap());
        assert!(!poly(&f2, &[1, 0, 1]).is_irreducible().unwrap());
        // x^6 - x^2 + 1 over F_3
        assert!(poly(&f3, &[1, 0, -1, 0, 0, 0, 1]).is_irreducible().unwrap());
        assert_eq!(poly(&f3, &[2]).is_irreducible(), Err(Error::ConstantPolynomial));
        assert_eq!(UniPoly::zero(&f3).is_irreducible(), Err(Error::ConstantPolynomial));
    }

    /// Every monic polynomial of degree ≤ 6 over F_2 and F_3 against
    /// trial division by all monic polynomials of degree ≤ deg/2.
    #[test]
    fn irreducibility_matches_trial_division() {
        for (p, max_deg) in [(2u64, 6usize), (3, 6)] {
            let f = Fq::new(p, 1, None).unwrap();
            let monics = |deg: usize| -> Vec<UniPoly<Fq>> {
                (0..p.pow(deg as u32))
                    .map(|mut c| {
                        let mut v: Vec<u32> = (0..deg)
                            .map(|_| {
                                let d = (c % p) as u32;
                                c /= p;
                                d
                            })
                            .collect();
                        v.push(1);
                        UniPoly::new(&f, v)
                    })
                    .collect()
            };
            for deg in 1..=max_deg {
                for g in monics(deg) {
                    let divisible = (1..=deg / 2)
                        .flat_map(&monics)
                        .any(|d| g.rem(&d).unwrap().is_zero());
                    assert_eq!(g.is_irreducible().unwrap(), !divisible, "{g:?}");
                }
            }
        }
    }

    #[test]
    fn arithmetic() {
        let f7 = Fq::new(7, 1, None).unwrap();
        let a = poly(&f7, &[1, 2, 3]);
        let b = poly(&f7, &[5, 1]);
        let (q, r) = a.mul(&b).add(&poly(&f7, &[3])).divrem(&b).unwrap();
        assert_eq!(q, a);
        assert_eq!(r, poly(&f7, &[3]));
        assert_eq!(a.eval(&2), f7.from_int(1 + 4 + 12));
        assert_eq!(poly(&f7, &[-1, 0, 1]).gcd(&poly(&f7, &[-1, 1])), poly(&f7, &[-1, 1]));
        assert_eq!(a.render("y"), "3*y^2 + 2*y + 1");
    }

    #[test]
    fn square_roots() {
        let f5 = Fq::new(5, 1, None).unwrap();
        let g = poly(&f5, &[2, 3, 1]);
        assert_eq!(g.mul(&g).sqrt_monic(), Some(g.clone()));
        assert_eq!(g.mul(&poly(&f5, &[1, 0, 1])).sqrt_monic(), None);
        let f4 = Fq::new(2, 2, None).unwrap();
        let h = UniPoly::new(&f4, vec![3, 2, 1]);
        assert_eq!(h.mul(&h).sqrt_monic(), Some(h));
    }
}
