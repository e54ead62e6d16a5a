use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use super::UniPoly;
use crate::error::{Error, Result};
use crate::gf::{Extension, Field, Ring};

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then lexicographically with `x1` most significant.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Homogeneous(usize),
    Inhomogeneous,
}

/// Sparse polynomial in `nvars` variables over `F`. No stored coefficient is
/// zero.
#[derive(Clone)]
pub struct MultiPoly<F: Field> {
    field: F,
    nvars: usize,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> PartialEq for MultiPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}

impl<F: Field> Eq for MultiPoly<F> {}

impl<F: Field> Ord for MultiPoly<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.nvars
            .cmp(&other.nvars)
            .then_with(|| self.terms.cmp(&other.terms))
    }
}

impl<F: Field> PartialOrd for MultiPoly<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<F: Field> Hash for MultiPoly<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.nvars.hash(state);
        self.terms.hash(state);
    }
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(field: &F, nvars: usize) -> Self {
        MultiPoly {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &F, nvars: usize, c: F::Elem) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(field: &F, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    /// The variable `x_{i+1}` (0-based index `i`).
    pub fn var(field: &F, nvars: usize, i: usize) -> Result<Self> {
        if i >= nvars {
            return Err(Error::IndexOutOfRange { index: i, len: nvars });
        }
        let mut p = Self::zero(field, nvars);
        p.add_term(Monomial::var(nvars, i), field.one());
        Ok(p)
    }

    /// Sums the given terms; exponent vectors must have length `nvars`.
    pub fn from_terms<I>(field: &F, nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, F::Elem)>,
    {
        let mut p = Self::zero(field, nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::Arity {
                    expected: nvars,
                    got: e.len(),
                });
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: F::Elem) {
        debug_assert_eq!(m.0.len(), self.nvars);
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = self.field.add(v, &c);
                if self.field.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> F::Elem {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &F::Elem)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => Homogeneity::Zero,
            Some(d) => {
                if degs.all(|e| e == d) {
                    Homogeneity::Homogeneous(d)
                } else {
                    Homogeneity::Inhomogeneous
                }
            }
        }
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::Arity {
                expected: self.nvars,
                got: other.nvars,
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.field, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), self.field.mul(c1, c2));
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| self.field.neg(c))
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        if self.field.is_zero(s) {
            return Self::zero(&self.field, self.nvars);
        }
        self.map_coeffs(|c| self.field.mul(c, s))
    }

    fn map_coeffs(&self, f: impl Fn(&F::Elem) -> F::Elem) -> Self {
        MultiPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f(c))).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field, self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    pub fn eval(&self, point: &[F::Elem]) -> Result<F::Elem> {
        if point.len() != self.nvars {
            return Err(Error::Arity {
                expected: self.nvars,
                got: point.len(),
            });
        }
        Ok(eval_terms(&self.field, &self.terms, point, |c| c.clone()))
    }

    /// Evaluation at a point with coordinates in an extension field.
    pub fn eval_ext<E: Extension<Base = F>>(&self, ext: &E, point: &[E::Elem]) -> Result<E::Elem> {
        if point.len() != self.nvars {
            return Err(Error::Arity {
                expected: self.nvars,
                got: point.len(),
            });
        }
        Ok(eval_terms(ext, &self.terms, point, |c| ext.embed(c)))
    }

    /// Replaces `x_i` by `images[i]`; all images share one arity.
    pub fn substitute(&self, images: &[MultiPoly<F>]) -> Result<MultiPoly<F>> {
        if images.len() != self.nvars {
            return Err(Error::Arity {
                expected: self.nvars,
                got: images.len(),
            });
        }
        let m = images.first().map_or(0, |p| p.nvars);
        if let Some(bad) = images.iter().find(|p| p.nvars != m) {
            return Err(Error::Arity {
                expected: m,
                got: bad.nvars,
            });
        }
        let mut powers: Vec<Vec<MultiPoly<F>>> = images
            .iter()
            .map(|p| vec![Self::one(&self.field, m), p.clone()])
            .collect();
        let mut out = Self::zero(&self.field, m);
        for (mono, c) in &self.terms {
            let mut t = Self::constant(&self.field, m, c.clone());
            for (i, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul_unchecked(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul_unchecked(&powers[i][e as usize]);
            }
            out = out.add_unchecked(&t);
        }
        Ok(out)
    }

    /// Coefficients pushed into an extension field.
    pub fn lift<E: Extension<Base = F>>(&self, ext: &E) -> MultiPoly<E> {
        self.map_field(ext, |c| ext.embed(c))
    }

    pub fn map_field<G: Field>(&self, g: &G, f: impl Fn(&F::Elem) -> G::Elem) -> MultiPoly<G> {
        let mut out = MultiPoly::zero(g, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Sets every variable except `x_i` and `x_j` to zero and renames those two
    /// to `x1`, `x2`.
    pub fn restrict_pair(&self, i: usize, j: usize) -> Result<MultiPoly<F>> {
        if i == j {
            return Err(Error::Shape(format!("restriction to x{} twice", i + 1)));
        }
        self.restrict(&[i, j])
    }

    /// Keeps only the listed variables (in that order), zeroing the others.
    pub fn restrict(&self, keep: &[usize]) -> Result<MultiPoly<F>> {
        if let Some(&bad) = keep.iter().find(|&&k| k >= self.nvars) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                len: self.nvars,
            });
        }
        let mut out = Self::zero(&self.field, keep.len());
        for (m, c) in &self.terms {
            let kept: u32 = keep.iter().map(|&k| m.0[k]).sum();
            if kept as usize != m.degree() {
                continue;
            }
            out.add_term(Monomial(keep.iter().map(|&k| m.0[k]).collect()), c.clone());
        }
        Ok(out)
    }

    /// Univariate polynomial in `x_var` when no other variable occurs.
    pub fn to_univariate(&self, var: usize) -> Option<UniPoly<F>> {
        let mut coeffs = Vec::new();
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().any(|(i, &e)| i != var && e != 0) {
                return None;
            }
            let e = m.0[var] as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, self.field.zero());
            }
            coeffs[e] = c.clone();
        }
        Some(UniPoly::new(&self.field, coeffs))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Option<Self>> {
        self.check_arity(d)?;
        let (dm, dc) = d.leading_term().ok_or(Error::DivisionByZero)?;
        let dinv = self.field.inv(dc).unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.field, self.nvars);
        while let Some((rm, rc)) = rem.leading_term() {
            let Some(tm) = rm.div(dm) else {
                return Ok(None);
            };
            let mut t = Self::zero(&self.field, self.nvars);
            t.add_term(tm, self.field.mul(rc, &dinv));
            rem = rem.add_unchecked(&t.mul_unchecked(d).neg());
            quot = quot.add_unchecked(&t);
        }
        Ok(Some(quot))
    }

    /// A polynomial `g` with `g^2 = self`, if one exists.
    ///
    /// Odd characteristic peels leading terms: with `g` built so far and
    /// residual `R = self - g^2`, the next term is `LT(R) / (2 LT(g))`, and
    /// `LT(R)` strictly decreases. Characteristic 2 halves every exponent.
    pub fn sqrt(&self) -> Option<Self> {
        let f = &self.field;
        if self.is_zero() {
            return Some(self.clone());
        }
        if f.characteristic() == 2 {
            let mut out = Self::zero(f, self.nvars);
            for (m, c) in &self.terms {
                if m.0.iter().any(|e| e % 2 != 0) {
                    return None;
                }
                out.add_term(Monomial(m.0.iter().map(|e| e / 2).collect()), f.sqrt(c)?);
            }
            return Some(out);
        }
        let (lm, lc) = self.leading_term()?;
        let half: Vec<u32> = lm
            .0
            .iter()
            .map(|e| (e % 2 == 0).then_some(e / 2))
            .collect::<Option<_>>()?;
        let mut g = Self::zero(f, self.nvars);
        g.add_term(Monomial(half), f.sqrt(lc)?);
        let (gm, gc) = g.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let denom = f.inv(&f.mul(&f.from_int(2), &gc))?;
        let mut rem = self.add_unchecked(&g.mul_unchecked(&g).neg());
        while let Some((rm, rc)) = rem.leading_term() {
            let tm = rm.div(&gm)?;
            if tm >= gm {
                return None;
            }
            let mut t = Self::zero(f, self.nvars);
            t.add_term(tm, f.mul(rc, &denom));
            // (g + t)^2 - g^2 = 2 g t + t^2
            let two_g_plus_t = g.scale(&f.from_int(2)).add_unchecked(&t);
            rem = rem.add_unchecked(&two_g_plus_t.mul_unchecked(&t).neg());
            g = g.add_unchecked(&t);
        }
        Some(g)
    }

    /// Text form: terms in decreasing graded-lex order joined by ` + `,
    /// coefficients as field encodings (omitted when 1), `^1` omitted.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            let idx = self.field.index_of(c);
            if idx != 1 || m.degree() == 0 {
                factors.push(idx.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{}", i + 1, e)),
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }
}

fn eval_terms<R: Ring, C>(
    ring: &R,
    terms: &BTreeMap<Monomial, C>,
    point: &[R::Elem],
    coeff: impl Fn(&C) -> R::Elem,
) -> R::Elem {
    let mut acc = ring.zero();
    for (m, c) in terms {
        let mut t = coeff(c);
        for (x, &e) in point.iter().zip(&m.0) {
            for _ in 0..e {
                t = ring.mul(&t, x);
            }
        }
        acc = ring.add(&acc, &t);
    }
    acc
}

impl<F: Field> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<F: Field> fmt::Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ∈ {}[x1..x{}]", self.render(), self.field.name(), self.nvars)
    }
}

/// The polynomial ring `F[x1, …, xd]` as a [`Ring`] context, so that generic
/// matrix routines can run over polynomial entries.
#[derive(Clone, Debug)]
pub struct PolyRing<F: Field> {
    field: F,
    nvars: usize,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: &F, nvars: usize) -> Self {
        PolyRing {
            field: field.clone(),
            nvars,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn var(&self, i: usize) -> Result<MultiPoly<F>> {
        MultiPoly::var(&self.field, self.nvars, i)
    }

    pub fn constant(&self, c: F::Elem) -> MultiPoly<F> {
        MultiPoly::constant(&self.field, self.nvars, c)
    }
}

impl<F: Field> Ring for PolyRing<F> {
    type Elem = MultiPoly<F>;

    fn zero(&self) -> Self::Elem {
        MultiPoly::zero(&self.field, self.nvars)
    }
    fn one(&self) -> Self::Elem {
        MultiPoly::one(&self.field, self.nvars)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add_unchecked(b)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add_unchecked(&b.neg())
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul_unchecked(b)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        self.constant(self.field.from_int(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Fq;

    fn x(f: &Fq, n: usize, i: usize) -> MultiPoly<Fq> {
        MultiPoly::var(f, n, i).unwrap()
    }

    #[test]
    fn rendering() {
        let f2 = Fq::new(2, 1, None).unwrap();
        let (x1, x2) = (x(&f2, 2, 0), x(&f2, 2, 1));
        let p = x1.mul(&x1).unwrap().mul(&x2).unwrap();
        let q = x1.mul(&x2).unwrap().mul(&x2).unwrap();
        assert_eq!(p.add(&q).unwrap().render(), "x1^2*x2 + x1*x2^2");
        assert_eq!(MultiPoly::zero(&f2, 2).render(), "0");
        let f7 = Fq::new(7, 1, None).unwrap();
        let r = MultiPoly::from_terms(&f7, 3, [(vec![0, 3, 0], 3), (vec![0, 0, 3], 2), (vec![0; 3], 5)]).unwrap();
        assert_eq!(r.render(), "3*x2^3 + 2*x3^3 + 5");
    }

    #[test]
    fn grlex_order() {
        let a = Monomial(vec![2, 0]);
        let b = Monomial(vec![1, 1]);
        let c = Monomial(vec![0, 3]);
        assert!(a > b);
        assert!(c > a);
    }

    #[test]
    fn arity_errors() {
        let f3 = Fq::new(3, 1, None).unwrap();
        let a = x(&f3, 2, 0);
        let b = x(&f3, 3, 0);
        assert_eq!(a.add(&b), Err(Error::Arity { expected: 2, got: 3 }));
        assert!(a.eval(&[1]).is_err());
        assert!(a.substitute(&[b.clone()]).is_err());
        assert!(MultiPoly::var(&f3, 2, 2).is_err());
    }

    #[test]
    fn substitution_and_division() {
        let f5 = Fq::new(5, 1, None).unwrap();
        let (x1, x2) = (x(&f5, 2, 0), x(&f5, 2, 1));
        let p = x1.mul(&x1).unwrap().sub(&x2.mul(&x2).unwrap()).unwrap();
        // x1 -> x1 + x2, x2 -> x1 - x2 gives 4 x1 x2
        let s = p
            .substitute(&[x1.add(&x2).unwrap(), x1.sub(&x2).unwrap()])
            .unwrap();
        assert_eq!(s, x1.mul(&x2).unwrap().scale(&4));
        let d = x1.sub(&x2).unwrap();
        assert_eq!(p.div_exact(&d).unwrap(), Some(x1.add(&x2).unwrap()));
        assert_eq!(p.div_exact(&x1).unwrap(), None);
    }

    #[test]
    fn square_roots() {
        for (p, k) in [(3u64, 1usize), (5, 1), (2, 1), (2, 2), (3, 2)] {
            let f = Fq::new(p, k, None).unwrap();
            let (x1, x2, x3) = (x(&f, 3, 0), x(&f, 3, 1), x(&f, 3, 2));
            let g = x1
                .mul(&x2)
                .unwrap()
                .add(&x3.scale(&f.element(f.order() - 1)).mul(&x3).unwrap())
                .unwrap()
                .add(&x1.scale(&f.element(1)).mul(&x3).unwrap())
                .unwrap();
            let sq = g.mul(&g).unwrap();
            let r = sq.sqrt().expect("square has a root");
            assert_eq!(r.mul(&r).unwrap(), sq);
            assert_eq!(x1.mul(&x2).unwrap().sqrt(), None);
        }
    }
}
