use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gf::{Field, Ring};
use crate::matrix::{Matrix, MatrixSubspace};
use crate::poly::{MultiPoly, PolyRing, UniPoly};

/// Largest size handled by subset expansion; larger inputs use Berkowitz.
const EXPANSION_LIMIT: usize = 16;

/// Determinant over any commutative ring, without division.
///
/// Sizes up to 16 use Laplace expansion along rows with minors memoized by
/// the set of columns already used; larger sizes use Berkowitz.
pub fn det_generic<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Result<R::Elem> {
    if !a.is_square() {
        return Err(Error::Shape("determinant of a non-square matrix".into()));
    }
    let n = a.rows();
    if n > EXPANSION_LIMIT {
        let c = berkowitz(ring, a)?;
        let last = c[n].clone();
        return Ok(if n % 2 == 1 { ring.neg(&last) } else { last });
    }
    // level[mask] = signed sum over placements of rows 0..|mask| into `mask`
    let mut level: HashMap<u32, R::Elem> = HashMap::from([(0, ring.one())]);
    for r in 0..n {
        let mut next: HashMap<u32, R::Elem> = HashMap::new();
        for (mask, val) in &level {
            for j in 0..n {
                if mask & (1 << j) != 0 {
                    continue;
                }
                let e = a.get(r, j);
                if ring.is_zero(e) {
                    continue;
                }
                let mut term = ring.mul(val, e);
                if (mask >> (j + 1)).count_ones() % 2 == 1 {
                    term = ring.neg(&term);
                }
                let slot = next.entry(mask | (1 << j)).or_insert_with(|| ring.zero());
                *slot = ring.add(slot, &term);
            }
        }
        next.retain(|_, v| !ring.is_zero(v));
        level = next;
    }
    Ok(level.remove(&((1u32 << n) - 1)).unwrap_or_else(|| ring.zero()))
}

/// Coefficients of `det(yI - A)`, highest degree first, by Berkowitz's
/// division-free recurrence.
pub fn berkowitz<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Result<Vec<R::Elem>> {
    if !a.is_square() {
        return Err(Error::Shape("characteristic polynomial of a non-square matrix".into()));
    }
    let n = a.rows();
    let mut v = vec![ring.one()];
    for r in 0..n {
        // Toeplitz column: 1, -a_rr, -R C, -R M C, …, -R M^{r-1} C
        let mut t = vec![ring.one(), ring.neg(a.get(r, r))];
        let mut col: Vec<R::Elem> = (0..r).map(|i| a.get(i, r).clone()).collect();
        for _ in 0..r {
            let rc = (0..r).fold(ring.zero(), |acc, i| ring.add(&acc, &ring.mul(a.get(r, i), &col[i])));
            t.push(ring.neg(&rc));
            col = (0..r)
                .map(|i| (0..r).fold(ring.zero(), |acc, k| ring.add(&acc, &ring.mul(a.get(i, k), &col[k]))))
                .collect();
        }
        let mut w = Vec::with_capacity(r + 2);
        for i in 0..(r + 2) {
            let mut s = ring.zero();
            for (k, vk) in v.iter().enumerate() {
                if i >= k {
                    s = ring.add(&s, &ring.mul(&t[i - k], vk));
                }
            }
            w.push(s);
        }
        v = w;
    }
    Ok(v)
}

/// `det(yI - A)` as a monic polynomial.
pub fn char_poly<F: Field>(field: &F, a: &Matrix<F::Elem>) -> Result<UniPoly<F>> {
    let mut c = berkowitz(field, a)?;
    c.reverse();
    Ok(UniPoly::new(field, c))
}

/// Pfaffian of a skew matrix of even size, by first-row expansion with
/// minors memoized on the set of remaining indices. The standard symplectic
/// block form has Pfaffian 1.
pub fn pfaffian_generic<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Result<R::Elem> {
    if !a.is_square() || a.rows() % 2 != 0 {
        return Err(Error::Shape("Pfaffian needs an even square matrix".into()));
    }
    if !a.is_skew(ring) {
        return Err(Error::NotSkew);
    }
    let n = a.rows();
    if n > 30 {
        return Err(Error::Shape("Pfaffian size above 30".into()));
    }
    let mut memo = HashMap::new();
    Ok(pf_rec(ring, a, (1u32 << n) - 1, &mut memo))
}

fn pf_rec<R: Ring>(ring: &R, a: &Matrix<R::Elem>, set: u32, memo: &mut HashMap<u32, R::Elem>) -> R::Elem {
    if set == 0 {
        return ring.one();
    }
    if let Some(v) = memo.get(&set) {
        return v.clone();
    }
    let i = set.trailing_zeros() as usize;
    let rest = set & !(1 << i);
    let mut acc = ring.zero();
    let mut pos = 0;
    let mut bits = rest;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let e = a.get(i, j);
        if !ring.is_zero(e) {
            let term = ring.mul(e, &pf_rec(ring, a, rest & !(1 << j), memo));
            acc = if pos % 2 == 0 { ring.add(&acc, &term) } else { ring.sub(&acc, &term) };
        }
        pos += 1;
    }
    memo.insert(set, acc.clone());
    acc
}

/// `x_1 M_1 + … + x_d M_d` with polynomial entries.
pub fn symbolic_matrix<F: Field>(sub: &MatrixSubspace<F>) -> Matrix<MultiPoly<F>> {
    let field = sub.field();
    let d = sub.dim();
    let (r, c) = sub.shape();
    let mut m = Matrix::filled(r, c, MultiPoly::zero(field, d));
    for i in 0..r {
        for j in 0..c {
            let terms = sub.basis().iter().enumerate().map(|(k, b)| {
                let mut e = vec![0; d];
                e[k] = 1;
                (e, b.get(i, j).clone())
            });
            m.set(i, j, MultiPoly::from_terms(field, d, terms).expect("arity"));
        }
    }
    m
}

/// The determinantal polynomial `det(x_1 M_1 + … + x_d M_d)`.
pub fn det_poly<F: Field>(sub: &MatrixSubspace<F>) -> Result<MultiPoly<F>> {
    sub.require_square()?;
    let ring = PolyRing::new(sub.field(), sub.dim());
    det_generic(&ring, &symbolic_matrix(sub))
}

/// Pfaffian `g` of a skew subspace of even size, with `g^2 = det_poly`.
pub fn pfaffian<F: Field>(sub: &MatrixSubspace<F>) -> Result<MultiPoly<F>> {
    let n = sub.require_square()?;
    if n % 2 != 0 {
        return Err(Error::Shape(format!("Pfaffian of odd size {n}")));
    }
    if !sub.is_skew() {
        return Err(Error::NotSkew);
    }
    let ring = PolyRing::new(sub.field(), sub.dim());
    pfaffian_generic(&ring, &symbolic_matrix(sub))
}
