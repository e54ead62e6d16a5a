//! Roots of univariate polynomials in a field or an extension of it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::UniPoly;
use crate::error::{Error, Result};
use crate::gf::{Extension, Field};

/// How roots are searched for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootSearch {
    /// Fields with at most this many elements are scanned exhaustively.
    pub exhaustive_cap: u64,
    /// Seed for equal-degree splitting on larger fields; `None` forbids it.
    pub seed: Option<u64>,
}

impl Default for RootSearch {
    fn default() -> Self {
        RootSearch {
            exhaustive_cap: 4096,
            seed: Some(0),
        }
    }
}

/// Distinct roots of `f` in its own coefficient field with multiplicities,
/// sorted by element encoding. The zero polynomial is rejected.
pub fn roots<F: Field>(f: &UniPoly<F>, search: &RootSearch) -> Result<Vec<(F::Elem, usize)>> {
    let field = f.field();
    if f.is_zero() {
        return Err(Error::ConstantPolynomial);
    }
    let candidates: Vec<F::Elem> = if field.order() <= search.exhaustive_cap {
        field.elements().filter(|x| field.is_zero(&f.eval(x))).collect()
    } else {
        let seed = search.seed.ok_or(Error::RandomizedDisabled)?;
        split_roots(f, seed)?
    };
    let mut out: Vec<(F::Elem, usize)> = candidates
        .into_iter()
        .map(|r| (r.clone(), multiplicity(f, &r)))
        .collect();
    out.sort_by_key(|(r, _)| field.index_of(r));
    Ok(out)
}

/// Roots of a base-field polynomial inside the extension `ext`.
pub fn roots_in<E: Extension>(
    f: &UniPoly<E::Base>,
    ext: &E,
    search: &RootSearch,
) -> Result<Vec<(E::Elem, usize)>> {
    roots(&f.lift(ext), search)
}

fn multiplicity<F: Field>(f: &UniPoly<F>, r: &F::Elem) -> usize {
    let lin = UniPoly::linear_root(f.field(), r);
    let mut g = f.clone();
    let mut m = 0;
    loop {
        let (q, rem) = g.divrem(&lin).unwrap();
        if !rem.is_zero() {
            return m;
        }
        m += 1;
        g = q;
    }
}

/// Distinct roots via `gcd(f, x^Q - x)` followed by seeded random splitting.
fn split_roots<F: Field>(f: &UniPoly<F>, seed: u64) -> Result<Vec<F::Elem>> {
    let field = f.field();
    let monic = f.monic();
    if monic.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let x = UniPoly::x(field);
    let xq = x.powmod(field.order(), &monic)?;
    let g = xq.sub(&x).gcd(&monic);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut stack = vec![g];
    while let Some(g) = stack.pop() {
        match g.degree() {
            None | Some(0) => {}
            Some(1) => out.push(field.neg(&g.coeff(0))),
            Some(_) => {
                let (a, b) = split_once(&g, &mut rng)?;
                stack.push(a);
                stack.push(b);
            }
        }
    }
    Ok(out)
}

/// Splits a squarefree product of distinct linear factors into two
/// nontrivial monic factors.
fn split_once<F: Field>(g: &UniPoly<F>, rng: &mut ChaCha8Rng) -> Result<(UniPoly<F>, UniPoly<F>)> {
    let field = g.field();
    let q = field.order();
    let deg = g.degree().unwrap();
    loop {
        let h = UniPoly::new(field, (0..deg).map(|_| field.element(rng.gen_range(0..q))).collect());
        if h.degree().unwrap_or(0) == 0 {
            continue;
        }
        let w = if field.characteristic() == 2 {
            // absolute trace map h + h^2 + ... + h^{2^{m-1}}
            let mut acc = UniPoly::zero(field);
            let mut t = h.rem(g)?;
            let mut size = 1u64;
            while size < q {
                acc = acc.add(&t);
                t = t.mulmod(&t, g)?;
                size *= 2;
            }
            acc
        } else {
            h.powmod((q - 1) / 2, g)?.sub(&UniPoly::one(field))
        };
        let d = w.gcd(g);
        if let Some(dd) = d.degree() {
            if dd > 0 && dd < deg {
                let other = g.divrem(&d)?.0.monic();
                return Ok((d, other));
            }
        }
    }
}
