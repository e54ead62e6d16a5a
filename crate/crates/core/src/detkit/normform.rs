//! Detection of polynomials of the shape `λ · N(ω_1 x_1 + … + ω_d x_d)`,
//! where `N` is the norm from `F_{q^r}` to `F_q` and `r` is prime.

use serde::Serialize;

use super::census::{affine_size, point_at};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::gf::{is_prime, ExtField, Extension, Field, Ring};
use crate::poly::{roots_in, Homogeneity, MultiPoly, UniPoly};

type ExtElem<F> = <ExtField<F> as Ring>::Elem;

/// `P = λ · Π_{i<r} σ^i(Σ ω_j x_j)` with the first nonzero `ω_j` equal to 1.
#[derive(Clone, Debug)]
pub struct NormFormWitness<F: Field> {
    pub r: usize,
    pub ext: ExtField<F>,
    pub lambda: F::Elem,
    pub omega: Vec<ExtElem<F>>,
}

/// Serializable form: elements as integer encodings, `ω_j` as power-basis
/// coordinate lists over the base field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessRecord {
    pub r: usize,
    pub ext_modulus: Vec<u64>,
    pub lambda: u64,
    pub omega: Vec<Vec<u64>>,
    /// Some `ω_j` lies outside `F_q`, so `P` is irreducible over `F_q`.
    pub irreducible: bool,
}

impl<F: Field> NormFormWitness<F> {
    pub fn field(&self) -> &F {
        self.ext.base()
    }

    /// True when some `ω_j ∉ F_q`; then the linear factor is not defined over
    /// `F_q` and, `r` being prime, `P` is irreducible over `F_q`.
    pub fn irreducible(&self) -> bool {
        self.omega.iter().any(|w| self.ext.to_base(w).is_none())
    }

    /// The product `λ Π σ^i(Σ ω_j x_j)` expanded over `F_q`.
    pub fn expand(&self) -> MultiPoly<F> {
        norm_product(&self.ext, &self.lambda, &self.omega).expect("Galois-stable product")
    }

    pub fn record(&self) -> WitnessRecord {
        let base = self.field();
        WitnessRecord {
            r: self.r,
            ext_modulus: self.ext.modulus().iter().map(|c| base.index_of(c)).collect(),
            lambda: base.index_of(&self.lambda),
            omega: self
                .omega
                .iter()
                .map(|w| self.ext.coords(w).iter().map(|c| base.index_of(c)).collect())
                .collect(),
            irreducible: self.irreducible(),
        }
    }
}

/// `λ Π_{i<r} σ^i(Σ ω_j x_j)`, or `None` if some coefficient falls outside `F_q`.
pub fn norm_product<F: Field>(
    ext: &ExtField<F>,
    lambda: &F::Elem,
    omega: &[ExtElem<F>],
) -> Option<MultiPoly<F>> {
    let d = omega.len();
    let mut acc = MultiPoly::constant(ext, d, ext.embed(lambda));
    for i in 0..ext.degree() {
        let lin = MultiPoly::from_terms(
            ext,
            d,
            omega.iter().enumerate().map(|(j, w)| {
                let mut e = vec![0; d];
                e[j] = 1;
                (e, ext.frobenius(w, i))
            }),
        )
        .expect("arity");
        acc = acc.mul(&lin).expect("arity");
    }
    if acc.terms().any(|(_, c)| ext.to_base(c).is_none()) {
        return None;
    }
    Some(acc.map_field(ext.base(), |c| ext.to_base(c).unwrap()))
}

/// Searches for a norm-form factorization of a homogeneous `P` of prime
/// degree `r`. A returned witness always reproduces `P` exactly.
pub fn norm_form_witness<F: Field>(
    p: &MultiPoly<F>,
    r: usize,
    cfg: &Config,
) -> Result<Option<NormFormWitness<F>>> {
    if !is_prime(r as u64) {
        return Err(Error::NonPrimeDegree(r));
    }
    match p.homogeneity() {
        Homogeneity::Homogeneous(n) if n == r => {}
        Homogeneity::Homogeneous(n) => return Err(Error::DegreeMismatch { expected: r, got: n }),
        Homogeneity::Zero => return Err(Error::DegreeMismatch { expected: r, got: 0 }),
        Homogeneity::Inhomogeneous => return Err(Error::NotHomogeneous),
    }
    let field = p.field();
    let d = p.nvars();
    let ext = ExtField::new(field, r)?;
    let power = |j: usize| {
        let mut e = vec![0u32; d];
        e[j] = r as u32;
        p.coefficient(&e)
    };
    if let Some(j0) = (0..d).find(|&j| !field.is_zero(&power(j))) {
        return witness_with_pivot(p, &ext, j0, cfg);
    }
    // No pure power term: move a point with P(v) ≠ 0 to the first axis.
    let total = affine_size(field.order(), d, cfg.affine_cap)?;
    let Some(v) = (1..total)
        .map(|i| point_at(field, d, i))
        .find(|v| !field.is_zero(&p.eval(v).expect("arity")))
    else {
        // a norm form vanishing on all of F_q^d is zero
        return Ok(None);
    };
    let lead = v.iter().position(|c| !field.is_zero(c)).unwrap();
    // x = G y with G's first column v and unit columns for the other axes
    let mut g = vec![vec![field.zero(); d]; d];
    let mut col = 1;
    for k in 0..d {
        g[k][0] = v[k].clone();
        if k != lead {
            g[k][col] = field.one();
            col += 1;
        }
    }
    let images: Vec<MultiPoly<F>> = (0..d)
        .map(|k| {
            MultiPoly::from_terms(
                field,
                d,
                (0..d).map(|c| {
                    let mut e = vec![0; d];
                    e[c] = 1;
                    (e, g[k][c].clone())
                }),
            )
            .expect("arity")
        })
        .collect();
    let moved = p.substitute(&images)?;
    let Some(w) = witness_with_pivot(&moved, &ext, 0, cfg)? else {
        return Ok(None);
    };
    // ω_x = G^{-T} ω_y; recover through the inverse of G
    let gm = crate::matrix::Matrix::from_rows(g).expect("square");
    let ginv = gm.inverse(field)?;
    let mut omega: Vec<_> = (0..d)
        .map(|j| {
            (0..d).fold(ext.zero(), |acc, k| {
                ext.add(&acc, &ext.mul(&w.omega[k], &ext.embed(ginv.get(k, j))))
            })
        })
        .collect();
    let first = omega.iter().position(|c| !ext.is_zero(c)).unwrap();
    let c = omega[first].clone();
    let cinv = ext.inv(&c).unwrap();
    omega.iter_mut().for_each(|o| *o = ext.mul(o, &cinv));
    let lambda = field.mul(&w.lambda, &ext.norm(&c));
    finish(p, ext, lambda, omega)
}

fn finish<F: Field>(
    p: &MultiPoly<F>,
    ext: ExtField<F>,
    lambda: F::Elem,
    omega: Vec<ExtElem<F>>,
) -> Result<Option<NormFormWitness<F>>> {
    match norm_product(&ext, &lambda, &omega) {
        Some(prod) if &prod == p => Ok(Some(NormFormWitness {
            r: ext.degree(),
            ext,
            lambda,
            omega,
        })),
        _ => Ok(None),
    }
}

/// Candidate values of `ω_j` from the roots of `λ Π (t + σ^i(ω_j))`, the
/// restriction of `P` to `(x_{j0}, x_j)` at `x_j = 1`.
fn candidates<F: Field>(
    p: &MultiPoly<F>,
    ext: &ExtField<F>,
    j0: usize,
    j: usize,
    cfg: &Config,
) -> Result<Option<Vec<ExtElem<F>>>> {
    let r = ext.degree();
    let field = p.field();
    let b = p.restrict_pair(j0, j)?;
    let coeffs: Vec<F::Elem> = (0..=r).map(|a| b.coefficient(&[a as u32, (r - a) as u32])).collect();
    let u = UniPoly::new(field, coeffs);
    let rts = roots_in(&u, ext, &cfg.root_search())?;
    let simple = rts.len() == r && rts.iter().all(|(_, m)| *m == 1);
    let repeated = rts.len() == 1 && rts[0].1 == r;
    if !simple && !repeated {
        return Ok(None);
    }
    Ok(Some(rts.into_iter().map(|(x, _)| ext.neg(&x)).collect()))
}

fn witness_with_pivot<F: Field>(
    p: &MultiPoly<F>,
    ext: &ExtField<F>,
    j0: usize,
    cfg: &Config,
) -> Result<Option<NormFormWitness<F>>> {
    let d = p.nvars();
    let mut e = vec![0u32; d];
    e[j0] = ext.degree() as u32;
    let lambda = p.coefficient(&e);
    let mut omega = vec![ext.zero(); d];
    omega[j0] = ext.one();
    // first index whose ω is determined only up to Frobenius; fixed freely
    let mut anchor: Option<usize> = None;
    for j in 0..d {
        if j == j0 {
            continue;
        }
        let Some(cands) = candidates(p, ext, j0, j, cfg)? else {
            return Ok(None);
        };
        if cands.len() == 1 {
            omega[j] = cands[0].clone();
            continue;
        }
        let Some(j1) = anchor else {
            anchor = Some(j);
            omega[j] = cands[0].clone();
            continue;
        };
        let target = p.restrict(&[j0, j1, j])?;
        let found = cands.into_iter().find(|c| {
            let trial = [ext.one(), omega[j1].clone(), c.clone()];
            norm_product(ext, &lambda, &trial).as_ref() == Some(&target)
        });
        match found {
            Some(c) => omega[j] = c,
            None => return Ok(None),
        }
    }
    finish(p, ext.clone(), lambda, omega)
}
