use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::poly::{Homogeneity, MultiPoly};

/// Exact zero counts of a polynomial over `F_q^d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroCensus {
    pub q: u64,
    pub d: usize,
    /// Total degree when homogeneous and nonzero.
    pub degree: Option<usize>,
    #[serde(rename = "N_affine")]
    pub n_affine: Option<u64>,
    #[serde(rename = "N_projective")]
    pub n_projective: Option<u64>,
}

impl ZeroCensus {
    /// Affine zeros other than the origin.
    pub fn nontrivial(&self) -> Option<u64> {
        self.n_affine.map(|n| n - 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CensusMode {
    Affine,
    Projective,
    Both,
}

/// Term list prepared for repeated evaluation.
struct Compiled<F: Field> {
    field: F,
    terms: Vec<(F::Elem, Vec<(usize, u64)>)>,
}

impl<F: Field> Compiled<F> {
    fn new(p: &MultiPoly<F>) -> Self {
        let terms = p
            .terms()
            .map(|(m, c)| {
                let exps = m
                    .exponents()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| (i, e as u64))
                    .collect();
                (c.clone(), exps)
            })
            .collect();
        Compiled {
            field: p.field().clone(),
            terms,
        }
    }

    fn eval(&self, x: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        self.terms.iter().fold(f.zero(), |acc, (c, exps)| {
            let t = exps.iter().fold(c.clone(), |t, &(i, e)| f.mul(&t, &f.pow(&x[i], e)));
            f.add(&acc, &t)
        })
    }
}

/// Point number `idx` of `F_q^d` in base-`q` order, first coordinate least
/// significant.
pub fn point_at<F: Field>(field: &F, d: usize, mut idx: u64) -> Vec<F::Elem> {
    let q = field.order();
    (0..d)
        .map(|_| {
            let e = field.element(idx % q);
            idx /= q;
            e
        })
        .collect()
}

pub(crate) fn affine_size(q: u64, d: usize, cap: u64) -> Result<u64> {
    match q.checked_pow(d as u32) {
        Some(n) if n <= cap => Ok(n),
        _ => Err(Error::CapExceeded {
            what: "affine points",
            size: (q as u128).saturating_pow(d as u32),
            cap: cap as u128,
        }),
    }
}

fn projective_size(q: u64, d: usize, cap: u64) -> Result<u64> {
    let big = ((q as u128).saturating_pow(d as u32) - 1) / (q as u128 - 1);
    if big > cap as u128 {
        return Err(Error::CapExceeded {
            what: "projective points",
            size: big,
            cap: cap as u128,
        });
    }
    Ok(big as u64)
}

/// Number of points of `F_q^d` where `pred(P(x))` holds.
pub fn count_values<F: Field>(
    p: &MultiPoly<F>,
    cfg: &Config,
    pred: impl Fn(&F::Elem) -> bool + Sync,
) -> Result<u64> {
    let field = p.field();
    let d = p.nvars();
    let total = affine_size(field.order(), d, cfg.affine_cap)?;
    let c = Compiled::new(p);
    Ok((0..total)
        .into_par_iter()
        .filter(|&i| pred(&c.eval(&point_at(field, d, i))))
        .count() as u64)
}

fn projective_zeros<F: Field>(p: &MultiPoly<F>, cfg: &Config) -> Result<u64> {
    let field = p.field();
    let d = p.nvars();
    let q = field.order();
    projective_size(q, d, cfg.projective_cap)?;
    let c = Compiled::new(p);
    // representatives: coordinates before `lead` zero, coordinate `lead` one
    let count = (0..d)
        .map(|lead| {
            let free = d - 1 - lead;
            (0..q.pow(free as u32))
                .into_par_iter()
                .filter(|&i| {
                    let mut x = vec![field.zero(); lead + 1];
                    x[lead] = field.one();
                    x.extend(point_at(field, free, i));
                    field.is_zero(&c.eval(&x))
                })
                .count() as u64
        })
        .sum();
    Ok(count)
}

/// Exhaustive zero count. Projective counting needs a homogeneous input and
/// uses representatives whose first nonzero coordinate is 1.
pub fn zero_census<F: Field>(p: &MultiPoly<F>, mode: CensusMode, cfg: &Config) -> Result<ZeroCensus> {
    let field = p.field();
    let homog = p.homogeneity();
    let degree = match homog {
        Homogeneity::Homogeneous(n) => Some(n),
        _ => None,
    };
    let mut out = ZeroCensus {
        q: field.order(),
        d: p.nvars(),
        degree,
        n_affine: None,
        n_projective: None,
    };
    if mode != CensusMode::Affine {
        if homog == Homogeneity::Inhomogeneous {
            return Err(Error::NotHomogeneous);
        }
        out.n_projective = Some(projective_zeros(p, cfg)?);
    }
    if mode != CensusMode::Projective {
        out.n_affine = Some(count_values(p, cfg, |v| field.is_zero(v))?);
    }
    if let (Some(a), Some(pr), Some(_)) = (out.n_affine, out.n_projective, degree) {
        if a != 1 + (out.q - 1) * pr {
            return Err(Error::Internal(format!(
                "affine count {a} disagrees with projective count {pr}"
            )));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Fq;

    #[test]
    fn coordinate_slice() {
        let f5 = Fq::new(5, 1, None).unwrap();
        let x1 = MultiPoly::var(&f5, 3, 0).unwrap().pow(3);
        let c = zero_census(&x1, CensusMode::Both, &Config::default()).unwrap();
        assert_eq!(c.n_affine, Some(25));
        assert_eq!(c.n_projective, Some(6));
        let inh = x1.add(&MultiPoly::var(&f5, 3, 1).unwrap()).unwrap();
        assert_eq!(
            zero_census(&inh, CensusMode::Projective, &Config::default()),
            Err(Error::NotHomogeneous)
        );
        let tight = Config {
            affine_cap: 10,
            ..Config::default()
        };
        assert!(matches!(
            zero_census(&x1, CensusMode::Affine, &tight),
            Err(Error::CapExceeded { .. })
        ));
    }
}
