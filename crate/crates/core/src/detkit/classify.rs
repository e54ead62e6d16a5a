use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::bounds::{cafure_matera, rank_lower_bound, serre_rank_bound, CafureMatera};
use super::census::{affine_size, zero_census, CensusMode};
use super::det::det_poly;
use super::normform::{norm_form_witness, NormFormWitness, WitnessRecord};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::gf::{is_prime, Field};
use crate::matrix::{LinearSpan, Matrix, MatrixSubspace};
use crate::poly::MultiPoly;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdicts {
    pub is_zero_poly: bool,
    /// Nonzero yet zero at every point; forces `q < n`.
    pub vanishes_everywhere: bool,
    /// Proof of irreducibility over `F_q`: `2d ≥ n + 1` and no nontrivial zero.
    pub chevalley_irreducible: bool,
    /// Proof of `λ · N(linear form)` with the form not defined over `F_q`.
    pub norm_form: bool,
    pub is_square: bool,
    /// Heuristic only: the zero count fits the absolutely irreducible range.
    pub heuristic_abs_irreducible: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witnesses {
    pub norm_form: Option<WitnessRecord>,
    pub square_root: Option<String>,
    pub cafure_matera: Option<CafureMatera>,
}

/// Verdict record for a determinantal polynomial.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub q: u64,
    pub n: usize,
    pub d: usize,
    #[serde(rename = "N_affine")]
    pub n_affine: u64,
    pub polynomial: String,
    pub verdicts: Verdicts,
    pub witness: Witnesses,
    pub notes: Vec<String>,
}

/// Typed by-products kept for callers that need more than the record.
pub struct ClassifyOutput<F: Field> {
    pub poly: MultiPoly<F>,
    pub report: Classification,
    pub witness: Option<NormFormWitness<F>>,
    pub root: Option<MultiPoly<F>>,
}

pub fn classify<F: Field>(sub: &MatrixSubspace<F>, cfg: &Config) -> Result<Classification> {
    classify_full(sub, cfg).map(|o| o.report)
}

pub fn classify_full<F: Field>(sub: &MatrixSubspace<F>, cfg: &Config) -> Result<ClassifyOutput<F>> {
    let field = sub.field();
    let n = sub.require_square()?;
    let d = sub.dim();
    let q = field.order();
    let p = det_poly(sub)?;
    let n_affine = zero_census(&p, CensusMode::Affine, cfg)?.n_affine.expect("affine run");
    let total = affine_size(q, d, cfg.affine_cap)?;
    let mut notes = Vec::new();
    let is_zero = p.is_zero();
    let vanishes = !is_zero && n_affine == total;
    if vanishes {
        if q as usize >= n {
            return Err(Error::Internal(format!("nonzero form of degree {n} vanishes on F_{q}^{d}")));
        }
        notes.push(format!("vanishes on every point with q = {q} < n = {n}"));
    }
    let chevalley = !is_zero && 2 * d >= n + 1 && n_affine == 1;
    let mut witness = None;
    if !is_zero && is_prime(n as u64) {
        witness = norm_form_witness(&p, n, cfg)?;
        if let Some(w) = &witness {
            if !w.irreducible() {
                notes.push("witness is a power of a linear form over F_q".into());
            }
        }
    }
    let norm_form = witness.as_ref().is_some_and(|w| w.irreducible());
    let root = if is_zero { None } else { p.sqrt() };
    let is_square = root.is_some();
    let cm = (!is_zero).then(|| cafure_matera(n_affine, q, d, n as u64));
    // never claimed once the polynomial is known to factor over some extension
    let heuristic = !chevalley
        && !vanishes
        && witness.is_none()
        && !is_square
        && cm.as_ref().is_some_and(|c| c.holds);
    if heuristic {
        notes.push("absolute irreducibility is heuristic: zero count within the Cafure-Matera range".into());
    }
    let report = Classification {
        q,
        n,
        d,
        n_affine,
        polynomial: p.render(),
        verdicts: Verdicts {
            is_zero_poly: is_zero,
            vanishes_everywhere: vanishes,
            chevalley_irreducible: chevalley,
            norm_form,
            is_square,
            heuristic_abs_irreducible: heuristic,
        },
        witness: Witnesses {
            norm_form: witness.as_ref().map(|w| w.record()),
            square_root: root.as_ref().map(|g| g.render()),
            cafure_matera: cm,
        },
        notes,
    };
    Ok(ClassifyOutput {
        poly: p,
        report,
        witness,
        root,
    })
}

/// The determinant-zero elements of a subspace.
#[derive(Clone, Debug)]
pub struct SingularPart<F: Field> {
    pub count: u64,
    /// Dimension of the span of the singular elements.
    pub span_dim: usize,
    /// Canonical basis when the singular elements form a subspace.
    pub basis: Option<Vec<Matrix<F::Elem>>>,
}

impl<F: Field> SingularPart<F> {
    pub fn is_subspace(&self) -> bool {
        self.basis.is_some()
    }

    pub fn dim(&self) -> Option<usize> {
        self.basis.as_ref().map(|b| b.len())
    }
}

/// Indices (in [`MatrixSubspace::element_at`] order) of singular elements.
pub fn singular_indices<F: Field>(sub: &MatrixSubspace<F>, cfg: &Config) -> Result<Vec<u64>> {
    let field = sub.field();
    sub.require_square()?;
    let total = affine_size(field.order(), sub.dim(), cfg.affine_cap)?;
    let mut out: Vec<u64> = (0..total)
        .into_par_iter()
        .filter(|&i| field.is_zero(&sub.element_at(i).det(field).unwrap()))
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Singular elements, and whether they form a subspace: `q^k` elements
/// spanning a `k`-dimensional space.
pub fn singular_part<F: Field>(sub: &MatrixSubspace<F>, cfg: &Config) -> Result<SingularPart<F>> {
    let field = sub.field();
    let d = sub.dim();
    let idx = singular_indices(sub, cfg)?;
    let mut gens: Vec<Vec<F::Elem>> = Vec::new();
    let mut span = LinearSpan::new(field, d, &gens);
    for &i in &idx {
        let c = sub.coeffs_at(i);
        if !span.contains(&c) {
            gens.push(c);
            span = LinearSpan::new(field, d, &gens);
        }
    }
    let k = span.rank();
    let closed = (field.order() as u128).pow(k as u32) == idx.len() as u128;
    let basis = closed.then(|| span.echelon().iter().map(|c| sub.combination(c)).collect());
    Ok(SingularPart {
        count: idx.len() as u64,
        span_dim: k,
        basis,
    })
}

/// One lower bound on the number of elements of large rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankBound {
    pub name: String,
    /// Elements counted: those of rank at least `min_rank`.
    pub min_rank: usize,
    pub count: u64,
    pub bound: i128,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCensus {
    pub q: u64,
    pub rows: usize,
    pub cols: usize,
    pub d: usize,
    pub counts: BTreeMap<usize, u64>,
    pub bounds: Vec<RankBound>,
}

impl RankCensus {
    pub fn at_least(&self, r: usize) -> u64 {
        self.counts.range(r..).map(|(_, c)| c).sum()
    }

    pub fn max_rank(&self) -> usize {
        *self.counts.keys().next_back().unwrap_or(&0)
    }

    pub fn all_bounds_hold(&self) -> bool {
        self.bounds.iter().all(|b| b.holds)
    }
}

/// Exact rank distribution by enumeration, with every applicable lower bound
/// on the number of elements of large rank.
pub fn rank_census<F: Field>(sub: &MatrixSubspace<F>, cfg: &Config) -> Result<RankCensus> {
    let field = sub.field();
    let (rows, cols) = sub.shape();
    let d = sub.dim();
    let q = field.order();
    let total = affine_size(q, d, cfg.affine_cap)?;
    let width = rows.min(cols) + 1;
    let hist = (0..total)
        .into_par_iter()
        .fold(
            || vec![0u64; width],
            |mut h, i| {
                h[sub.element_at(i).rank(field)] += 1;
                h
            },
        )
        .reduce(
            || vec![0u64; width],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let counts: BTreeMap<usize, u64> = hist.into_iter().enumerate().filter(|(_, c)| *c > 0).collect();
    let mut census = RankCensus {
        q,
        rows,
        cols,
        d,
        counts,
        bounds: Vec::new(),
    };
    let top = census.max_rank();
    let bound_line = |name: &str, min_rank: usize, bound: i128, census: &RankCensus| RankBound {
        name: name.into(),
        min_rank,
        count: census.at_least(min_rank),
        bound,
        holds: census.at_least(min_rank) as i128 >= bound,
    };
    let mut bounds = Vec::new();
    let n = rows;
    let square = rows == cols;
    if square && top == n {
        bounds.push(bound_line("full_rank", n, rank_lower_bound(q, d, n as u64), &census));
        if let Some(b) = serre_rank_bound(q, d, n as u64) {
            bounds.push(bound_line("full_rank_serre", n, b, &census));
        }
    }
    bounds.push(bound_line("max_rank", top, rank_lower_bound(q, d, top as u64), &census));
    if square && sub.is_skew() {
        if n % 2 == 0 && top == n {
            bounds.push(bound_line("skew_full_rank", n, rank_lower_bound(q, d, (n / 2) as u64), &census));
        }
        bounds.push(bound_line("skew_max_rank", top, rank_lower_bound(q, d, (top / 2) as u64), &census));
    }
    census.bounds = bounds;
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Fq;
    use crate::matrix::construct::{diagonal_f2, field_subspace};

    #[test]
    fn small_verdicts() {
        let cfg = Config::default();
        let c = classify(&diagonal_f2(), &cfg).unwrap();
        assert!(c.verdicts.vanishes_everywhere);
        assert_eq!(c.n_affine, 4);
        let f3 = Fq::new(3, 1, None).unwrap();
        let fs = field_subspace(&f3, 3).unwrap();
        let c = classify(&fs, &cfg).unwrap();
        assert!(c.verdicts.chevalley_irreducible && c.verdicts.norm_form);
        assert!(!c.verdicts.heuristic_abs_irreducible);
        let sp = singular_part(&fs, &cfg).unwrap();
        assert_eq!((sp.count, sp.dim()), (1, Some(0)));
    }

    #[test]
    fn field_rank_census() {
        let f2 = Fq::new(2, 1, None).unwrap();
        let rc = rank_census(&field_subspace(&f2, 3).unwrap(), &Config::default()).unwrap();
        assert_eq!(rc.counts, BTreeMap::from([(0, 1), (3, 7)]));
        assert!(rc.all_bounds_hold());
    }
}
