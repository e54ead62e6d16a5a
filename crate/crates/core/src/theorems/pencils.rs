use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::report::ReportBuilder;
use super::{builder, is_scalar, large, render_matrix, want_square, with_identity, Instance, VerdictReport};
use crate::config::Config;
use crate::detkit::bounds::cafure_matera;
use crate::detkit::{affine_size, char_poly, det_poly, norm_form_witness, singular_indices, singular_part, zero_census, CensusMode};
use crate::error::Result;
use crate::gf::{is_prime, Field, Fq};
use crate::matrix::construct::prefix_span;
use crate::matrix::{all_invertible, find_invertible_extension, CandidatePool, LinearSpan, Matrix, MatrixSubspace};

/// Largest number of ordered element pairs enumerated.
const PAIR_BUDGET: u128 = 1 << 20;

/// Prime size and an irreducible norm-form witness: the setting in which
/// the singular elements are governed by one linear form over `F_{q^r}`.
fn norm_form_setting(sub: &MatrixSubspace<Fq>, n: usize, cfg: &Config, b: &mut ReportBuilder) -> Result<bool> {
    if !is_prime(n as u64) {
        return Ok(false);
    }
    let p = det_poly(sub)?;
    if p.is_zero() {
        return Ok(false);
    }
    match norm_form_witness(&p, n, cfg)? {
        Some(w) if w.irreducible() => {
            b.witness("norm_form", w.record());
            Ok(true)
        }
        _ => Ok(false),
    }
}

fn span_elements(field: &Fq, basis: &[Matrix<u32>], n: usize) -> Vec<Matrix<u32>> {
    let q = field.order();
    let total = q.pow(basis.len() as u32);
    (0..total)
        .map(|mut idx| {
            let mut m = Matrix::zeros(field, n, n);
            for bm in basis {
                m.add_scaled(field, &field.element(idx % q), bm);
                idx /= q;
            }
            m
        })
        .collect()
}

pub(super) fn norm_form_singular_subspace(inst: &Instance, cfg: &Config) -> Result<VerdictReport> {
    let id = "T3.2";
    let (sub, n) = want_square(id, inst)?;
    let mut b = builder(id, inst);
    if !norm_form_setting(sub, n, cfg, &mut b)? {
        return Ok(b.vacuous("needs prime n and an irreducible norm-form witness"));
    }
    let sp = singular_part(sub, cfg)?;
    b.num("singular_count", sp.count).num("singular_span_dim", sp.span_dim);
    if b.require("singular elements form a subspace", sp.is_subspace()) {
        b.num("singular_dim", sp.dim());
    }
    Ok(b.finish())
}

/// Identity-containing version of `sub` with its singular subspace, in the
/// norm-form setting; `Err(reason)` when the hypotheses fail.
fn identity_setting(
    id: &str,
    inst: &Instance,
    cfg: &Config,
    b: &mut ReportBuilder,
) -> Result<std::result::Result<(MatrixSubspace<Fq>, Vec<Matrix<u32>>), &'static str>> {
    let (sub, n) = want_square(id, inst)?;
    if !norm_form_setting(sub, n, cfg, b)? {
        return Ok(Err("needs prime n and an irreducible norm-form witness"));
    }
    let Some(m) = with_identity(sub, cfg, b)? else {
        return Ok(Err("no invertible element"));
    };
    let sp = singular_part(&m, cfg)?;
    if !b.require("singular elements form a subspace", sp.is_subspace()) {
        return Ok(Err("singular elements do not form a subspace"));
    }
    Ok(Ok((m, sp.basis.expect("subspace"))))
}

pub(super) fn complement_charpoly(inst: &Instance, cfg: &Config) -> Result<VerdictReport> {
    let id = "L3.3";
    let mut b = builder(id, inst);
    let (m, m0) = match identity_setting(id, inst, cfg, &mut b)? {
        Ok(v) => v,
        Err(why) => return Ok(b.vacuous(why)),
    };
    let field = m.field().clone();
    let n = m.n();
    // complement of M0 through I, completed from the basis of M
    let flat = |x: &Matrix<u32>| x.data().to_vec();
    let mut gens: Vec<Vec<u32>> = m0.iter().map(flat).collect();
    let mut comp = vec![Matrix::identity(&field, n)];
    gens.push(flat(&comp[0]));
    for x in m.basis() {
        if LinearSpan::new(&field, n * n, &gens).rank() == m.dim() {
            break;
        }
        let mut trial = gens.clone();
        trial.push(flat(x));
        if LinearSpan::new(&field, n * n, &trial).rank() == trial.len() {
            gens = trial;
            comp.push(x.clone());
        }
    }
    affine_size(field.order(), m.dim(), cfg.affine_cap)?;
    let comp_elems = span_elements(&field, &comp, n);
    let sing_elems = span_elements(&field, &m0, n);
    let bad = comp_elems
        .par_iter()
        .flat_map_iter(|a| {
            let ca = char_poly(&field, a).expect("square");
            let field = field.clone();
            sing_elems.iter().filter_map(move |s| {
                let sum = a.add(&field, s).expect("shape");
                (char_poly(&field, &sum).expect("square") != ca).then(|| render_matrix(&sum))
            })
        })
        .collect::<Vec<_>>();
    b.num("complement_dim", comp.len())
        .num("singular_dim", m0.len())
        .num("pairs_checked", comp_elems.len() * sing_elems.len());
    if !b.require("det(yI - (A+B)) = det(yI - A) for A in the complement, B singular", bad.is_empty()) {
        b.witness("counterexample_sum", &bad[0]);
    }
    Ok(b.finish())
}

pub(super) fn singular_nilpotent(inst: &Instance, cfg: &Config) -> Result<VerdictReport> {
    let id = "C3.4";
    let mut b = builder(id, inst);
    let (m, m0) = match identity_setting(id, inst, cfg, &mut b)? {
        Ok(v) => v,
        Err(why) => return Ok(b.vacuous(why)),
    };
    let field = m.field();
    let elems = span_elements(field, &m0, m.n());
    let all = elems.iter().all(|x| x.is_nilpotent(field).unwrap_or(false));
    b.num("singular_elements", elems.len());
    b.require("every singular element is nilpotent", all);
    Ok(b.finish())
}

pub(super) fn inverse_times_singular_nilpotent(inst: &Instance, cfg: &Config) -> Result<VerdictReport> {
    let id = "C3.5";
    let (sub, n) = want_square(id, inst)?;
    let mut b = builder(id, inst);
    if !norm_form_setting(sub, n, cfg, &mut b)? {
        return Ok(b.vacuous("needs prime n and an irreducible norm-form witness"));
    }
    let field = sub.field();
    let sing = singular_indices(sub, cfg)?;
    let total = affine_size(field.order(), sub.dim(), cfg.affine_cap)?;
    let sing_set: BTreeSet<u64> = sing.iter().copied().collect();
    let inv: Vec<u64> = (0..total).filter(|i| !sing_set.contains(i)).collect();
    let pairs = inv.len() as u128 * sing.len() as u128;
    b.num("pairs", pairs);
    let inv = if pairs > PAIR_BUDGET {
        b.caveat("pair count over budget; invertible A limited to the first one");
        inv[..1].to_vec()
    } else {
        inv
    };
    let ok = inv.par_iter().all(|&i| {
        let a_inv = sub.element_at(i).inverse(field).expect("invertible");
        sing.iter().all(|&j| {
            a_inv
                .mul(field, &sub.element_at(j))
                .and_then(|x| x.is_nilpotent(field))
                .unwrap_or(false)
        })
    });
    b.require("A^-1 B nilpotent for invertible A and singular B", ok);
    Ok(b.finish())
}

/// Characteristic polynomial of `A^{-1}B` as a coefficient list.
fn pencil_charpoly(field: &Fq, a_inv: &Matrix<u32>, bm: &Matrix<u32>) -> (Matrix<u32>, crate::poly::UniPoly<Fq>) {
    let x = a_inv.mul(field, bm).expect("square");
    let cp = char_poly(field, &x).expect("square");
    (x, cp)
}

/// Indices of the `A` used for pair checks: all nonzero elements within the
/// pair budget, else only the first invertible one.
fn pair_anchors(sub: &MatrixSubspace<Fq>, cfg: &Config, b: &mut ReportBuilder) -> Result<Vec<u64>> {
    let total = affine_size(sub.field().order(), sub.dim(), cfg.affine_cap)?;
    if (total as u128).pow(2) <= PAIR_BUDGET {
        return Ok((1..total).collect());
    }
    b.caveat("pair count over budget; A limited to the first invertible element");
    Ok((1..total)
        .find(|&i| sub.element_at(i).is_invertible(sub.field()))
        .into_iter()
        .collect())
}

pub(super) fn prime_degree_charpolys(inst: &Instance, cfg: &Config) -> Result<VerdictReport> {
    let id = "T3.6";
    let (sub, r) = want_square(id, inst)?;
    let mut b = builder(id, inst);
    let field = sub.field();
    let q = field.order();
    let d = sub.dim();
    if !is_prime(r as u64) || 2 * d <= r || !all_invertible(sub, cfg)? {
        return Ok(b.vacuous("needs prime r, 2d > r and every nonzero element invertible"));
    }
    b.largeness("q > r^6", large(q, r));
    if !norm_form_setting(sub, r, cfg, &mut b)? {
        return Ok(b.vacuous("no witness that P is not absolutely irreducible"));
    }
    let total = affine_size(q, d, cfg.affine_cap)?;
    let anchors = pair_anchors(sub, cfg, &mut b)?;
    // per anchor: (all irreducible of degree r, largest share, share counts)
    let results: Vec<(bool, usize, BTreeSet<usize>)> = anchors
        .par_iter()
        .map(|&i| {
            let a_inv = sub.element_at(i).inverse(field).expect("invertible");
            let mut hist: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
            let mut irreducible = true;
            for j in 1..total {
                let (x, cp) = pencil_charpoly(field, &a_inv, &sub.element_at(j));
                if is_scalar(field, &x) {
                    continue;
                }
                irreducible &= cp.degree() == Some(r) && cp.is_irreducible().unwrap_or(false);
                *hist.entry(cp.coeffs().to_vec()).or_default() += 1;
            }
            let max = hist.values().copied().max().unwrap_or(0);
            (irreducible, max, hist.values().copied().collect())
        })
        .collect();
    let irreducible = results.iter().all(|r| r.0);
    let max_share = results.iter().map(|r| r.1).max().unwrap_or(0);
    b.num("anchors", anchors.len())
        .num("max_share", max_share)
        .num("share_counts_first_anchor", results.first().map(|r| r.2.clone()).unwrap_or_default());
    b.require("A^-1 B has irreducible characteristic polynomial of degree r", irreducible);
    b.require("at most r elements B share a characteristic polynomial of A^-1 B", max_share <= r);
    Ok(b.finish())
}

pub(super) fn reducible_pencil(inst: &Instance, cfg: &Config) -> Result<VerdictReport> {
    let id = "T3.7";
    let (sub, n) = want_square(id, inst)?;
    let mut b = builder(id, inst);
    let d = sub.dim();
    if n != 2 * d + 1 {
        return Ok(b.vacuous("needs n = 2d + 1"));
    }
    let field = sub.field();
    let inv = all_invertible(sub, cfg)?;
    b.require("every nonzero element is invertible", inv);
    if !inv {
        return Ok(b.finish());
    }
    let total = affine_size(field.order(), d, cfg.affine_cap)?;
    let anchors = pair_anchors(sub, cfg, &mut b)?;
    let reducible = anchors.par_iter().all(|&i| {
        let a_inv = sub.element_at(i).inverse(field).expect("invertible");
        (1..total).all(|j| !pencil_charpoly(field, &a_inv, &sub.element_at(j)).1.is_irreducible().unwrap_or(true))
    });
    b.num("pairs_checked", anchors.len() as u64 * (total - 1));
    b.require("A^-1 B has reducible characteristic polynomial for all nonzero A, B", reducible);
    Ok(b.finish())
}

pub(super) fn maximal_invertible(inst: &Instance, cfg: &Config) -> Result<VerdictReport> {
    let id = "C3.8";
    let (sub, n) = want_square(id, inst)?;
    let mut b = builder(id, inst);
    let d = sub.dim();
    if n != 2 * d + 1 || !is_prime(n as u64) || d < 2 || !all_invertible(sub, cfg)? {
        return Ok(b.vacuous("needs prime r = 2d + 1, d > 1, every nonzero element invertible"));
    }
    b.largeness("q > r^6", large(sub.field().order(), n));
    let budget = n * n + 1000;
    let search = find_invertible_extension(sub, &CandidatePool::Seeded(cfg.seed), budget, cfg)?;
    b.num("candidates_tried", search.tried).num("pool_seed", cfg.seed);
    b.caveat(format!("sampling, not proof: {} candidates tried", search.tried));
    if let Some(x) = &search.found {
        b.witness("enlarging_matrix", render_matrix(x));
    }
    b.require("no candidate enlarges the subspace keeping every nonzero element invertible", search.found.is_none());
    Ok(b.finish())
}

pub(super) fn codim_n_singular_zero(inst: &Instance, cfg: &Config) -> Result<VerdictReport> {
    let id = "L3.9";
    let (sub, n) = want_square(id, inst)?;
    let mut b = builder(id, inst);
    let sp = singular_part(sub, cfg)?;
    let Some(k) = sp.dim() else {
        return Ok(b.vacuous("singular elements do not form a subspace"));
    };
    b.num("singular_dim", k).num("codimension", sub.dim() - k);
    if sub.dim() - k != n {
        return Ok(b.vacuous("singular subspace does not have codimension n"));
    }
    b.require("singular subspace of codimension n is zero", k == 0);
    Ok(b.finish())
}

pub(super) fn wider_than_field(inst: &Instance, cfg: &Config) -> Result<VerdictReport> {
    let id = "T3.10";
    let (sub, r) = want_square(id, inst)?;
    let mut b = builder(id, inst);
    let q = sub.field().order();
    let d = sub.dim();
    if !is_prime(r as u64) || d <= r {
        return Ok(b.vacuous("needs prime r and d > r"));
    }
    let inner = prefix_span(sub, r)?;
    if !all_invertible(&inner, cfg)? {
        return Ok(b.vacuous("first r basis elements do not span an invertible-only subspace"));
    }
    b.largeness("q > r^6", large(q, r));
    let p = det_poly(sub)?;
    let witness = norm_form_witness(&p, r, cfg)?;
    b.require("no norm-form factorization", witness.is_none());
    let sp = singular_part(sub, cfg)?;
    b.num("singular_count", sp.count).num("singular_span_dim", sp.span_dim);
    b.require("singular elements do not form a subspace", !sp.is_subspace());
    let n_aff = zero_census(&p, CensusMode::Affine, cfg)?.n_affine.expect("affine");
    let cm = cafure_matera(n_aff, q, d, r as u64);
    b.num("N_affine", n_aff);
    b.witness("cafure_matera", &cm);
    b.require("zero count within the Cafure-Matera bound", cm.holds);
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::construct::field_subspace;

    #[test]
    fn field_subspace_pencils() {
        let cfg = Config::default();
        let f2 = Fq::new(2, 1, None).unwrap();
        let inst = Instance::subspace("f", field_subspace(&f2, 3).unwrap());
        for check in [norm_form_singular_subspace, complement_charpoly, prime_degree_charpolys] {
            let r = check(&inst, &cfg).unwrap();
            assert!(r.passed, "{r:?}");
            assert!(r.caveats.iter().all(|c| !c.contains("nothing to check")), "{r:?}");
        }
    }
}
