use num_bigint::BigUint;
use rayon::prelude::*;

use super::group::{centralizer, gl_order, left_stabilizer, normalizer_elements};
use super::report::ReportBuilder;
use super::{builder, first_invertible, is_scalar, want_square, Instance, VerdictReport};
use crate::config::Config;
use crate::detkit::{affine_size, char_poly};
use crate::error::{Error, Result};
use crate::gf::{gcd, is_prime, prime_power, Field, Fq};
use crate::matrix::{all_invertible, Matrix, MatrixSubspace};

/// Prime size `r`, every nonzero element invertible, and `dims(r, d)`.
fn invertible_prime_setting(
    sub: &MatrixSubspace<Fq>,
    r: usize,
    cfg: &Config,
    dims: impl Fn(usize, usize) -> bool,
) -> Result<bool> {
    Ok(is_prime(r as u64) && dims(r, sub.dim()) && all_invertible(sub, cfg)?)
}

fn note_largeness(sub: &MatrixSubspace<Fq>, r: usize, b: &mut ReportBuilder) {
    let q = sub.field().order() as u128;
    b.largeness("q > r^6", q > (r as u128).pow(6));
}

pub(super) fn scalar_left_stabilizer(inst: &Instance, cfg: &Config) -> Result<VerdictReport> {
    let id = "L5.1";
    let (sub, r) = want_square(id, inst)?;
    let mut b = builder(id, inst);
    if !invertible_prime_setting(sub, r, cfg, |r, d| r < 2 * d && 2 * d < 2 * r)? {
        return Ok(b.vacuous("needs prime r, r < 2d < 2r, every nonzero element invertible"));
    }
    note_largeness(sub, r, &mut b);
    let stab = left_stabilizer(sub, cfg)?.unwrap_or_default();
    let field = sub.field();
    let nonscalar = stab.iter().find(|a| !is_scalar(field, a));
    b.num("stabilizer_order", stab.len());
    if let Some(a) = nonscalar {
        b.witness("nonscalar_stabilizer", a.to_rows());
    }
    b.require("every A with A*M = M is scalar", nonscalar.is_none());
    Ok(b.finish())
}

pub(super) fn regular_left_orbit(inst: &Instance, cfg: &Config) -> Result<VerdictReport> {
    let id = "C5.2";
    let (sub, r) = want_square(id, inst)?;
    let mut b = builder(id, inst);
    if !invertible_prime_setting(sub, r, cfg, |r, d| r < 2 * d && 2 * d < 2 * r)? {
        return Ok(b.vacuous("needs prime r, r < 2d < 2r, every nonzero element invertible"));
    }
    note_largeness(sub, r, &mut b);
    let q = sub.field().order();
    let stab = left_stabilizer(sub, cfg)?.unwrap_or_default().len() as u128;
    let gl = gl_order(r, q).ok_or_else(|| Error::Internal("GL order overflow".into()))?;
    let pgl = gl / (q as u128 - 1);
    b.num("stabilizer_order", stab).num("orbit_size", gl / stab).num("PGL_order", pgl);
    b.require("PGL-orbit has size |PGL(r, q)|", gl / stab == pgl);
    Ok(b.finish())
}

pub(super) fn field_left_stabilizer(inst: &Instance, cfg: &Config) -> Result<VerdictReport> {
    let id = "L5.3";
    let (sub, r) = want_square(id, inst)?;
    let mut b = builder(id, inst);
    if !invertible_prime_setting(sub, r, cfg, |r, d| d == r)? {
        return Ok(b.vacuous("needs prime r, d = r, every nonzero element invertible"));
    }
    note_largeness(sub, r, &mut b);
    let field = sub.field();
    let stab = left_stabilizer(sub, cfg)?.unwrap_or_default();
    let c = first_invertible(sub, cfg)?.expect("invertible-only");
    let mut nonscalar = 0;
    let mut ok = true;
    for a in stab.iter().filter(|a| !is_scalar(field, a)) {
        nonscalar += 1;
        let irreducible = char_poly(field, a)?.is_irreducible()?;
        // F_q(A) C, spanned by A^i C for i < r
        let mut gens = Vec::with_capacity(r);
        let mut p = Matrix::identity(field, r);
        for _ in 0..r {
            gens.push(p.mul(field, &c)?);
            p = p.mul(field, a)?;
        }
        let same = MatrixSubspace::new(field, gens).is_ok_and(|s| s.same_span(sub));
        ok &= irreducible && same;
    }
    b.num("stabilizer_order", stab.len()).num("nonscalar", nonscalar);
    b.require(
        "each non-scalar stabilizer element has irreducible characteristic polynomial and M = F_q(A) C",
        ok,
    );
    Ok(b.finish())
}

pub(super) fn left_orbit_sizes(inst: &Instance, cfg: &Config) -> Result<VerdictReport> {
    let id = "C5.4";
    let (sub, r) = want_square(id, inst)?;
    let mut b = builder(id, inst);
    if !invertible_prime_setting(sub, r, cfg, |r, d| d == r)? {
        return Ok(b.vacuous("needs prime r, d = r, every nonzero element invertible"));
    }
    note_largeness(sub, r, &mut b);
    let q = sub.field().order() as u128;
    let stab = left_stabilizer(sub, cfg)?.unwrap_or_default().len() as u128;
    let gl = gl_order(r, q as u64).ok_or_else(|| Error::Internal("GL order overflow".into()))?;
    b.num("stabilizer_order", stab).num("orbit_size", gl / stab);
    b.require("stabilizer order is q - 1 or q^r - 1", stab == q - 1 || stab == q.pow(r as u32) - 1);
    Ok(b.finish())
}

/// `I ∈ M`, prime `r`, `2d > r`, every nonzero element invertible.
fn conjugation_setting(sub: &MatrixSubspace<Fq>, r: usize, cfg: &Config) -> Result<bool> {
    Ok(sub.contains_identity() && invertible_prime_setting(sub, r, cfg, |r, d| 2 * d > r)?)
}

pub(super) fn centralizer_structure(inst: &Instance, cfg: &Config) -> Result<VerdictReport> {
    let id = "T5.6";
    let (sub, r) = want_square(id, inst)?;
    let mut b = builder(id, inst);
    if !conjugation_setting(sub, r, cfg)? {
        return Ok(b.vacuous("needs I in M, prime r, 2d > r, every nonzero element invertible"));
    }
    note_largeness(sub, r, &mut b);
    let q = sub.field().order();
    let g = centralizer(sub, cfg)?;
    b.num("centralizer_dim", g.centralizer_dim)
        .num("centralizer_order", g.centralizer_order)
        .num("field_structure", g.centralizer_is_field);
    let scalars = g.centralizer_dim == 1 && g.centralizer_order == q - 1;
    let cyclic = g.centralizer_is_field && g.centralizer_dim == r && g.centralizer_order == q.pow(r as u32) - 1;
    b.require("centralizer is the scalars or cyclic of order q^r - 1", scalars || cyclic);
    Ok(b.finish())
}

pub(super) fn coprime_norm_index(inst: &Instance, _cfg: &Config) -> Result<VerdictReport> {
    let id = "L5.7";
    let Instance::Arithmetic { r_max, q_max } = *inst else {
        return Err(Error::InstanceShape(format!("{id} needs an arithmetic grid")));
    };
    let mut b = builder(id, inst);
    let mut checked = 0u64;
    let mut failures = Vec::new();
    for r in (3..=r_max).filter(|&r| is_prime(r)) {
        for q in (2..=q_max).filter(|&q| prime_power(q).is_some()) {
            if gcd(r as u128, q as u128 - 1) != 1 {
                continue;
            }
            // q^r overflows machine words quickly; reduce the exact index mod q - 1
            let qm = q as u128 - 1;
            let index = (BigUint::from(q).pow(r as u32) - 1u32) / BigUint::from(qm);
            let residue = u128::try_from(index % BigUint::from(qm)).expect("below q - 1");
            checked += 1;
            if gcd(qm, residue) != 1 {
                failures.push((r, q));
            }
        }
    }
    b.num("pairs_checked", checked);
    if !failures.is_empty() {
        b.witness("failures", &failures);
    }
    b.require("gcd(q - 1, (q^r - 1)/(q - 1)) = 1 whenever gcd(r, q - 1) = 1", failures.is_empty());
    Ok(b.finish())
}

/// Setting shared by the normalizer checks, with the elements of `N(M)`
/// when the scan fits the budget.
fn normalizer_setting(
    sub: &MatrixSubspace<Fq>,
    r: usize,
    cfg: &Config,
    b: &mut ReportBuilder,
) -> Result<Option<Vec<Matrix<u32>>>> {
    let q = sub.field().order();
    b.num("gcd(r, q-1)", gcd(r as u128, q as u128 - 1));
    note_largeness(sub, r, b);
    let elems = normalizer_elements(sub, cfg)?;
    if elems.is_none() {
        b.caveat(format!(
            "skipped: GL({r},{q}) scan exceeds the group budget {} or the affine cap",
            cfg.group_budget
        ));
    }
    Ok(elems)
}

fn commutes(field: &Fq, a: &Matrix<u32>, m: &Matrix<u32>) -> bool {
    a.mul(field, m).ok() == m.mul(field, a).ok()
}

fn conjugation_hypotheses(sub: &MatrixSubspace<Fq>, r: usize, cfg: &Config) -> Result<bool> {
    let q = sub.field().order();
    Ok(r % 2 == 1 && gcd(r as u128, q as u128 - 1) == 1 && conjugation_setting(sub, r, cfg)?)
}

pub(super) fn fixed_point_free(inst: &Instance, cfg: &Config) -> Result<VerdictReport> {
    let id = "T5.8";
    let (sub, r) = want_square(id, inst)?;
    let mut b = builder(id, inst);
    if !conjugation_hypotheses(sub, r, cfg)? {
        return Ok(b.vacuous("needs odd prime r coprime to q - 1, I in M, 2d > r, every nonzero element invertible"));
    }
    let Some(norm) = normalizer_setting(sub, r, cfg, &mut b)? else {
        return Ok(b.finish());
    };
    let field = sub.field();
    let total = affine_size(field.order(), sub.dim(), cfg.affine_cap)?;
    let elems: Vec<Matrix<u32>> = (0..total).map(|i| sub.element_at(i)).collect();
    let outside: Vec<&Matrix<u32>> = norm
        .iter()
        .filter(|a| !sub.basis().iter().all(|m| commutes(field, a, m)))
        .collect();
    let fixed = outside.par_iter().any(|a| {
        elems
            .iter()
            .any(|m| !is_scalar(field, m) && commutes(field, a, m))
    });
    b.num("normalizer_order", norm.len()).num("outside_centralizer", outside.len());
    b.require("no element outside the centralizer fixes a non-scalar element", !fixed);
    Ok(b.finish())
}

/// `|N(M)| / |C(M)|`, or `None` when skipped.
fn quotient(sub: &MatrixSubspace<Fq>, r: usize, cfg: &Config, b: &mut ReportBuilder) -> Result<Option<u64>> {
    let Some(norm) = normalizer_setting(sub, r, cfg, b)? else {
        return Ok(None);
    };
    let c = centralizer(sub, cfg)?.centralizer_order;
    let n = norm.len() as u64;
    b.num("normalizer_order", n).num("centralizer_order", c);
    if !b.require("centralizer order divides normalizer order", n % c == 0) {
        return Ok(None);
    }
    b.num("quotient_order", n / c);
    Ok(Some(n / c))
}

pub(super) fn quotient_one_or_r(inst: &Instance, cfg: &Config) -> Result<VerdictReport> {
    let id = "C5.9";
    let (sub, r) = want_square(id, inst)?;
    let mut b = builder(id, inst);
    if sub.dim() != r || !conjugation_hypotheses(sub, r, cfg)? {
        return Ok(b.vacuous("needs odd prime r coprime to q - 1, I in M, d = r, every nonzero element invertible"));
    }
    if let Some(g) = quotient(sub, r, cfg, &mut b)? {
        b.require("|N/C| is 1 or r", g == 1 || g == r as u64);
    }
    Ok(b.finish())
}

pub(super) fn quotient_at_most_r(inst: &Instance, cfg: &Config) -> Result<VerdictReport> {
    let id = "C5.10";
    let (sub, r) = want_square(id, inst)?;
    let mut b = builder(id, inst);
    let d = sub.dim();
    if !(r < 2 * d && 2 * d < 2 * r) || !conjugation_hypotheses(sub, r, cfg)? {
        return Ok(b.vacuous("needs odd prime r coprime to q - 1, I in M, r < 2d < 2r, every nonzero element invertible"));
    }
    let Some(g) = quotient(sub, r, cfg, &mut b)? else {
        return Ok(b.finish());
    };
    let field = sub.field();
    let total = affine_size(field.order(), d, cfg.affine_cap)?;
    let mut hist = std::collections::BTreeMap::<Vec<u32>, usize>::new();
    for i in 0..total {
        let m = sub.element_at(i);
        if !is_scalar(field, &m) {
            *hist.entry(char_poly(field, &m)?.coeffs().to_vec()).or_default() += 1;
        }
    }
    let full_class = hist.values().any(|&c| c >= r);
    b.num("has_r_sharing_elements", full_class).num("quotient_is_odd", g % 2 == 1);
    b.require("|N/C| <= r", g <= r as u64);
    if full_class {
        b.require("|N/C| is 1 or r when r non-scalar elements share a characteristic polynomial", g == 1 || g == r as u64);
    } else {
        b.require("|N/C| < r when no r non-scalar elements share a characteristic polynomial", g < r as u64);
    }
    b.caveat("open question: whether 1 < |N/C| < r can occur is unresolved; the observed order is recorded");
    Ok(b.finish())
}
