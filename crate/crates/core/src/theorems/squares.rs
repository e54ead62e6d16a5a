use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::forms::monomials;
use super::{builder, large, pow_u128, want_poly, want_square, Instance, VerdictReport};
use crate::config::Config;
use crate::detkit::{affine_size, char_poly, count_values, point_at};
use crate::error::{Error, Result};
use crate::gf::{ExtField, Extension, Field, Fq, Ring};
use crate::matrix::{Matrix, MatrixSubspace};
use crate::poly::MultiPoly;

/// Largest coefficient space scanned by the brute-force square-root oracle.
const ROOT_BUDGET: u128 = 1 << 16;
const PAIR_BUDGET: u128 = 1 << 20;

/// `is_square[index_of(v)]` for every `v ∈ F_q`.
fn square_table(field: &Fq) -> Vec<bool> {
    let mut t = vec![false; field.order() as usize];
    for x in field.elements() {
        t[field.index_of(&field.mul(&x, &x)) as usize] = true;
    }
    t
}

/// Brute-force search for `g` of degree at most `n/2` with `g^2 = f`;
/// `None` when over budget.
fn brute_force_root(f: &MultiPoly<Fq>, n: usize) -> Option<Option<MultiPoly<Fq>>> {
    let field = f.field();
    let monos = monomials(f.nvars(), 0..=n / 2);
    let size = pow_u128(field.order(), monos.len());
    if size > ROOT_BUDGET {
        return None;
    }
    Some((0..size as u64).into_par_iter().find_map_first(|idx| {
        let g = MultiPoly::from_terms(field, f.nvars(), monos.iter().cloned().zip(point_at(field, monos.len(), idx))).ok()?;
        (g.mul(&g).ok()? == *f).then_some(g)
    }))
}

pub(super) fn square_iff_reducible(inst: &Instance, cfg: &Config) -> Result<VerdictReport> {
    let id = "L6.1";
    let f = want_poly(id, inst)?;
    let mut b = builder(id, inst);
    let Some(n) = f.total_degree().filter(|&n| n > 0) else {
        return Ok(b.vacuous("polynomial is constant"));
    };
    let field = f.field();
    let root = f.sqrt();
    b.num("square_root_found", root.is_some());
    match &root {
        Some(g) => {
            b.witness("square_root", g.render());
            b.require("g^2 = f, so y^2 - f = (y - g)(y + g)", g.mul(g)? == f);
        }
        None => {
            // independent evidence that no root exists
            if field.characteristic() != 2 {
                let table = square_table(field);
                let nonsquare_values = count_values(&f, cfg, |v| !table[field.index_of(v) as usize])?;
                b.num("nonsquare_values", nonsquare_values);
            }
            match brute_force_root(&f, n) {
                Some(found) => {
                    b.num("oracle_candidates", pow_u128(field.order(), monomials(f.nvars(), 0..=n / 2).len()));
                    b.require("no square root found by exhaustive search either", found.is_none());
                }
                None => {
                    b.caveat("exhaustive root search over budget; y^2 - f irreducibility rests on root extraction");
                }
            }
        }
    }
    Ok(b.finish())
}

pub(super) fn conjugate_root(inst: &Instance, _cfg: &Config) -> Result<VerdictReport> {
    let id = "T6.2";
    let f = want_poly(id, inst)?;
    let mut b = builder(id, inst);
    let field = f.field();
    if field.characteristic() == 2 || f.total_degree().unwrap_or(0) == 0 {
        return Ok(b.vacuous("needs odd q and a nonconstant polynomial"));
    }
    if let Some(g) = f.sqrt() {
        b.witness("square_root", g.render()).num("root_field", "F_q");
        return Ok(b.finish());
    }
    let ext = ExtField::new(field, 2)?;
    let lifted = f.lift(&ext);
    let Some(g) = lifted.sqrt() else {
        b.num("root_field", "none");
        b.caveat("no square root over F_q or F_{q^2}: y^2 - f is absolutely irreducible");
        return Ok(b.finish());
    };
    b.num("root_field", "F_{q^2}");
    b.witness("square_root", g.render());
    let conj = g.map_field(&ext, |c| ext.frobenius(c, 1));
    b.require("g^sigma = -g for the root over F_{q^2}", conj == g.neg());
    b.require("g^2 = f", g.mul(&g)? == lifted);
    Ok(b.finish())
}

pub(super) fn square_valued(inst: &Instance, cfg: &Config) -> Result<VerdictReport> {
    let id = "T6.3";
    let f = want_poly(id, inst)?;
    let mut b = builder(id, inst);
    let field = f.field();
    let q = field.order();
    let Some(n) = f.total_degree() else {
        return Ok(b.vacuous("polynomial is zero"));
    };
    if q % 2 == 0 || n % 2 == 1 {
        return Ok(b.vacuous("needs odd q and even degree"));
    }
    let table = square_table(field);
    let square_values = count_values(&f, cfg, |v| table[field.index_of(v) as usize])?;
    let total = affine_size(q, f.nvars(), cfg.affine_cap)?;
    let root = f.sqrt();
    b.num("square_values", square_values)
        .num("points", total)
        .num("square_root_found", root.is_some());
    if let Some(g) = &root {
        b.witness("square_root", g.render());
    }
    if square_values != total {
        return Ok(b.vacuous("some value is a nonsquare"));
    }
    if large(q, n) {
        b.require("a square-valued polynomial is a square", root.is_some());
    } else {
        b.caveat(format!(
            "hypothesis q > n^6 not met (q = {q}, n = {n}); conclusion not required, square root {}",
            if root.is_some() { "present" } else { "absent" }
        ));
    }
    Ok(b.finish())
}

/// All determinants squares (zero allowed), by enumeration.
fn square_determinants_all(sub: &MatrixSubspace<Fq>, cfg: &Config, nonzero: bool) -> Result<bool> {
    let field = sub.field();
    let total = affine_size(field.order(), sub.dim(), cfg.affine_cap)?;
    let table = square_table(field);
    Ok((1..total).into_par_iter().all(|i| {
        let det = sub.element_at(i).det(field).expect("square");
        table[field.index_of(&det) as usize] && !(nonzero && field.is_zero(&det))
    }))
}

pub(super) fn square_determinants(inst: &Instance, cfg: &Config) -> Result<VerdictReport> {
    let id = "C6.4";
    let (sub, n) = want_square(id, inst)?;
    let mut b = builder(id, inst);
    let q = sub.field().order();
    if q % 2 == 0 || !square_determinants_all(sub, cfg, true)? {
        return Ok(b.vacuous("needs odd q and every nonzero element with nonzero square determinant"));
    }
    let d = sub.dim();
    b.require("n is even", n % 2 == 0);
    b.num("d", d).num("n/2", n / 2);
    if q as u128 >= pow_u128(n as u64, 6) {
        b.require("d <= n/2", 2 * d <= n);
    } else {
        b.caveat(format!(
            "hypothesis q >= n^6 not met; d <= n/2 not required (observed: {})",
            2 * d <= n
        ));
    }
    Ok(b.finish())
}

fn is_square_charpoly(field: &Fq, m: &Matrix<u32>) -> bool {
    char_poly(field, m).is_ok_and(|c| c.sqrt_monic().is_some())
}

fn large_half(q: u64, n: usize) -> bool {
    let m = (n / 2) as u128;
    q as u128 > 64 * m.pow(6)
}

pub(super) fn square_charpolys(inst: &Instance, cfg: &Config) -> Result<VerdictReport> {
    let id = "C6.5";
    let (sub, n) = want_square(id, inst)?;
    let mut b = builder(id, inst);
    if n % 2 == 1 || !sub.contains_identity() || !square_determinants_all(sub, cfg, false)? {
        return Ok(b.vacuous("needs even n, I in M and every determinant a square"));
    }
    b.largeness("q > 64 m^6", large_half(sub.field().order(), n));
    let field = sub.field();
    let total = affine_size(field.order(), sub.dim(), cfg.affine_cap)?;
    let bad = (0..total)
        .into_par_iter()
        .find_first(|&i| !is_square_charpoly(field, &sub.element_at(i)));
    b.num("elements_checked", total);
    if let Some(i) = bad {
        b.witness("non_square_charpoly_element", sub.element_at(i).to_rows());
    }
    b.require("every characteristic polynomial is the square of a monic polynomial", bad.is_none());
    Ok(b.finish())
}

fn random_skew(field: &Fq, n: usize, rng: &mut ChaCha8Rng) -> Matrix<u32> {
    let mut m = Matrix::zeros(field, n, n);
    for i in 0..n {
        for j in i + 1..n {
            let a = field.element(rng.gen_range(0..field.order()));
            m.set(i, j, a);
            m.set(j, i, field.neg(&a));
        }
    }
    m
}

pub(super) fn pair_charpolys(inst: &Instance, cfg: &Config) -> Result<VerdictReport> {
    let id = "C6.6";
    let mut b = builder(id, inst);
    if let Instance::SkewPairs { q, n, samples } = *inst {
        let field = Fq::of_order(q)?;
        if n % 2 == 1 {
            return Err(Error::InstanceShape(format!("{id} needs even skew size")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut ok = 0usize;
        for _ in 0..samples {
            let m = loop {
                let m = random_skew(&field, n, &mut rng);
                if m.is_invertible(&field) {
                    break m;
                }
            };
            let x = random_skew(&field, n, &mut rng);
            if is_square_charpoly(&field, &m.inverse(&field)?.mul(&field, &x)?) {
                ok += 1;
            } else {
                b.witness("failing_pair", (m.to_rows(), x.to_rows()));
            }
        }
        b.require("char poly of M^-1 N is a square for skew M, N", ok == samples);
        b.num("samples", samples).num("square_charpolys", ok).num("seed", cfg.seed);
        return Ok(b.finish());
    }
    let (sub, n) = want_square(id, inst)?;
    let field = sub.field();
    if n % 2 == 1 || !square_determinants_all(sub, cfg, false)? {
        return Ok(b.vacuous("needs even n and every determinant a square"));
    }
    let total = affine_size(field.order(), sub.dim(), cfg.affine_cap)?;
    let mut inv: Vec<u64> = (1..total).filter(|&i| sub.element_at(i).is_invertible(field)).collect();
    if inv.is_empty() {
        return Ok(b.vacuous("no invertible element"));
    }
    b.largeness("q > 64 m^6", large_half(field.order(), n));
    if inv.len() as u128 * total as u128 > PAIR_BUDGET {
        b.caveat("pair count over budget; M limited to the first invertible element");
        inv.truncate(1);
    }
    let ok = inv.par_iter().all(|&i| {
        let m_inv = sub.element_at(i).inverse(field).expect("invertible");
        (0..total).all(|j| is_square_charpoly(field, &m_inv.mul(field, &sub.element_at(j)).expect("square")))
    });
    b.num("pairs_checked", inv.len() as u64 * total);
    b.require("char poly of M^-1 N is the square of a monic polynomial", ok);
    Ok(b.finish())
}
