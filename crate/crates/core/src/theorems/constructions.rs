use super::report::ReportBuilder;
use super::{builder, is_scalar, want_square, Instance, VerdictReport};
use crate::config::Config;
use crate::detkit::{det_poly, norm_form_witness, singular_part};
use crate::error::Result;
use crate::gf::{Field, Fq, Ring};
use crate::matrix::{Matrix, MatrixSubspace};
use crate::poly::MultiPoly;

/// Singular part of dimension `m` whose nonzero elements have rank `rank`,
/// optionally nilpotent. Returns the basis when it is a subspace.
fn singular_shape(
    sub: &MatrixSubspace<Fq>,
    m: usize,
    rank: usize,
    nilpotent: bool,
    cfg: &Config,
    b: &mut ReportBuilder,
) -> Result<Option<Vec<Matrix<u32>>>> {
    let field = sub.field();
    let sp = singular_part(sub, cfg)?;
    b.num("singular_count", sp.count).num("singular_span_dim", sp.span_dim);
    if !b.require("singular elements form a subspace", sp.is_subspace()) {
        return Ok(None);
    }
    let basis = sp.basis.expect("subspace");
    b.require(&format!("singular subspace has dimension {m}"), basis.len() == m);
    let q = field.order();
    let mut ranks = std::collections::BTreeSet::new();
    let mut all_nil = true;
    for idx in 1..q.pow(basis.len() as u32) {
        let mut x = Matrix::zeros(field, sub.n(), sub.n());
        let mut i = idx;
        for bm in &basis {
            x.add_scaled(field, &field.element(i % q), bm);
            i /= q;
        }
        ranks.insert(x.rank(field));
        all_nil &= x.is_nilpotent(field)?;
    }
    b.num("nonzero_singular_ranks", &ranks);
    b.require(
        &format!("nonzero singular elements have rank {rank}"),
        ranks.iter().all(|&r| r == rank),
    );
    if nilpotent {
        b.require("nonzero singular elements are nilpotent", all_nil);
    }
    Ok(Some(basis))
}

pub(super) fn cubic_trace_zero_line(inst: &Instance, cfg: &Config) -> Result<VerdictReport> {
    let id = "T4.1";
    let (sub, n) = want_square(id, inst)?;
    let mut b = builder(id, inst);
    if n != 3 || sub.dim() != 3 {
        return Ok(b.vacuous("needs a three-dimensional subspace of 3x3 matrices"));
    }
    let q = sub.field().order();
    if let Some(basis) = singular_shape(sub, 1, 2, false, cfg, &mut b)? {
        b.require("exactly q singular elements", singular_part(sub, cfg)?.count == q);
        let first = MatrixSubspace::new(sub.field(), basis)?;
        b.require("singular line spanned by the first basis element", first.contains(&sub.basis()[0]));
    }
    Ok(b.finish())
}

pub(super) fn cubic_norm_formula(inst: &Instance, cfg: &Config) -> Result<VerdictReport> {
    let id = "E3";
    let (sub, n) = want_square(id, inst)?;
    let mut b = builder(id, inst);
    if n != 3 || sub.dim() != 3 {
        return Ok(b.vacuous("needs a three-dimensional subspace of 3x3 matrices"));
    }
    let field = sub.field();
    let cube = sub.basis()[1].pow(field, 3)?;
    if !b.require("second basis element cubes to a scalar", is_scalar(field, &cube)) {
        return Ok(b.finish());
    }
    let bval = *cube.get(0, 0);
    b.num("b", field.index_of(&bval));
    let p = det_poly(sub)?;
    // b x2^3 + b^2 x3^3
    let expected = MultiPoly::from_terms(
        field,
        3,
        [(vec![0, 3, 0], bval), (vec![0, 0, 3], field.mul(&bval, &bval))],
    )?;
    b.witness("det_poly", p.render());
    b.require("P = b(x2^3 + b x3^3)", p == expected);
    if let Some(basis) = singular_shape(sub, 1, 2, false, cfg, &mut b)? {
        let line = MatrixSubspace::new(field, basis)?;
        b.require("singular line spanned by the first basis element", line.contains(&sub.basis()[0]));
    }
    match norm_form_witness(&p, 3, cfg)? {
        Some(w) => {
            let exact = w.expand() == p;
            b.witness("norm_form", w.record());
            b.require("norm-form witness reproduces P", exact);
        }
        None => {
            b.require("norm-form witness found", false);
        }
    }
    Ok(b.finish())
}

pub(super) fn reduced_cubic(inst: &Instance, cfg: &Config) -> Result<VerdictReport> {
    let id = "C4.2";
    let (sub, n) = want_square(id, inst)?;
    let mut b = builder(id, inst);
    if n % 3 != 0 || sub.dim() != n {
        return Ok(b.vacuous("needs n = 3m and dimension 3m"));
    }
    let m = n / 3;
    b.num("m", m);
    singular_shape(sub, m, 2 * m, false, cfg, &mut b)?;
    Ok(b.finish())
}

pub(super) fn quartic_char2_line(inst: &Instance, cfg: &Config) -> Result<VerdictReport> {
    let id = "T4.4";
    let (sub, n) = want_square(id, inst)?;
    let mut b = builder(id, inst);
    let field = sub.field();
    if n != 4 || sub.dim() != 4 || field.characteristic() != 2 {
        return Ok(b.vacuous("needs a four-dimensional subspace of 4x4 matrices in characteristic 2"));
    }
    b.require("identity lies in the subspace", sub.contains_identity());
    if let Some(basis) = singular_shape(sub, 1, 2, true, cfg, &mut b)? {
        let t = &basis[0];
        b.require("T^2 = 0 for the singular generator", t.mul(field, t)?.is_zero(field));
    }
    Ok(b.finish())
}

pub(super) fn reduced_quartic(inst: &Instance, cfg: &Config) -> Result<VerdictReport> {
    let id = "C4.5";
    let (sub, n) = want_square(id, inst)?;
    let mut b = builder(id, inst);
    if n % 4 != 0 || sub.dim() != n || sub.field().characteristic() != 2 {
        return Ok(b.vacuous("needs n = 4m, dimension 4m, characteristic 2"));
    }
    let m = n / 4;
    b.num("m", m);
    singular_shape(sub, m, 2 * m, true, cfg, &mut b)?;
    Ok(b.finish())
}
