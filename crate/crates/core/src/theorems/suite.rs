use rayon::prelude::*;

use super::{verify, Instance, VerdictReport};
use crate::config::Config;
use crate::error::Result;
use crate::gf::{Field, Fq, Ring};
use crate::matrix::construct::{
    block_field_pair, cubic_norm, cubic_trace_zero, diagonal, diagonal_f2, diagonal_f3, doubled, field_subspace,
    full_space, prefix_span, quartic_char2, random_skew_subspace, random_subspace, skew_space, Construction,
    ReduceSource,
};
use crate::matrix::{Matrix, MatrixSubspace};
use crate::poly::MultiPoly;

/// One designated (catalogue id, instance) pair.
#[derive(Clone, Debug)]
pub struct SuiteEntry {
    pub id: &'static str,
    pub instance: Instance,
}

fn sub_inst(sub: MatrixSubspace<Fq>) -> Instance {
    let label = sub.tags().get("construction").cloned().unwrap_or_else(|| "subspace".into());
    Instance::subspace(label, sub)
}

/// `c * x1^2` in two variables.
fn scaled_square(q: u64, c: u64) -> Result<Instance> {
    let f = Fq::of_order(q)?;
    let p = MultiPoly::from_terms(&f, 2, [(vec![0, 2], f.element(c))])?;
    Ok(Instance::polynomial(format!("{c}*x1^2 over F_{q}"), p))
}

/// `x^6 - x^2 y^4 + y^6` over `F_3`: every value is a square, yet it is not a
/// square polynomial.
fn square_valued_sextic() -> Result<Instance> {
    let f = Fq::of_order(3)?;
    let minus_one = f.neg(&f.one());
    let p = MultiPoly::from_terms(
        &f,
        2,
        [(vec![6, 0], f.one()), (vec![2, 4], minus_one), (vec![0, 6], f.one())],
    )?;
    Ok(Instance::polynomial("x^6 - x^2 y^4 + y^6 over F_3", p))
}

/// Degree-3 field subspace enlarged by `E_11`.
fn field_plus_unit(q: u64) -> Result<MatrixSubspace<Fq>> {
    let f = Fq::of_order(q)?;
    let sub = field_subspace(&f, 3)?.extended(Matrix::unit(&f, 3, 3, 0, 0))?;
    Ok(sub.with_tag("construction", format!("field(q={q},t=3)+E11")))
}

/// The fixed list of checks run by `verify --suite`. Randomized instances
/// draw from `cfg.seed`.
pub fn designated_suite(cfg: &Config) -> Result<Vec<SuiteEntry>> {
    let fq = Fq::of_order;
    let ex1 = sub_inst(diagonal_f2());
    let ex2 = sub_inst(diagonal_f3());
    let ex3_7 = sub_inst(cubic_norm(&fq(7)?, 3)?);
    let ex3_13 = sub_inst(cubic_norm(&fq(13)?, 2)?);
    let fs: Vec<Instance> = [(2, 3), (3, 3), (2, 5), (4, 3)]
        .into_iter()
        .map(|(q, r)| Ok(sub_inst(field_subspace(&fq(q)?, r)?)))
        .collect::<Result<_>>()?;
    let ctz: Vec<Instance> = [2, 3, 4, 5, 7]
        .into_iter()
        .map(|q| Ok(sub_inst(cubic_trace_zero(&fq(q)?)?)))
        .collect::<Result<_>>()?;
    let qc2: Vec<Instance> = [2, 4]
        .into_iter()
        .map(|q| Ok(sub_inst(quartic_char2(&fq(q)?)?)))
        .collect::<Result<_>>()?;
    let red_cubic: Vec<Instance> = [2, 3]
        .into_iter()
        .map(|m| Ok(sub_inst(Construction::Reduce { q: 2, m, of: ReduceSource::CubicTraceZero }.build()?)))
        .collect::<Result<_>>()?;
    let red_quartic = sub_inst(Construction::Reduce { q: 2, m: 2, of: ReduceSource::QuarticChar2 }.build()?);
    let pencils: Vec<Instance> = [(2, 2), (3, 2), (2, 3)]
        .into_iter()
        .map(|(q, d)| Ok(sub_inst(block_field_pair(&fq(q)?, d)?)))
        .collect::<Result<_>>()?;
    let full2: Vec<Instance> = [3, 5, 7, 11]
        .into_iter()
        .map(|q| Ok(sub_inst(full_space(&fq(q)?, 2, 2)?)))
        .collect::<Result<_>>()?;
    let prefixes: Vec<Instance> = [2, 3]
        .into_iter()
        .map(|q| Ok(sub_inst(prefix_span(&field_subspace(&fq(q)?, 3)?, 2)?)))
        .collect::<Result<_>>()?;
    let skew = |q: u64, n: usize| -> Result<Instance> { Ok(sub_inst(skew_space(&fq(q)?, n)?)) };
    let rskew4 = sub_inst(random_skew_subspace(&fq(3)?, 4, 3, cfg.seed)?);
    let rskew6 = sub_inst(random_skew_subspace(&fq(3)?, 6, 3, cfg.seed)?);
    let diags: Vec<Instance> = [(2, 3), (3, 2), (5, 3)]
        .into_iter()
        .map(|(q, n)| Ok(sub_inst(diagonal(&fq(q)?, n)?)))
        .collect::<Result<_>>()?;
    let rect = sub_inst(random_subspace(&fq(3)?, 3, 4, 4, cfg.seed)?);
    let doubled_fs = |q: u64| -> Result<Instance> { Ok(sub_inst(doubled(&field_subspace(&fq(q)?, 2)?)?)) };
    let wide: Vec<Instance> = [2, 3].into_iter().map(|q| Ok(sub_inst(field_plus_unit(q)?))).collect::<Result<_>>()?;
    let sextic = square_valued_sextic()?;
    let sq3 = scaled_square(3, 2)?;
    let sq5 = scaled_square(5, 2)?;

    let mut out = Vec::new();
    let mut add = |id: &'static str, insts: Vec<&Instance>| {
        out.extend(insts.into_iter().map(|i| SuiteEntry { id, instance: i.clone() }));
    };
    let fs_ref: Vec<&Instance> = fs.iter().collect();
    let pencil_family: Vec<&Instance> = fs.iter().chain([&ex3_7, &ex3_13]).chain(&ctz).collect();

    add("T1.2", vec![&ex1, &ex2, &ex3_7]);
    add("L1.3", vec![&ex1, &ex2, &ex3_7, &full2[0], &fs[0]]);
    add("C1.4", fs_ref.clone());
    add("C1.5", fs_ref.clone());
    add("C1.6", vec![&fs[0], &fs[1], &wide[0], &wide[1]]);
    add("T2.1", full2.iter().chain(&wide).collect());
    add("C2.2", fs_ref.clone());
    for id in ["T3.2", "L3.3", "C3.4", "C3.5"] {
        add(id, pencil_family.clone());
    }
    add("T3.6", fs_ref.clone());
    add("T3.7", pencils.iter().collect());
    add("C3.8", pencils.iter().collect());
    add("L3.9", pencil_family.iter().copied().chain(&red_cubic).chain([&red_quartic]).collect());
    add("T3.10", wide.iter().collect());
    add("T4.1", ctz.iter().collect());
    add("E3", vec![&ex3_7, &ex3_13]);
    add("C4.2", red_cubic.iter().collect());
    add("T4.4", qc2.iter().collect());
    add("C4.5", vec![&red_quartic]);
    for id in ["L5.1", "C5.2", "C5.10"] {
        add(id, prefixes.iter().collect());
    }
    for id in ["L5.3", "C5.4", "C5.9"] {
        add(id, vec![&fs[0], &fs[1]]);
    }
    add("T5.6", vec![&fs[0], &fs[1], &fs[3], &prefixes[0], &prefixes[1]]);
    add("T5.8", vec![&fs[0], &fs[1], &prefixes[0], &prefixes[1]]);
    add("L5.7", vec![&Instance::Arithmetic { r_max: 13, q_max: 64 }]);

    let skew34 = skew(3, 4)?;
    let d3 = doubled_fs(3)?;
    let d5 = doubled_fs(5)?;
    add("L6.1", vec![&sextic, &sq3, &full2[0], &skew34]);
    add("T6.2", vec![&sq3, &sq5, &sextic]);
    add("T6.3", vec![&sextic, &skew34]);
    add("C6.4", vec![&d3]);
    add("C6.5", vec![&d3, &d5]);
    let pairs: Vec<Instance> = [(3, 4), (3, 6), (5, 4), (5, 6)]
        .into_iter()
        .map(|(q, n)| Instance::SkewPairs { q, n, samples: 50 })
        .collect();
    add("C6.6", [&d3, &skew34].into_iter().chain(&pairs).collect());

    let mut t71: Vec<&Instance> = diags.iter().collect();
    t71.extend([&fs[0], &fs[1], &pencils[0], &full2[0], &ex1]);
    add("T7.1", t71);
    add("T7.2", vec![&rect, &diags[0], &pencils[0]]);
    let skew54 = skew(5, 4)?;
    let skew24 = skew(2, 4)?;
    let skew35 = skew(3, 5)?;
    add("T7.3", vec![&skew34, &skew54, &skew24, &rskew4]);
    add("T7.4", vec![&skew34, &skew35, &rskew6]);
    Ok(out)
}

/// Runs [`designated_suite`] in parallel, reports in suite order.
pub fn run_suite(cfg: &Config) -> Result<Vec<VerdictReport>> {
    designated_suite(cfg)?
        .par_iter()
        .map(|e| verify(e.id, &e.instance, cfg))
        .collect()
}
