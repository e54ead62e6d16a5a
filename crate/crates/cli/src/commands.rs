use std::path::PathBuf;

use clap::{Args, ValueEnum};
use detspace_core::detkit::{
    char_poly, classify, det_poly, pfaffian, rank_census, singular_part, zero_census, CensusMode,
};
use detspace_core::io::{subspace_from_json, subspace_to_json};
use detspace_core::matrix::construct::{Construction, ReduceSource};
use detspace_core::matrix::MatrixSubspace;
use detspace_core::theorems::{self, centralizer, normalizer_quotient, Instance, VerdictReport};
use detspace_core::{Field, Fq, Homogeneity};
use serde_json::json;

use crate::output::{Context, Outcome, Report, Table};
use crate::{CliError, Command};

type Res<T> = Result<T, CliError>;

#[derive(Args, Debug)]
pub struct InputArgs {
    /// Subspace file (JSON)
    #[arg(short, long)]
    pub input: PathBuf,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ConstructName {
    Ex1,
    Ex2,
    Ex3,
    #[value(name = "thm3_7")]
    Thm37,
    #[value(name = "thm4_1")]
    Thm41,
    #[value(name = "thm4_4")]
    Thm44,
    Field,
    Reduce,
    Diag,
    Full,
    Skew,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ReduceOf {
    #[value(name = "thm4_1")]
    Thm41,
    #[value(name = "thm4_4")]
    Thm44,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub name: ConstructName,
    /// Field order
    #[arg(long)]
    pub q: Option<u64>,
    /// Non-cube parameter of ex3, as an element encoding
    #[arg(long)]
    pub b: Option<u64>,
    /// Dimension parameter of thm3_7
    #[arg(long)]
    pub d: Option<usize>,
    /// Degree of the field subspace
    #[arg(long)]
    pub t: Option<usize>,
    /// Extension degree of reduce
    #[arg(long)]
    pub m: Option<usize>,
    /// Matrix size of diag, full and skew
    #[arg(long)]
    pub n: Option<usize>,
    /// Construction reduced by `reduce`
    #[arg(long, value_enum)]
    pub of: Option<ReduceOf>,
    /// Output file; the subspace JSON goes to stdout when absent
    #[arg(short, long)]
    pub output_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CharpolyArgs {
    /// Subspace file (JSON)
    #[arg(short, long)]
    pub input: PathBuf,
    /// Coordinates λ1,…,λd of the element, as element encodings
    #[arg(long, value_delimiter = ',', required = true)]
    pub coeffs: Vec<u64>,
}

#[derive(Args, Debug)]
pub struct CensusArgs {
    /// Subspace file (JSON)
    #[arg(short, long)]
    pub input: PathBuf,
    /// Also count projective zeros (homogeneous polynomials only)
    #[arg(long)]
    pub projective: bool,
}

#[derive(Args, Debug)]
pub struct GroupArgs {
    /// Subspace file (JSON)
    #[arg(short, long)]
    pub input: PathBuf,
    /// Also scan GL(n,q) for the normalizer (within the group budget)
    #[arg(long)]
    pub normalizer: bool,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("what").required(true).args(["id", "suite"]))]
pub struct VerifyArgs {
    /// Catalogue id such as T3.2
    #[arg(long)]
    pub id: Option<String>,
    /// Subspace file checked by --id
    #[arg(short, long, requires = "id")]
    pub input: Option<PathBuf>,
    /// Run the designated instance set
    #[arg(long)]
    pub suite: bool,
}

pub fn run(cmd: &Command, ctx: &Context) -> Res<Outcome> {
    match cmd {
        Command::Construct(a) => construct(a, ctx),
        Command::Detpoly(a) => detpoly(a, ctx),
        Command::Charpoly(a) => charpoly(a, ctx),
        Command::Census(a) => census(a, ctx),
        Command::Classify(a) => classify_cmd(a, ctx),
        Command::Singular(a) => singular(a, ctx),
        Command::Rank(a) => rank(a, ctx),
        Command::Pfaffian(a) => pfaffian_cmd(a, ctx),
        Command::Group(a) => group(a, ctx),
        Command::Verify(a) => verify(a, ctx),
    }
}

fn load(path: &PathBuf) -> Res<MatrixSubspace<Fq>> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(subspace_from_json(&text)?)
}

fn start(command: &'static str, sub: &MatrixSubspace<Fq>) -> Report {
    let mut r = Report::new(command);
    r.instance(sub.field().order(), sub.shape().0, sub.dim());
    if let Some(t) = sub.tags().get("construction") {
        r.row("construction", t);
    }
    r
}

fn need<T>(v: Option<T>, flag: &str, name: &str) -> Res<T> {
    v.ok_or_else(|| CliError::Usage(format!("{name} needs --{flag}")))
}

fn construct(a: &ConstructArgs, ctx: &Context) -> Res<Outcome> {
    use ConstructName as N;
    let q = || need(a.q, "q", "this construction");
    let c = match a.name {
        N::Ex1 => Construction::DiagonalF2,
        N::Ex2 => Construction::DiagonalF3,
        N::Ex3 => Construction::CubicNorm { q: q()?, b: need(a.b, "b", "ex3")? },
        N::Thm37 => Construction::BlockField { q: q()?, d: need(a.d, "d", "thm3_7")? },
        N::Thm41 => Construction::CubicTraceZero { q: q()? },
        N::Thm44 => Construction::QuarticChar2 { q: q()? },
        N::Field => Construction::Field { q: q()?, t: need(a.t, "t", "field")? },
        N::Reduce => Construction::Reduce {
            q: q()?,
            m: need(a.m, "m", "reduce")?,
            of: match need(a.of, "of", "reduce")? {
                ReduceOf::Thm41 => ReduceSource::CubicTraceZero,
                ReduceOf::Thm44 => ReduceSource::QuarticChar2,
            },
        },
        N::Diag => Construction::Diagonal { q: q()?, n: need(a.n, "n", "diag")? },
        N::Full => Construction::Full { q: q()?, n: need(a.n, "n", "full")? },
        N::Skew => Construction::Skew { q: q()?, n: need(a.n, "n", "skew")? },
    };
    let sub = c.build()?;
    let text = subspace_to_json(&sub) + "\n";
    let Some(path) = &a.output_file else {
        return Ok(Outcome { rendered: text, passed: true });
    };
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut r = start("construct", &sub);
    r.row("written", path.display().to_string());
    Ok(r.finish(ctx))
}

fn degree_text(h: Homogeneity) -> String {
    match h {
        Homogeneity::Zero => "zero polynomial".into(),
        Homogeneity::Homogeneous(n) => format!("homogeneous of degree {n}"),
        Homogeneity::Inhomogeneous => "inhomogeneous".into(),
    }
}

fn detpoly(a: &InputArgs, ctx: &Context) -> Res<Outcome> {
    let sub = load(&a.input)?;
    let p = det_poly(&sub)?;
    let mut r = start("detpoly", &sub);
    r.row("field", sub.field().name())
        .row("polynomial", p.render())
        .row("terms", p.terms().count())
        .row("shape", degree_text(p.homogeneity()));
    Ok(r.finish(ctx))
}

fn charpoly(a: &CharpolyArgs, ctx: &Context) -> Res<Outcome> {
    let sub = load(&a.input)?;
    let field = sub.field();
    if a.coeffs.len() != sub.dim() {
        return Err(CliError::Usage(format!(
            "--coeffs has {} entries, the subspace has dimension {}",
            a.coeffs.len(),
            sub.dim()
        )));
    }
    let lambdas = a.coeffs.iter().map(|&v| field.elem(v)).collect::<detspace_core::Result<Vec<_>>>()?;
    let m = sub.combination(&lambdas);
    let f = char_poly(field, &m)?;
    let mut r = start("charpoly", &sub);
    r.row("coeffs", &a.coeffs)
        .row("element", m.to_rows())
        .row("char_poly", f.render("y"))
        .row("irreducible", f.is_irreducible()?);
    Ok(r.finish(ctx))
}

fn census(a: &CensusArgs, ctx: &Context) -> Res<Outcome> {
    let sub = load(&a.input)?;
    let p = det_poly(&sub)?;
    let mode = if a.projective { CensusMode::Both } else { CensusMode::Affine };
    let c = zero_census(&p, mode, &ctx.cfg)?;
    let q = c.q;
    let mut r = start("census", &sub);
    r.row("polynomial", p.render())
        .row("points", (q as u128).pow(c.d as u32) as u64)
        .row("N_affine", c.n_affine)
        .row("N_nontrivial", c.nontrivial());
    if a.projective {
        r.row("N_projective", c.n_projective);
        if let (Some(na), Some(np)) = (c.n_affine, c.n_projective) {
            let ok = na == 1 + (q - 1) * np;
            r.row("affine_projective_consistent", ok);
            if !ok {
                r.fail();
            }
        }
    }
    Ok(r.finish(ctx))
}

fn classify_cmd(a: &InputArgs, ctx: &Context) -> Res<Outcome> {
    let sub = load(&a.input)?;
    let c = classify(&sub, &ctx.cfg)?;
    let mut r = start("classify", &sub);
    r.row("polynomial", &c.polynomial).row("N_affine", c.n_affine);
    let v = &c.verdicts;
    r.row("is_zero_poly", v.is_zero_poly)
        .row("vanishes_everywhere", v.vanishes_everywhere)
        .row("chevalley_irreducible", v.chevalley_irreducible)
        .row("norm_form", v.norm_form)
        .row("is_square", v.is_square)
        .row("abs_irreducible_heur", v.heuristic_abs_irreducible);
    if let Some(w) = &c.witness.norm_form {
        r.row("norm_form_witness", w);
    }
    if let Some(s) = &c.witness.square_root {
        r.row("square_root", s);
    }
    if let Some(cm) = &c.witness.cafure_matera {
        r.row("cafure_matera", cm);
    }
    for (i, note) in c.notes.iter().enumerate() {
        r.row(&format!("note_{}", i + 1), note);
    }
    Ok(r.finish(ctx))
}

fn singular(a: &InputArgs, ctx: &Context) -> Res<Outcome> {
    let sub = load(&a.input)?;
    let sp = singular_part(&sub, &ctx.cfg)?;
    let mut r = start("singular", &sub);
    r.row("singular_count", sp.count)
        .row("span_dim", sp.span_dim)
        .row("is_subspace", sp.is_subspace());
    if let Some(b) = &sp.basis {
        r.row("basis", b.iter().map(|m| m.to_rows()).collect::<Vec<_>>());
    }
    Ok(r.finish(ctx))
}

fn rank(a: &InputArgs, ctx: &Context) -> Res<Outcome> {
    let sub = load(&a.input)?;
    let rc = rank_census(&sub, &ctx.cfg)?;
    let mut r = start("rank", &sub);
    r.row("shape", format!("{}x{}", rc.rows, rc.cols));
    let rows: Vec<Vec<String>> = rc.counts.iter().map(|(k, c)| vec![k.to_string(), c.to_string()]).collect();
    let mut bound_rows: Vec<Vec<String>> = Vec::new();
    for b in &rc.bounds {
        bound_rows.push(vec![
            b.name.clone(),
            b.min_rank.to_string(),
            b.count.to_string(),
            b.bound.to_string(),
            if b.holds { "holds" } else { "VIOLATED" }.into(),
        ]);
    }
    r.row("rank_counts", crate::output::render_table(&["rank", "count"], &rows));
    r.row("max_rank", rc.max_rank());
    if !rc.all_bounds_hold() {
        r.fail();
    }
    r.table(Table {
        key: "census",
        headers: vec!["bound", "min_rank", "count", "lower_bound", "status"],
        rows: bound_rows,
        json: serde_json::to_value(&rc).expect("serializable"),
    });
    Ok(r.finish(ctx))
}

fn pfaffian_cmd(a: &InputArgs, ctx: &Context) -> Res<Outcome> {
    let sub = load(&a.input)?;
    let pf = pfaffian(&sub)?;
    let det = det_poly(&sub)?;
    let ok = pf.mul(&pf)? == det;
    let mut r = start("pfaffian", &sub);
    r.row("pfaffian", pf.render()).row("square_equals_det", ok);
    if !ok {
        r.fail();
    }
    Ok(r.finish(ctx))
}

fn group(a: &GroupArgs, ctx: &Context) -> Res<Outcome> {
    let sub = load(&a.input)?;
    sub.require_square()?;
    let g = if a.normalizer {
        normalizer_quotient(&sub, &ctx.cfg)?
    } else {
        centralizer(&sub, &ctx.cfg)?
    };
    let mut r = start("group", &sub);
    r.row("centralizer_dim", g.centralizer_dim)
        .row("centralizer_order", g.centralizer_order)
        .row("centralizer_is_field", g.centralizer_is_field);
    if a.normalizer {
        r.row("normalizer_order", g.normalizer_order)
            .row("quotient_order", g.quotient_order)
            .row("skipped", &g.skipped);
    }
    Ok(r.finish(ctx))
}

fn verdict_rows(r: &mut Report, v: &VerdictReport) {
    r.row("theorem", &v.theorem_id)
        .row("label", &v.instance.label)
        .row("passed", v.passed);
    for (k, x) in &v.numbers {
        r.row(k, x);
    }
    for (k, x) in &v.witnesses {
        r.row(&format!("witness.{k}"), x);
    }
    for (i, c) in v.caveats.iter().enumerate() {
        r.row(&format!("caveat_{}", i + 1), c);
    }
    for (i, c) in v.violations.iter().enumerate() {
        r.row(&format!("violation_{}", i + 1), c);
    }
}

fn verify(a: &VerifyArgs, ctx: &Context) -> Res<Outcome> {
    if a.suite {
        return suite(ctx);
    }
    let id = a.id.as_deref().expect("clap enforces --id or --suite");
    let entry = theorems::lookup(id)?;
    let (inst, mut r) = match &a.input {
        Some(path) => {
            let sub = load(path)?;
            let label = sub.tags().get("construction").cloned().unwrap_or_else(|| path.display().to_string());
            let r = start("verify", &sub);
            (Instance::subspace(label, sub), r)
        }
        None if entry.id == "L5.7" => (Instance::Arithmetic { r_max: 13, q_max: 64 }, Report::new("verify")),
        None => return Err(CliError::Usage(format!("{id} needs -i <subspace file>"))),
    };
    let v = theorems::verify(id, &inst, &ctx.cfg)?;
    r.row("summary", entry.summary);
    verdict_rows(&mut r, &v);
    if !v.passed {
        r.fail();
    }
    Ok(r.finish(ctx))
}

fn suite(ctx: &Context) -> Res<Outcome> {
    let reports = theorems::run_suite(&ctx.cfg)?;
    let failed: Vec<String> = reports
        .iter()
        .filter(|v| !v.passed)
        .map(|v| format!("{} {}", v.theorem_id, v.instance.label))
        .collect();
    let mut r = Report::new("verify --suite");
    r.row("checks", reports.len())
        .row("passed", reports.len() - failed.len())
        .row("failed", failed.len());
    if !failed.is_empty() {
        r.row("failures", failed.join("\n"));
        r.fail();
    }
    let rows = reports
        .iter()
        .map(|v| {
            vec![
                v.theorem_id.clone(),
                v.instance.label.clone(),
                if v.passed { "PASS" } else { "FAIL" }.into(),
                v.caveats.len().to_string(),
                v.violations.first().or(v.caveats.first()).cloned().unwrap_or_default(),
            ]
        })
        .collect();
    r.table(Table {
        key: "reports",
        headers: vec!["id", "instance", "result", "caveats", "note"],
        rows,
        json: json!(reports),
    });
    Ok(r.finish(ctx))
}
