//! Acceptance run. Prints one PASS/FAIL line per criterion with its elapsed
//! time against the allowed runtime, then exits nonzero if any criterion
//! outside `KNOWN_FAILURES` failed or a known failure unexpectedly passed.
//!
//! All reference values are recomputed here with independent code: Gaussian
//! elimination, cofactor expansion, trial division and direct enumeration.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use detspace_core::detkit::bounds::cafure_matera;
use detspace_core::detkit::{
    char_poly, classify, det_poly, norm_form_witness, pfaffian, rank_census, singular_part, zero_census, CensusMode,
};
use detspace_core::matrix::construct::{
    block_field_pair, cubic_norm, cubic_trace_zero, cubic_trace_zero_tau, diagonal, diagonal_f2, diagonal_f3,
    field_subspace, full_space, quartic_char2, random_skew_subspace, random_subspace, skew_space, Construction,
    ReduceSource,
};
use detspace_core::matrix::{find_invertible_extension, CandidatePool, Matrix, MatrixSubspace};
use detspace_core::theorems::{centralizer, normalizer_quotient, verify, Instance};
use detspace_core::{Config, Field, Fq, MultiPoly, Ring, UniPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria expected to fail; see the README for the analysis.
const KNOWN_FAILURES: &[u32] = &[4];

type Rows = Vec<Vec<u32>>;

/// Collects failed clauses and informational notes for one criterion.
#[derive(Default)]
struct Ctx {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Ctx {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

fn fq(q: u64) -> Fq {
    Fq::of_order(q).expect("prime power")
}

fn cfg() -> Config {
    Config::default()
}

// ---------------------------------------------------------------- oracles

fn gauss(f: &Fq, m: &[Vec<u32>]) -> (usize, u32) {
    let mut a = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut det = f.one();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else {
            det = 0;
            continue;
        };
        if p != r {
            a.swap(p, r);
            det = f.neg(&det);
        }
        det = f.mul(&det, &a[r][c]);
        let inv = f.inv(&a[r][c]).unwrap();
        for i in r + 1..rows {
            let t = f.mul(&a[i][c], &inv);
            if t != 0 {
                for j in c..cols {
                    let s = f.mul(&t, &a[r][j]);
                    a[i][j] = f.sub(&a[i][j], &s);
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    if r < rows || rows != cols {
        det = 0;
    }
    (r, det)
}

fn rank(f: &Fq, m: &[Vec<u32>]) -> usize {
    gauss(f, m).0
}

fn det(f: &Fq, m: &[Vec<u32>]) -> u32 {
    gauss(f, m).1
}

fn mul(f: &Fq, a: &[Vec<u32>], b: &[Vec<u32>]) -> Rows {
    (0..a.len())
        .map(|i| {
            (0..b[0].len())
                .map(|j| (0..b.len()).fold(0, |acc, k| f.add(&acc, &f.mul(&a[i][k], &b[k][j]))))
                .collect()
        })
        .collect()
}

fn inverse(f: &Fq, m: &[Vec<u32>]) -> Option<Rows> {
    let n = m.len();
    let mut a: Rows = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u32::from(i == j)));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| a[i][c] != 0)?;
        a.swap(p, c);
        let inv = f.inv(&a[c][c]).unwrap();
        for x in a[c].iter_mut() {
            *x = f.mul(x, &inv);
        }
        for i in 0..n {
            if i != c && a[i][c] != 0 {
                let t = a[i][c];
                for j in 0..2 * n {
                    let s = f.mul(&t, &a[c][j]);
                    a[i][j] = f.sub(&a[i][j], &s);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Rank of matrices viewed as vectors.
fn span_rank(f: &Fq, ms: &[Rows]) -> usize {
    if ms.is_empty() {
        return 0;
    }
    rank(f, &ms.iter().map(|m| m.concat()).collect::<Vec<_>>())
}

fn combination(f: &Fq, basis: &[Rows], c: &[u32]) -> Rows {
    let n = basis[0].len();
    let k = basis[0][0].len();
    (0..n)
        .map(|i| {
            (0..k)
                .map(|j| c.iter().zip(basis).fold(0, |acc, (ci, b)| f.add(&acc, &f.mul(ci, &b[i][j]))))
                .collect()
        })
        .collect()
}

/// All coefficient tuples of length `d`, first coordinate fastest.
fn tuples(f: &Fq, d: usize) -> impl Iterator<Item = Vec<u32>> + '_ {
    let q = f.order();
    (0..q.pow(d as u32)).map(move |mut i| {
        (0..d)
            .map(|_| {
                let e = f.element(i % q);
                i /= q;
                e
            })
            .collect()
    })
}

fn basis_rows(sub: &MatrixSubspace<Fq>) -> Vec<Rows> {
    sub.basis().iter().map(Matrix::to_rows).collect()
}

fn elements(sub: &MatrixSubspace<Fq>) -> Vec<Rows> {
    let b = basis_rows(sub);
    tuples(sub.field(), sub.dim()).map(|c| combination(sub.field(), &b, &c)).collect()
}

fn is_zero(m: &[Vec<u32>]) -> bool {
    m.iter().flatten().all(|&x| x == 0)
}

/// Determinant of a matrix of polynomials by cofactor expansion along the
/// first row.
fn laplace(m: &[Vec<MultiPoly<Fq>>]) -> MultiPoly<Fq> {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = MultiPoly::zero(m[0][0].field(), m[0][0].nvars());
    for j in 0..n {
        let minor: Vec<Vec<MultiPoly<Fq>>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, e)| e.clone()).collect())
            .collect();
        let term = m[0][j].mul(&laplace(&minor)).unwrap();
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) }.unwrap();
    }
    acc
}

/// `Σ_k x_k B_k` as a matrix of linear forms.
fn symbolic(sub: &MatrixSubspace<Fq>) -> Vec<Vec<MultiPoly<Fq>>> {
    let f = sub.field();
    let d = sub.dim();
    let b = basis_rows(sub);
    let n = sub.n();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    MultiPoly::from_terms(
                        f,
                        d,
                        (0..d).map(|k| {
                            let mut e = vec![0; d];
                            e[k] = 1;
                            (e, b[k][i][j])
                        }),
                    )
                    .unwrap()
                })
                .collect()
        })
        .collect()
}

/// Dense polynomials over a prime field, lowest coefficient first.
fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn dense_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let b = trim(b.to_vec());
    let lead_inv = (1..p).find(|x| x * b[b.len() - 1] % p == 1).unwrap();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let t = r[r.len() - 1] * lead_inv % p;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - t * bi % p) % p;
        }
        r = trim(r);
    }
    r
}

/// Does `a` have a monic factor of degree between 1 and `deg(a)/2`?
fn has_small_factor(a: &[u64], p: u64) -> bool {
    let n = trim(a.to_vec()).len() - 1;
    for k in 1..=n / 2 {
        for i in 0..p.pow(k as u32) {
            let mut g: Vec<u64> = (0..k).map(|j| i / p.pow(j as u32) % p).collect();
            g.push(1);
            if dense_rem(a, &g, p).is_empty() {
                return true;
            }
        }
    }
    false
}

/// Coefficients of a univariate polynomial over a prime field as integers.
fn dense(u: &UniPoly<Fq>) -> Vec<u64> {
    u.coeffs().iter().map(|c| u.field().index_of(c)).collect()
}

/// The characteristic polynomial agrees with `det(tI - M)` at every `t`.
fn charpoly_pointwise(f: &Fq, cp: &UniPoly<Fq>, m: &[Vec<u32>]) -> bool {
    f.elements().all(|t| {
        let shifted: Rows = m
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().enumerate().map(|(j, x)| if i == j { f.sub(&t, x) } else { f.neg(x) }).collect())
            .collect();
        cp.eval(&t) == det(f, &shifted)
    })
}

fn random_skew(f: &Fq, n: usize, rng: &mut ChaCha8Rng) -> Rows {
    let q = f.order();
    let mut m = vec![vec![0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let a = f.element(rng.gen_range(0..q));
            m[i][j] = a;
            m[j][i] = f.neg(&a);
        }
    }
    m
}

fn gl_order(n: u32, q: u128) -> u128 {
    (0..n).map(|i| q.pow(n) - q.pow(i)).product()
}

fn var(f: &Fq, nvars: usize, i: usize) -> MultiPoly<Fq> {
    MultiPoly::var(f, nvars, i).unwrap()
}

fn prod(ps: &[MultiPoly<Fq>]) -> MultiPoly<Fq> {
    ps[1..].iter().fold(ps[0].clone(), |a, b| a.mul(b).unwrap())
}

// ---------------------------------------------------------------- criteria

fn example_fidelity(cx: &mut Ctx) {
    let f2 = fq(2);
    let (x1, x2) = (var(&f2, 2, 0), var(&f2, 2, 1));
    let e1 = prod(&[x1.clone(), x1.clone(), x2.clone()]).add(&prod(&[x1, x2.clone(), x2])).unwrap();
    let f3 = fq(3);
    let (y1, y2) = (var(&f3, 2, 0), var(&f3, 2, 1));
    let e2 = prod(&[y1.clone(), y2.clone(), y1.add(&y2).unwrap(), y1.sub(&y2).unwrap()]);

    for (name, sub, expected, q) in [("ex1", diagonal_f2(), e1, 2u64), ("ex2", diagonal_f3(), e2, 3)] {
        let p = det_poly(&sub).unwrap();
        cx.check(p == expected, || format!("{name}: det_poly {} differs from the expanded product", p.render()));
        cx.check(laplace(&symbolic(&sub)) == p, || format!("{name}: cofactor expansion disagrees"));
        let f = sub.field().clone();
        let direct = tuples(&f, 2).filter(|x| expected.eval(x).unwrap() == 0).count() as u64;
        let c = zero_census(&p, CensusMode::Both, &cfg()).unwrap();
        cx.check(c.n_affine == Some(q * q) && direct == q * q, || format!("{name}: census {:?}, direct {direct}", c.n_affine));
        cx.check(c.n_affine == c.n_projective.map(|np| 1 + (q - 1) * np), || format!("{name}: projective count inconsistent"));
        let v = classify(&sub, &cfg()).unwrap().verdicts;
        cx.check(v.vanishes_everywhere && !v.is_zero_poly && q < sub.n() as u64, || format!("{name}: vanishing not flagged"));
        let r = verify("T1.2", &Instance::subspace(name, sub), &cfg()).unwrap();
        cx.check(r.passed, || format!("{name}: T1.2 violations {:?}", r.violations));
        cx.note(format!("{name}: {} with {}/{} zeros", p.render(), direct, q * q));
    }
}

fn cubic_norm_example(cx: &mut Ctx) {
    let f = fq(7);
    let sub = cubic_norm(&f, 3).unwrap();
    let p = det_poly(&sub).unwrap();
    let expected = MultiPoly::from_terms(&f, 3, [(vec![0, 3, 0], 3), (vec![0, 0, 3], 2)]).unwrap();
    // b(x2^3 + b x3^3) with b = 3: 3 x2^3 + 9 x3^3 and 9 = 2 mod 7
    cx.check(p == expected, || format!("det_poly is {}", p.render()));
    cx.check(laplace(&symbolic(&sub)) == expected, || "cofactor expansion disagrees".into());
    cx.check(p.render() == "3*x2^3 + 2*x3^3", || format!("rendered as {}", p.render()));

    let a = sub.basis()[0].to_rows();
    let singular: Vec<Rows> = elements(&sub).into_iter().filter(|m| det(&f, m) == 0).collect();
    cx.check(singular.len() == 7 && span_rank(&f, &singular) == 1, || format!("{} singular elements", singular.len()));
    cx.check(singular.iter().all(|m| span_rank(&f, &[a.clone(), m.clone()]) == 1), || "singular set is not span{A}".into());
    let sp = singular_part(&sub, &cfg()).unwrap();
    let spanned_by_a = sp
        .basis
        .as_ref()
        .is_some_and(|b| b.len() == 1 && span_rank(&f, &[a.clone(), b[0].to_rows()]) == 1);
    cx.check(sp.dim() == Some(1) && spanned_by_a, || format!("singular_part {:?}", sp.dim()));

    match norm_form_witness(&p, 3, &cfg()).unwrap() {
        Some(w) => {
            let e = w.expand();
            let all_points = tuples(&f, 3).all(|x| e.eval(&x).unwrap() == p.eval(&x).unwrap());
            cx.check(e == p && all_points, || "witness does not reproduce P".into());
            cx.check(w.irreducible(), || "witness form is defined over F_q".into());
        }
        None => cx.check(false, || "no norm-form witness".into()),
    }
}

fn trace_zero_constructions(cx: &mut Ctx) {
    for q in [2u64, 3, 4, 5, 7] {
        let f = fq(q);
        let sub = cubic_trace_zero(&f).unwrap();
        let tau = cubic_trace_zero_tau(&f).unwrap().to_rows();
        let sing: Vec<Rows> = elements(&sub).into_iter().filter(|m| det(&f, m) == 0).collect();
        cx.check(sing.len() as u64 == q, || format!("q={q}: {} singular elements", sing.len()));
        cx.check(!is_zero(&tau) && sing.iter().all(|m| span_rank(&f, &[tau.clone(), m.clone()]) == 1), || {
            format!("q={q}: singular elements outside span(tau)")
        });
        cx.check(sing.iter().filter(|m| !is_zero(m)).all(|m| rank(&f, m) == 2), || format!("q={q}: rank is not 2"));
    }
    for q in [2u64, 4] {
        let f = fq(q);
        let sub = quartic_char2(&f).unwrap();
        let sing: Vec<Rows> = elements(&sub).into_iter().filter(|m| det(&f, m) == 0).collect();
        cx.check(sing.len() as u64 == q && span_rank(&f, &sing) == 1, || format!("quartic q={q}: singular part wrong"));
        for t in sing.iter().filter(|m| !is_zero(m)) {
            cx.check(is_zero(&mul(&f, t, t)), || format!("quartic q={q}: T^2 != 0"));
            cx.check(rank(&f, t) == 2, || format!("quartic q={q}: rank {}", rank(&f, t)));
        }
        let id: Rows = (0..4).map(|i| (0..4).map(|j| u32::from(i == j)).collect()).collect();
        let mut with_id = basis_rows(&sub);
        with_id.push(id);
        cx.check(span_rank(&f, &with_id) == sub.dim(), || format!("quartic q={q}: I not in span"));
    }
    for m in [2usize, 3] {
        let sub = Construction::Reduce { q: 2, m, of: ReduceSource::CubicTraceZero }.build().unwrap();
        let f = sub.field().clone();
        let sing: Vec<Rows> = elements(&sub).into_iter().filter(|x| det(&f, x) == 0).collect();
        cx.check(sub.dim() == 3 * m && sub.n() == 3 * m, || format!("m={m}: shape {}x{} dim {}", sub.n(), sub.n(), sub.dim()));
        cx.check(sing.len() == 1 << m && span_rank(&f, &sing) == m, || format!("m={m}: {} singular", sing.len()));
        cx.check(sing.iter().filter(|x| !is_zero(x)).all(|x| rank(&f, x) == 2 * m), || format!("m={m}: rank is not 2m"));
    }
}

fn block_pencils(cx: &mut Ctx) {
    const BUDGET: usize = 1000;
    for (q, d) in [(2u64, 2usize), (3, 2), (2, 3)] {
        let f = fq(q);
        let sub = block_field_pair(&f, d).unwrap();
        let elems = elements(&sub);
        cx.check(elems[1..].iter().all(|m| det(&f, m) != 0), || format!("({q},{d}): singular nonzero element"));
        let mut pairs = 0;
        for a in &elems[1..] {
            let a_inv = inverse(&f, a).unwrap();
            for b in elems.iter().filter(|b| span_rank(&f, &[a.clone(), (*b).clone()]) == 2) {
                let c = mul(&f, &a_inv, b);
                let cp = char_poly(&f, &Matrix::from_rows(c.clone()).unwrap()).unwrap();
                pairs += 1;
                cx.check(charpoly_pointwise(&f, &cp, &c), || format!("({q},{d}): char_poly disagrees with det(tI - C)"));
                cx.check(cp.degree() == Some(2 * d + 1) && has_small_factor(&dense(&cp), q), || {
                    format!("({q},{d}): irreducible A^-1 B char poly {}", cp.render("y"))
                });
            }
        }
        let search = find_invertible_extension(&sub, &CandidatePool::Seeded(0), BUDGET, &cfg()).unwrap();
        match search.found {
            None => {
                cx.check(search.tried >= BUDGET, || format!("({q},{d}): only {} candidates", search.tried));
                cx.note(format!("({q},{d}): {pairs} pairs reducible; no enlargement in {} candidates", search.tried));
            }
            Some(x) => {
                let mut basis = basis_rows(&sub);
                basis.push(x.to_rows());
                let genuine = tuples(&f, d + 1).skip(1).all(|c| det(&f, &combination(&f, &basis, &c)) != 0);
                cx.check(false, || {
                    format!(
                        "({q},{d}): invertible-only enlargement found after {} candidates (brute-force recheck: {})",
                        search.tried,
                        if genuine { "genuine" } else { "NOT genuine" }
                    )
                });
            }
        }
    }
}

fn field_subspaces(cx: &mut Ctx) {
    for (q, r) in [(2u64, 3usize), (3, 3), (2, 5), (4, 3)] {
        let f = fq(q);
        let sub = field_subspace(&f, r).unwrap();
        let v = classify(&sub, &cfg()).unwrap().verdicts;
        cx.check(2 * r >= 1 + r && v.chevalley_irreducible, || format!("({q},{r}): Chevalley certificate missing"));
        cx.check(v.norm_form, || format!("({q},{r}): no norm form"));
        let mut by_cp: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
        let mut singular = 0;
        for m in elements(&sub) {
            if det(&f, &m) == 0 {
                singular += 1;
            }
            let scalar = (0..r).all(|i| (0..r).all(|j| if i == j { m[i][i] == m[0][0] } else { m[i][j] == 0 }));
            if scalar {
                continue;
            }
            let cp = char_poly(&f, &Matrix::from_rows(m.clone()).unwrap()).unwrap();
            let irreducible = if r == 3 {
                f.elements().all(|t| cp.eval(&t) != 0)
            } else {
                !has_small_factor(&dense(&cp), q)
            };
            cx.check(charpoly_pointwise(&f, &cp, &m), || format!("({q},{r}): char_poly disagrees with det(tI - M)"));
            cx.check(cp.degree() == Some(r) && irreducible, || format!("({q},{r}): reducible {}", cp.render("y")));
            *by_cp.entry(cp.coeffs().to_vec()).or_default() += 1;
        }
        cx.check(by_cp.values().all(|&c| c == r), || format!("({q},{r}): char poly multiplicities {by_cp:?}"));
        cx.check(singular == 1, || format!("({q},{r}): {singular} singular elements"));
        for id in ["T3.2", "T3.6", "C3.4", "C3.5"] {
            let rep = verify(id, &Instance::subspace("field", sub.clone()), &cfg()).unwrap();
            cx.check(rep.passed, || format!("({q},{r}) {id}: {:?}", rep.violations));
            if id == "T3.6" {
                cx.check(rep.caveats.iter().any(|c| c.contains("q > r^6") && c.contains("not met")), || {
                    format!("({q},{r}): largeness caveat missing")
                });
            }
        }
    }
}

fn full_m2_census(cx: &mut Ctx) {
    let cfg = Config { affine_cap: 1 << 25, ..Config::default() };
    for q in [3u64, 5, 7, 11, 67] {
        let f = fq(q);
        let p = det_poly(&full_space(&f, 2, 2).unwrap()).unwrap();
        let c = zero_census(&p, CensusMode::Both, &cfg).unwrap();
        let exact = q * q * q + q * q - q;
        cx.check(c.n_affine == Some(exact), || format!("q={q}: N_affine {:?}, expected {exact}", c.n_affine));
        cx.check(c.n_affine == c.n_projective.map(|np| 1 + (q - 1) * np), || format!("q={q}: projective count inconsistent"));
        if q <= 11 {
            let brute = (0..q.pow(4)).filter(|i| {
                let [a, b, cc, d] = [i % q, i / q % q, i / (q * q) % q, i / (q * q * q)];
                (a * d + q * q - b * cc % q) % q == 0
            });
            let brute = brute.count() as u64;
            cx.check(brute == exact, || format!("q={q}: brute force {brute}"));
        }
        // n = 2, d = 4: the first term vanishes, leaving 5 n^{13/3} q^2
        let dev = exact.abs_diff(q.pow(3)) as f64;
        let rhs = 5.0 * 2f64.powf(13.0 / 3.0) * (q * q) as f64;
        let cm = cafure_matera(exact, q, 4, 2);
        cx.check(dev <= rhs && cm.holds, || format!("q={q}: point-count bound fails"));
    }
}

fn square_suite(cx: &mut Ctx) {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut roundtrips = 0;
    while roundtrips < 200 {
        let q = [3u64, 4, 5, 7][rng.gen_range(0..4)];
        let f = fq(q);
        let nv = rng.gen_range(1..=3);
        let terms: Vec<(Vec<u32>, u32)> = (0..rng.gen_range(1..=4))
            .map(|_| ((0..nv).map(|_| rng.gen_range(0..=3)).collect(), f.element(rng.gen_range(1..q))))
            .collect();
        let g = MultiPoly::from_terms(&f, nv, terms).unwrap();
        if g.is_zero() {
            continue;
        }
        let sq = g.mul(&g).unwrap();
        let root = sq.sqrt();
        cx.check(root.as_ref().is_some_and(|s| *s == g || *s == g.neg()), || format!("sqrt of ({})^2 failed", g.render()));
        roundtrips += 1;
    }
    cx.note(format!("{roundtrips} square-root round trips"));

    for (q, n) in [(3u64, 2usize), (3, 4), (5, 4), (3, 6)] {
        let f = fq(q);
        let sub = skew_space(&f, n).unwrap();
        let pf = pfaffian(&sub).unwrap();
        let dp = det_poly(&sub).unwrap();
        cx.check(pf.mul(&pf).unwrap() == dp, || format!("q={q} n={n}: Pf^2 != det"));
        let b = basis_rows(&sub);
        for _ in 0..20 {
            let c: Vec<u32> = (0..sub.dim()).map(|_| f.element(rng.gen_range(0..q))).collect();
            let v = pf.eval(&c).unwrap();
            cx.check(f.mul(&v, &v) == det(&f, &combination(&f, &b, &c)), || format!("q={q} n={n}: Pf^2 != det at a point"));
        }
    }

    let f3 = fq(3);
    let sextic = MultiPoly::from_terms(&f3, 2, [(vec![6, 0], 1), (vec![2, 4], 2), (vec![0, 6], 1)]).unwrap();
    let square_valued = tuples(&f3, 2).all(|x| matches!(sextic.eval(&x).unwrap(), 0 | 1));
    cx.check(square_valued, || "sextic takes a non-square value".into());
    cx.check(sextic.sqrt().is_none(), || "sextic has a polynomial square root".into());
    let dehom = [1u64, 0, 2, 0, 0, 0, 1];
    cx.check(!has_small_factor(&dehom, 3), || "x^6 - x^2 + 1 has a factor".into());
    let uni = UniPoly::new(&f3, dehom.iter().map(|&c| c as u32).collect());
    cx.check(uni.is_irreducible().unwrap(), || "library reports x^6 - x^2 + 1 reducible".into());

    for (q, n) in [(3u64, 4usize), (3, 6), (5, 4), (5, 6)] {
        let f = fq(q);
        let mut done = 0;
        while done < 50 {
            let m = random_skew(&f, n, &mut rng);
            let Some(m_inv) = inverse(&f, &m) else { continue };
            let c = mul(&f, &m_inv, &random_skew(&f, n, &mut rng));
            let cp = char_poly(&f, &Matrix::from_rows(c.clone()).unwrap()).unwrap();
            cx.check(charpoly_pointwise(&f, &cp, &c), || format!("q={q} n={n}: char_poly disagrees with det(tI - C)"));
            let root = cp.sqrt_monic();
            cx.check(root.is_some_and(|s| s.is_monic() && s.mul(&s) == cp), || format!("q={q} n={n}: {} not a square", cp.render("y")));
            done += 1;
        }
        let rep = verify("C6.6", &Instance::SkewPairs { q, n, samples: 50 }, &cfg()).unwrap();
        cx.check(rep.passed, || format!("q={q} n={n} C6.6: {:?}", rep.violations));
    }
}

fn rank_histogram(sub: &MatrixSubspace<Fq>) -> BTreeMap<usize, u64> {
    let mut h = BTreeMap::new();
    for m in elements(sub) {
        *h.entry(rank(sub.field(), &m)).or_default() += 1;
    }
    h
}

fn rank_suite(cx: &mut Ctx) {
    let check_sub = |cx: &mut Ctx, label: String, sub: &MatrixSubspace<Fq>, ids: &[&str]| {
        let rc = rank_census(sub, &cfg()).unwrap();
        cx.check(rc.counts == rank_histogram(sub), || format!("{label}: rank histogram disagrees"));
        cx.check(rc.all_bounds_hold(), || format!("{label}: bounds {:?}", rc.bounds));
        for id in ids {
            let rep = verify(id, &Instance::subspace(label.clone(), sub.clone()), &cfg()).unwrap();
            cx.check(rep.passed, || format!("{label} {id}: {:?}", rep.violations));
        }
        rc
    };
    for q in [2u64, 3, 4, 5] {
        for n in 1..=3usize {
            let f = fq(q);
            let rc = check_sub(cx, format!("diag(q={q},n={n})"), &diagonal(&f, n).unwrap(), &["T7.1", "T7.2"]);
            cx.check(rc.counts.get(&n) == Some(&(q - 1).pow(n as u32)), || format!("diag(q={q},n={n}): {:?}", rc.counts));
        }
    }
    for (q, r) in [(2u64, 3usize), (3, 3), (2, 5), (4, 3)] {
        let rc = check_sub(cx, format!("field({q},{r})"), &field_subspace(&fq(q), r).unwrap(), &["T7.1"]);
        cx.check(rc.counts.get(&r) == Some(&(q.pow(r as u32) - 1)), || format!("field({q},{r}): {:?}", rc.counts));
    }
    for (q, d) in [(2u64, 2usize), (3, 2), (2, 3)] {
        let rc = check_sub(cx, format!("pencil({q},{d})"), &block_field_pair(&fq(q), d).unwrap(), &["T7.1"]);
        cx.check(rc.counts.get(&(2 * d + 1)) == Some(&(q.pow(d as u32) - 1)), || format!("pencil({q},{d}): {:?}", rc.counts));
    }
    let f3 = fq(3);
    for d in 2..=4usize {
        for seed in 0..4u64 {
            let sub = random_subspace(&f3, 3, 4, d, seed).unwrap();
            check_sub(cx, format!("rect(d={d},seed={seed})"), &sub, &["T7.2"]);
        }
    }
    for n in [4usize, 6] {
        for seed in 0..3u64 {
            let sub = random_skew_subspace(&f3, n, 3, seed).unwrap();
            check_sub(cx, format!("skew(n={n},seed={seed})"), &sub, &["T7.3", "T7.4"]);
        }
    }
}

fn group_suite(cx: &mut Ctx) {
    let f2 = fq(2);
    let fs = field_subspace(&f2, 3).unwrap();
    let g = centralizer(&fs, &cfg()).unwrap();
    cx.check(g.centralizer_order == 7 && g.centralizer_is_field, || format!("centralizer {g:?}"));
    let nq = normalizer_quotient(&fs, &cfg()).unwrap();
    cx.check(
        nq.normalizer_order == Some(21) && nq.centralizer_order == 7 && nq.quotient_order == Some(3),
        || format!("normalizer {nq:?}"),
    );
    let rep = verify("C5.9", &Instance::subspace("field(2,3)", fs), &cfg()).unwrap();
    cx.check(rep.passed, || format!("C5.9: {:?}", rep.violations));
    cx.check(rep.caveats.iter().any(|c| c.contains("q > r^6")), || "C5.9 largeness caveat missing".into());

    let rep = verify("L5.7", &Instance::Arithmetic { r_max: 13, q_max: 64 }, &cfg()).unwrap();
    cx.check(rep.passed, || format!("L5.7: {:?}", rep.violations));
    let gcd = |mut a: u128, mut b: u128| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    let prime_powers: Vec<u128> = (2..=64u64).filter(|&q| Fq::of_order(q).is_ok()).map(u128::from).collect();
    let mut cases = 0;
    for r in [2u128, 3, 5, 7, 11, 13] {
        for &q in &prime_powers {
            if gcd(r, q - 1) == 1 {
                let idx = (q.pow(r as u32) - 1) / (q - 1);
                cx.check(gcd(q - 1, idx) == 1, || format!("gcd fails at r={r} q={q}"));
                cases += 1;
            }
        }
    }
    cx.note(format!("{cases} (r, q) pairs with gcd(r, q-1) = 1"));

    for (q, n) in [(2u64, 2usize), (3, 2), (2, 3)] {
        let f = fq(q);
        let scalars = MatrixSubspace::new(&f, vec![Matrix::identity(&f, n)]).unwrap();
        let g = centralizer(&scalars, &cfg()).unwrap();
        cx.check(
            g.centralizer_dim == n * n && u128::from(g.centralizer_order) == gl_order(n as u32, q.into()),
            || format!("span{{I}} q={q} n={n}: {g:?}"),
        );
        let g = centralizer(&full_space(&f, n, n).unwrap(), &cfg()).unwrap();
        cx.check(g.centralizer_dim == 1 && g.centralizer_order == q - 1, || format!("M_{n}(F_{q}): {g:?}"));
    }
}

fn determinism(cx: &mut Ctx) {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_detspace"))
            .env_remove("DETSPACE_SEED")
            .args(["--seed", "7", "--output", "json", "verify", "--suite"])
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    cx.check(!a.stdout.is_empty() && serde_json::from_slice::<serde_json::Value>(&a.stdout).is_ok(), || {
        "suite output is not JSON".into()
    });
    cx.check(a.stdout == b.stdout, || "suite output differs between runs".into());
    cx.note(format!("{} bytes, exit {:?}", a.stdout.len(), a.status.code()));
}

// ---------------------------------------------------------------- driver

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn(&mut Ctx),
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, name: "example fidelity", limit: Some(Duration::from_secs(1)), run: example_fidelity },
    Criterion { id: 2, name: "cubic norm example", limit: Some(Duration::from_secs(1)), run: cubic_norm_example },
    Criterion { id: 3, name: "trace-zero constructions", limit: Some(Duration::from_secs(30)), run: trace_zero_constructions },
    Criterion { id: 4, name: "block pencils and maximality", limit: Some(Duration::from_secs(60)), run: block_pencils },
    Criterion { id: 5, name: "field subspaces", limit: Some(Duration::from_secs(30)), run: field_subspaces },
    Criterion { id: 6, name: "full M_2 census", limit: Some(Duration::from_secs(120)), run: full_m2_census },
    Criterion { id: 7, name: "squares and Pfaffians", limit: Some(Duration::from_secs(120)), run: square_suite },
    Criterion { id: 8, name: "rank bounds", limit: Some(Duration::from_secs(60)), run: rank_suite },
    Criterion { id: 9, name: "centralizers and normalizers", limit: Some(Duration::from_secs(60)), run: group_suite },
    Criterion { id: 10, name: "suite determinism", limit: None, run: determinism },
];

fn main() -> ExitCode {
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut unexpected = Vec::new();
    for c in CRITERIA.iter().filter(|c| filter.is_empty() || filter.contains(&c.id)) {
        let mut cx = Ctx::default();
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| (c.run)(&mut cx)));
        let elapsed = start.elapsed();
        if let Err(e) = outcome {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            cx.failures.push(format!("panicked: {}", msg.unwrap_or_default()));
        }
        if let Some(limit) = c.limit {
            cx.check(elapsed <= limit, || format!("took {elapsed:.2?}, limit {limit:?}"));
        }
        let passed = cx.failures.is_empty();
        let known = KNOWN_FAILURES.contains(&c.id);
        let limit = c.limit.map_or("none".to_string(), |l| format!("{l:?}"));
        let verdict = match (passed, known) {
            (true, false) => "PASS",
            (false, true) => "FAIL (known)",
            (true, true) => "PASS (unexpected)",
            (false, false) => "FAIL",
        };
        println!("{verdict:<18} criterion {:>2}: {:<30} {:>9.2?} (limit {limit})", c.id, c.name, elapsed);
        for n in &cx.notes {
            println!("    note: {n}");
        }
        for f in &cx.failures {
            println!("    fail: {f}");
        }
        if passed == known {
            unexpected.push(c.id);
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
