//! Explicit subspaces: regular representations of field extensions, field
//! reduction, and the named example constructions.

use super::{Matrix, MatrixSubspace};
use crate::error::{Error, Result};
use crate::gf::{ExtField, Extension, Field, Fq, Ring};
use crate::poly::UniPoly;

type BaseElem<E> = <<E as Extension>::Base as Ring>::Elem;

/// Matrix of `z -> x z` on the power basis, acting on coordinate columns.
pub fn regular_representation<E: Extension>(ext: &E, x: &E::Elem) -> Matrix<BaseElem<E>> {
    linear_map_matrix(ext, |z| ext.mul(x, z))
}

/// Matrix of a base-linear map `L -> L` on the power basis: column `j` holds
/// the coordinates of `T(α^j)`.
pub fn linear_map_matrix<E: Extension>(ext: &E, t: impl Fn(&E::Elem) -> E::Elem) -> Matrix<BaseElem<E>> {
    let s = ext.degree();
    let alpha = ext.generator();
    let mut m = Matrix::zeros(ext.base(), s, s);
    let mut power = ext.one();
    for j in 0..s {
        for (i, c) in ext.coords(&t(&power)).into_iter().enumerate() {
            m.set(i, j, c);
        }
        power = ext.mul(&power, &alpha);
    }
    m
}

/// Matrix of `σ^i` (the `i`-th power of Frobenius relative to the base).
pub fn frobenius_matrix<E: Extension>(ext: &E, i: usize) -> Matrix<BaseElem<E>> {
    linear_map_matrix(ext, |z| ext.frobenius(z, i))
}

/// Companion matrix of a monic polynomial: multiplication by `x` on
/// `1, x, …, x^{m-1}`.
pub fn companion<F: Field>(f: &UniPoly<F>) -> Result<Matrix<F::Elem>> {
    let field = f.field();
    let m = match f.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(m) => m,
    };
    if !f.is_monic() {
        return Err(Error::NonMonicModulus(m));
    }
    let mut c = Matrix::zeros(field, m, m);
    for i in 0..m {
        if i + 1 < m {
            c.set(i + 1, i, field.one());
        }
        c.set(i, m - 1, field.neg(&f.coeff(i)));
    }
    Ok(c)
}

/// The `t`-dimensional image of `F_{q^t}` in `M_t(F_q)`: multiplication by
/// `1, α, …, α^{t-1}` for the default extension of degree `t`.
pub fn field_subspace<F: Field>(base: &F, t: usize) -> Result<MatrixSubspace<F>> {
    let sub = match t {
        0 => return Err(Error::Shape("field subspace of degree 0".into())),
        1 => MatrixSubspace::new(base, vec![Matrix::identity(base, 1)])?,
        _ => {
            let ext = ExtField::new(base, t)?;
            let alpha = ext.generator();
            let mut power = ext.one();
            let mut basis = Vec::with_capacity(t);
            for _ in 0..t {
                basis.push(regular_representation(&ext, &power));
                power = ext.mul(&power, &alpha);
            }
            MatrixSubspace::new(base, basis)?
        }
    };
    Ok(sub.with_tag("construction", format!("field(q={},t={t})", base.order())))
}

/// An `F_{q^s}`-subspace of `M_m(F_{q^s})` viewed as an `F_q`-subspace of
/// `M_{ms}(F_q)`: each basis matrix `M` contributes `α^j M` for `j < s`.
pub fn field_reduction<E: Extension>(sub: &MatrixSubspace<E>) -> Result<MatrixSubspace<E::Base>> {
    let ext = sub.field();
    let base = ext.base();
    let s = ext.degree();
    let alpha = ext.generator();
    let mut basis = Vec::with_capacity(s * sub.dim());
    for m in sub.basis() {
        let mut power = ext.one();
        for _ in 0..s {
            basis.push(blow_up(ext, &m.scale(ext, &power)));
            power = ext.mul(&power, &alpha);
        }
    }
    let mut out = MatrixSubspace::new_rect(base, basis)?;
    if let Some(tag) = sub.tags().get("construction") {
        out = out.with_tag("construction", format!("reduce({tag},s={s})"));
    }
    Ok(out)
}

/// Matrix over `F_{q^s}` as a block matrix over `F_q` with `s x s` blocks.
pub fn blow_up<E: Extension>(ext: &E, m: &Matrix<E::Elem>) -> Matrix<BaseElem<E>> {
    let s = ext.degree();
    let mut out = Matrix::zeros(ext.base(), m.rows() * s, m.cols() * s);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let block = regular_representation(ext, m.get(i, j));
            for a in 0..s {
                for b in 0..s {
                    out.set(i * s + a, j * s + b, block.get(a, b).clone());
                }
            }
        }
    }
    out
}

fn prime_field_matrix(field: &Fq, rows: &[&[i64]]) -> Matrix<u32> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&v| field.from_int(v)).collect())
            .collect(),
    )
    .expect("fixed example shape")
}

/// Two diagonal matrices in `M_3(F_2)` whose span is all singular.
pub fn diagonal_f2() -> MatrixSubspace<Fq> {
    let f2 = Fq::new(2, 1, None).expect("F_2");
    let a = prime_field_matrix(&f2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]);
    let b = prime_field_matrix(&f2, &[&[0, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
    MatrixSubspace::new(&f2, vec![a, b])
        .expect("independent")
        .with_tag("construction", "diagonal_f2")
}

/// Two diagonal matrices in `M_4(F_3)` whose span is all singular.
pub fn diagonal_f3() -> MatrixSubspace<Fq> {
    let f3 = Fq::new(3, 1, None).expect("F_3");
    let a = prime_field_matrix(&f3, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 0]]);
    let b = prime_field_matrix(&f3, &[&[2, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 1]]);
    MatrixSubspace::new(&f3, vec![a, b])
        .expect("independent")
        .with_tag("construction", "diagonal_f3")
}

/// Smallest-encoding primitive cube root of unity in `field`.
pub fn primitive_cube_root<F: Field>(field: &F) -> Option<F::Elem> {
    field
        .elements()
        .find(|w| !field.is_one(w) && field.is_one(&field.pow(w, 3)))
}

/// `span{A, B, C}` in `M_3(F_q)` for `q ≡ 1 (mod 3)` and a non-cube `b`:
/// `B` is multiplication by a cube root of `b` (row convention), `C = B^2`,
/// and `A = diag(0, λ, -λ)` with `λ = ω^2 - ω` is the matrix of `σ^2 - σ`.
pub fn cubic_norm(field: &Fq, b: u64) -> Result<MatrixSubspace<Fq>> {
    let q = field.order();
    if q % 3 != 1 {
        return Err(Error::Hypothesis(format!("q = {q} is not 1 mod 3")));
    }
    let b = field.elem(b)?;
    if field.is_zero(&b) || field.is_one(&field.pow(&b, (q - 1) / 3)) {
        return Err(Error::Hypothesis(format!("b = {b} is a cube in F_{q}")));
    }
    let w = primitive_cube_root(field).expect("q = 1 mod 3");
    let lambda = field.sub(&field.mul(&w, &w), &w);
    let (z, o) = (field.zero(), field.one());
    let a = Matrix::from_rows(vec![
        vec![z, z, z],
        vec![z, lambda, z],
        vec![z, z, field.neg(&lambda)],
    ])?;
    let bm = Matrix::from_rows(vec![vec![z, o, z], vec![z, z, o], vec![b, z, z]])?;
    let cm = bm.mul(field, &bm)?;
    Ok(MatrixSubspace::new(field, vec![a, bm, cm])?
        .with_tag("construction", format!("cubic_norm(q={q},b={b})")))
}

/// `d`-dimensional block-diagonal subspace of `M_{2d+1}(F_q)` with blocks
/// `M_i` (a basis of the degree-`d` field subspace) and `N_i` (the first `d`
/// basis matrices of the degree-`d+1` field subspace).
pub fn block_field_pair<F: Field>(base: &F, d: usize) -> Result<MatrixSubspace<F>> {
    if d == 0 {
        return Err(Error::Hypothesis("d must be positive".into()));
    }
    let small = field_subspace(base, d)?;
    let large = field_subspace(base, d + 1)?;
    let basis = small
        .basis()
        .iter()
        .zip(large.basis())
        .map(|(m, n)| Matrix::block_diag(m, n, base.zero()))
        .collect();
    Ok(MatrixSubspace::new(base, basis)?
        .with_tag("construction", format!("block_field_pair(q={},d={d})", base.order())))
}

/// Maps `z -> a(σ^2 - σ)(z) + b z` on `L = F_{q^3}` over `K = F_q`, with
/// `a ∈ K` and `b` of trace zero. Basis: `σ^2 - σ`, then multiplication by a
/// basis of the trace-zero hyperplane.
pub fn cubic_trace_zero<F: Field>(base: &F) -> Result<MatrixSubspace<F>> {
    let ext = ExtField::new(base, 3)?;
    let tau = frobenius_matrix(&ext, 2).sub(base, &frobenius_matrix(&ext, 1))?;
    let mut basis = vec![tau];
    basis.extend(ext.trace_zero_basis().iter().map(|b| regular_representation(&ext, b)));
    Ok(MatrixSubspace::new(base, basis)?.with_tag("construction", format!("cubic_trace_zero(q={})", base.order())))
}

/// The matrix of `σ^2 - σ` used as the first basis element of [`cubic_trace_zero`].
pub fn cubic_trace_zero_tau<F: Field>(base: &F) -> Result<Matrix<F::Elem>> {
    Ok(cubic_trace_zero(base)?.basis()[0].clone())
}

/// Maps `z -> a σ^2(z) + (a + c) z` on `L = F_{q^4}` over `K = F_q` in
/// characteristic 2, with `a ∈ K` and `c` of trace zero. Basis: `σ^2 + 1`,
/// then multiplication by a basis of the trace-zero hyperplane.
pub fn quartic_char2<F: Field>(base: &F) -> Result<MatrixSubspace<F>> {
    if base.characteristic() != 2 {
        return Err(Error::Hypothesis(format!(
            "characteristic {} is not 2",
            base.characteristic()
        )));
    }
    let ext = ExtField::new(base, 4)?;
    let s2 = frobenius_matrix(&ext, 2).add(base, &Matrix::identity(base, 4))?;
    let mut basis = vec![s2];
    basis.extend(ext.trace_zero_basis().iter().map(|c| regular_representation(&ext, c)));
    Ok(MatrixSubspace::new(base, basis)?.with_tag("construction", format!("quartic_char2(q={})", base.order())))
}

/// `span{E_11, …, E_nn}`.
pub fn diagonal<F: Field>(field: &F, n: usize) -> Result<MatrixSubspace<F>> {
    let basis = (0..n).map(|i| Matrix::unit(field, n, n, i, i)).collect();
    Ok(MatrixSubspace::new(field, basis)?.with_tag("construction", format!("diag(q={},n={n})", field.order())))
}

/// All `rows x cols` matrices, basis `E_ij` in row-major order.
pub fn full_space<F: Field>(field: &F, rows: usize, cols: usize) -> Result<MatrixSubspace<F>> {
    let basis = (0..rows * cols)
        .map(|k| Matrix::unit(field, rows, cols, k / cols, k % cols))
        .collect();
    Ok(MatrixSubspace::new_rect(field, basis)?
        .with_tag("construction", format!("full(q={},rows={rows},cols={cols})", field.order())))
}

/// All skew matrices of size `n`, basis `E_ij - E_ji` for `i < j` in
/// row-major order (zero diagonal, so symmetric in characteristic 2).
pub fn skew_space<F: Field>(field: &F, n: usize) -> Result<MatrixSubspace<F>> {
    let mut basis = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut m = Matrix::unit(field, n, n, i, j);
            m.set(j, i, field.neg(&field.one()));
            basis.push(m);
        }
    }
    Ok(MatrixSubspace::new(field, basis)?.with_tag("construction", format!("skew(q={},n={n})", field.order())))
}

/// Span of `d` uniformly random `rows x cols` matrices from a seeded stream,
/// skipping draws that are dependent on earlier ones.
pub fn random_subspace<F: Field>(field: &F, rows: usize, cols: usize, d: usize, seed: u64) -> Result<MatrixSubspace<F>> {
    use rand::{Rng, SeedableRng};
    if d == 0 || d > rows * cols {
        return Err(Error::Shape(format!("dimension {d} for {rows}x{cols} matrices")));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let q = field.order();
    let mut basis: Vec<Matrix<F::Elem>> = Vec::new();
    while basis.len() < d {
        let data = (0..rows * cols).map(|_| field.element(rng.gen_range(0..q))).collect();
        let m = Matrix::new(rows, cols, data)?;
        let mut trial = basis.clone();
        trial.push(m);
        if MatrixSubspace::new_rect(field, trial.clone()).is_ok() {
            basis = trial;
        }
    }
    Ok(MatrixSubspace::new_rect(field, basis)?.with_tag(
        "construction",
        format!("random(q={},rows={rows},cols={cols},d={d},seed={seed})", field.order()),
    ))
}

/// Span of `d` random skew matrices of size `n` from a seeded stream,
/// skipping dependent draws.
pub fn random_skew_subspace<F: Field>(field: &F, n: usize, d: usize, seed: u64) -> Result<MatrixSubspace<F>> {
    use rand::{Rng, SeedableRng};
    if d == 0 || 2 * d > n * n.saturating_sub(1) {
        return Err(Error::Shape(format!("dimension {d} for skew {n}x{n} matrices")));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let q = field.order();
    let mut basis: Vec<Matrix<F::Elem>> = Vec::new();
    while basis.len() < d {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            for j in (i + 1)..n {
                let a = field.element(rng.gen_range(0..q));
                m.set(j, i, field.neg(&a));
                m.set(i, j, a);
            }
        }
        let mut trial = basis.clone();
        trial.push(m);
        if MatrixSubspace::new(field, trial.clone()).is_ok() {
            basis = trial;
        }
    }
    Ok(MatrixSubspace::new(field, basis)?.with_tag(
        "construction",
        format!("random_skew(q={},n={n},d={d},seed={seed})", field.order()),
    ))
}

/// `{diag(X, X) : X ∈ sub}`.
pub fn doubled<F: Field>(sub: &MatrixSubspace<F>) -> Result<MatrixSubspace<F>> {
    let field = sub.field();
    let basis = sub.basis().iter().map(|m| Matrix::block_diag(m, m, field.zero())).collect();
    let mut out = MatrixSubspace::new(field, basis)?;
    if let Some(t) = sub.tags().get("construction") {
        out = out.with_tag("construction", format!("doubled({t})"));
    }
    Ok(out)
}

/// Span of the first `k` basis matrices.
pub fn prefix_span<F: Field>(sub: &MatrixSubspace<F>, k: usize) -> Result<MatrixSubspace<F>> {
    if k == 0 || k > sub.dim() {
        return Err(Error::Shape(format!("prefix of length {k} in dimension {}", sub.dim())));
    }
    let mut out = MatrixSubspace::new_rect(sub.field(), sub.basis()[..k].to_vec())?;
    if let Some(t) = sub.tags().get("construction") {
        out = out.with_tag("construction", format!("prefix({t},k={k})"));
    }
    Ok(out)
}

/// Which four-dimensional construction [`Construction::Reduce`] starts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReduceSource {
    CubicTraceZero,
    QuarticChar2,
}

/// Named constructions over a working field `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    DiagonalF2,
    DiagonalF3,
    CubicNorm { q: u64, b: u64 },
    BlockField { q: u64, d: usize },
    CubicTraceZero { q: u64 },
    QuarticChar2 { q: u64 },
    Field { q: u64, t: usize },
    /// The source construction over `F_{q^m}`, reduced to `F_q`.
    Reduce { q: u64, m: usize, of: ReduceSource },
    Diagonal { q: u64, n: usize },
    Full { q: u64, n: usize },
    Skew { q: u64, n: usize },
}

impl Construction {
    pub fn build(&self) -> Result<MatrixSubspace<Fq>> {
        match *self {
            Construction::DiagonalF2 => Ok(diagonal_f2()),
            Construction::DiagonalF3 => Ok(diagonal_f3()),
            Construction::CubicNorm { q, b } => cubic_norm(&Fq::of_order(q)?, b),
            Construction::BlockField { q, d } => block_field_pair(&Fq::of_order(q)?, d),
            Construction::CubicTraceZero { q } => cubic_trace_zero(&Fq::of_order(q)?),
            Construction::QuarticChar2 { q } => quartic_char2(&Fq::of_order(q)?),
            Construction::Field { q, t } => field_subspace(&Fq::of_order(q)?, t),
            Construction::Diagonal { q, n } => diagonal(&Fq::of_order(q)?, n),
            Construction::Full { q, n } => full_space(&Fq::of_order(q)?, n, n),
            Construction::Skew { q, n } => skew_space(&Fq::of_order(q)?, n),
            Construction::Reduce { q, m, of } => {
                let base = Fq::of_order(q)?;
                if m == 1 {
                    return match of {
                        ReduceSource::CubicTraceZero => cubic_trace_zero(&base),
                        ReduceSource::QuarticChar2 => quartic_char2(&base),
                    };
                }
                let big = ExtField::new(&base, m)?;
                let sub = match of {
                    ReduceSource::CubicTraceZero => cubic_trace_zero(&big)?,
                    ReduceSource::QuarticChar2 => quartic_char2(&big)?,
                };
                field_reduction(&sub)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn companion_is_multiplication_by_generator() {
        let f2 = Fq::new(2, 1, None).unwrap();
        let ext = ExtField::new(&f2, 3).unwrap();
        let f = UniPoly::new(&f2, ext.modulus().to_vec());
        assert_eq!(
            companion(&f).unwrap(),
            regular_representation(&ext, &ext.generator())
        );
    }

    #[test]
    fn regular_representation_is_a_ring_map() {
        let f3 = Fq::new(3, 1, None).unwrap();
        let ext = ExtField::new(&f3, 3).unwrap();
        for i in 0..27 {
            for j in 0..27 {
                let (x, y) = (ext.element(i), ext.element(j));
                let rx = regular_representation(&ext, &x);
                let ry = regular_representation(&ext, &y);
                assert_eq!(rx.mul(&f3, &ry).unwrap(), regular_representation(&ext, &ext.mul(&x, &y)));
                assert_eq!(rx.add(&f3, &ry).unwrap(), regular_representation(&ext, &ext.add(&x, &y)));
            }
        }
    }

    #[test]
    fn example_three_hypotheses() {
        let f7 = Fq::new(7, 1, None).unwrap();
        assert!(cubic_norm(&f7, 3).is_ok());
        assert!(matches!(cubic_norm(&f7, 6), Err(Error::Hypothesis(_))));
        let f5 = Fq::new(5, 1, None).unwrap();
        assert!(matches!(cubic_norm(&f5, 2), Err(Error::Hypothesis(_))));
        let f4 = Fq::new(2, 2, None).unwrap();
        assert!(matches!(quartic_char2(&f4), Ok(_)));
        assert!(matches!(quartic_char2(&f7), Err(Error::Hypothesis(_))));
    }

    /// The diagonal `A` agrees with the matrix of `σ^2 - σ` on the basis
    /// `1, α, α^2` with `α^3 = b`, up to the choice of cube root of unity.
    #[test]
    fn example_three_tau_matrix() {
        let f7 = Fq::new(7, 1, None).unwrap();
        let b = 3u32;
        let ext = ExtField::with_modulus(&f7, vec![f7.neg(&b), 0, 0, 1]).unwrap();
        let tau = frobenius_matrix(&ext, 2).sub(&f7, &frobenius_matrix(&ext, 1)).unwrap();
        let a = cubic_norm(&f7, 3).unwrap().basis()[0].clone();
        assert!(tau == a || tau == a.neg(&f7), "{tau:?} vs {a:?}");
    }
}
