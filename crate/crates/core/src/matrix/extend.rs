//! Equivalence transformations and greedy enlargement of subspaces.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Matrix, MatrixSubspace};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::gf::Field;

/// `{C M_i D}` for invertible `C`, `D`.
pub fn equivalence_transform<F: Field>(
    c: &Matrix<F::Elem>,
    sub: &MatrixSubspace<F>,
    d: &Matrix<F::Elem>,
) -> Result<MatrixSubspace<F>> {
    let field = sub.field();
    if !c.is_invertible(field) || !d.is_invertible(field) {
        return Err(Error::Singular);
    }
    sub.map_basis(|m| c.mul(field, m)?.mul(field, d))
}

/// `A^{-1} sub` for an invertible `A ∈ sub`; the result contains `I`.
pub fn translate_to_identity<F: Field>(a: &Matrix<F::Elem>, sub: &MatrixSubspace<F>) -> Result<MatrixSubspace<F>> {
    let field = sub.field();
    if !sub.contains(a) {
        return Err(Error::NotInSubspace);
    }
    let inv = a.inverse(field)?;
    sub.map_basis(|m| inv.mul(field, m))
}

/// Same span with `I` as the first basis element, when `I` lies in it.
pub fn with_identity_first<F: Field>(sub: &MatrixSubspace<F>) -> Result<MatrixSubspace<F>> {
    let field = sub.field();
    let n = sub.require_square()?;
    let id = Matrix::identity(field, n);
    let coords = sub.coordinates(&id).ok_or(Error::NotInSubspace)?;
    let pivot = coords.iter().position(|c| !field.is_zero(c)).expect("I is nonzero");
    let mut basis = vec![id];
    basis.extend(
        sub.basis()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != pivot)
            .map(|(_, m)| m.clone()),
    );
    let mut out = MatrixSubspace::new(field, basis)?;
    for (k, v) in sub.tags() {
        out = out.with_tag(k, v.clone());
    }
    Ok(out)
}

/// Source of candidate matrices for greedy enlargement.
#[derive(Clone, Debug)]
pub enum CandidatePool<E> {
    /// Tried in order.
    Explicit(Vec<Matrix<E>>),
    /// Elementary matrices `E_ij` in row-major order, then uniformly random
    /// matrices from a ChaCha stream with this seed.
    Seeded(u64),
    /// Uniformly random matrices only.
    Random(u64),
}

struct Candidates<'a, F: Field> {
    field: &'a F,
    pool: &'a CandidatePool<F::Elem>,
    rows: usize,
    cols: usize,
    next: usize,
    rng: ChaCha8Rng,
}

impl<'a, F: Field> Candidates<'a, F> {
    fn new(field: &'a F, pool: &'a CandidatePool<F::Elem>, rows: usize, cols: usize) -> Self {
        let seed = match pool {
            CandidatePool::Seeded(s) | CandidatePool::Random(s) => *s,
            CandidatePool::Explicit(_) => 0,
        };
        Candidates {
            field,
            pool,
            rows,
            cols,
            next: 0,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl<F: Field> Iterator for Candidates<'_, F> {
    type Item = Matrix<F::Elem>;

    fn next(&mut self) -> Option<Self::Item> {
        let k = self.next;
        self.next += 1;
        let (r, c) = (self.rows, self.cols);
        match self.pool {
            CandidatePool::Explicit(v) => v.get(k).cloned(),
            CandidatePool::Seeded(_) if k < r * c => Some(Matrix::unit(self.field, r, c, k / c, k % c)),
            CandidatePool::Seeded(_) | CandidatePool::Random(_) => {
                let q = self.field.order();
                let data = (0..r * c).map(|_| self.field.element(self.rng.gen_range(0..q))).collect();
                Some(Matrix::new(r, c, data).expect("shape"))
            }
        }
    }
}

fn check_cap(what: &'static str, q: u64, d: usize, cap: u64) -> Result<u64> {
    match q.checked_pow(d as u32) {
        Some(n) if n <= cap => Ok(n),
        _ => Err(Error::CapExceeded {
            what,
            size: (q as u128).saturating_pow(d as u32),
            cap: cap as u128,
        }),
    }
}

/// Every element of `sub` singular, by enumeration.
pub fn all_singular<F: Field>(sub: &MatrixSubspace<F>, cfg: &Config) -> Result<bool> {
    let field = sub.field();
    sub.require_square()?;
    let total = check_cap("affine elements", field.order(), sub.dim(), cfg.affine_cap)?;
    Ok((0..total)
        .into_par_iter()
        .all(|i| field.is_zero(&sub.element_at(i).det(field).unwrap())))
}

/// Every nonzero element of `sub` invertible, by enumeration.
pub fn all_invertible<F: Field>(sub: &MatrixSubspace<F>, cfg: &Config) -> Result<bool> {
    let field = sub.field();
    sub.require_square()?;
    let total = check_cap("affine elements", field.order(), sub.dim(), cfg.affine_cap)?;
    Ok((1..total)
        .into_par_iter()
        .all(|i| !field.is_zero(&sub.element_at(i).det(field).unwrap())))
}

/// Does every coset element `X + Y` (`Y ∈ sub`) satisfy `pred(det)`? Together
/// with `sub` itself this decides the property on all of `span(sub, X)`, since
/// scaling preserves whether a determinant vanishes.
fn coset_all<F: Field>(sub: &MatrixSubspace<F>, x: &Matrix<F::Elem>, singular: bool) -> bool {
    let field = sub.field();
    let total = sub.num_elements().expect("capped");
    (0..total).into_par_iter().all(|i| {
        let y = sub.element_at(i);
        let det = x.add(field, &y).unwrap().det(field).unwrap();
        field.is_zero(&det) == singular
    })
}

/// Greedy growth keeping every element singular. Tries at most `budget`
/// candidates; the result always contains `sub`.
pub fn extend_singular<F: Field>(
    sub: &MatrixSubspace<F>,
    pool: &CandidatePool<F::Elem>,
    budget: usize,
    cfg: &Config,
) -> Result<MatrixSubspace<F>> {
    let field = sub.field();
    let n = sub.require_square()?;
    if !all_singular(sub, cfg)? {
        return Err(Error::NotAllSingular);
    }
    let mut cur = sub.clone();
    for x in Candidates::new(field, pool, n, n).take(budget) {
        if cur.contains(&x) {
            continue;
        }
        if check_cap("affine elements", field.order(), cur.dim() + 1, cfg.affine_cap).is_err() {
            break;
        }
        if coset_all(&cur, &x, true) {
            cur = cur.extended(x)?;
        }
    }
    Ok(cur)
}

/// Outcome of a budgeted search for an invertibility-preserving enlargement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionSearch<E> {
    pub tried: usize,
    pub found: Option<Matrix<E>>,
}

/// Looks for `X ∉ sub` such that every nonzero element of `span(sub, X)` is
/// invertible. `sub` itself is assumed to have that property.
pub fn find_invertible_extension<F: Field>(
    sub: &MatrixSubspace<F>,
    pool: &CandidatePool<F::Elem>,
    budget: usize,
    cfg: &Config,
) -> Result<ExtensionSearch<F::Elem>> {
    let field = sub.field();
    let n = sub.require_square()?;
    check_cap("affine elements", field.order(), sub.dim(), cfg.affine_cap)?;
    let mut tried = 0;
    for x in Candidates::new(field, pool, n, n).take(budget) {
        tried += 1;
        if sub.contains(&x) {
            continue;
        }
        if coset_all(sub, &x, false) {
            return Ok(ExtensionSearch { tried, found: Some(x) });
        }
    }
    Ok(ExtensionSearch { tried, found: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Fq;
    use crate::matrix::construct::{diagonal_f2, field_subspace};

    #[test]
    fn translate_and_identity() {
        let f2 = Fq::new(2, 1, None).unwrap();
        let fs = field_subspace(&f2, 3).unwrap();
        let c = fs.basis()[1].clone();
        let t = translate_to_identity(&c, &fs).unwrap();
        assert!(t.same_span(&fs));
        let e1 = diagonal_f2();
        assert_eq!(
            translate_to_identity(&e1.basis()[0], &e1).unwrap_err(),
            Error::Singular
        );
        let outside = Matrix::identity(&f2, 3);
        assert_eq!(translate_to_identity(&outside, &e1).unwrap_err(), Error::NotInSubspace);
        let w = with_identity_first(&t).unwrap();
        assert_eq!(w.basis()[0], Matrix::identity(&f2, 3));
        assert!(w.same_span(&fs));
    }

    #[test]
    fn greedy_singular_growth() {
        let cfg = Config::default();
        let e1 = diagonal_f2();
        let grown = extend_singular(&e1, &CandidatePool::Seeded(1), 40, &cfg).unwrap();
        assert!(grown.dim() >= e1.dim());
        assert!(e1.basis().iter().all(|m| grown.contains(m)));
        assert!(all_singular(&grown, &cfg).unwrap());
        let same = extend_singular(&e1, &CandidatePool::Seeded(1), 0, &cfg).unwrap();
        assert!(same.same_span(&e1));
        let fs = field_subspace(&Fq::new(2, 1, None).unwrap(), 2).unwrap();
        assert_eq!(
            extend_singular(&fs, &CandidatePool::Seeded(1), 5, &cfg).unwrap_err(),
            Error::NotAllSingular
        );
    }
}
