//! Centralizers, normalizers and left stabilizers of matrix subspaces in
//! `GL(n, q)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::matrix::{Matrix, MatrixSubspace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupAnalysis {
    /// Dimension of `{C : C M_i = M_i C for all i}`.
    pub centralizer_dim: usize,
    /// Invertible elements of the commuting algebra.
    pub centralizer_order: u64,
    /// Every nonzero commuting element is invertible and the algebra is
    /// commutative, so the centralizer is cyclic of order `q^dim - 1`.
    pub centralizer_is_field: bool,
    pub normalizer_order: Option<u64>,
    pub quotient_order: Option<u64>,
    /// Why the normalizer was not computed.
    pub skipped: Option<String>,
}

/// `|GL(n, q)| = Π_{i<n} (q^n - q^i)`, or `None` on overflow.
pub fn gl_order(n: usize, q: u64) -> Option<u128> {
    let qn = (q as u128).checked_pow(n as u32)?;
    (0..n).try_fold(1u128, |acc, i| acc.checked_mul(qn - (q as u128).pow(i as u32)))
}

fn enumeration_size(q: u64, dim: usize, cap: u64) -> Result<u64> {
    match q.checked_pow(dim as u32) {
        Some(n) if n <= cap => Ok(n),
        _ => Err(Error::CapExceeded {
            what: "group enumeration",
            size: (q as u128).saturating_pow(dim as u32),
            cap: cap as u128,
        }),
    }
}

/// Basis of the commuting algebra, as matrices.
pub fn commuting_algebra<F: Field>(sub: &MatrixSubspace<F>) -> Result<Vec<Matrix<F::Elem>>> {
    let field = sub.field();
    let n = sub.require_square()?;
    let nn = n * n;
    // unknown C[a][k] sits in column a*n + k; one equation per (M_i, a, b)
    let mut rows = Vec::with_capacity(sub.dim() * nn);
    for m in sub.basis() {
        for a in 0..n {
            for b in 0..n {
                let mut eq = vec![field.zero(); nn];
                for k in 0..n {
                    // (C M)[a][b] = Σ_k C[a][k] M[k][b]
                    let i = a * n + k;
                    eq[i] = field.add(&eq[i], m.get(k, b));
                    // (M C)[a][b] = Σ_k M[a][k] C[k][b]
                    let j = k * n + b;
                    eq[j] = field.sub(&eq[j], m.get(a, k));
                }
                rows.push(eq);
            }
        }
    }
    let system = Matrix::from_rows(rows)?;
    system
        .kernel(field)
        .into_iter()
        .map(|v| Matrix::new(n, n, v))
        .collect()
}

fn span_element<F: Field>(field: &F, n: usize, basis: &[Matrix<F::Elem>], mut idx: u64) -> Matrix<F::Elem> {
    let q = field.order();
    let mut m = Matrix::zeros(field, n, n);
    for b in basis {
        m.add_scaled(field, &field.element(idx % q), b);
        idx /= q;
    }
    m
}

/// Exact centralizer; the normalizer is left unset.
pub fn centralizer<F: Field>(sub: &MatrixSubspace<F>, cfg: &Config) -> Result<GroupAnalysis> {
    let field = sub.field();
    let n = sub.require_square()?;
    let alg = commuting_algebra(sub)?;
    let total = enumeration_size(field.order(), alg.len(), cfg.affine_cap)?;
    let order = (1..total)
        .into_par_iter()
        .filter(|&i| span_element(field, n, &alg, i).is_invertible(field))
        .count() as u64;
    let commutative = alg.iter().enumerate().all(|(i, a)| {
        alg[i + 1..]
            .iter()
            .all(|b| a.mul(field, b).ok() == b.mul(field, a).ok())
    });
    Ok(GroupAnalysis {
        centralizer_dim: alg.len(),
        centralizer_order: order,
        centralizer_is_field: commutative && order + 1 == total,
        normalizer_order: None,
        quotient_order: None,
        skipped: None,
    })
}

/// `A sub A^{-1} = sub`.
pub fn normalizes<F: Field>(sub: &MatrixSubspace<F>, a: &Matrix<F::Elem>, a_inv: &Matrix<F::Elem>) -> bool {
    let field = sub.field();
    sub.basis().iter().all(|m| {
        a.mul(field, m)
            .and_then(|am| am.mul(field, a_inv))
            .is_ok_and(|c| sub.contains(&c))
    })
}

/// Every element of the normalizer, by a scan of `GL(n, q)`; `None` when the
/// scan exceeds the group budget or the affine cap.
pub fn normalizer_elements<F: Field>(sub: &MatrixSubspace<F>, cfg: &Config) -> Result<Option<Vec<Matrix<F::Elem>>>> {
    let field = sub.field();
    let n = sub.require_square()?;
    let q = field.order();
    let gl = gl_order(n, q).unwrap_or(u128::MAX);
    let Some(all) = q.checked_pow((n * n) as u32) else {
        return Ok(None);
    };
    if gl > cfg.group_budget as u128 || all > cfg.affine_cap {
        return Ok(None);
    }
    let elems: Vec<Matrix<F::Elem>> = (0..all)
        .into_par_iter()
        .filter_map(|i| {
            let data = crate::detkit::point_at(field, n * n, i);
            let a = Matrix::new(n, n, data).expect("shape");
            let inv = a.inverse(field).ok()?;
            normalizes(sub, &a, &inv).then_some(a)
        })
        .collect();
    Ok(Some(elems))
}

/// Centralizer plus the brute-force normalizer when it fits the budget.
pub fn normalizer_quotient<F: Field>(sub: &MatrixSubspace<F>, cfg: &Config) -> Result<GroupAnalysis> {
    let mut g = centralizer(sub, cfg)?;
    let n = sub.n();
    let q = sub.field().order();
    match normalizer_elements(sub, cfg)? {
        Some(elems) => {
            let nn = elems.len() as u64;
            if nn % g.centralizer_order != 0 {
                return Err(Error::Internal(format!(
                    "centralizer order {} does not divide normalizer order {nn}",
                    g.centralizer_order
                )));
            }
            g.normalizer_order = Some(nn);
            g.quotient_order = Some(nn / g.centralizer_order);
        }
        None => {
            g.skipped = Some(format!(
                "GL({n},{q}) of order {} exceeds the group budget {} or the affine cap",
                gl_order(n, q).map_or("overflow".to_string(), |o| o.to_string()),
                cfg.group_budget
            ));
        }
    }
    Ok(g)
}

/// `{A ∈ GL(n, q) : A·sub = sub}`. Any such `A` satisfies `A M ∈ sub` for
/// an invertible `M ∈ sub`, so the search runs over `sub·M^{-1}` only.
/// `None` when `sub` has no invertible element.
pub fn left_stabilizer<F: Field>(sub: &MatrixSubspace<F>, cfg: &Config) -> Result<Option<Vec<Matrix<F::Elem>>>> {
    let field = sub.field();
    sub.require_square()?;
    let total = enumeration_size(field.order(), sub.dim(), cfg.affine_cap)?;
    let Some(m) = (1..total).map(|i| sub.element_at(i)).find(|m| m.is_invertible(field)) else {
        return Ok(None);
    };
    let m_inv = m.inverse(field)?;
    let found = (1..total)
        .into_par_iter()
        .filter_map(|i| {
            let a = sub.element_at(i).mul(field, &m_inv).ok()?;
            if !a.is_invertible(field) {
                return None;
            }
            let stable = sub
                .basis()
                .iter()
                .all(|b| a.mul(field, b).is_ok_and(|ab| sub.contains(&ab)));
            stable.then_some((i, a))
        })
        .collect::<Vec<_>>();
    let mut found = found;
    found.sort_by_key(|(i, _)| *i);
    Ok(Some(found.into_iter().map(|(_, a)| a).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Fq;
    use crate::matrix::construct::{field_subspace, full_space};

    #[test]
    fn singer_cycle() {
        let f2 = Fq::new(2, 1, None).unwrap();
        let g = normalizer_quotient(&field_subspace(&f2, 3).unwrap(), &Config::default()).unwrap();
        assert_eq!((g.centralizer_dim, g.centralizer_order), (3, 7));
        assert!(g.centralizer_is_field);
        assert_eq!((g.normalizer_order, g.quotient_order), (Some(21), Some(3)));
    }

    #[test]
    fn trivial_cases() {
        let f3 = Fq::new(3, 1, None).unwrap();
        let id = MatrixSubspace::new(&f3, vec![Matrix::identity(&f3, 2)]).unwrap();
        let g = normalizer_quotient(&id, &Config::default()).unwrap();
        assert_eq!(g.centralizer_order, 48);
        assert_eq!(g.quotient_order, Some(1));
        let full = normalizer_quotient(&full_space(&f3, 2, 2).unwrap(), &Config::default()).unwrap();
        assert_eq!((full.centralizer_dim, full.centralizer_order), (1, 2));
        assert_eq!(full.quotient_order, Some(24));
        assert_eq!(gl_order(3, 3), Some(11232));
    }
}
