use std::collections::BTreeMap;

use super::{LinearSpan, Matrix};
use crate::error::{Error, Result};
use crate::gf::Field;

/// A subspace of `rows x cols` matrices with an ordered, linearly independent
/// basis `M_1, …, M_d`.
#[derive(Clone, Debug)]
pub struct MatrixSubspace<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    basis: Vec<Matrix<F::Elem>>,
    span: LinearSpan<F>,
    tags: BTreeMap<String, String>,
}

impl<F: Field> MatrixSubspace<F> {
    /// Square matrices only.
    pub fn new(field: &F, basis: Vec<Matrix<F::Elem>>) -> Result<Self> {
        let s = Self::new_rect(field, basis)?;
        if s.rows != s.cols {
            return Err(Error::Shape(format!("{}x{} matrices are not square", s.rows, s.cols)));
        }
        Ok(s)
    }

    /// Any common shape.
    pub fn new_rect(field: &F, basis: Vec<Matrix<F::Elem>>) -> Result<Self> {
        let first = basis.first().ok_or(Error::EmptyBasis)?;
        let (rows, cols) = (first.rows(), first.cols());
        if let Some(bad) = basis.iter().find(|m| m.rows() != rows || m.cols() != cols) {
            return Err(Error::Shape(format!(
                "basis mixes {rows}x{cols} and {}x{} matrices",
                bad.rows(),
                bad.cols()
            )));
        }
        let q = field.order();
        if basis.iter().flat_map(|m| m.data()).any(|e| field.index_of(e) >= q) {
            return Err(Error::InvalidField("entry outside the field".into()));
        }
        let vecs: Vec<Vec<F::Elem>> = basis.iter().map(|m| m.data().to_vec()).collect();
        let span = LinearSpan::new(field, rows * cols, &vecs);
        if span.rank() < basis.len() {
            return Err(Error::DependentBasis);
        }
        Ok(MatrixSubspace {
            field: field.clone(),
            rows,
            cols,
            basis,
            span,
            tags: BTreeMap::new(),
        })
    }

    pub fn with_tag(mut self, key: &str, value: impl Into<String>) -> Self {
        self.tags.insert(key.to_string(), value.into());
        self
    }

    pub fn tags(&self) -> &BTreeMap<String, String> {
        &self.tags
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Matrix size of a square subspace (row count otherwise).
    pub fn n(&self) -> usize {
        self.rows
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::Shape(format!("{}x{} matrices are not square", self.rows, self.cols)))
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix<F::Elem>] {
        &self.basis
    }

    /// `q^d`, if it fits in a `u64`.
    pub fn num_elements(&self) -> Option<u64> {
        self.field.order().checked_pow(self.dim() as u32)
    }

    /// `Σ c_i M_i`.
    pub fn combination(&self, coeffs: &[F::Elem]) -> Matrix<F::Elem> {
        let mut m = Matrix::zeros(&self.field, self.rows, self.cols);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            m.add_scaled(&self.field, c, b);
        }
        m
    }

    /// Coefficient tuple number `idx` in base-`q` counting order (first
    /// coordinate least significant).
    pub fn coeffs_at(&self, mut idx: u64) -> Vec<F::Elem> {
        let q = self.field.order();
        (0..self.dim())
            .map(|_| {
                let e = self.field.element(idx % q);
                idx /= q;
                e
            })
            .collect()
    }

    pub fn element_at(&self, idx: u64) -> Matrix<F::Elem> {
        self.combination(&self.coeffs_at(idx))
    }

    pub fn coordinates(&self, m: &Matrix<F::Elem>) -> Option<Vec<F::Elem>> {
        if m.rows() != self.rows || m.cols() != self.cols {
            return None;
        }
        self.span.coordinates(m.data())
    }

    pub fn contains(&self, m: &Matrix<F::Elem>) -> bool {
        self.coordinates(m).is_some()
    }

    /// Canonical reduced echelon basis of the flattened matrices.
    pub fn echelon(&self) -> &[Vec<F::Elem>] {
        self.span.echelon()
    }

    /// Same set of matrices, regardless of basis.
    pub fn same_span(&self, other: &Self) -> bool {
        self.shape() == other.shape() && self.echelon() == other.echelon()
    }

    /// New basis `f(M_i)`, validated again.
    pub fn map_basis(&self, f: impl Fn(&Matrix<F::Elem>) -> Result<Matrix<F::Elem>>) -> Result<Self> {
        let basis = self.basis.iter().map(f).collect::<Result<Vec<_>>>()?;
        let mut s = Self::new_rect(&self.field, basis)?;
        s.tags = self.tags.clone();
        Ok(s)
    }

    /// Basis extended by `m`; fails if `m` already lies in the span.
    pub fn extended(&self, m: Matrix<F::Elem>) -> Result<Self> {
        let mut basis = self.basis.clone();
        basis.push(m);
        let mut s = Self::new_rect(&self.field, basis)?;
        s.tags = self.tags.clone();
        Ok(s)
    }

    /// Every basis matrix skew-symmetric in the sense of [`Matrix::is_skew`].
    pub fn is_skew(&self) -> bool {
        self.basis.iter().all(|m| m.is_skew(&self.field))
    }

    pub fn contains_identity(&self) -> bool {
        self.is_square() && self.contains(&Matrix::identity(&self.field, self.rows))
    }

    pub fn zero_matrix(&self) -> Matrix<F::Elem> {
        Matrix::filled(self.rows, self.cols, self.field.zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Fq;

    #[test]
    fn validation() {
        let f3 = Fq::new(3, 1, None).unwrap();
        let i = Matrix::identity(&f3, 2);
        let two_i = i.scale(&f3, &2);
        assert_eq!(
            MatrixSubspace::new(&f3, vec![i.clone(), two_i]).unwrap_err(),
            Error::DependentBasis
        );
        assert_eq!(MatrixSubspace::<Fq>::new(&f3, vec![]).unwrap_err(), Error::EmptyBasis);
        let s = MatrixSubspace::new(&f3, vec![i.clone()]).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.contains_identity());
        let rect = Matrix::zeros(&f3, 2, 3);
        assert!(MatrixSubspace::new(&f3, vec![i, rect]).is_err());
        let bad = Matrix::from_rows(vec![vec![5u32]]).unwrap();
        assert!(MatrixSubspace::new(&f3, vec![bad]).is_err());
    }

    #[test]
    fn enumeration_order() {
        let f3 = Fq::new(3, 1, None).unwrap();
        let a = Matrix::unit(&f3, 2, 2, 0, 0);
        let b = Matrix::unit(&f3, 2, 2, 1, 1);
        let s = MatrixSubspace::new(&f3, vec![a, b]).unwrap();
        assert_eq!(s.coeffs_at(5), vec![2, 1]);
        let m = s.element_at(5);
        assert_eq!(s.coordinates(&m), Some(vec![2, 1]));
    }
}
