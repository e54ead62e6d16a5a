use crate::error::{Error, Result};
use crate::gf::{Field, Ring};

/// Dense row-major matrix. Arithmetic takes the ring as an explicit context.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn new(rows: usize, cols: usize, data: Vec<E>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape("matrix with no entries".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn filled(rows: usize, cols: usize, e: E) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![e; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: E) {
        self.data[i * self.cols + j] = e;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Entries in row-major order.
    pub fn data(&self) -> &[E] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn map<G: Clone>(&self, f: impl Fn(&E) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Submatrix on the given row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let data = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        Matrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    /// `diag(a, b)` with `zero` off the blocks.
    pub fn block_diag(a: &Self, b: &Self, zero: E) -> Self {
        let (r, c) = (a.rows + b.rows, a.cols + b.cols);
        let mut m = Self::filled(r, c, zero);
        for i in 0..a.rows {
            for j in 0..a.cols {
                m.set(i, j, a.get(i, j).clone());
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                m.set(a.rows + i, a.cols + j, b.get(i, j).clone());
            }
        }
        m
    }
}

impl<E: Clone + Eq> Matrix<E> {
    pub fn zeros<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, ring.zero())
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    /// Matrix with a single 1 at `(i, j)`.
    pub fn unit<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(ring, rows, cols);
        m.set(i, j, ring.one());
        m
    }

    pub fn is_zero<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.data.iter().all(|e| ring.is_zero(e))
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.rows == other.rows && self.cols == other.cols {
            Ok(())
        } else {
            Err(Error::Shape(format!(
                "{}x{} against {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )))
        }
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(self.zip(other, |a, b| ring.add(a, b)))
    }

    pub fn sub<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(self.zip(other, |a, b| ring.sub(a, b)))
    }

    fn zip(&self, other: &Self, f: impl Fn(&E, &E) -> E) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn neg<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        self.map(|a| ring.neg(a))
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, s: &E) -> Self {
        self.map(|a| ring.mul(s, a))
    }

    /// `self += s * other`, shapes assumed equal.
    pub fn add_scaled<R: Ring<Elem = E>>(&mut self, ring: &R, s: &E, other: &Self) {
        if ring.is_zero(s) {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a = ring.add(a, &ring.mul(s, b));
        }
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = ring.add(&out.data[idx], &ring.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec<R: Ring<Elem = E>>(&self, ring: &R, v: &[E]) -> Vec<E> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(ring.zero(), |acc, (a, b)| ring.add(&acc, &ring.mul(a, b)))
            })
            .collect()
    }

    pub fn pow<R: Ring<Elem = E>>(&self, ring: &R, mut e: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("power of a non-square matrix".into()));
        }
        let mut base = self.clone();
        let mut acc = Self::identity(ring, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(ring, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(ring, &base)?;
            }
        }
        Ok(acc)
    }

    /// Skew-symmetric: `A^T = -A` with zero diagonal (the diagonal condition
    /// is what matters in characteristic 2).
    pub fn is_skew<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                ring.is_zero(self.get(i, i))
                    && (0..i).all(|j| ring.is_zero(&ring.add(self.get(i, j), self.get(j, i))))
            })
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref<F: Field<Elem = E>>(&self, field: &F) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = rref_in_place(field, &mut m.data, m.rows, m.cols);
        (m, pivots)
    }

    pub fn rank<F: Field<Elem = E>>(&self, field: &F) -> usize {
        self.rref(field).1.len()
    }

    /// Determinant by Gaussian elimination.
    pub fn det<F: Field<Elem = E>>(&self, field: &F) -> Result<E> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !field.is_zero(&a[r * n + c])) else {
                return Ok(field.zero());
            };
            if p != c {
                for j in 0..n {
                    a.swap(p * n + j, c * n + j);
                }
                det = field.neg(&det);
            }
            let piv = a[c * n + c].clone();
            det = field.mul(&det, &piv);
            let inv = field.inv(&piv).unwrap();
            for r in (c + 1)..n {
                let f = field.mul(&a[r * n + c], &inv);
                if field.is_zero(&f) {
                    continue;
                }
                for j in c..n {
                    a[r * n + j] = field.sub(&a[r * n + j], &field.mul(&f, &a[c * n + j]));
                }
            }
        }
        Ok(det)
    }

    pub fn is_invertible<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.is_square() && self.rank(field) == self.rows
    }

    pub fn inverse<F: Field<Elem = E>>(&self, field: &F) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Vec::with_capacity(2 * n * n);
        for i in 0..n {
            aug.extend_from_slice(self.row(i));
            aug.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
        }
        let pivots = rref_in_place(field, &mut aug, n, 2 * n);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        let data = (0..n)
            .flat_map(|i| aug[i * 2 * n + n..(i + 1) * 2 * n].to_vec())
            .collect();
        Ok(Matrix { rows: n, cols: n, data })
    }

    /// Basis of the right kernel `{v : A v = 0}`.
    pub fn kernel<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        let (r, pivots) = self.rref(field);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![field.zero(); self.cols];
                v[f] = field.one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = field.neg(r.get(row, f));
                }
                v
            })
            .collect()
    }

    /// `T^n = 0` for an `n x n` matrix.
    pub fn is_nilpotent<F: Field<Elem = E>>(&self, field: &F) -> Result<bool> {
        Ok(self.pow(field, self.rows as u64)?.is_zero(field))
    }
}

/// In-place reduced row echelon form of a row-major `rows x cols` block.
/// Returns the pivot columns; zero rows end up at the bottom.
pub(crate) fn rref_in_place<F: Field>(
    field: &F,
    a: &mut [F::Elem],
    rows: usize,
    cols: usize,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !field.is_zero(&a[i * cols + c])) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = field.inv(&a[r * cols + c]).unwrap();
        for j in c..cols {
            a[r * cols + j] = field.mul(&a[r * cols + j], &inv);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a[i * cols + c].clone();
            if field.is_zero(&f) {
                continue;
            }
            for j in c..cols {
                a[i * cols + j] = field.sub(&a[i * cols + j], &field.mul(&f, &a[r * cols + j]));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Fq;

    #[test]
    fn small_examples() {
        let f7 = Fq::new(7, 1, None).unwrap();
        let a = Matrix::from_rows(vec![vec![1u32, 2], vec![3, 4]]).unwrap();
        assert_eq!(a.det(&f7).unwrap(), f7.from_int(-2));
        let inv = a.inverse(&f7).unwrap();
        assert_eq!(a.mul(&f7, &inv).unwrap(), Matrix::identity(&f7, 2));
        let s = Matrix::from_rows(vec![vec![1u32, 2], vec![2, 4]]).unwrap();
        assert_eq!(s.inverse(&f7), Err(Error::Singular));
        assert_eq!(s.rank(&f7), 1);
        assert_eq!(s.kernel(&f7), vec![vec![5, 1]]);
        let nil = Matrix::from_rows(vec![vec![0u32, 1], vec![0, 0]]).unwrap();
        assert!(nil.is_nilpotent(&f7).unwrap());
        assert!(!a.is_nilpotent(&f7).unwrap());
        assert!(Matrix::<u32>::new(2, 2, vec![0; 3]).is_err());
    }

    #[test]
    fn skew_convention() {
        let f2 = Fq::new(2, 1, None).unwrap();
        let f3 = Fq::new(3, 1, None).unwrap();
        let sym = Matrix::from_rows(vec![vec![0u32, 1], vec![1, 0]]).unwrap();
        assert!(sym.is_skew(&f2));
        assert!(!sym.is_skew(&f3));
        let skew = Matrix::from_rows(vec![vec![0u32, 1], vec![2, 0]]).unwrap();
        assert!(skew.is_skew(&f3));
        let diag = Matrix::from_rows(vec![vec![1u32, 0], vec![0, 1]]).unwrap();
        assert!(!diag.is_skew(&f2));
    }
}
