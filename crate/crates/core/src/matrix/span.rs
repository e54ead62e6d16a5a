use crate::gf::Field;

/// Row space of a list of generator vectors, kept in reduced echelon form
/// together with the combination of generators that produced each row.
#[derive(Clone, Debug)]
pub struct LinearSpan<F: Field> {
    field: F,
    len: usize,
    generators: usize,
    /// Reduced echelon rows; `rows[i]` has a leading 1 at `pivots[i]`.
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
    /// `rows[i] = Σ combos[i][j] * generator_j`.
    combos: Vec<Vec<F::Elem>>,
}

impl<F: Field> LinearSpan<F> {
    pub fn new(field: &F, len: usize, generators: &[Vec<F::Elem>]) -> Self {
        let mut span = LinearSpan {
            field: field.clone(),
            len,
            generators: generators.len(),
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: Vec::new(),
        };
        for (g, v) in generators.iter().enumerate() {
            let mut combo = vec![field.zero(); generators.len()];
            combo[g] = field.one();
            span.insert(v.clone(), combo);
        }
        span
    }

    fn insert(&mut self, v: Vec<F::Elem>, combo: Vec<F::Elem>) -> bool {
        let f = &self.field;
        let (mut v, mut combo) = self.reduce(v, combo);
        let Some(p) = v.iter().position(|e| !f.is_zero(e)) else {
            return false;
        };
        let inv = f.inv(&v[p]).unwrap();
        v.iter_mut().for_each(|e| *e = f.mul(e, &inv));
        combo.iter_mut().for_each(|e| *e = f.mul(e, &inv));
        // keep existing rows reduced at the new pivot
        for i in 0..self.rows.len() {
            let c = self.rows[i][p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for j in 0..self.len {
                self.rows[i][j] = f.sub(&self.rows[i][j], &f.mul(&c, &v[j]));
            }
            for j in 0..self.generators {
                self.combos[i][j] = f.sub(&self.combos[i][j], &f.mul(&c, &combo[j]));
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        self.combos.insert(at, combo);
        true
    }

    fn reduce(&self, mut v: Vec<F::Elem>, mut combo: Vec<F::Elem>) -> (Vec<F::Elem>, Vec<F::Elem>) {
        let f = &self.field;
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = v[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for j in 0..self.len {
                v[j] = f.sub(&v[j], &f.mul(&c, &self.rows[i][j]));
            }
            for j in 0..combo.len() {
                combo[j] = f.sub(&combo[j], &f.mul(&c, &self.combos[i][j]));
            }
        }
        (v, combo)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let (r, _) = self.reduce(v.to_vec(), Vec::new());
        r.iter().all(|e| self.field.is_zero(e))
    }

    /// Coefficients `c` with `v = Σ c_j generator_j`, when `v` is in the span.
    /// Unique when the generators are independent.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        let mut combo = vec![f.zero(); self.generators];
        let mut rest = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = rest[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for j in 0..self.len {
                rest[j] = f.sub(&rest[j], &f.mul(&c, &self.rows[i][j]));
            }
            for j in 0..self.generators {
                combo[j] = f.add(&combo[j], &f.mul(&c, &self.combos[i][j]));
            }
        }
        rest.iter().all(|e| f.is_zero(e)).then_some(combo)
    }

    /// Canonical reduced echelon basis; equal spans give equal output.
    pub fn echelon(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{Fq, Ring};

    #[test]
    fn coordinates_and_echelon() {
        let f5 = Fq::new(5, 1, None).unwrap();
        let g = vec![vec![1u32, 2, 0], vec![0, 1, 1], vec![1, 3, 1]];
        let span = LinearSpan::new(&f5, 3, &g);
        assert_eq!(span.rank(), 2);
        let v = vec![2u32, 2, 3]; // 2 g0 + 3 g1
        let c = span.coordinates(&v).unwrap();
        let back: Vec<u32> = (0..3)
            .map(|k| (0..3).fold(0, |acc, j| f5.add(&acc, &f5.mul(&c[j], &g[j][k]))))
            .collect();
        assert_eq!(back, v);
        assert!(!span.contains(&[0, 0, 1]));
        let other = LinearSpan::new(&f5, 3, &[vec![1, 3, 1], vec![0, 2, 2]]);
        assert_eq!(span.echelon(), other.echelon());
    }
}
