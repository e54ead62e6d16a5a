//! Independent oracles shared by the integration tests. Nothing here calls
//! the routine it is used to check.
#![allow(dead_code)]

use detspace_core::matrix::Matrix;
use detspace_core::{Field, Fq, Ring};
use proptest::test_runner::{Config as PtConfig, RngSeed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn pt(cases: u32) -> PtConfig {
    PtConfig {
        cases,
        rng_seed: RngSeed::Fixed(0x5eed_0d37),
        failure_persistence: None,
        ..PtConfig::default()
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn field(q: u64) -> Fq {
    Fq::of_order(q).unwrap()
}

pub fn random_matrix(f: &Fq, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix<u32> {
    let data = (0..rows * cols).map(|_| f.element(rng.gen_range(0..f.order()))).collect();
    Matrix::new(rows, cols, data).unwrap()
}

pub fn random_skew(f: &Fq, n: usize, rng: &mut ChaCha8Rng) -> Matrix<u32> {
    let mut m = Matrix::zeros(f, n, n);
    for i in 0..n {
        for j in i + 1..n {
            let a = f.element(rng.gen_range(0..f.order()));
            m.set(j, i, f.neg(&a));
            m.set(i, j, a);
        }
    }
    m
}

/// Row-major vectors of plain field elements.
pub type Dense = Vec<Vec<u32>>;

pub fn naive_mul(f: &Fq, a: &Dense, b: &Dense) -> Dense {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(f.zero(), |acc, t| f.add(&acc, &f.mul(&a[i][t], &b[t][j]))))
                .collect()
        })
        .collect()
}

/// Rank by Gaussian elimination.
pub fn gauss_rank(f: &Fq, a: &Dense) -> usize {
    let mut m = a.clone();
    let (rows, cols) = (m.len(), m[0].len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !f.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(p, r);
        let pinv = f.inv(&m[r][c]).unwrap();
        for i in r + 1..rows {
            let factor = f.mul(&m[i][c], &pinv);
            for j in c..cols {
                let t = f.mul(&factor, &m[r][j]);
                m[i][j] = f.sub(&m[i][j], &t);
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Determinant by elimination to upper-triangular form.
pub fn gauss_det(f: &Fq, a: &Dense) -> u32 {
    let mut m = a.clone();
    let n = m.len();
    let mut det = f.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !f.is_zero(&m[i][c])) else {
            return f.zero();
        };
        if p != c {
            m.swap(p, c);
            det = f.neg(&det);
        }
        det = f.mul(&det, &m[c][c]);
        let pinv = f.inv(&m[c][c]).unwrap();
        for i in c + 1..n {
            let factor = f.mul(&m[i][c], &pinv);
            for j in c..n {
                let t = f.mul(&factor, &m[c][j]);
                m[i][j] = f.sub(&m[i][j], &t);
            }
        }
    }
    det
}

/// Inverse by Gauss-Jordan on `[A | I]`.
pub fn gauss_inverse(f: &Fq, a: &Dense) -> Option<Dense> {
    let n = a.len();
    let mut m: Dense = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !f.is_zero(&m[i][c]))?;
        m.swap(p, c);
        let pinv = f.inv(&m[c][c]).unwrap();
        for j in 0..2 * n {
            m[c][j] = f.mul(&m[c][j], &pinv);
        }
        for i in 0..n {
            if i != c && !f.is_zero(&m[i][c]) {
                let factor = m[i][c];
                for j in 0..2 * n {
                    let t = f.mul(&factor, &m[c][j]);
                    m[i][j] = f.sub(&m[i][j], &t);
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Permutation-expansion determinant for tiny sizes.
pub fn leibniz_det(f: &Fq, a: &Dense) -> u32 {
    let n = a.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = f.zero();
    permute(&mut perm, 0, &mut |p| {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if p[i] > p[j] {
                    inversions += 1;
                }
            }
        }
        let mut t = f.one();
        for (i, &j) in p.iter().enumerate() {
            t = f.mul(&t, &a[i][j]);
        }
        if inversions % 2 == 1 {
            t = f.neg(&t);
        }
        total = f.add(&total, &t);
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, visit);
        p.swap(k, i);
    }
}

/// Element tuples of `F_q^d` in counting order, first coordinate fastest.
pub fn tuples(f: &Fq, d: usize) -> impl Iterator<Item = Vec<u32>> + '_ {
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
