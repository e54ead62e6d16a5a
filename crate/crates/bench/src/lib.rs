//! Fixture builders shared by the benchmarks.

use detspace_core::matrix::construct::{cubic_norm, field_subspace, full_space, random_subspace, skew_space};
use detspace_core::matrix::MatrixSubspace;
use detspace_core::{Fq, MultiPoly, Result};

pub fn field(q: u64) -> Fq {
    Fq::of_order(q).expect("prime power")
}

/// Determinantal polynomial of the full `M_2(F_q)`: `x1 x4 - x2 x3`.
pub fn full_m2_det(q: u64) -> Result<MultiPoly<Fq>> {
    detspace_core::detkit::det_poly(&full_space(&field(q), 2, 2)?)
}

pub fn cubic_norm_example() -> Result<MatrixSubspace<Fq>> {
    cubic_norm(&field(7), 3)
}

pub fn field_space(q: u64, t: usize) -> Result<MatrixSubspace<Fq>> {
    field_subspace(&field(q), t)
}

pub fn skew(q: u64, n: usize) -> Result<MatrixSubspace<Fq>> {
    skew_space(&field(q), n)
}

/// Seeded `d`-dimensional subspace of `n x n` matrices.
pub fn random_square(q: u64, n: usize, d: usize, seed: u64) -> Result<MatrixSubspace<Fq>> {
    random_subspace(&field(q), n, n, d, seed)
}
