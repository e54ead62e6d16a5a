//! Determinantal and characteristic polynomials, Pfaffians, zero and rank
//! censuses, and the irreducibility and factorization tests built on them.

pub mod bounds;
mod census;
mod classify;
mod det;
mod normform;

pub(crate) use census::affine_size;
pub use census::{count_values, point_at, zero_census, CensusMode, ZeroCensus};
pub use classify::{
    classify, classify_full, rank_census, singular_indices, singular_part, Classification, ClassifyOutput,
    RankBound, RankCensus, SingularPart, Verdicts, Witnesses,
};
pub use det::{berkowitz, char_poly, det_generic, det_poly, pfaffian, pfaffian_generic, symbolic_matrix};
pub use normform::{norm_form_witness, norm_product, NormFormWitness, WitnessRecord};
