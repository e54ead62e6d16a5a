//! Catalogue of property verifiers. Each entry checks one stated conclusion
//! on a concrete instance and returns a [`VerdictReport`]. An unmet
//! structural hypothesis yields a passing report with a caveat; an unmet
//! largeness hypothesis (such as `q > n^6`) yields a caveat while the
//! conclusion is still checked.

mod constructions;
mod forms;
pub mod group;
mod pencils;
mod ranks;
mod report;
mod squares;
mod suite;
mod symmetry;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::gf::{Field, Fq, Ring};
use crate::matrix::{Matrix, MatrixSubspace};
use crate::poly::{Homogeneity, MultiPoly};

pub use group::{centralizer, commuting_algebra, gl_order, left_stabilizer, normalizer_elements, normalizer_quotient, GroupAnalysis};
pub use report::{InstanceInfo, VerdictReport};
pub use suite::{designated_suite, run_suite, SuiteEntry};

use report::ReportBuilder;

/// What a verifier runs on.
#[derive(Clone, Debug)]
pub enum Instance {
    Subspace { label: String, sub: MatrixSubspace<Fq> },
    Polynomial { label: String, poly: MultiPoly<Fq> },
    /// All odd primes `r ≤ r_max` against prime powers `q ≤ q_max`.
    Arithmetic { r_max: u64, q_max: u64 },
    /// Seeded random pairs of skew matrices of size `n` over `F_q`.
    SkewPairs { q: u64, n: usize, samples: usize },
}

impl Instance {
    pub fn subspace(label: impl Into<String>, sub: MatrixSubspace<Fq>) -> Self {
        Instance::Subspace { label: label.into(), sub }
    }

    pub fn polynomial(label: impl Into<String>, poly: MultiPoly<Fq>) -> Self {
        Instance::Polynomial { label: label.into(), poly }
    }

    pub fn label(&self) -> String {
        match self {
            Instance::Subspace { label, .. } | Instance::Polynomial { label, .. } => label.clone(),
            Instance::Arithmetic { r_max, q_max } => format!("grid(r<={r_max},q<={q_max})"),
            Instance::SkewPairs { q, n, samples } => format!("skew_pairs(q={q},n={n},samples={samples})"),
        }
    }

    pub fn info(&self) -> InstanceInfo {
        let (q, n, d) = match self {
            Instance::Subspace { sub, .. } => (Some(sub.field().order()), Some(sub.n()), Some(sub.dim())),
            Instance::Polynomial { poly, .. } => (Some(poly.field().order()), poly.total_degree(), Some(poly.nvars())),
            Instance::Arithmetic { .. } => (None, None, None),
            Instance::SkewPairs { q, n, .. } => (Some(*q), Some(*n), None),
        };
        InstanceInfo {
            label: self.label(),
            q,
            n,
            d,
        }
    }
}

type Check = fn(&Instance, &Config) -> Result<VerdictReport>;

/// One catalogue entry.
pub struct Entry {
    pub id: &'static str,
    pub summary: &'static str,
    check: Check,
}

macro_rules! entry {
    ($id:literal, $summary:literal, $f:path) => {
        Entry {
            id: $id,
            summary: $summary,
            check: $f,
        }
    };
}

pub static CATALOGUE: &[Entry] = &[
    entry!("T1.2", "a nonzero form vanishing on all of F_q^d forces q < n", forms::vanishing_forces_small_field),
    entry!("L1.3", "factors of a homogeneous polynomial are homogeneous", forms::factors_are_homogeneous),
    entry!("C1.4", "2d >= n+1 and no nontrivial zero give irreducibility", forms::no_zero_irreducible),
    entry!("C1.5", "an invertible-only subspace with 2d >= n+1 has irreducible P", forms::invertible_only_irreducible),
    entry!("C1.6", "an invertible-only subspace of dimension k with 2k >= n+1 inside gives irreducible P", forms::invertible_inside_irreducible),
    entry!("T2.1", "zero count of an absolutely irreducible P lies in the point-count window", forms::point_count_window),
    entry!("C2.2", "an invertible-only subspace with 2d > n has P not absolutely irreducible", forms::invertible_only_not_absolute),
    entry!("T3.2", "norm-form P in prime degree: singular elements form a subspace", pencils::norm_form_singular_subspace),
    entry!("L3.3", "adding a singular element preserves the characteristic polynomial", pencils::complement_charpoly),
    entry!("C3.4", "singular elements are nilpotent when I lies in the subspace", pencils::singular_nilpotent),
    entry!("C3.5", "A^-1 B is nilpotent for invertible A and singular B", pencils::inverse_times_singular_nilpotent),
    entry!("T3.6", "A^-1 B has irreducible characteristic polynomial of degree r", pencils::prime_degree_charpolys),
    entry!("T3.7", "block pencil of dimension d in size 2d+1 with reducible A^-1 B", pencils::reducible_pencil),
    entry!("C3.8", "the block pencil admits no invertible-only enlargement", pencils::maximal_invertible),
    entry!("L3.9", "a singular subspace of codimension n is zero", pencils::codim_n_singular_zero),
    entry!("T3.10", "beyond an r-dimensional invertible subspace P is absolutely irreducible", pencils::wider_than_field),
    entry!("T4.1", "cubic trace-zero construction: singular elements form a line of rank 2", constructions::cubic_trace_zero_line),
    entry!("E3", "cubic norm construction: P = b(x2^3 + b x3^3)", constructions::cubic_norm_formula),
    entry!("C4.2", "field reduction of the cubic construction: singular part of dim m, rank 2m", constructions::reduced_cubic),
    entry!("T4.4", "quartic characteristic-2 construction: nilpotent singular line of rank 2", constructions::quartic_char2_line),
    entry!("C4.5", "field reduction of the quartic construction: nilpotent, dim m, rank 2m", constructions::reduced_quartic),
    entry!("L5.1", "left stabilizer is scalar when r < 2d < 2r", symmetry::scalar_left_stabilizer),
    entry!("C5.2", "left PGL-orbit is regular when r < 2d < 2r", symmetry::regular_left_orbit),
    entry!("L5.3", "left stabilizer in dimension r: scalar or a field generator", symmetry::field_left_stabilizer),
    entry!("C5.4", "left PGL-orbit size in dimension r", symmetry::left_orbit_sizes),
    entry!("T5.6", "centralizer is scalar or cyclic of order q^r - 1", symmetry::centralizer_structure),
    entry!("L5.7", "gcd(q-1, (q^r-1)/(q-1)) = 1 when gcd(r, q-1) = 1", symmetry::coprime_norm_index),
    entry!("T5.8", "normalizer modulo centralizer fixes no non-scalar element", symmetry::fixed_point_free),
    entry!("C5.9", "normalizer quotient has order 1 or r in dimension r", symmetry::quotient_one_or_r),
    entry!("C5.10", "normalizer quotient has order at most r when r < 2d < 2r", symmetry::quotient_at_most_r),
    entry!("L6.1", "y^2 - f is reducible exactly when f is a square", squares::square_iff_reducible),
    entry!("T6.2", "a square root over F_{q^2} only is Frobenius anti-invariant", squares::conjugate_root),
    entry!("T6.3", "square-valued polynomials are squares when q > n^6", squares::square_valued),
    entry!("C6.4", "nonzero square determinants force n even and d <= n/2", squares::square_determinants),
    entry!("C6.5", "with I present every characteristic polynomial is a square", squares::square_charpolys),
    entry!("C6.6", "characteristic polynomials of M^-1 N are squares", squares::pair_charpolys),
    entry!("T7.1", "count of invertible elements", ranks::full_rank),
    entry!("T7.2", "count of elements of maximal rank", ranks::max_rank),
    entry!("T7.3", "count of invertible skew elements", ranks::skew_full_rank),
    entry!("T7.4", "count of skew elements of maximal rank", ranks::skew_max_rank),
];

pub fn lookup(id: &str) -> Result<&'static Entry> {
    CATALOGUE
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownTheorem(id.to_string()))
}

/// Runs catalogue entry `id` on `instance`.
pub fn verify(id: &str, instance: &Instance, cfg: &Config) -> Result<VerdictReport> {
    (lookup(id)?.check)(instance, cfg)
}

fn builder(id: &str, inst: &Instance) -> ReportBuilder {
    ReportBuilder::new(id, inst.info())
}

fn want_sub<'a>(id: &str, inst: &'a Instance) -> Result<&'a MatrixSubspace<Fq>> {
    match inst {
        Instance::Subspace { sub, .. } => Ok(sub),
        _ => Err(Error::InstanceShape(format!("{id} needs a subspace"))),
    }
}

fn want_square<'a>(id: &str, inst: &'a Instance) -> Result<(&'a MatrixSubspace<Fq>, usize)> {
    let sub = want_sub(id, inst)?;
    let n = sub
        .require_square()
        .map_err(|_| Error::InstanceShape(format!("{id} needs square matrices")))?;
    Ok((sub, n))
}

/// The polynomial of a polynomial instance, or the determinantal polynomial
/// of a square subspace.
fn want_poly(id: &str, inst: &Instance) -> Result<MultiPoly<Fq>> {
    match inst {
        Instance::Polynomial { poly, .. } => Ok(poly.clone()),
        Instance::Subspace { .. } => crate::detkit::det_poly(want_square(id, inst)?.0),
        _ => Err(Error::InstanceShape(format!("{id} needs a polynomial or a square subspace"))),
    }
}

fn homogeneous_degree(p: &MultiPoly<Fq>) -> Option<usize> {
    match p.homogeneity() {
        Homogeneity::Homogeneous(n) => Some(n),
        _ => None,
    }
}

fn pow_u128(q: u64, e: usize) -> u128 {
    (q as u128).saturating_pow(e as u32)
}

/// `q > n^6`, the usual largeness hypothesis.
fn large(q: u64, n: usize) -> bool {
    q as u128 > pow_u128(n as u64, 6)
}

fn is_scalar(field: &Fq, m: &Matrix<u32>) -> bool {
    let c = *m.get(0, 0);
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| *m.get(i, j) == if i == j { c } else { field.zero() }))
}

/// Index of the first invertible element in counting order.
fn first_invertible(sub: &MatrixSubspace<Fq>, cfg: &Config) -> Result<Option<Matrix<u32>>> {
    let total = crate::detkit::affine_size(sub.field().order(), sub.dim(), cfg.affine_cap)?;
    Ok((1..total)
        .map(|i| sub.element_at(i))
        .find(|m| m.is_invertible(sub.field())))
}

/// `sub` itself when it contains `I`, else `A^{-1} sub` for its first
/// invertible element `A`; `None` without invertible elements.
fn with_identity(sub: &MatrixSubspace<Fq>, cfg: &Config, b: &mut ReportBuilder) -> Result<Option<MatrixSubspace<Fq>>> {
    if sub.contains_identity() {
        return Ok(Some(sub.clone()));
    }
    let Some(a) = first_invertible(sub, cfg)? else {
        return Ok(None);
    };
    b.caveat("identity not in the subspace; checked on A^-1 times the subspace for its first invertible element A");
    Ok(Some(crate::matrix::translate_to_identity(&a, sub)?))
}

fn render_matrix(m: &Matrix<u32>) -> Vec<Vec<u32>> {
    m.to_rows()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_ids_are_unique() {
        let mut ids: Vec<_> = CATALOGUE.iter().map(|e| e.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), CATALOGUE.len());
        assert!(matches!(lookup("X9.9"), Err(Error::UnknownTheorem(_))));
    }
}
