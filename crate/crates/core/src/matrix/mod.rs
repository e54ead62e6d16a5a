//! Matrices over finite fields, subspaces with ordered bases, and explicit
//! constructions.

pub mod construct;
mod extend;
mod mat;
mod span;
mod subspace;

pub use extend::{
    all_invertible, all_singular, equivalence_transform, extend_singular, find_invertible_extension,
    translate_to_identity, with_identity_first, CandidatePool, ExtensionSearch,
};
pub use mat::Matrix;
pub use span::LinearSpan;
pub use subspace::MatrixSubspace;
