//! Exact algebra for subspaces of matrices over finite fields: field towers,
//! polynomial arithmetic, determinantal polynomials and their classification,
//! zero and rank censuses, and a catalogue of property verifiers.

pub mod config;
pub mod detkit;
pub mod error;
pub mod gf;
pub mod io;
pub mod matrix;
pub mod poly;
pub mod theorems;

pub use config::Config;
pub use error::{Error, Result};
pub use gf::{Extension, ExtField, Field, FieldElement, Fq, Ring};
pub use poly::{Homogeneity, Monomial, MultiPoly, PolyRing, UniPoly};
