//! JSON interchange for fields and subspaces.
//!
//! A subspace file is `{"field": {...}, "n": int, "basis": [[[int]]]}`, each
//! basis matrix a list of rows of integer element encodings. Rectangular
//! subspaces add `"cols"`; `"tags"` carries optional construction metadata.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::Fq;
use crate::matrix::{Matrix, MatrixSubspace};

/// `{"p": 2, "k": 3, "modulus": [1, 1, 0, 1]}`; `modulus` is optional (lowest
/// coefficient first) and `{"q": 8}` is accepted as shorthand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

impl FieldSpec {
    pub fn of(field: &Fq) -> Self {
        FieldSpec {
            p: Some(field.p()),
            k: Some(field.k()),
            q: None,
            modulus: Some(field.modulus().iter().map(|&c| c as u64).collect()),
        }
    }

    pub fn build(&self) -> Result<Fq> {
        match (self.p, self.k, self.q) {
            (Some(p), k, q) => {
                let k = k.unwrap_or(1);
                if q.is_some_and(|q| (p as u128).checked_pow(k as u32) != Some(q as u128)) {
                    return Err(Error::Format("field q disagrees with p^k".into()));
                }
                Fq::new(p, k, self.modulus.clone())
            }
            (None, None, Some(q)) if self.modulus.is_none() => Fq::of_order(q),
            _ => Err(Error::Format("field needs p (with optional k, modulus) or q alone".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceFile {
    pub field: FieldSpec,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cols: Option<usize>,
    pub basis: Vec<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tags: BTreeMap<String, String>,
}

impl SubspaceFile {
    pub fn of(sub: &MatrixSubspace<Fq>) -> Self {
        let (rows, cols) = sub.shape();
        SubspaceFile {
            field: FieldSpec::of(sub.field()),
            n: rows,
            cols: (cols != rows).then_some(cols),
            basis: sub
                .basis()
                .iter()
                .map(|m| m.to_rows().into_iter().map(|r| r.into_iter().map(u64::from).collect()).collect())
                .collect(),
            tags: sub.tags().clone(),
        }
    }

    /// Validates encodings, shapes and independence.
    pub fn build(&self) -> Result<MatrixSubspace<Fq>> {
        let field = self.field.build()?;
        let (rows, cols) = (self.n, self.cols.unwrap_or(self.n));
        if rows == 0 || cols == 0 {
            return Err(Error::Format("matrix size must be positive".into()));
        }
        let mut basis = Vec::with_capacity(self.basis.len());
        for (i, m) in self.basis.iter().enumerate() {
            if m.len() != rows || m.iter().any(|r| r.len() != cols) {
                return Err(Error::Format(format!("basis matrix {i} is not {rows}x{cols}")));
            }
            let data = m.iter().flatten().map(|&v| field.elem(v)).collect::<Result<Vec<_>>>()?;
            basis.push(Matrix::new(rows, cols, data)?);
        }
        let mut sub = if rows == cols {
            MatrixSubspace::new(&field, basis)?
        } else {
            MatrixSubspace::new_rect(&field, basis)?
        };
        for (k, v) in &self.tags {
            sub = sub.with_tag(k, v.clone());
        }
        Ok(sub)
    }
}

pub fn subspace_from_json(text: &str) -> Result<MatrixSubspace<Fq>> {
    serde_json::from_str::<SubspaceFile>(text)
        .map_err(|e| Error::Format(e.to_string()))?
        .build()
}

/// Pretty JSON with one matrix row per line.
pub fn subspace_to_json(sub: &MatrixSubspace<Fq>) -> String {
    let file = SubspaceFile::of(sub);
    let mut out = String::from("{\n");
    out.push_str(&format!("  \"field\": {},\n", compact(&file.field)));
    out.push_str(&format!("  \"n\": {},\n", file.n));
    if let Some(c) = file.cols {
        out.push_str(&format!("  \"cols\": {c},\n"));
    }
    out.push_str("  \"basis\": [\n");
    let mats: Vec<String> = file
        .basis
        .iter()
        .map(|m| {
            let rows: Vec<String> = m.iter().map(|r| format!("      {}", compact(r))).collect();
            format!("    [\n{}\n    ]", rows.join(",\n"))
        })
        .collect();
    out.push_str(&mats.join(",\n"));
    out.push_str("\n  ]");
    if !file.tags.is_empty() {
        out.push_str(&format!(",\n  \"tags\": {}", compact(&file.tags)));
    }
    out.push_str("\n}");
    out
}

fn compact<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}
