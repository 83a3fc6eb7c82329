use serde::{Deserialize, Serialize};

use super::BasedComplex;
use crate::algebra::{Field, Matrix, RationalFunction, ScalarField};
use crate::error::{Error, Result};

/// Entry types that have a text form inside complex records.
pub trait ParseEntry: Field {
    /// Field specifier, e.g. `Q` or `Fp:7`.
    fn field_name() -> String;
    fn parse_entry(s: &str, rank: usize) -> Result<Self>;
}

impl<K: ScalarField> ParseEntry for K {
    fn field_name() -> String {
        K::spec().to_string()
    }
    fn parse_entry(s: &str, rank: usize) -> Result<Self> {
        if rank != 0 {
            return Err(Error::Parse(format!("scalar entry `{s}` with rank {rank}")));
        }
        K::parse(s)
    }
}

/// Serialized form of a based complex: dims, row-major boundary matrices
/// as strings, optional homology bases.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexRecord {
    pub field: String,
    #[serde(default)]
    pub rank: usize,
    pub dims: Vec<usize>,
    pub boundaries: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homology_bases: Option<Vec<Vec<Vec<String>>>>,
}

fn matrix_to_text<F: Field>(m: &Matrix<F>) -> Vec<Vec<String>> {
    m.to_rows()
        .into_iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect()
}

fn matrix_from_text<F: ParseEntry>(rows: &[Vec<String>], r: usize, c: usize, rank: usize) -> Result<Matrix<F>> {
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(Error::Shape(format!("expected a {r}x{c} matrix")));
    }
    let data = rows
        .iter()
        .flatten()
        .map(|s| F::parse_entry(s, rank))
        .collect::<Result<Vec<_>>>()?;
    Matrix::new(r, c, data)
}

impl ComplexRecord {
    pub fn from_complex<F: ParseEntry>(c: &BasedComplex<F>, rank: usize) -> Self {
        ComplexRecord {
            field: F::field_name(),
            rank,
            dims: c.dims().to_vec(),
            boundaries: c.boundaries().iter().map(matrix_to_text).collect(),
            homology_bases: c
                .homology_bases()
                .map(|h| h.iter().map(matrix_to_text).collect()),
        }
    }

    pub fn to_complex<F: ParseEntry>(&self) -> Result<BasedComplex<F>> {
        if self.field != F::field_name() {
            return Err(Error::FieldMismatch {
                expected: F::field_name(),
                found: self.field.clone(),
            });
        }
        if self.dims.is_empty() || self.boundaries.len() + 1 != self.dims.len() {
            return Err(Error::InvalidComplex("dims and boundaries disagree".into()));
        }
        let boundaries = self
            .boundaries
            .iter()
            .enumerate()
            .map(|(i, b)| matrix_from_text(b, self.dims[i], self.dims[i + 1], self.rank))
            .collect::<Result<Vec<_>>>()?;
        let c = BasedComplex::new(self.dims.clone(), boundaries)?;
        match &self.homology_bases {
            None => Ok(c),
            Some(hs) => {
                if hs.len() != self.dims.len() {
                    return Err(Error::InvalidComplex("one homology basis per degree".into()));
                }
                let bases = hs
                    .iter()
                    .enumerate()
                    .map(|(i, h)| {
                        let cols = h.first().map_or(0, Vec::len);
                        matrix_from_text(h, self.dims[i], cols, self.rank)
                    })
                    .collect::<Result<Vec<_>>>()?;
                c.with_homology_bases(bases)
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Entries of `K(t_1, ..., t_r)`; the record's `rank` gives `r`.
impl<K: ScalarField> ParseEntry for RationalFunction<K> {
    fn field_name() -> String {
        K::spec().to_string()
    }
    fn parse_entry(s: &str, rank: usize) -> Result<Self> {
        RationalFunction::parse(s, rank)
    }
}
