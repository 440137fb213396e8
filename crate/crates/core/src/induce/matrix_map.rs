use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::InduceError;
use crate::exactnum::SurdSum;
use crate::poly::Polynomial;

/// `r' x s'` matrix of polynomials in `z1..z(rs)`, where `z(i*s + j + 1)` is
/// the entry `z_{i+1, j+1}` of the source matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymbolicMatrixMap {
    r: usize,
    s: usize,
    entries: Vec<Vec<Polynomial<SurdSum>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    r: usize,
    s: usize,
    rp: usize,
    sp: usize,
    entries: Vec<Vec<String>>,
}

impl SymbolicMatrixMap {
    pub fn new(r: usize, s: usize, entries: Vec<Vec<Polynomial<SurdSum>>>) -> Result<Self, InduceError> {
        let cols = entries.first().map_or(0, Vec::len);
        if entries.is_empty() || cols == 0 {
            return Err(InduceError::Shape("matrix map needs at least one entry".into()));
        }
        for row in &entries {
            if row.len() != cols {
                return Err(InduceError::Shape("ragged rows".into()));
            }
            if let Some(p) = row.iter().find(|p| p.arity() != r * s) {
                return Err(InduceError::Shape(format!(
                    "entry arity {} differs from r*s = {}",
                    p.arity(),
                    r * s
                )));
            }
        }
        Ok(SymbolicMatrixMap { r, s, entries })
    }

    pub fn zero(r: usize, s: usize, rp: usize, sp: usize) -> Self {
        SymbolicMatrixMap {
            r,
            s,
            entries: vec![vec![Polynomial::zero(r * s); sp]; rp],
        }
    }

    /// Rows of entry text in the `z` grammar.
    pub fn parse(r: usize, s: usize, rows: &[&[&str]]) -> Result<Self, InduceError> {
        let entries = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|t| Polynomial::parse_with(t, r * s, "z"))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(r, s, entries)
    }

    pub fn source_shape(&self) -> (usize, usize) {
        (self.r, self.s)
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries[0].len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial<SurdSum> {
        &self.entries[i][j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, value: Polynomial<SurdSum>) {
        assert_eq!(value.arity(), self.r * self.s, "entry arity");
        self.entries[i][j] = value;
    }

    pub fn entries(&self) -> &[Vec<Polynomial<SurdSum>>] {
        &self.entries
    }

    pub fn texts(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|p| p.to_text_with("z")).collect())
            .collect()
    }

    /// Evaluates at a complex `r x s` matrix.
    pub fn eval(&self, z: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        assert_eq!(z.shape(), (self.r, self.s), "source matrix shape");
        // row-major flattening matches the variable numbering
        let point: Vec<Complex64> = (0..self.r)
            .flat_map(|i| (0..self.s).map(move |j| (i, j)))
            .map(|(i, j)| z[(i, j)])
            .collect();
        DMatrix::from_fn(self.rows(), self.cols(), |i, j| {
            self.entries[i][j].eval_complex(&point).expect("arity checked")
        })
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(MatrixJson {
            r: self.r,
            s: self.s,
            rp: self.rows(),
            sp: self.cols(),
            entries: self.texts(),
        })
        .unwrap()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).unwrap()
    }

    pub fn from_json_value(value: serde_json::Value) -> Result<Self, InduceError> {
        let raw: MatrixJson = serde_json::from_value(value).map_err(|e| InduceError::Json(e.to_string()))?;
        Self::from_raw(raw)
    }

    pub fn from_json(text: &str) -> Result<Self, InduceError> {
        let raw: MatrixJson = serde_json::from_str(text).map_err(|e| InduceError::Json(e.to_string()))?;
        Self::from_raw(raw)
    }

    fn from_raw(raw: MatrixJson) -> Result<Self, InduceError> {
        if raw.entries.len() != raw.rp || raw.entries.iter().any(|row| row.len() != raw.sp) {
            return Err(InduceError::Shape(format!("entries are not {} x {}", raw.rp, raw.sp)));
        }
        let rows: Vec<Vec<&str>> = raw
            .entries
            .iter()
            .map(|row| row.iter().map(String::as_str).collect())
            .collect();
        let refs: Vec<&[&str]> = rows.iter().map(Vec::as_slice).collect();
        Self::parse(raw.r, raw.s, &refs)
    }
}

impl std::fmt::Display for SymbolicMatrixMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, row) in self.texts().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
