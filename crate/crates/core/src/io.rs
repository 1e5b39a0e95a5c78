//! On-disk operator format.
//!
//! Operators travel as JSON documents of the form
//! `{ "dim": d, "matrices": [ { "label": "...", "re": [[...]], "im": [[...]] } ] }`
//! with row-major real/imaginary parts. serde_json prints floats with the
//! shortest representation that round-trips, so a load/store cycle is
//! bit-exact at double precision.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{C64, ComplexMatrix};

/// A labeled matrix in its serialized form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LabeledMatrix {
    pub label: String,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl LabeledMatrix {
    pub fn from_matrix(label: impl Into<String>, m: &ComplexMatrix) -> Self {
        let d = m.dim();
        let re = (0..d)
            .map(|i| (0..d).map(|j| m.get(i, j).re).collect())
            .collect();
        let im = (0..d)
            .map(|i| (0..d).map(|j| m.get(i, j).im).collect())
            .collect();
        LabeledMatrix {
            label: label.into(),
            re,
            im,
        }
    }

    pub fn to_matrix(&self, dim: usize) -> Result<ComplexMatrix> {
        let check = |part: &Vec<Vec<f64>>| -> Result<()> {
            if part.len() != dim || part.iter().any(|row| row.len() != dim) {
                return Err(Error::Serialization(format!(
                    "matrix '{}' is not {dim}x{dim}",
                    self.label
                )));
            }
            Ok(())
        };
        check(&self.re)?;
        check(&self.im)?;
        let m = ComplexMatrix::from_fn(dim, |i, j| C64::new(self.re[i][j], self.im[i][j]));
        if !m.is_finite() {
            return Err(Error::Serialization(format!(
                "matrix '{}' has non-finite entries",
                self.label
            )));
        }
        Ok(m)
    }
}

/// A set of labeled operators on a common Hilbert space.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OperatorFile {
    pub dim: usize,
    pub matrices: Vec<LabeledMatrix>,
}

impl OperatorFile {
    pub fn new(dim: usize) -> Self {
        OperatorFile {
            dim,
            matrices: Vec::new(),
        }
    }

    pub fn push(&mut self, label: impl Into<String>, m: &ComplexMatrix) {
        assert_eq!(m.dim(), self.dim);
        self.matrices.push(LabeledMatrix::from_matrix(label, m));
    }

    pub fn find(&self, label: &str) -> Result<ComplexMatrix> {
        self.matrices
            .iter()
            .find(|m| m.label == label)
            .ok_or_else(|| Error::Serialization(format!("no matrix labeled '{label}'")))?
            .to_matrix(self.dim)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("operator serialization");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Serialization(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_file_round_trip_is_bit_exact() {
        let m = ComplexMatrix::from_fn(3, |i, j| {
            C64::new(
                (i as f64 + 0.1) / (j as f64 + 3.7),
                ((i * j) as f64 - 0.3) * std::f64::consts::PI,
            )
        });
        let mut file = OperatorFile::new(3);
        file.push("m", &m);
        let text = file.to_json();
        let back = OperatorFile::from_json(&text).unwrap().find("m").unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m.get(i, j).re.to_bits(), back.get(i, j).re.to_bits());
                assert_eq!(m.get(i, j).im.to_bits(), back.get(i, j).im.to_bits());
            }
        }
    }

    #[test]
    fn missing_label_and_bad_shape_are_errors() {
        let file = OperatorFile::new(2);
        assert!(file.find("absent").is_err());

        let lm = LabeledMatrix {
            label: "x".into(),
            re: vec![vec![1.0]],
            im: vec![vec![0.0]],
        };
        assert!(lm.to_matrix(2).is_err());
    }
}
