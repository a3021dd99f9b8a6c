//! Matrix file format.
//!
//! A matrix is exchanged as `{"n": 2, "entries": [[[re, im], [re, im]], ...]}`
//! with rows in order and each entry a [real, imaginary] pair. Serialization
//! goes through serde_json's f64 encoding, which round-trips every double
//! exactly.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use num_complex::Complex64;

use super::Matrix;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    n: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.dim();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| [self[(i, j)].re, self[(i, j)].im]).collect())
            .collect();
        MatrixRepr { n, entries }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(deserializer)?;
        if repr.n == 0 {
            return Err(D::Error::custom("matrix dimension must be at least 1"));
        }
        if repr.entries.len() != repr.n || repr.entries.iter().any(|row| row.len() != repr.n) {
            return Err(D::Error::custom(format!(
                "entries must form an {0}x{0} grid",
                repr.n
            )));
        }
        let data: Vec<Complex64> = repr
            .entries
            .iter()
            .flatten()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        Matrix::from_data(repr.n, data).map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// Parse a matrix from its JSON encoding.
pub fn matrix_from_json(text: &str) -> Result<Matrix> {
    serde_json::from_str(text).map_err(|e| Error::InvalidParameter(format!("bad matrix JSON: {e}")))
}

/// Encode a matrix as JSON.
pub fn matrix_to_json(m: &Matrix) -> String {
    serde_json::to_string(m).expect("matrix serialization is infallible")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::random_hermitian;

    #[test]
    fn json_roundtrip_is_exact() {
        let a = random_hermitian(99, 3, 2.5).unwrap();
        let text = matrix_to_json(&a);
        let back = matrix_from_json(&text).unwrap();
        assert_eq!(a, back);
    }

    #[test]
    fn json_shape_is_stable() {
        let m = Matrix::diag(&[1.0, -2.0]);
        let text = matrix_to_json(&m);
        assert_eq!(
            text,
            r#"{"n":2,"entries":[[[1.0,0.0],[0.0,0.0]],[[0.0,0.0],[-2.0,0.0]]]}"#
        );
    }

    #[test]
    fn rejects_ragged_and_nonfinite() {
        assert!(matrix_from_json(r#"{"n":2,"entries":[[[1,0]],[[0,0],[1,0]]]}"#).is_err());
        assert!(matrix_from_json(r#"{"n":1,"entries":[[[null,0]]]}"#).is_err());
        assert!(matrix_from_json(r#"{"n":0,"entries":[]}"#).is_err());
    }
}
