use serde::{Deserialize, Serialize};

use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scaling {
    #[default]
    ZScore,
    MinMax,
}

/// Per-feature affine transform `(x - shift) / scale`, frozen at fit time.
/// Constant training features map to 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Scaler<T> {
    pub kind: Scaling,
    pub shift: Vec<T>,
    pub scale: Vec<T>,
}

impl<T: Scalar> Scaler<T> {
    pub fn fit(rows: &[Vec<T>], kind: Scaling) -> Self {
        let d = rows.first().map_or(0, Vec::len);
        let n = T::count(rows.len().max(1));
        let mut shift = vec![T::zero(); d];
        let mut scale = vec![T::zero(); d];
        for j in 0..d {
            match kind {
                Scaling::ZScore => {
                    let mean = rows.iter().map(|r| r[j]).sum::<T>() / n;
                    let var = rows.iter().map(|r| (r[j] - mean) * (r[j] - mean)).sum::<T>() / n;
                    shift[j] = mean;
                    scale[j] = var.sqrt();
                }
                Scaling::MinMax => {
                    let lo = rows.iter().map(|r| r[j]).fold(T::infinity(), T::min);
                    let hi = rows.iter().map(|r| r[j]).fold(T::neg_infinity(), T::max);
                    shift[j] = lo;
                    scale[j] = hi - lo;
                }
            }
        }
        Scaler { kind, shift, scale }
    }

    pub fn transform(&self, row: &[T]) -> Vec<T> {
        row.iter()
            .zip(self.shift.iter().zip(&self.scale))
            .map(|(&x, (&s, &k))| if k > T::zero() { (x - s) / k } else { T::zero() })
            .collect()
    }

    pub fn transform_all(&self, rows: &[Vec<T>]) -> Vec<Vec<T>> {
        rows.iter().map(|r| self.transform(r)).collect()
    }
}
