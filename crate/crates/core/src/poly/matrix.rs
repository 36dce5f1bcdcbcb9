use std::collections::HashMap;
use std::sync::Arc;

use super::mpoly::MPoly;
use crate::error::{Error, Result};

/// Square matrix of polynomials over one shared variable universe.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<MPoly>,
}

impl PolyMatrix {
    pub fn zeros(n: usize) -> Self {
        PolyMatrix {
            n,
            entries: vec![MPoly::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, MPoly::one());
        }
        m
    }

    /// Builds from row-major rows; every row must have `rows.len()` entries.
    pub fn from_rows(rows: Vec<Vec<MPoly>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("matrix must be square".into()));
        }
        Ok(PolyMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &MPoly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: MPoly) {
        self.entries[i * self.n + j] = p;
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.n {
            self.entries.swap(a * self.n + j, b * self.n + j);
        }
    }

    /// Variables occurring anywhere in the matrix, sorted.
    pub fn vars(&self) -> Arc<[String]> {
        let mut all: Vec<String> = self
            .entries
            .iter()
            .flat_map(|p| p.vars().iter().cloned())
            .collect();
        all.sort();
        all.dedup();
        Arc::from(all)
    }

    /// Copy with every entry moved onto the shared universe.
    fn unified(&self) -> PolyMatrix {
        let vars = self.vars();
        PolyMatrix {
            n: self.n,
            entries: self.entries.iter().map(|p| p.with_vars(&vars)).collect(),
        }
    }

    /// Entry-wise evaluation; missing variables are an error.
    pub fn eval(&self, point: &HashMap<String, f64>) -> Result<Vec<Vec<f64>>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).eval_f64(point)).collect())
            .collect()
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// Every intermediate entry after step `k` is a `(k+1) x (k+1)` minor, so the
/// division by the previous pivot is always exact. A zero pivot is replaced
/// by a row swap; a zero column means the determinant is zero.
pub fn det_fraction_free(m: &PolyMatrix) -> MPoly {
    let n = m.size();
    if n == 0 {
        return MPoly::one();
    }
    let mut a = m.unified();
    let vars = a.vars();
    let mut negate = false;
    let mut prev = MPoly::one().with_vars(&vars);
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                return MPoly::zero();
            };
            a.swap_rows(k, p);
            negate = !negate;
        }
        let pivot = a.get(k, k).clone();
        for i in k + 1..n {
            let lead = a.get(i, k).clone();
            for j in k + 1..n {
                let mut v = pivot.mul(a.get(i, j));
                if !lead.is_zero() && !a.get(k, j).is_zero() {
                    v = v.sub(&lead.mul(a.get(k, j)));
                }
                if !prev.is_one() {
                    v = v
                        .exact_div(&prev)
                        .expect("Bareiss quotient is a minor and divides exactly");
                }
                a.set(i, j, v);
            }
            a.set(i, k, MPoly::zero());
        }
        prev = pivot;
    }
    let det = a.get(n - 1, n - 1).clone();
    let det = if negate { det.neg() } else { det };
    det.trimmed()
}

/// Numeric determinant of the matrix evaluated at `point`, by LU with
/// partial pivoting.
///
/// Returns exactly `0.0` when a pivot falls below working precision relative
/// to the largest entry; this is not treated as an error.
pub fn det_numeric(m: &PolyMatrix, point: &HashMap<String, f64>) -> Result<f64> {
    let a = m.eval(point)?;
    Ok(det_lu(a))
}

/// LU determinant of a dense real matrix.
pub fn det_lu(mut a: Vec<Vec<f64>>) -> f64 {
    let n = a.len();
    let scale = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |acc, v| acc.max(v.abs()));
    if n == 0 {
        return 1.0;
    }
    if scale == 0.0 {
        return 0.0;
    }
    let tiny = f64::EPSILON * scale * n as f64;
    let mut det = 1.0;
    for k in 0..n {
        let (p, pv) = (k..n)
            .map(|i| (i, a[i][k].abs()))
            .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pv <= tiny {
            return 0.0;
        }
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let pivot = a[k][k];
        det *= pivot;
        for i in k + 1..n {
            let f = a[i][k] / pivot;
            if f == 0.0 {
                continue;
            }
            for j in k + 1..n {
                a[i][j] -= f * a[k][j];
            }
        }
    }
    det
}
