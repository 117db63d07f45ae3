//! Exact linear algebra over the parametric scalar field.
//!
//! Gaussian elimination in the fraction field; every pivot the solver
//! inverts is recorded, so callers can surface the genericity hypotheses
//! a result silently depends on.

use crate::scalars::{ParamRing, ParamScalar, ScalarError};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone)]
pub enum LinalgError {
    #[error("matrix is singular over the scalar field")]
    SingularMatrix,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<ParamScalar>,
    ring: Arc<ParamRing>,
}

/// Pivot scalars inverted during an elimination; non-constant entries are
/// the "required nonzero" assumptions of the computation.
#[derive(Debug, Clone, Default)]
pub struct PivotLog {
    pub pivots: Vec<ParamScalar>,
}

impl PivotLog {
    pub fn record(&mut self, s: &ParamScalar) {
        if s.as_rational().is_none() {
            self.pivots.push(s.clone());
        }
    }

    pub fn descriptions(&self) -> Vec<String> {
        self.pivots.iter().map(|p| format!("{} != 0", p)).collect()
    }
}

impl Matrix {
    pub fn zero(ring: &Arc<ParamRing>, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![ParamScalar::zero(ring); rows * cols],
            ring: ring.clone(),
        }
    }

    pub fn identity(ring: &Arc<ParamRing>, n: usize) -> Self {
        let mut m = Matrix::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, ParamScalar::one(ring));
        }
        m
    }

    pub fn from_rows(ring: &Arc<ParamRing>, rows: Vec<Vec<ParamScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c));
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
            ring: ring.clone(),
        }
    }

    pub fn ring(&self) -> &Arc<ParamRing> {
        &self.ring
    }

    pub fn get(&self, i: usize, j: usize) -> &ParamScalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ParamScalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zero(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = ParamScalar::zero(&self.ring);
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if i == j {
                    if !e.is_one() {
                        return false;
                    }
                } else if !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| ((i + 1)..self.cols).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_lower_triangular() && self.is_upper_triangular()
    }

    /// Inverse by Gauss-Jordan; pivots recorded. Errors when singular.
    pub fn inverse(&self, log: &mut PivotLog) -> Result<Matrix, LinalgError> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(&self.ring, n);
        for col in 0..n {
            let pivot_row = (col..n).find(|&r| !a.get(r, col).is_zero());
            let pr = pivot_row.ok_or(LinalgError::SingularMatrix)?;
            if pr != col {
                for j in 0..n {
                    let (x, y) = (a.get(col, j).clone(), a.get(pr, j).clone());
                    a.set(col, j, y);
                    a.set(pr, j, x);
                    let (x, y) = (inv.get(col, j).clone(), inv.get(pr, j).clone());
                    inv.set(col, j, y);
                    inv.set(pr, j, x);
                }
            }
            let p = a.get(col, col).clone();
            log.record(&p);
            let pinv = p.inv().map_err(|_| LinalgError::SingularMatrix)?;
            for j in 0..n {
                a.set(col, j, a.get(col, j).mul(&pinv));
                inv.set(col, j, inv.get(col, j).mul(&pinv));
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for j in 0..n {
                    let na = a.get(r, j).sub(&f.mul(a.get(col, j)));
                    a.set(r, j, na);
                    let ni = inv.get(r, j).sub(&f.mul(inv.get(col, j)));
                    inv.set(r, j, ni);
                }
            }
        }
        Ok(inv)
    }

    /// Basis of the null space {x : A x = 0}; pivots recorded.
    pub fn null_space(&self, log: &mut PivotLog) -> Vec<Vec<ParamScalar>> {
        let (m, n) = (self.rows, self.cols);
        let mut a = self.clone();
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut row = 0usize;
        for col in 0..n {
            let pr = (row..m).find(|&r| !a.get(r, col).is_zero());
            let pr = match pr {
                Some(r) => r,
                None => continue,
            };
            if pr != row {
                for j in 0..n {
                    let (x, y) = (a.get(row, j).clone(), a.get(pr, j).clone());
                    a.set(row, j, y);
                    a.set(pr, j, x);
                }
            }
            let p = a.get(row, col).clone();
            log.record(&p);
            let pinv = p.inv().expect("pivot chosen nonzero");
            for j in 0..n {
                a.set(row, j, a.get(row, j).mul(&pinv));
            }
            for r in 0..m {
                if r == row || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for j in 0..n {
                    let v = a.get(r, j).sub(&f.mul(a.get(row, j)));
                    a.set(r, j, v);
                }
            }
            pivot_cols.push(col);
            row += 1;
            if row == m {
                break;
            }
        }
        let free_cols: Vec<usize> =
            (0..n).filter(|c| !pivot_cols.contains(c)).collect();
        let mut basis = Vec::new();
        for &fc in &free_cols {
            let mut v = vec![ParamScalar::zero(&self.ring); n];
            v[fc] = ParamScalar::one(&self.ring);
            for (ri, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = a.get(ri, fc).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of A x = b (free variables set to zero), or None when
    /// inconsistent.
    pub fn solve(
        &self,
        b: &[ParamScalar],
        log: &mut PivotLog,
    ) -> Option<Vec<ParamScalar>> {
        assert_eq!(b.len(), self.rows);
        let (m, n) = (self.rows, self.cols);
        let mut a = self.clone();
        let mut rhs = b.to_vec();
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut row = 0usize;
        for col in 0..n {
            let pr = (row..m).find(|&r| !a.get(r, col).is_zero());
            let pr = match pr {
                Some(r) => r,
                None => continue,
            };
            if pr != row {
                for j in 0..n {
                    let (x, y) = (a.get(row, j).clone(), a.get(pr, j).clone());
                    a.set(row, j, y);
                    a.set(pr, j, x);
                }
                rhs.swap(row, pr);
            }
            let p = a.get(row, col).clone();
            log.record(&p);
            let pinv = p.inv().expect("pivot chosen nonzero");
            for j in 0..n {
                a.set(row, j, a.get(row, j).mul(&pinv));
            }
            rhs[row] = rhs[row].mul(&pinv);
            for r in 0..m {
                if r == row || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for j in 0..n {
                    let v = a.get(r, j).sub(&f.mul(a.get(row, j)));
                    a.set(r, j, v);
                }
                rhs[r] = rhs[r].sub(&f.mul(&rhs[row]));
            }
            pivot_cols.push(col);
            row += 1;
            if row == m {
                break;
            }
        }
        // consistency: zero rows must have zero rhs
        for r in row..m {
            if !rhs[r].is_zero() {
                return None;
            }
        }
        let mut x = vec![ParamScalar::zero(&self.ring); n];
        for (ri, &pc) in pivot_cols.iter().enumerate() {
            x[pc] = rhs[ri].clone();
        }
        Some(x)
    }

    /// Determinant via elimination (mainly for degree-one hdet values).
    pub fn determinant(&self) -> ParamScalar {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut det = ParamScalar::one(&self.ring);
        for col in 0..n {
            let pr = ((col)..n).find(|&r| !a.get(r, col).is_zero());
            let pr = match pr {
                Some(r) => r,
                None => return ParamScalar::zero(&self.ring),
            };
            if pr != col {
                for j in 0..n {
                    let (x, y) = (a.get(col, j).clone(), a.get(pr, j).clone());
                    a.set(col, j, y);
                    a.set(pr, j, x);
                }
                det = det.neg();
            }
            let p = a.get(col, col).clone();
            det = det.mul(&p);
            let pinv = p.inv().expect("nonzero pivot");
            for r in (col + 1)..n {
                if a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).mul(&pinv);
                for j in col..n {
                    let v = a.get(r, j).sub(&f.mul(a.get(col, j)));
                    a.set(r, j, v);
                }
            }
        }
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Arc<ParamRing> {
        ParamRing::new(&["a", "b"])
    }

    #[test]
    fn inverse_of_unipotent() {
        let r = ring();
        let a = ParamScalar::param(&r, "a").unwrap();
        let mut m = Matrix::identity(&r, 2);
        m.set(1, 0, a.clone());
        let mut log = PivotLog::default();
        let inv = m.inverse(&mut log).unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.get(1, 0).eq_checked(&a.neg()).unwrap());
    }

    #[test]
    fn singular_detected() {
        let r = ring();
        let mut m = Matrix::zero(&r, 2, 2);
        m.set(0, 0, ParamScalar::one(&r));
        m.set(1, 0, ParamScalar::one(&r));
        let mut log = PivotLog::default();
        assert!(matches!(m.inverse(&mut log), Err(LinalgError::SingularMatrix)));
    }

    #[test]
    fn null_space_of_rank_one() {
        // [a, a] has kernel spanned by (1, -1)
        let r = ring();
        let a = ParamScalar::param(&r, "a").unwrap();
        let m = Matrix::from_rows(&r, vec![vec![a.clone(), a.clone()]]);
        let mut log = PivotLog::default();
        let ns = m.null_space(&mut log);
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        assert!(v[0].add(&v[1]).is_zero());
        // the pivot a was inverted and recorded
        assert_eq!(log.pivots.len(), 1);
    }

    #[test]
    fn solve_inhomogeneous() {
        let r = ring();
        let a = ParamScalar::param(&r, "a").unwrap();
        let one = ParamScalar::one(&r);
        // x + y = a, y = 1  =>  x = a - 1
        let m = Matrix::from_rows(
            &r,
            vec![
                vec![one.clone(), one.clone()],
                vec![ParamScalar::zero(&r), one.clone()],
            ],
        );
        let mut log = PivotLog::default();
        let x = m.solve(&[a.clone(), one.clone()], &mut log).unwrap();
        assert!(x[0].eq_checked(&a.sub(&one)).unwrap());
        assert!(x[1].is_one());
        // inconsistent system
        let m2 = Matrix::from_rows(&r, vec![vec![one.clone()], vec![one.clone()]]);
        assert!(m2.solve(&[one.clone(), a], &mut log).is_none());
    }

    #[test]
    fn determinant_triangular() {
        let r = ring();
        let a = ParamScalar::param(&r, "a").unwrap();
        let b = ParamScalar::param(&r, "b").unwrap();
        let mut m = Matrix::identity(&r, 3);
        m.set(0, 0, a.clone());
        m.set(1, 1, b.clone());
        m.set(2, 0, b.clone());
        assert!(m.determinant().eq_checked(&a.mul(&b)).unwrap());
    }
}
