//! Dense exact matrices over rational functions.
//!
//! Sizes here are small (a weight space rarely has more than a few dozen
//! basis vectors), so the representation is a plain row-major `Vec`.
//! Elimination always picks the first usable pivot, never the "best" one:
//! determinism across runs matters more than coefficient growth at this
//! scale.

use crate::error::{Error, Result};
use crate::ratfun::RationalCoeff;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<RationalCoeff>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![RationalCoeff::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = RationalCoeff::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RationalCoeff>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        debug_assert!(rows.iter().all(|row| row.len() == c));
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(cols: Vec<Vec<RationalCoeff>>) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |col| col.len());
        let mut m = Self::zero(r, c);
        for (j, col) in cols.into_iter().enumerate() {
            debug_assert_eq!(col.len(), r);
            for (i, v) in col.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> &[RationalCoeff] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "matrix dimensions");
        let mut out = Mat::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = &out[(i, j)] + &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[RationalCoeff]) -> Vec<RationalCoeff> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimensions");
        (0..self.rows)
            .map(|i| {
                let mut acc = RationalCoeff::zero();
                for j in 0..self.cols {
                    let a = &self[(i, j)];
                    if !a.is_zero() && !v[j].is_zero() {
                        acc = &acc + &(a * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a = &*a + b;
        }
        out
    }

    pub fn sub(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a = &*a - b;
        }
        out
    }

    pub fn scale(&self, c: &RationalCoeff) -> Mat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = &*a * c;
        }
        out
    }

    /// Inverse by Gauss-Jordan elimination with first-nonzero pivoting.
    pub fn inverse(&self) -> Result<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[(r, col)].is_zero())
                .ok_or_else(|| Error::InvariantViolation("singular matrix".into()))?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a[(col, col)].clone();
            let pinv = p.inv()?;
            for j in 0..n {
                a[(col, j)] = &a[(col, j)] * &pinv;
                inv[(col, j)] = &inv[(col, j)] * &pinv;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let ac = &a[(col, j)] * &f;
                    a[(r, j)] = &a[(r, j)] - &ac;
                    let ic = &inv[(col, j)] * &f;
                    inv[(r, j)] = &inv[(r, j)] - &ic;
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(r1 * self.cols + j, r2 * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = RationalCoeff;
    fn index(&self, (i, j): (usize, usize)) -> &RationalCoeff {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut RationalCoeff {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPoly;

    fn rc(t: &str) -> RationalCoeff {
        RationalCoeff::parse(t).unwrap()
    }

    #[test]
    fn inverse_round_trip() {
        let m = Mat::from_rows(vec![
            vec![rc("v"), rc("1")],
            vec![rc("v^-1"), rc("v + 1")],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(2));
        assert_eq!(inv.mul(&m), Mat::identity(2));
    }

    #[test]
    fn singular_matrix_is_reported() {
        let m = Mat::from_rows(vec![
            vec![rc("v"), rc("v")],
            vec![rc("1"), rc("1")],
        ]);
        assert!(m.inverse().is_err());
    }

    #[test]
    fn mul_vec_matches_mul() {
        let m = Mat::from_rows(vec![
            vec![rc("v"), rc("0")],
            vec![rc("1 - v^-2"), rc("v^2")],
        ]);
        let v = vec![
            RationalCoeff::from_laurent(LaurentPoly::parse("v + 1").unwrap()),
            rc("v^-1"),
        ];
        let col = Mat::from_columns(vec![v.clone()]);
        let out = m.mul(&col);
        let out2 = m.mul_vec(&v);
        assert_eq!(out[(0, 0)], out2[0]);
        assert_eq!(out[(1, 0)], out2[1]);
    }
}
