//! Integer matrices and the Smith normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::mat::Mat;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols);
        IntMat { rows, cols, data }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        IntMat::from_vec(rows, cols, entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Integer view of a [`Mat`]; `NonIntegerInput` if any entry is not an integer.
    pub fn from_mat(m: &Mat) -> Result<Self> {
        let data = m.entries().iter().map(|x| x.to_bigint().ok_or(Error::NonIntegerInput)).collect::<Result<_>>()?;
        Ok(IntMat { rows: m.rows(), cols: m.cols(), data })
    }

    pub fn to_mat(&self) -> Mat {
        Mat::from_vec(self.rows, self.cols, self.data.iter().cloned().map(Scalar::from_bigint).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    fn at(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn mul(&self, rhs: &IntMat) -> IntMat {
        assert_eq!(self.cols, rhs.rows);
        let mut out = IntMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a * rhs.get(k, j);
                    *out.at(i, j) += t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| (0..self.cols).map(|k| self.get(i, k) * &v[k]).sum()).collect()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for k in 0..self.rows {
            self.data.swap(k * self.cols + i, k * self.cols + j);
        }
    }

    /// row[dst] += f · row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for k in 0..self.cols {
            let t = f * self.get(src, k);
            *self.at(dst, k) += t;
        }
    }

    /// col[dst] += f · col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for k in 0..self.rows {
            let t = f * self.get(k, src);
            *self.at(k, dst) += t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for k in 0..self.cols {
            let v = -self.get(i, k).clone();
            *self.at(i, k) = v;
        }
    }

    /// Exact determinant by cofactor-free Bareiss elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !a.get(r, k).is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    *a.at(i, j) = v;
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` in Smith normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMat,
    pub d: IntMat,
    pub v: IntMat,
}

impl SmithForm {
    /// Nonzero diagonal entries of `D`, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let r = self.d.rows.min(self.d.cols);
        (0..r).map(|i| self.d.get(i, i).clone()).take_while(|x| !x.is_zero()).collect()
    }
}

pub fn smith_normal_form_int(m: &IntMat) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = a.get(i, j);
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SmithForm { u, d: a, v };
            };
            if pi != t {
                a.swap_rows(pi, t);
                u.swap_rows(pi, t);
            }
            if pj != t {
                a.swap_cols(pj, t);
                v.swap_cols(pj, t);
            }
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a.get(i, t).div_floor(a.get(t, t));
                if !q.is_zero() {
                    let f = -q;
                    a.add_row(i, t, &f);
                    u.add_row(i, t, &f);
                }
                dirty |= !a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let q = a.get(t, j).div_floor(a.get(t, t));
                if !q.is_zero() {
                    let f = -q;
                    a.add_col(j, t, &f);
                    v.add_col(j, t, &f);
                }
                dirty |= !a.get(t, j).is_zero();
            }
            if dirty {
                continue;
            }
            let p = a.get(t, t).clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, d: a, v }
}

/// Smith normal form of an integer-valued [`Mat`], returned as `(U, D, V)`.
pub fn smith_normal_form(m: &Mat) -> Result<(Mat, Mat, Mat)> {
    let s = smith_normal_form_int(&IntMat::from_mat(m)?);
    Ok((s.u.to_mat(), s.d.to_mat(), s.v.to_mat()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMat) -> SmithForm {
        let s = smith_normal_form_int(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert!(s.u.det().abs().is_one());
        assert!(s.v.det().abs().is_one());
        for i in 0..s.d.rows {
            for j in 0..s.d.cols {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn diag_2_3() {
        let s = check(&IntMat::from_i64(2, 2, &[2, 0, 0, 3]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn two_by_two_with_gcd_two() {
        let s = check(&IntMat::from_i64(2, 2, &[2, 4, 6, 8]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&IntMat::identity(2));
        assert_eq!(s.u, IntMat::identity(2));
        assert_eq!(s.d, IntMat::identity(2));
        assert_eq!(s.v, IntMat::identity(2));
    }

    #[test]
    fn rectangular_and_zero_rows() {
        check(&IntMat::from_i64(3, 2, &[0, 0, 4, 6, 0, 0]));
        check(&IntMat::from_i64(2, 4, &[3, 5, 7, 0, 0, 9, 12, 15]));
        check(&IntMat::zeros(2, 3));
    }

    #[test]
    fn non_integer_input_rejected() {
        let m = Mat::from_vec(1, 1, vec![Scalar::ratio(1, 2)]);
        assert_eq!(smith_normal_form(&m).unwrap_err(), Error::NonIntegerInput);
    }

    #[test]
    fn bareiss_determinant() {
        let m = IntMat::from_i64(3, 3, &[2, -1, 0, -1, 2, -1, 0, -1, 2]);
        assert_eq!(m.det(), BigInt::from(4));
        let p = IntMat::from_i64(3, 3, &[0, 1, 0, 1, 0, 0, 0, 0, 1]);
        assert_eq!(p.det(), BigInt::from(-1));
    }
}
