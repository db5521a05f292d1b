//! Dense square matrices over arbitrary-precision integers.
//!
//! Everything here is exact: determinants use fraction-free (Bareiss)
//! elimination and characteristic polynomials use Faddeev–LeVerrier with
//! exact integer division. Orders in this crate stay in the low hundreds,
//! so matrices are stored densely in row-major order.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Exact rational scalar (reduced, positive denominator).
pub type RatScalar = num_rational::BigRational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    order: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(order: usize) -> Self {
        IntMatrix { order, data: vec![BigInt::zero(); order * order] }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m.data[i * order + i] = BigInt::one();
        }
        m
    }

    /// `diag(0, .., 1, .., 0)` with the single one at `index`.
    pub fn unit_diagonal(order: usize, index: usize) -> Result<Self> {
        if index >= order {
            return Err(Error::IndexOutOfRange { index, order });
        }
        let mut m = Self::zeros(order);
        m.data[index * order + index] = BigInt::one();
        Ok(m)
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                data.push(f(i, j));
            }
        }
        IntMatrix { order, data }
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return Err(Error::NotSquare);
        }
        let data = rows.iter().flat_map(|r| r.iter().cloned().map(Into::into)).collect();
        Ok(IntMatrix { order, data })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<BigInt>]) -> Result<Self> {
        let order = columns.len();
        if columns.iter().any(|c| c.len() != order) {
            return Err(Error::NotSquare);
        }
        Ok(Self::from_fn(order, |i, j| columns[j][i].clone()))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.order + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.order + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.order..(i + 1) * self.order]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn trace(&self) -> BigInt {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.order, "vector length must match matrix order");
        (0..self.order)
            .map(|i| self.row(i).iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.check_same_order(other)?;
        let n = self.order;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self + c * other`, entrywise.
    pub fn add_scaled(&self, other: &IntMatrix, c: &BigInt) -> Result<IntMatrix> {
        self.check_same_order(other)?;
        let data =
            self.data.iter().zip(&other.data).map(|(a, b)| if b.is_zero() { a.clone() } else { a + c * b }).collect();
        Ok(IntMatrix { order: self.order, data })
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        IntMatrix { order: self.order, data: self.data.iter().map(|a| a * c).collect() }
    }

    /// Removes row `v` and column `v`, keeping the remaining order.
    pub fn delete_row_col(&self, v: usize) -> Result<IntMatrix> {
        if v >= self.order {
            return Err(Error::IndexOutOfRange { index: v, order: self.order });
        }
        let keep: Vec<usize> = (0..self.order).filter(|&i| i != v).collect();
        Ok(Self::from_fn(keep.len(), |i, j| self.get(keep[i], keep[j]).clone()))
    }

    /// Kronecker product with row-major block ordering:
    /// `(a ⊗ b)[i*q + k, j*q + l] = a[i, j] * b[k, l]` where `q = b.order()`.
    pub fn kron(&self, other: &IntMatrix) -> IntMatrix {
        let q = other.order;
        Self::from_fn(self.order * q, |r, c| {
            let a = self.get(r / q, c / q);
            if a.is_zero() {
                BigInt::zero()
            } else {
                a * other.get(r % q, c % q)
            }
        })
    }

    /// Evaluates `p(self)` as a matrix polynomial by Horner's rule.
    pub fn eval_poly(&self, p: &IntPoly) -> IntMatrix {
        let mut acc = Self::zeros(self.order);
        let id = Self::identity(self.order);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).expect("same order");
            acc = acc.add_scaled(&id, c).expect("same order");
        }
        acc
    }

    pub fn det(&self) -> BigInt {
        det_bareiss(self)
    }

    pub fn charpoly(&self) -> IntPoly {
        charpoly(self)
    }

    fn check_same_order(&self, other: &IntMatrix) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch { left: self.order, right: other.order });
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.order).map(|i| self.row(i))).finish()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.order {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Exact determinant by Bareiss fraction-free elimination.
///
/// Each step divides by the previous pivot, and that division is always
/// exact (Sylvester's identity). The empty matrix has determinant 1.
pub fn det_bareiss(m: &IntMatrix) -> BigInt {
    let n = m.order();
    if n == 0 {
        return BigInt::one();
    }
    let mut rows: Vec<Vec<BigInt>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut negate = false;
    let mut prev = BigInt::one();

    for k in 0..n - 1 {
        // smallest nonzero pivot keeps intermediate growth down
        let pivot = (k..n).filter(|&i| !rows[i][k].is_zero()).min_by_key(|&i| rows[i][k].bits());
        let Some(p) = pivot else {
            return BigInt::zero();
        };
        if p != k {
            rows.swap(p, k);
            negate = !negate;
        }
        let (top, bottom) = rows.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot_val = &pivot_row[k];
        for row in bottom.iter_mut() {
            let lead = std::mem::take(&mut row[k]);
            for j in k + 1..n {
                let mut v = &row[j] * pivot_val;
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    v -= &lead * &pivot_row[j];
                }
                if !prev.is_one() {
                    debug_assert!(v.is_multiple_of(&prev), "inexact Bareiss division");
                    v /= &prev;
                }
                row[j] = v;
            }
        }
        prev = rows[k][k].clone();
    }
    let d = rows[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Characteristic polynomial `det(xI - m)` by Faddeev–LeVerrier.
///
/// The recurrence divides by `k` at step `k`; over the integers that
/// division is always exact, and a remainder aborts with a panic since it
/// can only mean an arithmetic bug.
pub fn charpoly(m: &IntMatrix) -> IntPoly {
    let n = m.order();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    if n == 0 {
        return IntPoly::new(coeffs);
    }
    let id = IntMatrix::identity(n);
    // M_1 = I, c_{n-k} = -tr(A M_k) / k, M_{k+1} = A M_k + c_{n-k} I
    let mut mk = id.clone();
    for k in 1..=n {
        let amk = m.mul(&mk).expect("square");
        let tr = amk.trace();
        let (q, r) = tr.div_rem(&BigInt::from(k));
        assert!(r.is_zero(), "Faddeev-LeVerrier division by {k} was not exact");
        let c = -q;
        if k < n {
            mk = amk.add_scaled(&id, &c).expect("square");
        }
        coeffs[n - k] = c;
    }
    IntPoly::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn paw() -> IntMatrix {
        mat(&[&[0, 1, 1, 0], &[1, 0, 1, 0], &[1, 1, 0, 1], &[0, 0, 1, 0]])
    }

    fn cofactor_det(m: &IntMatrix) -> BigInt {
        let n = m.order();
        if n == 0 {
            return BigInt::one();
        }
        let mut total = BigInt::zero();
        for j in 0..n {
            let minor = IntMatrix::from_fn(n - 1, |r, c| m.get(r + 1, if c < j { c } else { c + 1 }).clone());
            let term = m.get(0, j) * cofactor_det(&minor);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    #[test]
    fn det_of_one_by_one() {
        assert_eq!(mat(&[&[5]]).det(), BigInt::from(5));
    }

    #[test]
    fn det_of_empty_is_one() {
        assert_eq!(IntMatrix::zeros(0).det(), BigInt::one());
    }

    #[test]
    fn det_of_worked_sylvester_matrix() {
        let s = mat(&[
            &[1, 0, -4, -2, 1, 0, 0],
            &[0, 1, 0, -4, -2, 1, 0],
            &[0, 0, 1, 0, -4, -2, 1],
            &[1, 0, -2, 0, 0, 0, 0],
            &[0, 1, 0, -2, 0, 0, 0],
            &[0, 0, 1, 0, -2, 0, 0],
            &[0, 0, 0, 1, 0, -2, 0],
        ]);
        assert_eq!(s.det(), BigInt::one());
    }

    #[test]
    fn det_of_paw_adjacency() {
        assert_eq!(paw().det(), BigInt::one());
    }

    #[test]
    fn det_needs_row_swaps() {
        let m = mat(&[&[0, 2, 1], &[3, 0, 0], &[0, 0, 4]]);
        assert_eq!(m.det(), cofactor_det(&m));
        assert_eq!(m.det(), BigInt::from(-24));
    }

    #[test]
    fn det_zero_column_short_circuits() {
        let m = mat(&[&[0, 1, 2], &[0, 3, 4], &[0, 5, 6]]);
        assert!(m.det().is_zero());
    }

    #[test]
    fn charpoly_examples() {
        assert_eq!(IntMatrix::zeros(1).charpoly(), IntPoly::from_i64s(&[0, 1]));
        assert_eq!(paw().charpoly(), IntPoly::from_i64s(&[1, -2, -4, 0, 1]));
        let p3 = paw().delete_row_col(0).unwrap();
        assert_eq!(p3.charpoly(), IntPoly::from_i64s(&[0, -2, 0, 1]));
        assert_eq!(IntMatrix::zeros(0).charpoly(), IntPoly::one());
    }

    #[test]
    fn kron_examples() {
        assert_eq!(IntMatrix::identity(2).kron(&IntMatrix::identity(3)), IntMatrix::identity(6));
        let swap = mat(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.kron(&IntMatrix::identity(1)), swap);
        let a = mat(&[&[1, 2], &[3, 4]]);
        let b = mat(&[&[0, 5], &[6, 7]]);
        let k = a.kron(&b);
        assert_eq!(k.get(1, 2), &BigInt::from(2 * 6));
        assert_eq!(k.get(1, 3), &BigInt::from(2 * 7));
        assert_eq!(k.get(3, 2), &BigInt::from(4 * 6));
    }

    #[test]
    fn delete_row_col_examples() {
        let p3 = paw().delete_row_col(0).unwrap();
        assert_eq!(p3, mat(&[&[0, 1, 0], &[1, 0, 1], &[0, 1, 0]]));
        assert!(p3.det().is_zero());
        assert_eq!(IntMatrix::identity(3).delete_row_col(0).unwrap(), IntMatrix::identity(2));
        let k2 = mat(&[&[0, 1], &[1, 0]]);
        for v in 0..2 {
            let d = k2.delete_row_col(v).unwrap();
            assert_eq!(d, IntMatrix::zeros(1));
            assert!(d.det().is_zero());
        }
        assert!(matches!(k2.delete_row_col(2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn add_scaled_examples() {
        let d1 = IntMatrix::unit_diagonal(4, 0).unwrap();
        assert_eq!(paw().add_scaled(&d1, &BigInt::zero()).unwrap(), paw());
        let b1 = paw().add_scaled(&d1, &BigInt::one()).unwrap();
        assert_eq!(b1.get(0, 0), &BigInt::one());
        assert!(matches!(paw().add_scaled(&IntMatrix::identity(3), &BigInt::one()), Err(Error::OrderMismatch { .. })));
    }

    #[test]
    fn bareiss_matches_cofactor_on_fixed_cases() {
        let m = mat(&[&[2, -1, 0, 3, 1], &[4, 0, -2, 1, 0], &[0, 5, 1, -1, 2], &[-3, 2, 2, 0, 1], &[1, 1, 1, 1, 1]]);
        assert_eq!(m.det(), cofactor_det(&m));
    }
}
