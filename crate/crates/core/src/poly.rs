//! Univariate polynomials over the integers, Sylvester resultants and exact
//! interpolation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactlinalg::IntMatrix;

/// Integer polynomial; `coeffs[i]` is the coefficient of `x^i`.
///
/// Always normalized: the last stored coefficient is nonzero, and the zero
/// polynomial has no coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(k: usize, c: BigInt) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn scalar_mul(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Horner evaluation at an integer.
    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_i64(&self, t: i64) -> BigInt {
        self.eval(&BigInt::from(t))
    }

    /// Renders in the usual notation with the given variable name,
    /// highest degree first: `x^4 - 4x^2 - 2x + 1`.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            if i == 0 || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            match i {
                0 => {}
                1 => out.push_str(var),
                _ => {
                    out.push_str(var);
                    out.push('^');
                    out.push_str(&i.to_string());
                }
            }
        }
        out
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Polynomial with exact rational coefficients, used for `A_α` quantities.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    pub fn display_with(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c}){var}"),
                _ => format!("({c}){var}^{i}"),
            })
            .collect();
        terms.join(" + ")
    }
}

/// The `(deg f + deg g)`-square Sylvester matrix of `f` and `g`.
///
/// The first `deg g` rows hold shifted coefficients of `f` (highest degree
/// first), the remaining `deg f` rows shifted coefficients of `g`. Zero
/// polynomials are treated as degree 0 here; [`sylvester_resultant`]
/// handles them before building anything.
pub fn sylvester_matrix(f: &IntPoly, g: &IntPoly) -> IntMatrix {
    let df = f.degree().unwrap_or(0);
    let dg = g.degree().unwrap_or(0);
    let size = df + dg;
    let mut s = IntMatrix::zeros(size);
    for r in 0..dg {
        for (k, c) in f.coeffs().iter().rev().enumerate() {
            s.set(r, r + k, c.clone());
        }
    }
    for r in 0..df {
        for (k, c) in g.coeffs().iter().rev().enumerate() {
            s.set(dg + r, r + k, c.clone());
        }
    }
    s
}

/// `Res(f, g)` as the determinant of the Sylvester matrix.
///
/// Degenerate conventions: a nonzero constant `g = b` gives `b^{deg f}`
/// (and symmetrically for `f`); a zero polynomial against anything nonzero
/// gives 0; two zero polynomials are an error.
pub fn sylvester_resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    match (f.is_zero(), g.is_zero()) {
        (true, true) => return Err(Error::UndefinedResultant),
        (true, false) | (false, true) => return Ok(BigInt::zero()),
        _ => {}
    }
    Ok(sylvester_matrix(f, g).det())
}

/// The unique polynomial of degree `<= degree_bound` through `points`.
///
/// Uses Newton divided differences over the rationals, then demands that
/// every coefficient be an integer. All supplied points are used; if they
/// determine a polynomial above the bound that is reported as an error.
pub fn interpolate_exact(points: &[(BigInt, BigInt)], degree_bound: usize) -> Result<IntPoly> {
    if points.len() < degree_bound + 1 {
        return Err(Error::TooFewPoints { needed: degree_bound + 1, got: points.len() });
    }
    for (i, (ti, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(tj, _)| tj == ti) {
            return Err(Error::DuplicateNode(ti.to_string()));
        }
    }
    let xs: Vec<BigRational> = points.iter().map(|(t, _)| BigRational::from(t.clone())).collect();
    let mut dd: Vec<BigRational> = points.iter().map(|(_, v)| BigRational::from(v.clone())).collect();
    let n = points.len();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // expand the Newton form from the innermost term outwards
    let mut acc: Vec<BigRational> = vec![dd[n - 1].clone()];
    for i in (0..n - 1).rev() {
        // acc = acc * (x - xs[i]) + dd[i]
        let mut next = vec![BigRational::zero(); acc.len() + 1];
        for (k, c) in acc.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * &xs[i];
        }
        next[0] += &dd[i];
        acc = next;
    }
    let mut coeffs = Vec::with_capacity(acc.len());
    for (index, c) in acc.into_iter().enumerate() {
        if !c.is_integer() {
            return Err(Error::NonIntegerCoefficient { index, value: c.to_string() });
        }
        coeffs.push(c.to_integer());
    }
    let p = IntPoly::new(coeffs);
    match p.degree() {
        Some(d) if d > degree_bound => Err(Error::DegreeBoundExceeded { degree: d, bound: degree_bound }),
        _ => Ok(p),
    }
}

/// Returns `k` when `p = ±x^k`.
pub fn is_pm_monomial(p: &IntPoly) -> Option<u32> {
    let k = p.degree()?;
    let c = &p.coeffs()[k];
    if !c.abs().is_one() || p.coeffs()[..k].iter().any(|c| !c.is_zero()) {
        return None;
    }
    u32::try_from(k).ok()
}
