//! The binary forms W_N(X, Y) = sum_m binom(2N-m, N-m) binom(N+m, m)
//! X^(N-m) (-Y)^m over exact big integers, and their three structural
//! identities: antisymmetry under swapping X and Y, the syzygy
//! X^(2N+1) W_N(Y, Z) + Y^(2N+1) W_N(Z, X) + Z^(2N+1) W_N(X, Y) = 0 with
//! Z = -X - Y, and the determinant identity producing the nonzero integer
//! constant c_N. Everything here is homogeneous, so forms are stored as
//! dense coefficient vectors indexed by the Y-exponent.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WnError {
    #[error("the window N < p/3 - 2 is empty for p = {p}")]
    EmptyWindow { p: u64 },
    #[error("p must be an odd prime, got {0}")]
    NotOddPrime(u64),
}

/// A homogeneous polynomial in Z[X, Y]: coeffs[i] multiplies X^(d-i) Y^i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm {
    coeffs: Vec<BigInt>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty());
        BinaryForm { coeffs }
    }

    pub fn constant(c: BigInt) -> Self {
        BinaryForm { coeffs: vec![c] }
    }

    pub fn x() -> Self {
        BinaryForm {
            coeffs: vec![BigInt::one(), BigInt::zero()],
        }
    }

    pub fn y() -> Self {
        BinaryForm {
            coeffs: vec![BigInt::zero(), BigInt::one()],
        }
    }

    /// Z = -X - Y.
    pub fn z() -> Self {
        BinaryForm {
            coeffs: vec![-BigInt::one(), -BigInt::one()],
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "forms must share a degree");
        BinaryForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "forms must share a degree");
        BinaryForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        BinaryForm {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![BigInt::zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        BinaryForm { coeffs: out }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = BinaryForm::constant(BigInt::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let d = self.degree();
        let mut total = BigInt::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            total += c * x.pow((d - i) as u32) * y.pow(i as u32);
        }
        total
    }

    /// If self == c * other for a constant c, returns c; the exactness of
    /// the coefficientwise division is what is being asserted.
    pub fn constant_ratio(&self, other: &Self) -> Option<BigInt> {
        if self.degree() != other.degree() {
            return None;
        }
        let pivot = other.coeffs.iter().position(|c| !c.is_zero())?;
        let (q, r) = num_integer::div_rem(
            self.coeffs[pivot].clone(),
            other.coeffs[pivot].clone(),
        );
        if !r.is_zero() {
            return None;
        }
        for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
            if *a != b * &q {
                return None;
            }
        }
        Some(q)
    }
}

/// W_N with its exact coefficient vector: coefficient of X^(N-m) Y^m is
/// binom(2N-m, N-m) binom(N+m, m) (-1)^m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WnForm {
    n: usize,
    coeffs: Vec<BigInt>,
}

impl WnForm {
    /// Direct construction from binomial products.
    pub fn build(n: usize) -> Self {
        let coeffs = (0..=n)
            .map(|m| {
                let b1 = binomial(2 * n - m, n - m);
                let b2 = binomial(n + m, m);
                let sign = if m % 2 == 0 { 1 } else { -1 };
                BigInt::from(b1) * BigInt::from(b2) * BigInt::from(sign)
            })
            .collect();
        WnForm { n, coeffs }
    }

    /// Independent construction reading the binomials off Pascal's
    /// triangle; must agree with [`WnForm::build`].
    pub fn build_pascal(n: usize) -> Self {
        let rows = pascal_rows(2 * n);
        let coeffs = (0..=n)
            .map(|m| {
                let b1 = rows[2 * n - m][n - m].clone();
                let b2 = rows[n + m][m].clone();
                let sign = if m % 2 == 0 { 1 } else { -1 };
                BigInt::from(b1) * BigInt::from(b2) * BigInt::from(sign)
            })
            .collect();
        WnForm { n, coeffs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn as_form(&self) -> BinaryForm {
        BinaryForm::new(self.coeffs.clone())
    }

    /// W_N evaluated at two linear (or general) forms.
    pub fn at_forms(&self, a: &BinaryForm, b: &BinaryForm) -> BinaryForm {
        assert_eq!(a.degree(), b.degree());
        // powers a^(n-m) b^m, built incrementally
        let mut a_pows = vec![BinaryForm::constant(BigInt::one())];
        let mut b_pows = vec![BinaryForm::constant(BigInt::one())];
        for i in 1..=self.n {
            a_pows.push(a_pows[i - 1].mul(a));
            b_pows.push(b_pows[i - 1].mul(b));
        }
        let d = self.n * a.degree();
        let mut acc = BinaryForm::new(vec![BigInt::zero(); d + 1]);
        for (m, c) in self.coeffs.iter().enumerate() {
            let term = a_pows[self.n - m].mul(&b_pows[m]);
            let scaled = BinaryForm {
                coeffs: term.coeffs.iter().map(|t| t * c).collect(),
            };
            acc = acc.add(&scaled);
        }
        acc
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.as_form().eval(x, y)
    }
}

fn pascal_rows(max: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
    for i in 1..=max {
        let prev = &rows[i - 1];
        let mut row = vec![BigUint::one()];
        for j in 1..i {
            row.push(&prev[j - 1] + &prev[j]);
        }
        row.push(BigUint::one());
        rows.push(row);
    }
    rows
}

/// Exact binomial coefficient via the multiplicative formula.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Lemma "part 1": W_N(Y, X) = (-1)^N W_N(X, Y), i.e. the coefficient
/// vector reversed equals (-1)^N times itself.
pub fn antisymmetry_check(n: usize) -> bool {
    assert!(n >= 1);
    let w = WnForm::build(n);
    let mut reversed: Vec<BigInt> = w.coeffs.iter().rev().cloned().collect();
    if n % 2 == 1 {
        for c in reversed.iter_mut() {
            *c = -&*c;
        }
    }
    reversed == w.coeffs
}

/// Lemma "part 2": the three-term syzygy vanishes identically in Z[X, Y]
/// after substituting Z = -X - Y.
pub fn syzygy_check(n: usize) -> bool {
    assert!(n >= 1);
    syzygy_sum(n).is_zero()
}

fn syzygy_sum(n: usize) -> BinaryForm {
    let w = WnForm::build(n);
    let (x, y, z) = (BinaryForm::x(), BinaryForm::y(), BinaryForm::z());
    let e = 2 * n + 1;
    let t1 = x.pow(e).mul(&w.at_forms(&y, &z));
    let t2 = y.pow(e).mul(&w.at_forms(&z, &x));
    let t3 = z.pow(e).mul(&w.at_forms(&x, &y));
    t1.add(&t2).add(&t3)
}

/// The determinant side of the c_N identity, expanded in Z[X, Y].
pub fn cn_determinant(n: usize) -> BinaryForm {
    let wn = WnForm::build(n);
    let wn1 = WnForm::build(n + 1);
    let (x, y, z) = (BinaryForm::x(), BinaryForm::y(), BinaryForm::z());
    let a11 = z.pow(2 * n + 1).mul(&wn.at_forms(&x, &y));
    let a12 = y.pow(2 * n + 1).mul(&wn.at_forms(&z, &x));
    let a21 = z.pow(2 * n + 3).mul(&wn1.at_forms(&x, &y));
    let a22 = y.pow(2 * n + 3).mul(&wn1.at_forms(&z, &x));
    a11.mul(&a22).sub(&a12.mul(&a21))
}

/// The divisor (XYZ)^(2N+1) (X^2 + XY + Y^2) of the determinant identity.
pub fn cn_divisor(n: usize) -> BinaryForm {
    let (x, y, z) = (BinaryForm::x(), BinaryForm::y(), BinaryForm::z());
    let quad = BinaryForm::new(vec![BigInt::one(), BigInt::one(), BigInt::one()]);
    x.mul(&y).mul(&z).pow(2 * n + 1).mul(&quad)
}

/// Computes c_N: expands the determinant, divides exactly by
/// (XYZ)^(2N+1)(X^2+XY+Y^2), and asserts the quotient is a nonzero
/// constant. A failure here falsifies the implementation, not the
/// identity.
pub fn cn_compute(n: usize) -> BigInt {
    assert!(n >= 1);
    let det = cn_determinant(n);
    let div = cn_divisor(n);
    let c = det
        .constant_ratio(&div)
        .expect("determinant divides exactly by (XYZ)^(2N+1)(X^2+XY+Y^2)");
    assert!(!c.is_zero(), "c_N must be nonzero");
    c
}

/// W_N(2, -1), checked against the closed form 4^N binom(3N/2, N)
/// evaluated in exact rational arithmetic (generalized binomial for odd
/// N). Asserts equality and integrality before returning.
pub fn wn_special_value(n: usize) -> BigInt {
    let direct = WnForm::build(n).eval(&BigInt::from(2), &BigInt::from(-1));
    // 4^N * prod_{i=0}^{N-1} (3N/2 - i) / N!
    let three_n_half = BigRational::new(BigInt::from(3 * n as i64), BigInt::from(2));
    let mut prod = BigRational::one();
    for i in 0..n {
        prod *= &three_n_half - BigRational::from(BigInt::from(i as i64));
        prod /= BigRational::from(BigInt::from((i + 1) as i64));
    }
    let closed = BigRational::from(BigInt::from(4).pow(n as u32)) * prod;
    assert!(closed.is_integer(), "4^N binom(3N/2, N) must be an integer");
    assert_eq!(
        direct,
        closed.to_integer(),
        "defining sum disagrees with the closed form at N = {n}"
    );
    direct
}

/// One row of the nonvanishing window report.
#[derive(Debug, Clone, Serialize)]
pub struct WindowRow {
    pub n: usize,
    pub cn_mod_p: u64,
    pub nonzero: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct WindowReport {
    pub p: u64,
    pub rows: Vec<WindowRow>,
    pub all_nonzero: bool,
}

/// Largest N with N < p/3 - 2, or None when the window is empty. For a
/// prime p != 3 the strict bound 3N < p - 6 is never attained with
/// equality, so the floor of (p - 7)/3 is exact.
pub fn window_max_n(p: u64) -> Option<usize> {
    if p < 10 {
        return None;
    }
    Some(((p - 7) / 3) as usize)
}

/// For every positive N < p/3 - 2, checks c_N mod p != 0 and reports the
/// table. An empty window is a vacuous pass.
pub fn cn_mod_p_window(p: u64) -> Result<WindowReport, WnError> {
    if p == 2 || !crate::field::is_prime_u64(p) {
        return Err(WnError::NotOddPrime(p));
    }
    let mut rows = vec![];
    if let Some(max_n) = window_max_n(p) {
        for n in 1..=max_n {
            let c = cn_compute(n);
            let r = c.mod_floor(&BigInt::from(p));
            let r64 = u64::try_from(r.clone()).expect("residue fits u64");
            rows.push(WindowRow {
                n,
                cn_mod_p: r64,
                nonzero: !r.is_zero(),
            });
        }
    }
    let all_nonzero = rows.iter().all(|r| r.nonzero);
    Ok(WindowReport {
        p,
        rows,
        all_nonzero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_wn_coefficients() {
        assert_eq!(WnForm::build(0).coeffs(), &[BigInt::one()]);
        // W_1 = 2X - 2Y
        assert_eq!(
            WnForm::build(1).coeffs(),
            &[BigInt::from(2), BigInt::from(-2)]
        );
        // W_2 = 6X^2 - 9XY + 6Y^2
        assert_eq!(
            WnForm::build(2).coeffs(),
            &[BigInt::from(6), BigInt::from(-9), BigInt::from(6)]
        );
    }

    #[test]
    fn pascal_route_agrees() {
        for n in 0..=25 {
            assert_eq!(WnForm::build(n), WnForm::build_pascal(n));
        }
    }

    #[test]
    fn antisymmetry_small() {
        for n in 1..=12 {
            assert!(antisymmetry_check(n));
        }
    }

    #[test]
    fn syzygy_small() {
        for n in 1..=8 {
            assert!(syzygy_check(n));
        }
        // numeric spot check at (X, Y, Z) = (1, 1, -2) for N = 1
        let w = WnForm::build(1);
        let spot = w.eval(&BigInt::from(1), &BigInt::from(-2))
            + w.eval(&BigInt::from(-2), &BigInt::from(1))
            + BigInt::from(-2).pow(3) * w.eval(&BigInt::from(1), &BigInt::from(1));
        assert_eq!(spot, BigInt::zero());
    }

    #[test]
    fn c1_is_24_up_to_sign() {
        let c1 = cn_compute(1);
        assert_eq!(c1.abs(), BigInt::from(24));
    }

    #[test]
    fn determinant_spot_value_576() {
        // at (X, Y, Z) = (2, -1, -1): det = c_1 (XYZ)^3 (X^2+XY+Y^2) = 24 c_1
        let det = cn_determinant(1);
        let val = det.eval(&BigInt::from(2), &BigInt::from(-1));
        assert_eq!(val.abs(), BigInt::from(576));
        // matches 2 W_1(2,-1) W_2(2,-1) up to sign
        let w1 = wn_special_value(1);
        let w2 = wn_special_value(2);
        assert_eq!(val.abs(), (BigInt::from(2) * w1 * w2).abs());
    }

    #[test]
    fn special_values() {
        assert_eq!(wn_special_value(0), BigInt::one());
        assert_eq!(wn_special_value(1), BigInt::from(6));
        assert_eq!(wn_special_value(2), BigInt::from(48));
    }

    #[test]
    fn windows() {
        assert_eq!(window_max_n(7), None);
        assert_eq!(window_max_n(11), Some(1));
        assert_eq!(window_max_n(13), Some(2));
        assert_eq!(window_max_n(97), Some(30));
        let rep = cn_mod_p_window(11).unwrap();
        assert_eq!(rep.rows.len(), 1);
        assert!(rep.all_nonzero);
        assert_eq!(rep.rows[0].cn_mod_p % 11, 24 % 11);
        let empty = cn_mod_p_window(7).unwrap();
        assert!(empty.rows.is_empty() && empty.all_nonzero);
        assert!(cn_mod_p_window(2).is_err());
        assert!(cn_mod_p_window(9).is_err());
    }

    #[test]
    fn monotone_positive_special_values() {
        let mut prev = BigInt::zero();
        for n in 0..=20 {
            let v = wn_special_value(n);
            assert!(v > prev);
            prev = v;
        }
    }
}
