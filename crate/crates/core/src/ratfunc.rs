//! The rational function field K = F_q(t) in canonical form: monic
//! denominator, coprime numerator and denominator, zero = 0/1. Equality is
//! componentwise, so canonical form is restored by every constructor.

use std::fmt;

use thiserror::Error;

use crate::field::{FieldElem, FieldRef};
use crate::poly::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RatFuncError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero base with negative exponent")]
    ZeroToNegativePower,
    #[error("operation requires a nonzero input")]
    ZeroInput,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self, RatFuncError> {
        if den.is_zero() {
            return Err(RatFuncError::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> Self {
        let spec = num.spec().clone();
        if num.is_zero() {
            return RatFunc {
                num,
                den: Poly::one(&spec),
            };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.divrem(&g).unwrap().0,
                den.divrem(&g).unwrap().0,
            )
        };
        let lead = den.leading_coeff().unwrap();
        if !lead.is_one() {
            let inv = lead.inverse().expect("leading coefficient is a unit");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        let spec = p.spec().clone();
        RatFunc {
            num: p,
            den: Poly::one(&spec),
        }
    }

    pub fn from_elem(c: FieldElem) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_int(spec: &FieldRef, n: i64) -> Self {
        Self::from_elem(FieldElem::from_int(spec, n))
    }

    pub fn zero(spec: &FieldRef) -> Self {
        Self::from_poly(Poly::zero(spec))
    }

    pub fn one(spec: &FieldRef) -> Self {
        Self::from_poly(Poly::one(spec))
    }

    /// The variable t.
    pub fn t(spec: &FieldRef) -> Self {
        Self::from_poly(Poly::t(spec))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn spec(&self) -> &FieldRef {
        self.num.spec()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Constant rational functions are exactly the elements of F_q.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<FieldElem> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        Self::reduced(num, self.den.mul(&other.den))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let num = self
            .num
            .mul(&other.den)
            .sub(&other.num.mul(&self.den));
        Self::reduced(num, self.den.mul(&other.den))
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::reduced(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        Self::reduced(self.num.scale(c), self.den.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self, RatFuncError> {
        if other.is_zero() {
            return Err(RatFuncError::DivisionByZero);
        }
        Ok(Self::reduced(
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        ))
    }

    pub fn inverse(&self) -> Result<Self, RatFuncError> {
        if self.is_zero() {
            return Err(RatFuncError::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    /// Exact integer power; pow(x, 0) = 1 for every x (including 0).
    pub fn pow(&self, e: i64) -> Result<Self, RatFuncError> {
        if e == 0 {
            return Ok(Self::one(self.spec()));
        }
        if self.is_zero() {
            if e < 0 {
                return Err(RatFuncError::ZeroToNegativePower);
            }
            return Ok(self.clone());
        }
        let mag = e.unsigned_abs();
        let powered = RatFunc {
            num: self.num.pow(mag),
            den: self.den.pow(mag),
        };
        // num/den coprime implies num^e/den^e coprime; only monicity of the
        // numerator's leading unit needs no fixing since den stays monic
        if e < 0 {
            powered.inverse()
        } else {
            Ok(powered)
        }
    }

    /// Whether this lies in K^p; both numerator and denominator must be
    /// p-th powers in F_q[t] (the canonical form makes this decidable
    /// monomial-by-monomial).
    pub fn is_pth_power(&self) -> bool {
        self.num.is_pth_power() && self.den.is_pth_power()
    }

    /// The unique y with y^p = self, if self is in K^p.
    pub fn pth_root(&self) -> Result<Option<Self>, RatFuncError> {
        if self.is_zero() {
            return Err(RatFuncError::ZeroInput);
        }
        match (self.num.pth_root(), self.den.pth_root()) {
            (Some(n), Some(d)) => Ok(Some(RatFunc { num: n, den: d })),
            _ => Ok(None),
        }
    }

    /// Frobenius x -> x^p.
    pub fn frobenius(&self) -> Self {
        self.pow(self.spec().p() as i64).expect("positive exponent")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num_txt = self.num.to_string();
        if self.den.is_one() {
            return write!(f, "{num_txt}");
        }
        let den_txt = self.den.to_string();
        let wrap = |s: &str| -> String {
            if s.contains(' ') || s.contains('*') || s.contains('/') {
                format!("({s})")
            } else {
                s.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&num_txt), wrap(&den_txt))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn f5() -> FieldRef {
        FieldSpec::prime(5).unwrap()
    }

    fn f2() -> FieldRef {
        FieldSpec::prime(2).unwrap()
    }

    #[test]
    fn add_with_common_denominator() {
        let f = f5();
        let t = RatFunc::t(&f);
        let one = RatFunc::one(&f);
        // 1/t + (t-1)/t = 1
        let a = one.div(&t).unwrap();
        let b = t.sub(&one).div(&t).unwrap();
        assert!(a.add(&b).is_one());
    }

    #[test]
    fn mul_by_inverse() {
        let f = f5();
        let t = RatFunc::t(&f);
        assert!(t.mul(&t.inverse().unwrap()).is_one());
    }

    #[test]
    fn char2_partial_fractions() {
        let f = f2();
        let t = RatFunc::t(&f);
        let t1 = t.add(&RatFunc::one(&f));
        let sum = t.inverse().unwrap().add(&t1.inverse().unwrap());
        // 1/t + 1/(t+1) = 1/(t^2 + t)
        let expect = RatFunc::new(
            Poly::one(&f),
            Poly::from_ints(&f, &[0, 1, 1]),
        )
        .unwrap();
        assert_eq!(sum, expect);
    }

    #[test]
    fn pow_examples() {
        let f = f5();
        let t = RatFunc::t(&f);
        assert_eq!(t.pow(-1).unwrap(), t.inverse().unwrap());
        assert!(t.pow(0).unwrap().is_one());
        assert!(RatFunc::zero(&f).pow(-1).is_err());

        let f2 = f2();
        let t1 = RatFunc::t(&f2).add(&RatFunc::one(&f2));
        assert_eq!(
            t1.pow(2).unwrap(),
            RatFunc::from_poly(Poly::from_ints(&f2, &[1, 0, 1]))
        );
    }

    #[test]
    fn pth_root_examples() {
        let f2 = f2();
        let t = RatFunc::t(&f2);
        assert_eq!(t.pow(2).unwrap().pth_root().unwrap(), Some(t.clone()));

        // (t^2+1)/t^2 -> (t+1)/t in char 2
        let x = RatFunc::new(
            Poly::from_ints(&f2, &[1, 0, 1]),
            Poly::from_ints(&f2, &[0, 0, 1]),
        )
        .unwrap();
        let expect = RatFunc::new(Poly::from_ints(&f2, &[1, 1]), Poly::t(&f2)).unwrap();
        assert_eq!(x.pth_root().unwrap(), Some(expect));

        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(RatFunc::t(&f3).pth_root().unwrap(), None);
        assert!(RatFunc::zero(&f3).pth_root().is_err());
    }

    #[test]
    fn canonical_equality() {
        let f = f5();
        // 2t/2 = t
        let two = FieldElem::from_int(&f, 2);
        let x = RatFunc::new(
            Poly::t(&f).scale(&two),
            Poly::constant(two.clone()),
        )
        .unwrap();
        assert_eq!(x, RatFunc::t(&f));
    }
}
