//! Dense univariate polynomials over F_q in canonical form (no trailing
//! zero coefficients; the zero polynomial is the empty vector).

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::field::{FieldElem, FieldRef};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("the zero polynomial has no factorization")]
    ZeroInput,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    spec: FieldRef,
    coeffs: Vec<FieldElem>,
}

impl Poly {
    /// Builds a polynomial, trimming trailing zeros into canonical form.
    pub fn new(spec: &FieldRef, mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            spec: spec.clone(),
            coeffs,
        }
    }

    pub fn zero(spec: &FieldRef) -> Self {
        Poly {
            spec: spec.clone(),
            coeffs: vec![],
        }
    }

    pub fn one(spec: &FieldRef) -> Self {
        Poly {
            spec: spec.clone(),
            coeffs: vec![FieldElem::one(spec)],
        }
    }

    pub fn constant(c: FieldElem) -> Self {
        let spec = c.spec().clone();
        Poly::new(&spec, vec![c])
    }

    /// The variable t.
    pub fn t(spec: &FieldRef) -> Self {
        Poly {
            spec: spec.clone(),
            coeffs: vec![FieldElem::zero(spec), FieldElem::one(spec)],
        }
    }

    /// Convenience constructor from signed integer coefficients, low-to-high.
    pub fn from_ints(spec: &FieldRef, coeffs: &[i64]) -> Self {
        Poly::new(
            spec,
            coeffs.iter().map(|&c| FieldElem::from_int(spec, c)).collect(),
        )
    }

    pub fn spec(&self) -> &FieldRef {
        &self.spec
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| FieldElem::zero(&self.spec))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, with None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree as i64 with deg 0 = -infinity replaced by -1 (handy in
    /// valuation arithmetic at the infinite place).
    pub fn degree_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading_coeff(&self) -> Option<&FieldElem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().map_or(false, |c| c.is_one())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i)));
        }
        Poly::new(&self.spec, out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).sub(&other.coeff(i)));
        }
        Poly::new(&self.spec, out)
    }

    pub fn neg(&self) -> Self {
        Poly {
            spec: self.spec.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.spec);
        }
        let mut out = vec![FieldElem::zero(&self.spec); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(&self.spec, out)
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        Poly::new(&self.spec, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let db = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return Ok((Poly::zero(&self.spec), self.clone()));
        }
        let lead_inv = divisor
            .leading_coeff()
            .unwrap()
            .inverse()
            .expect("leading coefficient is a unit");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![FieldElem::zero(&self.spec); rem.len() - db];
        for i in (0..quot.len()).rev() {
            let lead = rem[i + db].clone();
            if lead.is_zero() {
                continue;
            }
            let c = lead.mul(&lead_inv);
            quot[i] = c.clone();
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].sub(&c.mul(d));
            }
        }
        Ok((Poly::new(&self.spec, quot), Poly::new(&self.spec, rem)))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).expect("divisor is nonzero").1;
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn make_monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inverse().expect("leading coefficient is a unit")),
        }
    }

    pub fn eval(&self, x: &FieldElem) -> FieldElem {
        let mut acc = FieldElem::zero(&self.spec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut result = Poly::one(&self.spec);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero(&self.spec);
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            let m = FieldElem::from_int(&self.spec, i as i64);
            out.push(c.mul(&m));
        }
        Poly::new(&self.spec, out)
    }

    /// Modular exponentiation with a big-integer exponent.
    pub fn powmod(&self, e: &BigUint, modulus: &Self) -> Self {
        let mut result = Poly::one(&self.spec);
        if e.is_zero() {
            return result;
        }
        let mut base = self.divrem(modulus).expect("modulus nonzero").1;
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                result = result.mul(&base).divrem(modulus).unwrap().1;
            }
            if i + 1 < bits {
                base = base.mul(&base).divrem(modulus).unwrap().1;
            }
        }
        result
    }

    /// Whether f is a p-th power in F_q[t]: every monomial exponent is a
    /// multiple of p (F_q is perfect, so coefficients never obstruct).
    pub fn is_pth_power(&self) -> bool {
        let p = self.spec.p() as usize;
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || i % p == 0)
    }

    /// The unique h with h^p = self, when it exists.
    pub fn pth_root(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        if !self.is_pth_power() {
            return None;
        }
        let p = self.spec.p() as usize;
        let mut out = Vec::with_capacity(self.coeffs.len() / p + 1);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % p == 0 {
                out.push(c.pth_root());
            }
        }
        Some(Poly::new(&self.spec, out))
    }

    /// Irreducibility over F_q (Rabin's test with the q-power Frobenius).
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(n) => n,
        };
        if n == 1 {
            return true;
        }
        let f = self.make_monic();
        let q = BigUint::from(self.spec.order());
        let t = Poly::t(&self.spec);
        // frob[j] = t^(q^j) mod f
        let mut frob = t.clone();
        let mut frob_at = vec![t.clone()];
        for _ in 0..n {
            frob = frob.powmod(&q, &f);
            frob_at.push(frob.clone());
        }
        if frob_at[n] != t.divrem(&f).unwrap().1 {
            return false;
        }
        for l in crate::poly::prime_divisors(n) {
            let d = frob_at[n / l].sub(&t);
            if !f.gcd(&d).is_one() {
                return false;
            }
        }
        true
    }
}

pub(crate) fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = vec![];
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let k = self.spec.k();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff_txt = c.to_string();
            let needs_parens = k > 1 && (coeff_txt.contains('+') || coeff_txt.contains('*'));
            match i {
                0 => {
                    if needs_parens {
                        write!(f, "({coeff_txt})")?;
                    } else {
                        write!(f, "{coeff_txt}")?;
                    }
                }
                _ => {
                    if !c.is_one() {
                        if needs_parens {
                            write!(f, "({coeff_txt})*")?;
                        } else {
                            write!(f, "{coeff_txt}*")?;
                        }
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        Ok(())
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
    fn canonical_trimming() {
        let f = f5();
        let p = Poly::from_ints(&f, &[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(Poly::from_ints(&f, &[0, 0]).is_zero());
        assert_eq!(Poly::from_ints(&f, &[0]).degree(), None);
    }

    #[test]
    fn divrem_reconstructs() {
        let f = f5();
        let a = Poly::from_ints(&f, &[3, 1, 4, 1]);
        let b = Poly::from_ints(&f, &[2, 3]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree_i64() < b.degree_i64());
    }

    #[test]
    fn gcd_is_monic_common_divisor() {
        let f = f5();
        let d = Poly::from_ints(&f, &[1, 1]); // t + 1
        let a = d.mul(&Poly::from_ints(&f, &[2, 1]));
        let b = d.mul(&Poly::from_ints(&f, &[3, 1]));
        assert_eq!(a.gcd(&b), d);
    }

    #[test]
    fn char_p_pth_power_detection() {
        let f = f2();
        let t2_1 = Poly::from_ints(&f, &[1, 0, 1]); // t^2 + 1 = (t+1)^2
        assert!(t2_1.is_pth_power());
        assert_eq!(t2_1.pth_root().unwrap(), Poly::from_ints(&f, &[1, 1]));

        let f = f5();
        let t = Poly::t(&f);
        assert!(!t.is_pth_power());
        let t5 = t.pow(5);
        assert_eq!(t5.pth_root().unwrap(), t);
    }

    #[test]
    fn irreducibility() {
        let f = f5();
        assert!(Poly::t(&f).is_irreducible());
        assert!(Poly::from_ints(&f, &[2, 0, 1]).is_irreducible()); // t^2+2
        assert!(!Poly::from_ints(&f, &[1, 0, 1]).is_irreducible()); // (t+2)(t+3)
        assert!(!Poly::from_ints(&f, &[0, 0, 1]).is_irreducible()); // t^2

        let f2 = f2();
        assert!(Poly::from_ints(&f2, &[1, 1, 1]).is_irreducible());
        assert!(!Poly::from_ints(&f2, &[1, 0, 1]).is_irreducible());
    }

    #[test]
    fn powmod_matches_pow() {
        let f = f5();
        let t1 = Poly::from_ints(&f, &[1, 1]);
        let m = Poly::from_ints(&f, &[2, 0, 1]);
        let e = BigUint::from(13u32);
        let direct = t1.pow(13).divrem(&m).unwrap().1;
        assert_eq!(t1.powmod(&e, &m), direct);
    }
}
