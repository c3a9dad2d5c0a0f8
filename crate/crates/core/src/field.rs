//! Exact arithmetic in finite fields F_p and F_q = F_{p^k}.
//!
//! Elements are coefficient vectors over F_p reduced modulo a monic
//! irreducible polynomial of degree k (for k = 1 the reduction is the
//! identity mod p). The inverse Frobenius (p-th root) is computed as
//! a^(p^(k-1)), using that the Frobenius has order k on F_{p^k}.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Desk-scale limits: p < 2^20, q = p^k <= 2^16 for unit enumeration.
pub const MAX_PRIME: u64 = 1 << 20;
pub const MAX_ENUM_ORDER: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} exceeds the desk-scale limit 2^20")]
    PrimeTooLarge(u64),
    #[error("extension degree must be >= 1")]
    ZeroDegree,
    #[error("modulus must be monic of degree {expected}, got degree {got}")]
    BadModulusDegree { expected: usize, got: usize },
    #[error("modulus is not irreducible over F_{p}")]
    ReducibleModulus { p: u64 },
    #[error("division by zero in F_q")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    SpecMismatch,
    #[error("field order {0} exceeds the enumeration limit 2^16")]
    OrderTooLarge(u64),
}

/// A concrete finite field F_{p^k} = F_p[u]/(modulus).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u64,
    k: usize,
    /// Monic irreducible of degree k over F_p, coefficients low-to-high
    /// (length k + 1). For k = 1 this is the polynomial u itself.
    modulus: Vec<u64>,
}

pub type FieldRef = Arc<FieldSpec>;

impl FieldSpec {
    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<FieldRef, FieldError> {
        Self::extension(p, 1, &[0, 1])
    }

    /// The extension field F_p[u]/(modulus), modulus coefficients low-to-high.
    pub fn extension(p: u64, k: usize, modulus: &[u64]) -> Result<FieldRef, FieldError> {
        if p >= MAX_PRIME {
            return Err(FieldError::PrimeTooLarge(p));
        }
        if !is_prime_u64(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let modulus: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        let deg = modulus.len().saturating_sub(1);
        if deg != k || *modulus.last().unwrap_or(&0) != 1 {
            return Err(FieldError::BadModulusDegree {
                expected: k,
                got: deg,
            });
        }
        if !fp_is_irreducible(&modulus, p) {
            return Err(FieldError::ReducibleModulus { p });
        }
        Ok(Arc::new(FieldSpec { p, k, modulus }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Field order q = p^k.
    pub fn order(&self) -> u64 {
        self.p.pow(self.k as u32)
    }
}

/// An element of F_q in canonical form: exactly k residues mod p.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    spec: FieldRef,
    coeffs: Vec<u64>,
}

/// Dispatch tag for the checked arithmetic entry point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElem {
    pub fn new(spec: &FieldRef, coeffs: &[u64]) -> Self {
        let p = spec.p;
        let mut c: Vec<u64> = coeffs.iter().map(|x| x % p).collect();
        c.resize(spec.k, 0);
        FieldElem {
            spec: spec.clone(),
            coeffs: c,
        }
    }

    pub fn zero(spec: &FieldRef) -> Self {
        FieldElem {
            spec: spec.clone(),
            coeffs: vec![0; spec.k],
        }
    }

    pub fn one(spec: &FieldRef) -> Self {
        let mut coeffs = vec![0; spec.k];
        coeffs[0] = 1;
        FieldElem {
            spec: spec.clone(),
            coeffs,
        }
    }

    pub fn from_int(spec: &FieldRef, n: i64) -> Self {
        let p = spec.p as i64;
        let r = n.rem_euclid(p) as u64;
        let mut coeffs = vec![0; spec.k];
        coeffs[0] = r;
        FieldElem {
            spec: spec.clone(),
            coeffs,
        }
    }

    /// The extension generator u (requires k > 1).
    pub fn generator(spec: &FieldRef) -> Self {
        assert!(spec.k > 1, "prime fields have no extension generator");
        let mut coeffs = vec![0; spec.k];
        coeffs[1] = 1;
        FieldElem {
            spec: spec.clone(),
            coeffs,
        }
    }

    pub fn spec(&self) -> &FieldRef {
        &self.spec
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn same_spec(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.spec, &other.spec) || *self.spec == *other.spec
    }

    /// Checked arithmetic: the single entry point behind the CLI/config layer.
    pub fn arith(&self, other: &Self, op: FieldOp) -> Result<Self, FieldError> {
        if !self.same_spec(other) {
            return Err(FieldError::SpecMismatch);
        }
        match op {
            FieldOp::Add => Ok(self.add(other)),
            FieldOp::Sub => Ok(self.sub(other)),
            FieldOp::Mul => Ok(self.mul(other)),
            FieldOp::Div => self.div(other),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert!(self.same_spec(other));
        let p = self.spec.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a + b) % p)
            .collect();
        FieldElem {
            spec: self.spec.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert!(self.same_spec(other));
        let p = self.spec.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a + p - b) % p)
            .collect();
        FieldElem {
            spec: self.spec.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        let p = self.spec.p;
        let coeffs = self.coeffs.iter().map(|a| (p - a) % p).collect();
        FieldElem {
            spec: self.spec.clone(),
            coeffs,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert!(self.same_spec(other));
        let p = self.spec.p;
        if self.spec.k == 1 {
            // prime-field fast path, no polynomial reduction
            return FieldElem {
                spec: self.spec.clone(),
                coeffs: vec![(self.coeffs[0] * other.coeffs[0]) % p],
            };
        }
        let prod = fp_mul(&self.coeffs, &other.coeffs, p);
        let red = fp_rem(&prod, &self.spec.modulus, p);
        let mut coeffs = red;
        coeffs.resize(self.spec.k, 0);
        FieldElem {
            spec: self.spec.clone(),
            coeffs,
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self, FieldError> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn inverse(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let p = self.spec.p;
        if self.spec.k == 1 {
            let inv = fp_inv_scalar(self.coeffs[0], p);
            return Ok(FieldElem {
                spec: self.spec.clone(),
                coeffs: vec![inv],
            });
        }
        let mut inv = fp_mod_inverse(&self.coeffs, &self.spec.modulus, p)
            .expect("nonzero element of a field is invertible");
        inv.resize(self.spec.k, 0);
        Ok(FieldElem {
            spec: self.spec.clone(),
            coeffs: inv,
        })
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut result = FieldElem::one(&self.spec);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    /// Frobenius x -> x^p.
    pub fn frobenius(&self) -> Self {
        self.pow(self.spec.p)
    }

    /// Inverse Frobenius: the unique y with y^p = self, computed as
    /// self^(p^(k-1)).
    pub fn pth_root(&self) -> Self {
        let mut r = self.clone();
        for _ in 1..self.spec.k {
            r = r.frobenius();
        }
        r
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.spec.k == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => {
                    if c != 1 {
                        write!(f, "{c}*")?;
                    }
                    write!(f, "u")?;
                }
                _ => {
                    if c != 1 {
                        write!(f, "{c}*")?;
                    }
                    write!(f, "u^{i}")?;
                }
            }
        }
        Ok(())
    }
}

/// All q - 1 nonzero elements in a fixed order (base-p odometer on the
/// coefficient vector).
pub fn unit_enum(spec: &FieldRef) -> Result<Vec<FieldElem>, FieldError> {
    let q = spec.order();
    if q > MAX_ENUM_ORDER {
        return Err(FieldError::OrderTooLarge(q));
    }
    let p = spec.p;
    let mut out = Vec::with_capacity((q - 1) as usize);
    for i in 1..q {
        let mut coeffs = vec![0u64; spec.k];
        let mut n = i;
        for c in coeffs.iter_mut() {
            *c = n % p;
            n /= p;
        }
        out.push(FieldElem {
            spec: spec.clone(),
            coeffs,
        });
    }
    Ok(out)
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

// ---- dense F_p[u] helpers (coefficients low-to-high, no canonicality
// guarantees; used for element reduction and the modulus irreducibility
// test) ----

fn fp_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    fp_trim(&mut out);
    out
}

fn fp_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let dm = m.len() - 1;
    debug_assert_eq!(m[dm], 1, "modulus must be monic");
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &mi) in m.iter().enumerate() {
            let idx = shift + i;
            r[idx] = (r[idx] + (p - mi) % p * lead) % p;
        }
        fp_trim(&mut r);
    }
    r
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let ai = a.get(i).copied().unwrap_or(0);
        let bi = b.get(i).copied().unwrap_or(0);
        out[i] = (ai + p - bi) % p;
    }
    fp_trim(&mut out);
    out
}

fn fp_inv_scalar(a: u64, p: u64) -> u64 {
    // extended Euclid on integers
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    assert_eq!(r0, 1, "inverse of a unit mod a prime");
    s0.rem_euclid(p as i128) as u64
}

/// Quotient and remainder of a by monic-normalizable b over F_p.
fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let mut bb = b.to_vec();
    fp_trim(&mut bb);
    assert!(!bb.is_empty(), "division by zero polynomial");
    let db = bb.len() - 1;
    let lead_inv = fp_inv_scalar(bb[db], p);
    if r.len() <= db {
        return (vec![], r);
    }
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        let c = lead * lead_inv % p;
        q[shift] = c;
        for (i, &bi) in bb.iter().enumerate() {
            r[shift + i] = (r[shift + i] + (p - bi * c % p)) % p;
        }
        fp_trim(&mut r);
    }
    fp_trim(&mut q);
    (q, r)
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    fp_trim(&mut a);
    fp_trim(&mut b);
    while !b.is_empty() {
        let (_, r) = fp_divrem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&l) = a.last() {
        if l != 1 {
            let inv = fp_inv_scalar(l, p);
            for c in a.iter_mut() {
                *c = *c * inv % p;
            }
        }
    }
    a
}

/// Inverse of a modulo m in F_p[u] via extended Euclid.
fn fp_mod_inverse(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    let mut r0 = m.to_vec();
    let mut r1 = fp_rem(a, m, p);
    let mut t0: Vec<u64> = vec![];
    let mut t1: Vec<u64> = vec![1];
    fp_trim(&mut r0);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let qt = fp_mul(&q, &t1, p);
        let t = fp_sub(&t0, &qt, p);
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    if r0.len() != 1 {
        return None; // gcd not a unit
    }
    let inv = fp_inv_scalar(r0[0], p);
    let mut out = t0;
    for c in out.iter_mut() {
        *c = *c * inv % p;
    }
    Some(fp_rem(&out, m, p))
}

fn fp_powmod_p(base: &[u64], e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = fp_rem(base, m, p);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = fp_rem(&fp_mul(&result, &b, p), m, p);
        }
        b = fp_rem(&fp_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    result
}

/// Rabin irreducibility test for a monic polynomial over F_p.
fn fp_is_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    // frob[j] = u^(p^j) mod f
    let mut frob = x.clone();
    let mut frob_powers = vec![x.clone()];
    for _ in 0..n {
        frob = fp_powmod_p(&frob, p, f, p);
        frob_powers.push(frob.clone());
    }
    // u^(p^n) == u mod f
    if fp_sub(&frob_powers[n], &x, p) != Vec::<u64>::new() {
        return false;
    }
    // gcd(u^(p^(n/l)) - u, f) == 1 for every prime l | n
    for l in prime_divisors(n) {
        let d = fp_sub(&frob_powers[n / l], &x, p);
        let g = fp_gcd(&d, f, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
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
