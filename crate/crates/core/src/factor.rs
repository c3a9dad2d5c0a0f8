//! Factorization of univariate polynomials over F_q.
//!
//! Pipeline: peel off p-th powers (the derivative-zero case, where
//! f = h^p with h obtained from p-th roots of coefficients), split off the
//! squarefree part via gcd(f, f'), run distinct-degree splitting against
//! t^(q^d) - t, then equal-degree splitting by Cantor-Zassenhaus. The
//! randomized splitting draws from a ChaCha stream seeded by a global
//! constant mixed with a hash of the input, so runs are reproducible.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::FieldElem;
use crate::poly::{Poly, PolyError};

const FACTOR_SEED: u64 = 0x7b4d_9c21_55aa_10ef;

/// Monic irreducible factors with multiplicities, plus the leading unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElem,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back together.
    pub fn expand(&self) -> Poly {
        let mut acc = Poly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m as u64));
        }
        acc
    }
}

/// Factors a nonzero polynomial into monic irreducibles.
pub fn factor(f: &Poly) -> Result<Factorization, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroInput);
    }
    let unit = f.leading_coeff().unwrap().clone();
    let monic = f.make_monic();
    let mut factors = factor_monic(&monic, 1);
    factors.sort_by(|a, b| poly_key(&a.0).cmp(&poly_key(&b.0)));
    Ok(Factorization { unit, factors })
}

/// Canonical sort key: (degree, flattened coefficient residues low-to-high).
pub(crate) fn poly_key(f: &Poly) -> (usize, Vec<u64>) {
    let deg = f.degree().unwrap_or(0);
    let mut flat = vec![];
    for c in f.coeffs() {
        flat.extend_from_slice(c.coeffs());
    }
    (deg, flat)
}

fn factor_monic(f: &Poly, outer_mult: u32) -> Vec<(Poly, u32)> {
    if f.is_constant() {
        return vec![];
    }
    let deriv = f.derivative();
    if deriv.is_zero() {
        // f = h^p with h the coefficientwise p-th root
        let h = f.pth_root().expect("derivative-zero polynomial is a p-th power");
        let p = f.spec().p() as u32;
        return factor_monic(&h, outer_mult * p);
    }

    let squarefree = f.divrem(&f.gcd(&deriv)).unwrap().0;
    let mut result = vec![];
    let mut rest = f.clone();
    for irreducible in ddf_edf(&squarefree) {
        let mut mult = 0u32;
        loop {
            let (q, r) = rest.divrem(&irreducible).unwrap();
            if !r.is_zero() {
                break;
            }
            rest = q;
            mult += 1;
        }
        debug_assert!(mult >= 1);
        result.push((irreducible, mult * outer_mult));
    }
    // whatever remains has all multiplicities divisible by p
    if !rest.is_constant() {
        debug_assert!(rest.derivative().is_zero());
        result.extend(factor_monic(&rest, outer_mult));
    }
    result
}

/// Distinct-degree then equal-degree splitting of a squarefree monic input.
fn ddf_edf(f: &Poly) -> Vec<Poly> {
    let spec = f.spec().clone();
    let q = BigUint::from(spec.order());
    let t = Poly::t(&spec);
    let mut out = vec![];
    let mut h = f.clone();
    let mut frob = t.powmod(&q, &h);
    let mut d = 0usize;
    while h.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        if d > 1 {
            frob = frob.powmod(&q, &h);
        }
        let g = h.gcd(&frob.sub(&t));
        if !g.is_constant() {
            out.extend(equal_degree_split(&g, d));
            h = h.divrem(&g).unwrap().0;
            frob = frob.divrem(&h).unwrap().1;
        }
    }
    if !h.is_constant() {
        out.push(h.make_monic());
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of distinct irreducibles of
/// equal degree d.
fn equal_degree_split(f: &Poly, d: usize) -> Vec<Poly> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.make_monic()];
    }
    let spec = f.spec().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(FACTOR_SEED ^ fnv1a(f));
    let mut stack = vec![f.make_monic()];
    let mut done = vec![];
    while let Some(g) = stack.pop() {
        let dg = g.degree().unwrap();
        if dg == d {
            done.push(g);
            continue;
        }
        match try_split(&g, d, &mut rng) {
            Some((a, b)) => {
                stack.push(a);
                stack.push(b);
            }
            None => unreachable!("splitting a reducible equal-degree product terminates"),
        }
    }
    done
}

fn try_split(g: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Option<(Poly, Poly)> {
    let spec = g.spec().clone();
    let p = spec.p();
    let q = spec.order();
    let n = g.degree().unwrap();
    for _ in 0..128 {
        let a = random_poly(g, rng);
        if a.is_constant() {
            continue;
        }
        let c = g.gcd(&a);
        if !c.is_constant() && c.degree() < g.degree() {
            let other = g.divrem(&c).unwrap().0;
            return Some((c.make_monic(), other.make_monic()));
        }
        let split = if p == 2 {
            // trace map over F_2: a + a^2 + a^4 + ... (kd summands)
            let k = spec.k();
            let rounds = k * d;
            let mut trace = a.clone();
            let mut cur = a.clone();
            for _ in 1..rounds {
                cur = cur.mul(&cur).divrem(g).unwrap().1;
                trace = trace.add(&cur);
            }
            g.gcd(&trace)
        } else {
            // a^((q^d - 1)/2) mod g is +-1 in each factor's residue field
            let e = (BigUint::from(q).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            let b = a.powmod(&e, g);
            g.gcd(&b.sub(&Poly::one(&spec)))
        };
        if !split.is_constant() && split.degree().unwrap() < n {
            let other = g.divrem(&split).unwrap().0;
            return Some((split.make_monic(), other.make_monic()));
        }
    }
    None
}

fn random_poly(modulus: &Poly, rng: &mut ChaCha8Rng) -> Poly {
    let spec = modulus.spec().clone();
    let p = spec.p();
    let k = spec.k();
    let n = modulus.degree().unwrap();
    let mut coeffs = Vec::with_capacity(n);
    for _ in 0..n {
        let residues: Vec<u64> = (0..k).map(|_| rng.gen_range(0..p)).collect();
        coeffs.push(FieldElem::new(&spec, &residues));
    }
    Poly::new(&spec, coeffs)
}

/// Deterministic content hash (FNV-1a over the spec and coefficients).
fn fnv1a(f: &Poly) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    let mut eat = |x: u64| {
        for byte in x.to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x1000_0000_01b3);
        }
    };
    eat(f.spec().p());
    eat(f.spec().k() as u64);
    for c in f.coeffs() {
        for &r in c.coeffs() {
            eat(r);
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldRef, FieldSpec};

    fn f5() -> FieldRef {
        FieldSpec::prime(5).unwrap()
    }

    fn f2() -> FieldRef {
        FieldSpec::prime(2).unwrap()
    }

    #[test]
    fn char2_square() {
        let f = f2();
        let fac = factor(&Poly::from_ints(&f, &[1, 0, 1])).unwrap();
        assert_eq!(fac.factors, vec![(Poly::from_ints(&f, &[1, 1]), 2)]);
    }

    #[test]
    fn split_quadratic_over_f5() {
        let f = f5();
        let fac = factor(&Poly::from_ints(&f, &[1, 0, 1])).unwrap();
        assert_eq!(
            fac.factors,
            vec![
                (Poly::from_ints(&f, &[2, 1]), 1),
                (Poly::from_ints(&f, &[3, 1]), 1)
            ]
        );
    }

    #[test]
    fn just_t() {
        let f = f5();
        let fac = factor(&Poly::t(&f)).unwrap();
        assert_eq!(fac.factors, vec![(Poly::t(&f), 1)]);
    }

    #[test]
    fn zero_rejected() {
        let f = f5();
        assert_eq!(factor(&Poly::zero(&f)), Err(PolyError::ZeroInput));
    }

    #[test]
    fn leading_unit_preserved() {
        let f = f5();
        let g = Poly::from_ints(&f, &[1, 1]).mul(&Poly::from_ints(&f, &[2, 0, 3]));
        let fac = factor(&g).unwrap();
        assert_eq!(fac.expand(), g);
        assert_eq!(fac.unit, FieldElem::from_int(&f, 3));
        for (irr, _) in &fac.factors {
            assert!(irr.is_monic());
            assert!(irr.is_irreducible());
        }
    }

    #[test]
    fn high_multiplicity_char_p() {
        // t^10 + 2 t^5 + 1 = (t^5 + 1)^2 = ((t+1)^5)^2 over F_5
        let f = f5();
        let g = Poly::from_ints(&f, &[1, 1]).pow(10);
        let fac = factor(&g).unwrap();
        assert_eq!(fac.factors, vec![(Poly::from_ints(&f, &[1, 1]), 10)]);
    }

    #[test]
    fn mixed_multiplicities() {
        let f = f5();
        let a = Poly::t(&f);
        let b = Poly::from_ints(&f, &[1, 1]);
        let c = Poly::from_ints(&f, &[2, 0, 1]); // irreducible quadratic
        let g = a.pow(5).mul(&b.pow(2)).mul(&c);
        let fac = factor(&g).unwrap();
        assert_eq!(
            fac.factors,
            vec![(a.clone(), 5), (b.clone(), 2), (c.clone(), 1)]
        );
        assert_eq!(fac.expand(), g);
    }
}
