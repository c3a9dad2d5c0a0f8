//! The set M_K of normalized discrete valuations of K = F_q(t): one finite
//! place per monic irreducible polynomial, plus the infinite place of
//! degree 1. The sum formula sum_v v(x) deg v = 0 is asserted on every
//! support computation.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::factor::{factor, poly_key};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlaceError {
    #[error("finite places must be monic irreducible polynomials")]
    NotIrreducible,
    #[error("valuations of zero are undefined")]
    ZeroInput,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(Poly),
    Infinite,
}

impl Place {
    /// Wraps a monic irreducible polynomial as a finite place.
    pub fn finite(p: Poly) -> Result<Self, PlaceError> {
        if !p.is_monic() || !p.is_irreducible() {
            return Err(PlaceError::NotIrreducible);
        }
        Ok(Place::Finite(p))
    }

    pub fn infinite() -> Self {
        Place::Infinite
    }

    pub fn degree(&self) -> u64 {
        match self {
            Place::Finite(p) => p.degree().expect("irreducible is nonzero") as u64,
            Place::Infinite => 1,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Place::Infinite)
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Infinite, Place::Infinite) => Ordering::Equal,
            (Place::Infinite, _) => Ordering::Greater,
            (_, Place::Infinite) => Ordering::Less,
            (Place::Finite(a), Place::Finite(b)) => poly_key(a).cmp(&poly_key(b)),
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinite => write!(f, "inf"),
        }
    }
}

/// The normalized valuation v(x) at a place.
pub fn valuation(x: &RatFunc, v: &Place) -> Result<i64, PlaceError> {
    if x.is_zero() {
        return Err(PlaceError::ZeroInput);
    }
    match v {
        Place::Infinite => Ok(x.den().degree_i64() - x.num().degree_i64()),
        Place::Finite(p) => Ok(multiplicity(x.num(), p) - multiplicity(x.den(), p)),
    }
}

fn multiplicity(f: &Poly, p: &Poly) -> i64 {
    let mut m = 0;
    let mut rest = f.clone();
    loop {
        let (q, r) = rest.divrem(p).expect("place polynomial is nonzero");
        if !r.is_zero() {
            return m;
        }
        rest = q;
        m += 1;
    }
}

/// The exact support of x: all places with nonzero valuation, sorted
/// canonically (finite by (degree, coefficient lex), infinite last).
pub fn support(x: &RatFunc) -> Result<Vec<(Place, i64)>, PlaceError> {
    if x.is_zero() {
        return Err(PlaceError::ZeroInput);
    }
    let mut entries: Vec<(Place, i64)> = vec![];
    for (poly, mult) in factor(x.num()).expect("nonzero").factors {
        entries.push((Place::Finite(poly), mult as i64));
    }
    for (poly, mult) in factor(x.den()).expect("nonzero").factors {
        match entries.iter_mut().find(|(pl, _)| matches!(pl, Place::Finite(p) if *p == poly)) {
            Some(entry) => entry.1 -= mult as i64,
            None => entries.push((Place::Finite(poly), -(mult as i64))),
        }
    }
    entries.retain(|(_, m)| *m != 0);
    let at_infinity = x.den().degree_i64() - x.num().degree_i64();
    if at_infinity != 0 {
        entries.push((Place::Infinite, at_infinity));
    }
    entries.sort_by(|a, b| a.0.cmp(&b.0));

    // sum formula: sum over the support of v(x) deg v vanishes
    let total: i64 = entries.iter().map(|(v, m)| m * v.degree() as i64).sum();
    assert_eq!(total, 0, "sum formula violated for {x}");
    Ok(entries)
}
