//! Homogeneous heights on projective points over K = F_q(t):
//! H_hom(y_0, ..., y_n) = -sum_v min_i v(y_i) deg v, with v(0) treated as
//! +infinity (zero coordinates are ignored in the minimum). Heights are
//! exact integers; every inequality downstream is checked exactly.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::places::{support, valuation, Place, PlaceError};
use crate::ratfunc::RatFunc;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeightError {
    #[error("height of the zero vector is undefined")]
    AllZero,
    #[error("cross check requires nonzero coordinates in the first vector")]
    ZeroCoordinate,
    #[error("cross check requires linearly independent w1, w2")]
    DependentVectors,
    #[error("cross check requires a orthogonal to w1 and w2")]
    NotOrthogonal,
}

impl From<PlaceError> for HeightError {
    fn from(_: PlaceError) -> Self {
        HeightError::AllZero
    }
}

/// A homogeneous height: a non-negative exact integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Height(pub u64);

impl Height {
    pub fn value(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// H_hom of a coordinate vector; coordinates equal to zero are skipped in
/// the minimum, at least one coordinate must be nonzero.
pub fn height_hom(coords: &[RatFunc]) -> Result<Height, HeightError> {
    let nonzero: Vec<&RatFunc> = coords.iter().filter(|c| !c.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(HeightError::AllZero);
    }
    let supports: Vec<BTreeMap<Place, i64>> = nonzero
        .iter()
        .map(|c| {
            support(c)
                .expect("nonzero coordinate")
                .into_iter()
                .collect()
        })
        .collect();
    let union: BTreeSet<&Place> = supports.iter().flat_map(|s| s.keys()).collect();
    let mut total: i64 = 0;
    for place in union {
        let m = supports
            .iter()
            .map(|s| s.get(place).copied().unwrap_or(0))
            .min()
            .unwrap();
        total -= m * place.degree() as i64;
    }
    assert!(total >= 0, "homogeneous heights are non-negative");
    Ok(Height(total as u64))
}

/// The height of an affine point: H_hom(1, x, y).
pub fn height_point(x: &RatFunc, y: &RatFunc) -> Height {
    let one = RatFunc::one(x.spec());
    height_hom(&[one, x.clone(), y.clone()]).expect("1 is nonzero")
}

type Vec3 = [RatFunc; 3];

fn cross(w1: &Vec3, w2: &Vec3) -> Vec3 {
    [
        w1[1].mul(&w2[2]).sub(&w1[2].mul(&w2[1])),
        w1[2].mul(&w2[0]).sub(&w1[0].mul(&w2[2])),
        w1[0].mul(&w2[1]).sub(&w1[1].mul(&w2[0])),
    ]
}

fn dot(a: &Vec3, b: &Vec3) -> RatFunc {
    a[0].mul(&b[0]).add(&a[1].mul(&b[1])).add(&a[2].mul(&b[2]))
}

/// The cross-product height inequality: for nonzero a orthogonal to two
/// independent vectors w1, w2, checks H_hom(a) <= H_hom(w1) + H_hom(w2).
/// Also asserts that a is proportional to w1 x w2, which is forced by the
/// preconditions.
pub fn cross_height_check(a: &Vec3, w1: &Vec3, w2: &Vec3) -> Result<bool, HeightError> {
    if a.iter().any(|c| c.is_zero()) {
        return Err(HeightError::ZeroCoordinate);
    }
    let c = cross(w1, w2);
    if c.iter().all(|x| x.is_zero()) {
        return Err(HeightError::DependentVectors);
    }
    if !dot(a, w1).is_zero() || !dot(a, w2).is_zero() {
        return Err(HeightError::NotOrthogonal);
    }
    // orthogonality to an independent pair pins a to the line spanned by
    // the cross product
    let witness = cross(a, &c);
    assert!(
        witness.iter().all(|x| x.is_zero()),
        "orthogonal complement of an independent pair is one-dimensional"
    );
    let lhs = height_hom(a.as_slice())?;
    let h1 = height_hom(w1.as_slice())?;
    let h2 = height_hom(w2.as_slice())?;
    Ok(lhs.0 <= h1.0 + h2.0)
}

/// The min-valuation of a coordinate vector at one place (zero coordinates
/// skipped). Exposed for the place-by-place ultrametric tests.
pub fn min_valuation_at(coords: &[RatFunc], place: &Place) -> Option<i64> {
    coords
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| valuation(c, place).expect("nonzero"))
        .min()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldRef, FieldSpec};
    use crate::parse::parse_ratfunc;

    fn f5() -> FieldRef {
        FieldSpec::prime(5).unwrap()
    }

    fn rf(s: &str) -> RatFunc {
        parse_ratfunc(s, &f5()).unwrap()
    }

    #[test]
    fn height_of_ones_is_zero() {
        let one = rf("1");
        assert_eq!(
            height_hom(&[one.clone(), one.clone(), one]).unwrap(),
            Height(0)
        );
    }

    #[test]
    fn basic_heights() {
        assert_eq!(height_hom(&[rf("1"), rf("t")]).unwrap(), Height(1));
        // scaling invariance: (t, t^2) ~ (1, t)
        assert_eq!(height_hom(&[rf("t"), rf("t^2")]).unwrap(), Height(1));
    }

    #[test]
    fn point_heights() {
        assert_eq!(height_point(&rf("t"), &rf("1-t")), Height(1));
        assert_eq!(height_point(&rf("2"), &rf("3")), Height(0));
        assert_eq!(height_point(&rf("t^5"), &rf("(1-t)^5")), Height(5));
    }

    #[test]
    fn zero_coordinates_are_ignored() {
        let h = height_hom(&[rf("0"), rf("t")]).unwrap();
        assert_eq!(h, Height(0)); // single nonzero coordinate scales away
        assert!(height_hom(&[rf("0"), rf("0")]).is_err());
    }

    #[test]
    fn cross_check_lemma_shape() {
        // u = (t, 1-t), v = (t^5, (1-t)^5): a = (u1, u2, -1),
        // w1 = (1,1,1), w2 = (v1/u1, v2/u2, 1)
        let a = [rf("t"), rf("1-t"), rf("-1")];
        let w1 = [rf("1"), rf("1"), rf("1")];
        let w2 = [rf("t^4"), rf("(1-t)^4"), rf("1")];
        assert!(cross_height_check(&a, &w1, &w2).unwrap());
    }

    #[test]
    fn cross_check_with_cross_itself() {
        let w1 = [rf("1"), rf("t"), rf("t^2")];
        let w2 = [rf("1"), rf("1-t"), rf("t")];
        let c = [
            w1[1].mul(&w2[2]).sub(&w1[2].mul(&w2[1])),
            w1[2].mul(&w2[0]).sub(&w1[0].mul(&w2[2])),
            w1[0].mul(&w2[1]).sub(&w1[1].mul(&w2[0])),
        ];
        assert!(c.iter().all(|x| !x.is_zero()));
        assert!(cross_height_check(&c, &w1, &w2).unwrap());
    }

    #[test]
    fn cross_check_preconditions() {
        let w1 = [rf("1"), rf("1"), rf("1")];
        let a = [rf("t"), rf("1-t"), rf("-1")];
        assert_eq!(
            cross_height_check(&a, &w1, &w1.clone()),
            Err(HeightError::DependentVectors)
        );
        let w2 = [rf("t^4"), rf("(1-t)^4"), rf("1")];
        let bad = [rf("t"), rf("t"), rf("t")];
        assert_eq!(
            cross_height_check(&bad, &w1, &w2),
            Err(HeightError::NotOrthogonal)
        );
        let zero_coord = [rf("0"), rf("t"), rf("t")];
        assert_eq!(
            cross_height_check(&zero_coord, &w1, &w2),
            Err(HeightError::ZeroCoordinate)
        );
    }
}
