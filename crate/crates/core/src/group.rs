//! Finitely generated subgroups G of K* x K* presented by free generators
//! plus torsion (pairs of constants), the support set S, and the embedding
//! phi into Z^|S| x Z^|S| by weighted valuation vectors, with the averaged
//! L1 norm.
//!
//! Free generators are required to be independent modulo torsion at
//! construction; dependent inputs are rejected with a witness relation
//! instead of being silently reduced, so exponent vectors are unique and
//! membership in G^p is decidable by inspection.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::field::{FieldElem, FieldRef};
use crate::lattice::{dependency_witness, IntMat};
use crate::places::{support, Place};
use crate::ratfunc::RatFunc;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("free generator coordinates must be nonzero")]
    ZeroCoordinate,
    #[error("torsion generators must be nonzero constants")]
    NotConstant,
    #[error("free generators are dependent modulo torsion; witness relation {witness:?}")]
    DependentGenerators { witness: Vec<i64> },
    #[error("exponent vector length {got} does not match rank {rank}")]
    BadExponentLength { rank: usize, got: usize },
    #[error("torsion index {got} out of range ({size} torsion elements)")]
    BadTorsionIndex { size: usize, got: usize },
}

#[derive(Debug, PartialEq, Eq)]
pub struct GroupSpec {
    field: FieldRef,
    free_gens: Vec<(RatFunc, RatFunc)>,
    torsion_gens: Vec<(FieldElem, FieldElem)>,
    support: Vec<Place>,
    gen_phi: Vec<PhiVector>,
    torsion: Vec<(FieldElem, FieldElem)>,
    torsion_identity: usize,
}

pub type GroupRef = Arc<GroupSpec>;

impl GroupSpec {
    pub fn new(
        field: &FieldRef,
        free_gens: Vec<(RatFunc, RatFunc)>,
        torsion_gens: Vec<(FieldElem, FieldElem)>,
    ) -> Result<GroupRef, GroupError> {
        for (x, y) in &free_gens {
            if x.is_zero() || y.is_zero() {
                return Err(GroupError::ZeroCoordinate);
            }
        }
        for (c, d) in &torsion_gens {
            if c.is_zero() || d.is_zero() {
                return Err(GroupError::NotConstant);
            }
        }

        // S: every place showing up in some coordinate of some free
        // generator, sorted canonically (finite by (degree, lex), inf last)
        let mut places: BTreeSet<Place> = BTreeSet::new();
        for (x, y) in &free_gens {
            for coord in [x, y] {
                if !coord.is_constant() {
                    for (pl, _) in support(coord).expect("nonzero coordinate") {
                        places.insert(pl);
                    }
                }
            }
        }
        let support_list: Vec<Place> = places.into_iter().collect();

        let gen_phi: Vec<PhiVector> = free_gens
            .iter()
            .map(|(x, y)| PhiVector::of_pair(x, y, &support_list))
            .collect();

        // independence modulo torsion = full row rank of the valuation data
        let cols = 2 * support_list.len();
        let mut mat = IntMat::zero(free_gens.len(), cols);
        for (i, phi) in gen_phi.iter().enumerate() {
            for (j, &x) in phi.first.iter().enumerate() {
                mat[(i, j)] = x as i128;
            }
            for (j, &x) in phi.second.iter().enumerate() {
                mat[(i, support_list.len() + j)] = x as i128;
            }
        }
        if let Some(witness) = dependency_witness(&mat) {
            return Err(GroupError::DependentGenerators {
                witness: witness.iter().map(|&x| x as i64).collect(),
            });
        }

        let (torsion, torsion_identity) = close_torsion(field, &torsion_gens);

        Ok(Arc::new(GroupSpec {
            field: field.clone(),
            free_gens,
            torsion_gens,
            support: support_list,
            gen_phi,
            torsion,
            torsion_identity,
        }))
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    /// The rank r: free generators are independent by construction.
    pub fn rank(&self) -> usize {
        self.free_gens.len()
    }

    pub fn free_gens(&self) -> &[(RatFunc, RatFunc)] {
        &self.free_gens
    }

    pub fn torsion_gens(&self) -> &[(FieldElem, FieldElem)] {
        &self.torsion_gens
    }

    /// The ordered support set S.
    pub fn support(&self) -> &[Place] {
        &self.support
    }

    pub fn gen_phi(&self) -> &[PhiVector] {
        &self.gen_phi
    }

    /// The materialized torsion subgroup (closure of the torsion
    /// generators), sorted canonically.
    pub fn torsion(&self) -> &[(FieldElem, FieldElem)] {
        &self.torsion
    }

    pub fn torsion_identity(&self) -> usize {
        self.torsion_identity
    }

    pub fn torsion_index_of(&self, pair: &(FieldElem, FieldElem)) -> Option<usize> {
        self.torsion
            .binary_search_by(|probe| torsion_key(probe).cmp(&torsion_key(pair)))
            .ok()
    }

    /// Index arithmetic in the torsion table.
    pub fn torsion_mul(&self, a: usize, b: usize) -> usize {
        let (x1, y1) = &self.torsion[a];
        let (x2, y2) = &self.torsion[b];
        let prod = (x1.mul(x2), y1.mul(y2));
        self.torsion_index_of(&prod)
            .expect("torsion table is closed under multiplication")
    }

    pub fn torsion_pow(&self, idx: usize, e: u64) -> usize {
        let (x, y) = &self.torsion[idx];
        let powed = (x.pow(e), y.pow(e));
        self.torsion_index_of(&powed)
            .expect("torsion table is closed under powers")
    }

    /// |G / G^p| = p^r: torsion contributes nothing since its order is
    /// coprime to p.
    pub fn quotient_size_gp(&self) -> u128 {
        (self.p() as u128).pow(self.rank() as u32)
    }

    pub fn identity(self: &GroupRef) -> GroupElem {
        GroupElem {
            group: self.clone(),
            exponents: vec![0; self.rank()],
            torsion_index: self.torsion_identity,
        }
    }

    pub fn elem(
        self: &GroupRef,
        exponents: Vec<i64>,
        torsion_index: usize,
    ) -> Result<GroupElem, GroupError> {
        if exponents.len() != self.rank() {
            return Err(GroupError::BadExponentLength {
                rank: self.rank(),
                got: exponents.len(),
            });
        }
        if torsion_index >= self.torsion.len() {
            return Err(GroupError::BadTorsionIndex {
                size: self.torsion.len(),
                got: torsion_index,
            });
        }
        Ok(GroupElem {
            group: self.clone(),
            exponents,
            torsion_index,
        })
    }
}

fn torsion_key(pair: &(FieldElem, FieldElem)) -> (Vec<u64>, Vec<u64>) {
    (pair.0.coeffs().to_vec(), pair.1.coeffs().to_vec())
}

/// Closure of the torsion generators under multiplication; at most
/// (q-1)^2 elements. Returns the sorted table and the identity index.
fn close_torsion(
    field: &FieldRef,
    gens: &[(FieldElem, FieldElem)],
) -> (Vec<(FieldElem, FieldElem)>, usize) {
    let one = (FieldElem::one(field), FieldElem::one(field));
    let mut seen: BTreeSet<(Vec<u64>, Vec<u64>)> = BTreeSet::new();
    let mut table = vec![];
    let mut queue = vec![one.clone()];
    seen.insert(torsion_key(&one));
    while let Some(cur) = queue.pop() {
        for (gx, gy) in gens {
            let next = (cur.0.mul(gx), cur.1.mul(gy));
            if seen.insert(torsion_key(&next)) {
                queue.push(next.clone());
            }
        }
        table.push(cur);
    }
    table.sort_by(|a, b| torsion_key(a).cmp(&torsion_key(b)));
    let identity = table
        .iter()
        .position(|t| *t == one)
        .expect("identity is in the closure");
    (table, identity)
}

/// A group element as an exponent vector over the free generators plus a
/// torsion index. Representation is unique by generator independence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElem {
    group: GroupRef,
    exponents: Vec<i64>,
    torsion_index: usize,
}

impl GroupElem {
    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn torsion_index(&self) -> usize {
        self.torsion_index
    }

    /// Exact evaluation via integer powers of the generators.
    pub fn value(&self) -> (RatFunc, RatFunc) {
        let (tc, td) = &self.group.torsion[self.torsion_index];
        let mut x = RatFunc::from_elem(tc.clone());
        let mut y = RatFunc::from_elem(td.clone());
        for (e, (gx, gy)) in self.exponents.iter().zip(&self.group.free_gens) {
            if *e == 0 {
                continue;
            }
            x = x.mul(&gx.pow(*e).expect("nonzero generator coordinate"));
            y = y.mul(&gy.pow(*e).expect("nonzero generator coordinate"));
        }
        (x, y)
    }

    /// phi(u) = (v(u_1) deg v, v(u_2) deg v)_{v in S}; a homomorphism, with
    /// torsion mapping to zero.
    pub fn phi(&self) -> PhiVector {
        let m = self.group.support.len();
        let mut out = PhiVector {
            first: vec![0; m],
            second: vec![0; m],
        };
        for (e, phi) in self.exponents.iter().zip(&self.group.gen_phi) {
            if *e == 0 {
                continue;
            }
            for j in 0..m {
                out.first[j] += e * phi.first[j];
                out.second[j] += e * phi.second[j];
            }
        }
        out
    }

    pub fn is_torsion(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Membership in G^p: all free exponents divisible by p. Torsion is
    /// ignored because |G^tors| divides (q-1)^2, which is coprime to p, so
    /// every torsion element is the p-th power of a torsion element.
    pub fn is_in_gp(&self) -> bool {
        let p = self.group.p() as i64;
        self.exponents.iter().all(|e| e % p == 0)
    }

    /// The Frobenius image u^p as a group element.
    pub fn frobenius(&self) -> GroupElem {
        let p = self.group.p();
        GroupElem {
            group: self.group.clone(),
            exponents: self.exponents.iter().map(|e| e * p as i64).collect(),
            torsion_index: self.group.torsion_pow(self.torsion_index, p),
        }
    }

    pub fn mul(&self, other: &GroupElem) -> GroupElem {
        let exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(a, b)| a + b)
            .collect();
        GroupElem {
            group: self.group.clone(),
            exponents,
            torsion_index: self.group.torsion_mul(self.torsion_index, other.torsion_index),
        }
    }

    pub fn inverse(&self) -> GroupElem {
        let order = self.torsion_order();
        GroupElem {
            group: self.group.clone(),
            exponents: self.exponents.iter().map(|e| -e).collect(),
            torsion_index: self.group.torsion_pow(self.torsion_index, order - 1),
        }
    }

    fn torsion_order(&self) -> u64 {
        let mut n = 1u64;
        let mut idx = self.torsion_index;
        while idx != self.group.torsion_identity {
            idx = self.group.torsion_mul(idx, self.torsion_index);
            n += 1;
        }
        n.max(1)
    }
}

/// The image of a group element in Z^|S| x Z^|S|, indexed by the ordered
/// support set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PhiVector {
    pub first: Vec<i64>,
    pub second: Vec<i64>,
}

impl PhiVector {
    pub fn of_pair(x: &RatFunc, y: &RatFunc, places: &[Place]) -> PhiVector {
        let val = |coord: &RatFunc, pl: &Place| -> i64 {
            if coord.is_constant() {
                return 0;
            }
            crate::places::valuation(coord, pl).expect("nonzero coordinate") * pl.degree() as i64
        };
        PhiVector {
            first: places.iter().map(|pl| val(x, pl)).collect(),
            second: places.iter().map(|pl| val(y, pl)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.first.len()
    }

    pub fn is_zero(&self) -> bool {
        self.first.iter().all(|&x| x == 0) && self.second.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &PhiVector) -> PhiVector {
        PhiVector {
            first: self.first.iter().zip(&other.first).map(|(a, b)| a + b).collect(),
            second: self
                .second
                .iter()
                .zip(&other.second)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &PhiVector) -> PhiVector {
        PhiVector {
            first: self.first.iter().zip(&other.first).map(|(a, b)| a - b).collect(),
            second: self
                .second
                .iter()
                .zip(&other.second)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: i64) -> PhiVector {
        PhiVector {
            first: self.first.iter().map(|a| a * c).collect(),
            second: self.second.iter().map(|a| a * c).collect(),
        }
    }

    /// The averaged L1 norm (an exact half-integer rational).
    pub fn norm(&self) -> BigRational {
        let sum: i64 = self.first.iter().map(|x| x.abs()).sum::<i64>()
            + self.second.iter().map(|x| x.abs()).sum::<i64>();
        BigRational::new(BigInt::from(sum), BigInt::from(2))
    }
}

impl fmt::Display for PhiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.first, self.second)
    }
}

/// The averaged-L1 norm of a phi vector.
pub fn phi_norm(x: &PhiVector) -> BigRational {
    x.norm()
}

/// Exposed so callers can state the zero norm without building vectors.
pub fn zero_norm() -> BigRational {
    BigRational::zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::heights::{height_hom, Height};
    use crate::parse::parse_ratfunc;
    use crate::poly::Poly;

    fn f5() -> FieldRef {
        FieldSpec::prime(5).unwrap()
    }

    fn rf(s: &str, f: &FieldRef) -> RatFunc {
        parse_ratfunc(s, f).unwrap()
    }

    fn reference_group() -> GroupRef {
        let f = f5();
        GroupSpec::new(&f, vec![(rf("t", &f), rf("1-t", &f))], vec![]).unwrap()
    }

    #[test]
    fn support_ordering() {
        let g = reference_group();
        let f = f5();
        let expect = vec![
            Place::finite(Poly::t(&f)).unwrap(),
            Place::finite(Poly::from_ints(&f, &[4, 1])).unwrap(),
            Place::Infinite,
        ];
        assert_eq!(g.support(), &expect[..]);
    }

    #[test]
    fn constant_only_group_has_empty_support() {
        let f = f5();
        let g = GroupSpec::new(
            &f,
            vec![],
            vec![(FieldElem::from_int(&f, 2), FieldElem::from_int(&f, 3))],
        )
        .unwrap();
        assert!(g.support().is_empty());
        assert_eq!(g.rank(), 0);
    }

    #[test]
    fn same_coordinate_group() {
        let f = f5();
        let g = GroupSpec::new(&f, vec![(rf("t", &f), rf("t", &f))], vec![]).unwrap();
        let expect = vec![Place::finite(Poly::t(&f)).unwrap(), Place::Infinite];
        assert_eq!(g.support(), &expect[..]);
    }

    #[test]
    fn rank_two() {
        let f = f5();
        let g = GroupSpec::new(
            &f,
            vec![
                (rf("t", &f), rf("1-t", &f)),
                (rf("1-t", &f), rf("t", &f)),
            ],
            vec![],
        )
        .unwrap();
        assert_eq!(g.rank(), 2);
    }

    #[test]
    fn dependent_generators_rejected_with_witness() {
        let f = f5();
        let err = GroupSpec::new(
            &f,
            vec![
                (rf("t", &f), rf("1", &f)),
                (rf("t^2", &f), rf("1", &f)),
            ],
            vec![],
        )
        .unwrap_err();
        assert_eq!(
            err,
            GroupError::DependentGenerators {
                witness: vec![2, -1]
            }
        );
    }

    #[test]
    fn phi_of_reference_generator() {
        let g = reference_group();
        let u = g.elem(vec![1], g.torsion_identity()).unwrap();
        let phi = u.phi();
        assert_eq!(phi.first, vec![1, 0, -1]);
        assert_eq!(phi.second, vec![0, 1, -1]);
        assert_eq!(phi.norm(), BigRational::from(BigInt::from(2)));

        // phi(u^2) = 2 phi(u)
        let u2 = u.mul(&u);
        assert_eq!(u2.phi(), phi.scale(2));
        // identity maps to zero
        assert!(g.identity().phi().is_zero());
    }

    #[test]
    fn norm_is_sum_of_coordinate_heights() {
        let g = reference_group();
        let f = f5();
        let u = g.elem(vec![3], g.torsion_identity()).unwrap();
        let (x, y) = u.value();
        let hx = height_hom(&[rf("1", &f), x.clone()]).unwrap();
        let hy = height_hom(&[rf("1", &f), y.clone()]).unwrap();
        let expect = BigRational::from(BigInt::from(hx.0 + hy.0));
        assert_eq!(u.phi().norm(), expect);
        assert_eq!(hx, Height(3));
    }

    #[test]
    fn values_evaluate_exactly() {
        let g = reference_group();
        let f = f5();
        let u = g.elem(vec![1], 0).unwrap();
        assert_eq!(u.value(), (rf("t", &f), rf("1-t", &f)));
        let e0 = g.elem(vec![0], 0).unwrap();
        assert_eq!(e0.value(), (rf("1", &f), rf("1", &f)));
        let inv = g.elem(vec![-1], 0).unwrap();
        assert_eq!(inv.value(), (rf("1/t", &f), rf("1/(1-t)", &f)));
    }

    #[test]
    fn gp_membership() {
        let g = reference_group();
        assert!(g.elem(vec![5], 0).unwrap().is_in_gp());
        assert!(!g.elem(vec![1], 0).unwrap().is_in_gp());
        assert!(g.elem(vec![0], 0).unwrap().is_in_gp());
        assert!(g.elem(vec![-5], 0).unwrap().is_in_gp());
    }

    #[test]
    fn quotient_size() {
        assert_eq!(reference_group().quotient_size_gp(), 5);
        let f = f5();
        let g0 = GroupSpec::new(&f, vec![], vec![]).unwrap();
        assert_eq!(g0.quotient_size_gp(), 1);
        let f7 = FieldSpec::prime(7).unwrap();
        let g2 = GroupSpec::new(
            &f7,
            vec![
                (rf("t", &f7), rf("1-t", &f7)),
                (rf("1-t", &f7), rf("t", &f7)),
            ],
            vec![],
        )
        .unwrap();
        assert_eq!(g2.quotient_size_gp(), 49);
    }

    #[test]
    fn torsion_closure_and_pth_power_bijection() {
        let f = f5();
        let g = GroupSpec::new(
            &f,
            vec![(rf("t", &f), rf("1-t", &f))],
            vec![(FieldElem::from_int(&f, 3), FieldElem::from_int(&f, 3))],
        )
        .unwrap();
        assert_eq!(g.torsion().len(), 4); // (3,3) has order 4
        // x -> x^p is a bijection on the torsion table
        let p = g.p();
        let mut images: Vec<usize> = (0..4).map(|i| g.torsion_pow(i, p)).collect();
        images.sort();
        assert_eq!(images, vec![0, 1, 2, 3]);
        // nontrivial torsion with zero exponents is still in G^p
        let tor = g.elem(vec![0], 2).unwrap();
        assert!(tor.is_in_gp() && tor.is_torsion());
    }

    #[test]
    fn frobenius_scales_phi() {
        let g = reference_group();
        let u = g.elem(vec![2], 0).unwrap();
        let frob = u.frobenius();
        assert_eq!(frob.phi(), u.phi().scale(5));
        let (x, y) = u.value();
        assert_eq!(frob.value(), (x.frobenius(), y.frobenius()));
    }

    #[test]
    fn inverse_round_trip() {
        let f = f5();
        let g = GroupSpec::new(
            &f,
            vec![(rf("t", &f), rf("1-t", &f))],
            vec![(FieldElem::from_int(&f, 3), FieldElem::from_int(&f, 3))],
        )
        .unwrap();
        for idx in 0..g.torsion().len() {
            let u = g.elem(vec![7], idx).unwrap();
            let w = u.mul(&u.inverse());
            assert!(w.is_torsion());
            assert_eq!(w.torsion_index(), g.torsion_identity());
        }
    }
}
