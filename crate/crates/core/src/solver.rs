//! Brute-force enumeration of solutions over exponent boxes, Frobenius
//! descent, and the reduction of ax + by = 1 to the unit equation.
//!
//! The box walk follows a reflected mixed-radix Gray code, so consecutive
//! candidates differ in a single exponent by 1 and the running value needs
//! one rational multiplication per step. The walk is partitioned into
//! contiguous chunks processed in parallel; chunk starts are evaluated
//! from scratch, results are merged and sorted canonically, so the output
//! is independent of the partition.

use num_bigint::BigUint;
use num_integer::Integer;
use rayon::prelude::*;
use thiserror::Error;

use crate::field::FieldElem;
use crate::group::{GroupElem, GroupRef, PhiVector};
use crate::heights::{height_point, Height};
use crate::lattice::{least_multiple_in_rowspan, IntMat};
use crate::places::{support, Place};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("box holds {candidates} candidates, exceeding the budget {budget}")]
    BudgetExceeded { candidates: u128, budget: u64 },
    #[error("descent requires non-constant coordinates")]
    ConstantInput,
    #[error("descent requires a solution of x + y = 1")]
    NotASolution,
    #[error("coefficients a, b must be nonzero")]
    ZeroCoefficient,
}

/// Exponent search region [-B, B]^r crossed with the full torsion table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBox {
    pub bound: i64,
    pub budget: u64,
}

impl SearchBox {
    pub fn new(bound: i64, budget: u64) -> Self {
        SearchBox { bound, budget }
    }

    pub fn candidates(&self, group: &GroupRef) -> u128 {
        let m = (2 * self.bound + 1) as u128;
        let free: u128 = m.pow(group.rank() as u32);
        free * group.torsion().len() as u128
    }
}

/// One enumerated solution with all its certification inputs populated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionRecord {
    pub elem: GroupElem,
    pub x: RatFunc,
    pub y: RatFunc,
    pub height: Height,
    pub phi: PhiVector,
    pub is_torsion: bool,
    pub is_primitive: bool,
    pub coords_in_kp: bool,
    pub constant_case: bool,
}

impl SolutionRecord {
    fn build(elem: GroupElem, a: &RatFunc, b: &RatFunc) -> Self {
        let (x, y) = elem.value();
        let ax = a.mul(&x);
        let by = b.mul(&y);
        assert!(
            ax.add(&by).is_one(),
            "record must satisfy a x + b y = 1 exactly"
        );
        let is_torsion = elem.is_torsion();
        let is_primitive = !elem.is_in_gp();
        // Prim-Sol is contained in Sol: torsion is inside G^p since the
        // torsion order is coprime to p
        assert!(!is_primitive || !is_torsion);
        let coords_in_kp = x.is_pth_power();
        debug_assert_eq!(coords_in_kp, y.is_pth_power());
        let constant_case = ax.is_constant() || by.is_constant();
        SolutionRecord {
            height: height_point(&x, &y),
            phi: elem.phi(),
            elem,
            x,
            y,
            is_torsion,
            is_primitive,
            coords_in_kp,
            constant_case,
        }
    }
}

/// Reflected mixed-radix Gray code: the digits of the rank-th tuple, each
/// in [0, m); consecutive ranks differ in one digit by exactly 1.
pub fn gray_digits(rank: u128, m: u64, r: usize) -> Vec<u64> {
    let mut out = vec![0u64; r];
    let mut parity = 0u64;
    for j in (0..r).rev() {
        let base = (m as u128).pow(j as u32);
        let raw = ((rank / base) % m as u128) as u64;
        out[j] = if parity % 2 == 0 { raw } else { m - 1 - raw };
        parity += raw;
    }
    out
}

/// All solutions of x + y = 1 inside the box, in canonical order
/// (lexicographic exponents, then torsion index).
pub fn enumerate_solutions(
    group: &GroupRef,
    search: &SearchBox,
) -> Result<Vec<SolutionRecord>, SolverError> {
    let one = RatFunc::one(group.field());
    enumerate_affine(group, &one, &one, search)
}

/// All (x, y) in the box with a x + b y = 1.
pub fn enumerate_affine(
    group: &GroupRef,
    a: &RatFunc,
    b: &RatFunc,
    search: &SearchBox,
) -> Result<Vec<SolutionRecord>, SolverError> {
    if a.is_zero() || b.is_zero() {
        return Err(SolverError::ZeroCoefficient);
    }
    let candidates = search.candidates(group);
    if candidates > search.budget as u128 {
        return Err(SolverError::BudgetExceeded {
            candidates,
            budget: search.budget,
        });
    }

    let r = group.rank();
    let bound = search.bound;
    let m = (2 * bound + 1) as u64;
    let total_free: u128 = (m as u128).pow(r as u32);

    // a * tau_1, b * tau_2 folded into cross-multiplied polynomial tests:
    // A/Bden etc. per torsion element, so the hot loop multiplies
    // polynomials only and never re-normalizes.
    let torsion_tests: Vec<(Poly, Poly, Poly)> = group
        .torsion()
        .iter()
        .map(|(tc, td)| {
            let at = a.scale(tc);
            let bt = b.scale(td);
            let an_bd = at.num().mul(bt.den());
            let bn_ad = bt.num().mul(at.den());
            let ad_bd = at.den().mul(bt.den());
            (an_bd, bn_ad, ad_bd)
        })
        .collect();

    let gens = group.free_gens().to_vec();
    let inv_gens: Vec<(RatFunc, RatFunc)> = gens
        .iter()
        .map(|(gx, gy)| {
            (
                gx.inverse().expect("generator coordinates are nonzero"),
                gy.inverse().expect("generator coordinates are nonzero"),
            )
        })
        .collect();

    let chunk = chunk_size(total_free);
    let starts: Vec<u128> = (0..total_free).step_by(chunk as usize).collect();
    let chunks: Vec<Vec<(Vec<i64>, usize)>> = starts
        .par_iter()
        .map(|&lo| {
            let hi = (lo + chunk).min(total_free);
            walk_chunk(
                group,
                &gens,
                &inv_gens,
                &torsion_tests,
                m,
                bound,
                lo,
                hi,
            )
        })
        .collect();

    let mut hits: Vec<(Vec<i64>, usize)> = chunks.into_iter().flatten().collect();
    hits.sort();
    hits.dedup();
    let records = hits
        .into_iter()
        .map(|(exponents, ti)| {
            let elem = group.elem(exponents, ti).expect("walk stays in range");
            SolutionRecord::build(elem, a, b)
        })
        .collect();
    Ok(records)
}

fn chunk_size(total: u128) -> u128 {
    let threads = rayon::current_num_threads().max(1) as u128;
    let per = total.div_ceil(threads * 4);
    per.max(64)
}

#[allow(clippy::too_many_arguments)]
fn walk_chunk(
    group: &GroupRef,
    gens: &[(RatFunc, RatFunc)],
    inv_gens: &[(RatFunc, RatFunc)],
    torsion_tests: &[(Poly, Poly, Poly)],
    m: u64,
    bound: i64,
    lo: u128,
    hi: u128,
) -> Vec<(Vec<i64>, usize)> {
    let r = gens.len();
    let mut digits = gray_digits(lo, m, r);
    let mut x = RatFunc::one(group.field());
    let mut y = RatFunc::one(group.field());
    for (j, &d) in digits.iter().enumerate() {
        let e = d as i64 - bound;
        if e != 0 {
            x = x.mul(&gens[j].0.pow(e).expect("nonzero"));
            y = y.mul(&gens[j].1.pow(e).expect("nonzero"));
        }
    }

    let mut hits = vec![];
    let mut rank = lo;
    loop {
        // test a tau_1 x + b tau_2 y = 1 by cross multiplication:
        // AnBd * xn * yd + BnAd * yn * xd == AdBd * xd * yd
        let xn_yd = x.num().mul(y.den());
        let yn_xd = y.num().mul(x.den());
        let xd_yd = x.den().mul(y.den());
        for (ti, (an_bd, bn_ad, ad_bd)) in torsion_tests.iter().enumerate() {
            let lhs = an_bd.mul(&xn_yd).add(&bn_ad.mul(&yn_xd));
            let rhs = ad_bd.mul(&xd_yd);
            if lhs == rhs {
                let exponents: Vec<i64> = digits.iter().map(|&d| d as i64 - bound).collect();
                hits.push((exponents, ti));
            }
        }

        rank += 1;
        if rank >= hi {
            break;
        }
        let next = gray_digits(rank, m, r);
        let j = (0..r)
            .find(|&j| next[j] != digits[j])
            .expect("consecutive Gray tuples differ");
        let step_up = next[j] == digits[j] + 1;
        debug_assert!(step_up || next[j] + 1 == digits[j]);
        let (gx, gy) = if step_up { &gens[j] } else { &inv_gens[j] };
        x = x.mul(gx);
        y = y.mul(gy);
        digits = next;
    }
    hits
}

/// The subsequence of primitive records ((x, y) not in G^p).
pub fn primitive_filter(records: &[SolutionRecord]) -> Vec<SolutionRecord> {
    records.iter().filter(|r| r.is_primitive).cloned().collect()
}

/// Count of records with both coordinates outside K^p; callers compare
/// against p^r.
pub fn count_coords_not_in_kp(records: &[SolutionRecord]) -> usize {
    records.iter().filter(|r| !r.coords_in_kp).count()
}

/// Repeatedly takes p-th roots of a solution of x + y = 1 until the
/// coordinates leave K^p; returns (x', y', t) with x'^(p^t) = x. The
/// height drops by a factor p each step, so this terminates.
pub fn kp_descent(x: &RatFunc, y: &RatFunc) -> Result<(RatFunc, RatFunc, u32), SolverError> {
    if x.is_constant() || y.is_constant() {
        return Err(SolverError::ConstantInput);
    }
    if !x.add(y).is_one() {
        return Err(SolverError::NotASolution);
    }
    let mut cx = x.clone();
    let mut cy = y.clone();
    let mut t = 0u32;
    let mut h = height_point(&cx, &cy);
    while let Some(rx) = cx.pth_root().expect("nonzero") {
        let ry = cy
            .pth_root()
            .expect("nonzero")
            .expect("x in K^p forces y = 1 - x in K^p");
        cx = rx;
        cy = ry;
        t += 1;
        let hr = height_point(&cx, &cy);
        assert!(hr < h, "descent strictly reduces the height");
        h = hr;
        debug_assert!(cx.add(&cy).is_one());
    }
    let p = x.spec().p();
    let mut back = (cx.clone(), cy.clone());
    for _ in 0..t {
        back = (back.0.pow(p as i64).unwrap(), back.1.pow(p as i64).unwrap());
    }
    assert_eq!(back, (x.clone(), y.clone()), "descent must invert exactly");
    Ok((cx, cy, t))
}

/// A certificate that (a, b)^n lies in G: the exponents and torsion index
/// with (a, b)^n = g^e * tau, verified exactly before being returned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbPowerWitness {
    pub n: u64,
    pub exponents: Vec<i64>,
    pub torsion_index: usize,
    pub coprime_to_p: bool,
}

/// Finds the least n >= 1 with (a, b)^n in G, if one exists: first the
/// valuation lattice membership (Smith normal form over the combined
/// support), then the constant discrepancy inside the finite torsion
/// table.
pub fn ab_power_in_g(
    a: &RatFunc,
    b: &RatFunc,
    group: &GroupRef,
) -> Result<Option<AbPowerWitness>, SolverError> {
    if a.is_zero() || b.is_zero() {
        return Err(SolverError::ZeroCoefficient);
    }
    // combined support: the group's S extended by the places of a and b
    let mut places: Vec<Place> = group.support().to_vec();
    for coord in [a, b] {
        if !coord.is_constant() {
            for (pl, _) in support(coord).expect("nonzero") {
                if !places.contains(&pl) {
                    places.push(pl);
                }
            }
        }
    }
    places.sort();

    let cols = 2 * places.len();
    let r = group.rank();
    let mut mat = IntMat::zero(r, cols);
    for (i, (gx, gy)) in group.free_gens().iter().enumerate() {
        let phi = PhiVector::of_pair(gx, gy, &places);
        for (j, &v) in phi.first.iter().enumerate() {
            mat[(i, j)] = v as i128;
        }
        for (j, &v) in phi.second.iter().enumerate() {
            mat[(i, places.len() + j)] = v as i128;
        }
    }
    let w_phi = PhiVector::of_pair(a, b, &places);
    let mut w: Vec<i128> = w_phi.first.iter().map(|&v| v as i128).collect();
    w.extend(w_phi.second.iter().map(|&v| v as i128));

    let Some((n0, e0)) = least_multiple_in_rowspan(&mat, &w) else {
        return Ok(None);
    };
    let e0: Vec<i64> = e0
        .iter()
        .map(|&v| i64::try_from(v).expect("desk-scale exponents"))
        .collect();

    // residual (a,b)^n0 * g^-e0 is a pair of constants by construction
    let mut cx = a.pow(n0 as i64).expect("nonzero");
    let mut cy = b.pow(n0 as i64).expect("nonzero");
    for (ei, (gx, gy)) in e0.iter().zip(group.free_gens()) {
        cx = cx.mul(&gx.pow(-ei).expect("nonzero"));
        cy = cy.mul(&gy.pow(-ei).expect("nonzero"));
    }
    let c = cx.constant_value().expect("residual is constant");
    let d = cy.constant_value().expect("residual is constant");

    // least n1 with (c, d)^n1 in the torsion table; n1 <= q - 1 always
    // works since (c, d)^(q-1) = (1, 1)
    let q = group.field().order();
    let mut pc = c.clone();
    let mut pd = d.clone();
    let mut n1 = 1u64;
    let torsion_index = loop {
        if let Some(idx) = group.torsion_index_of(&(pc.clone(), pd.clone())) {
            break idx;
        }
        n1 += 1;
        assert!(n1 <= q, "(c, d)^(q-1) is the identity");
        pc = pc.mul(&c);
        pd = pd.mul(&d);
    };

    let n = n0 * n1;
    let exponents: Vec<i64> = e0.iter().map(|&x| x * n1 as i64).collect();
    let witness = group
        .elem(exponents.clone(), torsion_index)
        .expect("witness dimensions match");
    let (wx, wy) = witness.value();
    assert_eq!(
        (wx, wy),
        (
            a.pow(n as i64).expect("nonzero"),
            b.pow(n as i64).expect("nonzero")
        ),
        "witness must reproduce (a, b)^n exactly"
    );
    let coprime_to_p = n.gcd(&group.p()) == 1;
    Ok(Some(AbPowerWitness {
        n,
        exponents,
        torsion_index,
        coprime_to_p,
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VolochMode {
    /// a = b = 1: the unit equation itself.
    Unit,
    /// (a, b)^n in G with gcd(n, p) = 1: the theorem's excluded case.
    Excluded,
    /// the bounded case: the count is compared against 31 * 19^(r+1).
    Bounded,
}

#[derive(Debug, Clone)]
pub struct VolochReport {
    pub mode: VolochMode,
    pub certificate: Option<AbPowerWitness>,
    pub records: Vec<SolutionRecord>,
    pub bound: BigUint,
    /// Whether the theorem actually claims the bound for this instance
    /// (false in the excluded case, where the count is reported for
    /// information only).
    pub bound_claimed: bool,
    pub within_bound: bool,
    pub constant_case_count: usize,
}

/// Drives the full ax + by = 1 analysis. The exclusion certificate is
/// reported whenever a coprime-to-p power of (a, b) lands in G (the
/// theorem's excluded case); the box is enumerated either way, with
/// solutions where ax or by is constant classified, not discarded. In the
/// non-excluded case the count is compared against 31 * 19^(r+1).
pub fn solve_voloch(
    a: &RatFunc,
    b: &RatFunc,
    group: &GroupRef,
    search: &SearchBox,
) -> Result<VolochReport, SolverError> {
    if a.is_zero() || b.is_zero() {
        return Err(SolverError::ZeroCoefficient);
    }
    let r = group.rank() as u32;
    if a.is_one() && b.is_one() {
        let records = enumerate_solutions(group, search)?;
        let bound = theorem_bound(r);
        let primitive = records.iter().filter(|rec| rec.is_primitive).count();
        let within_bound = BigUint::from(primitive) <= bound;
        let constant_case_count = records.iter().filter(|rec| rec.constant_case).count();
        return Ok(VolochReport {
            mode: VolochMode::Unit,
            certificate: None,
            records,
            bound,
            bound_claimed: true,
            within_bound,
            constant_case_count,
        });
    }

    let certificate = ab_power_in_g(a, b, group)?;
    let excluded = certificate
        .as_ref()
        .map_or(false, |cert| cert.coprime_to_p);
    let records = enumerate_affine(group, a, b, search)?;
    let bound = theorem_bound(r + 1);
    let within_bound = BigUint::from(records.len()) <= bound;
    let constant_case_count = records.iter().filter(|rec| rec.constant_case).count();
    Ok(VolochReport {
        mode: if excluded {
            VolochMode::Excluded
        } else {
            VolochMode::Bounded
        },
        certificate,
        records,
        bound,
        bound_claimed: !excluded,
        within_bound,
        constant_case_count,
    })
}

/// 31 * 19^r.
pub fn theorem_bound(r: u32) -> BigUint {
    BigUint::from(31u32) * BigUint::from(19u32).pow(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldRef, FieldSpec};
    use crate::group::GroupSpec;
    use crate::parse::parse_ratfunc;

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

    fn exponent_sets(records: &[SolutionRecord]) -> Vec<Vec<i64>> {
        records.iter().map(|r| r.elem.exponents().to_vec()).collect()
    }

    #[test]
    fn gray_walk_changes_one_digit() {
        for (m, r) in [(3u64, 3usize), (5, 2), (13, 1), (7, 3)] {
            let total = (m as u128).pow(r as u32);
            let mut seen = std::collections::HashSet::new();
            let mut prev = gray_digits(0, m, r);
            seen.insert(prev.clone());
            for rank in 1..total {
                let cur = gray_digits(rank, m, r);
                let diffs: Vec<usize> = (0..r).filter(|&j| cur[j] != prev[j]).collect();
                assert_eq!(diffs.len(), 1, "one digit changes per step");
                let j = diffs[0];
                assert_eq!((cur[j] as i64 - prev[j] as i64).abs(), 1);
                assert!(seen.insert(cur.clone()), "tuples never repeat");
                prev = cur;
            }
            assert_eq!(seen.len() as u128, total);
        }
    }

    #[test]
    fn reference_enumeration() {
        let g = reference_group();
        let recs = enumerate_solutions(&g, &SearchBox::new(6, 10_000)).unwrap();
        assert_eq!(exponent_sets(&recs), vec![vec![1], vec![5]]);
        let prim = primitive_filter(&recs);
        assert_eq!(exponent_sets(&prim), vec![vec![1]]);
        assert_eq!(count_coords_not_in_kp(&recs), 1);
        for rec in &recs {
            assert!(rec.x.add(&rec.y).is_one());
        }
    }

    #[test]
    fn f2_enumeration() {
        let f = FieldSpec::prime(2).unwrap();
        let g = GroupSpec::new(&f, vec![(rf("t", &f), rf("1+t", &f))], vec![]).unwrap();
        let recs = enumerate_solutions(&g, &SearchBox::new(4, 10_000)).unwrap();
        assert_eq!(exponent_sets(&recs), vec![vec![1], vec![2], vec![4]]);
        let prim = primitive_filter(&recs);
        assert_eq!(exponent_sets(&prim), vec![vec![1]]);
        assert_eq!(count_coords_not_in_kp(&recs), 1);
    }

    #[test]
    fn squared_group_is_empty() {
        let f = f5();
        let g = GroupSpec::new(&f, vec![(rf("t^2", &f), rf("(1-t)^2", &f))], vec![]).unwrap();
        let recs = enumerate_solutions(&g, &SearchBox::new(6, 10_000)).unwrap();
        assert!(recs.is_empty());
    }

    #[test]
    fn torsion_solution_found() {
        let f = f5();
        let g = GroupSpec::new(
            &f,
            vec![(rf("t", &f), rf("1-t", &f))],
            vec![(FieldElem::from_int(&f, 3), FieldElem::from_int(&f, 3))],
        )
        .unwrap();
        let recs = enumerate_solutions(&g, &SearchBox::new(6, 10_000)).unwrap();
        // exponent 0 with torsion (3, 3), plus the free solutions 1 and 5
        assert_eq!(recs.len(), 3);
        let torsion: Vec<&SolutionRecord> = recs.iter().filter(|r| r.is_torsion).collect();
        assert_eq!(torsion.len(), 1);
        assert_eq!(torsion[0].x, rf("3", &f));
        assert!(!torsion[0].is_primitive);
        assert!(torsion[0].constant_case);
    }

    #[test]
    fn budget_is_enforced() {
        let g = reference_group();
        let err = enumerate_solutions(&g, &SearchBox::new(6, 10)).unwrap_err();
        assert_eq!(
            err,
            SolverError::BudgetExceeded {
                candidates: 13,
                budget: 10
            }
        );
    }

    #[test]
    fn descent_examples() {
        let f = f5();
        let (x, y, t) = kp_descent(&rf("t^5", &f), &rf("(1-t)^5", &f)).unwrap();
        assert_eq!((x, y, t), (rf("t", &f), rf("1-t", &f), 1));

        let (x, y, t) = kp_descent(&rf("t", &f), &rf("1-t", &f)).unwrap();
        assert_eq!((x, y, t), (rf("t", &f), rf("1-t", &f), 0));

        let f2 = FieldSpec::prime(2).unwrap();
        let (_, _, t) = kp_descent(&rf("t^4", &f2), &rf("1+t^4", &f2)).unwrap();
        assert_eq!(t, 2);

        assert_eq!(
            kp_descent(&rf("2", &f), &rf("4", &f)),
            Err(SolverError::ConstantInput)
        );
        assert_eq!(
            kp_descent(&rf("t", &f), &rf("t", &f)),
            Err(SolverError::NotASolution)
        );
    }

    #[test]
    fn ab_power_examples() {
        let f = f5();
        let g = reference_group();
        let one = rf("1", &f);
        let w = ab_power_in_g(&one, &one, &g).unwrap().unwrap();
        assert_eq!((w.n, w.exponents.clone()), (1, vec![0]));
        assert!(w.coprime_to_p);

        let a = rf("1/t^2", &f);
        let b = rf("1/(1-t)^2", &f);
        let w = ab_power_in_g(&a, &b, &g).unwrap().unwrap();
        assert_eq!((w.n, w.exponents.clone()), (1, vec![-2]));

        let none = ab_power_in_g(&rf("t", &f), &one, &g).unwrap();
        assert!(none.is_none());
    }

    #[test]
    fn voloch_modes() {
        let f = f5();
        let g = reference_group();
        let search = SearchBox::new(6, 10_000);

        let unit = solve_voloch(&rf("1", &f), &rf("1", &f), &g, &search).unwrap();
        assert_eq!(unit.mode, VolochMode::Unit);
        assert_eq!(unit.records.len(), 2);
        assert!(unit.within_bound && unit.bound_claimed);

        let excl = solve_voloch(&rf("1/t^2", &f), &rf("1/(1-t)^2", &f), &g, &search).unwrap();
        assert_eq!(excl.mode, VolochMode::Excluded);
        let cert = excl.certificate.as_ref().unwrap();
        assert_eq!((cert.n, cert.exponents.clone()), (1, vec![-2]));
        assert!(cert.coprime_to_p && !excl.bound_claimed);
        // x/t^2 + y/(1-t)^2 = 1 at exponent 3 inside the box
        assert_eq!(exponent_sets(&excl.records), vec![vec![3]]);

        // constant pairs always admit a certificate: (2,3)^4 = (1,1) in G
        let consts = solve_voloch(&rf("2", &f), &rf("3", &f), &g, &search).unwrap();
        assert_eq!(consts.mode, VolochMode::Excluded);
        assert_eq!(consts.certificate.as_ref().unwrap().n, 4);
        assert!(consts.records.is_empty());
        assert!(consts.within_bound);
        assert_eq!(consts.bound, theorem_bound(2));

        // no power of (t, 1) lies in G: the bounded branch proper
        let bounded = solve_voloch(&rf("t", &f), &rf("1", &f), &g, &search).unwrap();
        assert_eq!(bounded.mode, VolochMode::Bounded);
        assert!(bounded.certificate.is_none());
        assert!(bounded.bound_claimed && bounded.within_bound);
    }

    #[test]
    fn frobenius_closure_within_box() {
        let g = reference_group();
        let recs = enumerate_solutions(&g, &SearchBox::new(6, 10_000)).unwrap();
        let bound = 6i64;
        for rec in &recs {
            let frob = rec.elem.frobenius();
            let (fx, fy) = frob.value();
            assert!(fx.add(&fy).is_one());
            if frob.exponents().iter().all(|e| e.abs() <= bound) {
                assert!(recs.iter().any(|r| r.elem == frob));
            }
        }
    }
}
