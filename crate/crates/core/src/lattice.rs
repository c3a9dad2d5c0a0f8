//! Smith normal form over Z with unimodular transforms, for generator
//! independence checks and lattice membership (least n with n*w in the
//! row span). Entries are i128; the matrices here are tiny (generators x
//! weighted-valuation columns), and every product is checked.

use num_integer::Integer;

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<i128>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> Vec<i128> {
        (0..self.cols).map(|j| self[(i, j)]).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let (x, y) = (self[(a, j)], self[(b, j)]);
            self[(a, j)] = y;
            self[(b, j)] = x;
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let (x, y) = (self[(i, a)], self[(i, b)]);
            self[(i, a)] = y;
            self[(i, b)] = x;
        }
    }

    /// row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: i128) {
        for j in 0..self.cols {
            let add = c.checked_mul(self[(src, j)]).expect("lattice overflow");
            self[(dst, j)] = self[(dst, j)].checked_add(add).expect("lattice overflow");
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, c: i128) {
        for i in 0..self.rows {
            let add = c.checked_mul(self[(i, src)]).expect("lattice overflow");
            self[(i, dst)] = self[(i, dst)].checked_add(add).expect("lattice overflow");
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)];
        }
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a.checked_mul(other[(k, j)]).expect("lattice overflow");
                    out[(i, j)] = out[(i, j)].checked_add(add).expect("lattice overflow");
                }
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = i128;
    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }
}

/// u * a * v = d with u, v unimodular and d diagonal with a divisibility
/// chain d_1 | d_2 | ... on the nonzero entries.
#[derive(Debug, Clone)]
pub struct Smith {
    pub u: IntMat,
    pub v: IntMat,
    pub d: IntMat,
    pub rank: usize,
}

pub fn smith_normal_form(a: &IntMat) -> Smith {
    let mut d = a.clone();
    let mut u = IntMat::identity(a.rows);
    let mut v = IntMat::identity(a.cols);
    let n = a.rows.min(a.cols);
    let mut k = 0;
    while k < n {
        // find a pivot of minimal absolute value in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        let mut best: i128 = 0;
        for i in k..d.rows {
            for j in k..d.cols {
                let x = d[(i, j)].abs();
                if x != 0 && (pivot.is_none() || x < best) {
                    pivot = Some((i, j));
                    best = x;
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(k, pi);
        u.swap_rows(k, pi);
        d.swap_cols(k, pj);
        v.swap_cols(k, pj);

        // clear the pivot row and column
        let mut dirty = true;
        while dirty {
            dirty = false;
            for i in k + 1..d.rows {
                if d[(i, k)] != 0 {
                    let q = d[(i, k)].div_floor(&d[(k, k)]);
                    if q != 0 {
                        d.add_row(i, k, -q);
                        u.add_row(i, k, -q);
                    }
                    if d[(i, k)] != 0 {
                        d.swap_rows(i, k);
                        u.swap_rows(i, k);
                        dirty = true;
                    }
                }
            }
            for j in k + 1..d.cols {
                if d[(k, j)] != 0 {
                    let q = d[(k, j)].div_floor(&d[(k, k)]);
                    if q != 0 {
                        d.add_col(j, k, -q);
                        v.add_col(j, k, -q);
                    }
                    if d[(k, j)] != 0 {
                        d.swap_cols(j, k);
                        v.swap_cols(j, k);
                        dirty = true;
                    }
                }
            }
        }

        // enforce divisibility d_k | d_ij on the trailing block
        let mut fixed = false;
        'scan: for i in k + 1..d.rows {
            for j in k + 1..d.cols {
                if d[(i, j)] % d[(k, k)] != 0 {
                    d.add_row(k, i, 1);
                    u.add_row(k, i, 1);
                    fixed = true;
                    break 'scan;
                }
            }
        }
        if fixed {
            continue; // redo this pivot with the folded-in row
        }
        if d[(k, k)] < 0 {
            d.negate_row(k);
            u.negate_row(k);
        }
        k += 1;
    }
    let rank = (0..n).take_while(|&i| d[(i, i)] != 0).count();
    Smith { u, v, d, rank }
}

/// The least n >= 1 with n * w in the row span of `a`, together with the
/// exponent vector e satisfying n * w = e * a. Returns None when no
/// multiple of w lies in the span. Requires a to have full row rank.
pub fn least_multiple_in_rowspan(a: &IntMat, w: &[i128]) -> Option<(u64, Vec<i128>)> {
    assert_eq!(w.len(), a.cols);
    let s = smith_normal_form(a);
    assert_eq!(s.rank, a.rows, "matrix must have full row rank");
    // n * w = e * a  <=>  n * (w v) = (e u^-1) d; with f = e u^-1:
    // f_j = n (w v)_j / d_jj for j < rank, and (w v)_j = 0 beyond.
    let wv: Vec<i128> = (0..a.cols)
        .map(|j| {
            (0..a.cols)
                .map(|i| {
                    w[i]
                        .checked_mul(s.v[(i, j)])
                        .expect("lattice overflow")
                })
                .try_fold(0i128, |acc, x| acc.checked_add(x))
                .expect("lattice overflow")
        })
        .collect();
    if wv[s.rank..].iter().any(|&x| x != 0) {
        return None;
    }
    let mut n: i128 = 1;
    for j in 0..s.rank {
        let dj = s.d[(j, j)];
        let g = dj.gcd(&wv[j]);
        n = n.lcm(&(dj / g));
    }
    let f: Vec<i128> = (0..a.rows)
        .map(|j| {
            if j < s.rank {
                n.checked_mul(wv[j]).expect("lattice overflow") / s.d[(j, j)]
            } else {
                0
            }
        })
        .collect();
    // e = f * u
    let e: Vec<i128> = (0..a.rows)
        .map(|j| {
            (0..a.rows)
                .map(|i| f[i].checked_mul(s.u[(i, j)]).expect("lattice overflow"))
                .try_fold(0i128, |acc, x| acc.checked_add(x))
                .expect("lattice overflow")
        })
        .collect();
    Some((n as u64, e))
}

/// A witness integer relation among the rows of a rank-deficient matrix:
/// coefficients c with c * a = 0 and c != 0, normalized so the first
/// nonzero entry is positive.
pub fn dependency_witness(a: &IntMat) -> Option<Vec<i128>> {
    let s = smith_normal_form(a);
    if s.rank == a.rows {
        return None;
    }
    let mut c = s.u.row(s.rank);
    let g = c.iter().fold(0i128, |acc, x| acc.gcd(x));
    if g > 1 {
        for x in c.iter_mut() {
            *x /= g;
        }
    }
    if let Some(first) = c.iter().find(|&&x| x != 0) {
        if *first < 0 {
            for x in c.iter_mut() {
                *x = -*x;
            }
        }
    }
    Some(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(a: &IntMat) -> Smith {
        let s = smith_normal_form(a);
        // u a v == d
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        // diagonal with divisibility chain
        for i in 0..s.d.rows {
            for j in 0..s.d.cols {
                if i != j {
                    assert_eq!(s.d[(i, j)], 0);
                }
            }
        }
        for i in 1..s.rank {
            assert_eq!(s.d[(i, i)] % s.d[(i - 1, i - 1)], 0);
            assert!(s.d[(i, i)] > 0);
        }
        s
    }

    #[test]
    fn snf_known_matrix() {
        let a = IntMat::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let s = check_snf(&a);
        assert_eq!(
            (s.d[(0, 0)], s.d[(1, 1)], s.d[(2, 2)]),
            (2, 2, 156)
        );
    }

    #[test]
    fn snf_rank_deficient() {
        let a = IntMat::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let s = check_snf(&a);
        assert_eq!(s.rank, 1);
        let w = dependency_witness(&a).unwrap();
        assert_eq!(w, vec![2, -1]);
    }

    #[test]
    fn membership_basic() {
        // row span of [[2, 0], [0, 3]]
        let a = IntMat::from_rows(&[vec![2, 0], vec![0, 3]]);
        let (n, e) = least_multiple_in_rowspan(&a, &[1, 0]).unwrap();
        assert_eq!(n, 2);
        assert_eq!(e, vec![1, 0]);
        let (n, e) = least_multiple_in_rowspan(&a, &[1, 1]).unwrap();
        assert_eq!(n, 6);
        assert_eq!(e, vec![3, 2]);
        assert_eq!(least_multiple_in_rowspan(&a, &[0, 0]).unwrap().0, 1);
    }

    #[test]
    fn membership_none_outside_span() {
        let a = IntMat::from_rows(&[vec![1, 1, 0]]);
        assert!(least_multiple_in_rowspan(&a, &[0, 0, 1]).is_none());
        let (n, e) = least_multiple_in_rowspan(&a, &[3, 3, 0]).unwrap();
        assert_eq!((n, e), (1, vec![3]));
    }

    #[test]
    fn membership_verifies_product() {
        let a = IntMat::from_rows(&[vec![1, 0, -1, 0, 1, -1], vec![0, 1, -1, 1, 0, -1]]);
        let w = vec![2, 3, -5, 3, 2, -5];
        let (n, e) = least_multiple_in_rowspan(&a, &w).unwrap();
        for j in 0..a.cols {
            let got: i128 = (0..a.rows).map(|i| e[i] * a[(i, j)]).sum();
            assert_eq!(got, n as i128 * w[j]);
        }
    }
}
