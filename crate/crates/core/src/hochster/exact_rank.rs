//! Exact rank of sparse integer matrices by fraction-free row reduction.
//!
//! Rows are reduced against a table of pivot rows keyed by leading column:
//! `r <- b*r - a*p` where `a`, `b` are the leading entries of `r` and `p`,
//! followed by division by the row content. Scaling a row by a non-zero
//! rational never changes the row space, so the pivot count is the rank over
//! the rationals. Arithmetic starts in `i64` with overflow checks and restarts
//! in arbitrary precision if any intermediate overflows.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// A sparse row: `(column, value)` pairs with strictly increasing columns and
/// no zero values.
pub type SparseRow = Vec<(usize, i64)>;

trait Coefficient: Clone + PartialEq {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn checked_mul(&self, other: &Self) -> Option<Self>;
    fn checked_sub(&self, other: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn is_one(&self) -> bool;
    fn div_exact(&self, other: &Self) -> Self;
}

impl Coefficient for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        i64::checked_mul(*self, *other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        i64::checked_sub(*self, *other)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
}

impl Coefficient for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn is_one(&self) -> bool {
        self.abs() == BigInt::from(1)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
}

/// Rank over the rationals of the matrix whose rows are given.
pub fn exact_rank(rows: &[SparseRow]) -> usize {
    match rank_in::<i64>(rows) {
        Some(r) => r,
        None => rank_in::<BigInt>(rows).expect("arbitrary precision never overflows"),
    }
}

fn rank_in<T: Coefficient>(rows: &[SparseRow]) -> Option<usize> {
    let mut pivots: HashMap<usize, Vec<(usize, T)>> = HashMap::new();
    for row in rows {
        let mut r: Vec<(usize, T)> = row
            .iter()
            .filter(|(_, v)| *v != 0)
            .map(|&(c, v)| (c, T::from_i64(v)))
            .collect();
        loop {
            let Some((lead, a)) = r.first().cloned() else {
                break;
            };
            match pivots.get(&lead) {
                None => {
                    pivots.insert(lead, r);
                    break;
                }
                Some(p) => {
                    let b = p[0].1.clone();
                    r = combine(&r, &a, p, &b)?;
                }
            }
        }
    }
    Some(pivots.len())
}

/// `b*r - a*p`, made primitive.
fn combine<T: Coefficient>(r: &[(usize, T)], a: &T, p: &[(usize, T)], b: &T) -> Option<Vec<(usize, T)>> {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let take_r = j >= p.len() || (i < r.len() && r[i].0 < p[j].0);
        let take_p = i >= r.len() || (j < p.len() && p[j].0 < r[i].0);
        let (col, val) = if take_r {
            let v = b.checked_mul(&r[i].1)?;
            i += 1;
            (r[i - 1].0, v)
        } else if take_p {
            let v = T::from_i64(0).checked_sub(&a.checked_mul(&p[j].1)?)?;
            j += 1;
            (p[j - 1].0, v)
        } else {
            let v = b.checked_mul(&r[i].1)?.checked_sub(&a.checked_mul(&p[j].1)?)?;
            i += 1;
            j += 1;
            (r[i - 1].0, v)
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    let content = out
        .iter()
        .fold(T::from_i64(0), |g, (_, v)| g.gcd(v));
    if !content.is_zero() && !content.is_one() {
        for (_, v) in &mut out {
            *v = v.div_exact(&content);
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: &[&[i64]]) -> Vec<SparseRow> {
        rows.iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(c, &v)| (c, v))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(exact_rank(&dense(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(exact_rank(&dense(&[&[1, 2], &[3, 4]])), 2);
        assert_eq!(exact_rank(&dense(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(exact_rank(&[]), 0);
        // rank 2 over Q, but rank 1 mod 2: no modular shortcut
        assert_eq!(exact_rank(&dense(&[&[1, 1], &[1, -1]])), 2);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 2;
        let rows = dense(&[&[big, big - 1, 3], &[big - 7, big, 5], &[1, 1, 1]]);
        // the i64 path must overflow on these; the answer is still exact
        assert!(rank_in::<i64>(&rows).is_none());
        assert_eq!(exact_rank(&rows), 3);
        let dependent = dense(&[&[big, big - 1], &[2 * (big / 2), 2 * ((big - 1) / 2)]]);
        assert_eq!(exact_rank(&dependent), rank_in::<BigInt>(&dependent).unwrap());
    }

    /// Independent oracle: Gaussian elimination over exact rationals held as
    /// reduced `BigInt` fractions on a dense matrix.
    fn dense_rational_rank(m: &[Vec<i64>]) -> usize {
        use num_bigint::BigInt as Z;
        let mut a: Vec<Vec<(Z, Z)>> = m
            .iter()
            .map(|r| r.iter().map(|&v| (Z::from(v), Z::from(1))).collect())
            .collect();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..a.len()).find(|&i| !Zero::is_zero(&a[i][c].0)) else {
                continue;
            };
            a.swap(rank, p);
            for i in 0..a.len() {
                if i == rank || Zero::is_zero(&a[i][c].0) {
                    continue;
                }
                // row_i -= (a_ic / a_rc) * row_r
                let (fn_, fd) = (&a[i][c].0 * &a[rank][c].1, &a[i][c].1 * &a[rank][c].0);
                for k in 0..cols {
                    let (x, y) = a[i][k].clone();
                    let (u, w) = (&a[rank][k].0 * &fn_, &a[rank][k].1 * &fd);
                    let num = &x * &w - &u * &y;
                    let den = &y * &w;
                    let g = Integer::gcd(&num, &den);
                    a[i][k] = if Zero::is_zero(&num) {
                        (Z::from(0), Z::from(1))
                    } else {
                        (num / &g, den / &g)
                    };
                }
            }
            rank += 1;
        }
        rank
    }

    proptest::proptest! {
        #[test]
        fn agrees_with_dense_rational_elimination(
            m in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 5), 0..7)
        ) {
            let rows: Vec<SparseRow> = m
                .iter()
                .map(|r| r.iter().enumerate().filter(|(_, &v)| v != 0).map(|(c, &v)| (c, v)).collect())
                .collect();
            proptest::prop_assert_eq!(exact_rank(&rows), dense_rational_rank(&m));
        }
    }
}
