//! Exact rank of sparse integer matrices.
//!
//! Rows are eliminated fraction-free: reducing row `r` against pivot row `p`
//! at column `c` computes `p[c] * r - r[c] * p` and then divides by the
//! content of the result. The fast path runs in `i128` with checked
//! arithmetic and restarts in `BigInt` on overflow, so the rank over `Q` is
//! always exact.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A sparse row: `(column, value)` pairs sorted by column, no zero values.
pub type SparseRow = Vec<(usize, i64)>;

trait ExactInt: Clone + PartialEq + Sized {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// `a * x - b * y`, `None` on overflow.
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_unit(&self) -> bool;
}

impl ExactInt for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        self.abs() == 1
    }
}

impl ExactInt for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

/// Rank over `Q` of the matrix whose rows are given.
pub fn rank(rows: &[SparseRow]) -> usize {
    match rank_with::<i128>(rows) {
        Some(r) => r,
        None => rank_with::<BigInt>(rows).expect("BigInt elimination cannot overflow"),
    }
}

fn rank_with<T: ExactInt>(rows: &[SparseRow]) -> Option<usize> {
    let mut pivots: HashMap<usize, Vec<(usize, T)>> = HashMap::new();
    for row in rows {
        let mut cur: Vec<(usize, T)> = row
            .iter()
            .filter(|(_, v)| *v != 0)
            .map(|&(c, v)| (c, T::from_i64(v)))
            .collect();
        while let Some((lead, _)) = cur.first() {
            let Some(p) = pivots.get(lead) else { break };
            cur = eliminate(&cur, p)?;
        }
        if let Some(&(lead, _)) = cur.first() {
            pivots.insert(lead, cur);
        }
    }
    Some(pivots.len())
}

/// `p[lead] * r - r[lead] * p`, normalized by content. Both rows share the
/// same leading column, which cancels.
fn eliminate<T: ExactInt>(r: &[(usize, T)], p: &[(usize, T)]) -> Option<Vec<(usize, T)>> {
    let a = &p[0].1;
    let b = &r[0].1;
    let zero = T::from_i64(0);
    let mut out: Vec<(usize, T)> = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (1, 1);
    while i < r.len() || j < p.len() {
        let (col, v) = match (r.get(i), p.get(j)) {
            (Some((cr, vr)), Some((cp, vp))) if cr == cp => {
                i += 1;
                j += 1;
                (*cr, T::mul_sub(a, vr, b, vp)?)
            }
            (Some((cr, vr)), Some((cp, _))) if cr < cp => {
                i += 1;
                (*cr, T::mul_sub(a, vr, &zero, &zero)?)
            }
            (Some((cr, vr)), None) => {
                i += 1;
                (*cr, T::mul_sub(a, vr, &zero, &zero)?)
            }
            (_, Some((cp, vp))) => {
                j += 1;
                (*cp, T::mul_sub(&zero, &zero, b, vp)?)
            }
            (None, None) => unreachable!(),
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    if let Some(first) = out.first() {
        let mut g = first.1.clone();
        for (_, v) in &out[1..] {
            if g.is_unit() {
                break;
            }
            g = g.gcd(v);
        }
        if !g.is_unit() {
            for (_, v) in &mut out {
                *v = v.div_exact(&g);
            }
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
        assert_eq!(rank(&dense(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&dense(&[&[1, 2], &[3, 4]])), 2);
        assert_eq!(rank(&dense(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(&dense(&[&[2, 4, 6], &[1, 1, 1], &[3, 5, 7]])), 2);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 3;
        let rows = dense(&[&[big, big - 1, 7], &[big - 5, big, 3], &[1, 1, 1]]);
        assert_eq!(rank_with::<BigInt>(&rows), Some(rank(&rows)));
        assert_eq!(rank(&rows), 3);
    }

    #[test]
    fn boundary_of_triangle() {
        // edges 01, 02, 12 -> vertices; rank 2
        let rows = dense(&[&[-1, 1, 0], &[-1, 0, 1], &[0, -1, 1]]);
        assert_eq!(rank(&rows), 2);
    }
}
