//! Hilbert series numerators, h-vectors and brute-force Hilbert functions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

/// Polynomial in `t` with integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntPoly(Vec<i64>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn one() -> Self {
        Self(vec![1])
    }

    /// `1 - t^d`.
    pub fn one_minus_t_pow(d: usize) -> Self {
        if d == 0 {
            return Self::zero();
        }
        let mut c = vec![0; d + 1];
        c[0] = 1;
        c[d] = -1;
        Self(c)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let len = self.0.len().max(other.0.len());
        IntPoly::new((0..len).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![0; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// `t^k * self`.
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![0; k];
        out.extend_from_slice(&self.0);
        IntPoly(out)
    }

    /// Exact division by `(1 - t)`, `None` if `p(1) != 0`.
    pub fn div_one_minus_t(&self) -> Option<IntPoly> {
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        // p = (1 - t) q  <=>  q_k = p_0 + ... + p_k
        let mut q = Vec::with_capacity(self.0.len());
        let mut acc = 0;
        for &c in &self.0 {
            acc += c;
            q.push(acc);
        }
        if q.pop() != Some(0) {
            return None;
        }
        Some(IntPoly::new(q))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            let body = match (k, mag) {
                (0, m) => m.to_string(),
                (1, 1) => "t".to_string(),
                (1, m) => format!("{m}t"),
                (k, 1) => format!("t^{k}"),
                (k, m) => format!("{m}t^{k}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

/// A finite integer sequence indexed from 0 with trailing zeros trimmed.
///
/// Entries are signed: the h-vector of a non-Cohen-Macaulay quotient may
/// have negative entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HilbertVector(Vec<i64>);

impl HilbertVector {
    pub fn new(mut entries: Vec<i64>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        Self(entries)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn get(&self, k: usize) -> i64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }
}

impl From<IntPoly> for HilbertVector {
    fn from(p: IntPoly) -> Self {
        HilbertVector::new(p.0)
    }
}

/// Numerator `K(t)` of the Hilbert series `K(t) / (1-t)^n` of `R/I`.
///
/// Pivot splitting on the variable occurring in the most generators:
/// `K(I) = K(I + (x)) + t * K(I : x)`.
pub fn hilbert_numerator(i: &MonomialIdeal) -> IntPoly {
    numerator_rec(i.n(), i.generators().to_vec())
}

fn numerator_rec(n: usize, gens: Vec<Monomial>) -> IntPoly {
    if gens.is_empty() {
        return IntPoly::one();
    }
    if gens.iter().any(Monomial::is_one) {
        return IntPoly::zero();
    }
    let mut counts = vec![0usize; n];
    for g in &gens {
        for (k, &e) in g.exponents().iter().enumerate() {
            if e > 0 {
                counts[k] += 1;
            }
        }
    }
    let (pivot, &best) = counts
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .expect("n > 0 when generators exist");
    if best <= 1 {
        // Pairwise coprime generators form a regular sequence.
        return gens.iter().fold(IntPoly::one(), |acc, g| {
            acc.mul(&IntPoly::one_minus_t_pow(g.degree() as usize))
        });
    }
    let x = Monomial::var(n, pivot + 1);
    let with_x = MonomialIdeal::new(n, gens.iter().cloned().chain(std::iter::once(x.clone())))
        .expect("same ambient");
    let colon = MonomialIdeal::new(n, gens.iter().map(|g| g.colon(&x)).collect::<Vec<_>>())
        .expect("same ambient");
    numerator_rec(n, with_x.generators().to_vec())
        .add(&numerator_rec(n, colon.generators().to_vec()).shift(1))
}

/// h-vector `K(t) / (1-t)^c` and its degree (sum of entries).
///
/// The Hilbert series is `K(t) / (1-t)^n = h(t) / (1-t)^(n-c)` when
/// `dim R/I = n - c`; otherwise the division fails.
pub fn h_vector_and_degree(i: &MonomialIdeal, c: usize) -> Result<(HilbertVector, i64)> {
    let n = i.n();
    if c > n {
        return Err(Error::BadParameters(format!(
            "codimension {c} exceeds {n} variables"
        )));
    }
    let mut p = hilbert_numerator(i);
    for _ in 0..c {
        p = p.div_one_minus_t().ok_or(Error::NotDivisible(c))?;
    }
    let h = HilbertVector::from(p);
    let degree = h.sum();
    Ok((h, degree))
}

/// `dim_k (R/I)_d` for `d = 0..=dmax` by enumerating standard monomials.
pub fn brute_hilbert_function(i: &MonomialIdeal, dmax: usize) -> Vec<u64> {
    let n = i.n();
    let gens = i.generators();
    let mut out = Vec::with_capacity(dmax + 1);
    let mut exps = vec![0u32; n];
    for d in 0..=dmax {
        out.push(count_standard(gens, &mut exps, 0, d as u32));
    }
    out
}

fn count_standard(gens: &[Monomial], exps: &mut [u32], var: usize, remaining: u32) -> u64 {
    // Divisibility is preserved by raising exponents, so prune early.
    if gens
        .iter()
        .any(|g| g.exponents().iter().zip(exps.iter()).all(|(a, b)| a <= b))
    {
        return 0;
    }
    if exps.is_empty() {
        return u64::from(remaining == 0);
    }
    if var + 1 == exps.len() {
        exps[var] = remaining;
        let hit = gens
            .iter()
            .any(|g| g.exponents().iter().zip(exps.iter()).all(|(a, b)| a <= b));
        exps[var] = 0;
        return u64::from(!hit);
    }
    let mut total = 0;
    for e in 0..=remaining {
        exps[var] = e;
        total += count_standard(gens, exps, var + 1, remaining - e);
    }
    exps[var] = 0;
    total
}

/// `k`-fold first difference of a sequence (first entries use implicit zeros
/// before index 0).
pub fn iterated_difference(seq: &[i64], k: usize) -> Vec<i64> {
    let mut cur = seq.to_vec();
    for _ in 0..k {
        let mut next = Vec::with_capacity(cur.len());
        let mut prev = 0;
        for &v in &cur {
            next.push(v - prev);
            prev = v;
        }
        cur = next;
    }
    cur
}
