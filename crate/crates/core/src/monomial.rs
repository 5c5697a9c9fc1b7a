//! Monomials, monomial ideals and squarefree prime supports.
//!
//! Variables are referred to by 1-based symbols (`x1 .. xn`) whenever a
//! set of variables is exchanged with the outside world (supports, primes,
//! JSON). Exponent vectors are plain 0-based arrays.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A monomial `x1^e1 * ... * xn^en` over a fixed ambient ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Self { exps }
    }

    pub fn one(n: usize) -> Self {
        Self { exps: vec![0; n] }
    }

    /// The variable `x_v` (1-based).
    pub fn var(n: usize, v: usize) -> Self {
        assert!(v >= 1 && v <= n, "variable x{v} outside 1..={n}");
        let mut exps = vec![0; n];
        exps[v - 1] = 1;
        Self { exps }
    }

    /// Squarefree monomial with the given 1-based support.
    pub fn from_support(n: usize, support: &[usize]) -> Self {
        let mut exps = vec![0; n];
        for &v in support {
            assert!(v >= 1 && v <= n, "variable x{v} outside 1..={n}");
            exps[v - 1] = 1;
        }
        Self { exps }
    }

    pub fn from_mask(n: usize, mask: u64) -> Self {
        let exps = (0..n).map(|k| ((mask >> k) & 1) as u32).collect();
        Self { exps }
    }

    pub fn n(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// 1-based symbols of the variables dividing this monomial.
    pub fn support(&self) -> Vec<usize> {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, _)| k + 1)
            .collect()
    }

    /// Support as a bitset (bit `k` is `x_{k+1}`).
    pub fn support_mask(&self) -> u64 {
        debug_assert!(self.n() <= 64);
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |acc, (k, _)| acc | (1 << k))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }

    /// Exact quotient, `None` if `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a - b)
                .collect(),
        ))
    }

    /// `self / gcd(self, m)`.
    pub fn colon(&self, m: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(&m.exps)
                .map(|(&a, &b)| a.saturating_sub(b))
                .collect(),
        )
    }

    /// Same monomial read in a ring with `n` variables (extra variables get
    /// exponent zero; dropped variables must not occur).
    pub fn widen(&self, n: usize) -> Monomial {
        assert!(self.exps[n.min(self.n())..].iter().all(|&e| e == 0));
        let mut exps = self.exps.clone();
        exps.resize(n, 0);
        Monomial::new(exps)
    }
}

impl Ord for Monomial {
    /// Canonical order: total degree, then exponent vectors lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (k, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", k + 1)?;
            } else {
                write!(f, "x{}^{}", k + 1, e)?;
            }
        }
        Ok(())
    }
}

/// A monomial ideal stored by its minimal generators in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "IdealJson", into = "IdealJson")]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`, reducing to minimal generators.
    pub fn new(n: usize, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let gens: Vec<Monomial> = gens.into_iter().collect();
        if let Some(bad) = gens.iter().find(|g| g.n() != n) {
            return Err(Error::MixedAmbient(n, bad.n()));
        }
        Ok(Self {
            n,
            gens: reduce(gens),
        })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            gens: Vec::new(),
        }
    }

    pub fn unit(n: usize) -> Self {
        Self {
            n,
            gens: vec![Monomial::one(n)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `self + other`.
    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        check_ambient(self.n, other.n)?;
        MonomialIdeal::new(self.n, self.gens.iter().chain(&other.gens).cloned())
    }

    /// `self + (m)`.
    pub fn add_generator(&self, m: Monomial) -> Result<MonomialIdeal> {
        check_ambient(self.n, m.n())?;
        MonomialIdeal::new(self.n, self.gens.iter().cloned().chain(std::iter::once(m)))
    }

    /// Generator supports as bitsets; requires a squarefree ideal with `n <= 64`.
    pub fn support_masks(&self) -> Result<Vec<u64>> {
        if !self.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        if self.n > 64 {
            return Err(Error::TooManyVariables(self.n));
        }
        Ok(self.gens.iter().map(Monomial::support_mask).collect())
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

fn check_ambient(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::MixedAmbient(a, b));
    }
    Ok(())
}

fn reduce(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort();
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    // Ascending canonical order: a divisor always precedes its multiples.
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

/// Minimal generating set of the ideal generated by `gens`.
pub fn minimize(n: usize, gens: impl IntoIterator<Item = Monomial>) -> Result<MonomialIdeal> {
    MonomialIdeal::new(n, gens)
}

/// Intersection via pairwise lcms.
pub fn intersect(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<MonomialIdeal> {
    check_ambient(a.n, b.n)?;
    let lcms = a
        .gens
        .iter()
        .flat_map(|f| b.gens.iter().map(move |g| f.lcm(g)));
    MonomialIdeal::new(a.n, lcms.collect::<Vec<_>>())
}

/// Intersection of a nonempty family of ideals.
pub fn intersect_all<'a>(
    ideals: impl IntoIterator<Item = &'a MonomialIdeal>,
) -> Result<MonomialIdeal> {
    let mut iter = ideals.into_iter();
    let first = iter.next().ok_or(Error::EmptySupport)?.clone();
    iter.try_fold(first, |acc, next| intersect(&acc, next))
}

/// `I : (m)`.
pub fn colon_monomial(i: &MonomialIdeal, m: &Monomial) -> Result<MonomialIdeal> {
    check_ambient(i.n, m.n())?;
    MonomialIdeal::new(i.n, i.gens.iter().map(|g| g.colon(m)).collect::<Vec<_>>())
}

/// A set of `c`-subsets of `[n]`: the minimal primes of an equidimensional
/// squarefree ideal of height `c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SupportJson", into = "SupportJson")]
pub struct PrimeSupport {
    n: usize,
    c: usize,
    members: BTreeSet<Vec<usize>>,
}

impl PrimeSupport {
    pub fn new(n: usize, c: usize, members: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for mut m in members {
            m.sort_unstable();
            m.dedup();
            if m.len() != c {
                return Err(Error::InvalidSupport(format!(
                    "{m:?} does not have {c} elements"
                )));
            }
            if m.iter().any(|&v| v == 0 || v > n) {
                return Err(Error::InvalidSupport(format!("{m:?} not inside [1, {n}]")));
            }
            if !set.insert(m.clone()) {
                return Err(Error::InvalidSupport(format!("{m:?} listed twice")));
            }
        }
        Ok(Self { n, c, members: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn members(&self) -> &BTreeSet<Vec<usize>> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Symbols occurring in some member.
    pub fn symbols(&self) -> BTreeSet<usize> {
        self.members.iter().flatten().copied().collect()
    }

    /// Members avoiding `h`.
    pub fn colon(&self, h: usize) -> PrimeSupport {
        PrimeSupport {
            n: self.n,
            c: self.c,
            members: self
                .members
                .iter()
                .filter(|m| !m.contains(&h))
                .cloned()
                .collect(),
        }
    }
}

/// Ideal JSON: exponent vectors, or 1-based supports for squarefree input.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdealJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub supports: Option<Vec<Vec<usize>>>,
}

impl TryFrom<IdealJson> for MonomialIdeal {
    type Error = Error;
    fn try_from(j: IdealJson) -> Result<Self> {
        let mut gens = Vec::new();
        for e in j.generators.unwrap_or_default() {
            if e.len() != j.n {
                return Err(Error::MixedAmbient(j.n, e.len()));
            }
            gens.push(Monomial::new(e));
        }
        for s in j.supports.unwrap_or_default() {
            if s.iter().any(|&v| v == 0 || v > j.n) {
                return Err(Error::InvalidSupport(format!(
                    "{s:?} not inside [1, {}]",
                    j.n
                )));
            }
            gens.push(Monomial::from_support(j.n, &s));
        }
        MonomialIdeal::new(j.n, gens)
    }
}

impl From<MonomialIdeal> for IdealJson {
    fn from(i: MonomialIdeal) -> Self {
        IdealJson {
            n: i.n,
            generators: Some(i.gens.into_iter().map(|g| g.exps).collect()),
            supports: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SupportJson {
    pub n: usize,
    pub c: usize,
    pub primes: Vec<Vec<usize>>,
}

impl TryFrom<SupportJson> for PrimeSupport {
    type Error = Error;
    fn try_from(j: SupportJson) -> Result<Self> {
        PrimeSupport::new(j.n, j.c, j.primes)
    }
}

impl From<PrimeSupport> for SupportJson {
    fn from(s: PrimeSupport) -> Self {
        SupportJson {
            n: s.n,
            c: s.c,
            primes: s.members.into_iter().collect(),
        }
    }
}

/// `I_S`: the intersection of the coordinate primes listed in `s`.
pub fn ideal_from_support(s: &PrimeSupport) -> Result<MonomialIdeal> {
    if s.is_empty() {
        return Err(Error::EmptySupport);
    }
    let primes: Vec<MonomialIdeal> = s
        .members
        .iter()
        .map(|m| MonomialIdeal::new(s.n, m.iter().map(|&v| Monomial::var(s.n, v))))
        .collect::<Result<_>>()?;
    intersect_all(&primes)
}

/// Minimal primes of a squarefree ideal, each as a sorted list of 1-based
/// symbols. These are the minimal vertex covers of the generator supports.
pub fn minimal_primes(i: &MonomialIdeal) -> Result<Vec<Vec<usize>>> {
    let masks = i.support_masks()?;
    Ok(minimal_cover_masks(&masks)
        .into_iter()
        .map(mask_to_symbols)
        .collect())
}

/// Minimal transversals of a family of nonempty bitsets, sorted by
/// (cardinality, mask).
pub(crate) fn minimal_cover_masks(edges: &[u64]) -> Vec<u64> {
    if edges.is_empty() {
        return vec![0];
    }
    if edges.contains(&0) {
        // The unit ideal has no primes.
        return Vec::new();
    }
    let mut found: Vec<u64> = Vec::new();
    let mut seen: HashSet<u64> = HashSet::new();
    let mut stack = vec![0u64];
    while let Some(cover) = stack.pop() {
        if !seen.insert(cover) {
            continue;
        }
        // Any cover containing a known transversal cannot be minimal.
        if found.iter().any(|&f| f & !cover == 0) {
            continue;
        }
        match edges.iter().find(|&&e| e & cover == 0) {
            None => found.push(cover),
            Some(&e) => {
                let mut bits = e;
                while bits != 0 {
                    let b = bits & bits.wrapping_neg();
                    bits ^= b;
                    stack.push(cover | b);
                }
            }
        }
    }
    found.sort_by_key(|m| (m.count_ones(), *m));
    let mut minimal: Vec<u64> = Vec::with_capacity(found.len());
    for m in found {
        if !minimal.iter().any(|&k| k & !m == 0) {
            minimal.push(m);
        }
    }
    minimal
}

pub(crate) fn mask_to_symbols(mask: u64) -> Vec<usize> {
    (0..64)
        .filter(|k| (mask >> k) & 1 == 1)
        .map(|k| k + 1)
        .collect()
}

pub(crate) fn symbols_to_mask(symbols: &[usize]) -> u64 {
    symbols.iter().fold(0, |acc, &v| acc | (1 << (v - 1)))
}

/// Height (minimal prime size) and whether all minimal primes share it.
pub fn height_and_equidimensional(i: &MonomialIdeal) -> Result<(usize, bool)> {
    if i.is_zero() || i.is_unit() {
        return Err(Error::TrivialIdeal);
    }
    let primes = minimal_primes(i)?;
    let height = primes.iter().map(Vec::len).min().unwrap_or(0);
    let equidim = primes.iter().all(|p| p.len() == height);
    Ok((height, equidim))
}

/// Height of the ideal generated by arbitrary monomials (via its radical).
pub fn monomial_height(gens: &[Monomial]) -> usize {
    let masks: Vec<u64> = gens.iter().map(Monomial::support_mask).collect();
    minimal_cover_masks(&masks)
        .first()
        .map_or(0, |m| m.count_ones() as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(n: usize, supports: &[&[usize]]) -> MonomialIdeal {
        MonomialIdeal::new(n, supports.iter().map(|s| Monomial::from_support(n, s))).unwrap()
    }

    fn example_support() -> PrimeSupport {
        PrimeSupport::new(
            6,
            2,
            [[1, 2], [3, 4], [5, 6], [4, 6], [1, 4], [1, 6]].map(Vec::from),
        )
        .unwrap()
    }

    #[test]
    fn minimize_drops_multiples() {
        let i = sq(2, &[&[1], &[1, 2]]);
        assert_eq!(i, sq(2, &[&[1]]));
        let ex = sq(6, &[&[2, 4, 6], &[1, 4, 6], &[1, 3, 6], &[1, 4, 5]]);
        assert_eq!(ex.generators().len(), 4);
        assert!(minimize(3, Vec::new()).unwrap().is_zero());
    }

    #[test]
    fn mixed_ambient_rejected() {
        let err = MonomialIdeal::new(2, vec![Monomial::one(2), Monomial::one(3)]).unwrap_err();
        assert_eq!(err, Error::MixedAmbient(2, 3));
        assert!(intersect(&MonomialIdeal::zero(2), &MonomialIdeal::zero(3)).is_err());
    }

    #[test]
    fn intersection_of_three_points() {
        // x1=1, x2=2, y1=3, y2=4
        let p = |a, b| sq(4, &[&[a], &[b]]);
        let i = intersect_all(&[p(1, 3), p(2, 3), p(1, 4)]).unwrap();
        assert_eq!(i, sq(4, &[&[1, 2], &[1, 3], &[3, 4]]));
        assert_eq!(intersect(&i, &i).unwrap(), i);
    }

    #[test]
    fn example_ideal_from_support() {
        let i = ideal_from_support(&example_support()).unwrap();
        assert_eq!(i, sq(6, &[&[2, 4, 6], &[1, 4, 6], &[1, 3, 6], &[1, 4, 5]]));
        let single = PrimeSupport::new(2, 2, [vec![1, 2]]).unwrap();
        assert_eq!(ideal_from_support(&single).unwrap(), sq(2, &[&[1], &[2]]));
        let skew = PrimeSupport::new(4, 2, [vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(
            ideal_from_support(&skew).unwrap(),
            sq(4, &[&[1, 3], &[1, 4], &[2, 3], &[2, 4]])
        );
        let empty = PrimeSupport::new(2, 2, Vec::<Vec<usize>>::new()).unwrap();
        assert_eq!(ideal_from_support(&empty), Err(Error::EmptySupport));
    }

    #[test]
    fn colon_examples() {
        let i = sq(3, &[&[1, 2], &[3]]);
        assert_eq!(
            colon_monomial(&i, &Monomial::var(3, 1)).unwrap(),
            sq(3, &[&[2], &[3]])
        );
        assert_eq!(colon_monomial(&i, &Monomial::one(3)).unwrap(), i);

        let u = example_support();
        let lhs = colon_monomial(&ideal_from_support(&u).unwrap(), &Monomial::var(6, 1)).unwrap();
        let rhs = ideal_from_support(&u.colon(1)).unwrap();
        assert_eq!(lhs, rhs);
        let expected = PrimeSupport::new(6, 2, [vec![3, 4], vec![5, 6], vec![4, 6]]).unwrap();
        assert_eq!(u.colon(1), expected);
    }

    #[test]
    fn primes_and_height() {
        let skew = sq(4, &[&[1, 3], &[1, 4], &[2, 3], &[2, 4]]);
        assert_eq!(minimal_primes(&skew).unwrap(), vec![vec![1, 2], vec![3, 4]]);
        let ex = ideal_from_support(&example_support()).unwrap();
        let primes: BTreeSet<Vec<usize>> = minimal_primes(&ex).unwrap().into_iter().collect();
        assert_eq!(&primes, example_support().members());
        assert_eq!(
            minimal_primes(&sq(2, &[&[1], &[2]])).unwrap(),
            vec![vec![1, 2]]
        );

        assert_eq!(height_and_equidimensional(&ex).unwrap(), (2, true));
        assert_eq!(
            height_and_equidimensional(&sq(3, &[&[1, 2, 3]])).unwrap(),
            (1, true)
        );
        assert_eq!(
            height_and_equidimensional(&sq(3, &[&[1], &[2, 3]])).unwrap(),
            (2, true)
        );
        assert_eq!(
            height_and_equidimensional(&sq(3, &[&[1, 2], &[1, 3]])).unwrap(),
            (1, false)
        );
    }

    #[test]
    fn not_squarefree_rejected() {
        let i = MonomialIdeal::new(2, vec![Monomial::new(vec![2, 0])]).unwrap();
        assert_eq!(minimal_primes(&i), Err(Error::NotSquarefree));
    }

    #[test]
    fn support_validation() {
        assert!(PrimeSupport::new(3, 2, [vec![1, 2, 3]]).is_err());
        assert!(PrimeSupport::new(3, 2, [vec![1, 4]]).is_err());
        assert!(PrimeSupport::new(3, 2, [vec![1, 2], vec![2, 1]]).is_err());
    }

    #[test]
    fn canonical_order_is_degree_then_lex() {
        let a = Monomial::new(vec![0, 0, 2]);
        let b = Monomial::new(vec![1, 0, 0]);
        assert!(b < a);
        let c = Monomial::new(vec![0, 1, 1]);
        assert!(a < c);
        assert_eq!(Monomial::new(vec![1, 0, 2]).to_string(), "x1*x3^2");
    }
}
