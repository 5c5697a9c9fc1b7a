//! Tower sets, the `sigma` normalization to left segments, Hilbert vectors
//! of left segments, degree scaling and tower-scheme ideals.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{intersect_all, Monomial, MonomialIdeal};
use crate::series::HilbertVector;

/// A point of `Z_+^c`.
pub type Point = Vec<u32>;

/// Finite subset of `Z_+^c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PointSetJson", into = "PointSetJson")]
pub struct PointSet {
    c: usize,
    points: BTreeSet<Point>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointSetJson {
    pub c: usize,
    pub points: Vec<Point>,
}

impl TryFrom<PointSetJson> for PointSet {
    type Error = Error;
    fn try_from(j: PointSetJson) -> Result<Self> {
        PointSet::new(j.c, j.points)
    }
}

impl From<PointSet> for PointSetJson {
    fn from(p: PointSet) -> Self {
        PointSetJson {
            c: p.c,
            points: p.points.into_iter().collect(),
        }
    }
}

impl PointSet {
    pub fn new(c: usize, points: impl IntoIterator<Item = Point>) -> Result<Self> {
        if c == 0 {
            return Err(Error::InvalidPointSet("dimension must be positive".into()));
        }
        let mut set = BTreeSet::new();
        for p in points {
            if p.len() != c {
                return Err(Error::InvalidPointSet(format!(
                    "{p:?} does not have {c} coordinates"
                )));
            }
            if p.contains(&0) {
                return Err(Error::InvalidPointSet(format!(
                    "{p:?} has a non-positive coordinate"
                )));
            }
            set.insert(p);
        }
        Ok(Self { c, points: set })
    }

    /// Point set inside `(Z_+^c)*`: every tuple has pairwise distinct entries.
    pub fn new_starred(c: usize, points: impl IntoIterator<Item = Point>) -> Result<Self> {
        let set = Self::new(c, points)?;
        if let Some(bad) = set.points.iter().find(|p| !has_distinct_coords(p)) {
            return Err(Error::InvalidPointSet(format!(
                "{bad:?} repeats a coordinate"
            )));
        }
        Ok(set)
    }

    pub fn empty(c: usize) -> Self {
        Self {
            c,
            points: BTreeSet::new(),
        }
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn is_starred(&self) -> bool {
        self.points.iter().all(|p| has_distinct_coords(p))
    }

    pub fn points(&self) -> &BTreeSet<Point> {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[u32]) -> bool {
        self.points.contains(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Point> {
        self.points.iter()
    }

    /// Values of coordinate `axis` (0-based), i.e. `pi_{axis+1}(T)`.
    pub fn projection(&self, axis: usize) -> BTreeSet<u32> {
        self.points.iter().map(|p| p[axis]).collect()
    }

    /// All coordinate values.
    pub fn symbols(&self) -> BTreeSet<u32> {
        self.points.iter().flatten().copied().collect()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.points.is_subset(&other.points)
    }

    /// Points with no coordinate equal to `h`.
    pub fn colon(&self, h: u32) -> PointSet {
        PointSet {
            c: self.c,
            points: self
                .points
                .iter()
                .filter(|p| !p.contains(&h))
                .cloned()
                .collect(),
        }
    }

    /// `T_j = { i : (i, j) in T }` for `c = 2`.
    pub fn column(&self, j: u32) -> BTreeSet<u32> {
        debug_assert_eq!(self.c, 2);
        self.points
            .iter()
            .filter(|p| p[1] == j)
            .map(|p| p[0])
            .collect()
    }

    /// `T^i = { j : (i, j) in T }` for `c = 2`.
    pub fn row(&self, i: u32) -> BTreeSet<u32> {
        debug_assert_eq!(self.c, 2);
        self.points
            .iter()
            .filter(|p| p[0] == i)
            .map(|p| p[1])
            .collect()
    }

    /// Apply a relabeling to every coordinate; unmapped values are kept.
    pub fn relabel(&self, map: &BTreeMap<u32, u32>) -> Result<PointSet> {
        let points = self.points.iter().map(|p| {
            p.iter()
                .map(|v| *map.get(v).unwrap_or(v))
                .collect::<Point>()
        });
        PointSet::new(self.c, points)
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        PointSet {
            c: self.c,
            points: self.points.union(&other.points).cloned().collect(),
        }
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        PointSet {
            c: self.c,
            points: self.points.difference(&other.points).cloned().collect(),
        }
    }
}

fn has_distinct_coords(p: &[u32]) -> bool {
    p.iter().enumerate().all(|(k, a)| !p[k + 1..].contains(a))
}

/// Which end of the tuple is fixed when slicing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `T_alpha = { gamma : (gamma, alpha) in T }`: `alpha` is a suffix.
    Lower,
    /// `T^alpha = { gamma : (alpha, gamma) in T }`: `alpha` is a prefix.
    Upper,
}

pub fn slice(t: &PointSet, tail: &[u32], side: Side) -> Result<PointSet> {
    let c = t.c;
    if tail.is_empty() || tail.len() >= c {
        return Err(Error::BadTailLength {
            got: tail.len(),
            dim: c,
        });
    }
    let k = tail.len();
    let pts = t.points.iter().filter_map(|p| match side {
        Side::Lower if &p[c - k..] == tail => Some(p[..c - k].to_vec()),
        Side::Upper if &p[..k] == tail => Some(p[k..].to_vec()),
        _ => None,
    });
    PointSet::new(c - k, pts)
}

fn lower_slices(t: &PointSet, k: usize) -> BTreeMap<&[u32], BTreeSet<&[u32]>> {
    let c = t.c;
    let mut out: BTreeMap<&[u32], BTreeSet<&[u32]>> = BTreeMap::new();
    for p in &t.points {
        out.entry(&p[c - k..]).or_default().insert(&p[..c - k]);
    }
    out
}

fn strictly_below(a: &[u32], b: &[u32]) -> bool {
    a != b && a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Nested-slice condition: for every suffix length `t` and occurring tails
/// `alpha < beta`, `T_alpha` contains `T_beta`.
pub fn is_tower_set(t: &PointSet) -> bool {
    for k in 1..t.c {
        let slices = lower_slices(t, k);
        for (a, sa) in &slices {
            for (b, sb) in &slices {
                if strictly_below(a, b) && !sb.is_subset(sa) {
                    return false;
                }
            }
        }
    }
    true
}

/// Downward-closed finite subset of `Z_+^c` with cached generators and size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeftSegment {
    #[serde(rename = "points")]
    set: PointSet,
    generators: Vec<Point>,
    size: Vec<u32>,
}

impl LeftSegment {
    pub fn new(set: PointSet) -> Result<Self> {
        if !is_left_segment(&set) {
            return Err(Error::NotLeftSegment);
        }
        let generators = left_segment_generators(&set);
        let size = segment_size(&set);
        Ok(Self {
            set,
            generators,
            size,
        })
    }

    /// The left segment generated by `gens`.
    pub fn generated_by(c: usize, gens: &[Point]) -> Result<Self> {
        let mut points = BTreeSet::new();
        for g in gens {
            if g.len() != c || g.contains(&0) {
                return Err(Error::InvalidPointSet(format!("bad generator {g:?}")));
            }
            let mut cur = vec![1u32; c];
            loop {
                points.insert(cur.clone());
                // odometer over the box [1, g]
                let mut k = 0;
                while k < c {
                    if cur[k] < g[k] {
                        cur[k] += 1;
                        break;
                    }
                    cur[k] = 1;
                    k += 1;
                }
                if k == c {
                    break;
                }
            }
        }
        LeftSegment::new(PointSet::new(c, points)?)
    }

    pub fn points(&self) -> &PointSet {
        &self.set
    }

    pub fn generators(&self) -> &[Point] {
        &self.generators
    }

    pub fn size(&self) -> &[u32] {
        &self.size
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }
}

pub fn is_left_segment(p: &PointSet) -> bool {
    // Checking the immediate predecessors suffices for downward closure.
    p.points.iter().all(|pt| {
        (0..p.c).all(|k| {
            if pt[k] == 1 {
                return true;
            }
            let mut q = pt.clone();
            q[k] -= 1;
            p.points.contains(&q)
        })
    })
}

/// Maximal elements under the product order.
pub fn left_segment_generators(p: &PointSet) -> Vec<Point> {
    p.points
        .iter()
        .filter(|a| !p.points.iter().any(|b| strictly_below(a, b)))
        .cloned()
        .collect()
}

fn segment_size(p: &PointSet) -> Vec<u32> {
    (0..p.c)
        .map(|k| p.points.iter().map(|q| q[k]).max().unwrap_or(0))
        .collect()
}

/// `T#`: image of `T` under the counting map `sigma`.
pub fn sigma_hash(t: &PointSet) -> Result<LeftSegment> {
    if !is_tower_set(t) {
        return Err(Error::NotTowerSet);
    }
    let c = t.c;
    // Occurring suffixes of each length, for the nonempty-slice counts.
    let suffixes: Vec<BTreeSet<&[u32]>> = (0..=c)
        .map(|k| t.points.iter().map(|p| &p[c - k..]).collect())
        .collect();
    let image: BTreeSet<Point> = t
        .points
        .iter()
        .map(|p| sigma_point(t, p, &suffixes))
        .collect();
    if image.len() != t.len() {
        return Err(Error::InternalInvariantViolation(
            "sigma is not injective".into(),
        ));
    }
    let seg = LeftSegment::new(PointSet::new(c, image)?)
        .map_err(|_| Error::InternalInvariantViolation("T# is not a left segment".into()))?;
    Ok(seg)
}

fn sigma_point(t: &PointSet, p: &[u32], suffixes: &[BTreeSet<&[u32]>]) -> Point {
    let c = t.c;
    let mut out = Vec::with_capacity(c);
    // h_1: members (i, a_2, ..., a_c) with i <= a_1
    let tail = &p[1..];
    let h1 = t
        .points
        .iter()
        .filter(|q| q[0] <= p[0] && &q[1..] == tail)
        .count();
    out.push(h1 as u32);
    // h_j, j >= 2: values i <= a_j such that T_(i, a_{j+1}, ..., a_c) is nonempty
    for j in 1..c {
        let rest = &p[j + 1..];
        let len = c - j;
        let count = suffixes[len]
            .iter()
            .filter(|s| s[0] <= p[j] && &s[1..] == rest)
            .count();
        out.push(count as u32);
    }
    out
}

/// `H_L(i) = |{ alpha in L : v(alpha) = i + c }|`.
pub fn h_vector_of_segment(l: &LeftSegment) -> HilbertVector {
    let c = l.set.c as u32;
    let mut counts: Vec<i64> = Vec::new();
    for p in l.set.iter() {
        let level = (p.iter().sum::<u32>() - c) as usize;
        if counts.len() <= level {
            counts.resize(level + 1, 0);
        }
        counts[level] += 1;
    }
    HilbertVector::new(counts)
}

/// Degrees `d_ij >= 1`, row `i` per coordinate, column `j` per value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DegreeTableJson", into = "DegreeTableJson")]
pub struct DegreeTable {
    rows: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DegreeTableJson {
    pub degrees: Vec<Vec<u32>>,
}

impl TryFrom<DegreeTableJson> for DegreeTable {
    type Error = Error;
    fn try_from(j: DegreeTableJson) -> Result<Self> {
        DegreeTable::new(j.degrees)
    }
}

impl From<DegreeTable> for DegreeTableJson {
    fn from(d: DegreeTable) -> Self {
        DegreeTableJson { degrees: d.rows }
    }
}

impl DegreeTable {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        if rows.iter().flatten().any(|&d| d == 0) {
            return Err(Error::BadParameters("degrees must be positive".into()));
        }
        Ok(Self { rows })
    }

    /// All-ones table covering `size`.
    pub fn ones(size: &[u32]) -> Self {
        Self {
            rows: size.iter().map(|&m| vec![1; m as usize]).collect(),
        }
    }

    /// Constant degree per coordinate.
    pub fn uniform(size: &[u32], per_axis: &[u32]) -> Self {
        Self {
            rows: size
                .iter()
                .zip(per_axis)
                .map(|(&m, &d)| vec![d; m as usize])
                .collect(),
        }
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn get(&self, axis: usize, j: u32) -> u32 {
        self.rows[axis][j as usize - 1]
    }

    fn covers(&self, size: &[u32]) -> bool {
        self.rows.len() >= size.len()
            && size
                .iter()
                .zip(&self.rows)
                .all(|(&m, row)| row.len() >= m as usize)
    }

    fn partial_sum(&self, axis: usize, k: u32) -> u32 {
        self.rows[axis][..k as usize].iter().sum()
    }
}

/// `L_D`: the left segment generated by the partial-sum images of the
/// generators of `l`.
pub fn scale_segment(l: &LeftSegment, d: &DegreeTable) -> Result<LeftSegment> {
    if !d.covers(&l.size) {
        return Err(Error::DegreeTableTooSmall(l.size.clone()));
    }
    let scaled: Vec<Point> = l
        .generators
        .iter()
        .map(|g| {
            g.iter()
                .enumerate()
                .map(|(axis, &k)| d.partial_sum(axis, k))
                .collect()
        })
        .collect();
    LeftSegment::generated_by(l.set.c, &scaled)
}

/// `{(a_1, ..., a_c) : s >= a_1 > ... > a_c >= 1}`.
pub fn star_configuration(s: u32, c: usize) -> Result<PointSet> {
    if c == 0 || c as u32 > s {
        return Err(Error::BadParameters(format!(
            "need 1 <= c <= s, got s = {s}, c = {c}"
        )));
    }
    let mut points = Vec::new();
    let mut cur: Vec<u32> = Vec::with_capacity(c);
    fn rec(s: u32, c: usize, cur: &mut Vec<u32>, out: &mut Vec<Point>) {
        if cur.len() == c {
            out.push(cur.clone());
            return;
        }
        let upper = cur.last().map_or(s, |&l| l - 1);
        let need = (c - cur.len()) as u32;
        for v in need..=upper {
            cur.push(v);
            rec(s, c, cur, out);
            cur.pop();
        }
    }
    rec(s, c, &mut cur, &mut points);
    PointSet::new_starred(c, points)
}

/// One family of forms, indexed by the values of one coordinate.
pub type Family = BTreeMap<u32, Monomial>;

/// `I_T(F_1, ..., F_c)`: the intersection of the complete intersections
/// `(f_{1 a_1}, ..., f_{c a_c})` over `alpha in T`.
pub fn tower_scheme_ideal(t: &PointSet, families: &[Family]) -> Result<MonomialIdeal> {
    if !is_tower_set(t) {
        return Err(Error::NotTowerSet);
    }
    point_scheme_ideal(t, families)
}

/// Intersection of `(f_{1 a_1}, ..., f_{c a_c})` over all points, with the
/// genericity conditions of a tower scheme checked exactly.
pub(crate) fn point_scheme_ideal(t: &PointSet, families: &[Family]) -> Result<MonomialIdeal> {
    let c = t.c;
    if families.len() != c {
        return Err(Error::BadParameters(format!(
            "expected {c} families, got {}",
            families.len()
        )));
    }
    if t.is_empty() {
        return Err(Error::EmptySupport);
    }
    let n = families
        .iter()
        .flat_map(|f| f.values())
        .map(Monomial::n)
        .next()
        .ok_or_else(|| Error::BadParameters("families are empty".into()))?;
    for (axis, fam) in families.iter().enumerate() {
        for v in t.projection(axis) {
            let f = fam.get(&v).ok_or_else(|| {
                Error::BadParameters(format!("family {} has no form for value {v}", axis + 1))
            })?;
            if f.n() != n {
                return Err(Error::MixedAmbient(n, f.n()));
            }
            if f.is_one() {
                return Err(Error::GenericityViolation(format!(
                    "f_{},{v} is a unit",
                    axis + 1
                )));
            }
        }
        let used: Vec<(u32, &Monomial)> = t
            .projection(axis)
            .into_iter()
            .map(|v| (v, &fam[&v]))
            .collect();
        for (k, (a, fa)) in used.iter().enumerate() {
            for (b, fb) in &used[k + 1..] {
                if !fa.is_coprime(fb) {
                    return Err(Error::GenericityViolation(format!(
                        "f_{0},{a} and f_{0},{b} share a variable",
                        axis + 1
                    )));
                }
            }
        }
    }
    let mut components = Vec::with_capacity(t.len());
    for p in t.iter() {
        let forms: Vec<&Monomial> = p
            .iter()
            .enumerate()
            .map(|(axis, v)| &families[axis][v])
            .collect();
        for (k, a) in forms.iter().enumerate() {
            for b in &forms[k + 1..] {
                if !a.is_coprime(b) {
                    return Err(Error::GenericityViolation(format!(
                        "forms at {p:?} are not a regular sequence"
                    )));
                }
            }
        }
        components.push(MonomialIdeal::new(n, forms.into_iter().cloned())?);
    }
    intersect_all(&components)
}

/// `H_X = H_{(T#)_D}` for a tower scheme with degree table `D`.
pub fn tower_h_vector(t: &PointSet, d: &DegreeTable) -> Result<HilbertVector> {
    let hash = sigma_hash(t)?;
    let scaled = scale_segment(&hash, d)?;
    Ok(h_vector_of_segment(&scaled))
}

/// Families of distinct variables: coordinate `axis` value `v` gets its own
/// variable. Returns the families and the number of variables used.
pub fn distinct_variable_families(t: &PointSet) -> (Vec<Family>, usize) {
    let counts: Vec<usize> = (0..t.c).map(|a| t.projection(a).len()).collect();
    let n: usize = counts.iter().sum();
    let mut next = 1;
    let families = (0..t.c)
        .map(|axis| {
            t.projection(axis)
                .into_iter()
                .map(|v| {
                    let m = Monomial::var(n, next);
                    next += 1;
                    (v, m)
                })
                .collect()
        })
        .collect();
    (families, n)
}

/// Families whose form for coordinate `axis`, value `v` is a product of
/// `degree(axis, v)` fresh variables.
pub fn product_families(t: &PointSet, degree: impl Fn(usize, u32) -> u32) -> (Vec<Family>, usize) {
    let n: usize = (0..t.c)
        .flat_map(|a| t.projection(a).into_iter().map(move |v| (a, v)))
        .map(|(a, v)| degree(a, v) as usize)
        .sum();
    let mut next = 1;
    let families = (0..t.c)
        .map(|axis| {
            t.projection(axis)
                .into_iter()
                .map(|v| {
                    let d = degree(axis, v) as usize;
                    let support: Vec<usize> = (next..next + d).collect();
                    next += d;
                    (v, Monomial::from_support(n, &support))
                })
                .collect()
        })
        .collect();
    (families, n)
}
