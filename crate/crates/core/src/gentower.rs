//! Codimension-two generalized tower sets.
//!
//! Points are pairs `(i, j)` with `i` the row and `j` the column; `T_j` is the
//! set of rows in column `j`. Searches compress the occurring symbols to
//! indices below 64 and work with row bitmasks.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{intersect_all, monomial_height, MonomialIdeal, PrimeSupport};
use crate::tower::{is_tower_set, Family, PointSet};

pub const DEFAULT_GTS_CAP: usize = 14;

fn require_plane(s: &PointSet) -> Result<()> {
    if s.c() != 2 {
        return Err(Error::InvalidPointSet(format!(
            "expected pairs, got dimension {}",
            s.c()
        )));
    }
    Ok(())
}

fn columns(t: &PointSet) -> BTreeMap<u32, BTreeSet<u32>> {
    let mut cols: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
    for p in t.iter() {
        cols.entry(p[1]).or_default().insert(p[0]);
    }
    cols
}

/// `F_T(h) = { j in pi_2(T) : T_h strictly inside T_j and (h, j) not in T }`.
pub fn f_boundary(t: &PointSet, h: u32) -> Result<BTreeSet<u32>> {
    require_plane(t)?;
    if !is_tower_set(t) {
        return Err(Error::NotTowerSet);
    }
    let cols = columns(t);
    let out = boundary_from_columns(t, &cols, h)?;
    if let Some(j) = out.iter().find(|&&j| j >= h) {
        return Err(Error::InternalInvariantViolation(format!(
            "F_T({h}) contains {j} >= {h}"
        )));
    }
    Ok(out)
}

fn boundary_from_columns(
    t: &PointSet,
    cols: &BTreeMap<u32, BTreeSet<u32>>,
    h: u32,
) -> Result<BTreeSet<u32>> {
    let th = cols.get(&h).ok_or(Error::BadColumn(h))?;
    Ok(cols
        .iter()
        .filter(|(j, tj)| th.len() < tj.len() && th.is_subset(tj) && !t.contains(&[h, **j]))
        .map(|(j, _)| *j)
        .collect())
}

/// Every two members are linked by a third member meeting both (the third
/// may be one of the two).
pub fn is_connected_sets<T: Ord>(members: &[BTreeSet<T>]) -> bool {
    members.iter().all(|a| {
        members.iter().all(|b| {
            members
                .iter()
                .any(|c| !a.is_disjoint(c) && !b.is_disjoint(c))
        })
    })
}

pub fn is_connected_support(u: &PrimeSupport) -> bool {
    let members: Vec<BTreeSet<usize>> = u
        .members()
        .iter()
        .map(|m| m.iter().copied().collect())
        .collect();
    is_connected_sets(&members)
}

/// Connectivity of the forgetful image.
pub fn is_connected_points(s: &PointSet) -> bool {
    let members: Vec<BTreeSet<u32>> = s.iter().map(|p| p.iter().copied().collect()).collect();
    is_connected_sets(&members)
}

/// A generalized tower set `S = T ∪ S0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GtsJson", into = "GtsJson")]
pub struct GtsDecomposition {
    s: PointSet,
    t: PointSet,
    s0: PointSet,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GtsJson {
    /// Optional on input; checked against `T ∪ S0` when present.
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    pub s: Option<PointSet>,
    #[serde(rename = "T")]
    pub t: PointSet,
    #[serde(rename = "S0")]
    pub s0: PointSet,
}

impl TryFrom<GtsJson> for GtsDecomposition {
    type Error = Error;
    fn try_from(j: GtsJson) -> Result<Self> {
        let d = GtsDecomposition::new(j.t, j.s0)?;
        if j.s.is_some_and(|s| s != d.s) {
            return Err(Error::InvalidPointSet("S differs from T ∪ S0".into()));
        }
        Ok(d)
    }
}

impl From<GtsDecomposition> for GtsJson {
    fn from(d: GtsDecomposition) -> Self {
        GtsJson {
            s: Some(d.s),
            t: d.t,
            s0: d.s0,
        }
    }
}

impl GtsDecomposition {
    pub fn new(t: PointSet, s0: PointSet) -> Result<Self> {
        require_plane(&t)?;
        require_plane(&s0)?;
        if let Some(p) = t.iter().find(|p| s0.contains(p)) {
            return Err(Error::InvalidPointSet(format!(
                "{p:?} lies in both T and S0"
            )));
        }
        let s = t.union(&s0);
        if !s.is_starred() {
            return Err(Error::InvalidPointSet(
                "points must have distinct coordinates".into(),
            ));
        }
        Ok(Self { s, t, s0 })
    }

    pub fn s(&self) -> &PointSet {
        &self.s
    }

    pub fn t(&self) -> &PointSet {
        &self.t
    }

    pub fn s0(&self) -> &PointSet {
        &self.s0
    }

    /// `(T:h) ∪ (S0:h)`.
    pub fn colon(&self, h: u32) -> Result<GtsDecomposition> {
        GtsDecomposition::new(self.t.colon(h), self.s0.colon(h))
    }
}

/// Why a decomposition is not a generalized tower set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum GtsFailure {
    EmptyTower,
    Disconnected,
    NotTower,
    RowNotFresh { point: [u32; 2] },
    ColumnNotShared { point: [u32; 2] },
    MissingClosure { point: [u32; 2], needed: [u32; 2] },
}

impl std::fmt::Display for GtsFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GtsFailure::EmptyTower => write!(f, "T is empty"),
            GtsFailure::Disconnected => write!(f, "S is not connected"),
            GtsFailure::NotTower => write!(f, "T is not a tower set"),
            GtsFailure::RowNotFresh { point } => {
                write!(f, "row of {point:?} occurs in T")
            }
            GtsFailure::ColumnNotShared { point } => {
                write!(f, "column of {point:?} is not both a row and a column of T")
            }
            GtsFailure::MissingClosure { point, needed } => {
                write!(f, "{point:?} in S0 requires {needed:?} in S0")
            }
        }
    }
}

/// Checks the four conditions in order and reports the first failure.
pub fn check_gts(d: &GtsDecomposition) -> std::result::Result<(), GtsFailure> {
    if d.t.is_empty() {
        return Err(GtsFailure::EmptyTower);
    }
    if !is_connected_points(&d.s) {
        return Err(GtsFailure::Disconnected);
    }
    if !is_tower_set(&d.t) {
        return Err(GtsFailure::NotTower);
    }
    let rows = d.t.projection(0);
    let cols = d.t.projection(1);
    for p in d.s0.iter() {
        let (i, j) = (p[0], p[1]);
        if rows.contains(&i) || cols.contains(&i) {
            return Err(GtsFailure::RowNotFresh { point: [i, j] });
        }
        if !(rows.contains(&j) && cols.contains(&j)) {
            return Err(GtsFailure::ColumnNotShared { point: [i, j] });
        }
    }
    let tcols = columns(&d.t);
    for p in d.s0.iter() {
        let (i, j) = (p[0], p[1]);
        let boundary = boundary_from_columns(&d.t, &tcols, j).expect("column checked above");
        for h in boundary {
            if !d.s0.contains(&[i, h]) {
                return Err(GtsFailure::MissingClosure {
                    point: [i, j],
                    needed: [i, h],
                });
            }
        }
    }
    Ok(())
}

pub fn is_generalized_tower_set(d: &GtsDecomposition) -> bool {
    check_gts(d).is_ok()
}

/// Pairs over compressed symbols `0..k`, `k <= 64`.
struct Compressed {
    symbols: Vec<u32>,
    pairs: Vec<(usize, usize)>,
}

impl Compressed {
    fn from_pairs(pairs: &[(u32, u32)]) -> Result<Self> {
        let symbols: Vec<u32> = pairs
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if symbols.len() > 64 {
            return Err(Error::TooManyVariables(symbols.len()));
        }
        let index = |v: u32| symbols.binary_search(&v).expect("symbol collected");
        let pairs = pairs.iter().map(|&(a, b)| (index(a), index(b))).collect();
        Ok(Self { symbols, pairs })
    }
}

/// Label-free data of one candidate split `S0 = rows in X`.
struct Split {
    x: u64,
    /// `(a, b)`: column `a` must receive a smaller label than column `b`.
    before: Vec<(usize, usize)>,
}

/// All splits of `pairs` satisfying conditions 3 and 4 whose tower part has
/// columns forming an inclusion chain. Connectivity is not checked here.
fn valid_splits(pairs: &[(usize, usize)], k: usize) -> Vec<Split> {
    let mut col = vec![0u64; k];
    let mut rows_mask = 0u64;
    let mut cols_mask = 0u64;
    for &(i, j) in pairs {
        col[j] |= 1 << i;
        rows_mask |= 1 << i;
        cols_mask |= 1 << j;
    }
    let free = rows_mask & !cols_mask;
    let mut out = Vec::new();
    let mut x = 0u64;
    loop {
        if let Some(split) = try_split(pairs, &col, rows_mask, x) {
            out.push(split);
        }
        // next submask of `free`, ascending
        if x == free {
            break;
        }
        x = ((x | !free).wrapping_add(1)) & free;
    }
    out
}

fn try_split(pairs: &[(usize, usize)], col: &[u64], rows_mask: u64, x: u64) -> Option<Split> {
    let k = col.len();
    let tc: Vec<u64> = col.iter().map(|c| c & !x).collect();
    let t_rows = rows_mask & !x;
    if t_rows == 0 {
        return None;
    }
    let t_cols: u64 = (0..k).filter(|&j| tc[j] != 0).fold(0, |m, j| m | 1 << j);
    // condition 3 (row freshness is built into the choice of X)
    for &(i, j) in pairs {
        if x >> i & 1 == 1 && (t_cols >> j & 1 == 0 || t_rows >> j & 1 == 0) {
            return None;
        }
    }
    let tcols: Vec<usize> = (0..k).filter(|&j| t_cols >> j & 1 == 1).collect();
    let mut before = Vec::new();
    for (n, &a) in tcols.iter().enumerate() {
        for &b in &tcols[n + 1..] {
            let (ca, cb) = (tc[a], tc[b]);
            if ca == cb {
                continue;
            }
            if ca & cb == cb {
                before.push((a, b));
            } else if ca & cb == ca {
                before.push((b, a));
            } else {
                return None;
            }
        }
    }
    // condition 4
    for &(i, j) in pairs {
        if x >> i & 1 == 0 {
            continue;
        }
        for &h in &tcols {
            let strict = tc[j] & tc[h] == tc[j] && tc[j] != tc[h];
            if strict && tc[h] >> j & 1 == 0 && col[h] >> i & 1 == 0 {
                return None;
            }
        }
    }
    Some(Split { x, before })
}

/// Least `tau` in lexicographic order of `(tau(d_0), tau(d_1), ...)` over
/// bijections of `domain` (indices `0..m`) honoring `before`.
fn lex_least_permutation(m: usize, before: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut preds = vec![Vec::new(); m];
    let mut succs = vec![Vec::new(); m];
    for &(a, b) in before {
        preds[b].push(a);
        succs[a].push(b);
    }
    let mut value = vec![usize::MAX; m];
    let mut used = vec![false; m];
    fn rec(
        p: usize,
        value: &mut [usize],
        used: &mut [bool],
        preds: &[Vec<usize>],
        succs: &[Vec<usize>],
    ) -> bool {
        let m = value.len();
        if p == m {
            return true;
        }
        for v in 0..m {
            if used[v] {
                continue;
            }
            let ok_pred = preds[p]
                .iter()
                .all(|&q| value[q] == usize::MAX || value[q] < v);
            let ok_succ = succs[p]
                .iter()
                .all(|&q| value[q] == usize::MAX || value[q] > v);
            if !ok_pred || !ok_succ {
                continue;
            }
            let free_below = (0..v).filter(|&w| !used[w]).count();
            let free_above = (v + 1..m).filter(|&w| !used[w]).count();
            let open_preds = preds[p].iter().filter(|&&q| value[q] == usize::MAX).count();
            let open_succs = succs[p].iter().filter(|&&q| value[q] == usize::MAX).count();
            if open_preds > free_below || open_succs > free_above {
                continue;
            }
            value[p] = v;
            used[v] = true;
            if rec(p + 1, value, used, preds, succs) {
                return true;
            }
            value[p] = usize::MAX;
            used[v] = false;
        }
        false
    }
    rec(0, &mut value, &mut used, &preds, &succs).then_some(value)
}

/// Finds the decomposition with the fewest `S0` points, ties broken by the
/// lexicographically least `T`.
pub fn find_gts_decomposition(s: &PointSet, cap: usize) -> Result<Option<GtsDecomposition>> {
    require_plane(s)?;
    if s.len() > cap {
        return Err(Error::SizeCapExceeded(format!(
            "{} points, cap {cap}",
            s.len()
        )));
    }
    if s.is_empty() || !s.is_starred() || !is_connected_points(s) {
        return Ok(None);
    }
    let raw: Vec<(u32, u32)> = s.iter().map(|p| (p[0], p[1])).collect();
    let comp = Compressed::from_pairs(&raw)?;
    let mut best: Option<(usize, Vec<Vec<u32>>, u64)> = None;
    for split in valid_splits(&comp.pairs, comp.symbols.len()) {
        // compression preserves order, so the identity labels must already
        // put larger columns first
        if split.before.iter().any(|&(a, b)| a > b) {
            continue;
        }
        let (t, s0): (Vec<_>, Vec<_>) = comp
            .pairs
            .iter()
            .partition(|&&(i, _)| split.x >> i & 1 == 0);
        let t_pts: Vec<Vec<u32>> = t
            .iter()
            .map(|&&(i, j)| vec![comp.symbols[i], comp.symbols[j]])
            .collect();
        let key = (s0.len(), t_pts);
        if best
            .as_ref()
            .is_none_or(|(n, tp, _)| (key.0, &key.1) < (*n, tp))
        {
            best = Some((key.0, key.1, split.x));
        }
    }
    let Some((_, t_pts, x)) = best else {
        return Ok(None);
    };
    let s0_pts = comp
        .pairs
        .iter()
        .filter(|&&(i, _)| x >> i & 1 == 1)
        .map(|&(i, j)| vec![comp.symbols[i], comp.symbols[j]]);
    let d = GtsDecomposition::new(PointSet::new(2, t_pts)?, PointSet::new(2, s0_pts)?)?;
    if let Err(why) = check_gts(&d) {
        return Err(Error::InternalInvariantViolation(format!(
            "search produced an invalid decomposition: {why}"
        )));
    }
    Ok(Some(d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchCaps {
    pub max_symbols: usize,
    pub max_members: usize,
}

impl Default for SearchCaps {
    fn default() -> Self {
        Self {
            max_symbols: 9,
            max_members: 12,
        }
    }
}

/// Domain of the relabeling `tau`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermutationScope {
    /// All of `[n]`.
    Ambient,
    /// Only the column symbols `pi_2(omega(U))`.
    Columns,
}

/// A certificate: orientation of each member and a relabeling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// `(symbol, image)` for every symbol in the permutation domain.
    pub tau: Vec<(u32, u32)>,
    /// `(member, ordered pair)` in canonical member order.
    pub omega: Vec<(Vec<usize>, [u32; 2])>,
    /// `tau(omega(U))`.
    pub image: PointSet,
    /// Present for generalized searches.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<GtsDecomposition>,
}

impl Witness {
    pub fn tau_map(&self) -> BTreeMap<u32, u32> {
        self.tau.iter().copied().collect()
    }
}

fn check_caps(u: &PrimeSupport, caps: SearchCaps) -> Result<()> {
    if u.c() != 2 {
        return Err(Error::BadParameters(format!(
            "expected pairs, got c = {}",
            u.c()
        )));
    }
    let k = u.symbols().len();
    if k > caps.max_symbols || u.len() > caps.max_members {
        return Err(Error::SizeCapExceeded(format!(
            "{k} symbols / {} members, caps {} / {}",
            u.len(),
            caps.max_symbols,
            caps.max_members
        )));
    }
    Ok(())
}

/// Members in canonical order, oriented by `mask`: bit `k` clear keeps the
/// smaller symbol first in member `k`, set puts the larger first.
pub fn orient(u: &PrimeSupport, mask: u64) -> Vec<(Vec<usize>, [u32; 2])> {
    u.members()
        .iter()
        .enumerate()
        .map(|(k, m)| {
            let (a, b) = (m[0] as u32, m[1] as u32);
            let pair = if mask >> k & 1 == 0 { [a, b] } else { [b, a] };
            (m.clone(), pair)
        })
        .collect()
}

fn permutation_domain(
    u: &PrimeSupport,
    scope: PermutationScope,
    oriented: &[(Vec<usize>, [u32; 2])],
) -> Vec<u32> {
    match scope {
        PermutationScope::Ambient => (1..=u.n() as u32).collect(),
        PermutationScope::Columns => oriented
            .iter()
            .map(|(_, p)| p[1])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect(),
    }
}

/// Least relabeling of `domain` honoring `before` (constraints on compressed
/// column indices).
fn least_tau(
    domain: &[u32],
    before: &[(usize, usize)],
    symbols: &[u32],
) -> Option<Vec<(u32, u32)>> {
    let pos = |s: u32| domain.binary_search(&s).expect("columns lie in the domain");
    let constraints: Vec<(usize, usize)> = before
        .iter()
        .map(|&(a, b)| (pos(symbols[a]), pos(symbols[b])))
        .collect();
    let images = lex_least_permutation(domain.len(), &constraints)?;
    Some(
        domain
            .iter()
            .zip(images)
            .map(|(&s, v)| (s, domain[v]))
            .collect(),
    )
}

fn apply_tau(oriented: &[(Vec<usize>, [u32; 2])], tau: &[(u32, u32)]) -> Result<PointSet> {
    let map: BTreeMap<u32, u32> = tau.iter().copied().collect();
    let img = |v: u32| *map.get(&v).unwrap_or(&v);
    PointSet::new(2, oriented.iter().map(|(_, p)| vec![img(p[0]), img(p[1])]))
}

/// Orientation masks, ascending, with the first applicable result; masks are
/// evaluated in parallel but the answer is always the least mask.
fn first_mask<R: Send>(
    members: usize,
    f: impl Fn(u64) -> Option<R> + Sync + Send,
) -> Option<(u64, R)> {
    (0..1u64 << members)
        .into_par_iter()
        .find_map_first(|mask| f(mask).map(|r| (mask, r)))
}

/// Searches orientations (ascending masks) and relabelings (lexicographic)
/// for a tower set `tau(omega(u))`. Returns the first witness.
pub fn is_towerizable(
    u: &PrimeSupport,
    caps: SearchCaps,
    scope: PermutationScope,
) -> Result<Option<Witness>> {
    check_caps(u, caps)?;
    let found = first_mask(u.len(), |mask| {
        let oriented = orient(u, mask);
        let raw: Vec<(u32, u32)> = oriented.iter().map(|(_, p)| (p[0], p[1])).collect();
        let comp = Compressed::from_pairs(&raw).ok()?;
        // with every point in T the only split is X = 0
        let split = try_split(&comp.pairs, &column_masks(&comp), row_mask(&comp), 0)?;
        let domain = permutation_domain(u, scope, &oriented);
        least_tau(&domain, &split.before, &comp.symbols).map(|tau| (oriented, tau))
    });
    let Some((_, (oriented, tau))) = found else {
        return Ok(None);
    };
    let image = apply_tau(&oriented, &tau)?;
    if !is_tower_set(&image) {
        return Err(Error::InternalInvariantViolation(
            "towerizing witness fails".into(),
        ));
    }
    Ok(Some(Witness {
        tau,
        omega: oriented,
        image,
        decomposition: None,
    }))
}

fn column_masks(comp: &Compressed) -> Vec<u64> {
    let mut col = vec![0u64; comp.symbols.len()];
    for &(i, j) in &comp.pairs {
        col[j] |= 1 << i;
    }
    col
}

fn row_mask(comp: &Compressed) -> u64 {
    comp.pairs.iter().fold(0, |m, &(i, _)| m | 1 << i)
}

/// Searches orientations and relabelings for a generalized tower set
/// `tau(omega(u))`; the decomposition is recovered with
/// [`find_gts_decomposition`].
pub fn is_generalized_towerizable(
    u: &PrimeSupport,
    caps: SearchCaps,
    scope: PermutationScope,
) -> Result<Option<Witness>> {
    check_caps(u, caps)?;
    if u.is_empty() || !is_connected_support(u) {
        return Ok(None);
    }
    let found = first_mask(u.len(), |mask| {
        let oriented = orient(u, mask);
        let raw: Vec<(u32, u32)> = oriented.iter().map(|(_, p)| (p[0], p[1])).collect();
        let comp = Compressed::from_pairs(&raw).ok()?;
        let domain = permutation_domain(u, scope, &oriented);
        valid_splits(&comp.pairs, comp.symbols.len())
            .iter()
            .filter_map(|split| least_tau(&domain, &split.before, &comp.symbols))
            .min_by(|a, b| {
                let ia = a.iter().map(|p| p.1);
                let ib = b.iter().map(|p| p.1);
                ia.cmp(ib)
            })
            .map(|tau| (oriented, tau))
    });
    let Some((_, (oriented, tau))) = found else {
        return Ok(None);
    };
    let image = apply_tau(&oriented, &tau)?;
    let cap = image.len().max(DEFAULT_GTS_CAP);
    let d = find_gts_decomposition(&image, cap)?.ok_or_else(|| {
        Error::InternalInvariantViolation("generalized towerizing witness fails".into())
    })?;
    Ok(Some(Witness {
        tau,
        omega: oriented,
        image,
        decomposition: Some(d),
    }))
}

/// `I_S(F_1, F_2)` with the genericity conditions checked exactly.
pub fn generalized_tower_scheme_ideal(
    d: &GtsDecomposition,
    f1: &Family,
    f2: &Family,
) -> Result<MonomialIdeal> {
    if let Err(why) = check_gts(d) {
        return Err(Error::NotGts(why.to_string()));
    }
    let mut forms = Vec::with_capacity(d.s.len());
    let mut n = None;
    for p in d.s.iter() {
        let a = f1.get(&p[0]).ok_or_else(|| {
            Error::BadParameters(format!("first family has no form for {}", p[0]))
        })?;
        let b = f2.get(&p[1]).ok_or_else(|| {
            Error::BadParameters(format!("second family has no form for {}", p[1]))
        })?;
        for f in [a, b] {
            match n {
                None => n = Some(f.n()),
                Some(n) if n != f.n() => return Err(Error::MixedAmbient(n, f.n())),
                _ => {}
            }
        }
        if !a.is_coprime(b) || a.is_one() || b.is_one() {
            return Err(Error::GenericityViolation(format!(
                "forms at {p:?} are not a complete intersection"
            )));
        }
        forms.push((p.clone(), a.clone(), b.clone()));
    }
    let n = n.expect("S is nonempty");
    for (k, (p, a, b)) in forms.iter().enumerate() {
        for (q, c, e) in &forms[k + 1..] {
            let same_set = (p[0] == q[0] && p[1] == q[1]) || (p[0] == q[1] && p[1] == q[0]);
            if same_set {
                continue;
            }
            let quad = [a.clone(), b.clone(), c.clone(), e.clone()];
            if monomial_height(&quad) < 3 {
                return Err(Error::GenericityViolation(format!(
                    "forms at {p:?} and {q:?} generate an ideal of height below 3"
                )));
            }
        }
    }
    let components: Vec<MonomialIdeal> = forms
        .into_iter()
        .map(|(_, a, b)| MonomialIdeal::new(n, [a, b]))
        .collect::<Result<_>>()?;
    intersect_all(&components)
}

/// `phi(S)` as a support over `[n]`.
pub fn forget_order(s: &PointSet, n: usize) -> Result<PrimeSupport> {
    PrimeSupport::new(
        n,
        s.c(),
        s.iter().map(|p| p.iter().map(|&v| v as usize).collect()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{ideal_from_support, Monomial};

    fn ps(pts: &[[u32; 2]]) -> PointSet {
        PointSet::new(2, pts.iter().map(|p| p.to_vec())).unwrap()
    }

    fn support(n: usize, members: &[[usize; 2]]) -> PrimeSupport {
        PrimeSupport::new(n, 2, members.iter().map(|m| m.to_vec())).unwrap()
    }

    fn example_support() -> PrimeSupport {
        support(6, &[[1, 2], [3, 4], [5, 6], [4, 6], [1, 4], [1, 6]])
    }

    fn worked_chain() -> GtsDecomposition {
        GtsDecomposition::new(ps(&[[3, 1], [4, 1], [4, 2], [4, 3], [6, 1]]), ps(&[[5, 3]])).unwrap()
    }

    /// Orientations times every bijection of the domain, in the literal
    /// order, testing the tower predicate directly.
    fn brute_towerizable(u: &PrimeSupport) -> Option<(u64, Vec<u32>)> {
        let n = u.n() as u32;
        for mask in 0..1u64 << u.len() {
            let oriented = orient(u, mask);
            let mut perm: Vec<u32> = (1..=n).collect();
            loop {
                let tau: Vec<(u32, u32)> = (1..=n).zip(perm.iter().copied()).collect();
                if is_tower_set(&apply_tau(&oriented, &tau).unwrap()) {
                    return Some((mask, perm));
                }
                if !next_permutation(&mut perm) {
                    break;
                }
            }
        }
        None
    }

    fn next_permutation(p: &mut [u32]) -> bool {
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
            return false;
        };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }

    #[test]
    fn colon_sets() {
        let u = example_support().colon(1);
        assert_eq!(u, support(6, &[[3, 4], [5, 6], [4, 6]]));
        assert_eq!(example_support().colon(9), example_support());
        assert_eq!(ps(&[[5, 3], [4, 1]]).colon(3), ps(&[[4, 1]]));
    }

    #[test]
    fn boundaries() {
        assert_eq!(
            f_boundary(&ps(&[[2, 1], [4, 1], [4, 3]]), 3).unwrap(),
            [1].into()
        );
        let t = worked_chain().t().clone();
        assert!(f_boundary(&t, 3).unwrap().is_empty());
        assert!(f_boundary(&t, 1).unwrap().is_empty());
        assert_eq!(f_boundary(&t, 7), Err(Error::BadColumn(7)));
    }

    #[test]
    fn connectivity() {
        assert!(is_connected_support(&example_support()));
        assert!(!is_connected_support(&support(4, &[[1, 2], [3, 4]])));
        assert!(is_connected_support(&support(2, &[[1, 2]])));
        // a path of length three: the ends share no neighbor
        assert!(!is_connected_support(&support(
            5,
            &[[1, 2], [2, 3], [3, 4], [4, 5]]
        )));
    }

    #[test]
    fn gts_predicate() {
        assert!(is_generalized_tower_set(&worked_chain()));
        let tower =
            GtsDecomposition::new(ps(&[[2, 1], [3, 1], [3, 2]]), PointSet::empty(2)).unwrap();
        assert!(is_generalized_tower_set(&tower));
        let bad = GtsDecomposition::new(worked_chain().t().clone(), ps(&[[5, 2]])).unwrap();
        assert!(!is_generalized_tower_set(&bad));
        let bad = GtsDecomposition::new(ps(&[[2, 1], [3, 1], [3, 2]]), ps(&[[4, 1]])).unwrap();
        assert_eq!(
            check_gts(&bad),
            Err(GtsFailure::ColumnNotShared { point: [4, 1] })
        );
        let empty = GtsDecomposition::new(PointSet::empty(2), ps(&[[1, 2]])).unwrap();
        assert_eq!(check_gts(&empty), Err(GtsFailure::EmptyTower));
    }

    #[test]
    fn decomposition_search() {
        let d = worked_chain();
        assert_eq!(
            find_gts_decomposition(d.s(), DEFAULT_GTS_CAP).unwrap(),
            Some(d)
        );
        let t = ps(&[[2, 1], [3, 1], [3, 2]]);
        let found = find_gts_decomposition(&t, DEFAULT_GTS_CAP)
            .unwrap()
            .unwrap();
        assert_eq!(found.t(), &t);
        assert!(found.s0().is_empty());
        assert_eq!(
            find_gts_decomposition(&ps(&[[1, 2], [2, 1]]), DEFAULT_GTS_CAP).unwrap(),
            None
        );
        let big = PointSet::new(2, (1..=15).map(|i| vec![i + 1, 1])).unwrap();
        assert!(matches!(
            find_gts_decomposition(&big, DEFAULT_GTS_CAP),
            Err(Error::SizeCapExceeded(_))
        ));
    }

    #[test]
    fn towerizable_examples() {
        let caps = SearchCaps::default();
        assert!(
            is_towerizable(&example_support(), caps, PermutationScope::Ambient)
                .unwrap()
                .is_none()
        );
        let u = support(3, &[[1, 2], [2, 3]]);
        let w = is_towerizable(&u, caps, PermutationScope::Ambient)
            .unwrap()
            .unwrap();
        assert!(is_tower_set(&w.image));
        assert!(
            is_towerizable(&support(2, &[[1, 2]]), caps, PermutationScope::Ambient)
                .unwrap()
                .is_some()
        );
    }

    #[test]
    fn towerizable_matches_literal_search() {
        let cases = [
            support(3, &[[1, 2], [2, 3]]),
            support(4, &[[1, 2], [3, 4]]),
            support(4, &[[1, 2], [1, 3], [3, 4]]),
            support(4, &[[1, 2], [2, 3], [3, 4], [1, 4]]),
            support(5, &[[1, 5], [2, 5], [3, 4], [4, 5]]),
            support(4, &[[1, 3], [2, 3], [2, 4]]),
        ];
        for u in &cases {
            let fast = is_towerizable(u, SearchCaps::default(), PermutationScope::Ambient).unwrap();
            let slow = brute_towerizable(u);
            match (fast, slow) {
                (None, None) => {}
                (Some(w), Some((mask, perm))) => {
                    assert_eq!(w.omega, orient(u, mask), "{u:?}");
                    let images: Vec<u32> = w.tau.iter().map(|p| p.1).collect();
                    assert_eq!(images, perm, "{u:?}");
                }
                (f, s) => panic!("{u:?}: fast {f:?} vs literal {s:?}"),
            }
        }
    }

    #[test]
    fn generalized_towerizable_examples() {
        let caps = SearchCaps::default();
        let w = is_generalized_towerizable(&example_support(), caps, PermutationScope::Columns)
            .unwrap()
            .unwrap();
        assert!(is_generalized_tower_set(w.decomposition.as_ref().unwrap()));
        let tower = support(3, &[[1, 2], [2, 3]]);
        assert!(
            is_generalized_towerizable(&tower, caps, PermutationScope::Columns)
                .unwrap()
                .is_some()
        );
        assert!(is_generalized_towerizable(
            &support(4, &[[1, 2], [3, 4]]),
            caps,
            PermutationScope::Columns
        )
        .unwrap()
        .is_none());
        let big = PrimeSupport::new(10, 2, (2..=10).map(|v| vec![1, v])).unwrap();
        assert!(matches!(
            is_generalized_towerizable(&big, caps, PermutationScope::Columns),
            Err(Error::SizeCapExceeded(_))
        ));
    }

    #[test]
    fn scheme_ideals() {
        let d = worked_chain();
        let v = |k| Monomial::var(6, k);
        let f2: Family = [(1, v(6)), (2, v(2)), (3, v(4))].into();
        let f1: Family = [
            (1, v(6)),
            (2, v(2)),
            (3, v(4)),
            (4, v(1)),
            (5, v(3)),
            (6, v(5)),
        ]
        .into();
        let i = generalized_tower_scheme_ideal(&d, &f1, &f2).unwrap();
        assert_eq!(i, ideal_from_support(&example_support()).unwrap());

        let single = GtsDecomposition::new(ps(&[[1, 2]]), PointSet::empty(2)).unwrap();
        let f1: Family = [(1, Monomial::var(2, 1))].into();
        let f2: Family = [(2, Monomial::var(2, 2))].into();
        let i = generalized_tower_scheme_ideal(&single, &f1, &f2).unwrap();
        assert_eq!(i.generators(), &[Monomial::var(2, 2), Monomial::var(2, 1)]);

        // a shared variable between two points drops the height
        let f2: Family = [(1, v(6)), (2, v(2)), (3, v(4))].into();
        let f1: Family = [
            (1, v(6)),
            (2, v(2)),
            (3, v(4)),
            (4, v(1)),
            (5, v(3)),
            (6, v(1)),
        ]
        .into();
        assert!(matches!(
            generalized_tower_scheme_ideal(&d, &f1, &f2),
            Err(Error::GenericityViolation(_))
        ));
    }
}
