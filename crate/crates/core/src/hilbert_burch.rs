//! Standard-form Hilbert-Burch matrices of height-two Cohen-Macaulay
//! squarefree monomial ideals and their generalized tower sets.
//!
//! A standard form of size `(r+1) x r` has `D_j` at `(j, j)` and a single
//! other entry `M_j` at `(sigma(j), j)` with `sigma(j) < j`. Rows run over
//! `0..=r`, columns over `1..=r`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gentower::{
    check_gts, generalized_tower_scheme_ideal, is_connected_support, is_generalized_towerizable,
    GtsDecomposition, PermutationScope, SearchCaps, Witness,
};
use crate::monomial::{
    height_and_equidimensional, minimal_primes, monomial_height, Monomial, MonomialIdeal,
    PrimeSupport,
};
use crate::resolution::projective_dimension;
use crate::tower::{Family, PointSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct StandardFormMatrix {
    n: usize,
    d: Vec<Monomial>,
    m: Vec<Monomial>,
    sigma: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub r: usize,
    #[serde(rename = "D")]
    pub d: Vec<Monomial>,
    #[serde(rename = "M")]
    pub m: Vec<MatrixEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixEntry {
    pub col: usize,
    pub row: usize,
    pub mono: Monomial,
}

impl TryFrom<MatrixJson> for StandardFormMatrix {
    type Error = Error;
    fn try_from(j: MatrixJson) -> Result<Self> {
        if j.d.len() != j.r {
            return Err(Error::InvalidMatrix(format!(
                "{} diagonal entries for r = {}",
                j.d.len(),
                j.r
            )));
        }
        let mut cols: BTreeMap<usize, (usize, Monomial)> = BTreeMap::new();
        for e in j.m {
            if e.col == 0 || e.col > j.r {
                return Err(Error::InvalidMatrix(format!(
                    "column {} outside 1..={}",
                    e.col, j.r
                )));
            }
            if cols.insert(e.col, (e.row, e.mono)).is_some() {
                return Err(Error::InvalidMatrix(format!(
                    "column {} has two off-diagonal entries",
                    e.col
                )));
            }
        }
        if cols.len() != j.r {
            return Err(Error::InvalidMatrix(
                "every column needs one off-diagonal entry".into(),
            ));
        }
        let (sigma, m) = cols.into_values().unzip();
        StandardFormMatrix::new(j.d, m, sigma)
    }
}

impl From<StandardFormMatrix> for MatrixJson {
    fn from(s: StandardFormMatrix) -> Self {
        let r = s.r();
        MatrixJson {
            r,
            m: (1..=r)
                .map(|j| MatrixEntry {
                    col: j,
                    row: s.sigma(j),
                    mono: s.m(j).clone(),
                })
                .collect(),
            d: s.d,
        }
    }
}

impl StandardFormMatrix {
    /// `d[j-1] = D_j`, `m[j-1] = M_j`, `sigma[j-1] = sigma(j)`.
    pub fn new(d: Vec<Monomial>, m: Vec<Monomial>, sigma: Vec<usize>) -> Result<Self> {
        let r = d.len();
        if r == 0 || m.len() != r || sigma.len() != r {
            return Err(Error::InvalidMatrix(
                "need r >= 1 columns with D, M and sigma".into(),
            ));
        }
        let n = d[0].n();
        if let Some(bad) = d.iter().chain(&m).find(|e| e.n() != n) {
            return Err(Error::MixedAmbient(n, bad.n()));
        }
        if d.iter().chain(&m).any(Monomial::is_one) {
            return Err(Error::InvalidMatrix(
                "entries must be non-constant monomials".into(),
            ));
        }
        if sigma[0] != 0 {
            return Err(Error::InvalidMatrix("sigma(1) must be 0".into()));
        }
        for j in 2..=r {
            let s = sigma[j - 1];
            if s == 0 || s >= j {
                return Err(Error::InvalidMatrix(format!(
                    "sigma({j}) = {s} not in 1..{j}"
                )));
            }
            if j > 2 && s < sigma[j - 2] {
                return Err(Error::InvalidMatrix(format!(
                    "sigma decreases at column {j}"
                )));
            }
        }
        if r >= 2 && sigma[1] != 1 {
            return Err(Error::InvalidMatrix("sigma(2) must be 1".into()));
        }
        Ok(Self { n, d, m, sigma })
    }

    /// The bidiagonal standard form: `sigma(j) = j - 1`.
    pub fn bidiagonal(d: Vec<Monomial>, m: Vec<Monomial>) -> Result<Self> {
        let sigma = (0..d.len()).collect();
        Self::new(d, m, sigma)
    }

    pub fn r(&self) -> usize {
        self.d.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self, j: usize) -> &Monomial {
        &self.d[j - 1]
    }

    pub fn m(&self, j: usize) -> &Monomial {
        &self.m[j - 1]
    }

    pub fn sigma(&self, j: usize) -> usize {
        self.sigma[j - 1]
    }

    pub fn is_bidiagonal(&self) -> bool {
        (1..=self.r()).all(|j| self.sigma(j) == j - 1)
    }

    /// `m(j) = {j, sigma(j), sigma^2(j), ..., 1}`.
    pub fn orbit(&self, j: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let mut k = j;
        while k > 0 {
            out.insert(k);
            k = self.sigma(k);
        }
        out
    }

    /// Entry at `(row, col)`, `None` for zeros.
    pub fn entry(&self, row: usize, col: usize) -> Option<&Monomial> {
        if row == col {
            Some(self.d(col))
        } else if row == self.sigma(col) {
            Some(self.m(col))
        } else {
            None
        }
    }
}

/// `f_0 = D_1 ... D_r` and `f_i = prod_{j in m(i)} M_j * prod_{j not in m(i)} D_j`.
pub fn generators_from_matrix(m: &StandardFormMatrix) -> Vec<Monomial> {
    let r = m.r();
    let f0 = (1..=r).fold(Monomial::one(m.n()), |acc, j| acc.mul(m.d(j)));
    let mut out = vec![f0];
    for i in 1..=r {
        let orbit = m.orbit(i);
        let fi = (1..=r).fold(Monomial::one(m.n()), |acc, j| {
            acc.mul(if orbit.contains(&j) { m.m(j) } else { m.d(j) })
        });
        out.push(fi);
    }
    out
}

/// Maximal minors by Laplace expansion, row `i` deleted for `f_i`. Every
/// minor of a matrix with monomial entries is a signed monomial or zero.
pub fn determinant_generators(m: &StandardFormMatrix) -> Result<Vec<Monomial>> {
    let r = m.r();
    (0..=r)
        .map(|deleted| {
            let rows: Vec<usize> = (0..=r).filter(|&i| i != deleted).collect();
            let mut terms: HashMap<Monomial, i64> = HashMap::new();
            expand(m, &rows, 1, Monomial::one(m.n()), 1, &mut terms);
            terms.retain(|_, c| *c != 0);
            match terms.into_iter().collect::<Vec<_>>().as_slice() {
                [(mono, c)] if c.abs() == 1 => Ok(mono.clone()),
                other => Err(Error::InternalInvariantViolation(format!(
                    "minor without row {deleted} has {} terms",
                    other.len()
                ))),
            }
        })
        .collect()
}

fn expand(
    m: &StandardFormMatrix,
    rows: &[usize],
    col: usize,
    acc: Monomial,
    sign: i64,
    terms: &mut HashMap<Monomial, i64>,
) {
    if col > m.r() {
        *terms.entry(acc).or_insert(0) += sign;
        return;
    }
    for (pos, &row) in rows.iter().enumerate() {
        if let Some(e) = m.entry(row, col) {
            let rest: Vec<usize> = rows.iter().copied().filter(|&x| x != row).collect();
            let s = if pos % 2 == 0 { sign } else { -sign };
            expand(m, &rest, col + 1, acc.mul(e), s, terms);
        }
    }
}

/// `I(M)`: the ideal of maximal minors.
pub fn matrix_ideal(m: &StandardFormMatrix) -> Result<MonomialIdeal> {
    MonomialIdeal::new(m.n(), generators_from_matrix(m))
}

fn check_squarefree_height_two(i: &MonomialIdeal) -> Result<()> {
    if !i.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let (height, _) = height_and_equidimensional(i)?;
    if height != 2 {
        return Err(Error::NotHeightTwo(height));
    }
    Ok(())
}

/// Reads a standard form off a spanning tree of the minimal generators.
///
/// Edges are taken in order of `(deg lcm, lcm)`; `f_0` is the least leaf and
/// columns follow breadth-first order from it, children in generator order.
/// The result is checked to regenerate the generators of `i`.
pub fn standard_form_from_ideal(i: &MonomialIdeal) -> Result<StandardFormMatrix> {
    check_squarefree_height_two(i)?;
    let (_, equidim) = height_and_equidimensional(i)?;
    if !equidim || projective_dimension(i)? != 2 {
        return Err(Error::NotAcm);
    }
    let gens = i.generators();
    let g = gens.len();
    let mut edges: Vec<(Monomial, usize, usize)> = Vec::new();
    for a in 0..g {
        for b in a + 1..g {
            edges.push((gens[a].lcm(&gens[b]), a, b));
        }
    }
    edges.sort();
    let mut parent: Vec<usize> = (0..g).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); g];
    for (_, a, b) in &edges {
        let (ra, rb) = (find(&mut parent, *a), find(&mut parent, *b));
        if ra != rb {
            parent[ra] = rb;
            adj[*a].insert(*b);
            adj[*b].insert(*a);
        }
    }
    let root = (0..g)
        .find(|&v| adj[v].len() == 1)
        .ok_or_else(|| Error::StandardFormVerificationFailed("spanning tree has no leaf".into()))?;
    let mut order = vec![root];
    let mut position = vec![usize::MAX; g];
    position[root] = 0;
    let mut sigma = Vec::new();
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if position[w] == usize::MAX {
                position[w] = order.len();
                order.push(w);
                sigma.push(position[v]);
                queue.push_back(w);
            }
        }
    }
    let (mut d, mut m) = (Vec::new(), Vec::new());
    for (j, &s) in sigma.iter().enumerate() {
        let fj = &gens[order[j + 1]];
        let fs = &gens[order[s]];
        let l = fj.lcm(fs);
        d.push(l.div(fj).expect("lcm is a multiple"));
        m.push(l.div(fs).expect("lcm is a multiple"));
    }
    let matrix = StandardFormMatrix::new(d, m, sigma)
        .map_err(|e| Error::StandardFormVerificationFailed(e.to_string()))?;
    let regenerated: BTreeSet<Monomial> = generators_from_matrix(&matrix).into_iter().collect();
    let expected: BTreeSet<Monomial> = gens.iter().cloned().collect();
    if regenerated != expected {
        return Err(Error::StandardFormVerificationFailed(
            "spanning-tree matrix does not regenerate the ideal".into(),
        ));
    }
    Ok(matrix)
}

/// `U'`, `U''` and `U_M` over the symbols `[2r]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct USets {
    pub u_prime: BTreeSet<[usize; 2]>,
    pub u_double: BTreeSet<[usize; 2]>,
    pub support: PrimeSupport,
}

pub fn u_sets(m: &StandardFormMatrix) -> Result<USets> {
    let r = m.r();
    let orbits: Vec<BTreeSet<usize>> = (0..=r)
        .map(|j| if j == 0 { BTreeSet::new() } else { m.orbit(j) })
        .collect();
    let mut u_prime = BTreeSet::new();
    let mut u_double = BTreeSet::new();
    for (j, orbit) in orbits.iter().enumerate().skip(1) {
        for i in 1..j {
            if !orbit.contains(&i) {
                u_prime.insert([i, j]);
            }
        }
    }
    for (i, orbit) in orbits.iter().enumerate().skip(1) {
        for j in r + 1..=2 * r {
            if orbit.contains(&(j - r)) {
                u_double.insert([i, j]);
            }
        }
    }
    let support = PrimeSupport::new(
        2 * r,
        2,
        u_prime.iter().chain(&u_double).map(|p| p.to_vec()),
    )?;
    let u = USets {
        u_prime,
        u_double,
        support,
    };
    if !dichotomies_hold(m, &u) {
        return Err(Error::InternalInvariantViolation(
            "U_M dichotomies fail".into(),
        ));
    }
    if !is_connected_support(&u.support) {
        return Err(Error::InternalInvariantViolation(
            "U_M is not connected".into(),
        ));
    }
    Ok(u)
}

/// For `{u,v}` in `U'`: no orbit contains both. For `{u,v}` in `U''`:
/// an orbit containing `u` contains `v - r`.
pub fn dichotomies_hold(m: &StandardFormMatrix, u: &USets) -> bool {
    let r = m.r();
    (1..=r).all(|i| {
        let orbit = m.orbit(i);
        u.u_prime
            .iter()
            .all(|&[a, b]| !orbit.contains(&a) || !orbit.contains(&b))
            && u.u_double
                .iter()
                .all(|&[a, b]| !orbit.contains(&a) || orbit.contains(&(b - r)))
    })
}

/// `mu_i^(h)` for every column, level by level, until every sequence has
/// reached zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MuTable {
    /// `levels[h][i-1] = mu_i^(h)`.
    pub levels: Vec<Vec<usize>>,
    /// `radii[h][i-1] = r_i^(h)`; level 0 uses `r`.
    pub radii: Vec<Vec<usize>>,
}

impl MuTable {
    pub fn sequence(&self, i: usize) -> Vec<usize> {
        self.levels.iter().map(|l| l[i - 1]).collect()
    }

    /// First level where the sequences of `i` and `j` differ.
    pub fn first_difference(&self, i: usize, j: usize) -> Option<usize> {
        self.levels.iter().position(|l| l[i - 1] != l[j - 1])
    }
}

pub fn mu_table(m: &StandardFormMatrix, u: &USets) -> Result<MuTable> {
    let r = m.r();
    let orbits: Vec<BTreeSet<usize>> = (0..=r)
        .map(|j| if j == 0 { BTreeSet::new() } else { m.orbit(j) })
        .collect();
    let meet_max = |i: usize, k: usize| -> usize {
        if k == 0 {
            0
        } else {
            *orbits[i]
                .intersection(&orbits[k])
                .max()
                .expect("1 lies in every orbit")
        }
    };
    let mut levels = vec![(1..=r).map(|i| meet_max(i, r)).collect::<Vec<_>>()];
    let mut radii = vec![vec![r; r]];
    let mut v: Vec<Vec<[usize; 2]>> = vec![u.u_prime.iter().copied().collect(); r];
    // radii decrease strictly while positive, so r + 1 further levels suffice
    for _ in 0..=r + 1 {
        let prev = levels.last().expect("level 0 exists").clone();
        if prev.iter().all(|&x| x == 0) {
            return Ok(MuTable { levels, radii });
        }
        let mut next = Vec::with_capacity(r);
        let mut rad = Vec::with_capacity(r);
        for i in 1..=r {
            let mu_i = prev[i - 1];
            v[i - 1].retain(|&[a, b]| prev[a - 1] == mu_i && prev[b - 1] == mu_i);
            let ri = v[i - 1].iter().flatten().copied().max().unwrap_or(0);
            rad.push(ri);
            next.push(meet_max(i, ri));
        }
        levels.push(next);
        radii.push(rad);
    }
    Err(Error::InternalInvariantViolation(
        "mu sequences do not vanish".into(),
    ))
}

/// Output of the orientation and sorting step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Towerization {
    pub mu: MuTable,
    /// `(member, oriented pair)` for every member of `U_M`.
    pub omega: Vec<([usize; 2], [u32; 2])>,
    /// Tower part before relabeling.
    pub t_bar: PointSet,
    /// `(symbol, tau(symbol))` for `1..=2r`.
    pub tau: Vec<(u32, u32)>,
    pub decomposition: GtsDecomposition,
}

impl Towerization {
    pub fn tau_map(&self) -> BTreeMap<u32, u32> {
        self.tau.iter().copied().collect()
    }
}

pub fn orient_and_sort(m: &StandardFormMatrix, u: &USets) -> Result<Towerization> {
    let r = m.r();
    let mu = mu_table(m, u)?;
    let tail = m.orbit(r);
    let mut omega = Vec::new();
    let mut t_pts: Vec<[u32; 2]> = Vec::new();
    let mut s0_pts: Vec<[u32; 2]> = Vec::new();
    for &[i, j] in &u.u_prime {
        let t = mu.first_difference(i, j).ok_or_else(|| {
            Error::InternalInvariantViolation(format!("mu sequences of {i} and {j} agree"))
        })?;
        let pair = if mu.levels[t][i - 1] < mu.levels[t][j - 1] {
            [i, j]
        } else {
            [j, i]
        };
        let pair = [pair[0] as u32, pair[1] as u32];
        omega.push(([i, j], pair));
        t_pts.push(pair);
    }
    for &[i, j] in &u.u_double {
        let pair = [j as u32, i as u32];
        omega.push(([i, j], pair));
        if tail.contains(&(j - r)) {
            t_pts.push(pair);
        } else {
            s0_pts.push(pair);
        }
    }
    omega.sort();
    let t_bar = PointSet::new(2, t_pts.iter().map(|p| p.to_vec()))?;
    let col = |i: usize| -> BTreeSet<u32> { t_bar.column(i as u32) };
    let cols: Vec<BTreeSet<u32>> = (1..=r).map(col).collect();
    for a in 0..r {
        for b in a + 1..r {
            if !cols[a].is_subset(&cols[b]) && !cols[b].is_subset(&cols[a]) {
                return Err(Error::InternalInvariantViolation(format!(
                    "columns {} and {} of the tower part are incomparable",
                    a + 1,
                    b + 1
                )));
            }
        }
    }
    check_upper_closure(m, &mu, &t_bar)?;
    let mut by_size: Vec<usize> = (1..=r).collect();
    by_size.sort_by(|&a, &b| cols[b - 1].len().cmp(&cols[a - 1].len()).then(a.cmp(&b)));
    let mut image = vec![0u32; 2 * r + 1];
    for (pos, &i) in by_size.iter().enumerate() {
        image[i] = pos as u32 + 1;
    }
    for (h, slot) in image.iter_mut().enumerate().skip(r + 1) {
        *slot = h as u32;
    }
    let relabel = |p: &[u32; 2]| vec![image[p[0] as usize], image[p[1] as usize]];
    let t = PointSet::new(2, t_pts.iter().map(relabel))?;
    let s0 = PointSet::new(2, s0_pts.iter().map(relabel))?;
    let decomposition = GtsDecomposition::new(t, s0)?;
    if let Err(why) = check_gts(&decomposition) {
        return Err(Error::InternalInvariantViolation(format!(
            "sorted support is not a generalized tower set: {why}"
        )));
    }
    let tau = (1..=2 * r).map(|h| (h as u32, image[h])).collect();
    Ok(Towerization {
        mu,
        omega,
        t_bar,
        tau,
        decomposition,
    })
}

/// For `mu_i <= mu_j` and `h > r` with `(h, i)` in the tower part,
/// `(h, j)` is in it too.
fn check_upper_closure(m: &StandardFormMatrix, mu: &MuTable, t_bar: &PointSet) -> Result<()> {
    let r = m.r();
    for i in 1..=r {
        for j in 1..=r {
            if mu.levels[0][i - 1] > mu.levels[0][j - 1] {
                continue;
            }
            for h in r + 1..=2 * r {
                let (h, i, j) = (h as u32, i as u32, j as u32);
                if t_bar.contains(&[h, i]) && !t_bar.contains(&[h, j]) {
                    return Err(Error::InternalInvariantViolation(format!(
                        "({h}, {i}) lies in the tower part but ({h}, {j}) does not"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// `f_1j = D_{tau^-1(j)}` for `j <= r`, `M_{j-r}` above; `f_2j = D_{tau^-1(j)}`.
/// The height conditions on pairs of members of `U_M` are checked.
pub fn families_from_matrix(
    m: &StandardFormMatrix,
    u: &USets,
    tau: &BTreeMap<u32, u32>,
) -> Result<(Family, Family)> {
    let r = m.r();
    let inverse: BTreeMap<u32, u32> = tau.iter().map(|(&a, &b)| (b, a)).collect();
    let mut f1 = Family::new();
    let mut f2 = Family::new();
    for j in 1..=r as u32 {
        let src = *inverse
            .get(&j)
            .ok_or_else(|| Error::BadParameters(format!("tau does not reach {j}")))?
            as usize;
        f1.insert(j, m.d(src).clone());
        f2.insert(j, m.d(src).clone());
    }
    for j in r + 1..=2 * r {
        f1.insert(j as u32, m.m(j - r).clone());
    }
    let h = |k: usize| if k <= r { m.d(k) } else { m.m(k - r) };
    let members: Vec<&Vec<usize>> = u.support.members().iter().collect();
    for (k, a) in members.iter().enumerate() {
        for b in &members[k + 1..] {
            let quad = [
                h(a[0]).clone(),
                h(a[1]).clone(),
                h(b[0]).clone(),
                h(b[1]).clone(),
            ];
            if monomial_height(&quad) < 3 {
                return Err(Error::GenericityViolation(format!(
                    "entries for {a:?} and {b:?} generate an ideal of height below 3"
                )));
            }
        }
    }
    Ok((f1, f2))
}

/// Every stage of the characterization pipeline for one ideal.
#[derive(Debug, Clone, Serialize)]
pub struct CharacterizationReport {
    pub ideal: MonomialIdeal,
    pub height: usize,
    pub equidimensional: bool,
    pub projective_dimension: usize,
    pub acm: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<StandardFormMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix_generators: Option<Vec<Monomial>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u_sets: Option<USets>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub towerization: Option<Towerization>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub families: Option<(Family, Family)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reconstructed: Option<MonomialIdeal>,
    /// Non-Cohen-Macaulay branch: result of the generalized search.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generalized_witness: Option<Option<Witness>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Runs matrix extraction, orientation and family construction on an
/// aCM ideal and checks the rebuilt ideal is `i`; on a non-aCM ideal checks
/// that its support is not generalized towerizable.
pub fn verify_characterization(
    i: &MonomialIdeal,
    caps: SearchCaps,
) -> Result<CharacterizationReport> {
    check_squarefree_height_two(i)?;
    let (height, equidimensional) = height_and_equidimensional(i)?;
    let pd = projective_dimension(i)?;
    let acm = equidimensional && pd == height;
    let mut report = CharacterizationReport {
        ideal: i.clone(),
        height,
        equidimensional,
        projective_dimension: pd,
        acm,
        matrix: None,
        matrix_generators: None,
        u_sets: None,
        towerization: None,
        families: None,
        reconstructed: None,
        generalized_witness: None,
        notes: Vec::new(),
    };
    if acm {
        let matrix = standard_form_from_ideal(i)?;
        let u = u_sets(&matrix)?;
        let tz = orient_and_sort(&matrix, &u)?;
        let (f1, f2) = families_from_matrix(&matrix, &u, &tz.tau_map())
            .map_err(|e| Error::InternalInvariantViolation(e.to_string()))?;
        let rebuilt = generalized_tower_scheme_ideal(&tz.decomposition, &f1, &f2)
            .map_err(|e| Error::InternalInvariantViolation(e.to_string()))?;
        if &rebuilt != i {
            return Err(Error::InternalInvariantViolation(format!(
                "rebuilt ideal {rebuilt} differs from {i}"
            )));
        }
        report.matrix_generators = Some(generators_from_matrix(&matrix));
        report.matrix = Some(matrix);
        report.u_sets = Some(u);
        report.towerization = Some(tz);
        report.families = Some((f1, f2));
        report.reconstructed = Some(rebuilt);
        return Ok(report);
    }
    if !equidimensional {
        report
            .notes
            .push("not equidimensional: the support is not a set of pairs".into());
        return Ok(report);
    }
    let support = PrimeSupport::new(i.n(), 2, minimal_primes(i)?)?;
    match is_generalized_towerizable(&support, caps, PermutationScope::Columns) {
        Ok(Some(w)) => {
            return Err(Error::InternalInvariantViolation(format!(
                "non-aCM support is generalized towerizable via {:?}",
                w.tau
            )))
        }
        Ok(None) => report.generalized_witness = Some(None),
        Err(Error::SizeCapExceeded(why)) => {
            report
                .notes
                .push(format!("generalized towerizable search skipped: {why}"));
        }
        Err(e) => return Err(e),
    }
    Ok(report)
}
