//! Seeded random instances and the property suites run over them.
//!
//! Every suite draws its instances from a `ChaCha8Rng` seeded by the caller,
//! so a `(suite, seed, count)` triple always replays the same checks.
//! Checks run in parallel but reports are assembled in instance order.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gentower::{
    check_gts, f_boundary, forget_order, generalized_tower_scheme_ideal, is_towerizable,
    GtsDecomposition, PermutationScope, SearchCaps,
};
use crate::hilbert_burch::{
    determinant_generators, families_from_matrix, generators_from_matrix, matrix_ideal,
    orient_and_sort, standard_form_from_ideal, u_sets, StandardFormMatrix,
};
use crate::monomial::{colon_monomial, ideal_from_support, Monomial, MonomialIdeal, PrimeSupport};
use crate::resolution::{is_acm, projective_dimension, taylor_pd_oracle};
use crate::series::{brute_hilbert_function, iterated_difference};
use crate::tower::{
    distinct_variable_families, is_left_segment, is_tower_set, product_families, sigma_hash,
    tower_h_vector, tower_scheme_ideal, DegreeTable, LeftSegment, Point, PointSet,
};

const MAX_RECORDED_FAILURES: usize = 20;

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub instances: usize,
    pub checks: u64,
    pub failure_count: usize,
    /// The first few failures, in instance order.
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub stats: BTreeMap<String, u64>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    fn assemble(suite: &str, seed: u64, outcomes: Vec<Outcome>) -> Self {
        let mut report = SuiteReport {
            suite: suite.into(),
            seed,
            instances: outcomes.len(),
            checks: 0,
            failure_count: 0,
            failures: Vec::new(),
            stats: BTreeMap::new(),
        };
        for (k, o) in outcomes.into_iter().enumerate() {
            report.checks += o.checks;
            for (key, v) in o.stats {
                *report.stats.entry(key).or_insert(0) += v;
            }
            for f in o.failures {
                report.failure_count += 1;
                if report.failures.len() < MAX_RECORDED_FAILURES {
                    report.failures.push(format!("instance {k}: {f}"));
                }
            }
        }
        report
    }
}

#[derive(Default)]
struct Outcome {
    checks: u64,
    failures: Vec<String>,
    stats: BTreeMap<String, u64>,
}

impl Outcome {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn fail(&mut self, what: String) {
        self.checks += 1;
        self.failures.push(what);
    }

    fn count(&mut self, key: &str) {
        *self.stats.entry(key.into()).or_insert(0) += 1;
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A tower set grown greedily from random points with coordinates in
/// `1..=max_coord`. With `starred`, points have distinct coordinates.
pub fn random_tower(
    rng: &mut impl Rng,
    c: usize,
    max_coord: u32,
    max_len: usize,
    starred: bool,
) -> PointSet {
    let target = rng.gen_range(1..=max_len);
    let mut points: BTreeSet<Point> = BTreeSet::new();
    for _ in 0..target * 8 {
        if points.len() == target {
            break;
        }
        let p: Point = (0..c).map(|_| rng.gen_range(1..=max_coord)).collect();
        if starred && p.iter().collect::<BTreeSet<_>>().len() < c {
            continue;
        }
        if !points.insert(p.clone()) {
            continue;
        }
        let candidate = PointSet::new(c, points.iter().cloned()).expect("uniform dimension");
        if !is_tower_set(&candidate) {
            points.remove(&p);
        }
    }
    if points.is_empty() {
        let p: Point = if starred {
            (1..=c as u32).rev().collect()
        } else {
            vec![1; c]
        };
        points.insert(p);
    }
    PointSet::new(c, points).expect("uniform dimension")
}

/// A generalized tower set: a starred planar tower with coordinates at most
/// 6, plus fresh rows `7..=9` attached to random shared columns and closed
/// under the boundary map. Draws until the result is connected and valid.
pub fn random_gts(rng: &mut impl Rng) -> GtsDecomposition {
    loop {
        let t = random_tower(rng, 2, 6, 12, true);
        let rows = t.projection(0);
        let shared: Vec<u32> = t.projection(1).intersection(&rows).copied().collect();
        let mut s0: BTreeSet<[u32; 2]> = BTreeSet::new();
        if !shared.is_empty() {
            for a in 7..=rng.gen_range(6..=9u32) {
                let k = rng.gen_range(1..=shared.len().min(2));
                for &j in shared.choose_multiple(rng, k) {
                    s0.insert([a, j]);
                }
            }
        }
        let mut grew = true;
        while grew {
            grew = false;
            for [a, j] in s0.clone() {
                for h in f_boundary(&t, j).expect("tower with column j") {
                    grew |= s0.insert([a, h]);
                }
            }
        }
        let s0 = PointSet::new(2, s0.into_iter().map(Vec::from)).expect("pairs");
        let Ok(d) = GtsDecomposition::new(t, s0) else {
            continue;
        };
        if check_gts(&d).is_ok() {
            return d;
        }
    }
}

/// A standard form with `r` columns, nondecreasing `sigma` and `2r` distinct
/// variables in shuffled positions.
pub fn random_standard_form(rng: &mut impl Rng, r: usize) -> StandardFormMatrix {
    let mut sigma = vec![0usize];
    for j in 2..=r {
        let lo = sigma.last().copied().unwrap_or(0).max(1);
        sigma.push(rng.gen_range(lo..j));
    }
    let n = 2 * r;
    let mut vars: Vec<usize> = (1..=n).collect();
    vars.shuffle(rng);
    let d = vars[..r].iter().map(|&v| Monomial::var(n, v)).collect();
    let m = vars[r..].iter().map(|&v| Monomial::var(n, v)).collect();
    StandardFormMatrix::new(d, m, sigma).expect("valid by construction")
}

pub fn random_bidiagonal(rng: &mut impl Rng, r: usize) -> StandardFormMatrix {
    let n = 2 * r;
    let mut vars: Vec<usize> = (1..=n).collect();
    vars.shuffle(rng);
    let d = vars[..r].iter().map(|&v| Monomial::var(n, v)).collect();
    let m = vars[r..].iter().map(|&v| Monomial::var(n, v)).collect();
    StandardFormMatrix::bidiagonal(d, m).expect("valid by construction")
}

/// A squarefree ideal in `n` variables with at most `max_gens` random
/// non-constant generators.
pub fn random_squarefree_ideal(rng: &mut impl Rng, n: usize, max_gens: usize) -> MonomialIdeal {
    let g = rng.gen_range(max_gens.min(2)..=max_gens);
    // near-constant degrees keep most generators minimal
    let base = rng.gen_range(1..=n.div_ceil(2));
    let symbols: Vec<usize> = (1..=n).collect();
    let gens: Vec<Monomial> = (0..g)
        .map(|_| {
            let d = (base + rng.gen_range(0..=1)).min(n);
            let support: Vec<usize> = symbols.choose_multiple(rng, d).copied().collect();
            Monomial::from_support(n, &support)
        })
        .collect();
    MonomialIdeal::new(n, gens).expect("same ambient ring")
}

/// A random support of at most `max_members` distinct `c`-subsets of `[n]`.
pub fn random_support(rng: &mut impl Rng, n: usize, c: usize, max_members: usize) -> PrimeSupport {
    let k = rng.gen_range(1..=max_members);
    let symbols: Vec<usize> = (1..=n).collect();
    let members: BTreeSet<Vec<usize>> = (0..k)
        .map(|_| {
            let mut m: Vec<usize> = symbols.choose_multiple(rng, c).copied().collect();
            m.sort_unstable();
            m
        })
        .collect();
    PrimeSupport::new(n, c, members).expect("valid members")
}

/// Support of a tower scheme instantiated with one variable per coordinate
/// value.
fn tower_support(t: &PointSet) -> Result<(MonomialIdeal, PrimeSupport)> {
    let (families, n) = distinct_variable_families(t);
    let ideal = tower_scheme_ideal(t, &families)?;
    let members = t.iter().map(|p| {
        let mut m: Vec<usize> = p
            .iter()
            .enumerate()
            .map(|(axis, v)| families[axis][v].support()[0])
            .collect();
        m.sort_unstable();
        m
    });
    Ok((ideal, PrimeSupport::new(n, t.c(), members)?))
}

fn gts_ideal(d: &GtsDecomposition) -> Result<(MonomialIdeal, PrimeSupport)> {
    let n = *d.s().symbols().iter().max().expect("nonempty") as usize;
    let support = forget_order(d.s(), n)?;
    let var = |axis: usize| -> BTreeMap<u32, Monomial> {
        d.s()
            .projection(axis)
            .into_iter()
            .map(|h| (h, Monomial::var(n, h as usize)))
            .collect()
    };
    let ideal = generalized_tower_scheme_ideal(d, &var(0), &var(1))?;
    Ok((ideal, support))
}

pub fn tower_instances(seed: u64, count: usize) -> Vec<PointSet> {
    let mut rng = rng_for(seed, 2);
    (0..count)
        .map(|_| {
            let c = rng.gen_range(2..=3);
            random_tower(&mut rng, c, 6, 12, false)
        })
        .collect()
}

pub fn gts_instances(seed: u64, count: usize) -> Vec<GtsDecomposition> {
    let mut rng = rng_for(seed, 5);
    (0..count).map(|_| random_gts(&mut rng)).collect()
}

pub fn standard_form_instances(seed: u64, count: usize) -> Vec<StandardFormMatrix> {
    let mut rng = rng_for(seed, 6);
    (0..count)
        .map(|_| {
            let r = rng.gen_range(1..=7);
            random_standard_form(&mut rng, r)
        })
        .collect()
}

fn run<T: Sync>(
    suite: &str,
    seed: u64,
    items: &[T],
    f: impl Fn(&T) -> Outcome + Sync + Send,
) -> SuiteReport {
    let outcomes: Vec<Outcome> = items.par_iter().map(f).collect();
    SuiteReport::assemble(suite, seed, outcomes)
}

fn guard(o: &mut Outcome, what: &str, r: Result<bool>) {
    match r {
        Ok(ok) => o.check(ok, || what.to_string()),
        Err(e) => o.fail(format!("{what}: {e}")),
    }
}

/// Instantiated tower schemes have `pd(R/I) = c`.
pub fn tower_acm_suite(seed: u64, count: usize) -> SuiteReport {
    run("tower_acm", seed, &tower_instances(seed, count), |t| {
        let mut o = Outcome::default();
        o.count(&format!("c{}", t.c()));
        let r = tower_support(t).and_then(|(i, _)| projective_dimension(&i));
        match r {
            Ok(pd) => o.check(pd == t.c(), || format!("{t:?}: pd {pd} != {}", t.c())),
            Err(e) => o.fail(format!("{t:?}: {e}")),
        }
        o
    })
}

/// A tower set contained in `t`, obtained by dropping random points while
/// the result stays a tower.
fn random_subtower(rng: &mut impl Rng, t: &PointSet) -> PointSet {
    let mut pts: Vec<Point> = t.iter().cloned().collect();
    pts.shuffle(rng);
    let drops = rng.gen_range(0..pts.len());
    let mut kept: BTreeSet<Point> = t.points().clone();
    for p in pts.into_iter().take(drops) {
        kept.remove(&p);
        let candidate = PointSet::new(t.c(), kept.iter().cloned()).expect("uniform");
        if kept.is_empty() || !is_tower_set(&candidate) {
            kept.insert(p);
        }
    }
    PointSet::new(t.c(), kept).expect("uniform")
}

/// `T#` is a left segment, and `U ⊆ T` gives `U# ⊆ T#`.
pub fn sigma_hash_suite(seed: u64, count: usize) -> SuiteReport {
    let mut rng = rng_for(seed, 3);
    let pairs: Vec<(PointSet, PointSet)> = (0..count)
        .map(|_| {
            let c = rng.gen_range(2..=3);
            let t = random_tower(&mut rng, c, 6, 12, false);
            let u = random_subtower(&mut rng, &t);
            (t, u)
        })
        .collect();
    run("sigma_hash", seed, &pairs, |(t, u)| {
        let mut o = Outcome::default();
        match (sigma_hash(t), sigma_hash(u)) {
            (Ok(th), Ok(uh)) => {
                o.check(is_left_segment(th.points()), || {
                    format!("{t:?}: hash not a left segment")
                });
                o.check(is_left_segment(uh.points()), || {
                    format!("{u:?}: hash not a left segment")
                });
                o.check(th.len() == t.len(), || format!("{t:?}: hash changes size"));
                o.check(uh.points().is_subset(th.points()), || {
                    format!("{u:?} ⊆ {t:?} but hashes not nested")
                });
                if u.len() < t.len() {
                    o.count("proper_subsets");
                }
            }
            (Err(e), _) | (_, Err(e)) => o.fail(format!("{t:?}: {e}")),
        }
        o
    })
}

/// One Hilbert function instance: a scheme ideal, its codimension and the
/// expected h-vector source.
struct HilbertCase {
    kind: &'static str,
    t: PointSet,
    degrees: DegreeTable,
    ideal: MonomialIdeal,
}

fn hilbert_case(rng: &mut impl Rng, k: usize) -> Result<HilbertCase> {
    match k % 3 {
        0 => {
            let c = rng.gen_range(2..=3);
            let t = random_tower(rng, c, 4, 6, false);
            let (fam, _) = distinct_variable_families(&t);
            let ideal = tower_scheme_ideal(&t, &fam)?;
            let degrees = DegreeTable::ones(sigma_hash(&t)?.size());
            Ok(HilbertCase {
                kind: "all_ones",
                t,
                degrees,
                ideal,
            })
        }
        1 => {
            let t = random_tower(rng, 2, 4, 5, false);
            let per_axis: Vec<u32> = (0..2).map(|_| rng.gen_range(1..=2)).collect();
            let (fam, _) = product_families(&t, |axis, _| per_axis[axis]);
            let ideal = tower_scheme_ideal(&t, &fam)?;
            let degrees = DegreeTable::uniform(sigma_hash(&t)?.size(), &per_axis);
            Ok(HilbertCase {
                kind: "uniform_degrees",
                t,
                degrees,
                ideal,
            })
        }
        _ => {
            let gens: Vec<Point> = (0..rng.gen_range(1..=2))
                .map(|_| (0..2).map(|_| rng.gen_range(1..=3)).collect())
                .collect();
            let l = LeftSegment::generated_by(2, &gens)?;
            let rows: Vec<Vec<u32>> = l
                .size()
                .iter()
                .map(|&m| (0..m).map(|_| rng.gen_range(1..=2)).collect())
                .collect();
            let degrees = DegreeTable::new(rows)?;
            let t = l.points().clone();
            let (fam, _) = product_families(&t, |axis, v| degrees.get(axis, v));
            let ideal = tower_scheme_ideal(&t, &fam)?;
            Ok(HilbertCase {
                kind: "segment_table",
                t,
                degrees,
                ideal,
            })
        }
    }
}

/// The `(n - c)`-th difference of the Hilbert function of `R/I` agrees with
/// `H_{(T#)_D}` and vanishes past it.
pub fn hilbert_suite(seed: u64, count: usize) -> SuiteReport {
    let mut rng = rng_for(seed, 4);
    let cases: Vec<Result<HilbertCase>> = (0..count).map(|k| hilbert_case(&mut rng, k)).collect();
    run("hilbert", seed, &cases, |case| {
        let mut o = Outcome::default();
        let case = match case {
            Ok(c) => c,
            Err(e) => {
                o.fail(format!("instance construction: {e}"));
                return o;
            }
        };
        o.count(case.kind);
        let expected = match tower_h_vector(&case.t, &case.degrees) {
            Ok(h) => h,
            Err(e) => {
                o.fail(format!("{:?}: {e}", case.t));
                return o;
            }
        };
        let dmax = expected.len() + 2;
        let hf: Vec<i64> = brute_hilbert_function(&case.ideal, dmax)
            .into_iter()
            .map(|v| v as i64)
            .collect();
        let diff = iterated_difference(&hf, case.ideal.n() - case.t.c());
        let got: Vec<i64> = (0..=dmax).map(|k| diff[k]).collect();
        let want: Vec<i64> = (0..=dmax).map(|k| expected.get(k)).collect();
        o.check(got == want, || {
            format!(
                "{:?} {:?}: difference {got:?} != {want:?}",
                case.t,
                case.degrees.rows()
            )
        });
        o
    })
}

/// Generalized tower sets instantiated with variables are aCM.
pub fn gts_acm_suite(seed: u64, count: usize) -> SuiteReport {
    run("gts_acm", seed, &gts_instances(seed, count), |d| {
        let mut o = Outcome::default();
        if !d.s0().is_empty() {
            o.count("nonempty_s0");
        }
        match gts_ideal(d) {
            Ok((ideal, support)) => {
                guard(&mut o, &format!("{d:?} is aCM"), is_acm(&ideal));
                match ideal_from_support(&support) {
                    Ok(j) => o.check(j == ideal, || {
                        format!("{d:?}: scheme ideal differs from support ideal")
                    }),
                    Err(e) => o.fail(format!("{d:?}: {e}")),
                }
            }
            Err(e) => o.fail(format!("{d:?}: {e}")),
        }
        o
    })
}

fn round_trip(m: &StandardFormMatrix) -> Result<Outcome> {
    let mut o = Outcome::default();
    let ideal = matrix_ideal(m)?;
    let minors = determinant_generators(m)?;
    o.check(minors == generators_from_matrix(m), || {
        format!("{m:?}: minors differ from generator formula")
    });
    // connectivity and the U' / U'' dichotomies are checked on construction
    let u = u_sets(m)?;
    o.checks += 2;
    // sequence, chain and upper-closure conditions, then the GTS predicate
    let tz = orient_and_sort(m, &u)?;
    o.checks += 4;
    for &[i, j] in &u.u_prime {
        if let Some(level) = tz.mu.first_difference(i, j) {
            o.count(&format!("mu_split_level_{level}"));
        }
    }
    let (f1, f2) = families_from_matrix(m, &u, &tz.tau_map())?;
    o.checks += 1;
    let rebuilt = generalized_tower_scheme_ideal(&tz.decomposition, &f1, &f2)?;
    o.check(rebuilt == ideal, || {
        format!("{m:?}: rebuilt {rebuilt} != {ideal}")
    });
    let back = standard_form_from_ideal(&ideal)?;
    let back_ideal = matrix_ideal(&back)?;
    o.check(back_ideal == ideal, || {
        format!("{m:?}: extracted matrix gives {back_ideal}")
    });
    if m.is_bidiagonal() {
        o.count("bidiagonal");
    }
    if !tz.decomposition.s0().is_empty() {
        o.count("nonempty_s0");
    }
    Ok(o)
}

/// Standard form to generalized tower set and back.
pub fn round_trip_suite(seed: u64, count: usize) -> SuiteReport {
    run(
        "hilbert_burch_round_trip",
        seed,
        &standard_form_instances(seed, count),
        |m| {
            round_trip(m).unwrap_or_else(|e| {
                let mut o = Outcome::default();
                o.fail(format!("{m:?}: {e}"));
                o
            })
        },
    )
}

/// `I_U : x_a = I_{U:a}` for every symbol `a`.
fn check_colon_ideal(o: &mut Outcome, ideal: &MonomialIdeal, support: &PrimeSupport) {
    for a in 1..=support.n() {
        let colon = support.colon(a);
        let want = if colon.is_empty() {
            Ok(MonomialIdeal::unit(support.n()))
        } else {
            ideal_from_support(&colon)
        };
        match (colon_monomial(ideal, &Monomial::var(support.n(), a)), want) {
            (Ok(got), Ok(want)) => {
                o.check(got == want, || format!("colon by x{a}: {got} != {want}"))
            }
            (Err(e), _) | (_, Err(e)) => o.fail(format!("colon by x{a}: {e}")),
        }
    }
    o.count("colon_ideal");
}

/// An aCM ideal stays aCM after a colon by any variable.
fn check_colon_acm(o: &mut Outcome, ideal: &MonomialIdeal) {
    for a in 1..=ideal.n() {
        let Ok(colon) = colon_monomial(ideal, &Monomial::var(ideal.n(), a)) else {
            o.fail(format!("colon by x{a} failed"));
            continue;
        };
        if colon.is_unit() || colon == *ideal {
            continue;
        }
        guard(o, &format!("{ideal} : x{a} is aCM"), is_acm(&colon));
    }
    o.count("colon_acm");
}

/// `F_{T:h}(j) ⊆ F_T(j)` for every symbol `h` and every other column `j`
/// of `T:h`.
fn check_boundary_shrinks(o: &mut Outcome, t: &PointSet) {
    for h in t.symbols() {
        let th = t.colon(h);
        if th.is_empty() {
            continue;
        }
        for j in th.projection(1).into_iter().filter(|&j| j != h) {
            match (f_boundary(&th, j), f_boundary(t, j)) {
                (Ok(small), Ok(big)) => o.check(small.is_subset(&big), || {
                    format!("{t:?}: F_(T:{h})({j}) = {small:?} not inside {big:?}")
                }),
                (Err(e), _) | (_, Err(e)) => {
                    o.fail(format!("{t:?}: boundary at {j} after colon {h}: {e}"))
                }
            }
        }
    }
    o.count("boundary_shrinks");
}

/// Colon by a symbol that is both a row and a column of `T` keeps the
/// decomposition valid.
fn check_colon_gts(o: &mut Outcome, d: &GtsDecomposition) {
    let t = d.t();
    let shared: BTreeSet<u32> = t
        .projection(0)
        .intersection(&t.projection(1))
        .copied()
        .collect();
    for h in shared {
        match d.colon(h) {
            Ok(dh) => o.check(check_gts(&dh).is_ok(), || {
                format!("{d:?}: colon by {h} fails: {}", check_gts(&dh).unwrap_err())
            }),
            Err(e) => o.fail(format!("{d:?}: colon by {h}: {e}")),
        }
    }
}

/// The least column of each fresh row has an empty boundary, and some
/// column `h` of that row makes `I_{S:a} + (x_h)` a complete intersection
/// `(x_h, g)`.
fn check_fresh_rows(o: &mut Outcome, d: &GtsDecomposition, support: &PrimeSupport) {
    let n = support.n();
    for a in d.s0().projection(0) {
        let row = d.s0().row(a);
        let m = *row.iter().next().expect("row of S0");
        match f_boundary(d.t(), m) {
            Ok(b) => o.check(b.is_empty(), || {
                format!("{d:?}: F_T({m}) = {b:?} for the least column of row {a}")
            }),
            Err(e) => o.fail(format!("{d:?}: boundary at {m}: {e}")),
        }
        let colon = support.colon(a as usize);
        let Ok(base) = ideal_from_support(&colon) else {
            o.fail(format!("{d:?}: ideal of S:{a}"));
            continue;
        };
        let found = row.iter().any(|&h| {
            let xh = Monomial::var(n, h as usize);
            base.add_generator(xh.clone()).is_ok_and(|sum| {
                let g = sum.generators();
                g.len() == 2 && g.contains(&xh) && g[0].is_coprime(&g[1])
            })
        });
        o.check(found, || {
            format!("{d:?}: no column of row {a} gives a complete intersection")
        });
    }
}

fn gts_colon_checks(
    o: &mut Outcome,
    d: &GtsDecomposition,
    ideal: &MonomialIdeal,
    support: &PrimeSupport,
) {
    check_colon_ideal(o, ideal, support);
    check_colon_acm(o, ideal);
    check_boundary_shrinks(o, d.t());
    check_colon_gts(o, d);
    check_fresh_rows(o, d, support);
}

/// Colon statements over the instances of the tower, generalized tower and
/// round-trip suites drawn from the same seed.
pub fn colon_suite(seed: u64, towers: usize, gts: usize, matrices: usize) -> SuiteReport {
    enum Case {
        Tower(PointSet),
        Gts(GtsDecomposition),
        Matrix(StandardFormMatrix),
    }
    let cases: Vec<Case> = tower_instances(seed, towers)
        .into_iter()
        .map(Case::Tower)
        .chain(gts_instances(seed, gts).into_iter().map(Case::Gts))
        .chain(
            standard_form_instances(seed, matrices)
                .into_iter()
                .map(Case::Matrix),
        )
        .collect();
    run("colon", seed, &cases, |case| {
        let mut o = Outcome::default();
        let r: Result<()> = (|| {
            match case {
                Case::Tower(t) => {
                    let (ideal, support) = tower_support(t)?;
                    check_colon_ideal(&mut o, &ideal, &support);
                    check_colon_acm(&mut o, &ideal);
                    if t.c() == 2 {
                        check_boundary_shrinks(&mut o, t);
                    }
                }
                Case::Gts(d) => {
                    let (ideal, support) = gts_ideal(d)?;
                    gts_colon_checks(&mut o, d, &ideal, &support);
                }
                Case::Matrix(m) => {
                    let u = u_sets(m)?;
                    let d = orient_and_sort(m, &u)?.decomposition;
                    let (ideal, support) = gts_ideal(&d)?;
                    gts_colon_checks(&mut o, &d, &ideal, &support);
                }
            }
            Ok(())
        })();
        if let Err(e) = r {
            o.fail(format!("instance construction: {e}"));
        }
        o
    })
}

/// Projective dimension from the lcm lattice against the Taylor complex.
pub fn resolution_suite(seed: u64, count: usize) -> SuiteReport {
    let mut rng = rng_for(seed, 8);
    let ideals: Vec<MonomialIdeal> = (0..count)
        .map(|_| {
            let n = rng.gen_range(3..=8);
            random_squarefree_ideal(&mut rng, n, 8)
        })
        .collect();
    run("resolution", seed, &ideals, |i| {
        let mut o = Outcome::default();
        match (projective_dimension(i), taylor_pd_oracle(i)) {
            (Ok(a), Ok(b)) => o.check(a == b, || format!("{i}: lattice pd {a}, Taylor pd {b}")),
            (Err(e), _) | (_, Err(e)) => o.fail(format!("{i}: {e}")),
        }
        o.count(&format!("gens{}", i.generators().len()));
        o
    })
}

/// Bidiagonal forms give an empty `S0` and a towerizable support.
pub fn bidiagonal_suite(seed: u64, count: usize, caps: SearchCaps) -> SuiteReport {
    let mut rng = rng_for(seed, 9);
    let forms: Vec<StandardFormMatrix> = (0..count)
        .map(|_| {
            let r = rng.gen_range(1..=4);
            random_bidiagonal(&mut rng, r)
        })
        .collect();
    run("bidiagonal", seed, &forms, |m| {
        let mut o = Outcome::default();
        let r: Result<()> = (|| {
            let u = u_sets(m)?;
            let tz = orient_and_sort(m, &u)?;
            o.check(tz.decomposition.s0().is_empty(), || {
                format!("{m:?}: S0 = {:?}", tz.decomposition.s0())
            });
            let found = is_towerizable(&u.support, caps, PermutationScope::Ambient)?;
            o.check(found.is_some(), || {
                format!("{m:?}: support not towerizable")
            });
            Ok(())
        })();
        if let Err(e) = r {
            o.fail(format!("{m:?}: {e}"));
        }
        o
    })
}

/// Instance counts for a full run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuiteSizes {
    pub towers: usize,
    pub hashes: usize,
    pub hilbert: usize,
    pub gts: usize,
    pub matrices: usize,
    pub resolutions: usize,
    pub bidiagonal: usize,
}

impl Default for SuiteSizes {
    fn default() -> Self {
        Self {
            towers: 200,
            hashes: 500,
            hilbert: 120,
            gts: 200,
            matrices: 200,
            resolutions: 200,
            bidiagonal: 100,
        }
    }
}

pub const SUITE_NAMES: [&str; 8] = [
    "tower_acm",
    "sigma_hash",
    "hilbert",
    "gts_acm",
    "hilbert_burch_round_trip",
    "colon",
    "resolution",
    "bidiagonal",
];

/// Runs one named suite.
pub fn run_suite(
    name: &str,
    seed: u64,
    sizes: SuiteSizes,
    caps: SearchCaps,
) -> Result<SuiteReport> {
    Ok(match name {
        "tower_acm" => tower_acm_suite(seed, sizes.towers),
        "sigma_hash" => sigma_hash_suite(seed, sizes.hashes),
        "hilbert" => hilbert_suite(seed, sizes.hilbert),
        "gts_acm" => gts_acm_suite(seed, sizes.gts),
        "hilbert_burch_round_trip" => round_trip_suite(seed, sizes.matrices),
        "colon" => colon_suite(seed, sizes.towers, sizes.gts, sizes.matrices),
        "resolution" => resolution_suite(seed, sizes.resolutions),
        "bidiagonal" => bidiagonal_suite(seed, sizes.bidiagonal, caps),
        other => return Err(Error::BadParameters(format!("unknown suite {other}"))),
    })
}
