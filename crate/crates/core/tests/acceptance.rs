//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::time::{Duration, Instant};

use towerset::gentower::{is_towerizable, PermutationScope, SearchCaps};
use towerset::hilbert_burch::verify_characterization;
use towerset::monomial::{ideal_from_support, Monomial, MonomialIdeal, PrimeSupport};
use towerset::resolution::is_acm;
use towerset::selftest::{
    bidiagonal_suite, colon_suite, gts_acm_suite, hilbert_suite, resolution_suite,
    round_trip_suite, sigma_hash_suite, tower_acm_suite, SuiteReport,
};
use towerset::tower::{is_tower_set, PointSet};

const SEED: u64 = 20240611;

struct Line {
    passed: bool,
    detail: String,
}

fn from_suite(
    r: SuiteReport,
    min_instances: usize,
    elapsed: Duration,
    limit: Option<Duration>,
) -> Line {
    let mut passed = r.passed() && r.instances >= min_instances;
    let mut detail = format!(
        "{} instances, {} checks, {} failures, {:.2}s",
        r.instances,
        r.checks,
        r.failure_count,
        elapsed.as_secs_f64()
    );
    if let Some(limit) = limit {
        if elapsed > limit {
            passed = false;
            detail.push_str(&format!(" (limit {}s)", limit.as_secs()));
        }
    }
    for f in r.failures.iter().take(3) {
        detail.push_str(&format!("\n    {f}"));
    }
    Line { passed, detail }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
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

/// Every orientation of every member and every relabeling of `[n]`.
fn literal_towerizable(u: &PrimeSupport) -> bool {
    let members: Vec<[u32; 2]> = u
        .members()
        .iter()
        .map(|m| [m[0] as u32, m[1] as u32])
        .collect();
    let n = u.n() as u32;
    for mask in 0..1u32 << members.len() {
        let oriented: Vec<[u32; 2]> = members
            .iter()
            .enumerate()
            .map(|(k, &[a, b])| if mask >> k & 1 == 1 { [b, a] } else { [a, b] })
            .collect();
        let mut perm: Vec<u32> = (1..=n).collect();
        loop {
            let image = oriented
                .iter()
                .map(|&[a, b]| vec![perm[a as usize - 1], perm[b as usize - 1]]);
            if is_tower_set(&PointSet::new(2, image).unwrap()) {
                return true;
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }
    false
}

fn worked_example() -> Line {
    let start = Instant::now();
    let mut problems = Vec::new();
    let support = PrimeSupport::new(
        6,
        2,
        [[1, 2], [3, 4], [5, 6], [4, 6], [1, 4], [1, 6]].map(Vec::from),
    )
    .unwrap();
    let ideal = ideal_from_support(&support).unwrap();
    let want = MonomialIdeal::new(
        6,
        [&[2, 4, 6][..], &[1, 4, 6], &[1, 3, 6], &[1, 4, 5]].map(|s| Monomial::from_support(6, s)),
    )
    .unwrap();
    if ideal != want {
        problems.push(format!("ideal {ideal}"));
    }
    if !is_acm(&ideal).unwrap() {
        problems.push("not aCM".into());
    }
    if literal_towerizable(&support) {
        problems.push("literal search finds a tower".into());
    }
    match is_towerizable(&support, SearchCaps::default(), PermutationScope::Ambient) {
        Ok(None) => {}
        other => problems.push(format!("towerizable search returned {other:?}")),
    }
    match verify_characterization(&ideal, SearchCaps::default()) {
        Ok(rep) => {
            let d = &rep.towerization.as_ref().unwrap().decomposition;
            let pts = |p: &[[u32; 2]]| PointSet::new(2, p.iter().map(|x| x.to_vec())).unwrap();
            if d.t() != &pts(&[[3, 1], [4, 1], [4, 2], [4, 3], [6, 1]]) {
                problems.push(format!("T = {:?}", d.t()));
            }
            if d.s0() != &pts(&[[5, 3]]) {
                problems.push(format!("S0 = {:?}", d.s0()));
            }
            if rep.reconstructed.as_ref() != Some(&ideal) {
                problems.push("reconstruction differs".into());
            }
        }
        Err(e) => problems.push(format!("characterization: {e}")),
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(5) {
        problems.push(format!("took {:.2}s (limit 5s)", elapsed.as_secs_f64()));
    }
    Line {
        passed: problems.is_empty(),
        detail: if problems.is_empty() {
            format!(
                "ideal, aCM, 64 x 720 literal search, pipeline intermediates, {:.2}s",
                elapsed.as_secs_f64()
            )
        } else {
            problems.join("; ")
        },
    }
}

type Check = (&'static str, Box<dyn Fn() -> Line>);

fn main() {
    let caps = SearchCaps::default();
    let criteria: Vec<Check> = vec![
        ("six-member example end to end", Box::new(worked_example)),
        (
            "tower schemes have pd = c",
            Box::new(|| {
                let (r, t) = timed(|| tower_acm_suite(SEED, 200));
                from_suite(r, 200, t, None)
            }),
        ),
        (
            "sigma hash is a left segment and monotone",
            Box::new(|| {
                let (r, t) = timed(|| sigma_hash_suite(SEED, 500));
                from_suite(r, 500, t, None)
            }),
        ),
        (
            "Hilbert function differences match tower h-vectors",
            Box::new(|| {
                let (r, t) = timed(|| hilbert_suite(SEED, 120));
                from_suite(r, 100, t, None)
            }),
        ),
        (
            "generalized tower sets are aCM",
            Box::new(|| {
                let (r, t) = timed(|| gts_acm_suite(SEED, 200));
                from_suite(r, 200, t, None)
            }),
        ),
        (
            "standard forms round trip through generalized tower sets",
            Box::new(|| {
                let (r, t) = timed(|| round_trip_suite(SEED, 200));
                from_suite(r, 200, t, None)
            }),
        ),
        (
            "colon ideals",
            Box::new(|| {
                let (r, t) = timed(|| colon_suite(SEED, 200, 200, 200));
                from_suite(r, 600, t, None)
            }),
        ),
        (
            "lcm-lattice pd equals Taylor pd",
            Box::new(|| {
                let (r, t) = timed(|| resolution_suite(SEED, 200));
                from_suite(r, 200, t, Some(Duration::from_secs(60)))
            }),
        ),
        (
            "bidiagonal forms are towerizable with empty S0",
            Box::new(move || {
                let (r, t) = timed(|| bidiagonal_suite(SEED, 100, caps));
                from_suite(r, 100, t, None)
            }),
        ),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let line = run();
        let status = if line.passed { "PASS" } else { "FAIL" };
        println!("criterion {}: {status}: {name}: {}", k + 1, line.detail);
        if !line.passed {
            failed += 1;
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
