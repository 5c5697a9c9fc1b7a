use serde::Serialize;

use towerset::gentower::{
    check_gts, find_gts_decomposition, is_generalized_towerizable, is_towerizable,
    GtsDecomposition, GtsFailure, PermutationScope, SearchCaps, Witness,
};
use towerset::hilbert_burch::{
    families_from_matrix, generators_from_matrix, orient_and_sort, standard_form_from_ideal,
    u_sets, verify_characterization, StandardFormMatrix, Towerization, USets,
};
use towerset::monomial::{height_and_equidimensional, ideal_from_support, minimal_primes};
use towerset::resolution::{betti_numbers, BettiTableJson};
use towerset::selftest::{run_suite, SuiteReport, SuiteSizes, SUITE_NAMES};
use towerset::series::h_vector_and_degree;
use towerset::tower::{
    h_vector_of_segment, is_tower_set, scale_segment, sigma_hash, star_configuration,
    tower_h_vector, DegreeTable, Family, LeftSegment,
};
use towerset::{HilbertVector, Monomial, MonomialIdeal, PointSet, PrimeSupport};

use crate::report::{combined_hash, Failure, Input, Report, Table, EXIT_INVARIANT};
use crate::{
    Cli, Command, GtsCmd, HbCmd, IdealCmd, Scope, SearchArgs, SegmentCmd, SelftestArgs, StarCmd,
    TowerCmd, VerifyCmd,
};

pub fn dispatch(cli: &Cli) -> Result<u8, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Tower(TowerCmd::Check { input }) => {
            let inp = Input::read(input)?;
            let t: PointSet = inp.parse("point set")?;
            let ok = is_tower_set(&t);
            let out = TowerCheck {
                is_tower: ok,
                c: t.c(),
                size: t.len(),
            };
            Report::new("tower check", inp.sha256, ok, out).emit(g)
        }
        Command::Tower(TowerCmd::Hash { input }) => {
            let inp = Input::read(input)?;
            let t: PointSet = inp.parse("point set")?;
            let hash = sigma_hash(&t)?;
            Report::new("tower hash", inp.sha256, true, hash).emit(g)
        }
        Command::Tower(TowerCmd::Hf { input, degrees }) => {
            let inp = Input::read(input)?;
            let t: PointSet = inp.parse("point set")?;
            let (d, hash) = match degrees {
                Some(path) => {
                    let dinp = Input::read(path)?;
                    let d: DegreeTable = dinp.parse("degree table")?;
                    (d, combined_hash(&[&inp, &dinp]))
                }
                None => (
                    DegreeTable::ones(sigma_hash(&t)?.size()),
                    inp.sha256.clone(),
                ),
            };
            let h = tower_h_vector(&t, &d)?;
            h_vector_report("tower hf", hash, h).emit(g)
        }
        Command::Segment(SegmentCmd::Hvec { input }) => {
            let inp = Input::read(input)?;
            let l = LeftSegment::new(inp.parse("point set")?)?;
            h_vector_report("segment hvec", inp.sha256, h_vector_of_segment(&l)).emit(g)
        }
        Command::Segment(SegmentCmd::Scale { input, degrees }) => {
            let inp = Input::read(input)?;
            let dinp = Input::read(degrees)?;
            let l = LeftSegment::new(inp.parse("point set")?)?;
            let scaled = scale_segment(&l, &dinp.parse("degree table")?)?;
            Report::new("segment scale", combined_hash(&[&inp, &dinp]), true, scaled).emit(g)
        }
        Command::Star(StarCmd::Gen { s, c }) => {
            let params = Input::from_bytes(format!("{{\"s\":{s},\"c\":{c}}}").into_bytes());
            let star = star_configuration(*s, *c)?;
            Report::new("star gen", params.sha256, true, star).emit(g)
        }
        Command::Ideal(cmd) => ideal(cmd, cli),
        Command::Gts(GtsCmd::Check { input }) => {
            let inp = Input::read(input)?;
            let d: GtsDecomposition = inp.parse("decomposition")?;
            let failure = check_gts(&d).err();
            let ok = failure.is_none();
            Report::new(
                "gts check",
                inp.sha256,
                ok,
                GtsCheck {
                    is_gts: ok,
                    failure,
                },
            )
            .emit(g)
        }
        Command::Gts(GtsCmd::Find { input, cap }) => {
            let inp = Input::read(input)?;
            let s: PointSet = inp.parse("point set")?;
            let found = find_gts_decomposition(&s, *cap)?;
            let ok = found.is_some();
            Report::new(
                "gts find",
                inp.sha256,
                ok,
                GtsFind {
                    decomposition: found,
                },
            )
            .emit(g)
        }
        Command::Towerizable(args) => search("towerizable", args, PermutationScope::Ambient, cli),
        Command::GenTowerizable(args) => {
            search("gen-towerizable", args, PermutationScope::Columns, cli)
        }
        Command::Hb(HbCmd::StandardForm { input }) => {
            let inp = Input::read(input)?;
            let i: MonomialIdeal = inp.parse("ideal")?;
            let matrix = standard_form_from_ideal(&i)?;
            let generators = generators_from_matrix(&matrix);
            Report::new(
                "hb standard-form",
                inp.sha256,
                true,
                StandardForm { matrix, generators },
            )
            .emit(g)
        }
        Command::Hb(HbCmd::Towerize { input }) => {
            let inp = Input::read(input)?;
            let m: StandardFormMatrix = inp.parse("standard-form matrix")?;
            let u = u_sets(&m)?;
            let towerization = orient_and_sort(&m, &u)?;
            let (f1, f2) = families_from_matrix(&m, &u, &towerization.tau_map())?;
            let out = Towerize {
                u_sets: u,
                towerization,
                families: Families { f1, f2 },
            };
            Report::new("hb towerize", inp.sha256, true, out).emit(g)
        }
        Command::Verify(VerifyCmd::Characterization {
            input,
            max_symbols,
            max_members,
        }) => {
            let inp = Input::read(input)?;
            let i: MonomialIdeal = inp.parse("ideal")?;
            let caps = SearchCaps {
                max_symbols: *max_symbols,
                max_members: *max_members,
            };
            let rep = verify_characterization(&i, caps)?;
            Report::new("verify characterization", inp.sha256, true, rep).emit(g)
        }
        Command::Selftest(args) => selftest(args, cli),
    }
}

fn h_vector_report(command: &'static str, hash: String, h: HilbertVector) -> Report<HVector> {
    let mut table: Table = vec![vec!["degree".into(), "h".into()]];
    for (k, v) in h.entries().iter().enumerate() {
        table.push(vec![k.to_string(), v.to_string()]);
    }
    let degree = h.sum();
    Report::new(
        command,
        hash,
        true,
        HVector {
            h_vector: h,
            degree,
        },
    )
    .with_table(table)
}

fn ideal(cmd: &IdealCmd, cli: &Cli) -> Result<u8, Failure> {
    let g = &cli.global;
    match cmd {
        IdealCmd::Build { input } => {
            let inp = Input::read(input)?;
            let s: PrimeSupport = inp.parse("support")?;
            let i = ideal_from_support(&s)?;
            Report::new("ideal build", inp.sha256, true, i).emit(g)
        }
        IdealCmd::Primes { input } => {
            let inp = Input::read(input)?;
            let i: MonomialIdeal = inp.parse("ideal")?;
            let primes = minimal_primes(&i)?;
            let (height, equidimensional) = height_and_equidimensional(&i)?;
            Report::new(
                "ideal primes",
                inp.sha256,
                true,
                Primes {
                    primes,
                    height,
                    equidimensional,
                },
            )
            .emit(g)
        }
        IdealCmd::Acm { input } => {
            let inp = Input::read(input)?;
            let i: MonomialIdeal = inp.parse("ideal")?;
            let (height, equidimensional) = height_and_equidimensional(&i)?;
            let betti = betti_numbers(&i)?;
            let pd = betti.projective_dimension();
            let acm = equidimensional && pd == height;
            let mut table: Table = vec![vec![
                "i".into(),
                "degree".into(),
                "sigma".into(),
                "value".into(),
            ]];
            for (k, sigma, v) in betti.iter() {
                let symbols: Vec<String> = sigma.iter().map(|s| s.to_string()).collect();
                table.push(vec![
                    k.to_string(),
                    sigma.len().to_string(),
                    symbols.join(","),
                    v.to_string(),
                ]);
            }
            let out = Acm {
                acm,
                height,
                equidimensional,
                projective_dimension: pd,
                betti: BettiTableJson::from(&betti),
            };
            Report::new("ideal acm", inp.sha256, acm, out)
                .with_table(table)
                .emit(g)
        }
        IdealCmd::Hvec { input, codim } => {
            let inp = Input::read(input)?;
            let i: MonomialIdeal = inp.parse("ideal")?;
            let c = match codim {
                Some(c) => *c,
                None => height_and_equidimensional(&i)?.0,
            };
            let (h, _) = h_vector_and_degree(&i, c)?;
            h_vector_report("ideal hvec", inp.sha256, h).emit(g)
        }
    }
}

fn search(
    command: &'static str,
    args: &SearchArgs,
    default: PermutationScope,
    cli: &Cli,
) -> Result<u8, Failure> {
    let inp = Input::read(&args.input)?;
    let u: PrimeSupport = inp.parse("support")?;
    let caps = SearchCaps {
        max_symbols: args.max_symbols,
        max_members: args.max_members,
    };
    let scope = match args.scope {
        Some(Scope::Ambient) => PermutationScope::Ambient,
        Some(Scope::Columns) => PermutationScope::Columns,
        None => default,
    };
    let witness = if command == "towerizable" {
        is_towerizable(&u, caps, scope)?
    } else {
        is_generalized_towerizable(&u, caps, scope)?
    };
    let ok = witness.is_some();
    let verdict = match (command, ok) {
        ("towerizable", true) => "towerizable",
        ("towerizable", false) => "not towerizable",
        (_, true) => "generalized towerizable",
        (_, false) => "not generalized towerizable",
    };
    let out = Search {
        verdict,
        scope: match scope {
            PermutationScope::Ambient => "ambient",
            PermutationScope::Columns => "columns",
        },
        caps,
        witness,
    };
    Report::new(command, inp.sha256, ok, out).emit(&cli.global)
}

fn selftest(args: &SelftestArgs, cli: &Cli) -> Result<u8, Failure> {
    let suites: Vec<&str> = if args.suites.is_empty() {
        SUITE_NAMES.to_vec()
    } else {
        SUITE_NAMES
            .iter()
            .copied()
            .filter(|s| args.suites.iter().any(|a| a == s))
            .collect()
    };
    let sizes = match args.count {
        Some(k) => SuiteSizes {
            towers: k,
            hashes: k,
            hilbert: k,
            gts: k,
            matrices: k,
            resolutions: k,
            bidiagonal: k,
        },
        None => SuiteSizes::default(),
    };
    let params = SelftestParams {
        seed: args.seed,
        suites: suites.clone(),
        sizes,
    };
    let hash = Input::from_bytes(serde_json::to_vec(&params).expect("plain data")).sha256;
    let reports: Vec<SuiteReport> = suites
        .iter()
        .map(|name| run_suite(name, args.seed, sizes, SearchCaps::default()))
        .collect::<Result<_, _>>()?;
    let passed = reports.iter().all(SuiteReport::passed);
    let mut table: Table = vec![vec![
        "suite".into(),
        "instances".into(),
        "checks".into(),
        "failures".into(),
    ]];
    for r in &reports {
        table.push(vec![
            r.suite.clone(),
            r.instances.to_string(),
            r.checks.to_string(),
            r.failure_count.to_string(),
        ]);
    }
    let code = Report::new(
        "selftest",
        hash,
        passed,
        Selftest {
            params,
            suites: reports,
        },
    )
    .with_table(table)
    .emit(&cli.global)?;
    if passed {
        Ok(code)
    } else {
        eprintln!("towerset: property suite failures");
        Ok(EXIT_INVARIANT)
    }
}

#[derive(Serialize)]
struct TowerCheck {
    is_tower: bool,
    c: usize,
    size: usize,
}

#[derive(Serialize)]
struct HVector {
    h_vector: HilbertVector,
    degree: i64,
}

#[derive(Serialize)]
struct Primes {
    primes: Vec<Vec<usize>>,
    height: usize,
    equidimensional: bool,
}

#[derive(Serialize)]
struct Acm {
    acm: bool,
    height: usize,
    equidimensional: bool,
    projective_dimension: usize,
    betti: BettiTableJson,
}

#[derive(Serialize)]
struct GtsCheck {
    is_gts: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    failure: Option<GtsFailure>,
}

#[derive(Serialize)]
struct GtsFind {
    decomposition: Option<GtsDecomposition>,
}

#[derive(Serialize)]
struct Search {
    verdict: &'static str,
    scope: &'static str,
    caps: SearchCaps,
    witness: Option<Witness>,
}

#[derive(Serialize)]
struct StandardForm {
    matrix: StandardFormMatrix,
    generators: Vec<Monomial>,
}

#[derive(Serialize)]
struct Families {
    f1: Family,
    f2: Family,
}

#[derive(Serialize)]
struct Towerize {
    u_sets: USets,
    towerization: Towerization,
    families: Families,
}

#[derive(Serialize)]
struct SelftestParams<'a> {
    seed: u64,
    suites: Vec<&'a str>,
    sizes: SuiteSizes,
}

#[derive(Serialize)]
struct Selftest<'a> {
    params: SelftestParams<'a>,
    suites: Vec<SuiteReport>,
}
