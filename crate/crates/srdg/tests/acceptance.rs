//! Acceptance suite. Prints one PASS or FAIL line per criterion and exits
//! non-zero when any criterion fails.
//!
//! Criteria 3 to 5 need a MILP backend: `$SRDG_SOLVER_CMD`, or the bundled
//! HiGHS driver when `python3 -c "import highspy"` works.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use srdg::backend::{decide, solve_milp, solve_relaxation, Dialect, SolverBackend, SOLVER_ENV};
use srdg_core::dp_path::solve_path_dp;
use srdg_core::exact::{brute_force_feasible, min_slack_oracle};
use srdg_core::generators::artificial::{C_LEVELS, D_LEVELS, PATH_L, PATH_N, PATH_P, STAR_P};
use srdg_core::generators::{
    gen_path_instance, gen_star_instance, random_small_instance, PathGenParams, SmallParams, SmallShape,
    StarGenParams,
};
use srdg_core::milp::MilpOptions;
use srdg_core::reductions::{
    oracle_223sat, oracle_is, oracle_mis_uig, oracle_vc, random_formula223, reduce_223sat, reduce_cubic_is,
    reduce_mis_uig, reduce_vertex_cover, CubicGraph, SimpleGraph, UnitIntervalInstance, VcInstance,
};
use srdg_core::star::solve_star;
use srdg_core::{validate, validate_with_slack, Instance, Shape, Time};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

fn workers() -> usize {
    std::thread::available_parallelism().map_or(4, |n| n.get()).min(8)
}

/// `f` over `items` on a worker pool, results in input order.
fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let next = AtomicUsize::new(0);
    let out: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..workers() {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(item) = items.get(i) else { break };
                let r = f(item);
                out.lock().unwrap()[i] = Some(r);
            });
        }
    });
    out.into_inner().unwrap().into_iter().map(Option::unwrap).collect()
}

fn backend() -> Option<SolverBackend> {
    if let Ok(b) = SolverBackend::resolve(None, Dialect::Plain) {
        return Some(b);
    }
    let has_highs = Command::new("python3")
        .args(["-c", "import highspy"])
        .output()
        .is_ok_and(|o| o.status.success());
    let script = concat!(env!("CARGO_MANIFEST_DIR"), "/../../scripts/highs_backend.py");
    has_highs.then(|| SolverBackend::new(format!("python3 {script} {{model}} {{solution}}"), Dialect::Plain))
}

fn small_corpus(shape: SmallShape, count: usize, seed: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut params = SmallParams::new(shape);
    if shape == SmallShape::Star {
        params.max_vertices = 7;
    }
    (0..count).map(|_| random_small_instance(&mut rng, &params)).collect()
}

fn within(elapsed: Duration, limit_secs: u64) -> bool {
    elapsed <= Duration::from_secs(limit_secs)
}

/// Exact solver against brute force with schedule validation.
/// `solve` returns whether the engines agree and whether brute force found a
/// schedule.
fn oracle_equivalence(corpus: &[Instance], solve: fn(&Instance) -> (bool, bool)) -> Verdict {
    let start = Instant::now();
    let runs = par_map(corpus, |inst| solve(inst));
    let elapsed = start.elapsed();
    let mismatches = runs.iter().filter(|(ok, _)| !ok).count();
    let feasible = runs.iter().filter(|(_, f)| *f).count();
    verdict(
        mismatches == 0 && within(elapsed, 120),
        format!(
            "{} instances ({feasible} feasible), {mismatches} mismatches, {elapsed:.1?} (limit 2 min)",
            corpus.len()
        ),
    )
}

fn dp_matches(inst: &Instance) -> (bool, bool) {
    let brute = brute_force_feasible(inst, 0).expect("brute force runs");
    let dp = solve_path_dp(inst).expect("path DP runs");
    let ok = brute.is_feasible() == dp.is_feasible()
        && dp.schedule().is_none_or(|s| validate(inst, s).unwrap().is_valid());
    (ok, brute.is_feasible())
}

fn star_matches(inst: &Instance) -> (bool, bool) {
    let brute = brute_force_feasible(inst, 0).expect("brute force runs");
    let star = solve_star(inst).expect("star solver runs");
    let ok = brute.is_feasible() == star.is_feasible()
        && star.schedule().is_none_or(|s| validate(inst, s).unwrap().is_valid());
    (ok, brute.is_feasible())
}

struct MilpRun {
    exact: bool,
    relaxed: Option<f64>,
    d_star: Time,
    error: Option<String>,
}

fn milp_run(inst: &Instance, backend: &SolverBackend) -> MilpRun {
    let oracle = min_slack_oracle(inst).expect("oracle runs");
    let mut run = MilpRun {
        exact: false,
        relaxed: None,
        d_star: oracle.d_star,
        error: None,
    };
    match solve_milp(inst, backend) {
        Ok(o) => {
            run.exact = o.d_star == oracle.d_star
                && validate_with_slack(inst, &o.schedule, o.d_star).unwrap().is_valid();
        }
        Err(e) => run.error = Some(e.to_string()),
    }
    match solve_relaxation(inst, backend) {
        Ok(r) => run.relaxed = Some(r),
        Err(e) => run.error = Some(format!("relaxation: {e}")),
    }
    run
}

fn mean_std_median(values: &[f64]) -> (f64, f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let std = (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt();
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    let median = if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    };
    (mean, std, median)
}

fn criteria_3_and_4(backend: Option<&SolverBackend>) -> (Verdict, Verdict) {
    let Some(backend) = backend else {
        let none = || verdict(false, "no MILP backend configured".into());
        return (none(), none());
    };
    let mut corpus = small_corpus(SmallShape::Path, 70, 31);
    corpus.extend(small_corpus(SmallShape::Star, 70, 32));
    corpus.extend(small_corpus(SmallShape::Tree, 70, 33));
    let start = Instant::now();
    let runs = par_map(&corpus, |inst| milp_run(inst, backend));
    let elapsed = start.elapsed();

    let errors: Vec<&String> = runs.iter().filter_map(|r| r.error.as_ref()).collect();
    let wrong = runs.iter().filter(|r| !r.exact).count();
    let c3 = verdict(
        wrong == 0 && errors.is_empty() && within(elapsed, 600),
        format!(
            "{} instances, {wrong} with wrong d* or invalid schedule, {} backend errors{}, {elapsed:.1?} (limit 10 min)",
            corpus.len(),
            errors.len(),
            errors.first().map(|e| format!(" (first: {e})")).unwrap_or_default()
        ),
    );

    let bounded: Vec<(f64, Time)> = runs.iter().filter_map(|r| r.relaxed.map(|x| (x, r.d_star))).collect();
    let violations = bounded.iter().filter(|&&(x, d)| x > d as f64 + 1e-6).count();
    let ratios: Vec<f64> = bounded.iter().filter(|&&(_, d)| d > 0).map(|&(x, d)| x / d as f64).collect();
    let stats = if ratios.is_empty() {
        "no instance with positive d*".into()
    } else {
        let (m, s, med) = mean_std_median(&ratios);
        format!("ratio over {} instances with d* > 0: mean {m:.3}, std {s:.3}, median {med:.3}", ratios.len())
    };
    let c4 = verdict(
        violations == 0 && bounded.len() == corpus.len(),
        format!(
            "{} of {} relaxations solved, {violations} above d*; {stats}",
            bounded.len(),
            corpus.len()
        ),
    );
    (c3, c4)
}

enum Source {
    Vc(VcInstance),
    CubicIs(CubicGraph, usize),
    MisUig(UnitIntervalInstance),
    Sat(srdg_core::reductions::Formula223),
}

impl Source {
    fn family(&self) -> &'static str {
        match self {
            Source::Vc(_) => "vertex cover",
            Source::CubicIs(..) => "cubic independent set",
            Source::MisUig(_) => "multicolored interval independent set",
            Source::Sat(_) => "(2,2)-3SAT",
        }
    }

    fn reduce(&self) -> Instance {
        match self {
            Source::Vc(s) => reduce_vertex_cover(s),
            Source::CubicIs(g, k) => reduce_cubic_is(g, *k),
            Source::MisUig(s) => reduce_mis_uig(s),
            Source::Sat(f) => reduce_223sat(f),
        }
        .expect("sources are in range")
    }

    fn oracle(&self) -> bool {
        match self {
            Source::Vc(s) => oracle_vc(s),
            Source::CubicIs(g, k) => oracle_is(g.graph(), *k),
            Source::MisUig(s) => oracle_mis_uig(s),
            Source::Sat(f) => oracle_223sat(f),
        }
        .expect("sources are small")
    }
}

/// Class start sets within `1..=4` whose unit intervals are disjoint.
fn class_choices() -> Vec<Vec<Time>> {
    let mut out = Vec::new();
    for mask in 1u32..16 {
        let starts: Vec<Time> = (1..=4).filter(|s| mask >> (s - 1) & 1 == 1).collect();
        if starts.windows(2).all(|w| w[1] - w[0] >= 2) {
            out.push(starts);
        }
    }
    out
}

fn reduction_sources() -> Vec<Source> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for g in SimpleGraph::all_on(n) {
            for k in 0..=n {
                out.push(Source::Vc(VcInstance::new(g.clone(), k).unwrap()));
            }
        }
    }
    for g in [SimpleGraph::complete(4), SimpleGraph::cube()] {
        for k in 1..=3 {
            out.push(Source::CubicIs(CubicGraph::new(g.clone()).unwrap(), k));
        }
    }
    let choices = class_choices();
    for a in &choices {
        out.push(Source::MisUig(UnitIntervalInstance::from_unit_starts(vec![a.clone()]).unwrap()));
        for b in &choices {
            if a.len() + b.len() <= 4 {
                out.push(Source::MisUig(
                    UnitIntervalInstance::from_unit_starts(vec![a.clone(), b.clone()]).unwrap(),
                ));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(223);
    for _ in 0..24 {
        out.push(Source::Sat(random_formula223(&mut rng, 3).unwrap()));
    }
    out
}

struct ReductionRun {
    family: &'static str,
    expected: bool,
    agrees: bool,
    structural: Option<bool>,
    error: Option<String>,
}

fn structural_ok(source: &Source, inst: &Instance) -> Option<bool> {
    let g = inst.graph();
    match source {
        Source::MisUig(_) => Some(
            g.shape() == Shape::Path
                && g.is_exogenous() == Ok(true)
                && (0..g.vertex_count()).all(|v| g.vertices()[v].capacity == 1),
        ),
        Source::Sat(_) => Some(
            g.shape().is_tree() && g.is_exogenous() == Ok(true) && inst.is_uncapacitated() && g.tau() == 4,
        ),
        _ => None,
    }
}

fn criteria_5_and_6(backend: Option<&SolverBackend>) -> (Verdict, Verdict) {
    let sources = reduction_sources();
    let structural_only = |sources: &[Source]| {
        let checked: Vec<bool> = sources
            .iter()
            .filter_map(|s| structural_ok(s, &s.reduce()))
            .collect();
        let bad = checked.iter().filter(|ok| !**ok).count();
        verdict(bad == 0, format!("{} gadgets checked, {bad} violate the shape claims", checked.len()))
    };
    let Some(backend) = backend else {
        return (verdict(false, "no MILP backend configured".into()), structural_only(&sources));
    };
    let mut folded = backend.clone();
    folded.options = MilpOptions {
        presolve: true,
        fold_fixed_paths: true,
    };
    let start = Instant::now();
    let runs = par_map(&sources, |s| {
        let inst = s.reduce();
        let expected = s.oracle();
        let mut run = ReductionRun {
            family: s.family(),
            expected,
            agrees: false,
            structural: structural_ok(s, &inst),
            error: None,
        };
        match decide(&inst, &folded) {
            Ok(o) => {
                let valid = o.schedule().is_none_or(|sch| validate(&inst, sch).unwrap().is_valid());
                run.agrees = valid && o.is_feasible() == expected;
            }
            Err(e) => run.error = Some(e.to_string()),
        }
        run
    });
    let elapsed = start.elapsed();

    let mut parts = Vec::new();
    let mut total_bad = 0;
    for family in ["vertex cover", "cubic independent set", "multicolored interval independent set", "(2,2)-3SAT"] {
        let of: Vec<&ReductionRun> = runs.iter().filter(|r| r.family == family).collect();
        let yes = of.iter().filter(|r| r.expected).count();
        let bad = of.iter().filter(|r| !r.agrees).count();
        total_bad += bad;
        parts.push(format!("{family}: {} sources ({yes} yes), {bad} mismatches", of.len()));
    }
    let first_error = runs.iter().find_map(|r| r.error.as_ref());
    let c5 = verdict(
        total_bad == 0 && within(elapsed, 1800),
        format!(
            "{}; {elapsed:.1?} (limit 30 min){}",
            parts.join("; "),
            first_error.map(|e| format!("; first error: {e}")).unwrap_or_default()
        ),
    );
    let checked: Vec<bool> = runs.iter().filter_map(|r| r.structural).collect();
    let bad = checked.iter().filter(|ok| !**ok).count();
    let c6 = verdict(bad == 0, format!("{} gadgets checked, {bad} violate the shape claims", checked.len()));
    (c5, c6)
}

/// Hundredths of a design factor, exact for the two-decimal levels.
fn hundredths(x: f64) -> i64 {
    (x * 100.0).round() as i64
}

fn round_half_up_hundredths(num: i64) -> i64 {
    (num + 50).div_euclid(100)
}

/// Capacity and deadline audit against an independent evaluation of the
/// formulas in integer arithmetic.
fn audit(inst: &Instance, c_star: f64, d_star: f64) -> bool {
    let g = inst.graph();
    let (c, d) = (hundredths(c_star), hundredths(d_star));
    let load = inst.vertex_load();
    let caps_ok = (0..g.vertex_count()).all(|v| {
        let expected = ((c * load.per_vertex[v] as i64 + 99) / 100).max(1);
        g.vertices()[v].capacity as i64 == expected
    });
    let mut users = vec![0 as Time; g.connections().len()];
    let mut latest = vec![0 as Time; g.connections().len()];
    for path in inst.paths() {
        let mut t = 1;
        for &h in path.hops() {
            t += g.connection(h).theta;
            users[h.0] += 1;
            latest[h.0] = latest[h.0].max(t);
        }
    }
    let deadlines_ok = g.connections().iter().enumerate().all(|(i, conn)| {
        let lb = if users[i] == 0 {
            conn.theta + 1
        } else {
            conn.theta + users[i].max(latest[i])
        };
        conn.deadline == round_half_up_hundredths(d * lb).max(1)
    });
    caps_ok && deadlines_ok
}

fn chi_square(counts: &[usize]) -> f64 {
    let n: usize = counts.iter().sum();
    let expected = n as f64 / counts.len() as f64;
    counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum()
}

/// Mean plus three standard deviations of a chi-square variable.
fn chi_square_limit(bins: usize) -> f64 {
    let dof = (bins - 1) as f64;
    dof + 3.0 * (2.0 * dof).sqrt()
}

fn criterion_7() -> Verdict {
    let start = Instant::now();
    let mut audited = 0;
    let mut bad = Vec::new();
    let mut seed = 0;
    for &n in &PATH_N {
        for &p_star in &PATH_P {
            for &c_star in &C_LEVELS {
                for &d_star in &D_LEVELS {
                    for &l_star in &PATH_L {
                        seed += 1;
                        let params = PathGenParams {
                            n,
                            p_star,
                            l_star,
                            c_star,
                            d_star,
                            seed,
                        };
                        let inst = gen_path_instance(&params).expect("path design generates");
                        let paths = round_half_up_hundredths(hundredths(p_star) * n as i64) as usize;
                        audited += 1;
                        if inst.paths().len() != paths || !audit(&inst, c_star, d_star) {
                            bad.push(format!("path n={n} p*={p_star} c*={c_star} d*={d_star} l*={l_star}"));
                        }
                    }
                }
            }
        }
    }
    for &n in &[8, 12, 16] {
        for &p_star in &STAR_P {
            for &c_star in &C_LEVELS {
                for &d_star in &D_LEVELS {
                    seed += 1;
                    let params = StarGenParams {
                        n,
                        p_star,
                        c_star,
                        d_star,
                        seed,
                    };
                    let inst = gen_star_instance(&params).expect("star design generates");
                    let paths = round_half_up_hundredths(hundredths(p_star) * n as i64) as usize;
                    audited += 1;
                    if inst.paths().len() != paths || !audit(&inst, c_star, d_star) {
                        bad.push(format!("star n={n} p*={p_star} c*={c_star} d*={d_star}"));
                    }
                }
            }
        }
    }

    // Link kinds and traversal times over the first 1000 links of fresh paths.
    let mut kinds = [0usize; 3];
    let mut directions = [0usize; 2];
    let mut thetas = [0usize; 16];
    let mut theta_draws = 0;
    let mut links = 0;
    let mut seed = 10_000;
    while links < 1000 || theta_draws < 1000 {
        seed += 1;
        let params = PathGenParams {
            n: 16,
            p_star: 0.5,
            l_star: 0.33,
            c_star: 1.0,
            d_star: 1.0,
            seed,
        };
        let inst = gen_path_instance(&params).expect("path generates");
        let g = inst.graph();
        for v in 1..g.vertex_count() {
            let between: Vec<_> = g
                .connections()
                .iter()
                .filter(|c| (c.tail.0 == v - 1 && c.head.0 == v) || (c.tail.0 == v && c.head.0 == v - 1))
                .collect();
            if links < 1000 {
                links += 1;
                match between.as_slice() {
                    [c] if c.is_edge() => kinds[2] += 1,
                    [c] => {
                        kinds[0] += 1;
                        directions[usize::from(c.tail.0 > c.head.0)] += 1;
                    }
                    _ => kinds[1] += 1,
                }
            }
            for c in between {
                if theta_draws < 1000 {
                    theta_draws += 1;
                    thetas[(c.theta - 5) as usize] += 1;
                }
            }
        }
    }
    let sigma = (1000.0_f64 * (1.0 / 3.0) * (2.0 / 3.0)).sqrt();
    let kinds_ok = kinds.iter().all(|&k| (k as f64 - 1000.0 / 3.0).abs() <= 3.0 * sigma);
    let (chi_k, chi_d, chi_t) = (chi_square(&kinds), chi_square(&directions), chi_square(&thetas));
    let dist_ok = kinds_ok
        && chi_k <= chi_square_limit(3)
        && chi_d <= chi_square_limit(2)
        && chi_t <= chi_square_limit(16);
    let elapsed = start.elapsed();
    verdict(
        bad.is_empty() && dist_ok && within(elapsed, 60),
        format!(
            "{audited} design points audited, {} off ({}); kinds {kinds:?} chi2 {chi_k:.2} (limit {:.2}); \
             arc directions {directions:?} chi2 {chi_d:.2}; theta chi2 {chi_t:.2} over 16 bins (limit {:.2}); {elapsed:.1?}",
            bad.len(),
            bad.first().map_or("none", String::as_str),
            chi_square_limit(3),
            chi_square_limit(16)
        ),
    )
}

fn criterion_8(paths: &[Instance], stars: &[Instance]) -> Verdict {
    let path_bad = paths
        .iter()
        .filter(|i| {
            i.vertex_load().max as Time > 4 * i.tau() && brute_force_feasible(i, 0).unwrap().is_feasible()
        })
        .count();
    let star_bad = stars
        .iter()
        .filter(|i| {
            let g = i.graph();
            let center = g.star_center().expect("star corpus");
            let d_max = g.connections().iter().map(|c| c.deadline).max().unwrap_or(0);
            i.paths().len() as Time > g.capacity(center) as Time * d_max
                && brute_force_feasible(i, 0).unwrap().is_feasible()
        })
        .count();
    verdict(
        path_bad + star_bad == 0,
        format!(
            "{} paths: {path_bad} feasible with vl > 4 tau; {} stars: {star_bad} feasible with |P| > c* d*",
            paths.len(),
            stars.len()
        ),
    )
}

fn criterion_9() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_srdg");
    let dir = tempfile::tempdir().expect("temp dir");
    let corpus = dir.path().join("grid");
    let records = dir.path().join("records.csv");
    let summary = dir.path().join("summary.csv");
    let start = Instant::now();
    let generated = Command::new(bin)
        .args(["generate", "path", "--grid", "--limit", "50", "--seed", "9", "--out"])
        .arg(&corpus)
        .status()
        .is_ok_and(|s| s.success());
    let benched = Command::new(bin)
        .env_remove(SOLVER_ENV)
        .arg("bench")
        .arg(&corpus)
        .args(["--engines", "auto", "--workers", &workers().to_string(), "--out"])
        .arg(&records)
        .arg("--summary")
        .arg(&summary)
        .status()
        .is_ok_and(|s| s.success());
    let elapsed = start.elapsed();

    let header = [
        "instance",
        "engine",
        "rep",
        "verdict",
        "d_star",
        "wall_ms",
        "relaxed_d_star",
        "ratio",
        "error",
    ];
    let mut rows = 0;
    let mut malformed = 0;
    if let Ok(mut reader) = csv::Reader::from_path(&records) {
        let header_ok = reader.headers().is_ok_and(|h| h.iter().eq(header));
        malformed += usize::from(!header_ok);
        for rec in reader.records() {
            rows += 1;
            let ok = rec.is_ok_and(|r| {
                r.len() == header.len()
                    && matches!(&r[3], "feasible" | "infeasible")
                    && r[5].parse::<f64>().is_ok_and(|t| t >= 0.0)
            });
            malformed += usize::from(!ok);
        }
    } else {
        malformed += 1;
    }
    let summary_rows = csv::Reader::from_path(&summary).map_or(0, |mut r| r.records().filter(Result::is_ok).count());
    verdict(
        generated && benched && rows == 50 && malformed == 0 && summary_rows == 1 && within(elapsed, 300),
        format!("{rows} records, {malformed} malformed, {summary_rows} summary row, {elapsed:.1?} (limit 5 min)"),
    )
}

fn guarded(f: impl FnOnce() -> Verdict) -> Verdict {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        verdict(false, format!("panicked: {msg}"))
    })
}

fn main() -> ExitCode {
    let backend = backend();
    match &backend {
        Some(b) => println!("MILP backend: {}", b.template),
        None => println!("MILP backend: none"),
    }
    let paths = small_corpus(SmallShape::Path, 500, 1);
    let stars = small_corpus(SmallShape::Star, 500, 2);

    let mut all = true;
    let mut report = |n: usize, name: &str, v: Verdict| {
        all &= v.pass;
        println!("criterion {n} ({name}): {}  {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
    };
    report(1, "oracle equivalence, paths", guarded(|| oracle_equivalence(&paths, dp_matches)));
    report(2, "oracle equivalence, stars", guarded(|| oracle_equivalence(&stars, star_matches)));
    let (c3, c4) = catch_unwind(AssertUnwindSafe(|| criteria_3_and_4(backend.as_ref())))
        .unwrap_or_else(|_| (verdict(false, "panicked".into()), verdict(false, "panicked".into())));
    report(3, "MILP exactness", c3);
    report(4, "relaxation bound", c4);
    let (c5, c6) = catch_unwind(AssertUnwindSafe(|| criteria_5_and_6(backend.as_ref())))
        .unwrap_or_else(|_| (verdict(false, "panicked".into()), verdict(false, "panicked".into())));
    report(5, "reduction correctness", c5);
    report(6, "gadget structure", c6);
    report(7, "generator conformance", guarded(criterion_7));
    report(8, "pre-check soundness", guarded(|| criterion_8(&paths, &stars)));
    report(9, "bench smoke run", guarded(criterion_9));
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
