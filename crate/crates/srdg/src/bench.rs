//! Batch runs over a directory of instance files with CSV output.
//!
//! Instance names of the form `I_..._x` belong to the constellation obtained
//! by dropping the trailing replicate index `x`. Timings are aggregated per
//! constellation by median and by mean, and both are averaged over
//! constellations.

use std::io::Write;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;
use srdg_core::{Instance, Time};

use crate::backend::{solve_relaxation, SolverBackend};
use crate::engine::Engine;
use crate::io::parse_instance;

/// Result of one engine run on one instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub instance: String,
    pub engine: String,
    pub rep: usize,
    /// `feasible`, `infeasible` or `error`.
    pub verdict: String,
    pub d_star: Option<Time>,
    pub wall_ms: f64,
    pub relaxed_d_star: Option<f64>,
    /// Relaxed over integral slack; empty when the integral slack is zero.
    pub ratio: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub engines: Vec<Engine>,
    pub repetitions: usize,
    /// Whether MILP runs also solve the relaxation.
    pub relaxation: bool,
    pub backend: Option<SolverBackend>,
    pub workers: usize,
}

/// Every `*.json` file of `dir` in name order, parsed or with the parse
/// error.
pub fn load_corpus(dir: &Path) -> std::io::Result<Vec<(String, Result<Instance, String>)>> {
    let mut files: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(Result::ok)
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "json") && !is_sidecar(p))
        .collect();
    files.sort();
    Ok(files
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            let parsed = std::fs::read_to_string(&p)
                .map_err(|e| e.to_string())
                .and_then(|t| parse_instance(&t).map_err(|e| e.to_string()));
            (name, parsed)
        })
        .collect())
}

fn is_sidecar(p: &Path) -> bool {
    p.file_name()
        .is_some_and(|n| n.to_string_lossy().ends_with(".verdict.json"))
}

fn run_one(name: &str, instance: &Result<Instance, String>, engine: Engine, rep: usize, cfg: &BenchConfig) -> BenchRecord {
    let mut record = BenchRecord {
        instance: name.to_owned(),
        engine: engine.to_string(),
        rep,
        verdict: "error".into(),
        d_star: None,
        wall_ms: 0.0,
        relaxed_d_star: None,
        ratio: None,
        error: None,
    };
    let instance = match instance {
        Ok(i) => i,
        Err(e) => {
            record.error = Some(e.clone());
            return record;
        }
    };
    let backend = cfg.backend.as_ref();
    let start = Instant::now();
    if engine.resolve(instance, backend) == Engine::Milp {
        match engine.min_slack(instance, backend) {
            Ok(o) => {
                record.verdict = verdict(o.d_star == 0);
                record.d_star = Some(o.d_star);
            }
            Err(e) => record.error = Some(e.to_string()),
        }
        record.wall_ms = start.elapsed().as_secs_f64() * 1e3;
        if cfg.relaxation {
            if let (Some(b), Some(d)) = (backend, record.d_star) {
                match solve_relaxation(instance, b) {
                    Ok(r) => {
                        record.relaxed_d_star = Some(r);
                        record.ratio = (d > 0).then(|| r / d as f64);
                    }
                    Err(e) => record.error = Some(format!("relaxation: {e}")),
                }
            }
        }
    } else {
        match engine.decide(instance, backend) {
            Ok(o) => record.verdict = verdict(o.is_feasible()),
            Err(e) => record.error = Some(e.to_string()),
        }
        record.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    }
    record
}

fn verdict(feasible: bool) -> String {
    if feasible { "feasible" } else { "infeasible" }.into()
}

/// Runs every engine `repetitions` times on every instance. Jobs are spread
/// over `workers` threads; records come back in corpus order.
pub fn run_bench(corpus: &[(String, Result<Instance, String>)], cfg: &BenchConfig) -> Vec<BenchRecord> {
    let jobs: Vec<(usize, Engine, usize)> = (0..corpus.len())
        .flat_map(|i| {
            cfg.engines
                .iter()
                .flat_map(move |&e| (0..cfg.repetitions.max(1)).map(move |r| (i, e, r)))
        })
        .collect();
    let results: Mutex<Vec<Option<BenchRecord>>> = Mutex::new(vec![None; jobs.len()]);
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..cfg.workers.max(1) {
            s.spawn(|| loop {
                let j = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(i, engine, rep)) = jobs.get(j) else {
                    break;
                };
                let (name, instance) = &corpus[i];
                let record = run_one(name, instance, engine, rep, cfg);
                results.lock().expect("no worker panics while holding the lock")[j] = Some(record);
            });
        }
    });
    results
        .into_inner()
        .expect("workers finished")
        .into_iter()
        .map(|r| r.expect("every job ran"))
        .collect()
}

pub fn write_records<W: Write>(records: &[BenchRecord], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if records.is_empty() {
        w.write_record([
            "instance",
            "engine",
            "rep",
            "verdict",
            "d_star",
            "wall_ms",
            "relaxed_d_star",
            "ratio",
            "error",
        ])?;
    }
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Constellation of an instance name: the name without a trailing `_x`.
pub fn constellation(name: &str) -> &str {
    match name.rsplit_once('_') {
        Some((head, x)) if !x.is_empty() && x.bytes().all(|b| b.is_ascii_digit()) => head,
        _ => name,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub engine: String,
    pub constellations: usize,
    pub runs: usize,
    pub failures: usize,
    /// Mean over constellations of the median wall time.
    pub mean_of_medians_ms: f64,
    /// Mean over constellations of the mean wall time.
    pub mean_of_means_ms: f64,
    pub ratio_mean: Option<f64>,
    pub ratio_std: Option<f64>,
    pub ratio_median: Option<f64>,
}

pub fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let n = values.len();
    Some(if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    })
}

pub fn mean(values: &[f64]) -> Option<f64> {
    (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64)
}

/// Population standard deviation.
pub fn std_dev(values: &[f64]) -> Option<f64> {
    let m = mean(values)?;
    Some((values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / values.len() as f64).sqrt())
}

/// Per-engine aggregation over successful runs.
pub fn summarize(records: &[BenchRecord]) -> Vec<SummaryRow> {
    let mut engines: Vec<&str> = Vec::new();
    for r in records {
        if !engines.contains(&r.engine.as_str()) {
            engines.push(&r.engine);
        }
    }
    engines
        .into_iter()
        .map(|engine| {
            let runs: Vec<&BenchRecord> = records.iter().filter(|r| r.engine == engine).collect();
            let ok: Vec<&&BenchRecord> = runs.iter().filter(|r| r.verdict != "error").collect();
            let mut groups: Vec<(&str, Vec<f64>)> = Vec::new();
            for r in &ok {
                let c = constellation(&r.instance);
                match groups.iter_mut().find(|(k, _)| *k == c) {
                    Some((_, times)) => times.push(r.wall_ms),
                    None => groups.push((c, vec![r.wall_ms])),
                }
            }
            let medians: Vec<f64> = groups.iter_mut().filter_map(|(_, t)| median(t)).collect();
            let means: Vec<f64> = groups.iter().filter_map(|(_, t)| mean(t)).collect();
            let mut ratios: Vec<f64> = ok.iter().filter_map(|r| r.ratio).collect();
            SummaryRow {
                engine: engine.to_owned(),
                constellations: groups.len(),
                runs: runs.len(),
                failures: runs.len() - ok.len(),
                mean_of_medians_ms: mean(&medians).unwrap_or(0.0),
                mean_of_means_ms: mean(&means).unwrap_or(0.0),
                ratio_mean: mean(&ratios),
                ratio_std: std_dev(&ratios),
                ratio_median: median(&mut ratios),
            }
        })
        .collect()
}

pub fn write_summary<W: Write>(rows: &[SummaryRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
