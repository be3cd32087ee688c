//! The five subcommands.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use anyon_core::baselines::{
    cache_path, load_or_build_table, BruteForceEngine, EnumerationTable, McEngine, Method,
    MitmEngine,
};
use anyon_core::ga::{ga_search_matrix, GaReportJson};
use anyon_core::metric::{to_quaternion, to_su2};
use anyon_core::sk::{BaseEngine, GaEngine, SkCompiler, SkResult};
use anyon_core::{
    distance_phase_invariant, distance_quaternion, Alphabet, BraidWord, GateTarget, Unitary2,
};
use serde::Serialize;

use crate::artifact::{csv_writer, sig9, sig9_all, write_json, Artifact};
use crate::cli::{CacheArgs, CacheCommand, CompareArgs, CompileArgs, SweepArgs, VerifyArgs};
use crate::config::{RunConfig, SweepAxis};
use crate::error::BenchError;
use crate::reference::rl_reference_eps;

/// Prints a line to stdout, ignoring a closed pipe.
macro_rules! say {
    ($($arg:tt)*) => {{
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

/// `ANYON_CACHE_DIR`, else `.anyon_cache`.
pub fn cache_dir() -> PathBuf {
    std::env::var_os("ANYON_CACHE_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(".anyon_cache"))
}

/// Caps the global worker pool. Later calls are ignored.
pub fn init_threads(threads: Option<usize>) {
    if let Some(n) = threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

/// Split of a base length into meet-in-the-middle halves.
pub fn mitm_split(l0: usize) -> (usize, usize) {
    let left = l0.div_ceil(2);
    (left, l0 - left)
}

/// One compile and, for order-0 genetic runs, the search report.
pub struct Compiled {
    pub sk: SkResult<BraidWord>,
    pub ga: Option<GaReportJson>,
}

fn run_sk<E: BaseEngine<Output = BraidWord>>(
    engine: E,
    cfg: &RunConfig,
    target: &Unitary2,
    order: usize,
) -> Result<SkResult<BraidWord>, BenchError> {
    Ok(SkCompiler::new(engine)
        .with_cache(cfg.cache)
        .with_metric(cfg.metric)
        .compile(target, order)?)
}

pub fn mitm_engine(cfg: &RunConfig, l0: usize, dir: &Path) -> Result<MitmEngine, BenchError> {
    let alphabet = cfg.alphabet_for(Method::Mitm);
    let (la, lb) = mitm_split(l0);
    let left = Arc::new(load_or_build_table(dir, la, alphabet, cfg.budget)?);
    let right = if lb == la {
        left.clone()
    } else {
        Arc::new(load_or_build_table(dir, lb, alphabet, cfg.budget)?)
    };
    Ok(MitmEngine { left, right })
}

/// Compiles `target` with `method` at `(l0, order)`.
pub fn compile_one(
    cfg: &RunConfig,
    target: &GateTarget,
    method: Method,
    l0: usize,
    order: usize,
    seed: u64,
) -> Result<Compiled, BenchError> {
    let m = &target.matrix;
    let sk = match method {
        Method::Ga if order == 0 => {
            let ga_cfg = cfg.ga_config(l0, seed);
            let start = Instant::now();
            let report = ga_search_matrix(m, &ga_cfg)?;
            let word = report.best.word.clone();
            let distance = cfg.metric.distance(m, &word.evaluate());
            let mut json = report.to_json(target, &ga_cfg);
            json.best_d = sig9(json.best_d);
            json.history = sig9_all(&json.history);
            let sk = SkResult {
                length: word.len(),
                approx: word,
                distance,
                order: 0,
                child_distances: vec![distance],
                non_monotone: false,
                base_calls: 1,
                evaluations: report.evaluations,
                wall_time_s: start.elapsed().as_secs_f64(),
            };
            return Ok(Compiled { sk, ga: Some(json) });
        }
        Method::Ga => run_sk(GaEngine::new(cfg.ga_config(l0, seed)), cfg, m, order)?,
        Method::Bf => {
            let engine = BruteForceEngine {
                length: l0,
                alphabet: cfg.alphabet_for(Method::Bf),
                budget: cfg.budget,
            };
            run_sk(engine, cfg, m, order)?
        }
        Method::Mitm => run_sk(mitm_engine(cfg, l0, &cache_dir())?, cfg, m, order)?,
        Method::Mc => run_sk(
            McEngine {
                config: cfg.mc_config(l0, seed),
            },
            cfg,
            m,
            order,
        )?,
    };
    Ok(Compiled { sk, ga: None })
}

/// True when the inner product of the two unit quaternions is negative, i.e.
/// a distance without the absolute value would disagree.
pub fn quaternion_sign_flip(target: &Unitary2, approx: &Unitary2) -> bool {
    let qt = to_quaternion(&to_su2(target)).expect("projected to SU(2)");
    let qa = to_quaternion(&to_su2(approx)).expect("projected to SU(2)");
    qt.dot(&qa) < 0.0
}

#[derive(Debug, Serialize)]
pub struct CompileResult {
    pub gate: String,
    pub method: Method,
    pub alphabet: Alphabet,
    pub seed: u64,
    pub l0: usize,
    pub order: usize,
    pub length: usize,
    /// Phase-invariant distance of `word`, recomputed from the word.
    pub d: f64,
    pub d_quaternion: f64,
    pub quaternion_sign_flip: bool,
    pub word: BraidWord,
    pub simplified_length: usize,
    pub child_distances: Vec<f64>,
    pub non_monotone: bool,
    pub base_calls: u64,
    pub evaluations: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ga_report: Option<GaReportJson>,
}

impl CompileResult {
    fn new(
        cfg: &RunConfig,
        target: &GateTarget,
        method: Method,
        l0: usize,
        seed: u64,
        c: Compiled,
    ) -> Self {
        let u = c.sk.approx.evaluate();
        Self {
            gate: target.label(),
            method,
            alphabet: cfg.alphabet_for(method),
            seed,
            l0,
            order: c.sk.order,
            length: c.sk.length,
            d: sig9(distance_phase_invariant(&target.matrix, &u)),
            d_quaternion: sig9(distance_quaternion(&target.matrix, &u)),
            quaternion_sign_flip: quaternion_sign_flip(&target.matrix, &u),
            simplified_length: c.sk.simplified().len(),
            word: c.sk.approx,
            child_distances: sig9_all(&c.sk.child_distances),
            non_monotone: c.sk.non_monotone,
            base_calls: c.sk.base_calls,
            evaluations: c.sk.evaluations,
            ga_report: c.ga,
        }
    }
}

pub fn cmd_compile(args: &CompileArgs) -> Result<(), BenchError> {
    let cfg = args.common.resolve()?;
    init_threads(cfg.threads);
    let target = GateTarget::parse(&cfg.gate).map_err(anyon_core::Error::from)?;
    let start = Instant::now();
    let compiled = compile_one(&cfg, &target, cfg.method, cfg.l0, cfg.order, cfg.seed)?;
    let result = CompileResult::new(&cfg, &target, cfg.method, cfg.l0, cfg.seed, compiled);
    let summary = format!(
        "gate {} method {} l0 {} order {}: L = {}, d = {:e}\n{}",
        result.gate, result.method, result.l0, result.order, result.length, result.d, result.word
    );
    let artifact = Artifact {
        schema_version: crate::artifact::SCHEMA_VERSION,
        command: "compile",
        config: &cfg,
        result,
        wall_time_s: sig9(start.elapsed().as_secs_f64()),
    };
    match &args.common.out {
        Some(path) => {
            write_json(path, &artifact)?;
            say!("{summary}");
        }
        None => {
            eprintln!("{summary}");
            let mut out = std::io::stdout().lock();
            serde_json::to_writer_pretty(&mut out, &artifact)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

/// Columns of the sweep CSV, in order.
pub const SWEEP_COLUMNS: [&str; 13] = [
    "axis",
    "value",
    "seed",
    "method",
    "alphabet",
    "gate",
    "l0",
    "order",
    "length",
    "best_d",
    "d_quaternion",
    "evaluations",
    "wall_time_s",
];

/// `cfg` with one axis set to `value`, plus the `(l0, order)` to run.
pub fn apply_axis(cfg: &RunConfig, axis: SweepAxis, value: &str) -> Result<RunConfig, BenchError> {
    let bad =
        |e: &dyn std::fmt::Display| BenchError::Config(format!("axis {axis} value {value:?}: {e}"));
    let mut c = cfg.clone();
    match axis {
        SweepAxis::N => c.ga.population_size = value.parse().map_err(|e| bad(&e))?,
        SweepAxis::P => c.ga.mutation_prob = value.parse().map_err(|e| bad(&e))?,
        SweepAxis::G => c.ga.generations = value.parse().map_err(|e| bad(&e))?,
        SweepAxis::L0 => c.l0 = value.parse().map_err(|e| bad(&e))?,
        SweepAxis::L => {
            c.l0 = value.parse().map_err(|e| bad(&e))?;
            c.order = 0;
        }
        SweepAxis::Alphabet => c.alphabet = Some(value.parse().map_err(|e| bad(&e))?),
        SweepAxis::Order => c.order = value.parse().map_err(|e| bad(&e))?,
    }
    c.validate()?;
    Ok(c)
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<(), BenchError> {
    let mut cfg = args.common.resolve()?;
    if let Some(a) = args.axis {
        cfg.sweep.axis = Some(a);
    }
    if let Some(v) = &args.values {
        cfg.sweep.values = v.clone();
    }
    let axis = cfg
        .sweep
        .axis
        .ok_or_else(|| BenchError::Config("sweep needs --axis".into()))?;
    if cfg.sweep.values.is_empty() {
        return Err(BenchError::Config("sweep needs at least one value".into()));
    }
    init_threads(cfg.threads);
    let target = GateTarget::parse(&cfg.gate).map_err(anyon_core::Error::from)?;
    let runs = cfg
        .sweep
        .values
        .iter()
        .map(|v| apply_axis(&cfg, axis, v).map(|c| (v.clone(), c)))
        .collect::<Result<Vec<_>, _>>()?;

    let mut w = csv_writer(args.common.out.as_deref(), &cfg)?;
    w.write_record(SWEEP_COLUMNS)?;
    for (value, c) in &runs {
        for seed in c.seed_list() {
            let start = Instant::now();
            let r = compile_one(c, &target, c.method, c.l0, c.order, seed)?;
            let wall = start.elapsed().as_secs_f64();
            let res = CompileResult::new(c, &target, c.method, c.l0, seed, r);
            w.write_record([
                axis.to_string(),
                value.clone(),
                seed.to_string(),
                res.method.to_string(),
                res.alphabet.to_string(),
                res.gate,
                res.l0.to_string(),
                res.order.to_string(),
                res.length.to_string(),
                fmt9(res.d),
                fmt9(res.d_quaternion),
                res.evaluations.to_string(),
                fmt9(wall),
            ])?;
            w.flush()?;
        }
    }
    Ok(())
}

/// Columns of the compare CSV, in order. `kind` is `run` or `median`; median
/// rows leave `seed`, `evaluations` and `wall_time_s` empty.
pub const COMPARE_COLUMNS: [&str; 13] = [
    "kind",
    "method",
    "gate",
    "l0",
    "order",
    "length",
    "seed",
    "d",
    "d_quaternion",
    "quaternion_sign_flip",
    "evaluations",
    "rl_reference_eps",
    "wall_time_s",
];

#[derive(Clone, Debug, PartialEq)]
pub struct CompareRow {
    pub method: Method,
    pub l0: usize,
    pub order: usize,
    pub length: usize,
    pub seed: Option<u64>,
    pub d: f64,
    pub d_quaternion: f64,
    pub sign_flip: bool,
    pub evaluations: u64,
    pub wall_time_s: f64,
}

pub fn median(xs: &mut [f64]) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}

/// All run rows of a comparison. Exhaustive methods are seed-free and run once.
pub fn compare_rows(cfg: &RunConfig, target: &GateTarget) -> Result<Vec<CompareRow>, BenchError> {
    let mut rows = Vec::new();
    for &method in &cfg.compare.methods {
        let seeds: Vec<Option<u64>> = match method {
            Method::Bf | Method::Mitm => vec![None],
            _ => cfg.seed_list().into_iter().map(Some).collect(),
        };
        for &l0 in &cfg.compare.l0 {
            for &order in &cfg.compare.orders {
                for &seed in &seeds {
                    let start = Instant::now();
                    let r = compile_one(cfg, target, method, l0, order, seed.unwrap_or(cfg.seed))?;
                    let u = r.sk.approx.evaluate();
                    rows.push(CompareRow {
                        method,
                        l0,
                        order,
                        length: r.sk.length,
                        seed,
                        d: distance_phase_invariant(&target.matrix, &u),
                        d_quaternion: distance_quaternion(&target.matrix, &u),
                        sign_flip: quaternion_sign_flip(&target.matrix, &u),
                        evaluations: r.sk.evaluations,
                        wall_time_s: start.elapsed().as_secs_f64(),
                    });
                }
            }
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MedianRow {
    pub method: Method,
    pub l0: usize,
    pub order: usize,
    pub length: usize,
    pub d: f64,
    pub d_quaternion: f64,
}

/// Median `d` and `d_quaternion` per `(method, l0, order)`.
pub fn medians(rows: &[CompareRow]) -> Vec<MedianRow> {
    type Group = (Method, usize, Vec<f64>, Vec<f64>);
    let mut groups: BTreeMap<(String, usize, usize), Group> = BTreeMap::new();
    for r in rows {
        let g = groups
            .entry((r.method.to_string(), r.l0, r.order))
            .or_insert((r.method, r.length, Vec::new(), Vec::new()));
        g.2.push(r.d);
        g.3.push(r.d_quaternion);
    }
    groups
        .into_iter()
        .map(
            |((_, l0, order), (method, length, mut d, mut q))| MedianRow {
                method,
                l0,
                order,
                length,
                d: median(&mut d),
                d_quaternion: median(&mut q),
            },
        )
        .collect()
}

pub fn cmd_compare(args: &CompareArgs) -> Result<(), BenchError> {
    let mut cfg = args.common.resolve()?;
    if let Some(m) = &args.methods {
        cfg.compare.methods = m.clone();
    }
    if let Some(l) = &args.l0s {
        cfg.compare.l0 = l.clone();
    }
    if let Some(o) = &args.orders {
        cfg.compare.orders = o.clone();
    }
    let mut distinct = cfg.compare.methods.clone();
    distinct.sort_by_key(|m| m.to_string());
    distinct.dedup();
    if distinct.len() < 2 {
        return Err(BenchError::Config(
            "compare needs at least two distinct methods".into(),
        ));
    }
    if cfg.compare.l0.is_empty() || cfg.compare.orders.is_empty() {
        return Err(BenchError::Config(
            "compare needs at least one l0 and one order".into(),
        ));
    }
    init_threads(cfg.threads);
    let target = GateTarget::parse(&cfg.gate).map_err(anyon_core::Error::from)?;
    let rows = compare_rows(&cfg, &target)?;

    let gate = target.label();
    let mut w = csv_writer(args.common.out.as_deref(), &cfg)?;
    w.write_record(COMPARE_COLUMNS)?;
    for r in &rows {
        w.write_record([
            "run".to_string(),
            r.method.to_string(),
            gate.clone(),
            r.l0.to_string(),
            r.order.to_string(),
            r.length.to_string(),
            r.seed.map(|s| s.to_string()).unwrap_or_default(),
            fmt9(r.d),
            fmt9(r.d_quaternion),
            r.sign_flip.to_string(),
            r.evaluations.to_string(),
            fmt9(rl_reference_eps(r.length as f64)),
            fmt9(r.wall_time_s),
        ])?;
    }
    for m in medians(&rows) {
        w.write_record([
            "median".to_string(),
            m.method.to_string(),
            gate.clone(),
            m.l0.to_string(),
            m.order.to_string(),
            m.length.to_string(),
            String::new(),
            fmt9(m.d),
            fmt9(m.d_quaternion),
            String::new(),
            String::new(),
            fmt9(rl_reference_eps(m.length as f64)),
            String::new(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub gate: String,
    pub word: BraidWord,
    #[serde(rename = "L")]
    pub length: usize,
    pub d: f64,
    pub d_quaternion: f64,
    pub simplified_length: usize,
}

pub fn verify(word: &str, gate: &str) -> Result<VerifyReport, BenchError> {
    let word: BraidWord = word.parse().map_err(anyon_core::Error::from)?;
    let target = GateTarget::parse(gate).map_err(anyon_core::Error::from)?;
    let u = word.evaluate();
    Ok(VerifyReport {
        gate: target.label(),
        length: word.len(),
        d: distance_phase_invariant(&target.matrix, &u),
        d_quaternion: distance_quaternion(&target.matrix, &u),
        simplified_length: word.simplify().len(),
        word,
    })
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<(), BenchError> {
    let r = verify(&args.word, &args.gate)?;
    say!("L = {}", r.length);
    say!("d = {}", fmt9(r.d));
    say!("d_quaternion = {}", fmt9(r.d_quaternion));
    say!("simplified_length = {}", r.simplified_length);
    if let Some(path) = &args.out {
        let mut text = serde_json::to_string_pretty(&r)?;
        text.push('\n');
        std::fs::write(path, text)?;
    }
    Ok(())
}

fn cache_lengths(a: &CacheArgs) -> Result<Vec<usize>, BenchError> {
    let mut ls = Vec::new();
    if let Some(l) = a.length {
        ls.push(l);
    }
    if let Some(l0) = a.l0 {
        let (x, y) = mitm_split(l0);
        ls.push(x);
        ls.push(y);
    }
    if ls.is_empty() {
        return Err(BenchError::Config("cache needs --length or --l0".into()));
    }
    ls.sort_unstable();
    ls.dedup();
    Ok(ls)
}

fn describe(path: &Path, t: &EnumerationTable) -> String {
    format!(
        "{}: length {}, alphabet {}, {} distinct matrices",
        path.display(),
        t.length,
        t.alphabet,
        t.len()
    )
}

pub fn cmd_cache(cmd: &CacheCommand) -> Result<(), BenchError> {
    let dir = cache_dir();
    match cmd {
        CacheCommand::Build(a) => {
            init_threads(a.threads);
            std::fs::create_dir_all(&dir)?;
            let budget = a.budget.unwrap_or(anyon_core::baselines::DEFAULT_BUDGET);
            for l in cache_lengths(a)? {
                let t = load_or_build_table(&dir, l, a.alphabet, budget)?;
                say!("{}", describe(&cache_path(&dir, l, a.alphabet), &t));
            }
        }
        CacheCommand::Inspect(a) => {
            for l in cache_lengths(a)? {
                let path = cache_path(&dir, l, a.alphabet);
                let table = std::fs::read(&path)
                    .ok()
                    .and_then(|b| EnumerationTable::from_bytes(&b, l, a.alphabet));
                match table {
                    Some(t) => say!("{}", describe(&path, &t)),
                    None => say!("{}: missing or invalid", path.display()),
                }
            }
        }
    }
    Ok(())
}

/// Nine significant digits, shortest form.
pub fn fmt9(x: f64) -> String {
    format!("{}", sig9(x))
}
