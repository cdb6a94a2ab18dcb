//! Seeded Monte Carlo experiments comparing measured graph parameters with
//! their asymptotic predictions.
//!
//! # Config grammar
//!
//! ```text
//! config := line*
//! line   := blank | '#' comment | key '=' value (',' value)*
//! ```
//!
//! Keys: `experiment` (one of the ids below), `n`, `samples`, `seed`,
//! `eps`, `tolerance`, `budget_secs`, and the grids `p`, `m`, `k`, `i`, `c`,
//! `checkpoints`, `checkpoint_count`. Grid values are numbers or scaled
//! expressions `<coef>*<unit>`:
//!
//! | key           | units                                          |
//! |---------------|------------------------------------------------|
//! | `p`           | `logn/n`, `threshold`                          |
//! | `k`           | `logn` (rounded up)                            |
//! | `i`           | `beta*logn/2` (rounded up)                     |
//! | `checkpoints` | `n`, `nlogn`, `beta*nlogn/2` (rounded down)    |
//!
//! `m` additionally accepts `kn+1` and `k(n-1)-phi`, evaluated per `k`.

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::asymptotics::{
    arboricity_prediction, beta, c_k, core_prediction, hitting_prediction, orientability_thresholds, threshold_p,
};
use crate::cover::{arboricity_hitting_times, ArboricityTracker};
use crate::error::{Error, Result};
use crate::orientation::{min_max_indegree, orient_k, Orient};
use crate::packing::{stp_number, stp_number_from, ForestDecomposition};
use crate::random::{gen_gnm, gen_gnp, pair_count, ProcessStream, RngSeed};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    StpMain,
    CasesThreshold,
    ProcessScan,
    ArboricityHitting,
    LoadBalancing,
    CoreEmergence,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 6] = [
        ExperimentKind::StpMain,
        ExperimentKind::CasesThreshold,
        ExperimentKind::ProcessScan,
        ExperimentKind::ArboricityHitting,
        ExperimentKind::LoadBalancing,
        ExperimentKind::CoreEmergence,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ExperimentKind::StpMain => "stp_main",
            ExperimentKind::CasesThreshold => "cases_threshold",
            ExperimentKind::ProcessScan => "process_scan",
            ExperimentKind::ArboricityHitting => "arboricity_hitting",
            ExperimentKind::LoadBalancing => "load_balancing",
            ExperimentKind::CoreEmergence => "core_emergence",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.id() == s)
            .ok_or_else(|| Error::param(format!("unknown experiment `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Unit {
    One,
    LognOverN,
    Threshold,
    Logn,
    BetaLognHalf,
    N,
    NLogn,
    BetaNLognHalf,
}

impl Unit {
    const NAMED: [(Unit, &'static str); 7] = [
        (Unit::LognOverN, "logn/n"),
        (Unit::Threshold, "threshold"),
        (Unit::Logn, "logn"),
        (Unit::BetaLognHalf, "beta*logn/2"),
        (Unit::N, "n"),
        (Unit::NLogn, "nlogn"),
        (Unit::BetaNLognHalf, "beta*nlogn/2"),
    ];

    fn name(self) -> &'static str {
        Self::NAMED.iter().find(|(u, _)| *u == self).map_or("", |(_, s)| s)
    }

    fn value(self, n: usize) -> Result<f64> {
        let nf = n as f64;
        let ln = nf.ln();
        Ok(match self {
            Unit::One => 1.0,
            Unit::LognOverN => ln / nf,
            Unit::Threshold => threshold_p(n)?,
            Unit::Logn => ln,
            Unit::BetaLognHalf => beta() * ln / 2.0,
            Unit::N => nf,
            Unit::NLogn => nf * ln,
            Unit::BetaNLognHalf => beta() * nf * ln / 2.0,
        })
    }
}

/// `coef` or `coef*unit`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scaled {
    pub coef: f64,
    pub unit: Unit,
}

impl Scaled {
    pub fn plain(x: f64) -> Self {
        Self { coef: x, unit: Unit::One }
    }

    pub fn eval(&self, n: usize) -> Result<f64> {
        Ok(self.coef * self.unit.value(n)?)
    }

    fn parse(tok: &str, allowed: &[Unit], line: usize) -> Result<Self> {
        let (coef, unit) = match tok.split_once('*') {
            Some((c, u)) => {
                let unit = Unit::NAMED
                    .iter()
                    .find(|(_, name)| *name == u.trim())
                    .map(|(unit, _)| *unit)
                    .filter(|unit| allowed.contains(unit))
                    .ok_or_else(|| Error::parse(line, format!("unit `{}` not allowed here", u.trim())))?;
                (c.trim(), unit)
            }
            None => (tok, Unit::One),
        };
        let coef: f64 = coef.parse().map_err(|_| Error::parse(line, format!("invalid number `{coef}`")))?;
        if !coef.is_finite() || coef < 0.0 {
            return Err(Error::parse(line, format!("value `{tok}` must be finite and >= 0")));
        }
        Ok(Self { coef, unit })
    }
}

impl fmt::Display for Scaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.unit {
            Unit::One => write!(f, "{}", self.coef),
            unit => write!(f, "{}*{}", self.coef, unit.name()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeCount {
    Fixed(u64),
    /// kn + 1, beyond which no k-orientation exists.
    KnPlusOne,
    /// k(n − 1) − ⌈φ⌉, below which k-orientations are predicted.
    KnMinusPhi,
}

impl EdgeCount {
    fn eval(self, n: usize, k: usize, eps: f64) -> Result<i64> {
        Ok(match self {
            EdgeCount::Fixed(m) => m as i64,
            EdgeCount::KnPlusOne => (k * n + 1) as i64,
            EdgeCount::KnMinusPhi => orientability_thresholds(n, k, eps)?.0,
        })
    }
}

impl fmt::Display for EdgeCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeCount::Fixed(m) => write!(f, "{m}"),
            EdgeCount::KnPlusOne => f.write_str("kn+1"),
            EdgeCount::KnMinusPhi => f.write_str("k(n-1)-phi"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub eps: f64,
    /// Allowed deviation for fraction-valued comparisons.
    pub tolerance: f64,
    pub budget_secs: Option<f64>,
    pub p: Vec<Scaled>,
    pub m: Vec<EdgeCount>,
    pub k: Vec<Scaled>,
    pub i: Vec<Scaled>,
    pub c: Vec<f64>,
    pub checkpoints: Vec<Scaled>,
    pub checkpoint_count: Option<usize>,
}

impl ExperimentConfig {
    pub fn new(experiment: ExperimentKind, n: usize) -> Self {
        Self {
            experiment,
            n,
            samples: 10,
            seed: 0,
            eps: 0.1,
            tolerance: 0.02,
            budget_secs: None,
            p: Vec::new(),
            m: Vec::new(),
            k: Vec::new(),
            i: Vec::new(),
            c: Vec::new(),
            checkpoints: Vec::new(),
            checkpoint_count: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut experiment = None;
        let mut n = None;
        let mut cfg = Self::new(ExperimentKind::StpMain, 0);
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) =
                line.split_once('=').ok_or_else(|| Error::parse(line_no, "expected `key = value`"))?;
            let key = key.trim();
            let values: Vec<&str> = value.split(',').map(str::trim).collect();
            if values.iter().any(|v| v.is_empty()) {
                return Err(Error::parse(line_no, format!("empty value for `{key}`")));
            }
            let single = || -> Result<&str> {
                match values.as_slice() {
                    [v] => Ok(v),
                    _ => Err(Error::parse(line_no, format!("`{key}` takes a single value"))),
                }
            };
            let int = |s: &str| -> Result<u64> {
                s.parse().map_err(|_| Error::parse(line_no, format!("invalid integer `{s}` for `{key}`")))
            };
            let float = |s: &str| -> Result<f64> {
                s.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| Error::parse(line_no, format!("invalid number `{s}` for `{key}`")))
            };
            let scaled = |allowed: &[Unit]| -> Result<Vec<Scaled>> {
                values.iter().map(|v| Scaled::parse(v, allowed, line_no)).collect()
            };
            match key {
                "experiment" => {
                    experiment =
                        Some(single()?.parse::<ExperimentKind>().map_err(|e| Error::parse(line_no, e.to_string()))?)
                }
                "n" => n = Some(int(single()?)? as usize),
                "samples" => cfg.samples = int(single()?)? as usize,
                "seed" => cfg.seed = int(single()?)?,
                "eps" => cfg.eps = float(single()?)?,
                "tolerance" => cfg.tolerance = float(single()?)?,
                "budget_secs" => cfg.budget_secs = Some(float(single()?)?),
                "p" => cfg.p = scaled(&[Unit::LognOverN, Unit::Threshold])?,
                "k" => cfg.k = scaled(&[Unit::Logn])?,
                "i" => cfg.i = scaled(&[Unit::BetaLognHalf])?,
                "checkpoints" => cfg.checkpoints = scaled(&[Unit::N, Unit::NLogn, Unit::BetaNLognHalf])?,
                "checkpoint_count" => cfg.checkpoint_count = Some(int(single()?)? as usize),
                "c" => cfg.c = values.iter().map(|v| float(v)).collect::<Result<_>>()?,
                "m" => {
                    cfg.m = values
                        .iter()
                        .map(|v| match *v {
                            "kn+1" => Ok(EdgeCount::KnPlusOne),
                            "k(n-1)-phi" => Ok(EdgeCount::KnMinusPhi),
                            s => int(s).map(EdgeCount::Fixed),
                        })
                        .collect::<Result<_>>()?
                }
                other => return Err(Error::parse(line_no, format!("unknown key `{other}`"))),
            }
        }
        cfg.experiment = experiment.ok_or_else(|| Error::parse(1, "missing `experiment`"))?;
        cfg.n = n.ok_or_else(|| Error::parse(1, "missing `n`"))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        use ExperimentKind::*;
        if self.n < 3 {
            return Err(Error::param(format!("n must be at least 3, got {}", self.n)));
        }
        if self.samples == 0 {
            return Err(Error::param("samples must be at least 1"));
        }
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(Error::param(format!("eps must lie in (0, 1), got {}", self.eps)));
        }
        if !(0.0..).contains(&self.tolerance) {
            return Err(Error::param("tolerance must be >= 0"));
        }
        if self.budget_secs.is_some_and(|b| !(0.0..).contains(&b)) {
            return Err(Error::param("budget_secs must be >= 0"));
        }
        let need = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::param(format!("{} needs a nonempty `{what}` grid", self.experiment)))
            }
        };
        match self.experiment {
            StpMain | CasesThreshold => need(!self.p.is_empty(), "p"),
            ProcessScan => need(
                !self.checkpoints.is_empty() || self.checkpoint_count.is_some_and(|c| c >= 2),
                "checkpoints",
            ),
            ArboricityHitting => need(!self.i.is_empty(), "i"),
            LoadBalancing => need(!self.k.is_empty(), "k").and_then(|_| need(!self.m.is_empty(), "m")),
            CoreEmergence => need(!self.c.is_empty(), "c").and_then(|_| need(!self.k.is_empty(), "k")),
        }
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for ExperimentConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "experiment = {}", self.experiment)?;
        writeln!(f, "n = {}", self.n)?;
        writeln!(f, "samples = {}", self.samples)?;
        writeln!(f, "seed = {}", self.seed)?;
        writeln!(f, "eps = {}", self.eps)?;
        writeln!(f, "tolerance = {}", self.tolerance)?;
        if let Some(b) = self.budget_secs {
            writeln!(f, "budget_secs = {b}")?;
        }
        let grids: [(&str, String, bool); 6] = [
            ("p", join(&self.p), self.p.is_empty()),
            ("m", join(&self.m), self.m.is_empty()),
            ("k", join(&self.k), self.k.is_empty()),
            ("i", join(&self.i), self.i.is_empty()),
            ("c", join(&self.c), self.c.is_empty()),
            ("checkpoints", join(&self.checkpoints), self.checkpoints.is_empty()),
        ];
        for (key, value, empty) in grids {
            if !empty {
                writeln!(f, "{key} = {value}")?;
            }
        }
        if let Some(c) = self.checkpoint_count {
            writeln!(f, "checkpoint_count = {c}")?;
        }
        Ok(())
    }
}

/// Outcome of running a config: CSV rows plus per-cell aggregates.
#[derive(Clone, Debug)]
pub struct ExperimentReport {
    pub experiment: ExperimentKind,
    pub header: Vec<String>,
    /// Ordered by (cell, sample).
    pub rows: Vec<Vec<String>>,
    pub cells: Vec<Value>,
    pub skipped: usize,
}

impl ExperimentReport {
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(&self.header).map_err(io)?;
        for row in &self.rows {
            w.write_record(row).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn summary(&self, cfg: &ExperimentConfig) -> Value {
        json!({
            "experiment": self.experiment.id(),
            "generated_at": chrono::Utc::now().to_rfc3339(),
            "config": cfg.to_string(),
            "n": cfg.n,
            "seed": cfg.seed,
            "samples_per_cell": cfg.samples,
            "skipped_samples": self.skipped,
            "cells": self.cells,
        })
    }

    /// Writes `report.csv` and `summary.json` into `dir`.
    pub fn write(&self, cfg: &ExperimentConfig, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("report.csv"), self.to_csv()?)?;
        let summary = serde_json::to_string_pretty(&self.summary(cfg)).map_err(|e| Error::Io(e.to_string()))?;
        std::fs::write(dir.join("summary.json"), summary + "\n")?;
        Ok(())
    }
}

/// Runs `f(unit, sample)` for every unit and sample in parallel. A sample
/// is skipped (None) once its unit has been running longer than the budget.
fn run_units<M, F>(units: usize, samples: usize, budget: Option<f64>, f: F) -> Result<Vec<Vec<Option<M>>>>
where
    M: Send,
    F: Fn(usize, usize) -> Result<M> + Sync,
{
    let budget = budget.map(Duration::from_secs_f64);
    let starts: Vec<Mutex<Option<Instant>>> = (0..units).map(|_| Mutex::new(None)).collect();
    let flat: Vec<Option<M>> = (0..units * samples)
        .into_par_iter()
        .map(|task| {
            let (unit, sample) = (task / samples, task % samples);
            let start = *starts[unit].lock().expect("budget clock").get_or_insert_with(Instant::now);
            if budget.is_some_and(|b| start.elapsed() >= b) {
                return Ok(None);
            }
            f(unit, sample).map(Some)
        })
        .collect::<Result<_>>()?;
    let mut out: Vec<Vec<Option<M>>> = Vec::with_capacity(units);
    let mut it = flat.into_iter();
    for _ in 0..units {
        out.push(it.by_ref().take(samples).collect());
    }
    Ok(out)
}

fn fraction(hits: usize, total: usize) -> Value {
    if total == 0 {
        Value::Null
    } else {
        json!(hits as f64 / total as f64)
    }
}

fn mean(xs: impl Iterator<Item = f64>) -> Value {
    let (mut sum, mut count) = (0.0, 0usize);
    for x in xs {
        sum += x;
        count += 1;
    }
    if count == 0 {
        Value::Null
    } else {
        json!(sum / count as f64)
    }
}

fn header(cols: &[&str]) -> Vec<String> {
    ["cell", "sample", "status"].iter().chain(cols).map(|s| s.to_string()).collect()
}

fn row(cell: usize, sample: usize, values: Option<Vec<String>>, width: usize) -> Vec<String> {
    let mut r = vec![cell.to_string(), sample.to_string()];
    match values {
        Some(v) => {
            r.push("ok".into());
            r.extend(v);
        }
        None => {
            r.push("skipped".into());
            r.extend(std::iter::repeat_n(String::new(), width));
        }
    }
    r
}

fn cell_object(cell: usize, params: Value, executed: usize, skipped: usize, stats: Value) -> Value {
    let mut obj = Map::new();
    obj.insert("cell".into(), json!(cell));
    obj.insert("params".into(), params);
    obj.insert("executed".into(), json!(executed));
    obj.insert("skipped".into(), json!(skipped));
    if let Value::Object(stats) = stats {
        obj.extend(stats);
    }
    Value::Object(obj)
}

fn eval_p(cfg: &ExperimentConfig) -> Result<Vec<f64>> {
    cfg.p
        .iter()
        .map(|p| {
            let v = p.eval(cfg.n)?;
            if v <= 1.0 {
                Ok(v)
            } else {
                Err(Error::param(format!("p = {p} evaluates to {v} > 1 at n = {}", cfg.n)))
            }
        })
        .collect()
}

fn eval_int(x: &Scaled, n: usize) -> Result<usize> {
    let v = x.eval(n)?;
    Ok(if x.unit == Unit::One { v as usize } else { v.ceil() as usize })
}

/// Runs the experiment named in the config.
pub fn run(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    match cfg.experiment {
        ExperimentKind::StpMain => run_stp_main(cfg),
        ExperimentKind::CasesThreshold => run_cases_threshold(cfg),
        ExperimentKind::ProcessScan => run_process_scan(cfg),
        ExperimentKind::ArboricityHitting => run_arboricity_hitting(cfg),
        ExperimentKind::LoadBalancing => run_load_balancing(cfg),
        ExperimentKind::CoreEmergence => run_core_emergence(cfg),
    }
}

struct StpSample {
    m: usize,
    delta: usize,
    floor: usize,
    t: usize,
}

/// T(G(n, p)) against min(δ, ⌊m/(n−1)⌋).
pub fn run_stp_main(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let n = cfg.n;
    let ps = eval_p(cfg)?;
    let results = run_units(ps.len(), cfg.samples, cfg.budget_secs, |cell, sample| {
        let g = gen_gnp(n, ps[cell], RngSeed::for_sample(cfg.seed, cell as u32, sample as u32))?;
        let t = stp_number(&g)?.t;
        Ok(StpSample { m: g.m(), delta: g.min_degree()?, floor: g.m() / (n - 1), t })
    })?;
    let cols = ["p", "m", "delta", "m_floor", "t", "predicted", "agree"];
    let mut rows = Vec::new();
    let mut cells = Vec::new();
    let mut skipped = 0;
    for (cell, samples) in results.iter().enumerate() {
        let (mut done, mut agree) = (0, 0);
        for (sample, s) in samples.iter().enumerate() {
            let values = s.as_ref().map(|s| {
                let predicted = s.delta.min(s.floor);
                done += 1;
                agree += (s.t == predicted) as usize;
                vec![
                    ps[cell].to_string(),
                    s.m.to_string(),
                    s.delta.to_string(),
                    s.floor.to_string(),
                    s.t.to_string(),
                    predicted.to_string(),
                    (s.t == predicted).to_string(),
                ]
            });
            rows.push(row(cell, sample, values, cols.len()));
        }
        skipped += samples.len() - done;
        let executed = samples.iter().flatten();
        cells.push(cell_object(
            cell,
            json!({ "p": cfg.p[cell].to_string(), "p_value": ps[cell] }),
            done,
            samples.len() - done,
            json!({
                "agreement_fraction": fraction(agree, done),
                "mean_t": mean(executed.clone().map(|s| s.t as f64)),
                "mean_delta": mean(executed.map(|s| s.delta as f64)),
            }),
        ));
    }
    Ok(ExperimentReport { experiment: cfg.experiment, header: header(&cols), rows, cells, skipped })
}

/// Fraction of G(n, p) with δ ≤ ⌊m/(n−1)⌋ on both sides of the threshold.
pub fn run_cases_threshold(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let n = cfg.n;
    let ps = eval_p(cfg)?;
    let threshold = threshold_p(n)?;
    let results = run_units(ps.len(), cfg.samples, cfg.budget_secs, |cell, sample| {
        let g = gen_gnp(n, ps[cell], RngSeed::for_sample(cfg.seed, cell as u32, sample as u32))?;
        Ok((g.m(), g.min_degree()?))
    })?;
    let cols = ["p", "m", "delta", "m_floor", "delta_le_floor"];
    let mut rows = Vec::new();
    let mut cells = Vec::new();
    let mut skipped = 0;
    for (cell, samples) in results.iter().enumerate() {
        let (mut done, mut below) = (0, 0);
        for (sample, s) in samples.iter().enumerate() {
            let values = s.map(|(m, delta)| {
                let floor = m / (n - 1);
                done += 1;
                below += (delta <= floor) as usize;
                vec![ps[cell].to_string(), m.to_string(), delta.to_string(), floor.to_string(), (delta <= floor).to_string()]
            });
            rows.push(row(cell, sample, values, cols.len()));
        }
        skipped += samples.len() - done;
        let side = if ps[cell] < threshold { "below" } else { "above" };
        cells.push(cell_object(
            cell,
            json!({ "p": cfg.p[cell].to_string(), "p_value": ps[cell] }),
            done,
            samples.len() - done,
            json!({
                "fraction_delta_le_floor": fraction(below, done),
                "threshold_p": threshold,
                "side": side,
                "predicted_fraction": if side == "below" { 1.0 } else { 0.0 },
            }),
        ));
    }
    Ok(ExperimentReport { experiment: cfg.experiment, header: header(&cols), rows, cells, skipped })
}

fn checkpoints(cfg: &ExperimentConfig) -> Result<Vec<usize>> {
    let total = pair_count(cfg.n) as usize;
    let mut out = Vec::new();
    for c in &cfg.checkpoints {
        let m = c.eval(cfg.n)?.floor() as usize;
        if m > total {
            return Err(Error::param(format!("checkpoint {c} = {m} exceeds C(n, 2) = {total}")));
        }
        out.push(m);
    }
    if let Some(count) = cfg.checkpoint_count {
        out.extend((0..count).map(|j| (j as u128 * total as u128 / (count as u128 - 1)) as usize));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// A(G_m) prediction as candidate values.
fn predicted_arboricity(m: usize, n: usize, delta: usize, eps: f64) -> Result<Vec<usize>> {
    if m == 0 {
        return Ok(vec![0]);
    }
    if delta * (n - 1) >= m {
        return Ok(vec![m.div_ceil(n - 1)]);
    }
    arboricity_prediction(m, n, eps)
}

#[derive(Clone)]
struct ScanPoint {
    delta: usize,
    t: usize,
    a: usize,
    lambda: usize,
    violations: usize,
}

/// δ, T, A and λ at fixed checkpoints along one random graph process.
pub fn run_process_scan(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let n = cfg.n;
    let marks = checkpoints(cfg)?;
    let results = run_units(1, cfg.samples, cfg.budget_secs, |_, sample| {
        let ps = ProcessStream::new(n, RngSeed::for_sample(cfg.seed, 0, sample as u32));
        let mut tracker = ArboricityTracker::new(n);
        let mut hint: Option<ForestDecomposition> = None;
        let mut points: Vec<ScanPoint> = Vec::with_capacity(marks.len());
        for &m in &marks {
            while tracker.edges() < m {
                tracker.push(ps.order()[tracker.edges()]);
            }
            let g = ps.prefix(m)?;
            let stp = stp_number_from(&g, hint.as_ref())?;
            let point = ScanPoint {
                delta: g.min_degree()?,
                t: stp.t,
                a: tracker.arboricity(),
                lambda: g.edge_connectivity()?,
                violations: 0,
            };
            hint = Some(stp.packing);
            let violations = match points.last() {
                Some(prev) => {
                    prev.violations
                        + (point.delta < prev.delta) as usize
                        + (point.t < prev.t) as usize
                        + (point.a < prev.a) as usize
                        + (point.lambda < prev.lambda) as usize
                }
                None => 0,
            };
            points.push(ScanPoint { violations, ..point });
        }
        Ok(points)
    })?;
    let samples = &results[0];
    let cols = ["m", "delta", "m_floor", "t", "t_predicted", "t_agree", "a", "a_predicted", "a_in_prediction", "lambda", "monotone_violations"];
    let mut rows = Vec::new();
    let mut cells = Vec::new();
    let skipped_samples = samples.iter().filter(|s| s.is_none()).count();
    let mut total_violations = 0;
    for (cell, &m) in marks.iter().enumerate() {
        let (mut done, mut t_agree, mut a_agree) = (0, 0, 0);
        for (sample, s) in samples.iter().enumerate() {
            let values = match s {
                Some(points) => {
                    let pt = &points[cell];
                    let floor = m / (n - 1);
                    let t_pred = pt.delta.min(floor);
                    let a_pred = predicted_arboricity(m, n, pt.delta, cfg.eps)?;
                    let a_in = a_pred.contains(&pt.a);
                    done += 1;
                    t_agree += (pt.t == t_pred) as usize;
                    a_agree += a_in as usize;
                    if cell + 1 == marks.len() {
                        total_violations += pt.violations;
                    }
                    Some(vec![
                        m.to_string(),
                        pt.delta.to_string(),
                        floor.to_string(),
                        pt.t.to_string(),
                        t_pred.to_string(),
                        (pt.t == t_pred).to_string(),
                        pt.a.to_string(),
                        a_pred.iter().map(usize::to_string).collect::<Vec<_>>().join("|"),
                        a_in.to_string(),
                        pt.lambda.to_string(),
                        pt.violations.to_string(),
                    ])
                }
                None => None,
            };
            rows.push(row(cell, sample, values, cols.len()));
        }
        cells.push(cell_object(
            cell,
            json!({ "m": m }),
            done,
            samples.len() - done,
            json!({ "t_agreement_fraction": fraction(t_agree, done), "a_in_prediction_fraction": fraction(a_agree, done) }),
        ));
    }
    if let Some(Value::Object(last)) = cells.last_mut() {
        last.insert("monotone_violations_total".into(), json!(total_violations));
    }
    Ok(ExperimentReport {
        experiment: cfg.experiment,
        header: header(&cols),
        rows,
        cells,
        skipped: skipped_samples * marks.len(),
    })
}

/// m_{A=i} along random graph processes against its predicted value or
/// window.
pub fn run_arboricity_hitting(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let n = cfg.n;
    let is: Vec<usize> = cfg.i.iter().map(|i| eval_int(i, n)).collect::<Result<_>>()?;
    if let Some(&bad) = is.iter().find(|&&i| i == 0 || i > n / 2) {
        return Err(Error::param(format!("i = {bad} outside 1..=n/2")));
    }
    let max_i = is.iter().copied().max().unwrap_or(1);
    let results = run_units(1, cfg.samples, cfg.budget_secs, |_, sample| {
        let ps = ProcessStream::new(n, RngSeed::for_sample(cfg.seed, 0, sample as u32));
        let hits = arboricity_hitting_times(n, ps.order(), max_i);
        Ok((hits, ps.first_cycle_position()))
    })?;
    let samples = &results[0];
    let cols = ["i", "m_hit", "prediction", "exact", "lower", "upper", "agree"];
    let mut rows = Vec::new();
    let mut cells = Vec::new();
    let skipped_samples = samples.iter().filter(|s| s.is_none()).count();
    for (cell, &i) in is.iter().enumerate() {
        let (kind, exact, lower, upper) = match i {
            1 => ("trivial", Some(1), f64::NAN, f64::NAN),
            2 => ("first_cycle", None, f64::NAN, f64::NAN),
            _ => {
                let h = hitting_prediction(i, n, cfg.eps)?;
                let kind = match (h.exact, h.upper < ((i - 1) * (n - 1)) as f64) {
                    (Some(_), _) => "exact",
                    (None, true) => "window",
                    (None, false) => "lower_bound",
                };
                (kind, h.exact, h.lower, h.upper)
            }
        };
        let (mut done, mut agree) = (0, 0);
        for (sample, s) in samples.iter().enumerate() {
            let values = s.as_ref().map(|(hits, first_cycle)| {
                let hit = hits.get(i - 1).copied();
                let expected = if i == 2 { first_cycle.map(|c| c + 1) } else { exact };
                let ok = match (hit, expected) {
                    (Some(h), Some(e)) => h == e,
                    (Some(h), None) => lower < h as f64 && (h as f64) < upper,
                    (None, _) => false,
                };
                done += 1;
                agree += ok as usize;
                let opt = |x: Option<usize>| x.map_or(String::new(), |v| v.to_string());
                let num = |x: f64| if x.is_nan() { String::new() } else { x.to_string() };
                vec![i.to_string(), opt(hit), kind.into(), opt(expected), num(lower), num(upper), ok.to_string()]
            });
            rows.push(row(cell, sample, values, cols.len()));
        }
        cells.push(cell_object(
            cell,
            json!({ "i": i, "i_spec": cfg.i[cell].to_string() }),
            done,
            samples.len() - done,
            json!({
                "prediction": kind,
                "exact": exact,
                "lower": if lower.is_nan() { Value::Null } else { json!(lower) },
                "upper": if upper.is_nan() { Value::Null } else { json!(upper) },
                "agreement_fraction": fraction(agree, done),
                "mean_m_hit": mean(samples.iter().flatten().filter_map(|(h, _)| h.get(i - 1)).map(|&h| h as f64)),
            }),
        ));
    }
    Ok(ExperimentReport {
        experiment: cfg.experiment,
        header: header(&cols),
        rows,
        cells,
        skipped: skipped_samples * is.len(),
    })
}

/// Orientability of G(n, m) for m on both sides of the k-orientability
/// threshold.
pub fn run_load_balancing(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let n = cfg.n;
    let total = pair_count(n);
    let mut grid: Vec<(usize, usize, EdgeCount)> = Vec::new();
    for k in &cfg.k {
        let k = eval_int(k, n)?;
        for &spec in &cfg.m {
            let m = spec.eval(n, k, cfg.eps)?;
            if m < 0 || m as u64 > total {
                return Err(Error::param(format!("m = {spec} evaluates to {m}, outside 0..=C(n, 2)")));
            }
            grid.push((k, m as usize, spec));
        }
    }
    let results = run_units(grid.len(), cfg.samples, cfg.budget_secs, |cell, sample| {
        let (k, m, _) = grid[cell];
        let g = gen_gnm(n, m, RngSeed::for_sample(cfg.seed, cell as u32, sample as u32))?;
        let orientable = matches!(orient_k(&g, k), Orient::Oriented(_));
        Ok((orientable, min_max_indegree(&g)))
    })?;
    let cols = ["k", "m", "orientable", "max_load", "predicted"];
    let mut rows = Vec::new();
    let mut cells = Vec::new();
    let mut skipped = 0;
    for (cell, samples) in results.iter().enumerate() {
        let (k, m, spec) = grid[cell];
        let (lo, hi) = orientability_thresholds(n, k, cfg.eps)?;
        let predicted = if m >= hi {
            "never"
        } else if (m as i64) <= lo {
            "orientable"
        } else {
            "undetermined"
        };
        let (mut done, mut yes) = (0, 0);
        for (sample, s) in samples.iter().enumerate() {
            let values = s.map(|(orientable, load)| {
                done += 1;
                yes += orientable as usize;
                vec![k.to_string(), m.to_string(), orientable.to_string(), load.to_string(), predicted.into()]
            });
            rows.push(row(cell, sample, values, cols.len()));
        }
        skipped += samples.len() - done;
        cells.push(cell_object(
            cell,
            json!({ "k": k, "m": m, "m_spec": spec.to_string() }),
            done,
            samples.len() - done,
            json!({
                "orientable_fraction": fraction(yes, done),
                "predicted": predicted,
                "orientable_below": lo,
                "never_from": hi,
                "refutation_violations": if m >= hi { yes } else { 0 },
            }),
        ));
    }
    Ok(ExperimentReport { experiment: cfg.experiment, header: header(&cols), rows, cells, skipped })
}

/// k-core size of G(n, c/n) against the Poisson prediction.
pub fn run_core_emergence(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let n = cfg.n;
    let mut grid: Vec<(f64, usize)> = Vec::new();
    for &c in &cfg.c {
        if !(c >= 0.0 && c <= n as f64) {
            return Err(Error::param(format!("c = {c} must lie in [0, n]")));
        }
        for k in &cfg.k {
            let k = eval_int(k, n)?;
            if k < 2 {
                return Err(Error::param("core_emergence needs k >= 2"));
            }
            grid.push((c, k));
        }
    }
    let results = run_units(grid.len(), cfg.samples, cfg.budget_secs, |cell, sample| {
        let (c, k) = grid[cell];
        let g = gen_gnp(n, c / n as f64, RngSeed::for_sample(cfg.seed, cell as u32, sample as u32))?;
        let core = g.k_core(k);
        let edges = g.induced_edge_count(&core)?;
        Ok((core.len(), edges))
    })?;
    let cols = ["c", "k", "core_vertices", "core_fraction", "core_edges_per_n", "predicted_fraction", "agree"];
    let mut rows = Vec::new();
    let mut cells = Vec::new();
    let mut skipped = 0;
    for (cell, samples) in results.iter().enumerate() {
        let (c, k) = grid[cell];
        let ck = c_k(k as u32)?;
        let prediction = if c > ck { Some(core_prediction(c, k as u32)?) } else { None };
        let (mut done, mut agree, mut empty) = (0, 0, 0);
        for (sample, s) in samples.iter().enumerate() {
            let values = s.map(|(size, edges)| {
                let frac = size as f64 / n as f64;
                let ok = match prediction {
                    Some((pf, _)) => (frac - pf).abs() <= cfg.tolerance,
                    None if k >= 3 => size == 0,
                    None => frac <= cfg.tolerance,
                };
                done += 1;
                agree += ok as usize;
                empty += (size == 0) as usize;
                let pf = prediction.map_or(0.0, |p| p.0);
                vec![
                    c.to_string(),
                    k.to_string(),
                    size.to_string(),
                    frac.to_string(),
                    (edges as f64 / n as f64).to_string(),
                    pf.to_string(),
                    ok.to_string(),
                ]
            });
            rows.push(row(cell, sample, values, cols.len()));
        }
        skipped += samples.len() - done;
        let executed = samples.iter().flatten();
        cells.push(cell_object(
            cell,
            json!({ "c": c, "k": k }),
            done,
            samples.len() - done,
            json!({
                "c_k": ck,
                "predicted_fraction": prediction.map(|p| p.0),
                "predicted_edges_per_n": prediction.map(|p| p.1),
                "mean_fraction": mean(executed.map(|&(size, _)| size as f64 / n as f64)),
                "empty_fraction": fraction(empty, done),
                "agreement_fraction": fraction(agree, done),
            }),
        ));
    }
    Ok(ExperimentReport { experiment: cfg.experiment, header: header(&cols), rows, cells, skipped })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# thresholds around the crossover
experiment = cases_threshold
n = 200
samples = 3
seed = 9
p = 0.5*threshold, 2*threshold, 0.01, 3*logn/n
budget_secs = 60
";

    #[test]
    fn config_round_trip() {
        let cfg = ExperimentConfig::parse(SAMPLE).unwrap();
        assert_eq!(cfg.experiment, ExperimentKind::CasesThreshold);
        assert_eq!(cfg.p.len(), 4);
        assert_eq!(cfg.p[0], Scaled { coef: 0.5, unit: Unit::Threshold });
        assert_eq!(ExperimentConfig::parse(&cfg.to_string()).unwrap(), cfg);

        let mut lb = ExperimentConfig::new(ExperimentKind::LoadBalancing, 100);
        lb.k = vec![Scaled { coef: 2.0, unit: Unit::Logn }, Scaled::plain(3.0)];
        lb.m = vec![EdgeCount::KnPlusOne, EdgeCount::KnMinusPhi, EdgeCount::Fixed(17)];
        lb.eps = 0.3;
        assert_eq!(ExperimentConfig::parse(&lb.to_string()).unwrap(), lb);
    }

    #[test]
    fn config_errors() {
        assert!(ExperimentConfig::parse("n = 10\n").is_err());
        assert!(matches!(ExperimentConfig::parse("experiment = stp_main\nn = 10\nsamples = x\n"), Err(Error::Parse { line: 3, .. })));
        assert!(ExperimentConfig::parse("experiment = stp_main\nn = 10\n").is_err());
        assert!(ExperimentConfig::parse("experiment = stp_main\nn = 10\np = 2*nlogn\n").is_err());
        assert!(ExperimentConfig::parse("experiment = nope\nn = 10\n").is_err());
        assert!(ExperimentConfig::parse("experiment = stp_main\nn = 10\np = 0.1\nsamples = 0\n").is_err());
    }

    #[test]
    fn stp_main_extremes() {
        let mut cfg = ExperimentConfig::new(ExperimentKind::StpMain, 12);
        cfg.samples = 2;
        cfg.p = vec![Scaled::plain(0.0), Scaled::plain(1.0)];
        let r = run(&cfg).unwrap();
        assert_eq!(r.rows.len(), 4);
        assert_eq!(r.cells[0]["agreement_fraction"], json!(1.0));
        assert_eq!(r.cells[1]["agreement_fraction"], json!(1.0));
        assert_eq!(r.rows[3][7], "6");
    }

    #[test]
    fn deterministic_reports() {
        let cfg = ExperimentConfig::parse(SAMPLE).unwrap();
        let a = run(&cfg).unwrap().to_csv().unwrap();
        let b = run(&cfg).unwrap().to_csv().unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with("cell,sample,status,p,"));
    }

    #[test]
    fn process_scan_endpoints() {
        let mut cfg = ExperimentConfig::new(ExperimentKind::ProcessScan, 10);
        cfg.samples = 2;
        cfg.checkpoint_count = Some(4);
        let r = run(&cfg).unwrap();
        // m = 0: T = A = 0; m = C(10, 2): T = 5, A = 5
        let first = &r.rows[0];
        assert_eq!((first[3].as_str(), first[6].as_str(), first[9].as_str()), ("0", "0", "0"));
        let last = r.rows.last().unwrap();
        assert_eq!((last[3].as_str(), last[6].as_str(), last[9].as_str()), ("45", "5", "5"));
        assert!(r.rows.iter().all(|row| row[13] == "0"));
    }

    #[test]
    fn budget_skips_are_reported() {
        let mut cfg = ExperimentConfig::new(ExperimentKind::StpMain, 30);
        cfg.samples = 3;
        cfg.p = vec![Scaled::plain(0.5)];
        cfg.budget_secs = Some(0.0);
        let r = run(&cfg).unwrap();
        assert_eq!(r.skipped, 3);
        assert!(r.rows.iter().all(|row| row[2] == "skipped"));
        assert_eq!(r.cells[0]["agreement_fraction"], Value::Null);
    }
}
