// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::fs;
use std::path::Path;
use std::io::Write;
use std::time::Instant;

use hyperchrom::characterize::{self, ClassificationKind};
use hyperchrom::extremal::{self, ExtremalParams};
use hyperchrom::format;
use hyperchrom::generators::{self, GeneratorParams};
use hyperchrom::oracle::{self, ChromaticIndex, ListColourability, OracleBudget};
use hyperchrom::ordering;
use hyperchrom::rational;
use hyperchrom::pipeline::{self, PipelineParams};
use hyperchrom::verify::{self, VerifyParams};
use hyperchrom::{Error, Hypergraph, ListAssignment};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::report::{self, Outcome, RunReport, SCHEMA};
use crate::{ClassifyArgs, ColorArgs, ColorMode, Common, ExactArgs, GenArgs, GenKind, OrderArgs, OrderMode, SweepArgs, VerifyArgs};

pub const TIME_CAP_ENV: &str = "HYPERCHROM_TIME_CAP_MS";

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Internal(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Internal(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        match err {
            Error::Internal(m) => CliError::Internal(m),
            other => CliError::Input(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn read(path: &Path) -> CliResult<Vec<u8>> {
    fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Loads `--in`, returning the hypergraph and the digest of its bytes.
fn load(common: &Common) -> CliResult<(Hypergraph, String)> {
    let path = common.input.as_ref().ok_or_else(|| CliError::Usage("--in <path> is required".into()))?;
    let bytes = read(path)?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| CliError::Input(format!("{}: not UTF-8", path.display())))?;
    let h = format::parse_hg(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok((h, report::digest(&bytes)))
}

/// `uniform:K` or a sidecar path; `None` gives `uniform:default_k`.
fn lists_for(source: Option<&str>, m: usize, default_k: usize) -> CliResult<ListAssignment> {
    match source {
        None => Ok(ListAssignment::uniform(m, default_k as u32)),
        Some(s) => match s.strip_prefix("uniform:") {
            Some(k) => {
                let k: u32 = k.parse().map_err(|_| CliError::Usage(format!("bad list size in `{s}`")))?;
                Ok(ListAssignment::uniform(m, k))
            }
            None => {
                let text = String::from_utf8(read(Path::new(s))?).map_err(|_| CliError::Input(format!("{s}: not UTF-8")))?;
                format::parse_lists(&text, m).map_err(|e| CliError::Input(format!("{s}: {e}")))
            }
        },
    }
}

fn time_cap(flag: Option<u64>) -> CliResult<u64> {
    if let Some(ms) = flag {
        return Ok(ms);
    }
    match std::env::var(TIME_CAP_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("{TIME_CAP_ENV} must be an integer, got `{v}`"))),
        Err(_) => Ok(OracleBudget::default().time_cap_ms),
    }
}

struct Run {
    command: &'static str,
    started: Instant,
}

impl Run {
    fn start(command: &'static str) -> Self {
        Run { command, started: Instant::now() }
    }

    #[allow(clippy::too_many_arguments)]
    fn finish(
        self,
        common: &Common,
        digest: Option<String>,
        parameters: Value,
        seed: Option<u64>,
        outcome: Outcome,
        colours_used: Option<usize>,
        certificates: Value,
        summary: &str,
    ) -> CliResult<i32> {
        let report = RunReport {
            schema: SCHEMA,
            command: self.command.into(),
            input_digest: digest,
            parameters,
            seed,
            outcome,
            colours_used,
            certificates,
            wall_time_ms: self.started.elapsed().as_millis() as u64,
        };
        let text = serde_json::to_string_pretty(&report).map_err(|e| CliError::Internal(e.to_string()))?;
        if let Some(out) = &common.out {
            fs::write(out, &text).map_err(|e| CliError::Input(format!("{}: {e}", out.display())))?;
        }
        if common.json {
            emit(&format!("{text}\n"));
        } else {
            let tail = if summary.is_empty() { String::new() } else { format!(" ({summary})") };
            emit(&format!("{}: {outcome}{tail}\n", self.command));
        }
        Ok(outcome.exit_code())
    }
}

pub fn gen(a: &GenArgs) -> CliResult<i32> {
    let run = Run::start("gen");
    let c = &a.common;
    let (h, extra) = match a.kind {
        GenKind::Plane => (generators::t_fold(&generators::projective_plane(a.q)?, c.t)?, Value::Null),
        GenKind::NearPencil => (generators::t_fold(&generators::near_pencil(a.n)?, c.t)?, Value::Null),
        GenKind::Random => {
            let p = GeneratorParams { seed: c.seed, n: a.n, t: c.t, size_min: a.size_min, size_max: a.size_max, density: a.density };
            let g = generators::random_bounded_codegree(&p)?;
            (g.hypergraph, json!({ "shortfall": g.shortfall, "attempts": g.attempts }))
        }
    };
    let text = format::serialize_hg(&h);
    let params = json!({ "kind": a.kind, "q": a.q, "n": a.n, "t": c.t, "size_min": a.size_min, "size_max": a.size_max, "density": a.density });
    let certs = json!({ "n": h.n(), "m": h.edge_count(), "generator": extra, "digest": report::digest(text.as_bytes()) });
    match (&c.out, c.json) {
        (Some(out), _) => fs::write(out, &text).map_err(|e| CliError::Input(format!("{}: {e}", out.display())))?,
        (None, false) => emit(&text),
        (None, true) => {}
    }
    // The report goes to stdout only; `--out` already holds the hypergraph.
    let quiet = Common { out: None, ..c.clone() };
    if c.json || c.out.is_some() {
        return run.finish(&quiet, None, params, Some(c.seed), Outcome::Success, None, certs, &format!("n = {}, m = {}", h.n(), h.edge_count()));
    }
    Ok(0)
}

pub fn order(a: &OrderArgs) -> CliResult<i32> {
    let run = Run::start("order");
    let c = &a.common;
    let (h, digest) = load(c)?;
    let params = json!({
        "mode": a.mode, "t": c.t, "tau": rational::display(&a.tau), "k": rational::display(&a.k),
        "sigma": rational::display(&a.sigma), "delta": rational::display(&a.delta), "gamma": rational::display(&a.gamma),
        "r0": a.r0, "sigma_inner": a.sigma_inner.as_ref().map(rational::display), "probe": a.probe,
    });
    let (ord, certs, holds) = match a.mode {
        OrderMode::Reorder => {
            let out = ordering::reorder(&h, c.t, &a.tau, &a.k)?;
            let holds = out.case == ordering::ReorderCase::A || out.certificates.as_ref().is_some_and(|w| w.o1_ok && w.o2_ok);
            (out.ordering.clone(), report::to_value(&out), holds)
        }
        OrderMode::Stability => {
            let cert = ordering::partition_stability(&h, c.t, &a.sigma, &a.delta, a.probe)?;
            (cert.ordering.clone(), report::to_value(&cert), cert.all_hold())
        }
        OrderMode::Extremal => {
            let cert = ordering::partition_extremal(&h, c.t, &a.delta, &a.gamma, a.r0, a.sigma_inner.as_ref())?;
            (cert.ordering.clone(), report::to_value(&cert), cert.all_hold())
        }
    };
    let fwd = ordering::forward_degrees(&h, &ord)?;
    let table: Vec<Value> = ord.perm().iter().map(|&e| json!({ "edge": e, "size": h.edge_size(e), "forward_degree": fwd[e] })).collect();
    let certs = json!({ "ordering": ord.perm(), "forward_degrees": table, "certificate": certs });
    let outcome = if holds { Outcome::Holds } else { Outcome::Violated };
    let max_fd = fwd.iter().max().copied().unwrap_or(0);
    run.finish(c, Some(digest), params, None, outcome, None, certs, &format!("max forward degree {max_fd}"))
}

pub fn color(a: &ColorArgs) -> CliResult<i32> {
    let run = Run::start("color");
    let c = &a.common;
    let (h, digest) = load(c)?;
    let lists = lists_for(a.lists.as_deref(), h.edge_count(), c.t * h.n())?;
    let params = json!({
        "mode": a.mode, "t": c.t, "lists": a.lists.clone().unwrap_or_else(|| format!("uniform:{}", c.t * h.n())),
        "eps": rational::display(&a.eps), "delta": rational::display(&a.delta), "gamma": rational::display(&a.gamma),
        "sigma": rational::display(&a.sigma), "alpha": rational::display(&a.alpha), "r0": a.r0, "r1": a.r1,
        "exact_budget": a.exact_budget, "moreover": a.moreover,
    });
    let pp = PipelineParams {
        epsilon: a.eps.clone(),
        delta: a.delta.clone(),
        gamma: a.gamma.clone(),
        sigma: a.sigma.clone(),
        r0: a.r0,
        r1: a.r1,
        exact_budget: a.exact_budget,
        seed: c.seed,
        moreover: a.moreover,
    };
    let (colouring, certs) = match a.mode {
        ColorMode::Pipeline => {
            let out = pipeline::colour_main(&h, c.t, &lists, &pp)?;
            (out.colouring.clone(), report::to_value(&out))
        }
        ColorMode::Stability => {
            let out = pipeline::colour_stability(&h, c.t, &lists, &pp)?;
            (out.colouring.clone(), report::to_value(&out))
        }
        ColorMode::Extremal => {
            let budget = OracleBudget { max_edges: a.exact_budget, time_cap_ms: time_cap(None)?, ..OracleBudget::default() };
            let ep = ExtremalParams { alpha: a.alpha.clone(), delta: a.delta.clone(), exact_budget: Some(budget) };
            let out = extremal::colour_extremal(&h, c.t, &lists, &ep)?;
            (out.colouring.clone(), report::to_value(&out))
        }
    };
    let used = colouring.as_ref().map(|col| col.colour_count());
    let outcome = if colouring.is_some() { Outcome::Success } else { Outcome::Failure };
    let certs = json!({ "colouring": colouring.map(|col| col.colours), "report": certs });
    let summary = used.map_or(String::new(), |u| format!("{u} colours"));
    run.finish(c, Some(digest), params, Some(c.seed), outcome, used, certs, &summary)
}

pub fn exact(a: &ExactArgs) -> CliResult<i32> {
    let run = Run::start("exact");
    let c = &a.common;
    let (h, digest) = load(c)?;
    let budget = OracleBudget { max_edges: a.budget_edges, max_colours: a.budget_colours, time_cap_ms: time_cap(a.time_cap_ms)? };
    let params = json!({ "budget": budget, "lists": a.lists });
    match &a.lists {
        None => {
            let res = oracle::exact_chromatic_index(&h, &budget)?;
            let (outcome, summary) = match &res {
                ChromaticIndex::Exact(k) => (Outcome::Success, format!("chromatic index {k}")),
                ChromaticIndex::BudgetExceeded => (Outcome::BudgetExceeded, String::new()),
            };
            let certs = json!({ "chromatic_index": res.value(), "result": res });
            run.finish(c, Some(digest), params, None, outcome, res.value(), certs, &summary)
        }
        Some(source) => {
            let lists = lists_for(Some(source), h.edge_count(), 0)?;
            let res = oracle::exact_list_colourable(&h, &lists, &budget)?;
            let (outcome, used) = match &res {
                ListColourability::Yes(col) => (Outcome::Success, Some(col.colour_count())),
                ListColourability::No => (Outcome::NotColourable, None),
                ListColourability::BudgetExceeded => (Outcome::BudgetExceeded, None),
            };
            run.finish(c, Some(digest), params, None, outcome, used, report::to_value(&res), "")
        }
    }
}

pub fn classify(a: &ClassifyArgs) -> CliResult<i32> {
    let run = Run::start("classify");
    let c = &a.common;
    let (h, digest) = load(c)?;
    let cls = characterize::classify_extremal(&h, c.t);
    let (outcome, summary) = match &cls.kind {
        ClassificationKind::Anomalous { reason } => (Outcome::Anomalous, reason.clone()),
        ClassificationKind::TFoldProjectivePlane { k, t } => (Outcome::Classified, format!("{t}-fold projective plane of order {k}")),
        ClassificationKind::TFoldNearPencil { t } => (Outcome::Classified, format!("{t}-fold near-pencil")),
        ClassificationKind::NotExtremal => (Outcome::Classified, "bound is strict".into()),
        ClassificationKind::NotApplicable { reason } => (Outcome::Classified, format!("bound does not apply: {reason}")),
    };
    run.finish(c, Some(digest), json!({ "t": c.t }), None, outcome, None, report::to_value(&cls), &summary)
}

fn verify_params(a: &VerifyArgs) -> CliResult<VerifyParams> {
    Ok(VerifyParams {
        sigma: a.sigma.clone(),
        delta: a.delta.clone(),
        gamma: a.gamma.clone(),
        r0: a.r0,
        budget: OracleBudget { time_cap_ms: time_cap(None)?, ..OracleBudget::default() },
    })
}

pub fn verify(a: &VerifyArgs) -> CliResult<i32> {
    let run = Run::start("verify");
    let c = &a.common;
    let (h, digest) = load(c)?;
    let vp = verify_params(a)?;
    let rep = verify::verify_instance(&h, c.t, &vp)?;
    let outcome = if rep.all_hold { Outcome::Holds } else { Outcome::Violated };
    let failed: Vec<&str> = rep.checks.iter().filter(|x| !x.holds).map(|x| x.name.as_str()).collect();
    let summary = if failed.is_empty() { format!("{} checks", rep.checks.len()) } else { format!("failed: {}", failed.join(", ")) };
    run.finish(c, Some(digest), json!({ "t": c.t, "params": vp }), None, outcome, None, report::to_value(&rep), &summary)
}

/// Result of one sweep instance.
#[derive(serde::Serialize)]
struct SweepItem {
    seed: u64,
    m: usize,
    failed_checks: Vec<String>,
    pipeline_coloured: bool,
}

fn sweep_one(seed: u64, a: &SweepArgs, vp: &VerifyParams) -> CliResult<SweepItem> {
    let t = a.common.t;
    let gp = GeneratorParams { seed, n: a.n, t, size_min: a.size_min, size_max: a.size_max, density: a.density };
    let h = generators::random_bounded_codegree(&gp)?.hypergraph;
    let rep = verify::verify_instance(&h, t, vp)?;
    let mut failed: Vec<String> = rep.checks.iter().filter(|x| !x.holds).map(|x| x.name.clone()).collect();
    let lists = ListAssignment::uniform(h.edge_count(), (t * h.n()) as u32);
    let pp = PipelineParams { seed, ..PipelineParams::default() };
    let out = pipeline::colour_main(&h, t, &lists, &pp)?;
    if let Some(col) = &out.colouring {
        if !h.validate_colouring(col, Some(&lists))?.valid {
            failed.push("pipeline_soundness".into());
        }
    }
    Ok(SweepItem { seed, m: h.edge_count(), failed_checks: failed, pipeline_coloured: out.colouring.is_some() })
}

pub fn sweep(a: &SweepArgs) -> CliResult<i32> {
    let run = Run::start("sweep");
    let c = &a.common;
    let vp = VerifyParams { budget: OracleBudget { time_cap_ms: time_cap(None)?, ..OracleBudget::default() }, ..VerifyParams::default() };
    let seeds: Vec<u64> = (0..a.count as u64).map(|i| c.seed.wrapping_add(i)).collect();
    let mut items = seeds.par_iter().map(|&s| sweep_one(s, a, &vp)).collect::<CliResult<Vec<_>>>()?;
    items.sort_by_key(|i| i.seed);
    let failures: Vec<&SweepItem> = items.iter().filter(|i| !i.failed_checks.is_empty()).collect();
    let coloured = items.iter().filter(|i| i.pipeline_coloured).count();
    let outcome = if failures.is_empty() { Outcome::Holds } else { Outcome::Violated };
    let params = json!({ "count": a.count, "n": a.n, "t": c.t, "size_min": a.size_min, "size_max": a.size_max, "density": a.density });
    let certs = json!({
        "instances": items.len(),
        "passed": items.len() - failures.len(),
        "failed": failures.len(),
        "pipeline_coloured": coloured,
        "failures": failures,
    });
    let summary = format!("{} of {} passed, pipeline coloured {coloured}", items.len() - failures.len(), items.len());
    run.finish(c, None, params, Some(c.seed), outcome, None, certs, &summary)
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}
