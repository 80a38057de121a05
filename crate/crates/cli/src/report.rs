//! Running normalizations and rendering the results as text, JSON or CSV.

use std::fmt::Write;
use std::path::Path;
use std::time::Instant;

use deprit_core::algebra::{Monomial, PolySeries, VarKind};
use deprit_core::canonical::{to_birkhoff, to_frame};
use deprit_core::integrals::{center_generators, gustavson_integral_for, hori_integral_for};
use deprit_core::normalize::{normalize, Normalization};
use deprit_core::{models, stats, ExtScalar, HamiltonianModel};
use serde::{Deserialize, Serialize};

use crate::config::{Format, Output, RunConfig};
use crate::error::{CliError, Result};
use crate::model_file::parse_model_file;

/// Header of the benchmark CSV.
pub const BENCH_HEADER: &str = "model,method,order,seconds,max_terms";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: String,
    pub monomial: String,
}

/// The `ε^eps` part of a series, ε factored out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub eps: u32,
    pub terms: Vec<Term>,
}

/// `coeff · (q1² + p1²)^power` at `ε^eps`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionTerm {
    pub eps: u32,
    pub power: u32,
    pub coeff: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodReport {
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<Vec<Block>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalized: Option<Vec<Block>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action_form: Option<Vec<ActionTerm>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hori: Option<Vec<Block>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gustavson: Option<Vec<Vec<Block>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub model: String,
    pub method: String,
    pub order: u32,
    pub seconds: f64,
    pub max_terms: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub model: String,
    pub dim: usize,
    pub omega: Vec<String>,
    pub order: u32,
    pub frame: String,
    pub hori_power: u32,
    pub runs: Vec<MethodReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bench: Option<Vec<BenchRow>>,
}

/// A built-in name or a model file path. Built-in series models carry `order` terms.
pub fn load_model(name: &str, order: u32) -> Result<HamiltonianModel> {
    match models::builtin(name, order) {
        Some(m) => Ok(m?),
        None => {
            let path = Path::new(name);
            if !path.exists() {
                return Err(CliError::Usage(format!(
                    "'{name}' is neither a built-in model ({}) nor a file",
                    models::BUILTIN.join(", ")
                )));
            }
            parse_model_file(path)
        }
    }
}

fn blocks(f: &PolySeries, kind: VarKind, max_eps: u32) -> Result<Vec<Block>> {
    let f = to_frame(f, kind)?;
    let frame = f.frame();
    Ok((0..=max_eps)
        .map(|k| {
            let part = f.coeff_of_eps(k);
            Block {
                eps: k,
                terms: part
                    .iter()
                    .map(|(m, c)| Term {
                        coeff: c.to_string(),
                        monomial: m.display_in(&frame),
                    })
                    .collect(),
            }
        })
        .filter(|b| !b.terms.is_empty())
        .collect())
}

/// For one degree of freedom, writes each ε block of a secular series as
/// `c (q1² + p1²)^k`. `None` if some block is not a single action power.
fn action_form(normalized: &PolySeries, order: u32) -> Result<Option<Vec<ActionTerm>>> {
    let frame = normalized.frame();
    if frame.dim() != 1 {
        return Ok(None);
    }
    let act = to_birkhoff(&deprit_core::algebra::parse_series("1 * q1^2 + 1 * p1^2", frame.with_kind(VarKind::Pq))?)?;
    let [(_, a)] = act.terms() else {
        return Ok(None);
    };
    let mut out = Vec::new();
    for k in 0..=order {
        let part = normalized.coeff_of_eps(k);
        match part.terms() {
            [] => {}
            [(m, c)] if m.coord(0) == m.momentum(1, 0) => {
                let power = m.coord(0) as u32;
                let c = c * &a.pow(power).inv()?;
                out.push(ActionTerm {
                    eps: k,
                    power,
                    coeff: c.to_string(),
                });
            }
            _ => return Ok(None),
        }
    }
    Ok(Some(out))
}

fn method_report(h: &HamiltonianModel, n: &Normalization, cfg: &RunConfig, s: u32) -> Result<MethodReport> {
    let kind = cfg.frame.kind();
    let mut r = MethodReport {
        method: n.method.to_string(),
        ..Default::default()
    };
    for out in &cfg.outputs {
        match out {
            Output::Generator => {
                let g = n.generator.to_series();
                r.generator = Some(blocks(&g, kind, cfg.order)?);
            }
            Output::Normalized => {
                r.normalized = Some(blocks(&n.normalized, kind, cfg.order)?);
                r.action_form = action_form(&n.normalized, cfg.order)?;
            }
            Output::Hori => {
                let ih = hori_integral_for(h, n, s)?;
                r.hori = Some(blocks(&ih, kind, cfg.order - s)?);
            }
            Output::Gustavson => {
                let seeds = center_generators(h.omega()).integrals();
                let mut all = Vec::new();
                for seed in seeds {
                    let i = gustavson_integral_for(n, h.omega(), &seed)?;
                    all.push(blocks(&i, kind, cfg.order)?);
                }
                r.gustavson = Some(all);
            }
        }
    }
    Ok(r)
}

/// Times `normalize` for every selected method and order.
pub fn bench_rows(h: &HamiltonianModel, cfg: &RunConfig) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &m in &cfg.methods {
        for order in cfg.bench_min_order..=cfg.order {
            stats::reset_peak_terms();
            let t = Instant::now();
            let n = normalize(h, order, m)?;
            let seconds = t.elapsed().as_secs_f64();
            drop(n);
            rows.push(BenchRow {
                model: h.name().to_string(),
                method: m.to_string(),
                order,
                seconds,
                max_terms: stats::peak_terms(),
            });
        }
    }
    Ok(rows)
}

/// Loads the model and runs every selected method.
pub fn run(cfg: &RunConfig) -> Result<Report> {
    let h = load_model(&cfg.model, cfg.order)?;
    let s = cfg.hori_power.unwrap_or(h.hori_power());
    if cfg.outputs.contains(&Output::Hori) && s > cfg.order {
        return Err(CliError::Usage(format!("Hori power {s} exceeds order {}", cfg.order)));
    }
    let mut runs = Vec::new();
    if !cfg.outputs.is_empty() {
        for &m in &cfg.methods {
            let n = normalize(&h, cfg.order, m)?;
            runs.push(method_report(&h, &n, cfg, s)?);
        }
    }
    let bench = if cfg.bench { Some(bench_rows(&h, cfg)?) } else { None };
    Ok(Report {
        model: h.name().to_string(),
        dim: h.dim(),
        omega: h.omega().values().iter().map(|w| w.to_string()).collect(),
        order: cfg.order,
        frame: cfg.frame.name().to_string(),
        hori_power: s,
        runs,
        bench,
    })
}

fn block_text(b: &Block) -> String {
    let terms: Vec<String> = b.terms.iter().map(|t| format!("{} * {}", t.coeff, t.monomial)).collect();
    terms.join(" + ")
}

fn write_series(out: &mut String, label: &str, blocks: &[Block]) {
    let _ = writeln!(out, "{label}:");
    if blocks.is_empty() {
        let _ = writeln!(out, "  0");
    }
    for b in blocks {
        let _ = writeln!(out, "  eps^{}: {}", b.eps, block_text(b));
    }
}

pub fn bench_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(BENCH_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(out, "{},{},{},{:.6},{}", r.model, r.method, r.order, r.seconds, r.max_terms);
    }
    out
}

fn render_text(r: &Report) -> String {
    let mut out = String::new();
    if !r.runs.is_empty() {
        let _ = writeln!(out, "model: {}", r.model);
        let _ = writeln!(out, "omega: {}", r.omega.join(" "));
        let _ = writeln!(out, "order: {}", r.order);
        let _ = writeln!(out, "frame: {}", r.frame);
    }
    for run in &r.runs {
        let _ = writeln!(out, "\n== {} ==", run.method);
        if let Some(g) = &run.generator {
            write_series(&mut out, "generator", g);
        }
        if let Some(n) = &run.normalized {
            write_series(&mut out, "normalized", n);
        }
        if let Some(a) = &run.action_form {
            let _ = writeln!(out, "normalized as c * (q1^2 + p1^2)^k:");
            for t in a {
                let _ = writeln!(out, "  eps^{} k={}: {}", t.eps, t.power, t.coeff);
            }
        }
        if let Some(h) = &run.hori {
            write_series(&mut out, &format!("hori (s={})", r.hori_power), h);
        }
        if let Some(gs) = &run.gustavson {
            for (i, g) in gs.iter().enumerate() {
                write_series(&mut out, &format!("gustavson[{}]", i + 1), g);
            }
        }
    }
    if let Some(rows) = &r.bench {
        if !r.runs.is_empty() {
            out.push('\n');
        }
        out.push_str(&bench_csv(rows));
    }
    out
}

fn render_csv(r: &Report) -> String {
    let mut out = String::new();
    if !r.runs.is_empty() {
        out.push_str("method,series,eps,monomial,coeff\n");
    }
    for run in &r.runs {
        let mut rows = |series: &str, blocks: &[Block]| {
            for b in blocks {
                for t in &b.terms {
                    let _ = writeln!(out, "{},{},{},{},{}", run.method, series, b.eps, t.monomial, t.coeff);
                }
            }
        };
        if let Some(g) = &run.generator {
            rows("generator", g);
        }
        if let Some(n) = &run.normalized {
            rows("normalized", n);
        }
        if let Some(h) = &run.hori {
            rows("hori", h);
        }
        if let Some(gs) = &run.gustavson {
            for (i, g) in gs.iter().enumerate() {
                rows(&format!("gustavson{}", i + 1), g);
            }
        }
    }
    if let Some(rows) = &r.bench {
        if !r.runs.is_empty() {
            out.push('\n');
        }
        out.push_str(&bench_csv(rows));
    }
    out
}

pub fn render(r: &Report, format: Format) -> Result<String> {
    Ok(match format {
        Format::Text => render_text(r),
        Format::Csv => render_csv(r),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).map_err(|e| CliError::Usage(e.to_string()))?;
            s.push('\n');
            s
        }
    })
}

/// Rebuilds a series from report blocks in `frame`.
pub fn blocks_to_series(blocks: &[Block], frame: deprit_core::VarFrame) -> Result<PolySeries> {
    let mut terms: Vec<(Monomial, ExtScalar)> = Vec::new();
    for b in blocks {
        for t in &b.terms {
            let mut kind = Some(frame.kind());
            let m = deprit_core::algebra::parse_monomial(&t.monomial, frame.dim(), &mut kind)?;
            let c: ExtScalar = t.coeff.parse()?;
            terms.push((m.with_eps(b.eps as u16), c));
        }
    }
    Ok(PolySeries::from_terms(frame, terms))
}
