use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use boxperfect::boxtdi::{box_tdi_falsify_search, make_r_certificate, verify_certificate, BoxCertificate, RRecord};
use boxperfect::classes::{enumerate_q, enumerate_s, find_s_record, QOptions};
use boxperfect::esp::{is_esp, EspMode};
use boxperfect::graph::{build_named, contains_induced, line_graph_root, read_graph, write_graph};
use boxperfect::invariants::{
    is_claw_free, is_comparability, is_incomparability, is_parity, is_perfect, is_split, parameters, ParamReport,
};
use boxperfect::tu::is_tu_graph;
use boxperfect::{suite, BigRational, Budget, Error, Graph, Rational};
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Parser)]
#[command(name = "boxperfect", version, about = "Box-perfect graph recognition and certificates")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// TOML file with search limits.
    #[arg(long, global = true, value_name = "FILE")]
    budget: Option<PathBuf>,
    /// Seed for randomized corpora.
    #[arg(long, global = true, default_value_t = 20_240_601)]
    seed: u64,
    /// Include elapsed times (makes output run-dependent).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the predicate battery on a graph file.
    Analyze { path: PathBuf },
    /// Look for a certificate that the graph is not box-perfect.
    Certify {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
        /// Construction record (JSON) for `from-record`.
        #[arg(long, value_name = "FILE")]
        record: Option<PathBuf>,
        /// Verify this certificate (JSON) instead of building one.
        #[arg(long, value_name = "FILE")]
        certificate: Option<PathBuf>,
        /// Prime for the no-deletion construction.
        #[arg(long)]
        p: Option<i64>,
    },
    /// Write a JSON-lines catalog of class Q or S.
    Enumerate {
        #[arg(value_enum)]
        class: Class,
        size: usize,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Allow side-swapped induced subgraphs in the Q2 test.
        #[arg(long)]
        q2_any_orientation: bool,
    },
    /// Write a named family member as a graph file.
    Construct {
        family: String,
        #[arg(allow_negative_numbers = true)]
        params: Vec<i64>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Run the acceptance criteria.
    Suite {
        #[arg(long)]
        criterion: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Auto,
    FromRecord,
    Falsify,
}

#[derive(Clone, Copy, ValueEnum)]
enum Class {
    #[value(name = "Q", alias = "q")]
    Q,
    #[value(name = "S", alias = "s")]
    S,
}

struct Ctx {
    json: bool,
    timings: bool,
    seed: u64,
    budget: Budget,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    let budget = match &cli.budget {
        Some(p) => Budget::from_toml(&read(p)?).map_err(|e| format!("{}: {e}", p.display()))?,
        None => Budget::default(),
    };
    let ctx = Ctx { json: cli.json, timings: cli.timings, seed: cli.seed, budget };
    match cli.command {
        Command::Analyze { path } => analyze(&ctx, &path),
        Command::Certify { path, mode, record, certificate, p } => {
            certify(&ctx, &path, mode, record.as_deref(), certificate.as_deref(), p)
        }
        Command::Enumerate { class, size, out, q2_any_orientation } => {
            let opts = QOptions { q2_any_orientation };
            let cat = match class {
                Class::Q => enumerate_q(size, opts, &ctx.budget),
                Class::S => enumerate_s(size, opts, &ctx.budget),
            }
            .map_err(|e| e.to_string())?;
            emit(out.as_deref(), &cat.to_json_lines())?;
            Ok(0)
        }
        Command::Construct { family, params, out } => {
            let g = build_named(&family, &params).map_err(|e| e.to_string())?;
            emit(out.as_deref(), &write_graph(&family, &g))?;
            Ok(0)
        }
        Command::Suite { criterion } => run_suite(&ctx, criterion),
    }
}

fn read(p: &Path) -> Result<String, String> {
    fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), String> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_graph(p: &Path) -> Result<(String, Graph), String> {
    read_graph(&read(p)?).map_err(|e| format!("{}: {e}", p.display()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Method {
    Exhaustive,
    BudgetLimited,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Verdict {
    value: Option<bool>,
    method: Method,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    note: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Prediction {
    rule: String,
    box_perfect: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct AnalysisReport {
    name: String,
    n: usize,
    edges: usize,
    verdicts: BTreeMap<String, Verdict>,
    parameters: Option<ParamReport>,
    predictions: Vec<Prediction>,
    budget_notes: Vec<String>,
}

fn verdict(ctx: &Ctx, notes: &mut Vec<String>, name: &str, f: impl FnOnce() -> boxperfect::Result<(bool, Option<String>)>) -> Verdict {
    let start = Instant::now();
    let res = f();
    let elapsed_ms = ctx.timings.then(|| start.elapsed().as_millis() as u64);
    match res {
        Ok((v, note)) => Verdict { value: Some(v), method: Method::Exhaustive, note, elapsed_ms },
        Err(e) => {
            let note = e.to_string();
            notes.push(format!("{name}: {note}"));
            Verdict { value: None, method: Method::BudgetLimited, note: Some(note), elapsed_ms }
        }
    }
}

fn analyze(ctx: &Ctx, path: &Path) -> Result<u8, String> {
    let (name, g) = load_graph(path)?;
    let b = &ctx.budget;
    let mut notes = Vec::new();
    let mut v = BTreeMap::new();
    let s3 = build_named("S_n", &[3]).map_err(|e| e.to_string())?;
    let s3p = build_named("barS3plus", &[]).map_err(|e| e.to_string())?;
    let free = |h: &Graph| -> boxperfect::Result<(bool, Option<String>)> {
        Ok(match contains_induced(&g, h) {
            Some(e) => (false, Some(format!("induced copy on {:?}", e.image().to_vec()))),
            None => (true, None),
        })
    };
    let mut put = |k: &str, f: &mut dyn FnMut() -> boxperfect::Result<(bool, Option<String>)>| {
        let r = verdict(ctx, &mut notes, k, f);
        v.insert(k.to_string(), r);
    };
    put("perfect", &mut || {
        let r = is_perfect(&g, b)?;
        let note = r.witness.map(|w| format!("odd hole{} {w:?}", if r.in_complement { " in the complement" } else { "" }));
        Ok((r.perfect, note))
    });
    put("split", &mut || Ok((is_split(&g).is_some(), None)));
    put("claw_free", &mut || Ok((is_claw_free(&g), None)));
    put("parity", &mut || {
        let r = is_parity(&g, b)?;
        Ok((r.parity, r.witness.map(|(p, q)| format!("paths {p:?} and {q:?}"))))
    });
    put("comparability", &mut || Ok((is_comparability(&g, b)?, None)));
    put("incomparability", &mut || Ok((is_incomparability(&g, b)?, None)));
    put("tu", &mut || {
        let r = is_tu_graph(&g, b)?;
        Ok((r.is_tu, r.violator.map(|x| format!("rows {:?}, columns {:?}, det {}", x.rows, x.cols, x.det))))
    });
    put("esp", &mut || {
        let r = is_esp(&g, EspMode::Direct, b)?;
        Ok((r.esp, r.witness.map(|w| format!("{w:?}"))))
    });
    put("s3_free", &mut || free(&s3));
    put("bar_s3_plus_free", &mut || free(&s3p));
    put("complement_is_line_graph", &mut || Ok((line_graph_root(&g.complement()).is_some(), None)));
    let parameters = match parameters(&g, b) {
        Ok(p) => Some(p),
        Err(e) => {
            notes.push(format!("parameters: {e}"));
            None
        }
    };
    let get = |k: &str| v.get(k).and_then(|x| x.value);
    let mut predictions = Vec::new();
    let mut predict = |rule: &str, bp: bool| predictions.push(Prediction { rule: rule.into(), box_perfect: bp });
    if get("tu") == Some(true) {
        predict("totally unimodular graphs are box-perfect", true);
    }
    if get("esp") == Some(true) {
        predict("ESP graphs are box-perfect", true);
    }
    if get("split") == Some(true) {
        if let Some(r) = split_prediction(&g, b, &mut notes) {
            predict("a split graph is box-perfect iff it has no induced member of S", r);
        }
    }
    if get("perfect") == Some(true) && get("claw_free") == Some(true) {
        if let Some(f) = get("s3_free") {
            predict("a claw-free perfect graph is box-perfect iff it is S_3-free", f);
        }
    }
    if get("perfect") == Some(true) && get("complement_is_line_graph") == Some(true) {
        if let (Some(a), Some(c)) = (get("s3_free"), get("bar_s3_plus_free")) {
            predict(
                "a perfect complement of a line graph is box-perfect iff it is {S_3, barS3plus}-free",
                a && c,
            );
        }
    }
    if get("perfect") == Some(false) {
        predict("box-perfect graphs are perfect", false);
    }
    let report = AnalysisReport {
        name,
        n: g.n(),
        edges: g.edge_count(),
        verdicts: v,
        parameters,
        predictions,
        budget_notes: notes,
    };
    if ctx.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        println!("graph {} ({} vertices, {} edges)", report.name, report.n, report.edges);
        for (k, x) in &report.verdicts {
            let val = x.value.map_or("unknown".to_string(), |b| b.to_string());
            let method = match x.method {
                Method::Exhaustive => "exhaustive",
                Method::BudgetLimited => "budget-limited",
            };
            print!("  {k}: {val} [{method}]");
            if let Some(n) = &x.note {
                print!(" {n}");
            }
            if let Some(ms) = x.elapsed_ms {
                print!(" ({ms} ms)");
            }
            println!();
        }
        if let Some(p) = &report.parameters {
            println!("  alpha {} omega {} chi {} chibar {}", p.alpha, p.omega, p.chi, p.chibar);
        }
        for p in &report.predictions {
            let verdict = if p.box_perfect { "box-perfect" } else { "not box-perfect" };
            println!("  => {verdict} ({})", p.rule);
        }
        for n in &report.budget_notes {
            println!("  note: {n}");
        }
    }
    Ok(0)
}

fn split_prediction(g: &Graph, b: &Budget, notes: &mut Vec<String>) -> Option<bool> {
    let catalog = match enumerate_s(g.n(), QOptions::default(), b) {
        Ok(c) => c,
        Err(e) => {
            notes.push(format!("S catalog: {e}"));
            return None;
        }
    };
    Some(catalog.members.iter().all(|m| contains_induced(g, &m.graph).is_none()))
}

#[derive(Serialize)]
struct CertifyOutput<'a> {
    status: &'static str,
    method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<&'a boxperfect::boxtdi::VerifyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    falsifier: Option<&'a boxperfect::boxtdi::FalsifyReport>,
    notes: Vec<String>,
}

fn certify(
    ctx: &Ctx,
    path: &Path,
    mode: Mode,
    record: Option<&Path>,
    certificate: Option<&Path>,
    p: Option<i64>,
) -> Result<u8, String> {
    let (_, g) = load_graph(path)?;
    let b = &ctx.budget;
    let err = |e: Error| e.to_string();
    let mut notes = Vec::new();
    if let Some(cp) = certificate {
        let cert: BoxCertificate<BigRational> =
            serde_json::from_str(&read(cp)?).map_err(|e| format!("{}: {e}", cp.display()))?;
        let rep = verify_certificate(&g, &cert, true, b).map_err(err)?;
        let status = if rep.passed { "certified" } else { "rejected" };
        return finish(ctx, CertifyOutput {
            status,
            method: "supplied",
            certificate: None,
            verification: Some(&rep),
            falsifier: None,
            notes,
        }, rep.passed);
    }
    let rec: Option<RRecord> = match mode {
        Mode::FromRecord => {
            let rp = record.ok_or("from-record needs --record")?;
            Some(serde_json::from_str(&read(rp)?).map_err(|e| format!("{}: {e}", rp.display()))?)
        }
        Mode::Auto => {
            let r = find_s_record(&g, b).map_err(err)?;
            if r.is_none() {
                notes.push("not a member of S".into());
            }
            r
        }
        Mode::Falsify => None,
    };
    if let Some(rec) = rec {
        let cert = make_r_certificate::<Rational>(&g, &rec, p, b).map_err(err)?;
        let rep = verify_certificate(&g, &cert, true, b).map_err(err)?;
        if rep.passed {
            return finish(ctx, CertifyOutput {
                status: "certified",
                method: "record",
                certificate: Some(serde_json::to_value(&cert).expect("certificate serializes")),
                verification: Some(&rep),
                falsifier: None,
                notes,
            }, true);
        }
        notes.push(format!("record certificate failed: {:?}", rep.failed()));
    }
    let fr = match box_tdi_falsify_search(&g, b) {
        Ok(r) => r,
        Err(Error::BudgetExceeded { what, limit }) => {
            notes.push(format!("falsifier stopped: {what} (limit {limit})"));
            return finish(ctx, CertifyOutput {
                status: "no-evidence",
                method: "falsifier",
                certificate: None,
                verification: None,
                falsifier: None,
                notes,
            }, false);
        }
        Err(e) => return Err(e.to_string()),
    };
    let found = fr.counterexample.is_some();
    if !found {
        notes.push("no counterexample within the falsifier limits; this is not a proof of box-perfectness".into());
    }
    finish(ctx, CertifyOutput {
        status: if found { "certified" } else { "no-evidence" },
        method: "falsifier",
        certificate: None,
        verification: None,
        falsifier: Some(&fr),
        notes,
    }, found)
}

fn finish(ctx: &Ctx, out: CertifyOutput, certified: bool) -> Result<u8, String> {
    if ctx.json {
        println!("{}", serde_json::to_string_pretty(&out).expect("output serializes"));
    } else {
        println!("status: {} (via {})", out.status, out.method);
        if let Some(rep) = out.verification {
            println!("value: {}", rep.value);
            for c in &rep.checks {
                println!("  {:?}: {} {}", c.check, if c.passed { "ok" } else { "FAILED" }, c.detail);
            }
            if let Some(o) = &rep.integral_dual_optimum {
                println!("integral dual optimum: {o}");
            }
        }
        if let Some(f) = out.falsifier {
            println!("pairs checked: {}", f.pairs_checked);
            if let Some(c) = &f.counterexample {
                println!("w = {:?}, u = {:?}: {} < {}", c.w, c.u, c.min_double, c.twice_min);
            }
        }
        if let Some(c) = &out.certificate {
            println!("{}", serde_json::to_string(c).expect("certificate serializes"));
        }
        for n in &out.notes {
            println!("note: {n}");
        }
    }
    Ok(if certified { 0 } else { 1 })
}

fn run_suite(ctx: &Ctx, criterion: Option<usize>) -> Result<u8, String> {
    let ids: Vec<usize> = match criterion {
        Some(i) if (1..=suite::CRITERIA.len()).contains(&i) => vec![i],
        Some(i) => return Err(format!("no criterion {i}")),
        None => (1..=suite::CRITERIA.len()).collect(),
    };
    let outcomes: Vec<suite::Outcome> = ids.iter().map(|&i| suite::run_criterion(i, ctx.seed, &ctx.budget)).collect();
    if ctx.json {
        let rows: Vec<serde_json::Value> = outcomes
            .iter()
            .map(|o| {
                let mut v = serde_json::to_value(o).expect("outcome serializes");
                if ctx.timings {
                    v["elapsed_ms"] = (o.elapsed.as_millis() as u64).into();
                }
                v
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&rows).expect("outcomes serialize"));
    } else {
        for o in &outcomes {
            print!("criterion {:>2} {} {}: {}", o.id, if o.passed { "PASS" } else { "FAIL" }, o.title, o.detail);
            if ctx.timings {
                print!(" ({:.2}s)", o.elapsed.as_secs_f64());
            }
            println!();
        }
    }
    Ok(if outcomes.iter().all(|o| o.passed) { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analysis_report_round_trips() {
        let mut verdicts = BTreeMap::new();
        verdicts.insert("tu".to_string(), Verdict { value: None, method: Method::BudgetLimited, note: Some("limit".into()), elapsed_ms: None });
        let r = AnalysisReport {
            name: "g".into(),
            n: 3,
            edges: 2,
            verdicts,
            parameters: None,
            predictions: vec![Prediction { rule: "r".into(), box_perfect: true }],
            budget_notes: vec![],
        };
        let back: AnalysisReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }
}
