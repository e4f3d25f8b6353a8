use std::io::{Read, Write};
use std::sync::atomic::{AtomicUsize, Ordering};

use serde_json::{json, Value};
use ydkit::acceptance::{run_criterion, SuiteConfig, CRITERIA};
use ydkit::classify::corpus::PATTERNS_TSV;
use ydkit::nichols::companion_space;
use ydkit::{
    braiding_from_yd, build_comatrix, classify, construct, cross_validate, graded_dims, is_comatrix, module_dim,
    verify_all, BraidedSpace, Budget, HilbertPrefix, Literal, ModuleParams, TableCorpus, Verdict, YDModule,
};

use crate::cli::{Format, GlobalArgs, ParamsArg};
use crate::error::CliError;
use crate::input::{parse_json, GridPoint, GridSpec, ParamSpec};

/// Writes a line to stdout; a closed pipe ends the process quietly.
pub fn emit(line: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{line}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write output: {e}");
        std::process::exit(4);
    }
}

/// A command result in every output format, with its exit code.
pub struct Report {
    pub json: Value,
    pub tsv: String,
    pub text: String,
    pub code: u8,
}

impl Report {
    fn ok(json: Value, tsv: String, text: String) -> Report {
        Report { json, tsv, text, code: 0 }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("serializable"),
            Format::Tsv => self.tsv.trim_end().to_string(),
            Format::Text => self.text.trim_end().to_string(),
        }
    }
}

pub struct Session {
    pub conductor: Option<u32>,
    pub degree: usize,
    pub budget: Budget,
    pub seed: u64,
    pub corpus: Option<TableCorpus>,
    pub degree_given: bool,
}

impl Session {
    pub fn new(g: &GlobalArgs) -> Result<Session, CliError> {
        let corpus = match &g.tables {
            Some(path) => {
                let rows = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
                Some(TableCorpus::load(&rows, PATTERNS_TSV)?)
            }
            None => None,
        };
        Ok(Session {
            conductor: g.conductor,
            degree: g.degree.unwrap_or(6) as usize,
            budget: Budget { max_rows: g.budget as usize, max_time: None },
            seed: g.seed,
            corpus,
            degree_given: g.degree.is_some(),
        })
    }

    fn params(&self, arg: &ParamsArg) -> Result<(ParamSpec, ModuleParams), CliError> {
        let spec = ParamSpec::from_json(&read_input(arg)?)?;
        let params = spec.build(self.conductor)?;
        Ok((spec, params))
    }
}

fn read_input(arg: &ParamsArg) -> Result<Value, CliError> {
    match &arg.json {
        Some(text) => parse_json(text),
        None => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| CliError::Input(format!("cannot read stdin: {e}")))?;
            parse_json(&text)
        }
    }
}

fn verification_json(v: &YDModule, p: &ModuleParams) -> Result<Value, CliError> {
    let report = verify_all(v, p)?;
    Ok(json!({"verified": report.passed(), "failures": report.failures}))
}

fn verification_text(verification: &Value) -> String {
    if verification["verified"] == true {
        "verified: yes\n".into()
    } else {
        let failures: Vec<String> =
            verification["failures"].as_array().into_iter().flatten().filter_map(|f| f.as_str().map(String::from)).collect();
        format!("verified: no\nfailures: {}\n", failures.join("; "))
    }
}

fn module_text(v: &YDModule) -> String {
    let list = |xs: &[ydkit::Scalar]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ");
    let mut s = format!("dim: {}\nx acts by: {}\ng acts by: {}\n", v.dim, list(&v.x_action), list(&v.g_action));
    for (k, row) in v.coaction.iter().enumerate() {
        let terms: Vec<String> = row.iter().map(|(h, l)| format!("({h}) ⊗ v{l}")).collect();
        s.push_str(&format!("δ(v{k}) = {}\n", terms.join(" + ")));
    }
    s
}

pub fn construct_cmd(s: &Session, arg: &ParamsArg) -> Result<Report, CliError> {
    let (spec, p) = s.params(arg)?;
    let v = construct(&p)?;
    let verification = verification_json(&v, &p)?;
    let verified = verification["verified"] == true;
    let tsv = format!(
        "key\tvalue\ndim\t{}\nconductor\t{}\nverified\t{verified}\n",
        v.dim,
        p.liu.conductor()
    );
    let text = format!("{}{}", module_text(&v), verification_text(&verification));
    let json = json!({
        "input": spec.raw,
        "params": p.to_json(),
        "module": v.to_json(),
        "verification": verification,
    });
    Ok(Report { json, tsv, text, code: if verified { 0 } else { 3 } })
}

/// Accepts construct output (params and module) or bare parameters.
pub fn verify_cmd(s: &Session, arg: &ParamsArg) -> Result<Report, CliError> {
    let input = read_input(arg)?;
    let (p, v) = match (input.get("params"), input.get("module")) {
        (Some(params), Some(module)) => {
            let p = ModuleParams::from_json(params)?;
            let v = YDModule::from_json(module, p.liu.conductor())?;
            (p, v)
        }
        _ => {
            let p = ParamSpec::from_json(&input)?.build(s.conductor)?;
            let v = construct(&p)?;
            (p, v)
        }
    };
    let verification = verification_json(&v, &p)?;
    let verified = verification["verified"] == true;
    let tsv = format!("key\tvalue\nverified\t{verified}\nfailures\t{}\n", verification["failures"].as_array().map_or(0, Vec::len));
    let text = verification_text(&verification);
    Ok(Report { json: verification, tsv, text, code: if verified { 0 } else { 3 } })
}

pub fn comatrix_cmd(s: &Session, arg: &ParamsArg, size: Option<u32>) -> Result<Report, CliError> {
    let (_, p) = s.params(arg)?;
    let size = size.unwrap_or(module_dim(&p) as u32 - 1);
    let m = build_comatrix(&p.coeff_params(), size)?;
    let failure = is_comatrix(&m, &p.liu)?;
    let mut json = m.to_json();
    json["is_comatrix"] = json!(failure.is_none());
    json["failure"] = json!(failure.as_ref().map(|f| f.to_string()));
    let status = match &failure {
        None => "comatrix: yes".to_string(),
        Some(f) => format!("comatrix: no ({f})"),
    };
    let text = format!("{}{status}\n", m.to_tsv());
    Ok(Report { json, tsv: m.to_tsv(), text, code: if failure.is_none() { 0 } else { 3 } })
}

fn prefix_report(prefix: &HilbertPrefix, label: &str) -> Report {
    let mut text = format!("{label}: dims {:?}, total {}\n", prefix.dims, prefix.total());
    if let Some(t) = &prefix.truncated {
        text.push_str(&format!("truncated at degree {}: {}\n", t.degree, t.reason));
    }
    Report::ok(prefix.to_json(), prefix.to_tsv(), text)
}

fn diagonal_space(text: &str, explicit: Option<u32>) -> Result<BraidedSpace, CliError> {
    let v = parse_json(text)?;
    let bad = || CliError::Input("diagonal braiding: expected a square array of literals".into());
    let rows = v.as_array().ok_or_else(bad)?;
    let mut lits = Vec::new();
    for row in rows {
        let row = row.as_array().filter(|r| r.len() == rows.len()).ok_or_else(bad)?;
        let parsed: Result<Vec<Literal>, CliError> = row
            .iter()
            .map(|x| match x {
                Value::String(s) => Ok(Literal::parse(s)?),
                Value::Number(n) => Ok(Literal::parse(&n.to_string())?),
                _ => Err(bad()),
            })
            .collect();
        lits.push(parsed?);
    }
    let needed = lits.iter().flatten().map(|l| l.root_order).fold(2u32, num_integer::lcm);
    let conductor = match explicit {
        Some(c) if num_integer::lcm(c, 2) % needed != 0 => {
            return Err(CliError::Input(format!("conductor {c} cannot host the roots of order dividing {needed}")))
        }
        Some(c) => c,
        None => needed,
    };
    let q: Result<Vec<Vec<_>>, CliError> =
        lits.iter().map(|row| row.iter().map(|l| Ok(l.to_scalar(conductor)?)).collect()).collect();
    Ok(BraidedSpace::diagonal(&q?)?)
}

pub fn hilbert_cmd(s: &Session, arg: &ParamsArg, companion: bool, diagonal: Option<&str>) -> Result<Report, CliError> {
    let (space, label) = match diagonal {
        Some(text) => (diagonal_space(text, s.conductor)?, "diagonal"),
        None => {
            let (_, p) = s.params(arg)?;
            if companion {
                (companion_space(&p)?, "companion")
            } else {
                (braiding_from_yd(&construct(&p)?, &p)?, "module")
            }
        }
    };
    Ok(prefix_report(&graded_dims(&space, s.degree, s.budget), label))
}

fn diagram_text(v: &Verdict) -> String {
    let d = &v.diagram;
    match &d.edge {
        Some(e) => format!("{} —({e})— {}", d.v1, d.v2),
        None => format!("{} , {} (no edge)", d.v1, d.v2),
    }
}

fn verdict_text(v: &Verdict) -> String {
    let ids: Vec<String> = v
        .matches
        .iter()
        .map(|m| format!("table {} {}", m.table, m.ids.iter().map(|&id| ydkit::classify::format_id(id)).collect::<Vec<_>>().join(",")))
        .collect();
    let mut s = format!(
        "regime {}, {}, dim V = {}, diagram {}\n",
        v.regime.name(),
        if v.finite { "finite" } else { "infinite" },
        v.module_dim,
        diagram_text(v)
    );
    if !ids.is_empty() {
        s.push_str(&format!("rows: {}\n", ids.join("; ")));
    }
    if let Some(c) = &v.certificate {
        s.push_str(&format!("certificate: {c}\n"));
    }
    for n in &v.notes {
        s.push_str(&format!("note: {n}\n"));
    }
    s
}

const CLASSIFY_TSV_HEADER: &str = "n\tw\tgamma\talpha\tbeta\tr\ti\tregime\tfinite\tdim\tdiagram\trows\terror";

fn param_cells(p: &Value) -> String {
    let cell = |k: &str| match &p[k] {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    };
    ["n", "w", "gamma", "alpha", "beta", "r", "i"].iter().map(|k| cell(k)).collect::<Vec<_>>().join("\t")
}

fn verdict_row(params: &Value, v: &Verdict) -> String {
    let rows: Vec<String> = v
        .matches
        .iter()
        .map(|m| format!("{}:{}", m.table, m.ids.iter().map(|&id| ydkit::classify::format_id(id)).collect::<Vec<_>>().join(",")))
        .collect();
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t-",
        param_cells(params),
        v.regime.name(),
        v.finite,
        v.module_dim,
        diagram_text(v),
        if rows.is_empty() { "-".into() } else { rows.join(" ") }
    )
}

pub fn classify_single(s: &Session, arg: &ParamsArg) -> Result<Report, CliError> {
    let (spec, p) = s.params(arg)?;
    let v = classify(&p)?;
    let tsv = format!("{CLASSIFY_TSV_HEADER}\n{}\n", verdict_row(&spec.raw, &v));
    Ok(Report::ok(v.to_json(), tsv, verdict_text(&v)))
}

/// Result line for one grid point.
struct GridLine {
    json: Value,
    tsv: String,
    text: String,
}

fn classify_point(point: &GridPoint, conductor: Option<u32>) -> GridLine {
    match point {
        GridPoint::Skip { params, reason } => GridLine {
            json: json!({"params": params, "skipped": reason}),
            tsv: format!("{}\t-\t-\t-\t-\t-\tskipped: {reason}", param_cells(params)),
            text: format!("{params}: skipped ({reason})"),
        },
        GridPoint::Tuple(params) => {
            let result = ParamSpec::from_json(params).and_then(|spec| spec.build(conductor)).and_then(|p| Ok(classify(&p)?));
            match result {
                Ok(v) => GridLine {
                    json: json!({"params": params, "verdict": v.to_json()}),
                    tsv: verdict_row(params, &v),
                    text: format!("{params}: {}", verdict_text(&v).trim_end().replace('\n', "; ")),
                },
                Err(e) => GridLine {
                    json: json!({"params": params, "error": e.to_string()}),
                    tsv: format!("{}\t-\t-\t-\t-\t-\t{e}", param_cells(params)),
                    text: format!("{params}: error ({e})"),
                },
            }
        }
    }
}

/// Evaluates the points on a worker pool; results keep the grid order.
fn run_grid(points: &[GridPoint], conductor: Option<u32>, jobs: usize) -> Vec<GridLine> {
    let next = AtomicUsize::new(0);
    let mut slots: Vec<Option<GridLine>> = (0..points.len()).map(|_| None).collect();
    let results: Vec<Vec<(usize, GridLine)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs.max(1))
            .map(|_| {
                scope.spawn(|| {
                    let mut done = Vec::new();
                    loop {
                        let k = next.fetch_add(1, Ordering::Relaxed);
                        if k >= points.len() {
                            break done;
                        }
                        done.push((k, classify_point(&points[k], conductor)));
                    }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    for (k, line) in results.into_iter().flatten() {
        slots[k] = Some(line);
    }
    slots.into_iter().map(|l| l.expect("every point evaluated")).collect()
}

/// Streams one line per grid point; skipped points are also logged to stderr.
pub fn classify_grid(s: &Session, grid: &str, jobs: Option<usize>, format: Format) -> Result<u8, CliError> {
    let spec = GridSpec::from_json(&parse_json(grid)?)?;
    let points = spec.expand()?;
    let jobs = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let lines = run_grid(&points, s.conductor, jobs);
    if format == Format::Tsv {
        emit(CLASSIFY_TSV_HEADER);
    }
    let mut skipped = 0;
    let mut errors = 0;
    for (point, line) in points.iter().zip(&lines) {
        match point {
            GridPoint::Skip { params, reason } => {
                skipped += 1;
                eprintln!("skip {params}: {reason}");
            }
            GridPoint::Tuple(_) if line.json.get("error").is_some() => errors += 1,
            GridPoint::Tuple(_) => {}
        }
        match format {
            Format::Json => emit(&line.json.to_string()),
            Format::Tsv => emit(&line.tsv),
            Format::Text => emit(&line.text),
        }
    }
    eprintln!("{} points, {} classified, {skipped} skipped, {errors} errors", points.len(), points.len() - skipped - errors);
    Ok(0)
}

pub fn cross_validate_cmd(s: &Session, arg: &ParamsArg) -> Result<Report, CliError> {
    let (_, p) = s.params(arg)?;
    let r = cross_validate(&p, s.degree, s.budget)?;
    let mut text = verdict_text(&r.verdict);
    text.push_str(&format!("companion dims: {:?}\nmodule dims: {:?}\n", r.companion.dims, r.module.dims));
    text.push_str(&format!("consistent: {}\n", r.consistent));
    for n in &r.notes {
        text.push_str(&format!("note: {n}\n"));
    }
    let tsv = format!(
        "space\tdims\ttotal\ncompanion\t{:?}\t{}\nmodule\t{:?}\t{}\n",
        r.companion.dims,
        r.companion.total(),
        r.module.dims,
        r.module.total()
    );
    Ok(Report { json: r.to_json(), tsv, text, code: if r.consistent { 0 } else { 3 } })
}

pub fn tables_list(s: &Session) -> Report {
    let corpus = s.corpus.as_ref().unwrap_or_else(|| TableCorpus::builtin());
    let rows: Vec<Value> = corpus
        .rows
        .iter()
        .map(|r| {
            json!({
                "table": r.table,
                "ids": r.ids_text(),
                "zeta": r.zeta,
                "conditions": r.conditions().map(|a| a.to_string()).collect::<Vec<_>>(),
                "flag": r.flag,
            })
        })
        .collect();
    let tsv = corpus.to_tsv();
    Report::ok(Value::Array(rows), tsv.clone(), tsv)
}

pub fn selftest(s: &Session, criteria: &[u8]) -> Result<Report, CliError> {
    let cfg = SuiteConfig {
        degree: s.degree_given.then_some(s.degree),
        budget: s.budget,
        seed: s.seed,
        corpus: s.corpus.clone(),
    };
    let ids: Vec<u8> = if criteria.is_empty() { CRITERIA.iter().map(|c| c.0).collect() } else { criteria.to_vec() };
    let mut outcomes = Vec::new();
    for id in ids {
        let o = run_criterion(id, &cfg).ok_or_else(|| CliError::Input(format!("no acceptance criterion {id}")))?;
        outcomes.push(o);
    }
    let failed: Vec<_> = outcomes.iter().filter(|o| !o.passed).collect();
    let mut text: String = outcomes.iter().map(|o| format!("{o}\n")).collect();
    text.push_str(&format!("selftest: {} passed, {} failed\n", outcomes.len() - failed.len(), failed.len()));
    if let Some(first) = failed.first() {
        text.push_str(&format!("first failure: criterion {}: {}\n", first.id, first.detail));
    }
    let json = Value::Array(
        outcomes
            .iter()
            .map(|o| {
                json!({
                    "criterion": o.id,
                    "title": o.title,
                    "passed": o.passed,
                    "detail": o.detail,
                    "notes": o.notes,
                    "elapsed_ms": o.elapsed.as_millis() as u64,
                    "target_ms": o.target.as_millis() as u64,
                })
            })
            .collect(),
    );
    let tsv: String = std::iter::once("criterion\tpassed\telapsed_ms\tdetail\n".to_string())
        .chain(outcomes.iter().map(|o| format!("{}\t{}\t{}\t{}\n", o.id, o.passed, o.elapsed.as_millis(), o.detail)))
        .collect();
    Ok(Report { json, tsv, text, code: if failed.is_empty() { 0 } else { 3 } })
}
