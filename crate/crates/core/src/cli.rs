//! Command-line front end.

use std::fmt::Write as _;
use std::io::{self, BufRead, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::howe::{
    verify_dot_casimir, verify_duality, verify_euler_poincare_with, verify_omega_transport, CheckReport, DualPairSpec,
    Label, Side,
};
use crate::weights::{
    casimir_c, casimir_constant, casimir_s, kappa, random_p_plusplus, theta_negative, theta_positive, NegativeTheta,
    Sizes, SuperTag,
};
use crate::weyl::{enumerate_coset_reps, homology_weights, AlgebraTag};
use crate::{Error, Result};

/// Environment variable holding the worker thread count.
pub const THREADS_VAR: &str = "HOWE_KOSTANT_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "howe-kostant", version, about = "Characters and Kostant homology of oscillator modules")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Character of the module labelled by --lambda.
    Char(PairArgs),
    /// Character of the k-th homology and its contributors.
    Homology {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 0)]
        k: u32,
    },
    /// Minimal coset representatives up to length --kmax.
    Weyl {
        #[arg(long = "type")]
        tag: AlgebraTag,
        #[arg(long, default_value_t = 1)]
        kmax: u32,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long, default_value = "-")]
        lambda: String,
        #[arg(long)]
        json: bool,
    },
    /// Casimir eigenvalues and lemma verdicts.
    Casimir {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 3)]
        kmax: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: u32,
    },
    /// Runs a verification suite.
    Verify {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, default_value_t = 3)]
        kmax: u32,
    },
    /// Runs JSON-lines jobs from a file, or stdin for `-`.
    Batch { file: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Duality,
    EulerPoincare,
    Omega,
}

#[derive(Debug, Clone, Args)]
pub struct PairArgs {
    #[arg(long, default_value_t = Side::Positive)]
    pub side: Side,
    #[arg(long = "type")]
    pub tag: AlgebraTag,
    #[arg(long)]
    pub d: u32,
    #[arg(long, default_value_t = 0)]
    pub p: usize,
    #[arg(long, default_value_t = 0)]
    pub q: usize,
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    /// Partition in text form; `-` is the empty partition.
    #[arg(long)]
    pub lambda: Option<String>,
    #[arg(long, default_value_t = 5)]
    pub degree: u32,
    /// Module variables on the classical sides; defaults to the degree.
    #[arg(long)]
    pub nvars: Option<usize>,
    #[arg(long)]
    pub json: bool,
}

impl PairArgs {
    fn spec(&self) -> Result<DualPairSpec> {
        let sizes = Sizes::new(self.p, self.q, self.m, self.n);
        if self.side != Side::Super && sizes != Sizes::default() {
            return Err(Error::Inadmissible("--p --q --m --n apply only to the super side".into()));
        }
        let nvars = self.nvars.unwrap_or(self.degree as usize);
        DualPairSpec::with_nvars(self.side, self.tag, self.d, sizes, self.degree, nvars)
    }

    fn label(&self, spec: &DualPairSpec) -> Result<Option<Label>> {
        self.lambda.as_deref().map(|s| Label::parse(spec.group.family, spec.d(), s)).transpose()
    }

    fn label_or_empty(&self, spec: &DualPairSpec) -> Result<Label> {
        Ok(self.label(spec)?.unwrap_or(Label::parse(spec.group.family, spec.d(), "-")?))
    }
}

/// Result of one command: a JSON value, its text rendering, and a verdict.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub value: Value,
    pub text: String,
    pub ok: bool,
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::OutOfRange(_)
        | Error::Inadmissible(_)
        | Error::InvalidPartition(_)
        | Error::TagMismatch(_)
        | Error::NotDominant(_) => EXIT_USAGE,
        _ => EXIT_MISMATCH,
    }
}

fn report_text(r: &CheckReport) -> String {
    let status = if r.ok { "ok" } else { "MISMATCH" };
    let mut s = format!("{status} {} {}", r.check, r.params);
    if let Some(m) = &r.first_mismatch {
        let _ = write!(s, " first mismatch {m}");
    }
    s
}

fn reports(list: Vec<CheckReport>) -> Outcome {
    let ok = list.iter().all(|r| r.ok);
    let text = list.iter().map(report_text).collect::<Vec<_>>().join("\n");
    let value = if list.len() == 1 {
        list[0].to_json()
    } else {
        json!(list.iter().map(CheckReport::to_json).collect::<Vec<_>>())
    };
    Outcome { value, text, ok }
}

fn tidy(text: &str) -> String {
    text.lines().map(str::trim_end).collect::<Vec<_>>().join("\n")
}

fn run_char(a: &PairArgs) -> Result<Outcome> {
    let spec = a.spec()?;
    let label = a.label_or_empty(&spec)?;
    let ch = spec.module_char(&label)?;
    let value = json!({
        "check": "char",
        "params": spec.params(),
        "lambda": label.to_string(),
        "degree": spec.degree,
        "character": ch.to_json(),
    });
    let text = format!("ch L({label}) {}\n{ch}", spec.params());
    Ok(Outcome { value, text, ok: true })
}

fn run_homology(a: &PairArgs, k: u32) -> Result<Outcome> {
    let spec = a.spec()?;
    let label = a.label_or_empty(&spec)?;
    let h = spec.homology_char(&label, k)?;
    let mut value = h.to_json();
    value["params"] = spec.params();
    value["lambda"] = json!(label.to_string());
    let mut text = format!("ch H_{k}({label}) {}\n{}\n", spec.params(), h.character);
    let _ = writeln!(text, "{:<24} {:>6} {:<16}", "w", "length", "lambda_w");
    for c in &h.contributors {
        let _ = writeln!(text, "{:<24} {:>6} {:<16}", c.w.one_line(), c.w.length(), c.lambda_w.to_string());
    }
    Ok(Outcome { value, text: tidy(&text), ok: true })
}

fn run_weyl(tag: AlgebraTag, kmax: u32, d: Option<u32>, lambda: &str) -> Result<Outcome> {
    let source = if tag == AlgebraTag::B0 {
        None
    } else {
        let d = d.unwrap_or(if matches!(tag, AlgebraTag::B | AlgebraTag::C) { 2 } else { 1 });
        let spec = DualPairSpec::new(Side::Positive, tag, d, Sizes::default(), 1)?;
        let label = Label::parse(spec.group.family, d, lambda)?;
        Some((d, label.to_string(), spec.source_weight(&label)?))
    };
    let mut rows = Vec::new();
    let mut text = format!("{:<3} {:<24} {:<16} {:<16}\n", "k", "w", "reduced word", "lambda_w");
    for k in 0..=kmax {
        let mut elems: Vec<(String, Vec<i64>, Option<String>, Value)> = Vec::new();
        if let Some((_, _, lam)) = &source {
            for (w, mu, lw) in homology_weights(lam, k)? {
                elems.push((
                    w.one_line(),
                    w.reduced_word(),
                    Some(lw.to_string()),
                    json!({ "lambda_w": lw.to_json(), "weight": mu.to_json() }),
                ));
            }
        } else {
            for (len, w) in enumerate_coset_reps(tag, k) {
                if len == k {
                    elems.push((w.one_line(), w.reduced_word(), None, json!({})));
                }
            }
        }
        for (w, word, lw, extra) in elems {
            let word_s = word.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join(" ");
            let _ = writeln!(
                text,
                "{:<3} {:<24} {:<16} {:<16}",
                k,
                w,
                if word.is_empty() { "e".into() } else { word_s },
                lw.unwrap_or_default()
            );
            let mut row = json!({ "k": k, "w": w, "reduced_word": word });
            if let (Some(r), Some(e)) = (row.as_object_mut(), extra.as_object()) {
                r.extend(e.clone());
            }
            rows.push(row);
        }
    }
    let mut value = json!({ "check": "weyl", "type": tag.to_string(), "kmax": kmax, "elements": rows });
    if let Some((d, label, _)) = source {
        value["d"] = json!(d);
        value["lambda"] = json!(label);
    }
    Ok(Outcome { value, text: tidy(&text), ok: true })
}

fn run_casimir(a: &PairArgs, kmax: u32, seed: u64, samples: u32) -> Result<Outcome> {
    let spec = a.spec()?;
    let label = a.label_or_empty(&spec)?;
    let source = spec.source_tag();
    let lam = spec.source_weight(&label)?;
    let base = casimir_c(&lam)?;
    let (_, invariant) = verify_dot_casimir(source, &lam, kmax)?;
    let mut value = json!({
        "check": "casimir",
        "params": spec.params(),
        "lambda": label.to_string(),
        "casimir_c": base.to_string(),
        "dot_invariant": invariant,
        "kmax": kmax,
    });
    let mut text = format!("casimir_c(Lambda({label})) = {base}\ndot invariance up to k={kmax}: {invariant}");
    let mut ok = invariant;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match spec.side {
        Side::Positive => {}
        Side::Super => {
            let st = SuperTag::from_classical(source)?;
            let sizes = spec.sizes;
            let lemma = |mu: &crate::weyl::WeightCoords| -> Result<bool> {
                let cbar = casimir_constant(st, sizes, &(&mu.level * kappa(source)));
                let cl = casimir_c(mu)?;
                let expected = if source == AlgebraTag::A { cl + cbar } else { cbar - cl };
                Ok(casimir_s(&theta_positive(mu, sizes)?) == expected)
            };
            let hat = casimir_s(&theta_positive(&lam, sizes)?);
            let at_label = lemma(&lam)?;
            let mut passed = 0;
            for _ in 0..samples {
                let mu = random_p_plusplus(&mut rng, source, sizes, lam.level.clone(), 8);
                passed += lemma(&mu)? as u32;
            }
            ok &= at_label && passed == samples;
            value["casimir_s"] = json!(hat.to_string());
            value["lemma_at_lambda"] = json!(at_label);
            value["lemma_samples"] = json!({ "seed": seed, "count": samples, "passed": passed });
            let _ = write!(text, "\ncasimir_s(theta(Lambda)) = {hat}\nlemma at lambda: {at_label}\nlemma on {samples} samples (seed {seed}): {passed} passed");
        }
        Side::Negative => {
            let dir = NegativeTheta::from_source(source)
                .ok_or_else(|| Error::Inadmissible(format!("no negative map from {source}")))?;
            let lemma = |mu: &crate::weyl::WeightCoords| -> Result<bool> {
                Ok(casimir_c(mu)? == -casimir_c(&theta_negative(dir, mu)?)?)
            };
            let neg = casimir_c(&theta_negative(dir, &lam)?)?;
            let at_label = lemma(&lam)?;
            let mut passed = 0;
            for _ in 0..samples {
                let mu = random_p_plusplus(&mut rng, source, Sizes::new(0, 0, 9, 9), lam.level.clone(), 9);
                passed += lemma(&mu)? as u32;
            }
            ok &= at_label && passed == samples;
            value["casimir_negative"] = json!(neg.to_string());
            value["lemma_at_lambda"] = json!(at_label);
            value["lemma_samples"] = json!({ "seed": seed, "count": samples, "passed": passed });
            let _ = write!(text, "\ncasimir_c(theta(Lambda)) = {neg}\nlemma at lambda: {at_label}\nlemma on {samples} samples (seed {seed}): {passed} passed");
        }
    }
    value["ok"] = json!(ok);
    Ok(Outcome { value, text, ok })
}

fn run_verify(a: &PairArgs, suite: Suite, k: Option<u32>, kmax: u32) -> Result<Outcome> {
    let spec = a.spec()?;
    let label = a.label(&spec)?;
    let list = match suite {
        Suite::Duality => vec![verify_duality(&spec)?],
        Suite::EulerPoincare => {
            let solved = spec.solve_product_side()?;
            let labels = match label {
                Some(l) => vec![l],
                None => spec.labels().into_iter().filter(|l| l.size() <= 3).collect(),
            };
            labels.par_iter().map(|l| verify_euler_poincare_with(&spec, l, &solved)).collect::<Result<Vec<_>>>()?
        }
        Suite::Omega => {
            let labels = match label {
                Some(l) => vec![l],
                None => spec.labels().into_iter().filter(|l| l.size() <= 2).collect(),
            };
            let ks: Vec<u32> = match k {
                Some(k) => vec![k],
                None => (0..=kmax).collect(),
            };
            let jobs: Vec<(Label, u32)> = labels.iter().flat_map(|l| ks.iter().map(move |&k| (l.clone(), k))).collect();
            jobs.par_iter().map(|(l, k)| verify_omega_transport(&spec, l, *k)).collect::<Result<Vec<_>>>()?
        }
    };
    Ok(reports(list))
}

/// Executes a parsed command other than `batch`.
pub fn execute(command: &Command) -> Result<(Outcome, bool)> {
    match command {
        Command::Char(a) => Ok((run_char(a)?, a.json)),
        Command::Homology { pair, k } => Ok((run_homology(pair, *k)?, pair.json)),
        Command::Weyl { tag, kmax, d, lambda, json } => Ok((run_weyl(*tag, *kmax, *d, lambda)?, *json)),
        Command::Casimir { pair, kmax, seed, samples } => Ok((run_casimir(pair, *kmax, *seed, *samples)?, pair.json)),
        Command::Verify { pair, suite, k, kmax } => Ok((run_verify(pair, *suite, *k, *kmax)?, pair.json)),
        Command::Batch { .. } => Err(Error::Parse("batch jobs cannot nest".into())),
    }
}

/// Converts one JSON job object into an argument vector.
pub fn job_argv(job: &Value) -> std::result::Result<Vec<String>, String> {
    let obj = job.as_object().ok_or("job is not a JSON object")?;
    let command = obj.get("command").and_then(Value::as_str).ok_or("job has no string \"command\"")?;
    let mut argv = vec!["howe-kostant".to_string(), command.to_string()];
    for (key, v) in obj {
        if key == "command" {
            continue;
        }
        let flag = format!("--{}", key.replace('_', "-"));
        match v {
            Value::Bool(true) => argv.push(flag),
            Value::Bool(false) | Value::Null => {}
            Value::Number(n) => argv.extend([flag, n.to_string()]),
            Value::String(s) => argv.extend([flag, s.clone()]),
            _ => return Err(format!("unsupported value for {key}")),
        }
    }
    Ok(argv)
}

/// Runs one batch line, returning its result object and exit code.
pub fn run_job(line: &str) -> (Value, i32) {
    let job: Value = match serde_json::from_str(line) {
        Ok(v) => v,
        Err(e) => {
            return (json!({ "ok": false, "exit": EXIT_USAGE, "error": format!("malformed JSON: {e}") }), EXIT_USAGE)
        }
    };
    let argv = match job_argv(&job) {
        Ok(a) => a,
        Err(e) => return (json!({ "ok": false, "exit": EXIT_USAGE, "error": e }), EXIT_USAGE),
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let msg = e.to_string().lines().next().unwrap_or_default().to_string();
            return (json!({ "ok": false, "exit": EXIT_USAGE, "error": msg }), EXIT_USAGE);
        }
    };
    match execute(&cli.command) {
        Ok((o, _)) => {
            let code = if o.ok { EXIT_OK } else { EXIT_MISMATCH };
            (json!({ "ok": o.ok, "exit": code, "result": o.value }), code)
        }
        Err(e) => {
            let code = exit_code_for(&e);
            (json!({ "ok": false, "exit": code, "error": e.to_string() }), code)
        }
    }
}

/// Runs every non-blank line concurrently and writes results in input order.
pub fn run_batch(input: impl BufRead, out: &mut impl Write) -> io::Result<i32> {
    let lines: Vec<(usize, String)> = input
        .lines()
        .enumerate()
        .map(|(i, l)| l.map(|l| (i + 1, l)))
        .collect::<io::Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    let results: Vec<(usize, Value, i32)> = lines
        .par_iter()
        .map(|(n, l)| {
            let (v, c) = run_job(l);
            (*n, v, c)
        })
        .collect();
    let mut failed = 0;
    for (n, mut v, code) in results {
        v["line"] = json!(n);
        failed += (code != EXIT_OK) as usize;
        writeln!(out, "{v}")?;
    }
    let jobs = lines.len();
    writeln!(out, "{}", json!({ "summary": { "jobs": jobs, "ok": jobs - failed, "failed": failed } }))?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_MISMATCH })
}

/// Configures the global thread pool from [`THREADS_VAR`].
pub fn init_threads() -> std::result::Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_VAR) else { return Ok(()) };
    let n: usize = raw.trim().parse().map_err(|_| format!("{THREADS_VAR} must be a positive integer, got {raw:?}"))?;
    if n == 0 {
        return Err(format!("{THREADS_VAR} must be positive"));
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

/// Entry point: parses `args`, runs, and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    if let Err(e) = init_threads() {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    if let Command::Batch { file } = &cli.command {
        let result = if file == "-" {
            run_batch(io::stdin().lock(), &mut out)
        } else {
            match std::fs::File::open(file) {
                Ok(f) => run_batch(io::BufReader::new(f), &mut out),
                Err(e) => {
                    eprintln!("error: cannot open {file}: {e}");
                    return EXIT_USAGE;
                }
            }
        };
        return result.unwrap_or_else(|e| {
            eprintln!("error: {e}");
            EXIT_MISMATCH
        });
    }
    match execute(&cli.command) {
        Ok((o, as_json)) => {
            let _ = if as_json { writeln!(out, "{}", o.value) } else { writeln!(out, "{}", o.text) };
            if o.ok {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}
