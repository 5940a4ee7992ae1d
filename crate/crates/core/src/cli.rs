//! The `radenv` command line.
//!
//! Every command prints a JSON document
//! `{"command", "inputs", "results", "version"}` or, where tabular, CSV.
//! Exit status is 0 on success, 2 on usage or parse errors and 3 on domain
//! errors. Exact probabilities travel as `{"num", "exp", "fraction",
//! "decimal"}` with value `num / 2^exp`.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::envelope::{envelope_mid_tail, quantile_finite, quantile_universal, universal_envelope};
use crate::envelope::{EnvelopeResult, QuantileResult, TruncationPolicy};
use crate::error::{Error, Result};
use crate::exactnum::{parse_ratio, parse_threshold, Dyadic, Ratio, Threshold};
use crate::oracle::{
    enumerate_dist, equalisation_probe, format_signs, probe_campaign, CampaignReport, PairProbe, ProbeOutcome,
    WeightVector,
};
use crate::statbridge::{
    comparison_table, critical_table, default_grid, figure_data, write_comparison_csv, write_critical_csv,
    write_figure_csv, ComparisonRow, CriticalTable, Figure,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "radenv", version, about = "Exact mid-tail envelopes of weighted Rademacher sums")]
struct Cli {
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest support size tried by universal searches.
    #[arg(long, global = true)]
    k_cap: Option<u32>,
    /// Fractional digits of printed decimals.
    #[arg(long, global = true, default_value_t = 6)]
    digits: usize,
    /// Output format; tables default to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct Scope {
    /// Restrict to weight vectors with n coordinates.
    #[arg(long, conflicts_with = "universal")]
    n: Option<u32>,
    /// Supremum over all dimensions (the default).
    #[arg(long)]
    universal: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Worst-case mid-tail at a threshold.
    Envelope {
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[command(flatten)]
        scope: Scope,
    },
    /// Smallest threshold whose envelope is at most alpha.
    Quantile {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[command(flatten)]
        scope: Scope,
    },
    /// Critical values of S and T over dimensions and levels.
    Table {
        #[arg(long, allow_hyphen_values = true)]
        ns: String,
        #[arg(long, allow_hyphen_values = true)]
        alphas: String,
    },
    /// Envelope against Hoeffding and Gaussian tails.
    Compare {
        #[arg(long = "t-grid", allow_hyphen_values = true)]
        t_grid: Option<String>,
    },
    /// Brute-force law of an arbitrary weight vector.
    Oracle {
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "alpha", conflicts_with = "alpha")]
        t: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
    },
    /// First-order equalisation probe, single instance or random campaign.
    LemmaCheck {
        #[arg(long, required_unless_present = "weights", conflicts_with = "weights")]
        n: Option<usize>,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, allow_hyphen_values = true, requires = "x")]
        weights: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
    },
    /// Plot points over the reference grid.
    FigureData {
        #[arg(long)]
        which: String,
    },
}

#[derive(Serialize)]
struct OutputEnvelope<'a> {
    command: &'a str,
    inputs: Value,
    results: Value,
    version: &'a str,
}

enum Output {
    Json { command: &'static str, inputs: Value, results: Value },
    Text(String),
}

struct Ctx {
    policy: TruncationPolicy,
    digits: usize,
    format: Option<Format>,
    warnings: Vec<String>,
}

impl Ctx {
    fn dyadic(&self, d: &Dyadic) -> Value {
        json!({
            "num": d.num().to_string(),
            "exp": d.exp(),
            "fraction": d.to_string(),
            "decimal": d.to_decimal(self.digits),
        })
    }

    fn threshold(&self, t: &Threshold) -> Value {
        json!({ "exact": t.to_string(), "decimal": format!("{:.*}", self.digits, t.to_f64()) })
    }

    fn tabular(&self) -> bool {
        self.format != Some(Format::Json)
    }

    fn csv_requested(&self) -> bool {
        self.format == Some(Format::Csv)
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status. Output goes to `out`, diagnostics to `err`.
pub fn run<I, S, W, E>(args: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut ctx = Ctx {
        policy: cli.k_cap.map_or_else(TruncationPolicy::default, TruncationPolicy::with_k_cap),
        digits: cli.digits,
        format: cli.format,
        warnings: Vec::new(),
    };
    let threads = cli.threads.unwrap_or_else(rayon::current_num_threads);
    let command = cli.command;
    let result = crate::with_threads(threads, || dispatch(&mut ctx, command));
    for w in &ctx.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    match result {
        Ok(Output::Json { command, inputs, results }) => {
            let doc = OutputEnvelope { command, inputs, results, version: env!("CARGO_PKG_VERSION") };
            let text = serde_json::to_string_pretty(&doc).expect("JSON values serialise");
            let _ = writeln!(out, "{text}");
            EXIT_OK
        }
        Ok(Output::Text(text)) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_parse() {
                EXIT_USAGE
            } else {
                EXIT_DOMAIN
            }
        }
    }
}

fn dispatch(ctx: &mut Ctx, command: Command) -> Result<Output> {
    match command {
        Command::Envelope { t, scope } => cmd_envelope(ctx, &t, &scope),
        Command::Quantile { alpha, scope } => cmd_quantile(ctx, &alpha, &scope),
        Command::Table { ns, alphas } => cmd_table(ctx, &ns, &alphas),
        Command::Compare { t_grid } => cmd_compare(ctx, t_grid.as_deref()),
        Command::Oracle { weights, t, alpha } => cmd_oracle(ctx, &weights, t.as_deref(), alpha.as_deref()),
        Command::LemmaCheck { n, trials, seed, weights, x } => match (n, weights, x) {
            (_, Some(w), Some(x)) => cmd_lemma_single(ctx, &w, &x),
            (Some(n), _, _) => cmd_lemma_campaign(ctx, n, trials, seed),
            _ => Err(Error::parse("lemma-check needs --n or --weights with --x")),
        },
        Command::FigureData { which } => cmd_figure_data(ctx, &which),
    }
}

fn parse_list<T>(s: &str, what: &str, item: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    if s.trim().is_empty() {
        return Err(Error::parse(format!("{what} list is empty")));
    }
    s.split(',').map(|p| item(p.trim())).collect()
}

fn parse_count(s: &str) -> Result<u32> {
    s.parse().map_err(|_| Error::parse(format!("{s:?} is not a nonnegative integer")))
}

fn csv_text(write: impl FnOnce(&mut Vec<u8>) -> std::io::Result<()>) -> Output {
    let mut buf = Vec::new();
    write(&mut buf).expect("writing to memory");
    Output::Text(String::from_utf8(buf).expect("CSV is UTF-8"))
}

fn scope_json(scope: &Scope) -> Value {
    match scope.n {
        Some(n) => json!(n),
        None => json!("universal"),
    }
}

fn envelope_json(ctx: &Ctx, r: &EnvelopeResult) -> Value {
    json!({
        "t": ctx.threshold(&r.t),
        "value": ctx.dyadic(&r.value),
        "argmax_k": r.argmax_k,
        "k_star": r.k_star(),
        "k_searched": r.k_searched,
        "certificate": r.certificate.as_str(),
        "warning": r.warning(),
    })
}

fn cmd_envelope(ctx: &mut Ctx, t: &str, scope: &Scope) -> Result<Output> {
    let t = parse_threshold(t)?;
    let r = match scope.n {
        Some(n) => envelope_mid_tail(n, &t)?,
        None => universal_envelope(&t, &ctx.policy)?,
    };
    ctx.warnings.extend(r.warning());
    if ctx.csv_requested() {
        let text = format!(
            "t,value,value_decimal,argmax_k,k_searched,certificate\n{},{},{},{},{},{}\n",
            r.t,
            r.value,
            r.value.to_decimal(ctx.digits),
            r.argmax_k.iter().map(u32::to_string).collect::<Vec<_>>().join(";"),
            r.k_searched,
            r.certificate.as_str(),
        );
        return Ok(Output::Text(text));
    }
    Ok(Output::Json {
        command: "envelope",
        inputs: json!({ "t": t.to_string(), "n": scope_json(scope), "k_cap": ctx.policy.k_cap }),
        results: envelope_json(ctx, &r),
    })
}

fn quantile_json(ctx: &Ctx, q: &QuantileResult) -> Value {
    json!({
        "alpha": q.alpha.to_string(),
        "t_star": ctx.threshold(&q.t_star),
        "value_at": ctx.dyadic(&q.value_at),
        "left_limit": ctx.dyadic(&q.left_limit),
        "witness_k_left": q.witness_k_left,
        "k_searched": q.k_searched,
        "certificate": q.certificate.as_str(),
        "warning": q.warning(),
    })
}

fn cmd_quantile(ctx: &mut Ctx, alpha: &str, scope: &Scope) -> Result<Output> {
    let alpha = parse_ratio(alpha)?;
    let q = match scope.n {
        Some(n) => quantile_finite(n, &alpha)?,
        None => quantile_universal(&alpha, &ctx.policy)?,
    };
    ctx.warnings.extend(q.warning());
    if ctx.csv_requested() {
        let text = format!(
            "alpha,t_star,value_at,left_limit,witness_k_left,k_searched,certificate\n{},{},{},{},{},{},{}\n",
            q.alpha,
            q.t_star,
            q.value_at,
            q.left_limit,
            q.witness_k_left,
            q.k_searched,
            q.certificate.as_str(),
        );
        return Ok(Output::Text(text));
    }
    Ok(Output::Json {
        command: "quantile",
        inputs: json!({ "alpha": alpha.to_string(), "n": scope_json(scope), "k_cap": ctx.policy.k_cap }),
        results: quantile_json(ctx, &q),
    })
}

fn critical_json(ctx: &Ctx, table: &CriticalTable) -> Value {
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|r| {
            let q = r.quantile.as_ref();
            json!({
                "n": r.n,
                "alpha": r.alpha.to_string(),
                "s_crit": q.map_or(json!("not_attained"), |q| ctx.threshold(&q.t_star)),
                "t_crit": r.t_crit.map_or(json!("unattainable"), |t| json!(t)),
                "value_at": q.map(|q| ctx.dyadic(&q.value_at)),
                "left_limit": q.map(|q| ctx.dyadic(&q.left_limit)),
            })
        })
        .collect();
    json!({ "rows": rows })
}

fn cmd_table(ctx: &mut Ctx, ns: &str, alphas: &str) -> Result<Output> {
    let ns = parse_list(ns, "n", parse_count)?;
    let alphas: Vec<Ratio> = parse_list(alphas, "alpha", parse_ratio)?;
    let table = critical_table(&ns, &alphas)?;
    if ctx.tabular() {
        return Ok(csv_text(|buf| write_critical_csv(buf, &table)));
    }
    let inputs = json!({
        "ns": ns,
        "alphas": alphas.iter().map(Ratio::to_string).collect::<Vec<_>>(),
    });
    Ok(Output::Json { command: "table", inputs, results: critical_json(ctx, &table) })
}

fn comparison_json(ctx: &Ctx, rows: &[ComparisonRow]) -> Value {
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "t": ctx.threshold(&r.t),
                "k_star": r.k_star(),
                "exact": ctx.dyadic(r.exact()),
                "hoeffding": r.hoeffding,
                "ratio": r.ratio,
                "gaussian": r.gaussian_tail,
                "certificate": r.envelope.certificate.as_str(),
            })
        })
        .collect();
    json!({ "rows": rows })
}

fn cmd_compare(ctx: &mut Ctx, grid: Option<&str>) -> Result<Output> {
    let ts = match grid {
        Some(g) => parse_list(g, "t-grid", parse_threshold)?,
        None => default_grid(),
    };
    let rows = comparison_table(&ts, &ctx.policy)?;
    ctx.warnings.extend(rows.iter().filter_map(|r| r.envelope.warning().map(|w| format!("t = {}: {w}", r.t))));
    if ctx.tabular() {
        return Ok(csv_text(|buf| write_comparison_csv(buf, &rows)));
    }
    let inputs = json!({
        "t_grid": ts.iter().map(Threshold::to_string).collect::<Vec<_>>(),
        "k_cap": ctx.policy.k_cap,
    });
    Ok(Output::Json { command: "compare", inputs, results: comparison_json(ctx, &rows) })
}

fn json_only(ctx: &Ctx, command: &str) -> Result<()> {
    if ctx.csv_requested() {
        return Err(Error::parse(format!("{command} has no csv output")));
    }
    Ok(())
}

fn cmd_oracle(ctx: &mut Ctx, weights: &str, t: Option<&str>, alpha: Option<&str>) -> Result<Output> {
    json_only(ctx, "oracle")?;
    let w = WeightVector::parse(weights)?;
    // parse everything before the exponential work
    let t = t.map(parse_threshold).transpose()?;
    let alpha = alpha.map(parse_ratio).transpose()?;
    let dist = enumerate_dist(&w)?;
    let mut inputs = json!({ "weights": w.weights().iter().map(Ratio::to_string).collect::<Vec<_>>() });
    let mut results = json!({ "n": w.len(), "norm_sq": w.norm_sq().to_string(), "atoms": dist.atoms().len() });
    if let Some(t) = t {
        inputs["t"] = json!(t.to_string());
        results["mid_tail"] = ctx.dyadic(&dist.normalized_mid_tail(&t));
    }
    if let Some(alpha) = alpha {
        inputs["alpha"] = json!(alpha.to_string());
        results["quantile"] = ctx.threshold(&dist.normalized_mid_quantile(&alpha)?);
    }
    Ok(Output::Json { command: "oracle", inputs, results })
}

/// Pair indices are one-based on the command line.
fn pair_probe_json(p: &PairProbe) -> Value {
    json!({
        "i": p.i + 1,
        "j": p.j + 1,
        "direction": p.direction.as_str(),
        "slopes": p.slopes.iter().map(Ratio::to_string).collect::<Vec<_>>(),
        "n_pos": p.n_pos,
        "n_neg": p.n_neg,
        "n_zero": p.n_zero,
        "upper_median_slope": p.upper_median_slope.to_string(),
        "verdict": p.verdict,
    })
}

fn cmd_lemma_single(ctx: &mut Ctx, weights: &str, x: &str) -> Result<Output> {
    json_only(ctx, "lemma-check")?;
    let w = WeightVector::parse(weights)?;
    // `--x` is a raw atom of S(w); failing that, a level of S(w)/‖w‖ when
    // ‖w‖ is rational. Raw wins when both readings are atoms.
    let x_in = parse_ratio(x)?;
    let inputs = json!({
        "weights": w.weights().iter().map(Ratio::to_string).collect::<Vec<_>>(),
        "x": x_in.to_string(),
    });
    if w.is_equalised() {
        let results = json!({ "outcome": "not_applicable", "verdict": Value::Null });
        return Ok(Output::Json { command: "lemma-check", inputs, results });
    }
    let (x, scale) = match crate::oracle::fiber(&w, &x_in) {
        Ok(_) => (x_in, "raw"),
        Err(Error::NotAnAtom(msg)) => {
            let rescaled = Threshold::sqrt(&w.norm_sq())?.as_ratio().map(|norm| &x_in * &norm);
            match rescaled {
                Some(x) if crate::oracle::fiber(&w, &x).is_ok() => (x, "normalized"),
                _ => return Err(Error::NotAnAtom(msg)),
            }
        }
        Err(e) => return Err(e),
    };
    let results = match equalisation_probe(&w, &x)? {
        ProbeOutcome::NotApplicable => json!({ "outcome": "not_applicable", "verdict": Value::Null }),
        ProbeOutcome::Probed(p) => {
            let fiber = crate::oracle::fiber(&w, &x)?;
            let pairs: Vec<Value> = p
                .pairs
                .iter()
                .map(|s| {
                    json!({
                        "i": s.i + 1,
                        "j": s.j + 1,
                        "reference_verdict": s.reference_verdict,
                        "opposite_verdict": s.opposite_verdict,
                        "bias_holds": s.bias_holds,
                    })
                })
                .collect();
            json!({
                "outcome": "probed",
                "scale": scale,
                "atom": x.to_string(),
                "fiber": fiber.configs.iter().map(|e| format_signs(e)).collect::<Vec<_>>(),
                "chosen": pair_probe_json(&p.chosen),
                "pairs": pairs,
                "either_direction_holds": p.either_direction_holds(),
                "verdict": p.verdict(),
            })
        }
    };
    Ok(Output::Json { command: "lemma-check", inputs, results })
}

fn campaign_json(r: &CampaignReport) -> Value {
    let dump = |v: &[crate::oracle::ProbeInstance]| -> Vec<Value> {
        v.iter()
            .map(|i| json!({ "weights": i.weights, "x": i.x.to_string() }))
            .collect()
    };
    json!({
        "trials": r.trials,
        "failures": r.verdict_failures.len(),
        "failed_instances": dump(&r.verdict_failures),
        "either_direction_failures": r.either_direction_failures.len(),
        "either_direction_instances": dump(&r.either_direction_failures),
        "bias_failures": r.bias_failures.len(),
    })
}

fn cmd_lemma_campaign(ctx: &mut Ctx, n: usize, trials: usize, seed: u64) -> Result<Output> {
    json_only(ctx, "lemma-check")?;
    let report = probe_campaign(n, n, trials, seed)?;
    for i in &report.verdict_failures {
        ctx.warnings.push(format!("no pair raises the upper median in the reference direction: {i}"));
    }
    Ok(Output::Json {
        command: "lemma-check",
        inputs: json!({ "n": n, "trials": trials, "seed": seed }),
        results: campaign_json(&report),
    })
}

fn cmd_figure_data(ctx: &mut Ctx, which: &str) -> Result<Output> {
    let which: Figure = which.parse()?;
    let points = figure_data(which, &ctx.policy)?;
    if ctx.tabular() {
        return Ok(csv_text(|buf| write_figure_csv(buf, which, &points)));
    }
    let pts: Vec<Value> = points
        .iter()
        .map(|p| json!({ "t": ctx.threshold(&p.t), "y": p.y_display(which) }))
        .collect();
    Ok(Output::Json { command: "figure-data", inputs: json!({ "which": which.as_str() }), results: json!({ "points": pts }) })
}
