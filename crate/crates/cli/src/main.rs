//! `klrw`: command line access to the deformed KLRW toolkit.

mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use klrw_core::error::Error;
use klrw_core::exact::Polynomial;
use klrw_core::klrw::graded::graded_dimensions;
use klrw_core::klrw::relations::relation_suite;
use klrw_core::klrw::{CrossingSign, Problem, Word};
use klrw_core::ladder::ogz::{check_intertwiner, elementary_in_block, raising_pairs, CFactor};
use klrw_core::multisegment::{enumerate_flavored, FlavoredMultisegment};
use klrw_core::quiver::{act, classify_with_invariants, orbit_dimension, stabilizer_dimension, GroupElement, QuiverRep};
use klrw_core::weights::{chi_minus_power, chi_plus_power, enumerate_gt_patterns, word_of_gt_weight, GTWeight};

use output::{Format, Report};

#[derive(Parser)]
#[command(name = "klrw", version, about = "Exact computations for deformed KLRW algebras and their combinatorics")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

/// Problem parameters and I/O options shared by every subcommand.
#[derive(Args)]
struct Config {
    /// Number of black labels plus one (the red label is m).
    #[arg(long, global = true)]
    m: Option<u32>,
    /// Number of red strands or top-row length.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Black dimensions v_1..v_{m-1}, comma separated.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    v: Option<Vec<usize>>,
    /// Central character, comma separated and weakly increasing.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    chi: Option<Vec<i64>>,
    /// Bound on degrees or sizes for enumerations that grow exponentially.
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    degree_bound: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Seed for commands that sample at random.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// JSON input file.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// List the flavored multisegments of the problem (m, v, chi).
    Multisegments,
    /// The good word of one multisegment, or of every one when none is given.
    GoodWord {
        /// Text form such as "{(1),(2,1),(3,2)@0}".
        #[arg(long)]
        multisegment: Option<String>,
    },
    /// Classify a quiver representation read from --input.
    Classify {
        /// Random group elements to act with; each image must classify alike.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Check the local relations on every word up to the size bound.
    VerifyRelations {
        /// Largest m in the suite.
        #[arg(long, default_value_t = 3)]
        max_m: u32,
        /// Longest word; defaults to --degree-bound.
        #[arg(long)]
        max_strands: Option<usize>,
        /// Use the crossing sign as printed rather than the consistent one.
        #[arg(long, hide = true)]
        flip_sign: bool,
    },
    /// The word of a Gelfand-Tsetlin weight given by --rows or --input.
    GtWord {
        /// Rows as JSON, e.g. [[1],[1,3],[2,3,3]].
        #[arg(long)]
        rows: Option<String>,
    },
    /// Gelfand-Tsetlin patterns with top row chi.
    GtPatterns {
        #[arg(long)]
        count_only: bool,
    },
    /// Apply chi^{+i^a} or chi^{-i^a}.
    Translate {
        /// "+i" or "-i".
        #[arg(long, allow_hyphen_values = true)]
        op: String,
        /// Multiplicity a.
        #[arg(long, default_value_t = 1)]
        power: usize,
    },
    /// Compare the OGZ operator with the ladder action term by term.
    CheckIntertwiner {
        #[arg(long, allow_hyphen_values = true)]
        i: i64,
        /// Dots on the rung.
        #[arg(long, default_value_t = 0)]
        s: u32,
        /// "1" or "e<k>", symmetric in the entries equal to i.
        #[arg(long, default_value = "1")]
        p: String,
        /// The weight before raising, as JSON rows; otherwise sweep small weights.
        #[arg(long)]
        rows: Option<String>,
        /// Largest entry in the sweep (entries start at 0).
        #[arg(long, default_value_t = 2)]
        max_entry: i64,
        /// Drop the last factor of C, which should break the identity.
        #[arg(long, hide = true)]
        drop_c: bool,
    },
    /// Graded dimensions of e(target) T e(source) up to --degree-bound.
    GradedDims {
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Core(Error::Parse(_)) => "parse",
            Failure::Core(_) => "invalid_input",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Core(e) => e.to_string(),
        }
    }
}

type CmdResult = Result<Report, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

impl Config {
    fn problem(&self) -> Result<Problem, Failure> {
        let m = self.m.ok_or_else(|| usage("--m is required"))?;
        let chi = self.chi.clone().ok_or_else(|| usage("--chi is required"))?;
        if self.n.is_some_and(|n| n != chi.len()) {
            return Err(usage("--n disagrees with the length of --chi"));
        }
        let v = self.v.clone().unwrap_or_default();
        Ok(Problem::new(m, v, chi)?)
    }

    fn chi(&self) -> Result<Vec<i64>, Failure> {
        self.chi.clone().ok_or_else(|| usage("--chi is required"))
    }

    fn read_input(&self) -> Result<String, Failure> {
        let path = self.input.as_ref().ok_or_else(|| usage("--input is required"))?;
        std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.unwrap_or(0))
    }
}

fn csv_list<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn multisegments(cfg: &Config) -> CmdResult {
    let p = cfg.problem()?;
    let all = enumerate_flavored(&p);
    let rows: Vec<Vec<String>> = all
        .iter()
        .enumerate()
        .map(|(k, ms)| vec![k.to_string(), ms.to_string(), ms.good_word().to_string()])
        .collect();
    let listing: Vec<Value> = all
        .iter()
        .map(|ms| json!({"multisegment": ms.to_string(), "segments": ms.to_json(), "good_word": ms.good_word().to_string()}))
        .collect();
    let mut pretty = format!("{} multisegments\n", all.len());
    for r in &rows {
        pretty.push_str(&format!("{}  {}\n", r[1], r[2]));
    }
    Ok(Report::new(json!({"count": all.len(), "multisegments": listing}), pretty).with_table(&["index", "multisegment", "good_word"], rows))
}

fn good_word(cfg: &Config, text: Option<&str>) -> CmdResult {
    let all: Vec<FlavoredMultisegment> = match text {
        Some(t) => {
            let m = cfg.m.ok_or_else(|| usage("--m is required"))?;
            vec![FlavoredMultisegment::parse(t, m)?]
        }
        None => enumerate_flavored(&cfg.problem()?),
    };
    let rows: Vec<Vec<String>> = all.iter().map(|ms| vec![ms.to_string(), ms.good_word().to_string()]).collect();
    let listing: Vec<Value> = rows.iter().map(|r| json!({"multisegment": r[0], "good_word": r[1]})).collect();
    let pretty = rows.iter().map(|r| format!("{}\n", r[1])).collect();
    Ok(Report::new(json!(listing), pretty).with_table(&["multisegment", "good_word"], rows))
}

fn classify(cfg: &Config, samples: Option<usize>) -> CmdResult {
    let rep = QuiverRep::from_json(&cfg.read_input()?)?;
    let (ms, invariants) = classify_with_invariants(&rep);
    let orbit = orbit_dimension(&rep);
    let samples = samples.unwrap_or(if cfg.seed.is_some() { 5 } else { 0 });
    let mut rng = cfg.rng();
    let mut mismatches = Vec::new();
    for k in 0..samples {
        let g = GroupElement::random(rep.problem(), &mut rng);
        let image = act(&g, &rep)?;
        let (other, _) = classify_with_invariants(&image);
        if other != ms || orbit_dimension(&image) != orbit {
            mismatches.push(json!({"sample": k, "multisegment": other.to_string(), "representation": image.to_json()}));
        }
    }
    let json = json!({
        "multisegment": ms.to_string(),
        "segments": ms.to_json(),
        "good_word": ms.good_word().to_string(),
        "invariants": invariants,
        "orbit_dimension": orbit,
        "stabilizer_dimension": stabilizer_dimension(&rep),
        "samples": samples,
        "mismatches": mismatches,
    });
    let mut pretty = format!("multisegment: {ms}\norbit dimension: {orbit}\n");
    for (level, inv) in invariants.iter().enumerate() {
        pretty.push_str(&format!(
            "level {level}: segment ranks {:?}, kernel {}, flag preimages {:?}\n",
            inv.segment_ranks, inv.kernel_dim, inv.flag_preimages
        ));
    }
    if samples > 0 {
        pretty.push_str(&format!("{} of {samples} random translates disagree\n", mismatches.len()));
    }
    let failed = !mismatches.is_empty();
    Ok(Report::new(json, pretty)
        .with_table(&["multisegment", "orbit_dimension"], vec![vec![ms.to_string(), orbit.to_string()]])
        .failed_if(failed))
}

fn verify_relations(cfg: &Config, max_m: u32, max_strands: Option<usize>, flip: bool) -> CmdResult {
    let len = max_strands.unwrap_or(cfg.degree_bound as usize);
    let sign = if flip { CrossingSign::Displayed } else { CrossingSign::Consistent };
    let checks = relation_suite(max_m, len, sign);
    let failures: Vec<_> = checks.iter().filter(|c| !c.holds).collect();
    let rows: Vec<Vec<String>> = checks
        .iter()
        .map(|c| vec![c.relation.to_string(), c.word.clone(), csv_list(&c.positions), c.holds.to_string()])
        .collect();
    let json = json!({
        "checks": checks.len(),
        "failures": failures.iter().map(|c| json!({"relation": c.relation, "word": c.word, "positions": c.positions})).collect::<Vec<_>>(),
        "passed": failures.is_empty(),
    });
    let mut pretty = format!("{} checks, {} failures\n", checks.len(), failures.len());
    for c in failures.iter().take(20) {
        pretty.push_str(&format!("FAIL {} on {} at {:?}\n", c.relation, c.word, c.positions));
    }
    Ok(Report::new(json, pretty)
        .with_table(&["relation", "word", "positions", "holds"], rows)
        .failed_if(!failures.is_empty()))
}

fn parse_rows(text: &str) -> Result<GTWeight, Failure> {
    let rows: Vec<Vec<i64>> = serde_json::from_str(text).map_err(|e| Failure::Core(Error::Parse(e.to_string())))?;
    Ok(GTWeight::new(rows)?)
}

fn gt_word(cfg: &Config, rows: Option<&str>) -> CmdResult {
    let w = match rows {
        Some(r) => parse_rows(r)?,
        None => parse_rows(&cfg.read_input()?)?,
    };
    let word = word_of_gt_weight(&w).to_string();
    Ok(Report::new(json!({"rows": w.rows(), "word": word}), format!("{word}\n"))
        .with_table(&["rows", "word"], vec![vec![w.to_string(), word]]))
}

fn gt_patterns(cfg: &Config, count_only: bool) -> CmdResult {
    let chi = cfg.chi()?;
    let patterns = enumerate_gt_patterns(&chi)?;
    let count = patterns.len();
    if count_only {
        return Ok(Report::new(json!({"chi": chi, "count": count}), format!("{count}\n"))
            .with_table(&["chi", "count"], vec![vec![csv_list(&chi), count.to_string()]]));
    }
    let rows: Vec<Vec<String>> = patterns
        .iter()
        .map(|w| vec![w.to_string(), word_of_gt_weight(w).to_string()])
        .collect();
    let listing: Vec<Value> = patterns
        .iter()
        .zip(&rows)
        .map(|(w, r)| json!({"rows": w.rows(), "word": r[1]}))
        .collect();
    let mut pretty = format!("{count} patterns\n");
    for r in &rows {
        pretty.push_str(&format!("{}  {}\n", r[0], r[1]));
    }
    Ok(Report::new(json!({"chi": chi, "count": count, "patterns": listing}), pretty).with_table(&["rows", "word"], rows))
}

fn translate(cfg: &Config, op: &str, power: usize) -> CmdResult {
    let chi = cfg.chi()?;
    let (raise, i) = match op.as_bytes().first() {
        Some(b'+') => (true, &op[1..]),
        Some(b'-') => (false, &op[1..]),
        _ => return Err(usage(format!("--op must look like +i or -i, got {op:?}"))),
    };
    let i: i64 = i.parse().map_err(|_| usage(format!("--op must look like +i or -i, got {op:?}")))?;
    let out = if raise { chi_plus_power(&chi, i, power) } else { chi_minus_power(&chi, i, power) };
    let out = out.ok_or_else(|| Failure::Core(Error::Invalid(format!("{chi:?} has fewer than {power} entries equal to {}", if raise { i } else { i + 1 }))))?;
    let text = csv_list(&out);
    Ok(Report::new(json!({"chi": chi, "op": op, "power": power, "result": out}), format!("{text}\n"))
        .with_table(&["chi", "op", "result"], vec![vec![csv_list(&chi), op.to_string(), text]]))
}

fn symmetric_input(n: usize, top: &[i64], i: i64, p: &str) -> Result<Polynomial, Failure> {
    match p.trim() {
        "1" => Ok(elementary_in_block(n, top, i, 0)),
        t => {
            let k: usize = t
                .strip_prefix('e')
                .and_then(|k| k.parse().ok())
                .ok_or_else(|| usage(format!("--p must be 1 or e<k>, got {p:?}")))?;
            Ok(elementary_in_block(n, top, i, k))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn check_intertwiners(cfg: &Config, i: i64, s: u32, p: &str, rows: Option<&str>, max_entry: i64, drop_c: bool) -> CmdResult {
    let c = if drop_c { CFactor::DropLast } else { CFactor::Full };
    let pairs = match rows {
        Some(r) => {
            let lambda = parse_rows(r)?;
            let n = lambda.n();
            if cfg.n.is_some_and(|m| m != n) {
                return Err(usage("--n disagrees with the number of rows"));
            }
            let top = klrw_core::weights::chi_plus(lambda.row(n), i)
                .ok_or_else(|| Failure::Core(Error::Invalid(format!("the top row has no entry equal to {i}"))))?;
            let mut raised = lambda.rows().to_vec();
            raised[n - 1] = top;
            vec![(lambda, GTWeight::new(raised)?)]
        }
        None => {
            let n = cfg.n.ok_or_else(|| usage("--n or --rows is required"))?;
            if n == 0 || n > cfg.degree_bound as usize {
                return Err(usage("--n must lie between 1 and --degree-bound"));
            }
            raising_pairs(n, i, 0, max_entry)
        }
    };
    let mut reports = Vec::new();
    let mut table = Vec::new();
    let mut pretty = String::new();
    let mut failures = 0;
    for (lambda, lambda_prime) in &pairs {
        let n = lambda.n();
        let poly = symmetric_input(n, lambda_prime.row(n), i, p)?;
        let r = check_intertwiner(lambda, lambda_prime, i, &poly, s, c)?;
        if !r.holds {
            failures += 1;
            pretty.push_str(&format!("FAIL {lambda} -> {lambda_prime}\n"));
            for t in r.terms.iter().filter(|t| !t.holds) {
                pretty.push_str(&format!("  j={}: OGZ side {}\n        ladder side {} (C = {})\n", t.j, t.translated, t.ladder, t.c));
            }
        }
        table.push(vec![lambda.to_string(), lambda_prime.to_string(), r.holds.to_string(), r.sign.to_string()]);
        reports.push(json!({"lambda": lambda.rows(), "lambda_prime": lambda_prime.rows(), "report": r}));
    }
    pretty.push_str(&format!("{} cases, {failures} failures\n", pairs.len()));
    let json = json!({"i": i, "s": s, "p": p, "cases": reports, "passed": failures == 0});
    Ok(Report::new(json, pretty)
        .with_table(&["lambda", "lambda_prime", "holds", "sign"], table)
        .failed_if(failures > 0))
}

fn graded_dims(cfg: &Config, source: &str, target: &str) -> CmdResult {
    let p = cfg.problem()?;
    let source = Word::parse(source)?;
    let target = Word::parse(target)?;
    let dims = graded_dimensions(&p, &target, &source, cfg.degree_bound as i64)?;
    let rows: Vec<Vec<String>> = dims.iter().map(|(d, k)| vec![d.to_string(), k.to_string()]).collect();
    let pretty = dims.iter().map(|(d, k)| format!("degree {d}: {k}\n")).collect();
    let json = json!({"source": source.to_string(), "target": target.to_string(), "dimensions": dims.iter().map(|(d, k)| json!({"degree": d, "dimension": k})).collect::<Vec<_>>()});
    Ok(Report::new(json, pretty).with_table(&["degree", "dimension"], rows))
}

fn run(cli: &Cli) -> CmdResult {
    let cfg = &cli.config;
    match &cli.command {
        Command::Multisegments => multisegments(cfg),
        Command::GoodWord { multisegment } => good_word(cfg, multisegment.as_deref()),
        Command::Classify { samples } => classify(cfg, *samples),
        Command::VerifyRelations { max_m, max_strands, flip_sign } => verify_relations(cfg, *max_m, *max_strands, *flip_sign),
        Command::GtWord { rows } => gt_word(cfg, rows.as_deref()),
        Command::GtPatterns { count_only } => gt_patterns(cfg, *count_only),
        Command::Translate { op, power } => translate(cfg, op, *power),
        Command::CheckIntertwiner { i, s, p, rows, max_entry, drop_c } => check_intertwiners(cfg, *i, *s, p, rows.as_deref(), *max_entry, *drop_c),
        Command::GradedDims { source, target } => graded_dims(cfg, source, target),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.config.format;
    let outcome = run(&cli).and_then(|report| report.render(format).map(|text| (text, report.ok)).map_err(Failure::Usage));
    match outcome {
        Ok((text, ok)) => {
            // A closed pipe downstream is not an error worth a panic.
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(text.as_bytes());
            if !text.ends_with('\n') {
                let _ = out.write_all(b"\n");
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            if format == Format::Json {
                eprintln!("{}", json!({"error": {"kind": f.kind(), "message": f.message()}}));
            } else {
                eprintln!("error: {}", f.message());
            }
            ExitCode::from(2)
        }
    }
}
