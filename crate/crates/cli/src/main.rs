use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use insrobust::bench::{loglog_slope, parse_sizes, run_bench, BenchConfig};
use insrobust::counting::{primitive_counts, DEFAULT_BUDGET};
use insrobust::{
    census, classify_fast, classify_oracle, count_report, find_maximal_repetitions, Alphabet,
    CensusOptions, Classifier, CountReport, Verdict,
};
use insrobust_cli::{
    parse_word, resolve_alphabet, split_lines, threads_from_env, CliError, OutputRecord,
    SymbolMode,
};
use rayon::prelude::*;
use serde_json::json;

#[derive(Parser)]
#[command(name = "insrobust", version, about = "Primitive and ins-robust primitive words")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Jsonl,
    Csv,
}

#[derive(clap::Args)]
struct SymbolArgs {
    /// Alphabet symbols in order, e.g. `ab`. Inferred from the input when absent.
    #[arg(long)]
    alphabet: Option<String>,
    /// Treat each Unicode scalar value as a symbol instead of each byte.
    #[arg(long)]
    unicode: bool,
}

impl SymbolArgs {
    fn mode(&self) -> SymbolMode {
        if self.unicode {
            SymbolMode::Unicode
        } else {
            SymbolMode::Bytes
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify words as non-primitive, ins-robust or non-ins-robust.
    Classify {
        /// Words to classify. Read from stdin, one per line, when absent.
        words: Vec<String>,
        /// Read words from a file, one per line.
        #[arg(long)]
        file: Option<PathBuf>,
        #[command(flatten)]
        symbols: SymbolArgs,
        /// List every failing insertion (brute-force classifier).
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// List the maximal repetitions of a word.
    Runs {
        word: String,
        #[arg(long)]
        unicode: bool,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Classify every word of length N over K letters.
    Census {
        n: usize,
        k: usize,
        /// Alphabet to use instead of the first K letters from `a`.
        #[arg(long)]
        alphabet: Option<String>,
        /// List the words in each class.
        #[arg(long)]
        list: bool,
        /// Re-check every word with the brute-force classifier.
        #[arg(long)]
        oracle: bool,
        /// Maximum number of words to classify.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Exact counts of primitive words and the ins-robust lower bound.
    Count {
        n: u64,
        k: u64,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Time the classifiers on seeded random binary words.
    Bench {
        /// Sizes: `1024`, `1024,4096` or a doubling range `4096..1048576`.
        #[arg(long, default_value = "4096..1048576")]
        sizes: String,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Largest size at which the brute-force classifier is also timed.
        #[arg(long, default_value_t = 10_000)]
        oracle_cutoff: usize,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out).and_then(|()| out.flush().map_err(CliError::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> Result<(), CliError> {
    match command {
        Command::Classify {
            words,
            file,
            symbols,
            oracle,
            format,
        } => classify(words, file, &symbols, oracle, format, out),
        Command::Runs {
            word,
            unicode,
            format,
        } => runs(&word, unicode, format, out),
        Command::Census {
            n,
            k,
            alphabet,
            list,
            oracle,
            budget,
            format,
        } => run_census(n, k, alphabet.as_deref(), list, oracle, budget, format, out),
        Command::Count { n, k, format } => count(n, k, format, out),
        Command::Bench {
            sizes,
            trials,
            seed,
            oracle_cutoff,
            format,
        } => bench(&sizes, trials, seed, oracle_cutoff, format, out),
    }
}

fn read_words(words: Vec<String>, file: Option<PathBuf>) -> Result<Vec<String>, CliError> {
    let text = match (words.is_empty(), file) {
        (false, _) => return Ok(words),
        (true, Some(path)) => std::fs::read_to_string(&path)
            .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?,
        (true, None) => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    let (words, blank) = split_lines(&text);
    if blank > 0 {
        eprintln!("warning: skipped {blank} blank line(s)");
    }
    Ok(words)
}

fn with_workers<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    match threads_from_env() {
        Some(t) if t > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .expect("thread pool")
            .install(f),
        _ => f(),
    }
}

fn classify(
    words: Vec<String>,
    file: Option<PathBuf>,
    symbols: &SymbolArgs,
    oracle: bool,
    format: Format,
    out: &mut impl Write,
) -> Result<(), CliError> {
    let words = read_words(words, file)?;
    if words.iter().any(|w| w.is_empty()) {
        return Err(CliError::usage("words must be non-empty"));
    }
    let mode = symbols.mode();
    let alphabet = resolve_alphabet(symbols.alphabet.as_deref(), &words, mode)?;
    let parsed = words
        .iter()
        .map(|w| parse_word(&alphabet, w, mode))
        .collect::<Result<Vec<_>, _>>()?;
    let classifier = if oracle { classify_oracle } else { classify_fast };
    let classify_one = |w: &insrobust::Word| classifier(w).map(|c| OutputRecord::new(w, &c));
    let records = if threads_from_env() == Some(0) {
        parsed.iter().map(classify_one).collect::<Result<Vec<_>, _>>()?
    } else {
        with_workers(|| parsed.par_iter().map(classify_one).collect::<Result<Vec<_>, _>>())?
    };
    for record in &records {
        match format {
            Format::Jsonl => writeln!(out, "{}", record.to_json_line())?,
            Format::Human => writeln!(out, "{}", human_record(record))?,
            Format::Csv => {
                return Err(CliError::usage("classify supports --format human or jsonl"));
            }
        }
    }
    Ok(())
}

fn human_record(r: &OutputRecord) -> String {
    let mut line = format!("{}\t{}", r.word, r.verdict);
    if let (Some(root), Some(e)) = (&r.root, r.exponent) {
        line.push_str(&format!("\t({root})^{e}"));
    }
    if let Some(witnesses) = &r.witnesses {
        let parts: Vec<String> = witnesses
            .iter()
            .map(|w| format!("insert '{}' at {} -> ({})^{}", w.letter, w.position, w.root, w.power))
            .collect();
        line.push('\t');
        line.push_str(&parts.join("; "));
    }
    line
}

fn runs(word: &str, unicode: bool, format: Format, out: &mut impl Write) -> Result<(), CliError> {
    let mode = if unicode {
        SymbolMode::Unicode
    } else {
        SymbolMode::Bytes
    };
    let symbols: std::collections::BTreeSet<char> = mode.symbols(word).into_iter().collect();
    let alphabet = Alphabet::new(symbols.into_iter().collect()).unwrap_or_else(|_| Alphabet::binary());
    let w = parse_word(&alphabet, word, mode)?;
    let runs = find_maximal_repetitions(&w);
    match format {
        Format::Human => {
            writeln!(out, "{:>8} {:>8} {:>8} {:>10}", "start", "length", "period", "exponent")?;
            for r in &runs {
                writeln!(
                    out,
                    "{:>8} {:>8} {:>8} {:>10}",
                    r.start,
                    r.length,
                    r.period,
                    fmt_exponent(r.exponent_f64())
                )?;
            }
        }
        Format::Jsonl => {
            for r in &runs {
                let line = json!({
                    "start": r.start,
                    "length": r.length,
                    "period": r.period,
                    "exponent": r.exponent_f64(),
                });
                writeln!(out, "{line}")?;
            }
        }
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(out);
            csv.write_record(["start", "length", "period", "exponent"]).map_err(csv_err)?;
            for r in &runs {
                csv.write_record([
                    r.start.to_string(),
                    r.length.to_string(),
                    r.period.to_string(),
                    fmt_exponent(r.exponent_f64()),
                ])
                .map_err(csv_err)?;
            }
            csv.flush()?;
        }
    }
    Ok(())
}

fn fmt_exponent(e: f64) -> String {
    let s = format!("{e:.4}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::usage(e.to_string())
}

#[allow(clippy::too_many_arguments)]
fn run_census(
    n: usize,
    k: usize,
    alphabet: Option<&str>,
    list: bool,
    oracle: bool,
    budget: u128,
    format: Format,
    out: &mut impl Write,
) -> Result<(), CliError> {
    let alphabet = match alphabet {
        Some(s) => {
            let v = resolve_alphabet(Some(s), &[], SymbolMode::Unicode)?;
            if v.size() != k {
                return Err(CliError::usage(format!(
                    "--alphabet has {} symbols but K is {k}",
                    v.size()
                )));
            }
            v
        }
        None => {
            if !(2..=insrobust::word::MAX_ALPHABET).contains(&k) {
                return Err(CliError::usage(format!("K must be between 2 and 256, got {k}")));
            }
            let symbols: Vec<char> = ('a'..).filter(|c| !c.is_whitespace() && !c.is_control()).take(k).collect();
            Alphabet::new(symbols)?
        }
    };
    let options = CensusOptions {
        list_words: list,
        budget,
        classifier: Classifier::Fast,
        audit: oracle,
        threads: threads_from_env(),
    };
    let report = census(n, &alphabet, &options)?;
    let classes = [Verdict::NonPrimitive, Verdict::InsRobust, Verdict::NonInsRobust];
    let listed = |v: Verdict| -> Vec<String> {
        report
            .words
            .as_ref()
            .map(|l| l.get(v).iter().map(|w| w.to_string()).collect())
            .unwrap_or_default()
    };
    match format {
        Format::Human => {
            writeln!(out, "n = {n}, k = {k}, alphabet = {alphabet}")?;
            for v in classes {
                writeln!(out, "{:<16}{}", v.as_str(), report.counts.get(v))?;
            }
            if list {
                for v in classes {
                    writeln!(out, "\n[{}]", v.as_str())?;
                    for w in listed(v) {
                        writeln!(out, "{w}")?;
                    }
                }
            }
        }
        Format::Jsonl => {
            let mut value = json!({
                "n": n,
                "k": k,
                "alphabet": alphabet.to_string(),
                "counts": {
                    "non-primitive": report.counts.non_primitive,
                    "ins-robust": report.counts.ins_robust,
                    "non-ins-robust": report.counts.non_ins_robust,
                },
            });
            if list {
                value["words"] = json!({
                    "non-primitive": listed(Verdict::NonPrimitive),
                    "ins-robust": listed(Verdict::InsRobust),
                    "non-ins-robust": listed(Verdict::NonInsRobust),
                });
            }
            writeln!(out, "{value}")?;
        }
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(out);
            let mut header = vec!["n", "k", "verdict", "count"];
            if list {
                header.push("words");
            }
            csv.write_record(&header).map_err(csv_err)?;
            for v in classes {
                let mut row = vec![
                    n.to_string(),
                    k.to_string(),
                    v.as_str().to_string(),
                    report.counts.get(v).to_string(),
                ];
                if list {
                    row.push(listed(v).join(" "));
                }
                csv.write_record(&row).map_err(csv_err)?;
            }
            csv.flush()?;
        }
    }
    Ok(())
}

fn count(n: u64, k: u64, format: Format, out: &mut impl Write) -> Result<(), CliError> {
    let report: CountReport = if n >= 2 {
        count_report(n, k)?
    } else {
        primitive_counts(n, k)?
    };
    let mut rows = vec![
        ("n", report.n.to_string()),
        ("k", report.k.to_string()),
        ("total", report.total.to_string()),
        ("primitive", report.primitive.to_string()),
        ("nonprimitive", report.nonprimitive.to_string()),
    ];
    if let (Some(upper), Some(lower)) = (&report.qibar_upper, &report.qi_lower) {
        rows.push(("qibar_upper", upper.to_string()));
        rows.push(("qi_lower", lower.to_string()));
    }
    match format {
        Format::Human => {
            for (name, value) in &rows {
                let flag = if *name == "qi_lower" && report.is_vacuous() {
                    " (vacuous)"
                } else {
                    ""
                };
                writeln!(out, "{name:<14}{value}{flag}")?;
            }
            if report.qi_lower.is_none() {
                writeln!(out, "note: bound fields need n >= 2 and are omitted")?;
            }
        }
        Format::Jsonl => {
            let mut map = serde_json::Map::new();
            for (name, value) in rows {
                // Counts are strings so that big integers survive JSON parsers.
                map.insert(name.to_string(), json!(value));
            }
            map.insert("vacuous".into(), json!(report.is_vacuous()));
            writeln!(out, "{}", serde_json::Value::Object(map))?;
        }
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(out);
            csv.write_record(["field", "value"]).map_err(csv_err)?;
            for (name, value) in rows {
                csv.write_record([name, value.as_str()]).map_err(csv_err)?;
            }
            csv.flush()?;
        }
    }
    Ok(())
}

fn bench(
    sizes: &str,
    trials: usize,
    seed: u64,
    oracle_cutoff: usize,
    format: Format,
    out: &mut impl Write,
) -> Result<(), CliError> {
    let sizes = parse_sizes(sizes).ok_or_else(|| CliError::usage(format!("bad --sizes {sizes:?}")))?;
    let config = BenchConfig {
        sizes,
        trials,
        seed,
        oracle_cutoff,
    };
    let rows = run_bench(&Alphabet::binary(), &config)?;
    let opt = |t: Option<f64>| t.map(|s| format!("{s:.6}")).unwrap_or_else(|| "-".into());
    match format {
        Format::Human | Format::Jsonl => {
            if format == Format::Human {
                writeln!(
                    out,
                    "{:>10} {:>12} {:>12} {:>12} {:>12}",
                    "n", "fast_mean", "fast_median", "oracle_mean", "oracle_med"
                )?;
            }
            for r in &rows {
                if format == Format::Human {
                    writeln!(
                        out,
                        "{:>10} {:>12.6} {:>12.6} {:>12} {:>12}",
                        r.n,
                        r.fast.mean,
                        r.fast.median,
                        opt(r.oracle.map(|t| t.mean)),
                        opt(r.oracle.map(|t| t.median))
                    )?;
                } else {
                    let line = json!({
                        "n": r.n,
                        "fast_mean": r.fast.mean,
                        "fast_median": r.fast.median,
                        "oracle_mean": r.oracle.map(|t| t.mean),
                        "oracle_median": r.oracle.map(|t| t.median),
                    });
                    writeln!(out, "{line}")?;
                }
            }
        }
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(&mut *out);
            csv.write_record(["n", "fast_mean", "fast_median", "oracle_mean", "oracle_median"])
                .map_err(csv_err)?;
            for r in &rows {
                csv.write_record([
                    r.n.to_string(),
                    format!("{:.6}", r.fast.mean),
                    format!("{:.6}", r.fast.median),
                    opt(r.oracle.map(|t| t.mean)),
                    opt(r.oracle.map(|t| t.median)),
                ])
                .map_err(csv_err)?;
            }
            csv.flush()?;
        }
    }
    if rows.len() >= 2 {
        let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.n as f64, r.fast.median)).collect();
        let slope = loglog_slope(&points);
        if format == Format::Human {
            writeln!(out, "log-log slope (classify_fast): {slope:.3}")?;
        } else {
            eprintln!("log-log slope (classify_fast): {slope:.3}");
        }
    }
    Ok(())
}
