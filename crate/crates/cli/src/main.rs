use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pcgroup::census::{census, CensusParams, CensusRow, Convention, DensityMode};
use pcgroup::frei::{check_theorem_main, magnus_verdict};
use pcgroup::hnn::{hnn_factorize, is_cyclically_t_thick, is_t_root, is_t_thick, sigma};
use pcgroup::words::{conjugate_test, equal, format_word, minimal_form, parse_word, support};
use pcgroup::{CommutationGraph, Word};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "pcgroup", version, about = "Partially commutative groups: normal forms, HNN factorization, embedding verdicts and normal-form census")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical geodesic form of a word
    Normalize(WordArgs),
    /// Test whether two words are equal in the group
    Equal(PairArgs),
    /// Test whether two words are conjugate
    Conjugate(PairArgs),
    /// Print the support of a word
    Support(WordArgs),
    /// Factorize a word relative to the generator `t`
    Hnn(TArgs),
    /// Print the symbol word and the thickness and root flags relative to `t`
    Sigma(TArgs),
    /// Embedding verdicts for the quotient by the `n`-th power of a word
    Check(CheckArgs),
    /// Normal-form counts and composed-word tallies over the chorded cycle
    Census(CensusArgs),
    /// Density of words satisfying all four hypotheses over the chorded cycle
    Density(CensusArgs),
}

#[derive(Args)]
struct Common {
    /// Emit JSON
    #[arg(long)]
    json: bool,
    /// Write output to a file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WordArgs {
    /// Graph file: a `vertices ...` line followed by `edge u v` lines
    #[arg(long)]
    graph: PathBuf,
    /// Word as whitespace-separated `name` or `name^k` tokens
    #[arg(long)]
    word: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    word: String,
    #[arg(long)]
    word2: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct TArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    word: String,
    /// Name of the stable letter
    #[arg(long)]
    t: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    word: String,
    /// Restrict the thick-root criterion to this generator
    #[arg(long)]
    t: Option<String>,
    /// Exponent of the relator
    #[arg(long)]
    n: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Sample,
}

#[derive(Args)]
struct CensusArgs {
    /// Size of the chorded cycle
    #[arg(long)]
    n: usize,
    /// Chunk length budget
    #[arg(long)]
    d: usize,
    /// t-length budget
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: Mode,
    /// Sample size in sample mode
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    /// Seed for sample mode
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    common: Common,
}

fn load(path: &PathBuf) -> Result<CommutationGraph, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    CommutationGraph::parse(&text).map_err(|e| e.to_string())
}

fn word(g: &CommutationGraph, text: &str) -> Result<Word, String> {
    parse_word(text, g).map_err(|e| e.to_string())
}

fn vertex(g: &CommutationGraph, name: &str) -> Result<usize, String> {
    g.vertex(name).map_err(|e| e.to_string())
}

/// Rendered output: JSON value or plain text.
enum Output {
    Json(Value),
    Text(String),
}

fn pick(common: &Common, j: impl FnOnce() -> Value, t: impl FnOnce() -> String) -> Output {
    if common.json {
        Output::Json(j())
    } else {
        Output::Text(t())
    }
}

fn census_output(args: &CensusArgs, density: bool) -> Result<Output, String> {
    let params = CensusParams::new(args.n, args.d, args.k).map_err(|e| e.to_string())?;
    let mode = match args.mode {
        Mode::Exhaustive => DensityMode::Exhaustive,
        Mode::Sample => DensityMode::Sample { samples: args.samples, seed: args.seed },
    };
    let row = census(params, mode, Convention::AllowTrivial).map_err(|e| e.to_string())?;
    if args.common.json {
        let value = if density { density_json(&row) } else { serde_json::to_value(&row).unwrap() };
        return Ok(Output::Json(value));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    if density {
        w.write_record(["n", "d", "k", "l_dk", "z1", "z2", "z3", "z4", "zY", "rho_hat", "rho_stderr", "mode", "seed"])
            .map_err(|e| e.to_string())?;
        let c = |k: &str| row.value(k).map_or(String::new(), |v| v.to_string());
        w.write_record([
            row.n.to_string(),
            row.d.to_string(),
            row.k.to_string(),
            c("l_dk"),
            c("z1"),
            c("z2"),
            c("z3"),
            c("z4"),
            c("zY"),
            format!("{:.12}", row.rho_hat),
            row.rho_stderr.map_or(String::new(), |s| format!("{s:.12}")),
            row.mode.to_string(),
            row.seed.map_or(String::new(), |s| s.to_string()),
        ])
        .map_err(|e| e.to_string())?;
    } else {
        w.write_record(CensusRow::CSV_HEADER).map_err(|e| e.to_string())?;
        w.write_record(row.csv_record()).map_err(|e| e.to_string())?;
    }
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    Ok(Output::Text(String::from_utf8(bytes).unwrap().trim_end().to_string()))
}

fn density_json(row: &CensusRow) -> Value {
    let c = |k: &str| row.counts.get(k).map(|t| serde_json::to_value(t).unwrap());
    json!({
        "n": row.n,
        "d": row.d,
        "k": row.k,
        "mode": row.mode,
        "seed": row.seed,
        "samples": row.samples,
        "convention": row.convention,
        "l_dk": c("l_dk"),
        "z1": c("z1"),
        "z2": c("z2"),
        "z3": c("z3"),
        "z4": c("z4"),
        "zY": c("zY"),
        "rho_hat": row.rho_hat,
        "rho_stderr": row.rho_stderr,
    })
}

fn run(cmd: &Command) -> Result<(Output, Option<PathBuf>), String> {
    let out = match cmd {
        Command::Normalize(a) => {
            let g = load(&a.graph)?;
            let nf = minimal_form(&g, &word(&g, &a.word)?);
            let text = format_word(&g, nf.word());
            (pick(&a.common, || json!({ "word": text, "length": nf.len() }), || text.clone()), &a.common)
        }
        Command::Equal(a) | Command::Conjugate(a) => {
            let g = load(&a.graph)?;
            let (w1, w2) = (word(&g, &a.word)?, word(&g, &a.word2)?);
            let (key, result) = match cmd {
                Command::Equal(_) => ("equal", equal(&g, &w1, &w2)),
                _ => ("conjugate", conjugate_test(&g, &w1, &w2)),
            };
            (pick(&a.common, || json!({ key: result }), || result.to_string()), &a.common)
        }
        Command::Support(a) => {
            let g = load(&a.graph)?;
            let names = g.set_names(support(&g, &word(&g, &a.word)?));
            (pick(&a.common, || json!({ "support": names }), || names.join(" ")), &a.common)
        }
        Command::Hnn(a) => {
            let g = load(&a.graph)?;
            let t = vertex(&g, &a.t)?;
            let h = hnn_factorize(&g, t, &word(&g, &a.word)?).map_err(|e| e.to_string())?;
            let chunks: Vec<String> = h.chunks.iter().map(|c| format_word(&g, c.word())).collect();
            (
                pick(
                    &a.common,
                    || json!({ "t": a.t, "chunks": chunks, "signs": h.signs, "t_length": h.t_length() }),
                    || format!("{}\nt-length {}", h.display(&g), h.t_length()),
                ),
                &a.common,
            )
        }
        Command::Sigma(a) => {
            let g = load(&a.graph)?;
            let t = vertex(&g, &a.t)?;
            let h = hnn_factorize(&g, t, &word(&g, &a.word)?).map_err(|e| e.to_string())?;
            let s = sigma(&g, &h).map_err(|e| e.to_string())?.format(&g);
            let thick = is_t_thick(&g, &h).ok();
            let cyc = is_cyclically_t_thick(&g, &h).ok();
            let root = is_t_root(&g, &h).map_err(|e| e.to_string())?;
            let flag = |x: Option<bool>| x.map_or("n/a".to_string(), |b| b.to_string());
            (
                pick(
                    &a.common,
                    || json!({ "sigma": s, "t_thick": thick, "cyclically_t_thick": cyc, "t_root": root }),
                    || {
                        format!(
                            "sigma {s}\nt-thick {}\ncyclically t-thick {}\nt-root {root}",
                            flag(thick),
                            flag(cyc)
                        )
                    },
                ),
                &a.common,
            )
        }
        Command::Check(a) => {
            let g = load(&a.graph)?;
            let s = word(&g, &a.word)?;
            let mut report = magnus_verdict(&g, &s, a.n).map_err(|e| e.to_string())?;
            if let Some(name) = &a.t {
                let t = vertex(&g, name)?;
                let only = check_theorem_main(&g, &s, t).map_err(|e| e.to_string())?;
                report.per_t = vec![only];
            }
            let value = serde_json::to_value(&report).unwrap();
            (
                pick(&a.common, || value.clone(), || serde_json::to_string_pretty(&value).unwrap()),
                &a.common,
            )
        }
        Command::Census(a) => (census_output(a, false)?, &a.common),
        Command::Density(a) => (census_output(a, true)?, &a.common),
    };
    Ok((out.0, out.1.out.clone()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok((output, path)) => {
            let text = match output {
                Output::Json(v) => serde_json::to_string_pretty(&v).unwrap(),
                Output::Text(t) => t,
            };
            let written = match path {
                Some(p) => fs::write(&p, format!("{text}\n")).map_err(|e| format!("{}: {e}", p.display())),
                None => writeln!(io::stdout(), "{text}").map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
