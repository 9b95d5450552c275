//! Command-line front end. Payloads go to stdout as one JSON line per
//! record (CSV for curves and spectra); diagnostics go to stderr.

mod args;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use args::{CodeArgs, ConcatArgs};
use polar_mwd::analysis::{aub_curve, bound_csv, db_grid};
use polar_mwd::io::{codewords_to_hex, CodeSpecDoc, ConcatSpecDoc, ResultRecord, RunManifest};
use polar_mwd::oracle::{brute_force_concat, brute_force_spectrum};
use polar_mwd::{
    crc_optimize, min_weight_lower_bound, pc_scem, scem, scl_avn, screm_with, union_bound,
    BoundPoint, CodeSpec, Mode, MwdResult, ResultFlag, ScremOptions,
};

#[derive(Parser)]
#[command(
    name = "polar-mwd",
    version,
    about = "Minimum weight distributions of polar codes"
)]
struct Cli {
    /// Worker threads for parallel searches (0 = one per core).
    #[arg(long, global = true, env = "POLAR_MWD_THREADS", default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code and print its description.
    Construct {
        #[command(flatten)]
        code: CodeArgs,
        /// Same as --construction.
        #[arg(long = "method", value_enum, conflicts_with = "method")]
        construct_method: Option<args::Method>,
        /// Print only the information set, ascending.
        #[arg(long)]
        list_info_set: bool,
        /// Also write the bare description to this file.
        #[arg(long)]
        out: Option<String>,
    },
    /// Minimum weight distribution of a polar code.
    Mwd {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long = "method", value_enum, default_value = "auto")]
        enum_method: EnumMethod,
        #[arg(long, value_enum, default_value = "count")]
        mode: ModeArg,
        /// Sphere radius for scem; defaults to the minimum row weight.
        #[arg(long)]
        radius: Option<u32>,
        /// Largest codeword set the recursion may hold.
        #[arg(long, default_value_t = polar_mwd::enumeration::DEFAULT_SET_CAP)]
        set_cap: usize,
        /// Write the minimum-weight codewords as hex rows (implies collect).
        #[arg(long)]
        dump_codewords: Option<String>,
    },
    /// Minimum weight distribution of a CRC-polar concatenated code.
    Concat {
        #[command(flatten)]
        code: ConcatArgs,
        #[arg(long, value_enum, default_value = "count")]
        mode: ModeArg,
        #[arg(long)]
        dump_codewords: Option<String>,
    },
    /// Rank every CRC polynomial of a given degree.
    CrcSearch {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        ki: usize,
        #[arg(long)]
        kp: u32,
        #[arg(
            long = "construction",
            visible_alias = "method",
            value_enum,
            default_value = "pw"
        )]
        method: args::Method,
        #[arg(long)]
        design_snr_db: Option<f64>,
        #[arg(long, default_value = "ascending")]
        mapping: String,
        /// `json` (one manifest line) or `table` (tab-separated ranking).
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Union-bound curves as CSV.
    Bound {
        #[arg(long)]
        dmin: Option<u32>,
        #[arg(long)]
        admin: Option<u64>,
        /// Spectrum `d:A,d:A,...` for the full union bound.
        #[arg(long, conflicts_with_all = ["dmin", "admin"])]
        spectrum: Option<String>,
        #[arg(long)]
        rate: String,
        #[arg(long, conflicts_with_all = ["from_db", "to_db", "step_db"])]
        db: Option<f64>,
        #[arg(long)]
        from_db: Option<f64>,
        #[arg(long)]
        to_db: Option<f64>,
        #[arg(long, default_value_t = 0.5)]
        step_db: f64,
    },
    /// Closed-form visited-node count of list-decoding baselines.
    Avn {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n_log2: u32,
        #[arg(long)]
        list: u64,
        #[arg(long, default_value_t = 1)]
        levels: u64,
    },
    /// Exhaustive weight spectrum of a small code as CSV.
    Oracle {
        #[command(flatten)]
        code: CodeArgs,
        /// Add a CRC outer code; --k is then the message length.
        #[arg(long)]
        crc: Option<String>,
        #[arg(long, default_value = "ascending")]
        mapping: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum EnumMethod {
    Scem,
    Screm,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Count,
    Collect,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Count => Mode::Count,
            ModeArg::Collect => Mode::Collect,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(payload) => {
            let mut out = std::io::stdout().lock();
            if out
                .write_all(payload.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn manifest_line<P: Serialize, R: Serialize>(
    command: &str,
    params: &P,
    start: Instant,
    result: &R,
) -> Result<String> {
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    Ok(RunManifest::new(command, params, elapsed, result)?.to_line()? + "\n")
}

fn write_dump(path: &str, result: &MwdResult) -> Result<()> {
    let words = result
        .codewords
        .as_deref()
        .context("no codewords were collected")?;
    std::fs::write(path, codewords_to_hex(words)).with_context(|| format!("writing {path}"))
}

fn run_mwd(
    spec: &CodeSpec,
    method: EnumMethod,
    mode: Mode,
    radius: Option<u32>,
    set_cap: usize,
) -> Result<MwdResult> {
    let bound = min_weight_lower_bound(spec)?;
    let options = ScremOptions { set_cap };
    Ok(match method {
        EnumMethod::Scem => scem(spec, radius.unwrap_or(bound), mode)?,
        EnumMethod::Screm => screm_with(spec, bound, mode, &options)?,
        EnumMethod::Auto => match screm_with(spec, bound, mode, &options) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("note: screm failed ({e}); using scem");
                let mut r = scem(spec, bound, mode)?;
                r.flags.push(ResultFlag::FallbackUsed);
                r
            }
        },
    })
}

fn run(cli: Cli) -> Result<String> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build_global()
        .context("configuring the thread pool")?;
    let start = Instant::now();
    match cli.command {
        Command::Construct {
            mut code,
            construct_method,
            list_info_set,
            out,
        } => {
            if let Some(m) = construct_method {
                code.method = m;
            }
            let spec = code.build(0)?;
            let doc = CodeSpecDoc::from_spec(&spec);
            if let Some(path) = out {
                let text = serde_json::to_string_pretty(&doc)? + "\n";
                std::fs::write(&path, text).with_context(|| format!("writing {path}"))?;
            }
            if list_info_set {
                let list: Vec<String> = spec.info_set_a().iter().map(|i| i.to_string()).collect();
                return Ok(list.join(" ") + "\n");
            }
            manifest_line("construct", &code, start, &doc)
        }
        Command::Mwd {
            code,
            enum_method,
            mode,
            radius,
            set_cap,
            dump_codewords,
        } => {
            let spec = code.build(0)?;
            let mode = if dump_codewords.is_some() {
                Mode::Collect
            } else {
                mode.into()
            };
            let result = run_mwd(&spec, enum_method, mode, radius, set_cap)?;
            if let Some(path) = &dump_codewords {
                write_dump(path, &result)?;
            }
            let elapsed = start.elapsed().as_secs_f64() * 1e3;
            let record = ResultRecord::new(&spec, &result, mode, elapsed);
            let params = json!({
                "code": CodeSpecDoc::from_spec(&spec),
                "method": enum_method,
                "mode": mode,
                "radius": radius,
                "set_cap": set_cap,
            });
            manifest_line("mwd", &params, start, &record)
        }
        Command::Concat {
            code,
            mode,
            dump_codewords,
        } => {
            let concat = code.build()?;
            let mode = if dump_codewords.is_some() {
                Mode::Collect
            } else {
                mode.into()
            };
            let result = pc_scem(&concat, mode)?;
            if let Some(path) = &dump_codewords {
                write_dump(path, &result)?;
            }
            let elapsed = start.elapsed().as_secs_f64() * 1e3;
            let mut record = ResultRecord::new(concat.inner(), &result, mode, elapsed);
            record.crc_hex = Some(concat.crc());
            let params = json!({ "code": ConcatSpecDoc::from_spec(&concat), "mode": mode });
            manifest_line("concat", &params, start, &record)
        }
        Command::CrcSearch {
            n,
            ki,
            kp,
            method,
            design_snr_db,
            mapping,
            format,
        } => {
            let code = CodeArgs {
                spec: None,
                n: Some(n),
                k: Some(ki + kp as usize),
                rate: None,
                method,
                design_snr_db,
            };
            let inner = code.build(0)?;
            let mapping_value = args::parse_mapping(&mapping)?;
            let report = crc_optimize(&inner, ki, kp, &mapping_value)?;
            for f in &report.failures {
                eprintln!("warning: {} skipped: {}", f.crc_hex, f.error);
            }
            match format {
                Format::Table => Ok(report.to_table()),
                Format::Json => {
                    let params = json!({
                        "code": CodeSpecDoc::from_spec(&inner),
                        "k_i": ki,
                        "k_p": kp,
                        "mapping": mapping,
                    });
                    let result = json!({ "winner": report.winner(), "report": report });
                    manifest_line("crc-search", &params, start, &result)
                }
            }
        }
        Command::Bound {
            dmin,
            admin,
            spectrum,
            rate,
            db,
            from_db,
            to_db,
            step_db,
        } => {
            let rate = parse_rate(&rate)?;
            let grid = match (db, from_db, to_db) {
                (Some(x), _, _) => vec![x],
                (None, Some(a), Some(b)) => db_grid(a, b, step_db)?,
                _ => bail!("give --db or both --from-db and --to-db"),
            };
            let points: Vec<BoundPoint> = match (spectrum, dmin, admin) {
                (Some(s), _, _) => {
                    let terms = parse_spectrum(&s)?;
                    grid.iter()
                        .map(|&x| union_bound(&terms, rate, x))
                        .collect::<polar_mwd::Result<_>>()?
                }
                (None, Some(d), Some(a)) => {
                    if d == 0 || a == 0 {
                        bail!("--dmin and --admin must be positive");
                    }
                    aub_curve(d, a, rate, &grid)
                }
                _ => bail!("give --dmin and --admin, or --spectrum"),
            };
            Ok(bound_csv(&points))
        }
        Command::Avn {
            k,
            n_log2,
            list,
            levels,
        } => {
            if n_log2 == 0 || n_log2 > 63 || list == 0 || levels == 0 {
                bail!("--n-log2 must be in 1..=63, --list and --levels positive");
            }
            let value = scl_avn(k, 1u64 << n_log2, list, levels);
            let params = json!({ "k": k, "n_log2": n_log2, "list": list, "levels": levels });
            manifest_line(
                "avn",
                &params,
                start,
                &json!({ "scl_avn": value.to_string() }),
            )
        }
        Command::Oracle { code, crc, mapping } => {
            let spectrum = match crc {
                None => brute_force_spectrum(&code.build(0)?)?,
                Some(hex) => {
                    let crc: polar_mwd::CrcPolynomial = hex.parse()?;
                    let inner = code.build(crc.degree() as usize)?;
                    let concat =
                        polar_mwd::ConcatSpec::new(inner, crc, args::parse_mapping(&mapping)?)?;
                    brute_force_concat(&concat)?
                }
            };
            Ok(spectrum.to_csv())
        }
    }
}

fn parse_rate(text: &str) -> Result<f64> {
    let r = match text.split_once('/') {
        Some((p, q)) => p.trim().parse::<f64>()? / q.trim().parse::<f64>()?,
        None => text.trim().parse::<f64>()?,
    };
    if !(r > 0.0 && r <= 1.0) {
        bail!("rate {text} is not in (0, 1]");
    }
    Ok(r)
}

fn parse_spectrum(text: &str) -> Result<Vec<(u32, u64)>> {
    text.split(',')
        .map(|term| {
            let (d, a) = term
                .split_once(':')
                .with_context(|| format!("spectrum term {term:?} is not d:A"))?;
            Ok((d.trim().parse()?, a.trim().parse()?))
        })
        .collect()
}
