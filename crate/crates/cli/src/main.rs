use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use benzel_cli::cache::{self, Cache};
use benzel_cli::counter::{parse_engine, parse_tiles, Counter, RegionSpec};
use benzel_cli::error::{CliError, CliResult};
use benzel_cli::verify::{self, Report, VerifyOptions};
use benzel_cli::{oeis, svg, table};
use benzel_core::engine::Tilings;
use benzel_core::Budget;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

#[derive(Parser)]
#[command(
    name = "benzel",
    version,
    about = "Stones-and-bones tilings of benzels and triangles"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Cache file [default: $BENZEL_CACHE, else ./benzel-cache.jsonl]
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Use bundled OEIS fixtures instead of the network.
    #[arg(long, global = true)]
    offline: bool,
    /// Counting engine: plain or memo.
    #[arg(long, global = true, default_value = "memo")]
    engine: String,
    #[arg(long, global = true)]
    max_nodes: Option<u64>,
    #[arg(long, global = true)]
    max_seconds: Option<f64>,
    /// Frontier size limit of the memoized engine.
    #[arg(long, global = true)]
    max_states: Option<usize>,
    /// More log output (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Args)]
struct RegionArgs {
    #[arg(long, requires = "b", conflicts_with = "triangle")]
    a: Option<u32>,
    #[arg(long, requires = "a", conflicts_with = "triangle")]
    b: Option<u32>,
    /// Triangle with this many cells per side.
    #[arg(long)]
    triangle: Option<u32>,
}

impl RegionArgs {
    fn spec(&self) -> CliResult<RegionSpec> {
        match (self.a, self.b, self.triangle) {
            (Some(a), Some(b), None) => Ok(RegionSpec::Benzel { a, b }),
            (None, None, Some(n)) => Ok(RegionSpec::Triangle { n }),
            _ => Err(CliError::Usage("give --a and --b, or --triangle".into())),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Svg,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the cells of a region.
    Region {
        #[command(flatten)]
        region: RegionArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count tilings.
    Count {
        #[command(flatten)]
        region: RegionArgs,
        /// Tile-set code `ijk` or `ijk;w`.
        #[arg(long)]
        tiles: String,
    },
    /// Print a table of T_ijk(a, b) in the published layout.
    Table {
        #[arg(long = "type")]
        code: String,
        #[arg(long)]
        max: u32,
        #[arg(long)]
        stone_weight: Option<u64>,
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
    },
    /// Check a problem (or all of them) against the engine, formulas and data.
    Verify {
        #[arg(long)]
        problem: Option<u32>,
        #[arg(long)]
        n_max: Option<u64>,
        #[arg(long)]
        k_max: Option<u64>,
        #[arg(long)]
        ab_max: Option<u32>,
        #[arg(long = "mod")]
        modulus: Option<u32>,
        /// Answer from the cache only.
        #[arg(long)]
        no_recompute: bool,
        /// Write the JSON report here (`-` for standard output).
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Fetch an OEIS b-file.
    Oeis {
        #[arg(long)]
        seq: String,
        /// Print at most this many terms.
        #[arg(long)]
        terms: Option<usize>,
    },
    /// Compare values against an OEIS sequence.
    Compare {
        #[arg(long)]
        seq: String,
        /// File of `index value` lines.
        #[arg(
            long,
            conflicts_with = "triangle_max",
            required_unless_present = "triangle_max"
        )]
        values_from: Option<PathBuf>,
        /// Use stone-only tiling counts of triangles with sides 0..=N.
        #[arg(long)]
        triangle_max: Option<u32>,
    },
    /// Draw one tiling as SVG.
    Render {
        #[command(flatten)]
        region: RegionArgs,
        #[arg(long)]
        tiles: String,
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(p) if p != Path::new("-") => fs::write(p, text).map_err(|e| CliError::io(p, e)),
        _ => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io("<stdout>", e)),
    }
}

fn counter(g: &Global) -> CliResult<Counter> {
    let cache = if g.no_cache {
        None
    } else {
        let c = Cache::open(cache::resolve_path(g.cache.as_deref()))?;
        if c.skipped() > 0 {
            log::warn!(
                "{}: {} corrupted lines skipped",
                c.path().display(),
                c.skipped()
            );
        }
        Some(c)
    };
    let mut counter = Counter::new(cache);
    counter.engine = parse_engine(&g.engine)?;
    let defaults = counter.budget;
    counter.budget = Budget {
        max_nodes: g.max_nodes,
        max_time: g.max_seconds.map(Duration::from_secs_f64),
        max_states: g.max_states.or(defaults.max_states),
    };
    Ok(counter)
}

fn run(cli: Cli) -> CliResult<()> {
    let g = &cli.global;
    match &cli.cmd {
        Cmd::Region {
            region,
            format,
            out,
        } => {
            let r = region.spec()?.build()?;
            let text = match format {
                Format::Json => {
                    let cells: Vec<[i32; 3]> = r.cells().iter().map(|c| [c.i, c.j, c.k]).collect();
                    serde_json::to_string(&cells).expect("cells serialize") + "\n"
                }
                Format::Svg => svg::render_region(&r),
            };
            emit(out.as_deref(), &text)
        }
        Cmd::Count { region, tiles } => {
            let ts = parse_tiles(tiles)?;
            let spec = region.spec()?;
            let c = counter(g)?.count(spec, &ts)?;
            log::info!(
                "{spec} {ts}: {} in {:?}",
                if c.cached { "cached" } else { "computed" },
                c.elapsed
            );
            println!("{}", c.value);
            Ok(())
        }
        Cmd::Table {
            code,
            max,
            stone_weight,
            jobs,
        } => {
            if *max < 2 {
                return Err(CliError::Usage("--max must be at least 2".into()));
            }
            let mut ts = parse_tiles(code)?;
            if let Some(w) = stone_weight {
                ts = ts.with_stone_weight(*w)?;
            }
            let entries = table::compute(&counter(g)?, &ts, *max, (*jobs).max(1))?;
            print!("{}", table::render(&entries, *max));
            let failed = entries.values().filter(|v| v.is_none()).count();
            if failed > 0 {
                return Err(CliError::Core(benzel_core::Error::BudgetExceeded(
                    benzel_core::error::Partial {
                        nodes: 0,
                        elapsed: Duration::ZERO,
                        frontier: failed,
                    },
                )));
            }
            Ok(())
        }
        Cmd::Verify {
            problem,
            n_max,
            k_max,
            ab_max,
            modulus,
            no_recompute,
            json,
        } => {
            let mut counter = counter(g)?;
            counter.recompute = !no_recompute;
            let opts = VerifyOptions {
                n_max: *n_max,
                k_max: *k_max,
                ab_max: *ab_max,
                modulus: *modulus,
                offline: g.offline,
            };
            let problems: Vec<u32> = match problem {
                Some(p) => vec![*p],
                None => verify::PROBLEMS.collect(),
            };
            let mut reports: Vec<Report> = Vec::new();
            for p in problems {
                let r = verify::verify(p, &counter, &opts)?;
                let summary = r.summary();
                if json.as_deref() == Some(Path::new("-")) {
                    eprint!("{summary}");
                } else {
                    print!("{summary}");
                }
                reports.push(r);
            }
            if let Some(path) = json {
                let text =
                    serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n";
                emit(Some(path), &text)?;
            }
            let failed: Vec<String> = reports
                .iter()
                .filter(|r| !r.passed)
                .map(|r| r.problem.to_string())
                .collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::Mismatch(format!(
                    "problems {}",
                    failed.join(", ")
                )))
            }
        }
        Cmd::Oeis { seq, terms } => {
            let s = oeis::fetch(seq, g.offline)?;
            println!(
                "# {} ({}), {} terms from index {}",
                s.id,
                s.source,
                s.terms.len(),
                s.first_index
            );
            for (i, t) in s.indexed().take(terms.unwrap_or(usize::MAX)) {
                println!("{i} {t}");
            }
            Ok(())
        }
        Cmd::Compare {
            seq,
            values_from,
            triangle_max,
        } => {
            let s = oeis::fetch(seq, g.offline)?;
            let values: Vec<(i64, BigInt)> = match (values_from, triangle_max) {
                (Some(path), _) => {
                    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
                    oeis::parse_bfile(&path.display().to_string(), &text, oeis::Source::Fixture)?
                        .indexed()
                        .map(|(i, v)| (i, v.clone()))
                        .collect()
                }
                (None, Some(n)) => {
                    let counter = counter(g)?;
                    let mut out = Vec::new();
                    for k in 0..=*n {
                        out.push((k as i64, verify::triangle_stone_count(&counter, k)?.into()));
                    }
                    out
                }
                (None, None) => unreachable!("clap requires one source"),
            };
            let cmp = oeis::compare(&s, &values);
            println!("{cmp} ({})", s.source);
            if cmp.agrees() {
                Ok(())
            } else {
                Err(CliError::Mismatch(cmp.to_string()))
            }
        }
        Cmd::Render {
            region,
            tiles,
            index,
            out,
        } => {
            let ts = parse_tiles(tiles)?;
            let r = region.spec()?.build()?;
            let budget = counter(g)?.budget;
            let mut it = Tilings::new(&r, &ts, budget);
            let mut seen = 0;
            let tiling = loop {
                match it.next() {
                    Some(t) if seen == *index => break t?,
                    Some(t) => {
                        t?;
                        seen += 1;
                    }
                    None => {
                        return Err(CliError::Usage(format!(
                            "index {index} out of range: {} has {seen} tilings with tiles {ts}",
                            r.label()
                        )))
                    }
                }
            };
            emit(out.as_deref(), &svg::render_tiling(&r, &tiling))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.global.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
