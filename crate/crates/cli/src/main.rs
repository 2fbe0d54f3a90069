use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wordgrid_core::bounds::{bracket, f1_exact};
use wordgrid_core::codec::{parse_grid, serialize_grid};
use wordgrid_core::constructions::{
    best_construction, counterpoint_dense, counterpoint_grid, cross_grid, parity_grid, quad_grid, rows_grid,
    stripe_grid, ConstructionResult, ParityRule, DENSE_CAP,
};
use wordgrid_core::grid::Grid;
use wordgrid_core::lines::{count_lines, count_segments, enumerate_lines, enumerate_segments};
use wordgrid_core::occurrence::{count_word_set, count_word_with_matches, estimate_fraction};
use wordgrid_core::solver::{solve, SolveConfig, SolveResult};
use wordgrid_core::unfold::unfold;
use wordgrid_core::verify::{run_suite, Suite};
use wordgrid_core::word::Word;
use wordgrid_core::Error;

const EXIT_INPUT: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "wordgrid", version, about = "Lines of d-dimensional grids that spell a word")]
struct Cli {
    /// Worker threads for counting and search.
    #[arg(long, global = true, env = "WORDGRID_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count lines of a WG1 grid containing a word (or any of several).
    Count {
        #[arg(long)]
        grid: PathBuf,
        /// Word to look for; repeat for a word set.
        #[arg(long, required = true)]
        word: Vec<String>,
        /// List the matching lines.
        #[arg(long)]
        matches: bool,
    },
    /// Count or list the lines of [n]^d.
    Lines {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        d: usize,
        #[arg(long)]
        list: bool,
    },
    /// Count or list the length-k segments of [n]^d.
    Segments {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        d: usize,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        list: bool,
    },
    /// Build a grid from one of the constructions and print it as WG1.
    Construct {
        #[arg(long)]
        word: String,
        #[arg(short, default_value_t = 2)]
        d: usize,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Letter for `cross`, or the first letter for `quad`.
        #[arg(long)]
        letter: Option<char>,
        /// Second letter for `quad`.
        #[arg(long)]
        other: Option<char>,
        /// Largest cell count materialized for `counterpoint`.
        #[arg(long, default_value_t = DENSE_CAP)]
        dense_cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lower and upper bounds with the rules that produced them.
    Bounds {
        #[arg(long)]
        word: String,
        #[arg(short, default_value_t = 2)]
        d: usize,
    },
    /// Exact optimum by branch-and-bound.
    Solve {
        #[arg(long)]
        word: String,
        /// Grid side; defaults to the word length.
        #[arg(short)]
        n: Option<usize>,
        #[arg(short, default_value_t = 2)]
        d: usize,
        /// Report every optimal grid up to symmetry.
        #[arg(long)]
        all_optima: bool,
        #[arg(long)]
        no_symmetry: bool,
        #[arg(long)]
        budget_nodes: Option<u64>,
        #[arg(long)]
        budget_seconds: Option<f64>,
        /// Directory receiving one WG1 file per witness.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Best one-dimensional arrangement of a word in a string of length n.
    F1 {
        #[arg(long)]
        word: String,
        #[arg(short)]
        n: usize,
        #[arg(long)]
        witness: bool,
    },
    /// Estimate the fraction of lines containing a word by sampling.
    Estimate {
        #[arg(long)]
        word: String,
        #[arg(short)]
        d: usize,
        #[arg(long, value_enum, default_value_t = Source::Counterpoint)]
        source: Source,
        /// WG1 grid, used with `--source file`.
        #[arg(long)]
        grid: Option<PathBuf>,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Run the built-in check suite.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::Fast)]
        suite: SuiteArg,
    },
    /// Print a 3x3x3 grid as a foldable net.
    Unfold {
        #[arg(long)]
        grid: PathBuf,
        #[arg(long)]
        word: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Auto,
    Rows,
    Cross,
    Quad,
    Stripe,
    Parity,
    Counterpoint,
}

#[derive(Clone, Copy, ValueEnum)]
enum Source {
    Counterpoint,
    Parity,
    File,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Fast,
    Full,
}

fn word(s: &str) -> anyhow::Result<Word> {
    Ok(Word::parse(s)?)
}

fn read_grid(path: &Path) -> anyhow::Result<Grid> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_grid(&text).with_context(|| format!("parsing {}", path.display()))
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Inconsistent(_)) => EXIT_VERIFY,
        _ => EXIT_INPUT,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let workers = match cli.threads {
        Some(0) => bail!("--threads must be at least 1"),
        Some(t) => t,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    // ignore failure if a pool already exists
    let _ = rayon::ThreadPoolBuilder::new().num_threads(workers).build_global();
    match cli.command {
        Command::Count {
            grid,
            word: words,
            matches,
        } => {
            let grid = read_grid(&grid)?;
            let words: Vec<Word> = words.iter().map(|s| word(s)).collect::<anyhow::Result<_>>()?;
            let report = if words.len() == 1 && matches {
                count_word_with_matches(&words[0], &grid)?
            } else {
                count_word_set(&words, &grid)?
            };
            println!("total={}", report.total);
            for (r, c) in report.per_weight.iter().enumerate() {
                println!("weight={} count={c}", r + 1);
            }
            for l in report.matches.iter().flatten() {
                println!("line={l}");
            }
        }
        Command::Lines { n, d, list } => {
            let counts = count_lines(n, d)?;
            for (r, c) in counts.per_weight.iter().enumerate() {
                println!("weight={} count={c}", r + 1);
            }
            println!("total={}", counts.total);
            if list {
                for l in enumerate_lines(n, d)? {
                    println!("{l}");
                }
            }
        }
        Command::Segments { n, d, k, list } => {
            println!("total={}", count_segments(n, d, k)?);
            if list {
                for s in enumerate_segments(n, d, k)? {
                    println!("{s}");
                }
            }
        }
        Command::Construct {
            word: w,
            d,
            method,
            letter,
            other,
            dense_cap,
            out,
        } => {
            let w = word(&w)?;
            let first = w.char_at(0);
            let result = match method {
                Method::Auto => best_construction(&w, d)?,
                Method::Rows => rows_grid(&w, d)?,
                Method::Parity => parity_grid(&w, d)?,
                Method::Counterpoint => counterpoint_dense(&w, d, dense_cap)?,
                Method::Cross | Method::Quad | Method::Stripe if d != 2 => {
                    bail!("this construction is planar; use -d 2")
                }
                Method::Cross => cross_grid(&w, letter.unwrap_or(first))?,
                Method::Stripe => stripe_grid(&w)?,
                Method::Quad => {
                    let a = letter.unwrap_or(first);
                    let m = match other {
                        Some(m) => m,
                        None => w
                            .used_letters()
                            .into_iter()
                            .find(|&c| c != a)
                            .context("quad needs a second letter")?,
                    };
                    quad_grid(&w, a, m)?
                }
            };
            emit_construction(&result, out.as_deref())?;
        }
        Command::Bounds { word: w, d } => {
            let w = word(&w)?;
            let report = bracket(&w, d)?;
            for b in &report.applied {
                println!("rule={} value={}", b.rule, b.value);
            }
            println!("lower={} via={}", report.lower, report.lower_provenance);
            println!("upper={}", report.upper);
            match report.exact {
                Some(e) => println!("exact={} via={}", e.value, e.rule),
                None => println!("exact=none"),
            }
        }
        Command::Solve {
            word: w,
            n,
            d,
            all_optima,
            no_symmetry,
            budget_nodes,
            budget_seconds,
            out,
        } => {
            let w = word(&w)?;
            let n = n.unwrap_or(w.len());
            let time_budget = match budget_seconds {
                Some(s) if !(s > 0.0 && s.is_finite()) => bail!("--budget-seconds must be positive"),
                Some(s) => Some(Duration::from_secs_f64(s)),
                None => None,
            };
            let cfg = SolveConfig {
                node_budget: budget_nodes,
                time_budget,
                symmetry: !no_symmetry,
                all_optima,
                workers,
            };
            let result = solve(&w, n, d, &cfg)?;
            report_solve(&result, out.as_deref())?;
            if !result.complete {
                return Ok(EXIT_BUDGET);
            }
        }
        Command::F1 { word: w, n, witness } => {
            let f = f1_exact(&word(&w)?, n)?;
            println!("f1={}", f.value);
            if witness {
                println!("witness={}", f.witness);
            }
        }
        Command::Estimate {
            word: w,
            d,
            source,
            grid,
            samples,
            seed,
        } => {
            let w = word(&w)?;
            let g = match source {
                Source::Counterpoint => counterpoint_grid(&w, d)?,
                Source::Parity => Grid::procedural(
                    w.len(),
                    d,
                    w.alphabet().clone(),
                    std::sync::Arc::new(ParityRule::new(&w)),
                ),
                Source::File => {
                    let path = grid.context("--source file needs --grid")?;
                    let g = read_grid(&path)?;
                    if g.d() != d {
                        bail!("grid has d={}, but -d {d} was given", g.d());
                    }
                    g
                }
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let e = estimate_fraction(&w, &g, samples, &mut rng)?;
            println!(
                "samples={} hits={} fraction={:.6} radius={:.6}",
                e.samples, e.hits, e.fraction, e.radius
            );
        }
        Command::Verify { suite } => {
            let suite = match suite {
                SuiteArg::Fast => Suite::Fast,
                SuiteArg::Full => Suite::Full,
            };
            let checks = run_suite(suite, workers)?;
            let failed = checks.iter().filter(|c| !c.passed()).count();
            for c in &checks {
                println!("{c}");
            }
            println!("checks={} failed={failed}", checks.len());
            if failed > 0 {
                return Ok(EXIT_VERIFY);
            }
        }
        Command::Unfold { grid, word: w } => {
            let g = read_grid(&grid)?;
            let w = w.as_deref().map(word).transpose()?;
            print!("{}", unfold(&g, w.as_ref())?);
        }
    }
    Ok(0)
}

fn emit_construction(result: &ConstructionResult, out: Option<&Path>) -> anyhow::Result<()> {
    let text = format!(
        "# construction={} guaranteed={} achieved={}\n{}",
        result.provenance,
        result.guaranteed,
        result.achieved,
        serialize_grid(&result.grid)?
    );
    match out {
        Some(path) => {
            fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            println!(
                "construction={} guaranteed={} achieved={} file={}",
                result.provenance,
                result.guaranteed,
                result.achieved,
                path.display()
            );
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn report_solve(result: &SolveResult, out: Option<&Path>) -> anyhow::Result<()> {
    if result.complete {
        println!("optimum={}", result.optimum);
    } else {
        println!("optimum=[{},{}] complete=false", result.optimum, result.upper);
    }
    if let Some(c) = result.classes {
        println!("classes={c}");
    }
    let s = &result.stats;
    eprintln!(
        "nodes={} bound_prunes={} symmetry_prunes={} elapsed_ms={}",
        s.nodes,
        s.bound_prunes,
        s.symmetry_prunes,
        s.elapsed.as_millis()
    );
    if let Some(dir) = out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    for (i, g) in result.witnesses.iter().enumerate() {
        let text = serialize_grid(g)?;
        match out {
            Some(dir) => {
                let path = dir.join(format!("witness_{:03}.wg1", i + 1));
                fs::write(&path, &text).with_context(|| format!("writing {}", path.display()))?;
                println!("witness={}", path.display());
            }
            None => {
                println!("# witness {}", i + 1);
                print!("{text}");
            }
        }
    }
    Ok(())
}
