use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use log::info;
use rand::seq::IteratorRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use signedflips::filler::{decompose_to_moves, fill_ball_nd, verify_ball_filling};
use signedflips::json;
use signedflips::oracle::oracle_signable;
use signedflips::search::{find_flip_path, find_signable_path};
use signedflips::{build_flip_graph, enumerate_triangulations, is_signable, two_color, Signability, TwoColorOutcome};

/// Exit code for a well-formed input whose answer is negative: not
/// signable, or no path found.
const EXIT_NEGATIVE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_ORACLE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "signedflips",
    version,
    about = "Signed diagonal flips on polygon triangulations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the main output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a flip sequence lifts to signed flips.
    Check {
        sequence: PathBuf,
        /// Cross-check the verdict against brute-force sign simulation.
        #[arg(long)]
        oracle: bool,
    },
    /// Export the flip-interaction graph of a sequence.
    Graph {
        sequence: PathBuf,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
    /// Find a flip path between two triangulations.
    Path {
        from: PathBuf,
        to: PathBuf,
        /// Only accept paths realisable by signed flips.
        #[arg(long)]
        signable: bool,
        /// Longest path to accept.
        #[arg(long, default_value_t = 12)]
        max_len: usize,
    },
    /// Fill a colored cycle or sphere by a disk or ball without new vertices.
    Fill { complex: PathBuf, coloring: PathBuf },
    /// Decompose the ball filling of a colored 2-sphere into moves.
    Moves { complex: PathBuf, coloring: PathBuf },
    /// List the triangulations of an n-gon.
    Enumerate {
        n: u32,
        /// Print only this many, chosen at random.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Exit status of `check`: the graph verdict, unless the oracle was asked
/// and disagrees.
fn check_exit_code(signable: bool, oracle: Option<bool>) -> u8 {
    match oracle {
        Some(o) if o != signable => EXIT_ORACLE,
        _ if signable => 0,
        _ => EXIT_NEGATIVE,
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let output = cli.output.as_deref();
    match cli.command {
        Command::Check { sequence, oracle } => {
            let s = json::parse_flip_sequence(&read(&sequence)?).with_context(|| sequence.display().to_string())?;
            let verdict = is_signable(&s)?;
            match &verdict {
                Signability::Signable(ss) => {
                    println!("SIGNABLE");
                    emit(output, &json::signed_sequence_to_json(ss))?;
                }
                Signability::NotSignable(w) => {
                    println!("NOT-SIGNABLE");
                    let cycle: Vec<String> = w.cycle.iter().map(|i| format!("phi{i}")).collect();
                    println!("odd cycle of length {}: {}", w.len(), cycle.join(" "));
                }
            }
            let brute = if oracle { Some(oracle_signable(&s)?) } else { None };
            match brute {
                Some(b) if b != verdict.is_signable() => {
                    println!(
                        "oracle: DISAGREES (oracle says {})",
                        if b { "signable" } else { "not signable" }
                    )
                }
                Some(_) => println!("oracle: agrees"),
                None => {}
            }
            Ok(check_exit_code(verdict.is_signable(), brute))
        }
        Command::Graph { sequence, format } => {
            let s = json::parse_flip_sequence(&read(&sequence)?).with_context(|| sequence.display().to_string())?;
            let g = build_flip_graph(&s)?;
            let outcome = two_color(&g);
            let text = match format {
                Format::Dot => match &outcome {
                    TwoColorOutcome::Colorable(c) => g.to_dot(Some(c)),
                    TwoColorOutcome::OddCycle(_) => g.to_dot(None),
                },
                Format::Json => {
                    let mut value = serde_json::json!({
                        "order": g.order(),
                        "edges": g.edges().iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>(),
                    });
                    match &outcome {
                        TwoColorOutcome::Colorable(c) => value["coloring"] = serde_json::json!(c.colors()),
                        TwoColorOutcome::OddCycle(w) => value["odd_cycle"] = serde_json::json!(w.cycle),
                    }
                    json::render(&value)
                }
            };
            emit(output, &text)?;
            Ok(0)
        }
        Command::Path {
            from,
            to,
            signable,
            max_len,
        } => {
            let a = json::parse_triangulation(&read(&from)?).with_context(|| from.display().to_string())?;
            let b = json::parse_triangulation(&read(&to)?).with_context(|| to.display().to_string())?;
            let found = if signable {
                find_signable_path(&a, &b, max_len)?
            } else {
                Some(find_flip_path(&a, &b)?).filter(|p| p.len() <= max_len)
            };
            match found {
                Some(p) => {
                    info!("path of length {}", p.len());
                    emit(output, &json::flip_sequence_to_json(&p))?;
                    Ok(0)
                }
                None => {
                    eprintln!(
                        "no {}path within {max_len} flips",
                        if signable { "signable " } else { "" }
                    );
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::Fill { complex, coloring } => {
            let k = json::parse_complex(&read(&complex)?).with_context(|| complex.display().to_string())?;
            let c = json::parse_coloring(&read(&coloring)?).with_context(|| coloring.display().to_string())?;
            let ball = fill_ball_nd(&k, &c)?;
            if let Err(e) = verify_ball_filling(&k, &ball, &c) {
                bail!("internal error: filling fails verification: {e}");
            }
            info!("{} facets", ball.len());
            emit(output, &json::complex_to_json(&ball))?;
            Ok(0)
        }
        Command::Moves { complex, coloring } => {
            let k = json::parse_complex(&read(&complex)?).with_context(|| complex.display().to_string())?;
            let c = json::parse_coloring(&read(&coloring)?).with_context(|| coloring.display().to_string())?;
            let d = decompose_to_moves(&k, &c)?;
            d.replay()?;
            emit(output, &json::moves_to_json(&d))?;
            Ok(0)
        }
        Command::Enumerate { n, sample, seed } => {
            let all = enumerate_triangulations(n)?;
            let chosen: Vec<_> = match sample {
                Some(k) => {
                    let mut picked = all.iter().choose_multiple(&mut ChaCha8Rng::seed_from_u64(seed), k);
                    picked.sort();
                    picked
                }
                None => all.iter().collect(),
            };
            let value = serde_json::json!({
                "n": n,
                "count": all.len(),
                "triangulations": chosen
                    .iter()
                    .map(|t| t.triangles().iter().map(|x| x.vertices()).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            });
            emit(output, &json::render(&value))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("SIGNEDFLIPS_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
