use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use heflab::autiso::{full_aut, isomorphic, IsoRoute};
use heflab::embedding::{all_faces, build_rho0, euler_genus};
use heflab::harness::{run_experiment_with_threads, threads_from_env, ExperimentReport, ExperimentSpec};
use heflab::io::{read_json, ArrayFile, AutReportFile, CensusFile, EmbeddingFile, SkeletonFile};
use heflab::orderings::{orderings_from_orientation, solve_knight, Orientation};
use heflab::ring::{default_support, random_support, Ring};
use heflab::{cyclic_diagonal_skeleton, random_fill};

#[derive(Parser)]
#[command(name = "heflab", version, about = "Quasi-Heffter arrays and the embeddings they induce")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// An input file given either positionally or by flag.
#[derive(Args)]
struct Input {
    path: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SupportArg {
    Default,
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Write a cyclically k-diagonal n×n skeleton.
    GenSkeleton {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Cyclic diagonals (the only layout supported).
        #[arg(long, default_value_t = true)]
        cyclic: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find a knight orientation for a skeleton; prints NONE and exits 1 if there is none.
    SolveKnight {
        #[command(flatten)]
        input: Input,
        #[arg(long = "skeleton")]
        flag: Option<PathBuf>,
    },
    /// Fill a skeleton with a support, uniformly at random.
    Fill {
        #[arg(long)]
        skeleton: PathBuf,
        #[arg(long, value_enum, default_value = "default")]
        support: SupportArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Order of J when the skeleton file does not carry one.
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the quasi-Heffter conditions; exits 1 on a violation.
    Validate {
        #[command(flatten)]
        input: Input,
        #[arg(long = "array")]
        flag: Option<PathBuf>,
        /// Also require non-zero row and column sums.
        #[arg(long)]
        nonzero: bool,
    },
    /// Build ρ₀ from an array and an orientation.
    Embed {
        #[arg(long)]
        array: PathBuf,
        #[arg(long)]
        orient: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Face census and genus of an embedding.
    Faces {
        #[command(flatten)]
        input: Input,
        #[arg(long = "emb")]
        flag: Option<PathBuf>,
    },
    /// Automorphism group of an embedding.
    Aut {
        #[command(flatten)]
        input: Input,
        #[arg(long = "emb")]
        flag: Option<PathBuf>,
    },
    /// Isomorphism test; exits 0 iff the embeddings are isomorphic.
    Iso {
        a_pos: Option<PathBuf>,
        b_pos: Option<PathBuf>,
        #[arg(long = "a")]
        a: Option<PathBuf>,
        #[arg(long = "b")]
        b: Option<PathBuf>,
    },
    /// Run an experiment spec; exits 1 if any check fails.
    Experiment {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write one CSV row per sample.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn pick(positional: Option<PathBuf>, flag: Option<PathBuf>, what: &str) -> Result<PathBuf> {
    match (positional, flag) {
        (Some(p), None) | (None, Some(p)) => Ok(p),
        (Some(_), Some(_)) => bail!("{what} given twice"),
        (None, None) => bail!("missing {what} file"),
    }
}

fn load<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    read_json(path).with_context(|| format!("reading {}", path.display()))
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        Some(path) => std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn write_csv(report: &ExperimentReport, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
    w.write_record(["n", "k", "sample", "subseed", "flag", "detail", "witnesses"])?;
    for r in &report.records {
        let witnesses = if r.witnesses.is_empty() { String::new() } else { serde_json::to_string(&r.witnesses)? };
        w.write_record([
            r.n.to_string(),
            r.k.to_string(),
            r.sample.to_string(),
            r.subseed.to_string(),
            r.flag.to_string(),
            r.detail.clone(),
            witnesses,
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::GenSkeleton { n, k, cyclic, out } => {
            if !cyclic {
                bail!("only cyclically diagonal skeletons are generated");
            }
            let skeleton = cyclic_diagonal_skeleton(n, k)?;
            emit(&SkeletonFile::new(&skeleton, None), out.as_deref())?;
        }
        Command::SolveKnight { input, flag } => {
            let file: SkeletonFile = load(&pick(input.path, flag, "skeleton")?)?;
            match solve_knight(&file.to_skeleton()?) {
                Some(o) => println!("{}", serde_json::to_string(&o)?),
                None => {
                    println!("NONE");
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Command::Fill { skeleton, support, seed, t, out } => {
            let file: SkeletonFile = load(&skeleton)?;
            let skel = file.to_skeleton()?;
            let t = match (file.t, t) {
                (Some(a), Some(b)) if a != b => bail!("skeleton file has t = {a}, flag says {b}"),
                (a, b) => a.or(b).unwrap_or(1),
            };
            let v = file.v.unwrap_or(2 * skel.len() + t);
            let ring = Ring::new(v, t)?;
            let sup = match support {
                SupportArg::Default => default_support(ring),
                SupportArg::Random => random_support(ring, seed),
            };
            let a = random_fill(&skel, &sup, seed)?;
            emit(&ArrayFile::from(&a), out.as_deref())?;
        }
        Command::Validate { input, flag, nonzero } => {
            let file: ArrayFile = load(&pick(input.path, flag, "array")?)?;
            let a = file.to_array()?;
            let verdict = if nonzero {
                a.validate_nh().map_err(|e| e.to_string())
            } else {
                a.validate_qh().map_err(|e| e.to_string())
            };
            match verdict {
                Ok(()) => println!("OK"),
                Err(e) => {
                    println!("INVALID: {e}");
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Command::Embed { array, orient, out } => {
            let a = load::<ArrayFile>(&array)?.to_array()?;
            let o: Orientation = load(&orient)?;
            let op = orderings_from_orientation(&a, &o)?;
            let r = build_rho0(&a, &op)?;
            emit(&EmbeddingFile::from(&r), out.as_deref())?;
        }
        Command::Faces { input, flag } => {
            let r = load::<EmbeddingFile>(&pick(input.path, flag, "embedding")?)?.to_rotation()?;
            let census = all_faces(&r);
            let genus = euler_genus(&census, r.ring())?;
            emit(&CensusFile::new(&census, genus), None)?;
        }
        Command::Aut { input, flag } => {
            let r = load::<EmbeddingFile>(&pick(input.path, flag, "embedding")?)?.to_rotation()?;
            emit(&AutReportFile::from(&full_aut(&r)), None)?;
        }
        Command::Iso { a_pos, b_pos, a, b } => {
            let p = load::<EmbeddingFile>(&pick(a_pos, a, "first embedding")?)?.to_rotation()?;
            let q = load::<EmbeddingFile>(&pick(b_pos, b, "second embedding")?)?.to_rotation()?;
            match isomorphic(&p, &q)? {
                Some(w) => {
                    let route = match w.route {
                        IsoRoute::Alignment { shift } => format!("alignment shift {shift}"),
                        IsoRoute::Multiplier { unit } => format!("multiplier {unit}"),
                    };
                    println!("ISOMORPHIC ({}, {route})", w.map.sense());
                    println!("{}", serde_json::to_string(w.map.table())?);
                }
                None => {
                    println!("NOT ISOMORPHIC");
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Command::Experiment { spec, out, csv } => {
            let spec: ExperimentSpec = load(&spec)?;
            let report = run_experiment_with_threads(&spec, threads_from_env())?;
            emit(&report, out.as_deref())?;
            if let Some(path) = csv {
                write_csv(&report, &path)?;
            }
            let mut err = std::io::stderr().lock();
            for c in &report.checks {
                writeln!(err, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
            }
            if !report.passed {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
