use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use f0stab::chambers::{
    classify, lift_path, locate_strip, render_arrangement, render_charge_diagram, semistable_delta_witness,
    stable_catalog, ChamberPoint, NormalizedCharge, PLPath,
};
use f0stab::charge::ExactComplex;
use f0stab::hearts::{heart_of_word, simple_tilt, Direction, TiltWord};
use f0stab::kronecker::{hn_filtration, semistable_bruteforce, Budget, FieldTag, KroneckerRep, StabilityFunctionK2};
use f0stab::verify::{run_suite, ReplayConfig};

#[derive(Parser, Debug)]
#[command(name = "f0stab", version, about = "Invariant stability conditions on local P1xP1")]
struct Cli {
    /// JSON file with defaults: {"n_max": 3, "field": "F5", "budget": {"max_q": 4, "max_field": 7}}
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Region of a normalized charge and the heart of its sheet
    Chamber {
        #[arg(long, value_parser = parse_x)]
        x: NormalizedCharge,
        #[arg(long, value_parser = parse_word, default_value = "")]
        word: TiltWord,
    },
    /// Stable classes at a chamber point, one JSON object per line
    Stable {
        #[arg(long, value_parser = parse_x)]
        x: NormalizedCharge,
        #[arg(long, value_parser = parse_word, default_value = "")]
        word: TiltWord,
        #[arg(long)]
        nmax: Option<u32>,
    },
    /// Harder-Narasimhan factors of a Kronecker representation
    Hn {
        /// JSON file {"p":..,"q":..,"field":"Q","A":[[..]],"B":[[..]]}
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z0: ExactComplex,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z1: ExactComplex,
        /// Also check each factor's reduction with the enumeration oracle
        #[arg(long)]
        check: bool,
    },
    /// Heart of a tilt word, optionally followed by a simple tilt
    Tilt {
        #[arg(long, value_parser = parse_word, default_value = "")]
        word: TiltWord,
        /// Slot of the simple to tilt at
        #[arg(long, requires = "dir")]
        simple: Option<usize>,
        #[arg(long, value_parser = parse_dir)]
        dir: Option<Direction>,
    },
    /// Lift a piecewise linear path and report wall crossings
    Lift {
        #[arg(long, value_parser = parse_x, allow_hyphen_values = true)]
        start: NormalizedCharge,
        #[arg(long, value_parser = parse_word, default_value = "")]
        word: TiltWord,
        /// Waypoints separated by ';', starting at --start
        #[arg(long, value_parser = parse_path, allow_hyphen_values = true)]
        path: PLPath,
    },
    /// Index n of the strip containing x, so that x + n*i/2 lies in the base strip
    Strip {
        #[arg(long, value_parser = parse_x, allow_hyphen_values = true)]
        x: NormalizedCharge,
    },
    /// Write an SVG figure
    Render {
        #[arg(long, value_enum)]
        figure: Figure,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_parser = parse_x, default_value = "1/4+1/4*i", allow_hyphen_values = true)]
        x: NormalizedCharge,
        #[arg(long, value_parser = parse_word, default_value = "")]
        word: TiltWord,
        #[arg(long)]
        nmax: Option<u32>,
    },
    /// Run the identity suite and print a pass/fail table
    Verify {
        /// Smaller Kronecker replay
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Figure {
    Sstab,
    Hreg,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct Config {
    n_max: u32,
    field: String,
    budget: Budget,
}

impl Default for Config {
    fn default() -> Self {
        Config { n_max: 3, field: "F5".into(), budget: Budget::default() }
    }
}

fn parse_x(s: &str) -> std::result::Result<NormalizedCharge, String> {
    s.parse().map_err(|e: f0stab::Error| e.to_string())
}

fn parse_complex(s: &str) -> std::result::Result<ExactComplex, String> {
    s.parse().map_err(|e: f0stab::Error| e.to_string())
}

fn parse_word(s: &str) -> std::result::Result<TiltWord, String> {
    s.parse().map_err(|e: f0stab::Error| e.to_string())
}

fn parse_path(s: &str) -> std::result::Result<PLPath, String> {
    s.parse().map_err(|e: f0stab::Error| e.to_string())
}

fn parse_dir(s: &str) -> std::result::Result<Direction, String> {
    s.parse().map_err(|e: f0stab::Error| e.to_string())
}

/// Marks failures caused by malformed input rather than by the mathematics.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn load_config(path: Option<&PathBuf>) -> Result<Config> {
    let Some(path) = path else { return Ok(Config::default()) };
    let text = std::fs::read_to_string(path).map_err(|e| Usage(format!("reading {}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text).map_err(|e| Usage(format!("config {}: {e}", path.display())))?)
}

fn line(out: &mut impl Write, v: &impl Serialize) -> Result<()> {
    serde_json::to_writer(&mut *out, v)?;
    out.write_all(b"\n")?;
    Ok(())
}

fn run(cli: Cli, out: &mut impl Write) -> Result<bool> {
    let cfg = load_config(cli.config.as_ref())?;
    match cli.command {
        Command::Chamber { x, word } => {
            let strip = locate_strip(&x);
            let point = x.translated(word.quotient_exponent());
            let region = classify(&point);
            line(
                out,
                &json!({
                    "x": x,
                    "word": word,
                    "region": region.to_string(),
                    "strip": strip,
                    "heart": heart_of_word(&word),
                }),
            )?;
        }
        Command::Stable { x, word, nmax } => {
            let p = ChamberPoint::new(word, x)?;
            for e in stable_catalog(&p, nmax.unwrap_or(cfg.n_max))? {
                line(out, &e)?;
            }
            line(out, &json!({ "semistable": semistable_delta_witness(&p), "label": "O_x" }))?;
        }
        Command::Hn { rep, z0, z1, check } => {
            let text = std::fs::read_to_string(&rep).map_err(|e| Usage(format!("reading {}: {e}", rep.display())))?;
            let m: KroneckerRep =
                serde_json::from_str(&text).map_err(|e| Usage(format!("representation {}: {e}", rep.display())))?;
            let z = StabilityFunctionK2::new(z0, z1)?;
            let hn = hn_filtration(&m, &z)?;
            let prime = match cfg.field.parse::<FieldTag>()? {
                FieldTag::Prime(p) => p,
                FieldTag::Rational => bail!(Usage("the oracle field must be a prime field".into())),
            };
            for f in &hn.factors {
                let mut v = json!({
                    "regime": hn.regime,
                    "class": f.class,
                    "charge": f.charge,
                    "blocks": f.blocks,
                    "rep": f.rep,
                });
                if check {
                    let verdict = semistable_bruteforce(&f.rep.reduce_mod(prime)?, &z, &cfg.budget)?;
                    v["semistable"] = json!(verdict.semistable);
                }
                line(out, &v)?;
            }
        }
        Command::Tilt { word, simple, dir } => {
            let mut h = heart_of_word(&word);
            if let (Some(i), Some(d)) = (simple, dir) {
                h = simple_tilt(&h, i, d)?;
            }
            line(out, &json!({ "word": word, "heart": h }))?;
        }
        Command::Lift { start, word, path } => {
            let p = ChamberPoint::new(word, start)?;
            let r = lift_path(&p, &path)?;
            for c in &r.crossings {
                line(out, c)?;
            }
            line(out, &json!({ "end": r.end, "monodromy": r.end.word.concat(&p.word.inverse()) }))?;
        }
        Command::Strip { x } => {
            line(out, &json!({ "x": x, "strip": locate_strip(&x) }))?;
        }
        Command::Render { figure, out: path, x, word, nmax } => {
            let n = nmax.unwrap_or(cfg.n_max);
            let svg = match figure {
                Figure::Sstab => render_charge_diagram(&ChamberPoint::new(word, x)?, n)?,
                Figure::Hreg => render_arrangement(n),
            };
            std::fs::write(&path, svg).map_err(|e| Usage(format!("writing {}: {e}", path.display())))?;
            line(out, &json!({ "wrote": path.display().to_string() }))?;
        }
        Command::Verify { quick } => {
            let replay = if quick {
                ReplayConfig { max_dim: 2, random_per_dim: 2, seed: 1 }
            } else {
                ReplayConfig { max_dim: 3, random_per_dim: 30, seed: 1 }
            };
            let checks = run_suite(replay);
            let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
            for c in &checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{tag}  {:width$}  {}", c.name, c.detail)?;
            }
            return Ok(checks.iter().all(|c| c.passed));
        }
    }
    Ok(true)
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<Usage>().is_some() {
        return 2;
    }
    match e.downcast_ref::<f0stab::Error>() {
        Some(f0stab::Error::Parse(_)) => 2,
        Some(_) => 1,
        None => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(exit_code(&e))
        }
    }
}
