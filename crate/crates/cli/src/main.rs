//! `grautkit`: graded automorphisms of K[x, y, z] from the command line.
//!
//! Exit status is 0 on success, 1 when the input is a valid question with a
//! negative mathematical answer, and 2 for usage or parse errors.

mod render;

use std::fs;
use std::io::{self, IsTerminal, Read};
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use grautkit_core::endo::{compose, compose_all, PolyMap};
use grautkit_core::gens::{decompose_graded, recompose, word_from_json, word_to_json};
use grautkit_core::grading::{
    admits_wild, classify, normalize, GradingClass, NormalizedGrading, RawGrading,
};
use grautkit_core::lift::{lift, lift_obstruction, restrict, split_torus, EMember};
use grautkit_core::poly::Arity;
use grautkit_core::{format_map, parse_map, Error};

#[derive(Parser)]
#[command(
    name = "grautkit",
    version,
    about = "Graded polynomial automorphisms of K[x,y,z]"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a grading and show its normal form.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        grading: String,
    },
    /// Search for a certificate a = cP + bQ with Q >= 2.
    AdmitsWild {
        #[arg(long, allow_hyphen_values = true)]
        grading: String,
    },
    /// Check that a space map (raw variable order) or a plane map (normalized
    /// u, v) is graded.
    CheckGraded {
        #[arg(long, allow_hyphen_values = true)]
        grading: String,
        /// File path, inline map text, or `-` for stdin.
        #[arg(long)]
        map: String,
    },
    /// Restrict a space map fixing the negative-degree variable to the plane.
    Restrict {
        #[arg(long, allow_hyphen_values = true)]
        grading: String,
        #[arg(long)]
        map: String,
    },
    /// Lift a graded plane map to space.
    Lift {
        #[arg(long, allow_hyphen_values = true)]
        grading: String,
        #[arg(long)]
        map: String,
    },
    /// Split off the torus factor scaling the negative-degree variable.
    SplitTorus {
        #[arg(long, allow_hyphen_values = true)]
        grading: String,
        #[arg(long)]
        map: String,
    },
    /// Compose maps; the first --map is applied last.
    Compose {
        #[arg(long = "map", required = true)]
        maps: Vec<String>,
    },
    /// Write a graded automorphism as a word in T, U and S generators.
    Decompose {
        #[arg(long, allow_hyphen_values = true)]
        grading: String,
        #[arg(long)]
        map: String,
        /// Print the word as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Compose a JSON generator word back into a map.
    Recompose {
        #[arg(long, allow_hyphen_values = true)]
        grading: String,
        /// JSON word: file path, inline text, or `-` for stdin.
        #[arg(long)]
        word: String,
    },
    /// Build the Nagata automorphism from its plane conjugate and decompose it.
    Nagata {
        #[arg(long)]
        json: bool,
    },
}

struct Diag {
    color: bool,
}

impl Diag {
    fn new() -> Self {
        let disabled = std::env::var("GRAUTKIT_COLOR").is_ok_and(|v| v == "0");
        Diag {
            color: !disabled && io::stderr().is_terminal(),
        }
    }

    fn note(&self, msg: &str) {
        if self.color {
            eprintln!("\x1b[2m{}\x1b[0m", msg);
        } else {
            eprintln!("{}", msg);
        }
    }

    fn error(&self, msg: &str) {
        if self.color {
            eprintln!("\x1b[1;31merror:\x1b[0m {}", msg);
        } else {
            eprintln!("error: {}", msg);
        }
    }
}

/// A file path if one exists, `-` for stdin, otherwise the text itself.
fn read_input(arg: &str) -> Result<String, Error> {
    if arg == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Usage(format!("reading stdin: {}", e)))?;
        return Ok(s);
    }
    let path = Path::new(arg);
    if path.is_file() {
        return fs::read_to_string(path)
            .map_err(|e| Error::Usage(format!("reading {}: {}", arg, e)));
    }
    Ok(arg.to_string())
}

fn read_map(arg: &str) -> Result<PolyMap, Error> {
    Ok(parse_map(&read_input(arg)?)?)
}

fn raw_grading(text: &str) -> Result<RawGrading, Error> {
    text.parse()
}

/// Normalizes a grading and echoes the bookkeeping to stderr.
fn normalized(text: &str, diag: &Diag) -> Result<NormalizedGrading, Error> {
    let raw = raw_grading(text)?;
    let class = classify(&raw);
    if class != GradingClass::Mixed {
        return Err(Error::UnsupportedGrading(format!(
            "{} is {}, not mixed",
            raw, class
        )));
    }
    let g = normalize(&raw)?;
    diag.note(&format!("grading {}: {}", raw, render::bookkeeping(&g)));
    Ok(g)
}

fn space_map(arg: &str, g: &NormalizedGrading) -> Result<PolyMap, Error> {
    let m = read_map(arg)?;
    if m.arity() != Arity::Space {
        return Err(Error::Usage("expected a map of x, y, z".into()));
    }
    g.map_to_normalized(&m)
}

fn plane_map(arg: &str) -> Result<PolyMap, Error> {
    let m = read_map(arg)?;
    if m.arity() != Arity::Plane {
        return Err(Error::Usage("expected a map of u, v".into()));
    }
    Ok(m)
}

fn run(cmd: Command, diag: &Diag) -> Result<(), Error> {
    match cmd {
        Command::Classify { grading } => {
            let raw = raw_grading(&grading)?;
            let class = classify(&raw);
            println!("class: {}", class);
            if class == GradingClass::Mixed {
                let g = normalize(&raw)?;
                println!("normalized: {}", g);
                println!("bookkeeping: {}", render::bookkeeping(&g));
                println!("plane grading: {}", g.cyclic());
            }
        }
        Command::AdmitsWild { grading } => {
            let raw = raw_grading(&grading)?;
            let class = classify(&raw);
            if class != GradingClass::Mixed {
                println!("not wild-admitting: {} grading", class);
                return Ok(());
            }
            let g = normalize(&raw)?;
            diag.note(&format!("grading {}: {}", raw, render::bookkeeping(&g)));
            match admits_wild(&g) {
                Some(cert) => println!("wild-admitting: {}", cert),
                None => println!("not wild-admitting: no P >= 1, Q >= 2 with a = cP + bQ"),
            }
        }
        Command::CheckGraded { grading, map } => {
            let g = normalized(&grading, diag)?;
            let m = read_map(&map)?;
            let graded = match m.arity() {
                Arity::Space => g.map_to_normalized(&m)?.is_graded(&g.weights())?,
                Arity::Plane => m.is_graded_cyclic(&g.cyclic())?,
            };
            if !graded {
                return Err(Error::NotGraded(format!(
                    "{} under {}",
                    format_map(&m),
                    grading.trim()
                )));
            }
            println!("graded");
        }
        Command::Restrict { grading, map } => {
            let g = normalized(&grading, diag)?;
            let member = EMember::new(space_map(&map, &g)?, g)?;
            println!("{}", format_map(&restrict(&member)));
        }
        Command::Lift { grading, map } => {
            let g = normalized(&grading, diag)?;
            let plane = plane_map(&map)?;
            if let Some(obstruction) = lift_obstruction(&plane, &g)? {
                return Err(Error::NotLiftable(obstruction.to_string()));
            }
            let member = lift(&plane, &g)?;
            println!("{}", format_map(&g.map_from_normalized(member.map())?));
        }
        Command::SplitTorus { grading, map } => {
            let g = normalized(&grading, diag)?;
            let (member, torus) = split_torus(&space_map(&map, &g)?, &g)?;
            println!(
                "E part: {}",
                format_map(&g.map_from_normalized(member.map())?)
            );
            println!(
                "torus: {}",
                format_map(&g.map_from_normalized(&torus.to_map())?)
            );
        }
        Command::Compose { maps } => {
            let parsed = maps
                .iter()
                .map(|m| read_map(m))
                .collect::<Result<Vec<_>, _>>()?;
            let arity = parsed[0].arity();
            if parsed.iter().any(|m| m.arity() != arity) {
                return Err(Error::Usage("all maps must have the same variables".into()));
            }
            println!("{}", format_map(&compose_all(arity, &parsed)?));
        }
        Command::Decompose { grading, map, json } => {
            let g = normalized(&grading, diag)?;
            let word = decompose_graded(&space_map(&map, &g)?, &g)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&word_to_json(&word)).expect("JSON")
                );
            } else {
                print!("{}", render::word(&word));
            }
        }
        Command::Recompose { grading, word } => {
            let g = normalized(&grading, diag)?;
            let word = word_from_json(&read_input(&word)?, &g)?;
            println!(
                "{}",
                format_map(&g.map_from_normalized(&recompose(&word)?)?)
            );
        }
        Command::Nagata { json } => nagata(json)?,
    }
    Ok(())
}

fn nagata(json: bool) -> Result<(), Error> {
    let raw: RawGrading = "3 1 -1".parse()?;
    let g = normalize(&raw)?;
    let tau = parse_map("u + v^2; v")?;
    let tau_inv = parse_map("u - v^2; v")?;
    let theta = parse_map("u; v + u")?;
    let conjugate = compose(&compose(&tau_inv, &theta)?, &tau)?;
    let sigma = lift(&conjugate, &g)?;
    let restriction = restrict(&sigma);
    let word = decompose_graded(sigma.map(), &g)?;
    let recomposed = recompose(&word)?;
    if json {
        let out = serde_json::json!({
            "grading": raw.to_string(),
            "sigma": format_map(sigma.map()),
            "restriction": format_map(&restriction),
            "word": word_to_json(&word),
        });
        println!("{}", serde_json::to_string_pretty(&out).expect("JSON"));
        return Ok(());
    }
    println!("grading: {} ({})", raw, g);
    println!("tau: {}", format_map(&tau));
    println!("theta: {}", format_map(&theta));
    println!("tau^-1 theta tau: {}", format_map(&conjugate));
    println!("sigma: {}", format_map(sigma.map()));
    println!("restriction: {}", format_map(&restriction));
    println!("word:");
    print!("{}", render::word(&word));
    println!(
        "recomposes: {}",
        if recomposed == *sigma.map() {
            "yes"
        } else {
            "no"
        }
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let diag = Diag::new();
    match run(cli.command, &diag) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let code = if e.is_domain() { 1 } else { 2 };
            diag.error(&e.to_string());
            ExitCode::from(code)
        }
    }
}
