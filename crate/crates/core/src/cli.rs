//! Command-line front end.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::convert::{
    link_to_tait, plane_to_ribbon_with_certificate, ribbon_to_plane_with, RouterOptions,
};
use crate::error::{Error, Result};
use crate::format::{
    parse_ribbon, parse_rpg, parse_vld, serialize_certificate, serialize_ribbon, serialize_rpg,
};
use crate::links::DEFAULT_CROSSING_CAP;
use crate::poly::{parse as parse_poly, Polynomial, Var};
use crate::ribbon::DEFAULT_EDGE_CAP;
use crate::verify::{run_suite, Check, CheckReport};

/// Environment variable holding the default enumeration cap.
pub const CAP_ENV: &str = "RIBBONTUTTE_CAP";

const WARN_TERMS_LOG2: usize = 20;

#[derive(Debug, Parser)]
#[command(name = "ribbontutte", version, about = "Ribbon graph and relative Tutte polynomials")]
struct Cli {
    /// Limit on enumerated edges or crossings (default 24 edges / 20 crossings).
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Output {
    /// Substitutions applied before printing, e.g. `x_*=1,y_*=1` or `X=t^2`.
    #[arg(long, value_name = "VAR=EXPR")]
    substitute: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Plane,
    Ribbon,
    Tait,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bollobás–Riordan polynomial of a `.rg` ribbon graph.
    Br {
        file: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Relative Tutte polynomial of a `.rpg` relative plane graph.
    Rtutte {
        file: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Kauffman bracket of a `.vld` diagram.
    Bracket {
        file: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Jones polynomial of an oriented `.vld` diagram.
    Jones {
        file: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Convert `.rg` to a relative plane graph, `.rpg` to a ribbon graph, or `.vld` to its Tait graph.
    Convert {
        #[arg(long)]
        to: Target,
        /// Seed for a randomized drawing (ribbon to plane only).
        #[arg(long)]
        seed: Option<u64>,
        file: PathBuf,
    },
    /// Relative dual of a `.rpg` graph.
    Dual { file: PathBuf },
    /// Check the identities on seeded random instances.
    Verify {
        #[arg(long)]
        main: bool,
        #[arg(long)]
        identities: bool,
        #[arg(long)]
        duality: bool,
        #[arg(long)]
        bracket: bool,
        #[arg(long = "round-trip")]
        round_trip: bool,
        #[arg(long)]
        medial: bool,
        /// Instances per check.
        #[arg(long, default_value_t = 20)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest instance size (edges or classical crossings).
        #[arg(long = "max-size")]
        max_size: Option<usize>,
    },
    /// Built-in examples and a short random suite.
    Selftest,
}

/// Exit status and the text destined for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }
}

/// Run the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome {
                code,
                stdout: if code == 0 { text.clone() } else { String::new() },
                stderr: if code == 0 { String::new() } else { text },
            };
        }
    };
    let mut warnings = String::new();
    let result = execute(cli, &mut warnings);
    match result {
        Ok(mut outcome) => {
            warnings.push_str(&outcome.stderr);
            outcome.stderr = warnings;
            outcome
        }
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("{warnings}error: {e}\n"),
        },
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::parse(0, format!("cannot read {}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { line, message } => Error::parse(line, format!("{}: {message}", path.display())),
        other => other,
    })
}

fn cap(explicit: Option<usize>, default: usize) -> Result<usize> {
    if let Some(c) = explicit {
        return Ok(c);
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::parse(0, format!("{CAP_ENV}=`{v}` is not a number"))),
        Err(_) => Ok(default),
    }
}

fn warn_size(items: usize, warnings: &mut String) {
    if items > WARN_TERMS_LOG2 {
        let _ = writeln!(
            warnings,
            "warning: enumerating 2^{items} terms; this may take a long time"
        );
    }
}

/// Does `name` match `pattern`, where `*` matches any run of characters?
fn glob_match(pattern: &str, name: &str) -> bool {
    let parts: Vec<&str> = pattern.split('*').collect();
    if parts.len() == 1 {
        return pattern == name;
    }
    let (first, last) = (parts[0], parts[parts.len() - 1]);
    if !name.starts_with(first) || name.len() < first.len() + last.len() || !name.ends_with(last) {
        return false;
    }
    let mut rest = &name[first.len()..name.len() - last.len()];
    for part in &parts[1..parts.len() - 1] {
        match rest.find(part) {
            Some(i) => rest = &rest[i + part.len()..],
            None => return false,
        }
    }
    true
}

fn parse_substitutions(args: &[String]) -> Result<Vec<(String, Polynomial)>> {
    let mut out = Vec::new();
    for arg in args {
        let mut depth = 0i32;
        let mut start = 0;
        let mut pieces = Vec::new();
        for (i, c) in arg.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    pieces.push(&arg[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        pieces.push(&arg[start..]);
        for piece in pieces {
            let Some((var, expr)) = piece.split_once('=') else {
                return Err(Error::parse(0, format!("--substitute `{piece}` is not VAR=EXPR")));
            };
            let value = parse_poly(expr.trim())
                .map_err(|e| Error::parse(0, format!("--substitute `{piece}`: {e}")))?;
            out.push((var.trim().to_string(), value));
        }
    }
    Ok(out)
}

fn apply_substitutions(p: &Polynomial, specs: &[String]) -> Result<Polynomial> {
    let rules = parse_substitutions(specs)?;
    if rules.is_empty() {
        return Ok(p.clone());
    }
    let mut map: BTreeMap<Var, Polynomial> = BTreeMap::new();
    for var in p.variables() {
        // the last matching rule wins
        if let Some((_, value)) = rules.iter().rev().find(|(pat, _)| glob_match(pat, var.name())) {
            map.insert(var, value.clone());
        }
    }
    p.substitute_all(&map)
}

fn print_poly(p: &Polynomial, output: &Output) -> Result<Outcome> {
    let p = apply_substitutions(p, &output.substitute)?;
    Ok(Outcome::ok(format!("{}\n", p.canonical_string())))
}

fn execute(cli: Cli, warnings: &mut String) -> Result<Outcome> {
    match cli.command {
        Command::Br { file, output } => {
            let r = in_file(&file, parse_ribbon(&read(&file)?))?;
            warn_size(r.edge_count(), warnings);
            let p = r.bollobas_riordan_capped(cap(cli.cap, DEFAULT_EDGE_CAP)?)?;
            print_poly(&p, &output)
        }
        Command::Rtutte { file, output } => {
            let g = in_file(&file, parse_rpg(&read(&file)?))?;
            warn_size(g.regular_edges().len(), warnings);
            let p = g.relative_tutte_capped(cap(cli.cap, DEFAULT_EDGE_CAP)?)?;
            print_poly(&p, &output)
        }
        Command::Bracket { file, output } => {
            let l = in_file(&file, parse_vld(&read(&file)?))?;
            warn_size(l.classical_count(), warnings);
            let p = l.kauffman_bracket_capped(cap(cli.cap, DEFAULT_CROSSING_CAP)?)?;
            print_poly(&p, &output)
        }
        Command::Jones { file, output } => {
            let l = in_file(&file, parse_vld(&read(&file)?))?;
            warn_size(l.classical_count(), warnings);
            let p = l.jones_capped(cap(cli.cap, DEFAULT_CROSSING_CAP)?)?;
            print_poly(&p, &output)
        }
        Command::Convert { to, seed, file } => {
            let text = read(&file)?;
            let out = match to {
                Target::Plane => {
                    let r = in_file(&file, parse_ribbon(&text))?;
                    let (g, cert) = ribbon_to_plane_with(&r, &RouterOptions { seed });
                    serialize_rpg(&g) + &serialize_certificate(&cert.label_pairs(&g, &r))
                }
                Target::Ribbon => {
                    let g = in_file(&file, parse_rpg(&text))?;
                    let (r, cert) = plane_to_ribbon_with_certificate(&g);
                    serialize_ribbon(&r) + &serialize_certificate(&cert.label_pairs(&g, &r))
                }
                Target::Tait => {
                    let l = in_file(&file, parse_vld(&text))?;
                    serialize_rpg(&link_to_tait(&l))
                }
            };
            Ok(Outcome::ok(out))
        }
        Command::Dual { file } => {
            let g = in_file(&file, parse_rpg(&read(&file)?))?;
            Ok(Outcome::ok(serialize_rpg(&g.dual())))
        }
        Command::Verify {
            main,
            identities,
            duality,
            bracket,
            round_trip,
            medial,
            random,
            seed,
            max_size,
        } => {
            let mut checks: Vec<Check> = [
                (main, Check::Main),
                (identities, Check::Identities),
                (duality, Check::Duality),
                (bracket, Check::Bracket),
                (round_trip, Check::RoundTrip),
                (medial, Check::Medial),
            ]
            .into_iter()
            .filter_map(|(on, c)| on.then_some(c))
            .collect();
            if checks.is_empty() {
                checks = vec![Check::Main, Check::Identities, Check::Duality, Check::Bracket];
            }
            let mut reports = Vec::new();
            for check in checks {
                let size = max_size.unwrap_or(match check {
                    Check::Identities | Check::Bracket | Check::RoundTrip => 6,
                    _ => 8,
                });
                reports.extend(run_suite(check, random, seed, size)?);
            }
            Ok(report_outcome(&reports))
        }
        Command::Selftest => selftest(),
    }
}

fn report_outcome(reports: &[CheckReport]) -> Outcome {
    let mut stdout = String::new();
    for r in reports {
        let _ = writeln!(stdout, "{r}");
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    let _ = writeln!(stdout, "{} passed, {failed} failed", reports.len() - failed);
    Outcome {
        code: i32::from(failed > 0),
        stdout,
        stderr: String::new(),
    }
}

const SELFTEST_CASES: &[(&str, &str, &str)] = &[
    ("br untwisted loop", "vertex v: a b\nedge e: a b sign=+\n", "x_e*Y + y_e"),
    (
        "rtutte triangle",
        "vertex u: a f\nvertex v: b c\nvertex w: d e\n\
         edge p: a b x=1 y=1\nedge q: c d x=1 y=1\nedge r: e f x=1 y=1\n",
        "X^2 + 3*X + Y + 3",
    ),
    ("jones right-handed trefoil", "gauss O1+U2+O3+U1+O2+U3+\n", "-t^4 + t^3 + t"),
];

fn selftest() -> Result<Outcome> {
    let mut reports = Vec::new();
    for &(name, text, expected) in SELFTEST_CASES {
        let got = if name.starts_with("br") {
            parse_ribbon(text)?.bollobas_riordan()?
        } else if name.starts_with("rtutte") {
            parse_rpg(text)?.relative_tutte()?
        } else {
            parse_vld(text)?.jones()?
        };
        let expected = parse_poly(expected)?;
        let pass = got == expected;
        reports.push(CheckReport {
            name: name.replace(' ', "-"),
            instance: "builtin".into(),
            seed: None,
            size: None,
            pass,
            left: (!pass).then(|| got.to_string()),
            right: (!pass).then(|| expected.to_string()),
        });
    }
    for check in [Check::Main, Check::Identities, Check::Duality, Check::Bracket] {
        reports.extend(run_suite(check, 5, 1, 5)?);
    }
    Ok(report_outcome(&reports))
}
