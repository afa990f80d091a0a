//! The `lieloop` command line.
//!
//! Exit codes: 0 on success, 1 when `--strict` is given and a verdict the
//! command depends on is refuted, 2 on input errors (parse, validation,
//! `d² ≠ 0`, word limit).

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::analyze::{analyze, AnalysisOptions, Status, Vocabulary};
use crate::dg::DifferentialTable;
use crate::ganea::{ganea_iterate, GaneaError};
use crate::present::{BuildOptions, Presentation, PresentedAlgebra, RelationDegrees, DEFAULT_MAX_WORDS};
use crate::schreier::{certify, Subalgebra, SubalgebraSpec};
use crate::tensor::LieExpr;

use super::parse::{parse_expr, parse_presentation, parse_presentation_with};
use super::{primes_bound, render};

#[derive(Debug, Parser)]
#[command(name = "lieloop", version, about = "Homology of free extensions of graded Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Presentation file.
    file: PathBuf,
    #[arg(long)]
    json: bool,
    /// Overrides the file's cutoff.
    #[arg(long)]
    cutoff: Option<u32>,
    /// Primes tested over a localized ring, comma separated.
    #[arg(long, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    /// Largest word basis materialized for one (dimension, degree) block.
    #[arg(long, env = "LIELOOP_MAX_WORDS", default_value_t = DEFAULT_MAX_WORDS)]
    max_words: u128,
    /// Exit 1 when a verdict the command relies on is refuted.
    #[arg(long)]
    strict: bool,
    /// Read the file as a cell attachment and report in loop-space terms.
    #[arg(long)]
    cells: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Freeness, inertness and semi-inertness verdicts with series.
    Analyze(Common),
    /// Hilbert series only.
    Hilbert(Common),
    /// Homology of the Lie complex in degrees 0 and 1.
    Homology {
        #[command(flatten)]
        common: Common,
        /// Homology of the whole enveloping complex instead.
        #[arg(long)]
        full: bool,
    },
    /// Iterates the killing construction on the file's attaching data.
    Ganea {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        steps: u32,
    },
    /// Reduced generators and the free-subalgebra certificate.
    Subalgebra {
        #[command(flatten)]
        common: Common,
        /// Generators separated by `;`.
        #[arg(long)]
        gens: String,
    },
    /// Primes a localized ring must invert for cells up to a dimension.
    PrimesBound {
        #[arg(long)]
        dim: u32,
    },
}

enum Failure {
    Input(String),
    Refuted(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => 2,
            Failure::Refuted(_) => 1,
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn load(c: &Common, mode: RelationDegrees) -> Result<Presentation, Failure> {
    let text = std::fs::read_to_string(&c.file).map_err(|e| Failure::Input(format!("{}: {e}", c.file.display())))?;
    let parsed = match mode {
        RelationDegrees::ZeroOnly if c.cells => super::compile_attachment(&text),
        RelationDegrees::ZeroOnly => parse_presentation(&text),
        _ => parse_presentation_with(&text, mode),
    };
    let mut p = parsed.map_err(|e| Failure::Input(format!("{}:{e}", c.file.display())))?;
    if let Some(n) = c.cutoff {
        p.cutoff = n;
    }
    Ok(p)
}

fn options(c: &Common) -> AnalysisOptions {
    AnalysisOptions {
        primes: c.primes.clone(),
        max_words: c.max_words,
        vocabulary: if c.cells { Vocabulary::Topological } else { Vocabulary::Algebraic },
    }
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let mut emit = |s: String| out.write_all(s.as_bytes()).map_err(input);
    match cli.command {
        Command::Analyze(c) => {
            let p = load(&c, RelationDegrees::ZeroOnly)?;
            let r = analyze(&p, &options(&c)).map_err(input)?;
            emit(if c.json { r.to_json() + "\n" } else { render::analysis_text(&r) })?;
            if c.strict && !r.verdicts.free.holds() {
                return Err(Failure::Refuted(format!("not free: {}", render::status_text(&r.verdicts.free))));
            }
        }
        Command::Hilbert(c) => {
            let p = load(&c, RelationDegrees::ZeroOnly)?;
            let r = analyze(&p, &options(&c)).map_err(input)?;
            emit(if c.json { render::series_json(&r) + "\n" } else { render::series_text(&r) })?;
        }
        Command::Homology { common: c, full } => {
            let p = load(&c, RelationDegrees::ZeroOnly)?;
            let working = match p.split_factors().map_err(input)? {
                Some(s) => s.marked,
                None => p,
            };
            let field = working.ring.fields(&[])[0];
            let max_degree = if full { None } else { Some(2) };
            let alg = PresentedAlgebra::new(&working, field, BuildOptions { max_words: c.max_words, max_degree })
                .map_err(input)?;
            let table = DifferentialTable::extend_derivation(&alg, &working).map_err(input)?;
            if full {
                let h = table.full_homology();
                emit(if c.json { render::full_homology_json(&h) + "\n" } else { render::full_homology_text(&h) })?;
            } else {
                table.require_extension(&working).map_err(input)?;
                let h = table.bigraded_homology();
                emit(if c.json { render::homology_json(&alg, &h) + "\n" } else { render::homology_text(&alg, &h) })?;
            }
        }
        Command::Ganea { common: c, steps } => {
            let p = load(&c, RelationDegrees::ZeroOnly)?;
            let (l0, s) = attaching_data(&p);
            let field = p.ring.fields(&[])[0];
            let states = match ganea_iterate(&l0, &s, steps, field, &options(&c)) {
                Ok(states) => states,
                Err(e @ GaneaError::FreenessRefuted(_)) if c.strict => return Err(Failure::Refuted(e.to_string())),
                Err(e) => return Err(input(e)),
            };
            emit(if c.json { render::ganea_json_lines(&states) } else { render::ganea_text(&states) })?;
            if c.strict && states.iter().any(|s| !s.free.holds()) {
                return Err(Failure::Refuted("a kernel is not free".into()));
            }
        }
        Command::Subalgebra { common: c, gens } => {
            let ambient = load(&c, RelationDegrees::Homogeneous)?;
            let generators = gens
                .split(';')
                .filter(|g| !g.trim().is_empty())
                .map(|g| parse_expr(g.trim(), &ambient.ring))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::Input(format!("--gens:{e}")))?;
            let field = ambient.ring.fields(&[])[0];
            let sub =
                Subalgebra::generate(&SubalgebraSpec { ambient, generators }, field, c.max_words).map_err(input)?;
            let reduced = sub.reduced_generators();
            let verdict = certify(&sub);
            emit(if c.json {
                render::subalgebra_json(&reduced, &sub.dims(), &verdict) + "\n"
            } else {
                render::subalgebra_text(&reduced, &sub.dims(), &verdict)
            })?;
            if c.strict && matches!(verdict.status, Status::Inapplicable { .. }) {
                return Err(Failure::Refuted(render::status_text(&verdict)));
            }
        }
        Command::PrimesBound { dim } => {
            let bound = primes_bound(dim).map_err(input)?;
            emit(format!("{bound}\n"))?;
        }
    }
    Ok(())
}

/// Splits an extension into its base and the images of its degree-1
/// generators.
pub fn attaching_data(p: &Presentation) -> (Presentation, Vec<LieExpr>) {
    let mut l0 = p.clone();
    let cells: Vec<String> = p.degree_one().map(|g| g.name.clone()).collect();
    l0.generators.retain(|g| g.degree == 0);
    l0.factors.clear();
    l0.differentials.clear();
    let s = p.differentials.iter().filter(|(name, _)| cells.contains(name)).map(|(_, e)| e.clone()).collect();
    (l0, s)
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code.
pub fn run_command<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match run(cli, out) {
        Ok(()) => 0,
        Err(f) => {
            let (Failure::Input(msg) | Failure::Refuted(msg)) = &f;
            let _ = writeln!(err, "error: {msg}");
            f.code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
