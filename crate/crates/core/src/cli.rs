//! Command-line front end. Exit codes: 0 success, 1 a checked property
//! failed, 2 bad input.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::bottleneck::bottleneck_distance;
use crate::diagram::{mobius_inversion, PersistenceDiagram};
use crate::error::{Error, Result};
use crate::formats::{
    read_diagram_source, read_json, write_json_atomic, ComplexFile, DiagramFile, DiagramSource, InterleavingFile,
    MatchingFile, ModuleFile,
};
use crate::grocat::Backend;
use crate::interleave::{interpolate, verify_interleaving};
use crate::pipeline::{homology_module, FilteredComplex};
use crate::suites::{run_all, Scale};

#[derive(Debug, Parser)]
#[command(name = "grodiag", version, about = "Group-valued persistence diagrams and bottleneck distances")]
pub struct Cli {
    /// Field characteristic for homology computed from complexes.
    #[arg(long = "field-char", default_value_t = 2, global = true)]
    pub field_char: u64,
    /// Homology degree for complexes.
    #[arg(long, default_value_t = 0, global = true)]
    pub degree: usize,
    /// Seed for the random suites.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Diagram of a module file, or of the sublevel homology of a complex file.
    Diagram {
        input: PathBuf,
        /// Filtration column used for complex files.
        #[arg(long, default_value = "value")]
        column: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bottleneck distance between two diagram files.
    Bottleneck {
        a: PathBuf,
        b: PathBuf,
        /// Write an optimal matching here.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Check an interleaving file against two module files.
    VerifyInterleave { f: PathBuf, g: PathBuf, data: PathBuf },
    /// Module interpolating between two interleaved modules.
    Interpolate {
        f: PathBuf,
        g: PathBuf,
        data: PathBuf,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check d_B of two filtrations of one complex against max |f - g|.
    StabilityCheck {
        complex: PathBuf,
        #[arg(long, default_value = "value")]
        f: String,
        #[arg(long, default_value = "value2")]
        g: String,
    },
    /// Run the property suites.
    Selftest {
        /// Reduced case counts.
        #[arg(long)]
        quick: bool,
    },
}

/// What a command produced: text for standard output and whether its check held.
struct Outcome {
    text: String,
    ok: bool,
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Result<String> {
    match out {
        Some(path) => {
            write_json_atomic(path, value)?;
            Ok(format!("wrote {}", path.display()))
        }
        None => serde_json::to_string_pretty(value).map_err(|e| Error::Format(e.to_string())),
    }
}

fn load_module(path: &Path) -> Result<crate::pmodule::ConstructibleModule> {
    read_json::<ModuleFile>(path)?
        .to_module()
        .map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn complex_diagram(k: &FilteredComplex, degree: usize, p: u64) -> Result<PersistenceDiagram> {
    if k.is_empty() {
        return Ok(PersistenceDiagram::new(Backend::Vect));
    }
    Ok(mobius_inversion(&homology_module(k, degree, p)?))
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let done = |text: String| Outcome { text, ok: true };
    match &cli.command {
        Command::Diagram { input, column, out } => {
            let diagram = match read_diagram_source(input)? {
                DiagramSource::Module(m) => mobius_inversion(&m.to_module()?),
                DiagramSource::Complex(c) => complex_diagram(&c.filtration(column)?, cli.degree, cli.field_char)?,
            };
            Ok(done(emit(&DiagramFile::from_diagram(&diagram), out.as_deref())?))
        }
        Command::Bottleneck { a, b, witness } => {
            let y1 = read_json::<DiagramFile>(a)?.to_diagram()?;
            let y2 = read_json::<DiagramFile>(b)?.to_diagram()?;
            let r = bottleneck_distance(&y1, &y2)?;
            if let Some(path) = witness {
                write_json_atomic(path, &MatchingFile::from_matching(r.distance, &r.witness))?;
            }
            Ok(done(r.distance.to_string()))
        }
        Command::VerifyInterleave { f, g, data } => {
            let (fm, gm) = (load_module(f)?, load_module(g)?);
            let data = read_json::<InterleavingFile>(data)?.to_data(&fm, &gm)?;
            let violations = verify_interleaving(&fm, &gm, &data)?;
            if violations.is_empty() {
                return Ok(done(format!("valid {}-interleaving", data.epsilon())));
            }
            let lines: Vec<String> = violations.iter().map(ToString::to_string).collect();
            Ok(Outcome {
                text: format!("{} violations\n{}", lines.len(), lines.join("\n")),
                ok: false,
            })
        }
        Command::Interpolate { f, g, data, t, out } => {
            let (fm, gm) = (load_module(f)?, load_module(g)?);
            let data = read_json::<InterleavingFile>(data)?.to_data(&fm, &gm)?;
            let k = interpolate(&fm, &gm, &data, *t)?;
            Ok(done(emit(&ModuleFile::from_module(&k), out.as_deref())?))
        }
        Command::StabilityCheck { complex, f, g } => {
            let file = read_json::<ComplexFile>(complex)?;
            let (kf, kg) = (file.filtration(f)?, file.filtration(g)?);
            let bound = kf
                .simplices()
                .iter()
                .zip(kg.simplices())
                .map(|(a, b)| (a.value - b.value).abs())
                .fold(0.0, f64::max);
            let a = complex_diagram(&kf, cli.degree, cli.field_char)?;
            let b = complex_diagram(&kg, cli.degree, cli.field_char)?;
            let d = bottleneck_distance(&a, &b)?.distance;
            let ok = d <= bound;
            let verdict = if ok { "holds" } else { "VIOLATED" };
            Ok(Outcome {
                text: format!("d_B = {d}\nbound {bound}\nstability {verdict}"),
                ok,
            })
        }
        Command::Selftest { quick } => {
            let scale = if *quick { Scale::quick() } else { Scale::full() };
            let reports = run_all(cli.seed, scale);
            let ok = reports.iter().all(|r| r.passed());
            let text = reports.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n");
            Ok(Outcome { text, ok })
        }
    }
}

/// Runs one invocation, writing to the given streams; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(stdout, "{e}")
            } else {
                write!(stderr, "{e}")
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let _ = writeln!(stdout, "{}", outcome.text);
            if outcome.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}
