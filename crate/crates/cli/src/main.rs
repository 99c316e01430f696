use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use schemelink::commands;
use schemelink::input::{load_scheme, parse_field};
use schemelink::output::{Format, Report};
use schemelink::{exit_code, selftest};
use schemelink_core::{CbpMethod, Field, Scheme};

/// Zero-dimensional schemes in projective space: Hilbert functions, liaison,
/// Cayley-Bacharach tests and the Dedekind different.
#[derive(Parser)]
#[command(name = "schemelink", version)]
struct Cli {
    /// Base field override: Q or Fp:<p>.
    #[arg(long, global = true, value_parser = field_arg)]
    field: Option<Field>,
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Stop Groebner basis computations above this degree.
    #[arg(long, global = true)]
    cap: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Degree, Hilbert function, Gorenstein and complete intersection flags.
    Analyze { scheme: PathBuf },
    /// The residual scheme of X in W, with the linkage report.
    Residual {
        #[arg(short = 'w', long = "within")]
        w: PathBuf,
        scheme: PathBuf,
    },
    /// Linkage invariants for X inside W.
    LinkReport {
        #[arg(short = 'w', long = "within")]
        w: PathBuf,
        scheme: PathBuf,
    },
    /// Cayley-Bacharach tests, as a profile over d or at a single d.
    Cbp {
        #[arg(short = 'w', long = "within")]
        w: Option<PathBuf>,
        #[arg(long)]
        d: Option<u32>,
        /// canonical, piece, colon, separators or annihilator.
        #[arg(long, value_parser = method_arg)]
        method: Option<CbpMethod>,
        scheme: PathBuf,
    },
    /// Minimal and standard separators at each point.
    Separators {
        #[arg(long)]
        point: Option<usize>,
        scheme: PathBuf,
    },
    /// Degree of every point.
    PointDegrees { scheme: PathBuf },
    /// Hilbert functions of the complementary module and the Dedekind different.
    Dedekind { scheme: PathBuf },
    /// A random complete intersection containing X.
    CiEnvelope {
        /// Comma-separated degrees of the forms.
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<u32>>,
        /// Accept envelopes whose residual meets X.
        #[arg(long)]
        allow_shared: bool,
        /// Also write the envelope as a raw-mode scheme file.
        #[arg(long)]
        out: Option<PathBuf>,
        scheme: PathBuf,
    },
    /// Run the bundled golden examples.
    Selftest,
}

fn field_arg(s: &str) -> Result<Field, String> {
    parse_field(s).map_err(|e| e.to_string())
}

fn method_arg(s: &str) -> Result<CbpMethod, String> {
    CbpMethod::from_name(s).ok_or_else(|| format!("unknown method {s:?}"))
}

struct Loader {
    field: Option<Field>,
    cap: Option<u32>,
}

impl Loader {
    fn load(&self, path: &Path) -> Result<Scheme> {
        load_scheme(path, self.field, self.cap)
    }
}

/// The report and whether the command itself succeeded.
fn run(cli: &Cli) -> Result<(Report, bool)> {
    let l = Loader { field: cli.field, cap: cli.cap };
    let report = match &cli.verb {
        Verb::Analyze { scheme } => commands::analyze(&l.load(scheme)?)?,
        Verb::Residual { w, scheme } => commands::residual(l.load(w)?, l.load(scheme)?)?,
        Verb::LinkReport { w, scheme } => commands::link_report(l.load(w)?, l.load(scheme)?)?,
        Verb::Cbp { w, d, method, scheme } => {
            let w = w.as_deref().map(|p| l.load(p)).transpose()?;
            commands::cbp(l.load(scheme)?, w, *d, *method)?
        }
        Verb::Separators { point, scheme } => commands::separators(&l.load(scheme)?, *point)?,
        Verb::PointDegrees { scheme } => commands::point_degrees(&l.load(scheme)?)?,
        Verb::Dedekind { scheme } => commands::dedekind(&l.load(scheme)?, cli.seed)?,
        Verb::CiEnvelope { degrees, allow_shared, out, scheme } => {
            let (report, file) = commands::envelope(&l.load(scheme)?, cli.seed, degrees.as_deref(), *allow_shared)?;
            if let Some(out) = out {
                let text = serde_json::to_string_pretty(&file)? + "\n";
                fs::write(out, text).with_context(|| format!("writing {}", out.display()))?;
            }
            report
        }
        Verb::Selftest => return selftest::run(),
    };
    Ok((report, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, ok)) => {
            print!("{}", report.emit(cli.format));
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
