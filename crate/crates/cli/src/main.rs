use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context as _;
use clap::error::ErrorKind;
use clap::Parser;

use hyperpic::{emit, run, Document, Format, Mode, ReportScenario, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "hyperpic", version)]
#[command(about = "Certify that O(1) does not extend along the generating derived deformation of a hypersurface")]
struct Cli {
    /// Number of homogeneous coordinates minus one (X lives in P^n)
    #[arg(long)]
    n: Option<usize>,

    /// Polynomial text, e.g. "x0^5 + x1^5 + x2^5 + x3^5 + x4^5"
    #[arg(long, conflicts_with = "poly_file")]
    poly: Option<String>,

    /// File holding the polynomial; "-" reads stdin
    #[arg(long)]
    poly_file: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "check")]
    mode: Mode,

    /// Twist of the line bundle O(m)
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    m: i64,

    /// Truncation bound for Čech computations (default 4 in k3 mode, 2 otherwise)
    #[arg(long)]
    bound: Option<usize>,

    #[arg(long, value_enum, default_value = "text")]
    format: Format,

    /// Maximum S-pair reductions in Buchberger
    #[arg(long, default_value_t = 1_000_000)]
    step_cap: usize,

    /// Accept Pic = Z generated by O(1) for the underlying scheme
    #[arg(long)]
    assume_pic_z: bool,

    /// Deformation considered in report mode
    #[arg(long, value_enum, default_value = "generator")]
    scenario: ReportScenario,

    /// Rational multiple of the generating deformation (report mode)
    #[arg(long, allow_hyphen_values = true)]
    scale: Option<String>,

    /// Twist k of O(k) in the trivial-extension scenario
    #[arg(long, default_value_t = -3, allow_hyphen_values = true)]
    twist: i64,

    /// Shift s of O(k)[-s] in the trivial-extension scenario
    #[arg(long, default_value_t = 1)]
    shift: usize,

    /// Record wall-clock timings in the report
    #[arg(long)]
    timings: bool,
}

fn read_poly(cli: &Cli) -> anyhow::Result<Option<String>> {
    if let Some(p) = &cli.poly {
        return Ok(Some(p.clone()));
    }
    let Some(path) = &cli.poly_file else {
        return Ok(None);
    };
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .context("reading polynomial from stdin")?;
        return Ok(Some(s));
    }
    let s = std::fs::read_to_string(path)
        .with_context(|| format!("reading polynomial from {}", path.display()))?;
    Ok(Some(s))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(3),
            };
        }
    };
    let doc = match read_poly(&cli) {
        Ok(poly) => run(&RunConfig {
            n: cli.n,
            poly,
            mode: cli.mode,
            m: cli.m,
            bound: cli.bound,
            format: cli.format,
            step_cap: cli.step_cap,
            assume_pic_z: cli.assume_pic_z,
            scenario: cli.scenario,
            scale: cli.scale.clone(),
            twist: cli.twist,
            shift: cli.shift,
            timings: cli.timings,
        }),
        Err(e) => Document::input_error(cli.mode, format!("{e:#}")),
    };
    print!("{}", emit(&doc, cli.format));
    if doc.exit_code != 0 {
        eprintln!("hyperpic: {}", doc.messages.last().map(String::as_str).unwrap_or("no certificate"));
    }
    ExitCode::from(doc.exit_code as u8)
}
