use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fva_core::report::{
    euler_tool, gp_info, parse_f, parse_weight, render, render_sweep, sweep, verify, weyl_dim_tool,
    Format, Target, VerifyOptions,
};
use fva_core::Error;

/// Batch verifier for Kodaira vanishing counterexamples on `SL(n)/P` and
/// for the terminal, non-CM quotient `(G_m)^3 / (Z/2)`.
#[derive(Parser)]
#[command(name = "fva", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a verification: thm21, thm31, dim3 or yasuda.
    Verify {
        target: String,
        #[arg(long)]
        p: Option<u64>,
        /// Representation dimension (yasuda only).
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, default_value = "md")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Drop the timing field so output is reproducible byte for byte.
        #[arg(long)]
        seedless: bool,
        /// dim3: recompute the second blow-up at all seven points.
        #[arg(long)]
        all_charts: bool,
    },
    /// Both families for every prime up to --max-p.
    Sweep {
        #[arg(long)]
        max_p: u64,
        #[arg(long, default_value = "md")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weyl dimension of an irreducible `SL(n)` module.
    WeylDim {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Euler characteristic of a line bundle on `SL(n)/B`.
    Euler {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long, default_value = "md")]
        format: String,
    },
    /// Dimension, Picard basis, `-K` and Fano verdict of `G/P_f`.
    GpInfo {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        f: String,
        #[arg(long, default_value = "md")]
        format: String,
    },
}

enum Outcome {
    Pass(String),
    Fail(String),
}

fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::Usage(_) | Error::Precondition(_) | Error::NotPrime(_)
    )
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json_pretty(v: serde_json::Value) -> String {
    serde_json::to_string_pretty(&v).unwrap_or_default() + "\n"
}

fn run(cmd: Cmd) -> Result<Outcome, Error> {
    match cmd {
        Cmd::Verify {
            target,
            p,
            n,
            format,
            out,
            seedless,
            all_charts,
        } => {
            let target: Target = target.parse()?;
            let fmt: Format = format.parse()?;
            let report = verify(
                target,
                VerifyOptions {
                    p,
                    n,
                    all_charts,
                    seedless,
                },
            )?;
            let text = render(&report, fmt)?;
            emit(&text, out.as_ref())?;
            Ok(if report.passed() {
                Outcome::Pass(String::new())
            } else {
                Outcome::Fail(report.construction)
            })
        }
        Cmd::Sweep { max_p, format, out } => {
            let fmt: Format = format.parse()?;
            let table = sweep(max_p)?;
            emit(&render_sweep(&table, fmt)?, out.as_ref())?;
            Ok(if table.passed() {
                Outcome::Pass(String::new())
            } else {
                Outcome::Fail("sweep".into())
            })
        }
        Cmd::WeylDim { n, weight } => {
            let d = weyl_dim_tool(n, &parse_weight(&weight)?)?;
            Ok(Outcome::Pass(format!("{d}\n")))
        }
        Cmd::Euler {
            n,
            p,
            weight,
            format,
        } => {
            let (chi, profile) = euler_tool(n, p, &parse_weight(&weight)?)?;
            Ok(Outcome::Pass(match format.parse::<Format>()? {
                Format::Json => json_pretty(serde_json::json!({
                    "chi": chi.to_string(),
                    "profile": profile,
                })),
                Format::Md => format!("{chi}\n"),
                Format::Dot => return Err(Error::Usage("euler has no graph to emit".into())),
            }))
        }
        Cmd::GpInfo { n, p, f, format } => {
            let info = gp_info(n, p, parse_f(&f)?)?;
            Ok(Outcome::Pass(match format.parse::<Format>()? {
                Format::Json => json_pretty(serde_json::to_value(&info).unwrap_or_default()),
                Format::Md => format!(
                    "dim = {}\npicard basis = [{}]\n-K = {}\nfano = {}\ndivisibility = {}\n",
                    info.dim,
                    info.picard_basis.join(", "),
                    info.anticanonical,
                    info.fano,
                    info.divisibility
                ),
                Format::Dot => return Err(Error::Usage("gp-info has no graph to emit".into())),
            }))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(Outcome::Pass(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::Fail(what)) => {
            eprintln!("fva: {what}: assertion failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("fva: {e}");
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
    }
}
