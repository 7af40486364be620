use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mickelsson::cli::{parse_suite, run, run_suite, CheckConfig, CheckReport};
use mickelsson::exact::Rational;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "mickelsson", version, about = "Exact checks of Yangian and degenerate affine Hecke actions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a single check.
    Verify {
        check: String,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        /// Number of tensor slots.
        #[arg(long = "N")]
        slots: Option<usize>,
        #[arg(long)]
        deg: Option<u32>,
        #[arg(long)]
        order: Option<usize>,
        /// Comma-separated rationals, e.g. 1/3,0
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        mu: Option<Vec<Rational>>,
        #[arg(long, value_delimiter = ',')]
        nu: Option<Vec<u32>>,
        #[arg(long, value_delimiter = ',')]
        lambda: Option<Vec<u32>>,
        /// One-line images of a permutation, e.g. 2,1
        #[arg(long, value_delimiter = ',')]
        sigma: Option<Vec<usize>>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long = "d-max")]
        d_max: Option<u32>,
        #[arg(long)]
        qcap: Option<u32>,
        #[arg(long)]
        cases: Option<usize>,
        /// natural, verma or both
        #[arg(long)]
        module: Option<String>,
        #[arg(long)]
        mutation: Option<String>,
        /// Also write the report to this file.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Report elapsed_ms as 0 so output is byte-for-byte reproducible.
        #[arg(long)]
        no_timing: bool,
    },
    /// Run every check listed in a suite file: {"checks": [...]}.
    Suite {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        no_timing: bool,
    },
}

fn emit<T: Serialize>(value: &T, out: Option<&PathBuf>) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    println!("{text}");
    if let Some(path) = out {
        std::fs::write(path, text + "\n").map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(())
}

fn strip_timing(r: &mut CheckReport, no_timing: bool) {
    if no_timing {
        r.elapsed_ms = 0;
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (value, code) = match cli.cmd {
        Cmd::Verify {
            check,
            m,
            n,
            l,
            slots,
            deg,
            order,
            mu,
            nu,
            lambda,
            sigma,
            seed,
            samples,
            d_max,
            qcap,
            cases,
            module,
            mutation,
            json,
            no_timing,
        } => {
            let cfg = CheckConfig {
                check,
                m,
                n,
                l,
                slots,
                deg,
                order,
                mu,
                nu,
                lambda,
                sigma,
                seed,
                samples,
                d_max,
                qcap,
                cases,
                module,
                mutation,
            };
            if let Err(e) = cfg.validate() {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            let mut report = run(&cfg);
            strip_timing(&mut report, no_timing);
            let code = report.exit_code();
            (emit(&report, json.as_ref()), code)
        }
        Cmd::Suite { file, jobs, json, no_timing } => {
            let suite = match std::fs::read_to_string(&file)
                .map_err(|e| format!("{}: {e}", file.display()))
                .and_then(|t| parse_suite(&t).map_err(|e| e.to_string()))
            {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            match run_suite(&suite, jobs) {
                Ok(mut report) => {
                    for r in &mut report.reports {
                        strip_timing(r, no_timing);
                    }
                    let code = report.exit_code();
                    (emit(&report, json.as_ref()), code)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
        }
    };
    if let Err(e) = value {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
