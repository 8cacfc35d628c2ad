use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use carlitz_verify::{emit, run, CheckConfig, Status, VerifyError};

/// Runs named identity checks and reports residual valuations.
#[derive(Parser, Debug)]
#[command(name = "verify", version)]
struct Cli {
    /// Check to run; `--list` prints the names.
    #[arg(long)]
    check: Option<String>,
    /// Run every check applicable to the chosen field.
    #[arg(long)]
    all: bool,
    /// Print the registered check names and exit.
    #[arg(long)]
    list: bool,
    /// Flat key=value file; command-line flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    e: Option<String>,
    /// Degree of the coefficient field over F_q.
    #[arg(long)]
    ext: Option<String>,
    /// Prime coefficients, constant term first, e.g. `1,1,1`.
    #[arg(long)]
    prime: Option<String>,
    #[arg(long)]
    prime2: Option<String>,
    #[arg(long = "root-index")]
    root_index: Option<String>,
    /// Degree parameter of the polynomial identities.
    #[arg(long)]
    degree: Option<String>,
    #[arg(long)]
    prec: Option<String>,
    #[arg(long)]
    tcap: Option<String>,
    #[arg(long)]
    degcap: Option<String>,
    #[arg(long)]
    samples: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Scale of the large-|z|_ℑ samples.
    #[arg(long = "imag-scale", allow_hyphen_values = true)]
    imag_scale: Option<String>,
    /// json, tsv or text.
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn config(cli: &Cli) -> Result<CheckConfig, VerifyError> {
    let mut cfg = match &cli.config {
        Some(path) => CheckConfig::parse_file(&std::fs::read_to_string(path)?)?,
        None => CheckConfig::default(),
    };
    let flags: [(&str, &Option<String>); 15] = [
        ("check", &cli.check),
        ("p", &cli.p),
        ("e", &cli.e),
        ("ext", &cli.ext),
        ("prime", &cli.prime),
        ("prime2", &cli.prime2),
        ("root-index", &cli.root_index),
        ("degree", &cli.degree),
        ("prec", &cli.prec),
        ("tcap", &cli.tcap),
        ("degcap", &cli.degcap),
        ("samples", &cli.samples),
        ("seed", &cli.seed),
        ("imag-scale", &cli.imag_scale),
        ("format", &cli.format),
    ];
    for (k, v) in flags {
        if let Some(v) = v {
            cfg.set(k, v)?;
        }
    }
    if cli.all {
        cfg.all = true;
        cfg.check = None;
    } else if cli.check.is_some() {
        cfg.all = false;
    }
    if let Some(o) = &cli.out {
        cfg.out = Some(o.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.list {
        for e in carlitz_verify::entries() {
            println!("{}\t{}", e.name, e.statement);
        }
        return ExitCode::SUCCESS;
    }
    let cfg = match config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("verify: {e}");
            return ExitCode::from(2);
        }
    };
    let reports = match run(&cfg) {
        Ok(r) => r,
        Err(e @ (VerifyError::ConfigInvalid(_) | VerifyError::UnknownCheck(_) | VerifyError::Io(_))) => {
            eprintln!("verify: {e}");
            return ExitCode::from(2);
        }
        Err(e) => {
            eprintln!("verify: {e}");
            return ExitCode::from(1);
        }
    };
    let text = emit(&reports, cfg.format);
    match &cfg.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("verify: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if reports.iter().all(|r| r.status == Status::Pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
