use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kappa_ads::suites::{self, Format, Regime, RunConfig, Suite, TableKind};
use kappa_ads::Error;

#[derive(Parser)]
#[command(name = "kads", version, about = "Verify the twisted kappa-AdS bialgebra and quantum group")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegimeArg {
    Ads,
    Ds,
    Minkowski,
    Symbolic,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Md,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableArg {
    VectorFields,
    PlBrackets,
    Ambient,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run verification suites and print a report.
    Run {
        /// Suite to run; repeat for several. Defaults to every suite.
        #[arg(long = "suite", value_name = "NAME")]
        suites: Vec<String>,
        /// Truncation order of the symbolic suites.
        #[arg(long, default_value_t = 4)]
        order: i32,
        /// Override a numeric tolerance, e.g. `pl=1e-10`.
        #[arg(long = "tol", value_name = "NAME=VALUE")]
        tol: Vec<String>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, value_enum, default_value = "symbolic")]
        regime: RegimeArg,
        /// Magnitude of eta for the ads and ds regimes.
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long, default_value_t = kappa_ads::poisson::DEFAULT_Z)]
        z: f64,
        #[arg(long, default_value_t = kappa_ads::poisson::DEFAULT_THETA)]
        theta: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Emit `null` timings so reports are reproducible byte for byte.
        #[arg(long)]
        no_timing: bool,
    },
    /// Print the canonical form of a catalogued formula.
    Expand {
        /// Formula id such as `dual.x0x1`, `coproduct.twisted.bicross.P1` or `qword:d a`.
        id: String,
        #[arg(long, default_value_t = 4)]
        order: i32,
    },
    /// Print numeric sample tables.
    Table {
        #[arg(value_enum)]
        kind: TableArg,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, value_enum, default_value = "symbolic")]
        regime: RegimeArg,
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long, value_enum, default_value = "json")]
        format: TableFormat,
    },
}

fn regime(r: RegimeArg) -> Regime {
    match r {
        RegimeArg::Ads => Regime::Ads,
        RegimeArg::Ds => Regime::Ds,
        RegimeArg::Minkowski => Regime::Minkowski,
        RegimeArg::Symbolic => Regime::Symbolic,
    }
}

fn csv(v: &serde_json::Value) -> String {
    let mut out = String::new();
    let mut header: Option<Vec<String>> = None;
    for block in v.as_array().into_iter().flatten() {
        let eta = &block["eta"];
        for row in block["rows"].as_array().into_iter().flatten() {
            let Some(obj) = row.as_object() else { continue };
            let keys: Vec<String> = obj.keys().cloned().collect();
            if header.is_none() {
                out.push_str(&format!("eta_re,eta_im,{}\n", keys.join(",")));
                header = Some(keys.clone());
            }
            let cells: Vec<String> = keys
                .iter()
                .map(|k| match &obj[k] {
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string().replace(',', ";"),
                })
                .collect();
            out.push_str(&format!("{},{},{}\n", eta[0], eta[1], cells.join(",")));
        }
    }
    out
}

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("kads: {}", e);
            ExitCode::from(2)
        }
    }
}

fn real_main() -> Result<u8, Error> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Run { suites: names, order, tol, seed, regime: r, eta, z, theta, format, out, no_timing } => {
            let mut cfg = RunConfig { order, seed, regime: regime(r), eta, z, theta, timing: !no_timing, ..Default::default() };
            if !names.is_empty() {
                cfg.suites = names
                    .iter()
                    .map(|n| Suite::from_name(n).ok_or_else(|| Error::Config(format!("unknown suite `{}`", n))))
                    .collect::<Result<_, _>>()?;
            }
            for t in &tol {
                cfg.set_tol(t)?;
            }
            cfg.format = match format {
                FormatArg::Json => Format::Json,
                FormatArg::Md => Format::Md,
                FormatArg::Text => Format::Text,
            };
            let report = suites::run(&cfg)?;
            let text = report.render(cfg.format);
            match out {
                Some(p) => fs::write(&p, text).map_err(|e| Error::Config(format!("{}: {}", p.display(), e)))?,
                None => print!("{}", text),
            }
            Ok(report.exit_code() as u8)
        }
        Cmd::Expand { id, order } => {
            println!("{}", suites::expand(&id, order)?);
            Ok(0)
        }
        Cmd::Table { kind, seed, count, regime: r, eta, format } => {
            let cfg = RunConfig { regime: regime(r), eta, ..Default::default() };
            let kind = match kind {
                TableArg::VectorFields => TableKind::VectorFields,
                TableArg::PlBrackets => TableKind::PlBrackets,
                TableArg::Ambient => TableKind::Ambient,
            };
            let v = suites::table(kind, seed, count, &cfg)?;
            match format {
                TableFormat::Json => println!("{}", serde_json::to_string_pretty(&v).expect("table serializes")),
                TableFormat::Csv => print!("{}", csv(&v)),
            }
            Ok(0)
        }
    }
}
