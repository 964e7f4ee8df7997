//! Command-line surface: enumeration tables, formal-degree reports,
//! Galois-twist verification campaigns, Hecke relation checks, and exact
//! exports.
//!
//! Exit codes: 0 = all verdicts positive, 1 = a mathematical verdict was
//! falsified, 2 = usage or guard error. Engine panics abort with their own
//! diagnostics and never masquerade as verdicts.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use klform::campaign::{
    enumerate_to_csv, run_degree, run_enumerate, run_export, run_galois_check, run_hecke_verify,
    CampaignConfig,
};
use klform::cyclotomic::{rat_from_str, GaloisAutomorphism, Rat};
use klform::parameters::{
    adjoint_projection, steinberg_point, type_a_central_torsion, ParameterWire, TorusPoint,
};
use klform::root_datum::{RootDatum, RootDatumSpec};

#[derive(Parser)]
#[command(
    name = "klform",
    about = "Exact Kazhdan-Lusztig parameter enumeration, Galois twists, and formal degrees",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArg {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate valid parameters with discreteness and centralizer columns.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        level: u32,
        /// Output format: json or csv.
        #[arg(long, default_value = "json")]
        format: String,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Formal-degree report for one parameter.
    Degree {
        /// Root-datum shorthand like A1-sc, A2-ad (simply-connected side).
        #[arg(long = "type", conflicts_with = "param")]
        datum: Option<String>,
        /// Use the Steinberg point of the chosen datum.
        #[arg(long, requires = "datum")]
        steinberg: bool,
        /// Central torsion index (type A simply-connected data only).
        #[arg(long, default_value_t = 0, requires = "datum")]
        central_twist: i64,
        /// A GL_n parameter as inline JSON or a path to a JSON file.
        #[arg(long)]
        param: Option<String>,
        /// q value (rational); repeatable.
        #[arg(long = "q", required = true)]
        q0: Vec<String>,
        #[arg(long)]
        bound: i64,
        #[arg(long, default_value_t = 1)]
        rho_dim: u32,
        /// Check these Galois exponents at the torsion level (repeatable);
        /// use --gamma-all for every exponent coprime to the level.
        #[arg(long = "gamma")]
        gammas: Vec<u32>,
        #[arg(long)]
        gamma_all: bool,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Verify Galois-twist invariants over an enumerated parameter corpus.
    GaloisCheck {
        #[arg(long, conflicts_with = "config")]
        n: Option<usize>,
        #[arg(long, conflicts_with = "config")]
        level: Option<u32>,
        #[arg(long, requires = "n")]
        bound: Option<i64>,
        #[arg(long = "q", requires = "n")]
        q0: Vec<String>,
        /// Campaign configuration file (JSON), alternative to the flags.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Check the defining relations of the affine Hecke algebra.
    HeckeVerify {
        #[arg(long = "type")]
        datum: String,
        #[arg(long, default_value_t = 3)]
        bound: i64,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Dump all exact values for an enumerated corpus.
    Export {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        level: u32,
        #[arg(long)]
        bound: i64,
        #[arg(long = "q", default_value = "2")]
        q0: String,
        #[command(flatten)]
        output: OutputArg,
    },
}

fn emit(output: &OutputArg, content: &str) -> std::io::Result<()> {
    match &output.out {
        Some(path) => std::fs::write(path, content),
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

fn parse_datum(shorthand: &str) -> klform::Result<RootDatum> {
    RootDatum::build(&RootDatumSpec::parse_shorthand(shorthand)?)
}

fn parse_q_list(q0: &[String]) -> klform::Result<Vec<Rat>> {
    q0.iter().map(|s| rat_from_str(s)).collect()
}

/// Resolve the (datum, torus point, label) for the degree subcommand.
fn degree_target(
    datum: &Option<String>,
    steinberg: bool,
    central_twist: i64,
    param: &Option<String>,
) -> klform::Result<(RootDatum, TorusPoint)> {
    if let Some(shorthand) = datum {
        let rd = parse_datum(shorthand)?;
        if !steinberg {
            return Err(klform::Error::InvalidParameter(
                "--type currently requires --steinberg (optionally with --central-twist)".into(),
            ));
        }
        let st = steinberg_point(&rd)?;
        let s = if central_twist != 0 {
            if !rd.name().starts_with('A') || !rd.name().ends_with("-sc") {
                return Err(klform::Error::InvalidParameter(
                    "--central-twist is defined for simply-connected type A data".into(),
                ));
            }
            let torsion = type_a_central_torsion(rd.rank(), central_twist);
            TorusPoint::new(torsion, st.q_exponents().to_vec())?
        } else {
            st
        };
        return Ok((rd, s));
    }
    if let Some(param) = param {
        let text = if std::path::Path::new(param).exists() {
            std::fs::read_to_string(param)
                .map_err(|e| klform::Error::InvalidParameter(format!("cannot read {param}: {e}")))?
        } else {
            param.clone()
        };
        let wire: ParameterWire = serde_json::from_str(&text)
            .map_err(|e| klform::Error::InvalidParameter(format!("bad parameter JSON: {e}")))?;
        let p = wire.to_parameter()?;
        if !p.is_valid() {
            return Err(klform::Error::InvalidParameter(format!(
                "parameter fails Ad(s)N = qN at entry {:?}",
                p.violation()
            )));
        }
        return adjoint_projection(&p);
    }
    Err(klform::Error::InvalidParameter(
        "degree requires either --type or --param".into(),
    ))
}

fn run(cli: Cli) -> klform::Result<i32> {
    match cli.command {
        Command::Enumerate { n, level, format, output } => {
            let table = run_enumerate(n, level)?;
            let content = match format.as_str() {
                "json" => serde_json::to_string_pretty(&table).expect("serialization"),
                "csv" => enumerate_to_csv(&table),
                other => {
                    return Err(klform::Error::InvalidParameter(format!(
                        "unknown format {other:?} (expected json or csv)"
                    )))
                }
            };
            emit(&output, &content).map_err(io_error)?;
            Ok(0)
        }
        Command::Degree {
            datum,
            steinberg,
            central_twist,
            param,
            q0,
            bound,
            rho_dim,
            gammas,
            gamma_all,
            tol,
            output,
        } => {
            let (rd, s) = degree_target(&datum, steinberg, central_twist, &param)?;
            let q0s = parse_q_list(&q0)?;
            let level = s.level();
            let gamma_list: Vec<GaloisAutomorphism> = if gamma_all {
                GaloisAutomorphism::all(level)
            } else {
                gammas
                    .iter()
                    .map(|&k| GaloisAutomorphism::new(level, k))
                    .collect::<klform::Result<_>>()?
            };
            let doc = run_degree(&rd, &s, &q0s, bound, rho_dim, &gamma_list, tol)?;
            emit(&output, &serde_json::to_string_pretty(&doc).expect("serialization"))
                .map_err(io_error)?;
            Ok(if doc.all_ok { 0 } else { 1 })
        }
        Command::GaloisCheck { n, level, bound, q0, config, tol, output } => {
            let config = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| {
                        klform::Error::InvalidParameter(format!("cannot read config: {e}"))
                    })?;
                    serde_json::from_str(&text).map_err(|e| {
                        klform::Error::InvalidParameter(format!("bad config JSON: {e}"))
                    })?
                }
                None => {
                    let (Some(n), Some(level), Some(bound)) = (n, level, bound) else {
                        return Err(klform::Error::InvalidParameter(
                            "galois-check needs --n, --level and --bound (or --config)".into(),
                        ));
                    };
                    CampaignConfig {
                        sizes: vec![n],
                        torsion_levels: vec![level],
                        gammas: None,
                        height_bound: bound,
                        q0: if q0.is_empty() { vec!["2".into()] } else { q0 },
                        numeric_tolerance: tol,
                        rho_dim: 1,
                    }
                }
            };
            let report = run_galois_check(&config)?;
            emit(&output, &serde_json::to_string_pretty(&report).expect("serialization"))
                .map_err(io_error)?;
            Ok(if report.all_ok { 0 } else { 1 })
        }
        Command::HeckeVerify { datum, bound, output } => {
            let rd = parse_datum(&datum)?;
            let doc = run_hecke_verify(&rd, bound)?;
            emit(&output, &serde_json::to_string_pretty(&doc).expect("serialization"))
                .map_err(io_error)?;
            Ok(if doc.all_ok { 0 } else { 1 })
        }
        Command::Export { n, level, bound, q0, output } => {
            let config = CampaignConfig {
                sizes: vec![n],
                torsion_levels: vec![level],
                gammas: None,
                height_bound: bound,
                q0: vec![q0],
                numeric_tolerance: 1e-8,
                rho_dim: 1,
            };
            let doc = run_export(&config)?;
            emit(&output, &serde_json::to_string_pretty(&doc).expect("serialization"))
                .map_err(io_error)?;
            Ok(0)
        }
    }
}

fn io_error(e: std::io::Error) -> klform::Error {
    klform::Error::InvalidParameter(format!("io error: {e}"))
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
