use std::io::Write as _;
use std::net::{IpAddr, Ipv4Addr, SocketAddr};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use reflector_cli::api::router;
use reflector_cli::commands::{calibrate, emit, read_json, solve_layout, CalibrateArgs};
use reflector_core::calibration::PAPER_ATTENUATOR_DB;
use reflector_core::campaign::{
    improvement_curve, run_campaign, simulate, write_campaign_outputs, ScenarioConfig,
    SimulationRequest,
};
use reflector_core::geometry::{LayoutDocument, Point2, PAPER_PANEL_WIDTH};

#[derive(Parser)]
#[command(name = "reflector", version, about = "60 GHz corridor reflector simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the panel orientation for a corridor layout.
    Solve {
        /// Layout JSON; the paper corridor when omitted.
        #[arg(long)]
        layout: Option<PathBuf>,
        #[arg(long, default_value_t = PAPER_PANEL_WIDTH)]
        panel_width: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trace and evaluate one transmitter position.
    Simulate {
        /// Full request JSON, as accepted by POST /api/simulate.
        #[arg(long, conflicts_with_all = ["config", "tx", "no_panel", "alpha_deg"])]
        request: Option<PathBuf>,
        /// Scenario config JSON; the paper scenario when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Transmitter position in meters.
        #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_hyphen_values = true)]
        tx: Option<Vec<f64>>,
        #[arg(long)]
        no_panel: bool,
        /// Panel angle override in degrees.
        #[arg(long)]
        alpha_deg: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every transmitter position with and without the panel.
    Campaign {
        /// Scenario config JSON; the paper scenario when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Directory for results.csv, results.json and the two series files.
        #[arg(long)]
        out: PathBuf,
    },
    /// De-embed a measured sweep using a back-to-back reference.
    Calibrate {
        #[arg(long)]
        measured: PathBuf,
        #[arg(long)]
        back_to_back: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = PAPER_ATTENUATOR_DB)]
        attenuator_db: f64,
        #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
        g_tx_dbi: f64,
        #[arg(long, default_value_t = 22.5, allow_hyphen_values = true)]
        g_rx_dbi: f64,
    },
    /// Serve the JSON API.
    Serve {
        #[arg(long, default_value_t = IpAddr::V4(Ipv4Addr::LOCALHOST))]
        host: IpAddr,
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
}

fn load_config(path: Option<&PathBuf>) -> Result<ScenarioConfig> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            ScenarioConfig::from_json(&text).with_context(|| format!("parsing {}", p.display()))
        }
        None => Ok(ScenarioConfig::paper()),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

async fn serve(addr: SocketAddr) -> Result<()> {
    let listener = tokio::net::TcpListener::bind(addr)
        .await
        .with_context(|| format!("binding {addr}"))?;
    println!("listening on http://{}", listener.local_addr()?);
    std::io::stdout().flush()?;
    axum::serve(listener, router())
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve { layout, panel_width, out } => {
            let doc = match &layout {
                Some(p) => read_json::<LayoutDocument>(p)?,
                None => LayoutDocument::paper(),
            };
            let report = solve_layout(&doc, panel_width)?;
            emit(&to_json(&report)?, out.as_deref())
        }
        Command::Simulate { request, config, tx, no_panel, alpha_deg, out } => {
            let req = match request {
                Some(p) => read_json::<SimulationRequest>(&p)?,
                None => {
                    let Some(tx) = tx else {
                        bail!("either --request or --tx X Y is required");
                    };
                    SimulationRequest {
                        config: load_config(config.as_ref())?,
                        tx: Point2::new(tx[0], tx[1]),
                        panel_enabled: !no_panel,
                        alpha_override_deg: alpha_deg,
                    }
                }
            };
            let result = simulate(&req)?;
            emit(&to_json(&result)?, out.as_deref())
        }
        Command::Campaign { config, out } => {
            let cfg = load_config(config.as_ref())?;
            let result = run_campaign(&cfg)?;
            std::fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            write_campaign_outputs(&result, &out)?;
            let o = &result.orientation;
            println!(
                "alpha {:.3} deg, beta {:.3} deg, gamma {:.3} deg",
                o.alpha_deg, o.beta_deg, o.gamma_deg
            );
            println!("{:>3} {:>6} {:>4} {:>10} {:>10} {:>8}", "tx", "y_m", "los", "pl_off_db", "pl_on_db", "gain_db");
            for r in &result.records {
                println!(
                    "{:>3} {:>6.2} {:>4} {:>10.2} {:>10.2} {:>8.2}",
                    r.index, r.tx.y, if r.los { "yes" } else { "no" }, r.pl_without_db, r.pl_with_db, r.improvement_db
                );
            }
            let curve = improvement_curve(&result);
            if let (Some(i), Some(db)) = (curve.argmax, curve.max_db) {
                println!("largest improvement {db:.2} dB at Tx{i}");
            }
            println!("wrote {}", out.display());
            Ok(())
        }
        Command::Calibrate { measured, back_to_back, out, attenuator_db, g_tx_dbi, g_rx_dbi } => {
            let trace = calibrate(&CalibrateArgs {
                measured: &measured,
                back_to_back: &back_to_back,
                out: &out,
                attenuator_db,
                g_tx_dbi,
                g_rx_dbi,
            })?;
            println!("wrote {} samples to {}", trace.values.len(), out.display());
            Ok(())
        }
        Command::Serve { host, port } => {
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(serve(SocketAddr::new(host, port)))
        }
    }
}

fn main() -> std::process::ExitCode {
    match run(Cli::parse()) {
        Ok(()) => std::process::ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::ExitCode::FAILURE
        }
    }
}
