//! Command-line front end. `run` takes the argument list and output streams
//! so it can be driven from tests; `main` only forwards the exit code.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::econ::{
    baseline_cost, optimize_settlement, telecom_budget, Baseline, NcfValue, ResidenceOption,
};
use crate::media::{feasible_media, profile, required_access, satisfied_tier, BandwidthBound, MediaClass};
use crate::reference::audit;
use crate::report::{cost_grid, emit_curves, CurveKind};
use crate::scenario::{parse_scenario, Scenario};
use crate::sim::{compare_architectures, run_traced, SimConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_IO: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "netcentric", version, about = "Telecommuting cost model and QoS session simulator")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Scenario file
    #[arg(long, global = true, value_name = "PATH")]
    scenario: Option<PathBuf>,
    /// Write the result here instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Override the simulation seed
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Cost,
    Gain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BaselineArg {
    InPlace,
    Relocation,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Monthly cost of every residence at every NCF
    Table3 {
        /// Emit the cells that differ from the published grid instead
        #[arg(long)]
        ledger: bool,
    },
    /// Cost or gain against distance, one curve per NCF
    Curves {
        #[arg(long, value_enum, default_value = "cost")]
        kind: Kind,
    },
    /// Cheapest residence at each NCF
    Optimize,
    /// Monthly amount that can go to telecom before moving stops paying off
    Budget {
        #[arg(long)]
        row: String,
        #[arg(long)]
        ncf: f64,
        #[arg(long, value_enum, default_value = "in-place")]
        baseline: BaselineArg,
    },
    /// Media classes the scenario's connection can carry
    Media {
        /// Treat the line as a guaranteed reservation
        #[arg(long)]
        guaranteed: bool,
        /// Over-provisioning factor for best-effort lines
        #[arg(long)]
        factor: Option<f64>,
    },
    /// Run the session simulator
    Simulate {
        /// Write one line per event here
        #[arg(long, value_name = "PATH")]
        trace: Option<PathBuf>,
        /// Write the settlement records here
        #[arg(long, value_name = "PATH")]
        billing: Option<PathBuf>,
    },
    /// CDN versus walled gardens on the same workload
    Compare,
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Invalid(_) => EXIT_INVALID,
            Failure::Io(_) => EXIT_IO,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Io(m) => m,
        }
    }
}

fn invalid(e: impl ToString) -> Failure {
    Failure::Invalid(e.to_string())
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli).and_then(|body| deliver(&cli.global, &body, out)) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

fn deliver(global: &Global, body: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match &global.out {
        Some(path) => write_file(path, body),
        None => out
            .write_all(body.as_bytes())
            .map_err(|e| Failure::Io(format!("standard output: {e}"))),
    }
}

fn write_file(path: &Path, body: &str) -> Result<(), Failure> {
    std::fs::write(path, body).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load(global: &Global) -> Result<Option<Scenario>, Failure> {
    match &global.scenario {
        None => Ok(None),
        Some(path) => parse_scenario(path).map(Some).map_err(|e| {
            let msg = format!("{}: {e}", path.display());
            if e.is_io() {
                Failure::Io(e.to_string())
            } else {
                Failure::Invalid(msg)
            }
        }),
    }
}

fn require_residences(scenario: Option<Scenario>) -> Result<Scenario, Failure> {
    match scenario {
        None => Err(invalid("this command needs --scenario with [residence] sections")),
        Some(s) if s.residences.is_empty() => Err(invalid("scenario has no [residence] sections")),
        Some(s) => Ok(s),
    }
}

fn expect_format(global: &Global, allowed: Format) -> Result<(), Failure> {
    match global.format {
        Some(f) if f != allowed => Err(invalid(format!(
            "this command writes {}",
            if allowed == Format::Csv { "csv" } else { "svg" }
        ))),
        _ => Ok(()),
    }
}

fn sim_config(global: &Global, scenario: Option<Scenario>) -> SimConfig {
    let mut config = scenario.and_then(|s| s.sim).unwrap_or_default();
    if let Some(seed) = global.seed {
        config.workload.seed = seed;
    }
    config
}

fn dispatch(cli: &Cli) -> Result<String, Failure> {
    let g = &cli.global;
    let scenario = load(g)?;
    match &cli.command {
        Command::Table3 { ledger } => {
            expect_format(g, Format::Csv)?;
            let s = require_residences(scenario)?;
            let grid = cost_grid(&s.residences, &s.ncf_grid, &s.cost_params);
            Ok(if *ledger {
                audit(&s.residences, &s.cost_params, &grid).to_csv()
            } else {
                grid.to_csv()
            })
        }
        Command::Curves { kind } => {
            expect_format(g, Format::Svg)?;
            let s = require_residences(scenario)?;
            let kind = match kind {
                Kind::Cost => CurveKind::CostVsDistance,
                Kind::Gain => CurveKind::GainVsDistance,
            };
            emit_curves(&s.residences, &s.ncf_grid, &s.cost_params, kind).map_err(invalid)
        }
        Command::Optimize => {
            expect_format(g, Format::Csv)?;
            let s = require_residences(scenario)?;
            optimize_csv(&s)
        }
        Command::Budget { row, ncf, baseline } => {
            expect_format(g, Format::Csv)?;
            let s = require_residences(scenario)?;
            let ncf = NcfValue::new(*ncf).map_err(invalid)?;
            let option: &ResidenceOption = s
                .residences
                .iter()
                .find(|r| &r.label == row)
                .ok_or_else(|| invalid(format!("no residence labelled `{row}`")))?;
            let kind = match baseline {
                BaselineArg::InPlace => Baseline::InPlace,
                BaselineArg::Relocation => Baseline::Relocation,
            };
            let base = baseline_cost(kind, &s.residences, option, &s.cost_params)
                .ok_or_else(|| invalid("no residence is available without telecommuting"))?;
            if !option.is_available_at(ncf) {
                return Err(invalid(format!("`{row}` is not available at NCF {}", ncf.value())));
            }
            let budget = telecom_budget(option, ncf, &s.cost_params, &base);
            Ok(format!("{}\n", budget.round_dollars()))
        }
        Command::Media { guaranteed, factor } => {
            expect_format(g, Format::Csv)?;
            let settings = scenario.as_ref().map(|s| s.media.clone()).unwrap_or_default();
            let sla = scenario.as_ref().map(|s| s.sla).unwrap_or_default();
            let factor = factor.unwrap_or(settings.overprovision);
            let guaranteed = *guaranteed || settings.guaranteed;
            let conn = &settings.connection;
            let set = feasible_media(conn, factor, &sla, guaranteed, &settings.policy).map_err(invalid)?;
            let applied = if guaranteed { 1.0 } else { factor };
            let tier = satisfied_tier(conn, &sla, &settings.policy.thresholds);
            let mut w = csv::Writer::from_writer(Vec::new());
            let row = |w: &mut csv::Writer<Vec<u8>>, r: [String; 5]| w.write_record(r).map_err(invalid);
            row(&mut w, ["media", "required_mbps", "qos_tier", "line_tier", "feasible"].map(String::from))?;
            for media in MediaClass::ALL {
                let need = required_access(media, applied, BandwidthBound::HighEnd).map_err(invalid)?;
                row(
                    &mut w,
                    [
                        media.to_string(),
                        need.to_string(),
                        format!("{:?}", profile(media).qos_tier),
                        if guaranteed { "Guaranteed".into() } else { format!("{tier:?}") },
                        set.contains(&media).to_string(),
                    ],
                )?;
            }
            String::from_utf8(w.into_inner().map_err(invalid)?).map_err(invalid)
        }
        Command::Simulate { trace, billing } => {
            expect_format(g, Format::Csv)?;
            let config = sim_config(g, scenario);
            let (report, events) = run_traced(&config).map_err(invalid)?;
            if let Some(path) = trace {
                let mut body = String::new();
                for e in &events {
                    body.push_str(&e.to_line());
                    body.push('\n');
                }
                write_file(path, &body)?;
            }
            if let Some(path) = billing {
                write_file(path, &report.ledger_csv())?;
            }
            Ok(report.to_csv())
        }
        Command::Compare => {
            expect_format(g, Format::Csv)?;
            let config = sim_config(g, scenario);
            compare_architectures(&config).map(|c| c.to_csv()).map_err(invalid)
        }
    }
}

fn optimize_csv(s: &Scenario) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["ncf", "label", "distance", "total"]).map_err(invalid)?;
    for &ncf in &s.ncf_grid {
        match optimize_settlement(&s.residences, ncf, &s.cost_params) {
            Some(best) => w.write_record([
                ncf.value().to_string(),
                best.option.label.clone(),
                best.option.distance.to_string(),
                best.cost.total.round_dollars().to_string(),
            ]),
            None => w.write_record([ncf.value().to_string(), "N/A".into(), "N/A".into(), "N/A".into()]),
        }
        .map_err(invalid)?;
    }
    String::from_utf8(w.into_inner().map_err(invalid)?).map_err(invalid)
}
