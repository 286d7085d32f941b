//! Command-line front end. Every subcommand emits one table as CSV or JSON.
//!
//! Exit codes: 0 success, 1 numerical failure, 2 usage error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Number, Value};
use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use crate::error::Error;
use crate::experiments::{self, alpha_sweep, figure_data, scaling_check, table1, MarkerKind};
use crate::peaks::{resonance_report, ResonanceRecord};
use crate::phase::K_MIN;
use crate::poles::{bound_states, find_poles, PoleSearchConfig};
use crate::scattering::scatter_sample;
use crate::well::PotentialWell;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NUMERICAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Column names of `scan` output, stable across releases.
pub const SCAN_COLUMNS: [&str; 9] = [
    "k",
    "tau",
    "ell",
    "p_trap",
    "sigma",
    "sigma_theta",
    "sigma_phi",
    "theta_mod_pi",
    "phi_mod_pi",
];

#[derive(Debug, Parser)]
#[command(name = "squarewell", version, about = "s-wave scattering of the attractive square well")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Significant digits of every number.
    #[arg(long, default_value_t = 8, global = true, value_parser = clap::value_parser!(u8).range(1..=17))]
    digits: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct WellArgs {
    /// Well radius.
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    /// Well depth |V0|.
    #[arg(long, allow_negative_numbers = true)]
    v0: Option<f64>,
    /// Strength α; sets v0 = α²/(2a²) and needs --a.
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
}

#[derive(Debug, Args)]
struct RangeArgs {
    #[arg(long, default_value_t = 0.01, allow_negative_numbers = true)]
    kmin: f64,
    #[arg(long, default_value_t = 3.5, allow_negative_numbers = true)]
    kmax: f64,
    #[arg(long, default_value_t = experiments::DEFAULT_FIGURE_POINTS)]
    n: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample every scattering function on a uniform k grid.
    Scan {
        #[command(flatten)]
        well: WellArgs,
        #[command(flatten)]
        range: RangeArgs,
        /// Append rows marking l maxima and pole real parts (adds a `marker` column).
        #[arg(long)]
        markers: bool,
    },
    /// Resonance poles and bound states of the S-matrix in complex k.
    Poles {
        #[command(flatten)]
        well: WellArgs,
        #[arg(long, default_value_t = 4.0, allow_negative_numbers = true)]
        re_max: f64,
        #[arg(long, default_value_t = -2.0, allow_negative_numbers = true)]
        im_min: f64,
    },
    /// Bound states on the positive imaginary k axis.
    BoundStates {
        #[command(flatten)]
        well: WellArgs,
    },
    /// Peak positions of l, τ, P and σ_φ for every resonance up to --kmax.
    Report {
        #[command(flatten)]
        well: WellArgs,
        #[arg(long, default_value_t = 3.5, allow_negative_numbers = true)]
        kmax: f64,
    },
    /// First-resonance records of the seven reference wells.
    Table1,
    /// First maximum of l/2a across a range of strengths.
    Sweep {
        #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
        alpha_min: f64,
        #[arg(long, default_value_t = 60.0, allow_negative_numbers = true)]
        alpha_max: f64,
        #[arg(long, default_value_t = 0.05, allow_negative_numbers = true)]
        step: f64,
        /// Fixed radius; the depth follows from α.
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        a: f64,
    },
    /// Compare a well with its copy stretched by --factor.
    Scaling {
        #[command(flatten)]
        well: WellArgs,
        #[arg(long, allow_negative_numbers = true)]
        factor: f64,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(m) => Failure::Usage(m),
            Error::Numerical(m) => Failure::Numerical(m),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

impl WellArgs {
    fn build(&self) -> Result<PotentialWell, Failure> {
        let a = self.a.ok_or_else(|| usage("--a is required"))?;
        if !(a > 0.0) {
            return Err(usage(format!("--a must be positive, got {a}")));
        }
        match (self.v0, self.alpha) {
            (Some(_), Some(_)) => Err(usage("--v0 and --alpha are mutually exclusive")),
            (None, None) => Err(usage("one of --v0 or --alpha is required")),
            (Some(v0), None) if !(v0 > 0.0) => Err(usage(format!("--v0 must be positive, got {v0}"))),
            (None, Some(alpha)) if !(alpha > 0.0) => {
                Err(usage(format!("--alpha must be positive, got {alpha}")))
            }
            (Some(v0), None) => Ok(PotentialWell::new(a, v0)?),
            (None, Some(alpha)) => Ok(PotentialWell::from_alpha(alpha, a)?),
        }
    }
}

impl RangeArgs {
    fn validate(&self) -> Result<(), Failure> {
        if !(self.kmin >= K_MIN) {
            return Err(usage(format!("--kmin must be at least {K_MIN}, got {}", self.kmin)));
        }
        if !(self.kmax > self.kmin) || !self.kmax.is_finite() {
            return Err(usage(format!(
                "--kmax must exceed --kmin, got [{}, {}]",
                self.kmin, self.kmax
            )));
        }
        if self.n < 3 {
            return Err(usage(format!("--n must be at least 3, got {}", self.n)));
        }
        Ok(())
    }
}

/// Table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Num)
    }
}

/// Rectangular output with named columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn render(&self, format: Format, digits: usize) -> String {
        match format {
            Format::Csv => self.to_csv(digits),
            Format::Json => self.to_json(digits),
        }
    }

    fn to_csv(&self, digits: usize) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Num(x) => format_number(*x, digits),
                    Cell::Int(i) => i.to_string(),
                    Cell::Bool(b) => b.to_string(),
                    Cell::Text(s) => s.clone(),
                    Cell::Empty => String::new(),
                })
                .collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    fn to_json(&self, digits: usize) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    let v = match cell {
                        Cell::Num(x) => format_number(*x, digits)
                            .parse::<f64>()
                            .ok()
                            .and_then(Number::from_f64)
                            .map_or(Value::Null, Value::Number),
                        Cell::Int(i) => Value::from(*i),
                        Cell::Bool(b) => Value::Bool(*b),
                        Cell::Text(s) => Value::String(s.clone()),
                        Cell::Empty => Value::Null,
                    };
                    obj.insert(name.clone(), v);
                }
                Value::Object(obj)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&Value::Array(rows)).expect("JSON values are finite");
        s.push('\n');
        s
    }
}

/// `x` with `digits` significant digits: positional notation for moderate
/// magnitudes, scientific otherwise.
pub fn format_number(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let exp: i32 = sci[sci.find('e').map_or(sci.len(), |i| i + 1)..].parse().unwrap_or(0);
    if exp < -4 || exp >= digits as i32 {
        return sci;
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    format!("{:.*}", decimals, x)
}

fn record_columns() -> Vec<&'static str> {
    vec![
        "n",
        "k_star",
        "star_boundary",
        "k_tau",
        "tau_boundary",
        "k_p",
        "k_sigma",
        "kappa",
        "modulus",
        "ell_ratio",
        "phi_at_kstar",
    ]
}

fn record_cells(r: &ResonanceRecord) -> Vec<Cell> {
    vec![
        Cell::Int(r.n as i64),
        r.k_star.into(),
        Cell::Bool(r.star_boundary),
        r.k_tau.into(),
        Cell::Bool(r.tau_boundary),
        r.k_p.into(),
        r.k_sigma.into(),
        r.kappa.into(),
        r.modulus.into(),
        r.ell_ratio.into(),
        r.phi_at_kstar.into(),
    ]
}

fn execute(command: &Command) -> Result<Table, Failure> {
    match command {
        Command::Scan { well, range, markers } => {
            let well = well.build()?;
            range.validate()?;
            let data = figure_data(&well, range.kmin, range.kmax, range.n)?;
            let mut columns = SCAN_COLUMNS.to_vec();
            if *markers {
                columns.push("marker");
            }
            let mut table = Table::new(&columns);
            for r in &data.rows {
                let mut row: Vec<Cell> = [
                    r.k,
                    r.tau,
                    r.ell,
                    r.p_trap,
                    r.sigma,
                    r.sigma_theta,
                    r.sigma_phi,
                    r.theta_mod_pi,
                    r.phi_mod_pi,
                ]
                .map(Cell::Num)
                .to_vec();
                if *markers {
                    row.push(Cell::Empty);
                }
                table.rows.push(row);
            }
            if *markers {
                for m in &data.markers {
                    let s = scatter_sample(&well, m.k)?;
                    let mut row: Vec<Cell> = [
                        s.k,
                        s.tau,
                        s.ell,
                        s.p_trap,
                        s.sigma,
                        s.sigma_theta,
                        s.sigma_phi,
                        s.theta.rem_euclid(std::f64::consts::PI),
                        s.phi.rem_euclid(std::f64::consts::PI),
                    ]
                    .map(Cell::Num)
                    .to_vec();
                    row.push(Cell::Text(
                        match m.kind {
                            MarkerKind::EllPeak => "ell_peak",
                            MarkerKind::PoleKappa => "pole_kappa",
                        }
                        .into(),
                    ));
                    table.rows.push(row);
                }
            }
            Ok(table)
        }
        Command::Poles { well, re_max, im_min } => {
            let well = well.build()?;
            if !(*re_max > 0.0) {
                return Err(usage(format!("--re-max must be positive, got {re_max}")));
            }
            if !(*im_min < 0.0) {
                return Err(usage(format!("--im-min must be negative, got {im_min}")));
            }
            let cfg = PoleSearchConfig {
                im_min: *im_min,
                ..PoleSearchConfig::for_well(&well, *re_max)
            };
            let mut table = Table::new(&["re", "im", "kappa", "modulus", "kind", "residual"]);
            for p in find_poles(&well, &cfg)? {
                table.rows.push(vec![
                    p.value.re.into(),
                    p.value.im.into(),
                    p.kappa.into(),
                    p.modulus.into(),
                    Cell::Text(format!("{:?}", p.kind).to_lowercase()),
                    p.residual.into(),
                ]);
            }
            Ok(table)
        }
        Command::BoundStates { well } => {
            let well = well.build()?;
            let mut table = Table::new(&["index", "kappa", "energy"]);
            for (i, kappa) in bound_states(&well).into_iter().enumerate() {
                table
                    .rows
                    .push(vec![Cell::Int(i as i64 + 1), kappa.into(), (-0.5 * kappa * kappa).into()]);
            }
            Ok(table)
        }
        Command::Report { well, kmax } => {
            let well = well.build()?;
            if !(*kmax > K_MIN) || !kmax.is_finite() {
                return Err(usage(format!("--kmax must exceed {K_MIN}, got {kmax}")));
            }
            let mut table = Table::new(&record_columns());
            for r in resonance_report(&well, *kmax)? {
                table.rows.push(record_cells(&r));
            }
            Ok(table)
        }
        Command::Table1 => {
            let mut columns = vec!["well", "a", "v0", "alpha", "qb"];
            columns.extend(record_columns().into_iter().skip(1));
            let mut table = Table::new(&columns);
            for row in table1()? {
                let mut cells = vec![
                    Cell::Text(row.well_label.clone()),
                    row.a.into(),
                    row.v0.into(),
                    row.alpha.into(),
                    row.qb.into(),
                ];
                cells.extend(record_cells(&row.record).into_iter().skip(1));
                table.rows.push(cells);
            }
            Ok(table)
        }
        Command::Sweep {
            alpha_min,
            alpha_max,
            step,
            a,
        } => {
            if !(*alpha_min > 0.0 && alpha_max > alpha_min) {
                return Err(usage(format!(
                    "--alpha-min/--alpha-max must satisfy 0 < min < max, got [{alpha_min}, {alpha_max}]"
                )));
            }
            if !(*step > 0.0) {
                return Err(usage(format!("--step must be positive, got {step}")));
            }
            if !(*a > 0.0) {
                return Err(usage(format!("--a must be positive, got {a}")));
            }
            let n = ((alpha_max - alpha_min) / step + 1e-9).floor() as usize + 1;
            let hi = alpha_min + (n - 1) as f64 * step;
            let points = if n < 2 {
                alpha_sweep(*alpha_min, *alpha_max, 2, *a)?
            } else {
                alpha_sweep(*alpha_min, hi, n, *a)?
            };
            let mut table = Table::new(&["alpha", "qb", "k_star_1", "ell_ratio_1", "boundary"]);
            for p in points {
                table.rows.push(vec![
                    p.alpha.into(),
                    (p.alpha / std::f64::consts::PI + 0.5).into(),
                    p.k_star_1.into(),
                    p.ell_ratio_1.into(),
                    Cell::Bool(p.boundary),
                ]);
            }
            Ok(table)
        }
        Command::Scaling { well, factor } => {
            let well = well.build()?;
            if !(*factor > 0.0) {
                return Err(usage(format!("--factor must be positive, got {factor}")));
            }
            let r = scaling_check(&well, *factor)?;
            let mut table = Table::new(&[
                "factor",
                "samples",
                "max_phi_diff",
                "max_sigma_phi_diff",
                "max_p_trap_diff",
                "max_ell_rel_diff",
                "max_tau_rel_diff",
            ]);
            table.rows.push(vec![
                r.factor.into(),
                Cell::Int(r.samples as i64),
                r.max_phi_diff.into(),
                r.max_sigma_phi_diff.into(),
                r.max_p_trap_diff.into(),
                r.max_ell_rel_diff.into(),
                r.max_tau_rel_diff.into(),
            ]);
            Ok(table)
        }
    }
}

/// Runs the CLI on `args` (including the program name), writing the dataset
/// to `out` (unless `--output` is given) and diagnostics to `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let table = match execute(&cli.command) {
        Ok(t) => t,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}\n\nFor more information, try '--help'.");
            return EXIT_USAGE;
        }
        Err(Failure::Numerical(m)) => {
            let _ = writeln!(err, "error: {m}");
            return EXIT_NUMERICAL;
        }
    };
    let text = table.render(cli.format, cli.digits as usize);
    let written = match &cli.output {
        Some(path) => File::create(path).and_then(|mut f| f.write_all(text.as_bytes())),
        None => out.write_all(text.as_bytes()),
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: cannot write output: {e}");
            EXIT_NUMERICAL
        }
    }
}

/// Runs the CLI against the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
