//! Command-line surface: basis tables, Gram matrices, projections of
//! sampled spectra, and kernel time traces, written as CSV or JSON.
//!
//! Output is deterministic: fixed row order, floats at 17 significant
//! digits (round-trip safe), no timestamps. Identical configuration and
//! input produce byte-identical files.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::basis::{c_multipolar, enumerate_basis, ScaleConfig};
use crate::error::{Error, Result};
use crate::hilbert::{
    energy, gauss_laguerre_rule, photon_number, QuadratureRule, SpectralChannel, MAX_ORDER,
    MIN_ORDER,
};
use crate::projection::{project, residual};
use crate::timedomain::{wavelet_scan, KernelKind, KernelSpec};

/// Top-level command-line configuration.
#[derive(Parser, Debug)]
#[command(
    name = "polybasis",
    version,
    about = "Countable-basis toolkit for free electromagnetic fields"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tabulate radial profiles c_nj(k) over a wavenumber grid
    #[command(name = "basis-table")]
    BasisTable(BasisTableArgs),
    /// Gram matrix of basis vectors under the ∫dk k scalar product
    Gram(GramArgs),
    /// Expand a sampled spectrum in the basis and report diagnostics
    Project(ProjectArgs),
    /// Time traces of regular, incoming, and outgoing kernels
    Timetrace(TimetraceArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceKind {
    Regular,
    Incoming,
    Outgoing,
    /// all three kinds interleaved, with a split-identity residual column
    All,
}

#[derive(Args, Debug)]
pub struct BasisTableArgs {
    /// Reference wavenumber k0 [1/m]
    #[arg(long, default_value_t = 1.0)]
    pub k0: f64,
    /// Principal numbers n, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<u32>,
    /// Angular momenta j, comma separated; every (n, j) pair must be admissible
    #[arg(long, value_delimiter = ',', required = true)]
    pub j: Vec<u32>,
    /// Lower edge of the k grid [1/m]
    #[arg(long = "k-min", default_value_t = 0.0)]
    pub k_min: f64,
    /// Upper edge of the k grid [1/m]; defaults to 10·k0
    #[arg(long = "k-max")]
    pub k_max: Option<f64>,
    /// Number of k samples
    #[arg(long = "k-points", default_value_t = 100)]
    pub k_points: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Output file path
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct GramArgs {
    /// Reference wavenumber k0 [1/m]
    #[arg(long, default_value_t = 1.0)]
    pub k0: f64,
    /// Largest principal number n
    #[arg(long = "n-max")]
    pub n_max: u32,
    /// Quadrature order
    #[arg(long, default_value_t = 200)]
    pub order: usize,
    /// Helicities to include (+1, -1)
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true,
          default_values_t = [-1i8, 1])]
    pub lambda: Vec<i8>,
    /// Keep only indices with this j
    #[arg(long)]
    pub j: Option<u32>,
    /// Keep only indices with this m
    #[arg(long, allow_negative_numbers = true)]
    pub m: Option<i32>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Output file path
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct ProjectArgs {
    /// Input spectrum: CSV with columns (j, m, lambda, k, re, im), sampled
    /// at the nodes of the effective rule (order, alpha·k0)
    pub input: PathBuf,
    /// Reference wavenumber k0 [1/m]
    #[arg(long, default_value_t = 1.0)]
    pub k0: f64,
    /// Truncation order of the expansion
    #[arg(long = "n-max")]
    pub n_max: u32,
    /// Quadrature order
    #[arg(long, default_value_t = 200)]
    pub order: usize,
    /// Dilatation parameter: expands the alpha-dilated field, realized by
    /// projecting the input at the effective scale alpha·k0
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Output file path
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct TimetraceArgs {
    /// Reference wavenumber [1/m]; time-domain kernels require k0 = 1
    #[arg(long, default_value_t = 1.0)]
    pub k0: f64,
    /// Principal number n
    #[arg(long)]
    pub n: u32,
    /// Angular momentum j
    #[arg(long)]
    pub j: u32,
    /// Partial wave l, one of j-1, j, j+1
    #[arg(long)]
    pub l: u32,
    /// Radius r [m]
    #[arg(long)]
    pub r: f64,
    /// Kernel kind
    #[arg(long, value_enum, default_value_t = TraceKind::Regular)]
    pub kind: TraceKind,
    /// First ct value [m]
    #[arg(long = "ct-min", allow_negative_numbers = true)]
    pub ct_min: f64,
    /// Last ct value [m] (inclusive up to rounding)
    #[arg(long = "ct-max", allow_negative_numbers = true)]
    pub ct_max: f64,
    /// Grid step in ct [m]
    #[arg(long = "ct-step", default_value_t = 0.05)]
    pub ct_step: f64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Output file path
    #[arg(long)]
    pub out: PathBuf,
}

/// Runs the selected subcommand.
pub fn run(config: &RunConfig) -> Result<()> {
    match &config.command {
        Command::BasisTable(a) => cmd_basis_table(a),
        Command::Gram(a) => cmd_gram(a),
        Command::Project(a) => cmd_project(a),
        Command::Timetrace(a) => cmd_timetrace(a),
    }
}

/// 17 significant digits; round-trips through f64 parsing and is
/// locale-independent.
fn fmt_f(x: f64) -> String {
    format!("{x:.16e}")
}

fn config_err(field: &'static str, msg: impl Into<String>) -> Error {
    Error::Config {
        field,
        msg: msg.into(),
    }
}

fn check_k0(k0: f64) -> Result<()> {
    if !k0.is_finite() || k0 <= 0.0 {
        return Err(config_err("k0", format!("must be positive and finite, got {k0}")));
    }
    Ok(())
}

fn check_order(order: usize) -> Result<()> {
    if !(MIN_ORDER..=MAX_ORDER).contains(&order) {
        return Err(config_err(
            "order",
            format!("must lie in [{MIN_ORDER}, {MAX_ORDER}], got {order}"),
        ));
    }
    Ok(())
}

/// Writes the basis-table file: rows (n, j, k, c_nj(k)) for every requested
/// pair over the grid.
pub fn cmd_basis_table(args: &BasisTableArgs) -> Result<()> {
    check_k0(args.k0)?;
    let scale = ScaleConfig::with_k0(args.k0)?;

    let mut ns = args.n.clone();
    ns.sort_unstable();
    ns.dedup();
    let mut js = args.j.clone();
    js.sort_unstable();
    js.dedup();
    if ns.is_empty() {
        return Err(config_err("n", "at least one n is required"));
    }
    if js.is_empty() {
        return Err(config_err("j", "at least one j is required"));
    }
    for &n in &ns {
        for &j in &js {
            if n < 2 || j < 1 || j > n - 1 {
                return Err(config_err(
                    "j",
                    format!("pair (n={n}, j={j}) is inadmissible; need n >= 2, 1 <= j <= n-1"),
                ));
            }
        }
    }

    let k_max = args.k_max.unwrap_or(10.0 * args.k0);
    if !args.k_min.is_finite() || args.k_min < 0.0 {
        return Err(config_err("k-min", format!("must be >= 0, got {}", args.k_min)));
    }
    if !k_max.is_finite() || k_max < args.k_min {
        return Err(config_err("k-max", format!("must be >= k-min, got {k_max}")));
    }
    if args.k_points < 1 {
        return Err(config_err("k-points", "at least one k sample is required"));
    }
    let grid: Vec<f64> = if args.k_points == 1 {
        vec![args.k_min]
    } else {
        let h = (k_max - args.k_min) / (args.k_points - 1) as f64;
        (0..args.k_points).map(|i| args.k_min + i as f64 * h).collect()
    };

    let mut rows = Vec::new();
    for &n in &ns {
        for &j in &js {
            for &k in &grid {
                rows.push((n, j, k, c_multipolar(n, j, k, &scale)?));
            }
        }
    }

    let text = match args.format {
        OutputFormat::Csv => {
            let mut s = String::from("n,j,k [1/m],c_nj [m]\n");
            for (n, j, k, c) in &rows {
                let _ = writeln!(s, "{n},{j},{},{}", fmt_f(*k), fmt_f(*c));
            }
            s
        }
        OutputFormat::Json => {
            let mut s = String::from("{\n  \"command\": \"basis-table\",\n");
            let _ = writeln!(s, "  \"k0\": {},", fmt_f(args.k0));
            s.push_str("  \"rows\": [\n");
            for (i, (n, j, k, c)) in rows.iter().enumerate() {
                let comma = if i + 1 == rows.len() { "" } else { "," };
                let _ = writeln!(
                    s,
                    "    {{\"n\": {n}, \"j\": {j}, \"k\": {}, \"c\": {}}}{comma}",
                    fmt_f(*k),
                    fmt_f(*c)
                );
            }
            s.push_str("  ]\n}\n");
            s
        }
    };
    std::fs::write(&args.out, text)?;
    Ok(())
}

/// Writes the Gram matrix over the enumerated indices plus a summary of the
/// largest deviations from the identity.
pub fn cmd_gram(args: &GramArgs) -> Result<()> {
    check_k0(args.k0)?;
    check_order(args.order)?;
    if args.n_max < 2 {
        return Err(config_err("n-max", format!("must be >= 2, got {}", args.n_max)));
    }
    let lambdas: Vec<i8> = {
        let mut ls = args.lambda.clone();
        ls.retain(|&l| l == 1 || l == -1);
        if ls.is_empty() {
            return Err(config_err("lambda", "helicities must include +1 or -1"));
        }
        ls
    };

    let scale = ScaleConfig::with_k0(args.k0)?;
    let rule = gauss_laguerre_rule(args.order, args.k0)?;
    let indices = enumerate_basis(args.n_max, &lambdas, args.j, args.m);
    if indices.is_empty() {
        return Err(config_err(
            "n-max",
            "no admissible indices survive the filters".to_string(),
        ));
    }

    // radial profiles depend on (n, j) only; cache them on the nodes
    let mut profiles: BTreeMap<(u32, u32), Vec<f64>> = BTreeMap::new();
    for idx in &indices {
        profiles.entry((idx.n, idx.j)).or_insert(
            rule.nodes()
                .iter()
                .map(|&k| c_multipolar(idx.n, idx.j, k, &scale))
                .collect::<Result<Vec<f64>>>()?,
        );
    }

    let entry = |a: &crate::basis::BasisIndex, b: &crate::basis::BasisIndex| -> f64 {
        if (a.j, a.m, a.lambda) != (b.j, b.m, b.lambda) {
            return 0.0;
        }
        let pa = &profiles[&(a.n, a.j)];
        let pb = &profiles[&(b.n, b.j)];
        rule.weights()
            .iter()
            .zip(pa)
            .zip(pb)
            .map(|((&w, &x), &y)| w * x * y)
            .sum()
    };

    let mut max_off: f64 = 0.0;
    let mut max_diag_dev: f64 = 0.0;
    let mut body = String::new();
    let total = indices.len() * indices.len();
    let mut written = 0usize;
    for a in &indices {
        for b in &indices {
            let v = entry(a, b);
            if a == b {
                max_diag_dev = max_diag_dev.max((v - 1.0).abs());
            } else {
                max_off = max_off.max(v.abs());
            }
            written += 1;
            match args.format {
                OutputFormat::Csv => {
                    let _ = writeln!(
                        body,
                        "{},{},{},{},{},{},{},{},{}",
                        a.n,
                        a.j,
                        a.m,
                        a.lambda,
                        b.n,
                        b.j,
                        b.m,
                        b.lambda,
                        fmt_f(v)
                    );
                }
                OutputFormat::Json => {
                    let comma = if written == total { "" } else { "," };
                    let _ = writeln!(
                        body,
                        "    {{\"n\": {}, \"j\": {}, \"m\": {}, \"lambda\": {}, \
                         \"n_bar\": {}, \"j_bar\": {}, \"m_bar\": {}, \"lambda_bar\": {}, \
                         \"value\": {}}}{comma}",
                        a.n, a.j, a.m, a.lambda, b.n, b.j, b.m, b.lambda,
                        fmt_f(v)
                    );
                }
            }
        }
    }

    let text = match args.format {
        OutputFormat::Csv => format!(
            "n,j,m,lambda,n_bar,j_bar,m_bar,lambda_bar,value\n{body}\
             # summary: max_off_diagonal={}, max_diagonal_deviation={}\n",
            fmt_f(max_off),
            fmt_f(max_diag_dev)
        ),
        OutputFormat::Json => format!(
            "{{\n  \"command\": \"gram\",\n  \"k0\": {},\n  \"n_max\": {},\n  \
             \"order\": {},\n  \"entries\": [\n{body}  ],\n  \"summary\": {{\
             \"max_off_diagonal\": {}, \"max_diagonal_deviation\": {}}}\n}}\n",
            fmt_f(args.k0),
            args.n_max,
            args.order,
            fmt_f(max_off),
            fmt_f(max_diag_dev)
        ),
    };
    std::fs::write(&args.out, text)?;
    Ok(())
}

/// Column layout of an input spectrum file.
const SPECTRUM_COLUMNS: [&str; 6] = ["j", "m", "lambda", "k", "re", "im"];

/// Strips a bracketed unit annotation: "k [1/m]" -> "k".
fn normalize_header_cell(cell: &str) -> String {
    let base = cell.split('[').next().unwrap_or(cell);
    base.trim().to_ascii_lowercase()
}

fn parse_int<T: std::str::FromStr>(cell: &str, column: &str, line: usize) -> Result<T> {
    cell.trim().parse::<T>().map_err(|_| Error::Parse {
        line,
        msg: format!("column \"{column}\": invalid integer {:?}", cell.trim()),
    })
}

fn parse_float(cell: &str, column: &str, line: usize) -> Result<f64> {
    let v: f64 = cell.trim().parse().map_err(|_| Error::Parse {
        line,
        msg: format!("column \"{column}\": invalid number {:?}", cell.trim()),
    })?;
    if !v.is_finite() {
        return Err(Error::Parse {
            line,
            msg: format!("column \"{column}\": value must be finite, got {v}"),
        });
    }
    Ok(v)
}

/// Parses a spectrum CSV with columns (j, m, lambda, k, re, im), header
/// optional and bracketed unit suffixes ignored, and matches every channel's
/// samples onto the rule's nodes.
fn parse_spectrum_csv(text: &str, rule: &QuadratureRule) -> Result<Vec<SpectralChannel>> {
    // map column name -> position; defaults to the canonical order
    let mut columns: Vec<usize> = (0..6).collect();
    let mut rows: BTreeMap<(i8, u32, i32), Vec<(f64, Complex64)>> = BTreeMap::new();
    let mut saw_data = false;

    for (line_no, raw) in text.lines().enumerate() {
        let line_no = line_no + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();

        if !saw_data {
            let is_header = cells
                .iter()
                .any(|c| c.trim().parse::<f64>().is_err() && !c.trim().is_empty());
            if is_header {
                let mut positions = [None::<usize>; 6];
                for (pos, cell) in cells.iter().enumerate() {
                    let name = normalize_header_cell(cell);
                    match SPECTRUM_COLUMNS.iter().position(|&c| c == name) {
                        Some(ci) => {
                            if positions[ci].is_some() {
                                return Err(Error::Parse {
                                    line: line_no,
                                    msg: format!("duplicate column \"{name}\""),
                                });
                            }
                            positions[ci] = Some(pos);
                        }
                        None => {
                            return Err(Error::Parse {
                                line: line_no,
                                msg: format!("unknown column {:?}", cell.trim()),
                            })
                        }
                    }
                }
                for (ci, pos) in positions.iter().enumerate() {
                    match pos {
                        Some(p) => columns[ci] = *p,
                        None => {
                            return Err(Error::Parse {
                                line: line_no,
                                msg: format!("missing column \"{}\"", SPECTRUM_COLUMNS[ci]),
                            })
                        }
                    }
                }
                saw_data = true;
                continue;
            }
            saw_data = true;
        }

        let width = columns.iter().max().copied().unwrap_or(5) + 1;
        if cells.len() < width {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected {width} comma-separated values, got {}", cells.len()),
            });
        }
        let j: u32 = parse_int(cells[columns[0]], "j", line_no)?;
        let m: i32 = parse_int(cells[columns[1]], "m", line_no)?;
        let lambda: i8 = parse_int(cells[columns[2]], "lambda", line_no)?;
        let k = parse_float(cells[columns[3]], "k", line_no)?;
        let re = parse_float(cells[columns[4]], "re", line_no)?;
        let im = parse_float(cells[columns[5]], "im", line_no)?;
        SpectralChannel::new(j, m, lambda, Vec::new()).map_err(|e| Error::Parse {
            line: line_no,
            msg: e.to_string(),
        })?;
        rows.entry((lambda, j, m))
            .or_default()
            .push((k, Complex64::new(re, im)));
    }

    let mut channels = Vec::new();
    for ((lambda, j, m), mut samples) in rows {
        samples.sort_by(|a, b| a.0.total_cmp(&b.0));
        if samples.len() != rule.order() {
            return Err(Error::contract(format!(
                "channel (j={j}, m={m}, lambda={lambda}) has {} samples but the rule \
                 has order {}; supply one row per node",
                samples.len(),
                rule.order()
            )));
        }
        let mut values = Vec::with_capacity(samples.len());
        for (i, ((k, v), &node)) in samples.iter().zip(rule.nodes()).enumerate() {
            if (k - node).abs() > 1e-10 * node {
                return Err(Error::contract(format!(
                    "channel (j={j}, m={m}, lambda={lambda}) sample {i} sits at \
                     k={k} but the rule node is {node}; spectra must be sampled on \
                     the effective rule's nodes (check --order, --k0, --alpha)"
                )));
            }
            values.push(*v);
        }
        channels.push(SpectralChannel::new(j, m, lambda, values)?);
    }
    Ok(channels)
}

/// Projects the input spectrum onto the basis and writes coefficients plus
/// photon number, energy, and truncation-residual diagnostics.
pub fn cmd_project(args: &ProjectArgs) -> Result<()> {
    check_k0(args.k0)?;
    check_order(args.order)?;
    if args.n_max < 2 {
        return Err(config_err("n-max", format!("must be >= 2, got {}", args.n_max)));
    }
    if !args.alpha.is_finite() || args.alpha <= 0.0 {
        return Err(config_err("alpha", format!("must be > 0, got {}", args.alpha)));
    }

    // dilatation covariance: coefficients of the alpha-dilated field at k0
    // equal those of the original at alpha·k0
    let k0_eff = args.alpha * args.k0;
    let scale = ScaleConfig::with_k0(k0_eff)?;
    let rule = gauss_laguerre_rule(args.order, k0_eff)?;

    let text_in = std::fs::read_to_string(&args.input)?;
    let channels = parse_spectrum_csv(&text_in, &rule)?;
    let coeffs = project(&channels, args.n_max, &rule, &scale)?;
    let res = residual(&channels, &coeffs, &rule)?;
    let pn = photon_number(&channels, &rule)?;
    let en = energy(&channels, &rule, &scale)?;

    let text = match args.format {
        OutputFormat::Csv => {
            let mut s = String::from("n,j,m,lambda,re,im\n");
            for (idx, v) in coeffs.entries() {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    idx.n,
                    idx.j,
                    idx.m,
                    idx.lambda,
                    fmt_f(v.re),
                    fmt_f(v.im)
                );
            }
            let _ = writeln!(
                s,
                "# summary: photon_number={}, energy_joules={}, residual={}, \
                 residual_raw={}, n_max={}, order={}, k0={}, alpha={}",
                fmt_f(pn),
                fmt_f(en),
                fmt_f(res.clamped),
                fmt_f(res.raw),
                args.n_max,
                args.order,
                fmt_f(args.k0),
                fmt_f(args.alpha)
            );
            s
        }
        OutputFormat::Json => {
            let mut s = String::from("{\n  \"command\": \"project\",\n");
            let _ = writeln!(s, "  \"k0\": {},", fmt_f(args.k0));
            let _ = writeln!(s, "  \"alpha\": {},", fmt_f(args.alpha));
            let _ = writeln!(s, "  \"n_max\": {},", args.n_max);
            let _ = writeln!(s, "  \"order\": {},", args.order);
            s.push_str("  \"coefficients\": [\n");
            let count = coeffs.len();
            for (i, (idx, v)) in coeffs.entries().enumerate() {
                let comma = if i + 1 == count { "" } else { "," };
                let _ = writeln!(
                    s,
                    "    {{\"n\": {}, \"j\": {}, \"m\": {}, \"lambda\": {}, \
                     \"re\": {}, \"im\": {}}}{comma}",
                    idx.n,
                    idx.j,
                    idx.m,
                    idx.lambda,
                    fmt_f(v.re),
                    fmt_f(v.im)
                );
            }
            s.push_str("  ],\n");
            let _ = writeln!(
                s,
                "  \"summary\": {{\"photon_number\": {}, \"energy_joules\": {}, \
                 \"residual\": {}, \"residual_raw\": {}}}\n}}",
                fmt_f(pn),
                fmt_f(en),
                fmt_f(res.clamped),
                fmt_f(res.raw)
            );
            s
        }
    };
    std::fs::write(&args.out, text)?;
    Ok(())
}

/// Writes kernel time traces; kind = all interleaves the three kinds per ct
/// and appends the split-identity residual |incoming + outgoing − regular|.
pub fn cmd_timetrace(args: &TimetraceArgs) -> Result<()> {
    check_k0(args.k0)?;
    if args.k0 != 1.0 {
        return Err(config_err(
            "k0",
            format!(
                "time-domain kernels fix k0 = 1 1/m, got {}; rescale via dilatation instead",
                args.k0
            ),
        ));
    }
    if !args.ct_step.is_finite() || args.ct_step <= 0.0 {
        return Err(config_err("ct-step", format!("must be > 0, got {}", args.ct_step)));
    }
    if !args.ct_min.is_finite() || !args.ct_max.is_finite() {
        return Err(config_err("ct-min", "time window must be finite"));
    }

    let grid: Vec<f64> = if args.ct_max < args.ct_min {
        Vec::new()
    } else {
        let count = ((args.ct_max - args.ct_min) / args.ct_step + 1e-9).floor() as usize + 1;
        (0..count).map(|i| args.ct_min + i as f64 * args.ct_step).collect()
    };

    let scale = ScaleConfig::default();
    let make_spec = |kind: KernelKind| KernelSpec::new(args.n, args.j, args.l, kind, args.r, scale);

    enum Rows {
        Single(Vec<(f64, Complex64)>),
        All(Vec<(f64, [Complex64; 3], f64)>),
    }

    let rows = match args.kind {
        TraceKind::Regular | TraceKind::Incoming | TraceKind::Outgoing => {
            let kind = match args.kind {
                TraceKind::Regular => KernelKind::Regular,
                TraceKind::Incoming => KernelKind::Incoming,
                _ => KernelKind::Outgoing,
            };
            let trace = wavelet_scan(&make_spec(kind)?, &grid)?;
            Rows::Single(trace.times.into_iter().zip(trace.values).collect())
        }
        TraceKind::All => {
            let reg = wavelet_scan(&make_spec(KernelKind::Regular)?, &grid)?;
            let inc = wavelet_scan(&make_spec(KernelKind::Incoming)?, &grid)?;
            let out = wavelet_scan(&make_spec(KernelKind::Outgoing)?, &grid)?;
            Rows::All(
                (0..grid.len())
                    .map(|i| {
                        let trio = [reg.values[i], inc.values[i], out.values[i]];
                        let split = (trio[1] + trio[2] - trio[0]).norm();
                        (grid[i], trio, split)
                    })
                    .collect(),
            )
        }
    };

    const KIND_NAMES: [&str; 3] = ["regular", "incoming", "outgoing"];
    let text = match (args.format, &rows) {
        (OutputFormat::Csv, Rows::Single(data)) => {
            let mut s = String::from("ct [m],re [1/m^3],im [1/m^3],abs [1/m^3]\n");
            for (ct, v) in data {
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    fmt_f(*ct),
                    fmt_f(v.re),
                    fmt_f(v.im),
                    fmt_f(v.norm())
                );
            }
            s
        }
        (OutputFormat::Csv, Rows::All(data)) => {
            let mut s = String::from(
                "ct [m],kind,re [1/m^3],im [1/m^3],abs [1/m^3],split_residual [1/m^3]\n",
            );
            for (ct, trio, split) in data {
                for (name, v) in KIND_NAMES.iter().zip(trio) {
                    let _ = writeln!(
                        s,
                        "{},{name},{},{},{},{}",
                        fmt_f(*ct),
                        fmt_f(v.re),
                        fmt_f(v.im),
                        fmt_f(v.norm()),
                        fmt_f(*split)
                    );
                }
            }
            s
        }
        (OutputFormat::Json, Rows::Single(data)) => {
            let mut s = String::from("{\n  \"command\": \"timetrace\",\n");
            let _ = writeln!(s, "  \"kind\": \"{}\",", kind_name(args.kind));
            write_trace_header(&mut s, args);
            s.push_str("  \"rows\": [\n");
            for (i, (ct, v)) in data.iter().enumerate() {
                let comma = if i + 1 == data.len() { "" } else { "," };
                let _ = writeln!(
                    s,
                    "    {{\"ct\": {}, \"re\": {}, \"im\": {}, \"abs\": {}}}{comma}",
                    fmt_f(*ct),
                    fmt_f(v.re),
                    fmt_f(v.im),
                    fmt_f(v.norm())
                );
            }
            s.push_str("  ]\n}\n");
            s
        }
        (OutputFormat::Json, Rows::All(data)) => {
            let mut s = String::from("{\n  \"command\": \"timetrace\",\n");
            s.push_str("  \"kind\": \"all\",\n");
            write_trace_header(&mut s, args);
            s.push_str("  \"rows\": [\n");
            let total = data.len() * 3;
            let mut written = 0;
            for (ct, trio, split) in data {
                for (name, v) in KIND_NAMES.iter().zip(trio) {
                    written += 1;
                    let comma = if written == total { "" } else { "," };
                    let _ = writeln!(
                        s,
                        "    {{\"ct\": {}, \"kind\": \"{name}\", \"re\": {}, \"im\": {}, \
                         \"abs\": {}, \"split_residual\": {}}}{comma}",
                        fmt_f(*ct),
                        fmt_f(v.re),
                        fmt_f(v.im),
                        fmt_f(v.norm()),
                        fmt_f(*split)
                    );
                }
            }
            s.push_str("  ]\n}\n");
            s
        }
    };
    std::fs::write(&args.out, text)?;
    Ok(())
}

fn kind_name(kind: TraceKind) -> &'static str {
    match kind {
        TraceKind::Regular => "regular",
        TraceKind::Incoming => "incoming",
        TraceKind::Outgoing => "outgoing",
        TraceKind::All => "all",
    }
}

fn write_trace_header(s: &mut String, args: &TimetraceArgs) {
    let _ = writeln!(s, "  \"n\": {},", args.n);
    let _ = writeln!(s, "  \"j\": {},", args.j);
    let _ = writeln!(s, "  \"l\": {},", args.l);
    let _ = writeln!(s, "  \"r\": {},", fmt_f(args.r));
}
