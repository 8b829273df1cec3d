//! Command-line front end: generate point streams, analyze gap ratios,
//! reproduce the summary tables, lower-bound constructions and the
//! counterexample, and export data for external plotting.
//!
//! Exit codes: 0 success, 2 invalid flags, 3 I/O failure, 4 oracle
//! discrepancy beyond its bound (an internal-consistency alarm).

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sphere_gap::analysis::{
    counterexample_178, four_point_bound, four_point_x, gap34_curve, table1, table2,
    three_point_bound, BoundConstruction,
};
use sphere_gap::constants::lattice_covering_bound;
use sphere_gap::gapmetrics::{grid_oracle_max_gap, max_gap_brute, GapReport, PrefixScanner};
use sphere_gap::sphgeom::UnitVec3;
use sphere_gap::tessellate::{SolidKind, TessellationStream};

#[derive(Parser)]
#[command(
    name = "sphere-gap",
    version,
    about = "Online point placement on the unit sphere with gap-ratio analysis"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit the first N points of a solid's tessellation stream.
    Gen(GenArgs),
    /// Per-prefix gap reports for a generated stream or a point file.
    Analyze(AnalyzeArgs),
    /// Depth table for one icosahedron face (restricted gap data).
    Table1(Table1Args),
    /// Stage-one / stage-two summary for the seed solids.
    Table2(TableFormatArgs),
    /// Three- or four-point lower-bound construction.
    Lowerbound(LowerboundArgs),
    /// Rebuttal of the claimed three-point bound of 1.78.
    Counterexample(JsonArgs),
    /// Sampled gap-3 / gap-4 curves as CSV for external plotting.
    FigureGap34(FigureArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Seed solid: tetra | octa | icosa.
    #[arg(long, default_value = "icosa")]
    solid: String,
    /// Number of stream points to emit.
    #[arg(long)]
    count: u64,
    #[arg(long, value_enum, default_value_t = PointFormat::Jsonl)]
    format: PointFormat,
    /// Output path; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Seed solid (with --count) to analyze a generated stream.
    #[arg(long)]
    solid: Option<String>,
    /// Number of stream points (at least 2).
    #[arg(long)]
    count: Option<u64>,
    /// Point file (JSONL or CSV from `gen`) instead of a generated stream.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Cross-check: none | brute | grid:M (M >= 1000).
    #[arg(long, default_value = "none")]
    oracle: String,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Add degree-valued fields to the summary line.
    #[arg(long)]
    degrees: bool,
}

#[derive(Args)]
struct Table1Args {
    #[arg(long, default_value_t = 7)]
    max_depth: u8,
    #[arg(long, value_enum, default_value_t = TableFormat::Text)]
    format: TableFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TableFormatArgs {
    #[arg(long, value_enum, default_value_t = TableFormat::Text)]
    format: TableFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct LowerboundArgs {
    /// 3 or 4.
    #[arg(long)]
    points: u8,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct JsonArgs {
    #[arg(long)]
    json: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct FigureArgs {
    #[arg(long, default_value_t = 500)]
    samples: usize,
    /// Two-point offset x in radians (defaults to 0.726π/2.726).
    #[arg(long)]
    x: Option<f64>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PointFormat {
    Jsonl,
    Csv,
    Ply,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Text,
    Csv,
}

enum CliError {
    Usage(String),
    Io(String),
    OracleMismatch(String),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("i/o error: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::OracleMismatch(msg)) => {
            eprintln!("oracle mismatch: {msg}");
            ExitCode::from(4)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Gen(a) => cmd_gen(a),
        Cmd::Analyze(a) => cmd_analyze(a),
        Cmd::Table1(a) => cmd_table1(a),
        Cmd::Table2(a) => cmd_table2(a),
        Cmd::Lowerbound(a) => cmd_lowerbound(a),
        Cmd::Counterexample(a) => cmd_counterexample(a),
        Cmd::FigureGap34(a) => cmd_figure(a),
    }
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    match path {
        Some(p) => Ok(Box::new(io::BufWriter::new(fs::File::create(p)?))),
        None => Ok(Box::new(io::BufWriter::new(io::stdout()))),
    }
}

fn parse_solid(name: &str) -> Result<SolidKind, CliError> {
    SolidKind::from_str(name).map_err(CliError::Usage)
}

// ---------------------------------------------------------------------------
// gen

fn cmd_gen(a: GenArgs) -> Result<(), CliError> {
    if a.count == 0 {
        return Err(CliError::Usage("--count must be at least 1".into()));
    }
    let kind = parse_solid(&a.solid)?;
    let mut out = open_output(&a.output)?;
    let mut stream = TessellationStream::new(kind);

    match a.format {
        PointFormat::Jsonl => {
            for _ in 0..a.count {
                let (i, p) = stream.next_point();
                writeln!(
                    out,
                    "{{\"i\":{i},\"x\":{:.16e},\"y\":{:.16e},\"z\":{:.16e}}}",
                    p.x(),
                    p.y(),
                    p.z()
                )?;
            }
        }
        PointFormat::Csv => {
            writeln!(out, "i,x,y,z")?;
            for _ in 0..a.count {
                let (i, p) = stream.next_point();
                writeln!(out, "{i},{:.16e},{:.16e},{:.16e}", p.x(), p.y(), p.z())?;
            }
        }
        PointFormat::Ply => {
            writeln!(out, "ply")?;
            writeln!(out, "format ascii 1.0")?;
            writeln!(out, "comment sphere-gap tessellation stream")?;
            writeln!(out, "element vertex {}", a.count)?;
            writeln!(out, "property double x")?;
            writeln!(out, "property double y")?;
            writeln!(out, "property double z")?;
            writeln!(out, "end_header")?;
            for _ in 0..a.count {
                let (_, p) = stream.next_point();
                writeln!(out, "{:.16e} {:.16e} {:.16e}", p.x(), p.y(), p.z())?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

// ---------------------------------------------------------------------------
// analyze

enum OracleSpec {
    None,
    Brute,
    Grid(usize),
}

fn parse_oracle(s: &str) -> Result<OracleSpec, CliError> {
    match s {
        "none" => Ok(OracleSpec::None),
        "brute" => Ok(OracleSpec::Brute),
        other => {
            if let Some(m) = other.strip_prefix("grid:") {
                let m: usize = m
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad oracle sample count '{m}'")))?;
                if m < 1000 {
                    return Err(CliError::Usage("grid oracle needs at least 1000 samples".into()));
                }
                Ok(OracleSpec::Grid(m))
            } else {
                Err(CliError::Usage(format!(
                    "unknown oracle '{other}' (none|brute|grid:M)"
                )))
            }
        }
    }
}

fn parse_point_line(line: &str) -> Option<(f64, f64, f64)> {
    let line = line.trim();
    if line.is_empty() {
        return None;
    }
    if line.starts_with('{') {
        let v: serde_json::Value = serde_json::from_str(line).ok()?;
        return Some((
            v.get("x")?.as_f64()?,
            v.get("y")?.as_f64()?,
            v.get("z")?.as_f64()?,
        ));
    }
    let fields: Vec<&str> = line.split(',').map(str::trim).collect();
    let nums: Vec<f64> = fields.iter().filter_map(|f| f.parse().ok()).collect();
    match (fields.len(), nums.len()) {
        (4, 4) => Some((nums[1], nums[2], nums[3])), // i,x,y,z
        (3, 3) => Some((nums[0], nums[1], nums[2])),
        _ => None,
    }
}

fn load_points(path: &PathBuf) -> Result<Vec<UnitVec3>, CliError> {
    let mut text = String::new();
    fs::File::open(path)?.read_to_string(&mut text)?;
    let mut pts = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let Some((x, y, z)) = parse_point_line(trimmed) else {
            if lineno == 0 {
                continue; // CSV header
            }
            return Err(CliError::Io(format!(
                "{}: line {} is not a point record",
                path.display(),
                lineno + 1
            )));
        };
        // keep the bits when already unit length so that file round-trips
        // reproduce in-process results exactly
        let p = UnitVec3::from_unit_coords(x, y, z)
            .or_else(|_| UnitVec3::new(x, y, z))
            .map_err(|e| {
                CliError::Io(format!(
                    "{}: line {} holds no usable direction ({e})",
                    path.display(),
                    lineno + 1
                ))
            })?;
        pts.push(p);
    }
    Ok(pts)
}

fn oracle_check(
    spec: &OracleSpec,
    points: &[UnitVec3],
    rep: &GapReport,
) -> Result<Option<(f64, f64)>, CliError> {
    match spec {
        OracleSpec::None => Ok(None),
        OracleSpec::Brute => {
            let (d, _) = max_gap_brute(points).expect("prefix has >= 2 points");
            let disc = rep.rho_max.0 - d.0;
            if disc.abs() > 1e-9 {
                return Err(CliError::OracleMismatch(format!(
                    "n={}: brute {} vs reported {}",
                    rep.n, d.0, rep.rho_max.0
                )));
            }
            Ok(Some((d.0, disc)))
        }
        OracleSpec::Grid(m) => {
            let d = grid_oracle_max_gap(points, *m);
            let disc = rep.rho_max.0 - d.0;
            if disc < -1e-9 || disc > 2.0 * lattice_covering_bound(*m) {
                return Err(CliError::OracleMismatch(format!(
                    "n={}: grid oracle {} vs reported {} (bound {})",
                    rep.n,
                    d.0,
                    rep.rho_max.0,
                    2.0 * lattice_covering_bound(*m)
                )));
            }
            Ok(Some((d.0, disc)))
        }
    }
}

fn cmd_analyze(a: AnalyzeArgs) -> Result<(), CliError> {
    let points: Vec<UnitVec3> = match (&a.input, &a.solid, a.count) {
        (Some(path), None, None) => load_points(path)?,
        (None, Some(solid), Some(count)) => {
            let kind = parse_solid(solid)?;
            TessellationStream::new(kind).take_points(count as usize)
        }
        _ => {
            return Err(CliError::Usage(
                "pass either --input FILE or both --solid and --count".into(),
            ))
        }
    };
    if points.len() < 2 {
        return Err(CliError::Usage("analysis needs at least 2 points".into()));
    }
    let oracle = parse_oracle(&a.oracle)?;
    let mut out = open_output(&a.output)?;

    let mut scanner = PrefixScanner::new();
    let mut max_ratio = f64::NEG_INFINITY;
    let mut argmax_n = 0usize;
    let mut last: Option<GapReport> = None;
    for &p in &points {
        let Some(rep) = scanner.push(p) else { continue };
        if rep.ratio > max_ratio {
            max_ratio = rep.ratio;
            argmax_n = rep.n;
        }
        let mut line = rep.to_json_line();
        if let Some((od, disc)) = oracle_check(&oracle, scanner.points(), &rep)? {
            line.pop(); // strip the closing brace
            write!(line, ",\"oracle\":{od:.11e},\"discrepancy\":{disc:.11e}}}").unwrap();
        }
        writeln!(out, "{line}")?;
        last = Some(rep);
    }

    let last = last.expect("at least one prefix");
    let mut summary = format!(
        "{{\"summary\":{{\"n\":{},\"max_prefix_ratio\":{max_ratio:.11e},\"argmax_n\":{argmax_n},\"rho_min_final\":{:.11e},\"rho_max_final\":{:.11e}",
        points.len(),
        last.rho_min.0,
        last.rho_max.0
    );
    if a.degrees {
        write!(
            summary,
            ",\"rho_min_final_deg\":{:.11e},\"rho_max_final_deg\":{:.11e}",
            last.rho_min.to_degrees(),
            last.rho_max.to_degrees()
        )
        .unwrap();
    }
    summary.push_str("}}");
    writeln!(out, "{summary}")?;
    out.flush()?;
    Ok(())
}

// ---------------------------------------------------------------------------
// tables

fn cmd_table1(a: Table1Args) -> Result<(), CliError> {
    if a.max_depth > 12 {
        return Err(CliError::Usage("--max-depth is capped at 12".into()));
    }
    let rows = table1(a.max_depth);
    let mut out = open_output(&a.output)?;
    match a.format {
        TableFormat::Csv => {
            writeln!(out, "depth,rho_min,rho_max,ratio,doubled_ratio")?;
            for r in rows {
                writeln!(
                    out,
                    "{},{:.11e},{:.11e},{:.11e},{:.11e}",
                    r.depth, r.rho_min, r.rho_max, r.ratio, r.doubled
                )?;
            }
        }
        TableFormat::Text => {
            writeln!(out, "depth   rho_min   rho_max     ratio   2*ratio")?;
            for r in rows {
                writeln!(
                    out,
                    "{:>5}  {:>8.4}  {:>8.4}  {:>8.4}  {:>8.4}",
                    r.depth, r.rho_min, r.rho_max, r.ratio, r.doubled
                )?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn cmd_table2(a: TableFormatArgs) -> Result<(), CliError> {
    let rows = table2();
    let mut out = open_output(&a.output)?;
    match a.format {
        TableFormat::Csv => {
            writeln!(out, "solid,stage1,stage2,computed,note")?;
            for r in rows {
                writeln!(
                    out,
                    "{},{:.11e},{:.11e},{},{}",
                    r.solid,
                    r.stage1,
                    r.stage2,
                    r.computed,
                    r.note.unwrap_or("")
                )?;
            }
        }
        TableFormat::Text => {
            writeln!(out, "solid          stage1   stage2")?;
            for r in rows {
                let mut flags = String::new();
                if !r.computed {
                    flags.push_str("  [cited]");
                }
                if let Some(n) = r.note {
                    write!(flags, "  ({n})").unwrap();
                }
                writeln!(out, "{:<12} {:>8.4} {:>8.4}{flags}", r.solid, r.stage1, r.stage2)?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

// ---------------------------------------------------------------------------
// bounds / counterexample / figure

fn bound_to_json(b: &BoundConstruction) -> String {
    let mut s = String::from("{");
    write!(s, "\"claimed_ratio\":{:.11e},\"x\":{:.11e},", b.claimed_ratio, b.x.0).unwrap();
    match b.z {
        Some(z) => write!(s, "\"z\":{:.11e},", z.0).unwrap(),
        None => s.push_str("\"z\":null,"),
    }
    s.push_str("\"points\":[");
    for (k, p) in b.points.iter().enumerate() {
        if k > 0 {
            s.push(',');
        }
        write!(s, "[{:.16e},{:.16e},{:.16e}]", p.x(), p.y(), p.z()).unwrap();
    }
    s.push_str("],\"prefix_reports\":[");
    for (k, r) in b.reports.iter().enumerate() {
        if k > 0 {
            s.push(',');
        }
        s.push_str(&r.to_json_line());
    }
    s.push_str("]}");
    s
}

fn cmd_lowerbound(a: LowerboundArgs) -> Result<(), CliError> {
    let b = match a.points {
        3 => three_point_bound(),
        4 => four_point_bound().map_err(|e| CliError::Usage(e.to_string()))?,
        n => {
            return Err(CliError::Usage(format!(
                "--points must be 3 or 4, got {n}"
            )))
        }
    };
    let mut out = open_output(&a.output)?;
    if a.json {
        writeln!(out, "{}", bound_to_json(&b))?;
    } else {
        writeln!(out, "max prefix gap ratio {:.10}", b.max_prefix_ratio())?;
        for (k, p) in b.points.iter().enumerate() {
            writeln!(out, "u{} {:.10} {:.10} {:.10}", k + 1, p.x(), p.y(), p.z())?;
        }
        for r in &b.reports {
            writeln!(out, "prefix {} ratio {:.10}", r.n, r.ratio)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn cmd_counterexample(a: JsonArgs) -> Result<(), CliError> {
    let r = counterexample_178();
    let mut out = open_output(&a.output)?;
    if a.json {
        let mut s = String::from("{");
        write!(
            s,
            "\"beta\":{:.11e},\"gamma\":{:.11e},\"claimed_ratio\":{:.11e},\"zeta_u1_u3\":{:.11e},\"equidistant_ratio\":{:.11e},\"golden_witness_ratio\":{:.11e},\"equidistant_points\":[",
            r.beta, r.gamma, r.claimed_ratio, r.zeta_u1_u3, r.equidistant_ratio, r.golden_witness_ratio
        )
        .unwrap();
        for (k, p) in r.equidistant_points.iter().enumerate() {
            if k > 0 {
                s.push(',');
            }
            write!(s, "[{:.16e},{:.16e},{:.16e}]", p.x(), p.y(), p.z()).unwrap();
        }
        s.push_str("]}");
        writeln!(out, "{s}")?;
    } else {
        writeln!(out, "beta               {:.10}", r.beta)?;
        writeln!(out, "gamma              {:.10}", r.gamma)?;
        writeln!(out, "claimed ratio      {:.10}", r.claimed_ratio)?;
        writeln!(out, "neglected distance {:.10} (exceeds gamma)", r.zeta_u1_u3)?;
        writeln!(out, "equidistant ratio  {:.10} (below 1.78)", r.equidistant_ratio)?;
        writeln!(out, "golden witness     {:.10}", r.golden_witness_ratio)?;
    }
    out.flush()?;
    Ok(())
}

fn cmd_figure(a: FigureArgs) -> Result<(), CliError> {
    if a.samples < 10 {
        return Err(CliError::Usage("--samples must be at least 10".into()));
    }
    let x = match a.x {
        Some(v) if v > 0.0 && v < std::f64::consts::PI => sphere_gap::Radians(v),
        Some(v) => {
            return Err(CliError::Usage(format!(
                "--x must lie strictly between 0 and pi, got {v}"
            )))
        }
        None => four_point_x(),
    };
    let curve = gap34_curve(x, a.samples);
    let mut out = open_output(&a.output)?;
    writeln!(out, "z,gap3,gap4")?;
    for (z, g3, g4) in curve {
        writeln!(out, "{z:.11e},{g3:.11e},{g4:.11e}")?;
    }
    out.flush()?;
    Ok(())
}
