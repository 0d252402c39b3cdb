use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use critarrow::{
    analysis_text, analyze, analyze_quotient, build_quotient, parse, quotient_text, run_scan, scan,
    Error, Limits, QuotientReport, ScanSpec, SimplicialCone,
};

#[derive(Parser)]
#[command(
    name = "critarrow",
    version,
    about = "Exact analysis of simplicial toric singularities: critical vectors, \
             center dimensions, Hilbert bases, and quotient classifications"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one lattice element of a simplicial cone.
    Analyze {
        /// Generators as semicolon-separated integer rows: "1,0,0;0,1,0;1,1,2"
        #[arg(long)]
        cone: String,
        /// Lattice element: "1,1,1"
        #[arg(long)]
        w: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Cap on lattice points visited per enumeration
        #[arg(long)]
        max_points: Option<u64>,
        /// Truncation bound for sufficiency searches when w is not interior
        #[arg(long)]
        level_one_bound: Option<u64>,
    },
    /// Analyze an abelian quotient singularity given by diagonal cyclic
    /// generators.
    Quotient {
        /// One or more specs "r:a1,...,ad", e.g. "14:1,9,11"
        #[arg(required = true)]
        spec: Vec<String>,
        /// Element in the original coordinates; rationals allowed:
        /// "7/14,7/14,7/14"
        #[arg(long)]
        w: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        max_points: Option<u64>,
        #[arg(long)]
        level_one_bound: Option<u64>,
    },
    /// Scan a family of cones; one JSONL record per essential candidate.
    Scan {
        /// Generator template with variables: "1,0,0;x1,y1,z1;x2,y2,z2"
        #[arg(long)]
        template: String,
        /// Default inclusive range for every variable: "0..3"
        #[arg(long)]
        range: Option<String>,
        /// Per-variable override "x1=0..2" (repeatable)
        #[arg(long = "range-for")]
        range_for: Vec<String>,
        /// Variable filter "y1<=z1" (repeatable)
        #[arg(long)]
        filter: Vec<String>,
        /// Worker count; falls back to CRITARROW_JOBS, then 1
        #[arg(long)]
        jobs: Option<usize>,
        /// Write records to this file; stdout otherwise
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        max_points: Option<u64>,
        #[arg(long)]
        level_one_bound: Option<u64>,
    },
}

fn limits(max_points: Option<u64>, level_one_bound: Option<u64>) -> Limits {
    let mut l = Limits::default();
    if let Some(m) = max_points {
        l.max_enum_points = m;
    }
    if let Some(b) = level_one_bound {
        l.level_one_bound = b;
    }
    l
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::ResourceLimit(_) => 3,
                _ => 2,
            };
            std::process::exit(code);
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Analyze {
            cone,
            w,
            format,
            max_points,
            level_one_bound,
        } => {
            let limits = limits(max_points, level_one_bound);
            let cone = SimplicialCone::new(parse::parse_generators(&cone)?)?;
            let w = parse::parse_int_vector(&w)?;
            let report = analyze(&cone, &w, &limits)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string(&report).unwrap()),
                Format::Text => print!("{}", analysis_text(&report)),
            }
            Ok(())
        }
        Command::Quotient {
            spec,
            w,
            format,
            max_points,
            level_one_bound,
        } => {
            let limits = limits(max_points, level_one_bound);
            let gens = spec
                .iter()
                .map(|s| parse::parse_cyclic(s))
                .collect::<Result<Vec<_>, _>>()?;
            let datum = build_quotient(&gens)?;
            let singularity = datum.cone.classify_singularity(&limits).ok();
            let report = match w {
                Some(w) => {
                    let w_input = parse::parse_rat_vector(&w)?;
                    let qa = analyze_quotient(&datum, &w_input, &limits)?;
                    QuotientReport::build(
                        &datum,
                        spec,
                        singularity,
                        Some(w_input),
                        Some(qa.w_lattice),
                        Some(qa.report),
                    )
                }
                None => QuotientReport::build(&datum, spec, singularity, None, None, None),
            };
            match format {
                Format::Json => println!("{}", serde_json::to_string(&report).unwrap()),
                Format::Text => print!("{}", quotient_text(&report)),
            }
            Ok(())
        }
        Command::Scan {
            template,
            range,
            range_for,
            filter,
            jobs,
            out,
            max_points,
            level_one_bound,
        } => {
            let limits = limits(max_points, level_one_bound);
            let rows = scan::parse_template(&template)?;
            let default_range = range.as_deref().map(parse::parse_range).transpose()?;
            let overrides = range_for
                .iter()
                .map(|s| {
                    let (name, r) = s
                        .split_once('=')
                        .ok_or_else(|| Error::Parse(format!("expected var=lo..hi, found {s:?}")))?;
                    Ok((name.trim().to_string(), parse::parse_range(r)?))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            let filters = filter
                .iter()
                .map(|f| scan::parse_filter(f))
                .collect::<Result<Vec<_>, _>>()?;
            let jobs = jobs
                .or_else(|| {
                    std::env::var("CRITARROW_JOBS")
                        .ok()
                        .and_then(|v| v.parse().ok())
                })
                .unwrap_or(1);
            let spec = ScanSpec::new(rows, default_range, &overrides, filters, jobs, limits)?;
            eprintln!(
                "scanning {} assignments with {} worker(s)",
                spec.total_assignments(),
                spec.jobs
            );
            let (records, summary) = run_scan(&spec)?;
            let jsonl = scan::records_to_jsonl(&records);
            match out {
                Some(path) => {
                    let mut f = std::fs::File::create(&path).map_err(|e| {
                        Error::BadParameters(format!("cannot create {}: {e}", path.display()))
                    })?;
                    f.write_all(jsonl.as_bytes()).map_err(|e| {
                        Error::BadParameters(format!("cannot write {}: {e}", path.display()))
                    })?;
                    print!("{summary}");
                }
                None => {
                    print!("{jsonl}");
                    // keep stdout pure JSONL; the summary goes to diagnostics
                    eprint!("{summary}");
                }
            }
            Ok(())
        }
    }
}
