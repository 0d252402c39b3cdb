//! Exhaustive scans over cone families.
//!
//! A scan template fixes some generator entries and ranges over the rest;
//! every essential candidate of every valid cone in the family is analyzed
//! and emitted as one JSONL record. Workers split the assignment space by
//! static partitioning and records are sorted before emission, so the output
//! is byte-identical for any worker count.

use std::collections::BTreeMap;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::cone::SimplicialCone;
use crate::crit::{analyze, LevelOneStatus};
use crate::error::{Error, Result};
use crate::exact::{rank, Rat, Vector};
use crate::limits::Limits;
use crate::report::{RatStr, VecJson, VecsJson};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TemplateEntry {
    Fixed(i64),
    Var(String),
}

/// A scan specification: the generator template, per-variable inclusive
/// ranges, `lhs <= rhs` variable filters, and the worker count.
#[derive(Clone, Debug)]
pub struct ScanSpec {
    pub rows: Vec<Vec<TemplateEntry>>,
    /// Variables in first-appearance order; drives enumeration order.
    pub vars: Vec<String>,
    pub ranges: BTreeMap<String, (i64, i64)>,
    pub filters: Vec<(String, String)>,
    pub jobs: usize,
    pub limits: Limits,
}

/// `"1,0,0;x1,y1,z1;x2,y2,z2"` -> template rows. A token that parses as an
/// integer is fixed; otherwise it names a variable.
pub fn parse_template(s: &str) -> Result<Vec<Vec<TemplateEntry>>> {
    let mut rows = Vec::new();
    for row in s.split(';') {
        let mut entries = Vec::new();
        for tok in row.split(',') {
            let tok = tok.trim();
            if tok.is_empty() {
                return Err(Error::Parse("empty template entry".into()));
            }
            match tok.parse::<i64>() {
                Ok(n) => entries.push(TemplateEntry::Fixed(n)),
                Err(_) => {
                    if !tok.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                        return Err(Error::Parse(format!("bad template token {tok:?}")));
                    }
                    entries.push(TemplateEntry::Var(tok.to_string()));
                }
            }
        }
        rows.push(entries);
    }
    if rows.is_empty() {
        return Err(Error::Parse("empty template".into()));
    }
    Ok(rows)
}

/// `"y1<=z1"` -> filter pair.
pub fn parse_filter(s: &str) -> Result<(String, String)> {
    let (l, r) = s
        .split_once("<=")
        .ok_or_else(|| Error::Parse(format!("expected lhs<=rhs, found {s:?}")))?;
    Ok((l.trim().to_string(), r.trim().to_string()))
}

impl ScanSpec {
    pub fn new(
        rows: Vec<Vec<TemplateEntry>>,
        default_range: Option<(i64, i64)>,
        overrides: &[(String, (i64, i64))],
        filters: Vec<(String, String)>,
        jobs: usize,
        limits: Limits,
    ) -> Result<Self> {
        let mut vars = Vec::new();
        for row in &rows {
            for e in row {
                if let TemplateEntry::Var(v) = e {
                    if !vars.contains(v) {
                        vars.push(v.clone());
                    }
                }
            }
        }
        let mut ranges = BTreeMap::new();
        for v in &vars {
            let range = overrides
                .iter()
                .find(|(name, _)| name == v)
                .map(|(_, r)| *r)
                .or(default_range)
                .ok_or_else(|| {
                    Error::BadParameters(format!("no range given for variable {v:?}"))
                })?;
            ranges.insert(v.clone(), range);
        }
        for (l, r) in &filters {
            for side in [l, r] {
                if !vars.contains(side) {
                    return Err(Error::BadParameters(format!(
                        "filter references unknown variable {side:?}"
                    )));
                }
            }
        }
        Ok(ScanSpec {
            rows,
            vars,
            ranges,
            filters,
            jobs: jobs.max(1),
            limits,
        })
    }

    /// Total number of assignments before filtering; computable up front.
    pub fn total_assignments(&self) -> u128 {
        self.vars
            .iter()
            .map(|v| {
                let (lo, hi) = self.ranges[v];
                (hi - lo + 1) as u128
            })
            .product()
    }

    fn assignments(&self) -> Result<Vec<Vec<i64>>> {
        let total = self.total_assignments();
        if total > 10_000_000 {
            return Err(Error::ResourceLimit(format!(
                "scan of {total} assignments exceeds the built-in cap"
            )));
        }
        let nvars = self.vars.len();
        let ranges: Vec<(i64, i64)> = self.vars.iter().map(|v| self.ranges[v]).collect();
        let filter_idx: Vec<(usize, usize)> = self
            .filters
            .iter()
            .map(|(l, r)| {
                (
                    self.vars.iter().position(|v| v == l).unwrap(),
                    self.vars.iter().position(|v| v == r).unwrap(),
                )
            })
            .collect();
        let mut out = Vec::new();
        let mut current: Vec<i64> = ranges.iter().map(|&(lo, _)| lo).collect();
        if nvars == 0 {
            out.push(current);
            return Ok(out);
        }
        'outer: loop {
            if filter_idx.iter().all(|&(l, r)| current[l] <= current[r]) {
                out.push(current.clone());
            }
            let mut k = nvars;
            loop {
                if k == 0 {
                    break 'outer;
                }
                k -= 1;
                if current[k] < ranges[k].1 {
                    current[k] += 1;
                    break;
                }
                current[k] = ranges[k].0;
            }
        }
        Ok(out)
    }

    fn instantiate(&self, assignment: &[i64]) -> Vec<Vector> {
        self.rows
            .iter()
            .map(|row| {
                Vector::from_ints(
                    &row.iter()
                        .map(|e| match e {
                            TemplateEntry::Fixed(n) => *n,
                            TemplateEntry::Var(v) => {
                                assignment[self.vars.iter().position(|x| x == v).unwrap()]
                            }
                        })
                        .collect::<Vec<i64>>(),
                )
            })
            .collect()
    }
}

/// One scan record: a cone together with one essential candidate and its
/// analysis, or the error that prevented it.
#[derive(Clone, Debug)]
pub struct ScanRecord {
    pub cone: Vec<Vector>,
    pub w: Vector,
    pub dim_tau: Option<usize>,
    pub center_dim: Option<usize>,
    pub discrepancy: Option<Rat>,
    pub d_prime: Option<u64>,
    pub level_one: Option<LevelOneStatus>,
    pub crit_nonempty: Option<bool>,
    pub error: Option<String>,
}

impl Serialize for ScanRecord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ScanRecord", 9)?;
        st.serialize_field("cone", &VecsJson(&self.cone))?;
        st.serialize_field("w", &VecJson(&self.w))?;
        st.serialize_field("dim_tau", &self.dim_tau)?;
        st.serialize_field("center_dim", &self.center_dim)?;
        st.serialize_field("discrepancy", &self.discrepancy.as_ref().map(RatStr))?;
        st.serialize_field("d_prime", &self.d_prime)?;
        st.serialize_field(
            "level_one_found",
            &self.level_one.as_ref().map(LevelOneStatus::as_str),
        )?;
        st.serialize_field("crit_nonempty", &self.crit_nonempty)?;
        st.serialize_field("error", &self.error)?;
        st.end()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScanSummary {
    pub assignments: u128,
    pub cones_analyzed: u64,
    pub skipped_degenerate: u64,
    pub records: u64,
    pub errors: u64,
    pub by_dim_tau: BTreeMap<usize, u64>,
    pub max_dim_tau: Option<usize>,
}

impl std::fmt::Display for ScanSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "assignments          {}", self.assignments)?;
        writeln!(f, "cones analyzed       {}", self.cones_analyzed)?;
        writeln!(f, "skipped degenerate   {}", self.skipped_degenerate)?;
        writeln!(f, "records              {}", self.records)?;
        writeln!(f, "record errors        {}", self.errors)?;
        for (dt, n) in &self.by_dim_tau {
            writeln!(f, "dim_tau = {dt}          {n}")?;
        }
        match self.max_dim_tau {
            Some(m) => writeln!(f, "max dim_tau          {m}"),
            None => writeln!(f, "max dim_tau          n/a"),
        }
    }
}

/// Runs the scan. Generator tuples are primitivized and canonicalized (rays
/// sorted), duplicates collapse to one cone, and the record list is sorted
/// by `(cone, w)`, so the output is independent of the worker count.
pub fn run_scan(spec: &ScanSpec) -> Result<(Vec<ScanRecord>, ScanSummary)> {
    let assignments = spec.assignments()?;
    let mut summary = ScanSummary {
        assignments: spec.total_assignments(),
        ..ScanSummary::default()
    };
    let mut cone_keys: std::collections::BTreeSet<Vec<Vector>> = Default::default();
    for assignment in &assignments {
        let rays = spec.instantiate(assignment);
        if rays.iter().any(Vector::is_zero) || rank(&rays) != rays.len() {
            summary.skipped_degenerate += 1;
            continue;
        }
        let mut prim: Vec<Vector> = rays
            .iter()
            .map(|r| r.primitive().expect("nonzero ray"))
            .collect();
        prim.sort();
        cone_keys.insert(prim);
    }
    let cones: Vec<Vec<Vector>> = cone_keys.into_iter().collect();
    summary.cones_analyzed = cones.len() as u64;

    let jobs = spec.jobs.min(cones.len().max(1));
    let chunk_size = cones.len().div_ceil(jobs.max(1)).max(1);
    let chunks: Vec<&[Vec<Vector>]> = cones.chunks(chunk_size).collect();
    let outputs: Vec<Vec<ScanRecord>> = std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .iter()
            .map(|chunk| scope.spawn(move || scan_chunk(spec, chunk)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("scan worker panicked"))
            .collect()
    });
    let mut records = Vec::new();
    for out in outputs {
        records.extend(out);
    }
    records.sort_by(|a, b| (&a.cone, &a.w).cmp(&(&b.cone, &b.w)));
    summary.records = records.len() as u64;
    for r in &records {
        match (r.dim_tau, &r.error) {
            (Some(dt), _) => {
                *summary.by_dim_tau.entry(dt).or_insert(0) += 1;
                summary.max_dim_tau = Some(summary.max_dim_tau.map_or(dt, |m| m.max(dt)));
            }
            (None, Some(_)) => summary.errors += 1,
            _ => {}
        }
    }
    Ok((records, summary))
}

fn error_record(cone: &SimplicialCone, w: Vector, e: &crate::error::Error) -> ScanRecord {
    ScanRecord {
        cone: cone.generators().to_vec(),
        w,
        dim_tau: None,
        center_dim: None,
        discrepancy: None,
        d_prime: None,
        level_one: None,
        crit_nonempty: None,
        error: Some(e.to_string()),
    }
}

fn scan_chunk(spec: &ScanSpec, chunk: &[Vec<Vector>]) -> Vec<ScanRecord> {
    let mut records = Vec::new();
    for gens in chunk {
        let cone = match SimplicialCone::new(gens.clone()) {
            Ok(c) => c,
            Err(_) => continue, // validated during collection
        };
        let candidates = match cone.essential_candidates(&spec.limits) {
            Ok(c) => c,
            Err(e) => {
                records.push(error_record(&cone, Vector::zero(cone.dim()), &e));
                continue;
            }
        };
        for w in candidates {
            match analyze(&cone, &w, &spec.limits) {
                Ok(report) => records.push(ScanRecord {
                    cone: cone.generators().to_vec(),
                    w,
                    dim_tau: Some(report.dim_tau),
                    center_dim: Some(report.center_dim),
                    discrepancy: Some(report.discrepancy.clone()),
                    d_prime: Some(report.d_prime),
                    level_one: Some(report.level_one),
                    crit_nonempty: Some(report.crit_nonempty()),
                    error: None,
                }),
                Err(e) => records.push(error_record(&cone, w, &e)),
            }
        }
    }
    records
}

/// Serializes records as JSON lines.
pub fn records_to_jsonl(records: &[ScanRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("record serialization cannot fail"));
        out.push('\n');
    }
    out
}
