//! Parsing of the shell-facing input formats: integer and rational vectors,
//! semicolon-separated generator lists, cyclic quotient specs, and ranges.

use crate::error::{Error, Result};
use crate::exact::{int, Rat, Vector};
use crate::quotient::CyclicGenerator;

fn parse_i64(tok: &str) -> Result<i64> {
    tok.trim()
        .parse::<i64>()
        .map_err(|_| Error::Parse(format!("expected an integer, found {tok:?}")))
}

/// `"1,0,-2"` -> integer vector.
pub fn parse_int_vector(s: &str) -> Result<Vector> {
    let entries = s.split(',').map(parse_i64).collect::<Result<Vec<i64>>>()?;
    if entries.is_empty() {
        return Err(Error::Parse("empty vector".into()));
    }
    Ok(Vector::from_ints(&entries))
}

/// `"1/2,3,-7/4"` -> rational vector.
pub fn parse_rat_vector(s: &str) -> Result<Vector> {
    let mut entries = Vec::new();
    for tok in s.split(',') {
        let tok = tok.trim();
        let r = match tok.split_once('/') {
            Some((n, d)) => {
                let den = parse_i64(d)?;
                if den == 0 {
                    return Err(Error::Parse(format!("zero denominator in {tok:?}")));
                }
                Rat::new(int(parse_i64(n)?), int(den))
            }
            None => Rat::from_integer(int(parse_i64(tok)?)),
        };
        entries.push(r);
    }
    if entries.is_empty() {
        return Err(Error::Parse("empty vector".into()));
    }
    Ok(Vector::new(entries))
}

/// `"1,0,0;0,1,0;1,1,2"` -> generator list (integer rows).
pub fn parse_generators(s: &str) -> Result<Vec<Vector>> {
    let rows = s
        .split(';')
        .map(parse_int_vector)
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Err(Error::Parse("no generators".into()));
    }
    Ok(rows)
}

/// `"14:1,9,11"` -> cyclic group generator.
pub fn parse_cyclic(s: &str) -> Result<CyclicGenerator> {
    let (order, weights) = s
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("expected r:a1,...,ad, found {s:?}")))?;
    let order = order
        .trim()
        .parse::<u64>()
        .map_err(|_| Error::Parse(format!("bad group order {order:?}")))?;
    let weights = weights
        .split(',')
        .map(parse_i64)
        .collect::<Result<Vec<i64>>>()?;
    CyclicGenerator::new(order, &weights)
}

/// `"0..3"` -> inclusive range.
pub fn parse_range(s: &str) -> Result<(i64, i64)> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| Error::Parse(format!("expected lo..hi, found {s:?}")))?;
    let lo = parse_i64(a)?;
    let hi = parse_i64(b)?;
    if hi < lo {
        return Err(Error::Parse(format!("empty range {s:?}")));
    }
    Ok((lo, hi))
}
