//! Bound sweeps over the basis count and their CSV form.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use mub_entropy::bounds::{bound_report, BoundKind};
use mub_entropy::LogBase;

use crate::output::write_atomic;

pub const CSV_HEADER: &str = "M,weak_pairwise,weak_subtraction,intermediate,refined,best";

/// One basis count of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub m: usize,
    pub weak_pairwise: f64,
    pub weak_subtraction: f64,
    pub intermediate: f64,
    pub refined: f64,
    /// Strongest applicable bound at this `m`, which may be one of the
    /// complete-set or two-basis bounds that have no column of their own.
    pub best: BoundKind,
}

/// Evaluates every bound for `m = 1..=dim+1`.
pub fn run_sweep(dim: usize, base: LogBase) -> mub_entropy::Result<Vec<SweepRow>> {
    (1..=dim + 1)
        .map(|m| {
            let r = bound_report(dim, m, base)?;
            let get = |k| r.get(k).expect("always evaluated");
            Ok(SweepRow {
                m,
                weak_pairwise: get(BoundKind::PairwiseWeak),
                weak_subtraction: get(BoundKind::SubtractionWeak),
                intermediate: get(BoundKind::Intermediate),
                refined: get(BoundKind::RefinedIntermediate),
                best: r.best,
            })
        })
        .collect()
}

/// Formats `x` with `digits` significant digits, like C's `%g`.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_owned();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let precision = digits.max(1);
    let sci = format!("{:.*e}", precision - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= precision as i32 {
        let mantissa = trim_zeros(mantissa);
        format!(
            "{mantissa}e{}{:02}",
            if exp < 0 { '-' } else { '+' },
            exp.abs()
        )
    } else {
        let decimals = (precision as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_owned()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn render_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let f = |v| format_significant(v, 6);
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.m,
            f(r.weak_pairwise),
            f(r.weak_subtraction),
            f(r.intermediate),
            f(r.refined),
            r.best.name()
        )
        .expect("writing to a String");
    }
    out
}

/// Writes the sweep as CSV. Nothing is created when `rows` is empty.
pub fn emit_csv(rows: &[SweepRow], destination: &Path) -> Result<()> {
    if rows.is_empty() {
        bail!("refusing to write an empty sweep");
    }
    write_atomic(destination, render_csv(rows).as_bytes())
}

fn kind_from_name(name: &str) -> Option<BoundKind> {
    BoundKind::ALL.into_iter().find(|k| k.name() == name)
}

/// Parses CSV produced by [`render_csv`].
pub fn parse_csv(text: &str) -> Result<Vec<SweepRow>> {
    let mut lines = text.lines();
    if lines.next() != Some(CSV_HEADER) {
        bail!("missing or unexpected CSV header");
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 6 {
                bail!("line {}: expected 6 fields", i + 2);
            }
            let num = |j: usize| -> Result<f64> {
                fields[j]
                    .parse()
                    .with_context(|| format!("line {}: bad number {:?}", i + 2, fields[j]))
            };
            Ok(SweepRow {
                m: fields[0]
                    .parse()
                    .with_context(|| format!("line {}: bad M", i + 2))?,
                weak_pairwise: num(1)?,
                weak_subtraction: num(2)?,
                intermediate: num(3)?,
                refined: num(4)?,
                best: kind_from_name(fields[5])
                    .with_context(|| format!("line {}: unknown bound {:?}", i + 2, fields[5]))?,
            })
        })
        .collect()
}

/// Basis counts where the refined bound beats both weak bounds, as
/// `(first, last)` runs of consecutive `m`.
pub fn refined_windows(rows: &[SweepRow]) -> Vec<(usize, usize)> {
    let mut windows: Vec<(usize, usize)> = Vec::new();
    for r in rows {
        if r.refined > r.weak_pairwise.max(r.weak_subtraction) {
            match windows.last_mut() {
                Some(w) if w.1 + 1 == r.m => w.1 = r.m,
                _ => windows.push((r.m, r.m)),
            }
        }
    }
    windows
}

/// First `m` at which the subtraction bound overtakes the pairwise bound.
pub fn weak_crossing(rows: &[SweepRow]) -> Option<usize> {
    rows.iter()
        .find(|r| r.weak_subtraction >= r.weak_pairwise)
        .map(|r| r.m)
}
