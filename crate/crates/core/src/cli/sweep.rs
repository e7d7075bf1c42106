use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;
use std::io::Write;

use super::config::{SweepConfig, SAMPLES_PER_PERIOD};
use crate::casimir::{potential_and_force, TermSelector};
use crate::error::Result;
use crate::physics::{derive, phi_parameter, PhysicalParams, RegimeTag};

pub const CSV_HEADER: &str = "d,B,term,potential_re,potential_im,force_re,force_im,regime";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub d: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub term: TermSelector,
    pub potential_re: f64,
    pub potential_im: f64,
    pub force_re: f64,
    pub force_im: f64,
    pub regime: RegimeTag,
}

impl SweepRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{:.16e},{:.16e},{},{:.16e},{:.16e},{:.16e},{:.16e},{}",
            self.d,
            self.b,
            self.term,
            self.potential_re,
            self.potential_im,
            self.force_re,
            self.force_im,
            self.regime
        )
    }
}

/// `points` evenly spaced separations on `[d_min, d_max]`, endpoints exact.
pub fn distance_grid(d_min: f64, d_max: f64, points: usize) -> Vec<f64> {
    let last = (points - 1) as f64;
    (0..points)
        .map(|k| {
            if k + 1 == points {
                d_max
            } else {
                d_min + (d_max - d_min) * (k as f64 / last)
            }
        })
        .collect()
}

/// Points needed for [`SAMPLES_PER_PERIOD`] samples per oscillation over the
/// range; `|Im φ|` is linear in `d`, so one period spans `2π d / |Im φ(d)|`.
pub fn resolved_points(config: &SweepConfig, params: &[PhysicalParams]) -> Result<usize> {
    let mut needed = config.points;
    for p in params {
        let rate = phi_parameter(p, 1.0)?.im.abs();
        let periods = (config.d_max - config.d_min) * rate / (2.0 * PI);
        needed = needed.max((SAMPLES_PER_PERIOD * periods).ceil() as usize + 1);
    }
    Ok(needed)
}

/// Evaluates every `(B, d)` point, in parallel, returning rows ordered by
/// ascending `B` then ascending `d`.
pub fn evaluate(config: &SweepConfig, params: &[PhysicalParams]) -> Result<Vec<SweepRow>> {
    let points = if config.points_explicit {
        config.points
    } else {
        resolved_points(config, params)?
    };
    let grid = distance_grid(config.d_min, config.d_max, points);

    let mut order: Vec<&PhysicalParams> = params.iter().collect();
    order.sort_by(|a, b| a.magnetic_field.total_cmp(&b.magnetic_field));

    let mut rows = Vec::with_capacity(order.len() * grid.len());
    for p in order {
        let regime = RegimeTag::classify(derive(p)?.field_shift_a);
        let chunk: Result<Vec<SweepRow>> = grid
            .par_iter()
            .map(|&d| {
                let (potential, force) = potential_and_force(p, d, config.term)?;
                Ok(SweepRow {
                    d,
                    b: p.magnetic_field,
                    term: config.term,
                    potential_re: potential.re,
                    potential_im: potential.im,
                    force_re: force.re,
                    force_im: force.im,
                    regime,
                })
            })
            .collect();
        rows.extend(chunk?);
    }
    Ok(rows)
}

pub fn write_csv(out: &mut impl Write, rows: &[SweepRow]) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", row.csv_line())?;
    }
    Ok(())
}

pub fn write_jsonl(out: &mut impl Write, rows: &[SweepRow]) -> std::io::Result<()> {
    for row in rows {
        serde_json::to_writer(&mut *out, row)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Sign changes of `values`, ignoring exact zeros.
pub fn zero_crossings(values: impl IntoIterator<Item = f64>) -> usize {
    let mut count = 0;
    let mut previous: Option<bool> = None;
    for v in values {
        if v == 0.0 {
            continue;
        }
        let positive = v > 0.0;
        if previous.is_some_and(|p| p != positive) {
            count += 1;
        }
        previous = Some(positive);
    }
    count
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldSummary {
    #[serde(rename = "B")]
    pub b: f64,
    pub regime: RegimeTag,
    pub zero_crossings: usize,
    pub max_abs_force_re: f64,
    /// Largest `|Re F|` for `d ≤ 1`.
    pub max_abs_force_re_near: f64,
    /// Largest `|Re F|` for `d ≥ 2`.
    pub max_abs_force_re_far: f64,
}

/// Per-field statistics of `Re F` over the rows of one term.
pub fn summarize(rows: &[SweepRow]) -> Vec<FieldSummary> {
    let mut out: Vec<FieldSummary> = Vec::new();
    for chunk in rows.chunk_by(|a, b| a.b == b.b) {
        let max_over = |keep: &dyn Fn(f64) -> bool| {
            chunk
                .iter()
                .filter(|r| keep(r.d))
                .map(|r| r.force_re.abs())
                .fold(0.0, f64::max)
        };
        out.push(FieldSummary {
            b: chunk[0].b,
            regime: chunk[0].regime,
            zero_crossings: zero_crossings(chunk.iter().map(|r| r.force_re)),
            max_abs_force_re: max_over(&|_| true),
            max_abs_force_re_near: max_over(&|d| d <= 1.0),
            max_abs_force_re_far: max_over(&|d| d >= 2.0),
        });
    }
    out
}
