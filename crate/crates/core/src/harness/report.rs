use std::fmt::Write as _;

use clap::ValueEnum;

use crate::asymptotic::Stabilization;
use crate::error::{AlgebraError, Result};
use crate::harness::run::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Markdown,
}

pub const CSV_HEADER: [&str; 6] = ["fixture", "i", "n", "mu", "socle_dim", "ass_primes"];

/// One row per grid cell; the Ass column joins sorted labels with `;`.
pub fn emit_csv(reports: &[Report]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| AlgebraError::Validation(format!("csv output: {e}"));
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in reports {
        if let Some(scan) = &r.ass_scan {
            for c in &scan.cells {
                w.write_record([
                    r.fixture.clone(),
                    c.i.to_string(),
                    c.n.to_string(),
                    c.mu.to_string(),
                    c.socle_dim.to_string(),
                    c.ass.join(";"),
                ])
                .map_err(io)?;
            }
        }
    }
    w.into_inner()
        .map_err(|e| AlgebraError::Validation(format!("csv output: {e}")))
}

/// A single report serializes as an object, several as an array.
pub fn emit_json(reports: &[Report]) -> Result<Vec<u8>> {
    let mut out = match reports {
        [one] => serde_json::to_vec_pretty(one),
        many => serde_json::to_vec_pretty(many),
    }
    .map_err(|e| AlgebraError::Validation(format!("json output: {e}")))?;
    out.push(b'\n');
    Ok(out)
}

fn set(labels: &[String]) -> String {
    if labels.is_empty() {
        "∅".to_string()
    } else {
        format!("{{{}}}", labels.join(", "))
    }
}

pub fn emit_markdown(reports: &[Report]) -> Vec<u8> {
    let mut s = String::new();
    for r in reports {
        let _ = writeln!(s, "## {} ({})\n", r.fixture, r.command.name());
        let w = r.window;
        let _ = writeln!(s, "Window: i ≤ {}, n ≤ {}, j ≤ {}\n", w.imax, w.nmax, w.jmax);
        if let Some(res) = &r.resolution {
            let _ = writeln!(s, "Betti ranks: {:?}\n", res.ranks);
        }
        if let Some(scan) = &r.ass_scan {
            let stab = match &scan.stabilization {
                Stabilization::Found { i0, n0, .. } => Some((*i0, *n0)),
                Stabilization::WindowTooSmall => None,
            };
            let _ = write!(s, "| i \\ n |");
            for n in 0..=scan.n_max {
                let _ = write!(s, " {n} |");
            }
            let _ = write!(s, "\n|---|");
            for _ in 0..=scan.n_max {
                let _ = write!(s, "---|");
            }
            s.push('\n');
            for i in 0..=scan.i_max {
                let _ = write!(s, "| {i} |");
                for n in 0..=scan.n_max {
                    let cell = set(&scan.cell(i, n).ass);
                    if stab == Some((i, n)) {
                        let _ = write!(s, " **{cell}** |");
                    } else {
                        let _ = write!(s, " {cell} |");
                    }
                }
                s.push('\n');
            }
            s.push('\n');
            match &scan.stabilization {
                Stabilization::Found { i0, n0, even, odd } => {
                    let _ = writeln!(
                        s,
                        "Stabilization (empirical): **(i0, n0) = ({i0}, {n0})**, even {}, odd {}\n",
                        set(even),
                        set(odd)
                    );
                }
                Stabilization::WindowTooSmall => {
                    let _ = writeln!(s, "Stabilization: window too small\n");
                }
            }
            let _ = writeln!(s, "Union: {}\n", set(&scan.union));
        }
        if let Some(cx) = &r.cx_scan {
            let vals: Vec<String> = cx
                .entries
                .iter()
                .map(|e| e.fit.cx.map_or("?".to_string(), |v| v.to_string()))
                .collect();
            let _ = writeln!(s, "cx by j: [{}], j* = {:?}\n", vals.join(", "), cx.j_star);
        }
        if !r.checks.is_empty() {
            let _ = writeln!(s, "| check | status | detail |\n|---|---|---|");
            for c in &r.checks {
                let _ = writeln!(s, "| {} | {:?} | {} |", c.name, c.status, c.detail.replace('|', "\\|"));
            }
            s.push('\n');
        }
    }
    s.into_bytes()
}

pub fn emit_report(reports: &[Report], format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Csv => emit_csv(reports),
        Format::Json => emit_json(reports),
        Format::Markdown => Ok(emit_markdown(reports)),
    }
}
