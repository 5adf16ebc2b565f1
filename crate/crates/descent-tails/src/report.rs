//! Flat output records for bound-comparison sweeps, serialized as CSV or
//! JSON lines.
//!
//! Linear probability columns underflow binary64 long before the bounds
//! stop being comparable, so every linear field has a log-space companion
//! that is always emitted alongside; a linear field whose magnitude fell
//! below the smallest positive binary64 is written as the literal
//! `underflow`, while a field that was never computed (no exact law, or a
//! bound outside its n-domain) is left empty. Decimal fields carry 17
//! significant digits so emitted CSV reparses to identical values.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bounds::BoundReport;

/// One row of a bound-comparison table.
///
/// For each (linear, log) pair: `linear = None` with `log = Some` means
/// underflow; both None means the quantity was not computed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub n: u64,
    pub x: f64,
    pub exact: Option<f64>,
    pub sharp: Option<f64>,
    pub cid: Option<f64>,
    pub qn: Option<f64>,
    pub azuma: Option<f64>,
    pub chernoff: Option<f64>,
    /// exact / sharp.
    pub ratio: Option<f64>,
    pub log_exact: Option<f64>,
    pub log_sharp: f64,
    pub log_cid: f64,
    pub log_qn: Option<f64>,
    pub log_azuma: Option<f64>,
    pub log_chernoff: f64,
}

impl OutputRecord {
    pub fn from_report(rep: &BoundReport) -> OutputRecord {
        let exact = rep.exact.as_ref().map(|r| {
            if r.is_zero() {
                Some(0.0)
            } else {
                linear_from_value(crate::exact::rational_as_f64(r))
            }
        });
        OutputRecord {
            n: rep.n,
            x: rep.x,
            exact: exact.flatten(),
            sharp: linear(rep.sharp_log),
            cid: linear(rep.cid_log),
            qn: rep.qn_log.and_then(linear),
            azuma: rep.azuma_log.and_then(linear),
            chernoff: linear(rep.chernoff_log),
            ratio: rep.ratio(),
            log_exact: rep.exact_log(),
            log_sharp: rep.sharp_log,
            log_cid: rep.cid_log,
            log_qn: rep.qn_log,
            log_azuma: rep.azuma_log,
            log_chernoff: rep.chernoff_log,
        }
    }
}

/// exp, with underflow mapped to None so it can be reported explicitly.
fn linear(log: f64) -> Option<f64> {
    linear_from_value(log.exp())
}

fn linear_from_value(v: f64) -> Option<f64> {
    if v > 0.0 && v.is_finite() {
        Some(v)
    } else {
        None
    }
}

pub const CSV_HEADER: &str = "n,x,exact,sharp,cid,qn,azuma,chernoff,ratio,\
log_exact,log_sharp,log_cid,log_qn,log_azuma,log_chernoff";

/// One CSV row; '.' decimal separator, ',' delimiter, no quoting needed.
pub fn to_csv_row(r: &OutputRecord) -> String {
    let cells: Vec<String> = vec![
        r.n.to_string(),
        fmt(r.x),
        // A genuinely empty tail shows as 0; underflow as the literal.
        pair_cell(r.exact, r.log_exact.is_some()),
        pair_cell(r.sharp, true),
        pair_cell(r.cid, true),
        pair_cell(r.qn, r.log_qn.is_some()),
        pair_cell(r.azuma, r.log_azuma.is_some()),
        pair_cell(r.chernoff, true),
        pair_cell(r.ratio, r.log_exact.is_some()),
        opt_cell(r.log_exact),
        fmt(r.log_sharp),
        fmt(r.log_cid),
        opt_cell(r.log_qn),
        opt_cell(r.log_azuma),
        fmt(r.log_chernoff),
    ];
    cells.join(",")
}

/// JSON-lines form: one self-contained object per row.
pub fn to_json_line(r: &OutputRecord) -> String {
    serde_json::to_string(r).expect("records always serialize")
}

/// 17 significant digits: enough for exact f64 round trips.
fn fmt(v: f64) -> String {
    if v == f64::NEG_INFINITY {
        return "-inf".into();
    }
    format!("{v:.16e}")
}

fn pair_cell(linear: Option<f64>, computed: bool) -> String {
    match (linear, computed) {
        (Some(v), _) => fmt(v),
        (None, true) => "underflow".into(),
        (None, false) => String::new(),
    }
}

fn opt_cell(v: Option<f64>) -> String {
    match v {
        Some(v) => fmt(v),
        None => String::new(),
    }
}

/// Reparses a CSV row produced by [`to_csv_row`]; `underflow` and empty
/// cells map back to None.
pub fn parse_csv_row(line: &str) -> Option<OutputRecord> {
    let cells: Vec<&str> = line.split(',').collect();
    if cells.len() != 15 {
        return None;
    }
    let req = |s: &str| -> Option<f64> {
        if s == "-inf" {
            Some(f64::NEG_INFINITY)
        } else {
            s.parse().ok()
        }
    };
    let opt = |s: &str| -> Option<Option<f64>> {
        match s {
            "underflow" | "" => Some(None),
            other => req(other).map(Some),
        }
    };
    Some(OutputRecord {
        n: cells[0].parse().ok()?,
        x: req(cells[1])?,
        exact: opt(cells[2])?,
        sharp: opt(cells[3])?,
        cid: opt(cells[4])?,
        qn: opt(cells[5])?,
        azuma: opt(cells[6])?,
        chernoff: opt(cells[7])?,
        ratio: opt(cells[8])?,
        log_exact: opt(cells[9])?,
        log_sharp: req(cells[10])?,
        log_cid: req(cells[11])?,
        log_qn: opt(cells[12])?,
        log_azuma: opt(cells[13])?,
        log_chernoff: req(cells[14])?,
    })
}
