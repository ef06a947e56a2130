//! Result records (JSON lines) and convergence traces (CSV).
//!
//! A results file starts with the header record
//! `{"format":"dsta-results","version":1}` followed by one [`ResultRecord`]
//! per line. Field names:
//!
//! | field            | meaning                                         |
//! |------------------|-------------------------------------------------|
//! | `instance`       | instance name                                   |
//! | `algorithm`      | `"STA"` or `"DSTA"`                             |
//! | `params`         | full [`StaParams`], seed of this trial included |
//! | `trial`          | trial index within the batch                    |
//! | `seed`           | seed the trial ran with                         |
//! | `best_cost`      | best objective value reached                    |
//! | `wall_time_secs` | optional, omitted unless timings were requested |
//! | `best_solution`  | optional, 0-based solution vector               |
//!
//! Trace files have the header `iteration,current_cost,incumbent_cost`.
//! Costs are printed in the shortest decimal form that parses back to the
//! same `f64`.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::engine::{Mode, StaParams, TracePoint};
use crate::error::{Error, Result};

pub const RESULTS_FORMAT: &str = "dsta-results";
pub const RESULTS_VERSION: u32 = 1;
pub const TRACE_HEADER: &str = "iteration,current_cost,incumbent_cost";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct ResultsHeader {
    format: String,
    version: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub instance: String,
    pub algorithm: Mode,
    pub params: StaParams,
    pub trial: usize,
    pub seed: u64,
    pub best_cost: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_secs: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub best_solution: Option<Vec<usize>>,
}

/// Writes the header and one line per record. Returns the byte count.
pub fn write_results<W: Write>(records: &[ResultRecord], mut sink: W) -> Result<usize> {
    let mut out = serde_json::to_string(&ResultsHeader { format: RESULTS_FORMAT.into(), version: RESULTS_VERSION })?;
    out.push('\n');
    for r in records {
        out.push_str(&serde_json::to_string(r)?);
        out.push('\n');
    }
    sink.write_all(out.as_bytes())?;
    Ok(out.len())
}

pub fn read_results<R: BufRead>(source: R) -> Result<Vec<ResultRecord>> {
    let mut lines = source.lines().enumerate();
    let header: ResultsHeader = match lines.next() {
        Some((_, line)) => serde_json::from_str(&line?).map_err(|e| Error::parse(1, e.to_string()))?,
        None => return Err(Error::parse(1, "empty results file")),
    };
    if header.format != RESULTS_FORMAT || header.version != RESULTS_VERSION {
        return Err(Error::parse(1, format!("unsupported results header {header:?}")));
    }
    let mut records = Vec::new();
    for (idx, line) in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        records.push(serde_json::from_str(&line).map_err(|e| Error::parse(idx + 1, e.to_string()))?);
    }
    Ok(records)
}

pub fn write_trace<W: Write>(trace: &[TracePoint], mut sink: W) -> Result<usize> {
    let mut out = String::with_capacity(32 * (trace.len() + 1));
    out.push_str(TRACE_HEADER);
    out.push('\n');
    for p in trace {
        out.push_str(&format!("{},{},{}\n", p.iteration, p.current_cost, p.incumbent_cost));
    }
    sink.write_all(out.as_bytes())?;
    Ok(out.len())
}

pub fn read_trace<R: BufRead>(source: R) -> Result<Vec<TracePoint>> {
    let mut lines = source.lines().enumerate();
    let header = match lines.next() {
        Some((_, line)) => line?,
        None => String::new(),
    };
    if header.trim() != TRACE_HEADER {
        return Err(Error::parse(1, format!("expected header `{TRACE_HEADER}`")));
    }
    let mut trace = Vec::new();
    for (idx, line) in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(Error::parse(lineno, "expected 3 columns"));
        }
        let bad = |f: &str| Error::parse(lineno, format!("bad number `{f}`"));
        trace.push(TracePoint {
            iteration: fields[0].trim().parse().map_err(|_| bad(fields[0]))?,
            current_cost: fields[1].trim().parse().map_err(|_| bad(fields[1]))?,
            incumbent_cost: fields[2].trim().parse().map_err(|_| bad(fields[2]))?,
        });
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn record(cost: f64) -> ResultRecord {
        ResultRecord {
            instance: "kroA100".into(),
            algorithm: Mode::Dynamic,
            params: StaParams::default(),
            trial: 3,
            seed: 0xDEAD_BEEF,
            best_cost: cost,
            wall_time_secs: None,
            best_solution: Some(vec![2, 0, 1]),
        }
    }

    #[test]
    fn empty_results_are_header_only() {
        let mut buf = Vec::new();
        let n = write_results(&[], &mut buf).unwrap();
        assert_eq!(n, buf.len());
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 1);
        assert_eq!(read_results(text.as_bytes()).unwrap(), vec![]);
    }

    #[test]
    fn three_iterations_four_lines() {
        let trace: Vec<TracePoint> =
            (1..=3).map(|i| TracePoint { iteration: i, current_cost: 10.0 / i as f64, incumbent_cost: 1.0 }).collect();
        let mut buf = Vec::new();
        write_trace(&trace, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 4);
        assert_eq!(text.lines().next().unwrap(), TRACE_HEADER);
    }

    #[test]
    fn results_round_trip() {
        let recs = vec![record(21_910.123_456_789), record(0.1 + 0.2)];
        let mut buf = Vec::new();
        write_results(&recs, &mut buf).unwrap();
        assert_eq!(read_results(buf.as_slice()).unwrap(), recs);
    }

    #[test]
    fn wrong_headers_rejected() {
        assert!(read_trace("a,b,c\n1,2,3\n".as_bytes()).is_err());
        assert!(read_results("{\"format\":\"other\",\"version\":1}\n".as_bytes()).is_err());
    }

    proptest! {
        #[test]
        fn trace_round_trip(points in prop::collection::vec((-1e12..1e12f64, -1e12..1e12f64), 0..50)) {
            let trace: Vec<TracePoint> = points
                .iter()
                .enumerate()
                .map(|(i, &(c, b))| TracePoint { iteration: i + 1, current_cost: c, incumbent_cost: b })
                .collect();
            let mut buf = Vec::new();
            write_trace(&trace, &mut buf).unwrap();
            prop_assert_eq!(read_trace(buf.as_slice()).unwrap(), trace);
        }
    }
}
