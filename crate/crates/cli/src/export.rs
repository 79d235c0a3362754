//! Trajectory export as CSV or JSON, plus the matching readers.
//!
//! CSV has the header `t,re_root_1,im_root_1,…` and one row per time;
//! events follow as comment lines
//! `#event t_approx=<t> min_separation=<d> roots=<k>;<k>;…` with 0-based
//! path indices (path `k` is columns `re_root_{k+1}`, `im_root_{k+1}`).
//! Numbers are written in shortest round-trip form, so both formats
//! reproduce every position bit for bit.

use std::io::{self, Write};

use moutard::{CollisionEvent, Complex64, RootTrajectory};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReIm {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ReIm {
    fn from(z: Complex64) -> Self {
        ReIm { re: z.re, im: z.im }
    }
}

impl From<ReIm> for Complex64 {
    fn from(v: ReIm) -> Self {
        Complex64::new(v.re, v.im)
    }
}

#[derive(Serialize, Deserialize)]
struct TrajectoryDoc {
    times: Vec<f64>,
    paths: Vec<Vec<ReIm>>,
    events: Vec<CollisionEvent>,
}

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("empty trajectory")]
    Empty,
    #[error("I/O failure: {0}")]
    Io(#[from] io::Error),
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub fn export_trajectory<W: Write>(rt: &RootTrajectory, format: Format, out: &mut W) -> Result<(), ExportError> {
    if rt.times.is_empty() || rt.paths.is_empty() {
        return Err(ExportError::Empty);
    }
    match format {
        Format::Json => {
            let doc = TrajectoryDoc {
                times: rt.times.clone(),
                paths: rt.paths.iter().map(|p| p.iter().map(|&z| z.into()).collect()).collect(),
                events: rt.events.clone(),
            };
            serde_json::to_writer_pretty(&mut *out, &doc).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        Format::Csv => {
            write!(out, "t")?;
            for k in 1..=rt.paths.len() {
                write!(out, ",re_root_{k},im_root_{k}")?;
            }
            writeln!(out)?;
            for (i, t) in rt.times.iter().enumerate() {
                write!(out, "{t:?}")?;
                for path in &rt.paths {
                    write!(out, ",{:?},{:?}", path[i].re, path[i].im)?;
                }
                writeln!(out)?;
            }
            for e in &rt.events {
                let roots: Vec<String> = e.roots_involved.iter().map(|k| k.to_string()).collect();
                writeln!(
                    out,
                    "#event t_approx={:?} min_separation={:?} roots={}",
                    e.t_approx,
                    e.min_separation,
                    roots.join(";")
                )?;
            }
        }
    }
    Ok(())
}

pub fn read_trajectory_json(text: &str) -> Result<RootTrajectory, ExportError> {
    let doc: TrajectoryDoc = serde_json::from_str(text).map_err(|e| ExportError::Malformed(e.to_string()))?;
    Ok(RootTrajectory {
        times: doc.times,
        paths: doc.paths.into_iter().map(|p| p.into_iter().map(Complex64::from).collect()).collect(),
        events: doc.events,
    })
}

fn number<T: std::str::FromStr>(s: &str) -> Result<T, ExportError> {
    s.parse().map_err(|_| ExportError::Malformed(format!("bad number {s:?}")))
}

fn parse_event(line: &str) -> Result<CollisionEvent, ExportError> {
    let (mut t, mut sep, mut roots) = (None, None, None);
    for field in line.split_whitespace() {
        match field.split_once('=') {
            Some(("t_approx", v)) => t = Some(number(v)?),
            Some(("min_separation", v)) => sep = Some(number(v)?),
            Some(("roots", v)) => {
                roots = Some(v.split(';').filter(|s| !s.is_empty()).map(number).collect::<Result<Vec<usize>, _>>()?)
            }
            _ => return Err(ExportError::Malformed(format!("bad event field {field:?}"))),
        }
    }
    match (t, sep, roots) {
        (Some(t_approx), Some(min_separation), Some(roots_involved)) => Ok(CollisionEvent {
            t_approx,
            roots_involved,
            min_separation,
        }),
        _ => Err(ExportError::Malformed(format!("incomplete event {line:?}"))),
    }
}

pub fn read_trajectory_csv(text: &str) -> Result<RootTrajectory, ExportError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| ExportError::Malformed("missing header".into()))?;
    let columns = header.split(',').count();
    if !header.starts_with("t,") || columns % 2 == 0 {
        return Err(ExportError::Malformed(format!("bad header {header:?}")));
    }
    let n = (columns - 1) / 2;
    let mut rt = RootTrajectory {
        times: Vec::new(),
        paths: vec![Vec::new(); n],
        events: Vec::new(),
    };
    for line in lines {
        if let Some(rest) = line.strip_prefix("#event") {
            rt.events.push(parse_event(rest)?);
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != columns {
            return Err(ExportError::Malformed(format!("expected {columns} columns: {line:?}")));
        }
        rt.times.push(number(fields[0])?);
        for (k, path) in rt.paths.iter_mut().enumerate() {
            path.push(Complex64::new(number(fields[1 + 2 * k])?, number(fields[2 + 2 * k])?));
        }
    }
    Ok(rt)
}
