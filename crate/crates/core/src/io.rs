//! Channel persistence in JSON and CSV form.
//!
//! JSON layout:
//!
//! ```json
//! {
//!   "n_r": 2,
//!   "n_t": 3,
//!   "power_hint": 1.5,
//!   "entries": [[re, im], [re, im], ...]
//! }
//! ```
//!
//! `entries` is row-major with `n_r * n_t` pairs; `power_hint` is optional.
//!
//! CSV layout: a header line `<n_r>,<n_t>`, then `n_r` lines of `2 * n_t`
//! reals, the real and imaginary part of each column interleaved. CSV has no
//! slot for a power hint.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channel::MimoChannel;
use crate::error::Error;
use crate::matrix::ComplexMatrix;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelFormat {
    Json,
    Csv,
}

/// A channel read from disk, with the file's power hint when present.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedChannel {
    pub channel: MimoChannel,
    pub power_hint: Option<f64>,
}

#[derive(Serialize, Deserialize)]
struct ChannelFile {
    n_r: usize,
    n_t: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    power_hint: Option<f64>,
    entries: Vec<(f64, f64)>,
}

/// Picks the format from the file extension: `.csv` (any case) is CSV,
/// everything else is JSON.
pub fn format_for_path(path: &Path) -> ChannelFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("csv") => ChannelFormat::Csv,
        _ => ChannelFormat::Json,
    }
}

pub fn load_channel(path: &Path) -> Result<LoadedChannel> {
    load_channel_with_format(path, format_for_path(path))
}

pub fn load_channel_with_format(path: &Path, format: ChannelFormat) -> Result<LoadedChannel> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::parse(path.display().to_string(), format!("cannot read file: {e}")))?;
    match format {
        ChannelFormat::Json => parse_json(&text).map_err(|e| locate(e, path)),
        ChannelFormat::Csv => parse_csv(&text).map_err(|e| locate(e, path)),
    }
}

fn locate(err: Error, path: &Path) -> Error {
    match err {
        Error::Parse { context, message } => Error::Parse {
            context: format!("{}: {context}", path.display()),
            message,
        },
        other => other,
    }
}

pub fn save_channel(
    channel: &MimoChannel,
    power_hint: Option<f64>,
    path: &Path,
    format: ChannelFormat,
) -> Result<()> {
    let text = match format {
        ChannelFormat::Json => to_json(channel, power_hint)?,
        ChannelFormat::Csv => to_csv(channel),
    };
    fs::write(path, text).map_err(|e| {
        Error::parse(
            path.display().to_string(),
            format!("cannot write file: {e}"),
        )
    })
}

fn parse_json(text: &str) -> Result<LoadedChannel> {
    let file: ChannelFile = serde_json::from_str(text).map_err(|e| {
        Error::parse(
            format!("line {}, column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    if file.n_r == 0 || file.n_t == 0 {
        return Err(Error::parse(
            "header",
            format!(
                "dimensions must be at least 1, got n_r={}, n_t={}",
                file.n_r, file.n_t
            ),
        ));
    }
    let expected = file.n_r * file.n_t;
    if file.entries.len() != expected {
        return Err(Error::parse(
            "entries",
            format!(
                "expected {expected} entries for {}x{}, found {}",
                file.n_r,
                file.n_t,
                file.entries.len()
            ),
        ));
    }
    if let Some(hint) = file.power_hint {
        if !hint.is_finite() || hint <= 0.0 {
            return Err(Error::parse(
                "power_hint",
                format!("must be a finite positive number, got {hint}"),
            ));
        }
    }
    let entries: Vec<Complex64> = file
        .entries
        .iter()
        .map(|&(re, im)| Complex64::new(re, im))
        .collect();
    let h = ComplexMatrix::from_entries(file.n_r, file.n_t, entries).map_err(|e| match e {
        Error::InvalidInput(msg) => Error::parse("entries", msg),
        other => other,
    })?;
    Ok(LoadedChannel {
        channel: MimoChannel::new(h),
        power_hint: file.power_hint,
    })
}

fn to_json(channel: &MimoChannel, power_hint: Option<f64>) -> Result<String> {
    let file = ChannelFile {
        n_r: channel.n_r(),
        n_t: channel.n_t(),
        power_hint,
        entries: channel
            .matrix()
            .entries()
            .iter()
            .map(|z| (z.re, z.im))
            .collect(),
    };
    serde_json::to_string_pretty(&file).map_err(|e| Error::parse("serialization", e.to_string()))
}

fn parse_csv(text: &str) -> Result<LoadedChannel> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::parse("line 1", "empty file".to_string()))?;
    let dims: Vec<&str> = header.split(',').map(str::trim).collect();
    if dims.len() != 2 {
        return Err(Error::parse(
            "line 1",
            format!("expected header '<n_r>,<n_t>', found {} fields", dims.len()),
        ));
    }
    let n_r: usize = dims[0]
        .parse()
        .map_err(|_| Error::parse("line 1, field 1", format!("invalid n_r '{}'", dims[0])))?;
    let n_t: usize = dims[1]
        .parse()
        .map_err(|_| Error::parse("line 1, field 2", format!("invalid n_t '{}'", dims[1])))?;
    if n_r == 0 || n_t == 0 {
        return Err(Error::parse(
            "line 1",
            format!("dimensions must be at least 1, got n_r={n_r}, n_t={n_t}"),
        ));
    }

    let mut entries = Vec::with_capacity(n_r * n_t);
    let mut rows = 0usize;
    for (line_idx, line) in lines {
        let line_no = line_idx + 1;
        if rows == n_r {
            return Err(Error::parse(
                format!("line {line_no}"),
                format!("expected {n_r} data rows, found more"),
            ));
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 2 * n_t {
            return Err(Error::parse(
                format!("line {line_no}"),
                format!("expected {} values, found {}", 2 * n_t, fields.len()),
            ));
        }
        for (f_idx, pair) in fields.chunks(2).enumerate() {
            let re: f64 = pair[0].parse().map_err(|_| {
                Error::parse(
                    format!("line {line_no}, field {}", 2 * f_idx + 1),
                    format!("invalid number '{}'", pair[0]),
                )
            })?;
            let im: f64 = pair[1].parse().map_err(|_| {
                Error::parse(
                    format!("line {line_no}, field {}", 2 * f_idx + 2),
                    format!("invalid number '{}'", pair[1]),
                )
            })?;
            entries.push(Complex64::new(re, im));
        }
        rows += 1;
    }
    if rows != n_r {
        return Err(Error::parse(
            "end of file",
            format!("expected {n_r} data rows, found {rows}"),
        ));
    }
    let h = ComplexMatrix::from_entries(n_r, n_t, entries).map_err(|e| match e {
        Error::InvalidInput(msg) => Error::parse("entries", msg),
        other => other,
    })?;
    Ok(LoadedChannel {
        channel: MimoChannel::new(h),
        power_hint: None,
    })
}

fn to_csv(channel: &MimoChannel) -> String {
    let mut out = format!("{},{}\n", channel.n_r(), channel.n_t());
    for i in 0..channel.n_r() {
        let row: Vec<String> = (0..channel.n_t())
            .flat_map(|j| {
                let z = channel.matrix().get(i, j);
                // RFC-style shortest representation that round-trips exactly.
                [format!("{:?}", z.re), format!("{:?}", z.im)]
            })
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
