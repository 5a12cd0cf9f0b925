//! Text formats: the θ literal, orbit JSON lines, and decoders for the critical
//! and region exports.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::critical::{CriticalExport, CRITICAL_SCHEMA_VERSION};
use crate::gauss::Cx;
use crate::regions::{RegionsExport, REGIONS_SCHEMA_VERSION};
use crate::transversal::OrbitPoint;

#[derive(Debug, Error, PartialEq)]
pub enum FormatError {
    #[error("malformed complex literal {0:?}: expected [-]float[(+|-)floati]")]
    Theta(String),
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("schema version {found} does not match {expected}")]
    Schema { found: u32, expected: u32 },
    #[error("invalid record: {0}")]
    Record(&'static str),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json(e.to_string())
    }
}

/// Length of the unsigned decimal float at the start of `s`
/// (`digits [. digits] [(e|E) [+|-] digits]`, digits on at least one side of the point).
fn float_prefix(s: &[u8]) -> Option<usize> {
    let digits = |from: usize| s[from..].iter().take_while(|c| c.is_ascii_digit()).count();
    let mut i = digits(0);
    let mut any = i > 0;
    if s.get(i) == Some(&b'.') {
        let d = digits(i + 1);
        any |= d > 0;
        i += 1 + d;
    }
    if !any {
        return None;
    }
    if matches!(s.get(i), Some(b'e' | b'E')) {
        let mut j = i + 1;
        if matches!(s.get(j), Some(b'+' | b'-')) {
            j += 1;
        }
        let d = digits(j);
        if d == 0 {
            return None;
        }
        i = j + d;
    }
    Some(i)
}

/// Parse a complex literal.
///
/// ```text
/// theta  = ["-"] float [ ("+" | "-") float "i" ]
/// float  = digits ["." [digits]] [exp] | "." digits [exp]
/// exp    = ("e" | "E") ["+" | "-"] digits
/// ```
pub fn parse_theta(text: &str) -> Result<Cx, FormatError> {
    let bad = || FormatError::Theta(text.to_string());
    let s = text.trim().as_bytes();
    let (neg, mut i) = if s.first() == Some(&b'-') { (true, 1) } else { (false, 0) };
    let n = float_prefix(&s[i..]).ok_or_else(bad)?;
    let re_str = std::str::from_utf8(&s[i..i + n]).map_err(|_| bad())?;
    let mut re: f64 = re_str.parse().map_err(|_| bad())?;
    if neg {
        re = -re;
    }
    i += n;
    let mut im = 0.0;
    if i < s.len() {
        let sign = match s[i] {
            b'+' => 1.0,
            b'-' => -1.0,
            _ => return Err(bad()),
        };
        i += 1;
        let n = float_prefix(&s[i..]).ok_or_else(bad)?;
        let im_str = std::str::from_utf8(&s[i..i + n]).map_err(|_| bad())?;
        im = sign * im_str.parse::<f64>().map_err(|_| bad())?;
        i += n;
        if s.get(i) != Some(&b'i') || i + 1 != s.len() {
            return Err(bad());
        }
    }
    if !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(Cx::new(re, im))
}

/// One line of an orbit export.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitRecord {
    pub theta: f64,
    pub w1: [f64; 2],
    pub w2: [f64; 2],
    pub k: u8,
    pub case: Option<u8>,
    pub t_return: f64,
}

impl OrbitRecord {
    pub fn from_point(p: &OrbitPoint) -> Self {
        OrbitRecord {
            theta: p.point.theta,
            w1: [p.point.w1.re, p.point.w1.im],
            w2: [p.point.w2.re, p.point.w2.im],
            k: p.point.k,
            case: p.case,
            t_return: p.t_return,
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("plain record")
    }

    pub fn w1(&self) -> Cx {
        Cx::new(self.w1[0], self.w1[1])
    }

    pub fn w2(&self) -> Cx {
        Cx::new(self.w2[0], self.w2[1])
    }

    fn check(&self) -> Result<(), FormatError> {
        let finite = [self.theta, self.w1[0], self.w1[1], self.w2[0], self.w2[1], self.t_return];
        if finite.iter().any(|x| !x.is_finite()) {
            return Err(FormatError::Record("non-finite value"));
        }
        if self.k != 1 && self.k != 2 {
            return Err(FormatError::Record("index must be 1 or 2"));
        }
        match self.case {
            Some(c) if !(1..=4).contains(&c) => Err(FormatError::Record("case must be 1..4")),
            Some(_) if self.k == 2 => Err(FormatError::Record("index-2 records carry no case")),
            _ => Ok(()),
        }
    }
}

pub fn decode_orbit_line(line: &str) -> Result<OrbitRecord, FormatError> {
    let r: OrbitRecord = serde_json::from_str(line)?;
    r.check()?;
    Ok(r)
}

/// Decode a whole JSON-lines document, skipping blank lines.
pub fn decode_orbit_jsonl(text: &str) -> Result<Vec<OrbitRecord>, FormatError> {
    text.lines().filter(|l| !l.trim().is_empty()).map(decode_orbit_line).collect()
}

pub fn encode_orbit_jsonl(points: &[OrbitPoint]) -> String {
    let mut out = String::new();
    for p in points {
        out.push_str(&OrbitRecord::from_point(p).to_line());
        out.push('\n');
    }
    out
}

pub fn decode_critical(text: &str) -> Result<CriticalExport, FormatError> {
    let e: CriticalExport = serde_json::from_str(text)?;
    if e.schema_version != CRITICAL_SCHEMA_VERSION {
        return Err(FormatError::Schema { found: e.schema_version, expected: CRITICAL_SCHEMA_VERSION });
    }
    if e.count != e.pairs.len() {
        return Err(FormatError::Record("count does not match pairs"));
    }
    if e.pairs.iter().any(|p| p.4 != e.ring) {
        return Err(FormatError::Record("pair ring differs from header"));
    }
    Ok(e)
}

pub fn decode_regions(text: &str) -> Result<RegionsExport, FormatError> {
    let e: RegionsExport = serde_json::from_str(text)?;
    if e.schema_version != REGIONS_SCHEMA_VERSION {
        return Err(FormatError::Schema { found: e.schema_version, expected: REGIONS_SCHEMA_VERSION });
    }
    for r in &e.regions {
        for p in &r.boundary {
            match p.kind.as_str() {
                "arc" if p.center.is_some() && p.radius.is_some() && p.sweep.is_some() => {}
                "segment" if p.center.is_none() => {}
                _ => return Err(FormatError::Record("bad boundary piece")),
            }
        }
    }
    Ok(e)
}
