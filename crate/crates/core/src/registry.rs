//! Best-known objective values and published solver results, loaded from
//! plain CSV. Both tables also ship embedded in the crate.

use std::collections::HashMap;

use crate::error::{Error, Result};

const BEST_KNOWN_CSV: &str = include_str!("../data/best_known.csv");
const REFERENCE_CSV: &str = include_str!("../data/published_reference.csv");

/// Instance name -> best known objective. Lookup of an unknown name is
/// `None`, never zero.
#[derive(Debug, Clone, Default)]
pub struct BestKnownRegistry {
    map: HashMap<String, i64>,
}

impl BestKnownRegistry {
    /// Parses "name,best" lines; '#' starts a comment.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut map = HashMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (name, value) = line
                .split_once(',')
                .ok_or_else(|| Error::parse(idx + 1, format!("expected \"name,best\", got {line:?}")))?;
            let best: i64 = value
                .trim()
                .parse()
                .map_err(|_| Error::parse(idx + 1, format!("bad objective value {value:?}")))?;
            if best <= 0 {
                return Err(Error::parse(
                    idx + 1,
                    format!("objective for {name} must be positive, got {best}"),
                ));
            }
            if map.insert(name.trim().to_string(), best).is_some() {
                return Err(Error::parse(idx + 1, format!("duplicate instance {name:?}")));
            }
        }
        Ok(BestKnownRegistry { map })
    }

    /// The values shipped with the crate.
    pub fn builtin() -> Self {
        Self::from_csv(BEST_KNOWN_CSV).expect("embedded table is well-formed")
    }

    pub fn lookup(&self, name: &str) -> Option<i64> {
        self.map.get(name).copied()
    }

    pub fn insert(&mut self, name: impl Into<String>, best: i64) {
        self.map.insert(name.into(), best);
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Published per-instance results of this solver and others, for display
/// next to fresh measurements.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ReferenceEntry {
    pub hacs_error: Option<f64>,
    pub hacs_time: Option<f64>,
    pub hacs_optimal: Option<f64>,
    pub hacs0_error: Option<f64>,
    pub hacs0_time: Option<f64>,
    pub hacs0_optimal: Option<f64>,
    pub sg_error: Option<f64>,
    pub baf_error: Option<f64>,
    pub ppc_error: Option<f64>,
    pub sg_time: Option<f64>,
    pub baf_time: Option<f64>,
}

#[derive(Debug, Clone, Default)]
pub struct ReferenceTable {
    map: HashMap<String, ReferenceEntry>,
}

const REFERENCE_HEADER: &str = "name,hacs_error,hacs_time,hacs_optimal,hacs0_error,hacs0_time,hacs0_optimal,sg_error,baf_error,ppc_error,sg_time,baf_time";

impl ReferenceTable {
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut map = HashMap::new();
        let mut header_seen = false;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if !header_seen {
                if line != REFERENCE_HEADER {
                    return Err(Error::parse(
                        idx + 1,
                        format!("expected header {REFERENCE_HEADER:?}"),
                    ));
                }
                header_seen = true;
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 12 {
                return Err(Error::parse(
                    idx + 1,
                    format!("expected 12 fields, got {}", fields.len()),
                ));
            }
            let num = |i: usize| -> Result<Option<f64>> {
                if fields[i].is_empty() {
                    return Ok(None);
                }
                fields[i]
                    .parse()
                    .map(Some)
                    .map_err(|_| Error::parse(idx + 1, format!("bad number {:?}", fields[i])))
            };
            let entry = ReferenceEntry {
                hacs_error: num(1)?,
                hacs_time: num(2)?,
                hacs_optimal: num(3)?,
                hacs0_error: num(4)?,
                hacs0_time: num(5)?,
                hacs0_optimal: num(6)?,
                sg_error: num(7)?,
                baf_error: num(8)?,
                ppc_error: num(9)?,
                sg_time: num(10)?,
                baf_time: num(11)?,
            };
            map.insert(fields[0].to_string(), entry);
        }
        Ok(ReferenceTable { map })
    }

    pub fn builtin() -> Self {
        Self::from_csv(REFERENCE_CSV).expect("embedded table is well-formed")
    }

    pub fn get(&self, name: &str) -> Option<&ReferenceEntry> {
        self.map.get(name)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}
