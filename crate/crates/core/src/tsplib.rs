//! TSPLIB ingestion: plain TSP files and the clustered GTSP extension
//! (`GTSP_SETS` / `GTSP_SET_SECTION`), plus a writer for the latter.
//!
//! Distance computation follows the TSPLIB conventions bit-exactly:
//! `EUC_2D` rounds the Euclidean norm to the nearest integer, `CEIL_2D`
//! rounds up, `ATT` and `GEO` use the published pseudo-Euclidean and
//! geographical formulas.

use crate::error::{Error, Result};
use crate::instance::GtspInstance;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeWeightKind {
    Euc2d,
    Ceil2d,
    Geo,
    Att,
    Explicit,
}

impl EdgeWeightKind {
    fn parse(s: &str, line: usize) -> Result<Self> {
        match s {
            "EUC_2D" => Ok(EdgeWeightKind::Euc2d),
            "CEIL_2D" => Ok(EdgeWeightKind::Ceil2d),
            "GEO" => Ok(EdgeWeightKind::Geo),
            "ATT" => Ok(EdgeWeightKind::Att),
            "EXPLICIT" => Ok(EdgeWeightKind::Explicit),
            other => Err(Error::parse(
                line,
                format!("unsupported edge weight type {other:?}"),
            )),
        }
    }

    pub fn keyword(&self) -> &'static str {
        match self {
            EdgeWeightKind::Euc2d => "EUC_2D",
            EdgeWeightKind::Ceil2d => "CEIL_2D",
            EdgeWeightKind::Geo => "GEO",
            EdgeWeightKind::Att => "ATT",
            EdgeWeightKind::Explicit => "EXPLICIT",
        }
    }
}

/// Raw parse of a TSPLIB file: metadata plus either node coordinates or an
/// explicit matrix, before any clustering is applied.
#[derive(Debug, Clone)]
pub struct TspData {
    pub name: String,
    pub n: usize,
    pub weight_kind: EdgeWeightKind,
    pub coords: Option<Vec<(f64, f64)>>,
    /// Full symmetric matrix, present when `weight_kind` is `Explicit`.
    pub explicit: Option<Vec<i64>>,
}

impl TspData {
    /// Distance between two nodes under this instance's weight convention.
    pub fn distance(&self, u: usize, v: usize) -> i64 {
        match self.weight_kind {
            EdgeWeightKind::Explicit => self.explicit.as_ref().unwrap()[u * self.n + v],
            kind => {
                let coords = self.coords.as_ref().unwrap();
                coord_distance(kind, coords[u], coords[v])
            }
        }
    }

    /// Materializes the full n*n matrix as 32-bit values.
    pub fn full_matrix(&self) -> Result<Vec<u32>> {
        let n = self.n;
        let mut out = vec![0u32; n * n];
        for u in 0..n {
            for v in 0..n {
                let d = self.distance(u, v);
                if d < 0 || d >= u32::MAX as i64 {
                    return Err(Error::InvalidInstance(format!(
                        "distance between nodes {} and {} is out of range: {}",
                        u + 1,
                        v + 1,
                        d
                    )));
                }
                out[u * n + v] = d as u32;
            }
        }
        Ok(out)
    }
}

/// TSPLIB nearest-integer rounding: `(int)(x + 0.5)`.
fn nint(x: f64) -> i64 {
    (x + 0.5).floor() as i64
}

fn coord_distance(kind: EdgeWeightKind, (x1, y1): (f64, f64), (x2, y2): (f64, f64)) -> i64 {
    let dx = x1 - x2;
    let dy = y1 - y2;
    match kind {
        EdgeWeightKind::Euc2d => nint((dx * dx + dy * dy).sqrt()),
        EdgeWeightKind::Ceil2d => (dx * dx + dy * dy).sqrt().ceil() as i64,
        EdgeWeightKind::Att => {
            let r = ((dx * dx + dy * dy) / 10.0).sqrt();
            let t = nint(r);
            if (t as f64) < r {
                t + 1
            } else {
                t
            }
        }
        EdgeWeightKind::Geo => {
            let lat1 = geo_radians(x1);
            let lon1 = geo_radians(y1);
            let lat2 = geo_radians(x2);
            let lon2 = geo_radians(y2);
            const RRR: f64 = 6378.388;
            let q1 = (lon1 - lon2).cos();
            let q2 = (lat1 - lat2).cos();
            let q3 = (lat1 + lat2).cos();
            (RRR * (0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3)).acos() + 1.0) as i64
        }
        EdgeWeightKind::Explicit => unreachable!("explicit weights carry no coordinates"),
    }
}

/// TSPLIB GEO coordinates are DDD.MM (degrees and minutes), not decimal.
/// The truncated pi value is part of the format's reference arithmetic and
/// must not be replaced with the exact constant.
#[allow(clippy::approx_constant)]
fn geo_radians(x: f64) -> f64 {
    const PI: f64 = 3.141592;
    let deg = x.trunc();
    let min = x - deg;
    PI * (deg + 5.0 * min / 3.0) / 180.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ExplicitFormat {
    FullMatrix,
    UpperRow,
    LowerRow,
    UpperDiagRow,
    LowerDiagRow,
}

impl ExplicitFormat {
    fn parse(s: &str, line: usize) -> Result<Self> {
        match s {
            "FULL_MATRIX" => Ok(ExplicitFormat::FullMatrix),
            "UPPER_ROW" => Ok(ExplicitFormat::UpperRow),
            "LOWER_ROW" => Ok(ExplicitFormat::LowerRow),
            "UPPER_DIAG_ROW" => Ok(ExplicitFormat::UpperDiagRow),
            "LOWER_DIAG_ROW" => Ok(ExplicitFormat::LowerDiagRow),
            other => Err(Error::parse(
                line,
                format!("unsupported edge weight format {other:?}"),
            )),
        }
    }

    fn entry_count(&self, n: usize) -> usize {
        match self {
            ExplicitFormat::FullMatrix => n * n,
            ExplicitFormat::UpperRow | ExplicitFormat::LowerRow => n * (n - 1) / 2,
            ExplicitFormat::UpperDiagRow | ExplicitFormat::LowerDiagRow => n * (n + 1) / 2,
        }
    }
}

struct Parsed {
    tsp: TspData,
    gtsp_sets: Option<usize>,
    set_section: Option<Vec<Vec<usize>>>,
}

/// Line-oriented cursor over the file, keeping 1-based line numbers for
/// error reporting.
struct Lines<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            lines: text.lines().collect(),
            pos: 0,
        }
    }

    fn next_nonempty(&mut self) -> Option<(usize, &'a str)> {
        while self.pos < self.lines.len() {
            let lineno = self.pos + 1;
            let line = self.lines[self.pos].trim();
            self.pos += 1;
            if !line.is_empty() {
                return Some((lineno, line));
            }
        }
        None
    }

    fn current_lineno(&self) -> usize {
        self.pos.min(self.lines.len().max(1))
    }
}

/// Reads `count` whitespace-separated integer tokens starting at the cursor.
fn read_int_stream(lines: &mut Lines, count: usize, what: &str) -> Result<Vec<i64>> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (lineno, line) = lines
            .next_nonempty()
            .ok_or_else(|| Error::parse(lines.current_lineno(), format!("{what}: file ends early")))?;
        for tok in line.split_whitespace() {
            if out.len() == count {
                return Err(Error::parse(
                    lineno,
                    format!("{what}: more entries than expected"),
                ));
            }
            let v: i64 = tok
                .parse()
                .map_err(|_| Error::parse(lineno, format!("{what}: bad number {tok:?}")))?;
            out.push(v);
        }
    }
    Ok(out)
}

fn parse_internal(text: &str) -> Result<Parsed> {
    let mut lines = Lines::new(text);
    let mut name = String::new();
    let mut dimension: Option<usize> = None;
    let mut weight_kind: Option<(EdgeWeightKind, usize)> = None;
    let mut explicit_format: Option<ExplicitFormat> = None;
    let mut gtsp_sets: Option<usize> = None;
    let mut coords: Option<Vec<(f64, f64)>> = None;
    let mut explicit: Option<Vec<i64>> = None;
    let mut set_section: Option<Vec<Vec<usize>>> = None;

    while let Some((lineno, line)) = lines.next_nonempty() {
        let keyword = line
            .split([':', ' ', '\t'])
            .next()
            .unwrap_or("")
            .to_ascii_uppercase();
        match keyword.as_str() {
            "EOF" => break,
            "NODE_COORD_SECTION" => {
                let n = dimension
                    .ok_or_else(|| Error::parse(lineno, "DIMENSION must precede NODE_COORD_SECTION"))?;
                let mut parsed = vec![None::<(f64, f64)>; n];
                for _ in 0..n {
                    let (ln, l) = lines
                        .next_nonempty()
                        .ok_or_else(|| Error::parse(lineno, "node coord section: file ends early"))?;
                    let fields: Vec<&str> = l.split_whitespace().collect();
                    if fields.len() != 3 {
                        return Err(Error::parse(
                            ln,
                            format!("expected \"id x y\", got {l:?}"),
                        ));
                    }
                    let id: usize = fields[0]
                        .parse()
                        .map_err(|_| Error::parse(ln, format!("bad node id {:?}", fields[0])))?;
                    if id == 0 || id > n {
                        return Err(Error::parse(
                            ln,
                            format!("node id {id} outside 1..={n}"),
                        ));
                    }
                    let x: f64 = fields[1]
                        .parse()
                        .map_err(|_| Error::parse(ln, format!("bad coordinate {:?}", fields[1])))?;
                    let y: f64 = fields[2]
                        .parse()
                        .map_err(|_| Error::parse(ln, format!("bad coordinate {:?}", fields[2])))?;
                    if parsed[id - 1].replace((x, y)).is_some() {
                        return Err(Error::parse(ln, format!("duplicate node id {id}")));
                    }
                }
                coords = Some(
                    parsed
                        .into_iter()
                        .map(|c| c.expect("all ids 1..=n seen exactly once"))
                        .collect(),
                );
            }
            "EDGE_WEIGHT_SECTION" => {
                let n = dimension
                    .ok_or_else(|| Error::parse(lineno, "DIMENSION must precede EDGE_WEIGHT_SECTION"))?;
                let format = explicit_format
                    .ok_or_else(|| Error::parse(lineno, "EDGE_WEIGHT_FORMAT must precede EDGE_WEIGHT_SECTION"))?;
                let raw = read_int_stream(&mut lines, format.entry_count(n), "edge weight section")?;
                explicit = Some(expand_matrix(format, n, &raw, lineno)?);
            }
            "DISPLAY_DATA_SECTION" => {
                let n = dimension
                    .ok_or_else(|| Error::parse(lineno, "DIMENSION must precede DISPLAY_DATA_SECTION"))?;
                for _ in 0..n {
                    lines.next_nonempty();
                }
            }
            "GTSP_SET_SECTION" => {
                let m = gtsp_sets
                    .ok_or_else(|| Error::parse(lineno, "GTSP_SETS must precede GTSP_SET_SECTION"))?;
                let n = dimension
                    .ok_or_else(|| Error::parse(lineno, "DIMENSION must precede GTSP_SET_SECTION"))?;
                set_section = Some(parse_set_section(&mut lines, m, n)?);
            }
            _ => {
                let Some(colon) = line.find(':') else {
                    return Err(Error::parse(lineno, format!("unexpected line {line:?}")));
                };
                let value = line[colon + 1..].trim();
                match keyword.as_str() {
                    "NAME" => name = value.to_string(),
                    "TYPE" | "COMMENT" | "NODE_COORD_TYPE" | "DISPLAY_DATA_TYPE" => {}
                    "DIMENSION" => {
                        let n: usize = value
                            .parse()
                            .map_err(|_| Error::parse(lineno, format!("bad DIMENSION {value:?}")))?;
                        if n == 0 {
                            return Err(Error::parse(lineno, "DIMENSION must be positive"));
                        }
                        dimension = Some(n);
                    }
                    "EDGE_WEIGHT_TYPE" => {
                        weight_kind = Some((EdgeWeightKind::parse(value, lineno)?, lineno));
                    }
                    "EDGE_WEIGHT_FORMAT" => {
                        explicit_format = Some(ExplicitFormat::parse(value, lineno)?);
                    }
                    "GTSP_SETS" => {
                        let m: usize = value
                            .parse()
                            .map_err(|_| Error::parse(lineno, format!("bad GTSP_SETS {value:?}")))?;
                        gtsp_sets = Some(m);
                    }
                    other => {
                        return Err(Error::parse(
                            lineno,
                            format!("unknown keyword {other:?}"),
                        ));
                    }
                }
            }
        }
    }

    let n = dimension.ok_or_else(|| Error::parse(1, "missing DIMENSION"))?;
    let (weight_kind, kind_line) =
        weight_kind.ok_or_else(|| Error::parse(1, "missing EDGE_WEIGHT_TYPE"))?;
    match weight_kind {
        EdgeWeightKind::Explicit => {
            if explicit.is_none() {
                return Err(Error::parse(kind_line, "EXPLICIT instance has no EDGE_WEIGHT_SECTION"));
            }
        }
        _ => {
            if coords.is_none() {
                return Err(Error::parse(
                    kind_line,
                    format!("{} instance has no NODE_COORD_SECTION", weight_kind.keyword()),
                ));
            }
        }
    }

    Ok(Parsed {
        tsp: TspData {
            name,
            n,
            weight_kind,
            coords,
            explicit,
        },
        gtsp_sets,
        set_section,
    })
}

fn expand_matrix(format: ExplicitFormat, n: usize, raw: &[i64], lineno: usize) -> Result<Vec<i64>> {
    let mut full = vec![0i64; n * n];
    let mut it = raw.iter().copied();
    let mut put = |u: usize, v: usize, d: i64| {
        full[u * n + v] = d;
        full[v * n + u] = d;
    };
    match format {
        ExplicitFormat::FullMatrix => {
            for u in 0..n {
                for v in 0..n {
                    full[u * n + v] = it.next().unwrap();
                }
            }
            for u in 0..n {
                for v in u + 1..n {
                    if full[u * n + v] != full[v * n + u] {
                        return Err(Error::parse(
                            lineno,
                            format!("full matrix is asymmetric at nodes {} and {}", u + 1, v + 1),
                        ));
                    }
                }
            }
        }
        ExplicitFormat::UpperRow => {
            for u in 0..n {
                for v in u + 1..n {
                    put(u, v, it.next().unwrap());
                }
            }
        }
        ExplicitFormat::LowerRow => {
            for u in 1..n {
                for v in 0..u {
                    put(u, v, it.next().unwrap());
                }
            }
        }
        ExplicitFormat::UpperDiagRow => {
            for u in 0..n {
                for v in u..n {
                    put(u, v, it.next().unwrap());
                }
            }
        }
        ExplicitFormat::LowerDiagRow => {
            for u in 0..n {
                for v in 0..=u {
                    put(u, v, it.next().unwrap());
                }
            }
        }
    }
    for (i, &d) in full.iter().enumerate() {
        if d < 0 && i / n != i % n {
            return Err(Error::parse(
                lineno,
                format!("negative edge weight between nodes {} and {}", i / n + 1, i % n + 1),
            ));
        }
    }
    Ok(full)
}

fn parse_set_section(lines: &mut Lines, m: usize, n: usize) -> Result<Vec<Vec<usize>>> {
    let mut clusters: Vec<Option<Vec<usize>>> = vec![None; m];
    // Sets are "-1"-terminated token runs that may span lines.
    let mut tokens: Vec<(usize, i64)> = Vec::new();
    let mut sets_seen = 0;
    let mut terminators = 0;
    while terminators < m {
        let (lineno, line) = lines
            .next_nonempty()
            .ok_or_else(|| Error::parse(lines.current_lineno(), "set section: file ends early"))?;
        for tok in line.split_whitespace() {
            let v: i64 = tok
                .parse()
                .map_err(|_| Error::parse(lineno, format!("set section: bad token {tok:?}")))?;
            if v == -1 {
                terminators += 1;
            }
            tokens.push((lineno, v));
            if terminators == m {
                break;
            }
        }
    }

    let mut it = tokens.into_iter();
    while sets_seen < m {
        let (lineno, set_id) = it.next().expect("terminator count guarantees tokens");
        if set_id < 1 || set_id > m as i64 {
            return Err(Error::parse(
                lineno,
                format!("set index {set_id} outside 1..={m}"),
            ));
        }
        let idx = set_id as usize - 1;
        if clusters[idx].is_some() {
            return Err(Error::parse(lineno, format!("duplicate set index {set_id}")));
        }
        let mut members = Vec::new();
        loop {
            let (ln, v) = it
                .next()
                .ok_or_else(|| Error::parse(lineno, "set section: unterminated set"))?;
            if v == -1 {
                break;
            }
            if v < 1 || v > n as i64 {
                return Err(Error::parse(ln, format!("node id {v} outside 1..={n}")));
            }
            members.push(v as usize - 1);
        }
        if members.is_empty() {
            return Err(Error::parse(lineno, format!("set {set_id} is empty")));
        }
        clusters[idx] = Some(members);
        sets_seen += 1;
    }

    Ok(clusters
        .into_iter()
        .map(|c| c.expect("all m set indices seen exactly once"))
        .collect())
}

/// Parses a plain TSPLIB file. GTSP sections are rejected here; use
/// [`parse_gtsp`] for clustered instances.
pub fn parse_tsplib(text: &str) -> Result<TspData> {
    let parsed = parse_internal(text)?;
    if parsed.gtsp_sets.is_some() {
        return Err(Error::InvalidInstance(
            "file declares GTSP_SETS; parse it as a clustered instance".into(),
        ));
    }
    Ok(parsed.tsp)
}

/// Parses a clustered GTSP file (TSPLIB plus `GTSP_SETS` and a
/// `GTSP_SET_SECTION` of "-1"-terminated set lines) into a validated instance.
pub fn parse_gtsp(text: &str) -> Result<GtspInstance> {
    let parsed = parse_internal(text)?;
    let m = parsed
        .gtsp_sets
        .ok_or_else(|| Error::InvalidInstance("file declares no GTSP_SETS".into()))?;
    let clusters = parsed
        .set_section
        .ok_or_else(|| Error::InvalidInstance("file has no GTSP_SET_SECTION".into()))?;
    debug_assert_eq!(clusters.len(), m);
    // Check set coverage against DIMENSION before the structural validation,
    // so that orphan and doubly-assigned nodes are reported by id.
    let mut assigned = vec![false; parsed.tsp.n];
    for members in &clusters {
        for &v in members {
            if assigned[v] {
                return Err(Error::InvalidInstance(format!(
                    "node {} assigned to two sets",
                    v + 1
                )));
            }
            assigned[v] = true;
        }
    }
    if let Some(v) = assigned.iter().position(|a| !a) {
        return Err(Error::InvalidInstance(format!(
            "node {} not assigned to any set",
            v + 1
        )));
    }
    let matrix = parsed.tsp.full_matrix()?;
    GtspInstance::new(parsed.tsp.name.clone(), clusters, matrix)
}

/// Serializes a clustered instance produced from coordinate data back into
/// the GTSP file format.
pub fn write_gtsp(name: &str, tsp: &TspData, clusters: &[Vec<usize>]) -> String {
    let mut out = String::new();
    out.push_str(&format!("NAME: {name}\n"));
    out.push_str("TYPE: GTSP\n");
    out.push_str(&format!("DIMENSION: {}\n", tsp.n));
    out.push_str(&format!("GTSP_SETS: {}\n", clusters.len()));
    out.push_str(&format!("EDGE_WEIGHT_TYPE: {}\n", tsp.weight_kind.keyword()));
    match tsp.weight_kind {
        EdgeWeightKind::Explicit => {
            out.push_str("EDGE_WEIGHT_FORMAT: FULL_MATRIX\n");
            out.push_str("EDGE_WEIGHT_SECTION\n");
            let matrix = tsp.explicit.as_ref().unwrap();
            for u in 0..tsp.n {
                let row: Vec<String> = (0..tsp.n)
                    .map(|v| matrix[u * tsp.n + v].to_string())
                    .collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
        _ => {
            out.push_str("NODE_COORD_SECTION\n");
            for (i, (x, y)) in tsp.coords.as_ref().unwrap().iter().enumerate() {
                out.push_str(&format!("{} {} {}\n", i + 1, x, y));
            }
        }
    }
    out.push_str("GTSP_SET_SECTION\n");
    for (i, members) in clusters.iter().enumerate() {
        let ids: Vec<String> = members.iter().map(|v| (v + 1).to_string()).collect();
        out.push_str(&format!("{} {} -1\n", i + 1, ids.join(" ")));
    }
    out.push_str("EOF\n");
    out
}
