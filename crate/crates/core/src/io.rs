//! Text formats: point files, map files and flip traces.
//!
//! Point file: `#` comments and blank lines are ignored, every other line
//! is `x y`. The first three points are the enclosing triangle.
//!
//! Map file:
//!
//! ```text
//! HMAP v1
//! D <id> <x> <y>      dart insertions, in order
//! L <0|1> <d1> <d2>   stored links, in order
//! M <id> <x> <y>      location overrides
//! ```
//!
//! Coordinates are integers, exact decimals or `num/den`. Writing always
//! uses integers or `num/den`, so a written file parses and writes back to
//! the same bytes.

use std::fmt;

use thiserror::Error;

use crate::builder::PointSet;
use crate::delaunay::{FlipEvent, FlipTrace};
use crate::geometry::{Coord, Point};
use crate::hypermap::{BuildError, DartId, Dim, FreeMap, Hypermap};

pub const MAP_HEADER: &str = "HMAP v1";

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl fmt::Display) -> ParseError {
    ParseError { line, message: message.to_string() }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MapFileError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error("line {line}: {error}")]
    Build { line: usize, error: BuildError },
    #[error("line {line}: override for unknown dart {dart}")]
    UnknownOverride { line: usize, dart: DartId },
}

fn coord(line: usize, token: &str) -> Result<Coord, ParseError> {
    token.parse::<Coord>().map_err(|e| err(line, e))
}

fn point(line: usize, x: &str, y: &str) -> Result<Point, ParseError> {
    Ok(Point::new(coord(line, x)?, coord(line, y)?))
}

fn dart(line: usize, token: &str) -> Result<DartId, ParseError> {
    token.parse::<u32>().map(DartId::new).map_err(|_| err(line, format!("invalid dart id `{token}`")))
}

pub fn parse_points(text: &str) -> Result<PointSet, ParseError> {
    let mut pts = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(err(line, format!("expected `x y`, found `{content}`")));
        }
        pts.push(point(line, tokens[0], tokens[1])?);
    }
    if pts.len() < 3 {
        return Err(err(last_line.max(1), "a point file needs at least the three boundary points"));
    }
    let interior = pts.split_off(3);
    let boundary: [Point; 3] = pts.try_into().expect("three points");
    Ok(PointSet::new(boundary, interior))
}

pub fn write_points(ps: &PointSet) -> String {
    let mut out = String::from("# boundary\n");
    for (i, p) in ps.points().iter().enumerate() {
        if i == 3 {
            out.push_str("# interior\n");
        }
        out.push_str(&format!("{} {}\n", p.x().to_literal(), p.y().to_literal()));
    }
    out
}

pub fn is_map_file(text: &str) -> bool {
    text.lines().next().map(str::trim_end) == Some(MAP_HEADER)
}

/// A map file split into its constructor sequence and overrides, each
/// tagged with its line number.
#[derive(Clone, Debug, Default)]
pub struct MapFileParts {
    pub constructors: FreeMap,
    pub constructor_lines: Vec<usize>,
    pub overrides: Vec<(usize, DartId, Point)>,
}

pub fn parse_map_parts(text: &str) -> Result<MapFileParts, ParseError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == MAP_HEADER => {}
        _ => return Err(err(1, format!("expected header `{MAP_HEADER}`"))),
    }
    let mut parts = MapFileParts::default();
    // D = 0, L = 1, M = 2
    let mut section = 0;
    for (i, raw) in lines {
        let line = i + 1;
        let tokens: Vec<&str> = raw.split(' ').collect();
        let (tag, args) = tokens.split_first().expect("split yields one item");
        let order = match *tag {
            "D" => 0,
            "L" => 1,
            "M" => 2,
            _ => return Err(err(line, format!("unknown record `{raw}`"))),
        };
        if order < section {
            return Err(err(line, format!("`{tag}` record after a later section")));
        }
        section = order;
        if args.len() != 3 {
            return Err(err(line, format!("`{tag}` takes three fields")));
        }
        match *tag {
            "D" => {
                let d = dart(line, args[0])?;
                parts.constructors.insert_dart(d, point(line, args[1], args[2])?);
                parts.constructor_lines.push(line);
            }
            "L" => {
                let k = match args[0] {
                    "0" => Dim::Zero,
                    "1" => Dim::One,
                    other => return Err(err(line, format!("invalid dimension `{other}`"))),
                };
                parts.constructors.add_link(k, dart(line, args[1])?, dart(line, args[2])?);
                parts.constructor_lines.push(line);
            }
            _ => {
                let d = dart(line, args[0])?;
                if parts.overrides.iter().any(|(_, o, _)| *o == d) {
                    return Err(err(line, format!("second override for dart {d}")));
                }
                parts.overrides.push((line, d, point(line, args[1], args[2])?));
            }
        }
    }
    Ok(parts)
}

pub fn parse_map(text: &str) -> Result<Hypermap, MapFileError> {
    let parts = parse_map_parts(text)?;
    let mut m = Hypermap::build(&parts.constructors)
        .map_err(|error| MapFileError::Build { line: parts.constructor_lines[error.index], error })?;
    for (line, d, p) in parts.overrides {
        m.set_location(d, p).map_err(|_| MapFileError::UnknownOverride { line, dart: d })?;
    }
    Ok(m)
}

pub fn write_map(m: &Hypermap) -> String {
    let mut out = String::new();
    out.push_str(MAP_HEADER);
    out.push('\n');
    for &d in m.darts() {
        let p = m.base_location(d).expect("own dart");
        out.push_str(&format!("D {} {} {}\n", d, p.x().to_literal(), p.y().to_literal()));
    }
    for l in m.links() {
        out.push_str(&format!("L {} {} {}\n", l.dim, l.source, l.target));
    }
    for (d, p) in m.location_overrides() {
        out.push_str(&format!("M {} {} {}\n", d, p.x().to_literal(), p.y().to_literal()));
    }
    out
}

/// One `FLIP <dart> <before> <after>` line per event.
pub fn write_trace(trace: &FlipTrace) -> String {
    trace.events.iter().map(|e| format!("{e}\n")).collect()
}

pub fn parse_trace(text: &str) -> Result<FlipTrace, ParseError> {
    let mut trace = FlipTrace::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        match tokens.as_slice() {
            ["FLIP", d, before, after] => trace.events.push(FlipEvent {
                dart: dart(line, d)?,
                measure_before: coord(line, before)?,
                measure_after: coord(line, after)?,
            }),
            _ => return Err(err(line, format!("expected `FLIP <dart> <before> <after>`, found `{raw}`"))),
        }
    }
    Ok(trace)
}
