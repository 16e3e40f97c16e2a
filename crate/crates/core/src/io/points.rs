//! Plain-text point files.
//!
//! One point per line as two whitespace-separated reals. Lines starting with
//! `#` are comments; `# label <role>` names the next point.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use crate::constructions::LabeledPointSet;
use crate::error::{Error, Result};
use crate::geometry::PointSet;

pub fn parse_points(doc: &str) -> Result<LabeledPointSet> {
    let mut coords = Vec::new();
    let mut lines = Vec::new();
    let mut labels: Vec<Option<String>> = Vec::new();
    let mut pending: Option<(usize, String)> = None;
    let mut seen = HashSet::new();

    for (idx, raw) in doc.lines().enumerate() {
        let line = idx + 1;
        let text = raw.trim();
        if text.is_empty() {
            continue;
        }
        if let Some(comment) = text.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(role) = comment.strip_prefix("label") {
                if !role.is_empty() && !role.starts_with(char::is_whitespace) {
                    continue;
                }
                let role = role.trim();
                if role.is_empty() || role.contains(char::is_whitespace) {
                    return Err(parse_err(line, "label needs exactly one role name"));
                }
                if pending.is_some() {
                    return Err(parse_err(line, "two labels for one point"));
                }
                if !seen.insert(role.to_string()) {
                    return Err(parse_err(line, format!("label '{role}' used twice")));
                }
                pending = Some((line, role.to_string()));
            }
            continue;
        }
        let mut fields = text.split_whitespace();
        let (Some(xs), Some(ys), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(parse_err(line, "expected two coordinates"));
        };
        let x = parse_real(xs, line)?;
        let y = parse_real(ys, line)?;
        coords.push((x, y));
        lines.push(line);
        labels.push(pending.take().map(|(_, role)| role));
    }
    if let Some((line, role)) = pending {
        return Err(parse_err(line, format!("label '{role}' has no point")));
    }
    let points = PointSet::new(coords).map_err(|e| match e {
        Error::DuplicatePoint(first, second) => parse_err(
            lines[second],
            format!("duplicate of the point on line {}", lines[first]),
        ),
        other => other,
    })?;
    Ok(LabeledPointSet { points, labels })
}

fn parse_real(s: &str, line: usize) -> Result<f64> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(parse_err(line, format!("'{s}' is not a finite real"))),
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Renders with the shortest decimal that parses back to the same double.
pub fn render_points(set: &LabeledPointSet) -> String {
    let mut out = String::new();
    for p in set.points.iter() {
        if let Some(Some(role)) = set.labels.get(p.id) {
            out.push_str("# label ");
            out.push_str(role);
            out.push('\n');
        }
        out.push_str(&format!("{} {}\n", p.x, p.y));
    }
    out
}

pub fn read_points(path: &Path) -> Result<LabeledPointSet> {
    parse_points(&fs::read_to_string(path)?)
}

pub fn write_points(path: &Path, set: &LabeledPointSet) -> Result<()> {
    Ok(fs::write(path, render_points(set))?)
}
