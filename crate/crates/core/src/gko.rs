//! `.gko` diagram collections: one `name: gauss-code` entry per line.
//!
//! Lines starting with `#` (after optional whitespace) and blank lines are
//! skipped. A `#` also ends the code part of an entry line. The code may be
//! empty, which denotes the trivial knotoid.

use crate::error::{Error, Result};
use crate::gauss::{parse_gauss_code, GaussDiagram};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GkoEntry {
    pub name: String,
    pub diagram: GaussDiagram,
    /// 1-based source line.
    pub line: usize,
}

pub fn parse_collection(text: &str) -> Result<Vec<GkoEntry>> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (name, code) = content
            .split_once(':')
            .ok_or(Error::CollectionSyntax { line })?;
        let name = name.trim();
        if name.is_empty() {
            return Err(Error::CollectionSyntax { line });
        }
        let diagram = parse_gauss_code(code).map_err(|e| Error::Collection {
            line,
            source: Box::new(e),
        })?;
        entries.push(GkoEntry {
            name: name.to_string(),
            diagram,
            line,
        });
    }
    Ok(entries)
}

pub fn write_collection<'a, I>(entries: I) -> String
where
    I: IntoIterator<Item = (&'a str, &'a GaussDiagram)>,
{
    let mut out = String::new();
    for (name, d) in entries {
        out.push_str(name);
        out.push(':');
        if !d.is_empty() {
            out.push(' ');
            out.push_str(&d.to_string());
        }
        out.push('\n');
    }
    out
}
