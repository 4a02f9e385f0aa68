//! The `.sc` facet-list text format.
//!
//! One facet per line as whitespace-separated decimal labels; `#` starts a
//! comment. Lines whose face is contained in another line are dropped with a
//! warning. The writer is byte-reproducible: facets in lexicographic order,
//! vertices ascending, `\n` line endings.

use std::fmt::Write as _;
use std::path::Path;

use crate::complex::{Complex, Face};
use crate::error::{Error, Result};

#[derive(Debug)]
pub struct ParsedComplex {
    pub complex: Complex,
    pub warnings: Vec<String>,
}

pub fn parse_sc(text: &str) -> Result<ParsedComplex> {
    let mut lines: Vec<(usize, Face)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let labels = body
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u32>().map_err(|e| Error::Parse {
                    line: line_no,
                    message: format!("bad vertex label {tok:?}: {e}"),
                })
            })
            .collect::<Result<Vec<u32>>>()?;
        let face = Face::new(labels).map_err(|e| Error::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        lines.push((line_no, face));
    }

    let mut warnings = Vec::new();
    let complex = Complex::from_faces(lines.iter().map(|(_, f)| f.clone()).collect());
    let mut seen = std::collections::HashSet::new();
    for (line_no, face) in &lines {
        if !seen.insert(face.clone()) {
            warnings.push(format!("line {line_no}: duplicate facet {face} ignored"));
        } else if complex.facets().binary_search(face).is_err() {
            warnings.push(format!(
                "line {line_no}: face {face} is contained in another facet and was dropped"
            ));
        }
    }
    Ok(ParsedComplex { complex, warnings })
}

pub fn write_sc(c: &Complex) -> String {
    let mut out = String::new();
    for f in c.facets() {
        let labels: Vec<String> = f.vertices().iter().map(|v| v.0.to_string()).collect();
        let _ = writeln!(out, "{}", labels.join(" "));
    }
    out
}

pub fn read_sc_file(path: impl AsRef<Path>) -> Result<ParsedComplex> {
    parse_sc(&std::fs::read_to_string(path)?)
}

pub fn write_sc_file(path: impl AsRef<Path>, c: &Complex) -> Result<()> {
    std::fs::write(path, write_sc(c))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_with_comments_and_domination() {
        let text = "# square\n0 1\n1 2 # trailing\n\n2 3\n3 0\n3\n";
        let parsed = parse_sc(text).unwrap();
        assert_eq!(parsed.complex.facets().len(), 4);
        assert_eq!(parsed.warnings.len(), 1);
        assert!(parsed.warnings[0].contains("line 7"));
    }

    #[test]
    fn writer_is_canonical() {
        let a = parse_sc("3 0\n2 1\n0 1\n3 2\n").unwrap().complex;
        assert_eq!(write_sc(&a), "0 1\n0 3\n1 2\n2 3\n");
        let b = parse_sc(&write_sc(&a)).unwrap().complex;
        assert_eq!(a, b);
    }

    #[test]
    fn malformed_lines() {
        assert!(matches!(parse_sc("0 1 x\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_sc("0 1\n2 2\n"), Err(Error::Parse { line: 2, .. })));
    }
}
