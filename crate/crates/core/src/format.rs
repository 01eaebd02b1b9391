//! Plain-text file formats.
//!
//! Table files start with a header line `d=<p> n=<N>` followed by one Pauli
//! string per row, optionally suffixed with `# <role>`. Adjacency files use the
//! same header followed by `N` rows of `N` integers. Blank lines and lines
//! starting with `#` are ignored.

use crate::ame::AdjacencyMatrix;
use crate::error::{Error, Result};
use crate::pauli::{parse_pauli_n, render_pauli, Dim};
use crate::tableau::{Role, StabilizerTable};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_header(line: &str) -> Result<(Dim, usize)> {
    let mut dim = None;
    let mut n = None;
    for field in line.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("malformed header field {field:?}")))?;
        let value: u32 = value
            .parse()
            .map_err(|_| Error::Parse(format!("non-numeric header value {field:?}")))?;
        match key {
            "d" => dim = Some(Dim::new(value)?),
            "n" => n = Some(value as usize),
            _ => return Err(Error::Parse(format!("unknown header field {key:?}"))),
        }
    }
    match (dim, n) {
        (Some(d), Some(n)) if n > 0 => Ok((d, n)),
        _ => Err(Error::Parse(format!("expected header `d=<p> n=<N>`, got {line:?}"))),
    }
}

fn parse_role(text: &str) -> Result<Role> {
    let text = text.trim();
    let indexed = |prefix: &str| -> Option<Result<usize>> {
        let inner = text.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
        Some(match inner.trim().parse::<usize>() {
            Ok(j) if j >= 1 => Ok(j - 1),
            _ => Err(Error::Parse(format!("bad logical index in role {text:?}"))),
        })
    };
    if let Some(j) = indexed("logical_x") {
        return Ok(Role::LogicalX(j?));
    }
    if let Some(j) = indexed("logical_z") {
        return Ok(Role::LogicalZ(j?));
    }
    match text {
        "" | "stabilizer" => Ok(Role::Stabilizer),
        "encoded_input" => Ok(Role::EncodedInput),
        other => Err(Error::Parse(format!("unknown role {other:?}"))),
    }
}

pub fn parse_table(text: &str) -> Result<StabilizerTable> {
    let mut lines = content_lines(text);
    let (_, header) = lines.next().ok_or_else(|| Error::Parse("empty table file".into()))?;
    let (dim, n) = parse_header(header)?;
    let mut rows = Vec::new();
    let mut roles = Vec::new();
    for (lineno, line) in lines {
        let (pauli, role) = match line.split_once('#') {
            Some((p, r)) => (p, parse_role(r)?),
            None => (line, Role::Stabilizer),
        };
        let op = parse_pauli_n(pauli, dim, n).map_err(|e| Error::Parse(format!("line {lineno}: {e}")))?;
        rows.push(op);
        roles.push(role);
    }
    StabilizerTable::with_roles(dim, n, rows, roles)
}

pub fn render_table(table: &StabilizerTable) -> String {
    let mut out = format!("d={} n={}\n", table.dim(), table.n_qudits());
    for (row, role) in table.rows().iter().zip(table.roles()) {
        out.push_str(&render_pauli(row));
        out.push_str(" # ");
        out.push_str(&role.to_string());
        out.push('\n');
    }
    out
}

pub fn parse_adjacency(text: &str) -> Result<AdjacencyMatrix> {
    let mut lines = content_lines(text);
    let (_, header) = lines.next().ok_or_else(|| Error::Parse("empty adjacency file".into()))?;
    let (dim, n) = parse_header(header)?;
    let mut entries = Vec::with_capacity(n);
    for (lineno, line) in lines {
        let row = line
            .split_whitespace()
            .map(|v| v.parse::<u32>())
            .collect::<std::result::Result<Vec<u32>, _>>()
            .map_err(|_| Error::Parse(format!("line {lineno}: non-integer entry")))?;
        if row.len() != n {
            return Err(Error::Parse(format!("line {lineno}: expected {n} entries, got {}", row.len())));
        }
        entries.push(row);
    }
    if entries.len() != n {
        return Err(Error::Parse(format!("expected {n} rows, got {}", entries.len())));
    }
    AdjacencyMatrix::new(dim, entries)
}

pub fn render_adjacency(a: &AdjacencyMatrix) -> String {
    let mut out = format!("d={} n={}\n", a.dim(), a.size());
    for row in a.rows() {
        let line: Vec<String> = row.iter().map(u32::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_round_trip() {
        let text = "d=2 n=3\nXZ # logical_x(1)\n";
        assert!(parse_table(text).is_err(), "token count mismatch");
        let text = "d=2 n=3\n# comment\nZZ1 # stabilizer\n1ZZ\n\nXXX # logical_x(1)\n-ZZZ # logical_z(1)\n";
        let t = parse_table(text).unwrap();
        assert_eq!(t.roles()[3], Role::LogicalZ(0));
        let rendered = render_table(&t);
        assert_eq!(parse_table(&rendered).unwrap(), t);
        assert_eq!(render_table(&parse_table(&rendered).unwrap()), rendered);
    }

    #[test]
    fn qudit_table() {
        let text = "d=3 n=2\nx1 x1\nz1 z2\n";
        let t = parse_table(text).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(render_table(&t), "d=3 n=2\nx1 x1 # stabilizer\nz1 z2 # stabilizer\n");
    }

    #[test]
    fn errors() {
        assert!(parse_table("").is_err());
        assert!(parse_table("d=4 n=2\nXX\n").is_err());
        assert!(parse_table("d=2\nXX\n").is_err());
        assert!(parse_table("d=2 n=2\nXX # bogus\n").is_err());
        assert!(parse_table("d=2 n=1\nX\nZ\n").is_err(), "anticommuting stabilisers");
        assert!(parse_adjacency("d=2 n=2\n0 1\n0 0\n").is_err(), "asymmetric");
        assert!(parse_adjacency("d=2 n=2\n0 1\n").is_err());
    }

    #[test]
    fn adjacency_round_trip() {
        let text = "d=3 n=3\n0 1 2\n1 0 1\n2 1 0\n";
        let a = parse_adjacency(text).unwrap();
        assert_eq!(render_adjacency(&a), text);
    }
}
