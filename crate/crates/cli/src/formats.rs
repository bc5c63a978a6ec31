//! Text formats.
//!
//! SCX (complex): line 1 `scx <k> <V>`, then one top simplex per line as
//! space-separated vertex ids. EMB (embedding): the full SCX content, then a
//! line `n <ambient-dim>`, then V coordinate lines. `#` starts a comment;
//! blank lines are ignored. Floats are written with Rust's shortest
//! round-trip formatting, so write/parse is exact.

use std::fmt;

use thickem_core::{EmbeddedComplex, SimplicialComplex};

#[derive(Debug, Clone, PartialEq)]
pub struct FormatError {
    /// 1-based line number in the input.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for FormatError {}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError { line, message: message.into() }
}

/// Strips comments and returns (1-based line number, payload) for nonempty
/// lines.
fn payload_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let stripped = raw.split('#').next().unwrap_or("").trim();
        if stripped.is_empty() {
            None
        } else {
            Some((i + 1, stripped))
        }
    })
}

fn build_scx(
    k: usize,
    v: usize,
    tops: Vec<(usize, Vec<usize>)>,
) -> Result<SimplicialComplex, FormatError> {
    let first_line = tops.first().map_or(1, |(l, _)| *l);
    let simplices: Vec<Vec<usize>> = tops.iter().map(|(_, s)| s.clone()).collect();
    let x = SimplicialComplex::build(&simplices, v)
        .map_err(|e| err(first_line, format!("invalid complex: {}", e)))?;
    if x.dimension() != k {
        return Err(err(
            first_line,
            format!("header dimension {} but simplices have dimension {}", k, x.dimension()),
        ));
    }
    Ok(x)
}

/// Parses a complex in SCX format.
pub fn parse_scx(text: &str) -> Result<SimplicialComplex, FormatError> {
    let mut lines = payload_lines(text).peekable();
    let x = parse_scx_shared(&mut lines)?;
    if let Some((lno, _)) = lines.next() {
        return Err(err(lno, "unexpected content after simplex lines (is this an EMB file?)"));
    }
    Ok(x)
}

/// Shared front half: consumes the scx header and top simplex lines, leaving
/// the iterator at the `n <dim>` line if present.
fn parse_scx_shared<'a, I: Iterator<Item = (usize, &'a str)>>(
    lines: &mut std::iter::Peekable<I>,
) -> Result<SimplicialComplex, FormatError> {
    let (hline, header) = lines.next().ok_or_else(|| err(1, "empty input, expected scx header"))?;
    let mut parts = header.split_whitespace();
    if parts.next() != Some("scx") {
        return Err(err(hline, "expected header `scx <k> <V>`"));
    }
    let k: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| err(hline, "bad dimension in scx header"))?;
    let v: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| err(hline, "bad vertex count in scx header"))?;
    if parts.next().is_some() {
        return Err(err(hline, "trailing tokens in scx header"));
    }
    let mut tops = Vec::new();
    while let Some(&(lno, line)) = lines.peek() {
        if line.split_whitespace().next() == Some("n") {
            break;
        }
        lines.next();
        let mut simplex = Vec::new();
        for tok in line.split_whitespace() {
            let id: usize = tok
                .parse()
                .map_err(|_| err(lno, format!("bad vertex id `{}`", tok)))?;
            simplex.push(id);
        }
        if simplex.is_empty() {
            return Err(err(lno, "empty simplex line"));
        }
        tops.push((lno, simplex));
    }
    build_scx(k, v, tops)
}

/// Parses an embedding in EMB format.
pub fn parse_emb(text: &str) -> Result<EmbeddedComplex, FormatError> {
    let mut lines = payload_lines(text).peekable();
    let x = parse_scx_shared(&mut lines)?;
    let (nline, nheader) = lines
        .next()
        .ok_or_else(|| err(text.lines().count().max(1), "missing `n <ambient-dim>` line"))?;
    let mut parts = nheader.split_whitespace();
    if parts.next() != Some("n") {
        return Err(err(nline, "expected `n <ambient-dim>`"));
    }
    let dim: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| err(nline, "bad ambient dimension"))?;
    if parts.next().is_some() {
        return Err(err(nline, "trailing tokens after ambient dimension"));
    }
    let mut points = Vec::with_capacity(x.vertex_count());
    let mut last_line = nline;
    for _ in 0..x.vertex_count() {
        let (lno, line) = lines
            .next()
            .ok_or_else(|| err(last_line, format!("expected {} coordinate lines", x.vertex_count())))?;
        last_line = lno;
        let mut p = Vec::with_capacity(dim);
        for tok in line.split_whitespace() {
            let c: f64 = tok
                .parse()
                .map_err(|_| err(lno, format!("bad coordinate `{}`", tok)))?;
            p.push(c);
        }
        if p.len() != dim {
            return Err(err(lno, format!("expected {} coordinates, found {}", dim, p.len())));
        }
        points.push(p);
    }
    if let Some((lno, _)) = lines.next() {
        return Err(err(lno, "unexpected content after coordinate lines"));
    }
    EmbeddedComplex::new(x, dim, points).map_err(|e| err(last_line, format!("invalid embedding: {}", e)))
}

/// Writes a complex in SCX format (maximal simplices only; the parser
/// restores the face closure).
pub fn write_scx(x: &SimplicialComplex) -> String {
    let mut out = format!("scx {} {}\n", x.dimension(), x.vertex_count());
    for s in x.maximal_simplices() {
        let ids: Vec<String> = s.iter().map(|v| v.to_string()).collect();
        out.push_str(&ids.join(" "));
        out.push('\n');
    }
    out
}

/// Writes an embedding in EMB format.
pub fn write_emb(e: &EmbeddedComplex) -> String {
    let mut out = write_scx(e.complex());
    out.push_str(&format!("n {}\n", e.ambient_dim()));
    for v in 0..e.complex().vertex_count() {
        let coords: Vec<String> = e.point(v).iter().map(|c| format!("{}", c)).collect();
        out.push_str(&coords.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scx_roundtrip_triangle() {
        let x = SimplicialComplex::build(&[vec![0, 1, 2]], 3).unwrap();
        let text = write_scx(&x);
        assert_eq!(text, "scx 2 3\n0 1 2\n");
        assert_eq!(parse_scx(&text).unwrap(), x);
    }

    #[test]
    fn scx_comments_and_blanks() {
        let text = "# a triangle\nscx 2 3\n\n0 1 2  # the top cell\n";
        let x = parse_scx(text).unwrap();
        assert_eq!(x.dimension(), 2);
        assert_eq!(x.vertex_count(), 3);
    }

    #[test]
    fn scx_errors_carry_line_numbers() {
        let e = parse_scx("scx 2 3\n0 one 2\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_scx("sxc 2 3\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_scx("scx 1 3\n0 1 2\n").unwrap_err();
        assert_eq!(e.line, 2); // header/body dimension mismatch
        let e = parse_scx("scx 1 2\n0 5\n").unwrap_err();
        assert_eq!(e.line, 2); // vertex out of range
    }

    #[test]
    fn emb_roundtrip_exact_floats() {
        let x = SimplicialComplex::build(&[vec![0, 1]], 2).unwrap();
        let pts = vec![vec![0.1, -2.5e-17, 3.0], vec![1.0 / 3.0, f64::MIN_POSITIVE, -0.0]];
        let e = EmbeddedComplex::new(x, 3, pts).unwrap();
        let text = write_emb(&e);
        let back = parse_emb(&text).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn emb_errors() {
        assert_eq!(parse_emb("scx 1 2\n0 1\n").unwrap_err().message.contains("missing"), true);
        let e = parse_emb("scx 1 2\n0 1\nn 2\n0 0\n").unwrap_err();
        assert!(e.message.contains("coordinate lines"));
        let e = parse_emb("scx 1 2\n0 1\nn 2\n0 0\n1\n").unwrap_err();
        assert_eq!(e.line, 5);
    }

    #[test]
    fn scx_rejects_embedding_payload() {
        let err = parse_scx("scx 1 2\n0 1\nn 2\n0 0\n1 0\n").unwrap_err();
        assert!(err.message.contains("EMB"));
    }
}
