use super::Graph;
use std::collections::HashSet;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Dimacs,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("malformed line: {0:?}")]
    Malformed(String),
    #[error("missing header")]
    MissingHeader,
    #[error("vertex {v} out of range for n={n}")]
    OutOfRange { v: i64, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    Duplicate(usize, usize),
    #[error("header declares {declared} edges but {found} were given")]
    EdgeCount { declared: usize, found: usize },
    #[error("input is not valid UTF-8")]
    Encoding,
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Parses an edge list ("n m" header, then "u v" lines, 0-indexed) or DIMACS
/// ("p edge n m", then "e u v" lines, 1-indexed). `#` starts a comment in the
/// edge-list format and `c` lines are comments in DIMACS.
pub fn parse_graph(bytes: &[u8], format: Format) -> Result<Graph, ParseError> {
    let text = std::str::from_utf8(bytes).map_err(|_| err(0, ParseErrorKind::Encoding))?;
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = match format {
            Format::EdgeList => raw.split('#').next().unwrap_or(""),
            Format::Dimacs => raw,
        };
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        last_line = line_no;
        let malformed = || err(line_no, ParseErrorKind::Malformed(raw.trim().to_string()));
        let num = |s: &str| s.parse::<i64>().map_err(|_| malformed());
        let (a, b) = match format {
            Format::EdgeList => {
                if toks.len() != 2 {
                    return Err(malformed());
                }
                (num(toks[0])?, num(toks[1])?)
            }
            Format::Dimacs => match toks[0] {
                "c" => continue,
                "p" if header.is_none() && toks.len() == 4 && toks[1] == "edge" => {
                    (num(toks[2])?, num(toks[3])?)
                }
                "e" if header.is_some() && toks.len() == 3 => (num(toks[1])? - 1, num(toks[2])? - 1),
                _ => return Err(malformed()),
            },
        };
        let Some((n, _)) = header else {
            if a < 0 || b < 0 {
                return Err(malformed());
            }
            header = Some((a as usize, b as usize));
            continue;
        };
        let shift = if format == Format::Dimacs { 1 } else { 0 };
        for x in [a, b] {
            if x < 0 || x as usize >= n {
                return Err(err(line_no, ParseErrorKind::OutOfRange { v: x + shift, n }));
            }
        }
        let (u, v) = (a.min(b) as usize, a.max(b) as usize);
        if u == v {
            return Err(err(line_no, ParseErrorKind::SelfLoop(u)));
        }
        if !seen.insert((u, v)) {
            return Err(err(line_no, ParseErrorKind::Duplicate(u, v)));
        }
        edges.push((u, v));
    }
    let (n, m) = header.ok_or_else(|| err(last_line.max(1), ParseErrorKind::MissingHeader))?;
    if m != edges.len() {
        return Err(err(last_line, ParseErrorKind::EdgeCount { declared: m, found: edges.len() }));
    }
    Ok(Graph::from_edges(n, &edges).expect("validated above"))
}

/// Edge-list text: "n m" then one "u v" line per edge with u < v, sorted.
pub fn write_edgelist(g: &Graph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edgelist_path() {
        let g = parse_graph(b"3 2\n0 1\n1 2", Format::EdgeList).unwrap();
        assert_eq!(g, Graph::path(3));
    }

    #[test]
    fn dimacs_triangle() {
        let g = parse_graph(b"c tri\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n", Format::Dimacs).unwrap();
        assert_eq!(g, Graph::complete(3));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_graph(b"2 1\n0 0", Format::EdgeList).unwrap_err();
        assert_eq!(e, err(2, ParseErrorKind::SelfLoop(0)));
        let e = parse_graph(b"# c\n3 2\n0 1\n\n1 0\n", Format::EdgeList).unwrap_err();
        assert_eq!(e, err(5, ParseErrorKind::Duplicate(0, 1)));
        let e = parse_graph(b"3 1\n0 3\n", Format::EdgeList).unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_graph(b"3 1\n0 x\n", Format::EdgeList).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Malformed(_)));
        let e = parse_graph(b"3 2\n0 1\n", Format::EdgeList).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::EdgeCount { declared: 2, found: 1 }));
        assert!(parse_graph(b"", Format::EdgeList).is_err());
    }

    #[test]
    fn round_trip() {
        let g = Graph::cycle(5);
        assert_eq!(parse_graph(write_edgelist(&g).as_bytes(), Format::EdgeList).unwrap(), g);
    }
}
