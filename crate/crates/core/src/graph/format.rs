//! The `.cg` text format.
//!
//! ```text
//! # comment
//! p cg <n> <m>
//! e <u> <v> <r|b>     (m lines, 1 <= u < v <= n)
//! ```
//!
//! Vertices are 1-indexed on disk and 0-indexed in memory. The serializer
//! emits edges in lexicographic order so output is canonical.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use super::{Colour, ColouredGraph, GraphBuilder};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: malformed header (expected `p cg <n> <m>`)")]
    MalformedHeader { line: usize },
    #[error("line {line}: second header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: edge before header")]
    EdgeBeforeHeader { line: usize },
    #[error("line {line}: malformed edge line (expected `e <u> <v> <r|b>`)")]
    MalformedEdge { line: usize },
    #[error("line {line}: unrecognized line")]
    UnknownLine { line: usize },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: loop at vertex {vertex}")]
    Loop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u} {v}{}", if *.conflicting { " with conflicting colour" } else { "" })]
    DuplicateEdge {
        line: usize,
        u: usize,
        v: usize,
        conflicting: bool,
    },
    #[error("header declares {declared} edges but {found} were listed")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("missing `p cg` header")]
    MissingHeader,
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl ParseError {
    pub fn line(&self) -> Option<usize> {
        match self {
            ParseError::MalformedHeader { line }
            | ParseError::DuplicateHeader { line }
            | ParseError::EdgeBeforeHeader { line }
            | ParseError::MalformedEdge { line }
            | ParseError::UnknownLine { line }
            | ParseError::VertexOutOfRange { line, .. }
            | ParseError::Loop { line, .. }
            | ParseError::DuplicateEdge { line, .. } => Some(*line),
            _ => None,
        }
    }
}

pub fn parse_cg(text: &str) -> Result<ColouredGraph, ParseError> {
    read_cg(text.as_bytes())
}

pub fn read_cg<R: BufRead>(reader: R) -> Result<ColouredGraph, ParseError> {
    let mut builder: Option<GraphBuilder> = None;
    let mut declared = 0;
    let mut found = 0;
    for (idx, raw) in reader.lines().enumerate() {
        let raw = raw?;
        let line = idx + 1;
        let text = raw.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = text.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if builder.is_some() {
                    return Err(ParseError::DuplicateHeader { line });
                }
                let [_, "cg", n, m] = fields[..] else {
                    return Err(ParseError::MalformedHeader { line });
                };
                let n: usize = n.parse().map_err(|_| ParseError::MalformedHeader { line })?;
                declared = m.parse().map_err(|_| ParseError::MalformedHeader { line })?;
                builder = Some(GraphBuilder::new(n));
            }
            "e" => {
                let b = builder.as_mut().ok_or(ParseError::EdgeBeforeHeader { line })?;
                let [_, u, v, c] = fields[..] else {
                    return Err(ParseError::MalformedEdge { line });
                };
                let u: usize = u.parse().map_err(|_| ParseError::MalformedEdge { line })?;
                let v: usize = v.parse().map_err(|_| ParseError::MalformedEdge { line })?;
                let colour = match c {
                    "r" => Colour::Red,
                    "b" => Colour::Blue,
                    _ => return Err(ParseError::MalformedEdge { line }),
                };
                let n = b.n();
                for w in [u, v] {
                    if w == 0 || w > n {
                        return Err(ParseError::VertexOutOfRange { line, vertex: w, n });
                    }
                }
                if u == v {
                    return Err(ParseError::Loop { line, vertex: u });
                }
                if let Some(existing) = b.colour(u - 1, v - 1) {
                    return Err(ParseError::DuplicateEdge {
                        line,
                        u: u.min(v),
                        v: u.max(v),
                        conflicting: existing != colour,
                    });
                }
                b.set_edge(u - 1, v - 1, Some(colour)).expect("checked above");
                found += 1;
            }
            _ => return Err(ParseError::UnknownLine { line }),
        }
    }
    let builder = builder.ok_or(ParseError::MissingHeader)?;
    if found != declared {
        return Err(ParseError::EdgeCountMismatch { declared, found });
    }
    Ok(builder.build())
}

/// Writes `g` in canonical form, preceded by `# ` comment lines.
pub fn write_cg<W: Write>(mut w: W, g: &ColouredGraph, comments: &[String]) -> io::Result<()> {
    for c in comments {
        writeln!(w, "# {c}")?;
    }
    writeln!(w, "p cg {} {}", g.n(), g.edge_count())?;
    for (u, v, c) in g.edges() {
        writeln!(w, "e {} {} {}", u + 1, v + 1, c.letter())?;
    }
    Ok(())
}

pub fn to_cg_string(g: &ColouredGraph) -> String {
    let mut out = Vec::new();
    write_cg(&mut out, g, &[]).expect("writing to memory");
    String::from_utf8(out).expect("ascii")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_graph() {
        let g = parse_cg("p cg 2 1\ne 1 2 r\n").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.colour(0, 1), Some(Colour::Red));
    }

    #[test]
    fn path_with_chord() {
        let g = parse_cg("p cg 3 3\ne 1 2 r\ne 2 3 r\ne 1 3 b").unwrap();
        assert_eq!(g.colour(0, 1), Some(Colour::Red));
        assert_eq!(g.colour(1, 2), Some(Colour::Red));
        assert_eq!(g.colour(0, 2), Some(Colour::Blue));
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn duplicate_edge_names_line() {
        let err = parse_cg("p cg 2 2\ne 1 2 r\ne 1 2 b").unwrap_err();
        assert!(matches!(
            err,
            ParseError::DuplicateEdge {
                line: 3,
                u: 1,
                v: 2,
                conflicting: true
            }
        ));
        let err = parse_cg("p cg 2 2\ne 1 2 r\ne 2 1 r").unwrap_err();
        assert!(matches!(
            err,
            ParseError::DuplicateEdge {
                line: 3,
                conflicting: false,
                ..
            }
        ));
    }

    #[test]
    fn distinct_errors() {
        assert!(matches!(
            parse_cg("p cg x 1"),
            Err(ParseError::MalformedHeader { line: 1 })
        ));
        assert!(matches!(
            parse_cg("p graph 2 0"),
            Err(ParseError::MalformedHeader { line: 1 })
        ));
        assert!(matches!(
            parse_cg("# hi\np cg 2 1\ne 1 3 r"),
            Err(ParseError::VertexOutOfRange {
                line: 3,
                vertex: 3,
                n: 2
            })
        ));
        assert!(matches!(
            parse_cg("p cg 2 1\ne 0 1 r"),
            Err(ParseError::VertexOutOfRange { line: 2, vertex: 0, .. })
        ));
        assert!(matches!(
            parse_cg("p cg 2 1\ne 2 2 b"),
            Err(ParseError::Loop { line: 2, vertex: 2 })
        ));
        assert!(matches!(
            parse_cg("p cg 2 1\ne 1 2 g"),
            Err(ParseError::MalformedEdge { line: 2 })
        ));
        assert!(matches!(
            parse_cg("e 1 2 r"),
            Err(ParseError::EdgeBeforeHeader { line: 1 })
        ));
        assert!(matches!(
            parse_cg("p cg 2 0\np cg 2 0"),
            Err(ParseError::DuplicateHeader { line: 2 })
        ));
        assert!(matches!(parse_cg("# nothing"), Err(ParseError::MissingHeader)));
        assert!(matches!(
            parse_cg("p cg 3 2\ne 1 2 r"),
            Err(ParseError::EdgeCountMismatch { declared: 2, found: 1 })
        ));
    }

    #[test]
    fn serializer_is_sorted_and_one_indexed() {
        let g = parse_cg("p cg 4 3\ne 3 4 b\ne 1 3 r\ne 1 2 b\n").unwrap();
        assert_eq!(to_cg_string(&g), "p cg 4 3\ne 1 2 b\ne 1 3 r\ne 3 4 b\n");
    }
}
