//! Text and JSON serializations.
//!
//! The `.hg` format:
//!
//! ```text
//! # comment; everything after '#' on a line is ignored
//! 5 4            <- n m
//! 0 1 2          <- m edge lines of 0-based vertex indices
//! 1 3 4
//! 0 2 4
//! 2 3 4
//! @labels        <- optional: one `name index` line per vertex
//! u1 0
//! ...
//! ```
//!
//! Partition files hold one part per line as space-separated vertex indices
//! (or labels, when a labeling is known); blank lines are ignored.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercore::{Hypergraph, Labeling, Partition, VertexId, VertexSet};

/// A hypergraph read from a file, with its labels if the file carried any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub hypergraph: Hypergraph,
    pub labeling: Option<Labeling>,
}

impl Document {
    pub fn new(hypergraph: Hypergraph, labeling: Option<Labeling>) -> Self {
        Document {
            hypergraph,
            labeling,
        }
    }

    /// The stored labeling, or vertex indices as labels.
    pub fn labels(&self) -> Labeling {
        self.labeling
            .clone()
            .unwrap_or_else(|| Labeling::numeric(self.hypergraph.n()))
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn index(token: &str, line: usize, what: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("{what}: expected a nonnegative integer, got {token:?}")))
}

/// Parses the `.hg` format.
pub fn parse_hg(text: &str) -> Result<Document> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing `n m` header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::parse(header_line, "header must be `n m`"));
    }
    let n = index(fields[0], header_line, "vertex count")?;
    let m = index(fields[1], header_line, "edge count")?;
    if n == 0 {
        return Err(Error::parse(header_line, "hypergraph must have at least one vertex"));
    }
    if n > crate::hypercore::MAX_VERTICES {
        return Err(Error::parse(
            header_line,
            format!("{n} vertices, at most {} supported", crate::hypercore::MAX_VERTICES),
        ));
    }
    let mut edges = Vec::with_capacity(m);
    let mut last_line = header_line;
    for k in 0..m {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| Error::parse(last_line, format!("expected {m} edges, found {k}")))?;
        last_line = line_no;
        if line.starts_with('@') {
            return Err(Error::parse(line_no, format!("expected {m} edges, found {k}")));
        }
        let mut edge = VertexSet::EMPTY;
        for token in line.split_whitespace() {
            let v = index(token, line_no, "vertex")?;
            if v >= n {
                return Err(Error::parse(line_no, format!("vertex {v} out of range 0..{n}")));
            }
            if edge.contains(v) {
                return Err(Error::parse(line_no, format!("vertex {v} repeated in edge")));
            }
            edge.insert(v);
        }
        edges.push(edge);
    }
    let hypergraph = Hypergraph::from_edges(n, edges)?;

    let labeling = match lines.next() {
        None => None,
        Some((line_no, "@labels")) => {
            let mut names: Vec<Option<String>> = vec![None; n];
            let mut block_end = line_no;
            for (line_no, line) in lines.by_ref() {
                block_end = line_no;
                let fields: Vec<&str> = line.split_whitespace().collect();
                if fields.len() != 2 {
                    return Err(Error::parse(line_no, "label lines must be `name index`"));
                }
                let v = index(fields[1], line_no, "labelled vertex")?;
                if v >= n {
                    return Err(Error::parse(line_no, format!("vertex {v} out of range 0..{n}")));
                }
                if names[v].is_some() {
                    return Err(Error::parse(line_no, format!("vertex {v} labelled twice")));
                }
                names[v] = Some(fields[0].to_string());
            }
            if let Some(v) = names.iter().position(Option::is_none) {
                return Err(Error::parse(block_end, format!("vertex {v} has no label")));
            }
            let names = names.into_iter().map(Option::unwrap).collect();
            Some(Labeling::new(names).map_err(|e| Error::parse(block_end, e.to_string()))?)
        }
        Some((line_no, _)) => {
            return Err(Error::parse(line_no, format!("unexpected content after {m} edges")));
        }
    };
    Ok(Document::new(hypergraph, labeling))
}

/// Writes the `.hg` format. `comment` lines are emitted first, each
/// prefixed with `# `.
pub fn write_hg(h: &Hypergraph, labeling: Option<&Labeling>, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "{} {}", h.n(), h.edge_count());
    for e in h.edges() {
        let _ = writeln!(out, "{}", join(e.iter()));
    }
    if let Some(lab) = labeling {
        let _ = writeln!(out, "@labels");
        for (v, name) in lab.names().iter().enumerate() {
            let _ = writeln!(out, "{name} {v}");
        }
    }
    out
}

fn join(items: impl Iterator<Item = VertexId>) -> String {
    items.map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

/// JSON form of a hypergraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonHypergraph {
    pub n: usize,
    pub edges: Vec<Vec<VertexId>>,
    pub labels: Option<Vec<String>>,
}

impl JsonHypergraph {
    pub fn from_parts(h: &Hypergraph, labeling: Option<&Labeling>) -> Self {
        JsonHypergraph {
            n: h.n(),
            edges: h.edges().iter().map(|e| e.to_vec()).collect(),
            labels: labeling.map(|l| l.names().to_vec()),
        }
    }

    pub fn into_document(self) -> Result<Document> {
        let hypergraph = Hypergraph::new(self.n, self.edges)?;
        let labeling = match self.labels {
            Some(names) if names.len() != hypergraph.n() => {
                return Err(Error::BadLabeling(format!(
                    "{} labels for {} vertices",
                    names.len(),
                    hypergraph.n()
                )))
            }
            Some(names) => Some(Labeling::new(names)?),
            None => None,
        };
        Ok(Document::new(hypergraph, labeling))
    }
}

pub fn write_json(h: &Hypergraph, labeling: Option<&Labeling>) -> String {
    let doc = JsonHypergraph::from_parts(h, labeling);
    serde_json::to_string_pretty(&doc).expect("plain data serializes") + "\n"
}

pub fn parse_json(text: &str) -> Result<Document> {
    let doc: JsonHypergraph = serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
    doc.into_document()
}

/// Dispatches on content: a leading `{` means JSON, anything else `.hg`.
pub fn parse_any(text: &str) -> Result<Document> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_hg(text)
    }
}

/// Parses a partition file. Tokens are vertex indices, or labels when
/// `labeling` is given and the token is not a number.
pub fn parse_partition(text: &str, labeling: Option<&Labeling>) -> Result<Partition> {
    let mut parts = Vec::new();
    for (line_no, line) in content_lines(text) {
        let mut part = VertexSet::EMPTY;
        for token in line.split_whitespace() {
            let v = match (token.parse::<usize>(), labeling) {
                (Ok(v), _) => v,
                (Err(_), Some(lab)) => lab
                    .vertex(token)
                    .ok_or_else(|| Error::parse(line_no, format!("unknown vertex label {token:?}")))?,
                (Err(_), None) => {
                    return Err(Error::parse(line_no, format!("expected a vertex index, got {token:?}")))
                }
            };
            if v >= crate::hypercore::MAX_VERTICES {
                return Err(Error::parse(line_no, format!("vertex {v} out of range")));
            }
            if part.contains(v) {
                return Err(Error::parse(line_no, format!("vertex {v} repeated in part")));
            }
            part.insert(v);
        }
        parts.push(part);
    }
    Ok(Partition::new(parts))
}

pub fn write_partition(partition: &Partition) -> String {
    partition
        .parts()
        .iter()
        .map(|p| join(p.iter()) + "\n")
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{linear_cycle, rpartite_uniform};

    const INTRO: &str = "# intro example\n5 4\n0 1 2\n1 3 4\n0 2 4   # trailing\n\n2 3 4\n";

    #[test]
    fn parses_plain_file() {
        let doc = parse_hg(INTRO).unwrap();
        assert_eq!(doc.hypergraph.n(), 5);
        assert_eq!(doc.hypergraph.edge_count(), 4);
        assert!(doc.labeling.is_none());
        assert_eq!(doc.labels().name(3), "3");
    }

    #[test]
    fn round_trips_with_labels() {
        let (h, lab) = linear_cycle(5, 3).unwrap();
        let text = write_hg(&h, Some(&lab), &["family cycle:n=5,r=3".into()]);
        assert!(text.starts_with("# family cycle:n=5,r=3\n10 5\n"));
        let doc = parse_hg(&text).unwrap();
        assert_eq!(doc.hypergraph, h);
        assert_eq!(doc.labeling.as_ref(), Some(&lab));
        let json = write_json(&h, Some(&lab));
        assert_eq!(parse_any(&json).unwrap(), doc);
    }

    #[test]
    fn reports_line_numbers() {
        let cases = [
            ("", 1),
            ("3\n", 1),
            ("3 2\n0 1\n", 2),
            ("3 2\n0 1\n0 5\n", 3),
            ("3 1\n0 0\n", 2),
            ("3 1\n0 x\n", 2),
            ("0 0\n", 1),
            ("3 1\n0 1\nextra\n", 3),
            ("2 1\n0 1\n@labels\na 0\n", 4),
            ("2 1\n0 1\n@labels\na 0\na 1\n", 5),
            ("2 1\n0 1\n@labels\na 0\nb 0\n", 5),
        ];
        for (text, expected) in cases {
            match parse_hg(text) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, expected, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(matches!(parse_hg("2 1\n\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn comment_only_lines_are_not_edges() {
        assert!(matches!(parse_hg("3 1\n   # nothing\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn json_label_count_must_match() {
        let text = r#"{"n": 2, "edges": [[0, 1]], "labels": ["a"]}"#;
        assert!(matches!(parse_json(text), Err(Error::BadLabeling(_))));
        let text = r#"{"n": 2, "edges": [[0, 1]], "labels": null}"#;
        assert_eq!(parse_json(text).unwrap().hypergraph.edge_count(), 1);
        assert!(matches!(parse_json("{"), Err(Error::Parse { .. })));
    }

    #[test]
    fn partitions_by_index_and_label() {
        let p = parse_partition("0 1\n\n2\n3 4 # tail\n", None).unwrap();
        assert_eq!(p.order(), 3);
        assert_eq!(write_partition(&p), "0 1\n2\n3 4\n");
        let (_, lab) = rpartite_uniform(&[1, 2, 2]).unwrap();
        let p = parse_partition("part1:v1\npart2:v1 part2:v2\n3 4\n", Some(&lab)).unwrap();
        assert_eq!(p.parts()[1], VertexSet::from([1, 2]));
        assert!(matches!(
            parse_partition("0\nfoo\n", None),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_partition("1 1\n", None),
            Err(Error::Parse { line: 1, .. })
        ));
    }
}
