//! DIMACS `.clq` and plain edge-list readers and writers.

use super::Graph;
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt::Write as _;

/// Facts about an input file that do not prevent loading.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LoadDiagnostics {
    /// Edge count from the DIMACS problem line, if any.
    pub declared_edges: Option<usize>,
    /// Edge entries dropped as duplicates (including reversed duplicates).
    pub duplicate_edges: usize,
}

/// Parses a DIMACS clique file (`c` comments, one `p edge n m` line, `e u v`
/// lines with 1-based indices).
pub fn load_dimacs_clq(text: &str) -> Result<Graph> {
    read_dimacs_clq(text).map(|(g, _)| g)
}

pub fn read_dimacs_clq(text: &str) -> Result<(Graph, LoadDiagnostics)> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(Error::parse(line_no, "duplicate problem line"));
                }
                let kind = tokens.next();
                if !matches!(kind, Some("edge") | Some("col")) {
                    return Err(Error::parse(line_no, "expected `p edge <n> <m>`"));
                }
                let n = parse_usize(tokens.next(), line_no)?;
                let m = parse_usize(tokens.next(), line_no)?;
                header = Some((n, m));
            }
            Some("e") => {
                let Some((n, _)) = header else {
                    return Err(Error::parse(line_no, "edge line before problem line"));
                };
                let u = parse_usize(tokens.next(), line_no)?;
                let v = parse_usize(tokens.next(), line_no)?;
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(Error::parse(
                            line_no,
                            format!("node index {x} out of range [1, {n}]"),
                        ));
                    }
                }
                if u == v {
                    return Err(Error::parse(line_no, format!("self-loop on node {u}")));
                }
                edges.push((u - 1, v - 1));
            }
            Some(other) => {
                return Err(Error::parse(line_no, format!("unrecognized line type `{other}`")));
            }
            None => unreachable!("blank lines skipped"),
        }
    }

    let Some((n, declared)) = header else {
        return Err(Error::parse(text.lines().count() + 1, "missing problem line"));
    };
    let labels = (1..=n as u64).collect();
    let (graph, duplicate_edges) = Graph::from_labeled_edges(labels, edges)?;
    Ok((graph, LoadDiagnostics { declared_edges: Some(declared), duplicate_edges }))
}

fn parse_usize(token: Option<&str>, line: usize) -> Result<usize> {
    let token = token.ok_or_else(|| Error::parse(line, "missing integer"))?;
    token
        .parse::<usize>()
        .map_err(|_| Error::parse(line, format!("expected non-negative integer, got `{token}`")))
}

/// Parses whitespace-separated id pairs. Ids are compacted to `0..n` in
/// first-appearance order and kept as node labels. Lines starting with `#`
/// or `%` are comments.
pub fn load_edge_list(text: &str) -> Result<Graph> {
    read_edge_list(text).map(|(g, _)| g)
}

pub fn read_edge_list(text: &str) -> Result<(Graph, LoadDiagnostics)> {
    let mut index: HashMap<u64, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut edges = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if !tokens.len().is_multiple_of(2) {
            return Err(Error::parse(line_no, format!("odd token count ({})", tokens.len())));
        }
        for pair in tokens.chunks(2) {
            let mut ends = [0usize; 2];
            for (slot, tok) in ends.iter_mut().zip(pair) {
                if tok.starts_with('-') && tok[1..].parse::<u64>().is_ok() {
                    return Err(Error::parse(line_no, format!("negative node id `{tok}`")));
                }
                let id: u64 = tok
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("expected integer id, got `{tok}`")))?;
                *slot = *index.entry(id).or_insert_with(|| {
                    labels.push(id);
                    labels.len() - 1
                });
            }
            if ends[0] == ends[1] {
                return Err(Error::parse(line_no, format!("self-loop on node {}", pair[0])));
            }
            edges.push((ends[0], ends[1]));
        }
    }

    let (graph, duplicate_edges) = Graph::from_labeled_edges(labels, edges)?;
    Ok((graph, LoadDiagnostics { declared_edges: None, duplicate_edges }))
}

/// DIMACS text with 1-based node indices, edges in ascending `(u, v)` order.
pub fn write_dimacs_clq(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p edge {} {}", g.node_count(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

/// One `label_u label_v` line per edge. Isolated nodes are not representable.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        writeln!(out, "{} {}", g.label(u), g.label(v)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_triangle() {
        let g = load_dimacs_clq("c tiny\np edge 3 3\ne 1 2\ne 2 3\ne 1 3").unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (3, 3));
        assert!(g.has_edge(0, 2));
        assert_eq!(g.labels(), &[1, 2, 3]);
    }

    #[test]
    fn dimacs_dedup_and_header_advisory() {
        let (g, d) = read_dimacs_clq("p edge 3 5\ne 1 2\ne 2 1\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(d.duplicate_edges, 2);
        assert_eq!(d.declared_edges, Some(5));
    }

    #[test]
    fn dimacs_errors_carry_line_numbers() {
        let cases = [
            ("p edge 2 1\ne 1 3", 2, "out of range"),
            ("e 1 2", 1, "before problem line"),
            ("c only comments\n", 2, "missing problem line"),
            ("p edge 3 1\ne 2 2", 2, "self-loop"),
            ("p edge 3 1\ne 1 x", 2, "expected non-negative integer"),
            ("p edge 3 1\ne 0 1", 2, "out of range"),
        ];
        for (text, line, needle) in cases {
            match load_dimacs_clq(text) {
                Err(Error::Parse { line: l, message }) => {
                    assert_eq!(l, line, "{text:?}");
                    assert!(message.contains(needle), "{message}");
                }
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn edge_list_compaction() {
        let g = load_edge_list("0 1\n1 2").unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (3, 2));
        let g = load_edge_list("5 9\n9 5").unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (2, 1));
        assert_eq!(g.labels(), &[5, 9]);
    }

    #[test]
    fn edge_list_errors() {
        assert!(matches!(load_edge_list("1 1"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(load_edge_list("0 1\n1 2 3"), Err(Error::Parse { line: 2, .. })));
        let err = load_edge_list("0 -4").unwrap_err().to_string();
        assert!(err.contains("negative"), "{err}");
        assert!(load_edge_list("a b").is_err());
    }

    #[test]
    fn dimacs_export_is_byte_stable() {
        let g = Graph::petersen();
        let text = write_dimacs_clq(&g);
        let back = load_dimacs_clq(&text).unwrap();
        assert_eq!(write_dimacs_clq(&back), text);
        assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }
}
