//! Graphviz DOT export.

use std::fmt::Write;

use crate::graph::Graph;
use crate::labeling::CenteredLabeling;

/// Renders `g` as an undirected DOT graph. Node text is the label when one is
/// given, otherwise the vertex index. With `qw_rows = Some(m)` the vertices
/// `0..m` and `m..2m` are placed on two ranks, matching the quasi wreath
/// numbering.
pub fn export_dot(g: &Graph, labels: Option<&CenteredLabeling>, qw_rows: Option<usize>) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    for v in 0..g.order() {
        let text = match labels {
            Some(l) => l.label(v).to_string(),
            None => v.to_string(),
        };
        let _ = writeln!(out, "  {v} [label=\"{text}\"];");
    }
    if let Some(m) = qw_rows.filter(|&m| 2 * m == g.order()) {
        for row in [0..m, m..2 * m] {
            let ids: Vec<String> = row.map(|v| v.to_string()).collect();
            let _ = writeln!(out, "  {{ rank=same; {}; }}", ids.join("; "));
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::construct_labeling;
    use crate::graph::cycle;
    use crate::qw::{build_qw, SegmentProfile};

    /// Minimal checker for the subset of DOT emitted above.
    fn well_formed(doc: &str) -> bool {
        let mut lines = doc.lines();
        if lines.next() != Some("graph G {") || !doc.ends_with("}\n") {
            return false;
        }
        let body: Vec<&str> = doc.lines().skip(1).collect();
        let (last, stmts) = body.split_last().unwrap();
        if *last != "}" {
            return false;
        }
        let id = |s: &str| !s.is_empty() && s.chars().all(|c| c.is_ascii_digit());
        stmts.iter().all(|line| {
            let s = line.trim();
            if let Some(inner) = s.strip_prefix("{ rank=same; ").and_then(|r| r.strip_suffix("; }")) {
                return inner.split("; ").all(id);
            }
            let Some(s) = s.strip_suffix(';') else { return false };
            if s == "node [shape=circle]" {
                return true;
            }
            if let Some((a, b)) = s.split_once(" -- ") {
                return id(a) && id(b);
            }
            if let Some((a, rest)) = s.split_once(" [label=\"") {
                let Some(text) = rest.strip_suffix("\"]") else {
                    return false;
                };
                return id(a) && text.parse::<i64>().is_ok();
            }
            false
        })
    }

    #[test]
    fn unlabeled_cycle() {
        let doc = export_dot(&cycle(3), None, None);
        assert_eq!(
            doc,
            "graph G {\n  node [shape=circle];\n  0 [label=\"0\"];\n  1 [label=\"1\"];\n  2 [label=\"2\"];\n  \
             0 -- 1;\n  0 -- 2;\n  1 -- 2;\n}\n"
        );
        assert!(well_formed(&doc));
    }

    #[test]
    fn labeled_qw3() {
        let s = SegmentProfile::new(vec![3]).unwrap().to_sequence();
        let lab = construct_labeling(&s).unwrap();
        let doc = export_dot(&build_qw(&s), Some(&lab), Some(3));
        assert!(well_formed(&doc));
        let mut shown: Vec<i64> = doc
            .lines()
            .filter_map(|l| {
                l.split_once("[label=\"")
                    .map(|(_, r)| r.trim_end_matches("\"];").parse().unwrap())
            })
            .collect();
        shown.sort();
        assert_eq!(shown, vec![-5, -3, -1, 1, 3, 5]);
        assert!(doc.contains("{ rank=same; 0; 1; 2; }"));
        assert!(doc.contains("{ rank=same; 3; 4; 5; }"));
        assert_eq!(doc.matches(" -- ").count(), 12);
    }
}
