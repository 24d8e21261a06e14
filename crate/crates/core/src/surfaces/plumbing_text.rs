//! Plumbing text format.
//!
//! ```text
//! vertex 0 0 -2    # id, genus, optional Euler number
//! vertex 1 0
//! edge 0 1
//! ```

use super::{PlumbingTree, SurfaceError};
use crate::trees::{Tree, VertexId};

fn err(line: usize, message: impl Into<String>) -> SurfaceError {
    SurfaceError::Parse { line, message: message.into() }
}

fn num<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T, SurfaceError> {
    tok.parse().map_err(|_| err(line, format!("bad {what} `{tok}`")))
}

pub fn parse_plumbing_text(input: &str) -> Result<PlumbingTree, SurfaceError> {
    let mut vertices: Vec<(VertexId, u32, Option<i64>)> = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in input.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["vertex", id, genus, rest @ ..] if rest.len() <= 1 => {
                let euler = match rest.first() {
                    Some(e) => Some(num(e, line_no, "Euler number")?),
                    None => None,
                };
                vertices.push((num(id, line_no, "vertex id")?, num(genus, line_no, "genus")?, euler));
            }
            ["edge", u, v] => edges.push((num(u, line_no, "vertex id")?, num(v, line_no, "vertex id")?)),
            _ => return Err(err(line_no, "expected `vertex id genus [euler]` or `edge u v`")),
        }
    }
    let graph = Tree::new(vertices.iter().map(|v| v.0), edges)?;
    let mut genus = vec![0; graph.vertex_count()];
    let mut euler = vec![None; graph.vertex_count()];
    for (id, g, e) in vertices {
        let v = graph.index_of(id).expect("declared vertex");
        genus[v] = g;
        euler[v] = e;
    }
    if euler.iter().all(Option::is_none) {
        euler.clear();
    }
    PlumbingTree::new(graph, genus, euler)
}

pub fn write_plumbing_text(p: &PlumbingTree) -> String {
    let mut out = String::new();
    for v in 0..p.vertex_count() {
        out.push_str(&format!("vertex {} {}", p.graph.id(v), p.genus[v]));
        if let Some(e) = p.euler_number(v) {
            out.push_str(&format!(" {e}"));
        }
        out.push('\n');
    }
    for e in 0..p.graph.edge_count() {
        let (u, v) = p.graph.edge_ids(e);
        out.push_str(&format!("edge {u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::TreeError;

    #[test]
    fn round_trip() {
        let text = "vertex 0 0 -2\nvertex 1 1\nvertex 2 0\nedge 0 1\nedge 1 2\n";
        let p = parse_plumbing_text(text).unwrap();
        assert_eq!(p.genus, vec![0, 1, 0]);
        assert_eq!(p.euler_number(0), Some(-2));
        assert_eq!(p.euler_number(1), None);
        assert_eq!(write_plumbing_text(&p), text);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_plumbing_text("vertex a 0\n"), Err(SurfaceError::Parse { line: 1, .. })));
        assert!(matches!(
            parse_plumbing_text("vertex 0 0\nedge 0 1\n"),
            Err(SurfaceError::Tree(TreeError::UnknownVertex { .. }))
        ));
        assert!(matches!(
            parse_plumbing_text("vertex 0 0\nvertex 1 0\nvertex 2 0\nedge 0 1\n"),
            Err(SurfaceError::Tree(TreeError::NotATree(_)))
        ));
    }
}
