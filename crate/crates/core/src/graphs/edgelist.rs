use super::Graph;
use crate::error::{Error, Result};
use std::fmt::Write;

/// Parse the edge-list text format.
///
/// ```text
/// # comment
/// N 4
/// 0 1
/// 1 2
/// ```
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut order = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let parse = |s: &str| s.parse::<usize>().map_err(|e| Error::Parse { line, msg: format!("{s:?}: {e}") });
        match (order, fields.as_slice()) {
            (None, ["N", n]) => order = Some(parse(n)?),
            (None, _) => return Err(Error::Parse { line, msg: "expected header `N <order>`".into() }),
            (Some(_), [u, v]) => edges.push((parse(u)?, parse(v)?)),
            (Some(_), _) => return Err(Error::Parse { line, msg: "expected `u v`".into() }),
        }
    }
    let n = order.ok_or(Error::Parse { line: 0, msg: "missing header `N <order>`".into() })?;
    Graph::from_edge_list(n, edges)
}

/// Render a graph in the edge-list text format.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("N {}\n", g.order());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String cannot fail");
    }
    out
}
