//! Line-oriented text format.
//!
//! ```text
//! graph S3
//! n 6
//! e 0 1
//! e 1 2
//! ```
//!
//! Multigraphs use the header `multigraph` and `m <u> <v> <mult>` lines;
//! digraphs use `digraph` and `a <u> <v> <mult>`. An optional
//! `l <v> <label>` line names a vertex. Blank lines and lines starting with
//! `#` are ignored.

use std::fmt::Write;

use crate::error::{Error, Result};

use super::{check_size, Digraph, Graph, Multigraph};

struct Header {
    name: String,
    n: usize,
}

fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim();
        (!l.is_empty() && !l.starts_with('#')).then(|| (i + 1, l.split_whitespace().collect()))
    })
}

fn number<T: std::str::FromStr>(line: usize, tok: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("expected a non-negative integer, got `{tok}`")))
}

fn parse_header<'a, I>(it: &mut I, kind: &str) -> Result<Header>
where
    I: Iterator<Item = (usize, Vec<&'a str>)>,
{
    let (line, toks) = it
        .next()
        .ok_or_else(|| Error::parse(1, format!("missing `{kind} <name>` header")))?;
    if toks[0] != kind {
        return Err(Error::parse(line, format!("expected `{kind} <name>`, got `{}`", toks[0])));
    }
    let name = toks[1..].join(" ");
    let (line, toks) = it
        .next()
        .ok_or_else(|| Error::parse(line + 1, "missing `n <count>` line"))?;
    if toks[0] != "n" || toks.len() != 2 {
        return Err(Error::parse(line, "expected `n <count>`"));
    }
    let n = number(line, toks[1])?;
    check_size(n).map_err(|e| Error::parse(line, e.to_string()))?;
    Ok(Header { name, n })
}

fn vertex(line: usize, tok: &str, n: usize) -> Result<usize> {
    let v: usize = number(line, tok)?;
    if v >= n {
        return Err(Error::parse(line, format!("vertex {v} out of range (n = {n})")));
    }
    Ok(v)
}

fn expect_len(line: usize, toks: &[&str], len: usize) -> Result<()> {
    if toks.len() != len {
        return Err(Error::parse(
            line,
            format!("`{}` takes {} argument(s), got {}", toks[0], len - 1, toks.len() - 1),
        ));
    }
    Ok(())
}

/// Parses a simple graph; returns its name and the graph.
pub fn read_graph(text: &str) -> Result<(String, Graph)> {
    let mut it = lines(text);
    let h = parse_header(&mut it, "graph")?;
    let mut g = Graph::empty(h.n);
    let mut labels: Option<Vec<String>> = None;
    for (line, toks) in it {
        match toks[0] {
            "e" => {
                expect_len(line, &toks, 3)?;
                let u = vertex(line, toks[1], h.n)?;
                let v = vertex(line, toks[2], h.n)?;
                if u == v {
                    return Err(Error::parse(line, format!("loop at vertex {u}")));
                }
                g.add_edge(u, v);
            }
            "l" => {
                if toks.len() < 3 {
                    return Err(Error::parse(line, "expected `l <v> <label>`"));
                }
                let v = vertex(line, toks[1], h.n)?;
                labels.get_or_insert_with(|| (0..h.n).map(|i| i.to_string()).collect())[v] =
                    toks[2..].join(" ");
            }
            other => return Err(Error::parse(line, format!("unknown record `{other}`"))),
        }
    }
    if let Some(l) = labels {
        g = g.with_labels(l);
    }
    Ok((h.name, g))
}

pub fn read_multigraph(text: &str) -> Result<(String, Multigraph)> {
    let mut it = lines(text);
    let h = parse_header(&mut it, "multigraph")?;
    let mut g = Multigraph::new(h.n);
    for (line, toks) in it {
        match toks[0] {
            "m" | "e" => {
                let mult = if toks[0] == "e" {
                    expect_len(line, &toks, 3)?;
                    1
                } else {
                    expect_len(line, &toks, 4)?;
                    number(line, toks[3])?
                };
                let u = vertex(line, toks[1], h.n)?;
                let v = vertex(line, toks[2], h.n)?;
                g.add_edges(u, v, mult)?;
            }
            other => return Err(Error::parse(line, format!("unknown record `{other}`"))),
        }
    }
    Ok((h.name, g))
}

pub fn read_digraph(text: &str) -> Result<(String, Digraph)> {
    let mut it = lines(text);
    let h = parse_header(&mut it, "digraph")?;
    let mut d = Digraph::new(h.n);
    for (line, toks) in it {
        match toks[0] {
            "a" => {
                expect_len(line, &toks, 4)?;
                let u = vertex(line, toks[1], h.n)?;
                let v = vertex(line, toks[2], h.n)?;
                d.add_arc(u, v, number(line, toks[3])?)?;
            }
            other => return Err(Error::parse(line, format!("unknown record `{other}`"))),
        }
    }
    Ok((h.name, d))
}

pub fn write_graph(name: &str, g: &Graph) -> String {
    let mut s = format!("graph {name}\nn {}\n", g.n());
    for (u, v) in g.edges() {
        writeln!(s, "e {u} {v}").unwrap();
    }
    if let Some(labels) = g.labels() {
        for (v, l) in labels.iter().enumerate() {
            writeln!(s, "l {v} {l}").unwrap();
        }
    }
    s
}

pub fn write_multigraph(name: &str, g: &Multigraph) -> String {
    let mut s = format!("multigraph {name}\nn {}\n", g.n());
    for ((u, v), m) in g.pairs() {
        writeln!(s, "m {u} {v} {m}").unwrap();
    }
    s
}

pub fn write_digraph(name: &str, d: &Digraph) -> String {
    let mut s = format!("digraph {name}\nn {}\n", d.n());
    for i in 0..d.arc_count() {
        let (u, v) = d.arc(i);
        writeln!(s, "a {u} {v} {}", d.arc_multiplicity(i)).unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_named;

    #[test]
    fn graph_round_trip() {
        let g = build_named("fig4H", &[]).unwrap();
        let text = write_graph("H", &g);
        let (name, back) = read_graph(&text).unwrap();
        assert_eq!(name, "H");
        assert_eq!(back, g);
        assert_eq!(back.labels(), g.labels());
    }

    #[test]
    fn parse_errors_carry_lines() {
        let bad = "graph x\nn 3\ne 0 1\n\ne 0 3\n";
        assert_eq!(
            read_graph(bad).unwrap_err(),
            Error::Parse {
                line: 5,
                message: "vertex 3 out of range (n = 3)".into()
            }
        );
        assert!(matches!(read_graph("n 3"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(read_graph("graph x\nn 2\ne 1 1"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(read_graph("graph x\nn two"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn multigraph_and_digraph_round_trip() {
        let mut h = Multigraph::new(3);
        h.add_edges(0, 1, 3).unwrap();
        h.add_edges(1, 2, 1).unwrap();
        let (_, back) = read_multigraph(&write_multigraph("h", &h)).unwrap();
        assert_eq!(back, h);
        let d = Digraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let (_, back) = read_digraph(&write_digraph("d", &d)).unwrap();
        assert_eq!(back, d);
    }
}
