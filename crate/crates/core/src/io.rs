//! Text formats for graphs, rooted trees, edge colourings and embeddings.
//!
//! Graph: line 1 `n m`, then `m` lines `u v` with `0 <= u < v < n`, ascii
//! decimal, newline-terminated, no duplicates.
//! Rooted tree: line 1 `n root`, line 2 the `n` parent ids with
//! `parent(root) = root`.
//! Colouring: line 1 `n m`, then `m` lines `u v C` with `C` in {R, B}.
//! Embedding: one `pattern_vertex host_vertex` line per pattern vertex.
//!
//! Writers emit canonical sorted order, so identical objects produce
//! identical bytes.

use std::fmt::Write as _;

use crate::colouring::{Colour, EdgeColouring};
use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tree::RootedTree;

fn parse_fields<const K: usize>(line: &str, lineno: usize, what: &str) -> Result<[usize; K]> {
    let mut out = [0usize; K];
    let mut fields = line.split_whitespace();
    for slot in out.iter_mut() {
        let f = fields.next().ok_or_else(|| Error::Parse {
            line: lineno,
            msg: format!("expected {what}"),
        })?;
        *slot = f.parse().map_err(|_| Error::Parse {
            line: lineno,
            msg: format!("invalid integer `{f}`"),
        })?;
    }
    if fields.next().is_some() {
        return Err(Error::Parse {
            line: lineno,
            msg: format!("trailing fields, expected {what}"),
        });
    }
    Ok(out)
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text.lines().enumerate();
    let (lineno, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty input, expected `n m` header".into(),
    })?;
    let [n, m] = parse_fields(header, lineno + 1, "`n m`")?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (lineno, line) = lines.next().ok_or(Error::Parse {
            line: m + 1,
            msg: format!("expected {m} edge lines"),
        })?;
        let [u, v] = parse_fields(line, lineno + 1, "`u v`")?;
        if u >= v {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: format!("edges must satisfy u < v, got {u} {v}"),
            });
        }
        if v >= n {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: format!("vertex {v} out of range for n={n}"),
            });
        }
        edges.push((u, v));
    }
    if let Some((lineno, line)) = lines.next() {
        if !line.trim().is_empty() {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: "unexpected content after edge list".into(),
            });
        }
    }
    Graph::from_edges(n, &edges).map_err(|e| Error::Parse {
        line: 1,
        msg: e.to_string(),
    })
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_tree(text: &str) -> Result<RootedTree> {
    let mut lines = text.lines().enumerate();
    let (lineno, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty input, expected `n root` header".into(),
    })?;
    let [n, root] = parse_fields(header, lineno + 1, "`n root`")?;
    let (lineno, parents) = lines.next().ok_or(Error::Parse {
        line: 2,
        msg: "expected parent line".into(),
    })?;
    let fields: Vec<&str> = parents.split_whitespace().collect();
    if fields.len() != n {
        return Err(Error::Parse {
            line: lineno + 1,
            msg: format!("expected {n} parent ids, got {}", fields.len()),
        });
    }
    let mut parent = Vec::with_capacity(n);
    for f in fields {
        parent.push(f.parse().map_err(|_| Error::Parse {
            line: lineno + 1,
            msg: format!("invalid integer `{f}`"),
        })?);
    }
    RootedTree::new(root, parent).map_err(|e| Error::Parse {
        line: lineno + 1,
        msg: e.to_string(),
    })
}

pub fn write_tree(t: &RootedTree) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", t.n(), t.root());
    let parents: Vec<String> = t.parent_map().iter().map(|p| p.to_string()).collect();
    let _ = writeln!(out, "{}", parents.join(" "));
    out
}

pub fn parse_colouring(text: &str) -> Result<EdgeColouring> {
    let mut lines = text.lines().enumerate();
    let (lineno, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty input, expected `n m` header".into(),
    })?;
    let [n, m] = parse_fields(header, lineno + 1, "`n m`")?;
    let mut entries = Vec::with_capacity(m);
    for _ in 0..m {
        let (lineno, line) = lines.next().ok_or(Error::Parse {
            line: m + 1,
            msg: format!("expected {m} colour lines"),
        })?;
        let lineno = lineno + 1;
        let mut fields = line.split_whitespace();
        let bad = |f: &str| Error::Parse {
            line: lineno,
            msg: format!("invalid field `{f}`, expected `u v R|B`"),
        };
        let (u, v, c) = match (fields.next(), fields.next(), fields.next(), fields.next()) {
            (Some(u), Some(v), Some(c), None) => {
                let u: usize = u.parse().map_err(|_| bad(u))?;
                let v: usize = v.parse().map_err(|_| bad(v))?;
                let c = c
                    .chars()
                    .next()
                    .and_then(Colour::from_letter)
                    .filter(|_| c.len() == 1)
                    .ok_or_else(|| bad(c))?;
                (u, v, c)
            }
            _ => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "expected `u v R|B`".into(),
                })
            }
        };
        if u >= v {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("edges must satisfy u < v, got {u} {v}"),
            });
        }
        entries.push((u, v, c));
    }
    EdgeColouring::from_entries(n, &entries).map_err(|e| Error::Parse {
        line: 1,
        msg: e.to_string(),
    })
}

pub fn write_colouring(psi: &EdgeColouring) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", psi.n(), psi.edge_count());
    for (u, v, c) in psi.entries() {
        let _ = writeln!(out, "{u} {v} {}", c.letter());
    }
    out
}

pub fn parse_embedding(text: &str) -> Result<Embedding> {
    let mut pairs = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let [p, h] = parse_fields(line, lineno + 1, "`pattern_vertex host_vertex`")?;
        pairs.push((p, h));
    }
    pairs.sort_unstable();
    for (i, &(p, _)) in pairs.iter().enumerate() {
        if p != i {
            return Err(Error::Parse {
                line: 1,
                msg: format!("pattern vertices must be exactly 0..{}, missing {i}", pairs.len()),
            });
        }
    }
    Ok(Embedding::new(pairs.into_iter().map(|(_, h)| h).collect()))
}

pub fn write_embedding(e: &Embedding) -> String {
    let mut out = String::new();
    for (p, h) in e.image().iter().enumerate() {
        let _ = writeln!(out, "{p} {h}");
    }
    out
}
