//! Line-oriented instance files.
//!
//! ```text
//! c any comment
//! p ncd <n> <m>        directed instance (ncm: mixed)
//! a <u> <v> <w>        arc, 1-based ids
//! e <u> <v> <w>        undirected edge, mixed instances only
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{normalize, WeightedDigraph, MAX_ABS_WEIGHT};
use crate::mixed::{mixed_to_digraph, MixedInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceKind {
    Directed,
    Mixed,
}

impl InstanceKind {
    fn tag(self) -> &'static str {
        match self {
            InstanceKind::Directed => "ncd",
            InstanceKind::Mixed => "ncm",
        }
    }
}

/// Parsed file with 0-based ids, in file order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub kind: InstanceKind,
    pub n: usize,
    pub arcs: Vec<(usize, usize, i64)>,
    pub edges: Vec<(usize, usize, i64)>,
    pub comments: Vec<String>,
}

impl Instance {
    pub fn directed(n: usize, arcs: Vec<(usize, usize, i64)>) -> Self {
        Instance { kind: InstanceKind::Directed, n, arcs, edges: Vec::new(), comments: Vec::new() }
    }

    pub fn is_mixed(&self) -> bool {
        self.kind == InstanceKind::Mixed
    }

    pub fn to_mixed(&self) -> MixedInstance {
        MixedInstance { n: self.n, arcs: self.arcs.clone(), edges: self.edges.clone() }
    }

    /// Normalized digraph; edges of a mixed instance become opposite arcs.
    pub fn digraph(&self) -> Result<WeightedDigraph> {
        match self.kind {
            InstanceKind::Directed => normalize(self.n, &self.arcs),
            InstanceKind::Mixed => mixed_to_digraph(&self.to_mixed()),
        }
    }
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| Error::malformed(Some(line), format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| Error::malformed(Some(line), format!("bad {what} `{tok}`")))
}

pub fn parse(text: &str) -> Result<Instance> {
    let mut header: Option<(InstanceKind, usize, usize)> = None;
    let mut arcs = Vec::new();
    let mut edges = Vec::new();
    let mut comments = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() {
            continue;
        }
        let mut toks = body.split_whitespace();
        let tag = toks.next().unwrap();
        match tag {
            "c" => {
                comments.push(body[1..].strip_prefix(' ').unwrap_or(&body[1..]).to_string());
                continue;
            }
            "p" => {
                if header.is_some() {
                    return Err(Error::malformed(Some(line), "second problem line"));
                }
                let kind = match toks.next() {
                    Some("ncd") => InstanceKind::Directed,
                    Some("ncm") => InstanceKind::Mixed,
                    other => {
                        return Err(Error::malformed(Some(line), format!("unknown problem kind {other:?}")))
                    }
                };
                let n = field(toks.next(), line, "vertex count")?;
                let m = field(toks.next(), line, "line count")?;
                if n > crate::graph::MAX_VERTICES {
                    return Err(Error::malformed(Some(line), format!("{n} vertices exceeds the supported maximum")));
                }
                header = Some((kind, n, m));
            }
            "a" | "e" => {
                let (kind, n, _) =
                    header.ok_or_else(|| Error::malformed(Some(line), "arc before the problem line"))?;
                if tag == "e" && kind != InstanceKind::Mixed {
                    return Err(Error::malformed(Some(line), "undirected edge in a directed instance"));
                }
                let u: usize = field(toks.next(), line, "tail")?;
                let v: usize = field(toks.next(), line, "head")?;
                let w: i64 = field(toks.next(), line, "weight")?;
                for id in [u, v] {
                    if id == 0 || id > n {
                        return Err(Error::malformed(Some(line), format!("vertex {id} outside 1..{n}")));
                    }
                }
                if w.unsigned_abs() > MAX_ABS_WEIGHT as u64 {
                    return Err(Error::malformed(Some(line), format!("weight {w} exceeds 2^40 in absolute value")));
                }
                let rec = (u - 1, v - 1, w);
                if tag == "a" {
                    arcs.push(rec);
                } else {
                    edges.push(rec);
                }
            }
            other => return Err(Error::malformed(Some(line), format!("unknown line type `{other}`"))),
        }
        if toks.next().is_some() {
            return Err(Error::malformed(Some(line), "trailing fields"));
        }
    }
    let (kind, n, m) = header.ok_or_else(|| Error::malformed(None, "missing problem line"))?;
    if arcs.len() + edges.len() != m {
        return Err(Error::malformed(
            None,
            format!("header announces {m} arcs and edges, found {}", arcs.len() + edges.len()),
        ));
    }
    Ok(Instance { kind, n, arcs, edges, comments })
}

/// Comments, problem line, arcs, then edges.
pub fn emit(inst: &Instance) -> String {
    let mut out = String::new();
    for c in &inst.comments {
        if c.is_empty() {
            out.push_str("c\n");
        } else {
            let _ = writeln!(out, "c {c}");
        }
    }
    let _ = writeln!(out, "p {} {} {}", inst.kind.tag(), inst.n, inst.arcs.len() + inst.edges.len());
    for &(u, v, w) in &inst.arcs {
        let _ = writeln!(out, "a {} {} {}", u + 1, v + 1, w);
    }
    for &(u, v, w) in &inst.edges {
        let _ = writeln!(out, "e {} {} {}", u + 1, v + 1, w);
    }
    out
}
