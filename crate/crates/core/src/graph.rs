//! Immutable simple undirected graphs with contiguous integer vertex ids,
//! plus the canonical edge-list text format.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{parse_err, Error, Result};

/// Set of unordered vertex pairs, stored canonically with `u < v`.
///
/// Comparisons are set-wise; iteration order is lexicographic, which is what
/// the text formats rely on for byte-identical output.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeSet {
    items: BTreeSet<(usize, usize)>,
}

impl EdgeSet {
    pub fn new() -> Self {
        EdgeSet::default()
    }

    /// Inserts `{u, v}` in canonical order. Returns false if already present.
    pub fn insert(&mut self, u: usize, v: usize) -> bool {
        assert_ne!(u, v, "EdgeSet cannot hold a self-loop");
        self.items.insert(canonical(u, v))
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        u != v && self.items.contains(&canonical(u, v))
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.items.iter().copied()
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet {
            items: self.items.union(&other.items).copied().collect(),
        }
    }

    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet {
            items: self.items.difference(&other.items).copied().collect(),
        }
    }

    pub fn intersection(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet {
            items: self.items.intersection(&other.items).copied().collect(),
        }
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.items.is_subset(&other.items)
    }

    pub fn is_disjoint(&self, other: &EdgeSet) -> bool {
        self.items.is_disjoint(&other.items)
    }
}

impl FromIterator<(usize, usize)> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        let mut set = EdgeSet::new();
        for (u, v) in iter {
            set.insert(u, v);
        }
        set
    }
}

#[inline]
fn canonical(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Immutable simple undirected graph.
///
/// Vertices are `0..num_vertices`; isolated vertices are first-class. Every
/// operation that "changes" a graph returns a new value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    num_vertices: usize,
    edges: BTreeSet<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list, deduplicating unordered pairs.
    pub fn build(num_vertices: usize, edge_list: &[(usize, usize)]) -> Result<Graph> {
        let mut edges = BTreeSet::new();
        for &(u, v) in edge_list {
            if u >= num_vertices {
                return Err(Error::InvalidVertex {
                    vertex: u,
                    num_vertices,
                });
            }
            if v >= num_vertices {
                return Err(Error::InvalidVertex {
                    vertex: v,
                    num_vertices,
                });
            }
            if u == v {
                return Err(Error::InvalidEdge(u));
            }
            edges.insert(canonical(u, v));
        }
        Ok(Graph::from_canonical_edges(num_vertices, edges))
    }

    pub fn edgeless(num_vertices: usize) -> Graph {
        Graph::from_canonical_edges(num_vertices, BTreeSet::new())
    }

    pub fn complete(num_vertices: usize) -> Graph {
        let mut edges = BTreeSet::new();
        for u in 0..num_vertices {
            for v in (u + 1)..num_vertices {
                edges.insert((u, v));
            }
        }
        Graph::from_canonical_edges(num_vertices, edges)
    }

    fn from_canonical_edges(num_vertices: usize, edges: BTreeSet<(usize, usize)>) -> Graph {
        let mut adj = vec![Vec::new(); num_vertices];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            num_vertices,
            edges,
            adj,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_set(&self) -> EdgeSet {
        EdgeSet {
            items: self.edges.clone(),
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.contains(&canonical(u, v))
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.adj[v].is_empty()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.num_vertices {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                num_vertices: self.num_vertices,
            })
        }
    }

    /// Same vertex set, edge set exactly `keep`.
    pub fn edge_subgraph(&self, keep: &EdgeSet) -> Result<Graph> {
        for (u, v) in keep.iter() {
            if !self.has_edge(u, v) {
                return Err(Error::ForeignEdge(u, v));
            }
        }
        Ok(Graph::from_canonical_edges(
            self.num_vertices,
            keep.items.clone(),
        ))
    }

    /// Canonical text form: header line, then one `e u v` line per edge in
    /// lexicographic order. LF endings, trailing newline.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        writeln!(out, "graph {}", self.num_vertices).unwrap();
        for &(u, v) in &self.edges {
            writeln!(out, "e {u} {v}").unwrap();
        }
        out
    }

    /// Parses the text form. Lines starting with `#` and blank lines are
    /// ignored; edge lines must be canonical (`u < v`) and unique.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut num_vertices: Option<usize> = None;
        let mut edges = BTreeSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            match tokens.next() {
                Some("graph") => {
                    if num_vertices.is_some() {
                        return Err(parse_err(line_no, "duplicate graph header"));
                    }
                    let n = tokens
                        .next()
                        .ok_or_else(|| parse_err(line_no, "missing vertex count"))?;
                    let n: usize = n
                        .parse()
                        .map_err(|_| parse_err(line_no, format!("bad vertex count '{n}'")))?;
                    if tokens.next().is_some() {
                        return Err(parse_err(line_no, "trailing tokens after header"));
                    }
                    num_vertices = Some(n);
                }
                Some("e") => {
                    let n = num_vertices
                        .ok_or_else(|| parse_err(line_no, "edge before graph header"))?;
                    let (u, v) = parse_edge_tokens(&mut tokens, line_no)?;
                    if tokens.next().is_some() {
                        return Err(parse_err(line_no, "trailing tokens after edge"));
                    }
                    if u >= n || v >= n {
                        return Err(parse_err(
                            line_no,
                            format!("vertex id out of range: {} >= {n}", u.max(v)),
                        ));
                    }
                    if !edges.insert((u, v)) {
                        return Err(parse_err(line_no, format!("duplicate edge ({u}, {v})")));
                    }
                }
                Some(other) => {
                    return Err(parse_err(line_no, format!("unknown line type '{other}'")));
                }
                None => unreachable!(),
            }
        }
        let n = num_vertices.ok_or_else(|| parse_err(1, "missing graph header"))?;
        Ok(Graph::from_canonical_edges(n, edges))
    }
}

pub(crate) fn parse_edge_tokens<'a>(
    tokens: &mut impl Iterator<Item = &'a str>,
    line_no: usize,
) -> Result<(usize, usize)> {
    let u = tokens
        .next()
        .ok_or_else(|| parse_err(line_no, "edge line needs two vertex ids"))?;
    let v = tokens
        .next()
        .ok_or_else(|| parse_err(line_no, "edge line needs two vertex ids"))?;
    let u: usize = u
        .parse()
        .map_err(|_| parse_err(line_no, format!("bad vertex id '{u}'")))?;
    let v: usize = v
        .parse()
        .map_err(|_| parse_err(line_no, format!("bad vertex id '{v}'")))?;
    if u == v {
        return Err(parse_err(line_no, format!("self-loop at {u}")));
    }
    if u > v {
        return Err(parse_err(
            line_no,
            format!("edge ({u}, {v}) not in canonical order (u < v)"),
        ));
    }
    Ok((u, v))
}

/// Disjoint union of graphs, with part `i` shifted by the total size of the
/// earlier parts.
#[derive(Clone, Debug)]
pub struct DisjointUnion {
    pub graph: Graph,
    pub offsets: Vec<usize>,
}

impl DisjointUnion {
    pub fn global_id(&self, part: usize, local: usize) -> usize {
        self.offsets[part] + local
    }
}

pub fn disjoint_union(parts: &[Graph]) -> DisjointUnion {
    let mut offsets = Vec::with_capacity(parts.len());
    let mut total = 0usize;
    for part in parts {
        offsets.push(total);
        total += part.num_vertices();
    }
    let mut edges = BTreeSet::new();
    for (part, offset) in parts.iter().zip(&offsets) {
        for (u, v) in part.edges() {
            edges.insert((u + offset, v + offset));
        }
    }
    DisjointUnion {
        graph: Graph::from_canonical_edges(total, edges),
        offsets,
    }
}
