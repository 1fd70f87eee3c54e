//! Construction of the random graphs under study: the complete binary tree
//! `T`, the uniform random leaf cycle `C`, their union `U_k`, the disjoint
//! union `G'` of independent `U_k` copies, and the parameter formulas that
//! pick `d`, `k`, `r`, `h` from `log n`.

use std::fmt::Write as _;

use num_bigint::BigUint;

use crate::error::{parse_err, Error, Result};
use crate::graph::{disjoint_union, EdgeSet, Graph};
use crate::rng::Rng;

/// Upper guard on construction depth; `2^{k+1}` vertices must stay sane.
const MAX_BUILD_K: u32 = 20;

/// Complete rooted binary tree in heap layout: vertex 0 is the root and the
/// children of `i` are `2i+1` and `2i+2`.
#[derive(Clone, Debug)]
pub struct TreeLayout {
    pub graph: Graph,
    pub root: usize,
    /// Leaf ids `2^k - 1 ..= 2^{k+1} - 2` in increasing order.
    pub leaves: Vec<usize>,
}

pub fn tree_vertex_count(k: u32) -> usize {
    (1usize << (k + 1)) - 1
}

pub fn tree_edge_list(k: u32) -> Vec<(usize, usize)> {
    let n = tree_vertex_count(k);
    let mut edges = Vec::with_capacity(n - 1);
    for child in 1..n {
        edges.push(((child - 1) / 2, child));
    }
    edges
}

pub fn build_tree(k: u32) -> Result<TreeLayout> {
    if k < 1 {
        return Err(Error::InvalidParameter("tree depth k must be >= 1".into()));
    }
    if k > MAX_BUILD_K {
        return Err(Error::InvalidParameter(format!(
            "tree depth k = {k} exceeds the construction limit {MAX_BUILD_K}"
        )));
    }
    let n = tree_vertex_count(k);
    let graph = Graph::build(n, &tree_edge_list(k))?;
    let leaves: Vec<usize> = ((1 << k) - 1..n).collect();
    Ok(TreeLayout {
        graph,
        root: 0,
        leaves,
    })
}

/// Cycle through `first, rest[0], rest[1], ..., rest[m-2], first`.
pub fn cycle_from_ordering(first: usize, rest: &[usize]) -> EdgeSet {
    let mut order = Vec::with_capacity(rest.len() + 1);
    order.push(first);
    order.extend_from_slice(rest);
    let mut edges = EdgeSet::new();
    for i in 0..order.len() {
        edges.insert(order[i], order[(i + 1) % order.len()]);
    }
    edges
}

/// Uniform random spanning cycle on `leaves`, generated sequentially: the
/// first leaf is fixed and the remaining ones are drawn uniformly without
/// replacement, each draw a single unbiased index pick from the shrinking
/// candidate list.
pub fn sequential_leaf_cycle(leaves: &[usize], rng: &mut Rng) -> Result<EdgeSet> {
    if leaves.len() < 3 {
        return Err(Error::InvalidParameter(format!(
            "a spanning cycle needs at least 3 vertices, got {}",
            leaves.len()
        )));
    }
    let mut pool: Vec<usize> = leaves[1..].to_vec();
    let mut rest = Vec::with_capacity(pool.len());
    while !pool.is_empty() {
        let j = rng.below(pool.len() as u64) as usize;
        rest.push(pool.swap_remove(j));
    }
    Ok(cycle_from_ordering(leaves[0], &rest))
}

/// A realization of `U_k`: complete binary tree of depth `k` plus a spanning
/// cycle on its `2^k` leaves.
#[derive(Clone, Debug)]
pub struct UkGraph {
    graph: Graph,
    k: u32,
    root: usize,
    leaves: Vec<usize>,
    tree_edges: EdgeSet,
    cycle_edges: EdgeSet,
}

impl UkGraph {
    /// Builds a fresh realization. `k >= 2` because a cycle on two leaves
    /// would be a multi-edge.
    pub fn build(k: u32, rng: &mut Rng) -> Result<UkGraph> {
        if k < 2 {
            return Err(Error::InvalidParameter(
                "U_k needs k >= 2 (a 2-leaf cycle is a multi-edge)".into(),
            ));
        }
        let tree = build_tree(k)?;
        let cycle_edges = sequential_leaf_cycle(&tree.leaves, rng)?;
        let tree_edges = tree.graph.edge_set();
        let all: Vec<(usize, usize)> = tree_edges.union(&cycle_edges).iter().collect();
        let graph = Graph::build(tree.graph.num_vertices(), &all)?;
        let uk = UkGraph {
            graph,
            k,
            root: tree.root,
            leaves: tree.leaves,
            tree_edges,
            cycle_edges,
        };
        uk.validate()?;
        Ok(uk)
    }

    /// Reconstructs a `U_k` from a plain graph in heap layout, as written by
    /// the generator: tree edges `{(i-1)/2, i}`, cycle edges among the
    /// leaves. Validates every structural invariant.
    pub fn from_heap_graph(graph: Graph) -> Result<UkGraph> {
        let n = graph.num_vertices();
        let k = match (1..=MAX_BUILD_K).find(|&k| tree_vertex_count(k) == n) {
            Some(k) if k >= 2 => k,
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "graph on {n} vertices is not a U_k: need 2^(k+1) - 1 vertices with k >= 2"
                )))
            }
        };
        let tree_edges: EdgeSet = tree_edge_list(k).into_iter().collect();
        let leaves: Vec<usize> = ((1 << k) - 1..n).collect();
        let cycle_edges = graph.edge_set().difference(&tree_edges);
        let uk = UkGraph {
            graph,
            k,
            root: 0,
            leaves,
            tree_edges,
            cycle_edges,
        };
        uk.validate()?;
        Ok(uk)
    }

    /// Checks every structural invariant; used by the parsers and tests.
    pub fn validate(&self) -> Result<()> {
        let k = self.k;
        let n = tree_vertex_count(k);
        let m = 1usize << k;
        let fail = |msg: String| Err(Error::InvalidParameter(msg));

        if self.graph.num_vertices() != n {
            return fail(format!("U_{k} must have {n} vertices"));
        }
        if self.tree_edges.len() != n - 1 {
            return fail(format!("U_{k} must have {} tree edges", n - 1));
        }
        if self.cycle_edges.len() != m {
            return fail(format!("U_{k} must have {m} cycle edges"));
        }
        if !self.tree_edges.is_disjoint(&self.cycle_edges) {
            return fail("tree and cycle edges overlap".into());
        }
        let expected_edges = self.tree_edges.union(&self.cycle_edges);
        if self.graph.edge_set() != expected_edges {
            return fail("graph edge set is not tree ∪ cycle".into());
        }
        for &(u, v) in tree_edge_list(k).iter() {
            if !self.tree_edges.contains(u, v) {
                return fail(format!("missing heap tree edge ({u}, {v})"));
            }
        }
        if self.root != 0 {
            return fail("heap root must be vertex 0".into());
        }
        if self.leaves != ((m - 1)..n).collect::<Vec<_>>() {
            return fail("leaf ids must be the last 2^k heap positions".into());
        }
        // Degrees: root 2, everything else 3.
        for v in 0..n {
            let want = if v == self.root { 2 } else { 3 };
            if self.graph.degree(v) != want {
                return fail(format!(
                    "vertex {v} has degree {}, expected {want}",
                    self.graph.degree(v)
                ));
            }
        }
        // Cycle edges must form one cycle spanning exactly the leaf set:
        // every cycle edge joins two leaves, every leaf has cycle-degree 2,
        // and the cycle is connected.
        let leaf_start = m - 1;
        let mut cycle_deg = vec![0usize; n];
        for (u, v) in self.cycle_edges.iter() {
            if u < leaf_start || v < leaf_start {
                return fail(format!("cycle edge ({u}, {v}) touches a non-leaf"));
            }
            cycle_deg[u] += 1;
            cycle_deg[v] += 1;
        }
        if self.leaves.iter().any(|&l| cycle_deg[l] != 2) {
            return fail("every leaf must have exactly 2 cycle edges".into());
        }
        let cycle_graph = Graph::build(
            n,
            &self.cycle_edges.iter().collect::<Vec<_>>(),
        )?;
        let mut seen = vec![false; n];
        let mut stack = vec![self.leaves[0]];
        seen[self.leaves[0]] = true;
        let mut visited = 0usize;
        while let Some(v) = stack.pop() {
            visited += 1;
            for &w in cycle_graph.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if visited != m {
            return fail("leaf cycle is not a single connected cycle".into());
        }
        Ok(())
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn leaves(&self) -> &[usize] {
        &self.leaves
    }

    pub fn tree_edges(&self) -> &EdgeSet {
        &self.tree_edges
    }

    pub fn cycle_edges(&self) -> &EdgeSet {
        &self.cycle_edges
    }
}

/// Assembles a `U_k` from a given leaf-cycle edge set (heap-local ids).
///
/// Useful for tests and enumeration code that sweep the whole cycle space;
/// validates all invariants, so a non-cycle edge set is rejected.
pub fn uk_from_cycle(k: u32, cycle_edges: &EdgeSet) -> Result<UkGraph> {
    let tree = build_tree(k)?;
    let mut edges = tree_edge_list(k);
    edges.extend(cycle_edges.iter());
    let graph = Graph::build(tree.graph.num_vertices(), &edges)?;
    UkGraph::from_heap_graph(graph)
}

/// `G'`: disjoint union of `h` independent `U_k` realizations, padded with
/// isolated vertices to exactly `n` vertices.
#[derive(Clone, Debug)]
pub struct GPrime {
    graph: Graph,
    k: u32,
    h: usize,
    /// Component `i` in local ids; global id = `offsets[i] + local`.
    components: Vec<UkGraph>,
    offsets: Vec<usize>,
    /// Global root ids, one per component.
    roots: Vec<usize>,
    /// Isolated padding vertex ids (a suffix of the id range).
    padding: Vec<usize>,
    seed: u64,
}

impl GPrime {
    /// Builds `G'` with `h = floor(n / 2^{k+1})` components, each from an
    /// independent stream split off `seed` by component index.
    pub fn build(n: usize, k: u32, seed: u64) -> Result<GPrime> {
        if k < 2 {
            return Err(Error::InvalidParameter("G' needs k >= 2".into()));
        }
        if k > MAX_BUILD_K {
            return Err(Error::InvalidParameter(format!(
                "k = {k} exceeds the construction limit {MAX_BUILD_K}"
            )));
        }
        let h = n >> (k + 1);
        if h == 0 {
            return Err(Error::InvalidParameter(format!(
                "n = {n} is too small for even one component: floor(n / 2^{}) = 0",
                k + 1
            )));
        }
        let master = Rng::new(seed);
        let components: Vec<UkGraph> = (0..h)
            .map(|i| UkGraph::build(k, &mut master.split(i as u64)))
            .collect::<Result<_>>()?;
        Self::assemble(n, k, h, components, seed)
    }

    fn assemble(
        n: usize,
        k: u32,
        h: usize,
        components: Vec<UkGraph>,
        seed: u64,
    ) -> Result<GPrime> {
        let part_size = tree_vertex_count(k);
        debug_assert!(h * part_size <= n);
        let union = disjoint_union(
            &components
                .iter()
                .map(|c| c.graph().clone())
                .collect::<Vec<_>>(),
        );
        let offsets = union.offsets.clone();
        let roots: Vec<usize> = components
            .iter()
            .zip(&offsets)
            .map(|(c, off)| off + c.root())
            .collect();
        let padding: Vec<usize> = (h * part_size..n).collect();
        // Re-host the union edges on the full padded vertex range.
        let edges: Vec<(usize, usize)> = union.graph.edges().collect();
        let graph = Graph::build(n, &edges)?;
        Ok(GPrime {
            graph,
            k,
            h,
            components,
            offsets,
            roots,
            padding,
            seed,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.num_vertices()
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Component `i` as a standalone `U_k` on local ids `0..2^{k+1}-1`.
    pub fn component(&self, i: usize) -> &UkGraph {
        &self.components[i]
    }

    pub fn component_offset(&self, i: usize) -> usize {
        self.offsets[i]
    }

    pub fn component_vertex_count(&self) -> usize {
        tree_vertex_count(self.k)
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn padding(&self) -> &[usize] {
        &self.padding
    }

    /// Bundle text form: header, root table, then all edges in canonical
    /// order (component `i` occupies the id range starting at `offsets[i]`).
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "gprime {} {} {} {}",
            self.n(),
            self.k,
            self.h,
            self.seed
        )
        .unwrap();
        for (i, root) in self.roots.iter().enumerate() {
            writeln!(out, "root {i} {root}").unwrap();
        }
        for (u, v) in self.graph.edges() {
            writeln!(out, "e {u} {v}").unwrap();
        }
        out
    }

    /// Parses and fully validates a bundle: component id ranges, heap-layout
    /// roots, per-component `U_k` invariants, isolated padding, no edges
    /// across components.
    pub fn parse(text: &str) -> Result<GPrime> {
        let mut header: Option<(usize, u32, usize, u64)> = None;
        let mut roots: Vec<(usize, usize)> = Vec::new();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            match tokens.next() {
                Some("gprime") => {
                    if header.is_some() {
                        return Err(parse_err(line_no, "duplicate gprime header"));
                    }
                    let fields: Vec<&str> = tokens.collect();
                    if fields.len() != 4 {
                        return Err(parse_err(line_no, "header needs: gprime n k h seed"));
                    }
                    let n = fields[0]
                        .parse()
                        .map_err(|_| parse_err(line_no, "bad n"))?;
                    let k = fields[1]
                        .parse()
                        .map_err(|_| parse_err(line_no, "bad k"))?;
                    let h = fields[2]
                        .parse()
                        .map_err(|_| parse_err(line_no, "bad h"))?;
                    let seed = fields[3]
                        .parse()
                        .map_err(|_| parse_err(line_no, "bad seed"))?;
                    header = Some((n, k, h, seed));
                }
                Some("root") => {
                    let fields: Vec<&str> = tokens.collect();
                    if fields.len() != 2 {
                        return Err(parse_err(line_no, "root line needs: root i vertex"));
                    }
                    let i = fields[0]
                        .parse()
                        .map_err(|_| parse_err(line_no, "bad component index"))?;
                    let v = fields[1]
                        .parse()
                        .map_err(|_| parse_err(line_no, "bad root vertex"))?;
                    roots.push((i, v));
                }
                Some("e") => {
                    let edge = crate::graph::parse_edge_tokens(&mut tokens, line_no)?;
                    if tokens.next().is_some() {
                        return Err(parse_err(line_no, "trailing tokens after edge"));
                    }
                    edges.push(edge);
                }
                Some(other) => {
                    return Err(parse_err(line_no, format!("unknown line type '{other}'")));
                }
                None => unreachable!(),
            }
        }
        let (n, k, h, seed) =
            header.ok_or_else(|| parse_err(1, "missing gprime header"))?;
        if !(2..=MAX_BUILD_K).contains(&k) {
            return Err(Error::InvalidParameter(format!("bad depth k = {k}")));
        }
        let part_size = tree_vertex_count(k);
        if h == 0 || h * part_size > n {
            return Err(Error::InvalidParameter(format!(
                "{h} components of {part_size} vertices do not fit in n = {n}"
            )));
        }
        if roots.len() != h {
            return Err(Error::InvalidParameter(format!(
                "expected {h} root lines, found {}",
                roots.len()
            )));
        }
        for (idx, &(i, v)) in roots.iter().enumerate() {
            if i != idx {
                return Err(Error::InvalidParameter(format!(
                    "root lines out of order at component {i}"
                )));
            }
            if v != i * part_size {
                return Err(Error::InvalidParameter(format!(
                    "component {i} root must be its heap base {} but is {v}",
                    i * part_size
                )));
            }
        }
        // Split edges by component range; reject duplicates and edges that
        // cross ranges or touch padding.
        let mut seen = std::collections::BTreeSet::new();
        let mut per_component: Vec<Vec<(usize, usize)>> = vec![Vec::new(); h];
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::InvalidVertex {
                    vertex: u.max(v),
                    num_vertices: n,
                });
            }
            if !seen.insert((u, v)) {
                return Err(Error::InvalidParameter(format!(
                    "duplicate edge ({u}, {v}) in bundle"
                )));
            }
            let cu = u / part_size;
            let cv = v / part_size;
            if cu != cv || cu >= h {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) is not inside a single component range"
                )));
            }
            per_component[cu].push((u - cu * part_size, v - cv * part_size));
        }
        let components: Vec<UkGraph> = per_component
            .into_iter()
            .map(|local_edges| {
                UkGraph::from_heap_graph(Graph::build(part_size, &local_edges)?)
            })
            .collect::<Result<_>>()?;
        let gp = Self::assemble(n, k, h, components, seed)?;
        Ok(gp)
    }
}

/// How `h` is reported by [`params_from_log_n`]: exact once it fits, otherwise
/// only its natural log (the floor is then not applied).
#[derive(Clone, Debug, PartialEq)]
pub enum HCount {
    Exact(BigUint),
    Log { ln_h: f64 },
}

/// The parameter tuple chosen from `log n`.
#[derive(Clone, Debug)]
pub struct Params {
    pub log_n: f64,
    pub d: u64,
    pub k: u32,
    /// `r = d * d^{k+1}`, exact.
    pub r: BigUint,
    pub h: HCount,
    /// Whether the required `r <= h` holds at this `log_n` (it fails for
    /// small regimes; surfaced as a flag rather than an error).
    pub r_le_h: bool,
}

/// Smallest `log n` with `d >= 2`, i.e. `(100 ln 2)^2`. This is the binding
/// validity threshold: `k >= 2` already holds from `log n >= 400`.
pub fn min_log_n_for_d2() -> f64 {
    let t = 100.0 * std::f64::consts::LN_2;
    t * t
}

/// Evaluates the parameter formulas
/// `d = floor(exp(sqrt(log n)/100))`, `k = floor(sqrt(log n)/10)`,
/// `r = d * d^{k+1}`, `h = floor(2^{-k-1} n)`; natural logs throughout.
pub fn params_from_log_n(log_n: f64) -> Result<Params> {
    if log_n.is_nan() || log_n <= 0.0 {
        return Err(Error::InvalidParameter("log n must be positive".into()));
    }
    let s = log_n.sqrt();
    let d = (s / 100.0).exp().floor();
    let k = (s / 10.0).floor();
    if d < 2.0 || k < 2.0 {
        return Err(Error::RegimeTooSmall {
            log_n,
            min_log_n: min_log_n_for_d2(),
        });
    }
    if d >= 2.0f64.powi(63) {
        return Err(Error::InvalidParameter(format!(
            "log n = {log_n} gives d beyond the 64-bit range"
        )));
    }
    let d = d as u64;
    let k = k as u32;
    let r = BigUint::from(d).pow(k + 2);
    let ln_h = log_n - f64::from(k + 1) * std::f64::consts::LN_2;
    // Exact h only when n itself is exactly representable; in the valid
    // regime (log n > 4804) this never happens and we report the log.
    let h = if ln_h < 63.0 * std::f64::consts::LN_2 {
        HCount::Exact(BigUint::from(ln_h.exp().floor() as u64))
    } else {
        HCount::Log { ln_h }
    };
    let ln_r = f64::from(k + 2) * (d as f64).ln();
    let r_le_h = match &h {
        HCount::Exact(h) => &r <= h,
        HCount::Log { ln_h } => ln_r <= *ln_h,
    };
    Ok(Params {
        log_n,
        d,
        k,
        r,
        h,
        r_le_h,
    })
}
