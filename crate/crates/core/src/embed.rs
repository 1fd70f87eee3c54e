//! Backtracking search for rooted embeddings of `U_k` (and its bare tree)
//! into bounded-degree hosts, plus the brute-force disjoint packing check
//! for `G'`.
//!
//! Patterns are heap-labeled: vertex 0 is the root and every vertex `u >= 1`
//! is adjacent to its parent `(u-1)/2`. Assignment proceeds in heap order,
//! so the tree is placed top-down and cycle edges close as the second leaf
//! of each cycle edge is reached. Candidates are the host neighbors of the
//! parent's image, pruned by host degree < pattern degree and by edge
//! consistency with all earlier assignments.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::construct::{build_tree, GPrime, UkGraph};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Set of host vertices admitting a rooted embedding.
pub type RootSet = BTreeSet<usize>;

/// An injective, edge-preserving map from pattern vertex ids to host ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    map: Vec<usize>,
}

impl Embedding {
    pub fn new(map: Vec<usize>) -> Embedding {
        Embedding { map }
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn image_of(&self, pattern_vertex: usize) -> usize {
        self.map[pattern_vertex]
    }

    /// Re-validates injectivity and edge preservation against the pattern
    /// and host.
    pub fn validate(&self, pattern: &Graph, host: &Graph) -> Result<()> {
        if self.map.len() != pattern.num_vertices() {
            return Err(Error::InvalidParameter(format!(
                "embedding maps {} vertices but the pattern has {}",
                self.map.len(),
                pattern.num_vertices()
            )));
        }
        let mut seen = vec![false; host.num_vertices()];
        for &img in &self.map {
            host.check_vertex(img)?;
            if seen[img] {
                return Err(Error::InvalidParameter(format!(
                    "embedding is not injective at host vertex {img}"
                )));
            }
            seen[img] = true;
        }
        for (u, v) in pattern.edges() {
            if !host.has_edge(self.map[u], self.map[v]) {
                return Err(Error::InvalidParameter(format!(
                    "pattern edge ({u}, {v}) maps to the non-edge ({}, {})",
                    self.map[u], self.map[v]
                )));
            }
        }
        Ok(())
    }

    /// `map <pattern_id> <host_id>` lines, one per pattern vertex.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (p, h) in self.map.iter().enumerate() {
            out.push_str(&format!("map {p} {h}\n"));
        }
        out
    }
}

/// Backtracking driver over a heap-labeled pattern. `visit` sees each
/// complete assignment and returns true to stop the search.
fn search_heap_pattern<F>(
    host: &Graph,
    pattern: &Graph,
    root_image: usize,
    used: &mut Vec<bool>,
    assignment: &mut Vec<usize>,
    visit: &mut F,
) -> bool
where
    F: FnMut(&[usize]) -> bool,
{
    debug_assert!(assignment.is_empty());
    if used[root_image] || host.degree(root_image) < pattern.degree(0) {
        return false;
    }
    assignment.push(root_image);
    used[root_image] = true;
    let stopped = extend(host, pattern, used, assignment, visit);
    used[root_image] = false;
    assignment.pop();
    stopped
}

fn extend<F>(
    host: &Graph,
    pattern: &Graph,
    used: &mut Vec<bool>,
    assignment: &mut Vec<usize>,
    visit: &mut F,
) -> bool
where
    F: FnMut(&[usize]) -> bool,
{
    let pos = assignment.len();
    if pos == pattern.num_vertices() {
        return visit(assignment);
    }
    let anchor_image = assignment[(pos - 1) / 2];
    for &w in host.neighbors(anchor_image) {
        if used[w] || host.degree(w) < pattern.degree(pos) {
            continue;
        }
        if pattern
            .neighbors(pos)
            .iter()
            .any(|&p| p < pos && !host.has_edge(assignment[p], w))
        {
            continue;
        }
        assignment.push(w);
        used[w] = true;
        let stopped = extend(host, pattern, used, assignment, visit);
        used[w] = false;
        assignment.pop();
        if stopped {
            return true;
        }
    }
    false
}

/// Finds one embedding of `pattern` into `host` with the root mapped to `v`,
/// or proves none exists (the search is exact).
pub fn rooted_embedding(host: &Graph, pattern: &UkGraph, v: usize) -> Result<Option<Embedding>> {
    host.check_vertex(v)?;
    let mut found: Option<Embedding> = None;
    let mut used = vec![false; host.num_vertices()];
    let mut assignment = Vec::with_capacity(pattern.graph().num_vertices());
    search_heap_pattern(
        host,
        pattern.graph(),
        v,
        &mut used,
        &mut assignment,
        &mut |map| {
            found = Some(Embedding::new(map.to_vec()));
            true
        },
    );
    if let Some(witness) = &found {
        debug_assert!(witness.validate(pattern.graph(), host).is_ok());
        debug_assert_eq!(witness.image_of(pattern.root()), v);
    }
    Ok(found)
}

pub fn rooted_embedding_exists(host: &Graph, pattern: &UkGraph, v: usize) -> Result<bool> {
    Ok(rooted_embedding(host, pattern, v)?.is_some())
}

/// Existence check against a raw heap-labeled pattern graph. Used by the
/// enumeration and Monte Carlo paths, which assemble candidate patterns
/// directly instead of going through a validated `UkGraph`.
pub(crate) fn rooted_pattern_exists(host: &Graph, pattern: &Graph, v: usize) -> bool {
    debug_assert!(v < host.num_vertices());
    let mut used = vec![false; host.num_vertices()];
    let mut assignment = Vec::with_capacity(pattern.num_vertices());
    search_heap_pattern(host, pattern, v, &mut used, &mut assignment, &mut |_| true)
}

/// All host vertices at which `pattern` admits a rooted embedding.
pub fn root_candidates(host: &Graph, pattern: &UkGraph) -> RootSet {
    (0..host.num_vertices())
        .filter(|&v| rooted_embedding(host, pattern, v).expect("v in range").is_some())
        .collect()
}

/// Exact count of embeddings of the depth-`k` complete binary tree with the
/// root mapped to `v`. Children are ordered, so sibling swaps count.
pub fn count_tree_embeddings(host: &Graph, k: u32, v: usize) -> Result<BigUint> {
    host.check_vertex(v)?;
    let tree = build_tree(k)?;
    let mut count: u128 = 0;
    let mut used = vec![false; host.num_vertices()];
    let mut assignment = Vec::with_capacity(tree.graph.num_vertices());
    search_heap_pattern(host, &tree.graph, v, &mut used, &mut assignment, &mut |_| {
        count += 1;
        false
    });
    Ok(BigUint::from(count))
}

/// Visits every embedding of the depth-`k` tree rooted at `v`; the visitor
/// returns true to stop early.
pub fn for_each_tree_embedding<F>(host: &Graph, k: u32, v: usize, mut visit: F) -> Result<()>
where
    F: FnMut(&[usize]) -> bool,
{
    host.check_vertex(v)?;
    let tree = build_tree(k)?;
    let mut used = vec![false; host.num_vertices()];
    let mut assignment = Vec::with_capacity(tree.graph.num_vertices());
    search_heap_pattern(host, &tree.graph, v, &mut used, &mut assignment, &mut |map| {
        visit(map)
    });
    Ok(())
}

/// Indices `i` such that component `i` of `gprime` embeds into `host` with
/// its root mapped to `v`.
pub fn shared_root_indices(host: &Graph, v: usize, gprime: &GPrime) -> Result<BTreeSet<usize>> {
    host.check_vertex(v)?;
    let mut indices = BTreeSet::new();
    for i in 0..gprime.h() {
        if rooted_embedding_exists(host, gprime.component(i), v)? {
            indices.insert(i);
        }
    }
    Ok(indices)
}

const PACK_MAX_COMPONENTS: usize = 4;
const PACK_MAX_HOST: usize = 40;

/// Whether all `h` components of `gprime` embed into `host` pairwise
/// vertex-disjointly. Padding (isolated) vertices are ignored: they embed
/// anywhere and never constrain disjointness.
///
/// Brute force, intended for desk scale; inputs beyond `h = 4` or 40 host
/// vertices are refused unless `force` is set.
pub fn gprime_embeds(host: &Graph, gprime: &GPrime, force: bool) -> Result<bool> {
    if !force && (gprime.h() > PACK_MAX_COMPONENTS || host.num_vertices() > PACK_MAX_HOST) {
        return Err(Error::TooLarge(format!(
            "disjoint packing with h = {} into {} host vertices exceeds the desk-scale guard \
             (h <= {PACK_MAX_COMPONENTS}, host <= {PACK_MAX_HOST})",
            gprime.h(),
            host.num_vertices()
        )));
    }
    let component_size = gprime.component_vertex_count();
    if gprime.h() * component_size > host.num_vertices() {
        return Ok(false);
    }

    // Fail-first: place the component with the fewest root candidates first.
    let comps: Vec<&Graph> = (0..gprime.h()).map(|i| gprime.component(i).graph()).collect();
    let cands: Vec<Vec<usize>> = (0..gprime.h())
        .map(|i| root_candidates(host, gprime.component(i)).into_iter().collect())
        .collect();
    if cands.iter().any(Vec::is_empty) {
        return Ok(false);
    }
    let mut order: Vec<usize> = (0..gprime.h()).collect();
    order.sort_by_key(|&i| (cands[i].len(), i));

    let mut search = PackSearch {
        host,
        comps: order.iter().map(|&i| comps[i]).collect(),
        cands: order.iter().map(|&i| cands[i].clone()).collect(),
        used: vec![false; host.num_vertices()],
    };
    Ok(search.place(0))
}

struct PackSearch<'a> {
    host: &'a Graph,
    comps: Vec<&'a Graph>,
    cands: Vec<Vec<usize>>,
    used: Vec<bool>,
}

impl PackSearch<'_> {
    fn place(&mut self, idx: usize) -> bool {
        if idx == self.comps.len() {
            return true;
        }
        let candidates = self.cands[idx].clone();
        for v in candidates {
            if self.used[v] || self.host.degree(v) < self.comps[idx].degree(0) {
                continue;
            }
            let mut assignment = Vec::with_capacity(self.comps[idx].num_vertices());
            assignment.push(v);
            self.used[v] = true;
            let done = self.extend_component(idx, &mut assignment);
            self.used[v] = false;
            if done {
                return true;
            }
        }
        false
    }

    fn extend_component(&mut self, idx: usize, assignment: &mut Vec<usize>) -> bool {
        let host = self.host;
        let pattern = self.comps[idx];
        let pos = assignment.len();
        if pos == pattern.num_vertices() {
            return self.place(idx + 1);
        }
        let anchor_image = assignment[(pos - 1) / 2];
        for &w in host.neighbors(anchor_image) {
            if self.used[w] || host.degree(w) < pattern.degree(pos) {
                continue;
            }
            if pattern
                .neighbors(pos)
                .iter()
                .any(|&p| p < pos && !host.has_edge(assignment[p], w))
            {
                continue;
            }
            assignment.push(w);
            self.used[w] = true;
            let done = self.extend_component(idx, assignment);
            self.used[w] = false;
            assignment.pop();
            if done {
                return true;
            }
        }
        false
    }
}
