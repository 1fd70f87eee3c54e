//! Independent oracles and shared host corpora for the integration tests.
//!
//! The oracles deliberately avoid every heuristic of the main search: no
//! degree pruning, no parent-anchored candidate lists, no fail-first
//! ordering. Each pattern vertex is tried against every unused host vertex
//! in id order, with edge consistency checked against all earlier
//! assignments.

#![allow(dead_code)]

use ramsey_core::{uk_from_cycle, EdgeSet, GPrime, Graph, Rng, UkGraph};

/// Naive rooted-embedding existence: pattern vertex 0 maps to `root_image`,
/// later vertices try every unused host vertex.
pub fn naive_rooted_exists(host: &Graph, pattern: &Graph, root_image: usize) -> bool {
    if root_image >= host.num_vertices() {
        return false;
    }
    let mut assignment = Vec::with_capacity(pattern.num_vertices());
    let mut used = vec![false; host.num_vertices()];
    assignment.push(root_image);
    used[root_image] = true;
    naive_extend(host, pattern, &mut assignment, &mut used, &mut |_| true)
}

/// Naive count of complete embeddings of the pattern rooted at `root_image`.
pub fn naive_count_rooted(host: &Graph, pattern: &Graph, root_image: usize) -> u128 {
    if root_image >= host.num_vertices() {
        return 0;
    }
    let mut assignment = Vec::with_capacity(pattern.num_vertices());
    let mut used = vec![false; host.num_vertices()];
    assignment.push(root_image);
    used[root_image] = true;
    let mut count: u128 = 0;
    naive_extend(host, pattern, &mut assignment, &mut used, &mut |_| {
        count += 1;
        false
    });
    count
}

fn naive_extend(
    host: &Graph,
    pattern: &Graph,
    assignment: &mut Vec<usize>,
    used: &mut Vec<bool>,
    on_complete: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    let pos = assignment.len();
    if pos == pattern.num_vertices() {
        return on_complete(assignment);
    }
    'candidates: for w in 0..host.num_vertices() {
        if used[w] {
            continue;
        }
        for &p in pattern.neighbors(pos) {
            if p < pos && !host.has_edge(assignment[p], w) {
                continue 'candidates;
            }
        }
        assignment.push(w);
        used[w] = true;
        let stop = naive_extend(host, pattern, assignment, used, on_complete);
        used[w] = false;
        assignment.pop();
        if stop {
            return true;
        }
    }
    false
}

/// Naive disjoint-packing oracle: components in fixed index order, each
/// component's root tried at every unused host vertex.
pub fn naive_gprime_embeds(host: &Graph, gp: &GPrime) -> bool {
    let mut pack = NaivePack {
        host,
        gp,
        used: vec![false; host.num_vertices()],
    };
    pack.place(0)
}

struct NaivePack<'a> {
    host: &'a Graph,
    gp: &'a GPrime,
    used: Vec<bool>,
}

impl NaivePack<'_> {
    fn place(&mut self, comp: usize) -> bool {
        if comp == self.gp.h() {
            return true;
        }
        let mut assignment = Vec::new();
        self.extend(comp, &mut assignment)
    }

    fn extend(&mut self, comp: usize, assignment: &mut Vec<usize>) -> bool {
        let host = self.host;
        let pattern = self.gp.component(comp).graph();
        let pos = assignment.len();
        if pos == pattern.num_vertices() {
            return self.place(comp + 1);
        }
        'candidates: for w in 0..host.num_vertices() {
            if self.used[w] {
                continue;
            }
            for &p in pattern.neighbors(pos) {
                if p < pos && !host.has_edge(assignment[p], w) {
                    continue 'candidates;
                }
            }
            assignment.push(w);
            self.used[w] = true;
            let done = self.extend(comp, assignment);
            self.used[w] = false;
            assignment.pop();
            if done {
                return true;
            }
        }
        false
    }
}

/// U_2 whose leaf cycle is 3-5-4-6-3: the sibling pairs are the diagonals,
/// so exactly 1 of the 3 cycles embeds at the root (probability 1/3).
pub fn sibling_diagonal_u2() -> UkGraph {
    let cycle: EdgeSet = [(3, 5), (4, 5), (4, 6), (3, 6)].into_iter().collect();
    uk_from_cycle(2, &cycle).unwrap()
}

/// U_2 whose leaf cycle is 3-4-5-6-3: mixed diagonals, 2 of 3 cycles embed
/// at the root (probability 2/3).
pub fn mixed_diagonal_u2() -> UkGraph {
    let cycle: EdgeSet = [(3, 4), (4, 5), (5, 6), (3, 6)].into_iter().collect();
    uk_from_cycle(2, &cycle).unwrap()
}

pub fn path(n: usize) -> Graph {
    Graph::build(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((0, n - 1));
    Graph::build(n, &edges).unwrap()
}

pub fn petersen() -> Graph {
    Graph::build(
        10,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (0, 4),
            (0, 5),
            (1, 6),
            (2, 7),
            (3, 8),
            (4, 9),
            (5, 7),
            (7, 9),
            (6, 9),
            (6, 8),
            (5, 8),
        ],
    )
    .unwrap()
}

/// 3-regular cube graph on 8 vertices.
pub fn cube() -> Graph {
    Graph::build(
        8,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (0, 3),
            (4, 5),
            (5, 6),
            (6, 7),
            (4, 7),
            (0, 4),
            (1, 5),
            (2, 6),
            (3, 7),
        ],
    )
    .unwrap()
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in 0..b {
            edges.push((u, a + v));
        }
    }
    Graph::build(a + b, &edges).unwrap()
}

pub fn fresh_u2(seed: u64) -> UkGraph {
    UkGraph::build(2, &mut Rng::new(seed)).unwrap()
}

/// Hosts with max degree <= 4 and at most 14 vertices, for the extension
/// claim suite. At least 20 entries, mixing hosts that admit many tree
/// embeddings with degenerate ones.
pub fn bounded_degree_corpus() -> Vec<(String, Graph)> {
    let mut hosts: Vec<(String, Graph)> = Vec::new();
    for seed in [1u64, 2, 3] {
        hosts.push((format!("u2-seed{seed}"), fresh_u2(seed).graph().clone()));
    }
    hosts.push(("u2-sibling-diag".into(), sibling_diagonal_u2().graph().clone()));
    hosts.push(("u2-mixed-diag".into(), mixed_diagonal_u2().graph().clone()));
    hosts.push((
        "bare-tree-2".into(),
        ramsey_core::build_tree(2).unwrap().graph,
    ));
    hosts.push(("k4".into(), Graph::complete(4)));
    hosts.push(("k5".into(), Graph::complete(5)));
    hosts.push(("path-10".into(), path(10)));
    hosts.push(("cycle-12".into(), cycle(12)));
    hosts.push(("petersen".into(), petersen()));
    hosts.push(("cube".into(), cube()));
    hosts.push(("k33".into(), complete_bipartite(3, 3)));
    hosts.push(("k44".into(), complete_bipartite(4, 4)));
    for (n, seed) in [(8, 4u64), (10, 5), (12, 6), (14, 7), (12, 8)] {
        hosts.push((
            format!("cubic-{n}-s{seed}"),
            ramsey_core::random_regular(n, 3, seed).unwrap(),
        ));
    }
    for (n, seed) in [(10, 9u64), (12, 10), (14, 11)] {
        hosts.push((
            format!("quartic-{n}-s{seed}"),
            ramsey_core::random_regular(n, 4, seed).unwrap(),
        ));
    }
    assert!(hosts.len() >= 20);
    for (name, g) in &hosts {
        assert!(g.max_degree() <= 4, "{name} exceeds degree 4");
        assert!(g.num_vertices() <= 14, "{name} exceeds 14 vertices");
    }
    hosts
}
