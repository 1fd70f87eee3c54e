//! Probability bounds in log space, exact enumeration of the leaf-cycle
//! space, and Monte Carlo estimators for the rooted-embedding event.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::construct::{build_tree, sequential_leaf_cycle, tree_edge_list, tree_vertex_count, HCount};
use crate::embed::{rooted_pattern_exists, Embedding};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lognum::{ln_biguint, ln_binomial, ln_factorial_pow2_minus_1, LogNumber};
use crate::rng::Rng;

/// Cycle spaces are enumerated exhaustively only up to this many leaves
/// (2520 distinct cycles at 8 leaves).
pub const ENUMERATION_MAX_LEAVES: usize = 8;

/// Exact probabilities are big rationals so oracle comparisons stay exact.
pub type Probability = BigRational;

pub fn probability_to_f64(p: &Probability) -> f64 {
    p.to_f64().unwrap_or(f64::NAN)
}

fn check_dk(d: u64, k: u32) -> Result<()> {
    if d < 2 || k < 2 {
        return Err(Error::InvalidParameter(format!(
            "bounds need d >= 2 and k >= 2, got d = {d}, k = {k}"
        )));
    }
    if k > 1000 {
        return Err(Error::InvalidParameter(format!("k = {k} is out of range")));
    }
    Ok(())
}

fn pow2f(k: u32) -> f64 {
    2.0f64.powi(k as i32)
}

fn lemma_ln(d: u64, k: u32) -> f64 {
    // d^(2^k - 1) * d^(2^(k+1)) has exponent 3*2^k - 1.
    (3.0 * pow2f(k) - 1.0) * (d as f64).ln() - ln_factorial_pow2_minus_1(k)
}

/// The rooted-embedding probability bound `d^(2^k-1) d^(2^{k+1}) / (2^k-1)!`.
pub fn lemma_bound(d: u64, k: u32) -> Result<LogNumber> {
    check_dk(d, k)?;
    Ok(LogNumber::pos_from_ln(lemma_ln(d, k)))
}

/// The per-tree-embedding extension bound `d^(2^k-1) / (2^k-1)!`.
pub fn extension_bound(d: u64, k: u32) -> Result<LogNumber> {
    check_dk(d, k)?;
    Ok(LogNumber::pos_from_ln(
        (pow2f(k) - 1.0) * (d as f64).ln() - ln_factorial_pow2_minus_1(k),
    ))
}

/// `ln` of the shared-root union bound, computed as a [`LogNumber`] because
/// at full parameter scale even the log overflows f64:
/// `r * lemma_ln + d^(k+2) * (k+1) * ln d`.
fn corollary_ln(d: u64, k: u32, r: &BigUint) -> LogNumber {
    let ln_d = (d as f64).ln();
    let ln_r = ln_biguint(r);
    let per_copy = LogNumber::from_f64(lemma_ln(d, k)).mul(&LogNumber::pos_from_ln(ln_r));
    let graph_count = LogNumber::pos_from_ln(
        f64::from(k + 2) * ln_d + (f64::from(k + 1) * ln_d).ln(),
    );
    per_copy.add(&graph_count)
}

/// Bound on r components sharing one root vertex in some bounded-degree
/// host: `lemma_bound^r * (d^{k+1})^(d * d^{k+1})`.
pub fn corollary_bound(d: u64, k: u32, r: &BigUint) -> Result<LogNumber> {
    check_dk(d, k)?;
    if r.bits() == 0 {
        return Err(Error::InvalidParameter("r must be >= 1".into()));
    }
    Ok(LogNumber::pos_from_ln(corollary_ln(d, k, r).to_f64()))
}

/// The two evaluations of the union-bound failure term.
#[derive(Clone, Debug)]
pub struct FailureBound {
    /// `C(h, r) * corollary_bound`; available only when `h` is exact.
    pub exact_term: Option<LogNumber>,
    /// Whether the exact term is `< 1`.
    pub exact_certified: Option<bool>,
    /// `(e h / r)^r * lemma^r * (d^{k+1})^(d d^{k+1})`, the chain form that
    /// replaces the binomial by `(e h / r)^r`.
    pub simplified_term: LogNumber,
    /// Whether the simplified term is `< 1`, certifying a positive success
    /// probability. Decided in log-log space, so it is meaningful even when
    /// the term itself under- or overflows every float.
    pub simplified_certified: bool,
}

/// Evaluates the subtracted failure term of the union bound, both with the
/// exact binomial coefficient and in the simplified `(e h / r)^r` form.
pub fn failure_bound(h: &HCount, r: &BigUint, d: u64, k: u32) -> Result<FailureBound> {
    check_dk(d, k)?;
    if r.bits() == 0 {
        return Err(Error::InvalidParameter("r must be >= 1".into()));
    }
    let ln_r = ln_biguint(r);
    let ln_h = match h {
        HCount::Exact(h_exact) => {
            if h_exact < r {
                return Err(Error::InvalidParameter(format!(
                    "r = {r} exceeds h = {h_exact}"
                )));
            }
            ln_biguint(h_exact)
        }
        HCount::Log { ln_h } => {
            if ln_r > *ln_h {
                return Err(Error::InvalidParameter(
                    "r exceeds h (compared in log form)".into(),
                ));
            }
            *ln_h
        }
    };

    let tail = corollary_ln(d, k, r);

    let exact_ln = match h {
        HCount::Exact(h_exact) => h_exact.to_u64().and_then(|h_u| {
            r.to_u64().map(|r_u| {
                LogNumber::from_f64(ln_binomial(h_u, r_u)).add(&tail)
            })
        }),
        HCount::Log { .. } => None,
    };

    // (e h / r)^r contributes r * (1 + ln h - ln r).
    let stirling_binom = LogNumber::from_f64(1.0 + ln_h - ln_r)
        .mul(&LogNumber::pos_from_ln(ln_r));
    let simplified_ln = stirling_binom.add(&tail);

    Ok(FailureBound {
        exact_term: exact_ln.map(|s| LogNumber::pos_from_ln(s.to_f64())),
        exact_certified: exact_ln.map(|s| s.is_negative()),
        simplified_term: LogNumber::pos_from_ln(simplified_ln.to_f64()),
        simplified_certified: simplified_ln.is_negative(),
    })
}

/// Monte Carlo estimate with a normal-approximation 95% interval.
#[derive(Clone, Debug, PartialEq)]
pub struct Estimate {
    pub p_hat: f64,
    pub trials: u64,
    pub half_width_95: f64,
}

impl Estimate {
    fn from_successes(successes: u64, trials: u64) -> Estimate {
        let p_hat = successes as f64 / trials as f64;
        Estimate {
            p_hat,
            trials,
            half_width_95: 1.96 * (p_hat * (1.0 - p_hat) / trials as f64).sqrt(),
        }
    }
}

fn check_enumeration_guard(k: u32) -> Result<usize> {
    if k < 2 {
        return Err(Error::InvalidParameter("k must be >= 2".into()));
    }
    let leaves = 1usize << k;
    if leaves > ENUMERATION_MAX_LEAVES {
        return Err(Error::TooLarge(format!(
            "exact enumeration over {leaves} leaves exceeds the 2^k <= {ENUMERATION_MAX_LEAVES} guard"
        )));
    }
    Ok(leaves)
}

fn validate_tree_embedding(
    host: &Graph,
    tree_embedding: &Embedding,
    k: u32,
) -> Result<Vec<usize>> {
    let tree = build_tree(k)?;
    tree_embedding.validate(&tree.graph, host)?;
    Ok(tree
        .leaves
        .iter()
        .map(|&l| tree_embedding.image_of(l))
        .collect())
}

fn for_each_permutation<F: FnMut(&[usize])>(items: &mut Vec<usize>, f: &mut F) {
    fn recurse<F: FnMut(&[usize])>(items: &mut Vec<usize>, pos: usize, f: &mut F) {
        if pos == items.len() {
            f(items);
            return;
        }
        for i in pos..items.len() {
            items.swap(pos, i);
            recurse(items, pos + 1, f);
            items.swap(pos, i);
        }
    }
    recurse(items, 0, f);
}

/// Exact probability that a fixed tree embedding extends to an embedding of
/// `U_k`, i.e. the fraction of the `(2^k-1)!` leaf orderings whose induced
/// cycle lands entirely on host edges between the embedded leaf images.
pub fn exact_extension_probability(
    host: &Graph,
    tree_embedding: &Embedding,
    k: u32,
) -> Result<BigRational> {
    check_enumeration_guard(k)?;
    let leaf_images = validate_tree_embedding(host, tree_embedding, k)?;
    let first = leaf_images[0];
    let mut rest: Vec<usize> = leaf_images[1..].to_vec();
    let mut successes: u64 = 0;
    let mut total: u64 = 0;
    for_each_permutation(&mut rest, &mut |perm| {
        total += 1;
        let mut prev = first;
        let mut ok = true;
        for &img in perm {
            if !host.has_edge(prev, img) {
                ok = false;
                break;
            }
            prev = img;
        }
        if ok && host.has_edge(prev, first) {
            successes += 1;
        }
    });
    Ok(BigRational::new(
        BigInt::from(successes),
        BigInt::from(total),
    ))
}

/// Builds the `U_k` pattern graph for one leaf ordering: heap tree edges
/// plus the induced cycle (in pattern-local ids).
fn pattern_for_ordering(k: u32, first: usize, rest: &[usize]) -> Graph {
    let n = tree_vertex_count(k);
    let mut edges = tree_edge_list(k);
    let mut prev = first;
    for &l in rest {
        edges.push((prev.min(l), prev.max(l)));
        prev = l;
    }
    edges.push((prev.min(first), prev.max(first)));
    Graph::build(n, &edges).expect("pattern edges are in range")
}

/// Exact probability, over the uniform random leaf cycle, that some rooted
/// embedding of `U_k` into `host` exists at `v`. Enumerates all
/// `(2^k-1)!/2` distinct cycles.
pub fn exact_rooted_probability(host: &Graph, v: usize, k: u32) -> Result<BigRational> {
    check_enumeration_guard(k)?;
    host.check_vertex(v)?;
    let tree = build_tree(k)?;
    let first = tree.leaves[0];
    let mut rest: Vec<usize> = tree.leaves[1..].to_vec();
    let mut successes: u64 = 0;
    let mut total: u64 = 0;
    for_each_permutation(&mut rest, &mut |perm| {
        // Each undirected cycle arises from exactly two orderings; keep the
        // one whose first entry is smaller than its last.
        if perm[0] > perm[perm.len() - 1] {
            return;
        }
        total += 1;
        let pattern = pattern_for_ordering(k, first, perm);
        if rooted_pattern_exists(host, &pattern, v) {
            successes += 1;
        }
    });
    Ok(BigRational::new(
        BigInt::from(successes),
        BigInt::from(total),
    ))
}

fn run_estimate(
    host: &Graph,
    v: usize,
    k: u32,
    trials: u64,
    seed: u64,
    parallel: bool,
) -> Result<Estimate> {
    host.check_vertex(v)?;
    if k < 2 {
        return Err(Error::InvalidParameter("k must be >= 2".into()));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be >= 1".into()));
    }
    let tree = build_tree(k)?;
    let base_edges = tree_edge_list(k);
    let n = tree.graph.num_vertices();
    let trial = |t: u64| -> bool {
        let mut stream = Rng::new(seed).split(t);
        let cycle =
            sequential_leaf_cycle(&tree.leaves, &mut stream).expect("k >= 2 gives >= 4 leaves");
        let mut edges = base_edges.clone();
        edges.extend(cycle.iter());
        let pattern = Graph::build(n, &edges).expect("cycle edges are leaf ids");
        rooted_pattern_exists(host, &pattern, v)
    };
    // Successes are a sum of per-trial indicators with trial-indexed seeds,
    // so the count is independent of evaluation order.
    let successes = if parallel {
        (0..trials).into_par_iter().filter(|&t| trial(t)).count()
    } else {
        (0..trials).filter(|&t| trial(t)).count()
    } as u64;
    Ok(Estimate::from_successes(successes, trials))
}

/// Monte Carlo estimate of the rooted-embedding probability at `v`: each
/// trial draws a fresh cycle from the stream split off `(seed, trial)`.
pub fn estimate_rooted_prob(
    host: &Graph,
    v: usize,
    k: u32,
    trials: u64,
    seed: u64,
) -> Result<Estimate> {
    run_estimate(host, v, k, trials, seed, false)
}

/// Same estimator with trials spread across worker threads. Per-trial seeds
/// depend only on `(seed, trial index)`, so the result is bit-identical to
/// the sequential run.
pub fn estimate_rooted_prob_parallel(
    host: &Graph,
    v: usize,
    k: u32,
    trials: u64,
    seed: u64,
) -> Result<Estimate> {
    run_estimate(host, v, k, trials, seed, true)
}

/// Result of checking the sequential-generation conditional bound
/// `P(adjacent at step i+1 | prefix) <= d / (2^k - 1 - i)` over every prefix.
#[derive(Clone, Debug)]
pub struct StepCheckReport {
    /// Number of (prefix, step) pairs checked.
    pub steps_checked: u64,
    /// Maximum of (observed conditional probability) / (claimed bound).
    pub max_ratio: f64,
    /// True when every conditional probability obeys the bound.
    pub holds: bool,
}

/// Verifies by exact counting that, for a fixed tree embedding, every
/// conditional adjacency probability of the sequential cycle generation is
/// within the claimed `d / remaining` bound (`d` = host max degree).
pub fn conditional_step_check(
    host: &Graph,
    tree_embedding: &Embedding,
    k: u32,
) -> Result<StepCheckReport> {
    check_enumeration_guard(k)?;
    let leaf_images = validate_tree_embedding(host, tree_embedding, k)?;
    let d = host.max_degree().max(1);

    let mut report = StepCheckReport {
        steps_checked: 0,
        max_ratio: 0.0,
        holds: true,
    };

    fn recurse(
        host: &Graph,
        d: usize,
        prev: usize,
        remaining: &mut Vec<usize>,
        report: &mut StepCheckReport,
    ) {
        if remaining.is_empty() {
            return;
        }
        // The conditional probability is adjacent_count / |remaining| and
        // the claimed bound is d / |remaining|, so the ratio is exactly
        // adjacent_count / d.
        let adjacent = remaining.iter().filter(|&&w| host.has_edge(prev, w)).count();
        report.steps_checked += 1;
        let ratio = adjacent as f64 / d as f64;
        if ratio > report.max_ratio {
            report.max_ratio = ratio;
        }
        if adjacent > d {
            report.holds = false;
        }
        for i in 0..remaining.len() {
            let w = remaining.swap_remove(i);
            recurse(host, d, w, remaining, report);
            remaining.push(w);
            let last = remaining.len() - 1;
            remaining.swap(i, last);
        }
    }

    let mut remaining: Vec<usize> = leaf_images[1..].to_vec();
    recurse(host, d, leaf_images[0], &mut remaining, &mut report);
    Ok(report)
}

/// BFS ball size versus the `d^{k+1}` bound.
#[derive(Clone, Debug)]
pub struct BallReport {
    pub vertex: usize,
    pub radius: u32,
    pub size: usize,
    pub bound: BigUint,
    pub holds: bool,
}

/// Checks that the radius-`k` ball around `v` has at most `d^{k+1}` vertices.
/// Requires the host max degree to actually be at most `d`.
pub fn ball_size_check(host: &Graph, v: usize, k: u32, d: u64) -> Result<BallReport> {
    host.check_vertex(v)?;
    if host.max_degree() as u64 > d {
        return Err(Error::InvalidParameter(format!(
            "host max degree {} exceeds d = {d}",
            host.max_degree()
        )));
    }
    let mut dist = vec![usize::MAX; host.num_vertices()];
    dist[v] = 0;
    let mut queue = std::collections::VecDeque::from([v]);
    let mut size = 0usize;
    while let Some(u) = queue.pop_front() {
        if dist[u] > k as usize {
            continue;
        }
        size += 1;
        if dist[u] == k as usize {
            continue;
        }
        for &w in host.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    let bound = BigUint::from(d).pow(k + 1);
    Ok(BallReport {
        vertex: v,
        radius: k,
        size,
        holds: BigUint::from(size) <= bound,
        bound,
    })
}
