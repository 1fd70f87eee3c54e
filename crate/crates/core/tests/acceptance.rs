//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (visible under `cargo test -- --nocapture`).

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, resume_unwind, UnwindSafe};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use ramsey_core::{
    analysis, ball_size_check, build_coloring, build_tree, conditional_step_check,
    corollary_bound, count_tree_embeddings, cycle_from_ordering, estimate_rooted_prob,
    estimate_rooted_prob_parallel, exact_extension_probability, exact_rooted_probability,
    extension_bound, failure_bound, for_each_tree_embedding, high_degree_edges, lemma_bound,
    params_from_log_n, random_regular, rooted_embedding_exists, sequential_leaf_cycle,
    verify_coloring, ColorVerdict, Coloring, Embedding, Error, GPrime, Graph, HCount, Rng,
    UkGraph,
};

fn criterion<F: FnOnce() + UnwindSafe>(name: &str, body: F) {
    match catch_unwind(body) {
        Ok(()) => println!("acceptance {name}: PASS"),
        Err(cause) => {
            println!("acceptance {name}: FAIL");
            resume_unwind(cause);
        }
    }
}

#[test]
fn criterion_01_structural_suite() {
    criterion("01 structural-suite", || {
        for k in 2..=6u32 {
            let n = (1usize << (k + 1)) - 1;
            let tree_edges = n - 1;
            let cycle_edges = 1usize << k;
            for seed in 0..100u64 {
                let uk = UkGraph::build(k, &mut Rng::new(seed)).unwrap();
                uk.validate().unwrap();
                assert_eq!(uk.graph().num_vertices(), n);
                assert_eq!(uk.graph().edge_count(), 3 * (1 << k) - 2);
                assert_eq!(uk.tree_edges().len(), tree_edges);
                assert_eq!(uk.cycle_edges().len(), cycle_edges);
                assert!(uk.tree_edges().is_disjoint(uk.cycle_edges()));
                assert_eq!(uk.graph().degree(uk.root()), 2);
                for v in 0..n {
                    if v != uk.root() {
                        assert_eq!(uk.graph().degree(v), 3, "k={k} seed={seed} v={v}");
                    }
                }
            }
        }
    });
}

#[test]
fn criterion_02_cycle_uniformity_exact() {
    criterion("02 cycle-uniformity-exact", || {
        // All 3! orderings of the non-fixed leaves, counted per distinct cycle.
        let leaves = [3usize, 4, 5, 6];
        let rest = [4usize, 5, 6];
        let mut counts: BTreeMap<Vec<(usize, usize)>, usize> = BTreeMap::new();
        let perms = [
            [4, 5, 6],
            [4, 6, 5],
            [5, 4, 6],
            [5, 6, 4],
            [6, 4, 5],
            [6, 5, 4],
        ];
        assert_eq!(perms.len(), 6);
        for perm in perms {
            assert!(perm.iter().all(|v| rest.contains(v)));
            let cycle = cycle_from_ordering(leaves[0], &perm);
            *counts.entry(cycle.iter().collect()).or_default() += 1;
        }
        assert_eq!(counts.len(), 3, "expected exactly 3 distinct cycles");
        assert!(counts.values().all(|&c| c == 2), "each cycle from exactly 2 orderings");
    });
}

#[test]
fn criterion_03_cycle_uniformity_statistical() {
    criterion("03 cycle-uniformity-statistical", || {
        let tree = build_tree(2).unwrap();
        let master = Rng::new(0xC1C1E);
        let samples = 300_000u64;
        let mut counts: BTreeMap<Vec<(usize, usize)>, u64> = BTreeMap::new();
        for t in 0..samples {
            let cycle = sequential_leaf_cycle(&tree.leaves, &mut master.split(t)).unwrap();
            *counts.entry(cycle.iter().collect()).or_default() += 1;
        }
        assert_eq!(counts.len(), 3);
        for (cycle, count) in &counts {
            let freq = *count as f64 / samples as f64;
            assert!(
                (freq - 1.0 / 3.0).abs() <= 0.01,
                "cycle {cycle:?} frequency {freq}"
            );
        }
    });
}

#[test]
fn criterion_04_lemma_extension_claim() {
    criterion("04 lemma-extension-claim", || {
        let corpus = common::bounded_degree_corpus();
        assert!(corpus.len() >= 20);
        let mut embeddings_seen = 0u64;
        let mut positive_probs = 0u64;
        for (name, host) in &corpus {
            let d = host.max_degree() as u64;
            assert!((2..=4).contains(&d), "{name}");
            let bound = extension_bound(d, 2).unwrap().to_f64();
            for v in 0..host.num_vertices() {
                let mut maps: Vec<Vec<usize>> = Vec::new();
                for_each_tree_embedding(host, 2, v, |map| {
                    maps.push(map.to_vec());
                    false
                })
                .unwrap();
                for map in maps {
                    embeddings_seen += 1;
                    let embedding = Embedding::new(map);
                    let p = exact_extension_probability(host, &embedding, 2).unwrap();
                    let p_f = analysis::probability_to_f64(&p);
                    if p_f > 0.0 {
                        positive_probs += 1;
                    }
                    assert!(
                        p_f <= bound + 1e-12,
                        "{name} v={v}: extension probability {p_f} exceeds bound {bound}"
                    );
                    let step = conditional_step_check(host, &embedding, 2).unwrap();
                    assert!(step.holds, "{name} v={v}");
                    assert!(step.max_ratio <= 1.0, "{name} v={v}");
                }
            }
        }
        assert!(embeddings_seen > 100, "corpus produced too few tree embeddings");
        assert!(positive_probs > 0, "corpus never exercised a positive probability");
    });
}

#[test]
fn criterion_05_oracle_vs_monte_carlo() {
    criterion("05 oracle-vs-monte-carlo", || {
        let mut hosts: Vec<(String, Graph)> = vec![
            ("u2-sibling-diag".into(), common::sibling_diagonal_u2().graph().clone()),
            ("u2-mixed-diag".into(), common::mixed_diagonal_u2().graph().clone()),
            ("bare-tree".into(), build_tree(2).unwrap().graph),
            ("k7".into(), Graph::complete(7)),
            ("k6".into(), Graph::complete(6)),
            ("gprime-16".into(), GPrime::build(16, 2, 21).unwrap().graph().clone()),
        ];
        for seed in [1u64, 2, 3] {
            hosts.push((format!("u2-seed{seed}"), common::fresh_u2(seed).graph().clone()));
        }
        hosts.push(("cubic-10".into(), random_regular(10, 3, 5).unwrap()));
        hosts.push(("cubic-12".into(), random_regular(12, 3, 6).unwrap()));
        hosts.push(("quartic-10".into(), random_regular(10, 4, 9).unwrap()));
        assert!(hosts.len() >= 10);

        for (i, (name, host)) in hosts.iter().enumerate() {
            let exact = exact_rooted_probability(host, 0, 2).unwrap();
            let exact_f = analysis::probability_to_f64(&exact);
            let est =
                estimate_rooted_prob_parallel(host, 0, 2, 100_000, 7_000 + i as u64).unwrap();
            assert!(
                (est.p_hat - exact_f).abs() <= 0.02,
                "{name}: p_hat {} vs exact {exact_f}",
                est.p_hat
            );
        }
    });
}

#[test]
fn criterion_06_tree_count() {
    criterion("06 tree-count", || {
        let tree_host = build_tree(2).unwrap().graph;
        let count = count_tree_embeddings(&tree_host, 2, 0).unwrap();
        assert_eq!(count, BigUint::from(8u32));
        assert_eq!(
            common::naive_count_rooted(&tree_host, &tree_host, 0),
            8u128
        );

        let k7 = Graph::complete(7);
        let pattern = build_tree(2).unwrap().graph;
        for v in 0..7 {
            let count = count_tree_embeddings(&k7, 2, v).unwrap();
            assert_eq!(count, BigUint::from(720u32));
            assert_eq!(common::naive_count_rooted(&k7, &pattern, v), 720u128);
        }

        // count <= d^(2^{k+1}) across a corpus, naive agreement on small hosts.
        for (name, host) in common::bounded_degree_corpus() {
            let d = host.max_degree();
            let cap = BigUint::from(d).pow(8);
            for v in 0..host.num_vertices() {
                let count = count_tree_embeddings(&host, 2, v).unwrap();
                assert!(count <= cap, "{name} v={v}: {count} > {cap}");
                if host.num_vertices() <= 12 {
                    assert_eq!(
                        count.to_u128().unwrap(),
                        common::naive_count_rooted(&host, &pattern, v),
                        "{name} v={v}"
                    );
                }
            }
        }
    });
}

#[test]
fn criterion_07_bound_arithmetic() {
    criterion("07 bound-arithmetic", || {
        // Oracle values from exact big-rational arithmetic (see the rational
        // helpers below): log10(3^11 / 6) = 4.4701826.
        let lemma32 = lemma_bound(3, 2).unwrap();
        let oracle = rational_log10(&BigUint::from(3u32).pow(11), &BigUint::from(6u32));
        assert!((lemma32.log10_mag() - oracle).abs() <= 1e-6, "{}", lemma32.log10_mag());
        assert!((lemma32.to_f64() - 29524.5).abs() < 1e-6);

        let cor = corollary_bound(2, 2, &BigUint::from(1u32)).unwrap();
        assert!((cor.log10_mag() - 16.98271).abs() <= 1e-4, "{}", cor.log10_mag());

        let fb = failure_bound(
            &HCount::Exact(BigUint::from(7u32)),
            &BigUint::from(2u32),
            2,
            2,
        )
        .unwrap();
        let exact_log10 = fb.exact_term.as_ref().unwrap().log10_mag();
        assert!((exact_log10 - 20.838).abs() <= 1e-3, "{exact_log10}");
        assert_eq!(fb.exact_certified, Some(false));

        // Log-space arithmetic vs the big-rational oracle, 1e-9 relative on
        // every sub-10^300 input in the grid. A cheap f64 magnitude guard
        // keeps the oracle from materializing numbers with millions of bits
        // only to discard them.
        let predicted_log10 = |d: u64, k: u32, r: u64| -> f64 {
            let m = (1u64 << k) as f64;
            let mut lf = 0.0;
            for i in 2..(1u64 << k) {
                lf += (i as f64).log10();
            }
            let lemma = (3.0 * m - 1.0) * (d as f64).log10() - lf;
            let exponent = (d * d.pow(k + 1)) as f64;
            r as f64 * lemma + exponent * f64::from(k + 1) * (d as f64).log10()
        };
        let mut inputs_checked = 0u32;
        for d in 2..=6u64 {
            for k in 2..=5u32 {
                let (num, den) = rational_lemma(d, k);
                let log10 = rational_log10(&num, &den);
                if log10.abs() < 295.0 {
                    compare_ln(lemma_bound(d, k).unwrap().ln_mag(), &num, &den);
                    inputs_checked += 1;
                }
                for r in 1..=3u64 {
                    if predicted_log10(d, k, r).abs() >= 290.0 {
                        continue;
                    }
                    let (num, den) = rational_corollary(d, k, r);
                    if rational_log10(&num, &den).abs() < 295.0 {
                        let ln = corollary_bound(d, k, &BigUint::from(r)).unwrap().ln_mag();
                        compare_ln_value(ln, &num, &den);
                        inputs_checked += 1;
                    }
                }
            }
        }
        for h in 4..=9u64 {
            for r in 1..=3u64 {
                let (mut num, den) = rational_corollary(2, 2, r);
                num *= rational_binomial(h, r);
                if rational_log10(&num, &den).abs() < 295.0 {
                    let fb = failure_bound(
                        &HCount::Exact(BigUint::from(h)),
                        &BigUint::from(r),
                        2,
                        2,
                    )
                    .unwrap();
                    compare_ln_value(fb.exact_term.unwrap().ln_mag(), &num, &den);
                    inputs_checked += 1;
                }
            }
        }
        assert!(inputs_checked >= 40, "only {inputs_checked} oracle comparisons ran");
    });
}

fn rational_lemma(d: u64, k: u32) -> (BigUint, BigUint) {
    let m = 1u64 << k;
    let num = BigUint::from(d).pow((3 * m - 1) as u32);
    let mut den = BigUint::from(1u32);
    for i in 2..m {
        den *= i;
    }
    (num, den)
}

fn rational_corollary(d: u64, k: u32, r: u64) -> (BigUint, BigUint) {
    let (ln, ld) = rational_lemma(d, k);
    let exponent = d * d.pow(k + 1);
    let num = ln.pow(r as u32) * BigUint::from(d).pow((k + 1) * exponent as u32);
    (num, ld.pow(r as u32))
}

fn rational_binomial(n: u64, r: u64) -> BigUint {
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for i in 0..r {
        num *= n - i;
        den *= i + 1;
    }
    num / den
}

/// log10 of a positive rational via f64 conversion (values under 1e300).
fn rational_log10(num: &BigUint, den: &BigUint) -> f64 {
    use num_rational::BigRational;
    let q = BigRational::new(num.clone().into(), den.clone().into());
    q.to_f64().unwrap().log10()
}

fn compare_ln(ln_impl: f64, num: &BigUint, den: &BigUint) {
    compare_ln_value(ln_impl, num, den);
}

fn compare_ln_value(ln_impl: f64, num: &BigUint, den: &BigUint) {
    use num_rational::BigRational;
    let q = BigRational::new(num.clone().into(), den.clone().into());
    let ln_oracle = q.to_f64().unwrap().ln();
    assert!(
        (ln_impl - ln_oracle).abs() <= 1e-9 * ln_oracle.abs().max(1.0),
        "{ln_impl} vs oracle {ln_oracle}"
    );
}

#[test]
fn criterion_08_adversary_end_to_end() {
    criterion("08 adversary-end-to-end", || {
        let d = 3u64;
        let r = 2u64;
        let mut instances = 0u32;
        let gp_specs = [
            (2usize, 100u64),
            (3, 101),
            (4, 102),
            (2, 103),
            (3, 104),
            (4, 105),
            (2, 106),
            (3, 107),
            (4, 108),
        ];
        for (gp_idx, (h, gp_seed)) in gp_specs.into_iter().enumerate() {
            let gp = GPrime::build(8 * h, 2, gp_seed).unwrap();
            assert_eq!(gp.h(), h);
            let mut hosts: Vec<Graph> = vec![gp.graph().clone()];
            for (j, n) in [20usize, 30, 40, 50, 60].into_iter().enumerate() {
                hosts.push(random_regular(n, 3, 1_000 + 10 * gp_idx as u64 + j as u64).unwrap());
            }
            for host in hosts {
                instances += 1;
                let (coloring, report) = build_coloring(&host, &gp, d, r).unwrap();

                coloring.validate_against(&host).unwrap();
                assert!(report.e_high.is_subset(coloring.red()));
                assert_eq!(high_degree_edges(&host, d), report.e_high);
                let trimmed = host
                    .edge_subgraph(&host.edge_set().difference(&report.e_high))
                    .unwrap();
                assert!(trimmed.max_degree() as u64 <= d);

                // Blue defeat, exhaustively: no rooted embedding of the
                // targeted component anywhere in the blue subgraph.
                let blue = host.edge_subgraph(coloring.blue()).unwrap();
                let target = gp.component(report.i0);
                for v in 0..blue.num_vertices() {
                    assert!(
                        !rooted_embedding_exists(&blue, target, v).unwrap(),
                        "blue embedding of component {} at vertex {v}",
                        report.i0
                    );
                }
            }
        }
        assert!(instances >= 50, "only {instances} instances ran");
    });
}

#[test]
fn criterion_09_monochromatic_oracle_agreement() {
    criterion("09 monochromatic-oracle-agreement", || {
        let mut instances = 0u32;
        let mut not_defeated_all_red = 0u32;
        for (h, gp_seed) in [(2usize, 201u64), (2, 202), (3, 203), (3, 204)] {
            let gp = GPrime::build(8 * h, 2, gp_seed).unwrap();
            let own = gp.graph().clone();
            let cubic = random_regular(24 + 2 * h, 3, gp_seed + 50).unwrap();

            let mut cases: Vec<(Graph, Coloring)> = Vec::new();
            let (adversarial, _) = build_coloring(&own, &gp, 3, 2).unwrap();
            cases.push((own.clone(), adversarial));
            cases.push((own.clone(), Coloring::from_red(&own, own.edge_set()).unwrap()));
            cases.push((
                own.clone(),
                Coloring::from_red(&own, ramsey_core::EdgeSet::new()).unwrap(),
            ));
            let (cubic_adv, _) = build_coloring(&cubic, &gp, 3, 2).unwrap();
            cases.push((cubic.clone(), cubic_adv));
            cases.push((
                cubic.clone(),
                Coloring::from_red(&cubic, cubic.edge_set()).unwrap(),
            ));

            for (host, coloring) in cases {
                instances += 1;
                let outcome = verify_coloring(&host, &coloring, &gp, false).unwrap();
                let blue_graph = host.edge_subgraph(coloring.blue()).unwrap();
                let red_graph = host.edge_subgraph(coloring.red()).unwrap();
                let naive_blue = common::naive_gprime_embeds(&blue_graph, &gp);
                let naive_red = common::naive_gprime_embeds(&red_graph, &gp);

                assert_ne!(outcome.blue, ColorVerdict::Undetermined);
                assert_ne!(outcome.red, ColorVerdict::Undetermined);
                assert_eq!(outcome.blue == ColorVerdict::ContainsCopy, naive_blue);
                assert_eq!(outcome.red == ColorVerdict::ContainsCopy, naive_red);
                assert_eq!(outcome.defeated, !naive_blue && !naive_red);
                if naive_red && !outcome.defeated && coloring.blue().is_empty() {
                    not_defeated_all_red += 1;
                }
            }
        }
        assert!(instances >= 20, "only {instances} instances ran");
        assert!(
            not_defeated_all_red >= 1,
            "no all-red NOT-defeated case was exercised"
        );
    });
}

#[test]
fn criterion_10_parameter_formulas() {
    criterion("10 parameter-formulas", || {
        let p = params_from_log_n(40_000.0).unwrap();
        assert_eq!(p.d, 7);
        assert_eq!(p.k, 20);
        assert_eq!(p.r, BigUint::from(7u32).pow(22));

        match params_from_log_n(100.0).unwrap_err() {
            Error::RegimeTooSmall { min_log_n, .. } => {
                let expected = (100.0 * std::f64::consts::LN_2).powi(2);
                assert!((min_log_n - expected).abs() <= 0.1);
            }
            other => panic!("expected RegimeTooSmall, got {other:?}"),
        }
    });
}

#[test]
fn criterion_11_reproducibility() {
    criterion("11 reproducibility", || {
        let a = UkGraph::build(3, &mut Rng::new(55)).unwrap();
        let b = UkGraph::build(3, &mut Rng::new(55)).unwrap();
        assert_eq!(a.graph().serialize(), b.graph().serialize());

        let a = GPrime::build(30, 2, 9).unwrap();
        let b = GPrime::build(30, 2, 9).unwrap();
        assert_eq!(a.serialize(), b.serialize());

        let a = random_regular(20, 3, 11).unwrap();
        let b = random_regular(20, 3, 11).unwrap();
        assert_eq!(a.serialize(), b.serialize());

        let host = common::sibling_diagonal_u2().graph().clone();
        let seq = estimate_rooted_prob(&host, 0, 2, 20_000, 13).unwrap();
        let par = estimate_rooted_prob_parallel(&host, 0, 2, 20_000, 13).unwrap();
        assert_eq!(seq.p_hat.to_bits(), par.p_hat.to_bits());
        assert_eq!(seq.trials, par.trials);
        assert_eq!(seq.half_width_95.to_bits(), par.half_width_95.to_bits());

        // Ball-size check, exercised here to pin its determinism too.
        let ball_a = ball_size_check(&host, 0, 2, 3).unwrap();
        let ball_b = ball_size_check(&host, 0, 2, 3).unwrap();
        assert_eq!(ball_a.size, ball_b.size);
        assert_eq!(ball_a.size, 7);
    });
}
