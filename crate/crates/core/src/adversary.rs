//! The adversarial 2-coloring strategy against a concrete host: trim
//! high-degree edges, pick the component with the fewest viable roots,
//! paint everything touching those roots red, and audit the counting
//! inequalities the strategy's correctness rests on.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::construct::GPrime;
use crate::embed::{gprime_embeds, rooted_embedding_exists, RootSet};
use crate::error::{parse_err, Error, Result};
use crate::graph::{EdgeSet, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Color {
    Red,
    Blue,
}

/// Total red/blue assignment on a host's edge set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    num_vertices: usize,
    red: EdgeSet,
    blue: EdgeSet,
}

impl Coloring {
    /// Colors `red` red and every other host edge blue.
    pub fn from_red(host: &Graph, red: EdgeSet) -> Result<Coloring> {
        for (u, v) in red.iter() {
            if !host.has_edge(u, v) {
                return Err(Error::ForeignEdge(u, v));
            }
        }
        let blue = host.edge_set().difference(&red);
        Ok(Coloring {
            num_vertices: host.num_vertices(),
            red,
            blue,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn red(&self) -> &EdgeSet {
        &self.red
    }

    pub fn blue(&self) -> &EdgeSet {
        &self.blue
    }

    pub fn color_of(&self, u: usize, v: usize) -> Option<Color> {
        if self.red.contains(u, v) {
            Some(Color::Red)
        } else if self.blue.contains(u, v) {
            Some(Color::Blue)
        } else {
            None
        }
    }

    /// The coloring must cover exactly the host's edges, each once.
    pub fn validate_against(&self, host: &Graph) -> Result<()> {
        if self.num_vertices != host.num_vertices() {
            return Err(Error::InvalidColoring(format!(
                "coloring is over {} vertices, host has {}",
                self.num_vertices,
                host.num_vertices()
            )));
        }
        if !self.red.is_disjoint(&self.blue) {
            return Err(Error::InvalidColoring(
                "an edge is both red and blue".into(),
            ));
        }
        let covered = self.red.union(&self.blue);
        let host_edges = host.edge_set();
        if let Some((u, v)) = covered.difference(&host_edges).iter().next() {
            return Err(Error::InvalidColoring(format!(
                "colored edge ({u}, {v}) is not a host edge"
            )));
        }
        if let Some((u, v)) = host_edges.difference(&covered).iter().next() {
            return Err(Error::InvalidColoring(format!(
                "host edge ({u}, {v}) is uncolored"
            )));
        }
        Ok(())
    }

    /// Text form: header, then `e u v R|B` per edge in canonical order.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        writeln!(out, "coloring {}", self.num_vertices).unwrap();
        let mut all: Vec<(usize, usize, char)> = self
            .red
            .iter()
            .map(|(u, v)| (u, v, 'R'))
            .chain(self.blue.iter().map(|(u, v)| (u, v, 'B')))
            .collect();
        all.sort_unstable();
        for (u, v, c) in all {
            writeln!(out, "e {u} {v} {c}").unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Coloring> {
        let mut num_vertices: Option<usize> = None;
        let mut red = EdgeSet::new();
        let mut blue = EdgeSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            match tokens.next() {
                Some("coloring") => {
                    if num_vertices.is_some() {
                        return Err(parse_err(line_no, "duplicate coloring header"));
                    }
                    let n = tokens
                        .next()
                        .ok_or_else(|| parse_err(line_no, "missing vertex count"))?;
                    num_vertices = Some(
                        n.parse()
                            .map_err(|_| parse_err(line_no, format!("bad vertex count '{n}'")))?,
                    );
                }
                Some("e") => {
                    let n = num_vertices
                        .ok_or_else(|| parse_err(line_no, "edge before coloring header"))?;
                    let (u, v) = crate::graph::parse_edge_tokens(&mut tokens, line_no)?;
                    if u >= n || v >= n {
                        return Err(parse_err(
                            line_no,
                            format!("vertex id out of range: {} >= {n}", u.max(v)),
                        ));
                    }
                    let color = tokens
                        .next()
                        .ok_or_else(|| parse_err(line_no, "missing color (R or B)"))?;
                    if tokens.next().is_some() {
                        return Err(parse_err(line_no, "trailing tokens after color"));
                    }
                    if red.contains(u, v) || blue.contains(u, v) {
                        return Err(parse_err(line_no, format!("duplicate edge ({u}, {v})")));
                    }
                    match color {
                        "R" => red.insert(u, v),
                        "B" => blue.insert(u, v),
                        other => {
                            return Err(parse_err(line_no, format!("bad color '{other}'")))
                        }
                    };
                }
                Some(other) => {
                    return Err(parse_err(line_no, format!("unknown line type '{other}'")));
                }
                None => unreachable!(),
            }
        }
        let num_vertices =
            num_vertices.ok_or_else(|| parse_err(1, "missing coloring header"))?;
        Ok(Coloring {
            num_vertices,
            red,
            blue,
        })
    }
}

/// All host edges incident to a vertex of degree at least `d + 1`.
pub fn high_degree_edges(host: &Graph, d: u64) -> EdgeSet {
    host.edges()
        .filter(|&(u, v)| host.degree(u) as u64 > d || host.degree(v) as u64 > d)
        .collect()
}

fn edges_incident_to(host: &Graph, vertices: &RootSet) -> EdgeSet {
    host.edges()
        .filter(|&(u, v)| vertices.contains(&u) || vertices.contains(&v))
        .collect()
}

/// Outcome of picking the target component `i0` on the trimmed host.
#[derive(Clone, Debug)]
pub struct TargetSelection {
    /// Component index minimizing the rooted-candidate count (ties to the
    /// smallest index).
    pub i0: usize,
    /// Root candidates of component `i0` on the trimmed host.
    pub v_r: RootSet,
    /// Per-vertex count of components rooted-embeddable there (0 for
    /// isolated vertices, which are never searched).
    pub index_counts: Vec<usize>,
    /// Per-component candidate-set sizes.
    pub candidate_counts: Vec<usize>,
    /// Whether every vertex carries fewer than `r` indices, the pigeonhole
    /// premise of the counting argument.
    pub premise_holds: bool,
}

/// Computes shared root indices for every non-isolated vertex of `trimmed`
/// and selects the component with the fewest viable roots.
///
/// The per-vertex searches run concurrently; the merge is single-threaded
/// and the outcome is independent of scheduling.
pub fn select_target(trimmed: &Graph, gprime: &GPrime, r: u64) -> Result<TargetSelection> {
    if gprime.h() == 0 {
        return Err(Error::InvalidParameter("G' has no components".into()));
    }
    let n = trimmed.num_vertices();
    let per_vertex: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|v| {
            if trimmed.is_isolated(v) {
                return Vec::new();
            }
            (0..gprime.h())
                .filter(|&i| {
                    rooted_embedding_exists(trimmed, gprime.component(i), v)
                        .expect("v is in range")
                })
                .collect()
        })
        .collect();
    let mut index_counts = vec![0usize; n];
    let mut candidates: Vec<RootSet> = vec![RootSet::new(); gprime.h()];
    for (v, indices) in per_vertex.iter().enumerate() {
        index_counts[v] = indices.len();
        for &i in indices {
            candidates[i].insert(v);
        }
    }
    let candidate_counts: Vec<usize> = candidates.iter().map(BTreeSet::len).collect();
    let i0 = (0..gprime.h())
        .min_by_key(|&i| (candidate_counts[i], i))
        .expect("h >= 1");
    let premise_holds = index_counts.iter().all(|&c| (c as u64) < r);
    Ok(TargetSelection {
        i0,
        v_r: candidates[i0].clone(),
        index_counts,
        candidate_counts,
        premise_holds,
    })
}

/// Everything the adversary computed while building its coloring.
#[derive(Clone, Debug)]
pub struct AdversaryReport {
    pub i0: usize,
    pub v_r: RootSet,
    pub e_high: EdgeSet,
    pub index_counts: Vec<usize>,
    pub candidate_counts: Vec<usize>,
    pub premise_holds: bool,
    pub audit: AuditReport,
}

impl AdversaryReport {
    /// `key value` lines for the CLI.
    pub fn to_kv_lines(&self) -> String {
        let mut out = String::new();
        writeln!(out, "i0 {}", self.i0).unwrap();
        writeln!(out, "vr_size {}", self.v_r.len()).unwrap();
        let vr: Vec<String> = self.v_r.iter().map(|v| v.to_string()).collect();
        writeln!(out, "vr {}", vr.join(" ")).unwrap();
        writeln!(out, "e_high_size {}", self.e_high.len()).unwrap();
        let counts: Vec<String> = self
            .candidate_counts
            .iter()
            .map(|c| c.to_string())
            .collect();
        writeln!(out, "candidate_counts {}", counts.join(" ")).unwrap();
        writeln!(out, "pigeonhole_premise {}", self.premise_holds).unwrap();
        out.push_str(&self.audit.to_kv_lines());
        out
    }
}

/// Builds the strategy coloring: `E_high` plus everything incident to `V_r`
/// is red, the rest blue. Deterministic in its inputs.
pub fn build_coloring(
    host: &Graph,
    gprime: &GPrime,
    d: u64,
    r: u64,
) -> Result<(Coloring, AdversaryReport)> {
    if d < 2 {
        return Err(Error::InvalidParameter("d must be >= 2".into()));
    }
    let e_high = high_degree_edges(host, d);
    let trimmed = host.edge_subgraph(&host.edge_set().difference(&e_high))?;
    debug_assert!(trimmed.max_degree() as u64 <= d);
    let selection = select_target(&trimmed, gprime, r)?;
    let red = e_high.union(&edges_incident_to(host, &selection.v_r));
    let coloring = Coloring::from_red(host, red)?;
    let audit = audit_inequalities(host, &coloring, gprime, d, r)?;
    let report = AdversaryReport {
        i0: selection.i0,
        v_r: selection.v_r,
        e_high,
        index_counts: selection.index_counts,
        candidate_counts: selection.candidate_counts,
        premise_holds: selection.premise_holds,
        audit,
    };
    Ok((coloring, report))
}

/// Verdict for one color class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColorVerdict {
    /// Certified to contain no copy of G'.
    NoCopy,
    /// A monochromatic copy of G' exists.
    ContainsCopy,
    /// Beyond the desk-scale packing guard; not decided.
    Undetermined,
}

impl ColorVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            ColorVerdict::NoCopy => "no_copy",
            ColorVerdict::ContainsCopy => "contains_copy",
            ColorVerdict::Undetermined => "undetermined",
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOutcome {
    pub blue: ColorVerdict,
    pub red: ColorVerdict,
    /// True only when both color classes are certified free of G'.
    pub defeated: bool,
    /// A component with no rooted embedding anywhere in the blue subgraph,
    /// when the blue verdict rests on one.
    pub blue_witness_component: Option<usize>,
}

impl VerifyOutcome {
    pub fn to_kv_lines(&self) -> String {
        let mut out = String::new();
        writeln!(out, "blue {}", self.blue.as_str()).unwrap();
        writeln!(out, "red {}", self.red.as_str()).unwrap();
        if let Some(i) = self.blue_witness_component {
            writeln!(out, "blue_witness_component {i}").unwrap();
        }
        writeln!(out, "defeated {}", self.defeated).unwrap();
        out
    }
}

/// Checks a coloring against the host for monochromatic copies of G'.
///
/// Each color class is first checked per component: if some component has
/// no rooted embedding anywhere in the subgraph, that color certainly
/// holds no copy of G'; this check runs at any host size. Only when every
/// component embeds individually does the decision fall back to the
/// desk-scale disjoint packing search; past the guard the verdict is
/// `Undetermined` unless `force` is set.
pub fn verify_coloring(
    host: &Graph,
    coloring: &Coloring,
    gprime: &GPrime,
    force: bool,
) -> Result<VerifyOutcome> {
    coloring.validate_against(host)?;
    let blue_graph = host.edge_subgraph(coloring.blue())?;
    let red_graph = host.edge_subgraph(coloring.red())?;

    let blue_witness_component = missing_component(&blue_graph, gprime)?;
    let blue = match blue_witness_component {
        Some(_) => ColorVerdict::NoCopy,
        None => pack_verdict(&blue_graph, gprime, force)?,
    };
    let red = match missing_component(&red_graph, gprime)? {
        Some(_) => ColorVerdict::NoCopy,
        None => pack_verdict(&red_graph, gprime, force)?,
    };

    Ok(VerifyOutcome {
        blue,
        red,
        defeated: blue == ColorVerdict::NoCopy && red == ColorVerdict::NoCopy,
        blue_witness_component,
    })
}

/// Some component index with no rooted embedding anywhere in `subgraph`,
/// certifying the absence of a monochromatic G' in it.
fn missing_component(subgraph: &Graph, gprime: &GPrime) -> Result<Option<usize>> {
    'components: for i in 0..gprime.h() {
        for v in 0..subgraph.num_vertices() {
            if rooted_embedding_exists(subgraph, gprime.component(i), v)? {
                continue 'components;
            }
        }
        return Ok(Some(i));
    }
    Ok(None)
}

fn pack_verdict(subgraph: &Graph, gprime: &GPrime, force: bool) -> Result<ColorVerdict> {
    match gprime_embeds(subgraph, gprime, force) {
        Ok(true) => Ok(ColorVerdict::ContainsCopy),
        Ok(false) => Ok(ColorVerdict::NoCopy),
        Err(Error::TooLarge(_)) => Ok(ColorVerdict::Undetermined),
        Err(e) => Err(e),
    }
}

/// One audited inequality: instance left-hand and right-hand values plus
/// whether it holds (decided in exact integer arithmetic).
#[derive(Clone, Debug)]
pub struct InequalityRecord {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// The strategy's counting inequalities evaluated on the concrete instance.
#[derive(Clone, Debug)]
pub struct AuditReport {
    pub records: Vec<InequalityRecord>,
    /// `|E_red \ E_high|`.
    pub red_minus_high: usize,
    /// Host vertices of degree >= d + 1.
    pub high_degree_vertices: usize,
    /// Non-isolated vertices of the trimmed host.
    pub non_isolated_trimmed: usize,
    pub host_edges: usize,
}

impl AuditReport {
    pub fn to_kv_lines(&self) -> String {
        let mut out = String::new();
        writeln!(out, "red_minus_high {}", self.red_minus_high).unwrap();
        writeln!(out, "high_degree_vertices {}", self.high_degree_vertices).unwrap();
        writeln!(out, "non_isolated_trimmed {}", self.non_isolated_trimmed).unwrap();
        writeln!(out, "host_edges {}", self.host_edges).unwrap();
        for rec in &self.records {
            writeln!(out, "{}_lhs {}", rec.name, rec.lhs).unwrap();
            writeln!(out, "{}_rhs {}", rec.name, rec.rhs).unwrap();
            writeln!(out, "{}_holds {}", rec.name, rec.holds).unwrap();
        }
        out
    }

    pub fn record(&self, name: &str) -> Option<&InequalityRecord> {
        self.records.iter().find(|r| r.name == name)
    }
}

/// Evaluates the strategy's inequality chain with the instance's actual
/// numbers. The edge budget of the asymptotic argument is instantiated by
/// the host's real edge count, and `|I|` (components forced to use a red
/// non-high edge) by its instance upper bound `min(h, |E_red \ E_high|)`.
pub fn audit_inequalities(
    host: &Graph,
    coloring: &Coloring,
    gprime: &GPrime,
    d: u64,
    r: u64,
) -> Result<AuditReport> {
    coloring.validate_against(host)?;
    if d < 2 {
        return Err(Error::InvalidParameter("d must be >= 2".into()));
    }
    let e_high = high_degree_edges(host, d);
    let trimmed = host.edge_subgraph(&host.edge_set().difference(&e_high))?;

    let m = host.edge_count() as u128;
    let h = gprime.h() as u128;
    let k = gprime.k();
    let red_minus_high = coloring.red().difference(&e_high).len();
    let high_degree_vertices = (0..host.num_vertices())
        .filter(|&v| host.degree(v) as u64 > d)
        .count();
    let non_isolated_trimmed = (0..trimmed.num_vertices())
        .filter(|&v| !trimmed.is_isolated(v))
        .count();

    let pow2_k1 = 1u128 << (k - 1);
    let i_bound = (red_minus_high as u128).min(h);
    let records = vec![
        // |E_red \ E_high| <= d * r * 2m / h.
        InequalityRecord {
            name: "red_extra_vs_budget",
            lhs: red_minus_high as f64,
            rhs: (d as u128 * r as u128 * 2 * m) as f64 / h as f64,
            holds: red_minus_high as u128 * h <= d as u128 * r as u128 * 2 * m,
        },
        // |E_red \ E_high| < h / 2.
        InequalityRecord {
            name: "red_extra_vs_half_h",
            lhs: red_minus_high as f64,
            rhs: h as f64 / 2.0,
            holds: 2 * (red_minus_high as u128) < h,
        },
        // high-degree vertex count >= (h - |I|) * 2^{k-1}.
        InequalityRecord {
            name: "high_degree_lower",
            lhs: high_degree_vertices as f64,
            rhs: ((h - i_bound) * pow2_k1) as f64,
            holds: high_degree_vertices as u128 >= (h - i_bound) * pow2_k1,
        },
        // high-degree vertex count <= 2m / d.
        InequalityRecord {
            name: "high_degree_upper",
            lhs: high_degree_vertices as f64,
            rhs: 2.0 * m as f64 / d as f64,
            holds: high_degree_vertices as u128 * d as u128 <= 2 * m,
        },
        // The contradiction line: (h/2) * 2^{k-1} <= 2m / d. At full scale
        // this fails, which is what defeats a red copy; on a desk instance
        // it may hold.
        InequalityRecord {
            name: "contradiction_chain",
            lhs: h as f64 / 2.0 * pow2_k1 as f64,
            rhs: 2.0 * m as f64 / d as f64,
            holds: h * pow2_k1 * d as u128 <= 4 * m,
        },
    ];

    Ok(AuditReport {
        records,
        red_minus_high,
        high_degree_vertices,
        non_isolated_trimmed,
        host_edges: host.edge_count(),
    })
}
