//! Batch CLI wiring all modules together: graph generation, embedding
//! queries, coloring, verification, estimation and bound evaluation. All
//! randomness flows through explicit `--seed` flags; output is line-oriented
//! `key value` text.
//!
//! Exit codes: 0 success, 1 domain error (prefixed with its stable error
//! code on stderr), 2 usage error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;

use ramsey_core::{
    analysis, audit_inequalities, build_coloring, estimate_rooted_prob_parallel,
    exact_rooted_probability, failure_bound, params_from_log_n, random_regular, root_candidates,
    rooted_embedding, verify_coloring, Coloring, GPrime, Graph, HCount, Result, Rng, UkGraph,
};

#[derive(Parser)]
#[command(name = "ramsey", version, about = "Size-Ramsey lower-bound toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a realization of U_k and write it as a graph file.
    GenUk {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate G' (h independent U_k copies plus padding) as a bundle file.
    GenGprime {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a random regular host graph via the pairing model.
    GenHost {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the parameter formulas d, k, r, h at a given log n.
    Params {
        #[arg(long)]
        log_n: f64,
    },
    /// Search for a rooted embedding of a U_k pattern in a host.
    Embed {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
        /// Host vertex the pattern root must map to; without it, all
        /// viable root vertices are listed.
        #[arg(long)]
        root: Option<usize>,
        /// Print the witness map when an embedding exists.
        #[arg(long)]
        witness: bool,
    },
    /// Build the adversarial coloring of a host against a G'.
    Color {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        gprime: PathBuf,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a coloring: does either color class contain a copy of G'?
    Verify {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        gprime: PathBuf,
        /// Run the disjoint packing search even past the desk-scale guard.
        #[arg(long)]
        force_large: bool,
    },
    /// Monte Carlo estimate of the rooted-embedding probability at a vertex.
    Estimate {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        vertex: usize,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Exact rooted-embedding probability by full cycle enumeration.
    Exact {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        vertex: usize,
        #[arg(long)]
        k: u32,
    },
    /// Evaluate the probability bounds in log space.
    Bounds {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        r: Option<u64>,
        #[arg(long)]
        h: Option<u64>,
    },
    /// Audit the strategy's counting inequalities on a concrete instance.
    Audit {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        gprime: PathBuf,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        r: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}: {e}", e.code());
            ExitCode::FAILURE
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn load_graph(path: &Path) -> Result<Graph> {
    Graph::parse(&fs::read_to_string(path)?)
}

fn load_uk(path: &Path) -> Result<UkGraph> {
    UkGraph::from_heap_graph(load_graph(path)?)
}

fn load_gprime(path: &Path) -> Result<GPrime> {
    GPrime::parse(&fs::read_to_string(path)?)
}

fn load_coloring(path: &Path) -> Result<Coloring> {
    Coloring::parse(&fs::read_to_string(path)?)
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::GenUk { k, seed, out } => {
            let uk = UkGraph::build(k, &mut Rng::new(seed))?;
            emit(&out, &uk.graph().serialize())
        }
        Command::GenGprime { n, k, seed, out } => {
            let gp = GPrime::build(n, k, seed)?;
            emit(&out, &gp.serialize())
        }
        Command::GenHost {
            vertices,
            degree,
            seed,
            out,
        } => {
            let host = random_regular(vertices, degree, seed)?;
            emit(&out, &host.serialize())
        }
        Command::Params { log_n } => {
            let p = params_from_log_n(log_n)?;
            println!("d {}", p.d);
            println!("k {}", p.k);
            println!("r {}", p.r);
            match &p.h {
                HCount::Exact(h) => {
                    println!("h {h}");
                    println!("h_floor_applied true");
                }
                HCount::Log { ln_h } => {
                    println!("log_h {ln_h:.6}");
                    println!("h_floor_applied false");
                }
            }
            println!("r_le_h {}", p.r_le_h);
            println!(
                "min_log_n_for_d2 {:.6}",
                ramsey_core::construct::min_log_n_for_d2()
            );
            Ok(())
        }
        Command::Embed {
            host,
            pattern,
            root,
            witness,
        } => {
            let host = load_graph(&host)?;
            let pattern = load_uk(&pattern)?;
            match root {
                Some(v) => {
                    let found = rooted_embedding(&host, &pattern, v)?;
                    println!("exists {}", found.is_some());
                    if witness {
                        if let Some(embedding) = found {
                            print!("{}", embedding.serialize());
                        }
                    }
                }
                None => {
                    let candidates = root_candidates(&host, &pattern);
                    println!("candidate_count {}", candidates.len());
                    let ids: Vec<String> =
                        candidates.iter().map(|v| v.to_string()).collect();
                    println!("candidates {}", ids.join(" "));
                }
            }
            Ok(())
        }
        Command::Color {
            host,
            gprime,
            d,
            r,
            out,
        } => {
            let host = load_graph(&host)?;
            let gp = load_gprime(&gprime)?;
            let (coloring, report) = build_coloring(&host, &gp, d, r)?;
            match &out {
                Some(path) => {
                    fs::write(path, coloring.serialize())?;
                    print!("{}", report.to_kv_lines());
                }
                None => {
                    print!("{}", coloring.serialize());
                    eprint!("{}", report.to_kv_lines());
                }
            }
            Ok(())
        }
        Command::Verify {
            host,
            coloring,
            gprime,
            force_large,
        } => {
            let host = load_graph(&host)?;
            let coloring = load_coloring(&coloring)?;
            let gp = load_gprime(&gprime)?;
            let outcome = verify_coloring(&host, &coloring, &gp, force_large)?;
            print!("{}", outcome.to_kv_lines());
            Ok(())
        }
        Command::Estimate {
            host,
            vertex,
            k,
            trials,
            seed,
        } => {
            let host = load_graph(&host)?;
            let est = estimate_rooted_prob_parallel(&host, vertex, k, trials, seed)?;
            println!("p_hat {:.6}", est.p_hat);
            println!("trials {}", est.trials);
            println!("half_width_95 {:.6}", est.half_width_95);
            Ok(())
        }
        Command::Exact { host, vertex, k } => {
            let host = load_graph(&host)?;
            let p = exact_rooted_probability(&host, vertex, k)?;
            println!("probability {}/{}", p.numer(), p.denom());
            println!("probability_decimal {:.6}", analysis::probability_to_f64(&p));
            Ok(())
        }
        Command::Bounds { d, k, r, h } => {
            let lemma = analysis::lemma_bound(d, k)?;
            println!("lemma_bound_log10 {:.6}", lemma.log10_mag());
            let ext = analysis::extension_bound(d, k)?;
            println!("extension_bound_log10 {:.6}", ext.log10_mag());
            if let Some(r) = r {
                let r_big = BigUint::from(r);
                let cor = analysis::corollary_bound(d, k, &r_big)?;
                println!("corollary_bound_log10 {:.6}", cor.log10_mag());
                if let Some(h) = h {
                    let fb = failure_bound(&HCount::Exact(BigUint::from(h)), &r_big, d, k)?;
                    if let Some(exact) = &fb.exact_term {
                        println!("failure_exact_log10 {:.6}", exact.log10_mag());
                        println!(
                            "failure_exact_certified {}",
                            fb.exact_certified.unwrap_or(false)
                        );
                    }
                    println!(
                        "failure_simplified_log10 {:.6}",
                        fb.simplified_term.log10_mag()
                    );
                    println!("failure_simplified_certified {}", fb.simplified_certified);
                }
            }
            Ok(())
        }
        Command::Audit {
            host,
            coloring,
            gprime,
            d,
            r,
        } => {
            let host = load_graph(&host)?;
            let coloring = load_coloring(&coloring)?;
            let gp = load_gprime(&gprime)?;
            let audit = audit_inequalities(&host, &coloring, &gp, d, r)?;
            print!("{}", audit.to_kv_lines());
            Ok(())
        }
    }
}

