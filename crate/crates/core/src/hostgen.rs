//! Random bounded-degree host graphs via the pairing model.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::Rng;

/// Random `degree`-regular graph on `num_vertices` vertices: each vertex gets
/// `degree` stubs, the stubs are shuffled and paired consecutively, and the
/// whole configuration is resampled if it contains a loop or multi-edge.
/// Deterministic per seed.
pub fn random_regular(num_vertices: usize, degree: usize, seed: u64) -> Result<Graph> {
    if degree >= num_vertices {
        return Err(Error::InvalidParameter(format!(
            "degree {degree} must be smaller than the vertex count {num_vertices}"
        )));
    }
    if !(num_vertices * degree).is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "degree * num_vertices = {} must be even",
            num_vertices * degree
        )));
    }
    if degree == 0 {
        return Ok(Graph::edgeless(num_vertices));
    }

    let mut rng = Rng::new(seed);
    let mut stubs: Vec<usize> = (0..num_vertices)
        .flat_map(|v| std::iter::repeat_n(v, degree))
        .collect();

    'resample: loop {
        rng.shuffle(&mut stubs);
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(stubs.len() / 2);
        for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v {
                continue 'resample;
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            continue 'resample;
        }
        return Graph::build(num_vertices, &edges);
    }
}
