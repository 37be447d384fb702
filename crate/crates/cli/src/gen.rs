//! Seeded random graphs (Erdős–Rényi style).

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use evoderive_core::Graph;

pub const MAX_RETRIES: usize = 1000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("vertex count must be at least 1")]
    NoVertices,
    #[error("{n} vertices is above the cap of {max_n}")]
    TooLarge { n: usize, max_n: usize },
    #[error("edge probability {0} is outside [0, 1]")]
    Probability(f64),
    #[error("no connected sample in {0} attempts")]
    RetriesExhausted(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenOptions {
    pub n: usize,
    pub edge_prob: f64,
    pub seed: u64,
    pub connected: bool,
}

/// Each pair `i < j` becomes an edge with probability `p`.
pub fn sample_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::from_edges(n, edges).expect("simple edges")
}

/// Samples until `accept` holds, giving up after [`MAX_RETRIES`] tries.
pub fn sample_until<R: Rng>(
    rng: &mut R,
    n: usize,
    p: f64,
    accept: impl Fn(&Graph) -> bool,
) -> Option<Graph> {
    (0..MAX_RETRIES)
        .map(|_| sample_graph(rng, n, p))
        .find(|g| accept(g))
}

pub fn generate(opts: &GenOptions, max_n: usize) -> Result<Graph, GenError> {
    if opts.n == 0 {
        return Err(GenError::NoVertices);
    }
    if opts.n > max_n {
        return Err(GenError::TooLarge { n: opts.n, max_n });
    }
    if !(0.0..=1.0).contains(&opts.edge_prob) {
        return Err(GenError::Probability(opts.edge_prob));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    if opts.connected {
        sample_until(&mut rng, opts.n, opts.edge_prob, Graph::is_connected)
            .ok_or(GenError::RetriesExhausted(MAX_RETRIES))
    } else {
        Ok(sample_graph(&mut rng, opts.n, opts.edge_prob))
    }
}
