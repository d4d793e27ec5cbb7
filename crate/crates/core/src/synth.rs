//! Seeded synthetic temporal graphs for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{TemporalGraph, Timestamp};

/// Shape limits for [`random_triples`].
#[derive(Clone, Copy, Debug)]
pub struct RandomParams {
    pub max_vertices: u64,
    pub max_edges: usize,
    pub t_max: Timestamp,
    pub max_multiplicity: usize,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams { max_vertices: 30, max_edges: 300, t_max: 100, max_multiplicity: 5 }
    }
}

/// Random `(src, dst, t)` triples: up to `max_vertices` labels, at most
/// `max_multiplicity` edges per unordered pair, timestamps uniform in
/// `[0, t_max]`, in random line order.
pub fn random_triples(seed: u64, p: &RandomParams) -> Vec<(u64, u64, Timestamp)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=p.max_vertices.max(2));
    let target = rng.gen_range(0..=p.max_edges);
    let mut pairs: Vec<(u64, u64)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    pairs.shuffle(&mut rng);
    // Favour dense neighbourhoods so triangles are common.
    let keep = rng.gen_range(pairs.len().min(3)..=pairs.len());
    pairs.truncate(keep);

    let mut out = Vec::with_capacity(target);
    let mut room = vec![p.max_multiplicity; pairs.len()];
    while out.len() < target && room.iter().any(|&r| r > 0) {
        let i = rng.gen_range(0..pairs.len());
        if room[i] == 0 {
            continue;
        }
        let burst = rng.gen_range(1..=room[i]).min(target - out.len());
        room[i] -= burst;
        let (a, b) = pairs[i];
        for _ in 0..burst {
            let t = rng.gen_range(0..=p.t_max);
            out.push(if rng.gen_bool(0.5) { (a, b, t) } else { (b, a, t) });
        }
    }
    out.shuffle(&mut rng);
    out
}

pub fn random_graph(seed: u64, p: &RandomParams) -> TemporalGraph {
    TemporalGraph::from_triples(random_triples(seed, p))
}

/// A random graph whose static projection has degeneracy exactly `k`:
/// a `(k+1)`-clique seed, then every later vertex attaches to `k` random
/// earlier ones. Each static edge carries `multiplicity` temporal edges with
/// timestamps uniform in `[0, t_max]`; vertices are added until `m`
/// temporal edges exist.
pub fn k_degenerate_graph(seed: u64, k: usize, m: usize, multiplicity: usize, t_max: Timestamp) -> TemporalGraph {
    assert!(k >= 1 && multiplicity >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    for a in 0..=k as u64 {
        for b in a + 1..=k as u64 {
            pairs.push((a, b));
        }
    }
    let mut v = k as u64 + 1;
    while pairs.len() * multiplicity < m {
        for w in rand::seq::index::sample(&mut rng, v as usize, k) {
            pairs.push((w as u64, v));
        }
        v += 1;
    }
    let mut triples = Vec::with_capacity(pairs.len() * multiplicity);
    for (a, b) in pairs {
        for _ in 0..multiplicity {
            let t = rng.gen_range(0..=t_max);
            triples.push(if rng.gen_bool(0.5) { (a, b, t) } else { (b, a, t) });
        }
    }
    triples.truncate(m.max(1));
    TemporalGraph::from_triples(triples)
}

/// Dense communities of `size` vertices with sparse links between them.
/// Each intra-community pair is present with probability `p_in` and carries
/// `1..=max_multiplicity` edges; timestamps are uniform in `[0, t_max]`.
/// Communities are added until at least `m` temporal edges exist.
pub fn community_graph(
    seed: u64,
    m: usize,
    size: u64,
    p_in: f64,
    max_multiplicity: usize,
    t_max: Timestamp,
) -> TemporalGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut triples = Vec::with_capacity(m);
    let mut base = 0u64;
    let push = |rng: &mut ChaCha8Rng, out: &mut Vec<_>, a: u64, b: u64| {
        for _ in 0..rng.gen_range(1..=max_multiplicity) {
            let t = rng.gen_range(0..=t_max);
            out.push(if rng.gen_bool(0.5) { (a, b, t) } else { (b, a, t) });
        }
    };
    while triples.len() < m {
        for a in base..base + size {
            for b in a + 1..base + size {
                if rng.gen_bool(p_in) {
                    push(&mut rng, &mut triples, a, b);
                }
            }
            if base > 0 {
                let other = rng.gen_range(0..base);
                push(&mut rng, &mut triples, a, other);
            }
        }
        base += size;
    }
    triples.truncate(m);
    TemporalGraph::from_triples(triples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::PreparedGraph;

    #[test]
    fn random_graphs_respect_limits() {
        let p = RandomParams::default();
        for seed in 0..50 {
            let g = random_graph(seed, &p);
            assert!(g.num_vertices() <= 30 && g.num_edges() <= 300);
            assert!(g.edges().iter().all(|e| (0..=100).contains(&e.t)));
            assert!(g.sigma_max() <= 5);
            assert_eq!(random_triples(seed, &p), random_triples(seed, &p));
        }
    }

    #[test]
    fn k_degenerate_has_alpha_k() {
        for k in [2, 4, 8] {
            let g = PreparedGraph::new(k_degenerate_graph(7, k, 4000, 4, 10_000));
            assert_eq!(g.ordering.alpha() as usize, k);
            assert_eq!(g.temporal.num_edges(), 4000);
        }
    }
}
