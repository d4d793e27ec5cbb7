//! Brute-force reference: the triangle predicate checked by exhaustive scan
//! over the raw edge list, with its own adjacency and thresholding.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::OracleError;
use crate::graph::{TemporalGraph, Timestamp, VertexId};
use crate::query::{Certificate, QuerySpec, SolutionSet, Threshold, Universe, VertexSolution};

pub const DEFAULT_CEILING: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Witness {
    pub w: VertexId,
    pub t2: Timestamp,
    pub t3: Timestamp,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleCounts {
    /// Distinct matching `w` per eid.
    pub counts: Vec<u32>,
    /// Per eid, one `(w, t2, t3)` for each matching `w` in id order, using
    /// the first `t2` that works and then the first `t3`.
    pub witnesses: Option<Vec<Vec<Witness>>>,
}

#[derive(Clone, Copy, Debug)]
pub struct OracleConfig {
    pub ceiling: usize,
    pub witnesses: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { ceiling: DEFAULT_CEILING, witnesses: false }
    }
}

struct Adjacency {
    lists: BTreeMap<(VertexId, VertexId), Vec<Timestamp>>,
    nbrs: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

impl Adjacency {
    fn new(g: &TemporalGraph) -> Self {
        let mut lists: BTreeMap<_, Vec<_>> = BTreeMap::new();
        let mut nbrs: BTreeMap<_, BTreeSet<_>> = BTreeMap::new();
        for e in g.edges() {
            lists.entry((e.src, e.dst)).or_default().push(e.t);
            nbrs.entry(e.src).or_default().insert(e.dst);
            nbrs.entry(e.dst).or_default().insert(e.src);
        }
        Adjacency { lists, nbrs }
    }

    fn list(&self, x: VertexId, y: VertexId) -> &[Timestamp] {
        self.lists.get(&(x, y)).map_or(&[], Vec::as_slice)
    }

    fn neighbors(&self, x: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.nbrs.get(&x).into_iter().flatten().copied()
    }

    fn degree(&self, x: VertexId) -> usize {
        self.nbrs.get(&x).map_or(0, BTreeSet::len)
    }

    fn common(&self, x: VertexId, y: VertexId) -> usize {
        self.neighbors(x).filter(|w| self.nbrs[&y].contains(w)).count()
    }
}

fn check(g: &TemporalGraph, ceiling: usize) -> Result<(), OracleError> {
    if g.num_edges() > ceiling {
        return Err(OracleError::CeilingExceeded { edges: g.num_edges(), ceiling });
    }
    Ok(())
}

pub fn oracle_counts(g: &TemporalGraph, delta: Timestamp) -> Result<OracleCounts, OracleError> {
    oracle_counts_with(g, delta, &OracleConfig::default())
}

pub fn oracle_counts_with(
    g: &TemporalGraph,
    delta: Timestamp,
    cfg: &OracleConfig,
) -> Result<OracleCounts, OracleError> {
    check(g, cfg.ceiling)?;
    let adj = Adjacency::new(g);
    let mut counts = vec![0u32; g.num_edges()];
    let mut witnesses = cfg.witnesses.then(|| vec![Vec::new(); g.num_edges()]);
    for e in g.edges() {
        let (x, y, t) = (e.src, e.dst, e.t);
        for w in adj.neighbors(x) {
            if w == y || !adj.nbrs[&y].contains(&w) {
                continue;
            }
            let mut found = None;
            'search: for &t2 in adj.list(x, w) {
                for &t3 in adj.list(y, w) {
                    if t <= t2 && t2 <= t3 && (t3 as i128 - t as i128) <= delta as i128 {
                        found = Some(Witness { w, t2, t3 });
                        break 'search;
                    }
                }
            }
            if let Some(wit) = found {
                counts[e.eid as usize] += 1;
                if let Some(ws) = witnesses.as_mut() {
                    ws[e.eid as usize].push(wit);
                }
            }
        }
    }
    Ok(OracleCounts { counts, witnesses })
}

fn meets(tau: Threshold, count: usize, size: usize) -> bool {
    (count as u128) * (tau.denom() as u128) >= (tau.numer() as u128) * (size as u128)
}

fn oracle_certificates(
    g: &TemporalGraph,
    adj: &Adjacency,
    counts: &[u32],
    tau: Threshold,
    universe: Universe,
) -> Vec<Certificate> {
    let mut out: Vec<Certificate> = g
        .edges()
        .iter()
        .filter_map(|e| {
            let count = counts[e.eid as usize];
            let size = match universe {
                Universe::Dst => adj.degree(e.dst),
                Universe::Common => adj.common(e.src, e.dst),
            };
            (count >= 1 && meets(tau, count as usize, size)).then(|| Certificate {
                src: g.label(e.src),
                dst: g.label(e.dst),
                t: e.t,
                eid: e.eid,
                count,
                universe_size: size as u32,
            })
        })
        .collect();
    out.sort_by_key(|c| (c.t, c.eid));
    out
}

fn oracle_vertices(
    g: &TemporalGraph,
    adj: &Adjacency,
    tau: Threshold,
    good: impl Fn(usize) -> bool,
) -> Vec<VertexSolution> {
    let mut satisfied: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
    for e in g.edges().iter().filter(|e| good(e.eid as usize)) {
        satisfied.entry(e.src).or_default().insert(e.dst);
    }
    let mut out: Vec<VertexSolution> = satisfied
        .into_iter()
        .filter(|(u, vs)| meets(tau, vs.len(), adj.degree(*u)))
        .map(|(u, vs)| VertexSolution {
            vertex: g.label(u),
            satisfied_neighbors: vs.len() as u32,
            degree: adj.degree(u) as u32,
        })
        .collect();
    out.sort_by_key(|v| v.vertex);
    out
}

pub fn oracle_solutions(g: &TemporalGraph, spec: &QuerySpec) -> Result<SolutionSet, OracleError> {
    oracle_solutions_with(g, spec, DEFAULT_CEILING)
}

pub fn oracle_solutions_with(g: &TemporalGraph, spec: &QuerySpec, ceiling: usize) -> Result<SolutionSet, OracleError> {
    let cfg = OracleConfig { ceiling, witnesses: false };
    let counts = oracle_counts_with(g, spec.delta(), &cfg)?.counts;
    let adj = Adjacency::new(g);
    Ok(match *spec {
        QuerySpec::Eea { tau, universe, .. } => {
            SolutionSet::Certificates(oracle_certificates(g, &adj, &counts, tau, universe))
        }
        QuerySpec::Eae { tau, .. } => SolutionSet::Vertices(oracle_vertices(g, &adj, tau, |e| counts[e] >= 1)),
        QuerySpec::Eaa { tau1, tau2, universe, .. } => {
            let certs: BTreeSet<usize> =
                oracle_certificates(g, &adj, &counts, tau2, universe).iter().map(|c| c.eid as usize).collect();
            SolutionSet::Vertices(oracle_vertices(g, &adj, tau1, |e| certs.contains(&e)))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(text: &str) -> TemporalGraph {
        TemporalGraph::parse_str(text).unwrap()
    }

    #[test]
    fn triangle_counts() {
        let tri = g("1 2 10\n1 3 12\n2 3 15\n");
        assert_eq!(oracle_counts(&tri, 10).unwrap().counts, vec![1, 0, 0]);
        assert_eq!(oracle_counts(&tri, 4).unwrap().counts, vec![0, 0, 0]);
        assert_eq!(oracle_counts(&g("1 2 1\n2 3 2\n3 4 3\n4 1 4\n"), 100).unwrap().counts, vec![0; 4]);
    }

    #[test]
    fn counts_distinct_third_vertices() {
        // Many (e2, e3) pairs through 3 and through 4, still two vertices.
        let text = "1 2 10\n1 3 11\n1 3 12\n1 3 13\n2 3 14\n2 3 15\n1 4 11\n1 4 12\n2 4 13\n2 4 14\n";
        let cfg = OracleConfig { witnesses: true, ..Default::default() };
        let out = oracle_counts_with(&g(text), 10, &cfg).unwrap();
        assert_eq!(out.counts[0], 2);
        let ws = &out.witnesses.unwrap()[0];
        assert_eq!(ws, &vec![Witness { w: 2, t2: 11, t3: 14 }, Witness { w: 3, t2: 11, t3: 13 }]);
    }

    #[test]
    fn ceiling() {
        let tri = g("1 2 10\n1 3 12\n2 3 15\n");
        let cfg = OracleConfig { ceiling: 2, witnesses: false };
        assert_eq!(oracle_counts_with(&tri, 1, &cfg), Err(OracleError::CeilingExceeded { edges: 3, ceiling: 2 }));
    }

    #[test]
    fn solutions_on_triangle() {
        let tri = g("1 2 10\n1 3 12\n2 3 15\n");
        let half: Threshold = "1/2".parse().unwrap();
        let eea = QuerySpec::Eea { delta: 10, tau: half, universe: Universe::Dst };
        assert_eq!(oracle_solutions(&tri, &eea).unwrap().keys(), vec![0]);
        let eea1 = QuerySpec::Eea { delta: 10, tau: Threshold::ONE, universe: Universe::Dst };
        assert!(oracle_solutions(&tri, &eea1).unwrap().is_empty());
        let eae = QuerySpec::Eae { delta: 10, tau: half };
        assert_eq!(oracle_solutions(&tri, &eae).unwrap().keys(), vec![1]);
        let eaa = QuerySpec::Eaa { delta: 10, tau1: half, tau2: half, universe: Universe::Dst };
        assert_eq!(oracle_solutions(&tri, &eaa).unwrap().keys(), vec![1]);
    }
}
