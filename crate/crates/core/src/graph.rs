//! Temporal multigraph storage, its static projection, and the degeneracy
//! orientation used by the counting engines.
//!
//! Vertices are remapped to dense ids `0..n` in ascending order of their
//! original labels, so comparing dense ids is the same as comparing original
//! ids. Temporal edges get dense ids (`eid`) in `(t, input line)` order.
//!
//! Per-pair edge lists are grouped by unordered vertex pair `{a, b}` with
//! `a < b`. Each pair owns one contiguous run of slots: the `a -> b` edges
//! first, then the `b -> a` edges, each run sorted by `(t, eid)`. Pair ids
//! coincide with static edge ids, which lets the engines hand out disjoint
//! mutable slices per static edge.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::io::{self, BufRead, Write};

use crate::error::GraphError;

/// Dense internal vertex id.
pub type VertexId = u32;
/// Dense temporal edge id.
pub type EdgeId = u32;
/// Timestamp (and duration) unit: seconds.
pub type Timestamp = i64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TemporalEdge {
    pub src: VertexId,
    pub dst: VertexId,
    pub t: Timestamp,
    pub eid: EdgeId,
}

/// Sorted temporal edges of one directed pair `x -> y`.
#[derive(Clone, Copy, Debug)]
pub struct PairList<'a> {
    pub eids: &'a [EdgeId],
    pub times: &'a [Timestamp],
}

impl<'a> PairList<'a> {
    pub const EMPTY: PairList<'static> = PairList { eids: &[], times: &[] };

    pub fn len(&self) -> usize {
        self.eids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eids.is_empty()
    }
}

/// Immutable temporal multigraph.
#[derive(Clone, Debug, Default)]
pub struct TemporalGraph {
    labels: Vec<u64>,
    edges: Vec<TemporalEdge>,
    self_loops_dropped: usize,
    // Unordered pairs (a, b), a < b, sorted lexicographically.
    pair_keys: Vec<(VertexId, VertexId)>,
    // Slot range of pair p is pair_start[p]..pair_start[p + 1];
    // pair_split[p] marks where the b -> a run begins.
    pair_start: Vec<usize>,
    pair_split: Vec<usize>,
    slot_eids: Vec<EdgeId>,
    slot_times: Vec<Timestamp>,
    // Per-vertex range into pair_keys for pairs whose smaller endpoint is v.
    lo_start: Vec<usize>,
}

impl TemporalGraph {
    /// Builds a graph from `(src, dst, t)` triples given in input order.
    /// Self-loops are dropped; parallel edges are kept.
    pub fn from_triples<I>(triples: I) -> Self
    where
        I: IntoIterator<Item = (u64, u64, Timestamp)>,
    {
        let mut raw = Vec::new();
        let mut self_loops = 0usize;
        for (s, d, t) in triples {
            if s == d {
                self_loops += 1;
            } else {
                raw.push((s, d, t));
            }
        }

        let mut labels: Vec<u64> = raw.iter().flat_map(|&(s, d, _)| [s, d]).collect();
        labels.sort_unstable();
        labels.dedup();
        let dense = |x: u64| labels.binary_search(&x).expect("label present") as VertexId;

        // Stable sort keeps input order among equal timestamps.
        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by_key(|&i| raw[i].2);
        let edges: Vec<TemporalEdge> = order
            .iter()
            .enumerate()
            .map(|(eid, &i)| {
                let (s, d, t) = raw[i];
                TemporalEdge { src: dense(s), dst: dense(d), t, eid: eid as EdgeId }
            })
            .collect();

        let mut g = TemporalGraph { labels, edges, self_loops_dropped: self_loops, ..Default::default() };
        g.build_pairs();
        g
    }

    fn build_pairs(&mut self) {
        let n = self.labels.len();
        let key = |e: &TemporalEdge| {
            let (a, b) = if e.src < e.dst { (e.src, e.dst) } else { (e.dst, e.src) };
            ((a as u64) << 32 | b as u64, e.src > e.dst, e.eid)
        };
        let mut slots: Vec<(u64, bool, EdgeId)> = self.edges.iter().map(key).collect();
        slots.sort_unstable();

        self.slot_eids = slots.iter().map(|s| s.2).collect();
        self.slot_times = slots.iter().map(|s| self.edges[s.2 as usize].t).collect();
        self.pair_keys.clear();
        self.pair_start.clear();
        self.pair_split.clear();
        let mut i = 0;
        while i < slots.len() {
            let k = slots[i].0;
            self.pair_keys.push(((k >> 32) as VertexId, k as u32));
            self.pair_start.push(i);
            let mut j = i;
            while j < slots.len() && slots[j].0 == k && !slots[j].1 {
                j += 1;
            }
            self.pair_split.push(j);
            while j < slots.len() && slots[j].0 == k {
                j += 1;
            }
            i = j;
        }
        self.pair_start.push(slots.len());

        self.lo_start = vec![0; n + 1];
        for &(a, _) in &self.pair_keys {
            self.lo_start[a as usize + 1] += 1;
        }
        for v in 0..n {
            self.lo_start[v + 1] += self.lo_start[v];
        }
    }

    /// Parses a whitespace-separated `src dst t` edge list.
    pub fn parse<R: BufRead>(reader: R) -> Result<Self, GraphError> {
        let mut triples = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let line_no = idx + 1;
            let body = line.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            let mut fields = body.split_ascii_whitespace();
            let mut next = |what: &str| {
                fields
                    .next()
                    .ok_or_else(|| GraphError::Parse { line: line_no, message: format!("missing {what} field") })
            };
            let s = next("src")?;
            let d = next("dst")?;
            let t = next("timestamp")?;
            if let Some(extra) = fields.next() {
                return Err(GraphError::Parse {
                    line: line_no,
                    message: format!("unexpected trailing field {extra:?}"),
                });
            }
            let bad =
                |what: &str, tok: &str| GraphError::Parse { line: line_no, message: format!("invalid {what} {tok:?}") };
            let s: u64 = s.parse().map_err(|_| bad("vertex id", s))?;
            let d: u64 = d.parse().map_err(|_| bad("vertex id", d))?;
            let t: Timestamp = t.parse().map_err(|_| bad("timestamp", t))?;
            triples.push((s, d, t));
        }
        Ok(Self::from_triples(triples))
    }

    pub fn parse_str(text: &str) -> Result<Self, GraphError> {
        Self::parse(text.as_bytes())
    }

    /// Writes the canonical edge list (eid order, original labels).
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> io::Result<()> {
        for e in &self.edges {
            writeln!(out, "{} {} {}", self.labels[e.src as usize], self.labels[e.dst as usize], e.t)?;
        }
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn self_loops_dropped(&self) -> usize {
        self.self_loops_dropped
    }

    /// Edges in eid order, which is `(t, input line)` order.
    pub fn edges(&self) -> &[TemporalEdge] {
        &self.edges
    }

    pub fn edge(&self, eid: EdgeId) -> &TemporalEdge {
        &self.edges[eid as usize]
    }

    /// Original label of a dense vertex id.
    pub fn label(&self, v: VertexId) -> u64 {
        self.labels[v as usize]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Dense id of an original label.
    pub fn vertex_of(&self, label: u64) -> Option<VertexId> {
        self.labels.binary_search(&label).ok().map(|i| i as VertexId)
    }

    /// Number of unordered pairs with at least one temporal edge.
    pub fn num_pairs(&self) -> usize {
        self.pair_keys.len()
    }

    pub fn pair_keys(&self) -> &[(VertexId, VertexId)] {
        &self.pair_keys
    }

    /// Pair id of the unordered pair `{x, y}`.
    pub fn pair_id(&self, x: VertexId, y: VertexId) -> Option<usize> {
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        if a as usize >= self.labels.len() {
            return None;
        }
        let lo = self.lo_start[a as usize];
        let hi = self.lo_start[a as usize + 1];
        self.pair_keys[lo..hi].binary_search_by_key(&b, |&(_, b)| b).ok().map(|i| lo + i)
    }

    /// Slot range of pair `p` (both directions).
    pub fn pair_slots(&self, p: usize) -> std::ops::Range<usize> {
        self.pair_start[p]..self.pair_start[p + 1]
    }

    /// Directed list of pair `p`; `forward` selects `a -> b` where `a < b`.
    pub fn pair_dir(&self, p: usize, forward: bool) -> PairList<'_> {
        let r =
            if forward { self.pair_start[p]..self.pair_split[p] } else { self.pair_split[p]..self.pair_start[p + 1] };
        PairList { eids: &self.slot_eids[r.clone()], times: &self.slot_times[r] }
    }

    /// Number of edges `a -> b` in pair `p` (the forward run).
    pub fn pair_forward_len(&self, p: usize) -> usize {
        self.pair_split[p] - self.pair_start[p]
    }

    /// `E_{x,y}`: sorted edges from `x` to `y` (empty when absent).
    pub fn pair_list(&self, x: VertexId, y: VertexId) -> PairList<'_> {
        match self.pair_id(x, y) {
            Some(p) => self.pair_dir(p, x < y),
            None => PairList::EMPTY,
        }
    }

    /// Same as [`pair_list`](Self::pair_list) for a known pair id.
    pub fn pair_list_in(&self, p: usize, x: VertexId) -> PairList<'_> {
        self.pair_dir(p, self.pair_keys[p].0 == x)
    }

    /// `σ(x, y)`: number of edges from `x` to `y`.
    pub fn multiplicity(&self, x: VertexId, y: VertexId) -> usize {
        self.pair_list(x, y).len()
    }

    pub fn slot_eids(&self) -> &[EdgeId] {
        &self.slot_eids
    }

    pub fn slot_times(&self) -> &[Timestamp] {
        &self.slot_times
    }

    /// `σ_max`: largest total multiplicity over unordered pairs.
    pub fn sigma_max(&self) -> usize {
        self.pair_start.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0)
    }
}

/// Undirected simple projection `G_S`. Static edge ids equal pair ids of the
/// temporal graph it was built from.
#[derive(Clone, Debug, Default)]
pub struct StaticGraph {
    adj_start: Vec<usize>,
    adj: Vec<VertexId>,
    adj_edge: Vec<u32>,
    edges: Vec<(VertexId, VertexId)>,
    degrees: Vec<u32>,
    edge_degree: Vec<u32>,
    common_count: Vec<u32>,
}

impl StaticGraph {
    pub fn build(g: &TemporalGraph) -> Self {
        let n = g.num_vertices();
        let edges = g.pair_keys().to_vec();
        let mut degrees = vec![0u32; n];
        for &(a, b) in &edges {
            degrees[a as usize] += 1;
            degrees[b as usize] += 1;
        }
        let mut adj_start = vec![0usize; n + 1];
        for v in 0..n {
            adj_start[v + 1] = adj_start[v] + degrees[v] as usize;
        }
        let mut fill = adj_start.clone();
        let mut adj = vec![0; adj_start[n]];
        let mut adj_edge = vec![0; adj_start[n]];
        for (id, &(a, b)) in edges.iter().enumerate() {
            for (x, y) in [(a, b), (b, a)] {
                let slot = fill[x as usize];
                adj[slot] = y;
                adj_edge[slot] = id as u32;
                fill[x as usize] += 1;
            }
        }
        // Neighbors below and above v arrive interleaved; sort each run.
        for v in 0..n {
            let r = adj_start[v]..adj_start[v + 1];
            let mut run: Vec<(VertexId, u32)> =
                adj[r.clone()].iter().copied().zip(adj_edge[r.clone()].iter().copied()).collect();
            run.sort_unstable();
            for (k, (y, e)) in run.into_iter().enumerate() {
                adj[r.start + k] = y;
                adj_edge[r.start + k] = e;
            }
        }

        let mut s = StaticGraph {
            adj_start,
            adj,
            adj_edge,
            edge_degree: edges.iter().map(|&(a, b)| degrees[a as usize].min(degrees[b as usize])).collect(),
            edges,
            degrees,
            common_count: Vec::new(),
        };
        s.common_count = (0..s.edges.len()).map(|e| s.count_common(e)).collect();
        s
    }

    // Walk the lower-degree endpoint's neighbors and probe the other side.
    fn count_common(&self, e: usize) -> u32 {
        let (x, y) = self.lower_degree_endpoint(e);
        self.neighbors(x).iter().filter(|&&w| w != y && self.is_adjacent(y, w)).count() as u32
    }

    /// Endpoints of static edge `e` as (lower-degree, other); ties go to the
    /// smaller id.
    pub fn lower_degree_endpoint(&self, e: usize) -> (VertexId, VertexId) {
        let (a, b) = self.edges[e];
        if self.degrees[b as usize] < self.degrees[a as usize] {
            (b, a)
        } else {
            (a, b)
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.degrees.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// `N(v)`, sorted ascending.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[self.adj_start[v as usize]..self.adj_start[v as usize + 1]]
    }

    /// Static edge ids parallel to [`neighbors`](Self::neighbors).
    pub fn neighbor_edges(&self, v: VertexId) -> &[u32] {
        &self.adj_edge[self.adj_start[v as usize]..self.adj_start[v as usize + 1]]
    }

    pub fn degree(&self, v: VertexId) -> u32 {
        self.degrees[v as usize]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge_id(&self, x: VertexId, y: VertexId) -> Option<usize> {
        let nb = self.neighbors(x);
        nb.binary_search(&y).ok().map(|i| self.neighbor_edges(x)[i] as usize)
    }

    pub fn is_adjacent(&self, x: VertexId, y: VertexId) -> bool {
        self.neighbors(x).binary_search(&y).is_ok()
    }

    /// `d_e` for every static edge.
    pub fn edge_degrees(&self) -> &[u32] {
        &self.edge_degree
    }

    /// `c_uv = |N(u) ∩ N(v)|` for every static edge.
    pub fn common_counts(&self) -> &[u32] {
        &self.common_count
    }
}

/// Degeneracy ordering and the acyclic orientation it induces.
#[derive(Clone, Debug, Default)]
pub struct DegeneracyOrdering {
    rank: Vec<u32>,
    order: Vec<VertexId>,
    alpha: u32,
    out_start: Vec<usize>,
    out_adj: Vec<VertexId>,
    out_edge: Vec<u32>,
}

impl DegeneracyOrdering {
    /// Matula–Beck peeling: repeatedly remove a minimum residual-degree
    /// vertex, breaking ties by the smaller id.
    ///
    /// Buckets are indexed by residual degree and hold min-heaps keyed by
    /// vertex id with lazy deletion, so the exact tie rule costs a log factor
    /// over the plain bucket queue.
    pub fn compute(s: &StaticGraph) -> Self {
        let n = s.num_vertices();
        let mut residual: Vec<u32> = s.degrees().to_vec();
        let max_deg = residual.iter().copied().max().unwrap_or(0) as usize;
        let mut buckets: Vec<BinaryHeap<Reverse<VertexId>>> = vec![BinaryHeap::new(); max_deg + 1];
        for v in 0..n {
            buckets[residual[v] as usize].push(Reverse(v as VertexId));
        }
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut alpha = 0u32;
        let mut cur = 0usize;
        while order.len() < n {
            // Residual degrees only drop by one per neighbor removal, so the
            // minimum bucket never falls more than one below the last one.
            let v = loop {
                match buckets[cur].pop() {
                    Some(Reverse(v)) if !removed[v as usize] && residual[v as usize] as usize == cur => break v,
                    Some(_) => continue,
                    None => cur += 1,
                }
            };
            removed[v as usize] = true;
            alpha = alpha.max(residual[v as usize]);
            order.push(v);
            for &w in s.neighbors(v) {
                if !removed[w as usize] {
                    residual[w as usize] -= 1;
                    buckets[residual[w as usize] as usize].push(Reverse(w));
                }
            }
            cur = cur.saturating_sub(1);
        }

        let mut rank = vec![0u32; n];
        for (i, &v) in order.iter().enumerate() {
            rank[v as usize] = i as u32;
        }
        let mut out_start = vec![0usize; n + 1];
        let mut out_adj = Vec::with_capacity(s.num_edges());
        let mut out_edge = Vec::with_capacity(s.num_edges());
        for v in 0..n {
            for (&w, &e) in s.neighbors(v as VertexId).iter().zip(s.neighbor_edges(v as VertexId)) {
                if rank[w as usize] > rank[v] {
                    out_adj.push(w);
                    out_edge.push(e);
                }
            }
            out_start[v + 1] = out_adj.len();
        }
        DegeneracyOrdering { rank, order, alpha, out_start, out_adj, out_edge }
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    /// `π(v)`: position of `v` in the removal order.
    pub fn rank(&self, v: VertexId) -> u32 {
        self.rank[v as usize]
    }

    pub fn ranks(&self) -> &[u32] {
        &self.rank
    }

    /// Vertices in removal order.
    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    /// `N+_π(v)`, sorted by vertex id.
    pub fn out_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.out_adj[self.out_start[v as usize]..self.out_start[v as usize + 1]]
    }

    /// Static edge ids parallel to [`out_neighbors`](Self::out_neighbors).
    pub fn out_edges(&self, v: VertexId) -> &[u32] {
        &self.out_edge[self.out_start[v as usize]..self.out_start[v as usize + 1]]
    }

    /// Source `s_e` of an edge between `x` and `y`: the endpoint ranked first.
    pub fn source(&self, x: VertexId, y: VertexId) -> VertexId {
        if self.rank[x as usize] < self.rank[y as usize] {
            x
        } else {
            y
        }
    }
}

/// Read-only summary of a loaded graph.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub static_edges: usize,
    pub alpha: u32,
    pub sigma_max: usize,
    /// `Σ_e d_e` over static edges.
    pub sum_edge_degree: u64,
    pub self_loops_dropped: usize,
}

pub fn stats(g: &TemporalGraph, s: &StaticGraph, ord: &DegeneracyOrdering) -> GraphStats {
    GraphStats {
        n: g.num_vertices(),
        m: g.num_edges(),
        static_edges: s.num_edges(),
        alpha: ord.alpha(),
        sigma_max: g.sigma_max(),
        sum_edge_degree: s.edge_degrees().iter().map(|&d| d as u64).sum(),
        self_loops_dropped: g.self_loops_dropped(),
    }
}

/// A temporal graph bundled with the derived structures every engine needs.
#[derive(Clone, Debug, Default)]
pub struct PreparedGraph {
    pub temporal: TemporalGraph,
    pub static_graph: StaticGraph,
    pub ordering: DegeneracyOrdering,
}

impl PreparedGraph {
    pub fn new(temporal: TemporalGraph) -> Self {
        let static_graph = StaticGraph::build(&temporal);
        let ordering = DegeneracyOrdering::compute(&static_graph);
        PreparedGraph { temporal, static_graph, ordering }
    }

    pub fn stats(&self) -> GraphStats {
        stats(&self.temporal, &self.static_graph, &self.ordering)
    }
}
