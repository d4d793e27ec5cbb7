//! Orientation-based counting of triangle-forming common neighbors.
//!
//! For a temporal edge `e = (x, y, t)` a common neighbor `w` matches when
//! there are edges `(x, w, t2)` and `(y, w, t3)` with
//! `t <= t2 <= t3 <= t + delta`. The neighbors of the source `s_e` (the
//! endpoint ranked first in the degeneracy order) split into out-neighbors,
//! handled by scanning the short oriented lists, and in-neighbors, handled by
//! interval insertion into per-pair segment trees.

use crate::exec::Execution;
use crate::graph::{DegeneracyOrdering, EdgeId, PreparedGraph, StaticGraph, TemporalGraph, Timestamp, VertexId};
use crate::scan::{self, at};
use crate::segtree::{Interval, IntervalSegmentTree};

/// Per-edge tallies, indexed by eid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub in_count: Vec<u32>,
    pub out_count: Vec<u32>,
    pub delta: Timestamp,
}

impl CountTable {
    /// `in_count[e] + out_count[e]`.
    pub fn total(&self, eid: EdgeId) -> u32 {
        self.in_count[eid as usize] + self.out_count[eid as usize]
    }

    pub fn totals(&self) -> Vec<u32> {
        self.in_count.iter().zip(&self.out_count).map(|(a, b)| a + b).collect()
    }
}

/// Intervals contributed by one lower-ranked common neighbor to one
/// directed target pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalSet {
    pub owner: VertexId,
    pub target: (VertexId, VertexId),
    pub intervals: Vec<Interval>,
}

#[derive(Default)]
struct Scratch {
    first: Vec<usize>,
    second: Vec<usize>,
    intervals: Vec<Interval>,
}

#[inline]
fn in_window(t: Timestamp, t2: Timestamp, t3: Timestamp, delta: Timestamp) -> bool {
    t <= t2 && t2 <= t3 && t3 <= t.saturating_add(delta)
}

/// Edges `e` of `l1 = E(u,v)` matched through `l2 = E(u,w)` then
/// `l3 = E(v,w)`; bumps `counts[i]` for each matching `l1[i]`.
pub fn out_case1(l1: &[Timestamp], l2: &[Timestamp], l3: &[Timestamp], delta: Timestamp, counts: &mut [u32]) {
    out_case1_with(l1, l2, l3, delta, counts, &mut Scratch::default());
}

fn out_case1_with(
    l1: &[Timestamp],
    l2: &[Timestamp],
    l3: &[Timestamp],
    delta: Timestamp,
    counts: &mut [u32],
    sc: &mut Scratch,
) {
    if l1.is_empty() || l2.is_empty() || l3.is_empty() {
        return;
    }
    scan::find_exceeding_entry_ls_into(l1, l2, &mut sc.first);
    scan::find_exceeding_entry_bs_into(l2, l3, &mut sc.second);
    for (i, &t) in l1.iter().enumerate() {
        let j = sc.first[i];
        let Some(t2) = at(l2, j) else { break };
        let Some(t3) = at(l3, sc.second[j]) else { continue };
        if in_window(t, t2, t3, delta) {
            counts[i] += 1;
        }
    }
}

/// Edges `e` of `l1 = E(v,u)` matched through `l2 = E(v,w)` then
/// `l3 = E(u,w)`, where only `l1` and `l3` may be scanned linearly.
pub fn out_case2(l1: &[Timestamp], l2: &[Timestamp], l3: &[Timestamp], delta: Timestamp, counts: &mut [u32]) {
    out_case2_with(l1, l2, l3, delta, counts, &mut Scratch::default());
}

fn out_case2_with(
    l1: &[Timestamp],
    l2: &[Timestamp],
    l3: &[Timestamp],
    delta: Timestamp,
    counts: &mut [u32],
    sc: &mut Scratch,
) {
    if l1.is_empty() || l2.is_empty() || l3.is_empty() {
        return;
    }
    scan::find_bounding_entry_into(l1, l3, delta, &mut sc.first);
    scan::find_exceeding_entry_bs_into(l1, l2, &mut sc.second);
    for (i, &t) in l1.iter().enumerate() {
        let Some(t2) = at(l2, sc.second[i]) else { break };
        let Some(t3) = at(l3, sc.first[i]) else { continue };
        if in_window(t, t2, t3, delta) {
            counts[i] += 1;
        }
    }
}

/// Builds the intervals `[t3 - delta, t2]` from `l2 = E(b,a)` and
/// `l3 = E(c,a)`: a time `t` lies in one of them exactly when an edge
/// `(b, c, t)` forms a window-respecting triangle through `a`.
pub fn build_interval_set(
    l2: &[Timestamp],
    l3: &[Timestamp],
    delta: Timestamp,
    owner: VertexId,
    target: (VertexId, VertexId),
) -> IntervalSet {
    let mut sc = Scratch::default();
    interval_set_into(l2, l3, delta, &mut sc);
    IntervalSet { owner, target, intervals: sc.intervals }
}

fn interval_set_into(l2: &[Timestamp], l3: &[Timestamp], delta: Timestamp, sc: &mut Scratch) {
    sc.intervals.clear();
    if l2.is_empty() || l3.is_empty() {
        return;
    }
    scan::find_exceeding_entry_ls_into(l2, l3, &mut sc.first);
    for (i, &t2) in l2.iter().enumerate() {
        let Some(t3) = at(l3, sc.first[i]) else { break };
        if t2 <= t3 && t3 <= t2.saturating_add(delta) {
            sc.intervals.push(Interval::new(t3.saturating_sub(delta), t2));
        }
    }
}

// Splits a slot-indexed buffer into one mutable slice per pair.
pub(crate) fn split_by_pair<'a>(g: &TemporalGraph, buf: &'a mut [u32]) -> Vec<(usize, &'a mut [u32])> {
    let mut out = Vec::with_capacity(g.num_pairs());
    let mut rest = buf;
    for p in 0..g.num_pairs() {
        let (head, tail) = rest.split_at_mut(g.pair_slots(p).len());
        out.push((p, head));
        rest = tail;
    }
    out
}

pub(crate) fn scatter(g: &TemporalGraph, slot_counts: &[u32]) -> Vec<u32> {
    let mut by_eid = vec![0u32; g.num_edges()];
    for (&eid, &c) in g.slot_eids().iter().zip(slot_counts) {
        by_eid[eid as usize] = c;
    }
    by_eid
}

/// Counts, for each edge, the matching common neighbors in `N+(s_e)`.
pub fn out_pass(
    g: &TemporalGraph,
    s: &StaticGraph,
    ord: &DegeneracyOrdering,
    delta: Timestamp,
    exec: &Execution,
) -> Vec<u32> {
    let mut slots = vec![0u32; g.num_edges()];
    let items = split_by_pair(g, &mut slots);
    exec.for_each_init(items, Scratch::default, |sc, (p, counts)| {
        let (a, b) = g.pair_keys()[p];
        let (u, v) = if ord.rank(a) < ord.rank(b) { (a, b) } else { (b, a) };
        let (head, tail) = counts.split_at_mut(g.pair_forward_len(p));
        let (uv_counts, vu_counts) = if u == a { (head, tail) } else { (tail, head) };
        let e_uv = g.pair_list_in(p, u).times;
        let e_vu = g.pair_list_in(p, v).times;
        for (&w, &uw) in ord.out_neighbors(u).iter().zip(ord.out_edges(u)) {
            if w == v {
                continue;
            }
            let Some(vw) = s.edge_id(v, w) else { continue };
            let e_uw = g.pair_list_in(uw as usize, u).times;
            let e_vw = g.pair_list_in(vw, v).times;
            out_case1_with(e_uv, e_uw, e_vw, delta, uv_counts, sc);
            out_case2_with(e_vu, e_vw, e_uw, delta, vu_counts, sc);
        }
    });
    scatter(g, &slots)
}

// One lower-ranked common neighbor `a` of target pair `p = {x, y}`, x < y.
#[derive(Clone, Copy)]
struct InTask {
    owner: VertexId,
    x_owner: u32,
    y_owner: u32,
}

/// Counts, for each edge, the matching common neighbors in `N-(s_e)`.
pub fn in_pass(
    g: &TemporalGraph,
    s: &StaticGraph,
    ord: &DegeneracyOrdering,
    delta: Timestamp,
    exec: &Execution,
) -> Vec<u32> {
    // Every static triangle once, keyed by the edge opposite its lowest
    // ranked vertex.
    let found: Vec<(u32, InTask)> = exec.flat_map_range(s.num_vertices(), |a, out| {
        let a = a as VertexId;
        let outs = ord.out_neighbors(a);
        let out_edges = ord.out_edges(a);
        for (i, &b) in outs.iter().enumerate() {
            for (k, &c) in outs.iter().enumerate() {
                if ord.rank(b) >= ord.rank(c) {
                    continue;
                }
                let Some(bc) = s.edge_id(b, c) else { continue };
                let (ab, ac) = (out_edges[i], out_edges[k]);
                let (x_owner, y_owner) = if b < c { (ab, ac) } else { (ac, ab) };
                out.push((bc as u32, InTask { owner: a, x_owner, y_owner }));
            }
        }
    });

    let pairs = g.num_pairs();
    let mut task_start = vec![0usize; pairs + 1];
    for &(p, _) in &found {
        task_start[p as usize + 1] += 1;
    }
    for p in 0..pairs {
        task_start[p + 1] += task_start[p];
    }
    let mut fill = task_start.clone();
    let mut tasks = vec![InTask { owner: 0, x_owner: 0, y_owner: 0 }; found.len()];
    for (p, task) in found {
        tasks[fill[p as usize]] = task;
        fill[p as usize] += 1;
    }

    let mut slots = vec![0u32; g.num_edges()];
    let items: Vec<_> =
        split_by_pair(g, &mut slots).into_iter().filter(|(p, _)| task_start[p + 1] > task_start[*p]).collect();
    exec.for_each_init(items, Scratch::default, |sc, (p, counts)| {
        let (x, y) = g.pair_keys()[p];
        let mine = &tasks[task_start[p]..task_start[p + 1]];
        let (xy_counts, yx_counts) = counts.split_at_mut(g.pair_forward_len(p));
        for (from, to, out) in [(x, y, xy_counts), (y, x, yx_counts)] {
            let target = g.pair_list_in(p, from).times;
            if target.is_empty() {
                continue;
            }
            let mut tree = IntervalSegmentTree::from_sorted(target);
            for task in mine {
                let (from_owner, to_owner) =
                    if from == x { (task.x_owner, task.y_owner) } else { (task.y_owner, task.x_owner) };
                let l2 = g.pair_list_in(from_owner as usize, from).times;
                let l3 = g.pair_list_in(to_owner as usize, to).times;
                interval_set_into(l2, l3, delta, sc);
                tree.insert_list(&sc.intervals, task.owner);
            }
            for (c, &t) in out.iter_mut().zip(target) {
                *c = tree.lookup(t);
            }
        }
    });
    scatter(g, &slots)
}

/// Runs both passes.
pub fn compute_counts(prepared: &PreparedGraph, delta: Timestamp, exec: &Execution) -> CountTable {
    let PreparedGraph { temporal, static_graph, ordering } = prepared;
    CountTable {
        out_count: out_pass(temporal, static_graph, ordering, delta, exec),
        in_count: in_pass(temporal, static_graph, ordering, delta, exec),
        delta,
    }
}
