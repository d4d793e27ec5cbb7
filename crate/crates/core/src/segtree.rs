//! Per-directed-pair segment tree counting, for a query time `t`, how many
//! distinct vertex labels inserted an interval that contains `t`.
//!
//! The tree is built over the sorted distinct timestamps `t_1 < … < t_r` of
//! one directed pair. Its `2r - 1` leaves alternate between exact points and
//! the open gaps between them:
//!
//! ```text
//! leaf 2k     = {t_k}            (written (t_k, t_k] elsewhere)
//! leaf 2k + 1 = (t_k, t_{k+1})   (the part of (t_k, t_{k+1}] before t_{k+1})
//! ```
//!
//! Intervals are closed and first snapped to the widest `[t_i, t_j]` they
//! contain, which covers leaves `2i..=2j`.
//!
//! Insertion of one label's list runs in three passes over the same
//! intervals. Pass one greys canonical nodes, skipping subtrees that already
//! sit under a grey node. Pass two whitens every grey node that has a grey
//! ancestor, leaving an antichain. Pass three bumps the counter of each
//! surviving grey node once, tags it with the label, and whitens it. A
//! root-to-leaf path therefore meets at most one counted node per label.

use std::cell::Cell;

use crate::graph::{Timestamp, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub lo: Timestamp,
    pub hi: Timestamp,
}

impl Interval {
    pub fn new(lo: Timestamp, hi: Timestamp) -> Self {
        debug_assert!(lo <= hi, "interval [{lo}, {hi}] is reversed");
        Interval { lo, hi }
    }

    pub fn contains(&self, t: Timestamp) -> bool {
        self.lo <= t && t <= self.hi
    }
}

const NO_VERTEX: VertexId = VertexId::MAX;

#[derive(Clone, Debug, Default)]
pub struct IntervalSegmentTree {
    times: Vec<Timestamp>,
    leaves: usize,
    counter: Vec<u32>,
    grey: Vec<bool>,
    vertex: Vec<VertexId>,
    // Scratch reused across insert_list calls.
    ranges: Vec<(usize, usize)>,
    greyed: Vec<usize>,
    visits: Cell<u64>,
}

impl IntervalSegmentTree {
    /// Builds an empty tree over strictly increasing timestamps.
    pub fn build(times: &[Timestamp]) -> Self {
        debug_assert!(times.windows(2).all(|w| w[0] < w[1]), "timestamps must be strictly increasing");
        let leaves = (2 * times.len()).saturating_sub(1);
        let nodes = if leaves == 0 { 0 } else { 2 * leaves.next_power_of_two() };
        IntervalSegmentTree {
            times: times.to_vec(),
            leaves,
            counter: vec![0; nodes],
            grey: vec![false; nodes],
            vertex: vec![NO_VERTEX; nodes],
            ..Default::default()
        }
    }

    /// Builds a tree over the distinct values of a sorted (possibly
    /// repeating) timestamp list.
    pub fn from_sorted(times: &[Timestamp]) -> Self {
        let mut distinct = times.to_vec();
        distinct.dedup();
        Self::build(&distinct)
    }

    pub fn timestamps(&self) -> &[Timestamp] {
        &self.times
    }

    pub fn num_leaves(&self) -> usize {
        self.leaves
    }

    /// Leaf segments as `(left, right)` pairs, meaning `(left, right]`.
    pub fn leaf_segments(&self) -> Vec<(Timestamp, Timestamp)> {
        (0..self.leaves)
            .map(|leaf| {
                let k = leaf / 2;
                if leaf % 2 == 0 {
                    (self.times[k], self.times[k])
                } else {
                    (self.times[k], self.times[k + 1])
                }
            })
            .collect()
    }

    fn snap_leaves(&self, iv: Interval) -> Option<(usize, usize)> {
        let i = self.times.partition_point(|&t| t < iv.lo);
        let j = self.times.partition_point(|&t| t <= iv.hi);
        if i < j {
            Some((2 * i, 2 * (j - 1)))
        } else {
            None
        }
    }

    /// The widest `[t_i, t_j]` inside `iv` with both ends in the tree's
    /// timestamps, or `None` when `iv` holds no timestamp.
    pub fn snap_interval(&self, iv: Interval) -> Option<Interval> {
        self.snap_leaves(iv).map(|(l, r)| Interval::new(self.times[l / 2], self.times[r / 2]))
    }

    fn leaf_of(&self, t: Timestamp) -> Option<usize> {
        let k = self.times.partition_point(|&x| x < t);
        if k < self.times.len() && self.times[k] == t {
            Some(2 * k)
        } else if k == 0 || k == self.times.len() {
            None
        } else {
            Some(2 * k - 1)
        }
    }

    /// Inserts one label's interval list. Intervals holding no timestamp are
    /// ignored. Order within the list does not affect later lookups.
    pub fn insert_list(&mut self, intervals: &[Interval], vertex: VertexId) {
        if self.leaves == 0 {
            return;
        }
        let mut ranges = std::mem::take(&mut self.ranges);
        ranges.clear();
        ranges.extend(intervals.iter().filter_map(|&iv| self.snap_leaves(iv)));
        if !ranges.is_empty() {
            let last = self.leaves - 1;
            for &(ql, qr) in &ranges {
                self.phase1(1, 0, last, ql, qr);
            }
            for &(ql, qr) in &ranges {
                self.phase2(1, 0, last, ql, qr, false);
            }
            for &(ql, qr) in &ranges {
                self.phase3(1, 0, last, ql, qr, vertex);
            }
            // Only reachable when a label repeats across calls: a node tagged
            // with the same label can shadow a grey node in pass three.
            for node in self.greyed.drain(..) {
                self.grey[node] = false;
            }
        }
        self.ranges = ranges;
    }

    fn phase1(&mut self, node: usize, l: usize, r: usize, ql: usize, qr: usize) {
        self.visits.set(self.visits.get() + 1);
        if self.grey[node] {
            return;
        }
        if ql <= l && r <= qr {
            self.grey[node] = true;
            self.greyed.push(node);
            return;
        }
        let mid = (l + r) / 2;
        if ql <= mid {
            self.phase1(2 * node, l, mid, ql, qr);
        }
        if qr > mid {
            self.phase1(2 * node + 1, mid + 1, r, ql, qr);
        }
    }

    fn phase2(&mut self, node: usize, l: usize, r: usize, ql: usize, qr: usize, grey_above: bool) {
        self.visits.set(self.visits.get() + 1);
        if ql <= l && r <= qr {
            if grey_above && self.grey[node] {
                self.grey[node] = false;
            }
            return;
        }
        let above = grey_above || self.grey[node];
        let mid = (l + r) / 2;
        if ql <= mid {
            self.phase2(2 * node, l, mid, ql, qr, above);
        }
        if qr > mid {
            self.phase2(2 * node + 1, mid + 1, r, ql, qr, above);
        }
    }

    fn phase3(&mut self, node: usize, l: usize, r: usize, ql: usize, qr: usize, vertex: VertexId) {
        self.visits.set(self.visits.get() + 1);
        if ql <= l && r <= qr {
            if self.grey[node] {
                self.grey[node] = false;
                self.counter[node] += 1;
                self.vertex[node] = vertex;
            }
            return;
        }
        if self.grey[node] || (self.counter[node] > 0 && self.vertex[node] == vertex) {
            return;
        }
        let mid = (l + r) / 2;
        if ql <= mid {
            self.phase3(2 * node, l, mid, ql, qr, vertex);
        }
        if qr > mid {
            self.phase3(2 * node + 1, mid + 1, r, ql, qr, vertex);
        }
    }

    /// Sum of the counters on the path to the leaf holding `t`.
    pub fn lookup(&self, t: Timestamp) -> u32 {
        let Some(leaf) = self.leaf_of(t) else {
            return 0;
        };
        let (mut node, mut l, mut r) = (1, 0, self.leaves - 1);
        let mut sum = 0;
        loop {
            self.visits.set(self.visits.get() + 1);
            sum += self.counter[node];
            if l == r {
                return sum;
            }
            let mid = (l + r) / 2;
            if leaf <= mid {
                node *= 2;
                r = mid;
            } else {
                node = 2 * node + 1;
                l = mid + 1;
            }
        }
    }

    /// True when no node is grey.
    pub fn is_all_white(&self) -> bool {
        !self.grey.iter().any(|&g| g)
    }

    /// Nodes visited since construction or the last reset.
    pub fn node_visits(&self) -> u64 {
        self.visits.get()
    }

    pub fn reset_visits(&self) {
        self.visits.set(0);
    }

    /// Height of the tree in levels, `1 + ceil(log2(leaves))`.
    pub fn height(&self) -> u32 {
        if self.leaves == 0 {
            0
        } else {
            1 + self.leaves.next_power_of_two().trailing_zeros()
        }
    }
}
