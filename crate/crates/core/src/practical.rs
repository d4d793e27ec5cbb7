//! Baseline counter: enumerate each static triangle from the lower-degree
//! end of every static edge and chain two linear scans per direction.

use crate::engine::{scatter, split_by_pair};
use crate::exec::Execution;
use crate::graph::{StaticGraph, TemporalGraph, Timestamp};
use crate::scan::{self, at};

#[derive(Default)]
struct Scratch {
    first: Vec<usize>,
    second: Vec<usize>,
}

fn chain(l1: &[Timestamp], l2: &[Timestamp], l3: &[Timestamp], delta: Timestamp, counts: &mut [u32], sc: &mut Scratch) {
    if l1.is_empty() || l2.is_empty() || l3.is_empty() {
        return;
    }
    scan::find_exceeding_entry_ls_into(l1, l2, &mut sc.first);
    scan::find_exceeding_entry_ls_into(l2, l3, &mut sc.second);
    for (i, &t) in l1.iter().enumerate() {
        let j = sc.first[i];
        let Some(t2) = at(l2, j) else { break };
        let Some(t3) = at(l3, sc.second[j]) else { continue };
        if t <= t2 && t2 <= t3 && t3 <= t.saturating_add(delta) {
            counts[i] += 1;
        }
    }
}

/// Per-eid count of matching common neighbors.
pub fn practical_counts(g: &TemporalGraph, s: &StaticGraph, delta: Timestamp, exec: &Execution) -> Vec<u32> {
    let mut slots = vec![0u32; g.num_edges()];
    let items = split_by_pair(g, &mut slots);
    exec.for_each_init(items, Scratch::default, |sc, (p, counts)| {
        let (u, v) = g.pair_keys()[p];
        let (uv_counts, vu_counts) = counts.split_at_mut(g.pair_forward_len(p));
        let (x, y) = s.lower_degree_endpoint(p);
        let e_uv = g.pair_dir(p, true).times;
        let e_vu = g.pair_dir(p, false).times;
        for (&w, &xw) in s.neighbors(x).iter().zip(s.neighbor_edges(x)) {
            if w == y {
                continue;
            }
            let Some(yw) = s.edge_id(y, w) else { continue };
            let (uw, vw) = if x == u { (xw as usize, yw) } else { (yw, xw as usize) };
            let e_uw = g.pair_list_in(uw, u).times;
            let e_vw = g.pair_list_in(vw, v).times;
            chain(e_uv, e_uw, e_vw, delta, uv_counts, sc);
            chain(e_vu, e_vw, e_uw, delta, vu_counts, sc);
        }
    });
    scatter(g, &slots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::PreparedGraph;

    #[test]
    fn single_triangle() {
        let p = PreparedGraph::new(TemporalGraph::parse_str("1 2 10\n1 3 12\n2 3 15\n").unwrap());
        let c = practical_counts(&p.temporal, &p.static_graph, 10, &Execution::sequential());
        assert_eq!(c, vec![1, 0, 0]);
    }
}
