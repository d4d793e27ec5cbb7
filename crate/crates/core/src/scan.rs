//! Sorted-list index primitives shared by every counting pass.
//!
//! Each primitive maps every entry of a sorted source list `l1` to an index
//! into a sorted target list `l2`. A missing match is encoded as
//! `l2.len()`; [`at`] turns such an index into `None`.

use crate::graph::Timestamp;

/// Looks up `list[idx]`, treating the off-end sentinel as absent.
#[inline]
pub fn at(list: &[Timestamp], idx: usize) -> Option<Timestamp> {
    list.get(idx).copied()
}

/// For each `l1[i]`, the first `j` with `l2[j] >= l1[i]`, by one merged
/// forward scan.
pub fn find_exceeding_entry_ls(l1: &[Timestamp], l2: &[Timestamp]) -> Vec<usize> {
    let mut out = Vec::with_capacity(l1.len());
    find_exceeding_entry_ls_into(l1, l2, &mut out);
    out
}

pub fn find_exceeding_entry_ls_into(l1: &[Timestamp], l2: &[Timestamp], out: &mut Vec<usize>) {
    out.clear();
    let mut j = 0;
    for &t in l1 {
        while j < l2.len() && l2[j] < t {
            j += 1;
        }
        out.push(j);
    }
}

/// Same contract as [`find_exceeding_entry_ls`], one binary search per entry.
pub fn find_exceeding_entry_bs(l1: &[Timestamp], l2: &[Timestamp]) -> Vec<usize> {
    let mut out = Vec::with_capacity(l1.len());
    find_exceeding_entry_bs_into(l1, l2, &mut out);
    out
}

pub fn find_exceeding_entry_bs_into(l1: &[Timestamp], l2: &[Timestamp], out: &mut Vec<usize>) {
    out.clear();
    out.extend(l1.iter().map(|&t| l2.partition_point(|&x| x < t)));
}

/// For each `l1[i]`, the last `j` with `l2[j] <= l1[i] + y`, or the sentinel
/// when even `l2[0]` is later than that.
pub fn find_bounding_entry(l1: &[Timestamp], l2: &[Timestamp], y: Timestamp) -> Vec<usize> {
    let mut out = Vec::with_capacity(l1.len());
    find_bounding_entry_into(l1, l2, y, &mut out);
    out
}

pub fn find_bounding_entry_into(l1: &[Timestamp], l2: &[Timestamp], y: Timestamp, out: &mut Vec<usize>) {
    out.clear();
    // `end` counts the entries of l2 that are <= the current bound.
    let mut end = 0;
    for &t in l1 {
        let bound = t.saturating_add(y);
        while end < l2.len() && l2[end] <= bound {
            end += 1;
        }
        out.push(if end == 0 { l2.len() } else { end - 1 });
    }
}
