//! Exhaustive ground truth for small instances.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rayon::prelude::*;
use thiserror::Error;

use crate::balance::{BalanceFunction, Objective};
use crate::cover::TaggedWalk;
use crate::embedding::EmbeddedGraph;
use crate::solver::{CutResult, SurfaceInstance};

pub const DEFAULT_VERTEX_CAP: usize = 16;
pub const MAX_WALK_LENGTH: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{n} vertices exceeds the brute-force cap of {cap}")]
    TooManyVertices { n: usize, cap: usize },
    #[error("walk length {len} exceeds the enumeration cap of {cap}")]
    WalkTooLong { len: usize, cap: usize },
    #[error("graph needs at least two vertices to have a cut")]
    TooSmall,
}

#[derive(Debug, Clone)]
pub struct OracleReport {
    pub best: CutResult,
    /// Objective of every cut, keyed by the sorted side containing vertex 0.
    pub all_values: BTreeMap<Vec<usize>, Objective>,
    /// An optimal cut whose two sides both induce connected subgraphs.
    pub minimal_witness: Option<CutResult>,
}

pub fn brute_force_cut(
    g: &EmbeddedGraph,
    f: &BalanceFunction,
) -> Result<OracleReport, OracleError> {
    brute_force_cut_capped(g, f, DEFAULT_VERTEX_CAP)
}

pub fn brute_force_cut_capped(
    g: &EmbeddedGraph,
    f: &BalanceFunction,
    cap: usize,
) -> Result<OracleReport, OracleError> {
    let n = g.vertex_count();
    if n > cap || n > 63 {
        return Err(OracleError::TooManyVertices { n, cap });
    }
    if n < 2 {
        return Err(OracleError::TooSmall);
    }
    let masks: Vec<u64> = (0..(1u64 << (n - 1)) - 1).collect();
    // bit i of the mask marks vertex i + 1 as joining vertex 0's side
    let cuts: Vec<(Vec<usize>, CutResult)> = masks
        .par_iter()
        .map(|&mask| {
            let in_s: Vec<bool> = (0..n).map(|v| v == 0 || mask >> (v - 1) & 1 == 1).collect();
            let key: Vec<usize> = (0..n).filter(|&v| in_s[v]).collect();
            (key, CutResult::from_mask(g, &in_s, f))
        })
        .collect();

    let best = cuts
        .iter()
        .map(|(_, c)| c)
        .min_by(|a, b| a.rank_cmp(b))
        .expect("at least one cut")
        .clone();
    let minimal_witness = cuts
        .iter()
        .filter(|(key, c)| c.value == best.value && both_sides_connected(g, key))
        .map(|(_, c)| c)
        .min_by(|a, b| a.rank_cmp(b))
        .cloned();
    let all_values = cuts.into_iter().map(|(k, c)| (k, c.value)).collect();
    Ok(OracleReport {
        best,
        all_values,
        minimal_witness,
    })
}

/// Both `G[S]` and `G[V ∖ S]` are connected.
pub fn both_sides_connected(g: &EmbeddedGraph, side: &[usize]) -> bool {
    let n = g.vertex_count();
    let mut in_s = vec![false; n];
    for &v in side {
        in_s[v] = true;
    }
    [true, false].iter().all(|&which| {
        let members: Vec<usize> = (0..n).filter(|&v| in_s[v] == which).collect();
        let Some(&start) = members.first() else {
            return true;
        };
        let mut seen = vec![false; n];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for d in g.darts_at(v) {
                let w = g.head(d);
                if in_s[w] == which && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == members.len()
    })
}

/// All closed dual walks of length at most `max_len`, one representative per
/// class under cyclic rotation and reversal (the lexicographically smallest).
pub fn enumerate_closed_walks(
    instance: &SurfaceInstance,
    max_len: usize,
) -> Result<Vec<TaggedWalk>, OracleError> {
    if max_len > MAX_WALK_LENGTH {
        return Err(OracleError::WalkTooLong {
            len: max_len,
            cap: MAX_WALK_LENGTH,
        });
    }
    let g = &instance.dual.graph;
    let mut classes: BTreeSet<Vec<usize>> = BTreeSet::new();
    classes.insert(Vec::new());
    let mut walk = Vec::new();
    for start in 0..g.vertex_count() {
        extend_walk(g, start, start, max_len, &mut walk, &mut classes);
    }
    Ok(classes
        .into_iter()
        .map(|darts| instance.tag(darts))
        .collect())
}

fn extend_walk(
    g: &EmbeddedGraph,
    start: usize,
    at: usize,
    max_len: usize,
    walk: &mut Vec<usize>,
    classes: &mut BTreeSet<Vec<usize>>,
) {
    if walk.len() == max_len {
        return;
    }
    for d in g.darts_at(at) {
        // a canonical representative starts with its smallest dart, counting
        // the reversed darts too
        if let Some(&first) = walk.first() {
            if d < first || d ^ 1 < first {
                continue;
            }
        } else if d ^ 1 < d {
            continue;
        }
        walk.push(d);
        let head = g.head(d);
        if head == start && is_canonical(walk) {
            classes.insert(walk.clone());
        }
        extend_walk(g, start, head, max_len, walk, classes);
        walk.pop();
    }
}

/// Whether `walk` is the smallest among its rotations and those of its reversal.
fn is_canonical(walk: &[usize]) -> bool {
    let len = walk.len();
    let forward = |shift: usize| (0..len).map(move |i| walk[(shift + i) % len]);
    let backward = |shift: usize| (0..len).map(move |i| walk[(shift + len - i) % len] ^ 1);
    (0..len).all(|s| forward(s).cmp(walk.iter().copied()).is_ge())
        && (0..len).all(|s| backward(s).cmp(walk.iter().copied()).is_ge())
}

#[cfg(test)]
fn canonical(walk: &[usize]) -> Vec<usize> {
    let reversed: Vec<usize> = walk.iter().rev().map(|d| d ^ 1).collect();
    let len = walk.len();
    let mut best: Option<Vec<usize>> = None;
    for seq in [walk, reversed.as_slice()] {
        for shift in 0..len {
            let rotated: Vec<usize> = seq[shift..].iter().chain(&seq[..shift]).copied().collect();
            if best.as_ref().is_none_or(|b| rotated < *b) {
                best = Some(rotated);
            }
        }
    }
    best.unwrap_or_default()
}
