//! Shortest closed dual walks with prescribed `ŵ`- and `Θ`-values.
//!
//! The covering graph has vertices `(u, k, v̄)`: a dual vertex together with
//! the accumulated balance weight and crossing vector of the walk so far.
//! It is explored implicitly by breadth-first search from `(u, 0, 0̄)` for
//! every dual vertex `u`; reaching `(u, k, v̄)` again closes a walk. Darts are
//! expanded in increasing index order, so the first path found to any state
//! is the lexicographically smallest among the shortest ones.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;
use thiserror::Error;

use crate::dual::{DualGraph, IntegerChain};
use crate::homology::{LoopSystem, WeightFunction};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("covering-graph state space does not fit in a 128-bit key")]
    StateSpaceTooLarge,
}

/// Limits of the explored covering graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverBounds {
    /// Maximum walk length.
    pub depth: usize,
    /// `|k| ≤ k_max`.
    pub k_max: i64,
    /// `|v_j| ≤ v_max` for every coordinate.
    pub v_max: i64,
}

impl CoverBounds {
    /// Depth `m`, `K = m·n`, `V = m·μ` with `μ` the longest loop.
    pub fn for_instance(n: usize, m: usize, loops: &LoopSystem) -> Self {
        let mu = loops.max_loop_multiplicity().max(1) as i64;
        CoverBounds {
            depth: m,
            k_max: (m * n) as i64,
            v_max: m as i64 * mu,
        }
    }

    /// `|V'| · (2K + 1) · (2V + 1)^{2g}`, saturating.
    pub fn state_bound(&self, dual_vertices: usize, dimension: usize) -> u128 {
        let mut bound = dual_vertices as u128;
        bound = bound.saturating_mul((2 * self.k_max + 1) as u128);
        for _ in 0..dimension {
            bound = bound.saturating_mul((2 * self.v_max + 1) as u128);
        }
        bound
    }
}

/// Key `(k, v̄)`; ordered by `k`, then `v̄` lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WalkKey {
    pub k: i64,
    pub v: Vec<i64>,
}

impl WalkKey {
    pub fn is_homologically_trivial(&self) -> bool {
        self.v.iter().all(|&x| x == 0)
    }
}

/// A closed dual walk with its tags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedWalk {
    pub darts: Vec<usize>,
    pub k: i64,
    pub v: Vec<i64>,
    pub chain: IntegerChain,
}

impl TaggedWalk {
    pub fn from_darts(
        darts: Vec<usize>,
        dual: &DualGraph,
        weight: &WeightFunction,
        loops: &LoopSystem,
    ) -> Self {
        let chain = IntegerChain::from_darts(dual.graph.edge_count(), darts.iter().copied());
        let k = weight.what(dual, &chain);
        let v = loops.theta(&chain);
        TaggedWalk { darts, k, v, chain }
    }

    pub fn length(&self) -> usize {
        self.darts.len()
    }

    pub fn key(&self) -> WalkKey {
        WalkKey {
            k: self.k,
            v: self.v.clone(),
        }
    }

    /// The same walk traversed backwards.
    pub fn reversed(&self) -> TaggedWalk {
        TaggedWalk {
            darts: self.darts.iter().rev().map(|d| d ^ 1).collect(),
            k: -self.k,
            v: self.v.iter().map(|x| -x).collect(),
            chain: -&self.chain,
        }
    }

    /// Consecutive darts meet head to tail and the walk returns to its start.
    pub fn is_closed_walk(&self, dual: &DualGraph) -> bool {
        let g = &dual.graph;
        match (self.darts.first(), self.darts.last()) {
            (None, None) => true,
            (Some(&a), Some(&z)) => {
                g.head(z) == g.tail(a)
                    && self.darts.windows(2).all(|p| g.head(p[0]) == g.tail(p[1]))
            }
            _ => unreachable!(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CoverStats {
    /// Covering-graph states reached from each start vertex.
    pub states_per_start: Vec<usize>,
    /// Analytical size of the bounded covering graph.
    pub state_bound: u128,
}

impl CoverStats {
    pub fn total_states(&self) -> usize {
        self.states_per_start.iter().sum()
    }

    pub fn max_states(&self) -> usize {
        self.states_per_start.iter().copied().max().unwrap_or(0)
    }
}

/// Shortest tagged closed walks, one per reachable key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkTable {
    pub entries: BTreeMap<WalkKey, TaggedWalk>,
    pub bounds: CoverBounds,
    pub stats: CoverStats,
}

impl WalkTable {
    pub fn get(&self, k: i64, v: &[i64]) -> Option<&TaggedWalk> {
        self.entries.get(&WalkKey { k, v: v.to_vec() })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// One line per entry: `k v_1 … v_2g length d_1 … d_length`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (key, walk) in &self.entries {
            let mut fields = vec![key.k.to_string()];
            fields.extend(key.v.iter().map(|x| x.to_string()));
            fields.push(walk.length().to_string());
            fields.extend(walk.darts.iter().map(|d| d.to_string()));
            writeln!(out, "{}", fields.join(" ")).unwrap();
        }
        out
    }
}

/// Closed walks found from one start vertex, plus the number of states visited.
type StartResult = (Vec<(WalkKey, Vec<usize>)>, usize);

/// Per-dart tag tables and the mixed-radix state encoding.
struct Search<'a> {
    dual: &'a DualGraph,
    bounds: CoverBounds,
    dim: usize,
    out_darts: Vec<Vec<usize>>,
    dart_k: Vec<i64>,
    /// Flattened `Θ` per dart, stride `dim`.
    dart_v: Vec<i64>,
    k_radix: u128,
    v_radix: u128,
}

impl<'a> Search<'a> {
    fn new(
        dual: &'a DualGraph,
        weight: &WeightFunction,
        loops: &LoopSystem,
        bounds: CoverBounds,
    ) -> Result<Self, CoverError> {
        let g = &dual.graph;
        let dim = loops.dimension();
        let out_darts: Vec<Vec<usize>> = (0..g.vertex_count())
            .map(|u| {
                let mut ds = g.darts_at(u);
                ds.sort_unstable();
                ds
            })
            .collect();
        let dart_k: Vec<i64> = (0..g.dart_count())
            .map(|d| weight.dart_value(dual.d_inv(d)))
            .collect();
        let dart_v: Vec<i64> = (0..g.dart_count())
            .flat_map(|d| loops.dart_theta(d))
            .collect();

        let k_radix = (2 * bounds.k_max + 1) as u128;
        let v_radix = (2 * bounds.v_max + 1) as u128;
        let mut capacity = (g.vertex_count() as u128)
            .checked_mul(k_radix)
            .ok_or(CoverError::StateSpaceTooLarge)?;
        for _ in 0..dim {
            capacity = capacity
                .checked_mul(v_radix)
                .ok_or(CoverError::StateSpaceTooLarge)?;
        }
        Ok(Search {
            dual,
            bounds,
            dim,
            out_darts,
            dart_k,
            dart_v,
            k_radix,
            v_radix,
        })
    }

    fn encode(&self, u: usize, k: i64, v: &[i64]) -> u128 {
        let mut key = u as u128;
        key = key * self.k_radix + (k + self.bounds.k_max) as u128;
        for &x in v {
            key = key * self.v_radix + (x + self.bounds.v_max) as u128;
        }
        key
    }

    /// BFS from `(start, 0, 0̄)`; returns closed walks keyed by `(k, v̄)` and the state count.
    fn search_from(&self, start: usize) -> StartResult {
        let dim = self.dim;
        let mut index: HashMap<u128, u32> = HashMap::new();
        let mut vertex: Vec<u32> = vec![start as u32];
        let mut ks: Vec<i64> = vec![0];
        let mut vs: Vec<i64> = vec![0; dim];
        let mut parent: Vec<(u32, u32)> = vec![(u32::MAX, u32::MAX)];
        let mut depth: Vec<u32> = vec![0];
        index.insert(self.encode(start, 0, &vs[..dim]), 0);
        let mut closed = Vec::new();

        let mut head = 0usize;
        let mut next_v = vec![0i64; dim];
        while head < vertex.len() {
            let node = head;
            head += 1;
            if depth[node] as usize >= self.bounds.depth {
                continue;
            }
            let u = vertex[node] as usize;
            let k = ks[node];
            for &d in &self.out_darts[u] {
                let nk = k + self.dart_k[d];
                if nk.abs() > self.bounds.k_max {
                    continue;
                }
                let mut ok = true;
                for j in 0..dim {
                    let x = vs[node * dim + j] + self.dart_v[d * dim + j];
                    if x.abs() > self.bounds.v_max {
                        ok = false;
                        break;
                    }
                    next_v[j] = x;
                }
                if !ok {
                    continue;
                }
                let w = self.dual.graph.head(d);
                let key = self.encode(w, nk, &next_v);
                if index.contains_key(&key) {
                    continue;
                }
                let id = vertex.len() as u32;
                index.insert(key, id);
                vertex.push(w as u32);
                ks.push(nk);
                vs.extend_from_slice(&next_v);
                parent.push((node as u32, d as u32));
                depth.push(depth[node] + 1);
                if w == start {
                    closed.push((
                        WalkKey {
                            k: nk,
                            v: next_v.clone(),
                        },
                        id,
                    ));
                }
            }
        }

        let walks = closed
            .into_iter()
            .map(|(key, id)| {
                let mut darts = Vec::with_capacity(depth[id as usize] as usize);
                let mut x = id;
                while parent[x as usize].0 != u32::MAX {
                    let (p, d) = parent[x as usize];
                    darts.push(d as usize);
                    x = p;
                }
                darts.reverse();
                (key, darts)
            })
            .collect();
        (walks, vertex.len())
    }
}

/// For every reachable `(k, v̄)`, the shortest closed dual walk with that
/// `ŵ`- and `Θ`-value over all start vertices; ties go to the
/// lexicographically smallest dart sequence. The empty walk sits at `(0, 0̄)`.
pub fn shortest_tagged_walks(
    dual: &DualGraph,
    weight: &WeightFunction,
    loops: &LoopSystem,
    bounds: CoverBounds,
) -> Result<WalkTable, CoverError> {
    let search = Search::new(dual, weight, loops, bounds)?;
    let per_start: Vec<StartResult> = (0..dual.vertex_count())
        .into_par_iter()
        .map(|u| search.search_from(u))
        .collect();

    let mut best: BTreeMap<WalkKey, Vec<usize>> = BTreeMap::new();
    best.insert(
        WalkKey {
            k: 0,
            v: vec![0; search.dim],
        },
        Vec::new(),
    );
    let mut states_per_start = Vec::with_capacity(per_start.len());
    for (walks, states) in per_start {
        states_per_start.push(states);
        for (key, darts) in walks {
            match best.get(&key) {
                Some(existing) if (existing.len(), existing) <= (darts.len(), &darts) => {}
                _ => {
                    best.insert(key, darts);
                }
            }
        }
    }

    let entries = best
        .into_iter()
        .map(|(key, darts)| {
            let walk = TaggedWalk::from_darts(darts, dual, weight, loops);
            debug_assert_eq!(walk.key(), key);
            (key, walk)
        })
        .collect();
    Ok(WalkTable {
        entries,
        bounds,
        stats: CoverStats {
            states_per_start,
            state_bound: bounds.state_bound(dual.vertex_count(), search.dim),
        },
    })
}
