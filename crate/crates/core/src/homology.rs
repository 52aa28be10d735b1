//! Balance weights and crossing counts against a tree-cotree system of loops.
//!
//! Both structures hang off the same BFS spanning tree of the primal graph.
//! The weight of a tree dart `parent → child` is the size of the child's
//! subtree, so summing it over an oriented cut whose source side holds the
//! root yields the size of the other side. The loop system pairs each of the
//! `2g` edges outside both the tree and a dual spanning cotree with the
//! fundamental cycle it closes in the tree; `Θ` counts signed crossings of a
//! dual chain with each of those cycles.

use std::collections::VecDeque;

use thiserror::Error;

use crate::dual::{DualGraph, IntegerChain};
use crate::embedding::EmbeddedGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("root {root} out of range (n = {n})")]
    RootOutOfRange { root: usize, n: usize },
    #[error("tree-cotree left {found} edges, expected 2g = {expected}")]
    LeftoverMismatch { found: usize, expected: usize },
}

/// BFS spanning tree; `parent_dart[v]` runs from the parent into `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    pub root: usize,
    pub parent_dart: Vec<Option<usize>>,
    /// Vertices in BFS order, root first.
    pub order: Vec<usize>,
    pub in_tree: Vec<bool>,
}

impl SpanningTree {
    pub fn bfs(g: &EmbeddedGraph, root: usize) -> Result<Self, HomologyError> {
        let n = g.vertex_count();
        if root >= n {
            return Err(HomologyError::RootOutOfRange { root, n });
        }
        let mut parent_dart = vec![None; n];
        let mut seen = vec![false; n];
        let mut in_tree = vec![false; g.edge_count()];
        let mut order = vec![root];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            for d in g.darts_at(v) {
                let w = g.head(d);
                if !seen[w] {
                    seen[w] = true;
                    parent_dart[w] = Some(d);
                    in_tree[d / 2] = true;
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
        Ok(SpanningTree {
            root,
            parent_dart,
            order,
            in_tree,
        })
    }

    /// Darts of the tree path from the root down to `v`.
    pub fn path_from_root(&self, g: &EmbeddedGraph, v: usize) -> Vec<usize> {
        let mut darts = Vec::new();
        let mut x = v;
        while let Some(d) = self.parent_dart[x] {
            darts.push(d);
            x = g.tail(d);
        }
        darts.reverse();
        darts
    }
}

/// Balance weight `w` on primal darts, antisymmetric, zero off the tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFunction {
    pub root: usize,
    /// Value on the even dart of each edge.
    pub wt: Vec<i64>,
    pub tree: SpanningTree,
}

impl WeightFunction {
    pub fn dart_value(&self, d: usize) -> i64 {
        if d & 1 == 0 {
            self.wt[d / 2]
        } else {
            -self.wt[d / 2]
        }
    }

    /// `w` extended linearly to primal chains.
    pub fn eval(&self, chain: &IntegerChain) -> i64 {
        chain.pair(&self.wt)
    }

    /// `ŵ(σ) = w(D⁻¹(σ))` for a dual chain.
    pub fn what(&self, dual: &DualGraph, chain: &IntegerChain) -> i64 {
        self.eval(&dual.primal_chain(chain))
    }
}

pub fn build_weight(g: &EmbeddedGraph, root: usize) -> Result<WeightFunction, HomologyError> {
    let tree = SpanningTree::bfs(g, root)?;
    let mut subtree = vec![1i64; g.vertex_count()];
    let mut wt = vec![0i64; g.edge_count()];
    for &v in tree.order.iter().rev() {
        if let Some(d) = tree.parent_dart[v] {
            let size = subtree[v];
            subtree[g.tail(d)] += size;
            wt[d / 2] = if d % 2 == 0 { size } else { -size };
        }
    }
    Ok(WeightFunction { root, wt, tree })
}

/// `2g` loops through the tree root plus the crossing table realizing `Θ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopSystem {
    /// Closed primal walks (dart sequences) starting and ending at the root.
    pub loops: Vec<Vec<usize>>,
    /// The edge outside tree and cotree that defines each loop.
    pub defining_edges: Vec<usize>,
    /// Dual edges forming a spanning tree of the dual.
    pub cotree: Vec<bool>,
    /// Per dual edge: `Θ` of its even dart.
    pub theta_table: Vec<Vec<i64>>,
}

impl LoopSystem {
    pub fn dimension(&self) -> usize {
        self.loops.len()
    }

    /// `Θ` of a single dual dart.
    pub fn dart_theta(&self, d: usize) -> Vec<i64> {
        let row = &self.theta_table[d / 2];
        if d & 1 == 0 {
            row.clone()
        } else {
            row.iter().map(|x| -x).collect()
        }
    }

    /// `Θ` extended linearly to dual chains.
    pub fn theta(&self, chain: &IntegerChain) -> Vec<i64> {
        let mut out = vec![0i64; self.dimension()];
        for (e, c) in chain.support() {
            for (o, t) in out.iter_mut().zip(&self.theta_table[e]) {
                *o += c * t;
            }
        }
        out
    }

    /// Largest walk length among the loops (the per-loop multiplicity sum).
    pub fn max_loop_multiplicity(&self) -> usize {
        self.loops.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// For each loop, a closed dual walk crossing that loop's defining edge
    /// once and otherwise using only cotree edges.
    pub fn companion_walks(&self, dual: &DualGraph) -> Vec<Vec<usize>> {
        let dg = &dual.graph;
        let n = dg.vertex_count();
        // cotree rooted at dual vertex 0
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for d in dg.darts_at(v) {
                if self.cotree[d / 2] && !seen[dg.head(d)] {
                    seen[dg.head(d)] = true;
                    parent[dg.head(d)] = Some(d);
                    queue.push_back(dg.head(d));
                }
            }
        }
        let up = |mut v: usize| {
            let mut darts = Vec::new();
            while let Some(d) = parent[v] {
                darts.push(d);
                v = dg.tail(d);
            }
            darts.reverse();
            darts
        };
        self.defining_edges
            .iter()
            .map(|&e| {
                let d = dual.d_map(2 * e);
                let (p, q) = (dg.tail(d), dg.head(d));
                // walk: d, then q back to the cotree root, then root down to p
                let mut walk = vec![d];
                walk.extend(up(q).into_iter().rev().map(|x| x ^ 1));
                walk.extend(up(p));
                walk
            })
            .collect()
    }
}

pub fn build_loop_system(
    g: &EmbeddedGraph,
    dual: &DualGraph,
    tree: &SpanningTree,
) -> Result<LoopSystem, HomologyError> {
    let m = g.edge_count();
    let dg = &dual.graph;
    let faces = dg.vertex_count();

    // spanning tree of the dual avoiding duals of primal tree edges
    let mut cotree = vec![false; m];
    let mut seen = vec![false; faces];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(f) = queue.pop_front() {
        for d in dg.darts_at(f) {
            let primal_edge = dual.d_inv(d) / 2;
            if tree.in_tree[primal_edge] {
                continue;
            }
            let h = dg.head(d);
            if !seen[h] {
                seen[h] = true;
                cotree[d / 2] = true;
                queue.push_back(h);
            }
        }
    }

    let defining_edges: Vec<usize> = (0..m)
        .filter(|&e| !tree.in_tree[e] && !cotree[dual.d_map(2 * e) / 2])
        .collect();
    let euler = g.vertex_count() as i64 - m as i64 + faces as i64;
    let expected = (2 - euler).max(0) as usize;
    if defining_edges.len() != expected || !seen.iter().all(|&s| s) {
        return Err(HomologyError::LeftoverMismatch {
            found: defining_edges.len(),
            expected,
        });
    }

    let mut loops = Vec::with_capacity(defining_edges.len());
    let mut loop_chains = Vec::with_capacity(defining_edges.len());
    for &e in &defining_edges {
        let (a, b) = g.endpoints(e);
        let mut walk = tree.path_from_root(g, a);
        walk.push(2 * e);
        walk.extend(tree.path_from_root(g, b).into_iter().rev().map(|d| d ^ 1));
        loop_chains.push(IntegerChain::from_darts(m, walk.iter().copied()));
        loops.push(walk);
    }

    // Θ_j(e*) = +1 when D(e) = e* for a dart e of loop j, -1 for D(e) = -e*
    let theta_table: Vec<Vec<i64>> = (0..m)
        .map(|dual_edge| {
            let primal = dual.d_inv(2 * dual_edge);
            loop_chains.iter().map(|c| c.dart_coeff(primal)).collect()
        })
        .collect();

    Ok(LoopSystem {
        loops,
        defining_edges,
        cotree,
        theta_table,
    })
}
