//! Geometric duals and the edge space.

use std::collections::BTreeSet;
use std::ops::{Add, AddAssign, Neg, Sub};

use crate::embedding::{EmbeddedGraph, FaceStructure};

/// Element of the edge space: one signed coefficient per edge, stored on
/// the even dart `2i`. The odd dart implicitly carries the negation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerChain {
    coeffs: Vec<i64>,
}

impl IntegerChain {
    pub fn zero(edge_count: usize) -> Self {
        IntegerChain {
            coeffs: vec![0; edge_count],
        }
    }

    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        IntegerChain { coeffs }
    }

    /// Sum of the given darts, each with coefficient one.
    pub fn from_darts(edge_count: usize, darts: impl IntoIterator<Item = usize>) -> Self {
        let mut chain = Self::zero(edge_count);
        for d in darts {
            chain.add_dart(d, 1);
        }
        chain
    }

    pub fn edge_count(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Coefficient of dart `d`.
    #[inline]
    pub fn dart_coeff(&self, d: usize) -> i64 {
        let c = self.coeffs[d / 2];
        if d & 1 == 0 {
            c
        } else {
            -c
        }
    }

    #[inline]
    pub fn add_dart(&mut self, d: usize, k: i64) {
        if d & 1 == 0 {
            self.coeffs[d / 2] += k;
        } else {
            self.coeffs[d / 2] -= k;
        }
    }

    /// `|ρ|`: total absolute coefficient.
    pub fn norm(&self) -> u64 {
        self.coeffs.iter().map(|c| c.unsigned_abs()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Edges with nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
    }

    /// Sum over darts of `value(d) * coeff(d)` for an antisymmetric per-edge value.
    pub fn pair(&self, per_edge: &[i64]) -> i64 {
        self.coeffs.iter().zip(per_edge).map(|(&c, &w)| c * w).sum()
    }
}

impl Add for &IntegerChain {
    type Output = IntegerChain;
    fn add(self, rhs: &IntegerChain) -> IntegerChain {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&IntegerChain> for IntegerChain {
    fn add_assign(&mut self, rhs: &IntegerChain) {
        assert_eq!(
            self.coeffs.len(),
            rhs.coeffs.len(),
            "chains over different graphs"
        );
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Sub for &IntegerChain {
    type Output = IntegerChain;
    fn sub(self, rhs: &IntegerChain) -> IntegerChain {
        self + &(-rhs)
    }
}

impl Neg for &IntegerChain {
    type Output = IntegerChain;
    fn neg(self) -> IntegerChain {
        IntegerChain {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for IntegerChain {
    type Output = IntegerChain;
    fn neg(self) -> IntegerChain {
        -&self
    }
}

/// The geometric dual together with the oriented-edge bijection `D`.
///
/// Dual vertex `i` is face `i` of the primal. The primal dart `d` maps to
/// the dual dart running from `left(d)` to `right(d)`, so `D(D(d)) = -d`.
#[derive(Debug, Clone)]
pub struct DualGraph {
    pub graph: EmbeddedGraph,
    pub faces: FaceStructure,
    d_map: Vec<usize>,
    d_inv: Vec<usize>,
}

pub fn build_dual(primal: &EmbeddedGraph, faces: &FaceStructure) -> DualGraph {
    let m = primal.edge_count();
    let edges: Vec<(usize, usize)> = (0..m)
        .map(|e| (faces.face_of[2 * e], faces.face_of[2 * e + 1]))
        .collect();
    // Around a dual vertex the darts follow its facial walk backwards; this
    // orientation makes the dual faces the stars of primal vertices with
    // the sign required by D∘D = -id.
    let rotations: Vec<Vec<usize>> = faces
        .facial_walks
        .iter()
        .map(|walk| walk.iter().rev().copied().collect())
        .collect();
    let graph = EmbeddedGraph::with_loops(faces.face_count(), &edges, &rotations)
        .expect("dual of a valid embedding is a valid embedding");
    let dual_faces = graph.trace_faces();
    let identity: Vec<usize> = (0..2 * m).collect();
    DualGraph {
        graph,
        faces: dual_faces,
        d_map: identity.clone(),
        d_inv: identity,
    }
}

impl DualGraph {
    /// Dual dart of the primal dart `d`.
    pub fn d_map(&self, d: usize) -> usize {
        self.d_map[d]
    }

    /// Primal dart whose dual is `d`.
    pub fn d_inv(&self, d: usize) -> usize {
        self.d_inv[d]
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Transports a primal chain to the dual.
    pub fn dual_chain(&self, chain: &IntegerChain) -> IntegerChain {
        transport(chain, &self.d_map)
    }

    /// Transports a dual chain back to the primal.
    pub fn primal_chain(&self, chain: &IntegerChain) -> IntegerChain {
        transport(chain, &self.d_inv)
    }

    /// Oriented facial walk of dual face `i` as a chain.
    pub fn facial_chain(&self, face: usize) -> IntegerChain {
        IntegerChain::from_darts(
            self.graph.edge_count(),
            self.faces.facial_walks[face].iter().copied(),
        )
    }
}

fn transport(chain: &IntegerChain, map: &[usize]) -> IntegerChain {
    let mut out = IntegerChain::zero(chain.edge_count());
    for (e, c) in chain.support() {
        out.add_dart(map[2 * e], c);
    }
    out
}

/// Oriented cut `[S, S̄]`: coefficient one on every dart leaving `S`.
pub fn cut_chain(graph: &EmbeddedGraph, side: &BTreeSet<usize>) -> Result<IntegerChain, CutError> {
    let in_s = membership(graph.vertex_count(), side)?;
    Ok(cut_chain_mask(graph, &in_s))
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CutError {
    #[error("cut side must be a nonempty proper subset of the vertices")]
    Improper,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
}

pub(crate) fn membership(n: usize, side: &BTreeSet<usize>) -> Result<Vec<bool>, CutError> {
    if side.is_empty() || side.len() >= n {
        return Err(CutError::Improper);
    }
    let mut in_s = vec![false; n];
    for &v in side {
        if v >= n {
            return Err(CutError::VertexOutOfRange(v));
        }
        in_s[v] = true;
    }
    Ok(in_s)
}

pub(crate) fn cut_chain_mask(graph: &EmbeddedGraph, in_s: &[bool]) -> IntegerChain {
    let mut chain = IntegerChain::zero(graph.edge_count());
    for e in 0..graph.edge_count() {
        let (u, v) = graph.endpoints(e);
        match (in_s[u], in_s[v]) {
            (true, false) => chain.add_dart(2 * e, 1),
            (false, true) => chain.add_dart(2 * e + 1, 1),
            _ => {}
        }
    }
    chain
}
