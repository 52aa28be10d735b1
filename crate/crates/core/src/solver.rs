//! Minimizing the extended objective over sums of tagged walks and reading
//! back a concrete cut.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use thiserror::Error;

use crate::balance::{rat_int, BalanceFunction, Objective, Rational};
use crate::cover::{
    shortest_tagged_walks, CoverBounds, CoverError, CoverStats, TaggedWalk, WalkTable,
};
use crate::dual::{build_dual, cut_chain_mask, membership, CutError, DualGraph, IntegerChain};
use crate::embedding::{EmbeddedGraph, EmbeddingError, FaceStructure};
use crate::homology::{build_loop_system, build_weight, HomologyError, LoopSystem, WeightFunction};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Cut(#[from] CutError),
    #[error("graph needs at least two vertices to have a cut")]
    TooSmall,
    #[error("chain is not a boundary: Θ = {0:?}")]
    NotBoundary(Vec<i64>),
    #[error("pulled-back chain is not a cut-space element (edge {edge})")]
    InconsistentPotential { edge: usize },
    #[error("chain decomposes into no proper cut")]
    EmptyDecomposition,
    #[error("no boundary combination found")]
    NoCandidate,
}

/// Everything derived from an embedding before the search starts.
#[derive(Debug, Clone)]
pub struct SurfaceInstance {
    pub graph: EmbeddedGraph,
    pub faces: FaceStructure,
    pub genus: usize,
    pub dual: DualGraph,
    pub weight: WeightFunction,
    pub loops: LoopSystem,
}

impl SurfaceInstance {
    pub fn new(graph: EmbeddedGraph, root: usize) -> Result<Self, SolveError> {
        let faces = graph.trace_faces();
        let genus = graph.genus_with(&faces)?;
        let dual = build_dual(&graph, &faces);
        let weight = build_weight(&graph, root)?;
        let loops = build_loop_system(&graph, &dual, &weight.tree)?;
        Ok(SurfaceInstance {
            graph,
            faces,
            genus,
            dual,
            weight,
            loops,
        })
    }

    pub fn n(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn m(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn what(&self, chain: &IntegerChain) -> i64 {
        self.weight.what(&self.dual, chain)
    }

    pub fn theta(&self, chain: &IntegerChain) -> Vec<i64> {
        self.loops.theta(chain)
    }

    pub fn cover_bounds(&self) -> CoverBounds {
        CoverBounds::for_instance(self.n(), self.m(), &self.loops)
    }

    pub fn walk_table(&self) -> Result<WalkTable, CoverError> {
        shortest_tagged_walks(&self.dual, &self.weight, &self.loops, self.cover_bounds())
    }

    pub fn tag(&self, darts: Vec<usize>) -> TaggedWalk {
        TaggedWalk::from_darts(darts, &self.dual, &self.weight, &self.loops)
    }
}

/// A cut `[S, S̄]` with its exact objective. `side` is the smaller side,
/// or the side holding vertex 0 when both have equal size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutResult {
    pub side: Vec<usize>,
    pub cut_edges: Vec<usize>,
    pub cut_size: u64,
    pub balance: Rational,
    pub value: Objective,
    pub expansion: Rational,
}

impl CutResult {
    pub fn from_mask(g: &EmbeddedGraph, in_s: &[bool], f: &BalanceFunction) -> CutResult {
        let n = g.vertex_count();
        let size = in_s.iter().filter(|&&b| b).count();
        assert!(size > 0 && size < n, "improper cut");
        let cut_edges: Vec<usize> = (0..g.edge_count())
            .filter(|&e| {
                let (u, v) = g.endpoints(e);
                in_s[u] != in_s[v]
            })
            .collect();
        let small = size.min(n - size);
        let keep = if size * 2 == n {
            in_s[0]
        } else {
            size < n - size
        };
        let side: Vec<usize> = (0..n).filter(|&v| in_s[v] == keep).collect();
        let cut_size = cut_edges.len() as u64;
        CutResult {
            side,
            cut_size,
            balance: Rational::new((small as i64).into(), (n as i64).into()),
            value: f.objective(cut_size, small as u64, n as u64),
            expansion: rat_int(cut_size as i64) / rat_int(small as i64),
            cut_edges,
        }
    }

    pub fn from_side(
        g: &EmbeddedGraph,
        side: &BTreeSet<usize>,
        f: &BalanceFunction,
    ) -> Result<CutResult, CutError> {
        let in_s = membership(g.vertex_count(), side)?;
        Ok(Self::from_mask(g, &in_s, f))
    }

    /// Total order: value, then cut size, then the sorted side.
    pub fn rank_cmp(&self, other: &CutResult) -> Ordering {
        (&self.value, self.cut_size, &self.side).cmp(&(&other.value, other.cut_size, &other.side))
    }
}

/// `|c| / f(|ŵ(c)| / n)`; infinite when `ŵ(c) = 0`, `|ŵ(c)| > n` or `f` vanishes.
pub fn evaluate_chain(
    instance: &SurfaceInstance,
    chain: &IntegerChain,
    f: &BalanceFunction,
) -> Objective {
    let k = instance.what(chain).unsigned_abs();
    let n = instance.n() as u64;
    if k == 0 || k > n {
        return Objective::Infinite;
    }
    f.objective(chain.norm(), k, n)
}

/// The minimizing sum of at most `g + 1` table walks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Combination {
    pub walks: Vec<TaggedWalk>,
    pub sigma: IntegerChain,
    pub value: Objective,
    /// Maximum number of walks a combination was allowed to use.
    pub slots: usize,
    /// Boundary combinations that passed the balance filter.
    pub candidates: u64,
}

/// Exact ordering of `norm / f(k / n)` over the finite grid of possible
/// `(norm, |k|)` pairs, precomputed so the search compares integers.
struct ValueRanks {
    n: usize,
    max_norm: usize,
    ranks: Vec<u32>,
}

impl ValueRanks {
    fn new(f: &BalanceFunction, n: usize, max_norm: usize) -> Self {
        let mut cells: Vec<(Objective, usize)> = Vec::new();
        for norm in 0..=max_norm {
            for k in 0..n {
                let value = if k == 0 {
                    Objective::Infinite
                } else {
                    f.objective(norm as u64, k as u64, n as u64)
                };
                cells.push((value, norm * n + k));
            }
        }
        cells.sort();
        let mut ranks = vec![0u32; cells.len()];
        let mut rank = 0u32;
        for i in 0..cells.len() {
            if i > 0 && cells[i].0 != cells[i - 1].0 {
                rank += 1;
            }
            ranks[cells[i].1] = rank;
        }
        ValueRanks { n, max_norm, ranks }
    }

    fn rank(&self, norm: u64, k: u64) -> u32 {
        debug_assert!(norm as usize <= self.max_norm && (k as usize) < self.n);
        self.ranks[norm as usize * self.n + k as usize]
    }
}

#[derive(Clone)]
struct Best {
    rank: u32,
    norm: u64,
    picks: Vec<usize>,
}

struct Combiner<'a> {
    walks: Vec<&'a TaggedWalk>,
    by_v: HashMap<&'a [i64], Vec<usize>>,
    ranks: ValueRanks,
    n: i64,
    m: usize,
    slots: usize,
    v_max: i64,
    edge_count: usize,
}

impl<'a> Combiner<'a> {
    fn darts_cmp(&self, a: &[usize], b: &[usize]) -> Ordering {
        let sa = a.iter().flat_map(|&i| self.walks[i].darts.iter());
        let sb = b.iter().flat_map(|&i| self.walks[i].darts.iter());
        sa.cmp(sb)
    }

    fn better(&self, a: &Best, b: &Best) -> bool {
        (a.rank, a.norm)
            .cmp(&(b.rank, b.norm))
            .then_with(|| self.darts_cmp(&a.picks, &b.picks))
            == Ordering::Less
    }

    fn consider(&self, picks: &[usize], best: &mut Option<Best>, candidates: &mut u64) {
        let k: i64 = picks.iter().map(|&i| self.walks[i].k).sum();
        if k == 0 || k.abs() >= self.n {
            return;
        }
        *candidates += 1;
        let mut sigma = IntegerChain::zero(self.edge_count);
        for &i in picks {
            sigma += &self.walks[i].chain;
        }
        let norm = sigma.norm();
        let cand = Best {
            rank: self.ranks.rank(norm, k.unsigned_abs()),
            norm,
            picks: picks.to_vec(),
        };
        if best.as_ref().is_none_or(|b| self.better(&cand, b)) {
            *best = Some(cand);
        }
    }

    /// Extends `picks` (indices nondecreasing, total length at most `m`).
    fn extend(
        &self,
        picks: &mut Vec<usize>,
        from: usize,
        length: usize,
        v: &[i64],
        best: &mut Option<Best>,
        candidates: &mut u64,
    ) {
        let left = self.slots - picks.len();
        // complete with one more walk whose Θ cancels v
        let need: Vec<i64> = v.iter().map(|x| -x).collect();
        if let Some(list) = self.by_v.get(need.as_slice()) {
            let start = list.partition_point(|&j| j < from);
            for &j in &list[start..] {
                if length + self.walks[j].length() > self.m {
                    break;
                }
                picks.push(j);
                self.consider(picks, best, candidates);
                picks.pop();
            }
        }
        if left < 2 {
            return;
        }
        for j in from..self.walks.len() {
            let len = self.walks[j].length();
            // at least two more walks, each no shorter than this one
            if length + 2 * len > self.m {
                break;
            }
            let next: Vec<i64> = v.iter().zip(&self.walks[j].v).map(|(a, b)| a + b).collect();
            let reach = (left as i64 - 1) * self.v_max;
            if next.iter().any(|x| x.abs() > reach) {
                continue;
            }
            picks.push(j);
            self.extend(picks, j, length + len, &next, best, candidates);
            picks.pop();
        }
    }
}

/// Searches sums `w_1 + … + w_r` of table walks (`r ≤ g + 1`, repetition
/// allowed, total walk length at most `m`) with `Θ = 0̄` and
/// `1 ≤ |ŵ| ≤ n - 1`, minimizing the extended objective. Ties go to the
/// smaller `|σ|`, then to the lexicographically smaller concatenated darts.
pub fn combine_and_minimize(
    instance: &SurfaceInstance,
    table: &WalkTable,
    f: &BalanceFunction,
) -> Result<Combination, SolveError> {
    let n = instance.n();
    let m = instance.m();
    let slots = instance.genus + 1;

    let mut walks: Vec<&TaggedWalk> = table.entries.values().filter(|w| w.length() > 0).collect();
    walks.sort_by(|a, b| (a.length(), &a.k, &a.v).cmp(&(b.length(), &b.k, &b.v)));
    let mut by_v: HashMap<&[i64], Vec<usize>> = HashMap::new();
    for (i, w) in walks.iter().enumerate() {
        by_v.entry(w.v.as_slice()).or_default().push(i);
    }
    let combiner = Combiner {
        walks,
        by_v,
        ranks: ValueRanks::new(f, n, m),
        n: n as i64,
        m,
        slots,
        v_max: table.bounds.v_max,
        edge_count: instance.dual.graph.edge_count(),
    };

    let dim = instance.loops.dimension();
    // the first pick partitions the search
    let partials: Vec<(Option<Best>, u64)> = (0..combiner.walks.len())
        .into_par_iter()
        .map(|first| {
            let mut best = None;
            let mut candidates = 0;
            let w = combiner.walks[first];
            let mut picks = vec![first];
            if w.v.iter().all(|&x| x == 0) {
                combiner.consider(&picks, &mut best, &mut candidates);
            }
            if slots >= 2 && 2 * w.length() <= m {
                let reach = (slots as i64 - 1) * combiner.v_max;
                if w.v.iter().all(|x| x.abs() <= reach) {
                    combiner.extend(
                        &mut picks,
                        first,
                        w.length(),
                        &w.v,
                        &mut best,
                        &mut candidates,
                    );
                }
            }
            (best, candidates)
        })
        .collect();
    debug_assert!(dim == 0 || slots >= 2);

    let mut best: Option<Best> = None;
    let mut candidates = 0;
    for (b, c) in partials {
        candidates += c;
        if let Some(b) = b {
            if best.as_ref().is_none_or(|cur| combiner.better(&b, cur)) {
                best = Some(b);
            }
        }
    }
    let best = best.ok_or(SolveError::NoCandidate)?;
    let chosen: Vec<TaggedWalk> = best
        .picks
        .iter()
        .map(|&i| combiner.walks[i].clone())
        .collect();
    let mut sigma = IntegerChain::zero(combiner.edge_count);
    for w in &chosen {
        sigma += &w.chain;
    }
    let value = evaluate_chain(instance, &sigma, f);
    Ok(Combination {
        walks: chosen,
        sigma,
        value,
        slots,
        candidates,
    })
}

/// Vertex potentials `λ` with `φ = Σ λ_v [{v}, V∖{v}]`, shifted so `min λ = 1`.
pub fn potentials(instance: &SurfaceInstance, phi: &IntegerChain) -> Result<Vec<i64>, SolveError> {
    let g = &instance.graph;
    let n = g.vertex_count();
    let root = instance.weight.root;
    let mut lambda: Vec<Option<i64>> = vec![None; n];
    lambda[root] = Some(0);
    let mut stack = vec![root];
    while let Some(a) = stack.pop() {
        let la = lambda[a].unwrap();
        for d in g.darts_at(a) {
            let b = g.head(d);
            if lambda[b].is_none() {
                lambda[b] = Some(la - phi.dart_coeff(d));
                stack.push(b);
            }
        }
    }
    let lambda: Vec<i64> = lambda.into_iter().map(Option::unwrap).collect();
    for e in 0..g.edge_count() {
        let (a, b) = g.endpoints(e);
        if lambda[a] - lambda[b] != phi.dart_coeff(2 * e) {
            return Err(SolveError::InconsistentPotential { edge: e });
        }
    }
    let min = *lambda.iter().min().unwrap();
    Ok(lambda.into_iter().map(|l| l - min + 1).collect())
}

/// Decomposes `D⁻¹(σ)` into nested threshold cuts `S_i = {v : λ_v ≥ i}`
/// and returns the best of them.
pub fn recover_cut(
    instance: &SurfaceInstance,
    sigma: &IntegerChain,
    f: &BalanceFunction,
) -> Result<CutResult, SolveError> {
    let theta = instance.theta(sigma);
    if theta.iter().any(|&x| x != 0) {
        return Err(SolveError::NotBoundary(theta));
    }
    let phi = instance.dual.primal_chain(sigma);
    let lambda = potentials(instance, &phi)?;
    let top = *lambda.iter().max().unwrap();
    let mut best: Option<CutResult> = None;
    for level in 2..=top {
        let in_s: Vec<bool> = lambda.iter().map(|&l| l >= level).collect();
        let cut = CutResult::from_mask(&instance.graph, &in_s, f);
        if best
            .as_ref()
            .is_none_or(|b| cut.rank_cmp(b) == Ordering::Less)
        {
            best = Some(cut);
        }
    }
    best.ok_or(SolveError::EmptyDecomposition)
}

/// Threshold cuts of a chain's potentials, as vertex masks, outermost first.
pub fn threshold_masks(lambda: &[i64]) -> Vec<Vec<bool>> {
    let top = lambda.iter().copied().max().unwrap_or(1);
    (2..=top)
        .map(|level| lambda.iter().map(|&l| l >= level).collect())
        .collect()
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub cut: CutResult,
    pub genus: usize,
    pub combination: Combination,
    pub table_entries: usize,
    pub cover_stats: CoverStats,
}

/// Full pipeline on one embedding.
pub fn solve_detailed(
    graph: &EmbeddedGraph,
    f: &BalanceFunction,
    root: usize,
) -> Result<(SolveReport, SurfaceInstance, WalkTable), SolveError> {
    if graph.vertex_count() < 2 {
        return Err(SolveError::TooSmall);
    }
    let instance = SurfaceInstance::new(graph.clone(), root)?;
    let table = instance.walk_table()?;
    let combination = combine_and_minimize(&instance, &table, f)?;
    let cut = recover_cut(&instance, &combination.sigma, f)?;
    let report = SolveReport {
        cut,
        genus: instance.genus,
        table_entries: table.len(),
        cover_stats: table.stats.clone(),
        combination,
    };
    Ok((report, instance, table))
}

pub fn solve(
    graph: &EmbeddedGraph,
    f: &BalanceFunction,
    root: usize,
) -> Result<CutResult, SolveError> {
    solve_detailed(graph, f, root).map(|(r, _, _)| r.cut)
}

/// Dual image of the oriented cut out of `in_s`.
pub fn cut_sigma(instance: &SurfaceInstance, in_s: &[bool]) -> IntegerChain {
    instance
        .dual
        .dual_chain(&cut_chain_mask(&instance.graph, in_s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balance::rat;
    use crate::embedding::parse_embedding;
    use crate::generate;

    fn k2() -> EmbeddedGraph {
        parse_embedding("vertices 2\nedge 0 1\nrot 0: 0\nrot 1: 1\n").unwrap()
    }

    fn finite(v: i64) -> Objective {
        Objective::Finite(rat_int(v))
    }

    #[test]
    fn evaluate_chain_examples() {
        let q = BalanceFunction::quotient();
        let inst = SurfaceInstance::new(k2(), 0).unwrap();
        let sigma = cut_sigma(&inst, &[true, false]);
        assert_eq!(evaluate_chain(&inst, &sigma, &q), finite(2));
        assert_eq!(
            evaluate_chain(&inst, &IntegerChain::zero(1), &q),
            Objective::Infinite
        );

        let inst = SurfaceInstance::new(generate::k4_planar(), 0).unwrap();
        let sigma = cut_sigma(&inst, &[false, true, false, false]);
        assert_eq!(evaluate_chain(&inst, &sigma, &q), finite(12));
        // a face chain that is not a single cut: ŵ of a facial walk
        let face = inst.dual.facial_chain(0);
        assert_ne!(
            evaluate_chain(&inst, &face, &q),
            Objective::Finite(rat(0, 1))
        );
    }

    #[test]
    fn k4_quotient_is_eight() {
        let r = solve(&generate::k4_planar(), &BalanceFunction::quotient(), 0).unwrap();
        assert_eq!(r.value, finite(8));
        assert_eq!(r.cut_size, 4);
        assert_eq!(r.balance, rat(1, 2));
    }

    #[test]
    fn c6_density_and_expansion() {
        let c6 = generate::cycle(6);
        let d = solve(&c6, &BalanceFunction::density(), 0).unwrap();
        assert_eq!(d.value, finite(8));
        assert_eq!(d.cut_size, 2);
        let e = solve(&c6, &BalanceFunction::expansion(), 0).unwrap();
        assert_eq!(e.value, finite(4));
        assert_eq!(e.expansion, rat(2, 3));
    }

    #[test]
    fn k2_single_cut() {
        let r = solve(&k2(), &BalanceFunction::quotient(), 0).unwrap();
        assert_eq!(r.value, finite(2));
        assert_eq!(r.cut_edges, vec![0]);
        let r = solve(&k2(), &BalanceFunction::density(), 1).unwrap();
        assert_eq!(r.value, finite(4));
    }

    #[test]
    fn recover_single_vertex() {
        let g = generate::k5_torus();
        let inst = SurfaceInstance::new(g, 0).unwrap();
        let q = BalanceFunction::quotient();
        for v in 0..5 {
            let mut in_s = vec![false; 5];
            in_s[v] = true;
            let sigma = cut_sigma(&inst, &in_s);
            let cut = recover_cut(&inst, &sigma, &q).unwrap();
            assert_eq!(cut.side, vec![v]);
            assert_eq!(cut.cut_size, 4);
            assert!(cut.value <= evaluate_chain(&inst, &sigma, &q));
        }
    }

    #[test]
    fn recover_nested_pair_on_path() {
        // path 0-1-2-3-4-5; σ = D([{0,1}]) + D([{0,1,2,3}])
        let g = generate::path(6);
        let inst = SurfaceInstance::new(g.clone(), 0).unwrap();
        let q = BalanceFunction::quotient();
        let inner = [true, true, false, false, false, false];
        let outer = [true, true, true, true, false, false];
        let sigma = &cut_sigma(&inst, &inner) + &cut_sigma(&inst, &outer);
        let phi = inst.dual.primal_chain(&sigma);
        let lambda = potentials(&inst, &phi).unwrap();
        assert_eq!(lambda, vec![3, 3, 2, 2, 1, 1]);
        let masks = threshold_masks(&lambda);
        assert_eq!(masks, vec![outer.to_vec(), inner.to_vec()]);
        // direct evaluation: both cuts have one edge; {0,1} has balance 1/3, {0..3} has 1/3
        let a = CutResult::from_mask(&g, &inner, &q);
        let b = CutResult::from_mask(&g, &outer, &q);
        let best = if a.rank_cmp(&b) == Ordering::Less {
            a
        } else {
            b
        };
        let got = recover_cut(&inst, &sigma, &q).unwrap();
        assert_eq!(got, best);
        assert!(got.value <= evaluate_chain(&inst, &sigma, &q));
    }

    #[test]
    fn recover_rejects_non_boundary() {
        let g = generate::k5_torus();
        let inst = SurfaceInstance::new(g, 0).unwrap();
        let companion = &inst.loops.companion_walks(&inst.dual)[0];
        let chain = IntegerChain::from_darts(10, companion.iter().copied());
        assert!(matches!(
            recover_cut(&inst, &chain, &BalanceFunction::quotient()),
            Err(SolveError::NotBoundary(_))
        ));
    }

    #[test]
    fn planar_uses_single_walks() {
        let inst = SurfaceInstance::new(generate::k4_planar(), 0).unwrap();
        let table = inst.walk_table().unwrap();
        let c = combine_and_minimize(&inst, &table, &BalanceFunction::quotient()).unwrap();
        assert_eq!(c.slots, 1);
        assert_eq!(c.walks.len(), 1);
        assert_eq!(c.value, finite(8));
    }

    #[test]
    fn too_small() {
        let g = parse_embedding("vertices 1\nrot 0:\n").unwrap();
        assert_eq!(
            solve(&g, &BalanceFunction::quotient(), 0).unwrap_err(),
            SolveError::TooSmall
        );
    }

    #[test]
    fn side_normalization() {
        let g = generate::cycle(4);
        let q = BalanceFunction::quotient();
        let c = CutResult::from_mask(&g, &[false, true, true, false], &q);
        assert_eq!(c.side, vec![0, 3]);
        let c = CutResult::from_mask(&g, &[true, true, true, false], &q);
        assert_eq!(c.side, vec![3]);
        assert_eq!(c.expansion, rat(2, 1));
    }
}
