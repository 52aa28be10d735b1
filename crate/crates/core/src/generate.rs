//! Constructors for embedded test graphs: named small graphs, exhaustive
//! rotation search, and random embeddings of prescribed genus.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::embedding::{EmbeddedGraph, EmbeddingError};

/// Planar embedding of a straight-line drawing. Darts around each vertex
/// are sorted by angle counterclockwise. Parallel edges are not supported.
pub fn planar_from_positions(
    edges: &[(usize, usize)],
    positions: &[(f64, f64)],
) -> Result<EmbeddedGraph, EmbeddingError> {
    let n = positions.len();
    let mut rotations: Vec<Vec<(f64, usize)>> = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        if u >= n || v >= n {
            return Err(EmbeddingError::VertexOutOfRange {
                vertex: u.max(v),
                n,
            });
        }
        let angle = |a: usize, b: usize| {
            let (ax, ay) = positions[a];
            let (bx, by) = positions[b];
            (by - ay).atan2(bx - ax)
        };
        rotations[u].push((angle(u, v), 2 * i));
        rotations[v].push((angle(v, u), 2 * i + 1));
    }
    let rotations: Vec<Vec<usize>> = rotations
        .into_iter()
        .map(|mut r| {
            r.sort_by(|a, b| a.0.total_cmp(&b.0));
            r.into_iter().map(|(_, d)| d).collect()
        })
        .collect();
    EmbeddedGraph::new(n, edges, &rotations)
}

/// Cycle `C_n` (for `n = 2`, a pair of parallel edges).
pub fn cycle(n: usize) -> EmbeddedGraph {
    assert!(n >= 2);
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let rotations: Vec<Vec<usize>> = (0..n)
        .map(|i| vec![2 * i, 2 * ((i + n - 1) % n) + 1])
        .collect();
    EmbeddedGraph::new(n, &edges, &rotations).unwrap()
}

/// Path on `n` vertices.
pub fn path(n: usize) -> EmbeddedGraph {
    assert!(n >= 1);
    let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    let rotations: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let mut r = Vec::new();
            if i + 1 < n {
                r.push(2 * i);
            }
            if i > 0 {
                r.push(2 * (i - 1) + 1);
            }
            r
        })
        .collect();
    EmbeddedGraph::new(n, &edges, &rotations).unwrap()
}

/// Two vertices joined by `k` parallel edges, planar.
pub fn dipole(k: usize) -> EmbeddedGraph {
    assert!(k >= 1);
    let edges = vec![(0, 1); k];
    let rotations = vec![
        (0..k).map(|i| 2 * i).collect(),
        (0..k).rev().map(|i| 2 * i + 1).collect(),
    ];
    EmbeddedGraph::new(2, &edges, &rotations).unwrap()
}

pub fn k4_planar() -> EmbeddedGraph {
    planar_from_positions(
        &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)],
        &[(0.0, 0.0), (4.0, 0.0), (2.0, 4.0), (2.0, 1.5)],
    )
    .unwrap()
}

pub fn complete_graph_edges(n: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    edges
}

pub fn complete_bipartite_edges(a: usize, b: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in 0..b {
            edges.push((u, a + v));
        }
    }
    edges
}

/// First embedding of the given genus, scanning rotation systems in a fixed
/// order. Returns `None` when none exists or the search space exceeds `limit`.
pub fn search_embedding(
    n: usize,
    edges: &[(usize, usize)],
    genus: usize,
    limit: u64,
) -> Option<EmbeddedGraph> {
    let mut stars: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        stars[u].push(2 * i);
        stars[v].push(2 * i + 1);
    }
    // all cyclic orders of each star: fix the first dart, permute the rest
    let orders: Vec<Vec<Vec<usize>>> = stars.iter().map(|s| cyclic_orders(s)).collect();
    let total: u64 = orders.iter().map(|o| o.len() as u64).product();
    if total > limit {
        return None;
    }
    let mut index = vec![0usize; n];
    loop {
        let rotations: Vec<Vec<usize>> = (0..n).map(|v| orders[v][index[v]].clone()).collect();
        if let Ok(g) = EmbeddedGraph::new(n, edges, &rotations) {
            if g.genus().ok() == Some(genus) {
                return Some(g);
            }
        }
        let mut v = 0;
        loop {
            if v == n {
                return None;
            }
            index[v] += 1;
            if index[v] < orders[v].len() {
                break;
            }
            index[v] = 0;
            v += 1;
        }
    }
}

fn cyclic_orders(star: &[usize]) -> Vec<Vec<usize>> {
    if star.len() <= 2 {
        return vec![star.to_vec()];
    }
    let mut out = Vec::new();
    let mut rest = star[1..].to_vec();
    permutations(&mut rest, 0, &mut |p| {
        let mut order = vec![star[0]];
        order.extend_from_slice(p);
        out.push(order);
    });
    out
}

fn permutations(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// `K5` on the torus (five faces).
pub fn k5_torus() -> EmbeddedGraph {
    search_embedding(5, &complete_graph_edges(5), 1, 1 << 20).expect("K5 embeds on the torus")
}

/// `K3,3` on the torus (three faces).
pub fn k33_torus() -> EmbeddedGraph {
    search_embedding(6, &complete_bipartite_edges(3, 3), 1, 1 << 20)
        .expect("K3,3 embeds on the torus")
}

/// Incrementally built rotation system.
#[derive(Debug, Clone)]
pub struct EmbeddingBuilder {
    n: usize,
    edges: Vec<(usize, usize)>,
    rotations: Vec<Vec<usize>>,
}

impl EmbeddingBuilder {
    pub fn from_graph(g: &EmbeddedGraph) -> Self {
        EmbeddingBuilder {
            n: g.vertex_count(),
            edges: g.edges(),
            rotations: g.rotations(),
        }
    }

    /// Random spanning tree with random rotations (a genus-0 embedding).
    pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Self {
        let mut b = EmbeddingBuilder {
            n,
            edges: Vec::new(),
            rotations: vec![Vec::new(); n],
        };
        for v in 1..n {
            let parent = rng.gen_range(0..v);
            let e = b.edges.len();
            b.edges.push((parent, v));
            let pos = rng.gen_range(0..=b.rotations[parent].len());
            b.rotations[parent].insert(pos, 2 * e);
            b.rotations[v].push(2 * e + 1);
        }
        b
    }

    pub fn build(&self) -> EmbeddedGraph {
        EmbeddedGraph::new(self.n, &self.edges, &self.rotations).expect("builder keeps validity")
    }

    /// Corners as `(vertex, dart)`: the angle at `vertex` just after `dart`
    /// in rotation order, grouped by the face that sweeps through it.
    fn corners_by_face(&self) -> Vec<Vec<(usize, usize)>> {
        let g = self.build();
        let faces = g.trace_faces();
        let mut out = vec![Vec::new(); faces.face_count()];
        for d in 0..g.dart_count() {
            // the face of twin(d) turns from twin(d) into rotation(d)
            out[faces.face_of[d ^ 1]].push((g.tail(d), d));
        }
        out
    }

    fn insert_edge(&mut self, a: (usize, usize), b: (usize, usize)) {
        let e = self.edges.len();
        self.edges.push((a.0, b.0));
        for (corner, dart) in [(a, 2 * e), (b, 2 * e + 1)] {
            let rot = &mut self.rotations[corner.0];
            let pos = rot.iter().position(|&d| d == corner.1).unwrap();
            rot.insert(pos + 1, dart);
        }
    }

    /// Adds an edge inside one face, splitting it. Genus is unchanged.
    pub fn split_face<R: Rng>(&mut self, rng: &mut R) -> bool {
        let corners = self.corners_by_face();
        let mut faces: Vec<usize> = (0..corners.len()).collect();
        faces.shuffle(rng);
        for f in faces {
            let pairs: Vec<((usize, usize), (usize, usize))> = corners[f]
                .iter()
                .flat_map(|&a| corners[f].iter().map(move |&b| (a, b)))
                .filter(|(a, b)| a.0 != b.0)
                .collect();
            if let Some(&(a, b)) = pairs.choose(rng) {
                self.insert_edge(a, b);
                return true;
            }
        }
        false
    }

    /// Adds an edge joining two distinct faces, raising the genus by one.
    pub fn add_handle<R: Rng>(&mut self, rng: &mut R) -> bool {
        let corners = self.corners_by_face();
        let mut pairs = Vec::new();
        for f in 0..corners.len() {
            for h in f + 1..corners.len() {
                for &a in &corners[f] {
                    for &b in &corners[h] {
                        if a.0 != b.0 {
                            pairs.push((a, b));
                        }
                    }
                }
            }
        }
        match pairs.choose(rng) {
            Some(&(a, b)) => {
                self.insert_edge(a, b);
                true
            }
            None => false,
        }
    }
}

/// Random connected loopless embedding with `n` vertices, `m` edges and the
/// given genus. Requires `m >= n - 1 + 2 * genus` (each handle consumes a
/// face made by a previous split).
pub fn random_embedding<R: Rng>(n: usize, m: usize, genus: usize, rng: &mut R) -> EmbeddedGraph {
    assert!(n >= 2);
    assert!(
        m + 1 >= n + 2 * genus,
        "not enough edges for the requested genus"
    );
    let mut b = EmbeddingBuilder::random_tree(n, rng);
    let splits = m + 1 - n - genus;
    // interleave so that every handle has two faces to join
    let mut handles_left = genus;
    let mut splits_left = splits;
    while handles_left + splits_left > 0 {
        let faces = b.corners_by_face().len();
        let do_handle = handles_left > 0 && faces >= 2 && (splits_left == 0 || rng.gen_bool(0.5));
        if do_handle {
            assert!(b.add_handle(rng));
            handles_left -= 1;
        } else {
            assert!(splits_left > 0, "ran out of splits before placing handles");
            assert!(b.split_face(rng));
            splits_left -= 1;
        }
    }
    let g = b.build();
    debug_assert_eq!(g.genus().unwrap(), genus);
    g
}
