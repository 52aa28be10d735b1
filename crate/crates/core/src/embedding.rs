//! Rotation-system embeddings of multigraphs on closed orientable surfaces.
//!
//! Edge `i` owns darts `2i` (tail to head, in file order) and `2i + 1`
//! (the reverse). The rotation maps each dart to the next dart
//! counterclockwise around its tail. Faces are the orbits of
//! `rotation ∘ twin`; the face containing a dart is called its left face.

use std::collections::VecDeque;
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `vertices` header")]
    MissingHeader,
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("dart {dart} out of range (2m = {darts})")]
    DartOutOfRange { dart: usize, darts: usize },
    #[error("dart {dart} multiply assigned")]
    DartMultiplyAssigned { dart: usize },
    #[error("dart {dart} not assigned to any rotation")]
    DartUnassigned { dart: usize },
    #[error("dart {dart} listed under vertex {vertex} but its tail is {tail}")]
    TailMismatch {
        dart: usize,
        vertex: usize,
        tail: usize,
    },
    #[error("no rotation given for vertex {vertex}")]
    MissingRotation { vertex: usize },
    #[error("rotation for vertex {vertex} given twice")]
    DuplicateRotation { vertex: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("edge {edge} is a loop; input graphs must be loopless")]
    LoopEdge { edge: usize },
    #[error("graph has no vertices")]
    Empty,
    #[error("Euler characteristic {euler} does not give a nonnegative integer genus")]
    InvalidGenus { euler: i64 },
}

/// An oriented edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dart {
    pub id: usize,
    pub twin: usize,
    pub tail: usize,
    pub head: usize,
    pub edge: usize,
}

/// A connected multigraph together with a rotation system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedGraph {
    n: usize,
    darts: Vec<Dart>,
    rotation: Vec<usize>,
    /// One dart leaving each vertex, `usize::MAX` for an isolated vertex.
    first_dart: Vec<usize>,
}

/// Facial walks of an embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceStructure {
    pub face_of: Vec<usize>,
    pub facial_walks: Vec<Vec<usize>>,
}

impl FaceStructure {
    pub fn face_count(&self) -> usize {
        self.facial_walks.len()
    }
}

impl EmbeddedGraph {
    /// Builds a loopless embedded graph from an edge list and, for each
    /// vertex, the counterclockwise cyclic order of the darts leaving it.
    pub fn new(
        n: usize,
        edges: &[(usize, usize)],
        rotations: &[Vec<usize>],
    ) -> Result<Self, EmbeddingError> {
        if let Some(edge) = edges.iter().position(|&(u, v)| u == v) {
            return Err(EmbeddingError::LoopEdge { edge });
        }
        Self::with_loops(n, edges, rotations)
    }

    /// Like [`EmbeddedGraph::new`] but accepts loop edges, as needed for
    /// geometric duals.
    pub fn with_loops(
        n: usize,
        edges: &[(usize, usize)],
        rotations: &[Vec<usize>],
    ) -> Result<Self, EmbeddingError> {
        if n == 0 {
            return Err(EmbeddingError::Empty);
        }
        let mut darts = Vec::with_capacity(2 * edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            for &x in &[u, v] {
                if x >= n {
                    return Err(EmbeddingError::VertexOutOfRange { vertex: x, n });
                }
            }
            darts.push(Dart {
                id: 2 * i,
                twin: 2 * i + 1,
                tail: u,
                head: v,
                edge: i,
            });
            darts.push(Dart {
                id: 2 * i + 1,
                twin: 2 * i,
                tail: v,
                head: u,
                edge: i,
            });
        }
        if rotations.len() != n {
            return Err(EmbeddingError::MissingRotation {
                vertex: rotations.len().min(n.saturating_sub(1)),
            });
        }

        let total = darts.len();
        let mut rotation = vec![usize::MAX; total];
        let mut first_dart = vec![usize::MAX; n];
        for (v, cycle) in rotations.iter().enumerate() {
            for (pos, &d) in cycle.iter().enumerate() {
                if d >= total {
                    return Err(EmbeddingError::DartOutOfRange {
                        dart: d,
                        darts: total,
                    });
                }
                if rotation[d] != usize::MAX {
                    return Err(EmbeddingError::DartMultiplyAssigned { dart: d });
                }
                if darts[d].tail != v {
                    return Err(EmbeddingError::TailMismatch {
                        dart: d,
                        vertex: v,
                        tail: darts[d].tail,
                    });
                }
                rotation[d] = cycle[(pos + 1) % cycle.len()];
            }
            if let Some(&d) = cycle.first() {
                first_dart[v] = d;
            }
        }
        if let Some(dart) = rotation.iter().position(|&r| r == usize::MAX) {
            return Err(EmbeddingError::DartUnassigned { dart });
        }

        let graph = EmbeddedGraph {
            n,
            darts,
            rotation,
            first_dart,
        };
        if !graph.is_connected() {
            return Err(EmbeddingError::Disconnected);
        }
        Ok(graph)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.darts.len() / 2
    }

    pub fn dart_count(&self) -> usize {
        self.darts.len()
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn dart(&self, d: usize) -> &Dart {
        &self.darts[d]
    }

    #[inline]
    pub fn tail(&self, d: usize) -> usize {
        self.darts[d].tail
    }

    #[inline]
    pub fn head(&self, d: usize) -> usize {
        self.darts[d].head
    }

    #[inline]
    pub fn twin(d: usize) -> usize {
        d ^ 1
    }

    /// Next dart counterclockwise around the tail of `d`.
    #[inline]
    pub fn rotation(&self, d: usize) -> usize {
        self.rotation[d]
    }

    /// Endpoints of edge `e` in file order.
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        (self.darts[2 * e].tail, self.darts[2 * e].head)
    }

    /// Darts leaving `v` in rotation order.
    pub fn darts_at(&self, v: usize) -> Vec<usize> {
        let start = self.first_dart[v];
        if start == usize::MAX {
            return Vec::new();
        }
        let mut out = vec![start];
        let mut d = self.rotation[start];
        while d != start {
            out.push(d);
            d = self.rotation[d];
        }
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.darts_at(v).len()
    }

    fn is_connected(&self) -> bool {
        let mut adjacency = vec![Vec::new(); self.n];
        for d in &self.darts {
            adjacency[d.tail].push(d.head);
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    /// Face permutation `rotation ∘ twin`: the dart following `d` along its left face.
    #[inline]
    pub fn face_successor(&self, d: usize) -> usize {
        self.rotation[Self::twin(d)]
    }

    pub fn trace_faces(&self) -> FaceStructure {
        let mut face_of = vec![usize::MAX; self.darts.len()];
        let mut facial_walks = Vec::new();
        for start in 0..self.darts.len() {
            if face_of[start] != usize::MAX {
                continue;
            }
            let face = facial_walks.len();
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                face_of[d] = face;
                walk.push(d);
                d = self.face_successor(d);
                if d == start {
                    break;
                }
            }
            facial_walks.push(walk);
        }
        FaceStructure {
            face_of,
            facial_walks,
        }
    }

    /// Genus from Euler's formula `n - m + ℓ = 2 - 2g`.
    pub fn genus_with(&self, faces: &FaceStructure) -> Result<usize, EmbeddingError> {
        let euler = self.n as i64 - self.edge_count() as i64 + faces.face_count() as i64;
        let twice = 2 - euler;
        if twice < 0 || twice % 2 != 0 {
            return Err(EmbeddingError::InvalidGenus { euler });
        }
        Ok((twice / 2) as usize)
    }

    pub fn genus(&self) -> Result<usize, EmbeddingError> {
        self.genus_with(&self.trace_faces())
    }

    /// The mirror embedding: every rotation cycle reversed.
    pub fn mirror(&self) -> EmbeddedGraph {
        let mut rotation = vec![0; self.rotation.len()];
        for (d, &next) in self.rotation.iter().enumerate() {
            rotation[next] = d;
        }
        EmbeddedGraph {
            n: self.n,
            darts: self.darts.clone(),
            rotation,
            first_dart: self.first_dart.clone(),
        }
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.edge_count()).map(|e| self.endpoints(e)).collect()
    }

    pub fn rotations(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|v| self.darts_at(v)).collect()
    }

    /// Serializes in the embedded-graph text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "vertices {}", self.n).unwrap();
        for (u, v) in self.edges() {
            writeln!(out, "edge {u} {v}").unwrap();
        }
        for v in 0..self.n {
            let darts: Vec<String> = self.darts_at(v).iter().map(|d| d.to_string()).collect();
            if darts.is_empty() {
                writeln!(out, "rot {v}:").unwrap();
            } else {
                writeln!(out, "rot {v}: {}", darts.join(" ")).unwrap();
            }
        }
        out
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> EmbeddingError {
    EmbeddingError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize, EmbeddingError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("expected {what}, found `{tok}`")))
}

/// Parses the embedded-graph text format:
///
/// ```text
/// vertices <n>
/// edge <u> <v>          # m lines; edge i gets darts 2i: u→v, 2i+1: v→u
/// rot <v>: <d0> <d1> …  # n lines, counterclockwise dart order around v
/// ```
pub fn parse_embedding(text: &str) -> Result<EmbeddedGraph, EmbeddingError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut rotations: Vec<Option<Vec<usize>>> = Vec::new();
    let mut seen_rot = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let keyword = tokens.next().unwrap();
        match keyword {
            "vertices" => {
                if n.is_some() {
                    return Err(syntax(line_no, "duplicate `vertices` line"));
                }
                let tok = tokens
                    .next()
                    .ok_or_else(|| syntax(line_no, "missing vertex count"))?;
                let count = parse_usize(tok, line_no, "vertex count")?;
                if tokens.next().is_some() {
                    return Err(syntax(line_no, "trailing tokens"));
                }
                n = Some(count);
                rotations = vec![None; count];
            }
            "edge" => {
                let n = n.ok_or(EmbeddingError::MissingHeader)?;
                if seen_rot {
                    return Err(syntax(line_no, "`edge` after `rot` lines"));
                }
                let toks: Vec<&str> = tokens.collect();
                if toks.len() != 2 {
                    return Err(syntax(line_no, "expected `edge <u> <v>`"));
                }
                let u = parse_usize(toks[0], line_no, "vertex")?;
                let v = parse_usize(toks[1], line_no, "vertex")?;
                for x in [u, v] {
                    if x >= n {
                        return Err(EmbeddingError::VertexOutOfRange { vertex: x, n });
                    }
                }
                edges.push((u, v));
            }
            "rot" => {
                let n = n.ok_or(EmbeddingError::MissingHeader)?;
                seen_rot = true;
                let rest = line["rot".len()..].trim();
                let (head, tail) = rest
                    .split_once(':')
                    .ok_or_else(|| syntax(line_no, "expected `rot <v>: <darts>`"))?;
                let v = parse_usize(head.trim(), line_no, "vertex")?;
                if v >= n {
                    return Err(EmbeddingError::VertexOutOfRange { vertex: v, n });
                }
                if rotations[v].is_some() {
                    return Err(EmbeddingError::DuplicateRotation { vertex: v });
                }
                let darts = tail
                    .split_whitespace()
                    .map(|t| parse_usize(t, line_no, "dart"))
                    .collect::<Result<Vec<_>, _>>()?;
                rotations[v] = Some(darts);
            }
            other => return Err(syntax(line_no, format!("unknown keyword `{other}`"))),
        }
    }

    let n = n.ok_or(EmbeddingError::MissingHeader)?;
    let rotations = rotations
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or(EmbeddingError::MissingRotation { vertex: v }))
        .collect::<Result<Vec<_>, _>>()?;
    EmbeddedGraph::new(n, &edges, &rotations)
}

#[cfg(test)]
mod tests {
    use super::*;

    const K3: &str =
        "vertices 3\nedge 0 1\nedge 1 2\nedge 2 0\nrot 0: 0 5\nrot 1: 1 2\nrot 2: 3 4\n";

    #[test]
    fn parses_triangle() {
        let g = parse_embedding(K3).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        let faces = g.trace_faces();
        assert_eq!(faces.face_count(), 2);
        assert!(faces.facial_walks.iter().all(|w| w.len() == 3));
        assert_eq!(g.genus().unwrap(), 0);
    }

    #[test]
    fn dart_invariants() {
        let g = parse_embedding(K3).unwrap();
        for d in g.darts() {
            assert_eq!(g.dart(d.twin).twin, d.id);
            assert_ne!(d.twin, d.id);
            assert_eq!(g.tail(d.twin), d.head);
            assert_eq!(g.head(d.twin), d.tail);
            assert_eq!(d.edge, d.id / 2);
        }
    }

    #[test]
    fn rejects_multiply_assigned_dart() {
        let text =
            "vertices 3\nedge 0 1\nedge 1 2\nedge 2 0\nrot 0: 0 5 4\nrot 1: 1 2\nrot 2: 3 4\n";
        let err = parse_embedding(text).unwrap_err();
        // dart 4 has tail 2, so listing it under 0 trips the tail check first
        assert!(matches!(err, EmbeddingError::TailMismatch { dart: 4, .. }));

        let text =
            "vertices 3\nedge 0 1\nedge 1 2\nedge 2 0\nrot 0: 0 5\nrot 1: 1 2\nrot 2: 3 4 4\n";
        let err = parse_embedding(text).unwrap_err();
        assert_eq!(err, EmbeddingError::DartMultiplyAssigned { dart: 4 });
        assert_eq!(err.to_string(), "dart 4 multiply assigned");
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            parse_embedding("vertices 2\nedge 0 0\nrot 0: 0 1\nrot 1:\n"),
            Err(EmbeddingError::LoopEdge { edge: 0 })
        ));
        assert!(matches!(
            parse_embedding(
                "vertices 4\nedge 0 1\nedge 2 3\nrot 0: 0\nrot 1: 1\nrot 2: 2\nrot 3: 3\n"
            ),
            Err(EmbeddingError::Disconnected)
        ));
        assert!(matches!(
            parse_embedding("vertices 2\nedge 0 1\nrot 0: 0\n"),
            Err(EmbeddingError::MissingRotation { vertex: 1 })
        ));
        assert!(matches!(
            parse_embedding("vertices 2\nedge 0 1\nrot 0:\nrot 1: 1\n"),
            Err(EmbeddingError::DartUnassigned { dart: 0 })
        ));
        assert!(matches!(
            parse_embedding("vertices 2\nedge 0 x\n"),
            Err(EmbeddingError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_embedding("edge 0 1\n"),
            Err(EmbeddingError::MissingHeader)
        ));
        assert!(matches!(
            parse_embedding("vertices 2\nedge 0 1\nfoo\n"),
            Err(EmbeddingError::Syntax { line: 3, .. })
        ));
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = format!(
            "# triangle\n\n{}",
            K3.replace("edge 1 2", "edge 1 2   # middle")
        );
        assert_eq!(
            parse_embedding(&text).unwrap(),
            parse_embedding(K3).unwrap()
        );
    }

    #[test]
    fn text_round_trip() {
        let g = parse_embedding(K3).unwrap();
        assert_eq!(parse_embedding(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn cube_is_planar() {
        // cube: bottom 0..4, top 4..8
        let edges = [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 0),
            (4, 5),
            (5, 6),
            (6, 7),
            (7, 4),
            (0, 4),
            (1, 5),
            (2, 6),
            (3, 7),
        ];
        let g = crate::generate::planar_from_positions(
            &edges,
            &[
                (0.0, 0.0),
                (3.0, 0.0),
                (3.0, 3.0),
                (0.0, 3.0),
                (1.0, 1.0),
                (2.0, 1.0),
                (2.0, 2.0),
                (1.0, 2.0),
            ],
        )
        .unwrap();
        let faces = g.trace_faces();
        assert_eq!(
            (g.vertex_count(), g.edge_count(), faces.face_count()),
            (8, 12, 6)
        );
        assert_eq!(g.genus_with(&faces).unwrap(), 0);
    }

    #[test]
    fn mirror_keeps_face_count() {
        let g = crate::generate::k5_torus();
        assert_eq!(
            g.trace_faces().face_count(),
            g.mirror().trace_faces().face_count()
        );
    }
}
