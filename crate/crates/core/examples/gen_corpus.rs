//! Regenerates the test corpus under `tests/corpus/`.
//!
//! cargo run -p surfcut --example gen_corpus

use std::fs;
use std::path::Path;

use rand::rngs::StdRng;
use rand::SeedableRng;
use surfcut::generate::{self, complete_bipartite_edges, complete_graph_edges, search_embedding};
use surfcut::EmbeddedGraph;

fn wheel(rim: usize) -> EmbeddedGraph {
    let mut positions = vec![(0.0, 0.0)];
    let mut edges = Vec::new();
    for i in 0..rim {
        let t = i as f64 * std::f64::consts::TAU / rim as f64;
        positions.push((t.cos(), t.sin()));
        edges.push((0, i + 1));
        edges.push((i + 1, (i + 1) % rim + 1));
    }
    generate::planar_from_positions(&edges, &positions).unwrap()
}

fn is_bridgeless(g: &EmbeddedGraph) -> bool {
    let n = g.vertex_count();
    (0..g.edge_count()).all(|skip| {
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for d in g.darts_at(v) {
                let w = g.head(d);
                if d / 2 != skip && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    })
}

// random instances with bridges have trivial optima, so resample
fn bridgeless_embedding(n: usize, m: usize, genus: usize, rng: &mut StdRng) -> EmbeddedGraph {
    loop {
        let g = generate::random_embedding(n, m, genus, rng);
        if is_bridgeless(&g) {
            return g;
        }
    }
}

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus");
    fs::create_dir_all(&dir).unwrap();
    for entry in fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "emb") {
            fs::remove_file(path).unwrap();
        }
    }

    let mut corpus: Vec<(String, EmbeddedGraph)> = vec![
        ("k2".into(), generate::path(2)),
        ("p3".into(), generate::path(3)),
        ("p5".into(), generate::path(5)),
        (
            "star4".into(),
            generate::planar_from_positions(
                &[(0, 1), (0, 2), (0, 3)],
                &[(0.0, 0.0), (1.0, 0.0), (-1.0, 1.0), (-1.0, -1.0)],
            )
            .unwrap(),
        ),
        ("dipole2".into(), generate::dipole(2)),
        ("dipole3".into(), generate::dipole(3)),
        ("c3".into(), generate::cycle(3)),
        ("c4".into(), generate::cycle(4)),
        ("c5".into(), generate::cycle(5)),
        ("c6".into(), generate::cycle(6)),
        ("c7".into(), generate::cycle(7)),
        ("k4".into(), generate::k4_planar()),
        ("w4".into(), wheel(4)),
        ("w5".into(), wheel(5)),
        ("w6".into(), wheel(6)),
        (
            "k23".into(),
            generate::planar_from_positions(
                &complete_bipartite_edges(2, 3),
                &[(0.0, 2.0), (0.0, -2.0), (-1.0, 0.0), (0.0, 0.0), (1.0, 0.0)],
            )
            .unwrap(),
        ),
        (
            "prism".into(),
            generate::planar_from_positions(
                &[
                    (0, 1),
                    (1, 2),
                    (2, 0),
                    (3, 4),
                    (4, 5),
                    (5, 3),
                    (0, 3),
                    (1, 4),
                    (2, 5),
                ],
                &[
                    (0.0, 0.0),
                    (6.0, 0.0),
                    (3.0, 5.0),
                    (2.0, 1.0),
                    (4.0, 1.0),
                    (3.0, 3.0),
                ],
            )
            .unwrap(),
        ),
        (
            "octahedron".into(),
            generate::planar_from_positions(
                &[
                    (0, 1),
                    (1, 2),
                    (2, 0),
                    (3, 4),
                    (4, 5),
                    (5, 3),
                    (0, 3),
                    (0, 5),
                    (1, 3),
                    (1, 4),
                    (2, 4),
                    (2, 5),
                ],
                &[
                    (0.0, 0.0),
                    (8.0, 0.0),
                    (4.0, 7.0),
                    (4.0, 1.0),
                    (5.5, 3.5),
                    (2.5, 3.5),
                ],
            )
            .unwrap(),
        ),
        (
            "k5_minus_edge".into(),
            generate::planar_from_positions(
                &[
                    (0, 1),
                    (1, 2),
                    (2, 0),
                    (0, 3),
                    (1, 3),
                    (2, 3),
                    (0, 4),
                    (1, 4),
                    (3, 4),
                ],
                &[(0.0, 0.0), (6.0, 0.0), (3.0, 6.0), (3.0, 2.5), (3.0, 1.0)],
            )
            .unwrap(),
        ),
        (
            "grid2x3".into(),
            generate::planar_from_positions(
                &[(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)],
                &[
                    (0.0, 0.0),
                    (1.0, 0.0),
                    (2.0, 0.0),
                    (0.0, 1.0),
                    (1.0, 1.0),
                    (2.0, 1.0),
                ],
            )
            .unwrap(),
        ),
        ("k5_torus".into(), generate::k5_torus()),
        ("k33_torus".into(), generate::k33_torus()),
        (
            "k4_torus".into(),
            search_embedding(4, &complete_graph_edges(4), 1, 1 << 12).unwrap(),
        ),
        (
            "c4_torus".into(),
            // 4-cycle plus both diagonals, embedded on the torus
            search_embedding(
                4,
                &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)],
                1,
                1 << 12,
            )
            .unwrap(),
        ),
    ];

    let mut rng = StdRng::seed_from_u64(20_240_601);
    for (i, (n, m)) in [(5, 8), (6, 9), (7, 9)].into_iter().enumerate() {
        corpus.push((
            format!("random_planar_{i}"),
            generate::random_embedding(n, m, 0, &mut rng),
        ));
    }
    for (i, (n, m)) in [(5, 8), (6, 9), (7, 10)].into_iter().enumerate() {
        corpus.push((
            format!("random_torus_{i}"),
            bridgeless_embedding(n, m, 1, &mut rng),
        ));
    }
    for (i, (n, m)) in [(4, 8), (6, 9), (8, 11)].into_iter().enumerate() {
        corpus.push((
            format!("random_genus2_{i}"),
            bridgeless_embedding(n, m, 2, &mut rng),
        ));
    }

    for (name, g) in &corpus {
        let genus = g.genus().unwrap();
        let text = format!("# {name}\n# genus: {genus}\n{}", g.to_text());
        fs::write(dir.join(format!("{name}.emb")), text).unwrap();
        println!(
            "{name}: n={} m={} faces={} genus={genus}",
            g.vertex_count(),
            g.edge_count(),
            g.trace_faces().face_count()
        );
    }
}
