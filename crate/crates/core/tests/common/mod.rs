#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

use surfcut::balance::rat;
use surfcut::{parse_embedding, BalanceFunction, EmbeddedGraph};

pub struct CorpusEntry {
    pub name: String,
    pub path: PathBuf,
    pub graph: EmbeddedGraph,
    pub declared_genus: usize,
}

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus")
}

pub fn load_corpus() -> Vec<CorpusEntry> {
    let mut paths: Vec<PathBuf> = fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "emb"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|path| {
            let text = fs::read_to_string(&path).unwrap();
            let declared_genus = text
                .lines()
                .find_map(|l| l.strip_prefix("# genus:"))
                .unwrap_or_else(|| panic!("{} lacks a genus header", path.display()))
                .trim()
                .parse()
                .unwrap();
            CorpusEntry {
                name: path.file_stem().unwrap().to_string_lossy().into_owned(),
                graph: parse_embedding(&text).unwrap(),
                path,
                declared_genus,
            }
        })
        .collect()
}

/// Breakpoints of the custom balance function used throughout the tests.
pub const CUSTOM_F: &str = "0 0\n1/6 1/3\n1/3 1/2\n1/2 7/12\n";

pub fn custom_f() -> BalanceFunction {
    BalanceFunction::custom(vec![
        (rat(0, 1), rat(0, 1)),
        (rat(1, 6), rat(1, 3)),
        (rat(1, 3), rat(1, 2)),
        (rat(1, 2), rat(7, 12)),
    ])
    .unwrap()
}

pub fn all_fs() -> Vec<(&'static str, BalanceFunction)> {
    vec![
        ("quotient", BalanceFunction::quotient()),
        ("density", BalanceFunction::density()),
        ("custom", custom_f()),
    ]
}
