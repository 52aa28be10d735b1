//! Exact f-sparsest cuts of multigraphs cellularly embedded on closed
//! orientable surfaces.
//!
//! The pipeline runs embedding → dual → balance weight and crossing
//! homomorphism → shortest tagged dual walks → combination of at most
//! `g + 1` walks → threshold decomposition into a concrete cut. All
//! objective values are exact rationals.
//!
//! ```
//! use surfcut::{generate, solve, BalanceFunction};
//!
//! let k4 = generate::k4_planar();
//! let cut = solve(&k4, &BalanceFunction::quotient(), 0).unwrap();
//! assert_eq!(cut.cut_size, 4);
//! assert_eq!(cut.value.to_string(), "8/1");
//! ```

pub mod balance;
pub mod cli;
pub mod cover;
pub mod dual;
pub mod embedding;
pub mod generate;
pub mod homology;
pub mod oracle;
pub mod solver;

pub use balance::{BalanceFunction, Objective, Rational};
pub use cover::{shortest_tagged_walks, CoverBounds, TaggedWalk, WalkKey, WalkTable};
pub use dual::{build_dual, cut_chain, DualGraph, IntegerChain};
pub use embedding::{parse_embedding, Dart, EmbeddedGraph, EmbeddingError, FaceStructure};
pub use homology::{build_loop_system, build_weight, LoopSystem, WeightFunction};
pub use oracle::{brute_force_cut, enumerate_closed_walks, OracleReport};
pub use solver::{
    combine_and_minimize, evaluate_chain, recover_cut, solve, solve_detailed, CutResult,
    SolveError, SurfaceInstance,
};
