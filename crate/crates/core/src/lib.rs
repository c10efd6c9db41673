//! Combinatorial outer space spine of the universal Coxeter group
//! `W_n = *_n Z/2`.
//!
//! The crate is organised bottom-up:
//!
//! * [`word`]: reduced words, conjugates of generators and automorphisms.
//! * [`fold`]: folded subgroup graphs, canonical bases and conjugacy keys.
//! * [`marked_graph`]: marked graphs of groups, collapses and blow-ups.
//! * [`spine`]: the graph `L_n` of {0}-stars and F-stars, balls, complexities
//!   and arc counts.
//! * [`links`]: positive and negative links, joins and classification.
//! * [`rigidity`]: automorphisms of finite balls fixing the star of the centre.
//! * [`splittings`]: free splittings, compatibility and common refinements.
//! * [`suites`]: verification suites producing deterministic reports.
//! * [`cli`]: the `coxspine` command line.

pub mod budget;
pub mod cli;
pub mod fold;
pub mod links;
pub mod marked_graph;
pub mod partition;
pub mod rigidity;
pub mod spine;
pub mod splittings;
pub mod suites;
mod tree;
pub mod word;

pub use budget::{Budget, BudgetError};
pub use marked_graph::{GraphError, MarkedGraph};
pub use partition::{EdgeKey, FactorPartition, SplittingKey};
pub use word::{Automorphism, ConjGen, Word, WordError};
