//! Derangement graphs of finite permutation groups.
//!
//! Builds the Cayley graph on a group whose connection set is its
//! derangements, computes exact clique and coclique numbers, enumerates
//! normal block systems and maximal normal imprimitivity series, compares
//! conjugate unions of subgroup pairs, and checks the constructive clique
//! and partition-avoiding procedures on concrete groups.

pub mod analysis;
pub mod bitset;
pub mod blocks;
pub mod catalog;
pub mod clique;
pub mod constructions;
pub mod dgraph;
pub mod error;
pub mod group;
pub mod kronecker;
pub mod perm;

pub use bitset::BitSet;
pub use blocks::{BlockSystem, NormalSeries, Partition};
pub use clique::CliqueResult;
pub use dgraph::DerangementGraph;
pub use error::{Error, Result};
pub use group::{CosetAction, PermGroup, Subgroup};
pub use perm::Permutation;
