//! Finite-level computations for minimal subshifts: factor languages of
//! primitive substitutions, Rauzy graphs and their projections, return
//! words, Stallings foldings, spanning-tree bases of Rauzy-graph fundamental
//! groups and the tree condition on extension graphs.

pub mod error;
pub mod freegroup;
pub mod fundamental;
pub mod io;
pub mod lang;
pub mod presets;
pub mod rauzy;
pub mod returns;
pub mod stallings;
pub mod tree;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use freegroup::FreeGroupWord;
pub use fundamental::{connecting_map, ConnectingMap, SpanningTreeBasis};
pub use lang::{check_primitive, FactorLanguage, Source, Substitution};
pub use rauzy::{GraphPath, RauzyGraph};
pub use returns::{delayed_return_words, return_set_at, return_words, ReturnWordSet};
pub use stallings::{fold, StallingsGraph};
pub use tree::{extension_graph, scan_tree_condition, ExtensionGraph, TreeConditionReport};
pub use word::{Alphabet, Letter, Word};
