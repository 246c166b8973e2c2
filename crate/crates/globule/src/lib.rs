//! # globule
//!
//! A symbolic workbench for globular theories: finite globular sets, the base
//! theory of tables of dimensions, budgeted truncations of the inductive
//! coherator tower, finite n-groupoid models, homotopy groups, weak
//! equivalences, and cell-attachment pushout experiments.
//!
//! Everything here is a *bounded* computation. Tables, term depth, model
//! sizes and saturation depth are all controlled by an explicit [`Budget`],
//! and every report carries the budget it was computed under. Verdicts are
//! three-valued where the underlying question is not decidable at the given
//! budget: `Equal`/`Distinct` (or `Pass`/`Fail`) answers are final and sound,
//! `Unknown` means the budget ran out.

pub mod coherator;
pub mod finmodel;
pub mod globset;
pub mod groups;
pub mod homotopy;
pub mod laws;
pub mod models;
pub mod pushout;
pub mod term;
pub mod theory;
pub mod theta0;

mod rewrite;

use serde::{Deserialize, Serialize};

/// Enumeration and search limits shared by every bounded operation.
///
/// All results in this crate are truncation-relative; the budget that
/// produced a value travels with it in reports so that a partial quotient or
/// a partial enumeration is never mistaken for a total one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Budget {
    /// Largest table length (odd; tables longer than this are not enumerated).
    pub max_table_len: usize,
    /// Largest entry allowed in an enumerated table.
    pub max_entry: usize,
    /// Maximum height of a morphism term tree.
    pub max_term_depth: usize,
    /// Maximum carrier size per dimension in separating-model search.
    pub max_model_elems: usize,
    /// Node cap for separating-model search (0 disables the search).
    pub max_model_nodes: usize,
    /// Saturation depth for free-pushout experiments.
    pub sat_depth: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_table_len: 5,
            max_entry: 2,
            max_term_depth: 3,
            max_model_elems: 4,
            max_model_nodes: 20_000,
            sat_depth: 3,
        }
    }
}

impl Budget {
    /// A deliberately tiny budget, handy in tests that exercise the
    /// `Unknown`/partial paths.
    pub fn tiny() -> Self {
        Budget {
            max_table_len: 1,
            max_entry: 0,
            max_term_depth: 1,
            max_model_elems: 0,
            max_model_nodes: 0,
            sat_depth: 0,
        }
    }

    pub fn with_table_len(mut self, len: usize) -> Self {
        self.max_table_len = len;
        self
    }

    pub fn with_max_entry(mut self, e: usize) -> Self {
        self.max_entry = e;
        self
    }

    pub fn with_term_depth(mut self, d: usize) -> Self {
        self.max_term_depth = d;
        self
    }

    pub fn with_sat_depth(mut self, d: usize) -> Self {
        self.sat_depth = d;
        self
    }

    pub fn with_model_search(mut self, elems: usize, nodes: usize) -> Self {
        self.max_model_elems = elems;
        self.max_model_nodes = nodes;
        self
    }
}
