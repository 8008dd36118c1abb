//! Analytics for bibliographic knowledge graphs.
//!
//! The crate is `no_std` (with `alloc`) and contains only pure computations:
//! graph assembly from already-parsed publication records, descriptive
//! statistics, topic labeling and linkage, citation-network laws and
//! disruptiveness, main-path backbone extraction, collaboration-network
//! structure and keyword link prediction. Record parsing, exports and the
//! command line live in the `litla` crate.
//!
//! All maps are ordered (`BTreeMap`/`BTreeSet`) so every result is
//! deterministic for a given input.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod citenet;
pub mod collabnet;
mod error;
pub mod kg;
pub mod math;
pub mod predict;
pub mod record;
pub mod stats;
pub mod text;
pub mod topics;

pub use error::{Error, Result};
pub use kg::{KnowledgeGraph, NodeId, NodeRef, NodeType, ProjectedGraph};
pub use record::PaperRecord;
