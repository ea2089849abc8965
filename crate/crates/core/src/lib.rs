//! Toolkit for variable-free Discourse Representation Structures.
//!
//! * [`sbn`] parses Simplified Box Notation into a [`Drg`] and writes it back.
//! * [`penman`] turns a graph into triples and Penman text at two granularities.
//! * [`smatch`] scores triple sets by searching variable mappings.
//! * [`metrics`] builds overall, graph-, node- and edge-level reports.
//! * [`align`] trains IBM Model 1, extracts name translations and projects
//!   them into English documents.

pub mod align;
pub mod metrics;
pub mod penman;
pub mod sbn;
pub mod smatch;

pub use sbn::{Drg, SbnError, SynsetId, Vocabulary, WellFormedReport};
