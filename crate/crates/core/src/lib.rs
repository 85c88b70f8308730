//! Graph invariants and vertex-count lower bounds in terms of chromatic number
//! and odd girth: exact invariants, exact bound evaluation, a ball-peeling
//! coloring, and an exhaustive auditor.

pub mod audit;
pub mod bounds;
pub mod canon;
pub mod coloring;
pub mod cycles;
pub mod edgelist;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod input;
pub mod invariants;
pub mod metric;
pub mod tables;

pub use audit::{audit_graph, audit_sweep, AuditConfig, AuditRecord, AuditReport, AuditSource, CheckId};
pub use bounds::{best_bound, evaluate, BoundId, BoundParams, BoundValue};
pub use coloring::{ball_peel_coloring, peel_soundness_check, PeelTrace};
pub use cycles::Length;
pub use graph::{Graph, VertexSet};
pub use graph6::{parse_graph6, to_graph6};
pub use input::resolve_graph;
pub use tables::{winner_table, TableSpec, WinnerTable};
