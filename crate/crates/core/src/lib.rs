//! Smooth routing in decaying graphs.
//!
//! A decaying graph is a static mixed graph whose connections carry a
//! traversal time and a deadline after which they can no longer be finished.
//! Given a set of fixed routes, the task is to assign departure times to every
//! hop of every route so that no two routes clash on a connection and no vertex
//! ever hosts more routes than its capacity allows.
//!
//! This crate is `no_std` (it needs `alloc`) and contains only pure
//! algorithms:
//!
//! * [`model`]: graphs, routes, schedules and the location semantics.
//! * [`validate`]: the itemized validity checker.
//! * [`exact`]: brute-force feasibility and minimum-slack search.
//! * [`dp_path`]: the frontier dynamic program for decaying paths.
//! * [`star`]: the enumeration solver for decaying stars.
//! * [`milp`]: the integer program, its big-M constant and LP-format export.
//! * [`generators`]: artificial and geo-based instance families.
//! * [`reductions`]: hardness gadgets with brute-force source oracles.
//!
//! File formats, the external solver driver and the command line live in the
//! companion `srdg` crate.
#![no_std]
#![deny(rust_2018_idioms)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod dp_path;
pub mod exact;
pub mod generators;
pub mod interval;
pub mod milp;
pub mod model;
pub mod reductions;
pub mod star;
pub mod validate;

mod rounding;

pub use exact::{OptimizeOutcome, SolveError, SolveOutcome};
pub use model::{
    Connection, ConnectionId, ConnectionKind, DecayingGraph, Instance, Interval, ModelError,
    PathId, RoutePath, Shape, Temporalization, Time, Vertex, VertexId,
};
pub use validate::{validate, validate_with_slack, Diagnosis, ScheduleError, Violation, ViolationKind};
