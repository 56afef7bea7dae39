//! The integer program for smooth routing: big-M, construction, LP export
//! and decoding of solutions. Running an external solver is left to callers.

mod big_m;
mod build;
mod decode;
mod lp;
mod program;

pub use big_m::{color_schedule, compute_big_m, greedy_coloring, warm_start_no_wait};
pub use build::{build_milp, build_milp_with, hop_bounds, MilpMode, MilpOptions};
pub use decode::{decode_solution, encode_schedule, lateness, DecodeError};
pub use lp::{export_assignment, export_lp, export_relaxation};
pub use program::{Affine, Constraint, MilpModel, Objective, Sense, VarKind, VarRole, Variable};

#[cfg(test)]
mod tests;
