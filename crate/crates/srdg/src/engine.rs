//! Solver selection shared by the command line and the benchmark harness.

use std::fmt;
use std::str::FromStr;

use srdg_core::dp_path::solve_path_dp;
use srdg_core::exact::{brute_force_feasible, min_slack_oracle, scan_slack};
use srdg_core::star::{solve_star, solve_star_with};
use srdg_core::{Instance, OptimizeOutcome, Shape, SolveError, SolveOutcome};
use thiserror::Error;

use crate::backend::{decide, solve_milp, BackendError, SolverBackend};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Engine {
    /// Path DP on paths, star enumeration on stars, otherwise the MILP
    /// backend when configured and brute force when not.
    Auto,
    Brute,
    Dp,
    Star,
    Milp,
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Engine::Auto),
            "brute" => Ok(Engine::Brute),
            "dp" => Ok(Engine::Dp),
            "star" => Ok(Engine::Star),
            "milp" => Ok(Engine::Milp),
            _ => Err(format!("unknown engine `{s}` (auto, brute, dp, star, milp)")),
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Auto => "auto",
            Engine::Brute => "brute",
            Engine::Dp => "dp",
            Engine::Star => "star",
            Engine::Milp => "milp",
        })
    }
}

#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Backend(#[from] BackendError),
}

impl Engine {
    /// The engine `Auto` stands for on this instance.
    pub fn resolve(self, instance: &Instance, backend: Option<&SolverBackend>) -> Engine {
        if self != Engine::Auto {
            return self;
        }
        let g = instance.graph();
        match g.shape() {
            Shape::Path => Engine::Dp,
            Shape::Star
                if g.star_center()
                    .is_some_and(|c| instance.paths().iter().all(|p| p.position(c).is_some())) =>
            {
                Engine::Star
            }
            _ if backend.is_some() => Engine::Milp,
            _ => Engine::Brute,
        }
    }

    pub fn decide(self, instance: &Instance, backend: Option<&SolverBackend>) -> Result<SolveOutcome, EngineError> {
        Ok(match self.resolve(instance, backend) {
            Engine::Brute | Engine::Auto => brute_force_feasible(instance, 0)?,
            Engine::Dp => solve_path_dp(instance)?,
            Engine::Star => solve_star(instance)?,
            Engine::Milp => decide(instance, backend.ok_or(BackendError::NotConfigured)?)?,
        })
    }

    /// Minimum slack. Exact engines scan the slack upwards.
    pub fn min_slack(self, instance: &Instance, backend: Option<&SolverBackend>) -> Result<OptimizeOutcome, EngineError> {
        Ok(match self.resolve(instance, backend) {
            Engine::Brute | Engine::Auto => min_slack_oracle(instance)?,
            Engine::Dp => scan_slack(instance, |s| solve_path_dp(&instance.with_slack(s)))?,
            Engine::Star => scan_slack(instance, |s| solve_star_with(instance, s).map(|(o, _)| o))?,
            Engine::Milp => solve_milp(instance, backend.ok_or(BackendError::NotConfigured)?)?,
        })
    }
}
