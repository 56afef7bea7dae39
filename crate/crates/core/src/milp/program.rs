//! Integer linear programs with integer coefficients.

use alloc::string::String;
use alloc::vec::Vec;

use crate::model::Time;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarKind {
    Integer,
    Binary,
    Continuous,
}

/// What a variable stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarRole {
    /// Departure time of a hop.
    Hop { path: usize, hop: usize },
    Slack,
    /// Route `p` reaches `v` strictly before route `q` does.
    Alpha { vertex: usize, p: usize, q: usize },
    /// Route `p` reaches `v` strictly after route `q` has left it.
    Beta { vertex: usize, p: usize, q: usize },
    /// Route `q` is located at `v` when route `p` arrives.
    Gamma { vertex: usize, p: usize, q: usize },
    /// One when hop `hp` of route `p` departs before hop `hq` of route `q`.
    Order { p: usize, hp: usize, q: usize, hq: usize },
    /// One when route `p` reaches `v` exactly at `time`.
    ArrivalAt { vertex: usize, p: usize, time: Time },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub kind: VarKind,
    pub lower: i64,
    pub upper: i64,
    pub role: VarRole,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

impl Sense {
    pub fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        }
    }
}

/// `sum(coef * var) sense rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub name: String,
    pub terms: Vec<(usize, i64)>,
    pub sense: Sense,
    pub rhs: i64,
}

impl Constraint {
    /// Whether an assignment satisfies the constraint.
    pub fn holds(&self, values: &[i64]) -> bool {
        let lhs: i64 = self.terms.iter().map(|&(v, c)| c * values[v]).sum();
        match self.sense {
            Sense::Le => lhs <= self.rhs,
            Sense::Ge => lhs >= self.rhs,
            Sense::Eq => lhs == self.rhs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    /// Constant objective: any feasible point is optimal.
    Feasibility,
    /// Minimize the slack variable.
    MinimizeSlack,
}

/// Affine expression `sum(coef * var) + constant` with merged terms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Affine {
    pub terms: Vec<(usize, i64)>,
    pub constant: i64,
}

impl Affine {
    pub fn var(v: usize) -> Self {
        Affine {
            terms: alloc::vec![(v, 1)],
            constant: 0,
        }
    }

    pub fn constant(c: i64) -> Self {
        Affine {
            terms: Vec::new(),
            constant: c,
        }
    }

    pub fn plus(mut self, c: i64) -> Self {
        self.constant += c;
        self
    }

    pub fn add_term(&mut self, v: usize, c: i64) {
        if c == 0 {
            return;
        }
        if let Some(slot) = self.terms.iter_mut().find(|(w, _)| *w == v) {
            slot.1 += c;
        } else {
            self.terms.push((v, c));
        }
        self.terms.retain(|&(_, c)| c != 0);
    }

    /// `self + factor * other`.
    pub fn add_scaled(mut self, other: &Affine, factor: i64) -> Self {
        for &(v, c) in &other.terms {
            self.add_term(v, c * factor);
        }
        self.constant += other.constant * factor;
        self
    }

    pub fn with_term(mut self, v: usize, c: i64) -> Self {
        self.add_term(v, c);
        self
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }
}

/// A mixed-integer program plus the bookkeeping needed to read schedules
/// back out of a solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MilpModel {
    pub variables: Vec<Variable>,
    pub constraints: Vec<Constraint>,
    pub objective: Objective,
    /// Big-M from the greedy path coloring.
    pub big_m: i64,
    /// Constant actually used in the big-M inequalities.
    pub effective_m: i64,
    /// Upper bound on the slack variable.
    pub slack_upper: Time,
    /// Variable of each hop of each route; `None` for folded routes.
    pub hop_vars: Vec<Vec<Option<usize>>>,
    /// Departure times of folded routes.
    pub fixed: Vec<Option<Vec<Time>>>,
    pub slack_var: usize,
}

impl MilpModel {
    pub fn add_var(&mut self, name: String, kind: VarKind, lower: i64, upper: i64, role: VarRole) -> usize {
        self.variables.push(Variable {
            name,
            kind,
            lower,
            upper,
            role,
        });
        self.variables.len() - 1
    }

    /// Adds `expr sense rhs`, moving the expression's constant to the right.
    pub fn add_constraint(&mut self, name: String, expr: Affine, sense: Sense, rhs: i64) {
        self.constraints.push(Constraint {
            name,
            rhs: rhs - expr.constant,
            terms: expr.terms,
            sense,
        });
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.name == name)
    }

    pub fn count(&self, kind: VarKind) -> usize {
        self.variables.iter().filter(|v| v.kind == kind).count()
    }

    /// Whether an integral assignment meets every bound and constraint.
    pub fn is_satisfied_by(&self, values: &[i64]) -> bool {
        values.len() == self.variables.len()
            && self
                .variables
                .iter()
                .zip(values)
                .all(|(v, &x)| v.lower <= x && x <= v.upper)
            && self.constraints.iter().all(|c| c.holds(values))
    }
}
