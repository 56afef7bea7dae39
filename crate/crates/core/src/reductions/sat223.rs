//! (2,2)-3SAT to uncapacitated exogenous decaying trees with lifetime four.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Gadget, ReductionError, ORACLE_LIMIT};
use crate::model::{Instance, Time};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    /// Zero-based variable index.
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn holds(self, assignment: u64) -> bool {
        (assignment >> self.var & 1 == 1) != self.negated
    }
}

/// CNF formula with clauses of three distinct variables in which every
/// variable occurs exactly twice negated and twice unnegated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Formula223 {
    vars: usize,
    clauses: Vec<[Literal; 3]>,
}

impl Formula223 {
    pub fn new(vars: usize, clauses: Vec<[Literal; 3]>) -> Result<Self, ReductionError> {
        let mut counts = vec![[0usize; 2]; vars];
        for clause in &clauses {
            for (x, lit) in clause.iter().enumerate() {
                if lit.var >= vars {
                    return Err(ReductionError::Formula("literal names an unknown variable"));
                }
                if clause[x + 1..].iter().any(|other| other.var == lit.var) {
                    return Err(ReductionError::Formula("clause repeats a variable"));
                }
                counts[lit.var][lit.negated as usize] += 1;
            }
        }
        if counts.iter().any(|&c| c != [2, 2]) {
            return Err(ReductionError::Formula(
                "every variable must occur twice negated and twice unnegated",
            ));
        }
        Ok(Formula223 { vars, clauses })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    /// Clause indices of the first and second occurrence of a literal.
    fn occurrences(&self, var: usize, negated: bool) -> [usize; 2] {
        let mut found = self
            .clauses
            .iter()
            .enumerate()
            .filter(|(_, c)| c.contains(&Literal { var, negated }))
            .map(|(j, _)| j);
        [found.next().expect("validated"), found.next().expect("validated")]
    }

    pub fn is_satisfied_by(&self, assignment: u64) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|l| l.holds(assignment)))
    }
}

/// Random formula with `vars` variables, a multiple of three. Occurrences
/// are shuffled into clauses until no clause repeats a variable.
pub fn random_formula223<R: Rng>(rng: &mut R, vars: usize) -> Result<Formula223, ReductionError> {
    if vars == 0 || vars % 3 != 0 {
        return Err(ReductionError::Formula("variable count must be a positive multiple of three"));
    }
    let mut occ: Vec<Literal> = (0..vars)
        .flat_map(|var| {
            [false, false, true, true]
                .into_iter()
                .map(move |negated| Literal { var, negated })
        })
        .collect();
    loop {
        occ.shuffle(rng);
        let clauses: Vec<[Literal; 3]> = occ.chunks(3).map(|c| [c[0], c[1], c[2]]).collect();
        if let Ok(f) = Formula223::new(vars, clauses) {
            return Ok(f);
        }
    }
}

/// Builds the tree whose routes can be scheduled iff the formula is
/// satisfiable. Every traversal time is zero.
///
/// Two details are not spelled out by the gadget's edge and route lists and
/// are filled in as their correctness argument needs: `v_ij` is joined to
/// `t_ij` and `f_ij` by edges with deadline 4, and the third blocker of each
/// pair runs from `t_ij'` to `f_ij'`.
pub fn reduce_223sat(src: &Formula223) -> Result<Instance, ReductionError> {
    const TAU: Time = 4;
    let mut b = Gadget::default();
    let z = b.vertex("z".into(), 1);
    for i in 1..=src.vars {
        let mut names = vec![];
        for base in ["u", "w"] {
            for suffix in ["", "_p", "_pp"] {
                names.push(format!("{base}{i}{suffix}"));
            }
        }
        for j in 1..=2 {
            names.push(format!("v{i}_{j}"));
            for base in ["t", "f"] {
                for suffix in ["", "_p", "_pp"] {
                    names.push(format!("{base}{i}_{j}{suffix}"));
                }
            }
        }
        for name in names {
            b.vertex(name, 1);
        }
    }
    let clauses: Vec<_> = (1..=src.clauses.len()).map(|j| b.vertex(format!("c{j}"), 1)).collect();

    for i in 1..=src.vars {
        for base in ["u", "w"] {
            let (x, xp, xpp) = (
                b.id(&format!("{base}{i}")),
                b.id(&format!("{base}{i}_p")),
                b.id(&format!("{base}{i}_pp")),
            );
            b.edge(z, x, 0, 4);
            b.edge(x, xp, 0, 3);
            b.edge(xp, xpp, 0, 1);
        }
        for j in 1..=2 {
            let hub = b.id(&format!("v{i}_{j}"));
            b.edge(z, hub, 0, 4);
            for base in ["t", "f"] {
                let (x, xp, xpp) = (
                    b.id(&format!("{base}{i}_{j}")),
                    b.id(&format!("{base}{i}_{j}_p")),
                    b.id(&format!("{base}{i}_{j}_pp")),
                );
                b.edge(hub, x, 0, 4);
                b.edge(x, xp, 0, 2);
                b.edge(xp, xpp, 0, 1);
            }
        }
    }
    for &c in &clauses {
        b.edge(z, c, 0, 4);
    }

    for i in 0..src.vars {
        let n = i + 1;
        let id = |b: &Gadget, name: String| b.id(&name);
        let (u, up, upp) = (id(&b, format!("u{n}")), id(&b, format!("u{n}_p")), id(&b, format!("u{n}_pp")));
        let (w, wp, wpp) = (id(&b, format!("w{n}")), id(&b, format!("w{n}_p")), id(&b, format!("w{n}_pp")));
        b.path(vec![u, up, upp]);
        b.path(vec![w, wp, wpp]);
        b.path(vec![up, u, z, w, wp]);
        b.path(vec![up, u, z, w, wp]);
        let mut hub = [z; 2];
        let mut t = [z; 2];
        let mut f = [z; 2];
        for j in 0..2 {
            let m = j + 1;
            hub[j] = id(&b, format!("v{n}_{m}"));
            t[j] = id(&b, format!("t{n}_{m}"));
            f[j] = id(&b, format!("f{n}_{m}"));
            let (tp, tpp) = (id(&b, format!("t{n}_{m}_p")), id(&b, format!("t{n}_{m}_pp")));
            let (fp, fpp) = (id(&b, format!("f{n}_{m}_p")), id(&b, format!("f{n}_{m}_pp")));
            b.path(vec![t[j], tp, tpp]);
            b.path(vec![f[j], fp, fpp]);
            b.path(vec![tp, t[j], hub[j], f[j], fp]);
        }
        b.path(vec![t[0], hub[0], z, u]);
        b.path(vec![t[1], hub[1], z, w]);
        b.path(vec![f[0], hub[0], z, w]);
        b.path(vec![f[1], hub[1], z, u]);
        for (negated, sources) in [(false, t), (true, f)] {
            for (j, clause) in src.occurrences(i, negated).into_iter().enumerate() {
                b.path(vec![sources[j], hub[j], z, clauses[clause]]);
            }
        }
    }
    b.uncapacitated();
    b.finish(TAU)
}

/// Whether some assignment satisfies the formula.
pub fn oracle_223sat(src: &Formula223) -> Result<bool, ReductionError> {
    if src.vars > ORACLE_LIMIT {
        return Err(ReductionError::TooLarge {
            size: src.vars,
            limit: ORACLE_LIMIT,
        });
    }
    Ok((0u64..1 << src.vars).any(|a| src.is_satisfied_by(a)))
}
