//! Text formats of the source problems behind the hardness gadgets.
//!
//! * Graphs: `p edge N M` followed by `e U V` lines with 1-based vertices.
//! * Interval lists: one `CLASS A B` line per closed interval, classes
//!   numbered from 1.
//! * Formulas: DIMACS CNF, `p cnf N M` followed by clauses ending in `0`.
//!
//! Lines starting with `c` or `#` are comments everywhere.

use srdg_core::reductions::{Formula223, Literal, ReductionError, SimpleGraph, UnitIntervalInstance};
use srdg_core::Time;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SourceError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `p {0}` header")]
    Header(&'static str),
    #[error("header announces {expected} {what}, found {found}")]
    Count {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim();
        (!l.is_empty() && !l.starts_with('c') && !l.starts_with('#')).then(|| (i + 1, l.split_whitespace().collect()))
    })
}

fn number<T: std::str::FromStr>(line: usize, token: &str) -> Result<T, SourceError> {
    token.parse().map_err(|_| SourceError::Syntax {
        line,
        message: format!("`{token}` is not a number"),
    })
}

fn syntax(line: usize, message: &str) -> SourceError {
    SourceError::Syntax {
        line,
        message: message.to_owned(),
    }
}

pub fn parse_graph(text: &str) -> Result<SimpleGraph, SourceError> {
    let mut header = None;
    let mut edges = Vec::new();
    for (line, tokens) in content_lines(text) {
        match tokens.as_slice() {
            ["p", "edge", n, m] => header = Some((number::<usize>(line, n)?, number::<usize>(line, m)?)),
            ["e", u, v] => {
                let (u, v): (usize, usize) = (number(line, u)?, number(line, v)?);
                if u == 0 || v == 0 {
                    return Err(syntax(line, "vertices are numbered from 1"));
                }
                edges.push((u - 1, v - 1));
            }
            _ => return Err(syntax(line, "expected `p edge N M` or `e U V`")),
        }
    }
    let (n, m) = header.ok_or(SourceError::Header("edge"))?;
    if edges.len() != m {
        return Err(SourceError::Count {
            what: "edges",
            expected: m,
            found: edges.len(),
        });
    }
    Ok(SimpleGraph::new(n, edges)?)
}

pub fn write_graph(graph: &SimpleGraph) -> String {
    let mut out = format!("p edge {} {}\n", graph.vertex_count(), graph.edges().len());
    for &(u, v) in graph.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

pub fn parse_intervals(text: &str) -> Result<UnitIntervalInstance, SourceError> {
    let mut classes: Vec<Vec<(Time, Time)>> = Vec::new();
    for (line, tokens) in content_lines(text) {
        let [class, a, b] = tokens.as_slice() else {
            return Err(syntax(line, "expected `CLASS A B`"));
        };
        let class: usize = number(line, class)?;
        if class == 0 {
            return Err(syntax(line, "classes are numbered from 1"));
        }
        if classes.len() < class {
            classes.resize(class, Vec::new());
        }
        classes[class - 1].push((number(line, a)?, number(line, b)?));
    }
    Ok(UnitIntervalInstance::new(classes)?)
}

pub fn write_intervals(src: &UnitIntervalInstance) -> String {
    let mut out = String::new();
    for (c, class) in src.classes().iter().enumerate() {
        for &(a, b) in class {
            out.push_str(&format!("{} {a} {b}\n", c + 1));
        }
    }
    out
}

pub fn parse_cnf(text: &str) -> Result<Formula223, SourceError> {
    let mut header = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (line, tokens) in content_lines(text) {
        if tokens.first() == Some(&"p") {
            let ["p", "cnf", n, m] = tokens.as_slice() else {
                return Err(syntax(line, "expected `p cnf N M`"));
            };
            header = Some((number::<usize>(line, n)?, number::<usize>(line, m)?));
            continue;
        }
        for token in tokens {
            let lit: i64 = number(line, token)?;
            if lit == 0 {
                let clause: [Literal; 3] = std::mem::take(&mut current)
                    .try_into()
                    .map_err(|_| syntax(line, "clauses need exactly three literals"))?;
                clauses.push(clause);
            } else {
                current.push(Literal {
                    var: lit.unsigned_abs() as usize - 1,
                    negated: lit < 0,
                });
            }
        }
    }
    if !current.is_empty() {
        return Err(syntax(0, "last clause is not terminated by 0"));
    }
    let (n, m) = header.ok_or(SourceError::Header("cnf"))?;
    if clauses.len() != m {
        return Err(SourceError::Count {
            what: "clauses",
            expected: m,
            found: clauses.len(),
        });
    }
    Ok(Formula223::new(n, clauses)?)
}

pub fn write_cnf(f: &Formula223) -> String {
    let mut out = format!("p cnf {} {}\n", f.vars(), f.clauses().len());
    for clause in f.clauses() {
        for l in clause {
            let v = l.var as i64 + 1;
            out.push_str(&format!("{} ", if l.negated { -v } else { v }));
        }
        out.push_str("0\n");
    }
    out
}
