//! Term evaluation and exhaustive equation checking over finite algebras.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use thiserror::Error;

use super::ast::{Equation, Term};
use crate::algebra::{AtomStructure, Element};

/// Algebras with at most this many atoms get a full element-by-element
/// composition table (`4^atoms` words).
const FULL_TABLE_ATOMS: usize = 10;

/// Refuse to enumerate domains larger than this.
const MAX_DOMAIN: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("variable `{0}` is not assigned")]
    Unassigned(String),
    #[error("{0} elements is too many to enumerate")]
    DomainTooLarge(u64),
}

/// Evaluates `term` in `alg` under `assignment`.
pub fn evaluate(
    term: &Term,
    alg: &AtomStructure,
    assignment: &HashMap<String, Element>,
) -> Result<Element, EvalError> {
    Ok(match term {
        Term::Var(v) => *assignment
            .get(v)
            .ok_or_else(|| EvalError::Unassigned(v.clone()))?,
        Term::Zero => alg.zero(),
        Term::One => alg.one(),
        Term::Identity => alg.identity(),
        Term::Complement(t) => alg.complement(evaluate(t, alg, assignment)?),
        Term::Converse(t) => alg.converse(evaluate(t, alg, assignment)?),
        Term::Join(a, b) => alg.join(evaluate(a, alg, assignment)?, evaluate(b, alg, assignment)?),
        Term::Meet(a, b) => alg.meet(evaluate(a, alg, assignment)?, evaluate(b, alg, assignment)?),
        Term::Compose(a, b) => {
            alg.compose(evaluate(a, alg, assignment)?, evaluate(b, alg, assignment)?)
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckResult {
    Holds,
    /// The least falsifying assignment, variables in first-occurrence order.
    Fails(Vec<(String, Element)>),
}

impl CheckResult {
    pub fn holds(&self) -> bool {
        *self == CheckResult::Holds
    }

    pub fn witness_map(&self) -> Option<HashMap<String, Element>> {
        match self {
            CheckResult::Holds => None,
            CheckResult::Fails(w) => Some(w.iter().cloned().collect()),
        }
    }

    pub fn to_json(&self, alg: &AtomStructure) -> serde_json::Value {
        use serde_json::json;
        match self {
            CheckResult::Holds => json!({ "result": "holds" }),
            CheckResult::Fails(w) => {
                let witness: serde_json::Map<String, serde_json::Value> = w
                    .iter()
                    .map(|(v, e)| (v.clone(), json!(alg.element_names(*e))))
                    .collect();
                json!({ "result": "fails", "witness": witness })
            }
        }
    }
}

/// Default worker count for checks.
pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Exhaustively checks `eq` over `alg`, or over the elements of
/// `restrict_to` when given, with the default worker count.
pub fn holds(
    eq: &Equation,
    alg: &AtomStructure,
    restrict_to: Option<&[Element]>,
) -> Result<CheckResult, EvalError> {
    holds_with_workers(eq, alg, restrict_to, default_workers())
}

/// As [`holds`]. The result does not depend on `workers`.
pub fn holds_with_workers(
    eq: &Equation,
    alg: &AtomStructure,
    restrict_to: Option<&[Element]>,
    workers: usize,
) -> Result<CheckResult, EvalError> {
    let domain: Vec<u64> = match restrict_to {
        Some(set) => {
            let mut d: Vec<u64> = set.iter().map(|e| e.bits()).collect();
            d.sort_unstable();
            d.dedup();
            d
        }
        None => {
            let count = alg.element_count().unwrap_or(u64::MAX);
            if count > MAX_DOMAIN {
                return Err(EvalError::DomainTooLarge(count));
            }
            (0..count).collect()
        }
    };
    let vars: Vec<String> = eq.variables().into_iter().map(str::to_owned).collect();
    let ops = Ops::new(alg);
    let program = Program::compile(eq, &vars, alg);
    let found = program.search(&ops, &domain, workers.max(1));
    Ok(match found {
        None => CheckResult::Holds,
        Some(choice) => CheckResult::Fails(
            vars.into_iter()
                .zip(choice)
                .map(|(v, i)| (v, Element::from_bits(domain[i])))
                .collect(),
        ),
    })
}

/// Operation kernels for one check run.
struct Ops<'a> {
    alg: &'a AtomStructure,
    universe: u64,
    // compose cache indexed by x * count + y, and converse per element
    full: Option<(Vec<u64>, Vec<u64>)>,
}

impl<'a> Ops<'a> {
    fn new(alg: &'a AtomStructure) -> Self {
        let n = alg.atom_count();
        let full = (n <= FULL_TABLE_ATOMS).then(|| {
            let count = 1usize << n;
            // by_atom[a * count + y] = a ; y
            let mut by_atom = vec![0u64; n * count];
            for a in 0..n {
                for y in 1..count {
                    let low = y.trailing_zeros() as usize;
                    by_atom[a * count + y] =
                        by_atom[a * count + (y & (y - 1))] | alg.atom_compose(a, low).bits();
                }
            }
            let mut comp = vec![0u64; count * count];
            for x in 1..count {
                let low = x.trailing_zeros() as usize;
                let rest = x & (x - 1);
                for y in 0..count {
                    comp[x * count + y] = comp[rest * count + y] | by_atom[low * count + y];
                }
            }
            let conv = (0..count as u64)
                .map(|x| alg.converse(Element::from_bits(x)).bits())
                .collect();
            (comp, conv)
        });
        Ops {
            alg,
            universe: alg.one().bits(),
            full,
        }
    }

    #[inline]
    fn compose(&self, x: u64, y: u64) -> u64 {
        match &self.full {
            Some((comp, _)) => comp[((x as usize) << self.alg.atom_count()) | y as usize],
            None => self
                .alg
                .compose(Element::from_bits(x), Element::from_bits(y))
                .bits(),
        }
    }

    #[inline]
    fn converse(&self, x: u64) -> u64 {
        match &self.full {
            Some((_, conv)) => conv[x as usize],
            None => self.alg.converse(Element::from_bits(x)).bits(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Op {
    Var(usize),
    Const(u64),
    Not(usize),
    Conv(usize),
    Join(usize, usize),
    Meet(usize, usize),
    Comp(usize, usize),
}

/// Straight-line code for both sides of an equation. Each instruction is
/// tagged with the number of leading variables it depends on, so nested
/// enumeration only recomputes what changed.
struct Program {
    ops: Vec<Op>,
    // by_level[d]: instructions depending on variable d - 1 and nothing later
    by_level: Vec<Vec<usize>>,
    lhs: usize,
    rhs: usize,
    vars: usize,
}

struct Compiler<'v> {
    vars: &'v [String],
    ops: Vec<Op>,
    level: Vec<usize>,
    seen: HashMap<Op, usize>,
}

impl Compiler<'_> {
    fn emit(&mut self, op: Op, level: usize) -> usize {
        if let Some(&i) = self.seen.get(&op) {
            return i;
        }
        self.ops.push(op);
        self.level.push(level);
        self.seen.insert(op, self.ops.len() - 1);
        self.ops.len() - 1
    }

    fn term(&mut self, t: &Term, alg: &AtomStructure) -> usize {
        match t {
            Term::Var(v) => {
                let i = self.vars.iter().position(|x| x == v).expect("collected");
                self.emit(Op::Var(i), i + 1)
            }
            Term::Zero => self.emit(Op::Const(0), 0),
            Term::One => self.emit(Op::Const(alg.one().bits()), 0),
            Term::Identity => self.emit(Op::Const(alg.identity().bits()), 0),
            Term::Complement(a) => {
                let a = self.term(a, alg);
                self.emit(Op::Not(a), self.level[a])
            }
            Term::Converse(a) => {
                let a = self.term(a, alg);
                self.emit(Op::Conv(a), self.level[a])
            }
            Term::Join(a, b) | Term::Meet(a, b) | Term::Compose(a, b) => {
                let (a, b) = (self.term(a, alg), self.term(b, alg));
                let level = self.level[a].max(self.level[b]);
                let op = match t {
                    Term::Join(..) => Op::Join(a, b),
                    Term::Meet(..) => Op::Meet(a, b),
                    _ => Op::Comp(a, b),
                };
                self.emit(op, level)
            }
        }
    }
}

impl Program {
    fn compile(eq: &Equation, vars: &[String], alg: &AtomStructure) -> Program {
        let mut c = Compiler {
            vars,
            ops: Vec::new(),
            level: Vec::new(),
            seen: HashMap::new(),
        };
        let lhs = c.term(&eq.lhs, alg);
        let rhs = c.term(&eq.rhs, alg);
        let mut by_level = vec![Vec::new(); vars.len() + 1];
        for (i, &l) in c.level.iter().enumerate() {
            by_level[l].push(i);
        }
        Program {
            ops: c.ops,
            by_level,
            lhs,
            rhs,
            vars: vars.len(),
        }
    }

    #[inline]
    fn run_level(&self, level: usize, ops: &Ops, vals: &[u64], regs: &mut [u64]) {
        for &i in &self.by_level[level] {
            regs[i] = match self.ops[i] {
                Op::Var(v) => vals[v],
                Op::Const(c) => c,
                Op::Not(a) => ops.universe & !regs[a],
                Op::Conv(a) => ops.converse(regs[a]),
                Op::Join(a, b) => regs[a] | regs[b],
                Op::Meet(a, b) => regs[a] & regs[b],
                Op::Comp(a, b) => ops.compose(regs[a], regs[b]),
            };
        }
    }

    /// Least falsifying tuple of domain indices, if any.
    fn search(&self, ops: &Ops, domain: &[u64], workers: usize) -> Option<Vec<usize>> {
        let mut regs = vec![0u64; self.ops.len()];
        let vals = vec![0u64; self.vars];
        self.run_level(0, ops, &vals, &mut regs);
        if self.vars == 0 {
            return (regs[self.lhs] != regs[self.rhs]).then(Vec::new);
        }
        if domain.is_empty() {
            return None;
        }

        let best = AtomicUsize::new(usize::MAX);
        let task = |first: usize| -> Option<Vec<usize>> {
            if best.load(Ordering::Relaxed) < first {
                return None;
            }
            let mut regs = regs.clone();
            let mut vals = vals.clone();
            let mut choice = vec![0usize; self.vars];
            choice[0] = first;
            vals[0] = domain[first];
            self.run_level(1, ops, &vals, &mut regs);
            let found = if self.vars == 1 {
                regs[self.lhs] != regs[self.rhs]
            } else {
                self.descend(1, ops, domain, &mut vals, &mut regs, &mut choice, &|| {
                    best.load(Ordering::Relaxed) < first
                })
            };
            if found {
                best.fetch_min(first, Ordering::Relaxed);
                Some(choice)
            } else {
                None
            }
        };

        if workers == 1 {
            return (0..domain.len()).find_map(task);
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool");
        let results: Vec<Option<Vec<usize>>> =
            pool.install(|| (0..domain.len()).into_par_iter().map(task).collect());
        results.into_iter().flatten().next()
    }

    #[allow(clippy::too_many_arguments)]
    fn descend(
        &self,
        depth: usize,
        ops: &Ops,
        domain: &[u64],
        vals: &mut [u64],
        regs: &mut [u64],
        choice: &mut [usize],
        abandoned: &dyn Fn() -> bool,
    ) -> bool {
        let last = depth + 1 == self.vars;
        for (i, &x) in domain.iter().enumerate() {
            vals[depth] = x;
            choice[depth] = i;
            self.run_level(depth + 1, ops, vals, regs);
            if last {
                if regs[self.lhs] != regs[self.rhs] {
                    return true;
                }
            } else {
                if depth == 1 && abandoned() {
                    return false;
                }
                if self.descend(depth + 1, ops, domain, vals, regs, choice, abandoned) {
                    return true;
                }
            }
        }
        false
    }
}
