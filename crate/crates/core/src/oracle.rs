//! Exhaustive exploration of the configuration graph for small `N`.
//!
//! Every state with every valuation in `{0..N}^d` is a root. A depth-first
//! search with memoization computes, per configuration, the best value of
//! each requested metric over all runs starting there. A run that revisits
//! a configuration, or reaches one covering an earlier configuration in the
//! same state, can be pumped forever and is reported as nontermination.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::vass::{StateId, TransitionId, Vass};

pub const DEFAULT_BUDGET: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    /// Length of the longest run.
    Longest,
    /// Largest reachable value of a variable.
    Var(usize),
    /// Most instances of a transition in one run.
    Instances(TransitionId),
}

impl Metric {
    pub fn name(&self, v: &Vass) -> String {
        match self {
            Metric::Longest => "longest".into(),
            Metric::Var(x) => format!("var:{}", v.vars()[*x]),
            Metric::Instances(t) => format!("t:{t}"),
        }
    }

    /// Parses `longest`, `var:<name>` or `t:<id>`.
    pub fn parse(v: &Vass, s: &str) -> Result<Metric, OracleError> {
        let bad = || OracleError::UnknownMetric(s.to_string());
        if s == "longest" {
            return Ok(Metric::Longest);
        }
        if let Some(name) = s.strip_prefix("var:") {
            return v.var_index(name).map(Metric::Var).ok_or_else(bad);
        }
        if let Some(id) = s.strip_prefix("t:") {
            let t = usize::from_str(id).map_err(|_| bad())?;
            return (t < v.transitions().len()).then_some(Metric::Instances(t)).ok_or_else(bad);
        }
        Err(bad())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("explored more than {0} configurations")]
    BudgetExceeded(usize),
    #[error("a counter value left the 64-bit range")]
    Overflow,
    #[error("unknown metric `{0}` (expected longest, var:<name> or t:<id>)")]
    UnknownMetric(String),
}

/// An infinite run: `prefix` leads from `(state, start)` to a configuration
/// from which `cycle` can be repeated forever.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lasso {
    pub state: StateId,
    pub start: Vec<i64>,
    pub prefix: Vec<TransitionId>,
    pub cycle: Vec<TransitionId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// Best value per requested metric, in request order.
    Values(Vec<u64>),
    NonTerminating(Lasso),
}

impl Outcome {
    pub fn values(&self) -> Option<&[u64]> {
        match self {
            Outcome::Values(v) => Some(v),
            Outcome::NonTerminating(_) => None,
        }
    }
}

/// Sentinel printed instead of a value for nonterminating systems.
pub const NONTERMINATING: &str = "NONTERMINATING";

#[derive(Clone, PartialEq, Eq, Hash)]
struct Config {
    state: StateId,
    vals: Box<[i64]>,
}

struct Frame {
    node: usize,
    /// Outgoing transition to try next.
    next: usize,
    /// Transition that led here.
    via: Option<TransitionId>,
}

struct Search<'a> {
    v: &'a Vass,
    metrics: &'a [Metric],
    budget: usize,
    out: Vec<Vec<TransitionId>>,
    index: HashMap<Config, usize>,
    configs: Vec<Config>,
    /// Best metric values, `metrics.len()` entries per finished node.
    best: Vec<u64>,
    on_stack: Vec<bool>,
}

impl<'a> Search<'a> {
    fn new(v: &'a Vass, metrics: &'a [Metric], budget: usize) -> Self {
        let mut out = vec![Vec::new(); v.states().len()];
        for t in v.transitions() {
            out[t.src].push(t.id);
        }
        Search {
            v,
            metrics,
            budget,
            out,
            index: HashMap::new(),
            configs: Vec::new(),
            best: Vec::new(),
            on_stack: Vec::new(),
        }
    }

    fn intern(&mut self, c: Config) -> Result<(usize, bool), OracleError> {
        if let Some(&i) = self.index.get(&c) {
            return Ok((i, false));
        }
        if self.configs.len() >= self.budget {
            return Err(OracleError::BudgetExceeded(self.budget));
        }
        let i = self.configs.len();
        // own value for the variable metrics, zero otherwise
        for m in self.metrics {
            self.best.push(match m {
                Metric::Var(x) => c.vals[*x].max(0) as u64,
                _ => 0,
            });
        }
        self.index.insert(c.clone(), i);
        self.configs.push(c);
        self.on_stack.push(false);
        Ok((i, true))
    }

    fn step(&self, c: &Config, t: TransitionId) -> Result<Option<Config>, OracleError> {
        let tr = self.v.transition(t);
        let mut vals = c.vals.clone();
        for (x, &u) in vals.iter_mut().zip(&tr.update) {
            *x = x.checked_add(u).ok_or(OracleError::Overflow)?;
            if *x < 0 {
                return Ok(None);
            }
        }
        Ok(Some(Config { state: tr.dst, vals }))
    }

    fn lasso(&self, stack: &[Frame], from: usize, last: TransitionId) -> Lasso {
        let root = &self.configs[stack[0].node];
        let prefix = stack[1..=from].iter().map(|f| f.via.expect("non-root frame")).collect();
        let mut cycle: Vec<TransitionId> = stack[from + 1..].iter().map(|f| f.via.expect("non-root frame")).collect();
        cycle.push(last);
        Lasso {
            state: root.state,
            start: root.vals.to_vec(),
            prefix,
            cycle,
        }
    }

    /// Explores everything reachable from `root`. Returns a lasso on
    /// nontermination.
    fn explore(&mut self, root: Config) -> Result<Option<Lasso>, OracleError> {
        let (node, fresh) = self.intern(root)?;
        if !fresh {
            return Ok(None);
        }
        self.on_stack[node] = true;
        let mut stack = vec![Frame { node, next: 0, via: None }];
        while let Some(top) = stack.last_mut() {
            let node = top.node;
            let state = self.configs[node].state;
            if top.next == self.out[state].len() {
                stack.pop();
                self.on_stack[node] = false;
                if let Some(parent) = stack.last() {
                    let t = self.out[self.configs[parent.node].state][parent.next - 1];
                    self.relax(parent.node, node, t);
                }
                continue;
            }
            let t = self.out[state][top.next];
            top.next += 1;
            let Some(succ) = self.step(&self.configs[node], t)? else {
                continue;
            };
            // a covered earlier configuration in the same state means the
            // segment in between can be repeated forever
            if let Some(pos) = stack.iter().position(|f| {
                let c = &self.configs[f.node];
                c.state == succ.state && c.vals.iter().zip(succ.vals.iter()).all(|(a, b)| a <= b)
            }) {
                return Ok(Some(self.lasso(&stack, pos, t)));
            }
            let (succ_node, fresh) = self.intern(succ)?;
            if fresh {
                self.on_stack[succ_node] = true;
                stack.push(Frame {
                    node: succ_node,
                    next: 0,
                    via: Some(t),
                });
            } else {
                debug_assert!(!self.on_stack[succ_node], "revisits are covered");
                self.relax(node, succ_node, t);
            }
        }
        Ok(None)
    }

    fn relax(&mut self, node: usize, succ: usize, t: TransitionId) {
        let k = self.metrics.len();
        for (i, m) in self.metrics.iter().enumerate() {
            let gain = match m {
                Metric::Longest => 1,
                Metric::Instances(u) => u64::from(*u == t),
                Metric::Var(_) => 0,
            };
            let cand = self.best[succ * k + i] + gain;
            let slot = &mut self.best[node * k + i];
            *slot = (*slot).max(cand);
        }
    }
}

/// Best value of every metric over all runs from all states and all
/// valuations with max-norm at most `n`.
pub fn explore(v: &Vass, n: u64, metrics: &[Metric], budget: usize) -> Result<Outcome, OracleError> {
    let mut search = Search::new(v, metrics, budget);
    let k = metrics.len();
    let mut result = vec![0u64; k];
    let n = i64::try_from(n).map_err(|_| OracleError::Overflow)?;
    for state in 0..v.states().len() {
        let mut vals = vec![0i64; v.dim()];
        loop {
            let root = Config {
                state,
                vals: vals.clone().into_boxed_slice(),
            };
            if let Some(lasso) = search.explore(root.clone())? {
                return Ok(Outcome::NonTerminating(lasso));
            }
            let node = search.index[&root];
            for (r, b) in result.iter_mut().zip(&search.best[node * k..node * k + k]) {
                *r = (*r).max(*b);
            }
            // next valuation in the box, little endian
            let Some(x) = vals.iter().position(|&a| a < n) else {
                break;
            };
            vals[x] += 1;
            vals[..x].iter_mut().for_each(|a| *a = 0);
        }
    }
    Ok(Outcome::Values(result))
}

pub fn longest_trace(v: &Vass, n: u64, budget: usize) -> Result<Outcome, OracleError> {
    explore(v, n, &[Metric::Longest], budget)
}

pub fn max_reachable(v: &Vass, n: u64, x: usize, budget: usize) -> Result<Outcome, OracleError> {
    explore(v, n, &[Metric::Var(x)], budget)
}

pub fn max_instances(v: &Vass, n: u64, t: TransitionId, budget: usize) -> Result<Outcome, OracleError> {
    explore(v, n, &[Metric::Instances(t)], budget)
}

/// One row of a sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub n: u64,
    pub metric: String,
    /// `None` for nontermination.
    pub value: Option<u64>,
}

impl fmt::Display for SweepRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            Some(x) => write!(f, "{},{},{}", self.n, self.metric, x),
            None => write!(f, "{},{},{}", self.n, self.metric, NONTERMINATING),
        }
    }
}

pub const CSV_HEADER: &str = "N,metric,value";

pub fn sweep(v: &Vass, ns: impl IntoIterator<Item = u64>, metric: Metric, budget: usize) -> Result<Vec<SweepRow>, OracleError> {
    let name = metric.name(v);
    ns.into_iter()
        .map(|n| {
            let value = explore(v, n, &[metric], budget)?.values().map(|xs| xs[0]);
            Ok(SweepRow {
                n,
                metric: name.clone(),
                value,
            })
        })
        .collect()
}
