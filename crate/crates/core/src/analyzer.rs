//! Layer-tree bound analysis.
//!
//! Iteration `l` solves a pair of dual constraint systems over the
//! transitions still alive at layer `l - 1`. Transitions that some
//! quasi-ranking function strictly decreases get bound `N^l`; the rest are
//! split into SCCs which form the next layer. Variables whose ranking
//! coefficient on the root copy is positive get bound `N^l`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lp::{self, integer_entries, max_strict_set, LpError, LpProblem, LpRow, LpVar, Relation};
use crate::vass::{IntegerMatrix, StateId, SubVass, TransitionId, Vass};

/// Asymptotic exponent: `Finite(k)` for `Θ(N^k)`, `Inf` when unbounded by
/// any polynomial (or not yet determined).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bound {
    Finite(u64),
    Inf,
}

impl Bound {
    pub fn finite(self) -> Option<u64> {
        match self {
            Bound::Finite(k) => Some(k),
            Bound::Inf => None,
        }
    }

    pub fn is_inf(self) -> bool {
        self == Bound::Inf
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(k) => write!(f, "{k}"),
            Bound::Inf => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Polynomial,
    Exponential,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Polynomial => "polynomial",
            Status::Exponential => "exponential",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalyzeError {
    #[error("VASS is not connected: no path from `{from}` to `{to}`")]
    NotConnected { from: String, to: String },
    #[error("internal invariant violated at layer {layer}: {detail}")]
    Invariant { layer: u64, detail: String },
    #[error("constraint solver failure at layer {layer}: {source}")]
    Lp { layer: u64, source: LpError },
}

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub id: NodeId,
    pub label: SubVass,
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
    /// First and last layer this node occupies; more than one layer only
    /// when iterations were skipped.
    pub span: (u64, u64),
}

impl TreeNode {
    pub fn covers(&self, layer: u64) -> bool {
        self.span.0 <= layer && layer <= self.span.1
    }

    pub fn min_state(&self) -> StateId {
        *self.label.states.iter().next().expect("tree nodes have states")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LayerTree {
    pub nodes: Vec<TreeNode>,
}

impl LayerTree {
    pub const ROOT: NodeId = 0;

    pub fn root(&self) -> &TreeNode {
        &self.nodes[Self::ROOT]
    }

    pub fn node(&self, id: NodeId) -> &TreeNode {
        &self.nodes[id]
    }

    /// Nodes occupying `layer`, ordered by their smallest state.
    pub fn layer(&self, layer: u64) -> Vec<NodeId> {
        let mut ids: Vec<NodeId> = self
            .nodes
            .iter()
            .filter(|n| n.covers(layer))
            .map(|n| n.id)
            .collect();
        ids.sort_by_key(|&id| self.nodes[id].min_state());
        ids
    }

    /// Highest layer that has at least one node.
    pub fn depth(&self) -> u64 {
        self.nodes.iter().map(|n| n.span.1).max().unwrap_or(0)
    }

    /// Node at `layer` that contains state `s`, if any.
    pub fn node_at(&self, layer: u64, s: StateId) -> Option<NodeId> {
        self.nodes
            .iter()
            .find(|n| n.covers(layer) && n.label.states.contains(&s))
            .map(|n| n.id)
    }

    pub fn node_name(&self, v: &Vass, id: NodeId) -> String {
        format!("{{{}}}", self.nodes[id].label.state_names(v).join(","))
    }

    /// Graphviz rendering: one node per tree node, labelled with its states
    /// and layer span.
    pub fn to_dot(&self, v: &Vass) -> String {
        let mut out = String::from("digraph layers {\n  node [shape=box];\n");
        for n in &self.nodes {
            let span = if n.span.0 == n.span.1 {
                format!("layer {}", n.span.0)
            } else {
                format!("layers {}..{}", n.span.0, n.span.1)
            };
            out.push_str(&format!(
                "  n{} [label=\"{}\\n{}\"];\n",
                n.id,
                n.label.state_names(v).join(", "),
                span
            ));
        }
        for n in &self.nodes {
            for c in &n.children {
                out.push_str(&format!("  n{} -> n{};\n", n.id, c));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Extended variables and matrices for one iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedSystem {
    pub layer: u64,
    /// Transitions of the nodes at the previous layer, sorted by id.
    pub u: Vec<TransitionId>,
    /// `(variable index, node)` pairs.
    pub var_ext: Vec<(usize, NodeId)>,
    /// Rows `var_ext`, columns `u`.
    pub d_ext: IntegerMatrix,
    /// Rows all states, columns `u`.
    pub f_u: IntegerMatrix,
}

impl ExtendedSystem {
    pub fn row_of(&self, var: usize, node: NodeId) -> Option<usize> {
        self.var_ext.iter().position(|&p| p == (var, node))
    }

    pub fn col_of(&self, t: TransitionId) -> Option<usize> {
        self.u.binary_search(&t).ok()
    }
}

/// Layer whose nodes hold the copies of a variable with bound `b` during
/// iteration `l`.
fn copy_layer(b: Bound, l: u64) -> u64 {
    match b {
        Bound::Finite(k) => l.saturating_sub(k),
        Bound::Inf => 0,
    }
}

pub fn build_extended_system(v: &Vass, tree: &LayerTree, l: u64, vexp: &[Bound]) -> ExtendedSystem {
    assert!(l >= 1);
    let mut u = BTreeSet::new();
    for id in tree.layer(l - 1) {
        u.extend(tree.node(id).label.transitions.iter().copied());
    }
    let u: Vec<TransitionId> = u.into_iter().collect();
    let mut var_ext = Vec::new();
    for (x, &b) in vexp.iter().enumerate() {
        for id in tree.layer(copy_layer(b, l)) {
            var_ext.push((x, id));
        }
    }
    let col_labels: Vec<String> = u.iter().map(|&t| v.transition_label(t)).collect();
    let d_entries = var_ext
        .iter()
        .map(|&(x, id)| {
            let ts = &tree.node(id).label.transitions;
            u.iter()
                .map(|&t| if ts.contains(&t) { v.transition(t).update[x] } else { 0 })
                .collect()
        })
        .collect();
    let d_ext = IntegerMatrix {
        row_labels: var_ext
            .iter()
            .map(|&(x, id)| format!("{}@{}", v.vars()[x], tree.node_name(v, id)))
            .collect(),
        col_labels: col_labels.clone(),
        entries: d_entries,
    };
    let full_flow = v.flow_matrix();
    let f_u = IntegerMatrix {
        row_labels: full_flow.row_labels.clone(),
        col_labels,
        entries: full_flow
            .entries
            .iter()
            .map(|row| u.iter().map(|&t| row[t]).collect())
            .collect(),
    };
    ExtendedSystem {
        layer: l,
        u,
        var_ext,
        d_ext,
        f_u,
    }
}

/// Integer solutions of both systems for one iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerSolution {
    /// Indexed like `ExtendedSystem::u`.
    pub mu: Vec<BigInt>,
    /// Indexed like `ExtendedSystem::var_ext`.
    pub r: Vec<BigInt>,
    /// Indexed by state.
    pub z: Vec<BigInt>,
    /// Rows of `var_ext` with `(D_ext mu) >= 1`.
    pub growing_rows: BTreeSet<usize>,
    /// Transitions strictly decreased by the ranking function.
    pub decreasing: BTreeSet<TransitionId>,
}

/// Constraint system over `mu`: `D_ext mu >= 0, mu >= 0, F_U mu = 0`.
/// Rows `0..|var_ext|` and the trailing `mu_t >= 0` rows are candidates.
pub fn multicycle_system(sys: &ExtendedSystem) -> LpProblem {
    let m = sys.u.len();
    let vars = sys
        .u
        .iter()
        .map(|t| LpVar {
            name: format!("mu{t}"),
            nonneg: true,
        })
        .collect();
    let mut rows = Vec::new();
    let mut cands = BTreeSet::new();
    for row in &sys.d_ext.entries {
        cands.insert(rows.len());
        rows.push(LpRow::from_ints(row, Relation::Ge));
    }
    for row in &sys.f_u.entries {
        if row.iter().any(|&e| e != 0) {
            rows.push(LpRow::from_ints(row, Relation::Eq));
        }
    }
    for j in 0..m {
        let mut unit = vec![0; m];
        unit[j] = 1;
        cands.insert(rows.len());
        rows.push(LpRow::from_ints(&unit, Relation::Ge));
    }
    LpProblem::new(vars, rows, cands).expect("well-formed multi-cycle system")
}

/// Constraint system over `(r, z)`: `r, z >= 0` and
/// `-(D_ext^T r + F_U^T z) >= 0`. Rows `0..|u|` are the transition rows,
/// followed by `r >= 0` rows; all are candidates.
pub fn ranking_system(sys: &ExtendedSystem) -> LpProblem {
    let k = sys.var_ext.len();
    let s = sys.f_u.rows();
    let mut vars = Vec::with_capacity(k + s);
    for label in &sys.d_ext.row_labels {
        vars.push(LpVar {
            name: format!("r[{label}]"),
            nonneg: true,
        });
    }
    for label in &sys.f_u.row_labels {
        vars.push(LpVar {
            name: format!("z[{label}]"),
            nonneg: true,
        });
    }
    let mut rows = Vec::new();
    for c in 0..sys.u.len() {
        let mut coeffs: Vec<i64> = sys.d_ext.entries.iter().map(|row| -row[c]).collect();
        coeffs.extend(sys.f_u.entries.iter().map(|row| -row[c]));
        rows.push(LpRow::from_ints(&coeffs, Relation::Ge));
    }
    for i in 0..k {
        let mut unit = vec![0; k + s];
        unit[i] = 1;
        rows.push(LpRow::from_ints(&unit, Relation::Ge));
    }
    let cands = (0..rows.len()).collect();
    LpProblem::new(vars, rows, cands).expect("well-formed ranking system")
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}

fn integral(p: &LpProblem, layer: u64) -> Result<Vec<BigInt>, AnalyzeError> {
    let sol = max_strict_set(p).map_err(|source| AnalyzeError::Lp { layer, source })?;
    Ok(primitive(integer_entries(&lp::scale_to_integer(&sol))))
}

/// `D_ext mu`.
pub fn ext_value(sys: &ExtendedSystem, mu: &[BigInt]) -> Vec<BigInt> {
    sys.d_ext
        .entries
        .iter()
        .map(|row| row.iter().zip(mu).map(|(&d, m)| m * d).sum())
        .collect()
}

/// Checks that `(r, z)` is a quasi-ranking function for the extended
/// system and returns the transitions it strictly decreases.
pub fn check_quasi_ranking(sys: &ExtendedSystem, r: &[BigInt], z: &[BigInt]) -> Option<BTreeSet<TransitionId>> {
    if r.len() != sys.var_ext.len() || z.len() != sys.f_u.rows() {
        return None;
    }
    if r.iter().chain(z).any(|e| e.is_negative()) {
        return None;
    }
    let mut strict = BTreeSet::new();
    for (c, &t) in sys.u.iter().enumerate() {
        let mut change = BigInt::zero();
        for (row, ri) in sys.d_ext.entries.iter().zip(r) {
            change += ri * row[c];
        }
        for (row, zi) in sys.f_u.entries.iter().zip(z) {
            change += zi * row[c];
        }
        if change.is_positive() {
            return None;
        }
        if change.is_negative() {
            strict.insert(t);
        }
    }
    Some(strict)
}

/// Solves both systems with maximal strict sets and asserts that they
/// complement each other row by row and transition by transition.
pub fn solve_layer(sys: &ExtendedSystem) -> Result<LayerSolution, AnalyzeError> {
    let layer = sys.layer;
    let invariant = |detail: String| AnalyzeError::Invariant { layer, detail };
    let mc = multicycle_system(sys);
    let mu = integral(&mc, layer)?;
    let rk = ranking_system(sys);
    let rz = integral(&rk, layer)?;
    let (r, z) = rz.split_at(sys.var_ext.len());
    let (r, z) = (r.to_vec(), z.to_vec());

    let mu_q: Vec<_> = mu.iter().map(|m| num_rational::BigRational::from_integer(m.clone())).collect();
    if !mc.satisfied_by(&mu_q) {
        return Err(invariant("multi-cycle solution violates its constraints".into()));
    }
    let decreasing = check_quasi_ranking(sys, &r, &z)
        .ok_or_else(|| invariant("ranking solution is not a quasi-ranking function".into()))?;
    let dmu = ext_value(sys, &mu);
    let mut growing_rows = BTreeSet::new();
    for (i, (d, ri)) in dmu.iter().zip(&r).enumerate() {
        let grows = d.is_positive();
        if grows == ri.is_positive() {
            return Err(invariant(format!(
                "row {} is {} by both solutions",
                sys.d_ext.row_labels[i],
                if grows { "claimed" } else { "unclaimed" }
            )));
        }
        if grows {
            growing_rows.insert(i);
        }
    }
    for (c, &t) in sys.u.iter().enumerate() {
        if mu[c].is_positive() == decreasing.contains(&t) {
            return Err(invariant(format!(
                "transition {} is {} by both solutions",
                sys.d_ext.col_labels[c],
                if mu[c].is_positive() { "claimed" } else { "unclaimed" }
            )));
        }
    }
    Ok(LayerSolution {
        mu,
        r,
        z,
        growing_rows,
        decreasing,
    })
}

/// Smallest finite `vExp(x) + tExp(t)` above `l`.
pub fn next_relevant_layer(vexp: &[Bound], texp: &[Bound], l: u64) -> Option<u64> {
    let vs: BTreeSet<u64> = vexp.iter().filter_map(|b| b.finite()).collect();
    let ts: BTreeSet<u64> = texp.iter().filter_map(|b| b.finite()).collect();
    vs.iter()
        .flat_map(|a| ts.iter().map(move |b| a + b))
        .filter(|&s| s > l)
        .min()
}

/// True when no finite `vExp(x) + tExp(t)` exceeds `l`, which means the
/// system has at least exponential complexity.
pub fn exponential_check(vexp: &[Bound], texp: &[Bound], l: u64) -> bool {
    next_relevant_layer(vexp, texp, l).is_none()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub skip_optimization: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            skip_optimization: true,
        }
    }
}

/// Solution-independent summary of one iteration.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct LayerAudit {
    pub layer: u64,
    pub transitions: Vec<TransitionId>,
    pub extended_vars: Vec<String>,
    /// Extended variables that some multi-cycle strictly increases.
    pub growing: Vec<String>,
    /// Transitions strictly decreased by the quasi-ranking function.
    pub ranked: Vec<TransitionId>,
    pub bounded_vars: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub status: Status,
    pub vexp: Vec<Bound>,
    pub texp: Vec<Bound>,
    /// Maximum transition exponent when polynomial.
    pub complexity_exponent: Option<u64>,
    /// Iteration at which exponential complexity was detected.
    pub exponential_layer: Option<u64>,
    pub layers: Vec<LayerAudit>,
}

/// Archived data of one executed iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Iteration {
    pub system: ExtendedSystem,
    pub solution: LayerSolution,
    /// Nodes created by this iteration.
    pub children: Vec<NodeId>,
}

impl Iteration {
    /// `mu(t)`, zero for transitions outside `U`.
    pub fn mu_of(&self, t: TransitionId) -> BigInt {
        self.system
            .col_of(t)
            .map_or_else(BigInt::zero, |c| self.solution.mu[c].clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analysis {
    pub report: BoundsReport,
    pub tree: LayerTree,
    pub iterations: Vec<Iteration>,
}

impl Analysis {
    /// The executed iteration that created nodes covering `layer`.
    pub fn iteration_for_layer(&self, layer: u64) -> Option<&Iteration> {
        self.iterations
            .iter()
            .rev()
            .find(|it| it.system.layer <= layer)
    }
}

pub fn analyze(v: &Vass, options: AnalyzeOptions) -> Result<Analysis, AnalyzeError> {
    if let Some((a, b)) = v.unreachable_pair() {
        return Err(AnalyzeError::NotConnected {
            from: v.state_name(a).to_string(),
            to: v.state_name(b).to_string(),
        });
    }
    let n = v.dim();
    let m = v.transitions().len();
    if m == 0 {
        return Ok(Analysis {
            report: BoundsReport {
                status: Status::Polynomial,
                vexp: Vec::new(),
                texp: Vec::new(),
                complexity_exponent: Some(0),
                exponential_layer: None,
                layers: Vec::new(),
            },
            tree: LayerTree {
                nodes: vec![TreeNode {
                    id: 0,
                    label: SubVass::whole(v),
                    parent: None,
                    children: Vec::new(),
                    span: (0, 0),
                }],
            },
            iterations: Vec::new(),
        });
    }

    let mut tree = LayerTree {
        nodes: vec![TreeNode {
            id: 0,
            label: SubVass::whole(v),
            parent: None,
            children: Vec::new(),
            span: (0, 0),
        }],
    };
    let mut vexp = vec![Bound::Inf; n];
    let mut texp = vec![Bound::Inf; m];
    let mut iterations: Vec<Iteration> = Vec::new();
    let mut audits = Vec::new();
    let mut l = 1u64;
    loop {
        let sys = build_extended_system(v, &tree, l, &vexp);
        let sol = solve_layer(&sys)?;
        let invariant = |detail: String| AnalyzeError::Invariant { layer: l, detail };

        for &t in &sol.decreasing {
            if !texp[t].is_inf() {
                return Err(invariant(format!("transition {t} bounded twice")));
            }
            texp[t] = Bound::Finite(l);
        }
        let mut newly = Vec::new();
        for (i, &(x, node)) in sys.var_ext.iter().enumerate() {
            if node == LayerTree::ROOT && vexp[x].is_inf() && sol.r[i].is_positive() {
                newly.push(x);
            }
        }
        for &x in &newly {
            vexp[x] = Bound::Finite(l);
        }

        let mut children = Vec::new();
        for parent in tree.layer(l - 1) {
            let label = tree.node(parent).label.clone();
            let kept: BTreeSet<TransitionId> = label.transitions.difference(&sol.decreasing).copied().collect();
            for comp in v.scc_decompose(&label.states, &kept) {
                let id = tree.nodes.len();
                tree.nodes.push(TreeNode {
                    id,
                    label: comp,
                    parent: Some(parent),
                    children: Vec::new(),
                    span: (l, l),
                });
                tree.nodes[parent].children.push(id);
                children.push(id);
            }
        }

        // Surviving transitions are exactly the support of mu.
        let alive: BTreeSet<TransitionId> = children
            .iter()
            .flat_map(|&c| tree.node(c).label.transitions.iter().copied())
            .collect();
        let support: BTreeSet<TransitionId> = sys
            .u
            .iter()
            .zip(&sol.mu)
            .filter(|(_, m)| m.is_positive())
            .map(|(&t, _)| t)
            .collect();
        if alive != support {
            return Err(invariant("new layer differs from the multi-cycle support".into()));
        }

        let exponential = exponential_check(&vexp, &texp, l);
        let done = vexp.iter().chain(&texp).all(|b| !b.is_inf());
        let discovered = !sol.decreasing.is_empty() || !newly.is_empty();
        if discovered || exponential || done {
            let ext_names = &sys.d_ext.row_labels;
            audits.push(LayerAudit {
                layer: l,
                transitions: sys.u.clone(),
                extended_vars: ext_names.clone(),
                growing: sol.growing_rows.iter().map(|&i| ext_names[i].clone()).collect(),
                ranked: sol.decreasing.iter().copied().collect(),
                bounded_vars: newly.iter().map(|&x| v.vars()[x].clone()).collect(),
            });
        }
        iterations.push(Iteration {
            system: sys,
            solution: sol,
            children: children.clone(),
        });

        if exponential {
            return Ok(Analysis {
                report: BoundsReport {
                    status: Status::Exponential,
                    vexp,
                    texp,
                    complexity_exponent: None,
                    exponential_layer: Some(l),
                    layers: audits,
                },
                tree,
                iterations,
            });
        }
        if done {
            let cap = 1u64.checked_shl(n as u32).unwrap_or(u64::MAX);
            if let Some(b) = vexp.iter().chain(&texp).find(|b| b.finite().unwrap() > cap) {
                return Err(invariant(format!("exponent {b} exceeds 2^{n}")));
            }
            let complexity = texp.iter().filter_map(|b| b.finite()).max();
            return Ok(Analysis {
                report: BoundsReport {
                    status: Status::Polynomial,
                    vexp,
                    texp,
                    complexity_exponent: complexity,
                    exponential_layer: None,
                    layers: audits,
                },
                tree,
                iterations,
            });
        }

        let next = if options.skip_optimization {
            next_relevant_layer(&vexp, &texp, l).expect("exponential check passed")
        } else {
            l + 1
        };
        for &c in &children {
            tree.nodes[c].span.1 = next - 1;
        }
        l = next;
    }
}

/// Per-transition `N^{tExp}` and per-variable `N^{vExp}` lower bounds as
/// integers; `None` for unbounded entries.
pub fn thresholds(bounds: &[Bound], n: u64) -> Vec<Option<BigInt>> {
    bounds
        .iter()
        .map(|b| b.finite().map(|k| num_traits::pow(BigInt::from(n), k as usize)))
        .collect()
}

/// Variables grouped by whether their bound is at most `layer`.
pub fn partition_vars(vexp: &[Bound], layer: u64) -> (Vec<usize>, Vec<usize>) {
    let mut low = Vec::new();
    let mut high = Vec::new();
    for (x, b) in vexp.iter().enumerate() {
        match b {
            Bound::Finite(k) if *k <= layer => low.push(x),
            _ => high.push(x),
        }
    }
    (low, high)
}
