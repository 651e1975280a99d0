//! Certificates for the analysis result.
//!
//! For polynomial systems, [`build_witness`] constructs for a given `N` an
//! executable path with at least `N^tExp(t)` instances of every transition
//! `t` that ends with every variable `x` at `N^vExp(x)` or more. For
//! exponential systems, [`exponential_certificate`] extracts cycles and a
//! variable partition that force exponential growth.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::io::{self, Write};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::analyzer::{thresholds, Analysis, Bound, LayerTree, NodeId, Status};
use crate::seq::Seq;
use crate::vass::{Path, StateId, Steps, TransitionId, Valuation, Vass};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error("witnesses exist only for polynomial systems")]
    NotPolynomial,
    #[error("certificates exist only for exponential systems")]
    NotExponential,
    #[error("N must be at least 1")]
    ZeroN,
    #[error("multiplicities violate flow conservation at state `{0}`")]
    Flow(String),
    #[error("multiplicity {0} does not fit a machine word")]
    TooLarge(BigInt),
    #[error("self-check failed: {0}")]
    SelfCheck(String),
}

/// A set of cycles; its value is the sum of the cycle values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiCycle {
    pub cycles: Vec<Path>,
}

impl MultiCycle {
    pub fn value(&self, v: &Vass) -> Vec<i128> {
        let mut sum = vec![0i128; v.dim()];
        for c in &self.cycles {
            for (s, x) in sum.iter_mut().zip(v.value_of(c.steps())) {
                *s += x;
            }
        }
        sum
    }

    pub fn instances(&self, v: &Vass) -> Vec<u64> {
        let mut counts = vec![0u64; v.transitions().len()];
        for c in &self.cycles {
            for (a, b) in counts.iter_mut().zip(v.instances(c.steps())) {
                *a += b;
            }
        }
        counts
    }
}

/// Euler circuit through `counts[t]` copies of every transition `t`,
/// starting at `start`. The caller guarantees balance and connectivity.
fn euler_circuit(v: &Vass, counts: &BTreeMap<TransitionId, u64>, start: StateId) -> Vec<TransitionId> {
    let mut left: BTreeMap<StateId, Vec<(TransitionId, u64)>> = BTreeMap::new();
    for (&t, &c) in counts {
        if c > 0 {
            left.entry(v.transition(t).src).or_default().push((t, c));
        }
    }
    let mut stack: Vec<(StateId, Option<TransitionId>)> = vec![(start, None)];
    let mut circuit = Vec::new();
    while let Some(&(s, _)) = stack.last() {
        let next = left
            .get_mut(&s)
            .and_then(|out| out.iter_mut().find(|(_, c)| *c > 0))
            .map(|(t, c)| {
                *c -= 1;
                *t
            });
        match next {
            Some(t) => stack.push((v.transition(t).dst, Some(t))),
            None => {
                if let Some((_, Some(t))) = stack.pop() {
                    circuit.push(t);
                }
            }
        }
    }
    circuit.reverse();
    circuit
}

fn to_u64(x: &BigInt) -> Result<u64, WitnessError> {
    x.to_u64().ok_or_else(|| WitnessError::TooLarge(x.clone()))
}

/// Splits multiplicities `mu` (indexed like `u`) into one Euler cycle per
/// strongly connected component of the support, each starting at its least
/// state.
pub fn multicycle_from_solution(v: &Vass, u: &[TransitionId], mu: &[BigInt]) -> Result<MultiCycle, WitnessError> {
    let mut balance = vec![BigInt::zero(); v.states().len()];
    let mut counts = BTreeMap::new();
    for (&t, m) in u.iter().zip(mu) {
        if m.is_negative() {
            return Err(WitnessError::Flow(v.state_name(v.transition(t).src).to_string()));
        }
        if m.is_zero() {
            continue;
        }
        let tr = v.transition(t);
        balance[tr.src] -= m;
        balance[tr.dst] += m;
        counts.insert(t, to_u64(m)?);
    }
    if let Some(s) = balance.iter().position(|b| !b.is_zero()) {
        return Err(WitnessError::Flow(v.state_name(s).to_string()));
    }
    let support: BTreeSet<TransitionId> = counts.keys().copied().collect();
    let mut cycles = Vec::new();
    for comp in v.scc_decompose(&v.all_states(), &support) {
        let local: BTreeMap<_, _> = comp.transitions.iter().map(|t| (*t, counts[t])).collect();
        let start = *comp.states.iter().next().expect("component has states");
        let steps = euler_circuit(v, &local, start);
        cycles.push(Path::new(v, steps).expect("Euler circuits are paths"));
    }
    // A balanced support has no transition between components.
    if cycles.iter().map(|c| c.len()).sum::<usize>() as u64 != counts.values().sum::<u64>() {
        return Err(WitnessError::Flow(String::from("?")));
    }
    Ok(MultiCycle { cycles })
}

fn bfs_path(v: &Vass, from: StateId, to: StateId) -> Vec<TransitionId> {
    let mut prev: Vec<Option<TransitionId>> = vec![None; v.states().len()];
    let mut seen = vec![false; v.states().len()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(s) = queue.pop_front() {
        if s == to {
            break;
        }
        for t in v.transitions().iter().filter(|t| t.src == s) {
            if !seen[t.dst] {
                seen[t.dst] = true;
                prev[t.dst] = Some(t.id);
                queue.push_back(t.dst);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = to;
    while cur != from {
        let t = prev[cur].expect("connected system");
        path.push(t);
        cur = v.transition(t).src;
    }
    path.reverse();
    path
}

/// Cycle from the least state that uses every transition at least once:
/// unused transitions are visited greedily in id order via shortest paths.
pub fn covering_cycle(v: &Vass) -> Path {
    if v.transitions().is_empty() {
        return Path::default();
    }
    let start = 0;
    let mut cur = start;
    let mut used = vec![false; v.transitions().len()];
    let mut steps = Vec::new();
    for t in 0..v.transitions().len() {
        if used[t] {
            continue;
        }
        let mut hop = bfs_path(v, cur, v.transition(t).src);
        hop.push(t);
        for &h in &hop {
            used[h] = true;
        }
        cur = v.transition(t).dst;
        steps.extend(hop);
    }
    steps.extend(bfs_path(v, cur, start));
    Path::new(v, steps).expect("stitched from adjacent segments")
}

/// The cycle fixed for every tree node: the covering cycle at the root,
/// and otherwise the Euler circuit of the multi-cycle solution of the
/// iteration that created the node, restricted to the node's transitions.
pub fn node_cycles(v: &Vass, analysis: &Analysis) -> Result<BTreeMap<NodeId, Path>, WitnessError> {
    let mut out = BTreeMap::new();
    out.insert(LayerTree::ROOT, covering_cycle(v));
    for it in &analysis.iterations {
        for &id in &it.children {
            let node = analysis.tree.node(id);
            let mut counts = BTreeMap::new();
            for &t in &node.label.transitions {
                counts.insert(t, to_u64(&it.mu_of(t))?);
            }
            let steps = euler_circuit(v, &counts, node.min_state());
            let expected: u64 = counts.values().sum();
            if steps.len() as u64 != expected || counts.values().any(|&c| c == 0) {
                return Err(WitnessError::SelfCheck(format!(
                    "node {} has no cycle with the solution multiplicities",
                    analysis.tree.node_name(v, id)
                )));
            }
            out.insert(id, Path::new(v, steps).expect("Euler circuits are paths"));
        }
    }
    Ok(out)
}

/// Smallest `k >= 1` such that every pre-path, given as `(layer, minimal
/// initial valuation)`, executes from `k * N^min(vExp(x), layer)`.
pub fn choose_k(vexp: &[Bound], pre_paths: &[(u64, Valuation)], n: u64) -> u64 {
    let mut k = BigInt::one();
    let big_n = BigInt::from(n);
    for (layer, need) in pre_paths {
        for (x, req) in need.entries().iter().enumerate() {
            let e = match vexp[x] {
                Bound::Finite(b) => b.min(*layer),
                Bound::Inf => *layer,
            };
            let scale = num_traits::pow(big_n.clone(), e as usize);
            k = k.max(req.div_ceil(&scale));
        }
    }
    k.to_u64().expect("k fits a machine word")
}

/// The node occupying `layer` either as itself or as a replica of a node
/// whose span was skipped over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Slot {
    node: NodeId,
    layer: u64,
}

struct Builder<'a> {
    v: &'a Vass,
    tree: &'a LayerTree,
    n: u64,
    cycles: HashMap<NodeId, Arc<Seq>>,
    /// `(segments, children)`: the node cycle split at the first visit of
    /// each child's start state, children in order of that visit.
    split: HashMap<NodeId, (Vec<Arc<Seq>>, Vec<NodeId>)>,
}

impl<'a> Builder<'a> {
    fn new(v: &'a Vass, analysis: &'a Analysis, n: u64) -> Result<Self, WitnessError> {
        let paths = node_cycles(v, analysis)?;
        let tree = &analysis.tree;
        let mut split = HashMap::new();
        for (&id, path) in &paths {
            let steps = path.steps();
            let mut firsts: Vec<(usize, NodeId)> = Vec::new();
            for &c in &tree.node(id).children {
                let start = paths[&c].start(v).expect("node cycles are nonempty");
                let pos = steps
                    .iter()
                    .position(|&t| v.transition(t).src == start)
                    .ok_or_else(|| WitnessError::SelfCheck(format!("cycle of node {id} misses a child")))?;
                firsts.push((pos, c));
            }
            firsts.sort();
            let mut cuts: Vec<usize> = firsts.iter().map(|f| f.0).collect();
            cuts.insert(0, 0);
            cuts.push(steps.len());
            let segments = cuts.windows(2).map(|w| Seq::steps(v, steps[w[0]..w[1]].to_vec())).collect();
            split.insert(id, (segments, firsts.into_iter().map(|f| f.1).collect()));
        }
        let cycles = paths
            .iter()
            .map(|(&id, p)| (id, Seq::steps(v, p.steps().to_vec())))
            .collect();
        Ok(Builder {
            v,
            tree,
            n,
            cycles,
            split,
        })
    }

    /// Segments and child slots of a slot. A replica slot has its own
    /// node as only child, entered right at the cycle start.
    fn decompose(&self, slot: Slot) -> (Vec<Arc<Seq>>, Vec<Slot>) {
        let node = self.tree.node(slot.node);
        if slot.layer < node.span.1 {
            let segments = vec![Seq::empty(self.v), self.cycles[&slot.node].clone()];
            return (
                segments,
                vec![Slot {
                    node: slot.node,
                    layer: slot.layer + 1,
                }],
            );
        }
        let (segments, children) = &self.split[&slot.node];
        let slots = children
            .iter()
            .map(|&c| Slot {
                node: c,
                layer: slot.layer + 1,
            })
            .collect();
        (segments.clone(), slots)
    }

    /// Proper path `wit_l(slot)`.
    fn wit(&self, slot: Slot, l: u64, memo: &mut HashMap<Slot, Arc<Seq>>) -> Arc<Seq> {
        if let Some(s) = memo.get(&slot) {
            return s.clone();
        }
        let out = if slot.layer == l {
            self.cycles[&slot.node].clone()
        } else {
            let (segments, children) = self.decompose(slot);
            let mut parts = vec![segments[0].clone()];
            for (j, c) in children.into_iter().enumerate() {
                let inner = self.wit(c, l, memo);
                parts.push(Seq::repeat(self.v, inner, self.n));
                parts.push(segments[j + 1].clone());
            }
            Seq::concat(self.v, parts)
        };
        memo.insert(slot, out.clone());
        out
    }

    /// Pre-path `alpha_l(slot)`: the repeated child parts without the
    /// connecting segments.
    fn pre(&self, slot: Slot, l: u64, memo: &mut HashMap<Slot, Arc<Seq>>) -> Arc<Seq> {
        if let Some(s) = memo.get(&slot) {
            return s.clone();
        }
        let out = if slot.layer == l {
            self.cycles[&slot.node].clone()
        } else {
            let (_, children) = self.decompose(slot);
            let parts = children
                .into_iter()
                .map(|c| Seq::repeat(self.v, self.pre(c, l, memo), self.n))
                .collect();
            Seq::concat(self.v, parts)
        };
        memo.insert(slot, out.clone());
        out
    }
}

/// Executable lower-bound path for one value of `N`.
#[derive(Debug, Clone)]
pub struct WitnessPath {
    pub n: u64,
    pub k: u64,
    /// Deepest tree layer the construction descends to.
    pub depth: u64,
    pub path: Arc<Seq>,
    pub initial: Valuation,
    /// Sum of the minimal initial valuations of the pre-paths the path is
    /// shuffled from; the path must execute from below it.
    pub envelope: Valuation,
    pub final_valuation: Valuation,
}

impl WitnessPath {
    pub fn instances(&self) -> &[BigInt] {
        self.path.instances()
    }

    pub fn len(&self) -> &BigInt {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }

    /// Plain-text dump: header, initial valuation, one run per line, then
    /// instance counts and the final valuation.
    pub fn write_dump(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "witness N={} k={}", self.n, self.k)?;
        write!(out, "init")?;
        for e in self.initial.entries() {
            write!(out, " {e}")?;
        }
        writeln!(out)?;
        let mut result = Ok(());
        self.path.for_each_run(&mut |t, c| {
            result = if c.is_one() {
                writeln!(out, "{t}")
            } else {
                writeln!(out, "{t} x{c}")
            };
            result.is_ok()
        });
        result?;
        write!(out, "instances")?;
        for c in self.instances() {
            write!(out, " {c}")?;
        }
        writeln!(out)?;
        write!(out, "final")?;
        for e in self.final_valuation.entries() {
            write!(out, " {e}")?;
        }
        writeln!(out)
    }
}

pub fn build_witness(v: &Vass, analysis: &Analysis, n: u64) -> Result<WitnessPath, WitnessError> {
    if analysis.report.status != Status::Polynomial {
        return Err(WitnessError::NotPolynomial);
    }
    if n == 0 {
        return Err(WitnessError::ZeroN);
    }
    let vexp = &analysis.report.vexp;
    if v.transitions().is_empty() {
        let initial = Valuation::zero(v.dim());
        return Ok(WitnessPath {
            n,
            k: 1,
            depth: 0,
            path: Seq::empty(v),
            initial: initial.clone(),
            envelope: initial.clone(),
            final_valuation: initial,
        });
    }
    let b = Builder::new(v, analysis, n)?;
    let depth = analysis.tree.depth();
    let root = Slot {
        node: LayerTree::ROOT,
        layer: 0,
    };
    let root_cycle = b.cycles[&LayerTree::ROOT].clone();

    let mut taus = vec![Seq::repeat(v, root_cycle.clone(), n)];
    let mut betas = vec![Seq::repeat(v, root_cycle, n)];
    for l in 1..=depth {
        let mut memo = HashMap::new();
        taus.push(Seq::repeat(v, b.pre(root, l, &mut memo), n));
        let mut memo = HashMap::new();
        betas.push(Seq::repeat(v, b.wit(root, l, &mut memo), n));
    }

    let needs: Vec<(u64, Valuation)> = taus
        .iter()
        .enumerate()
        .skip(1)
        .map(|(l, t)| (l as u64, t.min_initial()))
        .collect();
    let k = choose_k(vexp, &needs, n);

    let gamma = Seq::concat(v, betas.iter().map(|s| Seq::repeat(v, s.clone(), k)).collect());
    let mut envelope = vec![BigInt::zero(); v.dim()];
    let mut prefix = Vec::new();
    for tau in &taus {
        prefix.push(Seq::repeat(v, tau.clone(), k));
        let big_gamma = Seq::concat(v, prefix.clone());
        for (e, m) in envelope.iter_mut().zip(big_gamma.min_initial().entries()) {
            *e += m;
        }
    }

    let targets = thresholds(vexp, n);
    let low = gamma.min_initial();
    let initial: Vec<BigInt> = low
        .entries()
        .iter()
        .zip(gamma.value())
        .zip(&targets)
        .map(|((m, d), t)| {
            let t = t.clone().expect("polynomial bounds are finite");
            m.clone().max(t - d)
        })
        .collect();
    let final_valuation: Vec<BigInt> = initial.iter().zip(gamma.value()).map(|(a, d)| a + d).collect();
    let w = WitnessPath {
        n,
        k,
        depth,
        path: gamma,
        initial: Valuation::new(initial).expect("non-negative"),
        envelope: Valuation::new(envelope).expect("non-negative"),
        final_valuation: Valuation::new(final_valuation).expect("initial covers the value"),
    };
    let report = verify_witness_with(v, &w, &analysis.report.vexp, &analysis.report.texp, 0);
    if let Some(failed) = report.checks.iter().find(|c| !c.passed) {
        return Err(WitnessError::SelfCheck(format!("{}: {}", failed.name, failed.detail)));
    }
    Ok(w)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    /// Whether the path was executed step run by step run rather than
    /// through its composed summary.
    pub explicit: bool,
    /// `||initial|| / N`, rounded up.
    pub init_ratio: BigInt,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{:<12} {}  {}", c.name, if c.passed { "pass" } else { "FAIL" }, c.detail)?;
        }
        writeln!(
            f,
            "{:<12} {}",
            "mode",
            if self.explicit { "explicit" } else { "summary" }
        )
    }
}

/// Runs beyond which verification relies on the composed summary.
pub const EXPLICIT_RUN_LIMIT: u64 = 20_000_000;

/// Checks executability, the instance and final-valuation thresholds, and
/// that the initial valuation stays within the recorded envelope.
pub fn verify_witness(v: &Vass, w: &WitnessPath, vexp: &[Bound], texp: &[Bound]) -> VerificationReport {
    verify_witness_with(v, w, vexp, texp, EXPLICIT_RUN_LIMIT)
}

struct Replay {
    cur: Vec<BigInt>,
    counts: Vec<BigInt>,
    state: Option<StateId>,
    adjacent: bool,
    failed_at: Option<BigInt>,
    steps: BigInt,
    runs: u64,
}

fn replay(v: &Vass, w: &WitnessPath, limit: u64) -> Option<Replay> {
    let mut r = Replay {
        cur: w.initial.entries().to_vec(),
        counts: vec![BigInt::zero(); v.transitions().len()],
        state: None,
        adjacent: true,
        failed_at: None,
        steps: BigInt::zero(),
        runs: 0,
    };
    let done = w.path.for_each_run(&mut |t, c| {
        r.runs += 1;
        if r.runs > limit {
            return false;
        }
        let tr = v.transition(t);
        if let Some(s) = r.state {
            if s != tr.src {
                r.adjacent = false;
            }
        }
        if !c.is_one() && !tr.is_self_loop() {
            r.adjacent = false;
        }
        r.state = Some(tr.dst);
        if r.failed_at.is_none() {
            // A run of one transition is lowest after its first step for
            // increments and after its last step for decrements.
            for (x, &u) in r.cur.iter_mut().zip(&tr.update) {
                let after_one = &*x + u;
                let after_all = &*x + c * u;
                if after_one.is_negative() || after_all.is_negative() {
                    r.failed_at = Some(r.steps.clone());
                }
                *x = after_all;
            }
        }
        r.counts[t] += c;
        r.steps += c;
        true
    });
    done.then_some(r)
}

fn verify_witness_with(v: &Vass, w: &WitnessPath, vexp: &[Bound], texp: &[Bound], limit: u64) -> VerificationReport {
    let n = w.n;
    let summary = w.path.summary();
    let replayed = if limit > 0 { replay(v, w, limit) } else { None };
    let explicit = replayed.is_some();
    let (adjacent, executable, counts, end) = match replayed {
        Some(r) => {
            let executable = match r.failed_at {
                None => Ok(()),
                Some(step) => Err(Some(step)),
            };
            (r.adjacent, executable, r.counts, r.cur)
        }
        None => {
            let ok = w.initial.dominates(&w.path.min_initial());
            let end = w.initial.entries().iter().zip(w.path.value()).map(|(a, d)| a + d).collect();
            (summary.proper, if ok { Ok(()) } else { Err(None) }, summary.counts.clone(), end)
        }
    };
    let mut checks = Vec::new();
    checks.push(Check {
        name: "path",
        passed: adjacent,
        detail: if adjacent {
            format!("{} steps", w.path.len())
        } else {
            "consecutive steps are not state-adjacent".into()
        },
    });
    checks.push(Check {
        name: "executable",
        passed: executable.is_ok(),
        detail: match &executable {
            Ok(()) => format!("from {}", w.initial),
            Err(Some(step)) => format!("a variable goes negative in the run starting at step {step}"),
            Err(None) => "initial valuation is below the minimum".into(),
        },
    });

    let t_targets = thresholds(texp, n);
    let short: Vec<String> = counts
        .iter()
        .zip(&t_targets)
        .enumerate()
        .filter(|(_, (c, t))| t.as_ref().is_some_and(|t| *c < t))
        .map(|(i, (c, t))| format!("{}: {} < {}", v.transition_label(i), c, t.as_ref().unwrap()))
        .collect();
    checks.push(Check {
        name: "instances",
        passed: short.is_empty() && t_targets.iter().all(|t| t.is_some()),
        detail: if short.is_empty() {
            format!("every transition reaches N^tExp for N={n}")
        } else {
            short.join(", ")
        },
    });

    let v_targets = thresholds(vexp, n);
    let low: Vec<String> = end
        .iter()
        .zip(&v_targets)
        .enumerate()
        .filter(|(_, (e, t))| t.as_ref().is_some_and(|t| *e < t))
        .map(|(x, (e, t))| format!("{}: {} < {}", v.vars()[x], e, t.as_ref().unwrap()))
        .collect();
    let end_matches = end.as_slice() == w.final_valuation.entries();
    checks.push(Check {
        name: "final",
        passed: low.is_empty() && end_matches,
        detail: if !end_matches {
            "reached valuation differs from the recorded one".into()
        } else if low.is_empty() {
            format!("reaches {}", w.final_valuation)
        } else {
            low.join(", ")
        },
    });

    let within = w.envelope.dominates(&w.path.min_initial());
    let norm = w.initial.norm();
    let init_ratio = norm.div_ceil(&BigInt::from(n));
    checks.push(Check {
        name: "envelope",
        passed: within,
        detail: format!("||init|| = {norm} ({init_ratio} N), envelope {}", w.envelope),
    });
    VerificationReport {
        checks,
        explicit,
        init_ratio,
    }
}

/// Cycles and a variable partition `U`, `W` such that every cycle is
/// non-negative on `U` and the cycles together strictly increase every
/// variable of `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentialCertificate {
    pub cycles: Vec<Path>,
    pub u: Vec<usize>,
    pub w: Vec<usize>,
}

impl ExponentialCertificate {
    /// Checks the two growth conditions exactly.
    pub fn check(&self, v: &Vass) -> Result<(), String> {
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        for &x in self.u.iter().chain(&self.w) {
            if x >= v.dim() || !seen.insert(x) {
                return Err(format!("U and W do not partition the variables (index {x})"));
            }
        }
        if seen.len() != v.dim() {
            return Err("U and W do not cover the variables".into());
        }
        if self.cycles.is_empty() {
            return Err("no cycles".into());
        }
        let mut total = vec![0i128; v.dim()];
        for (i, c) in self.cycles.iter().enumerate() {
            if c.is_empty() || !c.is_cycle(v) {
                return Err(format!("entry {i} is not a nonempty cycle"));
            }
            let val = v.value_of(c.steps());
            for &x in &self.u {
                if val[x] < 0 {
                    return Err(format!("cycle {i} decreases {} which is in U", v.vars()[x]));
                }
            }
            for (t, d) in total.iter_mut().zip(val) {
                *t += d;
            }
        }
        for &x in &self.w {
            if total[x] < 1 {
                return Err(format!("cycles do not increase {} which is in W", v.vars()[x]));
            }
        }
        Ok(())
    }

    pub fn write_dump(&self, v: &Vass, out: &mut dyn Write) -> io::Result<()> {
        let names = |xs: &[usize]| xs.iter().map(|&x| format!(" {}", v.vars()[x])).collect::<String>();
        writeln!(out, "exponential-certificate")?;
        writeln!(out, "U:{}", names(&self.u))?;
        writeln!(out, "W:{}", names(&self.w))?;
        for c in &self.cycles {
            let steps = c.steps();
            let mut line = v.state_name(v.transition(steps[0]).src).to_string();
            for &t in steps {
                line.push_str(&format!(" -t{t}-> {}", v.state_name(v.transition(t).dst)));
            }
            writeln!(out, "{line}")?;
        }
        Ok(())
    }
}

/// Node cycles of the layer where exponential complexity was detected,
/// with `U` the variables bounded by then and `W` the rest.
pub fn exponential_certificate(v: &Vass, analysis: &Analysis) -> Result<ExponentialCertificate, WitnessError> {
    let layer = match (analysis.report.status, analysis.report.exponential_layer) {
        (Status::Exponential, Some(l)) => l,
        _ => return Err(WitnessError::NotExponential),
    };
    let all = node_cycles(v, analysis)?;
    let cycles = analysis
        .tree
        .layer(layer)
        .into_iter()
        .map(|id| all[&id].clone())
        .collect();
    let (u, w) = crate::analyzer::partition_vars(&analysis.report.vexp, layer);
    let cert = ExponentialCertificate { cycles, u, w };
    cert.check(v).map_err(WitnessError::SelfCheck)?;
    Ok(cert)
}
