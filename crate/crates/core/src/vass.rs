//! VASS data model: parsing, matrices, SCC decomposition and execution
//! of paths and pre-paths.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use thiserror::Error;

/// Index into [`Vass::states`]; states are sorted by name, so id order is
/// name order.
pub type StateId = usize;

/// Stable transition id: position of the transition in the input file.
pub type TransitionId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Transition {
    pub id: TransitionId,
    pub src: StateId,
    pub dst: StateId,
    pub update: Vec<i64>,
}

impl Transition {
    pub fn is_self_loop(&self) -> bool {
        self.src == self.dst
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VassError {
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("invalid identifier `{0}`")]
    InvalidIdentifier(String),
    #[error("transition {index} has {found} update entries, expected {expected}")]
    ArityMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("duplicate transition {src} -> {dst} : {update:?}")]
    DuplicateTransition {
        src: String,
        dst: String,
        update: Vec<i64>,
    },
}

/// A vector addition system with states over an ordered list of variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vass {
    vars: Vec<String>,
    states: Vec<String>,
    transitions: Vec<Transition>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Vass {
    /// Builds a VASS from named transitions. States are the names mentioned
    /// by transitions; transition ids follow the given order.
    pub fn new<S: Into<String>>(
        vars: Vec<S>,
        transitions: Vec<(String, Vec<i64>, String)>,
    ) -> Result<Self, VassError> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for v in &vars {
            if !is_identifier(v) {
                return Err(VassError::InvalidIdentifier(v.clone()));
            }
            if !seen.insert(v.as_str()) {
                return Err(VassError::DuplicateVariable(v.clone()));
            }
        }
        let mut names = BTreeSet::new();
        for (index, (src, update, dst)) in transitions.iter().enumerate() {
            for name in [src, dst] {
                if !is_identifier(name) {
                    return Err(VassError::InvalidIdentifier(name.clone()));
                }
                names.insert(name.clone());
            }
            if update.len() != vars.len() {
                return Err(VassError::ArityMismatch {
                    index,
                    expected: vars.len(),
                    found: update.len(),
                });
            }
        }
        let states: Vec<String> = names.into_iter().collect();
        let lookup: BTreeMap<&str, StateId> = states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let mut triples = HashSet::new();
        let mut out = Vec::with_capacity(transitions.len());
        for (id, (src, update, dst)) in transitions.into_iter().enumerate() {
            let t = Transition {
                id,
                src: lookup[src.as_str()],
                dst: lookup[dst.as_str()],
                update,
            };
            if !triples.insert((t.src, t.update.clone(), t.dst)) {
                return Err(VassError::DuplicateTransition {
                    src,
                    dst,
                    update: t.update,
                });
            }
            out.push(t);
        }
        Ok(Vass {
            vars,
            states,
            transitions: out,
        })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn transition(&self, id: TransitionId) -> &Transition {
        &self.transitions[id]
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.states[s]
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.states.binary_search_by(|s| s.as_str().cmp(name)).ok()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Finds the unique transition `src -> dst` with the given update.
    pub fn find_transition(&self, src: &str, dst: &str, update: &[i64]) -> Option<TransitionId> {
        let (s, d) = (self.state_id(src)?, self.state_id(dst)?);
        self.transitions
            .iter()
            .find(|t| t.src == s && t.dst == d && t.update == update)
            .map(|t| t.id)
    }

    /// Ids of all transitions `src -> dst`, in id order.
    pub fn transitions_between(&self, src: &str, dst: &str) -> Vec<TransitionId> {
        match (self.state_id(src), self.state_id(dst)) {
            (Some(s), Some(d)) => self
                .transitions
                .iter()
                .filter(|t| t.src == s && t.dst == d)
                .map(|t| t.id)
                .collect(),
            _ => Vec::new(),
        }
    }

    /// Human-readable `src->dst` label, suffixed with `#id` when parallel
    /// transitions exist.
    pub fn transition_label(&self, id: TransitionId) -> String {
        let t = &self.transitions[id];
        let base = format!("{}->{}", self.states[t.src], self.states[t.dst]);
        let parallel = self
            .transitions
            .iter()
            .filter(|u| u.src == t.src && u.dst == t.dst)
            .count();
        if parallel > 1 {
            format!("{base}#{id}")
        } else {
            base
        }
    }

    pub fn all_states(&self) -> BTreeSet<StateId> {
        (0..self.states.len()).collect()
    }

    pub fn all_transitions(&self) -> BTreeSet<TransitionId> {
        (0..self.transitions.len()).collect()
    }

    /// True iff every state reaches every other state.
    pub fn is_connected(&self) -> bool {
        self.unreachable_pair().is_none()
    }

    /// First ordered pair `(s, s')` (by state order) with no path `s -> s'`.
    pub fn unreachable_pair(&self) -> Option<(StateId, StateId)> {
        let mut succ = vec![Vec::new(); self.states.len()];
        for t in &self.transitions {
            succ[t.src].push(t.dst);
        }
        for s in 0..self.states.len() {
            let mut seen = vec![false; self.states.len()];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &succ[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            if let Some(target) = seen.iter().position(|&b| !b) {
                return Some((s, target));
            }
        }
        None
    }

    /// Update matrix: rows are variables, columns are transitions.
    pub fn update_matrix(&self) -> IntegerMatrix {
        let mut entries = vec![vec![0; self.transitions.len()]; self.vars.len()];
        for t in &self.transitions {
            for (x, &u) in t.update.iter().enumerate() {
                entries[x][t.id] = u;
            }
        }
        IntegerMatrix {
            row_labels: self.vars.clone(),
            col_labels: self.transition_col_labels(),
            entries,
        }
    }

    /// Flow matrix: rows are states, columns are transitions.
    pub fn flow_matrix(&self) -> IntegerMatrix {
        let mut entries = vec![vec![0; self.transitions.len()]; self.states.len()];
        for t in &self.transitions {
            if !t.is_self_loop() {
                entries[t.src][t.id] = -1;
                entries[t.dst][t.id] = 1;
            }
        }
        IntegerMatrix {
            row_labels: self.states.clone(),
            col_labels: self.transition_col_labels(),
            entries,
        }
    }

    fn transition_col_labels(&self) -> Vec<String> {
        (0..self.transitions.len()).map(|i| format!("t{i}")).collect()
    }

    /// Strongly connected components of `(states, transitions)` that carry at
    /// least one transition, ordered by their smallest state.
    pub fn scc_decompose(
        &self,
        states: &BTreeSet<StateId>,
        transitions: &BTreeSet<TransitionId>,
    ) -> Vec<SubVass> {
        let mut graph: DiGraph<StateId, ()> = DiGraph::new();
        let mut index: BTreeMap<StateId, NodeIndex> = BTreeMap::new();
        for &s in states {
            index.insert(s, graph.add_node(s));
        }
        for &t in transitions {
            let t = &self.transitions[t];
            graph.add_edge(index[&t.src], index[&t.dst], ());
        }
        let mut component_of = BTreeMap::new();
        let mut comps: Vec<SubVass> = Vec::new();
        for comp in tarjan_scc(&graph) {
            let members: BTreeSet<StateId> = comp.iter().map(|&n| graph[n]).collect();
            for &s in &members {
                component_of.insert(s, comps.len());
            }
            comps.push(SubVass {
                states: members,
                transitions: BTreeSet::new(),
            });
        }
        for &t in transitions {
            let tr = &self.transitions[t];
            let (a, b) = (component_of[&tr.src], component_of[&tr.dst]);
            if a == b {
                comps[a].transitions.insert(t);
            }
        }
        comps.retain(|c| !c.transitions.is_empty());
        comps.sort_by_key(|c| *c.states.iter().next().expect("nonempty component"));
        comps
    }

    /// Sum of the updates along a transition sequence.
    pub fn value_of(&self, steps: &[TransitionId]) -> Vec<i128> {
        let mut sum = vec![0i128; self.dim()];
        for &t in steps {
            for (acc, &u) in sum.iter_mut().zip(&self.transitions[t].update) {
                *acc += u as i128;
            }
        }
        sum
    }

    pub fn instances(&self, steps: &[TransitionId]) -> Vec<u64> {
        let mut counts = vec![0u64; self.transitions.len()];
        for &t in steps {
            counts[t] += 1;
        }
        counts
    }

    /// Executes a path or pre-path step by step. Returns the final valuation
    /// iff every intermediate valuation stays non-negative.
    pub fn execute(&self, start: &Valuation, steps: &[TransitionId]) -> Option<Valuation> {
        assert_eq!(start.dim(), self.dim(), "valuation dimension mismatch");
        let fast: Option<Vec<i128>> = start
            .entries()
            .iter()
            .map(|e| i128::try_from(e).ok())
            .collect();
        if let Some(mut cur) = fast {
            let mut overflow = false;
            'steps: for &t in steps {
                for (c, &u) in cur.iter_mut().zip(&self.transitions[t].update) {
                    match c.checked_add(u as i128) {
                        Some(v) if v < 0 => return None,
                        Some(v) => *c = v,
                        None => {
                            overflow = true;
                            break 'steps;
                        }
                    }
                }
            }
            if !overflow {
                return Some(Valuation(cur.into_iter().map(BigInt::from).collect()));
            }
        }
        let mut cur = start.0.clone();
        for &t in steps {
            for (c, &u) in cur.iter_mut().zip(&self.transitions[t].update) {
                *c += u;
                if c.is_negative() {
                    return None;
                }
            }
        }
        Some(Valuation(cur))
    }

    /// Pointwise-minimal valuation from which `steps` can be executed.
    pub fn min_initial_valuation(&self, steps: &[TransitionId]) -> Valuation {
        let mut sum = vec![0i128; self.dim()];
        let mut low = vec![0i128; self.dim()];
        for &t in steps {
            for ((s, l), &u) in sum
                .iter_mut()
                .zip(low.iter_mut())
                .zip(&self.transitions[t].update)
            {
                *s += u as i128;
                if *s < *l {
                    *l = *s;
                }
            }
        }
        Valuation(low.into_iter().map(|l| BigInt::from(-l)).collect())
    }

    /// Canonical text form: vars line, then transitions sorted by
    /// `(src, dst, update)`.
    pub fn to_canonical_string(&self) -> String {
        let mut out = String::new();
        out.push_str("vars");
        for v in &self.vars {
            out.push(' ');
            out.push_str(v);
        }
        out.push('\n');
        let mut ts: Vec<&Transition> = self.transitions.iter().collect();
        ts.sort_by(|a, b| {
            (&self.states[a.src], &self.states[a.dst], &a.update).cmp(&(
                &self.states[b.src],
                &self.states[b.dst],
                &b.update,
            ))
        });
        for t in ts {
            out.push_str(&format!(
                "{} -> {} :",
                self.states[t.src], self.states[t.dst]
            ));
            for u in &t.update {
                out.push_str(&format!(" {u}"));
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Vass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

/// A sub-VASS label: a state set and a transition subset over it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubVass {
    pub states: BTreeSet<StateId>,
    pub transitions: BTreeSet<TransitionId>,
}

impl SubVass {
    pub fn whole(v: &Vass) -> Self {
        SubVass {
            states: v.all_states(),
            transitions: v.all_transitions(),
        }
    }

    pub fn state_names(&self, v: &Vass) -> Vec<String> {
        self.states.iter().map(|&s| v.state_name(s).to_string()).collect()
    }
}

/// Dense integer matrix with labelled rows and columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub entries: Vec<Vec<i64>>,
}

impl IntegerMatrix {
    pub fn rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn cols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries[r][c]
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        self.entries.iter().map(|row| row[c]).collect()
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .entries
            .iter()
            .flatten()
            .map(|e| e.to_string().len())
            .max()
            .unwrap_or(1);
        for (label, row) in self.row_labels.iter().zip(&self.entries) {
            write!(f, "{label:>8} |")?;
            for e in row {
                write!(f, " {e:>width$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Non-negative valuation of the variables, indexed in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Valuation(Vec<BigInt>);

impl Valuation {
    pub fn new(entries: Vec<BigInt>) -> Option<Self> {
        if entries.iter().any(|e| e.is_negative()) {
            None
        } else {
            Some(Valuation(entries))
        }
    }

    pub fn zero(dim: usize) -> Self {
        Valuation(vec![BigInt::zero(); dim])
    }

    pub fn from_u64s(entries: &[u64]) -> Self {
        Valuation(entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn get(&self, x: usize) -> &BigInt {
        &self.0[x]
    }

    /// Max-norm.
    pub fn norm(&self) -> BigInt {
        self.0.iter().max().cloned().unwrap_or_else(BigInt::zero)
    }

    /// Pointwise `self >= other`.
    pub fn dominates(&self, other: &Valuation) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Anything that is a sequence of transition ids.
pub trait Steps {
    fn steps(&self) -> &[TransitionId];
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("unknown transition id {0}")]
    UnknownTransition(TransitionId),
    #[error("step {0} does not end where the next step starts")]
    NotAdjacent(usize),
}

/// A transition sequence whose consecutive steps are state-adjacent.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Path {
    steps: Vec<TransitionId>,
}

impl Path {
    pub fn new(v: &Vass, steps: Vec<TransitionId>) -> Result<Self, PathError> {
        if let Some(&bad) = steps.iter().find(|&&t| t >= v.transitions().len()) {
            return Err(PathError::UnknownTransition(bad));
        }
        for (i, w) in steps.windows(2).enumerate() {
            if v.transition(w[0]).dst != v.transition(w[1]).src {
                return Err(PathError::NotAdjacent(i));
            }
        }
        Ok(Path { steps })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn start(&self, v: &Vass) -> Option<StateId> {
        self.steps.first().map(|&t| v.transition(t).src)
    }

    pub fn end(&self, v: &Vass) -> Option<StateId> {
        self.steps.last().map(|&t| v.transition(t).dst)
    }

    pub fn is_cycle(&self, v: &Vass) -> bool {
        self.start(v) == self.end(v)
    }

    pub fn into_steps(self) -> Vec<TransitionId> {
        self.steps
    }
}

impl Steps for Path {
    fn steps(&self) -> &[TransitionId] {
        &self.steps
    }
}

/// A transition sequence without the adjacency requirement.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PrePath {
    pub steps: Vec<TransitionId>,
}

impl Steps for PrePath {
    fn steps(&self) -> &[TransitionId] {
        &self.steps
    }
}

impl Steps for [TransitionId] {
    fn steps(&self) -> &[TransitionId] {
        self
    }
}

impl Steps for Vec<TransitionId> {
    fn steps(&self) -> &[TransitionId] {
        self
    }
}

/// Runs `p` from `start`; `None` if some intermediate valuation goes negative.
pub fn execute_path<P: Steps + ?Sized>(v: &Vass, start: &Valuation, p: &P) -> Option<Valuation> {
    v.execute(start, p.steps())
}

pub fn min_initial_valuation<P: Steps + ?Sized>(v: &Vass, p: &P) -> Valuation {
    v.min_initial_valuation(p.steps())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;

    #[test]
    fn running_example_update_matrix() {
        let v = models::running_example();
        let d = v.update_matrix();
        let expected = [
            [-1, 1, -1, 1, 0, 0, 0, 0, -1, 0],
            [1, -1, 1, -1, 0, 0, 0, 0, 0, 0],
            [-1, 1, 1, -1, -1, -1, -1, -1, 0, 0],
        ];
        assert_eq!(d.rows(), 3);
        assert_eq!(d.cols(), 10);
        for (r, row) in expected.iter().enumerate() {
            assert_eq!(d.entries[r], row.to_vec());
        }
    }

    #[test]
    fn running_example_flow_matrix() {
        let v = models::running_example();
        let f = v.flow_matrix();
        let expected = [
            [0, 0, 0, 0, 1, -1, 0, 0, -1, 0],
            [0, 0, 0, 0, -1, 1, 0, 0, 0, 1],
            [0, 0, 0, 0, 0, 0, 1, -1, 1, 0],
            [0, 0, 0, 0, 0, 0, -1, 1, 0, -1],
        ];
        assert_eq!(f.row_labels, vec!["s1", "s2", "s3", "s4"]);
        for (r, row) in expected.iter().enumerate() {
            assert_eq!(f.entries[r], row.to_vec());
        }
    }

    #[test]
    fn flow_columns_have_one_source_and_one_target() {
        let v = Vass::new(
            vec!["x"],
            vec![
                ("s1".into(), vec![0], "s2".into()),
                ("s2".into(), vec![0], "s3".into()),
                ("s3".into(), vec![1], "s3".into()),
            ],
        )
        .unwrap();
        let f = v.flow_matrix();
        for c in 0..2 {
            let col = f.column(c);
            assert_eq!(col.iter().filter(|&&e| e == -1).count(), 1);
            assert_eq!(col.iter().filter(|&&e| e == 1).count(), 1);
            assert_eq!(col.iter().filter(|&&e| e == 0).count(), 1);
        }
        assert!(f.column(2).iter().all(|&e| e == 0));
    }

    #[test]
    fn zero_update_gives_zero_column() {
        let v = models::running_example();
        assert!(v.update_matrix().column(9).iter().all(|&e| e == 0));
    }

    #[test]
    fn connectivity() {
        assert!(models::running_example().is_connected());
        let single = Vass::new(Vec::<String>::new(), vec![]).unwrap();
        assert!(single.is_connected());
        let one_way = Vass::new(vec!["x"], vec![("s1".into(), vec![1], "s2".into())]).unwrap();
        assert!(!one_way.is_connected());
        assert_eq!(one_way.unreachable_pair(), Some((1, 0)));
    }

    #[test]
    fn scc_of_running_example_after_removing_linear_transitions() {
        let v = models::running_example();
        let mut ts = v.all_transitions();
        ts.remove(&8);
        ts.remove(&9);
        let sccs = v.scc_decompose(&v.all_states(), &ts);
        assert_eq!(sccs.len(), 2);
        assert_eq!(sccs[0].state_names(&v), vec!["s1", "s2"]);
        assert_eq!(sccs[1].state_names(&v), vec!["s3", "s4"]);
        assert_eq!(sccs[0].transitions, BTreeSet::from([0, 1, 4, 5]));
        assert_eq!(sccs[1].transitions, BTreeSet::from([2, 3, 6, 7]));

        let whole = v.scc_decompose(&v.all_states(), &v.all_transitions());
        assert_eq!(whole, vec![SubVass::whole(&v)]);
    }

    #[test]
    fn acyclic_graph_has_no_scc() {
        let v = Vass::new(vec!["x"], vec![("s1".into(), vec![1], "s2".into())]).unwrap();
        assert!(v.scc_decompose(&v.all_states(), &v.all_transitions()).is_empty());
    }

    #[test]
    fn executing_inner_cycle() {
        let v = models::running_example();
        // s1->s2, (s2->s2)^4, s2->s1, s1->s1
        let c1 = Path::new(&v, vec![5, 1, 1, 1, 1, 4, 0]).unwrap();
        assert!(c1.is_cycle(&v));
        let start = Valuation::from_u64s(&[0, 4, 1]);
        let end = execute_path(&v, &start, &c1).unwrap();
        assert_eq!(end, Valuation::from_u64s(&[3, 1, 2]));
        assert_eq!(min_initial_valuation(&v, &c1), start);
        // one below the minimum in y fails
        assert!(execute_path(&v, &Valuation::from_u64s(&[0, 3, 1]), &c1).is_none());
    }

    #[test]
    fn execution_edge_cases() {
        let v = models::running_example();
        let nu = Valuation::from_u64s(&[2, 0, 7]);
        assert_eq!(execute_path(&v, &nu, &Path::default()), Some(nu.clone()));
        assert_eq!(min_initial_valuation(&v, &PrePath::default()), Valuation::zero(3));

        let w = Vass::new(
            vec!["x", "y", "z"],
            vec![("s".into(), vec![0, 0, -1], "s".into())],
        )
        .unwrap();
        assert!(execute_path(&w, &Valuation::zero(3), &vec![0]).is_none());

        let up = Vass::new(vec!["x", "y"], vec![("s".into(), vec![1, 1], "s".into())]).unwrap();
        assert_eq!(min_initial_valuation(&up, &vec![0]), Valuation::zero(2));
    }

    #[test]
    fn path_adjacency_is_checked() {
        let v = models::running_example();
        assert_eq!(Path::new(&v, vec![0, 1]), Err(PathError::NotAdjacent(0)));
        assert_eq!(Path::new(&v, vec![42]), Err(PathError::UnknownTransition(42)));
    }

    #[test]
    fn duplicate_transitions_are_rejected_but_parallel_ones_allowed() {
        let dup = Vass::new(
            vec!["x"],
            vec![
                ("s1".into(), vec![1], "s2".into()),
                ("s1".into(), vec![1], "s2".into()),
            ],
        );
        assert!(matches!(dup, Err(VassError::DuplicateTransition { .. })));
        let par = Vass::new(
            vec!["x"],
            vec![
                ("s1".into(), vec![1], "s2".into()),
                ("s1".into(), vec![2], "s2".into()),
            ],
        )
        .unwrap();
        assert_eq!(par.transition_label(1), "s1->s2#1");
    }
}
