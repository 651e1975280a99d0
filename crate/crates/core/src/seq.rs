//! Compressed transition sequences.
//!
//! Witness paths are built from nested repetitions and grow like
//! `N^k`, so they are kept as a DAG of concatenations and repetitions.
//! Every node carries a summary (length, value, lowest prefix value,
//! per-transition counts, endpoint states) that composes exactly, which
//! makes executability and threshold checks independent of the length.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::vass::{StateId, TransitionId, Valuation, Vass};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summary {
    pub len: BigInt,
    /// Total value per variable.
    pub delta: Vec<BigInt>,
    /// Lowest running sum per variable over all prefixes (never positive).
    pub low: Vec<BigInt>,
    pub counts: Vec<BigInt>,
    pub first: Option<StateId>,
    pub last: Option<StateId>,
    /// Consecutive steps are state-adjacent.
    pub proper: bool,
}

impl Summary {
    fn empty(v: &Vass) -> Self {
        Summary {
            len: BigInt::zero(),
            delta: vec![BigInt::zero(); v.dim()],
            low: vec![BigInt::zero(); v.dim()],
            counts: vec![BigInt::zero(); v.transitions().len()],
            first: None,
            last: None,
            proper: true,
        }
    }

    fn is_empty(&self) -> bool {
        self.len.is_zero()
    }

    fn then(&self, other: &Summary) -> Summary {
        if self.is_empty() {
            return other.clone();
        }
        if other.is_empty() {
            return self.clone();
        }
        Summary {
            len: &self.len + &other.len,
            delta: self.delta.iter().zip(&other.delta).map(|(a, b)| a + b).collect(),
            low: self
                .low
                .iter()
                .zip(self.delta.iter().zip(&other.low))
                .map(|(l, (d, m))| l.clone().min(d + m))
                .collect(),
            counts: self.counts.iter().zip(&other.counts).map(|(a, b)| a + b).collect(),
            first: self.first,
            last: other.last,
            proper: self.proper && other.proper && self.last == other.first,
        }
    }

    fn pow(&self, v: &Vass, d: u64) -> Summary {
        if d == 0 || self.is_empty() {
            return Summary::empty(v);
        }
        let big = BigInt::from(d);
        let rest = BigInt::from(d - 1);
        Summary {
            len: &self.len * &big,
            delta: self.delta.iter().map(|x| x * &big).collect(),
            low: self
                .low
                .iter()
                .zip(&self.delta)
                .map(|(l, x)| {
                    let drift = x * &rest;
                    if drift.is_negative() {
                        l + drift
                    } else {
                        l.clone()
                    }
                })
                .collect(),
            counts: self.counts.iter().map(|c| c * &big).collect(),
            first: self.first,
            last: self.last,
            proper: self.proper && (d == 1 || self.first == self.last),
        }
    }
}

#[derive(Debug)]
enum Kind {
    Steps(Vec<TransitionId>),
    Concat(Vec<Arc<Seq>>),
    Repeat(Arc<Seq>, u64),
}

/// A transition sequence stored as a DAG of concatenations and repetitions.
#[derive(Debug)]
pub struct Seq {
    kind: Kind,
    summary: Summary,
}

impl Seq {
    pub fn steps(v: &Vass, steps: Vec<TransitionId>) -> Arc<Seq> {
        let mut s = Summary::empty(v);
        let mut sum = vec![0i128; v.dim()];
        let mut low = vec![0i128; v.dim()];
        for (i, &t) in steps.iter().enumerate() {
            let tr = v.transition(t);
            for ((acc, l), &u) in sum.iter_mut().zip(low.iter_mut()).zip(&tr.update) {
                *acc += u as i128;
                *l = (*l).min(*acc);
            }
            s.counts[t] += 1;
            if i == 0 {
                s.first = Some(tr.src);
            } else if s.last != Some(tr.src) {
                s.proper = false;
            }
            s.last = Some(tr.dst);
        }
        s.len = BigInt::from(steps.len());
        s.delta = sum.into_iter().map(BigInt::from).collect();
        s.low = low.into_iter().map(BigInt::from).collect();
        Arc::new(Seq {
            kind: Kind::Steps(steps),
            summary: s,
        })
    }

    pub fn empty(v: &Vass) -> Arc<Seq> {
        Seq::steps(v, Vec::new())
    }

    pub fn concat(v: &Vass, parts: Vec<Arc<Seq>>) -> Arc<Seq> {
        let summary = parts
            .iter()
            .fold(Summary::empty(v), |acc, p| acc.then(&p.summary));
        Arc::new(Seq {
            kind: Kind::Concat(parts),
            summary,
        })
    }

    pub fn repeat(v: &Vass, part: Arc<Seq>, times: u64) -> Arc<Seq> {
        let summary = part.summary.pow(v, times);
        Arc::new(Seq {
            kind: Kind::Repeat(part, times),
            summary,
        })
    }

    pub fn summary(&self) -> &Summary {
        &self.summary
    }

    pub fn len(&self) -> &BigInt {
        &self.summary.len
    }

    pub fn is_empty(&self) -> bool {
        self.summary.is_empty()
    }

    pub fn is_path(&self) -> bool {
        self.summary.proper
    }

    pub fn value(&self) -> &[BigInt] {
        &self.summary.delta
    }

    pub fn instances(&self) -> &[BigInt] {
        &self.summary.counts
    }

    /// Pointwise-minimal valuation from which the sequence executes.
    pub fn min_initial(&self) -> Valuation {
        Valuation::new(self.summary.low.iter().map(|l| -l).collect()).expect("low is never positive")
    }

    /// Emits maximal runs `(t, count)` of equal consecutive transitions in
    /// order. Stops early and returns false once `f` returns false.
    pub fn for_each_run(&self, f: &mut dyn FnMut(TransitionId, &BigInt) -> bool) -> bool {
        let mut pending: Option<(TransitionId, BigInt)> = None;
        let completed = {
            let mut push = |t: TransitionId, c: BigInt| -> bool {
                match &mut pending {
                    Some((pt, pc)) if *pt == t => {
                        *pc += c;
                        true
                    }
                    _ => match pending.replace((t, c)) {
                        Some((pt, pc)) => f(pt, &pc),
                        None => true,
                    },
                }
            };
            self.emit(&mut push)
        };
        if !completed {
            return false;
        }
        match pending {
            Some((t, c)) => f(t, &c),
            None => true,
        }
    }

    fn single_run(&self) -> Option<TransitionId> {
        let mut nonzero = self.summary.counts.iter().enumerate().filter(|(_, c)| !c.is_zero());
        let (t, _) = nonzero.next()?;
        nonzero.next().is_none().then_some(t)
    }

    fn emit(&self, push: &mut dyn FnMut(TransitionId, BigInt) -> bool) -> bool {
        match &self.kind {
            Kind::Steps(steps) => steps.iter().all(|&t| push(t, BigInt::from(1))),
            Kind::Concat(parts) => parts.iter().all(|p| p.emit(push)),
            Kind::Repeat(part, times) => {
                if let Some(t) = part.single_run() {
                    if *times == 0 {
                        return true;
                    }
                    return push(t, &part.summary.len * BigInt::from(*times));
                }
                (0..*times).all(|_| part.emit(push))
            }
        }
    }

    /// Explicit transition list, if at most `limit` steps long.
    pub fn to_vec(&self, limit: usize) -> Option<Vec<TransitionId>> {
        if self.summary.len > BigInt::from(limit) {
            return None;
        }
        let mut out = Vec::new();
        self.for_each_run(&mut |t, c| {
            let c: usize = c.try_into().expect("bounded by limit");
            out.extend(std::iter::repeat_n(t, c));
            true
        });
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;

    #[test]
    fn summaries_agree_with_expansion() {
        let v = models::running_example();
        let c1 = Seq::steps(&v, vec![5, 1, 1, 1, 1, 4, 0]);
        let r = Seq::repeat(&v, c1.clone(), 3);
        let both = Seq::concat(&v, vec![Seq::steps(&v, vec![8]), Seq::repeat(&v, Seq::steps(&v, vec![2]), 5), r]);
        let flat = both.to_vec(1000).unwrap();
        assert_eq!(BigInt::from(flat.len()), *both.len());
        assert_eq!(both.min_initial(), v.min_initial_valuation(&flat));
        let value: Vec<BigInt> = v.value_of(&flat).into_iter().map(BigInt::from).collect();
        assert_eq!(both.value(), value.as_slice());
        let counts: Vec<BigInt> = v.instances(&flat).into_iter().map(BigInt::from).collect();
        assert_eq!(both.instances(), counts.as_slice());
        assert!(both.is_path() == crate::Path::new(&v, flat).is_ok());
    }

    #[test]
    fn runs_are_merged() {
        let v = models::running_example();
        let s = Seq::concat(
            &v,
            vec![
                Seq::repeat(&v, Seq::steps(&v, vec![0]), 4),
                Seq::steps(&v, vec![0, 5]),
                Seq::repeat(&v, Seq::steps(&v, vec![1, 1]), 3),
            ],
        );
        let mut runs = Vec::new();
        s.for_each_run(&mut |t, c| {
            runs.push((t, c.clone()));
            true
        });
        assert_eq!(runs, vec![(0, 5.into()), (5, 1.into()), (1, 6.into())]);
    }

    #[test]
    fn adjacency_is_tracked() {
        let v = models::running_example();
        assert!(!Seq::steps(&v, vec![0, 1]).is_path());
        assert!(!Seq::repeat(&v, Seq::steps(&v, vec![5]), 2).is_path());
        assert!(Seq::repeat(&v, Seq::steps(&v, vec![5, 4]), 2).is_path());
        assert!(Seq::repeat(&v, Seq::steps(&v, vec![5]), 0).is_empty());
    }
}
