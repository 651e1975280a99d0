//! Exact rational linear constraint solving.
//!
//! Feasibility is decided by a phase-one primal simplex over `BigRational`
//! with Bland's rule. Strict inequalities are normalized to "slack >= 1",
//! which is sound for problems whose solution set is a cone.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpVar {
    pub name: String,
    pub nonneg: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpRow {
    pub coeffs: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

impl LpRow {
    pub fn ge(coeffs: Vec<BigRational>, rhs: BigRational) -> Self {
        LpRow {
            coeffs,
            relation: Relation::Ge,
            rhs,
        }
    }

    pub fn eq(coeffs: Vec<BigRational>, rhs: BigRational) -> Self {
        LpRow {
            coeffs,
            relation: Relation::Eq,
            rhs,
        }
    }

    /// Homogeneous row from integer coefficients.
    pub fn from_ints(coeffs: &[i64], relation: Relation) -> Self {
        LpRow {
            coeffs: coeffs.iter().map(|&c| rat(c)).collect(),
            relation,
            rhs: BigRational::zero(),
        }
    }

    /// `coeffs . x - rhs`.
    pub fn slack(&self, x: &[BigRational]) -> BigRational {
        let mut s = -self.rhs.clone();
        for (c, v) in self.coeffs.iter().zip(x) {
            if !c.is_zero() && !v.is_zero() {
                s += c * v;
            }
        }
        s
    }

    pub fn satisfied_by(&self, x: &[BigRational]) -> bool {
        let s = self.slack(x);
        match self.relation {
            Relation::Ge => !s.is_negative(),
            Relation::Eq => s.is_zero(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("row {row} has {found} coefficients, expected {expected}")]
    Arity {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("strict candidate {0} is not a `>=` row")]
    BadCandidate(usize),
    #[error("solution set is not closed under addition: summed solution violates row {0}")]
    NotClosed(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpProblem {
    pub vars: Vec<LpVar>,
    pub rows: Vec<LpRow>,
    pub strict_candidates: BTreeSet<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub assignment: Vec<BigRational>,
    pub strict_set: BTreeSet<usize>,
}

pub(crate) fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl LpProblem {
    pub fn new(vars: Vec<LpVar>, rows: Vec<LpRow>, strict_candidates: BTreeSet<usize>) -> Result<Self, LpError> {
        for (row, r) in rows.iter().enumerate() {
            if r.coeffs.len() != vars.len() {
                return Err(LpError::Arity {
                    row,
                    expected: vars.len(),
                    found: r.coeffs.len(),
                });
            }
        }
        for &c in &strict_candidates {
            if rows.get(c).map(|r| r.relation) != Some(Relation::Ge) {
                return Err(LpError::BadCandidate(c));
            }
        }
        Ok(LpProblem {
            vars,
            rows,
            strict_candidates,
        })
    }

    pub fn is_homogeneous(&self) -> bool {
        self.rows.iter().all(|r| r.rhs.is_zero())
    }

    /// Copy of the problem with row `i` requiring slack at least one.
    pub fn tightened(&self, i: usize) -> LpProblem {
        let mut p = self.clone();
        p.rows[i].rhs += BigRational::one();
        p
    }

    /// Every row holds and every variable marked non-negative is.
    pub fn satisfied_by(&self, x: &[BigRational]) -> bool {
        x.len() == self.vars.len()
            && self.vars.iter().zip(x).all(|(v, val)| !v.nonneg || !val.is_negative())
            && self.rows.iter().all(|r| r.satisfied_by(x))
    }

    /// Candidate rows with slack at least one under `x`.
    pub fn strict_rows(&self, x: &[BigRational]) -> BTreeSet<usize> {
        let one = BigRational::one();
        self.strict_candidates
            .iter()
            .copied()
            .filter(|&i| self.rows[i].slack(x) >= one)
            .collect()
    }
}

impl fmt::Display for LpProblem {
    /// Plain-text dump for bug reports.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vars:")?;
        for v in &self.vars {
            write!(f, " {}{}", v.name, if v.nonneg { ">=0" } else { "" })?;
        }
        writeln!(f)?;
        writeln!(f, "rows:")?;
        for (i, r) in self.rows.iter().enumerate() {
            let mark = if self.strict_candidates.contains(&i) { "*" } else { " " };
            write!(f, "{mark}{i}:")?;
            for c in &r.coeffs {
                write!(f, " {c}")?;
            }
            let rel = match r.relation {
                Relation::Ge => ">=",
                Relation::Eq => "=",
            };
            writeln!(f, " {rel} {}", r.rhs)?;
        }
        Ok(())
    }
}

/// Dense simplex tableau for `A x = b, x >= 0, b >= 0` with one artificial
/// column per row.
struct Tableau {
    a: Vec<Vec<BigRational>>,
    b: Vec<BigRational>,
    basis: Vec<usize>,
    /// columns `>= first_artificial` are artificial
    first_artificial: usize,
}

impl Tableau {
    fn cols(&self) -> usize {
        self.first_artificial + self.a.len()
    }

    /// Reduced cost of column `j` for the phase-one objective.
    fn reduced_costs(&self) -> Vec<BigRational> {
        let mut z = vec![BigRational::zero(); self.cols()];
        for zj in &mut z[self.first_artificial..] {
            *zj = BigRational::one();
        }
        for (i, row) in self.a.iter().enumerate() {
            if self.basis[i] >= self.first_artificial {
                for (zj, aij) in z.iter_mut().zip(row) {
                    if !aij.is_zero() {
                        *zj -= aij;
                    }
                }
            }
        }
        z
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.a[r][c].clone();
        if !p.is_one() {
            for v in self.a[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &p;
                }
            }
            self.b[r] /= &p;
        }
        let prow = self.a[r].clone();
        let pb = self.b[r].clone();
        for i in 0..self.a.len() {
            if i == r || self.a[i][c].is_zero() {
                continue;
            }
            let factor = self.a[i][c].clone();
            for (v, pv) in self.a[i].iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
            self.b[i] -= &factor * &pb;
        }
        self.basis[r] = c;
    }

    /// Runs phase one to optimality; true iff the artificial sum reaches 0.
    fn solve(&mut self) -> bool {
        // The reduced-cost row is kept incrementally.
        let mut z = self.reduced_costs();
        let mut obj: BigRational = self
            .basis
            .iter()
            .zip(&self.b)
            .filter(|(&j, _)| j >= self.first_artificial)
            .map(|(_, b)| b.clone())
            .sum();
        loop {
            if obj.is_zero() {
                return true;
            }
            let Some(c) = z.iter().position(|v| v.is_negative()) else {
                return false;
            };
            let mut best: Option<(usize, BigRational)> = None;
            for i in 0..self.a.len() {
                if !self.a[i][c].is_positive() {
                    continue;
                }
                let ratio = &self.b[i] / &self.a[i][c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            // Phase one is bounded below by zero, so a ratio always exists.
            let (r, _) = best.expect("phase one objective is bounded");
            let zc = z[c].clone();
            self.pivot(r, c);
            for (zj, aj) in z.iter_mut().zip(&self.a[r]) {
                if !aj.is_zero() {
                    *zj -= &zc * aj;
                }
            }
            obj += &zc * &self.b[r];
        }
    }
}

/// Column layout of the standard-form encoding.
enum Col {
    Pos(usize),
    Neg(usize),
    Slack,
}

/// Decides feasibility exactly. The returned solution has an empty strict
/// set.
pub fn lp_feasible(p: &LpProblem) -> Option<LpSolution> {
    let mut layout = Vec::new();
    for (j, v) in p.vars.iter().enumerate() {
        layout.push(Col::Pos(j));
        if !v.nonneg {
            layout.push(Col::Neg(j));
        }
    }
    // Rows `x_j >= 0` on a non-negative variable are implied by the sign
    // constraint.
    let rows: Vec<&LpRow> = p
        .rows
        .iter()
        .filter(|r| {
            let redundant = r.relation == Relation::Ge
                && !r.rhs.is_positive()
                && r.coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .all(|(j, c)| c.is_positive() && p.vars[j].nonneg);
            !redundant
        })
        .collect();
    let slack_cols: Vec<Option<usize>> = rows
        .iter()
        .map(|r| {
            (r.relation == Relation::Ge).then(|| {
                layout.push(Col::Slack);
                layout.len() - 1
            })
        })
        .collect();
    let first_artificial = layout.len();
    let m = rows.len();
    let mut a = Vec::with_capacity(m);
    let mut b = Vec::with_capacity(m);
    for (i, r) in rows.iter().enumerate() {
        let mut row = vec![BigRational::zero(); first_artificial + m];
        for (k, col) in layout.iter().enumerate() {
            match col {
                Col::Pos(j) => row[k] = r.coeffs[*j].clone(),
                Col::Neg(j) => row[k] = -r.coeffs[*j].clone(),
                Col::Slack => {}
            }
        }
        if let Some(s) = slack_cols[i] {
            row[s] = -BigRational::one();
        }
        let mut rhs = r.rhs.clone();
        if rhs.is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
            rhs = -rhs;
        }
        row[first_artificial + i] = BigRational::one();
        a.push(row);
        b.push(rhs);
    }
    let mut t = Tableau {
        a,
        b,
        basis: (first_artificial..first_artificial + m).collect(),
        first_artificial,
    };
    if !t.solve() {
        return None;
    }
    let mut x = vec![BigRational::zero(); p.vars.len()];
    for (i, &j) in t.basis.iter().enumerate() {
        match layout.get(j) {
            Some(Col::Pos(v)) => x[*v] += &t.b[i],
            Some(Col::Neg(v)) => x[*v] -= &t.b[i],
            _ => {}
        }
    }
    debug_assert!(p.satisfied_by(&x));
    Some(LpSolution {
        assignment: x,
        strict_set: BTreeSet::new(),
    })
}

/// Solution whose set of candidate rows with slack >= 1 is maximal.
///
/// Each candidate is tightened in turn and the feasible solutions are
/// summed; candidates already strict in the running sum are not re-solved.
pub fn max_strict_set(p: &LpProblem) -> Result<LpSolution, LpError> {
    let mut sum = vec![BigRational::zero(); p.vars.len()];
    let one = BigRational::one();
    for &i in &p.strict_candidates {
        if p.rows[i].slack(&sum) >= one {
            continue;
        }
        if let Some(s) = lp_feasible(&p.tightened(i)) {
            for (acc, v) in sum.iter_mut().zip(s.assignment) {
                *acc += v;
            }
        }
    }
    if let Some(row) = p.rows.iter().position(|r| !r.satisfied_by(&sum)) {
        return Err(LpError::NotClosed(row));
    }
    if p.vars.iter().zip(&sum).any(|(v, x)| v.nonneg && x.is_negative()) {
        return Err(LpError::NotClosed(usize::MAX));
    }
    let strict_set = p.strict_rows(&sum);
    Ok(LpSolution {
        assignment: sum,
        strict_set,
    })
}

/// Multiplies by the least common multiple of the denominators.
pub fn scale_to_integer(sol: &LpSolution) -> LpSolution {
    let lcm = sol
        .assignment
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let factor = BigRational::from_integer(lcm);
    LpSolution {
        assignment: sol.assignment.iter().map(|v| v * &factor).collect(),
        strict_set: sol.strict_set.clone(),
    }
}

/// Integer entries of an integral solution.
pub fn integer_entries(sol: &LpSolution) -> Vec<BigInt> {
    sol.assignment
        .iter()
        .map(|v| {
            assert!(v.is_integer(), "solution entry {v} is not integral");
            v.to_integer()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(name: &str, nonneg: bool) -> LpVar {
        LpVar {
            name: name.into(),
            nonneg,
        }
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn homogeneous_trivial() {
        let p = LpProblem::new(
            vec![var("x", false)],
            vec![LpRow::from_ints(&[1], Relation::Ge)],
            BTreeSet::new(),
        )
        .unwrap();
        let s = lp_feasible(&p).unwrap();
        assert_eq!(s.assignment, vec![rat(0)]);
    }

    #[test]
    fn infeasible() {
        let p = LpProblem::new(
            vec![var("x", false)],
            vec![LpRow::ge(vec![rat(1)], rat(1)), LpRow::ge(vec![rat(-1)], rat(0))],
            BTreeSet::new(),
        )
        .unwrap();
        assert!(lp_feasible(&p).is_none());
    }

    #[test]
    fn equality_with_bounds() {
        let p = LpProblem::new(
            vec![var("x", false), var("y", false)],
            vec![
                LpRow::eq(vec![rat(2), rat(3)], rat(5)),
                LpRow::ge(vec![rat(1), rat(0)], rat(0)),
                LpRow::ge(vec![rat(0), rat(1)], rat(0)),
            ],
            BTreeSet::new(),
        )
        .unwrap();
        let s = lp_feasible(&p).unwrap();
        assert!(p.satisfied_by(&s.assignment));
        assert!(s.strict_set.is_empty());
    }

    #[test]
    fn negative_rhs_and_free_variables() {
        // x - y = -3, x free, y >= 0, x >= -10
        let p = LpProblem::new(
            vec![var("x", false), var("y", true)],
            vec![
                LpRow::eq(vec![rat(1), rat(-1)], rat(-3)),
                LpRow::ge(vec![rat(1), rat(0)], rat(-10)),
            ],
            BTreeSet::new(),
        )
        .unwrap();
        let s = lp_feasible(&p).unwrap();
        assert!(p.satisfied_by(&s.assignment));
    }

    #[test]
    fn max_strict_without_candidates() {
        let p = LpProblem::new(
            vec![var("x", true), var("y", true)],
            vec![LpRow::from_ints(&[1, -1], Relation::Ge)],
            BTreeSet::new(),
        )
        .unwrap();
        let s = max_strict_set(&p).unwrap();
        assert_eq!(s.assignment, vec![rat(0), rat(0)]);
        assert!(s.strict_set.is_empty());
    }

    #[test]
    fn max_strict_single_variable() {
        let p = LpProblem::new(
            vec![var("x", false)],
            vec![LpRow::from_ints(&[1], Relation::Ge)],
            BTreeSet::from([0]),
        )
        .unwrap();
        let s = max_strict_set(&p).unwrap();
        assert_eq!(s.assignment, vec![rat(1)]);
        assert_eq!(s.strict_set, BTreeSet::from([0]));
    }

    #[test]
    fn max_strict_excludes_forced_equalities() {
        // x - y >= 0, y - x >= 0, x >= 0, z >= 0 : only z can be strict
        let p = LpProblem::new(
            vec![var("x", false), var("y", false), var("z", false)],
            vec![
                LpRow::from_ints(&[1, -1, 0], Relation::Ge),
                LpRow::from_ints(&[-1, 1, 0], Relation::Ge),
                LpRow::from_ints(&[0, 0, 1], Relation::Ge),
            ],
            BTreeSet::from([0, 1, 2]),
        )
        .unwrap();
        let s = max_strict_set(&p).unwrap();
        assert_eq!(s.strict_set, BTreeSet::from([2]));
        for i in [0, 1] {
            assert!(lp_feasible(&p.tightened(i)).is_none());
        }
    }

    #[test]
    fn non_closed_problem_is_reported() {
        // x >= 0 strict candidate, x <= 1 (not a cone)
        let p = LpProblem::new(
            vec![var("x", false), var("y", false)],
            vec![
                LpRow::ge(vec![rat(1), rat(0)], rat(0)),
                LpRow::ge(vec![rat(0), rat(1)], rat(0)),
                LpRow::ge(vec![rat(-1), rat(-1)], rat(-1)),
            ],
            BTreeSet::from([0, 1]),
        )
        .unwrap();
        assert!(matches!(max_strict_set(&p), Err(LpError::NotClosed(2))));
    }

    #[test]
    fn scaling() {
        let s = LpSolution {
            assignment: vec![q(1, 2), q(1, 3)],
            strict_set: BTreeSet::new(),
        };
        assert_eq!(scale_to_integer(&s).assignment, vec![rat(3), rat(2)]);
        let s = LpSolution {
            assignment: vec![q(5, 6), rat(0), q(7, 4)],
            strict_set: BTreeSet::from([1]),
        };
        let scaled = scale_to_integer(&s);
        assert_eq!(scaled.assignment, vec![rat(10), rat(0), rat(21)]);
        assert_eq!(scaled.strict_set, BTreeSet::from([1]));
        let s = LpSolution {
            assignment: vec![rat(4), rat(-2)],
            strict_set: BTreeSet::new(),
        };
        assert_eq!(scale_to_integer(&s), s);
    }

    #[test]
    fn bad_problems_are_rejected() {
        assert!(matches!(
            LpProblem::new(vec![var("x", true)], vec![LpRow::from_ints(&[1, 2], Relation::Ge)], BTreeSet::new()),
            Err(LpError::Arity { .. })
        ));
        assert!(matches!(
            LpProblem::new(vec![var("x", true)], vec![LpRow::from_ints(&[1], Relation::Eq)], BTreeSet::from([0])),
            Err(LpError::BadCandidate(0))
        ));
    }

    #[test]
    fn dump_format() {
        let p = LpProblem::new(
            vec![var("x", true)],
            vec![LpRow::from_ints(&[2], Relation::Ge)],
            BTreeSet::from([0]),
        )
        .unwrap();
        assert_eq!(p.to_string(), "vars: x>=0\nrows:\n*0: 2 >= 0\n");
    }
}
