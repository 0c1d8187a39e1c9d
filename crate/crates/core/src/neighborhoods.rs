//! Bounded-neighborhood sets `N^{≥s}(X)`, `N^{<s}(X)` and the bounds on
//! `|N^{≥s}(X)|` for graphs without a `K_{s,t}` subgraph.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

fn count_into(g: &Graph, x: &[Vertex]) -> (Vec<bool>, Vec<usize>) {
    let mut inside = vec![false; g.n()];
    for &v in x {
        inside[v] = true;
    }
    let mut count = vec![0usize; g.n()];
    for &v in x {
        for &u in g.neighbors(v) {
            if !inside[u] {
                count[u] += 1;
            }
        }
    }
    (inside, count)
}

fn check_s(s: usize) -> Result<()> {
    if s == 0 {
        return Err(Error::Precondition("s must be at least 1".into()));
    }
    Ok(())
}

/// Vertices outside `x` with at least `s` neighbors in `x`, sorted.
pub fn n_geq_s(g: &Graph, x: &[Vertex], s: usize) -> Result<Vec<Vertex>> {
    check_s(s)?;
    let (inside, count) = count_into(g, x);
    Ok((0..g.n())
        .filter(|&v| !inside[v] && count[v] >= s)
        .collect())
}

/// Vertices outside `x` with between 1 and `s - 1` neighbors in `x`, sorted.
pub fn n_lt_s(g: &Graph, x: &[Vertex], s: usize) -> Result<Vec<Vertex>> {
    check_s(s)?;
    let (inside, count) = count_into(g, x);
    Ok((0..g.n())
        .filter(|&v| !inside[v] && count[v] >= 1 && count[v] < s)
        .collect())
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `x (x-1) ... (x-k+1) / k!` for rational `x`.
pub fn generalized_binomial(x: &BigRational, k: u64) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..k {
        acc *= x - BigRational::from_integer(BigInt::from(i));
        acc /= BigRational::from_integer(BigInt::from(i + 1));
    }
    acc
}

fn rat(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `f_{s,t}(x) = C(x, s)·(t − 1)`.
pub fn bound_f_st(s: u64, t: u64, x: u64) -> BigUint {
    binomial(x, s) * BigUint::from(t.saturating_sub(1))
}

/// `f_{s,t,w}(x) = (5w/2 + (t − 1)·C(5w, s − 1))·x`.
pub fn bound_f_stw(s: u64, t: u64, w: u64, x: u64) -> BigRational {
    let five_w = 5 * w;
    let c = BigRational::new(BigInt::from(five_w), BigInt::from(2))
        + BigRational::from_integer(BigInt::from(binomial(five_w, s.saturating_sub(1))))
            * rat(t.saturating_sub(1));
    c * rat(x)
}

/// `c·x` with `c = max{t − 1, ∇/2 + (t − 1)·C(∇, s − 1)}`.
pub fn bound_nabla(s: u64, t: u64, nabla: &BigRational, x: u64) -> BigRational {
    let tm1 = rat(t.saturating_sub(1));
    let dense = nabla / rat(2) + &tm1 * generalized_binomial(nabla, s.saturating_sub(1));
    let c = if dense > tm1 { dense } else { tm1 };
    c * rat(x)
}

/// Outcome of a budgeted `K_{s,t}` subgraph search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KstResult {
    /// `left` has `s` vertices, `right` has `t`, and every left–right pair
    /// is an edge.
    Found {
        left: Vec<Vertex>,
        right: Vec<Vertex>,
    },
    NotFound,
    Inconclusive {
        steps: u64,
    },
}

impl KstResult {
    pub fn found(&self) -> Option<bool> {
        match self {
            KstResult::Found { .. } => Some(true),
            KstResult::NotFound => Some(false),
            KstResult::Inconclusive { .. } => None,
        }
    }
}

pub const DEFAULT_KST_BUDGET: u64 = 10_000_000;

/// Searches for a (not necessarily induced) `K_{s,t}` subgraph with the
/// default budget.
pub fn has_kst_subgraph(g: &Graph, s: usize, t: usize) -> Result<KstResult> {
    has_kst_subgraph_with_budget(g, s, t, DEFAULT_KST_BUDGET)
}

/// Backtracking over `s`-sets in lexicographic order, pruned when the
/// common neighborhood drops below `t`.
pub fn has_kst_subgraph_with_budget(
    g: &Graph,
    s: usize,
    t: usize,
    budget: u64,
) -> Result<KstResult> {
    if s == 0 || t == 0 {
        return Err(Error::Precondition("K_{s,t} search needs s, t >= 1".into()));
    }
    let candidates: Vec<Vertex> = (0..g.n()).filter(|&v| g.degree(v) >= t).collect();
    let mut search = KstSearch {
        g,
        s,
        t,
        budget,
        steps: 0,
        chosen: Vec::with_capacity(s),
        candidates,
    };
    let all: Vec<Vertex> = (0..g.n()).collect();
    match search.extend(0, &all) {
        Step::Found(right) => Ok(KstResult::Found {
            left: search.chosen,
            right,
        }),
        Step::Exhausted => Ok(KstResult::NotFound),
        Step::OutOfBudget => Ok(KstResult::Inconclusive {
            steps: search.steps,
        }),
    }
}

enum Step {
    Found(Vec<Vertex>),
    Exhausted,
    OutOfBudget,
}

struct KstSearch<'a> {
    g: &'a Graph,
    s: usize,
    t: usize,
    budget: u64,
    steps: u64,
    chosen: Vec<Vertex>,
    candidates: Vec<Vertex>,
}

impl KstSearch<'_> {
    fn extend(&mut self, from: usize, common: &[Vertex]) -> Step {
        if self.chosen.len() == self.s {
            return Step::Found(common[..self.t].to_vec());
        }
        let need = self.s - self.chosen.len();
        for idx in from..self.candidates.len() {
            if self.candidates.len() - idx < need {
                break;
            }
            self.steps += 1;
            if self.steps > self.budget {
                return Step::OutOfBudget;
            }
            let v = self.candidates[idx];
            let next = intersect(common, self.g.neighbors(v));
            if next.len() < self.t {
                continue;
            }
            self.chosen.push(v);
            match self.extend(idx + 1, &next) {
                Step::Exhausted => {
                    self.chosen.pop();
                }
                other => return other,
            }
        }
        Step::Exhausted
    }
}

fn intersect(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}
