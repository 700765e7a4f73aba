//! Embeddings of positive definite integral lattices into `Z^M`.
//!
//! The search assigns an integer vector to each basis vector in order. Two
//! symmetries of `Z^M` are quotiented out as the search goes: permutations
//! of coordinates whose columns agree on every vector assigned so far, and
//! sign changes of coordinates that are still unused. Concretely, a new
//! vector must be non-increasing along each run of identical columns, and
//! nonnegative on unused coordinates. Any embedding can be moved into this
//! form one vector at a time by a symmetry fixing the earlier vectors, so
//! the search stays exhaustive.
//!
//! Candidates are additionally pruned with Cauchy-Schwarz: the inner product
//! still owed to an earlier vector must be reachable with the remaining norm.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use log::debug;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{join_row, IntMatrix};

/// Symmetric integer Gram matrix of a lattice basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GramLattice {
    gram: IntMatrix,
}

impl GramLattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        gram.ensure_square()?;
        if let Some((row, col)) = gram.asymmetry() {
            return Err(Error::NotSymmetric { row, col });
        }
        Ok(Self { gram })
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        Self::new(IntMatrix::parse_text(text)?)
    }

    pub fn to_text(&self) -> String {
        self.gram.to_text()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    /// First leading principal minor that is not positive, 1-based.
    pub fn first_nonpositive_minor(&self) -> Option<(usize, num_bigint::BigInt)> {
        self.gram
            .leading_minors()
            .expect("square")
            .into_iter()
            .enumerate()
            .find(|(_, d)| !d.is_positive())
            .map(|(i, d)| (i + 1, d))
    }

    pub fn is_positive_definite(&self) -> bool {
        self.first_nonpositive_minor().is_none()
    }

    fn ensure_positive_definite(&self) -> Result<()> {
        match self.first_nonpositive_minor() {
            None => Ok(()),
            Some((index, value)) => Err(Error::NotPositiveDefinite { index, value: value.to_string() }),
        }
    }
}

pub fn is_positive_definite(g: &GramLattice) -> bool {
    g.is_positive_definite()
}

/// Images of the basis vectors in `Z^M`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Embedding {
    pub vectors: Vec<Vec<i64>>,
    pub ambient_dim: usize,
}

impl Embedding {
    pub fn new(vectors: Vec<Vec<i64>>, ambient_dim: usize) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch(format!("vector of length {} in Z^{ambient_dim}", v.len())));
        }
        Ok(Self { vectors, ambient_dim })
    }

    /// `r` lines of `M` integers.
    pub fn to_text(&self) -> String {
        self.vectors.iter().map(|v| join_row(v) + "\n").collect()
    }

    /// Appends zero coordinates up to `dim`.
    pub fn pad_to(&self, dim: usize) -> Self {
        let vectors = self.vectors.iter().map(|v| {
            let mut v = v.clone();
            v.resize(dim.max(self.ambient_dim), 0);
            v
        });
        Self { vectors: vectors.collect(), ambient_dim: dim.max(self.ambient_dim) }
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn verify_embedding(g: &GramLattice, e: &Embedding) -> Result<bool> {
    if e.vectors.len() != g.rank() {
        return Err(Error::DimensionMismatch(format!("{} vectors for a rank {} lattice", e.vectors.len(), g.rank())));
    }
    if e.vectors.iter().any(|v| v.len() != e.ambient_dim) {
        return Err(Error::DimensionMismatch("vector length differs from ambient dimension".into()));
    }
    let r = g.rank();
    Ok((0..r).all(|i| (i..r).all(|j| dot(&e.vectors[i], &e.vectors[j]) == g.gram()[(i, j)])))
}

/// Resource limits for a search. The default is unlimited.
#[derive(Debug, Clone, Copy, Default)]
pub struct SearchLimits {
    pub time: Option<Duration>,
    pub max_nodes: Option<u64>,
}

/// Result of a possibly budget-limited search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbeddingOutcome {
    Found(Embedding),
    Absent,
    /// The budget ran out before the search space was exhausted.
    Inconclusive,
}

/// Exhaustive search for an embedding into `Z^ambient_dim`.
pub fn find_embedding(g: &GramLattice, ambient_dim: usize) -> Result<Option<Embedding>> {
    match find_embedding_with(g, ambient_dim, &SearchLimits::default())? {
        EmbeddingOutcome::Found(e) => Ok(Some(e)),
        EmbeddingOutcome::Absent => Ok(None),
        EmbeddingOutcome::Inconclusive => unreachable!("unlimited search"),
    }
}

pub fn find_embedding_with(g: &GramLattice, ambient_dim: usize, limits: &SearchLimits) -> Result<EmbeddingOutcome> {
    g.ensure_positive_definite()?;
    if ambient_dim == 0 {
        return Err(Error::ZeroDimension);
    }
    if ambient_dim < g.rank() {
        return Ok(EmbeddingOutcome::Absent);
    }
    let budget = Budget::new(limits);
    let search = Search { gram: g.gram(), dim: ambient_dim, budget: &budget };
    let out = search.run();
    debug!(
        "embedding search rank={} dim={} nodes={} -> {:?}",
        g.rank(),
        ambient_dim,
        budget.nodes.load(Ordering::Relaxed),
        out.is_found()
    );
    Ok(out)
}

impl EmbeddingOutcome {
    fn is_found(&self) -> bool {
        matches!(self, Self::Found(_))
    }
}

/// Result of a minimal-dimension search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinDimOutcome {
    Found(usize, Embedding),
    /// No embedding in any dimension up to the cap.
    NoneUpTo(usize),
    /// Dimension at which the budget ran out; all smaller ones were ruled out.
    Inconclusive(usize),
}

pub fn min_embedding_dim(g: &GramLattice, cap: usize) -> Result<Option<usize>> {
    Ok(match min_embedding_dim_with(g, cap, &SearchLimits::default())? {
        MinDimOutcome::Found(d, _) => Some(d),
        MinDimOutcome::NoneUpTo(_) => None,
        MinDimOutcome::Inconclusive(_) => unreachable!("unlimited search"),
    })
}

/// Tries `M = rank, rank+1, ..., cap` in turn. The limits apply to each
/// dimension separately.
pub fn min_embedding_dim_with(g: &GramLattice, cap: usize, limits: &SearchLimits) -> Result<MinDimOutcome> {
    g.ensure_positive_definite()?;
    if cap == 0 {
        return Err(Error::ZeroDimension);
    }
    for dim in g.rank().max(1)..=cap {
        match find_embedding_with(g, dim, limits)? {
            EmbeddingOutcome::Found(e) => return Ok(MinDimOutcome::Found(dim, e)),
            EmbeddingOutcome::Absent => {}
            EmbeddingOutcome::Inconclusive => return Ok(MinDimOutcome::Inconclusive(dim)),
        }
    }
    Ok(MinDimOutcome::NoneUpTo(cap))
}

struct Budget {
    deadline: Option<Instant>,
    max_nodes: Option<u64>,
    nodes: AtomicU64,
    exhausted: AtomicBool,
}

impl Budget {
    fn new(limits: &SearchLimits) -> Self {
        Self {
            deadline: limits.time.map(|t| Instant::now() + t),
            max_nodes: limits.max_nodes,
            nodes: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
        }
    }

    /// Counts a node; false once the budget is gone.
    fn tick(&self) -> bool {
        if self.exhausted.load(Ordering::Relaxed) {
            return false;
        }
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over_nodes = self.max_nodes.is_some_and(|max| n > max);
        let over_time = n.is_multiple_of(1024) && self.deadline.is_some_and(|d| Instant::now() >= d);
        if over_nodes || over_time {
            self.exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }
}

/// Partial assignment: the first `vectors.len()` basis vectors are placed.
#[derive(Clone)]
struct State {
    vectors: Vec<Vec<i64>>,
    /// `class_start[j]`: column `j` differs from column `j-1`.
    class_start: Vec<bool>,
    /// Columns `used..` are identically zero.
    used: usize,
}

impl State {
    fn root(dim: usize) -> Self {
        let mut class_start = vec![false; dim];
        class_start[0] = true;
        Self { vectors: Vec::new(), class_start, used: 0 }
    }

    fn push(&self, v: Vec<i64>) -> Self {
        let dim = v.len();
        let mut class_start = self.class_start.clone();
        for j in 1..dim {
            if v[j] != v[j - 1] {
                class_start[j] = true;
            }
        }
        let used = (self.used..dim).take_while(|&j| v[j] != 0).last().map_or(self.used, |j| j + 1);
        let mut vectors = self.vectors.clone();
        vectors.push(v);
        Self { vectors, class_start, used }
    }
}

struct Search<'a> {
    gram: &'a IntMatrix,
    dim: usize,
    budget: &'a Budget,
}

enum Step {
    Found(Vec<Vec<i64>>),
    Absent,
    OutOfBudget,
}

impl Search<'_> {
    fn rank(&self) -> usize {
        self.gram.rows()
    }

    fn run(&self) -> EmbeddingOutcome {
        // Expand breadth-first until there is enough work to share out.
        let target = 16 * rayon::current_num_threads().max(1);
        let mut frontier = vec![State::root(self.dim)];
        while frontier.len() < target && frontier.first().is_some_and(|s| s.vectors.len() < self.rank()) {
            let mut next = Vec::new();
            for s in &frontier {
                if !self.budget.tick() {
                    return EmbeddingOutcome::Inconclusive;
                }
                next.extend(self.candidates(s).into_iter().map(|v| s.push(v)));
            }
            frontier = next;
        }
        if frontier.is_empty() {
            return EmbeddingOutcome::Absent;
        }
        let out_of_budget = AtomicBool::new(false);
        let found = frontier.par_iter().find_map_first(|s| match self.dfs(s.clone()) {
            Step::Found(vs) => Some(vs),
            Step::Absent => None,
            Step::OutOfBudget => {
                out_of_budget.store(true, Ordering::Relaxed);
                None
            }
        });
        match found {
            Some(vectors) => EmbeddingOutcome::Found(Embedding { vectors, ambient_dim: self.dim }),
            None if out_of_budget.load(Ordering::Relaxed) => EmbeddingOutcome::Inconclusive,
            None => EmbeddingOutcome::Absent,
        }
    }

    fn dfs(&self, state: State) -> Step {
        if state.vectors.len() == self.rank() {
            return Step::Found(state.vectors);
        }
        if !self.budget.tick() {
            return Step::OutOfBudget;
        }
        for v in self.candidates(&state) {
            match self.dfs(state.push(v)) {
                Step::Absent => {}
                other => return other,
            }
        }
        Step::Absent
    }

    /// Canonical candidates for the next basis vector, in a fixed order.
    fn candidates(&self, state: &State) -> Vec<Vec<i64>> {
        let i = state.vectors.len();
        let targets: Vec<i64> = (0..i).map(|k| self.gram[(i, k)]).collect();
        // tail_sq[k][j] = sum of squares of vectors[k][j..]
        let tail_sq: Vec<Vec<i64>> = state
            .vectors
            .iter()
            .map(|v| {
                let mut t = vec![0; self.dim + 1];
                for j in (0..self.dim).rev() {
                    t[j] = t[j + 1] + v[j] * v[j];
                }
                t
            })
            .collect();
        let mut gen =
            CandidateGen { state, targets, tail_sq, partial: vec![0; i], cur: vec![0; self.dim], out: Vec::new() };
        gen.fill(0, self.gram[(i, i)]);
        gen.out
    }
}

struct CandidateGen<'a> {
    state: &'a State,
    targets: Vec<i64>,
    tail_sq: Vec<Vec<i64>>,
    partial: Vec<i64>,
    cur: Vec<i64>,
    out: Vec<Vec<i64>>,
}

impl CandidateGen<'_> {
    fn feasible(&self, j: usize, rem: i64) -> bool {
        self.targets.iter().zip(&self.partial).zip(&self.tail_sq).all(|((&t, &p), tail)| {
            let owed = t - p;
            owed * owed <= rem * tail[j]
        })
    }

    fn fill(&mut self, j: usize, rem: i64) {
        if !self.feasible(j, rem) {
            return;
        }
        if j >= self.state.used {
            // Earlier vectors vanish from here on, so every target is met.
            self.fill_fresh(j, rem, i64::MAX);
            return;
        }
        let cap = if self.state.class_start[j] { i64::MAX } else { self.cur[j - 1] };
        let root = isqrt(rem);
        // 0 first, then 1, -1, 2, -2, ...
        let mut values = vec![0];
        for a in 1..=root {
            values.extend([a, -a]);
        }
        for x in values {
            if x > cap {
                continue;
            }
            self.cur[j] = x;
            for (k, v) in self.state.vectors.iter().enumerate() {
                self.partial[k] += x * v[j];
            }
            self.fill(j + 1, rem - x * x);
            for (k, v) in self.state.vectors.iter().enumerate() {
                self.partial[k] -= x * v[j];
            }
        }
        self.cur[j] = 0;
    }

    /// Unused coordinates: a non-increasing run of positive entries.
    fn fill_fresh(&mut self, j: usize, rem: i64, cap: i64) {
        if rem == 0 {
            self.out.push(self.cur.clone());
            return;
        }
        if j >= self.cur.len() {
            return;
        }
        let top = isqrt(rem).min(cap);
        for x in (1..=top).rev() {
            self.cur[j] = x;
            self.fill_fresh(j + 1, rem - x * x, x);
        }
        self.cur[j] = 0;
    }
}

fn isqrt(n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}
