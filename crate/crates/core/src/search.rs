//! Maximum coclique (independent set) search.
//!
//! The exact solver is a bitset branch and bound for maximum clique run on
//! the complement, bounded by greedy sequential coloring. The heuristic is
//! a min-degree greedy followed by iterated local search with (1,2)-swaps.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bitset::{BitMatrix, BitSet};
use crate::error::{Error, Result};
use crate::graph::Adjacency;

pub const MAX_EXACT_VERTICES: usize = 5000;
const PROGRESS_EVERY: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Optimal,
    LowerBound,
    TimedOut,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    /// Vertex ids of the graph searched, ascending.
    pub set: Vec<usize>,
    pub size: usize,
    pub status: Status,
    pub nodes_explored: u64,
    pub seed: Option<u64>,
    pub budget: u64,
    pub consumed: u64,
}

/// Index of the first adjacent pair in `set`, if any.
pub fn find_conflict<G: Adjacency + ?Sized>(g: &G, set: &[usize]) -> Option<(usize, usize)> {
    for (i, &v) in set.iter().enumerate() {
        for &w in &set[i + 1..] {
            if g.is_adjacent(v, w) {
                return Some((v, w));
            }
        }
    }
    None
}

fn check_independent<G: Adjacency + ?Sized>(g: &G, set: &[usize]) -> Result<()> {
    for &v in set {
        if v >= g.order() {
            return Err(Error::IndexOutOfRange(v));
        }
    }
    match find_conflict(g, set) {
        Some((v, w)) => Err(Error::NotACoclique(v, w)),
        None => Ok(()),
    }
}

#[derive(Clone, Debug)]
pub struct ExactOptions {
    /// Node limit; the search reports `TimedOut` when it is hit.
    pub budget: u64,
    /// Stop as soon as a set of this size is known.
    pub target: Option<usize>,
    /// Print `nodes=<N> best=<k>` to stderr every million nodes.
    pub progress: bool,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions { budget: u64::MAX, target: None, progress: false }
    }
}

struct Bb<'a> {
    comp: &'a BitMatrix,
    nodes: u64,
    budget: u64,
    target: usize,
    progress: bool,
    best: Vec<usize>,
    current: Vec<usize>,
    stopped: bool,
}

impl Bb<'_> {
    /// Greedy coloring of `p` in the complement; returns vertices in color
    /// order with their color numbers.
    fn color_sort(&self, p: &BitSet) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(p.count());
        let mut colors = Vec::with_capacity(order.capacity());
        let mut uncolored = p.clone();
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut avail = uncolored.clone();
            while let Some(v) = avail.first() {
                avail.remove(v);
                uncolored.remove(v);
                avail.difference_words(self.comp.row_words(v));
                order.push(v);
                colors.push(color);
            }
        }
        (order, colors)
    }

    fn expand(&mut self, mut p: BitSet) {
        self.nodes += 1;
        if self.progress && self.nodes % PROGRESS_EVERY == 0 {
            eprintln!("nodes={} best={}", self.nodes, self.best.len());
        }
        if self.nodes >= self.budget {
            self.stopped = true;
            return;
        }
        let (order, colors) = self.color_sort(&p);
        for i in (0..order.len()).rev() {
            if self.stopped || self.current.len() + colors[i] <= self.best.len() {
                return;
            }
            let v = order[i];
            self.current.push(v);
            let mut np = p.clone();
            np.intersect_words(self.comp.row_words(v));
            if np.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                    if self.best.len() >= self.target {
                        self.stopped = true;
                    }
                }
            } else {
                self.expand(np);
            }
            self.current.pop();
            p.remove(v);
        }
    }
}

/// Exact maximum independent set of `g` (at most [`MAX_EXACT_VERTICES`]
/// vertices). `incumbent`, if given, must be independent and seeds the lower
/// bound. `Optimal` is reported only when the tree is exhausted.
pub fn max_coclique_exact<G: Adjacency + ?Sized>(
    g: &G,
    opts: &ExactOptions,
    incumbent: Option<&[usize]>,
) -> Result<SearchResult> {
    let m = g.order();
    if m > MAX_EXACT_VERTICES {
        return Err(Error::ViewTooLarge(m, MAX_EXACT_VERTICES));
    }
    let mut best: Vec<usize> = incumbent.map(<[usize]>::to_vec).unwrap_or_default();
    best.sort_unstable();
    best.dedup();
    check_independent(g, &best)?;

    let mut comp = BitMatrix::new(m, m);
    for v in 0..m {
        for w in 0..m {
            if v != w && !g.is_adjacent(v, w) {
                comp.set(v, w);
            }
        }
    }
    let target = opts.target.unwrap_or(usize::MAX);
    let mut bb = Bb {
        comp: &comp,
        nodes: 0,
        budget: opts.budget,
        target,
        progress: opts.progress,
        stopped: best.len() >= target,
        best,
        current: Vec::new(),
    };
    if !bb.stopped && m > 0 {
        bb.expand(BitSet::full(m));
    }
    let hit_budget = bb.nodes >= opts.budget;
    let status = if !bb.stopped {
        Status::Optimal
    } else if hit_budget {
        Status::TimedOut
    } else {
        Status::LowerBound
    };
    let mut set = bb.best;
    set.sort_unstable();
    check_independent(g, &set)?;
    Ok(SearchResult {
        size: set.len(),
        set,
        status,
        nodes_explored: bb.nodes,
        seed: None,
        budget: opts.budget,
        consumed: bb.nodes,
    })
}

/// Local-search state: `tight[v]` = number of solution neighbors of `v`.
struct Ils<'a, G: Adjacency + ?Sized> {
    g: &'a G,
    in_sol: Vec<bool>,
    tight: Vec<u32>,
    size: usize,
}

impl<'a, G: Adjacency + ?Sized> Ils<'a, G> {
    fn new(g: &'a G) -> Self {
        let m = g.order();
        Ils { g, in_sol: vec![false; m], tight: vec![0; m], size: 0 }
    }

    fn add(&mut self, v: usize) {
        debug_assert!(!self.in_sol[v] && self.tight[v] == 0);
        self.in_sol[v] = true;
        self.size += 1;
        let tight = &mut self.tight;
        self.g.for_each_neighbor(v, &mut |w| tight[w] += 1);
    }

    fn remove(&mut self, v: usize) {
        self.in_sol[v] = false;
        self.size -= 1;
        let tight = &mut self.tight;
        self.g.for_each_neighbor(v, &mut |w| tight[w] -= 1);
    }

    fn is_free(&self, v: usize) -> bool {
        !self.in_sol[v] && self.tight[v] == 0
    }

    fn solution(&self) -> Vec<usize> {
        (0..self.in_sol.len()).filter(|&v| self.in_sol[v]).collect()
    }

    /// Min-degree greedy over the free vertices: repeatedly take the free
    /// vertex with the fewest free neighbors (lowest index on ties).
    fn greedy_fill(&mut self) {
        let m = self.in_sol.len();
        let mut alive: Vec<bool> = (0..m).map(|v| self.is_free(v)).collect();
        let mut deg = vec![0usize; m];
        for v in 0..m {
            if alive[v] {
                let mut d = 0;
                self.g.for_each_neighbor(v, &mut |w| d += alive[w] as usize);
                deg[v] = d;
            }
        }
        while let Some(v) = (0..m).filter(|&v| alive[v]).min_by_key(|&v| deg[v]) {
            self.add(v);
            alive[v] = false;
            let mut dropped = Vec::new();
            self.g.for_each_neighbor(v, &mut |w| {
                if alive[w] {
                    alive[w] = false;
                    dropped.push(w);
                }
            });
            for u in dropped {
                self.g.for_each_neighbor(u, &mut |x| {
                    if alive[x] {
                        deg[x] -= 1;
                    }
                });
            }
        }
    }

    /// Adds free vertices from `cands` in random order.
    fn fill_from(&mut self, mut cands: Vec<usize>, rng: &mut ChaCha8Rng) {
        cands.shuffle(rng);
        for v in cands {
            if self.is_free(v) {
                self.add(v);
            }
        }
    }

    /// Applies (1,2)-swaps until none exists: drop a solution vertex `x` and
    /// insert two non-adjacent vertices whose only solution neighbor is `x`.
    fn two_improve(&mut self, rng: &mut ChaCha8Rng) {
        loop {
            let mut sol = self.solution();
            sol.shuffle(rng);
            let mut improved = false;
            for x in sol {
                if !self.in_sol[x] {
                    continue;
                }
                let mut one_tight = Vec::new();
                let tight = &self.tight;
                self.g.for_each_neighbor(x, &mut |w| {
                    if tight[w] == 1 {
                        one_tight.push(w);
                    }
                });
                if one_tight.len() < 2 {
                    continue;
                }
                let pair = one_tight.iter().enumerate().find_map(|(i, &u)| {
                    one_tight[i + 1..].iter().find(|&&w| !self.g.is_adjacent(u, w)).map(|&w| (u, w))
                });
                if let Some((u, w)) = pair {
                    self.remove(x);
                    self.add(u);
                    self.add(w);
                    one_tight.push(x);
                    self.fill_from(one_tight, rng);
                    improved = true;
                }
            }
            if !improved {
                return;
            }
        }
    }

    /// Forces a random non-solution vertex in, evicting its solution
    /// neighbors, then refills around them.
    fn perturb(&mut self, rng: &mut ChaCha8Rng) {
        let m = self.in_sol.len();
        if self.size == m {
            return;
        }
        let v = loop {
            let v = rng.gen_range(0..m);
            if !self.in_sol[v] {
                break v;
            }
        };
        let mut evict = Vec::new();
        let in_sol = &self.in_sol;
        self.g.for_each_neighbor(v, &mut |w| {
            if in_sol[w] {
                evict.push(w);
            }
        });
        let mut touched = Vec::new();
        for &x in &evict {
            self.remove(x);
            self.g.for_each_neighbor(x, &mut |w| touched.push(w));
        }
        self.add(v);
        self.fill_from(touched, rng);
    }
}

/// Heuristic maximum independent set. The result is at least as large as
/// `warm_start`, which must itself be independent.
pub fn max_coclique_heuristic<G: Adjacency + ?Sized>(
    g: &G,
    seed: u64,
    warm_start: Option<&[usize]>,
    iterations: u64,
) -> Result<SearchResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut warm: Vec<usize> = warm_start.map(<[usize]>::to_vec).unwrap_or_default();
    warm.sort_unstable();
    warm.dedup();
    check_independent(g, &warm)?;

    let mut st = Ils::new(g);
    for &v in &warm {
        st.add(v);
    }
    st.greedy_fill();
    st.two_improve(&mut rng);
    let mut best = st.solution();

    for _ in 0..iterations {
        let before = st.solution();
        let before_size = st.size;
        st.perturb(&mut rng);
        st.two_improve(&mut rng);
        if st.size > best.len() {
            best = st.solution();
        }
        // accept worse solutions with probability decaying in the loss
        if st.size < before_size {
            let loss = (before_size - st.size) as f64;
            let gap = (best.len() - st.size) as f64;
            if rng.gen::<f64>() >= 1.0 / (1.0 + loss * gap) {
                st = Ils::new(g);
                for v in before {
                    st.add(v);
                }
            }
        }
    }
    check_independent(g, &best)?;
    Ok(SearchResult {
        size: best.len(),
        set: best,
        status: Status::LowerBound,
        nodes_explored: 0,
        seed: Some(seed),
        budget: iterations,
        consumed: iterations,
    })
}
