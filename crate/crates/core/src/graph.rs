//! The opposition graph on flags, dense or streaming.

use std::collections::BTreeMap;
use std::io::Write;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::{words_for, BitMatrix, BitSet};
use crate::error::{Error, Result};
use crate::geometry::FlagGeometry;

/// 2 GiB.
pub const DEFAULT_MEMORY_BUDGET: u64 = 2 << 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Dense,
    Streaming,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dense" => Ok(Mode::Dense),
            "streaming" => Ok(Mode::Streaming),
            _ => Err(Error::Parse(format!("unknown graph mode {s:?}"))),
        }
    }
}

/// Read access shared by the full graph and induced views.
pub trait Adjacency {
    fn order(&self) -> usize;
    fn is_adjacent(&self, v: usize, w: usize) -> bool;
    /// Calls `f` on the neighbors of `v` in ascending order.
    fn for_each_neighbor(&self, v: usize, f: &mut dyn FnMut(usize));

    fn degree(&self, v: usize) -> usize {
        let mut d = 0;
        self.for_each_neighbor(v, &mut |_| d += 1);
        d
    }
}

/// Degree → number of vertices with that degree.
pub fn degree_histogram<G: Adjacency + Sync + ?Sized>(g: &G) -> BTreeMap<usize, usize> {
    (0..g.order())
        .into_par_iter()
        .fold(BTreeMap::new, |mut h, v| {
            *h.entry(g.degree(v)).or_insert(0) += 1;
            h
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, c) in b {
                *a.entry(k).or_insert(0) += c;
            }
            a
        })
}

pub fn count_edges<G: Adjacency + Sync + ?Sized>(g: &G) -> u64 {
    let total: u64 = (0..g.order()).into_par_iter().map(|v| g.degree(v) as u64).sum();
    total / 2
}

/// Writes `p edge V E` and then `e i j` (1-based, `i < j`, lexicographic).
/// Returns the number of edge lines.
pub fn write_dimacs<G: Adjacency + Sync + ?Sized, W: Write>(g: &G, out: &mut W) -> Result<u64> {
    let e = count_edges(g);
    writeln!(out, "p edge {} {}", g.order(), e)?;
    let mut written = 0u64;
    let mut line = String::new();
    for v in 0..g.order() {
        line.clear();
        g.for_each_neighbor(v, &mut |w| {
            if w > v {
                use std::fmt::Write as _;
                let _ = writeln!(line, "e {} {}", v + 1, w + 1);
                written += 1;
            }
        });
        out.write_all(line.as_bytes())?;
    }
    debug_assert_eq!(written, e);
    Ok(written)
}

enum Store {
    Dense { rows: BitMatrix, edges: u64 },
    Streaming,
}

/// `Γ_{2n}`: vertices are the flag indices of a [`FlagGeometry`], adjacency
/// is opposition.
pub struct FlagGraph {
    geom: Arc<FlagGeometry>,
    store: Store,
}

impl FlagGraph {
    /// Bytes a dense adjacency matrix on `v` vertices needs, `V²/8`.
    pub fn dense_bytes(v: usize) -> u128 {
        (v as u128 * v as u128).div_ceil(8)
    }

    pub fn build(geom: Arc<FlagGeometry>, mode: Mode, memory_budget: u64) -> Result<Self> {
        let store = match mode {
            Mode::Streaming => Store::Streaming,
            Mode::Dense => {
                let v = geom.len();
                let needed = Self::dense_bytes(v);
                if needed > memory_budget as u128 {
                    return Err(Error::MemoryBudgetExceeded { needed, budget: memory_budget });
                }
                let stride = words_for(v);
                let mut words = vec![0u64; v * stride];
                words.par_chunks_mut(stride.max(1)).enumerate().for_each(|(u, row)| {
                    geom.for_each_opposite(u, &mut |w| row[w >> 6] |= 1 << (w & 63));
                });
                let rows = BitMatrix::from_row_words(v, v, words);
                let edges = (0..v).map(|u| rows.row_count(u) as u64).sum::<u64>() / 2;
                Store::Dense { rows, edges }
            }
        };
        Ok(FlagGraph { geom, store })
    }

    pub fn geometry(&self) -> &Arc<FlagGeometry> {
        &self.geom
    }

    pub fn mode(&self) -> Mode {
        match self.store {
            Store::Dense { .. } => Mode::Dense,
            Store::Streaming => Mode::Streaming,
        }
    }

    /// Dense rows, if materialized.
    pub fn rows(&self) -> Option<&BitMatrix> {
        match &self.store {
            Store::Dense { rows, .. } => Some(rows),
            Store::Streaming => None,
        }
    }

    pub fn edge_count(&self) -> u64 {
        match &self.store {
            Store::Dense { edges, .. } => *edges,
            Store::Streaming => count_edges(self),
        }
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        self.for_each_neighbor(v, &mut |w| out.push(w));
        out
    }

    pub fn export_dimacs<W: Write>(&self, out: &mut W) -> Result<u64> {
        write_dimacs(self, out)
    }

    pub fn metadata(&self) -> GraphMeta {
        GraphMeta {
            n: self.geom.n(),
            q: self.geom.q(),
            vertices: self.geom.len().to_string(),
            edges: self.edge_count().to_string(),
            vertex_hash: self.geom.vertex_hash().to_string(),
        }
    }

    /// Adjacency restricted to `subset`, in the given order.
    pub fn induced_subgraph(&self, subset: &[usize]) -> Result<SubGraph> {
        let v = self.order();
        let mut seen = BitSet::new(v);
        for &i in subset {
            if i >= v {
                return Err(Error::IndexOutOfRange(i));
            }
            if !seen.insert(i) {
                return Err(Error::DuplicateIndex(i));
            }
        }
        let m = subset.len();
        let stride = words_for(m);
        let mut words = vec![0u64; m * stride];
        words.par_chunks_mut(stride.max(1)).enumerate().for_each(|(i, row)| {
            for (j, &w) in subset.iter().enumerate() {
                if self.is_adjacent(subset[i], w) {
                    row[j >> 6] |= 1 << (j & 63);
                }
            }
        });
        Ok(SubGraph {
            labels: subset.to_vec(),
            rows: BitMatrix::from_row_words(m, m, words),
        })
    }
}

impl Adjacency for FlagGraph {
    fn order(&self) -> usize {
        self.geom.len()
    }

    fn is_adjacent(&self, v: usize, w: usize) -> bool {
        match &self.store {
            Store::Dense { rows, .. } => rows.get(v, w),
            Store::Streaming => self.geom.is_opposite_idx(v, w),
        }
    }

    fn for_each_neighbor(&self, v: usize, f: &mut dyn FnMut(usize)) {
        match &self.store {
            Store::Dense { rows, .. } => for_each_bit(rows.row_words(v), f),
            Store::Streaming => self.geom.for_each_opposite(v, f),
        }
    }

    fn degree(&self, v: usize) -> usize {
        match &self.store {
            Store::Dense { rows, .. } => rows.row_count(v),
            Store::Streaming => {
                let mut d = 0;
                self.geom.for_each_opposite(v, &mut |_| d += 1);
                d
            }
        }
    }
}

fn for_each_bit(words: &[u64], f: &mut dyn FnMut(usize)) {
    for (wi, &w) in words.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            f(wi * 64 + w.trailing_zeros() as usize);
            w &= w - 1;
        }
    }
}

/// JSON sidecar for exported graphs; counts are decimal strings.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GraphMeta {
    pub n: usize,
    pub q: u8,
    #[serde(rename = "V")]
    pub vertices: String,
    #[serde(rename = "E")]
    pub edges: String,
    pub vertex_hash: String,
}

/// A small dense graph with local vertex ids `0..m`; `labels[i]` is the
/// originating vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubGraph {
    labels: Vec<usize>,
    rows: BitMatrix,
}

impl SubGraph {
    /// Builds a graph from an edge list on `m` vertices labelled `0..m`.
    pub fn from_edges(m: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut rows = BitMatrix::new(m, m);
        for &(u, v) in edges {
            if u >= m || v >= m {
                return Err(Error::IndexOutOfRange(u.max(v)));
            }
            if u != v {
                rows.set(u, v);
                rows.set(v, u);
            }
        }
        Ok(SubGraph { labels: (0..m).collect(), rows })
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn rows(&self) -> &BitMatrix {
        &self.rows
    }

    pub fn edge_count(&self) -> u64 {
        count_edges(self)
    }

    /// Maps local ids back to labels.
    pub fn lift(&self, local: &[usize]) -> Vec<usize> {
        local.iter().map(|&i| self.labels[i]).collect()
    }
}

impl Adjacency for SubGraph {
    fn order(&self) -> usize {
        self.labels.len()
    }

    fn is_adjacent(&self, v: usize, w: usize) -> bool {
        self.rows.get(v, w)
    }

    fn for_each_neighbor(&self, v: usize, f: &mut dyn FnMut(usize)) {
        for_each_bit(self.rows.row_words(v), f)
    }

    fn degree(&self, v: usize) -> usize {
        self.rows.row_count(v)
    }
}
