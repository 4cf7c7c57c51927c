//! Subspaces and `(n-1, n)`-flags of `PG(2n, q)`.
//!
//! [`for_each_rref`] walks the Schubert cells of the Grassmannian (pivot
//! pattern + free entries) without allocating; [`enumerate_subspaces`]
//! materializes and sorts the result into the canonical order.
//! [`FlagGeometry`] is the indexed vertex set of the opposition graph.

use std::collections::HashMap;
use std::ops::Range;
use std::path::Path;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bitset::{words_for, BitMatrix};
use crate::cache;
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::linalg::{field, rank_gf2, rref_in_place, Subspace};

/// Calls `visit` once for every `k x d` matrix in RREF with `k` nonzero rows
/// over `GF(q)`, i.e. once per `k`-subspace of `GF(q)^d`. The order is by
/// pivot pattern, then odometer order of the free entries.
pub fn for_each_rref<F: FnMut(&[u8])>(q: u8, d: usize, k: usize, mut visit: F) -> Result<()> {
    FieldSpec::get(q as u32)?;
    if k > d {
        return Err(Error::OutOfRange(format!("k={k} exceeds dimension {d}")));
    }
    if k == 0 {
        visit(&[]);
        return Ok(());
    }
    let mut pivots: Vec<usize> = (0..k).collect();
    let mut buf = vec![0u8; k * d];
    let mut free = Vec::with_capacity(k * d);
    loop {
        buf.iter_mut().for_each(|x| *x = 0);
        free.clear();
        for (i, &c) in pivots.iter().enumerate() {
            buf[i * d + c] = 1;
            let mut next = i + 1;
            for j in c + 1..d {
                if next < k && pivots[next] == j {
                    next += 1;
                } else {
                    free.push(i * d + j);
                }
            }
        }
        'odometer: loop {
            visit(&buf);
            let mut t = free.len();
            loop {
                if t == 0 {
                    break 'odometer;
                }
                t -= 1;
                let slot = &mut buf[free[t]];
                if *slot + 1 < q {
                    *slot += 1;
                    break;
                }
                *slot = 0;
            }
        }
        // next combination of pivot columns
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            if pivots[i] < d - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Number of RREF matrices visited by [`for_each_rref`].
pub fn count_subspaces_by_walk(q: u8, d: usize, k: usize) -> Result<u64> {
    let mut count = 0u64;
    for_each_rref(q, d, k, |_| count += 1)?;
    Ok(count)
}

/// All `k`-dimensional subspaces of `GF(q)^d` in canonical order.
pub fn enumerate_subspaces(q: u8, d: usize, k: usize) -> Result<Vec<Subspace>> {
    let mut out = Vec::new();
    for_each_rref(q, d, k, |rows| out.push(Subspace::from_rref_unchecked(q, d, rows.to_vec())))?;
    out.sort_unstable();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProjSpace {
    n: usize,
    q: u8,
}

impl ProjSpace {
    pub fn new(n: usize, q: u32) -> Result<Self> {
        let f = FieldSpec::get(q)?;
        if n == 0 || 2 * n + 1 > 64 {
            return Err(Error::OutOfRange(format!("n={n} (need 1 <= n <= 31)")));
        }
        Ok(ProjSpace { n, q: f.q() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    /// Vector dimension `2n + 1`.
    pub fn ambient(&self) -> usize {
        2 * self.n + 1
    }

    pub fn field(&self) -> &'static FieldSpec {
        field(self.q)
    }

    pub fn enumerate_subspaces(&self, k: usize) -> Result<Vec<Subspace>> {
        enumerate_subspaces(self.q, self.ambient(), k)
    }

    /// All flags, ordered by `B` then `A`.
    pub fn enumerate_flags(&self) -> Result<Vec<Flag>> {
        let geom = FlagGeometry::build(*self)?;
        Ok((0..geom.len()).map(|v| geom.flag(v)).collect())
    }
}

/// An incident pair `A ⊂ B` with `dim A = n`, `dim B = n + 1` (vector dims).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Flag {
    pub a: Subspace,
    pub b: Subspace,
}

impl Flag {
    pub fn new(a: Subspace, b: Subspace) -> Result<Self> {
        let d = b.ambient();
        if d % 2 == 0 {
            return Err(Error::WrongDimension { expected: "odd ambient".into(), got: d });
        }
        let n = (d - 1) / 2;
        if a.dim() != n {
            return Err(Error::WrongDimension { expected: format!("{n}"), got: a.dim() });
        }
        if b.dim() != n + 1 {
            return Err(Error::WrongDimension { expected: format!("{}", n + 1), got: b.dim() });
        }
        if !b.contains(&a)? {
            return Err(Error::SpecIncidenceViolation(format!("{a} is not contained in {b}")));
        }
        Ok(Flag { a, b })
    }
}

/// `A1 ∩ B2 = A2 ∩ B1 = 0`, through explicit rank computations.
pub fn is_opposite(f1: &Flag, f2: &Flag) -> Result<bool> {
    Ok(f1.a.meet_dim(&f2.b)? == 0 && f2.a.meet_dim(&f1.b)? == 0)
}

/// `(B^⊥, A^⊥)`.
pub fn dualize_flag(f: &Flag) -> Flag {
    Flag { a: f.b.ortho_complement(), b: f.a.ortho_complement() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlagIdx {
    pub a: u32,
    pub b: u32,
}

/// The relation `A ∩ B = 0` between all `n`-dim and `(n+1)`-dim subspaces,
/// stored with `B` as the row index.
#[derive(Debug)]
pub struct SkewTable {
    by_b: BitMatrix,
    by_a: BitMatrix,
}

impl SkewTable {
    #[inline]
    pub fn skew(&self, a: u32, b: u32) -> bool {
        self.by_b.get(b as usize, a as usize)
    }

    /// Words of the set `{a : A ∩ B = 0}`.
    #[inline]
    pub fn row_for_b(&self, b: u32) -> &[u64] {
        self.by_b.row_words(b as usize)
    }

    /// Words of the set `{b : A ∩ B = 0}`.
    #[inline]
    pub fn row_for_a(&self, a: u32) -> &[u64] {
        self.by_a.row_words(a as usize)
    }
}

/// Indexed universe of `(n-1, n)`-flags of `PG(2n, q)`.
#[derive(Debug)]
pub struct FlagGeometry {
    ps: ProjSpace,
    a_spaces: Vec<Subspace>,
    b_spaces: Vec<Subspace>,
    a_lookup: HashMap<Subspace, u32>,
    b_lookup: HashMap<Subspace, u32>,
    flags: Vec<FlagIdx>,
    per_b: usize,
    vertex_hash: String,
    skew: OnceLock<SkewTable>,
    flags_by_a: OnceLock<Vec<Vec<u32>>>,
    duals: OnceLock<(Vec<u32>, Vec<u32>)>,
}

impl FlagGeometry {
    pub fn build(ps: ProjSpace) -> Result<Self> {
        let a_spaces = ps.enumerate_subspaces(ps.n)?;
        let b_spaces = ps.enumerate_subspaces(ps.n + 1)?;
        Self::from_spaces(ps, a_spaces, b_spaces)
    }

    /// Like [`FlagGeometry::build`], reading and writing subspace lists under
    /// `cache_dir`.
    pub fn build_cached(ps: ProjSpace, cache_dir: &Path) -> Result<Self> {
        let (a_spaces, _) = cache::load_or_enumerate(cache_dir, ps.q, ps.ambient(), ps.n)?;
        let (b_spaces, _) = cache::load_or_enumerate(cache_dir, ps.q, ps.ambient(), ps.n + 1)?;
        Self::from_spaces(ps, a_spaces, b_spaces)
    }

    fn from_spaces(ps: ProjSpace, a_spaces: Vec<Subspace>, b_spaces: Vec<Subspace>) -> Result<Self> {
        let index = |v: &[Subspace]| -> HashMap<Subspace, u32> {
            v.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect()
        };
        let a_lookup = index(&a_spaces);
        let b_lookup = index(&b_spaces);

        // hyperplanes of GF(q)^{n+1} as coordinate patterns inside each B
        let coords = enumerate_subspaces(ps.q, ps.n + 1, ps.n)?;
        let per_b = coords.len();
        let flags: Vec<FlagIdx> = b_spaces
            .par_iter()
            .enumerate()
            .flat_map_iter(|(bi, b)| {
                let mut as_: Vec<u32> =
                    coords.iter().map(|c| a_lookup[&b.from_coordinates(c.rows())]).collect();
                as_.sort_unstable();
                as_.into_iter().map(move |a| FlagIdx { a, b: bi as u32 })
            })
            .collect();

        let mut hasher = Sha256::new();
        for f in &flags {
            hasher.update(format!("{} {}\n", a_spaces[f.a as usize], b_spaces[f.b as usize]));
        }
        let vertex_hash = hasher.finalize().iter().map(|b| format!("{b:02x}")).collect();

        Ok(FlagGeometry {
            ps,
            a_spaces,
            b_spaces,
            a_lookup,
            b_lookup,
            flags,
            per_b,
            vertex_hash,
            skew: OnceLock::new(),
            flags_by_a: OnceLock::new(),
            duals: OnceLock::new(),
        })
    }

    pub fn space(&self) -> ProjSpace {
        self.ps
    }

    pub fn n(&self) -> usize {
        self.ps.n
    }

    pub fn q(&self) -> u8 {
        self.ps.q
    }

    pub fn ambient(&self) -> usize {
        self.ps.ambient()
    }

    /// Number of flags (vertices).
    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    /// SHA-256 over the canonical flag list, one `A B` line per flag.
    pub fn vertex_hash(&self) -> &str {
        &self.vertex_hash
    }

    /// Flags per `n`-space, `[n+1, 1]_q`.
    pub fn flags_per_b(&self) -> usize {
        self.per_b
    }

    pub fn a_spaces(&self) -> &[Subspace] {
        &self.a_spaces
    }

    pub fn b_spaces(&self) -> &[Subspace] {
        &self.b_spaces
    }

    pub fn flag_indices(&self) -> &[FlagIdx] {
        &self.flags
    }

    #[inline]
    pub fn idx(&self, v: usize) -> FlagIdx {
        self.flags[v]
    }

    pub fn flag(&self, v: usize) -> Flag {
        let f = self.flags[v];
        Flag { a: self.a_spaces[f.a as usize].clone(), b: self.b_spaces[f.b as usize].clone() }
    }

    pub fn a_space(&self, v: usize) -> &Subspace {
        &self.a_spaces[self.flags[v].a as usize]
    }

    pub fn b_space(&self, v: usize) -> &Subspace {
        &self.b_spaces[self.flags[v].b as usize]
    }

    pub fn a_index(&self, s: &Subspace) -> Option<u32> {
        self.a_lookup.get(s).copied()
    }

    pub fn b_index(&self, s: &Subspace) -> Option<u32> {
        self.b_lookup.get(s).copied()
    }

    /// Vertex range of the flags whose `n`-space has index `b`.
    pub fn flags_with_b(&self, b: u32) -> Range<usize> {
        let start = b as usize * self.per_b;
        start..start + self.per_b
    }

    /// Vertices of the flags whose `(n-1)`-space has index `a`, ascending.
    pub fn flags_with_a(&self, a: u32) -> &[u32] {
        let table = self.flags_by_a.get_or_init(|| {
            let mut t = vec![Vec::new(); self.a_spaces.len()];
            for (v, f) in self.flags.iter().enumerate() {
                t[f.a as usize].push(v as u32);
            }
            t
        });
        &table[a as usize]
    }

    pub fn index_of_pair(&self, a: u32, b: u32) -> Option<usize> {
        let range = self.flags_with_b(b);
        let slice = &self.flags[range.clone()];
        slice.binary_search_by_key(&a, |f| f.a).ok().map(|i| range.start + i)
    }

    pub fn index_of(&self, f: &Flag) -> Option<usize> {
        self.index_of_pair(self.a_index(&f.a)?, self.b_index(&f.b)?)
    }

    pub fn skew_table(&self) -> &SkewTable {
        self.skew.get_or_init(|| build_skew_table(self))
    }

    /// `A(v) ∩ B(w) = 0 = A(w) ∩ B(v)`, through the skew table.
    #[inline]
    pub fn is_opposite_idx(&self, v: usize, w: usize) -> bool {
        let t = self.skew_table();
        let (fv, fw) = (self.flags[v], self.flags[w]);
        t.skew(fv.a, fw.b) && t.skew(fw.a, fv.b)
    }

    /// Calls `f` on every vertex opposite to `v`, ascending. Candidates are
    /// the flags whose `n`-space is skew to `A(v)` (contiguous vertex blocks),
    /// filtered by their `(n-1)`-space being skew to `B(v)`.
    pub fn for_each_opposite(&self, v: usize, f: &mut dyn FnMut(usize)) {
        let t = self.skew_table();
        let fv = self.flags[v];
        let a_ok = t.row_for_b(fv.b);
        for (wi, &word) in t.row_for_a(fv.a).iter().enumerate() {
            let mut word = word;
            while word != 0 {
                let b = (wi * 64 + word.trailing_zeros() as usize) as u32;
                word &= word - 1;
                for w in self.flags_with_b(b) {
                    let a = self.flags[w].a as usize;
                    if (a_ok[a >> 6] >> (a & 63)) & 1 == 1 {
                        f(w);
                    }
                }
            }
        }
    }

    fn dual_maps(&self) -> &(Vec<u32>, Vec<u32>) {
        self.duals.get_or_init(|| {
            let a_to_b = self
                .a_spaces
                .par_iter()
                .map(|a| self.b_lookup[&a.ortho_complement()])
                .collect();
            let b_to_a = self
                .b_spaces
                .par_iter()
                .map(|b| self.a_lookup[&b.ortho_complement()])
                .collect();
            (a_to_b, b_to_a)
        })
    }

    /// Index of `A^⊥` among the `n`-spaces.
    pub fn dual_of_a(&self, a: u32) -> u32 {
        self.dual_maps().0[a as usize]
    }

    /// Index of `B^⊥` among the `(n-1)`-spaces.
    pub fn dual_of_b(&self, b: u32) -> u32 {
        self.dual_maps().1[b as usize]
    }

    /// Vertex of the dual flag `(B^⊥, A^⊥)`.
    pub fn dual_vertex(&self, v: usize) -> usize {
        let f = self.flags[v];
        self.index_of_pair(self.dual_of_b(f.b), self.dual_of_a(f.a)).expect("dual flag exists")
    }

    /// Points (1-dim subspaces) in canonical order.
    pub fn points(&self) -> Result<Vec<Subspace>> {
        self.ps.enumerate_subspaces(1)
    }

    /// Hyperplanes (`2n`-dim subspaces) in canonical order.
    pub fn hyperplanes(&self) -> Result<Vec<Subspace>> {
        self.ps.enumerate_subspaces(2 * self.ps.n)
    }
}

/// Fills the skew table. For each `B` with complement rows `c_1..c_n`, a
/// vector `v` has syndrome `(v·c_1, .., v·c_n)`; `A ∩ B = 0` exactly when the
/// syndromes of a basis of `A` are independent.
fn build_skew_table(geom: &FlagGeometry) -> SkewTable {
    let n = geom.n();
    let na = geom.a_spaces.len();
    let nb = geom.b_spaces.len();
    let stride = words_for(na);
    let mut words = vec![0u64; nb * stride];
    let f = geom.ps.field();

    if geom.q() == 2 {
        let a_rows: Vec<Vec<u64>> = geom.a_spaces.iter().map(|a| a.packed_gf2()).collect();
        words.par_chunks_mut(stride).enumerate().for_each(|(bi, row)| {
            let comp = geom.b_spaces[bi].ortho_complement().packed_gf2();
            let syndrome = |v: u64| -> u64 {
                comp.iter()
                    .enumerate()
                    .fold(0, |acc, (j, c)| acc | (((v & c).count_ones() as u64) & 1) << j)
            };
            let mut scratch = vec![0u64; n];
            for (ai, rows) in a_rows.iter().enumerate() {
                for (s, &r) in scratch.iter_mut().zip(rows) {
                    *s = syndrome(r);
                }
                if rank_gf2(&mut scratch) == n {
                    row[ai >> 6] |= 1 << (ai & 63);
                }
            }
        });
    } else {
        words.par_chunks_mut(stride).enumerate().for_each(|(bi, row)| {
            let comp = geom.b_spaces[bi].ortho_complement();
            let mut m = vec![0u8; n * n];
            for (ai, a) in geom.a_spaces.iter().enumerate() {
                for i in 0..n {
                    for j in 0..n {
                        m[i * n + j] = f.dot(a.row(i), comp.row(j));
                    }
                }
                if rref_in_place(f, &mut m, n, n) == n {
                    row[ai >> 6] |= 1 << (ai & 63);
                }
            }
        });
    }
    let by_b = BitMatrix::from_row_words(nb, na, words);
    let mut by_a = BitMatrix::new(na, nb);
    for b in 0..nb {
        for a in by_b.row(b).iter() {
            by_a.set(a, b);
        }
    }
    SkewTable { by_b, by_a }
}
