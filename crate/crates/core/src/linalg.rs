//! Matrices over `GF(q)` and subspaces in canonical reduced row echelon form.
//!
//! A [`Subspace`] stores the RREF basis of its row space, which is unique, so
//! structural equality and hashing coincide with equality of subspaces. Vector
//! dimension `k` is used throughout; the projective dimension is `k - 1`, and
//! the empty projective space is `k = 0`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf::FieldSpec;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatGF {
    q: u8,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl MatGF {
    pub fn new(q: u8, rows: usize, cols: usize, data: Vec<u8>) -> Result<Self> {
        let field = FieldSpec::get(q as u32)?;
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        for &x in &data {
            field.check(x)?;
        }
        Ok(MatGF { q, rows, cols, data })
    }

    pub fn zeros(q: u8, rows: usize, cols: usize) -> Self {
        MatGF { q, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(q: u8, n: usize) -> Self {
        let mut m = Self::zeros(q, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(q: u8, rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Self::new(q, rows.len(), cols, rows.concat())
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &MatGF) -> Result<MatGF> {
        if self.q != other.q || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "cannot stack {}x{} over GF({}) on {}x{} over GF({})",
                self.rows, self.cols, self.q, other.rows, other.cols, other.q
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(MatGF { q: self.q, rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn rank(&self) -> usize {
        if self.q == 2 && self.cols <= 64 {
            let mut words: Vec<u64> = (0..self.rows).map(|i| pack_gf2(self.row(i))).collect();
            return rank_gf2(&mut words);
        }
        let mut data = self.data.clone();
        rref_in_place(field(self.q), &mut data, self.rows, self.cols)
    }

    /// Product `self * other`.
    pub fn mul(&self, other: &MatGF) -> Result<MatGF> {
        if self.q != other.q || self.cols != other.rows {
            return Err(Error::ShapeMismatch("incompatible product".into()));
        }
        let f = field(self.q);
        let mut out = MatGF::zeros(self.q, self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let c = self.get(i, t);
                if c == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let slot = &mut out.data[i * other.cols + j];
                    *slot = f.mul_add(*slot, c, other.get(t, j));
                }
            }
        }
        Ok(out)
    }
}

#[inline]
pub(crate) fn field(q: u8) -> &'static FieldSpec {
    FieldSpec::get(q as u32).expect("validated field order")
}

/// Packs a GF(2) vector into a word, coordinate `j` at bit `j`.
#[inline]
pub(crate) fn pack_gf2(v: &[u8]) -> u64 {
    v.iter().enumerate().fold(0, |acc, (j, &x)| acc | ((x as u64 & 1) << j))
}

/// Rank of packed GF(2) rows; the slice is used as scratch.
#[inline]
pub(crate) fn rank_gf2(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let r = rows[i];
        if r == 0 {
            continue;
        }
        rank += 1;
        let low = r & r.wrapping_neg();
        for x in rows[i + 1..].iter_mut() {
            if *x & low != 0 {
                *x ^= r;
            }
        }
    }
    rank
}

/// Reduces `data` (row-major, `rows x cols`) to RREF in place, moving the
/// nonzero rows to the top. Returns the rank.
pub(crate) fn rref_in_place(f: &FieldSpec, data: &mut [u8], rows: usize, cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| data[r * cols + col] != 0) else {
            continue;
        };
        if pivot != rank {
            for j in 0..cols {
                data.swap(pivot * cols + j, rank * cols + j);
            }
        }
        let inv = f.inv_nonzero(data[rank * cols + col]);
        if inv != 1 {
            for j in col..cols {
                data[rank * cols + j] = f.mul(data[rank * cols + j], inv);
            }
        }
        for r in 0..rows {
            if r == rank {
                continue;
            }
            let c = data[r * cols + col];
            if c == 0 {
                continue;
            }
            let neg = f.neg(c);
            for j in col..cols {
                let pv = data[rank * cols + j];
                data[r * cols + j] = f.mul_add(data[r * cols + j], neg, pv);
            }
        }
        rank += 1;
    }
    rank
}

/// RREF of the row space of `m`, keeping only the nonzero rows.
pub fn rref(m: &MatGF) -> MatGF {
    let mut data = m.data.clone();
    let rank = rref_in_place(field(m.q), &mut data, m.rows, m.cols);
    data.truncate(rank * m.cols);
    MatGF { q: m.q, rows: rank, cols: m.cols, data }
}

/// A subspace of `GF(q)^ambient`, stored as its canonical RREF basis.
///
/// The derived ordering compares `(q, ambient, k)` first and then the RREF
/// entries lexicographically; this is the canonical enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    q: u8,
    ambient: u8,
    k: u8,
    rows: Box<[u8]>,
}

impl Subspace {
    /// Row space of the given (not necessarily independent) rows.
    pub fn span(q: u8, ambient: usize, rows: &[u8]) -> Result<Self> {
        if ambient == 0 || ambient > 64 || rows.len() % ambient != 0 {
            return Err(Error::ShapeMismatch(format!(
                "{} entries do not form rows of length {ambient}",
                rows.len()
            )));
        }
        let f = FieldSpec::get(q as u32)?;
        for &x in rows {
            f.check(x)?;
        }
        Ok(Self::span_unchecked(f, ambient, rows.to_vec()))
    }

    pub(crate) fn span_unchecked(f: &FieldSpec, ambient: usize, mut data: Vec<u8>) -> Self {
        let nrows = data.len() / ambient;
        let rank = rref_in_place(f, &mut data, nrows, ambient);
        data.truncate(rank * ambient);
        Subspace { q: f.q(), ambient: ambient as u8, k: rank as u8, rows: data.into_boxed_slice() }
    }

    /// Wraps rows already known to be in RREF with full rank.
    pub(crate) fn from_rref_unchecked(q: u8, ambient: usize, rows: Vec<u8>) -> Self {
        let k = if ambient == 0 { 0 } else { rows.len() / ambient };
        Subspace { q, ambient: ambient as u8, k: k as u8, rows: rows.into_boxed_slice() }
    }

    pub fn from_matrix(m: &MatGF) -> Result<Self> {
        Self::span(m.q, m.cols, &m.data)
    }

    pub fn zero(q: u8, ambient: usize) -> Self {
        Subspace { q, ambient: ambient as u8, k: 0, rows: Box::new([]) }
    }

    pub fn full(q: u8, ambient: usize) -> Self {
        let m = MatGF::identity(q, ambient);
        Self::from_rref_unchecked(q, ambient, m.data)
    }

    /// Span of standard basis vectors `e_i` (0-based indices).
    pub fn coordinate(q: u8, ambient: usize, axes: &[usize]) -> Result<Self> {
        let mut data = vec![0u8; axes.len() * ambient];
        for (r, &i) in axes.iter().enumerate() {
            if i >= ambient {
                return Err(Error::OutOfRange(format!("axis {i} in dimension {ambient}")));
            }
            data[r * ambient + i] = 1;
        }
        Self::span(q, ambient, &data)
    }

    #[inline]
    pub fn q(&self) -> u8 {
        self.q
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.ambient as usize
    }

    /// Vector dimension.
    #[inline]
    pub fn dim(&self) -> usize {
        self.k as usize
    }

    /// Projective dimension; `-1` for the empty space.
    pub fn proj_dim(&self) -> i32 {
        self.k as i32 - 1
    }

    pub fn rows(&self) -> &[u8] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[u8] {
        let d = self.ambient();
        &self.rows[i * d..(i + 1) * d]
    }

    pub fn basis(&self) -> MatGF {
        MatGF { q: self.q, rows: self.dim(), cols: self.ambient(), data: self.rows.to_vec() }
    }

    pub fn field(&self) -> &'static FieldSpec {
        field(self.q)
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim()).map(|i| self.row(i).iter().position(|&x| x != 0).unwrap()).collect()
    }

    /// Packed rows for `q = 2`.
    pub(crate) fn packed_gf2(&self) -> Vec<u64> {
        (0..self.dim()).map(|i| pack_gf2(self.row(i))).collect()
    }

    fn same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.q != other.q || self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                q1: self.q,
                d1: self.ambient(),
                q2: other.q,
                d2: other.ambient(),
            });
        }
        Ok(())
    }

    fn stacked_rank(&self, other: &Subspace) -> usize {
        if self.q == 2 {
            let mut words = self.packed_gf2();
            words.extend(other.packed_gf2());
            return rank_gf2(&mut words);
        }
        let mut data = self.rows.to_vec();
        data.extend_from_slice(&other.rows);
        rref_in_place(self.field(), &mut data, self.dim() + other.dim(), self.ambient())
    }

    /// Vector dimension of `self ∩ other`.
    pub fn meet_dim(&self, other: &Subspace) -> Result<usize> {
        self.same_ambient(other)?;
        Ok(self.dim() + other.dim() - self.stacked_rank(other))
    }

    /// Same as [`Subspace::meet_dim`] but always through the table-based
    /// elimination, bypassing the packed `q = 2` path.
    pub fn meet_dim_generic(&self, other: &Subspace) -> Result<usize> {
        self.same_ambient(other)?;
        let mut data = self.rows.to_vec();
        data.extend_from_slice(&other.rows);
        let r = rref_in_place(self.field(), &mut data, self.dim() + other.dim(), self.ambient());
        Ok(self.dim() + other.dim() - r)
    }

    pub fn join(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        let mut data = self.rows.to_vec();
        data.extend_from_slice(&other.rows);
        Ok(Self::span_unchecked(self.field(), self.ambient(), data))
    }

    pub fn meet(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        Ok(self.ortho_complement().join(&other.ortho_complement())?.ortho_complement())
    }

    /// `{v : v·w = 0 for all w in self}` under the standard bilinear form.
    pub fn ortho_complement(&self) -> Subspace {
        let d = self.ambient();
        let f = self.field();
        let pivots = self.pivots();
        let mut is_pivot = vec![false; d];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut data = Vec::with_capacity((d - self.dim()) * d);
        for free in (0..d).filter(|&j| !is_pivot[j]) {
            let start = data.len();
            data.resize(start + d, 0);
            data[start + free] = 1;
            for (i, &c) in pivots.iter().enumerate() {
                data[start + c] = f.neg(self.row(i)[free]);
            }
        }
        Self::span_unchecked(f, d, data)
    }

    pub fn contains_vector(&self, v: &[u8]) -> bool {
        debug_assert_eq!(v.len(), self.ambient());
        let f = self.field();
        let mut w = v.to_vec();
        for (i, c) in self.pivots().into_iter().enumerate() {
            let x = w[c];
            if x != 0 {
                let neg = f.neg(x);
                for (slot, &r) in w.iter_mut().zip(self.row(i)) {
                    *slot = f.mul_add(*slot, neg, r);
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.same_ambient(other)?;
        Ok(other.dim() <= self.dim() && self.meet_dim(other)? == other.dim())
    }

    /// The subspace of `self` whose coordinates with respect to the RREF basis
    /// are the row space of `coeffs` (rows of length `self.dim()`).
    pub fn from_coordinates(&self, coeffs: &[u8]) -> Subspace {
        let k = self.dim();
        let d = self.ambient();
        let f = self.field();
        let nrows = if k == 0 { 0 } else { coeffs.len() / k };
        let mut data = vec![0u8; nrows * d];
        for r in 0..nrows {
            for t in 0..k {
                let c = coeffs[r * k + t];
                if c == 0 {
                    continue;
                }
                for j in 0..d {
                    data[r * d + j] = f.mul_add(data[r * d + j], c, self.row(t)[j]);
                }
            }
        }
        Self::span_unchecked(f, d, data)
    }
}

impl fmt::Display for Subspace {
    /// `d_v:k:q:` then row-major base-36 entries, rows separated by `;`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}:", self.ambient, self.k, self.q)?;
        for i in 0..self.dim() {
            if i > 0 {
                f.write_str(";")?;
            }
            for &x in self.row(i) {
                write!(f, "{}", char::from_digit(x as u32, 36).unwrap())?;
            }
        }
        Ok(())
    }
}

impl FromStr for Subspace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed subspace `{s}`"));
        let mut parts = s.trim().splitn(4, ':');
        let mut num = || -> Result<usize> {
            parts.next().ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())
        };
        let (d, k, q) = (num()?, num()?, num()?);
        let body = parts.next().ok_or_else(bad)?;
        let q = u8::try_from(q).map_err(|_| bad())?;
        let mut data = Vec::with_capacity(d * k);
        if k > 0 {
            for row in body.split(';') {
                if row.chars().count() != d {
                    return Err(bad());
                }
                for c in row.chars() {
                    data.push(c.to_digit(36).ok_or_else(bad)? as u8);
                }
            }
        } else if !body.is_empty() {
            return Err(bad());
        }
        if data.len() != d * k {
            return Err(bad());
        }
        let s2 = Subspace::span(q, d, &data)?;
        if s2.dim() != k {
            return Err(Error::Parse(format!("rows of `{s}` are dependent")));
        }
        Ok(s2)
    }
}

impl serde::Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Subspace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
