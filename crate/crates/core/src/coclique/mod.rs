//! Cocliques of the opposition graph: the Example 1 constructions,
//! verification, per-space weights and colors, the counting oracles behind
//! the structure theorem, and classification into its three categories.

mod classify;
mod construct;
mod spaces;
mod verify;
mod weights;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::geometry::FlagGeometry;

pub use classify::{classify_maximal_coclique, Category, TrichotomyReport};
pub use construct::{build_example, ConstructionSpec, Variant};
pub use spaces::{
    analyze_intersecting_family, count_flags_skew_to, count_n_spaces_meeting_all,
    in_general_position, max_skew_subfamily, IntersectMode, IntersectingReport, SkewCount,
    SkewSearch,
};
pub use verify::{
    greedy_closure, is_coclique, is_maximal_coclique, random_closure, MaximalityReport,
};
pub use weights::{
    classify_space_weight, color_map, red_intersection_check, red_intersection_violation,
    spectrum_k, Color, ColorMap, WeightReport,
};

/// A set of vertices of the flag graph, kept sorted.
#[derive(Clone)]
pub struct FlagFamily {
    geom: Arc<FlagGeometry>,
    members: Vec<u32>,
    mask: BitSet,
}

impl std::fmt::Debug for FlagFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FlagFamily")
            .field("n", &self.geom.n())
            .field("q", &self.geom.q())
            .field("members", &self.members)
            .finish()
    }
}

impl PartialEq for FlagFamily {
    fn eq(&self, other: &Self) -> bool {
        self.geom.vertex_hash() == other.geom.vertex_hash() && self.members == other.members
    }
}

impl Eq for FlagFamily {}

impl FlagFamily {
    pub fn new(geom: Arc<FlagGeometry>, indices: &[usize]) -> Result<Self> {
        let mut mask = BitSet::new(geom.len());
        for &i in indices {
            if i >= geom.len() {
                return Err(Error::IndexOutOfRange(i));
            }
            if !mask.insert(i) {
                return Err(Error::DuplicateIndex(i));
            }
        }
        Ok(Self::from_mask(geom, mask))
    }

    pub fn empty(geom: Arc<FlagGeometry>) -> Self {
        let mask = BitSet::new(geom.len());
        Self::from_mask(geom, mask)
    }

    pub(crate) fn from_mask(geom: Arc<FlagGeometry>, mask: BitSet) -> Self {
        let members = mask.iter().map(|v| v as u32).collect();
        FlagFamily { geom, members, mask }
    }

    pub fn geometry(&self) -> &Arc<FlagGeometry> {
        &self.geom
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Vertex ids, ascending.
    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn indices(&self) -> Vec<usize> {
        self.members.iter().map(|&v| v as usize).collect()
    }

    pub fn mask(&self) -> &BitSet {
        &self.mask
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.mask.len() && self.mask.contains(v)
    }

    pub fn without(&self, v: usize) -> Self {
        let mut mask = self.mask.clone();
        mask.remove(v);
        Self::from_mask(self.geom.clone(), mask)
    }

    pub fn with(&self, v: usize) -> Self {
        let mut mask = self.mask.clone();
        mask.insert(v);
        Self::from_mask(self.geom.clone(), mask)
    }

    /// Image under `(A, B) ↦ (B^⊥, A^⊥)`.
    pub fn dualize(&self) -> Self {
        let mut mask = BitSet::new(self.geom.len());
        for &v in &self.members {
            mask.insert(self.geom.dual_vertex(v as usize));
        }
        Self::from_mask(self.geom.clone(), mask)
    }

    pub fn to_file(&self) -> FamilyFile {
        FamilyFile {
            n: self.geom.n(),
            q: self.geom.q(),
            vertex_hash: self.geom.vertex_hash().to_string(),
            indices: self.indices(),
        }
    }

    /// Loads a family file, refusing indices recorded against another
    /// enumeration.
    pub fn from_file(geom: Arc<FlagGeometry>, file: &FamilyFile) -> Result<Self> {
        if file.vertex_hash != geom.vertex_hash() {
            return Err(Error::VertexHashMismatch {
                expected: geom.vertex_hash().to_string(),
                got: file.vertex_hash.clone(),
            });
        }
        Self::new(geom, &file.indices)
    }
}

/// On-disk form of a family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFile {
    pub n: usize,
    pub q: u8,
    pub vertex_hash: String,
    pub indices: Vec<usize>,
}
