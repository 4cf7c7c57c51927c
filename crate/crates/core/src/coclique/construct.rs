use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::FlagFamily;
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::geometry::{FlagGeometry, ProjSpace};
use crate::linalg::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    /// Hyperplane `H`, point `X` in `H`.
    #[serde(rename = "a_i")]
    AI,
    /// Hyperplane `H`, `(2n-2)`-space `X` in `H`.
    #[serde(rename = "a_ii")]
    AII,
    /// Point `P`, hyperplane `X` through `P`.
    #[serde(rename = "b_i")]
    BI,
    /// Point `P`, line `X` through `P`.
    #[serde(rename = "b_ii")]
    BII,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::AI, Variant::AII, Variant::BI, Variant::BII];

    pub fn name(self) -> &'static str {
        match self {
            Variant::AI => "a_i",
            Variant::AII => "a_ii",
            Variant::BI => "b_i",
            Variant::BII => "b_ii",
        }
    }

    pub fn is_hyperplane_type(self) -> bool {
        matches!(self, Variant::AI | Variant::AII)
    }

    /// Vector dimensions of `(anchor1, anchor2)` in `GF(q)^{2n+1}`.
    pub fn anchor_dims(self, n: usize) -> (usize, usize) {
        match self {
            Variant::AI => (2 * n, 1),
            Variant::AII => (2 * n, 2 * n - 1),
            Variant::BI => (1, 2 * n),
            Variant::BII => (1, 2),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown variant {s:?} (a_i, a_ii, b_i, b_ii)")))
    }
}

/// The data of one Example 1 family: `anchor1` is `H` (a-variants) or `P`
/// (b-variants), `anchor2` is `X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub variant: Variant,
    pub anchor1: Subspace,
    pub anchor2: Subspace,
}

fn random_vector<R: Rng + ?Sized>(q: u8, len: usize, rng: &mut R) -> Vec<u8> {
    loop {
        let v: Vec<u8> = (0..len).map(|_| rng.gen_range(0..q)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

/// A uniformly random point of `s`.
fn random_point_in<R: Rng + ?Sized>(s: &Subspace, rng: &mut R) -> Subspace {
    s.from_coordinates(&random_vector(s.q(), s.dim(), rng))
}

/// A uniformly random hyperplane of `s`.
fn random_hyperplane_in<R: Rng + ?Sized>(s: &Subspace, rng: &mut R) -> Subspace {
    let k = s.dim();
    let w = Subspace::span(s.q(), k, &random_vector(s.q(), k, rng)).expect("nonzero vector");
    s.from_coordinates(w.ortho_complement().rows())
}

impl ConstructionSpec {
    pub fn new(variant: Variant, anchor1: Subspace, anchor2: Subspace) -> Self {
        ConstructionSpec { variant, anchor1, anchor2 }
    }

    /// Random anchors of the required shape.
    pub fn random<R: Rng + ?Sized>(ps: ProjSpace, variant: Variant, rng: &mut R) -> Self {
        let full = Subspace::full(ps.q(), ps.ambient());
        let (a1, a2) = match variant {
            Variant::AI | Variant::AII => {
                let h = random_hyperplane_in(&full, rng);
                let x = if variant == Variant::AI {
                    random_point_in(&h, rng)
                } else {
                    random_hyperplane_in(&h, rng)
                };
                (h, x)
            }
            Variant::BI => {
                let p = random_point_in(&full, rng);
                let x = random_point_in(&p.ortho_complement(), rng).ortho_complement();
                (p, x)
            }
            Variant::BII => {
                let p = random_point_in(&full, rng);
                let x = loop {
                    let y = random_point_in(&full, rng);
                    if y != p {
                        break p.join(&y).expect("same ambient");
                    }
                };
                (p, x)
            }
        };
        ConstructionSpec { variant, anchor1: a1, anchor2: a2 }
    }

    /// Checks shapes and the incidence between the anchors.
    pub fn validate(&self, ps: ProjSpace) -> Result<()> {
        for s in [&self.anchor1, &self.anchor2] {
            if s.q() != ps.q() || s.ambient() != ps.ambient() {
                return Err(Error::AmbientMismatch {
                    q1: ps.q(),
                    d1: ps.ambient(),
                    q2: s.q(),
                    d2: s.ambient(),
                });
            }
        }
        let (d1, d2) = self.variant.anchor_dims(ps.n());
        if self.anchor1.dim() != d1 || self.anchor2.dim() != d2 {
            return Err(Error::SpecIncidenceViolation(format!(
                "{} needs anchors of vector dimension {d1} and {d2}, got {} and {}",
                self.variant,
                self.anchor1.dim(),
                self.anchor2.dim()
            )));
        }
        let incident = if self.variant.is_hyperplane_type() {
            self.anchor1.contains(&self.anchor2)?
        } else {
            self.anchor2.contains(&self.anchor1)?
        };
        if !incident {
            return Err(Error::SpecIncidenceViolation(format!(
                "{} and {} are not incident",
                self.anchor1, self.anchor2
            )));
        }
        Ok(())
    }
}

/// All flags satisfying the Example 1 membership rule:
///
/// - (a) `B ⊆ H`, or `A` is incident with both `X` and `H`;
/// - (b) `P ⊆ A`, or `B` is incident with both `X` and `P`.
pub fn build_example(geom: &Arc<FlagGeometry>, spec: &ConstructionSpec) -> Result<FlagFamily> {
    spec.validate(geom.space())?;
    let (anchor, x) = (&spec.anchor1, &spec.anchor2);
    let contains = |outer: &Subspace, inner: &Subspace| outer.contains(inner).expect("same ambient");
    let (a_ok, b_ok): (Vec<bool>, Vec<bool>) = match spec.variant {
        Variant::AI | Variant::AII => {
            let a_ok = geom
                .a_spaces()
                .par_iter()
                .map(|a| {
                    contains(anchor, a)
                        && if spec.variant == Variant::AI { contains(a, x) } else { contains(x, a) }
                })
                .collect();
            let b_ok = geom.b_spaces().par_iter().map(|b| contains(anchor, b)).collect();
            (a_ok, b_ok)
        }
        Variant::BI | Variant::BII => {
            let a_ok = geom.a_spaces().par_iter().map(|a| contains(a, anchor)).collect();
            let b_ok = geom
                .b_spaces()
                .par_iter()
                .map(|b| {
                    contains(b, anchor)
                        && if spec.variant == Variant::BI { contains(x, b) } else { contains(b, x) }
                })
                .collect();
            (a_ok, b_ok)
        }
    };
    let mut mask = BitSet::new(geom.len());
    for (v, f) in geom.flag_indices().iter().enumerate() {
        if a_ok[f.a as usize] || b_ok[f.b as usize] {
            mask.insert(v);
        }
    }
    Ok(FlagFamily::from_mask(geom.clone(), mask))
}
