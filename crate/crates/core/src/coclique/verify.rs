use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::FlagFamily;
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::geometry::FlagGeometry;

/// The lexicographically first opposite pair `(v, w)`, `v < w`, if any.
pub fn is_coclique(fam: &FlagFamily) -> Option<(usize, usize)> {
    let geom = fam.geometry();
    fam.members().par_iter().find_map_first(|&v| {
        let v = v as usize;
        let mut hit = None;
        geom.for_each_opposite(v, &mut |w| {
            if hit.is_none() && w > v && fam.mask().contains(w) {
                hit = Some((v, w));
            }
        });
        hit
    })
}

/// Union of the opposition neighborhoods of all members.
fn blocked(fam: &FlagFamily) -> BitSet {
    let geom = fam.geometry();
    let len = geom.len();
    fam.members()
        .par_chunks(64)
        .fold(
            || BitSet::new(len),
            |mut acc, chunk| {
                for &v in chunk {
                    geom.for_each_opposite(v as usize, &mut |w| {
                        acc.insert(w);
                    });
                }
                acc
            },
        )
        .reduce(|| BitSet::new(len), |mut a, b| {
            a.union_with(&b);
            a
        })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaximalityReport {
    pub maximal: bool,
    /// Lowest-index flag outside the family that is opposite to no member.
    pub addable: Option<usize>,
    /// Number of such flags.
    pub addable_count: usize,
}

/// Scans every flag outside the family for one that could be added.
pub fn is_maximal_coclique(fam: &FlagFamily) -> Result<MaximalityReport> {
    if let Some((v, w)) = is_coclique(fam) {
        return Err(Error::NotACoclique(v, w));
    }
    let mut free = BitSet::full(fam.geometry().len());
    free.difference_with(&blocked(fam));
    free.difference_with(fam.mask());
    let addable = free.first();
    Ok(MaximalityReport { maximal: addable.is_none(), addable, addable_count: free.count() })
}

/// Adds flags in `order` whenever they are opposite to nothing added so far.
fn closure_in_order(fam: &FlagFamily, order: impl Iterator<Item = usize>) -> Result<FlagFamily> {
    if let Some((v, w)) = is_coclique(fam) {
        return Err(Error::NotACoclique(v, w));
    }
    let geom: &Arc<FlagGeometry> = fam.geometry();
    let mut blocked = blocked(fam);
    let mut mask = fam.mask().clone();
    for v in order {
        if !mask.contains(v) && !blocked.contains(v) {
            mask.insert(v);
            geom.for_each_opposite(v, &mut |w| {
                blocked.insert(w);
            });
        }
    }
    Ok(FlagFamily::from_mask(geom.clone(), mask))
}

/// Repeatedly adds the lowest-index flag opposite to no member. A flag
/// skipped once stays blocked, so one ascending pass reaches the fixpoint.
pub fn greedy_closure(fam: &FlagFamily) -> Result<FlagFamily> {
    closure_in_order(fam, 0..fam.geometry().len())
}

/// Greedy closure in a uniformly random order drawn from `seed`.
pub fn random_closure(fam: &FlagFamily, seed: u64) -> Result<FlagFamily> {
    let mut order: Vec<usize> = (0..fam.geometry().len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    closure_in_order(fam, order.into_iter())
}
