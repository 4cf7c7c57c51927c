use rayon::prelude::*;
use serde::Serialize;

use super::{is_coclique, FlagFamily};
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::qcount::gauss_u64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Color {
    /// In `[n+1, 1]_q` member flags.
    Red,
    /// In between `1` and `[n, 1]_q` member flags.
    Yellow,
    Unused,
    /// Strictly between yellow and red; impossible for a maximal coclique.
    Irregular,
}

impl Color {
    fn of(count: usize, n: usize, q: u8) -> Color {
        if count == 0 {
            Color::Unused
        } else if count as u64 == gauss_u64(n as i64 + 1, 1, q as u64) {
            Color::Red
        } else if count as u64 <= gauss_u64(n as i64, 1, q as u64) {
            Color::Yellow
        } else {
            Color::Irregular
        }
    }
}

/// The `k` in `1..=n+1` with `count = [k, 1]_q`.
pub fn spectrum_k(count: usize, n: usize, q: u8) -> Option<usize> {
    (1..=n + 1).find(|&k| gauss_u64(k as i64, 1, q as u64) == count as u64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightReport {
    pub space: Subspace,
    /// Number of member flags containing `space`.
    pub count: usize,
    pub k: Option<usize>,
    /// Members whose opposite-side space misses `space`: for an `n`-space
    /// `B` the members `(A', B')` with `A' ∩ B = 0`, dually for `A`.
    pub skew_members: usize,
    /// For `B`: the span of the points `B ∩ B'` over those members. For `A`:
    /// the intersection of the hyperplanes `A + A'`. Absent when there are
    /// no such members.
    pub core: Option<Subspace>,
    /// The count the core forces in a maximal coclique: the number of flags
    /// through `space` compatible with the core.
    pub predicted: usize,
    pub color: Color,
}

impl WeightReport {
    /// Red exactly when every member's opposite-side space meets `space`.
    pub fn all_meet(&self) -> bool {
        self.skew_members == 0
    }
}

/// Weight, core and color of an `n`-space or `(n-1)`-space (vector
/// dimensions `n+1` and `n`) with respect to `fam`.
pub fn classify_space_weight(fam: &FlagFamily, s: &Subspace) -> Result<WeightReport> {
    let geom = fam.geometry();
    let (n, q) = (geom.n(), geom.q());
    if s.q() != q || s.ambient() != geom.ambient() {
        return Err(Error::AmbientMismatch { q1: q, d1: geom.ambient(), q2: s.q(), d2: s.ambient() });
    }
    let table = geom.skew_table();
    let mask = fam.mask();
    let qq = q as u64;
    if s.dim() == n + 1 {
        let b = geom.b_index(s).expect("every n-space is enumerated");
        let count = geom.flags_with_b(b).filter(|&v| mask.contains(v)).count();
        let mut skew_bs: Vec<u32> = fam
            .members()
            .iter()
            .map(|&v| geom.idx(v as usize))
            .filter(|f| table.skew(f.a, b))
            .map(|f| f.b)
            .collect();
        skew_bs.dedup();
        let mut core: Option<Subspace> = None;
        for &b2 in &skew_bs {
            let p = s.meet(&geom.b_spaces()[b2 as usize])?;
            let next = match core {
                None => p,
                Some(c) if c.contains(&p)? => c,
                Some(c) => c.join(&p)?,
            };
            let full = next.dim() == n + 1;
            core = Some(next);
            if full {
                break;
            }
        }
        let predicted = match &core {
            None => gauss_u64(n as i64 + 1, 1, qq),
            Some(c) => gauss_u64((n + 1 - c.dim()) as i64, 1, qq),
        } as usize;
        Ok(WeightReport {
            space: s.clone(),
            count,
            k: spectrum_k(count, n, q),
            skew_members: fam
                .members()
                .iter()
                .filter(|&&v| table.skew(geom.idx(v as usize).a, b))
                .count(),
            core,
            predicted,
            color: Color::of(count, n, q),
        })
    } else if s.dim() == n {
        let a = geom.a_index(s).expect("every (n-1)-space is enumerated");
        let count = geom.flags_with_a(a).iter().filter(|&&v| mask.contains(v as usize)).count();
        let skew: Vec<u32> = fam
            .members()
            .iter()
            .map(|&v| geom.idx(v as usize))
            .filter(|f| table.skew(a, f.b))
            .map(|f| f.a)
            .collect();
        let mut core: Option<Subspace> = None;
        let mut seen = std::collections::HashSet::new();
        for &a2 in &skew {
            if !seen.insert(a2) {
                continue;
            }
            let h = s.join(&geom.a_spaces()[a2 as usize])?;
            let next = match core {
                None => h,
                Some(c) if h.contains(&c)? => c,
                Some(c) => c.meet(&h)?,
            };
            let tight = next.dim() == n;
            core = Some(next);
            if tight {
                break;
            }
        }
        let predicted = match &core {
            None => gauss_u64(n as i64 + 1, 1, qq),
            Some(c) => gauss_u64((c.dim() - n) as i64, 1, qq),
        } as usize;
        Ok(WeightReport {
            space: s.clone(),
            count,
            k: spectrum_k(count, n, q),
            skew_members: skew.len(),
            core,
            predicted,
            color: Color::of(count, n, q),
        })
    } else {
        Err(Error::WrongDimension { expected: format!("{n} or {}", n + 1), got: s.dim() })
    }
}

/// Red and yellow spaces of a family, as indices into the geometry's
/// `(n-1)`-space and `n`-space lists.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ColorMap {
    pub red_b: Vec<u32>,
    pub yellow_b: Vec<u32>,
    pub red_a: Vec<u32>,
    pub yellow_a: Vec<u32>,
}

/// Colors every space occurring in a member flag. A positive count outside
/// `{[k, 1]_q}` means the family is not a maximal coclique and is reported
/// with the offending space.
pub fn color_map(fam: &FlagFamily) -> Result<ColorMap> {
    let geom = fam.geometry();
    let (n, q) = (geom.n(), geom.q());
    let mut a_count = vec![0usize; geom.a_spaces().len()];
    let mut b_count = vec![0usize; geom.b_spaces().len()];
    for &v in fam.members() {
        let f = geom.idx(v as usize);
        a_count[f.a as usize] += 1;
        b_count[f.b as usize] += 1;
    }
    let mut out = ColorMap::default();
    let sides: [(&Vec<usize>, &[Subspace], bool); 2] =
        [(&b_count, geom.b_spaces(), true), (&a_count, geom.a_spaces(), false)];
    for (counts, spaces, is_b) in sides {
        for (i, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if spectrum_k(c, n, q).is_none() {
                return Err(Error::NonMaximalWeightSpectrum { space: spaces[i].to_string(), count: c });
            }
            let list = match (Color::of(c, n, q), is_b) {
                (Color::Red, true) => &mut out.red_b,
                (Color::Red, false) => &mut out.red_a,
                (_, true) => &mut out.yellow_b,
                (_, false) => &mut out.yellow_a,
            };
            list.push(i as u32);
        }
    }
    Ok(out)
}

/// A pair of red `(n-1)`-spaces that are skew, or a pair of red `n`-spaces
/// meeting in a single point, if one exists.
pub fn red_intersection_violation(fam: &FlagFamily) -> Result<Option<(Subspace, Subspace)>> {
    if let Some((v, w)) = is_coclique(fam) {
        return Err(Error::NotACoclique(v, w));
    }
    let geom = fam.geometry();
    let colors = color_map(fam)?;
    let check = |idx: &[u32], spaces: &[Subspace], min_meet: usize| {
        idx.par_iter().enumerate().find_map_first(|(i, &x)| {
            let sx = &spaces[x as usize];
            idx[i + 1..].iter().find_map(|&y| {
                let sy = &spaces[y as usize];
                (sx.meet_dim(sy).expect("same ambient") < min_meet).then(|| (sx.clone(), sy.clone()))
            })
        })
    };
    Ok(check(&colors.red_a, geom.a_spaces(), 1).or_else(|| check(&colors.red_b, geom.b_spaces(), 2)))
}

/// `true` when any two red `(n-1)`-spaces meet and any two red `n`-spaces
/// share at least a line.
pub fn red_intersection_check(fam: &FlagFamily) -> Result<bool> {
    Ok(red_intersection_violation(fam)?.is_none())
}
