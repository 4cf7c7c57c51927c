use rayon::prelude::*;
use serde::Serialize;

use super::{build_example, color_map, is_maximal_coclique, ConstructionSpec, FlagFamily, Variant};
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::qcount::{category_b_bound, category_c_scale, example_family_size, F_UNDEFINED};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Category {
    /// An Example 1 family.
    A,
    /// Contains every flag `(A, B)` with `B ⊆ H` for a hyperplane `H`, or
    /// every flag with `P ⊆ A` for a point `P`, but is no Example 1 family.
    B,
    C,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrichotomyReport {
    pub category: Category,
    /// Recovered anchors (category A).
    pub spec: Option<ConstructionSpec>,
    /// First hyperplane `H` with all flags `B ⊆ H` in the family.
    pub hyperplane: Option<Subspace>,
    /// First point `P` with all flags `P ⊆ A` in the family.
    pub point: Option<Subspace>,
    pub full_hyperplanes: usize,
    pub full_points: usize,
    pub red_n_spaces: usize,
    pub red_n1_spaces: usize,
    pub size: usize,
    pub example_size: String,
    /// Category B ceiling, or an `undefined (...)` marker.
    pub category_b_bound: String,
    /// `q^{n^2+n-2}`.
    pub category_c_scale: String,
}

fn meet_all<'a>(mut it: impl Iterator<Item = &'a Subspace>) -> Option<Subspace> {
    let mut acc = it.next()?.clone();
    for s in it {
        if acc.dim() == 0 {
            break;
        }
        acc = acc.meet(s).expect("same ambient");
    }
    Some(acc)
}

fn join_all<'a>(mut it: impl Iterator<Item = &'a Subspace>) -> Option<Subspace> {
    let mut acc = it.next()?.clone();
    for s in it {
        if !acc.contains(s).expect("same ambient") {
            acc = acc.join(s).expect("same ambient");
        }
    }
    Some(acc)
}

/// Sorts a maximal coclique into the three categories. Example 1 families
/// are recognized by reconstruction: for each hyperplane `H` whose flags
/// `B ⊆ H` all belong to the family, `X` is read off as the intersection
/// (point case) or span (`(2n-2)`-space case) of the `(n-1)`-spaces of the
/// remaining members, the example is rebuilt and compared. Points `P` are
/// handled dually.
pub fn classify_maximal_coclique(fam: &FlagFamily) -> Result<TrichotomyReport> {
    let rep = is_maximal_coclique(fam)?;
    if let Some(w) = rep.addable {
        return Err(Error::NotMaximal(w));
    }
    let geom = fam.geometry();
    let (n, q) = (geom.n(), geom.q());
    let mask = fam.mask();
    let colors = color_map(fam)?;

    let hyperplanes = geom.hyperplanes()?;
    let points = geom.points()?;

    // b_in[h][b]: B ⊆ H
    let b_in: Vec<Vec<bool>> = hyperplanes
        .par_iter()
        .map(|h| geom.b_spaces().iter().map(|b| h.contains(b).expect("same ambient")).collect())
        .collect();
    let full_h: Vec<usize> = (0..hyperplanes.len())
        .filter(|&h| {
            b_in[h].iter().enumerate().all(|(b, &inside)| {
                !inside || geom.flags_with_b(b as u32).all(|v| mask.contains(v))
            })
        })
        .collect();
    let a_through: Vec<Vec<bool>> = points
        .par_iter()
        .map(|p| geom.a_spaces().iter().map(|a| a.contains(p).expect("same ambient")).collect())
        .collect();
    let full_p: Vec<usize> = (0..points.len())
        .filter(|&p| {
            a_through[p].iter().enumerate().all(|(a, &through)| {
                !through || geom.flags_with_a(a as u32).iter().all(|&v| mask.contains(v as usize))
            })
        })
        .collect();

    let mut spec = None;
    'h: for &h in &full_h {
        let outside_a = || {
            fam.members()
                .iter()
                .map(|&v| geom.idx(v as usize))
                .filter(|f| !b_in[h][f.b as usize])
                .map(|f| &geom.a_spaces()[f.a as usize])
        };
        let candidates = [
            meet_all(outside_a()).filter(|x| x.dim() == 1).map(|x| (Variant::AI, x)),
            join_all(outside_a()).filter(|x| x.dim() == 2 * n - 1).map(|x| (Variant::AII, x)),
        ];
        for (variant, x) in candidates.into_iter().flatten() {
            let s = ConstructionSpec::new(variant, hyperplanes[h].clone(), x);
            if s.validate(geom.space()).is_ok() && build_example(geom, &s)? == *fam {
                spec = Some(s);
                break 'h;
            }
        }
    }
    if spec.is_none() {
        'p: for &p in &full_p {
            let outside_b = || {
                fam.members()
                    .iter()
                    .map(|&v| geom.idx(v as usize))
                    .filter(|f| !a_through[p][f.a as usize])
                    .map(|f| &geom.b_spaces()[f.b as usize])
            };
            let candidates = [
                join_all(outside_b()).filter(|x| x.dim() == 2 * n).map(|x| (Variant::BI, x)),
                meet_all(outside_b()).filter(|x| x.dim() == 2).map(|x| (Variant::BII, x)),
            ];
            for (variant, x) in candidates.into_iter().flatten() {
                let s = ConstructionSpec::new(variant, points[p].clone(), x);
                if s.validate(geom.space()).is_ok() && build_example(geom, &s)? == *fam {
                    spec = Some(s);
                    break 'p;
                }
            }
        }
    }

    let category = if spec.is_some() {
        Category::A
    } else if !full_h.is_empty() || !full_p.is_empty() {
        Category::B
    } else {
        Category::C
    };
    let qq = q as u64;
    Ok(TrichotomyReport {
        category,
        spec,
        hyperplane: full_h.first().map(|&h| hyperplanes[h].clone()),
        point: full_p.first().map(|&p| points[p].clone()),
        full_hyperplanes: full_h.len(),
        full_points: full_p.len(),
        red_n_spaces: colors.red_b.len(),
        red_n1_spaces: colors.red_a.len(),
        size: fam.len(),
        example_size: example_family_size(n, qq).to_string(),
        category_b_bound: category_b_bound(n, qq)
            .map(|v| v.to_string())
            .unwrap_or_else(|_| F_UNDEFINED.to_string()),
        category_c_scale: category_c_scale(n, qq).to_string(),
    })
}
