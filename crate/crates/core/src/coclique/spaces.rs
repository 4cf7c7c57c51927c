use serde::Serialize;

use super::{classify_space_weight, Color, FlagFamily};
use crate::error::{Error, Result};
use crate::geometry::FlagGeometry;
use crate::graph::SubGraph;
use crate::linalg::Subspace;
use crate::qcount::{f_bound, gauss, pencil_threshold, F_UNDEFINED};
use crate::search::{max_coclique_exact, max_coclique_heuristic, ExactOptions, Status};

fn check_uniform(c: &[Subspace]) -> Result<()> {
    let Some(first) = c.first() else { return Ok(()) };
    for s in c {
        if s.q() != first.q() || s.ambient() != first.ambient() {
            return Err(Error::AmbientMismatch {
                q1: first.q(),
                d1: first.ambient(),
                q2: s.q(),
                d2: s.ambient(),
            });
        }
        if s.dim() != first.dim() {
            return Err(Error::MixedDimensions);
        }
    }
    Ok(())
}

/// The two spaces meet in as little as their dimensions allow: skew for
/// `(n-1)`-spaces of `PG(2n, q)`, a single point for `n`-spaces.
pub fn in_general_position(s: &Subspace, t: &Subspace) -> bool {
    let least = (s.dim() + t.dim()).saturating_sub(s.ambient());
    s.meet_dim(t).expect("same ambient") == least
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntersectMode {
    /// Common point only.
    PointPencil,
    /// Common point, or a common hyperplane of the container.
    PointOrHyperplane,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectingReport {
    pub size: usize,
    /// Intersection of all members, when nonzero.
    pub common_point: Option<Subspace>,
    /// Span of all members, when it is a proper subspace of the container
    /// (hyperplane mode only).
    pub common_hyperplane: Option<Subspace>,
    pub anchor_found: bool,
    /// Size threshold of the matching dichotomy, decimal or an
    /// `undefined (...)` marker.
    pub threshold: String,
}

/// Checks that the members pairwise meet, then looks for a common point
/// (and in hyperplane mode a proper common span inside `within`, default
/// the whole space). The threshold is `[2n, n-1]_q - q^{n(n-1)} [n, 1]_q` in
/// pencil mode and `f(n, q)` otherwise, `n` the members' vector dimension.
pub fn analyze_intersecting_family(
    c: &[Subspace],
    mode: IntersectMode,
    within: Option<&Subspace>,
) -> Result<IntersectingReport> {
    check_uniform(c)?;
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            if c[i].meet_dim(&c[j])? == 0 {
                return Err(Error::NotIntersecting(i, j));
            }
        }
    }
    let Some(first) = c.first() else {
        return Ok(IntersectingReport {
            size: 0,
            common_point: None,
            common_hyperplane: None,
            anchor_found: false,
            threshold: String::new(),
        });
    };
    let mut meet = first.clone();
    let mut span = first.clone();
    for s in &c[1..] {
        if meet.dim() > 0 {
            meet = meet.meet(s)?;
        }
        span = span.join(s)?;
    }
    let common_point = (meet.dim() > 0).then_some(meet);
    let n = first.dim();
    let q = first.q() as u64;
    let (common_hyperplane, threshold) = match mode {
        IntersectMode::PointPencil => (None, pencil_threshold(n, q).to_string()),
        IntersectMode::PointOrHyperplane => {
            let container_dim = within.map_or(first.ambient(), Subspace::dim);
            let hyper = (span.dim() < container_dim).then_some(span);
            let f = f_bound(n, q).map(|v| v.to_string()).unwrap_or_else(|_| F_UNDEFINED.to_string());
            (hyper, f)
        }
    };
    Ok(IntersectingReport {
        size: c.len(),
        anchor_found: common_point.is_some() || common_hyperplane.is_some(),
        common_point,
        common_hyperplane,
        threshold,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkewSearch {
    /// Indices into the input of `target` members pairwise in general
    /// position.
    pub found: Option<Vec<usize>>,
    /// Largest such set seen.
    pub best: Vec<usize>,
    /// Set when the exact search proved `best` maximum.
    pub certified_max: Option<usize>,
    /// `(target - 1) [2n, n-1]_q` when no set was found and the members are
    /// `(n-1)`-spaces of `PG(2n, q)`.
    pub matching_bound: Option<String>,
    pub within_matching_bound: Option<bool>,
}

/// Searches for `target` members pairwise in general position: exactly
/// when there are at most `exact_limit` members, otherwise by seeded
/// local search with restarts.
pub fn max_skew_subfamily(c: &[Subspace], target: usize, exact_limit: usize) -> Result<SkewSearch> {
    check_uniform(c)?;
    let mut conflicts = Vec::new();
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            if !in_general_position(&c[i], &c[j]) {
                conflicts.push((i, j));
            }
        }
    }
    let g = SubGraph::from_edges(c.len(), &conflicts)?;
    let (best, certified) = if c.len() <= exact_limit {
        let opts = ExactOptions { target: Some(target), ..Default::default() };
        let r = max_coclique_exact(&g, &opts, None)?;
        let certified = (r.status == Status::Optimal).then_some(r.size);
        (r.set, certified)
    } else {
        let mut best = Vec::new();
        for seed in 0..8 {
            let r = max_coclique_heuristic(&g, seed, None, 200)?;
            if r.size > best.len() {
                best = r.set;
            }
            if best.len() >= target {
                break;
            }
        }
        (best, None)
    };
    let found = (best.len() >= target).then(|| best[..target].to_vec());
    let (matching_bound, within) = match c.first() {
        Some(s) if found.is_none() && s.ambient() == 2 * s.dim() + 1 => {
            let n = s.dim() as i64;
            let bound = gauss(2 * n, n - 1, s.q() as u64) * (target.saturating_sub(1) as u64);
            let within = num_bigint::BigUint::from(c.len()) <= bound;
            (Some(bound.to_string()), Some(within))
        }
        _ => (None, None),
    };
    Ok(SkewSearch { found, best, certified_max: certified, matching_bound, within_matching_bound: within })
}

/// Number of `n`-spaces meeting each of `n+1` pairwise skew
/// `(n-1)`-spaces.
pub fn count_n_spaces_meeting_all(geom: &FlagGeometry, a_list: &[Subspace]) -> Result<u64> {
    let n = geom.n();
    if a_list.len() != n + 1 {
        return Err(Error::Arity { expected: n + 1, got: a_list.len() });
    }
    let mut idx = Vec::with_capacity(a_list.len());
    for a in a_list {
        if a.q() != geom.q() || a.ambient() != geom.ambient() {
            return Err(Error::AmbientMismatch { q1: geom.q(), d1: geom.ambient(), q2: a.q(), d2: a.ambient() });
        }
        if a.dim() != n {
            return Err(Error::WrongDimension { expected: n.to_string(), got: a.dim() });
        }
        idx.push(geom.a_index(a).expect("every (n-1)-space is enumerated"));
    }
    for i in 0..a_list.len() {
        for j in i + 1..a_list.len() {
            if a_list[i].meet_dim(&a_list[j])? != 0 {
                return Err(Error::NotPairwiseSkew(i, j));
            }
        }
    }
    let t = geom.skew_table();
    let nb = geom.b_spaces().len();
    let mut skew_to_some = vec![0u64; t.row_for_a(idx[0]).len()];
    for &a in &idx {
        for (acc, w) in skew_to_some.iter_mut().zip(t.row_for_a(a)) {
            *acc |= w;
        }
    }
    let skew: u64 = skew_to_some.iter().map(|w| w.count_ones() as u64).sum();
    Ok(nb as u64 - skew)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkewCount {
    /// Distinct `n`-spaces `B'` of members `(A', B')` with `A' ∩ B = 0`.
    pub count: usize,
    pub color: Color,
    /// `false` when `B` is red, outside the setting where the count is
    /// expected to be small.
    pub yellow: bool,
}

pub fn count_flags_skew_to(fam: &FlagFamily, b: &Subspace) -> Result<SkewCount> {
    let geom = fam.geometry();
    let n = geom.n();
    if b.dim() != n + 1 {
        return Err(Error::WrongDimension { expected: (n + 1).to_string(), got: b.dim() });
    }
    let w = classify_space_weight(fam, b)?;
    if w.count == 0 {
        return Err(Error::SpaceNotInFamily(b.to_string()));
    }
    let bi = geom.b_index(b).expect("enumerated");
    let t = geom.skew_table();
    let mut bs: Vec<u32> = fam
        .members()
        .iter()
        .map(|&v| geom.idx(v as usize))
        .filter(|f| t.skew(f.a, bi))
        .map(|f| f.b)
        .collect();
    bs.dedup();
    Ok(SkewCount { count: bs.len(), color: w.color, yellow: w.color == Color::Yellow })
}
