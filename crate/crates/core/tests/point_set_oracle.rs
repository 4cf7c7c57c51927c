//! Cross-checks against a deliberately naive model: over a prime field a
//! subspace is the set of its projective points, spans are closures under
//! addition and scaling, and two spaces meet iff the point sets intersect.
//! Nothing here touches the library's row reduction.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use flaglab::coclique::{
    build_example, color_map, count_flags_skew_to, count_n_spaces_meeting_all, ConstructionSpec,
    Variant,
};
use flaglab::{FlagGeometry, ProjSpace, Subspace};

type Vector = Vec<u8>;
type PointSet = BTreeSet<usize>;

struct Model {
    q: u8,
    d: usize,
    points: Vec<Vector>,
    index: HashMap<Vector, usize>,
}

impl Model {
    fn new(q: u8, d: usize) -> Self {
        let mut points = Vec::new();
        let mut v = vec![0u8; d];
        loop {
            // normalized: first nonzero coordinate is 1
            if let Some(&lead) = v.iter().find(|&&x| x != 0) {
                if lead == 1 {
                    points.push(v.clone());
                }
            }
            let mut i = 0;
            while i < d {
                v[i] += 1;
                if v[i] < q {
                    break;
                }
                v[i] = 0;
                i += 1;
            }
            if i == d {
                break;
            }
        }
        let index = points.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        Model { q, d, points, index }
    }

    fn normalize(&self, v: &[u8]) -> Option<usize> {
        let lead = *v.iter().find(|&&x| x != 0)?;
        let inv = (1..self.q).find(|&c| (c as u32 * lead as u32) % self.q as u32 == 1).unwrap();
        let w: Vector = v.iter().map(|&x| ((x as u32 * inv as u32) % self.q as u32) as u8).collect();
        Some(self.index[&w])
    }

    /// Points of the span of `gens`, by repeated closure.
    fn span(&self, gens: &[Vector]) -> PointSet {
        let mut vectors: BTreeSet<Vector> = BTreeSet::new();
        vectors.insert(vec![0; self.d]);
        for g in gens {
            let current: Vec<Vector> = vectors.iter().cloned().collect();
            for v in current {
                for c in 1..self.q {
                    let w: Vector = v
                        .iter()
                        .zip(g)
                        .map(|(&a, &b)| ((a as u32 + c as u32 * b as u32) % self.q as u32) as u8)
                        .collect();
                    vectors.insert(w);
                }
            }
        }
        vectors.iter().filter_map(|v| self.normalize(v)).collect()
    }

    /// All subspaces with `size` points, as point sets, by growing spans one
    /// point at a time.
    fn spaces_with_points(&self, size: usize) -> BTreeSet<PointSet> {
        let mut level: BTreeSet<PointSet> = BTreeSet::new();
        level.insert(PointSet::new());
        loop {
            if level.iter().next().unwrap().len() == size {
                return level;
            }
            let mut next = BTreeSet::new();
            for s in &level {
                let gens: Vec<Vector> = basis_of(self, s);
                for (p, pv) in self.points.iter().enumerate() {
                    if !s.contains(&p) {
                        let mut g = gens.clone();
                        g.push(pv.clone());
                        next.insert(self.span(&g));
                    }
                }
            }
            level = next;
        }
    }

    fn of(&self, s: &Subspace) -> PointSet {
        let rows: Vec<Vector> = (0..s.dim()).map(|i| s.row(i).to_vec()).collect();
        self.span(&rows)
    }
}

/// Greedy basis of a point set (any maximal independent subset).
fn basis_of(m: &Model, s: &PointSet) -> Vec<Vector> {
    let mut gens: Vec<Vector> = Vec::new();
    let mut covered = PointSet::new();
    for &p in s {
        if !covered.contains(&p) {
            gens.push(m.points[p].clone());
            covered = m.span(&gens);
        }
    }
    gens
}

fn vecs(rows: &[&[u8]]) -> Vec<Vector> {
    rows.iter().map(|r| r.to_vec()).collect()
}

fn skew_lines(m: &Model) -> Vec<PointSet> {
    vec![
        m.span(&vecs(&[&[1, 0, 0, 0, 0], &[0, 1, 0, 0, 0]])),
        m.span(&vecs(&[&[0, 0, 1, 0, 0], &[0, 0, 0, 1, 0]])),
        m.span(&vecs(&[&[1, 0, 1, 0, 0], &[0, 1, 0, 1, 1]])),
    ]
}

fn skew_lines_lib(q: u8) -> Vec<Subspace> {
    [[1u8, 0, 0, 0, 0, 0, 1, 0, 0, 0], [0, 0, 1, 0, 0, 0, 0, 0, 1, 0], [1, 0, 1, 0, 0, 0, 1, 0, 1, 1]]
        .iter()
        .map(|rows| Subspace::span(q, 5, rows).unwrap())
        .collect()
}

/// Planes of PG(4, q) meeting all three lines, counted on point sets.
fn meeting_all(m: &Model) -> usize {
    let planes = m.spaces_with_points(1 + m.q as usize + (m.q as usize).pow(2));
    let lines = skew_lines(m);
    planes.iter().filter(|p| lines.iter().all(|l| !p.is_disjoint(l))).count()
}

// Golden values, frozen from an independent scan before the main build.
const N_MEET_ALL_Q2: u64 = 27;
const N_MEET_ALL_Q3: u64 = 67;
const SKEW_COUNT_YELLOW: usize = 12;

#[test]
fn plane_counts_match_oracle() {
    let m2 = Model::new(2, 5);
    assert_eq!(m2.points.len(), 31);
    assert_eq!(m2.spaces_with_points(3).len(), 155);
    assert_eq!(m2.spaces_with_points(7).len(), 155);
    let m3 = Model::new(3, 5);
    assert_eq!(m3.points.len(), 121);
    // gauss(5, 3, 3)
    assert_eq!(m3.spaces_with_points(13).len(), 1210);
    let geom = FlagGeometry::build(ProjSpace::new(2, 3).unwrap()).unwrap();
    assert_eq!(geom.b_spaces().len(), 1210);
    assert_eq!(geom.len(), 1210 * 13);
}

#[test]
fn meeting_all_lines() {
    for (q, golden) in [(2u8, N_MEET_ALL_Q2), (3, N_MEET_ALL_Q3)] {
        let m = Model::new(q, 5);
        let lines = skew_lines(&m);
        for i in 0..3 {
            for j in i + 1..3 {
                assert!(lines[i].is_disjoint(&lines[j]));
            }
        }
        assert_eq!(meeting_all(&m) as u64, golden, "q={q}");
        let geom = FlagGeometry::build(ProjSpace::new(2, q as u32).unwrap()).unwrap();
        assert_eq!(count_n_spaces_meeting_all(&geom, &skew_lines_lib(q)).unwrap(), golden);
    }
    // bounded growth with exponent n^2 - 1 = 3
    assert!(N_MEET_ALL_Q3 as f64 / 27.0 <= 4.0 * N_MEET_ALL_Q2 as f64 / 8.0);
}

#[test]
fn skew_counts_in_example_family() {
    let m = Model::new(2, 5);
    let geom = Arc::new(FlagGeometry::build(ProjSpace::new(2, 2).unwrap()).unwrap());
    let h = Subspace::coordinate(2, 5, &[0, 1, 2, 3]).unwrap();
    let x = Subspace::coordinate(2, 5, &[0]).unwrap();
    let fam = build_example(&geom, &ConstructionSpec::new(Variant::AI, h.clone(), x.clone())).unwrap();

    // the family by the point-set rule
    let (hp, xp) = (m.of(&h), m.of(&x));
    let flags: Vec<(PointSet, PointSet)> =
        (0..geom.len()).map(|v| (m.of(geom.a_space(v)), m.of(geom.b_space(v)))).collect();
    let members: Vec<usize> = (0..flags.len())
        .filter(|&v| {
            let (a, b) = &flags[v];
            b.is_subset(&hp) || (a.is_subset(&hp) && xp.is_subset(a))
        })
        .collect();
    assert_eq!(members, fam.indices());

    let mut per_b: HashMap<&PointSet, usize> = HashMap::new();
    for &v in &members {
        *per_b.entry(&flags[v].1).or_default() += 1;
    }
    let yellow: Vec<&PointSet> = per_b.iter().filter(|(_, &c)| (1..=3).contains(&c)).map(|(b, _)| *b).collect();
    assert_eq!(yellow.len(), 28);
    let cm = color_map(&fam).unwrap();
    assert_eq!(cm.yellow_b.len(), 28);
    for b in yellow {
        let skew: BTreeSet<&PointSet> =
            members.iter().filter(|&&v| flags[v].0.is_disjoint(b)).map(|&v| &flags[v].1).collect();
        assert_eq!(skew.len(), SKEW_COUNT_YELLOW);
        assert!(skew.len() <= 21);
    }
    for &b in &cm.yellow_b {
        let r = count_flags_skew_to(&fam, &geom.b_spaces()[b as usize]).unwrap();
        assert_eq!(r.count, SKEW_COUNT_YELLOW);
    }
}

#[test]
fn degrees_by_disjointness() {
    for (n, q, sample, degree) in [(1usize, 2u8, 21usize, 8usize), (2, 2, 40, 256)] {
        let m = Model::new(q, 2 * n + 1);
        let geom = FlagGeometry::build(ProjSpace::new(n, q as u32).unwrap()).unwrap();
        let flags: Vec<(PointSet, PointSet)> =
            (0..geom.len()).map(|v| (m.of(geom.a_space(v)), m.of(geom.b_space(v)))).collect();
        let step = (geom.len() / sample).max(1);
        for v in (0..geom.len()).step_by(step) {
            let (a, b) = &flags[v];
            let opposite: Vec<usize> = (0..flags.len())
                .filter(|&w| a.is_disjoint(&flags[w].1) && flags[w].0.is_disjoint(b))
                .collect();
            assert_eq!(opposite.len(), degree);
            let mut lib = Vec::new();
            geom.for_each_opposite(v, &mut |w| lib.push(w));
            assert_eq!(lib, opposite);
        }
    }
}
