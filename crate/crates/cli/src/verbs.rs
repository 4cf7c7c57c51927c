use std::collections::BTreeMap;
use std::fs;
use std::io::{self, BufWriter, Read};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use flaglab::cache::{load_or_enumerate, CacheStatus};
use flaglab::coclique::{
    build_example, classify_maximal_coclique, classify_space_weight, color_map, count_flags_skew_to,
    count_n_spaces_meeting_all, is_coclique, is_maximal_coclique, red_intersection_violation, Color,
    ConstructionSpec, FamilyFile, FlagFamily, TrichotomyReport, Variant,
};
use flaglab::graph::{degree_histogram, FlagGraph, SubGraph};
use flaglab::qcount::{
    category_b_bound, category_c_scale, example_family_size, formula_bundle, gamma_degree, gauss,
    pencil_threshold, QFormulaReport, F_UNDEFINED,
};
use flaglab::search::{find_conflict, max_coclique_exact, max_coclique_heuristic, ExactOptions, SearchResult, Status};
use flaglab::{FlagGeometry, ProjSpace, Subspace};
use num_bigint::BigUint;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{Command, FamilyInput, Global, Method, Oracle, SearchArgs, VariantArg};
use crate::report::{emit, CliError, CliResult, Header, Table};

/// Whether every mathematical check of the verb passed.
pub type Passed = bool;

pub fn run(g: &Global, cmd: &Command) -> CliResult<Passed> {
    match cmd {
        Command::Formulas => formulas(g),
        Command::Enumerate { k, list } => enumerate(g, *k, *list),
        Command::Graph { mode, dimacs } => graph(g, (*mode).into(), dimacs.as_deref()),
        Command::Construct { variant, random_anchors, anchors } => {
            construct(g, *variant, *random_anchors, anchors.as_deref())
        }
        Command::Verify { input, maximal } => verify(g, input, *maximal),
        Command::Classify { input } => classify(g, input),
        Command::Oracle(Oracle::Lemma43 { skew_lines }) => lemma43(g, skew_lines.as_deref()),
        Command::Oracle(Oracle::Lemma44 { input, space }) => lemma44(g, input, space.as_deref()),
        Command::Oracle(Oracle::Weights { input }) => weights(g, input),
        Command::Search(args) => search(g, args),
    }
}

fn space(g: &Global) -> CliResult<ProjSpace> {
    match (g.n, g.q) {
        (Some(n), Some(q)) => Ok(ProjSpace::new(n, q)?),
        _ => Err(CliError::Usage("--n and --q are required".into())),
    }
}

pub fn cache_dir(g: &Global) -> PathBuf {
    g.cache_dir
        .clone()
        .or_else(|| dirs::cache_dir().map(|d| d.join("flaglab")))
        .unwrap_or_else(|| std::env::temp_dir().join("flaglab-cache"))
}

fn geometry(g: &Global, ps: ProjSpace) -> CliResult<Arc<FlagGeometry>> {
    Ok(Arc::new(FlagGeometry::build_cached(ps, &cache_dir(g))?))
}

fn read_input(path: &Path) -> CliResult<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
    }
}

fn read_family_file(g: &Global, path: &Path) -> CliResult<FamilyFile> {
    let file: FamilyFile = serde_json::from_str(&read_input(path)?)?;
    if g.n.is_some_and(|n| n != file.n) || g.q.is_some_and(|q| q != file.q as u32) {
        return Err(CliError::Usage(format!(
            "family is for n={}, q={} but --n/--q say otherwise",
            file.n, file.q
        )));
    }
    Ok(file)
}

fn read_family(g: &Global, input: &FamilyInput) -> CliResult<FlagFamily> {
    let file = read_family_file(g, &input.input)?;
    let geom = geometry(g, ProjSpace::new(file.n, file.q as u32)?)?;
    Ok(FlagFamily::from_file(geom, &file)?)
}

fn header(verb: &str, ps: Option<ProjSpace>, hash: Option<&str>, seed: Option<u64>) -> Header {
    Header::new(verb, ps.map(|p| p.n()), ps.map(|p| p.q()), hash, seed)
}

fn family_header(verb: &str, fam: &FlagFamily, seed: Option<u64>) -> Header {
    let geom = fam.geometry();
    header(verb, Some(geom.space()), Some(geom.vertex_hash()), seed)
}

#[derive(Serialize)]
struct FormulasBody {
    values: BTreeMap<String, String>,
    formulas: Vec<QFormulaReport>,
    consistent: bool,
}

fn formulas(g: &Global) -> CliResult<Passed> {
    let ps = space(g)?;
    let (n, q) = (ps.n(), ps.q() as u64);
    let mut formulas = formula_bundle(n, q);
    formulas.push(QFormulaReport::new(
        "pencil_threshold",
        &[("n", n as i64), ("q", q as i64)],
        pencil_threshold(n, q),
    ));
    formulas.push(QFormulaReport::new(
        "category_b_bound",
        &[("n", n as i64), ("q", q as i64)],
        category_b_bound(n, q).map(|v| v.to_string()).unwrap_or_else(|_| F_UNDEFINED.to_string()),
    ));
    formulas.push(QFormulaReport::new(
        "category_c_scale",
        &[("n", n as i64), ("q", q as i64)],
        category_c_scale(n, q),
    ));
    let values = formulas
        .iter()
        .filter(|r| r.name != "gauss")
        .map(|r| (r.name.clone(), r.value.clone()))
        .collect();
    let consistent = formulas.iter().all(QFormulaReport::consistent);
    let table = Table {
        columns: vec!["name", "params", "value"],
        rows: formulas
            .iter()
            .map(|r| {
                let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                vec![r.name.clone(), params.join(";"), r.value.clone()]
            })
            .collect(),
    };
    let body = FormulasBody { values, formulas, consistent };
    emit(g, &header("formulas", Some(ps), None, g.seed), &body, Some(table))?;
    Ok(consistent)
}

#[derive(Serialize)]
struct Level {
    k: usize,
    count: String,
    expected: String,
    matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    spaces: Option<Vec<Subspace>>,
}

#[derive(Serialize)]
struct EnumerateBody {
    levels: Vec<Level>,
    #[serde(skip_serializing_if = "Option::is_none")]
    flags: Option<Level>,
}

fn enumerate(g: &Global, k: Option<usize>, list: bool) -> CliResult<Passed> {
    let ps = space(g)?;
    let (n, q, d) = (ps.n(), ps.q(), ps.ambient());
    let ks = match k {
        Some(k) if k > d => return Err(CliError::Usage(format!("--k must be at most {d}"))),
        Some(k) => vec![k],
        None => vec![n, n + 1],
    };
    let dir = cache_dir(g);
    let mut levels = Vec::new();
    for k in ks {
        let (spaces, status) = load_or_enumerate(&dir, q, d, k)?;
        let word = if status == CacheStatus::Hit { "hit" } else { "written" };
        eprintln!("cache {word}: k={k} in {}", dir.display());
        let expected = gauss(d as i64, k as i64, q as u64);
        levels.push(Level {
            k,
            count: spaces.len().to_string(),
            expected: expected.to_string(),
            matches: expected == spaces.len().into(),
            spaces: list.then_some(spaces),
        });
    }
    let (flags, hash) = if k.is_none() {
        let geom = geometry(g, ps)?;
        let expected = gauss(d as i64, n as i64 + 1, q as u64) * gauss(n as i64 + 1, 1, q as u64);
        let level = Level {
            k: n + 1,
            count: geom.len().to_string(),
            expected: expected.to_string(),
            matches: expected == geom.len().into(),
            spaces: None,
        };
        (Some(level), Some(geom.vertex_hash().to_string()))
    } else {
        (None, None)
    };
    let passed = levels.iter().chain(&flags).all(|l| l.matches);
    let table = Table {
        columns: vec!["what", "k", "count", "expected"],
        rows: levels
            .iter()
            .map(|l| ("subspaces", l))
            .chain(flags.iter().map(|l| ("flags", l)))
            .map(|(what, l)| vec![what.into(), l.k.to_string(), l.count.clone(), l.expected.clone()])
            .collect(),
    };
    let body = EnumerateBody { levels, flags };
    emit(g, &header("enumerate", Some(ps), hash.as_deref(), g.seed), &body, Some(table))?;
    Ok(passed)
}

#[derive(Serialize)]
struct Bucket {
    degree: String,
    count: String,
}

#[derive(Serialize)]
struct GraphBody {
    mode: flaglab::graph::Mode,
    vertices: String,
    edges: String,
    expected_degree: String,
    histogram: Vec<Bucket>,
    regular: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    dimacs: Option<String>,
}

fn graph(g: &Global, mode: flaglab::graph::Mode, dimacs: Option<&Path>) -> CliResult<Passed> {
    let ps = space(g)?;
    let geom = geometry(g, ps)?;
    let graph = FlagGraph::build(geom.clone(), mode, g.memory_budget)?;
    let hist = degree_histogram(&graph);
    let edges: u64 = hist.iter().map(|(&d, &c)| (d * c) as u64).sum::<u64>() / 2;
    let expected = gamma_degree(ps.n(), ps.q() as u64);
    let regular = hist.len() == 1 && hist.keys().all(|&d| expected == d.into());
    if let Some(path) = dimacs {
        graph.export_dimacs(&mut BufWriter::new(fs::File::create(path)?))?;
    }
    let histogram: Vec<Bucket> =
        hist.iter().map(|(d, c)| Bucket { degree: d.to_string(), count: c.to_string() }).collect();
    let table = Table {
        columns: vec!["degree", "count"],
        rows: histogram.iter().map(|b| vec![b.degree.clone(), b.count.clone()]).collect(),
    };
    let body = GraphBody {
        mode,
        vertices: geom.len().to_string(),
        edges: edges.to_string(),
        expected_degree: expected.to_string(),
        histogram,
        regular,
        dimacs: dimacs.map(|p| p.display().to_string()),
    };
    emit(g, &header("graph", Some(ps), Some(geom.vertex_hash()), g.seed), &body, Some(table))?;
    Ok(regular)
}

#[derive(Serialize)]
struct ConstructBody {
    spec: ConstructionSpec,
    size: String,
    expected_size: String,
    size_matches: bool,
    indices: Vec<usize>,
}

fn construct(g: &Global, variant: VariantArg, random: bool, anchors: Option<&Path>) -> CliResult<Passed> {
    let ps = space(g)?;
    let variant: Variant = variant.into();
    let spec = match (random, anchors) {
        (true, _) => {
            let seed = g.seed.ok_or_else(|| CliError::Usage("--random-anchors needs --seed".into()))?;
            ConstructionSpec::random(ps, variant, &mut ChaCha8Rng::seed_from_u64(seed))
        }
        (false, Some(path)) => {
            let spec: ConstructionSpec = serde_json::from_str(&read_input(path)?)?;
            if spec.variant != variant {
                return Err(CliError::Usage(format!(
                    "anchor file is for {} but --variant is {variant}",
                    spec.variant
                )));
            }
            spec
        }
        (false, None) => return Err(CliError::Usage("give --random-anchors or --anchors".into())),
    };
    let geom = geometry(g, ps)?;
    let fam = build_example(&geom, &spec)?;
    let expected = example_family_size(ps.n(), ps.q() as u64);
    let size_matches = expected == fam.len().into();
    let body = ConstructBody {
        spec,
        size: fam.len().to_string(),
        expected_size: expected.to_string(),
        size_matches,
        indices: fam.indices(),
    };
    emit(g, &family_header("construct", &fam, g.seed), &body, None)?;
    Ok(size_matches)
}

#[derive(Serialize)]
struct VerifyBody {
    size: String,
    coclique: bool,
    conflict: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    maximal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    addable: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    addable_count: Option<String>,
}

fn verify(g: &Global, input: &FamilyInput, check_maximal: bool) -> CliResult<Passed> {
    let fam = read_family(g, input)?;
    let conflict = is_coclique(&fam);
    let rep = if check_maximal && conflict.is_none() { Some(is_maximal_coclique(&fam)?) } else { None };
    let passed = conflict.is_none() && (!check_maximal || rep.as_ref().is_some_and(|r| r.maximal));
    let body = VerifyBody {
        size: fam.len().to_string(),
        coclique: conflict.is_none(),
        conflict,
        maximal: rep.as_ref().map(|r| r.maximal),
        addable: rep.as_ref().and_then(|r| r.addable),
        addable_count: rep.as_ref().map(|r| r.addable_count.to_string()),
    };
    emit(g, &family_header("verify", &fam, g.seed), &body, None)?;
    Ok(passed)
}

#[derive(Serialize)]
struct ClassifyBody {
    size: String,
    coclique: bool,
    conflict: Option<(usize, usize)>,
    maximal: bool,
    addable: Option<usize>,
    trichotomy: Option<TrichotomyReport>,
    red_intersection: Option<bool>,
}

fn classify(g: &Global, input: &FamilyInput) -> CliResult<Passed> {
    let fam = read_family(g, input)?;
    let conflict = is_coclique(&fam);
    let mut body = ClassifyBody {
        size: fam.len().to_string(),
        coclique: conflict.is_none(),
        conflict,
        maximal: false,
        addable: None,
        trichotomy: None,
        red_intersection: None,
    };
    if conflict.is_none() {
        let rep = is_maximal_coclique(&fam)?;
        body.maximal = rep.maximal;
        body.addable = rep.addable;
        if rep.maximal {
            body.trichotomy = Some(classify_maximal_coclique(&fam)?);
            body.red_intersection = Some(red_intersection_violation(&fam)?.is_none());
        }
    }
    let passed = body.maximal && body.red_intersection == Some(true);
    emit(g, &family_header("classify", &fam, g.seed), &body, None)?;
    Ok(passed)
}

/// Three pairwise skew lines of `PG(4, q)`: `<e1,e2>`, `<e3,e4>`,
/// `<e1+e3, e2+e4+e5>`.
fn default_skew_lines(q: u8) -> CliResult<Vec<Subspace>> {
    let rows: [[u8; 10]; 3] = [
        [1, 0, 0, 0, 0, 0, 1, 0, 0, 0],
        [0, 0, 1, 0, 0, 0, 0, 0, 1, 0],
        [1, 0, 1, 0, 0, 0, 1, 0, 1, 1],
    ];
    Ok(rows.iter().map(|r| Subspace::span(q, 5, r)).collect::<Result<_, _>>()?)
}

/// Exact counts for the default lines, from an independent point-set scan.
fn lemma43_golden(q: u8) -> Option<u64> {
    match q {
        2 => Some(27),
        3 => Some(67),
        _ => None,
    }
}

#[derive(Serialize)]
struct Lemma43Body {
    lines: Vec<Subspace>,
    count: String,
    golden: Option<String>,
    matches_golden: Option<bool>,
    growth_exponent: usize,
    growth_scale: String,
    normalized: f64,
}

fn lemma43(g: &Global, skew_lines: Option<&Path>) -> CliResult<Passed> {
    let ps = space(g)?;
    let (lines, golden) = match skew_lines {
        Some(path) => (serde_json::from_str::<Vec<Subspace>>(&read_input(path)?)?, None),
        None if ps.n() == 2 => (default_skew_lines(ps.q())?, lemma43_golden(ps.q())),
        None => return Err(CliError::Usage("--skew-lines is required unless n = 2".into())),
    };
    let geom = geometry(g, ps)?;
    let count = count_n_spaces_meeting_all(&geom, &lines)?;
    let exponent = ps.n() * ps.n() - 1;
    let scale = (ps.q() as f64).powi(exponent as i32);
    let matches_golden = golden.map(|v| v == count);
    let body = Lemma43Body {
        lines,
        count: count.to_string(),
        golden: golden.map(|v| v.to_string()),
        matches_golden,
        growth_exponent: exponent,
        growth_scale: BigUint::from(ps.q()).pow(exponent as u32).to_string(),
        normalized: count as f64 / scale,
    };
    emit(g, &header("oracle lemma43", Some(ps), Some(geom.vertex_hash()), g.seed), &body, None)?;
    Ok(matches_golden != Some(false))
}

#[derive(Serialize)]
struct SkewEntry {
    space: Subspace,
    count: String,
    color: Color,
    within_bound: bool,
}

#[derive(Serialize)]
struct Lemma44Body {
    bound: String,
    entries: Vec<SkewEntry>,
    max_yellow: Option<String>,
    all_within_bound: bool,
}

fn lemma44(g: &Global, input: &FamilyInput, only: Option<&str>) -> CliResult<Passed> {
    let fam = read_family(g, input)?;
    let geom = fam.geometry().clone();
    let (n, q) = (geom.n() as i64, geom.q() as u64);
    let bound = gauss(n, 1, q) * gauss(2 * n - 1, n - 1, q);
    let spaces: Vec<Subspace> = match only {
        Some(s) => vec![s.parse::<Subspace>()?],
        None => color_map(&fam)?.yellow_b.iter().map(|&b| geom.b_spaces()[b as usize].clone()).collect(),
    };
    let entries: Vec<SkewEntry> = spaces
        .into_par_iter()
        .map(|b| {
            let r = count_flags_skew_to(&fam, &b)?;
            Ok(SkewEntry { within_bound: bound >= r.count.into(), space: b, count: r.count.to_string(), color: r.color })
        })
        .collect::<flaglab::Result<_>>()?;
    let yellow = || entries.iter().filter(|e| e.color == Color::Yellow);
    let max_yellow = yellow().map(|e| e.count.parse::<usize>().expect("decimal")).max();
    let all_within_bound = yellow().all(|e| e.within_bound);
    let table = Table {
        columns: vec!["space", "count", "color", "within_bound"],
        rows: entries
            .iter()
            .map(|e| vec![e.space.to_string(), e.count.clone(), format!("{:?}", e.color), e.within_bound.to_string()])
            .collect(),
    };
    let body = Lemma44Body {
        bound: bound.to_string(),
        entries,
        max_yellow: max_yellow.map(|m| m.to_string()),
        all_within_bound,
    };
    emit(g, &family_header("oracle lemma44", &fam, g.seed), &body, Some(table))?;
    Ok(all_within_bound)
}

#[derive(Serialize)]
struct WeightEntry {
    side: &'static str,
    space: Subspace,
    count: String,
    k: Option<usize>,
    predicted: String,
    color: Color,
    all_meet: bool,
    core: Option<Subspace>,
    consistent: bool,
}

#[derive(Serialize)]
struct WeightsBody {
    entries: Vec<WeightEntry>,
    violations: String,
    red_n_spaces: String,
    yellow_n_spaces: String,
    red_n1_spaces: String,
    yellow_n1_spaces: String,
    red_intersection: Option<bool>,
    red_witness: Option<(Subspace, Subspace)>,
}

fn weights(g: &Global, input: &FamilyInput) -> CliResult<Passed> {
    let fam = read_family(g, input)?;
    let geom = fam.geometry().clone();
    if let Some((v, w)) = is_coclique(&fam) {
        return Err(flaglab::Error::NotACoclique(v, w).into());
    }
    let mut bs: Vec<u32> = fam.members().iter().map(|&v| geom.idx(v as usize).b).collect();
    let mut as_: Vec<u32> = fam.members().iter().map(|&v| geom.idx(v as usize).a).collect();
    bs.sort_unstable();
    bs.dedup();
    as_.sort_unstable();
    as_.dedup();
    let red = flaglab::qcount::gauss_u64(geom.n() as i64 + 1, 1, geom.q() as u64) as usize;
    let spaces: Vec<(&'static str, &Subspace)> = bs
        .iter()
        .map(|&b| ("n", &geom.b_spaces()[b as usize]))
        .chain(as_.iter().map(|&a| ("n-1", &geom.a_spaces()[a as usize])))
        .collect();
    let entries: Vec<WeightEntry> = spaces
        .into_par_iter()
        .map(|(side, s)| {
            let w = classify_space_weight(&fam, s)?;
            let consistent = w.k.is_some() && w.count == w.predicted && (w.count == red) == w.all_meet();
            Ok(WeightEntry {
                side,
                space: w.space.clone(),
                count: w.count.to_string(),
                k: w.k,
                predicted: w.predicted.to_string(),
                color: w.color,
                all_meet: w.all_meet(),
                core: w.core.clone(),
                consistent,
            })
        })
        .collect::<flaglab::Result<_>>()?;
    let violations = entries.iter().filter(|e| !e.consistent).count();
    let tally = |side: &str, color: Color| {
        entries.iter().filter(|e| e.side == side && e.color == color).count().to_string()
    };
    let (red_intersection, red_witness) = if violations == 0 {
        let w = red_intersection_violation(&fam)?;
        (Some(w.is_none()), w)
    } else {
        (None, None)
    };
    let table = Table {
        columns: vec!["side", "space", "count", "k", "predicted", "color", "all_meet", "consistent"],
        rows: entries
            .iter()
            .map(|e| {
                vec![
                    e.side.to_string(),
                    e.space.to_string(),
                    e.count.clone(),
                    e.k.map(|k| k.to_string()).unwrap_or_default(),
                    e.predicted.clone(),
                    format!("{:?}", e.color),
                    e.all_meet.to_string(),
                    e.consistent.to_string(),
                ]
            })
            .collect(),
    };
    let body = WeightsBody {
        red_n_spaces: tally("n", Color::Red),
        yellow_n_spaces: tally("n", Color::Yellow),
        red_n1_spaces: tally("n-1", Color::Red),
        yellow_n1_spaces: tally("n-1", Color::Yellow),
        entries,
        violations: violations.to_string(),
        red_intersection,
        red_witness,
    };
    emit(g, &family_header("oracle weights", &fam, g.seed), &body, Some(table))?;
    Ok(violations == 0 && red_intersection == Some(true))
}

#[derive(Serialize)]
struct ViewInfo {
    kind: &'static str,
    vertices: String,
    edges: String,
}

#[derive(Serialize)]
struct SearchBody {
    method: &'static str,
    view: ViewInfo,
    size: String,
    status: Status,
    set: Vec<usize>,
    nodes_explored: String,
    budget: String,
    consumed: String,
    verified: bool,
    conflict: Option<(usize, usize)>,
}

fn search(g: &Global, args: &SearchArgs) -> CliResult<Passed> {
    let ps = space(g)?;
    let geom = geometry(g, ps)?;
    let graph = FlagGraph::build(geom.clone(), args.mode.into(), g.memory_budget)?;
    let mut seed_used = g.seed;

    let (kind, subset): (&'static str, Option<Vec<usize>>) = if let Some(path) = &args.subset {
        ("subset", Some(serde_json::from_str(&read_input(path)?)?))
    } else if let Some(k) = args.random_subset {
        if k > geom.len() {
            return Err(CliError::Usage(format!("--random-subset {k} exceeds {} vertices", geom.len())));
        }
        let seed = *seed_used.get_or_insert(0);
        let mut s = sample(&mut ChaCha8Rng::seed_from_u64(seed), geom.len(), k).into_vec();
        s.sort_unstable();
        ("random-subset", Some(s))
    } else if args.hyperplane_slice {
        let d = ps.ambient();
        let h = Subspace::coordinate(ps.q(), d, &(0..d - 1).collect::<Vec<_>>())?;
        let slice = (0..geom.len())
            .filter(|&v| h.contains(geom.b_space(v)).expect("same ambient"))
            .collect();
        ("hyperplane-slice", Some(slice))
    } else {
        ("full", None)
    };
    let view: Option<SubGraph> = subset.map(|s| graph.induced_subgraph(&s)).transpose()?;

    // warm start in the view's local numbering
    let warm: Option<Vec<usize>> = match &args.warm_start {
        None => None,
        Some(path) => {
            let file = read_family_file(g, path)?;
            if file.n != ps.n() || file.q != ps.q() {
                return Err(CliError::Usage("warm start is for a different (n, q)".into()));
            }
            let fam = FlagFamily::from_file(geom.clone(), &file)?;
            Some(match &view {
                None => fam.indices(),
                Some(v) => {
                    let local: BTreeMap<usize, usize> = v.labels().iter().enumerate().map(|(i, &l)| (l, i)).collect();
                    fam.indices()
                        .iter()
                        .map(|x| {
                            local.get(x).copied().ok_or_else(|| {
                                CliError::Usage(format!("warm start vertex {x} is outside the view"))
                            })
                        })
                        .collect::<CliResult<_>>()?
                }
            })
        }
    };

    let result: SearchResult = match args.method {
        Method::Exact => {
            let opts = ExactOptions { budget: args.budget, target: args.target, progress: args.progress };
            match &view {
                Some(v) => max_coclique_exact(v, &opts, warm.as_deref())?,
                None => max_coclique_exact(&graph, &opts, warm.as_deref())?,
            }
        }
        Method::Heuristic => {
            let seed = *seed_used.get_or_insert(0);
            match &view {
                Some(v) => max_coclique_heuristic(v, seed, warm.as_deref(), args.iterations)?,
                None => max_coclique_heuristic(&graph, seed, warm.as_deref(), args.iterations)?,
            }
        }
    };
    let (set, vertices, edges) = match &view {
        Some(v) => (v.lift(&result.set), v.labels().len(), v.edge_count()),
        None => (result.set.clone(), geom.len(), graph.edge_count()),
    };
    let conflict = find_conflict(&graph, &set);
    let body = SearchBody {
        method: if args.method == Method::Exact { "exact" } else { "heuristic" },
        view: ViewInfo { kind, vertices: vertices.to_string(), edges: edges.to_string() },
        size: result.size.to_string(),
        status: result.status,
        set,
        nodes_explored: result.nodes_explored.to_string(),
        budget: result.budget.to_string(),
        consumed: result.consumed.to_string(),
        verified: conflict.is_none(),
        conflict,
    };
    emit(g, &header("search", Some(ps), Some(geom.vertex_hash()), seed_used), &body, None)?;
    Ok(body.verified)
}
