//! Exhaustive sweeps: preserver search, `F_n` discovery, formula grids,
//! conjecture sweeps and iterated family construction.
//!
//! Candidates are processed in chunks. Each chunk is mapped through the
//! [`Runner`](crate::exec::Runner) and its results are emitted in input order before the next
//! chunk is read, which bounds memory on long graph6 streams and keeps the
//! output independent of the worker count.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Pow, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graphs::{
    automorphism_orbits, emit_graph6, enumerate_graphs, rooted_product, Graph, MatrixKind, RootedGraph,
};
use crate::serde_big;
use crate::walk::{
    controllability_from, f_certificate, f_membership, preserver_check_with, theorem_main_verify, walk_det_matrix,
    ControllabilityReport, Evaluation, FCertificate, PreserverReport, WalkReport,
};

/// Which roots of each candidate graph are tried.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RootPolicy {
    #[default]
    AllRoots,
    /// One root per automorphism orbit; isomorphic rooted graphs give
    /// identical reports.
    OrbitRepresentatives,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub root_policy: RootPolicy,
    pub exec: Exec,
    /// Emit rejected candidates too.
    pub include_rejects: bool,
    /// Every preserver found is checked end to end on this member of `F`.
    pub certify_with: Option<Graph>,
    /// Graphs per work chunk.
    pub chunk_size: usize,
    /// Rejected candidates are tried against each of these members of `F`;
    /// one that keeps all of them in `F` is emitted as a candidate against
    /// the necessity of the conditions.
    pub probe_with: Vec<Graph>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            root_policy: RootPolicy::AllRoots,
            exec: Exec::from_env(),
            include_rejects: false,
            certify_with: None,
            chunk_size: 256,
            probe_with: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub graph6: String,
    /// 0-based root index.
    pub root: usize,
    /// Size of the root's automorphism orbit.
    pub orbit_size: usize,
    pub report: PreserverReport,
    /// Certificate of `G∘H` for the configured test graph `G`.
    pub certificate: Option<FCertificate>,
    /// For probed rejects: whether every probe product stayed in `F`.
    pub probe_preserved: Option<bool>,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Per-order counts.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct OrderTally {
    pub graphs: usize,
    pub candidates: usize,
    /// Preserver rows (one per tried root).
    pub preserver_rows: usize,
    /// Rooted graphs up to isomorphism that are preservers.
    pub rooted_classes: usize,
    /// Underlying graphs with at least one preserver root.
    pub underlying_graphs: usize,
    /// Preservers whose exponent differs from `⌊m/2⌋`.
    pub conjecture_violations: usize,
    /// Rejected candidates that kept every probe graph in `F`.
    pub necessity_candidates: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SearchSummary {
    pub per_order: BTreeMap<usize, OrderTally>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SearchSummary {
    pub fn total(&self) -> OrderTally {
        self.per_order.values().fold(OrderTally::default(), |mut acc, t| {
            acc.graphs += t.graphs;
            acc.candidates += t.candidates;
            acc.preserver_rows += t.preserver_rows;
            acc.rooted_classes += t.rooted_classes;
            acc.underlying_graphs += t.underlying_graphs;
            acc.conjecture_violations += t.conjecture_violations;
            acc.necessity_candidates += t.necessity_candidates;
            acc
        })
    }
}

struct GraphOutcome {
    order: usize,
    candidates: usize,
    results: Vec<SearchResult>,
    preserver_orbits: usize,
}

fn examine(g: &Graph, cfg: &SearchConfig) -> Result<GraphOutcome> {
    let orbits = automorphism_orbits(g);
    let mut orbit_of = vec![0; g.order()];
    for (k, orbit) in orbits.iter().enumerate() {
        for &u in orbit {
            orbit_of[u] = k;
        }
    }
    let roots: Vec<usize> = match cfg.root_policy {
        RootPolicy::AllRoots => (0..g.order()).collect(),
        RootPolicy::OrbitRepresentatives => orbits.iter().map(|o| o[0]).collect(),
    };
    let g6 = emit_graph6(g);
    let mut results = Vec::new();
    let mut preserver_orbit = vec![false; orbits.len()];
    for &root in &roots {
        let start = Instant::now();
        let h = RootedGraph::new(g.clone(), root)?;
        let report = preserver_check_with(&h, Evaluation::Pruned)?;
        let mut certificate = None;
        if report.is_preserver {
            preserver_orbit[orbit_of[root]] = true;
            if let Some(base) = &cfg.certify_with {
                let cert = f_certificate(&rooted_product(base, &h));
                if !cert.member {
                    return Err(Error::CertificationFailure(format!(
                        "{g6} rooted at {root} passes all three conditions but G∘H has det A = {}, det W = {}",
                        cert.det_a, cert.det_w
                    )));
                }
                certificate = Some(cert);
            }
        }
        let mut probe_preserved = None;
        if !report.is_preserver && !cfg.probe_with.is_empty() {
            probe_preserved = Some(cfg.probe_with.iter().all(|base| f_membership(&rooted_product(base, &h))));
        }
        if report.is_preserver || cfg.include_rejects || probe_preserved == Some(true) {
            results.push(SearchResult {
                graph6: g6.clone(),
                root,
                orbit_size: orbits[orbit_of[root]].len(),
                report,
                certificate,
                probe_preserved,
                elapsed: start.elapsed(),
            });
        }
    }
    Ok(GraphOutcome {
        order: g.order(),
        candidates: roots.len(),
        results,
        preserver_orbits: preserver_orbit.iter().filter(|&&b| b).count(),
    })
}

/// Runs the preserver test over every candidate `(H, v)`.
///
/// `emit` sees results in input order. A certification failure (a graph
/// meeting all three conditions whose product with the test graph leaves
/// `F`) aborts the search.
pub fn search_preservers<I, F>(graphs: I, cfg: &SearchConfig, mut emit: F) -> Result<SearchSummary>
where
    I: IntoIterator<Item = Result<Graph>>,
    F: FnMut(&SearchResult) -> Result<()>,
{
    let start = Instant::now();
    let runner = cfg.exec.runner();
    let mut summary = SearchSummary::default();
    let mut iter = graphs.into_iter();
    let chunk_size = cfg.chunk_size.max(1);
    loop {
        let mut chunk = Vec::with_capacity(chunk_size);
        for g in iter.by_ref().take(chunk_size) {
            let g = g?;
            if g.order() < 2 {
                return Err(Error::Precondition("preserver search needs order >= 2".into()));
            }
            chunk.push(g);
        }
        if chunk.is_empty() {
            break;
        }
        for outcome in runner.map(&chunk, |g| examine(g, cfg)) {
            let outcome = outcome?;
            let tally = summary.per_order.entry(outcome.order).or_default();
            tally.graphs += 1;
            tally.candidates += outcome.candidates;
            tally.rooted_classes += outcome.preserver_orbits;
            tally.underlying_graphs += usize::from(outcome.preserver_orbits > 0);
            for r in &outcome.results {
                if r.report.is_preserver {
                    tally.preserver_rows += 1;
                    if r.report.conjecture_ok == Some(false) {
                        tally.conjecture_violations += 1;
                    }
                }
                tally.necessity_candidates += usize::from(r.probe_preserved == Some(true));
                emit(r)?;
            }
        }
    }
    summary.elapsed = start.elapsed();
    Ok(summary)
}

/// Built-in candidates for orders `min..=max` (each at most 7).
pub fn builtin_graphs(min: usize, max: usize, connected_only: bool) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for m in min..=max {
        out.extend(enumerate_graphs(m, connected_only)?);
    }
    Ok(out)
}

/// Every member of `F` among `graphs`, in input order.
pub fn f_members_in(graphs: &[Graph], exec: Exec) -> Vec<Graph> {
    let flags = exec.runner().map(graphs, f_membership);
    graphs.iter().zip(flags).filter(|(_, f)| *f).map(|(g, _)| g.clone()).collect()
}

/// All isomorphism classes in `F_n` via the built-in enumerator. Odd `n`
/// gives an empty list without enumerating.
pub fn find_f_members(n: usize, exec: Exec) -> Result<Vec<Graph>> {
    if n % 2 == 1 {
        return Ok(Vec::new());
    }
    Ok(f_members_in(&enumerate_graphs(n, false)?, exec))
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyStage {
    pub step: usize,
    pub order: usize,
    pub graph6: String,
    /// graph6 and 0-based root of the preserver applied to reach this stage.
    pub applied: Option<(String, usize)>,
    pub certificate: FCertificate,
}

/// `G, G∘H_1, (G∘H_1)∘H_2, …` for `steps` steps, cycling through
/// `preservers`. Every stage is re-certified from scratch; `on_stage` sees
/// each one as soon as it is certified.
pub fn build_dgs_family<F>(
    seed: &Graph,
    preservers: &[RootedGraph],
    steps: usize,
    mut on_stage: F,
) -> Result<Vec<FamilyStage>>
where
    F: FnMut(&FamilyStage),
{
    let seed_cert = f_certificate(seed);
    if !seed_cert.member {
        return Err(Error::Precondition(format!(
            "seed is not in F (det A = {}, det W = {})",
            seed_cert.det_a, seed_cert.det_w
        )));
    }
    if steps > 0 && preservers.is_empty() {
        return Err(Error::Precondition("no preservers given".into()));
    }
    for h in preservers {
        let r = preserver_check_with(h, Evaluation::Pruned)?;
        if !r.is_preserver {
            return Err(Error::Precondition(format!(
                "{} rooted at {} fails the preserver conditions",
                emit_graph6(h.graph()),
                h.root()
            )));
        }
    }
    let first =
        FamilyStage { step: 0, order: seed.order(), graph6: emit_graph6(seed), applied: None, certificate: seed_cert };
    on_stage(&first);
    let mut stages = vec![first];
    let mut current = seed.clone();
    for step in 1..=steps {
        let h = &preservers[(step - 1) % preservers.len()];
        let next = rooted_product(&current, h);
        let cert = f_certificate(&next);
        if !cert.member {
            return Err(Error::CertificationFailure(format!(
                "stage {step} (order {}) left F: det A = {}, det W = {}",
                next.order(),
                cert.det_a,
                cert.det_w
            )));
        }
        let stage = FamilyStage {
            step,
            order: next.order(),
            graph6: emit_graph6(&next),
            applied: Some((emit_graph6(h.graph()), h.root())),
            certificate: cert,
        };
        on_stage(&stage);
        stages.push(stage);
        current = next;
    }
    Ok(stages)
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub graph6: String,
    #[serde(with = "serde_big")]
    pub lhs_abs: BigInt,
    #[serde(with = "serde_big")]
    pub rhs_abs: BigInt,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub order: usize,
    pub exponent: usize,
    pub rows: Vec<SweepRow>,
    pub all_equal: bool,
}

/// Compares `|det W_A(G∘H)|` with `|det A(G)|^{⌊m/2⌋} · |det W_A(G)|^m`
/// for each sample `G`.
pub fn conjecture_sweep(h: &RootedGraph, samples: &[Graph], exec: Exec) -> Result<SweepReport> {
    if !preserver_check_with(h, Evaluation::Pruned)?.is_preserver {
        return Err(Error::Precondition(
            "conjecture sweep needs a rooted graph passing the preserver conditions".into(),
        ));
    }
    let m = h.order();
    let exponent = m / 2;
    let rows = exec.runner().map(samples, |g| {
        let a = crate::graphs::adjacency(g);
        let lhs_abs = walk_det_matrix(&crate::graphs::adjacency(&rooted_product(g, h))).abs();
        let rhs_abs = (Pow::pow(a.det(), exponent as u32) * Pow::pow(walk_det_matrix(&a), m as u32)).abs();
        SweepRow { graph6: emit_graph6(g), equal: lhs_abs == rhs_abs, lhs_abs, rhs_abs }
    });
    let all_equal = rows.iter().all(|r| r.equal);
    Ok(SweepReport { order: m, exponent, rows, all_equal })
}

#[derive(Clone, Debug, Serialize)]
pub struct GridRow {
    pub g_index: usize,
    pub h_index: usize,
    pub report: WalkReport,
    pub controllability: ControllabilityReport,
}

/// The determinant formula for every `(G, H, kind)` triple, in
/// `kind`-major, then `G`, then `H` order.
pub fn theorem_grid(gs: &[Graph], hs: &[RootedGraph], kinds: &[MatrixKind], exec: Exec) -> Result<Vec<GridRow>> {
    let jobs: Vec<(usize, usize, &MatrixKind)> =
        kinds.iter().flat_map(|k| (0..gs.len()).flat_map(move |gi| (0..hs.len()).map(move |hi| (gi, hi, k)))).collect();
    exec.runner()
        .map(&jobs, |&(gi, hi, kind)| {
            let report = theorem_main_verify(&gs[gi], &hs[hi], kind)?;
            let controllability = controllability_from(&report);
            Ok(GridRow { g_index: gi, h_index: hi, report, controllability })
        })
        .into_iter()
        .collect()
}

/// Every rooted graph of order `1..=max_order` (all roots).
pub fn all_rooted(max_order: usize) -> Result<Vec<RootedGraph>> {
    let mut out = Vec::new();
    for m in 1..=max_order {
        for g in enumerate_graphs(m, false)? {
            for v in 0..m {
                out.push(RootedGraph::new(g.clone(), v)?);
            }
        }
    }
    Ok(out)
}

/// `count` Erdős–Rényi graphs `G(n, 1/2)` with `n` uniform in
/// `min_order..=max_order`, reproducible from `seed`.
pub fn random_graphs(count: usize, min_order: usize, max_order: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(min_order..=max_order);
            let mut g = Graph::empty(n);
            for u in 0..n {
                for w in u + 1..n {
                    if rng.gen_bool(0.5) {
                        g.add_edge(u, w).expect("valid edge");
                    }
                }
            }
            g
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{canonical_code, parse_graph6};

    fn f6() -> Graph {
        Graph::from_edges(6, &[(0, 2), (1, 2), (1, 3), (1, 4), (2, 4), (3, 5)]).unwrap()
    }

    fn collect(graphs: Vec<Graph>, cfg: &SearchConfig) -> (Vec<SearchResult>, SearchSummary) {
        let mut out = Vec::new();
        let summary = search_preservers(graphs.into_iter().map(Ok), cfg, |r| {
            out.push(r.clone());
            Ok(())
        })
        .unwrap();
        (out, summary)
    }

    #[test]
    fn order_two_and_four_sweeps() {
        let cfg = SearchConfig { exec: Exec::Sequential, certify_with: Some(f6()), ..Default::default() };
        let (rows, summary) = collect(builtin_graphs(2, 4, false).unwrap(), &cfg);
        let paw = canonical_code(&Graph::paw(), Some(0));
        assert!(rows.iter().any(|r| r.graph6 == "A_" && r.report.is_preserver));
        assert!(rows.iter().any(|r| canonical_code(&parse_graph6(&r.graph6).unwrap(), Some(r.root)) == paw));
        assert!(rows.iter().all(|r| r.report.conjecture_ok == Some(true)));
        assert!(rows.iter().all(|r| r.certificate.as_ref().is_some_and(|c| c.member)));
        assert_eq!(summary.total().conjecture_violations, 0);
    }

    #[test]
    fn orbit_policy_matches_class_tally() {
        let graphs = builtin_graphs(2, 5, false).unwrap();
        let all = collect(graphs.clone(), &SearchConfig { exec: Exec::Sequential, ..Default::default() });
        let reps = collect(
            graphs,
            &SearchConfig {
                exec: Exec::Sequential,
                root_policy: RootPolicy::OrbitRepresentatives,
                ..Default::default()
            },
        );
        let (a, r) = (all.1.total(), reps.1.total());
        assert_eq!(
            (a.graphs, a.rooted_classes, a.underlying_graphs),
            (r.graphs, r.rooted_classes, r.underlying_graphs)
        );
        assert_eq!(reps.0.len(), all.1.total().rooted_classes);
        let rows_by_orbit: usize = reps.0.iter().map(|r| r.orbit_size).sum();
        assert_eq!(rows_by_orbit, all.0.len());
    }

    #[test]
    fn rejects_can_be_included() {
        let cfg = SearchConfig { exec: Exec::Sequential, include_rejects: true, ..Default::default() };
        let (rows, summary) = collect(builtin_graphs(3, 3, false).unwrap(), &cfg);
        assert_eq!(rows.len(), summary.total().candidates);
        assert_eq!(rows.len(), 4 * 3);
    }

    #[test]
    fn k1_is_refused_by_search() {
        let r = search_preservers([Ok(Graph::empty(1))], &SearchConfig::default(), |_| Ok(()));
        assert!(matches!(r, Err(Error::Precondition(_))));
    }

    #[test]
    fn odd_orders_have_no_members() {
        assert!(find_f_members(5, Exec::Sequential).unwrap().is_empty());
    }

    #[test]
    fn family_of_zero_steps() {
        let stages = build_dgs_family(&f6(), &[], 0, |_| {}).unwrap();
        assert_eq!(stages.len(), 1);
        assert!(stages[0].certificate.member);
    }

    #[test]
    fn family_alternating_preservers() {
        let p2 = RootedGraph::new(Graph::path(2), 0).unwrap();
        let paw = RootedGraph::new(Graph::paw(), 0).unwrap();
        let stages = build_dgs_family(&f6(), &[p2, paw], 2, |_| {}).unwrap();
        let orders: Vec<usize> = stages.iter().map(|s| s.order).collect();
        assert_eq!(orders, [6, 12, 48]);
        assert!(stages.iter().all(|s| s.certificate.member));
    }

    #[test]
    fn family_rejects_non_preserver() {
        let p3 = RootedGraph::new(Graph::path(3), 1).unwrap();
        assert!(matches!(build_dgs_family(&f6(), &[p3], 1, |_| {}), Err(Error::Precondition(_))));
        assert!(matches!(build_dgs_family(&Graph::path(4), &[], 0, |_| {}), Err(Error::Precondition(_))));
    }

    #[test]
    fn sweep_on_c4_is_all_zero() {
        let paw = RootedGraph::new(Graph::paw(), 0).unwrap();
        let r = conjecture_sweep(&paw, &[Graph::cycle(4), f6()], Exec::Sequential).unwrap();
        assert_eq!(r.exponent, 2);
        assert!(r.all_equal);
        assert_eq!(r.rows[0].lhs_abs, BigInt::from(0));
        assert_ne!(r.rows[1].lhs_abs, BigInt::from(0));
    }

    #[test]
    fn random_graphs_are_reproducible() {
        assert_eq!(random_graphs(5, 3, 6, 7), random_graphs(5, 3, 6, 7));
        assert!(random_graphs(50, 4, 8, 1).iter().all(|g| (4..=8).contains(&g.order())));
    }
}
