//! Reproduction scenarios. Each scenario runs a fixed, seeded workload and
//! compares the outcome against its threshold.

use std::f64::consts::{FRAC_PI_2, PI};
use std::time::{Duration, Instant};

use corona_walk::corona::{corona_amplitude, corona_spectrum};
use corona_walk::number_theory::{independent_sqrts, is_square_free, kronecker_solve, DEFAULT_N_MAX};
use corona_walk::oracle::expm_amplitude;
use corona_walk::spectral::quotient;
use corona_walk::state_transfer::{
    corona_vertex_periodicity, digon_corona_pst, periodicity_verdict, pgst_construct_time, pgst_grid_search, pgst_necessity_residual,
    pst_certify, weighted_p4_pst, ConstructionOptions, DigonVariant, NecessityTerm, PeriodicityRule, PeriodicityStatus, PgstFamily, PstOutcome,
    Tolerances,
};
use corona_walk::{eigendecompose, CoronaVertex, Error, Graph, Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub relation: &'static str,
    pub threshold: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Wall time of the run behind this check, when it is one of several
    /// independently timed runs.
    #[serde(skip)]
    pub elapsed: Option<Duration>,
}

impl Check {
    fn at_least(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Check { name: name.into(), value, relation: ">=", threshold, passed: value >= threshold, detail: None, elapsed: None }
    }

    fn at_most(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Check { name: name.into(), value, relation: "<=", threshold, passed: value <= threshold, detail: None, elapsed: None }
    }

    fn holds(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        let value = if ok { 1.0 } else { 0.0 };
        Check { name: name.into(), value, relation: "==", threshold: 1.0, passed: ok, detail: Some(detail.into()), elapsed: None }
    }

    fn error(name: impl Into<String>, e: impl std::fmt::Display) -> Self {
        Check::holds(name, false, format!("error: {e}"))
    }

    fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    fn timed(mut self, d: Duration) -> Self {
        self.elapsed = Some(d);
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioReport {
    pub id: u32,
    pub name: &'static str,
    pub description: &'static str,
    pub passed: bool,
    pub checks: Vec<Check>,
}

pub struct Scenario {
    pub id: u32,
    pub name: &'static str,
    pub description: &'static str,
    run: fn() -> Vec<Check>,
}

impl Scenario {
    pub fn run(&self) -> ScenarioReport {
        let checks = (self.run)();
        let passed = !checks.is_empty() && checks.iter().all(|c| c.passed);
        ScenarioReport { id: self.id, name: self.name, description: self.description, passed, checks }
    }
}

pub const SCENARIOS: &[Scenario] = &[
    Scenario { id: 1, name: "corona-spectrum", description: "closed-form corona spectrum against the dense eigensolver", run: corona_spectrum_vs_dense },
    Scenario { id: 2, name: "corona-amplitude", description: "closed-form corona amplitudes against the dense matrix exponential", run: corona_amplitude_vs_dense },
    Scenario { id: 3, name: "digon", description: "perfect state transfer at pi/2 in digon and C4 coronas", run: digon_pst },
    Scenario { id: 4, name: "weighted-p4", description: "perfect state transfer in weighted P4", run: weighted_p4 },
    Scenario { id: 5, name: "quotient", description: "equitable quotients of digon coronas and the 3-cube", run: quotients },
    Scenario { id: 6, name: "pst", description: "perfect state transfer certificates and failures", run: pst_cases },
    Scenario { id: 7, name: "periodicity", description: "periodicity verdicts and the rules deciding them", run: periodicity_cases },
    Scenario { id: 8, name: "barbell", description: "pretty good state transfer in barbells", run: barbell },
    Scenario { id: 9, name: "thorny", description: "pretty good state transfer in thorny graphs", run: thorny },
    Scenario { id: 10, name: "selfloop", description: "self-looped cliques against plain hairy cliques", run: selfloop },
    Scenario { id: 11, name: "bunkbed", description: "pretty good state transfer in bunkbed coronas", run: bunkbed },
    Scenario { id: 12, name: "periodic-no-pgst", description: "a periodic pair without pretty good state transfer", run: periodic_no_pgst },
    Scenario { id: 13, name: "kronecker", description: "simultaneous approximation solver on random instances", run: kronecker },
];

/// Looks a scenario up by name or number.
pub fn find_scenario(key: &str) -> Option<&'static Scenario> {
    SCENARIOS.iter().find(|s| s.name == key || key.parse::<u32>().ok() == Some(s.id))
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut w = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.5) {
                w[(i, j)] = 1.0;
                w[(j, i)] = 1.0;
            }
        }
    }
    Graph::from_weights(w).expect("random graph is valid")
}

/// 20 random base graphs on at most 6 vertices.
pub fn base_corpus() -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x00C0_20A1);
    (0..20)
        .map(|_| {
            let n = rng.gen_range(1..=6);
            random_graph(&mut rng, n)
        })
        .collect()
}

/// `(H, k)` for the corpus coronas.
pub fn pendant_graphs() -> Vec<(Graph, f64)> {
    vec![
        (Graph::complete(1).unwrap(), 0.0),
        (Graph::complete(3).unwrap(), 2.0),
        (Graph::empty(2).unwrap(), 0.0),
        (Graph::empty(3).unwrap(), 0.0),
    ]
}

fn corona_spectrum_vs_dense() -> Vec<Check> {
    let hs = pendant_graphs();
    let corpus = base_corpus();
    let pairs: Vec<(usize, &Graph, &(Graph, f64))> = corpus.iter().enumerate().flat_map(|(i, g)| hs.iter().map(move |h| (i, g, h))).collect();
    let errs: Vec<Result<f64, String>> = pairs
        .par_iter()
        .map(|&(_, g, (h, k))| {
            let dg = eigendecompose(g, None).map_err(|e| e.to_string())?;
            let dh = eigendecompose(h, None).map_err(|e| e.to_string())?;
            let mut closed = corona_spectrum(&dg, &dh, *k, h.n()).map_err(|e| e.to_string())?.eigenvalue_multiset();
            let mut dense = eigendecompose(&g.corona(h).map_err(|e| e.to_string())?, None).map_err(|e| e.to_string())?.eigenvalue_multiset();
            if closed.len() != dense.len() {
                return Err(format!("multiset sizes {} and {}", closed.len(), dense.len()));
            }
            closed.sort_by(f64::total_cmp);
            dense.sort_by(f64::total_cmp);
            Ok(closed.iter().zip(&dense).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
        })
        .collect();
    let mut worst = 0.0f64;
    for (e, (i, _, (h, _))) in errs.into_iter().zip(&pairs) {
        match e {
            Ok(x) => worst = worst.max(x),
            Err(msg) => return vec![Check::error(format!("graph {i} with H on {} vertices", h.n()), msg)],
        }
    }
    vec![Check::at_most(format!("max eigenvalue deviation over {} coronas", pairs.len()), worst, 1e-8)]
}

fn corona_amplitude_vs_dense() -> Vec<Check> {
    let corpus = base_corpus();
    let hs = pendant_graphs();
    let mut rng = ChaCha8Rng::seed_from_u64(0x00C0_20A2);
    let mut jobs = Vec::new();
    for g in &corpus {
        for (h, k) in &hs {
            let size = g.n() * (h.n() + 1);
            let samples: Vec<(usize, usize, f64)> = (0..100).map(|_| (rng.gen_range(0..size), rng.gen_range(0..size), rng.gen_range(0.0..=50.0))).collect();
            jobs.push((g, h, *k, samples));
        }
    }
    let results: Vec<Result<f64, String>> = jobs
        .par_iter()
        .map(|(g, h, k, samples)| {
            let m = h.n();
            let dg = eigendecompose(g, None).map_err(|e| e.to_string())?;
            let dh = eigendecompose(h, None).map_err(|e| e.to_string())?;
            let c = g.corona(h).map_err(|e| e.to_string())?;
            let mut worst = 0.0f64;
            for &(s, d, t) in samples {
                let closed = corona_amplitude(&dg, &dh, *k, m, CoronaVertex::from_index(s, m), CoronaVertex::from_index(d, m), t).map_err(|e| e.to_string())?;
                let dense = expm_amplitude(c.weights(), &[s], &[d], t);
                worst = worst.max((closed - dense).norm());
            }
            Ok(worst)
        })
        .collect();
    let mut worst = 0.0f64;
    for r in results {
        match r {
            Ok(x) => worst = worst.max(x),
            Err(msg) => return vec![Check::error("amplitude evaluation", msg)],
        }
    }
    vec![Check::at_most(format!("max |closed form - dense| over {} samples", jobs.len() * 100), worst, 1e-10)]
}

fn digon_pst() -> Vec<Check> {
    let mut out = Vec::new();
    for (r, variant) in [(1, DigonVariant::C2), (2, DigonVariant::C2), (3, DigonVariant::C2), (1, DigonVariant::C4), (2, DigonVariant::C4)] {
        let name = format!("{variant:?} r={r} fidelity at pi/2");
        out.push(match digon_corona_pst(r, variant) {
            Ok(rep) => Check::at_least(name, rep.fidelity, 1.0 - 1e-9).with_detail(format!("{} vertices", rep.vertices)),
            Err(e) => Check::error(name, e),
        });
    }
    out
}

fn weighted_p4() -> Vec<Check> {
    let mut out = Vec::new();
    for (s, ell) in [(0, 1), (0, 2), (1, 2), (1, 3)] {
        match weighted_p4_pst(s, ell) {
            Ok(rep) => {
                let expect = FRAC_PI_2 * (((2 * ell) * (2 * ell) - (2 * s + 1) * (2 * s + 1)) as f64).sqrt();
                out.push(Check::at_most(format!("s={s} l={ell} time error"), (rep.t - expect).abs(), 1e-12));
                out.push(Check::at_least(format!("s={s} l={ell} inner fidelity"), rep.inner_fidelity, 1.0 - 1e-9));
                out.push(Check::at_least(format!("s={s} l={ell} antipodal fidelity"), rep.antipodal_fidelity, 1.0 - 1e-9));
            }
            Err(e) => out.push(Check::error(format!("s={s} l={ell}"), e)),
        }
    }
    out
}

fn quotients() -> Vec<Check> {
    let mut out = Vec::new();
    for r in 1..=3 {
        let name = format!("digon r={r} quotient deviation from (sqrt({}), 2, sqrt({}))", 4 * r * r - 1, 4 * r * r - 1);
        out.push(match digon_corona_pst(r, DigonVariant::C2) {
            Ok(rep) => Check::at_most(name, rep.quotient_error, 1e-12),
            Err(e) => Check::error(name, e),
        });
    }
    let cube = Graph::cube(3).unwrap();
    let cells = vec![vec![0], vec![1, 2, 4], vec![3, 5, 6], vec![7]];
    let name = "cube(3) distance quotient deviation from (sqrt(3), 2, sqrt(3))";
    out.push(match quotient(&cube, &cells) {
        Ok(Some(q)) => {
            let s3 = 3f64.sqrt();
            let expect = [[0.0, s3, 0.0, 0.0], [s3, 0.0, 2.0, 0.0], [0.0, 2.0, 0.0, s3], [0.0, 0.0, s3, 0.0]];
            let err = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).map(|(i, j)| (q.weight(i, j) - expect[i][j]).abs()).fold(0.0, f64::max);
            Check::at_most(name, err, 1e-12)
        }
        Ok(None) => Check::holds(name, false, "partition not equitable"),
        Err(e) => Check::error(name, e),
    });
    out
}

fn pst_cases() -> Vec<Check> {
    let tols = Tolerances::default();
    let mut cases: Vec<(String, Graph, usize, usize)> = vec![("K2".into(), Graph::complete(2).unwrap(), 0, 1)];
    for d in 1..=4 {
        cases.push((format!("cube({d}) antipodal"), Graph::cube(d).unwrap(), 0, (1 << d) - 1));
    }
    for n in [2, 4] {
        cases.push((format!("cocktail({n}) antipodal"), Graph::cocktail(n).unwrap(), 0, 1));
    }
    cases.push(("corona(digon,empty(3)) 0.0 to 1.0".into(), Graph::digon().corona(&Graph::empty(3).unwrap()).unwrap(), 0, 4));
    let mut out = Vec::new();
    for (name, g, u, v) in cases {
        let outcome = eigendecompose(&g, None).and_then(|d| pst_certify(&d, u, v, &tols));
        out.push(match outcome {
            Ok(PstOutcome::Certified(c)) => Check::at_most(format!("{name}: |t0 - pi/2|"), (c.t0 - FRAC_PI_2).abs(), 1e-12)
                .with_detail(format!("fidelity {:.17}", c.verified_fidelity)),
            Ok(PstOutcome::Failed(f)) => Check::holds(format!("{name}: certified"), false, f.describe()),
            Err(e) => Check::error(name, e),
        });
    }
    for (name, g, u, v) in [("P4 inner pair", Graph::path(4).unwrap(), 1, 2), ("cocktail(3) antipodal", Graph::cocktail(3).unwrap(), 0, 1)] {
        let outcome = eigendecompose(&g, None).and_then(|d| pst_certify(&d, u, v, &tols));
        out.push(match outcome {
            Ok(PstOutcome::Failed(f)) => Check::holds(format!("{name}: fails with reason"), true, f.describe()),
            Ok(PstOutcome::Certified(c)) => Check::holds(format!("{name}: fails with reason"), false, format!("certified with t0 = {}", c.t0)),
            Err(e) => Check::error(name, e),
        });
    }
    out
}

fn periodicity_cases() -> Vec<Check> {
    let tols = Tolerances::default();
    let mut out = Vec::new();
    let p3 = Graph::path(3).unwrap();
    let e4 = Graph::empty(4).unwrap();
    let name = "corona(path(3),empty(4)) vertex 1.0 periodic with delta 2";
    out.push(match corona_vertex_periodicity(&p3, &e4, 1, &tols) {
        Ok(v) => Check::holds(name, v.status == PeriodicityStatus::Periodic && v.delta == Some(2), format!("{:?}, delta {:?}", v.status, v.delta)),
        Err(e) => Check::error(name, e),
    });
    let name = "dense verdict agrees for corona(path(3),empty(4)) vertex 1.0";
    let dense = p3.corona(&e4).and_then(|c| eigendecompose(&c, None)).and_then(|d| periodicity_verdict(&d, 5, &tols));
    out.push(match dense {
        Ok(v) => Check::holds(name, v.status == PeriodicityStatus::Periodic && v.delta == Some(2), format!("{:?}, delta {:?}", v.status, v.delta)),
        Err(e) => Check::error(name, e),
    });

    let hs = [("complete(1)", Graph::complete(1).unwrap()), ("complete(3)", Graph::complete(3).unwrap()), ("empty(2)", Graph::empty(2).unwrap())];
    let mut bases: Vec<(String, Graph)> = (2..=4).map(|d| (format!("cube({d})"), Graph::cube(d).unwrap())).collect();
    bases.extend((2..=4).map(|n| (format!("cocktail({n})"), Graph::cocktail(n).unwrap())));
    bases.extend((2..=3).map(|d| (format!("halvedcube({d})"), Graph::halved_cube(d).unwrap())));
    for (gname, g) in &bases {
        for (hname, h) in &hs {
            let name = format!("corona({gname},{hname}) vertex 0.0 not periodic by small-gap");
            out.push(match corona_vertex_periodicity(g, h, 0, &tols) {
                Ok(v) => Check::holds(
                    name,
                    v.status == PeriodicityStatus::NotPeriodic && v.rule == PeriodicityRule::SmallGap,
                    format!("{:?} by {}", v.status, v.rule.as_str()),
                ),
                Err(e) => Check::error(name, e),
            });
        }
    }

    let k2 = Graph::complete(2).unwrap();
    for m in 1..=8 {
        let name = format!("corona(complete(2),complete({m})) size-bound fires on lambda = -1");
        out.push(match corona_vertex_periodicity(&k2, &Graph::complete(m).unwrap(), 0, &tols) {
            Ok(v) => {
                let w = v.fired(PeriodicityRule::SizeBound);
                let ok = v.status == PeriodicityStatus::NotPeriodic && w.is_some_and(|w| w.eigenvalues.iter().any(|&x| (x + 1.0).abs() < 1e-12));
                let rules: Vec<&str> = v.witness.iter().chain(&v.also_fired).map(|w| w.rule.as_str()).collect();
                Check::holds(name, ok, format!("{:?}; deciding rule {}, fired {:?}", v.status, v.rule.as_str(), rules))
            }
            Err(e) => Check::error(name, e),
        });
    }
    out
}

fn oracle_fidelity(g: &Graph, u: usize, v: usize, t: f64) -> Option<f64> {
    (t <= 1e8 && g.n() <= 64).then(|| expm_amplitude(g.weights(), &[u], &[v], t).norm())
}

fn construct(name: String, family: PgstFamily, eps: f64, threshold: f64, graph: Option<&Graph>, pair: (usize, usize)) -> Vec<Check> {
    let start = Instant::now();
    let res = pgst_construct_time(&family, eps, &ConstructionOptions::default());
    let elapsed = start.elapsed();
    match res {
        Ok(w) => {
            let mut out = vec![Check::at_least(format!("{name} fidelity"), w.fidelity, threshold)
                .with_detail(format!("t = {}, l = {:?}, {} Kronecker attempt(s)", w.time, w.ell, w.attempts))
                .timed(elapsed)];
            if let Some(f) = graph.and_then(|g| oracle_fidelity(g, pair.0, pair.1, w.time)) {
                out.push(Check::at_least(format!("{name} fidelity, dense exponential"), f, threshold));
            }
            out
        }
        Err(e) => vec![Check::error(name, e).timed(elapsed)],
    }
}

fn barbell() -> Vec<Check> {
    (1..=7)
        .flat_map(|m| {
            let g = Graph::complete(2).unwrap().corona(&Graph::complete(m).unwrap()).unwrap();
            construct(format!("barbell m={m}"), PgstFamily::Barbell { m }, 1e-3, 0.999, Some(&g), (0, m + 1))
        })
        .collect()
}

fn thorny() -> Vec<Check> {
    let k1 = Graph::complete(1).unwrap();
    let mut out = Vec::new();
    let cases: Vec<(String, PgstFamily, Graph)> = vec![
        ("cube(2) thorny-zero".into(), PgstFamily::ThornyZero { base: Graph::cube(2).unwrap(), u: 0, v: 3 }, Graph::cube(2).unwrap()),
        ("cube(3) thorny-pst".into(), PgstFamily::ThornyPst { base: Graph::cube(3).unwrap(), u: 0, v: 7 }, Graph::cube(3).unwrap()),
        ("cocktail(3) cocktail-thorn".into(), PgstFamily::CocktailThorn { n: 3 }, Graph::cocktail(3).unwrap()),
        ("cocktail(5) cocktail-thorn".into(), PgstFamily::CocktailThorn { n: 5 }, Graph::cocktail(5).unwrap()),
        ("cocktail(2) thorny-zero".into(), PgstFamily::ThornyZero { base: Graph::cocktail(2).unwrap(), u: 0, v: 1 }, Graph::cocktail(2).unwrap()),
        ("cocktail(4) thorny-zero".into(), PgstFamily::ThornyZero { base: Graph::cocktail(4).unwrap(), u: 0, v: 1 }, Graph::cocktail(4).unwrap()),
    ];
    for (name, family, base) in cases {
        let (u, v) = match &family {
            PgstFamily::ThornyPst { u, v, .. } | PgstFamily::ThornyZero { u, v, .. } => (*u, *v),
            _ => (0, 1),
        };
        let g = base.corona(&k1).unwrap();
        out.extend(construct(name, family, 1e-2, 0.99, Some(&g), (2 * u, 2 * v)));
    }
    out
}

fn hairy_grid_max(g: &Graph, t_max: f64, steps: usize) -> corona_walk::Result<f64> {
    let dec = eigendecompose(g, None)?;
    Ok(pgst_grid_search(&dec, &[1], &[2], t_max, steps)?.fidelity)
}

fn selfloop() -> Vec<Check> {
    let mut out = Vec::new();
    for n in [2, 3, 4, 6] {
        let g = Graph::complete(n).unwrap().selfloop().corona(&Graph::empty(2).unwrap()).unwrap();
        out.extend(construct(format!("selfloop-clique n={n}"), PgstFamily::SelfloopClique { n }, 1e-3, 0.999, Some(&g), (1, 2)));
    }
    // No n in {2,3,4,6} has (n²+8)/2 a square; n = 8 exercises that branch.
    let g = Graph::complete(8).unwrap().selfloop().corona(&Graph::empty(2).unwrap()).unwrap();
    out.extend(construct("selfloop-clique n=8 (perfect-square branch)".into(), PgstFamily::SelfloopClique { n: 8 }, 1e-3, 0.999, Some(&g), (1, 2)));

    let grid = 1_000_000;
    for n in 3..=8 {
        let terms = NecessityTerm::hairy_clique(n).unwrap();
        let min = (0..grid)
            .into_par_iter()
            .map(|i| pgst_necessity_residual(&terms, -1.0, 4.0 * PI * i as f64 / (grid - 1) as f64))
            .reduce(|| f64::INFINITY, f64::min);
        out.push(Check::at_least(format!("hairy clique n={n} necessity residual minimum on [0, 4pi]"), min, 0.4374));
    }
    for n in 3..=8 {
        let name = format!("hairy clique n={n} grid-search maximum fidelity to t=1000");
        let g = Graph::complete(n).unwrap().corona(&Graph::empty(2).unwrap()).unwrap();
        out.push(match hairy_grid_max(&g, 1e3, 1_000_000) {
            Ok(f) => Check::at_most(name, f, 1.0 - 1e-3),
            Err(e) => Check::error(name, e),
        });
    }
    out
}

fn bunkbed() -> Vec<Check> {
    let mut out = Vec::new();
    for n in [4, 5, 6] {
        let g = Graph::complete(n).unwrap().cartesian(&Graph::complete(2).unwrap()).unwrap().corona(&Graph::empty(2).unwrap()).unwrap();
        out.extend(construct(format!("bunkbed n={n}"), PgstFamily::Bunkbed { n }, 1e-2, 0.99, Some(&g), (1, 2)));
    }
    for n in [1, 3] {
        let res = pgst_construct_time(&PgstFamily::Bunkbed { n }, 1e-2, &ConstructionOptions::default());
        let detail = match &res {
            Err(e) => e.to_string(),
            Ok(w) => format!("constructed t = {}", w.time),
        };
        out.push(Check::holds(format!("bunkbed n={n} rejected as not applicable"), matches!(res, Err(Error::NotApplicable(_))), detail));
    }
    out
}

fn periodic_no_pgst() -> Vec<Check> {
    let tols = Tolerances::default();
    let g = Graph::complete(1).unwrap().selfloop().corona(&Graph::empty(2).unwrap()).unwrap();
    let dec = match eigendecompose(&g, None) {
        Ok(d) => d,
        Err(e) => return vec![Check::error("decomposition", e)],
    };
    let mut out = Vec::new();
    let mut eigs = dec.eigenvalues().to_vec();
    eigs.sort_by(|a, b| b.total_cmp(a));
    let err = if eigs.len() == 3 { eigs.iter().zip([2.0, 0.0, -1.0]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) } else { f64::INFINITY };
    out.push(Check::at_most("spectrum deviation from {2, 0, -1}", err, 1e-9).with_detail(format!("{eigs:?}")));
    for v in [1, 2] {
        let name = format!("vertex {} periodic", g.label(v));
        out.push(match periodicity_verdict(&dec, v, &tols) {
            Ok(p) => Check::holds(name, p.status == PeriodicityStatus::Periodic, format!("{:?} by {}", p.status, p.rule.as_str())),
            Err(e) => Check::error(name, e),
        });
    }
    let name = "grid-search maximum fidelity 0.1 to 0.2 up to t=1000";
    out.push(match pgst_grid_search(&dec, &[1], &[2], 1e3, 1_000_000) {
        Ok(w) => Check::at_most(name, w.fidelity, 0.95).with_detail(format!("observed maximum {} at t = {}", w.fidelity, w.time)),
        Err(e) => Check::error(name, e),
    });
    out
}

fn kronecker() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x00C0_20AD);
    let cores: Vec<u64> = (2..60).filter(|&c| is_square_free(c)).collect();
    // Smallest tolerance per dimension keeps the expected ℓ near (2ε)^{-d} small.
    let eps_floor = [1e-3, 3e-3, 2e-2];
    let mut instances = Vec::new();
    for _ in 0..1000 {
        let d = rng.gen_range(1..=3);
        let mut cs: Vec<u64> = Vec::new();
        while cs.len() < d {
            let c = cores[rng.gen_range(0..cores.len())];
            if !cs.contains(&c) {
                cs.push(c);
            }
        }
        let lambdas: Vec<f64> = cs.iter().map(|&c| rng.gen_range(1..=3) as f64 * (c as f64).sqrt()).collect();
        let alphas: Vec<f64> = (0..d).map(|_| rng.gen_range(0.0..1.0)).collect();
        let lo: f64 = eps_floor[d - 1];
        let eps = (lo.ln() + rng.gen_range(0.0..1.0) * (0.1f64.ln() - lo.ln())).exp();
        instances.push((cs, lambdas, alphas, eps));
    }
    let mut solved = 0;
    let mut bad = Vec::new();
    let mut independent = 0;
    for (i, (cs, lambdas, alphas, eps)) in instances.iter().enumerate() {
        if independent_sqrts(cs) == Ok(true) {
            independent += 1;
        }
        match kronecker_solve(lambdas, alphas, *eps, 0, DEFAULT_N_MAX) {
            Ok(Some(sol)) => {
                let worst = lambdas
                    .iter()
                    .zip(alphas)
                    .map(|(l, a)| {
                        let x = sol.ell as f64 * l - a;
                        (x - x.round()).abs()
                    })
                    .fold(0.0, f64::max);
                if worst <= sol.achieved + 1e-12 && sol.achieved <= *eps {
                    solved += 1;
                } else if bad.len() < 5 {
                    bad.push(format!("instance {i}: achieved {} claimed, {worst} measured, eps {eps}", sol.achieved));
                }
            }
            Ok(None) => bad.push(format!("instance {i}: no solution below n_max")),
            Err(e) => bad.push(format!("instance {i}: {e}")),
        }
    }
    let mut out = vec![
        Check::at_least("instances whose solution meets its own achieved bound", solved as f64, instances.len() as f64).with_detail(if bad.is_empty() {
            "all solved".to_string()
        } else {
            bad.join("; ")
        }),
        Check::at_least("instances passing the independence pre-test", independent as f64, instances.len() as f64),
    ];
    let dup = [vec![2, 2], vec![3, 5, 3], vec![7, 11, 13, 7]];
    let rejected = dup.iter().all(|c| independent_sqrts(c) == Ok(false));
    out.push(Check::holds("independence pre-test rejects duplicated cores", rejected, format!("{dup:?}")));
    out
}
