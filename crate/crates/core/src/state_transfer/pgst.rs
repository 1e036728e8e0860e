use std::collections::BTreeMap;
use std::f64::consts::{PI, SQRT_2};

use rayon::prelude::*;
use serde::Serialize;

use super::pst::{pst_certify, PstCertificate, PstOutcome};
use super::Tolerances;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::number_theory::{independent_sqrts, is_perfect_square, isqrt, kronecker_solve, square_free_part, DEFAULT_N_MAX};
use crate::spectral::{eigendecompose, SpectralDecomposition};

/// Number of coarse-grid maxima refined by the grid search.
pub const DEFAULT_GRID_REFINEMENTS: usize = 10;

const GRID_RESOLUTION: f64 = 1e-10;
const MIN_KRONECKER_EPS: f64 = 1e-12;

#[derive(Debug, Clone)]
pub enum PgstFamily {
    /// `K2 ∘ K_m` between the two `K2` vertices.
    Barbell { m: usize },
    /// `(K_n + I) ∘ empty(2)` between the leaves of one base vertex.
    SelfloopClique { n: usize },
    /// `(K_n □ K2) ∘ empty(2)` between the leaves of one base vertex.
    Bunkbed { n: usize },
    /// `G ∘ K1` where `G` has PST from `u` to `v` at `π/g` and `0 ∉ supp(u)`.
    ThornyPst { base: Graph, u: usize, v: usize },
    /// `G ∘ K1` where `G` has PST from `u` to `v` at `π/2`.
    ThornyZero { base: Graph, u: usize, v: usize },
    /// Cocktail party graph on `2n` vertices, `n` odd, with one thorn per
    /// vertex, between antipodal vertices.
    CocktailThorn { n: usize },
}

impl PgstFamily {
    pub fn tag(&self) -> &'static str {
        match self {
            PgstFamily::Barbell { .. } => "barbell",
            PgstFamily::SelfloopClique { .. } => "selfloop-clique",
            PgstFamily::Bunkbed { .. } => "bunkbed",
            PgstFamily::ThornyPst { .. } => "thorny-pst",
            PgstFamily::ThornyZero { .. } => "thorny-zero",
            PgstFamily::CocktailThorn { .. } => "cocktail-thorn",
        }
    }
}

/// One simultaneous approximation `ℓλ - q ≈ α`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KroneckerTarget {
    pub label: String,
    pub lambda: f64,
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PgstWitness {
    pub u: String,
    pub v: String,
    pub time: f64,
    pub fidelity: f64,
    pub construction: &'static str,
    /// Requested bound on `1 - fidelity` for constructed witnesses.
    pub target_eps: Option<f64>,
    pub vertices: usize,
    pub ell: Option<i64>,
    pub kronecker_eps: Option<f64>,
    pub kronecker_achieved: Option<f64>,
    pub attempts: usize,
    pub targets: Vec<KroneckerTarget>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstructionOptions {
    pub n_floor: i64,
    pub n_max: i64,
    pub tols: Tolerances,
}

impl Default for ConstructionOptions {
    fn default() -> Self {
        ConstructionOptions { n_floor: 0, n_max: DEFAULT_N_MAX, tols: Tolerances::default() }
    }
}

struct Plan {
    graph: Graph,
    source: usize,
    target: usize,
    targets: Vec<KroneckerTarget>,
    time: Box<dyn Fn(i64) -> f64>,
    notes: Vec<String>,
}

fn invalid(family: &str, reason: impl Into<String>) -> Error {
    Error::InvalidParams { family: family.into(), reason: reason.into() }
}

/// `N = s²c`.
fn split(n: i64) -> Result<(u64, u64)> {
    let d = square_free_part(n)?;
    Ok((d.square_part, d.core))
}

/// `x` with `s·x ≡ 1/2 (mod 1)` for every `s`: `1/(2s)` for a single
/// multiplier, otherwise `2^{-(v+1)}` with `v` the common 2-adic valuation.
fn half_offset(ss: &[u64]) -> Result<f64> {
    let mut distinct = ss.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if let [s] = distinct[..] {
        return Ok(1.0 / (2.0 * s as f64));
    }
    let v = distinct[0].trailing_zeros();
    if distinct.iter().any(|s| s.trailing_zeros() != v) {
        return Err(Error::Inconsistent(format!("multipliers {distinct:?} have different 2-adic valuations; no common offset")));
    }
    Ok(0.5f64.powi(v as i32 + 1))
}

/// Groups integer eigenvalues by the square-free core `c` of `λ² + shift`,
/// returning `(c, [(λ, s)])`.
fn group_by_core(lambdas: &[i64], shift: i64) -> Result<BTreeMap<u64, Vec<(i64, u64)>>> {
    let mut groups: BTreeMap<u64, Vec<(i64, u64)>> = BTreeMap::new();
    for &l in lambdas {
        let (s, c) = split(l * l + shift)?;
        groups.entry(c).or_default().push((l, s));
    }
    Ok(groups)
}

fn check_independent(targets: &[(u64, KroneckerTarget)]) -> Result<()> {
    let cores: Vec<u64> = targets.iter().map(|(c, _)| *c).collect();
    if !independent_sqrts(&cores)? || cores.contains(&1) {
        return Err(Error::Inconsistent(format!("targets {cores:?} are not rationally independent")));
    }
    Ok(())
}

fn integer_support(cert: &PstCertificate, family: &str) -> Result<Vec<i64>> {
    if cert.delta != 1 || cert.a != 0 {
        return Err(Error::NotApplicable(format!("{family} needs an integral support, got delta = {}", cert.delta)));
    }
    Ok(cert.b_list.iter().map(|b| b / 2).collect())
}

fn certify_base(base: &Graph, u: usize, v: usize, tols: &Tolerances, family: &str) -> Result<PstCertificate> {
    let dec = eigendecompose(base, None)?;
    match pst_certify(&dec, u, v, tols)? {
        PstOutcome::Certified(c) => Ok(c),
        PstOutcome::Failed(f) => Err(Error::NotApplicable(format!("{family}: base graph has no certified PST: {}", f.describe()))),
    }
}

fn plan(family: &PgstFamily, tols: &Tolerances) -> Result<Plan> {
    let tag = family.tag();
    match family {
        &PgstFamily::Barbell { m } => {
            if m == 0 {
                return Err(invalid(tag, "m must be at least 1"));
            }
            let graph = Graph::complete(2)?.corona(&Graph::complete(m)?)?;
            let mi = m as i64;
            // Λ for λ = 1 and λ = -1 with k = m - 1.
            let (s1, c1) = split(mi * mi + 4)?;
            let (s2, c2) = split(mi * mi + 4 * mi)?;
            let mut notes = vec![format!("Lambda(+1) = {s1}*sqrt({c1}), Lambda(-1) = {s2}*sqrt({c2})")];
            let targets = if c1 != c2 {
                let t: Vec<(u64, KroneckerTarget)> = [(s1, c1, "+1"), (s2, c2, "-1")]
                    .iter()
                    .map(|&(s, c, name)| {
                        let big = s as f64 * (c as f64).sqrt();
                        (c, KroneckerTarget { label: format!("Lambda({name})/2"), lambda: big / 2.0, alpha: -big / 4.0 })
                    })
                    .collect();
                check_independent(&t)?;
                t.into_iter().map(|(_, t)| t).collect()
            } else {
                notes.push(format!("Lambda(+1) and Lambda(-1) share the core {c1}"));
                let r = (c1 as f64).sqrt();
                vec![KroneckerTarget { label: format!("sqrt({c1})/2"), lambda: r / 2.0, alpha: -r / 4.0 }]
            };
            Ok(Plan { graph, source: 0, target: m + 1, targets, time: Box::new(|l| (2 * l + 1) as f64 * PI), notes })
        }
        &PgstFamily::SelfloopClique { n } => {
            if n < 2 {
                return Err(invalid(tag, "n must be at least 2"));
            }
            let graph = Graph::complete(n)?.selfloop().corona(&Graph::empty(2)?)?;
            let nf = n as f64;
            let first = KroneckerTarget { label: "n/(2*sqrt(2))".into(), lambda: nf / (2.0 * SQRT_2), alpha: -nf / (4.0 * SQRT_2) };
            let big_n = (n * n + 8) as i64;
            let mut notes = Vec::new();
            let targets = if big_n % 2 == 0 && is_perfect_square((big_n / 2) as i128) {
                let x = isqrt((big_n / 2) as u64) / 2;
                let q = (x - 1) / 2;
                notes.push(format!("(n^2+8)/2 = (2*{x})^2: second condition solved exactly by l = r*{} + {q}", 2 * q + 1));
                vec![first]
            } else {
                let (s2, c2) = split(2 * big_n)?;
                let x = s2 as f64 * (c2 as f64).sqrt() / 2.0;
                let second = KroneckerTarget { label: "sqrt((n^2+8)/2)/2".into(), lambda: x / 2.0, alpha: 0.5 - x / 4.0 };
                let t = vec![(2, first), (c2, second)];
                check_independent(&t)?;
                t.into_iter().map(|(_, t)| t).collect()
            };
            Ok(Plan { graph, source: 1, target: 2, targets, time: Box::new(|r| (2 * r + 1) as f64 * PI / SQRT_2), notes })
        }
        &PgstFamily::Bunkbed { n } => {
            if n == 1 || n == 3 {
                return Err(Error::NotApplicable(format!("bunkbed with n = {n}: 1 is an eigenvalue of the base, so no time works")));
            }
            if n == 0 {
                return Err(invalid(tag, "n must be positive"));
            }
            let graph = Graph::complete(n)?.cartesian(&Graph::complete(2)?)?.corona(&Graph::empty(2)?)?;
            let ni = n as i64;
            let mut lambdas = vec![ni, ni - 2, 0, -2];
            lambdas.sort_unstable();
            lambdas.dedup();
            lambdas.reverse();
            let mut notes = vec![format!("active base eigenvalues {lambdas:?}")];
            let mut t = Vec::new();
            for (c, members) in group_by_core(&lambdas, 8)? {
                let ss: Vec<u64> = members.iter().map(|m| m.1).collect();
                let x = half_offset(&ss)?;
                let names: Vec<String> = members.iter().map(|(l, s)| format!("sqrt({l}^2+8) = {s}*sqrt({c})")).collect();
                notes.push(names.join(", "));
                t.push((c, KroneckerTarget { label: format!("sqrt({c})"), lambda: (c as f64).sqrt(), alpha: x }));
            }
            check_independent(&t)?;
            Ok(Plan {
                graph,
                source: 1,
                target: 2,
                targets: t.into_iter().map(|(_, t)| t).collect(),
                time: Box::new(|l| 4.0 * PI * l as f64),
                notes,
            })
        }
        PgstFamily::ThornyPst { base, u, v } => {
            let cert = certify_base(base, *u, *v, tols, tag)?;
            let support = integer_support(&cert, tag)?;
            if support.contains(&0) {
                return Err(Error::NotApplicable("thorny-pst needs 0 outside the support of u; use thorny-zero".into()));
            }
            let big_g = (2.0 * cert.g).round() as i64;
            if big_g % 2 != 0 {
                return Err(Error::NotApplicable(format!("minimum PST time pi/{} is not pi over an integer", cert.g)));
            }
            let g = big_g / 2;
            let mut t = Vec::new();
            for c in group_by_core(&support, 4)?.into_keys() {
                let r = (c as f64).sqrt();
                t.push((c, KroneckerTarget { label: format!("sqrt({c})"), lambda: r, alpha: -r / (2.0 * g as f64) }));
            }
            check_independent(&t)?;
            let graph = base.corona(&Graph::complete(1)?)?;
            Ok(Plan {
                graph,
                source: 2 * u,
                target: 2 * v,
                targets: t.into_iter().map(|(_, t)| t).collect(),
                time: Box::new(move |l| (4.0 * l as f64 + 2.0 / g as f64) * PI),
                notes: vec![format!("base PST at pi/{g}, support {support:?}")],
            })
        }
        PgstFamily::ThornyZero { base, u, v } => {
            let cert = certify_base(base, *u, *v, tols, tag)?;
            let support = integer_support(&cert, tag)?;
            let big_g = (2.0 * cert.g).round() as i64;
            // π/2 must be an odd multiple of t0 = π/g, i.e. g/2 odd.
            if big_g % 4 != 0 || (big_g / 4) % 2 != 1 {
                return Err(Error::NotApplicable(format!("base PST minimum time pi/{} does not give PST at pi/2", cert.g)));
            }
            let nonzero: Vec<i64> = support.iter().copied().filter(|&l| l != 0).collect();
            let mut t = Vec::new();
            let mut notes = vec![format!("base PST at pi/2, support {support:?}")];
            for (c, members) in group_by_core(&nonzero, 4)? {
                let ss: Vec<u64> = members.iter().map(|m| m.1).collect();
                let x = half_offset(&ss)?;
                let r = (c as f64).sqrt();
                notes.push(members.iter().map(|(l, s)| format!("sqrt({l}^2+4) = {s}*sqrt({c})")).collect::<Vec<_>>().join(", "));
                t.push((c, KroneckerTarget { label: format!("sqrt({c})"), lambda: r, alpha: -r / 4.0 + x }));
            }
            check_independent(&t)?;
            let graph = base.corona(&Graph::complete(1)?)?;
            Ok(Plan {
                graph,
                source: 2 * u,
                target: 2 * v,
                targets: t.into_iter().map(|(_, t)| t).collect(),
                time: Box::new(|l| (4 * l + 1) as f64 * PI),
                notes,
            })
        }
        &PgstFamily::CocktailThorn { n } => {
            if n < 3 || n % 2 == 0 {
                return Err(Error::NotApplicable(format!("cocktail-thorn needs odd n >= 3, got {n}; even n is covered by thorny-zero")));
            }
            let ni = n as i64;
            let (s0, c0) = split(1 + (ni - 1) * (ni - 1))?;
            let t = vec![
                (c0, KroneckerTarget { label: format!("sqrt({c0})"), lambda: (c0 as f64).sqrt(), alpha: 0.25 }),
                (2, KroneckerTarget { label: "sqrt(2)".into(), lambda: SQRT_2, alpha: 0.25 }),
            ];
            check_independent(&t)?;
            let graph = Graph::cocktail(n)?.corona(&Graph::complete(1)?)?;
            Ok(Plan {
                graph,
                source: 0,
                target: 2,
                targets: t.into_iter().map(|(_, t)| t).collect(),
                time: Box::new(|l| 4.0 * PI * l as f64),
                notes: vec![format!("Lambda_0 = 2*{s0}*sqrt({c0}), Lambda_2 = 2*sqrt(2)")],
            })
        }
    }
}

/// Builds the family's graph, solves the simultaneous approximation behind
/// its time form, and halves the approximation tolerance until the fidelity
/// measured on the built graph reaches `1 - eps`.
pub fn pgst_construct_time(family: &PgstFamily, eps: f64, opts: &ConstructionOptions) -> Result<PgstWitness> {
    if !(eps > 1e-6 && eps < 0.5) {
        return Err(invalid(family.tag(), format!("eps = {eps} outside (1e-6, 0.5)")));
    }
    let plan = plan(family, &opts.tols)?;
    let dec = eigendecompose(&plan.graph, None)?;
    let series = dec.amplitude_series(&[plan.source], &[plan.target])?;
    let lambdas: Vec<f64> = plan.targets.iter().map(|t| t.lambda).collect();
    let alphas: Vec<f64> = plan.targets.iter().map(|t| t.alpha).collect();

    let mut eps_k = eps.sqrt() / 2.0;
    let mut floor = opts.n_floor;
    let mut attempts = 0;
    while eps_k >= MIN_KRONECKER_EPS {
        attempts += 1;
        let Some(sol) = kronecker_solve(&lambdas, &alphas, eps_k, floor, opts.n_max)? else {
            return Err(Error::KroneckerExhausted { n_floor: opts.n_floor, n_max: opts.n_max, eps: eps_k });
        };
        let time = (plan.time)(sol.ell);
        let fid = series.fidelity(time);
        log::info!("{}: attempt {attempts}, kronecker eps {eps_k:.3e}, l = {}, t = {time:.6}, fidelity = {fid:.12}", family.tag(), sol.ell);
        if fid >= 1.0 - eps {
            return Ok(PgstWitness {
                u: plan.graph.label(plan.source).to_string(),
                v: plan.graph.label(plan.target).to_string(),
                time,
                fidelity: fid,
                construction: family.tag(),
                target_eps: Some(eps),
                vertices: plan.graph.n(),
                ell: Some(sol.ell),
                kronecker_eps: Some(eps_k),
                kronecker_achieved: Some(sol.achieved),
                attempts,
                targets: plan.targets,
                notes: plan.notes,
            });
        }
        eps_k /= 2.0;
        floor = floor.max(sol.ell - 1);
    }
    Err(Error::KroneckerExhausted { n_floor: opts.n_floor, n_max: opts.n_max, eps: eps_k })
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > GRID_RESOLUTION * b.abs().max(1.0) {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

fn join(vs: &[usize]) -> String {
    vs.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

/// Best fidelity on `[0, t_max]`: uniform coarse grid, then golden-section
/// refinement around the best local maxima.
pub fn pgst_grid_search(dec: &SpectralDecomposition, source: &[usize], target: &[usize], t_max: f64, coarse_steps: usize) -> Result<PgstWitness> {
    if !(t_max > 0.0) || !t_max.is_finite() {
        return Err(Error::NonPositive("t_max"));
    }
    if coarse_steps < 1000 {
        return Err(invalid("grid-search", format!("coarse_steps = {coarse_steps} below 1000")));
    }
    let series = dec.amplitude_series(source, target)?;
    let step = t_max / coarse_steps as f64;
    let grid: Vec<f64> = (0..=coarse_steps).into_par_iter().map(|i| series.fidelity(i as f64 * step)).collect();
    let mut peaks: Vec<usize> = (0..=coarse_steps)
        .filter(|&i| (i == 0 || grid[i] >= grid[i - 1]) && (i == coarse_steps || grid[i] >= grid[i + 1]))
        .collect();
    peaks.sort_by(|&a, &b| grid[b].total_cmp(&grid[a]).then(a.cmp(&b)));
    peaks.truncate(DEFAULT_GRID_REFINEMENTS);
    let mut best = (0.0, f64::NEG_INFINITY);
    for &i in &peaks {
        let lo = (i.saturating_sub(1)) as f64 * step;
        let hi = ((i + 1).min(coarse_steps)) as f64 * step;
        let mut cand = golden_max(|t| series.fidelity(t), lo, hi);
        if grid[i] > cand.1 {
            cand = (i as f64 * step, grid[i]);
        }
        if cand.1 > best.1 || (cand.1 == best.1 && cand.0 < best.0) {
            best = cand;
        }
    }
    Ok(PgstWitness {
        u: join(source),
        v: join(target),
        time: best.0,
        fidelity: best.1,
        construction: "grid-search",
        target_eps: None,
        vertices: dec.n(),
        ell: None,
        kronecker_eps: None,
        kronecker_achieved: None,
        attempts: 1,
        targets: Vec::new(),
        notes: vec![format!("t_max = {t_max}, coarse steps = {coarse_steps}, refined maxima = {}", peaks.len())],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::expm_amplitude;

    fn construct(f: PgstFamily, eps: f64) -> PgstWitness {
        pgst_construct_time(&f, eps, &ConstructionOptions::default()).unwrap()
    }

    fn recheck(f: &PgstFamily, w: &PgstWitness) {
        let p = plan(f, &Tolerances::default()).unwrap();
        if p.graph.n() <= 40 && w.time < 1e4 {
            let dense = expm_amplitude(p.graph.weights(), &[p.source], &[p.target], w.time).norm();
            assert!((dense - w.fidelity).abs() < 1e-8, "{dense} vs {}", w.fidelity);
        }
    }

    #[test]
    fn half_offsets() {
        assert_eq!(half_offset(&[3]).unwrap(), 1.0 / 6.0);
        assert_eq!(half_offset(&[1, 3]).unwrap(), 0.5);
        assert_eq!(half_offset(&[2, 6]).unwrap(), 0.25);
        assert!(half_offset(&[1, 2]).is_err());
    }

    #[test]
    fn barbell_small() {
        for m in [1, 2, 5] {
            let f = PgstFamily::Barbell { m };
            let w = construct(f.clone(), 1e-3);
            assert!(w.fidelity >= 0.999, "{w:?}");
            assert_eq!((w.u.as_str(), w.v.as_str()), ("0.0", "1.0"));
            recheck(&f, &w);
        }
        // m = 1: both gaps are √5, the dependent branch.
        assert_eq!(construct(PgstFamily::Barbell { m: 1 }, 1e-2).targets.len(), 1);
    }

    #[test]
    fn selfloop_and_perfect_square_branch() {
        for n in [2, 3, 8] {
            let f = PgstFamily::SelfloopClique { n };
            let w = construct(f.clone(), 1e-3);
            assert!(w.fidelity >= 0.999, "{w:?}");
            recheck(&f, &w);
        }
        assert_eq!(construct(PgstFamily::SelfloopClique { n: 8 }, 1e-2).targets.len(), 1);
        assert!(pgst_construct_time(&PgstFamily::SelfloopClique { n: 1 }, 1e-2, &ConstructionOptions::default()).is_err());
    }

    #[test]
    fn bunkbed_rejections_and_small_case() {
        for n in [1, 3] {
            assert!(matches!(pgst_construct_time(&PgstFamily::Bunkbed { n }, 1e-2, &ConstructionOptions::default()), Err(Error::NotApplicable(_))));
        }
        let f = PgstFamily::Bunkbed { n: 2 };
        let w = construct(f.clone(), 1e-2);
        assert!(w.fidelity >= 0.99);
        recheck(&f, &w);
    }

    #[test]
    fn thorny_routes() {
        let f = PgstFamily::ThornyPst { base: Graph::cube(3).unwrap(), u: 0, v: 7 };
        let w = construct(f.clone(), 1e-2);
        assert!(w.fidelity >= 0.99);
        recheck(&f, &w);
        let f = PgstFamily::ThornyZero { base: Graph::cube(2).unwrap(), u: 0, v: 3 };
        let w = construct(f.clone(), 1e-2);
        assert!(w.fidelity >= 0.99);
        recheck(&f, &w);
        let f = PgstFamily::CocktailThorn { n: 3 };
        let w = construct(f.clone(), 1e-2);
        assert!(w.fidelity >= 0.99);
        recheck(&f, &w);
        assert!(pgst_construct_time(&PgstFamily::ThornyPst { base: Graph::cube(2).unwrap(), u: 0, v: 3 }, 1e-2, &ConstructionOptions::default()).is_err());
        assert!(pgst_construct_time(&PgstFamily::CocktailThorn { n: 4 }, 1e-2, &ConstructionOptions::default()).is_err());
    }

    #[test]
    fn eps_range_and_exhaustion() {
        let f = PgstFamily::Barbell { m: 3 };
        assert!(pgst_construct_time(&f, 0.6, &ConstructionOptions::default()).is_err());
        assert!(pgst_construct_time(&f, 1e-7, &ConstructionOptions::default()).is_err());
        let tight = ConstructionOptions { n_max: 3, ..Default::default() };
        assert!(matches!(pgst_construct_time(&f, 1e-4, &tight), Err(Error::KroneckerExhausted { .. })));
    }

    #[test]
    fn grid_search_cases() {
        let dec = eigendecompose(&Graph::complete(2).unwrap(), None).unwrap();
        let w = pgst_grid_search(&dec, &[0], &[1], 10.0, 1000).unwrap();
        assert!((w.fidelity - 1.0).abs() < 1e-12);
        assert!((w.time - PI / 2.0).abs() < 1e-6);

        let p4 = Graph::complete(2).unwrap().corona(&Graph::complete(1).unwrap()).unwrap();
        let dec = eigendecompose(&p4, None).unwrap();
        let w = pgst_grid_search(&dec, &[0], &[2], 200.0, 100_000).unwrap();
        assert!(w.fidelity < 1.0 && w.fidelity > 0.99, "{w:?}");
        assert!(pgst_grid_search(&dec, &[0], &[2], 10.0, 10).is_err());
    }
}
