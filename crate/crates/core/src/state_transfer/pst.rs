use num_complex::Complex64;
use serde::Serialize;

use super::periodicity::{common_form, corona_periodicity, recognize_support, PeriodicityStatus};
use super::Tolerances;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{eigendecompose, eigenvalue_support, fidelity, quotient, strongly_cospectral, transition_amplitude, CospectralSign, SpectralDecomposition};

/// Fidelity a certificate must reach at `t0`.
pub const CERTIFICATE_FIDELITY: f64 = 1.0 - 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PstCertificate {
    pub u: usize,
    pub v: usize,
    /// Eigenvalue support of `u`, descending.
    pub support: Vec<f64>,
    pub signs: Vec<CospectralSign>,
    pub delta: u64,
    pub a: i64,
    /// `b_λ` with `λ = (a + b_λ√Δ)/2`, aligned with `support`.
    pub b_list: Vec<i64>,
    pub rho: f64,
    /// `g = gcd{(ρ-λ)/√Δ}` over the support.
    pub g: f64,
    pub t0: f64,
    /// `e^{-i t0 ρ}`.
    pub phase: Complex64,
    pub amplitude: Complex64,
    pub verified_fidelity: f64,
    /// How the parity condition was read: `(ρ-λ)/(g√Δ)` must be even
    /// exactly when `⟨u|E_λ|v⟩ > 0`.
    pub parity_reading: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum PstFailure {
    SameVertex,
    NotStronglyCospectral,
    /// The support could not be recognized exactly; nothing is decided.
    RecognitionFailed { eigenvalue: f64, detail: String },
    NotPeriodic { eigenvalues: Vec<f64>, detail: String },
    SignCondition { eigenvalue: f64, quotient: i64, sign: CospectralSign },
    FidelityCheck { t0: f64, fidelity: f64 },
}

impl PstFailure {
    pub fn describe(&self) -> String {
        match self {
            PstFailure::SameVertex => "u and v coincide".into(),
            PstFailure::NotStronglyCospectral => "u and v are not strongly cospectral".into(),
            PstFailure::RecognitionFailed { eigenvalue, detail } => format!("eigenvalue {eigenvalue} not recognized exactly: {detail}"),
            PstFailure::NotPeriodic { detail, .. } => format!("u is not periodic: {detail}"),
            PstFailure::SignCondition { eigenvalue, quotient, sign } => {
                format!("parity condition fails at eigenvalue {eigenvalue}: (rho-lambda)/(g*sqrt(delta)) = {quotient} with sign {sign:?}")
            }
            PstFailure::FidelityCheck { t0, fidelity } => format!("fidelity {fidelity} at t0 = {t0} below threshold"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum PstOutcome {
    Certified(PstCertificate),
    Failed(PstFailure),
}

impl PstOutcome {
    pub fn certificate(&self) -> Option<&PstCertificate> {
        match self {
            PstOutcome::Certified(c) => Some(c),
            PstOutcome::Failed(_) => None,
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Certifies perfect state transfer from `u` to `v`: strong cospectrality,
/// a common quadratic form `(a + b_λ√Δ)/2` on the support, and the parity
/// condition. The minimum time is `t0 = π/(g√Δ)` with phase `e^{-i t0 ρ}`.
pub fn pst_certify(dec: &SpectralDecomposition, u: usize, v: usize, tols: &Tolerances) -> Result<PstOutcome> {
    for x in [u, v] {
        if x >= dec.n() {
            return Err(Error::VertexOutOfRange { vertex: x, n: dec.n() });
        }
    }
    if u == v {
        return Ok(PstOutcome::Failed(PstFailure::SameVertex));
    }
    let Some(cos) = strongly_cospectral(dec, u, v, tols.support)? else {
        return Ok(PstOutcome::Failed(PstFailure::NotStronglyCospectral));
    };
    let (support, signs): (Vec<f64>, Vec<CospectralSign>) =
        cos.eigenvalues.iter().zip(&cos.signs).filter(|(_, s)| **s != CospectralSign::NotInSupport).map(|(l, s)| (*l, *s)).unzip();
    let exact = match recognize_support(dec, &support, tols) {
        Ok(e) => e,
        Err((eigenvalue, detail)) => return Ok(PstOutcome::Failed(PstFailure::RecognitionFailed { eigenvalue, detail })),
    };
    let (a, delta, b_list) = match common_form(&exact) {
        Ok(f) => f,
        Err((i, j)) => {
            return Ok(PstOutcome::Failed(PstFailure::NotPeriodic {
                eigenvalues: vec![support[i], support[j]],
                detail: format!("{:?} and {:?} share no (a, delta)", exact[i], exact[j]),
            }))
        }
    };
    let top = (0..b_list.len()).max_by_key(|&i| b_list[i]).ok_or(Error::EmptySet)?;
    let b_rho = b_list[top];
    let big_g = b_list.iter().fold(0, |acc, &b| gcd(acc, b_rho - b));
    if big_g == 0 {
        return Ok(PstOutcome::Failed(PstFailure::NotPeriodic { eigenvalues: support.clone(), detail: "support has a single eigenvalue".into() }));
    }
    for ((&l, &b), &sign) in support.iter().zip(&b_list).zip(&signs) {
        let q = (b_rho - b) / big_g;
        if (q % 2 == 0) != (sign == CospectralSign::Plus) {
            return Ok(PstOutcome::Failed(PstFailure::SignCondition { eigenvalue: l, quotient: q, sign }));
        }
    }
    let sqrt_delta = (delta as f64).sqrt();
    let g = big_g as f64 / 2.0;
    let t0 = std::f64::consts::PI / (g * sqrt_delta);
    let rho = support[top];
    let amplitude = transition_amplitude(dec, &[u], &[v], t0)?;
    let verified_fidelity = amplitude.norm();
    if verified_fidelity <= CERTIFICATE_FIDELITY {
        return Ok(PstOutcome::Failed(PstFailure::FidelityCheck { t0, fidelity: verified_fidelity }));
    }
    Ok(PstOutcome::Certified(PstCertificate {
        u,
        v,
        support,
        signs,
        delta,
        a,
        b_list,
        rho,
        g,
        t0,
        phase: Complex64::from_polar(1.0, -t0 * rho),
        amplitude,
        verified_fidelity,
        parity_reading: "(rho-lambda)/(g*sqrt(delta))",
    }))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedP4Report {
    pub s: u64,
    pub ell: u64,
    pub alpha: f64,
    pub t: f64,
    /// `(u,0) → (v,0)`.
    pub inner_fidelity: f64,
    /// `(u,1) → (v,1)`.
    pub antipodal_fidelity: f64,
}

/// `K2(α) ∘ K1` with `α = 2(2s+1)/√((2ℓ)² - (2s+1)²)` at
/// `t = (π/2)√((2ℓ)² - (2s+1)²)`, checked on the dense decomposition.
pub fn weighted_p4_pst(s: u64, ell: u64) -> Result<WeightedP4Report> {
    if ell <= s {
        return Err(Error::InvalidParams { family: "weighted-p4".into(), reason: format!("need ell > s, got s={s}, ell={ell}") });
    }
    let odd = (2 * s + 1) as f64;
    let root = ((2 * ell) as f64).powi(2) - odd * odd;
    let root = root.sqrt();
    let alpha = 2.0 * odd / root;
    let t = std::f64::consts::FRAC_PI_2 * root;
    let g = Graph::wk2(alpha)?.corona(&Graph::complete(1)?)?;
    let dec = eigendecompose(&g, None)?;
    Ok(WeightedP4Report {
        s,
        ell,
        alpha,
        t,
        inner_fidelity: fidelity(&dec, &[0], &[2], t)?,
        antipodal_fidelity: fidelity(&dec, &[1], &[3], t)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DigonVariant {
    C2,
    C4,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DigonReport {
    pub r: u64,
    pub variant: DigonVariant,
    pub m: usize,
    pub vertices: usize,
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub t: f64,
    pub fidelity: f64,
    /// Path weights of the four-cell quotient, `None` if not equitable.
    pub quotient_weights: Option<[f64; 3]>,
    pub expected_weights: [f64; 3],
    /// Largest entrywise deviation of the quotient from the weighted path.
    pub quotient_error: f64,
}

/// Perfect state transfer at `π/2` in `C2 ∘ empty(4r²-1)` between the base
/// vertices, or in `C4 ∘ empty(4r²-1)` between the two antipodal pairs.
pub fn digon_corona_pst(r: u64, variant: DigonVariant) -> Result<DigonReport> {
    if r == 0 {
        return Err(Error::NonPositive("r"));
    }
    let m = (4 * r * r - 1) as usize;
    let base = match variant {
        DigonVariant::C2 => Graph::digon(),
        DigonVariant::C4 => Graph::cube(2)?,
    };
    let (s_base, t_base): (Vec<usize>, Vec<usize>) = match variant {
        DigonVariant::C2 => (vec![0], vec![1]),
        DigonVariant::C4 => (vec![0, 3], vec![1, 2]),
    };
    if base.n() * (m + 1) > crate::graph::MAX_VERTICES {
        return Err(Error::InvalidParams { family: "digon-corona".into(), reason: format!("r = {r} exceeds the vertex limit") });
    }
    let g = base.corona(&Graph::empty(m)?)?;
    let idx = |v: usize, w: usize| v * (m + 1) + w;
    let source: Vec<usize> = s_base.iter().map(|&v| idx(v, 0)).collect();
    let target: Vec<usize> = t_base.iter().map(|&v| idx(v, 0)).collect();
    let pendants = |vs: &[usize]| vs.iter().flat_map(|&v| (1..=m).map(move |w| idx(v, w))).collect::<Vec<_>>();
    let partition = vec![pendants(&s_base), source.clone(), target.clone(), pendants(&t_base)];

    let t = std::f64::consts::FRAC_PI_2;
    let dec = eigendecompose(&g, None)?;
    let fid = fidelity(&dec, &source, &target, t)?;

    let sm = (m as f64).sqrt();
    let expected_weights = [sm, 2.0, sm];
    let q = quotient(&g, &partition)?;
    let (quotient_weights, quotient_error) = match &q {
        Some(q) => {
            let w = q.weights();
            let err = (0..4usize)
                .flat_map(|i| (0..4usize).map(move |j| (i, j)))
                .map(|(i, j)| {
                    let e = if i.abs_diff(j) == 1 { expected_weights[i.min(j)] } else { 0.0 };
                    (w[(i, j)] - e).abs()
                })
                .fold(0.0, f64::max);
            (Some([w[(0, 1)], w[(1, 2)], w[(2, 3)]]), err)
        }
        None => (None, f64::INFINITY),
    };
    Ok(DigonReport {
        r,
        variant,
        m,
        vertices: g.n(),
        source: source.iter().map(|&x| g.label(x).to_string()).collect(),
        target: target.iter().map(|&x| g.label(x).to_string()).collect(),
        t,
        fidelity: fid,
        quotient_weights,
        expected_weights,
        quotient_error,
    })
}

#[derive(Debug, Clone)]
pub enum NoPstKind {
    /// `G ∘ K_m`, `G` connected on at least two vertices.
    CoronaWithComplete { g: Graph, m: usize },
    /// `G ∘ empty(m)`, `G` connected on at least two vertices, `m` one or prime.
    CoronaWithEmpty { g: Graph, m: usize },
    /// `K_{1,n} ∘ empty(m)`.
    StarCorona { n: usize, m: usize },
}

impl NoPstKind {
    pub fn tag(&self) -> &'static str {
        match self {
            NoPstKind::CoronaWithComplete { .. } => "corona-with-complete",
            NoPstKind::CoronaWithEmpty { .. } => "corona-with-empty",
            NoPstKind::StarCorona { .. } => "star-corona",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossCheck {
    pub vertex: String,
    pub method: &'static str,
    pub result: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NoPstVerdict {
    pub kind: &'static str,
    pub applicable: bool,
    pub no_pst: bool,
    pub theorem: String,
    pub reason: Option<String>,
    pub cross_check: Vec<CrossCheck>,
}

fn is_prime(m: usize) -> bool {
    m >= 2 && (2..).take_while(|p| p * p <= m).all(|p| !m.is_multiple_of(p))
}

fn is_star(g: &Graph) -> bool {
    let n = g.n();
    n >= 2
        && g.is_simple()
        && g.edge_count() == n - 1
        && (0..n).any(|c| (0..n).filter(|&x| x != c).all(|x| g.weight(c, x) == 1.0 && g.degree(x) == 1.0))
}

/// Largest corona on which the dense pairwise cross-check runs.
const DENSE_CROSS_CHECK_LIMIT: usize = 200;

fn dense_cross_check(corona: &Graph, tols: &Tolerances, out: &mut Vec<CrossCheck>) -> Result<()> {
    if corona.n() > DENSE_CROSS_CHECK_LIMIT {
        out.push(CrossCheck { vertex: "*".into(), method: "pst-certify", result: "skipped: graph too large".into() });
        return Ok(());
    }
    let dec = eigendecompose(corona, None)?;
    for u in 0..corona.n() {
        for v in u + 1..corona.n() {
            if let PstOutcome::Certified(c) = pst_certify(&dec, u, v, tols)? {
                return Err(Error::Inconsistent(format!(
                    "theorem excludes perfect state transfer but {} -> {} certifies at t0 = {}",
                    corona.label(u),
                    corona.label(v),
                    c.t0
                )));
            }
        }
    }
    out.push(CrossCheck {
        vertex: "*".into(),
        method: "pst-certify",
        result: format!("no certificate among {} pairs", corona.n() * (corona.n() - 1) / 2),
    });
    Ok(())
}

/// Rule-based "no perfect state transfer" verdict, cross-checked by the
/// corona periodicity cascade on each base vertex (or, when the base is a
/// star, by exhaustive certification on the corona itself).
pub fn no_pst_rule(kind: &NoPstKind, tols: &Tolerances) -> Result<NoPstVerdict> {
    let not_applicable = |reason: String| NoPstVerdict {
        kind: kind.tag(),
        applicable: false,
        no_pst: false,
        theorem: String::new(),
        reason: Some(reason),
        cross_check: Vec::new(),
    };
    let (g, m, k, theorem) = match kind {
        NoPstKind::CoronaWithComplete { g, m } => (g.clone(), *m, m.saturating_sub(1), "G connected on at least two vertices: G ∘ K_m has no periodic vertices, hence no perfect state transfer"),
        NoPstKind::CoronaWithEmpty { g, m } => {
            if *m != 1 && !is_prime(*m) {
                return Ok(not_applicable(format!("m = {m} is neither 1 nor prime")));
            }
            (g.clone(), *m, 0, "G connected on at least two vertices, m one or prime: G ∘ empty(m) has no perfect state transfer")
        }
        NoPstKind::StarCorona { n, m } => {
            if *n == 0 || *m == 0 {
                return Ok(not_applicable("star corona needs n, m >= 1".into()));
            }
            (Graph::star(*n)?, *m, 0, "K_{1,n} ∘ empty(m) has no perfect state transfer")
        }
    };
    if m == 0 {
        return Ok(not_applicable("m must be at least 1".into()));
    }
    if g.n() < 2 || !g.is_connected() {
        return Ok(not_applicable("base graph must be connected on at least two vertices".into()));
    }
    let h = match kind {
        NoPstKind::CoronaWithComplete { .. } => Graph::complete(m)?,
        _ => Graph::empty(m)?,
    };
    let mut cross_check = Vec::new();
    if matches!(kind, NoPstKind::CoronaWithComplete { .. }) || !is_star(&g) {
        let dg = eigendecompose(&g, None)?;
        for v in 0..g.n() {
            let support = eigenvalue_support(&dg, v, tols.support)?;
            let result = match recognize_support(&dg, &support, tols) {
                Err((x, _)) => format!("inconclusive: eigenvalue {x} not recognized"),
                Ok(exact) => {
                    let verdict = corona_periodicity(&exact, k as i64, m as i64)?;
                    if verdict.status == PeriodicityStatus::Periodic {
                        return Err(Error::Inconsistent(format!(
                            "theorem excludes periodicity but ({v},0) passes the corona cascade with delta = {:?}",
                            verdict.delta
                        )));
                    }
                    format!("not periodic ({})", verdict.rule.as_str())
                }
            };
            cross_check.push(CrossCheck { vertex: format!("{}.0", g.label(v)), method: "corona-periodicity", result });
        }
    } else {
        dense_cross_check(&g.corona(&h)?, tols, &mut cross_check)?;
    }
    Ok(NoPstVerdict { kind: kind.tag(), applicable: true, no_pst: true, theorem: theorem.to_string(), reason: None, cross_check })
}
