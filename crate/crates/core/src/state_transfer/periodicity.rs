use serde::Serialize;

use super::Tolerances;
use crate::error::{Error, Result};
use crate::number_theory::{is_perfect_square, recognize_quadratic, square_free_part, QuadraticValue};
use crate::graph::Graph;
use crate::spectral::{eigendecompose, eigenvalue_support, SpectralDecomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PeriodicityStatus {
    Periodic,
    NotPeriodic,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PeriodicityRule {
    IntegerSpectrum,
    QuadraticForm,
    SmallGap,
    SizeBound,
    CoronaDivisibility,
    RecognitionFailed,
}

impl PeriodicityRule {
    pub fn as_str(self) -> &'static str {
        match self {
            PeriodicityRule::IntegerSpectrum => "integer-spectrum",
            PeriodicityRule::QuadraticForm => "quadratic-form",
            PeriodicityRule::SmallGap => "small-gap",
            PeriodicityRule::SizeBound => "size-bound",
            PeriodicityRule::CoronaDivisibility => "corona-divisibility",
            PeriodicityRule::RecognitionFailed => "recognition-failed",
        }
    }
}

/// Eigenvalues that triggered a rule. For corona verdicts these are base
/// eigenvalues of `G`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RuleWitness {
    pub rule: PeriodicityRule,
    pub eigenvalues: Vec<f64>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodicityVerdict {
    pub status: PeriodicityStatus,
    /// The deciding rule.
    pub rule: PeriodicityRule,
    pub delta: Option<u64>,
    pub a: Option<i64>,
    /// Eigenvalue support of the vertex judged, descending.
    pub support: Vec<f64>,
    /// Exact forms of `support` when available.
    pub support_exact: Vec<QuadraticValue>,
    pub witness: Option<RuleWitness>,
    /// Other rules that also rule out periodicity.
    pub also_fired: Vec<RuleWitness>,
}

impl PeriodicityVerdict {
    /// Whether `rule` decided the verdict or also fired.
    pub fn fired(&self, rule: PeriodicityRule) -> Option<&RuleWitness> {
        self.witness.iter().chain(&self.also_fired).find(|w| w.rule == rule)
    }

    fn inconclusive(support: Vec<f64>, failed: f64, detail: String) -> Self {
        let witness = RuleWitness { rule: PeriodicityRule::RecognitionFailed, eigenvalues: vec![failed], detail };
        PeriodicityVerdict {
            status: PeriodicityStatus::Inconclusive,
            rule: PeriodicityRule::RecognitionFailed,
            delta: None,
            a: None,
            support,
            support_exact: Vec::new(),
            witness: Some(witness),
            also_fired: Vec::new(),
        }
    }
}

/// Whether `Σ λ E_λ` has integer entries, i.e. the spectrum is closed under
/// algebraic conjugation.
fn integral(dec: &SpectralDecomposition) -> bool {
    dec.reconstruct().as_slice().iter().all(|x| (x - x.round()).abs() < 1e-8)
}

fn algebraic_integer(q: &QuadraticValue) -> bool {
    if q.b == 0 {
        return q.a % 2 == 0;
    }
    if q.delta % 4 == 1 {
        (q.a - q.b) % 2 == 0
    } else {
        q.a % 2 == 0 && q.b % 2 == 0
    }
}

/// Exact forms of `support`, or the first eigenvalue that could not be
/// recognized together with the reason. For integer matrices a recognized
/// value must be an algebraic integer whose conjugate is also in the
/// support; this filters coincidental matches of the recognition search.
pub fn recognize_support(dec: &SpectralDecomposition, support: &[f64], tols: &Tolerances) -> std::result::Result<Vec<QuadraticValue>, (f64, String)> {
    let check = integral(dec);
    let tol = dec.grouping_tol().max(tols.recognition) * 10.0;
    support
        .iter()
        .map(|&x| {
            let q = recognize_quadratic(x, tols.max_coeff, tols.recognition)
                .ok_or_else(|| (x, format!("no (a + b*sqrt(D))/2 within {:e} with coefficients up to {}", tols.recognition, tols.max_coeff)))?;
            if check {
                if !algebraic_integer(&q) {
                    return Err((x, format!("match {q:?} is not an algebraic integer")));
                }
                let c = q.conjugate().value();
                if q.b != 0 && !support.iter().any(|&y| (y - c).abs() < tol) {
                    return Err((x, format!("match {q:?} has no conjugate in the support")));
                }
            }
            Ok(q)
        })
        .collect()
}

/// `(a, Δ, b_λ)` with every value equal to `(a + b_λ√Δ)/2`, or the indices
/// of two values that admit no common form.
pub(crate) fn common_form(values: &[QuadraticValue]) -> std::result::Result<(i64, u64, Vec<i64>), (usize, usize)> {
    match values.iter().position(|q| q.b != 0) {
        None => {
            let a = values.first().map_or(0, |q| q.a.rem_euclid(2));
            if let Some(i) = values.iter().position(|q| (q.a - a) % 2 != 0) {
                return Err((0, i));
            }
            Ok((a, 1, values.iter().map(|q| q.a - a).collect()))
        }
        Some(first) => {
            let (a, delta) = (values[first].a, values[first].delta);
            for (i, q) in values.iter().enumerate() {
                let fits = if q.b == 0 { q.a == a } else { q.a == a && q.delta == delta };
                if !fits {
                    return Err((first, i));
                }
            }
            Ok((a, delta, values.iter().map(|q| q.b).collect()))
        }
    }
}

/// Periodicity at vertex `u`: periodic iff the support is integral,
/// or all support eigenvalues are `(a + b_λ√Δ)/2` with one `a` and `Δ`.
pub fn periodicity_verdict(dec: &SpectralDecomposition, u: usize, tols: &Tolerances) -> Result<PeriodicityVerdict> {
    let support = eigenvalue_support(dec, u, tols.support)?;
    let exact = match recognize_support(dec, &support, tols) {
        Ok(e) => e,
        Err((x, detail)) => return Ok(PeriodicityVerdict::inconclusive(support, x, detail)),
    };
    let mut verdict = PeriodicityVerdict {
        status: PeriodicityStatus::Periodic,
        rule: PeriodicityRule::QuadraticForm,
        delta: None,
        a: None,
        support: support.clone(),
        support_exact: exact.clone(),
        witness: None,
        also_fired: Vec::new(),
    };
    if exact.iter().all(QuadraticValue::is_integer) {
        verdict.rule = PeriodicityRule::IntegerSpectrum;
        verdict.delta = Some(1);
        verdict.a = Some(0);
        return Ok(verdict);
    }
    match common_form(&exact) {
        Ok((a, delta, _)) => {
            verdict.delta = Some(delta);
            verdict.a = Some(a);
        }
        Err((i, j)) => {
            verdict.status = PeriodicityStatus::NotPeriodic;
            verdict.witness = Some(RuleWitness {
                rule: PeriodicityRule::QuadraticForm,
                eigenvalues: vec![support[i], support[j]],
                detail: format!("{:?} and {:?} share no (a, delta)", exact[i], exact[j]),
            });
        }
    }
    Ok(verdict)
}

fn shifted(q: &QuadraticValue, k: i64) -> QuadraticValue {
    QuadraticValue { a: q.a - 2 * k, b: q.b, delta: q.delta }
}

fn square_free_divisors(n: i64) -> Vec<i64> {
    (1..=n).filter(|d| n % d == 0 && square_free_part(*d).is_ok_and(|s| s.square_part == 1)).collect()
}

/// Periodicity of `(v,0)` in `G ∘ H`, `H` k-regular on `m` vertices, from the
/// exact support of `v` in `G`. Rules in order: small-gap, size-bound,
/// divisibility of `2m` by `Δ`.
pub fn corona_periodicity(base_support: &[QuadraticValue], k: i64, m: i64) -> Result<PeriodicityVerdict> {
    if m < 1 {
        return Err(Error::NonPositive("m"));
    }
    if base_support.is_empty() {
        return Err(Error::EmptySet);
    }
    let lambdas: Vec<f64> = base_support.iter().map(QuadraticValue::value).collect();
    let dist: Vec<f64> = base_support.iter().map(|q| shifted(q, k).value().abs()).collect();
    let mut support: Vec<f64> = lambdas
        .iter()
        .flat_map(|&l| {
            let (p, q) = crate::corona::split_eigenvalue(l, k as f64, m as usize);
            [p, q]
        })
        .collect();
    support.sort_by(|a, b| b.total_cmp(a));

    let mut fired = Vec::new();
    'gap: for i in 0..dist.len() {
        for j in 0..dist.len() {
            let d = dist[i] - dist[j];
            if d > 1e-9 && d < 3.0 - 1e-9 {
                fired.push(RuleWitness {
                    rule: PeriodicityRule::SmallGap,
                    eigenvalues: vec![lambdas[i], lambdas[j]],
                    detail: format!("|lambda-k| - |mu-k| = {d} lies in (0, 3)"),
                });
                break 'gap;
            }
        }
    }
    let over: Vec<f64> = (0..dist.len()).filter(|&i| (m as f64) < dist[i] + 1.0 - 1e-9).map(|i| lambdas[i]).collect();
    if !over.is_empty() {
        fired.push(RuleWitness {
            rule: PeriodicityRule::SizeBound,
            eigenvalues: over,
            detail: format!("m = {m} < |lambda-k| + 1"),
        });
    }

    // (λ-k)² = (a'² + b²D + 2a'b√D)/4 must be an integer N_λ.
    let mut norms = Vec::with_capacity(base_support.len());
    let mut irrational = None;
    for (q, &l) in base_support.iter().zip(&lambdas) {
        let s = shifted(q, k);
        let four_n = (s.a as i128).pow(2) + (s.b as i128).pow(2) * s.delta as i128;
        if s.a != 0 && s.b != 0 || four_n % 4 != 0 {
            irrational = Some(l);
            break;
        }
        norms.push((four_n / 4, s.a.signum() + s.b.signum()));
    }
    let mut found = None;
    if irrational.is_none() {
        for delta in square_free_divisors(2 * m) {
            let d = delta as i128;
            let ok = norms.iter().all(|&(n, _)| n % d == 0 && is_perfect_square(n / d) && (n + 4 * m as i128) % d == 0 && is_perfect_square((n + 4 * m as i128) / d));
            if ok {
                found = Some(delta);
                break;
            }
        }
    }
    if found.is_none() {
        fired.push(RuleWitness {
            rule: PeriodicityRule::CoronaDivisibility,
            eigenvalues: irrational.map_or_else(|| lambdas.clone(), |l| vec![l]),
            detail: match irrational {
                Some(_) => "(lambda-k)^2 is not an integer".to_string(),
                None => format!("no square-free divisor of 2m = {} makes (lambda-k)^2/D and ((lambda-k)^2+4m)/D squares", 2 * m),
            },
        });
    }

    let Some(delta) = found else {
        let witness = fired.remove(0);
        return Ok(PeriodicityVerdict {
            status: PeriodicityStatus::NotPeriodic,
            rule: witness.rule,
            delta: None,
            a: None,
            support,
            support_exact: Vec::new(),
            witness: Some(witness),
            also_fired: fired,
        });
    };
    if !fired.is_empty() {
        return Err(Error::Inconsistent(format!(
            "divisibility finds delta = {delta} but {} also fires",
            fired[0].rule.as_str()
        )));
    }
    let d = delta as i128;
    let mut exact: Vec<QuadraticValue> = norms
        .iter()
        .flat_map(|&(n, sign)| {
            let s = (sign as i128) * isqrt128(n / d);
            let r = isqrt128((n + 4 * m as i128) / d);
            [QuadraticValue::new(2 * k, (s + r) as i64, delta as u64), QuadraticValue::new(2 * k, (s - r) as i64, delta as u64)]
        })
        .collect();
    exact.sort_by(|x, y| y.value().total_cmp(&x.value()));
    Ok(PeriodicityVerdict {
        status: PeriodicityStatus::Periodic,
        rule: PeriodicityRule::CoronaDivisibility,
        delta: Some(delta as u64),
        a: Some(2 * k),
        support,
        support_exact: exact,
        witness: None,
        also_fired: Vec::new(),
    })
}

fn isqrt128(n: i128) -> i128 {
    crate::number_theory::isqrt(n as u64) as i128
}

/// Verdict for the base vertex `(v,0)` of `G ∘ H` computed from the spectrum
/// of `G` alone. `H` must be regular of integer degree.
pub fn corona_vertex_periodicity(g: &Graph, h: &Graph, v: usize, tols: &Tolerances) -> Result<PeriodicityVerdict> {
    g.check_vertex(v)?;
    let k = h.is_regular().ok_or(Error::NotRegular)?;
    if k.fract() != 0.0 {
        return Err(Error::NotApplicable(format!("H has non-integer degree {k}")));
    }
    let dec = eigendecompose(g, None)?;
    let support = eigenvalue_support(&dec, v, tols.support)?;
    match recognize_support(&dec, &support, tols) {
        Ok(exact) => corona_periodicity(&exact, k as i64, h.n() as i64),
        Err((x, why)) => Err(Error::NotApplicable(format!("base eigenvalue {x} not recognized: {why}"))),
    }
}
