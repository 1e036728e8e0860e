//! Closed-form spectra, eigenprojectors and transition amplitudes of coronas
//! `G ∘ H` with `H` k-regular on `m` vertices.
//!
//! Each base eigenvalue `λ` of `G` splits into the pair
//! `λ± = (λ + k ± Λ_λ)/2` with gap `Λ_λ = √((λ-k)² + 4m)`; every eigenvalue
//! `μ` of `H` survives on the pendant copies, with the all-ones direction of
//! the `k`-eigenspace removed. Everything here is computed from the
//! decompositions of `G` and `H` alone and is independent of the dense
//! eigensolver run on the corona itself.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::CoronaVertex;
use crate::spectral::SpectralDecomposition;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasePair {
    pub lambda: f64,
    pub multiplicity: usize,
    pub plus: f64,
    pub minus: f64,
    /// `Λ_λ = √((λ-k)² + 4m)`.
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PendantEigenvalue {
    pub mu: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoronaSpectrum {
    pub n: usize,
    pub m: usize,
    pub k: f64,
    pub base_pairs: Vec<BasePair>,
    pub pendant_part: Vec<PendantEigenvalue>,
}

impl CoronaSpectrum {
    /// All eigenvalues with multiplicity, descending.
    pub fn eigenvalue_multiset(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self
            .base_pairs
            .iter()
            .flat_map(|p| std::iter::repeat_n([p.plus, p.minus], p.multiplicity).flatten())
            .chain(self.pendant_part.iter().flat_map(|e| std::iter::repeat_n(e.mu, e.multiplicity)))
            .collect();
        out.sort_by(|a, b| b.total_cmp(a));
        out
    }

    pub fn total_multiplicity(&self) -> usize {
        2 * self.base_pairs.iter().map(|p| p.multiplicity).sum::<usize>()
            + self.pendant_part.iter().map(|e| e.multiplicity).sum::<usize>()
    }
}

/// `Λ_λ = √((λ-k)² + 4m)`.
pub fn gap(lambda: f64, k: f64, m: usize) -> f64 {
    ((lambda - k).powi(2) + 4.0 * m as f64).sqrt()
}

/// `(λ₊ - k, λ₋ - k)`, the smaller one recovered from `(λ₊-k)(λ₋-k) = -m`
/// to avoid cancellation.
pub fn shifted_pair(lambda: f64, k: f64, m: usize) -> (f64, f64) {
    let d = lambda - k;
    let g = gap(lambda, k, m);
    let m = m as f64;
    if d >= 0.0 {
        let plus = (d + g) / 2.0;
        (plus, -m / plus)
    } else {
        let minus = (d - g) / 2.0;
        (-m / minus, minus)
    }
}

/// `λ±` for base eigenvalue `λ`.
pub fn split_eigenvalue(lambda: f64, k: f64, m: usize) -> (f64, f64) {
    let (p, q) = shifted_pair(lambda, k, m);
    (p + k, q + k)
}

/// Verifies from `dec_h` that `H` is k-regular on `m` vertices: the
/// all-ones vector must lie in the `k`-eigenspace. Returns the index of `k`.
pub fn regular_index(dec_h: &SpectralDecomposition, k: f64, m: usize) -> Result<usize> {
    if m == 0 || dec_h.n() != m {
        return Err(Error::NotRegular);
    }
    let idx = dec_h.find_eigenvalue(k).ok_or(Error::NotRegular)?;
    let p = dec_h.projector(idx);
    let ones = vec![1.0; m];
    let residual = p.matvec(&ones).iter().map(|x| (x - 1.0).abs()).fold(0.0, f64::max);
    if residual > 1e-8 {
        return Err(Error::NotRegular);
    }
    Ok(idx)
}

/// Spectrum of `G ∘ H` from the spectra of `G` and the k-regular `H`.
pub fn corona_spectrum(dec_g: &SpectralDecomposition, dec_h: &SpectralDecomposition, k: f64, m: usize) -> Result<CoronaSpectrum> {
    let k_index = regular_index(dec_h, k, m)?;
    let n = dec_g.n();
    let base_pairs = dec_g
        .eigenvalues()
        .iter()
        .zip(dec_g.multiplicities())
        .map(|(&lambda, &multiplicity)| {
            let (plus, minus) = split_eigenvalue(lambda, k, m);
            BasePair { lambda, multiplicity, plus, minus, gap: gap(lambda, k, m) }
        })
        .collect();
    let pendant_part = dec_h
        .eigenvalues()
        .iter()
        .zip(dec_h.multiplicities())
        .enumerate()
        .filter_map(|(i, (&mu, &s))| {
            let multiplicity = if i == k_index { n * (s - 1) } else { n * s };
            (multiplicity > 0).then_some(PendantEigenvalue { mu: if i == k_index { k } else { mu }, multiplicity })
        })
        .collect();
    Ok(CoronaSpectrum { n, m, k, base_pairs, pendant_part })
}

fn check_base(dec_g: &SpectralDecomposition, v: usize) -> Result<()> {
    if v < dec_g.n() {
        Ok(())
    } else {
        Err(Error::VertexOutOfRange { vertex: v, n: dec_g.n() })
    }
}

/// `⟨(v,0)| e^{-itA(G∘H)} |(v2,0)⟩` in closed form:
/// `Σ_λ e^{-it(λ+k)/2} ⟨v|E_λ|v2⟩ (cos(tΛ_λ/2) - i((λ-k)/Λ_λ) sin(tΛ_λ/2))`.
pub fn corona_base_amplitude(dec_g: &SpectralDecomposition, k: f64, m: usize, v: usize, v2: usize, t: f64) -> Result<Complex64> {
    check_base(dec_g, v)?;
    check_base(dec_g, v2)?;
    if m == 0 {
        return Err(Error::NonPositive("m"));
    }
    let mut total = Complex64::new(0.0, 0.0);
    for (i, &lambda) in dec_g.eigenvalues().iter().enumerate() {
        let e = dec_g.projector(i)[(v, v2)];
        if e == 0.0 {
            continue;
        }
        let big = gap(lambda, k, m);
        let (s, c) = (t * big / 2.0).sin_cos();
        let inner = Complex64::new(c, -(lambda - k) / big * s);
        total += Complex64::from_polar(e, -t * (lambda + k) / 2.0) * inner;
    }
    Ok(total)
}

/// Entry `⟨w| M_{λ±} |w'⟩` of the rank-one block with shift `d = λ± - k`.
fn block_entry(d: f64, m: usize, w: usize, w2: usize) -> f64 {
    let denom = d * d + m as f64;
    match (w, w2) {
        (0, 0) => d * d / denom,
        (0, _) | (_, 0) => d / denom,
        _ => 1.0 / denom,
    }
}

/// General entry `⟨(v,w)| e^{-itA(G∘H)} |(v',w')⟩` including the pendant
/// correction `δ_{v,v'} Σ_μ e^{-itμ} (⟨w|E_μ(H)|w'⟩ - δ_{μ,k}/m)` for
/// `w, w' ≥ 1`.
pub fn corona_amplitude(
    dec_g: &SpectralDecomposition,
    dec_h: &SpectralDecomposition,
    k: f64,
    m: usize,
    src: CoronaVertex,
    dst: CoronaVertex,
    t: f64,
) -> Result<Complex64> {
    let k_index = regular_index(dec_h, k, m)?;
    check_base(dec_g, src.base)?;
    check_base(dec_g, dst.base)?;
    for p in [src.pendant, dst.pendant] {
        if p > m {
            return Err(Error::VertexOutOfRange { vertex: p, n: m + 1 });
        }
    }
    let (v, w, v2, w2) = (src.base, src.pendant, dst.base, dst.pendant);
    let mut total = Complex64::new(0.0, 0.0);
    for (i, &lambda) in dec_g.eigenvalues().iter().enumerate() {
        let e = dec_g.projector(i)[(v, v2)];
        if e == 0.0 {
            continue;
        }
        let big = gap(lambda, k, m);
        let (dp, dm) = shifted_pair(lambda, k, m);
        let inner = Complex64::from_polar(block_entry(dp, m, w, w2), -t * big / 2.0)
            + Complex64::from_polar(block_entry(dm, m, w, w2), t * big / 2.0);
        total += Complex64::from_polar(e, -t * (lambda + k) / 2.0) * inner;
    }
    if v == v2 && w != 0 && w2 != 0 {
        for (j, &mu) in dec_h.eigenvalues().iter().enumerate() {
            let mut c = dec_h.projector(j)[(w - 1, w2 - 1)];
            let mu = if j == k_index {
                c -= 1.0 / m as f64;
                k
            } else {
                mu
            };
            total += Complex64::from_polar(c, -t * mu);
        }
    }
    Ok(total)
}

/// Eigenvalue support of `(v,0)` in `G ∘ H`: `{λ± : λ ∈ supp_G(v)}`.
pub fn base_vertex_support(dec_g: &SpectralDecomposition, k: f64, m: usize, v: usize, tol: f64) -> Result<Vec<f64>> {
    check_base(dec_g, v)?;
    let mut out: Vec<f64> = dec_g
        .support_indices(v, tol)
        .into_iter()
        .flat_map(|i| {
            let (p, q) = split_eigenvalue(dec_g.eigenvalues()[i], k, m);
            [p, q]
        })
        .collect();
    out.sort_by(|a, b| b.total_cmp(a));
    Ok(out)
}
