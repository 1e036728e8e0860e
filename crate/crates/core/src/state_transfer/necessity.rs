use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::Matrix;
use crate::spectral::SpectralDecomposition;

/// One term `z_j(t) = e^{iα_j t}(cos θ_j t + iΔ_j sin θ_j t)` of an
/// amplitude `Σ p_j z_j(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NecessityTerm {
    pub alpha: f64,
    pub theta: f64,
    pub delta: f64,
    pub p: f64,
}

impl NecessityTerm {
    pub fn new(alpha: f64, theta: f64, delta: f64, p: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidParams { family: "necessity term".into(), reason: format!("p = {p} not in (0, 1)") });
        }
        if !(delta.abs() < 1.0) {
            return Err(Error::InvalidParams { family: "necessity term".into(), reason: format!("|delta| = {} not below 1", delta.abs()) });
        }
        Ok(NecessityTerm { alpha, theta, delta, p })
    }

    /// Terms of `⟨(v,1)|U(t)|(v,2)⟩` in `K_n ∘ empty(2)`, `n ≥ 2`.
    pub fn hairy_clique(n: usize) -> Result<Vec<NecessityTerm>> {
        if n < 2 {
            return Err(Error::InvalidParams { family: "hairy clique".into(), reason: "n must be at least 2".into() });
        }
        let nf = n as f64;
        let big = ((nf - 1.0).powi(2) + 8.0).sqrt();
        Ok(vec![
            NecessityTerm::new(-0.5, 1.5, -1.0 / 3.0, (nf - 1.0) / nf)?,
            NecessityTerm::new((nf - 1.0) / 2.0, big / 2.0, (nf - 1.0) / big, 1.0 / nf)?,
        ])
    }
}

/// `max_j |z1 - cos(α_j t) cos(θ_j t)|`. Pretty good state transfer forces
/// this towards zero along near-optimal times, so a positive lower bound
/// over all `t` rules it out.
pub fn pgst_necessity_residual(terms: &[NecessityTerm], z1: f64, t: f64) -> f64 {
    terms.iter().map(|j| (z1 - (j.alpha * t).cos() * (j.theta * t).cos()).abs()).fold(0.0, f64::max)
}

/// Checks `A_d E_j = (-1)^j E_j` for the eigenprojectors of `g` in
/// descending eigenvalue order, `d` the diameter.
pub fn antipodal_sign_check(dec: &SpectralDecomposition, g: &Graph) -> Result<bool> {
    let d = g.diameter()?;
    let ad = g.distance_graph(d)?;
    if (0..ad.n()).any(|x| ad.degree(x) != 1.0) {
        return Err(Error::NotAntipodalMatching { distance: d });
    }
    if dec.n() != g.n() {
        return Err(Error::Inconsistent(format!("decomposition has {} vertices, graph {}", dec.n(), g.n())));
    }
    Ok(dec.projectors().iter().enumerate().all(|(j, e)| {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let diff: Matrix = ad.weights().matmul(e).sub(&e.scale(sign));
        diff.max_abs() < 1e-8
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::eigendecompose;

    #[test]
    fn residual_examples() {
        let t = NecessityTerm::new(0.0, 1.0, 0.0, 0.5).unwrap();
        assert_eq!(pgst_necessity_residual(&[t], 1.0, 0.0), 0.0);
        assert!(pgst_necessity_residual(&[t], -1.0, std::f64::consts::PI) < 1e-15);
        assert!(NecessityTerm::new(0.0, 1.0, 1.0, 0.5).is_err());
        assert!(NecessityTerm::new(0.0, 1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn hairy_clique_bound() {
        // min of cos(t/2)cos(3t/2) = (cos 2t + cos t)/2 is -9/16 at cos t = -1/4.
        let terms = NecessityTerm::hairy_clique(5).unwrap();
        let steps = 200_000;
        let min = (0..=steps)
            .map(|i| pgst_necessity_residual(&terms, -1.0, 4.0 * std::f64::consts::PI * i as f64 / steps as f64))
            .fold(f64::INFINITY, f64::min);
        assert!(min >= 7.0 / 16.0 - 1e-9, "{min}");
        let t_star = (-0.25f64).acos();
        assert!((pgst_necessity_residual(&terms[..1], -1.0, t_star) - 7.0 / 16.0).abs() < 1e-12);
    }

    #[test]
    fn antipodal_examples() {
        for g in [Graph::cube(3).unwrap(), Graph::cocktail(4).unwrap(), Graph::cube(4).unwrap()] {
            let dec = eigendecompose(&g, None).unwrap();
            assert!(antipodal_sign_check(&dec, &g).unwrap());
        }
        let k3 = Graph::complete(3).unwrap();
        let dec = eigendecompose(&k3, None).unwrap();
        assert_eq!(antipodal_sign_check(&dec, &k3), Err(Error::NotAntipodalMatching { distance: 1 }));
        let c6 = Graph::cartesian(&Graph::complete(3).unwrap(), &Graph::complete(2).unwrap()).unwrap();
        let dec = eigendecompose(&c6, None).unwrap();
        assert_eq!(antipodal_sign_check(&dec, &c6), Err(Error::NotAntipodalMatching { distance: 2 }));
    }
}
