//! Dense symmetric eigendecomposition and the spectral quantities built on it.
//!
//! Every graph quantity in the crate is read off a [`SpectralDecomposition`]:
//! distinct eigenvalues `λ` with their eigenprojectors `E_λ`, so that
//! `A = Σ λ E_λ` and `U(t) = e^{-itA} = Σ e^{-itλ} E_λ`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::Matrix;

/// Default tolerance for eigenvalue-support and cospectrality tests.
pub const DEFAULT_SUPPORT_TOL: f64 = 1e-9;

const JACOBI_MAX_SWEEPS: usize = 100;
const JACOBI_REL_TOL: f64 = 1e-13;

#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    multiplicities: Vec<usize>,
    projectors: Vec<Matrix>,
    grouping_tol: f64,
}

/// Sign relating `E_λ e_u` and `E_λ e_v` for strongly cospectral `u, v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CospectralSign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
    #[serde(rename = "not-in-support")]
    NotInSupport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CospectralSigns {
    pub eigenvalues: Vec<f64>,
    pub signs: Vec<CospectralSign>,
}

/// Eigenvalues and orthonormal eigenvectors (as columns) of a real symmetric
/// matrix, by cyclic Jacobi rotations. Eigenvalues are unsorted.
pub fn jacobi_eigen(a: &Matrix) -> Result<(Vec<f64>, Matrix)> {
    let n = a.rows();
    if a.as_slice().iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let mut a = a.clone();
    let mut v = Matrix::identity(n);
    let norm = a.frobenius();
    let target = JACOBI_REL_TOL * norm;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n).map(|i| (0..n).filter(|&j| j != i).map(|j| a[(i, j)] * a[(i, j)]).sum::<f64>()).sum::<f64>().sqrt();
        if off <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    Ok(((0..n).map(|i| a[(i, i)]).collect(), v))
}

/// Default grouping tolerance `1e-8 · max(1, |ρ|)`.
pub fn default_grouping_tol(radius: f64) -> f64 {
    1e-8 * radius.abs().max(1.0)
}

/// Full spectral decomposition of `g`. Eigenvalues closer than the grouping
/// tolerance (chained through sorted neighbours) share one eigenspace.
pub fn eigendecompose(g: &Graph, grouping_tol: Option<f64>) -> Result<SpectralDecomposition> {
    decompose_matrix(g.weights(), grouping_tol)
}

pub fn decompose_matrix(a: &Matrix, grouping_tol: Option<f64>) -> Result<SpectralDecomposition> {
    let n = a.rows();
    let (vals, vecs) = jacobi_eigen(a)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| vals[j].total_cmp(&vals[i]));
    let scale = vals.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let tol = grouping_tol.unwrap_or_else(|| default_grouping_tol(scale));

    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match groups.last_mut() {
            Some(grp) if vals[*grp.last().unwrap()] - vals[i] <= tol => grp.push(i),
            _ => groups.push(vec![i]),
        }
    }

    let mut eigenvalues = Vec::with_capacity(groups.len());
    let mut multiplicities = Vec::with_capacity(groups.len());
    let mut projectors = Vec::with_capacity(groups.len());
    for grp in &groups {
        eigenvalues.push(grp.iter().map(|&i| vals[i]).sum::<f64>() / grp.len() as f64);
        multiplicities.push(grp.len());
        let mut p = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let s: f64 = grp.iter().map(|&k| vecs[(i, k)] * vecs[(j, k)]).sum();
                p[(i, j)] = s;
                p[(j, i)] = s;
            }
        }
        projectors.push(p);
    }
    Ok(SpectralDecomposition { eigenvalues, multiplicities, projectors, grouping_tol: tol })
}

impl SpectralDecomposition {
    /// Assembles a decomposition from known parts (e.g. exact spectra).
    pub fn from_parts(eigenvalues: Vec<f64>, multiplicities: Vec<usize>, projectors: Vec<Matrix>, grouping_tol: f64) -> Self {
        assert_eq!(eigenvalues.len(), projectors.len());
        assert_eq!(eigenvalues.len(), multiplicities.len());
        SpectralDecomposition { eigenvalues, multiplicities, projectors, grouping_tol }
    }

    /// Distinct eigenvalues, descending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn projectors(&self) -> &[Matrix] {
        &self.projectors
    }

    pub fn projector(&self, i: usize) -> &Matrix {
        &self.projectors[i]
    }

    /// Largest eigenvalue `ρ(G)`.
    pub fn radius(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn grouping_tol(&self) -> f64 {
        self.grouping_tol
    }

    pub fn n(&self) -> usize {
        self.projectors[0].rows()
    }

    /// Index of the distinct eigenvalue within the grouping tolerance of `x`.
    pub fn find_eigenvalue(&self, x: f64) -> Option<usize> {
        self.eigenvalues.iter().position(|&l| (l - x).abs() <= self.grouping_tol.max(1e-12))
    }

    /// Eigenvalues with multiplicity, descending.
    pub fn eigenvalue_multiset(&self) -> Vec<f64> {
        self.eigenvalues.iter().zip(&self.multiplicities).flat_map(|(&l, &m)| std::iter::repeat_n(l, m)).collect()
    }

    /// `Σ λ E_λ`.
    pub fn reconstruct(&self) -> Matrix {
        let n = self.n();
        self.eigenvalues.iter().zip(&self.projectors).fold(Matrix::zeros(n, n), |acc, (&l, p)| acc.add(&p.scale(l)))
    }

    fn column_norm(&self, i: usize, x: &[(usize, f64)]) -> f64 {
        let p = &self.projectors[i];
        (0..self.n())
            .map(|r| {
                let s: f64 = x.iter().map(|&(c, w)| w * p[(r, c)]).sum();
                s * s
            })
            .sum::<f64>()
            .sqrt()
    }

    /// Indices of eigenvalues in the support of `u`.
    pub fn support_indices(&self, u: usize, tol: f64) -> Vec<usize> {
        (0..self.eigenvalues.len()).filter(|&i| self.column_norm(i, &[(u, 1.0)]) > tol).collect()
    }

    /// Evaluation plan for `⟨target| e^{-itA} |source⟩` with uniform
    /// superpositions over each vertex set.
    pub fn amplitude_series(&self, source: &[usize], target: &[usize]) -> Result<AmplitudeSeries> {
        if source.is_empty() || target.is_empty() {
            return Err(Error::EmptySet);
        }
        let n = self.n();
        for &v in source.iter().chain(target) {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        let same = {
            let (mut a, mut b) = (source.to_vec(), target.to_vec());
            a.sort_unstable();
            b.sort_unstable();
            a == b
        };
        if !same && source.iter().any(|v| target.contains(v)) {
            return Err(Error::InvalidParams { family: "vertex sets".into(), reason: "must be disjoint or equal".into() });
        }
        let norm = ((source.len() * target.len()) as f64).sqrt();
        let coefficients = self
            .projectors
            .iter()
            .map(|p| target.iter().map(|&i| source.iter().map(|&j| p[(i, j)]).sum::<f64>()).sum::<f64>() / norm)
            .collect();
        let overlap = if same { 1.0 } else { 0.0 };
        Ok(AmplitudeSeries { eigenvalues: self.eigenvalues.clone(), coefficients, overlap })
    }

    /// The matrix `Σ e^{-itλ} E_λ` as (real, imaginary) parts.
    pub fn evolution(&self, t: f64) -> (Matrix, Matrix) {
        let n = self.n();
        let (mut re, mut im) = (Matrix::zeros(n, n), Matrix::zeros(n, n));
        for (&l, p) in self.eigenvalues.iter().zip(&self.projectors) {
            let (s, c) = (-t * l).sin_cos();
            re = re.add(&p.scale(c));
            im = im.add(&p.scale(s));
        }
        (re, im)
    }
}

/// `Σ_λ c_λ e^{-itλ}` with precomputed `c_λ = ⟨T|E_λ|S⟩`.
#[derive(Debug, Clone)]
pub struct AmplitudeSeries {
    pub eigenvalues: Vec<f64>,
    pub coefficients: Vec<f64>,
    /// `⟨T|S⟩`, returned verbatim at `t = 0` since `U(0) = I`.
    pub overlap: f64,
}

impl AmplitudeSeries {
    pub fn eval(&self, t: f64) -> Complex64 {
        if t == 0.0 {
            return Complex64::new(self.overlap, 0.0);
        }
        self.eigenvalues
            .iter()
            .zip(&self.coefficients)
            .map(|(&l, &c)| Complex64::from_polar(c, -t * l))
            .sum()
    }

    pub fn fidelity(&self, t: f64) -> f64 {
        self.eval(t).norm()
    }
}

/// Eigenvalues `λ` with `‖E_λ e_u‖ > tol`, descending.
pub fn eigenvalue_support(dec: &SpectralDecomposition, u: usize, tol: f64) -> Result<Vec<f64>> {
    if u >= dec.n() {
        return Err(Error::VertexOutOfRange { vertex: u, n: dec.n() });
    }
    Ok(dec.support_indices(u, tol).into_iter().map(|i| dec.eigenvalues[i]).collect())
}

/// Sign vector when `E_λ e_u = ±E_λ e_v` for every eigenvalue, `None` otherwise.
pub fn strongly_cospectral(dec: &SpectralDecomposition, u: usize, v: usize, tol: f64) -> Result<Option<CospectralSigns>> {
    let n = dec.n();
    for x in [u, v] {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x, n });
        }
    }
    if u == v {
        return Err(Error::InvalidParams { family: "strongly_cospectral".into(), reason: "u and v must differ".into() });
    }
    let mut signs = Vec::with_capacity(dec.eigenvalues.len());
    for i in 0..dec.eigenvalues.len() {
        let in_support = dec.column_norm(i, &[(u, 1.0)]) > tol || dec.column_norm(i, &[(v, 1.0)]) > tol;
        if !in_support {
            signs.push(CospectralSign::NotInSupport);
            continue;
        }
        let plus = dec.column_norm(i, &[(u, 1.0), (v, -1.0)]) < tol;
        let minus = dec.column_norm(i, &[(u, 1.0), (v, 1.0)]) < tol;
        match (plus, minus) {
            (true, false) => signs.push(CospectralSign::Plus),
            (false, true) => signs.push(CospectralSign::Minus),
            _ => return Ok(None),
        }
    }
    Ok(Some(CospectralSigns { eigenvalues: dec.eigenvalues.clone(), signs }))
}

/// `⟨target| e^{-itA} |source⟩` for uniform superpositions over vertex sets.
pub fn transition_amplitude(dec: &SpectralDecomposition, source: &[usize], target: &[usize], t: f64) -> Result<Complex64> {
    Ok(dec.amplitude_series(source, target)?.eval(t))
}

pub fn fidelity(dec: &SpectralDecomposition, source: &[usize], target: &[usize], t: f64) -> Result<f64> {
    Ok(transition_amplitude(dec, source, target, t)?.norm())
}

fn check_partition(n: usize, partition: &[Vec<usize>]) -> Result<()> {
    let mut seen = vec![false; n];
    for cell in partition {
        if cell.is_empty() {
            return Err(Error::MalformedPartition("empty cell".into()));
        }
        for &v in cell {
            if v >= n {
                return Err(Error::MalformedPartition(format!("vertex {v} out of range")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::MalformedPartition(format!("vertex {v} appears twice")));
            }
        }
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return Err(Error::MalformedPartition(format!("vertex {v} is not covered")));
    }
    Ok(())
}

/// Normalized partition-indicator matrix `P` (`n × cells`) with
/// `P[x][i] = |C_i|^{-1/2}` for `x ∈ C_i`.
pub fn partition_matrix(n: usize, partition: &[Vec<usize>]) -> Result<Matrix> {
    check_partition(n, partition)?;
    let mut p = Matrix::zeros(n, partition.len());
    for (i, cell) in partition.iter().enumerate() {
        let w = 1.0 / (cell.len() as f64).sqrt();
        for &x in cell {
            p[(x, i)] = w;
        }
    }
    Ok(p)
}

/// Symmetrized quotient of an equitable partition, or `None` if the partition
/// is not equitable. Off-diagonal weights are `√(b_ij b_ji)`, diagonal `b_ii`,
/// where `b_ij` is the weight from any vertex of cell `i` into cell `j`.
pub fn quotient(g: &Graph, partition: &[Vec<usize>]) -> Result<Option<Graph>> {
    let n = g.n();
    check_partition(n, partition)?;
    let exact = g.is_integer_weighted();
    let k = partition.len();
    let mut b = Matrix::zeros(k, k);
    for (i, cell) in partition.iter().enumerate() {
        for (j, other) in partition.iter().enumerate() {
            let into = |x: usize| other.iter().map(|&y| g.weight(x, y)).sum::<f64>();
            let first = into(cell[0]);
            let tol = if exact { 0.0 } else { 1e-10 * first.abs().max(1.0) };
            if cell[1..].iter().any(|&x| (into(x) - first).abs() > tol) {
                return Ok(None);
            }
            b[(i, j)] = first;
        }
    }
    let q = Matrix::from_fn(k, k, |i, j| if i == j { b[(i, i)] } else { (b[(i, j)] * b[(j, i)]).sqrt() });
    Ok(Some(Graph::from_weights(q)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn k2_decomposition() {
        let dec = eigendecompose(&Graph::complete(2).unwrap(), None).unwrap();
        assert_eq!(dec.eigenvalues().len(), 2);
        assert!(close(dec.eigenvalues()[0], 1.0, 1e-14));
        assert!(close(dec.eigenvalues()[1], -1.0, 1e-14));
        let p = dec.projector(0);
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert!(close(p[(i, j)], 0.5, 1e-14));
        }
        assert!(close(dec.projector(1)[(0, 1)], -0.5, 1e-14));
    }

    #[test]
    fn cube_and_cocktail_spectra() {
        let dec = eigendecompose(&Graph::cube(3).unwrap(), None).unwrap();
        assert_eq!(dec.multiplicities(), &[1, 3, 3, 1]);
        for (l, e) in dec.eigenvalues().iter().zip([3.0, 1.0, -1.0, -3.0]) {
            assert!(close(*l, e, 1e-10));
        }
        let dec = eigendecompose(&Graph::cocktail(4).unwrap(), None).unwrap();
        assert_eq!(dec.multiplicities(), &[1, 4, 3]);
        for (l, e) in dec.eigenvalues().iter().zip([6.0, 0.0, -2.0]) {
            assert!(close(*l, e, 1e-10));
        }
    }

    #[test]
    fn projector_identities() {
        let g = Graph::path(5).unwrap().corona(&Graph::complete(3).unwrap()).unwrap();
        let dec = eigendecompose(&g, None).unwrap();
        let n = g.n();
        let sum = dec.projectors().iter().fold(Matrix::zeros(n, n), |acc, p| acc.add(p));
        assert!(sum.sub(&Matrix::identity(n)).max_abs() < 1e-10);
        for (l, p) in dec.eigenvalues().iter().zip(dec.projectors()) {
            assert!(p.matmul(p).sub(p).max_abs() < 1e-8);
            assert!(g.weights().matmul(p).sub(&p.scale(*l)).max_abs() < 1e-8);
        }
        assert!(dec.reconstruct().sub(g.weights()).max_abs() < 1e-8);
        assert_eq!(dec.multiplicities().iter().sum::<usize>(), n);
    }

    #[test]
    fn supports() {
        let star = eigendecompose(&Graph::star(4).unwrap(), None).unwrap();
        let s = eigenvalue_support(&star, 0, DEFAULT_SUPPORT_TOL).unwrap();
        assert_eq!(s.len(), 2);
        assert!(close(s[0], 2.0, 1e-12) && close(s[1], -2.0, 1e-12));

        let p3 = eigendecompose(&Graph::path(3).unwrap(), None).unwrap();
        let s = eigenvalue_support(&p3, 1, DEFAULT_SUPPORT_TOL).unwrap();
        assert_eq!(s.len(), 2);
        assert!(close(s[0], 2f64.sqrt(), 1e-12) && close(s[1], -(2f64.sqrt()), 1e-12));

        let k3 = eigendecompose(&Graph::complete(3).unwrap(), None).unwrap();
        let s = eigenvalue_support(&k3, 2, DEFAULT_SUPPORT_TOL).unwrap();
        assert_eq!(s.len(), 2);
        assert!(close(s[0], 2.0, 1e-12) && close(s[1], -1.0, 1e-12));
    }

    #[test]
    fn cospectrality() {
        let k2 = eigendecompose(&Graph::complete(2).unwrap(), None).unwrap();
        let signs = strongly_cospectral(&k2, 0, 1, DEFAULT_SUPPORT_TOL).unwrap().unwrap();
        assert_eq!(signs.signs, vec![CospectralSign::Plus, CospectralSign::Minus]);

        // P3 ends: eigenvectors (1, ±√2, 1)/2 and (1, 0, -1)/√2.
        let p3 = eigendecompose(&Graph::path(3).unwrap(), None).unwrap();
        let signs = strongly_cospectral(&p3, 0, 2, DEFAULT_SUPPORT_TOL).unwrap().unwrap();
        assert_eq!(signs.signs, vec![CospectralSign::Plus, CospectralSign::Minus, CospectralSign::Plus]);

        // P4 vertices 1 and 3: E_λ entries differ in modulus.
        let p4 = eigendecompose(&Graph::path(4).unwrap(), None).unwrap();
        assert!(strongly_cospectral(&p4, 1, 3, DEFAULT_SUPPORT_TOL).unwrap().is_none());
        assert!(strongly_cospectral(&p4, 1, 1, DEFAULT_SUPPORT_TOL).is_err());
    }

    #[test]
    fn amplitudes() {
        let k2 = eigendecompose(&Graph::complete(2).unwrap(), None).unwrap();
        let a = transition_amplitude(&k2, &[0], &[1], std::f64::consts::FRAC_PI_2).unwrap();
        assert!(close(a.re, 0.0, 1e-15) && close(a.im, -1.0, 1e-15));
        let g = Graph::cube(3).unwrap();
        let dec = eigendecompose(&g, None).unwrap();
        assert!(close(fidelity(&dec, &[0], &[7], std::f64::consts::FRAC_PI_2).unwrap(), 1.0, 1e-10));
        assert_eq!(transition_amplitude(&dec, &[0, 3], &[0, 3], 0.0).unwrap().norm(), 1.0);
        assert_eq!(transition_amplitude(&dec, &[], &[1], 0.0), Err(Error::EmptySet));
        assert!(transition_amplitude(&dec, &[0, 1], &[1, 2], 0.0).is_err());
        let t = 0.731;
        assert_eq!(transition_amplitude(&dec, &[2], &[5], t).unwrap(), transition_amplitude(&dec, &[5], &[2], t).unwrap());
    }

    #[test]
    fn quotients() {
        let q3 = Graph::cube(3).unwrap();
        let cells = vec![vec![0], vec![1, 2, 4], vec![3, 5, 6], vec![7]];
        let q = quotient(&q3, &cells).unwrap().unwrap();
        let r3 = 3f64.sqrt();
        assert!(close(q.weight(0, 1), r3, 1e-12) && close(q.weight(1, 2), 2.0, 1e-12) && close(q.weight(2, 3), r3, 1e-12));
        assert_eq!(q.weight(0, 2), 0.0);

        let k3 = Graph::complete(3).unwrap();
        let q = quotient(&k3, &[vec![0], vec![1, 2]]).unwrap().unwrap();
        assert_eq!(q.weight(0, 0), 0.0);
        assert_eq!(q.weight(1, 1), 1.0);
        assert!(close(q.weight(0, 1), 2f64.sqrt(), 1e-15));

        let p4 = Graph::path(4).unwrap();
        assert!(quotient(&p4, &[vec![0, 1], vec![2, 3]]).unwrap().is_none());
        assert!(quotient(&p4, &[vec![0, 1], vec![2]]).is_err());
        assert!(quotient(&p4, &[vec![0, 1], vec![1, 2, 3]]).is_err());
    }
}
