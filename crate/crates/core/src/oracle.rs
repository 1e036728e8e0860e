//! Reference computations that share no code path with the spectral engine.
//!
//! `e^{-itA}` is evaluated directly by Taylor series with scaling and
//! squaring on the complex matrix `-itA`; no eigenvectors are involved.

use num_complex::Complex64;

use crate::matrix::Matrix;

type CMat = Vec<Complex64>;

fn cmatmul(a: &CMat, b: &CMat, n: usize) -> CMat {
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += x * b[k * n + j];
            }
        }
    }
    out
}

/// Dense `e^{-itA}`, row-major.
pub fn expm_evolution(a: &Matrix, t: f64) -> Vec<Complex64> {
    let n = a.rows();
    let norm1 = (0..n).map(|j| (0..n).map(|i| a[(i, j)].abs()).sum::<f64>()).fold(0.0, f64::max) * t.abs();
    let squarings = if norm1 > 0.5 { (norm1 / 0.5).log2().ceil() as u32 } else { 0 };
    let scale = t / 2f64.powi(squarings as i32);
    let b: CMat = a.as_slice().iter().map(|&x| Complex64::new(0.0, -scale * x)).collect();

    let mut result: CMat = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        result[i * n + i] = Complex64::new(1.0, 0.0);
    }
    let mut term = result.clone();
    for k in 1..40 {
        term = cmatmul(&term, &b, n).into_iter().map(|x| x / k as f64).collect();
        let size = term.iter().fold(0.0f64, |m, x| m.max(x.norm()));
        for (r, x) in result.iter_mut().zip(&term) {
            *r += x;
        }
        if size < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        result = cmatmul(&result, &result, n);
    }
    result
}

/// `⟨target| e^{-itA} |source⟩` with uniform superpositions.
pub fn expm_amplitude(a: &Matrix, source: &[usize], target: &[usize], t: f64) -> Complex64 {
    let n = a.rows();
    let u = &expm_evolution(a, t);
    let norm = ((source.len() * target.len()) as f64).sqrt();
    target.iter().flat_map(|&i| source.iter().map(move |&j| u[i * n + j])).sum::<Complex64>() / norm
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_rotation() {
        let a = Matrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        for t in [0.0, 0.3, 1.7, 25.0] {
            let u = expm_evolution(&a, t);
            assert!((u[0] - Complex64::new(t.cos(), 0.0)).norm() < 1e-13);
            assert!((u[1] - Complex64::new(0.0, -t.sin())).norm() < 1e-13);
        }
    }
}
