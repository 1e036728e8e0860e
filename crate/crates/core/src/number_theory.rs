//! Square-free parts, recognition of quadratic integers `(a + b√Δ)/2`,
//! rational independence of square roots and a brute-force simultaneous
//! Diophantine approximation search.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_RECOGNITION_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_COEFF: i64 = 10_000;
pub const DEFAULT_N_MAX: i64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SquareFreeDecomposition {
    pub input: u64,
    /// `s` in `N = s²·c`.
    pub square_part: u64,
    /// Square-free `c`.
    pub core: u64,
}

/// Floor of the square root, exact for all `u64`.
pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r > 0 && r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

pub fn is_perfect_square(n: i128) -> bool {
    if n < 0 {
        return false;
    }
    match u64::try_from(n) {
        Ok(n) => {
            let r = isqrt(n);
            r * r == n
        }
        Err(_) => {
            let mut r = (n as f64).sqrt() as i128;
            while r * r > n {
                r -= 1;
            }
            while (r + 1) * (r + 1) <= n {
                r += 1;
            }
            r * r == n
        }
    }
}

/// `N = s²·c` with `c` square-free.
///
/// Trial division runs up to `∛N`; the cofactor then has at most two prime
/// factors, so it is either a perfect square or square-free.
pub fn square_free_part(n: i64) -> Result<SquareFreeDecomposition> {
    if n <= 0 {
        return Err(Error::NonPositive("N"));
    }
    let input = n as u64;
    let mut rest = input;
    let (mut s, mut c) = (1u64, 1u64);
    let mut p = 2u64;
    while p.saturating_mul(p).saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            s *= p.pow(e / 2);
            if e % 2 == 1 {
                c *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let r = isqrt(rest);
    if r > 1 && r * r == rest {
        s *= r;
    } else {
        c *= rest;
    }
    Ok(SquareFreeDecomposition { input, square_part: s, core: c })
}

pub fn is_square_free(n: u64) -> bool {
    n >= 1 && square_free_part(n as i64).is_ok_and(|d| d.square_part == 1)
}

/// `(a + b√delta)/2`. Rationals are stored with `b = 0`, `delta = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct QuadraticValue {
    pub a: i64,
    pub b: i64,
    pub delta: u64,
}

impl QuadraticValue {
    pub fn rational(twice: i64) -> Self {
        QuadraticValue { a: twice, b: 0, delta: 1 }
    }

    /// Canonical form: `b = 0` forces `delta = 1` and `delta = 1` folds `b`
    /// into `a`.
    pub fn new(a: i64, b: i64, delta: u64) -> Self {
        if b == 0 || delta == 1 {
            QuadraticValue { a: a + b, b: 0, delta: 1 }
        } else {
            QuadraticValue { a, b, delta }
        }
    }

    pub fn value(&self) -> f64 {
        (self.a as f64 + self.b as f64 * (self.delta as f64).sqrt()) / 2.0
    }

    /// `x - value()` with the product `b√delta` carried in two parts.
    pub fn residual(&self, x: f64) -> f64 {
        let d = self.delta as f64;
        let r = d.sqrt();
        let r_err = (-r).mul_add(r, d) / (2.0 * r);
        let b = self.b as f64;
        let p = b * r;
        let p_err = b.mul_add(r, -p) + b * r_err;
        ((2.0 * x - self.a as f64 - p) - p_err) / 2.0
    }

    pub fn is_rational(&self) -> bool {
        self.b == 0
    }

    pub fn is_integer(&self) -> bool {
        self.b == 0 && self.a % 2 == 0
    }

    /// `(a - b√delta)/2`.
    pub fn conjugate(&self) -> Self {
        QuadraticValue { a: self.a, b: -self.b, delta: self.delta }
    }
}

fn square_free_up_to(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut free = vec![true; limit + 1];
    let mut p = 2;
    while p * p <= limit {
        for j in (p * p..=limit).step_by(p * p) {
            free[j] = false;
        }
        p += 1;
    }
    (2..=limit).filter(|&d| free[d]).map(|d| d as u64).collect()
}

/// Finds `(a + b√Δ)/2` within `tol` of `x` with `|a|, |b|, Δ ≤ max_coeff`.
///
/// Rationals (`Δ = 1`) are tried first, then `Δ` ascending and `|b|`
/// ascending; `a` is the nearest integer to `2x - b√Δ`. A pass at
/// near-rounding tolerance runs before the pass at `tol`, so that an exact
/// representation is not shadowed by a loose coincidence at smaller `Δ`.
pub fn recognize_quadratic(x: f64, max_coeff: i64, tol: f64) -> Option<QuadraticValue> {
    if !x.is_finite() || max_coeff < 1 {
        return None;
    }
    let strict = |q: &QuadraticValue| tol.min(8.0 * f64::EPSILON * (2.0 + q.a.abs() as f64 + q.b.abs() as f64 * (q.delta as f64).sqrt()));
    search_quadratic(x, max_coeff, strict).or_else(|| search_quadratic(x, max_coeff, |_| tol))
}

fn search_quadratic(x: f64, max_coeff: i64, tol: impl Fn(&QuadraticValue) -> f64) -> Option<QuadraticValue> {
    let two_x = 2.0 * x;
    let a = two_x.round();
    if a.abs() <= max_coeff as f64 {
        let candidate = QuadraticValue::rational(a as i64);
        if candidate.residual(x).abs() < tol(&candidate) {
            return Some(candidate);
        }
    }
    for delta in square_free_up_to(max_coeff as u64) {
        let root = (delta as f64).sqrt();
        let b_max = (((two_x.abs() + max_coeff as f64) / root).floor() as i64).min(max_coeff);
        for b_abs in 1..=b_max {
            for b in [b_abs, -b_abs] {
                let rest = two_x - b as f64 * root;
                let a = rest.round();
                if a.abs() > max_coeff as f64 {
                    continue;
                }
                let candidate = QuadraticValue { a: a as i64, b, delta };
                if candidate.residual(x).abs() < tol(&candidate) {
                    return Some(candidate);
                }
            }
        }
    }
    None
}

/// Whether `{1} ∪ {√c : c > 1}` is linearly independent over the rationals,
/// i.e. whether the non-unit cores are pairwise distinct.
pub fn independent_sqrts(cores: &[u64]) -> Result<bool> {
    let mut seen = std::collections::BTreeSet::new();
    for &c in cores {
        if !is_square_free(c) {
            return Err(Error::NotSquareFree(c));
        }
        if c > 1 && !seen.insert(c) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KroneckerSolution {
    pub ell: i64,
    pub q: Vec<i64>,
    /// `max_k |ℓλ_k - q_k - α_k|`.
    pub achieved: f64,
}

fn residuals(ell: i64, lambdas: &[f64], alphas: &[f64]) -> (Vec<i64>, f64) {
    let mut worst = 0.0f64;
    let q = lambdas
        .iter()
        .zip(alphas)
        .map(|(&lam, &alpha)| {
            let target = ell as f64 * lam - alpha;
            let q = target.round();
            worst = worst.max((target - q).abs());
            q as i64
        })
        .collect();
    (q, worst)
}

fn within(ell: i64, lambdas: &[f64], alphas: &[f64], eps: f64) -> bool {
    lambdas.iter().zip(alphas).all(|(&lam, &alpha)| {
        let target = ell as f64 * lam - alpha;
        (target - target.round()).abs() < eps
    })
}

const CHUNK: i64 = 1 << 20;

/// Smallest `ℓ` in `N_floor+1 ..= N_max` with `|ℓλ_k - q_k - α_k| < eps`
/// for all `k`, `q_k` the nearest integer.
pub fn kronecker_solve(lambdas: &[f64], alphas: &[f64], eps: f64, n_floor: i64, n_max: i64) -> Result<Option<KroneckerSolution>> {
    if n_max < n_floor {
        return Err(Error::EmptyRange { n_floor, n_max });
    }
    if !(eps > 0.0) {
        return Err(Error::NonPositive("eps"));
    }
    if lambdas.len() != alphas.len() {
        return Err(Error::Inconsistent(format!("{} lambdas but {} alphas", lambdas.len(), alphas.len())));
    }
    if lambdas.iter().chain(alphas).any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let mut start = n_floor + 1;
    let mut chunks = 0u64;
    while start <= n_max {
        let end = start.saturating_add(CHUNK - 1).min(n_max);
        let hit = (start..=end).into_par_iter().find_first(|&ell| within(ell, lambdas, alphas, eps));
        if let Some(ell) = hit {
            let (q, achieved) = residuals(ell, lambdas, alphas);
            log::debug!("kronecker: ell={ell} achieved={achieved:.3e}");
            return Ok(Some(KroneckerSolution { ell, q, achieved }));
        }
        chunks += 1;
        if chunks.is_multiple_of(64) {
            log::info!("kronecker: scanned up to {end} of {n_max} (eps={eps:.3e})");
        }
        start = end + 1;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn square_free_examples() {
        let d = square_free_part(8).unwrap();
        assert_eq!((d.square_part, d.core), (2, 2));
        let d = square_free_part(12).unwrap();
        assert_eq!((d.square_part, d.core), (2, 3));
        let d = square_free_part(49).unwrap();
        assert_eq!((d.square_part, d.core), (7, 1));
        assert_eq!(square_free_part(1).unwrap().core, 1);
        assert!(square_free_part(0).is_err());
        assert!(square_free_part(-4).is_err());
        let big = square_free_part(i64::MAX).unwrap();
        assert_eq!(big.square_part * big.square_part * big.core, i64::MAX as u64);
        let p = 2_147_483_647u64; // prime
        let d = square_free_part((p * p) as i64).unwrap();
        assert_eq!((d.square_part, d.core), (p, 1));
    }

    fn square_free_oracle(n: u64) -> (u64, u64) {
        // largest s with s² | n by downward scan
        let mut s = isqrt(n);
        while !n.is_multiple_of(s * s) {
            s -= 1;
        }
        (s, n / (s * s))
    }

    #[test]
    fn square_free_round_trip_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100_000 {
            let n: u64 = rng.gen_range(1..1u64 << 40);
            let d = square_free_part(n as i64).unwrap();
            assert_eq!(d.square_part * d.square_part * d.core, n);
        }
        for n in 1..3000u64 {
            let d = square_free_part(n as i64).unwrap();
            assert_eq!((d.square_part, d.core), square_free_oracle(n));
        }
    }

    #[test]
    fn recognition_examples() {
        assert_eq!(recognize_quadratic(1.6180339887, 10_000, 1e-9), Some(QuadraticValue { a: 1, b: 1, delta: 5 }));
        assert_eq!(recognize_quadratic(-3.0, 10_000, 1e-9), Some(QuadraticValue { a: -6, b: 0, delta: 1 }));
        assert_eq!(recognize_quadratic(2.8284271247, 10_000, 1e-9), Some(QuadraticValue { a: 0, b: 4, delta: 2 }));
        assert_eq!(recognize_quadratic(0.5, 10, 1e-9), Some(QuadraticValue::rational(1)));
        assert_eq!(recognize_quadratic(std::f64::consts::PI, 50, 1e-12), None);
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(QuadraticValue::new(3, 0, 7), QuadraticValue::rational(3));
        assert_eq!(QuadraticValue::new(3, 2, 1), QuadraticValue::rational(5));
        assert!(QuadraticValue::rational(4).is_integer());
        assert!(!QuadraticValue::rational(3).is_integer());
        assert_eq!(QuadraticValue::new(1, 1, 5).conjugate().value(), (1.0 - 5f64.sqrt()) / 2.0);
    }

    #[test]
    fn independence_examples() {
        assert_eq!(independent_sqrts(&[2, 3, 5]), Ok(true));
        assert_eq!(independent_sqrts(&[2, 2]), Ok(false));
        assert_eq!(independent_sqrts(&[1, 7]), Ok(true));
        assert_eq!(independent_sqrts(&[1, 1, 7]), Ok(true));
        assert_eq!(independent_sqrts(&[8]), Err(Error::NotSquareFree(8)));
    }

    fn kronecker_oracle(lambdas: &[f64], alphas: &[f64], eps: f64, n_floor: i64, n_max: i64) -> Option<i64> {
        (n_floor + 1..=n_max).find(|&l| {
            lambdas.iter().zip(alphas).all(|(lam, al)| {
                let x = l as f64 * lam - al;
                (x - x.round()).abs() < eps
            })
        })
    }

    #[test]
    fn kronecker_examples() {
        let s = kronecker_solve(&[2f64.sqrt()], &[0.5], 0.05, 0, 1000).unwrap().unwrap();
        assert_eq!((s.ell, s.q.clone()), (6, vec![8]));
        assert!((s.achieved - 0.0147).abs() < 1e-3);

        let s = kronecker_solve(&[0.25], &[0.0], 1e-9, 0, 100).unwrap().unwrap();
        assert_eq!((s.ell, s.q), (4, vec![1]));

        let (l, a) = ([2f64.sqrt(), 3f64.sqrt()], [0.25, 0.25]);
        let s = kronecker_solve(&l, &a, 0.02, 0, 1_000_000).unwrap().unwrap();
        assert_eq!(Some(s.ell), kronecker_oracle(&l, &a, 0.02, 0, 1_000_000));
        assert_eq!(s.ell, 947);
        assert!(s.achieved < 0.02);

        assert_eq!(kronecker_solve(&[0.5], &[0.25], 0.1, 0, 1000).unwrap(), None);
        assert!(matches!(kronecker_solve(&[0.5], &[0.0], 0.1, 5, 4), Err(Error::EmptyRange { .. })));
        assert!(kronecker_solve(&[0.5], &[0.0], 0.0, 0, 4).is_err());
    }

    #[test]
    fn kronecker_respects_floor_and_chunks() {
        let l = [5f64.sqrt()];
        let a = [0.3];
        let floor = CHUNK - 3;
        let s = kronecker_solve(&l, &a, 1e-4, floor, floor + 4 * CHUNK).unwrap().unwrap();
        assert_eq!(Some(s.ell), kronecker_oracle(&l, &a, 1e-4, floor, floor + 4 * CHUNK));
    }

    proptest! {
        #[test]
        fn recognition_recovers_canonical(a in -200i64..200, b in -60i64..60, delta in 1u64..200) {
            let core = square_free_part(delta as i64).unwrap().core;
            let q = QuadraticValue::new(a, b, core);
            let found = recognize_quadratic(q.value(), 10_000, 1e-9);
            prop_assert_eq!(found, Some(q));
        }

        #[test]
        fn kronecker_monotone_in_eps(lam in 0.01f64..10.0, alpha in -1.0f64..1.0, eps in 0.001f64..0.2) {
            let big = kronecker_solve(&[lam], &[alpha], eps, 0, 20_000).unwrap();
            let small = kronecker_solve(&[lam], &[alpha], eps / 2.0, 0, 20_000).unwrap();
            if let Some(s) = &big {
                prop_assert!(s.achieved < eps);
            }
            if let Some(s) = small {
                prop_assert!(s.achieved < eps / 2.0);
                prop_assert!(s.achieved < eps);
                prop_assert!(big.is_some_and(|b| b.ell <= s.ell));
            }
        }
    }
}
