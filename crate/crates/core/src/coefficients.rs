//! Coefficient families of the algebraic equations for the zeros.
//!
//! * `a_k(ν)`: coefficients of `K_{ν+1}(w)/K_ν(w) ~ Σ a_k w^{-k}`, from the
//!   unit-lower-triangular system `(ν+1,m)/2^m = Σ_k (ν,m-k)/2^{m-k} a_k`.
//! * `α_m(ν)`: Newton-identity recurrence
//!   `α_m = (1/m) Σ_{k=1}^m α_{m-k} (a_{k+1} - (-1)^k M_k)`, `α_0 = 1`; the
//!   zeros are the roots of `Σ_k α_{N-k} z^k`.
//! * `c_m^(n)`, `d_m^(n)`: the limits of `α_m` as `ν → ν_n` from above and
//!   below, with their factorizations against the `ν_n` polynomial.

use crate::bessel::hankel_symbol;
use crate::moments::{moment_vector, MomentVector};
use crate::special::special_point;
use crate::{nu_n, Error, Order, OrderClass, Precision, Real, Result};

pub use crate::poly::RealPolynomial;

/// `(ν, k) / 2^k`.
fn scaled_hankel(nu: Real, k: usize) -> Real {
    hankel_symbol(nu, k) / 2f64.powi(k as i32)
}

/// `a_0 .. a_kmax` for order `ν`.
pub fn a_coeffs(nu: Real, kmax: usize) -> Vec<Real> {
    let mut a: Vec<Real> = Vec::with_capacity(kmax + 1);
    for m in 0..=kmax {
        let mut s = scaled_hankel(nu + 1.0, m);
        for (k, ak) in a.iter().enumerate() {
            s -= scaled_hankel(nu, m - k) * ak;
        }
        a.push(s);
    }
    a
}

/// The `α_m` recurrence driven by generic per-`k` terms `a_{k+1} - (-1)^k M_k`.
fn newton_recurrence(terms: &[Real], mmax: usize) -> Vec<Real> {
    let mut alpha = vec![1.0];
    for m in 1..=mmax {
        let s: Real = (1..=m).map(|k| alpha[m - k] * terms[k - 1]).sum();
        alpha.push(s / m as Real);
    }
    alpha
}

/// `(-1)^k`.
fn sign(k: usize) -> Real {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `α_0 .. α_mmax`. `moments` must hold `M_1 .. M_mmax` for the same `ν`.
pub fn alpha_coeffs(nu: Real, mmax: usize, moments: &MomentVector) -> Result<Vec<Real>> {
    if moments.len() < mmax {
        return Err(Error::InvalidInput(format!("need {mmax} moments, got {}", moments.len())));
    }
    if moments.nu != nu {
        return Err(Error::InvalidInput("moments computed for a different order".into()));
    }
    let a = a_coeffs(nu, mmax + 1);
    let terms: Vec<Real> = (1..=mmax).map(|k| a[k + 1] - sign(k) * moments.get(k)).collect();
    Ok(newton_recurrence(&terms, mmax))
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct CoefficientSet {
    pub nu: Real,
    /// `a_0 .. a_{K+1}`.
    pub a: Vec<Real>,
    /// `α_0 .. α_K`.
    pub alpha: Vec<Real>,
    pub moments_used: MomentVector,
}

impl CoefficientSet {
    pub fn new(nu: Real, moments: MomentVector) -> Result<Self> {
        let k = moments.len();
        let alpha = alpha_coeffs(nu, k, &moments)?;
        Ok(CoefficientSet { nu, a: a_coeffs(nu, k + 1), alpha, moments_used: moments })
    }

    /// `Σ_{k=0}^{deg} α_{deg-k} z^k`.
    pub fn polynomial(&self, deg: usize) -> Result<RealPolynomial> {
        if deg >= self.alpha.len() {
            return Err(Error::InvalidInput(format!("degree {deg} needs alpha_{deg}")));
        }
        RealPolynomial::new((0..=deg).map(|k| self.alpha[deg - k]).collect())
    }
}

/// `Σ_{k=0}^{d} (ν, d-k)/2^{d-k} z^k` for `ν = d + 1/2`; its roots are the
/// zeros of `K_ν`.
pub fn halfodd_poly(nu: Real) -> Result<RealPolynomial> {
    let d = match Order::new(nu)?.class {
        OrderClass::HalfOddInteger { d } => d,
        OrderClass::SpecialNuN { n } => 2 * n + 1,
        OrderClass::Generic { .. } => {
            return Err(Error::InvalidInput(format!("nu = {nu} is not a half-odd integer")));
        }
    };
    RealPolynomial::new((0..=d).map(|k| scaled_hankel(nu, d - k)).collect())
}

/// Closed form `c_m = (ν_n,m)/2^m + (ν_n,m-1)/2^{m-1} x_n`, `m = 0..2n+2`.
pub fn c_coeffs_closed(n: usize, x_n: Real) -> Vec<Real> {
    let nu = nu_n(n);
    (0..=2 * n + 2)
        .map(|m| if m == 0 { 1.0 } else { scaled_hankel(nu, m) + scaled_hankel(nu, m - 1) * x_n })
        .collect()
}

/// `c_m` from the limiting recurrence with `M_k → x_n^k`.
pub fn c_coeffs_recurrence(n: usize, x_n: Real) -> Vec<Real> {
    let mmax = 2 * n + 2;
    let a = a_coeffs(nu_n(n), mmax + 1);
    let terms: Vec<Real> = (1..=mmax).map(|k| a[k + 1] - sign(k) * x_n.powi(k as i32)).collect();
    newton_recurrence(&terms, mmax)
}

fn rel_diff(a: Real, b: Real) -> Real {
    (a - b).abs() / b.abs().max(1.0)
}

/// Largest relative difference between the closed form and the recurrence.
pub fn c_closed_form_residual(n: usize, x_n: Real) -> Real {
    c_coeffs_closed(n, x_n)
        .iter()
        .zip(c_coeffs_recurrence(n, x_n))
        .map(|(a, b)| rel_diff(*a, b))
        .fold(0.0, Real::max)
}

/// `c_0 .. c_{2n+2}`, validated against the recurrence.
pub fn c_coeffs(n: usize, x_n: Real) -> Result<Vec<Real>> {
    let closed = c_coeffs_closed(n, x_n);
    for (m, (a, b)) in closed.iter().zip(c_coeffs_recurrence(n, x_n)).enumerate() {
        let diff = rel_diff(*a, b);
        if diff > 1e-8 {
            return Err(Error::ClosedFormMismatch { n, m, diff });
        }
    }
    Ok(closed)
}

/// Closed form `d_m = Σ_{k=0}^m (-1)^k (ν_n,m-k)/2^{m-k} x_n^k`, `m = 0..2n`.
pub fn d_coeffs_closed(n: usize, x_n: Real) -> Vec<Real> {
    let nu = nu_n(n);
    (0..=2 * n)
        .map(|m| (0..=m).map(|k| sign(k) * scaled_hankel(nu, m - k) * x_n.powi(k as i32)).sum())
        .collect()
}

/// `d_m` from the limiting recurrence with `M_k → -x_n^k`, summed over
/// `k = 1..m` like the `c_m` recurrence.
pub fn d_coeffs_recurrence(n: usize, x_n: Real) -> Vec<Real> {
    let mmax = 2 * n;
    let a = a_coeffs(nu_n(n), mmax + 1);
    let terms: Vec<Real> = (1..=mmax).map(|k| a[k + 1] + sign(k) * x_n.powi(k as i32)).collect();
    newton_recurrence(&terms, mmax)
}

/// `Σ_{k=0}^{2n+1} (ν_n, 2n+1-k)/2^{2n+1-k} z^k`.
pub fn nu_n_poly(n: usize) -> RealPolynomial {
    halfodd_poly(nu_n(n)).expect("nu_n is half-odd")
}

/// Coefficientwise residual of `Σ c_{2n+2-k} z^k = (z + x_n) · P_n(z)`.
pub fn c_factorization_residual(n: usize, x_n: Real) -> Real {
    let c = c_coeffs_closed(n, x_n);
    let deg = 2 * n + 2;
    let lhs: Vec<Real> = (0..=deg).map(|k| c[deg - k]).collect();
    let rhs = RealPolynomial::new(vec![x_n, 1.0]).expect("monic").mul(&nu_n_poly(n));
    lhs.iter().zip(rhs.coeffs()).map(|(a, b)| rel_diff(*a, *b)).fold(0.0, Real::max)
}

/// Coefficientwise residual of `P_n(z) = (z + x_n) · Σ d_{2n-k} z^k`.
pub fn d_factorization_residual(n: usize, x_n: Real) -> Real {
    let d = d_coeffs_closed(n, x_n);
    let deg = 2 * n;
    let dpoly = RealPolynomial::new((0..=deg).map(|k| d[deg - k]).collect()).expect("d_0 = 1");
    let rhs = RealPolynomial::new(vec![x_n, 1.0]).expect("monic").mul(&dpoly);
    nu_n_poly(n).coeffs().iter().zip(rhs.coeffs()).map(|(a, b)| rel_diff(*a, *b)).fold(0.0, Real::max)
}

/// `d_0 .. d_{2n}` for `n ≥ 1`, validated against the recurrence and the
/// factorization.
pub fn d_coeffs(n: usize, x_n: Real) -> Result<Vec<Real>> {
    if n == 0 {
        return Err(Error::InvalidInput("d coefficients need n >= 1".into()));
    }
    let closed = d_coeffs_closed(n, x_n);
    for (m, (a, b)) in closed.iter().zip(d_coeffs_recurrence(n, x_n)).enumerate() {
        let diff = rel_diff(*a, b);
        if diff > 1e-8 {
            return Err(Error::ClosedFormMismatch { n, m, diff });
        }
    }
    let residual = d_factorization_residual(n, x_n);
    if residual > 1e-8 {
        return Err(Error::FactorizationMismatch { n, k: 2 * n + 1, residual });
    }
    Ok(closed)
}

/// `max_m |α_m(ν_n ± δ) - limit_m|`: against `c_m` (`m ≤ 2n+2`) from above,
/// against `d_m` (`m ≤ 2n`) from below.
pub fn limit_gap(n: usize, delta: Real, above: bool, prec: &Precision) -> Result<Real> {
    let x = special_point(n)?.x_n;
    let (nu, limit) = if above { (nu_n(n) + delta, c_coeffs(n, x)?) } else { (nu_n(n) - delta, d_coeffs(n, x)?) };
    let mmax = limit.len() - 1;
    let alpha = alpha_coeffs(nu, mmax, &moment_vector(nu, mmax, prec)?)?;
    Ok(alpha.iter().zip(&limit).map(|(a, l)| (a - l).abs()).fold(0.0, Real::max))
}
