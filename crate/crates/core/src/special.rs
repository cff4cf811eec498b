//! `G_ν(x) = K_ν(x)² + π² I_ν(x) I_{-ν}(x)` and its double zero at the
//! special points `(x_n, ν_n)`.
//!
//! At `ν = ν_n` the function `G` collapses to `(K_ν - πI_ν)²`, so its unique
//! positive zero `x_n` solves `K_{ν_n}(x) = π I_{ν_n}(x)`; `-x_n` is then the
//! real zero of `K_{ν_n}`. Around that point
//!
//! ```text
//! G(x, ν) ≈ (α_n (x - x_n) + β_n (ν - ν_n))² + π² K_{ν_n}(x_n)² (ν - ν_n)²
//! ```
//!
//! which is what [`check_g_hessian`] verifies by finite differences.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::bessel::{besseli_real, besselk_real, bessel_derivs_real, hankel_symbol};
use crate::{cos_pi, nu_n, sin_pi, Error, Precision, Real, Result};

/// `G_ν(x)`, computed as `(K + π sin(πν) I)² + (π cos(πν) I)²`.
///
/// In debug builds the product form `K² + π² I_ν I_{-ν}` is evaluated as well
/// and must agree to `1e-10` of the size of its terms.
pub fn g(nu: Real, x: Real, prec: &Precision) -> Result<Real> {
    let v = g_squares(nu, x, prec)?;
    #[cfg(debug_assertions)]
    {
        let forms = g_forms(nu, x, prec)?;
        debug_assert!(forms.residual <= 1e-10, "G forms disagree at nu={nu}, x={x}: {}", forms.residual);
    }
    Ok(v)
}

pub(crate) fn g_squares(nu: Real, x: Real, prec: &Precision) -> Result<Real> {
    let k = besselk_real(nu, x, prec)?;
    let i = besseli_real(nu, x, prec)?;
    let a = k + PI * sin_pi(nu) * i;
    let b = PI * cos_pi(nu) * i;
    Ok(a * a + b * b)
}

#[derive(Debug, Clone, Copy)]
pub struct GForms {
    /// `K² + π²I² + 2π sin(πν) K I`, as a sum of squares.
    pub squares: Real,
    /// `K² + π² I_ν I_{-ν}`.
    pub product: Real,
    /// `|squares - product| / (K² + π²|I_ν I_{-ν}|)`.
    pub residual: Real,
}

pub fn g_forms(nu: Real, x: Real, prec: &Precision) -> Result<GForms> {
    let k = besselk_real(nu, x, prec)?;
    let i = besseli_real(nu, x, prec)?;
    let im = besseli_real(-nu, x, prec)?;
    let a = k + PI * sin_pi(nu) * i;
    let b = PI * cos_pi(nu) * i;
    let squares = a * a + b * b;
    let product = k * k + PI * PI * i * im;
    let size = k * k + PI * PI * (i * im).abs();
    Ok(GForms { squares, product, residual: (squares - product).abs() / size })
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SpecialPoint {
    pub n: usize,
    pub nu_n: Real,
    pub x_n: Real,
    /// `-K'_{ν_n}(x_n) + π I'_{ν_n}(x_n)`.
    pub alpha_n: Real,
    /// `(-∂_ν K_ν(x_n) + π ∂_ν I_ν(x_n))` at `ν = ν_n`.
    pub beta_n: Real,
    /// `K_{ν_n}(x_n)`.
    pub k_n: Real,
    pub identity_residuals: BTreeMap<String, Real>,
}

/// `K_ν(x) - π I_ν(x)`.
fn f_kpi(nu: Real, x: Real, prec: &Precision) -> Result<Real> {
    Ok(besselk_real(nu, x, prec)? - PI * besseli_real(nu, x, prec)?)
}

fn bracket_root(n: usize, mut lo: Real, mut hi: Real, prec: &Precision) -> Result<Real> {
    let nu = nu_n(n);
    let (flo, fhi) = (f_kpi(nu, lo, prec)?, f_kpi(nu, hi, prec)?);
    if !(flo > 0.0 && fhi < 0.0) {
        return Err(Error::BracketFailure { n });
    }
    while hi - lo > 1e-3 {
        let mid = 0.5 * (lo + hi);
        if f_kpi(nu, mid, prec)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..50 {
        let f = f_kpi(nu, x, prec)?;
        let (di, dk) = bessel_derivs_real(nu, x, prec)?;
        let step = f / (dk - PI * di);
        x -= step;
        if x <= lo - 1e-3 || x >= hi + 1e-3 {
            return Err(Error::NonConvergence { what: "x_n Newton iteration" });
        }
        if step.abs() <= 1e-15 * x {
            break;
        }
    }
    let k = besselk_real(nu, x, prec)?;
    if f_kpi(nu, x, prec)?.abs() > 1e-12 * k {
        return Err(Error::NonConvergence { what: "x_n Newton iteration" });
    }
    Ok(x)
}

fn complete(n: usize, x: Real, prec: &Precision) -> Result<SpecialPoint> {
    let nu = nu_n(n);
    let (di, dk) = bessel_derivs_real(nu, x, prec)?;
    let alpha = -dk + PI * di;
    // centred ν-difference with one Richardson step
    let h = 1e-5;
    let f = |v: Real| -> Result<Real> { Ok(-besselk_real(v, x, prec)? + PI * besseli_real(v, x, prec)?) };
    let d = |h: Real| -> Result<Real> { Ok((f(nu + h)? - f(nu - h)?) / (2.0 * h)) };
    let beta = (4.0 * d(0.5 * h)? - d(h)?) / 3.0;
    let k = besselk_real(nu, x, prec)?;
    let mut identity_residuals = BTreeMap::new();
    identity_residuals.insert("K_alpha_x_over_pi".to_string(), (k * alpha * x / PI - 1.0).abs());
    identity_residuals.insert("kpi_equation".to_string(), f_kpi(nu, x, prec)?.abs() / k);
    Ok(SpecialPoint { n, nu_n: nu, x_n: x, alpha_n: alpha, beta_n: beta, k_n: k, identity_residuals })
}

/// Solve `K_{ν_n}(x) = π I_{ν_n}(x)` for `x_n`, bracketing from `x_{n-1}`.
pub fn solve_xn(n: usize, prec: &Precision) -> Result<SpecialPoint> {
    let mut x = bracket_root(0, 0.5, 3.0, prec)?;
    for j in 1..=n {
        // x_j > x_{j-1}: the sign of K_{ν_j} - πI_{ν_j} changes to the right of x_{j-1}
        x = bracket_root(j, x, x + 10.0, prec)?;
    }
    complete(n, x, prec)
}

/// All special points `0..=n_max`, solved as one chain.
pub fn solve_xn_chain(n_max: usize, prec: &Precision) -> Result<Vec<SpecialPoint>> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut x = bracket_root(0, 0.5, 3.0, prec)?;
    out.push(complete(0, x, prec)?);
    for j in 1..=n_max {
        x = bracket_root(j, x, x + 10.0, prec)?;
        out.push(complete(j, x, prec)?);
    }
    Ok(out)
}

const CACHED: usize = 10;

/// Special point `n` at default precision, from a table shared read-only.
pub fn special_point(n: usize) -> Result<SpecialPoint> {
    static TABLE: OnceLock<Result<Vec<SpecialPoint>>> = OnceLock::new();
    if n > CACHED {
        return solve_xn(n, &Precision::default());
    }
    match TABLE.get_or_init(|| solve_xn_chain(CACHED, &Precision::default())) {
        Ok(t) => Ok(t[n].clone()),
        Err(e) => Err(e.clone()),
    }
}

/// Relative residual of `-x_n` in `Σ_{k=0}^{2n+1} (ν_n, 2n+1-k)/2^{2n+1-k} z^k`.
pub fn xn_poly_crosscheck(sp: &SpecialPoint) -> Real {
    let d = 2 * sp.n + 1;
    let z = -sp.x_n;
    let (mut val, mut scale) = (0.0, 0.0);
    for k in (0..=d).rev() {
        let c = hankel_symbol(sp.nu_n, d - k) / 2f64.powi((d - k) as i32);
        val = val * z + c;
        scale = scale * sp.x_n + c.abs();
    }
    val.abs() / scale
}

/// Finite-difference check of the displayed values of `G` and its first and
/// second partials at `(x_n, ν_n)`, plus `K_{ν_n}(x_n) = π/(α_n x_n)`.
///
/// Residuals are relative to `2α_n² + 2β_n² + 2π²K_{ν_n}(x_n)²`.
pub fn check_g_hessian(sp: &SpecialPoint, prec: &Precision) -> Result<BTreeMap<String, Real>> {
    let (x0, v0) = (sp.x_n, sp.nu_n);
    let gxy = |x: Real, v: Real| g_squares(v, x, prec);
    let h = 1e-4;

    let g0 = gxy(x0, v0)?;
    let dx = |h: Real| -> Result<Real> { Ok((gxy(x0 + h, v0)? - gxy(x0 - h, v0)?) / (2.0 * h)) };
    let dv = |h: Real| -> Result<Real> { Ok((gxy(x0, v0 + h)? - gxy(x0, v0 - h)?) / (2.0 * h)) };
    let dxx = |h: Real| -> Result<Real> { Ok((gxy(x0 + h, v0)? - 2.0 * g0 + gxy(x0 - h, v0)?) / (h * h)) };
    let dvv = |h: Real| -> Result<Real> { Ok((gxy(x0, v0 + h)? - 2.0 * g0 + gxy(x0, v0 - h)?) / (h * h)) };
    let dxv = |h: Real| -> Result<Real> {
        Ok((gxy(x0 + h, v0 + h)? - gxy(x0 + h, v0 - h)? - gxy(x0 - h, v0 + h)? + gxy(x0 - h, v0 - h)?) / (4.0 * h * h))
    };
    let rich = |d: &dyn Fn(Real) -> Result<Real>| -> Result<Real> { Ok((4.0 * d(0.5 * h)? - d(h)?) / 3.0) };

    let (a, b, k) = (sp.alpha_n, sp.beta_n, sp.k_n);
    let scale = 2.0 * a * a + 2.0 * b * b + 2.0 * PI * PI * k * k;
    let mut out = BTreeMap::new();
    out.insert("G".to_string(), g0.abs() / scale);
    out.insert("G_x".to_string(), rich(&dx)?.abs() / scale);
    out.insert("G_nu".to_string(), rich(&dv)?.abs() / scale);
    out.insert("G_xx".to_string(), (rich(&dxx)? - 2.0 * a * a).abs() / scale);
    out.insert("G_xnu".to_string(), (rich(&dxv)? - 2.0 * a * b).abs() / scale);
    out.insert("G_nunu".to_string(), (rich(&dvv)? - 2.0 * b * b - 2.0 * PI * PI * k * k).abs() / scale);
    out.insert("K_alpha_x_over_pi".to_string(), (k * a * x0 / PI - 1.0).abs());
    Ok(out)
}
