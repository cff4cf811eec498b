//! Modified Bessel functions `I_ν`, `K_ν` of real order.
//!
//! `I_ν` is summed from its power series (principal branch of `z^ν`). `K_ν` on
//! the positive axis comes from `∫₀^∞ e^{-x cosh t} cosh(νt) dt` with trapezoid
//! sums; in the open right half-plane from the Laplace-type representation
//! `√(π/2z) e^{-z}/Γ(ν+½) ∫₀^∞ e^{-t} t^{ν-½} (1 + t/2z)^{ν-½} dt` with
//! `exp-sinh` quadrature. Values left of the imaginary axis are always obtained
//! through the rotation `K_ν(e^{iπ}w) = e^{-iνπ}K_ν(w) - iπ I_ν(w)`, so the
//! `I`-series is never summed at arguments near the cut.

use std::f64::consts::PI;

use crate::quad::{even_trapezoid, exp_sinh};
use crate::{cos_pi, sin_pi, Cplx, Error, Precision, Real, Result};

/// Which side of the cut `(-∞, 0]` a boundary value is taken on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lip {
    /// `arg z = +π` (`m = 1`).
    Upper,
    /// `arg z = -π` (`m = -1`).
    Lower,
}

impl Lip {
    pub fn m(self) -> Real {
        match self {
            Lip::Upper => 1.0,
            Lip::Lower => -1.0,
        }
    }
}

/// Hankel symbol `(ν, k) = ∏_{j=1}^{k} (4ν² - (2j-1)²) / (k! 2^{2k})`.
///
/// Evaluated as a running product so the vanishing cases are exact zeros.
pub fn hankel_symbol(nu: Real, k: usize) -> Real {
    let four_nu2 = 4.0 * nu * nu;
    (1..=k).fold(1.0, |p, j| {
        let odd = (2 * j - 1) as Real;
        p * (four_nu2 - odd * odd) / (4 * j) as Real
    })
}

/// `1/Γ(x)`, zero at the poles.
fn rgamma(x: Real) -> Real {
    if x <= 0.0 && x.fract() == 0.0 {
        0.0
    } else {
        1.0 / libm::tgamma(x)
    }
}

trait SeriesValue: Copy + std::ops::Add<Output = Self> + std::ops::Mul<Output = Self> + std::ops::Mul<Real, Output = Self> {
    fn norm(self) -> Real;
}

impl SeriesValue for Real {
    fn norm(self) -> Real {
        self.abs()
    }
}

impl SeriesValue for Cplx {
    fn norm(self) -> Real {
        Cplx::norm(self)
    }
}

/// `Σ_k first·q^k / (k! (ν+1)_k)`, stopping after three consecutive terms
/// below `tol·|sum|`.
fn i_series<V: SeriesValue>(nu: Real, first: V, q: V, prec: &Precision) -> Result<V> {
    let mut term = first;
    let mut sum = first;
    let mut quiet = 0;
    for k in 0..prec.max_terms {
        let denom = ((k + 1) as Real) * (nu + (k + 1) as Real);
        term = term * q * (1.0 / denom);
        sum = sum + term;
        if term.norm() <= prec.target_rel_tol * 0.1 * sum.norm() {
            quiet += 1;
            if quiet >= 3 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence { what: "I_nu power series" })
}

/// `I_ν(x)` for `x > 0` and any real `ν`.
pub fn besseli_real(nu: Real, x: Real, prec: &Precision) -> Result<Real> {
    if !(x > 0.0) {
        return Err(Error::InvalidInput(format!("besseli_real needs x > 0, got {x}")));
    }
    let nu = if nu < 0.0 && nu.fract() == 0.0 { -nu } else { nu };
    let half = 0.5 * x;
    let first = if nu >= 0.0 {
        (nu * half.ln() - libm::lgamma(nu + 1.0)).exp()
    } else {
        half.powf(nu) * rgamma(nu + 1.0)
    };
    i_series(nu, first, half * half, prec)
}

fn check_off_cut(z: Cplx) -> Result<()> {
    if z.im == 0.0 && z.re <= 0.0 {
        return Err(Error::BranchCut { re: z.re, im: z.im });
    }
    Ok(())
}

/// `I_ν(z)` on the principal branch, `z ∉ (-∞, 0]`.
pub fn besseli_complex(nu: Real, z: Cplx, prec: &Precision) -> Result<Cplx> {
    check_off_cut(z)?;
    if z.im == 0.0 {
        return besseli_real(nu, z.re, prec).map(Cplx::from);
    }
    let nu = if nu < 0.0 && nu.fract() == 0.0 { -nu } else { nu };
    let half = z * 0.5;
    let first = if nu >= 0.0 {
        (half.ln() * nu - libm::lgamma(nu + 1.0)).exp()
    } else {
        (half.ln() * nu).exp() * rgamma(nu + 1.0)
    };
    i_series(nu, first, half * half, prec)
}

/// `e^x K_ν(x)` from the `cosh` integral.
pub fn besselk_real_scaled(nu: Real, x: Real, prec: &Precision) -> Result<Real> {
    if !(x > 0.0) {
        return Err(Error::InvalidInput(format!("besselk_real needs x > 0, got {x}")));
    }
    let nu = nu.abs();
    let est = even_trapezoid(
        |t: Real| {
            let s = (0.5 * t).sinh();
            let damp = -2.0 * x * s * s;
            0.5 * ((nu * t + damp).exp() + (-nu * t + damp).exp())
        },
        prec.target_rel_tol,
        "K_nu cosh integral",
    )?;
    Ok(est.value)
}

/// `K_ν(x)` for `x > 0`.
pub fn besselk_real(nu: Real, x: Real, prec: &Precision) -> Result<Real> {
    Ok(besselk_real_scaled(nu, x, prec)? * (-x).exp())
}

/// `K_ν(x) = π(I_{-ν}(x) - I_ν(x)) / (2 sin πν)`; only meaningful away from
/// integer `ν`, used as an independent cross-check.
pub fn besselk_connection(nu: Real, x: Real, prec: &Precision) -> Result<Real> {
    let s = sin_pi(nu);
    if s.abs() < 1e-3 {
        return Err(Error::InvalidInput(format!("connection formula is singular near integer order {nu}")));
    }
    let ip = besseli_real(nu, x, prec)?;
    let im = besseli_real(-nu, x, prec)?;
    Ok(PI * (im - ip) / (2.0 * s))
}

/// `K_ν(w)` for `Re w ≥ 0`, `w ≠ 0`, from the Laplace-type integral.
fn besselk_right(nu: Real, w: Cplx, prec: &Precision) -> Result<Cplx> {
    let nu = nu.abs();
    let p = nu - 0.5;
    let lg = libm::lgamma(nu + 0.5);
    let inv_2w = (w * 2.0).inv();
    let est = exp_sinh(
        |lt: Real| {
            let t = lt.exp();
            if t > 1e250 {
                return Cplx::default();
            }
            let base = Cplx::from(1.0) + inv_2w * t;
            (base.ln() * p + (-t + (p + 1.0) * lt - lg)).exp()
        },
        prec.target_rel_tol * 0.1,
        "K_nu Laplace integral",
    )?;
    let pref = ((w * 2.0).inv() * PI).sqrt() * (-w).exp();
    Ok(pref * est.value)
}

/// `e^{-iνmπ}`.
fn rotation(nu: Real, m: Real) -> Cplx {
    Cplx::new(cos_pi(nu), -m * sin_pi(nu))
}

/// `K_ν(z)` on the principal branch, `z ∉ (-∞, 0]`.
pub fn besselk_complex(nu: Real, z: Cplx, prec: &Precision) -> Result<Cplx> {
    check_off_cut(z)?;
    if z.im == 0.0 {
        return besselk_real(nu, z.re, prec).map(Cplx::from);
    }
    if z.re > 0.0 {
        return besselk_right(nu, z, prec);
    }
    if z.im < 0.0 {
        return besselk_complex(nu, z.conj(), prec).map(|k| k.conj());
    }
    // z = e^{iπ} w with Re w ≥ 0
    let w = -z;
    let k = besselk_right(nu, w, prec)?;
    let i = besseli_complex(nu, w, prec)?;
    Ok(rotation(nu, 1.0) * k - Cplx::new(0.0, PI) * i)
}

/// The analytic continuation of `K_ν` from the upper half-plane across the
/// negative axis: equal to [`besselk_complex`] for `Im z > 0` and `Re z > 0`,
/// and to the upper-lip value on the negative axis. Defined for `z ≠ 0`.
pub fn besselk_upper_sheet(nu: Real, z: Cplx, prec: &Precision) -> Result<Cplx> {
    if z == Cplx::default() {
        return Err(Error::BranchCut { re: 0.0, im: 0.0 });
    }
    if z.re > 0.0 {
        return besselk_complex(nu, z, prec);
    }
    let w = -z;
    let (k, i) = if w.im == 0.0 {
        (Cplx::from(besselk_real(nu, w.re, prec)?), Cplx::from(besseli_real(nu, w.re, prec)?))
    } else {
        (besselk_right(nu, w, prec)?, besseli_complex(nu, w, prec)?)
    };
    Ok(rotation(nu, 1.0) * k - Cplx::new(0.0, PI) * i)
}

/// Derivative of [`besselk_upper_sheet`] via `K'_ν = -(K_{ν-1} + K_{ν+1})/2`.
pub fn besselk_upper_sheet_deriv(nu: Real, z: Cplx, prec: &Precision) -> Result<Cplx> {
    let lo = besselk_upper_sheet(nu - 1.0, z, prec)?;
    let hi = besselk_upper_sheet(nu + 1.0, z, prec)?;
    Ok(-(lo + hi) * 0.5)
}

/// Boundary value of `K_ν` at `-x` on the given lip of the cut:
/// `e^{-iνmπ} K_ν(x) - iπ (sin νmπ / sin νπ) I_ν(x)`, the sine ratio being `m`.
pub fn besselk_neg_axis(nu: Real, x: Real, lip: Lip, prec: &Precision) -> Result<Cplx> {
    let m = lip.m();
    let k = besselk_real(nu, x, prec)?;
    let i = besseli_real(nu, x, prec)?;
    Ok(rotation(nu, m) * k - Cplx::new(0.0, m * PI) * i)
}

/// `(I'_ν(z), K'_ν(z))` from the order recurrences.
pub fn bessel_derivs(nu: Real, z: Cplx, prec: &Precision) -> Result<(Cplx, Cplx)> {
    let di = (besseli_complex(nu - 1.0, z, prec)? + besseli_complex(nu + 1.0, z, prec)?) * 0.5;
    let dk = -(besselk_complex(nu - 1.0, z, prec)? + besselk_complex(nu + 1.0, z, prec)?) * 0.5;
    Ok((di, dk))
}

/// `(I'_ν(x), K'_ν(x))` for `x > 0`.
pub fn bessel_derivs_real(nu: Real, x: Real, prec: &Precision) -> Result<(Real, Real)> {
    let di = 0.5 * (besseli_real(nu - 1.0, x, prec)? + besseli_real(nu + 1.0, x, prec)?);
    let dk = -0.5 * (besselk_real(nu - 1.0, x, prec)? + besselk_real(nu + 1.0, x, prec)?);
    Ok((di, dk))
}
