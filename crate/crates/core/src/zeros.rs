//! Counting, solving, polishing and verifying the zeros of `K_ν`.
//!
//! Half-odd orders take the exact polynomial path; every other order builds
//! the characteristic polynomial `Σ α_{N-k} z^k` from the moments. Roots are
//! then refined by Newton's method on `K_ν` itself, continued across the
//! negative axis from above, so a zero on the cut (only at `ν = ν_n`) is
//! polished on the upper lip.

use rayon::prelude::*;

use crate::bessel::{besseli_complex, besseli_real, besselk_complex, besselk_real, besselk_upper_sheet, besselk_upper_sheet_deriv};
use crate::coefficients::{halfodd_poly, CoefficientSet};
use crate::moments::{moment_vector, GUARD_BAND, SPIKE_ZONE};
use crate::special::special_point;
use crate::{nu_n, snap_half_odd, Cplx, Error, Order, OrderClass, Precision, Real, RealPolynomial, Result};

/// Residual gate for an accepted zero.
pub const RESIDUAL_TOL: Real = 1e-8;

/// Largest Newton displacement tolerated before the seed is deemed bad.
pub const MAX_POLISH_MOVE: Real = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Method {
    HalfOddPoly,
    CharPoly,
    CharPolyPolished,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ZeroSet {
    /// The order actually solved (after snapping).
    pub nu: Real,
    /// Sorted by `|Im|`, then `Re`; conjugates adjacent with `+Im` first.
    pub zeros: Vec<Cplx>,
    /// `|K_ν(z)| / (|K'_ν(z)| |z|)` per zero.
    pub residuals: Vec<Real>,
    pub method: Method,
    /// Index of the conjugate partner, `None` for a real zero.
    pub pair_index: Vec<Option<usize>>,
    /// True when the requested order was moved onto a half-odd order.
    pub snapped: bool,
    /// True when the moments came from the spike-hardened quadrature.
    pub guard_flag: bool,
}

impl ZeroSet {
    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn max_residual(&self) -> Real {
        self.residuals.iter().copied().fold(0.0, Real::max)
    }

    /// Zeros with `Im ≥ 0`, in the stored order.
    pub fn upper(&self) -> impl Iterator<Item = (usize, Cplx)> + '_ {
        self.zeros.iter().copied().enumerate().filter(|(_, z)| z.im >= 0.0)
    }
}

/// `N(ν)`: the number of zeros of `K_ν`.
pub fn count_zeros(nu: Real) -> Result<usize> {
    Ok(Order::new(nu)?.zero_count())
}

/// The order that is actually solved for a requested `ν`, and whether it moved.
///
/// Half-odd orders within `1e-12` are snapped, and so is anything inside the
/// moment guard band around some `ν_n`.
pub fn resolve_order(nu: Real) -> Result<(Order, bool)> {
    let s = snap_half_odd(nu, 1e-12);
    let order = Order::new(s)?;
    let (n, delta) = order.nearest_special();
    if delta != 0.0 && delta.abs() < GUARD_BAND {
        return Ok((Order::new(nu_n(n))?, true));
    }
    Ok((order, s != nu))
}

/// Coefficients `a`, `α` and the moments behind the characteristic equation.
pub fn characteristic_system(nu: Real, prec: &Precision) -> Result<CoefficientSet> {
    let order = Order::new(nu)?;
    if order.is_half_odd() {
        return Err(Error::InvalidInput(format!("nu = {nu} is half-odd; use the exact polynomial")));
    }
    let mv = moment_vector(nu, order.zero_count(), prec)?;
    CoefficientSet::new(nu, mv)
}

/// `Σ_k α_{N-k} z^k` with `N = N(ν)`.
pub fn characteristic_poly(nu: Real, prec: &Precision) -> Result<RealPolynomial> {
    let cs = characteristic_system(nu, prec)?;
    cs.polynomial(count_zeros(nu)?)
}

/// The equation of the interval below, `Σ_k α_{N-2-k} z^k`, built from the
/// same order's data. Its values at the true zeros stay away from zero.
pub fn lower_interval_poly(cs: &CoefficientSet) -> Result<RealPolynomial> {
    let n = count_zeros(cs.nu)?;
    if n < 4 {
        return Err(Error::InvalidInput("no lower interval below nu_0".into()));
    }
    cs.polynomial(n - 2)
}

/// Polynomial roots before any polishing.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct RawRoots {
    pub nu: Real,
    pub roots: Vec<Cplx>,
    pub method: Method,
    pub snapped: bool,
    pub guard_flag: bool,
}

pub fn raw_roots(nu: Real, prec: &Precision) -> Result<RawRoots> {
    let (order, snapped) = resolve_order(nu)?;
    let nu = order.nu;
    if order.is_half_odd() {
        let roots = halfodd_poly(nu)?.roots()?;
        return Ok(RawRoots { nu, roots, method: Method::HalfOddPoly, snapped, guard_flag: false });
    }
    let cs = characteristic_system(nu, prec)?;
    let guard_flag = cs.moments_used.guard_flag;
    let roots = cs.polynomial(order.zero_count())?.roots()?;
    Ok(RawRoots { nu, roots, method: Method::CharPoly, snapped, guard_flag })
}

fn newton_eval(nu: Real, z: Cplx, prec: &Precision) -> Result<(Cplx, Cplx)> {
    Ok((besselk_upper_sheet(nu, z, prec)?, besselk_upper_sheet_deriv(nu, z, prec)?))
}

/// `|K_ν(z)| / (|K'_ν(z)| |z|)` for `Im z ≥ 0` (upper lip on the cut).
pub fn residual(nu: Real, z: Cplx, prec: &Precision) -> Result<Real> {
    let z = if z.im < 0.0 { z.conj() } else { z };
    let (f, d) = newton_eval(nu, z, prec)?;
    Ok(f.norm() / (d.norm() * z.norm()))
}

/// Newton refinement of a zero of `K_ν` from `z0`.
///
/// Returns the zero and its residual. A real `z0` stays on the negative
/// axis and is refined on the upper lip.
pub fn polish(nu: Real, z0: Cplx, prec: &Precision) -> Result<(Cplx, Real)> {
    if z0.im < 0.0 {
        return polish(nu, z0.conj(), prec).map(|(z, r)| (z.conj(), r));
    }
    let on_axis = z0.im == 0.0;
    let mut z = z0;
    for _ in 0..30 {
        let (f, d) = newton_eval(nu, z, prec)?;
        if d.norm() == 0.0 {
            return Err(Error::NonConvergence { what: "Newton polish (vanishing derivative)" });
        }
        let mut step = f / d;
        if on_axis {
            step.im = 0.0;
        }
        z -= step;
        let moved = (z - z0).norm();
        if !(moved <= MAX_POLISH_MOVE) || (!on_axis && z.im < 0.0) {
            return Err(Error::PolishDivergence { re: z0.re, im: z0.im, moved });
        }
        if step.norm() <= 1e-12 * z.norm() {
            break;
        }
    }
    Ok((z, residual(nu, z, prec)?))
}

/// Upper-half seeds (and the real seed, if any) from polynomial roots.
///
/// Near `ν_n` a near-real conjugate pair can come out of the eigensolver as
/// two real roots; such roots are paired and seeded just above the axis.
fn seeds(order: &Order, roots: &[Cplx]) -> Result<Vec<Cplx>> {
    let tiny = |z: &Cplx| z.im.abs() <= 1e-12 * (1.0 + z.norm());
    let mut reals: Vec<Real> = roots.iter().filter(|z| tiny(z)).map(|z| z.re).collect();
    let mut out: Vec<Cplx> = roots.iter().filter(|z| !tiny(z) && z.im > 0.0).copied().collect();
    let lower = roots.iter().filter(|z| !tiny(z) && z.im < 0.0).count();
    if lower != out.len() {
        return Err(Error::NonConvergence { what: "conjugate pairing of polynomial roots" });
    }
    let want_real = usize::from(matches!(order.class, OrderClass::SpecialNuN { .. }));
    if reals.len() < want_real || (reals.len() - want_real) % 2 != 0 {
        return Err(Error::NonConvergence { what: "real root count of the polynomial" });
    }
    reals.sort_by(Real::total_cmp);
    if want_real == 1 {
        let OrderClass::SpecialNuN { n } = order.class else { unreachable!() };
        let x = special_point(n)?.x_n;
        let (i, _) = reals
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 + x).abs().total_cmp(&(b.1 + x).abs()))
            .expect("non-empty");
        out.push(Cplx::from(reals.remove(i)));
    }
    for pair in reals.chunks(2) {
        let half = 0.5 * (pair[1] - pair[0]);
        out.push(Cplx::new(0.5 * (pair[0] + pair[1]), half.max(1e-6)));
    }
    Ok(out)
}

fn order_key(a: &Cplx, b: &Cplx) -> std::cmp::Ordering {
    a.im.abs()
        .total_cmp(&b.im.abs())
        .then(a.re.total_cmp(&b.re))
        .then(b.im.total_cmp(&a.im))
}

/// Assemble a sorted, conjugate-closed set from upper-half zeros.
fn assemble(upper: Vec<(Cplx, Real)>) -> (Vec<Cplx>, Vec<Real>, Vec<Option<usize>>) {
    let mut all: Vec<(Cplx, Real)> = Vec::new();
    for (z, r) in upper {
        all.push((z, r));
        if z.im != 0.0 {
            all.push((z.conj(), r));
        }
    }
    all.sort_by(|a, b| order_key(&a.0, &b.0));
    let zeros: Vec<Cplx> = all.iter().map(|p| p.0).collect();
    let residuals = all.iter().map(|p| p.1).collect();
    let pair_index = zeros
        .iter()
        .map(|z| if z.im == 0.0 { None } else { zeros.iter().position(|w| *w == z.conj()) })
        .collect();
    (zeros, residuals, pair_index)
}

/// All `N(ν)` zeros of `K_ν`, polished.
pub fn solve_zeros(nu: Real, prec: &Precision) -> Result<ZeroSet> {
    let raw = raw_roots(nu, prec)?;
    let order = Order::new(raw.nu)?;
    let seeds = seeds(&order, &raw.roots)?;
    let polished =
        seeds.par_iter().map(|&s| polish(raw.nu, s, prec)).collect::<Result<Vec<(Cplx, Real)>>>()?;
    for (i, a) in polished.iter().enumerate() {
        for b in &polished[i + 1..] {
            if (a.0 - b.0).norm() <= 1e-8 * a.0.norm() {
                return Err(Error::NonConvergence { what: "distinct zeros (two seeds polished to one)" });
            }
        }
    }
    let (zeros, residuals, pair_index) = assemble(polished);
    let method = match raw.method {
        Method::HalfOddPoly => Method::HalfOddPoly,
        _ => Method::CharPolyPolished,
    };
    Ok(ZeroSet { nu: raw.nu, zeros, residuals, method, pair_index, snapped: raw.snapped, guard_flag: raw.guard_flag })
}

/// Sorted copy of a root list, in the same order as a [`ZeroSet`].
pub fn sorted_roots(mut roots: Vec<Cplx>) -> Vec<Cplx> {
    roots.sort_by(order_key);
    roots
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct VerifyItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct VerifyReport {
    pub nu: Real,
    pub items: Vec<VerifyItem>,
    /// Observations that are recorded but not failures.
    pub warnings: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    fn push(&mut self, name: &str, passed: bool, detail: String) {
        self.items.push(VerifyItem { name: name.to_string(), passed, detail });
    }
}

/// `|K_ν(w)| + π|I_ν(w)|` at `w = -z`: the size of the terms whose
/// combination vanishes at a zero `z`.
fn term_scale(nu: Real, z: Cplx, prec: &Precision) -> Result<Real> {
    let w = -z;
    if w.im == 0.0 && w.re > 0.0 {
        return Ok(besselk_real(nu, w.re, prec)?.abs() + std::f64::consts::PI * besseli_real(nu, w.re, prec)?.abs());
    }
    Ok(besselk_complex(nu, w, prec)?.norm() + std::f64::consts::PI * besseli_complex(nu, w, prec)?.norm())
}

/// Independent re-check of a zero set. With `lower_interval`, also evaluates the
/// lower-interval equation at each zero (generic orders with `N ≥ 4`).
pub fn verify_zeroset(zs: &ZeroSet, prec: &Precision, lower_interval: bool) -> Result<VerifyReport> {
    let order = Order::new(zs.nu)?;
    let mut rep = VerifyReport { nu: zs.nu, items: Vec::new(), warnings: Vec::new() };

    let n = order.zero_count();
    rep.push("count", zs.len() == n, format!("{} zeros, expected {n}", zs.len()));

    let res = zs.zeros.iter().map(|z| residual(zs.nu, *z, prec)).collect::<Result<Vec<_>>>()?;
    let worst = res.iter().copied().fold(0.0, Real::max);
    rep.push("residual", worst <= RESIDUAL_TOL, format!("max residual {worst:.3e}"));

    let mut pairing = 0.0f64;
    let mut pairs_ok = true;
    for (i, z) in zs.zeros.iter().enumerate() {
        if z.im == 0.0 {
            continue;
        }
        match zs.pair_index.get(i).copied().flatten() {
            Some(j) => pairing = pairing.max((zs.zeros[j] - z.conj()).norm()),
            None => pairs_ok = false,
        }
    }
    rep.push("pairing", pairs_ok && pairing <= 1e-10, format!("max |z - conj(partner)| {pairing:.3e}"));

    let max_re = zs.zeros.iter().map(|z| z.re).fold(Real::NEG_INFINITY, Real::max);
    if zs.nu <= 9.5 {
        rep.push("negative_real_part", max_re < 0.0, format!("max Re {max_re:.6}"));
    } else if max_re >= 0.0 {
        rep.warnings.push(format!("zero with Re >= 0 at nu = {} (max Re {max_re:.6})", zs.nu));
    }

    let reals = zs.zeros.iter().filter(|z| z.im.abs() <= 1e-9).count();
    let want = usize::from(matches!(order.class, OrderClass::SpecialNuN { .. }));
    rep.push("real_zeros", reals == want, format!("{reals} real zeros, expected {want}"));

    let mut simple = true;
    let mut min_ratio = Real::INFINITY;
    for z in zs.upper().map(|p| p.1) {
        let d = besselk_upper_sheet_deriv(zs.nu, z, prec)?.norm();
        let ratio = d * z.norm() / term_scale(zs.nu, z, prec)?;
        min_ratio = min_ratio.min(ratio);
        simple &= ratio > 1e-6;
    }
    rep.push("simple", simple, format!("min |K'||z|/scale {min_ratio:.3e}"));

    if lower_interval && !order.is_half_odd() && n >= 4 {
        let cs = characteristic_system(zs.nu, prec)?;
        let lower = lower_interval_poly(&cs)?;
        let min_val = zs.zeros.iter().map(|z| lower.eval(*z).norm()).fold(Real::INFINITY, Real::min);
        rep.push("lower_interval_exclusive", min_val > 1e-3, format!("min |lower poly| {min_val:.3e}"));
    }
    if zs.guard_flag {
        rep.warnings.push(format!("order within {SPIKE_ZONE:e} of a special order: moments from the spike-hardened quadrature"));
    }
    Ok(rep)
}
