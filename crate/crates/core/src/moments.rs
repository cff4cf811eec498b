//! Signed moments `M_k(ν) = cos(πν) ∫₀^∞ y^{k-1} / G_ν(y) dy`.
//!
//! The integrand vanishes like `y^{2ν+k-1}` at the origin and decays like
//! `y^k e^{-2y}` at infinity. Near a special order `ν_n` it develops a spike of
//! height `~1/δ²` and width `~δ` at `x_n - β_nδ/α_n` (`δ = ν - ν_n`), while the
//! cosine factor is `O(δ)`; the product tends to `±x_n^k`. The quadrature
//! places breakpoints on the predicted spike, and refuses orders within
//! [`GUARD_BAND`] of `ν_n`.

use std::cell::RefCell;
use std::f64::consts::PI;

use crate::quad::{gauss_kronrod, GkConfig};
use crate::special::{g_squares, special_point};
use crate::{cos_pi, nu_n, Error, Order, Precision, Real, Result};

/// Orders closer than this to some `ν_n` are rejected.
pub const GUARD_BAND: Real = 1e-6;

/// Within this distance of `ν_n` the spike-hardened budget is used.
pub const SPIKE_ZONE: Real = 1e-3;

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct MomentVector {
    pub nu: Real,
    /// `values[k-1] = M_k(ν)`.
    pub values: Vec<Real>,
    pub abs_err: Vec<Real>,
    /// Set when `|ν - ν_n| ≤ SPIKE_ZONE` for some `n`.
    pub guard_flag: bool,
}

impl MomentVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `M_k`, 1-based.
    pub fn get(&self, k: usize) -> Real {
        self.values[k - 1]
    }
}

/// Single moment `(M_k(ν), abs_err)`.
pub fn moment(nu: Real, k: usize, prec: &Precision) -> Result<(Real, Real)> {
    let mv = moment_vector(nu, k, prec)?;
    Ok((mv.values[k - 1], mv.abs_err[k - 1]))
}

/// `M_1 .. M_kmax` sharing one adaptive subdivision.
pub fn moment_vector(nu: Real, kmax: usize, prec: &Precision) -> Result<MomentVector> {
    moment_vector_with(nu, kmax, prec, 0)
}

/// As [`moment_vector`], with every initial panel bisected `presplit` times.
pub fn moment_vector_with(nu: Real, kmax: usize, prec: &Precision, presplit: u32) -> Result<MomentVector> {
    let order = Order::new(nu)?;
    if kmax == 0 {
        return Err(Error::InvalidInput("moment vector needs at least one moment".into()));
    }
    let (n, delta) = order.nearest_special();
    if delta.abs() < GUARD_BAND {
        return Err(Error::GuardBandViolation { nu, n });
    }
    let guard_flag = delta.abs() <= SPIKE_ZONE;
    let c = cos_pi(nu);
    if c == 0.0 {
        return Ok(MomentVector { nu, values: vec![0.0; kmax], abs_err: vec![0.0; kmax], guard_flag });
    }

    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let integrand = |y: Real, out: &mut [Real]| {
        let inv = match g_squares(nu, y, prec) {
            Ok(g) => 1.0 / g,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        };
        let mut v = inv;
        for o in out.iter_mut() {
            *o = v;
            v *= y;
        }
    };

    let breaks = breakpoints(nu, n, delta, kmax, &integrand)?;
    let cfg = GkConfig {
        rel_tol: (prec.target_rel_tol * 10.0).max(1e-14),
        max_intervals: if guard_flag { 32_000 } else { 4_000 },
        presplit,
    };
    let est = gauss_kronrod(&integrand, &breaks, kmax, cfg, "moment integral");
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let est = est?;
    Ok(MomentVector {
        nu,
        values: est.values.iter().map(|q| c * q).collect(),
        abs_err: est.errs.iter().map(|e| c.abs() * e).collect(),
        guard_flag,
    })
}

fn breakpoints(
    nu: Real,
    n: usize,
    delta: Real,
    kmax: usize,
    f: &dyn Fn(Real, &mut [Real]),
) -> Result<Vec<Real>> {
    let s = (nu / 2.0).max(1.0);
    // upper limit: walk out until every component is negligible against its peak
    let mut buf = vec![0.0; kmax];
    let mut peak = vec![0.0f64; kmax];
    let mut upper = 0.0;
    let step = 0.25;
    for j in 1..2000 {
        let y = j as Real * step;
        f(y, &mut buf);
        for (p, v) in peak.iter_mut().zip(&buf) {
            *p = p.max(v.abs());
        }
        if y > s + kmax as Real && buf.iter().zip(&peak).all(|(v, p)| v.abs() * y <= 1e-20 * p) {
            upper = y;
            break;
        }
    }
    if upper == 0.0 {
        return Err(Error::QuadratureFailure { what: "moment integral tail", err: Real::INFINITY });
    }

    let mut pts = vec![0.0, 0.5 * s, s];
    let mut t = 2.0 * s;
    while t < upper {
        pts.push(t);
        t += s;
    }
    pts.push(upper);

    if delta.abs() <= 0.25 {
        let sp = special_point(n)?;
        let centre = sp.x_n - sp.beta_n * delta / sp.alpha_n;
        let width = PI * sp.k_n * delta.abs() / sp.alpha_n;
        pts.push(centre);
        let mut w = width;
        for _ in 0..10 {
            pts.push(centre - w);
            pts.push(centre + w);
            w *= 4.0;
        }
        for e in [1e-1, 1e-2, 1e-3] {
            pts.push(sp.x_n - e);
            pts.push(sp.x_n + e);
        }
    }
    pts.retain(|p| *p >= 0.0 && *p <= upper);
    pts.sort_by(Real::total_cmp);
    pts.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * b.abs().max(1.0));
    Ok(pts)
}

/// Errors `|M_m(ν_n ± δ) ∓ x_n^m|` over a list of `δ`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct MomentLimitStudy {
    pub n: usize,
    pub m: usize,
    pub deltas: Vec<Real>,
    /// `x_n^m`.
    pub limit: Real,
    pub plus: Vec<Real>,
    /// Absent for `n = 0`, where `ν_0 - δ < 3/2`.
    pub minus: Option<Vec<Real>>,
}

fn strictly_decreasing(v: &[Real]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

impl MomentLimitStudy {
    /// True when each branch's error sequence strictly decreases with `δ`.
    pub fn decreasing(&self) -> bool {
        strictly_decreasing(&self.plus) && self.minus.as_deref().is_none_or(strictly_decreasing)
    }

    /// Largest error at the smallest `δ`, relative to `x_n^m`.
    pub fn final_relative_error(&self) -> Real {
        let last = |v: &[Real]| *v.last().unwrap_or(&0.0);
        last(&self.plus).max(self.minus.as_deref().map_or(0.0, last)) / self.limit
    }
}

pub fn moment_limit_convergence(n: usize, m: usize, deltas: &[Real], prec: &Precision) -> Result<MomentLimitStudy> {
    if m == 0 {
        return Err(Error::InvalidInput("moment index m starts at 1".into()));
    }
    if deltas.is_empty() || deltas.iter().any(|d| *d < GUARD_BAND) || !strictly_decreasing(deltas) {
        return Err(Error::InvalidInput("deltas must be decreasing and at least 1e-6".into()));
    }
    let sp = special_point(n)?;
    let limit = sp.x_n.powi(m as i32);
    let nu = nu_n(n);
    let plus = deltas
        .iter()
        .map(|d| moment(nu + d, m, prec).map(|(v, _)| (v - limit).abs()))
        .collect::<Result<Vec<_>>>()?;
    let minus = if n == 0 {
        None
    } else {
        Some(
            deltas
                .iter()
                .map(|d| moment(nu - d, m, prec).map(|(v, _)| (v + limit).abs()))
                .collect::<Result<Vec<_>>>()?,
        )
    };
    Ok(MomentLimitStudy { n, m, deltas: deltas.to_vec(), limit, plus, minus })
}
