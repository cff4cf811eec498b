//! The invariant suite behind `kzeros check`.
//!
//! `Quick` covers each family on a few points; `Full` adds the whole table,
//! the dense identity grids and the sweep over `[1.5, 9.5]`.

use std::f64::consts::PI;
use std::str::FromStr;
use std::time::Instant;

use crate::bessel::{
    bessel_derivs, bessel_derivs_real, besseli_complex, besseli_real, besselk_complex, besselk_neg_axis,
    besselk_real, Lip,
};
use crate::coefficients::{c_closed_form_residual, c_factorization_residual, d_factorization_residual, limit_gap};
use crate::moments::moment_limit_convergence;
use crate::reference::{max_abs_error, row, TABLE};
use crate::special::{check_g_hessian, g_forms, special_point, xn_poly_crosscheck};
use crate::sweep::sweep;
use crate::zeros::{polish, raw_roots, solve_zeros, verify_zeroset, RESIDUAL_TOL};
use crate::{nu_n, Cplx, Error, Precision, Real, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            _ => Err(Error::InvalidInput(format!("unknown check level '{s}' (quick|full)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

/// Spot rows shared by both levels.
pub const SPOT_ROWS: [Real; 14] = [1.5, 1.6, 2.0, 2.5, 3.5, 3.6, 4.0, 4.2, 5.5, 6.0, 7.5, 8.0, 9.4, 9.5];

type Check = (&'static str, fn(Level, &Precision) -> Result<(bool, String)>);

const CHECKS: [Check; 13] = [
    ("wronskian", wronskian),
    ("recurrences", recurrences),
    ("g_forms", g_form_equality),
    ("special_points", special_points),
    ("special_identities", special_identities),
    ("moment_limits", moment_limits),
    ("factorizations", factorizations),
    ("coefficient_limits", coefficient_limits),
    ("continuity_at_nu_n", continuity_at_nu_n),
    ("cross_path", cross_path),
    ("table", table),
    ("lower_interval_exclusive", lower_interval),
    ("sweep", sweep_check),
];

/// Run every check; a check that errors counts as failed.
pub fn run(level: Level, prec: &Precision) -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .map(|(name, f)| {
            let t = Instant::now();
            let (passed, detail) = match f(level, prec) {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            CheckOutcome { name, passed, detail, seconds: t.elapsed().as_secs_f64() }
        })
        .collect()
}

/// Deterministic points in `[0, 1)`.
fn lcg(seed: u64) -> impl FnMut() -> Real {
    let mut s = seed;
    move || {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (s >> 11) as Real / (1u64 << 53) as Real
    }
}

fn wronskian(level: Level, prec: &Precision) -> Result<(bool, String)> {
    let orders: &[Real] = if level == Level::Full { &[1.7, 3.5, 6.25] } else { &[4.2] };
    let mut worst: Real = 0.0;
    let mut count = 0;
    for &nu in orders {
        for j in 0..10 {
            let x = 0.5 + 9.5 * j as Real / 9.0;
            let (di, dk) = bessel_derivs_real(nu, x, prec)?;
            let w = besseli_real(nu, x, prec)? * dk - di * besselk_real(nu, x, prec)?;
            worst = worst.max((w * x + 1.0).abs());
            let z = Cplx::new(x - 4.0, 0.3 + 0.7 * j as Real);
            let (di, dk) = bessel_derivs(nu, z, prec)?;
            let w = besseli_complex(nu, z, prec)? * dk - di * besselk_complex(nu, z, prec)?;
            worst = worst.max((w * z + 1.0).norm());
            count += 2;
        }
    }
    Ok((worst <= 1e-9, format!("{count} points, max relative residual {worst:.2e}")))
}

fn recurrences(level: Level, prec: &Precision) -> Result<(bool, String)> {
    let mut rnd = lcg(11);
    let samples = if level == Level::Full { 50 } else { 10 };
    let mut worst: Real = 0.0;
    for _ in 0..samples {
        let nu = 1.5 + 8.5 * rnd();
        let x = 0.1 + 14.9 * rnd();
        let c = 2.0 * (nu + 1.0) / x;
        let k = [besselk_real(nu, x, prec)?, besselk_real(nu + 1.0, x, prec)?, besselk_real(nu + 2.0, x, prec)?];
        let rk = (k[0] - k[2] + c * k[1]).abs() / (k[0].abs() + k[2].abs() + (c * k[1]).abs());
        let i = [besseli_real(nu, x, prec)?, besseli_real(nu + 1.0, x, prec)?, besseli_real(nu + 2.0, x, prec)?];
        let ri = (i[0] - i[2] - c * i[1]).abs() / (i[0].abs() + i[2].abs() + (c * i[1]).abs());
        worst = worst.max(rk).max(ri);
    }
    Ok((worst <= 1e-9, format!("{samples} samples, max relative residual {worst:.2e}")))
}

fn g_form_equality(level: Level, prec: &Precision) -> Result<(bool, String)> {
    let mut worst = g_forms(4.2, 3.7, prec)?.residual;
    if level == Level::Full {
        let mut rnd = lcg(5);
        for _ in 0..40 {
            worst = worst.max(g_forms(1.5 + 8.0 * rnd(), 0.05 + 15.0 * rnd(), prec)?.residual);
        }
    }
    Ok((worst <= 1e-10, format!("max form residual {worst:.2e}")))
}

fn special_points(_: Level, _: &Precision) -> Result<(bool, String)> {
    let want = [1.0, 2.32219, 3.64674, 4.97179, 6.29702];
    let mut ok = true;
    let mut detail = Vec::new();
    for (n, w) in want.iter().enumerate() {
        let x = special_point(n)?.x_n;
        let tol = if n == 0 { 1e-10 } else { 1e-4 };
        ok &= (x - w).abs() <= tol;
        detail.push(format!("x_{n}={x:.9}"));
    }
    Ok((ok, detail.join(" ")))
}

fn special_identities(level: Level, prec: &Precision) -> Result<(bool, String)> {
    let n_max = if level == Level::Full { 4 } else { 1 };
    let (mut k_id, mut poly, mut hess, mut lip): (Real, Real, Real, Real) = (0.0, 0.0, 0.0, 0.0);
    let mut sign_ok = true;
    for n in 0..=n_max {
        let sp = special_point(n)?;
        k_id = k_id.max((sp.k_n * sp.alpha_n * sp.x_n / PI - 1.0).abs());
        poly = poly.max(xn_poly_crosscheck(&sp));
        hess = hess.max(check_g_hessian(&sp, prec)?.values().copied().fold(0.0, Real::max));
        let scale = sp.k_n + PI * besseli_real(sp.nu_n, sp.x_n, prec)?;
        for l in [Lip::Upper, Lip::Lower] {
            lip = lip.max(besselk_neg_axis(sp.nu_n, sp.x_n, l, prec)?.norm() / scale);
        }
        if n < 4 {
            let next = special_point(n + 1)?.x_n;
            sign_ok &= besselk_real(sp.nu_n, next, prec)? - PI * besseli_real(sp.nu_n, next, prec)? < 0.0;
        }
    }
    let ok = k_id <= 1e-8 && poly <= 1e-8 && hess <= 1e-5 && lip <= 1e-8 && sign_ok;
    Ok((
        ok,
        format!(
            "n=0..{n_max}: K*alpha*x/pi {k_id:.1e}, x_n poly {poly:.1e}, hessian {hess:.1e}, lips {lip:.1e}, sign fact {sign_ok}"
        ),
    ))
}

fn moment_limits(level: Level, prec: &Precision) -> Result<(bool, String)> {
    let cases: &[(usize, usize)] = if level == Level::Full { &[(1, 1), (2, 1), (2, 2), (2, 3)] } else { &[(1, 1)] };
    let mut ok = true;
    let mut worst: Real = 0.0;
    for &(n, m) in cases {
        let st = moment_limit_convergence(n, m, &[1e-1, 1e-2, 1e-3], prec)?;
        let rel = st.final_relative_error();
        ok &= st.decreasing() && rel <= 0.05;
        worst = worst.max(rel);
    }
    Ok((ok, format!("{} (n,m) cases, worst relative error at 1e-3: {worst:.2e}", cases.len())))
}

fn factorizations(_: Level, _: &Precision) -> Result<(bool, String)> {
    let (mut c, mut d, mut closed): (Real, Real, Real) = (0.0, 0.0, 0.0);
    for n in 0..=4 {
        let x = special_point(n)?.x_n;
        c = c.max(c_factorization_residual(n, x));
        closed = closed.max(c_closed_form_residual(n, x));
        if n >= 1 {
            d = d.max(d_factorization_residual(n, x));
        }
    }
    let ok = c <= 1e-8 && d <= 1e-8 && closed <= 1e-10;
    Ok((ok, format!("c-side {c:.1e}, d-side {d:.1e}, closed form {closed:.1e}")))
}

fn coefficient_limits(_: Level, prec: &Precision) -> Result<(bool, String)> {
    let mut ok = true;
    let mut last = Vec::new();
    for (n, above) in [(0, true), (1, true), (1, false), (2, false)] {
        let g = [1e-1, 1e-2, 1e-3].iter().map(|d| limit_gap(n, *d, above, prec)).collect::<Result<Vec<_>>>()?;
        ok &= g[0] > g[1] && g[1] > g[2];
        last.push(format!("n={n}{}:{:.1e}", if above { "+" } else { "-" }, g[2]));
    }
    Ok((ok, last.join(" ")))
}

fn nearest(z: Cplx, set: &[Cplx]) -> Real {
    set.iter().map(|w| (w - z).norm()).fold(Real::INFINITY, Real::min)
}

fn continuity_at_nu_n(_: Level, prec: &Precision) -> Result<(bool, String)> {
    let mut ok = true;
    let mut detail = Vec::new();
    for n in [1usize, 2] {
        let exact = solve_zeros(nu_n(n), prec)?.zeros;
        let x = special_point(n)?.x_n;
        let target = Cplx::from(-x);
        for side in [-1.0, 1.0] {
            let zs = solve_zeros(nu_n(n) + side * 1e-3, prec)?.zeros;
            ok &= zs.iter().all(|z| nearest(*z, &exact) <= 0.05);
            ok &= exact.iter().filter(|z| z.im != 0.0).all(|z| nearest(*z, &zs) <= 0.05);
            if side > 0.0 {
                ok &= zs.iter().filter(|z| (*z - target).norm() <= 0.05).count() == 2;
            }
        }
        let merge = [1e-1, 1e-2, 1e-3]
            .iter()
            .map(|d| Ok(nearest(target, &solve_zeros(nu_n(n) + d, prec)?.zeros)))
            .collect::<Result<Vec<Real>>>()?;
        ok &= merge[0] > merge[1] && merge[1] > merge[2];
        detail.push(format!("n={n} merge {:.2e}/{:.2e}/{:.2e}", merge[0], merge[1], merge[2]));
    }
    Ok((ok, detail.join(", ")))
}

fn cross_path(_: Level, prec: &Precision) -> Result<(bool, String)> {
    let (mut pre, mut post): (Real, Real) = (0.0, 0.0);
    for nu in [2.5, 4.5] {
        let exact = solve_zeros(nu, prec)?.zeros;
        for side in [-1e-4, 1e-4] {
            let raw = raw_roots(nu + side, prec)?.roots;
            for r in raw {
                pre = pre.max(nearest(r, &exact));
                let (z, _) = polish(nu, r, prec)?;
                post = post.max(nearest(z, &exact));
            }
        }
    }
    Ok((pre <= 5e-3 && post <= 1e-9, format!("pre-polish {pre:.2e}, post-polish {post:.2e}")))
}

fn table(level: Level, prec: &Precision) -> Result<(bool, String)> {
    let rows: Vec<Real> = if level == Level::Full { TABLE.iter().map(|r| r.0).collect() } else { SPOT_ROWS.to_vec() };
    let mut ok = true;
    let (mut worst, mut worst_res): (Real, Real) = (0.0, 0.0);
    let mut failed = Vec::new();
    for nu in &rows {
        let zs = solve_zeros(*nu, prec)?;
        let err = max_abs_error(&row(*nu).expect("table row"), &zs.zeros).unwrap_or(Real::INFINITY);
        let report = verify_zeroset(&zs, prec, false)?;
        let row_ok = err <= 1e-4 && zs.max_residual() <= RESIDUAL_TOL && report.passed();
        if !row_ok {
            failed.push(format!("{nu}"));
        }
        ok &= row_ok;
        worst = worst.max(err);
        worst_res = worst_res.max(zs.max_residual());
    }
    let mut detail = format!("{} rows, max abs error {worst:.2e}, max residual {worst_res:.1e}", rows.len());
    if !failed.is_empty() {
        detail.push_str(&format!(", failing rows {}", failed.join(",")));
    }
    Ok((ok, detail))
}

fn lower_interval(_: Level, prec: &Precision) -> Result<(bool, String)> {
    let zs = solve_zeros(4.2, prec)?;
    let rep = verify_zeroset(&zs, prec, true)?;
    let item = rep.items.iter().find(|i| i.name == "lower_interval_exclusive").expect("requested");
    Ok((item.passed, item.detail.clone()))
}

fn sweep_check(level: Level, prec: &Precision) -> Result<(bool, String)> {
    let (from, to) = if level == Level::Full { (1.5, 9.5) } else { (3.4, 3.6) };
    let step = if level == Level::Full { 0.1 } else { 0.01 };
    let r = sweep(from, to, step, prec)?;
    let counts = r.track_counts();
    let mut transitions = Vec::new();
    for (i, w) in counts.windows(2).enumerate() {
        if w[1] != w[0] {
            transitions.push((r.grid[i + 1], w[1]));
        }
    }
    let crossings_ok = r.crossings.iter().all(|c| c.from_below != Some(false) && c.from_above != Some(false));
    let want: Vec<(Real, usize)> =
        if level == Level::Full { vec![(3.5, 2), (5.5, 3), (7.5, 4), (9.5, 5)] } else { vec![(3.5, 2)] };
    let ok = transitions == want && crossings_ok && r.max_step_displacement <= 0.2;
    Ok((
        ok,
        format!(
            "{} points, transitions {:?}, crossings ok {crossings_ok}, max step {:.3}",
            r.grid.len(),
            transitions,
            r.max_step_displacement
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_passes() {
        let out = run(Level::Quick, &Precision::default());
        assert_eq!(out.len(), CHECKS.len());
        for o in &out {
            assert!(o.passed, "{}: {}", o.name, o.detail);
        }
    }

    #[test]
    fn level_parsing() {
        assert_eq!("full".parse::<Level>().unwrap(), Level::Full);
        assert!("everything".parse::<Level>().is_err());
    }
}
