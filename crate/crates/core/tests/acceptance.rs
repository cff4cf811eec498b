//! Acceptance suite: one pass/fail line per criterion.
//!
//! Runs as a plain binary so the lines are always printed; exits non-zero when
//! any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use kzeros::bessel::{bessel_derivs, bessel_derivs_real, besseli_complex, besseli_real, besselk_complex, besselk_real};
use kzeros::check::{self, Level};
use kzeros::coefficients::{
    c_closed_form_residual, c_coeffs_closed, c_coeffs_recurrence, c_factorization_residual, d_factorization_residual,
};
use kzeros::moments::moment;
use kzeros::special::{g_forms, special_point};
use kzeros::zeros::{characteristic_system, lower_interval_poly, polish, raw_roots, residual, solve_zeros};
use kzeros::{nu_n, Cplx, Precision, Real};

/// Published rows checked by the table criterion, upper half-plane only.
#[rustfmt::skip]
const ROWS: &[(Real, &[(Real, Real)])] = &[
    (1.5, &[(-1.0, 0.0)]),
    (1.6, &[(-1.06356, 0.0852232)]),
    (2.0, &[(-1.28137, 0.429485)]),
    (2.5, &[(-1.5, 0.866025)]),
    (3.5, &[(-1.83891, 1.75438), (-2.32219, 0.0)]),
    (3.6, &[(-1.86802, 1.84411), (-2.3873, 0.0864217)]),
    (4.0, &[(-1.97816, 2.20437), (-2.62867, 0.432697)]),
    (4.2, &[(-2.02987, 2.38525), (-2.73967, 0.606267)]),
    (5.5, &[(-2.32467, 3.57102), (-3.35196, 1.74266), (-3.64674, 0.0)]),
    (6.0, &[(-2.4234, 4.03096), (-3.5511, 2.1835), (-3.96156, 0.433345)]),
    (7.5, &[(-2.68568, 5.42069), (-4.07014, 3.51717), (-4.75829, 1.73929), (-4.97179, 0.0)]),
    (8.0, &[(-2.76414, 5.88671), (-4.22315, 3.96507), (-4.98828, 2.17708), (-5.29076, 0.433578)]),
    (9.4, &[(-2.96574, 7.19753), (-4.61251, 5.22676), (-5.56625, 3.40974), (-6.07797, 1.65068)]),
    (9.5, &[(-2.97926, 7.29146), (-4.63844, 5.31727), (-5.60442, 3.49816), (-6.12937, 1.73785), (-6.29702, 0.0)]),
];

type Outcome = Result<(bool, String), String>;

fn prec() -> Precision {
    Precision::default()
}

fn nearest(z: Cplx, set: &[Cplx]) -> Real {
    set.iter().map(|w| (w - z).norm()).fold(Real::INFINITY, Real::min)
}

/// Both directions of [`nearest`]: every point of `a` near `b` and vice versa.
fn set_distance(a: &[Cplx], b: &[Cplx]) -> Real {
    let ab = a.iter().map(|z| nearest(*z, b)).fold(0.0, Real::max);
    let ba = b.iter().map(|z| nearest(*z, a)).fold(0.0, Real::max);
    ab.max(ba)
}

fn table_reproduction() -> Outcome {
    let p = prec();
    let (mut worst, mut slowest): (Real, Real) = (0.0, 0.0);
    let mut ok = true;
    for &(nu, upper) in ROWS {
        let t = Instant::now();
        let zs = solve_zeros(nu, &p).map_err(|e| format!("nu={nu}: {e}"))?;
        slowest = slowest.max(t.elapsed().as_secs_f64());
        let mut published = Vec::new();
        for &(re, im) in upper {
            published.push(Cplx::new(re, im));
            if im != 0.0 {
                published.push(Cplx::new(re, -im));
            }
        }
        ok &= published.len() == zs.len();
        let mut used = vec![false; zs.len()];
        for w in &published {
            let (j, err) = zs
                .zeros
                .iter()
                .map(|z| (z.re - w.re).abs().max((z.im - w.im).abs()))
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .ok_or(format!("nu={nu}: no zeros"))?;
            ok &= !used[j];
            used[j] = true;
            worst = worst.max(err);
        }
    }
    ok &= worst <= 1e-4 && slowest <= 5.0;
    Ok((ok, format!("{} rows, max abs error {worst:.2e}, slowest row {slowest:.3}s", ROWS.len())))
}

fn special_points() -> Outcome {
    let want = [1.0, 2.32219, 3.64674, 4.97179, 6.29702];
    let mut ok = true;
    let mut got = Vec::new();
    for (n, w) in want.iter().enumerate() {
        let x = special_point(n).map_err(|e| e.to_string())?.x_n;
        ok &= (x - w).abs() <= if n == 0 { 1e-10 } else { 1e-4 };
        got.push(format!("x_{n}={x:.6}"));
    }
    Ok((ok, got.join(" ")))
}

fn identity_suite() -> Outcome {
    let p = prec();
    let e = |e: kzeros::Error| e.to_string();
    // Wronskian on 6 orders x 10 points, half on the positive axis, half complex
    let mut wr: Real = 0.0;
    let mut points = 0;
    for nu in [1.5, 2.3, 3.5, 4.2, 6.75, 9.5] {
        for j in 0..5 {
            let x = 0.3 + 2.9 * j as Real;
            let (di, dk) = bessel_derivs_real(nu, x, &p).map_err(e)?;
            let w = besseli_real(nu, x, &p).map_err(e)? * dk - di * besselk_real(nu, x, &p).map_err(e)?;
            wr = wr.max((w * x + 1.0).abs());
            let z = Cplx::from_polar(0.5 + 2.0 * j as Real, 0.4 + 0.5 * j as Real);
            let (di, dk) = bessel_derivs(nu, z, &p).map_err(e)?;
            let w = besseli_complex(nu, z, &p).map_err(e)? * dk - di * besselk_complex(nu, z, &p).map_err(e)?;
            wr = wr.max((w * z + 1.0).norm());
            points += 2;
        }
    }
    // three-term recurrences, relative to the size of the terms
    let mut rec: Real = 0.0;
    for nu in [1.5, 2.2, 3.7, 5.5, 8.1] {
        for x in [0.2, 1.0, 4.0, 12.0] {
            let c = 2.0 * (nu + 1.0) / x;
            let k = |v: Real| besselk_real(v, x, &p).map_err(e);
            let i = |v: Real| besseli_real(v, x, &p).map_err(e);
            let (k0, k1, k2) = (k(nu)?, k(nu + 1.0)?, k(nu + 2.0)?);
            let (i0, i1, i2) = (i(nu)?, i(nu + 1.0)?, i(nu + 2.0)?);
            rec = rec.max((k0 - k2 + c * k1).abs() / (k0.abs() + k2.abs() + (c * k1).abs()));
            rec = rec.max((i0 - i2 - c * i1).abs() / (i0.abs() + i2.abs() + (c * i1).abs()));
        }
    }
    let mut g: Real = 0.0;
    for nu in [1.6, 2.5, 4.2, 7.3, 9.5] {
        for x in [0.1, 0.9, 3.3, 8.0, 14.0] {
            g = g.max(g_forms(nu, x, &p).map_err(e)?.residual);
        }
    }
    let mut kid: Real = 0.0;
    for n in 0..=4 {
        let x = special_point(n).map_err(e)?.x_n;
        let nu = nu_n(n);
        let (di, dk) = bessel_derivs_real(nu, x, &p).map_err(e)?;
        let alpha = -dk + PI * di;
        kid = kid.max((besselk_real(nu, x, &p).map_err(e)? * alpha * x / PI - 1.0).abs());
    }
    let ok = wr <= 1e-9 && rec <= 1e-9 && g <= 1e-10 && kid <= 1e-8;
    Ok((ok, format!("wronskian {wr:.1e} ({points} pts), recurrences {rec:.1e}, G forms {g:.1e}, K*alpha*x/pi {kid:.1e}")))
}

fn moment_limit_convergence() -> Outcome {
    let p = prec();
    let mut ok = true;
    let mut worst: Real = 0.0;
    for (n, m) in [(1, 1), (2, 1), (2, 2), (2, 3)] {
        let limit = special_point(n).map_err(|e| e.to_string())?.x_n.powi(m as i32);
        for side in [1.0, -1.0] {
            let errs = [1e-1, 1e-2, 1e-3]
                .iter()
                .map(|d| moment(nu_n(n) + side * d, m, &p).map(|(v, _)| (v - side * limit).abs()))
                .collect::<Result<Vec<Real>, _>>()
                .map_err(|e| e.to_string())?;
            ok &= errs[0] > errs[1] && errs[1] > errs[2] && errs[2] <= 0.05 * limit;
            worst = worst.max(errs[2] / limit);
        }
    }
    Ok((ok, format!("4 (n,m) cases, worst relative error at 1e-3: {worst:.2e}")))
}

fn factorizations() -> Outcome {
    let (mut c, mut d, mut closed): (Real, Real, Real) = (0.0, 0.0, 0.0);
    for n in 0..=4 {
        let x = special_point(n).map_err(|e| e.to_string())?.x_n;
        c = c.max(c_factorization_residual(n, x));
        if n >= 1 {
            d = d.max(d_factorization_residual(n, x));
        }
        let direct = c_coeffs_closed(n, x)
            .iter()
            .zip(c_coeffs_recurrence(n, x))
            .map(|(a, b)| (a - b).abs() / b.abs().max(1.0))
            .fold(0.0, Real::max);
        closed = closed.max(direct).max(c_closed_form_residual(n, x));
    }
    let ok = c <= 1e-8 && d <= 1e-8 && closed <= 1e-10;
    Ok((ok, format!("c-side {c:.1e}, d-side {d:.1e}, closed form vs recurrence {closed:.1e}")))
}

fn continuity() -> Outcome {
    let p = prec();
    let e = |e: kzeros::Error| e.to_string();
    let mut ok = true;
    let mut detail = Vec::new();
    for n in [1usize, 2] {
        let exact = solve_zeros(nu_n(n), &p).map_err(e)?.zeros;
        let x = special_point(n).map_err(e)?.x_n;
        let target = Cplx::from(-x);
        for side in [-1.0, 1.0] {
            let zs = solve_zeros(nu_n(n) + side * 1e-3, &p).map_err(e)?.zeros;
            ok &= zs.iter().all(|z| nearest(*z, &exact) <= 0.05);
            ok &= exact.iter().filter(|z| z.im != 0.0).all(|z| nearest(*z, &zs) <= 0.05);
            if side > 0.0 {
                ok &= zs.iter().filter(|z| (*z - target).norm() <= 0.05).count() == 2;
            }
        }
        let mut merge = Vec::new();
        for d in [1e-1, 1e-2, 1e-3] {
            merge.push(nearest(target, &solve_zeros(nu_n(n) + d, &p).map_err(e)?.zeros));
        }
        ok &= merge[0] > merge[1] && merge[1] > merge[2];
        detail.push(format!("n={n} merge {:.2e}/{:.2e}/{:.2e}", merge[0], merge[1], merge[2]));
    }
    Ok((ok, detail.join(", ")))
}

fn cross_path() -> Outcome {
    let p = prec();
    let e = |e: kzeros::Error| e.to_string();
    let (mut pre, mut post): (Real, Real) = (0.0, 0.0);
    for nu in [2.5, 4.5] {
        let oracle = raw_roots(nu, &p).map_err(e)?.roots;
        let oracle_polished = oracle.iter().map(|z| polish(nu, *z, &p).map(|r| r.0)).collect::<Result<Vec<_>, _>>().map_err(e)?;
        for side in [-1e-4, 1e-4] {
            let raw = raw_roots(nu + side, &p).map_err(e)?.roots;
            pre = pre.max(set_distance(&raw, &oracle));
            let polished = raw.iter().map(|z| polish(nu, *z, &p).map(|r| r.0)).collect::<Result<Vec<_>, _>>().map_err(e)?;
            post = post.max(set_distance(&polished, &oracle_polished));
        }
    }
    Ok((pre <= 5e-3 && post <= 1e-9, format!("pre-polish {pre:.2e}, post-polish {post:.2e}")))
}

fn residual_gate() -> Outcome {
    let p = prec();
    let mut orders: Vec<Real> = (15..=95).map(|k| k as Real / 10.0).collect();
    for n in 0..=4 {
        orders.extend([nu_n(n) + 1e-3, nu_n(n) + 1e-2]);
        if n > 0 {
            orders.extend([nu_n(n) - 1e-3, nu_n(n) - 1e-2]);
        }
    }
    let (mut worst, mut count): (Real, usize) = (0.0, 0);
    for nu in &orders {
        let zs = solve_zeros(*nu, &p).map_err(|e| format!("nu={nu}: {e}"))?;
        for z in &zs.zeros {
            worst = worst.max(residual(zs.nu, *z, &p).map_err(|e| e.to_string())?);
            count += 1;
        }
    }
    Ok((worst <= 1e-8, format!("{count} zeros over {} orders, max residual {worst:.1e}", orders.len())))
}

fn lower_interval_exclusivity() -> Outcome {
    let p = prec();
    let e = |e: kzeros::Error| e.to_string();
    let cs = characteristic_system(4.2, &p).map_err(e)?;
    let lower = lower_interval_poly(&cs).map_err(e)?;
    let zs = solve_zeros(4.2, &p).map_err(e)?;
    let min = zs.zeros.iter().map(|z| lower.eval(*z).norm()).fold(Real::INFINITY, Real::min);
    Ok((zs.len() == 4 && lower.degree() == 2 && min > 1e-3, format!("min |lower poly| over {} roots {min:.3e}", zs.len())))
}

fn full_check() -> Outcome {
    let t = Instant::now();
    let out = check::run(Level::Full, &prec());
    let secs = t.elapsed().as_secs_f64();
    let failed: Vec<&str> = out.iter().filter(|o| !o.passed).map(|o| o.name).collect();
    let detail = if failed.is_empty() {
        format!("{} checks in {secs:.2}s", out.len())
    } else {
        format!("failing {} after {secs:.2}s", failed.join(","))
    };
    Ok((failed.is_empty() && secs <= 180.0, detail))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 table reproduction", table_reproduction),
        ("2 special points", special_points),
        ("3 identity suite", identity_suite),
        ("4 moment limits", moment_limit_convergence),
        ("5 factorization identities", factorizations),
        ("6 continuity at special orders", continuity),
        ("7 cross-path oracle", cross_path),
        ("8 residual gate", residual_gate),
        ("9 lower-interval exclusivity", lower_interval_exclusivity),
        ("10 full check within 3 min", full_check),
    ];
    let mut all = true;
    for (name, f) in criteria {
        let (ok, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
        all &= ok;
        println!("{} criterion {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
