//! Quadrature rules used by the evaluators and the moment integrals.
//!
//! * [`even_trapezoid`]: trapezoid sums for even integrands on `[0, ∞)` that
//!   already decay double-exponentially (the `cosh` representation of `K_ν`).
//! * [`exp_sinh`]: the double-exponential map `t = exp(π/2·sinh u)` for
//!   smooth half-line integrands, real or complex.
//! * [`gauss_kronrod`]: globally adaptive 7/15-point Gauss–Kronrod over a
//!   breakpoint list, for a vector of integrands sharing one subdivision.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use crate::{Cplx, Error, Real, Result};

/// Values a quadrature rule can accumulate.
pub trait QuadValue: Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<Real, Output = Self> {
    fn magnitude(&self) -> Real;
}

impl QuadValue for Real {
    fn magnitude(&self) -> Real {
        self.abs()
    }
}

impl QuadValue for Cplx {
    fn magnitude(&self) -> Real {
        self.norm()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Estimate<V> {
    pub value: V,
    /// Difference between the last two refinement levels.
    pub err: Real,
    pub evals: usize,
}

const MAX_LEVELS: usize = 9;

/// `∫₀^∞ f(t) dt` for an even, entire-in-a-strip `f` with double-exponential
/// decay, by trapezoid sums with step halving.
pub fn even_trapezoid<V, F>(mut f: F, tol: Real, what: &'static str) -> Result<Estimate<V>>
where
    V: QuadValue,
    F: FnMut(Real) -> V,
{
    let h0 = 0.5;
    let f0 = f(0.0);
    let mut evals = 1;
    // extent: walk outward until the terms have peaked and become negligible
    let mut peak = f0.magnitude();
    let mut sum = f0 * 0.5;
    let mut j = 1usize;
    let mut small = 0;
    loop {
        let v = f(j as Real * h0);
        evals += 1;
        let m = v.magnitude();
        peak = peak.max(m);
        sum = sum + v;
        if m <= 1e-18 * peak {
            small += 1;
            if small >= 2 {
                break;
            }
        } else {
            small = 0;
        }
        j += 1;
        if j > 400 {
            return Err(Error::NonConvergence { what });
        }
    }
    let n0 = j;
    let mut h = h0;
    let mut prev = sum * h;
    for level in 1..MAX_LEVELS {
        let nodes = n0 << level;
        let mut odd = V::default();
        let mut i = 1;
        while i < nodes {
            odd = odd + f(i as Real * h * 0.5);
            evals += 1;
            i += 2;
        }
        sum = sum + odd;
        h *= 0.5;
        let cur = sum * h;
        let err = (cur - prev).magnitude();
        if err <= tol * cur.magnitude() || cur.magnitude() == 0.0 {
            return Ok(Estimate { value: cur, err, evals });
        }
        prev = cur;
    }
    Err(Error::QuadratureFailure { what, err: (prev.magnitude() * tol).max(Real::MIN_POSITIVE) })
}

const U_MAX: Real = 6.5;

/// `∫₀^∞ f(t) dt` via `t = exp(π/2·sinh u)`.
///
/// The closure receives `ln t` and must return `t·f(t)`; working in `ln t`
/// keeps the tails free of overflow and underflow.
pub fn exp_sinh<V, F>(mut g: F, tol: Real, what: &'static str) -> Result<Estimate<V>>
where
    V: QuadValue,
    F: FnMut(Real) -> V,
{
    use std::f64::consts::FRAC_PI_2;
    let mut term = |u: Real| -> V {
        let lt = FRAC_PI_2 * u.sinh();
        g(lt) * (FRAC_PI_2 * u.cosh())
    };

    let h0 = 0.5;
    let t0 = term(0.0);
    let mut evals = 1;
    let mut peak = t0.magnitude();
    let mut sum = t0;
    let mut hi = 0usize;
    let mut lo = 0usize;
    for dir in [1i32, -1] {
        let mut j = 1usize;
        let mut small = 0;
        loop {
            let u = dir as Real * j as Real * h0;
            if u.abs() > U_MAX {
                break;
            }
            let v = term(u);
            evals += 1;
            let m = v.magnitude();
            if !m.is_finite() {
                return Err(Error::NonConvergence { what });
            }
            peak = peak.max(m);
            sum = sum + v;
            if m <= 1e-18 * peak {
                small += 1;
                if small >= 2 {
                    break;
                }
            } else {
                small = 0;
            }
            j += 1;
        }
        if dir > 0 {
            hi = j;
        } else {
            lo = j;
        }
    }
    let mut h = h0;
    let mut prev = sum * h;
    for level in 1..MAX_LEVELS {
        let step = h * 0.5;
        let mut odd = V::default();
        let (a, b) = ((lo << level) as i64, (hi << level) as i64);
        let mut i = -a + 1;
        while i < b {
            odd = odd + term(i as Real * step);
            evals += 1;
            i += 2;
        }
        sum = sum + odd;
        h = step;
        let cur = sum * h;
        let err = (cur - prev).magnitude();
        if err <= tol * cur.magnitude() || cur.magnitude() == 0.0 {
            return Ok(Estimate { value: cur, err, evals });
        }
        prev = cur;
    }
    Err(Error::QuadratureFailure { what, err: (prev.magnitude() * tol).max(Real::MIN_POSITIVE) })
}

// Gauss–Kronrod 7/15 nodes and weights on [-1, 1].
const XGK: [Real; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
const WGK: [Real; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [Real; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
pub struct GkConfig {
    pub rel_tol: Real,
    pub max_intervals: usize,
    /// Bisect every initial panel this many times before adapting.
    pub presplit: u32,
}

impl Default for GkConfig {
    fn default() -> Self {
        GkConfig { rel_tol: 1e-11, max_intervals: 4000, presplit: 0 }
    }
}

#[derive(Debug, Clone)]
pub struct VecEstimate {
    pub values: Vec<Real>,
    pub errs: Vec<Real>,
    pub intervals: usize,
}

struct Panel {
    a: Real,
    b: Real,
    val: Vec<Real>,
    err: Vec<Real>,
    score: Real,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.score.total_cmp(&other.score).then(other.a.total_cmp(&self.a))
    }
}

fn gk15<F>(f: &mut F, a: Real, b: Real, dim: usize, buf: &mut [Real]) -> (Vec<Real>, Vec<Real>)
where
    F: FnMut(Real, &mut [Real]),
{
    let c = 0.5 * (a + b);
    let hw = 0.5 * (b - a);
    let mut kr = vec![0.0; dim];
    let mut gs = vec![0.0; dim];
    f(c, buf);
    for d in 0..dim {
        kr[d] += WGK[7] * buf[d];
        gs[d] += WG[3] * buf[d];
    }
    for j in 0..7 {
        let dx = hw * XGK[j];
        for x in [c - dx, c + dx] {
            f(x, buf);
            for d in 0..dim {
                kr[d] += WGK[j] * buf[d];
                if j % 2 == 1 {
                    gs[d] += WG[j / 2] * buf[d];
                }
            }
        }
    }
    let val: Vec<Real> = kr.iter().map(|k| k * hw).collect();
    let err: Vec<Real> = kr.iter().zip(&gs).map(|(k, g)| ((k - g) * hw).abs()).collect();
    (val, err)
}

/// Adaptive Gauss–Kronrod for `dim` integrands over `[breaks[0], breaks[last]]`.
///
/// `f(x, out)` writes the `dim` integrand values at `x`. Every component must
/// reach `Σ err ≤ rel_tol·|Σ value|`, or be identically negligible.
pub fn gauss_kronrod<F>(mut f: F, breaks: &[Real], dim: usize, cfg: GkConfig, what: &'static str) -> Result<VecEstimate>
where
    F: FnMut(Real, &mut [Real]),
{
    let mut buf = vec![0.0; dim];
    let mut panels: Vec<(Real, Real, Vec<Real>, Vec<Real>)> = Vec::new();
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        if !(b > a) {
            continue;
        }
        let pieces = 1usize << cfg.presplit;
        for p in 0..pieces {
            let pa = a + (b - a) * p as Real / pieces as Real;
            let pb = if p + 1 == pieces { b } else { a + (b - a) * (p + 1) as Real / pieces as Real };
            let (v, e) = gk15(&mut f, pa, pb, dim, &mut buf);
            panels.push((pa, pb, v, e));
        }
    }
    if panels.is_empty() {
        return Err(Error::InvalidInput("empty integration range".into()));
    }
    let total = |panels: &mut dyn Iterator<Item = (&Vec<Real>, &Vec<Real>)>| {
        let mut v = vec![0.0; dim];
        let mut e = vec![0.0; dim];
        for (pv, pe) in panels {
            for d in 0..dim {
                v[d] += pv[d];
                e[d] += pe[d];
            }
        }
        (v, e)
    };
    let (v0, _) = total(&mut panels.iter().map(|p| (&p.2, &p.3)));
    let scale: Vec<Real> = v0.iter().map(|v| v.abs().max(Real::MIN_POSITIVE)).collect();
    let score = |err: &[Real]| err.iter().zip(&scale).map(|(e, s)| e / s).fold(0.0, Real::max);

    let mut heap: BinaryHeap<Panel> = panels
        .into_iter()
        .map(|(a, b, val, err)| {
            let s = score(&err);
            Panel { a, b, val, err, score: s }
        })
        .collect();

    loop {
        let (vals, errs) = total(&mut heap.iter().map(|p| (&p.val, &p.err)));
        let done = vals.iter().zip(&errs).all(|(v, e)| *e <= cfg.rel_tol * v.abs() || *e == 0.0);
        if done || heap.len() >= cfg.max_intervals {
            // final sums in a fixed left-to-right order
            let mut ordered: Vec<Panel> = heap.into_vec();
            ordered.sort_by(|p, q| p.a.total_cmp(&q.a));
            let intervals = ordered.len();
            let (values, errs) = total(&mut ordered.iter().map(|p| (&p.val, &p.err)));
            if !done {
                let worst = values
                    .iter()
                    .zip(&errs)
                    .map(|(v, e)| e / v.abs().max(Real::MIN_POSITIVE))
                    .fold(0.0, Real::max);
                return Err(Error::QuadratureFailure { what, err: worst });
            }
            return Ok(VecEstimate { values, errs, intervals });
        }
        let worst = heap.pop().expect("non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        for (a, b) in [(worst.a, mid), (mid, worst.b)] {
            let (val, err) = gk15(&mut f, a, b, dim, &mut buf);
            let s = score(&err);
            heap.push(Panel { a, b, val, err, score: s });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn trapezoid_gaussian() {
        // ∫₀^∞ e^{-cosh t} dt = K_0(1)
        let est = even_trapezoid(|t: Real| (-t.cosh()).exp(), 1e-14, "test").unwrap();
        assert!((est.value - 0.421_024_438_240_708_35).abs() < 1e-15);
    }

    #[test]
    fn exp_sinh_gamma() {
        // ∫₀^∞ t^{3/2} e^{-t} dt = Γ(5/2) = 3√π/4
        let est = exp_sinh(|lt: Real| (2.5 * lt - lt.exp()).exp(), 1e-14, "test").unwrap();
        assert!((est.value - 0.75 * PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn exp_sinh_endpoint_singularity() {
        // ∫₀^∞ t^{-1/2} e^{-t} dt = √π
        let est = exp_sinh(|lt: Real| (0.5 * lt - lt.exp()).exp(), 1e-14, "test").unwrap();
        assert!((est.value - PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn exp_sinh_complex() {
        // ∫₀^∞ e^{-(1+i)t} dt = 1/(1+i)
        let z = Cplx::new(1.0, 1.0);
        let est = exp_sinh(|lt: Real| (Cplx::from(lt) - z * lt.exp()).exp(), 1e-14, "test").unwrap();
        assert!((est.value - Cplx::new(0.5, -0.5)).norm() < 1e-14);
    }

    #[test]
    fn gk_vector_moments() {
        // ∫₀^40 y^k e^{-y} dy ≈ k! for k = 0..3
        let est = gauss_kronrod(
            |y, out: &mut [Real]| {
                let e = (-y).exp();
                for (k, o) in out.iter_mut().enumerate() {
                    *o = y.powi(k as i32) * e;
                }
            },
            &[0.0, 5.0, 40.0],
            4,
            GkConfig::default(),
            "test",
        )
        .unwrap();
        for (k, fact) in [1.0, 1.0, 2.0, 6.0].iter().enumerate() {
            assert!((est.values[k] - fact).abs() < 1e-10 * fact, "k = {k}");
        }
    }

    #[test]
    fn gk_resolves_narrow_peak_with_breakpoint() {
        let w = 1e-4;
        let est = gauss_kronrod(
            |x, out: &mut [Real]| out[0] = w / ((x - 1.3).powi(2) + w * w),
            &[0.0, 1.3, 3.0],
            1,
            GkConfig::default(),
            "test",
        )
        .unwrap();
        let exact = (1.7 / w).atan() + (1.3 / w).atan();
        assert!((est.values[0] - exact).abs() < 1e-9 * exact);
    }
}
