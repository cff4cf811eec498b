//! Zero trajectories over a grid of orders.
//!
//! Zero sets are computed per grid point (in parallel), then matched between
//! neighbours by optimal assignment on the closed upper half-plane. A
//! conjugate zero carries its partner's track label.

use rayon::prelude::*;

use crate::assign::{assign, second_best, total};
use crate::special::special_point;
use crate::zeros::{resolve_order, solve_zeros};
use crate::{Cplx, Error, Order, OrderClass, Precision, Real, Result, ZeroSet};

/// Two assignments closer than this in total displacement are ambiguous.
pub const AMBIGUITY_TOL: Real = 1e-9;

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SweepPoint {
    pub nu: Real,
    pub zeros: ZeroSet,
    /// Track label of each zero in `zeros.zeros`.
    pub track_ids: Vec<usize>,
    /// `Some("merge")` on the real zero at a special order.
    pub notes: Vec<Option<&'static str>>,
}

impl SweepPoint {
    /// Number of distinct tracks present at this point.
    pub fn track_count(&self) -> usize {
        let mut ids = self.track_ids.clone();
        ids.sort_unstable();
        ids.dedup();
        ids.len()
    }
}

/// Behaviour of the tracks around a special order `ν_n` on the grid.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Crossing {
    pub n: usize,
    pub nu_n: Real,
    pub x_n: Real,
    /// Every track arriving from below continues into a non-real zero of `K_{ν_n}`.
    pub from_below: Option<bool>,
    /// The real zero's track continues into the conjugate pair closest to `-x_n`.
    pub from_above: Option<bool>,
    /// Distance from that pair to `-x_n` at the next grid point.
    pub merge_distance: Option<Real>,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SweepResult {
    pub grid: Vec<Real>,
    pub points: Vec<SweepPoint>,
    pub crossings: Vec<Crossing>,
    /// Largest displacement of a matched zero between neighbouring points.
    pub max_step_displacement: Real,
}

impl SweepResult {
    /// Track count at each grid point.
    pub fn track_counts(&self) -> Vec<usize> {
        self.points.iter().map(SweepPoint::track_count).collect()
    }
}

/// Grid `from, from+step, …, ≤ to` with values rounded to 12 decimals and
/// snapped onto half-odd orders (within `1e-12`) and special orders (within
/// the moment guard band).
pub fn grid(from: Real, to: Real, step: Real) -> Result<Vec<Real>> {
    if !(step > 0.0) || !from.is_finite() || !to.is_finite() || to < from {
        return Err(Error::InvalidInput(format!("empty or invalid range {from}..{to} step {step}")));
    }
    Order::new(from)?;
    let count = ((to - from) / step + 1e-9).floor() as usize;
    if count > 1_000_000 {
        return Err(Error::InvalidInput("grid has more than a million points".into()));
    }
    (0..=count)
        .map(|i| {
            let v: Real = format!("{:.12}", from + i as Real * step).parse().expect("formatted float");
            Ok(resolve_order(v)?.0.nu)
        })
        .collect()
}

fn upper(zs: &ZeroSet) -> Vec<(usize, Cplx)> {
    zs.upper().collect()
}

/// Sweep over `from..=to` in steps of `step`.
pub fn sweep(from: Real, to: Real, step: Real, prec: &Precision) -> Result<SweepResult> {
    if !(from < to) {
        return Err(Error::InvalidInput(format!("empty range {from}..{to}")));
    }
    sweep_grid(&grid(from, to, step)?, prec)
}

/// Sweep over an explicit increasing grid.
pub fn sweep_grid(grid: &[Real], prec: &Precision) -> Result<SweepResult> {
    if grid.is_empty() || grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidInput("sweep grid must be non-empty and strictly increasing".into()));
    }
    let sets = grid.par_iter().map(|&nu| solve_zeros(nu, prec)).collect::<Result<Vec<_>>>()?;

    // labels for the closed upper half-plane zeros of each point
    let mut labels: Vec<Vec<usize>> = Vec::with_capacity(sets.len());
    let mut next_id = 0;
    let mut max_step = 0.0f64;
    for (i, zs) in sets.iter().enumerate() {
        let cur = upper(zs);
        if i == 0 {
            labels.push((0..cur.len()).collect());
            next_id = cur.len();
            continue;
        }
        let prev = upper(&sets[i - 1]);
        let cost: Vec<Vec<Real>> = prev.iter().map(|(_, a)| cur.iter().map(|(_, b)| (a - b).norm()).collect()).collect();
        let best = assign(&cost);
        let best_total = total(&cost, &best);
        if let Some(second) = second_best(&cost, &best) {
            if second - best_total < AMBIGUITY_TOL {
                return Err(Error::TrackingAmbiguity { nu: zs.nu });
            }
        }
        let mut lab: Vec<Option<usize>> = vec![None; cur.len()];
        for (pi, m) in best.iter().enumerate() {
            if let Some(ci) = *m {
                lab[ci] = Some(labels[i - 1][pi]);
                max_step = max_step.max(cost[pi][ci]);
            }
        }
        labels.push(
            lab.into_iter()
                .map(|l| {
                    l.unwrap_or_else(|| {
                        next_id += 1;
                        next_id - 1
                    })
                })
                .collect(),
        );
    }

    let points: Vec<SweepPoint> = sets
        .into_iter()
        .zip(&labels)
        .map(|(zs, lab)| {
            let up = upper(&zs);
            let mut track_ids = vec![0; zs.len()];
            let mut notes = vec![None; zs.len()];
            for ((idx, z), id) in up.iter().zip(lab) {
                track_ids[*idx] = *id;
                if let Some(j) = zs.pair_index[*idx] {
                    track_ids[j] = *id;
                } else if z.im == 0.0 {
                    notes[*idx] = Some("merge");
                }
            }
            SweepPoint { nu: zs.nu, zeros: zs, track_ids, notes }
        })
        .collect();

    let crossings = crossings(&points)?;
    Ok(SweepResult { grid: grid.to_vec(), points, crossings, max_step_displacement: max_step })
}

fn crossings(points: &[SweepPoint]) -> Result<Vec<Crossing>> {
    let mut out = Vec::new();
    for (i, pt) in points.iter().enumerate() {
        let OrderClass::SpecialNuN { n } = Order::new(pt.nu)?.class else { continue };
        let sp = special_point(n)?;
        let real_idx = pt.zeros.zeros.iter().position(|z| z.im == 0.0);
        let real_track = real_idx.map(|r| pt.track_ids[r]);

        let from_below = (i > 0).then(|| {
            let prev = &points[i - 1];
            // the real zero starts a new track; every arriving track lands on a non-real zero
            let arriving: Vec<usize> = prev.track_ids.clone();
            real_track.is_some_and(|t| !arriving.contains(&t))
                && arriving.iter().all(|t| {
                    pt.track_ids.iter().zip(&pt.zeros.zeros).any(|(id, z)| id == t && z.im != 0.0)
                })
        });

        let (from_above, merge_distance) = match (points.get(i + 1), real_track) {
            (Some(next), Some(t)) => {
                let target = Cplx::from(-sp.x_n);
                let dist = |z: &Cplx| (z - target).norm();
                let on_track: Vec<&Cplx> =
                    next.zeros.zeros.iter().zip(&next.track_ids).filter(|(_, id)| **id == t).map(|(z, _)| z).collect();
                let closest = next.zeros.zeros.iter().map(dist).fold(Real::INFINITY, Real::min);
                let ok = on_track.len() == 2
                    && on_track[0].im == -on_track[1].im
                    && on_track[0].im != 0.0
                    && dist(on_track[0]) == closest;
                (Some(ok), on_track.first().map(|z| dist(z)))
            }
            _ => (None, None),
        };
        out.push(Crossing { n, nu_n: pt.nu, x_n: sp.x_n, from_below, from_above, merge_distance });
    }
    Ok(out)
}
