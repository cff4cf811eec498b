//! Minimum-cost assignment (Hungarian method, potentials form).

use crate::Real;

/// Optimal assignment for a rectangular cost matrix `cost[i][j]`.
///
/// Returns, for every row, the matched column, or `None` when there are more
/// rows than columns and the row is left over. Exactly `min(rows, cols)`
/// pairs are matched, with minimal total cost.
pub(crate) fn assign(cost: &[Vec<Real>]) -> Vec<Option<usize>> {
    let rows = cost.len();
    let cols = cost.first().map_or(0, Vec::len);
    let n = rows.max(cols);
    if n == 0 {
        return Vec::new();
    }
    // pad to square with zero-cost dummies
    let c = |i: usize, j: usize| if i < rows && j < cols { cost[i][j] } else { 0.0 };

    let inf = Real::INFINITY;
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = c(i0 - 1, j - 1) - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut out = vec![None; rows];
    for j in 1..=n {
        let i = p[j];
        if i >= 1 && i <= rows && j <= cols {
            out[i - 1] = Some(j - 1);
        }
    }
    out
}

/// Total cost of an assignment.
pub(crate) fn total(cost: &[Vec<Real>], a: &[Option<usize>]) -> Real {
    a.iter().enumerate().filter_map(|(i, j)| j.map(|j| cost[i][j])).sum()
}

/// Cost of the best assignment that differs from `best` in at least one
/// matched edge, or `None` when no alternative exists.
pub(crate) fn second_best(cost: &[Vec<Real>], best: &[Option<usize>]) -> Option<Real> {
    let big = 1e6 * (1.0 + cost.iter().flatten().fold(0.0, |m: Real, c| m.max(c.abs())));
    let mut second: Option<Real> = None;
    for (i, j) in best.iter().enumerate() {
        let Some(j) = *j else { continue };
        let mut c2 = cost.to_vec();
        c2[i][j] = big;
        let a = assign(&c2);
        if a[i] == Some(j) {
            continue;
        }
        let t = total(&c2, &a);
        second = Some(second.map_or(t, |s: Real| s.min(t)));
    }
    second
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(cost: &[Vec<Real>]) -> Real {
        // square only
        fn rec(cost: &[Vec<Real>], i: usize, used: &mut Vec<bool>) -> Real {
            if i == cost.len() {
                return 0.0;
            }
            let mut best = Real::INFINITY;
            for j in 0..used.len() {
                if !used[j] {
                    used[j] = true;
                    best = best.min(cost[i][j] + rec(cost, i + 1, used));
                    used[j] = false;
                }
            }
            best
        }
        rec(cost, 0, &mut vec![false; cost.len()])
    }

    #[test]
    fn square_matches_brute_force() {
        let mut seed = 7u64;
        let mut rnd = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 11) as Real / (1u64 << 53) as Real
        };
        for n in 1..=6 {
            let cost: Vec<Vec<Real>> = (0..n).map(|_| (0..n).map(|_| rnd()).collect()).collect();
            let a = assign(&cost);
            assert!((total(&cost, &a) - brute(&cost)).abs() < 1e-12);
        }
    }

    #[test]
    fn rectangular() {
        // two rows, three columns: column 1 left free
        let cost = vec![vec![1.0, 5.0, 9.0], vec![9.0, 5.0, 1.0]];
        assert_eq!(assign(&cost), vec![Some(0), Some(2)]);
        // three rows, two columns: middle row unmatched
        let cost = vec![vec![0.0, 4.0], vec![2.0, 2.0], vec![4.0, 0.0]];
        assert_eq!(assign(&cost), vec![Some(0), None, Some(1)]);
    }

    #[test]
    fn ties_are_detected() {
        let cost = vec![vec![1.0, 1.0], vec![1.0, 1.0]];
        let a = assign(&cost);
        assert_eq!(second_best(&cost, &a), Some(2.0));
        let cost = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
        let a = assign(&cost);
        assert_eq!(second_best(&cost, &a), Some(2.0));
    }
}
