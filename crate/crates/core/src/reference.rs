//! Published zero table of `K_ν` for `ν = 1.5, 1.6, …, 9.5`.
//!
//! Each row lists one representative per conjugate pair (`Im > 0`), in the
//! published column order: descending imaginary part, the real zero (if any)
//! last. Entries carry six significant digits.

use crate::{Cplx, Real};

/// `(ν, [(re, im)])` with `im ≥ 0`.
#[rustfmt::skip]
pub const TABLE: &[(Real, &[(Real, Real)])] = &[
    (1.5, &[(-1.0, 0.0)]),
    (1.6, &[(-1.06356, 0.0852232)]),
    (1.7, &[(-1.12292, 0.170806)]),
    (1.8, &[(-1.1787, 0.256725)]),
    (1.9, &[(-1.23139, 0.342957)]),
    (2.0, &[(-1.28137, 0.429485)]),
    (2.1, &[(-1.32896, 0.516291)]),
    (2.2, &[(-1.37442, 0.603361)]),
    (2.3, &[(-1.41795, 0.690682)]),
    (2.4, &[(-1.45976, 0.77824)]),
    (2.5, &[(-1.5, 0.866025)]),
    (2.6, &[(-1.5388, 0.954027)]),
    (2.7, &[(-1.57628, 1.04223)]),
    (2.8, &[(-1.61255, 1.13064)]),
    (2.9, &[(-1.64769, 1.21924)]),
    (3.0, &[(-1.68179, 1.30801)]),
    (3.1, &[(-1.71492, 1.39696)]),
    (3.2, &[(-1.74714, 1.48608)]),
    (3.3, &[(-1.77851, 1.57536)]),
    (3.4, &[(-1.80908, 1.6648)]),
    (3.5, &[(-1.83891, 1.75438), (-2.32219, 0.0)]),
    (3.6, &[(-1.86802, 1.84411), (-2.3873, 0.0864217)]),
    (3.7, &[(-1.89647, 1.93398), (-2.45036, 0.172895)]),
    (3.8, &[(-1.92429, 2.02398), (-2.51152, 0.259427)]),
    (3.9, &[(-1.95151, 2.11411), (-2.57092, 0.346026)]),
    (4.0, &[(-1.97816, 2.20437), (-2.62867, 0.432697)]),
    (4.1, &[(-2.00427, 2.29475), (-2.68489, 0.519443)]),
    (4.2, &[(-2.02987, 2.38525), (-2.73967, 0.606267)]),
    (4.3, &[(-2.05497, 2.47586), (-2.79309, 0.693173)]),
    (4.4, &[(-2.0796, 2.56659), (-2.84525, 0.780161)]),
    (4.5, &[(-2.10379, 2.65742), (-2.89621, 0.867234)]),
    (4.6, &[(-2.12755, 2.74835), (-2.94604, 0.954392)]),
    (4.7, &[(-2.15089, 2.83939), (-2.99479, 1.04164)]),
    (4.8, &[(-2.17384, 2.93053), (-3.04252, 1.12897)]),
    (4.9, &[(-2.19642, 3.02176), (-3.08929, 1.21638)]),
    (5.0, &[(-2.21863, 3.11308), (-3.13513, 1.30388)]),
    (5.1, &[(-2.24049, 3.2045), (-3.1801, 1.39147)]),
    (5.2, &[(-2.26201, 3.296), (-3.22423, 1.47914)]),
    (5.3, &[(-2.28321, 3.38759), (-3.26756, 1.5669)]),
    (5.4, &[(-2.30409, 3.47927), (-3.31013, 1.65474)]),
    (5.5, &[(-2.32467, 3.57102), (-3.35196, 1.74266), (-3.64674, 0.0)]),
    (5.6, &[(-2.34497, 3.66286), (-3.39308, 1.83067), (-3.71228, 0.0866256)]),
    (5.7, &[(-2.36498, 3.75477), (-3.43354, 1.91875), (-3.77647, 0.173268)]),
    (5.8, &[(-2.38471, 3.84676), (-3.47334, 2.00692), (-3.83937, 0.259933)]),
    (5.9, &[(-2.40419, 3.93883), (-3.51252, 2.09517), (-3.90105, 0.346624)]),
    (6.0, &[(-2.4234, 4.03096), (-3.5511, 2.1835), (-3.96156, 0.433345)]),
    (6.1, &[(-2.44238, 4.12317), (-3.5891, 2.2719), (-4.02096, 0.520101)]),
    (6.2, &[(-2.46111, 4.21544), (-3.62654, 2.36038), (-4.07929, 0.606892)]),
    (6.3, &[(-2.47961, 4.30779), (-3.66344, 2.44894), (-4.13661, 0.693723)]),
    (6.4, &[(-2.49788, 4.4002), (-3.69983, 2.53757), (-4.19295, 0.780595)]),
    (6.5, &[(-2.51593, 4.49267), (-3.73571, 2.62627), (-4.24836, 0.86751)]),
    (6.6, &[(-2.53377, 4.58521), (-3.7711, 2.71505), (-4.30287, 0.954469)]),
    (6.7, &[(-2.55141, 4.67781), (-3.80603, 2.8039), (-4.35652, 1.04147)]),
    (6.8, &[(-2.56884, 4.77047), (-3.8405, 2.89282), (-4.40935, 1.12853)]),
    (6.9, &[(-2.58608, 4.86319), (-3.87453, 2.98181), (-4.46137, 1.21563)]),
    (7.0, &[(-2.60313, 4.95597), (-3.90813, 3.07087), (-4.51263, 1.30278)]),
    (7.1, &[(-2.61999, 5.0488), (-3.94131, 3.16), (-4.56314, 1.38998)]),
    (7.2, &[(-2.63667, 5.1417), (-3.97409, 3.24919), (-4.61294, 1.47723)]),
    (7.3, &[(-2.65318, 5.23464), (-4.00649, 3.33846), (-4.66205, 1.56453)]),
    (7.4, &[(-2.66951, 5.32764), (-4.0385, 3.42778), (-4.71049, 1.65188)]),
    (7.5, &[(-2.68568, 5.42069), (-4.07014, 3.51717), (-4.75829, 1.73929), (-4.97179, 0.0)]),
    (7.6, &[(-2.70168, 5.5138), (-4.10142, 3.60663), (-4.80546, 1.82674), (-5.03753, 0.0866936)]),
    (7.7, &[(-2.71753, 5.60695), (-4.13236, 3.69615), (-4.85203, 1.91425), (-5.10226, 0.173395)]),
    (7.8, &[(-2.73322, 5.70016), (-4.16295, 3.78573), (-4.89801, 2.00181), (-5.16602, 0.260108)]),
    (7.9, &[(-2.74875, 5.79341), (-4.19321, 3.87537), (-4.94342, 2.08942), (-5.22884, 0.346835)]),
    (8.0, &[(-2.76414, 5.88671), (-4.22315, 3.96507), (-4.98828, 2.17708), (-5.29076, 0.433578)]),
    (8.1, &[(-2.77939, 5.98006), (-4.25278, 4.05483), (-5.0326, 2.2648), (-5.35181, 0.52034)]),
    (8.2, &[(-2.79449, 6.07346), (-4.2821, 4.14464), (-5.07641, 2.35256), (-5.41202, 0.607123)]),
    (8.3, &[(-2.80946, 6.1669), (-4.31112, 4.23452), (-5.1197, 2.44038), (-5.47142, 0.693928)]),
    (8.4, &[(-2.82429, 6.26038), (-4.33985, 4.32445), (-5.16251, 2.52825), (-5.53003, 0.780758)]),
    (8.5, &[(-2.83898, 6.35391), (-4.36829, 4.41444), (-5.20484, 2.61618), (-5.58789, 0.867614)]),
    (8.6, &[(-2.85355, 6.44748), (-4.39646, 4.50449), (-5.2467, 2.70415), (-5.645, 0.954498)]),
    (8.7, &[(-2.86799, 6.5411), (-4.42435, 4.59459), (-5.28812, 2.79217), (-5.70141, 1.04141)]),
    (8.8, &[(-2.88231, 6.63475), (-4.45198, 4.68474), (-5.32909, 2.88025), (-5.75712, 1.12835)]),
    (8.9, &[(-2.89651, 6.72845), (-4.47935, 4.77495), (-5.36963, 2.96837), (-5.81216, 1.21532)]),
    (9.0, &[(-2.91058, 6.82219), (-4.50647, 4.86521), (-5.40975, 3.05654), (-5.86655, 1.30233)]),
    (9.1, &[(-2.92454, 6.91597), (-4.53334, 4.95552), (-5.44946, 3.14477), (-5.92031, 1.38936)]),
    (9.2, &[(-2.93839, 7.00978), (-4.55996, 5.04588), (-5.48877, 3.23304), (-5.97345, 1.47643)]),
    (9.3, &[(-2.95212, 7.10364), (-4.58635, 5.1363), (-5.5277, 3.32137), (-6.026, 1.56354)]),
    (9.4, &[(-2.96574, 7.19753), (-4.61251, 5.22676), (-5.56625, 3.40974), (-6.07797, 1.65068)]),
    (9.5, &[(-2.97926, 7.29146), (-4.63844, 5.31727), (-5.60442, 3.49816), (-6.12937, 1.73785), (-6.29702, 0.0)]),
];

/// Published zeros at `ν` (both members of each pair), if `ν` is a row.
pub fn row(nu: Real) -> Option<Vec<Cplx>> {
    let (_, zs) = TABLE.iter().find(|(v, _)| (v - nu).abs() < 1e-9)?;
    let mut out = Vec::new();
    for &(re, im) in zs.iter() {
        out.push(Cplx::new(re, im));
        if im != 0.0 {
            out.push(Cplx::new(re, -im));
        }
    }
    Some(out)
}

/// Largest componentwise error between published and computed zeros, each
/// published zero being paired with its nearest computed zero. `None` when
/// the counts differ.
pub fn max_abs_error(published: &[Cplx], computed: &[Cplx]) -> Option<Real> {
    if published.len() != computed.len() {
        return None;
    }
    let mut worst: Real = 0.0;
    for p in published {
        let best = computed
            .iter()
            .map(|c| (c.re - p.re).abs().max((c.im - p.im).abs()))
            .fold(Real::INFINITY, Real::min);
        worst = worst.max(best);
    }
    Some(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeros::count_zeros;

    #[test]
    fn rows_cover_the_grid() {
        assert_eq!(TABLE.len(), 81);
        for (i, (nu, _)) in TABLE.iter().enumerate() {
            assert!((nu - (1.5 + 0.1 * i as Real)).abs() < 1e-9);
        }
    }

    #[test]
    fn row_sizes_match_counts() {
        for (nu, _) in TABLE {
            assert_eq!(row(*nu).unwrap().len(), count_zeros(*nu).unwrap(), "nu={nu}");
        }
        assert!(row(1.55).is_none());
    }

    #[test]
    fn error_pairs_nearest() {
        let p = row(2.5).unwrap();
        let c = vec![Cplx::new(-1.5, -0.8660254), Cplx::new(-1.5, 0.8660254)];
        assert!(max_abs_error(&p, &c).unwrap() < 1e-6);
        assert!(max_abs_error(&p, &c[..1]).is_none());
    }
}
