use crate::{Error, Real, Result};

/// Orders `ν_n = 2n + 3/2` at which `K_ν` has a real (negative) zero.
pub fn nu_n(n: usize) -> Real {
    2.0 * n as Real + 1.5
}

/// `sin(πx)` with exact zeros at integers and exact `±1` at half-integers.
pub fn sin_pi(x: Real) -> Real {
    let r = x.rem_euclid(2.0);
    if r == 0.0 || r == 1.0 {
        return 0.0;
    }
    if r == 0.5 {
        return 1.0;
    }
    if r == 1.5 {
        return -1.0;
    }
    // reduce to [-1/2, 1/2] before multiplying by π
    let (sign, t) = if r < 1.0 { (1.0, r) } else { (-1.0, r - 1.0) };
    let t = if t > 0.5 { 1.0 - t } else { t };
    sign * (std::f64::consts::PI * t).sin()
}

/// `cos(πx)` with exact zeros at half-integers.
pub fn cos_pi(x: Real) -> Real {
    sin_pi(x + 0.5)
}

/// Snap `nu` onto the nearest half-odd integer when within `tol`.
pub fn snap_half_odd(nu: Real, tol: Real) -> Real {
    let h = (nu - 0.5).round() + 0.5;
    if (nu - h).abs() <= tol {
        h
    } else {
        nu
    }
}

/// Evaluation budget shared by the series and quadrature routines.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Precision {
    pub target_rel_tol: Real,
    pub max_terms: usize,
}

impl Default for Precision {
    fn default() -> Self {
        Precision { target_rel_tol: 1e-12, max_terms: 500 }
    }
}

impl Precision {
    pub fn new(target_rel_tol: Real, max_terms: usize) -> Result<Self> {
        if !(target_rel_tol > 0.0) || !target_rel_tol.is_finite() {
            return Err(Error::InvalidInput(format!("target_rel_tol must be positive, got {target_rel_tol}")));
        }
        if max_terms < 50 {
            return Err(Error::InvalidInput(format!("max_terms must be at least 50, got {max_terms}")));
        }
        Ok(Precision { target_rel_tol, max_terms })
    }

    /// Defaults, with `target_rel_tol` overridden by `KZEROS_PRECISION` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var("KZEROS_PRECISION") {
            Ok(s) => {
                let tol: Real = s
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("KZEROS_PRECISION is not a number: {s:?}")))?;
                Precision::new(tol, Precision::default().max_terms)
            }
            Err(_) => Ok(Precision::default()),
        }
    }
}

/// How an order sits relative to the special orders `ν_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum OrderClass {
    /// `ν = d + 1/2` with `d` even: `K_ν` is elementary with `d` non-real zeros.
    HalfOddInteger { d: usize },
    /// `ν = ν_n = 2n + 3/2`: elementary, with one real zero `-x_n`.
    SpecialNuN { n: usize },
    /// `ν_n < ν < ν_{n+1}`, not half-odd.
    Generic { n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Order {
    pub nu: Real,
    pub class: OrderClass,
}

impl Order {
    pub fn new(nu: Real) -> Result<Self> {
        if !nu.is_finite() {
            return Err(Error::InvalidInput(format!("order must be finite, got {nu}")));
        }
        if nu < 1.5 {
            return Err(Error::Domain(nu));
        }
        let twice = 2.0 * nu;
        let class = if twice.fract() == 0.0 && (twice as u64) % 2 == 1 {
            let d = (nu - 0.5) as usize;
            if d % 2 == 1 {
                OrderClass::SpecialNuN { n: (d - 1) / 2 }
            } else {
                OrderClass::HalfOddInteger { d }
            }
        } else {
            OrderClass::Generic { n: ((nu - 1.5) / 2.0).floor() as usize }
        };
        Ok(Order { nu, class })
    }

    pub fn is_half_odd(&self) -> bool {
        !matches!(self.class, OrderClass::Generic { .. })
    }

    /// The `n` with `ν_n ≤ ν < ν_{n+1}`.
    pub fn interval(&self) -> usize {
        match self.class {
            OrderClass::SpecialNuN { n } | OrderClass::Generic { n } => n,
            OrderClass::HalfOddInteger { d } => (d - 1) / 2,
        }
    }

    /// Number of zeros `N(ν)`.
    pub fn zero_count(&self) -> usize {
        match self.class {
            OrderClass::HalfOddInteger { d } => d,
            OrderClass::SpecialNuN { n } => 2 * n + 1,
            OrderClass::Generic { n } => 2 * n + 2,
        }
    }

    /// Nearest special order `(n, ν - ν_n)`.
    pub fn nearest_special(&self) -> (usize, Real) {
        let n = ((self.nu - 1.5) / 2.0).round().max(0.0) as usize;
        (n, self.nu - nu_n(n))
    }
}
