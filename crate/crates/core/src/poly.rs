use nalgebra::DMatrix;

use crate::{Cplx, Error, Real, Result};

/// Real polynomial, coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RealPolynomial {
    coeffs: Vec<Real>,
}

impl RealPolynomial {
    /// Fails when the coefficient list is empty or the leading coefficient is zero.
    pub fn new(coeffs: Vec<Real>) -> Result<Self> {
        match coeffs.last() {
            Some(&c) if c != 0.0 && c.is_finite() => Ok(RealPolynomial { coeffs }),
            _ => Err(Error::InvalidInput("polynomial needs a finite, non-zero leading coefficient".into())),
        }
    }

    /// From coefficients in descending degree.
    pub fn from_descending(desc: &[Real]) -> Result<Self> {
        Self::new(desc.iter().rev().copied().collect())
    }

    pub fn coeffs(&self) -> &[Real] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, z: Cplx) -> Cplx {
        self.coeffs.iter().rev().fold(Cplx::default(), |acc, &c| acc * z + c)
    }

    pub fn eval_real(&self, x: Real) -> Real {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// `Σ |c_k| |z|^k`, the natural scale for a residual at `z`.
    pub fn abs_scale(&self, z: Cplx) -> Real {
        let r = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * r + c.abs())
    }

    pub fn derivative(&self) -> Option<RealPolynomial> {
        if self.degree() == 0 {
            return None;
        }
        let d = self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| c * k as Real).collect();
        Some(RealPolynomial { coeffs: d })
    }

    pub fn mul(&self, other: &RealPolynomial) -> RealPolynomial {
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RealPolynomial { coeffs: out }
    }

    /// All complex roots, from the eigenvalues of the companion matrix,
    /// each refined by a few Newton steps on the polynomial.
    pub fn roots(&self) -> Result<Vec<Cplx>> {
        let n = self.degree();
        if n == 0 {
            return Ok(Vec::new());
        }
        let lead = self.coeffs[n];
        if n == 1 {
            return Ok(vec![Cplx::from(-self.coeffs[0] / lead)]);
        }
        let mut m = DMatrix::<Real>::zeros(n, n);
        for i in 1..n {
            m[(i, i - 1)] = 1.0;
        }
        for i in 0..n {
            m[(i, n - 1)] = -self.coeffs[i] / lead;
        }
        let eig = m.complex_eigenvalues();
        let dp = self.derivative().expect("degree >= 2");
        let roots = eig
            .iter()
            .map(|&z0| {
                let mut z = z0;
                for _ in 0..3 {
                    let d = dp.eval(z);
                    if d.norm() == 0.0 {
                        break;
                    }
                    let step = self.eval(z) / d;
                    // keep refinement local; clustered roots are left as found
                    if !(step.norm() <= 1e-3 * (1.0 + z.norm())) {
                        break;
                    }
                    z -= step;
                }
                z
            })
            .collect::<Vec<_>>();
        if roots.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonConvergence { what: "companion eigenvalues" });
        }
        Ok(roots)
    }
}
