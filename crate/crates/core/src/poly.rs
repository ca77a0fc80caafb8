//! Dense polynomials over complex doubles, ascending degree.

use std::ops::Mul;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::linalg::{ONE, ZERO};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexPolynomial {
    #[serde(with = "crate::json::complex_vec")]
    coefficients: Vec<Complex64>,
}

impl ComplexPolynomial {
    /// Trailing exact zeros are dropped; the zero polynomial has no coefficients.
    pub fn new(mut coefficients: Vec<Complex64>) -> Self {
        while coefficients.last() == Some(&ZERO) {
            coefficients.pop();
        }
        ComplexPolynomial { coefficients }
    }

    pub fn one() -> Self {
        ComplexPolynomial::new(vec![ONE])
    }

    pub fn monomial(coeff: Complex64, degree: usize) -> Self {
        let mut cs = vec![ZERO; degree + 1];
        cs[degree] = coeff;
        ComplexPolynomial::new(cs)
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut cs = vec![ONE];
        for &r in roots {
            cs.push(ZERO);
            for k in (1..cs.len()).rev() {
                cs[k] = cs[k - 1] - r * cs[k];
            }
            cs[0] = -r * cs[0];
        }
        ComplexPolynomial::new(cs)
    }

    /// Recovers a polynomial of degree at most `degree` from its values at the
    /// `degree + 1` roots of unity, via one FFT.
    pub fn interpolate_on_unit_circle(degree: usize, f: impl Fn(Complex64) -> Complex64) -> Self {
        let len = degree + 1;
        let mut values: Vec<Complex64> = (0..len)
            .map(|k| f(Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / len as f64)))
            .collect();
        FftPlanner::new().plan_fft_forward(len).process(&mut values);
        let scale = 1.0 / len as f64;
        ComplexPolynomial::new(values.into_iter().map(|v| v * scale).collect())
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// Coefficient of `x^k`, zero past the end.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coefficients.get(k).copied().unwrap_or(ZERO)
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coefficients.iter().rev().fold(ZERO, |acc, &c| acc * x + c)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(ComplexPolynomial::one(), |acc, _| &acc * self)
    }

    pub fn scale(&self, z: Complex64) -> Self {
        ComplexPolynomial::new(self.coefficients.iter().map(|&c| c * z).collect())
    }

    /// Largest coefficientwise absolute difference.
    pub fn max_coeff_diff(&self, other: &ComplexPolynomial) -> f64 {
        let len = self.coefficients.len().max(other.coefficients.len());
        (0..len).map(|k| (self.coeff(k) - other.coeff(k)).norm()).fold(0.0, f64::max)
    }

    /// Quotient by a monic divisor, discarding the remainder.
    pub fn div_monic(&self, divisor: &ComplexPolynomial) -> Self {
        let dd = divisor.degree().expect("nonzero divisor");
        assert_eq!(divisor.coeff(dd), ONE, "divisor must be monic");
        let Some(deg) = self.degree() else { return self.clone() };
        if deg < dd {
            return ComplexPolynomial::new(Vec::new());
        }
        let mut rem = self.coefficients.clone();
        let mut quot = vec![ZERO; deg - dd + 1];
        for k in (0..=deg - dd).rev() {
            let q = rem[k + dd];
            quot[k] = q;
            for j in 0..=dd {
                rem[k + j] -= q * divisor.coeff(j);
            }
        }
        ComplexPolynomial::new(quot)
    }

    /// `x^deg p(1/x)` padded to `degree`: turns `det(x I - U)` into
    /// `det(I - x U)` for a matrix of size `degree`.
    pub fn reversed(&self, degree: usize) -> Self {
        let cs = (0..=degree).map(|k| self.coeff(degree - k)).collect();
        ComplexPolynomial::new(cs)
    }
}

impl Mul for &ComplexPolynomial {
    type Output = ComplexPolynomial;

    fn mul(self, rhs: &ComplexPolynomial) -> ComplexPolynomial {
        if self.coefficients.is_empty() || rhs.coefficients.is_empty() {
            return ComplexPolynomial::new(Vec::new());
        }
        let mut out = vec![ZERO; self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in rhs.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ComplexPolynomial::new(out)
    }
}

/// Power series of `log p(x)` through `x^order` for `p(0) = 1`, from
/// `x p'(x) = p(x) (x log p)'`.
pub fn log_series(p: &ComplexPolynomial, order: usize) -> Vec<Complex64> {
    assert!((p.coeff(0) - ONE).norm() < 1e-12, "log series needs p(0) = 1");
    // q[k] is the coefficient of x^k in log p; k * q[k] = k p[k] - sum_{j<k} j q[j] p[k-j]
    let mut q = vec![ZERO; order + 1];
    for k in 1..=order {
        let mut acc = p.coeff(k) * k as f64;
        for j in 1..k {
            acc -= q[j] * p.coeff(k - j) * j as f64;
        }
        q[k] = acc / k as f64;
    }
    q
}
