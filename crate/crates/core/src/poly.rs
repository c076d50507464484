//! Real polynomials with constant-first coefficient storage.

use crate::error::Error;
use crate::Result;

/// A polynomial over the reals, `coeffs[i]` multiplying `x^i`.
///
/// Trailing zero coefficients are trimmed at construction so `degree` is
/// well-defined; the zero polynomial has an empty coefficient list.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::invalid("polynomial coefficients must be finite"));
        }
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Ok(Polynomial { coeffs })
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    /// Monic polynomial with the given roots, `prod_i (x - r_i)`, expanded by
    /// repeated multiplication in the order the roots are listed.
    pub fn from_roots(roots: &[f64]) -> Result<Self> {
        let mut coeffs = vec![0.0; roots.len() + 1];
        coeffs[0] = 1.0;
        for (deg, &r) in roots.iter().enumerate() {
            coeffs[deg + 1] = coeffs[deg];
            for i in (1..=deg).rev() {
                coeffs[i] = coeffs[i - 1] - r * coeffs[i];
            }
            coeffs[0] *= -r;
        }
        Polynomial::new(coeffs)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of `x^i`; zero beyond the stored degree.
    pub fn coeff(&self, i: usize) -> f64 {
        self.coeffs.get(i).copied().unwrap_or(0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Formal derivative of the given order, applied as repeated single
    /// derivatives. An order past the degree yields the zero polynomial.
    pub fn derivative(&self, order: usize) -> Polynomial {
        let mut current = self.clone();
        for _ in 0..order {
            current = current.derivative_once();
            if current.coeffs.is_empty() {
                break;
            }
        }
        current
    }

    fn derivative_once(&self) -> Polynomial {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| i as f64 * c)
            .collect();
        // Differentiation cannot introduce trailing zeros or non-finite
        // values, but new() also trims a zero leading term like 0*x^2.
        Polynomial::new(coeffs).expect("derivative of finite coefficients is finite")
    }

    /// Adds `scale * other` coefficient-wise.
    pub fn add_scaled(&mut self, other: &Polynomial, scale: f64) {
        if other.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), 0.0);
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            self.coeffs[i] += scale * c;
        }
        while self.coeffs.last() == Some(&0.0) {
            self.coeffs.pop();
        }
    }

    /// Multiplies every coefficient by `scale`.
    pub fn scale(&self, scale: f64) -> Polynomial {
        let coeffs = self.coeffs.iter().map(|&c| scale * c).collect();
        Polynomial::new(coeffs).expect("scaling finite coefficients by a finite factor")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_trims_and_validates() {
        let p = Polynomial::new(vec![1.0, 2.0, 0.0, 0.0]).unwrap();
        assert_eq!(p.coeffs(), &[1.0, 2.0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(Polynomial::new(vec![0.0]).unwrap(), Polynomial::zero());
        assert_eq!(Polynomial::zero().degree(), None);
        assert!(Polynomial::new(vec![f64::NAN]).is_err());
        assert!(Polynomial::new(vec![1.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn from_roots_expands_exactly() {
        // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
        let p = Polynomial::from_roots(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(p.coeffs(), &[-6.0, 11.0, -6.0, 1.0]);
        // Empty root list gives the constant 1.
        assert_eq!(Polynomial::from_roots(&[]).unwrap().coeffs(), &[1.0]);
        // Leading coefficient is exactly 1 regardless of root magnitudes.
        let q = Polynomial::from_roots(&[1e9, -3.25e-7, 12.5]).unwrap();
        assert_eq!(q.coeff(3), 1.0);
    }

    #[test]
    fn evaluation_matches_direct_sum() {
        let p = Polynomial::new(vec![-6.0, 11.0, -6.0, 1.0]).unwrap();
        for &x in &[-2.0, 0.0, 0.5, 1.0, 2.0, 3.0, 10.0] {
            let direct = -6.0 + 11.0 * x - 6.0 * x * x + x * x * x;
            assert!((p.eval(x) - direct).abs() <= 1e-12 * direct.abs().max(1.0));
        }
        assert_eq!(p.eval(1.0), 0.0);
        assert_eq!(Polynomial::zero().eval(3.0), 0.0);
    }

    #[test]
    fn derivatives_repeat_single_steps() {
        let p = Polynomial::new(vec![-6.0, 11.0, -6.0, 1.0]).unwrap();
        assert_eq!(p.derivative(1).coeffs(), &[11.0, -12.0, 3.0]);
        assert_eq!(p.derivative(2).coeffs(), &[-12.0, 6.0]);
        assert_eq!(p.derivative(3).coeffs(), &[6.0]);
        assert_eq!(p.derivative(4), Polynomial::zero());
        assert_eq!(p.derivative(17), Polynomial::zero());
        assert_eq!(p.derivative(0), p);
        // Composition: d^2 = d(d).
        assert_eq!(p.derivative(2), p.derivative(1).derivative(1));
    }

    #[test]
    fn add_scaled_accumulates() {
        let mut acc = Polynomial::zero();
        let a = Polynomial::new(vec![1.0, 2.0]).unwrap();
        let b = Polynomial::new(vec![0.0, 1.0, 4.0]).unwrap();
        acc.add_scaled(&a, 2.0);
        acc.add_scaled(&b, -1.0);
        assert_eq!(acc.coeffs(), &[2.0, 3.0, -4.0]);
        // Cancellation trims the leading term.
        let mut c = Polynomial::new(vec![0.0, 0.0, 1.0]).unwrap();
        c.add_scaled(&Polynomial::new(vec![0.0, 0.0, -1.0]).unwrap(), 1.0);
        assert_eq!(c, Polynomial::zero());
        assert_eq!(a.scale(3.0).coeffs(), &[3.0, 6.0]);
    }
}
