//! Dense complex matrices and Hermitian forms.
//!
//! `ComplexMatrix` is a plain row-major rectangular matrix with finite
//! entries. `HermitianForm` wraps a square matrix that is Hermitian up to a
//! small absolute deviation, stores the exactly symmetrized version, and
//! caches its spectrum after the first eigendecomposition.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::eigen::hermitian_eigenvalues;
use crate::error::Error;
use crate::poly::Polynomial;
use crate::subset::SubsetIndex;
use crate::Result;

/// Maximum absolute deviation from exact conjugate symmetry accepted by
/// [`HermitianForm::new`].
pub const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::invalid(format!(
                "matrix dimensions must be at least 1x1, got {rows}x{cols}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::invalid(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(bad) = entries
            .iter()
            .find(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::invalid(format!(
                "matrix entries must be finite, found {bad}"
            )));
        }
        Ok(ComplexMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut entries = vec![Complex64::ZERO; n * n];
        for i in 0..n {
            entries[i * n + i] = Complex64::ONE;
        }
        ComplexMatrix::from_entries(n, n, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at 0-based (row, col).
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.cols + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> ComplexMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).conj());
            }
        }
        ComplexMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return Err(Error::invalid(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = vec![Complex64::ZERO; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                for j in 0..other.cols {
                    entries[i * other.cols + j] += aik * other.get(k, j);
                }
            }
        }
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }
}

/// A Hermitian matrix with a lazily computed, cached spectrum.
#[derive(Debug, Clone)]
pub struct HermitianForm {
    n: usize,
    entries: Vec<Complex64>,
    spectrum: OnceLock<std::result::Result<Vec<f64>, Error>>,
}

impl PartialEq for HermitianForm {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries
    }
}

impl HermitianForm {
    /// Accepts a square matrix whose deviation from its own conjugate
    /// transpose is at most [`HERMITIAN_TOL`] per entry, and stores the
    /// exactly Hermitian part `(A + A^H) / 2`.
    pub fn new(matrix: &ComplexMatrix) -> Result<Self> {
        if matrix.rows != matrix.cols {
            return Err(Error::invalid(format!(
                "Hermitian form requires a square matrix, got {}x{}",
                matrix.rows, matrix.cols
            )));
        }
        let n = matrix.rows;
        let mut deviation = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let d = (matrix.get(i, j) - matrix.get(j, i).conj()).norm();
                deviation = deviation.max(d);
            }
        }
        if deviation > HERMITIAN_TOL {
            return Err(Error::invalid(format!(
                "matrix is not Hermitian: max deviation {deviation:.3e} exceeds {HERMITIAN_TOL:.1e}"
            )));
        }
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push((matrix.get(i, j) + matrix.get(j, i).conj()) * 0.5);
            }
        }
        Ok(HermitianForm {
            n,
            entries,
            spectrum: OnceLock::new(),
        })
    }

    /// Entries already exactly Hermitian by construction; skips the deviation
    /// check but keeps the representation invariants.
    fn from_hermitian_entries(n: usize, entries: Vec<Complex64>) -> Self {
        debug_assert!(entries
            .iter()
            .enumerate()
            .all(|(idx, z)| { (*z - entries[(idx % n) * n + idx / n].conj()).norm() == 0.0 }));
        HermitianForm {
            n,
            entries,
            spectrum: OnceLock::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.n + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Sum of the (real) diagonal.
    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i).re).sum()
    }

    /// Eigenvalues in nonincreasing order, computed once and cached.
    pub fn eigenvalues(&self) -> Result<&[f64]> {
        self.spectrum
            .get_or_init(|| hermitian_eigenvalues(&self.entries, self.n))
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(Clone::clone)
    }

    /// Determinant as the product of the spectrum.
    pub fn det(&self) -> Result<f64> {
        Ok(self.eigenvalues()?.iter().product())
    }

    /// Base-2 log-determinant, `sum_i log2(lambda_i)`.
    pub fn log_det(&self) -> Result<f64> {
        let mut sum = 0.0;
        for &lambda in self.eigenvalues()? {
            if lambda <= 0.0 {
                return Err(Error::domain(format!(
                    "log-determinant requires a positive spectrum, found eigenvalue {lambda:.6e}"
                )));
            }
            sum += lambda.log2();
        }
        Ok(sum)
    }

    /// Characteristic polynomial `det(lambda I - A)` expanded from the
    /// computed spectrum; monic with the constant term `(-1)^n det(A)`.
    pub fn char_poly(&self) -> Result<Polynomial> {
        Polynomial::from_roots(self.eigenvalues()?)
    }

    /// Principal submatrix on the rows and columns in `subset` (1-based).
    pub fn principal_submatrix(&self, subset: &SubsetIndex) -> Result<HermitianForm> {
        if subset.is_empty() {
            return Err(Error::invalid("principal submatrix of an empty index set"));
        }
        if let Some(max) = subset.max() {
            if max > self.n {
                return Err(Error::invalid(format!(
                    "subset index {max} exceeds matrix dimension {}",
                    self.n
                )));
            }
        }
        let members = subset.members();
        let k = members.len();
        let mut entries = Vec::with_capacity(k * k);
        for &i in members {
            for &j in members {
                entries.push(self.get(i - 1, j - 1));
            }
        }
        Ok(HermitianForm::from_hermitian_entries(k, entries))
    }
}

fn check_power(power: f64) -> Result<()> {
    if !power.is_finite() || power <= 0.0 {
        return Err(Error::invalid(format!(
            "power must be a finite positive number, got {power}"
        )));
    }
    Ok(())
}

/// The receive-side Gram form `I + P * H * H^H` (dimension `rows(H)`).
///
/// Computed entrywise so conjugate symmetry holds exactly in floating point.
pub fn gram(h: &ComplexMatrix, power: f64) -> Result<HermitianForm> {
    check_power(power)?;
    let n = h.rows();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::ZERO;
            for k in 0..h.cols() {
                acc += h.get(i, k) * h.get(j, k).conj();
            }
            let mut e = acc * power;
            if i == j {
                e += 1.0;
            }
            entries.push(e);
        }
    }
    if entries
        .iter()
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(Error::domain("Gram form overflowed to a non-finite value"));
    }
    Ok(HermitianForm::from_hermitian_entries(n, entries))
}

/// The transmit-side Gram form `I + P * H^H * H` (dimension `cols(H)`).
pub fn dual_gram(h: &ComplexMatrix, power: f64) -> Result<HermitianForm> {
    check_power(power)?;
    let n = h.cols();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::ZERO;
            for k in 0..h.rows() {
                acc += h.get(k, i).conj() * h.get(k, j);
            }
            let mut e = acc * power;
            if i == j {
                e += 1.0;
            }
            entries.push(e);
        }
    }
    if entries
        .iter()
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(Error::domain("Gram form overflowed to a non-finite value"));
    }
    Ok(HermitianForm::from_hermitian_entries(n, entries))
}
