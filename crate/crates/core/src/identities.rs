//! Numerical verification of characteristic-polynomial identities.
//!
//! All identities live on a Hermitian form `F` of dimension `n` with
//! characteristic polynomial `rho(lambda) = det(lambda I - F)` and principal
//! submatrices `F_S` on index subsets `S`:
//!
//! * subset-sum identity: `(n-k)! * sum_{|S|=k} rho_S = rho^((n-k))`, the
//!   `(n-k)`-th formal derivative of `rho`;
//! * its `k = n-1` special case, `sum_i rho_{without i} = rho'`;
//! * the induction step `sum_{|S|=k+1} rho_S' = (n-k) * sum_{|S|=k} rho_S`;
//! * the spectral coefficient identity: the coefficient of `lambda^(n-k)` in
//!   `rho` equals `(-1)^k e_k(spectrum)`;
//! * the determinant averaging bound
//!   `(1/n) sum_i det(F_{without i}) >= det(F)^((n-1)/n)` for positive
//!   definite `F`, with equality at the identity matrix.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::matrix::HermitianForm;
use crate::poly::Polynomial;
use crate::subset::{binomial, factorial, k_subsets, SubsetIndex};
use crate::Result;

/// Cap on the number of subsets any identity is allowed to enumerate.
pub const SUBSET_ENUMERATION_CAP: u64 = 1_000_000;

/// Default relative tolerance for identity verification.
pub const IDENTITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityKind {
    Property1,
    DerivativeSpecialCase,
    InductionStep,
    SymmetricCoeff,
    AvgDetBound,
}

/// Outcome of checking one identity on one matrix.
///
/// Relative errors are normalized per compared coefficient by
/// `max(1, |reference|)`; `passed` is `max_rel_error <= tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: IdentityKind,
    pub n: usize,
    pub k: usize,
    pub max_abs_error: f64,
    pub max_rel_error: f64,
    pub passed: bool,
    pub tolerance: f64,
}

fn check_tolerance(tol: f64) -> Result<()> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::invalid(format!(
            "tolerance must be a finite positive number, got {tol}"
        )));
    }
    Ok(())
}

fn check_subset_budget(n: usize, k: usize) -> Result<()> {
    let count = binomial(n as u64, k as u64);
    if count > SUBSET_ENUMERATION_CAP as u128 {
        return Err(Error::EnumerationCap {
            required: count,
            cap: SUBSET_ENUMERATION_CAP,
        });
    }
    Ok(())
}

/// `(n-k)! * sum over k-subsets S of char_poly(F_S)`, accumulated in
/// lexicographic subset order.
pub fn sum_subset_charpolys(f: &HermitianForm, k: usize) -> Result<Polynomial> {
    let n = f.n();
    if k == 0 || k > n {
        return Err(Error::invalid(format!(
            "subset size must satisfy 1 <= k <= n = {n}, got {k}"
        )));
    }
    check_subset_budget(n, k)?;
    let mut acc = Polynomial::zero();
    for subset in k_subsets(n, k) {
        let sub = f.principal_submatrix(&subset)?;
        acc.add_scaled(&sub.char_poly()?, 1.0);
    }
    Ok(acc.scale(factorial((n - k) as u64) as f64))
}

fn compare_polys(
    identity: IdentityKind,
    n: usize,
    k: usize,
    lhs: &Polynomial,
    reference: &Polynomial,
    tolerance: f64,
) -> IdentityReport {
    let len = lhs.coeffs().len().max(reference.coeffs().len());
    let mut max_abs = 0.0f64;
    let mut max_rel = 0.0f64;
    for i in 0..len {
        let abs = (lhs.coeff(i) - reference.coeff(i)).abs();
        let rel = abs / reference.coeff(i).abs().max(1.0);
        max_abs = max_abs.max(abs);
        max_rel = max_rel.max(rel);
    }
    IdentityReport {
        identity,
        n,
        k,
        max_abs_error: max_abs,
        max_rel_error: max_rel,
        passed: max_rel <= tolerance,
        tolerance,
    }
}

/// Checks `(n-k)! * sum_{|S|=k} rho_S` against the `(n-k)`-th derivative of
/// the characteristic polynomial of `F`.
pub fn verify_property1(f: &HermitianForm, k: usize, tolerance: f64) -> Result<IdentityReport> {
    check_tolerance(tolerance)?;
    let n = f.n();
    let lhs = sum_subset_charpolys(f, k)?;
    let reference = f.char_poly()?.derivative(n - k);
    Ok(compare_polys(
        IdentityKind::Property1,
        n,
        k,
        &lhs,
        &reference,
        tolerance,
    ))
}

/// The `k = n-1` specialization: the sum of the n leave-one-out subset
/// polynomials equals the first derivative.
pub fn verify_derivative_special_case(f: &HermitianForm, tolerance: f64) -> Result<IdentityReport> {
    check_tolerance(tolerance)?;
    let n = f.n();
    if n < 2 {
        return Err(Error::invalid(
            "derivative special case requires n >= 2".to_string(),
        ));
    }
    let k = n - 1;
    let lhs = sum_subset_charpolys(f, k)?;
    let reference = f.char_poly()?.derivative(1);
    Ok(compare_polys(
        IdentityKind::DerivativeSpecialCase,
        n,
        k,
        &lhs,
        &reference,
        tolerance,
    ))
}

/// Checks `sum_{|S|=k+1} rho_S' = (n-k) * sum_{|S|=k} rho_S` for
/// `1 <= k <= n-1`.
pub fn verify_induction_step(
    f: &HermitianForm,
    k: usize,
    tolerance: f64,
) -> Result<IdentityReport> {
    check_tolerance(tolerance)?;
    let n = f.n();
    if k == 0 || k >= n {
        return Err(Error::invalid(format!(
            "induction step requires 1 <= k <= n-1 = {}, got {k}",
            n.saturating_sub(1)
        )));
    }
    check_subset_budget(n, k + 1)?;
    check_subset_budget(n, k)?;

    let mut lhs = Polynomial::zero();
    for subset in k_subsets(n, k + 1) {
        let sub = f.principal_submatrix(&subset)?;
        lhs.add_scaled(&sub.char_poly()?.derivative(1), 1.0);
    }
    let mut reference = Polynomial::zero();
    for subset in k_subsets(n, k) {
        let sub = f.principal_submatrix(&subset)?;
        reference.add_scaled(&sub.char_poly()?, (n - k) as f64);
    }
    Ok(compare_polys(
        IdentityKind::InductionStep,
        n,
        k,
        &lhs,
        &reference,
        tolerance,
    ))
}

/// Checks that the coefficient of `lambda^(n-k)` in the characteristic
/// polynomial equals `(-1)^k` times the k-th elementary symmetric function of
/// the spectrum.
pub fn verify_symmetric_coeff(
    f: &HermitianForm,
    k: usize,
    tolerance: f64,
) -> Result<IdentityReport> {
    check_tolerance(tolerance)?;
    let n = f.n();
    if k == 0 || k > n {
        return Err(Error::invalid(format!(
            "coefficient index must satisfy 1 <= k <= n = {n}, got {k}"
        )));
    }
    check_subset_budget(n, k)?;
    let spectrum = f.eigenvalues()?.to_vec();
    let mut e_k = 0.0f64;
    for subset in k_subsets(n, k) {
        e_k += subset
            .members()
            .iter()
            .map(|&i| spectrum[i - 1])
            .product::<f64>();
    }
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let reference = sign * e_k;
    let coeff = f.char_poly()?.coeff(n - k);
    let abs = (coeff - reference).abs();
    let rel = abs / reference.abs().max(1.0);
    Ok(IdentityReport {
        identity: IdentityKind::SymmetricCoeff,
        n,
        k,
        max_abs_error: abs,
        max_rel_error: rel,
        passed: rel <= tolerance,
        tolerance,
    })
}

/// Checks the determinant averaging bound
/// `(1/n) sum_i det(F_{without i}) >= det(F)^((n-1)/n)` for positive definite
/// `F` of dimension n >= 2. Errors record only violation, so a comfortably
/// satisfied inequality reports zero.
pub fn verify_avg_det_bound(f: &HermitianForm, tolerance: f64) -> Result<IdentityReport> {
    check_tolerance(tolerance)?;
    let n = f.n();
    if n < 2 {
        return Err(Error::invalid(
            "determinant averaging requires n >= 2".to_string(),
        ));
    }
    let spectrum = f.eigenvalues()?;
    if spectrum[n - 1] <= 0.0 {
        return Err(Error::domain(format!(
            "determinant averaging requires a positive definite form, found eigenvalue {:.6e}",
            spectrum[n - 1]
        )));
    }
    let full = SubsetIndex::full(n);
    let mut avg = 0.0f64;
    for i in 1..=n {
        let sub = f.principal_submatrix(&full.without(i)?)?;
        avg += sub.det()?;
    }
    avg /= n as f64;
    let rhs = f.det()?.powf((n - 1) as f64 / n as f64);
    let violation = (rhs - avg).max(0.0);
    let rel = if rhs > 0.0 { violation / rhs } else { 0.0 };
    Ok(IdentityReport {
        identity: IdentityKind::AvgDetBound,
        n,
        k: n - 1,
        max_abs_error: violation,
        max_rel_error: rel,
        passed: rel <= tolerance,
        tolerance,
    })
}

/// How many size-`k_r` receive subsets contain all of the first `n_t`
/// indices, checked by enumeration against the closed form
/// `C(n_r - n_t, k_r - n_t)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleCountCheck {
    pub n_r: usize,
    pub n_t: usize,
    pub k_r: usize,
    pub enumerated: u128,
    pub formula: u128,
    pub equal: bool,
}

pub fn verify_case2_tuple_count(n_r: usize, n_t: usize, k_r: usize) -> Result<TupleCountCheck> {
    if n_t == 0 || n_t > n_r {
        return Err(Error::invalid(format!(
            "requires 1 <= n_t <= n_r, got n_t={n_t}, n_r={n_r}"
        )));
    }
    if k_r < n_t || k_r > n_r {
        return Err(Error::invalid(format!(
            "requires n_t <= k_r <= n_r, got k_r={k_r}"
        )));
    }
    check_subset_budget(n_r, k_r)?;
    let mut enumerated: u128 = 0;
    for subset in k_subsets(n_r, k_r) {
        if (1..=n_t).all(|i| subset.contains(i)) {
            enumerated += 1;
        }
    }
    let formula = binomial((n_r - n_t) as u64, (k_r - n_t) as u64);
    Ok(TupleCountCheck {
        n_r,
        n_t,
        k_r,
        enumerated,
        formula,
        equal: enumerated == formula,
    })
}
