//! Cyclic Jacobi eigensolver for Hermitian matrices.
//!
//! Works entirely in-place on a row-major copy of the matrix. Each rotation
//! annihilates one off-diagonal pair with a complex Givens rotation; a sweep
//! visits every pair (p, q) with p < q in row order. Convergence is measured
//! against `REL_TOL` times the Frobenius norm of the input, which unitary
//! similarity leaves unchanged, so the threshold is computed once.

use num_complex::Complex64;

use crate::error::Error;
use crate::Result;

const MAX_SWEEPS: usize = 100;
const REL_TOL: f64 = 1e-12;

/// Eigenvalues of a Hermitian matrix in nonincreasing order.
///
/// `entries` is row-major with exact conjugate symmetry and a real diagonal;
/// callers enforce that before reaching this routine.
pub(crate) fn hermitian_eigenvalues(entries: &[Complex64], n: usize) -> Result<Vec<f64>> {
    debug_assert_eq!(entries.len(), n * n);
    if n == 1 {
        return Ok(vec![entries[0].re]);
    }

    let mut a = entries.to_vec();
    let fro = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let threshold = REL_TOL * fro;

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a, n) <= threshold {
            return Ok(sorted_diagonal(&a, n));
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, n, p, q);
            }
        }
    }

    let residual = off_diagonal_norm(&a, n);
    if residual <= threshold {
        return Ok(sorted_diagonal(&a, n));
    }
    Err(Error::NoConvergence {
        sweeps: MAX_SWEEPS,
        residual,
    })
}

fn off_diagonal_norm(a: &[Complex64], n: usize) -> f64 {
    let mut sum = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                sum += a[p * n + q].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

fn sorted_diagonal(a: &[Complex64], n: usize) -> Vec<f64> {
    let mut diag: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    diag.sort_unstable_by(|x, y| y.total_cmp(x));
    diag
}

/// Applies `A <- U^H A U` where `U` is the rotation in the (p, q) plane that
/// zeroes `A[p][q]`, with `U[p][p] = c`, `U[p][q] = s`, `U[q][p] = -conj(s)`,
/// `U[q][q] = c`, `c` real and `c^2 + |s|^2 = 1`.
fn rotate(a: &mut [Complex64], n: usize, p: usize, q: usize) {
    let beta = a[p * n + q];
    let beta_abs = beta.norm();
    if beta_abs == 0.0 {
        return;
    }
    let alpha = a[p * n + p].re;
    let gamma = a[q * n + q].re;
    let phase = beta / beta_abs;

    // Smaller-magnitude root of t^2 - 2*tau*t - 1 = 0 keeps the rotation
    // angle at most pi/4, which is what gives cyclic Jacobi its quadratic
    // convergence.
    let tau = (alpha - gamma) / (2.0 * beta_abs);
    let t = if tau >= 0.0 {
        -1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = phase * (t * c);

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        let new_kp = akp * c - akq * s.conj();
        let new_kq = akp * s + akq * c;
        a[k * n + p] = new_kp;
        a[k * n + q] = new_kq;
        a[p * n + k] = new_kp.conj();
        a[q * n + k] = new_kq.conj();
    }

    a[p * n + p] = Complex64::new(alpha - t * beta_abs, 0.0);
    a[q * n + q] = Complex64::new(gamma + t * beta_abs, 0.0);
    a[p * n + q] = Complex64::new(0.0, 0.0);
    a[q * n + p] = Complex64::new(0.0, 0.0);
}
