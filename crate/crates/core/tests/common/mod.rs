//! Oracles for integration tests, implemented independently of the library:
//! complex arithmetic on raw (re, im) tuples and an LU determinant with
//! partial pivoting.

pub type C = (f64, f64);

pub fn cadd(a: C, b: C) -> C {
    (a.0 + b.0, a.1 + b.1)
}

pub fn csub(a: C, b: C) -> C {
    (a.0 - b.0, a.1 - b.1)
}

pub fn cmul(a: C, b: C) -> C {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

pub fn cdiv(a: C, b: C) -> C {
    let d = b.0 * b.0 + b.1 * b.1;
    ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
}

pub fn cmod2(a: C) -> f64 {
    a.0 * a.0 + a.1 * a.1
}

/// Determinant of an n x n complex matrix (row-major tuples) by Gaussian
/// elimination with partial pivoting.
pub fn lu_det(entries: &[C], n: usize) -> C {
    assert_eq!(entries.len(), n * n);
    let mut a = entries.to_vec();
    let mut det = (1.0, 0.0);
    for col in 0..n {
        let mut piv = col;
        let mut best = cmod2(a[col * n + col]);
        for r in col + 1..n {
            let m = cmod2(a[r * n + col]);
            if m > best {
                best = m;
                piv = r;
            }
        }
        if best == 0.0 {
            return (0.0, 0.0);
        }
        if piv != col {
            for j in 0..n {
                a.swap(col * n + j, piv * n + j);
            }
            det = (-det.0, -det.1);
        }
        let d = a[col * n + col];
        det = cmul(det, d);
        for r in col + 1..n {
            let factor = cdiv(a[r * n + col], d);
            for j in col..n {
                a[r * n + j] = csub(a[r * n + j], cmul(factor, a[col * n + j]));
            }
        }
    }
    det
}

/// det(I + P H H^H) computed entirely with oracle arithmetic from the raw
/// channel entries (row-major, n_r x n_t).
pub fn oracle_gram_det(h: &[C], n_r: usize, n_t: usize, power: f64) -> C {
    let mut g = vec![(0.0, 0.0); n_r * n_r];
    for i in 0..n_r {
        for j in 0..n_r {
            let mut acc = (0.0, 0.0);
            for k in 0..n_t {
                let hik = h[i * n_t + k];
                let hjk_conj = (h[j * n_t + k].0, -h[j * n_t + k].1);
                acc = cadd(acc, cmul(hik, hjk_conj));
            }
            g[i * n_r + j] = (power * acc.0, power * acc.1);
        }
        g[i * n_r + i].0 += 1.0;
    }
    lu_det(&g, n_r)
}
