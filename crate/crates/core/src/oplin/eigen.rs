//! Hermitian eigensolver: Householder reduction to a real symmetric
//! tridiagonal matrix followed by implicit QL with Wilkinson-style shifts.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use super::LinearMap;

/// Eigenvalues (ascending) and, if requested, the matching orthonormal
/// eigenvectors stored as columns.
pub(crate) fn hermitian_eigen(m: &LinearMap, want_vectors: bool) -> (Vec<f64>, Option<LinearMap>) {
    let n = m.rows();
    debug_assert_eq!(n, m.cols());
    if n == 0 {
        return (Vec::new(), want_vectors.then(|| LinearMap::zeros(0, 0)));
    }
    let mut a: Vec<Complex64> = m.as_slice().to_vec();
    let (mut d, mut e, basis) = tridiagonalize(&mut a, n, want_vectors);

    let mut zt = if want_vectors {
        let mut z = vec![0.0; n * n];
        for i in 0..n {
            z[i * n + i] = 1.0;
        }
        Some(z)
    } else {
        None
    };
    tql2(&mut d, &mut e, zt.as_deref_mut(), n);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();

    let vectors = match (basis, zt) {
        (Some(w), Some(zt)) => {
            // V = W Z, with Z stored transposed (row i of zt = column i of Z).
            let mut v = vec![Complex64::new(0.0, 0.0); n * n];
            for r in 0..n {
                let wrow = &w[r * n..(r + 1) * n];
                for (c, &src) in order.iter().enumerate() {
                    let zrow = &zt[src * n..(src + 1) * n];
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (wv, &zv) in wrow.iter().zip(zrow) {
                        acc += wv * zv;
                    }
                    v[r * n + c] = acc;
                }
            }
            Some(LinearMap::from_raw(n, n, v))
        }
        _ => None,
    };
    (values, vectors)
}

/// Reduces the Hermitian matrix `a` (row-major, overwritten) to real
/// symmetric tridiagonal form `W^* a W`. Returns the diagonal, the
/// subdiagonal (padded with a trailing zero) and optionally `W`.
fn tridiagonalize(
    a: &mut [Complex64],
    n: usize,
    want_basis: bool,
) -> (Vec<f64>, Vec<f64>, Option<Vec<Complex64>>) {
    let zero = Complex64::new(0.0, 0.0);
    let mut reflectors: Vec<(usize, Vec<Complex64>, f64)> = Vec::new();
    let mut p = vec![zero; n];

    for k in 0..n.saturating_sub(2) {
        let len = n - k - 1;
        let mut v: Vec<Complex64> = (0..len).map(|i| a[(k + 1 + i) * n + k]).collect();
        let sigma = libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum::<f64>());
        if sigma == 0.0 {
            continue;
        }
        let x0 = v[0];
        let x0_abs = x0.norm();
        let phase = if x0_abs == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0_abs
        };
        let alpha = -phase * sigma;
        v[0] -= alpha;
        let tau = 1.0 / (sigma * (sigma + x0_abs));

        // p = tau * A22 v
        let base = k + 1;
        for i in 0..len {
            let row = &a[(base + i) * n + base..(base + i) * n + n];
            let mut acc = zero;
            for (aij, vj) in row.iter().zip(&v) {
                acc += aij * vj;
            }
            p[i] = acc * tau;
        }
        let vp: f64 = v
            .iter()
            .zip(&p[..len])
            .map(|(vi, pi)| (vi.conj() * pi).re)
            .sum();
        let kk = 0.5 * tau * vp;
        for i in 0..len {
            p[i] -= v[i] * kk;
        }
        for i in 0..len {
            let vi = v[i];
            let qi = p[i];
            let row = &mut a[(base + i) * n + base..(base + i) * n + n];
            for j in 0..len {
                row[j] -= vi * p[j].conj() + qi * v[j].conj();
            }
        }
        a[(k + 1) * n + k] = alpha;
        a[k * n + k + 1] = alpha.conj();
        for i in 1..len {
            a[(k + 1 + i) * n + k] = zero;
            a[k * n + k + 1 + i] = zero;
        }
        if want_basis {
            reflectors.push((k, v, tau));
        }
    }

    let diag: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    let mut off = vec![0.0; n];
    let mut phases = vec![Complex64::new(1.0, 0.0); n];
    for i in 0..n.saturating_sub(1) {
        let e = a[(i + 1) * n + i];
        let r = e.norm();
        off[i] = r;
        phases[i + 1] = if r == 0.0 { phases[i] } else { phases[i] * (e / r) };
    }

    let basis = want_basis.then(|| {
        let mut q = vec![zero; n * n];
        for i in 0..n {
            q[i * n + i] = Complex64::new(1.0, 0.0);
        }
        for (k, v, tau) in &reflectors {
            let base = k + 1;
            for r in 0..n {
                let row = &mut q[r * n + base..r * n + n];
                let mut w = zero;
                for (qv, vv) in row.iter().zip(v) {
                    w += qv * vv;
                }
                let w = w * *tau;
                for (qv, vv) in row.iter_mut().zip(v) {
                    *qv -= w * vv.conj();
                }
            }
        }
        for r in 0..n {
            for c in 0..n {
                q[r * n + c] *= phases[c];
            }
        }
        q
    });
    (diag, off, basis)
}

/// Implicit QL on a symmetric tridiagonal matrix. `e[i]` couples `d[i]` and
/// `d[i + 1]`; `e[n - 1]` must be zero. When `zt` is given, its rows are
/// rotated along (row `i` holds eigenvector `i`).
fn tql2(d: &mut [f64], e: &mut [f64], mut zt: Option<&mut [f64]>, n: usize) {
    const MAX_SWEEPS: usize = 64;
    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut sweeps = 0;
            loop {
                sweeps += 1;
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = libm::hypot(p, 1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = libm::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if let Some(z) = zt.as_deref_mut() {
                        let (lo, hi) = z.split_at_mut((i + 1) * n);
                        let zi = &mut lo[i * n..];
                        let zi1 = &mut hi[..n];
                        for (a, b) in zi.iter_mut().zip(zi1.iter_mut()) {
                            let hh = *b;
                            *b = s * *a + c * hh;
                            *a = c * *a - s * hh;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 || sweeps >= MAX_SWEEPS {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
}
