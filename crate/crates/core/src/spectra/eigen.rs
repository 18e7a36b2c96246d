//! Eigenvalues of dense real matrices.
//!
//! The pipeline is the classical one: diagonal balancing by powers of two,
//! Householder reduction to upper Hessenberg form, then Francis implicit
//! double-shift QR iteration with deflation on the active window. Only
//! eigenvalues are computed, so transformations are restricted to the
//! unreduced block and no Schur vectors are accumulated.

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::matrix::Matrix;

const RADIX: f64 = 2.0;

/// Total number of QR sweeps allowed per matrix row.
pub const SWEEPS_PER_ROW: usize = 50;

/// All `n` eigenvalues of a square real matrix, repeated according to
/// algebraic multiplicity.
///
/// Complex eigenvalues come in exact conjugate pairs. The output is sorted by
/// descending real part, then descending imaginary part.
pub fn eigenvalues(m: &Matrix) -> Result<Vec<Complex64>> {
    if !m.is_square() {
        return Err(invalid(format!(
            "eigenvalues need a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    if n == 0 {
        return Err(invalid("eigenvalues of an empty matrix"));
    }
    if !m.is_finite() {
        return Err(invalid("matrix has non-finite entries"));
    }
    let mut a = m.as_slice().to_vec();
    balance(&mut a, n);
    hessenberg(&mut a, n);
    let mut out = hessenberg_qr(&mut a, n)?;
    out.sort_by(|x, y| y.re.total_cmp(&x.re).then(y.im.total_cmp(&x.im)));
    Ok(out)
}

/// Scales rows and columns by powers of two so that row and column norms
/// are comparable. A similarity transform, exact in floating point.
fn balance(a: &mut [f64], n: usize) {
    let sqrdx = RADIX * RADIX;
    // Cap guards against pathological ping-pong; each pass is O(n^2).
    for _ in 0..100 {
        let mut converged = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[j * n + i].abs();
                    r += a[i * n + j].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut g = r / RADIX;
            let mut f = 1.0;
            while c < g {
                f *= RADIX;
                c *= sqrdx;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                converged = false;
                let g = 1.0 / f;
                for j in 0..n {
                    a[i * n + j] *= g;
                }
                for j in 0..n {
                    a[j * n + i] *= f;
                }
            }
        }
        if converged {
            break;
        }
    }
}

/// In-place Householder reduction to upper Hessenberg form.
fn hessenberg(a: &mut [f64], n: usize) {
    if n < 3 {
        return;
    }
    let mut v = vec![0.0; n];
    let mut w = vec![0.0; n];
    for k in 0..n - 2 {
        let len = n - k - 1;
        let scale: f64 = (k + 1..n).map(|i| a[i * n + k].abs()).sum();
        if scale == 0.0 {
            continue;
        }
        let mut norm2 = 0.0;
        for (t, i) in (k + 1..n).enumerate() {
            v[t] = a[i * n + k] / scale;
            norm2 += v[t] * v[t];
        }
        let alpha = if v[0] > 0.0 {
            -norm2.sqrt()
        } else {
            norm2.sqrt()
        };
        // v := x - alpha e1, and H = I - v v^T / h with h = -alpha * v0_new
        let h = norm2 - v[0] * alpha;
        v[0] -= alpha;
        if h == 0.0 {
            continue;
        }
        let v = &v[..len];

        // Left: rows k+1..n, columns k..n.
        for x in w[k..n].iter_mut() {
            *x = 0.0;
        }
        for (t, i) in (k + 1..n).enumerate() {
            let vi = v[t];
            if vi == 0.0 {
                continue;
            }
            let row = &a[i * n + k..i * n + n];
            for (wj, &aij) in w[k..n].iter_mut().zip(row) {
                *wj += vi * aij;
            }
        }
        for (t, i) in (k + 1..n).enumerate() {
            let f = v[t] / h;
            if f == 0.0 {
                continue;
            }
            let row = &mut a[i * n + k..i * n + n];
            for (aij, &wj) in row.iter_mut().zip(&w[k..n]) {
                *aij -= f * wj;
            }
        }

        // Right: all rows, columns k+1..n.
        for i in 0..n {
            let row = &mut a[i * n + k + 1..i * n + n];
            let s: f64 = row.iter().zip(v).map(|(x, y)| x * y).sum();
            if s == 0.0 {
                continue;
            }
            let f = s / h;
            for (aij, &vj) in row.iter_mut().zip(v) {
                *aij -= f * vj;
            }
        }

        a[(k + 1) * n + k] = scale * alpha;
        for i in k + 2..n {
            a[i * n + k] = 0.0;
        }
    }
}

#[inline]
fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix; eigenvalues only.
fn hessenberg_qr(a: &mut [f64], n: usize) -> Result<Vec<Complex64>> {
    let eps = f64::EPSILON;
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += a[i * n + j].abs();
        }
    }
    let budget = SWEEPS_PER_ROW * n;
    let mut total_its = 0usize;
    let mut shift = 0.0;
    let mut nn = n as isize - 1;
    let at = |i: isize, j: isize| (i as usize) * n + j as usize;

    while nn >= 0 {
        let mut its = 0usize;
        loop {
            let mut l = nn;
            while l > 0 {
                let mut s = a[at(l - 1, l - 1)].abs() + a[at(l, l)].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[at(l, l - 1)].abs() <= eps * s {
                    a[at(l, l - 1)] = 0.0;
                    break;
                }
                l -= 1;
            }
            let mut x = a[at(nn, nn)];
            if l == nn {
                out[nn as usize] = Complex64::new(x + shift, 0.0);
                nn -= 1;
                break;
            }
            let mut y = a[at(nn - 1, nn - 1)];
            let mut w = a[at(nn, nn - 1)] * a[at(nn - 1, nn)];
            if l == nn - 1 {
                // Trailing 2x2 block in closed form.
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let mut z = q.abs().sqrt();
                x += shift;
                if q >= 0.0 {
                    z = p + sign(z, p);
                    let hi = x + z;
                    let lo = if z != 0.0 { x - w / z } else { hi };
                    out[nn as usize - 1] = Complex64::new(hi, 0.0);
                    out[nn as usize] = Complex64::new(lo, 0.0);
                } else {
                    out[nn as usize - 1] = Complex64::new(x + p, z);
                    out[nn as usize] = Complex64::new(x + p, -z);
                }
                nn -= 2;
                break;
            }

            if total_its >= budget {
                return Err(Error::NumericalFailure {
                    message: format!(
                        "Hessenberg QR did not converge within {budget} sweeps (n = {n})"
                    ),
                    residual: a[at(nn, nn - 1)].abs(),
                });
            }
            if its > 0 && its.is_multiple_of(10) {
                // Exceptional shift.
                shift += x;
                for i in 0..=nn {
                    a[at(i, i)] -= x;
                }
                let s = a[at(nn, nn - 1)].abs() + a[at(nn - 1, nn - 2)].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;
            total_its += 1;

            // Look for two consecutive small subdiagonal elements.
            let mut m = nn - 2;
            let (mut p, mut q, mut r);
            loop {
                let z = a[at(m, m)];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / a[at(m + 1, m)] + a[at(m, m + 1)];
                q = a[at(m + 1, m + 1)] - z - rr - ss;
                r = a[at(m + 2, m + 1)];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a[at(m, m - 1)].abs() * (q.abs() + r.abs());
                let v = p.abs() * (a[at(m - 1, m - 1)].abs() + z.abs() + a[at(m + 1, m + 1)].abs());
                if u <= eps * v {
                    break;
                }
                m -= 1;
            }
            for i in m..nn - 1 {
                a[at(i + 2, i)] = 0.0;
                if i != m {
                    a[at(i + 2, i - 1)] = 0.0;
                }
            }

            // Double QR step on rows l..=nn and columns m..=nn.
            for k in m..nn {
                let not_last = k + 1 != nn;
                if k != m {
                    p = a[at(k, k - 1)];
                    q = a[at(k + 1, k - 1)];
                    r = if not_last { a[at(k + 2, k - 1)] } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = sign((p * p + q * q + r * r).sqrt(), p);
                if s == 0.0 {
                    continue;
                }
                if k == m {
                    if l != m {
                        a[at(k, k - 1)] = -a[at(k, k - 1)];
                    }
                } else {
                    a[at(k, k - 1)] = -s * x;
                }
                p += s;
                x = p / s;
                y = q / s;
                let z = r / s;
                q /= p;
                r /= p;

                let (k0, k1, k2) = (
                    at(k, 0),
                    at(k + 1, 0),
                    if not_last { at(k + 2, 0) } else { 0 },
                );
                for j in k as usize..=nn as usize {
                    let mut pp = a[k0 + j] + q * a[k1 + j];
                    if not_last {
                        pp += r * a[k2 + j];
                        a[k2 + j] -= pp * z;
                    }
                    a[k1 + j] -= pp * y;
                    a[k0 + j] -= pp * x;
                }
                let mmin = nn.min(k + 3);
                let kc = k as usize;
                for i in l..=mmin {
                    let base = i as usize * n;
                    let mut pp = x * a[base + kc] + y * a[base + kc + 1];
                    if not_last {
                        pp += z * a[base + kc + 2];
                        a[base + kc + 2] -= pp * r;
                    }
                    a[base + kc + 1] -= pp * q;
                    a[base + kc] -= pp;
                }
            }
        }
    }
    Ok(out)
}
