//! Dense complex linear algebra for small system dimensions: Hermitian
//! eigendecomposition (cyclic Jacobi), matrix exponential (scaled Pade)
//! and the operator norm.

use ndarray::Array2;
use num_complex::Complex64 as C64;

pub fn adjoint(a: &Array2<C64>) -> Array2<C64> {
    a.t().mapv(|x| x.conj())
}

pub fn is_hermitian(a: &Array2<C64>, tol: f64) -> bool {
    let d = a - &adjoint(a);
    d.iter().all(|x| x.norm() <= tol)
}

pub fn identity(n: usize) -> Array2<C64> {
    Array2::from_shape_fn((n, n), |(i, j)| {
        if i == j {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// Returns `(eigenvalues ascending, unitary V)` with `A V = V diag`.
pub fn hermitian_eigen(a: &Array2<C64>) -> (Vec<f64>, Array2<C64>) {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    let mut m = a.clone();
    let mut v = identity(n);
    let scale: f64 = a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt().max(1e-300);
    for _sweep in 0..200 {
        let off: f64 = (0..n)
            .flat_map(|p| (0..n).filter(move |q| *q != p).map(move |q| (p, q)))
            .map(|(p, q)| m[(p, q)].norm_sqr())
            .sum();
        if off.sqrt() < 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                if apq.norm() < 1e-300 {
                    continue;
                }
                let phi = apq.arg();
                let mag = apq.norm();
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // U_pp = c, U_pq = s, U_qp = -s e^{-i phi}, U_qq = c e^{-i phi}
                let upp = C64::new(c, 0.0);
                let upq = C64::new(s, 0.0);
                let uqp = -C64::from_polar(s, -phi);
                let uqq = C64::from_polar(c, -phi);
                // right-multiply columns p, q of m and v
                for k in 0..n {
                    let mp = m[(k, p)];
                    let mq = m[(k, q)];
                    m[(k, p)] = mp * upp + mq * uqp;
                    m[(k, q)] = mp * upq + mq * uqq;
                    let vp = v[(k, p)];
                    let vq = v[(k, q)];
                    v[(k, p)] = vp * upp + vq * uqp;
                    v[(k, q)] = vp * upq + vq * uqq;
                }
                // left-multiply rows p, q by U^dagger
                for k in 0..n {
                    let mp = m[(p, k)];
                    let mq = m[(q, k)];
                    m[(p, k)] = upp.conj() * mp + uqp.conj() * mq;
                    m[(q, k)] = upq.conj() * mp + uqq.conj() * mq;
                }
            }
        }
    }
    let mut idx: Vec<usize> = (0..n).collect();
    let evals_raw: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    idx.sort_by(|&i, &j| evals_raw[i].partial_cmp(&evals_raw[j]).unwrap());
    let evals: Vec<f64> = idx.iter().map(|&i| evals_raw[i]).collect();
    let mut vs = Array2::zeros((n, n));
    for (col, &i) in idx.iter().enumerate() {
        for r in 0..n {
            vs[(r, col)] = v[(r, i)];
        }
    }
    (evals, vs)
}

/// Largest singular value, via the top eigenvalue of `A^dagger A`.
pub fn operator_norm(a: &Array2<C64>) -> f64 {
    let ata = adjoint(a).dot(a);
    let (ev, _) = hermitian_eigen(&ata);
    ev.last().copied().unwrap_or(0.0).max(0.0).sqrt()
}

fn one_norm(a: &Array2<C64>) -> f64 {
    let n = a.ncols();
    (0..n)
        .map(|j| a.column(j).iter().map(|x| x.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Solve `A X = B` by Gaussian elimination with partial pivoting.
pub fn solve(a: &Array2<C64>, b: &Array2<C64>) -> Array2<C64> {
    let n = a.nrows();
    let m = b.ncols();
    let mut lu = a.clone();
    let mut x = b.clone();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| lu[(i, col)].norm().partial_cmp(&lu[(j, col)].norm()).unwrap())
            .unwrap();
        if piv != col {
            for k in 0..n {
                lu.swap((col, k), (piv, k));
            }
            for k in 0..m {
                x.swap((col, k), (piv, k));
            }
        }
        let d = lu[(col, col)];
        for r in (col + 1)..n {
            let f = lu[(r, col)] / d;
            if f.norm() == 0.0 {
                continue;
            }
            for k in col..n {
                let v = lu[(col, k)];
                lu[(r, k)] -= f * v;
            }
            for k in 0..m {
                let v = x[(col, k)];
                x[(r, k)] -= f * v;
            }
        }
    }
    for col in (0..n).rev() {
        let d = lu[(col, col)];
        for k in 0..m {
            x[(col, k)] /= d;
        }
        for r in 0..col {
            let f = lu[(r, col)];
            for k in 0..m {
                let v = x[(col, k)];
                x[(r, k)] -= f * v;
            }
        }
    }
    x
}

/// Matrix exponential by scaling-and-squaring with a (6,6) Pade approximant.
pub fn mat_exp(a: &Array2<C64>) -> Array2<C64> {
    let n = a.nrows();
    let norm = one_norm(a);
    let s = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
    let b = a.mapv(|x| x / C64::new(2f64.powi(s), 0.0));
    // Pade(6,6) coefficients
    let c = [1.0, 0.5, 5.0 / 44.0, 1.0 / 66.0, 1.0 / 792.0, 1.0 / 15840.0, 1.0 / 665280.0];
    let mut pow = identity(n);
    let mut num = identity(n).mapv(|x| x * c[0]);
    let mut den = identity(n).mapv(|x| x * c[0]);
    for (k, &ck) in c.iter().enumerate().skip(1) {
        pow = pow.dot(&b);
        num = num + pow.mapv(|x| x * ck);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        den = den + pow.mapv(|x| x * ck * sign);
    }
    let mut e = solve(&den, &num);
    for _ in 0..s {
        e = e.dot(&e);
    }
    e
}
