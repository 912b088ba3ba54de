//! Cyclic Jacobi eigenvalues for small dense Hermitian matrices.

use num_complex::Complex;

use crate::scalar::{lit, Real};

pub type Matrix<T, const N: usize> = [[Complex<T>; N]; N];

const MAX_SWEEPS: usize = 100;

fn off_diagonal_norm<T: Real, const N: usize>(a: &Matrix<T, N>) -> T {
    let mut s = T::zero();
    for (i, row) in a.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i != j {
                s = s + v.norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn frobenius_norm<T: Real, const N: usize>(a: &Matrix<T, N>) -> T {
    a.iter().flatten().fold(T::zero(), |s, v| s + v.norm_sqr()).sqrt()
}

/// Largest |a_ij − conj(a_ji)|.
pub fn hermiticity_defect<T: Real, const N: usize>(a: &Matrix<T, N>) -> T {
    let mut worst = T::zero();
    for i in 0..N {
        for j in 0..N {
            worst = worst.max((a[i][j] - a[j][i].conj()).norm());
        }
    }
    worst
}

pub fn conjugate_transpose<T: Real, const N: usize>(a: &Matrix<T, N>) -> Matrix<T, N> {
    let mut out = *a;
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = a[j][i].conj();
        }
    }
    out
}

pub fn trace<T: Real, const N: usize>(a: &Matrix<T, N>) -> Complex<T> {
    (0..N).fold(Complex::new(T::zero(), T::zero()), |s, i| s + a[i][i])
}

/// Eigenvalues of a Hermitian matrix in ascending order.
///
/// Only the Hermitian part (a + a†)/2 is diagonalized.
pub fn hermitian_eigenvalues<T: Real, const N: usize>(m: &Matrix<T, N>) -> [T; N] {
    let half = lit::<T>(0.5);
    let mut a = *m;
    for i in 0..N {
        for j in 0..N {
            a[i][j] = (m[i][j] + m[j][i].conj()) * half;
        }
    }
    let scale = frobenius_norm(&a);
    if scale > T::zero() {
        let tol = T::epsilon() * lit(0.5) * scale;
        for _ in 0..MAX_SWEEPS {
            if off_diagonal_norm(&a) <= tol {
                break;
            }
            for p in 0..N {
                for q in (p + 1)..N {
                    rotate(&mut a, p, q);
                }
            }
        }
    }
    let mut ev = [T::zero(); N];
    for (i, e) in ev.iter_mut().enumerate() {
        *e = a[i][i].re;
    }
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    ev
}

/// One complex Jacobi rotation annihilating a[p][q].
fn rotate<T: Real, const N: usize>(a: &mut Matrix<T, N>, p: usize, q: usize) {
    let apq = a[p][q];
    let mag = apq.norm();
    if mag == T::zero() {
        return;
    }
    let phase = apq / mag;
    let app = a[p][p].re;
    let aqq = a[q][q].re;
    let theta = (aqq - app) / (lit::<T>(2.0) * mag);
    let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;
    // U = diag(1, conj(phase)) · [[c, s], [−s, c]] on the (p, q) plane
    let u_pp = Complex::new(c, T::zero());
    let u_pq = Complex::new(s, T::zero());
    let u_qp = -phase.conj() * s;
    let u_qq = phase.conj() * c;
    for row in a.iter_mut() {
        let (kp, kq) = (row[p], row[q]);
        row[p] = kp * u_pp + kq * u_qp;
        row[q] = kp * u_pq + kq * u_qq;
    }
    for k in 0..N {
        let (pk, qk) = (a[p][k], a[q][k]);
        a[p][k] = u_pp.conj() * pk + u_qp.conj() * qk;
        a[q][k] = u_pq.conj() * pk + u_qq.conj() * qk;
    }
    let zero = Complex::new(T::zero(), T::zero());
    a[p][q] = zero;
    a[q][p] = zero;
    a[p][p] = Complex::new(a[p][p].re, T::zero());
    a[q][q] = Complex::new(a[q][q].re, T::zero());
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pauli_y_spectrum() {
        let m = [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]];
        let ev = hermitian_eigenvalues(&m);
        assert!((ev[0] + 1.0).abs() < 1e-15 && (ev[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn unitary_conjugation_preserves_spectrum() {
        // H = U D U† with U a product of two complex plane rotations
        let d = [-0.3, 0.1, 0.25, 2.0];
        let mut h: Matrix<f64, 4> = [[c(0.0, 0.0); 4]; 4];
        for i in 0..4 {
            h[i][i] = c(d[i], 0.0);
        }
        let mut u: Matrix<f64, 4> = [[c(0.0, 0.0); 4]; 4];
        for i in 0..4 {
            u[i][i] = c(1.0, 0.0);
        }
        let (ct, st) = (0.6f64, 0.8f64);
        let ph = Complex64::from_polar(1.0, 0.7);
        u[0][0] = c(ct, 0.0);
        u[0][3] = ph * st;
        u[3][0] = -ph.conj() * st;
        u[3][3] = c(ct, 0.0);
        u[1][2] = c(0.0, 0.5);
        u[2][1] = c(0.0, 0.5);
        u[1][1] = c(0.75f64.sqrt(), 0.0);
        u[2][2] = c(0.75f64.sqrt(), 0.0);
        let mul = |a: &Matrix<f64, 4>, b: &Matrix<f64, 4>| {
            let mut out = [[c(0.0, 0.0); 4]; 4];
            for i in 0..4 {
                for j in 0..4 {
                    for k in 0..4 {
                        out[i][j] += a[i][k] * b[k][j];
                    }
                }
            }
            out
        };
        let full = mul(&mul(&u, &h), &conjugate_transpose(&u));
        assert!(hermiticity_defect(&full) < 1e-15);
        let ev = hermitian_eigenvalues(&full);
        for (a, b) in ev.iter().zip(d.iter()) {
            assert!((a - b).abs() < 1e-14, "{ev:?}");
        }
        assert!((trace(&full).re - d.iter().sum::<f64>()).abs() < 1e-14);
    }

    #[test]
    fn zero_matrix() {
        let m: Matrix<f32, 3> = [[Complex::new(0.0, 0.0); 3]; 3];
        assert_eq!(hermitian_eigenvalues(&m), [0.0; 3]);
    }
}
