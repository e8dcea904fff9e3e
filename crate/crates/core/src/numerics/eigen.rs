//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `h_pq` with a diagonal
//! unitary and then applies the classical real Jacobi rotation. Sweeps stop
//! once the off-diagonal Frobenius norm drops below `1e-13·‖H‖_F`.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::Result;

const OFF_DIAGONAL_TOLERANCE: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    h.check_hermitian()?;
    Ok(jacobi(h, false).0)
}

/// Eigenvalues (ascending) and the unitary whose columns are the eigenvectors.
pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    h.check_hermitian()?;
    let (values, vectors) = jacobi(h, true);
    Ok((values, vectors.expect("vectors requested")))
}

fn off_diagonal_norm(a: &[Complex64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            s += 2.0 * a[i * n + j].norm_sqr();
        }
    }
    s.sqrt()
}

fn jacobi(h: &ComplexMatrix, want_vectors: bool) -> (Vec<f64>, Option<ComplexMatrix>) {
    let n = h.rows();
    let mut a: Vec<Complex64> = h.as_slice().to_vec();
    // Diagonal of a Hermitian matrix is real; drop roundoff in the imaginary parts.
    for i in 0..n {
        a[i * n + i].im = 0.0;
    }
    let mut v = want_vectors.then(|| ComplexMatrix::identity(n));
    let scale = h.frobenius_norm();
    let target = OFF_DIAGONAL_TOLERANCE * scale;

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a, n) <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let g = a[p * n + q];
                let abs_g = g.norm();
                if abs_g == 0.0 {
                    continue;
                }
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                // Skip rotations that would not change the diagonal in floating point.
                if abs_g < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
                    a[p * n + q] = Complex64::new(0.0, 0.0);
                    a[q * n + p] = Complex64::new(0.0, 0.0);
                    continue;
                }
                let d = g.conj() / abs_g;
                let theta = (aqq - app) / (2.0 * abs_g);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let ds = d * s;
                let dc = d * c;

                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let hrp = a[r * n + p];
                    let hrq = a[r * n + q];
                    let new_rp = hrp * c - ds * hrq;
                    let new_rq = hrp * s + dc * hrq;
                    a[r * n + p] = new_rp;
                    a[r * n + q] = new_rq;
                    a[p * n + r] = new_rp.conj();
                    a[q * n + r] = new_rq.conj();
                }
                a[p * n + p] = Complex64::new(app - t * abs_g, 0.0);
                a[q * n + q] = Complex64::new(aqq + t * abs_g, 0.0);
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[q * n + p] = Complex64::new(0.0, 0.0);

                if let Some(v) = v.as_mut() {
                    for r in 0..n {
                        let vrp = v[(r, p)];
                        let vrq = v[(r, q)];
                        v[(r, p)] = vrp * c - ds * vrq;
                        v[(r, q)] = vrp * s + dc * vrq;
                    }
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    let values = order.iter().map(|&i| a[i * n + i].re).collect();
    let vectors = v.map(|v| {
        let mut sorted = ComplexMatrix::zeros(n, n);
        for (new_col, &old_col) in order.iter().enumerate() {
            for r in 0..n {
                sorted[(r, new_col)] = v[(r, old_col)];
            }
        }
        sorted
    });
    (values, vectors)
}
