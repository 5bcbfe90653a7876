// float methods for no_std builds; shadowed by inherent ones when std is linked
#[allow(unused_imports)]
use num_traits::Float as _;
use alloc::vec;
use alloc::vec::Vec;

use super::DenseMatrix;
use crate::{Error, Result};

/// Inputs whose asymmetry exceeds this are rejected by [`jacobi_eigen`].
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// Cyclic sweeps stop once the off-diagonal Frobenius norm falls below this
/// fraction of the input's Frobenius norm.
const OFF_DIAGONAL_TOLERANCE: f64 = 1e-13;
const MAX_SWEEPS: usize = 64;

/// Positive-definiteness cutoff relative to the largest eigenvalue.
pub const SINGULARITY_CUTOFF: f64 = 1e-12;

/// Eigen-decomposition `A = V · diag(λ) · Vᵀ` of a symmetric matrix, eigenvalues
/// in descending order and eigenvectors stored as the columns of `V`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DenseMatrix,
}

impl SymmetricEigen {
    /// `V · diag(f(λ)) · Vᵀ`, symmetrized so the result is exactly symmetric.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> DenseMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let s: f64 = (0..n).map(|k| v[(i, k)] * fl[k] * v[(j, k)]).sum();
                out[(i, j)] = s;
                out[(j, i)] = s;
            }
        }
        out
    }

    pub fn reconstruct(&self) -> DenseMatrix {
        self.map_spectrum(|l| l)
    }

    pub fn smallest(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    pub fn largest(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// `V · diag(λ^{-1/2}) · Vᵀ`, or a singularity error when the smallest
    /// eigenvalue is not above `1e-12 · λ_max`.
    pub fn inverse_sqrt(&self) -> Result<DenseMatrix> {
        let (lo, hi) = (self.smallest(), self.largest());
        if hi.is_nan() || hi <= 0.0 || lo <= SINGULARITY_CUTOFF * hi {
            return Err(Error::Singular { smallest: lo });
        }
        Ok(self.map_spectrum(|l| 1.0 / l.sqrt()))
    }
}

/// Symmetric eigen-decomposition by cyclic Jacobi rotations.
pub fn jacobi_eigen(a: &DenseMatrix) -> Result<SymmetricEigen> {
    if !a.is_square() {
        return Err(Error::Shape("eigen-decomposition needs a square matrix"));
    }
    if a.asymmetry() > SYMMETRY_TOLERANCE {
        return Err(Error::Shape("eigen-decomposition needs a symmetric matrix"));
    }
    let n = a.rows();
    let mut m = a.clone();
    let mut v = DenseMatrix::identity(n);
    let total = frobenius(&m);
    let target = OFF_DIAGONAL_TOLERANCE * total;

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&m) <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let (app, aqq) = (m[(p, p)], m[(q, q)]);
                // Rotation already below roundoff of both diagonal entries.
                if apq.abs() <= f64::EPSILON * 1e-3 * (app.abs().min(aqq.abs())) {
                    m[(p, q)] = 0.0;
                    m[(q, p)] = 0.0;
                    continue;
                }
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut m, &mut v, p, q, c, s);
                m[(p, q)] = 0.0;
                m[(q, p)] = 0.0;
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].total_cmp(&m[(i, i)]));
    let eigenvalues = order.iter().map(|&i| m[(i, i)]).collect();
    let mut eigenvectors = DenseMatrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        for r in 0..n {
            eigenvectors[(r, col)] = v[(r, src)];
        }
    }
    Ok(SymmetricEigen {
        eigenvalues,
        eigenvectors,
    })
}

/// Applies `A ← Jᵀ A J` and `V ← V J` for the plane rotation in `(p, q)`.
fn rotate(m: &mut DenseMatrix, v: &mut DenseMatrix, p: usize, q: usize, c: f64, s: f64) {
    let n = m.rows();
    let data = m.data_mut();
    for k in 0..n {
        let (kp, kq) = (k * n + p, k * n + q);
        let (akp, akq) = (data[kp], data[kq]);
        data[kp] = c * akp - s * akq;
        data[kq] = s * akp + c * akq;
    }
    let (row_p, row_q) = (p * n, q * n);
    for k in 0..n {
        let (apk, aqk) = (data[row_p + k], data[row_q + k]);
        data[row_p + k] = c * apk - s * aqk;
        data[row_q + k] = s * apk + c * aqk;
    }
    let vd = v.data_mut();
    for k in 0..n {
        let (kp, kq) = (k * n + p, k * n + q);
        let (vkp, vkq) = (vd[kp], vd[kq]);
        vd[kp] = c * vkp - s * vkq;
        vd[kq] = s * vkp + c * vkq;
    }
}

fn frobenius(m: &DenseMatrix) -> f64 {
    m.as_slice().iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn off_diagonal_norm(m: &DenseMatrix) -> f64 {
    let n = m.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)] * m[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// `A^{-1/2}` for a symmetric positive definite `A`.
pub fn inverse_sqrt_sym(a: &DenseMatrix) -> Result<DenseMatrix> {
    jacobi_eigen(a)?.inverse_sqrt()
}

/// `√det(VᵀV)`: the `k`-volume of the parallelepiped spanned by `k` vectors
/// of a common dimension `d ≥ k`. Degenerate sets give 0.
///
/// One and two vectors use the closed forms `‖v‖` and
/// `√(‖a‖²‖b‖² − ⟨a,b⟩²)`; larger sets take the product of the Gram
/// eigenvalues.
pub fn gram_determinant(vectors: &[&[f64]]) -> f64 {
    let k = vectors.len();
    assert!(k >= 1, "need at least one vector");
    let d = vectors[0].len();
    assert!(vectors.iter().all(|v| v.len() == d), "vectors must share a dimension");
    assert!(d >= k, "more vectors than dimensions");
    let dot = super::matrix::dot;
    match k {
        1 => dot(vectors[0], vectors[0]).sqrt(),
        2 => {
            let (a, b) = (vectors[0], vectors[1]);
            let det = dot(a, a) * dot(b, b) - dot(a, b) * dot(a, b);
            det.max(0.0).sqrt()
        }
        _ => {
            let mut gram = DenseMatrix::zeros(k, k);
            for i in 0..k {
                for j in 0..=i {
                    let g = dot(vectors[i], vectors[j]);
                    gram[(i, j)] = g;
                    gram[(j, i)] = g;
                }
            }
            let eig = jacobi_eigen(&gram).expect("Gram matrices are square and symmetric");
            let det: f64 = eig.eigenvalues.iter().map(|l| l.max(0.0)).product();
            det.sqrt()
        }
    }
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `diag` and
/// off-diagonal `off` (`off[i]` couples rows `i` and `i + 1`), ascending,
/// together with the first component of each unit eigenvector.
///
/// Implicit QL with Wilkinson shifts; only the first row of the eigenvector
/// matrix is accumulated.
pub fn tridiagonal_eigen(diag: &[f64], off: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = diag.len();
    if n == 0 || off.len() + 1 != n {
        return Err(Error::Shape("tridiagonal matrix needs n diagonal and n - 1 off-diagonal entries"));
    }
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(0.0);
    let mut z = vec![0.0; n];
    z[0] = 1.0;
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > 60 {
                return Err(Error::NonFinite("tridiagonal QL did not converge"));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let t = z[i + 1];
                z[i + 1] = s * z[i] + c * t;
                z[i] = c * z[i] - s * t;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    Ok((order.iter().map(|&i| d[i]).collect(), order.iter().map(|&i| z[i]).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{sample_gaussian_matrix, RngStream};

    fn random_symmetric(seed: u64, n: usize) -> DenseMatrix {
        let g = sample_gaussian_matrix(&mut RngStream::new(seed, 0), n, n).unwrap();
        let mut a = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                a[(i, j)] = 0.5 * (g[(i, j)] + g[(j, i)]);
            }
        }
        a
    }

    fn random_spd(seed: u64, n: usize) -> DenseMatrix {
        let g = sample_gaussian_matrix(&mut RngStream::new(seed, 1), n, 3 * n).unwrap();
        g.gram_rows()
    }

    fn det_lu(a: &DenseMatrix) -> f64 {
        let n = a.rows();
        let mut m = a.clone();
        let mut det = 1.0;
        for c in 0..n {
            let p = (c..n).max_by(|&i, &j| m[(i, c)].abs().total_cmp(&m[(j, c)].abs())).unwrap();
            if p != c {
                for k in 0..n {
                    let t = m[(c, k)];
                    m[(c, k)] = m[(p, k)];
                    m[(p, k)] = t;
                }
                det = -det;
            }
            det *= m[(c, c)];
            for r in c + 1..n {
                let f = m[(r, c)] / m[(c, c)];
                for k in c..n {
                    m[(r, k)] -= f * m[(c, k)];
                }
            }
        }
        det
    }

    #[test]
    fn diagonal_input() {
        let e = jacobi_eigen(&DenseMatrix::from_diagonal(&[1.0, 3.0])).unwrap();
        assert_eq!(e.eigenvalues, vec![3.0, 1.0]);
        for i in 0..2 {
            for j in 0..2 {
                let expected = if i + j == 1 { 1.0 } else { 0.0 };
                assert_eq!(e.eigenvectors[(i, j)].abs(), expected);
            }
        }
    }

    #[test]
    fn two_by_two_closed_form() {
        let a = DenseMatrix::from_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        let e = jacobi_eigen(&a).unwrap();
        assert!((e.eigenvalues[0] - 3.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(matches!(jacobi_eigen(&DenseMatrix::zeros(2, 3)), Err(Error::Shape(_))));
        let a = DenseMatrix::from_rows(&[&[1.0, 2.0], &[0.0, 1.0]]).unwrap();
        assert!(matches!(jacobi_eigen(&a), Err(Error::Shape(_))));
    }

    #[test]
    fn reconstruction_and_orthogonality() {
        for seed in 0..5 {
            let a = random_symmetric(seed, 6);
            let e = jacobi_eigen(&a).unwrap();
            assert!(e.reconstruct().max_abs_diff(&a) < 1e-10);
            let v = &e.eigenvectors;
            let vtv = v.transpose().matmul(v).unwrap();
            assert!(vtv.max_abs_diff(&DenseMatrix::identity(6)) < 1e-10);
            assert!(e.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn trace_and_determinant() {
        for seed in 0..5 {
            let a = random_spd(seed, 5);
            let e = jacobi_eigen(&a).unwrap();
            let sum: f64 = e.eigenvalues.iter().sum();
            let prod: f64 = e.eigenvalues.iter().product();
            assert!((sum - a.trace()).abs() <= 1e-10 * a.trace().abs());
            let det = det_lu(&a);
            assert!((prod - det).abs() <= 1e-8 * det.abs(), "{prod} vs {det}");
        }
    }

    #[test]
    fn inverse_sqrt_examples() {
        let id = DenseMatrix::identity(3);
        assert!(inverse_sqrt_sym(&id).unwrap().max_abs_diff(&id) < 1e-15);
        let x = inverse_sqrt_sym(&DenseMatrix::from_diagonal(&[4.0, 9.0])).unwrap();
        assert!(x.max_abs_diff(&DenseMatrix::from_diagonal(&[0.5, 1.0 / 3.0])) < 1e-15);
    }

    #[test]
    fn inverse_sqrt_self_checks() {
        for seed in 0..5 {
            let a = random_spd(seed, 5);
            let x = inverse_sqrt_sym(&a).unwrap();
            assert!(x.asymmetry() <= 1e-12);
            let xax = x.matmul(&a).unwrap().matmul(&x).unwrap();
            assert!(xax.max_abs_diff(&DenseMatrix::identity(5)) < 1e-9);
            let xa = x.matmul(&a).unwrap();
            let ax = a.matmul(&x).unwrap();
            assert!(xa.max_abs_diff(&ax) < 1e-9);
        }
    }

    #[test]
    fn inverse_sqrt_rejects_singular() {
        let a = DenseMatrix::from_diagonal(&[1.0, 1e-14]);
        match inverse_sqrt_sym(&a) {
            Err(Error::Singular { smallest }) => assert_eq!(smallest, 1e-14),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn gram_determinant_examples() {
        assert_eq!(gram_determinant(&[&[1.0, 0.0], &[0.0, 1.0]]), 1.0);
        assert_eq!(gram_determinant(&[&[1.0, 0.0], &[2.0, 0.0]]), 0.0);
        let v = gram_determinant(&[&[1.0, 1.0, 0.0], &[0.0, 1.0, 1.0]]);
        assert!((v - 3f64.sqrt()).abs() < 1e-15);
        // three vectors go through the eigenvalue route: unit cube edges scaled
        let v3 = gram_determinant(&[&[2.0, 0.0, 0.0], &[0.0, 3.0, 0.0], &[1.0, 1.0, 0.5]]);
        assert!((v3 - 3.0).abs() < 1e-12);
    }

    #[test]
    fn gram_determinant_permutation_invariant() {
        let g = sample_gaussian_matrix(&mut RngStream::new(9, 0), 4, 5).unwrap();
        let rows: Vec<&[f64]> = (0..4).map(|i| g.row(i)).collect();
        let base = gram_determinant(&rows);
        let perm = [rows[2], rows[0], rows[3], rows[1]];
        assert!((gram_determinant(&perm) - base).abs() < 1e-12 * base.max(1.0));
        let pair = gram_determinant(&[rows[0], rows[1]]);
        assert!((gram_determinant(&[rows[1], rows[0]]) - pair).abs() < 1e-12);
    }

    #[test]
    fn tridiagonal_matches_jacobi() {
        let mut rng = RngStream::new(21, 0);
        for n in [1, 2, 7, 30] {
            let diag: Vec<f64> = (0..n).map(|_| rng.standard_normal()).collect();
            let off: Vec<f64> = (1..n).map(|_| rng.standard_normal()).collect();
            let mut a = DenseMatrix::from_diagonal(&diag);
            for (i, &b) in off.iter().enumerate() {
                a[(i, i + 1)] = b;
                a[(i + 1, i)] = b;
            }
            let (values, first) = tridiagonal_eigen(&diag, &off).unwrap();
            let eig = jacobi_eigen(&a).unwrap();
            for j in 0..n {
                let k = n - 1 - j;
                assert!((values[j] - eig.eigenvalues[k]).abs() < 1e-12);
                assert!((first[j].abs() - eig.eigenvectors[(0, k)].abs()).abs() < 1e-10);
            }
            let total: f64 = first.iter().map(|v| v * v).sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
        assert!(tridiagonal_eigen(&[1.0, 2.0], &[]).is_err());
    }
}
