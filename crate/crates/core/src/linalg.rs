//! Dense square complex matrices and a Hermitian eigensolver.
//!
//! Every operator in this crate is a [`ComplexMatrix`] written in a fixed
//! orthonormal basis `|0⟩, …, |n-1⟩`, stored row-major. The eigensolver is a
//! cyclic complex Jacobi iteration; it is small, deterministic and accurate to
//! a few ulps at the dimensions this crate targets (n ≲ 32).

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

/// Default absolute tolerance for membership and equality predicates.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Maximum number of cyclic Jacobi sweeps.
pub const MAX_SWEEPS: usize = 100;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Tolerance rescaled for an input of max-norm `norm`: absolute below 1,
/// relative above.
#[inline]
pub fn scaled_tol(tol: f64, norm: f64) -> f64 {
    tol * norm.max(1.0)
}

/// A dense `dim × dim` complex matrix, row-major.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(dim: usize, data: Vec<C64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidMatrix("dimension must be at least 1".into()));
        }
        if data.len() != dim * dim {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries for dimension {dim}, got {}",
                dim * dim,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidMatrix("entries must be finite".into()));
        }
        Ok(Self { dim, data })
    }

    /// Builds a matrix from rows. Panics on ragged or empty input; intended for
    /// literals in tests and examples.
    pub fn from_rows<R: AsRef<[C64]>>(rows: &[R]) -> Self {
        let dim = rows.len();
        assert!(dim > 0, "empty matrix");
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            let row = row.as_ref();
            assert_eq!(row.len(), dim, "matrix must be square");
            data.extend_from_slice(row);
        }
        Self::new(dim, data).expect("finite literal")
    }

    /// Real-valued literal version of [`from_rows`](Self::from_rows).
    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        assert!(dim > 0, "dimension must be at least 1");
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self { dim, data }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_fn(dim, |_, _| ZERO)
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |r, c| if r == c { ONE } else { ZERO })
    }

    pub fn diag(values: &[f64]) -> Self {
        Self::from_fn(values.len(), |r, c| {
            if r == c {
                C64::new(values[r], 0.0)
            } else {
                ZERO
            }
        })
    }

    /// A 1×1 matrix, i.e. a complex number seen as an operator on ℂ.
    pub fn scalar(z: C64) -> Self {
        Self { dim: 1, data: vec![z] }
    }

    pub fn pauli_x() -> Self {
        Self::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]])
    }

    pub fn pauli_y() -> Self {
        Self::from_rows(&[[ZERO, -I], [I, ZERO]])
    }

    pub fn pauli_z() -> Self {
        Self::diag(&[1.0, -1.0])
    }

    /// The matrix unit `|j⟩⟨k|`: a single 1 in row `j`, column `k`.
    pub fn outer_unit(j: usize, k: usize, dim: usize) -> Result<Self> {
        if dim == 0 || j >= dim || k >= dim {
            return Err(Error::IndexOutOfRange { row: j, col: k, dim });
        }
        let mut m = Self::zeros(dim);
        m[(j, k)] = ONE;
        Ok(m)
    }

    /// `|u⟩⟨v|` for column vectors `u`, `v`.
    pub fn ket_bra(u: &[C64], v: &[C64]) -> Self {
        assert_eq!(u.len(), v.len(), "ket and bra must have equal length");
        Self::from_fn(u.len(), |r, c| u[r] * v[c].conj())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<C64> {
        self.data
    }

    pub fn column(&self, c: usize) -> Vec<C64> {
        (0..self.dim).map(|r| self[(r, c)]).collect()
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|j| self[(j, j)]).sum()
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)])
    }

    pub fn scale(&self, z: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&a| a * z).collect(),
        }
    }

    pub fn scale_real(&self, r: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&a| a * r).collect(),
        }
    }

    /// Hermitian part `½(A + A†)`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.dim, |r, c| (self[(r, c)] + self[(c, r)].conj()) * 0.5)
    }

    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `‖A − A†‖_max`.
    pub fn hermitian_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            for c in r..self.dim {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_residual() <= scaled_tol(tol, self.max_norm())
    }

    /// `‖A − B‖_max`.
    pub fn max_diff(&self, other: &Self) -> Result<f64> {
        self.check_dim(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// True iff `‖A − B‖_max ≤ tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> Result<bool> {
        Ok(self.max_diff(other)? <= tol)
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.data[r * n + k];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                for (o, b) in out[r * n..(r + 1) * n].iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        Ok(Self { dim: n, data: out })
    }

    /// `tr(A·B)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Result<C64> {
        self.check_dim(other)?;
        let n = self.dim;
        let mut acc = ZERO;
        for j in 0..n {
            for k in 0..n {
                acc += self.data[j * n + k] * other.data[k * n + j];
            }
        }
        Ok(acc)
    }

    pub fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: other.dim,
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.dim + c]
    }
}

// The operator impls panic on dimension mismatch, like slice indexing. Use
// `matmul` / `max_diff` for the fallible variants.
impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("dimension mismatch")
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.scale_real(-1.0)
    }
}

impl Add for ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self + &rhs
    }
}

impl Sub for ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self - &rhs
    }
}

impl Mul for ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self * &rhs
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for r in 0..self.dim {
            write!(f, "  [")?;
            for c in 0..self.dim {
                let z = self[(r, c)];
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:.6}{:+.6}i", z.re, z.im)?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Wire form: `{"dim": n, "data": [[re, im], ...]}`, row-major, `n²` entries.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub data: Vec<[f64; 2]>,
}

impl From<ComplexMatrix> for MatrixJson {
    fn from(m: ComplexMatrix) -> Self {
        MatrixJson {
            dim: m.dim,
            data: m.data.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl TryFrom<MatrixJson> for ComplexMatrix {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Self> {
        ComplexMatrix::new(j.dim, j.data.iter().map(|&[re, im]| C64::new(re, im)).collect())
    }
}

/// Spectral decomposition `A = V·diag(λ)·V†` of a self-adjoint matrix.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Real eigenvalues, descending.
    pub eigenvalues: Vec<f64>,
    /// Unitary whose column `j` is the eigenvector of `eigenvalues[j]`.
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// `Σ_j f(λ_j) |v_j⟩⟨v_j|`, skipping terms where `f` returns zero.
    pub fn spectral_map(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.eigenvectors.dim();
        let mut out = ComplexMatrix::zeros(n);
        for (j, &lambda) in self.eigenvalues.iter().enumerate() {
            let w = f(lambda);
            if w == 0.0 {
                continue;
            }
            for r in 0..n {
                let vr = self.eigenvectors[(r, j)] * w;
                for c in 0..n {
                    out[(r, c)] += vr * self.eigenvectors[(c, j)].conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.spectral_map(|l| l)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn min_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("dim >= 1")
    }
}

fn off_diagonal_mass(a: &ComplexMatrix) -> (f64, f64) {
    let n = a.dim();
    let mut off = 0.0;
    let mut diag = 0.0;
    for r in 0..n {
        for c in 0..n {
            let m = a[(r, c)].norm_sqr();
            if r == c {
                diag += m;
            } else {
                off += m;
            }
        }
    }
    (off.sqrt(), diag.sqrt())
}

/// Eigendecomposition of a self-adjoint matrix by cyclic Jacobi rotations.
///
/// Fails with [`Error::NotHermitian`] when `‖A − A†‖_max` exceeds the
/// (scaled) tolerance. The iteration runs until the off-diagonal Frobenius
/// mass reaches rounding level; if the sweep budget runs out first, the
/// result is still accepted when that mass is at most `tol` times the
/// diagonal mass.
pub fn hermitian_eig(a: &ComplexMatrix, tol: f64) -> Result<EigenDecomposition> {
    let residual = a.hermitian_residual();
    if residual > scaled_tol(tol, a.max_norm()) {
        return Err(Error::NotHermitian { residual });
    }
    let n = a.dim();
    let mut m = a.hermitian_part();
    for j in 0..n {
        m[(j, j)].im = 0.0;
    }
    let mut v = ComplexMatrix::identity(n);
    let scale = m.frobenius_norm();
    let target = f64::EPSILON * scale * n as f64;

    let mut converged = n == 1 || scale == 0.0;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        sweeps += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q, target);
            }
        }
        let (off, _) = off_diagonal_mass(&m);
        converged = off <= target;
    }
    if !converged {
        let (off, diag) = off_diagonal_mass(&m);
        if off > tol * diag {
            return Err(Error::NoConvergence { sweeps, off });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    // Stable sort keeps Jacobi order among ties.
    order.sort_by(|&x, &y| m[(y, y)].re.total_cmp(&m[(x, x)].re));
    let eigenvalues = order.iter().map(|&j| m[(j, j)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// One Jacobi step annihilating `m[p][q]`: `m ← G† m G`, `v ← v G`.
fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, small: f64) {
    let b = m[(p, q)];
    let g = b.norm();
    if g == 0.0 || g <= small * 1e-3 {
        return;
    }
    let a = m[(p, p)].re;
    let d = m[(q, q)].re;
    // Phase e^{-iφ} makes the (p,q) entry real and positive, then a real
    // rotation [[c, s], [-s, c]] zeroes it.
    let phase = b / g;
    let tau = (d - a) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // G = diag(1, conj(phase)) · R
    let g_pp = C64::new(c, 0.0);
    let g_pq = C64::new(s, 0.0);
    let g_qp = phase.conj() * (-s);
    let g_qq = phase.conj() * c;

    let n = m.dim();
    for k in 0..n {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = mkp * g_pp + mkq * g_qp;
        m[(k, q)] = mkp * g_pq + mkq * g_qq;
    }
    for k in 0..n {
        let mpk = m[(p, k)];
        let mqk = m[(q, k)];
        m[(p, k)] = g_pp.conj() * mpk + g_qp.conj() * mqk;
        m[(q, k)] = g_pq.conj() * mpk + g_qq.conj() * mqk;
    }
    m[(p, q)] = ZERO;
    m[(q, p)] = ZERO;
    m[(p, p)].im = 0.0;
    m[(q, q)].im = 0.0;
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// Closed-form eigenvalues of a 2×2 Hermitian matrix from its
    /// characteristic polynomial.
    fn eig2_oracle(m: &ComplexMatrix) -> (f64, f64) {
        let a = m[(0, 0)].re;
        let d = m[(1, 1)].re;
        let b = m[(0, 1)].norm();
        let mid = 0.5 * (a + d);
        let rad = (0.25 * (a - d) * (a - d) + b * b).sqrt();
        (mid + rad, mid - rad)
    }

    #[test]
    fn trace_examples() {
        assert_eq!(ComplexMatrix::identity(2).trace(), c(2.0, 0.0));
        assert_eq!(ComplexMatrix::outer_unit(0, 1, 2).unwrap().trace(), ZERO);
        let m = ComplexMatrix::from_rows(&[[c(1.0, 0.0), c(0.0, 2.0)], [ZERO, c(3.0, 0.0)]]);
        assert_eq!(m.trace(), c(4.0, 0.0));
    }

    #[test]
    fn dagger_examples() {
        let id = ComplexMatrix::identity(3);
        assert_eq!(id.dagger(), id);
        let e01 = ComplexMatrix::outer_unit(0, 1, 2).unwrap();
        assert_eq!(e01.dagger(), ComplexMatrix::outer_unit(1, 0, 2).unwrap());
        let m = ComplexMatrix::from_rows(&[[ZERO, I], [ZERO, ZERO]]);
        let expect = ComplexMatrix::from_rows(&[[ZERO, ZERO], [-I, ZERO]]);
        assert_eq!(m.dagger(), expect);
    }

    #[test]
    fn outer_unit_examples() {
        assert_eq!(
            ComplexMatrix::outer_unit(0, 0, 1).unwrap(),
            ComplexMatrix::from_real_rows(&[[1.0]])
        );
        assert_eq!(
            ComplexMatrix::outer_unit(0, 1, 2).unwrap(),
            ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]])
        );
        assert_eq!(
            ComplexMatrix::outer_unit(1, 0, 2).unwrap(),
            ComplexMatrix::from_real_rows(&[[0.0, 0.0], [1.0, 0.0]])
        );
        assert!(matches!(
            ComplexMatrix::outer_unit(2, 0, 2),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn approx_eq_examples() {
        let id = ComplexMatrix::identity(2);
        assert!(id.approx_eq(&id, 1e-9).unwrap());
        assert!(!id.approx_eq(&ComplexMatrix::zeros(2), 1e-9).unwrap());
        let a = ComplexMatrix::pauli_y();
        let b = &a + &id.scale_real(1e-12);
        assert!(a.approx_eq(&b, 1e-9).unwrap());
        assert!(matches!(
            id.approx_eq(&ComplexMatrix::identity(3), 1e-9),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rejects_bad_construction() {
        assert!(ComplexMatrix::new(0, vec![]).is_err());
        assert!(ComplexMatrix::new(2, vec![ZERO; 3]).is_err());
        assert!(ComplexMatrix::new(1, vec![c(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn eig_identity() {
        let e = hermitian_eig(&ComplexMatrix::identity(2), DEFAULT_TOL).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 1.0]);
    }

    #[test]
    fn eig_pauli_x_matches_characteristic_polynomial() {
        let x = ComplexMatrix::pauli_x();
        let (hi, lo) = eig2_oracle(&x);
        let e = hermitian_eig(&x, DEFAULT_TOL).unwrap();
        assert!((e.eigenvalues[0] - hi).abs() < 1e-14);
        assert!((e.eigenvalues[1] - lo).abs() < 1e-14);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // eigenvectors up to phase: |⟨v|expected⟩| = 1
        for (j, expected) in [[s, s], [s, -s]].iter().enumerate() {
            let v = e.eigenvectors.column(j);
            let overlap: C64 = v.iter().zip(expected).map(|(a, &b)| a.conj() * b).sum();
            assert!((overlap.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn eig_complex_2x2_matches_oracle() {
        let m = ComplexMatrix::from_rows(&[[c(0.3, 0.0), c(0.2, -0.7)], [c(0.2, 0.7), c(-1.1, 0.0)]]);
        let (hi, lo) = eig2_oracle(&m);
        let e = hermitian_eig(&m, DEFAULT_TOL).unwrap();
        assert!((e.eigenvalues[0] - hi).abs() < 1e-14);
        assert!((e.eigenvalues[1] - lo).abs() < 1e-14);
        assert!(e.reconstruct().approx_eq(&m, 1e-14).unwrap());
    }

    #[test]
    fn eig_diagonal_sorts_descending() {
        let e = hermitian_eig(&ComplexMatrix::diag(&[3.0, 1.0, 2.0]), DEFAULT_TOL).unwrap();
        assert_eq!(e.eigenvalues, vec![3.0, 2.0, 1.0]);
        let perm = ComplexMatrix::from_real_rows(&[[1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0]]);
        assert_eq!(e.eigenvectors, perm);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m = ComplexMatrix::outer_unit(0, 1, 2).unwrap();
        assert!(matches!(hermitian_eig(&m, DEFAULT_TOL), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn eig_dim_one_and_zero_matrix() {
        let e = hermitian_eig(&ComplexMatrix::scalar(c(-0.25, 0.0)), DEFAULT_TOL).unwrap();
        assert_eq!(e.eigenvalues, vec![-0.25]);
        let e = hermitian_eig(&ComplexMatrix::zeros(4), DEFAULT_TOL).unwrap();
        assert_eq!(e.eigenvalues, vec![0.0; 4]);
        assert_eq!(e.eigenvectors, ComplexMatrix::identity(4));
    }

    #[test]
    fn json_encoding() {
        let m = ComplexMatrix::from_rows(&[[c(1.0, 0.0), c(0.0, 2.0)], [ZERO, c(3.0, -1.0)]]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"dim":2,"data":[[1.0,0.0],[0.0,2.0],[0.0,0.0],[3.0,-1.0]]}"#);
        let back: ComplexMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<ComplexMatrix>(r#"{"dim":2,"data":[[1.0,0.0]]}"#).is_err());
    }
}
