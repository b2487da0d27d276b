//! Seeded samplers for every operator family.
//!
//! All randomness flows from a `u64` seed through ChaCha8, so a
//! `(kind, dim, seed)` triple always yields the same bits.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{hermitian_eig, ComplexMatrix, C64};
use crate::operators::OperatorKind;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut impl Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn gaussian_matrix(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |_, _| gaussian(rng))
}

fn normalized(m: ComplexMatrix) -> ComplexMatrix {
    let n = m.max_norm();
    if n > 0.0 {
        m.scale_real(1.0 / n)
    } else {
        m
    }
}

/// Haar-like unitary: Gram–Schmidt on the columns of a complex Gaussian
/// matrix (two passes for orthogonality to rounding level).
pub fn sample_unitary(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<C64> = (0..dim).map(|_| gaussian(rng)).collect();
        for _ in 0..2 {
            for u in &cols {
                let proj: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, a) in v.iter_mut().zip(u) {
                    *x -= proj * a;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue;
        }
        v.iter_mut().for_each(|x| *x /= norm);
        cols.push(v);
    }
    ComplexMatrix::from_fn(dim, |r, c| cols[c][r])
}

/// `U · diag(values) · U†`.
pub fn with_spectrum(u: &ComplexMatrix, values: &[f64]) -> ComplexMatrix {
    let n = u.dim();
    let mut out = ComplexMatrix::zeros(n);
    for (j, &l) in values.iter().enumerate() {
        if l == 0.0 {
            continue;
        }
        for r in 0..n {
            let a = u[(r, j)] * l;
            for c in 0..n {
                out[(r, c)] += a * u[(c, j)].conj();
            }
        }
    }
    out
}

fn sample_positive(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let rank = rng.random_range(1..=dim);
    let mut g = ComplexMatrix::zeros(dim);
    for r in 0..dim {
        for c in 0..rank {
            g[(r, c)] = gaussian(rng);
        }
    }
    normalized((&g * &g.dagger()).hermitian_part())
}

/// Samples an operator of the requested kind using the given generator.
pub fn sample_with(kind: OperatorKind, dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    assert!(dim >= 1, "dimension must be at least 1");
    match kind {
        OperatorKind::Bounded => normalized(gaussian_matrix(dim, rng)),
        OperatorKind::SelfAdjoint => normalized(gaussian_matrix(dim, rng).hermitian_part()),
        OperatorKind::Positive => sample_positive(dim, rng),
        OperatorKind::Density => {
            let p = sample_positive(dim, rng);
            let t = p.trace().re;
            p.scale_real(1.0 / t)
        }
        OperatorKind::Effect => {
            // Self-adjoint sample with its spectrum mapped affinely into a
            // random subinterval [lo, hi] of [0, 1].
            let a = gaussian_matrix(dim, rng).hermitian_part();
            let eig = hermitian_eig(&a, 1e-9).expect("hermitian by construction");
            let (max, min) = (eig.max_eigenvalue(), eig.min_eigenvalue());
            let (x, y): (f64, f64) = (rng.random(), rng.random());
            let (lo, hi) = (x.min(y), x.max(y));
            let spread = max - min;
            let values: Vec<f64> = eig
                .eigenvalues
                .iter()
                .map(|&l| {
                    if spread > 0.0 {
                        lo + (l - min) / spread * (hi - lo)
                    } else {
                        0.5 * (lo + hi)
                    }
                })
                .collect();
            with_spectrum(&eig.eigenvectors, &values).hermitian_part()
        }
        OperatorKind::Projection => {
            let rank = rng.random_range(0..=dim);
            let u = sample_unitary(dim, rng);
            let mut values = vec![0.0; dim];
            values[..rank].iter_mut().for_each(|v| *v = 1.0);
            with_spectrum(&u, &values).hermitian_part()
        }
    }
}

/// Deterministic sample of `kind` at dimension `dim` from `seed`.
pub fn sample(kind: OperatorKind, dim: usize, seed: u64) -> ComplexMatrix {
    sample_with(kind, dim, &mut rng_from_seed(seed))
}
