//! Weakest preconditions of effects under unitary, mixed and superoperator
//! channels, including the transpose map which is positive but not
//! completely positive.
//!
//! ```text
//! cargo run --example weakest_precondition
//! ```

use qduality::algebra::Scalar;
use qduality::linalg::{ComplexMatrix, DEFAULT_TOL};
use qduality::operators::{rng_from_seed, sample, OperatorKind};
use qduality::wp::{apply_channel, duality_residual, sample_channel, wp, Channel, Variant};

fn main() -> qduality::error::Result<()> {
    let ket0 = ComplexMatrix::diag(&[1.0, 0.0]);
    let flip = Channel::Unitary(ComplexMatrix::pauli_x());
    println!("wp(X, |0><0|) =\n{:?}", wp(&flip, &ket0, DEFAULT_TOL)?);

    // Flip with probability 1/4.
    let noisy = Channel::mixture(
        vec![Scalar::ratio(3, 4), Scalar::ratio(1, 4)],
        vec![Channel::identity(2), flip.clone()],
    )?;
    println!("noisy flip of |0><0| =\n{:?}", apply_channel(&noisy, &ket0, DEFAULT_TOL)?);
    println!("wp(noisy flip, |0><0|) =\n{:?}", wp(&noisy, &ket0, DEFAULT_TOL)?);

    let t = Channel::transpose(2);
    let a = sample(OperatorKind::Effect, 2, 5);
    let wt = wp(&t, &a, DEFAULT_TOL)?;
    println!("transpose map: wp(T, A) = A^T up to {:.1e}", wt.max_diff(&a.transpose())?);

    println!("\nduality residual |tr(wp(f,A)ρ) - tr(A f(ρ))| over 100 states, dim 3:");
    let mut rng = rng_from_seed(11);
    for variant in Variant::ALL {
        let f = sample_channel(variant, 3, &mut rng);
        let a = sample(OperatorKind::Effect, 3, 2);
        let w = wp(&f, &a, DEFAULT_TOL)?;
        println!("  {variant:?}: {:.1e}", duality_residual(&f, &a, &w, 100, 0)?);
    }
    println!("\nchannel JSON: {}", serde_json::to_string(&noisy).expect("serializable"));
    Ok(())
}
