//! Hilbert–Schmidt duality: turn an operator into a trace functional and
//! recover it from nothing but evaluations of that functional.
//!
//! ```text
//! cargo run --example duality
//! ```

use qduality::duality::{hs_forward, hs_inverse, roundtrip, Functional};
use qduality::linalg::{ComplexMatrix, DEFAULT_TOL};
use qduality::operators::{sample, OperatorKind};

fn main() -> qduality::error::Result<()> {
    // A density ρ gives the effect-module map E ↦ tr(ρE) on effects.
    let rho = sample(OperatorKind::Density, 3, 7);
    let f = hs_forward(OperatorKind::Density, &rho, DEFAULT_TOL)?;
    let back = hs_inverse(OperatorKind::Density, &f, DEFAULT_TOL)?;
    println!("density recovered, max error {:.1e}", back.max_diff(&rho)?);

    // A functional written by hand: the expectation of Z on a qubit state,
    // rescaled into [0, 1]. Its representing effect is |0><0|.
    let z = ComplexMatrix::pauli_z();
    let g = Functional::real(OperatorKind::Effect, 2, move |rho| {
        0.5 * (1.0 + z.trace_product(rho).map_or(f64::NAN, |t| t.re))
    });
    let e = hs_inverse(OperatorKind::Effect, &g, DEFAULT_TOL)?;
    println!("effect of ρ ↦ (1 + <Z>)/2:\n{e:?}");

    // A functional that is not affine on states is rejected.
    let bad = Functional::real(OperatorKind::Effect, 2, |rho| rho[(0, 0)].re.powi(2));
    println!("non-affine functional: {:?}", hs_inverse(OperatorKind::Effect, &bad, DEFAULT_TOL).err());

    println!("\nround trips (operator and functional residuals), dim 4, seed 1:");
    for kind in OperatorKind::DUALIZABLE {
        let r = roundtrip(kind, 4, 1, 50, DEFAULT_TOL)?;
        println!("  {kind:<12} {:.1e}  {:.1e}", r.operator, r.functional);
    }
    Ok(())
}
