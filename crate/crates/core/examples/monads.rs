//! Formal sums, the multiset and distribution monads, and their algebras.
//!
//! ```text
//! cargo run --example monads
//! ```

use qduality::algebra::{monad_law_suite, Algebra, FormalSum, MatrixAlgebra, Scalar, Semiring};
use qduality::linalg::{ComplexMatrix, DEFAULT_TOL};
use qduality::operators::classify;

fn main() -> qduality::error::Result<()> {
    let nn = Semiring::NonNegRational;
    let phi = FormalSum::new(nn, [('x', Scalar::int(1)), ('y', Scalar::int(3))])?;
    let outer = FormalSum::new(nn, [(phi.clone(), Scalar::int(2))])?;
    println!("μ(2|{phi}⟩) = {}", outer.flatten()?);
    println!("collapse x, y to z: {}", phi.fmap(|_| 'z'));

    // Coin flip between two basis states, interpreted in DM(C²).
    let states = MatrixAlgebra::convex(vec![ComplexMatrix::diag(&[1.0, 0.0]), ComplexMatrix::diag(&[0.0, 1.0])]);
    let coin = FormalSum::distribution([(0usize, Scalar::ratio(1, 2)), (1, Scalar::ratio(1, 2))])?;
    let mixed = states.interpret(&coin)?;
    println!("½|0⟩⟨0| + ½|1⟩⟨1| = {mixed:?}kinds {:?}", classify(&mixed, DEFAULT_TOL).kinds());

    let report = monad_law_suite();
    println!("\nmonad law suite: pass = {}", report.pass);
    for law in &report.laws {
        println!("  {:<55} {:>6} checked, {} violations", law.law, law.checked, law.violations);
    }
    Ok(())
}
