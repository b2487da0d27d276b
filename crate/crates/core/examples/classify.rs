//! Classify a few operators into the families B ⊇ SA ⊇ Pos ⊇ Ef ⊇ Pr and DM.
//!
//! ```text
//! cargo run --example classify
//! ```

use qduality::linalg::{ComplexMatrix, DEFAULT_TOL};
use qduality::operators::{classify, loewner_leq, pos_neg_split};

fn main() -> qduality::error::Result<()> {
    let named = [
        ("I/2", ComplexMatrix::identity(2).scale_real(0.5)),
        ("|0><0|", ComplexMatrix::diag(&[1.0, 0.0])),
        ("Pauli X", ComplexMatrix::pauli_x()),
        ("diag(2, 1)", ComplexMatrix::diag(&[2.0, 1.0])),
        ("|0><1|", ComplexMatrix::outer_unit(0, 1, 2)?),
    ];
    for (name, a) in &named {
        let r = classify(a, DEFAULT_TOL);
        println!("{name:>10}: {:?}  eigenvalues {:?}", r.kinds(), r.eigenvalues);
    }

    let x = ComplexMatrix::pauli_x();
    let (p, n) = pos_neg_split(&x, DEFAULT_TOL)?;
    println!("\nPauli X = P - N with\nP = {p:?}\nN = {n:?}");

    let half = ComplexMatrix::identity(2).scale_real(0.5);
    let id = ComplexMatrix::identity(2);
    println!("I/2 <= I: {}", loewner_leq(&half, &id, DEFAULT_TOL)?);
    println!("I <= I/2: {}", loewner_leq(&id, &half, DEFAULT_TOL)?);
    Ok(())
}
