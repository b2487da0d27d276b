//! The chain DM(H) → Pos(H) → SA(H) → B(H): weighted states, formal
//! differences and complex pairs.
//!
//! ```text
//! cargo run --example free_constructions
//! ```

use num_rational::BigRational;
use qduality::free::{
    c_iso_inverse, c_iso_sa_b, iso_roundtrip, r_iso_inverse, r_iso_pos_sa, s_add, s_iso_dm_pos,
    s_iso_inverse, CPair, Densities, SElement, Which,
};
use qduality::linalg::{ComplexMatrix, DEFAULT_TOL};
use qduality::operators::{sample, OperatorKind};

fn main() -> qduality::error::Result<()> {
    let dim = 2;
    let carrier = Densities { dim };
    let u = SElement::new(BigRational::from_integer(2.into()), ComplexMatrix::diag(&[1.0, 0.0]));
    let v = SElement::new(BigRational::from_integer(1.into()), ComplexMatrix::diag(&[0.0, 1.0]));
    let w = s_add(&u, &v, &carrier);
    println!("(2, |0><0|) + (1, |1><1|) = weight {}, point\n{:?}", w.weight(), match &w {
        SElement::Point { point, .. } => point.clone(),
        SElement::Zero => ComplexMatrix::zeros(dim),
    });
    println!("as a positive operator: {:?}", s_iso_dm_pos(&w, dim));

    // Decompose a bounded operator all the way down to weighted states.
    let b = sample(OperatorKind::Bounded, dim, 3);
    let CPair { re, im } = c_iso_inverse(&b);
    let mut rebuilt = Vec::new();
    for part in [&re, &im] {
        let pair = r_iso_inverse(part, DEFAULT_TOL)?;
        let pos = s_iso_inverse(&pair.pos, DEFAULT_TOL)?;
        let neg = s_iso_inverse(&pair.neg, DEFAULT_TOL)?;
        println!("weights of the positive and negative parts: {} and {}", pos.weight(), neg.weight());
        let back = qduality::free::RPair::new(s_iso_dm_pos(&pos, dim), s_iso_dm_pos(&neg, dim));
        rebuilt.push(r_iso_pos_sa(&back, DEFAULT_TOL)?);
    }
    let b2 = c_iso_sa_b(&CPair::new(rebuilt[0].clone(), rebuilt[1].clone()), DEFAULT_TOL)?;
    println!("rebuilt bounded operator, max error {:.1e}", b2.max_diff(&b)?);

    println!("\nworst residual over 20 seeds, dim 3:");
    for which in Which::ALL {
        let worst = (0..20)
            .map(|s| iso_roundtrip(which, 3, s, DEFAULT_TOL).map(|r| r.max()))
            .collect::<qduality::error::Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        println!("  {which:<6} {worst:.1e}");
    }
    Ok(())
}
