//! Effect algebras: the unit interval, powersets, effects and projections on
//! a Hilbert space, and a deliberately broken instance the law suite catches.
//!
//! ```text
//! cargo run --example effect_laws [samples] [seed]
//! ```

use qduality::effect::{
    law_suite, make_effects, make_planted_bug, make_powerset, make_projections, make_unit_interval,
};
use qduality::laws::LawReport;
use qduality::linalg::DEFAULT_TOL;

fn show(r: &LawReport) {
    println!("{:<12} pass = {:<5} ({} checks)", r.suite, r.pass, r.total_checked());
    for l in r.laws.iter().filter(|l| !l.passed()) {
        println!("    {} failed {} times, e.g. {}", l.law, l.violations, l.counterexample.as_ref().unwrap());
    }
}

fn main() {
    let mut args = std::env::args().skip(1);
    let samples = args.next().and_then(|s| s.parse().ok()).unwrap_or(200);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);

    show(&law_suite(&make_unit_interval(), samples, seed, 0.0));
    show(&law_suite(&make_powerset(8), samples, seed, 0.0));
    for dim in 2..=3 {
        show(&law_suite(&make_effects(dim, DEFAULT_TOL), samples, seed, DEFAULT_TOL));
        show(&law_suite(&make_projections(dim, DEFAULT_TOL), samples, seed, DEFAULT_TOL));
    }
    show(&law_suite(&make_planted_bug(), samples, seed, 0.0));
}
