//! Effect algebras and effect modules.
//!
//! An instance bundles a carrier with `0`, `1`, a partial sum `⊕` (returning
//! `None` where undefined), an orthosupplement and, for effect modules, a
//! `[0,1]`-action. [`law_suite`] checks the axioms on enumerated or sampled
//! elements and reports failures as data.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::laws::LawReport;
use crate::linalg::{hermitian_eig, scaled_tol, ComplexMatrix};
use crate::sampling::{rng_from_seed, sample_unitary, with_spectrum};

pub trait EffectAlgebra {
    type Elem: Clone;

    fn name(&self) -> String;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// `x ⊕ y`, or `None` when `x ⊥ y` fails.
    fn ovee(&self, x: &Self::Elem, y: &Self::Elem) -> Option<Self::Elem>;
    fn orth(&self, x: &Self::Elem) -> Self::Elem;
    /// Distance used for approximate equality; exact carriers return 0 or 1.
    fn distance(&self, x: &Self::Elem, y: &Self::Elem) -> f64;
    fn describe(&self, x: &Self::Elem) -> Value;
    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Elem;

    /// A decomposition `1 = x ⊕ y` built without calling [`Self::orth`], used
    /// to test uniqueness of the orthosupplement.
    fn sample_split(&self, rng: &mut ChaCha8Rng) -> (Self::Elem, Self::Elem);

    /// The full carrier when it is small enough to enumerate.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    /// `r • x`; `None` for plain effect algebras.
    fn scalar_mul(&self, _r: &BigRational, _x: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    fn is_module(&self) -> bool {
        false
    }
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `{ p/q : 0 ≤ p ≤ q ≤ max_den }` in increasing order.
pub fn farey(max_den: i64) -> Vec<BigRational> {
    let mut v: Vec<BigRational> = (1..=max_den)
        .flat_map(|q| (0..=q).map(move |p| ratio(p, q)))
        .collect();
    v.sort();
    v.dedup();
    v
}

/// `[0, 1]` with exact rational elements: `r ⊕ s = r + s` when `r + s ≤ 1`
/// and `r⊥ = 1 − r`.
#[derive(Debug, Clone)]
pub struct UnitInterval {
    pub max_den: i64,
}

pub fn make_unit_interval() -> UnitInterval {
    UnitInterval { max_den: 8 }
}

fn sample_farey(max_den: i64, rng: &mut ChaCha8Rng) -> BigRational {
    let q = rng.random_range(1..=max_den);
    ratio(rng.random_range(0..=q), q)
}

impl EffectAlgebra for UnitInterval {
    type Elem = BigRational;

    fn name(&self) -> String {
        "interval".into()
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn ovee(&self, x: &BigRational, y: &BigRational) -> Option<BigRational> {
        let s = x + y;
        (s <= BigRational::one()).then_some(s)
    }

    fn orth(&self, x: &BigRational) -> BigRational {
        BigRational::one() - x
    }

    fn distance(&self, x: &BigRational, y: &BigRational) -> f64 {
        if x == y { 0.0 } else { 1.0 }
    }

    fn describe(&self, x: &BigRational) -> Value {
        json!(x.to_string())
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> BigRational {
        sample_farey(self.max_den, rng)
    }

    fn sample_split(&self, rng: &mut ChaCha8Rng) -> (BigRational, BigRational) {
        let x = self.sample(rng);
        let y = BigRational::new(x.denom() - x.numer(), x.denom().clone());
        (x, y)
    }

    fn elements(&self) -> Option<Vec<BigRational>> {
        Some(farey(self.max_den))
    }

    fn scalar_mul(&self, r: &BigRational, x: &BigRational) -> Option<BigRational> {
        Some(r * x)
    }

    fn is_module(&self) -> bool {
        true
    }
}

/// The unit interval with the wrong orthosupplement `r⊥ = 1 − r/2`. Exists so
/// the suite can be seen to catch a broken instance.
#[derive(Debug, Clone)]
pub struct PlantedBug(pub UnitInterval);

pub fn make_planted_bug() -> PlantedBug {
    PlantedBug(make_unit_interval())
}

impl EffectAlgebra for PlantedBug {
    type Elem = BigRational;

    fn name(&self) -> String {
        "planted-bug".into()
    }

    fn zero(&self) -> BigRational {
        self.0.zero()
    }

    fn one(&self) -> BigRational {
        self.0.one()
    }

    fn ovee(&self, x: &BigRational, y: &BigRational) -> Option<BigRational> {
        self.0.ovee(x, y)
    }

    fn orth(&self, x: &BigRational) -> BigRational {
        BigRational::one() - x / ratio(2, 1)
    }

    fn distance(&self, x: &BigRational, y: &BigRational) -> f64 {
        self.0.distance(x, y)
    }

    fn describe(&self, x: &BigRational) -> Value {
        self.0.describe(x)
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> BigRational {
        self.0.sample(rng)
    }

    fn sample_split(&self, rng: &mut ChaCha8Rng) -> (BigRational, BigRational) {
        self.0.sample_split(rng)
    }

    fn elements(&self) -> Option<Vec<BigRational>> {
        self.0.elements()
    }
}

/// Subsets of `{0, …, n−1}` as bitmasks; `⊕` is disjoint union.
#[derive(Debug, Clone)]
pub struct Powerset {
    pub size: u32,
}

/// Carriers up to this size are checked exhaustively.
pub const POWERSET_ENUMERATION_LIMIT: u32 = 4;

pub fn make_powerset(universe_size: u32) -> Powerset {
    assert!(universe_size <= 16, "powerset universe limited to 16 points");
    Powerset { size: universe_size }
}

impl Powerset {
    fn full(&self) -> u32 {
        (1u32 << self.size) - 1
    }
}

impl EffectAlgebra for Powerset {
    type Elem = u32;

    fn name(&self) -> String {
        "powerset".into()
    }

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        self.full()
    }

    fn ovee(&self, x: &u32, y: &u32) -> Option<u32> {
        (x & y == 0).then_some(x | y)
    }

    fn orth(&self, x: &u32) -> u32 {
        !x & self.full()
    }

    fn distance(&self, x: &u32, y: &u32) -> f64 {
        if x == y { 0.0 } else { 1.0 }
    }

    fn describe(&self, x: &u32) -> Value {
        json!((0..self.size).filter(|i| x >> i & 1 == 1).collect::<Vec<_>>())
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> u32 {
        // Sparse sets, so that disjoint pairs and triples are common.
        (0..self.size).fold(0, |acc, i| if rng.random_bool(0.3) { acc | 1 << i } else { acc })
    }

    fn sample_split(&self, rng: &mut ChaCha8Rng) -> (u32, u32) {
        let mut x = 0;
        let mut y = 0;
        for i in 0..self.size {
            if rng.random_bool(0.5) {
                x |= 1 << i;
            } else {
                y |= 1 << i;
            }
        }
        (x, y)
    }

    fn elements(&self) -> Option<Vec<u32>> {
        (self.size <= POWERSET_ENUMERATION_LIMIT).then(|| (0..=self.full()).collect())
    }
}

/// Shared sampling frames: a few fixed orthonormal bases. Elements diagonal
/// in a common frame commute, which makes `⊥` pairs frequent.
#[derive(Debug, Clone)]
struct Frames(Vec<ComplexMatrix>);

impl Frames {
    fn new(dim: usize) -> Self {
        let mut rng = rng_from_seed(0x4652_414d_4553);
        Frames(vec![ComplexMatrix::identity(dim), sample_unitary(dim, &mut rng)])
    }

    fn pick(&self, rng: &mut ChaCha8Rng) -> &ComplexMatrix {
        &self.0[rng.random_range(0..self.0.len())]
    }
}

/// `Ef(H)`: operators `0 ≤ A ≤ I`, with `A ⊥ B` iff `A + B ≤ I`.
#[derive(Debug, Clone)]
pub struct Effects {
    pub dim: usize,
    pub tol: f64,
    frames: Frames,
}

pub fn make_effects(dim: usize, tol: f64) -> Effects {
    assert!(dim >= 1, "dimension must be at least 1");
    Effects {
        dim,
        tol,
        frames: Frames::new(dim),
    }
}

impl EffectAlgebra for Effects {
    type Elem = ComplexMatrix;

    fn name(&self) -> String {
        "effects".into()
    }

    fn zero(&self) -> ComplexMatrix {
        ComplexMatrix::zeros(self.dim)
    }

    fn one(&self) -> ComplexMatrix {
        ComplexMatrix::identity(self.dim)
    }

    fn ovee(&self, x: &ComplexMatrix, y: &ComplexMatrix) -> Option<ComplexMatrix> {
        let s = x + y;
        let eig = hermitian_eig(&s, self.tol).ok()?;
        (eig.max_eigenvalue() <= 1.0 + scaled_tol(self.tol, s.max_norm())).then_some(s)
    }

    fn orth(&self, x: &ComplexMatrix) -> ComplexMatrix {
        &self.one() - x
    }

    fn distance(&self, x: &ComplexMatrix, y: &ComplexMatrix) -> f64 {
        x.max_diff(y).unwrap_or(f64::INFINITY)
    }

    fn describe(&self, x: &ComplexMatrix) -> Value {
        serde_json::to_value(x).unwrap_or(Value::Null)
    }

    /// Mostly frame-diagonal effects with eigenvalues in eighths, biased
    /// toward small values; one in four is a generic effect scaled into
    /// `[0, ½·I]`.
    fn sample(&self, rng: &mut ChaCha8Rng) -> ComplexMatrix {
        if rng.random_bool(0.25) {
            let u = sample_unitary(self.dim, rng);
            let values: Vec<f64> = (0..self.dim).map(|_| 0.5 * rng.random::<f64>()).collect();
            return with_spectrum(&u, &values).hermitian_part();
        }
        let u = self.frames.pick(rng).clone();
        let top = if rng.random_bool(0.7) { 3 } else { 8 };
        let values: Vec<f64> = (0..self.dim)
            .map(|_| rng.random_range(0..=top) as f64 / 8.0)
            .collect();
        with_spectrum(&u, &values).hermitian_part()
    }

    fn sample_split(&self, rng: &mut ChaCha8Rng) -> (ComplexMatrix, ComplexMatrix) {
        let u = sample_unitary(self.dim, rng);
        let values: Vec<f64> = (0..self.dim).map(|_| rng.random()).collect();
        let rest: Vec<f64> = values.iter().map(|v| 1.0 - v).collect();
        (with_spectrum(&u, &values).hermitian_part(), with_spectrum(&u, &rest).hermitian_part())
    }

    fn scalar_mul(&self, r: &BigRational, x: &ComplexMatrix) -> Option<ComplexMatrix> {
        Some(x.scale_real(r.to_f64().unwrap_or(f64::NAN)))
    }

    fn is_module(&self) -> bool {
        true
    }
}

/// `Pr(H)`: projections, with `P ⊥ Q` iff `PQ = 0` (within tolerance).
#[derive(Debug, Clone)]
pub struct Projections {
    pub dim: usize,
    pub tol: f64,
    frames: Frames,
}

pub fn make_projections(dim: usize, tol: f64) -> Projections {
    assert!(dim >= 1, "dimension must be at least 1");
    Projections {
        dim,
        tol,
        frames: Frames::new(dim),
    }
}

fn column_projection(u: &ComplexMatrix, cols: impl Iterator<Item = bool>) -> ComplexMatrix {
    let values: Vec<f64> = cols.map(|b| if b { 1.0 } else { 0.0 }).collect();
    with_spectrum(u, &values).hermitian_part()
}

impl EffectAlgebra for Projections {
    type Elem = ComplexMatrix;

    fn name(&self) -> String {
        "projections".into()
    }

    fn zero(&self) -> ComplexMatrix {
        ComplexMatrix::zeros(self.dim)
    }

    fn one(&self) -> ComplexMatrix {
        ComplexMatrix::identity(self.dim)
    }

    fn ovee(&self, x: &ComplexMatrix, y: &ComplexMatrix) -> Option<ComplexMatrix> {
        ((x * y).max_norm() <= self.tol).then(|| x + y)
    }

    fn orth(&self, x: &ComplexMatrix) -> ComplexMatrix {
        &self.one() - x
    }

    fn distance(&self, x: &ComplexMatrix, y: &ComplexMatrix) -> f64 {
        x.max_diff(y).unwrap_or(f64::INFINITY)
    }

    fn describe(&self, x: &ComplexMatrix) -> Value {
        serde_json::to_value(x).unwrap_or(Value::Null)
    }

    /// Sums of frame vectors, each included with probability ⅓.
    fn sample(&self, rng: &mut ChaCha8Rng) -> ComplexMatrix {
        let u = self.frames.pick(rng).clone();
        let picks: Vec<bool> = (0..self.dim).map(|_| rng.random_bool(1.0 / 3.0)).collect();
        column_projection(&u, picks.into_iter())
    }

    fn sample_split(&self, rng: &mut ChaCha8Rng) -> (ComplexMatrix, ComplexMatrix) {
        let u = sample_unitary(self.dim, rng);
        let picks: Vec<bool> = (0..self.dim).map(|_| rng.random_bool(0.5)).collect();
        (
            column_projection(&u, picks.iter().copied()),
            column_projection(&u, picks.iter().map(|b| !b)),
        )
    }
}

/// A sampled instance draws this many elements per law unless told otherwise.
pub const DEFAULT_SAMPLES: usize = 500;

/// Checks the effect-algebra axioms (and the effect-module axioms when the
/// instance has a scalar action).
///
/// Enumerable instances are checked on all pairs and triples of elements,
/// with scalars drawn from the same Farey grid for modules; `samples` and
/// `seed` then only drive the split-based uniqueness check. Other instances
/// are checked on `samples` seeded draws. Equalities hold when the
/// instance's distance is at most `tol`.
pub fn law_suite<E: EffectAlgebra>(inst: &E, samples: usize, seed: u64, tol: f64) -> LawReport {
    let mut report = LawReport::new(inst.name(), seed);
    let mut rng = rng_from_seed(seed);
    let eq = |a: &E::Elem, b: &E::Elem| inst.distance(a, b) <= tol;
    let d = |x: &E::Elem| inst.describe(x);

    const COMM: &str = "commutativity";
    const ASSOC: &str = "associativity";
    const ZERO: &str = "zero";
    const ORTH: &str = "orthosupplement";
    const UNIQ: &str = "orthosupplement uniqueness";
    const ZERO_ONE: &str = "x ⊥ 1 ⇒ x = 0";
    for law in [COMM, ASSOC, ZERO, ORTH, UNIQ, ZERO_ONE] {
        report.declare(law);
    }

    let enumerated = inst.elements();
    let triples: Vec<(E::Elem, E::Elem, E::Elem)> = match &enumerated {
        Some(els) => {
            let mut v = Vec::with_capacity(els.len().pow(3));
            for x in els {
                for y in els {
                    for z in els {
                        v.push((x.clone(), y.clone(), z.clone()));
                    }
                }
            }
            v
        }
        None => (0..samples)
            .map(|_| (inst.sample(&mut rng), inst.sample(&mut rng), inst.sample(&mut rng)))
            .collect(),
    };
    let singles: Vec<E::Elem> = match &enumerated {
        Some(els) => els.clone(),
        None => triples.iter().map(|t| t.0.clone()).collect(),
    };
    let pairs: Vec<(E::Elem, E::Elem)> = match &enumerated {
        Some(els) => els
            .iter()
            .flat_map(|x| els.iter().map(move |y| (x.clone(), y.clone())))
            .collect(),
        None => triples.iter().map(|t| (t.0.clone(), t.1.clone())).collect(),
    };

    let zero = inst.zero();
    let one = inst.one();
    for x in &singles {
        let z = inst.ovee(&zero, x);
        report.check(ZERO, z.as_ref().is_some_and(|s| eq(s, x)), || json!({ "x": d(x) }));

        let xo = inst.orth(x);
        let s = inst.ovee(x, &xo);
        report.check(ORTH, s.as_ref().is_some_and(|s| eq(s, &one)), || {
            json!({ "x": d(x), "orth": d(&xo) })
        });

        if inst.ovee(x, &one).is_some() {
            report.check(ZERO_ONE, eq(x, &zero), || json!({ "x": d(x) }));
        }
    }

    for (x, y) in &pairs {
        let xy = inst.ovee(x, y);
        let yx = inst.ovee(y, x);
        let ok = match (&xy, &yx) {
            (Some(a), Some(b)) => eq(a, b),
            (None, None) => true,
            _ => false,
        };
        report.check(COMM, ok, || json!({ "x": d(x), "y": d(y) }));

        // Uniqueness over the checked pairs themselves.
        if let Some(s) = &xy {
            if eq(s, &one) {
                let xo = inst.orth(x);
                report.spread(UNIQ, inst.distance(y, &xo));
                report.check(UNIQ, eq(y, &xo), || json!({ "x": d(x), "y": d(y), "orth": d(&xo) }));
            }
        }
    }

    for _ in 0..samples {
        let (x, y) = inst.sample_split(&mut rng);
        let s = inst.ovee(&x, &y);
        let xo = inst.orth(&x);
        report.spread(UNIQ, inst.distance(&y, &xo));
        let ok = s.as_ref().is_some_and(|s| eq(s, &one)) && eq(&y, &xo);
        report.check(UNIQ, ok, || json!({ "x": d(&x), "y": d(&y), "orth": d(&xo) }));
    }

    for (x, y, z) in &triples {
        let Some(xy) = inst.ovee(x, y) else { continue };
        let Some(lhs) = inst.ovee(&xy, z) else { continue };
        let rhs = inst.ovee(y, z).and_then(|yz| inst.ovee(x, &yz));
        report.check(ASSOC, rhs.as_ref().is_some_and(|r| eq(r, &lhs)), || {
            json!({ "x": d(x), "y": d(y), "z": d(z) })
        });
    }

    if inst.is_module() {
        module_laws(inst, &mut report, &mut rng, &singles, &pairs, enumerated.is_some(), tol);
    }
    report
}

fn module_laws<E: EffectAlgebra>(
    inst: &E,
    report: &mut LawReport,
    rng: &mut ChaCha8Rng,
    singles: &[E::Elem],
    pairs: &[(E::Elem, E::Elem)],
    exhaustive: bool,
    tol: f64,
) {
    const UNIT: &str = "1 • x = x";
    const MUL: &str = "(r·s) • x = r • (s • x)";
    const DIST_SCALAR: &str = "(r + s) • x = r • x ⊕ s • x";
    const DIST_ELEM: &str = "r • (x ⊕ y) = r • x ⊕ r • y";
    for law in [UNIT, MUL, DIST_SCALAR, DIST_ELEM] {
        report.declare(law);
    }
    let eq = |a: &E::Elem, b: &E::Elem| inst.distance(a, b) <= tol;
    let d = |x: &E::Elem| inst.describe(x);
    let act = |r: &BigRational, x: &E::Elem| inst.scalar_mul(r, x).expect("module instance");
    let grid = farey(8);

    // Exhaustive runs pair every scalar pair with every element; sampled
    // runs draw one scalar pair per element.
    let scalar_pairs = |rng: &mut ChaCha8Rng| -> Vec<(BigRational, BigRational)> {
        if exhaustive {
            grid.iter()
                .flat_map(|r| grid.iter().map(move |s| (r.clone(), s.clone())))
                .collect()
        } else {
            vec![(sample_farey(8, rng), sample_farey(8, rng))]
        }
    };

    for x in singles {
        report.check(UNIT, eq(&act(&BigRational::one(), x), x), || json!({ "x": d(x) }));
        for (r, s) in scalar_pairs(rng) {
            let w = || json!({ "r": r.to_string(), "s": s.to_string(), "x": d(x) });
            let lhs = act(&(&r * &s), x);
            report.check(MUL, eq(&lhs, &act(&r, &act(&s, x))), w);
            let sum = &r + &s;
            if sum <= BigRational::one() {
                let rhs = inst.ovee(&act(&r, x), &act(&s, x));
                let ok = rhs.as_ref().is_some_and(|v| eq(v, &act(&sum, x)));
                report.check(DIST_SCALAR, ok, w);
            }
        }
    }

    for (x, y) in pairs {
        let Some(xy) = inst.ovee(x, y) else { continue };
        let scalars: Vec<BigRational> = if exhaustive {
            grid.clone()
        } else {
            vec![sample_farey(8, rng)]
        };
        for r in scalars {
            let rhs = inst.ovee(&act(&r, x), &act(&r, y));
            let ok = rhs.as_ref().is_some_and(|v| eq(v, &act(&r, &xy)));
            report.check(DIST_ELEM, ok, || json!({ "r": r.to_string(), "x": d(x), "y": d(y) }));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::{check_contract, hs_forward};
    use crate::operators::{loewner_leq, OperatorKind};
    use crate::sampling::sample;

    fn q(n: i64, d: i64) -> BigRational {
        ratio(n, d)
    }

    #[test]
    fn unit_interval_examples() {
        let u = make_unit_interval();
        assert_eq!(u.ovee(&q(3, 10), &q(4, 10)), Some(q(7, 10)));
        assert_eq!(u.ovee(&q(6, 10), &q(6, 10)), None);
        assert_eq!(u.orth(&q(3, 10)), q(7, 10));
        assert_eq!(farey(8).len(), 23);
    }

    #[test]
    fn powerset_examples() {
        let p = make_powerset(3);
        assert_eq!(p.ovee(&0b001, &0b010), Some(0b011));
        assert_eq!(p.ovee(&0b001, &0b001), None);
        assert_eq!(p.orth(&0), 0b111);
        assert_eq!(p.describe(&0b101), json!([0, 2]));
    }

    #[test]
    fn effects_examples() {
        let e = make_effects(2, 1e-9);
        let s = e.ovee(&ComplexMatrix::diag(&[0.3, 0.2]), &ComplexMatrix::diag(&[0.5, 0.5]));
        assert!(s.unwrap().approx_eq(&ComplexMatrix::diag(&[0.8, 0.7]), 1e-15).unwrap());
        let a = sample(OperatorKind::Effect, 2, 4);
        assert!(e.ovee(&e.one(), &a).is_none() || a.max_norm() <= 1e-9);
        let half = e.scalar_mul(&q(1, 2), &e.one()).unwrap();
        assert!(e.orth(&half).approx_eq(&half, 0.0).unwrap());
    }

    #[test]
    fn projections_examples() {
        let p = make_projections(2, 1e-9);
        let p0 = ComplexMatrix::diag(&[1.0, 0.0]);
        let p1 = ComplexMatrix::diag(&[0.0, 1.0]);
        assert_eq!(p.ovee(&p0, &p1), Some(ComplexMatrix::identity(2)));
        assert_eq!(p.ovee(&p0, &p0), None);
        let r = sample(OperatorKind::Projection, 2, 9);
        assert!(p.ovee(&p.orth(&r), &r).unwrap().approx_eq(&p.one(), 1e-12).unwrap());
    }

    #[test]
    fn effect_sum_agrees_with_loewner() {
        let e = make_effects(3, 1e-9);
        let mut rng = rng_from_seed(5);
        let mut defined = 0;
        for _ in 0..200 {
            let (a, b) = (e.sample(&mut rng), e.sample(&mut rng));
            let sum = &a + &b;
            let leq = loewner_leq(&sum, &e.one(), 1e-9).unwrap();
            match e.ovee(&a, &b) {
                Some(s) => {
                    defined += 1;
                    assert!(leq);
                    assert_eq!(s, sum);
                }
                None => assert!(!leq),
            }
        }
        assert!(defined > 20, "sampler rarely produces orthogonal pairs: {defined}");
    }

    #[test]
    fn shipped_instances_pass() {
        let r = law_suite(&make_unit_interval(), 50, 0, 0.0);
        assert!(r.pass, "{}", serde_json::to_string(&r).unwrap());
        let r = law_suite(&make_powerset(3), 50, 0, 0.0);
        assert!(r.pass);
        let r = law_suite(&make_powerset(10), 200, 1, 0.0);
        assert!(r.pass && r.law("associativity").unwrap().checked > 10);
        for dim in 2..=3 {
            let r = law_suite(&make_effects(dim, 1e-9), 100, 3, 1e-9);
            assert!(r.pass, "{}", serde_json::to_string(&r).unwrap());
            assert!(r.law("associativity").unwrap().checked > 0);
            let r = law_suite(&make_projections(dim, 1e-9), 100, 3, 1e-9);
            assert!(r.pass, "{}", serde_json::to_string(&r).unwrap());
        }
    }

    #[test]
    fn planted_bug_is_caught() {
        let r = law_suite(&make_planted_bug(), 20, 0, 0.0);
        assert!(!r.pass);
        let uniq = r.law("orthosupplement uniqueness").unwrap();
        assert!(uniq.violations > 0);
        assert!(uniq.counterexample.is_some());
        assert!(!r.law("orthosupplement").unwrap().passed());
    }

    #[test]
    fn reports_are_deterministic() {
        let a = law_suite(&make_effects(2, 1e-9), 30, 11, 1e-9);
        let b = law_suite(&make_effects(2, 1e-9), 30, 11, 1e-9);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn hom_set_operations_stay_affine() {
        // Functionals tr(A·−) for A ⊥ B add to tr((A + B)·−) and scale.
        let e = make_effects(3, 1e-9);
        let mut rng = rng_from_seed(8);
        let mut seen = 0;
        while seen < 20 {
            let (a, b) = (e.sample(&mut rng), e.sample(&mut rng));
            let Some(_) = e.ovee(&a, &b) else { continue };
            seen += 1;
            let fa = hs_forward(OperatorKind::Effect, &a, 1e-9).unwrap();
            let fb = hs_forward(OperatorKind::Effect, &b, 1e-9).unwrap();
            check_contract(&fa.add(&fb), 1e-9).unwrap();
            check_contract(&fa.scale(0.375), 1e-9).unwrap();
        }
    }
}
