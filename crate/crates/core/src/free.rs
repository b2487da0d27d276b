//! Free constructions between convex sets, cones, real and complex vector
//! spaces, and the concrete isomorphisms
//! `S(DM(H)) ≅ Pos(H)`, `R(Pos(H)) ≅ SA(H)`, `C(SA(H)) ≅ B(H)`.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::Serialize;

use crate::algebra::Scalar;
use crate::error::{Error, Result};
use crate::linalg::{scaled_tol, ComplexMatrix, C64, I};
use crate::operators::{classify, pos_neg_split, sa_components, OperatorKind};
use crate::sampling::{rng_from_seed, sample_with};

/// A convex set: a carrier closed under binary convex combinations.
pub trait ConvexSet {
    type Point: Clone;

    /// `s·x + (1 − s)·y` for `s ∈ [0, 1]`.
    fn mix(&self, s: f64, x: &Self::Point, y: &Self::Point) -> Self::Point;
}

/// `[0, 1]` as a convex set.
#[derive(Debug, Clone, Copy)]
pub struct IntervalConvex;

impl ConvexSet for IntervalConvex {
    type Point = f64;

    fn mix(&self, s: f64, x: &f64, y: &f64) -> f64 {
        s * x + (1.0 - s) * y
    }
}

/// Density matrices of a fixed dimension.
#[derive(Debug, Clone, Copy)]
pub struct Densities {
    pub dim: usize,
}

impl ConvexSet for Densities {
    type Point = ComplexMatrix;

    fn mix(&self, s: f64, x: &ComplexMatrix, y: &ComplexMatrix) -> ComplexMatrix {
        &x.scale_real(s) + &y.scale_real(1.0 - s)
    }
}

/// An element of `S(X) = {0} + ℝ>0 × X`. Weights are exact rationals.
#[derive(Debug, Clone, PartialEq)]
pub enum SElement<P> {
    Zero,
    Point { weight: BigRational, point: P },
}

impl<P: Clone> SElement<P> {
    /// `(weight, point)`; a non-positive weight gives [`SElement::Zero`].
    pub fn new(weight: BigRational, point: P) -> Self {
        if weight.is_positive() {
            SElement::Point { weight, point }
        } else {
            SElement::Zero
        }
    }

    pub fn weight(&self) -> BigRational {
        match self {
            SElement::Zero => BigRational::zero(),
            SElement::Point { weight, .. } => weight.clone(),
        }
    }

    /// `r • (s, x) = (r·s, x)`, and `0 • u = 0`.
    pub fn scale(&self, r: &BigRational) -> Self {
        match self {
            SElement::Zero => SElement::Zero,
            SElement::Point { weight, point } => SElement::new(r * weight, point.clone()),
        }
    }
}

/// `(s, x) + (t, y) = (s + t, (s/(s+t))·x + (t/(s+t))·y)`, with `0` as unit.
pub fn s_add<C: ConvexSet>(u: &SElement<C::Point>, v: &SElement<C::Point>, carrier: &C) -> SElement<C::Point> {
    match (u, v) {
        (SElement::Zero, w) | (w, SElement::Zero) => w.clone(),
        (SElement::Point { weight: s, point: x }, SElement::Point { weight: t, point: y }) => {
            let total = s + t;
            let share = (s / &total).to_f64().unwrap_or(f64::NAN);
            SElement::Point {
                weight: total,
                point: carrier.mix(share, x, y),
            }
        }
    }
}

fn rational(x: f64) -> BigRational {
    BigRational::from_f64(x).unwrap_or_else(BigRational::zero)
}

/// `(r, ρ) ↦ r·ρ` and `0 ↦ 0`.
pub fn s_iso_dm_pos(u: &SElement<ComplexMatrix>, dim: usize) -> ComplexMatrix {
    match u {
        SElement::Zero => ComplexMatrix::zeros(dim),
        SElement::Point { weight, point } => point.scale_real(weight.to_f64().unwrap_or(f64::NAN)),
    }
}

/// `B ↦ (tr B, B / tr B)`, or `0` when `tr B ≤ tol`.
pub fn s_iso_inverse(b: &ComplexMatrix, tol: f64) -> Result<SElement<ComplexMatrix>> {
    if !classify(b, tol).positive {
        return Err(Error::NotPositive);
    }
    let t = b.trace().re;
    if t <= tol {
        return Ok(SElement::Zero);
    }
    Ok(SElement::new(rational(t), b.scale_real(1.0 / t)))
}

/// A formal difference `pos − neg`. Two pairs are identified when
/// `pos₁ + neg₂ = pos₂ + neg₁`, which suffices on cancellative carriers.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RPair<T> {
    pub pos: T,
    pub neg: T,
}

impl<T> RPair<T> {
    pub fn new(pos: T, neg: T) -> Self {
        Self { pos, neg }
    }

    /// `−[x, y] = [y, x]`.
    pub fn negate(self) -> Self {
        Self {
            pos: self.neg,
            neg: self.pos,
        }
    }
}

impl RPair<ComplexMatrix> {
    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.pos + &other.pos, &self.neg + &other.neg)
    }

    /// `‖(pos₁ + neg₂) − (pos₂ + neg₁)‖_max`.
    pub fn equivalence_residual(&self, other: &Self) -> Result<f64> {
        (&self.pos + &other.neg).max_diff(&(&other.pos + &self.neg))
    }
}

impl RPair<BigRational> {
    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.pos + &other.pos, &self.neg + &other.neg)
    }

    pub fn equivalent(&self, other: &Self) -> bool {
        &self.pos + &other.neg == &other.pos + &self.neg
    }
}

/// `[B₁, B₂] ↦ B₁ − B₂` for positive `B₁, B₂`.
pub fn r_iso_pos_sa(p: &RPair<ComplexMatrix>, tol: f64) -> Result<ComplexMatrix> {
    p.pos.check_dim(&p.neg)?;
    for m in [&p.pos, &p.neg] {
        let r = m.hermitian_residual();
        if r > scaled_tol(tol, m.max_norm()) {
            return Err(Error::NotHermitian { residual: r });
        }
        if !classify(m, tol).positive {
            return Err(Error::NotPositive);
        }
    }
    Ok(&p.pos - &p.neg)
}

/// `A ↦ [A_p, A_n]` via the spectral split.
pub fn r_iso_inverse(a: &ComplexMatrix, tol: f64) -> Result<RPair<ComplexMatrix>> {
    let (pos, neg) = pos_neg_split(a, tol)?;
    Ok(RPair::new(pos, neg))
}

/// `R(ℝ≥0) ≅ ℝ`: `[a, b] ↦ a − b`.
pub fn r_iso_scalar(p: &RPair<BigRational>) -> Result<BigRational> {
    if p.pos.is_negative() || p.neg.is_negative() {
        return Err(Error::NotPositive);
    }
    Ok(&p.pos - &p.neg)
}

/// `x ↦ [max(x, 0), max(−x, 0)]`.
pub fn r_iso_scalar_inverse(x: &BigRational) -> RPair<BigRational> {
    if x.is_negative() {
        RPair::new(BigRational::zero(), -x)
    } else {
        RPair::new(x.clone(), BigRational::zero())
    }
}

/// A pair `(x₁, x₂)` read as `x₁ + i·x₂`, with the complex action
/// `(a + ib)•(x₁, x₂) = (a·x₁ − b·x₂, b·x₁ + a·x₂)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CPair<T> {
    pub re: T,
    pub im: T,
}

impl<T> CPair<T> {
    pub fn new(re: T, im: T) -> Self {
        Self { re, im }
    }
}

impl CPair<ComplexMatrix> {
    pub fn act(&self, z: C64) -> Self {
        Self::new(
            &self.re.scale_real(z.re) - &self.im.scale_real(z.im),
            &self.re.scale_real(z.im) + &self.im.scale_real(z.re),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.re + &other.re, &self.im + &other.im)
    }

    pub fn max_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.re.max_diff(&other.re)?.max(self.im.max_diff(&other.im)?))
    }
}

impl CPair<BigRational> {
    pub fn act(&self, z: &Scalar) -> Self {
        Self::new(
            &z.re * &self.re - &z.im * &self.im,
            &z.im * &self.re + &z.re * &self.im,
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.re + &other.re, &self.im + &other.im)
    }
}

/// `(B₁, B₂) ↦ B₁ + i·B₂` for self-adjoint `B₁, B₂`.
pub fn c_iso_sa_b(p: &CPair<ComplexMatrix>, tol: f64) -> Result<ComplexMatrix> {
    p.re.check_dim(&p.im)?;
    for m in [&p.re, &p.im] {
        let r = m.hermitian_residual();
        if r > scaled_tol(tol, m.max_norm()) {
            return Err(Error::NotHermitian { residual: r });
        }
    }
    Ok(&p.re + &p.im.scale(I))
}

/// `A ↦ (½(A + A†), ½(−iA + iA†))`.
pub fn c_iso_inverse(a: &ComplexMatrix) -> CPair<ComplexMatrix> {
    let (re, im) = sa_components(a);
    CPair::new(re, im)
}

/// `C(ℝ) ≅ ℂ`: `(a, b) ↦ a + ib`.
pub fn c_iso_scalar(p: &CPair<BigRational>) -> Scalar {
    Scalar::new(p.re.clone(), p.im.clone())
}

pub fn c_iso_scalar_inverse(z: &Scalar) -> CPair<BigRational> {
    CPair::new(z.re.clone(), z.im.clone())
}

/// Which isomorphism a residual run exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    S,
    R,
    C,
    Chain,
}

impl Which {
    pub const ALL: [Which; 4] = [Which::S, Which::R, Which::C, Which::Chain];
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Which::S => "s",
            Which::R => "r",
            Which::C => "c",
            Which::Chain => "chain",
        };
        f.write_str(s)
    }
}

impl FromStr for Which {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "s" => Ok(Which::S),
            "r" => Ok(Which::R),
            "c" => Ok(Which::C),
            "chain" => Ok(Which::Chain),
            other => Err(Error::Parse(format!("unknown construction '{other}'"))),
        }
    }
}

/// Residuals of one seeded run: `forward∘inverse` measured on the target
/// side, `inverse∘forward` on the free side (up to the relevant
/// equivalence), and the structure-preservation check of the forward map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IsoResidual {
    pub forward_inverse: f64,
    pub inverse_forward: f64,
    pub structure: f64,
}

impl IsoResidual {
    pub fn max(&self) -> f64 {
        self.forward_inverse.max(self.inverse_forward).max(self.structure)
    }
}

fn sample_weight(rng: &mut impl Rng) -> BigRational {
    BigRational::new(rng.random_range(1..=32).into(), 8.into())
}

fn sample_s(dim: usize, rng: &mut impl Rng) -> SElement<ComplexMatrix> {
    SElement::new(sample_weight(rng), sample_with(OperatorKind::Density, dim, rng))
}

/// Runs the round trips for `which` on operators sampled from `seed`.
pub fn iso_roundtrip(which: Which, dim: usize, seed: u64, tol: f64) -> Result<IsoResidual> {
    let mut rng = rng_from_seed(seed);
    match which {
        Which::S => {
            let carrier = Densities { dim };
            let b = sample_with(OperatorKind::Positive, dim, &mut rng);
            let forward_inverse = s_iso_dm_pos(&s_iso_inverse(&b, tol)?, dim).max_diff(&b)?;

            let u = sample_s(dim, &mut rng);
            let back = s_iso_inverse(&s_iso_dm_pos(&u, dim), tol)?;
            let inverse_forward = match (&u, &back) {
                (SElement::Point { weight: w1, point: p1 }, SElement::Point { weight: w2, point: p2 }) => {
                    let w = (w1 - w2).abs().to_f64().unwrap_or(f64::INFINITY);
                    w.max(p1.max_diff(p2)?)
                }
                _ => f64::INFINITY,
            };

            let v = sample_s(dim, &mut rng);
            let sum = s_iso_dm_pos(&s_add(&u, &v, &carrier), dim);
            let parts = &s_iso_dm_pos(&u, dim) + &s_iso_dm_pos(&v, dim);
            let r = sample_weight(&mut rng);
            let scaled = s_iso_dm_pos(&u.scale(&r), dim);
            let expect = s_iso_dm_pos(&u, dim).scale_real(r.to_f64().unwrap_or(f64::NAN));
            let structure = sum.max_diff(&parts)?.max(scaled.max_diff(&expect)?);
            Ok(IsoResidual { forward_inverse, inverse_forward, structure })
        }
        Which::R => {
            let a = sample_with(OperatorKind::SelfAdjoint, dim, &mut rng);
            let forward_inverse = r_iso_pos_sa(&r_iso_inverse(&a, tol)?, tol)?.max_diff(&a)?;

            let p = RPair::new(
                sample_with(OperatorKind::Positive, dim, &mut rng),
                sample_with(OperatorKind::Positive, dim, &mut rng),
            );
            let back = r_iso_inverse(&r_iso_pos_sa(&p, tol)?, tol)?;
            let inverse_forward = p.equivalence_residual(&back)?;

            let q = RPair::new(
                sample_with(OperatorKind::Positive, dim, &mut rng),
                sample_with(OperatorKind::Positive, dim, &mut rng),
            );
            let sum = r_iso_pos_sa(&p.add(&q), tol)?;
            let parts = &r_iso_pos_sa(&p, tol)? + &r_iso_pos_sa(&q, tol)?;
            let neg = r_iso_pos_sa(&p.clone().negate(), tol)?;
            let structure = sum.max_diff(&parts)?.max(neg.max_diff(&r_iso_pos_sa(&p, tol)?.scale_real(-1.0))?);
            Ok(IsoResidual { forward_inverse, inverse_forward, structure })
        }
        Which::C => {
            let a = sample_with(OperatorKind::Bounded, dim, &mut rng);
            let forward_inverse = c_iso_sa_b(&c_iso_inverse(&a), tol)?.max_diff(&a)?;

            let p = CPair::new(
                sample_with(OperatorKind::SelfAdjoint, dim, &mut rng),
                sample_with(OperatorKind::SelfAdjoint, dim, &mut rng),
            );
            let inverse_forward = c_iso_inverse(&c_iso_sa_b(&p, tol)?).max_diff(&p)?;

            let z = C64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            let lhs = c_iso_sa_b(&p.act(z), tol)?;
            let rhs = c_iso_sa_b(&p, tol)?.scale(z);
            let structure = lhs.max_diff(&rhs)?;
            Ok(IsoResidual { forward_inverse, inverse_forward, structure })
        }
        Which::Chain => chain_roundtrip(dim, &mut rng, tol),
    }
}

/// `DM → Pos → SA → B`. Forward: four weighted densities are pushed through
/// `S`, paired by `R` and `C`, and compared with
/// `r₁ρ₁ − r₂ρ₂ + i(r₃ρ₃ − r₄ρ₄)` computed directly. Backward: a sampled
/// bounded operator is decomposed into four weighted densities and rebuilt.
fn chain_roundtrip(dim: usize, rng: &mut impl Rng, tol: f64) -> Result<IsoResidual> {
    let us: Vec<SElement<ComplexMatrix>> = (0..4).map(|_| sample_s(dim, rng)).collect();
    let pos: Vec<ComplexMatrix> = us.iter().map(|u| s_iso_dm_pos(u, dim)).collect();
    let re = r_iso_pos_sa(&RPair::new(pos[0].clone(), pos[1].clone()), tol)?;
    let im = r_iso_pos_sa(&RPair::new(pos[2].clone(), pos[3].clone()), tol)?;
    let built = c_iso_sa_b(&CPair::new(re, im), tol)?;
    let direct = {
        let term = |k: usize| match &us[k] {
            SElement::Zero => ComplexMatrix::zeros(dim),
            SElement::Point { weight, point } => point.scale_real(weight.to_f64().unwrap_or(f64::NAN)),
        };
        &(&term(0) - &term(1)) + &(&term(2) - &term(3)).scale(I)
    };
    let inverse_forward = built.max_diff(&direct)?;

    let b = sample_with(OperatorKind::Bounded, dim, rng);
    let c = c_iso_inverse(&b);
    let rebuild_sa = |a: &ComplexMatrix| -> Result<ComplexMatrix> {
        let p = r_iso_inverse(a, tol)?;
        let pos = s_iso_dm_pos(&s_iso_inverse(&p.pos, tol)?, dim);
        let neg = s_iso_dm_pos(&s_iso_inverse(&p.neg, tol)?, dim);
        r_iso_pos_sa(&RPair::new(pos, neg), tol)
    };
    let rebuilt = c_iso_sa_b(&CPair::new(rebuild_sa(&c.re)?, rebuild_sa(&c.im)?), tol)?;
    let forward_inverse = rebuilt.max_diff(&b)?;

    // Every stage of the chain is additive.
    let vs: Vec<SElement<ComplexMatrix>> = (0..4).map(|_| sample_s(dim, rng)).collect();
    let carrier = Densities { dim };
    let summed: Vec<ComplexMatrix> = us
        .iter()
        .zip(&vs)
        .map(|(u, v)| s_iso_dm_pos(&s_add(u, v, &carrier), dim))
        .collect();
    let lhs = c_iso_sa_b(
        &CPair::new(
            r_iso_pos_sa(&RPair::new(summed[0].clone(), summed[1].clone()), tol)?,
            r_iso_pos_sa(&RPair::new(summed[2].clone(), summed[3].clone()), tol)?,
        ),
        tol,
    )?;
    let vpos: Vec<ComplexMatrix> = vs.iter().map(|v| s_iso_dm_pos(v, dim)).collect();
    let other = c_iso_sa_b(
        &CPair::new(
            r_iso_pos_sa(&RPair::new(vpos[0].clone(), vpos[1].clone()), tol)?,
            r_iso_pos_sa(&RPair::new(vpos[2].clone(), vpos[3].clone()), tol)?,
        ),
        tol,
    )?;
    let structure = lhs.max_diff(&(&built + &other))?;
    Ok(IsoResidual { forward_inverse, inverse_forward, structure })
}

/// Exact checks on scalar carriers over `[-n, n]` with denominators up to 4:
/// `R(ℝ≥0) → ℝ` and `C(ℝ) → ℂ` round trips and their compatibility with
/// addition and the complex action. Returns the number of failures.
pub fn scalar_checks(n: i64) -> usize {
    let grid: Vec<BigRational> = (-4 * n..=4 * n)
        .map(|k| BigRational::new(k.into(), 4.into()))
        .collect();
    let mut failures = 0;
    for x in &grid {
        let p = r_iso_scalar_inverse(x);
        if r_iso_scalar(&p).ok().as_ref() != Some(x) {
            failures += 1;
        }
        for y in &grid {
            let q = r_iso_scalar_inverse(y);
            if r_iso_scalar(&p.add(&q)).ok() != Some(x + y) {
                failures += 1;
            }
            if !r_iso_scalar_inverse(&(x - y)).equivalent(&RPair::new(
                p.pos.clone() + &q.neg,
                p.neg.clone() + &q.pos,
            )) {
                failures += 1;
            }
            let z = Scalar::new(x.clone(), y.clone());
            let c = c_iso_scalar_inverse(&z);
            if c_iso_scalar(&c) != z {
                failures += 1;
            }
            let w = Scalar::new(y.clone(), BigRational::one());
            if c_iso_scalar(&c.act(&w)) != &w * &z {
                failures += 1;
            }
        }
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Scalar;
    use crate::linalg::ComplexMatrix as M;
    use crate::sampling::sample;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn s_add_interval_example() {
        let u = SElement::new(q(1, 1), 0.2);
        let v = SElement::new(q(1, 1), 0.6);
        match s_add(&u, &v, &IntervalConvex) {
            SElement::Point { weight, point } => {
                assert_eq!(weight, q(2, 1));
                assert!((point - 0.4).abs() < 1e-15);
            }
            SElement::Zero => panic!("expected a point"),
        }
        assert_eq!(s_add(&u, &SElement::Zero, &IntervalConvex), u);
        assert_eq!(SElement::new(q(3, 1), 0.5).scale(&q(2, 1)), SElement::new(q(6, 1), 0.5));
        assert_eq!(u.scale(&q(0, 1)), SElement::Zero);
    }

    #[test]
    fn s_iso_examples() {
        let half = M::identity(2).scale_real(0.5);
        let u = SElement::new(q(2, 1), half.clone());
        assert_eq!(s_iso_dm_pos(&u, 2), M::identity(2));
        let p0 = M::diag(&[1.0, 0.0]);
        assert_eq!(s_iso_inverse(&p0, 1e-9).unwrap(), SElement::new(q(1, 1), p0));
        let back = s_iso_inverse(&M::identity(2).scale_real(1.5), 1e-9).unwrap();
        assert_eq!(back, SElement::new(q(3, 1), half));
        assert_eq!(s_iso_inverse(&M::zeros(2), 1e-9).unwrap(), SElement::Zero);
        assert_eq!(s_iso_inverse(&M::pauli_z(), 1e-9), Err(Error::NotPositive));
    }

    #[test]
    fn s_add_is_associative_and_commutative() {
        let carrier = Densities { dim: 3 };
        let mut rng = rng_from_seed(2);
        for _ in 0..50 {
            let (a, b, c) = (sample_s(3, &mut rng), sample_s(3, &mut rng), sample_s(3, &mut rng));
            let l = s_add(&s_add(&a, &b, &carrier), &c, &carrier);
            let r = s_add(&a, &s_add(&b, &c, &carrier), &carrier);
            let ab = s_add(&a, &b, &carrier);
            let ba = s_add(&b, &a, &carrier);
            assert_eq!(l.weight(), r.weight());
            assert_eq!(ab.weight(), ba.weight());
            let pt = |u: &SElement<M>| match u {
                SElement::Point { point, .. } => point.clone(),
                SElement::Zero => M::zeros(3),
            };
            assert!(pt(&l).approx_eq(&pt(&r), 1e-12).unwrap());
            assert!(pt(&ab).approx_eq(&pt(&ba), 1e-12).unwrap());
        }
    }

    #[test]
    fn r_iso_examples() {
        let x = M::pauli_x();
        let p = r_iso_inverse(&x, 1e-9).unwrap();
        // Spectral oracle: X = |+⟩⟨+| − |−⟩⟨−|, with |±⟩⟨±| = (I ± X)/2.
        let plus = (&M::identity(2) + &x).scale_real(0.5);
        let minus = (&M::identity(2) - &x).scale_real(0.5);
        assert!(p.pos.approx_eq(&plus, 1e-12).unwrap());
        assert!(p.neg.approx_eq(&minus, 1e-12).unwrap());
        assert!(r_iso_pos_sa(&p, 1e-9).unwrap().approx_eq(&x, 1e-12).unwrap());

        let a = sample(OperatorKind::Positive, 3, 1);
        assert_eq!(r_iso_pos_sa(&RPair::new(a.clone(), M::zeros(3)), 1e-9).unwrap(), a);
        assert_eq!(r_iso_scalar(&RPair::new(q(3, 1), q(1, 1))).unwrap(), q(2, 1));
        assert_eq!(
            r_iso_pos_sa(&RPair::new(M::pauli_z(), M::zeros(2)), 1e-9),
            Err(Error::NotPositive)
        );
        let bad = M::from_rows(&[[C64::new(0.0, 0.0), C64::new(1.0, 0.0)], [C64::new(0.0, 0.0); 2]]);
        assert!(matches!(
            r_iso_pos_sa(&RPair::new(bad, M::zeros(2)), 1e-9),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn positive_cone_is_cancellative() {
        for seed in 0..30 {
            let a = sample(OperatorKind::Positive, 3, seed);
            let b = sample(OperatorKind::Positive, 3, seed + 100);
            let c = sample(OperatorKind::Positive, 3, seed + 200);
            let (ac, bc) = (&a + &c, &b + &c);
            assert_eq!(ac.approx_eq(&bc, 1e-12).unwrap(), a.approx_eq(&b, 1e-12).unwrap());
            assert!((&ac - &c).approx_eq(&a, 1e-12).unwrap());
        }
    }

    #[test]
    fn c_iso_examples() {
        let i2 = M::identity(2);
        let p = CPair::new(M::zeros(2), i2.clone());
        assert_eq!(c_iso_sa_b(&p, 1e-9).unwrap(), i2.scale(I));
        let a = sample(OperatorKind::SelfAdjoint, 2, 3);
        assert_eq!(c_iso_sa_b(&CPair::new(a.clone(), M::zeros(2)), 1e-9).unwrap(), a);

        let e01 = M::outer_unit(0, 1, 2).unwrap();
        let back = c_iso_inverse(&e01);
        assert!(back.re.approx_eq(&M::pauli_x().scale_real(0.5), 1e-15).unwrap());
        assert!(back.im.approx_eq(&M::pauli_y().scale_real(0.5), 1e-15).unwrap());
        assert!(matches!(
            c_iso_sa_b(&CPair::new(e01, M::zeros(2)), 1e-9),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn complex_action_laws() {
        let mut rng = rng_from_seed(4);
        let rq = |rng: &mut rand_chacha::ChaCha8Rng| Scalar::complex(
            (rng.random_range(-8..=8), 4),
            (rng.random_range(-8..=8), 4),
        );
        for _ in 0..100 {
            let p = CPair::new(q(rng.random_range(-9..=9), 3), q(rng.random_range(-9..=9), 5));
            let (z, w) = (rq(&mut rng), rq(&mut rng));
            assert_eq!(p.act(&(&z * &w)), p.act(&w).act(&z));
            assert_eq!(p.act(&(&z + &w)), p.act(&z).add(&p.act(&w)));
            assert_eq!(p.act(&Scalar::one()), p);
        }
        let m = CPair::new(sample(OperatorKind::SelfAdjoint, 3, 1), sample(OperatorKind::SelfAdjoint, 3, 2));
        let (z, w) = (C64::new(0.5, -1.25), C64::new(-0.75, 2.0));
        assert!(m.act(z * w).max_diff(&m.act(w).act(z)).unwrap() < 1e-12);
        assert!(m.act(z + w).max_diff(&m.act(z).add(&m.act(w))).unwrap() < 1e-12);
    }

    #[test]
    fn roundtrips_small() {
        for which in Which::ALL {
            for dim in 1..=3 {
                for seed in 0..10 {
                    let r = iso_roundtrip(which, dim, seed, 1e-9).unwrap();
                    assert!(r.max() <= 1e-10, "{which} dim {dim} seed {seed}: {r:?}");
                }
            }
        }
    }

    #[test]
    fn scalar_carriers_exact() {
        assert_eq!(scalar_checks(2), 0);
    }

    #[test]
    fn which_parses() {
        assert_eq!("chain".parse::<Which>().unwrap(), Which::Chain);
        assert!("x".parse::<Which>().is_err());
    }
}
