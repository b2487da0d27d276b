//! Finitely supported formal sums: the multiset monads `M_S` over the
//! semirings ℝ≥0, ℝ, ℂ and the distribution monad `D`, together with their
//! algebras (modules and convex sets).
//!
//! Coefficients are exact (Gaussian) rationals; floating point only enters
//! when a sum is interpreted in a Hilbert-space carrier.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::laws::LawReport;
use crate::linalg::{ComplexMatrix, C64};

/// An exact Gaussian rational `re + i·im`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Scalar {
    pub re: BigRational,
    pub im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    /// `num / den` as a real scalar.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn int(n: i64) -> Self {
        Self::ratio(n, 1)
    }

    /// `(a/b) + i·(c/d)`.
    pub fn complex(re: (i64, i64), im: (i64, i64)) -> Self {
        Self::new(
            BigRational::new(re.0.into(), re.1.into()),
            BigRational::new(im.0.into(), im.1.into()),
        )
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn i() -> Self {
        Self::complex((0, 1), (1, 1))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn to_c64(&self) -> C64 {
        C64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

impl Add for Scalar {
    type Output = Scalar;

    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;

    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "{}{}{}i", self.re, sign, self.im.abs())
            }
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Parses a real rational such as `"3"`, `"-1/2"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_int = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("invalid rational '{s}'")))
        };
        let r = match s.split_once('/') {
            Some((n, d)) => {
                let d = parse_int(d)?;
                if d.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in '{s}'")));
                }
                BigRational::new(parse_int(n)?, d)
            }
            None => BigRational::from_integer(parse_int(s)?),
        };
        Ok(Scalar::real(r))
    }
}

/// The coefficient semirings in use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Semiring {
    /// ℝ≥0, via non-negative rationals.
    NonNegRational,
    /// ℝ, via rationals.
    Rational,
    /// ℂ, via Gaussian rationals.
    ComplexRational,
    /// [0, 1]; sums over it have total weight at most 1.
    UnitIntervalRational,
}

impl Semiring {
    pub fn contains(self, c: &Scalar) -> bool {
        match self {
            Semiring::ComplexRational => true,
            Semiring::Rational => c.is_real(),
            Semiring::NonNegRational => c.is_real() && !c.re.is_negative(),
            Semiring::UnitIntervalRational => {
                c.is_real() && !c.re.is_negative() && c.re <= BigRational::one()
            }
        }
    }
}

impl fmt::Display for Semiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn mismatch(expected: Semiring, actual: Semiring) -> Error {
    Error::SemiringMismatch {
        expected: expected.to_string(),
        actual: actual.to_string(),
    }
}

/// `s₁|x₁⟩ + ⋯ + sₙ|xₙ⟩` in normal form: distinct keys, no zero coefficients.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FormalSum<K: Ord> {
    semiring: Semiring,
    terms: BTreeMap<K, Scalar>,
}

impl<K: Ord + Clone> FormalSum<K> {
    /// Normalizes `terms` (merging repeated keys and dropping zeros) and
    /// checks every coefficient against the semiring. Over the unit interval
    /// the total weight must not exceed 1.
    pub fn new(semiring: Semiring, terms: impl IntoIterator<Item = (K, Scalar)>) -> Result<Self> {
        let mut map: BTreeMap<K, Scalar> = BTreeMap::new();
        for (k, c) in terms {
            if !semiring.contains(&c) {
                return Err(Error::NotInSemiring {
                    coeff: c.to_string(),
                    semiring: semiring.to_string(),
                });
            }
            let slot = map.entry(k).or_insert_with(Scalar::zero);
            *slot = &*slot + &c;
        }
        map.retain(|_, c| !c.is_zero());
        let sum = Self {
            semiring,
            terms: map,
        };
        if semiring == Semiring::UnitIntervalRational && sum.total().re > BigRational::one() {
            return Err(Error::NotInSemiring {
                coeff: sum.total().to_string(),
                semiring: "UnitIntervalRational (total weight)".into(),
            });
        }
        Ok(sum)
    }

    /// A finitely supported probability distribution: unit-interval
    /// coefficients summing to exactly 1.
    pub fn distribution(terms: impl IntoIterator<Item = (K, Scalar)>) -> Result<Self> {
        let s = Self::new(Semiring::UnitIntervalRational, terms)?;
        if !s.is_distribution() {
            return Err(Error::NotDistribution(s.total().to_string()));
        }
        Ok(s)
    }

    pub fn zero(semiring: Semiring) -> Self {
        Self {
            semiring,
            terms: BTreeMap::new(),
        }
    }

    /// `η(x) = 1|x⟩`.
    pub fn unit(x: K, semiring: Semiring) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(x, Scalar::one());
        Self { semiring, terms }
    }

    pub fn semiring(&self) -> Semiring {
        self.semiring
    }

    pub fn coeff(&self, x: &K) -> Scalar {
        self.terms.get(x).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.terms.iter()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total(&self) -> Scalar {
        self.terms.values().fold(Scalar::zero(), |acc, c| &acc + c)
    }

    pub fn is_distribution(&self) -> bool {
        self.semiring == Semiring::UnitIntervalRational && self.total() == Scalar::one()
    }

    /// Functorial action: the coefficient of `y` is the sum of the
    /// coefficients over `f⁻¹(y)`.
    pub fn fmap<L: Ord + Clone>(&self, f: impl Fn(&K) -> L) -> FormalSum<L> {
        let mut terms: BTreeMap<L, Scalar> = BTreeMap::new();
        for (k, c) in &self.terms {
            let slot = terms.entry(f(k)).or_insert_with(Scalar::zero);
            *slot = &*slot + c;
        }
        terms.retain(|_, c| !c.is_zero());
        FormalSum {
            semiring: self.semiring,
            terms,
        }
    }
}

impl<K: Ord + Clone> FormalSum<FormalSum<K>> {
    /// Monad multiplication `μ(Σᵢ sᵢ|φᵢ⟩)(x) = Σᵢ sᵢ·φᵢ(x)`.
    pub fn flatten(&self) -> Result<FormalSum<K>> {
        let mut terms: BTreeMap<K, Scalar> = BTreeMap::new();
        for (inner, s) in &self.terms {
            if inner.semiring != self.semiring {
                return Err(mismatch(self.semiring, inner.semiring));
            }
            for (k, c) in &inner.terms {
                let slot = terms.entry(k.clone()).or_insert_with(Scalar::zero);
                *slot = &*slot + &(s * c);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(FormalSum {
            semiring: self.semiring,
            terms,
        })
    }
}

impl<K: Ord + fmt::Display> fmt::Display for FormalSum<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_real() {
                write!(f, "{c}|{k}⟩")?;
            } else {
                write!(f, "({c})|{k}⟩")?;
            }
        }
        Ok(())
    }
}

/// What kind of algebra a carrier is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Structure {
    /// A module over the semiring (an `M_S`-algebra).
    Module(Semiring),
    /// A convex set (a `D`-algebra).
    ConvexSet,
}

impl Structure {
    pub fn accepts<K: Ord + Clone>(&self, s: &FormalSum<K>) -> Result<()> {
        match *self {
            Structure::Module(sr) if s.semiring() != sr => Err(mismatch(sr, s.semiring())),
            Structure::Module(_) => Ok(()),
            Structure::ConvexSet => {
                if s.semiring() != Semiring::UnitIntervalRational {
                    Err(mismatch(Semiring::UnitIntervalRational, s.semiring()))
                } else if !s.is_distribution() {
                    Err(Error::NotDistribution(s.total().to_string()))
                } else {
                    Ok(())
                }
            }
        }
    }
}

/// An Eilenberg–Moore algebra: a carrier together with a way of evaluating
/// formal sums of its elements.
pub trait Algebra {
    /// Ordered handle for carrier elements, used as formal-sum keys.
    type Key: Ord + Clone;
    type Elem;

    fn structure(&self) -> Structure;

    /// The element a key denotes.
    fn element(&self, key: &Self::Key) -> Result<Self::Elem>;

    /// `Σᵢ sᵢ|xᵢ⟩ ↦ Σᵢ sᵢ • xᵢ`.
    fn interpret(&self, s: &FormalSum<Self::Key>) -> Result<Self::Elem>;
}

/// Exact scalars as a module over a semiring or, with
/// [`Structure::ConvexSet`], as a convex subset of ℂ.
#[derive(Debug, Clone, Copy)]
pub struct ScalarAlgebra {
    pub structure: Structure,
}

impl Algebra for ScalarAlgebra {
    type Key = Scalar;
    type Elem = Scalar;

    fn structure(&self) -> Structure {
        self.structure
    }

    fn element(&self, key: &Scalar) -> Result<Scalar> {
        Ok(key.clone())
    }

    fn interpret(&self, s: &FormalSum<Scalar>) -> Result<Scalar> {
        self.structure.accepts(s)?;
        Ok(s.terms().fold(Scalar::zero(), |acc, (x, c)| &acc + &(c * x)))
    }
}

/// A finite table of operators; keys are indices into the table. With
/// [`Structure::ConvexSet`] over densities this is `DM(H)` as a convex set;
/// with a module structure it is a submodule of `B(H)`.
#[derive(Debug, Clone)]
pub struct MatrixAlgebra {
    pub structure: Structure,
    pub points: Vec<ComplexMatrix>,
}

impl MatrixAlgebra {
    pub fn convex(points: Vec<ComplexMatrix>) -> Self {
        Self {
            structure: Structure::ConvexSet,
            points,
        }
    }

    pub fn module(semiring: Semiring, points: Vec<ComplexMatrix>) -> Self {
        Self {
            structure: Structure::Module(semiring),
            points,
        }
    }

    /// `α ∘ M(α)`: interprets each inner sum, then combines the results with
    /// the outer coefficients.
    pub fn interpret_nested(&self, ss: &FormalSum<FormalSum<usize>>) -> Result<ComplexMatrix> {
        let mut acc: Option<ComplexMatrix> = None;
        for (inner, s) in ss.terms() {
            let term = self.interpret(inner)?.scale(s.to_c64());
            acc = Some(match acc {
                Some(a) => &a + &term,
                None => term,
            });
        }
        acc.ok_or_else(|| Error::NotDistribution("0".into()))
    }
}

impl Algebra for MatrixAlgebra {
    type Key = usize;
    type Elem = ComplexMatrix;

    fn structure(&self) -> Structure {
        self.structure
    }

    fn element(&self, key: &usize) -> Result<ComplexMatrix> {
        self.points.get(*key).cloned().ok_or(Error::UnknownElement(*key))
    }

    fn interpret(&self, s: &FormalSum<usize>) -> Result<ComplexMatrix> {
        self.structure.accepts(s)?;
        let dim = self.points.first().map(ComplexMatrix::dim).unwrap_or(1);
        let mut acc = ComplexMatrix::zeros(dim);
        for (k, c) in s.terms() {
            let p = self.points.get(*k).ok_or(Error::UnknownElement(*k))?;
            acc = &acc + &p.scale(c.to_c64());
        }
        Ok(acc)
    }
}

/// All sums over `elems` with support at most `max_support`, each stored
/// coefficient drawn from `coeffs` (which should exclude zero). The empty sum
/// is included.
pub fn enumerate_sums<K: Ord + Clone>(
    semiring: Semiring,
    elems: &[K],
    coeffs: &[Scalar],
    max_support: usize,
) -> Vec<FormalSum<K>> {
    fn go<K: Ord + Clone>(
        semiring: Semiring,
        elems: &[K],
        coeffs: &[Scalar],
        left: usize,
        acc: &mut Vec<(K, Scalar)>,
        out: &mut Vec<FormalSum<K>>,
    ) {
        // Invalid prefixes (weight already above 1) only get worse.
        match FormalSum::new(semiring, acc.iter().cloned()) {
            Ok(s) => out.push(s),
            Err(_) => return,
        }
        if left == 0 {
            return;
        }
        for (i, e) in elems.iter().enumerate() {
            for c in coeffs {
                acc.push((e.clone(), c.clone()));
                go(semiring, &elems[i + 1..], coeffs, left - 1, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(semiring, elems, coeffs, max_support, &mut Vec::new(), &mut out);
    out
}

/// Distributions over `elems` whose coefficients are multiples of `1/denom`.
pub fn enumerate_distributions<K: Ord + Clone>(elems: &[K], denom: i64) -> Vec<FormalSum<K>> {
    let coeffs: Vec<Scalar> = (1..=denom).map(|k| Scalar::ratio(k, denom)).collect();
    enumerate_sums(Semiring::UnitIntervalRational, elems, &coeffs, elems.len())
        .into_iter()
        .filter(FormalSum::is_distribution)
        .collect()
}

fn witness<T: fmt::Display>(t: &T) -> serde_json::Value {
    serde_json::Value::String(t.to_string())
}

fn check_unit_laws<K: Ord + Clone + fmt::Display>(
    report: &mut LawReport,
    tag: &str,
    sums: &[FormalSum<K>],
    closure: bool,
) {
    for phi in sums {
        let sr = phi.semiring();
        let left = FormalSum::unit(phi.clone(), sr).flatten();
        report.check(&format!("{tag}: flatten∘unit = id"), left.as_ref() == Ok(phi), || witness(phi));
        let right = phi.fmap(|x| FormalSum::unit(x.clone(), sr)).flatten();
        report.check(&format!("{tag}: flatten∘fmap(unit) = id"), right.as_ref() == Ok(phi), || {
            witness(phi)
        });
        if closure {
            let ok = [&left, &right]
                .iter()
                .all(|r| r.as_ref().is_ok_and(FormalSum::is_distribution));
            report.check(&format!("{tag}: distribution closure"), ok, || witness(phi));
        }
    }
}

fn check_associativity<K: Ord + Clone + fmt::Display>(
    report: &mut LawReport,
    tag: &str,
    sums: &[FormalSum<FormalSum<FormalSum<K>>>],
    closure: bool,
) {
    for big in sums {
        let lhs = big.flatten().and_then(|s| s.flatten());
        let inner: Result<Vec<_>> = big
            .terms()
            .map(|(s, c)| s.flatten().map(|f| (f, c.clone())))
            .collect();
        let rhs = inner
            .and_then(|ts| FormalSum::new(big.semiring(), ts))
            .and_then(|s| s.flatten());
        let ok = matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b);
        report.check(&format!("{tag}: flatten∘flatten = flatten∘fmap(flatten)"), ok, || witness(big));
        if closure {
            let ok = lhs.as_ref().is_ok_and(FormalSum::is_distribution);
            report.check(&format!("{tag}: distribution closure"), ok, || witness(big));
        }
    }
}

fn check_algebra_laws(report: &mut LawReport, tag: &str, alg: &ScalarAlgebra, nested: &[FormalSum<FormalSum<Scalar>>]) {
    for ss in nested {
        for (inner, _) in ss.terms() {
            for (x, _) in inner.terms() {
                let u = alg.interpret(&FormalSum::unit(x.clone(), ss.semiring()));
                report.check(&format!("{tag}: interpret∘unit = id"), u.as_ref() == Ok(x), || witness(x));
            }
        }
        let lhs = ss.flatten().and_then(|s| alg.interpret(&s));
        let mapped: Result<Vec<_>> = ss
            .terms()
            .map(|(s, c)| alg.interpret(s).map(|v| (v, c.clone())))
            .collect();
        let rhs = mapped
            .and_then(|ts| FormalSum::new(ss.semiring(), ts))
            .and_then(|s| alg.interpret(&s));
        let ok = matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b);
        report.check(&format!("{tag}: interpret∘flatten = interpret∘fmap(interpret)"), ok, || {
            witness(ss)
        });
    }
}

type Nested<K> = (Vec<FormalSum<FormalSum<K>>>, Vec<FormalSum<FormalSum<FormalSum<K>>>>);

fn nest<K: Ord + Clone>(semiring: Semiring, leaves: &[FormalSum<K>], coeffs: &[Scalar]) -> Nested<K> {
    let level2 = enumerate_sums(semiring, leaves, coeffs, 2);
    let singles: Vec<_> = level2.iter().filter(|s| s.support_len() == 1).cloned().collect();
    let mut level3 = enumerate_sums(semiring, &level2, coeffs, 1);
    level3.extend(enumerate_sums(semiring, &singles, coeffs, 2).into_iter().filter(|s| s.support_len() == 2));
    (level2, level3)
}

/// Exhaustive monad and algebra laws for `M_S` (S = ℝ≥0, ℝ, ℂ) and `D`.
///
/// Unit laws run over every sum on carriers of size 1 to 3 with coefficients
/// in {0, ½, 1, 2} (plus −1 over ℝ and i over ℂ). Associativity runs over
/// three-level nestings on a two-point carrier: leaves are all grid sums,
/// the middle level has support at most 2, and the outer level is either a
/// single term or a pair of single-term middles. Outer coefficients come
/// from {½, 2} plus the extra grid point. `D` uses the same shapes with
/// coefficients in multiples of ¼ (leaves) and ½ (outer levels), and every
/// output is checked to be a distribution.
pub fn monad_law_suite() -> LawReport {
    let mut report = LawReport::new("monad", 0);
    let half = Scalar::ratio(1, 2);
    let base = [half.clone(), Scalar::one(), Scalar::int(2)];
    let setups = [
        (Semiring::NonNegRational, None),
        (Semiring::Rational, Some(Scalar::int(-1))),
        (Semiring::ComplexRational, Some(Scalar::i())),
    ];
    for (sr, extra) in setups {
        let tag = format!("M[{sr}]");
        let mut grid = base.to_vec();
        grid.extend(extra.clone());
        for n in 1..=3u8 {
            let xs: Vec<u8> = (0..n).collect();
            check_unit_laws(&mut report, &tag, &enumerate_sums(sr, &xs, &grid, xs.len()), false);
        }
        let leaves = enumerate_sums(sr, &[0u8, 1], &grid, 2);
        let mut outer = vec![half.clone(), Scalar::int(2)];
        outer.extend(extra);
        let (_, level3) = nest(sr, &leaves, &outer);
        check_associativity(&mut report, &tag, &level3, false);

        let scalars: Vec<Scalar> = grid.clone();
        let alg = ScalarAlgebra { structure: Structure::Module(sr) };
        let inner = enumerate_sums(sr, &scalars[..2], &grid, 2);
        let nested = enumerate_sums(sr, &inner, &outer, 2);
        check_algebra_laws(&mut report, &format!("{tag} module ℚ"), &alg, &nested);
    }

    let tag = "D";
    let unit = Semiring::UnitIntervalRational;
    for n in 1..=3u8 {
        let xs: Vec<u8> = (0..n).collect();
        check_unit_laws(&mut report, tag, &enumerate_distributions(&xs, 4), true);
    }
    let leaves = enumerate_distributions(&[0u8, 1, 2], 2);
    let level2 = enumerate_distributions(&leaves, 2);
    let level3 = enumerate_distributions(&level2, 2);
    check_associativity(&mut report, tag, &level3, true);
    for ss in &level2 {
        let ok = ss.fmap(|s| s.total()).is_distribution() && ss.flatten().is_ok_and(|s| s.is_distribution());
        report.check("D: distribution closure", ok, || witness(ss));
    }
    let points: Vec<Scalar> = [(0, 1), (1, 3), (1, 1)].iter().map(|&(a, b)| Scalar::ratio(a, b)).collect();
    let alg = ScalarAlgebra { structure: Structure::ConvexSet };
    let inner = enumerate_distributions(&points, 2);
    let nested = enumerate_distributions(&inner, 2);
    check_algebra_laws(&mut report, "D convex [0,1]", &alg, &nested);
    debug_assert!(nested.iter().all(|s| s.semiring() == unit));
    report
}
