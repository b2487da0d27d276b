//! Hilbert–Schmidt dualities `A ↦ tr(A −)` and their inverses.
//!
//! | kind of `A`   | functional `hs(A)`              | domain  | contract          |
//! |---------------|---------------------------------|---------|-------------------|
//! | Bounded       | `B ↦ tr(A·B†)`                  | B(H)    | conjugate-linear  |
//! | SelfAdjoint   | `B ↦ tr(A·B)`                   | SA(H)   | ℝ-linear          |
//! | Positive      | `B ↦ tr(A·B)`                   | Pos(H)  | ℝ≥0-linear        |
//! | Effect        | `ρ ↦ tr(A·ρ)`                   | DM(H)   | affine, in [0, 1] |
//! | Density       | `E ↦ tr(A·E)`                   | Ef(H)   | effect-module map |
//!
//! The inverses only ever *evaluate* the functional they are given. Bounded
//! functionals are read off on matrix units, `hs⁻¹(f)_{jk} = f(|j⟩⟨k|)`. Every
//! other family is reduced to the one above it by extending the functional:
//!
//! * self-adjoint → bounded: `f′(B) = ½(f(B + B†) + i·f(iB − iB†))`
//! * positive → self-adjoint: `f′(B) = f(B_p) − f(B_n)` (spectral split)
//! * convex on densities → positive: `h′(B) = tr(B)·h(B / tr B)`, `h′(0) = 0`
//! * effect-module map → positive: `g′(B) = n·g(B / n)` with `n ≥ λ_max(B)`
//!
//! Functionals must be deterministic and free of side effects; they may be
//! called from several threads.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, ComplexMatrix, C64, I};
use crate::operators::{classify, pos_neg_split, OperatorKind};
use crate::sampling::{rng_from_seed, sample_with};

/// Number of random probes used to spot-check a functional's contract.
pub const CONTRACT_PROBES: usize = 16;

const CONTRACT_SEED: u64 = 0x4853_5f44_5541_4c00;

type EvalFn = dyn Fn(&ComplexMatrix) -> C64 + Send + Sync;

/// An element of the dual of an operator family, given as a black-box
/// evaluation procedure.
#[derive(Clone)]
pub struct Functional {
    kind: OperatorKind,
    dim: usize,
    eval: Arc<EvalFn>,
    note: Option<String>,
}

impl Functional {
    /// A functional representing an operator of `kind`, evaluated on the dual
    /// domain of `kind` (see [`OperatorKind::dual_domain`]).
    pub fn new(
        kind: OperatorKind,
        dim: usize,
        eval: impl Fn(&ComplexMatrix) -> C64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            kind,
            dim,
            eval: Arc::new(eval),
            note: None,
        }
    }

    /// Convenience constructor for real-valued functionals.
    pub fn real(
        kind: OperatorKind,
        dim: usize,
        eval: impl Fn(&ComplexMatrix) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self::new(kind, dim, move |b| C64::new(eval(b), 0.0))
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn note(&self) -> Option<&str> {
        self.note.as_deref()
    }

    /// The family this functional is evaluated on.
    pub fn domain(&self) -> OperatorKind {
        self.kind.dual_domain().unwrap_or(self.kind)
    }

    pub fn eval(&self, b: &ComplexMatrix) -> C64 {
        (self.eval)(b)
    }

    fn eval_re(&self, b: &ComplexMatrix) -> f64 {
        self.eval(b).re
    }

    /// Pointwise sum.
    pub fn add(&self, other: &Functional) -> Functional {
        let (f, g) = (self.eval.clone(), other.eval.clone());
        Functional::new(self.kind, self.dim, move |b| f(b) + g(b))
    }

    /// Pointwise real multiple.
    pub fn scale(&self, r: f64) -> Functional {
        let f = self.eval.clone();
        Functional::new(self.kind, self.dim, move |b| f(b) * r)
    }
}

impl fmt::Debug for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Functional")
            .field("kind", &self.kind)
            .field("dim", &self.dim)
            .field("note", &self.note)
            .finish_non_exhaustive()
    }
}

/// `hs(A) = tr(A·(−)†)` for bounded `A`, `tr(A·−)` otherwise.
pub fn hs_forward(kind: OperatorKind, a: &ComplexMatrix, tol: f64) -> Result<Functional> {
    if kind.dual_domain().is_none() {
        return Err(Error::NotDualizable(kind));
    }
    if !classify(a, tol).contains(kind) {
        return Err(Error::KindMismatch(kind));
    }
    let a = a.clone();
    let dim = a.dim();
    let f = match kind {
        OperatorKind::Bounded => {
            Functional::new(kind, dim, move |b| a.trace_product(&b.dagger()).expect("dimension"))
        }
        _ => Functional::new(kind, dim, move |b| a.trace_product(b).expect("dimension")),
    };
    Ok(f.with_note(format!("tr(A -) for {kind:?} A")))
}

/// Recovers the operator representing `f`.
///
/// Fails with [`Error::ContractViolation`] if a random spot-check of the
/// functional's linearity/affinity contract fails, and with
/// [`Error::NotInKind`] if the recovered operator is not of the claimed kind.
pub fn hs_inverse(kind: OperatorKind, f: &Functional, tol: f64) -> Result<ComplexMatrix> {
    if f.kind() != kind {
        return Err(Error::KindMismatch(kind));
    }
    if kind.dual_domain().is_none() {
        return Err(Error::NotDualizable(kind));
    }
    check_contract(f, tol)?;
    let n = f.dim();
    let a = match kind {
        OperatorKind::Bounded => invert_bounded(n, |b| Ok(f.eval(b)))?,
        OperatorKind::SelfAdjoint => invert_self_adjoint(n, |b| Ok(f.eval_re(b)))?,
        OperatorKind::Positive => invert_positive(n, tol, |b| Ok(f.eval_re(b)))?,
        OperatorKind::Effect => invert_positive(n, tol, |b| Ok(extend_convex(f, b)))?,
        OperatorKind::Density => {
            invert_positive(n, tol, |b| extend_effect_module(f, b, tol))?
        }
        OperatorKind::Projection => unreachable!(),
    };
    if !classify(&a, tol).contains(kind) {
        return Err(Error::NotInKind(kind));
    }
    Ok(a)
}

/// `A_{jk} = f(|j⟩⟨k|)` for a conjugate-linear `f`.
fn invert_bounded(
    n: usize,
    mut f: impl FnMut(&ComplexMatrix) -> Result<C64>,
) -> Result<ComplexMatrix> {
    let mut a = ComplexMatrix::zeros(n);
    for j in 0..n {
        for k in 0..n {
            a[(j, k)] = f(&ComplexMatrix::outer_unit(j, k, n)?)?;
        }
    }
    Ok(a)
}

/// Extends a real-linear `f` on SA(H) to `½(f(B + B†) + i·f(iB − iB†))` on
/// B(H), inverts, and symmetrizes.
fn invert_self_adjoint(
    n: usize,
    mut f: impl FnMut(&ComplexMatrix) -> Result<f64>,
) -> Result<ComplexMatrix> {
    let a = invert_bounded(n, |b| {
        let bd = b.dagger();
        let re_part = b + &bd;
        let im_part = (b - &bd).scale(I);
        Ok(C64::new(f(&re_part)?, f(&im_part)?) * 0.5)
    })?;
    Ok(a.hermitian_part())
}

/// Extends an additive `f` on Pos(H) to `f(B_p) − f(B_n)` on SA(H).
fn invert_positive(
    n: usize,
    tol: f64,
    mut f: impl FnMut(&ComplexMatrix) -> Result<f64>,
) -> Result<ComplexMatrix> {
    invert_self_adjoint(n, |b| {
        let (p, m) = pos_neg_split(b, tol)?;
        Ok(f(&p)? - f(&m)?)
    })
}

/// `h′(B) = tr(B)·h(B / tr B)`, zero on the zero operator.
fn extend_convex(h: &Functional, b: &ComplexMatrix) -> f64 {
    let t = b.trace().re;
    // Spectral parts of exact zero come back as rounding noise.
    if t <= f64::EPSILON {
        return 0.0;
    }
    t * h.eval_re(&b.scale_real(1.0 / t))
}

/// `g′(B) = n·g(B / n)` with `n = max(1, ⌈λ_max(B)⌉)`, checked against `n + 1`.
fn extend_effect_module(g: &Functional, b: &ComplexMatrix, tol: f64) -> Result<f64> {
    let lmax = hermitian_eig(b, tol)?.max_eigenvalue();
    let n = lmax.ceil().max(1.0);
    let value = n * g.eval_re(&b.scale_real(1.0 / n));
    let m = n + 1.0;
    let alt = m * g.eval_re(&b.scale_real(1.0 / m));
    let residual = (value - alt).abs();
    if residual > tol * value.abs().max(1.0) {
        return Err(Error::ContractViolation {
            law: "independence of the scaling integer",
            residual,
        });
    }
    Ok(value)
}

fn violation(law: &'static str, residual: f64, scale: f64, tol: f64) -> Result<()> {
    if residual > tol * scale.max(1.0) {
        Err(Error::ContractViolation { law, residual })
    } else {
        Ok(())
    }
}

/// Spot-checks the algebraic contract of `f` on [`CONTRACT_PROBES`] random
/// inputs from its domain.
pub fn check_contract(f: &Functional, tol: f64) -> Result<()> {
    let n = f.dim();
    let mut rng = rng_from_seed(CONTRACT_SEED ^ n as u64);
    for _ in 0..CONTRACT_PROBES {
        match f.kind() {
            OperatorKind::Bounded => {
                let b = sample_with(OperatorKind::Bounded, n, &mut rng);
                let c = sample_with(OperatorKind::Bounded, n, &mut rng);
                let z = C64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
                let (fb, fc) = (f.eval(&b), f.eval(&c));
                let lhs = f.eval(&(&b.scale(z) + &c));
                let rhs = z.conj() * fb + fc;
                let scale = lhs.norm().max(fb.norm()).max(fc.norm());
                violation("conjugate linearity", (lhs - rhs).norm(), scale, tol)?;
            }
            OperatorKind::SelfAdjoint | OperatorKind::Positive => {
                let positive = f.kind() == OperatorKind::Positive;
                let b = sample_with(f.kind(), n, &mut rng);
                let c = sample_with(f.kind(), n, &mut rng);
                let r: f64 = if positive {
                    rng.random_range(0.0..2.0)
                } else {
                    rng.random_range(-2.0..2.0)
                };
                let (fb, fc) = (f.eval(&b), f.eval(&c));
                let lhs = f.eval(&(&b.scale_real(r) + &c));
                let scale = lhs.norm().max(fb.norm()).max(fc.norm());
                violation("real codomain", fb.im.abs().max(fc.im.abs()), scale, tol)?;
                violation("linearity", (lhs - (fb * r + fc)).norm(), scale, tol)?;
                if positive && fb.re.min(fc.re) < -tol * scale.max(1.0) {
                    return Err(Error::ContractViolation {
                        law: "non-negativity",
                        residual: -fb.re.min(fc.re),
                    });
                }
            }
            OperatorKind::Effect => {
                let rho = sample_with(OperatorKind::Density, n, &mut rng);
                let sigma = sample_with(OperatorKind::Density, n, &mut rng);
                let p: f64 = rng.random();
                let (fr, fs) = (f.eval(&rho), f.eval(&sigma));
                let mix = &rho.scale_real(p) + &sigma.scale_real(1.0 - p);
                let lhs = f.eval(&mix);
                let rhs = fr * p + fs * (1.0 - p);
                violation("affinity", (lhs - rhs).norm(), 1.0, tol)?;
                unit_interval_value(fr, tol)?;
                unit_interval_value(fs, tol)?;
            }
            OperatorKind::Density => {
                let id = ComplexMatrix::identity(n);
                violation("unit", (f.eval(&id) - 1.0).norm(), 1.0, tol)?;
                let a = sample_with(OperatorKind::Effect, n, &mut rng).scale_real(0.5);
                let b = sample_with(OperatorKind::Effect, n, &mut rng).scale_real(0.5);
                let r: f64 = rng.random();
                let (fa, fb) = (f.eval(&a), f.eval(&b));
                let sum = f.eval(&(&a + &b));
                violation("additivity on orthogonal effects", (sum - fa - fb).norm(), 1.0, tol)?;
                let scaled = f.eval(&a.scale_real(r));
                violation("[0,1]-homogeneity", (scaled - fa * r).norm(), 1.0, tol)?;
                unit_interval_value(fa, tol)?;
                unit_interval_value(sum, tol)?;
            }
            OperatorKind::Projection => return Err(Error::NotDualizable(OperatorKind::Projection)),
        }
    }
    Ok(())
}

fn unit_interval_value(v: C64, tol: f64) -> Result<()> {
    let out = v.im.abs().max(-v.re).max(v.re - 1.0);
    if out > tol {
        return Err(Error::ContractViolation {
            law: "values in [0,1]",
            residual: out,
        });
    }
    Ok(())
}

/// `|tr(C†AC·B†) − tr(A·(CBC†)†)|`, which vanishes by the cyclic property of
/// the trace.
pub fn naturality_check(c: &ComplexMatrix, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    c.check_dim(a)?;
    c.check_dim(b)?;
    let cd = c.dagger();
    let pulled = cd.matmul(a)?.matmul(c)?;
    let pushed = c.matmul(b)?.matmul(&cd)?;
    let lhs = pulled.trace_product(&b.dagger())?;
    let rhs = a.trace_product(&pushed.dagger())?;
    Ok((lhs - rhs).norm())
}

/// `max_B |f(B) − g(B)|` over the given probes.
pub fn functional_residual(f: &Functional, g: &Functional, probes: &[ComplexMatrix]) -> f64 {
    probes
        .iter()
        .map(|b| (f.eval(b) - g.eval(b)).norm())
        .fold(0.0, f64::max)
}

/// Residuals of one round trip through `hs` and `hs⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundTrip {
    /// `‖hs⁻¹(hs(A)) − A‖_max`
    pub operator: f64,
    /// `max_B |hs(hs⁻¹(f))(B) − f(B)|` over sampled probes
    pub functional: f64,
}

impl RoundTrip {
    pub fn max(&self) -> f64 {
        self.operator.max(self.functional)
    }
}

/// Runs both round trips for the operator of `kind` sampled from `seed`,
/// probing the functional side on `probes` samples of its domain.
pub fn roundtrip(
    kind: OperatorKind,
    dim: usize,
    seed: u64,
    probes: usize,
    tol: f64,
) -> Result<RoundTrip> {
    let mut rng = rng_from_seed(seed);
    let a = sample_with(kind, dim, &mut rng);
    let f = hs_forward(kind, &a, tol)?;
    let recovered = hs_inverse(kind, &f, tol)?;
    let operator = recovered.max_diff(&a)?;

    let again = hs_forward(kind, &recovered, tol)?;
    let domain = f.domain();
    let probe_ops: Vec<ComplexMatrix> =
        (0..probes).map(|_| sample_with(domain, dim, &mut rng)).collect();
    let functional = functional_residual(&again, &f, &probe_ops);
    Ok(RoundTrip {
        operator,
        functional,
    })
}
