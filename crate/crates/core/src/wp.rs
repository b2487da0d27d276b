//! State transformers on density matrices and their weakest preconditions.
//!
//! `wp(f, A)` is the effect `hs⁻¹(ρ ↦ tr(f(ρ)·A))`, so that
//! `tr(wp(f, A)·ρ) = tr(A·f(ρ))` for every state `ρ`.
//!
//! Superoperators act on row-major vectorizations: `vec(B)[r·n + c] = B[r][c]`.
//! With this convention a unitary `U` has superoperator `U ⊗ conj(U)`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{FormalSum, Scalar};
use crate::duality::{hs_inverse, Functional};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, scaled_tol, ComplexMatrix, C64, ZERO};
use crate::operators::{classify, OperatorKind};
use crate::sampling::{rng_from_seed, sample_unitary, sample_with};

/// Number of seeded densities used to validate a superoperator.
pub const VALIDATION_SAMPLES: usize = 20;

const VALIDATION_SEED: u64 = 0x5750_5f43_4841_4e00;

/// An affine state transformer `DM(H_in) → DM(H_out)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Channel {
    /// `ρ ↦ UρU†`.
    Unitary(ComplexMatrix),
    /// `ρ ↦ Σᵢ wᵢ·fᵢ(ρ)`; keys of `weights` index into `parts`.
    Mixture {
        weights: FormalSum<usize>,
        parts: Vec<Channel>,
    },
    /// `vec(f(ρ)) = S·vec(ρ)` with `S` of shape `dim_out² × dim_in²`.
    Super {
        dim_in: usize,
        dim_out: usize,
        data: Vec<C64>,
    },
}

impl Channel {
    pub fn identity(dim: usize) -> Self {
        Channel::Unitary(ComplexMatrix::identity(dim))
    }

    /// A mixture with exact weights; they must form a distribution.
    pub fn mixture(weights: Vec<Scalar>, parts: Vec<Channel>) -> Result<Self> {
        if weights.len() != parts.len() {
            return Err(Error::InvalidChannel(format!(
                "{} weights for {} parts",
                weights.len(),
                parts.len()
            )));
        }
        let weights = FormalSum::distribution(weights.into_iter().enumerate())?;
        Ok(Channel::Mixture { weights, parts })
    }

    /// Builds a superoperator channel; `data` is row-major.
    pub fn superop(dim_in: usize, dim_out: usize, data: Vec<C64>) -> Result<Self> {
        if dim_in == 0 || dim_out == 0 {
            return Err(Error::InvalidChannel("dimensions must be positive".into()));
        }
        let want = dim_in * dim_in * dim_out * dim_out;
        if data.len() != want {
            return Err(Error::InvalidChannel(format!(
                "superoperator has {} entries, expected {want}",
                data.len()
            )));
        }
        Ok(Channel::Super { dim_in, dim_out, data })
    }

    /// The transpose map: positive and trace-preserving, not completely
    /// positive.
    pub fn transpose(dim: usize) -> Self {
        let n2 = dim * dim;
        let mut data = vec![ZERO; n2 * n2];
        for r in 0..dim {
            for c in 0..dim {
                data[(c * dim + r) * n2 + r * dim + c] = C64::new(1.0, 0.0);
            }
        }
        Channel::Super { dim_in: dim, dim_out: dim, data }
    }

    pub fn dim_in(&self) -> usize {
        match self {
            Channel::Unitary(u) => u.dim(),
            Channel::Mixture { parts, .. } => parts.first().map_or(0, Channel::dim_in),
            Channel::Super { dim_in, .. } => *dim_in,
        }
    }

    pub fn dim_out(&self) -> usize {
        match self {
            Channel::Unitary(u) => u.dim(),
            Channel::Mixture { parts, .. } => parts.first().map_or(0, Channel::dim_out),
            Channel::Super { dim_out, .. } => *dim_out,
        }
    }

    /// Structural and sampled checks: unitarity, matching dimensions of
    /// mixture parts, and for superoperators trace and positivity
    /// preservation on seeded densities. Complete positivity is not checked.
    pub fn validate(&self, tol: f64) -> Result<()> {
        match self {
            Channel::Unitary(u) => {
                let r = (&u.dagger() * u).max_diff(&ComplexMatrix::identity(u.dim()))?;
                if r > tol {
                    return Err(Error::InvalidChannel(format!("U†U deviates from I by {r:e}")));
                }
                Ok(())
            }
            Channel::Mixture { weights, parts } => {
                if parts.is_empty() {
                    return Err(Error::InvalidChannel("empty mixture".into()));
                }
                if !weights.is_distribution() {
                    return Err(Error::NotDistribution(weights.total().to_string()));
                }
                let (i, o) = (self.dim_in(), self.dim_out());
                for p in parts {
                    if p.dim_in() != i || p.dim_out() != o {
                        return Err(Error::InvalidChannel("mixture parts differ in dimension".into()));
                    }
                    p.validate(tol)?;
                }
                if let Some((k, _)) = weights.terms().find(|(k, _)| **k >= parts.len()) {
                    return Err(Error::InvalidChannel(format!("weight for missing part {k}")));
                }
                Ok(())
            }
            Channel::Super { dim_in, .. } => {
                let mut rng = rng_from_seed(VALIDATION_SEED);
                for _ in 0..VALIDATION_SAMPLES {
                    let rho = sample_with(OperatorKind::Density, *dim_in, &mut rng);
                    let out = self.apply_linear(&rho)?;
                    check_output(&out, tol)?;
                }
                Ok(())
            }
        }
    }

    /// The linear extension of the channel, applied to any operator.
    pub fn apply_linear(&self, b: &ComplexMatrix) -> Result<ComplexMatrix> {
        if b.dim() != self.dim_in() {
            return Err(Error::DimensionMismatch {
                expected: self.dim_in(),
                actual: b.dim(),
            });
        }
        match self {
            Channel::Unitary(u) => Ok(&(u * b) * &u.dagger()),
            Channel::Mixture { weights, parts } => {
                let mut acc = ComplexMatrix::zeros(self.dim_out());
                for (k, w) in weights.terms() {
                    let part = parts.get(*k).ok_or(Error::UnknownElement(*k))?;
                    acc = &acc + &part.apply_linear(b)?.scale(w.to_c64());
                }
                Ok(acc)
            }
            Channel::Super { dim_in, dim_out, data } => {
                let n_in2 = dim_in * dim_in;
                let v = b.data();
                let out: Vec<C64> = (0..dim_out * dim_out)
                    .map(|r| {
                        data[r * n_in2..(r + 1) * n_in2]
                            .iter()
                            .zip(v)
                            .map(|(s, x)| s * x)
                            .sum()
                    })
                    .collect();
                ComplexMatrix::new(*dim_out, out)
            }
        }
    }

    /// The superoperator matrix (`dim_out² × dim_in²`, row-major).
    pub fn to_superoperator(&self) -> Vec<C64> {
        match self {
            Channel::Unitary(u) => {
                let n = u.dim();
                let n2 = n * n;
                let mut s = vec![ZERO; n2 * n2];
                for (a, b, c, d) in quad(n) {
                    s[(a * n + b) * n2 + c * n + d] = u[(a, c)] * u[(b, d)].conj();
                }
                s
            }
            Channel::Mixture { weights, parts } => {
                let len = self.dim_in().pow(2) * self.dim_out().pow(2);
                let mut s = vec![ZERO; len];
                for (k, w) in weights.terms() {
                    if let Some(p) = parts.get(*k) {
                        let w = w.to_c64();
                        for (x, y) in s.iter_mut().zip(p.to_superoperator()) {
                            *x += w * y;
                        }
                    }
                }
                s
            }
            Channel::Super { data, .. } => data.clone(),
        }
    }

    /// `g ∘ self` as a superoperator channel.
    pub fn then(&self, g: &Channel) -> Result<Channel> {
        if g.dim_in() != self.dim_out() {
            return Err(Error::DimensionMismatch {
                expected: self.dim_out(),
                actual: g.dim_in(),
            });
        }
        let (a, b, c) = (self.dim_in().pow(2), self.dim_out().pow(2), g.dim_out().pow(2));
        let sf = self.to_superoperator();
        let sg = g.to_superoperator();
        let mut data = vec![ZERO; c * a];
        for i in 0..c {
            for k in 0..b {
                let x = sg[i * b + k];
                if x == ZERO {
                    continue;
                }
                for j in 0..a {
                    data[i * a + j] += x * sf[k * a + j];
                }
            }
        }
        Channel::superop(self.dim_in(), g.dim_out(), data)
    }
}

fn quad(n: usize) -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..n).flat_map(move |a| {
        (0..n).flat_map(move |b| (0..n).flat_map(move |c| (0..n).map(move |d| (a, b, c, d))))
    })
}

fn check_output(out: &ComplexMatrix, tol: f64) -> Result<()> {
    let t = out.trace();
    if (t - 1.0).norm() > tol {
        return Err(Error::InvalidChannel(format!("trace of output is {t}")));
    }
    let residual = out.hermitian_residual();
    if residual > scaled_tol(tol, out.max_norm()) {
        return Err(Error::InvalidChannel(format!("output not self-adjoint ({residual:e})")));
    }
    let min = hermitian_eig(&out.hermitian_part(), tol)?.min_eigenvalue();
    if min < -tol {
        return Err(Error::InvalidChannel(format!("output has eigenvalue {min:e}")));
    }
    Ok(())
}

/// `f(B)` for a density `B`.
pub fn apply_channel(f: &Channel, b: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    if b.dim() != f.dim_in() {
        return Err(Error::DimensionMismatch {
            expected: f.dim_in(),
            actual: b.dim(),
        });
    }
    if !classify(b, tol).density {
        return Err(Error::NotDensity);
    }
    let out = f.apply_linear(b)?;
    if matches!(f, Channel::Super { .. }) {
        check_output(&out, tol)?;
    }
    Ok(out)
}

/// The weakest precondition of the effect `a` under `f`, recovered through
/// the generic effect/density duality.
pub fn wp(f: &Channel, a: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    if a.dim() != f.dim_out() {
        return Err(Error::DimensionMismatch {
            expected: f.dim_out(),
            actual: a.dim(),
        });
    }
    if !classify(a, tol).effect {
        return Err(Error::NotEffect);
    }
    let (f, a) = (f.clone(), a.clone());
    let dim = f.dim_in();
    let functional = Functional::real(OperatorKind::Effect, dim, move |rho| {
        f.apply_linear(rho)
            .and_then(|out| out.trace_product(&a))
            .map_or(f64::NAN, |z| z.re)
    })
    .with_note("ρ ↦ tr(f(ρ)·A)");
    match hs_inverse(OperatorKind::Effect, &functional, tol) {
        Err(Error::NotInKind(_)) => Err(Error::NotEffect),
        other => other,
    }
}

/// `max |tr(wp·ρ) − tr(A·f(ρ))|` over `probes` densities sampled from `seed`.
pub fn duality_residual(
    f: &Channel,
    a: &ComplexMatrix,
    wp_a: &ComplexMatrix,
    probes: usize,
    seed: u64,
) -> Result<f64> {
    let mut rng = rng_from_seed(seed);
    let mut worst = 0.0f64;
    for _ in 0..probes {
        let rho = sample_with(OperatorKind::Density, f.dim_in(), &mut rng);
        let lhs = wp_a.trace_product(&rho)?;
        let rhs = a.trace_product(&f.apply_linear(&rho)?)?;
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

/// Channel families for sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Unitary,
    Mixture,
    Super,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Unitary, Variant::Mixture, Variant::Super];
}

/// A completely positive trace-preserving map from a random isometry
/// `H → H ⊗ ℂ^k`, as a superoperator `Σᵢ Kᵢ ⊗ conj(Kᵢ)`.
pub fn sample_cptp(dim: usize, kraus: usize, rng: &mut ChaCha8Rng) -> Channel {
    let big = sample_unitary(dim * kraus, rng);
    let n2 = dim * dim;
    let mut data = vec![ZERO; n2 * n2];
    for i in 0..kraus {
        let k = |r: usize, c: usize| big[(i * dim + r, c)];
        for (a, b, c, d) in quad(dim) {
            data[(a * dim + b) * n2 + c * dim + d] += k(a, c) * k(b, d).conj();
        }
    }
    Channel::Super { dim_in: dim, dim_out: dim, data }
}

/// Samples a valid channel of the given variant. Mixtures combine two or
/// three unitaries with weights in eighths; superoperators are random CPTP
/// maps, half of them followed by the (non-CP) transpose.
pub fn sample_channel(variant: Variant, dim: usize, rng: &mut ChaCha8Rng) -> Channel {
    match variant {
        Variant::Unitary => Channel::Unitary(sample_unitary(dim, rng)),
        Variant::Mixture => {
            let k = rng.random_range(2..=3);
            let mut left = 8i64;
            let mut weights = Vec::with_capacity(k);
            for i in 0..k {
                let w = if i + 1 == k { left } else { rng.random_range(1..=left - (k - 1 - i) as i64) };
                left -= w;
                weights.push(Scalar::ratio(w, 8));
            }
            let parts = (0..k).map(|_| Channel::Unitary(sample_unitary(dim, rng))).collect();
            Channel::mixture(weights, parts).expect("weights sum to one")
        }
        Variant::Super => {
            let kraus = rng.random_range(1..=3);
            let f = sample_cptp(dim, kraus, rng);
            if rng.random_bool(0.5) {
                f.then(&Channel::transpose(dim)).expect("matching dimensions")
            } else {
                f
            }
        }
    }
}

/// Wire form of a channel:
/// `{"type": "unitary", "u": M}`,
/// `{"type": "mixture", "weights": ["1/2", ...], "parts": [...]}`, or
/// `{"type": "super", "dim_in": n, "dim_out": m, "data": [[re, im], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ChannelJson {
    Unitary {
        u: ComplexMatrix,
    },
    Mixture {
        weights: Vec<String>,
        parts: Vec<ChannelJson>,
    },
    Super {
        dim_in: usize,
        dim_out: usize,
        data: Vec<[f64; 2]>,
    },
}

impl TryFrom<ChannelJson> for Channel {
    type Error = Error;

    fn try_from(j: ChannelJson) -> Result<Self> {
        match j {
            ChannelJson::Unitary { u } => Ok(Channel::Unitary(u)),
            ChannelJson::Mixture { weights, parts } => {
                let weights = weights.iter().map(|w| w.parse()).collect::<Result<Vec<Scalar>>>()?;
                let parts = parts.into_iter().map(Channel::try_from).collect::<Result<Vec<_>>>()?;
                Channel::mixture(weights, parts)
            }
            ChannelJson::Super { dim_in, dim_out, data } => {
                let data = data.iter().map(|&[re, im]| C64::new(re, im)).collect();
                Channel::superop(dim_in, dim_out, data)
            }
        }
    }
}

impl From<&Channel> for ChannelJson {
    fn from(c: &Channel) -> Self {
        match c {
            Channel::Unitary(u) => ChannelJson::Unitary { u: u.clone() },
            Channel::Mixture { weights, parts } => ChannelJson::Mixture {
                weights: (0..parts.len()).map(|k| weights.coeff(&k).to_string()).collect(),
                parts: parts.iter().map(ChannelJson::from).collect(),
            },
            Channel::Super { dim_in, dim_out, data } => ChannelJson::Super {
                dim_in: *dim_in,
                dim_out: *dim_out,
                data: data.iter().map(|z| [z.re, z.im]).collect(),
            },
        }
    }
}

impl Serialize for Channel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ChannelJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Channel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = ChannelJson::deserialize(d)?;
        Channel::try_from(j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix as M;
    use crate::sampling::sample;

    fn ket0() -> M {
        M::diag(&[1.0, 0.0])
    }

    fn ket1() -> M {
        M::diag(&[0.0, 1.0])
    }

    fn flip_mix() -> Channel {
        Channel::mixture(
            vec![Scalar::ratio(1, 2), Scalar::ratio(1, 2)],
            vec![Channel::identity(2), Channel::Unitary(M::pauli_x())],
        )
        .unwrap()
    }

    #[test]
    fn apply_examples() {
        let b = sample(OperatorKind::Density, 3, 1);
        assert!(apply_channel(&Channel::identity(3), &b, 1e-9).unwrap().approx_eq(&b, 1e-15).unwrap());
        let x = Channel::Unitary(M::pauli_x());
        assert_eq!(apply_channel(&x, &ket0(), 1e-9).unwrap(), ket1());
        let half = apply_channel(&flip_mix(), &ket0(), 1e-9).unwrap();
        assert!(half.approx_eq(&M::identity(2).scale_real(0.5), 1e-15).unwrap());
        assert_eq!(apply_channel(&x, &M::pauli_z(), 1e-9), Err(Error::NotDensity));
    }

    #[test]
    fn wp_examples() {
        let a = sample(OperatorKind::Effect, 2, 5);
        assert!(wp(&Channel::identity(2), &a, 1e-9).unwrap().approx_eq(&a, 1e-10).unwrap());
        let w = wp(&Channel::Unitary(M::pauli_x()), &ket0(), 1e-9).unwrap();
        assert!(w.approx_eq(&ket1(), 1e-10).unwrap());
        assert_eq!(wp(&Channel::identity(2), &M::identity(2).scale_real(2.0), 1e-9), Err(Error::NotEffect));
    }

    #[test]
    fn wp_unitary_matches_closed_form() {
        let mut rng = rng_from_seed(1);
        for dim in 2..=3 {
            for seed in 0..10 {
                let u = sample_unitary(dim, &mut rng);
                let a = sample(OperatorKind::Effect, dim, seed);
                let got = wp(&Channel::Unitary(u.clone()), &a, 1e-9).unwrap();
                let want = &(&u.dagger() * &a) * &u;
                assert!(got.max_diff(&want).unwrap() <= 1e-9);
            }
        }
    }

    #[test]
    fn unitary_superoperator_is_u_tensor_conj_u() {
        let mut rng = rng_from_seed(2);
        let u = Channel::Unitary(sample_unitary(3, &mut rng));
        let s = Channel::superop(3, 3, u.to_superoperator()).unwrap();
        let rho = sample(OperatorKind::Density, 3, 4);
        let a = u.apply_linear(&rho).unwrap();
        let b = s.apply_linear(&rho).unwrap();
        assert!(a.approx_eq(&b, 1e-12).unwrap());
    }

    #[test]
    fn transpose_is_valid_but_not_cp() {
        let t = Channel::transpose(2);
        t.validate(1e-9).unwrap();
        let e01 = M::outer_unit(0, 1, 2).unwrap();
        assert_eq!(t.apply_linear(&e01).unwrap(), M::outer_unit(1, 0, 2).unwrap());
        let a = sample(OperatorKind::Effect, 2, 3);
        let w = wp(&t, &a, 1e-9).unwrap();
        assert!(w.approx_eq(&a.transpose(), 1e-10).unwrap());
    }

    #[test]
    fn invalid_superoperator_rejected() {
        let mut data = Channel::identity(2).to_superoperator();
        data[0] = C64::new(2.0, 0.0);
        let bad = Channel::superop(2, 2, data).unwrap();
        assert!(matches!(bad.validate(1e-9), Err(Error::InvalidChannel(_))));
        assert!(matches!(apply_channel(&bad, &ket0(), 1e-9), Err(Error::InvalidChannel(_))));
        assert!(Channel::superop(2, 2, vec![ZERO; 3]).is_err());
    }

    #[test]
    fn sampled_channels_validate_and_satisfy_duality() {
        let mut rng = rng_from_seed(7);
        for variant in Variant::ALL {
            for dim in 2..=3 {
                let f = sample_channel(variant, dim, &mut rng);
                f.validate(1e-9).unwrap();
                let a = sample(OperatorKind::Effect, dim, 3);
                let w = wp(&f, &a, 1e-9).unwrap();
                assert!(duality_residual(&f, &a, &w, 20, 1).unwrap() <= 1e-9);
                let one = wp(&f, &M::identity(dim), 1e-9).unwrap();
                assert!(one.approx_eq(&M::identity(dim), 1e-10).unwrap());
            }
        }
    }

    #[test]
    fn composition_reverses_wp() {
        let mut rng = rng_from_seed(9);
        let f = sample_channel(Variant::Super, 2, &mut rng);
        let g = sample_channel(Variant::Mixture, 2, &mut rng);
        let a = sample(OperatorKind::Effect, 2, 1);
        let lhs = wp(&f.then(&g).unwrap(), &a, 1e-9).unwrap();
        let rhs = wp(&f, &wp(&g, &a, 1e-9).unwrap(), 1e-9).unwrap();
        assert!(lhs.approx_eq(&rhs, 1e-9).unwrap());
    }

    #[test]
    fn json_roundtrip() {
        let mut rng = rng_from_seed(3);
        for c in [flip_mix(), sample_channel(Variant::Super, 2, &mut rng), Channel::identity(2)] {
            let s = serde_json::to_string(&c).unwrap();
            let back: Channel = serde_json::from_str(&s).unwrap();
            assert_eq!(back, c);
        }
        let j = r#"{"type":"unitary","u":{"dim":2,"data":[[0,0],[1,0],[1,0],[0,0]]}}"#;
        let c: Channel = serde_json::from_str(j).unwrap();
        assert_eq!(c, Channel::Unitary(M::pauli_x()));
        let bad = r#"{"type":"mixture","weights":["1/2","1/3"],"parts":[]}"#;
        assert!(serde_json::from_str::<Channel>(bad).is_err());
    }
}
