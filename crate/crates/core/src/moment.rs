//! Moment map `ψ(z) = (i/2) zz*` of the standard representation of `U(n)`,
//! `SU(n)` and `Sp(n) ⊂ U(2n)`, paired against explicit Lie algebra bases with
//! `⟨A, B⟩ = trace(A*B)`, plus a seeded zero-level probe.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::Matrix;
use crate::scalars::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MomentError {
    #[error("vector has length {got}, representation has dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("pairing with basis matrix {index} has nonzero imaginary part")]
    NotReal { index: usize },
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("at least one sample is required")]
    NoSamples,
    #[error("unknown group `{0}`; expected su, sp or u")]
    UnknownGroup(String),
}

/// Exact complex number with rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    pub fn zero() -> Self {
        GaussianRational::real(Rational::zero())
    }

    pub fn one() -> Self {
        GaussianRational::real(Rational::one())
    }

    pub fn i() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn scale(&self, t: &Rational) -> Self {
        GaussianRational { re: &self.re * t, im: &self.im * t }
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) if self.im.is_negative() => write!(f, "{}-{}i", self.re, self.im.abs()),
            (false, false) => write!(f, "{}+{}i", self.re, self.im),
        }
    }
}

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<GaussianRational>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix { dim, entries: vec![GaussianRational::zero(); dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussianRational {
        &self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: GaussianRational) {
        self.entries[r * self.dim + c] = value;
    }

    pub fn is_skew_hermitian(&self) -> bool {
        (0..self.dim).all(|r| (0..self.dim).all(|c| *self.get(r, c) == -&self.get(c, r).conj()))
    }

    pub fn trace(&self) -> GaussianRational {
        (0..self.dim).fold(GaussianRational::zero(), |acc, i| &acc + self.get(i, i))
    }

    /// `trace(self* · other)`.
    pub fn pairing(&self, other: &ComplexMatrix) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for r in 0..self.dim {
            for c in 0..self.dim {
                acc = &acc + &(&self.get(r, c).conj() * other.get(r, c));
            }
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum LieGroup {
    SpecialUnitary,
    CompactSymplectic,
    FullUnitary,
}

impl LieGroup {
    /// Dimension of the standard representation.
    pub fn rep_dim(self, n: usize) -> usize {
        match self {
            LieGroup::CompactSymplectic => 2 * n,
            _ => n,
        }
    }

    /// Real dimension of the Lie algebra.
    pub fn real_dim(self, n: usize) -> usize {
        match self {
            LieGroup::SpecialUnitary => n * n - 1,
            LieGroup::CompactSymplectic => 2 * n * n + n,
            LieGroup::FullUnitary => n * n,
        }
    }
}

impl fmt::Display for LieGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LieGroup::SpecialUnitary => "specialUnitary",
            LieGroup::CompactSymplectic => "compactSymplectic",
            LieGroup::FullUnitary => "fullUnitary",
        })
    }
}

impl FromStr for LieGroup {
    type Err = MomentError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "su" | "specialUnitary" => Ok(LieGroup::SpecialUnitary),
            "sp" | "compactSymplectic" => Ok(LieGroup::CompactSymplectic),
            "u" | "fullUnitary" => Ok(LieGroup::FullUnitary),
            _ => Err(MomentError::UnknownGroup(s.to_string())),
        }
    }
}

/// Standard basis of skew-Hermitian matrices for `group(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebraBasis {
    pub group: LieGroup,
    pub n: usize,
    matrices: Vec<ComplexMatrix>,
    /// Nonzero entries `(row, col, re, im)` of each matrix; the standard
    /// bases have Gaussian-integer entries.
    support: Vec<Vec<(usize, usize, BigInt, BigInt)>>,
}

fn q(v: i64) -> Rational {
    Rational::from(v)
}

fn im(v: i64) -> GaussianRational {
    GaussianRational::new(Rational::zero(), q(v))
}

fn re(v: i64) -> GaussianRational {
    GaussianRational::real(q(v))
}

/// Off-diagonal generators `E_jk − E_kj` and `i(E_jk + E_kj)`, `j < k < dim`.
fn off_diagonal(dim: usize) -> Vec<ComplexMatrix> {
    let mut out = Vec::new();
    for j in 0..dim {
        for k in j + 1..dim {
            let mut a = ComplexMatrix::zeros(dim);
            a.set(j, k, re(1));
            a.set(k, j, re(-1));
            out.push(a);
            let mut b = ComplexMatrix::zeros(dim);
            b.set(j, k, im(1));
            b.set(k, j, im(1));
            out.push(b);
        }
    }
    out
}

fn unitary_basis(n: usize) -> Vec<ComplexMatrix> {
    let mut out: Vec<ComplexMatrix> = (0..n)
        .map(|j| {
            let mut m = ComplexMatrix::zeros(n);
            m.set(j, j, im(1));
            m
        })
        .collect();
    out.extend(off_diagonal(n));
    out
}

/// `[[A, B], [−B̄, Ā]]` with `A ∈ u(n)` and `B` complex symmetric.
fn symplectic_block(n: usize, a: Option<&ComplexMatrix>, b: Option<&ComplexMatrix>) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2 * n);
    for r in 0..n {
        for c in 0..n {
            if let Some(a) = a {
                m.set(r, c, a.get(r, c).clone());
                m.set(r + n, c + n, a.get(r, c).conj());
            }
            if let Some(b) = b {
                m.set(r, c + n, b.get(r, c).clone());
                m.set(r + n, c, -&b.get(r, c).conj());
            }
        }
    }
    m
}

impl LieAlgebraBasis {
    pub fn new(group: LieGroup, n: usize) -> Result<Self, MomentError> {
        if n == 0 {
            return Err(MomentError::ZeroRank);
        }
        let matrices = match group {
            LieGroup::FullUnitary => unitary_basis(n),
            LieGroup::SpecialUnitary => {
                let mut out: Vec<ComplexMatrix> = (0..n - 1)
                    .map(|j| {
                        let mut m = ComplexMatrix::zeros(n);
                        m.set(j, j, im(1));
                        m.set(j + 1, j + 1, im(-1));
                        m
                    })
                    .collect();
                out.extend(off_diagonal(n));
                out
            }
            LieGroup::CompactSymplectic => {
                let mut out: Vec<ComplexMatrix> =
                    unitary_basis(n).iter().map(|a| symplectic_block(n, Some(a), None)).collect();
                for j in 0..n {
                    for k in j..n {
                        for unit in [re(1), im(1)] {
                            let mut b = ComplexMatrix::zeros(n);
                            b.set(j, k, unit.clone());
                            b.set(k, j, unit);
                            out.push(symplectic_block(n, None, Some(&b)));
                        }
                    }
                }
                out
            }
        };
        let support = matrices
            .iter()
            .map(|m| {
                let d = m.dim();
                (0..d * d)
                    .map(|i| (i / d, i % d))
                    .filter(|&(r, c)| !m.get(r, c).is_zero())
                    .map(|(r, c)| {
                        let x = m.get(r, c);
                        debug_assert!(x.re.is_integer() && x.im.is_integer());
                        (r, c, x.re.numer().clone(), x.im.numer().clone())
                    })
                    .collect()
            })
            .collect();
        Ok(LieAlgebraBasis { group, n, matrices, support })
    }

    pub fn rep_dim(&self) -> usize {
        self.group.rep_dim(self.n)
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.matrices
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    /// Real Gram matrix `Re trace(ξ_a* ξ_b)`.
    pub fn gram(&self) -> Matrix<Rational> {
        let k = self.len();
        let mut g = Matrix::zeros(k, k);
        for a in 0..k {
            for b in 0..k {
                g.set(a, b, self.matrices[a].pairing(&self.matrices[b]).re);
            }
        }
        g
    }

    /// Relabels coordinates by a permutation of `0..n`; for the symplectic
    /// group it acts diagonally on both blocks.
    fn permute(&self, z: &[GaussianRational], perm: &[usize]) -> Vec<GaussianRational> {
        let mut out = vec![GaussianRational::zero(); z.len()];
        for (j, &p) in perm.iter().enumerate() {
            out[p] = z[j].clone();
            if self.group == LieGroup::CompactSymplectic {
                out[p + self.n] = z[j + self.n].clone();
            }
        }
        out
    }
}

/// Components `⟨ψ(z), ξ_a⟩`, one per basis matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MomentValue {
    pub components: Vec<Rational>,
}

impl MomentValue {
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Rational::is_zero)
    }

    /// `cᵀ G⁻¹ c`, the invariant squared norm of the covector.
    pub fn norm_squared(&self, gram_inverse: &Matrix<Rational>) -> Rational {
        let gc = gram_inverse.mul_vec(&self.components);
        self.components.iter().zip(&gc).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }
}

/// `⟨(i/2)zz*, ξ⟩ = trace(((i/2)zz*)* ξ) = (−i/2) z*ξz`, required to be real.
pub fn moment_value(basis: &LieAlgebraBasis, z: &[GaussianRational]) -> Result<MomentValue, MomentError> {
    if z.len() != basis.rep_dim() {
        return Err(MomentError::DimensionMismatch { expected: basis.rep_dim(), got: z.len() });
    }
    // With w = Dz integral, z*ξz = w*ξw / D²; the sums below stay in Z[i].
    let d = z.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.re.denom()).lcm(x.im.denom()));
    let scaled = |x: &Rational| -> BigInt { x.numer() * (&d / x.denom()) };
    let a: Vec<BigInt> = z.iter().map(|x| scaled(&x.re)).collect();
    let b: Vec<BigInt> = z.iter().map(|x| scaled(&x.im)).collect();
    let two_d2: BigInt = &d * &d * 2;
    let components: Vec<Rational> = basis
        .support
        .iter()
        .enumerate()
        .map(|(index, entries)| {
            // conj(w_r) ξ_rc w_c = (xr + i·xi)(a_r a_c + b_r b_c + i(a_r b_c − b_r a_c))
            let (mut re, mut im) = (BigInt::zero(), BigInt::zero());
            for (r, c, xr, xi) in entries {
                let pr = &a[*r] * &a[*c] + &b[*r] * &b[*c];
                let pi = &a[*r] * &b[*c] - &b[*r] * &a[*c];
                re += xr * &pr - xi * &pi;
                im += xr * &pi + xi * &pr;
            }
            // (−i/2)(re + i·im) = (im − i·re) / 2
            if re.is_zero() {
                Ok(Rational::new(im, two_d2.clone()).expect("D ≠ 0"))
            } else {
                Err(MomentError::NotReal { index })
            }
        })
        .collect::<Result<_, _>>()?;
    Ok(MomentValue { components })
}

/// Outcome of [`zero_level_probe`]. Sampling evidence only, not a proof.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ProbeReport {
    pub group: LieGroup,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    /// Nonzero sampled vectors whose moment value vanishes.
    pub counterexamples: Vec<Vec<String>>,
    pub non_real_samples: usize,
    pub scaling_failures: usize,
    pub weyl_failures: usize,
    pub zero_maps_to_zero: bool,
    pub evidence: &'static str,
}

impl ProbeReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
            && self.non_real_samples == 0
            && self.scaling_failures == 0
            && self.weyl_failures == 0
            && self.zero_maps_to_zero
    }
}

impl fmt::Display for ProbeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "moment probe {}({}), {} samples, seed {}", self.group, self.n, self.samples, self.seed)?;
        writeln!(f, "  zero-level counterexamples: {}", self.counterexamples.len())?;
        for z in &self.counterexamples {
            writeln!(f, "    z = ({})", z.join(", "))?;
        }
        writeln!(f, "  non-real pairings: {}", self.non_real_samples)?;
        writeln!(f, "  t^2 scaling failures: {}", self.scaling_failures)?;
        writeln!(f, "  Weyl permutation failures: {}", self.weyl_failures)?;
        writeln!(f, "  psi(0) = 0: {}", self.zero_maps_to_zero)?;
        write!(f, "  note: {}", self.evidence)
    }
}

#[derive(Default)]
struct SampleOutcome {
    counterexample: Option<Vec<String>>,
    non_real: bool,
    scaling_failed: bool,
    weyl_failed: bool,
}

fn random_rational(rng: &mut ChaCha8Rng, span: i64) -> Rational {
    Rational::frac(rng.random_range(-span..=span), rng.random_range(1..=6))
}

fn random_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<GaussianRational> {
    loop {
        let z: Vec<GaussianRational> = (0..dim)
            .map(|_| GaussianRational::new(random_rational(rng, 9), random_rational(rng, 9)))
            .collect();
        if z.iter().any(|x| !x.is_zero()) {
            return z;
        }
    }
}

/// Stream `index` of the generator seeded by `seed`; results do not depend on
/// the order in which samples are evaluated.
fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn probe_sample(basis: &LieAlgebraBasis, gram_inverse: &Matrix<Rational>, seed: u64, index: u64) -> SampleOutcome {
    let mut rng = sample_rng(seed, index);
    let z = random_vector(&mut rng, basis.rep_dim());
    let t = loop {
        let t = random_rational(&mut rng, 7);
        if !t.is_zero() {
            break t;
        }
    };
    let mut perm: Vec<usize> = (0..basis.n).collect();
    perm.shuffle(&mut rng);

    let Ok(value) = moment_value(basis, &z) else {
        return SampleOutcome { non_real: true, ..SampleOutcome::default() };
    };
    let scaled: Vec<GaussianRational> = z.iter().map(|x| x.scale(&t)).collect();
    let permuted = basis.permute(&z, &perm);
    let (Ok(scaled_value), Ok(permuted_value)) = (moment_value(basis, &scaled), moment_value(basis, &permuted))
    else {
        return SampleOutcome { non_real: true, ..SampleOutcome::default() };
    };
    let t2 = &t * &t;
    SampleOutcome {
        counterexample: value.is_zero().then(|| z.iter().map(ToString::to_string).collect()),
        non_real: false,
        scaling_failed: value.components.iter().zip(&scaled_value.components).any(|(a, b)| &(a * &t2) != b),
        weyl_failed: value.norm_squared(gram_inverse) != permuted_value.norm_squared(gram_inverse),
    }
}

/// Draws `samples` nonzero Gaussian-rational vectors and looks for points of
/// the zero level other than the origin, checking reality of every pairing,
/// the `t²` scaling law and Weyl-permutation invariance of the norm on the way.
pub fn zero_level_probe(basis: &LieAlgebraBasis, samples: usize, seed: u64) -> Result<ProbeReport, MomentError> {
    if samples == 0 {
        return Err(MomentError::NoSamples);
    }
    let gram_inverse = basis.gram().inverse().expect("basis matrices are linearly independent");
    let outcomes: Vec<SampleOutcome> = (0..samples as u64)
        .into_par_iter()
        .map(|i| probe_sample(basis, &gram_inverse, seed, i))
        .collect();
    let zero = vec![GaussianRational::zero(); basis.rep_dim()];
    Ok(ProbeReport {
        group: basis.group,
        n: basis.n,
        samples,
        seed,
        counterexamples: outcomes.iter().filter_map(|o| o.counterexample.clone()).collect(),
        non_real_samples: outcomes.iter().filter(|o| o.non_real).count(),
        scaling_failures: outcomes.iter().filter(|o| o.scaling_failed).count(),
        weyl_failures: outcomes.iter().filter(|o| o.weyl_failed).count(),
        zero_maps_to_zero: moment_value(basis, &zero)?.is_zero(),
        evidence: "sampling evidence, not a proof",
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gz(pairs: &[(i64, i64)]) -> Vec<GaussianRational> {
        pairs.iter().map(|&(a, b)| GaussianRational::new(q(a), q(b))).collect()
    }

    #[test]
    fn basis_invariants() {
        for n in 1..=4 {
            for group in [LieGroup::SpecialUnitary, LieGroup::CompactSymplectic, LieGroup::FullUnitary] {
                let basis = LieAlgebraBasis::new(group, n).unwrap();
                assert_eq!(basis.len(), group.real_dim(n), "{group}({n})");
                assert!(basis.matrices().iter().all(ComplexMatrix::is_skew_hermitian));
                if group == LieGroup::SpecialUnitary {
                    assert!(basis.matrices().iter().all(|m| m.trace().is_zero()));
                }
                if !basis.is_empty() {
                    assert!(basis.gram().inverse().is_ok(), "{group}({n}) basis is independent");
                }
            }
        }
    }

    #[test]
    fn symplectic_basis_preserves_j() {
        // ξᵀJ + Jξ = 0 with J = [[0, I], [−I, 0]]
        let n = 2;
        let basis = LieAlgebraBasis::new(LieGroup::CompactSymplectic, n).unwrap();
        let j = |r: usize, c: usize| -> i64 {
            match (r < n, c < n) {
                (true, false) if c - n == r => 1,
                (false, true) if r - n == c => -1,
                _ => 0,
            }
        };
        for xi in basis.matrices() {
            for r in 0..2 * n {
                for c in 0..2 * n {
                    let mut acc = GaussianRational::zero();
                    for k in 0..2 * n {
                        acc = &acc + &xi.get(k, r).scale(&q(j(k, c)));
                        acc = &acc + &xi.get(k, c).scale(&q(j(r, k)));
                    }
                    assert!(acc.is_zero());
                }
            }
        }
    }

    #[test]
    fn small_values() {
        let u1 = LieAlgebraBasis::new(LieGroup::FullUnitary, 1).unwrap();
        let v = moment_value(&u1, &gz(&[(1, 0)])).unwrap();
        assert_eq!(v.components, vec![Rational::frac(1, 2)]);

        let su2 = LieAlgebraBasis::new(LieGroup::SpecialUnitary, 2).unwrap();
        let v = moment_value(&su2, &gz(&[(1, 0), (0, 0)])).unwrap();
        assert_eq!(v.components[0], Rational::frac(1, 2));

        for group in [LieGroup::SpecialUnitary, LieGroup::CompactSymplectic, LieGroup::FullUnitary] {
            let basis = LieAlgebraBasis::new(group, 3).unwrap();
            let zero = vec![GaussianRational::zero(); basis.rep_dim()];
            assert!(moment_value(&basis, &zero).unwrap().is_zero());
        }
        assert_eq!(
            moment_value(&su2, &gz(&[(1, 0)])),
            Err(MomentError::DimensionMismatch { expected: 2, got: 1 })
        );
    }

    #[test]
    fn components_match_direct_trace() {
        // oracle: build A = (i/2)zz* explicitly and take trace(A* ξ)
        let basis = LieAlgebraBasis::new(LieGroup::CompactSymplectic, 2).unwrap();
        let z = gz(&[(1, 2), (-3, 1), (0, 5), (2, -2)]);
        let half_i = GaussianRational::new(Rational::zero(), Rational::frac(1, 2));
        let mut a = ComplexMatrix::zeros(4);
        for r in 0..4 {
            for c in 0..4 {
                a.set(r, c, &half_i * &(&z[r] * &z[c].conj()));
            }
        }
        let value = moment_value(&basis, &z).unwrap();
        for (xi, comp) in basis.matrices().iter().zip(&value.components) {
            let direct = a.pairing(xi);
            assert!(direct.im.is_zero());
            assert_eq!(&direct.re, comp);
        }
    }

    #[test]
    fn probe_finds_no_counterexamples() {
        for group in [LieGroup::SpecialUnitary, LieGroup::CompactSymplectic] {
            for n in 2..=3 {
                let basis = LieAlgebraBasis::new(group, n).unwrap();
                let report = zero_level_probe(&basis, 200, 7).unwrap();
                assert!(report.passed(), "{report}");
            }
        }
        let u1 = LieAlgebraBasis::new(LieGroup::FullUnitary, 1).unwrap();
        assert!(zero_level_probe(&u1, 200, 1).unwrap().passed());
        assert_eq!(zero_level_probe(&u1, 0, 1), Err(MomentError::NoSamples));
    }

    #[test]
    fn su1_zero_level_is_everything() {
        // su(1) = 0, so every vector lies in the zero level
        let su1 = LieAlgebraBasis::new(LieGroup::SpecialUnitary, 1).unwrap();
        assert!(su1.is_empty());
        assert!(moment_value(&su1, &gz(&[(3, 4)])).unwrap().is_zero());
    }

    #[test]
    fn probe_is_deterministic() {
        let basis = LieAlgebraBasis::new(LieGroup::SpecialUnitary, 3).unwrap();
        let a = zero_level_probe(&basis, 50, 42).unwrap();
        let b = zero_level_probe(&basis, 50, 42).unwrap();
        assert_eq!(a, b);
        let mut r1 = sample_rng(42, 3);
        let mut r2 = sample_rng(42, 3);
        assert_eq!(random_vector(&mut r1, 4), random_vector(&mut r2, 4));
    }

    #[test]
    fn group_names() {
        assert_eq!("su".parse::<LieGroup>().unwrap(), LieGroup::SpecialUnitary);
        assert_eq!("sp".parse::<LieGroup>().unwrap(), LieGroup::CompactSymplectic);
        assert_eq!("u".parse::<LieGroup>().unwrap(), LieGroup::FullUnitary);
        assert!("so".parse::<LieGroup>().is_err());
        assert_eq!(GaussianRational::new(q(1), q(-2)).to_string(), "1-2i");
    }
}
