//! Cohomology of the `CP^n`-bundle `M → B` obtained from a principal circle
//! bundle with Chern class `c` over a 4-dimensional base.
//!
//! `H*(M)` is the free `H*(B)`-module on `1, u, …, u^n` subject to
//! `u^{n+1} = β₄u^{n−1} + β₂u^n`. The coefficients β₂, β₄ are obtained from
//! two fibre integrals over the radius-√ε ball model of the fibre: the first
//! moment `∫ (r²/2)` fixes β₂ and the second moment `∫ (r²/2)²` fixes
//! `β₄ + β₂²`. The symplectic class of `M` is `Ω = x + u` with `x` the
//! pull-back of the base symplectic class.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, Element, GradedBasis, PDAlgebra};
use crate::lefschetz::{lefschetz_matrix, SymbolicRank};
use crate::linalg::{same_span, Matrix};
use crate::scalars::{EpsFraction, Field, PiEpsScalar, Rational, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("base must have top degree 4, got {0}")]
    BaseNotFourDimensional(usize),
    #[error("base is not a Poincaré-duality algebra: {0}")]
    BaseNotPd(String),
    #[error("the Chern class must be homogeneous of degree 2")]
    ChernDegree,
    #[error("base ring has no degree-2 `omega` class")]
    MissingOmega,
    #[error("fiber dimension must be at least 1")]
    FiberDim,
    #[error("epsilon must be positive, got {0}")]
    EpsNotPositive(Rational),
    #[error("a symbolic epsilon needs the Q(ε) coefficient field")]
    SymbolicNeedsFunctionField,
    #[error("pi did not cancel in fibre integral ratio {0}")]
    PiDidNotCancel(String),
    #[error("k = {k} is outside the analysed range 1..={max}")]
    CaseOutOfRange { k: usize, max: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// How the parameter ε is fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EpsChoice {
    /// ε stays a formal parameter; coefficients live in Q(ε).
    Symbolic,
    /// A positive rational value.
    Value(Rational),
}

impl fmt::Display for EpsChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EpsChoice::Symbolic => f.write_str("sym"),
            EpsChoice::Value(r) => write!(f, "{r}"),
        }
    }
}

/// Coefficient fields a total space can be built over.
pub trait FibrationField: SymbolicRank {
    fn epsilon(choice: &EpsChoice) -> Result<Self, BuildError>;
}

impl FibrationField for Rational {
    fn epsilon(choice: &EpsChoice) -> Result<Self, BuildError> {
        match choice {
            EpsChoice::Symbolic => Err(BuildError::SymbolicNeedsFunctionField),
            EpsChoice::Value(r) => Ok(r.clone()),
        }
    }
}

impl FibrationField for EpsFraction {
    fn epsilon(choice: &EpsChoice) -> Result<Self, BuildError> {
        Ok(match choice {
            EpsChoice::Symbolic => EpsFraction::eps(),
            EpsChoice::Value(r) => EpsFraction::from_rational(r.clone()),
        })
    }
}

/// Input of the construction. Geometric constraints such as `ε < δ` carry no
/// cohomological content and are not represented; only `ε > 0` is enforced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibrationSpec {
    pub base: PDAlgebra<Rational>,
    pub chern: Element<Rational>,
    /// Recorded, not enforced arithmetically.
    pub chern_integral: bool,
    pub fiber_dim: usize,
    pub eps: EpsChoice,
}

impl FibrationSpec {
    pub fn new(
        base: PDAlgebra<Rational>,
        chern: Element<Rational>,
        fiber_dim: usize,
        eps: EpsChoice,
    ) -> Result<Self, BuildError> {
        if base.top_degree() != 4 {
            return Err(BuildError::BaseNotFourDimensional(base.top_degree()));
        }
        let axioms = base.check_axioms();
        if let Some(v) = axioms.violations.first() {
            return Err(BuildError::BaseNotPd(v.to_string()));
        }
        if let Some(f) = base.check_poincare_duality().failures().next() {
            return Err(BuildError::BaseNotPd(format!("pairing in degree {} is degenerate", f.k)));
        }
        if !base.is_homogeneous_of(&chern, 2) {
            return Err(BuildError::ChernDegree);
        }
        match base.class("omega") {
            Some(w) if base.is_homogeneous_of(w, 2) => {}
            _ => return Err(BuildError::MissingOmega),
        }
        if fiber_dim == 0 {
            return Err(BuildError::FiberDim);
        }
        if let EpsChoice::Value(r) = &eps {
            if !r.is_positive() {
                return Err(BuildError::EpsNotPositive(r.clone()));
            }
        }
        Ok(FibrationSpec { base, chern, chern_integral: true, fiber_dim, eps })
    }

    pub fn with_eps(&self, eps: EpsChoice) -> Result<Self, BuildError> {
        FibrationSpec::new(self.base.clone(), self.chern.clone(), self.fiber_dim, eps)
    }

    fn base_omega(&self) -> &Element<Rational> {
        self.base.class("omega").expect("validated in FibrationSpec::new")
    }
}

/// `r`-monomial `coefficient · π^pi_exp · r^r_exp` used for radial integrals.
#[derive(Debug, Clone)]
struct RadialMonomial {
    coefficient: Rational,
    pi_exp: u32,
    r_exp: u32,
}

impl RadialMonomial {
    fn mul(&self, other: &RadialMonomial) -> RadialMonomial {
        RadialMonomial {
            coefficient: &self.coefficient * &other.coefficient,
            pi_exp: self.pi_exp + other.pi_exp,
            r_exp: self.r_exp + other.r_exp,
        }
    }

    /// `∫₀^{√ε} self dr`, which is a monomial in ε when the antiderivative
    /// has even degree in r.
    fn integrate_to_sqrt_eps(&self) -> PiEpsScalar {
        let degree = self.r_exp + 1;
        assert!(degree % 2 == 0, "antiderivative r^{degree} is not a power of ε");
        let coefficient = &self.coefficient / &Rational::from(i64::from(degree));
        PiEpsScalar::new(coefficient, self.pi_exp, degree / 2)
    }
}

fn factorial(n: usize) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * Rational::from(k))
}

/// Volume `2π^n r^{2n−1} / Γ(n)` of the round sphere `S^{2n−1}` of radius r,
/// with `Γ(n) = (n−1)!`.
fn sphere_volume(n: usize) -> RadialMonomial {
    RadialMonomial {
        coefficient: Rational::from(2) / factorial(n - 1),
        pi_exp: n as u32,
        r_exp: 2 * n as u32 - 1,
    }
}

/// `∫₀^{√ε} (r²/2)^p · vol(S^{2n−1}_r) dr = π^n ε^{n+p} / (2^p (n+p) (n−1)!)`.
/// `p = 0` is the fibre volume.
pub fn moment_sphere_integral(n: usize, p: u32) -> PiEpsScalar {
    assert!(n >= 1, "fiber dimension must be positive");
    let moment = RadialMonomial {
        coefficient: Rational::frac(1, 2).pow(p),
        pi_exp: 0,
        r_exp: 2 * p,
    };
    moment.mul(&sphere_volume(n)).integrate_to_sqrt_eps()
}

/// Symplectic volume `π^n ε^n / Γ(n+1)` of the fibre.
pub fn fiber_volume(n: usize) -> PiEpsScalar {
    PiEpsScalar::new(factorial(n).recip().expect("n! > 0"), n as u32, n as u32)
}

fn to_field<F: Field>(x: &PiEpsScalar, eps: &F) -> Result<F, BuildError> {
    if x.pi_exp() != 0 {
        return Err(BuildError::PiDidNotCancel(x.to_string()));
    }
    let mut out = F::from_rational(x.coefficient().clone());
    for _ in 0..x.eps_exp() {
        out = out * eps;
    }
    Ok(out)
}

/// β₂ ∈ H²(B) and β₄ ∈ H⁴(B), over the coefficient field of the build.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Betas<F> {
    pub beta2: Element<F>,
    pub beta4: Element<F>,
}

/// Derives β₂ and β₄ from the fibre-integral identities
/// `β₂ · V = (n+1) · I₁ · c` and `(β₄ + β₂²) · V = ((n+1)(n+2)/2) · I₂ · c²`,
/// where `V` is the fibre volume and `I_p` the p-th moment integral.
pub fn derive_betas<F: FibrationField>(spec: &FibrationSpec) -> Result<Betas<F>, BuildError> {
    let n = spec.fiber_dim;
    let eps = F::epsilon(&spec.eps)?;
    let base: PDAlgebra<F> = spec.base.lift();
    let c: Element<F> = spec.chern.map(|x| F::from_rational(x.clone()));
    let volume = fiber_volume(n);

    let n1 = Rational::from(n as i64 + 1);
    let n2 = Rational::from(n as i64 + 2);
    let first = moment_sphere_integral(n, 1).scale(&n1).checked_div(&volume)?;
    let second = moment_sphere_integral(n, 2)
        .scale(&(&n1 * &n2 / Rational::from(2)))
        .checked_div(&volume)?;

    let beta2 = c.scale(&to_field(&first, &eps)?);
    let c2 = base.multiply(&c, &c);
    let beta4 = c2.scale(&to_field(&second, &eps)?).sub(&base.multiply(&beta2, &beta2));
    Ok(Betas { beta2, beta4 })
}

/// Closed forms `β₂ = (nε/2)c` and `β₄ = (n(1−n)ε²/8)c²`.
pub fn closed_form_betas<F: FibrationField>(spec: &FibrationSpec) -> Result<Betas<F>, BuildError> {
    let n = spec.fiber_dim as i64;
    let eps = F::epsilon(&spec.eps)?;
    let base: PDAlgebra<F> = spec.base.lift();
    let c: Element<F> = spec.chern.map(|x| F::from_rational(x.clone()));
    let b2 = F::from_rational(Rational::frac(n, 2)) * &eps;
    let b4 = F::from_rational(Rational::frac(n * (1 - n), 8)) * &eps * &eps;
    Ok(Betas { beta2: c.scale(&b2), beta4: base.multiply(&c, &c).scale(&b4) })
}

/// The ring `H*(M)` with its Leray–Hirsch bookkeeping.
#[derive(Clone)]
pub struct TotalSpaceRing<F> {
    pub algebra: PDAlgebra<F>,
    pub omega_total: Element<F>,
    pub betas: Betas<F>,
    pub spec: FibrationSpec,
    /// The base ring over the same coefficient field.
    pub base: PDAlgebra<F>,
    /// `index[j][i]` is the global index of `b_i · u^j`.
    index: Vec<Vec<usize>>,
}

fn generator_name(base: &GradedBasis, i: usize, j: usize) -> String {
    let b = base.name(i);
    match (i == base.unit(), j) {
        (_, 0) => b.to_string(),
        (true, 1) => "u".to_string(),
        (true, _) => format!("u^{j}"),
        (false, 1) => format!("{b}.u"),
        (false, _) => format!("{b}.u^{j}"),
    }
}

impl<F: Field> fmt::Debug for TotalSpaceRing<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TotalSpaceRing")
            .field("algebra", &self.algebra)
            .field("omega_total", &self.omega_total)
            .field("betas", &self.betas)
            .finish()
    }
}

impl<F: FibrationField> TotalSpaceRing<F> {
    /// Leray–Hirsch construction: basis `b_i u^j` (`0 ≤ j ≤ n`) and products
    /// reduced by repeated substitution of `u^{n+1} = β₄u^{n−1} + β₂u^n`.
    pub fn build(spec: &FibrationSpec) -> Result<Self, BuildError> {
        let n = spec.fiber_dim;
        let betas = derive_betas::<F>(spec)?;
        let base: PDAlgebra<F> = spec.base.lift();
        let bb = base.basis();

        // u^e = Σ_j reductions[e][j] · u^j with coefficients in H*(B)
        let mut reductions: Vec<Vec<Element<F>>> = Vec::with_capacity(2 * n + 1);
        for e in 0..=2 * n {
            let mut row = vec![Element::zero(); n + 1];
            if e <= n {
                row[e] = base.one();
            } else {
                let prev = &reductions[e - 1];
                for j in 0..n {
                    row[j + 1] = row[j + 1].add(&prev[j]);
                }
                let spill = &prev[n];
                row[n - 1] = row[n - 1].add(&base.multiply(spill, &betas.beta4));
                row[n] = row[n].add(&base.multiply(spill, &betas.beta2));
            }
            reductions.push(row);
        }

        let top = bb.top_degree() + 2 * n;
        let mut per_degree: Vec<Vec<String>> = vec![Vec::new(); top + 1];
        let mut slots: Vec<Vec<(usize, usize)>> = vec![Vec::new(); top + 1];
        for j in 0..=n {
            for i in 0..bb.len() {
                let d = bb.degree(i) + 2 * j;
                per_degree[d].push(generator_name(bb, i, j));
                slots[d].push((i, j));
            }
        }
        let basis = GradedBasis::new(top, per_degree)?;
        let mut index = vec![vec![0; bb.len()]; n + 1];
        for (g, &(i, j)) in slots.iter().flatten().enumerate() {
            index[j][i] = g;
        }
        let pairs: Vec<(usize, usize)> = slots.into_iter().flatten().collect();

        let size = pairs.len();
        let mut table = Vec::with_capacity(size * size);
        for &(i, j) in &pairs {
            for &(i2, j2) in &pairs {
                let bprod = base.basis_product(i, i2);
                let mut out = Element::zero();
                if !bprod.is_zero() {
                    for (jj, coeff) in reductions[j + j2].iter().enumerate() {
                        if coeff.is_zero() {
                            continue;
                        }
                        for (t, c) in base.multiply(bprod, coeff).terms() {
                            out.add_term(index[jj][t], c.clone());
                        }
                    }
                }
                table.push(out);
            }
        }

        let mut algebra = PDAlgebra::from_table(total_space_name(spec), basis, table);
        let x: Element<F> = spec.base_omega().map(|c| F::from_rational(c.clone()));
        let lift0 = |e: &Element<F>| Element::from_terms(e.terms().map(|(i, c)| (index[0][i], c.clone())));
        let omega_total = lift0(&x).add(&Element::basis(index[1][bb.unit()]));
        algebra.set_class("omega", omega_total.clone());
        algebra.set_class("chern", lift0(&spec.chern.map(|c| F::from_rational(c.clone()))));

        Ok(TotalSpaceRing { algebra, omega_total, betas, spec: spec.clone(), base, index })
    }

    pub fn fiber_dim(&self) -> usize {
        self.spec.fiber_dim
    }

    /// `b · u^j` for a base class `b`, `j ≤ n`.
    pub fn lift(&self, b: &Element<F>, j: usize) -> Element<F> {
        Element::from_terms(b.terms().map(|(i, c)| (self.index[j][i], c.clone())))
    }

    pub fn u(&self) -> Element<F> {
        Element::basis(self.index[1][self.base.basis().unit()])
    }

    /// Pull-back `x` of the base symplectic class.
    pub fn x(&self) -> Element<F> {
        let x: Element<F> = self.spec.base_omega().map(|c| F::from_rational(c.clone()));
        self.lift(&x, 0)
    }

    /// Checks `u^{n+1} = β₄u^{n−1} + β₂u^n` inside the constructed algebra.
    pub fn relation_holds(&self) -> bool {
        let n = self.fiber_dim();
        let lhs = self.algebra.power(&self.u(), n + 1);
        let rhs = self.lift(&self.betas.beta4, n - 1).add(&self.lift(&self.betas.beta2, n));
        lhs == rhs
    }

    /// Kernel of the generic Lefschetz map `Ω^k`, as elements of `H*(M)`.
    pub fn matrix_kernel(&self, k: usize) -> Vec<Element<F>> {
        let m = self.algebra.basis().half_dim();
        let source = self.algebra.basis().range(m - k);
        let matrix = lefschetz_matrix(&self.algebra, &self.omega_total, k).expect("k ≤ m");
        matrix
            .rank_kernel()
            .kernel
            .vectors
            .into_iter()
            .map(|v| Element::from_terms(source.clone().zip(v)))
            .collect()
    }
}

impl TotalSpaceRing<EpsFraction> {
    /// Substitutes ε = `at` throughout.
    pub fn specialize(&self, at: &Rational) -> Result<TotalSpaceRing<Rational>, BuildError> {
        let ev = |c: &EpsFraction| c.eval(at);
        let spec = self.spec.with_eps(EpsChoice::Value(at.clone()))?;
        let mut algebra = self.algebra.specialize(at)?;
        algebra.set_name(total_space_name(&spec));
        Ok(TotalSpaceRing {
            algebra,
            omega_total: self.omega_total.try_map(ev)?,
            betas: Betas { beta2: self.betas.beta2.try_map(ev)?, beta4: self.betas.beta4.try_map(ev)? },
            spec,
            base: self.base.specialize(at)?,
            index: self.index.clone(),
        })
    }
}

fn total_space_name(spec: &FibrationSpec) -> String {
    format!("total({}; n={}; eps={})", spec.base.name(), spec.fiber_dim, spec.eps)
}

/// Which branch of the case analysis a degree falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum KernelCase {
    /// `k = n+1`: `((n+1)x + β₂) b₁ = 0`.
    TopMinusOne,
    /// `k = n`: the two equations in `b₀, b₂`.
    Middle,
    /// `k < n`, `n − k` even: three equations in `b₀, b₂, b₄`.
    EvenBelow,
    /// `k < n`, `n − k` odd: two equations in `b₁, b₃`.
    OddBelow,
}

/// Kernel described by the case-analysis linear system over the base ring.
#[derive(Debug, Clone)]
pub struct CaseKernel<F> {
    pub k: usize,
    pub case: KernelCase,
    /// Kernel vectors as elements of `H*(M)` in degree `n + 2 − k`.
    pub kernel: Vec<Element<F>>,
}

/// One unknown block `b_j · u^e` with `b_j ∈ H^j(B)`.
struct Unknown {
    degree: usize,
    u_exp: usize,
}

/// `Σ multiplier · unknown = 0`, landing in `H^degree(B)`.
struct Equation<F> {
    degree: usize,
    terms: Vec<(usize, Element<F>)>,
}

/// Solves the closed-form kernel conditions for `Ω^k`, `1 ≤ k ≤ n+1`, using
/// only base-ring multiplication and the closed forms of β₂ and β₄.
pub fn case_analysis_oracle<F: FibrationField>(
    ring: &TotalSpaceRing<F>,
    k: usize,
) -> Result<CaseKernel<F>, BuildError> {
    let n = ring.fiber_dim();
    if k == 0 || k > n + 1 {
        return Err(BuildError::CaseOutOfRange { k, max: n + 1 });
    }
    let base = &ring.base;
    let Betas { beta2, beta4 } = closed_form_betas::<F>(&ring.spec)?;
    let x: Element<F> = ring.spec.base_omega().map(|c| F::from_rational(c.clone()));
    let x2 = base.multiply(&x, &x);
    let one = base.one();
    let int = |v: i64| F::from_i64(v);
    let ni = n as i64;
    let ki = k as i64;

    let (case, unknowns, equations) = if k == n + 1 {
        let coeff = x.scale(&int(ni + 1)).add(&beta2);
        (
            KernelCase::TopMinusOne,
            vec![Unknown { degree: 1, u_exp: 0 }],
            vec![Equation { degree: 3, terms: vec![(0, coeff)] }],
        )
    } else if k == n {
        let nn1 = F::from_rational(Rational::frac(ni * (ni - 1), 2));
        (
            KernelCase::Middle,
            vec![Unknown { degree: 2, u_exp: 0 }, Unknown { degree: 0, u_exp: 1 }],
            vec![
                Equation {
                    degree: 4,
                    terms: vec![(0, x.scale(&int(ni))), (1, x2.scale(&nn1).add(&beta4))],
                },
                Equation { degree: 2, terms: vec![(0, one.clone()), (1, x.scale(&int(ni)).add(&beta2))] },
            ],
        )
    } else if (n - k) % 2 == 0 {
        let kk1 = F::from_rational(Rational::frac(ki * (ki - 1), 2));
        let e4 = (n - k - 2) / 2;
        (
            KernelCase::EvenBelow,
            vec![
                Unknown { degree: 4, u_exp: e4 },
                Unknown { degree: 2, u_exp: e4 + 1 },
                Unknown { degree: 0, u_exp: e4 + 2 },
            ],
            vec![
                Equation {
                    degree: 4,
                    terms: vec![(0, one.clone()), (1, x.scale(&int(ki))), (2, x2.scale(&kk1))],
                },
                Equation { degree: 2, terms: vec![(1, one.clone()), (2, x.scale(&int(ki)))] },
                Equation { degree: 0, terms: vec![(2, one.clone())] },
            ],
        )
    } else {
        let e3 = (n - k - 1) / 2;
        (
            KernelCase::OddBelow,
            vec![Unknown { degree: 3, u_exp: e3 }, Unknown { degree: 1, u_exp: e3 + 1 }],
            vec![
                Equation { degree: 3, terms: vec![(0, one.clone()), (1, x.scale(&int(ki)))] },
                Equation { degree: 1, terms: vec![(1, one.clone())] },
            ],
        )
    };

    let bb = base.basis();
    let col_offsets: Vec<usize> = unknowns
        .iter()
        .scan(0, |acc, u| {
            let start = *acc;
            *acc += bb.dim(u.degree);
            Some(start)
        })
        .collect();
    let cols: usize = unknowns.iter().map(|u| bb.dim(u.degree)).sum();
    let mut rows: Vec<Vec<F>> = Vec::new();
    for eq in &equations {
        let target = bb.range(eq.degree);
        let mut block = vec![vec![F::zero(); cols]; target.len()];
        for (u, multiplier) in &eq.terms {
            for (s, src) in bb.range(unknowns[*u].degree).enumerate() {
                let image = base.multiply(multiplier, &Element::basis(src));
                for (r, t) in target.clone().enumerate() {
                    block[r][col_offsets[*u] + s] = block[r][col_offsets[*u] + s].clone() + &image.coeff(t);
                }
            }
        }
        rows.extend(block);
    }
    let system = Matrix::from_rows(rows, cols).expect("rectangular");
    let kernel = system
        .rank_kernel()
        .kernel
        .vectors
        .into_iter()
        .map(|v| {
            let mut alpha = Element::zero();
            for (u, unknown) in unknowns.iter().enumerate() {
                for (s, src) in bb.range(unknown.degree).enumerate() {
                    let c = v[col_offsets[u] + s].clone();
                    alpha.add_term(ring.index[unknown.u_exp][src], c);
                }
            }
            alpha
        })
        .collect();
    Ok(CaseKernel { k, case, kernel })
}

/// Whether the case-analysis kernel and the matrix kernel of `Ω^k` agree as
/// subspaces of `H^{n+2−k}(M)`.
pub fn kernels_agree<F: FibrationField>(ring: &TotalSpaceRing<F>, k: usize) -> Result<bool, BuildError> {
    let oracle = case_analysis_oracle(ring, k)?;
    let generic = ring.matrix_kernel(k);
    let m = ring.algebra.basis().half_dim();
    let range = ring.algebra.basis().range(m - k);
    if oracle.kernel.iter().chain(&generic).any(|e| !ring.algebra.is_homogeneous_of(e, m - k)) {
        return Ok(false);
    }
    let coords = |es: &[Element<F>]| es.iter().map(|e| e.coords(range.clone())).collect::<Vec<_>>();
    Ok(same_span(&coords(&oracle.kernel), &coords(&generic), range.len()))
}
