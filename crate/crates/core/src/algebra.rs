//! Finite-dimensional graded-commutative algebras presented by an explicit
//! graded basis and a table of structure constants, together with the axiom
//! and Poincaré-duality checks every ring in this crate is validated with.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::Range;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::Matrix;
use crate::scalars::{EpsFraction, Field, Rational, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("top degree must be even, got {0}")]
    OddTopDegree(usize),
    #[error("expected basis lists for degrees 0..={top}, got {got}")]
    DegreeCount { top: usize, got: usize },
    #[error("degree {degree} must contain exactly one basis element, found {found}")]
    NotOneDimensional { degree: usize, found: usize },
    #[error("basis name `{0}` is used twice")]
    DuplicateName(String),
    #[error("invalid basis name `{0}`")]
    InvalidName(String),
    #[error("unknown basis element `{0}`")]
    UnknownBasis(String),
    #[error("product {left} * {right} is not homogeneous of degree {expected}")]
    ProductDegree { left: String, right: String, expected: usize },
    #[error("class `{name}` must be homogeneous of degree {expected}")]
    ClassDegree { name: String, expected: usize },
    #[error("degree {k} is outside 0..={top}")]
    DegreeOutOfRange { k: usize, top: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Ordered basis of each degree `0..=top_degree`. Elements are addressed by a
/// global index; degrees are laid out contiguously in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedBasis {
    top_degree: usize,
    names: Vec<String>,
    degrees: Vec<usize>,
    offsets: Vec<usize>,
    index: BTreeMap<String, usize>,
}

pub(crate) fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && !name.starts_with(['+', '-', '['])
        && name
            .chars()
            .all(|c| c.is_alphanumeric() || matches!(c, '_' | '.' | '^' | '\''))
}

impl GradedBasis {
    pub fn new(top_degree: usize, per_degree: Vec<Vec<String>>) -> Result<Self, AlgebraError> {
        if top_degree % 2 != 0 {
            return Err(AlgebraError::OddTopDegree(top_degree));
        }
        if per_degree.len() != top_degree + 1 {
            return Err(AlgebraError::DegreeCount { top: top_degree, got: per_degree.len() });
        }
        for d in [0, top_degree] {
            if per_degree[d].len() != 1 {
                return Err(AlgebraError::NotOneDimensional { degree: d, found: per_degree[d].len() });
            }
        }
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        let mut offsets = Vec::with_capacity(top_degree + 2);
        let mut index = BTreeMap::new();
        for (d, list) in per_degree.into_iter().enumerate() {
            offsets.push(names.len());
            for name in list {
                if !valid_name(&name) {
                    return Err(AlgebraError::InvalidName(name));
                }
                if index.insert(name.clone(), names.len()).is_some() {
                    return Err(AlgebraError::DuplicateName(name));
                }
                names.push(name);
                degrees.push(d);
            }
        }
        offsets.push(names.len());
        Ok(GradedBasis { top_degree, names, degrees, offsets, index })
    }

    pub fn top_degree(&self) -> usize {
        self.top_degree
    }

    /// Half the top degree.
    pub fn half_dim(&self) -> usize {
        self.top_degree / 2
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.range(degree).len()
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.top_degree).map(|d| self.dim(d)).collect()
    }

    /// Global indices of degree `degree` (empty beyond the top).
    pub fn range(&self, degree: usize) -> Range<usize> {
        if degree > self.top_degree {
            return 0..0;
        }
        self.offsets[degree]..self.offsets[degree + 1]
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn names_in(&self, degree: usize) -> &[String] {
        &self.names[self.range(degree)]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, AlgebraError> {
        self.index.get(name).copied().ok_or_else(|| AlgebraError::UnknownBasis(name.to_string()))
    }

    pub fn unit(&self) -> usize {
        0
    }

    pub fn volume(&self) -> usize {
        self.names.len() - 1
    }
}

/// Sparse linear combination of basis elements, keyed by global index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element<F> {
    coeffs: BTreeMap<usize, F>,
}

impl<F: Field> Element<F> {
    pub fn zero() -> Self {
        Element { coeffs: BTreeMap::new() }
    }

    pub fn basis(i: usize) -> Self {
        Element::term(i, F::one())
    }

    pub fn term(i: usize, c: F) -> Self {
        let mut e = Element::zero();
        e.add_term(i, c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, F)>) -> Self {
        let mut e = Element::zero();
        for (i, c) in terms {
            e.add_term(i, c);
        }
        e
    }

    pub fn add_term(&mut self, i: usize, c: F) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.remove(&i) {
            None => {
                self.coeffs.insert(i, c);
            }
            Some(old) => {
                let sum = old + &c;
                if !sum.is_zero() {
                    self.coeffs.insert(i, sum);
                }
            }
        }
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(&i).cloned().unwrap_or_else(F::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &F)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Element::zero();
        }
        Element { coeffs: self.coeffs.iter().map(|(&i, a)| (i, a.clone() * c)).collect() }
    }

    pub fn add(&self, other: &Element<F>) -> Self {
        let mut out = self.clone();
        for (i, c) in other.terms() {
            out.add_term(i, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Element<F>) -> Self {
        let mut out = self.clone();
        for (i, c) in other.terms() {
            out.add_term(i, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Element { coeffs: self.coeffs.iter().map(|(&i, c)| (i, -c.clone())).collect() }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Element<G> {
        Element::from_terms(self.coeffs.iter().map(|(&i, c)| (i, f(c))))
    }

    pub fn try_map<G: Field, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<Element<G>, E> {
        let mut out = Element::zero();
        for (&i, c) in &self.coeffs {
            out.add_term(i, f(c)?);
        }
        Ok(out)
    }

    /// Coordinate vector over the given index range.
    pub fn coords(&self, range: Range<usize>) -> Vec<F> {
        range.map(|i| self.coeff(i)).collect()
    }
}

impl<F: Field> Default for Element<F> {
    fn default() -> Self {
        Element::zero()
    }
}

impl<F: fmt::Debug> fmt::Debug for Element<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.coeffs.iter()).finish()
    }
}

/// One failed axiom, naming the offending basis elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "camelCase")]
pub enum AxiomViolation {
    UnitLaw { element: String },
    DegreeAdditivity { left: String, right: String },
    GradedCommutativity { left: String, right: String },
    OddSquare { element: String },
    Associativity { a: String, b: String, c: String },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::UnitLaw { element } => write!(f, "unit law fails on {element}"),
            AxiomViolation::DegreeAdditivity { left, right } => {
                write!(f, "{left} * {right} lands in the wrong degree")
            }
            AxiomViolation::GradedCommutativity { left, right } => {
                write!(f, "graded commutativity fails for ({left}, {right})")
            }
            AxiomViolation::OddSquare { element } => {
                write!(f, "odd-degree element {element} has nonzero square")
            }
            AxiomViolation::Associativity { a, b, c } => {
                write!(f, "associativity fails at triple ({a}, {b}, {c})")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DualityEntry {
    pub k: usize,
    pub dim: usize,
    pub dual_dim: usize,
    /// Rendered determinant of the pairing matrix when it is square.
    pub determinant: Option<String>,
    pub nondegenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub entries: Vec<DualityEntry>,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.nondegenerate)
    }

    pub fn failures(&self) -> impl Iterator<Item = &DualityEntry> {
        self.entries.iter().filter(|e| !e.nondegenerate)
    }
}

/// Graded-commutative algebra with a full table of basis products.
#[derive(Clone, PartialEq, Eq)]
pub struct PDAlgebra<F> {
    name: String,
    basis: GradedBasis,
    /// `table[i * n + j]` is the product of basis elements `i` and `j`.
    table: Vec<Element<F>>,
    classes: BTreeMap<String, Element<F>>,
}

impl<F: Field> PDAlgebra<F> {
    /// Wraps a complete product table without completing or validating it.
    pub fn from_table(
        name: impl Into<String>,
        basis: GradedBasis,
        table: Vec<Element<F>>,
    ) -> Self {
        assert_eq!(table.len(), basis.len() * basis.len(), "table must be n x n");
        PDAlgebra { name: name.into(), basis, table, classes: BTreeMap::new() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn top_degree(&self) -> usize {
        self.basis.top_degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Element<F> {
        &self.table[i * self.basis.len() + j]
    }

    pub fn basis_element(&self, name: &str) -> Result<Element<F>, AlgebraError> {
        Ok(Element::basis(self.basis.index_of(name)?))
    }

    /// Element from `(name, coefficient)` pairs.
    pub fn element(&self, terms: &[(&str, F)]) -> Result<Element<F>, AlgebraError> {
        let mut e = Element::zero();
        for (name, c) in terms {
            e.add_term(self.basis.index_of(name)?, c.clone());
        }
        Ok(e)
    }

    pub fn one(&self) -> Element<F> {
        Element::basis(self.basis.unit())
    }

    /// Bilinear extension of the basis table.
    pub fn multiply(&self, a: &Element<F>, b: &Element<F>) -> Element<F> {
        let mut out = Element::zero();
        for (i, x) in a.terms() {
            for (j, y) in b.terms() {
                let p = self.basis_product(i, j);
                if p.is_zero() {
                    continue;
                }
                let c = x.clone() * y;
                for (t, z) in p.terms() {
                    out.add_term(t, c.clone() * z);
                }
            }
        }
        out
    }

    pub fn multiply_named(&self, a: &str, b: &str) -> Result<Element<F>, AlgebraError> {
        Ok(self.multiply(&self.basis_element(a)?, &self.basis_element(b)?))
    }

    pub fn power(&self, a: &Element<F>, k: usize) -> Element<F> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.multiply(&acc, a);
        }
        acc
    }

    /// Degree of a nonzero homogeneous element.
    pub fn degree_of(&self, e: &Element<F>) -> Option<usize> {
        let mut degrees = e.support().map(|i| self.basis.degree(i));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, e: &Element<F>, degree: usize) -> bool {
        e.support().all(|i| self.basis.degree(i) == degree)
    }

    /// Coefficient of the volume class.
    pub fn integrate(&self, e: &Element<F>) -> F {
        e.coeff(self.basis.volume())
    }

    pub fn class(&self, name: &str) -> Option<&Element<F>> {
        self.classes.get(name)
    }

    pub fn classes(&self) -> &BTreeMap<String, Element<F>> {
        &self.classes
    }

    pub fn set_class(&mut self, name: impl Into<String>, e: Element<F>) {
        self.classes.insert(name.into(), e);
    }

    /// Linear combination in ring-file syntax, e.g. `[2] a1 + [-1/2] q`.
    pub fn render(&self, e: &Element<F>) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = e
            .terms()
            .map(|(i, c)| {
                if c.is_one() {
                    self.basis.name(i).to_string()
                } else {
                    format!("[{c}] {}", self.basis.name(i))
                }
            })
            .collect();
        parts.join(" + ")
    }

    /// Brute-force scan of the unit law, degree additivity, graded
    /// commutativity, odd squares and associativity over all basis triples.
    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.basis.len();
        let top = self.basis.top_degree;
        let name = |i: usize| self.basis.name(i).to_string();
        let mut violations = Vec::new();

        let unit = Element::basis(self.basis.unit());
        for i in 0..n {
            let e = Element::basis(i);
            if self.multiply(&unit, &e) != e || self.multiply(&e, &unit) != e {
                violations.push(AxiomViolation::UnitLaw { element: name(i) });
            }
        }

        for i in 0..n {
            for j in 0..n {
                let p = self.basis_product(i, j);
                let expected = self.basis.degree(i) + self.basis.degree(j);
                if !p.is_zero() && (expected > top || !self.is_homogeneous_of(p, expected)) {
                    violations.push(AxiomViolation::DegreeAdditivity { left: name(i), right: name(j) });
                }
                if i < j {
                    let swapped = self.basis_product(j, i);
                    let sign_odd = self.basis.degree(i) * self.basis.degree(j) % 2 == 1;
                    let expected = if sign_odd { swapped.neg() } else { swapped.clone() };
                    if *p != expected {
                        violations.push(AxiomViolation::GradedCommutativity {
                            left: name(i),
                            right: name(j),
                        });
                    }
                }
            }
            if self.basis.degree(i) % 2 == 1 && !self.basis_product(i, i).is_zero() {
                violations.push(AxiomViolation::OddSquare { element: name(i) });
            }
        }

        // Triples whose degrees sum past the top are zero on both sides once
        // degree additivity holds, so they are skipped.
        let assoc: Vec<AxiomViolation> = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let mut found = Vec::new();
                let di = self.basis.degree(i);
                let ei = Element::basis(i);
                for j in 0..n {
                    let dj = self.basis.degree(j);
                    if di + dj > top {
                        continue;
                    }
                    let ij = self.basis_product(i, j);
                    for k in 0..n {
                        if di + dj + self.basis.degree(k) > top {
                            continue;
                        }
                        let lhs = self.multiply(ij, &Element::basis(k));
                        let rhs = self.multiply(&ei, self.basis_product(j, k));
                        if lhs != rhs {
                            found.push(AxiomViolation::Associativity { a: name(i), b: name(j), c: name(k) });
                        }
                    }
                }
                found
            })
            .collect();
        violations.extend(assoc);
        AxiomReport { violations }
    }

    /// Matrix of the product `H^k × H^{top−k} → H^{top}` read against the
    /// volume class; rows index degree `k`, columns degree `top − k`.
    pub fn pairing_matrix(&self, k: usize) -> Result<Matrix<F>, AlgebraError> {
        let top = self.basis.top_degree;
        if k > top {
            return Err(AlgebraError::DegreeOutOfRange { k, top });
        }
        let rows: Vec<Vec<F>> = self
            .basis
            .range(k)
            .map(|i| {
                self.basis
                    .range(top - k)
                    .map(|j| self.integrate(self.basis_product(i, j)))
                    .collect()
            })
            .collect();
        Ok(Matrix::from_rows(rows, self.basis.dim(top - k)).expect("rectangular by construction"))
    }

    pub fn check_poincare_duality(&self) -> DualityReport {
        let top = self.basis.top_degree;
        let entries = (0..=top)
            .map(|k| {
                let dim = self.basis.dim(k);
                let dual_dim = self.basis.dim(top - k);
                let m = self.pairing_matrix(k).expect("k in range");
                let det = m.determinant().ok();
                let nondegenerate = dim == dual_dim && det.as_ref().is_some_and(|d| !d.is_zero());
                DualityEntry { k, dim, dual_dim, determinant: det.map(|d| d.to_string()), nondegenerate }
            })
            .collect();
        DualityReport { entries }
    }

    pub fn map_scalars<G: Field>(&self, f: impl Fn(&F) -> G) -> PDAlgebra<G> {
        PDAlgebra {
            name: self.name.clone(),
            basis: self.basis.clone(),
            table: self.table.iter().map(|e| e.map(&f)).collect(),
            classes: self.classes.iter().map(|(k, e)| (k.clone(), e.map(&f))).collect(),
        }
    }

    pub fn try_map_scalars<G: Field, E>(
        &self,
        f: impl Fn(&F) -> Result<G, E>,
    ) -> Result<PDAlgebra<G>, E> {
        let table = self.table.iter().map(|e| e.try_map(&f)).collect::<Result<Vec<_>, E>>()?;
        let mut classes = BTreeMap::new();
        for (k, e) in &self.classes {
            classes.insert(k.clone(), e.try_map(&f)?);
        }
        Ok(PDAlgebra { name: self.name.clone(), basis: self.basis.clone(), table, classes })
    }

    /// Graded tensor product with the Koszul sign
    /// `(a⊗b)(a'⊗b') = (−1)^{|b||a'|} aa'⊗bb'`. Basis names are `a.b`, with
    /// unit factors dropped.
    pub fn tensor(&self, other: &PDAlgebra<F>, name: impl Into<String>) -> Result<PDAlgebra<F>, AlgebraError> {
        let top = self.top_degree() + other.top_degree();
        let mut per_degree: Vec<Vec<String>> = vec![Vec::new(); top + 1];
        let mut pairs_by_degree: Vec<Vec<(usize, usize)>> = vec![Vec::new(); top + 1];
        for i in 0..self.dim() {
            for j in 0..other.dim() {
                let d = self.basis.degree(i) + other.basis.degree(j);
                let label = match (i == self.basis.unit(), j == other.basis.unit()) {
                    (true, true) => self.basis.name(i).to_string(),
                    (true, false) => other.basis.name(j).to_string(),
                    (false, true) => self.basis.name(i).to_string(),
                    (false, false) => format!("{}.{}", self.basis.name(i), other.basis.name(j)),
                };
                per_degree[d].push(label);
                pairs_by_degree[d].push((i, j));
            }
        }
        let basis = GradedBasis::new(top, per_degree)?;
        let pairs: Vec<(usize, usize)> = pairs_by_degree.into_iter().flatten().collect();
        let index: HashMap<(usize, usize), usize> =
            pairs.iter().enumerate().map(|(g, &p)| (p, g)).collect();

        let n = pairs.len();
        let mut table = Vec::with_capacity(n * n);
        for &(a, b) in &pairs {
            for &(a2, b2) in &pairs {
                let left = self.basis_product(a, a2);
                let right = other.basis_product(b, b2);
                let mut e = Element::zero();
                if !left.is_zero() && !right.is_zero() {
                    let odd = other.basis.degree(b) * self.basis.degree(a2) % 2 == 1;
                    for (x, cx) in left.terms() {
                        for (y, cy) in right.terms() {
                            let c = cx.clone() * cy;
                            e.add_term(index[&(x, y)], if odd { -c } else { c });
                        }
                    }
                }
                table.push(e);
            }
        }
        let mut out = PDAlgebra::from_table(name, basis, table);
        let lift_left = |e: &Element<F>| Element::from_terms(e.terms().map(|(i, c)| (index[&(i, 0)], c.clone())));
        let lift_right = |e: &Element<F>| Element::from_terms(e.terms().map(|(j, c)| (index[&(0, j)], c.clone())));
        if let (Some(wl), Some(wr)) = (self.class("omega"), other.class("omega")) {
            out.set_class("omega", lift_left(wl).add(&lift_right(wr)));
        }
        Ok(out)
    }
}

impl PDAlgebra<EpsFraction> {
    /// Substitutes ε = `at` in every structure constant and class.
    pub fn specialize(&self, at: &Rational) -> Result<PDAlgebra<Rational>, ScalarError> {
        self.try_map_scalars(|c| c.eval(at))
    }
}

impl PDAlgebra<Rational> {
    /// The same ring with coefficients viewed in a larger field.
    pub fn lift<G: Field>(&self) -> PDAlgebra<G> {
        self.map_scalars(|c| G::from_rational(c.clone()))
    }
}

impl<F: Field> fmt::Debug for PDAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PDAlgebra({}, dims {:?})", self.name, self.basis.dims())
    }
}

/// Assembles a [`PDAlgebra`] from products given for one ordering of each
/// pair; the mirrored product follows from the sign rule and products with
/// the unit default to the identity.
pub struct AlgebraBuilder<F> {
    name: String,
    basis: GradedBasis,
    explicit: BTreeMap<(usize, usize), Element<F>>,
    classes: BTreeMap<String, Element<F>>,
}

impl<F: Field> AlgebraBuilder<F> {
    pub fn new(name: impl Into<String>, basis: GradedBasis) -> Self {
        AlgebraBuilder { name: name.into(), basis, explicit: BTreeMap::new(), classes: BTreeMap::new() }
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn element(&self, terms: &[(&str, F)]) -> Result<Element<F>, AlgebraError> {
        let mut e = Element::zero();
        for (name, c) in terms {
            e.add_term(self.basis.index_of(name)?, c.clone());
        }
        Ok(e)
    }

    /// Records `left * right = value`. A later entry for the same ordered
    /// pair replaces the earlier one.
    pub fn product(&mut self, left: &str, right: &str, value: Element<F>) -> Result<&mut Self, AlgebraError> {
        let i = self.basis.index_of(left)?;
        let j = self.basis.index_of(right)?;
        self.explicit.insert((i, j), value);
        Ok(self)
    }

    /// `left * right = sum of coeff * name`.
    pub fn product_terms(&mut self, left: &str, right: &str, terms: &[(&str, F)]) -> Result<&mut Self, AlgebraError> {
        let value = self.element(terms)?;
        self.product(left, right, value)
    }

    pub fn class(&mut self, name: impl Into<String>, value: Element<F>) -> &mut Self {
        self.classes.insert(name.into(), value);
        self
    }

    pub fn explicit_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.explicit.keys().copied()
    }

    pub fn build(&self) -> PDAlgebra<F> {
        let n = self.basis.len();
        let mut table = vec![Element::zero(); n * n];
        let mut set: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (&(i, j), v) in &self.explicit {
            table[i * n + j] = v.clone();
            set.insert((i, j));
        }
        for (&(i, j), v) in &self.explicit {
            if !set.contains(&(j, i)) {
                let odd = self.basis.degree(i) * self.basis.degree(j) % 2 == 1;
                table[j * n + i] = if odd { v.neg() } else { v.clone() };
            }
        }
        let unit = self.basis.unit();
        for k in 0..n {
            if !set.contains(&(unit, k)) && !set.contains(&(k, unit)) {
                table[unit * n + k] = Element::basis(k);
                table[k * n + unit] = Element::basis(k);
            }
        }
        let mut algebra = PDAlgebra::from_table(self.name.clone(), self.basis.clone(), table);
        for (k, v) in &self.classes {
            algebra.set_class(k.clone(), v.clone());
        }
        algebra
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn basis_invariants_are_enforced() {
        let names = |v: &[&[&str]]| v.iter().map(|d| d.iter().map(|s| s.to_string()).collect()).collect();
        assert!(matches!(GradedBasis::new(3, names(&[&["1"], &[], &[], &["v"]])), Err(AlgebraError::OddTopDegree(3))));
        assert!(matches!(
            GradedBasis::new(2, names(&[&["1", "x"], &[], &["v"]])),
            Err(AlgebraError::NotOneDimensional { degree: 0, found: 2 })
        ));
        assert!(matches!(
            GradedBasis::new(2, names(&[&["1"], &["v"], &["v"]])),
            Err(AlgebraError::DuplicateName(_))
        ));
        assert!(matches!(
            GradedBasis::new(2, names(&[&["1"], &["a b"], &["v"]])),
            Err(AlgebraError::InvalidName(_))
        ));
        let b = GradedBasis::new(2, names(&[&["1"], &["a", "b"], &["v"]])).unwrap();
        assert_eq!(b.dims(), vec![1, 2, 1]);
        assert_eq!(b.range(1), 1..3);
        assert_eq!(b.range(5), 0..0);
        assert_eq!(b.volume(), 3);
    }

    #[test]
    fn projective_plane_products() {
        let cp2 = fixtures::projective_space(2);
        assert_eq!(cp2.multiply_named("h", "h").unwrap(), cp2.basis_element("h^2").unwrap());
        assert!(cp2.multiply_named("h^2", "h").unwrap().is_zero());
        assert!(matches!(cp2.multiply_named("h", "k"), Err(AlgebraError::UnknownBasis(_))));
    }

    #[test]
    fn gompf_products_follow_sign_rule() {
        let g = fixtures::gompf_formal();
        let qv = g.basis_element("q").unwrap();
        assert_eq!(g.multiply_named("a1", "a2").unwrap(), qv);
        assert_eq!(g.multiply_named("a2", "a1").unwrap(), qv.neg());
        assert_eq!(g.multiply_named("c", "q").unwrap(), g.basis_element("v").unwrap());
        for odd in ["a1", "a2", "A1", "A2"] {
            assert!(g.multiply_named(odd, odd).unwrap().is_zero());
        }
    }

    #[test]
    fn fixtures_pass_axioms() {
        assert!(fixtures::projective_space(4).check_axioms().passed());
        let report = fixtures::gompf_formal().check_axioms();
        assert!(report.passed(), "{:?}", report.violations);
    }

    #[test]
    fn broken_fixture_reports_associativity_triple() {
        let mut b = fixtures::gompf_formal_builder();
        b.product("c", "q", Element::zero()).unwrap();
        let broken = b.build();
        let report = broken.check_axioms();
        let culprit = AxiomViolation::Associativity { a: "a1".into(), b: "a2".into(), c: "c".into() };
        assert!(report.violations.contains(&culprit), "{:?}", report.violations);
    }

    #[test]
    fn inconsistent_mirror_entries_are_reported() {
        let mut b = fixtures::gompf_formal_builder();
        let qv = b.element(&[("q", q(1))]).unwrap();
        b.product("a2", "a1", qv).unwrap();
        let report = b.build().check_axioms();
        assert!(report.violations.contains(&AxiomViolation::GradedCommutativity {
            left: "a1".into(),
            right: "a2".into()
        }));
    }

    #[test]
    fn odd_square_and_degree_errors_are_reported() {
        let mut b = fixtures::gompf_formal_builder();
        let qv = b.element(&[("q", q(1))]).unwrap();
        b.product("a1", "a1", qv.clone()).unwrap();
        b.product("w", "a1", qv).unwrap();
        let v = b.build().check_axioms().violations;
        assert!(v.contains(&AxiomViolation::OddSquare { element: "a1".into() }));
        assert!(v.contains(&AxiomViolation::DegreeAdditivity { left: "w".into(), right: "a1".into() }));
    }

    #[test]
    fn gompf_pairing_matrices() {
        let g = fixtures::gompf_formal();
        let k1 = g.pairing_matrix(1).unwrap();
        let expected = Matrix::from_rows(vec![vec![q(0), q(1)], vec![q(-1), q(0)]], 2).unwrap();
        assert_eq!(k1, expected);
        let k2 = g.pairing_matrix(2).unwrap();
        let expected = Matrix::from_rows(
            vec![vec![q(1), q(0), q(0)], vec![q(0), q(0), q(1)], vec![q(0), q(1), q(0)]],
            3,
        )
        .unwrap();
        assert_eq!(k2, expected);
        assert_eq!(k2.determinant().unwrap(), q(-1));
        assert!(matches!(g.pairing_matrix(5), Err(AlgebraError::DegreeOutOfRange { k: 5, top: 4 })));

        let cp2 = fixtures::projective_space(2);
        assert_eq!(cp2.pairing_matrix(2).unwrap(), Matrix::identity(1));
    }

    #[test]
    fn duality_reports() {
        let g = fixtures::gompf_formal();
        let report = g.check_poincare_duality();
        assert!(report.passed());
        let dims: Vec<usize> = report.entries.iter().map(|e| e.dim).collect();
        assert_eq!(dims, vec![1, 2, 3, 2, 1]);
        assert!(fixtures::projective_space(3).check_poincare_duality().passed());
    }

    #[test]
    fn deleting_q_breaks_duality_and_associativity() {
        let names: Vec<Vec<String>> = [&["1"][..], &["a1", "a2"], &["w", "c"], &["A1", "A2"], &["v"]]
            .iter()
            .map(|d| d.iter().map(|s| s.to_string()).collect())
            .collect();
        let basis = GradedBasis::new(4, names).unwrap();
        let mut b = AlgebraBuilder::<Rational>::new("noQ", basis);
        b.product_terms("c", "a1", &[("A1", q(1))]).unwrap();
        b.product_terms("c", "a2", &[("A2", q(1))]).unwrap();
        b.product_terms("w", "w", &[("v", q(1))]).unwrap();
        b.product_terms("a1", "A2", &[("v", q(1))]).unwrap();
        b.product_terms("a2", "A1", &[("v", q(-1))]).unwrap();
        let alg = b.build();
        let duality = alg.check_poincare_duality();
        assert!(!duality.passed());
        assert_eq!(duality.failures().next().unwrap().k, 2);
        assert!(alg
            .check_axioms()
            .violations
            .iter()
            .any(|v| matches!(v, AxiomViolation::Associativity { .. })));
    }

    #[test]
    fn tensor_with_sphere() {
        let g = fixtures::gompf_formal();
        let s2 = fixtures::projective_space(1);
        let p = g.tensor(&s2, "gompf x S2").unwrap();
        assert_eq!(p.dim(), 18);
        assert_eq!(p.top_degree(), 6);
        assert!(p.check_axioms().passed());
        assert!(p.check_poincare_duality().passed());
        // h is even, so no Koszul sign: (a2 ⊗ h)(a1 ⊗ 1) = (a2 a1) ⊗ h
        let lhs = p.multiply_named("a2.h", "a1").unwrap();
        assert_eq!(lhs, p.basis_element("q.h").unwrap().neg());
    }

    fn torus() -> PDAlgebra<Rational> {
        let basis = GradedBasis::new(2, vec![vec!["1".into()], vec!["x".into(), "y".into()], vec!["xy".into()]])
            .unwrap();
        let mut b = AlgebraBuilder::new("T2", basis);
        b.product_terms("x", "y", &[("xy", q(1))]).unwrap();
        b.build()
    }

    #[test]
    fn tensor_koszul_sign_on_odd_factors() {
        let t2 = torus();
        assert!(t2.check_axioms().passed());
        let renamed = {
            let basis = GradedBasis::new(2, vec![vec!["1".into()], vec!["s".into(), "t".into()], vec!["st".into()]])
                .unwrap();
            let mut b = AlgebraBuilder::new("T2'", basis);
            b.product_terms("s", "t", &[("st", q(1))]).unwrap();
            b.build()
        };
        let t4 = t2.tensor(&renamed, "T4").unwrap();
        assert_eq!(t4.basis().dims(), vec![1, 4, 6, 4, 1]);
        assert!(t4.check_axioms().passed());
        assert!(t4.check_poincare_duality().passed());
        // (1 ⊗ s)(x ⊗ 1) = (−1)^{1·1} x ⊗ s
        assert_eq!(t4.multiply_named("s", "x").unwrap(), t4.basis_element("x.s").unwrap().neg());
        assert_eq!(t4.multiply_named("x", "s").unwrap(), t4.basis_element("x.s").unwrap());
    }

    #[test]
    fn graded_commutativity_over_all_pairs() {
        let g = fixtures::gompf_formal();
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                let sign = g.basis().degree(i) * g.basis().degree(j) % 2;
                let ab = g.basis_product(i, j);
                let ba = g.basis_product(j, i);
                assert_eq!(*ab, if sign == 1 { ba.neg() } else { ba.clone() });
            }
        }
    }
}
