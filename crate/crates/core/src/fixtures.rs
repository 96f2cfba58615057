//! Built-in rings: truncated polynomial rings of projective spaces, the
//! minimal formal model of a 4-dimensional non-Lefschetz symplectic manifold,
//! and products with the 2-sphere.

use crate::algebra::{AlgebraBuilder, AlgebraError, GradedBasis, PDAlgebra};
use crate::scalars::Rational;

/// Names accepted by [`by_name`].
pub const FIXTURE_NAMES: &[&str] =
    &["gompfFormal", "gompfVariant", "projectiveSpace(<n>)", "productWithSphere(<fixture>)"];

fn names(per_degree: &[&[&str]]) -> Vec<Vec<String>> {
    per_degree.iter().map(|d| d.iter().map(|s| s.to_string()).collect()).collect()
}

fn power_name(j: usize) -> String {
    match j {
        0 => "1".to_string(),
        1 => "h".to_string(),
        _ => format!("h^{j}"),
    }
}

/// `Q[h]/(h^{n+1})` with `deg h = 2`; the symplectic class is `h`.
pub fn projective_space(n: usize) -> PDAlgebra<Rational> {
    let mut per_degree = vec![Vec::new(); 2 * n + 1];
    for j in 0..=n {
        per_degree[2 * j].push(power_name(j));
    }
    let basis = GradedBasis::new(2 * n, per_degree).expect("valid projective basis");
    let mut b = AlgebraBuilder::new(format!("projectiveSpace({n})"), basis);
    for i in 1..=n {
        for j in i..=n - i {
            b.product_terms(&power_name(i), &power_name(j), &[(&power_name(i + j), Rational::one())])
                .expect("names exist");
        }
    }
    if n > 0 {
        let h = b.element(&[("h", Rational::one())]).expect("h exists");
        b.class("omega", h);
    }
    b.build()
}

/// Builder for the minimal formal witness: `b1 = 2`, with `w` the symplectic
/// class (killing `H^1`), `c` an integral class with `c: H^1 → H^3` bijective,
/// and `q = a1 a2` pairing with `c`.
pub fn gompf_formal_builder() -> AlgebraBuilder<Rational> {
    let basis = GradedBasis::new(
        4,
        names(&[&["1"], &["a1", "a2"], &["w", "c", "q"], &["A1", "A2"], &["v"]]),
    )
    .expect("valid basis");
    let one = Rational::one;
    let mut b = AlgebraBuilder::new("gompfFormal", basis);
    b.product_terms("a1", "a2", &[("q", one())]).unwrap();
    b.product_terms("c", "a1", &[("A1", one())]).unwrap();
    b.product_terms("c", "a2", &[("A2", one())]).unwrap();
    b.product_terms("w", "w", &[("v", one())]).unwrap();
    b.product_terms("c", "q", &[("v", one())]).unwrap();
    b.product_terms("a1", "A2", &[("v", one())]).unwrap();
    b.product_terms("a2", "A1", &[("v", -one())]).unwrap();
    let w = b.element(&[("w", one())]).unwrap();
    let c = b.element(&[("c", one())]).unwrap();
    b.class("omega", w);
    b.class("chern", c);
    b
}

pub fn gompf_formal() -> PDAlgebra<Rational> {
    gompf_formal_builder().build()
}

/// The formal witness with `c² = v`, which makes the middle-degree
/// obstruction depend on ε.
pub fn gompf_variant() -> PDAlgebra<Rational> {
    let mut b = gompf_formal_builder();
    b.product_terms("c", "c", &[("v", Rational::one())]).unwrap();
    let mut alg = b.build();
    alg.set_name("gompfVariant");
    alg
}

/// `base ⊗ H*(S²)` with the product symplectic class.
pub fn product_with_sphere(base: &PDAlgebra<Rational>) -> Result<PDAlgebra<Rational>, AlgebraError> {
    base.tensor(&projective_space(1), format!("productWithSphere({})", base.name()))
}

/// Resolves a fixture name such as `gompfFormal`, `projectiveSpace(3)` or
/// `productWithSphere(gompfFormal)`.
pub fn by_name(name: &str) -> Option<PDAlgebra<Rational>> {
    let name = name.trim();
    match name {
        "gompfFormal" => return Some(gompf_formal()),
        "gompfVariant" => return Some(gompf_variant()),
        _ => {}
    }
    if let Some(arg) = call_arg(name, "projectiveSpace") {
        return arg.trim().parse().ok().map(projective_space);
    }
    if let Some(arg) = call_arg(name, "productWithSphere") {
        return by_name(arg).and_then(|base| product_with_sphere(&base).ok());
    }
    None
}

fn call_arg<'a>(s: &'a str, func: &str) -> Option<&'a str> {
    s.strip_prefix(func)?.strip_prefix('(')?.strip_suffix(')')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_is_a_pd_algebra() {
        for name in [
            "gompfFormal",
            "gompfVariant",
            "projectiveSpace(1)",
            "projectiveSpace(2)",
            "projectiveSpace(5)",
            "productWithSphere(gompfFormal)",
            "productWithSphere(gompfVariant)",
        ] {
            let alg = by_name(name).unwrap_or_else(|| panic!("{name} resolves"));
            let axioms = alg.check_axioms();
            assert!(axioms.passed(), "{name}: {:?}", axioms.violations);
            assert!(alg.check_poincare_duality().passed(), "{name}");
            assert_eq!(alg.name(), name);
        }
    }

    #[test]
    fn gompf_properties() {
        let g = gompf_formal();
        let w = g.class("omega").unwrap().clone();
        let c = g.class("chern").unwrap().clone();
        for a in ["a1", "a2"] {
            let e = g.basis_element(a).unwrap();
            assert!(g.multiply(&w, &e).is_zero());
        }
        assert_eq!(g.multiply_named("c", "a1").unwrap(), g.basis_element("A1").unwrap());
        assert_eq!(g.multiply_named("c", "a2").unwrap(), g.basis_element("A2").unwrap());
        assert!(!g.multiply(&w, &w).is_zero());
        assert!(g.multiply(&c, &c).is_zero());
        assert!(g.multiply(&w, &c).is_zero());
        assert_eq!(g.dim(), 9);
    }

    #[test]
    fn unknown_fixtures() {
        assert!(by_name("projectiveSpace(x)").is_none());
        assert!(by_name("torus").is_none());
        assert!(by_name("productWithSphere(nothing)").is_none());
    }
}
