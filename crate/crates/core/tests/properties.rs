use lefschetz_core::fibration::{derive_betas, moment_sphere_integral, EpsChoice, FibrationSpec, TotalSpaceRing};
use lefschetz_core::{
    classify, emit_ring, fixtures, moment_value, parse_ring_as, Element, EpsFraction, GaussianRational,
    LieAlgebraBasis, LieGroup, Matrix, PDAlgebra, PiEpsScalar, Rational,
};
use proptest::prelude::*;
use std::sync::OnceLock;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(p, q)| Rational::frac(p, q))
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=40, 1i64..=9).prop_map(|(p, q)| Rational::frac(p, q))
}

fn rings() -> &'static [PDAlgebra<Rational>] {
    static RINGS: OnceLock<Vec<PDAlgebra<Rational>>> = OnceLock::new();
    RINGS.get_or_init(|| {
        let variant = fixtures::gompf_variant();
        let c = variant.basis_element("c").unwrap();
        let spec = FibrationSpec::new(variant.clone(), c, 1, EpsChoice::Value(Rational::frac(2, 3))).unwrap();
        vec![
            variant.clone(),
            fixtures::product_with_sphere(&variant).unwrap(),
            TotalSpaceRing::<Rational>::build(&spec).unwrap().algebra,
        ]
    })
}

fn element(a: &PDAlgebra<Rational>, coeffs: &[Rational]) -> Element<Rational> {
    Element::from_terms(coeffs.iter().cloned().enumerate().take(a.dim()))
}

fn homogeneous(a: &PDAlgebra<Rational>, degree: usize, coeffs: &[Rational]) -> Element<Rational> {
    let range = a.basis().range(degree);
    Element::from_terms(range.zip(coeffs.iter().cloned()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative(
        which in 0usize..3,
        x in prop::collection::vec(small_rational(), 18),
        y in prop::collection::vec(small_rational(), 18),
        z in prop::collection::vec(small_rational(), 18),
    ) {
        let a = &rings()[which];
        let (x, y, z) = (element(a, &x), element(a, &y), element(a, &z));
        prop_assert_eq!(a.multiply(&a.multiply(&x, &y), &z), a.multiply(&x, &a.multiply(&y, &z)));
        prop_assert_eq!(a.multiply(&a.one(), &x), x);
    }

    #[test]
    fn graded_commutativity(
        which in 0usize..3,
        p in 0usize..7,
        q in 0usize..7,
        x in prop::collection::vec(small_rational(), 6),
        y in prop::collection::vec(small_rational(), 6),
    ) {
        let a = &rings()[which];
        prop_assume!(p <= a.top_degree() && q <= a.top_degree());
        let (x, y) = (homogeneous(a, p, &x), homogeneous(a, q, &y));
        let xy = a.multiply(&x, &y);
        let yx = a.multiply(&y, &x);
        if p * q % 2 == 1 {
            prop_assert_eq!(xy, yx.neg());
        } else {
            prop_assert_eq!(xy, yx);
        }
    }

    #[test]
    fn pairing_is_nondegenerate(
        which in 0usize..3,
        p in 0usize..7,
        x in prop::collection::vec(small_rational(), 6),
    ) {
        let a = &rings()[which];
        prop_assume!(p <= a.top_degree());
        let x = homogeneous(a, p, &x);
        prop_assume!(!x.is_zero());
        let partner = a.basis().range(a.top_degree() - p).any(|j| !a.integrate(&a.multiply(&x, &Element::basis(j))).is_zero());
        prop_assert!(partner);
    }

    #[test]
    fn classification_is_scale_invariant(t in small_rational()) {
        prop_assume!(!t.is_zero());
        let a = &rings()[2];
        let omega = a.class("omega").unwrap();
        let base = classify(a, omega).unwrap();
        let scaled = classify(a, &omega.scale(&t)).unwrap();
        prop_assert_eq!(base.classification, scaled.classification);
        for (m1, m2) in base.per_k.iter().zip(&scaled.per_k) {
            prop_assert_eq!(m1.rank, m2.rank);
        }
    }

    #[test]
    fn built_rings_round_trip(eps in positive_rational(), n in 1usize..=2) {
        let g = fixtures::gompf_variant();
        let c = g.basis_element("c").unwrap();
        let ring = TotalSpaceRing::<Rational>::build(&FibrationSpec::new(g, c, n, EpsChoice::Value(eps)).unwrap()).unwrap();
        let text = emit_ring(&ring.algebra);
        let parsed = parse_ring_as::<Rational>(&text).unwrap();
        prop_assert_eq!(&parsed, &ring.algebra);
        prop_assert_eq!(emit_ring(&parsed), text);
    }

    #[test]
    fn generic_rank_is_attained_off_bad_eps(eps in positive_rational(), n in 1usize..=3) {
        let g = fixtures::gompf_variant();
        let c = g.basis_element("c").unwrap();
        let spec = FibrationSpec::new(g, c, n, EpsChoice::Symbolic).unwrap();
        let sym = TotalSpaceRing::<EpsFraction>::build(&spec).unwrap();
        let report = classify(&sym.algebra, &sym.omega_total).unwrap();
        let bad = report.bad_eps.clone().unwrap();
        prop_assume!(!bad.eval(&eps).is_zero());
        let special = sym.specialize(&eps).unwrap();
        let at = classify(&special.algebra, &special.omega_total).unwrap();
        for (g, s) in report.per_k.iter().zip(&at.per_k) {
            prop_assert_eq!(g.rank, s.rank);
        }
    }

    #[test]
    fn moment_scaling_and_reality(
        group in prop_oneof![Just(LieGroup::SpecialUnitary), Just(LieGroup::CompactSymplectic), Just(LieGroup::FullUnitary)],
        n in 1usize..=3,
        parts in prop::collection::vec((small_rational(), small_rational()), 6),
        t in small_rational(),
    ) {
        let basis = LieAlgebraBasis::new(group, n).unwrap();
        let z: Vec<GaussianRational> =
            parts.into_iter().take(basis.rep_dim()).map(|(a, b)| GaussianRational::new(a, b)).collect();
        let v = moment_value(&basis, &z).unwrap();
        let tz: Vec<GaussianRational> = z.iter().map(|x| x.scale(&t)).collect();
        let tv = moment_value(&basis, &tz).unwrap();
        let t2 = &t * &t;
        for (a, b) in v.components.iter().zip(&tv.components) {
            prop_assert_eq!(&(a * &t2), b);
        }
        // the u(n) diagonal components are |z_j|²/2 ≥ 0
        if group == LieGroup::FullUnitary {
            for (j, c) in v.components.iter().take(n).enumerate() {
                let expected = (&z[j].re * &z[j].re + &z[j].im * &z[j].im) * Rational::frac(1, 2);
                prop_assert_eq!(c, &expected);
            }
        }
    }

    #[test]
    fn determinant_is_multiplicative(
        a in prop::collection::vec(-5i64..=5, 9),
        b in prop::collection::vec(-5i64..=5, 9),
    ) {
        let m = |v: &[i64]| Matrix::new(3, 3, v.iter().map(|&x| Rational::from(x)).collect()).unwrap();
        let (ma, mb) = (m(&a), m(&b));
        let mut prod = Matrix::zeros(3, 3);
        for r in 0..3 {
            for c in 0..3 {
                let s = (0..3).fold(Rational::zero(), |acc, k| acc + ma.get(r, k) * mb.get(k, c));
                prod.set(r, c, s);
            }
        }
        prop_assert_eq!(prod.determinant().unwrap(), ma.determinant().unwrap() * mb.determinant().unwrap());
        prop_assert_eq!(ma.rank(), ma.transpose().rank());
        prop_assert_eq!(ma.rank() == 3, ma.inverse().is_ok());
    }
}

/// `π^n ε^{n+p} / (2^p (n+p) (n−1)!)`.
fn moment_oracle(n: u32, p: u32) -> PiEpsScalar {
    let fact: i64 = (1..n as i64).product();
    let denom = 2i64.pow(p) * (n + p) as i64 * fact;
    PiEpsScalar::new(Rational::frac(1, denom), n, n + p)
}

#[test]
fn moment_integrals_match_closed_form() {
    for n in 1..=10 {
        for p in 0..=4 {
            assert_eq!(moment_sphere_integral(n as usize, p), moment_oracle(n, p), "n = {n}, p = {p}");
        }
    }
}

#[test]
fn betas_match_closed_forms_for_larger_fibres() {
    let g = fixtures::gompf_variant();
    let c = g.basis_element("c").unwrap();
    let v = g.lift::<EpsFraction>().basis_element("v").unwrap();
    let cf = g.lift::<EpsFraction>().basis_element("c").unwrap();
    let eps = EpsFraction::eps();
    for n in 1..=12i64 {
        let spec = FibrationSpec::new(g.clone(), c.clone(), n as usize, EpsChoice::Symbolic).unwrap();
        let betas = derive_betas::<EpsFraction>(&spec).unwrap();
        let b2 = EpsFraction::from_rational(Rational::frac(n, 2)) * &eps;
        let b4 = EpsFraction::from_rational(Rational::frac(n * (1 - n), 8)) * &eps * &eps;
        assert_eq!(betas.beta2, cf.scale(&b2));
        assert_eq!(betas.beta4, v.scale(&b4));
    }
}
