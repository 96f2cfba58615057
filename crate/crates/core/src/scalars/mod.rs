//! Exact coefficient arithmetic: rationals, polynomials and rational functions
//! in the formal parameter ε, and formal `π^a ε^b` monomials.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

mod eps_fraction;
mod eps_poly;
mod pi_eps;
mod rational;

pub use eps_fraction::EpsFraction;
pub use eps_poly::{EpsPoly, RationalRoots};
pub use pi_eps::PiEpsScalar;
pub use rational::{ArithOp, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial division is not exact")]
    InexactDivision,
    #[error("the zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("exponent underflow dividing {numerator} by {denominator}")]
    ExponentUnderflow { numerator: String, denominator: String },
    #[error("denominator vanishes at ε = {0}")]
    PoleAt(Rational),
    #[error("{0}")]
    Parse(String),
}

/// Which coefficient field a ring is defined over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ScalarMode {
    Rational,
    SymbolicEps,
}

impl fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScalarMode::Rational => "rational",
            ScalarMode::SymbolicEps => "symbolicEps",
        })
    }
}

impl FromStr for ScalarMode {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rational" => Ok(ScalarMode::Rational),
            "symbolicEps" => Ok(ScalarMode::SymbolicEps),
            other => Err(ScalarError::Parse(format!("unknown scalar mode `{other}`"))),
        }
    }
}

/// An exact coefficient field.
pub trait Field:
    Clone
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + FromStr<Err = ScalarError>
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    const MODE: ScalarMode;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn inv(&self) -> Result<Self, ScalarError>;
    fn from_rational(r: Rational) -> Self;

    fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self.clone() * &rhs.inv()?)
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(Rational::from(n))
    }
}

impl Field for Rational {
    const MODE: ScalarMode = ScalarMode::Rational;

    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Rational::is_one(self)
    }
    fn inv(&self) -> Result<Self, ScalarError> {
        self.recip()
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
}

impl Field for EpsFraction {
    const MODE: ScalarMode = ScalarMode::SymbolicEps;

    fn zero() -> Self {
        EpsFraction::zero()
    }
    fn one() -> Self {
        EpsFraction::one()
    }
    fn is_zero(&self) -> bool {
        EpsFraction::is_zero(self)
    }
    fn is_one(&self) -> bool {
        EpsFraction::is_one(self)
    }
    fn inv(&self) -> Result<Self, ScalarError> {
        self.recip()
    }
    fn from_rational(r: Rational) -> Self {
        EpsFraction::from_rational(r)
    }
}

/// Operator impls for types exposing `add_ref`, `sub_ref`, `mul_ref`, `neg_ref`.
macro_rules! forward_ops {
    ($t:ty) => {
        impl<'a> std::ops::Add<&'a $t> for &'a $t {
            type Output = $t;
            fn add(self, rhs: &'a $t) -> $t {
                self.add_ref(rhs)
            }
        }
        impl<'a> std::ops::Add<&'a $t> for $t {
            type Output = $t;
            fn add(self, rhs: &'a $t) -> $t {
                self.add_ref(rhs)
            }
        }
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                self.add_ref(&rhs)
            }
        }
        impl<'a> std::ops::Sub<&'a $t> for &'a $t {
            type Output = $t;
            fn sub(self, rhs: &'a $t) -> $t {
                self.sub_ref(rhs)
            }
        }
        impl<'a> std::ops::Sub<&'a $t> for $t {
            type Output = $t;
            fn sub(self, rhs: &'a $t) -> $t {
                self.sub_ref(rhs)
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                self.sub_ref(&rhs)
            }
        }
        impl<'a> std::ops::Mul<&'a $t> for &'a $t {
            type Output = $t;
            fn mul(self, rhs: &'a $t) -> $t {
                self.mul_ref(rhs)
            }
        }
        impl<'a> std::ops::Mul<&'a $t> for $t {
            type Output = $t;
            fn mul(self, rhs: &'a $t) -> $t {
                self.mul_ref(rhs)
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                self.mul_ref(&rhs)
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                self.neg_ref()
            }
        }
        impl std::ops::Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                self.neg_ref()
            }
        }
    };
}
pub(crate) use forward_ops;

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rational() -> impl Strategy<Value = Rational> {
        (-40i64..40, 1i64..12).prop_map(|(n, d)| Rational::frac(n, d))
    }

    fn poly() -> impl Strategy<Value = EpsPoly> {
        prop::collection::vec(rational(), 0..4).prop_map(EpsPoly::from_coeffs)
    }

    fn fraction() -> impl Strategy<Value = EpsFraction> {
        (poly(), poly()).prop_map(|(n, d)| {
            let d = if d.is_zero() { EpsPoly::one() } else { d };
            EpsFraction::new(n, d).unwrap()
        })
    }

    fn field_axioms<F: Field>(a: F, b: F, c: F) {
        assert_eq!((a.clone() + &b) + &c, a.clone() + &(b.clone() + &c));
        assert_eq!((a.clone() * &b) * &c, a.clone() * &(b.clone() * &c));
        assert_eq!(a.clone() * &(b.clone() + &c), a.clone() * &b + &(a.clone() * &c));
        assert_eq!(a.clone() + &b, b.clone() + &a);
        assert_eq!(a.clone() * &b, b.clone() * &a);
        assert!((a.clone() - &a).is_zero());
        assert_eq!(a.clone() + &F::zero(), a);
        assert_eq!(a.clone() * &F::one(), a);
        if !a.is_zero() {
            assert!((a.clone() * &a.inv().unwrap()).is_one());
        } else {
            assert!(a.inv().is_err());
        }
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
            field_axioms(a, b, c);
        }

        #[test]
        fn eps_fraction_field_axioms(a in fraction(), b in fraction(), c in fraction()) {
            field_axioms(a, b, c);
        }

        #[test]
        fn gcd_divides_both(p in poly(), q in poly()) {
            prop_assume!(!p.is_zero() && !q.is_zero());
            let g = p.gcd(&q);
            prop_assert!(g.divides(&p));
            prop_assert!(g.divides(&q));
            prop_assert_eq!(g.leading_coeff().cloned(), Some(Rational::one()));
        }

        #[test]
        fn pi_eps_product_laws(
            a in rational(), b in rational(), pa in 0u32..4, ea in 0u32..4, pb in 0u32..4, eb in 0u32..4
        ) {
            let x = PiEpsScalar::new(a, pa, ea);
            let y = PiEpsScalar::new(b, pb, eb);
            prop_assert_eq!(&x * &y, &y * &x);
            let xy = &x * &y;
            if !x.is_zero() && !y.is_zero() {
                prop_assert_eq!(xy.pi_exp(), pa + pb);
                prop_assert_eq!(xy.eps_exp(), ea + eb);
                prop_assert_eq!(xy.checked_div(&y).unwrap(), x);
            }
        }

        #[test]
        fn fraction_text_round_trip(a in fraction()) {
            prop_assert_eq!(a.to_string().parse::<EpsFraction>().unwrap(), a);
        }

        #[test]
        fn rational_roots_are_roots(p in poly()) {
            prop_assume!(!p.is_zero());
            let found = p.rational_roots().unwrap();
            let mut rebuilt = found.residual.clone();
            for (r, m) in &found.roots {
                prop_assert!(p.eval(r).is_zero());
                let lin = EpsPoly::from_coeffs(vec![-r, Rational::one()]);
                rebuilt = rebuilt.mul_ref(&lin.pow(*m));
            }
            prop_assert_eq!(rebuilt, p.monic());
        }
    }
}
