use std::fmt;
use std::str::FromStr;

use super::{EpsPoly, Rational, ScalarError};

/// Element of the rational function field Q(ε), kept reduced with a monic
/// denominator so that equal values have equal representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EpsFraction {
    numer: EpsPoly,
    denom: EpsPoly,
}

impl EpsFraction {
    pub fn new(numer: EpsPoly, denom: EpsPoly) -> Result<Self, ScalarError> {
        if denom.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if numer.is_zero() {
            return Ok(EpsFraction::zero());
        }
        let g = numer.gcd(&denom);
        let mut numer = numer.exact_div(&g)?;
        let mut denom = denom.exact_div(&g)?;
        let lc = denom.leading_coeff().expect("nonzero").clone();
        if !lc.is_one() {
            let inv = lc.recip()?;
            numer = numer.scale(&inv);
            denom = denom.scale(&inv);
        }
        Ok(EpsFraction { numer, denom })
    }

    pub fn zero() -> Self {
        EpsFraction { numer: EpsPoly::zero(), denom: EpsPoly::one() }
    }

    pub fn one() -> Self {
        EpsFraction::from_poly(EpsPoly::one())
    }

    /// The parameter ε as a field element.
    pub fn eps() -> Self {
        EpsFraction::from_poly(EpsPoly::eps())
    }

    pub fn from_poly(numer: EpsPoly) -> Self {
        EpsFraction { numer, denom: EpsPoly::one() }
    }

    pub fn from_rational(c: Rational) -> Self {
        EpsFraction::from_poly(EpsPoly::constant(c))
    }

    pub fn numer(&self) -> &EpsPoly {
        &self.numer
    }

    pub fn denom(&self) -> &EpsPoly {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.numer.is_one() && self.denom.is_one()
    }

    /// The value as a rational constant, when it does not depend on ε.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.numer.is_constant() && self.denom.is_one()).then(|| self.numer.coeff(0))
    }

    pub fn add_ref(&self, rhs: &EpsFraction) -> EpsFraction {
        if self.denom == rhs.denom {
            return EpsFraction::new(self.numer.add_ref(&rhs.numer), self.denom.clone())
                .expect("denominator nonzero");
        }
        let numer = self.numer.mul_ref(&rhs.denom).add_ref(&rhs.numer.mul_ref(&self.denom));
        EpsFraction::new(numer, self.denom.mul_ref(&rhs.denom)).expect("denominator nonzero")
    }

    pub fn sub_ref(&self, rhs: &EpsFraction) -> EpsFraction {
        self.add_ref(&rhs.neg_ref())
    }

    pub fn mul_ref(&self, rhs: &EpsFraction) -> EpsFraction {
        if self.is_zero() || rhs.is_zero() {
            return EpsFraction::zero();
        }
        if self.denom.is_one() && rhs.denom.is_one() {
            return EpsFraction::from_poly(self.numer.mul_ref(&rhs.numer));
        }
        EpsFraction::new(self.numer.mul_ref(&rhs.numer), self.denom.mul_ref(&rhs.denom))
            .expect("denominator nonzero")
    }

    pub fn neg_ref(&self) -> EpsFraction {
        EpsFraction { numer: self.numer.neg_ref(), denom: self.denom.clone() }
    }

    pub fn recip(&self) -> Result<EpsFraction, ScalarError> {
        EpsFraction::new(self.denom.clone(), self.numer.clone())
    }

    pub fn checked_div(&self, rhs: &EpsFraction) -> Result<EpsFraction, ScalarError> {
        Ok(self.mul_ref(&rhs.recip()?))
    }

    pub fn pow(&self, exp: u32) -> EpsFraction {
        EpsFraction { numer: self.numer.pow(exp), denom: self.denom.pow(exp) }
    }

    /// Substitutes ε = `at`; fails where the denominator vanishes.
    pub fn eval(&self, at: &Rational) -> Result<Rational, ScalarError> {
        let d = self.denom.eval(at);
        if d.is_zero() {
            return Err(ScalarError::PoleAt(at.clone()));
        }
        Ok(self.numer.eval(at) / d)
    }
}

super::forward_ops!(EpsFraction);

impl Default for EpsFraction {
    fn default() -> Self {
        EpsFraction::zero()
    }
}

impl From<Rational> for EpsFraction {
    fn from(c: Rational) -> Self {
        EpsFraction::from_rational(c)
    }
}

impl From<EpsPoly> for EpsFraction {
    fn from(p: EpsPoly) -> Self {
        EpsFraction::from_poly(p)
    }
}

impl fmt::Display for EpsFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom.is_one() {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "({})/({})", self.numer, self.denom)
        }
    }
}

impl fmt::Debug for EpsFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EpsFraction({self})")
    }
}

impl FromStr for EpsFraction {
    type Err = ScalarError;

    /// Either a bare polynomial or `(numerator)/(denominator)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if let Some(inner) = t.strip_prefix('(') {
            if let Some((num, den)) = inner.split_once(")/(") {
                let den = den
                    .strip_suffix(')')
                    .ok_or_else(|| ScalarError::Parse(format!("unbalanced fraction `{s}`")))?;
                return EpsFraction::new(num.parse()?, den.parse()?);
            }
            if let Some(body) = inner.strip_suffix(')') {
                return Ok(EpsFraction::from_poly(body.parse()?));
            }
            return Err(ScalarError::Parse(format!("unbalanced fraction `{s}`")));
        }
        Ok(EpsFraction::from_poly(t.parse()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> EpsFraction {
        s.parse().unwrap()
    }

    #[test]
    fn reduction_keeps_denominator_monic() {
        let x = EpsFraction::new("2*e^2 - 2".parse().unwrap(), "4*e + 4".parse().unwrap()).unwrap();
        assert_eq!(x, f("1/2*e - 1/2"));
        let y = EpsFraction::new("1".parse().unwrap(), "2*e".parse().unwrap()).unwrap();
        assert_eq!(y.denom(), &EpsPoly::eps());
        assert_eq!(y.numer(), &EpsPoly::constant(Rational::frac(1, 2)));
    }

    #[test]
    fn field_operations() {
        let a = f("(e + 1)/(e - 1)");
        let b = f("(e - 1)/(e^2)");
        assert_eq!(a.clone() * b.clone(), f("(e + 1)/(e^2)"));
        assert_eq!(a.clone() - a.clone(), EpsFraction::zero());
        assert_eq!(a.checked_div(&a).unwrap(), EpsFraction::one());
        assert!(a.checked_div(&EpsFraction::zero()).is_err());
    }

    #[test]
    fn evaluation_and_poles() {
        let a = f("(e + 1)/(e - 1)");
        assert_eq!(a.eval(&Rational::from(3)).unwrap(), Rational::from(2));
        assert_eq!(a.eval(&Rational::one()), Err(ScalarError::PoleAt(Rational::one())));
    }

    #[test]
    fn render_round_trip() {
        for s in ["(1*e^0 + 1*e^1)/(-1*e^0 + 1*e^1)", "1/2*e^1", "0"] {
            assert_eq!(f(s).to_string(), s);
        }
    }
}
