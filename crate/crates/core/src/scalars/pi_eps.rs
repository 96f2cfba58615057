use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use super::{Rational, ScalarError};

/// Exact monomial `q · π^a · ε^b`. π stays formal: quotients are only
/// defined when the exponents do not underflow.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PiEpsScalar {
    coefficient: Rational,
    pi_exp: u32,
    eps_exp: u32,
}

impl PiEpsScalar {
    pub fn new(coefficient: Rational, pi_exp: u32, eps_exp: u32) -> Self {
        if coefficient.is_zero() {
            return PiEpsScalar::zero();
        }
        PiEpsScalar { coefficient, pi_exp, eps_exp }
    }

    pub fn zero() -> Self {
        PiEpsScalar { coefficient: Rational::zero(), pi_exp: 0, eps_exp: 0 }
    }

    pub fn rational(c: Rational) -> Self {
        PiEpsScalar::new(c, 0, 0)
    }

    pub fn coefficient(&self) -> &Rational {
        &self.coefficient
    }

    pub fn pi_exp(&self) -> u32 {
        self.pi_exp
    }

    pub fn eps_exp(&self) -> u32 {
        self.eps_exp
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PiEpsScalar::new(&self.coefficient * c, self.pi_exp, self.eps_exp)
    }

    /// Exact quotient. Errors on a zero divisor or when either exponent
    /// would become negative.
    pub fn checked_div(&self, rhs: &PiEpsScalar) -> Result<PiEpsScalar, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(PiEpsScalar::zero());
        }
        let pi_exp = self.pi_exp.checked_sub(rhs.pi_exp);
        let eps_exp = self.eps_exp.checked_sub(rhs.eps_exp);
        match (pi_exp, eps_exp) {
            (Some(a), Some(b)) => Ok(PiEpsScalar::new(self.coefficient.checked_div(&rhs.coefficient)?, a, b)),
            _ => Err(ScalarError::ExponentUnderflow {
                numerator: self.to_string(),
                denominator: rhs.to_string(),
            }),
        }
    }
}

impl Mul for &PiEpsScalar {
    type Output = PiEpsScalar;
    fn mul(self, rhs: &PiEpsScalar) -> PiEpsScalar {
        PiEpsScalar::new(
            &self.coefficient * &rhs.coefficient,
            self.pi_exp + rhs.pi_exp,
            self.eps_exp + rhs.eps_exp,
        )
    }
}

impl Mul for PiEpsScalar {
    type Output = PiEpsScalar;
    fn mul(self, rhs: PiEpsScalar) -> PiEpsScalar {
        &self * &rhs
    }
}

impl fmt::Display for PiEpsScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*pi^{}*e^{}", self.coefficient, self.pi_exp, self.eps_exp)
    }
}

impl fmt::Debug for PiEpsScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PiEpsScalar {
    type Err = ScalarError;

    /// `q`, optionally followed by `*pi^a` and/or `*e^b` factors.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || ScalarError::Parse(format!("invalid pi-eps monomial `{s}`"));
        let mut parts = compact.split('*').peekable();
        let first = *parts.peek().ok_or_else(bad)?;
        let coefficient: Rational = if first.starts_with(['p', 'e']) {
            Rational::one()
        } else {
            parts.next();
            first.parse()?
        };
        let (mut pi_exp, mut eps_exp) = (0u32, 0u32);
        for factor in parts {
            let (base, exp) = factor.split_once('^').unwrap_or((factor, "1"));
            let exp: u32 = exp.parse().map_err(|_| bad())?;
            match base {
                "pi" => pi_exp += exp,
                "e" => eps_exp += exp,
                _ => return Err(bad()),
            }
        }
        Ok(PiEpsScalar::new(coefficient, pi_exp, eps_exp))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> PiEpsScalar {
        s.parse().unwrap()
    }

    #[test]
    fn division_examples() {
        assert_eq!(m("1/2*pi*e^2").checked_div(&m("1*pi*e")).unwrap(), m("1/2*e"));
        assert_eq!(m("3*pi^2*e^3").checked_div(&m("pi^2*e^3")).unwrap(), m("3"));
        // first moment over the fibre volume at n = 1
        assert_eq!(m("1/4*pi*e^2").checked_div(&m("pi*e")).unwrap(), m("1/4*e"));
    }

    #[test]
    fn underflow_and_zero_are_errors() {
        assert!(matches!(
            m("pi*e").checked_div(&m("pi^2*e")),
            Err(ScalarError::ExponentUnderflow { .. })
        ));
        assert_eq!(m("pi").checked_div(&PiEpsScalar::zero()), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn zero_normalises_exponents() {
        let z = PiEpsScalar::new(Rational::zero(), 3, 4);
        assert_eq!(z.pi_exp(), 0);
        assert_eq!(z.eps_exp(), 0);
        assert_eq!(z, PiEpsScalar::zero());
    }

    #[test]
    fn render() {
        assert_eq!(m("-3/2*e^2*pi").to_string(), "-3/2*pi^1*e^2");
        assert_eq!(m("-3/2*pi^1*e^2"), m("-3/2*e^2*pi"));
        assert!("2*x^3".parse::<PiEpsScalar>().is_err());
    }
}
