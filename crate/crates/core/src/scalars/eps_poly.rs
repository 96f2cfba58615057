use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Rational, ScalarError};

/// Univariate polynomial in the formal parameter ε with rational coefficients.
///
/// Stored densely by exponent with trailing zeros trimmed, so the zero
/// polynomial has no coefficients and `coeffs.last()` is the leading term.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct EpsPoly {
    coeffs: Vec<Rational>,
}

/// Rational roots of an ε-polynomial together with whatever did not split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalRoots {
    /// Distinct roots in increasing order with their multiplicities.
    pub roots: Vec<(Rational, u32)>,
    /// Monic factor without rational roots (the unit polynomial when `p`
    /// splits completely over Q).
    pub residual: EpsPoly,
}

impl RationalRoots {
    pub fn distinct(&self) -> Vec<Rational> {
        self.roots.iter().map(|(r, _)| r.clone()).collect()
    }
}

impl EpsPoly {
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = EpsPoly { coeffs };
        p.trim();
        p
    }

    /// Convenience constructor from `(numerator, denominator)` pairs indexed by exponent.
    pub fn from_fracs(coeffs: &[(i64, i64)]) -> Self {
        EpsPoly::from_coeffs(coeffs.iter().map(|&(n, d)| Rational::frac(n, d)).collect())
    }

    pub fn zero() -> Self {
        EpsPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        EpsPoly::constant(Rational::one())
    }

    /// The polynomial ε itself.
    pub fn eps() -> Self {
        EpsPoly::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        EpsPoly::from_coeffs(vec![c])
    }

    pub fn monomial(c: Rational, exp: usize) -> Self {
        if c.is_zero() {
            return EpsPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); exp + 1];
        coeffs[exp] = c;
        EpsPoly { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Rational::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree of the polynomial; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, exp: usize) -> Rational {
        self.coeffs.get(exp).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Nonzero terms as `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return EpsPoly::zero();
        }
        EpsPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => EpsPoly::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => {
                let inv = lc.recip().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn add_ref(&self, rhs: &EpsPoly) -> EpsPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        EpsPoly::from_coeffs(coeffs)
    }

    pub fn sub_ref(&self, rhs: &EpsPoly) -> EpsPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        EpsPoly::from_coeffs(coeffs)
    }

    pub fn mul_ref(&self, rhs: &EpsPoly) -> EpsPoly {
        if self.is_zero() || rhs.is_zero() {
            return EpsPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.terms() {
            for (j, b) in rhs.terms() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        EpsPoly::from_coeffs(coeffs)
    }

    pub fn neg_ref(&self) -> EpsPoly {
        EpsPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn pow(&self, exp: u32) -> EpsPoly {
        let mut acc = EpsPoly::one();
        for _ in 0..exp {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Euclidean division `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &EpsPoly) -> Result<(EpsPoly, EpsPoly), ScalarError> {
        let dd = divisor.degree().ok_or(ScalarError::DivisionByZero)?;
        let lc_inv = divisor.coeffs[dd].recip()?;
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return Ok((EpsPoly::zero(), EpsPoly::zero()));
        };
        if sd < dd {
            return Ok((EpsPoly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); sd - dd + 1];
        for shift in (0..=sd - dd).rev() {
            let c = &rem[shift + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = &rem[shift + i] - &(&c * d);
            }
            quot[shift] = c;
        }
        rem.truncate(dd);
        Ok((EpsPoly::from_coeffs(quot), EpsPoly::from_coeffs(rem)))
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &EpsPoly) -> Result<EpsPoly, ScalarError> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(ScalarError::InexactDivision);
        }
        Ok(q)
    }

    pub fn divides(&self, other: &EpsPoly) -> bool {
        other.div_rem(self).map(|(_, r)| r.is_zero()).unwrap_or(other.is_zero())
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &EpsPoly) -> EpsPoly {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("b is nonzero");
            a = b;
            b = r.monic();
        }
        a
    }

    /// Monic least common multiple; zero if either argument is zero.
    pub fn lcm(&self, other: &EpsPoly) -> EpsPoly {
        if self.is_zero() || other.is_zero() {
            return EpsPoly::zero();
        }
        let g = self.gcd(other);
        self.mul_ref(&other.exact_div(&g).expect("gcd divides")).monic()
    }

    pub fn derivative(&self) -> EpsPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &Rational::from(i as i64))
            .collect();
        EpsPoly::from_coeffs(coeffs)
    }

    /// Monic product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> EpsPoly {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * at + c)
    }

    /// Integer polynomial proportional to `self` with coprime coefficients.
    fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        ints.into_iter().map(|c| c / &content).collect()
    }

    /// All rational roots with multiplicity; the non-splitting part is
    /// returned as a monic residual.
    pub fn rational_roots(&self) -> Result<RationalRoots, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::ZeroPolynomial);
        }
        let mut candidates: Vec<Rational> = Vec::new();
        let sf = self.squarefree_part();
        let low = sf.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
        if low > 0 {
            candidates.push(Rational::zero());
        }
        let shifted = EpsPoly::from_coeffs(sf.coeffs[low..].to_vec());
        if shifted.degree().unwrap_or(0) > 0 {
            let ints = shifted.primitive_integer_coeffs();
            let a0 = ints.first().expect("nonzero").abs();
            let an = ints.last().expect("nonzero").abs();
            for p in divisors(&a0) {
                for q in divisors(&an) {
                    for sign in [1, -1] {
                        let r = Rational::new(BigInt::from(sign) * &p, q.clone())
                            .expect("divisor is positive");
                        if shifted.eval(&r).is_zero() && !candidates.contains(&r) {
                            candidates.push(r);
                        }
                    }
                }
            }
        }
        candidates.sort();

        let mut rest = self.clone();
        let mut roots = Vec::new();
        for r in candidates {
            let linear = EpsPoly::from_coeffs(vec![-&r, Rational::one()]);
            let mut mult = 0;
            loop {
                let (q, rem) = rest.div_rem(&linear)?;
                if !rem.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            debug_assert!(mult > 0);
            roots.push((r, mult));
        }
        Ok(RationalRoots { roots, residual: rest.monic() })
    }
}

/// Positive divisors of a positive integer by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let other = n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

super::forward_ops!(EpsPoly);

impl fmt::Display for EpsPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (exp, c)) in self.terms().enumerate() {
            if n == 0 {
                write!(f, "{c}*e^{exp}")?;
            } else if c.is_negative() {
                write!(f, " - {}*e^{exp}", c.abs())?;
            } else {
                write!(f, " + {c}*e^{exp}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for EpsPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EpsPoly({self})")
    }
}

impl FromStr for EpsPoly {
    type Err = ScalarError;

    /// Accepts signed sums of terms `c`, `c*e^k`, `c*e`, `e^k` and `e`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ScalarError::Parse("empty polynomial".into()));
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut negative = false;
        let mut current = String::new();
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !current.is_empty() {
                terms.push((negative, std::mem::take(&mut current)));
                negative = ch == '-';
            } else if (ch == '+' || ch == '-') && current.is_empty() {
                if ch == '-' {
                    negative = !negative;
                }
            } else {
                current.push(ch);
            }
        }
        if current.is_empty() {
            return Err(ScalarError::Parse(format!("dangling sign in `{s}`")));
        }
        terms.push((negative, current));

        let mut acc = EpsPoly::zero();
        for (negative, term) in terms {
            let (coeff, exp) = parse_term(&term)?;
            let coeff = if negative { -coeff } else { coeff };
            acc = acc + EpsPoly::monomial(coeff, exp);
        }
        Ok(acc)
    }
}

fn parse_term(term: &str) -> Result<(Rational, usize), ScalarError> {
    let bad = || ScalarError::Parse(format!("invalid polynomial term `{term}`"));
    let parse_exp = |e: &str| -> Result<usize, ScalarError> {
        if e.is_empty() {
            Ok(1)
        } else {
            e.strip_prefix('^').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())
        }
    };
    if let Some(rest) = term.strip_prefix('e') {
        return Ok((Rational::one(), parse_exp(rest)?));
    }
    match term.split_once('*') {
        None => Ok((term.parse()?, 0)),
        Some((c, var)) => {
            let rest = var.strip_prefix('e').ok_or_else(bad)?;
            Ok((c.parse()?, parse_exp(rest)?))
        }
    }
}
