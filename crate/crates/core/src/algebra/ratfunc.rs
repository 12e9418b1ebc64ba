use std::fmt;

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Element of ℚ(t), kept reduced with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalFunction { num, den: Poly::one() });
        }
        let g = Poly::gcd(&num, &den);
        let (mut n, _) = num.div_rem(&g)?;
        let (mut d, _) = den.div_rem(&g)?;
        let lead = d.leading().expect("nonzero").clone();
        if !lead.is_one() {
            let inv = lead.recip();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        Ok(RationalFunction { num: n, den: d })
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction { num: p, den: Poly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn t() -> Self {
        Self::from_poly(Poly::t())
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        let d = self.den.as_constant()?;
        Some(self.num.as_constant()? / d)
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(&self.num + &o.num, self.den.clone()).expect("nonzero");
        }
        Self::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
        .expect("nonzero")
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero")
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// Substitutes a rational value for `t`; fails at a pole.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x) / d)
    }

    /// `f(t) ↦ f(1/t)`.
    pub fn invert_variable(&self) -> Self {
        // p(1/t) = t^{-deg p} * rev(p)(t)
        let rev = |p: &Poly| Poly::new(p.coeffs().iter().rev().cloned().collect());
        let dn = self.num.degree().unwrap_or(0) as i64;
        let dd = self.den.degree().unwrap_or(0) as i64;
        let mut num = rev(&self.num);
        let mut den = rev(&self.den);
        let shift = dd - dn;
        let tk = |k: i64| {
            let mut cs = vec![Rational::zero(); k as usize + 1];
            cs[k as usize] = Rational::one();
            Poly::new(cs)
        };
        if shift > 0 {
            num = &num * &tk(shift);
        } else if shift < 0 {
            den = &den * &tk(-shift);
        }
        Self::new(num, den).expect("nonzero")
    }

    /// Parses `(p)/(q)`, `(p)` or a bare polynomial.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('(') {
            let close = matching_paren(rest)
                .ok_or_else(|| Error::Malformed(format!("unbalanced parentheses in '{s}'")))?;
            let num = Poly::parse(&rest[..close])?;
            let after = rest[close + 1..].trim();
            if after.is_empty() {
                return Ok(Self::from_poly(num));
            }
            let den_str = after
                .strip_prefix('/')
                .map(str::trim)
                .and_then(|d| d.strip_prefix('(').and_then(|d| d.strip_suffix(')')))
                .ok_or_else(|| Error::Malformed(format!("expected '/(...)' in '{s}'")))?;
            Self::new(num, Poly::parse(den_str)?)
        } else {
            Ok(Self::from_poly(Poly::parse(s)?))
        }
    }
}

fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 1usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn reduces_and_normalizes() {
        // (2t - 2)/(2t^2 - 2) = 1/(t + 1)
        let f = RationalFunction::new(Poly::from_ints(&[-2, 2]), Poly::from_ints(&[-2, 0, 2])).unwrap();
        assert_eq!(f.numer(), &Poly::from_ints(&[1]));
        assert_eq!(f.denom(), &Poly::from_ints(&[1, 1]));
        assert_eq!(f.to_string(), "(1/1)/(1/1 + 1/1*t)");
    }

    #[test]
    fn parse_roundtrip_and_inversion() {
        let f = RationalFunction::parse("(1/1)/(-1/1 + 1/1*t)").unwrap();
        assert_eq!(RationalFunction::parse(&f.to_string()).unwrap(), f);
        // 1/(t-1) at t -> 1/t is t/(1-t)
        let g = f.invert_variable();
        assert_eq!(g.eval(&rat(3, 1)).unwrap(), rat(-3, 2));
        assert!(f.eval(&rat(1, 1)).is_err());
    }
}
