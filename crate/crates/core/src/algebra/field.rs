use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Poly;
use super::ratfunc::RationalFunction;
use super::rational::{format_rational, parse_rational, sign_of, Rational};
use crate::error::{Error, Result};

/// Which exact field a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldTag {
    Q,
    Qt,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Q => write!(f, "Q"),
            FieldTag::Qt => write!(f, "Q(t)"),
        }
    }
}

/// A scalar in ℚ or ℚ(t). Mixed arithmetic and comparison go through the inclusion ℚ ⊂ ℚ(t).
#[derive(Clone, Debug)]
pub enum FieldElement {
    Q(Rational),
    Qt(RationalFunction),
}

impl PartialEq for FieldElement {
    fn eq(&self, o: &Self) -> bool {
        match (self, o) {
            (FieldElement::Q(a), FieldElement::Q(b)) => a == b,
            (FieldElement::Qt(a), FieldElement::Qt(b)) => a == b,
            _ => self.as_rational().is_some() && self.as_rational() == o.as_rational(),
        }
    }
}

impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match self.as_rational() {
            Some(r) => r.hash(state),
            None => {
                if let FieldElement::Qt(f) = self {
                    f.hash(state)
                }
            }
        }
    }
}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement::Q(Rational::zero())
    }

    pub fn one() -> Self {
        FieldElement::Q(Rational::one())
    }

    pub fn int(n: i64) -> Self {
        FieldElement::Q(Rational::from_integer(n.into()))
    }

    pub fn rat(n: i64, d: i64) -> Self {
        FieldElement::Q(super::rational::rat(n, d))
    }

    /// The indeterminate `t` of ℚ(t).
    pub fn t() -> Self {
        FieldElement::Qt(RationalFunction::t())
    }

    pub fn zero_of(tag: FieldTag) -> Self {
        match tag {
            FieldTag::Q => Self::zero(),
            FieldTag::Qt => FieldElement::Qt(RationalFunction::constant(Rational::zero())),
        }
    }

    pub fn one_of(tag: FieldTag) -> Self {
        match tag {
            FieldTag::Q => Self::one(),
            FieldTag::Qt => FieldElement::Qt(RationalFunction::constant(Rational::one())),
        }
    }

    pub fn tag(&self) -> FieldTag {
        match self {
            FieldElement::Q(_) => FieldTag::Q,
            FieldElement::Qt(_) => FieldTag::Qt,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Q(r) => r.is_zero(),
            FieldElement::Qt(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Q(r) => r.is_one(),
            FieldElement::Qt(f) => f.as_constant().is_some_and(|c| c.is_one()),
        }
    }

    /// Value as a rational when it is constant.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            FieldElement::Q(r) => Some(r.clone()),
            FieldElement::Qt(f) => f.as_constant(),
        }
    }

    /// Sign of a constant value; `None` for nonconstant rational functions.
    pub fn sign(&self) -> Option<i32> {
        self.as_rational().map(|r| sign_of(&r))
    }

    pub fn promote(&self, tag: FieldTag) -> FieldElement {
        match (self, tag) {
            (FieldElement::Q(r), FieldTag::Qt) => FieldElement::Qt(RationalFunction::constant(r.clone())),
            _ => self.clone(),
        }
    }

    pub fn inv(&self) -> Result<FieldElement> {
        match self {
            FieldElement::Q(r) if r.is_zero() => Err(Error::DivisionByZero),
            FieldElement::Q(r) => Ok(FieldElement::Q(r.recip())),
            FieldElement::Qt(f) => Ok(FieldElement::Qt(f.inv()?)),
        }
    }

    pub fn checked_div(&self, o: &FieldElement) -> Result<FieldElement> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = FieldElement::one_of(self.tag());
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Substitutes `t = x` (identity on rationals).
    pub fn eval_at(&self, x: &Rational) -> Result<FieldElement> {
        match self {
            FieldElement::Q(r) => Ok(FieldElement::Q(r.clone())),
            FieldElement::Qt(f) => Ok(FieldElement::Q(f.eval(x)?)),
        }
    }

    /// `f(t) ↦ f(1/t)`.
    pub fn invert_variable(&self) -> FieldElement {
        match self {
            FieldElement::Q(_) => self.clone(),
            FieldElement::Qt(f) => FieldElement::Qt(f.invert_variable()),
        }
    }

    /// Parses `p/q` into ℚ, anything containing `t` or parentheses into ℚ(t).
    pub fn parse(s: &str) -> Result<FieldElement> {
        let s = s.trim();
        if s.contains('t') || s.contains('(') {
            Ok(FieldElement::Qt(RationalFunction::parse(s)?))
        } else {
            Ok(FieldElement::Q(parse_rational(s)?))
        }
    }

    pub fn parse_in(s: &str, tag: FieldTag) -> Result<FieldElement> {
        let v = Self::parse(s)?;
        if tag == FieldTag::Q && v.tag() == FieldTag::Qt {
            return Err(Error::FieldMismatch(format!("'{s}' is not a rational")));
        }
        Ok(v.promote(tag))
    }

    fn binop(
        &self,
        o: &FieldElement,
        fq: impl Fn(&Rational, &Rational) -> Rational,
        ft: impl Fn(&RationalFunction, &RationalFunction) -> RationalFunction,
    ) -> FieldElement {
        match (self, o) {
            (FieldElement::Q(a), FieldElement::Q(b)) => FieldElement::Q(fq(a, b)),
            (FieldElement::Qt(a), FieldElement::Qt(b)) => FieldElement::Qt(ft(a, b)),
            (FieldElement::Q(a), FieldElement::Qt(b)) => {
                FieldElement::Qt(ft(&RationalFunction::constant(a.clone()), b))
            }
            (FieldElement::Qt(a), FieldElement::Q(b)) => {
                FieldElement::Qt(ft(a, &RationalFunction::constant(b.clone())))
            }
        }
    }
}

impl From<Rational> for FieldElement {
    fn from(r: Rational) -> Self {
        FieldElement::Q(r)
    }
}

impl From<RationalFunction> for FieldElement {
    fn from(f: RationalFunction) -> Self {
        FieldElement::Qt(f)
    }
}

impl From<Poly> for FieldElement {
    fn from(p: Poly) -> Self {
        FieldElement::Qt(RationalFunction::from_poly(p))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Q(r) => write!(f, "{}", format_rational(r)),
            FieldElement::Qt(g) => write!(f, "{g}"),
        }
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        self.binop(o, |a, b| a + b, |a, b| a.add(b))
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        self.binop(o, |a, b| a - b, |a, b| a.sub(b))
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &FieldElement) -> FieldElement {
        self.binop(o, |a, b| a * b, |a, b| a.mul(b))
    }
}

/// Panics on division by zero; use [`FieldElement::checked_div`] otherwise.
impl Div for &FieldElement {
    type Output = FieldElement;
    fn div(self, o: &FieldElement) -> FieldElement {
        self.checked_div(o).expect("division by zero")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Q(r) => FieldElement::Q(-r),
            FieldElement::Qt(f) => FieldElement::Qt(f.neg()),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement {
                (&self).$m(&o)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: &FieldElement) -> FieldElement {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}
