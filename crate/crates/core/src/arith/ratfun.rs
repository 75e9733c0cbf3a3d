use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{ArithError, Field, LaurentPoly, Ring, Scalar};

/// Dense polynomial in `t`, index = exponent, no trailing zeros.
type Dense = Vec<Scalar>;

fn trim(p: &mut Dense) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn to_dense(p: &LaurentPoly) -> Dense {
    debug_assert!(p.is_polynomial());
    let mut out = vec![Scalar::zero(); p.max_exponent().map_or(0, |e| e as usize + 1)];
    for (e, c) in p.terms() {
        out[e as usize] = c.clone();
    }
    out
}

fn from_dense(p: &Dense) -> LaurentPoly {
    LaurentPoly::from_terms(p.iter().enumerate().map(|(e, c)| (e as i32, c.clone())))
}

/// Polynomial long division; `b` must be nonzero.
fn div_rem(a: &Dense, b: &Dense) -> (Dense, Dense) {
    let mut rem = a.clone();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Scalar::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let factor = rem.last().unwrap() / &lead;
        for (i, c) in b.iter().enumerate() {
            rem[shift + i] = &rem[shift + i] - &(c * &factor);
        }
        quot[shift] = factor;
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

fn monic_gcd(a: &Dense, b: &Dense) -> Dense {
    let (mut x, mut y) = (a.clone(), b.clone());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(lead) = x.last().cloned() {
        for c in x.iter_mut() {
            *c = &*c / &lead;
        }
    }
    x
}

/// A quotient of two polynomials in `t`, stored reduced with a monic
/// denominator so that equal functions are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    numerator: LaurentPoly,
    denominator: LaurentPoly,
}

impl RationalFunction {
    /// Builds `num / den` from arbitrary Laurent polynomials; negative powers
    /// are cleared into the other side.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        let low = num.min_exponent().unwrap_or(0).min(den.min_exponent().unwrap()).min(0);
        Ok(Self::reduce(to_dense(&num.shift(-low)), to_dense(&den.shift(-low))))
    }

    fn reduce(mut num: Dense, mut den: Dense) -> Self {
        trim(&mut num);
        trim(&mut den);
        if num.is_empty() {
            return RationalFunction::zero();
        }
        let g = monic_gcd(&num, &den);
        let (mut n, _) = div_rem(&num, &g);
        let (mut d, _) = div_rem(&den, &g);
        let lead = d.last().unwrap().clone();
        for c in n.iter_mut().chain(d.iter_mut()) {
            *c = &*c / &lead;
        }
        RationalFunction {
            numerator: from_dense(&n),
            denominator: from_dense(&d),
        }
    }

    pub fn zero() -> Self {
        RationalFunction {
            numerator: LaurentPoly::zero(),
            denominator: LaurentPoly::constant(Scalar::one()),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        RationalFunction {
            numerator: LaurentPoly::constant(c),
            denominator: LaurentPoly::constant(Scalar::one()),
        }
    }

    pub fn from_laurent(p: &LaurentPoly) -> Self {
        RationalFunction::new(p.clone(), LaurentPoly::constant(Scalar::one()))
            .expect("unit denominator")
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// `ord_{t=0}(numerator) - ord_{t=0}(denominator)`.
    pub fn valuation_at_zero(&self) -> Result<i32, ArithError> {
        Ok(self.numerator.valuation()? - self.denominator.valuation()?)
    }

    pub fn limit_at_zero(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        let v = self.valuation_at_zero().ok()?;
        match v {
            v if v > 0 => Some(Scalar::zero()),
            0 => {
                let n = self.numerator.coeff(self.numerator.valuation().ok()?);
                let d = self.denominator.coeff(self.denominator.valuation().ok()?);
                Some(n / d)
            }
            _ => None,
        }
    }

    /// Evaluates at `t0`, or `None` at a pole.
    pub fn evaluate(&self, t0: &Scalar) -> Option<Scalar> {
        let d = self.denominator.evaluate(t0)?;
        if d.is_zero() {
            return None;
        }
        Some(self.numerator.evaluate(t0)? / d)
    }

    /// Returns the Laurent polynomial equal to this function when the
    /// denominator is a monomial.
    pub fn as_laurent(&self) -> Option<LaurentPoly> {
        let mut terms = self.denominator.terms();
        let (e, c) = terms.next()?;
        if terms.next().is_some() {
            return None;
        }
        Some(self.numerator.scale(&c.recip()?).shift(-e))
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::reduce(to_dense(&self.denominator), to_dense(&self.numerator)))
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        RationalFunction::zero()
    }
}

impl From<Scalar> for RationalFunction {
    fn from(c: Scalar) -> Self {
        RationalFunction::constant(c)
    }
}

impl From<&LaurentPoly> for RationalFunction {
    fn from(p: &LaurentPoly) -> Self {
        RationalFunction::from_laurent(p)
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let num = self.numerator.clone() * rhs.denominator.clone()
            + rhs.numerator.clone() * self.denominator.clone();
        let den = self.denominator * rhs.denominator;
        Self::reduce(to_dense(&num), to_dense(&den))
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            numerator: -self.numerator,
            denominator: self.denominator,
        }
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: RationalFunction) -> RationalFunction {
        self + (-rhs)
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        let num = self.numerator * rhs.numerator;
        let den = self.denominator * rhs.denominator;
        Self::reduce(to_dense(&num), to_dense(&den))
    }
}

impl Div for RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: RationalFunction) -> RationalFunction {
        self * rhs.inverse().expect("division by zero rational function")
    }
}

impl Ring for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::constant(Scalar::one())
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
}

impl Field for RationalFunction {
    fn inverse(&self) -> Option<Self> {
        RationalFunction::inverse(self)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = self.as_laurent() {
            write!(f, "{p}")
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn rf(n: &str, d: &str) -> RationalFunction {
        RationalFunction::new(lp(n), lp(d)).unwrap()
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(rf("t^2", "t").valuation_at_zero(), Ok(1));
        assert_eq!(rf("t - 2", "1").valuation_at_zero(), Ok(0));
        assert_eq!(rf("1", "t").valuation_at_zero(), Ok(-1));
        assert_eq!(
            RationalFunction::zero().valuation_at_zero(),
            Err(ArithError::ZeroInput)
        );
    }

    #[test]
    fn limit_examples() {
        assert_eq!(rf("t^2 + t", "t").limit_at_zero(), Some(Scalar::one()));
        let product = RationalFunction::from_laurent(&(LaurentPoly::t() * lp("1 - 2*t^-1")));
        assert_eq!(product.limit_at_zero(), Some(Scalar::from_int(-2)));
        assert_eq!(rf("t^-1", "1").limit_at_zero(), None);
        assert_eq!(rf("3*t", "t + 1").limit_at_zero(), Some(Scalar::zero()));
    }

    #[test]
    fn normal_form() {
        // (t^2 - 1) / (2t - 2) = (t + 1) / 2 -> numerator (1/2 t + 1/2), den 1
        let f = rf("t^2 - 1", "2*t - 2");
        assert_eq!(f.denominator(), &lp("1"));
        assert_eq!(f.numerator(), &lp("1/2*t + 1/2"));
        // negative exponents move across
        let g = rf("t^-2", "t^-1 + 1");
        assert_eq!(g, rf("1", "t^2 + t"));
        assert_eq!(g.denominator(), &lp("t^2 + t"));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalFunction::new(lp("1"), LaurentPoly::zero()),
            Err(ArithError::ZeroDenominator)
        );
    }

    #[test]
    fn field_ops() {
        let a = rf("1", "t + 1");
        let b = rf("t", "t + 1");
        assert_eq!(a.clone() + b.clone(), RationalFunction::constant(Scalar::one()));
        assert_eq!((a.clone() / b.clone()) * b.clone(), a);
        assert_eq!(a.clone() - a.clone(), RationalFunction::zero());
        assert_eq!(rf("t", "t^2 - 1").evaluate(&Scalar::one()), None);
        assert_eq!(rf("t", "t^2 - 1").evaluate(&Scalar::from_int(2)), Some(Scalar::new(2, 3)));
    }
}
