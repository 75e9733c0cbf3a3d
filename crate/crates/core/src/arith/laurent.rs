use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ArithError, Ring, Scalar};

/// Laurent polynomial in a single variable `t`: finitely many nonzero
/// coefficients indexed by (possibly negative) exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, Scalar>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    pub fn monomial(c: Scalar, exp: i32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        LaurentPoly { coeffs }
    }

    /// The variable `t` itself.
    pub fn t() -> Self {
        LaurentPoly::monomial(Scalar::one(), 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, Scalar)>>(terms: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: i32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert_with(Scalar::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> Scalar {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &Scalar)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Result<i32, ArithError> {
        self.min_exponent().ok_or(ArithError::ZeroInput)
    }

    pub fn is_polynomial(&self) -> bool {
        self.min_exponent().is_none_or(|e| e >= 0)
    }

    pub fn shift(&self, by: i32) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + by, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Evaluates at a nonzero point `t0` (or any point when no negative
    /// exponents are present).
    pub fn evaluate(&self, t0: &Scalar) -> Option<Scalar> {
        if t0.is_zero() && !self.is_polynomial() {
            return None;
        }
        let mut acc = Scalar::zero();
        for (e, c) in &self.coeffs {
            acc = acc + c * &t0.pow(*e);
        }
        Some(acc)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        for (e, c) in rhs.coeffs {
            self.add_term(e, c);
        }
        self
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self + (-rhs)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::constant(Scalar::one())
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
}

impl From<Scalar> for LaurentPoly {
    fn from(c: Scalar) -> Self {
        LaurentPoly::constant(c)
    }
}

impl fmt::Display for LaurentPoly {
    /// Highest exponent first, e.g. `t^2 - 1/2*t + 3 - 2*t^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let magnitude = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (*e, magnitude.is_one()) {
                (0, _) => write!(f, "{magnitude}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{magnitude}*t")?,
                (e, true) => write!(f, "t^{e}")?,
                (e, false) => write!(f, "{magnitude}*t^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn unsigned_int(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn signed_int(&mut self) -> Option<i32> {
        let neg = self.eat(b'-');
        if !neg {
            self.eat(b'+');
        }
        let digits = self.unsigned_int()?;
        let v: i32 = digits.parse().ok()?;
        Some(if neg { -v } else { v })
    }
}

impl FromStr for LaurentPoly {
    type Err = ArithError;

    /// Grammar: `term (('+'|'-') term)*` with
    /// `term := coeff | coeff '*' 't' ['^' int] | 't' ['^' int]`; a leading
    /// sign is accepted.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |msg: &str| ArithError::Parse(format!("{msg} in Laurent polynomial {s:?}"));
        let mut lx = Lexer { src: s.as_bytes(), pos: 0 };
        let mut out = LaurentPoly::zero();
        let mut negative = if lx.eat(b'-') {
            true
        } else {
            lx.eat(b'+');
            false
        };
        loop {
            let mut coeff = Scalar::one();
            let mut has_coeff = false;
            if let Some(num) = lx.unsigned_int() {
                let mut text = num.to_string();
                if lx.eat(b'/') {
                    let den = lx.unsigned_int().ok_or_else(|| err("missing denominator"))?;
                    text = format!("{text}/{den}");
                }
                coeff = text.parse()?;
                has_coeff = true;
            }
            let mut exp = 0;
            let has_var = if has_coeff {
                if lx.eat(b'*') {
                    if !lx.eat(b't') {
                        return Err(err("expected 't' after '*'"));
                    }
                    true
                } else {
                    false
                }
            } else if lx.eat(b't') {
                true
            } else {
                return Err(err("expected a term"));
            };
            if has_var {
                exp = 1;
                if lx.eat(b'^') {
                    exp = lx.signed_int().ok_or_else(|| err("bad exponent"))?;
                }
            }
            if negative {
                coeff = -coeff;
            }
            out.add_term(exp, coeff);
            match lx.peek() {
                None => break,
                Some(b'+') => {
                    lx.pos += 1;
                    negative = false;
                }
                Some(b'-') => {
                    lx.pos += 1;
                    negative = true;
                }
                Some(_) => return Err(err("unexpected character")),
            }
        }
        Ok(out)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
