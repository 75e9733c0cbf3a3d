use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{ArithError, Scalar};

/// Sparse polynomial over the rationals in a fixed, ordered list of
/// variables. Terms are keyed by exponent vectors; zero coefficients are
/// never stored, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    variables: Vec<String>,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl MultiPoly {
    pub fn zero(variables: &[String]) -> Self {
        MultiPoly {
            variables: variables.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(variables: &[String], c: Scalar) -> Self {
        let mut p = MultiPoly::zero(variables);
        p.add_term(vec![0; variables.len()], c);
        p
    }

    pub fn variable(variables: &[String], index: usize) -> Self {
        let mut exps = vec![0; variables.len()];
        exps[index] = 1;
        let mut p = MultiPoly::zero(variables);
        p.add_term(exps, Scalar::one());
        p
    }

    pub fn from_terms<I>(variables: &[String], terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Scalar)>,
    {
        let mut p = MultiPoly::zero(variables);
        for (e, c) in terms {
            assert_eq!(e.len(), variables.len(), "exponent arity");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(slot) => {
                *slot = &*slot + &c;
                if slot.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Scalar)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut p = MultiPoly::zero(&self.variables);
        for (e, v) in &self.terms {
            p.add_term(e.clone(), v * c);
        }
        p
    }

    /// Substitutes `v_i -> factors[i] * v_i` for every variable.
    pub fn scale_variables(&self, factors: &[Scalar]) -> Self {
        assert_eq!(factors.len(), self.variables.len());
        let mut p = MultiPoly::zero(&self.variables);
        for (e, v) in &self.terms {
            let mut c = v.clone();
            for (f, k) in factors.iter().zip(e) {
                c = c * f.pow(*k as i32);
            }
            p.add_term(e.clone(), c);
        }
        p
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.variables.len());
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (k, x)| acc * x.pow(*k as i32))
            })
            .sum()
    }

    fn check_compatible(&self, other: &MultiPoly) {
        assert_eq!(
            self.variables, other.variables,
            "polynomials over different variable lists"
        );
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self.check_compatible(&rhs);
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            variables: self.variables,
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        self + (-rhs)
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.check_compatible(rhs);
        let mut out = MultiPoly::zero(&self.variables);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (name, k) in self.variables.iter().zip(e) {
                match k {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    k => write!(f, "*{name}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Returns `Some(c)` when `p = c * q` identically, `None` when the two are
/// not proportional.
pub fn constant_ratio(p: &MultiPoly, q: &MultiPoly) -> Result<Option<Scalar>, ArithError> {
    let (lead, qc) = q.terms.iter().next().ok_or(ArithError::ZeroDenominator)?;
    let c = p.coeff(lead) / qc;
    if q.scale(&c) == *p {
        Ok(Some(c))
    } else {
        Ok(None)
    }
}
