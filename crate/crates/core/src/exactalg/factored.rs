use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Div, Mul};

use super::{LPoly, RFunc, Rat};
use crate::error::Result;

/// A product `unit · Π f^e` of primitive Laurent polynomials with integer
/// exponents. Identical factors cancel, which stands in for a gcd when the
/// inputs are built from known factors (as all doubling constants are).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factored {
    unit: LPoly,
    factors: BTreeMap<LPoly, i32>,
}

impl Default for Factored {
    fn default() -> Self {
        Factored::one()
    }
}

impl Factored {
    pub fn one() -> Self {
        Factored {
            unit: LPoly::one(),
            factors: BTreeMap::new(),
        }
    }

    pub fn zero() -> Self {
        Factored {
            unit: LPoly::zero(),
            factors: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    pub fn monomial(m: LPoly) -> Self {
        assert!(m.is_monomial() || m.is_zero(), "unit must be a monomial");
        Factored {
            unit: m,
            factors: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        Factored::monomial(LPoly::constant(c))
    }

    /// `p^e`, split into its content and primitive part.
    pub fn factor(p: &LPoly, e: i32) -> Self {
        let mut out = Factored::one();
        out.push(p, e);
        out
    }

    pub fn push(&mut self, p: &LPoly, e: i32) {
        if e == 0 {
            return;
        }
        if p.is_zero() {
            assert!(e > 0, "zero factor in a denominator");
            *self = Factored::zero();
            return;
        }
        if self.is_zero() {
            return;
        }
        let (_, unit) = p.content();
        let prim = p.primitive();
        self.unit = &self.unit * &unit.pow_i(e).unwrap();
        if prim.is_one() {
            return;
        }
        let slot = self.factors.entry(prim.clone()).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.factors.remove(&prim);
        }
    }

    pub fn unit(&self) -> &LPoly {
        &self.unit
    }

    pub fn factors(&self) -> impl Iterator<Item = (&LPoly, i32)> {
        self.factors.iter().map(|(f, e)| (f, *e))
    }

    pub fn inv(&self) -> Self {
        Factored {
            unit: self.unit.monomial_inverse().expect("inverse of zero"),
            factors: self.factors.iter().map(|(f, e)| (f.clone(), -e)).collect(),
        }
    }

    pub fn pow(&self, n: i32) -> Self {
        if n == 0 {
            return Factored::one();
        }
        let base = if n < 0 { self.inv() } else { self.clone() };
        let k = n.unsigned_abs();
        Factored {
            unit: base.unit.pow(k),
            factors: base
                .factors
                .into_iter()
                .map(|(f, e)| (f, e * k as i32))
                .collect(),
        }
    }

    pub fn numerator(&self) -> LPoly {
        let mut n = self.unit.clone();
        for (f, e) in &self.factors {
            if *e > 0 {
                n = &n * &f.pow(*e as u32);
            }
        }
        n
    }

    pub fn denominator(&self) -> LPoly {
        let mut d = LPoly::one();
        for (f, e) in &self.factors {
            if *e < 0 {
                d = &d * &f.pow((-e) as u32);
            }
        }
        d
    }

    pub fn to_rfunc(&self) -> RFunc {
        RFunc::new(self.numerator(), self.denominator()).expect("factors are nonzero")
    }

    /// Applies a monomial substitution to every factor.
    pub fn substitute_monomials(&self, assign: &HashMap<String, LPoly>) -> Self {
        let mut out = Factored::monomial(self.unit.substitute_monomials(assign));
        for (f, e) in &self.factors {
            out.push(&f.substitute_monomials(assign), *e);
        }
        out
    }

    /// Multiplicity of `p` (after normalisation) as a factor.
    pub fn multiplicity(&self, p: &LPoly) -> i32 {
        self.factors.get(&p.primitive()).copied().unwrap_or(0)
    }
}

impl Mul for &Factored {
    type Output = Factored;
    fn mul(self, rhs: &Factored) -> Factored {
        if self.is_zero() || rhs.is_zero() {
            return Factored::zero();
        }
        let mut out = self.clone();
        out.unit = &out.unit * &rhs.unit;
        for (f, e) in &rhs.factors {
            let slot = out.factors.entry(f.clone()).or_insert(0);
            *slot += e;
            if *slot == 0 {
                out.factors.remove(f);
            }
        }
        out
    }
}

impl Div for &Factored {
    type Output = Factored;
    fn div(self, rhs: &Factored) -> Factored {
        self * &rhs.inv()
    }
}

impl Mul for Factored {
    type Output = Factored;
    fn mul(self, rhs: Factored) -> Factored {
        &self * &rhs
    }
}

impl Div for Factored {
    type Output = Factored;
    fn div(self, rhs: Factored) -> Factored {
        &self / &rhs
    }
}

impl From<LPoly> for Factored {
    fn from(p: LPoly) -> Self {
        Factored::factor(&p, 1)
    }
}

impl TryFrom<&RFunc> for Factored {
    type Error = crate::error::Error;
    fn try_from(f: &RFunc) -> Result<Self> {
        let mut out = Factored::factor(f.num(), 1);
        out.push(f.den(), -1);
        Ok(out)
    }
}

impl fmt::Display for Factored {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rfunc())
    }
}

/// `1 - c q^a X^b` for the many `ζ`-type factors.
pub fn one_minus(c: i64, qe: i32, xe: i32) -> LPoly {
    let m = LPoly::monomial(Rat::from_integer(c.into()), &[("q", qe), ("X", xe)]);
    &LPoly::one() - &m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_factors_cancel() {
        let a = one_minus(1, 1, 2);
        let b = one_minus(1, -1, 2);
        let num = Factored::factor(&a, 1);
        let den = &Factored::factor(&a, 1) * &Factored::factor(&b, 1);
        let r = &num / &den;
        assert_eq!(r.to_rfunc().to_string(), "1/(1 - q^-1 X^2)");
    }

    #[test]
    fn sign_normalisation() {
        // q X^2 - 1 = -(1 - q X^2)
        let a = one_minus(1, 1, 2);
        let b = -&a;
        let r = &Factored::factor(&a, 1) / &Factored::factor(&b, 1);
        assert_eq!(r.to_rfunc(), RFunc::int(-1));
        assert_eq!(r.factors().count(), 0);
    }
}
