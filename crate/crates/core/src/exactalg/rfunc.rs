use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{One, Zero};

use super::{LPoly, Rat};
use crate::error::{Error, Result};

/// Name of the square-root variable used when half-integer powers of `q`
/// are requested. `q` is then `sq^2`.
pub const HALF_Q: &str = "sq";

/// A rational function `num / den` over ℚ in named variables.
///
/// Pairs are not reduced by a multivariate gcd; equality is decided by
/// cross-multiplication. Cheap normalisations are applied on construction:
/// monomial denominators are divided out, the lowest denominator term is
/// made 1, exact quotients collapse to polynomials, and univariate pairs are
/// reduced by their gcd.
#[derive(Clone, Debug)]
pub struct RFunc {
    num: LPoly,
    den: LPoly,
}

impl RFunc {
    pub fn new(num: LPoly, den: LPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RFunc::normalized(num, den))
    }

    fn normalized(num: LPoly, den: LPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RFunc::zero();
        }
        if let Some(inv) = den.monomial_inverse() {
            return RFunc {
                num: &num * &inv,
                den: LPoly::one(),
            };
        }
        let inv = den.lowest_term().unwrap().monomial_inverse().unwrap();
        let mut num = &num * &inv;
        let mut den = &den * &inv;
        let vars_ok = num.vars().len() <= 1
            && den.vars().len() <= 1
            && (num.vars().is_empty() || num.vars() == den.vars());
        if vars_ok {
            if let Some(g) = LPoly::gcd_univariate(&num, &den) {
                if !g.is_one() && g.num_terms() > 1 {
                    num = num.exact_div(&g).expect("gcd divides");
                    den = den.exact_div(&g).expect("gcd divides");
                    let inv = den.lowest_term().unwrap().monomial_inverse().unwrap();
                    num = &num * &inv;
                    den = &den * &inv;
                }
            }
        } else if let Some(q) = num.exact_div(&den) {
            return RFunc {
                num: q,
                den: LPoly::one(),
            };
        }
        if let Some(inv) = den.monomial_inverse() {
            return RFunc {
                num: &num * &inv,
                den: LPoly::one(),
            };
        }
        RFunc { num, den }
    }

    pub fn zero() -> Self {
        RFunc {
            num: LPoly::zero(),
            den: LPoly::one(),
        }
    }

    pub fn one() -> Self {
        RFunc::from_poly(LPoly::one())
    }

    pub fn from_poly(p: LPoly) -> Self {
        RFunc {
            num: p,
            den: LPoly::one(),
        }
    }

    pub fn int(c: i64) -> Self {
        RFunc::from_poly(LPoly::int(c))
    }

    pub fn constant(c: Rat) -> Self {
        RFunc::from_poly(LPoly::constant(c))
    }

    pub fn var(name: &str) -> Self {
        RFunc::from_poly(LPoly::var(name))
    }

    /// `c · q^e`.
    pub fn q_pow(c: i64, e: i32) -> Self {
        RFunc::from_poly(LPoly::q_pow(c, e))
    }

    pub fn num(&self) -> &LPoly {
        &self.num
    }

    pub fn den(&self) -> &LPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    /// Nonzero monomial value `c · m`, if this function is one.
    pub fn as_monomial(&self) -> Option<LPoly> {
        if self.den.is_one() && self.num.is_monomial() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<RFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RFunc::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, n: i32) -> Result<RFunc> {
        if n >= 0 {
            Ok(RFunc::normalized(self.num.pow(n as u32), self.den.pow(n as u32)))
        } else {
            self.inv()?.pow(-n)
        }
    }

    pub fn scale(&self, c: &Rat) -> RFunc {
        RFunc::normalized(self.num.scale(c), self.den.clone())
    }

    pub fn mul_poly(&self, p: &LPoly) -> RFunc {
        RFunc::normalized(&self.num * p, self.den.clone())
    }

    pub fn contains_var(&self, name: &str) -> bool {
        self.num.contains_var(name) || self.den.contains_var(name)
    }

    /// Substitutes each assigned variable by a rational function.
    ///
    /// A zero value at a negative exponent, or a denominator that vanishes
    /// after substitution, yields [`Error::Pole`].
    pub fn substitute(&self, assign: &HashMap<String, RFunc>) -> Result<RFunc> {
        let (nn, nd) = subst_poly(&self.num, assign)?;
        let (dn, dd) = subst_poly(&self.den, assign)?;
        if dn.is_zero() {
            return Err(Error::Pole(format!(
                "denominator {} vanishes under the substitution",
                self.den
            )));
        }
        Ok(RFunc::normalized(&nn * &dd, &nd * &dn))
    }

    /// Substitutes one variable.
    pub fn subst1(&self, name: &str, value: &RFunc) -> Result<RFunc> {
        let mut m = HashMap::new();
        m.insert(name.to_string(), value.clone());
        self.substitute(&m)
    }

    /// Renames `q` to `sq^2`, enabling half-integer powers of `q`.
    pub fn to_half_q(&self) -> RFunc {
        let mut m = HashMap::new();
        m.insert("q".to_string(), LPoly::var(HALF_Q).pow(2));
        RFunc {
            num: self.num.substitute_monomials(&m),
            den: self.den.substitute_monomials(&m),
        }
    }

    /// Inverse of [`RFunc::to_half_q`]; `None` if an odd power of `sq`
    /// survives.
    pub fn from_half_q(&self) -> Option<RFunc> {
        let back = |p: &LPoly| -> Option<LPoly> {
            let mut out = LPoly::zero();
            for (k, c) in p.collect_in(HALF_Q) {
                if k % 2 != 0 {
                    return None;
                }
                out = &out + &(&c * &LPoly::q_pow(1, k / 2));
            }
            Some(out)
        };
        Some(RFunc::normalized(back(&self.num)?, back(&self.den)?))
    }

    /// Plain text with the numerator and denominator in canonical order.
    pub fn canonical_text(&self) -> String {
        self.to_string()
    }
}

/// Substitutes into a polynomial, returning `(num, den)`.
fn subst_poly(p: &LPoly, assign: &HashMap<String, RFunc>) -> Result<(LPoly, LPoly)> {
    let mut num = p.clone();
    let mut den = LPoly::one();
    let mut names: Vec<&String> = assign.keys().filter(|k| p.contains_var(k)).collect();
    names.sort();
    // Monomial values are substituted in one pass; they keep the result a
    // polynomial and are by far the common case.
    let mut mono: HashMap<String, LPoly> = HashMap::new();
    let mut general: Vec<&String> = Vec::new();
    for name in names {
        let v = &assign[name];
        match v.as_monomial() {
            Some(m) => {
                mono.insert(name.clone(), m);
            }
            None => general.push(name),
        }
    }
    // Variables in `mono` may reappear in values of `general` (and vice
    // versa); substitute simultaneously by renaming first.
    let mut rename = HashMap::new();
    for name in &general {
        rename.insert((*name).clone(), format!("__subst_{name}"));
    }
    if !rename.is_empty() {
        num = num.rename(&rename);
    }
    if !mono.is_empty() {
        num = num.substitute_monomials(&mono);
    }
    for name in general {
        let tmp = &rename[name];
        let v = &assign[name];
        if v.is_zero() {
            if let Some((lo, _)) = num.degree_range(tmp) {
                if lo < 0 {
                    return Err(Error::Pole(format!("{name} = 0 at a negative exponent")));
                }
            }
        }
        let parts = num.collect_in(tmp);
        let lo = *parts.keys().next().unwrap_or(&0);
        let hi = *parts.keys().next_back().unwrap_or(&0);
        // Σ c_e (n/d)^e = [Σ c_e n^(e-lo) d^(hi-e)] · n^lo / d^hi
        let mut acc = LPoly::zero();
        for (e, c) in &parts {
            let t = &(&c.clone() * &v.num.pow((e - lo) as u32)) * &v.den.pow((hi - e) as u32);
            acc = &acc + &t;
        }
        num = acc;
        if lo >= 0 {
            num = &num * &v.num.pow(lo as u32);
        } else {
            den = &den * &v.num.pow((-lo) as u32);
        }
        if hi >= 0 {
            den = &den * &v.den.pow(hi as u32);
        } else {
            num = &num * &v.den.pow((-hi) as u32);
        }
    }
    Ok((num, den))
}

impl PartialEq for RFunc {
    fn eq(&self, other: &RFunc) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RFunc {}

/// Cross-multiplication equality.
pub fn rfunc_eq(a: &RFunc, b: &RFunc) -> bool {
    a == b
}

impl Add for &RFunc {
    type Output = RFunc;
    fn add(self, rhs: &RFunc) -> RFunc {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            return RFunc::normalized(&self.num + &rhs.num, self.den.clone());
        }
        if rhs.den.is_one() {
            return RFunc::normalized(&self.num + &(&rhs.num * &self.den), self.den.clone());
        }
        if self.den.is_one() {
            return RFunc::normalized(&(&self.num * &rhs.den) + &rhs.num, rhs.den.clone());
        }
        // one denominator a multiple of the other
        if let Some(k) = rhs.den.exact_div(&self.den) {
            return RFunc::normalized(&(&self.num * &k) + &rhs.num, rhs.den.clone());
        }
        if let Some(k) = self.den.exact_div(&rhs.den) {
            return RFunc::normalized(&self.num + &(&rhs.num * &k), self.den.clone());
        }
        RFunc::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Neg for &RFunc {
    type Output = RFunc;
    fn neg(self) -> RFunc {
        RFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RFunc {
    type Output = RFunc;
    fn sub(self, rhs: &RFunc) -> RFunc {
        self + &(-rhs)
    }
}

impl Mul for &RFunc {
    type Output = RFunc;
    fn mul(self, rhs: &RFunc) -> RFunc {
        if self.is_zero() || rhs.is_zero() {
            return RFunc::zero();
        }
        // cancel a whole denominator against the other numerator when possible
        let (mut n1, mut d1) = (self.num.clone(), self.den.clone());
        let (mut n2, mut d2) = (rhs.num.clone(), rhs.den.clone());
        if !d2.is_one() {
            if let Some(k) = n1.exact_div(&d2) {
                n1 = k;
                d2 = LPoly::one();
            }
        }
        if !d1.is_one() {
            if let Some(k) = n2.exact_div(&d1) {
                n2 = k;
                d1 = LPoly::one();
            }
        }
        RFunc::normalized(&n1 * &n2, &d1 * &d2)
    }
}

impl Div for &RFunc {
    type Output = RFunc;
    /// Panics on division by zero; use [`RFunc::inv`] for a checked inverse.
    fn div(self, rhs: &RFunc) -> RFunc {
        self * &rhs.inv().expect("division by zero rational function")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RFunc {
            type Output = RFunc;
            fn $m(self, rhs: RFunc) -> RFunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RFunc> for RFunc {
            type Output = RFunc;
            fn $m(self, rhs: &RFunc) -> RFunc {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RFunc {
    type Output = RFunc;
    fn neg(self) -> RFunc {
        -&self
    }
}

impl From<LPoly> for RFunc {
    fn from(p: LPoly) -> Self {
        RFunc::from_poly(p)
    }
}

impl From<i64> for RFunc {
    fn from(c: i64) -> Self {
        RFunc::int(c)
    }
}

impl Zero for RFunc {
    fn zero() -> Self {
        RFunc::zero()
    }
    fn is_zero(&self) -> bool {
        RFunc::is_zero(self)
    }
}

impl One for RFunc {
    fn one() -> Self {
        RFunc::one()
    }
}

fn paren(p: &LPoly) -> String {
    if p.num_terms() > 1 {
        format!("({p})")
    } else {
        p.to_string()
    }
}

impl fmt::Display for RFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", paren(&self.num), paren(&self.den))
        }
    }
}
