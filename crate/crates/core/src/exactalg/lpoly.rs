use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, Integer, One, Signed, Zero};

use super::Rat;
use crate::error::{Error, Result};

/// Ordering key for variable names: alphabetic prefix (case-insensitive),
/// then numeric suffix, then the raw name. Gives `q < u1 < u2 < u10 < X`.
fn var_key(name: &str) -> (String, u64, String) {
    let split = name
        .char_indices()
        .find(|(_, c)| c.is_ascii_digit())
        .map(|(i, _)| i)
        .unwrap_or(name.len());
    let (prefix, digits) = name.split_at(split);
    let n = digits.parse::<u64>().unwrap_or(0);
    (prefix.to_ascii_lowercase(), n, name.to_string())
}

pub(crate) fn cmp_vars(a: &str, b: &str) -> Ordering {
    var_key(a).cmp(&var_key(b))
}

/// Compares exponent vectors with the last variable most significant.
/// This is the print order and the order used to pick "lowest" terms.
pub(crate) fn cmp_display(a: &[i32], b: &[i32]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

/// A Laurent polynomial with rational coefficients in named variables.
///
/// The representation is canonical: variables are sorted by [`var_key`] and
/// only variables that occur with a nonzero exponent are kept, so structural
/// equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct LPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i32>, Rat>,
}

/// Arithmetic selector for [`lpoly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
}

/// Strict arithmetic: both operands must carry the same variable list.
/// The operator impls on [`LPoly`] align automatically instead.
pub fn lpoly_arith(a: &LPoly, b: &LPoly, op: ArithOp) -> Result<LPoly> {
    if a.vars != b.vars {
        return Err(Error::Alignment {
            left: a.vars.clone(),
            right: b.vars.clone(),
        });
    }
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Mul => a * b,
    })
}

impl LPoly {
    pub fn zero() -> Self {
        LPoly::default()
    }

    pub fn one() -> Self {
        LPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        LPoly {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn int(c: i64) -> Self {
        LPoly::constant(Rat::from_integer(c.into()))
    }

    pub fn var(name: &str) -> Self {
        LPoly::monomial(Rat::one(), &[(name, 1)])
    }

    /// `coeff · Π name^exp`. Repeated names multiply.
    pub fn monomial(coeff: Rat, powers: &[(&str, i32)]) -> Self {
        let mut acc: BTreeMap<String, i32> = BTreeMap::new();
        for (name, e) in powers {
            *acc.entry(name.to_string()).or_insert(0) += e;
        }
        let vars: Vec<String> = acc.keys().cloned().collect();
        let exps: Vec<i32> = acc.values().copied().collect();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        LPoly::from_parts(vars, terms)
    }

    /// `c · q^e`, the most common scalar in this crate.
    pub fn q_pow(c: i64, e: i32) -> Self {
        LPoly::monomial(Rat::from_integer(c.into()), &[("q", e)])
    }

    /// Builds a canonical polynomial from arbitrary variable order.
    pub fn from_parts(vars: Vec<String>, terms: BTreeMap<Vec<i32>, Rat>) -> Self {
        let mut order: Vec<usize> = (0..vars.len()).collect();
        order.sort_by(|&i, &j| cmp_vars(&vars[i], &vars[j]));
        let mut used = vec![false; vars.len()];
        for (e, c) in &terms {
            if c.is_zero() {
                continue;
            }
            for (i, x) in e.iter().enumerate() {
                if *x != 0 {
                    used[i] = true;
                }
            }
        }
        let keep: Vec<usize> = order.into_iter().filter(|&i| used[i]).collect();
        // merge duplicate names if a caller passed them
        let mut names: Vec<String> = Vec::new();
        let mut slot: Vec<usize> = Vec::new();
        for &i in &keep {
            match names.iter().position(|n| *n == vars[i]) {
                Some(p) => slot.push(p),
                None => {
                    names.push(vars[i].clone());
                    slot.push(names.len() - 1);
                }
            }
        }
        let mut out: BTreeMap<Vec<i32>, Rat> = BTreeMap::new();
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            let mut ne = vec![0; names.len()];
            for (k, &i) in keep.iter().enumerate() {
                ne[slot[k]] += e[i];
            }
            add_term(&mut out, ne, c);
        }
        let mut p = LPoly {
            vars: names,
            terms: out,
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        let n = self.vars.len();
        let mut used = vec![false; n];
        for e in self.terms.keys() {
            for (i, x) in e.iter().enumerate() {
                if *x != 0 {
                    used[i] = true;
                }
            }
        }
        if used.iter().all(|u| *u) {
            return;
        }
        let keep: Vec<usize> = (0..n).filter(|&i| used[i]).collect();
        let vars = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(e, c)| (keep.iter().map(|&i| e[i]).collect(), c))
            .collect();
        self.vars = vars;
        self.terms = terms;
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.vars.is_empty() && self.terms.len() == 1 && self.terms.values().all(|c| c.is_one())
    }

    pub fn contains_var(&self, name: &str) -> bool {
        self.vars.iter().any(|v| v == name)
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.vars.is_empty() {
            Some(self.terms.values().next().cloned().unwrap_or_else(Rat::zero))
        } else {
            None
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Exponent of `name` in a monomial (0 if absent).
    pub fn exponent_of(&self, exps: &[i32], name: &str) -> i32 {
        self.vars
            .iter()
            .position(|v| v == name)
            .map(|i| exps[i])
            .unwrap_or(0)
    }

    /// Minimum and maximum exponent of `name` over all terms.
    pub fn degree_range(&self, name: &str) -> Option<(i32, i32)> {
        let i = match self.vars.iter().position(|v| v == name) {
            Some(i) => i,
            None => return if self.is_zero() { None } else { Some((0, 0)) },
        };
        let lo = self.terms.keys().map(|e| e[i]).min()?;
        let hi = self.terms.keys().map(|e| e[i]).max()?;
        Some((lo, hi))
    }

    fn remap(&self, vars: &[String]) -> BTreeMap<Vec<i32>, Rat> {
        let idx: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("superset"))
            .collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut ne = vec![0; vars.len()];
                for (k, &i) in idx.iter().enumerate() {
                    ne[i] = e[k];
                }
                (ne, c.clone())
            })
            .collect()
    }

    fn union_vars(a: &[String], b: &[String]) -> Vec<String> {
        let mut v: Vec<String> = a.to_vec();
        for x in b {
            if !v.contains(x) {
                v.push(x.clone());
            }
        }
        v.sort_by(|x, y| cmp_vars(x, y));
        v
    }

    fn aligned(a: &LPoly, b: &LPoly) -> (Vec<String>, BTreeMap<Vec<i32>, Rat>, BTreeMap<Vec<i32>, Rat>) {
        if a.vars == b.vars {
            return (a.vars.clone(), a.terms.clone(), b.terms.clone());
        }
        let vars = LPoly::union_vars(&a.vars, &b.vars);
        let ta = a.remap(&vars);
        let tb = b.remap(&vars);
        (vars, ta, tb)
    }

    pub fn scale(&self, c: &Rat) -> LPoly {
        if c.is_zero() {
            return LPoly::zero();
        }
        LPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> LPoly {
        let mut acc = LPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power; negative powers only for monomials.
    pub fn pow_i(&self, n: i32) -> Option<LPoly> {
        if n >= 0 {
            return Some(self.pow(n as u32));
        }
        let inv = self.monomial_inverse()?;
        Some(inv.pow((-n) as u32))
    }

    /// Inverse of a nonzero monomial.
    pub fn monomial_inverse(&self) -> Option<LPoly> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        let mut terms = BTreeMap::new();
        terms.insert(e.iter().map(|x| -x).collect(), c.recip());
        Some(LPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// The lowest term in print order, as a monomial.
    pub fn lowest_term(&self) -> Option<LPoly> {
        let (e, c) = self.terms.iter().min_by(|a, b| cmp_display(a.0, b.0))?;
        let mut terms = BTreeMap::new();
        terms.insert(e.clone(), c.clone());
        let mut p = LPoly {
            vars: self.vars.clone(),
            terms,
        };
        p.trim();
        Some(p)
    }

    /// Exact division in the Laurent ring. Returns `None` if `d` does not
    /// divide `self`.
    pub fn exact_div(&self, d: &LPoly) -> Option<LPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LPoly::zero());
        }
        if let Some(inv) = d.monomial_inverse() {
            return Some(self * &inv);
        }
        let (vars, mut rem, dt) = LPoly::aligned(self, d);
        let n = vars.len();
        // Per-variable window the quotient exponents must lie in.
        let bounds = |t: &BTreeMap<Vec<i32>, Rat>, i: usize| -> (i32, i32) {
            let lo = t.keys().map(|e| e[i]).min().unwrap();
            let hi = t.keys().map(|e| e[i]).max().unwrap();
            (lo, hi)
        };
        let mut window = Vec::with_capacity(n);
        for i in 0..n {
            let (rlo, rhi) = bounds(&rem, i);
            let (dlo, dhi) = bounds(&dt, i);
            window.push((rlo - dlo, rhi - dhi));
        }
        let (dle, dlc) = dt.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut quot: BTreeMap<Vec<i32>, Rat> = BTreeMap::new();
        while let Some((re, rc)) = rem.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let qe: Vec<i32> = re.iter().zip(&dle).map(|(a, b)| a - b).collect();
            if qe.iter().zip(&window).any(|(x, (lo, hi))| x < lo || x > hi) {
                return None;
            }
            let qc = &rc / &dlc;
            for (e, c) in &dt {
                let ne: Vec<i32> = e.iter().zip(&qe).map(|(a, b)| a + b).collect();
                add_term(&mut rem, ne, -(c * &qc));
            }
            add_term(&mut quot, qe, qc);
        }
        let mut q = LPoly { vars, terms: quot };
        q.trim();
        Some(q)
    }

    /// Groups terms by the exponent of `name`: `self = Σ_e coeff_e · name^e`.
    pub fn collect_in(&self, name: &str) -> BTreeMap<i32, LPoly> {
        let mut out: BTreeMap<i32, BTreeMap<Vec<i32>, Rat>> = BTreeMap::new();
        let idx = self.vars.iter().position(|v| v == name);
        for (e, c) in &self.terms {
            let (k, rest) = match idx {
                Some(i) => {
                    let mut r = e.clone();
                    r[i] = 0;
                    (e[i], r)
                }
                None => (0, e.clone()),
            };
            out.entry(k).or_default().insert(rest, c.clone());
        }
        out.into_iter()
            .map(|(k, t)| (k, LPoly::from_parts(self.vars.clone(), t)))
            .collect()
    }

    /// Renames variables; names mapped onto each other merge.
    pub fn rename(&self, map: &HashMap<String, String>) -> LPoly {
        let vars = self
            .vars
            .iter()
            .map(|v| map.get(v).cloned().unwrap_or_else(|| v.clone()))
            .collect();
        LPoly::from_parts(vars, self.terms.clone())
    }

    /// Substitutes each listed variable by a monomial (given as an
    /// [`LPoly`] with a single term). Panics if a value is not a monomial.
    pub fn substitute_monomials(&self, assign: &HashMap<String, LPoly>) -> LPoly {
        let mut out = LPoly::zero();
        let vals: Vec<Option<&LPoly>> = self.vars.iter().map(|v| assign.get(v)).collect();
        let mut keep_vars = Vec::new();
        let mut keep_idx = Vec::new();
        for (i, v) in self.vars.iter().enumerate() {
            if vals[i].is_none() {
                keep_vars.push(v.clone());
                keep_idx.push(i);
            }
        }
        let mut cache: HashMap<(usize, i32), LPoly> = HashMap::new();
        let mut acc: BTreeMap<Vec<i32>, Rat> = BTreeMap::new();
        let mut acc_vars: Vec<String> = Vec::new();
        for (e, c) in &self.terms {
            let mut term = LPoly::from_parts(
                keep_vars.clone(),
                std::iter::once((keep_idx.iter().map(|&i| e[i]).collect::<Vec<_>>(), c.clone())).collect(),
            );
            for (i, val) in vals.iter().enumerate() {
                if let Some(v) = val {
                    if e[i] != 0 {
                        let pw = cache
                            .entry((i, e[i]))
                            .or_insert_with(|| v.pow_i(e[i]).expect("monomial substitution value"));
                        term = &term * &*pw;
                    }
                }
            }
            if acc_vars != term.vars {
                // fold what we have so far; keeps the inner loop allocation-light
                let cur = LPoly::from_parts(acc_vars.clone(), std::mem::take(&mut acc));
                out = &out + &cur;
                acc_vars = term.vars.clone();
            }
            for (te, tc) in term.terms {
                add_term(&mut acc, te, tc);
            }
        }
        let cur = LPoly::from_parts(acc_vars, acc);
        &out + &cur
    }

    /// Rational content and monomial content: `self = c · m · primitive`.
    /// The returned primitive part has integer coefficients with gcd 1,
    /// positive lowest term, and nonnegative minimal exponents equal to 0.
    pub fn content(&self) -> (Rat, LPoly) {
        if self.is_zero() {
            return (Rat::zero(), LPoly::zero());
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut c = Rat::new(num_gcd, den_lcm);
        let lowest = self.terms.iter().min_by(|a, b| cmp_display(a.0, b.0)).unwrap();
        if lowest.1.is_negative() {
            c = -c;
        }
        let n = self.vars.len();
        let mins: Vec<i32> = (0..n)
            .map(|i| self.terms.keys().map(|e| e[i]).min().unwrap())
            .collect();
        let mut terms = BTreeMap::new();
        terms.insert(mins, c.clone());
        let unit = LPoly {
            vars: self.vars.clone(),
            terms,
        };
        (c, unit)
    }

    /// Divides out rational and monomial content.
    pub fn primitive(&self) -> LPoly {
        if self.is_zero() {
            return LPoly::zero();
        }
        let (_, unit) = self.content();
        self * &unit.monomial_inverse().unwrap()
    }

    /// Greatest common divisor, available when both inputs involve at most
    /// one variable (the same one). Normalised to a primitive polynomial.
    pub fn gcd_univariate(a: &LPoly, b: &LPoly) -> Option<LPoly> {
        if a.vars.len() > 1 || b.vars.len() > 1 {
            return None;
        }
        if !a.vars.is_empty() && !b.vars.is_empty() && a.vars != b.vars {
            return None;
        }
        if a.is_zero() {
            return Some(b.primitive());
        }
        if b.is_zero() {
            return Some(a.primitive());
        }
        let name = a.vars.first().or(b.vars.first()).cloned();
        let name = match name {
            Some(n) => n,
            None => return Some(LPoly::one()),
        };
        let to_dense = |p: &LPoly| -> Vec<Rat> {
            let pp = p.primitive();
            let (_, hi) = pp.degree_range(&name).unwrap();
            let mut v = vec![Rat::zero(); hi as usize + 1];
            for (e, c) in &pp.terms {
                let k = e.first().copied().unwrap_or(0);
                v[k as usize] = c.clone();
            }
            v
        };
        let mut x = to_dense(a);
        let mut y = to_dense(b);
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        while !(y.len() == 1 && y[0].is_zero()) && !y.is_empty() {
            let r = dense_rem(&x, &y);
            x = y;
            y = r;
        }
        let mut terms = BTreeMap::new();
        for (k, c) in x.into_iter().enumerate() {
            if !c.is_zero() {
                terms.insert(vec![k as i32], c);
            }
        }
        Some(LPoly::from_parts(vec![name], terms).primitive())
    }

    pub(crate) fn terms_in_display_order(&self) -> Vec<(&Vec<i32>, &Rat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| cmp_display(a.0, b.0));
        v
    }
}

fn dense_rem(x: &[Rat], y: &[Rat]) -> Vec<Rat> {
    let mut r: Vec<Rat> = x.to_vec();
    let dy = y.len() - 1;
    let lc = y[dy].clone();
    while r.len() > dy {
        let k = r.len() - 1;
        if !r[k].is_zero() {
            let f = &r[k] / &lc;
            for j in 0..=dy {
                let t = &f * &y[j];
                r[k - dy + j] -= t;
            }
        }
        r.pop();
    }
    while r.len() > 1 && r.last().map(|c| c.is_zero()).unwrap_or(false) {
        r.pop();
    }
    if r.is_empty() {
        r.push(Rat::zero());
    }
    r
}

pub(crate) fn add_term(map: &mut BTreeMap<Vec<i32>, Rat>, e: Vec<i32>, c: Rat) {
    if c.is_zero() {
        return;
    }
    match map.entry(e) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl Add for &LPoly {
    type Output = LPoly;
    fn add(self, rhs: &LPoly) -> LPoly {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let (vars, mut ta, tb) = LPoly::aligned(self, rhs);
        for (e, c) in tb {
            add_term(&mut ta, e, c);
        }
        let mut p = LPoly { vars, terms: ta };
        p.trim();
        p
    }
}

impl Sub for &LPoly {
    type Output = LPoly;
    fn sub(self, rhs: &LPoly) -> LPoly {
        self + &(-rhs)
    }
}

impl Neg for &LPoly {
    type Output = LPoly;
    fn neg(self) -> LPoly {
        LPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &LPoly {
    type Output = LPoly;
    fn mul(self, rhs: &LPoly) -> LPoly {
        if self.is_zero() || rhs.is_zero() {
            return LPoly::zero();
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        let (vars, ta, tb) = LPoly::aligned(self, rhs);
        let mut acc: HashMap<Vec<i32>, Rat> = HashMap::with_capacity(ta.len() * tb.len());
        for (ea, ca) in &ta {
            for (eb, cb) in &tb {
                let e: Vec<i32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let c = ca * cb;
                match acc.entry(e) {
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    std::collections::hash_map::Entry::Occupied(mut o) => {
                        *o.get_mut() += c;
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let mut p = LPoly { vars, terms };
        p.trim();
        p
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LPoly {
            type Output = LPoly;
            fn $m(self, rhs: LPoly) -> LPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LPoly> for LPoly {
            type Output = LPoly;
            fn $m(self, rhs: &LPoly) -> LPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LPoly {
    type Output = LPoly;
    fn neg(self) -> LPoly {
        -&self
    }
}

pub(crate) fn fmt_rat(c: &Rat) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn fmt_monomial(vars: &[String], e: &[i32]) -> String {
    let mut parts = Vec::new();
    for (v, x) in vars.iter().zip(e) {
        match *x {
            0 => {}
            1 => parts.push(v.clone()),
            k => parts.push(format!("{v}^{k}")),
        }
    }
    parts.join(" ")
}

impl fmt::Display for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms_in_display_order().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            let mono = fmt_monomial(&self.vars, e);
            let body = if mono.is_empty() {
                fmt_rat(&a)
            } else if a.is_one() {
                mono
            } else {
                format!("{} {}", fmt_rat(&a), mono)
            };
            match (i, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> LPoly {
        LPoly::var("q")
    }
    fn x() -> LPoly {
        LPoly::var("X")
    }

    #[test]
    fn difference_of_squares() {
        let a = &q() + &LPoly::one();
        let b = &q() - &LPoly::one();
        assert_eq!(&a * &b, &q().pow(2) - &LPoly::one());
    }

    #[test]
    fn laurent_cancellation() {
        let x2 = x().pow(2);
        let xm2 = x2.monomial_inverse().unwrap();
        assert!((&x2 * &xm2).is_one());
    }

    #[test]
    fn b_factor_product() {
        // (1 − qX²)(1 + qX²) = 1 − q²X⁴
        let qx2 = &q() * &x().pow(2);
        let lhs = &(&LPoly::one() - &qx2) * &(&LPoly::one() + &qx2);
        let rhs = &LPoly::one() - &(&q().pow(2) * &x().pow(4));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn strict_arith_rejects_mismatched_vars() {
        let err = lpoly_arith(&q(), &x(), ArithOp::Add).unwrap_err();
        assert!(matches!(err, Error::Alignment { .. }));
        let ok = lpoly_arith(&q(), &(&q() + &LPoly::one()), ArithOp::Mul).unwrap();
        assert_eq!(ok, &q().pow(2) + &q());
    }

    #[test]
    fn canonical_text() {
        let p = &LPoly::one() - &LPoly::monomial(Rat::one(), &[("q", -1), ("X", 2)]);
        assert_eq!(p.to_string(), "1 - q^-1 X^2");
        let m = LPoly::monomial(Rat::new(3.into(), 2.into()), &[("u1", 1), ("q", 2)]);
        assert_eq!(m.to_string(), "3/2 q^2 u1");
        assert_eq!(LPoly::zero().to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let a = &LPoly::one() - &(&q() * &x().pow(2));
        let b = &LPoly::one() + &(&q() * &x());
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&a), Some(b.clone()));
        assert_eq!(prod.exact_div(&b), Some(a.clone()));
        assert_eq!(a.exact_div(&b), None);
        let shifted = &prod * &LPoly::monomial(Rat::one(), &[("X", -3), ("q", 5)]);
        assert!(shifted.exact_div(&a).is_some());
    }

    #[test]
    fn univariate_gcd() {
        let a = &(&q() - &LPoly::one()) * &(&q() + &LPoly::int(2));
        let b = &(&q() - &LPoly::one()) * &(&q() + &LPoly::int(3));
        let g = LPoly::gcd_univariate(&a, &b).unwrap();
        assert_eq!(g, &LPoly::one() - &q());
    }

    #[test]
    fn substitute_monomials_inverts() {
        let p = &LPoly::one() - &(&q() * &x().pow(2));
        let mut m = HashMap::new();
        m.insert("X".to_string(), x().monomial_inverse().unwrap());
        let s = p.substitute_monomials(&m);
        assert_eq!(s.to_string(), "-q X^-2 + 1");
    }
}
