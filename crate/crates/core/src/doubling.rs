//! Doubling-method factors in the variable `X = q^{-s}`.
//!
//! Every constant is assembled as a [`Factored`] product so that identical
//! factors cancel before expansion; the public API returns [`RFunc`].

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{one_minus, Factored, LPoly, RFunc, Rat};
use crate::satake::HermitianSpaceDesc;
use crate::Sign;

/// Name of the variable `X = q^{-s}`.
pub const X: &str = "X";

/// An L- or ε-factor value in `(q, X, u_i)`.
pub type LFactorValue = RFunc;

/// Rank, sign and conductor exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoublingContext {
    pub r: usize,
    pub sign: Sign,
    pub c: i64,
}

impl DoublingContext {
    pub fn new(r: usize, sign: Sign) -> Result<Self> {
        DoublingContext::with_conductor(r, sign, 0)
    }

    pub fn with_conductor(r: usize, sign: Sign, c: i64) -> Result<Self> {
        if r == 0 {
            return Err(Error::Range("rank must be at least 1".into()));
        }
        Ok(DoublingContext { r, sign, c })
    }
}

/// Satake parameters `u_i = q^{2σ_i}` (or symbolic), up to order and
/// inversion of the entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatakeParams {
    pub u: Vec<RFunc>,
}

/// One entry of a parameter list as typed by a user.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SigmaEntry {
    /// `σ ∈ ½ℤ`, stored as `2σ`.
    Half(i32),
    Symbolic,
}

impl FromStr for SigmaEntry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "sym" {
            return Ok(SigmaEntry::Symbolic);
        }
        let bad = || Error::Parse(format!("σ entry `{t}` is not a half-integer or `sym`"));
        let v: Rat = match t.split_once('/') {
            Some((a, b)) => {
                let a: i64 = a.trim().parse().map_err(|_| bad())?;
                let b: i64 = b.trim().parse().map_err(|_| bad())?;
                if b == 0 {
                    return Err(bad());
                }
                Rat::new(a.into(), b.into())
            }
            None => Rat::from_integer(t.parse::<i64>().map_err(|_| bad())?.into()),
        };
        let two = &v * Rat::from_integer(2.into());
        if !two.is_integer() {
            return Err(bad());
        }
        let k: i32 = two.to_integer().try_into().map_err(|_| bad())?;
        Ok(SigmaEntry::Half(k))
    }
}

impl SatakeParams {
    pub fn new(u: Vec<RFunc>) -> Result<Self> {
        if let Some(i) = u.iter().position(|x| x.is_zero()) {
            return Err(Error::Degenerate(format!("u{} = 0", i + 1)));
        }
        Ok(SatakeParams { u })
    }

    pub fn rank(&self) -> usize {
        self.u.len()
    }

    /// `u_i = q^{k_i}` with `k_i = 2σ_i`.
    pub fn from_twice_sigma(ks: &[i32]) -> Self {
        SatakeParams {
            u: ks.iter().map(|&k| RFunc::q_pow(1, k)).collect(),
        }
    }

    /// Fresh symbols `u1, …, um`.
    pub fn symbolic(m: usize) -> Self {
        SatakeParams {
            u: (1..=m).map(|i| RFunc::var(&format!("u{i}"))).collect(),
        }
    }

    /// Mixed list; symbolic entries are named by their position.
    pub fn from_entries(entries: &[SigmaEntry]) -> Self {
        SatakeParams {
            u: entries
                .iter()
                .enumerate()
                .map(|(i, e)| match e {
                    SigmaEntry::Half(k) => RFunc::q_pow(1, *k),
                    SigmaEntry::Symbolic => RFunc::var(&format!("u{}", i + 1)),
                })
                .collect(),
        }
    }

    pub fn parse_list(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(SatakeParams { u: Vec::new() });
        }
        let entries = s
            .split(',')
            .map(SigmaEntry::from_str)
            .collect::<Result<Vec<_>>>()?;
        Ok(SatakeParams::from_entries(&entries))
    }

    /// Whether some entry is `q` or `q^{-1}`, i.e. `σ_i = ±½`.
    pub fn contains_half(&self) -> bool {
        let q = RFunc::q_pow(1, 1);
        let qi = RFunc::q_pow(1, -1);
        self.u.iter().any(|x| *x == q || *x == qi)
    }

    /// Multiset of `{u, u^{-1}}` pairs in a canonical order, for
    /// comparisons up to permutation and inversion.
    pub fn canonical_pairs(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .u
            .iter()
            .map(|x| {
                let a = x.to_string();
                let b = x.inv().expect("nonzero").to_string();
                if a <= b {
                    format!("{a}|{b}")
                } else {
                    format!("{b}|{a}")
                }
            })
            .collect();
        v.sort();
        v
    }

    pub fn equivalent(&self, other: &SatakeParams) -> bool {
        self.canonical_pairs() == other.canonical_pairs()
    }

    pub fn texts(&self) -> Vec<String> {
        self.u.iter().map(|x| x.to_string()).collect()
    }
}

impl fmt::Display for SatakeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.texts().join(", "))
    }
}

fn qx(c: i64, qe: i32, xe: i32) -> LPoly {
    LPoly::monomial(Rat::from_integer(c.into()), &[("q", qe), (X, xe)])
}

/// `ζ_F(2s + k) = 1/(1 − q^{-k} X²)`.
pub fn zeta_f(k: i32) -> Factored {
    Factored::factor(&one_minus(1, -k, 2), -1)
}

/// `ζ_E(2s + k) = 1/(1 − q^{-2k} X⁴)`.
pub fn zeta_e(k: i32) -> Factored {
    Factored::factor(&one_minus(1, -2 * k, 4), -1)
}

/// `a_{2r} = Π_{i=1}^{2r} 1/(1 − (−1)^i q^{i−1} X²)`.
pub fn a_factor(r: usize) -> Factored {
    let mut out = Factored::one();
    for i in 1..=2 * r as i32 {
        let s = if i % 2 == 0 { 1 } else { -1 };
        out.push(&one_minus(s, i - 1, 2), -1);
    }
    out
}

/// `b_{2r} = Π_{i=1}^{2r} 1/(1 − (−1)^i q^{−i} X²)`.
pub fn b_factor(r: usize) -> Factored {
    let mut out = Factored::one();
    for i in 1..=2 * r as i32 {
        let s = if i % 2 == 0 { 1 } else { -1 };
        out.push(&one_minus(s, -i, 2), -1);
    }
    out
}

/// `c^r_+ = 1`, `c^r_- = (1+q) / ((−q)^r q (1 + q^{2r−1}) (1 − q^{−2r} X²))`.
pub fn c_factor(r: usize, sign: Sign) -> Factored {
    match sign {
        Sign::Plus => Factored::one(),
        Sign::Minus => {
            let r = r as i32;
            let s = if r % 2 == 0 { 1 } else { -1 };
            let mut out = Factored::monomial(LPoly::q_pow(s, -(r + 1)));
            out.push(&(&LPoly::one() + &LPoly::q_pow(1, 1)), 1);
            out.push(&(&LPoly::one() + &LPoly::q_pow(1, 2 * r - 1)), -1);
            out.push(&one_minus(1, -2 * r, 2), -1);
            out
        }
    }
}

/// `1 − u X²` for a (possibly non-polynomial) parameter `u = n/d`, as
/// `(d − n X²)/d`.
fn one_minus_u(u: &RFunc) -> Factored {
    let x2 = qx(1, 0, 2);
    let mut out = Factored::factor(&(u.den() - &(u.num() * &x2)), 1);
    out.push(u.den(), -1);
    out
}

/// `L^σ_+ = Π_i 1/((1 − u_i X²)(1 − u_i^{-1} X²))`,
/// `L^σ_- = (1 − q X²) L^σ_+`.
pub fn l_factored(sign: Sign, sigma: &SatakeParams) -> Result<Factored> {
    let mut out = Factored::one();
    for u in &sigma.u {
        let ui = u.inv()?;
        out = &out / &one_minus_u(u);
        out = &out / &one_minus_u(&ui);
    }
    if sign == Sign::Minus {
        out.push(&one_minus(1, 1, 2), 1);
    }
    Ok(out)
}

/// Which of the three basic factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Abc {
    A,
    B,
    C,
}

impl FromStr for Abc {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(Abc::A),
            "b" => Ok(Abc::B),
            "c" => Ok(Abc::C),
            o => Err(Error::Parse(format!("expected a, b or c, got `{o}`"))),
        }
    }
}

pub fn abc(ctx: &DoublingContext, which: Abc) -> LFactorValue {
    match which {
        Abc::A => a_factor(ctx.r),
        Abc::B => b_factor(ctx.r),
        Abc::C => c_factor(ctx.r, ctx.sign),
    }
    .to_rfunc()
}

fn check_rank(ctx: &DoublingContext, sigma: &SatakeParams) -> Result<()> {
    if sigma.rank() != ctx.r {
        return Err(Error::RankMismatch {
            expected: ctx.r,
            found: sigma.rank(),
        });
    }
    Ok(())
}

pub fn l_factor(ctx: &DoublingContext, sigma: &SatakeParams) -> Result<LFactorValue> {
    check_rank(ctx, sigma)?;
    Ok(l_factored(ctx.sign, sigma)?.to_rfunc())
}

/// `X² ↦ q^{-1} X²` on a polynomial with only even powers of `X`.
fn shift_half_poly(p: &LPoly) -> Option<LPoly> {
    let mut out = LPoly::zero();
    for (k, c) in p.collect_in(X) {
        if k % 2 != 0 {
            return None;
        }
        out = &out + &(&c * &qx(1, -k / 2, k));
    }
    Some(out)
}

/// `s ↦ s + ½` on a factored value.
pub fn shift_half(f: &Factored) -> Result<Factored> {
    let mut out = Factored::monomial(
        shift_half_poly(f.unit()).ok_or_else(|| Error::Unsupported("odd power of X".into()))?,
    );
    for (p, e) in f.factors() {
        let s = shift_half_poly(p).ok_or_else(|| Error::Unsupported("odd power of X".into()))?;
        out.push(&s, e);
    }
    Ok(out)
}

/// `s ↦ s + ½` on any rational function. Odd powers of `X` are handled by
/// passing to `q = sq²`; the result returns to `q` when possible.
pub fn shift_half_rfunc(f: &RFunc) -> RFunc {
    match (shift_half_poly(f.num()), shift_half_poly(f.den())) {
        (Some(n), Some(d)) => RFunc::new(n, d).expect("nonzero denominator"),
        _ => {
            let h = f.to_half_q();
            let sq = RFunc::var(crate::exactalg::HALF_Q);
            let xv = &RFunc::var(X) / &sq;
            let shifted = h.subst1(X, &xv).expect("monomial substitution");
            shifted.from_half_q().unwrap_or(shifted)
        }
    }
}

/// `s ↦ −s`, i.e. `X ↦ X^{-1}`.
pub fn negate_s(f: &Factored) -> Factored {
    let mut m = HashMap::new();
    m.insert(X.to_string(), qx(1, 0, -1));
    f.substitute_monomials(&m)
}

/// `c · L^σ(s+½) / b` in factored form.
pub fn zeta_factored(ctx: &DoublingContext, sigma: &SatakeParams) -> Result<Factored> {
    check_rank(ctx, sigma)?;
    let l = shift_half(&l_factored(ctx.sign, sigma)?)?;
    Ok(&(&c_factor(ctx.r, ctx.sign) * &l) / &b_factor(ctx.r))
}

pub fn zeta_value(ctx: &DoublingContext, sigma: &SatakeParams) -> Result<LFactorValue> {
    Ok(zeta_factored(ctx, sigma)?.to_rfunc())
}

/// `C = (1 + q)/(q (1 + q^{2r−1}))`.
pub fn volume_constant(r: usize) -> Factored {
    let mut out = Factored::monomial(LPoly::q_pow(1, -1));
    out.push(&(&LPoly::one() + &LPoly::q_pow(1, 1)), 1);
    out.push(&(&LPoly::one() + &LPoly::q_pow(1, 2 * r as i32 - 1)), -1);
    out
}

/// Second route to the `ε = −` zeta value:
/// `C · (C⁻/C⁺) · Z(ξ^σ_+)` with the raw Gindikin–Karpelevich products.
pub fn zeta_minus_via_gk(r: usize, sigma: &SatakeParams) -> Result<Factored> {
    let plus = DoublingContext::new(r, Sign::Plus)?;
    let minus = DoublingContext::new(r, Sign::Minus)?;
    let ratio = &gk_factored(&minus, GkForm::Product) / &gk_factored(&plus, GkForm::Product);
    Ok(&(&volume_constant(r) * &ratio) * &zeta_factored(&plus, sigma)?)
}

/// Form of a Gindikin–Karpelevich constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GkForm {
    Product,
    Closed,
}

impl FromStr for GkForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "product" => Ok(GkForm::Product),
            "closed" => Ok(GkForm::Closed),
            o => Err(Error::Parse(format!("expected product or closed, got `{o}`"))),
        }
    }
}

/// `Π_{1≤i<j≤n} (1 − q^{−2(2h−i−j+2)} X⁴)/(1 − q^{−2(2h−i−j+1)} X⁴)
///  · Π_{i=1}^{n} (q^{−2h+2i} X² − 1)/(q (1 − q^{−2h+2i−1} X²))`
/// with `n` the range and `h` the half-size in the exponents.
fn raw_intertwining_product(n: i32, h: i32) -> Factored {
    let mut out = Factored::one();
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(&one_minus(1, -2 * (2 * h - i - j + 2), 4), 1);
            out.push(&one_minus(1, -2 * (2 * h - i - j + 1), 4), -1);
        }
    }
    for i in 1..=n {
        out.push(&(&qx(1, -2 * h + 2 * i, 2) - &LPoly::one()), 1);
        out.push(&LPoly::q_pow(1, 1), -1);
        out.push(&one_minus(1, -2 * h + 2 * i - 1, 2), -1);
    }
    out
}

pub fn gk_factored(ctx: &DoublingContext, form: GkForm) -> Factored {
    let r = ctx.r as i32;
    let mut out = Factored::one();
    match (ctx.sign, form) {
        (Sign::Plus, _) => {
            for i in 1..=r {
                out = &out * &(&zeta_e(2 * i) / &zeta_e(r + i));
                out = &out * &(&zeta_f(2 * i - 1) / &zeta_f(2 * i));
            }
        }
        (Sign::Minus, GkForm::Product) => {
            out = raw_intertwining_product(r, r);
        }
        (Sign::Minus, GkForm::Closed) => {
            let s = if r % 2 == 0 { 1 } else { -1 };
            out = Factored::monomial(LPoly::q_pow(s, -r));
            for i in 1..=r {
                out = &out * &(&zeta_e(2 * i) / &zeta_e(r + i));
                out = &out * &(&zeta_f(2 * i - 1) / &zeta_f(2 * i - 2));
            }
        }
    }
    out
}

pub fn gk_constant(ctx: &DoublingContext, form: GkForm) -> LFactorValue {
    gk_factored(ctx, form).to_rfunc()
}

/// `(−q)^{-r} ζ_F(2s+2r)/ζ_F(2s)`.
pub fn gk_ratio_closed(r: usize) -> Factored {
    let r = r as i32;
    let s = if r % 2 == 0 { 1 } else { -1 };
    &(&Factored::monomial(LPoly::q_pow(s, -r)) * &zeta_f(2 * r)) / &zeta_f(0)
}

/// The scalar by which `M(s)` acts on the distinguished section, with the
/// closed form checked against the raw product for `ε = −`.
pub fn intertwining_factored(ctx: &DoublingContext) -> Result<Factored> {
    let r = ctx.r;
    let ab = &a_factor(r) / &b_factor(r);
    match ctx.sign {
        Sign::Plus => Ok(ab),
        Sign::Minus => {
            let raw = raw_intertwining_product(2 * r as i32, r as i32);
            let c = c_factor(r, Sign::Minus);
            let closed = &(&Factored::monomial(qx(-1, 0, 2)) * &ab) * &(&c / &negate_s(&c));
            if raw.to_rfunc() != closed.to_rfunc() {
                return Err(Error::Structural(format!(
                    "intertwining product and closed form differ at r = {r}"
                )));
            }
            Ok(raw)
        }
    }
}

pub fn intertwining_constant(ctx: &DoublingContext) -> Result<LFactorValue> {
    Ok(intertwining_factored(ctx)?.to_rfunc())
}

/// Both sides of the normalised functional equation
/// `(b/c)(s) · M†(s) = ε q^{(4𝔠r + (ε1) − 1)s} (b/c)(−s)`
/// with `M† = q^{4𝔠rs} b(−s)/a(s) · M(s)`.
pub fn functional_equation_sides(ctx: &DoublingContext) -> Result<(RFunc, RFunc)> {
    let r = ctx.r;
    let m = intertwining_factored(ctx)?;
    let b = b_factor(r);
    let c = c_factor(r, ctx.sign);
    let bm = negate_s(&b);
    let cm = negate_s(&c);
    let k = 4 * ctx.c * r as i64;
    let xk = |e: i64| Factored::monomial(qx(1, 0, -(e as i32)));
    let m_dag = &(&xk(k) * &(&bm / &a_factor(r))) * &m;
    let lhs = &(&b / &c) * &m_dag;
    let eps = Factored::constant(Rat::from_integer(ctx.sign.unit().into()));
    let rhs = &(&eps * &xk(k + ctx.sign.unit() - 1)) * &(&bm / &cm);
    Ok((lhs.to_rfunc(), rhs.to_rfunc()))
}

/// `ε(s)`: `q^{−2𝔠r} X^{−4𝔠r}` for `+`, `−q^{−(2𝔠r−1)} X^{−2(2𝔠r−1)}` for
/// `−` (which needs `±½` among the parameters).
pub fn epsilon_factor(ctx: &DoublingContext, sigma: &SatakeParams) -> Result<LFactorValue> {
    check_rank(ctx, sigma)?;
    let k = 2 * ctx.c as i32 * ctx.r as i32;
    match ctx.sign {
        Sign::Plus => Ok(RFunc::from_poly(qx(1, -k, -2 * k))),
        Sign::Minus => {
            if !sigma.contains_half() {
                return Err(Error::Hypothesis(
                    "the ε-factor formula for sign − needs σ to contain ±1/2".into(),
                ));
            }
            Ok(RFunc::from_poly(qx(-1, -(k - 1), -2 * (k - 1))))
        }
    }
}

/// Evaluates at `s = ½`, i.e. `X = q^{-1/2}`. Needs only even powers of
/// `X`, unless the caller accepts a result in `sq`.
pub fn at_s_half(f: &RFunc) -> RFunc {
    let h = f.to_half_q();
    let v = RFunc::var(crate::exactalg::HALF_Q).inv().expect("nonzero");
    let e = h.subst1(X, &v).expect("monomial substitution");
    e.from_half_q().unwrap_or(e)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Unramified,
    AlmostUnramified,
    Neither,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Unramified => "unramified",
            Classification::AlmostUnramified => "almost_unramified",
            Classification::Neither => "neither",
        })
    }
}

pub fn classify(sigma: &SatakeParams, sign: Sign) -> Classification {
    match sign {
        Sign::Plus => Classification::Unramified,
        Sign::Minus if sigma.contains_half() => Classification::AlmostUnramified,
        Sign::Minus => Classification::Neither,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaParamPair {
    pub left: SatakeParams,
    pub right: SatakeParams,
}

/// `σ⃖ = (u^{-1}, q^{−(ε1)}, q^{−(2+(ε1))}, …)` of length `r` and
/// `σ⃗ = (q^{−(2−(ε1))}, …, q^{−(2(s−m)−(ε1))}, u)` of length `s`.
pub fn theta_parameters(r: usize, v: &HermitianSpaceDesc, sigma: &SatakeParams) -> Result<ThetaParamPair> {
    let s = v.witt_index();
    let m = v.m(r);
    if sigma.rank() != m {
        return Err(Error::RankMismatch {
            expected: m,
            found: sigma.rank(),
        });
    }
    let eps = v.sign.unit() as i32;
    let mut left: Vec<RFunc> = sigma.u.iter().map(|x| x.inv()).collect::<Result<_>>()?;
    for k in 1..=(r - m) as i32 {
        left.push(RFunc::q_pow(1, -(2 * (k - 1) + eps)));
    }
    let mut right: Vec<RFunc> = (1..=(s - m) as i32).map(|k| RFunc::q_pow(1, -(2 * k - eps))).collect();
    right.extend(sigma.u.iter().cloned());
    Ok(ThetaParamPair {
        left: SatakeParams::new(left)?,
        right: SatakeParams::new(right)?,
    })
}

/// Multiplicity of `p` in `f` by repeated exact division.
fn multiplicity(f: &LPoly, p: &LPoly) -> usize {
    let mut k = 0;
    let mut cur = f.clone();
    while let Some(next) = cur.exact_div(p) {
        k += 1;
        cur = next;
        if cur.is_zero() {
            break;
        }
    }
    k
}

/// Order of vanishing of `c^r_ε(s)/b_{2r}(s)` at `s_0 = d − r`.
pub fn theta_vanishing_order(r: usize, v: &HermitianSpaceDesc) -> Result<i64> {
    let s0 = v.d as i64 - r as i64;
    let lowest = match v.sign {
        Sign::Plus => -(r as i64),
        Sign::Minus => -(r as i64) + 1,
    };
    if s0 < lowest {
        return Err(Error::Range(format!(
            "s0 = {s0} lies below the admissible range starting at {lowest}"
        )));
    }
    let f = (&c_factor(r, v.sign) / &b_factor(r)).to_rfunc();
    // X² − q^{−2 s0}
    let lin = &qx(1, 0, 2) - &LPoly::q_pow(1, -2 * s0 as i32);
    let up = multiplicity(f.num(), &lin) as i64;
    let down = multiplicity(f.den(), &lin) as i64;
    Ok(up - down)
}

/// The value printed for `r = 1`, `σ = (½)`, `ε = −` in the text accompanying
/// the L-factor computation: `(1 + q^{-1}X²)/(−q²(1 − q^{-1}X²))`. It is kept
/// only to be compared against the assembled closed form.
pub fn printed_rank_one_zeta() -> RFunc {
    RFunc::new(&LPoly::one() + &qx(1, -1, 2), &qx(-1, 2, 0) * &one_minus(1, -1, 2)).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b2_and_c_examples() {
        let ctx = DoublingContext::new(1, Sign::Plus).unwrap();
        let den = &(&LPoly::one() + &qx(1, -1, 2)) * &one_minus(1, -2, 2);
        assert_eq!(abc(&ctx, Abc::B), RFunc::new(LPoly::one(), den).unwrap());
        assert!(abc(&ctx, Abc::C).is_one());
        let m = DoublingContext::new(1, Sign::Minus).unwrap();
        let want = RFunc::new(LPoly::int(-1), &LPoly::q_pow(1, 2) * &one_minus(1, -2, 2)).unwrap();
        assert_eq!(abc(&m, Abc::C), want);
    }

    #[test]
    fn l_factor_at_half() {
        let ctx = DoublingContext::new(1, Sign::Minus).unwrap();
        let l = l_factor(&ctx, &SatakeParams::from_twice_sigma(&[1])).unwrap();
        assert_eq!(l.to_string(), "1/(1 - q^-1 X^2)");
    }

    #[test]
    fn epsilon_needs_half() {
        let ctx = DoublingContext::new(1, Sign::Minus).unwrap();
        let err = epsilon_factor(&ctx, &SatakeParams::from_twice_sigma(&[2])).unwrap_err();
        assert!(matches!(err, Error::Hypothesis(_)));
        let e = epsilon_factor(&ctx, &SatakeParams::from_twice_sigma(&[-1])).unwrap();
        assert_eq!(e.to_string(), "-q X^2");
        assert_eq!(at_s_half(&e), RFunc::int(-1));
    }

    #[test]
    fn sigma_parsing() {
        assert_eq!("1/2".parse::<SigmaEntry>().unwrap(), SigmaEntry::Half(1));
        assert_eq!("-3/2".parse::<SigmaEntry>().unwrap(), SigmaEntry::Half(-3));
        assert_eq!("sym".parse::<SigmaEntry>().unwrap(), SigmaEntry::Symbolic);
        assert!("1/3".parse::<SigmaEntry>().is_err());
        assert!("x".parse::<SigmaEntry>().is_err());
        let p = SatakeParams::parse_list("1/2,sym").unwrap();
        assert_eq!(p.texts(), vec!["q".to_string(), "u2".to_string()]);
    }

    #[test]
    fn vanishing_order_small_cases() {
        let v = HermitianSpaceDesc::new(1, Sign::Minus).unwrap();
        assert_eq!(theta_vanishing_order(2, &v).unwrap(), 1);
        assert_eq!(theta_vanishing_order(3, &v).unwrap(), 1);
        assert_eq!(theta_vanishing_order(1, &v).unwrap(), 0);
    }

    #[test]
    fn shift_half_with_odd_power() {
        let f = RFunc::var(X);
        let g = shift_half_rfunc(&f);
        assert!(g.contains_var(crate::exactalg::HALF_Q));
        let sq2 = shift_half_rfunc(&(&f * &f));
        assert_eq!(sq2, RFunc::from_poly(qx(1, -1, 2)));
    }
}
