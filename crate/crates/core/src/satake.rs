//! `W_m`-invariant Laurent polynomials in `T_1…T_m` and the two theta
//! specialisation maps between them.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{LPoly, RFunc, Rat};
use crate::Sign;

pub fn t_var(i: usize) -> String {
    format!("T{i}")
}

/// Parses `T<i>` into `i`.
fn t_index(name: &str) -> Option<usize> {
    name.strip_prefix('T')?.parse().ok()
}

/// A hermitian space over `E` of half-dimension `d` and sign `ε`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HermitianSpaceDesc {
    pub d: usize,
    pub sign: Sign,
}

impl HermitianSpaceDesc {
    /// `d ≥ 1` when `ε = −`; `d = 0` is allowed for `ε = +` (the zero
    /// space, Witt index 0).
    pub fn new(d: usize, sign: Sign) -> Result<Self> {
        if sign == Sign::Minus && d == 0 {
            return Err(Error::Range("a space of sign − has d ≥ 1".into()));
        }
        Ok(HermitianSpaceDesc { d, sign })
    }

    /// Witt index `s = d − (1 − (ε1))/2`.
    pub fn witt_index(&self) -> usize {
        match self.sign {
            Sign::Plus => self.d,
            Sign::Minus => self.d - 1,
        }
    }

    /// `min(r, s)`.
    pub fn m(&self, r: usize) -> usize {
        r.min(self.witt_index())
    }
}

/// Element of `𝒯_m = ℂ[T_1^{±1},…,T_m^{±1}]^{W_m}` (coefficients may also
/// involve `q` and other non-`T` symbols).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymLaurent {
    rank: usize,
    poly: LPoly,
}

/// All signed permutations of an exponent vector.
pub fn orbit(exps: &[i32]) -> BTreeSet<Vec<i32>> {
    let mut out = BTreeSet::new();
    let mut abs: Vec<i32> = exps.iter().map(|x| x.abs()).collect();
    abs.sort_unstable();
    let mut perms = Vec::new();
    permutations(&mut abs, 0, &mut perms);
    for p in perms {
        let nz: Vec<usize> = (0..p.len()).filter(|&i| p[i] != 0).collect();
        for mask in 0u32..(1 << nz.len()) {
            let mut v = p.clone();
            for (b, &i) in nz.iter().enumerate() {
                if mask & (1 << b) != 0 {
                    v[i] = -v[i];
                }
            }
            out.insert(v);
        }
    }
    out
}

fn permutations(v: &mut Vec<i32>, k: usize, out: &mut Vec<Vec<i32>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    let mut used = BTreeSet::new();
    for i in k..v.len() {
        if used.insert(v[i]) {
            v.swap(k, i);
            permutations(v, k + 1, out);
            v.swap(k, i);
        }
    }
}

/// Dominant representative: absolute values sorted decreasingly.
pub fn dominant(exps: &[i32]) -> Vec<i32> {
    let mut v: Vec<i32> = exps.iter().map(|x| x.abs()).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Splits a polynomial into `T`-exponent vectors (length `m`) with
/// coefficients in the remaining variables.
fn split_t(p: &LPoly, m: usize) -> Result<BTreeMap<Vec<i32>, LPoly>> {
    let mut out: BTreeMap<Vec<i32>, LPoly> = BTreeMap::new();
    let vars = p.vars();
    let mut tpos = Vec::new();
    for (k, v) in vars.iter().enumerate() {
        if let Some(i) = t_index(v) {
            if i == 0 || i > m {
                return Err(Error::RankMismatch {
                    expected: m,
                    found: i,
                });
            }
            tpos.push((k, i - 1));
        }
    }
    for (e, c) in p.terms() {
        let mut te = vec![0; m];
        let mut rest: Vec<(&str, i32)> = Vec::new();
        for (k, v) in vars.iter().enumerate() {
            if let Some(&(_, i)) = tpos.iter().find(|(kk, _)| *kk == k) {
                te[i] = e[k];
            } else {
                rest.push((v.as_str(), e[k]));
            }
        }
        let mono = LPoly::monomial(c.clone(), &rest);
        let slot = out.entry(te).or_insert_with(LPoly::zero);
        *slot = &*slot + &mono;
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

fn t_monomial(exps: &[i32]) -> LPoly {
    let names: Vec<String> = (1..=exps.len()).map(t_var).collect();
    let pw: Vec<(&str, i32)> = names.iter().map(|n| n.as_str()).zip(exps.iter().copied()).collect();
    LPoly::monomial(Rat::from_integer(1.into()), &pw)
}

impl SymLaurent {
    /// Checks invariance under `T_1 ↦ T_1^{-1}` and adjacent swaps, which
    /// generate `W_m`.
    pub fn new(rank: usize, poly: LPoly) -> Result<Self> {
        let parts = split_t(&poly, rank)?;
        for (e, c) in &parts {
            let mut flipped = e.clone();
            if rank > 0 {
                flipped[0] = -flipped[0];
            }
            let mut gens = vec![flipped];
            for i in 1..rank {
                let mut s = e.clone();
                s.swap(i - 1, i);
                gens.push(s);
            }
            for g in gens {
                if parts.get(&g) != Some(c) {
                    return Err(Error::NotInvariant(format!(
                        "coefficient of T^{e:?} differs from that of T^{g:?}"
                    )));
                }
            }
        }
        Ok(SymLaurent { rank, poly })
    }

    pub fn zero(rank: usize) -> Self {
        SymLaurent {
            rank,
            poly: LPoly::zero(),
        }
    }

    pub fn one(rank: usize) -> Self {
        SymLaurent::constant(rank, RFunc::one().num().clone())
    }

    /// A `T`-free element.
    pub fn constant(rank: usize, c: LPoly) -> Self {
        SymLaurent::new(rank, c).expect("constants are invariant")
    }

    /// The orbit sum `Σ_{v ∈ W_m·e} T^v`.
    pub fn orbit_sum(rank: usize, exps: &[i32]) -> Result<Self> {
        if exps.len() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                found: exps.len(),
            });
        }
        let mut p = LPoly::zero();
        for v in orbit(exps) {
            p = &p + &t_monomial(&v);
        }
        SymLaurent::new(rank, p)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn poly(&self) -> &LPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, other: &SymLaurent) -> Result<SymLaurent> {
        self.check(other)?;
        Ok(SymLaurent {
            rank: self.rank,
            poly: &self.poly + &other.poly,
        })
    }

    pub fn sub(&self, other: &SymLaurent) -> Result<SymLaurent> {
        self.check(other)?;
        Ok(SymLaurent {
            rank: self.rank,
            poly: &self.poly - &other.poly,
        })
    }

    pub fn mul(&self, other: &SymLaurent) -> Result<SymLaurent> {
        self.check(other)?;
        Ok(SymLaurent {
            rank: self.rank,
            poly: &self.poly * &other.poly,
        })
    }

    pub fn scale(&self, c: &LPoly) -> SymLaurent {
        SymLaurent {
            rank: self.rank,
            poly: &self.poly * c,
        }
    }

    fn check(&self, other: &SymLaurent) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        Ok(())
    }

    /// Dominant orbit representatives with their coefficients.
    pub fn orbits(&self) -> Vec<(Vec<i32>, LPoly)> {
        let parts = split_t(&self.poly, self.rank).expect("checked on construction");
        let mut out: BTreeMap<Vec<i32>, LPoly> = BTreeMap::new();
        for (e, c) in parts {
            out.entry(dominant(&e)).or_insert(c);
        }
        out.into_iter().collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.orbits()
                .into_iter()
                .map(|(e, c)| {
                    serde_json::json!({
                        "orbit_representative": e,
                        "coefficient": RFunc::from_poly(c).to_string(),
                    })
                })
                .collect(),
        )
    }
}

impl fmt::Display for SymLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// Dominant exponent vectors (weakly decreasing, nonnegative) of length
/// `m` and total degree at most `deg`: the orbit-sum basis of `𝒯_m` up to
/// that degree.
pub fn dominant_vectors(m: usize, deg: i32) -> Vec<Vec<i32>> {
    fn go(m: usize, left: i32, cap: i32, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for e in (0..=cap.min(left)).rev() {
            cur.push(e);
            go(m, left - e, e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, deg, deg, &mut Vec::new(), &mut out);
    out
}

/// Orbit-sum symmetrisation: every `W_m`-orbit meeting the support of `p`
/// contributes its orbit sum once, with the coefficient of the largest
/// orbit member present in `p`.
pub fn symmetrize(p: &LPoly, m: usize) -> Result<SymLaurent> {
    let parts = split_t(p, m)?;
    let mut chosen: BTreeMap<Vec<i32>, (Vec<i32>, LPoly)> = BTreeMap::new();
    for (e, c) in parts {
        let key = dominant(&e);
        match chosen.get(&key) {
            Some((best, _)) if *best >= e => {}
            _ => {
                chosen.insert(key, (e, c));
            }
        }
    }
    let mut out = LPoly::zero();
    for (key, (_, c)) in chosen {
        let orb = SymLaurent::orbit_sum(m, &key)?;
        out = &out + &(orb.poly() * &c);
    }
    SymLaurent::new(m, out)
}

/// Which sign of the `±` in the theta maps is used. Both readings agree on
/// invariant inputs; the agreement is tested, not assumed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reading {
    /// `T_i ↦ T_i^{-1}`, slot values `q^{-e}` (left map), `q^{+e}` (right).
    Default,
    /// `T_i ↦ T_i^{-1}`, slot values `q^{+e}`.
    Upper,
    /// `T_i ↦ T_i`, slot values `q^{-e}`.
    Lower,
}

fn q_mono(e: i32) -> LPoly {
    LPoly::q_pow(1, e)
}

/// `Θ⃖`: rank `r` to rank `m = min(r, s)`.
pub fn theta_left(f: &SymLaurent, v: &HermitianSpaceDesc, r: usize) -> Result<SymLaurent> {
    theta_left_with(f, v, r, Reading::Default)
}

pub fn theta_left_with(f: &SymLaurent, v: &HermitianSpaceDesc, r: usize, reading: Reading) -> Result<SymLaurent> {
    if f.rank() != r {
        return Err(Error::RankMismatch {
            expected: r,
            found: f.rank(),
        });
    }
    let m = v.m(r);
    let eps = v.sign.unit() as i32;
    let (invert, slot_sign) = match reading {
        Reading::Default => (true, -1),
        Reading::Upper => (true, 1),
        Reading::Lower => (false, -1),
    };
    let mut assign = HashMap::new();
    for i in 1..=m {
        let t = LPoly::var(&t_var(i));
        assign.insert(t_var(i), if invert { t.monomial_inverse().unwrap() } else { t });
    }
    for k in 1..=(r - m) {
        let e = 2 * (k as i32 - 1) + eps;
        assign.insert(t_var(m + k), q_mono(slot_sign * e));
    }
    SymLaurent::new(m, f.poly().substitute_monomials(&assign))
}

/// `Θ⃗`: rank `s` to rank `m`.
pub fn theta_right(g: &SymLaurent, v: &HermitianSpaceDesc, r: usize) -> Result<SymLaurent> {
    theta_right_with(g, v, r, Reading::Default)
}

pub fn theta_right_with(g: &SymLaurent, v: &HermitianSpaceDesc, r: usize, reading: Reading) -> Result<SymLaurent> {
    let s = v.witt_index();
    if g.rank() != s {
        return Err(Error::RankMismatch {
            expected: s,
            found: g.rank(),
        });
    }
    let m = v.m(r);
    let eps = v.sign.unit() as i32;
    let slot_sign = match reading {
        Reading::Default | Reading::Upper => 1,
        Reading::Lower => -1,
    };
    let mut assign = HashMap::new();
    for k in 1..=(s - m) {
        let e = 2 * k as i32 - eps;
        assign.insert(t_var(k), q_mono(slot_sign * e));
    }
    for j in 1..=m {
        let t = LPoly::var(&t_var(j));
        let t = if reading == Reading::Lower { t.monomial_inverse().unwrap() } else { t };
        assign.insert(t_var(s - m + j), t);
    }
    SymLaurent::new(m, g.poly().substitute_monomials(&assign))
}

/// A finite sum of pure tensors `Σ left_k ⊗ right_k`.
#[derive(Clone, Debug, Default)]
pub struct TensorElement {
    pub pairs: Vec<(SymLaurent, SymLaurent)>,
}

impl TensorElement {
    pub fn new() -> Self {
        TensorElement::default()
    }

    pub fn push(&mut self, left: SymLaurent, right: SymLaurent) {
        self.pairs.push((left, right));
    }

    /// Image `Σ Θ⃖(left)·Θ⃗(right)` in `𝒯_m`.
    pub fn image(&self, v: &HermitianSpaceDesc, r: usize) -> Result<SymLaurent> {
        let m = v.m(r);
        let mut acc = SymLaurent::zero(m);
        for (l, rt) in &self.pairs {
            if l.rank() != r || rt.rank() != v.witt_index() {
                return Err(Error::RankMismatch {
                    expected: r,
                    found: l.rank(),
                });
            }
            let term = theta_left(l, v, r)?.mul(&theta_right(rt, v, r)?)?;
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }
}

/// Membership in the kernel of `Θ⃖ ⊗ Θ⃗`.
pub fn ideal_member(t: &TensorElement, v: &HermitianSpaceDesc, r: usize) -> Result<bool> {
    Ok(t.image(v, r)?.is_zero())
}

/// `F(u_1, …, u_m)`.
pub fn eval_params(f: &SymLaurent, u: &[RFunc]) -> Result<RFunc> {
    if u.len() != f.rank() {
        return Err(Error::RankMismatch {
            expected: f.rank(),
            found: u.len(),
        });
    }
    if let Some(i) = u.iter().position(|x| x.is_zero()) {
        return Err(Error::Degenerate(format!("Satake parameter u{} is zero", i + 1)));
    }
    let assign: HashMap<String, RFunc> = u
        .iter()
        .enumerate()
        .map(|(i, x)| (t_var(i + 1), x.clone()))
        .collect();
    RFunc::from_poly(f.poly().clone()).substitute(&assign)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_sums() {
        let a = SymLaurent::orbit_sum(1, &[1]).unwrap();
        assert_eq!(a.to_string(), "T1^-1 + T1");
        let b = SymLaurent::orbit_sum(2, &[1, 1]).unwrap();
        assert_eq!(b.poly().num_terms(), 4);
        let c = SymLaurent::orbit_sum(2, &[1, 0]).unwrap();
        assert_eq!(c.poly().num_terms(), 4);
    }

    #[test]
    fn symmetrize_collapses_orbits() {
        let t1: LPoly = "T1".parse().unwrap();
        assert_eq!(symmetrize(&t1, 1).unwrap(), SymLaurent::orbit_sum(1, &[1]).unwrap());
        let one = LPoly::one();
        assert_eq!(symmetrize(&one, 0).unwrap().poly(), &one);
        let t12: LPoly = "T1 T2".parse().unwrap();
        assert_eq!(symmetrize(&t12, 2).unwrap(), SymLaurent::orbit_sum(2, &[1, 1]).unwrap());
        let already = SymLaurent::orbit_sum(2, &[2, 1]).unwrap();
        assert_eq!(symmetrize(already.poly(), 2).unwrap(), already);
    }

    #[test]
    fn rejects_non_invariant() {
        let t1: LPoly = "T1".parse().unwrap();
        assert!(matches!(SymLaurent::new(1, t1), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn theta_examples() {
        let f1 = SymLaurent::orbit_sum(1, &[1]).unwrap();
        let plus1 = HermitianSpaceDesc::new(1, Sign::Plus).unwrap();
        assert_eq!(theta_left(&f1, &plus1, 1).unwrap(), f1);

        let f2 = SymLaurent::orbit_sum(2, &[1, 0]).unwrap();
        let got = theta_left(&f2, &plus1, 2).unwrap();
        let want: LPoly = "T1 + T1^-1 + q + q^-1".parse().unwrap();
        assert_eq!(got.poly(), &want);

        let minus1 = HermitianSpaceDesc::new(1, Sign::Minus).unwrap();
        let got = theta_left(&f1, &minus1, 1).unwrap();
        assert_eq!(got.poly(), &"q + q^-1".parse::<LPoly>().unwrap());
        assert_eq!(got.rank(), 0);

        let plus2 = HermitianSpaceDesc::new(2, Sign::Plus).unwrap();
        let g = SymLaurent::orbit_sum(2, &[1, 0]).unwrap();
        let got = theta_right(&g, &plus2, 1).unwrap();
        assert_eq!(got.poly(), &"q + q^-1 + T1 + T1^-1".parse::<LPoly>().unwrap());

        let minus2 = HermitianSpaceDesc::new(2, Sign::Minus).unwrap();
        let got = theta_right(&f1, &minus2, 0).unwrap();
        assert_eq!(got.poly(), &"q^3 + q^-3".parse::<LPoly>().unwrap());
    }

    #[test]
    fn eval_rejects_zero() {
        let f = SymLaurent::orbit_sum(1, &[1]).unwrap();
        assert!(eval_params(&f, &[RFunc::zero()]).is_err());
        assert_eq!(
            eval_params(&f, &[RFunc::q_pow(1, 1)]).unwrap(),
            &RFunc::q_pow(1, 1) + &RFunc::q_pow(1, -1)
        );
    }
}
