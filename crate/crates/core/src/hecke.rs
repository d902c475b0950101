//! The finite Hecke algebra of `W_r` with parameter `q` on the generator
//! `C` and `q²` on the generators `A_i`, in the basis `T_w`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{solve_kernel, RFunc};
use crate::weyl::{enumerate, parabolic_double_cosets, Gen, SignedPermutation};
use crate::Sign;

/// Quadratic-relation parameters `T_s² = (p_s − 1) T_s + p_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeParams {
    pub c: RFunc,
    pub a: RFunc,
}

impl Default for HeckeParams {
    fn default() -> Self {
        HeckeParams {
            c: RFunc::q_pow(1, 1),
            a: RFunc::q_pow(1, 2),
        }
    }
}

impl HeckeParams {
    pub fn of(&self, g: Gen) -> &RFunc {
        match g {
            Gen::C => &self.c,
            Gen::A(_) => &self.a,
        }
    }
}

/// The character `κ^ε`: `T_C ↦ q` or `−1`, `T_{A_i} ↦ q²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KappaCharacter {
    pub sign: Sign,
}

impl KappaCharacter {
    pub fn new(sign: Sign) -> Self {
        KappaCharacter { sign }
    }

    pub fn on_generator(&self, g: Gen) -> RFunc {
        match (g, self.sign) {
            (Gen::C, Sign::Plus) => RFunc::q_pow(1, 1),
            (Gen::C, Sign::Minus) => RFunc::int(-1),
            (Gen::A(_), _) => RFunc::q_pow(1, 2),
        }
    }

    /// `κ(T_w)`: product over any reduced word of `w`.
    pub fn on_basis(&self, w: &SignedPermutation) -> RFunc {
        let word = w.reduced_word();
        let nc = word.iter().filter(|g| matches!(g, Gen::C)).count() as i32;
        let na = word.len() as i32 - nc;
        let c = match self.sign {
            Sign::Plus => RFunc::q_pow(1, nc),
            Sign::Minus => RFunc::int(if nc % 2 == 0 { 1 } else { -1 }),
        };
        &c * &RFunc::q_pow(1, 2 * na)
    }
}

/// A finite linear combination `Σ c_w T_w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement {
    rank: usize,
    coeffs: BTreeMap<SignedPermutation, RFunc>,
}

impl HeckeElement {
    pub fn zero(rank: usize) -> Self {
        HeckeElement {
            rank,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn identity(rank: usize) -> Self {
        HeckeElement::basis(&SignedPermutation::identity(rank))
    }

    pub fn basis(w: &SignedPermutation) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(w.clone(), RFunc::one());
        HeckeElement {
            rank: w.rank(),
            coeffs,
        }
    }

    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (SignedPermutation, RFunc)>) -> Result<Self> {
        let mut h = HeckeElement::zero(rank);
        for (w, c) in terms {
            if w.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: w.rank(),
                });
            }
            h.add_term(w, c);
        }
        Ok(h)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn coeff(&self, w: &SignedPermutation) -> RFunc {
        self.coeffs.get(w).cloned().unwrap_or_else(RFunc::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SignedPermutation, &RFunc)> {
        self.coeffs.iter()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, w: SignedPermutation, c: RFunc) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (w, c) in &other.coeffs {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.add(&other.scale(&RFunc::int(-1)))
    }

    pub fn scale(&self, c: &RFunc) -> HeckeElement {
        let mut out = HeckeElement::zero(self.rank);
        for (w, x) in &self.coeffs {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    fn check_rank(&self, other: &HeckeElement) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        Ok(())
    }

    /// `T_s · self`.
    pub fn left_gen(&self, g: Gen, params: &HeckeParams) -> HeckeElement {
        let p = params.of(g);
        let pm1 = p - &RFunc::one();
        let mut out = HeckeElement::zero(self.rank);
        for (w, c) in &self.coeffs {
            let sw = w.gen_mul(g);
            if sw.length() > w.length() {
                out.add_term(sw, c.clone());
            } else {
                out.add_term(sw, c * p);
                out.add_term(w.clone(), c * &pm1);
            }
        }
        out
    }

    /// `self · T_s`.
    pub fn right_gen(&self, g: Gen, params: &HeckeParams) -> HeckeElement {
        let p = params.of(g);
        let pm1 = p - &RFunc::one();
        let mut out = HeckeElement::zero(self.rank);
        for (w, c) in &self.coeffs {
            let ws = w.mul_gen(g);
            if ws.length() > w.length() {
                out.add_term(ws, c.clone());
            } else {
                out.add_term(ws, c * p);
                out.add_term(w.clone(), c * &pm1);
            }
        }
        out
    }

    /// `T_u · self`, applying the letters of a reduced word of `u` from the
    /// right.
    pub fn left_basis(&self, u: &SignedPermutation, params: &HeckeParams) -> HeckeElement {
        let mut acc = self.clone();
        for &g in u.reduced_word().iter().rev() {
            acc = acc.left_gen(g, params);
        }
        acc
    }

    pub fn kappa(&self, sign: Sign) -> RFunc {
        kappa_value(sign, self)
    }
}

/// `T_u · T_v` in the `T` basis.
pub fn t_mul(u: &SignedPermutation, v: &SignedPermutation) -> Result<HeckeElement> {
    if u.rank() != v.rank() {
        return Err(Error::RankMismatch {
            expected: u.rank(),
            found: v.rank(),
        });
    }
    Ok(HeckeElement::basis(v).left_basis(u, &HeckeParams::default()))
}

/// Bilinear product.
pub fn elem_mul(a: &HeckeElement, b: &HeckeElement) -> Result<HeckeElement> {
    a.check_rank(b)?;
    let params = HeckeParams::default();
    let mut out = HeckeElement::zero(a.rank);
    for (u, c) in &a.coeffs {
        let prod = b.left_basis(u, &params).scale(c);
        out = out.add(&prod)?;
    }
    Ok(out)
}

pub fn kappa_value(sign: Sign, a: &HeckeElement) -> RFunc {
    let k = KappaCharacter::new(sign);
    let mut acc = RFunc::zero();
    for (w, c) in &a.coeffs {
        acc = &acc + &(c * &k.on_basis(w));
    }
    acc
}

/// `Σ_{w ∈ B_i} T_w` for the `i`-th double coset `S_r (w_1⋯w_i) S_r`.
pub fn block_indicator(r: usize, i: usize) -> Result<HeckeElement> {
    if i > r {
        return Err(Error::IndexOutOfRange { index: i, max: r });
    }
    let blocks = parabolic_double_cosets(r)?;
    HeckeElement::from_terms(r, blocks[i].iter().map(|w| (w.clone(), RFunc::one())))
}

/// Block weight `(−q)^{((ε1)−1) i / 2}`.
pub fn block_weight(sign: Sign, i: usize) -> RFunc {
    match sign {
        Sign::Plus => RFunc::one(),
        Sign::Minus => {
            let s = if i.is_multiple_of(2) { 1 } else { -1 };
            RFunc::q_pow(s, -(i as i32))
        }
    }
}

/// The expected eigenvector `Σ_i (−q)^{((ε1)−1)i/2} 1_{B_i}`.
pub fn block_eigenvector(r: usize, sign: Sign) -> Result<HeckeElement> {
    let mut out = HeckeElement::zero(r);
    for i in 0..=r {
        out = out.add(&block_indicator(r, i)?.scale(&block_weight(sign, i)))?;
    }
    Ok(out)
}

/// Linear system whose kernel is the right `κ^ε`-eigenspace of the regular
/// module: `x · T_s = κ(T_s) x` for every generator `s`.
pub fn eigen_system(r: usize, sign: Sign) -> Result<(Vec<SignedPermutation>, Vec<Vec<RFunc>>)> {
    let elems: Vec<SignedPermutation> = enumerate(r)?.into_iter().map(|e| e.w).collect();
    let index: HashMap<&SignedPermutation, usize> =
        elems.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let n = elems.len();
    let params = HeckeParams::default();
    let kappa = KappaCharacter::new(sign);
    let mut rows = Vec::new();
    for g in SignedPermutation::generators(r) {
        let kv = kappa.on_generator(g);
        // column w holds T_w · T_s − κ(T_s) T_w
        let mut block = vec![vec![RFunc::zero(); n]; n];
        for (col, w) in elems.iter().enumerate() {
            let img = HeckeElement::basis(w).right_gen(g, &params);
            for (y, c) in img.terms() {
                block[index[y]][col] = c.clone();
            }
            block[col][col] = &block[col][col] - &kv;
        }
        rows.extend(block.into_iter().filter(|r| r.iter().any(|c| !c.is_zero())));
    }
    Ok((elems, rows))
}

/// The right `κ^ε`-eigenvector, computed as a kernel and normalised to
/// `T_e`-coefficient 1. Errors if the eigenspace is not a line or if it
/// differs from the block formula.
pub fn eigenvector(r: usize, sign: Sign) -> Result<HeckeElement> {
    let bound = crate::max_symbolic_rank();
    if r > bound {
        return Err(Error::BoundExceeded { rank: r, bound });
    }
    let (elems, rows) = eigen_system(r, sign)?;
    let kernel = solve_kernel(&rows)?;
    if kernel.len() != 1 {
        return Err(Error::Structural(format!(
            "κ^{sign} eigenspace at r = {r} has dimension {}",
            kernel.len()
        )));
    }
    let v = &kernel[0];
    let e0 = v[0].clone();
    if e0.is_zero() {
        return Err(Error::Structural("eigenvector vanishes at the identity".into()));
    }
    let inv = e0.inv()?;
    let f = HeckeElement::from_terms(r, elems.into_iter().zip(v.iter()).map(|(w, c)| (w, c * &inv)))?;
    if f != block_eigenvector(r, sign)? {
        return Err(Error::Structural(
            "eigenvector differs from the block-weighted sum".into(),
        ));
    }
    Ok(f)
}

/// `e = f / κ(f)`.
pub fn idempotent(r: usize, sign: Sign) -> Result<HeckeElement> {
    let f = eigenvector(r, sign)?;
    let k = kappa_value(sign, &f);
    if k.is_zero() {
        return Err(Error::Degenerate("κ(f) vanishes".into()));
    }
    Ok(f.scale(&k.inv()?))
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.coeffs.iter().collect();
        terms.sort_by_key(|(w, _)| (w.length(), (*w).clone()));
        let parts: Vec<String> = terms
            .into_iter()
            .map(|(w, c)| {
                if c.is_one() {
                    format!("T[{w}]")
                } else {
                    format!("({c})·T[{w}]")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> SignedPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn quadratic_relations() {
        let c = sp("[-1]");
        let got = t_mul(&c, &c).unwrap();
        let want = HeckeElement::from_terms(
            1,
            [(sp("[1]"), RFunc::q_pow(1, 1)), (c.clone(), &RFunc::q_pow(1, 1) - &RFunc::one())],
        )
        .unwrap();
        assert_eq!(got, want);

        let a = sp("[2, 1]");
        let got = t_mul(&a, &a).unwrap();
        assert_eq!(got.coeff(&sp("[1, 2]")), RFunc::q_pow(1, 2));
        assert_eq!(got.coeff(&a), &RFunc::q_pow(1, 2) - &RFunc::one());
    }

    #[test]
    fn length_additive_product() {
        let c = sp("[-1, 2]");
        let a = sp("[2, 1]");
        let prod = t_mul(&c, &a).unwrap();
        assert_eq!(prod, HeckeElement::basis(&c.compose(&a).unwrap()));
    }

    #[test]
    fn kappa_on_generators() {
        let c = sp("[-1, 2]");
        assert_eq!(KappaCharacter::new(Sign::Plus).on_basis(&c), RFunc::q_pow(1, 1));
        assert_eq!(KappaCharacter::new(Sign::Minus).on_basis(&c), RFunc::int(-1));
        let ca = c.compose(&sp("[2, 1]")).unwrap();
        assert_eq!(KappaCharacter::new(Sign::Plus).on_basis(&ca), RFunc::q_pow(1, 3));
    }

    #[test]
    fn rank_one_eigenvector() {
        let f = eigenvector(1, Sign::Minus).unwrap();
        assert_eq!(f.coeff(&sp("[1]")), RFunc::one());
        assert_eq!(f.coeff(&sp("[-1]")), RFunc::q_pow(-1, -1));
    }

    #[test]
    fn block_index_range() {
        assert!(matches!(block_indicator(1, 2), Err(Error::IndexOutOfRange { .. })));
        assert_eq!(block_indicator(2, 1).unwrap().support_len(), 4);
    }
}
