//! The hyperoctahedral group `W_r = {±1}^r ⋊ S_r` as signed permutations,
//! with Coxeter generators `C` (sign change of coordinate 1) and
//! `A_i` (swap of coordinates `i`, `i+1`).

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the rank for full enumeration.
pub const ENUM_BOUND: usize = 6;

/// A signed permutation of rank `r`: `img[i]` is the signed image of `i+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedPermutation {
    img: Vec<i32>,
}

/// A Coxeter generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gen {
    /// `w_1`, the sign change of the first coordinate.
    C,
    /// `w'_{(i,i+1)}` for `1 ≤ i < r`.
    A(usize),
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::C => f.write_str("C"),
            Gen::A(i) => write!(f, "A{i}"),
        }
    }
}

pub type ReducedWord = Vec<Gen>;

impl SignedPermutation {
    pub fn identity(r: usize) -> Self {
        SignedPermutation {
            img: (1..=r as i32).collect(),
        }
    }

    pub fn from_images(img: Vec<i32>) -> Result<Self> {
        let r = img.len() as i32;
        let mut seen = vec![false; img.len()];
        for &x in &img {
            let a = x.unsigned_abs() as usize;
            if x == 0 || x.abs() > r || seen[a - 1] {
                return Err(Error::Structural(format!("{img:?} is not a signed permutation")));
            }
            seen[a - 1] = true;
        }
        Ok(SignedPermutation { img })
    }

    pub fn rank(&self) -> usize {
        self.img.len()
    }

    pub fn images(&self) -> &[i32] {
        &self.img
    }

    pub fn apply(&self, i: i32) -> i32 {
        let v = self.img[i.unsigned_abs() as usize - 1];
        if i < 0 {
            -v
        } else {
            v
        }
    }

    pub fn generator(r: usize, g: Gen) -> Result<Self> {
        let mut w = SignedPermutation::identity(r);
        match g {
            Gen::C => {
                if r == 0 {
                    return Err(Error::IndexOutOfRange { index: 1, max: 0 });
                }
                w.img[0] = -1;
            }
            Gen::A(i) => {
                if i == 0 || i >= r {
                    return Err(Error::IndexOutOfRange {
                        index: i,
                        max: r.saturating_sub(1),
                    });
                }
                w.img.swap(i - 1, i);
            }
        }
        Ok(w)
    }

    /// Sign change of coordinate `i` (1-based).
    pub fn sign_change(r: usize, i: usize) -> Self {
        let mut w = SignedPermutation::identity(r);
        w.img[i - 1] = -(i as i32);
        w
    }

    /// `w_1 w_2 ⋯ w_i`, the representative of the `i`-th double coset.
    pub fn block_rep(r: usize, i: usize) -> Self {
        let mut w = SignedPermutation::identity(r);
        for x in w.img.iter_mut().take(i) {
            *x = -*x;
        }
        w
    }

    pub fn generators(r: usize) -> Vec<Gen> {
        let mut g = Vec::with_capacity(r);
        if r >= 1 {
            g.push(Gen::C);
        }
        g.extend((1..r).map(Gen::A));
        g
    }

    pub fn inverse(&self) -> Self {
        let mut img = vec![0; self.rank()];
        for (i, &x) in self.img.iter().enumerate() {
            let s = x.signum();
            img[x.unsigned_abs() as usize - 1] = s * (i as i32 + 1);
        }
        SignedPermutation { img }
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &SignedPermutation) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: other.rank(),
            });
        }
        Ok(SignedPermutation {
            img: other.img.iter().map(|&x| self.apply(x)).collect(),
        })
    }

    /// `self ∘ s` for a generator, without allocation of the generator.
    pub fn mul_gen(&self, g: Gen) -> Self {
        let mut w = self.clone();
        match g {
            Gen::C => w.img[0] = -w.img[0],
            Gen::A(i) => w.img.swap(i - 1, i),
        }
        w
    }

    /// `s ∘ self`.
    pub fn gen_mul(&self, g: Gen) -> Self {
        let mut w = self.clone();
        match g {
            Gen::C => {
                for x in w.img.iter_mut() {
                    if x.abs() == 1 {
                        *x = -*x;
                    }
                }
            }
            Gen::A(i) => {
                let (a, b) = (i as i32, i as i32 + 1);
                for x in w.img.iter_mut() {
                    if x.abs() == a {
                        *x = x.signum() * b;
                    } else if x.abs() == b {
                        *x = x.signum() * a;
                    }
                }
            }
        }
        w
    }

    /// Coxeter length: inversions + negative entries + negative sum pairs.
    pub fn length(&self) -> usize {
        let w = &self.img;
        let n = w.len();
        let mut l = w.iter().filter(|&&x| x < 0).count();
        for i in 0..n {
            for j in i + 1..n {
                if w[i] > w[j] {
                    l += 1;
                }
                if w[i] + w[j] < 0 {
                    l += 1;
                }
            }
        }
        l
    }

    pub fn num_negative(&self) -> usize {
        self.img.iter().filter(|&&x| x < 0).count()
    }

    /// A reduced word `s_1 ⋯ s_k` with `self = s_1 ∘ ⋯ ∘ s_k`.
    pub fn reduced_word(&self) -> ReducedWord {
        let mut w = self.clone();
        let mut rev = Vec::new();
        let gens = SignedPermutation::generators(self.rank());
        let mut l = w.length();
        while l > 0 {
            let g = *gens
                .iter()
                .find(|&&g| w.mul_gen(g).length() < l)
                .expect("nonidentity element has a right descent");
            w = w.mul_gen(g);
            l -= 1;
            rev.push(g);
        }
        rev.reverse();
        rev
    }

    pub fn from_word(r: usize, word: &[Gen]) -> Result<Self> {
        let mut w = SignedPermutation::identity(r);
        for &g in word {
            SignedPermutation::generator(r, g)?;
            w = w.mul_gen(g);
        }
        Ok(w)
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| x == i as i32 + 1)
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.img.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        if body.trim().is_empty() {
            return Ok(SignedPermutation::identity(0));
        }
        let img = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i32>()
                    .map_err(|_| Error::Parse(format!("bad entry `{t}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        SignedPermutation::from_images(img)
    }
}

/// Element together with a reduced word.
#[derive(Clone, Debug)]
pub struct Element {
    pub w: SignedPermutation,
    pub word: ReducedWord,
}

/// All `2^r r!` elements in breadth-first order from the identity, each
/// with the reduced word along its BFS path.
pub fn enumerate(r: usize) -> Result<Vec<Element>> {
    enumerate_bounded(r, ENUM_BOUND)
}

pub fn enumerate_bounded(r: usize, bound: usize) -> Result<Vec<Element>> {
    if r > bound {
        return Err(Error::BoundExceeded { rank: r, bound });
    }
    let gens = SignedPermutation::generators(r);
    let id = SignedPermutation::identity(r);
    let mut seen: HashMap<SignedPermutation, usize> = HashMap::new();
    let mut out = vec![Element {
        w: id.clone(),
        word: Vec::new(),
    }];
    seen.insert(id, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        for &g in &gens {
            let next = out[k].w.mul_gen(g);
            if !seen.contains_key(&next) {
                let mut word = out[k].word.clone();
                word.push(g);
                seen.insert(next.clone(), out.len());
                queue.push_back(out.len());
                out.push(Element { w: next, word });
            }
        }
    }
    Ok(out)
}

/// BFS distances from the identity in the Cayley graph.
pub fn bfs_lengths(r: usize) -> Result<HashMap<SignedPermutation, usize>> {
    Ok(enumerate(r)?
        .into_iter()
        .map(|e| {
            let l = e.word.len();
            (e.w, l)
        })
        .collect())
}

/// The double cosets `S_r (w_1⋯w_i) S_r` for `i = 0..=r`, each sorted by
/// (length, one-line notation).
pub fn parabolic_double_cosets(r: usize) -> Result<Vec<Vec<SignedPermutation>>> {
    let all = enumerate(r)?;
    let mut blocks = Vec::with_capacity(r + 1);
    let a_gens: Vec<Gen> = (1..r).map(Gen::A).collect();
    let mut assigned: HashMap<SignedPermutation, usize> = HashMap::new();
    for i in 0..=r {
        let rep = SignedPermutation::block_rep(r, i);
        let mut block = vec![rep.clone()];
        let mut queue = VecDeque::from([rep.clone()]);
        let mut inblock = std::collections::HashSet::from([rep]);
        while let Some(w) = queue.pop_front() {
            for &g in &a_gens {
                for next in [w.mul_gen(g), w.gen_mul(g)] {
                    if inblock.insert(next.clone()) {
                        block.push(next.clone());
                        queue.push_back(next);
                    }
                }
            }
        }
        for w in &block {
            if let Some(j) = assigned.insert(w.clone(), i) {
                return Err(Error::Structural(format!("{w} lies in blocks {j} and {i}")));
            }
        }
        block.sort_by_key(|w| (w.length(), w.clone()));
        blocks.push(block);
    }
    if assigned.len() != all.len() {
        return Err(Error::Structural("double cosets do not cover the group".into()));
    }
    Ok(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_compositions() {
        let c = SignedPermutation::generator(2, Gen::C).unwrap();
        let a = SignedPermutation::generator(2, Gen::A(1)).unwrap();
        assert!(c.compose(&c).unwrap().is_identity());
        let w2 = a.compose(&c).unwrap().compose(&a).unwrap();
        assert_eq!(w2, SignedPermutation::sign_change(2, 2));
        let minus = c.compose(&w2).unwrap();
        assert_eq!(minus.images(), &[-1, -2]);
        assert_eq!(minus.length(), 4);
    }

    #[test]
    fn rank_mismatch() {
        let a = SignedPermutation::identity(2);
        let b = SignedPermutation::identity(3);
        assert!(matches!(a.compose(&b), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn text_round_trip() {
        let w: SignedPermutation = "[-2, 1]".parse().unwrap();
        assert_eq!(w.to_string(), "[-2, 1]");
        assert!("[2, 2]".parse::<SignedPermutation>().is_err());
    }

    #[test]
    fn bound_enforced() {
        assert!(matches!(enumerate(7), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn left_and_right_generator_actions() {
        let w: SignedPermutation = "[-3, 1, 2]".parse().unwrap();
        for g in SignedPermutation::generators(3) {
            let s = SignedPermutation::generator(3, g).unwrap();
            assert_eq!(w.mul_gen(g), w.compose(&s).unwrap());
            assert_eq!(w.gen_mul(g), s.compose(&w).unwrap());
        }
    }
}
