use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// `a + bδ` in 𝔽_{p²} = 𝔽_p[δ], coordinates reduced mod p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fp2 {
    pub a: u32,
    pub b: u32,
}

impl Fp2 {
    pub const ZERO: Fp2 = Fp2 { a: 0, b: 0 };
    pub const ONE: Fp2 = Fp2 { a: 1, b: 0 };

    pub fn is_zero(self) -> bool {
        self == Fp2::ZERO
    }
}

impl fmt::Display for Fp2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}d", self.a, self.b)
    }
}

fn is_odd_prime(p: u32) -> bool {
    p >= 3 && p % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// The residue field 𝔽_p together with its quadratic extension
/// 𝔽_p[δ], δ² = n for the least quadratic non-residue n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueField {
    p: u32,
    n: u32,
}

impl ResidueField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_odd_prime(p) {
            return Err(Error::Unsupported(format!("residue characteristic {p} is not an odd prime")));
        }
        let n = (2..p)
            .find(|&k| pow_mod(k as u64, ((p - 1) / 2) as u64, p as u64) == (p - 1) as u64)
            .expect("odd prime has a non-residue");
        Ok(ResidueField { p, n })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn nonresidue(&self) -> u32 {
        self.n
    }

    fn red(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    pub fn elem(&self, a: i64, b: i64) -> Fp2 {
        Fp2 { a: self.red(a), b: self.red(b) }
    }

    pub fn from_fp(&self, a: i64) -> Fp2 {
        self.elem(a, 0)
    }

    /// All p² elements, `a` major; `index` is the inverse.
    pub fn elements(&self) -> Vec<Fp2> {
        let p = self.p;
        (0..p).flat_map(|a| (0..p).map(move |b| Fp2 { a, b })).collect()
    }

    pub fn index(&self, x: Fp2) -> usize {
        (x.a * self.p + x.b) as usize
    }

    pub fn add(&self, x: Fp2, y: Fp2) -> Fp2 {
        self.elem(x.a as i64 + y.a as i64, x.b as i64 + y.b as i64)
    }

    pub fn sub(&self, x: Fp2, y: Fp2) -> Fp2 {
        self.elem(x.a as i64 - y.a as i64, x.b as i64 - y.b as i64)
    }

    pub fn neg(&self, x: Fp2) -> Fp2 {
        self.elem(-(x.a as i64), -(x.b as i64))
    }

    pub fn mul(&self, x: Fp2, y: Fp2) -> Fp2 {
        let (a, b, c, d) = (x.a as i64, x.b as i64, y.a as i64, y.b as i64);
        self.elem(a * c + self.n as i64 * b * d, a * d + b * c)
    }

    pub fn conj(&self, x: Fp2) -> Fp2 {
        self.elem(x.a as i64, -(x.b as i64))
    }

    /// `x x̄ ∈ 𝔽_p`.
    pub fn norm(&self, x: Fp2) -> u32 {
        let (a, b) = (x.a as i64, x.b as i64);
        self.red(a * a - self.n as i64 * b * b)
    }

    /// `x + x̄ ∈ 𝔽_p`.
    pub fn trace(&self, x: Fp2) -> u32 {
        self.red(2 * x.a as i64)
    }

    pub fn inv(&self, x: Fp2) -> Option<Fp2> {
        if x.is_zero() {
            return None;
        }
        let ni = pow_mod(self.norm(x) as u64, (self.p - 2) as u64, self.p as u64) as i64;
        Some(self.elem(x.a as i64 * ni, -(x.b as i64) * ni))
    }

    /// Legendre symbol of `t` mod p (0 at t ≡ 0).
    pub fn legendre(&self, t: i64) -> i32 {
        let t = self.red(t);
        if t == 0 {
            return 0;
        }
        if pow_mod(t as u64, ((self.p - 1) / 2) as u64, self.p as u64) == 1 {
            1
        } else {
            -1
        }
    }

    /// A generator of 𝔽_{p²}^×.
    pub fn generator(&self) -> Fp2 {
        let order = (self.p * self.p - 1) as usize;
        self.elements()
            .into_iter()
            .filter(|x| !x.is_zero())
            .find(|&g| {
                let mut x = Fp2::ONE;
                for k in 1..order {
                    x = self.mul(x, g);
                    if x == Fp2::ONE {
                        return k == order;
                    }
                }
                true
            })
            .expect("multiplicative group is cyclic")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for p in [3, 5, 7] {
            let f = ResidueField::new(p).unwrap();
            assert_eq!(f.legendre(f.nonresidue() as i64), -1);
            for x in f.elements() {
                assert_eq!(f.conj(f.conj(x)), x);
                if let Some(y) = f.inv(x) {
                    assert_eq!(f.mul(x, y), Fp2::ONE);
                }
                for y in f.elements() {
                    assert_eq!(f.conj(f.mul(x, y)), f.mul(f.conj(x), f.conj(y)));
                    assert_eq!(f.conj(f.add(x, y)), f.add(f.conj(x), f.conj(y)));
                }
            }
            let g = f.generator();
            let mut x = g;
            let mut k = 1;
            while x != Fp2::ONE {
                x = f.mul(x, g);
                k += 1;
            }
            assert_eq!(k, p * p - 1);
        }
    }

    #[test]
    fn rejects_even_and_composite() {
        assert!(ResidueField::new(2).is_err());
        assert!(ResidueField::new(9).is_err());
    }
}
