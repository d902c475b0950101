use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{Integer, One, Signed, Zero};

use super::Rat;
use crate::error::{Error, Result};

/// Element of ℚ(ζ_n) for `n = p` or `n = p²` (p an odd prime), stored in
/// the power basis `1, ζ, …, ζ^{φ(n)-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycScalar {
    n: u32,
    coeffs: Vec<Rat>,
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Returns `p` with `n = p` or `n = p²`.
fn base_prime(n: u32) -> Option<u32> {
    if is_prime(n) {
        return Some(n);
    }
    let r = (n as f64).sqrt().round() as u32;
    if r * r == n && is_prime(r) {
        Some(r)
    } else {
        None
    }
}

impl CycScalar {
    pub fn check_conductor(n: u32) -> Result<u32> {
        match base_prime(n) {
            Some(p) if p % 2 == 1 => Ok(p),
            _ => Err(Error::Unsupported(format!(
                "cyclotomic conductor {n} is not an odd prime or prime square"
            ))),
        }
    }

    /// φ(n).
    pub fn degree(n: u32) -> usize {
        let p = base_prime(n).expect("conductor checked");
        (n - n / p) as usize
    }

    pub fn zero(n: u32) -> Self {
        CycScalar::check_conductor(n).expect("valid conductor");
        CycScalar {
            n,
            coeffs: vec![Rat::zero(); CycScalar::degree(n)],
        }
    }

    pub fn from_rat(n: u32, c: Rat) -> Self {
        let mut z = CycScalar::zero(n);
        z.coeffs[0] = c;
        z
    }

    pub fn one(n: u32) -> Self {
        CycScalar::from_rat(n, Rat::one())
    }

    /// `ζ_n^k`, `k` taken mod `n`.
    pub fn zeta(n: u32, k: i64) -> Self {
        let mut counts = vec![0i64; n as usize];
        counts[k.rem_euclid(n as i64) as usize] = 1;
        CycScalar::from_group_ring(n, &counts)
    }

    /// `Σ_k counts[k] ζ_n^k`.
    pub fn from_group_ring(n: u32, counts: &[i64]) -> Self {
        assert_eq!(counts.len(), n as usize);
        let dense: Vec<Rat> = counts.iter().map(|&c| Rat::from_integer(c.into())).collect();
        CycScalar::reduce(n, dense)
    }

    /// `Σ_k coeffs[k] ζ_n^k` for `k < n`; shorter vectors are zero-padded.
    pub fn from_dense(n: u32, mut coeffs: Vec<Rat>) -> Self {
        CycScalar::check_conductor(n).expect("valid conductor");
        assert!(coeffs.len() <= n as usize);
        coeffs.resize(n as usize, Rat::zero());
        CycScalar::reduce(n, coeffs)
    }

    /// Reduces a length-`n` dense vector modulo Φ_n.
    fn reduce(n: u32, mut dense: Vec<Rat>) -> Self {
        let p = base_prime(n).unwrap() as usize;
        let m = n as usize / p;
        let phi = n as usize - m;
        // ζ^{(p-1)m} = -Σ_{i<p-1} ζ^{im}
        for j in (phi..dense.len()).rev() {
            if dense[j].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut dense[j]);
            let base = j - (p - 1) * m;
            for i in 0..p - 1 {
                dense[base + i * m] -= &c;
            }
        }
        dense.truncate(phi);
        dense.resize(phi, Rat::zero());
        CycScalar { n, coeffs: dense }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.as_rat().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn as_rat(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        CycScalar {
            n: self.n,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    fn check_same(&self, other: &CycScalar) {
        assert_eq!(self.n, other.n, "cyclotomic conductors differ");
    }

    /// The automorphism `ζ ↦ ζ^k`, `gcd(k, n) = 1`.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.n as i64;
        assert_eq!(k.gcd(&n), 1, "not a Galois exponent");
        let mut dense = vec![Rat::zero(); self.n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                dense[((i as i64) * k).rem_euclid(n) as usize] += c;
            }
        }
        CycScalar::reduce(self.n, dense)
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Field norm to ℚ.
    pub fn norm(&self) -> Rat {
        let mut acc = CycScalar::one(self.n);
        for k in 1..self.n as i64 {
            if k.gcd(&(self.n as i64)) == 1 {
                acc = &acc * &self.galois(k);
            }
        }
        acc.as_rat().expect("norm is rational")
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(c) = self.as_rat() {
            return Ok(CycScalar::from_rat(self.n, c.recip()));
        }
        let mut acc = CycScalar::one(self.n);
        for k in 2..self.n as i64 {
            if k.gcd(&(self.n as i64)) == 1 {
                acc = &acc * &self.galois(k);
            }
        }
        let nm = (&acc * self).as_rat().expect("norm is rational");
        Ok(acc.scale(&nm.recip()))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = CycScalar::one(self.n);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        self.check_same(rhs);
        CycScalar {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        self.check_same(rhs);
        CycScalar {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        self.check_same(rhs);
        if let Some(c) = rhs.as_rat() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_rat() {
            return rhs.scale(&c);
        }
        let n = self.n as usize;
        let mut dense = vec![Rat::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    dense[(i + j) % n] += a * b;
                }
            }
        }
        CycScalar::reduce(self.n, dense)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: CycScalar) -> CycScalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let a = c.abs();
            let coef = super::lpoly::fmt_rat(&a);
            let body = match k {
                0 => coef,
                _ => {
                    let z = if k == 1 {
                        format!("z{}", self.n)
                    } else {
                        format!("z{}^{}", self.n, k)
                    };
                    if a.is_one() {
                        z
                    } else {
                        format!("{coef} {z}")
                    }
                }
            };
            match (first, c.is_negative()) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
