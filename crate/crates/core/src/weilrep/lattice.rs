//! Residue-window model of the lattice Fourier analysis on a hermitian
//! space `V` over the unramified quadratic extension of ℚ_p.
//!
//! Coordinates are taken in a basis diagonalising the Gram matrix as
//! `diag(ϖ^{v_1}, …, ϖ^{v_m})` with `v_i ∈ {0, 1}` and ϖ = p. A window
//! element is a tuple `x_i = ϖ^{-1}(a_i + b_i δ)` with `a_i, b_i` taken mod
//! `p^{2 - v_i}`, i.e. the window is `ϖ^{-1}Λ / ϖΛ^∨`. That quotient is the
//! smallest one on which the pairing `ψ_E((x, y))` is well defined and
//! perfect, so the finite Fourier transform is exact on it.

use num::{Integer, One, Zero};
use rayon::prelude::*;

use super::field::ResidueField;
use crate::error::{Error, Result};
use crate::exactalg::{CycScalar, Rat};
use crate::Sign;

/// Windows larger than this are refused.
pub const WINDOW_BOUND: usize = 1 << 20;

/// Diagonal hermitian lattice `Λ = ⊕ O_E e_i` with `(e_i, e_i) = ϖ^{v_i}`,
/// working precision `ϖ^{2}` (coordinates mod `p²` after scaling by ϖ).
#[derive(Clone, Debug)]
pub struct ResidueHermitianLattice {
    field: ResidueField,
    sign: Sign,
    vals: Vec<u32>,
    precision: u32,
}

impl ResidueHermitianLattice {
    /// Default lattice of half-dimension `d`: `diag(1, …, 1, ϖ)` for
    /// ε = − and the identity Gram for ε = +.
    pub fn new(p: u32, d: usize, sign: Sign) -> Result<Self> {
        if d == 0 {
            return Err(Error::Range("lattice half-dimension must be positive".into()));
        }
        let mut vals = vec![0; 2 * d];
        if sign == Sign::Minus {
            vals[2 * d - 1] = 1;
        }
        ResidueHermitianLattice::with_valuations(p, sign, vals)
    }

    pub fn with_valuations(p: u32, sign: Sign, vals: Vec<u32>) -> Result<Self> {
        let field = ResidueField::new(p)?;
        if vals.is_empty() || vals.iter().any(|&v| v > 1) {
            return Err(Error::Unsupported("Gram valuations must lie in {0, 1}".into()));
        }
        let odd = vals.iter().sum::<u32>() % 2;
        if (odd == 1) != (sign == Sign::Minus) {
            return Err(Error::Structural(format!(
                "Gram valuations {vals:?} do not give a lattice of sign {sign}"
            )));
        }
        let l = ResidueHermitianLattice { field, sign, vals, precision: 1 };
        let size = l.moduli().iter().try_fold(1usize, |acc, &m| acc.checked_mul(m * m));
        match size {
            Some(s) if s <= WINDOW_BOUND => Ok(l),
            _ => Err(Error::Unsupported(format!(
                "residue window for p = {p}, dim = {} exceeds {WINDOW_BOUND} elements",
                l.vals.len()
            ))),
        }
    }

    pub fn field(&self) -> &ResidueField {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn dim(&self) -> usize {
        self.vals.len()
    }

    pub fn valuations(&self) -> &[u32] {
        &self.vals
    }

    /// Gram matrix over `(ℤ/p^{2N})[δ]` as `(a, b)` pairs for `a + bδ`.
    pub fn gram(&self) -> Vec<Vec<(u64, u64)>> {
        let m = self.dim();
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| if i == j { ((self.p() as u64).pow(self.vals[i]), 0) } else { (0, 0) })
                    .collect()
            })
            .collect()
    }

    pub fn is_hermitian(&self) -> bool {
        let g = self.gram();
        let modulus = (self.p() as u64).pow(2 * self.precision);
        (0..g.len()).all(|i| {
            (0..g.len()).all(|j| {
                let (a, b) = g[j][i];
                g[i][j] == (a % modulus, (modulus - b % modulus) % modulus)
            })
        })
    }

    /// `[Λ^∨ : Λ]` from the elementary divisors of the Gram.
    pub fn dual_index(&self) -> u64 {
        self.vals.iter().map(|&v| (self.p() as u64).pow(2 * v)).product()
    }

    /// Per-coordinate modulus `p^{2 - v_i}` of `a_i` and `b_i`.
    pub fn moduli(&self) -> Vec<usize> {
        self.vals.iter().map(|&v| (self.p() as usize).pow(2 - v)).collect()
    }

    /// `|A|`.
    pub fn window_size(&self) -> usize {
        self.moduli().iter().map(|m| m * m).product()
    }

    /// `log_p |A|`, always even.
    pub fn window_log(&self) -> u32 {
        self.vals.iter().map(|&v| 2 * (2 - v)).sum()
    }

    /// Coordinates `[(a_1, b_1), …]` of window element `idx`.
    pub fn coords(&self, mut idx: usize) -> Vec<(i64, i64)> {
        let mods = self.moduli();
        let mut out = vec![(0, 0); mods.len()];
        for (i, &m) in mods.iter().enumerate().rev() {
            let b = idx % m;
            idx /= m;
            let a = idx % m;
            idx /= m;
            out[i] = (a as i64, b as i64);
        }
        out
    }

    pub fn index_of(&self, coords: &[(i64, i64)]) -> usize {
        let mods = self.moduli();
        let mut idx = 0usize;
        for (&(a, b), &m) in coords.iter().zip(&mods) {
            let m = m as i64;
            idx = idx * m as usize + a.rem_euclid(m) as usize;
            idx = idx * m as usize + b.rem_euclid(m) as usize;
        }
        idx
    }

    fn all_coords(&self) -> Vec<Vec<(i64, i64)>> {
        (0..self.window_size()).map(|i| self.coords(i)).collect()
    }

    /// Exponent `t` with `ψ_E((x, y)) = ζ_{p²}^t`.
    pub fn pairing_exp(&self, x: &[(i64, i64)], y: &[(i64, i64)]) -> i64 {
        let p = self.p() as i64;
        let n = self.field.nonresidue() as i64;
        let mut t = 0i64;
        for ((&(a, b), &(c, d)), &v) in x.iter().zip(y).zip(&self.vals) {
            t += 2 * p.pow(v) * (a * c - n * b * d);
        }
        t.rem_euclid(p * p)
    }

    /// Exponent `t` with `ψ_F((x, x)) = ζ_{p²}^t`.
    pub fn norm_exp(&self, x: &[(i64, i64)]) -> i64 {
        let p = self.p() as i64;
        let n = self.field.nonresidue() as i64;
        let mut t = 0i64;
        for (&(a, b), &v) in x.iter().zip(&self.vals) {
            t += p.pow(v) * (a * a - n * b * b);
        }
        t.rem_euclid(p * p)
    }

    pub fn in_lattice(&self, x: &[(i64, i64)]) -> bool {
        let p = self.p() as i64;
        x.iter().all(|&(a, b)| a % p == 0 && b % p == 0)
    }

    pub fn in_dual(&self, x: &[(i64, i64)]) -> bool {
        let p = self.p() as i64;
        x.iter().zip(&self.vals).all(|(&(a, b), &v)| v == 1 || (a % p == 0 && b % p == 0))
    }

    /// Checks that the pairing and the norm character only depend on the
    /// window class, i.e. are unchanged when a coordinate is moved by its
    /// modulus. Returns the first offending coordinate description.
    pub fn check_window(&self) -> std::result::Result<(), String> {
        let p = self.p() as i64;
        let n = self.field.nonresidue() as i64;
        let modulus = p * p;
        for (i, (&v, &m)) in self.vals.iter().zip(&self.moduli()).enumerate() {
            let w = p.pow(v);
            let m = m as i64;
            for a in 0..m {
                for b in 0..m {
                    let nx = w * (a * a - n * b * b);
                    for (da, db) in [(m, 0), (0, m)] {
                        let (a2, b2) = (a + da, b + db);
                        if (w * (a2 * a2 - n * b2 * b2) - nx).rem_euclid(modulus) != 0 {
                            return Err(format!("norm character not periodic in coordinate {i}"));
                        }
                        for c in 0..m {
                            for d in 0..m {
                                let t1 = 2 * w * (a * c - n * b * d);
                                let t2 = 2 * w * (a2 * c - n * b2 * d);
                                if (t1 - t2).rem_euclid(modulus) != 0 {
                                    return Err(format!("pairing not periodic in coordinate {i}"));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// A function on the window `A` with values in ℚ(ζ_{p²}).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientFunction {
    n: u32,
    values: Vec<CycScalar>,
}

impl QuotientFunction {
    pub fn zero(l: &ResidueHermitianLattice) -> Self {
        let n = l.p() * l.p();
        QuotientFunction { n, values: vec![CycScalar::zero(n); l.window_size()] }
    }

    pub fn from_values(l: &ResidueHermitianLattice, values: Vec<CycScalar>) -> Result<Self> {
        let n = l.p() * l.p();
        if values.len() != l.window_size() || values.iter().any(|v| v.conductor() != n) {
            return Err(Error::Structural("values do not match the residue window".into()));
        }
        Ok(QuotientFunction { n, values })
    }

    /// `c·𝟙_S` for the set cut out by `pred` on coordinates.
    pub fn indicator<F>(l: &ResidueHermitianLattice, c: &Rat, pred: F) -> Self
    where
        F: Fn(&[(i64, i64)]) -> bool,
    {
        let n = l.p() * l.p();
        let values = (0..l.window_size())
            .map(|i| {
                if pred(&l.coords(i)) {
                    CycScalar::from_rat(n, c.clone())
                } else {
                    CycScalar::zero(n)
                }
            })
            .collect();
        QuotientFunction { n, values }
    }

    pub fn lattice_indicator(l: &ResidueHermitianLattice) -> Self {
        QuotientFunction::indicator(l, &Rat::one(), |x| l.in_lattice(x))
    }

    pub fn dual_indicator(l: &ResidueHermitianLattice) -> Self {
        QuotientFunction::indicator(l, &Rat::one(), |x| l.in_dual(x))
    }

    pub fn delta0(l: &ResidueHermitianLattice) -> Self {
        let mut f = QuotientFunction::zero(l);
        f.values[0] = CycScalar::one(f.n);
        f
    }

    pub fn values(&self) -> &[CycScalar] {
        &self.values
    }

    pub fn get(&self, idx: usize) -> &CycScalar {
        &self.values[idx]
    }

    pub fn set(&mut self, idx: usize, v: CycScalar) {
        assert_eq!(v.conductor(), self.n);
        self.values[idx] = v;
    }

    pub fn scale(&self, c: &Rat) -> Self {
        QuotientFunction { n: self.n, values: self.values.iter().map(|v| v.scale(c)).collect() }
    }

    /// `x ↦ f(−x)`.
    pub fn reflect(&self, l: &ResidueHermitianLattice) -> Self {
        let values = (0..self.values.len())
            .map(|i| {
                let neg: Vec<(i64, i64)> = l.coords(i).iter().map(|&(a, b)| (-a, -b)).collect();
                self.values[l.index_of(&neg)].clone()
            })
            .collect();
        QuotientFunction { n: self.n, values }
    }

    /// `Σ_x f(x)·conj(g(x))`.
    pub fn inner(&self, other: &QuotientFunction) -> CycScalar {
        let mut acc = CycScalar::zero(self.n);
        for (a, b) in self.values.iter().zip(&other.values) {
            if !a.is_zero() && !b.is_zero() {
                acc = &acc + &(a * &b.conj());
            }
        }
        acc
    }
}

/// `(1/√|A|) Σ_y f(y) ψ_E((x, y))`, evaluated with integer group-ring sums.
pub fn finite_fourier(f: &QuotientFunction, l: &ResidueHermitianLattice) -> QuotientFunction {
    let n = f.n;
    let nu = n as usize;
    assert_eq!(n, l.p() * l.p(), "function and lattice live on different windows");
    // common denominator of every coefficient
    let mut den = num::BigInt::one();
    for v in &f.values {
        for c in v.coeffs() {
            den = den.lcm(c.denom());
        }
    }
    let support: Vec<(Vec<(i64, i64)>, Vec<(usize, i64)>)> = f
        .values
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| {
            let ints = v
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| {
                    let scaled = c.numer() * (&den / c.denom());
                    let k: i64 = scaled.try_into().expect("coefficient fits in i64");
                    (j, k)
                })
                .collect();
            (l.coords(i), ints)
        })
        .collect();
    let half = l.window_log() / 2;
    let scale = Rat::new(num::BigInt::one(), den * num::BigInt::from(l.p()).pow(half));
    let coords = l.all_coords();
    let values = coords
        .par_iter()
        .map(|x| {
            let mut acc = vec![0i64; nu];
            for (y, ints) in &support {
                let e = l.pairing_exp(x, y) as usize;
                for &(j, k) in ints {
                    acc[(j + e) % nu] += k;
                }
            }
            CycScalar::from_group_ring(n, &acc).scale(&scale)
        })
        .collect();
    QuotientFunction { n, values }
}

/// One labelled outcome of a lattice check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeCheck {
    pub name: &'static str,
    pub pass: bool,
    pub counterexample: Option<String>,
}

/// Outcome of the generator-lemma verification on a residue window.
#[derive(Clone, Debug)]
pub struct GeneratorLemmaOutcome {
    pub p: u32,
    pub d: usize,
    pub sign: Sign,
    pub window_size: usize,
    pub dual_index: u64,
    /// `(ε1)^r` times the number of residues `b`, i.e. the expected
    /// eigenvalue on `𝟙_Λ`.
    pub expected_eigenvalue: i64,
    pub checks: Vec<LatticeCheck>,
}

impl GeneratorLemmaOutcome {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_counterexample(&self) -> Option<String> {
        self.checks.iter().find_map(|c| c.counterexample.clone())
    }
}

fn first_mismatch<F>(l: &ResidueHermitianLattice, ok: F) -> Option<String>
where
    F: Fn(usize, &[(i64, i64)]) -> bool + Sync,
{
    (0..l.window_size())
        .into_par_iter()
        .find_first(|&i| !ok(i, &l.coords(i)))
        .map(|i| format!("window element {i} = {:?}", l.coords(i)))
}

/// Evaluates `(ε1)·Σ_{b ∈ 𝔽_p} ψ_F(b(x, x))·𝟙̂_Λ(x)` on the window and
/// compares with `−𝟙_Λ` (ε = −) or `q·𝟙_Λ` (ε = +), together with the
/// description of `Λ` inside `Λ^∨` by the norm character.
pub fn verify_generator_lemma(p: u32, d: usize, sign: Sign) -> Result<GeneratorLemmaOutcome> {
    let l = ResidueHermitianLattice::new(p, d, sign)?;
    let n = p * p;
    let mut checks = Vec::new();

    let window = l.check_window();
    checks.push(LatticeCheck {
        name: "window_well_defined",
        pass: window.is_ok(),
        counterexample: window.err(),
    });
    let herm = l.is_hermitian();
    checks.push(LatticeCheck {
        name: "gram_hermitian",
        pass: herm,
        counterexample: (!herm).then(|| "Gram is not hermitian".to_string()),
    });
    let in_dual = (0..l.window_size()).filter(|&i| l.in_dual(&l.coords(i))).count() as u64;
    let in_lat = (0..l.window_size()).filter(|&i| l.in_lattice(&l.coords(i))).count() as u64;
    let index_ok = in_dual == in_lat * l.dual_index();
    checks.push(LatticeCheck {
        name: "dual_index",
        pass: index_ok,
        counterexample: (!index_ok)
            .then(|| format!("counted index {} vs {}", in_dual / in_lat.max(1), l.dual_index())),
    });

    // 𝟙̂_Λ = vol(Λ)·𝟙_{Λ^∨} with vol(Λ) = [Λ^∨:Λ]^{-1/2}
    let one_lat = QuotientFunction::lattice_indicator(&l);
    let hat = finite_fourier(&one_lat, &l);
    let vol = Rat::new(1.into(), num::BigInt::from(l.dual_index()).sqrt());
    let want_hat = QuotientFunction::dual_indicator(&l).scale(&vol);
    checks.push(LatticeCheck {
        name: "fourier_of_lattice_indicator",
        pass: hat == want_hat,
        counterexample: first_mismatch(&l, |i, _| hat.get(i) == want_hat.get(i)),
    });

    let sign_r: i64 = if sign == Sign::Minus { -1 } else { 1 };
    let image: Vec<CycScalar> = (0..l.window_size())
        .into_par_iter()
        .map(|i| {
            let x = l.coords(i);
            let e = l.norm_exp(&x);
            let mut counts = vec![0i64; n as usize];
            for b in 0..p as i64 {
                counts[(b * e).rem_euclid(n as i64) as usize] += sign_r;
            }
            &CycScalar::from_group_ring(n, &counts) * hat.get(i)
        })
        .collect();
    let expected = if sign == Sign::Minus { -1 } else { p as i64 };
    let want = QuotientFunction::lattice_indicator(&l).scale(&Rat::from_integer(expected.into()));
    checks.push(LatticeCheck {
        name: "double_coset_operator_on_lattice_indicator",
        pass: image.iter().zip(want.values()).all(|(a, b)| a == b),
        counterexample: first_mismatch(&l, |i, _| &image[i] == want.get(i)),
    });

    // Λ = {x ∈ Λ^∨ : ψ_F((x, x)) = 1}
    let support_cx = first_mismatch(&l, |_, x| {
        l.in_lattice(x) == (l.in_dual(x) && l.norm_exp(x) == 0)
    });
    checks.push(LatticeCheck {
        name: "support_identity",
        pass: support_cx.is_none(),
        counterexample: support_cx,
    });

    Ok(GeneratorLemmaOutcome {
        p,
        d,
        sign,
        window_size: l.window_size(),
        dual_index: l.dual_index(),
        expected_eigenvalue: expected,
        checks,
    })
}
