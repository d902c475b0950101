//! Weil representation of `U₂(𝔽_p)` on functions `𝔽_{p²} → ℚ(ζ_p)`, the
//! rank-one finite dual pair with a one-dimensional hermitian space
//! `(x, y) = x ȳ`.
//!
//! Operators are exact matrices over `p^{-k}·ℤ[ζ_p]`. The group is
//! `{g : g J g* = J}`, `J = [[0, 1], [−1, 0]]`, with Borel subgroup the
//! upper triangular elements. On generators
//!
//! * `ω(n(b))φ(x) = ψ(b·T(x))φ(x)` with `T(x) = x x̄`,
//! * `ω(m(α))φ(x) = χ(α)φ(xα)`,
//! * `ω(J)φ(x) = −γ·p^{-1} Σ_y ψ(tr(x ȳ))φ(y)`,
//!
//! and every element is expanded through its Bruhat factorisation. The
//! pair `(χ, γ)` is fixed by [`calibrate_finite_weil`].

use std::collections::{HashMap, HashSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::field::{Fp2, ResidueField};
use crate::error::{Error, Result};
use crate::exactalg::{kernel_cyc, CycScalar, Rat};

pub type Mat2 = [[Fp2; 2]; 2];

/// Square matrix with entries `p^{-den}·Σ_{k<p-1} c_k ζ_p^k`, `c_k ∈ ℤ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZMat {
    p: u32,
    dim: usize,
    den: u32,
    data: Vec<i64>,
}

impl ZMat {
    fn width(p: u32) -> usize {
        p as usize - 1
    }

    pub fn zero(p: u32, dim: usize) -> Self {
        ZMat { p, dim, den: 0, data: vec![0; dim * dim * ZMat::width(p)] }
    }

    pub fn identity(p: u32, dim: usize) -> Self {
        let mut m = ZMat::zero(p, dim);
        for i in 0..dim {
            m.set_root(i, i, 1, 0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        (i * self.dim + j) * ZMat::width(self.p)
    }

    /// Entry `(i, j)` := `c·ζ_p^k` (before the `p^{-den}` scale).
    fn set_root(&mut self, i: usize, j: usize, c: i64, k: i64) {
        let w = ZMat::width(self.p);
        let s = self.slot(i, j);
        self.data[s..s + w].iter_mut().for_each(|x| *x = 0);
        let k = k.rem_euclid(self.p as i64) as usize;
        if k < w {
            self.data[s + k] = c;
        } else {
            // ζ^{p-1} = −(1 + ζ + … + ζ^{p-2})
            self.data[s..s + w].iter_mut().for_each(|x| *x = -c);
        }
    }

    fn entry_is_zero(&self, i: usize, j: usize) -> bool {
        let s = self.slot(i, j);
        self.data[s..s + ZMat::width(self.p)].iter().all(|&x| x == 0)
    }

    fn normalize(mut self) -> Self {
        let p = self.p as i64;
        while self.den > 0 && self.data.iter().all(|x| x % p == 0) {
            self.data.iter_mut().for_each(|x| *x /= p);
            self.den -= 1;
        }
        self
    }

    pub fn mul(&self, other: &ZMat) -> ZMat {
        assert_eq!((self.p, self.dim), (other.p, other.dim));
        let (p, dim, w) = (self.p as usize, self.dim, ZMat::width(self.p));
        let mut out = ZMat::zero(self.p, dim);
        out.den = self.den + other.den;
        let mut acc = vec![0i64; p];
        for i in 0..dim {
            for j in 0..dim {
                acc.iter_mut().for_each(|x| *x = 0);
                let mut any = false;
                for k in 0..dim {
                    if self.entry_is_zero(i, k) || other.entry_is_zero(k, j) {
                        continue;
                    }
                    any = true;
                    let a = &self.data[self.slot(i, k)..self.slot(i, k) + w];
                    let b = &other.data[other.slot(k, j)..other.slot(k, j) + w];
                    for (s, &x) in a.iter().enumerate() {
                        if x == 0 {
                            continue;
                        }
                        for (t, &y) in b.iter().enumerate() {
                            acc[(s + t) % p] += x * y;
                        }
                    }
                }
                if any {
                    let top = acc[p - 1];
                    let so = out.slot(i, j);
                    for s in 0..w {
                        out.data[so + s] = acc[s] - top;
                    }
                }
            }
        }
        out.normalize()
    }

    pub fn entry(&self, i: usize, j: usize) -> CycScalar {
        let scale = Rat::new(1.into(), num::BigInt::from(self.p).pow(self.den));
        let s = self.slot(i, j);
        let coeffs: Vec<Rat> = self.data[s..s + ZMat::width(self.p)]
            .iter()
            .map(|&c| Rat::from_integer(c.into()) * &scale)
            .collect();
        CycScalar::from_dense(self.p, coeffs)
    }

    pub fn column(&self, j: usize) -> Vec<CycScalar> {
        (0..self.dim).map(|i| self.entry(i, j)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<CycScalar>> {
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.entry(i, j)).collect()).collect()
    }
}

/// The determinant-twist characters tried by the calibration. The
/// quadratic character of 𝔽_{p²}^× is `η∘N`, so it is not listed twice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TwistCharacter {
    Trivial,
    EtaNorm,
}

impl TwistCharacter {
    pub fn all() -> [TwistCharacter; 2] {
        [TwistCharacter::Trivial, TwistCharacter::EtaNorm]
    }

    pub fn name(self) -> &'static str {
        match self {
            TwistCharacter::Trivial => "trivial",
            TwistCharacter::EtaNorm => "eta_norm",
        }
    }

    fn value(self, f: &ResidueField, a: Fp2) -> i64 {
        match self {
            TwistCharacter::Trivial => 1,
            TwistCharacter::EtaNorm => f.legendre(f.norm(a) as i64) as i64,
        }
    }
}

impl fmt::Display for TwistCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Moment matrix `((x_i, x_j))` for the form `(x, y) = x ȳ`.
pub fn moment_matrix(f: &ResidueField, xs: &[Fp2]) -> Vec<Vec<Fp2>> {
    xs.iter().map(|&x| xs.iter().map(|&y| f.mul(x, f.conj(y))).collect()).collect()
}

/// `U₂(𝔽_p)` by exhaustive search over 2×2 matrices.
#[derive(Clone, Debug)]
pub struct UnitaryGroup {
    field: ResidueField,
    elems: Vec<Mat2>,
    index: HashMap<Mat2, usize>,
}

/// Bruhat cell of an element with its factorisation data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bruhat {
    /// `n(b)·m(a)`.
    Borel { b: u32, a: Fp2 },
    /// `n(b1)·m(a)·J·n(b2)`.
    Big { b1: u32, a: Fp2, b2: u32 },
}

impl UnitaryGroup {
    pub fn new(field: &ResidueField) -> Self {
        let els = field.elements();
        let mut elems = Vec::new();
        for &a in &els {
            for &b in &els {
                for &c in &els {
                    for &d in &els {
                        let g = [[a, b], [c, d]];
                        if Self::preserves(field, &g) {
                            elems.push(g);
                        }
                    }
                }
            }
        }
        let index = elems.iter().enumerate().map(|(i, g)| (*g, i)).collect();
        UnitaryGroup { field: field.clone(), elems, index }
    }

    fn preserves(f: &ResidueField, g: &Mat2) -> bool {
        // g J g* = J
        let j = Self::j(f);
        let gs = [[f.conj(g[0][0]), f.conj(g[1][0])], [f.conj(g[0][1]), f.conj(g[1][1])]];
        mat_mul(f, &mat_mul(f, g, &j), &gs) == j
    }

    fn j(f: &ResidueField) -> Mat2 {
        [[Fp2::ZERO, Fp2::ONE], [f.neg(Fp2::ONE), Fp2::ZERO]]
    }

    pub fn field(&self) -> &ResidueField {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> &[Mat2] {
        &self.elems
    }

    pub fn index_of(&self, g: &Mat2) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn mul(&self, g: &Mat2, h: &Mat2) -> Mat2 {
        mat_mul(&self.field, g, h)
    }

    pub fn is_borel(g: &Mat2) -> bool {
        g[1][0].is_zero()
    }

    pub fn borel(&self) -> Vec<usize> {
        (0..self.elems.len()).filter(|&i| Self::is_borel(&self.elems[i])).collect()
    }

    pub fn n(&self, b: u32) -> Mat2 {
        [[Fp2::ONE, self.field.from_fp(b as i64)], [Fp2::ZERO, Fp2::ONE]]
    }

    pub fn m(&self, a: Fp2) -> Mat2 {
        let f = &self.field;
        let ai = f.inv(f.conj(a)).expect("unit");
        [[a, Fp2::ZERO], [Fp2::ZERO, ai]]
    }

    pub fn w(&self) -> Mat2 {
        Self::j(&self.field)
    }

    /// `n(1)`, `m(g₀)` for a generator g₀ of 𝔽_{p²}^×, and `J`.
    pub fn generators(&self) -> Vec<Mat2> {
        vec![self.n(1), self.m(self.field.generator()), self.w()]
    }

    pub fn bruhat(&self, g: &Mat2) -> Result<Bruhat> {
        let f = &self.field;
        let [[al, be], [ga, de]] = *g;
        let in_fp = |x: Fp2, what: &str| {
            if x.b == 0 {
                Ok(x.a)
            } else {
                Err(Error::Structural(format!("{what} = {x} is not in the prime field")))
            }
        };
        if ga.is_zero() {
            let b = in_fp(f.mul(be, f.conj(al)), "unipotent part")?;
            return Ok(Bruhat::Borel { b, a: al });
        }
        let gi = f.inv(ga).expect("nonzero");
        let a = f.conj(f.neg(gi));
        let b1 = in_fp(f.mul(al, gi), "left unipotent part")?;
        let b2 = in_fp(f.mul(de, gi), "right unipotent part")?;
        Ok(Bruhat::Big { b1, a, b2 })
    }
}

fn mat_mul(f: &ResidueField, x: &Mat2, y: &Mat2) -> Mat2 {
    let mut out = [[Fp2::ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = f.add(f.mul(x[i][0], y[0][j]), f.mul(x[i][1], y[1][j]));
        }
    }
    out
}

/// Generator operators for one choice of `(χ, γ)`.
struct Generators {
    n: Vec<ZMat>,
    m: HashMap<Fp2, ZMat>,
    w: ZMat,
}

impl Generators {
    fn build(f: &ResidueField, chi: TwistCharacter, gamma: i64) -> Self {
        let p = f.p();
        let els = f.elements();
        let dim = els.len();
        let n = (0..p)
            .map(|b| {
                let mut z = ZMat::zero(p, dim);
                for &x in &els {
                    let t = moment_matrix(f, &[x])[0][0];
                    debug_assert_eq!(t.b, 0);
                    let i = f.index(x);
                    z.set_root(i, i, 1, (b as i64) * t.a as i64);
                }
                z
            })
            .collect();
        let m = els
            .iter()
            .filter(|a| !a.is_zero())
            .map(|&a| {
                let mut z = ZMat::zero(p, dim);
                let c = chi.value(f, a);
                for &x in &els {
                    z.set_root(f.index(x), f.index(f.mul(x, a)), c, 0);
                }
                (a, z)
            })
            .collect();
        let mut w = ZMat::zero(p, dim);
        w.den = 1;
        for &x in &els {
            for &y in &els {
                let t = f.trace(f.mul(x, f.conj(y)));
                w.set_root(f.index(x), f.index(y), -gamma, t as i64);
            }
        }
        Generators { n, m, w }
    }

    fn omega(&self, cell: Bruhat) -> ZMat {
        match cell {
            Bruhat::Borel { b, a } => self.n[b as usize].mul(&self.m[&a]),
            Bruhat::Big { b1, a, b2 } => self.n[b1 as usize]
                .mul(&self.m[&a])
                .mul(&self.w)
                .mul(&self.n[b2 as usize]),
        }
    }
}

/// Outcome of one calibration candidate.
#[derive(Clone, Debug, Serialize)]
pub struct CandidateOutcome {
    pub chi: TwistCharacter,
    pub gamma: i64,
    pub homomorphism: bool,
    /// First `(s, g)` with `ω(sg) ≠ ω(s)ω(g)`, as group indices.
    pub violated: Option<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Calibration {
    pub chi: TwistCharacter,
    pub gamma: i64,
    pub candidates: Vec<CandidateOutcome>,
}

impl Calibration {
    pub fn gamma_scalar(&self, p: u32) -> CycScalar {
        CycScalar::from_rat(p, Rat::from_integer(self.gamma.into()))
    }
}

/// Calibrated Weil representation of `U₂(𝔽_p)`.
#[derive(Clone, Debug)]
pub struct FiniteWeilModel {
    group: UnitaryGroup,
    ops: Vec<ZMat>,
    calibration: Calibration,
}

fn operators(group: &UnitaryGroup, gens: &Generators) -> Result<Vec<ZMat>> {
    let cells = group
        .elements()
        .iter()
        .map(|g| group.bruhat(g))
        .collect::<Result<Vec<_>>>()?;
    Ok(cells.into_par_iter().map(|c| gens.omega(c)).collect())
}

/// First `(s, g)` with `ω(sg) ≠ ω(s)ω(g)` for `s` among the generators.
/// No violation means `ω` is a homomorphism: by induction on word length
/// `ω(xg) = ω(x)ω(g)` for every product `x` of generators.
fn generator_violation(group: &UnitaryGroup, ops: &[ZMat]) -> Option<(usize, usize)> {
    let gens: Vec<usize> = group
        .generators()
        .iter()
        .map(|s| group.index_of(s).expect("generator lies in the group"))
        .collect();
    let pairs: Vec<(usize, usize)> =
        gens.iter().flat_map(|&s| (0..group.order()).map(move |g| (s, g))).collect();
    pairs.into_par_iter().find_first(|&(s, g)| !pair_ok(group, ops, s, g))
}

fn pair_ok(group: &UnitaryGroup, ops: &[ZMat], i: usize, j: usize) -> bool {
    let e = group.elements();
    let k = group.index_of(&group.mul(&e[i], &e[j])).expect("group is closed");
    ops[k] == ops[i].mul(&ops[j])
}

/// Builds `U₂(𝔽_p)`, tries every `(χ, γ) ∈ {trivial, η∘N} × {1, −1}` in
/// that order and keeps the first homomorphism.
pub fn calibrate_finite_weil(p: u32) -> Result<FiniteWeilModel> {
    if p != 3 && p != 5 {
        return Err(Error::Unsupported(format!("finite Weil model supports p ∈ {{3, 5}}, got {p}")));
    }
    let field = ResidueField::new(p)?;
    let group = UnitaryGroup::new(&field);
    let expected = (p * (p * p - 1) * (p + 1)) as usize;
    if group.order() != expected {
        return Err(Error::Structural(format!(
            "enumerated {} unitary matrices, expected {expected}",
            group.order()
        )));
    }
    let mut candidates = Vec::new();
    let mut chosen: Option<(TwistCharacter, i64, Vec<ZMat>)> = None;
    for chi in TwistCharacter::all() {
        for gamma in [1i64, -1] {
            let gens = Generators::build(&field, chi, gamma);
            let ops = operators(&group, &gens)?;
            let violated = generator_violation(&group, &ops);
            candidates.push(CandidateOutcome { chi, gamma, homomorphism: violated.is_none(), violated });
            if violated.is_none() && chosen.is_none() {
                chosen = Some((chi, gamma, ops));
            }
        }
    }
    let Some((chi, gamma, ops)) = chosen else {
        let first = candidates[0].violated.expect("failed candidate");
        return Err(Error::Calibration(format!(
            "no (χ, γ) candidate gives a homomorphism; first violated pair {first:?}"
        )));
    };
    Ok(FiniteWeilModel { group, ops, calibration: Calibration { chi, gamma, candidates } })
}

/// Result of a pair check.
#[derive(Clone, Debug, Serialize)]
pub struct PairCheck {
    pub pairs: usize,
    pub exhaustive: bool,
    pub violated: Option<(usize, usize)>,
}

impl FiniteWeilModel {
    pub fn p(&self) -> u32 {
        self.group.field().p()
    }

    pub fn r(&self) -> usize {
        1
    }

    pub fn dim(&self) -> usize {
        (self.p() * self.p()) as usize
    }

    pub fn group(&self) -> &UnitaryGroup {
        &self.group
    }

    pub fn calibration(&self) -> &Calibration {
        &self.calibration
    }

    pub fn omega(&self, idx: usize) -> &ZMat {
        &self.ops[idx]
    }

    pub fn omega_of(&self, g: &Mat2) -> Option<&ZMat> {
        self.group.index_of(g).map(|i| &self.ops[i])
    }

    /// `ω(g)ω(h) = ω(gh)` over all pairs.
    pub fn check_all_pairs(&self) -> PairCheck {
        let n = self.group.order();
        let violated = (0..n * n)
            .into_par_iter()
            .map(|k| (k / n, k % n))
            .find_first(|&(i, j)| !pair_ok(&self.group, &self.ops, i, j));
        PairCheck { pairs: n * n, exhaustive: true, violated }
    }

    /// Same on `count` pairs drawn with a seeded ChaCha stream.
    pub fn check_sampled_pairs(&self, count: usize, seed: u64) -> PairCheck {
        let n = self.group.order();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pairs: Vec<(usize, usize)> =
            (0..count).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
        let violated = pairs.into_par_iter().find_first(|&(i, j)| !pair_ok(&self.group, &self.ops, i, j));
        PairCheck { pairs: count, exhaustive: false, violated }
    }

    /// Exhaustive proof via generators times all elements.
    pub fn check_generators(&self) -> PairCheck {
        let violated = generator_violation(&self.group, &self.ops);
        PairCheck { pairs: 3 * self.group.order(), exhaustive: true, violated }
    }
}

/// Borel-fixed vectors and the action of the big double coset on them.
#[derive(Clone, Debug, Serialize)]
pub struct BorelReport {
    pub borel_order: usize,
    pub group_order: usize,
    pub dimension: usize,
    pub spanned_by_delta0: bool,
    /// `(1/|B|)·Σ_{g ∈ BwB} ω(g)δ_0` at 0, as cyclotomic text.
    pub eigenvalue: String,
    pub eigenvalue_is_minus_one: bool,
    /// `Σ_{g ∈ BwB} ω(g)δ_0` vanishes off the origin.
    pub supported_at_origin: bool,
    pub full_group_sum_zero: bool,
}

impl BorelReport {
    pub fn pass(&self) -> bool {
        self.dimension == 1
            && self.spanned_by_delta0
            && self.eigenvalue_is_minus_one
            && self.supported_at_origin
            && self.full_group_sum_zero
    }
}

fn column_sum(p: u32, dim: usize, mats: &[&ZMat], j: usize) -> Vec<CycScalar> {
    let mut acc = vec![CycScalar::zero(p); dim];
    for m in mats {
        for (i, v) in m.column(j).into_iter().enumerate() {
            if !v.is_zero() {
                acc[i] = &acc[i] + &v;
            }
        }
    }
    acc
}

/// Joint fixed space of `ω(B)` and the normalised `BwB` eigenvalue on it.
pub fn borel_invariants(model: &FiniteWeilModel) -> BorelReport {
    let p = model.p();
    let dim = model.dim();
    let borel = model.group.borel();
    let mut rows: HashSet<Vec<CycScalar>> = HashSet::new();
    let mut ordered = Vec::new();
    for &b in &borel {
        for (i, mut row) in model.ops[b].rows().into_iter().enumerate() {
            row[i] = &row[i] - &CycScalar::one(p);
            if row.iter().any(|x| !x.is_zero()) && rows.insert(row.clone()) {
                ordered.push(row);
            }
        }
    }
    let kernel = kernel_cyc(&ordered, dim, p);
    let spanned_by_delta0 =
        kernel.len() == 1 && kernel[0].iter().skip(1).all(|x| x.is_zero()) && !kernel[0][0].is_zero();

    let big: Vec<&ZMat> = (0..model.group.order())
        .filter(|i| !UnitaryGroup::is_borel(&model.group.elements()[*i]))
        .map(|i| &model.ops[i])
        .collect();
    let all: Vec<&ZMat> = model.ops.iter().collect();
    let big_sum = column_sum(p, dim, &big, 0);
    let eigen = big_sum[0].scale(&Rat::new(1.into(), (borel.len() as i64).into()));
    let full = column_sum(p, dim, &all, 0);
    BorelReport {
        borel_order: borel.len(),
        group_order: model.group.order(),
        dimension: kernel.len(),
        spanned_by_delta0,
        eigenvalue: eigen.to_string(),
        eigenvalue_is_minus_one: eigen == CycScalar::from_rat(p, -Rat::from_integer(1.into())),
        supported_at_origin: big_sum.iter().skip(1).all(|x| x.is_zero()),
        full_group_sum_zero: full.iter().all(|x| x.is_zero()),
    }
}
