use std::collections::BTreeMap;

use num::{BigInt, Integer, One, Signed, Zero};

use super::{CycScalar, LPoly, RFunc, Rat};
use crate::error::{Error, Result};

/// Right kernel of a matrix over the fraction field of the Laurent ring.
///
/// Rows are cleared of denominators, then eliminated fraction-free
/// (`R ← p·R − r·P`) with the content of every touched row divided out.
/// Every returned vector is checked against every input row.
pub fn solve_kernel(rows: &[Vec<RFunc>]) -> Result<Vec<Vec<RFunc>>> {
    let ncols = match rows.first() {
        Some(r) => r.len(),
        None => return Ok(Vec::new()),
    };
    if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
        return Err(Error::RankMismatch {
            expected: ncols,
            found: bad.len(),
        });
    }
    let mut work: Vec<BTreeMap<usize, LPoly>> = rows
        .iter()
        .map(|r| clear_denominators(r))
        .filter(|r| !r.is_empty())
        .collect();

    let mut pivots: Vec<(usize, BTreeMap<usize, LPoly>)> = Vec::new();
    while !work.is_empty() {
        // sparsest row first, then the pivot column with the smallest entry
        let (ri, _) = work
            .iter()
            .enumerate()
            .min_by_key(|(_, r)| (r.len(), r.values().map(|p| p.num_terms()).sum::<usize>()))
            .unwrap();
        let prow = work.swap_remove(ri);
        let (&pc, _) = prow
            .iter()
            .min_by_key(|(c, p)| (p.num_terms(), **c))
            .unwrap();
        let pval = prow[&pc].clone();
        let reduce = |row: &mut BTreeMap<usize, LPoly>| {
            if let Some(r) = row.get(&pc).cloned() {
                let mut out = BTreeMap::new();
                let cols: Vec<usize> = row.keys().chain(prow.keys()).copied().collect();
                for c in cols {
                    if out.contains_key(&c) {
                        continue;
                    }
                    let a = row.get(&c).map(|x| x * &pval).unwrap_or_else(LPoly::zero);
                    let b = prow.get(&c).map(|x| x * &r).unwrap_or_else(LPoly::zero);
                    let v = &a - &b;
                    out.insert(c, v);
                }
                out.retain(|_, v| !v.is_zero());
                *row = normalize_row(out);
            }
        };
        for row in work.iter_mut() {
            reduce(row);
        }
        work.retain(|r| !r.is_empty());
        for (_, row) in pivots.iter_mut() {
            reduce(row);
        }
        pivots.push((pc, prow));
    }

    let pivot_cols: Vec<usize> = pivots.iter().map(|(c, _)| *c).collect();
    let mut basis = Vec::new();
    for f in 0..ncols {
        if pivot_cols.contains(&f) {
            continue;
        }
        let mut v = vec![RFunc::zero(); ncols];
        v[f] = RFunc::one();
        for (pc, row) in &pivots {
            if let Some(x) = row.get(&f) {
                v[*pc] = -&RFunc::new(x.clone(), row[pc].clone())?;
            }
        }
        basis.push(v);
    }

    for v in &basis {
        for (i, row) in rows.iter().enumerate() {
            let mut acc = RFunc::zero();
            for (a, b) in row.iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            if !acc.is_zero() {
                return Err(Error::Structural(format!(
                    "kernel vector fails row {i} after elimination"
                )));
            }
        }
    }
    Ok(basis)
}

fn clear_denominators(row: &[RFunc]) -> BTreeMap<usize, LPoly> {
    let mut dens: Vec<LPoly> = Vec::new();
    for x in row {
        if !x.is_zero() && !x.den().is_one() && !dens.contains(x.den()) {
            dens.push(x.den().clone());
        }
    }
    let mut out = BTreeMap::new();
    for (c, x) in row.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let mut v = x.num().clone();
        for d in &dens {
            if d != x.den() {
                v = &v * d;
            }
        }
        out.insert(c, v);
    }
    normalize_row(out)
}

/// Divides a row by its rational content, monomial content and, when every
/// entry lives in the same single variable, the gcd of its entries.
fn normalize_row(row: BTreeMap<usize, LPoly>) -> BTreeMap<usize, LPoly> {
    if row.is_empty() {
        return row;
    }
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    let mut mins: BTreeMap<String, i32> = BTreeMap::new();
    let mut seen_vars: BTreeMap<String, bool> = BTreeMap::new();
    for p in row.values() {
        for v in p.vars() {
            seen_vars.insert(v.clone(), true);
        }
    }
    for v in seen_vars.keys() {
        let mut m = i32::MAX;
        for p in row.values() {
            let (lo, _) = p.degree_range(v).unwrap();
            m = m.min(lo);
        }
        mins.insert(v.clone(), m);
    }
    for p in row.values() {
        for (_, c) in p.terms() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
    }
    let mut scale = Rat::new(den_lcm, num_gcd);
    let first = row.values().next().unwrap();
    if first.lowest_term().unwrap().as_constant().map(|c| c.is_negative()).unwrap_or(false) {
        scale = -scale;
    }
    let powers: Vec<(&str, i32)> = mins.iter().map(|(v, e)| (v.as_str(), -*e)).collect();
    let unit = LPoly::monomial(scale, &powers);
    let mut out: BTreeMap<usize, LPoly> = row.into_iter().map(|(c, p)| (c, &p * &unit)).collect();

    let single = {
        let mut names = out.values().flat_map(|p| p.vars().iter().cloned());
        match names.next() {
            Some(first) => names.all(|n| n == first),
            None => false,
        }
    };
    if single && out.len() > 1 {
        let mut g = LPoly::zero();
        for p in out.values() {
            g = LPoly::gcd_univariate(&g, p).unwrap();
            if g.is_one() {
                break;
            }
        }
        if !g.is_one() && !g.is_zero() {
            out = out
                .into_iter()
                .map(|(c, p)| (c, p.exact_div(&g).expect("gcd divides")))
                .collect();
        }
    }
    out
}

/// Right kernel over ℚ(ζ_n) by Gauss–Jordan elimination.
pub fn kernel_cyc(rows: &[Vec<CycScalar>], ncols: usize, n: u32) -> Vec<Vec<CycScalar>> {
    // pivot rows in reduced form, keyed by pivot column, pivot entry 1
    let mut piv: BTreeMap<usize, Vec<CycScalar>> = BTreeMap::new();
    for row in rows {
        let mut r = row.clone();
        for (pc, prow) in &piv {
            if !r[*pc].is_zero() {
                let f = r[*pc].clone();
                for c in 0..ncols {
                    if !prow[c].is_zero() {
                        r[c] = &r[c] - &(&f * &prow[c]);
                    }
                }
            }
        }
        let Some(pc) = (0..ncols).find(|&c| !r[c].is_zero()) else {
            continue;
        };
        let inv = r[pc].inv().expect("nonzero pivot");
        for c in 0..ncols {
            if !r[c].is_zero() {
                r[c] = &r[c] * &inv;
            }
        }
        for prow in piv.values_mut() {
            if !prow[pc].is_zero() {
                let f = prow[pc].clone();
                for c in 0..ncols {
                    if !r[c].is_zero() {
                        prow[c] = &prow[c] - &(&f * &r[c]);
                    }
                }
            }
        }
        piv.insert(pc, r);
        if piv.len() == ncols {
            break;
        }
    }
    let mut basis = Vec::new();
    for f in 0..ncols {
        if piv.contains_key(&f) {
            continue;
        }
        let mut v = vec![CycScalar::zero(n); ncols];
        v[f] = CycScalar::one(n);
        for (pc, prow) in &piv {
            v[*pc] = -&prow[f];
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> RFunc {
        RFunc::var("q")
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let rows = vec![
            vec![RFunc::one(), RFunc::zero()],
            vec![RFunc::zero(), RFunc::one()],
        ];
        assert!(solve_kernel(&rows).unwrap().is_empty());
    }

    #[test]
    fn zero_matrix_full_kernel() {
        let rows = vec![vec![RFunc::zero(); 3]; 2];
        assert_eq!(solve_kernel(&rows).unwrap().len(), 3);
    }

    #[test]
    fn rank_one_eigen_system() {
        // right multiplication by T_{w1} on span(T_e, T_{w1}) minus (−1):
        // x·T_w1 = x_e T_w1 + x_1 (q T_e + (q−1) T_w1)
        let one = RFunc::one();
        let rows = vec![
            vec![one.clone(), q()],
            vec![one.clone(), &q() - &one + one.clone()],
        ];
        let k = solve_kernel(&rows).unwrap();
        assert_eq!(k.len(), 1);
        let v = &k[0];
        let ratio = &v[1] / &v[0];
        assert_eq!(ratio, -&q().inv().unwrap());
    }

    #[test]
    fn cyclotomic_kernel() {
        let n = 5;
        let z = CycScalar::zeta(n, 1);
        let rows = vec![vec![CycScalar::one(n), -&z], vec![z.clone(), -&(&z * &z)]];
        let k = kernel_cyc(&rows, 2, n);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][1], CycScalar::one(n));
        assert_eq!(k[0][0], z);
    }
}
