//! Finite and residue models of the Weil representation.
//!
//! [`lattice`] checks the action of the Iwahori double coset of the Weyl
//! element on `𝟙_Λ` through exact Fourier analysis on a finite window of
//! the hermitian space. [`finite`] builds the Weil representation of
//! `U₂(𝔽_p)` as exact cyclotomic matrices and computes its Borel-fixed
//! vectors.

pub mod field;
pub mod finite;
pub mod lattice;

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

pub use field::{Fp2, ResidueField};
pub use finite::{
    borel_invariants, calibrate_finite_weil, moment_matrix, BorelReport, Bruhat, Calibration,
    CandidateOutcome, FiniteWeilModel, PairCheck, TwistCharacter, UnitaryGroup, ZMat,
};
pub use lattice::{
    finite_fourier, verify_generator_lemma, GeneratorLemmaOutcome, LatticeCheck, QuotientFunction,
    ResidueHermitianLattice,
};

use crate::error::Result;
use crate::Sign;

/// Default seed and sample size for the sampled pair check at p = 5.
pub const DEFAULT_SEED: u64 = 0x5eed;
pub const SAMPLED_PAIRS: usize = 10_000;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CalibrationText {
    pub chi: String,
    pub gamma: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeilDetail {
    pub name: String,
    pub pass: bool,
    pub value: Value,
}

/// Machine-readable outcome of a weilrep check.
#[derive(Clone, Debug, Serialize)]
pub struct WeilReport {
    pub check: String,
    pub params: BTreeMap<String, Value>,
    pub pass: bool,
    pub calibration: Option<CalibrationText>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    pub details: Vec<WeilDetail>,
}

pub fn generator_lemma_report(p: u32, d: usize, sign: Sign) -> Result<WeilReport> {
    let out = verify_generator_lemma(p, d, sign)?;
    let mut params = BTreeMap::new();
    params.insert("p".into(), json!(p));
    params.insert("d".into(), json!(d));
    params.insert("eps".into(), json!(sign.to_string()));
    params.insert("window_size".into(), json!(out.window_size));
    params.insert("dual_index".into(), json!(out.dual_index));
    let details = out
        .checks
        .iter()
        .map(|c| WeilDetail {
            name: c.name.to_string(),
            pass: c.pass,
            value: match c.name {
                "double_coset_operator_on_lattice_indicator" => json!(out.expected_eigenvalue),
                _ => Value::Null,
            },
        })
        .collect();
    Ok(WeilReport {
        check: "generator_lemma".into(),
        params,
        pass: out.pass(),
        calibration: None,
        counterexample: out.first_counterexample(),
        details,
    })
}

/// Calibrates the model, checks the homomorphism property (all pairs at
/// p = 3; generators times the group plus `SAMPLED_PAIRS` seeded pairs at
/// p = 5) and reports the Borel-fixed space.
pub fn finite_weil_report(p: u32, seed: u64) -> Result<WeilReport> {
    let model = calibrate_finite_weil(p)?;
    let cal = model.calibration();
    let mut details = Vec::new();
    for c in &cal.candidates {
        details.push(WeilDetail {
            name: format!("candidate chi={} gamma={}", c.chi, c.gamma),
            pass: c.homomorphism,
            value: json!(c.violated),
        });
    }
    let gens = model.check_generators();
    details.push(WeilDetail {
        name: "homomorphism_generators_times_group".into(),
        pass: gens.violated.is_none(),
        value: json!(gens),
    });
    let pairs = if p == 3 {
        model.check_all_pairs()
    } else {
        model.check_sampled_pairs(SAMPLED_PAIRS, seed)
    };
    details.push(WeilDetail {
        name: if pairs.exhaustive { "homomorphism_all_pairs" } else { "homomorphism_sampled_pairs" }
            .into(),
        pass: pairs.violated.is_none(),
        value: json!(pairs),
    });
    let one = [[Fp2::ONE, Fp2::ZERO], [Fp2::ZERO, Fp2::ONE]];
    let id_ok = model.omega_of(&one) == Some(&ZMat::identity(p, model.dim()));
    details.push(WeilDetail { name: "omega_of_identity".into(), pass: id_ok, value: Value::Null });
    let borel = borel_invariants(&model);
    details.push(WeilDetail {
        name: "borel_invariants".into(),
        pass: borel.pass(),
        value: serde_json::to_value(&borel).expect("serialisable"),
    });

    let counterexample = pairs
        .violated
        .or(gens.violated)
        .map(|(i, j)| format!("ω(g{i}·g{j}) ≠ ω(g{i})ω(g{j})"));
    let mut params = BTreeMap::new();
    params.insert("p".into(), json!(p));
    params.insert("r".into(), json!(model.r()));
    params.insert("group_order".into(), json!(model.group().order()));
    if p != 3 {
        params.insert("seed".into(), json!(seed));
    }
    Ok(WeilReport {
        check: "finite_weil".into(),
        params,
        pass: details.iter().all(|d| d.pass || d.name.starts_with("candidate")),
        calibration: Some(CalibrationText {
            chi: cal.chi.name().into(),
            gamma: cal.gamma_scalar(p).to_string(),
        }),
        counterexample,
        details,
    })
}
