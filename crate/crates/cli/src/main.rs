//! `uhecke`: compute-and-print front end and verification suites.
//!
//! Exit status: 0 on success, 1 when a check fails, 2 on a usage error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use uhecke::doubling::{
    classify, epsilon_factor, functional_equation_sides, gk_constant, intertwining_constant,
    l_factor, theta_parameters, zeta_value, DoublingContext, GkForm, SatakeParams,
};
use uhecke::exactalg::LPoly;
use uhecke::hecke::{eigenvector, idempotent, t_mul, HeckeElement};
use uhecke::satake::{ideal_member, HermitianSpaceDesc, SymLaurent, TensorElement};
use uhecke::verify::{run_suite, Bounds, Suite};
use uhecke::weilrep::{finite_weil_report, generator_lemma_report, DEFAULT_SEED};
use uhecke::{Error, SignedPermutation, Sign};

#[derive(Parser)]
#[command(name = "uhecke", version, about = "Exact Hecke, Satake, doubling and Weil-representation calculus")]
struct Cli {
    /// Also write the JSON output to this file.
    #[arg(long, global = true, value_name = "PATH")]
    json_out: Option<PathBuf>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Factor {
    #[arg(long)]
    r: usize,
    /// `+` or `-`.
    #[arg(long, allow_hyphen_values = true)]
    eps: Sign,
    /// Conductor exponent.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    c: i64,
    /// Comma list of half-integers (`1/2`, `-3/2`) or `sym`; defaults to
    /// fresh symbols.
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<String>,
}

#[derive(Args, Clone)]
struct Space {
    #[arg(long)]
    r: usize,
    /// Half-dimension of the hermitian space.
    #[arg(long)]
    d: usize,
    #[arg(long, allow_hyphen_values = true)]
    eps: Sign,
}

#[derive(Subcommand)]
enum Cmd {
    /// L-factor L^σ_ε(s) in X = q^{-s}.
    Lfactor(Factor),
    /// ε-factor.
    Epsilon(Factor),
    /// Zeta value c L(s+½)/b.
    Zeta(Factor),
    /// Gindikin–Karpelevich constant.
    Gk {
        #[command(flatten)]
        f: Factor,
        /// `product` or `closed`.
        #[arg(long, default_value = "product")]
        form: String,
    },
    /// Intertwining scalar and the functional equation check.
    Intertwine(Factor),
    /// Right κ-eigenvector of the finite Hecke algebra.
    Eigenvector {
        #[arg(long)]
        r: usize,
        #[arg(long, allow_hyphen_values = true)]
        eps: Sign,
    },
    /// Idempotent e = f/κ(f).
    Idempotent {
        #[arg(long)]
        r: usize,
        #[arg(long, allow_hyphen_values = true)]
        eps: Sign,
    },
    /// T_u · T_v in the T-basis.
    HeckeMul {
        /// Signed one-line notation, e.g. `[-2,1]`.
        #[arg(long, allow_hyphen_values = true)]
        u: SignedPermutation,
        #[arg(long, allow_hyphen_values = true)]
        v: SignedPermutation,
    },
    /// Theta parameter maps σ ↦ (σ⃖, σ⃗).
    ThetaParams {
        #[command(flatten)]
        space: Space,
        /// Parameters of rank min(r, s).
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        sigma: String,
    },
    /// Classification of a Satake parameter.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        eps: Sign,
        #[arg(long, allow_hyphen_values = true)]
        sigma: String,
    },
    /// Membership of Σ left_k ⊗ right_k in the annihilator ideal.
    IdealMember {
        #[command(flatten)]
        space: Space,
        /// Invariant Laurent polynomial in T1…Tr; repeat, paired with --right.
        #[arg(long, allow_hyphen_values = true)]
        left: Vec<String>,
        /// Invariant Laurent polynomial in T1…Ts.
        #[arg(long, allow_hyphen_values = true)]
        right: Vec<String>,
    },
    /// Residue-lattice (`lemma`) or finite-field (`finite`) Weil checks.
    WeilVerify {
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, allow_hyphen_values = true, default_value = "-")]
        eps: Sign,
        #[arg(long, default_value = "lemma")]
        check: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Run a named verification suite.
    Verify {
        #[arg(long)]
        suite: Suite,
        #[arg(long)]
        rmax: Option<usize>,
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Structural(_) | Error::Calibration(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn sigma_or_symbolic(s: &Option<String>, r: usize) -> Result<SatakeParams, Failure> {
    let p = match s {
        Some(s) => SatakeParams::parse_list(s)?,
        None => SatakeParams::symbolic(r),
    };
    if p.rank() != r {
        return Err(Failure::Usage(format!("--sigma has {} entries, --r is {r}", p.rank())));
    }
    Ok(p)
}

fn header(f: &Factor, sigma: Option<&SatakeParams>) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("r".into(), json!(f.r));
    m.insert("eps".into(), json!(f.eps.to_string()));
    m.insert("c".into(), json!(f.c));
    if let Some(s) = sigma {
        m.insert("sigma".into(), json!(s.texts()));
    }
    m
}

fn ctx(f: &Factor) -> Result<DoublingContext, Failure> {
    Ok(DoublingContext::with_conductor(f.r, f.eps, f.c)?)
}

fn bounded(r: usize) -> Result<(), Failure> {
    let bound = uhecke::max_symbolic_rank();
    if r == 0 || r > bound {
        return Err(Failure::Usage(format!("--r must lie in 1..={bound} (UHECKE_MAX_R)")));
    }
    Ok(())
}

fn hecke_json(e: &HeckeElement) -> Value {
    let mut terms: Vec<_> = e.terms().collect();
    terms.sort_by_key(|(w, _)| (w.length(), (*w).clone()));
    json!({
        "result": e.to_string(),
        "terms": terms
            .into_iter()
            .map(|(w, c)| json!({"w": w.to_string(), "coeff": c.to_string()}))
            .collect::<Vec<_>>(),
    })
}

fn merge(mut base: serde_json::Map<String, Value>, extra: Value) -> Value {
    if let Value::Object(m) = extra {
        base.extend(m);
    }
    Value::Object(base)
}

/// The JSON output and whether every check in it passed.
fn run(cmd: &Cmd) -> Result<(Value, bool), Failure> {
    Ok(match cmd {
        Cmd::Lfactor(f) => {
            let sigma = sigma_or_symbolic(&f.sigma, f.r)?;
            let mut m = header(f, Some(&sigma));
            m.insert("result".into(), json!(l_factor(&ctx(f)?, &sigma)?.to_string()));
            (Value::Object(m), true)
        }
        Cmd::Epsilon(f) => {
            let sigma = sigma_or_symbolic(&f.sigma, f.r)?;
            let mut m = header(f, Some(&sigma));
            m.insert("result".into(), json!(epsilon_factor(&ctx(f)?, &sigma)?.to_string()));
            (Value::Object(m), true)
        }
        Cmd::Zeta(f) => {
            let sigma = sigma_or_symbolic(&f.sigma, f.r)?;
            let mut m = header(f, Some(&sigma));
            m.insert("result".into(), json!(zeta_value(&ctx(f)?, &sigma)?.to_string()));
            (Value::Object(m), true)
        }
        Cmd::Gk { f, form } => {
            let form: GkForm = form.parse()?;
            let mut m = header(f, None);
            m.insert("form".into(), json!(if form == GkForm::Product { "product" } else { "closed" }));
            m.insert("result".into(), json!(gk_constant(&ctx(f)?, form).to_string()));
            (Value::Object(m), true)
        }
        Cmd::Intertwine(f) => {
            let c = ctx(f)?;
            let mut m = header(f, None);
            m.insert("result".into(), json!(intertwining_constant(&c)?.to_string()));
            let (lhs, rhs) = functional_equation_sides(&c)?;
            let pass = lhs == rhs;
            m.insert(
                "functional_equation".into(),
                json!({"lhs": lhs.to_string(), "rhs": rhs.to_string(), "pass": pass}),
            );
            (Value::Object(m), pass)
        }
        Cmd::Eigenvector { r, eps } => {
            bounded(*r)?;
            let e = eigenvector(*r, *eps)?;
            (merge(serde_json::Map::from_iter([("r".into(), json!(r)), ("eps".into(), json!(eps.to_string()))]), hecke_json(&e)), true)
        }
        Cmd::Idempotent { r, eps } => {
            bounded(*r)?;
            let e = idempotent(*r, *eps)?;
            (merge(serde_json::Map::from_iter([("r".into(), json!(r)), ("eps".into(), json!(eps.to_string()))]), hecke_json(&e)), true)
        }
        Cmd::HeckeMul { u, v } => {
            bounded(u.rank())?;
            let prod = t_mul(u, v)?;
            let head = serde_json::Map::from_iter([
                ("r".into(), json!(u.rank())),
                ("u".into(), json!(u.to_string())),
                ("v".into(), json!(v.to_string())),
            ]);
            (merge(head, hecke_json(&prod)), true)
        }
        Cmd::ThetaParams { space, sigma } => {
            let v = HermitianSpaceDesc::new(space.d, space.eps)?;
            let sigma = SatakeParams::parse_list(sigma)?;
            let pair = theta_parameters(space.r, &v, &sigma)?;
            (
                json!({
                    "r": space.r,
                    "d": space.d,
                    "eps": space.eps.to_string(),
                    "s": v.witt_index(),
                    "sigma": sigma.texts(),
                    "left": pair.left.texts(),
                    "right": pair.right.texts(),
                }),
                true,
            )
        }
        Cmd::Classify { eps, sigma } => {
            let sigma = SatakeParams::parse_list(sigma)?;
            (
                json!({"eps": eps.to_string(), "sigma": sigma.texts(), "result": classify(&sigma, *eps).to_string()}),
                true,
            )
        }
        Cmd::IdealMember { space, left, right } => {
            if left.len() != right.len() {
                return Err(Failure::Usage(format!(
                    "{} --left values but {} --right values",
                    left.len(),
                    right.len()
                )));
            }
            let v = HermitianSpaceDesc::new(space.d, space.eps)?;
            let s = v.witt_index();
            let mut t = TensorElement::new();
            for (l, rt) in left.iter().zip(right) {
                let l = SymLaurent::new(space.r, l.parse::<LPoly>()?)?;
                let rt = SymLaurent::new(s, rt.parse::<LPoly>()?)?;
                t.push(l, rt);
            }
            let image = t.image(&v, space.r)?;
            (
                json!({
                    "r": space.r,
                    "d": space.d,
                    "eps": space.eps.to_string(),
                    "member": ideal_member(&t, &v, space.r)?,
                    "image": image.to_string(),
                    "image_orbits": image.to_json(),
                }),
                true,
            )
        }
        Cmd::WeilVerify { p, d, eps, check, seed } => {
            let rep = match check.as_str() {
                "lemma" => generator_lemma_report(*p, *d, *eps)?,
                "finite" => finite_weil_report(*p, *seed)?,
                o => return Err(Failure::Usage(format!("--check must be `lemma` or `finite`, got `{o}`"))),
            };
            let pass = rep.pass;
            (serde_json::to_value(&rep).expect("serialisable"), pass)
        }
        Cmd::Verify { suite, rmax, p, seed } => {
            let mut b = Bounds::for_suite(*suite);
            if let Some(r) = rmax {
                b.rmax = *r;
            }
            b.p = *p;
            b.seed = *seed;
            let rep = run_suite(*suite, &b)?;
            let pass = rep.all_pass();
            (serde_json::to_value(&rep).expect("serialisable"), pass)
        }
    })
}

fn emit(v: &Value, path: Option<&PathBuf>) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(v)? + "\n";
    if let Some(p) = path {
        std::fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?;
    }
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        // a closed pipe (`| head`) is not an error
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => r.context("writing to stdout"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.cmd) {
        Ok((v, pass)) => {
            if let Err(e) = emit(&v, cli.json_out.as_ref()) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Check(m)) => {
            eprintln!("check failed: {m}");
            ExitCode::from(1)
        }
    }
}
