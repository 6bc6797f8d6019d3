use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use winf_core::fock::identities::{run_suite, seeded_rng};
use winf_core::fock::{Engine, FockState, System};
use winf_core::invariant::{det_dij, symbol_current};
use winf_core::w1inf::{
    build_lw, check_grid, decoupling, find_singular, raise, remainder, Annihilators, Model, Ordering, W1Inf,
};
use winf_core::zhu::{leading_term, variety_relation, ZMono, ZhuPoly};
use winf_core::{scalar, Scalar};

use crate::json::{PolyJson, StateJson};
use crate::sexpr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Output of a command and whether every check it ran succeeded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub ok: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Self { output, ok: true }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error(transparent)]
    Parse(#[from] sexpr::ParseError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(#[from] winf_core::Error),
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn state_json(v: &FockState) -> Value {
    serde_json::to_value(StateJson::from(v)).expect("serializable")
}

fn mono_text(c: &Scalar, m: &ZMono) -> String {
    ZhuPoly::monomial(m.clone(), c.clone()).to_string()
}

fn mono_json(c: &Scalar, m: &ZMono) -> Value {
    json!({"coeff": scalar::render(c), "monomial": m.0.iter().rev().collect::<Vec<_>>()})
}

fn model_for(system: &System) -> Result<Model, CommandError> {
    Ok(match system {
        System::Current { c } => {
            if !c.is_integer() {
                return Err(CommandError::Usage(format!("central charge must be an integer, got {c}")));
            }
            let c: i64 = c.to_integer().try_into().map_err(|_| CommandError::Usage("central charge out of range".into()))?;
            Model::current(c)
        }
        System::BetaGamma { rank } => Model::betagamma(*rank),
        System::Bc { rank } => Model::bc(*rank),
    })
}

fn check_n(n: u32) -> Result<(), CommandError> {
    if n == 0 {
        return Err(CommandError::Usage("--n must be positive".into()));
    }
    Ok(())
}

pub fn ope(system: &str, expr: &str, format: Format) -> Result<Outcome, CommandError> {
    let system: System = system.parse().map_err(|e: winf_core::Error| CommandError::Usage(e.to_string()))?;
    let e = sexpr::parse(expr)?;
    let model = model_for(&system)?;
    let f = sexpr::elaborate(&e, &model).map_err(|e| CommandError::Usage(e.0))?;
    let v = model.state(&f);
    Ok(Outcome::ok(match format {
        Format::Text => format!("{v}\n"),
        Format::Json => pretty(&state_json(&v)),
    }))
}

pub fn singular(n: u32, weight: i64, format: Format) -> Result<Outcome, CommandError> {
    check_n(n)?;
    let ctx = W1Inf::new(n);
    let basis = find_singular(&ctx.abs, weight, Annihilators::Generating);
    Ok(Outcome::ok(match format {
        Format::Text => {
            let mut s = format!("dim {}\n", basis.len());
            for v in &basis {
                let _ = writeln!(s, "{v}");
            }
            s
        }
        Format::Json => pretty(&json!({
            "n": n,
            "weight": weight,
            "dim": basis.len(),
            "basis": basis.iter().map(state_json).collect::<Vec<_>>(),
        })),
    }))
}

fn parse_list(s: &str, flag: &str) -> Result<Vec<u32>, CommandError> {
    s.split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|_| CommandError::Usage(format!("{flag}: `{x}` is not an index"))))
        .collect()
}

pub fn dij(n: u32, i: &str, j: &str, format: Format) -> Result<Outcome, CommandError> {
    check_n(n)?;
    let (i, j) = (parse_list(i, "--I")?, parse_list(j, "--J")?);
    if i.len() != n as usize + 1 || j.len() != n as usize + 1 {
        return Err(CommandError::Usage(format!("--I and --J need {} entries", n + 1)));
    }
    let ctx = W1Inf::new(n);
    let d = ctx.construct_dij(&i, &j, Ordering::Ascending)?;
    let projected = ctx.project(&d.state);
    let det = det_dij(&i, &j)?;
    let top = d.state.top_degree().unwrap_or(0);
    let symbol_ok = symbol_current(&d.state, top)? == det;
    let ok = projected.is_zero() && symbol_ok;
    let output = match format {
        Format::Text => format!(
            "D weight {}\n{}\nsymbol matches determinant: {}\nprojection vanishes: {}\n",
            d.weight(),
            d.poly,
            symbol_ok,
            projected.is_zero()
        ),
        Format::Json => pretty(&json!({
            "n": n, "I": i, "J": j, "weight": d.weight(),
            "poly": PolyJson::from(&d.poly),
            "state": state_json(&d.state),
            "symbol_matches": symbol_ok,
            "projection": state_json(&projected),
        })),
    };
    Ok(Outcome { output, ok })
}

pub fn remainder_cmd(n: u32, format: Format) -> Result<Outcome, CommandError> {
    check_n(n)?;
    let ctx = W1Inf::new(n);
    let r = remainder(&ctx.d0()?)?;
    Ok(Outcome::ok(match format {
        Format::Text => format!("{}·J{}\n", r.value, r.m),
        Format::Json => pretty(&json!({
            "n": n, "m": r.m, "coefficient": scalar::render(&r.value),
            "coordinates": r.coords.iter().map(|(i, c)| (i.to_string(), scalar::render(c))).collect::<BTreeMap<_, _>>(),
        })),
    }))
}

pub fn decouple(n: u32, raise_to: Option<u32>, format: Format) -> Result<Outcome, CommandError> {
    check_n(n)?;
    let ctx = W1Inf::new(n);
    let base = decoupling(&ctx, &ctx.d0()?)?;
    let mut rels = vec![base.relation.clone()];
    if let Some(top) = raise_to.filter(|&t| t > base.l) {
        rels.extend(raise(&ctx, &base, top)?.into_values().filter(|r| r.r != base.l));
    }
    let mut ok = true;
    let mut text = format!("lambda = {}\n", base.lambda);
    let mut items = Vec::new();
    for rel in &rels {
        let proj = ctx.project(&rel.element);
        let verified = proj.is_zero();
        ok &= verified;
        let _ = writeln!(text, "j{} = {}    [{}]", rel.r, rel.rhs(), if verified { "verified" } else { "FAILED" });
        items.push(json!({
            "r": rel.r, "verified": verified,
            "element": state_json(&rel.element),
            "witness": if verified { Value::Null } else { state_json(&proj) },
        }));
    }
    Ok(Outcome {
        output: match format {
            Format::Text => text,
            Format::Json => pretty(&json!({"n": n, "lambda": scalar::render(&base.lambda), "relations": items})),
        },
        ok,
    })
}

pub fn zhu(n: u32, relation: bool, format: Format) -> Result<Outcome, CommandError> {
    check_n(n)?;
    let ctx = W1Inf::new(n);
    if !relation {
        let d0 = ctx.d0()?;
        let lt = leading_term(&d0.state);
        let want = ZMono::new((0..=n).map(|k| 2 * k).collect());
        let ok = lt.as_ref().map(|(m, _)| *m == want).unwrap_or(false);
        let output = match (format, &lt) {
            (Format::Text, Some((m, c))) => format!("{}\n", mono_text(c, m)),
            (Format::Text, None) => "0\n".into(),
            (Format::Json, _) => pretty(&json!({"n": n, "leading": lt.as_ref().map(|(m, c)| mono_json(c, m))})),
        };
        return Ok(Outcome { output, ok });
    }
    let v = variety_relation(&ctx)?;
    let in_ideal = ctx.project(&v.element).is_zero();
    let ok = in_ideal && !v.poly.is_zero() && v.form.is_some();
    let output = match format {
        Format::Text => format!(
            "{}\nleading: {}\nform: {}\nideal membership: {}\n",
            v.poly,
            v.leading.as_ref().map(|(m, c)| mono_text(c, m)).unwrap_or_else(|| "0".into()),
            v.form.map(|f| format!("{f:?}")).unwrap_or_else(|| "unrecognized".into()),
            in_ideal
        ),
        Format::Json => pretty(&json!({
            "n": n,
            "lambda1": scalar::render(&v.lambda1),
            "lambda2": scalar::render(&v.lambda2),
            "relation": PolyJson::from(&v.poly),
            "leading": v.leading.as_ref().map(|(m, c)| mono_json(c, m)),
            "form": v.form.map(|f| format!("{f:?}")),
            "ideal_membership": in_ideal,
        })),
    };
    Ok(Outcome { output, ok })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Parabolic,
    Weyl,
    Lw,
}

/// A random increasing list of `len` entries from `0..=3`.
fn pick_indices<R: rand::Rng>(rng: &mut R, len: usize) -> Vec<u32> {
    let mut v: Vec<u32> = (0..=3).collect();
    while v.len() > len {
        let at = rng.random_range(0..v.len());
        v.remove(at);
    }
    v
}

pub fn verify(suite: Suite, seed: u64, cases: usize, format: Format) -> Result<Outcome, CommandError> {
    let mut lines = Vec::new();
    let mut witnesses = Vec::new();
    match suite {
        Suite::Identities => {
            let systems = [System::current(-1), System::BetaGamma { rank: 1 }, System::BetaGamma { rank: 2 }, System::Bc { rank: 1 }];
            for (k, sys) in systems.iter().enumerate() {
                let eng = Engine::new(sys.clone());
                let mut rng = seeded_rng(seed.wrapping_add(k as u64));
                let rep = run_suite(&eng, &mut rng, cases, 5, 15);
                lines.push((sys.to_string(), rep.cases, rep.failures.len()));
                for f in rep.failures.iter().take(3) {
                    witnesses.push(json!({
                        "system": sys.to_string(), "identity": f.identity, "fields": f.fields,
                        "lhs": state_json(&f.lhs), "rhs": state_json(&f.rhs),
                    }));
                }
            }
        }
        Suite::Parabolic => {
            let model = Model::current(-1);
            let bad = check_grid(&model, 4, 4);
            let points = (0..=4i64)
                .flat_map(|a| (0..=4i64).map(move |b| a + b))
                .map(|s| (-4..=4i64).filter(|w| s - w >= 0).count() * 25)
                .sum();
            lines.push(("parabolic grid a,b,l,m ≤ 4, |w| ≤ 4".into(), points, bad.len()));
            for m in bad.iter().take(3) {
                witnesses.push(json!({
                    "a": m.a, "b": m.b, "w": m.w, "l": m.l, "m": m.m,
                    "got": state_json(&m.got), "expected": state_json(&m.expected),
                }));
            }
        }
        Suite::Weyl => {
            let mut rng = seeded_rng(seed);
            for n in 1..=2u32 {
                let mut fails = 0;
                for _ in 0..cases {
                    let (i, j) = (pick_indices(&mut rng, n as usize + 1), pick_indices(&mut rng, n as usize + 1));
                    let d = det_dij(&i, &j)?;
                    if !d.substitute(n).is_zero() {
                        fails += 1;
                        witnesses.push(json!({"n": n, "I": i, "J": j, "det": PolyJson::from(&d)}));
                    }
                }
                lines.push((format!("classical determinants, n = {n}"), cases, fails));
            }
        }
        Suite::Lw => {
            for n in 1..=3u32 {
                let model = Model::betagamma(n);
                let (_, _, rep) = build_lw(&model, n);
                let fails = rep.failures();
                lines.push((format!("L, W at n = {n}"), rep.checks.len(), fails.len()));
                for f in fails {
                    witnesses.push(json!({"n": n, "check": f.name}));
                }
            }
        }
    }
    let ok = lines.iter().all(|l| l.2 == 0);
    let output = match format {
        Format::Text => {
            let mut s = String::new();
            for (name, cases, fails) in &lines {
                let _ = writeln!(s, "{name}: {cases} cases, {fails} failures");
            }
            if !ok {
                s.push_str(&pretty(&json!({ "witnesses": witnesses })));
            }
            s
        }
        Format::Json => pretty(&json!({
            "seed": seed,
            "suites": lines.iter().map(|(name, c, f)| json!({"name": name, "cases": c, "failures": f})).collect::<Vec<_>>(),
            "witnesses": witnesses,
        })),
    };
    Ok(Outcome { output, ok })
}
