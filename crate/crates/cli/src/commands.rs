use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use lewis_core::algebra::{
    degree_consequence, enumerate_v_algebras, equational_consequence, lattice_filters, open_filters, AlgebraWitness,
    VAlgebra, Variety, MAX_ENUM_ATOMS,
};
use lewis_core::duality::{
    algebra_from_alpha, alpha_from_algebra, alpha_from_sphere, sphere_from_alpha, stone_roundtrip_check, AlphaModel,
    SphereStructure,
};
use lewis_core::proofs::{bounded_soundness, check_proof, Calculus, ProofFile};
use lewis_core::spheres::enumerate::{frames, EXHAUSTIVE_WORLDS};
use lewis_core::spheres::{
    countermodel, global_consequence, in_classes, local_consequence, Mode, ModelClass, SearchConfig, SearchOutcome,
    SphereModel,
};
use lewis_core::syntax::{Equation, UReading};
use lewis_core::{parse, Formula, Verdict};
use serde_json::{json, Value};

use crate::args::{Command, Query, Source, Target};

/// What a command prints, in both forms, and whether its checks passed.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

impl Report {
    fn pass(text: String, json: Value) -> Report {
        Report { text, json, ok: true }
    }
}

#[derive(Debug)]
pub enum Failure {
    /// Bad flags or unreadable input; exit status 2.
    Usage(String),
    /// A library result contradicting a proven invariant; exit status 3.
    Internal(String),
}

type Outcome = Result<Report, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn load_model(path: &Path) -> Result<SphereModel, Failure> {
    SphereModel::from_json(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<VAlgebra, Failure> {
    VAlgebra::from_json(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_alpha(path: &Path) -> Result<AlphaModel, Failure> {
    AlphaModel::from_json(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn formula(text: &str) -> Result<Formula, Failure> {
    parse(text).map_err(|e| usage(format!("cannot parse `{text}`: {e}")))
}

fn formulas(texts: &[String]) -> Result<Vec<Formula>, Failure> {
    texts.iter().map(|t| formula(t)).collect()
}

fn logic(text: &str) -> Result<Calculus, Failure> {
    text.parse().map_err(usage)
}

fn to_value(json: String) -> Value {
    serde_json::from_str(&json).expect("library JSON is well formed")
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

pub fn run(cmd: &Command) -> Outcome {
    match cmd {
        Command::Parse { formula: f } => parse_cmd(f),
        Command::Eval { model, formula } => eval_cmd(model, formula),
        Command::ModelCheck { model, logic, formula } => model_check(model, logic.as_deref(), formula),
        Command::AlgebraCheck { algebra, variety } => algebra_check(algebra, variety),
        Command::Dualize { source, to } => dualize(source, *to),
        Command::Roundtrip { source } => roundtrip(source),
        Command::Enumerate {
            atoms,
            variety,
            max_worlds,
            levels,
            logic,
            list,
        } => match (atoms, max_worlds) {
            (Some(k), _) => enumerate_algebras(*k, variety.as_deref(), *list),
            (None, Some(n)) => enumerate_frames(*n, *levels, logic.as_deref(), *list),
            (None, None) => Err(usage("enumerate needs --atoms or --max-worlds")),
        },
        Command::Consequence { query, model, algebra } => consequence(query, model.as_deref(), algebra),
        Command::Countermodel { query, seed } => countermodel_cmd(query, *seed),
        Command::Prove { script, logic, sound } => prove(script, logic.as_deref(), *sound),
    }
}

fn parse_cmd(text: &str) -> Outcome {
    let f = formula(text)?;
    let vars: Vec<String> = f.vars().into_iter().collect();
    Ok(Report::pass(
        f.to_string(),
        json!({ "formula": f.to_string(), "vars": vars, "depth": f.depth() }),
    ))
}

fn eval_cmd(path: &Path, texts: &[String]) -> Outcome {
    let m = load_model(path)?;
    let fs = formulas(texts)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for f in &fs {
        let v = m.eval(f);
        if fs.len() == 1 {
            text.push_str(&m.show_set(v));
        } else {
            let _ = writeln!(text, "v({f}) = {}", m.show_set(v));
        }
        rows.push(json!({ "formula": f.to_string(), "worlds": m.names_of(v) }));
    }
    Ok(Report::pass(text.trim_end().to_string(), json!({ "results": rows })))
}

fn model_check(path: &Path, logic_name: Option<&str>, texts: &[String]) -> Outcome {
    let m = load_model(path)?;
    let required = match logic_name {
        Some(l) => ModelClass::for_extensions(logic(l)?.exts),
        None => vec![],
    };
    let fs = formulas(texts)?;
    let mut ok = true;
    let mut text = String::new();
    let mut classes = Vec::new();
    for c in ModelClass::ALL {
        let result = c.check(m.frame());
        let needed = required.contains(&c);
        ok &= !needed || result.is_ok();
        let mark = if needed { " (required)" } else { "" };
        match &result {
            Ok(()) => {
                let _ = writeln!(text, "{:<18} yes{mark}", c.name());
            }
            Err(v) => {
                let _ = writeln!(text, "{:<18} no: {}{mark}", c.name(), v.describe(m.worlds()));
            }
        }
        classes.push(json!({
            "class": c.name(),
            "member": result.is_ok(),
            "required": needed,
            "violation": result.err().map(|v| v.describe(m.worlds())),
        }));
    }
    let mut validity = Vec::new();
    for f in &fs {
        let refuted = m.universe() & !m.eval(f);
        ok &= refuted == 0;
        if refuted == 0 {
            let _ = writeln!(text, "valid: {f}");
        } else {
            let _ = writeln!(text, "not valid: {f} fails at {}", m.show_set(refuted));
        }
        validity.push(json!({ "formula": f.to_string(), "fails_at": m.names_of(refuted) }));
    }
    let _ = write!(text, "result: {}", verdict(ok));
    Ok(Report {
        text,
        json: json!({ "ok": ok, "classes": classes, "formulas": validity }),
        ok,
    })
}

fn algebra_check(path: &Path, varieties: &[String]) -> Outcome {
    let alg = load_algebra(path)?;
    let varieties = varieties
        .iter()
        .map(|v| v.parse::<Variety>().map_err(usage))
        .collect::<Result<Vec<_>, _>>()?;
    let mut text = alg.to_string();
    let axioms = alg.check_axioms();
    let mut ok = axioms.is_ok();
    match &axioms {
        Ok(()) => text.push_str("C1-C4: pass\n"),
        Err(e) => {
            let [x, y, z] = e.args.map(|m| alg.show(m));
            let _ = writeln!(text, "C1-C4: FAIL ({:?} at x={x}, y={y}, z={z})", e.axiom);
        }
    }
    let mut members = Vec::new();
    for v in &varieties {
        let r = if axioms.is_ok() {
            alg.check_variety(v.exts, UReading::default())
        } else {
            Ok(())
        };
        let member = axioms.is_ok() && r.is_ok();
        ok &= member;
        let detail = r.err().map(|e| {
            let h: Vec<String> = e
                .assignment
                .iter()
                .map(|(k, &m)| format!("{k}={}", alg.show(m)))
                .collect();
            format!("axiom {} fails at {}", e.ext.letter(), h.join(", "))
        });
        let _ = match &detail {
            None if member => writeln!(text, "{v}: pass"),
            None => writeln!(text, "{v}: FAIL (not a V-algebra)"),
            Some(d) => writeln!(text, "{v}: FAIL ({d})"),
        };
        members.push(json!({ "variety": v.name, "member": member, "failure": detail }));
    }
    let boxes: BTreeMap<String, String> = alg.elements().map(|x| (alg.show(x), alg.show(alg.boxed(x)))).collect();
    let shown: Vec<String> = alg
        .elements()
        .map(|x| format!("□{} = {}", alg.show(x), alg.show(alg.boxed(x))))
        .collect();
    let (lattice, open) = (lattice_filters(&alg).len(), open_filters(&alg).len());
    let _ = writeln!(text, "{}", shown.join(", "));
    let _ = write!(
        text,
        "lattice filters: {lattice}, open filters: {open}\nresult: {}",
        verdict(ok)
    );
    Ok(Report {
        text,
        json: json!({
            "ok": ok,
            "axioms": axioms.err().map(|e| format!("{e}")),
            "varieties": members,
            "box": boxes,
            "lattice_filters": lattice,
            "open_filters": open,
        }),
        ok,
    })
}

/// Loads an algebra and refuses it, with a report, if it is not a
/// V-algebra.
fn checked_algebra(path: &Path) -> Result<Result<VAlgebra, Report>, Failure> {
    let alg = load_algebra(path)?;
    Ok(match alg.check_axioms() {
        Ok(()) => Ok(alg),
        Err(e) => Err(not_valid("V-algebra", &e.to_string())),
    })
}

fn checked_alpha(path: &Path) -> Result<Result<AlphaModel, Report>, Failure> {
    let s = load_alpha(path)?;
    Ok(match s.check_axioms() {
        Ok(()) => Ok(s),
        Err(e) => Err(not_valid("α-model", &e.to_string())),
    })
}

fn not_valid(what: &str, why: &str) -> Report {
    Report {
        text: format!("input is not a {what}: {why}"),
        json: json!({ "ok": false, "error": format!("input is not a {what}: {why}") }),
        ok: false,
    }
}

fn spheres_of(s: &AlphaModel) -> Result<SphereStructure, Failure> {
    sphere_from_alpha(s).map_err(|e| Failure::Internal(format!("spheres of a checked α-model: {e}")))
}

fn dualize(source: &Source, to: Option<Target>) -> Outcome {
    let show = |text: String, json: String| Ok(Report::pass(text, to_value(json)));
    if let Some(path) = &source.algebra {
        let alg = match checked_algebra(path)? {
            Ok(a) => a,
            Err(r) => return Ok(r),
        };
        let s = alpha_from_algebra(&alg);
        return match to.unwrap_or(Target::Alpha) {
            Target::Alpha => show(s.to_string(), s.to_json()),
            Target::Spheres => {
                let t = spheres_of(&s)?;
                show(t.to_string(), t.to_json())
            }
            Target::Algebra => Err(usage("the input is already an algebra")),
        };
    }
    if let Some(path) = &source.alpha {
        let s = match checked_alpha(path)? {
            Ok(s) => s,
            Err(r) => return Ok(r),
        };
        return match to.unwrap_or(Target::Spheres) {
            Target::Spheres => {
                let t = spheres_of(&s)?;
                show(t.to_string(), t.to_json())
            }
            Target::Algebra => {
                let a = algebra_from_alpha(&s);
                show(a.to_string(), a.to_json())
            }
            Target::Alpha => Err(usage("the input is already an α-model")),
        };
    }
    let path = source.model.as_ref().expect("clap requires one source");
    let t = SphereStructure::from_json(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let s = alpha_from_sphere(&t);
    match to.unwrap_or(Target::Alpha) {
        Target::Alpha => show(s.to_string(), s.to_json()),
        Target::Algebra => {
            let a = algebra_from_alpha(&s);
            show(a.to_string(), a.to_json())
        }
        Target::Spheres => Err(usage("the input is already a sphere structure")),
    }
}

fn roundtrip(source: &Source) -> Outcome {
    let mut checks: Vec<(&str, Result<(), String>)> = Vec::new();
    if let Some(path) = &source.algebra {
        let alg = match checked_algebra(path)? {
            Ok(a) => a,
            Err(r) => return Ok(r),
        };
        checks.push((
            "algebra -> alpha -> algebra",
            stone_roundtrip_check(&alg).map_err(|e| e.to_string()),
        ));
        checks.push((
            "alpha -> spheres -> alpha",
            alpha_via_spheres(&alpha_from_algebra(&alg))?,
        ));
    } else if let Some(path) = &source.alpha {
        let s = match checked_alpha(path)? {
            Ok(s) => s,
            Err(r) => return Ok(r),
        };
        checks.push(("alpha -> spheres -> alpha", alpha_via_spheres(&s)?));
        checks.push(("alpha -> algebra -> alpha", alpha_via_algebra(&s)));
    } else {
        let path = source.model.as_ref().expect("clap requires one source");
        let t = SphereStructure::from_json(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let s = alpha_from_sphere(&t);
        let back = spheres_of(&s)?;
        let same = if back.frame() == t.frame() {
            Ok(())
        } else {
            Err(format!("got\n{back}"))
        };
        checks.push(("spheres -> alpha -> spheres", same));
        checks.push(("alpha -> algebra -> alpha", alpha_via_algebra(&s)));
    }
    let ok = checks.iter().all(|(_, r)| r.is_ok());
    let mut text = String::new();
    for (name, r) in &checks {
        let _ = match r {
            Ok(()) => writeln!(text, "{name}: pass"),
            Err(e) => writeln!(text, "{name}: FAIL ({e})"),
        };
    }
    let _ = write!(text, "result: {}", verdict(ok));
    let json_checks: Vec<Value> = checks
        .iter()
        .map(|(name, r)| json!({ "check": name, "pass": r.is_ok(), "detail": r.as_ref().err() }))
        .collect();
    Ok(Report {
        text,
        json: json!({ "ok": ok, "checks": json_checks }),
        ok,
    })
}

fn alpha_via_spheres(s: &AlphaModel) -> Result<Result<(), String>, Failure> {
    let back = alpha_from_sphere(&spheres_of(s)?);
    Ok(if back == *s {
        Ok(())
    } else {
        Err(format!("got\n{back}"))
    })
}

fn alpha_via_algebra(s: &AlphaModel) -> Result<(), String> {
    let back = alpha_from_algebra(&algebra_from_alpha(s))
        .with_names(s.points().to_vec())
        .expect("same point count");
    if back == *s {
        Ok(())
    } else {
        Err(format!("got\n{back}"))
    }
}

fn enumerate_algebras(k: usize, variety: Option<&str>, list: bool) -> Outcome {
    if k > MAX_ENUM_ATOMS {
        return Err(usage(format!("--atoms must be at most {MAX_ENUM_ATOMS}")));
    }
    let variety = variety.map(|v| v.parse::<Variety>().map_err(usage)).transpose()?;
    let algs: Vec<VAlgebra> = enumerate_v_algebras(k)
        .into_iter()
        .filter(|a| {
            variety
                .as_ref()
                .is_none_or(|v| a.check_variety(v.exts, UReading::default()).is_ok())
        })
        .collect();
    let label = variety.as_ref().map_or("V".to_string(), |v| v.name.clone());
    let atoms = if k == 1 { "atom" } else { "atoms" };
    let mut text = format!("{} algebras in {label} with {k} {atoms}", algs.len());
    if list {
        for a in &algs {
            let _ = write!(text, "\n\n{a}");
        }
    }
    let items: Vec<Value> = if list {
        algs.iter().map(|a| to_value(a.to_json())).collect()
    } else {
        vec![]
    };
    Ok(Report::pass(
        text.trim_end().to_string(),
        json!({ "kind": "algebras", "atoms": k, "variety": label, "count": algs.len(), "items": items }),
    ))
}

fn enumerate_frames(n: usize, levels: usize, logic_name: Option<&str>, list: bool) -> Outcome {
    if n > EXHAUSTIVE_WORLDS || levels > 3 {
        return Err(usage(format!(
            "--max-worlds must be at most {EXHAUSTIVE_WORLDS} and --levels at most 3"
        )));
    }
    let exts = match logic_name {
        Some(l) => logic(l)?.exts,
        None => Default::default(),
    };
    let found: Vec<SphereStructure> = frames(n, levels)
        .filter(|f| in_classes(f, exts))
        .map(SphereStructure::from_frame)
        .collect();
    let mut text = format!(
        "{} frames with at most {n} worlds and {levels} sphere levels",
        found.len()
    );
    if let Some(l) = logic_name {
        let _ = write!(text, " in the class of {l}");
    }
    if list {
        for t in &found {
            let _ = write!(text, "\n\n{t}");
        }
    }
    let items: Vec<Value> = if list {
        found.iter().map(|t| to_value(t.to_json())).collect()
    } else {
        vec![]
    };
    Ok(Report::pass(
        text.trim_end().to_string(),
        json!({ "kind": "frames", "max_worlds": n, "levels": levels, "count": found.len(), "items": items }),
    ))
}

fn consequence(q: &Query, model: Option<&Path>, algebras: &[std::path::PathBuf]) -> Outcome {
    let c = logic(&q.logic)?;
    let gamma = formulas(&q.premises)?;
    let phi = formula(&q.formula)?;
    let claim = claim(&gamma, &phi, c.mode());
    if let Some(path) = model {
        let m = load_model(path)?;
        let ms = std::slice::from_ref(&m);
        let (holds, detail) = match c.mode() {
            Mode::Local => match local_consequence(ms, &gamma, &phi) {
                Verdict::Holds => (true, None),
                Verdict::Fails((_, w)) => (false, Some(format!("fails at {}", m.worlds()[w]))),
            },
            Mode::Global => match global_consequence(ms, &gamma, &phi) {
                Verdict::Holds => (true, None),
                Verdict::Fails(_) => (
                    false,
                    Some(format!("fails at {}", m.show_set(m.universe() & !m.eval(&phi)))),
                ),
            },
        };
        return Ok(consequence_report(&claim, holds, detail, "the model"));
    }
    if !algebras.is_empty() {
        let algs = algebras
            .iter()
            .map(|p| load_algebra(p))
            .collect::<Result<Vec<_>, _>>()?;
        let result = match c.mode() {
            Mode::Local => degree_consequence(&algs, &gamma, &phi),
            Mode::Global => {
                let eqs: Vec<Equation> = gamma.iter().cloned().map(Equation::tau).collect();
                equational_consequence(&algs, &eqs, &Equation::tau(phi.clone()))
            }
        };
        let detail = result.witness().map(|w: &AlgebraWitness| {
            let alg = &algs[w.algebra];
            let h: Vec<String> = w
                .assignment
                .iter()
                .map(|(k, &m)| format!("{k}={}", alg.show(m)))
                .collect();
            format!("fails in {} under {}", algebras[w.algebra].display(), h.join(", "))
        });
        return Ok(consequence_report(&claim, result.holds(), detail, "the algebras"));
    }
    let cfg = SearchConfig::new(c.mode(), c.exts, q.max_worlds);
    match countermodel(&gamma, &phi, &cfg) {
        SearchOutcome::Found { model, world } => {
            let at = world.map_or_else(|| "the whole model".to_string(), |w| model.worlds()[w].clone());
            Ok(consequence_report(
                &claim,
                false,
                Some(format!("fails at {at} in\n{model}")),
                "small models",
            ))
        }
        SearchOutcome::NotFound { exhaustive_up_to, .. } => {
            let scope = scope(exhaustive_up_to, q.max_worlds, &c);
            Ok(consequence_report(&claim, true, None, &scope))
        }
    }
}

fn claim(gamma: &[Formula], phi: &Formula, mode: Mode) -> String {
    let g: Vec<String> = gamma.iter().map(|f| f.to_string()).collect();
    let turnstile = match mode {
        Mode::Local => "⊨l",
        Mode::Global => "⊨g",
    };
    format!("{{{}}} {turnstile} {phi}", g.join(", "))
}

fn scope(exhaustive: usize, max: usize, c: &Calculus) -> String {
    let class = if c.exts.is_empty() {
        String::new()
    } else {
        format!(" of the class of {c}")
    };
    if exhaustive >= max {
        format!("all models{class} with at most {max} worlds")
    } else {
        format!("all models{class} with at most {exhaustive} worlds and sampled models up to {max}")
    }
}

fn consequence_report(claim: &str, holds: bool, detail: Option<String>, over: &str) -> Report {
    let text = match &detail {
        None => format!("{claim}: holds on {over}"),
        Some(d) => format!("{claim}: fails; {d}"),
    };
    Report {
        text: text.trim_end().to_string(),
        json: json!({ "claim": claim, "holds": holds, "over": over, "detail": detail }),
        ok: holds,
    }
}

fn countermodel_cmd(q: &Query, seed: u64) -> Outcome {
    let c = logic(&q.logic)?;
    let gamma = formulas(&q.premises)?;
    let phi = formula(&q.formula)?;
    let mut cfg = SearchConfig::new(c.mode(), c.exts, q.max_worlds);
    cfg.seed = seed;
    Ok(match countermodel(&gamma, &phi, &cfg) {
        SearchOutcome::Found { model, world } => {
            let at = world.map(|w| model.worlds()[w].clone());
            let mut text = model.to_string();
            if let Some(w) = &at {
                let _ = write!(text, "refuted at {w}");
            }
            Report {
                text: text.trim_end().to_string(),
                json: json!({ "found": true, "world": at, "model": to_value(model.to_json()) }),
                ok: false,
            }
        }
        SearchOutcome::NotFound {
            exhaustive_up_to,
            models_checked,
            ..
        } => Report::pass(
            format!("none up to {}", q.max_worlds),
            json!({
                "found": false,
                "max_worlds": q.max_worlds,
                "exhaustive_up_to": exhaustive_up_to,
                "models_checked": models_checked,
            }),
        ),
    })
}

fn prove(path: &Path, logic_name: Option<&str>, sound: bool) -> Outcome {
    let file = ProofFile::from_json(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let proof = file.proof().map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let c = match logic_name {
        Some(l) => logic(l)?.with_basis(file.basis.unwrap_or_default()),
        None => file
            .calculus()
            .map_err(|e| usage(e.to_string()))?
            .ok_or_else(|| usage("the script names no calculus; pass --logic"))?,
    };
    let checked = match check_proof(&c, &proof) {
        Ok(ch) => ch,
        Err(r) => {
            return Ok(Report {
                text: format!("rejected under {c}: {r}"),
                json: json!({ "accepted": false, "calculus": c.to_string(), "line": r.line, "reason": r.reason }),
                ok: false,
            })
        }
    };
    let conclusion = proof.conclusion().expect("accepted proofs are nonempty").to_string();
    let used = checked.used_premises();
    let mut text = format!("accepted under {c}: {} lines, conclusion {conclusion}", proof.len());
    if !used.is_empty() {
        let _ = write!(text, ", using premises {used:?}");
    }
    let mut soundness = Value::Null;
    if sound {
        match bounded_soundness(&c, &proof) {
            SearchOutcome::Found { model, .. } => {
                return Err(Failure::Internal(format!(
                    "accepted proof has a countermodel:\n{model}"
                )));
            }
            SearchOutcome::NotFound { exhaustive_up_to, .. } => {
                let _ = write!(text, "\nno countermodel up to {exhaustive_up_to} worlds");
                soundness = json!({ "countermodel": false, "exhaustive_up_to": exhaustive_up_to });
            }
        }
    }
    Ok(Report {
        text,
        json: json!({
            "accepted": true,
            "calculus": c.to_string(),
            "lines": proof.len(),
            "conclusion": conclusion,
            "premises_used": used,
            "soundness": soundness,
        }),
        ok: true,
    })
}
