//! End-to-end acceptance criteria. Runs as a plain binary so every
//! criterion prints its own PASS/FAIL line.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lewis_core::algebra::{
    congruences, degree_consequence, enumerate_v_algebras, lattice_filters, open_filters, VAlgebra, Variety,
};
use lewis_core::bits::{self, Mask};
use lewis_core::compiled::Compiled;
use lewis_core::duality::{alpha_from_algebra, alpha_from_sphere, sphere_from_alpha, stone_roundtrip_check};
use lewis_core::proofs::scripts::bundled;
use lewis_core::proofs::{bounded_soundness, check_proof};
use lewis_core::spheres::enumerate::{frames, model_of, random_model, valuation, valuation_count};
use lewis_core::spheres::{
    countermodel, in_classes, local_consequence, Frame, Mode, SearchConfig, SearchOutcome, SphereModel,
};
use lewis_core::syntax::{AxiomId, Ext, Extensions, Subst, UReading};
use lewis_core::{parse, Formula};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn f(s: &str) -> Formula {
    parse(s).unwrap()
}

fn variety(s: &str) -> Variety {
    s.parse().unwrap()
}

fn in_variety(alg: &VAlgebra, v: &str) -> bool {
    alg.check_variety(variety(v).exts, UReading::default()).is_ok()
}

/// Reference ⊡→ tables for the witness algebras, rows and columns in the order 0, a, ¬a, 1.
const EXPECTED_A: [[&str; 4]; 4] = [
    ["1", "1", "1", "1"],
    ["0", "1", "0", "1"],
    ["0", "0", "1", "1"],
    ["0", "a", "¬a", "1"],
];
const EXPECTED_B: [[&str; 4]; 4] = [
    ["1", "1", "1", "1"],
    ["0", "1", "0", "1"],
    ["0", "0", "1", "1"],
    ["0", "0", "0", "1"],
];
const EXPECTED_C: [[&str; 4]; 4] = [
    ["1", "1", "1", "1"],
    ["0", "1", "0", "1"],
    ["0", "0", "1", "1"],
    ["0", "1", "0", "1"],
];

fn element(name: &str) -> Mask {
    match name {
        "0" => 0,
        "a" => 1,
        "¬a" => 2,
        "1" => 3,
        _ => panic!("unknown element {name}"),
    }
}

fn expected_table(rows: &[[&str; 4]; 4]) -> Vec<Vec<Mask>> {
    rows.iter().map(|r| r.iter().map(|e| element(e)).collect()).collect()
}

fn load(name: &str, expected: &[[&str; 4]; 4]) -> Result<VAlgebra, String> {
    let alg = VAlgebra::from_json(&fixture(name)).map_err(|e| format!("{name}: {e}"))?;
    ensure(alg.table() == expected_table(expected), || {
        format!("{name} differs from the reference table")
    })?;
    Ok(alg)
}

/// Lewis's truth condition, read directly: `A ⊡→ B` holds at `w` iff no
/// sphere around `w` meets `A`, or some sphere meets `A` and stays inside
/// `A → B`.
fn naive_eval(frame: &Frame, vals: &[(String, Mask)], phi: &Formula) -> Mask {
    let full = frame.universe();
    let go = |x: &Formula| naive_eval(frame, vals, x);
    match phi {
        Formula::Var(v) => vals.iter().find(|(n, _)| n == v).map_or(0, |(_, m)| *m),
        Formula::Bot => 0,
        Formula::Top => full,
        Formula::And(l, r) => go(l) & go(r),
        Formula::Or(l, r) => go(l) | go(r),
        Formula::Imp(l, r) => (!go(l) | go(r)) & full,
        Formula::Cf(l, r) => {
            let (a, b) = (go(l), go(r));
            (0..frame.len())
                .filter(|&w| {
                    let sph = frame.spheres(w);
                    sph.iter().all(|s| s & a == 0) || sph.iter().any(|s| s & a != 0 && s & a & !b == 0)
                })
                .fold(0, |acc, w| acc | 1 << w)
        }
    }
}

fn model_vals(m: &SphereModel) -> Vec<(String, Mask)> {
    m.valuation().iter().map(|(k, v)| (k.clone(), *v)).collect()
}

/// A random formula of depth at most `depth` over `leaves`.
fn random_formula(rng: &mut ChaCha8Rng, depth: usize, leaves: &[Formula]) -> Formula {
    if depth == 0 || rng.random_bool(0.25) {
        return match rng.random_range(0..10) {
            0 => Formula::Bot,
            1 => Formula::Top,
            _ => leaves.choose(rng).unwrap().clone(),
        };
    }
    let sub = |rng: &mut ChaCha8Rng| random_formula(rng, depth - 1, leaves);
    match rng.random_range(0..8) {
        0 => Formula::and(sub(rng), sub(rng)),
        1 => Formula::or(sub(rng), sub(rng)),
        2 => Formula::imp(sub(rng), sub(rng)),
        3 => Formula::neg(sub(rng)),
        4 => Formula::boxed(sub(rng)),
        _ => Formula::cf(sub(rng), sub(rng)),
    }
}

fn vars(names: &[&str]) -> (Vec<String>, Vec<Formula>) {
    let v: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let leaves = v.iter().map(|n| Formula::var(n.clone())).collect();
    (v, leaves)
}

fn witness_tables() -> Outcome {
    let a = load("A.json", &EXPECTED_A)?;
    let b = load("B.json", &EXPECTED_B)?;
    let c = load("C.json", &EXPECTED_C)?;
    for (name, alg) in [("A", &a), ("B", &b), ("C", &c)] {
        alg.check_axioms().map_err(|e| format!("{name}: {e}"))?;
    }
    ensure(in_variety(&a, "CA"), || "A is not in CA".into())?;
    ensure(in_variety(&a, "VCSU"), || "A is not in VCSU".into())?;
    ensure(in_variety(&b, "VWA"), || "B is not in VWA".into())?;
    ensure(in_variety(&c, "VTSA"), || "C is not in VTSA".into())?;
    let mut mutants = 0;
    for x in a.elements() {
        for y in a.elements() {
            for v in a.elements().filter(|&v| v != a.cf(x, y)) {
                let m = a.with_entry(x, y, v);
                mutants += 1;
                let passes = m.check_axioms().is_ok() && in_variety(&m, "CA") && in_variety(&m, "VCSU");
                ensure(!passes, || format!("mutant A[{x}][{y}] = {v} passes every check"))?;
            }
        }
    }
    Ok(format!(
        "A, B, C match the reference tables; all {mutants} single-cell mutants of A fail"
    ))
}

fn non_algebraizability() -> Outcome {
    let a = VAlgebra::from_json(&fixture("A.json")).map_err(|e| e.to_string())?;
    let lattice = lattice_filters(&a);
    let open = open_filters(&a);
    ensure(lattice.len() == 4, || format!("{} lattice filters", lattice.len()))?;
    let open_sets: BTreeSet<Vec<Mask>> = open.iter().map(|f| f.elements().to_vec()).collect();
    let expected: BTreeSet<Vec<Mask>> = [vec![3], vec![0, 1, 2, 3]].into();
    ensure(open_sets == expected, || format!("open filters {open_sets:?}"))?;
    let boxes: Vec<Mask> = a.elements().map(|x| a.boxed(x)).collect();
    let by_definition: Vec<Mask> = a.elements().map(|x| a.cf(a.neg(x), x)).collect();
    // □0, □a, □¬a, □1
    ensure(boxes == [0, 0, 0, 3] && by_definition == boxes, || {
        format!("□ values {boxes:?}")
    })?;
    let cong = congruences(&a).len();
    ensure(cong == open.len(), || {
        format!("{cong} congruences vs {} open filters", open.len())
    })?;
    Ok(format!(
        "4 lattice filters, open filters {{1}} and A, {cong} congruences"
    ))
}

fn countermodel_reproduction() -> Outcome {
    let m = SphereModel::from_json(&fixture("two_world.json")).map_err(|e| e.to_string())?;
    let box_p = f("box p");
    ensure(m.eval(&box_p) == 0, || {
        format!("v(□p) = {}", m.show_set(m.eval(&box_p)))
    })?;
    ensure(naive_eval(m.frame(), &model_vals(&m), &box_p) == 0, || {
        "naive v(□p) ≠ ∅".into()
    })?;
    let w1 = m.world_index("w1").unwrap();
    match local_consequence(std::slice::from_ref(&m), &[f("p")], &box_p) {
        lewis_core::Verdict::Fails((0, w)) if w == w1 => {}
        other => return Err(format!("local consequence: {other:?}")),
    }
    let lv = SearchConfig::new(Mode::Local, Extensions::NONE, 2);
    let SearchOutcome::Found { model, world: Some(w) } = countermodel(&[f("p")], &box_p, &lv) else {
        return Err("no local countermodel with 2 worlds".into());
    };
    let vals = model_vals(&model);
    ensure(
        bits::contains(naive_eval(model.frame(), &vals, &f("p")), w)
            && !bits::contains(naive_eval(model.frame(), &vals, &box_p), w),
        || format!("reported model is no countermodel:\n{model}"),
    )?;
    let gv = SearchConfig::new(Mode::Global, Extensions::NONE, 3);
    match countermodel(&[f("p")], &box_p, &gv) {
        SearchOutcome::NotFound { exhaustive_up_to: 3, models_checked, .. } => Ok(format!(
            "v(□p) = ∅, p ⊭l □p at w1, LV countermodel with {} worlds, no GV countermodel among {models_checked} models",
            model.len()
        )),
        other => Err(format!("global search: {other:?}")),
    }
}

/// Every table whose rows preserve binary meets, filtered by C1-C4 written
/// out directly.
fn naive_v_algebras(k: usize) -> BTreeSet<Vec<Vec<Mask>>> {
    let n = 1usize << k;
    let top = (n - 1) as Mask;
    let mut rows = Vec::new();
    for code in 0..n.pow(n as u32) {
        let row: Vec<Mask> = (0..n).map(|i| (code / n.pow(i as u32) % n) as Mask).collect();
        let meets = (0..n).all(|y| (0..n).all(|z| row[y & z] == row[y] & row[z]));
        if meets {
            rows.push(row);
        }
    }
    let iff = |x: Mask, y: Mask| (!(x ^ y)) & top;
    let mut out = BTreeSet::new();
    for code in 0..rows.len().pow(n as u32) {
        let t: Vec<&Vec<Mask>> = (0..n)
            .map(|x| &rows[code / rows.len().pow(x as u32) % rows.len()])
            .collect();
        let c = |x: Mask, y: Mask| t[x as usize][y as usize];
        let els = 0..=top;
        if els.clone().any(|x| c(x, x) != top) {
            continue;
        }
        let ok = els.clone().all(|x| {
            els.clone().all(|y| {
                els.clone().all(|z| {
                    let c2 = c(x, y) & c(y, x) & !iff(c(x, z), c(y, z)) == 0;
                    let xy = x | y;
                    let c3 = c(xy, x) | c(xy, y) | iff(c(xy, z), c(x, z) & c(y, z)) == top;
                    c2 && c3
                })
            })
        });
        if ok {
            out.insert(t.into_iter().cloned().collect());
        }
    }
    out
}

fn duality_round_trips() -> Outcome {
    let mut counts = Vec::new();
    for k in 0..=2 {
        let algs = enumerate_v_algebras(k);
        let mine: BTreeSet<Vec<Vec<Mask>>> = algs.iter().map(|a| a.table()).collect();
        let oracle = naive_v_algebras(k);
        ensure(mine.len() == algs.len(), || format!("k={k}: duplicate algebras"))?;
        ensure(mine == oracle, || {
            format!("k={k}: enumerator found {}, naive oracle {}", mine.len(), oracle.len())
        })?;
        for alg in &algs {
            stone_roundtrip_check(alg).map_err(|e| format!("stone round trip:\n{alg}{e}"))?;
            let alpha = alpha_from_algebra(alg);
            let spheres = sphere_from_alpha(&alpha).map_err(|e| e.to_string())?;
            ensure(alpha_from_sphere(&spheres) == alpha, || {
                format!("α round trip fails for\n{alg}")
            })?;
        }
        counts.push(format!("k={k}: {}", algs.len()));
    }
    Ok(format!(
        "V-algebras {} (oracle agrees); both round trips exact",
        counts.join(", ")
    ))
}

fn soundness_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (names, leaves) = vars(&["p", "q", "r"]);
    let classes: Vec<Extensions> = Extensions::all_subsets().collect();
    let conditional = [AxiomId::L1, AxiomId::L2, AxiomId::L3, AxiomId::L4];
    let mut uses: std::collections::BTreeMap<AxiomId, usize> = Default::default();
    for i in 0..10_000 {
        let exts = *classes.choose(&mut rng).unwrap();
        let m = random_model(&mut rng, 4, exts, &names);
        ensure(in_classes(m.frame(), exts), || {
            format!("random model outside class {exts}")
        })?;
        let mut pool: Vec<AxiomId> = AxiomId::CLASSICAL.into_iter().chain(conditional).collect();
        pool.extend(exts.iter().map(AxiomId::Ext));
        let id = *pool.choose(&mut rng).unwrap();
        *uses.entry(id).or_default() += 1;
        let sub: Subst = ["phi", "psi", "chi"]
            .iter()
            .map(|v| (v.to_string(), random_formula(&mut rng, 2, &leaves)))
            .collect();
        let instance = id.schema(UReading::default()).substitute(&sub);
        let value = naive_eval(m.frame(), &model_vals(&m), &instance);
        ensure(value == m.universe(), || {
            format!(
                "pair {i}: {id} instance {instance} fails at {} in class {exts}\n{m}",
                m.show_set(m.universe() & !value)
            )
        })?;
    }
    let ext_uses: usize = Ext::ALL
        .iter()
        .map(|&e| uses.get(&AxiomId::Ext(e)).copied().unwrap_or(0))
        .sum();
    Ok(format!(
        "10000 instances valid over {} axioms ({ext_uses} extension-axiom instances)",
        uses.len()
    ))
}

fn global_local_reduction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e0);
    let (names, leaves) = vars(&["p", "q"]);
    struct Case {
        gamma: Vec<Formula>,
        phi: Formula,
        /// `boxed[n]`: every `□ⁿγ`.
        boxed: Vec<Vec<Compiled>>,
        goal: Compiled,
        global_fails: bool,
        local_fails: [bool; 4],
    }
    let mut cases: Vec<Case> = (0..50)
        .map(|i| {
            let gamma: Vec<Formula> = (0..rng.random_range(0..=2))
                .map(|_| random_formula(&mut rng, 3, &leaves))
                .collect();
            // Half the conclusions are built over the premises, so that
            // global consequence holds often enough to matter.
            let phi = if i % 2 == 1 && !gamma.is_empty() {
                let mut pool = leaves.clone();
                pool.extend(gamma.iter().cloned());
                random_formula(&mut rng, 2, &pool)
            } else {
                random_formula(&mut rng, 3, &leaves)
            };
            let boxed = (0..=3)
                .map(|n| {
                    gamma
                        .iter()
                        .map(|g| Compiled::new(&g.clone().box_iterate(n), &names))
                        .collect()
                })
                .collect();
            Case {
                goal: Compiled::new(&phi, &names),
                gamma,
                phi,
                boxed,
                global_fails: false,
                local_fails: [false; 4],
            }
        })
        .collect();
    let mut models = 0u64;
    for frame in frames(3, 2) {
        let full = frame.universe();
        for code in 0..valuation_count(frame.len(), names.len()) {
            let vals = valuation(frame.len(), names.len(), code);
            models += 1;
            for c in cases.iter_mut() {
                let concl = c.goal.eval(&frame, &vals);
                if concl == full {
                    continue;
                }
                let mut prem = full;
                for n in 0..=3 {
                    for g in &c.boxed[n] {
                        prem &= g.eval(&frame, &vals);
                    }
                    if n == 0 && prem == full {
                        c.global_fails = true;
                    }
                    if prem & !concl != 0 {
                        c.local_fails[n] = true;
                    }
                }
            }
        }
    }
    let mut valid = 0;
    for c in &cases {
        let global = !c.global_fails;
        let reduced = c.local_fails.iter().any(|&fails| !fails);
        valid += usize::from(global);
        ensure(global == reduced, || {
            format!(
                "discrepancy for Γ = {:?}, φ = {}: global {global}, reduced {reduced}",
                c.gamma, c.phi
            )
        })?;
    }
    Ok(format!(
        "{models} models, 50 pairs ({valid} globally valid), zero discrepancies"
    ))
}

fn proof_replay() -> Outcome {
    let scripts = bundled();
    let expected = [
        "l1_instance",
        "monotonicity",
        "dwc0",
        "dwc2_from_c_l4",
        "c_from_dwc2",
        "l4_from_dwc2",
    ];
    let names: Vec<&str> = scripts.iter().map(|(n, _)| *n).collect();
    ensure(expected.iter().all(|e| names.contains(e)), || {
        format!("bundled scripts: {names:?}")
    })?;
    for (name, file) in &scripts {
        let c = file
            .calculus()
            .map_err(|e| e.to_string())?
            .ok_or(format!("{name}: no calculus"))?;
        let p = file.proof().map_err(|e| format!("{name}: {e}"))?;
        check_proof(&c, &p).map_err(|e| format!("{name} under {c}: {e}"))?;
        match bounded_soundness(&c, &p) {
            SearchOutcome::NotFound {
                exhaustive_up_to: 3, ..
            } => {}
            other => return Err(format!("{name}: {other:?}")),
        }
    }
    Ok(format!(
        "{} scripts accepted, no countermodel up to 3 worlds",
        scripts.len()
    ))
}

fn degree_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xde9);
    let (names, leaves) = vars(&["p", "q"]);
    let corpus = enumerate_v_algebras(2);
    let duals: Vec<Vec<SphereModel>> = corpus
        .iter()
        .map(|a| {
            let t = sphere_from_alpha(&alpha_from_algebra(a)).expect("duals of V-algebras are α-models");
            let frame = t.frame().clone();
            (0..valuation_count(frame.len(), names.len()))
                .map(|code| model_of(frame.clone(), &names, &valuation(frame.len(), names.len(), code)))
                .collect()
        })
        .collect();
    let (mut holds, mut fails) = (0, 0);
    for _ in 0..200 {
        let gamma: Vec<Formula> = (0..rng.random_range(0..=3))
            .map(|_| random_formula(&mut rng, 3, &leaves))
            .collect();
        let phi = random_formula(&mut rng, 3, &leaves);
        for (alg, models) in corpus.iter().zip(&duals) {
            let algebraic = degree_consequence(std::slice::from_ref(alg), &gamma, &phi).holds();
            let relational = local_consequence(models, &gamma, &phi).holds();
            ensure(algebraic == relational, || {
                format!("Γ = {gamma:?}, φ = {phi}: algebra says {algebraic}, dual says {relational}\n{alg}")
            })?;
            if algebraic {
                holds += 1;
            } else {
                fails += 1;
            }
        }
    }
    Ok(format!(
        "{} algebras × 200 pairs agree ({holds} consequences hold, {fails} fail)",
        corpus.len()
    ))
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 witness algebra tables", witness_tables, Duration::from_secs(1)),
        (
            "2 non-algebraizability witness",
            non_algebraizability,
            Duration::from_secs(1),
        ),
        (
            "3 countermodel reproduction",
            countermodel_reproduction,
            Duration::from_secs(10),
        ),
        ("4 duality round trips", duality_round_trips, Duration::from_secs(300)),
        ("5 soundness property suite", soundness_suite, Duration::from_secs(60)),
        (
            "6 global/local reduction",
            global_local_reduction,
            Duration::from_secs(300),
        ),
        ("7 proof replay", proof_replay, Duration::from_secs(10)),
        (
            "8 degree-preservation agreement",
            degree_agreement,
            Duration::from_secs(300),
        ),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|e| Err(format!("panicked: {:?}", e.downcast_ref::<String>())));
        let took = start.elapsed();
        let result = result.and_then(|msg| {
            if took <= limit {
                Ok(msg)
            } else {
                Err(format!("{msg}; but took {took:.2?}, limit {limit:?}"))
            }
        });
        match result {
            Ok(msg) => println!("PASS criterion {name} ({took:.2?}): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name} ({took:.2?}): {msg}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
