//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::fs;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use modbasis::connections::Step;
use modbasis::decomposition::verify_submodule;
use modbasis::generators::symmetrize;
use modbasis::io::{read_document, render_document, write_document, Document};
use modbasis::minimality::TheoremReport;
use modbasis::oracle::oracle_reach;
use modbasis::semidirect::{build_semidirect, decompose_combined};
use modbasis::{
    check_minimality_theorem, components, components_oracle, decompose, find_connection,
    is_minimal, is_mu_multiplicative, mu, pairing, phi, restrict, reverse_connection,
    verify_connection, verify_ideal, verify_orthogonality, Budget, ConnectionWitness,
    KModuleStructure,
};

use common::*;

const RANDOM_INSTANCES: u64 = 200;
const MAX_DENSITY: f64 = 0.3;
const SYMMETRIZED_INSTANCES: usize = 100;
const PAIR_INSTANCES: u64 = 100;
const SERIALIZED_INSTANCES: u64 = 50;
const TIME_LIMIT: Duration = Duration::from_secs(30);

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome {
            passed,
            detail: detail.into(),
        }
    }
}

fn instances() -> Vec<KModuleStructure> {
    (0..RANDOM_INSTANCES)
        .map(|seed| small_instance(seed, MAX_DENSITY))
        .collect()
}

/// Steps read off the support: for each entry and each distinct module
/// occupant, the remaining occupants, in both directions.
fn support_steps(st: &KModuleStructure) -> BTreeSet<Step> {
    let mut out = BTreeSet::new();
    for (placement, _) in st.support() {
        let modules = placement.module_occupants();
        let spaces = placement.space_occupants();
        for (pos, _) in modules.iter().enumerate() {
            let mut rest = modules.clone();
            rest.remove(pos);
            let fwd = Step::forward(rest, spaces.clone());
            out.insert(fwd.flipped());
            out.insert(fwd);
        }
    }
    out
}

fn oracle_equivalence(all: &[KModuleStructure]) -> Outcome {
    let start = Instant::now();
    let mut agree = 0;
    for st in all {
        let depth = 2 * st.module_dim();
        let fast = components(st);
        let slow = components_oracle(st, depth, Budget::default()).expect("oracle within budget");
        // the raw reach relation must already be the equivalence itself
        let reach_ok = (0..st.module_dim()).all(|i| {
            let reach = oracle_reach(st, i, depth, Budget::default()).unwrap();
            (0..st.module_dim()).all(|j| reach.contains(&j) == fast.same_class(i, j))
        });
        if fast == slow && reach_ok {
            agree += 1;
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(
        agree == all.len() && elapsed < TIME_LIMIT,
        format!("{agree}/{} agree, {:.2?}", all.len(), elapsed),
    )
}

fn symmetry_lemmas(all: &[KModuleStructure]) -> Outcome {
    let mut violations = 0;
    let mut checks = 0u64;
    for st in all {
        let dim = st.module_dim();
        for step in support_steps(st) {
            let flipped = step.flipped();
            let images: Vec<BTreeSet<usize>> =
                (0..dim).map(|i| mu(st, i, &step).unwrap()).collect();
            let back: Vec<BTreeSet<usize>> =
                (0..dim).map(|i| mu(st, i, &flipped).unwrap()).collect();
            for (i, image) in images.iter().enumerate() {
                for (j, pre) in back.iter().enumerate() {
                    checks += 1;
                    if image.contains(&j) != pre.contains(&i) {
                        violations += 1;
                    }
                }
            }
            for mask in 0u32..(1 << dim) {
                let set: BTreeSet<usize> = (0..dim).filter(|b| mask & (1 << b) != 0).collect();
                let image = phi(st, &set, &step).unwrap();
                for i in 0..dim {
                    checks += 1;
                    let hit = phi(st, &BTreeSet::from([i]), &flipped).unwrap();
                    if image.contains(&i) != hit.iter().any(|h| set.contains(h)) {
                        violations += 1;
                    }
                }
            }
        }
    }
    Outcome::new(
        violations == 0,
        format!("{violations} violations in {checks} checks"),
    )
}

fn decomposition_soundness(all: &[KModuleStructure]) -> Outcome {
    let mut failures = 0;
    for st in all {
        let partition = components(st);
        let comps = decompose(st);
        let covered: usize = comps.iter().map(|c| c.members.len()).sum();
        if covered != st.module_dim() {
            failures += 1;
        }
        for c in &comps {
            if !verify_submodule(st, &c.member_set()) {
                failures += 1;
            }
        }
        if !verify_orthogonality(st, &partition) {
            failures += 1;
        }
    }
    Outcome::new(failures == 0, format!("{failures} failures"))
}

fn witness_integrity(all: &[KModuleStructure]) -> Outcome {
    let mut failures = 0;
    let mut pairs = 0;
    for st in all {
        let partition = components(st);
        for a in 0..st.module_dim() {
            for b in 0..st.module_dim() {
                if a == b {
                    continue;
                }
                match find_connection(st, a, b).unwrap() {
                    Some(ConnectionWitness::Chain(conn)) => {
                        pairs += 1;
                        let forward_ok =
                            partition.same_class(a, b) && verify_connection(st, &conn, b);
                        let reverse_ok = reverse_connection(st, &conn, b)
                            .map(|rev| rev.source() == b && verify_connection(st, &rev, a))
                            .unwrap_or(false);
                        if !(forward_ok && reverse_ok) {
                            failures += 1;
                        }
                    }
                    Some(ConnectionWitness::Reflexive) => failures += 1,
                    None => {
                        if partition.same_class(a, b) {
                            failures += 1;
                        }
                    }
                }
            }
        }
    }
    Outcome::new(
        failures == 0,
        format!("{failures} failures over {pairs} connected pairs"),
    )
}

fn symmetrized() -> Vec<KModuleStructure> {
    let mut out = Vec::new();
    let mut seed = 10_000;
    while out.len() < SYMMETRIZED_INSTANCES {
        seed += 1;
        let st = small_instance(seed, 0.5);
        if let Ok(sym) = symmetrize(&st) {
            out.push(sym);
        }
    }
    out
}

fn minimality_theorem(sym: &[KModuleStructure]) -> Outcome {
    let mut agree = 0;
    let mut minimal_cases = 0;
    for st in sym {
        if !is_mu_multiplicative(st).holds {
            continue;
        }
        let single = components(st).num_classes() == 1;
        let minimal = is_minimal(st);
        minimal_cases += minimal as usize;
        let reported = matches!(
            check_minimality_theorem(st),
            Ok(TheoremReport::Agreement { minimal: m, .. }) if m == minimal
        );
        if minimal == single && reported {
            agree += 1;
        }
    }
    let fixture_ok = matches!(
        check_minimality_theorem(&e1_minus()),
        Ok(TheoremReport::HypothesisNotMet { .. })
    );
    Outcome::new(
        agree == sym.len() && sym.len() == SYMMETRIZED_INSTANCES && fixture_ok,
        format!(
            "{agree}/{} agree ({minimal_cases} minimal), hypothesis-not-met fixture: {fixture_ok}",
            sym.len()
        ),
    )
}

fn redecomposition(sym: &[KModuleStructure]) -> Outcome {
    let mut restricted = 0;
    let mut failures = 0;
    for st in sym {
        for comp in decompose(st) {
            restricted += 1;
            match restrict(st, &comp.member_set()) {
                Ok(sub) => {
                    if components(&sub).num_classes() != 1 || !is_minimal(&sub) {
                        failures += 1;
                    }
                }
                Err(_) => failures += 1,
            }
        }
    }
    Outcome::new(
        failures == 0,
        format!("{failures} failures over {restricted} classes"),
    )
}

fn semidirect_suite() -> Outcome {
    let start = Instant::now();
    let mut good = 0;
    let mut active = 0;
    for seed in 0..PAIR_INSTANCES {
        let pair = small_pair(seed);
        let combined = build_semidirect(&pair);
        let dec = decompose_combined(&combined);
        let ideals = dec
            .classes
            .iter()
            .all(|c| verify_ideal(pair.algebra(), &c.algebra_part.iter().copied().collect()));
        let report = pairing(&pair);
        active += report.omega_v_active.len();
        if ideals
            && combined.parts_are_consistent()
            && report.violations.is_empty()
            && report.is_bijection()
        {
            good += 1;
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(
        good == PAIR_INSTANCES && elapsed < TIME_LIMIT,
        format!("{good}/{PAIR_INSTANCES} pass ({active} active module classes), {elapsed:.2?}"),
    )
}

fn serialization() -> Outcome {
    let dir = tempfile::tempdir().expect("tempdir");
    let mut docs: Vec<Document> = vec![
        e1().into(),
        e2().into(),
        e3(3).into(),
        e4().into(),
        e4().algebra().clone().into(),
        e4().action().clone().into(),
    ];
    docs.extend((0..SERIALIZED_INSTANCES).map(|seed| small_instance(50_000 + seed, 0.5).into()));
    let mut identical = 0;
    for (idx, doc) in docs.iter().enumerate() {
        let path = dir.path().join(format!("doc{idx}.json"));
        write_document(doc, &path).unwrap();
        let first = fs::read(&path).unwrap();
        let back = read_document(&path).unwrap();
        write_document(&back, &path).unwrap();
        let second = fs::read(&path).unwrap();
        if first == second && &back == doc && render_document(&back).as_bytes() == first {
            identical += 1;
        }
    }
    Outcome::new(
        identical == docs.len(),
        format!("{identical}/{} byte-identical", docs.len()),
    )
}

fn golden_values() -> Outcome {
    let b = Budget::default();
    let mut notes = Vec::new();

    let st = e1();
    let oracle = components_oracle(&st, 2 * st.module_dim(), b).unwrap();
    let e1_ok = oracle.classes() == [vec![0, 1], vec![2]]
        && components(&st) == oracle
        && !is_minimal(&st)
        && is_mu_multiplicative(&st).holds;
    notes.push(format!("E1 {oracle} {}", if e1_ok { "ok" } else { "bad" }));

    let st = e2();
    let oracle = components_oracle(&st, 2 * st.module_dim(), b).unwrap();
    let e2_ok = oracle.classes() == [vec![0, 1]] && components(&st) == oracle && is_minimal(&st);
    notes.push(format!("E2 {oracle} {}", if e2_ok { "ok" } else { "bad" }));

    let pair = e4();
    let combined = build_semidirect(&pair);
    let oracle = components_oracle(
        combined.structure(),
        2 * combined.structure().module_dim(),
        b,
    )
    .unwrap();
    let report = pairing(&pair);
    let dec = &report.decomposition;
    let e4_ok = *dec.partition() == oracle
        && oracle.classes() == [vec![0, 2], vec![1, 3]]
        && report.f.get(&dec.class_of_module(0)) == Some(&dec.class_of_algebra(0))
        && report.f.get(&dec.class_of_module(1)) == Some(&dec.class_of_algebra(1))
        && report.violations.is_empty();
    notes.push(format!("E4 {oracle} {}", if e4_ok { "ok" } else { "bad" }));

    Outcome::new(e1_ok && e2_ok && e4_ok, notes.join("; "))
}

fn main() -> ExitCode {
    let all = instances();
    let sym = symmetrized();
    let criteria: Vec<Criterion> = vec![
        (
            "1 oracle equivalence",
            Box::new(|| oracle_equivalence(&all)),
        ),
        ("2 mu/phi symmetry", Box::new(|| symmetry_lemmas(&all))),
        (
            "3 decomposition soundness",
            Box::new(|| decomposition_soundness(&all)),
        ),
        ("4 witness integrity", Box::new(|| witness_integrity(&all))),
        (
            "5 minimality theorem",
            Box::new(|| minimality_theorem(&sym)),
        ),
        ("6 re-decomposition", Box::new(|| redecomposition(&sym))),
        ("7 semidirect suite", Box::new(semidirect_suite)),
        ("8 serialization", Box::new(serialization)),
        ("9 golden fixtures", Box::new(golden_values)),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let outcome = check();
        let tag = if outcome.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {name}: {}", outcome.detail);
        failed += (!outcome.passed) as usize;
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
