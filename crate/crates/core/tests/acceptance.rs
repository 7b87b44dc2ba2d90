//! Acceptance criteria, one line each. Runs without the test harness so the
//! lines always show; exits non-zero when any criterion fails.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use corefacial::fccp::{solve_fccp, CoreClass, FccpInstance, FccpSolver, SolveOptions, Verdict};
use corefacial::generate::{candidate_pairs, random_biconnected_planar, random_classes, random_fccp, random_hpp, random_pairs, small_biconnected_planar, PlanarShape};
use corefacial::oracle::{fccp_oracle, hpp_oracle, OracleLimits, OracleSession};
use corefacial::reductions::{cross_allowed, fccp_to_hpp, hpp_to_fccp, pep_to_fccp};
use corefacial::spqr::{NodeKind, SkelLink, SpqrTree};
use corefacial::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{cofacial_pairs, extendable_pep, fixture, is_triconnected, non_extendable_pep};

struct Report {
    pass: bool,
    detail: String,
}

fn report(pass: bool, detail: impl Into<String>) -> Report {
    Report {
        pass,
        detail: detail.into(),
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn weight_truth_table() -> Report {
    let expected = [(1, 1, true), (1, 2, true), (1, 4, false), (2, 2, false), (2, 4, false), (4, 4, false)];
    let mut wrong = 0;
    for (a, b, yes) in expected {
        for (x, y) in [(a, b), (b, a)] {
            if cross_allowed(x, y) != Ok(yes) {
                wrong += 1;
            }
        }
    }
    let rejects = [0, 3, 5, 8].iter().all(|&w| cross_allowed(w, 1).is_err() && cross_allowed(1, w).is_err());
    report(wrong == 0 && rejects, format!("{wrong} wrong entries of 6 pairs, invalid weights rejected: {rejects}"))
}

fn exhaustive_small() -> Report {
    let start = Instant::now();
    let graphs = small_biconnected_planar(6);
    let (mut total, mut wrong) = (0u64, 0u64);
    for g in &graphs {
        let session = OracleSession::new(g, OracleLimits::default()).unwrap();
        let solver = FccpSolver::new(g).unwrap();
        let m = g.edge_count();
        for mask in 0u32..1 << m {
            let classes: Vec<CoreClass> = (0..m)
                .map(|e| if mask >> e & 1 == 1 { CoreClass::E2 } else { CoreClass::E1 })
                .collect();
            let profiles = session.cofacial_profiles(&classes);
            let candidates = candidate_pairs(g, &classes);
            let mut sets = vec![vec![]];
            for (i, &a) in candidates.iter().enumerate() {
                sets.push(vec![a]);
                sets.extend(candidates[i + 1..].iter().map(|&b| vec![a, b]));
            }
            for w in sets {
                total += 1;
                if OracleSession::decide_profiles(&profiles, &w) != solver.solve(&classes, &w).unwrap() {
                    wrong += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        wrong == 0 && elapsed <= Duration::from_secs(30 * 60),
        format!("{} graphs, {total} instances, {wrong} disagreements, {elapsed:.1?}", graphs.len()),
    )
}

fn randomized_small() -> Report {
    let start = Instant::now();
    let mut rng = rng(3);
    let (mut wrong, mut yes) = (0, 0);
    for _ in 0..10_000 {
        let shape = PlanarShape {
            vertices: rng.gen_range(3..=8),
            density: rng.gen_range(0.0..1.0),
        };
        let p_e2 = rng.gen_range(0.1..0.7);
        let w = rng.gen_range(0..=4);
        let inst = random_fccp(&mut rng, shape, p_e2, w);
        let oracle = fccp_oracle(&inst).unwrap();
        yes += oracle.is_yes() as usize;
        if solve_fccp(&inst).unwrap() != oracle {
            wrong += 1;
        }
    }
    let elapsed = start.elapsed();
    report(
        wrong == 0 && elapsed <= Duration::from_secs(600),
        format!("10000 instances ({yes} YES), {wrong} disagreements, {elapsed:.1?}"),
    )
}

fn root_invariance() -> Report {
    let mut rng = rng(4);
    let mut violations = 0;
    let mut roots = 0;
    for _ in 0..1000 {
        let shape = PlanarShape {
            vertices: rng.gen_range(4..=14),
            density: rng.gen_range(0.0..1.0),
        };
        let p_e2 = rng.gen_range(0.1..0.7);
        let w = rng.gen_range(1..=6);
        let inst = random_fccp(&mut rng, shape, p_e2, w);
        let solver = FccpSolver::new(&inst.graph).unwrap();
        let first = solver.solve(&inst.classes, &inst.pairs).unwrap();
        for e in 0..inst.graph.edge_count() {
            roots += 1;
            if solver.reroot(e).unwrap().solve(&inst.classes, &inst.pairs).unwrap() != first {
                violations += 1;
                break;
            }
        }
    }
    report(violations == 0, format!("1000 instances, {roots} roots, {violations} violations"))
}

fn hpp_equivalence() -> Report {
    let mut rng = rng(5);
    let (mut wrong, mut round_trips) = (0, 0);
    for _ in 0..2000 {
        let shape = PlanarShape {
            vertices: rng.gen_range(3..=8),
            density: rng.gen_range(0.0..1.0),
        };
        let p_s = rng.gen_range(0.1..0.7);
        let t = rng.gen_range(0..=4);
        let h = random_hpp(&mut rng, shape, p_s, t);
        let image = hpp_to_fccp(&h);
        let direct = hpp_oracle(&h).unwrap();
        let mut agree = direct == fccp_oracle(&image).unwrap() && direct == solve_fccp(&image).unwrap();
        if let Ok(back) = fccp_to_hpp(&image) {
            round_trips += 1;
            agree &= back == h && hpp_oracle(&back).unwrap() == direct;
        }
        wrong += !agree as usize;
    }
    report(wrong == 0, format!("2000 instances, {round_trips} round trips, {wrong} disagreements"))
}

fn pep_sanity() -> Report {
    let mut rng = rng(6);
    let mut false_negatives = 0;
    for _ in 0..500 {
        let n = rng.gen_range(4..=12);
        let p = extendable_pep(&mut rng, n);
        if solve_fccp(&pep_to_fccp(&p).unwrap()).unwrap() != Verdict::Yes {
            false_negatives += 1;
        }
    }
    let (mut found, mut attempts, mut confirmed_no, mut wrong) = (0, 0, 0, 0);
    while found < 500 && attempts < 200_000 {
        attempts += 1;
        let n = rng.gen_range(5..=8);
        let Some(p) = non_extendable_pep(&mut rng, n) else { continue };
        found += 1;
        let f = pep_to_fccp(&p).unwrap();
        if fccp_oracle(&f).unwrap() == Verdict::No {
            confirmed_no += 1;
            if solve_fccp(&f).unwrap() != Verdict::No {
                wrong += 1;
            }
        }
    }
    report(
        false_negatives == 0 && found == 500 && wrong == 0,
        format!(
            "500 extendable: {false_negatives} false negatives; {found} non-extendable: {confirmed_no} confirmed NO by enumeration, {wrong} answered YES"
        ),
    )
}

fn pinned_fixtures() -> Report {
    let bin = env!("CARGO_BIN_EXE_corefacial");
    let cases = [
        ("test", "c4.fccp", 0),
        ("test", "k4_apex_abc.fccp", 1),
        ("test", "k4_apex_ab.fccp", 0),
        ("test", "k5.fccp", 1),
        ("test", "k5_mixed.fccp", 1),
        ("test", "k4_apex.hpp", 1),
        ("oracle", "c4.fccp", 0),
        ("oracle", "k4_apex_abc.fccp", 1),
        ("oracle", "k4_apex_ab.fccp", 0),
        ("oracle", "k5.fccp", 1),
        ("test", "malformed.fccp", 2),
    ];
    let mut wrong = Vec::new();
    for (sub, file, code) in cases {
        let status = Command::new(bin).arg(sub).arg(fixture(file)).output().unwrap().status;
        if status.code() != Some(code) {
            wrong.push(format!("{sub} {file} gave {:?}", status.code()));
        }
    }
    let edges: Vec<_> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    let k5 = Graph::from_edges(5, &edges).unwrap();
    for mask in 0u32..1 << 10 {
        let classes = (0..10).map(|e| if mask >> e & 1 == 1 { CoreClass::E2 } else { CoreClass::E1 }).collect();
        let inst = FccpInstance::new(k5.clone(), classes, vec![]).unwrap();
        if solve_fccp(&inst).unwrap() != Verdict::No {
            wrong.push(format!("K5 classes {mask:010b}"));
            break;
        }
    }
    report(wrong.is_empty(), format!("{} CLI cases and 1024 K5 colorings, mismatches: {wrong:?}", cases.len()))
}

fn spqr_problems(t: &SpqrTree) -> Vec<String> {
    let mut problems = Vec::new();
    if let Err(e) = t.validate() {
        problems.push(e);
    }
    let g = t.graph();
    let mut covered = vec![0; g.edge_count()];
    for (id, node) in t.nodes().iter().enumerate() {
        match node.kind {
            NodeKind::Q => {
                if let Some(e) = node.real_edge() {
                    covered[e] += 1;
                }
            }
            NodeKind::R => {
                if !is_triconnected(&t.skeleton_graph(id).0) {
                    problems.push(format!("R-node {id} not triconnected"));
                }
            }
            NodeKind::S | NodeKind::P => {
                for e in &node.skeleton {
                    if let SkelLink::Virtual { node: other, .. } = e.link {
                        if t.node(other).kind == node.kind {
                            problems.push(format!("adjacent {} nodes {id} and {other}", node.kind));
                        }
                    }
                }
            }
        }
    }
    if covered.iter().any(|&c| c != 1) {
        problems.push("Q-nodes do not partition the edges".into());
    }
    let canonical = t.canonical_form();
    for q in t.q_nodes().collect::<Vec<_>>() {
        if t.reroot(q).unwrap().canonical_form() != canonical {
            problems.push(format!("reroot at {q} changes the canonical form"));
        }
    }
    let e = g.edge_count() - 1;
    if SpqrTree::build_rooted(g, e).unwrap().canonical_form() != canonical {
        problems.push(format!("rebuild at edge {e} changes the canonical form"));
    }
    problems
}

fn spqr_structure() -> Report {
    let mut rng = rng(8);
    let mut bad = 0;
    let mut first = None;
    for i in 0..1000 {
        let shape = PlanarShape {
            vertices: rng.gen_range(3..=50),
            density: rng.gen_range(0.0..1.0),
        };
        let (mut g, _) = random_biconnected_planar(&mut rng, shape);
        // every fourth graph gets random extra edges and is usually not planar
        if i % 4 == 3 {
            for _ in 0..rng.gen_range(1..=5) {
                let (a, b) = (rng.gen_range(0..g.vertex_count()), rng.gen_range(0..g.vertex_count()));
                if a != b && g.find_edge(a, b).is_none() {
                    g.add_edge(a, b).unwrap();
                }
            }
        }
        let problems = spqr_problems(&SpqrTree::build(&g).unwrap());
        if !problems.is_empty() {
            bad += 1;
            first.get_or_insert(problems);
        }
    }
    report(bad == 0, format!("1000 graphs, {bad} with violations {:?}", first.unwrap_or_default()))
}

fn scaling() -> Report {
    let mut rng = rng(9);
    let mut slowest = Duration::ZERO;
    let mut wrong = 0;
    for k in 0..6 {
        let (graph, emb) = random_biconnected_planar(
            &mut rng,
            PlanarShape {
                vertices: 300,
                density: [0.1, 0.5, 0.9][k % 3],
            },
        );
        let classes = random_classes(&mut rng, graph.edge_count(), 0.3);
        // half the runs draw W from one embedding, so they must be YES
        let pairs = if k < 3 {
            random_pairs(&mut rng, &graph, &classes, 100)
        } else {
            let cofacial: Vec<_> = cofacial_pairs(&emb, &classes)
                .into_iter()
                .filter(|&(x, y)| graph.find_edge(x, y).is_none_or(|e| classes[e] != CoreClass::E1))
                .collect();
            let picks = rand::seq::index::sample(&mut rng, cofacial.len(), 100.min(cofacial.len()));
            picks.into_iter().map(|i| cofacial[i]).collect()
        };
        let inst = FccpInstance::new(graph, classes, pairs).unwrap();
        let start = Instant::now();
        let verdict = corefacial::fccp::solve_fccp_with(&inst, &SolveOptions::default()).unwrap().verdict;
        slowest = slowest.max(start.elapsed());
        if k >= 3 && (verdict != Verdict::Yes || inst.pairs.len() != 100) {
            wrong += 1;
        }
    }
    report(
        slowest <= Duration::from_secs(60) && wrong == 0,
        format!("6 instances with |V| = 300, |W| = 100, slowest {slowest:.2?}, {wrong} constructed-YES instances not YES"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Report); 9] = [
        ("weight-model truth table", weight_truth_table),
        ("oracle equivalence, exhaustive |V| <= 6, |W| <= 2", exhaustive_small),
        ("oracle equivalence, 10000 random |V| <= 8, |W| <= 4", randomized_small),
        ("root invariance, 1000 instances", root_invariance),
        ("hpp/fccp equivalence, 2000 instances", hpp_equivalence),
        ("pep sanity, 500 + 500 instances", pep_sanity),
        ("pinned fixtures and exit codes", pinned_fixtures),
        ("spqr structure, 1000 graphs", spqr_structure),
        ("scaling, |V| = 300, |W| = 100 within 60 s", scaling),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let r = check();
        failed += !r.pass as usize;
        println!("criterion {}: {} {name}: {}", i + 1, if r.pass { "PASS" } else { "FAIL" }, r.detail);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
