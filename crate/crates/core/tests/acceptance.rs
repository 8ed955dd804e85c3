//! Acceptance suite: one PASS/FAIL line per criterion, exact comparisons only.

mod common;

use std::process::Command;
use std::time::Instant;

use common::*;
use ribbontutte::links::{realize_gauss_code, VirtualLinkDiagram, DEFAULT_CROSSING_CAP};
use ribbontutte::planemap::{EdgeKind, RelEdge, RelPlaneGraph};
use ribbontutte::poly::{subs, Polynomial};
use ribbontutte::ribbon::Weight;
use ribbontutte::verify::{random_link, random_plane_map, run_suite, Check, CheckReport};

type Outcome = Result<String, String>;

fn suite(check: Check, count: usize, seed: u64, max_size: usize) -> Outcome {
    let reports = run_suite(check, count, seed, max_size).map_err(|e| e.to_string())?;
    summarize(&reports)
}

fn summarize(reports: &[CheckReport]) -> Outcome {
    match reports.iter().find(|r| !r.pass) {
        Some(r) => Err(format!(
            "{} of {} failed; first: {r}",
            reports.iter().filter(|r| !r.pass).count(),
            reports.len()
        )),
        None => Ok(format!("{} instances", reports.len())),
    }
}

fn main_theorem() -> Outcome {
    suite(Check::Main, 200, 1000, 8)
}

fn subset_identities() -> Outcome {
    suite(Check::Identities, 50, 2000, 6)
}

fn classical_reduction() -> Outcome {
    let triangle = RelPlaneGraph::from_cycles(
        vec![vec![0, 5], vec![1, 2], vec![3, 4]],
        (0..3)
            .map(|e| RelEdge {
                label: format!("e{e}"),
                kind: EdgeKind::Regular {
                    weight: Weight::unit(),
                    sign: None,
                },
            })
            .collect(),
    )
    .unwrap();
    let expected: Polynomial = "X^2 + 3*X + 3 + Y".parse().unwrap();
    let got = triangle.relative_tutte().unwrap();
    if got != expected {
        return Err(format!("triangle gave {got}"));
    }
    if to_poly2(&got) != rank_polynomial(3, &[(0, 1), (1, 2), (2, 0)]) {
        return Err("oracle disagrees on the triangle".into());
    }
    for i in 0..50u64 {
        let seed = 3000 + i;
        let size = 1 + i as usize % 8;
        let map = random_plane_map(seed, size);
        let ends: Vec<(usize, usize)> = (0..size).map(|e| map.rotation().ends(e)).collect();
        let edges = (0..size)
            .map(|e| RelEdge {
                label: format!("e{e}"),
                kind: EdgeKind::Regular {
                    weight: Weight::unit(),
                    sign: None,
                },
            })
            .collect();
        let g = RelPlaneGraph::new(map, edges).unwrap();
        let got = to_poly2(&g.relative_tutte().unwrap());
        if got != rank_polynomial(g.vertex_count(), &ends) {
            return Err(format!("seed={seed} size={size}"));
        }
    }
    Ok("triangle + 50 instances".into())
}

fn duality() -> Outcome {
    suite(Check::Duality, 100, 4000, 8)
}

fn bracket_theorem() -> Outcome {
    suite(Check::Bracket, 100, 5000, 6)
}

fn bracket_basics() -> Outcome {
    let (a, b, d) = (Polynomial::var("A"), Polynomial::var("B"), Polynomial::var("d"));
    let ones = subs(&[("A", 1.into()), ("B", 1.into()), ("d", 1.into())]);
    let swap = subs(&[("A", b.clone()), ("B", a.clone())]);
    for n in 0..=10usize {
        let l = random_link(6000 + n as u64, n);
        let terms = l.state_terms(DEFAULT_CROSSING_CAP).unwrap();
        let total = l.kauffman_bracket().unwrap().substitute_all(&ones).unwrap();
        if terms.len() != 1 << n || total != Polynomial::constant(1i64 << n) {
            return Err(format!("state count at n={n}"));
        }
    }
    for seed in 0..20u64 {
        let l = random_link(6100 + seed, 1 + seed as usize % 6);
        let k = random_link(6200 + seed, 1 + seed as usize % 4);
        let bracket = l.kauffman_bracket().unwrap();
        if l.mirror().kauffman_bracket().unwrap() != bracket.substitute_all(&swap).unwrap() {
            return Err(format!("mirror, seed {}", 6100 + seed));
        }
        let union = l.disjoint_union(&k).kauffman_bracket().unwrap();
        if union != &(&d * &bracket) * &k.kauffman_bracket().unwrap() {
            return Err(format!("disjoint union, seed {}", 6100 + seed));
        }
    }
    if VirtualLinkDiagram::unlink(1).jones().unwrap() != Polynomial::one() {
        return Err("Jones of the unknot".into());
    }
    let trefoil = diagram_from_pd(&TREFOIL_PD);
    if to_laurent_t(&trefoil.jones().unwrap()) != jones_from_pd(&TREFOIL_PD) {
        return Err("trefoil against the state-sum oracle".into());
    }
    let gauss = realize_gauss_code("O1+U2+O3+U1+O2+U3+").unwrap();
    if gauss.jones().unwrap() != trefoil.jones().unwrap() {
        return Err("realized trefoil".into());
    }
    Ok("n <= 10, 20 mirror/union pairs, unknot, trefoil".into())
}

fn round_trip() -> Outcome {
    suite(Check::RoundTrip, 100, 7000, 6)
}

fn medial_vs_boundary() -> Outcome {
    suite(Check::Medial, 200, 8000, 10)
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let rg = dir.path().join("r.rg");
    std::fs::write(
        &rg,
        "vertex u: a c e\nvertex v: b d f\nedge p: a b sign=-\nedge q: c d sign=+\nedge r: e f sign=-\n",
    )
    .unwrap();
    let rg = rg.to_str().unwrap();
    let invocations: [&[&str]; 3] = [
        &["verify", "--main", "--identities", "--duality", "--bracket", "--random=10", "--seed=42", "--max-size=5"],
        &["convert", "--to=plane", "--seed", "9", rg],
        &["br", rg],
    ];
    for args in invocations {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_ribbontutte"))
                .args(args)
                .output()
                .map_err(|e| e.to_string())
        };
        let (first, second) = (run()?, run()?);
        if first.stdout != second.stdout || first.status.code() != second.status.code() {
            return Err(format!("outputs differ for {args:?}"));
        }
        if first.status.code() != Some(0) {
            return Err(format!("{args:?} exited with {:?}", first.status.code()));
        }
    }
    Ok("3 invocations byte-identical".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("main identity on 200 random ribbon graphs", main_theorem),
        ("per-subset identities on 50 conversions", subset_identities),
        ("classical reduction against deletion-contraction", classical_reduction),
        ("duality and double dual on 100 graphs", duality),
        ("bracket from the Tait graph on 100 diagrams", bracket_theorem),
        ("bracket basics", bracket_basics),
        ("ribbon -> plane -> ribbon keeps the polynomial", round_trip),
        ("medial circles = boundary of the all-twisted ribbon graph", medial_vs_boundary),
        ("deterministic CLI output", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail}, {secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
