//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on any FAIL.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use reconalg::cfrac::{hj_expand, ij_series, riemenschneider_dual};
use reconalg::grading::{check_homogeneity, phi};
use reconalg::homology::{global_dimension_with, resolution_of_simple, verify_exactness};
use reconalg::moduli::{chart_overlap_iso_on, chart_representation_on, dual_graph, stability_check, transition_check};
use reconalg::pathalg::{
    class_table, default_degree, verify_endomorphism_presentation, verify_endomorphism_presentation_with, Engine,
    Limits, QuotientAutomaton, Schedule, VerifyOptions,
};
use reconalg::quiver::{reverse_iso, ArrowKind};
use reconalg::relations::generate_relations;
use reconalg::{build_quiver, LabelList, Monomial, Quiver};

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn coprime_pairs(max_r: u64) -> impl Iterator<Item = (u64, u64)> {
    (2..=max_r).flat_map(|r| (1..r).filter(move |&a| gcd(r, a) == 1).map(move |a| (r, a)))
}

fn labels(v: &[u64]) -> LabelList {
    LabelList::new(v.to_vec()).unwrap()
}

fn setup(r: u64, a: u64) -> (Quiver, Vec<reconalg::Relation>) {
    let q = Quiver::from_group(r, a).unwrap();
    let rels = generate_relations(&q);
    (q, rels)
}

fn rat(rng: &mut impl Rng, nonzero: bool) -> BigRational {
    loop {
        let n: i64 = rng.gen_range(-12..=12);
        let d: i64 = rng.gen_range(1..=9);
        if !(nonzero && n == 0) {
            return BigRational::new(BigInt::from(n), BigInt::from(d));
        }
    }
}

fn all_label_lists(max_n: usize, max_alpha: u64) -> Vec<LabelList> {
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<u64>> = vec![vec![]];
    for _ in 0..max_n {
        let mut next = Vec::new();
        for v in &frontier {
            for x in 2..=max_alpha {
                let mut w = v.clone();
                w.push(x);
                out.push(labels(&w));
                next.push(w);
            }
        }
        frontier = next;
    }
    out
}

fn unordered_names(q: &Quiver) -> BTreeSet<(String, String)> {
    generate_relations(q)
        .iter()
        .map(|r| {
            let (x, y) = (r.lhs.name(q), r.rhs.name(q));
            if x <= y {
                (x, y)
            } else {
                (y, x)
            }
        })
        .collect()
}

fn listed(pairs: &[(&str, &str)]) -> BTreeSet<(String, String)> {
    pairs
        .iter()
        .map(|&(x, y)| if x <= y { (x.to_string(), y.to_string()) } else { (y.to_string(), x.to_string()) })
        .collect()
}

fn ac1() -> Result<(), String> {
    let cases: [(u64, u64, &[u64]); 3] = [(7, 2, &[4, 2]), (40, 11, &[4, 3, 4]), (693, 256, &[3, 4, 2, 4, 2, 3, 3])];
    for (r, a, want) in cases {
        let got = hj_expand(r, a).unwrap();
        if got.as_slice() != want {
            return Err(format!("hj_expand({r},{a}) = {got}"));
        }
    }
    let s = ij_series(40, 11).unwrap();
    if s.i != [40, 11, 4, 1, 0] || s.j != [0, 1, 4, 11, 40] {
        return Err("series of 40/11".into());
    }
    let s = ij_series(693, 256).unwrap();
    if s.i != [693, 256, 75, 44, 13, 8, 3, 1, 0] || s.j != [0, 1, 3, 11, 19, 65, 111, 268, 693] {
        return Err("series of 693/256".into());
    }
    Ok(())
}

fn ac2() -> Result<(), String> {
    let d = riemenschneider_dual(40, 11).unwrap();
    if d.as_slice() != [2, 2, 3, 3, 2, 2] || d != hj_expand(40, 29).unwrap() {
        return Err(format!("dual of 40/11 = {d}"));
    }
    for (r, a) in coprime_pairs(200) {
        if riemenschneider_dual(r, a).unwrap() != hj_expand(r, r - a).unwrap() {
            return Err(format!("({r},{a})"));
        }
    }
    Ok(())
}

fn ac3() -> Result<(), String> {
    let q = build_quiver(&labels(&[4, 2])).unwrap();
    let shape = (q.vertex_count(), q.arrows().len(), generate_relations(&q).len());
    if shape != (3, 8, 7) {
        return Err(format!("[4,2] shape {shape:?}"));
    }
    let want = listed(&[
        ("k_{2}a_{0,1}", "a_{1,2}c_{2,1}"),
        ("c_{1,0}a_{0,1}", "k_{1}c_{0,2}c_{2,1}"),
        ("k_{1}a_{0,1}", "k_{2}c_{0,2}c_{2,1}"),
        ("c_{2,1}a_{1,2}", "a_{2,0}c_{0,2}"),
        ("a_{0,1}c_{1,0}", "c_{0,2}c_{2,1}k_{1}"),
        ("a_{0,1}k_{1}", "c_{0,2}c_{2,1}k_{2}"),
        ("c_{0,2}a_{2,0}", "a_{0,1}k_{2}"),
    ]);
    if unordered_names(&q) != want {
        return Err("[4,2] relation list".into());
    }
    let q = build_quiver(&labels(&[4, 3, 4])).unwrap();
    let shape = (q.vertex_count(), q.arrows().len(), generate_relations(&q).len());
    if shape != (4, 13, 14) {
        return Err(format!("[4,3,4] shape {shape:?}"));
    }
    let want = listed(&[
        ("c_{1,0}a_{0,1}", "k_{1}c_{0,3}c_{3,2}c_{2,1}"),
        ("a_{0,1}c_{1,0}", "c_{0,3}c_{3,2}c_{2,1}k_{1}"),
        ("k_{1}a_{0,1}", "k_{2}c_{0,3}c_{3,2}c_{2,1}"),
        ("a_{0,1}k_{1}", "c_{0,3}c_{3,2}c_{2,1}k_{2}"),
        ("k_{2}a_{0,1}", "a_{1,2}c_{2,1}"),
        ("c_{2,1}a_{1,2}", "k_{3}c_{0,3}c_{3,2}"),
        ("c_{0,3}c_{3,2}k_{3}", "a_{0,1}k_{2}"),
        ("k_{3}a_{0,1}a_{1,2}", "a_{2,3}c_{3,2}"),
        ("c_{3,2}a_{2,3}", "k_{4}c_{0,3}"),
        ("c_{0,3}k_{4}", "a_{0,1}a_{1,2}k_{3}"),
        ("k_{4}a_{0,1}a_{1,2}a_{2,3}", "k_{5}c_{0,3}"),
        ("a_{0,1}a_{1,2}a_{2,3}k_{4}", "c_{0,3}k_{5}"),
        ("k_{5}a_{0,1}a_{1,2}a_{2,3}", "a_{3,0}c_{0,3}"),
        ("a_{0,1}a_{1,2}a_{2,3}k_{5}", "c_{0,3}a_{3,0}"),
    ]);
    if unordered_names(&q) != want {
        return Err("[4,3,4] relation list".into());
    }
    Ok(())
}

fn ac4() -> Result<(), String> {
    let q = Quiver::from_group(40, 11).unwrap();
    let table = phi(&q, q.series());
    let mut got: Vec<Monomial> = q.arrows().iter().map(|a| table.get(a.id)).collect();
    got.sort();
    let mut want: Vec<Monomial> = [
        (29, 0), (18, 1), (7, 2), (3, 3), (2, 7), (1, 18), (0, 29), (1, 0), (0, 1), (3, 0), (7, 0), (0, 3), (0, 7),
    ]
    .iter()
    .map(|&(x, y)| Monomial::new(x, y))
    .collect();
    want.sort();
    if got != want {
        return Err(format!("(40,11) labels {got:?}"));
    }
    let q = Quiver::from_group(73, 27).unwrap();
    let table = phi(&q, q.series());
    let anti: Vec<Monomial> =
        q.arrows().iter().filter(|a| a.kind == ArrowKind::Anticlockwise).map(|a| table.get(a.id)).collect();
    let want: Vec<Monomial> = [1, 2, 8, 8, 27, 27].iter().map(|&e| Monomial::new(0, e)).collect();
    if anti != want {
        return Err(format!("(73,27) anticlockwise labels {anti:?}"));
    }
    Ok(())
}

const AC5_CASES: [(u64, u64); 7] = [(2, 1), (3, 1), (4, 3), (5, 3), (7, 2), (11, 3), (40, 11)];

fn ac5() -> Result<(), String> {
    for (r, a) in AC5_CASES {
        let d = default_degree(r).min(85);
        let report = verify_endomorphism_presentation(r, a, d).map_err(|e| e.to_string())?;
        if !report.passed {
            return Err(format!("({r},{a}) D={d}: {:?}", report.failures.first()));
        }
    }
    Ok(())
}

fn ac6() -> Result<(), String> {
    let mut lists: Vec<LabelList> = AC5_CASES.iter().map(|&(r, a)| hj_expand(r, a).unwrap()).collect();
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    for _ in 0..50 {
        let n = rng.gen_range(1..=5);
        lists.push(labels(&(0..n).map(|_| rng.gen_range(2..=6)).collect::<Vec<_>>()));
    }
    for l in lists {
        let q = build_quiver(&l).unwrap();
        let report = check_homogeneity(&q, &generate_relations(&q), &phi(&q, q.series()));
        if !report.passed() {
            return Err(format!("{l}: {:?}", report.first_failure()));
        }
    }
    Ok(())
}

fn ac7() -> Result<(), String> {
    for (r, a) in [(4, 3), (7, 2), (11, 3)] {
        let (q, rels) = setup(r, a);
        let auto = QuotientAutomaton::build(&q, &rels, default_degree(r), Schedule::Forward, &Limits::default())
            .map_err(|e| e.to_string())?;
        let mut pd = Vec::new();
        for t in 0..q.vertex_count() {
            let rep = verify_exactness(&q, &resolution_of_simple(&q, &rels, t), &auto).map_err(|e| e.to_string())?;
            if !rep.passed {
                return Err(format!("({r},{a}) D_{t}: {:?}", rep.failures.first()));
            }
            pd.push(rep.projective_dimension);
        }
        let pd0 = if a == r - 1 { 2 } else { 3 };
        if pd[0] != pd0 || pd[1..].iter().any(|&p| p != 2) {
            return Err(format!("({r},{a}) pd {pd:?}"));
        }
    }
    for (r, a) in coprime_pairs(50) {
        let g = global_dimension_with(r, a, Some(default_degree(r))).map_err(|e| e.to_string())?;
        if !g.verified || (g.value == 2) != (a == r - 1) {
            return Err(format!("({r},{a}) gldim {} verified {}", g.value, g.verified));
        }
    }
    Ok(())
}

fn ac8() -> Result<(), String> {
    for (r, a) in coprime_pairs(100) {
        let n = hj_expand(r, a).unwrap().n();
        for t in 1..=n {
            if !transition_check(r, a, t).unwrap().passed {
                return Err(format!("transition ({r},{a}) t={t}"));
            }
        }
        if dual_graph(r, a).unwrap().to_labels().unwrap() != hj_expand(r, a).unwrap() {
            return Err(format!("dual graph ({r},{a})"));
        }
    }
    let mut rng = rand::rngs::StdRng::seed_from_u64(99);
    for (r, a) in [(7, 2), (11, 3)] {
        let (q, rels) = setup(r, a);
        for t in 0..=q.n() {
            for _ in 0..100 {
                let (p, s) = (rat(&mut rng, false), rat(&mut rng, false));
                let rep = chart_representation_on(&q, &rels, t, (&p, &s)).map_err(|e| format!("({r},{a}) W_{t}: {e}"))?;
                if !rep.satisfies(&rels) || !stability_check(&q, &rep) {
                    return Err(format!("({r},{a}) W_{t} at ({p},{s})"));
                }
            }
        }
        for t in 1..=q.n() {
            for _ in 0..50 {
                let (p, s) = (rat(&mut rng, false), rat(&mut rng, true));
                let iso = chart_overlap_iso_on(&q, &rels, t, &p, &s).map_err(|e| format!("({r},{a}) overlap {t}: {e}"))?;
                if iso.target_point.0 != s.recip() {
                    return Err(format!("({r},{a}) overlap {t} target"));
                }
            }
        }
    }
    Ok(())
}

fn ac9() -> Result<(), String> {
    for l in all_label_lists(5, 6) {
        let iso = reverse_iso(&l).unwrap();
        let image: BTreeSet<_> = generate_relations(&iso.forward)
            .iter()
            .map(|r| {
                let (x, y) = (iso.apply(&r.lhs.arrows), iso.apply(&r.rhs.arrows));
                if x <= y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect();
        let target: BTreeSet<_> = generate_relations(&iso.backward).iter().map(|r| r.unordered()).collect();
        if image != target {
            return Err(format!("{l}"));
        }
    }
    Ok(())
}

fn ac10() -> Result<(), String> {
    for (r, a, d, engine) in [(7, 2, 16, Engine::Automaton), (40, 11, 82, Engine::Automaton), (11, 3, 14, Engine::Explicit)] {
        let (q, rels) = setup(r, a);
        let lim = Limits::default();
        let f = class_table(&q, &rels, d, engine, Schedule::Forward, &lim).map_err(|e| e.to_string())?;
        let b = class_table(&q, &rels, d, engine, Schedule::Reverse, &lim).map_err(|e| e.to_string())?;
        if f != b {
            return Err(format!("({r},{a}) {engine:?} partitions differ"));
        }
        let opts = |schedule| VerifyOptions { engine, schedule, limits: lim };
        let x = verify_endomorphism_presentation_with(r, a, d, &opts(Schedule::Forward)).map_err(|e| e.to_string())?;
        let y = verify_endomorphism_presentation_with(r, a, d, &opts(Schedule::Reverse)).map_err(|e| e.to_string())?;
        if x != y {
            return Err(format!("({r},{a}) reports differ"));
        }
    }
    let bin = env!("CARGO_BIN_EXE_reconalg");
    let runs: [&[&str]; 4] = [
        &["verify-endo", "--r", "7", "--a", "2", "--degree", "20", "--json"],
        &["resolve", "--r", "7", "--a", "2", "--json"],
        &["quiver", "--labels", "4,3,4", "--json"],
        &["moduli", "--r", "40", "--a", "11", "--json"],
    ];
    for args in runs {
        let once = Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
        let twice = Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
        if !once.status.success() || once.stdout != twice.stdout || once.stdout.is_empty() {
            return Err(format!("{args:?} not reproducible"));
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, &str, fn() -> Result<(), String>); 10] = [
        ("AC1", "continued fractions and i/j-series", ac1),
        ("AC2", "Riemenschneider duality, r <= 200", ac2),
        ("AC3", "presentation sizes and relation lists", ac3),
        ("AC4", "arrow monomials", ac4),
        ("AC5", "graded cells match the Hom indicator", ac5),
        ("AC6", "relation homogeneity", ac6),
        ("AC7", "exact resolutions and global dimension", ac7),
        ("AC8", "charts, representations, overlaps, dual graph", ac8),
        ("AC9", "reversal carries relations", ac9),
        ("AC10", "determinism", ac10),
    ];
    let mut failed = 0;
    for (id, what, check) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("{id} PASS {what} ({secs:.1}s)"),
            Err(why) => {
                failed += 1;
                println!("{id} FAIL {what}: {why} ({secs:.1}s)");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
