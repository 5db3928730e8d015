//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with `cargo test --test acceptance -- --nocapture`).

use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::time::{Duration, Instant};

use rhomboid_core::analysis::{closed_form_2vdm, predict, predict_shape, ComplexityTriple};
use rhomboid_core::expr::{self, equivalent, parse, render, EquivMode, SplitMix64, DEFAULT_MODULUS};
use rhomboid_core::graph::{
    self, build_fibonacci, canonical_expression, enumerate_paths, eval_paths_mod, label,
    labels_between,
};
use rhomboid_core::vdm::{generate, RhomboidFamily, SubgraphSpec};
use rhomboid_core::{Expr, Method, Series, ShapeClass, VertexRef};

const METHODS: [Method; 3] = [Method::TwoVdm, Method::OneVdm, Method::Combined];

const TABLE_1VDM: [(u32, u64, u64, u64); 15] = [
    (1, 0, 1, 3),
    (2, 5, 10, 15),
    (3, 20, 29, 42),
    (4, 53, 66, 85),
    (5, 104, 123, 152),
    (6, 175, 204, 243),
    (7, 284, 323, 388),
    (8, 409, 474, 531),
    (9, 608, 665, 760),
    (10, 793, 888, 975),
    (20, 6325, 6800, 7061),
    (30, 21351, 22326, 23301),
    (40, 50905, 53280, 54063),
    (50, 98935, 100690, 102445),
    (60, 171195, 176070, 178995),
];

const TABLE_2VDM: [(u32, u64, u64, u64); 15] = [
    (1, 0, 1, 3),
    (2, 5, 10, 15),
    (3, 28, 33, 48),
    (4, 51, 66, 81),
    (5, 120, 135, 170),
    (6, 189, 224, 259),
    (7, 278, 313, 358),
    (8, 367, 412, 457),
    (9, 574, 619, 704),
    (10, 781, 866, 951),
    (20, 5027, 5282, 5537),
    (30, 13077, 13472, 13867),
    (40, 31183, 31948, 32713),
    (50, 54493, 55518, 56543),
    (60, 80043, 81228, 82413),
];

const TABLE_COMBINED: [(u32, u64, u64, u64); 15] = [
    (1, 0, 1, 3),
    (2, 5, 10, 15),
    (3, 20, 29, 42),
    (4, 51, 66, 81),
    (5, 104, 119, 152),
    (6, 157, 192, 227),
    (7, 262, 297, 342),
    (8, 367, 412, 457),
    (9, 526, 571, 652),
    (10, 685, 766, 847),
    (20, 4435, 4678, 4921),
    (30, 12789, 13184, 13579),
    (40, 27583, 28312, 29041),
    (50, 48445, 49470, 50495),
    (60, 78315, 79500, 80685),
];

/// Runs a criterion body, prints its pass/fail line, enforces the runtime
/// budget, and propagates failure.
fn criterion<F>(id: u32, name: &str, budget: Option<Duration>, body: F)
where
    F: FnOnce() -> Result<String, String> + UnwindSafe,
{
    let start = Instant::now();
    let outcome = catch_unwind(body);
    let elapsed = start.elapsed();
    match outcome {
        Ok(Ok(detail)) => {
            if let Some(b) = budget {
                if elapsed > b {
                    println!(
                        "criterion {id} ({name}): FAIL [{elapsed:.2?} exceeds budget {b:.2?}]"
                    );
                    panic!("criterion {id} exceeded its runtime budget");
                }
            }
            println!("criterion {id} ({name}): PASS [{elapsed:.2?}] {detail}");
        }
        Ok(Err(msg)) => {
            println!("criterion {id} ({name}): FAIL [{elapsed:.2?}] {msg}");
            panic!("criterion {id} failed: {msg}");
        }
        Err(payload) => {
            println!("criterion {id} ({name}): FAIL [{elapsed:.2?}] (panic)");
            resume_unwind(payload);
        }
    }
}

fn check_table(
    method: Method,
    table: &[(u32, u64, u64, u64)],
) -> Result<String, String> {
    let mut mismatches = Vec::new();
    for &(n, core, leaf, dip) in table {
        let got = predict(method, n).map_err(|e| e.to_string())?;
        let want = ComplexityTriple { core, leaf, dipterous: dip };
        if got != want {
            mismatches.push(format!(
                "n={n}: expected ({}, {}, {}), got ({}, {}, {})",
                want.core, want.leaf, want.dipterous, got.core, got.leaf, got.dipterous
            ));
        }
    }
    if mismatches.is_empty() {
        Ok(format!("{} rows exact", table.len()))
    } else {
        Err(format!("discrepancy report: {}", mismatches.join("; ")))
    }
}

/// All nine spec orientations of size `n` (core, four leaves, two
/// parallelograms, two trapezoids).
fn orientations(family: RhomboidFamily, n: u32) -> Vec<SubgraphSpec> {
    let b = VertexRef::basic;
    let u = VertexRef::upper;
    let l = VertexRef::lower;
    [
        (b(1), b(n)),
        (b(1), u(n)),
        (b(1), l(n)),
        (u(1), b(1 + n)),
        (l(1), b(1 + n)),
        (u(1), u(1 + n)),
        (l(1), l(1 + n)),
        (u(1), l(1 + n)),
        (l(1), u(1 + n)),
    ]
    .into_iter()
    .map(|(s, d)| SubgraphSpec::new(family, s, d).unwrap())
    .collect()
}

#[test]
fn criterion_01_two_vdm_table() {
    criterion(1, "2-VDM complexity table", Some(Duration::from_secs(1)), || {
        check_table(Method::TwoVdm, &TABLE_2VDM)
    });
}

#[test]
fn criterion_02_one_vdm_table() {
    criterion(2, "1-VDM complexity table", Some(Duration::from_secs(1)), || {
        check_table(Method::OneVdm, &TABLE_1VDM)
    });
}

#[test]
fn criterion_03_combined_table() {
    criterion(3, "combined-method complexity table", Some(Duration::from_secs(1)), || {
        check_table(Method::Combined, &TABLE_COMBINED)
    });
}

#[test]
fn criterion_04_closed_forms() {
    criterion(4, "closed forms at powers of two", Some(Duration::from_secs(1)), || {
        let spot = [(1u32, (5, 10, 15)), (2, (51, 66, 81)), (3, (367, 412, 457))];
        for (k, (c, l, d)) in spot {
            let got = closed_form_2vdm(k).map_err(|e| e.to_string())?;
            if (got.core, got.leaf, got.dipterous) != (c, l, d) {
                return Err(format!("closed form at k={k} gave {got:?}"));
            }
        }
        for k in 1..=6u32 {
            let cf = closed_form_2vdm(k).map_err(|e| e.to_string())?;
            let dp = predict(Method::TwoVdm, 1 << k).map_err(|e| e.to_string())?;
            if cf != dp {
                return Err(format!("k={k}: closed form {cf:?} != recurrence {dp:?}"));
            }
        }
        Ok("k=1..6 exact, integral".into())
    });
}

#[test]
fn criterion_05_generator_predictor_agreement() {
    criterion(5, "generator/predictor agreement", Some(Duration::from_secs(60)), || {
        let mut checked = 0u32;
        for method in METHODS {
            for n in 1..=64u32 {
                for spec in orientations(RhomboidFamily::Fsr, n) {
                    let got = generate(&spec, method).unwrap().complexity();
                    let want = predict_shape(method, spec.shape().class(), n).unwrap();
                    if got != want {
                        return Err(format!(
                            "{spec} {method}: generated {got}, predicted {want}"
                        ));
                    }
                    checked += 1;
                }
            }
        }
        Ok(format!("{checked} (method, shape, size) cells agree"))
    });
}

#[test]
fn criterion_06_oracle_equivalence() {
    criterion(6, "path-oracle equivalence", Some(Duration::from_secs(120)), || {
        let mut exact = 0u32;
        let mut randomized = 0u32;
        for family in [RhomboidFamily::Fsr, RhomboidFamily::Sr] {
            for n in 1..=6u32 {
                for spec in orientations(family, n) {
                    let g = spec.ambient_graph().unwrap();
                    let paths = enumerate_paths(&g, spec.src(), spec.dst()).unwrap();
                    let want =
                        expr::MonomialMultiset::from_paths(paths.into_iter().map(|p| p.0));
                    for method in METHODS {
                        let e = generate(&spec, method).unwrap();
                        let got = expr::expand(&e, 1 << 24)
                            .map_err(|err| format!("{spec} {method}: {err}"))?;
                        if got != want {
                            return Err(format!("{spec} {method}: exact mismatch"));
                        }
                        exact += 1;
                    }
                }
            }
            for n in 7..=12u32 {
                for spec in orientations(family, n) {
                    let g = spec.ambient_graph().unwrap();
                    for method in METHODS {
                        let e = generate(&spec, method).unwrap();
                        let mut labels = e.labels();
                        labels
                            .extend(labels_between(&g, spec.src(), spec.dst()).unwrap());
                        for seed in 0..3u64 {
                            let asg = expr::generate_assignment(
                                labels.iter().copied(),
                                DEFAULT_MODULUS,
                                seed,
                            );
                            let lhs = expr::eval_mod(&e, &asg).unwrap();
                            let rhs =
                                eval_paths_mod(&g, spec.src(), spec.dst(), &asg).unwrap();
                            if lhs != rhs {
                                return Err(format!(
                                    "{spec} {method} seed {seed}: randomized mismatch"
                                ));
                            }
                        }
                        randomized += 1;
                    }
                }
            }
        }
        Ok(format!("{exact} exact + {randomized} randomized checks, zero failures"))
    });
}

#[test]
fn criterion_07_trapezoid_parallelogram_equality() {
    criterion(7, "trapezoid/parallelogram equality (2-VDM)", None, || {
        for n in 1..=64u32 {
            let counts: Vec<u64> = orientations(RhomboidFamily::Fsr, n)[5..]
                .iter()
                .map(|s| generate(s, Method::TwoVdm).unwrap().complexity())
                .collect();
            if counts.windows(2).any(|w| w[0] != w[1]) {
                return Err(format!("n={n}: dipterous complexities differ: {counts:?}"));
            }
        }
        Ok("all dipterous orientations equal for n <= 64".into())
    });
}

#[test]
fn criterion_08_worked_examples() {
    criterion(8, "worked factoring examples", None, || {
        // Series-parallel graph: canonical has 16 literals, the read-once
        // factoring 6, and they are exactly equivalent.
        let sp = graph::StDag::from_edges(vec![
            (label(Series::A, 1), VertexRef::basic(1), VertexRef::basic(2)),
            (label(Series::B, 1), VertexRef::basic(2), VertexRef::basic(3)),
            (label(Series::C, 1), VertexRef::basic(2), VertexRef::basic(3)),
            (label(Series::D, 1), VertexRef::basic(3), VertexRef::basic(4)),
            (label(Series::E, 1), VertexRef::basic(3), VertexRef::basic(4)),
            (label(Series::F, 1), VertexRef::basic(1), VertexRef::basic(3)),
        ])
        .unwrap();
        let canonical = canonical_expression(&sp);
        let factored = parse("(a*(b+c)+f)*(d+e)").unwrap();
        if factored.complexity() != 6 || canonical.complexity() != 16 {
            return Err(format!(
                "complexities {} vs {}, expected 6 vs 16",
                factored.complexity(),
                canonical.complexity()
            ));
        }
        if !equivalent(&factored, &canonical, EquivMode::Exact { bound: 10_000 }).unwrap() {
            return Err("factored form not equivalent to canonical".into());
        }

        // The two optimal factorings of the forbidden subgraph (the head
        // of a Fibonacci graph) are equivalent, 6 literals each, and both
        // match the path oracle.
        let e1 = parse("a1*(a2*a3+b2)+b1*a3").unwrap();
        let e2 = parse("(a1*a2+b1)*a3+a1*b2").unwrap();
        if e1.complexity() != 6 || e2.complexity() != 6 {
            return Err("forbidden-subgraph factorings should have 6 literals".into());
        }
        if !equivalent(&e1, &e2, EquivMode::Exact { bound: 10_000 }).unwrap() {
            return Err("forbidden-subgraph factorings differ".into());
        }
        let fib4 = canonical_expression(&build_fibonacci(4).unwrap());
        if !equivalent(&e1, &fib4, EquivMode::Exact { bound: 10_000 }).unwrap() {
            return Err("factoring does not match the 4-vertex Fibonacci oracle".into());
        }
        Ok("series-parallel and forbidden-subgraph examples verified".into())
    });
}

#[test]
fn criterion_09_growth_properties() {
    criterion(9, "growth ratios and combined dominance", None, || {
        let mut failures = Vec::new();

        let two = predict(Method::TwoVdm, 1024).unwrap().core as f64
            / predict(Method::TwoVdm, 512).unwrap().core as f64;
        if !(5.7..=6.0).contains(&two) {
            failures.push(format!(
                "2-VDM doubling ratio {two:.5} outside [5.70, 6.00] \
                 (the exact counts give 6 + 3*B*3^k/T(n) + 5*C/T(n) > 6: \
                 the limit is approached from above)"
            ));
        }
        let one = predict(Method::OneVdm, 1024).unwrap().core as f64
            / predict(Method::OneVdm, 512).unwrap().core as f64;
        if !(7.2..=8.0).contains(&one) {
            failures.push(format!(
                "1-VDM doubling ratio {one:.5} outside [7.20, 8.00] \
                 (approached from above as well)"
            ));
        }

        for &(n, ..) in &TABLE_COMBINED {
            let c = predict(Method::Combined, n).unwrap();
            let o = predict(Method::OneVdm, n).unwrap();
            let t = predict(Method::TwoVdm, n).unwrap();
            for class in [ShapeClass::Core, ShapeClass::Leaf, ShapeClass::Dipterous] {
                if c.get(class) > o.get(class).min(t.get(class)) {
                    failures.push(format!("combined beaten at n={n} {class}"));
                }
            }
        }

        if failures.is_empty() {
            Ok(format!("ratios {two:.4} and {one:.4}; combined never beaten"))
        } else {
            Err(failures.join("; "))
        }
    });
}

/// Seeded random normalized expression tree.
fn random_tree(rng: &mut SplitMix64, depth: u32) -> Expr {
    let choice = rng.next_u64() % 100;
    if depth == 0 || choice < 30 {
        return if choice < 5 {
            Expr::One
        } else {
            let series = [
                Series::A,
                Series::B,
                Series::C,
                Series::D,
                Series::E,
                Series::F,
                Series::G,
            ][(rng.next_u64() % 7) as usize];
            Expr::lit(label(series, 1 + (rng.next_u64() % 999) as u32))
        };
    }
    let arity = 2 + (rng.next_u64() % 3) as usize;
    let children: Vec<Expr> = (0..arity).map(|_| random_tree(rng, depth - 1)).collect();
    if choice < 65 {
        Expr::sum(children)
    } else {
        Expr::prod(children)
    }
}

#[test]
fn criterion_10_parser_round_trip() {
    criterion(10, "parser round-trip", None, || {
        let mut rng = SplitMix64::new(0);
        for case in 0..10_000u32 {
            let e = random_tree(&mut rng, 5);
            if !e.is_normalized() {
                return Err(format!("case {case}: generator produced denormalized tree"));
            }
            let text = render(&e);
            let back = parse(&text).map_err(|err| format!("case {case}: {err} in {text}"))?;
            if back != e {
                return Err(format!("case {case}: round-trip changed the tree"));
            }
        }
        let mut generated = 0u32;
        for family in [RhomboidFamily::Fsr, RhomboidFamily::Sr] {
            for method in METHODS {
                for n in 1..=10u32 {
                    for spec in orientations(family, n) {
                        let e = generate(&spec, method).unwrap();
                        let back = parse(&render(&e))
                            .map_err(|err| format!("{spec} {method}: {err}"))?;
                        if back != e {
                            return Err(format!("{spec} {method}: round-trip changed"));
                        }
                        generated += 1;
                    }
                }
            }
        }
        Ok(format!("10000 random trees + {generated} generated expressions round-trip"))
    });
}
