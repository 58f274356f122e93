//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
//! Expected values are hard-coded or come from the brute-force oracles in
//! `common`, never from the library routine under test.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use gctk::anti_rips::{ar_complex, ar_grid_bound, ar_line_homotopy, PointSet};
use gctk::complex::{format_face, SimplicialComplex};
use gctk::dt::{dag_contractibility_report, dt, forest_mask, rooted_maximal_faces, shelling_order_dt};
use gctk::graph::{disjoint_complete_bipartite, DirectedGraph};
use gctk::homology::{homological_connectivity, matches};
use gctk::independence::{
    connectivity_bound_maxdeg, fold_reduce, forest_homotopy, gen_faces_c, gen_faces_l, ind, l_graph,
};
use gctk::Label;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

type Outcome = Result<String, String>;
type Row = (usize, &'static [&'static [usize]], Vec<u64>);
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn faces(rows: &[&[usize]]) -> BTreeSet<Vec<Label>> {
    rows.iter().map(|r| r.iter().map(|v| Label::from(v.to_string())).collect()).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T>(r: gctk::Result<T>) -> Result<T, String> {
    r.map_err(|err| err.to_string())
}

/// Oracle Betti numbers of a library complex, computed from brute-force faces.
fn oracle_betti_of(c: &SimplicialComplex) -> Option<Vec<u64>> {
    dense_betti(&library_faces(c))
}

fn criterion_1() -> Outcome {
    let table: [(usize, &[&[usize]]); 11] = [
        (1, &[]),
        (2, &[&[2]]),
        (3, &[&[2], &[3]]),
        (4, &[&[2], &[3]]),
        (5, &[&[3]]),
        (6, &[&[2, 6]]),
        (7, &[&[2, 6], &[2, 7], &[3, 7]]),
        (8, &[&[2, 6], &[2, 7], &[3, 7], &[3, 8]]),
        (9, &[&[2, 7], &[3, 7], &[3, 8]]),
        (10, &[&[3, 8], &[2, 6, 10]]),
        (11, &[&[2, 6, 10], &[2, 6, 11], &[2, 7, 11], &[3, 7, 11]]),
    ];
    for (n, rows) in table {
        let (_, gf) = e(gen_faces_l(n, 3))?;
        let got: BTreeSet<Vec<Label>> = gf.faces.iter().cloned().collect();
        ensure(got == faces(rows), || format!("n={n}: got {}", gf.table()))?;
    }
    Ok("11 rows".into())
}

fn criterion_2() -> Outcome {
    let table: [Row; 3] = [
        (8, &[&[1, 5], &[1, 6], &[2, 6], &[2, 7], &[4, 8]], vec![0, 5]),
        (9, &[&[1, 5], &[1, 8], &[2, 6], &[2, 9], &[4, 8], &[4, 9], &[5, 9]], vec![0, 6]),
        (
            13,
            &[
                &[1, 5, 9],
                &[1, 5, 10],
                &[1, 6, 10],
                &[1, 6, 11],
                &[2, 6, 10],
                &[2, 6, 11],
                &[2, 7, 11],
                &[2, 7, 12],
                &[4, 8, 12],
                &[4, 8, 13],
                &[4, 9, 13],
                &[5, 9, 13],
            ],
            vec![0, 0, 12],
        ),
    ];
    let mut failures = Vec::new();
    for (n, rows, expected_betti) in table {
        let (_, gf) = e(gen_faces_c(n, 3))?;
        let got: BTreeSet<Vec<Label>> = gf.faces.iter().cloned().collect();
        let want = faces(rows);
        if got != want {
            let show = |d: Vec<&Vec<Label>>| d.iter().map(|f| format_face(f)).collect::<Vec<_>>().join(",");
            let missing = show(want.difference(&got).collect());
            let extra = show(got.difference(&want).collect());
            failures.push(format!("n={n} faces missing {missing} extra {extra}"));
        }
        let brute = brute_ind_faces(&e(gctk::independence::c_graph(n, 3))?);
        let betti = dense_betti(&brute).unwrap_or_default();
        if betti != expected_betti {
            failures.push(format!("n={n} oracle betti {betti:?}, expected {expected_betti:?}"));
        }
    }
    if failures.is_empty() {
        Ok("3 rows".into())
    } else {
        Err(failures.join("; "))
    }
}

fn dag_instances() -> Vec<DirectedGraph> {
    let mut out: Vec<DirectedGraph> = (1..=4).flat_map(all_dags).collect();
    let mut r = rng(3);
    for _ in 0..300 {
        let n = r.gen_range(5..=6);
        let p = r.gen_range(0.2..0.7);
        out.push(random_dag(&mut r, n, p));
    }
    out
}

fn criterion_3() -> Outcome {
    let dags = dag_instances();
    for g in &dags {
        let c = e(dt(g))?;
        let h = e(gctk::dt::homotopy_dt_dag(g))?;
        let report = e(matches(&c, &h))?;
        ensure(report.matches, || format!("{}: {}", g.to_edge_list().replace('\n', ";"), report.detail))?;
        // The oracle must agree independently of the library's homology code.
        ensure(dense_betti(&brute_forest_faces(g)) == h.betti(), || {
            format!("{}: oracle disagrees with {h}", g.to_edge_list().replace('\n', ";"))
        })?;
    }
    Ok(format!("{} DAGs", dags.len()))
}

fn criterion_4() -> Outcome {
    let dags = dag_instances();
    for g in &dags {
        let mut product: i64 = 1;
        for v in g.vertices() {
            let d = e(g.in_degree(v.as_str()))? as i64;
            if d > 0 {
                product *= 1 - d;
            }
        }
        let formula = -product;
        let observed = e(e(dt(g))?.reduced_euler())?;
        ensure(observed == formula, || format!("{}: χ̃={observed}, formula {formula}", g.to_edge_list()))?;
        let brute = brute_forest_faces(g);
        let oracle: i64 = -1 + brute.iter().map(|f| if f.len() % 2 == 1 { 1 } else { -1 }).sum::<i64>();
        ensure(oracle == formula, || format!("{}: oracle χ̃={oracle}", g.to_edge_list()))?;
    }
    Ok(format!("{} DAGs", dags.len()))
}

fn criterion_5() -> Outcome {
    let mut r = rng(5);
    let mut done = 0;
    let mut attempts = 0;
    while done < 100 {
        attempts += 1;
        ensure(attempts < 10_000, || "could not generate rooted instances".into())?;
        let n = r.gen_range(2..=6);
        let g = random_digraph(&mut r, n, 10);
        let mut names: Vec<String> = g.vertices().iter().map(|l| l.to_string()).collect();
        names.shuffle(&mut r);
        let k = r.gen_range(1..=n.min(3));
        let roots: Vec<&str> = names[..k].iter().map(String::as_str).collect();
        if rooted_maximal_faces(&g, &roots).is_err() {
            continue;
        }
        let c = e(gctk::dt::dt_rooted(&g, &roots))?;
        let order = e(shelling_order_dt(&g, &roots))?;
        let masks = order.iter().map(|&f| forest_mask(&c, &g, f)).collect::<gctk::Result<Vec<_>>>();
        let verdict = e(c.is_shelling(&e(masks)?))?;
        ensure(verdict.is_shelling(), || format!("{} roots {roots:?}: {verdict:?}", g.to_edge_list()))?;
        done += 1;
    }
    Ok("100 rooted instances".into())
}

fn criterion_6() -> Outcome {
    let mut r = rng(6);
    for _ in 0..100 {
        let n = r.gen_range(1..=8);
        let p = r.gen_range(0.1..0.8);
        let g = random_graph(&mut r, n, p);
        let (reduced, _) = e(fold_reduce(&g))?;
        let before = dense_betti(&brute_ind_faces(&g));
        let after = dense_betti(&brute_ind_faces(&reduced));
        ensure(before == after, || format!("{}: {before:?} vs {after:?}", g.to_edge_list()))?;
    }
    Ok("100 graphs".into())
}

fn criterion_7() -> Outcome {
    let mut r = rng(7);
    for _ in 0..100 {
        let n = r.gen_range(1..=10);
        let p = r.gen_range(0.3..1.0);
        let g = random_forest(&mut r, n, p);
        let h = e(forest_homotopy(&g))?;
        ensure(h.sphere_count() <= 1, || format!("{}: {h}", g.to_edge_list()))?;
        let oracle = dense_betti(&brute_ind_faces(&g));
        ensure(oracle == h.betti(), || format!("{}: oracle {oracle:?} vs {h}", g.to_edge_list()))?;
    }
    Ok("100 forests".into())
}

fn criterion_8() -> Outcome {
    let mut r = rng(8);
    let mut done = 0;
    while done < 100 {
        let n = r.gen_range(2..=9);
        let p = r.gen_range(0.1..0.6);
        let g = random_graph(&mut r, n, p);
        if g.max_degree() == 0 {
            continue;
        }
        let bound = e(connectivity_bound_maxdeg(&g))?;
        let conn = e(homological_connectivity(&e(ind(&g))?))?;
        ensure(conn >= bound, || format!("{}: connectivity {conn} < {bound}", g.to_edge_list()))?;
        done += 1;
    }
    for (m, d) in [(2usize, 2usize), (3, 2), (2, 3)] {
        let g = e(disjoint_complete_bipartite(m, d))?;
        let conn = e(homological_connectivity(&e(ind(&g))?))?;
        let bound = e(connectivity_bound_maxdeg(&g))?;
        let want = m as i64 - 2;
        ensure(conn == want && bound == want, || format!("m={m} d={d}: connectivity {conn}, bound {bound}"))?;
    }
    Ok("100 graphs, 3 extremal".into())
}

fn criterion_9() -> Outcome {
    let mut r = rng(9);
    for _ in 0..100 {
        let n = r.gen_range(1..=10);
        let mut values: BTreeSet<i64> = BTreeSet::new();
        while values.len() < n {
            values.insert(r.gen_range(-20..=20));
        }
        let text: Vec<String> = values.iter().map(|v| format!("{}/2", v)).collect();
        let p = e(PointSet::line(&text))?;
        let twice_r: i64 = r.gen_range(0..=12);
        let radius = BigRational::new(twice_r.into(), 2.into());
        let h = e(ar_line_homotopy(&p, &radius))?;
        // Oracle graph: |a−b| ≤ r on the half-integers.
        let vals: Vec<i64> = values.iter().copied().collect();
        let labels: Vec<Label> = text.iter().map(|s| Label::from(s.as_str())).collect();
        let brute = brute_faces(&labels, |m| {
            (0..n).all(|i| (i + 1..n).all(|j| m >> i & 1 == 0 || m >> j & 1 == 0 || (vals[j] - vals[i]) > twice_r))
        });
        let oracle = dense_betti(&brute);
        ensure(oracle == h.betti(), || format!("P={text:?} r={radius}: oracle {oracle:?} vs {h}"))?;
    }
    Ok("100 point sets".into())
}

fn criterion_10() -> Outcome {
    let mut r = rng(10);
    for _ in 0..50 {
        let n = r.gen_range(1..=12);
        let mut pts: BTreeSet<(i64, i64)> = BTreeSet::new();
        let side = r.gen_range(4..=6);
        while pts.len() < n {
            pts.insert((r.gen_range(0..side), r.gen_range(0..side)));
        }
        let pts: Vec<(i64, i64)> = pts.into_iter().collect();
        let p = e(PointSet::grid(&pts))?;
        let c = e(ar_complex(&p, &BigRational::from_integer(1.into())))?;
        let conn = e(homological_connectivity(&c))?;
        let bound = e(ar_grid_bound(&p))?;
        ensure(conn >= bound, || format!("{pts:?}: connectivity {conn} < {bound}"))?;
        // Cross-check the library connectivity against the oracle.
        let oracle = oracle_betti_of(&c).unwrap_or_default();
        let first = oracle.iter().position(|&b| b > 0).map(|i| i as i64 - 1);
        if let Some(k) = first {
            ensure(k == conn, || format!("{pts:?}: oracle connectivity {k}, library {conn}"))?;
        }
    }
    Ok("50 point sets".into())
}

fn criterion_11() -> Outcome {
    let mut r = rng(11);
    let mut done = 0;
    while done < 100 {
        let n = r.gen_range(2..=6);
        let p = r.gen_range(0.2..0.8);
        let g = random_dag(&mut r, n, p);
        if g.edge_count() == 0 {
            continue;
        }
        let report = e(dag_contractibility_report(&g))?;
        ensure(report.all_agree(), || format!("{}: {report:?}", g.to_edge_list()))?;
        done += 1;
    }
    Ok("100 DAGs".into())
}

fn criterion_12() -> Outcome {
    let mut pairs = 0;
    for n in 1..=12usize {
        for k in 1..=4usize {
            let text: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
            let p = e(PointSet::line(&text))?;
            let radius = BigRational::from_integer((k as i64 - 1).into());
            let ar = e(ar_complex(&p, &radius))?;
            let l = e(ind(&e(l_graph(n, k))?))?;
            ensure(ar == l, || format!("n={n} k={k}: complexes differ"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (n,k) pairs"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("L3 generating faces", criterion_1, Some(Duration::from_secs(1))),
        ("C3 generating faces and Betti", criterion_2, Some(Duration::from_secs(10))),
        ("DAG homotopy type", criterion_3, Some(Duration::from_secs(60))),
        ("DAG Euler characteristic", criterion_4, None),
        ("rooted shelling", criterion_5, None),
        ("fold preserves Betti", criterion_6, None),
        ("forest homotopy", criterion_7, None),
        ("max-degree connectivity bound", criterion_8, None),
        ("line anti-Rips homotopy", criterion_9, None),
        ("grid anti-Rips bound", criterion_10, None),
        ("DAG contractibility agreement", criterion_11, None),
        ("anti-Rips equals L(n,k)", criterion_12, None),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(_), Some(b)) if elapsed > *b => Err(format!("took {elapsed:?}, budget {b:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name} ... PASS ({detail}, {elapsed:.2?})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} {name} ... FAIL ({detail}, {elapsed:.2?})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
