//! Acceptance run: one PASS/FAIL line per criterion, exact comparisons, and
//! the wall-clock limit for each criterion that has one.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use exceptional_cli::{affine_e_rows, run};
use exceptional_core::census::{e, e_split, indecomposables_by_oracle, t_q, VerifyOptions};
use exceptional_core::corpus::{
    corpus_verify, orient_from_root, tree_orientations, trees, unicyclic_graphs, unicyclic_orientations, Graph,
    OrientationMode,
};
use exceptional_core::linalg::Matrix;
use exceptional_core::rep::{count_exceptional, ext1_dim_cokernel, hom_dim, OracleBudget, Rep};
use exceptional_core::roots::{connected_vectors_of_height, kostant_check, positive_roots_of_height, reflect, RootVerdict};
use exceptional_core::{preset_by_name, DimVector, FiniteField, Quiver, F2, F3, F5};

type Outcome = Result<String, String>;

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn budget() -> OracleBudget {
    OracleBudget::default()
}

fn tree_quivers(max_n: usize) -> Vec<Quiver> {
    (1..=max_n).flat_map(trees).map(|g| orient_from_root(&g).unwrap()).collect()
}

fn has_degree_four(g: &Graph) -> bool {
    let mut deg = vec![0; g.n];
    for &(u, v) in &g.edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    deg.iter().any(|&d| d >= 4)
}

/// Extended D_m inside a tree: two vertices of degree at least 3 (possibly
/// equal, then of degree at least 4).
fn has_affine_d(g: &Graph) -> bool {
    let mut deg = vec![0; g.n];
    for &(u, v) in &g.edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    deg.iter().filter(|&&d| d >= 3).count() >= 2 || deg.iter().any(|&d| d >= 4)
}

fn criterion_1() -> Outcome {
    let golden = [("tE6", vec![7, 6, 6, 7]), ("tE7", vec![8, 7, 7, 7, 8]), ("tE8", vec![9, 8, 8, 8, 8, 8, 9])];
    let (code, out) = run(["exceptional", "tables", "tE", "--format", "structured"]);
    check(code == 0, || format!("tables tE exited {code}"))?;
    let data: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    for ((name, want), row) in golden.iter().zip(data["rows"].as_array().unwrap()) {
        let got: Vec<usize> = serde_json::from_value(row["e"].clone()).unwrap();
        let pure: Vec<usize> = serde_json::from_value(row["pure_oracle"].clone()).unwrap();
        check(row["quiver"] == *name && got == *want && pure == *want, || format!("{name}: {got:?} / {pure:?}"))?;
    }
    let (_, text) = run(["exceptional", "tables", "tE"]);
    for (name, want) in &golden {
        let line: String = want.iter().map(|v| format!("{v:>3}")).collect();
        check(text.contains(&format!("{name:>4} |{line}\n")), || format!("text table row for {name}"))?;
    }
    for (k, (name, fast, pure)) in affine_e_rows::<F2>(&budget()).map_err(|e| e.to_string())?.into_iter().enumerate() {
        check(fast == golden[k].1 && pure == golden[k].1, || format!("{name}: fast {fast:?}, pure {pure:?}"))?;
    }
    Ok("tE6 (7,6,6,7), tE7 (8,7,7,7,8), tE8 (9,8,8,8,8,8,9); fast path = pure oracle".into())
}

fn criterion_2() -> Outcome {
    let b = budget();
    let t542 = preset_by_name("T5,4,2").unwrap();
    let n = t542.n();
    let s = e_split::<F2>(&t542, 5, &b).unwrap();
    check((s.thin, s.non_thin) == (n - 1, 1), || format!("T5,4,2 t=5: {s:?}"))?;
    let t732 = preset_by_name("T7,3,2").unwrap();
    let m = t732.n();
    for (t, want) in [(5, (m - 2, 1)), (6, (m - 3, 2)), (7, (m - 4, 4))] {
        let s = e_split::<F2>(&t732, t, &b).unwrap();
        check((s.thin, s.non_thin) == want, || format!("T7,3,2 t={t}: {s:?}"))?;
    }
    let (code, _) = run(["exceptional", "tables", "remark"]);
    check(code == 0, || format!("tables remark exited {code}"))?;
    Ok(format!("T5,4,2 (n={n}) t=5 ({},1); T7,3,2 (n={m}) t=5,6,7 ({},1) ({},2) ({},4)", n - 1, m - 2, m - 3, m - 4))
}

fn criterion_3() -> Outcome {
    let b = budget();
    let mut checked = 0;
    for n in 3..=7 {
        for g in unicyclic_graphs(n) {
            for q in unicyclic_orientations(&g).unwrap() {
                let got = t_q::<F2>(&q, &b).unwrap();
                check(got == Some(2), || format!("{q}: {got:?}"))?;
                checked += 1;
            }
        }
    }
    for n in 5..=8 {
        for g in trees(n).into_iter().filter(has_affine_d) {
            for q in tree_orientations(&g).unwrap() {
                let got = t_q::<F2>(&q, &b).unwrap();
                check(got == Some(3), || format!("{q}: {got:?}"))?;
                checked += 1;
            }
        }
    }
    for (name, want) in [("T4,3,3", 4), ("T3,3,3", 4), ("T4,4,2", 5), ("T5,4,2", 5), ("T6,3,2", 7), ("T7,3,2", 7)] {
        let got = t_q::<F2>(&preset_by_name(name).unwrap(), &b).unwrap();
        check(got == Some(want), || format!("{name}: {got:?}"))?;
        checked += 1;
    }
    let ade: Vec<String> = (1..=8)
        .map(|n| format!("A{n}"))
        .chain((4..=8).map(|n| format!("D{n}")))
        .chain((6..=8).map(|n| format!("E{n}")))
        .collect();
    for name in &ade {
        let q = preset_by_name(name).unwrap();
        let g = Graph { n: q.n(), edges: q.edges() };
        for o in tree_orientations(&g).unwrap() {
            let got = t_q::<F2>(&o, &b).unwrap();
            check(got.is_none(), || format!("{name} {o}: {got:?}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} quivers"))
}

fn cartan(q: &Quiver) -> Vec<Vec<i64>> {
    let n = q.n();
    let mut c = vec![vec![0; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(s, t) in q.arrows() {
        c[s][t] -= 1;
        c[t][s] -= 1;
    }
    c
}

fn positive_roots_by_closure(q: &Quiver) -> BTreeSet<Vec<i64>> {
    let c = cartan(q);
    let n = q.n();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut v = vec![0; n];
        v[i] = 1;
        seen.insert(v.clone());
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        for i in 0..n {
            let pairing: i64 = (0..n).map(|j| v[j] * c[j][i]).sum();
            let mut w = v.clone();
            w[i] -= pairing;
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    seen.into_iter().filter(|v| v.iter().all(|&x| x >= 0)).collect()
}

fn criterion_4() -> Outcome {
    let mut diagrams: Vec<(String, usize)> = (1..=8).map(|n| (format!("A{n}"), n * (n + 1) / 2)).collect();
    diagrams.extend((4..=8).map(|n| (format!("D{n}"), n * (n - 1))));
    diagrams.extend([("E6".to_string(), 36), ("E7".to_string(), 63), ("E8".to_string(), 120)]);
    for (name, total) in &diagrams {
        let q = preset_by_name(name).unwrap();
        let report = kostant_check(&q).map_err(|e| e.to_string())?;
        let closure = positive_roots_by_closure(&q);
        let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
        for r in &closure {
            *hist.entry(r.iter().sum::<i64>() as usize).or_default() += 1;
        }
        let hist: Vec<(usize, usize)> = hist.into_iter().collect();
        check(report.total == *total && closure.len() == *total, || format!("{name}: {} / {}", report.total, closure.len()))?;
        check(report.histogram.counts == hist, || format!("{name}: histogram differs from closure"))?;
        let bound = hist.iter().all(|&(h, c)| h < 2 || c < q.n());
        check(bound && report.bound_holds, || format!("{name}: more than n-1 roots at some height"))?;
    }
    Ok(format!("{} Dynkin diagrams; A_n n(n+1)/2, D_n n(n-1), E 36/63/120", diagrams.len()))
}

fn criterion_5() -> Outcome {
    let r = corpus_verify::<F2>(8, OrientationMode::OnePerTree, &VerifyOptions::default()).map_err(|e| e.to_string())?;
    check(r.failures == 0 && r.passed(), || format!("{} failing members", r.failures))?;
    let at_eight = r.trees_by_size.iter().find(|(n, _)| *n == 8).map(|p| p.1);
    check(at_eight == Some(23), || format!("trees on 8 vertices: {at_eight:?}"))?;
    let unicyclic: usize = r.unicyclic_by_size.iter().map(|p| p.1).sum();
    check(unicyclic > 0, || "no unicyclic members".into())?;
    for m in r.members.iter().filter(|m| !m.rep_finite) {
        let t = m.t_q.ok_or_else(|| format!("{}: infinite without t_Q", m.key))?;
        let plateau = (2..t).all(|s| m.e[s - 1] == m.n - 1);
        check(plateau && m.plateau, || format!("{}: e = {:?}", m.key, m.e))?;
        check(m.all_exceptional_to_t_q == Some(true), || format!("{}: non-exceptional below t_Q", m.key))?;
    }
    Ok(format!("{} quivers, {} representation-infinite, 23 trees on 8 vertices, {unicyclic} unicyclic graphs", r.quivers, r.infinite))
}

fn random_quiver(rng: &mut ChaCha8Rng, n: usize, density: f64, connected: bool) -> Quiver {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut rank = vec![0; n];
    for (k, &v) in order.iter().enumerate() {
        rank[v] = k;
    }
    let mut edges = BTreeSet::new();
    if connected {
        for v in 1..n {
            edges.insert((rng.gen_range(0..v), v));
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.insert((u, v));
            }
        }
    }
    let arrows = edges.into_iter().map(|(u, v)| if rank[u] < rank[v] { (u, v) } else { (v, u) }).collect();
    Quiver::new(n, arrows).unwrap()
}

fn random_rep<'q, F: FiniteField>(rng: &mut ChaCha8Rng, q: &'q Quiver, dims: &[usize]) -> Rep<'q, F> {
    let maps = q
        .arrows()
        .iter()
        .map(|&(s, t)| {
            let data = (0..dims[s] * dims[t]).map(|_| F::from_index(rng.gen_range(0..F::ORDER))).collect();
            Matrix::from_vec(dims[t], dims[s], data)
        })
        .collect();
    Rep::new(q, dims.to_vec(), maps).unwrap()
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let pairs = 10_000;
    for _ in 0..pairs {
        let n = rng.gen_range(1..=4);
        let q = random_quiver(&mut rng, n, 0.5, false);
        let d: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        let f: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        let m = random_rep::<F2>(&mut rng, &q, &d);
        let k = random_rep::<F2>(&mut rng, &q, &f);
        let lhs = hom_dim(&m, &k).unwrap() as i64 - ext1_dim_cokernel(&m, &k).unwrap() as i64;
        let dv = DimVector::new(d.iter().map(|&x| x as i64).collect());
        let fv = DimVector::new(f.iter().map(|&x| x as i64).collect());
        check(lhs == q.euler_form(&dv, &fv).unwrap(), || format!("Euler identity on {q} {dv} {fv}"))?;
    }

    for _ in 0..2_000 {
        let n = rng.gen_range(1..=7);
        let q = random_quiver(&mut rng, n, 0.4, true);
        let d = DimVector::new((0..n).map(|_| rng.gen_range(-6..=6)).collect());
        let base = q.tits_form(&d).unwrap();
        for i in q.vertices() {
            check(q.tits_form(&reflect(&q, &d, i).unwrap()).unwrap() == base, || format!("reflection at {i} on {q} {d}"))?;
        }
    }

    let b = budget();
    let mut corpus = tree_quivers(6);
    for n in 3..=5 {
        corpus.extend(unicyclic_graphs(n).iter().map(|g| unicyclic_orientations(g).unwrap().remove(0)));
    }
    let mut unit_vectors = 0;
    for q in &corpus {
        for h in 1..=6 {
            for d in connected_vectors_of_height(q, h).into_iter().filter(|d| q.tits_form(d).unwrap() == 1) {
                let c = count_exceptional::<F2>(q, &d, &b).unwrap();
                check(c <= 1, || format!("{c} exceptional classes at {d} on {q}"))?;
                unit_vectors += 1;
            }
        }
    }

    for q in tree_quivers(5) {
        for t in 1..=5 {
            let e2 = e::<F2>(&q, t, &b).unwrap();
            let e3 = e::<F3>(&q, t, &b).unwrap();
            let e5 = e::<F5>(&q, t, &b).unwrap();
            check(e2 == e3 && e2 == e5, || format!("t={t} on {q}: {e2} {e3} {e5}"))?;
        }
    }

    let mut orientations = 0;
    for n in 1..=5 {
        for g in trees(n) {
            let rows: Vec<Vec<usize>> = tree_orientations(&g)
                .unwrap()
                .iter()
                .map(|q| (1..=5).map(|t| e::<F2>(q, t, &b).unwrap()).collect())
                .collect();
            orientations += rows.len();
            check(rows.iter().all(|r| *r == rows[0]), || format!("orientation dependence on {:?}", g.edges))?;
        }
    }
    Ok(format!(
        "{pairs} Euler pairs, 2000 reflection samples, {unit_vectors} q=1 vectors, fields 2/3/5, {orientations} orientations"
    ))
}

fn criterion_7() -> Outcome {
    let b = budget();
    let mut flagged = 0;
    for g in (1..=8).flat_map(trees) {
        let q = orient_from_root(&g).unwrap();
        for s in 1..=5.min(q.n()) {
            let c = indecomposables_by_oracle::<F2>(&q, s, &b).unwrap();
            check(c.non_exceptional == 0 && !c.imaginary, || format!("length {s} on {q}: {c:?}"))?;
        }
        let six = indecomposables_by_oracle::<F2>(&q, 6, &b).unwrap();
        let imaginary = positive_roots_of_height(&q, 6).unwrap().iter().filter(|(_, v)| *v == RootVerdict::ImaginaryRoot).count();
        check(six.imaginary == has_degree_four(&g), || format!("length 6 flag on {q}"))?;
        check(six.imaginary == (imaginary > 0), || format!("length 6 roots on {q}"))?;
        flagged += usize::from(six.imaginary);
    }
    let star = preset_by_name("tD4").unwrap();
    let roots = positive_roots_of_height(&star, 6).unwrap();
    let imaginary: Vec<_> = roots.iter().filter(|(_, v)| *v == RootVerdict::ImaginaryRoot).collect();
    check(imaginary.len() == 1, || format!("tD4 has {} imaginary roots of height 6", imaginary.len()))?;
    check(indecomposables_by_oracle::<F2>(&star, 6, &b).unwrap().non_exceptional > 0, || "no witness on tD4".into())?;
    Ok(format!("trees n <= 8: none below length 6; {flagged} flagged at 6, exactly those containing tD4"))
}

fn main() -> ExitCode {
    let criteria: [(usize, &str, fn() -> Outcome, Option<Duration>); 7] = [
        (1, "extended E table", criterion_1, Some(Duration::from_secs(30))),
        (2, "remark table", criterion_2, Some(Duration::from_secs(60))),
        (3, "t_Q classification", criterion_3, None),
        (4, "Kostant bound", criterion_4, Some(Duration::from_secs(10))),
        (5, "exhaustive verification", criterion_5, Some(Duration::from_secs(600))),
        (6, "property suites", criterion_6, None),
        (7, "non-exceptional length threshold", criterion_7, None),
    ];
    let mut all = true;
    for (k, title, f, limit) in criteria {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:.2?}, limit {l:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(msg) => println!("PASS criterion {k} ({title}): {msg} [{elapsed:.2?}]"),
            Err(msg) => {
                all = false;
                println!("FAIL criterion {k} ({title}): {msg} [{elapsed:.2?}]");
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
