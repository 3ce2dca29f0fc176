//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any fails.
//!
//!   cargo test -p bihole --test acceptance

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use bihole::bounds::{
    average_degree, average_degree_bound, caro_wei_sum, floor_bound, strengthened_bound,
};
use bihole::extract::{check_trace, find_bihole, find_degenerate};
use bihole::oracle::{
    is_bihole, max_biclique_exact, max_bihole_exact, max_degenerate_exact,
    verify_degenerate_witness, OracleLimits,
};
use bihole::{BipartiteGraph, GraphModel, Rational};

const P_GRID: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];
const SEEDS_PER_CELL: u64 = 16;

/// Every balanced bipartite graph with n in {1, 2, 3}: all edge subsets of K_{n,n}.
fn exhaustive_family() -> Vec<BipartiteGraph> {
    let mut out = Vec::new();
    for n in 1..=3usize {
        let cells: Vec<(usize, usize)> = (0..n).flat_map(|l| (0..n).map(move |r| (l, r))).collect();
        for mask in 0u32..(1 << cells.len()) {
            let edges = cells
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e);
            out.push(BipartiteGraph::new(n, n, edges).unwrap());
        }
    }
    out
}

/// 13 sizes x 5 probabilities x 16 seeds = 1040 graphs.
fn random_family() -> Vec<(usize, f64, u64, BipartiteGraph)> {
    let mut out = Vec::new();
    for n in 4..=16usize {
        for (pi, &p) in P_GRID.iter().enumerate() {
            for k in 0..SEEDS_PER_CELL {
                let seed = 1_000_003 * n as u64 + 101 * pi as u64 + k;
                let g = BipartiteGraph::generate(GraphModel::Gnp(p), n, seed).unwrap();
                out.push((n, p, seed, g));
            }
        }
    }
    out
}

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("runtime {elapsed:.2?} exceeds {limit:?}")
    })
}

fn check_bihole_instance(g: &BipartiteGraph, exact: Option<usize>) -> Result<(), String> {
    let floor = floor_bound(g, 0).map_err(|e| e.to_string())?;
    let (w, trace) = find_bihole(g).map_err(|e| e.to_string())?;
    let ctx = || format!("graph {:?}", g.edges().collect::<Vec<_>>());
    ensure(is_bihole(g, &w).unwrap(), || format!("invalid bihole on {}", ctx()))?;
    ensure(floor <= w.size(), || {
        format!("size {} below floor {floor} on {}", w.size(), ctx())
    })?;
    if let Some(e) = exact {
        ensure(w.size() <= e, || format!("size {} above exact {e} on {}", w.size(), ctx()))?;
    }
    ensure(trace.is_nondecreasing(), || format!("trace decreases on {}", ctx()))?;
    ensure(check_trace(g, &trace, 0).map_err(|e| e.to_string())?, || {
        format!("check_trace false on {}", ctx())
    })
}

fn check_degenerate_instance(
    g: &BipartiteGraph,
    d: usize,
    exact: Option<usize>,
) -> Result<(), String> {
    let floor = floor_bound(g, d).map_err(|e| e.to_string())?;
    let (w, trace) = find_degenerate(g, d).map_err(|e| e.to_string())?;
    let ctx = || format!("d={d} graph {:?}", g.edges().collect::<Vec<_>>());
    ensure(verify_degenerate_witness(g, &w, d).unwrap(), || {
        format!("invalid certificate on {}", ctx())
    })?;
    ensure(floor <= w.size(), || {
        format!("size {} below floor {floor} on {}", w.size(), ctx())
    })?;
    if let Some(e) = exact {
        ensure(w.size() <= e, || format!("size {} above exact {e} on {}", w.size(), ctx()))?;
    }
    ensure(check_trace(g, &trace, d).map_err(|e| e.to_string())?, || {
        format!("check_trace false on {}", ctx())
    })
}

fn criterion_1(family: &[BipartiteGraph]) -> Outcome {
    let start = Instant::now();
    let limits = OracleLimits::default();
    for g in family {
        let exact = max_bihole_exact(g, &limits).map_err(|e| e.to_string())?;
        check_bihole_instance(g, Some(exact))?;
    }
    within(start.elapsed(), Duration::from_secs(5))?;
    Ok(format!("{} graphs, 0 violations, {:.2?}", family.len(), start.elapsed()))
}

fn criterion_2(family: &[BipartiteGraph]) -> Outcome {
    let start = Instant::now();
    let limits = OracleLimits::default();
    let mut checked = 0;
    for g in family {
        for d in 1..=3 {
            let exact = max_degenerate_exact(g, d, &limits).map_err(|e| e.to_string())?;
            check_degenerate_instance(g, d, Some(exact))?;
            checked += 1;
        }
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("{checked} (graph, d) pairs, 0 violations, {:.2?}", start.elapsed()))
}

fn criterion_3(family: &[(usize, f64, u64, BipartiteGraph)]) -> Outcome {
    let start = Instant::now();
    let limits = OracleLimits::default();
    ensure(family.len() >= 1000, || format!("only {} graphs", family.len()))?;
    let (mut sandwiched_0, mut sandwiched_d) = (0, 0);
    for (n, p, seed, g) in family {
        let again = BipartiteGraph::generate(GraphModel::Gnp(*p), *n, *seed).unwrap();
        ensure(&again == g, || format!("generator not deterministic at n={n} p={p} seed={seed}"))?;

        let exact0 = if *n <= 12 {
            sandwiched_0 += 1;
            Some(max_bihole_exact(g, &limits).map_err(|e| e.to_string())?)
        } else {
            None
        };
        check_bihole_instance(g, exact0)?;
        ensure(find_bihole(g).unwrap() == find_bihole(&again).unwrap(), || {
            format!("extraction not deterministic at n={n} p={p} seed={seed}")
        })?;

        for d in 1..=3 {
            let exact = if *n <= 8 {
                sandwiched_d += 1;
                Some(max_degenerate_exact(g, d, &limits).map_err(|e| e.to_string())?)
            } else {
                None
            };
            check_degenerate_instance(g, d, exact)?;
            ensure(find_degenerate(g, d).unwrap() == find_degenerate(&again, d).unwrap(), || {
                format!("degenerate extraction not deterministic at n={n} seed={seed} d={d}")
            })?;
        }
    }
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!(
        "{} graphs, {sandwiched_0} oracle-checked at d=0, {sandwiched_d} at d=1..3, {:.2?}",
        family.len(),
        start.elapsed()
    ))
}

fn gen(model: GraphModel, n: usize) -> BipartiteGraph {
    BipartiteGraph::generate(model, n, 0).unwrap()
}

fn criterion_4() -> Outcome {
    let limits = OracleLimits::default();
    let expect = |what: &str, got: String, want: String| {
        ensure(got == want, || format!("{what}: got {got}, want {want}"))
    };

    let c6 = gen(GraphModel::Cycle, 3);
    expect("C6 floor", floor_bound(&c6, 0).unwrap().to_string(), "1".into())?;
    expect("C6 strengthened", strengthened_bound(&c6, 0).unwrap().to_string(), "1/3".into())?;
    let size = find_bihole(&c6).unwrap().0.size();
    ensure(size >= 1, || format!("C6 extracted {size}"))?;
    expect("C6 exact", max_bihole_exact(&c6, &limits).unwrap().to_string(), "1".into())?;

    for n in 1..=6 {
        let k = gen(GraphModel::Complete, n);
        expect(&format!("K{n},{n} floor"), floor_bound(&k, 0).unwrap().to_string(), "0".into())?;
        expect(&format!("K{n},{n} exact"), max_bihole_exact(&k, &limits).unwrap().to_string(), "0".into())?;

        let e = gen(GraphModel::Edgeless, n);
        expect(&format!("edgeless {n} floor"), floor_bound(&e, 0).unwrap().to_string(), n.to_string())?;
        expect(&format!("edgeless {n} extracted"), find_bihole(&e).unwrap().0.size().to_string(), n.to_string())?;
    }

    let m10 = gen(GraphModel::Matching, 10);
    expect("matching floor", floor_bound(&m10, 0).unwrap().to_string(), "5".into())?;
    expect("matching exact", max_bihole_exact(&m10, &limits).unwrap().to_string(), "5".into())?;

    let k22 = gen(GraphModel::Complete, 2);
    expect("K2,2 d=1 floor", floor_bound(&k22, 1).unwrap().to_string(), "1".into())?;
    expect("K2,2 d=1 exact", max_degenerate_exact(&k22, 1, &limits).unwrap().to_string(), "1".into())?;
    let k33 = gen(GraphModel::Complete, 3);
    expect("K3,3 d=2 floor", floor_bound(&k33, 2).unwrap().to_string(), "2".into())?;
    expect("K3,3 d=2 exact", max_degenerate_exact(&k33, 2, &limits).unwrap().to_string(), "2".into())?;
    Ok("C6, K_{n,n} (n<=6), edgeless (n<=6), 10x10 matching, K2,2 d=1, K3,3 d=2 exact".into())
}

fn all_graphs<'a>(
    exhaustive: &'a [BipartiteGraph],
    random: &'a [(usize, f64, u64, BipartiteGraph)],
) -> impl Iterator<Item = &'a BipartiteGraph> {
    exhaustive.iter().chain(random.iter().map(|(_, _, _, g)| g))
}

fn criterion_5(exhaustive: &[BipartiteGraph], random: &[(usize, f64, u64, BipartiteGraph)]) -> Outcome {
    let mut count = 0;
    for g in all_graphs(exhaustive, random) {
        for d in 0..=3 {
            let ceil = strengthened_bound(g, d).unwrap().ceil();
            let floor = floor_bound(g, d).unwrap();
            ensure(ceil >= floor.into(), || {
                format!("ceil(S)={ceil} < floor={floor} at d={d} on {:?}", g.edges().collect::<Vec<_>>())
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} (graph, d) pairs"))
}

fn criterion_6(exhaustive: &[BipartiteGraph], random: &[(usize, f64, u64, BipartiteGraph)]) -> Outcome {
    let mut count = 0;
    for g in all_graphs(exhaustive, random) {
        let n = Rational::from(g.left_count());
        let half_sum = caro_wei_sum(g, 0) / Rational::from_integer(2);
        let jensen = n / (average_degree(g).unwrap() + Rational::one());
        ensure(half_sum >= jensen, || {
            format!("Σ/2 = {half_sum} < n/(d̄+1) = {jensen} on {:?}", g.edges().collect::<Vec<_>>())
        })?;
        let floor = Rational::from(floor_bound(g, 0).unwrap());
        let avg_bound = average_degree_bound(g).unwrap();
        ensure(floor >= avg_bound, || format!("floor {floor} < average-degree bound {avg_bound}"))?;
        count += 1;
    }
    Ok(format!("{count} graphs"))
}

fn criterion_7(exhaustive: &[BipartiteGraph], random: &[(usize, f64, u64, BipartiteGraph)]) -> Outcome {
    let limits = OracleLimits::default();
    let (mut extractions, mut oracles) = (0, 0);
    for g in all_graphs(exhaustive, random) {
        let (wb, tb) = find_bihole(g).unwrap();
        let (wd, td) = find_degenerate(g, 0).unwrap();
        ensure(wb.left == wd.left && wb.right == wd.right && tb == td, || {
            format!("d=0 extraction differs on {:?}", g.edges().collect::<Vec<_>>())
        })?;
        extractions += 1;
        if g.left_count() <= limits.max_side_degenerate {
            let a = max_bihole_exact(g, &limits).unwrap();
            let b = max_degenerate_exact(g, 0, &limits).unwrap();
            ensure(a == b, || format!("β={a} but β_0={b}"))?;
            oracles += 1;
        }
    }
    Ok(format!("{extractions} extraction pairs, {oracles} oracle pairs identical"))
}

fn criterion_8() -> Outcome {
    let limits = OracleLimits::default();
    for i in 0..200u64 {
        let n = 1 + (i % 12) as usize;
        let p = P_GRID[(i / 12) as usize % P_GRID.len()];
        let g = BipartiteGraph::generate(GraphModel::Gnp(p), n, 77_000 + i).unwrap();
        let direct = max_bihole_exact(&g, &limits).unwrap();
        let dual = max_biclique_exact(&g.bipartite_complement(), &limits).unwrap();
        ensure(direct == dual, || format!("n={n} p={p}: β={direct}, biclique(complement)={dual}"))?;
    }
    Ok("200 graphs, n <= 12".into())
}

fn criterion_9() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |name: &str| -> Result<Vec<u8>, String> {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_bihole"))
            .args([
                "experiment", "--models", "gnp,crown,cycle", "--n-range", "4..9",
                "--p-grid", "0.2,0.5,0.8", "--d-set", "0,1,2", "--trials", "3",
                "--seed", "2024", "--oracle-max", "8", "-o",
            ])
            .arg(&path)
            .env_remove("BIHOLE_ORACLE_MAX")
            .output()
            .map_err(|e| e.to_string())?;
        ensure(status.status.success(), || {
            format!("experiment exited {:?}: {}", status.status.code(), String::from_utf8_lossy(&status.stderr))
        })?;
        std::fs::read(&path).map_err(|e| e.to_string())
    };
    let first = run("a.csv")?;
    let second = run("b.csv")?;
    ensure(first == second, || "CSV outputs differ".into())?;
    let rows = first.iter().filter(|&&b| b == b'\n').count() - 1;
    Ok(format!("{rows} rows, {} bytes, byte-identical", first.len()))
}

fn main() -> ExitCode {
    let exhaustive = exhaustive_family();
    let random = random_family();

    let criteria: Vec<Criterion> = vec![
        ("1. exhaustive n<=3, d=0: floor <= extracted <= β, bihole valid, trace valid", Box::new(|| criterion_1(&exhaustive))),
        ("2. exhaustive n<=3, d=1..3: floor <= extracted <= β_d, certificate valid", Box::new(|| criterion_2(&exhaustive))),
        ("3. randomized Gnp suite: validity, attainment, monotone traces, determinism, sandwich", Box::new(|| criterion_3(&random))),
        ("4. named instances, exact values", Box::new(criterion_4)),
        ("5. rounding inequality ceil(S) >= floor bound", Box::new(|| criterion_5(&exhaustive, &random))),
        ("6. Jensen relation Σ/2 >= n/(d̄+1)", Box::new(|| criterion_6(&exhaustive, &random))),
        ("7. d=0 consistency of extraction and oracles", Box::new(|| criterion_7(&exhaustive, &random))),
        ("8. complement duality β(G) = biclique(complement G)", Box::new(criterion_8)),
        ("9. experiment CSV reproducibility", Box::new(criterion_9)),
    ];

    let mut failed = 0;
    for (name, run) in &criteria {
        match run() {
            Ok(detail) => println!("PASS  {name} [{detail}]"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
