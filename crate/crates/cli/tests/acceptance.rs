//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion fails.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sgkit::bipartite::asymptotic::Regime;
use sgkit::bipartite::classify::{classify_sg_eq_k, level_set};
use sgkit::bipartite::quartic::conjecture_scan;
use sgkit::bipartite::{is_perfect_square, sg_balanced, sg_bipartite, sg_large_m};
use sgkit::certificate::verify_certificate;
use sgkit::graph::{build_complete_multipartite, complete_multipartite_from_blocks, Graph};
use sgkit::multipartite::{
    coverage_feasible, coverage_feasible_matching, lp_lower_bound, sg_multipartite, sg_uniform,
    whole_parts_upper_bound, Selection,
};
use sgkit::oracle::{dominating_number_exact, strong_geodetic_number_exact, OracleLimits};
use sgkit::partition::Partition;
use sgkit::reduction::{forward_certificate, limits_for, reduce, verify_equivalence_report};

const SG_GRID: [[u64; 15]; 15] = [
    [2, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15],
    [2, 3, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15],
    [3, 3, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15],
    [4, 4, 4, 4, 4, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13],
    [5, 5, 5, 4, 5, 5, 5, 5, 5, 5, 6, 7, 8, 9, 10],
    [6, 6, 6, 4, 5, 6, 6, 6, 6, 6, 6, 6, 6, 6, 6],
    [7, 7, 7, 5, 5, 6, 7, 7, 7, 7, 7, 7, 7, 7, 7],
    [8, 8, 8, 6, 5, 6, 7, 8, 8, 8, 8, 8, 8, 8, 8],
    [9, 9, 9, 7, 5, 6, 7, 8, 8, 8, 9, 9, 9, 9, 9],
    [10, 10, 10, 8, 5, 6, 7, 8, 8, 8, 9, 9, 9, 9, 10],
    [11, 11, 11, 9, 6, 6, 7, 8, 9, 9, 9, 9, 9, 9, 10],
    [12, 12, 12, 10, 7, 6, 7, 8, 9, 9, 9, 10, 10, 10, 10],
    [13, 13, 13, 11, 8, 6, 7, 8, 9, 9, 9, 10, 10, 10, 10],
    [14, 14, 14, 12, 9, 6, 7, 8, 9, 9, 9, 10, 10, 10, 10],
    [15, 15, 15, 13, 10, 6, 7, 8, 9, 10, 10, 10, 10, 10, 10],
];

/// Every partition of n <= 7 with its strong geodetic number.
const SMALL_PARTITIONS: [(&str, usize); 44] = [
    ("1", 1),
    ("2", 2),
    ("1^2", 2),
    ("3", 3),
    ("1,2", 2),
    ("1^3", 3),
    ("4", 4),
    ("1,3", 3),
    ("2^2", 3),
    ("1^2,2", 3),
    ("1^4", 4),
    ("5", 5),
    ("1,4", 4),
    ("2,3", 3),
    ("1^2,3", 3),
    ("1,2^2", 4),
    ("1^3,2", 4),
    ("1^5", 5),
    ("6", 6),
    ("1,5", 5),
    ("2,4", 4),
    ("1^2,4", 4),
    ("3^2", 3),
    ("1,2,3", 3),
    ("1^3,3", 3),
    ("2^3", 4),
    ("1^2,2^2", 4),
    ("1^4,2", 5),
    ("1^6", 6),
    ("7", 7),
    ("1,6", 6),
    ("2,5", 5),
    ("1^2,5", 5),
    ("3,4", 4),
    ("1,2,4", 4),
    ("1^3,4", 4),
    ("1,3^2", 4),
    ("2^2,3", 4),
    ("1^2,2,3", 4),
    ("1^4,3", 4),
    ("1,2^3", 5),
    ("1^3,2^2", 5),
    ("1^5,2", 6),
    ("1^7", 7),
];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = sgkit_cli::run(
        std::iter::once("sgkit").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, String::from_utf8(out).unwrap())
}

fn table_reproduction() -> Outcome {
    let (code, csv) = run_cli(&["table", "15", "--csv"]);
    ensure(code == 0, format!("exit code {code}"))?;
    let mut mismatches = 0;
    let mut cells = 0;
    for (row, line) in csv.lines().skip(1).enumerate() {
        let values: Vec<u64> = line.split(',').skip(1).map(|v| v.parse().unwrap()).collect();
        for (col, v) in values.iter().enumerate() {
            cells += 1;
            if *v != SG_GRID[row][col] {
                mismatches += 1;
            }
        }
    }
    ensure(cells == 225 && mismatches == 0, format!("{cells} cells, {mismatches} mismatches"))?;
    Ok("225 cells, 0 mismatches".into())
}

fn classification() -> Outcome {
    for n in 1..=30 {
        for m in 1..=30 {
            let k = sg_bipartite(n, m).unwrap().k;
            for cand in 1..=k + 5 {
                ensure(
                    classify_sg_eq_k(n, m, cand) == (cand == k),
                    format!("({n},{m}) k={cand}"),
                )?;
            }
        }
    }
    ensure(classify_sg_eq_k(1, 1, 2) && classify_sg_eq_k(2, 2, 3), "exceptions")?;
    Ok("900 pairs agree".into())
}

fn level_set_twelve() -> Outcome {
    let pairs = level_set(12).map_err(|e| e.to_string())?;
    ensure(pairs.len() == 201, format!("{} pairs", pairs.len()))?;
    let (_, out) = run_cli(&["levelset", "12", "--count"]);
    ensure(out.trim() == "201", format!("cli printed {out:?}"))?;
    Ok("201 pairs".into())
}

fn balanced() -> Outcome {
    let mut square_branch = 0;
    for n in 6..=500u64 {
        let closed = sg_balanced(n).unwrap();
        let exact = sg_bipartite(n, n).unwrap().k;
        ensure(closed == exact, format!("n={n}: {closed} vs {exact}"))?;
        if is_perfect_square(8 * n - 7) {
            square_branch += 1;
        }
    }
    ensure(square_branch >= 10, format!("square branch hit {square_branch} times"))?;
    Ok(format!("n = 6..500, square branch {square_branch} times"))
}

fn large_m() -> Outcome {
    let mut checked = 0;
    for n in 1..=60u64 {
        let top = if n >= 3 { n * (n - 1) / 2 + 150 } else { 200 };
        for m in 1..=top {
            if let Ok(k) = sg_large_m(n, m) {
                ensure(k == sg_bipartite(n, m).unwrap().k, format!("({n},{m})"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} pairs"))
}

fn conjecture() -> Outcome {
    let ten = conjecture_scan::<f64>(10).map_err(|e| e.to_string())?;
    let hundred = conjecture_scan::<f64>(100).map_err(|e| e.to_string())?;
    ensure((ten.max_e - 1.094).abs() <= 1e-3, format!("n=10: {}", ten.max_e))?;
    ensure((hundred.max_e - 1.774).abs() <= 1e-3, format!("n=100: {}", hundred.max_e))?;
    Ok(format!("{:.4} / {:.4}", ten.max_e, hundred.max_e))
}

fn small_partitions() -> Outcome {
    for (text, want) in SMALL_PARTITIONS {
        let p: Partition = text.parse().unwrap();
        let got = sg_multipartite(&p).unwrap().0;
        ensure(got == want, format!("<{text}>: {got} vs {want}"))?;
    }
    let listed = SMALL_PARTITIONS.len();
    let all: usize = (1..=7).map(|n| Partition::all_of(n).len()).sum();
    ensure(listed == all, "table does not list every partition")?;
    Ok(format!("{listed} partitions"))
}

fn oracle_cross_validation() -> Outcome {
    let limits = OracleLimits::default();
    for n in 1..=6u64 {
        for m in 1..=6u64 {
            let g = complete_multipartite_from_blocks(&[n as usize, m as usize]);
            let (k, _) = strong_geodetic_number_exact(&g, &limits).map_err(|e| e.to_string())?;
            ensure(k as u64 == sg_bipartite(n, m).unwrap().k, format!("K({n},{m})"))?;
        }
    }
    let mut count = 0;
    for n in 1..=7 {
        for p in Partition::all_of(n) {
            let g = build_complete_multipartite(&p);
            let (k, _) = strong_geodetic_number_exact(&g, &limits).map_err(|e| e.to_string())?;
            ensure(k == sg_multipartite(&p).unwrap().0, format!("<{p}>"))?;
            count += 1;
        }
    }
    Ok(format!("36 bipartite, {count} multipartite"))
}

fn coverage_criterion() -> Outcome {
    let mut checked = 0u64;
    for n in 1..=8 {
        for p in Partition::all_of(n) {
            let mut sel = vec![0usize; p.r()];
            loop {
                let s = Selection(sel.clone());
                let a = coverage_feasible(&p, &s).unwrap();
                let b = coverage_feasible_matching(&p, &s).unwrap();
                ensure(a == b, format!("<{p}> {sel:?}"))?;
                checked += 1;
                // odometer over 0..=n_p
                let mut i = 0;
                while i < sel.len() && sel[i] == p.parts()[i] {
                    sel[i] = 0;
                    i += 1;
                }
                if i == sel.len() {
                    break;
                }
                sel[i] += 1;
            }
        }
    }
    Ok(format!("{checked} selections, 0 disagreements"))
}

fn random_partition(rng: &mut ChaCha8Rng) -> Partition {
    let n = rng.gen_range(1..=40);
    let mut left = n;
    let mut parts = Vec::new();
    while left > 0 {
        let s = rng.gen_range(1..=left.min(10));
        parts.push(s);
        left -= s;
    }
    Partition::new(parts).unwrap()
}

fn bound_sandwich() -> Outcome {
    let check = |p: &Partition| -> Result<(), String> {
        let k = sg_multipartite(p).map_err(|e| e.to_string())?.0;
        let lo = lp_lower_bound(p) as usize;
        let hi = whole_parts_upper_bound(p);
        ensure(lo <= k && k <= hi, format!("<{p}>: {lo} <= {k} <= {hi}"))
    };
    let mut count = 0;
    for n in 1..=12 {
        for p in Partition::all_of(n) {
            check(&p)?;
            count += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    for _ in 0..200 {
        check(&random_partition(&mut rng))?;
    }
    let mut uniform = 0;
    for k in 1..=5u64 {
        for m in 1..=8u64 {
            if (2 * m) % (k + 1) == 0 {
                let p = Partition::uniform(k as usize, m as usize).unwrap();
                let exact = sg_multipartite(&p).unwrap().0 as u64;
                ensure(exact == sg_uniform(k, m).unwrap(), format!("<{k}^{m}>"))?;
                ensure(exact == 2 * m * k / (k + 1), format!("<{k}^{m}> formula"))?;
                uniform += 1;
            }
        }
    }
    Ok(format!("{count} + 200 random partitions, {uniform} uniform cases"))
}

fn connected_bipartite_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u32..1 << pairs.len())
        .filter_map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e);
            let g = Graph::from_edges(n, edges).unwrap();
            (g.is_connected() && g.two_coloring().is_some()).then_some(g)
        })
        .collect()
}

fn random_bipartite(rng: &mut ChaCha8Rng, n: usize) -> (Graph, Vec<bool>) {
    loop {
        let side: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        if side.iter().all(|&s| s) || side.iter().all(|&s| !s) {
            continue;
        }
        let mut g = Graph::empty(n).unwrap();
        for u in 0..n {
            for v in u + 1..n {
                if side[u] != side[v] && rng.gen_bool(0.6) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        return (g, side);
    }
}

fn reduction_equivalence() -> Outcome {
    let limits = OracleLimits::default();
    let check = |g: &Graph, side: Option<&[bool]>| -> Result<(), String> {
        let r = verify_equivalence_report(g, side, g.n(), &limits).map_err(|e| e.to_string())?;
        ensure(r.holds(), format!("{g:?}: mismatches at {:?}", r.mismatches))?;
        let inst = reduce(g, side, r.gamma).map_err(|e| e.to_string())?;
        let (_, d) = dominating_number_exact(g, &limits_for(g.n(), limits))
            .map_err(|e| e.to_string())?;
        let cert = forward_certificate(&inst, &d).map_err(|e| e.to_string())?;
        ensure(cert.size() == inst.k_prime, "certificate size")?;
        verify_certificate(&inst.target, &cert).map_err(|e| format!("{g:?}: {e}"))
    };
    let mut exhaustive = 0;
    for n in 2..=5 {
        for g in connected_bipartite_graphs(n) {
            check(&g, None)?;
            exhaustive += 1;
        }
    }
    // the single vertex has an empty side and is rejected
    ensure(reduce(&Graph::empty(1).unwrap(), None, 1).is_err(), "K_1 accepted")?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..50 {
        let (g, side) = random_bipartite(&mut rng, 6);
        check(&g, Some(&side))?;
    }
    Ok(format!("{exhaustive} connected graphs + 50 random, K_1 excluded"))
}

fn asymptotics() -> Outcome {
    let n = 300u64;
    let mut notes = Vec::new();
    for r in [
        Regime::QuadraticAboveHalf { alpha: 1.0 },
        Regime::QuadraticBelowHalf { alpha: 0.125 },
        Regime::Linear { alpha: 1.0 },
    ] {
        let m = r.sample_m(n);
        let exact = sg_bipartite(n, m).unwrap().k as f64;
        let est = r.refined_estimate(n as f64).map_err(|e| e.to_string())?;
        let ratio = exact / est;
        ensure((0.95..=1.05).contains(&ratio), format!("{r:?}: ratio {ratio}"))?;
        notes.push(format!("{ratio:.3}"));
    }
    let r = Regime::HalfSquareAbove { gamma: 2.0 };
    let exact = sg_bipartite(n, r.sample_m(n)).unwrap().k as f64;
    let est = r.estimate(n as f64).unwrap();
    ensure((exact - est).abs() <= 10.0, format!("m = n^2/2 + 2n: {exact} vs {est}"))?;
    Ok(format!("ratios {}, gap {}", notes.join(" "), (exact - est).abs()))
}

#[test]
fn acceptance() {
    type Check = fn() -> Outcome;
    let criteria: [(&str, Check, Duration); 12] = [
        ("table of sg(K_{n,m}) for n, m <= 15", table_reproduction, Duration::from_secs(1)),
        ("classification of sg = k", classification, Duration::from_secs(5)),
        ("level set of k = 12", level_set_twelve, Duration::from_secs(10)),
        ("balanced closed form", balanced, Duration::from_secs(5)),
        ("large-m closed form", large_m, Duration::from_secs(10)),
        ("quartic harness", conjecture, Duration::from_secs(60)),
        ("multipartite table for n <= 7", small_partitions, Duration::from_secs(1)),
        ("oracle cross-validation", oracle_cross_validation, Duration::from_secs(120)),
        ("coverage criterion vs matching", coverage_criterion, Duration::from_secs(60)),
        ("bound sandwich and uniform formula", bound_sandwich, Duration::from_secs(60)),
        ("reduction equivalence", reduction_equivalence, Duration::from_secs(300)),
        ("asymptotic estimates", asymptotics, Duration::from_secs(5)),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if took <= *limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; took {took:?}, limit {limit:?}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "{status} criterion {:>2}: {name} ({detail}) [{:.2}s]",
            i + 1,
            took.as_secs_f64()
        );
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
