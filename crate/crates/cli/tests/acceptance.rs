//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Run with `cargo test --test acceptance`.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::process::{Command as Process, ExitCode};
use std::time::Instant;

use common::{brute_coreness, gadget_classify, mixed_graph, random_tree, rng};
use rand::Rng;
use twocore::ball::{classify, explore_ball, Mode};
use twocore::diagnostics::{color_forest, verify_upstream_bound};
use twocore::estimator::{estimate, EstimateParams};
use twocore::generators::{disjoint_regular, erdos_renyi, GeneratorSpec, Model};
use twocore::graph::{named, Graph};
use twocore::oracle::{coreness, er_branching_oracle, two_core};
use twocore::percolation::draw_coupling;
use twocore::rng::derive_seed;

type Verdict = Result<String, String>;

fn check(ok: bool, detail: String) -> Verdict {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Estimator vs exact 2-core on ER(2e5, 4) at p = 0.9, ten seeds.
fn criterion_1() -> Verdict {
    const TOL: f64 = 0.02;
    let mut good = 0;
    let mut worst = (0.0f64, 0.0f64);
    for seed in 1..=10u64 {
        let base = erdos_renyi(200_000, 4.0, seed).unwrap();
        let g = draw_coupling(&base, derive_seed(seed, 1))
            .percolate_at(0.9)
            .unwrap();
        let exact = two_core(&g).fractions;
        let params = EstimateParams {
            k: 1000,
            t: 120_000,
            seed: derive_seed(seed, 2),
            mode: Mode::Semantic,
        };
        let r = estimate(&g, params).unwrap();
        let (d2, d2inf) = (
            (r.i2 - exact.frac_c2).abs(),
            (r.i2inf - exact.frac_c2max).abs(),
        );
        worst = (worst.0.max(d2), worst.1.max(d2inf));
        good += usize::from(d2 <= TOL && d2inf <= TOL);
    }
    check(
        good >= 9,
        format!(
            "{good}/10 seeds within {TOL}; worst |I2-frac_c2| = {:.4}, |I2inf-frac_c2max| = {:.4}",
            worst.0, worst.1
        ),
    )
}

/// Exact giant 2-core fraction vs the Poisson branching limit.
fn criterion_2() -> Verdict {
    const TOL: f64 = 0.01;
    let base = erdos_renyi(200_000, 4.0, 2024).unwrap();
    let coupling = draw_coupling(&base, 2025);
    let mut worst = 0.0f64;
    let mut parts = Vec::new();
    for p in [0.5, 0.7, 0.9] {
        let exact = two_core(&coupling.percolate_at(p).unwrap())
            .fractions
            .frac_c2max;
        let limit = er_branching_oracle(4.0 * p).unwrap().zeta2inf;
        worst = worst.max((exact - limit).abs());
        parts.push(format!("p={p}: {exact:.4} vs {limit:.4}"));
    }
    check(
        worst <= TOL,
        format!("{}; worst gap {worst:.4} (tol {TOL})", parts.join(", ")),
    )
}

/// Disjoint small regular graphs fool the local estimator.
fn criterion_3() -> Verdict {
    let out = disjoint_regular(10_000, 5, 3).unwrap();
    let g = out.graph;
    let exact = two_core(&g).fractions.frac_c2max;
    let params = EstimateParams {
        k: 50,
        t: 10_000,
        seed: 4,
        mode: Mode::Semantic,
    };
    let r = estimate(&g, params).unwrap();
    let gap = r.i2inf - exact;
    check(
        r.i2inf >= 0.9 && exact <= 0.02 && gap >= 0.5,
        format!(
            "{} copies of {}; I2inf = {:.4}, exact frac_c2max = {exact:.4}, gap {gap:.4}",
            out.copies, out.copy_size, r.i2inf
        ),
    )
}

/// Semantic classification vs gadget-completed exact peeling.
fn criterion_4() -> Verdict {
    const BALLS: usize = 10_000;
    let mut checked = 0;
    let mut disagreements = 0;
    let mut seed = 0u64;
    while checked < BALLS {
        let g = mixed_graph(seed, 200);
        let mut r = rng(derive_seed(seed, 9));
        for _ in 0..20 {
            let root = r.random_range(0..g.n());
            let k = r.random_range(2..=60);
            let ball = explore_ball(&g, root, k).unwrap();
            if !ball.truncated || ball.degree_overflow {
                continue;
            }
            let c = classify(&ball, Mode::Semantic);
            disagreements += usize::from((c.core, c.giant) != gadget_classify(&ball));
            checked += 1;
            if checked == BALLS {
                break;
            }
        }
        seed += 1;
    }
    check(
        disagreements == 0,
        format!("{checked} truncated balls from {seed} graphs, {disagreements} disagreements"),
    )
}

/// Bucket-queue coreness vs subset enumeration.
fn criterion_5() -> Verdict {
    let mut bad = 0;
    for seed in 0..200u64 {
        let mut r = rng(seed);
        let n = r.random_range(1..=10);
        let p: f64 = r.random_range(0.1..0.8);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| r.random::<f64>() < p)
            .collect();
        let g = Graph::from_edges(n, edges).unwrap();
        bad += usize::from(coreness(&g) != brute_coreness(&g));
    }
    check(
        bad == 0,
        format!("200 graphs with n <= 10, {bad} disagreements"),
    )
}

/// Colored upstream is at least a third of regular upstream.
fn criterion_6() -> Verdict {
    let mut violations = 0;
    let mut vertices = 0;
    let mut min_ratio = f64::INFINITY;
    for seed in 0..500u64 {
        let mut r = rng(seed + 50_000);
        let n = r.random_range(20..=2000);
        let window = [1, 2, 4, 16, n][r.random_range(0..5)];
        let g = random_tree(n, window, seed);
        let h: Vec<usize> = (0..r.random_range(1..=5)).collect();
        let ell = r.random_range(2..=8);
        let cf = color_forest(&g, &h, ell).unwrap();
        let report = verify_upstream_bound(&cf);
        violations += report.violations.len();
        vertices += report.checked;
        if let Some(m) = report.min_ratio {
            min_ratio = min_ratio.min(m);
        }
    }
    check(violations == 0, format!("500 forests, {vertices} vertices checked, {violations} violations, min ratio {min_ratio:.4}"))
}

/// Coupling monotonicity and the sprinkle marginal.
fn criterion_7() -> Verdict {
    let mut nested = true;
    for seed in 0..100u64 {
        let g = mixed_graph(seed, 200);
        let mut r = rng(seed + 7);
        let (a, b): (f64, f64) = (r.random(), r.random());
        let (lo, hi) = (a.min(b), a.max(b));
        let c = draw_coupling(&g, seed);
        let (small, big) = (c.percolate_at(lo).unwrap(), c.percolate_at(hi).unwrap());
        nested &= small.edges().all(|(u, v)| big.has_edge(u, v));
    }
    let (p_low, p_high, trials) = (0.3, 0.5, 10_000u64);
    let k100 = named::complete(100);
    let mut kept = 0u64;
    let mut first_edge = 0u64;
    for t in 0..trials {
        let g = draw_coupling(&k100, derive_seed(t, 1))
            .sprinkle(p_low, p_high, derive_seed(t, 2))
            .unwrap();
        kept += g.m() as u64;
        first_edge += u64::from(g.has_edge(0, 1));
    }
    let total = (trials * k100.m() as u64) as f64;
    let z_all = (kept as f64 - total * p_high) / (total * p_high * (1.0 - p_high)).sqrt();
    let n = trials as f64;
    let z_one = (first_edge as f64 - n * p_high) / (n * p_high * (1.0 - p_high)).sqrt();
    check(
        nested && z_all.abs() <= 5.0 && z_one.abs() <= 5.0,
        format!("monotone on 100 graphs: {nested}; sprinkle z-scores {z_all:.2} (all edges), {z_one:.2} (edge 0-1)"),
    )
}

/// Household model: triangles survive, giant 2-core follows the giant.
fn criterion_8() -> Verdict {
    let spec = GeneratorSpec::new(Model::HouseholdTriangle { n: 10_000, c: 4.0 }, 1);
    let g = spec.generate().unwrap();
    let coupling = draw_coupling(&g, derive_seed(1, 1));
    let at = |p: f64| two_core(&coupling.percolate_at(p).unwrap()).fractions;
    let (sub, sup) = (at(0.2), at(0.4));
    let p3 = 0.4f64.powi(3);
    let ok = sup.frac_c2 >= 0.9 * p3
        && sup.frac_c2max <= sup.frac_cmax
        && sup.frac_c2max >= 0.005
        && sub.frac_cmax < 0.005
        && sub.frac_c2max < 0.001;
    check(
        ok,
        format!(
            "p=0.4: frac_c2 {:.4} >= {:.4}, frac_c2max {:.4} <= frac_cmax {:.4}; p=0.2: frac_cmax {:.4}, frac_c2max {:.4}",
            sup.frac_c2,
            0.9 * p3,
            sup.frac_c2max,
            sup.frac_cmax,
            sub.frac_cmax,
            sub.frac_c2max
        ),
    )
}

/// Every pipeline is byte-identical when rerun, under different thread counts.
fn criterion_9() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let d = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    std::fs::write(d("a.txt"), "0 1 2\n").unwrap();
    std::fs::write(d("b.txt"), "500 501\n").unwrap();
    let pipelines: Vec<Vec<String>> = [
        "gen --gen er:n=5000,c=3 --seed 5",
        "percolate --gen regular:n=4000,d=3 --p 0.7 --seed 6",
        "exact --gen household:n=3000,c=3 --p 0.6 --seed 7 --ell 3",
        "estimate --gen er:n=20000,c=4 --p 0.8 --K 300 --epsilon 0.1 --with-exact --seed 8",
        "estimate --gen er:n=20000,c=4 --p 0.8 --K 300 --T 2000 --mode literal --seed 8",
        "sweep --gen er:n=10000,c=4 --p-grid 0.2,0.5,0.8 --K 200 --T 1000 --seed 9",
        "diagnose --gen er:n=2000,c=4 --cut-epsilon 0.3 --iters 4 --p-low 0.5 --p-high 0.7 --ell 3 --seed 10",
        "oracle --lambda 2.5",
    ]
    .iter()
    .map(|s| s.split(' ').map(String::from).collect())
    .collect();
    let mut mismatches = Vec::new();
    for (i, args) in pipelines.iter().enumerate() {
        let mut outputs = Vec::new();
        for threads in [1, 3] {
            let out = d(&format!("p{i}-t{threads}"));
            let mut extra = vec!["--out".to_string(), out.clone()];
            if args[0] == "sweep" {
                extra.extend(["--plot-data".to_string(), format!("{out}.plot")]);
            }
            if args[0] == "diagnose" {
                extra.extend(["--paths".to_string(), d("a.txt"), d("b.txt")]);
            }
            let status = Process::new(env!("CARGO_BIN_EXE_twocore"))
                .args(args)
                .args(&extra)
                .env("TWOCORE_THREADS", threads.to_string())
                .output()
                .unwrap();
            if !status.status.success() {
                return Err(format!(
                    "`{}` failed: {}",
                    args.join(" "),
                    String::from_utf8_lossy(&status.stderr)
                ));
            }
            let mut bytes = std::fs::read(&out).unwrap();
            bytes.extend(std::fs::read(format!("{out}.plot")).unwrap_or_default());
            outputs.push(bytes);
        }
        if outputs[0] != outputs[1] {
            mismatches.push(args[0].clone());
        }
    }
    check(
        mismatches.is_empty(),
        format!(
            "{} pipelines rerun with 1 and 3 threads; mismatches: {mismatches:?}",
            pipelines.len()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 9] = [
        ("estimator vs exact oracle", criterion_1),
        ("branching oracle agreement", criterion_2),
        ("disjoint copies fool the estimator", criterion_3),
        ("classifier vs gadget oracle", criterion_4),
        ("coreness vs brute force", criterion_5),
        ("colored upstream bound", criterion_6),
        ("percolation laws", criterion_7),
        ("household model", criterion_8),
        ("pipeline determinism", criterion_9),
    ];
    let filter = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let label = format!("criterion {}", i + 1);
        if filter
            .as_ref()
            .is_some_and(|f| !label.contains(f.as_str()) && !name.contains(f.as_str()))
        {
            continue;
        }
        let start = Instant::now();
        let verdict = run();
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS {label} ({name}): {detail} [{secs:.1}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {label} ({name}): {detail} [{secs:.1}s]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
