//! Acceptance criteria 1 to 9, one PASS/FAIL line each. Exits non-zero if
//! any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use mct_core::analyzer::{best_blowup_partition, bounds_table, structure_report, vertex_split_bound, AnalyzerConfig};
use mct_core::constructions::{k5_star, perturbed_construction, PartSizes, TnValue};
use mct_core::generate::random_free_instance;
use mct_core::solver::{brute_force_oracle, solve_exact, SearchOptions};
use mct_core::verifier::{check_kovacs_nagy, double_count_check, verify};
use mct_core::ColoredGraph;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn single_threaded(n: usize) -> Option<(usize, Duration)> {
    let opts = SearchOptions::default();
    let (res, t) = timed(|| solve_exact(n, &opts));
    res.ok().filter(|r| r.complete).map(|r| (r.k_star, t))
}

fn criterion_1() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    let four = single_threaded(4);
    pass &= four.map(|(k, _)| k) == Some(0) && brute_force_oracle(4).ok() == Some(0);
    for (n, limit) in [
        (5, Duration::from_secs(1)),
        (6, Duration::from_secs(600)),
        (7, Duration::from_secs(600)),
    ] {
        let Some((k, t)) = single_threaded(n) else {
            return outcome(false, format!("n={n}: search did not complete"));
        };
        let oracle = brute_force_oracle(n).ok();
        pass &= oracle == Some(k) && t <= limit;
        if n == 5 {
            pass &= k == 2;
        }
        notes.push(format!(
            "n={n} solver={k} oracle={} {:.3}s",
            oracle.map_or("-".into(), |o| o.to_string()),
            t.as_secs_f64()
        ));
    }
    outcome(pass, format!("n=4 -> 0; {}", notes.join("; ")))
}

fn criterion_2() -> Outcome {
    let cfg = AnalyzerConfig::default();
    let mut notes = Vec::new();
    let mut pass = true;
    for n in [10u64, 15, 20, 25, 50] {
        let q = (n / 5) as usize;
        let (ok, t) = timed(|| {
            let g = perturbed_construction(n).unwrap();
            let v = verify(&g);
            let r = structure_report(&g, &PartSizes::equal(n / 5).partition(), &cfg).unwrap();
            let mut ends: Vec<usize> = r.unstructured.iter().flat_map(|&(u, v, _)| [u, v]).collect();
            ends.sort_unstable();
            ends.dedup();
            v.clean()
                && g.k() == q * q
                && g.k() as u64 == TnValue::of(n).t
                && v.census.multicolored_count == 0
                && r.unstructured.len() == (2 * n / 5) as usize
                && ends.len() == 2 * r.unstructured.len()
        });
        pass &= ok && t < Duration::from_secs(1);
        notes.push(format!("n={n} {}", if ok { "ok" } else { "bad" }));
    }
    outcome(pass, notes.join(", "))
}

fn corpus() -> Vec<ColoredGraph> {
    let mut out: Vec<ColoredGraph> = (5..=9)
        .map(|n| solve_exact(n, &SearchOptions::default()).unwrap().witness)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    while out.len() < 1000 {
        out.push(random_free_instance(5..=12, &mut rng));
    }
    out
}

fn criterion_3(corpus: &[ColoredGraph]) -> Outcome {
    let valid = corpus
        .iter()
        .all(|g| g.find_multicolored_triangle().is_none() && (5..=12).contains(&g.n()));
    let bound = corpus
        .iter()
        .all(|g| (0..g.n()).all(|v| g.edges_inside_neighborhood(v) <= 3 * g.degree(v) / 2));
    let tight = (1..=3).all(|m| {
        let g = k5_star(m).unwrap();
        g.degree(0) == 4 * m && g.edges_inside_neighborhood(0) == 6 * m
    });
    outcome(
        valid && bound && tight,
        format!(
            "{} instances, bound {}, k5_star hub equality m=1..3 {}",
            corpus.len(),
            bound,
            tight
        ),
    )
}

fn criterion_4(corpus: &[ColoredGraph]) -> Outcome {
    let mut colors = 0;
    let mut ok = true;
    for g in corpus {
        match check_kovacs_nagy(g) {
            Ok(slacks) => {
                colors += slacks.len();
                ok &= slacks.iter().all(|s| s.holds());
            }
            Err(_) => ok = false,
        }
    }
    let single = ColoredGraph::new(5, vec![[0, 1, 2, 3, 4]]).unwrap();
    let slack = check_kovacs_nagy(&single)
        .ok()
        .and_then(|s| s.first().map(|s| s.slack()));
    outcome(
        ok && slack == Some(0),
        format!("{colors} colors checked, single C5 slack {slack:?}"),
    )
}

fn criterion_5(corpus: &[ColoredGraph]) -> Outcome {
    let ok = corpus.iter().all(|g| double_count_check(g).equal());
    outcome(ok, format!("{} instances", corpus.len()))
}

fn criterion_6(corpus: &[ColoredGraph]) -> Outcome {
    let ok = corpus.iter().all(|g| vertex_split_bound(g).bound >= g.k());
    outcome(ok, format!("{} instances", corpus.len()))
}

fn criterion_7() -> Outcome {
    let (ok, t) = timed(|| {
        bounds_table(5, 10_000, &BigRational::from_integer(0.into()))
            .iter()
            .all(|row| row.lower_le_global() && row.quadratic_le_lower())
    });
    outcome(
        ok && t < Duration::from_secs(1),
        format!("5 <= n <= 10000, {:.3}s", t.as_secs_f64()),
    )
}

/// Maximum structured edge count over all `5^n` assignments.
fn enumerate_optimum(g: &ColoredGraph) -> usize {
    let n = g.n();
    let edges: Vec<(usize, usize)> = g.edges().map(|(u, v, _)| (u, v)).collect();
    let mut parts = vec![0usize; n];
    let mut best = 0;
    loop {
        let score = edges
            .iter()
            .filter(|&&(u, v)| matches!((parts[u] + 5 - parts[v]) % 5, 1 | 4))
            .count();
        best = best.max(score);
        let mut i = 0;
        while i < n && parts[i] == 4 {
            parts[i] = 0;
            i += 1;
        }
        if i == n {
            return best;
        }
        parts[i] += 1;
    }
}

fn criterion_8() -> Outcome {
    let g = perturbed_construction(10).unwrap();
    let optimum = enumerate_optimum(&g);
    let found = best_blowup_partition(&g, 10_000_000, &mut ChaCha8Rng::seed_from_u64(0));
    let natural = PartSizes::equal(2).partition().structured_total(&g);
    let unstructured = g.edge_count() - found.structured;
    outcome(
        found.structured == optimum && found.partition.structured_total(&g) == optimum,
        format!(
            "search {} structured / {unstructured} unstructured, 5^10 enumeration optimum {optimum}; natural partition {natural} / {}",
            found.structured,
            g.edge_count() - natural
        ),
    )
}

fn criterion_9() -> Outcome {
    let outputs: Vec<(Option<i32>, Vec<u8>)> = ["1", "2", "8"]
        .iter()
        .map(|j| {
            let o = Command::new(env!("CARGO_BIN_EXE_mct"))
                .args(["solve", "--n", "6", "--jobs", j])
                .output()
                .expect("binary runs");
            (o.status.code(), o.stdout)
        })
        .collect();
    let same = outputs.windows(2).all(|w| w[0] == w[1]);
    let ok = same && outputs[0].0 == Some(0) && !outputs[0].1.is_empty();
    outcome(ok, format!("jobs 1/2/8 identical: {same}"))
}

fn main() {
    let corpus = corpus();
    let results = [
        ("oracle equivalence", criterion_1()),
        ("construction certification", criterion_2()),
        ("neighborhood edge bound", criterion_3(&corpus)),
        ("per-color degree-sum bound", criterion_4(&corpus)),
        ("double-count identity", criterion_5(&corpus)),
        ("vertex-split bound", criterion_6(&corpus)),
        ("bounds consistency", criterion_7()),
        ("partition recovery", criterion_8()),
        ("determinism", criterion_9()),
    ];
    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        println!(
            "criterion {} {} {name}: {}",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
