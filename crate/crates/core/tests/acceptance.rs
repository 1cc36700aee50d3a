//! End-to-end acceptance checks. Each criterion prints one `PASS`/`FAIL`
//! line with its key numbers; the process exits non-zero if any fails.

use std::time::Instant;

use oxford_core::distributions::{
    lower_tail_bound, size_biased_pmf, solve_parameter, trunc_cdf, trunc_pmf, truncated_mean,
    upper_tail_bound, TruncPoissonParams,
};
use oxford_core::graph::{BipartiteMultigraph, ComponentSummary};
use oxford_core::harness::{
    aggregate, birthday_estimate, corollary1_estimate, run_lemma1, run_table1, sample_grid,
    sweep_connectivity, sweep_count_ratio, t_for_rate, ConnectivityConfig, Sampler,
};
use oxford_core::ingest::fixtures;
use oxford_core::oracle::{enumerate_trees, verify_counts, SEQUENCE_CAP};
use oxford_core::rng::stream;
use oxford_core::theory::{count_exact_log, extinction, labeled_tree_count, smallest_fixed_point};
use oxford_core::{Model, ModelSpec};
use rand::seq::SliceRandom;

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Outcome);

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn tree_counts() -> Outcome {
    let targets = [
        ("human_elephant", [3.06, 0.33, 0.83]),
        ("human_monkey", [9.23, 1.69, 1.26]),
        ("human_cat", [4.53, 1.17, 0.57]),
        ("human_lemur", [2.63, 0.37, 0.57]),
    ];
    let report = run_table1(&fixtures(), 2_000, 1, Sampler::Tp).expect("table runs");
    let mut worst: f64 = 0.0;
    for (name, values) in targets {
        let row = report
            .rows
            .iter()
            .find(|r| r.name == name)
            .expect("row present");
        for (published, computed) in values.iter().zip(row.analytic.as_array()) {
            worst = worst.max((published - computed).abs() / published);
        }
    }
    let dog = report
        .rows
        .iter()
        .find(|r| r.name == "human_dog")
        .expect("dog row");
    let dog_ok = dog.flagged && (dog.analytic.one_one - 1.07).abs() < 0.01;
    let lemur = report
        .rows
        .iter()
        .find(|r| r.name == "human_lemur")
        .expect("lemur row");
    let tail_ok = (lemur.tail.one_one - 0.072).abs() < 1e-3;
    outcome(
        worst <= 0.03 && dog_ok && tail_ok,
        format!(
            "worst relative error {:.2}%, dog EA11 {:.3} flagged={}, lemur P(A11=0) {:.4}",
            worst * 100.0,
            dog.analytic.one_one,
            dog.flagged,
            lemur.tail.one_one
        ),
    )
}

fn oracle_counts() -> Outcome {
    let checks = verify_counts(SEQUENCE_CAP).expect("enumeration runs");
    let bad: Vec<_> = checks.iter().filter(|c| !c.agrees).collect();
    let tiny = checks
        .iter()
        .find(|c| (c.m, c.n, c.t) == (2, 2, 2))
        .map(|c| c.enumerated);
    let largest = checks
        .iter()
        .map(|c| (c.m * c.n) as f64)
        .zip(checks.iter().map(|c| c.t))
        .fold(0.0f64, |acc, (s, t)| acc.max(s.powi(t as i32)));
    outcome(
        bad.is_empty() && tiny == Some(4),
        format!(
            "{} instances up to (mn)^t = {largest:.0}, {} disagreements, (2,2,2) -> {:?}",
            checks.len(),
            bad.len(),
            tiny
        ),
    )
}

fn lemma1() -> Outcome {
    let reports = run_lemma1(&[(2, 2, 2), (2, 2, 3)], 1_000_000, 2024).expect("lemma 1 runs");
    let detail = reports
        .iter()
        .map(|r| {
            format!(
                "({},{},{}) tv {:.5} <= {:.5}",
                r.m, r.n, r.t, r.tv_distance, r.threshold
            )
        })
        .collect::<Vec<_>>()
        .join(", ");
    outcome(reports.iter().all(|r| r.pass), detail)
}

fn giant() -> Outcome {
    let n = 10_000;
    let t = t_for_rate(n, 1.5).expect("valid rate");
    let rows = sample_grid(&[(n, n, t)], 50, 7, Sampler::Tp).expect("sampling runs");
    let (pa, pb) = (
        solve_parameter(t as f64 / n as f64).unwrap(),
        solve_parameter(t as f64 / n as f64).unwrap(),
    );
    let ext = extinction(pa.a(), pb.a()).unwrap();
    let theory = ext.giant_left_fraction();
    let mean_dev = rows
        .iter()
        .map(|r| (r.left_frac - theory).abs())
        .sum::<f64>()
        / rows.len() as f64;
    let second = rows.iter().map(|r| r.second_largest).max().unwrap();
    outcome(
        mean_dev <= 0.01 && ext.residual <= 1e-12 && second <= 60,
        format!(
            "t={t}, 1-xi_L {theory:.5}, mean |frac - theory| {mean_dev:.5}, residual {:.1e}, max second-largest {second}",
            ext.residual
        ),
    )
}

fn subcritical() -> Outcome {
    let rate = 0.5f64.sqrt();
    let at = |n: usize, reps: usize, seed: u64| {
        let t = t_for_rate(n, rate).expect("valid rate");
        sample_grid(&[(n, n, t)], reps, seed, Sampler::Tp).expect("sampling runs")
    };
    let main = at(10_000, 50, 11);
    let max_main = main.iter().map(|r| r.largest).max().unwrap();
    let mean_largest = |rows: &[oxford_core::harness::SweepRow]| {
        rows.iter().map(|r| r.largest as f64).sum::<f64>() / rows.len() as f64
    };
    let sizes = [
        mean_largest(&at(1_000, 50, 12)),
        mean_largest(&main),
        mean_largest(&at(100_000, 20, 13)),
    ];
    let ratios = [sizes[1] / sizes[0], sizes[2] / sizes[1]];
    outcome(
        max_main <= 60 && ratios.iter().all(|&r| r <= 3.0),
        format!(
            "max largest at n=1e4 {max_main}; mean largest {:.1}/{:.1}/{:.1} at 1e3/1e4/1e5, decade ratios {:.2}, {:.2}",
            sizes[0], sizes[1], sizes[2], ratios[0], ratios[1]
        ),
    )
}

fn connectivity() -> Outcome {
    let cfg = ConnectivityConfig {
        m: 5_000,
        n: 5_000,
        c: vec![0.6, 0.8, 1.0, 1.2, 1.4, 1.6],
        reps: 200,
        seed: 31,
        sampler: Sampler::Tp,
    };
    let agg = aggregate(&sweep_connectivity(&cfg).expect("sweep runs")).expect("aggregates");
    let p: Vec<_> = agg.iter().map(|r| r.connected()).collect();
    let monotone = p
        .windows(2)
        .all(|w| w[1].mean >= w[0].mean - 2.0 * (w[0].se.powi(2) + w[1].se.powi(2)).sqrt());
    let first = p[0].mean;
    let last = p[p.len() - 1].mean;
    let detail = agg
        .iter()
        .map(|r| {
            format!(
                "c={} P={:.3} EA11={:.3}",
                r.c, r.connected_mean, r.ea11_theory
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    outcome(first <= 0.1 && last >= 0.9 && monotone, detail)
}

fn count_ratio() -> Outcome {
    let rows = sweep_count_ratio(&[(50, 50, 100), (200, 200, 400)]).expect("counts");
    let (small, large) = (rows[0].ratio, rows[1].ratio);
    outcome(
        (0.97..=1.03).contains(&large) && (large - 1.0).abs() < (small - 1.0).abs(),
        format!("ratio {small:.5} at (50,50,100), {large:.5} at (200,200,400)"),
    )
}

fn distinct_edges() -> Outcome {
    let b = birthday_estimate(1_000, 1_000, 1_000, 200_000, 41).expect("birthday runs");
    let c = corollary1_estimate(100, 100, 150, 20_000, 43, Sampler::Tp).expect("corollary runs");
    let birthday_ok = b.estimate().within(b.lower, 3.0);
    let bracket_ok = c.p_hat >= c.lower - 2.0 * c.se && c.p_hat <= c.upper + 2.0 * c.se;
    outcome(
        birthday_ok && bracket_ok,
        format!(
            "P(distinct) {:.4} +- {:.4} vs {:.4}; P(distinct | min deg 1) {:.4} +- {:.4} in [{:.4}, 1]",
            b.p_hat, b.se, b.lower, c.p_hat, c.se, c.lower
        ),
    )
}

fn properties() -> Outcome {
    let mut failures: Vec<String> = Vec::new();
    let mut check = |ok: bool, what: &str| {
        if !ok {
            failures.push(what.to_owned());
        }
    };

    for a in [0.05, 0.5, 1.0, 1.5, 2.0, 3.0, 7.5, 20.0] {
        let p = TruncPoissonParams::from_rate(a).unwrap();
        let kmax = (20.0 + 10.0 * a) as u64;
        let total: f64 = (0..=kmax).map(|k| trunc_pmf(&p, k)).sum();
        check((total - 1.0).abs() <= 1e-12, "truncated pmf normalises");
        check(
            (trunc_cdf(&p, kmax) - 1.0).abs() <= 1e-12,
            "truncated cdf reaches one",
        );
        let sb: f64 = (0..=kmax).map(|k| size_biased_pmf(&p, k)).sum();
        check((sb - 1.0).abs() <= 1e-12, "size-biased pmf normalises");
        for k in 0..=50u64 {
            let lhs = size_biased_pmf(&p, k);
            let rhs = (k + 1) as f64 * trunc_pmf(&p, k + 1) / p.mean();
            check((lhs - rhs).abs() <= 1e-12, "size-biased identity");
        }
        let var: f64 = (1..=kmax)
            .map(|k| (k as f64 - p.mean()).powi(2) * trunc_pmf(&p, k))
            .sum();
        check(
            (var - p.sigma2()).abs() <= 1e-10 * p.sigma2().max(1.0),
            "variance formula",
        );
    }
    for mu in [1.01, 1.5, 2.0, 5.0, 20.0] {
        let a = solve_parameter(mu).unwrap().a();
        check(
            (truncated_mean(a) - mu).abs() / mu <= 1e-10,
            "parameter inverse",
        );
    }

    for lambda in [1.0, 2.0, 5.0, 10.0, 20.0, 40.0] {
        let p = TruncPoissonParams::from_rate(lambda).unwrap();
        let below = trunc_cdf(&p, (lambda / 2.0).floor() as u64);
        check(
            below <= lower_tail_bound(lambda).unwrap(),
            "lower tail bound dominates",
        );
        for l in [1.5, 2.0, 3.0, 5.0] {
            let k = (l * lambda).ceil() as u64;
            let above: f64 = (k..k + 1_000).map(|j| trunc_pmf(&p, j)).sum();
            check(
                above <= upper_tail_bound(lambda, l).unwrap(),
                "upper tail bound dominates",
            );
        }
    }

    for i in 1..=20usize {
        for j in 1..=20usize {
            if i * j <= 20 {
                let formula = labeled_tree_count(i, j);
                check(
                    formula == enumerate_trees(i, j).unwrap().into(),
                    "tree formula matches enumeration",
                );
            }
        }
    }

    for model in [
        Model::Gr {
            m: 30,
            n: 20,
            t: 40,
        },
        Model::Gr1 {
            m: 6,
            n: 5,
            t: 12,
            max_attempts: 100_000,
        },
        Model::Tp {
            m: 300,
            n: 200,
            t: 700,
            max_attempts: 100_000,
        },
        Model::Er {
            m: 30,
            n: 40,
            p: 0.05,
        },
    ] {
        let spec = ModelSpec::new(model, 77);
        check(
            spec.generate().unwrap() == spec.generate().unwrap(),
            "seed determinism",
        );
    }

    let mut rng = stream(5);
    for _ in 0..50 {
        let g = Model::Tp {
            m: 200,
            n: 150,
            t: 400,
            max_attempts: 100_000,
        }
        .generate(&mut rng)
        .unwrap();
        let mut edges = g.edges().to_vec();
        edges.shuffle(&mut rng);
        let h = BipartiteMultigraph::new(g.m(), g.n(), edges).unwrap();
        let (sg, sh) = (ComponentSummary::of(&g), ComponentSummary::of(&h));
        check(
            sg.tree_census(4, 4) == sh.tree_census(4, 4),
            "census order invariance",
        );
        check(
            sg.largest_size == sh.largest_size,
            "largest component order invariance",
        );
    }

    check(count_exact_log(2, 2, 2).exp().round() == 4.0, "tiny count");
    check(
        smallest_fixed_point(1.0, 0.9).0 == 1.0,
        "subcritical fixed point",
    );

    let n = failures.len();
    failures.dedup();
    outcome(
        n == 0,
        if n == 0 {
            "all property checks hold".to_owned()
        } else {
            failures.join(", ")
        },
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 tree-count table", tree_counts),
        ("2 exhaustive counts", oracle_counts),
        ("3 TP vs GR1 law", lemma1),
        ("4 giant component", giant),
        ("5 subcritical components", subcritical),
        ("6 connectivity", connectivity),
        ("7 count asymptotics", count_ratio),
        ("8 distinct edges", distinct_edges),
        ("9 property suites", properties),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (name, run) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let o = run();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {name}: {verdict} ({:.1}s) {}",
            start.elapsed().as_secs_f64(),
            o.detail
        );
        failed += !o.pass as usize;
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
