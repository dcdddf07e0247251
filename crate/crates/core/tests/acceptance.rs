//! Acceptance gate: one line per criterion, non-zero exit on any failure.
//!
//! Brute-force oracles here enumerate set partitions by inserting each index
//! into an existing block or a new one, independently of the library's
//! restricted-growth enumeration.

use std::io::Write;
use std::time::{Duration, Instant};

use entagg::dist::entropy_of;
use entagg::{
    aggregate, alpha, build_mq, d_upper_via_mq, exact_max_aggregation_capped,
    exact_min_aggregation, for_each_rgs, huffman_max_aggregation, majorizes,
    min_entropy_coupling_exact, prior_bound_epsilon, r_operator, theorem2_gap, z_rho, Dist,
    Partition,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

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

// ---------------------------------------------------------------- oracles

/// Calls `visit(labels, blocks)` for every set partition of `0..n`.
fn all_partitions(n: usize, visit: &mut dyn FnMut(&[usize], usize)) {
    fn place(
        i: usize,
        n: usize,
        labels: &mut Vec<usize>,
        blocks: usize,
        visit: &mut dyn FnMut(&[usize], usize),
    ) {
        if i == n {
            visit(labels, blocks);
            return;
        }
        for b in 0..=blocks {
            labels.push(b);
            place(i + 1, n, labels, blocks.max(b + 1), visit);
            labels.pop();
        }
    }
    place(0, n, &mut Vec::with_capacity(n), 0, visit);
}

fn block_sums(masses: &[f64], labels: &[usize], m: usize) -> Vec<f64> {
    let mut s = vec![0.0; m];
    for (&l, &x) in labels.iter().zip(masses) {
        s[l] += x;
    }
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

fn prefix_dominated(a: &[f64], b: &[f64], tol: f64) -> bool {
    let (mut sa, mut sb) = (0.0, 0.0);
    for k in 0..a.len().max(b.len()) {
        sa += a.get(k).copied().unwrap_or(0.0);
        sb += b.get(k).copied().unwrap_or(0.0);
        if sa > sb + tol {
            return false;
        }
    }
    true
}

/// Brute-force min and max entropy per block count, indexed by `m`.
fn brute_extremes(masses: &[f64]) -> Vec<(f64, f64)> {
    let n = masses.len();
    let mut ext = vec![(f64::INFINITY, f64::NEG_INFINITY); n + 1];
    all_partitions(n, &mut |labels, m| {
        let h = entropy_of(&block_sums(masses, labels, m));
        let e = &mut ext[m];
        e.0 = e.0.min(h);
        e.1 = e.1.max(h);
    });
    ext
}

// ------------------------------------------------------------- instances

fn random_dist(rng: &mut StdRng, n: usize) -> Dist {
    let family = rng.gen_range(0..4);
    let w: Vec<f64> = (0..n)
        .map(|_| {
            let u: f64 = rng.gen_range(1e-9..1.0);
            match family {
                0 => u,
                1 => -u.ln(),
                2 => u.powi(4),
                _ => (8.0 * u).exp(),
            }
        })
        .collect();
    normalized(&w)
}

fn normalized(w: &[f64]) -> Dist {
    let s: f64 = w.iter().sum();
    Dist::new(&w.iter().map(|x| x / s).collect::<Vec<_>>()).unwrap()
}

// ------------------------------------------------------------- criteria

fn ac1_alpha() -> Outcome {
    let a = alpha();
    outcome(
        a > 0.086_070 && a < 0.086_072 && a < 0.0861,
        format!("alpha = {a:.12}"),
    )
}

fn small_instances(seed: u64, count: usize) -> Vec<Dist> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(3..=10);
            random_dist(&mut rng, n)
        })
        .collect()
}

fn ac2_minimum(instances: &[Dist]) -> Outcome {
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    for p in instances {
        let ext = brute_extremes(&p.original_probs());
        for (m, &(lo, _)) in ext.iter().enumerate().take(p.len()).skip(2) {
            let h = exact_min_aggregation(p, m).unwrap().h.bits();
            worst = worst.max((h - lo).abs());
            checked += 1;
        }
    }
    outcome(
        worst <= 1e-12,
        format!("{checked} (p, m) pairs, max |H(Q_m) - brute min| = {worst:.2e}"),
    )
}

fn ac3_maximum(instances: &[Dist]) -> Outcome {
    let a = alpha();
    let mut violations = 0;
    let mut min_gap = f64::INFINITY;
    let mut max_gap: f64 = 0.0;
    let mut checked = 0;
    let mut extra = instances.to_vec();
    extra.push(Dist::new(&[0.4, 0.3, 0.2, 0.1]).unwrap());
    for p in &extra {
        let ext = brute_extremes(&p.original_probs());
        for (m, &(_, best)) in ext.iter().enumerate().take(p.len()).skip(2) {
            let hr = r_operator(p, m).unwrap().entropy().bits();
            if best < hr - a || best > hr + 1e-9 {
                violations += 1;
            }
            let gap = hr - best;
            min_gap = min_gap.min(gap);
            max_gap = max_gap.max(gap);
            checked += 1;
        }
    }
    let p = Dist::new(&[0.4, 0.3, 0.2, 0.1]).unwrap();
    let huff_gap = r_operator(&p, 2).unwrap().entropy().bits()
        - huffman_max_aggregation(&p, 2).unwrap().0.h.bits();
    let pass =
        violations == 0 && min_gap < 1e-6 && max_gap > 0.01 && (huff_gap - 0.029_049).abs() < 1e-6;
    outcome(
        pass,
        format!(
            "{checked} pairs, {violations} violations; H(R_m) - max ranges over [{min_gap:.2e}, {max_gap:.6}] \
             (alpha {a:.6}); Huffman gap on (0.4,0.3,0.2,0.1), m=2: {huff_gap:.6}"
        ),
    )
}

fn ac4_huffman() -> Outcome {
    let mut rng = StdRng::seed_from_u64(4);
    let a = alpha();
    let mut worst = f64::INFINITY;
    let mut violations = 0;
    for _ in 0..10_000 {
        let n = rng.gen_range(3..=200);
        let p = random_dist(&mut rng, n);
        let m = rng.gen_range(2..n);
        let h = huffman_max_aggregation(&p, m).unwrap().0.h.bits();
        let hr = r_operator(&p, m).unwrap().entropy().bits();
        let slack = h - (hr - a);
        if slack < 0.0 {
            violations += 1;
        }
        worst = worst.min(slack);
    }
    outcome(
        violations == 0,
        format!(
            "10000 instances, {violations} violations, min slack H - (H(R_m) - alpha) = {worst:.6}"
        ),
    )
}

fn ac5_majorization(instances: &[Dist]) -> Outcome {
    let tol = entagg::EPS_SUM;
    let mut v = [0usize; 5];
    let mut partitions = 0u64;
    for p in instances {
        let masses = p.original_probs();
        let n = p.len();
        let rs: Vec<Option<Dist>> = (0..n)
            .map(|m| (m >= 2).then(|| r_operator(p, m).unwrap()))
            .collect();
        let qs: Vec<Option<Dist>> = (0..n)
            .map(|m| (m >= 2).then(|| exact_min_aggregation(p, m).unwrap().dist))
            .collect();
        all_partitions(n, &mut |labels, m| {
            partitions += 1;
            let sums = block_sums(&masses, labels, m);
            let part = Partition::from_labels(labels).unwrap();
            let agg = aggregate(p, &part).unwrap();
            // Library aggregation equals oracle block sums.
            if agg
                .probs()
                .iter()
                .zip(&sums)
                .any(|(a, b)| (a - b).abs() > 1e-12)
            {
                v[0] += 1;
            }
            // p is majorized by every aggregation.
            if !majorizes(p, &agg).majorized {
                v[1] += 1;
            }
            if m >= 2 && m < n {
                let r = rs[m].as_ref().unwrap();
                let q = qs[m].as_ref().unwrap();
                // R_m(p) is majorized by every m-aggregation;
                // every m-aggregation is majorized by Q_m(p).
                if !majorizes(r, &agg).majorized || !prefix_dominated(&sums, q.probs(), tol) {
                    v[2] += 1;
                }
                // Schur-concavity along both comparisons.
                let h = entropy_of(&sums);
                if r.entropy().bits() < h - 1e-9 || h < q.entropy().bits() - 1e-9 {
                    v[3] += 1;
                }
            }
            if agg.entropy().bits() > p.entropy().bits() + 1e-9 {
                v[4] += 1;
            }
        });
    }
    let total: usize = v.iter().sum();
    outcome(
        total == 0,
        format!(
            "{} instances, {partitions} partitions; violations: block sums {}, p below f(p) {}, R_m/Q_m sandwich {}, schur {}, H(f(X))<=H(X) {}",
            instances.len(),
            v[0],
            v[1],
            v[2],
            v[3],
            v[4]
        ),
    )
}

fn ac6_theorem2() -> Outcome {
    let mut rng = StdRng::seed_from_u64(6);
    let mut violations = 0;
    let mut tightest = f64::INFINITY;
    for &rho in &[1.1, 1.5, 2.0, 4.0, 10.0] {
        let gap = theorem2_gap(rho).unwrap();
        for k in 0..1000 {
            let n = rng.gen_range(4..=64);
            let w: Vec<f64> = if k % 4 == 0 {
                // Two-level distributions sit on the extremal family.
                let cut = rng.gen_range(1..n);
                (0..n).map(|i| if i < cut { rho } else { 1.0 }).collect()
            } else {
                (0..n).map(|_| rng.gen_range(1.0..=rho)).collect()
            };
            let p = normalized(&w);
            let log_n = (n as f64).log2();
            let z = z_rho(&p, rho).unwrap();
            let hz = z.dist.entropy().bits();
            if p.entropy().bits() < log_n - gap - 1e-9
                || log_n - hz > gap + 1e-9
                || !majorizes(&p, &z.dist).majorized
            {
                violations += 1;
            }
            tightest = tightest.min(gap - (log_n - hz));
        }
    }
    let consistency = (theorem2_gap(2.0).unwrap() - alpha()).abs();
    outcome(
        violations == 0 && consistency <= 1e-12,
        format!(
            "5000 instances, {violations} violations, min slack {tightest:.2e}; |gap(2) - alpha| = {consistency:.1e}"
        ),
    )
}

fn ac7_prior_bound() -> Outcome {
    let mut violations = 0;
    let mut min_margin = f64::INFINITY;
    for k in 1..=50 {
        let rho = 1.0 + 99.0 * k as f64 / 50.0;
        let ours = theorem2_gap(rho).unwrap();
        let prior = prior_bound_epsilon(rho).unwrap();
        if ours > prior {
            violations += 1;
        }
        min_margin = min_margin.min(prior - ours);
    }
    outcome(
        violations == 0,
        format!("50 grid points in (1, 100], {violations} violations, min margin {min_margin:.4}"),
    )
}

fn sorted_nonzeros(xs: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut v: Vec<f64> = xs.filter(|&x| x != 0.0).collect();
    v.sort_by(f64::total_cmp);
    v
}

fn ac8_coupling() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let a = alpha();
    let mut v = [0usize; 4];
    let mut worst_excess = f64::NEG_INFINITY;
    let mut exact_instances = 0;
    for _ in 0..200 {
        let m = rng.gen_range(2..=3);
        let n = rng.gen_range(m + 1..=6);
        let p = random_dist(&mut rng, n);
        let hp = p.entropy().bits();

        let (huff, _) = huffman_max_aggregation(&p, m).unwrap();
        let mq = build_mq(&p, &huff.partition).unwrap();
        let same_support = sorted_nonzeros(mq.matrix.iter().flatten().copied())
            == sorted_nonzeros(p.probs().iter().copied());
        if !same_support || (mq.entropy().bits() - hp).abs() > 1e-12 {
            v[0] += 1;
        }

        let (_, rep) = min_entropy_coupling_exact(&p, &huff.dist).unwrap();
        let d_bar = rep.d;
        exact_instances += 1;

        let mut d_star = f64::INFINITY;
        let mut cache: Vec<(Vec<f64>, f64)> = Vec::new();
        let masses = p.original_probs();
        all_partitions(n, &mut |labels, blocks| {
            if blocks != m {
                return;
            }
            let sums = block_sums(&masses, labels, m);
            let d = match cache.iter().find(|(s, _)| *s == sums) {
                Some(&(_, d)) => d,
                None => {
                    let q = Dist::new(&sums).unwrap();
                    let (_, r) = min_entropy_coupling_exact(&p, &q).unwrap();
                    exact_instances += 1;
                    let hq = q.entropy().bits();
                    // H(a) - H(b) <= D(a, b), both orders.
                    if hp - hq > r.d + 1e-9 || hq - hp > r.d + 1e-9 {
                        v[2] += 1;
                    }
                    let part = Partition::from_labels(labels).unwrap();
                    if d_upper_via_mq(&p, &part).unwrap() < r.d - 1e-9 {
                        v[3] += 1;
                    }
                    cache.push((sums, r.d));
                    r.d
                }
            };
            d_star = d_star.min(d);
        });
        let excess = d_bar - d_star;
        worst_excess = worst_excess.max(excess);
        if excess > a + 1e-9 {
            v[1] += 1;
        }
        if hp - huff.h.bits() > d_bar + 1e-9 {
            v[2] += 1;
        }
    }
    let total: usize = v.iter().sum();
    outcome(
        total == 0,
        format!(
            "200 instances, {exact_instances} exact W solves; violations: H(M_q)=H(p) {}, D(p,q_bar)<=D*+alpha {}, \
             H(a)-H(b)<=D {}, d_upper>=D {}; max D(p,q_bar)-D* = {worst_excess:.6}",
            v[0], v[1], v[2], v[3]
        ),
    )
}

fn time_it(reps: u32, mut f: impl FnMut()) -> Duration {
    let start = Instant::now();
    for _ in 0..reps {
        f();
    }
    start.elapsed() / reps
}

fn ac9_scaling() -> Outcome {
    let mut rng = StdRng::seed_from_u64(9);
    let mut lines = Vec::new();
    let mut times = Vec::new();
    let mut counts_ok = true;
    for &n in &[8usize, 10, 12] {
        let p = random_dist(&mut rng, n);
        let mut count = 0u64;
        for_each_rgs(n, 2, |_| count += 1);
        counts_ok &= count == (1u64 << (n - 1)) - 1;
        let t = time_it(200, || {
            exact_max_aggregation_capped(&p, 2, 12).unwrap();
        });
        times.push(t);
        lines.push(format!("n={n}: {count} partitions, {t:?}"));
    }
    let growth = times[2].as_secs_f64() / times[0].as_secs_f64().max(1e-12);

    let p = random_dist(&mut rng, 100_000);
    let a = alpha();
    let mut huff_ok = true;
    for &m in &[2usize, 1000, 50_000] {
        let start = Instant::now();
        let (r, trace) = huffman_max_aggregation(&p, m).unwrap();
        let t = start.elapsed();
        let hr = r_operator(&p, m).unwrap().entropy().bits();
        huff_ok &= r.h.bits() >= hr - a && trace.merge_steps.len() == 100_000 - m;
        lines.push(format!(
            "huffman n=1e5 m={m}: {t:?}, H(R_m) - H = {:.6}",
            hr - r.h.bits()
        ));
    }
    outcome(
        counts_ok && growth > 4.0 && huff_ok,
        format!(
            "{}; exact time ratio n=12/n=8: {growth:.1}",
            lines.join("; ")
        ),
    )
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let instances = small_instances(2, 1000);
    let criteria: Vec<Criterion> = vec![
        ("AC1 alpha constant", Box::new(ac1_alpha)),
        (
            "AC2 minimum equals H(Q_m)",
            Box::new(|| ac2_minimum(&instances)),
        ),
        (
            "AC3 maximum within [H(R_m) - alpha, H(R_m)]",
            Box::new(|| ac3_maximum(&instances)),
        ),
        ("AC4 Huffman alpha guarantee", Box::new(ac4_huffman)),
        (
            "AC5 majorization suite",
            Box::new(|| ac5_majorization(&instances)),
        ),
        (
            "AC6 ratio-constrained entropy bound",
            Box::new(ac6_theorem2),
        ),
        (
            "AC7 dominance over prior ratio bound",
            Box::new(ac7_prior_bound),
        ),
        ("AC8 coupling divergence chain", Box::new(ac8_coupling)),
        ("AC9 exact vs Huffman scaling", Box::new(ac9_scaling)),
    ];
    let mut out = std::io::stdout();
    let mut failed = 0;
    for (name, run) in &criteria {
        let start = Instant::now();
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!o.pass);
        writeln!(
            out,
            "[{tag}] {name} ({:.1?}): {}",
            start.elapsed(),
            o.detail
        )
        .unwrap();
    }
    writeln!(
        out,
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    )
    .unwrap();
    if failed > 0 {
        std::process::exit(1);
    }
}
