//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines are always printed; the
//! process exits non-zero if any criterion fails. Reference numbers from the
//! source tables are pinned below, and derived values come from oracles
//! written here independently of the library's search code.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rademacher_envelope::binomdist::{mid_tail, pmf};
use rademacher_envelope::envelope::{quantile_universal, universal_envelope};
use rademacher_envelope::exactnum::parse_threshold;
use rademacher_envelope::oracle::{enumerate_dist, probe_campaign, random_maximizer_search};
use rademacher_envelope::statbridge::{
    comparison_table, default_grid, figure_data, gaussian_upper_tail, hoeffding_bound, Figure,
};
use rademacher_envelope::{cli, with_threads, Dyadic, Ratio, Threshold, TruncationPolicy, WeightVector};

/// Decimal columns of the comparison table.
const DECIMAL_TOL: f64 = 5e-7;
const RATIO_TOL: f64 = 0.02;
const GAUSSIAN_TOL: f64 = 5e-5;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Outcome,
}

fn t(s: &str) -> Threshold {
    parse_threshold(s).unwrap()
}

fn d(num: u64, exp: u64) -> Dyadic {
    Dyadic::new(num, exp)
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Reference binomial mid-tail: `t² = p/q`, atom `(2j - k)/√k` compared by
/// `(2j - k)² q` vs `p k` with signs, counts summed directly.
fn reference_mid_tail(k: u32, sign: i32, p: &BigInt, q: &BigInt) -> (BigUint, u64) {
    let mut c = BigUint::one();
    let mut twice = BigUint::zero();
    for j in 0..=k {
        let a = BigInt::from(2 * i64::from(j) - i64::from(k));
        let sa = a.signum().to_i32().unwrap();
        let ord = match sa.cmp(&sign) {
            Ordering::Equal if sa == 0 => Ordering::Equal,
            Ordering::Equal => {
                let mag = (&a * &a * q).cmp(&(p * BigInt::from(k)));
                if sa > 0 { mag } else { mag.reverse() }
            }
            o => o,
        };
        match ord {
            Ordering::Greater => twice += &c << 1u32,
            Ordering::Equal => twice += &c,
            Ordering::Less => {}
        }
        c = c * (k - j) / (j + 1);
    }
    (twice, u64::from(k) + 1)
}

fn reference_dyadic(k: u32, thr: &Threshold) -> Dyadic {
    let sq = thr.square();
    let sign = if thr.is_negative() { -1 } else if thr.is_zero() { 0 } else { 1 };
    let (num, exp) = reference_mid_tail(k, sign, sq.numer(), sq.denom());
    Dyadic::new(num, exp)
}

fn table_values() -> Outcome {
    let cases = [
        ("1", 1, d(1, 2)),
        ("1", 2, d(1, 2)),
        ("sqrt(3)", 3, d(1, 4)),
        ("sqrt(3)", 4, d(1, 4)),
        ("2", 4, d(1, 5)),
        ("2", 5, d(1, 5)),
        ("2", 8, d(9, 8)),
    ];
    for (ts, k, want) in &cases {
        let got = mid_tail(*k, &t(ts)).map_err(|e| e.to_string())?;
        check(got == *want, || format!("mid_tail({k}, {ts}) = {got}, expected {want}"))?;
    }
    Ok(format!("{} cells exact", cases.len()))
}

fn comparison_values() -> Outcome {
    // (t, decimal, k*, hoeffding, ratio, gaussian) as printed
    let printed: [(&str, f64, u32, f64, f64, f64); 7] = [
        ("1", 0.250000, 1, 0.6065, 0.41, 0.1587),
        ("3/2", 0.125000, 3, 0.3247, 0.38, 0.0668),
        ("sqrt(3)", 0.062500, 3, 0.2231, 0.28, 0.0416),
        ("2", 0.035156, 8, 0.1353, 0.26, 0.0228),
        ("sqrt(5)", 0.019531, 9, 0.0821, 0.24, 0.0127),
        ("sqrt(6)", 0.011230, 13, 0.0498, 0.23, 0.0072),
        ("3", 0.001860, 28, 0.0111, 0.17, 0.0013),
    ];
    // exact values of the last four rows, as Dyadic(num, exp)
    let dyadic = [(9u64, 8u64), (10, 9), (92, 13), (499178, 28)];
    let ts: Vec<Threshold> = printed.iter().map(|r| t(r.0)).collect();
    let rows = comparison_table(&ts, &TruncationPolicy::default()).map_err(|e| e.to_string())?;
    for (row, want) in rows.iter().zip(&printed) {
        let exact = row.exact().to_f64();
        check((exact - want.1).abs() <= DECIMAL_TOL, || format!("t={}: envelope {exact} vs {}", want.0, want.1))?;
        check(row.k_star() == want.2, || format!("t={}: k* {} vs {}", want.0, row.k_star(), want.2))?;
        check((row.ratio - want.4).abs() <= RATIO_TOL, || format!("t={}: ratio {} vs {}", want.0, row.ratio, want.4))?;
        check((row.gaussian_tail - want.5).abs() <= GAUSSIAN_TOL, || {
            format!("t={}: gaussian {} vs {}", want.0, row.gaussian_tail, want.5)
        })?;
        check((row.hoeffding - want.3).abs() <= GAUSSIAN_TOL, || {
            format!("t={}: hoeffding {} vs {}", want.0, row.hoeffding, want.3)
        })?;
        // independent search: the argmax lies far below k = 200
        let (mut best, mut arg) = (Dyadic::zero(), 0);
        for k in 1..=200 {
            let v = reference_dyadic(k, &row.t);
            if v > best {
                best = v;
                arg = k;
            }
        }
        check(best == *row.exact() && arg == row.k_star(), || {
            format!("t={}: reference search gives {best} at k={arg}, library {} at {}", want.0, row.exact(), row.k_star())
        })?;
    }
    for (row, (num, exp)) in rows[3..].iter().zip(dyadic) {
        check(*row.exact() == Dyadic::new(num, exp), || format!("t={}: {} vs {num}/2^{exp}", row.t, row.exact()))?;
    }
    let capped: Vec<String> = rows.iter().filter(|r| r.envelope.warning().is_some()).map(|r| r.t.to_string()).collect();
    Ok(format!("7 rows; certificate hard_cap_hit (k_cap {}) for {}", TruncationPolicy::default().k_cap, capped.join(", ")))
}

fn quantiles() -> Outcome {
    let policy = TruncationPolicy::default();
    let mut notes = Vec::new();
    for (alpha, want) in [((1, 20), Some("2")), ((1, 40), Some("sqrt(5)")), ((1, 10), None)] {
        let a = Ratio::new(alpha.0, alpha.1).unwrap();
        let q = quantile_universal(&a, &policy).map_err(|e| e.to_string())?;
        check(q.value_at.cmp_ratio(&a) != Ordering::Greater && q.left_limit.cmp_ratio(&a) == Ordering::Greater, || {
            format!("alpha={a}: sandwich fails, value_at {} left_limit {}", q.value_at, q.left_limit)
        })?;
        // the envelope itself at t_star must equal value_at
        let env = universal_envelope(&q.t_star, &policy).map_err(|e| e.to_string())?;
        check(env.value == q.value_at, || format!("alpha={a}: envelope at t_star {} vs {}", env.value, q.value_at))?;
        match want {
            Some(w) => check(q.t_star == t(w), || format!("alpha={a}: t_star {} vs {w}", q.t_star))?,
            None => notes.push(format!(
                "Q(1/10) = {} ~ {:.4} (printed claim 1.85 not reproduced)",
                q.t_star,
                q.t_star.to_f64()
            )),
        }
    }
    Ok(format!("Q(1/20) = 2, Q(1/40) = sqrt(5); {}", notes.join("")))
}

fn oracle_equivalence() -> Outcome {
    for k in 1..=14u32 {
        let dist = enumerate_dist(&WeightVector::from_integers(&vec![1; k as usize]).unwrap()).map_err(|e| e.to_string())?;
        let table = pmf(k).map_err(|e| e.to_string())?;
        check(dist.atoms().len() == table.len(), || format!("k={k}: {} atoms vs {}", dist.atoms().len(), table.len()))?;
        for ((s, p), (v, q)) in dist.atoms().iter().zip(table.entries()) {
            check(*s == Ratio::from_integer(v.a()) && p == q, || format!("k={k}: ({s}, {p}) vs ({v:?}, {q})"))?;
        }
    }
    Ok("k = 1..14 atom for atom".into())
}

fn theorem_property() -> Outcome {
    let mut count = 0;
    for n in 2..=10usize {
        for (i, ts) in ["1", "3/2", "2"].iter().enumerate() {
            let r = random_maximizer_search(n, &t(ts), 200, 1000 + 10 * n as u64 + i as u64).map_err(|e| e.to_string())?;
            check(r.violators.is_empty(), || format!("n={n} t={ts}: violators {:?}", r.violators))?;
            check(r.best_value <= r.envelope.value, || format!("n={n} t={ts}: best {} > {}", r.best_value, r.envelope.value))?;
            count += r.trials;
        }
    }
    Ok(format!("{count} sampled vectors, zero violations"))
}

fn random_threshold(rng: &mut ChaCha8Rng) -> Threshold {
    let s = match rng.gen_range(0..3) {
        // exact lattice atoms a/√k
        0 => {
            let k = rng.gen_range(1..=30u32);
            let m = rng.gen_range(0..=k);
            let a = 2 * i64::from(m) - i64::from(k);
            let sign = if a < 0 { "-" } else { "" };
            format!("{sign}sqrt({}/{k})", a * a)
        }
        1 => format!("{}/{}", rng.gen_range(-60..=60), rng.gen_range(1..=12)),
        _ => format!("{}sqrt({}/{})", if rng.gen() { "-" } else { "" }, rng.gen_range(0..=40), rng.gen_range(1..=7)),
    };
    t(&s)
}

fn symmetry_dominance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let th = random_threshold(&mut rng);
        for k in 1..=30 {
            let a = mid_tail(k, &th).unwrap();
            let b = mid_tail(k, &th.neg()).unwrap();
            check(a.add(&b) == Dyadic::one(), || format!("k={k} t={th}: {a} + {b} != 1"))?;
        }
    }
    let policy = TruncationPolicy::default();
    for i in 1..=50 {
        let th = Threshold::from_ratio(&Ratio::new(4 * i, 50).unwrap());
        let env = universal_envelope(&th, &policy).map_err(|e| e.to_string())?;
        let h = hoeffding_bound(th.to_f64());
        check(env.value.to_f64() <= h, || format!("t={th}: envelope {} > {h}", env.value))?;
    }
    Ok("3000 symmetric pairs exact; 50 grid points below exp(-t^2/2)".into())
}

fn equalisation_probe_campaign() -> Outcome {
    let r = probe_campaign(2, 8, 500, 7).map_err(|e| e.to_string())?;
    let summary = format!(
        "{} of 500 without a raising pair in the reference direction; {} in either direction; bias fails on {}",
        r.verdict_failures.len(),
        r.either_direction_failures.len(),
        r.bias_failures.len()
    );
    if !r.verdict_failures.is_empty() {
        let dump: Vec<String> = r.verdict_failures.iter().map(ToString::to_string).collect();
        return Err(format!("{summary}; instances: {}", dump.join("; ")));
    }
    Ok(summary)
}

fn run_cli(args: &[&str]) -> Vec<u8> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(std::iter::once("radenv").chain(args.iter().copied()), &mut out, &mut err);
    out.extend(format!("exit {code}").bytes());
    out
}

fn determinism() -> Outcome {
    let policy = TruncationPolicy::default();
    let w = WeightVector::parse("1,2,3,5,8,13,21,34,55,89,144,233,377,610,987,1597").unwrap();
    let run = |threads: usize| {
        with_threads(threads, || {
            let envs: Vec<_> = default_grid().iter().map(|th| universal_envelope(th, &policy).unwrap()).collect();
            let q = quantile_universal(&Ratio::new(1, 40).unwrap(), &policy).unwrap();
            let dist = enumerate_dist(&w).unwrap();
            (envs, q, dist)
        })
    };
    let base = run(1);
    for threads in [2, 8] {
        check(run(threads) == base, || format!("library results differ at {threads} threads"))?;
    }
    for args in [vec!["compare"], vec!["oracle", "--weights", "1,2,3,5,8,13,21,34,55,89,144,233", "--t", "3/2"]] {
        let outputs: Vec<Vec<u8>> = ["1", "2", "8"]
            .iter()
            .map(|n| {
                let mut a = vec!["--threads", n];
                a.extend(&args);
                run_cli(&a)
            })
            .collect();
        check(outputs.windows(2).all(|p| p[0] == p[1]), || format!("`{}` output depends on threads", args.join(" ")))?;
    }
    Ok("library and CLI output identical for 1, 2, 8 threads".into())
}

/// Rounds `x` to the number of decimals shown in `shown` and compares text.
fn matches_shown(x: f64, shown: &str) -> bool {
    let digits = shown.split('.').nth(1).map_or(0, str::len);
    format!("{x:.digits$}") == shown
}

fn figures() -> Outcome {
    let xs = ["1.0", "1.5", "1.732", "2.0", "2.236", "2.449", "3.0"];
    let envelope = ["0.25", "0.125", "0.0625", "0.03515625", "0.01953125", "0.01123046875", "0.00185958296"];
    let ratio = ["0.41", "0.39", "0.28", "0.26", "0.24", "0.23", "0.17"];
    let kstar = ["1", "3", "3", "8", "9", "13", "28"];
    let policy = TruncationPolicy::default();
    for (which, ys) in [(Figure::Envelope, envelope), (Figure::Ratio, ratio), (Figure::Kstar, kstar)] {
        let points = figure_data(which, &policy).map_err(|e| e.to_string())?;
        check(points.len() == xs.len(), || format!("{which}: {} points", points.len()))?;
        for ((p, x), y) in points.iter().zip(xs).zip(ys) {
            check(matches_shown(p.t.to_f64(), x), || format!("{which}: abscissa {} vs {x}", p.t))?;
            let shown: f64 = p.y_display(which).parse().unwrap();
            check(matches_shown(shown, y), || format!("{which} at {x}: {} vs {y}", p.y_display(which)))?;
        }
    }
    // the printed grid values also satisfy the ordering Gaussian < envelope < Hoeffding
    for th in default_grid() {
        let e = universal_envelope(&th, &policy).unwrap().value.to_f64();
        let x = th.to_f64();
        check(gaussian_upper_tail(x) < e && e < hoeffding_bound(x), || format!("t={th}: ordering fails"))?;
    }
    Ok("21 points at displayed precision".into())
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "equal-weight mid-tail cells", budget: Some(Duration::from_secs(1)), run: table_values },
        Criterion { id: 2, name: "comparison table", budget: Some(Duration::from_secs(5)), run: comparison_values },
        Criterion { id: 3, name: "envelope quantiles", budget: None, run: quantiles },
        Criterion { id: 4, name: "oracle equivalence", budget: Some(Duration::from_secs(10)), run: oracle_equivalence },
        Criterion { id: 5, name: "equal weights dominate", budget: Some(Duration::from_secs(60)), run: theorem_property },
        Criterion { id: 6, name: "symmetry and dominance", budget: None, run: symmetry_dominance },
        Criterion { id: 7, name: "equalisation probe", budget: Some(Duration::from_secs(30)), run: equalisation_probe_campaign },
        Criterion { id: 8, name: "determinism", budget: None, run: determinism },
        Criterion { id: 9, name: "figure data", budget: None, run: figures },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.budget) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!("took {elapsed:.2?}, budget {b:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(msg) => println!("PASS criterion {} ({}) [{elapsed:.2?}]: {msg}", c.id, c.name),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {} ({}) [{elapsed:.2?}]: {msg}", c.id, c.name);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
