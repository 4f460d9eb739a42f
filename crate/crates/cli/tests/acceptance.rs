//! End-to-end acceptance run. One line per criterion:
//!
//! ```text
//! cargo test -p stray-cli --test acceptance -- --nocapture
//! ```

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stray::text::{encode, Symbol, Text};
use stray::tray::SuffixTray;
use stray::trist::SuffixTrist;
use stray_cli::bench::{self, BenchConfig, BenchRow};
use stray_cli::index_file::IndexFile;
use stray_cli::input::Mode;
use stray_cli::report::query_index;
use stray_oracle as oracle;

const SEED: u64 = 20240611;

// criterion 1
const STATIC_SIGMAS: [u64; 4] = [2, 4, 16, 64];
const STATIC_CASES: usize = 1000;
const STATIC_MAX_N: usize = 2000;
const STATIC_BUDGET: Duration = Duration::from_secs(60);
// criterion 2
const SA_TEXTS: usize = 500;
const SA_BUDGET: Duration = Duration::from_secs(60);
// criterion 4
const SEP_SIGMA: usize = 16;
const SEP_M: usize = 32;
const SEP_NS: [usize; 5] = [1 << 10, 1 << 12, 1 << 14, 1 << 16, 1 << 18];
const SEP_QUERIES: usize = 200;
const SEP_SLACK: f64 = 16.0;
const SEP_MAX_SPREAD: f64 = 0.25;
const SEP_BUDGET: Duration = Duration::from_secs(300);
// criterion 5
const ONLINE_TEXTS: usize = 50;
const ONLINE_MAX_N: usize = 5000;
const ONLINE_SIGMAS: [u64; 3] = [3, 8, 32];
const ONLINE_CHECK_EVERY: usize = 250;
const ONLINE_QUERIES: usize = 200;
const ONLINE_BUDGET: Duration = Duration::from_secs(300);
// criterion 7
const OM_EXHAUSTIVE_N: usize = 500;
const OM_SAMPLED_PAIRS: usize = 10_000;

/// Running tally for criterion 3, fed by every tray built anywhere.
#[derive(Default)]
struct LemmaTally {
    trays: usize,
    violations: Vec<String>,
}

impl LemmaTally {
    fn record(&mut self, tray: &SuffixTray) {
        self.trays += 1;
        // equals max(sigma, 1) unless a trist fixed a larger threshold
        let sigma = tray.threshold();
        let leaves = tray.text_len() + 1;
        let s = tray.stats();
        if s.sigma_branching > leaves / sigma {
            self.violations.push(format!(
                "n={} sigma={sigma}: {} branching > {}",
                tray.text_len(),
                s.sigma_branching,
                leaves / sigma
            ));
        }
        if let Some(big) = tray.intervals().iter().find(|r| r.len() > sigma * sigma) {
            self.violations.push(format!(
                "n={} sigma={sigma}: interval of {} suffixes",
                tray.text_len(),
                big.len()
            ));
        }
    }
}

type Outcome = Result<String, String>;

fn guarded(f: impl FnOnce() -> Outcome) -> Outcome {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(r) => r,
        Err(p) => Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panicked".into())),
    }
}

fn within(budget: Duration, started: Instant) -> Result<(), String> {
    let took = started.elapsed();
    if took > budget {
        Err(format!("took {took:.1?}, budget {budget:?}"))
    } else {
        Ok(())
    }
}

fn random_raw(rng: &mut ChaCha8Rng, n: usize, sigma: u64) -> Vec<u64> {
    (0..n).map(|_| rng.gen_range(1..=sigma)).collect()
}

/// Half substrings of the text, half random words, lengths 0..=8.
fn random_pattern(rng: &mut ChaCha8Rng, text: &[u64], sigma: u64) -> Vec<u64> {
    let len = rng.gen_range(0..=8usize);
    if rng.gen_bool(0.5) && len <= text.len() {
        let at = rng.gen_range(0..=text.len() - len);
        text[at..at + len].to_vec()
    } else {
        // one symbol past the alphabet exercises the unknown-symbol path
        (0..len).map(|_| rng.gen_range(1..=sigma + 1)).collect()
    }
}

fn naive_raw(text: &[u64], pattern: &[u64]) -> Vec<usize> {
    let narrow = |v: &[u64]| v.iter().map(|&x| x as u32).collect::<Vec<_>>();
    oracle::naive_find_all(&narrow(text), &narrow(pattern))
}

fn static_equivalence(tally: &mut LemmaTally) -> Outcome {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut cases = 0;
    for sigma in STATIC_SIGMAS {
        for case in 0..STATIC_CASES {
            let n = rng.gen_range(0..=STATIC_MAX_N);
            let raw = random_raw(&mut rng, n, sigma);
            let (alphabet, text) = encode(&raw).map_err(|e| e.to_string())?;
            let tray = SuffixTray::build(&text, &alphabet);
            tally.record(&tray);
            let p = random_pattern(&mut rng, &raw, sigma);
            let want = naive_raw(&raw, &p);
            let (exists, first, all) = match alphabet.encode_pattern(&p) {
                Some(ranks) => (
                    tray.count(&ranks) > 0,
                    tray.first_occurrence(&ranks),
                    tray.occurrences(&ranks),
                ),
                None => (false, None, Vec::new()),
            };
            if exists != !want.is_empty() || first != want.first().copied() || all != want {
                return Err(format!("sigma={sigma} case {case}: pattern {p:?} on n={n}"));
            }
            cases += 1;
        }
    }
    within(STATIC_BUDGET, started)?;
    Ok(format!("{cases} cases in {:.1?}", started.elapsed()))
}

fn sa_lcp_rmq(tally: &mut LemmaTally) -> Outcome {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    for t in 0..SA_TEXTS {
        let n = rng.gen_range(0..=STATIC_MAX_N);
        let sigma = [1u64, 2, 4, 16, 64][t % 5];
        let raw = random_raw(&mut rng, n, sigma);
        let (alphabet, text) = encode(&raw).map_err(|e| e.to_string())?;
        let tray = SuffixTray::build(&text, &alphabet);
        tally.record(&tray);
        let idx = tray.index();
        let ranks = text.ranks();
        let order = oracle::naive_sort_suffixes(&ranks);
        let got: Vec<usize> = idx.sa().iter().map(|&s| s as usize + 1).collect();
        if got != order {
            return Err(format!("text {t}: suffix array differs"));
        }
        let lcp = oracle::naive_lcp(&ranks, &order);
        if idx
            .lcp()
            .iter()
            .map(|&l| l as usize)
            .ne(lcp.iter().copied())
        {
            return Err(format!("text {t}: lcp differs"));
        }
        for _ in 0..50 {
            if order.len() < 2 {
                break;
            }
            let a = rng.gen_range(0..order.len() - 1);
            let b = rng.gen_range(a + 1..order.len());
            let want = *lcp[a + 1..=b].iter().min().unwrap();
            if idx.lcp_between(a, b) != want {
                return Err(format!("text {t}: range minimum ({a}, {b}) differs"));
            }
        }
    }
    within(SA_BUDGET, started)?;
    Ok(format!("{SA_TEXTS} texts in {:.1?}", started.elapsed()))
}

fn lemma_bounds(tally: &LemmaTally) -> Outcome {
    match tally.violations.first() {
        None if tally.trays > 0 => Ok(format!("{} trays, 0 violations", tally.trays)),
        None => Err("no trays were checked".into()),
        Some(v) => Err(format!("{} violations, first: {v}", tally.violations.len())),
    }
}

fn cost_separation() -> Outcome {
    let started = Instant::now();
    let rows = bench::run(&BenchConfig {
        ns: SEP_NS.to_vec(),
        sigmas: vec![SEP_SIGMA],
        m: SEP_M,
        queries: SEP_QUERIES,
        seed: SEED,
    })
    .map_err(|e| e.to_string())?;
    let means = |s: &str| -> Vec<f64> {
        rows.iter()
            .filter(|r: &&BenchRow| r.structure == s)
            .map(|r| r.mean)
            .collect()
    };
    let tray = means("tray-query");
    let array = means("array-interval-search");
    let bound = SEP_M as f64 + 4.0 * (SEP_SIGMA as f64).log2() + SEP_SLACK;
    if let Some((i, m)) = tray.iter().enumerate().find(|(_, &m)| m > bound) {
        return Err(format!("tray mean {m:.2} > {bound} at n={}", SEP_NS[i]));
    }
    let (lo, hi) = tray
        .iter()
        .fold((f64::MAX, f64::MIN), |(a, b), &x| (a.min(x), b.max(x)));
    let spread = (hi - lo) / lo;
    if spread >= SEP_MAX_SPREAD {
        return Err(format!(
            "tray mean varies by {:.1}% across n",
            spread * 100.0
        ));
    }
    if !array.windows(2).all(|w| w[1] > w[0]) {
        return Err(format!("array means not strictly increasing: {array:?}"));
    }
    within(SEP_BUDGET, started)?;
    let fmt = |v: &[f64]| {
        v.iter()
            .map(|x| format!("{x:.1}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    Ok(format!(
        "tray [{}] <= {bound}, spread {:.1}%; array [{}]",
        fmt(&tray),
        spread * 100.0,
        fmt(&array)
    ))
}

/// Static tray over the trist's own ranks and threshold.
fn static_twin(t: &SuffixTrist) -> SuffixTray {
    let ranks = t.text().ranks();
    SuffixTray::build_with_threshold(
        &Text::from_ranks(&ranks),
        t.alphabet().sigma(),
        t.threshold(),
    )
}

struct Replays {
    checks_run: u64,
    promotions: u64,
}

fn online_equivalence(tally: &mut LemmaTally, replays: &mut Replays) -> Outcome {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let mut checkpoints = 0;
    for t in 0..ONLINE_TEXTS {
        let sigma = ONLINE_SIGMAS[t % ONLINE_SIGMAS.len()];
        let n = rng.gen_range(1..=ONLINE_MAX_N);
        let raw = random_raw(&mut rng, n, sigma);
        let mut trist = SuffixTrist::new(sigma as usize, true);
        for (step, &r) in raw.iter().rev().enumerate() {
            trist.extend(r).map_err(|e| e.to_string())?;
            if (step + 1) % ONLINE_CHECK_EVERY == 0 || step + 1 == n {
                trist
                    .check_equivalence()
                    .map_err(|e| format!("text {t} (sigma={sigma}) step {}: {e}", step + 1))?;
                checkpoints += 1;
            }
        }
        tally.record(&static_twin(&trist));
        for q in 0..ONLINE_QUERIES {
            let p = random_pattern(&mut rng, &raw, sigma);
            if trist.query_raw(&p).positions != naive_raw(&raw, &p) {
                return Err(format!("text {t}: query {q} {p:?} differs from naive scan"));
            }
        }
        let s = trist.stats();
        replays.checks_run += s.checks_run;
        replays.promotions += s.promotions;
    }
    within(ONLINE_BUDGET, started)?;
    Ok(format!(
        "{ONLINE_TEXTS} replays, {checkpoints} checkpoints, {} queries in {:.1?}",
        ONLINE_TEXTS * ONLINE_QUERIES,
        started.elapsed()
    ))
}

fn de_bruijn_like(k: u64, order: usize) -> Vec<u64> {
    // greedy "prefer largest" walk; each length-`order` word appears once
    let mut seen = std::collections::HashSet::new();
    let mut s = vec![1u64; order];
    seen.insert(s.clone());
    loop {
        let tail = s[s.len() - (order - 1)..].to_vec();
        let next = (1..=k).rev().find(|&c| {
            let mut w = tail.clone();
            w.push(c);
            !seen.contains(&w)
        });
        match next {
            Some(c) => {
                let mut w = tail;
                w.push(c);
                seen.insert(w);
                s.push(c);
            }
            None => return s,
        }
    }
}

fn staged_work(tally: &mut LemmaTally, replays: &Replays) -> Outcome {
    let mut texts: Vec<(&str, Vec<u64>)> = vec![
        ("a^n", vec![1; 3000]),
        ("abab", (0..3000).map(|i| i % 2 + 1).collect()),
        ("abcabc", (0..3000).map(|i| i % 3 + 1).collect()),
        ("de-bruijn-3", de_bruijn_like(3, 4).repeat(30)),
        ("de-bruijn-8", de_bruijn_like(8, 3).repeat(4)),
    ];
    texts.push((
        "abba-ladder",
        (0..3000u64)
            .map(|i| if (i / 7) % 2 == 0 { 1 } else { 2 + i % 3 })
            .collect(),
    ));
    let mut checks = replays.checks_run;
    let mut promotions = replays.promotions;
    for (name, raw) in &texts {
        for hint in [2usize, 3, 4, 8] {
            let mut trist = SuffixTrist::new(hint, true);
            for (step, &r) in raw.iter().rev().enumerate() {
                trist.extend(r).map_err(|e| e.to_string())?;
                if (step + 1) % ONLINE_CHECK_EVERY == 0 {
                    trist
                        .check_equivalence()
                        .map_err(|e| format!("{name} hint {hint}: {e}"))?;
                }
            }
            trist
                .check_equivalence()
                .map_err(|e| format!("{name} hint {hint}: {e}"))?;
            tally.record(&static_twin(&trist));
            let s = trist.stats();
            checks += s.checks_run;
            promotions += s.promotions;
        }
    }
    if checks == 0 || promotions == 0 {
        return Err("replays never exercised the instrumented paths".into());
    }
    Ok(format!(
        "{checks} runtime assertions held over {promotions} promotions"
    ))
}

fn order_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let mut pairs = 0u64;
    let small: Vec<(Vec<u64>, usize)> = vec![
        (random_raw(&mut rng, OM_EXHAUSTIVE_N, 2), 2),
        (random_raw(&mut rng, OM_EXHAUSTIVE_N, 4), 4),
        (random_raw(&mut rng, OM_EXHAUSTIVE_N, 26), 8),
        ((0..OM_EXHAUSTIVE_N as u64).map(|i| i % 2 + 1).collect(), 2),
    ];
    for (t, (raw, hint)) in small.iter().enumerate() {
        let mut trist = SuffixTrist::new(*hint, false);
        for &r in raw.iter().rev() {
            trist.extend(r).map_err(|e| e.to_string())?;
            let ranks = trist.text().ranks();
            let order = oracle::naive_sort_suffixes(&ranks);
            let mut rank_of = vec![0; order.len() + 1];
            for (k, &p) in order.iter().enumerate() {
                rank_of[p] = k;
            }
            for a in 1..=order.len() {
                for b in 1..=order.len() {
                    if trist.compare_suffixes(a, b) != rank_of[a].cmp(&rank_of[b]) {
                        return Err(format!(
                            "replay {t}, n={}: positions {a} and {b}",
                            ranks.len()
                        ));
                    }
                    pairs += 1;
                }
            }
        }
    }
    let large = [(20_000usize, 2u64, 2usize), (20_000, 16, 16), (8_000, 1, 2)];
    for (t, &(n, sigma, hint)) in large.iter().enumerate() {
        let raw = random_raw(&mut rng, n, sigma);
        let mut trist = SuffixTrist::new(hint, false);
        for &r in raw.iter().rev() {
            trist.extend(r).map_err(|e| e.to_string())?;
        }
        let ranks: Vec<Symbol> = trist.text().ranks();
        for _ in 0..OM_SAMPLED_PAIRS {
            let a = rng.gen_range(1..=n + 1);
            let b = rng.gen_range(1..=n + 1);
            if trist.compare_suffixes(a, b) != oracle::naive_compare(&ranks, a, b) {
                return Err(format!("large replay {t}: positions {a} and {b}"));
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs agree"))
}

fn cli_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_stray");
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let script = std::fs::read(data.join("banana_stream.in")).map_err(|e| e.to_string())?;
    let golden = std::fs::read(data.join("banana_stream.golden")).map_err(|e| e.to_string())?;
    let mut child = Command::new(bin)
        .args(["stream", "--all", "--check"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .map_err(|e| e.to_string())?;
    std::io::Write::write_all(&mut child.stdin.take().unwrap(), &script)
        .map_err(|e| e.to_string())?;
    let out = child.wait_with_output().map_err(|e| e.to_string())?;
    if out.stdout != golden {
        return Err("stream transcript differs from golden".into());
    }

    let args = [
        "bench",
        "--n",
        "1000,4000",
        "--sigma",
        "4,16",
        "--m",
        "8",
        "--queries",
        "100",
        "--seed",
        "42",
    ];
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|_| Command::new(bin).args(args).output().map(|o| o.stdout))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    if runs[0] != runs[1] || runs[0].is_empty() {
        return Err("bench reruns differ".into());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let raw = random_raw(&mut rng, 3000, 6);
    let (alphabet, text) = encode(&raw).map_err(|e| e.to_string())?;
    let built = IndexFile::build(Mode::Byte, alphabet, text);
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("r.idx");
    built
        .save(std::fs::File::create(&path).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let loaded = stray_cli::load_index(&path).map_err(|e| e.to_string())?;
    for q in 0..100 {
        let p = random_pattern(&mut rng, &raw, 6);
        for all in [false, true] {
            if query_index(&loaded, &p, all) != query_index(&built, &p, all) {
                return Err(format!("round-trip query {q} differs"));
            }
        }
    }
    Ok("golden transcript, bench rerun and 100 round-trip queries identical".into())
}

#[test]
fn acceptance() {
    let mut tally = LemmaTally::default();
    let mut replays = Replays {
        checks_run: 0,
        promotions: 0,
    };
    let mut results: Vec<(u32, &str, Outcome)> = vec![
        (
            1,
            "static oracle equivalence",
            guarded(|| static_equivalence(&mut tally)),
        ),
        (
            2,
            "SA/LCP/RMQ correctness",
            guarded(|| sa_lcp_rmq(&mut tally)),
        ),
        (4, "query-cost separation", guarded(cost_separation)),
        (
            5,
            "online/offline equivalence",
            guarded(|| online_equivalence(&mut tally, &mut replays)),
        ),
        (
            6,
            "staged-work assertions",
            guarded(|| staged_work(&mut tally, &replays)),
        ),
        (7, "order-maintenance soundness", guarded(order_soundness)),
        (8, "CLI determinism", guarded(cli_determinism)),
        (3, "lemma bounds", guarded(|| lemma_bounds(&tally))),
    ];
    results.sort_by_key(|r| r.0);

    let mut failed = 0;
    for (k, name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS criterion {k} ({name}): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {k} ({name}): {why}");
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
