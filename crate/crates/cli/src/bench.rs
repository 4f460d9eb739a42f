//! Comparison-count benchmark over random texts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stray::text::encode;
use stray::tray::SuffixTray;
use stray::trist::SuffixTrist;

pub const HEADER: &str = "structure,n,sigma,m,mean_comparisons,p99_comparisons";

pub const STRUCTURES: [&str; 4] = [
    "tree-navigate",
    "array-interval-search",
    "tray-query",
    "trist-query",
];

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub ns: Vec<usize>,
    pub sigmas: Vec<usize>,
    pub m: usize,
    pub queries: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub structure: &'static str,
    pub n: usize,
    pub sigma: usize,
    pub m: usize,
    pub mean: f64,
    pub p99: u64,
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("pattern length {m} exceeds text length {n}")]
    PatternTooLong { m: usize, n: usize },
    #[error("sigma must be at least 1")]
    EmptyAlphabet,
    #[error("at least one query is required")]
    NoQueries,
    #[error(transparent)]
    Text(#[from] stray::Error),
    #[error(
        "{structure} disagrees with the suffix array on pattern {index} (n={n}, sigma={sigma})"
    )]
    Mismatch {
        structure: &'static str,
        index: usize,
        n: usize,
        sigma: usize,
    },
}

impl BenchRow {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{:.3},{}",
            self.structure, self.n, self.sigma, self.m, self.mean, self.p99
        )
    }
}

pub fn render_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv());
        out.push('\n');
    }
    out
}

pub fn run(cfg: &BenchConfig) -> Result<Vec<BenchRow>, BenchError> {
    if cfg.queries == 0 {
        return Err(BenchError::NoQueries);
    }
    let mut rows = Vec::new();
    for &sigma in &cfg.sigmas {
        for &n in &cfg.ns {
            rows.extend(run_one(cfg, n, sigma)?);
        }
    }
    Ok(rows)
}

fn run_one(cfg: &BenchConfig, n: usize, sigma: usize) -> Result<Vec<BenchRow>, BenchError> {
    let m = cfg.m;
    if sigma == 0 {
        return Err(BenchError::EmptyAlphabet);
    }
    if m > n {
        return Err(BenchError::PatternTooLong { m, n });
    }
    // each (n, sigma) cell gets its own stream so adding cells never shifts others
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (n as u64).rotate_left(32) ^ sigma as u64);
    let raw: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=sigma as u64)).collect();
    let (alphabet, text) = encode(&raw)?;
    let tray = SuffixTray::build(&text, &alphabet);
    let mut trist = SuffixTrist::new(sigma, false);
    for &r in raw.iter().rev() {
        trist.extend(r)?;
    }
    let fwd = tray.forward();
    let idx = tray.index();

    let mut costs: [Vec<u64>; 4] = Default::default();
    for q in 0..cfg.queries {
        let at = rng.gen_range(0..=n - m);
        let raw_p = &raw[at..at + m];
        let p = alphabet
            .encode_pattern(raw_p)
            .expect("substring of the text");
        let array = idx.interval_search(fwd, &p, idx.full(), 0);
        let want = array.range.map_or(0, |r| r.len());
        let nav = tray.tree().navigate(fwd, &p);
        let tq = tray.query(&p);
        let sq = trist.query_raw(raw_p);
        let mismatch = |structure| BenchError::Mismatch {
            structure,
            index: q,
            n,
            sigma,
        };
        if nav.locus.map(|l| tray.tree().locus_interval(l)) != array.range {
            return Err(mismatch(STRUCTURES[0]));
        }
        if tq.range != array.range {
            return Err(mismatch(STRUCTURES[2]));
        }
        if sq.count() != want {
            return Err(mismatch(STRUCTURES[3]));
        }
        costs[0].push(nav.comparisons);
        costs[1].push(array.comparisons);
        costs[2].push(tq.comparisons);
        costs[3].push(sq.comparisons);
    }
    Ok(STRUCTURES
        .iter()
        .zip(costs)
        .map(|(&structure, c)| {
            let (mean, p99) = summarize(c);
            BenchRow {
                structure,
                n,
                sigma,
                m,
                mean,
                p99,
            }
        })
        .collect())
}

/// Mean and nearest-rank 99th percentile.
fn summarize(mut c: Vec<u64>) -> (f64, u64) {
    c.sort_unstable();
    let mean = c.iter().sum::<u64>() as f64 / c.len() as f64;
    let rank = (c.len() * 99).div_ceil(100).max(1);
    (mean, c[rank - 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn percentile() {
        assert_eq!(summarize(vec![5]), (5.0, 5));
        let v: Vec<u64> = (1..=200).collect();
        assert_eq!(summarize(v).1, 198);
    }

    #[test]
    fn small_run_is_deterministic() {
        let cfg = BenchConfig {
            ns: vec![64, 128],
            sigmas: vec![2, 5],
            m: 4,
            queries: 20,
            seed: 3,
        };
        let a = render_csv(&run(&cfg).unwrap());
        let b = render_csv(&run(&cfg).unwrap());
        assert_eq!(a, b);
        assert_eq!(a.lines().count(), 1 + 4 * 4);
        assert!(a.starts_with(HEADER));
    }

    #[test]
    fn rejects_long_patterns() {
        let cfg = BenchConfig {
            ns: vec![3],
            sigmas: vec![2],
            m: 4,
            queries: 1,
            seed: 0,
        };
        assert!(matches!(run(&cfg), Err(BenchError::PatternTooLong { .. })));
    }
}
