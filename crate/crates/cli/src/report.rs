//! Query answers and stats lines, shared by `query` and `stream`.

use std::fmt::Write;

use stray::tray::{SuffixTray, TrayStats};
use stray::trist::{SuffixTrist, TristStats};

use crate::index_file::IndexFile;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Answer {
    /// front positions (never the position past the end), ascending
    pub positions: Vec<usize>,
    pub comparisons: u64,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct QueryFlags {
    pub all: bool,
    pub count_comparisons: bool,
}

impl Answer {
    pub fn found(&self) -> bool {
        !self.positions.is_empty()
    }

    pub fn render(&self, flags: QueryFlags) -> String {
        let mut out = match self.positions.first() {
            None => "NOMATCH".to_string(),
            Some(first) if !flags.all => first.to_string(),
            Some(_) => self
                .positions
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        };
        if flags.count_comparisons {
            write!(out, " comparisons={}", self.comparisons).unwrap();
        }
        out
    }
}

pub fn query_index(index: &IndexFile, raw: &[u64], all: bool) -> Answer {
    let n = index.text.len();
    let Some(pattern) = index.alphabet.encode_pattern(raw) else {
        return Answer {
            positions: Vec::new(),
            comparisons: 0,
        };
    };
    let tray: &SuffixTray = &index.tray;
    let m = tray.query(&pattern);
    let positions = match m.range {
        None => Vec::new(),
        Some(_) if all => tray
            .occurrences(&pattern)
            .into_iter()
            .filter(|&p| p <= n)
            .collect(),
        Some(r) => {
            let p = tray.index().leftmost_start(r) + 1;
            if p <= n {
                vec![p]
            } else {
                Vec::new()
            }
        }
    };
    Answer {
        positions,
        comparisons: m.comparisons,
    }
}

pub fn query_trist(trist: &SuffixTrist, raw: &[u64]) -> Answer {
    let n = trist.len();
    let m = trist.query_raw(raw);
    Answer {
        positions: m.positions.into_iter().filter(|&p| p <= n).collect(),
        comparisons: m.comparisons,
    }
}

pub fn tray_stats_line(n: usize, sigma: usize, s: &TrayStats) -> String {
    format!(
        "n={n} sigma={sigma} nodes={} not_sigma={} sigma_leaf={} sigma_nonbranching={} sigma_branching={} intervals={} max_interval={}",
        s.nodes, s.not_sigma, s.sigma_leaf, s.sigma_nonbranching, s.sigma_branching, s.intervals, s.max_interval
    )
}

pub fn trist_stats_line(sigma: usize, s: &TristStats) -> String {
    format!(
        "n={} sigma={sigma} threshold={} nodes={} not_sigma={} sigma_leaf={} sigma_nonbranching={} sigma_branching={} incomplete_arrays={} pending_staging={} promotions={}",
        s.n,
        s.threshold,
        s.nodes,
        s.not_sigma,
        s.sigma_leaf,
        s.sigma_nonbranching,
        s.sigma_branching,
        s.incomplete_arrays,
        s.pending_staging,
        s.promotions
    )
}
