//! Commands behind the `stray` binary.

pub mod bench;
pub mod index_file;
pub mod input;
pub mod report;
pub mod stream;

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use anyhow::Context;
use stray::text::encode;

use index_file::IndexFile;
use input::Mode;
use report::{query_index, tray_stats_line, QueryFlags};

pub fn load_index(path: &Path) -> anyhow::Result<IndexFile> {
    let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    IndexFile::load(BufReader::new(f)).with_context(|| format!("loading {}", path.display()))
}

pub fn stats_report(index: &IndexFile) -> String {
    tray_stats_line(
        index.text.len(),
        index.alphabet.sigma(),
        &index.tray.stats(),
    )
}

pub fn cmd_build(
    input: &Path,
    output: &Path,
    mode: Mode,
    out: &mut impl Write,
) -> anyhow::Result<()> {
    let bytes = std::fs::read(input).with_context(|| format!("reading {}", input.display()))?;
    let raw = mode
        .parse_text(&bytes)
        .with_context(|| format!("parsing {}", input.display()))?;
    let (alphabet, text) = encode(&raw)?;
    let index = IndexFile::build(mode, alphabet, text);
    let f = File::create(output).with_context(|| format!("creating {}", output.display()))?;
    index.save(BufWriter::new(f))?;
    writeln!(out, "{}", stats_report(&index))?;
    Ok(())
}

/// Prints the answer; `Ok(false)` means no match.
pub fn cmd_query(
    index: &Path,
    pattern: &str,
    flags: QueryFlags,
    out: &mut impl Write,
) -> anyhow::Result<bool> {
    let index = load_index(index)?;
    let raw = index
        .mode
        .parse_pattern(pattern)
        .context("parsing pattern")?;
    let answer = query_index(&index, &raw, flags.all);
    writeln!(out, "{}", answer.render(flags))?;
    Ok(answer.found())
}

pub fn cmd_stats(index: &Path, out: &mut impl Write) -> anyhow::Result<()> {
    let index = load_index(index)?;
    writeln!(out, "{}", stats_report(&index))?;
    Ok(())
}
