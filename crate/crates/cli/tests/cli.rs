use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stray::text::encode;
use stray_cli::index_file::IndexFile;
use stray_cli::input::Mode;
use stray_cli::report::query_index;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn stray(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_stray"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or_default()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn build(dir: &Path, input: &Path, extra: &[&str]) -> PathBuf {
    let idx = dir.join("x.idx");
    let mut args = vec![
        "build",
        "--input",
        input.to_str().unwrap(),
        "--output",
        idx.to_str().unwrap(),
    ];
    args.extend(extra);
    let o = stray(&args, None);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    idx
}

#[test]
fn banana_build_and_query() {
    let dir = tempfile::tempdir().unwrap();
    let idx_path = dir.path().join("b.idx");
    let idx = idx_path.to_str().unwrap();
    let o = stray(
        &[
            "build",
            "--input",
            data("banana.txt").to_str().unwrap(),
            "--output",
            idx,
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    let report = stdout(&o);
    for want in [
        "n=6 ",
        "sigma=3 ",
        "sigma_branching=0",
        "sigma_nonbranching=1 ",
        "sigma_leaf=1 ",
    ] {
        assert!(report.contains(want), "{report}");
    }
    assert_eq!(stdout(&stray(&["stats", "--index", idx], None)), report);

    let q = |p: &str, extra: &[&str]| {
        let mut args = vec!["query", "--index", idx, "--pattern", p];
        args.extend(extra);
        stray(&args, None)
    };
    assert_eq!(stdout(&q("ana", &[])), "2\n");
    assert_eq!(stdout(&q("ana", &["--all"])), "2 4\n");
    let miss = q("nab", &[]);
    assert_eq!(stdout(&miss), "NOMATCH\n");
    assert_eq!(miss.status.code(), Some(1));
    assert_eq!(q("z", &[]).status.code(), Some(1));
    assert_eq!(stdout(&q("", &[])), "1\n");
    assert_eq!(stdout(&q("", &["--all"])), "1 2 3 4 5 6\n");
    let counted = stdout(&q("ana", &["--count-comparisons"]));
    assert!(counted.starts_with("2 comparisons="), "{counted}");
}

#[test]
fn empty_input_gives_valid_index() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("empty.txt");
    std::fs::write(&input, b"").unwrap();
    let idx = build(dir.path(), &input, &[]);
    let s = stdout(&stray(&["stats", "--index", idx.to_str().unwrap()], None));
    assert!(s.starts_with("n=0 sigma=0 "), "{s}");
    let o = stray(
        &["query", "--index", idx.to_str().unwrap(), "--pattern", "a"],
        None,
    );
    assert_eq!(
        (stdout(&o).as_str(), o.status.code()),
        ("NOMATCH\n", Some(1))
    );
}

#[test]
fn token_mode() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("t.txt");
    std::fs::write(&input, b"300 5 300 5\n7").unwrap();
    let idx = build(dir.path(), &input, &["--token"]);
    let idx = idx.to_str().unwrap();
    let o = stray(
        &["query", "--index", idx, "--pattern", "300 5", "--all"],
        None,
    );
    assert_eq!(stdout(&o), "1 3\n");
    let o = stray(&["query", "--index", idx, "--pattern", "abc"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_files_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let idx = build(dir.path(), &data("banana.txt"), &[]);
    let good = std::fs::read(&idx).unwrap();
    let cases: Vec<(&str, Vec<u8>)> = vec![
        ("magic", b"STRAY2junk".to_vec()),
        ("truncated", good[..good.len() - 3].to_vec()),
        ("trailing", [good.clone(), vec![0]].concat()),
        ("unsorted", {
            // swap the last two suffix array entries
            let mut b = good.clone();
            let k = b.len();
            let (x, y) = (b[k - 8..k - 4].to_vec(), b[k - 4..].to_vec());
            b[k - 8..k - 4].copy_from_slice(&y);
            b[k - 4..].copy_from_slice(&x);
            b
        }),
    ];
    for (name, bytes) in cases {
        let p = dir.path().join(name);
        std::fs::write(&p, bytes).unwrap();
        let o = stray(
            &["query", "--index", p.to_str().unwrap(), "--pattern", "a"],
            None,
        );
        assert_eq!(o.status.code(), Some(2), "{name}");
        assert!(
            String::from_utf8_lossy(&o.stderr).starts_with("error:"),
            "{name}"
        );
    }
    let o = stray(
        &["query", "--index", "/nonexistent/x.idx", "--pattern", "a"],
        None,
    );
    assert_eq!(o.status.code(), Some(2));
    let o = stray(
        &["build", "--input", data("banana.txt").to_str().unwrap()],
        None,
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn nul_byte_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("nul.txt");
    std::fs::write(&input, b"ab\0c").unwrap();
    let o = stray(
        &[
            "build",
            "--input",
            input.to_str().unwrap(),
            "--output",
            dir.path().join("o").to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn stream_matches_golden() {
    let script = std::fs::read(data("banana_stream.in")).unwrap();
    let golden = std::fs::read_to_string(data("banana_stream.golden")).unwrap();
    for hint in ["2", "3", "16"] {
        let o = stray(
            &["stream", "--all", "--check", "--sigma-hint", hint],
            Some(&script),
        );
        assert!(o.status.success());
        assert_eq!(stdout(&o), golden, "hint {hint}");
    }
}

/// The golden file must agree with a static index rebuilt at every step.
#[test]
fn golden_agrees_with_static_index() {
    let script = std::fs::read_to_string(data("banana_stream.in")).unwrap();
    let golden = std::fs::read_to_string(data("banana_stream.golden")).unwrap();
    let mut text: Vec<u64> = Vec::new();
    let mut want = Vec::new();
    for line in script.lines() {
        if let Some(c) = line.strip_prefix("+ ") {
            text.insert(0, c.as_bytes()[0] as u64);
        } else if let Some(p) = line.strip_prefix('?') {
            let (alphabet, t) = encode(&text).unwrap();
            let idx = IndexFile::build(Mode::Byte, alphabet, t);
            let raw = Mode::Byte
                .parse_pattern(p.strip_prefix(' ').unwrap_or(p))
                .unwrap();
            want.push(
                query_index(&idx, &raw, true).render(stray_cli::report::QueryFlags {
                    all: true,
                    count_comparisons: false,
                }),
            );
        } else {
            want.push("ERR parse".to_string());
        }
    }
    assert_eq!(want.join("\n") + "\n", golden);
}

#[test]
fn stream_stats_line() {
    let o = stray(
        &["stream", "--sigma-hint", "2"],
        Some(b"+ a\n+ b\n+ a\n!\n"),
    );
    let s = stdout(&o);
    assert!(s.starts_with("n=3 sigma=2 threshold=2 "), "{s}");
}

#[test]
fn bench_is_deterministic() {
    let args = [
        "bench",
        "--n",
        "200,400",
        "--sigma",
        "2,8",
        "--m",
        "6",
        "--queries",
        "50",
        "--seed",
        "9",
    ];
    let a = stray(&args, None);
    let b = stray(&args, None);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    let mut lines = out.lines();
    assert_eq!(
        lines.next(),
        Some("structure,n,sigma,m,mean_comparisons,p99_comparisons")
    );
    assert_eq!(lines.count(), 16);
    let other = stray(
        &[
            "bench",
            "--n",
            "200,400",
            "--sigma",
            "2,8",
            "--m",
            "6",
            "--queries",
            "50",
            "--seed",
            "10",
        ],
        None,
    );
    assert_ne!(other.stdout, a.stdout);
}

#[test]
fn index_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for sigma in [1u64, 2, 4, 40] {
        let raw: Vec<u64> = (0..500).map(|_| rng.gen_range(1..=sigma) * 3).collect();
        let (alphabet, text) = encode(&raw).unwrap();
        let built = IndexFile::build(Mode::Token, alphabet, text);
        let mut bytes = Vec::new();
        built.save(&mut bytes).unwrap();
        let loaded = IndexFile::load(bytes.as_slice()).unwrap();
        let mut again = Vec::new();
        loaded.save(&mut again).unwrap();
        assert_eq!(bytes, again);
        assert_eq!(loaded.tray.stats(), built.tray.stats());
        for _ in 0..100 {
            let len = rng.gen_range(0..5);
            let p: Vec<u64> = (0..len).map(|_| rng.gen_range(1..=sigma + 1) * 3).collect();
            assert_eq!(
                query_index(&loaded, &p, true),
                query_index(&built, &p, true)
            );
        }
    }
}
