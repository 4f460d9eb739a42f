//! Line protocol over an online index:
//!
//! ```text
//! + <symbol>    prepend one symbol
//! ? <pattern>   query; answers like `query`
//! !             stats
//! ```
//!
//! Anything else prints `ERR parse`. Empty lines are skipped.

use std::io::{BufRead, Write};

use stray::trist::SuffixTrist;

use crate::input::Mode;
use crate::report::{query_trist, trist_stats_line, QueryFlags};

pub struct Session {
    trist: SuffixTrist,
    mode: Mode,
    flags: QueryFlags,
}

impl Session {
    pub fn new(mode: Mode, sigma_hint: usize, flags: QueryFlags, checks: bool) -> Session {
        Session {
            trist: SuffixTrist::new(sigma_hint, checks),
            mode,
            flags,
        }
    }

    pub fn trist(&self) -> &SuffixTrist {
        &self.trist
    }

    /// Handles one line (without its terminator); returns the reply, if any.
    pub fn handle(&mut self, line: &[u8]) -> Option<String> {
        let line = line.strip_suffix(b"\r").unwrap_or(line);
        match line {
            [] => None,
            [b'!'] => Some(trist_stats_line(
                self.trist.alphabet().sigma(),
                &self.trist.stats(),
            )),
            [b'?'] => Some(self.query(&[])),
            [b'?', b' ', rest @ ..] => match self.mode.parse_text(rest) {
                Ok(p) => Some(self.query(&p)),
                Err(_) => Some("ERR parse".into()),
            },
            [b'+', b' ', rest @ ..] => {
                let sym = match self.mode.parse_text(rest).as_deref() {
                    Ok([x]) => *x,
                    _ => return Some("ERR parse".into()),
                };
                match self.trist.extend(sym) {
                    Ok(()) => None,
                    Err(e) => Some(format!("ERR {e}")),
                }
            }
            _ => Some("ERR parse".into()),
        }
    }

    fn query(&self, raw: &[u64]) -> String {
        query_trist(&self.trist, raw).render(self.flags)
    }

    pub fn run<R: BufRead, W: Write>(&mut self, mut input: R, mut out: W) -> std::io::Result<()> {
        let mut line = Vec::new();
        loop {
            line.clear();
            if input.read_until(b'\n', &mut line)? == 0 {
                break;
            }
            let body = line.strip_suffix(b"\n").unwrap_or(&line);
            if let Some(reply) = self.handle(body) {
                writeln!(out, "{reply}")?;
                out.flush()?;
            }
        }
        Ok(())
    }
}
