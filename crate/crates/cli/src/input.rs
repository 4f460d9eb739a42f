//! Turning files and command-line patterns into raw symbols.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// every byte is a symbol; NUL is reserved
    #[default]
    Byte,
    /// whitespace separated decimal integers
    Token,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum InputError {
    #[error("NUL byte at offset {0}; byte mode reserves 0 for the sentinel")]
    NulByte(usize),
    #[error("bad token {0:?}: expected a positive decimal integer")]
    BadToken(String),
    #[error("expected exactly one symbol")]
    NotOneSymbol,
}

impl Mode {
    pub fn to_byte(self) -> u8 {
        match self {
            Mode::Byte => 0,
            Mode::Token => 1,
        }
    }

    pub fn from_byte(b: u8) -> Option<Mode> {
        match b {
            0 => Some(Mode::Byte),
            1 => Some(Mode::Token),
            _ => None,
        }
    }

    /// Symbols of a whole input file.
    pub fn parse_text(self, bytes: &[u8]) -> Result<Vec<u64>, InputError> {
        match self {
            Mode::Byte => bytes
                .iter()
                .enumerate()
                .map(|(i, &b)| {
                    if b == 0 {
                        Err(InputError::NulByte(i))
                    } else {
                        Ok(b as u64)
                    }
                })
                .collect(),
            Mode::Token => String::from_utf8_lossy(bytes)
                .split_whitespace()
                .map(parse_token)
                .collect(),
        }
    }

    pub fn parse_pattern(self, s: &str) -> Result<Vec<u64>, InputError> {
        self.parse_text(s.as_bytes())
    }

    pub fn parse_symbol(self, s: &str) -> Result<u64, InputError> {
        match self.parse_pattern(s)?.as_slice() {
            [x] => Ok(*x),
            _ => Err(InputError::NotOneSymbol),
        }
    }
}

fn parse_token(t: &str) -> Result<u64, InputError> {
    match t.parse::<u64>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(InputError::BadToken(t.to_string())),
    }
}
