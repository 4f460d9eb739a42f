use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid symbol {symbol}: raw symbols must lie in 1..={bound}")]
    InvalidSymbol { symbol: u64, bound: u64 },
    #[error("child range {first}..={last} out of bounds for a node with {children} children")]
    ChildIndexOutOfRange {
        first: usize,
        last: usize,
        children: usize,
    },
    #[error("suffix {0} is not a member of this structure")]
    NotAMember(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
