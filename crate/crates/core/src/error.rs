use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Text input rejected; `position` is the 1-based entry index.
    #[error("entry {position}: {kind}")]
    Parse {
        position: usize,
        kind: ParseErrorKind,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// An enumeration produced something a forward map disagrees with.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("empty input")]
    Empty,
    #[error("not an integer: {0:?}")]
    NotAnInteger(String),
    #[error("zero is not allowed in a signed permutation")]
    Zero,
    #[error("absolute value {value} outside 1..={n}")]
    OutOfRange { value: i64, n: usize },
    #[error("duplicate absolute value {0}")]
    Duplicate(i64),
    #[error("letter {value} outside the alphabet of bound {m}")]
    OutsideAlphabet { value: i64, m: u32 },
}

pub(crate) fn parse_ints(text: &str) -> Result<Vec<i64>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse {
            position: 1,
            kind: ParseErrorKind::Empty,
        });
    }
    text.split(',')
        .enumerate()
        .map(|(i, tok)| {
            let tok = tok.trim();
            tok.parse::<i64>().map_err(|_| Error::Parse {
                position: i + 1,
                kind: ParseErrorKind::NotAnInteger(tok.to_string()),
            })
        })
        .collect()
}
