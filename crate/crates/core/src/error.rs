use thiserror::Error;

/// Errors raised by the library.
///
/// `Consistency` is reserved for checks that compare two independent routes
/// to the same quantity (or a divisibility that is a theorem); it firing
/// always means a bug.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("size limit exceeded: {what} = {value} exceeds the cap {cap}")]
    SizeLimit {
        what: &'static str,
        value: u64,
        cap: u64,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("consistency check failed: {0}")]
    Consistency(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("mode unavailable: {0}")]
    ModeUnavailable(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}

pub(crate) fn inconsistent<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Consistency(msg.into()))
}

/// Caps on the enumerations whose cost grows factorially.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest `n` accepted by enumerations over `S_n` and compositions of `n`.
    pub max_n: usize,
    /// Largest number of complete flags over `F_q` that may be enumerated.
    pub max_flags: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_n: 12,
            max_flags: 1000,
        }
    }
}

impl Limits {
    pub(crate) fn check_n(&self, n: usize) -> Result<()> {
        if n == 0 {
            return invalid("n must be at least 1");
        }
        if n > self.max_n {
            return Err(Error::SizeLimit {
                what: "n",
                value: n as u64,
                cap: self.max_n as u64,
            });
        }
        Ok(())
    }
}
