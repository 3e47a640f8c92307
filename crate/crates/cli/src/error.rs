use std::fmt;
use std::io;

/// How a run ended badly, which picks the exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags or values: exit 2, like clap's own parse errors.
    Usage(String),
    /// A check ran and found a counterexample: exit 1.
    Verification(String),
    /// The reader went away; not an error.
    BrokenPipe,
    Other(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Verification(_) => 1,
            Failure::BrokenPipe => 0,
            Failure::Other(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Verification(m) => write!(f, "verification failed: {m}"),
            Failure::BrokenPipe => write!(f, "broken pipe"),
            Failure::Other(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            Failure::BrokenPipe
        } else {
            Failure::Other(e.to_string())
        }
    }
}

impl From<tmcf::Error> for Failure {
    fn from(e: tmcf::Error) -> Self {
        use tmcf::Error as E;
        match e {
            E::InvalidAlphabet { .. }
            | E::InvalidSymbol { .. }
            | E::InvalidMap(_)
            | E::Precondition(_)
            | E::OutOfBounds { .. }
            | E::Domain(_) => Failure::Usage(e.to_string()),
            E::Io(e) => e.into(),
            other => Failure::Other(other.to_string()),
        }
    }
}

pub type Outcome<T = ()> = Result<T, Failure>;
