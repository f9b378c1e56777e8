use ldtopo::complex::ComplexError;
use ldtopo::connect::ConnectError;
use ldtopo::covering::CoverError;
use ldtopo::group::GroupError;
use ldtopo::homology::HomologyError;
use ldtopo::io::IoError;
use thiserror::Error;

pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read `{name}`: {message}")]
    Input { name: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Connect(#[from] ConnectError),
}

fn complex_code(e: &ComplexError) -> i32 {
    match e {
        ComplexError::BudgetBeyondPrefix { .. } => EXIT_BUDGET,
        _ => EXIT_PRECONDITION,
    }
}

fn homology_code(e: &HomologyError) -> i32 {
    match e {
        HomologyError::Complex(c) => complex_code(c),
        _ => EXIT_PRECONDITION,
    }
}

fn group_code(e: &GroupError) -> i32 {
    match e {
        GroupError::Parse { .. } | GroupError::UnknownGenerator(_) => EXIT_PARSE,
        GroupError::Homology(h) => homology_code(h),
        _ => EXIT_PRECONDITION,
    }
}

impl CliError {
    /// 2 for unreadable input, 3 for violated preconditions, 4 for
    /// exhausted budgets.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input { .. } | CliError::Usage(_) => EXIT_PARSE,
            CliError::Io(IoError::Parse { .. }) => EXIT_PARSE,
            CliError::Io(IoError::Complex(c)) | CliError::Complex(c) => complex_code(c),
            CliError::Io(IoError::Homology(h)) | CliError::Homology(h) => homology_code(h),
            CliError::Group(g) => group_code(g),
            CliError::Cover(c) => match c {
                CoverError::BudgetExceeded(_) | CoverError::RewritingDiverged(_) => EXIT_BUDGET,
                CoverError::Group(g) => group_code(g),
                CoverError::Complex(x) => complex_code(x),
                _ => EXIT_PRECONDITION,
            },
            CliError::Connect(c) => match c {
                ConnectError::Parse { .. } => EXIT_PARSE,
                ConnectError::ThresholdTooLarge(_) => EXIT_BUDGET,
                _ => EXIT_PRECONDITION,
            },
        }
    }
}
