use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A point lies outside (or within rounding distance of the boundary of)
    /// the domain an operation is defined on.
    DomainViolation { domain: &'static str },
    /// A parameter is outside the range an operation accepts.
    Range { parameter: &'static str, value: f64 },
    /// A caller-side contract was broken (negative distance, non-finite input).
    Contract(&'static str),
    /// A principal-branch root would be taken on or across its cut.
    BranchCut { map: &'static str },
    /// Adaptive quadrature stopped at its subdivision cap.
    ToleranceNotMet { estimate: f64, error: f64 },
    /// A construction precondition failed; names the violated inequality.
    ConstructionRefused(&'static str),
    /// Inconsistent configuration of a composite object.
    Configuration(&'static str),
    /// Input collection too small for the requested statistic.
    Input(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DomainViolation { domain } => write!(f, "point outside {domain}"),
            Error::Range { parameter, value } => {
                write!(f, "parameter {parameter} = {value} out of range")
            }
            Error::Contract(msg) => write!(f, "contract violation: {msg}"),
            Error::BranchCut { map } => write!(f, "{map}: argument touches the branch cut"),
            Error::ToleranceNotMet { estimate, error } => {
                write!(f, "quadrature did not reach tolerance (estimate {estimate}, error {error})")
            }
            Error::ConstructionRefused(why) => write!(f, "construction refused: {why}"),
            Error::Configuration(msg) => write!(f, "configuration error: {msg}"),
            Error::Input(msg) => write!(f, "input error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
