use crate::pvi::{Jet, SolutionTrace};
use thiserror::Error;

#[derive(Debug, Error, Clone)]
pub enum Error {
    #[error("UnknownGenerator: `{0}`")]
    UnknownGenerator(String),

    #[error("WordSyntax: {message} at byte {position}")]
    WordSyntax { message: String, position: usize },

    #[error("PoleOfHomography: denominator vanishes at X = {0}")]
    PoleOfHomography(String),

    #[error("DepthLimit: requested depth {requested} exceeds {limit}")]
    DepthLimit { requested: usize, limit: usize },

    #[error("SingularConfiguration: {0}")]
    SingularConfiguration(String),

    #[error("VanishingDenominator: factor {factor} vanishes")]
    VanishingDenominator { factor: &'static str },

    #[error("DegenerateMap: {0}")]
    DegenerateMap(String),

    #[error("DirectionUnavailable: {token} is not realized in this direction; use the word {suggestion}")]
    DirectionUnavailable { token: String, suggestion: String },

    #[error("AtWordPosition: token {position} ({token}): {source}")]
    AtWordPosition {
        position: usize,
        token: String,
        #[source]
        source: Box<Error>,
    },

    #[error("AtSample: sample {index}: {source}")]
    AtSample {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("PoleDetected: guard tripped after x = {}", .last.x)]
    PoleDetected { last: Jet, partial: Box<SolutionTrace> },

    #[error("StepUnderflow: step size underflow after x = {}", .last.x)]
    StepUnderflow { last: Jet, partial: Box<SolutionTrace> },

    #[error("MaxSamples: more than {limit} samples requested, stopped after x = {}", .last.x)]
    MaxSamples { last: Jet, limit: usize, partial: Box<SolutionTrace> },

    #[error("ForbiddenWaypoint: path segment {0} passes through a fixed singularity")]
    ForbiddenWaypoint(String),

    #[error("InvalidInput: {0}")]
    InvalidInput(String),

    #[error("MalformedDocument: {0}")]
    MalformedDocument(String),

    #[error("VersionMismatch: {0}")]
    VersionMismatch(String),

    #[error("GuardViolatingSample: sample {0} violates the jet guards")]
    GuardViolatingSample(usize),

    #[error("Io: {0}")]
    Io(String),
}

impl Error {
    /// Name of the variant, without its payload.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::UnknownGenerator(_) => "UnknownGenerator",
            Error::WordSyntax { .. } => "WordSyntax",
            Error::PoleOfHomography(_) => "PoleOfHomography",
            Error::DepthLimit { .. } => "DepthLimit",
            Error::SingularConfiguration(_) => "SingularConfiguration",
            Error::VanishingDenominator { .. } => "VanishingDenominator",
            Error::DegenerateMap(_) => "DegenerateMap",
            Error::DirectionUnavailable { .. } => "DirectionUnavailable",
            Error::AtWordPosition { .. } => "AtWordPosition",
            Error::AtSample { .. } => "AtSample",
            Error::PoleDetected { .. } => "PoleDetected",
            Error::StepUnderflow { .. } => "StepUnderflow",
            Error::MaxSamples { .. } => "MaxSamples",
            Error::ForbiddenWaypoint(_) => "ForbiddenWaypoint",
            Error::InvalidInput(_) => "InvalidInput",
            Error::MalformedDocument(_) => "MalformedDocument",
            Error::VersionMismatch(_) => "VersionMismatch",
            Error::GuardViolatingSample(_) => "GuardViolatingSample",
            Error::Io(_) => "Io",
        }
    }

    /// Strips position/sample wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtWordPosition { source, .. } | Error::AtSample { source, .. } => source.root(),
            e => e,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
