use thiserror::Error;

/// Errors raised by graph construction, complex expansion and the samplers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    Parameter { name: &'static str, reason: String },

    #[error("invalid data: {0}")]
    Data(String),

    #[error(
        "subdividing cliques into {requested} simplices exceeds the cap of {cap}; \
         use a smaller p (or a smaller k)"
    )]
    SubdivisionCap { requested: u128, cap: usize },

    #[error("borderline subset is empty (no minority point is majority-dominated); use plain SMOTE instead")]
    EmptyBorderline,

    #[error("missing report cell for dataset `{dataset}`, method `{method}`")]
    MissingCell { dataset: String, method: String },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::Parameter {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
