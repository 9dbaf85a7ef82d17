use std::path::PathBuf;

use crate::surface::DomainPoint;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// `r_u × r_v` vanishes, so there is no tangent plane.
    #[error("singular point{}: r_u x r_v vanishes, no tangent plane", describe_at(.at))]
    SingularPoint { at: Option<DomainPoint> },

    #[error("singular metric: det(I) = {det:e} is below the regularity threshold")]
    SingularMetric { det: f64 },

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

fn describe_at(at: &Option<DomainPoint>) -> String {
    match at {
        Some(q) => format!(" at (u={}, v={})", q.u, q.v),
        None => String::new(),
    }
}
