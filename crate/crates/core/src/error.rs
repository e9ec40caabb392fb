use thiserror::Error;

use crate::graph::GraphError;
use crate::sim::SimError;
use crate::verify::Verdict;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("precondition failed: {what}: {}", .verdict.summary())]
    Precondition { what: String, verdict: Box<Verdict> },
    #[error("endpoints disagree about edge {0}")]
    EdgeDisagreement(crate::graph::EdgeId),
    #[error("infeasible beta {beta} for {colors} colors")]
    InfeasibleBeta { beta: usize, colors: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Turns a failing verdict into a precondition error.
pub(crate) fn require(what: &str, verdict: Verdict) -> Result<()> {
    if verdict.ok {
        Ok(())
    } else {
        Err(Error::Precondition { what: what.into(), verdict: Box::new(verdict) })
    }
}
