//! Exact statistics of a host `G`, a subhypergraph `F` and a 4-partition
//! `Π` (class 0 is `A₁`), for comparison with the concentration bands and
//! the inequalities of the structural argument.
//!
//! Nothing here asserts an asymptotic inequality: reports carry both sides
//! and a pass flag, plus a flag when a threshold is degenerate at the
//! given `n`. `p` is always the generative parameter supplied by the
//! caller.

mod audit;
mod concentration;
mod constants;
mod structure;

use thiserror::Error;

use crate::hypercore::{Hypergraph, HypergraphError, VertexPartition};
use crate::motifs::{MotifError, MotifWitness};

pub use audit::{
    lemma13_audit, lemma14_gap, prop10_check, AuditReport, Conditions, GadgetTally, GapReport,
    GapVerdict, InequalityLine, Prop10Report,
};
pub use concentration::{
    concentration_report, concentration_report_empirical, empirical_p, ConcentrationReport,
    ConcentrationRow, Statistic,
};
pub use constants::{to_f64, DeltaCheck, GammaChoice, PaperConstants, Rational};
pub use structure::{
    decomposition, lemma12_count, low_pairs, prop9_sets, DecompositionConstants,
    DecompositionReport, LowPairs, Prop9Sets, Thresholds,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProplabError {
    #[error("probability {0} outside (0, 1]")]
    Probability(f64),
    #[error("epsilon {0} must be a non-negative finite number")]
    Epsilon(f64),
    #[error("statistic needs a 4-uniform hypergraph, got k = {0}")]
    Uniformity(usize),
    #[error("partition must have 4 classes, got {0}")]
    Classes(usize),
    #[error("F is not a subhypergraph of G: {0}")]
    NotSubhypergraph(String),
    #[error("F contains a copy of T: {0:?}")]
    NotTFree(Box<MotifWitness>),
    #[error("invalid Prop 9 input: {0}")]
    Prop9(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Motif(#[from] MotifError),
}

pub type Result<T, E = ProplabError> = std::result::Result<T, E>;

pub(crate) fn check_p(p: f64) -> Result<()> {
    if p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(ProplabError::Probability(p))
    }
}

pub(crate) fn check_eps(eps: f64) -> Result<()> {
    if eps.is_finite() && eps >= 0.0 {
        Ok(())
    } else {
        Err(ProplabError::Epsilon(eps))
    }
}

pub(crate) fn check_four(h: &Hypergraph) -> Result<()> {
    if h.k() == 4 {
        Ok(())
    } else {
        Err(ProplabError::Uniformity(h.k()))
    }
}

pub(crate) fn check_partition4(h: &Hypergraph, partition: &VertexPartition) -> Result<()> {
    h.check_partition(partition)?;
    if partition.r() == 4 {
        Ok(())
    } else {
        Err(ProplabError::Classes(partition.r()))
    }
}

/// `c_ε = min{(1+ε)ln(1+ε) − ε, ε²/2}`, the exponent constant of the
/// two-sided Chernoff bound for sums of independent indicators.
pub fn chernoff_c(eps: f64) -> Result<f64> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(ProplabError::Epsilon(eps));
    }
    let first = (1.0 + eps) * eps.ln_1p() - eps;
    Ok(first.min(eps * eps / 2.0))
}

#[cfg(test)]
mod tests;
