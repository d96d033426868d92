//! Rigorous evaluation of ζ(s), ζ(s, a), δ(s), polygamma values at 3/4, and
//! general bounded-coefficient Dirichlet series for real `s > 1`.

mod hurwitz;
mod polygamma;
mod powers;
mod series;

use serde::Serialize;

use crate::autoseq::SeqError;
use crate::exactnum::ExactError;
use crate::realkernel::{BigReal, Bracket, RealError};

pub use hurwitz::{
    default_target_eps, em_parameters, hurwitz_zeta, hurwitz_zeta_fixed, riemann_zeta,
    tight_target_eps,
};
pub use polygamma::{polygamma_34, polygamma_from_hurwitz};
pub use powers::InversePowers;
pub use series::{
    delta_via_functional_equation, dirichlet_series, dirichlet_series_real, integral_tail_bound,
    signed_thue_morse_series, thue_morse_block_tail, Coefficient, TM_BLOCK,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    DirectPartialSum,
    EulerMaclaurin,
    FunctionalEquation,
    ClosedForm,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::DirectPartialSum => "direct_partial_sum",
            Method::EulerMaclaurin => "euler_maclaurin",
            Method::FunctionalEquation => "functional_equation",
            Method::ClosedForm => "closed_form",
        })
    }
}

/// A series evaluation: the enclosure plus how it was obtained.
///
/// `tail_bound` is already included in `value`'s radius. `target_met` is
/// false when the requested truncation bound could not be reached within the
/// resource caps; the value is still a valid (wider) enclosure.
#[derive(Debug, Clone)]
pub struct SeriesValue {
    pub value: Bracket,
    pub terms_used: u64,
    pub tail_bound: BigReal,
    pub method: Method,
    pub target_met: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ZetaError {
    #[error("series requires real s > 1")]
    SNotAboveOne,
    #[error("Hurwitz shift must satisfy 0 < a <= 1")]
    ShiftOutOfRange,
    #[error("at least one term is required (N >= 1)")]
    NoTerms,
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Real(#[from] RealError),
    #[error(transparent)]
    Seq(#[from] SeqError),
}

pub(crate) fn check_s(s: &BigReal) -> Result<(), ZetaError> {
    if *s > BigReal::one() {
        Ok(())
    } else {
        Err(ZetaError::SNotAboveOne)
    }
}
