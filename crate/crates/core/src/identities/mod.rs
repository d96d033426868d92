//! One verifier per identity. Each evaluates both sides independently as
//! enclosures and passes exactly when the enclosures overlap.

mod report;
mod suite;
mod verify;

use crate::autoseq::SeqError;
use crate::exactnum::ExactError;
use crate::realkernel::RealError;
use crate::zetalib::ZetaError;

pub use report::{format_s, VerificationReport};
pub use suite::{run_suite, Grid, ALL_IDENTITIES, CONTROL_IDENTITIES, SPLIT_SIZES};
pub use verify::{
    verify_allouche_cohen_ratio, verify_allouche_cohen_recursion, verify_catalan, verify_corollary,
    verify_corollary_literal, verify_delta_relation, verify_euler_even, verify_lemma1,
    verify_lemma4, verify_plouffe_zeta7, verify_plouffe_zeta7_alt, verify_polygamma,
    verify_ramanujan_truncated, verify_ramanujan_zeta3, verify_split_exact, verify_theorem1,
    verify_toth, LAMBERT_MAX_TERMS,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdentityError {
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("no identities selected")]
    EmptySelection,
    #[error("{0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error(transparent)]
    Real(#[from] RealError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Seq(#[from] SeqError),
}
