use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use crate::realkernel::{BigReal, Bracket};

/// Outcome of one identity check.
///
/// `residual = |lhs.mid - rhs.mid|` and `tolerance = lhs.rad + rhs.rad` are
/// both exact, so `pass` is the same as the two enclosures overlapping and
/// can be recomputed from the report alone.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub identity_id: String,
    pub params: BTreeMap<String, String>,
    pub lhs: Bracket,
    pub rhs: Bracket,
    pub residual: BigReal,
    pub tolerance: BigReal,
    pub pass: bool,
    pub terms_used: u64,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn new(
        identity_id: &str,
        params: BTreeMap<String, String>,
        lhs: Bracket,
        rhs: Bracket,
        terms_used: u64,
        started: Instant,
    ) -> Self {
        let residual = lhs.mid().sub_exact(rhs.mid()).abs();
        let tolerance = lhs.rad().add_exact(rhs.rad());
        let pass = residual <= tolerance;
        VerificationReport {
            identity_id: identity_id.to_string(),
            params,
            lhs,
            rhs,
            residual,
            tolerance,
            pass,
            terms_used,
            elapsed: started.elapsed(),
        }
    }

    /// Recompute the verdict from the stored numbers.
    pub fn recheck(&self) -> bool {
        let residual = self.lhs.mid().sub_exact(self.rhs.mid()).abs();
        let tolerance = self.lhs.rad().add_exact(self.rhs.rad());
        residual == self.residual && tolerance == self.tolerance && residual <= tolerance
    }

    pub fn param(&self, key: &str) -> Option<&str> {
        self.params.get(key).map(String::as_str)
    }
}

/// Parameter map from `(key, value)` pairs.
pub(crate) fn params<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Shortest decimal that reads back as the same `f64`; exact for the
/// parameter values the CLI accepts.
pub fn format_s(s: &BigReal) -> String {
    format!("{}", s.to_f64())
}
