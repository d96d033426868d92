use std::collections::BTreeMap;

use serde::Serialize;

use crate::identities::VerificationReport;
use crate::realkernel::{certified_digits, BigReal, Bracket, Round};
use crate::zetalib::SeriesValue;

/// Upper limit on printed fractional digits, whatever the radius allows.
pub const MAX_DIGITS: usize = 100;

/// Significant digits for residuals, tolerances and radii.
const SIG: usize = 20;

/// Midpoint truncated to the digits its radius certifies.
pub fn render_mid(b: &Bracket) -> String {
    let digits = certified_digits(b.rad(), b.prec()).min(MAX_DIGITS);
    b.mid().to_decimal_fixed(digits, Round::Trunc)
}

pub fn render_rad(b: &Bracket) -> String {
    b.rad().to_scientific(6, Round::Ceil)
}

/// Residual and tolerance rounded so that comparing the printed decimals
/// gives the same verdict as comparing the exact values.
pub fn render_verdict(residual: &BigReal, tolerance: &BigReal, pass: bool) -> (String, String) {
    if pass {
        (
            residual.to_scientific(SIG, Round::Floor),
            tolerance.to_scientific(SIG, Round::Ceil),
        )
    } else {
        (
            residual.to_scientific(SIG, Round::Ceil),
            tolerance.to_scientific(SIG, Round::Floor),
        )
    }
}

#[derive(Debug, Serialize)]
pub struct BracketJson {
    pub mid: String,
    pub rad: String,
}

impl From<&Bracket> for BracketJson {
    fn from(b: &Bracket) -> Self {
        BracketJson {
            mid: render_mid(b),
            rad: render_rad(b),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ReportJson {
    pub identity_id: String,
    pub params: BTreeMap<String, String>,
    pub lhs: BracketJson,
    pub rhs: BracketJson,
    pub residual: String,
    pub tolerance: String,
    pub pass: bool,
    pub terms_used: u64,
    pub elapsed_ms: u64,
}

impl From<&VerificationReport> for ReportJson {
    fn from(r: &VerificationReport) -> Self {
        let (residual, tolerance) = render_verdict(&r.residual, &r.tolerance, r.pass);
        ReportJson {
            identity_id: r.identity_id.clone(),
            params: r.params.clone(),
            lhs: (&r.lhs).into(),
            rhs: (&r.rhs).into(),
            residual,
            tolerance,
            pass: r.pass,
            terms_used: r.terms_used,
            elapsed_ms: r.elapsed.as_millis() as u64,
        }
    }
}

pub fn params_inline(params: &BTreeMap<String, String>) -> String {
    params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

#[derive(Debug, Serialize)]
pub struct SeriesJson {
    pub series: String,
    pub params: BTreeMap<String, String>,
    pub mid: String,
    pub rad: String,
    pub terms_used: u64,
    pub tail_bound: String,
    pub method: String,
    pub target_met: bool,
}

impl SeriesJson {
    pub fn new(series: &str, params: BTreeMap<String, String>, v: &SeriesValue) -> Self {
        SeriesJson {
            series: series.to_string(),
            params,
            mid: render_mid(&v.value),
            rad: render_rad(&v.value),
            terms_used: v.terms_used,
            tail_bound: v.tail_bound.to_scientific(6, Round::Ceil),
            method: v.method.to_string(),
            target_met: v.target_met,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_rounding_is_directed() {
        // residual and tolerance equal to 20 significant digits but not exactly
        let tol = BigReal::from_f64(1.0 / 3.0).unwrap();
        let res = tol.sub_exact(&BigReal::pow2(-80));
        let (r, t) = render_verdict(&res, &tol, true);
        assert!(r <= t, "{r} {t}");
        let (r, t) = render_verdict(&tol, &res, false);
        assert!(r > t, "{r} {t}");
    }

    #[test]
    fn mid_respects_radius() {
        let b = Bracket::new(
            BigReal::from_f64(1.2345678).unwrap(),
            BigReal::from_f64(1e-3).unwrap(),
            64,
        );
        assert_eq!(render_mid(&b), "1.23");
    }
}
