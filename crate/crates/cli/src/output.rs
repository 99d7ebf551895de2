//! Report serialization. CSV carries full double precision (17 significant
//! digits) so downstream cross-checks are exact; rounding for human eyes is a
//! display concern, never applied to files.

use serde::Serialize;

use crate::args::Units;
use crate::design_io::DesignDoc;

/// 17 significant digits, enough to reproduce any f64 exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Convert a rate in nats to the requested display units.
pub fn rate_in(units: Units, nats: f64) -> f64 {
    match units {
        Units::Nats => nats,
        Units::Bits => nats / std::f64::consts::LN_2,
    }
}

pub fn units_label(units: Units) -> &'static str {
    match units {
        Units::Nats => "nats",
        Units::Bits => "bits",
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CurveRow {
    pub gamma: f64,
    pub mmse: f64,
    pub mi: f64,
}

pub fn curve_csv(rows: &[CurveRow]) -> String {
    let mut s = String::from("gamma,mmse,mi\n");
    for r in rows {
        s.push_str(&format!("{},{},{}\n", fmt_f64(r.gamma), fmt_f64(r.mmse), fmt_f64(r.mi)));
    }
    s
}

#[derive(Debug, Serialize)]
pub struct CurveReport<'a> {
    pub design: &'a DesignDoc,
    pub units: &'static str,
    pub rows: &'a [CurveRow],
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundRow {
    pub snr0: f64,
    pub bound: f64,
    pub uncoded: f64,
    pub vacuous: bool,
}

pub fn bound_csv(rows: &[BoundRow]) -> String {
    let mut s = String::from("snr0,bound,uncoded\n");
    for r in rows {
        s.push_str(&format!("{},{},{}\n", fmt_f64(r.snr0), fmt_f64(r.bound), fmt_f64(r.uncoded)));
    }
    s
}

#[derive(Debug, Serialize)]
pub struct BoundReport<'a> {
    pub snr1: f64,
    pub alpha: f64,
    pub pe: f64,
    pub rate_nats: f64,
    pub all_vacuous: bool,
    pub rows: &'a [BoundRow],
}

pub fn design_csv(doc: &DesignDoc, units: Units) -> String {
    let mut s = format!("layer,snr,power,rate_{}\n", units_label(units));
    let k = doc.betas.len();
    for (i, (&snr, &rate)) in doc.snrs.iter().zip(&doc.layer_rates_nats).enumerate() {
        let power = match (i, k) {
            (_, 0) => 1.0,
            (0, _) => 1.0 - doc.betas[0],
            (i, k) if i == k => doc.betas[k - 1],
            (i, _) => doc.betas[i - 1] - doc.betas[i],
        };
        s.push_str(&format!(
            "{i},{},{},{}\n",
            fmt_f64(snr),
            fmt_f64(power),
            fmt_f64(rate_in(units, rate))
        ));
    }
    s.push_str(&format!("total,,,{}\n", fmt_f64(rate_in(units, doc.total_rate_nats))));
    s
}

#[derive(Debug, Serialize)]
pub struct RegionPointReport {
    pub snr0: f64,
    pub snr1: f64,
    pub alpha: f64,
    pub units: &'static str,
    pub r_max: f64,
    pub r_d_min: f64,
}

#[derive(Debug, Serialize)]
pub struct EffectiveAlphaReport {
    pub snrs: Vec<f64>,
    pub alphas: Vec<f64>,
    pub effective_alpha: f64,
    pub units: &'static str,
    pub rate: f64,
}

#[derive(Debug, Serialize)]
pub struct QRow {
    pub gamma: f64,
    pub value: f64,
    pub std_error: f64,
}

#[derive(Debug, Serialize)]
#[serde(tag = "name")]
pub enum CheckReport {
    #[serde(rename = "single-crossing")]
    SingleCrossing {
        deterministic: bool,
        pass: bool,
        first_nonnegative_index: Option<usize>,
        q: Vec<QRow>,
    },
    #[serde(rename = "immse-identity")]
    ImmseIdentity {
        deterministic: bool,
        pass: bool,
        snr: f64,
        mi: f64,
        integral_half: f64,
        residual: f64,
        stat_budget: f64,
        quad_budget: f64,
    },
}

impl CheckReport {
    pub fn pass(&self) -> bool {
        match self {
            CheckReport::SingleCrossing { pass, .. } => *pass,
            CheckReport::ImmseIdentity { pass, .. } => *pass,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub codebook: String,
    pub seed: u64,
    pub samples: u64,
    pub sigma_policy: f64,
    pub pass: bool,
    pub checks: Vec<CheckReport>,
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
