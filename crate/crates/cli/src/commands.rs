//! Subcommand logic: resolve flags against the optional config file, run the
//! library, serialize the report.

use std::io::Write;
use std::path::PathBuf;

use mmse_codes::config::Config;
use mmse_codes::disturbance::{effective_alpha, rate_disturbance_point, DisturbanceConstraintSet};
use mmse_codes::finite_length::{finite_length_mmse_lower_bound, FiniteLengthParams};
use mmse_codes::gaussian::{GaussianSurrogate, RateValue, SnrPoint};
use mmse_codes::oracle::{
    constellation_of, verify_immse_identity, verify_single_crossing,
    verify_single_crossing_quadrature,
};
use mmse_codes::superposition::{alpha_to_beta, max_rate_multi, MmseConstraintSet, SuperpositionDesign};

use crate::args::{
    BoundArgs, Cli, Command, CommonArgs, CurveArgs, DesignArgs, DisturbanceArgs, OutputFormat,
    Units, VerifyArgs,
};
use crate::config_file::ConfigMap;
use crate::design_io::DesignDoc;
use crate::output::{
    bound_csv, curve_csv, design_csv, fmt_f64, rate_in, to_json_pretty, units_label, BoundReport,
    BoundRow, CheckReport, CurveReport, CurveRow, EffectiveAlphaReport, QRow, RegionPointReport,
    VerifyReport,
};
use crate::parse::{parse_codebook_spec, parse_grid, parse_list};
use crate::CliError;

pub fn dispatch(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Design(a) => run_design(a, stdout),
        Command::Curve(a) => run_curve(a, stdout),
        Command::Bound(a) => run_bound(a, stdout),
        Command::Disturbance(a) => run_disturbance(a, stdout),
        Command::Verify(a) => run_verify(a, stdout),
    }
}

/// Flags resolved against the config file, with global defaults applied.
struct Common {
    units: Units,
    db: bool,
    format: Option<OutputFormat>,
    seed: u64,
    samples: u64,
    out: Option<PathBuf>,
    cfg: ConfigMap,
}

fn resolve_common(c: &CommonArgs) -> Result<Common, CliError> {
    let cfg = match &c.config {
        Some(path) => ConfigMap::load(path)?,
        None => ConfigMap::default(),
    };
    Ok(Common {
        units: match c.units {
            Some(u) => u,
            None => cfg.get_parsed::<Units>("units")?.unwrap_or(Units::Nats),
        },
        db: c.db || cfg.get_bool("db")?.unwrap_or(false),
        format: match c.format {
            Some(f) => Some(f),
            None => cfg.get_parsed::<OutputFormat>("format")?,
        },
        seed: match c.seed {
            Some(s) => s,
            None => cfg.get_parsed("seed")?.unwrap_or(42),
        },
        samples: match c.samples {
            Some(s) => s,
            None => cfg.get_parsed("samples")?.unwrap_or(100_000),
        },
        out: c.out.clone().or_else(|| cfg.get("out").map(PathBuf::from)),
        cfg,
    })
}

fn emit(common: &Common, stdout: &mut dyn Write, body: &str) -> Result<(), CliError> {
    match &common.out {
        Some(path) => std::fs::write(path, body)?,
        None => stdout.write_all(body.as_bytes())?,
    }
    Ok(())
}

fn require<T>(value: Option<T>, flag: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("missing --{flag}")))
}

fn db_to_linear(x: f64) -> f64 {
    10f64.powf(x / 10.0)
}

fn convert_snr(db: bool, x: f64) -> f64 {
    if db {
        db_to_linear(x)
    } else {
        x
    }
}

fn text_flag<'a>(flag: &'a Option<String>, cfg: &'a ConfigMap, key: &'static str) -> Option<&'a str> {
    flag.as_deref().or_else(|| cfg.get(key))
}

fn f64_flag(flag: Option<f64>, cfg: &ConfigMap, key: &'static str) -> Result<Option<f64>, CliError> {
    match flag {
        Some(v) => Ok(Some(v)),
        None => cfg.get_parsed(key),
    }
}

/// Materialize a grid flag to a strictly increasing linear-SNR axis.
fn resolve_grid(text: &str, db: bool) -> Result<Vec<f64>, CliError> {
    let mut grid = parse_grid(text)?.materialize();
    if db {
        for g in &mut grid {
            *g = db_to_linear(*g);
        }
    }
    if grid.iter().any(|g| !g.is_finite() || *g < 0.0) {
        return Err(CliError::usage("grid points must be finite, nonnegative linear SNRs"));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::usage("grid points must be strictly increasing"));
    }
    Ok(grid)
}

/// Build the maximum-rate design for an SNR ladder plus constraint
/// coefficients (betas directly, or alphas converted per constraint against
/// the final SNR).
#[allow(clippy::too_many_arguments)]
fn design_from_params(
    snrs_text: &str,
    betas_text: Option<&str>,
    alphas_text: Option<&str>,
    alpha_single: Option<f64>,
    db: bool,
    strict_sum: bool,
) -> Result<(RateValue, SuperpositionDesign), CliError> {
    let mut snrs = parse_list(snrs_text)?;
    if db {
        for s in &mut snrs {
            *s = db_to_linear(*s);
        }
    }
    if snrs.len() < 2 {
        return Err(CliError::usage("need at least two SNRs (constraints plus the design SNR)"));
    }
    let k = snrs.len() - 1;
    let target = SnrPoint::new(snrs[k])?;
    let betas: Vec<f64> = match (betas_text, alphas_text, alpha_single) {
        (Some(b), None, None) => parse_list(b)?,
        (None, Some(a), None) => {
            let alphas = parse_list(a)?;
            if alphas.len() != k {
                return Err(CliError::Usage(format!(
                    "expected {k} alphas for {} SNRs, got {}",
                    snrs.len(),
                    alphas.len()
                )));
            }
            alphas
                .iter()
                .zip(&snrs)
                .map(|(&al, &s)| Ok(alpha_to_beta(SnrPoint::new(s)?, target, al)?))
                .collect::<Result<_, CliError>>()?
        }
        (None, None, Some(al)) => {
            if k != 1 {
                return Err(CliError::usage("--alpha takes exactly two SNRs; use --alphas"));
            }
            vec![alpha_to_beta(SnrPoint::new(snrs[0])?, target, al)?]
        }
        (None, None, None) => {
            return Err(CliError::usage("need --betas, --alphas, or --alpha"))
        }
        _ => return Err(CliError::usage("--betas conflicts with --alphas/--alpha")),
    };
    if betas.len() != k {
        return Err(CliError::Usage(format!(
            "expected {k} betas for {} SNRs, got {}",
            snrs.len(),
            betas.len()
        )));
    }
    let pairs: Vec<(f64, f64)> = snrs[..k].iter().copied().zip(betas).collect();
    let set = MmseConstraintSet::from_pairs(&pairs)?;
    if strict_sum {
        set.check_beta_sum()?;
    }
    Ok(max_rate_multi(&set, target)?)
}

fn run_design(a: DesignArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let common = resolve_common(&a.common)?;
    let snrs = require(text_flag(&a.snrs, &common.cfg, "snrs"), "snrs")?;
    let betas = text_flag(&a.betas, &common.cfg, "betas");
    let alphas = text_flag(&a.alphas, &common.cfg, "alphas");
    let alpha = f64_flag(a.alpha, &common.cfg, "alpha")?;
    let strict_sum = a.strict_sum || common.cfg.get_bool("strict-sum")?.unwrap_or(false);
    let (_, design) = design_from_params(snrs, betas, alphas, alpha, common.db, strict_sum)?;
    let doc = DesignDoc::from_design(&design);
    let body = match common.format.unwrap_or(OutputFormat::Json) {
        OutputFormat::Json => to_json_pretty(&doc),
        OutputFormat::Csv => design_csv(&doc, common.units),
    };
    emit(&common, stdout, &body)
}

fn run_curve(a: CurveArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let common = resolve_common(&a.common)?;
    let design_path = a.design.clone().or_else(|| common.cfg.get("design").map(PathBuf::from));
    let design = match design_path {
        Some(path) => DesignDoc::load(&path)?.to_design()?,
        None => {
            let snrs = require(text_flag(&a.snrs, &common.cfg, "snrs"), "snrs")?;
            let betas = text_flag(&a.betas, &common.cfg, "betas");
            design_from_params(snrs, betas, None, None, common.db, false)?.1
        }
    };
    let grid_text = require(text_flag(&a.grid, &common.cfg, "grid"), "grid")?;
    let mut grid = resolve_grid(grid_text, common.db)?;

    let mmse = design.mmse_curve();
    let mi = design.mi_curve();
    // breakpoints inside the requested span always appear as explicit rows
    let (lo, hi) = (grid[0], *grid.last().unwrap());
    grid.extend(mmse.breakpoints().iter().copied().filter(|b| *b >= lo && *b <= hi));
    grid.sort_by(f64::total_cmp);
    grid.dedup();

    // at a jump breakpoint the staircase gets its corner pair: the left
    // limit first, then the post-drop value at the same gamma — keeps plots
    // vertical and row-wise trapezoid sums exact across the discontinuity
    let mut rows: Vec<CurveRow> = Vec::with_capacity(grid.len() + 4);
    for &g in &grid {
        let gamma = SnrPoint::new(g).expect("validated grid");
        let value = mmse.eval(gamma);
        let left = mmse.eval_left_limit(gamma);
        if left != value {
            rows.push(CurveRow {
                gamma: g,
                mmse: left,
                mi: rate_in(common.units, mi.eval_left_limit(gamma)),
            });
        }
        rows.push(CurveRow { gamma: g, mmse: value, mi: rate_in(common.units, mi.eval(gamma)) });
    }
    let body = match common.format.unwrap_or(OutputFormat::Csv) {
        OutputFormat::Csv => curve_csv(&rows),
        OutputFormat::Json => to_json_pretty(&CurveReport {
            design: &DesignDoc::from_design(&design),
            units: units_label(common.units),
            rows: &rows,
        }),
    };
    emit(&common, stdout, &body)
}

fn run_bound(a: BoundArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let common = resolve_common(&a.common)?;
    let snr1_raw = require(f64_flag(a.snr1, &common.cfg, "snr1")?, "snr1")?;
    let snr1 = SnrPoint::new(convert_snr(common.db, snr1_raw))?;
    let pe = require(f64_flag(a.pe, &common.cfg, "pe")?, "pe")?;
    let alpha_flag = f64_flag(a.alpha, &common.cfg, "alpha")?;
    let rate_flag = f64_flag(a.rate, &common.cfg, "rate")?;
    let alpha = match (alpha_flag, rate_flag) {
        (Some(al), None) => al,
        (None, Some(r)) => {
            let nats = match common.units {
                Units::Nats => r,
                Units::Bits => r * std::f64::consts::LN_2,
            };
            let al = (2.0 * nats).exp_m1() / snr1.value();
            if !al.is_finite() || !(0.0..=1.0).contains(&al) {
                return Err(CliError::Usage(format!(
                    "rate {r} is outside the capacity of snr1 = {}",
                    snr1.value()
                )));
            }
            al
        }
        (None, None) => return Err(CliError::usage("need --alpha or --rate")),
        (Some(_), Some(_)) => return Err(CliError::usage("--alpha conflicts with --rate")),
    };
    let params = FiniteLengthParams::new(snr1, alpha, pe)?;
    let grid_text = require(text_flag(&a.grid, &common.cfg, "grid"), "grid")?;
    let grid = resolve_grid(grid_text, common.db)?;
    let limit = alpha * snr1.value();
    if grid.iter().any(|g| *g <= 0.0 || *g >= limit) {
        return Err(CliError::Infeasible(format!(
            "bound grid must lie strictly inside (0, alpha*snr1) = (0, {limit})"
        )));
    }

    let rows: Vec<BoundRow> = grid
        .iter()
        .map(|&g| {
            let b = finite_length_mmse_lower_bound(&params, SnrPoint::new(g)?)?;
            Ok(BoundRow { snr0: g, bound: b.value, uncoded: 1.0 / (1.0 + g), vacuous: b.vacuous })
        })
        .collect::<Result<_, CliError>>()?;
    let all_vacuous = rows.iter().all(|r| r.vacuous);
    if all_vacuous {
        eprintln!("warning: bound is vacuous (clamped to zero) on the whole grid");
    }
    let body = match common.format.unwrap_or(OutputFormat::Csv) {
        OutputFormat::Csv => bound_csv(&rows),
        OutputFormat::Json => to_json_pretty(&BoundReport {
            snr1: snr1.value(),
            alpha,
            pe,
            rate_nats: params.rate().nats(),
            all_vacuous,
            rows: &rows,
        }),
    };
    emit(&common, stdout, &body)
}

fn run_disturbance(a: DisturbanceArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let common = resolve_common(&a.common)?;
    let snrs_text = require(text_flag(&a.snrs, &common.cfg, "snrs"), "snrs")?;
    let mut snrs = parse_list(snrs_text)?;
    if common.db {
        for s in &mut snrs {
            *s = db_to_linear(*s);
        }
    }
    let alphas_text = text_flag(&a.alphas, &common.cfg, "alphas");
    let alpha_flag = f64_flag(a.alpha, &common.cfg, "alpha")?;
    let format = common.format.unwrap_or(OutputFormat::Json);
    let body = match (alpha_flag, alphas_text) {
        (Some(alpha), None) => {
            if snrs.len() != 2 {
                return Err(CliError::usage("region-point mode takes exactly two SNRs"));
            }
            let (r_max, r_d_min) =
                rate_disturbance_point(SnrPoint::new(snrs[0])?, SnrPoint::new(snrs[1])?, alpha)?;
            let report = RegionPointReport {
                snr0: snrs[0],
                snr1: snrs[1],
                alpha,
                units: units_label(common.units),
                r_max: rate_in(common.units, r_max.nats()),
                r_d_min: rate_in(common.units, r_d_min.nats()),
            };
            match format {
                OutputFormat::Json => to_json_pretty(&report),
                OutputFormat::Csv => format!(
                    "snr0,snr1,alpha,r_max,r_d_min\n{},{},{},{},{}\n",
                    fmt_f64(report.snr0),
                    fmt_f64(report.snr1),
                    fmt_f64(report.alpha),
                    fmt_f64(report.r_max),
                    fmt_f64(report.r_d_min)
                ),
            }
        }
        (None, Some(alphas_text)) => {
            let alphas = parse_list(alphas_text)?;
            if snrs.len() < 2 || alphas.len() != snrs.len() - 1 {
                return Err(CliError::usage(
                    "effective-alpha mode needs one alpha per SNR except the last",
                ));
            }
            let k = alphas.len();
            let pairs: Vec<(f64, f64)> = snrs[..k].iter().copied().zip(alphas.clone()).collect();
            let set = DisturbanceConstraintSet::from_pairs(&pairs)?;
            let eff = effective_alpha(&set);
            let rate_nats = 0.5 * (eff * snrs[k]).ln_1p();
            let report = EffectiveAlphaReport {
                snrs,
                alphas,
                effective_alpha: eff,
                units: units_label(common.units),
                rate: rate_in(common.units, rate_nats),
            };
            match format {
                OutputFormat::Json => to_json_pretty(&report),
                OutputFormat::Csv => format!(
                    "effective_alpha,rate\n{},{}\n",
                    fmt_f64(report.effective_alpha),
                    fmt_f64(report.rate)
                ),
            }
        }
        (None, None) => return Err(CliError::usage("need --alpha or --alphas")),
        (Some(_), Some(_)) => return Err(CliError::usage("--alpha conflicts with --alphas")),
    };
    emit(&common, stdout, &body)
}

fn run_verify(a: VerifyArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let common = resolve_common(&a.common)?;
    if common.format == Some(OutputFormat::Csv) {
        return Err(CliError::usage("verify reports are JSON only"));
    }
    let check = text_flag(&a.check, &common.cfg, "check").unwrap_or("all");
    let (want_crossing, want_identity) = match check {
        "single-crossing" => (true, false),
        "immse" => (false, true),
        "all" => (true, true),
        other => {
            return Err(CliError::Usage(format!(
                "unknown check {other:?} (single-crossing, immse, all)"
            )))
        }
    };
    let codebook_text = require(text_flag(&a.codebook, &common.cfg, "codebook"), "codebook")?;
    let cb = parse_codebook_spec(codebook_text)?.resolve(common.seed)?;
    let grid_text = require(text_flag(&a.grid, &common.cfg, "grid"), "grid")?;
    let grid = resolve_grid(grid_text, common.db)?;

    let mut config = Config::default();
    if let Some(sp) = f64_flag(a.sigma_policy, &common.cfg, "sigma-policy")? {
        if !sp.is_finite() || sp <= 0.0 {
            return Err(CliError::usage("sigma policy must be positive"));
        }
        config.sigma_policy = sp;
    }
    if let Some(budget) = match a.budget {
        Some(b) => Some(b),
        None => common.cfg.get_parsed("budget")?,
    } {
        config.eval_budget = budget;
    }

    let sigma2 = match f64_flag(a.sigma2, &common.cfg, "sigma2")? {
        Some(v) => v,
        None => cb.prior_variance().min(1.0),
    };
    let surrogate = GaussianSurrogate::new(sigma2)?;

    let mut checks = Vec::new();
    if want_crossing {
        let r = verify_single_crossing(&cb, surrogate, &grid, common.samples, common.seed, &config)?;
        checks.push(CheckReport::SingleCrossing {
            deterministic: false,
            pass: r.pass,
            first_nonnegative_index: r.first_nonnegative_index,
            q: r.grid
                .iter()
                .zip(&r.q_values)
                .map(|(&gamma, q)| QRow { gamma, value: q.value, std_error: q.std_error })
                .collect(),
        });
        if cb.dimension() == 1 {
            let constellation = constellation_of(&cb)?;
            let r = verify_single_crossing_quadrature(&constellation, surrogate, &grid)?;
            checks.push(CheckReport::SingleCrossing {
                deterministic: true,
                pass: r.pass,
                first_nonnegative_index: r.first_nonnegative_index,
                q: r.grid
                    .iter()
                    .zip(&r.q_values)
                    .map(|(&gamma, q)| QRow { gamma, value: q.value, std_error: q.std_error })
                    .collect(),
            });
        }
    }
    if want_identity {
        let snr = SnrPoint::new(*grid.last().unwrap())?;
        if snr.value() <= 0.0 {
            return Err(CliError::usage("identity check needs a grid ending above zero"));
        }
        let panels = (grid.len() - 1).max(2);
        let r = verify_immse_identity(&cb, snr, panels, common.samples, common.seed, &config)?;
        checks.push(CheckReport::ImmseIdentity {
            deterministic: r.deterministic,
            pass: r.pass,
            snr: snr.value(),
            mi: r.mi,
            integral_half: r.integral_half,
            residual: r.residual,
            stat_budget: r.stat_budget,
            quad_budget: r.quad_budget,
        });
    }

    let pass = checks.iter().all(|c| c.pass());
    let report = VerifyReport {
        codebook: codebook_text.to_string(),
        seed: common.seed,
        samples: common.samples,
        sigma_policy: config.sigma_policy,
        pass,
        checks,
    };
    emit(&common, stdout, &to_json_pretty(&report))?;
    if !pass {
        return Err(CliError::Verification("one or more checks failed".into()));
    }
    Ok(())
}
