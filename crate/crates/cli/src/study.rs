//! Seeded scaling studies: run the pipeline over a grid of vertex counts,
//! persist one record per trial, and fit the radius and crossing growth.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use thickem_core::embedder::{run_pipeline, PipelineParams};
use thickem_core::Error;

use crate::families::{generate_family, FamilySpec};

pub const SCHEMA_VERSION: u32 = 1;

/// Family template: the vertex count is supplied per grid point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum StudyFamily {
    Cycle,
    RandomRegular { degree: usize },
}

impl StudyFamily {
    pub fn spec(&self, v: usize) -> FamilySpec {
        match *self {
            StudyFamily::Cycle => FamilySpec::Cycle { v },
            StudyFamily::RandomRegular { degree } => FamilySpec::RandomRegularGraph { v, degree },
        }
    }

    pub fn parse(s: &str) -> Result<Self, String> {
        if s == "cycle" {
            return Ok(StudyFamily::Cycle);
        }
        if let Some(d) = s.strip_prefix("rrg:") {
            let degree = d.parse().map_err(|_| format!("bad degree `{}`", d))?;
            return Ok(StudyFamily::RandomRegular { degree });
        }
        Err(format!("unknown study family `{}` (expected `cycle` or `rrg:D`)", s))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TSubdiv {
    /// Subdivide until edges reach the unit scale: t = max(1, round(R/2)).
    Auto,
    Fixed(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyConfig {
    pub family: StudyFamily,
    pub ambient: usize,
    pub v_grid: Vec<usize>,
    pub seeds: u64,
    pub t_subdiv: TSubdiv,
    pub alpha0: f64,
    pub perturb_budget: usize,
    pub crossing_samples: usize,
}

impl StudyConfig {
    pub fn new(family: StudyFamily, ambient: usize, v_grid: Vec<usize>, seeds: u64) -> Self {
        StudyConfig {
            family,
            ambient,
            v_grid,
            seeds,
            t_subdiv: TSubdiv::Auto,
            alpha0: 0.5,
            perturb_budget: 12,
            crossing_samples: 64,
        }
    }
}

/// One pipeline run. `wall_time_s` is the only nondeterministic field and is
/// therefore kept out of the CSV rendering.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub schema_version: u32,
    pub complex_id: String,
    pub v: usize,
    pub k: usize,
    pub n: usize,
    pub seed: u64,
    pub alpha0_final: Option<f64>,
    pub r_pre: Option<f64>,
    pub r_final: Option<f64>,
    pub gg_pre: Option<f64>,
    pub gg_post: Option<f64>,
    pub min_link_thickness: Option<f64>,
    pub max_crossing: Option<usize>,
    pub per_color_max_crossing: Vec<usize>,
    pub wall_time_s: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingStudy {
    pub schema_version: u32,
    pub config: StudyConfig,
    /// Least squares over (log V, log R_final) of successful trials.
    pub radius_fit: Option<Fit>,
    /// Least squares over (log V, max_crossing) of successful trials.
    pub crossing_fit: Option<Fit>,
    pub median_r_final: Vec<(usize, f64)>,
    pub median_max_crossing: Vec<(usize, f64)>,
    pub failed_trials: usize,
    /// Set when the grid has fewer than two distinct V values.
    pub insufficient_grid: bool,
    pub records: Vec<TrialRecord>,
}

pub fn resolve_t_subdiv(t: &TSubdiv, v: usize, n: usize, k: usize) -> usize {
    match *t {
        TSubdiv::Fixed(t) => t.max(1),
        TSubdiv::Auto => {
            let r = (v as f64).powf(1.0 / (n - k) as f64);
            ((r / 2.0).round() as usize).max(1)
        }
    }
}

fn run_trial(config: &StudyConfig, v: usize, seed: u64) -> TrialRecord {
    let spec = config.family.spec(v);
    let start = Instant::now();
    let mut record = TrialRecord {
        schema_version: SCHEMA_VERSION,
        complex_id: format!("{}#seed{}", spec, seed),
        v,
        k: 0,
        n: config.ambient,
        seed,
        alpha0_final: None,
        r_pre: None,
        r_final: None,
        gg_pre: None,
        gg_post: None,
        min_link_thickness: None,
        max_crossing: None,
        per_color_max_crossing: Vec::new(),
        wall_time_s: None,
        error: None,
    };
    let outcome: Result<(), Error> = (|| {
        let x = generate_family(&spec, seed)?;
        record.k = x.dimension();
        let mut params = PipelineParams::new(config.ambient, seed);
        params.alpha0 = config.alpha0;
        params.t_subdiv = resolve_t_subdiv(&config.t_subdiv, v, config.ambient, x.dimension());
        params.perturb_budget = config.perturb_budget;
        params.crossing_samples = config.crossing_samples;
        // the final embedding is normalized to thickness 1, so unit balls are
        // the natural probe for the crossing counts under study
        params.crossing_radius = Some(1.0);
        let res = run_pipeline(&x, &params)?;
        record.alpha0_final = Some(res.alpha0_final);
        record.r_pre = Some(res.radius_initial);
        record.r_final = Some(res.r_final);
        record.gg_pre = res.report_before.gg_thickness;
        record.gg_post = res.report_after.gg_thickness;
        record.min_link_thickness = res.report_final.min_link_thickness;
        record.max_crossing = Some(res.crossing.overall_max);
        record.per_color_max_crossing = res.crossing.per_color_max;
        Ok(())
    })();
    if let Err(e) = outcome {
        record.error = Some(e.to_string());
    }
    record.wall_time_s = Some(start.elapsed().as_secs_f64());
    record
}

/// Runs every (V, seed) trial (seed-level parallelism, results merged in grid
/// order) and fits the growth laws. Aborts when more than half the trials at
/// any V fail.
pub fn run_scaling_study(config: &StudyConfig) -> Result<ScalingStudy, Error> {
    let tasks: Vec<(usize, u64)> = config
        .v_grid
        .iter()
        .flat_map(|&v| (0..config.seeds).map(move |s| (v, s)))
        .collect();
    let mut records: Vec<TrialRecord> =
        tasks.par_iter().map(|&(v, seed)| run_trial(config, v, seed)).collect();
    records.sort_by_key(|r| (r.v, r.seed));

    for &v in &config.v_grid {
        let at_v: Vec<&TrialRecord> = records.iter().filter(|r| r.v == v).collect();
        let failed = at_v.iter().filter(|r| r.error.is_some()).count();
        if 2 * failed > at_v.len() {
            return Err(Error::Saturation {
                rounds: failed,
                constraint: format!(
                    "{} of {} trials failed at V={} (first: {})",
                    failed,
                    at_v.len(),
                    v,
                    at_v.iter().find_map(|r| r.error.clone()).unwrap_or_default()
                ),
            });
        }
    }

    let mut distinct_v: Vec<usize> = config.v_grid.clone();
    distinct_v.sort_unstable();
    distinct_v.dedup();
    let insufficient_grid = distinct_v.len() < 2;

    let ok = |r: &&TrialRecord| r.error.is_none();
    let radius_points: Vec<(f64, f64)> = records
        .iter()
        .filter(ok)
        .filter_map(|r| r.r_final.map(|rf| ((r.v as f64).ln(), rf.ln())))
        .collect();
    let crossing_points: Vec<(f64, f64)> = records
        .iter()
        .filter(ok)
        .filter_map(|r| r.max_crossing.map(|c| ((r.v as f64).ln(), c as f64)))
        .collect();
    let radius_fit = if insufficient_grid { None } else { least_squares(&radius_points) };
    let crossing_fit = if insufficient_grid { None } else { least_squares(&crossing_points) };

    let median_of = |mut xs: Vec<f64>| -> Option<f64> {
        if xs.is_empty() {
            return None;
        }
        xs.sort_by(f64::total_cmp);
        let m = xs.len() / 2;
        Some(if xs.len() % 2 == 1 { xs[m] } else { 0.5 * (xs[m - 1] + xs[m]) })
    };
    let mut median_r_final = Vec::new();
    let mut median_max_crossing = Vec::new();
    for &v in &distinct_v {
        let rs: Vec<f64> = records
            .iter()
            .filter(|r| r.v == v && r.error.is_none())
            .filter_map(|r| r.r_final)
            .collect();
        if let Some(m) = median_of(rs) {
            median_r_final.push((v, m));
        }
        let cs: Vec<f64> = records
            .iter()
            .filter(|r| r.v == v && r.error.is_none())
            .filter_map(|r| r.max_crossing.map(|c| c as f64))
            .collect();
        if let Some(m) = median_of(cs) {
            median_max_crossing.push((v, m));
        }
    }

    Ok(ScalingStudy {
        schema_version: SCHEMA_VERSION,
        config: config.clone(),
        radius_fit,
        crossing_fit,
        median_r_final,
        median_max_crossing,
        failed_trials: records.iter().filter(|r| r.error.is_some()).count(),
        insufficient_grid,
        records,
    })
}

/// Ordinary least squares y = intercept + slope * x, with R².
pub fn least_squares(points: &[(f64, f64)]) -> Option<Fit> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx <= 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot: f64 = points.iter().map(|p| (p.1 - my) * (p.1 - my)).sum();
    let ss_res: f64 = points
        .iter()
        .map(|p| {
            let e = p.1 - (intercept + slope * p.0);
            e * e
        })
        .sum();
    let r_squared = if ss_tot > 0.0 { 1.0 - ss_res / ss_tot } else { 1.0 };
    Some(Fit { slope, intercept, r_squared })
}

fn opt_cell<T: std::fmt::Display>(x: &Option<T>) -> String {
    x.as_ref().map(|v| v.to_string()).unwrap_or_default()
}

/// CSV rendering, one row per trial. Deterministic for fixed config and
/// seeds: the wall-time field is deliberately omitted.
pub fn records_csv(records: &[TrialRecord]) -> String {
    let mut out = String::from(
        "schema_version,complex_id,v,k,n,seed,alpha0_final,r_pre,r_final,gg_pre,gg_post,min_link_thickness,max_crossing,per_color_max_crossing,error\n",
    );
    for r in records {
        let per_color: Vec<String> = r.per_color_max_crossing.iter().map(|c| c.to_string()).collect();
        let error = r.error.as_deref().unwrap_or("").replace(',', ";").replace('\n', " ");
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.schema_version,
            r.complex_id,
            r.v,
            r.k,
            r.n,
            r.seed,
            opt_cell(&r.alpha0_final),
            opt_cell(&r.r_pre),
            opt_cell(&r.r_final),
            opt_cell(&r.gg_pre),
            opt_cell(&r.gg_post),
            opt_cell(&r.min_link_thickness),
            opt_cell(&r.max_crossing),
            per_color.join(";"),
            error,
        ));
    }
    out
}

/// JSON-lines rendering (includes wall times).
pub fn records_jsonl(records: &[TrialRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("record serializes"));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_squares_exact_line() {
        let pts: Vec<(f64, f64)> = (0..10).map(|i| (i as f64, 3.0 + 2.0 * i as f64)).collect();
        let fit = least_squares(&pts).unwrap();
        assert!((fit.slope - 2.0).abs() < 1e-12);
        assert!((fit.intercept - 3.0).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_grid_reports_insufficient() {
        let mut config = StudyConfig::new(StudyFamily::Cycle, 3, vec![16], 2);
        config.crossing_samples = 4;
        config.perturb_budget = 2;
        let study = run_scaling_study(&config).unwrap();
        assert!(study.insufficient_grid);
        assert!(study.radius_fit.is_none());
        assert_eq!(study.records.len(), 2);
    }

    #[test]
    fn study_records_deterministic_csv() {
        let mut config = StudyConfig::new(StudyFamily::Cycle, 3, vec![12, 16], 2);
        config.crossing_samples = 4;
        config.perturb_budget = 2;
        let a = run_scaling_study(&config).unwrap();
        let b = run_scaling_study(&config).unwrap();
        assert_eq!(records_csv(&a.records), records_csv(&b.records));
        assert!(a.records.iter().all(|r| r.error.is_none()));
    }

    #[test]
    fn t_subdiv_resolution() {
        assert_eq!(resolve_t_subdiv(&TSubdiv::Fixed(3), 999, 3, 1), 3);
        // V = 64, n - k = 2: R = 8, auto t = 4
        assert_eq!(resolve_t_subdiv(&TSubdiv::Auto, 64, 3, 1), 4);
        assert_eq!(resolve_t_subdiv(&TSubdiv::Auto, 4, 3, 1), 1);
    }
}
