use std::path::{Path, PathBuf};

use fluctent::aklt::{self, MAX_ORACLE_BLOCK};
use fluctent::bipartite::{measures, schmidt, MeasureSet};
use fluctent::fluctuation::diagonal_fluctuation;
use fluctent::free_fermion::sweep;
use fluctent::validate::{self, ValidationSummary};
use fluctent::{Error, FluctuationReport};
use serde::Serialize;
use serde_json::json;

use crate::error::CliError;
use crate::output::{emit, float_cell, to_pretty_json, write_table, RunManifest};
use crate::state_file::{self, NORM_TOL};

/// Longest block tabulated from the closed form alone.
pub const MAX_CLOSED_FORM_BLOCK: usize = 64;

#[derive(Debug, Serialize)]
pub struct AnalyzeOutput {
    pub manifest: RunManifest,
    pub dim_q: usize,
    pub dim_b: usize,
    pub rank: usize,
    pub spectrum: Vec<f64>,
    pub report: FluctuationReport,
    pub measures: MeasureSet,
    pub residuals: Residuals,
}

#[derive(Debug, Serialize)]
pub struct Residuals {
    /// `|Δ²w − 2 (1 − γ)|`
    pub main_relation: f64,
    /// `|Δ²w − C²|`
    pub concurrence: f64,
    /// `|Δ²Λ − 2 (N − γ)|`
    pub generator: f64,
}

pub struct AnalyzeArgs<'a> {
    pub state: &'a Path,
    pub dim_q: Option<usize>,
    pub dim_b: Option<usize>,
    pub tol_rank: f64,
    pub out: Option<&'a Path>,
}

pub fn analyze(args: &AnalyzeArgs) -> Result<AnalyzeOutput, CliError> {
    let loaded = state_file::load(args.state, args.dim_q, args.dim_b)?;
    if loaded.norm_deviation > NORM_TOL {
        eprintln!(
            "warning: {}: state norm off by {:.3e}; renormalized",
            args.state.display(),
            loaded.norm_deviation
        );
    }
    let state = loaded.state;
    let spectrum = schmidt(&state, args.tol_rank)?.spectrum;
    // A product state has rank one; padding to su(2) is exact (zeros do not
    // change the fluctuation) and gives the expected total of zero.
    let report = diagonal_fluctuation(&spectrum.padded(2))?;
    let measures = measures(&spectrum);
    let residuals = Residuals {
        main_relation: report.residual_main,
        concurrence: (report.total - measures.concurrence.powi(2)).abs(),
        generator: report.residual_generator,
    };
    let manifest = RunManifest::new(
        "analyze",
        json!({
            "state": args.state,
            "dim_q": state.dim_q(),
            "dim_b": state.dim_b(),
            "tol_rank": args.tol_rank,
        }),
        args.out,
    );
    Ok(AnalyzeOutput {
        manifest,
        dim_q: state.dim_q(),
        dim_b: state.dim_b(),
        rank: spectrum.rank(),
        spectrum: spectrum.probabilities().to_vec(),
        report,
        measures,
        residuals,
    })
}

pub fn run_analyze(args: &AnalyzeArgs) -> Result<(), CliError> {
    let output = analyze(args)?;
    emit(args.out, to_pretty_json(&output).as_bytes())
}

/// Rows sorted by filling, then block size; repeated fillings appear once.
pub fn free_fermion_rows(fillings: &[f64], m_max: usize) -> Result<Vec<Vec<String>>, CliError> {
    let mut fillings = fillings.to_vec();
    fillings.sort_by(f64::total_cmp);
    fillings.dedup();
    let sizes: Vec<usize> = (1..=m_max).collect();
    Ok(sweep(&fillings, &sizes)?
        .into_iter()
        .map(|r| vec![float_cell(r.filling), r.block_size.to_string(), float_cell(r.linear_entropy), float_cell(r.purity)])
        .collect())
}

pub fn run_free_fermion(fillings: &[f64], m_max: usize, out: &Path) -> Result<(), CliError> {
    let rows = free_fermion_rows(fillings, m_max)?;
    let manifest = RunManifest::new("free-fermion", json!({ "nu": fillings, "m_max": m_max }), Some(out));
    write_table(out, &["nu", "M", "S_L", "purity"], &rows, &manifest)
}

pub fn aklt_header(with_oracle: bool) -> Vec<&'static str> {
    let mut header = vec!["l", "p1", "p2", "p3", "p4", "fluctuation", "purity"];
    if with_oracle {
        header.push("oracle_max_dev");
    }
    header
}

pub fn aklt_rows(l_max: usize, with_oracle: bool) -> Result<Vec<Vec<String>>, CliError> {
    let limit = if with_oracle { MAX_ORACLE_BLOCK } else { MAX_CLOSED_FORM_BLOCK };
    if l_max > limit {
        return Err(Error::BlockTooLong { length: l_max, limit }.into());
    }
    (1..=l_max)
        .map(|l| {
            let mut row = vec![l.to_string()];
            row.extend(aklt::closed_form_probabilities(l).map(float_cell));
            row.push(float_cell(aklt::aklt_fluctuation(l)));
            row.push(float_cell(aklt::aklt_purity(l)));
            if with_oracle {
                row.push(float_cell(aklt::oracle_max_deviation(l)?));
            }
            Ok(row)
        })
        .collect()
}

pub fn run_aklt(l_max: usize, with_oracle: bool, out: &Path) -> Result<(), CliError> {
    let rows = aklt_rows(l_max, with_oracle)?;
    let manifest = RunManifest::new("aklt", json!({ "l_max": l_max, "with_oracle": with_oracle }), Some(out));
    write_table(out, &aklt_header(with_oracle), &rows, &manifest)
}

#[derive(Debug, Serialize)]
pub struct ValidateOutput {
    pub manifest: RunManifest,
    #[serde(flatten)]
    pub summary: ValidationSummary,
}

pub fn run_validate(seed: u64, samples: usize, out: Option<PathBuf>) -> Result<(), CliError> {
    let summary = validate::run(seed, samples);
    let failed = summary.properties.iter().filter(|p| !p.passed).count();
    let total = summary.properties.len();
    let manifest =
        RunManifest::new("validate", json!({ "seed": seed, "samples": samples }), out.as_deref()).with_seed(seed);
    emit(out.as_deref(), to_pretty_json(&ValidateOutput { manifest, summary }).as_bytes())?;
    if failed > 0 {
        return Err(CliError::ValidationFailed(failed, total));
    }
    Ok(())
}
