//! Schmidt polarization fluctuations.
//!
//! With `ρ_q = diag(p_1, …, p_N)` in its Schmidt basis, the `N − 1` diagonal
//! generators `w_k` commute with `ρ_q` and their summed variance
//!
//! ```text
//! Δ²w = Σ_k [tr(w_k² ρ_q) − (tr w_k ρ_q)²]
//! ```
//!
//! equals `2 (1 − γ)`. The report computes the left side from explicit
//! generator traces and carries the closed form only as a cross-check.

use serde::Serialize;

use crate::bipartite::{EntanglementSpectrum, SPECTRUM_SUM_TOL};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::su_n::{diagonal_generators, total_generator_fluctuation_streamed};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FluctuationReport {
    /// Dimension `N` of the generators used (the spectrum length).
    pub dimension: usize,
    /// `⟨w_1⟩ … ⟨w_(N−1)⟩`.
    pub expectations: Vec<f64>,
    /// `Δ²w_1 … Δ²w_(N−1)`.
    pub per_component: Vec<f64>,
    /// `Δ²w`, the sum of `per_component`.
    pub total: f64,
    pub purity: f64,
    pub linear_entropy: f64,
    pub concurrence: f64,
    /// `Δ²Λ` over all `N² − 1` generators.
    pub generator_total: f64,
    /// `|Δ²w − 2 (1 − γ)|`.
    pub residual_main: f64,
    /// `|Δ²Λ − 2 (N − γ)|`.
    pub residual_generator: f64,
}

/// `⟨w_k⟩ = √(2 / (k (k + 1))) (Σ_{j ≤ k} p_j − k p_(k+1))` for the
/// descending spectrum.
pub fn polarization_expectations(spectrum: &EntanglementSpectrum) -> Result<Vec<f64>> {
    polarization_expectations_of(spectrum.probabilities())
}

/// [`polarization_expectations`] for probabilities in a caller-chosen order.
pub fn polarization_expectations_of(probabilities: &[f64]) -> Result<Vec<f64>> {
    let n = probabilities.len();
    if n < 2 {
        return Err(Error::RankTooSmall(n));
    }
    let mut head = 0.0;
    Ok((1..n)
        .map(|k| {
            head += probabilities[k - 1];
            let kf = k as f64;
            (2.0 / (kf * (kf + 1.0))).sqrt() * (head - kf * probabilities[k])
        })
        .collect())
}

/// Fluctuation report for the descending spectrum. Needs rank ≥ 2.
pub fn schmidt_polarization_fluctuation(spectrum: &EntanglementSpectrum) -> Result<FluctuationReport> {
    diagonal_fluctuation(spectrum.probabilities())
}

/// Fluctuation report for `ρ = diag(probabilities)` using su(N) generators
/// with `N = probabilities.len()`.
///
/// The order of `probabilities` fixes which basis state each `w_k` refers to,
/// and zeros are allowed, so this also evaluates permuted or zero-padded
/// spectra.
pub fn diagonal_fluctuation(probabilities: &[f64]) -> Result<FluctuationReport> {
    let n = probabilities.len();
    if n < 2 {
        return Err(Error::RankTooSmall(n));
    }
    if let Some(bad) = probabilities.iter().find(|p| !p.is_finite() || **p < 0.0 || **p > 1.0 + SPECTRUM_SUM_TOL) {
        return Err(Error::InvalidSpectrum(format!("probability {bad}")));
    }
    let sum: f64 = probabilities.iter().sum();
    if (sum - 1.0).abs() > SPECTRUM_SUM_TOL {
        return Err(Error::InvalidSpectrum(format!("probabilities sum to {sum}")));
    }

    let rho = ComplexMatrix::from_real_diagonal(probabilities);
    let mut expectations = Vec::with_capacity(n - 1);
    let mut per_component = Vec::with_capacity(n - 1);
    for w in diagonal_generators(n)? {
        let mean = w.trace_product(&rho)?.re;
        let mean_square = (&w * &w).trace_product(&rho)?.re;
        expectations.push(mean);
        per_component.push(mean_square - mean * mean);
    }
    let total: f64 = per_component.iter().sum();

    let purity: f64 = probabilities.iter().map(|p| p * p).sum();
    let linear_entropy = 1.0 - purity;
    let concurrence = (2.0 * linear_entropy).max(0.0).sqrt();
    let generator_total = total_generator_fluctuation_streamed(&rho)?;

    Ok(FluctuationReport {
        dimension: n,
        expectations,
        per_component,
        total,
        purity,
        linear_entropy,
        concurrence,
        generator_total,
        residual_main: (total - 2.0 * (1.0 - purity)).abs(),
        residual_generator: (generator_total - 2.0 * (n as f64 - purity)).abs(),
    })
}

/// `Δ²w = 4 p (1 − p)` for a qubit with Schmidt probabilities `(p, 1 − p)`.
pub fn qubit_polarization_fluctuation(p: f64) -> f64 {
    4.0 * p * (1.0 - p)
}

fn check_component(f: f64) -> Result<()> {
    if !(0.0..2.0).contains(&f) {
        return Err(Error::OutOfRange(f));
    }
    Ok(())
}

/// Purity of `ρ_1 ⊗ … ⊗ ρ_M` from the factor fluctuations,
/// `γ = Π_j (1 − Δ²w⁽ʲ⁾ / 2)`.
pub fn composite_purity(component_fluctuations: &[f64]) -> Result<f64> {
    component_fluctuations.iter().try_fold(1.0, |gamma, &f| {
        check_component(f)?;
        Ok(gamma * (1.0 - 0.5 * f))
    })
}

/// `|f1 + f2 − f1 f2 / 2 − 2 (1 − γ)|` with `γ` from [`composite_purity`].
pub fn two_component_relation_residual(f1: f64, f2: f64) -> Result<f64> {
    let gamma = composite_purity(&[f1, f2])?;
    Ok((f1 + f2 - 0.5 * f1 * f2 - 2.0 * (1.0 - gamma)).abs())
}
