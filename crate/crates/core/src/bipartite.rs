//! Qudit–bath pure states, Schmidt decomposition and scalar entanglement
//! measures.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{svd, ComplexMatrix};

/// Default cutoff separating genuine Schmidt probabilities from round-off.
pub const DEFAULT_TOL_RANK: f64 = 1e-12;

/// Tolerance on `Σ|ψ|² = 1` for a constructed state.
pub const STATE_NORM_TOL: f64 = 1e-12;

/// Tolerance on `Σ p_j = 1` for a spectrum.
pub const SPECTRUM_SUM_TOL: f64 = 1e-10;

/// Normalized amplitudes `ψ[j][k]` of `Σ ψ[j][k] |j⟩_q |k⟩_B`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartitePureState {
    dim_q: usize,
    dim_b: usize,
    amplitudes: Vec<Complex64>,
}

impl BipartitePureState {
    /// Requires `Σ|ψ|² = 1` to within [`STATE_NORM_TOL`].
    pub fn new(dim_q: usize, dim_b: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_shape(dim_q, dim_b, amplitudes.len())?;
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > STATE_NORM_TOL {
            return Err(Error::NotNormalized { norm: norm_sqr.sqrt() });
        }
        Ok(Self { dim_q, dim_b, amplitudes })
    }

    /// Divides by the norm first. Fails only for a zero vector.
    pub fn normalized(dim_q: usize, dim_b: usize, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        check_shape(dim_q, dim_b, amplitudes.len())?;
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized { norm });
        }
        for z in amplitudes.iter_mut() {
            *z /= norm;
        }
        Ok(Self { dim_q, dim_b, amplitudes })
    }

    /// The product state `|j⟩_q |k⟩_B` (0-based labels).
    pub fn product(dim_q: usize, dim_b: usize, j: usize, k: usize) -> Result<Self> {
        check_shape(dim_q, dim_b, dim_q * dim_b)?;
        if j >= dim_q || k >= dim_b {
            return Err(Error::DimensionMismatch(format!("basis state ({j}, {k}) in {dim_q}x{dim_b}")));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim_q * dim_b];
        amplitudes[j * dim_b + k] = Complex64::new(1.0, 0.0);
        Ok(Self { dim_q, dim_b, amplitudes })
    }

    pub fn dim_q(&self) -> usize {
        self.dim_q
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// The `dim_q × dim_b` coefficient grid.
    pub fn amplitude_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_row_major(self.dim_q, self.dim_b, self.amplitudes.clone()).expect("shape checked")
    }
}

fn check_shape(dim_q: usize, dim_b: usize, len: usize) -> Result<()> {
    if dim_q == 0 || dim_b == 0 {
        return Err(Error::DimensionMismatch(format!("dimensions {dim_q}x{dim_b} must be positive")));
    }
    if dim_q * dim_b != len {
        return Err(Error::DimensionMismatch(format!(
            "{len} amplitudes for dimensions {dim_q}x{dim_b}"
        )));
    }
    Ok(())
}

/// Eigenvalues of a reduced density operator, strictly positive and sorted
/// in descending order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntanglementSpectrum {
    probabilities: Vec<f64>,
}

impl EntanglementSpectrum {
    pub fn new(probabilities: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(probabilities, DEFAULT_TOL_RANK)
    }

    /// Drops entries `≤ tol_rank` and sorts descending (stable, so equal
    /// values keep their input order). The kept values must sum to one
    /// within [`SPECTRUM_SUM_TOL`]; they are not rescaled.
    pub fn with_tolerance(probabilities: Vec<f64>, tol_rank: f64) -> Result<Self> {
        if let Some(bad) = probabilities.iter().find(|p| !p.is_finite() || **p < -tol_rank) {
            return Err(Error::InvalidSpectrum(format!("probability {bad}")));
        }
        if let Some(big) = probabilities.iter().find(|p| **p > 1.0 + SPECTRUM_SUM_TOL) {
            return Err(Error::InvalidSpectrum(format!("probability {big} exceeds one")));
        }
        let mut kept: Vec<f64> = probabilities.into_iter().filter(|p| *p > tol_rank).collect();
        if kept.is_empty() {
            return Err(Error::InvalidSpectrum("no probability above the rank tolerance".into()));
        }
        kept.sort_by(|a, b| b.total_cmp(a));
        let total: f64 = kept.iter().sum();
        if (total - 1.0).abs() > SPECTRUM_SUM_TOL {
            return Err(Error::InvalidSpectrum(format!("probabilities sum to {total}")));
        }
        Ok(Self { probabilities: kept })
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn rank(&self) -> usize {
        self.probabilities.len()
    }

    pub fn purity(&self) -> f64 {
        self.probabilities.iter().map(|p| p * p).sum()
    }

    /// Spectrum padded with zeros to length `n`, for use with su(n) generators.
    pub fn padded(&self, n: usize) -> Vec<f64> {
        let mut out = self.probabilities.clone();
        out.resize(n.max(out.len()), 0.0);
        out
    }
}

/// Result of [`schmidt`]: spectrum plus the Schmidt vectors as matrix columns.
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition {
    pub spectrum: EntanglementSpectrum,
    /// `dim_q × rank`, column `j` is `|j_q⟩`.
    pub basis_q: ComplexMatrix,
    /// `dim_b × rank`, column `j` is `|j_B⟩`.
    pub basis_b: ComplexMatrix,
}

/// `|ψ⟩ = Σ_j √p_j |j_q⟩ |j_B⟩` from the SVD of the amplitude grid.
///
/// Probabilities `≤ tol_rank` are discarded and the rest renormalized, as long
/// as the discarded mass stays within `10 · tol_rank`.
pub fn schmidt(state: &BipartitePureState, tol_rank: f64) -> Result<SchmidtDecomposition> {
    let decomposition = svd(&state.amplitude_matrix());
    let probabilities: Vec<f64> = decomposition.singular_values.iter().map(|s| s * s).collect();
    let keep: Vec<usize> = (0..probabilities.len()).filter(|&i| probabilities[i] > tol_rank).collect();
    let discarded: f64 = (0..probabilities.len())
        .filter(|i| !keep.contains(i))
        .map(|i| probabilities[i])
        .sum();
    if discarded > 10.0 * tol_rank || keep.is_empty() {
        return Err(Error::RankToleranceFailure { tol_rank, discarded });
    }
    let kept_total: f64 = keep.iter().map(|&i| probabilities[i]).sum();
    let spectrum = EntanglementSpectrum {
        probabilities: keep.iter().map(|&i| probabilities[i] / kept_total).collect(),
    };
    let rank = keep.len();
    let basis_q = ComplexMatrix::from_fn(state.dim_q, rank, |i, j| decomposition.left[(i, keep[j])]);
    let basis_b = ComplexMatrix::from_fn(state.dim_b, rank, |i, j| decomposition.right_dagger[(keep[j], i)]);
    Ok(SchmidtDecomposition { spectrum, basis_q, basis_b })
}

/// Which side of the bipartition to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Partition {
    Subsystem,
    Bath,
}

/// Partial trace over the other side.
pub fn reduced_density(state: &BipartitePureState, which: Partition) -> ComplexMatrix {
    let psi = state.amplitude_matrix();
    match which {
        // ρ_q = Ψ Ψ†
        Partition::Subsystem => &psi * &psi.adjoint(),
        // ρ_B = Ψᵀ Ψ*
        Partition::Bath => &psi.transpose() * &psi.conj(),
    }
}

/// Purity, linear entropy, von Neumann entropy (natural log) and
/// generalized concurrence of one spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureSet {
    pub purity: f64,
    pub linear_entropy: f64,
    pub von_neumann: f64,
    pub concurrence: f64,
}

pub fn measures(spectrum: &EntanglementSpectrum) -> MeasureSet {
    let purity = spectrum.purity();
    let linear_entropy = 1.0 - purity;
    let von_neumann = spectrum
        .probabilities()
        .iter()
        .filter(|p| **p > 0.0)
        .map(|p| -p * p.ln())
        .sum::<f64>()
        .max(0.0);
    // C = √(2 S_L); clamp round-off below zero for pure states
    let concurrence = (2.0 * linear_entropy).max(0.0).sqrt();
    MeasureSet { purity, linear_entropy, von_neumann, concurrence }
}

/// Variance of the entanglement Hamiltonian `H = −ln ρ`:
/// `Σ p (ln p)² − (Σ p ln p)²`.
pub fn entanglement_hamiltonian_variance(probabilities: &[f64]) -> Result<f64> {
    if let Some(i) = probabilities.iter().position(|p| *p == 0.0) {
        return Err(Error::DegenerateLog(i));
    }
    if let Some(bad) = probabilities.iter().find(|p| !p.is_finite() || **p < 0.0) {
        return Err(Error::InvalidSpectrum(format!("probability {bad}")));
    }
    let mean: f64 = probabilities.iter().map(|p| p * p.ln()).sum();
    let mean_square: f64 = probabilities.iter().map(|p| p * p.ln().powi(2)).sum();
    Ok((mean_square - mean * mean).max(0.0))
}

/// `C ln(1 + √(1 − C²)) − C ln C` for a qubit with concurrence `C`.
///
/// This is the standard deviation of the qubit entanglement Hamiltonian;
/// [`entanglement_hamiltonian_variance`] equals its square.
pub fn qubit_hamiltonian_closed_form(concurrence: f64) -> f64 {
    if concurrence <= 0.0 {
        return 0.0;
    }
    let c = concurrence.min(1.0);
    c * (1.0 + (1.0 - c * c).sqrt()).ln() - c * c.ln()
}
