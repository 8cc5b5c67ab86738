//! Block entanglement of free spinless fermions on an infinite chain.
//!
//! The ground-state correlations `⟨c_m† c_n⟩` at filling `ν` form the sine
//! kernel `sin(π ν r) / (π r)`, `r = m − n`. Restricted to a block of `M`
//! sites, its eigenvalues `p⁽ʲ⁾` are mode occupations; the block reduced
//! density operator factorizes into `M` independent qubits with
//! `Δ²w⁽ʲ⁾ = 4 p⁽ʲ⁾ (1 − p⁽ʲ⁾)`, and the purity follows from the product
//! rule in [`composite_purity`](crate::fluctuation::composite_purity).
//!
//! [`finite_ring_oracle`] rebuilds the same correlations from an explicit
//! Fermi sea on a periodic ring and converges to the kernel as `1/L`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fluctuation::{composite_purity, qubit_polarization_fluctuation};
use crate::matrix::{hermitian_eigenvalues, ComplexMatrix, DEFAULT_HERMITIAN_TOL};

/// Occupations may leave `[0, 1]` by this much before being treated as an error.
pub const OCCUPATION_CLAMP_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FermionBlockConfig {
    filling: f64,
    block_size: usize,
}

impl FermionBlockConfig {
    pub fn new(filling: f64, block_size: usize) -> Result<Self> {
        if !(filling > 0.0 && filling < 1.0) {
            return Err(Error::InvalidFilling(filling));
        }
        if block_size == 0 {
            return Err(Error::InvalidBlockSize(block_size));
        }
        Ok(Self { filling, block_size })
    }

    pub fn filling(&self) -> f64 {
        self.filling
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }
}

/// `sin(π ν r) / (π r)`, with value `ν` at `r = 0`.
pub fn sine_kernel(filling: f64, r: i64) -> f64 {
    if r == 0 {
        filling
    } else {
        let r = r as f64;
        (PI * filling * r).sin() / (PI * r)
    }
}

/// The `M × M` block correlation matrix, real symmetric Toeplitz.
pub fn correlation_matrix(cfg: &FermionBlockConfig) -> ComplexMatrix {
    let m = cfg.block_size;
    let kernel: Vec<f64> = (0..m as i64).map(|r| sine_kernel(cfg.filling, r)).collect();
    ComplexMatrix::from_fn(m, m, |i, j| Complex64::new(kernel[i.abs_diff(j)], 0.0))
}

/// Eigenvalues of the correlation matrix, descending, clamped into `[0, 1]`.
pub fn mode_occupations(cfg: &FermionBlockConfig) -> Result<Vec<f64>> {
    let eigenvalues = hermitian_eigenvalues(&correlation_matrix(cfg), DEFAULT_HERMITIAN_TOL)?;
    eigenvalues
        .into_iter()
        .rev()
        .map(|p| {
            if !(-OCCUPATION_CLAMP_TOL..=1.0 + OCCUPATION_CLAMP_TOL).contains(&p) {
                Err(Error::SpectrumOutOfRange(p))
            } else {
                Ok(p.clamp(0.0, 1.0))
            }
        })
        .collect()
}

/// Block purity `Π_j (1 − 2 p⁽ʲ⁾ (1 − p⁽ʲ⁾))`.
pub fn block_purity(cfg: &FermionBlockConfig) -> Result<f64> {
    let fluctuations: Vec<f64> =
        mode_occupations(cfg)?.into_iter().map(qubit_polarization_fluctuation).collect();
    composite_purity(&fluctuations)
}

/// Block linear entropy `1 − γ`.
pub fn block_linear_entropy(cfg: &FermionBlockConfig) -> Result<f64> {
    Ok(1.0 - block_purity(cfg)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub filling: f64,
    pub block_size: usize,
    pub linear_entropy: f64,
    pub purity: f64,
}

/// One row per `(ν, M)`, filling-major, in input order. Rows are computed in
/// parallel; each row is independent so the table does not depend on
/// scheduling.
pub fn sweep(fillings: &[f64], block_sizes: &[usize]) -> Result<Vec<SweepRow>> {
    let configs = fillings
        .iter()
        .flat_map(|&nu| block_sizes.iter().map(move |&m| FermionBlockConfig::new(nu, m)))
        .collect::<Result<Vec<_>>>()?;
    configs
        .par_iter()
        .map(|cfg| {
            let purity = block_purity(cfg)?;
            Ok(SweepRow {
                filling: cfg.filling,
                block_size: cfg.block_size,
                linear_entropy: 1.0 - purity,
                purity,
            })
        })
        .collect()
}

/// Ground-state correlations of `⌊ν L⌋` fermions on a ring of `L` sites.
///
/// Filled momenta `k` form a contiguous window around zero (one extra mode
/// on the positive side when the count is even), and
/// `C[m][n] = (1/L) Σ_k exp(2πi k (m − n) / L)`. Requires `L ≥ 100 M`.
pub fn finite_ring_oracle(cfg: &FermionBlockConfig, ring_size: usize) -> Result<ComplexMatrix> {
    let m = cfg.block_size;
    if ring_size < 100 * m {
        return Err(Error::DimensionMismatch(format!(
            "ring of {ring_size} sites is too small for a block of {m} (need {})",
            100 * m
        )));
    }
    let filled = (cfg.filling * ring_size as f64).floor() as i64;
    let k_min = -((filled - 1).max(0) / 2);
    let ring = ring_size as f64;
    let by_offset: Vec<Complex64> = (0..m as i64)
        .map(|r| {
            (k_min..k_min + filled)
                .map(|k| Complex64::from_polar(1.0, 2.0 * PI * (k * r) as f64 / ring))
                .sum::<Complex64>()
                / ring
        })
        .collect();
    Ok(ComplexMatrix::from_fn(m, m, |i, j| {
        if i >= j {
            by_offset[i - j]
        } else {
            by_offset[j - i].conj()
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_PI;

    fn cfg(nu: f64, m: usize) -> FermionBlockConfig {
        FermionBlockConfig::new(nu, m).unwrap()
    }

    #[test]
    fn config_validation() {
        assert_eq!(FermionBlockConfig::new(0.0, 3), Err(Error::InvalidFilling(0.0)));
        assert_eq!(FermionBlockConfig::new(1.0, 3), Err(Error::InvalidFilling(1.0)));
        assert!(FermionBlockConfig::new(f64::NAN, 3).is_err());
        assert_eq!(FermionBlockConfig::new(0.5, 0), Err(Error::InvalidBlockSize(0)));
    }

    #[test]
    fn half_filling_kernel_entries() {
        let c = correlation_matrix(&cfg(0.5, 4));
        assert!((c[(0, 1)].re - FRAC_1_PI).abs() < 1e-16);
        assert!(c[(0, 2)].re.abs() < 1e-16);
        assert!((c[(3, 3)].re - 0.5).abs() < 1e-16);
        assert!(c.is_hermitian(0.0));
    }

    #[test]
    fn single_site() {
        for nu in [0.1, 0.37, 0.5] {
            let c = cfg(nu, 1);
            assert_eq!(correlation_matrix(&c)[(0, 0)].re, nu);
            assert_eq!(mode_occupations(&c).unwrap(), vec![nu]);
        }
    }

    #[test]
    fn two_sites_half_filling() {
        let p = mode_occupations(&cfg(0.5, 2)).unwrap();
        assert!((p[0] - (0.5 + FRAC_1_PI)).abs() < 1e-15);
        assert!((p[1] - (0.5 - FRAC_1_PI)).abs() < 1e-15);
    }

    #[test]
    fn particle_hole_mirror() {
        for m in [3, 8, 17] {
            let a = mode_occupations(&cfg(0.3, m)).unwrap();
            let b = mode_occupations(&cfg(0.7, m)).unwrap();
            for (x, y) in a.iter().zip(b.iter().rev()) {
                assert!((x - (1.0 - y)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn trace_identity() {
        let c = cfg(0.23, 40);
        let total: f64 = mode_occupations(&c).unwrap().iter().sum();
        assert!((total - 40.0 * 0.23).abs() < 1e-9);
    }

    #[test]
    fn single_site_half_filling_entropy() {
        assert!((block_linear_entropy(&cfg(0.5, 1)).unwrap() - 0.5).abs() < 1e-15);
        let nu = 0.2;
        assert!((block_linear_entropy(&cfg(nu, 1)).unwrap() - 2.0 * nu * (1.0 - nu)).abs() < 1e-15);
    }

    #[test]
    fn dilute_limit_is_pure() {
        for m in [1, 10, 50] {
            let s = block_linear_entropy(&cfg(1e-9, m)).unwrap();
            assert!(s < 1e-6, "M = {m}: {s}");
        }
    }

    #[test]
    fn sweep_order_is_filling_major() {
        let rows = sweep(&[0.5, 0.25], &[1, 2, 3]).unwrap();
        let keys: Vec<(f64, usize)> = rows.iter().map(|r| (r.filling, r.block_size)).collect();
        assert_eq!(keys, vec![(0.5, 1), (0.5, 2), (0.5, 3), (0.25, 1), (0.25, 2), (0.25, 3)]);
        assert!(rows.iter().all(|r| (r.linear_entropy + r.purity - 1.0).abs() < 1e-15));
        assert!(sweep(&[1.5], &[1]).is_err());
    }

    #[test]
    fn ring_oracle_diagonal_counts_modes() {
        let c = cfg(0.3, 2);
        let oracle = finite_ring_oracle(&c, 1000).unwrap();
        assert!((oracle[(0, 0)].re - 300.0 / 1000.0).abs() < 1e-14);
        assert!(oracle.is_hermitian(1e-15));
    }

    #[test]
    fn ring_oracle_requires_large_ring() {
        assert!(finite_ring_oracle(&cfg(0.5, 20), 1999).is_err());
    }
}
