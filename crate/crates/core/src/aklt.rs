//! Block entanglement of the spin-1 AKLT valence-bond-solid ground state.
//!
//! In the thermodynamic limit the reduced density operator of `ℓ` contiguous
//! spins has rank at most four, with a triply degenerate eigenvalue
//! `(1 − (−3)^−ℓ) / 4` and a fourth eigenvalue `(1 + 3 (−3)^−ℓ) / 4`.
//! [`mps_block_spectrum`] recomputes that spectrum from the bond-dimension-2
//! matrix product state, independently of the closed form.

use num_complex::Complex64;

use crate::bipartite::{EntanglementSpectrum, DEFAULT_TOL_RANK};
use crate::error::{Error, Result};
use crate::fluctuation::schmidt_polarization_fluctuation;
use crate::matrix::{hermitian_eigensystem, hermitian_eigenvalues, ComplexMatrix, DEFAULT_HERMITIAN_TOL};

/// Longest block accepted by the transfer-matrix oracle.
pub const MAX_ORACLE_BLOCK: usize = 12;

/// `[p1, p2, p3, p4]` with `p1 = p2 = p3` the triplet value. `p4` is zero at
/// `ℓ = 1`.
pub fn closed_form_probabilities(block_length: usize) -> [f64; 4] {
    let x = (-1.0f64 / 3.0).powi(block_length as i32);
    let triplet = (1.0 - x) / 4.0;
    let singlet = (1.0 + 3.0 * x) / 4.0;
    [triplet, triplet, triplet, singlet]
}

/// Closed-form spectrum, descending, with the `ℓ = 1` zero dropped.
pub fn closed_form_spectrum(block_length: usize) -> EntanglementSpectrum {
    assert!(block_length >= 1, "block length must be positive");
    EntanglementSpectrum::new(closed_form_probabilities(block_length).to_vec())
        .expect("closed-form probabilities are normalized")
}

/// `Δ²w = (3/2) (1 − 9^−ℓ)`.
pub fn aklt_fluctuation(block_length: usize) -> f64 {
    1.5 * (1.0 - 9f64.powi(-(block_length as i32)))
}

/// `γ = (1 + 3^(1 − 2ℓ)) / 4`.
pub fn aklt_purity(block_length: usize) -> f64 {
    0.25 * (1.0 + 3f64.powi(1 - 2 * block_length as i32))
}

/// Fluctuation of the closed-form spectrum through the generic pipeline.
pub fn pipeline_fluctuation(block_length: usize) -> Result<f64> {
    Ok(schmidt_polarization_fluctuation(&closed_form_spectrum(block_length))?.total)
}

/// The rank-4 Schmidt polarization operators `w_1, w_2, w_3`, written out.
pub fn schmidt_polarization_operators_rank4() -> [ComplexMatrix; 3] {
    let s3 = 1.0 / 3f64.sqrt();
    let s6 = 1.0 / 6f64.sqrt();
    [
        ComplexMatrix::from_real_diagonal(&[1.0, -1.0, 0.0, 0.0]),
        ComplexMatrix::from_real_diagonal(&[s3, s3, -2.0 * s3, 0.0]),
        ComplexMatrix::from_real_diagonal(&[s6, s6, s6, -3.0 * s6]),
    ]
}

/// Site tensors `A^s` for `s = +1, 0, −1`, in the left- and right-canonical
/// gauge `Σ A A† = Σ A† A = I`.
pub fn site_tensors() -> [ComplexMatrix; 3] {
    let a = (2.0f64 / 3.0).sqrt();
    let b = (1.0f64 / 3.0).sqrt();
    [
        ComplexMatrix::from_real_rows(&[&[0.0, a], &[0.0, 0.0]]),
        ComplexMatrix::from_real_rows(&[&[-b, 0.0], &[0.0, b]]),
        ComplexMatrix::from_real_rows(&[&[0.0, 0.0], &[-a, 0.0]]),
    ]
}

/// Transfer matrix `E[(α α'), (β β')] = Σ_s A^s[α][β] conj(A^s[α'][β'])`.
pub fn transfer_matrix(tensors: &[ComplexMatrix]) -> ComplexMatrix {
    let d = tensors[0].rows();
    ComplexMatrix::from_fn(d * d, d * d, |row, col| {
        let (a, ap) = (row / d, row % d);
        let (b, bp) = (col / d, col % d);
        tensors.iter().map(|t| t[(a, b)] * t[(ap, bp)].conj()).sum()
    })
}

/// Fixed point of `X ↦ Σ_s f(A^s, X)` by power iteration, trace-normalized.
fn fixed_point(tensors: &[ComplexMatrix], apply: impl Fn(&ComplexMatrix, &ComplexMatrix) -> ComplexMatrix) -> ComplexMatrix {
    let d = tensors[0].rows();
    let mut x = ComplexMatrix::identity(d).scale_real(1.0 / d as f64);
    for _ in 0..500 {
        let next = tensors
            .iter()
            .fold(ComplexMatrix::zeros(d, d), |acc, a| &acc + &apply(a, &x));
        let next = next.scale(Complex64::new(1.0, 0.0) / next.trace());
        let change = next.max_abs_diff(&x);
        x = next;
        if change < 1e-16 {
            break;
        }
    }
    // drop round-off anti-Hermitian part
    ComplexMatrix::from_fn(d, d, |i, j| 0.5 * (x[(i, j)] + x[(j, i)].conj()))
}

/// Block spectrum from the MPS in the thermodynamic limit.
///
/// With left/right environments `l`, `r` (fixed points of the transfer map)
/// and block vectors `v_(αβ) = Σ_s (A^(s1) ⋯ A^(sℓ))[α][β] |s⟩`, the block
/// density operator is `V (l ⊗ r) V†`. Its nonzero spectrum equals that of
/// `K^½ G K^½` with `K = l ⊗ r` and Gram matrix `G = V†V`, read off `E^ℓ`.
pub fn mps_block_spectrum(block_length: usize) -> Result<EntanglementSpectrum> {
    if block_length > MAX_ORACLE_BLOCK {
        return Err(Error::BlockTooLong { length: block_length, limit: MAX_ORACLE_BLOCK });
    }
    assert!(block_length >= 1, "block length must be positive");
    let tensors = site_tensors();
    let d = tensors[0].rows();

    let right = fixed_point(&tensors, |a, x| &(a * x) * &a.adjoint());
    let left = fixed_point(&tensors, |a, x| &(&a.transpose() * x) * &a.conj());

    let transfer = transfer_matrix(&tensors);
    let mut power = transfer.clone();
    for _ in 1..block_length {
        power = &power * &transfer;
    }
    // G[(α' β'), (α β)] = E^ℓ[(α α'), (β β')]
    let gram = ComplexMatrix::from_fn(d * d, d * d, |row, col| {
        let (ap, bp) = (row / d, row % d);
        let (a, b) = (col / d, col % d);
        power[(a * d + ap, b * d + bp)]
    });
    let environment = left.kron(&right);
    let root = matrix_sqrt_psd(&environment)?;
    let reduced = &(&root * &gram) * &root;
    let trace = reduced.trace().re;
    let eigenvalues = hermitian_eigenvalues(&reduced.scale_real(1.0 / trace), 1e-12)?;
    EntanglementSpectrum::with_tolerance(eigenvalues, DEFAULT_TOL_RANK)
}

fn matrix_sqrt_psd(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eigensystem(m, DEFAULT_HERMITIAN_TOL)?;
    let n = eig.values.len();
    let scaled = ComplexMatrix::from_fn(n, n, |i, j| eig.vectors[(i, j)] * eig.values[j].max(0.0).sqrt());
    Ok(&scaled * &eig.vectors.adjoint())
}

/// Largest deviation between the oracle and closed-form spectra, both padded
/// to four entries.
pub fn oracle_max_deviation(block_length: usize) -> Result<f64> {
    let oracle = mps_block_spectrum(block_length)?.padded(4);
    let closed = closed_form_spectrum(block_length).padded(4);
    Ok(oracle.iter().zip(&closed).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su_n::GeneratorSet;

    fn assert_close(actual: &[f64], expected: &[f64], tol: f64) {
        assert_eq!(actual.len(), expected.len(), "{actual:?} vs {expected:?}");
        for (a, e) in actual.iter().zip(expected) {
            assert!((a - e).abs() <= tol, "{actual:?} vs {expected:?}");
        }
    }

    #[test]
    fn single_site_spectrum() {
        let s = closed_form_spectrum(1);
        assert_eq!(s.rank(), 3);
        assert_close(s.probabilities(), &[1.0 / 3.0; 3], 1e-16);
        assert_eq!(closed_form_probabilities(1)[3], 0.0);
    }

    #[test]
    fn two_site_spectrum() {
        let p = closed_form_probabilities(2);
        assert_close(&p, &[2.0 / 9.0, 2.0 / 9.0, 2.0 / 9.0, 1.0 / 3.0], 1e-16);
        assert_close(closed_form_spectrum(2).probabilities(), &[1.0 / 3.0, 2.0 / 9.0, 2.0 / 9.0, 2.0 / 9.0], 1e-16);
    }

    #[test]
    fn long_block_is_maximally_mixed() {
        assert_close(&closed_form_probabilities(60), &[0.25; 4], 1e-16);
        assert!((aklt_purity(60) - 0.25).abs() < 1e-16);
        assert!((aklt_fluctuation(60) - 1.5).abs() < 1e-16);
    }

    #[test]
    fn spectrum_sums_to_one() {
        for l in 1..=64 {
            let total: f64 = closed_form_probabilities(l).iter().sum();
            assert!((total - 1.0).abs() <= 1e-14);
        }
    }

    #[test]
    fn fluctuation_values() {
        assert!((aklt_fluctuation(1) - 4.0 / 3.0).abs() < 1e-15);
        assert!((aklt_fluctuation(2) - 1.5 * 80.0 / 81.0).abs() < 1e-15);
    }

    #[test]
    fn purity_values() {
        assert!((aklt_purity(1) - 1.0 / 3.0).abs() < 1e-16);
        assert!((aklt_purity(2) - 7.0 / 27.0).abs() < 1e-16);
        for l in 1..=30 {
            assert!((aklt_purity(l) - closed_form_spectrum(l).purity()).abs() < 1e-14);
            assert!((2.0 * (1.0 - aklt_purity(l)) - aklt_fluctuation(l)).abs() < 1e-14);
        }
    }

    #[test]
    fn triple_degeneracy() {
        for l in 1..=40 {
            let p = closed_form_probabilities(l);
            assert!(p[0] == p[1] && p[1] == p[2]);
        }
    }

    #[test]
    fn polarization_operators_match_generators() {
        let g = GeneratorSet::new(4).unwrap();
        for (explicit, generated) in schmidt_polarization_operators_rank4().iter().zip(g.diagonal()) {
            assert!(explicit.max_abs_diff(generated) < 1e-15);
        }
    }

    #[test]
    fn site_tensors_are_canonical() {
        let t = site_tensors();
        let left = t.iter().fold(ComplexMatrix::zeros(2, 2), |acc, a| &acc + &(&a.adjoint() * a));
        let right = t.iter().fold(ComplexMatrix::zeros(2, 2), |acc, a| &acc + &(a * &a.adjoint()));
        assert!(left.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
        assert!(right.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn transfer_spectrum() {
        let e = transfer_matrix(&site_tensors());
        let values = hermitian_eigenvalues(&e, 1e-14).unwrap();
        assert_close(&values, &[-1.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0, 1.0], 1e-14);
    }

    #[test]
    fn oracle_single_site() {
        assert_close(mps_block_spectrum(1).unwrap().probabilities(), &[1.0 / 3.0; 3], 1e-12);
    }

    #[test]
    fn oracle_three_sites() {
        // (−3)^−3 = −1/27
        let x = -1.0 / 27.0;
        let triplet = (1.0 - x) / 4.0;
        let singlet = (1.0 + 3.0 * x) / 4.0;
        let oracle = mps_block_spectrum(3).unwrap();
        assert_close(oracle.probabilities(), &[triplet, triplet, triplet, singlet], 1e-12);
    }

    #[test]
    fn oracle_eight_sites() {
        assert!(oracle_max_deviation(8).unwrap() <= 1e-10);
    }

    #[test]
    fn oracle_length_guard() {
        assert_eq!(
            mps_block_spectrum(13).unwrap_err(),
            Error::BlockTooLong { length: 13, limit: MAX_ORACLE_BLOCK }
        );
        assert!(mps_block_spectrum(12).is_ok());
    }

    #[test]
    fn pipeline_matches_closed_form() {
        for l in 1..=20 {
            assert!((pipeline_fluctuation(l).unwrap() - aklt_fluctuation(l)).abs() < 1e-12);
        }
    }
}
