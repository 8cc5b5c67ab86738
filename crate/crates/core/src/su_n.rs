//! Generalized Gell-Mann generators of su(N) and the Bloch-vector encoding of
//! density operators.
//!
//! For `1 ≤ j < k ≤ N` and `1 ≤ l ≤ N − 1` the generators are
//!
//! ```text
//! u_jk = |j⟩⟨k| + |k⟩⟨j|
//! v_jk = −i (|j⟩⟨k| − |k⟩⟨j|)
//! w_l  = √(2 / (l (l + 1))) (Σ_{j ≤ l} |j⟩⟨j| − l |l+1⟩⟨l+1|)
//! ```
//!
//! They are listed block by block in increasing `k`: `u_1k, v_1k, u_2k, v_2k,
//! …, u_(k−1)k, v_(k−1)k, w_(k−1)`. For `N = 2` this gives the Pauli matrices
//! `x, y, z`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{hermitian_eigenvalues, ComplexMatrix, DEFAULT_HERMITIAN_TOL};

/// Trace tolerance for accepting an operator as a density operator.
pub const DENSITY_TRACE_TOL: f64 = 1e-10;

/// Threshold below which a reconstructed eigenvalue counts as negative.
pub const POSITIVITY_TOL: f64 = 1e-10;

const IMAGINARY_TOL: f64 = 1e-12;

/// Which family a generator belongs to, with 1-based basis labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    Symmetric { j: usize, k: usize },
    Antisymmetric { j: usize, k: usize },
    Diagonal { l: usize },
}

/// The ordered su(N) basis `Λ_1 … Λ_(N²−1)`.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    n: usize,
    lambdas: Vec<ComplexMatrix>,
    kinds: Vec<GeneratorKind>,
    diagonal_indices: Vec<usize>,
}

impl GeneratorSet {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension(n));
        }
        let mut lambdas = Vec::with_capacity(n * n - 1);
        let mut kinds = Vec::with_capacity(n * n - 1);
        let mut diagonal_indices = Vec::with_capacity(n - 1);
        for (kind, matrix) in generator_sequence(n) {
            if matches!(kind, GeneratorKind::Diagonal { .. }) {
                diagonal_indices.push(lambdas.len());
            }
            lambdas.push(matrix);
            kinds.push(kind);
        }
        Ok(Self { n, lambdas, kinds, diagonal_indices })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }

    /// All generators in order; index `i` holds `Λ_(i+1)`.
    pub fn lambdas(&self) -> &[ComplexMatrix] {
        &self.lambdas
    }

    pub fn kinds(&self) -> &[GeneratorKind] {
        &self.kinds
    }

    /// Positions of `w_1 … w_(N−1)` within [`lambdas`](Self::lambdas).
    pub fn diagonal_indices(&self) -> &[usize] {
        &self.diagonal_indices
    }

    /// `w_1 … w_(N−1)` in order.
    pub fn diagonal(&self) -> impl Iterator<Item = &ComplexMatrix> + '_ {
        self.diagonal_indices.iter().map(move |&i| &self.lambdas[i])
    }

    /// `Σ_j Λ_j²`, which should equal `2 (N² − 1) / N · I`.
    pub fn casimir(&self) -> ComplexMatrix {
        self.lambdas
            .iter()
            .fold(ComplexMatrix::zeros(self.n, self.n), |acc, l| &acc + &(l * l))
    }
}

/// Shared, memoized generator set for dimension `n`.
pub fn generators(n: usize) -> Result<Arc<GeneratorSet>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<GeneratorSet>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(set) = cache.read().expect("generator cache poisoned").get(&n) {
        return Ok(Arc::clone(set));
    }
    let set = Arc::new(GeneratorSet::new(n)?);
    let mut guard = cache.write().expect("generator cache poisoned");
    Ok(Arc::clone(guard.entry(n).or_insert(set)))
}

/// Generators of su(n) in canonical order, built lazily. Panics for `n < 2`.
pub fn generator_sequence(n: usize) -> impl Iterator<Item = (GeneratorKind, ComplexMatrix)> {
    assert!(n >= 2, "su({n}) has no generators");
    (2..=n).flat_map(move |k| {
        (1..k)
            .flat_map(move |j| {
                [
                    (GeneratorKind::Symmetric { j, k }, symmetric(n, j, k)),
                    (GeneratorKind::Antisymmetric { j, k }, antisymmetric(n, j, k)),
                ]
            })
            .chain(std::iter::once((GeneratorKind::Diagonal { l: k - 1 }, diagonal_generator(n, k - 1))))
    })
}

fn symmetric(n: usize, j: usize, k: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    m[(j - 1, k - 1)] = Complex64::new(1.0, 0.0);
    m[(k - 1, j - 1)] = Complex64::new(1.0, 0.0);
    m
}

fn antisymmetric(n: usize, j: usize, k: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    m[(j - 1, k - 1)] = Complex64::new(0.0, -1.0);
    m[(k - 1, j - 1)] = Complex64::new(0.0, 1.0);
    m
}

/// Diagonal entries of `w_l` in dimension `n`.
pub fn diagonal_generator_entries(n: usize, l: usize) -> Vec<f64> {
    assert!(l >= 1 && l < n, "w_{l} does not exist in su({n})");
    let lf = l as f64;
    let prefactor = (2.0 / (lf * (lf + 1.0))).sqrt();
    (0..n)
        .map(|i| match i.cmp(&l) {
            std::cmp::Ordering::Less => prefactor,
            std::cmp::Ordering::Equal => -lf * prefactor,
            std::cmp::Ordering::Greater => 0.0,
        })
        .collect()
}

/// The diagonal generator `w_l` of su(n), `1 ≤ l ≤ n − 1`.
pub fn diagonal_generator(n: usize, l: usize) -> ComplexMatrix {
    ComplexMatrix::from_real_diagonal(&diagonal_generator_entries(n, l))
}

/// Just the `N − 1` diagonal generators, without building the full set.
pub fn diagonal_generators(n: usize) -> Result<Vec<ComplexMatrix>> {
    if n < 2 {
        return Err(Error::InvalidDimension(n));
    }
    Ok((1..n).map(|l| diagonal_generator(n, l)).collect())
}

/// Coefficients `a_j = tr(Λ_j ρ)` of `ρ = I/N + ½ Σ a_j Λ_j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub n: usize,
    pub components: Vec<f64>,
}

impl BlochVector {
    pub fn norm_sqr(&self) -> f64 {
        self.components.iter().map(|a| a * a).sum()
    }
}

fn check_density_like(rho: &ComplexMatrix, n: usize) -> Result<()> {
    if rho.rows() != n || rho.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "density operator is {}x{}, generators act on dimension {n}",
            rho.rows(),
            rho.cols()
        )));
    }
    if !rho.is_hermitian(DEFAULT_HERMITIAN_TOL) {
        return Err(Error::NotDensityLike(format!(
            "Hermiticity deviation {:.3e}",
            rho.hermiticity_deviation()
        )));
    }
    let trace = rho.trace();
    if (trace - Complex64::new(1.0, 0.0)).norm() > DENSITY_TRACE_TOL {
        return Err(Error::NotDensityLike(format!("trace {trace}")));
    }
    Ok(())
}

fn real_expectation(op: &ComplexMatrix, rho: &ComplexMatrix) -> Result<f64> {
    let value = op.trace_product(rho)?;
    if value.im.abs() > IMAGINARY_TOL {
        return Err(Error::NotDensityLike(format!("expectation value {value} is not real")));
    }
    Ok(value.re)
}

pub fn bloch_vector(rho: &ComplexMatrix, gens: &GeneratorSet) -> Result<BlochVector> {
    check_density_like(rho, gens.dimension())?;
    let components = gens
        .lambdas()
        .iter()
        .map(|l| real_expectation(l, rho))
        .collect::<Result<Vec<_>>>()?;
    Ok(BlochVector { n: gens.dimension(), components })
}

/// Rebuilds `I/N + ½ Σ a_j Λ_j`, rejecting vectors outside the physical body.
pub fn density_from_bloch(b: &BlochVector, gens: &GeneratorSet) -> Result<ComplexMatrix> {
    let n = gens.dimension();
    if b.n != n || b.components.len() != gens.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} Bloch components for su({}) with {} generators",
            b.components.len(),
            n,
            gens.len()
        )));
    }
    let mut rho = ComplexMatrix::identity(n).scale_real(1.0 / n as f64);
    for (a, l) in b.components.iter().zip(gens.lambdas()) {
        if *a != 0.0 {
            rho = &rho + &l.scale_real(0.5 * a);
        }
    }
    let eigenvalues = hermitian_eigenvalues(&rho, DEFAULT_HERMITIAN_TOL)?;
    let min_eigenvalue = eigenvalues[0];
    if min_eigenvalue < -POSITIVITY_TOL {
        return Err(Error::NotPositive { min_eigenvalue });
    }
    Ok(rho)
}

/// Purity `tr ρ²`.
pub fn purity(rho: &ComplexMatrix) -> f64 {
    rho.trace_product(rho).expect("square matrix").re
}

/// Total fluctuation of all generators,
/// `Σ_j tr(Λ_j² ρ) − Σ_j (tr Λ_j ρ)²`.
///
/// The second term is the squared length of the Bloch vector; summing the
/// components before squaring would not give `2 (N − γ)`.
pub fn total_generator_fluctuation(rho: &ComplexMatrix, gens: &GeneratorSet) -> Result<f64> {
    check_density_like(rho, gens.dimension())?;
    fluctuation_sum(rho, gens.lambdas().iter())
}

/// Same as [`total_generator_fluctuation`] but generates the basis on the fly
/// for `N = rho.rows()`, keeping memory at `O(N²)`.
pub fn total_generator_fluctuation_streamed(rho: &ComplexMatrix) -> Result<f64> {
    let n = rho.rows();
    if n < 2 {
        return Err(Error::InvalidDimension(n));
    }
    check_density_like(rho, n)?;
    let mut total = 0.0;
    for (_, l) in generator_sequence(n) {
        total += fluctuation_sum(rho, std::iter::once(&l))?;
    }
    Ok(total)
}

fn fluctuation_sum<'a>(rho: &ComplexMatrix, lambdas: impl Iterator<Item = &'a ComplexMatrix>) -> Result<f64> {
    let mut mean_squares = 0.0;
    let mut squared_means = 0.0;
    for l in lambdas {
        let square = l * l;
        mean_squares += real_expectation(&square, rho)?;
        squared_means += real_expectation(l, rho)?.powi(2);
    }
    Ok(mean_squares - squared_means)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn qubit_generators_are_pauli() {
        let g = GeneratorSet::new(2).unwrap();
        assert_eq!(g.len(), 3);
        let x = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let y = ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 1) => c(0.0, -1.0),
            (1, 0) => c(0.0, 1.0),
            _ => c(0.0, 0.0),
        });
        let z = ComplexMatrix::from_real_diagonal(&[1.0, -1.0]);
        assert_eq!(g.lambdas()[0], x);
        assert_eq!(g.lambdas()[1], y);
        assert_eq!(g.lambdas()[2], z);
        assert_eq!(g.diagonal_indices(), &[2]);
    }

    #[test]
    fn qutrit_w2() {
        let g = GeneratorSet::new(3).unwrap();
        let w2 = g.diagonal().nth(1).unwrap();
        let s = 1.0 / 3f64.sqrt();
        let expected = ComplexMatrix::from_real_diagonal(&[s, s, -2.0 * s]);
        assert!(w2.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn ordering_follows_blocks() {
        let g = GeneratorSet::new(3).unwrap();
        use GeneratorKind::*;
        assert_eq!(
            g.kinds(),
            &[
                Symmetric { j: 1, k: 2 },
                Antisymmetric { j: 1, k: 2 },
                Diagonal { l: 1 },
                Symmetric { j: 1, k: 3 },
                Antisymmetric { j: 1, k: 3 },
                Symmetric { j: 2, k: 3 },
                Antisymmetric { j: 2, k: 3 },
                Diagonal { l: 2 },
            ]
        );
        assert_eq!(g.diagonal_indices(), &[2, 7]);
    }

    #[test]
    fn su4_orthonormality_by_pairs() {
        let g = GeneratorSet::new(4).unwrap();
        assert_eq!(g.len(), 15);
        for (i, a) in g.lambdas().iter().enumerate() {
            assert!(a.is_hermitian(0.0));
            assert!(a.trace().norm() < 1e-12);
            for (j, b) in g.lambdas().iter().enumerate() {
                let t = a.trace_product(b).unwrap();
                let expected = if i == j { 2.0 } else { 0.0 };
                assert!((t - c(expected, 0.0)).norm() < 1e-12, "({i},{j}) -> {t}");
            }
        }
    }

    #[test]
    fn invalid_dimension() {
        assert_eq!(GeneratorSet::new(1).unwrap_err(), Error::InvalidDimension(1));
        assert!(generators(0).is_err());
        assert!(diagonal_generators(1).is_err());
    }

    #[test]
    fn cache_returns_same_set() {
        let a = generators(5).unwrap();
        let b = generators(5).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }

    #[test]
    fn maximally_mixed_has_zero_bloch_vector() {
        let g = GeneratorSet::new(3).unwrap();
        let rho = ComplexMatrix::identity(3).scale_real(1.0 / 3.0);
        let b = bloch_vector(&rho, &g).unwrap();
        assert!(b.components.iter().all(|a| a.abs() < 1e-15));
    }

    #[test]
    fn pure_state_bloch_length() {
        for n in 2..=6 {
            let g = GeneratorSet::new(n).unwrap();
            let mut rho = ComplexMatrix::zeros(n, n);
            rho[(0, 0)] = c(1.0, 0.0);
            let b = bloch_vector(&rho, &g).unwrap();
            let expected = 2.0 * (n as f64 - 1.0) / n as f64;
            assert!((b.norm_sqr() - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn qubit_diagonal_bloch_vector() {
        let g = GeneratorSet::new(2).unwrap();
        let p = 0.3;
        let rho = ComplexMatrix::from_real_diagonal(&[p, 1.0 - p]);
        let b = bloch_vector(&rho, &g).unwrap();
        assert!(b.components[0].abs() < 1e-15);
        assert!(b.components[1].abs() < 1e-15);
        assert!((b.components[2] - (2.0 * p - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn bloch_rejects_bad_trace() {
        let g = GeneratorSet::new(2).unwrap();
        let rho = ComplexMatrix::from_real_diagonal(&[0.5, 0.6]);
        assert!(matches!(bloch_vector(&rho, &g), Err(Error::NotDensityLike(_))));
        let wrong_dim = ComplexMatrix::identity(3).scale_real(1.0 / 3.0);
        assert!(matches!(bloch_vector(&wrong_dim, &g), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn density_from_zero_vector() {
        let g = GeneratorSet::new(3).unwrap();
        let b = BlochVector { n: 3, components: vec![0.0; 8] };
        let rho = density_from_bloch(&b, &g).unwrap();
        assert!(rho.max_abs_diff(&ComplexMatrix::identity(3).scale_real(1.0 / 3.0)) < 1e-15);
    }

    #[test]
    fn density_from_pole() {
        let g = GeneratorSet::new(2).unwrap();
        let b = BlochVector { n: 2, components: vec![0.0, 0.0, 1.0] };
        let rho = density_from_bloch(&b, &g).unwrap();
        assert!(rho.max_abs_diff(&ComplexMatrix::from_real_diagonal(&[1.0, 0.0])) < 1e-15);
    }

    #[test]
    fn density_outside_body_is_flagged() {
        // eigenvalues 1/2 ± 1 → (3/2, −1/2)
        let g = GeneratorSet::new(2).unwrap();
        let b = BlochVector { n: 2, components: vec![0.0, 0.0, 2.0] };
        match density_from_bloch(&b, &g) {
            Err(Error::NotPositive { min_eigenvalue }) => assert!((min_eigenvalue + 0.5).abs() < 1e-14),
            other => panic!("expected NotPositive, got {other:?}"),
        }
    }

    #[test]
    fn density_from_bloch_checks_length() {
        let g = GeneratorSet::new(2).unwrap();
        let b = BlochVector { n: 2, components: vec![0.0, 1.0] };
        assert!(matches!(density_from_bloch(&b, &g), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn generator_fluctuation_maximally_mixed_qutrit() {
        let g = GeneratorSet::new(3).unwrap();
        let rho = ComplexMatrix::identity(3).scale_real(1.0 / 3.0);
        let f = total_generator_fluctuation(&rho, &g).unwrap();
        assert!((f - 16.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn generator_fluctuation_pure_qubit() {
        let g = GeneratorSet::new(2).unwrap();
        // |+⟩⟨+|, off-diagonal so all three generators contribute
        let rho = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]);
        let f = total_generator_fluctuation(&rho, &g).unwrap();
        assert!((f - 2.0).abs() < 1e-12);
    }

    #[test]
    fn casimir_is_scalar() {
        for n in 2..=5 {
            let g = GeneratorSet::new(n).unwrap();
            let expected = ComplexMatrix::identity(n).scale_real(2.0 * (n * n - 1) as f64 / n as f64);
            assert!(g.casimir().max_abs_diff(&expected) < 1e-12);
        }
    }
}
