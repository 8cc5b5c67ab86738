//! Seeded random states and spectra.
//!
//! All randomness comes from ChaCha20 (`rand_chacha::ChaCha20Rng`), seeded
//! through `SeedableRng::seed_from_u64`. Both are fully specified, so a seed
//! yields the same stream on every platform.
//!
//! Splitting rule: [`SeededSource::split`]`(i)` reuses the parent seed on
//! ChaCha stream `i + 1`; the parent itself uses stream 0. Streams never
//! overlap, so children can be consumed in parallel.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::bipartite::{reduced_density, BipartitePureState, EntanglementSpectrum, Partition};
use crate::error::Result;
use crate::matrix::ComplexMatrix;

pub const ALGORITHM: &str = "chacha20/seed_from_u64";

#[derive(Debug, Clone)]
pub struct SeededSource {
    seed: u64,
    rng: ChaCha20Rng,
}

impl SeededSource {
    pub fn new(seed: u64) -> Self {
        Self { seed, rng: ChaCha20Rng::seed_from_u64(seed) }
    }

    /// Independent child source on stream `index + 1`.
    pub fn split(&self, index: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        rng.set_stream(index.checked_add(1).expect("stream index overflow"));
        Self { seed: self.seed, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn algorithm(&self) -> &'static str {
        ALGORITHM
    }

    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// Uniform integer in `low..=high`.
    pub fn integer(&mut self, low: usize, high: usize) -> usize {
        self.rng.random_range(low..=high)
    }

    pub fn complex_gaussian(&mut self) -> Complex64 {
        let re: f64 = self.rng.sample(StandardNormal);
        let im: f64 = self.rng.sample(StandardNormal);
        Complex64::new(re, im)
    }

    pub fn exponential(&mut self) -> f64 {
        self.rng.sample(Exp1)
    }
}

/// Haar-random pure state: i.i.d. complex Gaussian amplitudes, normalized.
pub fn haar_random_pure(dim_q: usize, dim_b: usize, src: &mut SeededSource) -> Result<BipartitePureState> {
    let amplitudes = (0..dim_q * dim_b).map(|_| src.complex_gaussian()).collect();
    BipartitePureState::normalized(dim_q, dim_b, amplitudes)
}

/// Matrix with i.i.d. standard complex Gaussian entries.
pub fn gaussian_matrix(rows: usize, cols: usize, src: &mut SeededSource) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| src.complex_gaussian())
}

/// Random Hermitian matrix `(G + G†) / 2`.
pub fn random_hermitian(n: usize, src: &mut SeededSource) -> ComplexMatrix {
    let g = gaussian_matrix(n, n, src);
    (&g + &g.adjoint()).scale_real(0.5)
}

/// Full-rank mixed state of dimension `n`: the reduction of a Haar-random
/// `n × n` pure state.
pub fn random_mixed_state(n: usize, src: &mut SeededSource) -> Result<ComplexMatrix> {
    Ok(reduced_density(&haar_random_pure(n, n, src)?, Partition::Subsystem))
}

/// Fisher-Yates shuffle.
pub fn shuffle<T>(items: &mut [T], src: &mut SeededSource) {
    for i in (1..items.len()).rev() {
        let j = src.integer(0, i);
        items.swap(i, j);
    }
}

/// Uniform sample from the probability simplex with `rank` entries.
pub fn random_spectrum(rank: usize, src: &mut SeededSource) -> Result<EntanglementSpectrum> {
    assert!(rank >= 1, "rank must be positive");
    let draws: Vec<f64> = (0..rank).map(|_| src.exponential()).collect();
    let total: f64 = draws.iter().sum();
    EntanglementSpectrum::with_tolerance(draws.into_iter().map(|x| x / total).collect(), 0.0)
}

/// One simplex-uniform spectrum per requested rank.
pub fn random_product_spectrum(ranks: &[usize], src: &mut SeededSource) -> Result<Vec<EntanglementSpectrum>> {
    ranks.iter().map(|&r| random_spectrum(r, src)).collect()
}

/// All products `p⁽¹⁾_i p⁽²⁾_j ⋯` of a list of factor spectra.
pub fn tensor_product_probabilities(factors: &[EntanglementSpectrum]) -> Vec<f64> {
    factors.iter().fold(vec![1.0], |acc, s| {
        acc.iter().flat_map(|a| s.probabilities().iter().map(move |p| a * p)).collect()
    })
}
