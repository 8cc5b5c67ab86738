//! Bipartite entanglement of pure states measured through subsystem
//! fluctuations.
//!
//! For a pure state split into a subsystem `q` and a bath `B`, the reduced
//! density operator of `q` is diagonal in its Schmidt basis. The diagonal
//! su(N) generators built on that basis, the *Schmidt polarizations*, have a
//! total variance equal to twice the linear entropy:
//!
//! ```text
//! Δ²w = 2 S_L = 2 (1 − γ) = C²
//! ```
//!
//! where `γ = tr ρ_q²` is the purity and `C` the generalized concurrence.
//! The crate computes both sides of this relation independently, together
//! with the composite-subsystem product rules and two worked many-body
//! examples (the free-fermion block and the AKLT valence-bond solid).
//!
//! Module map:
//!
//! - [`matrix`]: dense complex matrices, Hermitian eigensolver and SVD.
//! - [`su_n`]: generalized Gell-Mann generators and Bloch vectors.
//! - [`bipartite`]: pure states, Schmidt decomposition, entanglement measures.
//! - [`fluctuation`]: polarization fluctuations and composite rules.
//! - [`free_fermion`]: block entanglement of a free spinless fermion chain.
//! - [`aklt`]: block spectrum of the AKLT ground state, with an MPS oracle.
//! - [`random`]: seeded Haar states and random spectra.
//! - [`validate`]: the randomized property suite behind `fluctent validate`.

pub mod aklt;
pub mod bipartite;
mod error;
pub mod fluctuation;
pub mod free_fermion;
pub mod matrix;
pub mod random;
pub mod su_n;
pub mod validate;

pub use bipartite::{BipartitePureState, EntanglementSpectrum, MeasureSet, Partition};
pub use error::{Error, Result};
pub use fluctuation::FluctuationReport;
pub use matrix::ComplexMatrix;
pub use su_n::{BlochVector, GeneratorSet};

pub use num_complex::Complex64;
