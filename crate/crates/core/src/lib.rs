//! Spectral two-community detection on noisy graphs, together with closed-form
//! predictors for the detectability phase transition.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, Monte Carlo
//! sweeps and the command-line driver live in the `specphase` crate.
//!
//! Pipeline overview:
//!
//! * [`graph`] stores the observed simple graph and evaluates Laplacian forms.
//! * [`gen`] samples two-block instances with insertion-only noise.
//! * [`eigen`] computes the algebraic connectivity and Fiedler vector.
//! * [`partition`] splits the Fiedler vector with exact 1-D 2-means.
//! * [`theory`] evaluates the critical-value bounds from realized spectra.
//! * [`assess`] computes the data-driven estimators and the reliability regime.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod assess;
pub mod eigen;
mod error;
pub mod gen;
pub mod graph;
pub(crate) mod math;
pub mod partition;
pub mod rng;
pub mod theory;

pub use assess::{assess, assess_with_detection, AssessmentReport, Regime};
pub use eigen::{fiedler, fiedler_dense_oracle, FiedlerOptions, SpectralResult};
pub use error::Error;
pub use gen::{add_noise, erdos_renyi, generate_sbm, CommunityInstance, GenParams, NoiseScope};
pub use graph::{LaplacianView, SparseGraph};
pub use partition::{detect_communities, detectability, kmeans_1d_two, DetectabilityScore, Partition};
pub use theory::{CommunitySpectra, ThresholdPrediction};

pub type Result<T, E = Error> = core::result::Result<T, E>;
