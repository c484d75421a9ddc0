//! Spectra, exact characteristic polynomials and eigenvectors of H-joins
//! `H[G_1, ..., G_p]` of arbitrary graphs, computed from the components and
//! a small associated matrix instead of the full adjacency matrix.
//!
//! Exact integer work (walk matrices, main polynomials, characteristic
//! polynomials) uses big integers throughout. Eigenvalues and eigenvectors
//! are `f64`.

pub mod cli;
pub mod error;
pub mod exact;
pub mod graph;
pub mod io;
pub mod join;
pub mod lexpow;
pub mod main_spectrum;
pub mod spectral;

pub use error::{Error, Result};
pub use exact::{IntMatrix, IntPoly, RationalVector};
pub use graph::Graph;
pub use join::{
    assoc_matrix, hjoin_charpoly, hjoin_explicit, hjoin_spectrum, reconstruct_eigvecs,
    regular_quotient, verify_against_oracle, AssocMatrix, EigvecBundle, JoinAnalysis, JoinSpec,
    VerificationReport,
};
pub use main_spectrum::{classify_spectrum, main_poly, walk_data, ClassifiedSpectrum, WalkData};
pub use spectral::{Origin, Spectrum, SpectrumEntry};

/// Numerical tolerances shared by the floating-point routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Eigenvalues closer than `group * max(1, spectral radius)` are treated
    /// as one eigenvalue.
    pub group: f64,
    /// An eigenvalue is main when its eigenspace projection of `j` exceeds
    /// `main * sqrt(n)`.
    pub main: f64,
    /// Bound on `|A v - rho v| / |v|`, scaled by `1 + |rho|`.
    pub residual: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            group: 1e-7,
            main: 1e-6,
            residual: 1e-7,
        }
    }
}
