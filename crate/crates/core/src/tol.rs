//! Numerical tolerances shared across the crate.

/// Same-class test for right eigenvalues, relative to `max(1, |λ|)`.
pub const CLASS: f64 = 1e-8;
/// Relative residual target for complex eigenpairs.
pub const EIG_RESIDUAL: f64 = 1e-10;
/// Total QR iterations allowed per matrix dimension.
pub const QR_ITERATIONS_PER_DIM: usize = 100;
/// Singular values below `RANK * σ_max` count as zero.
pub const RANK: f64 = 1e-8;
/// Annihilation threshold for minimal polynomials, scaled by `max(1,‖M‖)^deg`.
pub const MINPOLY: f64 = 1e-8;
/// Eigenvalue grouping radius when building minimal polynomial factors.
pub const CLUSTER: f64 = 1e-6;
/// Per-vertex unitarity condition `Σ |q|² = 1`.
pub const UNITARY_CONDITION: f64 = 1e-10;
/// Entrywise structural identities of the walk operators.
pub const STRUCTURE: f64 = 1e-12;
/// `U*U = I` check.
pub const UNITARY: f64 = 1e-10;
/// Determinant identity relative error.
pub const IDENTITY: f64 = 1e-8;
/// Sylvester determinant identity relative error.
pub const SYLVESTER: f64 = 1e-10;
/// Multiset agreement between mapped and directly computed spectra.
pub const SPECTRUM_MATCH: f64 = 1e-8;
/// Eigenvector residual `‖Mv - vλ‖ / ‖v‖`.
pub const EIGENVECTOR: f64 = 1e-8;
/// Values of μ within this distance of ±2 are snapped onto ±2.
pub const MU_SNAP: f64 = 1e-9;
/// Values of μ further than this outside [-2, 2] are rejected.
pub const MU_DOMAIN: f64 = 1e-6;
/// Pairing tolerance for duplicated eigenvalues of Hermitian ψ-images.
pub const HERMITIAN_PAIRING: f64 = 1e-8;
/// Two construction paths of the transition matrix must agree this closely.
pub const CONSTRUCTION: f64 = 1e-14;
