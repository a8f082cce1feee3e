//! Quaternionic Szegedy walks on finite graphs: quaternion and quaternionic
//! matrix algebra, right spectra, the walk operators and their spectral
//! mapping, and numerical checks of the associated zeta determinant formulas.

pub mod cmatrix;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod minpoly;
pub mod qmatrix;
pub mod quaternion;
pub mod szegedy;
pub mod tol;
pub mod zeta;

pub use cmatrix::{CMatrix, C64};
pub use error::{Error, Result};
pub use graph::{build_graph, Arc, Graph};
pub use minpoly::{minimal_polynomial, root_subspaces, MinimalPolynomial, RealPoly, RootSubspace};
pub use qmatrix::{
    h_linear_independent, is_unitary, right_eigenvalues, right_eigenvector, QMatrix, QVector, RightEigenvalue,
};
pub use quaternion::{class_of, ConjugacyClass, Quaternion};
pub use szegedy::{
    build_walk, check_unitary_condition, full_spectrum, lift_eigenvector, random_instance, spectral_map,
    verify_structure, SpectrumReport, WalkOperators, WeightMap,
};
pub use zeta::{ihara_identity, quaternionic_identity, second_weighted_identity, sylvester_det_property, IdentityCheck};
