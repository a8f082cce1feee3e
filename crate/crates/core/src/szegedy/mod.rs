//! The quaternionic Szegedy walk on a graph with arc weights `q: D(G) → ℍ*`.

mod lift;
mod random;
mod spectrum;
mod structure;
mod walk;
mod weights;

pub use lift::{eigenspace_basis, lift_eigenvector, lift_family, LiftedEigenvector};
pub use random::{perturb_vertex, random_ab, random_instance};
pub use spectrum::{
    compare_multisets, direct_spectrum, full_spectrum, full_spectrum_with, spectral_map, Branch, ClassSource,
    MultisetDiff, SpectralImage, SpectrumClass, SpectrumReport,
};
pub use structure::{verify_structure, StructureCheck, StructureReport};
pub use walk::{build_walk, coin_and_shift, edge_operators, transition_matrix, EdgeOperators, WalkOperators};
pub use weights::{check_unitary_condition, UnitarityReport, VertexSum, WeightMap};
