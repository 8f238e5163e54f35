//! Gröbner bases and everything built on them: syzygies, resolutions,
//! Hilbert functions, saturation, and local standard bases.

pub mod engine;
pub mod hilbert;
pub mod ideal;
pub mod local;
pub mod modvec;
pub mod module;

pub use engine::Buchberger;
pub use hilbert::{count_standard_monomials, polynomial_ring_dim, smooth_milnor_algebra_dim};
pub use ideal::{buchberger, normal_form, IdealBasis};
pub use local::{local_quotient_dim, local_standard_basis, mora_normal_form, LocalDim};
pub use modvec::{ModTerm, ModVec};
pub use module::{
    minimize, syzygies, syzygy_module, BettiEntry, BettiTable, GradedModulePresentation, HilbertFunction,
    MinimalGenerators, ModuleKind, Resolution, ResolutionLevel,
};
