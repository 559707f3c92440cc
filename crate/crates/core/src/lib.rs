pub mod algebra;
pub mod certify;
pub mod corpus;
pub mod enumerate;
pub mod error;
pub mod homology;
pub mod linalg;
pub mod module;
pub mod morita;
pub mod refl;
pub mod report;
pub mod search;
pub mod serre;

pub use algebra::{Algebra, Arrow, Generator, Quiver};
pub use error::{Error, Result};
pub use linalg::{Field, Matrix, Rref, Scalar};
pub use module::{direct_sum, hom_dim, hom_space, injective_envelope, projective_cover, Module, ModuleMap, ProjSum, Side};
pub use search::{enumerate_submodules, is_isomorphic, DEFAULT_BUDGET};
pub use homology::{
    ab_sequence, default_cap, evaluation, ext_dim, ext_module, global_dimension, grade, min_inj_resolution_of_regular,
    min_proj_resolution, pd_at_most, sgrade, sgrade_oracle, star_dual, tor, transpose, Bounded,
};
pub use enumerate::{enumerate_modules, is_indecomposable, random_monomial_algebra, Universe};
