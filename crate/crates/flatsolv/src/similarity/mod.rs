//! Integral similarity machinery: resultants, the Sylvester map and its
//! cokernel, centralizer searches, (A,B)-equivalence orbits, block
//! triangularization, involution and unipotent-extension normal forms.

pub mod blocktri;
pub mod centralizer;
pub mod conjugacy;
pub mod equivalence;
pub mod involution;
pub mod psi;
pub mod resultant;
pub mod unipotent;

pub use blocktri::{block_triangularize, charpoly_factors, BlockTriangularization};
pub use centralizer::{centralizer_search, centralizer_units_mod};
pub use conjugacy::{is_integrally_similar_bounded, is_rationally_similar, BoundedSimilarity};
pub use equivalence::{ab_equivalence_classes, EquivClassSet, EquivConfig, Orbit};
pub use involution::{involution_normal_form, involution_type, InvolutionType};
pub use psi::{coker_psi, kronecker, psi_matrix, CokerPsi};
pub use resultant::{resultant, sylvester};
pub use unipotent::{unipotent_extension_type, unipotent_normal_form, UnipotentExtension};
