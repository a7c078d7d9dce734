//! Finite digroups: axiom checking, structural invariants, transformation digroups
//! built from permutation-group data, and the embedding of any finite digroup into a
//! transformation digroup.

pub mod cayley;
pub mod digroup;
pub mod enumerate;
pub mod io;
pub mod perm;
pub mod report;
pub mod transform;

pub use cayley::{embed, verify_embedding, Embedding};
pub use digroup::{find_isomorphism, validate_digroup, Digroup, DigroupError, ElementId, OpTable};
pub use enumerate::{brute_enumerate, constructive_enumerate, cross_check, Catalog};
pub use perm::{GroupHomomorphism, PermGroup, Permutation};
pub use transform::{LMap, TransDigroup, TransDigroupSpec};
