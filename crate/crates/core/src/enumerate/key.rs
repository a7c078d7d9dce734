use serde::Serialize;

use crate::digroup::{Digroup, ElementProfile};

/// Isomorphism-invariant summary of a digroup. Equal keys are necessary for
/// isomorphism, not sufficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalKey {
    pub order: usize,
    pub halo: usize,
    pub identities: usize,
    pub target_center: usize,
    pub source_center: usize,
    pub profiles: Vec<ElementProfile>,
    /// Sorted colour-refinement classes over both tables.
    pub colors: Vec<u64>,
}

pub fn canonical_key(d: &Digroup) -> CanonicalKey {
    let centers = d.centers();
    let mut profiles = d.element_profiles();
    profiles.sort();
    let mut colors = d.refined_colors();
    colors.sort_unstable();
    CanonicalKey {
        order: d.order(),
        halo: d.halo().len(),
        identities: d.identities().len(),
        target_center: centers.target.len(),
        source_center: centers.source.len(),
        profiles,
        colors,
    }
}
