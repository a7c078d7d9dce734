//! Classification of small digroups up to isomorphism, by raw table search and by
//! materializing every `(Delta, H, theta)` triple, with a cross-check between the two.

mod brute;
mod groups;
mod key;

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::digroup::{find_isomorphism, Digroup, ElementId};
use crate::perm::{self, PermError, Permutation};
use crate::transform::{TransDigroupSpec, TransformError};

pub use groups::{builtin_groups, groups_of_order, CatalogGroup};
pub use key::{canonical_key, CanonicalKey};

pub const DEFAULT_BRUTE_GUARD: usize = 4;
pub const DEFAULT_CONSTRUCTIVE_GUARD: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("order {n} exceeds the {method} enumeration guard {guard}")]
    GuardExceeded {
        n: usize,
        guard: usize,
        method: Method,
    },
    #[error("order must be positive")]
    ZeroOrder,
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Transform(#[from] TransformError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Brute,
    Constructive,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Brute => "brute",
            Method::Constructive => "constructive",
        })
    }
}

/// How a constructive representative was produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub group_name: &'static str,
    pub spec: TransDigroupSpec,
}

impl Provenance {
    pub fn delta(&self) -> usize {
        self.spec.delta_size()
    }

    /// `theta` on the group's generators, in generator order.
    pub fn theta_images(&self) -> Vec<Permutation> {
        self.spec.generator_images()
    }
}

#[derive(Debug, Clone)]
pub struct Catalog {
    pub order: usize,
    pub method: Method,
    /// One representative per isomorphism class.
    pub classes: Vec<Digroup>,
    /// Parallel to `classes`; filled for the constructive method only.
    pub provenance: Vec<Option<Provenance>>,
    /// Candidates examined before deduplication.
    pub candidates: usize,
}

impl Catalog {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Index of the class isomorphic to `d`, with the isomorphism from `d`.
    pub fn classify(&self, d: &Digroup) -> Option<(usize, Vec<ElementId>)> {
        let k = canonical_key(d);
        self.classes
            .iter()
            .enumerate()
            .filter(|(_, c)| canonical_key(c) == k)
            .find_map(|(i, c)| find_isomorphism(d, c).map(|m| (i, m)))
    }
}

/// Accumulates pairwise non-isomorphic representatives.
struct Dedup {
    buckets: HashMap<CanonicalKey, Vec<usize>>,
    classes: Vec<Digroup>,
    provenance: Vec<Option<Provenance>>,
    candidates: usize,
}

impl Dedup {
    fn new() -> Self {
        Dedup {
            buckets: HashMap::new(),
            classes: Vec::new(),
            provenance: Vec::new(),
            candidates: 0,
        }
    }

    fn offer(&mut self, d: Digroup, prov: Option<Provenance>) {
        self.candidates += 1;
        let bucket = self.buckets.entry(canonical_key(&d)).or_default();
        if bucket
            .iter()
            .any(|&i| find_isomorphism(&d, &self.classes[i]).is_some())
        {
            return;
        }
        bucket.push(self.classes.len());
        self.classes.push(d);
        self.provenance.push(prov);
    }

    fn finish(self, order: usize, method: Method) -> Catalog {
        Catalog {
            order,
            method,
            classes: self.classes,
            provenance: self.provenance,
            candidates: self.candidates,
        }
    }
}

fn check_order(n: usize, guard: usize, method: Method) -> Result<(), EnumError> {
    if n == 0 {
        return Err(EnumError::ZeroOrder);
    }
    if n > guard {
        return Err(EnumError::GuardExceeded { n, guard, method });
    }
    Ok(())
}

pub fn brute_enumerate(n: usize) -> Result<Catalog, EnumError> {
    brute_enumerate_guarded(n, DEFAULT_BRUTE_GUARD)
}

pub fn brute_enumerate_guarded(n: usize, guard: usize) -> Result<Catalog, EnumError> {
    check_order(n, guard, Method::Brute)?;
    let (labeled, _) = brute::labeled_digroups(n);
    let mut dedup = Dedup::new();
    for d in labeled {
        dedup.offer(d, None);
    }
    Ok(dedup.finish(n, Method::Brute))
}

/// Number of labeled digroups of order `n` having 0 as a bar-unit, and the number of
/// search nodes visited to find them.
pub fn brute_search_stats(n: usize) -> Result<(usize, u64), EnumError> {
    check_order(n, DEFAULT_BRUTE_GUARD, Method::Brute)?;
    let (found, nodes) = brute::labeled_digroups(n);
    Ok((found.len(), nodes))
}

pub fn constructive_enumerate(n: usize) -> Result<Catalog, EnumError> {
    constructive_enumerate_guarded(n, DEFAULT_CONSTRUCTIVE_GUARD)
}

pub fn constructive_enumerate_guarded(n: usize, guard: usize) -> Result<Catalog, EnumError> {
    check_order(n, guard, Method::Constructive)?;
    let mut dedup = Dedup::new();
    for d in (1..=n).filter(|&d| n.is_multiple_of(d)) {
        for cg in groups_of_order(n / d) {
            for theta in perm::all_homomorphisms(&cg.group, d)? {
                let spec = TransDigroupSpec::new(cg.group.degree(), d, theta, 0)?;
                let built = spec.build()?;
                let prov = Provenance {
                    group_name: cg.name,
                    spec,
                };
                dedup.offer(built.digroup, Some(prov));
            }
        }
    }
    Ok(dedup.finish(n, Method::Constructive))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassMatch {
    pub brute: usize,
    pub constructive: usize,
    /// Isomorphism from the brute representative to the constructive one.
    pub map: Vec<ElementId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub order: usize,
    pub brute_count: usize,
    pub constructive_count: usize,
    pub matching: Vec<ClassMatch>,
    pub unmatched_brute: Vec<usize>,
    pub unmatched_constructive: Vec<usize>,
}

impl CrossCheck {
    pub fn agrees(&self) -> bool {
        self.brute_count == self.constructive_count
            && self.unmatched_brute.is_empty()
            && self.unmatched_constructive.is_empty()
    }
}

pub fn cross_check(n: usize) -> Result<CrossCheck, EnumError> {
    let brute = brute_enumerate(n)?;
    let constructive = constructive_enumerate(n)?;
    Ok(match_catalogs(&brute, &constructive))
}

pub fn match_catalogs(brute: &Catalog, constructive: &Catalog) -> CrossCheck {
    let mut matching = Vec::new();
    let mut unmatched_brute = Vec::new();
    let mut used = vec![false; constructive.len()];
    for (i, d) in brute.classes.iter().enumerate() {
        match constructive.classify(d) {
            Some((j, map)) if !used[j] => {
                used[j] = true;
                matching.push(ClassMatch {
                    brute: i,
                    constructive: j,
                    map,
                });
            }
            _ => unmatched_brute.push(i),
        }
    }
    let unmatched_constructive = (0..constructive.len()).filter(|&j| !used[j]).collect();
    CrossCheck {
        order: brute.order,
        brute_count: brute.len(),
        constructive_count: constructive.len(),
        matching,
        unmatched_brute,
        unmatched_constructive,
    }
}
