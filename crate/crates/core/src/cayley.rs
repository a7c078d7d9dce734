//! Embedding an abstract finite digroup into a transformation digroup.
//!
//! With a bar-unit `e` fixed, `Gamma` is the set of fibers of `g -> e -> g`, the group
//! is generated by the left translations `x -> f <- x` acting on fibers, `Delta` is the
//! halo (with `e` first), and `theta` sends a translation to `Psi_f` on the halo. The
//! map `alpha -> f  |->  l_{alpha, L_f}` is then checked to be an isomorphism onto the
//! constructed digroup.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::digroup::{Digroup, DigroupError, ElementId, FiberPartition};
use crate::perm::{self, GroupHomomorphism, PermError, PermGroup, Permutation};
use crate::transform::{
    LMap, TransDigroup, TransDigroupSpec, TransformError, DEFAULT_MATERIALIZATION_GUARD,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CayleyError {
    #[error(transparent)]
    Digroup(#[from] DigroupError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("embedding check `{check}` failed: {detail}")]
    Verification { check: &'static str, detail: String },
}

fn claim(detail: String) -> CayleyError {
    CayleyError::Digroup(DigroupError::ClaimViolated(detail))
}

/// Left translations of a digroup acting on its fiber partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationGroup {
    pub bar_unit: ElementId,
    pub partition: FiberPartition,
    pub group: PermGroup,
    /// `rep[f]` is the translation by `f`.
    pub rep: Vec<Permutation>,
}

pub fn translation_group(d: &Digroup, e: ElementId) -> Result<TranslationGroup, CayleyError> {
    let partition = d.fiber_partition(e)?;
    let rep = (0..d.order())
        .map(|f| d.left_translation(f, &partition))
        .collect::<Result<Vec<_>, _>>()?;
    let distinct: BTreeSet<Permutation> = rep.iter().cloned().collect();
    let gens: Vec<Permutation> = distinct
        .iter()
        .filter(|p| !p.is_identity())
        .cloned()
        .collect();
    let group = perm::closure(partition.len(), &gens)?;
    if group.order() != distinct.len() {
        return Err(claim(format!(
            "translations form {} permutations but generate a group of order {}",
            distinct.len(),
            group.order()
        )));
    }
    Ok(TranslationGroup {
        bar_unit: e,
        partition,
        group,
        rep,
    })
}

/// The halo listed with `e` first, then the remaining bar-units ascending.
pub fn delta_order(d: &Digroup, e: ElementId) -> Vec<ElementId> {
    std::iter::once(e)
        .chain(d.halo().iter().copied().filter(|&a| a != e))
        .collect()
}

/// `Psi_f` on the halo as a permutation of positions in `delta`.
fn psi_on(
    d: &Digroup,
    f: ElementId,
    e: ElementId,
    delta: &[ElementId],
) -> Result<Permutation, CayleyError> {
    let map = d.psi_map(f, e)?;
    let images = delta
        .iter()
        .map(|&a| {
            delta
                .iter()
                .position(|&b| b == map[a])
                .ok_or_else(|| claim(format!("Psi_{f} sends {a} outside the halo")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Permutation::new(images)?)
}

/// `theta: L_f |-> Psi_f` restricted to the halo, in the `delta_order` labeling.
///
/// Fails if two elements with the same translation disagree on the halo, or if the
/// assignment is not multiplicative.
pub fn theta_hom(d: &Digroup, t: &TranslationGroup) -> Result<GroupHomomorphism, CayleyError> {
    let e = t.bar_unit;
    let delta = delta_order(d, e);
    let mut images: Vec<Option<Permutation>> = vec![None; t.group.order()];
    for f in 0..d.order() {
        let gi = t
            .group
            .index_of(&t.rep[f])
            .expect("translation lies in its group");
        let psi = psi_on(d, f, e, &delta)?;
        match &images[gi] {
            Some(existing) if *existing != psi => {
                return Err(claim(format!(
                    "elements with translation {} give different Psi on the halo",
                    t.rep[f]
                )));
            }
            Some(_) => {}
            None => images[gi] = Some(psi),
        }
    }
    let images = images
        .into_iter()
        .map(|p| p.expect("every translation is realized"))
        .collect();
    match GroupHomomorphism::from_element_images(t.group.clone(), delta.len(), images) {
        Ok(h) => Ok(h),
        Err(PermError::NotAHomomorphism(why)) => {
            Err(claim(format!("theta is not multiplicative: {why}")))
        }
        Err(other) => Err(other.into()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub injective: bool,
    pub preserves_left: bool,
    pub preserves_right: bool,
    pub surjective: bool,
    pub order: usize,
    pub halo_size: usize,
    pub translation_group_order: usize,
}

impl Evidence {
    pub fn all_passed(&self) -> bool {
        self.injective
            && self.preserves_left
            && self.preserves_right
            && self.surjective
            && self.order == self.halo_size * self.translation_group_order
    }
}

/// A verified isomorphism from a digroup onto a transformation digroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub bar_unit: ElementId,
    /// `delta[s]` is the bar-unit labelled `s` in the target.
    pub delta: Vec<ElementId>,
    pub translations: TranslationGroup,
    pub target: TransDigroup,
    /// `map[x]` is the image of `x`.
    pub map: Vec<LMap>,
    pub evidence: Evidence,
}

impl Embedding {
    pub fn spec(&self) -> &TransDigroupSpec {
        &self.target.spec
    }

    /// Image of each element as an index into the target digroup.
    pub fn target_indices(&self) -> Vec<ElementId> {
        self.map
            .iter()
            .map(|l| self.target.index_of(l).expect("verified embedding"))
            .collect()
    }
}

pub fn embed(d: &Digroup, e: ElementId) -> Result<Embedding, CayleyError> {
    let translations = translation_group(d, e)?;
    let theta = theta_hom(d, &translations)?;
    let delta = delta_order(d, e);
    let spec = TransDigroupSpec::new(translations.partition.len(), delta.len(), theta, 0)?;
    let target = spec.build_guarded(DEFAULT_MATERIALIZATION_GUARD.max(d.order()))?;
    let map = (0..d.order())
        .map(|x| {
            let (alpha, f) = d.decompose(x, e)?;
            let s = delta
                .iter()
                .position(|&a| a == alpha)
                .expect("alpha is a bar-unit");
            Ok(LMap::new(s, translations.rep[f].clone()))
        })
        .collect::<Result<Vec<_>, CayleyError>>()?;
    let mut embedding = Embedding {
        bar_unit: e,
        delta,
        translations,
        target,
        map,
        evidence: Evidence {
            injective: false,
            preserves_left: false,
            preserves_right: false,
            surjective: false,
            order: d.order(),
            halo_size: 0,
            translation_group_order: 0,
        },
    };
    embedding.evidence = verify_embedding(d, &embedding)?;
    Ok(embedding)
}

/// Checks injectivity, both homomorphism laws, surjectivity onto the constructed
/// digroup, and `|D| = |halo| * |translation group|`.
pub fn verify_embedding(d: &Digroup, emb: &Embedding) -> Result<Evidence, CayleyError> {
    let n = d.order();
    let fail = |check, detail| CayleyError::Verification { check, detail };
    if emb.map.len() != n {
        return Err(fail(
            "domain",
            format!("map has {} entries for order {n}", emb.map.len()),
        ));
    }
    let target = &emb.target;
    let idx = emb
        .map
        .iter()
        .enumerate()
        .map(|(x, l)| {
            target
                .index_of(l)
                .ok_or_else(|| fail("codomain", format!("image {l} of {x} is not in the target")))
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut preimage = vec![None; target.digroup.order()];
    for (x, &i) in idx.iter().enumerate() {
        if let Some(y) = preimage[i] {
            return Err(fail(
                "injective",
                format!("elements {y} and {x} both map to {}", emb.map[x]),
            ));
        }
        preimage[i] = Some(x);
    }
    for x in 0..n {
        for y in 0..n {
            if idx[d.left(x, y)] != target.digroup.left(idx[x], idx[y]) {
                return Err(fail("preserves_left", format!("pair ({x}, {y})")));
            }
            if idx[d.right(x, y)] != target.digroup.right(idx[x], idx[y]) {
                return Err(fail("preserves_right", format!("pair ({x}, {y})")));
            }
        }
    }
    if let Some(missed) = preimage.iter().position(Option::is_none) {
        return Err(fail(
            "surjective",
            format!("{} has no preimage", target.lmap(missed)),
        ));
    }
    let halo_size = d.halo().len();
    let translation_group_order = emb.translations.group.order();
    if n != halo_size * translation_group_order {
        return Err(fail(
            "order_factorization",
            format!("{n} != {halo_size} * {translation_group_order}"),
        ));
    }
    Ok(Evidence {
        injective: true,
        preserves_left: true,
        preserves_right: true,
        surjective: true,
        order: n,
        halo_size,
        translation_group_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digroup::find_isomorphism;

    fn ex4() -> Digroup {
        let sigma = Permutation::swap(2, 0, 1);
        TransDigroupSpec::from_generators(
            2,
            2,
            std::slice::from_ref(&sigma),
            std::slice::from_ref(&sigma),
            0,
        )
        .unwrap()
        .build()
        .unwrap()
        .digroup
    }

    #[test]
    fn translation_group_examples() {
        let c5 = Digroup::cyclic(5).unwrap();
        let t = translation_group(&c5, 0).unwrap();
        assert_eq!(t.group.order(), 5);
        assert_eq!(t.rep[1].images(), &[1, 2, 3, 4, 0]);

        let p3 = Digroup::projection(3).unwrap();
        let t = translation_group(&p3, 1).unwrap();
        assert_eq!(t.partition.len(), 1);
        assert_eq!(t.group.order(), 1);

        let t = translation_group(&ex4(), 0).unwrap();
        assert_eq!(t.partition.len(), 2);
        assert_eq!(t.group.order(), 2);
    }

    #[test]
    fn theta_examples() {
        let c4 = Digroup::cyclic(4).unwrap();
        let t = translation_group(&c4, 0).unwrap();
        let th = theta_hom(&c4, &t).unwrap();
        assert!(th
            .images()
            .iter()
            .all(|p| p.is_identity() && p.degree() == 1));

        let d = ex4();
        let t = translation_group(&d, 0).unwrap();
        let th = theta_hom(&d, &t).unwrap();
        let swap = t.rep[2].clone();
        assert_eq!(th.apply(&swap).unwrap(), &Permutation::swap(2, 0, 1));

        let p4 = Digroup::projection(4).unwrap();
        let t = translation_group(&p4, 0).unwrap();
        let th = theta_hom(&p4, &t).unwrap();
        assert_eq!(th.images(), &[Permutation::identity(4)]);
    }

    #[test]
    fn group_embeds_as_left_regular_representation() {
        let c4 = Digroup::cyclic(4).unwrap();
        let emb = embed(&c4, 0).unwrap();
        assert_eq!(emb.spec().delta_size(), 1);
        assert_eq!(emb.spec().gamma_size(), 4);
        for x in 0..4 {
            assert_eq!(emb.map[x].s, 0);
            let expected: Vec<usize> = (0..4).map(|y| (x + y) % 4).collect();
            assert_eq!(emb.map[x].f.images(), expected.as_slice());
        }
    }

    #[test]
    fn ex4_embedding() {
        let d = ex4();
        let emb = embed(&d, 0).unwrap();
        assert_eq!(emb.evidence.halo_size, 2);
        assert_eq!(emb.evidence.translation_group_order, 2);
        assert!(emb.evidence.all_passed());
        // l_{1,sigma} = l_{1,1} -> l_{0,sigma}: alpha is the second bar-unit
        assert_eq!(emb.map[3], LMap::new(1, Permutation::swap(2, 0, 1)));
        assert_eq!(emb.map[0], emb.spec().bar_unit());
    }

    #[test]
    fn projection_embedding() {
        let p2 = Digroup::projection(2).unwrap();
        let emb = embed(&p2, 0).unwrap();
        assert_eq!(emb.spec().gamma_size(), 1);
        assert_eq!(emb.spec().delta_size(), 2);
    }

    #[test]
    fn bar_unit_choice_does_not_change_the_target() {
        let d = ex4();
        let a = embed(&d, 0).unwrap();
        let b = embed(&d, 1).unwrap();
        assert_eq!(b.map[1], b.spec().bar_unit());
        assert!(find_isomorphism(&a.target.digroup, &b.target.digroup).is_some());
    }

    #[test]
    fn tampered_embedding_is_rejected() {
        let d = ex4();
        let mut emb = embed(&d, 0).unwrap();
        emb.map.swap(2, 3);
        assert!(matches!(
            verify_embedding(&d, &emb),
            Err(CayleyError::Verification {
                check: "preserves_left",
                ..
            }) | Err(CayleyError::Verification {
                check: "preserves_right",
                ..
            })
        ));
        emb.map[2] = emb.map[3].clone();
        assert!(matches!(
            verify_embedding(&d, &emb),
            Err(CayleyError::Verification {
                check: "injective",
                ..
            })
        ));
    }
}
