//! Structural properties checked exhaustively on every catalog digroup of order at
//! most 6, plus randomized relabelings.

use std::collections::BTreeSet;

use digroup::cayley::{embed, translation_group};
use digroup::digroup::is_isomorphism;
use digroup::enumerate::{brute_enumerate, canonical_key, constructive_enumerate};
use digroup::{find_isomorphism, validate_digroup, Digroup, OpTable};
use proptest::prelude::*;

fn catalog() -> Vec<Digroup> {
    (1..=6)
        .flat_map(|n| constructive_enumerate(n).unwrap().classes)
        .collect()
}

/// Inverse by scanning the table, independent of the library's solver.
fn scan_left_inverse(d: &Digroup, x: usize, e: usize) -> usize {
    let sols: Vec<usize> = (0..d.order()).filter(|&y| d.left(y, x) == e).collect();
    assert_eq!(sols.len(), 1, "left inverse of {x} w.r.t. {e}");
    sols[0]
}

fn scan_right_inverse(d: &Digroup, x: usize, e: usize) -> usize {
    let sols: Vec<usize> = (0..d.order()).filter(|&y| d.right(x, y) == e).collect();
    assert_eq!(sols.len(), 1, "right inverse of {x} w.r.t. {e}");
    sols[0]
}

fn as_set_partition(fibers: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    fibers.iter().cloned().collect()
}

#[test]
fn cyclic_and_projection_digroups_are_catalogued_separately() {
    for n in 2..=6 {
        let cat = constructive_enumerate(n).unwrap();
        assert!(cat.classify(&Digroup::cyclic(n).unwrap()).is_some());
        assert!(cat.classify(&Digroup::projection(n).unwrap()).is_some());
        let (i, _) = cat.classify(&Digroup::cyclic(n).unwrap()).unwrap();
        let (j, _) = cat.classify(&Digroup::projection(n).unwrap()).unwrap();
        assert_ne!(i, j);
    }
}

#[test]
fn inverses_translate_between_bar_units() {
    for d in catalog() {
        for &alpha in d.halo() {
            for &e in d.halo() {
                for x in 0..d.order() {
                    let (le, re) = (scan_left_inverse(&d, x, e), scan_right_inverse(&d, x, e));
                    assert_eq!(scan_left_inverse(&d, x, alpha), d.left(alpha, le));
                    assert_eq!(scan_right_inverse(&d, x, alpha), d.right(re, alpha));
                    let p = d.inverses(x, alpha).unwrap();
                    assert_eq!(
                        (p.left_inv, p.right_inv),
                        (
                            scan_left_inverse(&d, x, alpha),
                            scan_right_inverse(&d, x, alpha)
                        )
                    );
                }
            }
        }
    }
}

#[test]
fn identities_are_the_bar_units_with_two_sided_inverses() {
    for d in catalog() {
        assert_eq!(d.identities(), d.identities_by_inverses().unwrap());
        for e in d.identities() {
            assert!(d.is_bar_unit(e));
        }
    }
}

#[test]
fn centers_contain_the_halo_and_are_subdigroups() {
    for d in catalog() {
        let c = d.centers();
        for a in d.halo() {
            assert!(c.target.contains(a));
        }
        assert!(d.is_subdigroup(&c.target).unwrap());
        if !d.identities().is_empty() {
            assert!(d.is_subdigroup(&c.source).unwrap());
        }
    }
}

#[test]
fn fibers_do_not_depend_on_the_bar_unit() {
    for d in catalog() {
        let reference = as_set_partition(&d.fiber_partition(d.default_bar_unit()).unwrap().fibers);
        for &e in d.halo() {
            assert_eq!(
                as_set_partition(&d.fiber_partition(e).unwrap().fibers),
                reference
            );
        }
    }
}

#[test]
fn translations_are_multiplicative_under_both_products() {
    for d in catalog() {
        for &e in d.halo() {
            let t = translation_group(&d, e).unwrap();
            for &a in d.halo() {
                assert!(t.rep[a].is_identity());
            }
            for f in 0..d.order() {
                for g in 0..d.order() {
                    let composed = t.rep[f].compose(&t.rep[g]).unwrap();
                    assert_eq!(t.rep[d.left(f, g)], composed);
                    assert_eq!(t.rep[d.right(f, g)], composed);
                }
            }
        }
    }
}

#[test]
fn translations_carry_fibers_onto_fibers() {
    for d in catalog() {
        let e = d.default_bar_unit();
        let p = d.fiber_partition(e).unwrap();
        let t = translation_group(&d, e).unwrap();
        for f in 0..d.order() {
            for (i, fiber) in p.fibers.iter().enumerate() {
                let image: BTreeSet<usize> = fiber.iter().map(|&x| d.right(f, x)).collect();
                let target_value = d.left(d.left(e, f), p.representatives[i]);
                let expected: BTreeSet<usize> = (0..d.order())
                    .filter(|&y| d.left(e, y) == target_value)
                    .collect();
                assert_eq!(image, expected);
                assert_eq!(t.rep[f].apply(i), p.fiber_of(d.right(f, fiber[0])));
            }
        }
    }
}

#[test]
fn psi_is_multiplicative_and_bar_unit_independent() {
    for d in catalog() {
        for f in 0..d.order() {
            let base = d.psi(f).unwrap();
            for &e in d.halo() {
                assert_eq!(d.psi_wrt(f, e).unwrap(), base);
            }
            for g in 0..d.order() {
                let composed = base.compose(&d.psi(g).unwrap()).unwrap();
                assert_eq!(d.psi(d.left(f, g)).unwrap(), composed);
                assert_eq!(d.psi(d.right(f, g)).unwrap(), composed);
            }
        }
        for &a in d.halo() {
            assert!(d.psi(a).unwrap().is_identity());
        }
    }
}

#[test]
fn decomposition_is_sound() {
    for d in catalog() {
        for &e in d.halo() {
            for x in 0..d.order() {
                let (alpha, f) = d.decompose(x, e).unwrap();
                assert!(d.is_bar_unit(alpha));
                assert_eq!(d.left(alpha, f), x);
                let through: Vec<usize> = d
                    .halo()
                    .iter()
                    .copied()
                    .filter(|&b| (0..d.order()).any(|g| d.left(b, g) == x))
                    .collect();
                assert_eq!(through, vec![alpha]);
            }
        }
    }
}

#[test]
fn isomorphism_search_is_an_equivalence_on_the_catalog() {
    let cat = catalog();
    for (i, a) in cat.iter().enumerate() {
        let id = find_isomorphism(a, a).unwrap();
        assert!(is_isomorphism(a, a, &id));
        for (j, b) in cat.iter().enumerate() {
            let ab = find_isomorphism(a, b);
            assert_eq!(ab.is_some(), find_isomorphism(b, a).is_some());
            assert_eq!(ab.is_some(), i == j);
            if canonical_key(a) != canonical_key(b) {
                assert!(ab.is_none());
            }
        }
    }
}

#[test]
fn every_bar_unit_gives_an_isomorphic_target() {
    for d in catalog() {
        let first = embed(&d, d.default_bar_unit()).unwrap();
        for &e in d.halo() {
            let other = embed(&d, e).unwrap();
            assert_eq!(other.map[e], other.spec().bar_unit());
            assert!(find_isomorphism(&first.target.digroup, &other.target.digroup).is_some());
        }
    }
}

/// All 256 pairs of 2x2 tables, checked against the axioms and deduplicated by trying
/// both bijections.
#[test]
fn order_two_brute_search_matches_full_scan() {
    let mut classes: Vec<Digroup> = Vec::new();
    for code in 0u32..256 {
        let bits: Vec<usize> = (0..8).map(|b| ((code >> b) & 1) as usize).collect();
        let left = OpTable::new(2, bits[..4].to_vec()).unwrap();
        let right = OpTable::new(2, bits[4..].to_vec()).unwrap();
        if !validate_digroup(&left, &right).unwrap().valid {
            continue;
        }
        let d = Digroup::new(left, right).unwrap();
        let known = classes
            .iter()
            .any(|c| is_isomorphism(&d, c, &[0, 1]) || is_isomorphism(&d, c, &[1, 0]));
        if !known {
            classes.push(d);
        }
    }
    assert_eq!(brute_enumerate(2).unwrap().len(), classes.len());
}

fn relabeling(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn catalog_member() -> impl Strategy<Value = Digroup> {
    let cat = catalog();
    (0..cat.len()).prop_map(move |i| cat[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relabeling_preserves_invariants(
        (d, perm) in catalog_member().prop_flat_map(|d| { let n = d.order(); (Just(d), relabeling(n)) })
    ) {
        let r = d.relabel(&perm).unwrap();
        prop_assert!(validate_digroup(r.left_table(), r.right_table()).unwrap().valid);
        prop_assert_eq!(canonical_key(&d), canonical_key(&r));
        prop_assert!(is_isomorphism(&d, &r, &perm));
        let found = find_isomorphism(&d, &r).unwrap();
        prop_assert!(is_isomorphism(&d, &r, &found));
        let mapped: BTreeSet<usize> = d.halo().iter().map(|&a| perm[a]).collect();
        prop_assert_eq!(mapped, r.halo().iter().copied().collect::<BTreeSet<_>>());
        let ids: BTreeSet<usize> = d.identities().iter().map(|&a| perm[a]).collect();
        prop_assert_eq!(ids, r.identities().into_iter().collect::<BTreeSet<_>>());
    }
}
