//! Isomorphism testing by backtracking over element assignments.
//!
//! Candidates are pruned by per-element invariants refined over both tables.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use serde::Serialize;

use super::{Digroup, ElementId};

/// Tail length and period of the power sequence `x, x*x, (x*x)*x, ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct OrderProfile {
    pub tail: usize,
    pub period: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ElementProfile {
    pub bar_unit: bool,
    pub identity: bool,
    pub target_center: bool,
    pub source_center: bool,
    pub left_order: OrderProfile,
    pub right_order: OrderProfile,
}

fn order_profile(x: ElementId, op: impl Fn(usize, usize) -> usize, n: usize) -> OrderProfile {
    let mut first_seen = vec![usize::MAX; n];
    let mut p = x;
    let mut k = 0;
    while first_seen[p] == usize::MAX {
        first_seen[p] = k;
        p = op(p, x);
        k += 1;
    }
    OrderProfile {
        tail: first_seen[p],
        period: k - first_seen[p],
    }
}

impl Digroup {
    pub fn element_profiles(&self) -> Vec<ElementProfile> {
        let n = self.order();
        let ids = self.identities();
        let centers = self.centers();
        (0..n)
            .map(|x| ElementProfile {
                bar_unit: self.is_bar_unit(x),
                identity: ids.contains(&x),
                target_center: centers.target.contains(&x),
                source_center: centers.source.contains(&x),
                left_order: order_profile(x, |a, b| self.left(a, b), n),
                right_order: order_profile(x, |a, b| self.right(a, b), n),
            })
            .collect()
    }

    /// Colour refinement over both tables, seeded with the element profiles.
    ///
    /// Colours are hashes of isomorphism-invariant signatures, so they are comparable
    /// across digroups: an isomorphism must preserve them.
    pub fn refined_colors(&self) -> Vec<u64> {
        let n = self.order();
        let hash = |v: &dyn Fn(&mut DefaultHasher)| {
            let mut h = DefaultHasher::new();
            v(&mut h);
            h.finish()
        };
        let mut colors: Vec<u64> = self
            .element_profiles()
            .iter()
            .map(|p| hash(&|h| p.hash(h)))
            .collect();
        let distinct = |c: &[u64]| {
            let mut v = c.to_vec();
            v.sort_unstable();
            v.dedup();
            v.len()
        };
        let mut classes = distinct(&colors);
        loop {
            let next: Vec<u64> = (0..n)
                .map(|x| {
                    let mut sig: Vec<[u64; 5]> = (0..n)
                        .map(|y| {
                            [
                                colors[y],
                                colors[self.left(x, y)],
                                colors[self.left(y, x)],
                                colors[self.right(x, y)],
                                colors[self.right(y, x)],
                            ]
                        })
                        .collect();
                    sig.sort_unstable();
                    hash(&|h| {
                        colors[x].hash(h);
                        sig.hash(h);
                    })
                })
                .collect();
            let c = distinct(&next);
            colors = next;
            if c == classes {
                return colors;
            }
            classes = c;
        }
    }
}

/// Whether `map` is a bijection `a -> b` preserving both products.
pub fn is_isomorphism(a: &Digroup, b: &Digroup, map: &[ElementId]) -> bool {
    let n = a.order();
    if b.order() != n || map.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &y in map {
        if y >= n || hit[y] {
            return false;
        }
        hit[y] = true;
    }
    (0..n).all(|x| {
        (0..n).all(|y| {
            map[a.left(x, y)] == b.left(map[x], map[y])
                && map[a.right(x, y)] == b.right(map[x], map[y])
        })
    })
}

/// The first isomorphism `a -> b` in lexicographic order of image lists, if any.
pub fn find_isomorphism(a: &Digroup, b: &Digroup) -> Option<Vec<ElementId>> {
    let n = a.order();
    if b.order() != n
        || a.halo().len() != b.halo().len()
        || a.identities().len() != b.identities().len()
    {
        return None;
    }
    let (ca, cb) = (a.centers(), b.centers());
    if ca.target.len() != cb.target.len() || ca.source.len() != cb.source.len() {
        return None;
    }
    let (colors_a, colors_b) = (a.refined_colors(), b.refined_colors());
    let (mut sa, mut sb) = (colors_a.clone(), colors_b.clone());
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    let candidates: Vec<Vec<ElementId>> = (0..n)
        .map(|x| (0..n).filter(|&y| colors_b[y] == colors_a[x]).collect())
        .collect();
    let mut search = Search {
        a,
        b,
        candidates,
        map: vec![None; n],
        used_by: vec![None; n],
    };
    if search.extend(0) {
        let map: Vec<ElementId> = search
            .map
            .into_iter()
            .map(|m| m.expect("complete"))
            .collect();
        debug_assert!(is_isomorphism(a, b, &map));
        Some(map)
    } else {
        None
    }
}

struct Search<'a> {
    a: &'a Digroup,
    b: &'a Digroup,
    candidates: Vec<Vec<ElementId>>,
    map: Vec<Option<ElementId>>,
    used_by: Vec<Option<ElementId>>,
}

impl Search<'_> {
    fn extend(&mut self, x: usize) -> bool {
        let n = self.a.order();
        if x == n {
            return true;
        }
        for k in 0..self.candidates[x].len() {
            let y = self.candidates[x][k];
            if self.used_by[y].is_some() {
                continue;
            }
            self.map[x] = Some(y);
            self.used_by[y] = Some(x);
            if self.consistent(x) && self.extend(x + 1) {
                return true;
            }
            self.map[x] = None;
            self.used_by[y] = None;
        }
        false
    }

    /// Checks every product among assigned elements that involves `x`.
    fn consistent(&self, x: usize) -> bool {
        let (a, b) = (self.a, self.b);
        for p in 0..=x {
            let mp = self.map[p].expect("prefix assigned");
            for q in 0..=x {
                let mq = self.map[q].expect("prefix assigned");
                let pairs = [
                    (a.left(p, q), b.left(mp, mq)),
                    (a.right(p, q), b.right(mp, mq)),
                ];
                for (prod, image) in pairs {
                    if p != x && q != x && prod != x {
                        continue;
                    }
                    match self.map[prod] {
                        Some(m) if m != image => return false,
                        None if self.used_by[image].is_some() => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }
}
