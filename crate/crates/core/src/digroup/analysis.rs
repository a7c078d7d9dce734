//! Invariants of a single digroup: inverses, identities, centers and subdigroups.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::{validate_digroup, Digroup, DigroupError, ElementId, OpTable};

/// Largest order for which [`Digroup::all_subdigroups`] runs without an explicit guard.
pub const DEFAULT_SUBDIGROUP_GUARD: usize = 16;

/// One-sided inverses of an element with respect to the bar-unit `wrt`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InversePair {
    pub left_inv: ElementId,
    pub right_inv: ElementId,
    pub wrt: ElementId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentersPair {
    pub target: Vec<ElementId>,
    pub source: Vec<ElementId>,
}

/// What a subset looks like as a candidate subdigroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubdigroupInfo {
    pub members: Vec<ElementId>,
    pub closed: bool,
    /// Bar-units of the ambient digroup lying in the subset.
    pub ambient_halo: Vec<ElementId>,
    /// Bar-units of the restricted operations (ambient ids), when the subset is closed.
    pub own_halo: Vec<ElementId>,
    pub is_subdigroup: bool,
}

impl Digroup {
    /// The unique `(l, r)` with `l -> x = alpha = x <- r`.
    pub fn inverses(&self, x: ElementId, alpha: ElementId) -> Result<InversePair, DigroupError> {
        self.check_element(x)?;
        self.check_bar_unit(alpha)?;
        let n = self.order();
        let unique = |sols: Vec<usize>, side: &str| match sols.as_slice() {
            [one] => Ok(*one),
            _ => Err(DigroupError::ClaimViolated(format!(
                "{side} inverse of {x} w.r.t. {alpha} has {} solutions",
                sols.len()
            ))),
        };
        let left_inv = unique(
            (0..n).filter(|&y| self.left(y, x) == alpha).collect(),
            "left",
        )?;
        let right_inv = unique(
            (0..n).filter(|&y| self.right(x, y) == alpha).collect(),
            "right",
        )?;
        Ok(InversePair {
            left_inv,
            right_inv,
            wrt: alpha,
        })
    }

    /// Bar-units `e` with `e -> x = x <- e` for every `x`.
    pub fn identities(&self) -> Vec<ElementId> {
        let n = self.order();
        self.halo()
            .iter()
            .copied()
            .filter(|&e| (0..n).all(|x| self.left(e, x) == self.right(x, e)))
            .collect()
    }

    /// Bar-units for which every element's left and right inverses coincide.
    pub fn identities_by_inverses(&self) -> Result<Vec<ElementId>, DigroupError> {
        let mut out = Vec::new();
        for &e in self.halo() {
            let mut all = true;
            for x in 0..self.order() {
                let p = self.inverses(x, e)?;
                if p.left_inv != p.right_inv {
                    all = false;
                    break;
                }
            }
            if all {
                out.push(e);
            }
        }
        Ok(out)
    }

    pub fn centers(&self) -> CentersPair {
        let n = self.order();
        let target = (0..n)
            .filter(|&z| (0..n).all(|x| self.right(z, x) == self.left(x, z)))
            .collect();
        let source = (0..n)
            .filter(|&z| (0..n).all(|x| self.right(x, z) == self.left(z, x)))
            .collect();
        CentersPair { target, source }
    }

    fn members(&self, subset: &[ElementId]) -> Result<Vec<ElementId>, DigroupError> {
        let set: BTreeSet<ElementId> = subset.iter().copied().collect();
        for &x in &set {
            self.check_element(x)?;
        }
        Ok(set.into_iter().collect())
    }

    fn is_closed(&self, members: &[ElementId]) -> bool {
        let mut inside = vec![false; self.order()];
        for &x in members {
            inside[x] = true;
        }
        members.iter().all(|&x| {
            members
                .iter()
                .all(|&y| inside[self.left(x, y)] && inside[self.right(x, y)])
        })
    }

    /// Restriction of both products to a closed subset, relabeled to `0..k` in
    /// ascending member order. `None` when the subset is not closed.
    pub fn restricted_tables(
        &self,
        subset: &[ElementId],
    ) -> Result<Option<(OpTable, OpTable)>, DigroupError> {
        let members = self.members(subset)?;
        if members.is_empty() || !self.is_closed(&members) {
            return Ok(None);
        }
        let pos = |x: ElementId| members.binary_search(&x).expect("closed subset");
        let k = members.len();
        let left = OpTable::from_fn(k, |a, b| pos(self.left(members[a], members[b])))?;
        let right = OpTable::from_fn(k, |a, b| pos(self.right(members[a], members[b])))?;
        Ok(Some((left, right)))
    }

    pub fn subdigroup_info(&self, subset: &[ElementId]) -> Result<SubdigroupInfo, DigroupError> {
        let members = self.members(subset)?;
        let ambient_halo: Vec<ElementId> = members
            .iter()
            .copied()
            .filter(|&x| self.is_bar_unit(x))
            .collect();
        let restricted = self.restricted_tables(&members)?;
        let closed = restricted.is_some();
        let (own_halo, valid) = match restricted {
            Some((l, r)) => {
                let report = validate_digroup(&l, &r)?;
                (
                    report.halo.iter().map(|&i| members[i]).collect(),
                    report.valid,
                )
            }
            None => (Vec::new(), false),
        };
        Ok(SubdigroupInfo {
            is_subdigroup: !ambient_halo.is_empty() && closed && valid,
            members,
            closed,
            ambient_halo,
            own_halo,
        })
    }

    /// Meets the halo, is closed under both products and is a digroup on its own.
    pub fn is_subdigroup(&self, subset: &[ElementId]) -> Result<bool, DigroupError> {
        Ok(self.subdigroup_info(subset)?.is_subdigroup)
    }

    pub fn all_subdigroups(&self) -> Result<Vec<Vec<ElementId>>, DigroupError> {
        self.all_subdigroups_guarded(DEFAULT_SUBDIGROUP_GUARD)
    }

    /// Every subdigroup, sorted by size and then by member list.
    ///
    /// Candidates are the subsets closed under both products that contain a bar-unit,
    /// grown from the closure of each bar-unit by adding one element and re-closing.
    pub fn all_subdigroups_guarded(
        &self,
        guard: usize,
    ) -> Result<Vec<Vec<ElementId>>, DigroupError> {
        let n = self.order();
        if n > guard.min(64) {
            return Err(DigroupError::GuardExceeded { n, guard });
        }
        let close = |mut mask: u64| loop {
            let mut next = mask;
            for x in (0..n).filter(|&x| mask >> x & 1 == 1) {
                for y in (0..n).filter(|&y| mask >> y & 1 == 1) {
                    next |= 1 << self.left(x, y);
                    next |= 1 << self.right(x, y);
                }
            }
            if next == mask {
                return mask;
            }
            mask = next;
        };
        let mut seen: HashSet<u64> = HashSet::new();
        let mut stack: Vec<u64> = Vec::new();
        for &a in self.halo() {
            let m = close(1 << a);
            if seen.insert(m) {
                stack.push(m);
            }
        }
        while let Some(m) = stack.pop() {
            for x in (0..n).filter(|&x| m >> x & 1 == 0) {
                let grown = close(m | 1 << x);
                if seen.insert(grown) {
                    stack.push(grown);
                }
            }
        }
        let mut out = Vec::new();
        for mask in seen {
            let members: Vec<ElementId> = (0..n).filter(|&x| mask >> x & 1 == 1).collect();
            let (l, r) = self
                .restricted_tables(&members)?
                .expect("closed by construction");
            if validate_digroup(&l, &r)?.valid {
                out.push(members);
            }
        }
        out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        Ok(out)
    }
}
