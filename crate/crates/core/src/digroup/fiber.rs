//! The fiber partition of `g -> e -> g`, left translations acting on it, the halo
//! permutations `Psi_f`, and the halo factorization `x = alpha -> f`.

use serde::Serialize;

use super::{Digroup, DigroupError, ElementId};
use crate::perm::Permutation;

/// Partition of the carrier by the value of `e -> g`.
///
/// Fibers are ordered by their least member; `representatives[i]` is the common value
/// `e -> g` on fiber `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberPartition {
    pub wrt: ElementId,
    pub fibers: Vec<Vec<ElementId>>,
    pub representatives: Vec<ElementId>,
    #[serde(skip)]
    fiber_of: Vec<usize>,
}

impl FiberPartition {
    pub fn len(&self) -> usize {
        self.fibers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fibers.is_empty()
    }

    /// Index of the fiber containing `x`.
    pub fn fiber_of(&self, x: ElementId) -> usize {
        self.fiber_of[x]
    }
}

impl Digroup {
    pub fn fiber_partition(&self, e: ElementId) -> Result<FiberPartition, DigroupError> {
        self.check_bar_unit(e)?;
        let n = self.order();
        let mut representatives: Vec<ElementId> = Vec::new();
        let mut fibers: Vec<Vec<ElementId>> = Vec::new();
        let mut fiber_of = vec![0; n];
        for (g, slot) in fiber_of.iter_mut().enumerate() {
            let value = self.left(e, g);
            let i = match representatives.iter().position(|&r| r == value) {
                Some(i) => i,
                None => {
                    representatives.push(value);
                    fibers.push(Vec::new());
                    representatives.len() - 1
                }
            };
            fibers[i].push(g);
            *slot = i;
        }
        Ok(FiberPartition {
            wrt: e,
            fibers,
            representatives,
            fiber_of,
        })
    }

    /// The permutation of fiber indices induced by `x -> f <- x`.
    ///
    /// Fails if some fiber is not carried into a single fiber, or two fibers collide;
    /// neither can happen for a digroup.
    pub fn left_translation(
        &self,
        f: ElementId,
        partition: &FiberPartition,
    ) -> Result<Permutation, DigroupError> {
        self.check_element(f)?;
        let images = partition
            .fibers
            .iter()
            .enumerate()
            .map(|(i, fiber)| {
                let target = partition.fiber_of(self.right(f, fiber[0]));
                match fiber
                    .iter()
                    .find(|&&x| partition.fiber_of(self.right(f, x)) != target)
                {
                    Some(&x) => Err(DigroupError::ClaimViolated(format!(
                        "translation by {f} splits fiber {i} (at {} and {x})",
                        fiber[0]
                    ))),
                    None => Ok(target),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Permutation::new(images).map_err(|_| {
            DigroupError::ClaimViolated(format!(
                "translation by {f} is not a permutation of fibers"
            ))
        })
    }

    /// `Psi_f(x) = f <- x -> f^l(e)` over the whole carrier.
    ///
    /// Also checks that the right inverse `f^r(e)` gives the same map.
    pub fn psi_map(&self, f: ElementId, e: ElementId) -> Result<Vec<ElementId>, DigroupError> {
        let inv = self.inverses(f, e)?;
        (0..self.order())
            .map(|x| {
                let via_left = self.left(self.right(f, x), inv.left_inv);
                let via_right = self.left(self.right(f, x), inv.right_inv);
                if via_left != via_right {
                    return Err(DigroupError::ClaimViolated(format!(
                        "Psi_{f}({x}) differs between left and right inverse w.r.t. {e}"
                    )));
                }
                Ok(via_left)
            })
            .collect()
    }

    /// `Psi_f` restricted to the halo, as a permutation of halo positions
    /// (the halo in ascending order). Uses the least bar-unit for the inverse.
    pub fn psi(&self, f: ElementId) -> Result<Permutation, DigroupError> {
        self.psi_wrt(f, self.default_bar_unit())
    }

    pub fn psi_wrt(&self, f: ElementId, e: ElementId) -> Result<Permutation, DigroupError> {
        let map = self.psi_map(f, e)?;
        let halo = self.halo();
        let images = halo
            .iter()
            .map(|&a| {
                halo.binary_search(&map[a]).map_err(|_| {
                    DigroupError::ClaimViolated(format!(
                        "Psi_{f} sends bar-unit {a} outside the halo"
                    ))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Permutation::new(images).map_err(|_| {
            DigroupError::ClaimViolated(format!("Psi_{f} is not injective on the halo"))
        })
    }

    /// Writes `x = alpha -> f` with `alpha = x -> x^l(e)` a bar-unit and `f = e -> x`.
    ///
    /// Checks that `alpha` is a bar-unit, that the product reproduces `x`, and that no
    /// other bar-unit occurs in any factorization of `x`.
    pub fn decompose(
        &self,
        x: ElementId,
        e: ElementId,
    ) -> Result<(ElementId, ElementId), DigroupError> {
        let inv = self.inverses(x, e)?;
        let alpha = self.left(x, inv.left_inv);
        let f = self.left(e, x);
        if !self.is_bar_unit(alpha) {
            return Err(DigroupError::ClaimViolated(format!(
                "{x} -> {} = {alpha} is not a bar-unit",
                inv.left_inv
            )));
        }
        if self.left(alpha, f) != x {
            return Err(DigroupError::ClaimViolated(format!(
                "{alpha} -> {f} = {} differs from {x}",
                self.left(alpha, f)
            )));
        }
        for &beta in self.halo() {
            if beta != alpha && (0..self.order()).any(|g| self.left(beta, g) == x) {
                return Err(DigroupError::ClaimViolated(format!(
                    "{x} factors through both bar-units {alpha} and {beta}"
                )));
            }
        }
        Ok((alpha, f))
    }
}
