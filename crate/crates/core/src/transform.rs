//! Transformation digroups on `Delta x Gamma`.
//!
//! An l-map `l_{s,f}` sends every point `(k, i)` to `(s, f(i))`; it is identified with
//! the pair `(s, f)`. Given a permutation group `G` on `Gamma` and a homomorphism
//! `theta: G -> Sym(Delta)`, the l-maps with `f` in `G` form a digroup under
//!
//! ```text
//! l_{s,f} -> l_{t,g} = l_{s, fg}
//! l_{s,f} <- l_{t,g} = l_{theta(f)(t), fg}
//! ```

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::digroup::{Digroup, DigroupError, ElementId};
use crate::perm::{self, GroupHomomorphism, PermError, PermGroup, Permutation};

/// Largest `|Delta| * |G|` materialized by [`TransDigroupSpec::build`].
pub const DEFAULT_MATERIALIZATION_GUARD: usize = 5000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Digroup(#[from] DigroupError),
    #[error("{what} must be at least 1")]
    EmptySet { what: &'static str },
    #[error("base point {base} is outside Delta of size {delta}")]
    BasePoint { base: usize, delta: usize },
    #[error("group acts on {got} points, but |Gamma| = {gamma}")]
    GroupDegree { gamma: usize, got: usize },
    #[error("theta is defined on a different group")]
    ThetaDomain,
    #[error("theta maps into Sym({got}), but |Delta| = {delta}")]
    ThetaCodomain { delta: usize, got: usize },
    #[error("{0} is not an l-map of this construction")]
    ForeignLMap(LMap),
    #[error("point ({0}, {1}) is outside Delta x Gamma")]
    PointOutOfRange(usize, usize),
    #[error("construction of order {order} exceeds the guard {guard}")]
    GuardExceeded { order: usize, guard: usize },
    #[error("subdigroup data is malformed: {0}")]
    BadSubdigroup(String),
}

/// The l-map `l_{s,f}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LMap {
    pub s: usize,
    pub f: Permutation,
}

impl LMap {
    pub fn new(s: usize, f: Permutation) -> Self {
        LMap { s, f }
    }

    /// `(k, i) -> (s, f(i))`; `k` is ignored.
    pub fn apply(&self, _k: usize, i: usize) -> (usize, usize) {
        (self.s, self.f.apply(i))
    }
}

impl fmt::Display for LMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l({}, {})", self.s, self.f)
    }
}

/// The bijection `(k, i) -> (theta(f)(k), f(i))` of `Delta x Gamma`, with the point
/// `(k, i)` encoded as `k * |Gamma| + i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaPermutation {
    pub f: Permutation,
    pub action: Permutation,
}

impl ThetaPermutation {
    pub fn apply(&self, k: usize, i: usize) -> (usize, usize) {
        let gamma = self.f.degree();
        let p = self.action.apply(k * gamma + i);
        (p / gamma, p % gamma)
    }
}

/// The data `(|Gamma|, |Delta|, G, theta, base point)` of a transformation digroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransDigroupSpec {
    gamma_size: usize,
    delta_size: usize,
    group: PermGroup,
    theta: GroupHomomorphism,
    base_point: usize,
}

impl TransDigroupSpec {
    pub fn new(
        gamma_size: usize,
        delta_size: usize,
        theta: GroupHomomorphism,
        base_point: usize,
    ) -> Result<Self, TransformError> {
        if gamma_size == 0 {
            return Err(TransformError::EmptySet { what: "|Gamma|" });
        }
        if delta_size == 0 {
            return Err(TransformError::EmptySet { what: "|Delta|" });
        }
        let group = theta.domain().clone();
        if group.degree() != gamma_size {
            return Err(TransformError::GroupDegree {
                gamma: gamma_size,
                got: group.degree(),
            });
        }
        if theta.codomain_degree() != delta_size {
            return Err(TransformError::ThetaCodomain {
                delta: delta_size,
                got: theta.codomain_degree(),
            });
        }
        if base_point >= delta_size {
            return Err(TransformError::BasePoint {
                base: base_point,
                delta: delta_size,
            });
        }
        Ok(TransDigroupSpec {
            gamma_size,
            delta_size,
            group,
            theta,
            base_point,
        })
    }

    /// `G` generated by `gens`, with `theta(gens[i]) = theta_images[i]`.
    pub fn from_generators(
        gamma_size: usize,
        delta_size: usize,
        gens: &[Permutation],
        theta_images: &[Permutation],
        base_point: usize,
    ) -> Result<Self, TransformError> {
        if gamma_size == 0 {
            return Err(TransformError::EmptySet { what: "|Gamma|" });
        }
        if delta_size == 0 {
            return Err(TransformError::EmptySet { what: "|Delta|" });
        }
        let group = perm::closure(gamma_size, gens)?;
        let theta = perm::hom_from_images(&group, delta_size, theta_images)?;
        Self::new(gamma_size, delta_size, theta, base_point)
    }

    pub fn gamma_size(&self) -> usize {
        self.gamma_size
    }

    pub fn delta_size(&self) -> usize {
        self.delta_size
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn theta(&self) -> &GroupHomomorphism {
        &self.theta
    }

    pub fn base_point(&self) -> usize {
        self.base_point
    }

    /// `theta` evaluated at each generator of `G`, in generator order.
    pub fn generator_images(&self) -> Vec<Permutation> {
        self.group
            .generators()
            .iter()
            .map(|g| self.theta.apply(g).expect("generator in group").clone())
            .collect()
    }

    pub fn order(&self) -> usize {
        self.delta_size * self.group.order()
    }

    pub fn lmap(&self, s: usize, f: Permutation) -> Result<LMap, TransformError> {
        let l = LMap { s, f };
        self.check(&l)?;
        Ok(l)
    }

    /// The bar-unit `l_{base, 1}`.
    pub fn bar_unit(&self) -> LMap {
        LMap::new(self.base_point, Permutation::identity(self.gamma_size))
    }

    fn check(&self, l: &LMap) -> Result<usize, TransformError> {
        match self.group.index_of(&l.f) {
            Some(g) if l.s < self.delta_size => Ok(g),
            _ => Err(TransformError::ForeignLMap(l.clone())),
        }
    }

    fn theta_of(&self, f: &Permutation) -> Result<&Permutation, TransformError> {
        Ok(self.theta.apply(f)?)
    }

    pub fn lmap_apply(
        &self,
        l: &LMap,
        point: (usize, usize),
    ) -> Result<(usize, usize), TransformError> {
        self.check(l)?;
        let (k, i) = point;
        if k >= self.delta_size || i >= self.gamma_size {
            return Err(TransformError::PointOutOfRange(k, i));
        }
        Ok(l.apply(k, i))
    }

    /// Composition of l-maps as functions: `l_{s,f} l_{t,g} = l_{s,fg}`.
    pub fn lmap_compose(&self, a: &LMap, b: &LMap) -> Result<LMap, TransformError> {
        self.check(a)?;
        self.check(b)?;
        Ok(LMap::new(a.s, a.f.compose(&b.f)?))
    }

    pub fn theta_perm(&self, f: &Permutation) -> Result<ThetaPermutation, TransformError> {
        let tf = self.theta_of(f)?;
        let gamma = self.gamma_size;
        let images = (0..self.delta_size * gamma)
            .map(|p| tf.apply(p / gamma) * gamma + f.apply(p % gamma))
            .collect();
        Ok(ThetaPermutation {
            f: f.clone(),
            action: Permutation::new(images)?,
        })
    }

    /// `lbar_f l_{t,g} = l_{theta(f)(t), fg}`.
    pub fn mixed_compose_left(&self, f: &Permutation, b: &LMap) -> Result<LMap, TransformError> {
        self.check(b)?;
        let tf = self.theta_of(f)?;
        Ok(LMap::new(tf.apply(b.s), f.compose(&b.f)?))
    }

    /// `l_{s,f} lbar_g = l_{s, fg}`.
    pub fn mixed_compose_right(&self, a: &LMap, g: &Permutation) -> Result<LMap, TransformError> {
        self.check(a)?;
        self.theta_of(g)?;
        Ok(LMap::new(a.s, a.f.compose(g)?))
    }

    pub fn left_product(&self, a: &LMap, b: &LMap) -> Result<LMap, TransformError> {
        self.lmap_compose(a, b)
    }

    pub fn right_product(&self, a: &LMap, b: &LMap) -> Result<LMap, TransformError> {
        self.check(a)?;
        self.mixed_compose_left(&a.f, b)
    }

    /// Left and right inverse of `x` w.r.t. the bar-unit `l_{base,1}`:
    /// `l_{base, f^-1}` and `l_{theta(f^-1)(base), f^-1}`.
    pub fn inverse_formulas(&self, x: &LMap) -> Result<(LMap, LMap), TransformError> {
        self.check(x)?;
        let finv = x.f.inverse();
        let right_s = self.theta_of(&finv)?.apply(self.base_point);
        Ok((
            LMap::new(self.base_point, finv.clone()),
            LMap::new(right_s, finv),
        ))
    }

    /// Halo, identities and both centers from their closed forms, without table scans.
    pub fn analyze_formulaic(&self) -> FormulaReport {
        let elements = self.group.elements();
        let id = Permutation::identity(self.gamma_size);
        let image = self.theta.image();
        let stabilizing: Vec<usize> = (0..self.delta_size)
            .filter(|&s| perm::fixes_point(&image, s))
            .collect();
        let center: BTreeSet<Permutation> = perm::center(&self.group).into_iter().collect();
        let kernel: BTreeSet<Permutation> = self.theta.kernel().into_iter().collect();
        let all_s = 0..self.delta_size;

        let halo = all_s.clone().map(|s| LMap::new(s, id.clone())).collect();
        let identities = stabilizing
            .iter()
            .map(|&s| LMap::new(s, id.clone()))
            .collect();
        let target_center = all_s
            .flat_map(|s| {
                elements
                    .iter()
                    .filter(|f| kernel.contains(*f) && center.contains(*f))
                    .map(move |f| LMap::new(s, f.clone()))
            })
            .collect();
        let source_center = stabilizing
            .iter()
            .flat_map(|&s| {
                elements
                    .iter()
                    .filter(|f| center.contains(*f))
                    .map(move |f| LMap::new(s, f.clone()))
            })
            .collect();
        FormulaReport {
            halo,
            identities,
            target_center,
            source_center,
        }
    }

    pub fn build(&self) -> Result<TransDigroup, TransformError> {
        self.build_guarded(DEFAULT_MATERIALIZATION_GUARD)
    }

    /// Tabulates both products. Element `g * |Delta| + s` is `l_{s, G[g]}`, with `G`
    /// in ascending one-line order, so `l_{s,1}` is element `s`.
    pub fn build_guarded(&self, guard: usize) -> Result<TransDigroup, TransformError> {
        let order = self.order();
        if order > guard {
            return Err(TransformError::GuardExceeded { order, guard });
        }
        let d = self.delta_size;
        let g = &self.group;
        let thetas: Vec<&Permutation> = (0..g.order()).map(|i| self.theta.image_at(i)).collect();
        let digroup = Digroup::from_fns(
            order,
            |a, b| g.mul(a / d, b / d) * d + a % d,
            |a, b| g.mul(a / d, b / d) * d + thetas[a / d].apply(b % d),
        )?;
        let elements = (0..order)
            .map(|x| LMap::new(x % d, g.elements()[x / d].clone()))
            .collect();
        Ok(TransDigroup {
            spec: self.clone(),
            elements,
            digroup,
        })
    }

    /// `Omega` nonempty and carried onto itself by `theta(h)` for every `h` in `H <= G`.
    pub fn is_invariant_block(&self, sub: &SubdigroupSpec) -> bool {
        !sub.omega.is_empty()
            && sub.omega.iter().all(|&s| s < self.delta_size)
            && sub.subgroup.is_subset_of(&self.group)
            && sub.subgroup.elements().iter().all(|h| {
                let th = self.theta.apply(h).expect("subgroup of G");
                sub.omega.iter().all(|&s| sub.omega.contains(&th.apply(s)))
            })
    }

    /// The l-maps `l_{Omega x H}`.
    pub fn materialize_sub(&self, sub: &SubdigroupSpec) -> Result<Vec<LMap>, TransformError> {
        if !sub.subgroup.is_subset_of(&self.group) {
            return Err(TransformError::BadSubdigroup(
                "H is not a subgroup of G".into(),
            ));
        }
        if let Some(&s) = sub.omega.iter().find(|&&s| s >= self.delta_size) {
            return Err(TransformError::BadSubdigroup(format!(
                "{s} is not a point of Delta"
            )));
        }
        let mut out: Vec<LMap> = sub
            .omega
            .iter()
            .flat_map(|&s| {
                sub.subgroup
                    .elements()
                    .iter()
                    .map(move |h| LMap::new(s, h.clone()))
            })
            .collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Whether `l_{Omega x H}` is a subdigroup of the materialized digroup.
    pub fn subdigroup_spec_check(&self, sub: &SubdigroupSpec) -> Result<bool, TransformError> {
        let built = self.build()?;
        let members = self
            .materialize_sub(sub)?
            .iter()
            .map(|l| built.index_of(l).expect("member of construction"))
            .collect::<Vec<_>>();
        Ok(built.digroup.is_subdigroup(&members)?)
    }

    /// Every `(Omega, H)` with `H <= G` and `Omega` a nonempty `theta(H)`-invariant subset.
    pub fn invariant_subdigroup_specs(&self) -> Vec<SubdigroupSpec> {
        let d = self.delta_size;
        let mut out = Vec::new();
        for h in self.group.subgroups() {
            for mask in 1u64..(1 << d.min(63)) {
                let omega: Vec<usize> = (0..d).filter(|&s| mask >> s & 1 == 1).collect();
                let sub = SubdigroupSpec {
                    omega,
                    subgroup: h.clone(),
                };
                if self.is_invariant_block(&sub) {
                    out.push(sub);
                }
            }
        }
        out
    }
}

/// A candidate subdigroup `l_{Omega x H}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdigroupSpec {
    pub omega: Vec<usize>,
    pub subgroup: PermGroup,
}

/// Halo, identities and centers of a construction as sets of l-maps.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct FormulaReport {
    pub halo: BTreeSet<LMap>,
    pub identities: BTreeSet<LMap>,
    pub target_center: BTreeSet<LMap>,
    pub source_center: BTreeSet<LMap>,
}

/// A materialized construction: the digroup plus the index <-> l-map labeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransDigroup {
    pub spec: TransDigroupSpec,
    pub elements: Vec<LMap>,
    pub digroup: Digroup,
}

impl TransDigroup {
    pub fn index_of(&self, l: &LMap) -> Option<ElementId> {
        let g = self.spec.group.index_of(&l.f)?;
        (l.s < self.spec.delta_size).then(|| g * self.spec.delta_size + l.s)
    }

    pub fn lmap(&self, x: ElementId) -> &LMap {
        &self.elements[x]
    }

    pub fn lmaps(&self, xs: &[ElementId]) -> BTreeSet<LMap> {
        xs.iter().map(|&x| self.elements[x].clone()).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.elements.iter().map(|l| l.to_string()).collect()
    }

    /// Halo, identities and centers computed by scanning the tables.
    pub fn analyze_brute(&self) -> FormulaReport {
        let d = &self.digroup;
        let centers = d.centers();
        FormulaReport {
            halo: self.lmaps(d.halo()),
            identities: self.lmaps(&d.identities()),
            target_center: self.lmaps(&centers.target),
            source_center: self.lmaps(&centers.source),
        }
    }
}

/// Every construction with `|Gamma| <= max_gamma`, `|Delta| <= max_delta`, `G` any
/// subgroup of `Sym(Gamma)` and `theta` any homomorphism `G -> Sym(Delta)`.
pub fn spec_matrix(
    max_gamma: usize,
    max_delta: usize,
) -> Result<Vec<TransDigroupSpec>, TransformError> {
    let mut out = Vec::new();
    for gamma in 1..=max_gamma {
        let sym = perm::symmetric_group(gamma)?;
        for g in sym.subgroups() {
            for delta in 1..=max_delta {
                for theta in perm::all_homomorphisms(&g, delta)? {
                    out.push(TransDigroupSpec::new(gamma, delta, theta, 0)?);
                }
            }
        }
    }
    Ok(out)
}
