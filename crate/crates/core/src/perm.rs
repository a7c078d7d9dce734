//! Finite permutations in one-line form, permutation groups stored as explicit
//! element sets, and homomorphisms between them.
//!
//! Composition follows the "f after g" convention: `(p * q)(i) = p(q(i))`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Largest degree accepted by [`symmetric_group`] unless a caller passes its own guard.
pub const DEFAULT_SYMMETRIC_GUARD: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("images {0:?} do not form a bijection of 0..{1}")]
    NotBijective(Vec<usize>, usize),
    #[error("permutation degree must be at least 1")]
    EmptyDegree,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("symmetric group of degree {degree} exceeds the guard {guard}")]
    GuardExceeded { degree: usize, guard: usize },
    #[error("expected {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("{0} is not an element of the group")]
    NotInGroup(Permutation),
    #[error("malformed cycle notation: {0}")]
    BadCycles(String),
}

/// A bijection of `{0, .., degree - 1}`; `images[i]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        if n == 0 {
            return Err(PermError::EmptyDegree);
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(PermError::NotBijective(images, n));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree.max(1)).collect(),
        }
    }

    /// The transposition of `a` and `b`.
    pub fn swap(degree: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(degree);
        p.images.swap(a, b);
        p
    }

    /// Builds a permutation from disjoint or overlapping cycles, applied right to left.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut acc = Self::identity(degree);
        for cycle in cycles.iter().rev() {
            let mut images: Vec<usize> = (0..degree).collect();
            let mut seen = BTreeSet::new();
            for (k, &x) in cycle.iter().enumerate() {
                if x >= degree || !seen.insert(x) {
                    return Err(PermError::BadCycles(format!("{cycle:?}")));
                }
                images[x] = cycle[(k + 1) % cycle.len()];
            }
            let c = Permutation::new(images)?;
            acc = c.compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    pub fn order(&self) -> usize {
        let id = Self::identity(self.degree());
        let mut p = self.clone();
        let mut k = 1;
        while p != id {
            p = self.compose_unchecked(&p);
            k += 1;
        }
        k
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle notation such as `(0 1 2)(3 4)`; the identity prints as `()`.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("({})", body.join(" "))
            })
            .collect()
    }

    /// Parses cycle notation (`(0 1)(2 3)`, `()`, commas allowed as separators).
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Permutation, PermError> {
        let bad = || PermError::BadCycles(text.to_string());
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = open.find(')').ok_or_else(bad)?;
            let body = &open[..close];
            let cycle = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = open[close + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// A finite permutation group with its full element list.
///
/// `elements` is sorted (so the identity is always element 0) and `table[a][b]`
/// is the index of `elements[a] * elements[b]`.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    table: Vec<Vec<usize>>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

impl PermGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    pub fn identity(&self) -> &Permutation {
        &self.elements[0]
    }

    /// Index of `elements[a] * elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse_index(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.table[a][b] == 0)
            .expect("group element without inverse")
    }

    pub fn is_subset_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|p| other.contains(p))
    }

    /// Every subgroup, grown by adding one element at a time and closing.
    /// Sorted by order, then by element list.
    pub fn subgroups(&self) -> Vec<PermGroup> {
        let trivial = closure(self.degree, &[]).expect("trivial group");
        let mut seen: BTreeSet<Vec<Permutation>> = BTreeSet::new();
        seen.insert(trivial.elements.clone());
        let mut out = vec![trivial];
        let mut next = 0;
        while next < out.len() {
            let base = out[next].clone();
            next += 1;
            for p in &self.elements {
                if base.contains(p) {
                    continue;
                }
                let mut gens = base.generators.clone();
                gens.push(p.clone());
                let h = closure(self.degree, &gens).expect("degrees agree");
                if seen.insert(h.elements.clone()) {
                    out.push(h);
                }
            }
        }
        out.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
        out
    }
}

/// Smallest group containing `gens`.
pub fn closure(degree: usize, gens: &[Permutation]) -> Result<PermGroup, PermError> {
    for g in gens {
        if g.degree() != degree {
            return Err(PermError::DegreeMismatch(degree, g.degree()));
        }
    }
    let id = Permutation::identity(degree);
    let mut found: BTreeSet<Permutation> = BTreeSet::new();
    found.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = g.compose_unchecked(&p);
            if found.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    Ok(from_sorted_elements(
        degree,
        found.into_iter().collect(),
        gens.to_vec(),
    ))
}

fn from_sorted_elements(
    degree: usize,
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
) -> PermGroup {
    let index: HashMap<Permutation, usize> = elements
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let table = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| index[&a.compose_unchecked(b)])
                .collect()
        })
        .collect();
    PermGroup {
        degree,
        elements,
        generators,
        index,
        table,
    }
}

/// All `n!` permutations of `0..n`, generated by a transposition and an n-cycle.
pub fn symmetric_group(n: usize) -> Result<PermGroup, PermError> {
    symmetric_group_guarded(n, DEFAULT_SYMMETRIC_GUARD)
}

pub fn symmetric_group_guarded(n: usize, guard: usize) -> Result<PermGroup, PermError> {
    if n == 0 {
        return Err(PermError::EmptyDegree);
    }
    if n > guard {
        return Err(PermError::GuardExceeded { degree: n, guard });
    }
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Permutation::swap(n, 0, 1));
    }
    if n >= 3 {
        gens.push(Permutation::new((0..n).map(|i| (i + 1) % n).collect())?);
    }
    closure(n, &gens)
}

/// `{ z : zg = gz for all g }`, ascending.
pub fn center(group: &PermGroup) -> Vec<Permutation> {
    let n = group.order();
    (0..n)
        .filter(|&z| (0..n).all(|g| group.mul(z, g) == group.mul(g, z)))
        .map(|z| group.elements[z].clone())
        .collect()
}

/// Whether every permutation in `perms` fixes `point`.
pub fn fixes_point<'a>(perms: impl IntoIterator<Item = &'a Permutation>, point: usize) -> bool {
    perms.into_iter().all(|p| p.apply(point) == point)
}

/// A verified homomorphism from a permutation group into `Sym(codomain_degree)`.
///
/// `images[i]` is the image of `domain.elements()[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHomomorphism {
    domain: PermGroup,
    codomain_degree: usize,
    images: Vec<Permutation>,
}

impl GroupHomomorphism {
    /// Builds from an image for every element and checks `map(fg) = map(f)map(g)` over the
    /// full multiplication table.
    pub fn from_element_images(
        domain: PermGroup,
        codomain_degree: usize,
        images: Vec<Permutation>,
    ) -> Result<Self, PermError> {
        if images.len() != domain.order() {
            return Err(PermError::ImageCount {
                expected: domain.order(),
                got: images.len(),
            });
        }
        for p in &images {
            if p.degree() != codomain_degree {
                return Err(PermError::DegreeMismatch(codomain_degree, p.degree()));
            }
        }
        let hom = GroupHomomorphism {
            domain,
            codomain_degree,
            images,
        };
        hom.check_multiplicative()?;
        Ok(hom)
    }

    pub fn trivial(domain: PermGroup, codomain_degree: usize) -> Self {
        let images = vec![Permutation::identity(codomain_degree); domain.order()];
        GroupHomomorphism {
            domain,
            codomain_degree,
            images,
        }
    }

    fn check_multiplicative(&self) -> Result<(), PermError> {
        let n = self.domain.order();
        for a in 0..n {
            for b in 0..n {
                let ab = self.domain.mul(a, b);
                if self.images[ab] != self.images[a].compose_unchecked(&self.images[b]) {
                    return Err(PermError::NotAHomomorphism(format!(
                        "image of {} * {} is not the product of images",
                        self.domain.elements[a], self.domain.elements[b]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn domain(&self) -> &PermGroup {
        &self.domain
    }

    pub fn codomain_degree(&self) -> usize {
        self.codomain_degree
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    pub fn image_at(&self, index: usize) -> &Permutation {
        &self.images[index]
    }

    pub fn apply(&self, p: &Permutation) -> Result<&Permutation, PermError> {
        self.domain
            .index_of(p)
            .map(|i| &self.images[i])
            .ok_or_else(|| PermError::NotInGroup(p.clone()))
    }

    /// Domain elements mapped to the identity, ascending.
    pub fn kernel(&self) -> Vec<Permutation> {
        self.images
            .iter()
            .zip(&self.domain.elements)
            .filter(|(img, _)| img.is_identity())
            .map(|(_, p)| p.clone())
            .collect()
    }

    /// Distinct images, ascending.
    pub fn image(&self) -> Vec<Permutation> {
        let set: BTreeSet<Permutation> = self.images.iter().cloned().collect();
        set.into_iter().collect()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().len() == 1
    }
}

/// Extends one image per generator of `group` to a homomorphism.
///
/// Walks the Cayley graph from the identity; reaching an element twice with different
/// images, or failing the final table check, rejects the assignment.
pub fn hom_from_images(
    group: &PermGroup,
    codomain_degree: usize,
    gen_images: &[Permutation],
) -> Result<GroupHomomorphism, PermError> {
    let gens = group.generators();
    if gen_images.len() != gens.len() {
        return Err(PermError::ImageCount {
            expected: gens.len(),
            got: gen_images.len(),
        });
    }
    for p in gen_images {
        if p.degree() != codomain_degree {
            return Err(PermError::DegreeMismatch(codomain_degree, p.degree()));
        }
    }
    let gen_idx: Vec<usize> = gens
        .iter()
        .map(|g| group.index_of(g).expect("generator belongs to its group"))
        .collect();
    let mut images: Vec<Option<Permutation>> = vec![None; group.order()];
    images[0] = Some(Permutation::identity(codomain_degree));
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        let img_a = images[a].clone().expect("queued elements have images");
        for (&g, img_g) in gen_idx.iter().zip(gen_images) {
            let b = group.mul(g, a);
            let img_b = img_g.compose_unchecked(&img_a);
            match &images[b] {
                Some(existing) if *existing != img_b => {
                    return Err(PermError::NotAHomomorphism(format!(
                        "{} reached with images {} and {}",
                        group.elements[b], existing, img_b
                    )));
                }
                Some(_) => {}
                None => {
                    images[b] = Some(img_b);
                    queue.push_back(b);
                }
            }
        }
    }
    let images = images
        .into_iter()
        .map(|p| p.expect("generators reach every element"))
        .collect();
    GroupHomomorphism::from_element_images(group.clone(), codomain_degree, images)
}

/// Every homomorphism `group -> Sym(codomain_degree)`, found by trying all generator
/// image assignments.
pub fn all_homomorphisms(
    group: &PermGroup,
    codomain_degree: usize,
) -> Result<Vec<GroupHomomorphism>, PermError> {
    if group.generators().is_empty() {
        return Ok(vec![GroupHomomorphism::trivial(
            group.clone(),
            codomain_degree,
        )]);
    }
    let target = symmetric_group(codomain_degree)?;
    let k = group.generators().len();
    let mut out = Vec::new();
    let mut choice = vec![0usize; k];
    loop {
        let imgs: Vec<Permutation> = choice.iter().map(|&c| target.elements[c].clone()).collect();
        // orders must divide; cheap filter before the full walk
        let plausible = group
            .generators()
            .iter()
            .zip(&imgs)
            .all(|(g, img)| g.order() % img.order() == 0);
        if plausible {
            if let Ok(h) = hom_from_images(group, codomain_degree, &imgs) {
                out.push(h);
            }
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return Ok(out);
            }
            choice[pos] += 1;
            if choice[pos] < target.order() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}
