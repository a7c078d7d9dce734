//! Finite digroups as a pair of Cayley tables.
//!
//! Elements are dense indices `0..n`. The left product `x -> y` is stored in `left`,
//! the right product `x <- y` in `right`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

mod analysis;
mod fiber;
mod iso;

pub use analysis::{CentersPair, InversePair, SubdigroupInfo, DEFAULT_SUBDIGROUP_GUARD};
pub use fiber::FiberPartition;
pub use iso::{find_isomorphism, is_isomorphism, ElementProfile, OrderProfile};

pub type ElementId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("a digroup needs at least one element")]
    Empty,
    #[error("left table has order {left}, right table has order {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("table of order {n} needs {expected} entries, got {got}")]
    EntryCount {
        n: usize,
        expected: usize,
        got: usize,
    },
    #[error("entry {value} at ({row}, {col}) is outside 0..{n}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        n: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DigroupError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("not a digroup: {0}")]
    Invalid(ValidationReport),
    #[error("element {0} is not a bar-unit")]
    NotBarUnit(ElementId),
    #[error("element {0} is outside 0..{1}")]
    OutOfRange(ElementId, usize),
    #[error("order {n} exceeds the search guard {guard}")]
    GuardExceeded { n: usize, guard: usize },
    #[error("claim violated: {0}")]
    ClaimViolated(String),
}

/// A total binary operation on `0..n`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpTable {
    n: usize,
    entries: Vec<ElementId>,
}

impl OpTable {
    pub fn new(n: usize, entries: Vec<ElementId>) -> Result<Self, StructureError> {
        if n == 0 {
            return Err(StructureError::Empty);
        }
        if entries.len() != n * n {
            return Err(StructureError::EntryCount {
                n,
                expected: n * n,
                got: entries.len(),
            });
        }
        if let Some(pos) = entries.iter().position(|&v| v >= n) {
            return Err(StructureError::EntryOutOfRange {
                row: pos / n,
                col: pos % n,
                value: entries[pos],
                n,
            });
        }
        Ok(OpTable { n, entries })
    }

    pub fn from_rows(rows: &[Vec<ElementId>]) -> Result<Self, StructureError> {
        let n = rows.len();
        for row in rows {
            if row.len() != n {
                return Err(StructureError::EntryCount {
                    n,
                    expected: n * n,
                    got: rows.iter().map(Vec::len).sum(),
                });
            }
        }
        Self::new(n, rows.concat())
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self, StructureError> {
        let entries = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .map(|(x, y)| f(x, y));
        Self::new(n, entries.collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: ElementId, y: ElementId) -> ElementId {
        self.entries[x * self.n + y]
    }

    pub fn row(&self, x: ElementId) -> &[ElementId] {
        &self.entries[x * self.n..(x + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[ElementId]> {
        self.entries.chunks(self.n)
    }

    pub fn entries(&self) -> &[ElementId] {
        &self.entries
    }
}

/// The axioms checked by [`validate_digroup`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Law {
    /// `x -> (y -> z) = (x -> y) -> z`
    #[serde(rename = "1.1a")]
    LeftAssoc,
    /// `x -> (y -> z) = x -> (y <- z)`
    #[serde(rename = "1.1b")]
    LeftAbsorb,
    /// `(x <- y) -> z = x <- (y -> z)`
    #[serde(rename = "1.2")]
    Middle,
    /// `(x -> y) <- z = (x <- y) <- z`
    #[serde(rename = "1.3a")]
    RightAbsorb,
    /// `(x <- y) <- z = x <- (y <- z)`
    #[serde(rename = "1.3b")]
    RightAssoc,
    #[serde(rename = "bar-unit")]
    BarUnit,
    #[serde(rename = "left-inverse")]
    LeftInverse,
    #[serde(rename = "right-inverse")]
    RightInverse,
}

impl Law {
    pub const DIASSOCIATIVE: [Law; 5] = [
        Law::LeftAssoc,
        Law::LeftAbsorb,
        Law::Middle,
        Law::RightAbsorb,
        Law::RightAssoc,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Law::LeftAssoc => "1.1a",
            Law::LeftAbsorb => "1.1b",
            Law::Middle => "1.2",
            Law::RightAbsorb => "1.3a",
            Law::RightAssoc => "1.3b",
            Law::BarUnit => "bar-unit",
            Law::LeftInverse => "left-inverse",
            Law::RightInverse => "right-inverse",
        }
    }

    /// Both sides of a diassociativity instance, or `None` for the non-equational laws.
    pub fn sides(
        self,
        left: &OpTable,
        right: &OpTable,
        x: usize,
        y: usize,
        z: usize,
    ) -> Option<(usize, usize)> {
        let l = |a, b| left.get(a, b);
        let r = |a, b| right.get(a, b);
        Some(match self {
            Law::LeftAssoc => (l(x, l(y, z)), l(l(x, y), z)),
            Law::LeftAbsorb => (l(x, l(y, z)), l(x, r(y, z))),
            Law::Middle => (l(r(x, y), z), r(x, l(y, z))),
            Law::RightAbsorb => (r(l(x, y), z), r(r(x, y), z)),
            Law::RightAssoc => (r(r(x, y), z), r(x, r(y, z))),
            _ => return None,
        })
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Triple(usize, usize, usize),
    Element(usize),
    None,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Triple(x, y, z) => write!(f, "({x},{y},{z})"),
            Witness::Element(x) => write!(f, "{x}"),
            Witness::None => f.write_str("-"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: Law,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
    pub halo: Vec<ElementId>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            return f.write_str("valid");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| format!("{} at {}", v.law, v.witness))
            .collect();
        f.write_str(&parts.join(", "))
    }
}

fn bar_units(left: &OpTable, right: &OpTable) -> Vec<ElementId> {
    let n = left.n();
    (0..n)
        .filter(|&a| (0..n).all(|x| left.get(x, a) == x && right.get(a, x) == x))
        .collect()
}

fn missing_left_inverse(left: &OpTable, e: usize) -> Option<usize> {
    let n = left.n();
    (0..n).find(|&x| !(0..n).any(|y| left.get(y, x) == e))
}

fn missing_right_inverse(right: &OpTable, e: usize) -> Option<usize> {
    let n = right.n();
    (0..n).find(|&x| !(0..n).any(|y| right.get(x, y) == e))
}

/// Checks every digroup axiom exhaustively.
///
/// Structural problems (mismatched orders) are errors; algebraic failures are reported
/// as violations, each with the lexicographically least witness for its law.
pub fn validate_digroup(
    left: &OpTable,
    right: &OpTable,
) -> Result<ValidationReport, StructureError> {
    if left.n() != right.n() {
        return Err(StructureError::SizeMismatch {
            left: left.n(),
            right: right.n(),
        });
    }
    let n = left.n();
    let mut violations = Vec::new();
    for law in Law::DIASSOCIATIVE {
        'scan: for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (a, b) = law.sides(left, right, x, y, z).expect("equational law");
                    if a != b {
                        violations.push(Violation {
                            law,
                            witness: Witness::Triple(x, y, z),
                        });
                        break 'scan;
                    }
                }
            }
        }
    }
    let halo = bar_units(left, right);
    match halo.first() {
        None => violations.push(Violation {
            law: Law::BarUnit,
            witness: Witness::None,
        }),
        Some(&least) => {
            let works = halo.iter().any(|&e| {
                missing_left_inverse(left, e).is_none() && missing_right_inverse(right, e).is_none()
            });
            if !works {
                if let Some(x) = missing_left_inverse(left, least) {
                    violations.push(Violation {
                        law: Law::LeftInverse,
                        witness: Witness::Element(x),
                    });
                }
                if let Some(x) = missing_right_inverse(right, least) {
                    violations.push(Violation {
                        law: Law::RightInverse,
                        witness: Witness::Element(x),
                    });
                }
            }
        }
    }
    Ok(ValidationReport {
        valid: violations.is_empty(),
        violations,
        halo,
    })
}

/// A finite digroup. Only constructed from tables that pass [`validate_digroup`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digroup {
    left: OpTable,
    right: OpTable,
    halo: Vec<ElementId>,
}

impl Digroup {
    pub fn new(left: OpTable, right: OpTable) -> Result<Self, DigroupError> {
        let report = validate_digroup(&left, &right)?;
        if !report.valid {
            return Err(DigroupError::Invalid(report));
        }
        Ok(Digroup {
            left,
            right,
            halo: report.halo,
        })
    }

    pub fn from_fns(
        n: usize,
        left: impl Fn(usize, usize) -> usize,
        right: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, DigroupError> {
        Self::new(OpTable::from_fn(n, left)?, OpTable::from_fn(n, right)?)
    }

    /// A group viewed as a digroup: both products equal the group product.
    pub fn from_group_table(table: OpTable) -> Result<Self, DigroupError> {
        Self::new(table.clone(), table)
    }

    pub fn cyclic(n: usize) -> Result<Self, DigroupError> {
        Self::from_fns(n, |x, y| (x + y) % n, |x, y| (x + y) % n)
    }

    /// `x -> y = x`, `x <- y = y`.
    pub fn projection(n: usize) -> Result<Self, DigroupError> {
        Self::from_fns(n, |x, _| x, |_, y| y)
    }

    pub fn order(&self) -> usize {
        self.left.n()
    }

    #[inline]
    pub fn left(&self, x: ElementId, y: ElementId) -> ElementId {
        self.left.get(x, y)
    }

    #[inline]
    pub fn right(&self, x: ElementId, y: ElementId) -> ElementId {
        self.right.get(x, y)
    }

    pub fn left_table(&self) -> &OpTable {
        &self.left
    }

    pub fn right_table(&self) -> &OpTable {
        &self.right
    }

    /// All bar-units, ascending.
    pub fn halo(&self) -> &[ElementId] {
        &self.halo
    }

    pub fn is_bar_unit(&self, a: ElementId) -> bool {
        self.halo.binary_search(&a).is_ok()
    }

    /// The least-index bar-unit.
    pub fn default_bar_unit(&self) -> ElementId {
        self.halo[0]
    }

    /// The same digroup with element `x` renamed to `perm[x]`.
    pub fn relabel(&self, perm: &[ElementId]) -> Result<Digroup, DigroupError> {
        let n = self.order();
        let mut inv = vec![usize::MAX; n];
        for (x, &p) in perm.iter().enumerate() {
            if p >= n || inv[p] != usize::MAX {
                return Err(DigroupError::ClaimViolated(format!(
                    "relabeling {perm:?} is not a bijection of 0..{n}"
                )));
            }
            inv[p] = x;
        }
        Self::from_fns(
            n,
            |a, b| perm[self.left(inv[a], inv[b])],
            |a, b| perm[self.right(inv[a], inv[b])],
        )
    }

    pub(crate) fn check_element(&self, x: ElementId) -> Result<(), DigroupError> {
        if x < self.order() {
            Ok(())
        } else {
            Err(DigroupError::OutOfRange(x, self.order()))
        }
    }

    pub(crate) fn check_bar_unit(&self, e: ElementId) -> Result<(), DigroupError> {
        self.check_element(e)?;
        if self.is_bar_unit(e) {
            Ok(())
        } else {
            Err(DigroupError::NotBarUnit(e))
        }
    }
}
