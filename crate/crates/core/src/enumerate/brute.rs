//! Raw search over pairs of Cayley tables.
//!
//! Element 0 is taken to be a bar-unit (every digroup admits such a labeling), which
//! fixes column 0 of the left table and row 0 of the right table. The remaining cells
//! are filled one at a time; after each assignment every diassociativity instance whose
//! lookups are all assigned is checked.

use crate::digroup::{validate_digroup, Digroup, Law, OpTable};

const UNSET: u8 = u8::MAX;

struct Search {
    n: usize,
    left: Vec<u8>,
    right: Vec<u8>,
    /// (is_right_table, row, col) in fill order
    cells: Vec<(bool, usize, usize)>,
    found: Vec<Digroup>,
    nodes: u64,
}

impl Search {
    fn l(&self, x: u8, y: u8) -> Option<u8> {
        let v = self.left[x as usize * self.n + y as usize];
        (v != UNSET).then_some(v)
    }

    fn r(&self, x: u8, y: u8) -> Option<u8> {
        let v = self.right[x as usize * self.n + y as usize];
        (v != UNSET).then_some(v)
    }

    fn instance(&self, law: Law, x: u8, y: u8, z: u8) -> Option<bool> {
        let (a, b) = match law {
            Law::LeftAssoc => (self.l(x, self.l(y, z)?)?, self.l(self.l(x, y)?, z)?),
            Law::LeftAbsorb => (self.l(x, self.l(y, z)?)?, self.l(x, self.r(y, z)?)?),
            Law::Middle => (self.l(self.r(x, y)?, z)?, self.r(x, self.l(y, z)?)?),
            Law::RightAbsorb => (self.r(self.l(x, y)?, z)?, self.r(self.r(x, y)?, z)?),
            Law::RightAssoc => (self.r(self.r(x, y)?, z)?, self.r(x, self.r(y, z)?)?),
            _ => return None,
        };
        Some(a == b)
    }

    /// No instance whose lookups are all assigned is violated.
    fn consistent(&self) -> bool {
        let n = self.n as u8;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for law in Law::DIASSOCIATIVE {
                        if self.instance(law, x, y, z) == Some(false) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, pos: usize) {
        self.nodes += 1;
        if pos == self.cells.len() {
            self.leaf();
            return;
        }
        let (is_right, x, y) = self.cells[pos];
        let idx = x * self.n + y;
        for v in 0..self.n as u8 {
            if is_right {
                self.right[idx] = v;
            } else {
                self.left[idx] = v;
            }
            if self.consistent() {
                self.run(pos + 1);
            }
        }
        if is_right {
            self.right[idx] = UNSET;
        } else {
            self.left[idx] = UNSET;
        }
    }

    fn leaf(&mut self) {
        let to_table = |t: &[u8]| {
            OpTable::new(self.n, t.iter().map(|&v| v as usize).collect()).expect("complete table")
        };
        let (l, r) = (to_table(&self.left), to_table(&self.right));
        let report = validate_digroup(&l, &r).expect("equal orders");
        if report.valid {
            self.found.push(Digroup::new(l, r).expect("validated"));
        }
    }
}

/// Every labeled digroup of order `n` in which element 0 is a bar-unit, plus the
/// number of search nodes visited.
pub(super) fn labeled_digroups(n: usize) -> (Vec<Digroup>, u64) {
    let mut left = vec![UNSET; n * n];
    let mut right = vec![UNSET; n * n];
    for x in 0..n {
        left[x * n] = x as u8;
        right[x] = x as u8;
    }
    let mut cells = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if y != 0 {
                cells.push((false, x, y));
            }
            if x != 0 {
                cells.push((true, x, y));
            }
        }
    }
    let mut search = Search {
        n,
        left,
        right,
        cells,
        found: Vec::new(),
        nodes: 0,
    };
    search.run(0);
    (search.found, search.nodes)
}
