//! Built-in permutation representations of every group of order at most 12.

use crate::perm::{closure, PermGroup, Permutation};

#[derive(Debug, Clone)]
pub struct CatalogGroup {
    pub name: &'static str,
    pub group: PermGroup,
}

fn cycles(degree: usize, cs: &[&[usize]]) -> Permutation {
    let owned: Vec<Vec<usize>> = cs.iter().map(|c| c.to_vec()).collect();
    Permutation::from_cycles(degree, &owned).expect("static cycle data")
}

fn cyclic(n: usize) -> PermGroup {
    let gens = if n == 1 {
        vec![]
    } else {
        vec![Permutation::new((0..n).map(|i| (i + 1) % n).collect()).expect("n-cycle")]
    };
    closure(n, &gens).expect("cyclic group")
}

fn generated(degree: usize, gens: &[&[&[usize]]]) -> PermGroup {
    let gens: Vec<Permutation> = gens.iter().map(|g| cycles(degree, g)).collect();
    closure(degree, &gens).expect("static generators")
}

/// Dicyclic group of order `4k` acting on itself by left multiplication.
///
/// Element `i + 2k*j` stands for `a^i x^j`, with `a^{2k} = 1`, `x^2 = a^k` and
/// `x a x^-1 = a^-1`.
fn dicyclic(k: usize) -> PermGroup {
    let m = 2 * k;
    let mul = |u: usize, v: usize| {
        let ((i, j), (l, s)) = ((u % m, u / m), (v % m, v / m));
        match (j, s) {
            (0, s) => (i + l) % m + m * s,
            (_, 0) => (i + m - l) % m + m,
            _ => (i + m - l + k) % m,
        }
    };
    let left_mult = |a: usize| {
        Permutation::new((0..2 * m).map(|x| mul(a, x)).collect()).expect("regular action")
    };
    closure(2 * m, &[left_mult(1), left_mult(m)]).expect("dicyclic generators")
}

pub fn builtin_groups() -> Vec<CatalogGroup> {
    let g = |name, group| CatalogGroup { name, group };
    vec![
        g("C1", cyclic(1)),
        g("C2", cyclic(2)),
        g("C3", cyclic(3)),
        g("C4", cyclic(4)),
        g(
            "V4",
            generated(4, &[&[&[0, 1], &[2, 3]], &[&[0, 2], &[1, 3]]]),
        ),
        g("C5", cyclic(5)),
        g("C6", cyclic(6)),
        g("S3", generated(3, &[&[&[0, 1]], &[&[0, 1, 2]]])),
        g("C7", cyclic(7)),
        g("C8", cyclic(8)),
        g("C4xC2", generated(6, &[&[&[0, 1, 2, 3]], &[&[4, 5]]])),
        g(
            "C2xC2xC2",
            generated(6, &[&[&[0, 1]], &[&[2, 3]], &[&[4, 5]]]),
        ),
        g("D4", generated(4, &[&[&[0, 1, 2, 3]], &[&[1, 3]]])),
        g("Q8", dicyclic(2)),
        g("C9", cyclic(9)),
        g("C3xC3", generated(6, &[&[&[0, 1, 2]], &[&[3, 4, 5]]])),
        g("C10", cyclic(10)),
        g(
            "D5",
            generated(5, &[&[&[0, 1, 2, 3, 4]], &[&[1, 4], &[2, 3]]]),
        ),
        g("C11", cyclic(11)),
        g("C12", cyclic(12)),
        g(
            "C6xC2",
            generated(7, &[&[&[0, 1, 2]], &[&[3, 4]], &[&[5, 6]]]),
        ),
        g("A4", generated(4, &[&[&[0, 1, 2]], &[&[0, 1], &[2, 3]]])),
        g(
            "D6",
            generated(6, &[&[&[0, 1, 2, 3, 4, 5]], &[&[1, 5], &[2, 4]]]),
        ),
        g("Dic3", dicyclic(3)),
    ]
}

pub fn groups_of_order(m: usize) -> Vec<CatalogGroup> {
    builtin_groups()
        .into_iter()
        .filter(|g| g.group.order() == m)
        .collect()
}
