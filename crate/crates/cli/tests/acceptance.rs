//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each, and exits
//! nonzero if any criterion fails or exceeds its time limit.
//!
//! Reference values come from direct table scans written here, not from the library's
//! own analysis routines.

use std::collections::BTreeSet;
use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use digroup::cayley::{embed, translation_group, Embedding};
use digroup::enumerate::{brute_enumerate, constructive_enumerate, cross_check};
use digroup::io::{self, DgtFile, PermNotation, TdsFile};
use digroup::perm::{symmetric_group, GroupHomomorphism};
use digroup::transform::{spec_matrix, LMap, TransDigroup, TransDigroupSpec};
use digroup::{validate_digroup, Digroup, OpTable};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

// ---------------------------------------------------------------------------
// Reference scans over raw tables

struct Tables<'a> {
    n: usize,
    l: &'a OpTable,
    r: &'a OpTable,
}

impl<'a> Tables<'a> {
    fn of(d: &'a Digroup) -> Self {
        Tables {
            n: d.order(),
            l: d.left_table(),
            r: d.right_table(),
        }
    }

    fn l(&self, x: usize, y: usize) -> usize {
        self.l.get(x, y)
    }

    fn r(&self, x: usize, y: usize) -> usize {
        self.r.get(x, y)
    }

    fn diassociative(&self) -> bool {
        let n = self.n;
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    self.l(x, self.l(y, z)) == self.l(self.l(x, y), z)
                        && self.l(x, self.l(y, z)) == self.l(x, self.r(y, z))
                        && self.l(self.r(x, y), z) == self.r(x, self.l(y, z))
                        && self.r(self.l(x, y), z) == self.r(self.r(x, y), z)
                        && self.r(self.r(x, y), z) == self.r(x, self.r(y, z))
                })
            })
        })
    }

    fn halo(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&a| (0..self.n).all(|x| self.l(x, a) == x && self.r(a, x) == x))
            .collect()
    }

    fn left_inverses(&self, x: usize, e: usize) -> Vec<usize> {
        (0..self.n).filter(|&y| self.l(y, x) == e).collect()
    }

    fn right_inverses(&self, x: usize, e: usize) -> Vec<usize> {
        (0..self.n).filter(|&y| self.r(x, y) == e).collect()
    }

    fn has_inverses(&self, e: usize) -> bool {
        (0..self.n)
            .all(|x| !self.left_inverses(x, e).is_empty() && !self.right_inverses(x, e).is_empty())
    }

    fn is_digroup(&self) -> bool {
        self.diassociative() && self.halo().iter().any(|&e| self.has_inverses(e))
    }

    fn identities(&self) -> Vec<usize> {
        self.halo()
            .into_iter()
            .filter(|&e| (0..self.n).all(|x| self.l(e, x) == self.r(x, e)))
            .collect()
    }

    fn target_center(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&z| (0..self.n).all(|x| self.r(z, x) == self.l(x, z)))
            .collect()
    }

    fn source_center(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&z| (0..self.n).all(|x| self.r(x, z) == self.l(z, x)))
            .collect()
    }

    fn unique_left_inverse(&self, x: usize, e: usize) -> Result<usize, String> {
        match self.left_inverses(x, e).as_slice() {
            [y] => Ok(*y),
            other => Err(format!("{} left inverses of {x} w.r.t. {e}", other.len())),
        }
    }

    fn unique_right_inverse(&self, x: usize, e: usize) -> Result<usize, String> {
        match self.right_inverses(x, e).as_slice() {
            [y] => Ok(*y),
            other => Err(format!("{} right inverses of {x} w.r.t. {e}", other.len())),
        }
    }
}

fn lmaps(t: &TransDigroup, xs: &[usize]) -> BTreeSet<LMap> {
    xs.iter().map(|&x| t.elements[x].clone()).collect()
}

fn matrix() -> Vec<TransDigroupSpec> {
    spec_matrix(3, 3).expect("matrix specs")
}

/// Every class representative of order 1..=6 from the constructive catalog.
fn catalog() -> Vec<Digroup> {
    (1..=6)
        .flat_map(|n| constructive_enumerate(n).expect("within guard").classes)
        .collect()
}

// ---------------------------------------------------------------------------
// Criteria

fn axiom_suite() -> Outcome {
    let specs = matrix();
    for spec in &specs {
        let t = spec.build().map_err(|e| e.to_string())?;
        let report = validate_digroup(t.digroup.left_table(), t.digroup.right_table())
            .map_err(|e| e.to_string())?;
        ensure!(
            report.valid && report.violations.is_empty(),
            "{spec:?}: {report}"
        );
        ensure!(
            Tables::of(&t.digroup).is_digroup(),
            "reference scan rejects {spec:?}"
        );
    }
    Ok(format!("{} constructions, 0 violations", specs.len()))
}

fn closed_form_invariants() -> Outcome {
    let specs = matrix();
    for spec in &specs {
        let t = spec.build().map_err(|e| e.to_string())?;
        let scan = Tables::of(&t.digroup);
        let formula = spec.analyze_formulaic();
        let pairs = [
            ("halo", &formula.halo, scan.halo()),
            ("identities", &formula.identities, scan.identities()),
            (
                "target center",
                &formula.target_center,
                scan.target_center(),
            ),
            (
                "source center",
                &formula.source_center,
                scan.source_center(),
            ),
        ];
        for (what, closed, scanned) in pairs {
            ensure!(*closed == lmaps(&t, &scanned), "{what} differs on {spec:?}");
        }
        let library = t.analyze_brute();
        ensure!(
            library == formula,
            "library scan differs from closed forms on {spec:?}"
        );
    }
    Ok(format!(
        "{} constructions, 4 sets each, all equal",
        specs.len()
    ))
}

fn inverse_formulas() -> Outcome {
    let mut checked = 0usize;
    for spec in matrix() {
        let t = spec.build().map_err(|e| e.to_string())?;
        let scan = Tables::of(&t.digroup);
        let e = spec.bar_unit();
        let ei = t.index_of(&e).ok_or("bar-unit missing")?;
        for (x, lx) in t.elements.iter().enumerate() {
            let (left, right) = spec.inverse_formulas(lx).map_err(|e| e.to_string())?;
            ensure!(
                spec.left_product(&left, lx).map_err(|e| e.to_string())? == e,
                "left formula fails at {lx}"
            );
            ensure!(
                spec.right_product(lx, &right).map_err(|e| e.to_string())? == e,
                "right formula fails at {lx}"
            );
            ensure!(
                t.elements[scan.unique_left_inverse(x, ei)?] == left,
                "left inverse of {lx} differs from scan"
            );
            ensure!(
                t.elements[scan.unique_right_inverse(x, ei)?] == right,
                "right inverse of {lx} differs from scan"
            );
            checked += 1;
        }
    }
    let mut pairs = 0usize;
    for d in catalog() {
        let scan = Tables::of(&d);
        for &alpha in d.halo() {
            for &e in d.halo() {
                for x in 0..d.order() {
                    let (le, re) = (
                        scan.unique_left_inverse(x, e)?,
                        scan.unique_right_inverse(x, e)?,
                    );
                    ensure!(
                        scan.unique_left_inverse(x, alpha)? == d.left(alpha, le),
                        "left translation formula fails"
                    );
                    ensure!(
                        scan.unique_right_inverse(x, alpha)? == d.right(re, alpha),
                        "right translation formula fails"
                    );
                    let lib = d.inverses(x, alpha).map_err(|e| e.to_string())?;
                    ensure!(
                        lib.left_inv == scan.unique_left_inverse(x, alpha)?,
                        "library left inverse differs"
                    );
                    ensure!(
                        lib.right_inv == scan.unique_right_inverse(x, alpha)?,
                        "library right inverse differs"
                    );
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!(
        "{checked} formula pairs; {pairs} (x, alpha, e) translation checks"
    ))
}

/// Checks an embedding against the raw tables, without trusting its evidence record.
fn check_embedding(d: &Digroup, emb: &Embedding) -> Result<(), String> {
    ensure!(
        emb.evidence.all_passed(),
        "evidence incomplete: {:?}",
        emb.evidence
    );
    let target = &emb.target.digroup;
    let idx: Vec<usize> = emb
        .map
        .iter()
        .map(|l| {
            emb.target
                .index_of(l)
                .ok_or_else(|| format!("{l} outside target"))
        })
        .collect::<Result<_, _>>()?;
    let image: BTreeSet<usize> = idx.iter().copied().collect();
    ensure!(image.len() == d.order(), "not injective");
    ensure!(image.len() == target.order(), "not surjective");
    for x in 0..d.order() {
        for y in 0..d.order() {
            ensure!(
                idx[d.left(x, y)] == target.left(idx[x], idx[y]),
                "left product not preserved at ({x},{y})"
            );
            ensure!(
                idx[d.right(x, y)] == target.right(idx[x], idx[y]),
                "right product not preserved at ({x},{y})"
            );
        }
    }
    let halo = Tables::of(d).halo().len();
    ensure!(
        d.order() == halo * emb.spec().group().order(),
        "{} != {halo} * {}",
        d.order(),
        emb.spec().group().order()
    );
    Ok(())
}

fn embedding_at_desk_scale() -> Outcome {
    let mut reps = catalog();
    let constructive = reps.len();
    for n in 1..=3 {
        reps.extend(brute_enumerate(n).map_err(|e| e.to_string())?.classes);
    }
    let mut runs = 0usize;
    for d in &reps {
        for &e in d.halo() {
            let emb = embed(d, e).map_err(|err| format!("order {}: {err}", d.order()))?;
            check_embedding(d, &emb)?;
            runs += 1;
        }
    }
    Ok(format!(
        "{} classes ({constructive} constructive up to order 6, {} brute up to order 3), {runs} embeddings verified",
        reps.len(),
        reps.len() - constructive
    ))
}

fn group_digroup(n: usize, mul: impl Fn(usize, usize) -> usize) -> Digroup {
    let t = OpTable::from_fn(n, mul).expect("group table");
    Digroup::new(t.clone(), t).expect("groups are digroups")
}

fn classical_degeneration() -> Outcome {
    let mut groups: Vec<(String, Digroup)> = (2..=6)
        .map(|n| (format!("C{n}"), group_digroup(n, |a, b| (a + b) % n)))
        .collect();
    // S3 as one-line permutations of {0,1,2} in lexicographic order, composed right to left
    let perms = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let pos = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    let s3 = group_digroup(6, |a, b| {
        let (p, q) = (perms[a], perms[b]);
        pos([p[q[0]], p[q[1]], p[q[2]]])
    });
    groups.push(("S3".into(), s3));

    for (name, d) in &groups {
        let scan = Tables::of(d);
        let identity = (0..d.order())
            .find(|&e| (0..d.order()).all(|x| scan.l(e, x) == x))
            .unwrap();
        ensure!(
            scan.halo() == vec![identity],
            "{name}: halo is not the identity"
        );
        let emb = embed(d, identity).map_err(|e| e.to_string())?;
        check_embedding(d, &emb)?;
        ensure!(
            emb.spec().delta_size() == 1,
            "{name}: |Delta| = {}",
            emb.spec().delta_size()
        );
        let fibers = &emb.translations.partition.fibers;
        for (x, l) in emb.map.iter().enumerate() {
            for (i, fiber) in fibers.iter().enumerate() {
                ensure!(fiber.len() == 1, "{name}: fibers are not singletons");
                let image = fibers
                    .iter()
                    .position(|f| f[0] == scan.l(x, fiber[0]))
                    .unwrap();
                ensure!(
                    l.f.apply(i) == image,
                    "{name}: image of {x} is not left multiplication"
                );
            }
        }
    }

    for gamma in 1..=4 {
        let sym = symmetric_group(gamma).map_err(|e| e.to_string())?;
        let spec = TransDigroupSpec::new(gamma, 1, GroupHomomorphism::trivial(sym.clone(), 1), 0)
            .map_err(|e| e.to_string())?;
        let t = spec.build().map_err(|e| e.to_string())?;
        let els = sym.elements();
        for a in 0..els.len() {
            for b in 0..els.len() {
                let composed: Vec<usize> =
                    (0..gamma).map(|i| els[a].apply(els[b].apply(i))).collect();
                let ab = els
                    .iter()
                    .position(|p| p.images() == composed.as_slice())
                    .unwrap();
                ensure!(
                    t.digroup.left(a, b) == ab,
                    "Sym({gamma}): left product is not composition"
                );
                ensure!(
                    t.digroup.right(a, b) == ab,
                    "Sym({gamma}): right product is not composition"
                );
            }
        }
    }
    Ok(format!(
        "{} groups embed left-regularly; Sym(1..4) recovered with |Delta| = 1",
        groups.len()
    ))
}

fn enumeration_cross_check() -> Outcome {
    let mut counts = Vec::new();
    for n in 1..=4 {
        let started = Instant::now();
        let cc = cross_check(n).map_err(|e| e.to_string())?;
        ensure!(
            cc.agrees(),
            "order {n}: brute {} vs constructive {} (unmatched brute {:?}, constructive {:?})",
            cc.brute_count,
            cc.constructive_count,
            cc.unmatched_brute,
            cc.unmatched_constructive
        );
        ensure!(
            n < 4 || started.elapsed() < Duration::from_secs(600),
            "order 4 search exceeded ten minutes"
        );
        counts.push(format!("n={n}: {}", cc.brute_count));
    }
    Ok(format!("catalogs match ({})", counts.join(", ")))
}

fn fiber_and_translation_properties() -> Outcome {
    let reps = catalog();
    for d in &reps {
        let partitions: BTreeSet<BTreeSet<Vec<usize>>> = d
            .halo()
            .iter()
            .map(|&e| d.fiber_partition(e).map(|p| p.fibers.into_iter().collect()))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        ensure!(
            partitions.len() == 1,
            "fiber partition depends on the bar-unit"
        );

        let e = d.default_bar_unit();
        let t = translation_group(d, e).map_err(|e| e.to_string())?;
        let psi: Vec<_> = (0..d.order())
            .map(|f| d.psi(f))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        for f in 0..d.order() {
            for &alpha in d.halo() {
                ensure!(
                    d.psi_wrt(f, alpha).map_err(|e| e.to_string())? == psi[f],
                    "Psi depends on the bar-unit"
                );
            }
            for g in 0..d.order() {
                let lg = t.rep[f].compose(&t.rep[g]).map_err(|e| e.to_string())?;
                ensure!(
                    t.rep[d.left(f, g)] == lg && t.rep[d.right(f, g)] == lg,
                    "translation not multiplicative at ({f},{g})"
                );
                let pg = psi[f].compose(&psi[g]).map_err(|e| e.to_string())?;
                ensure!(
                    psi[d.left(f, g)] == pg && psi[d.right(f, g)] == pg,
                    "Psi not multiplicative at ({f},{g})"
                );
            }
        }
    }
    Ok(format!("{} classes checked exhaustively", reps.len()))
}

fn run_binary(args: &[&str]) -> Result<i32, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_digroup"))
        .args(args)
        .env_remove("DIGROUP_MAX_ORDER")
        .output()
        .map_err(|e| e.to_string())?;
    Ok(out.status.code().unwrap_or(-1))
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 temp path")
}

fn cli_round_trips() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let specs = matrix();
    for (i, spec) in specs.iter().enumerate() {
        let tds = TdsFile::from_spec(spec);
        for notation in [PermNotation::OneLine, PermNotation::Cycles] {
            let text = io::format_tds(&tds, notation);
            let back = io::parse_tds(&text, notation).map_err(|e| e.to_string())?;
            ensure!(
                back == tds && io::format_tds(&back, notation) == text,
                ".tds round trip differs for spec {i}"
            );
        }
        let dgt = DgtFile::from_construction(&spec.build().map_err(|e| e.to_string())?);
        let text = io::format_dgt(&dgt);
        let back = io::parse_dgt(&text).map_err(|e| e.to_string())?;
        ensure!(
            back == dgt && io::format_dgt(&back) == text,
            ".dgt round trip differs for spec {i}"
        );

        let spec_path = dir.path().join(format!("m{i}.tds"));
        let out_path = dir.path().join(format!("m{i}.dgt"));
        fs::write(&spec_path, io::format_tds(&tds, PermNotation::OneLine))
            .map_err(|e| e.to_string())?;
        let code = run_binary(&["construct", path_str(&spec_path), "-o", path_str(&out_path)])?;
        ensure!(code == 0, "construct exited {code} on spec {i}");
        let code = run_binary(&["verify", path_str(&out_path)])?;
        ensure!(code == 0, "verify exited {code} on spec {i}");
    }

    let reps = catalog();
    for (i, d) in reps.iter().enumerate() {
        let original = dir.path().join(format!("c{i}.dgt"));
        fs::write(&original, io::format_dgt(&DgtFile::from_digroup(d)))
            .map_err(|e| e.to_string())?;
        let prefix = dir.path().join(format!("c{i}-embedded"));
        let code = run_binary(&["embed", path_str(&original), "-o", path_str(&prefix)])?;
        ensure!(code == 0, "embed exited {code} on class {i}");
        let rebuilt = dir.path().join(format!("c{i}-rebuilt.dgt"));
        let tds_path = prefix.with_extension("tds");
        let code = run_binary(&["construct", path_str(&tds_path), "-o", path_str(&rebuilt)])?;
        ensure!(code == 0, "construct exited {code} on embedded class {i}");
        let code = run_binary(&["iso", path_str(&original), path_str(&rebuilt)])?;
        ensure!(code == 0, "iso exited {code} on class {i}");
    }
    Ok(format!(
        "{} specs round-trip and construct->verify; {} classes embed->construct->iso",
        specs.len(),
        reps.len()
    ))
}

struct Criterion {
    id: u8,
    title: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            id: 1,
            title: "axiom suite on the construction matrix",
            limit: secs(30),
            run: axiom_suite,
        },
        Criterion {
            id: 2,
            title: "closed-form halo, identities and centers",
            limit: secs(30),
            run: closed_form_invariants,
        },
        Criterion {
            id: 3,
            title: "inverse formulas and bar-unit translation",
            limit: secs(10),
            run: inverse_formulas,
        },
        Criterion {
            id: 4,
            title: "embedding theorem at desk scale",
            limit: secs(60),
            run: embedding_at_desk_scale,
        },
        Criterion {
            id: 5,
            title: "classical groups degenerate correctly",
            limit: secs(5),
            run: classical_degeneration,
        },
        Criterion {
            id: 6,
            title: "brute vs constructive enumeration",
            limit: secs(600),
            run: enumeration_cross_check,
        },
        Criterion {
            id: 7,
            title: "fiber, translation and Psi properties",
            limit: secs(30),
            run: fiber_and_translation_properties,
        },
        Criterion {
            id: 8,
            title: "cli round trips",
            limit: secs(60),
            run: cli_round_trips,
        },
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for c in &criteria {
        let started = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = started.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > c.limit => Err(format!("took {elapsed:.2?}, limit {:?}", c.limit)),
            other => other,
        };
        match outcome {
            Ok(detail) => println!(
                "criterion {} PASS [{elapsed:.2?}] {}: {detail}",
                c.id, c.title
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "criterion {} FAIL [{elapsed:.2?}] {}: {detail}",
                    c.id, c.title
                );
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
